//! Independent checks for the sieve results.
//!
//! Nothing here touches the crossing board or the mixed-radix addressing:
//! class counts come from Burnside's lemma over explicit grid cycles and
//! from a union-find over all codes, and primes come from trial division.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::{apply_shift, BitMatrix, Dims, MatrixCode};

/// Largest `m * n` for [`burnside_count`]: `m*n * 2^(m*n)` must fit in a `u128`.
pub const BURNSIDE_MAX_CELLS: usize = 120;

/// Largest `m * n` for [`brute_force_classes`].
pub const BRUTE_FORCE_MAX_CELLS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BurnsideBreakdown {
    pub dims: Dims,
    /// Matrices fixed by the shift `(i, j)`: `i` row rotations, `j` column rotations.
    pub per_shift_fixed: BTreeMap<(usize, usize), u128>,
    pub total: u128,
}

/// Number of cycles of the translation `(r, c) -> (r + i, c + j)` on the
/// `m x n` torus, found by walking each cycle.
pub fn translation_cycles(dims: Dims, i: usize, j: usize) -> usize {
    let (m, n) = (dims.rows(), dims.cols());
    let mut seen = vec![false; m * n];
    let mut cycles = 0;
    for start in 0..m * n {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut cell = start;
        while !seen[cell] {
            seen[cell] = true;
            let (r, c) = (cell / n, cell % n);
            cell = (r + i) % m * n + (c + j) % n;
        }
    }
    cycles
}

/// Class count by Burnside's lemma: a matrix is fixed by a shift exactly
/// when it is constant on every cycle of that shift, so the shift fixes
/// `2^cycles` matrices; the class count is the mean over all `m * n` shifts.
pub fn burnside_count(dims: Dims) -> Result<BurnsideBreakdown> {
    let cells = dims.cells();
    if cells > BURNSIDE_MAX_CELLS {
        return Err(Error::OracleBound {
            method: "burnside",
            product: cells,
            bound: BURNSIDE_MAX_CELLS,
        });
    }
    let mut per_shift_fixed = BTreeMap::new();
    let mut sum: u128 = 0;
    for i in 0..dims.rows() {
        for j in 0..dims.cols() {
            let fixed = 1u128 << translation_cycles(dims, i, j);
            sum = sum.checked_add(fixed).expect("bounded by BURNSIDE_MAX_CELLS");
            per_shift_fixed.insert((i, j), fixed);
        }
    }
    let order = cells as u128;
    assert_eq!(sum % order, 0, "Burnside sum {sum} not divisible by group order {order}");
    Ok(BurnsideBreakdown {
        dims,
        per_shift_fixed,
        total: sum / order,
    })
}

struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    fn new(len: usize) -> Self {
        Self {
            parent: (0..len as u32).collect(),
            size: vec![1; len],
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a as usize] < self.size[b as usize] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b as usize] = a;
        self.size[a as usize] += self.size[b as usize];
        true
    }
}

/// Concatenates the row codes into one `m*n`-bit number, first row highest.
pub fn concat_bits(code: &MatrixCode, cols: usize) -> u64 {
    code.values().fold(0, |acc, p| acc << cols | p)
}

fn split_bits(mut bits: u64, dims: Dims) -> MatrixCode {
    let mask = (1u64 << dims.cols()) - 1;
    let mut rows = vec![0; dims.rows()];
    for row in rows.iter_mut().rev() {
        *row = bits & mask;
        bits >>= dims.cols();
    }
    MatrixCode::new(&rows, dims).expect("masked rows are in range")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForceClasses {
    pub dims: Dims,
    pub class_count: u64,
    /// For every code (by concatenated bits), the smallest member of its class.
    pub canonical: Vec<u64>,
}

impl BruteForceClasses {
    pub fn canonical_of(&self, code: &MatrixCode) -> u64 {
        self.canonical[concat_bits(code, self.dims.cols()) as usize]
    }
}

/// Partitions all `2^(m*n)` codes by joining each code with its one-step
/// row and column rotations.
pub fn brute_force_classes(dims: Dims) -> Result<BruteForceClasses> {
    let cells = dims.cells();
    if cells > BRUTE_FORCE_MAX_CELLS {
        return Err(Error::OracleBound {
            method: "brute force",
            product: cells,
            bound: BRUTE_FORCE_MAX_CELLS,
        });
    }
    let total = 1usize << cells;
    let cols = dims.cols();
    let mut sets = UnionFind::new(total);
    let mut classes = total as u64;
    for bits in 0..total as u64 {
        let code = split_bits(bits, dims);
        for (i, j) in [(1, 0), (0, 1)] {
            let image = concat_bits(&apply_shift(&code, i, j, cols), cols);
            if sets.union(bits as u32, image as u32) {
                classes -= 1;
            }
        }
    }

    let mut least = vec![u64::MAX; total];
    let roots: Vec<u32> = (0..total as u32).map(|x| sets.find(x)).collect();
    for (x, &root) in roots.iter().enumerate() {
        let slot = &mut least[root as usize];
        *slot = (*slot).min(x as u64);
    }
    let canonical = roots.iter().map(|&r| least[r as usize]).collect();
    Ok(BruteForceClasses {
        dims,
        class_count: classes,
        canonical,
    })
}

pub fn trial_division_primes(limit: u64) -> Result<Vec<u64>> {
    if limit < 2 {
        return Err(Error::LimitTooSmall(limit));
    }
    Ok((2..=limit).filter(|&k| is_prime(k)).collect())
}

fn is_prime(k: u64) -> bool {
    let mut d = 2;
    while d * d <= k {
        if k.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Moves the last row of the grid to the top.
pub fn grid_last_row_first(a: &BitMatrix) -> BitMatrix {
    let dims = a.dims();
    let mut out = BitMatrix::zeros(dims);
    for r in 0..dims.rows() {
        let src = (r + dims.rows() - 1) % dims.rows();
        for c in 0..dims.cols() {
            out.set(r, c, a.get(src, c));
        }
    }
    out
}

/// Moves the last column of the grid to the left edge.
pub fn grid_last_col_first(a: &BitMatrix) -> BitMatrix {
    let dims = a.dims();
    let mut out = BitMatrix::zeros(dims);
    for r in 0..dims.rows() {
        for c in 0..dims.cols() {
            let src = (c + dims.cols() - 1) % dims.cols();
            out.set(r, c, a.get(r, src));
        }
    }
    out
}
