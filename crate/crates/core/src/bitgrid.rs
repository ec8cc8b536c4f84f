//! The crossing board, addressed by matrix code.
//!
//! A code `<p_1, ..., p_m>` with every `p_i < 2^n` is a point of an
//! `m`-dimensional array whose coordinates never exceed `2^n - 1`. The board
//! stores that array as a flat bit vector in row-major (mixed-radix) order,
//! so flat order, lexicographic tuple order and numeric order of the
//! concatenated `m*n`-bit string all coincide.

use std::cell::Cell;

use crate::error::{Error, Result};
use crate::matrix::{Dims, MatrixCode, RowCode};

/// Default cap on `m * n`. A board then takes at most 2^30 bits (128 MiB).
pub const DEFAULT_FEASIBILITY_BOUND: usize = 30;

/// Largest accepted feasibility bound (a 2^40-bit board is 128 GiB).
pub const MAX_FEASIBILITY_BOUND: usize = 40;

const WORD_BITS: u64 = u64::BITS as u64;

/// Fixed-length bit vector. All bits start at zero.
#[derive(Clone, PartialEq, Eq)]
pub struct FlatBits {
    words: Vec<u64>,
    len: u64,
}

impl FlatBits {
    /// Allocates `len` zero bits, reporting allocation failure as an error
    /// instead of aborting.
    pub fn try_new(len: u64) -> Result<Self> {
        let words = usize::try_from(len.div_ceil(WORD_BITS))
            .map_err(|_| Error::Allocation { bits: len })?;
        let mut store = Vec::new();
        store
            .try_reserve_exact(words)
            .map_err(|_| Error::Allocation { bits: len })?;
        store.resize(words, 0);
        Ok(Self { words: store, len })
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, index: u64) -> bool {
        debug_assert!(index < self.len);
        self.words[(index / WORD_BITS) as usize] >> (index % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, index: u64) {
        debug_assert!(index < self.len);
        self.words[(index / WORD_BITS) as usize] |= 1 << (index % WORD_BITS);
    }

    #[inline]
    pub fn clear(&mut self, index: u64) {
        debug_assert!(index < self.len);
        self.words[(index / WORD_BITS) as usize] &= !(1 << (index % WORD_BITS));
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    /// Smallest index `>= from` whose bit is 0.
    pub fn first_zero_from(&self, from: u64) -> Option<u64> {
        if from >= self.len {
            return None;
        }
        let mut w = (from / WORD_BITS) as usize;
        // Treat bits below `from` in the first word as set.
        let mut word = self.words[w] | ((1u64 << (from % WORD_BITS)) - 1);
        loop {
            if word != u64::MAX {
                let idx = w as u64 * WORD_BITS + u64::from(word.trailing_ones());
                return (idx < self.len).then_some(idx);
            }
            w += 1;
            if w == self.words.len() {
                return None;
            }
            word = self.words[w];
        }
    }
}

impl std::fmt::Debug for FlatBits {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FlatBits")
            .field("len", &self.len)
            .field("ones", &self.count_ones())
            .finish()
    }
}

/// Shape of the board for one `m x n` problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoardLayout {
    dims: Dims,
    radix: u64,
    total_bits: u64,
    feasibility_bound: usize,
}

impl BoardLayout {
    pub fn new(dims: Dims) -> Result<Self> {
        Self::with_bound(dims, DEFAULT_FEASIBILITY_BOUND)
    }

    /// Rejects `dims` when `m * n` exceeds `feasibility_bound`.
    pub fn with_bound(dims: Dims, feasibility_bound: usize) -> Result<Self> {
        if feasibility_bound > MAX_FEASIBILITY_BOUND {
            return Err(Error::BoundTooLarge {
                bound: feasibility_bound,
                limit: MAX_FEASIBILITY_BOUND,
            });
        }
        let product = dims.cells();
        if product > feasibility_bound {
            return Err(Error::Infeasible {
                product,
                bound: feasibility_bound,
            });
        }
        Ok(Self {
            dims,
            radix: 1 << dims.cols(),
            total_bits: 1 << product,
            feasibility_bound,
        })
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    /// Range of each coordinate, `2^n`.
    pub fn radix(&self) -> u64 {
        self.radix
    }

    /// Number of coordinates, `m`.
    pub fn coordinate_count(&self) -> usize {
        self.dims.rows()
    }

    /// `2^(m*n)`, the number of `m x n` Boolean matrices.
    pub fn total_bits(&self) -> u64 {
        self.total_bits
    }

    pub fn feasibility_bound(&self) -> usize {
        self.feasibility_bound
    }

    /// Largest scalar used in coordinate addressing: `max(2^n - 1, m)`.
    pub fn mu(&self) -> u64 {
        (self.radix - 1).max(self.dims.rows() as u64)
    }
}

/// Mixed-radix position of `code`: `sum p_i * (2^n)^(m-i)`.
pub fn flatten(code: &MatrixCode, layout: &BoardLayout) -> Result<u64> {
    code.validate(layout.dims)?;
    Ok(flatten_unchecked(code, layout))
}

#[inline]
pub(crate) fn flatten_unchecked(code: &MatrixCode, layout: &BoardLayout) -> u64 {
    code.values()
        .fold(0u64, |acc, p| acc * layout.radix + p)
}

pub fn unflatten(index: u64, layout: &BoardLayout) -> Result<MatrixCode> {
    if index >= layout.total_bits {
        return Err(Error::IndexOutOfRange {
            index,
            total: layout.total_bits,
        });
    }
    Ok(unflatten_unchecked(index, layout))
}

pub(crate) fn unflatten_unchecked(mut index: u64, layout: &BoardLayout) -> MatrixCode {
    let m = layout.coordinate_count();
    let mut rows = vec![RowCode::default(); m];
    for slot in rows.iter_mut().rev() {
        *slot = RowCode::from_value_unchecked(index % layout.radix);
        index /= layout.radix;
    }
    MatrixCode::from_rows_unchecked(rows)
}

/// Multidimensional bit board; a set bit means "crossed out".
#[derive(Debug)]
pub struct BitBoard {
    layout: BoardLayout,
    bits: FlatBits,
    peak_coordinate: Cell<u64>,
}

impl BitBoard {
    pub fn new(layout: BoardLayout) -> Result<Self> {
        Ok(Self {
            layout,
            bits: FlatBits::try_new(layout.total_bits)?,
            peak_coordinate: Cell::new(layout.coordinate_count() as u64),
        })
    }

    pub fn layout(&self) -> &BoardLayout {
        &self.layout
    }

    fn address(&self, code: &MatrixCode) -> Result<u64> {
        code.validate(self.layout.dims)?;
        self.note_coordinates(code);
        Ok(flatten_unchecked(code, &self.layout))
    }

    #[inline]
    fn note_coordinates(&self, code: &MatrixCode) {
        let top = code.values().max().unwrap_or(0);
        if top > self.peak_coordinate.get() {
            self.peak_coordinate.set(top);
        }
    }

    pub fn get(&self, code: &MatrixCode) -> Result<bool> {
        Ok(self.bits.get(self.address(code)?))
    }

    pub fn set(&mut self, code: &MatrixCode) -> Result<()> {
        let idx = self.address(code)?;
        self.bits.set(idx);
        Ok(())
    }

    /// Crosses out a code known to be valid for the layout and returns its
    /// flat index.
    #[inline]
    pub(crate) fn mark(&mut self, code: &MatrixCode) -> u64 {
        debug_assert!(code.validate(self.layout.dims).is_ok());
        self.note_coordinates(code);
        let idx = flatten_unchecked(code, &self.layout);
        self.bits.set(idx);
        idx
    }

    pub fn get_index(&self, index: u64) -> Result<bool> {
        self.check_index(index)?;
        Ok(self.bits.get(index))
    }

    pub fn set_index(&mut self, index: u64) -> Result<()> {
        self.check_index(index)?;
        self.bits.set(index);
        Ok(())
    }

    fn check_index(&self, index: u64) -> Result<()> {
        if index >= self.layout.total_bits {
            return Err(Error::IndexOutOfRange {
                index,
                total: self.layout.total_bits,
            });
        }
        Ok(())
    }

    /// Smallest flat index `>= index` that is not crossed out.
    pub fn first_zero_at_or_after(&self, index: u64) -> Option<u64> {
        self.bits.first_zero_from(index)
    }

    pub fn crossed_count(&self) -> u64 {
        self.bits.count_ones()
    }

    /// Largest scalar that has passed through coordinate addressing so far,
    /// counting the coordinate count `m` itself. Never exceeds
    /// [`BoardLayout::mu`].
    pub fn peak_coordinate(&self) -> u64 {
        self.peak_coordinate.get()
    }
}
