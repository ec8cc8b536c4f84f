use std::hash::Hash;

use rustc_hash::FxHashSet;

use super::Universe;
use crate::bitgrid::FlatBits;
use crate::error::{Error, Result};

/// Universes up to this many elements track visited elements in a bit vector
/// indexed by position; larger ones fall back to a hash set.
pub const DENSE_MARK_LIMIT: u64 = 1 << 26;

enum Marks<E> {
    Dense { bits: FlatBits, touched: Vec<u64> },
    Sparse(FxHashSet<E>),
}

impl<E: Clone + Eq + Hash> Marks<E> {
    fn new<U: Universe<Elem = E>>(universe: &U) -> Self {
        let cardinality = universe.cardinality();
        if cardinality <= DENSE_MARK_LIMIT {
            if let Ok(bits) = FlatBits::try_new(cardinality) {
                return Marks::Dense {
                    bits,
                    touched: Vec::new(),
                };
            }
        }
        Marks::Sparse(FxHashSet::default())
    }

    /// Marks `x`; false if it was already marked.
    #[inline]
    fn insert<U: Universe<Elem = E>>(&mut self, universe: &U, x: &E) -> bool {
        match self {
            Marks::Dense { bits, touched } => {
                let p = universe.position(x);
                assert!(p < bits.len(), "position {p} outside universe of {}", bits.len());
                if bits.get(p) {
                    return false;
                }
                bits.set(p);
                touched.push(p);
                true
            }
            Marks::Sparse(set) => set.insert(x.clone()),
        }
    }

    fn reset(&mut self) {
        match self {
            Marks::Dense { bits, touched } => {
                for p in touched.drain(..) {
                    bits.clear(p);
                }
            }
            Marks::Sparse(set) => set.clear(),
        }
    }
}

/// Reusable bookkeeping for closures over one universe. Reusing it across
/// many seeds avoids reallocating per closure.
pub struct ClosureScratch<E> {
    chain: Marks<E>,
    members: Marks<E>,
}

impl<E: Clone + Eq + Hash> ClosureScratch<E> {
    pub fn new<U: Universe<Elem = E>>(universe: &U) -> Self {
        Self {
            chain: Marks::new(universe),
            members: Marks::new(universe),
        }
    }
}

impl<E> std::fmt::Debug for ClosureScratch<E> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let kind = match self.chain {
            Marks::Dense { .. } => "dense",
            Marks::Sparse(_) => "sparse",
        };
        f.debug_struct("ClosureScratch").field("marks", &kind).finish()
    }
}

/// Members of a class rebuilt from a seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureResult<E> {
    members: Vec<E>,
    periods: Vec<u64>,
}

impl<E: PartialEq> ClosureResult<E> {
    /// Distinct members in discovery order; the seed is always first.
    pub fn members(&self) -> impl ExactSizeIterator<Item = &E> {
        self.members.iter()
    }

    /// Linear scan.
    pub fn contains(&self, x: &E) -> bool {
        self.members.contains(x)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Chain length `r` of every generator chain walked, in walk order.
    pub fn periods(&self) -> &[u64] {
        &self.periods
    }

    pub fn into_members(self) -> Vec<E> {
        self.members
    }
}

/// Walks `seed, g(seed), g(g(seed)), ...` until the chain repeats itself or
/// leaves the universe, passing each link to `visit`. Returns `r`, the
/// largest exponent kept.
fn walk_chain<U: Universe>(
    universe: &U,
    generator: usize,
    seed: &U::Elem,
    marks: &mut Marks<U::Elem>,
    mut visit: impl FnMut(&U::Elem),
) -> u64 {
    marks.insert(universe, seed);
    visit(seed);
    let mut current = seed.clone();
    let mut r = 0;
    while let Some(next) = universe.step(generator, seed, &current) {
        if !marks.insert(universe, &next) {
            break;
        }
        visit(&next);
        r += 1;
        current = next;
    }
    marks.reset();
    r
}

/// Appends every link of one chain not already in `members`.
fn absorb_chain<U: Universe>(
    universe: &U,
    generator: usize,
    seed: &U::Elem,
    scratch: &mut ClosureScratch<U::Elem>,
    members: &mut Vec<U::Elem>,
) -> u64 {
    let seen = &mut scratch.members;
    walk_chain(universe, generator, seed, &mut scratch.chain, |y| {
        if seen.insert(universe, y) {
            members.push(y.clone());
        }
    })
}

pub fn iterate_generator<U: Universe>(
    universe: &U,
    generator: usize,
    seed: &U::Elem,
) -> Result<ClosureResult<U::Elem>> {
    let count = universe.generator_count();
    if generator >= count {
        return Err(Error::InvalidGenerator {
            index: generator,
            count,
        });
    }
    let mut marks = Marks::new(universe);
    let mut members = Vec::new();
    let r = walk_chain(universe, generator, seed, &mut marks, |y| members.push(y.clone()));
    Ok(ClosureResult {
        members,
        periods: vec![r],
    })
}

pub fn layered_closure<U: Universe>(universe: &U, seed: &U::Elem) -> ClosureResult<U::Elem> {
    layered_closure_in(universe, seed, &mut ClosureScratch::new(universe))
}

/// Chain of generator 0 from the seed, then for each later generator the
/// union of its chains from every element gathered by the previous layer.
/// Each layer contains the previous one.
pub fn layered_closure_in<U: Universe>(
    universe: &U,
    seed: &U::Elem,
    scratch: &mut ClosureScratch<U::Elem>,
) -> ClosureResult<U::Elem> {
    let mut periods = Vec::new();
    let mut members = Vec::new();
    if universe.generator_count() == 0 {
        members.push(seed.clone());
    }
    for generator in 0..universe.generator_count() {
        if generator == 0 {
            // The previous layer is just the seed, so the chain is the layer.
            let r = walk_chain(universe, 0, seed, &mut scratch.chain, |y| members.push(y.clone()));
            periods.push(r);
            if universe.generator_count() > 1 {
                for y in &members {
                    scratch.members.insert(universe, y);
                }
            }
            continue;
        }
        let previous = members.len();
        for idx in 0..previous {
            let y = members[idx].clone();
            periods.push(absorb_chain(universe, generator, &y, scratch, &mut members));
        }
    }
    scratch.members.reset();
    ClosureResult { members, periods }
}

pub fn fixpoint_closure<U: Universe>(universe: &U, seed: &U::Elem) -> ClosureResult<U::Elem> {
    fixpoint_closure_in(universe, seed, &mut ClosureScratch::new(universe))
}

/// Worklist closure: every member, including ones found late, has every
/// generator chain walked from it.
pub fn fixpoint_closure_in<U: Universe>(
    universe: &U,
    seed: &U::Elem,
    scratch: &mut ClosureScratch<U::Elem>,
) -> ClosureResult<U::Elem> {
    let mut periods = Vec::new();
    let mut members = vec![seed.clone()];
    scratch.members.insert(universe, seed);

    let mut next = 0;
    while next < members.len() {
        let y = members[next].clone();
        for generator in 0..universe.generator_count() {
            periods.push(absorb_chain(universe, generator, &y, scratch, &mut members));
        }
        next += 1;
    }
    scratch.members.reset();
    ClosureResult { members, periods }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::matrix::{xi, Dims, MatrixCode};
    use crate::sieve::{eratosthenes, Interval, MatrixUniverse};

    fn sorted<E: Ord + Clone + Eq + std::hash::Hash>(c: &ClosureResult<E>) -> Vec<E> {
        c.members().cloned().collect::<BTreeSet<_>>().into_iter().collect()
    }

    #[test]
    fn arithmetic_chain_from_seven() {
        let u = eratosthenes(30).unwrap();
        let c = iterate_generator(&u, 0, &7).unwrap();
        assert_eq!(sorted(&c), vec![7, 14, 21, 28]);
        assert_eq!(c.periods(), &[3]);
    }

    #[test]
    fn identity_chain() {
        let u = Interval::new(0, 9).with_generator(|_, x| Some(x));
        let c = iterate_generator(&u, 0, &4).unwrap();
        assert_eq!(sorted(&c), vec![4]);
        assert_eq!(c.periods(), &[0]);
    }

    #[test]
    fn xi_chain_on_three_bits() {
        let u = Interval::new(0, 7).with_generator(|_, a| xi(a, 3).ok());
        let c = iterate_generator(&u, 0, &1).unwrap();
        assert_eq!(c.members().copied().collect::<Vec<_>>(), vec![1, 4, 2]);
        assert_eq!(c.periods(), &[2]);
    }

    #[test]
    fn invalid_generator_index() {
        let u = eratosthenes(10).unwrap();
        assert!(matches!(
            iterate_generator(&u, 1, &2),
            Err(Error::InvalidGenerator { index: 1, count: 1 })
        ));
    }

    #[test]
    fn single_generator_layered_is_chain() {
        let u = eratosthenes(50).unwrap();
        for seed in 2..=50 {
            let chain = iterate_generator(&u, 0, &seed).unwrap();
            assert_eq!(layered_closure(&u, &seed), chain);
            assert_eq!(sorted(&fixpoint_closure(&u, &seed)), sorted(&chain));
        }
    }

    #[test]
    fn layered_2x2_orbit() {
        let d = Dims::new(2, 2).unwrap();
        let u = MatrixUniverse::new(d).unwrap();
        let seed = MatrixCode::new(&[0, 1], d).unwrap();
        let c = layered_closure(&u, &seed);
        // Row rotations and column rotations of [[0,0],[0,1]], done by hand.
        let expect: BTreeSet<MatrixCode> = [[0, 1], [1, 0], [0, 2], [2, 0]]
            .iter()
            .map(|v| MatrixCode::new(v, d).unwrap())
            .collect();
        assert_eq!(c.len(), 4);
        assert_eq!(c.members().cloned().collect::<BTreeSet<_>>(), expect);
    }

    #[test]
    fn fixed_seed_closes_on_itself() {
        let d = Dims::new(3, 3).unwrap();
        let u = MatrixUniverse::new(d).unwrap();
        let zero = MatrixCode::zeros(d);
        assert_eq!(layered_closure(&u, &zero).len(), 1);
        assert_eq!(fixpoint_closure(&u, &zero).len(), 1);
    }

    #[test]
    fn worklist_two_steps() {
        let u = Interval::new(0, 10)
            .with_generator(|_, x| Some(x + 2))
            .with_generator(|_, x| Some(x + 3));
        let c = fixpoint_closure(&u, &0);
        assert_eq!(sorted(&c), vec![0, 2, 3, 4, 5, 6, 7, 8, 9, 10]);
        let layered = layered_closure(&u, &0);
        assert!(layered.members().all(|x| c.contains(x)));
    }

    #[test]
    fn layered_can_under_cover_non_commuting_generators() {
        // x -> 2x then x -> x + 1: layered stops after one pass of each.
        let u = Interval::new(1, 12)
            .with_generator(|_, x| Some(2 * x))
            .with_generator(|_, x| if x % 2 == 1 { Some(x + 1) } else { None });
        let layered = layered_closure(&u, &3);
        let fix = fixpoint_closure(&u, &3);
        assert_eq!(sorted(&layered), vec![3, 4, 6, 12]);
        assert_eq!(sorted(&fix), vec![3, 4, 6, 8, 12]);
    }

    #[test]
    fn large_universe_uses_sparse_marks() {
        let hi = DENSE_MARK_LIMIT * 2;
        let u = Interval::new(0, hi)
            .with_generator(move |_, x| Some((x + hi / 4) % hi))
            .with_generator(|_, x| Some(x ^ 1));
        let scratch = ClosureScratch::new(&u);
        assert!(format!("{scratch:?}").contains("sparse"));
        let c = layered_closure(&u, &(hi / 2));
        let q = hi / 4;
        assert_eq!(sorted(&c), vec![0, 1, q, q + 1, 2 * q, 2 * q + 1, 3 * q, 3 * q + 1]);
        assert_eq!(c.periods(), &[3, 1, 1, 1, 1]);
    }
}
