//! Generic sieve over a finite ordered universe.
//!
//! A [`Universe`] supplies a total order (first element plus successor), a
//! position for every element, and `k` partial generator functions. The
//! sieve walks the order once; every element not yet crossed out starts a
//! new class, the class is rebuilt from that element with the generators,
//! and every later member of it is crossed out.

mod closure;
mod instances;

use std::hash::Hash;

pub use closure::{
    fixpoint_closure, fixpoint_closure_in, iterate_generator, layered_closure, layered_closure_in,
    ClosureResult, ClosureScratch, DENSE_MARK_LIMIT,
};
pub use instances::{eratosthenes, primes_by_sieve, Interval, MatrixUniverse, StepFn};

use crate::bitgrid::FlatBits;
use crate::error::{Error, Result};

/// Default board budget for [`run_sieve`]: 2^31 bits (256 MiB).
pub const DEFAULT_BOARD_BUDGET: u64 = 1 << 31;

pub trait Universe {
    type Elem: Clone + Eq + Hash;

    /// Number of elements.
    fn cardinality(&self) -> u64;

    /// Least element in the universe order, `None` if the universe is empty.
    fn first(&self) -> Option<Self::Elem>;

    /// Next element in the universe order.
    fn successor(&self, x: &Self::Elem) -> Option<Self::Elem>;

    /// Zero-based rank of `x` in the universe order. Must be `< cardinality()`.
    fn position(&self, x: &Self::Elem) -> u64;

    fn generator_count(&self) -> usize;

    /// One application of generator `generator` on a chain that started at
    /// `origin` and has reached `current`. `None` when the result is
    /// undefined or falls outside the universe, which ends the chain.
    ///
    /// Most generators ignore `origin`; the arithmetic-progression generator
    /// of the prime sieve (`current + origin`) is the exception.
    fn step(&self, generator: usize, origin: &Self::Elem, current: &Self::Elem)
        -> Option<Self::Elem>;
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum ClosureMode {
    /// Apply generator 1 from the seed, then each later generator from every
    /// element collected so far, one pass per generator.
    #[default]
    Layered,
    /// Smallest set containing the seed and closed under every generator chain.
    Fixpoint,
}

impl ClosureMode {
    pub fn closure<U: Universe>(self, universe: &U, seed: &U::Elem) -> ClosureResult<U::Elem> {
        match self {
            ClosureMode::Layered => layered_closure(universe, seed),
            ClosureMode::Fixpoint => fixpoint_closure(universe, seed),
        }
    }

    pub fn closure_in<U: Universe>(
        self,
        universe: &U,
        seed: &U::Elem,
        scratch: &mut ClosureScratch<U::Elem>,
    ) -> ClosureResult<U::Elem> {
        match self {
            ClosureMode::Layered => layered_closure_in(universe, seed, scratch),
            ClosureMode::Fixpoint => fixpoint_closure_in(universe, seed, scratch),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SieveOutcome<E> {
    pub class_count: u64,
    /// One representative per class, in universe order.
    pub representatives: Vec<E>,
    /// Elements crossed out by the run.
    pub crossed_count: u64,
}

pub fn run_sieve<U: Universe>(universe: &U, mode: ClosureMode) -> Result<SieveOutcome<U::Elem>> {
    run_sieve_with_budget(universe, mode, DEFAULT_BOARD_BUDGET)
}

/// Runs the sieve with a crossing board of `universe.cardinality()` bits,
/// refusing universes larger than `budget_bits`.
///
/// Only members positioned after the current representative are crossed.
/// Everything before the cursor is already decided, so representatives are
/// never crossed even when a closure is not symmetric.
pub fn run_sieve_with_budget<U: Universe>(
    universe: &U,
    mode: ClosureMode,
    budget_bits: u64,
) -> Result<SieveOutcome<U::Elem>> {
    let cardinality = universe.cardinality();
    if cardinality > budget_bits {
        return Err(Error::BoardBudget {
            cardinality,
            budget: budget_bits,
        });
    }
    let mut board = FlatBits::try_new(cardinality)?;
    let mut scratch = ClosureScratch::new(universe);
    let mut representatives = Vec::new();

    let mut cursor = universe.first();
    while let Some(x) = cursor {
        let pos = universe.position(&x);
        assert!(pos < cardinality, "position {pos} outside universe of {cardinality}");
        if !board.get(pos) {
            let closure = mode.closure_in(universe, &x, &mut scratch);
            for y in closure.members() {
                let p = universe.position(y);
                assert!(p < cardinality, "generator left the universe");
                if p > pos {
                    board.set(p);
                }
            }
            representatives.push(x.clone());
        }
        cursor = universe.successor(&x);
    }

    Ok(SieveOutcome {
        class_count: representatives.len() as u64,
        representatives,
        crossed_count: board.count_ones(),
    })
}
