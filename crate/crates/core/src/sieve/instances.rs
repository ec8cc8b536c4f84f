use super::{run_sieve, ClosureMode, Universe};
use crate::bitgrid::{flatten_unchecked, unflatten_unchecked, BoardLayout};
use crate::error::{Error, Result};
use crate::matrix::{f_c, f_r, Dims, MatrixCode};

/// Generator on integers: `(origin, current) -> next`.
pub type StepFn = Box<dyn Fn(u64, u64) -> Option<u64> + Send + Sync>;

/// The integers `lo..=hi` in natural order, with caller-supplied generators.
/// Generator outputs outside the interval are treated as undefined.
pub struct Interval {
    lo: u64,
    hi: u64,
    generators: Vec<StepFn>,
}

impl Interval {
    pub fn new(lo: u64, hi: u64) -> Self {
        assert!(lo <= hi, "empty interval {lo}..={hi}");
        Self {
            lo,
            hi,
            generators: Vec::new(),
        }
    }

    pub fn with_generator<F>(mut self, f: F) -> Self
    where
        F: Fn(u64, u64) -> Option<u64> + Send + Sync + 'static,
    {
        self.generators.push(Box::new(f));
        self
    }

    pub fn bounds(&self) -> (u64, u64) {
        (self.lo, self.hi)
    }
}

impl std::fmt::Debug for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Interval")
            .field("lo", &self.lo)
            .field("hi", &self.hi)
            .field("generators", &self.generators.len())
            .finish()
    }
}

impl Universe for Interval {
    type Elem = u64;

    fn cardinality(&self) -> u64 {
        self.hi - self.lo + 1
    }

    fn first(&self) -> Option<u64> {
        Some(self.lo)
    }

    fn successor(&self, x: &u64) -> Option<u64> {
        (*x < self.hi).then(|| x + 1)
    }

    fn position(&self, x: &u64) -> u64 {
        x - self.lo
    }

    fn generator_count(&self) -> usize {
        self.generators.len()
    }

    fn step(&self, generator: usize, origin: &u64, current: &u64) -> Option<u64> {
        (self.generators[generator])(*origin, *current).filter(|y| (self.lo..=self.hi).contains(y))
    }
}

/// `[2, limit]` with the single generator `current + origin`, so the chain
/// from `x` is the multiples of `x`.
pub fn eratosthenes(limit: u64) -> Result<Interval> {
    if limit < 2 {
        return Err(Error::LimitTooSmall(limit));
    }
    Ok(Interval::new(2, limit).with_generator(|origin, current| current.checked_add(origin)))
}

/// Primes in `[2, limit]`, ascending, as the representatives of the
/// Eratosthenes instance.
pub fn primes_by_sieve(limit: u64) -> Result<Vec<u64>> {
    let universe = eratosthenes(limit)?;
    Ok(run_sieve(&universe, ClosureMode::Layered)?.representatives)
}

/// All `m x n` matrix codes in lexicographic order, with generators
/// `f_r` (index 0) and `f_c` (index 1).
#[derive(Debug, Clone, Copy)]
pub struct MatrixUniverse {
    layout: BoardLayout,
}

impl MatrixUniverse {
    pub fn new(dims: Dims) -> Result<Self> {
        Ok(Self {
            layout: BoardLayout::new(dims)?,
        })
    }

    pub fn from_layout(layout: BoardLayout) -> Self {
        Self { layout }
    }

    pub fn layout(&self) -> &BoardLayout {
        &self.layout
    }
}

impl Universe for MatrixUniverse {
    type Elem = MatrixCode;

    fn cardinality(&self) -> u64 {
        self.layout.total_bits()
    }

    fn first(&self) -> Option<MatrixCode> {
        Some(MatrixCode::zeros(self.layout.dims()))
    }

    fn successor(&self, x: &MatrixCode) -> Option<MatrixCode> {
        let next = flatten_unchecked(x, &self.layout) + 1;
        (next < self.layout.total_bits()).then(|| unflatten_unchecked(next, &self.layout))
    }

    fn position(&self, x: &MatrixCode) -> u64 {
        flatten_unchecked(x, &self.layout)
    }

    fn generator_count(&self) -> usize {
        2
    }

    fn step(&self, generator: usize, _origin: &MatrixCode, current: &MatrixCode) -> Option<MatrixCode> {
        match generator {
            0 => Some(f_r(current)),
            1 => Some(f_c(current, self.layout.dims().cols())),
            _ => None,
        }
    }
}
