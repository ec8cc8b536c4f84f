//! Boolean matrices and their row-code encoding.
//!
//! An `m x n` Boolean matrix is encoded as an `m`-tuple of row codes, each
//! row read as an `n`-bit binary number with the leftmost column as the most
//! significant bit. Under this encoding the two cyclic moves on a matrix
//! (last row to the top, last column to the left) become a rotation of the
//! tuple ([`f_r`]) and a one-bit right rotation of every entry ([`f_c`]).

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported column count. A row code of `n` bits and the radix
/// `2^n` must both fit in a `u64`.
pub const MAX_COLS: usize = 63;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dims {
    rows: usize,
    cols: usize,
}

impl Dims {
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 || cols > MAX_COLS {
            return Err(Error::InvalidDims { rows, cols });
        }
        Ok(Self { rows, cols })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Number of cells, `m * n`.
    pub fn cells(&self) -> usize {
        self.rows * self.cols
    }

    /// Largest row code, `2^n - 1`.
    pub fn max_row_code(&self) -> u64 {
        row_mask(self.cols)
    }

    /// The transposed shape. Fails if the new column count is unsupported.
    pub fn transposed(&self) -> Result<Self> {
        Self::new(self.cols, self.rows)
    }
}

impl fmt::Display for Dims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.rows, self.cols)
    }
}

#[inline]
fn row_mask(cols: usize) -> u64 {
    (1u64 << cols) - 1
}

/// One encoded row: a value in `0..2^n`.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(transparent)]
pub struct RowCode(u64);

impl RowCode {
    pub fn new(value: u64, cols: usize) -> Result<Self> {
        if cols == 0 || cols > MAX_COLS || value > row_mask(cols) {
            return Err(Error::RowOutOfRange { value, cols });
        }
        Ok(Self(value))
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub(crate) fn from_value_unchecked(value: u64) -> Self {
        Self(value)
    }

    /// One-bit right rotation of the `cols`-bit representation.
    #[inline]
    fn rotated(self, cols: usize) -> Self {
        Self((self.0 & 1) << (cols - 1) | self.0 >> 1)
    }

    /// `shift`-bit right rotation; same as applying [`RowCode::rotated`] `shift` times.
    #[inline]
    fn rotated_by(self, shift: usize, cols: usize) -> Self {
        let s = shift % cols;
        if s == 0 {
            return self;
        }
        Self((self.0 >> s | self.0 << (cols - s)) & row_mask(cols))
    }
}

impl fmt::Display for RowCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The row-wise rotation `(a % 2) * 2^(n-1) + a / 2`: the last bit of an
/// `n`-bit row moves to the front.
pub fn xi(a: u64, cols: usize) -> Result<u64> {
    Ok(RowCode::new(a, cols)?.rotated(cols).value())
}

/// A matrix encoded as its tuple of row codes.
///
/// The derived ordering is lexicographic over rows, which agrees with the
/// numeric order of the concatenated `m*n`-bit string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MatrixCode {
    rows: Vec<RowCode>,
}

impl MatrixCode {
    pub fn new(values: &[u64], dims: Dims) -> Result<Self> {
        if values.len() != dims.rows() {
            return Err(Error::CodeLength {
                expected: dims.rows(),
                found: values.len(),
            });
        }
        let rows = values
            .iter()
            .map(|&v| RowCode::new(v, dims.cols()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { rows })
    }

    pub fn zeros(dims: Dims) -> Self {
        Self {
            rows: vec![RowCode(0); dims.rows()],
        }
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<RowCode>) -> Self {
        Self { rows }
    }

    pub fn rows(&self) -> &[RowCode] {
        &self.rows
    }

    pub fn values(&self) -> impl ExactSizeIterator<Item = u64> + '_ {
        self.rows.iter().map(|r| r.0)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Checks this code against `dims`.
    pub fn validate(&self, dims: Dims) -> Result<()> {
        if self.rows.len() != dims.rows() {
            return Err(Error::CodeLength {
                expected: dims.rows(),
                found: self.rows.len(),
            });
        }
        for r in &self.rows {
            RowCode::new(r.0, dims.cols())?;
        }
        Ok(())
    }

    /// Writes `f_r^row_shift ∘ f_c^col_shift` of `self` into `out`, reusing its buffer.
    pub(crate) fn shifted_into(&self, row_shift: usize, col_shift: usize, cols: usize, out: &mut MatrixCode) {
        let m = self.rows.len();
        let split = m - row_shift % m;
        out.rows.clear();
        out.rows.extend(
            self.rows[split..]
                .iter()
                .chain(&self.rows[..split])
                .map(|r| r.rotated_by(col_shift, cols)),
        );
    }

    /// In-place `f_r^row_shift ∘ f_c^col_shift`.
    pub(crate) fn shift_in_place(&mut self, row_shift: usize, col_shift: usize, cols: usize) {
        if !self.rows.is_empty() {
            let k = row_shift % self.rows.len();
            self.rows.rotate_right(k);
        }
        if !col_shift.is_multiple_of(cols) {
            for r in &mut self.rows {
                *r = r.rotated_by(col_shift, cols);
            }
        }
    }
}

impl fmt::Display for MatrixCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", r.0)?;
        }
        Ok(())
    }
}

/// Explicit `m x n` grid of 0/1 entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    dims: Dims,
    cells: Vec<bool>,
}

impl BitMatrix {
    pub fn zeros(dims: Dims) -> Self {
        Self {
            dims,
            cells: vec![false; dims.cells()],
        }
    }

    /// Builds a matrix from rows of `0`/`1` bytes.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let dims = Dims::new(rows.len(), cols)?;
        let mut cells = Vec::with_capacity(dims.cells());
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: dims,
                    found_rows: rows.len(),
                    found_cols: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                match v {
                    0 => cells.push(false),
                    1 => cells.push(true),
                    _ => {
                        return Err(Error::InvalidEntry {
                            row: i,
                            col: j,
                            value: v,
                        })
                    }
                }
            }
        }
        Ok(Self { dims, cells })
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        assert!(row < self.dims.rows() && col < self.dims.cols());
        self.cells[row * self.dims.cols() + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        assert!(row < self.dims.rows() && col < self.dims.cols());
        self.cells[row * self.dims.cols() + col] = value;
    }

    pub fn row(&self, row: usize) -> &[bool] {
        let n = self.dims.cols();
        &self.cells[row * n..(row + 1) * n]
    }
}

/// Renders one line per row, `0`/`1` characters, each line LF-terminated.
impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.dims.rows() {
            for &b in self.row(r) {
                f.write_str(if b { "1" } else { "0" })?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

/// Reads each row as an `n`-bit number, leftmost column most significant.
pub fn encode(matrix: &BitMatrix, dims: Dims) -> Result<MatrixCode> {
    if matrix.dims() != dims {
        return Err(Error::DimensionMismatch {
            expected: dims,
            found_rows: matrix.dims().rows(),
            found_cols: matrix.dims().cols(),
        });
    }
    let rows = (0..dims.rows())
        .map(|r| {
            RowCode(
                matrix
                    .row(r)
                    .iter()
                    .fold(0u64, |acc, &b| acc << 1 | u64::from(b)),
            )
        })
        .collect();
    Ok(MatrixCode { rows })
}

/// Writes each row code out as `n` binary digits, zero-padded on the left.
pub fn decode(code: &MatrixCode, dims: Dims) -> Result<BitMatrix> {
    code.validate(dims)?;
    let mut matrix = BitMatrix::zeros(dims);
    let n = dims.cols();
    for (r, row) in code.rows.iter().enumerate() {
        for c in 0..n {
            let bit = row.0 >> (n - 1 - c) & 1 == 1;
            matrix.set(r, c, bit);
        }
    }
    Ok(matrix)
}

/// Moves the last row code to the front.
pub fn f_r(code: &MatrixCode) -> MatrixCode {
    let mut out = code.clone();
    if !out.rows.is_empty() {
        out.rows.rotate_right(1);
    }
    out
}

/// Applies [`xi`] to every row code.
pub fn f_c(code: &MatrixCode, cols: usize) -> MatrixCode {
    MatrixCode {
        rows: code.rows.iter().map(|r| r.rotated(cols)).collect(),
    }
}

/// `f_r` applied `row_shift` times, then `f_c` applied `col_shift` times.
pub fn apply_shift(code: &MatrixCode, row_shift: usize, col_shift: usize, cols: usize) -> MatrixCode {
    let mut out = code.clone();
    out.shift_in_place(row_shift, col_shift, cols);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims(m: usize, n: usize) -> Dims {
        Dims::new(m, n).unwrap()
    }

    fn code(v: &[u64], d: Dims) -> MatrixCode {
        MatrixCode::new(v, d).unwrap()
    }

    #[test]
    fn encode_examples() {
        let a = BitMatrix::from_rows(&[[1u8, 0], [0, 1]]).unwrap();
        assert_eq!(encode(&a, dims(2, 2)).unwrap(), code(&[2, 1], dims(2, 2)));

        let z = BitMatrix::zeros(dims(3, 4));
        assert_eq!(encode(&z, dims(3, 4)).unwrap(), MatrixCode::zeros(dims(3, 4)));

        let r = BitMatrix::from_rows(&[[1u8, 0, 1]]).unwrap();
        assert_eq!(encode(&r, dims(1, 3)).unwrap(), code(&[5], dims(1, 3)));
    }

    #[test]
    fn encode_rejects_wrong_shape() {
        let a = BitMatrix::zeros(dims(2, 3));
        assert!(matches!(
            encode(&a, dims(3, 2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn decode_examples() {
        let a = decode(&code(&[2, 1], dims(2, 2)), dims(2, 2)).unwrap();
        assert_eq!(a, BitMatrix::from_rows(&[[1u8, 0], [0, 1]]).unwrap());

        let z = decode(&code(&[0], dims(1, 1)), dims(1, 1)).unwrap();
        assert_eq!(z, BitMatrix::from_rows(&[[0u8]]).unwrap());

        let ones = decode(&code(&[7], dims(1, 3)), dims(1, 3)).unwrap();
        assert_eq!(ones, BitMatrix::from_rows(&[[1u8, 1, 1]]).unwrap());
    }

    #[test]
    fn out_of_range_rows_are_rejected() {
        assert!(matches!(
            MatrixCode::new(&[4], dims(1, 2)),
            Err(Error::RowOutOfRange { value: 4, cols: 2 })
        ));
        assert!(matches!(
            MatrixCode::new(&[1, 2], dims(3, 2)),
            Err(Error::CodeLength { expected: 3, found: 2 })
        ));
        let wide = code(&[7], dims(1, 3));
        assert!(decode(&wide, dims(1, 2)).is_err());
        assert!(xi(8, 3).is_err());
    }

    #[test]
    fn xi_examples() {
        assert_eq!(xi(5, 3).unwrap(), 6);
        for n in 1..=MAX_COLS {
            assert_eq!(xi(0, n).unwrap(), 0);
        }
        assert_eq!(xi(1, 4).unwrap(), 8);
        assert_eq!(xi(1, 1).unwrap(), 1);
    }

    #[test]
    fn f_r_examples() {
        let d = dims(3, 2);
        assert_eq!(f_r(&code(&[1, 2, 3], d)), code(&[3, 1, 2], d));
        assert_eq!(f_r(&code(&[2], dims(1, 2))), code(&[2], dims(1, 2)));
        assert_eq!(f_r(&code(&[3, 3, 3], d)), code(&[3, 3, 3], d));
    }

    #[test]
    fn f_c_examples() {
        assert_eq!(f_c(&code(&[5, 1], dims(2, 3)), 3), code(&[6, 4], dims(2, 3)));
        let z = MatrixCode::zeros(dims(4, 5));
        assert_eq!(f_c(&z, 5), z);
        assert_eq!(f_c(&code(&[2, 1], dims(2, 2)), 2), code(&[1, 2], dims(2, 2)));
    }

    #[test]
    fn apply_shift_examples() {
        let d = dims(2, 2);
        let c = code(&[2, 1], d);
        assert_eq!(apply_shift(&c, 0, 0, 2), c);
        assert_eq!(apply_shift(&c, 2, 2, 2), c);
        assert_eq!(apply_shift(&c, 1, 1, 2), c);

        let d = dims(3, 4);
        let c = code(&[1, 6, 11], d);
        assert_eq!(apply_shift(&c, 3, 4, 4), c);
    }

    #[test]
    fn apply_shift_matches_iterated_generators() {
        let d = dims(3, 5);
        let c = code(&[1, 19, 30], d);
        for i in 0..7 {
            for j in 0..11 {
                let mut expect = c.clone();
                for _ in 0..i {
                    expect = f_r(&expect);
                }
                for _ in 0..j {
                    expect = f_c(&expect, 5);
                }
                assert_eq!(apply_shift(&c, i, j, 5), expect, "shift ({i}, {j})");
            }
        }
    }

    #[test]
    fn dims_validation() {
        assert!(Dims::new(0, 3).is_err());
        assert!(Dims::new(3, 0).is_err());
        assert!(Dims::new(1, MAX_COLS + 1).is_err());
        assert_eq!(dims(2, 3).to_string(), "2x3");
        assert_eq!(dims(2, 3).max_row_code(), 7);
    }

    #[test]
    fn bit_matrix_rendering() {
        let a = BitMatrix::from_rows(&[[1u8, 0, 0], [0, 1, 1]]).unwrap();
        assert_eq!(a.to_string(), "100\n011\n");
        assert!(matches!(
            BitMatrix::from_rows(&[[1u8, 2]]),
            Err(Error::InvalidEntry { value: 2, .. })
        ));
        assert!(BitMatrix::from_rows(&[vec![1u8, 0], vec![1]]).is_err());
    }
}
