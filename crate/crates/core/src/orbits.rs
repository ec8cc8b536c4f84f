//! Enumeration of `m x n` Boolean matrices up to cyclic row and column
//! rotation.
//!
//! The board is scanned in lexicographic order. The first code not yet
//! crossed out represents a new class; all `m * n` images
//! `f_r^i ∘ f_c^j` of it are then crossed out. Because the scan only ever
//! moves forward, every representative is the lexicographic minimum of its
//! class.

use std::collections::BTreeSet;
use std::fmt;
use std::io::{self, BufRead, Write};
use std::str::FromStr;

use crate::bitgrid::{unflatten_unchecked, BitBoard, BoardLayout};
use crate::error::{Error, Result};
use crate::matrix::{apply_shift, decode, Dims, MatrixCode};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitRecord {
    /// 1-based, in discovery order.
    pub class_index: u64,
    pub representative: MatrixCode,
    pub orbit_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationReport {
    pub dims: Dims,
    pub class_count: u64,
    pub records: Vec<OrbitRecord>,
    /// `2^(m*n)`.
    pub universe_size: u64,
}

impl EnumerationReport {
    pub fn orbit_size_total(&self) -> u64 {
        self.records.iter().map(|r| r.orbit_size as u64).sum()
    }
}

/// Statistics of one enumeration run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunSummary {
    pub class_count: u64,
    pub crossed_count: u64,
    /// Largest scalar used to address the board; bounded by [`BoardLayout::mu`].
    pub peak_coordinate: u64,
}

/// Every image `f_r^i ∘ f_c^j (code)` for `0 <= i < m`, `0 <= j < n`,
/// deduplicated.
pub fn orbit_of(code: &MatrixCode, dims: Dims) -> Result<BTreeSet<MatrixCode>> {
    code.validate(dims)?;
    let mut orbit = BTreeSet::new();
    for i in 0..dims.rows() {
        for j in 0..dims.cols() {
            orbit.insert(apply_shift(code, i, j, dims.cols()));
        }
    }
    Ok(orbit)
}

pub fn enumerate_classes(dims: Dims) -> Result<EnumerationReport> {
    Enumerator::new(BoardLayout::new(dims)?).enumerate()
}

/// Like [`enumerate_classes`] but hands each record to `sink` as soon as it
/// is found. A sink error aborts the run with [`Error::Sink`].
pub fn stream_representatives<F, E>(dims: Dims, sink: F) -> Result<RunSummary>
where
    F: FnMut(OrbitRecord) -> Result<(), E>,
    E: Into<Box<dyn std::error::Error + Send + Sync>>,
{
    Enumerator::new(BoardLayout::new(dims)?).stream(sink)
}

/// Enumeration over an explicit layout, for callers that override the
/// feasibility bound.
#[derive(Debug, Clone, Copy)]
pub struct Enumerator {
    layout: BoardLayout,
}

impl Enumerator {
    pub fn new(layout: BoardLayout) -> Self {
        Self { layout }
    }

    pub fn layout(&self) -> &BoardLayout {
        &self.layout
    }

    pub fn enumerate(&self) -> Result<EnumerationReport> {
        let mut records = Vec::new();
        let summary = self.stream(|r| {
            records.push(r);
            Ok::<_, std::convert::Infallible>(())
        })?;
        Ok(EnumerationReport {
            dims: self.layout.dims(),
            class_count: summary.class_count,
            records,
            universe_size: self.layout.total_bits(),
        })
    }

    pub fn stream<F, E>(&self, mut sink: F) -> Result<RunSummary>
    where
        F: FnMut(OrbitRecord) -> Result<(), E>,
        E: Into<Box<dyn std::error::Error + Send + Sync>>,
    {
        let layout = self.layout;
        let dims = layout.dims();
        let (m, n) = (dims.rows(), dims.cols());
        let mut board = BitBoard::new(layout)?;

        let mut image = MatrixCode::zeros(dims);
        let mut orbit = Vec::with_capacity(m * n);
        let mut class_count = 0;
        let mut cursor = 0;

        while let Some(index) = board.first_zero_at_or_after(cursor) {
            let representative = unflatten_unchecked(index, &layout);
            class_count += 1;

            orbit.clear();
            for i in 0..m {
                for j in 0..n {
                    representative.shifted_into(i, j, n, &mut image);
                    orbit.push(board.mark(&image));
                }
            }
            orbit.sort_unstable();
            orbit.dedup();
            debug_assert_eq!(orbit[0], index, "representative is not the orbit minimum");

            sink(OrbitRecord {
                class_index: class_count,
                representative,
                orbit_size: orbit.len(),
            })
            .map_err(|e| Error::Sink(e.into()))?;

            cursor = index + 1;
        }

        Ok(RunSummary {
            class_count,
            crossed_count: board.crossed_count(),
            peak_coordinate: board.peak_coordinate(),
        })
    }
}

/// Layout of the representative file.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum RecordFormat {
    /// Record lines only.
    #[default]
    Tuple,
    /// Each record line followed by the decoded matrix, one line per row.
    Matrix,
}

impl FromStr for RecordFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tuple" => Ok(Self::Tuple),
            "matrix" => Ok(Self::Matrix),
            other => Err(format!("unknown format {other:?} (expected tuple or matrix)")),
        }
    }
}

impl fmt::Display for RecordFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Tuple => "tuple",
            Self::Matrix => "matrix",
        })
    }
}

pub fn write_header<W: Write>(out: &mut W, dims: Dims, class_count: u64) -> io::Result<()> {
    writeln!(
        out,
        "# rows={} cols={} classes={}",
        dims.rows(),
        dims.cols(),
        class_count
    )
}

/// `<class_index>\t<orbit_size>\t<p_1>,...,<p_m>`, plus the rendered matrix
/// for [`RecordFormat::Matrix`].
pub fn write_record<W: Write>(
    out: &mut W,
    record: &OrbitRecord,
    dims: Dims,
    format: RecordFormat,
) -> Result<()> {
    writeln!(
        out,
        "{}\t{}\t{}",
        record.class_index, record.orbit_size, record.representative
    )?;
    if format == RecordFormat::Matrix {
        write!(out, "{}", decode(&record.representative, dims)?)?;
    }
    Ok(())
}

pub fn write_report<W: Write>(out: &mut W, report: &EnumerationReport, format: RecordFormat) -> Result<()> {
    write_header(out, report.dims, report.class_count)?;
    for record in &report.records {
        write_record(out, record, report.dims, format)?;
    }
    Ok(())
}

/// Contents of a representative file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentativeFile {
    pub dims: Dims,
    pub class_count: u64,
    pub format: RecordFormat,
    pub records: Vec<OrbitRecord>,
}

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("header announces {announced} classes but the file has {found}")]
    CountMismatch { announced: u64, found: usize },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Reads a file in either record format. Record lines are the ones holding
/// tabs; any other line is a matrix row of the preceding record and must
/// agree with its decoded representative.
pub fn read_representatives<R: BufRead>(input: R) -> Result<RepresentativeFile, ParseError> {
    let syntax = |line: usize, message: String| ParseError::Syntax { line, message };
    let mut lines = input.lines();

    let header = lines.next().ok_or_else(|| syntax(1, "empty file".into()))??;
    let (dims, class_count) =
        parse_header(&header).ok_or_else(|| syntax(1, format!("bad header {header:?}")))?;

    let mut records = Vec::new();
    // Rendered matrix rows following each record, with the record's line number.
    let mut blocks: Vec<(usize, String)> = Vec::new();
    for (i, line) in lines.enumerate() {
        let no = i + 2;
        let line = line?;
        if line.contains('\t') {
            records.push(parse_record(&line, dims).map_err(|m| syntax(no, m))?);
            blocks.push((no, String::new()));
            continue;
        }
        let Some((_, block)) = blocks.last_mut() else {
            return Err(syntax(no, format!("unexpected line {line:?}")));
        };
        if line.len() != dims.cols() || !line.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(syntax(no, format!("bad matrix row {line:?}")));
        }
        block.push_str(&line);
        block.push('\n');
    }

    let format = if blocks.iter().all(|(_, b)| b.is_empty()) {
        RecordFormat::Tuple
    } else {
        RecordFormat::Matrix
    };
    if format == RecordFormat::Matrix {
        for (record, (no, block)) in records.iter().zip(&blocks) {
            let expect = decode(&record.representative, dims)
                .map_err(|e| syntax(*no, e.to_string()))?
                .to_string();
            if &expect != block {
                return Err(syntax(*no, "matrix rows disagree with the record".into()));
            }
        }
    }
    if records.len() as u64 != class_count {
        return Err(ParseError::CountMismatch {
            announced: class_count,
            found: records.len(),
        });
    }
    Ok(RepresentativeFile {
        dims,
        class_count,
        format,
        records,
    })
}

fn parse_header(line: &str) -> Option<(Dims, u64)> {
    let rest = line.strip_prefix("# ")?;
    let mut fields = rest.split(' ');
    let rows = fields.next()?.strip_prefix("rows=")?.parse().ok()?;
    let cols = fields.next()?.strip_prefix("cols=")?.parse().ok()?;
    let classes = fields.next()?.strip_prefix("classes=")?.parse().ok()?;
    if fields.next().is_some() {
        return None;
    }
    Some((Dims::new(rows, cols).ok()?, classes))
}

fn parse_record(line: &str, dims: Dims) -> Result<OrbitRecord, String> {
    let mut fields = line.split('\t');
    let (Some(index), Some(size), Some(code), None) =
        (fields.next(), fields.next(), fields.next(), fields.next())
    else {
        return Err(format!("expected three tab-separated fields in {line:?}"));
    };
    let class_index = index.parse().map_err(|_| format!("bad class index {index:?}"))?;
    let orbit_size = size.parse().map_err(|_| format!("bad orbit size {size:?}"))?;
    let values = code
        .split(',')
        .map(|p| p.parse::<u64>().map_err(|_| format!("bad row code {p:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    let representative = MatrixCode::new(&values, dims).map_err(|e| e.to_string())?;
    Ok(OrbitRecord {
        class_index,
        representative,
        orbit_size,
    })
}
