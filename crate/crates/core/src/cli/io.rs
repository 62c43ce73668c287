//! File formats and JSON emission.
//!
//! Matrices are `{"rows": n, "cols": m, "entries": [[re, im], …]}` in
//! row-major order, frames `{"dim": n, "vectors": [[[re, im], …], …]}` and
//! g-frames `{"dim_h": n, "dim_ht": m, "members": [matrix, …]}`.

use std::fmt;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::frames::Frame;
use crate::gframes::GFrame;
use crate::numerics::{CVector, ComplexMatrix, C64};

/// Failures before any mathematics runs.
#[derive(Debug)]
pub enum IoFailure {
    Io {
        path: PathBuf,
        message: String,
    },
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
    Shape {
        path: PathBuf,
        message: String,
    },
}

impl IoFailure {
    pub fn kind(&self) -> &'static str {
        match self {
            IoFailure::Io { .. } => "IoError",
            IoFailure::Parse { .. } => "ParseError",
            IoFailure::Shape { .. } => "ShapeError",
        }
    }
}

impl fmt::Display for IoFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IoFailure::Io { path, message } => write!(f, "{}: {message}", path.display()),
            IoFailure::Parse {
                path,
                line,
                column,
                message,
            } => {
                write!(f, "{}:{line}:{column}: {message}", path.display())
            }
            IoFailure::Shape { path, message } => write!(f, "{}: {message}", path.display()),
        }
    }
}

impl std::error::Error for IoFailure {}

pub type IoResult<T> = std::result::Result<T, IoFailure>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameFile {
    pub dim: usize,
    pub vectors: Vec<Vec<[f64; 2]>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GFrameFile {
    pub dim_h: usize,
    pub dim_ht: usize,
    pub members: Vec<MatrixFile>,
}

/// `h₁` blocks for a g-frame partner, one `dim_ht × dim_ht` matrix per member.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlocksFile {
    pub blocks: Vec<MatrixFile>,
}

pub fn pairs(v: &CVector) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

fn complex(pairs: &[[f64; 2]]) -> Vec<C64> {
    pairs.iter().map(|[re, im]| C64::new(*re, *im)).collect()
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.row_major_entries().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    fn to_matrix(&self, path: &Path) -> IoResult<ComplexMatrix> {
        if self.entries.len() != self.rows * self.cols {
            return Err(shape(
                path,
                format!(
                    "{}x{} matrix needs {} entries, found {}",
                    self.rows,
                    self.cols,
                    self.rows * self.cols,
                    self.entries.len()
                ),
            ));
        }
        ComplexMatrix::from_row_major(self.rows, self.cols, complex(&self.entries))
            .map_err(|e| shape(path, e.to_string()))
    }
}

impl FrameFile {
    pub fn from_frame(frame: &Frame) -> Self {
        Self {
            dim: frame.dim(),
            vectors: frame.vectors().iter().map(pairs).collect(),
        }
    }

    fn to_frame(&self, path: &Path) -> IoResult<Frame> {
        for (k, v) in self.vectors.iter().enumerate() {
            if v.len() != self.dim {
                return Err(shape(
                    path,
                    format!("vector {k} has {} entries, expected {}", v.len(), self.dim),
                ));
            }
        }
        let vectors = self
            .vectors
            .iter()
            .map(|v| CVector::from_vec(complex(v)))
            .collect();
        Frame::new(self.dim, vectors).map_err(|e| shape(path, e.to_string()))
    }
}

impl GFrameFile {
    pub fn from_gframe(g: &GFrame) -> Self {
        Self {
            dim_h: g.dim_h(),
            dim_ht: g.dim_ht(),
            members: g.members().iter().map(MatrixFile::from_matrix).collect(),
        }
    }

    fn to_gframe(&self, path: &Path) -> IoResult<GFrame> {
        let members = self
            .members
            .iter()
            .map(|m| m.to_matrix(path))
            .collect::<IoResult<Vec<_>>>()?;
        for (k, m) in members.iter().enumerate() {
            if m.shape() != (self.dim_ht, self.dim_h) {
                return Err(shape(
                    path,
                    format!(
                        "member {k} is {}x{}, expected {}x{}",
                        m.rows(),
                        m.cols(),
                        self.dim_ht,
                        self.dim_h
                    ),
                ));
            }
        }
        GFrame::new(members).map_err(|e| shape(path, e.to_string()))
    }
}

fn shape(path: &Path, message: String) -> IoFailure {
    IoFailure::Shape {
        path: path.to_path_buf(),
        message,
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> IoResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| IoFailure::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    parse_json(&text, path)
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, path: &Path) -> IoResult<T> {
    serde_json::from_str(text).map_err(|e| IoFailure::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn parse_matrix_file(path: &Path) -> IoResult<ComplexMatrix> {
    read_json::<MatrixFile>(path)?.to_matrix(path)
}

pub fn parse_matrix_str(text: &str) -> IoResult<ComplexMatrix> {
    let path = Path::new("<input>");
    parse_json::<MatrixFile>(text, path)?.to_matrix(path)
}

pub fn parse_frame_file(path: &Path) -> IoResult<Frame> {
    read_json::<FrameFile>(path)?.to_frame(path)
}

pub fn parse_gframe_file(path: &Path) -> IoResult<GFrame> {
    read_json::<GFrameFile>(path)?.to_gframe(path)
}

pub fn parse_blocks_file(path: &Path) -> IoResult<Vec<ComplexMatrix>> {
    read_json::<BlocksFile>(path)?
        .blocks
        .iter()
        .map(|m| m.to_matrix(path))
        .collect()
}

/// Compact JSON whose floats carry 17 significant digits; non-finite values
/// become `null`.
#[derive(Clone, Copy, Debug, Default)]
pub struct SeventeenDigits;

impl serde_json::ser::Formatter for SeventeenDigits {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            writer.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SeventeenDigits);
    value
        .serialize(&mut ser)
        .expect("in-memory serialization of plain data");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

pub fn emit_matrix(m: &ComplexMatrix) -> String {
    to_json_string(&MatrixFile::from_matrix(m))
}

pub fn write_json_file<T: Serialize>(path: &Path, value: &T) -> IoResult<()> {
    let mut text = to_json_string(value);
    text.push('\n');
    std::fs::write(path, text).map_err(|e| IoFailure::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_by_one_identity() {
        let m = parse_matrix_str(r#"{"rows":1,"cols":1,"entries":[[1,0]]}"#).unwrap();
        assert_eq!(m, ComplexMatrix::identity(1));
    }

    #[test]
    fn truncated_input_reports_position() {
        let err = parse_matrix_str("{\"rows\":1,\n\"cols\":1,\"entr").unwrap_err();
        match err {
            IoFailure::Parse { line, column, .. } => {
                assert_eq!(line, 2);
                assert!(column > 0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn entry_count_mismatch_is_a_shape_error() {
        let err = parse_matrix_str(r#"{"rows":2,"cols":2,"entries":[[1,0]]}"#).unwrap_err();
        assert_eq!(err.kind(), "ShapeError");
    }

    #[test]
    fn floats_print_seventeen_digits() {
        assert_eq!(
            to_json_string(&[0.1f64, -2.0, f64::NAN]),
            "[1.0000000000000001e-1,-2.0000000000000000e0,null]"
        );
    }

    #[test]
    fn awkward_doubles_round_trip_bit_exactly() {
        let values = [
            0.1,
            1.0 / 3.0,
            f64::MIN_POSITIVE,
            5e-324,
            f64::MAX,
            -f64::EPSILON,
            2.0f64.sqrt(),
            123_456_789.123_456_79,
        ];
        let entries: Vec<C64> = values.iter().map(|&v| C64::new(v, -v * 0.7)).collect();
        let m = ComplexMatrix::from_row_major(2, 4, entries).unwrap();
        let back = parse_matrix_str(&emit_matrix(&m)).unwrap();
        for (a, b) in m.row_major_entries().iter().zip(back.row_major_entries()) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }
}
