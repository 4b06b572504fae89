//! Dense reader and writer for the Matrix Market text format.
//!
//! Supported: `array` and `coordinate` layouts, `real`, `integer` and
//! `complex` fields, and `general`, `symmetric` and `hermitian` symmetry.
//! Symmetric and hermitian files store the lower triangle, which is
//! mirrored on read.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::error::Result;
use crate::linalg::{DenseMatrix, HermitianMatrix, C64};

#[derive(Debug, Error)]
pub enum MatrixMarketError {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("pattern matrices carry no values and are not supported")]
    PatternUnsupported,
    #[error("unsupported symmetry `{0}`")]
    UnsupportedSymmetry(String),
    #[error("inconsistent dimensions: {0}")]
    InconsistentDimensions(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: non-finite entry")]
    NonFinite { line: usize },
    #[error("hermitian diagonal entry ({row}, {row}) has imaginary part {imag}")]
    HermitianDiagonalImaginary { row: usize, imag: f64 },
    #[error("entry ({row}, {col}) lies above the diagonal of a {symmetry} file")]
    UpperTriangle {
        row: usize,
        col: usize,
        symmetry: &'static str,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Layout {
    Array,
    Coordinate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    Real,
    Integer,
    Complex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    General,
    Symmetric,
    Hermitian,
}

impl Symmetry {
    fn name(self) -> &'static str {
        match self {
            Symmetry::General => "general",
            Symmetry::Symmetric => "symmetric",
            Symmetry::Hermitian => "hermitian",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Header {
    pub layout: Layout,
    pub field: Field,
    pub symmetry: Symmetry,
}

/// What a file decodes to: symmetric and hermitian files become a
/// [`HermitianMatrix`], general files a [`DenseMatrix`].
#[derive(Clone, Debug, PartialEq)]
pub enum MarketMatrix {
    General(DenseMatrix),
    Hermitian(HermitianMatrix),
}

impl MarketMatrix {
    pub fn as_dense(&self) -> &DenseMatrix {
        match self {
            MarketMatrix::General(m) => m,
            MarketMatrix::Hermitian(h) => h.as_matrix(),
        }
    }

    pub fn into_dense(self) -> DenseMatrix {
        match self {
            MarketMatrix::General(m) => m,
            MarketMatrix::Hermitian(h) => h.into_matrix(),
        }
    }

    /// Hermitian view; general files go through the strict asymmetry check.
    pub fn into_hermitian(self) -> Result<HermitianMatrix> {
        match self {
            MarketMatrix::General(m) => HermitianMatrix::new_strict(m),
            MarketMatrix::Hermitian(h) => Ok(h),
        }
    }
}

fn parse_header(line: &str) -> Result<Header, MatrixMarketError> {
    let lower = line.trim().to_ascii_lowercase();
    let words: Vec<&str> = lower.split_whitespace().collect();
    if words.len() != 5 || words[0] != "%%matrixmarket" || words[1] != "matrix" {
        return Err(MatrixMarketError::MalformedHeader(line.trim().to_string()));
    }
    let layout = match words[2] {
        "array" => Layout::Array,
        "coordinate" => Layout::Coordinate,
        other => {
            return Err(MatrixMarketError::MalformedHeader(format!(
                "unknown layout `{other}`"
            )))
        }
    };
    let field = match words[3] {
        "real" | "double" => Field::Real,
        "integer" => Field::Integer,
        "complex" => Field::Complex,
        "pattern" => return Err(MatrixMarketError::PatternUnsupported),
        other => {
            return Err(MatrixMarketError::MalformedHeader(format!(
                "unknown field `{other}`"
            )))
        }
    };
    let symmetry = match words[4] {
        "general" => Symmetry::General,
        "symmetric" => Symmetry::Symmetric,
        "hermitian" => Symmetry::Hermitian,
        other => return Err(MatrixMarketError::UnsupportedSymmetry(other.to_string())),
    };
    if symmetry == Symmetry::Hermitian && field != Field::Complex {
        // A real hermitian file is just symmetric.
        return Ok(Header {
            layout,
            field,
            symmetry: Symmetry::Symmetric,
        });
    }
    Ok(Header {
        layout,
        field,
        symmetry,
    })
}

fn parse_number(tok: &str, line: usize) -> Result<f64, MatrixMarketError> {
    let v: f64 = tok.parse().map_err(|_| MatrixMarketError::Parse {
        line,
        message: format!("cannot parse `{tok}` as a number"),
    })?;
    if !v.is_finite() {
        return Err(MatrixMarketError::NonFinite { line });
    }
    Ok(v)
}

fn parse_index(tok: &str, line: usize, bound: usize) -> Result<usize, MatrixMarketError> {
    let i: usize = tok.parse().map_err(|_| MatrixMarketError::Parse {
        line,
        message: format!("cannot parse `{tok}` as an index"),
    })?;
    if i == 0 || i > bound {
        return Err(MatrixMarketError::InconsistentDimensions(format!(
            "line {line}: index {i} outside 1..={bound}"
        )));
    }
    Ok(i - 1)
}

fn parse_value(toks: &[&str], field: Field, line: usize) -> Result<C64, MatrixMarketError> {
    let want = if field == Field::Complex { 2 } else { 1 };
    if toks.len() != want {
        return Err(MatrixMarketError::Parse {
            line,
            message: format!("expected {want} value token(s), found {}", toks.len()),
        });
    }
    let re = parse_number(toks[0], line)?;
    let im = if want == 2 {
        parse_number(toks[1], line)?
    } else {
        0.0
    };
    Ok(C64::new(re, im))
}

/// Parses Matrix Market text.
pub fn parse_matrix_market(text: &str) -> Result<MarketMatrix> {
    Ok(parse_inner(text)?)
}

fn parse_inner(text: &str) -> Result<MarketMatrix, MatrixMarketError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let header = match lines.next() {
        Some((_, l)) => parse_header(l)?,
        None => return Err(MatrixMarketError::MalformedHeader("empty file".into())),
    };
    let mut body = lines.filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('%')
    });

    let (size_line, size) = body
        .next()
        .ok_or_else(|| MatrixMarketError::InconsistentDimensions("missing size line".into()))?;
    let dims: Vec<&str> = size.split_whitespace().collect();
    let parse_dim = |t: &str| -> Result<usize, MatrixMarketError> {
        t.parse().map_err(|_| MatrixMarketError::Parse {
            line: size_line,
            message: format!("cannot parse `{t}` as a dimension"),
        })
    };
    let expected_len = if header.layout == Layout::Array { 2 } else { 3 };
    if dims.len() != expected_len {
        return Err(MatrixMarketError::InconsistentDimensions(format!(
            "size line needs {expected_len} entries, found {}",
            dims.len()
        )));
    }
    let rows = parse_dim(dims[0])?;
    let cols = parse_dim(dims[1])?;
    if header.symmetry != Symmetry::General && rows != cols {
        return Err(MatrixMarketError::InconsistentDimensions(format!(
            "{} matrix must be square, got {rows}x{cols}",
            header.symmetry.name()
        )));
    }

    let mut m = DenseMatrix::zeros(rows, cols);
    let mut set = |r: usize, c: usize, v: C64| -> Result<(), MatrixMarketError> {
        match header.symmetry {
            Symmetry::General => m[(r, c)] = v,
            Symmetry::Symmetric | Symmetry::Hermitian => {
                if c > r {
                    return Err(MatrixMarketError::UpperTriangle {
                        row: r + 1,
                        col: c + 1,
                        symmetry: header.symmetry.name(),
                    });
                }
                if r == c && header.symmetry == Symmetry::Hermitian && v.im != 0.0 {
                    return Err(MatrixMarketError::HermitianDiagonalImaginary {
                        row: r + 1,
                        imag: v.im,
                    });
                }
                m[(r, c)] = v;
                if r != c {
                    m[(c, r)] = if header.symmetry == Symmetry::Hermitian {
                        v.conj()
                    } else {
                        v
                    };
                }
            }
        }
        Ok(())
    };

    match header.layout {
        Layout::Coordinate => {
            let nnz = parse_dim(dims[2])?;
            let mut seen = 0;
            for (line, l) in body {
                let toks: Vec<&str> = l.split_whitespace().collect();
                if toks.len() < 3 {
                    return Err(MatrixMarketError::Parse {
                        line,
                        message: "coordinate entry needs row, column and value".into(),
                    });
                }
                let r = parse_index(toks[0], line, rows)?;
                let c = parse_index(toks[1], line, cols)?;
                let v = parse_value(&toks[2..], header.field, line)?;
                set(r, c, v)?;
                seen += 1;
            }
            if seen != nnz {
                return Err(MatrixMarketError::InconsistentDimensions(format!(
                    "header declares {nnz} entries, found {seen}"
                )));
            }
        }
        Layout::Array => {
            // Column-major; symmetric files list the lower triangle only.
            let positions: Vec<(usize, usize)> = (0..cols)
                .flat_map(|c| {
                    let start = if header.symmetry == Symmetry::General {
                        0
                    } else {
                        c
                    };
                    (start..rows).map(move |r| (r, c))
                })
                .collect();
            let mut seen = 0;
            for (line, l) in body {
                let toks: Vec<&str> = l.split_whitespace().collect();
                let v = parse_value(&toks, header.field, line)?;
                if let Some(&(r, c)) = positions.get(seen) {
                    set(r, c, v)?;
                }
                seen += 1;
            }
            if seen != positions.len() {
                return Err(MatrixMarketError::InconsistentDimensions(format!(
                    "expected {} array entries, found {seen}",
                    positions.len()
                )));
            }
        }
    }

    Ok(match header.symmetry {
        Symmetry::General => MarketMatrix::General(m),
        _ => MarketMatrix::Hermitian(
            HermitianMatrix::new_strict(m).expect("mirrored matrix is exactly Hermitian"),
        ),
    })
}

/// Reads a `.mtx` file.
pub fn read_matrix_market(path: impl AsRef<Path>) -> Result<MarketMatrix> {
    parse_matrix_market(&fs::read_to_string(path)?)
}

fn is_real(m: &DenseMatrix) -> bool {
    m.as_slice().iter().all(|z| z.im == 0.0)
}

/// Writes `m` as `array general`, column-major, every value with 17
/// significant digits. The field is `real` when no entry has an imaginary
/// part.
pub fn format_matrix_market(m: &DenseMatrix) -> String {
    let real = is_real(m);
    let mut out = String::new();
    let field = if real { "real" } else { "complex" };
    let _ = writeln!(out, "%%MatrixMarket matrix array {field} general");
    let _ = writeln!(out, "{} {}", m.rows(), m.cols());
    for c in 0..m.cols() {
        for r in 0..m.rows() {
            let z = m[(r, c)];
            if real {
                let _ = writeln!(out, "{:.16e}", z.re);
            } else {
                let _ = writeln!(out, "{:.16e} {:.16e}", z.re, z.im);
            }
        }
    }
    out
}

/// Writes a Hermitian matrix as `coordinate` with the lower triangle.
pub fn format_hermitian(h: &HermitianMatrix) -> String {
    let m = h.as_matrix();
    let real = is_real(m);
    let n = h.dim();
    let mut entries = Vec::new();
    for c in 0..n {
        for r in c..n {
            let z = m[(r, c)];
            if z != C64::new(0.0, 0.0) || r == c {
                entries.push((r, c, z));
            }
        }
    }
    let mut out = String::new();
    let (field, symmetry) = if real {
        ("real", "symmetric")
    } else {
        ("complex", "hermitian")
    };
    let _ = writeln!(out, "%%MatrixMarket matrix coordinate {field} {symmetry}");
    let _ = writeln!(out, "{n} {n} {}", entries.len());
    for (r, c, z) in entries {
        if real {
            let _ = writeln!(out, "{} {} {:.16e}", r + 1, c + 1, z.re);
        } else {
            let _ = writeln!(out, "{} {} {:.16e} {:.16e}", r + 1, c + 1, z.re, z.im);
        }
    }
    out
}

pub fn write_matrix_market(path: impl AsRef<Path>, m: &DenseMatrix) -> Result<()> {
    fs::write(path, format_matrix_market(m))?;
    Ok(())
}

pub fn write_hermitian(path: impl AsRef<Path>, h: &HermitianMatrix) -> Result<()> {
    fs::write(path, format_hermitian(h))?;
    Ok(())
}
