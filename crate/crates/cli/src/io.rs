//! Text I/O for dense matrices and vectors.
//!
//! Format: a header line `n m`, then n rows of m whitespace-separated
//! decimals. Vectors are single-column matrices (`n 1`).

use std::fmt;
use std::fs;
use std::path::Path;

use olsrec_core::{DenseMatrix, DenseVector};

#[derive(Debug)]
pub struct ParseError {
    pub file: String,
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.file, self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(file: &Path, line: usize, message: String) -> ParseError {
    ParseError {
        file: file.display().to_string(),
        line,
        message,
    }
}

pub fn read_matrix(path: &Path) -> Result<DenseMatrix, ParseError> {
    let text = fs::read_to_string(path)
        .map_err(|e| err(path, 0, format!("cannot read file: {}", e)))?;
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| err(path, 1, "empty file, expected header `n m`".to_string()))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    if dims.len() != 2 {
        return Err(err(
            path,
            header_line,
            format!("expected header `n m`, found {:?}", header.trim()),
        ));
    }
    let parse_dim = |s: &str| -> Result<usize, ParseError> {
        s.parse()
            .map_err(|_| err(path, header_line, format!("invalid dimension {:?}", s)))
    };
    let n = parse_dim(dims[0])?;
    let m = parse_dim(dims[1])?;
    if n == 0 || m == 0 {
        return Err(err(
            path,
            header_line,
            format!("dimensions must be positive, got {} {}", n, m),
        ));
    }

    let mut data = Vec::with_capacity(n * m);
    let mut rows = 0usize;
    for (line_no, line) in lines {
        if rows == n {
            return Err(err(
                path,
                line_no,
                format!("expected {} rows, found extra data", n),
            ));
        }
        let mut count = 0usize;
        for tok in line.split_whitespace() {
            let v: f64 = tok
                .parse()
                .map_err(|_| err(path, line_no, format!("invalid number {:?}", tok)))?;
            data.push(v);
            count += 1;
        }
        if count != m {
            return Err(err(
                path,
                line_no,
                format!("expected {} values in row, found {}", m, count),
            ));
        }
        rows += 1;
    }
    if rows != n {
        return Err(err(
            path,
            0,
            format!("expected {} rows, found {}", n, rows),
        ));
    }
    Ok(DenseMatrix::from_row_slice(n, m, &data))
}

pub fn read_vector(path: &Path) -> Result<DenseVector, ParseError> {
    let m = read_matrix(path)?;
    if m.ncols() != 1 {
        return Err(err(
            path,
            1,
            format!("expected a vector (header `n 1`), found {} columns", m.ncols()),
        ));
    }
    Ok(DenseVector::from_column_slice(m.as_slice()))
}
