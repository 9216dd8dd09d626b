//! Text formats: ideal files (`vars: n` then one generator per line) and
//! matrix files (`matrix: r n` then `r` rows). Lines starting with `#` are
//! comments; comments of the form `# key: value` are kept as metadata.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::poly::{parse_polynomial, Ideal, Rational};
use crate::special::LinearIdealMatrix;

pub type Metadata = BTreeMap<String, String>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Input {
    Ideal(Ideal),
    Matrix(LinearIdealMatrix),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputFile {
    pub input: Input,
    pub meta: Metadata,
}

impl InputFile {
    /// The ideal, converting a matrix to its linear forms.
    pub fn ideal(&self) -> Result<Ideal> {
        match &self.input {
            Input::Ideal(i) => Ok(i.clone()),
            Input::Matrix(m) => m.to_ideal(),
        }
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.meta.get(key).map(String::as_str)
    }
}

fn at_line(line: usize, e: Error) -> Error {
    Error::Input { line, source: Box::new(e) }
}

fn header(line: &str, key: &str) -> Option<String> {
    let rest = line.strip_prefix(key)?.trim_start();
    rest.strip_prefix(':').map(|s| s.trim().to_string())
}

fn parse_count(text: &str, line: usize) -> Result<usize> {
    text.parse::<usize>().map_err(|_| at_line(line, Error::Invalid(format!("expected a count, found `{text}`"))))
}

/// Parses either file format, chosen by the first non-comment line.
pub fn parse_input(text: &str) -> Result<InputFile> {
    let mut meta = Metadata::new();
    let mut body: Vec<(usize, &str)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if let Some(c) = line.strip_prefix('#') {
            if let Some((k, v)) = c.split_once(':') {
                meta.insert(k.trim().to_string(), v.trim().to_string());
            }
        } else if !line.is_empty() {
            body.push((i + 1, line));
        }
    }
    let Some(&(first_no, first)) = body.first() else {
        return Err(Error::Invalid("empty input".into()));
    };
    let input = if let Some(n) = header(first, "vars") {
        let n = parse_count(&n, first_no)?;
        if n == 0 {
            return Err(at_line(first_no, Error::Invalid("need at least one variable".into())));
        }
        let gens = body[1..]
            .iter()
            .map(|&(no, l)| parse_polynomial(l, n).map_err(|e| at_line(no, e)))
            .collect::<Result<Vec<_>>>()?;
        Input::Ideal(Ideal::new(n, gens)?)
    } else if let Some(shape) = header(first, "matrix") {
        let dims: Vec<&str> = shape.split_whitespace().collect();
        if dims.len() != 2 {
            return Err(at_line(first_no, Error::Invalid("expected `matrix: r n`".into())));
        }
        let (r, n) = (parse_count(dims[0], first_no)?, parse_count(dims[1], first_no)?);
        if body.len() - 1 != r {
            return Err(Error::Invalid(format!("expected {r} matrix rows, found {}", body.len() - 1)));
        }
        let rows = body[1..]
            .iter()
            .map(|&(no, l)| {
                let row = l
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|s| !s.is_empty())
                    .map(|s| Rational::from_str(s).map_err(|_| at_line(no, Error::Invalid(format!("bad entry `{s}`")))))
                    .collect::<Result<Vec<_>>>()?;
                if row.len() != n {
                    return Err(at_line(no, Error::DimensionMismatch { expected: n, found: row.len() }));
                }
                Ok(row)
            })
            .collect::<Result<Vec<_>>>()?;
        if r == 0 || n == 0 {
            return Err(Error::EmptyIdeal);
        }
        Input::Matrix(LinearIdealMatrix::new(RationalMatrix::new(rows)))
    } else {
        return Err(at_line(first_no, Error::Invalid("expected a `vars: n` or `matrix: r n` header".into())));
    };
    Ok(InputFile { input, meta })
}

pub fn read_input(path: &Path) -> Result<InputFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    parse_input(&text)
}

/// Ideal file text with metadata comments first.
pub fn format_ideal(ideal: &Ideal, meta: &Metadata) -> String {
    let mut out = String::new();
    for (k, v) in meta {
        out.push_str(&format!("# {k}: {v}\n"));
    }
    out.push_str(&ideal.to_string());
    if !out.ends_with('\n') {
        out.push('\n');
    }
    out
}
