//! Text formats: generator matrices, sparse parity-check (alist) files with an
//! optional companion value file, and permutations.

use crate::code::Code;
use crate::error::{AgcError, Result};
use crate::field::{Elem, FieldSpec};
use std::fmt::Write as _;
use std::path::Path;

/// `q n k` followed by `k` rows of space-separated element codes.
pub fn generator_text(code: &Code) -> String {
    let mut s = format!("{} {} {}\n", code.field().q(), code.len(), code.dimension());
    for row in code.generator() {
        let parts: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        s.push_str(&parts.join(" "));
        s.push('\n');
    }
    s
}

/// Parses [`generator_text`] output into `(q, n, rows)`.
pub fn parse_generator(text: &str) -> Result<(u32, usize, Vec<Vec<Elem>>)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<usize> = parse_numbers(lines.next().ok_or_else(|| bad("empty generator file"))?)?;
    let [q, n, k] = header[..] else { return Err(bad("header must be `q n k`")) };
    let field = FieldSpec::new(q as u32)?;
    let rows = lines
        .map(|l| {
            let row = parse_numbers(l)?;
            if row.len() != n {
                return Err(bad("row length differs from n"));
            }
            row.into_iter().map(|x| field.elem(x as u32)).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if rows.len() != k {
        return Err(bad("row count differs from k"));
    }
    Ok((q as u32, n, rows))
}

fn bad(msg: &str) -> AgcError {
    AgcError::InvalidParams(msg.to_string())
}

fn parse_numbers(line: &str) -> Result<Vec<usize>> {
    line.split_whitespace().map(|t| t.parse().map_err(|_| bad(&format!("not a number: {t}")))).collect()
}

/// A sparse matrix in MacKay's alist layout plus, for `q > 2`, the values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alist {
    pub n: usize,
    pub m: usize,
    /// 0-based row indices per column, increasing
    pub col_rows: Vec<Vec<usize>>,
    /// 0-based column indices per row, increasing
    pub row_cols: Vec<Vec<usize>>,
    /// nonzero value per `(row, col)` in row-traversal order
    pub row_values: Vec<Vec<Elem>>,
}

impl Alist {
    /// Sparse form of an `m x n` matrix given by rows.
    pub fn from_rows(n: usize, rows: &[Vec<Elem>]) -> Self {
        let mut col_rows = vec![Vec::new(); n];
        let mut row_cols = Vec::with_capacity(rows.len());
        let mut row_values = Vec::with_capacity(rows.len());
        for (i, r) in rows.iter().enumerate() {
            let cols: Vec<usize> = (0..n).filter(|&j| r[j] != 0).collect();
            for &j in &cols {
                col_rows[j].push(i);
            }
            row_values.push(cols.iter().map(|&j| r[j]).collect());
            row_cols.push(cols);
        }
        Alist { n, m: rows.len(), col_rows, row_cols, row_values }
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        self.row_cols
            .iter()
            .zip(&self.row_values)
            .map(|(cols, vals)| {
                let mut r = vec![0; self.n];
                for (&j, &v) in cols.iter().zip(vals) {
                    r[j] = v;
                }
                r
            })
            .collect()
    }

    fn value(&self, row: usize, col: usize) -> Elem {
        let pos = self.row_cols[row].binary_search(&col).expect("entry present");
        self.row_values[row][pos]
    }

    pub fn to_text(&self) -> String {
        let max_col = self.col_rows.iter().map(Vec::len).max().unwrap_or(0);
        let max_row = self.row_cols.iter().map(Vec::len).max().unwrap_or(0);
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.n, self.m);
        let _ = writeln!(s, "{max_col} {max_row}");
        s.push_str(&join(self.col_rows.iter().map(Vec::len)));
        s.push_str(&join(self.row_cols.iter().map(Vec::len)));
        for list in &self.col_rows {
            s.push_str(&join(padded(list, max_col)));
        }
        for list in &self.row_cols {
            s.push_str(&join(padded(list, max_row)));
        }
        s
    }

    /// Nonzero values: one line per column, then one line per row, each in
    /// the order of the corresponding index list.
    pub fn qval_text(&self) -> String {
        let mut s = String::new();
        for (j, rows) in self.col_rows.iter().enumerate() {
            s.push_str(&join(rows.iter().map(|&i| self.value(i, j))));
        }
        for vals in &self.row_values {
            s.push_str(&join(vals.iter().copied()));
        }
        s
    }

    /// Parses alist text, with values from `qval` when given (otherwise all 1).
    pub fn parse(text: &str, qval: Option<&str>) -> Result<Self> {
        let nums: Vec<usize> = text.split_whitespace().map(|t| t.parse().map_err(|_| bad("alist token"))).collect::<Result<_>>()?;
        let mut it = nums.into_iter();
        let mut next = || it.next().ok_or_else(|| bad("truncated alist"));
        let (n, m) = (next()?, next()?);
        let (max_col, max_row) = (next()?, next()?);
        let col_w: Vec<usize> = (0..n).map(|_| next()).collect::<Result<_>>()?;
        let row_w: Vec<usize> = (0..m).map(|_| next()).collect::<Result<_>>()?;
        let mut read_lists = |count: usize, width: usize, weights: &[usize]| -> Result<Vec<Vec<usize>>> {
            (0..count)
                .map(|x| {
                    let entries: Vec<usize> = (0..width).map(|_| next()).collect::<Result<_>>()?;
                    let list: Vec<usize> = entries.iter().filter(|&&e| e != 0).map(|&e| e - 1).collect();
                    if list.len() != weights[x] {
                        return Err(bad("alist weight mismatch"));
                    }
                    Ok(list)
                })
                .collect()
        };
        let col_rows = read_lists(n, max_col, &col_w)?;
        let row_cols = read_lists(m, max_row, &row_w)?;
        let row_values = match qval {
            None => row_cols.iter().map(|c| vec![1; c.len()]).collect(),
            Some(q) => {
                let lines: Vec<&str> = q.lines().collect();
                if lines.len() != n + m {
                    return Err(bad("qval line count"));
                }
                lines[n..]
                    .iter()
                    .map(|l| parse_numbers(l).map(|v| v.into_iter().map(|x| x as Elem).collect()))
                    .collect::<Result<_>>()?
            }
        };
        Ok(Alist { n, m, col_rows, row_cols, row_values })
    }
}

fn padded(list: &[usize], width: usize) -> impl Iterator<Item = usize> + '_ {
    list.iter().map(|&i| i + 1).chain(std::iter::repeat(0)).take(width)
}

fn join<T: ToString>(items: impl Iterator<Item = T>) -> String {
    let parts: Vec<String> = items.map(|x| x.to_string()).collect();
    parts.join(" ") + "\n"
}

fn suffixed(stem: &Path, suffix: &str) -> std::path::PathBuf {
    let mut s = stem.as_os_str().to_owned();
    s.push(suffix);
    s.into()
}

/// Writes `<stem>.alist`, plus `<stem>.qval` when `q > 2`; the suffixes are appended
/// to the stem and the written paths are returned.
pub fn write_alist(code: &Code, stem: &Path) -> Result<Vec<std::path::PathBuf>> {
    let alist = Alist::from_rows(code.len(), code.generator());
    let path = suffixed(stem, ".alist");
    std::fs::write(&path, alist.to_text())?;
    let mut out = vec![path];
    if code.field().q() > 2 {
        let qpath = suffixed(stem, ".qval");
        std::fs::write(&qpath, alist.qval_text())?;
        out.push(qpath);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::build_affine_grassmann;
    use crate::dual::build_dual_code;

    #[test]
    fn generator_round_trip() {
        let c = build_affine_grassmann(1, 2, 1, 3).unwrap();
        let text = generator_text(&c);
        assert_eq!(text, "3 3 2\n1 1 1\n0 1 2\n");
        let (q, n, rows) = parse_generator(&text).unwrap();
        assert_eq!((q, n), (3, 3));
        assert_eq!(rows, c.generator());
        assert!(parse_generator("3 3 2\n1 1 1\n").is_err());
        assert!(parse_generator("3 3 1\n1 1 5\n").is_err());
    }

    #[test]
    fn alist_layout() {
        let rows = vec![vec![1, 0, 1], vec![0, 1, 1]];
        let a = Alist::from_rows(3, &rows);
        assert_eq!(a.to_text(), "3 2\n2 2\n1 1 2\n2 2\n1 0\n2 0\n1 2\n1 3\n2 3\n");
        let back = Alist::parse(&a.to_text(), None).unwrap();
        assert_eq!(back.to_rows(), rows);
    }

    #[test]
    fn alist_round_trip_with_values() {
        let c = build_affine_grassmann(2, 4, 2, 3).unwrap();
        let d = build_dual_code(&c).unwrap();
        let a = Alist::from_rows(d.len(), d.generator());
        let back = Alist::parse(&a.to_text(), Some(&a.qval_text())).unwrap();
        assert_eq!(back.to_rows(), d.generator());
        let dir = tempfile::tempdir().unwrap();
        let paths = write_alist(&d, &dir.path().join("h")).unwrap();
        assert_eq!(paths.len(), 2);
    }
}
