use std::fmt;

use num_bigint::BigInt;

use crate::algebra::{GcdDomain, Ring};
use crate::error::{Error, Result};
use crate::polyarith::{parse_poly, RatPoly};

/// Dense square matrix, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<R> {
    size: usize,
    entries: Vec<R>,
}

pub type IntMat = Matrix<BigInt>;
pub type PolyMat = Matrix<RatPoly>;

impl<R: Ring> Matrix<R> {
    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let size = rows.len();
        if size < 2 {
            return Err(Error::precondition("matrix", "size must be at least 2"));
        }
        if let Some(i) = rows.iter().position(|r| r.len() != size) {
            return Err(Error::precondition(
                "matrix",
                format!("row {i} has {} entries, expected {size}", rows[i].len()),
            ));
        }
        Ok(Matrix {
            size,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds from a column-generating closure: `column(i)` is column `i`.
    pub fn from_columns(size: usize, mut column: impl FnMut(usize) -> Vec<R>) -> Self {
        let cols: Vec<Vec<R>> = (0..size).map(&mut column).collect();
        let entries = (0..size)
            .flat_map(|i| cols.iter().map(move |c| c[i].clone()))
            .collect();
        Matrix { size, entries }
    }

    pub fn identity(size: usize) -> Self {
        Self::scalar(size, R::one())
    }

    pub fn scalar(size: usize, c: R) -> Self {
        let mut entries = vec![R::zero(); size * size];
        for i in 0..size {
            entries[i * size + i] = c.clone();
        }
        Matrix { size, entries }
    }

    pub fn diagonal(diag: Vec<R>) -> Result<Self> {
        let n = diag.len();
        let rows = diag
            .into_iter()
            .enumerate()
            .map(|(i, d)| {
                let mut row = vec![R::zero(); n];
                row[i] = d;
                row
            })
            .collect();
        Self::from_rows(rows)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.entries[i * self.size + j]
    }

    pub fn entries(&self) -> &[R] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[R]> {
        self.entries.chunks(self.size)
    }

    pub fn column(&self, j: usize) -> Vec<R> {
        (0..self.size).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Ring::is_zero)
    }

    pub fn trace(&self) -> R {
        (0..self.size).fold(R::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.size, other.size, "matrix sizes differ");
        let n = self.size;
        let mut entries = vec![R::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let e = &mut entries[i * n + j];
                        *e = e.add(&a.mul(b));
                    }
                }
            }
        }
        Matrix { size: n, entries }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Matrix {
            size: self.size,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn add_scalar(&self, c: &R) -> Self {
        let mut out = self.clone();
        for i in 0..self.size {
            let e = &mut out.entries[i * self.size + i];
            *e = e.add(c);
        }
        out
    }

    pub fn minus_identity(&self) -> Self {
        self.add_scalar(&R::one().neg())
    }

    /// Square-and-multiply power.
    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.size);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl<R: GcdDomain> Matrix<R> {
    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> R {
        let n = self.size;
        let mut m = self.entries.clone();
        let mut negate = false;
        let mut prev = R::one();
        for k in 0..n {
            if m[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[i * n + k].is_zero()) else {
                    return R::zero();
                };
                for j in 0..n {
                    m.swap(k * n + j, p * n + j);
                }
                negate = !negate;
            }
            let pivot = m[k * n + k].clone();
            for i in k + 1..n {
                let lead = m[i * n + k].clone();
                for j in k + 1..n {
                    let v = pivot.mul(&m[i * n + j]).sub(&lead.mul(&m[k * n + j]));
                    m[i * n + j] = v.exact_div(&prev).expect("Bareiss division is exact");
                }
                m[i * n + k] = R::zero();
            }
            prev = pivot;
        }
        let d = m[n * n - 1].clone();
        if negate {
            d.neg()
        } else {
            d
        }
    }

    /// Normalized gcd of all entries; `None` for the zero matrix.
    pub fn content(&self) -> Option<R> {
        let mut acc = R::zero();
        for e in &self.entries {
            if acc.is_unit() {
                break;
            }
            acc = acc.gcd(e);
        }
        (!acc.is_zero()).then(|| acc.normalized())
    }
}

impl<R: fmt::Display> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.entries.chunks(self.size).enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

fn parse_with<R: Ring>(input: &str, entry: impl Fn(&str) -> Result<R>) -> Result<Matrix<R>> {
    let mut rows = Vec::new();
    let mut offset = 0;
    for row_text in input.split(';') {
        let mut row = Vec::new();
        let mut col_offset = offset;
        for cell in row_text.split(',') {
            let parsed = entry(cell).map_err(|e| match e {
                Error::Parse { pos, reason, .. } => Error::Parse {
                    input: input.to_string(),
                    pos: col_offset + pos,
                    reason,
                },
                other => other,
            })?;
            row.push(parsed);
            col_offset += cell.len() + 1;
        }
        rows.push(row);
        offset += row_text.len() + 1;
    }
    Matrix::from_rows(rows).map_err(|e| match e {
        Error::Precondition { reason, .. } => Error::Parse {
            input: input.to_string(),
            pos: 0,
            reason,
        },
        other => other,
    })
}

impl std::str::FromStr for IntMat {
    type Err = Error;

    /// Rows separated by `;`, entries by `,`: `2,1;1,1`.
    fn from_str(s: &str) -> Result<Self> {
        parse_with(s, |cell| {
            let trimmed = cell.trim();
            let lead = cell.len() - cell.trim_start().len();
            trimmed.parse::<BigInt>().map_err(|_| Error::Parse {
                input: cell.to_string(),
                pos: lead,
                reason: format!("expected an integer, found {trimmed:?}"),
            })
        })
    }
}

impl std::str::FromStr for PolyMat {
    type Err = Error;

    /// Rows separated by `;`, polynomial entries by `,`: `t,0;0,t+1`.
    fn from_str(s: &str) -> Result<Self> {
        parse_with(s, parse_poly)
    }
}
