use std::fmt;

use super::{MultiPoly, Rational};
use crate::error::{GnError, Result};

/// Dense row-major matrix of polynomials sharing one variable count.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<MultiPoly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(GnError::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let nvars = match entries.first() {
            Some(p) => p.nvars(),
            None => 0,
        };
        if entries.iter().any(|p| p.nvars() != nvars) {
            return Err(GnError::Dimension(
                "matrix entries have different variable counts".into(),
            ));
        }
        Ok(PolyMatrix {
            rows,
            cols,
            nvars,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<MultiPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(GnError::Dimension("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        nvars: usize,
        mut f: impl FnMut(usize, usize) -> MultiPoly,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                assert_eq!(e.nvars(), nvars, "entry arity mismatch");
                entries.push(e);
            }
        }
        PolyMatrix {
            rows,
            cols,
            nvars,
            entries,
        }
    }

    pub fn identity(size: usize, nvars: usize) -> Self {
        Self::from_fn(size, size, nvars, |i, j| {
            if i == j {
                MultiPoly::one(nvars)
            } else {
                MultiPoly::zero(nvars)
            }
        })
    }

    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        Self::from_fn(rows, cols, nvars, |_, _| MultiPoly::zero(nvars))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[MultiPoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[MultiPoly] {
        &self.entries
    }

    pub fn transpose(&self) -> PolyMatrix {
        Self::from_fn(self.cols, self.rows, self.nvars, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(MultiPoly::is_zero)
    }

    pub fn checked_mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(GnError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.nvars != other.nvars && !self.entries.is_empty() && !other.entries.is_empty() {
            return Err(GnError::Dimension("matrix arity mismatch".into()));
        }
        Ok(Self::from_fn(self.rows, other.cols, self.nvars, |i, j| {
            (0..self.cols).fold(MultiPoly::zero(self.nvars), |acc, k| {
                acc + self.get(i, k) * other.get(k, j)
            })
        }))
    }

    pub fn scale(&self, p: &MultiPoly) -> PolyMatrix {
        Self::from_fn(self.rows, self.cols, self.nvars, |i, j| self.get(i, j) * p)
    }

    /// Row vector times matrix.
    pub fn left_mul_vector(&self, v: &[MultiPoly]) -> Result<Vec<MultiPoly>> {
        if v.len() != self.rows {
            return Err(GnError::Dimension(format!(
                "vector of length {} against {} rows",
                v.len(),
                self.rows
            )));
        }
        Ok((0..self.cols)
            .map(|j| {
                v.iter()
                    .enumerate()
                    .fold(MultiPoly::zero(self.nvars), |acc, (i, vi)| {
                        acc + vi * self.get(i, j)
                    })
            })
            .collect())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                entries.push(self.get(i, j).clone());
            }
        }
        PolyMatrix {
            rows: rows.len(),
            cols: cols.len(),
            nvars: self.nvars,
            entries,
        }
    }

    /// Evaluates every entry at a rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Vec<Vec<Rational>>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j).evaluate(point))
                    .collect()
            })
            .collect()
    }

    fn grid(&self) -> Vec<Vec<MultiPoly>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Exact determinant by one-step fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<MultiPoly> {
        if !self.is_square() {
            return Err(GnError::Dimension(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let nv = self.nvars;
        if n == 0 {
            return Ok(MultiPoly::one(nv));
        }
        let mut m = self.grid();
        let mut negate = false;
        let mut prev = MultiPoly::one(nv);
        for k in 0..n - 1 {
            // Sparsest nonzero pivot in column k.
            let pivot = (k..n)
                .filter(|&i| !m[i][k].is_zero())
                .min_by_key(|&i| m[i][k].num_terms());
            let Some(p) = pivot else {
                return Ok(MultiPoly::zero(nv));
            };
            if p != k {
                m.swap(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = t.exact_div(&prev).expect("Bareiss division is exact");
                }
                m[i][k] = MultiPoly::zero(nv);
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        Ok(if negate { -det } else { det })
    }

    /// Classical adjoint: `M * adj(M) = det(M) * I`.
    pub fn adjugate(&self) -> Result<PolyMatrix> {
        if !self.is_square() {
            return Err(GnError::Dimension(format!(
                "adjugate of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 1 {
            return Ok(Self::identity(1, self.nvars));
        }
        let mut entries = vec![MultiPoly::zero(self.nvars); n * n];
        let all: Vec<usize> = (0..n).collect();
        for i in 0..n {
            let rows: Vec<usize> = all.iter().copied().filter(|&r| r != i).collect();
            for j in 0..n {
                let cols: Vec<usize> = all.iter().copied().filter(|&c| c != j).collect();
                let minor = self.submatrix(&rows, &cols).determinant()?;
                // adj[j][i] = (-1)^(i+j) M_ij
                entries[j * n + i] = if (i + j) % 2 == 0 { minor } else { -minor };
            }
        }
        Self::new(n, n, entries)
    }

    /// Row `r` of the adjugate alone: `adj[r][i] = (-1)^(i+r) M_ir`.
    pub fn adjugate_row(&self, r: usize) -> Result<Vec<MultiPoly>> {
        if !self.is_square() {
            return Err(GnError::Dimension(format!(
                "adjugate of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if r >= n {
            return Err(GnError::IndexOutOfRange { index: r, nvars: n });
        }
        if n == 1 {
            return Ok(vec![MultiPoly::one(self.nvars)]);
        }
        let cols: Vec<usize> = (0..n).filter(|&c| c != r).collect();
        (0..n)
            .map(|i| {
                let rows: Vec<usize> = (0..n).filter(|&x| x != i).collect();
                let minor = self.submatrix(&rows, &cols).determinant()?;
                Ok(if (i + r).is_multiple_of(2) {
                    minor
                } else {
                    -minor
                })
            })
            .collect()
    }

    /// Rank over the rational function field, by fraction-free elimination
    /// with full pivoting. The pivot count equals the size of the largest
    /// nonvanishing minor.
    pub fn rank(&self) -> usize {
        let nv = self.nvars;
        let mut m = self.grid();
        let (rows, cols) = (self.rows, self.cols);
        let mut prev = MultiPoly::one(nv);
        let mut r = 0;
        while r < rows.min(cols) {
            let mut best: Option<(usize, usize, usize)> = None;
            for (i, row) in m.iter().enumerate().skip(r) {
                for (j, e) in row.iter().enumerate().skip(r) {
                    if !e.is_zero() && best.is_none_or(|(_, _, t)| e.num_terms() < t) {
                        best = Some((i, j, e.num_terms()));
                    }
                }
            }
            let Some((pi, pj, _)) = best else { break };
            m.swap(r, pi);
            if pj != r {
                for row in m.iter_mut() {
                    row.swap(r, pj);
                }
            }
            for i in r + 1..rows {
                for j in r + 1..cols {
                    let t = &(&m[r][r] * &m[i][j]) - &(&m[i][r] * &m[r][j]);
                    m[i][j] = t.exact_div(&prev).expect("Bareiss division is exact");
                }
                m[i][r] = MultiPoly::zero(nv);
            }
            prev = m[r][r].clone();
            r += 1;
        }
        r
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|p| p.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMatrix {}x{}\n{}", self.rows, self.cols, self)
    }
}
