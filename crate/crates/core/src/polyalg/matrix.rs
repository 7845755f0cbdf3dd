use std::fmt;

use super::poly::{check_vars, Poly};
use super::qmatrix::QMatrix;
use super::rational::Rational;
use super::upoly::UPoly;
use crate::error::{Error, Result};

/// Dense matrix of polynomials sharing one variable list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    vars: Vec<String>,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(vars: &[String], rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, vars: vars.to_vec(), entries: vec![Poly::zero(vars); rows * cols] }
    }

    pub fn identity(vars: &[String], n: usize) -> Self {
        Self::scalar(vars, n, &Poly::one(vars))
    }

    /// `p · I_n`.
    pub fn scalar(vars: &[String], n: usize, p: &Poly) -> Self {
        let mut m = Self::zeros(vars, n, n);
        for i in 0..n {
            m.set(i, i, p.clone());
        }
        m
    }

    pub fn from_fn(vars: &[String], rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let p = f(i, j);
                debug_assert_eq!(p.vars(), vars);
                entries.push(p);
            }
        }
        PolyMatrix { rows, cols, vars: vars.to_vec(), entries }
    }

    pub fn from_rows(vars: &[String], rows: Vec<Vec<Poly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        for p in rows.iter().flatten() {
            check_vars(p.vars(), vars)?;
        }
        Ok(PolyMatrix { rows: r, cols: c, vars: vars.to_vec(), entries: rows.into_iter().flatten().collect() })
    }

    /// Parses a grid of polynomial strings. `cols` is needed when `rows` is
    /// nonzero but the grid is empty, and is checked otherwise.
    pub fn parse(vars: &[String], rows: usize, cols: usize, grid: &[Vec<String>]) -> Result<Self> {
        if grid.len() != rows {
            return Err(Error::Shape(format!("expected {rows} rows, got {}", grid.len())));
        }
        let mut entries = Vec::with_capacity(rows * cols);
        for (i, row) in grid.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Shape(format!("row {i}: expected {cols} entries, got {}", row.len())));
            }
            for s in row {
                entries.push(Poly::parse(s, vars)?);
            }
        }
        Ok(PolyMatrix { rows, cols, vars: vars.to_vec(), entries })
    }

    pub fn from_qmatrix(vars: &[String], m: &QMatrix) -> Self {
        Self::from_fn(vars, m.rows(), m.cols(), |i, j| Poly::constant(vars, m[(i, j)].clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        debug_assert_eq!(p.vars(), self.vars.as_slice());
        self.entries[i * self.cols + j] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn column(&self, j: usize) -> Vec<Poly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect()).collect()
    }

    pub fn transpose(&self) -> PolyMatrix {
        Self::from_fn(&self.vars, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn try_mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        check_vars(&self.vars, &other.vars)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = PolyMatrix::zeros(&self.vars, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        check_vars(&self.vars, &other.vars)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape("addition of differently shaped matrices".into()));
        }
        Ok(Self::from_fn(&self.vars, self.rows, self.cols, |i, j| self.get(i, j) + other.get(i, j)))
    }

    /// Kronecker product; row index of `A⊗B` is `i·rows(B) + k`.
    pub fn kron(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        check_vars(&self.vars, &other.vars)?;
        Ok(Self::from_fn(&self.vars, self.rows * other.rows, self.cols * other.cols, |r, c| {
            let (i, k) = (r / other.rows, r % other.rows);
            let (j, l) = (c / other.cols, c % other.cols);
            self.get(i, j) * other.get(k, l)
        }))
    }

    pub fn hstack(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        check_vars(&self.vars, &other.vars)?;
        if self.rows != other.rows {
            return Err(Error::Shape("hstack with different row counts".into()));
        }
        Ok(Self::from_fn(&self.vars, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    pub fn block_diag(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        check_vars(&self.vars, &other.vars)?;
        Ok(Self::from_fn(&self.vars, self.rows + other.rows, self.cols + other.cols, |i, j| {
            match (i < self.rows, j < self.cols) {
                (true, true) => self.get(i, j).clone(),
                (false, false) => other.get(i - self.rows, j - self.cols).clone(),
                _ => Poly::zero(&self.vars),
            }
        }))
    }

    /// Keeps the listed columns, in order.
    pub fn select_columns(&self, keep: &[usize]) -> PolyMatrix {
        Self::from_fn(&self.vars, self.rows, keep.len(), |i, j| self.get(i, keep[j]).clone())
    }

    /// Entrywise substitution of the variables by `images` over `target_vars`.
    pub fn substitute(&self, images: &[Poly], target_vars: &[String]) -> Result<PolyMatrix> {
        let entries = self.entries.iter().map(|p| p.substitute(images, target_vars)).collect::<Result<_>>()?;
        Ok(PolyMatrix { rows: self.rows, cols: self.cols, vars: target_vars.to_vec(), entries })
    }

    pub fn embed(&self, new_vars: &[String]) -> Result<PolyMatrix> {
        let entries = self.entries.iter().map(|p| p.embed(new_vars)).collect::<Result<_>>()?;
        Ok(PolyMatrix { rows: self.rows, cols: self.cols, vars: new_vars.to_vec(), entries })
    }

    pub fn relabel(&self, new_vars: &[String]) -> Result<PolyMatrix> {
        let entries = self.entries.iter().map(|p| p.relabel(new_vars)).collect::<Result<_>>()?;
        Ok(PolyMatrix { rows: self.rows, cols: self.cols, vars: new_vars.to_vec(), entries })
    }

    /// The matrix as constants; fails on the first non-constant entry.
    pub fn to_qmatrix(&self) -> Result<QMatrix> {
        let mut out = QMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self.get(i, j).as_constant().ok_or(Error::NonConstantEntry { row: i, col: j })?;
            }
        }
        Ok(out)
    }

    pub(crate) fn to_ugrid(&self) -> Result<Vec<Vec<UPoly>>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).to_upoly()).collect()).collect()
    }

    pub(crate) fn from_ugrid(vars: &[String], rows: usize, cols: usize, grid: &[Vec<UPoly>]) -> PolyMatrix {
        Self::from_fn(vars, rows, cols, |i, j| Poly::from_upoly(&grid[i][j], vars))
    }

    /// Exact determinant over ℚ[t] (or ℚ) by fraction-free Bareiss elimination.
    pub fn det_univariate(&self) -> Result<Poly> {
        if self.rows != self.cols {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        if self.vars.len() > 1 {
            return Err(Error::TooManyVariables(self.vars.clone()));
        }
        let n = self.rows;
        let mut m = self.to_ugrid()?;
        let mut sign = false;
        let mut prev = UPoly::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                    return Ok(Poly::zero(&self.vars));
                };
                m.swap(k, p);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                    m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
                }
                m[i][k] = UPoly::zero();
            }
            prev = m[k][k].clone();
        }
        let det = if n == 0 { UPoly::one() } else { m[n - 1][n - 1].clone() };
        let det = if sign { det.neg() } else { det };
        Ok(Poly::from_upoly(&det, &self.vars))
    }
}

/// Null space basis of a constant matrix given as a [`PolyMatrix`].
pub fn kernel_basis(a: &PolyMatrix) -> Result<Vec<Vec<Rational>>> {
    Ok(a.to_qmatrix()?.kernel_basis())
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "\"{}\"", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::poly::var_list;
    use crate::polyalg::rational::q;

    fn grid(rows: &[&[&str]]) -> Vec<Vec<String>> {
        rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect()
    }

    #[test]
    fn kernel_basis_rejects_polynomials() {
        let v = var_list(&["t"]);
        let a = PolyMatrix::parse(&v, 1, 2, &grid(&[&["t", "1"]])).unwrap();
        assert_eq!(kernel_basis(&a), Err(Error::NonConstantEntry { row: 0, col: 0 }));
        let b = PolyMatrix::parse(&v, 1, 2, &grid(&[&["1", "1"]])).unwrap();
        assert_eq!(kernel_basis(&b).unwrap(), vec![vec![q(-1), q(1)]]);
    }

    #[test]
    fn bareiss_determinant() {
        let v = var_list(&["t"]);
        let a = PolyMatrix::parse(&v, 2, 2, &grid(&[&["t", "1"], &["0", "t"]])).unwrap();
        assert_eq!(a.det_univariate().unwrap().to_string(), "t^2");
        let b = PolyMatrix::parse(&v, 3, 3, &grid(&[&["0", "1", "t"], &["1", "t", "0"], &["t", "0", "1"]])).unwrap();
        // expansion along the first row: 0 - 1·(1 - 0) + t·(0 - t²)
        assert_eq!(b.det_univariate().unwrap().to_string(), "-t^3-1");
    }
}
