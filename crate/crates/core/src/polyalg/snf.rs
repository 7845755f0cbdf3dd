//! Smith normal form over the Euclidean domains ℚ and ℚ[t].
//!
//! Pivot rule: the lowest-degree nonzero entry of the active submatrix, ties
//! broken by the smallest (row, column). Invariant factors are made monic.

use num_traits::One;

use super::matrix::PolyMatrix;
use super::poly::Poly;
use super::rational::Rational;
use super::upoly::UPoly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub left: PolyMatrix,
    /// Nonzero monic invariant factors, each dividing the next.
    pub diag: Vec<Poly>,
    pub right: PolyMatrix,
    pub rank_deficiency: usize,
}

impl SnfResult {
    /// The diagonal matrix `left · A · right`, zero-padded to the shape of `A`.
    pub fn diagonal_matrix(&self) -> PolyMatrix {
        let vars = self.left.vars();
        let (m, n) = (self.left.rows(), self.right.cols());
        let mut d = PolyMatrix::zeros(vars, m, n);
        for (k, f) in self.diag.iter().enumerate() {
            d.set(k, k, f.clone());
        }
        d
    }
}

type Grid = Vec<Vec<UPoly>>;

struct Work {
    a: Grid,
    left: Option<Grid>,
    right: Option<Grid>,
    m: usize,
    n: usize,
}

fn identity_grid(n: usize) -> Grid {
    (0..n).map(|i| (0..n).map(|j| if i == j { UPoly::one() } else { UPoly::zero() }).collect()).collect()
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(l) = &mut self.left {
            l.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(r) = &mut self.right {
            for row in r.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    /// row_i -= f · row_k
    fn row_axpy(&mut self, i: usize, k: usize, f: &UPoly) {
        fn apply(g: &mut Grid, i: usize, k: usize, f: &UPoly) {
            let src = g[k].clone();
            for (dst, s) in g[i].iter_mut().zip(&src) {
                if !s.is_zero() {
                    *dst = dst.sub_mul(f, s);
                }
            }
        }
        apply(&mut self.a, i, k, f);
        if let Some(l) = &mut self.left {
            apply(l, i, k, f);
        }
    }

    /// col_j -= f · col_k
    fn col_axpy(&mut self, j: usize, k: usize, f: &UPoly) {
        fn apply(g: &mut Grid, j: usize, k: usize, f: &UPoly) {
            for row in g.iter_mut() {
                if !row[k].is_zero() {
                    let v = row[j].sub_mul(f, &row[k]);
                    row[j] = v;
                }
            }
        }
        apply(&mut self.a, j, k, f);
        if let Some(r) = &mut self.right {
            apply(r, j, k, f);
        }
    }

    fn scale_row(&mut self, i: usize, c: &Rational) {
        for x in &mut self.a[i] {
            *x = x.scale(c);
        }
        if let Some(l) = &mut self.left {
            for x in &mut l[i] {
                *x = x.scale(c);
            }
        }
    }

    fn pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in k..self.m {
            for j in k..self.n {
                if let Some(d) = self.a[i][j].degree() {
                    if best.is_none_or(|(bd, _, _)| d < bd) {
                        best = Some((d, i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn run(&mut self) -> usize {
        let mut rank = 0;
        for k in 0..self.m.min(self.n) {
            loop {
                let Some((pi, pj)) = self.pivot(k) else {
                    return rank;
                };
                self.swap_rows(k, pi);
                self.swap_cols(k, pj);
                let pivot = self.a[k][k].clone();
                let mut clean = true;
                for i in k + 1..self.m {
                    if self.a[i][k].is_zero() {
                        continue;
                    }
                    let (q, r) = self.a[i][k].divmod(&pivot).expect("pivot is nonzero");
                    self.row_axpy(i, k, &q);
                    clean &= r.is_zero();
                }
                for j in k + 1..self.n {
                    if self.a[k][j].is_zero() {
                        continue;
                    }
                    let (q, r) = self.a[k][j].divmod(&pivot).expect("pivot is nonzero");
                    self.col_axpy(j, k, &q);
                    clean &= r.is_zero();
                }
                if !clean {
                    continue;
                }
                let offender = (k + 1..self.m).find(|&i| (k + 1..self.n).any(|j| !pivot.divides(&self.a[i][j])));
                if let Some(i) = offender {
                    // row_k += row_i brings a non-multiple into the pivot row
                    self.row_axpy(k, i, &UPoly::constant(-Rational::one()));
                    continue;
                }
                break;
            }
            let inv = self.a[k][k].lc().expect("nonzero pivot").recip();
            self.scale_row(k, &inv);
            rank += 1;
        }
        rank
    }
}

fn check_ring(a: &PolyMatrix) -> Result<()> {
    if a.vars().len() > 1 {
        return Err(Error::TooManyVariables(a.vars().to_vec()));
    }
    Ok(())
}

fn start(a: &PolyMatrix, transforms: bool) -> Result<Work> {
    check_ring(a)?;
    let (m, n) = (a.rows(), a.cols());
    Ok(Work {
        a: a.to_ugrid()?,
        left: transforms.then(|| identity_grid(m)),
        right: transforms.then(|| identity_grid(n)),
        m,
        n,
    })
}

/// Full Smith normal form with unimodular transforms.
pub fn smith_normal_form(a: &PolyMatrix) -> Result<SnfResult> {
    let mut w = start(a, true)?;
    let rank = w.run();
    let vars = a.vars();
    let diag = (0..rank).map(|k| Poly::from_upoly(&w.a[k][k], vars)).collect();
    Ok(SnfResult {
        left: PolyMatrix::from_ugrid(vars, w.m, w.m, w.left.as_ref().unwrap()),
        diag,
        right: PolyMatrix::from_ugrid(vars, w.n, w.n, w.right.as_ref().unwrap()),
        rank_deficiency: w.m.min(w.n) - rank,
    })
}

/// Monic invariant factors only (including unit factors), skipping the
/// bookkeeping of the transforms.
pub fn invariant_factors(a: &PolyMatrix) -> Result<Vec<UPoly>> {
    let mut w = start(a, false)?;
    let rank = w.run();
    Ok((0..rank).map(|k| w.a[k][k].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::poly::var_list;

    fn parse(vars: &[String], rows: &[&[&str]]) -> PolyMatrix {
        let g: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect();
        let cols = g.first().map_or(0, Vec::len);
        PolyMatrix::parse(vars, g.len(), cols, &g).unwrap()
    }

    fn strings(r: &SnfResult) -> Vec<String> {
        r.diag.iter().map(|p| p.to_string()).collect()
    }

    fn assert_valid(a: &PolyMatrix, r: &SnfResult) {
        let recon = r.left.try_mul(a).unwrap().try_mul(&r.right).unwrap();
        assert_eq!(recon, r.diagonal_matrix());
        for m in [&r.left, &r.right] {
            let det = m.det_univariate().unwrap();
            assert!(det.is_constant() && !det.is_zero(), "det = {det}");
        }
    }

    #[test]
    fn jordan_like_block() {
        // Hand reduction: [[t,1],[0,t]] → swap columns → [[1,t],[t,0]]
        // → clear: [[1,0],[0,-t^2]] → monic (1, t^2).
        let v = var_list(&["t"]);
        let a = parse(&v, &[&["t", "1"], &["0", "t"]]);
        let r = smith_normal_form(&a).unwrap();
        assert_eq!(strings(&r), vec!["1", "t^2"]);
        assert_eq!(r.rank_deficiency, 0);
        assert_valid(&a, &r);
    }

    #[test]
    fn identity_and_zero() {
        let v = var_list(&["t"]);
        let id = PolyMatrix::identity(&v, 3);
        assert_eq!(strings(&smith_normal_form(&id).unwrap()), vec!["1", "1", "1"]);
        let z = PolyMatrix::zeros(&v, 2, 3);
        let r = smith_normal_form(&z).unwrap();
        assert!(r.diag.is_empty());
        assert_eq!(r.rank_deficiency, 2);
        assert_valid(&z, &r);
    }

    #[test]
    fn rejects_two_variables() {
        let v = var_list(&["t1", "t2"]);
        let a = parse(&v, &[&["t1", "t2"]]);
        assert!(matches!(smith_normal_form(&a), Err(Error::TooManyVariables(_))));
    }

    #[test]
    fn divisibility_fixup() {
        // diag(t, t+1) has invariant factors (1, t^2 + t)
        let v = var_list(&["t"]);
        let a = parse(&v, &[&["t", "0"], &["0", "t+1"]]);
        let r = smith_normal_form(&a).unwrap();
        assert_eq!(strings(&r), vec!["1", "t^2+t"]);
        assert_valid(&a, &r);
    }

    #[test]
    fn rational_matrix() {
        let a = parse(&[], &[&["2", "4"], &["1", "2"], &["0", "3"]]);
        let r = smith_normal_form(&a).unwrap();
        assert_eq!(strings(&r), vec!["1", "1"]);
        assert_valid(&a, &r);
    }
}
