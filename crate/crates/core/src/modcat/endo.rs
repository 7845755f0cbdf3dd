use std::fmt;

use num_traits::{One, Zero};

use super::fpmodule::FpModule;
use crate::error::{Error, Result};
use crate::polyalg::{Poly, PolyMatrix, QMatrix, Rational, UPoly};

/// A finite-dimensional ℚ-vector space with an endomorphism, the same data
/// as a torsion ℚ[t]-module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoPair {
    endo: QMatrix,
}

impl EndoPair {
    pub fn new(endo: QMatrix) -> Result<Self> {
        if !endo.is_square() {
            return Err(Error::Shape(format!("endomorphism must be square, got {}x{}", endo.rows(), endo.cols())));
        }
        Ok(EndoPair { endo })
    }

    pub fn zero_space() -> Self {
        EndoPair { endo: QMatrix::zeros(0, 0) }
    }

    /// `(ℚ, [a])`.
    pub fn scalar(a: Rational) -> Self {
        EndoPair { endo: QMatrix::from_rows(vec![vec![a]]) }
    }

    pub fn identity(n: usize) -> Self {
        EndoPair { endo: QMatrix::identity(n) }
    }

    /// Jordan block of size `n` with eigenvalue `lambda`; ones on the superdiagonal.
    pub fn jordan(lambda: &Rational, n: usize) -> Self {
        EndoPair {
            endo: QMatrix::from_fn(n, n, |i, j| {
                if i == j {
                    lambda.clone()
                } else if j == i + 1 {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }),
        }
    }

    /// Companion matrix of a monic polynomial, acting on the basis
    /// `1, t, …, t^(d-1)` of ℚ[t]/(f).
    pub fn companion(f: &UPoly) -> Result<Self> {
        let d = f.degree().ok_or(Error::DivisionByZero)?;
        let f = f.monic();
        let c = f.coeffs();
        Ok(EndoPair {
            endo: QMatrix::from_fn(d, d, |i, j| {
                if j + 1 == d {
                    -c[i].clone()
                } else if i == j + 1 {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }),
        })
    }

    pub fn dim(&self) -> usize {
        self.endo.rows()
    }

    pub fn endo(&self) -> &QMatrix {
        &self.endo
    }

    pub fn direct_sum(&self, other: &EndoPair) -> EndoPair {
        EndoPair { endo: self.endo.block_diag(&other.endo) }
    }

    /// The ℚ[var]-module `coker(var·I − T)`.
    pub fn to_module(&self, var: &str) -> FpModule {
        let vars = vec![var.to_string()];
        let t = Poly::var(&vars, var).expect("declared variable");
        let n = self.dim();
        FpModule::from_presentation(PolyMatrix::from_fn(&vars, n, n, |i, j| {
            let c = Poly::constant(&vars, -self.endo[(i, j)].clone());
            if i == j {
                &t + &c
            } else {
                c
            }
        }))
    }

    /// Rational canonical form of a torsion module over one variable.
    pub fn from_torsion_module(m: &FpModule) -> Result<Self> {
        let c = m.canonical_form()?;
        if c.free_rank > 0 {
            return Err(Error::NotTorsion(c.free_rank));
        }
        let mut out = EndoPair::zero_space();
        for f in &c.factors {
            out = out.direct_sum(&EndoPair::companion(f)?);
        }
        Ok(out)
    }

    /// Whether `g: self → other` (a `other.dim × self.dim` matrix) commutes
    /// with the endomorphisms.
    pub fn is_intertwiner(&self, other: &EndoPair, g: &QMatrix) -> bool {
        g.rows() == other.dim() && g.cols() == self.dim() && g.mul(&self.endo) == other.endo.mul(g)
    }
}

/// Coequalizer of `T⊗1` and `1⊗S` on `V⊗W`, with the endomorphism they
/// induce on it.
pub fn tensor_coeq(m: &EndoPair, n: &EndoPair) -> EndoPair {
    let (a, b) = (m.dim(), n.dim());
    let left = m.endo.kron(&QMatrix::identity(b));
    let right = QMatrix::identity(a).kron(&n.endo);
    let q = left.sub(&right).cokernel_projection();
    let s = q.right_inverse().expect("cokernel projection is surjective");
    EndoPair { endo: q.mul(&left).mul(&s) }
}

/// Internal hom `{X : X·T_m = T_n·X}` with post-composition by `T_n`.
/// Coordinates are those of a kernel basis of the linearized equation, with
/// `X` vectorized column by column.
pub fn hom_fp(m: &EndoPair, n: &EndoPair) -> EndoPair {
    let (a, b) = (m.dim(), n.dim());
    let post = QMatrix::identity(a).kron(&n.endo);
    let eq = m.endo.transpose().kron(&QMatrix::identity(b)).sub(&post);
    let k = eq.kernel_matrix();
    let p = k.left_inverse().expect("kernel basis is independent");
    EndoPair { endo: p.mul(&post).mul(&k) }
}

/// Basis of the intertwiner space as `n.dim × m.dim` matrices, matching the
/// coordinates of [`hom_fp`].
pub fn hom_basis(m: &EndoPair, n: &EndoPair) -> Vec<QMatrix> {
    let (a, b) = (m.dim(), n.dim());
    let eq = m.endo.transpose().kron(&QMatrix::identity(b)).sub(&QMatrix::identity(a).kron(&n.endo));
    eq.kernel_basis().into_iter().map(|v| QMatrix::from_fn(b, a, |i, j| v[j * b + i].clone())).collect()
}

/// Colimit of the ℕ-shaped diagram `V → V → …` given by `T`: the ℚ-module
/// `coker(T − I)`.
pub fn ev_one_via_colimit(m: &EndoPair) -> FpModule {
    let d = m.endo.sub(&QMatrix::identity(m.dim()));
    FpModule::from_presentation(PolyMatrix::from_qmatrix(&[], &d))
}

impl fmt::Display for EndoPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dim {} endo {}", self.dim(), self.endo)
    }
}
