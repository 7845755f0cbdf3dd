use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::polyalg::{invariant_factors, Poly, PolyMatrix, UPoly};

/// Isomorphism invariant of a finitely presented module over ℚ or ℚ[t]:
/// the free rank and the monic non-unit invariant factors, in divisibility
/// order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    pub free_rank: usize,
    pub factors: Vec<UPoly>,
}

impl CanonicalForm {
    /// ℚ-dimension of the torsion part.
    pub fn torsion_dim(&self) -> usize {
        self.factors.iter().map(|f| f.degree().unwrap_or(0)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.factors.is_empty()
    }

    pub fn factor_strings(&self, var: &str) -> Vec<String> {
        let vars = [var.to_string()];
        self.factors.iter().map(|f| Poly::from_upoly(f, &vars).to_string()).collect()
    }

    pub fn render(&self, var: &str) -> String {
        format!("free rank {}; factors [{}]", self.free_rank, self.factor_strings(var).join(", "))
    }
}

/// A finitely presented module `coker(A)` over ℚ[vars], where the columns
/// of the `g × r` matrix `A` are the relations among `g` generators.
#[derive(Clone, Debug)]
pub struct FpModule {
    presentation: PolyMatrix,
    canonical: OnceLock<CanonicalForm>,
}

impl Eq for FpModule {}

impl PartialEq for FpModule {
    /// Equality of presentations, not isomorphism; see [`iso_test`].
    fn eq(&self, other: &Self) -> bool {
        self.presentation == other.presentation
    }
}

impl FpModule {
    pub fn from_presentation(presentation: PolyMatrix) -> Self {
        FpModule { presentation, canonical: OnceLock::new() }
    }

    pub fn zero(vars: &[String]) -> Self {
        Self::from_presentation(PolyMatrix::zeros(vars, 0, 0))
    }

    pub fn free(vars: &[String], rank: usize) -> Self {
        Self::from_presentation(PolyMatrix::zeros(vars, rank, 0))
    }

    /// The cyclic module ℚ[vars]/(f).
    pub fn cyclic(f: Poly) -> Self {
        let vars = f.vars().to_vec();
        Self::from_presentation(PolyMatrix::from_fn(&vars, 1, 1, |_, _| f.clone()))
    }

    /// Cyclic module over ℚ[vars] with the given relations on one generator.
    pub fn quotient(vars: &[String], relations: &[Poly]) -> Result<Self> {
        for p in relations {
            crate::polyalg::check_vars(p.vars(), vars)?;
        }
        Ok(Self::from_presentation(PolyMatrix::from_fn(vars, 1, relations.len(), |_, j| relations[j].clone())))
    }

    pub fn vars(&self) -> &[String] {
        self.presentation.vars()
    }

    pub fn generators(&self) -> usize {
        self.presentation.rows()
    }

    pub fn relations(&self) -> usize {
        self.presentation.cols()
    }

    pub fn presentation(&self) -> &PolyMatrix {
        &self.presentation
    }

    pub fn direct_sum(&self, other: &FpModule) -> Result<FpModule> {
        Ok(Self::from_presentation(self.presentation.block_diag(&other.presentation)?))
    }

    /// Invariant factors and free rank; defined over ℚ and ℚ[t] only.
    pub fn canonical_form(&self) -> Result<&CanonicalForm> {
        if let Some(c) = self.canonical.get() {
            return Ok(c);
        }
        if self.vars().len() > 1 {
            return Err(Error::TooManyVariables(self.vars().to_vec()));
        }
        let diag = invariant_factors(&self.presentation)?;
        let form = CanonicalForm {
            free_rank: self.generators() - diag.len(),
            factors: diag.into_iter().filter(|f| !f.is_unit()).collect(),
        };
        Ok(self.canonical.get_or_init(|| form))
    }

    /// ℚ-dimension, `None` when the module has positive free rank over ℚ[t].
    pub fn rational_dim(&self) -> Result<Option<usize>> {
        let c = self.canonical_form()?;
        Ok(match (self.vars().len(), c.free_rank) {
            (0, r) => Some(r),
            (_, 0) => Some(c.torsion_dim()),
            _ => None,
        })
    }

    pub fn render_canonical(&self) -> Result<String> {
        let var = self.vars().first().map(String::as_str).unwrap_or("t");
        Ok(self.canonical_form()?.render(var))
    }

    /// Whether the column vector `v` lies in the submodule spanned by the
    /// relations. Over ℚ[t] this uses the Smith form transforms.
    pub fn relation_span_contains(&self, v: &[Poly]) -> Result<bool> {
        if v.len() != self.generators() {
            return Err(Error::Shape("vector length differs from generator count".into()));
        }
        let snf = crate::polyalg::smith_normal_form(&self.presentation)?;
        let col = PolyMatrix::from_rows(self.vars(), v.iter().map(|p| vec![p.clone()]).collect())?;
        let w = snf.left.try_mul(&col)?;
        for i in 0..self.generators() {
            let wi = w.get(i, 0).to_upoly()?;
            let ok = match snf.diag.get(i) {
                Some(d) => d.to_upoly()?.divides(&wi),
                None => wi.is_zero(),
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Isomorphism over ℚ or ℚ[t]: equal free ranks and invariant factors.
pub fn iso_test(m: &FpModule, n: &FpModule) -> Result<bool> {
    if m.vars() != n.vars() {
        return Err(Error::VariableMismatch { left: m.vars().to_vec(), right: n.vars().to_vec() });
    }
    Ok(m.canonical_form()? == n.canonical_form()?)
}

impl fmt::Display for FpModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "coker over Q[{}] on {} generators: {}",
            self.vars().join(","),
            self.generators(),
            self.presentation
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::var_list;

    fn t() -> Vec<String> {
        var_list(&["t"])
    }

    fn cyc(s: &str) -> FpModule {
        FpModule::cyclic(Poly::parse(s, &t()).unwrap())
    }

    #[test]
    fn iso_examples() {
        let m = cyc("t^2");
        assert!(iso_test(&m, &m).unwrap());
        let split = cyc("t").direct_sum(&cyc("t")).unwrap();
        assert!(!iso_test(&m, &split).unwrap());
        let free2 = FpModule::free(&t(), 2);
        assert!(!iso_test(&free2, &m).unwrap());
        assert_eq!(m.rational_dim().unwrap(), Some(2));
        assert_eq!(split.canonical_form().unwrap().factor_strings("t"), vec!["t", "t"]);
    }

    #[test]
    fn iso_rejects_two_variables() {
        let v = var_list(&["t1", "t2"]);
        let m = FpModule::free(&v, 1);
        assert!(matches!(iso_test(&m, &m), Err(Error::TooManyVariables(_))));
    }

    #[test]
    fn units_are_dropped_from_factors() {
        let m = cyc("3");
        assert!(m.canonical_form().unwrap().is_zero());
        assert!(iso_test(&m, &FpModule::zero(&t())).unwrap());
    }

    #[test]
    fn relation_membership() {
        let m = cyc("t^2 - 1");
        let v = |s: &str| vec![Poly::parse(s, &t()).unwrap()];
        assert!(m.relation_span_contains(&v("t^3 - t")).unwrap());
        assert!(!m.relation_span_contains(&v("t - 1")).unwrap());
    }
}
