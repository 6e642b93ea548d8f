//! Central extensions `A_theta` and the quotient that undoes them.
//!
//! Given cocycles `theta_1..theta_s` on an `m`-dimensional algebra, the
//! extension lives on `A + V` with `V` spanned by `s` new basis vectors
//! placed after the old ones: old products gain `theta_r(e_i, e_j)`
//! components on the new vectors, and every product involving a new vector
//! vanishes. The construction is assosymmetric exactly when every form is a
//! cocycle, and `Ann(A_theta) = (Ann(theta) meet Ann(A)) + V` holds on the
//! nose; both facts are exercised by the validation report and the tests.

use crate::algebra::{intersect_spans, same_span, Algebra, AlgebraError};
use crate::cohomology::{
    annihilator_of_forms, check_extension_admissible, is_cocycle, AdmissibilityVerdict,
    BilinearForm, CohomologyError,
};
use crate::field::Scalar;
use std::fmt;

/// A base algebra together with the cocycles defining a central extension.
#[derive(Clone, Debug)]
pub struct ExtensionSpec {
    pub base: Algebra,
    pub cocycles: Vec<BilinearForm>,
    /// Display names for the new basis vectors; defaults to `e{m+1}..`.
    pub new_vector_names: Vec<String>,
}

impl ExtensionSpec {
    pub fn new(base: Algebra, cocycles: Vec<BilinearForm>) -> Self {
        let m = base.dim();
        let names = (1..=cocycles.len()).map(|r| format!("e{}", m + r)).collect();
        ExtensionSpec {
            base,
            cocycles,
            new_vector_names: names,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtensionError {
    NoCocycles,
    SizeMismatch,
    NotACocycle { index: usize },
    TrivialAnnihilator,
}

impl fmt::Display for ExtensionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtensionError::NoCocycles => write!(f, "an extension needs at least one cocycle"),
            ExtensionError::SizeMismatch => write!(f, "cocycle size does not match the algebra"),
            ExtensionError::NotACocycle { index } => {
                write!(f, "form at position {index} is not a cocycle")
            }
            ExtensionError::TrivialAnnihilator => {
                write!(f, "annihilator is trivial; nothing to quotient by")
            }
        }
    }
}

impl std::error::Error for ExtensionError {}

impl From<CohomologyError> for ExtensionError {
    fn from(e: CohomologyError) -> Self {
        match e {
            CohomologyError::SizeMismatch { .. } => ExtensionError::SizeMismatch,
            CohomologyError::NotACocycle { index } => ExtensionError::NotACocycle { index },
        }
    }
}

/// Build `A_theta`, rejecting forms that fail the cocycle equations.
pub fn central_extension(spec: &ExtensionSpec) -> Result<Algebra, ExtensionError> {
    if spec.cocycles.is_empty() {
        return Err(ExtensionError::NoCocycles);
    }
    for (idx, t) in spec.cocycles.iter().enumerate() {
        if t.n() != spec.base.dim() {
            return Err(ExtensionError::SizeMismatch);
        }
        if !is_cocycle(&spec.base, t)?.passed() {
            return Err(ExtensionError::NotACocycle { index: idx });
        }
    }
    Ok(central_extension_unchecked(&spec.base, &spec.cocycles))
}

/// The same construction without the cocycle gate. Needed to exercise the
/// "extension is assosymmetric iff the form is a cocycle" equivalence.
pub fn central_extension_unchecked(base: &Algebra, forms: &[BilinearForm]) -> Algebra {
    let m = base.dim();
    let s = forms.len();
    let n = m + s;
    let mut out = Algebra::zero_algebra(n, base.field());
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                *out.c_mut(i, j, k) = base.c(i, j, k).clone();
            }
            for (r, t) in forms.iter().enumerate() {
                *out.c_mut(i, j, m + r) = t.value(i, j).clone();
            }
        }
    }
    if let Some(g) = base.generator() {
        out = out.with_generator(g);
    }
    if let Some(name) = base.name() {
        out = out.with_name(format!("{name}+V{s}"));
    }
    out
}

/// Everything `validate_extension` reports about one construction.
#[derive(Clone, Debug)]
pub struct ExtensionReport {
    pub admissibility: AdmissibilityVerdict,
    pub assosymmetric: bool,
    pub nilpotent: bool,
    pub one_generated: bool,
    pub ann_dim: usize,
    /// `Ann(A_theta) = (Ann(theta) meet Ann(A)) + V`, checked as exact
    /// subspace equality.
    pub ann_identity_holds: bool,
    /// Extensions whose annihilator has dimension >= 2 collapse to
    /// extensions of smaller algebras; flagged for the classification
    /// filter.
    pub ann_dim_at_least_two: bool,
    pub extension: Algebra,
}

impl ExtensionReport {
    pub fn all_structural_checks_pass(&self) -> bool {
        self.assosymmetric && self.nilpotent && self.one_generated && self.ann_identity_holds
    }
}

/// Build the extension and run the full battery of checks on it.
pub fn validate_extension(
    spec: &ExtensionSpec,
    witness_attempts: usize,
    seed: u64,
) -> Result<ExtensionReport, ExtensionError> {
    if spec.cocycles.is_empty() {
        return Err(ExtensionError::NoCocycles);
    }
    for t in &spec.cocycles {
        if t.n() != spec.base.dim() {
            return Err(ExtensionError::SizeMismatch);
        }
    }
    let admissibility = check_extension_admissible(&spec.base, &spec.cocycles)?;
    let ext = central_extension_unchecked(&spec.base, &spec.cocycles);
    let assosymmetric = ext.is_assosymmetric();
    let power = ext.power_sequence();
    let one_generated = ext.one_generated_witness(witness_attempts, seed).is_some();
    let ann = ext.annihilator();
    let ann_identity_holds = annihilator_identity_holds(&spec.base, &spec.cocycles, &ext);
    Ok(ExtensionReport {
        admissibility,
        assosymmetric,
        nilpotent: power.nilpotent,
        one_generated,
        ann_dim: ann.len(),
        ann_identity_holds,
        ann_dim_at_least_two: ann.len() >= 2,
        extension: ext,
    })
}

/// Exact subspace equality `Ann(A_theta) = (Ann(theta) meet Ann(A)) + V`.
pub fn annihilator_identity_holds(base: &Algebra, forms: &[BilinearForm], ext: &Algebra) -> bool {
    let m = base.dim();
    let s = forms.len();
    let n = m + s;
    let f = base.field();
    let cocycle_ann = match annihilator_of_forms(m, f, forms) {
        Ok(v) => v,
        Err(_) => return false,
    };
    let meet = intersect_spans(f, m, &cocycle_ann, &base.annihilator());
    // Embed the intersection into the extension and adjoin V.
    let mut expected: Vec<Vec<Scalar>> = meet
        .into_iter()
        .map(|v| {
            let mut w = v;
            w.extend(std::iter::repeat_with(|| Scalar::zero(f)).take(s));
            w
        })
        .collect();
    for r in 0..s {
        let mut w = vec![Scalar::zero(f); n];
        w[m + r] = Scalar::one(f);
        expected.push(w);
    }
    same_span(f, n, &ext.annihilator(), &expected)
}

/// Quotient by the full annihilator: the inverse direction of the extension
/// construction. Errors when the annihilator is trivial.
pub fn recover_quotient(b: &Algebra) -> Result<Algebra, AlgebraError> {
    let ann = b.annihilator();
    if ann.is_empty() {
        return Err(AlgebraError::TrivialAnnihilator);
    }
    b.quotient_by_central_subspace(&ann)
}

/// Literal structure-constant equality of two algebras on the nose (same
/// dimension, same tensor). Isomorphism testing is a separate concern.
pub fn tables_equal(a: &Algebra, b: &Algebra) -> bool {
    if a.dim() != b.dim() || a.field() != b.field() {
        return false;
    }
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            if a.basis_product(i, j) != b.basis_product(i, j) {
                return false;
            }
        }
    }
    true
}

/// Does `v` lie in the span of the last `s` coordinates? Convenience for
/// extension-related assertions.
pub fn supported_on_tail(v: &[Scalar], tail: usize) -> bool {
    let head = v.len() - tail;
    v[..head].iter().all(Scalar::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    type Products<'a> = &'a [(usize, usize, &'a [(usize, i64)])];

    fn build(dim: usize, prods: Products) -> Algebra {
        let mut a = Algebra::zero_algebra(dim, Field::Rational).with_generator(0);
        for &(i, j, terms) in prods {
            for &(k, c) in terms {
                *a.c_mut(i - 1, j - 1, k - 1) = Scalar::from_int(c, Field::Rational);
            }
        }
        a
    }

    /// e1e1=e2, e1e2=e3, e1e3=e4, e2e1=e3, e2e2=e4, e3e1=e4
    /// (the 4-dimensional algebra whose one-dimensional extensions produce
    /// the two 5-dimensional chains).
    fn a4_04_1() -> Algebra {
        build(
            4,
            &[
                (1, 1, &[(2, 1)]),
                (1, 2, &[(3, 1)]),
                (1, 3, &[(4, 1)]),
                (2, 1, &[(3, 1)]),
                (2, 2, &[(4, 1)]),
                (3, 1, &[(4, 1)]),
            ],
        )
    }

    fn delta_sum(n: usize, terms: &[(usize, usize, i64)]) -> BilinearForm {
        let terms: Vec<(usize, usize, Scalar)> = terms
            .iter()
            .map(|&(i, j, c)| (i, j, Scalar::from_int(c, Field::Rational)))
            .collect();
        BilinearForm::from_deltas(n, Field::Rational, &terms)
    }

    #[test]
    fn extension_by_the_symmetric_cocycle_gives_the_5dim_chain() {
        let base = a4_04_1();
        let nabla2 = delta_sum(4, &[(1, 4, 1), (2, 3, 1), (3, 2, 1), (4, 1, 1)]);
        let spec = ExtensionSpec::new(base, vec![nabla2]);
        let ext = central_extension(&spec).unwrap();
        assert_eq!(ext.dim(), 5);
        let expected = build(
            5,
            &[
                (1, 1, &[(2, 1)]),
                (1, 2, &[(3, 1)]),
                (1, 3, &[(4, 1)]),
                (1, 4, &[(5, 1)]),
                (2, 1, &[(3, 1)]),
                (2, 2, &[(4, 1)]),
                (2, 3, &[(5, 1)]),
                (3, 1, &[(4, 1)]),
                (3, 2, &[(5, 1)]),
                (4, 1, &[(5, 1)]),
            ],
        );
        assert!(tables_equal(&ext, &expected));
        assert!(ext.is_assosymmetric());
    }

    #[test]
    fn zero_form_yields_a_split_but_constructible_extension() {
        let base = a4_04_1();
        let zero = BilinearForm::zero(4, Field::Rational);
        let spec = ExtensionSpec::new(base.clone(), vec![zero.clone()]);
        let ext = central_extension(&spec).unwrap();
        assert_eq!(ext.dim(), 5);
        // the new vector is a standalone annihilator component
        assert_eq!(ext.annihilator().len(), base.annihilator().len() + 1);
        // but the construction is inadmissible: the zero class is dependent
        let verdict = check_extension_admissible(&base, &[zero]).unwrap();
        assert!(!verdict.admissible());
    }

    #[test]
    fn non_cocycles_are_rejected_by_the_checked_constructor() {
        let base = a4_04_1();
        let bad = delta_sum(4, &[(1, 4, 1)]);
        assert!(!is_cocycle(&base, &bad).unwrap().passed());
        let spec = ExtensionSpec::new(base, vec![bad]);
        assert!(matches!(
            central_extension(&spec),
            Err(ExtensionError::NotACocycle { index: 0 })
        ));
    }

    #[test]
    fn validate_reports_annihilator_data() {
        let base = a4_04_1();
        let nabla2 = delta_sum(4, &[(1, 4, 1), (2, 3, 1), (3, 2, 1), (4, 1, 1)]);
        let rep = validate_extension(&ExtensionSpec::new(base, vec![nabla2]), 8, 1).unwrap();
        assert!(rep.admissibility.admissible());
        assert!(rep.assosymmetric && rep.nilpotent && rep.one_generated);
        assert_eq!(rep.ann_dim, 1);
        assert!(rep.ann_identity_holds);
        assert!(!rep.ann_dim_at_least_two);
    }

    #[test]
    fn recover_quotient_undoes_the_extension() {
        let base = a4_04_1();
        let nabla2 = delta_sum(4, &[(1, 4, 1), (2, 3, 1), (3, 2, 1), (4, 1, 1)]);
        let ext = central_extension(&ExtensionSpec::new(base.clone(), vec![nabla2])).unwrap();
        let back = recover_quotient(&ext).unwrap();
        assert!(tables_equal(&back, &base));
        // trivial annihilator is an error: take an algebra with Ann = 0
        let mut unit = Algebra::zero_algebra(1, Field::Rational);
        *unit.c_mut(0, 0, 0) = Scalar::one(Field::Rational);
        assert_eq!(
            recover_quotient(&unit).unwrap_err(),
            AlgebraError::TrivialAnnihilator
        );
        // zero algebra collapses to dimension zero
        let z = Algebra::zero_algebra(2, Field::Rational);
        assert_eq!(recover_quotient(&z).unwrap().dim(), 0);
    }

    #[test]
    fn dimension_bookkeeping() {
        let base = a4_04_1();
        let nabla1 = delta_sum(4, &[(2, 1, 1)]);
        let nabla2 = delta_sum(4, &[(1, 4, 1), (2, 3, 1), (3, 2, 1), (4, 1, 1)]);
        let spec = ExtensionSpec::new(base.clone(), vec![nabla2, nabla1]);
        let ext = central_extension(&spec).unwrap();
        assert_eq!(ext.dim(), base.dim() + 2);
        assert!(ext.annihilator().len() >= 2);
    }

    #[test]
    fn table_equality_is_literal() {
        let a = a4_04_1();
        assert!(tables_equal(&a, &a));
        let mut b = a.clone();
        *b.c_mut(0, 0, 1) = Scalar::from_int(2, Field::Rational);
        assert!(!tables_equal(&a, &b));
    }
}
