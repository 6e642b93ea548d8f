//! Second cohomology of an algebra: cocycles, coboundaries, the quotient,
//! and cocycle annihilators.
//!
//! A scalar bilinear form `t` on `A` is a cocycle when
//!
//! ```text
//! t(xy, z) - t(x, yz) = t(xz, y) - t(x, zy)
//! t(xy, z) - t(x, yz) = t(yx, z) - t(y, xz)
//! ```
//!
//! hold for all `x, y, z`; both sides are trilinear, so checking basis
//! triples suffices. `Z^2` is computed as the kernel of the resulting
//! `2n^3 x n^2` linear system. A coboundary is `df(x, y) = f(xy)` for a
//! linear functional `f`; the forms `M^k` with `(M^k)_{lm} = c_{lm}^k` span
//! `B^2`. Vector-valued cocycles are handled componentwise as lists of
//! scalar forms, which matches their unique decomposition over a basis of
//! the value space.

use crate::algebra::{intersect_spans, vec_is_zero, Algebra};
use crate::field::{Field, Scalar};
use crate::linalg::{complement_in_span, Matrix, RowSpace};
use std::fmt;

/// A scalar bilinear form, stored as the square matrix of its values on
/// basis pairs: `theta(e_l, e_m)` is entry `(l, m)`.
#[derive(Clone, PartialEq, Eq)]
pub struct BilinearForm {
    matrix: Matrix,
}

impl fmt::Debug for BilinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BilinearForm({})", self.describe())
    }
}

impl BilinearForm {
    pub fn new(matrix: Matrix) -> Self {
        assert_eq!(matrix.rows(), matrix.cols(), "bilinear form must be square");
        BilinearForm { matrix }
    }

    pub fn zero(n: usize, field: Field) -> Self {
        BilinearForm {
            matrix: Matrix::zero(n, n, field),
        }
    }

    /// The elementary form `D_{ij}` with `D_{ij}(e_l, e_m) = [i=l][j=m]`
    /// (1-based indices, following the table conventions).
    pub fn delta(n: usize, field: Field, i: usize, j: usize) -> Self {
        assert!((1..=n).contains(&i) && (1..=n).contains(&j));
        let mut m = Matrix::zero(n, n, field);
        *m.at_mut(i - 1, j - 1) = Scalar::one(field);
        BilinearForm { matrix: m }
    }

    /// Linear combination of deltas: `terms` holds `(i, j, coefficient)`,
    /// 1-based.
    pub fn from_deltas(n: usize, field: Field, terms: &[(usize, usize, Scalar)]) -> Self {
        let mut m = Matrix::zero(n, n, field);
        for (i, j, c) in terms {
            let cur = m.at(i - 1, j - 1).add(c);
            *m.at_mut(i - 1, j - 1) = cur;
        }
        BilinearForm { matrix: m }
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn field(&self) -> Field {
        self.matrix.field()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn value(&self, l: usize, m: usize) -> &Scalar {
        self.matrix.at(l, m)
    }

    /// Evaluation on coordinate vectors: `x^T M y`.
    pub fn apply(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let n = self.n();
        assert_eq!(x.len(), n);
        assert_eq!(y.len(), n);
        let mut acc = Scalar::zero(self.field());
        for l in 0..n {
            if x[l].is_zero() {
                continue;
            }
            for m in 0..n {
                if y[m].is_zero() || self.matrix.at(l, m).is_zero() {
                    continue;
                }
                acc = acc.add(&x[l].mul(&y[m]).mul(self.matrix.at(l, m)));
            }
        }
        acc
    }

    /// Row-major flattening, the coordinate system shared by all `Z^2`/`B^2`
    /// span computations.
    pub fn flatten(&self) -> Vec<Scalar> {
        let n = self.n();
        let mut out = Vec::with_capacity(n * n);
        for l in 0..n {
            for m in 0..n {
                out.push(self.matrix.at(l, m).clone());
            }
        }
        out
    }

    pub fn from_flat(n: usize, field: Field, flat: &[Scalar]) -> Self {
        assert_eq!(flat.len(), n * n);
        BilinearForm {
            matrix: Matrix::new(n, n, flat.to_vec(), field).expect("shape"),
        }
    }

    pub fn add(&self, other: &BilinearForm) -> BilinearForm {
        let n = self.n();
        let mut m = Matrix::zero(n, n, self.field());
        for l in 0..n {
            for c in 0..n {
                *m.at_mut(l, c) = self.matrix.at(l, c).add(other.matrix.at(l, c));
            }
        }
        BilinearForm { matrix: m }
    }

    pub fn scale(&self, c: &Scalar) -> BilinearForm {
        let n = self.n();
        let mut m = Matrix::zero(n, n, self.field());
        for l in 0..n {
            for cc in 0..n {
                *m.at_mut(l, cc) = c.mul(self.matrix.at(l, cc));
            }
        }
        BilinearForm { matrix: m }
    }

    pub fn is_zero(&self) -> bool {
        self.flatten().iter().all(Scalar::is_zero)
    }

    /// Pullback along a linear map: `(phi . theta)(x, y) = theta(phi x, phi y)`,
    /// i.e. `phi^T M phi`.
    pub fn pullback(&self, phi: &Matrix) -> BilinearForm {
        let m = phi
            .transpose()
            .mul(&self.matrix)
            .and_then(|t| t.mul(phi))
            .expect("square shapes");
        BilinearForm { matrix: m }
    }

    /// Render as a sum of `D{i}{j}` terms in row-major order, e.g.
    /// `"D13 + D41"`; `"0"` for the zero form.
    pub fn describe(&self) -> String {
        let n = self.n();
        let mut parts = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let c = self.matrix.at(i, j);
                if c.is_zero() {
                    continue;
                }
                let var = format!("D{}{}", i + 1, j + 1);
                if c.is_one() {
                    parts.push(var);
                } else {
                    parts.push(format!("{c} {var}"));
                }
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Outcome of a cocycle check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CocycleCheck {
    Pass,
    Violation {
        /// 0-based basis triple and which of the two equations failed.
        triple: (usize, usize, usize),
        equation: usize,
        lhs: Scalar,
        rhs: Scalar,
    },
}

impl CocycleCheck {
    pub fn passed(&self) -> bool {
        matches!(self, CocycleCheck::Pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CohomologyError {
    SizeMismatch { expected: usize, found: usize },
    NotACocycle { index: usize },
}

impl fmt::Display for CohomologyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CohomologyError::SizeMismatch { expected, found } => {
                write!(f, "form size {found}, expected {expected}")
            }
            CohomologyError::NotACocycle { index } => {
                write!(f, "form at position {index} is not a cocycle")
            }
        }
    }
}

impl std::error::Error for CohomologyError {}

/// Check the two cocycle equations on all basis triples.
pub fn is_cocycle(a: &Algebra, theta: &BilinearForm) -> Result<CocycleCheck, CohomologyError> {
    let n = a.dim();
    if theta.n() != n {
        return Err(CohomologyError::SizeMismatch {
            expected: n,
            found: theta.n(),
        });
    }
    let e: Vec<Vec<Scalar>> = (0..n).map(|i| a.basis_vec(i)).collect();
    for i in 0..n {
        for j in 0..n {
            let pij = a.basis_product(i, j);
            for k in 0..n {
                let pjk = a.basis_product(j, k);
                // common left side: t(e_i e_j, e_k) - t(e_i, e_j e_k)
                let lhs = theta.apply(&pij, &e[k]).sub(&theta.apply(&e[i], &pjk));
                // equation 1 right side: t(e_i e_k, e_j) - t(e_i, e_k e_j)
                let pik = a.basis_product(i, k);
                let pkj = a.basis_product(k, j);
                let rhs1 = theta.apply(&pik, &e[j]).sub(&theta.apply(&e[i], &pkj));
                if lhs != rhs1 {
                    return Ok(CocycleCheck::Violation {
                        triple: (i, j, k),
                        equation: 1,
                        lhs,
                        rhs: rhs1,
                    });
                }
                // equation 2 right side: t(e_j e_i, e_k) - t(e_j, e_i e_k)
                let pji = a.basis_product(j, i);
                let pik2 = a.basis_product(i, k);
                let rhs2 = theta.apply(&pji, &e[k]).sub(&theta.apply(&e[j], &pik2));
                if lhs != rhs2 {
                    return Ok(CocycleCheck::Violation {
                        triple: (i, j, k),
                        equation: 2,
                        lhs,
                        rhs: rhs2,
                    });
                }
            }
        }
    }
    Ok(CocycleCheck::Pass)
}

/// The linear system whose kernel is `Z^2`, one pair of rows per basis
/// triple, unknowns flattened row-major.
fn cocycle_system(a: &Algebra) -> Matrix {
    let n = a.dim();
    let f = a.field();
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(2 * n * n * n);
    let idx = |l: usize, m: usize| l * n + m;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut row1 = vec![Scalar::zero(f); n * n];
                let mut row2 = vec![Scalar::zero(f); n * n];
                // t(e_i e_j, e_k): + c_{ij}^l at (l, k)
                for l in 0..n {
                    let c = a.c(i, j, l);
                    if !c.is_zero() {
                        row1[idx(l, k)] = row1[idx(l, k)].add(c);
                        row2[idx(l, k)] = row2[idx(l, k)].add(c);
                    }
                }
                // - t(e_i, e_j e_k): - c_{jk}^m at (i, m)
                for m in 0..n {
                    let c = a.c(j, k, m);
                    if !c.is_zero() {
                        row1[idx(i, m)] = row1[idx(i, m)].sub(c);
                        row2[idx(i, m)] = row2[idx(i, m)].sub(c);
                    }
                }
                // equation 1: - t(e_i e_k, e_j) + t(e_i, e_k e_j)
                for l in 0..n {
                    let c = a.c(i, k, l);
                    if !c.is_zero() {
                        row1[idx(l, j)] = row1[idx(l, j)].sub(c);
                    }
                }
                for m in 0..n {
                    let c = a.c(k, j, m);
                    if !c.is_zero() {
                        row1[idx(i, m)] = row1[idx(i, m)].add(c);
                    }
                }
                // equation 2: - t(e_j e_i, e_k) + t(e_j, e_i e_k)
                for l in 0..n {
                    let c = a.c(j, i, l);
                    if !c.is_zero() {
                        row2[idx(l, k)] = row2[idx(l, k)].sub(c);
                    }
                }
                for m in 0..n {
                    let c = a.c(i, k, m);
                    if !c.is_zero() {
                        row2[idx(j, m)] = row2[idx(j, m)].add(c);
                    }
                }
                rows.push(row1);
                rows.push(row2);
            }
        }
    }
    Matrix::from_rows(rows, f).expect("well-formed system")
}

/// Basis of the cocycle space `Z^2(A)`.
pub fn cocycle_space(a: &Algebra) -> Vec<BilinearForm> {
    let n = a.dim();
    cocycle_system(a)
        .kernel_basis()
        .into_iter()
        .map(|flat| BilinearForm::from_flat(n, a.field(), &flat))
        .collect()
}

/// Basis of the coboundary space `B^2(A)`: the independent members of the
/// forms `M^k`, `(M^k)_{lm} = c_{lm}^k`, taken in increasing `k`.
pub fn coboundary_space(a: &Algebra) -> Vec<BilinearForm> {
    let n = a.dim();
    let f = a.field();
    let mut space = RowSpace::new(f, n * n);
    let mut basis = Vec::new();
    for k in 0..n {
        let mut m = Matrix::zero(n, n, f);
        for l in 0..n {
            for mm in 0..n {
                *m.at_mut(l, mm) = a.c(l, mm, k).clone();
            }
        }
        let form = BilinearForm::new(m);
        if space.insert(&form.flatten()) {
            basis.push(form);
        }
    }
    basis
}

/// Coboundary of a linear functional given by its coefficient row `f`:
/// `df(x, y) = f(xy)`.
pub fn coboundary_of(a: &Algebra, f_coeffs: &[Scalar]) -> BilinearForm {
    let n = a.dim();
    assert_eq!(f_coeffs.len(), n);
    let mut m = Matrix::zero(n, n, a.field());
    for l in 0..n {
        for mm in 0..n {
            let mut acc = Scalar::zero(a.field());
            for k in 0..n {
                let c = a.c(l, mm, k);
                if !c.is_zero() && !f_coeffs[k].is_zero() {
                    acc = acc.add(&c.mul(&f_coeffs[k]));
                }
            }
            *m.at_mut(l, mm) = acc;
        }
    }
    BilinearForm::new(m)
}

/// Bases of `Z^2`, `B^2` and chosen `H^2` representatives for one algebra.
///
/// Representative choice is deterministic (pivot complement of `B^2` inside
/// `Z^2`) but is a gauge: compare classes modulo `B^2`, not matrices.
#[derive(Clone, Debug)]
pub struct CohomologyReport {
    pub algebra: String,
    pub z2: Vec<BilinearForm>,
    pub b2: Vec<BilinearForm>,
    pub h2_representatives: Vec<BilinearForm>,
}

impl CohomologyReport {
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.z2.len(), self.b2.len(), self.h2_representatives.len())
    }
}

pub fn cohomology_basis(a: &Algebra) -> CohomologyReport {
    let z2 = cocycle_space(a);
    let b2 = coboundary_space(a);
    let zflat: Vec<Vec<Scalar>> = z2.iter().map(BilinearForm::flatten).collect();
    let bflat: Vec<Vec<Scalar>> = b2.iter().map(BilinearForm::flatten).collect();
    let reps = complement_in_span(&zflat, &bflat)
        .expect("B^2 is contained in Z^2")
        .into_iter()
        .map(|flat| BilinearForm::from_flat(a.dim(), a.field(), &flat))
        .collect();
    CohomologyReport {
        algebra: a.name().unwrap_or("?").to_string(),
        z2,
        b2,
        h2_representatives: reps,
    }
}

/// `Ann(theta) = {x : theta(x, A) = theta(A, x) = 0}`, intersected over the
/// given list of forms. The empty list yields the whole space. Inputs are
/// verified to be cocycles.
pub fn cocycle_annihilator(
    a: &Algebra,
    thetas: &[BilinearForm],
) -> Result<Vec<Vec<Scalar>>, CohomologyError> {
    let n = a.dim();
    let f = a.field();
    for (idx, t) in thetas.iter().enumerate() {
        if !is_cocycle(a, t)?.passed() {
            return Err(CohomologyError::NotACocycle { index: idx });
        }
    }
    annihilator_of_forms(n, f, thetas)
}

/// Joint two-sided kernel of arbitrary forms (no cocycle requirement).
pub(crate) fn annihilator_of_forms(
    n: usize,
    f: Field,
    thetas: &[BilinearForm],
) -> Result<Vec<Vec<Scalar>>, CohomologyError> {
    if thetas.is_empty() {
        return Ok((0..n)
            .map(|i| {
                let mut v = vec![Scalar::zero(f); n];
                v[i] = Scalar::one(f);
                v
            })
            .collect());
    }
    let mut rows = Vec::new();
    for t in thetas {
        if t.n() != n {
            return Err(CohomologyError::SizeMismatch {
                expected: n,
                found: t.n(),
            });
        }
        // theta(x, e_m) = 0 for all m: rows of the transpose
        for m in 0..n {
            rows.push((0..n).map(|l| t.value(l, m).clone()).collect::<Vec<_>>());
        }
        // theta(e_l, x) = 0 for all l: rows of the matrix
        for l in 0..n {
            rows.push((0..n).map(|m| t.value(l, m).clone()).collect::<Vec<_>>());
        }
    }
    Ok(Matrix::from_rows(rows, f).expect("shape").kernel_basis())
}

/// The two admissibility conditions for building a non-split extension from
/// cocycles `theta_1..theta_s`: the joint cocycle annihilator must meet
/// `Ann(A)` trivially, and the classes must be independent in `H^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityVerdict {
    pub ann_intersection_trivial: bool,
    pub classes_independent: bool,
}

impl AdmissibilityVerdict {
    pub fn admissible(&self) -> bool {
        self.ann_intersection_trivial && self.classes_independent
    }
}

pub fn check_extension_admissible(
    a: &Algebra,
    thetas: &[BilinearForm],
) -> Result<AdmissibilityVerdict, CohomologyError> {
    assert!(!thetas.is_empty(), "need at least one cocycle");
    let n = a.dim();
    let f = a.field();
    let cocycle_ann = cocycle_annihilator(a, thetas)?;
    let alg_ann = a.annihilator();
    let meet = intersect_spans(f, n, &cocycle_ann, &alg_ann);
    let ann_intersection_trivial = meet.iter().all(|v| vec_is_zero(v));

    let b2: Vec<Vec<Scalar>> = coboundary_space(a).iter().map(BilinearForm::flatten).collect();
    let mut span = RowSpace::from_vectors(f, n * n, &b2);
    let mut independent = true;
    for t in thetas {
        if !span.insert(&t.flatten()) {
            independent = false;
            break;
        }
    }
    Ok(AdmissibilityVerdict {
        ann_intersection_trivial,
        classes_independent: independent,
    })
}

/// Class equality modulo `B^2`: do `t1` and `t2` differ by a coboundary?
pub fn same_class(a: &Algebra, t1: &BilinearForm, t2: &BilinearForm) -> bool {
    let diff = t1.add(&t2.scale(&Scalar::one(a.field()).neg()));
    let b2: Vec<Vec<Scalar>> = coboundary_space(a).iter().map(BilinearForm::flatten).collect();
    RowSpace::from_vectors(a.field(), a.dim() * a.dim(), &b2).contains(&diff.flatten())
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

    fn a4_01() -> Algebra {
        build(4, &[(1, 1, &[(2, 1)]), (1, 2, &[(4, 1)]), (2, 1, &[(3, 1)])])
    }

    fn delta_sum(n: usize, terms: &[(usize, usize, i64)]) -> BilinearForm {
        let terms: Vec<(usize, usize, Scalar)> = terms
            .iter()
            .map(|&(i, j, c)| (i, j, Scalar::from_int(c, Field::Rational)))
            .collect();
        BilinearForm::from_deltas(n, Field::Rational, &terms)
    }

    #[test]
    fn cocycle_check_on_the_4dim_base() {
        let a = a4_01();
        // D13 + D41 is a cocycle; D13 alone is not.
        let good = delta_sum(4, &[(1, 3, 1), (4, 1, 1)]);
        assert!(is_cocycle(&a, &good).unwrap().passed());
        let bad = delta_sum(4, &[(1, 3, 1)]);
        assert!(!is_cocycle(&a, &bad).unwrap().passed());
        // every form is a cocycle on the zero algebra
        let z = Algebra::zero_algebra(3, Field::Rational);
        let any = delta_sum(3, &[(1, 2, 5), (3, 3, -2)]);
        assert!(is_cocycle(&z, &any).unwrap().passed());
    }

    #[test]
    fn z2_matches_kernel_dimension() {
        let a = a4_01();
        let z2 = cocycle_space(&a);
        assert_eq!(z2.len(), 6);
        for t in &z2 {
            assert!(is_cocycle(&a, t).unwrap().passed());
        }
        // no constraints on the zero algebra
        let z = Algebra::zero_algebra(3, Field::Rational);
        assert_eq!(cocycle_space(&z).len(), 9);
    }

    #[test]
    fn b2_of_the_4dim_base() {
        let a = a4_01();
        let b2 = coboundary_space(&a);
        assert_eq!(b2.len(), 3);
        let expect = [
            delta_sum(4, &[(1, 1, 1)]),
            delta_sum(4, &[(2, 1, 1)]),
            delta_sum(4, &[(1, 2, 1)]),
        ];
        let flat: Vec<Vec<Scalar>> = b2.iter().map(BilinearForm::flatten).collect();
        let span = RowSpace::from_vectors(Field::Rational, 16, &flat);
        for e in &expect {
            assert!(span.contains(&e.flatten()));
        }
        // D13 is not in B^2
        assert!(!span.contains(&delta_sum(4, &[(1, 3, 1)]).flatten()));
        // zero algebra has trivial B^2
        assert!(coboundary_space(&Algebra::zero_algebra(2, Field::Rational)).is_empty());
    }

    #[test]
    fn every_coboundary_is_a_cocycle() {
        let a = a4_01();
        let f = [
            Scalar::from_int(3, Field::Rational),
            Scalar::from_int(-1, Field::Rational),
            Scalar::from_int(2, Field::Rational),
            Scalar::from_int(7, Field::Rational),
        ];
        let df = coboundary_of(&a, &f);
        assert!(is_cocycle(&a, &df).unwrap().passed());
    }

    #[test]
    fn report_dims_and_quotient_structure() {
        let a = a4_01();
        let rep = cohomology_basis(&a);
        assert_eq!(rep.dims(), (6, 3, 3));
        // H2 reps together with B2 are independent and span Z2
        let mut span = RowSpace::new(Field::Rational, 16);
        for t in rep.b2.iter().chain(&rep.h2_representatives) {
            assert!(span.insert(&t.flatten()));
        }
        for t in &rep.z2 {
            assert!(span.contains(&t.flatten()));
        }
    }

    #[test]
    fn cocycle_annihilator_cases() {
        let a = a4_01();
        // D11 pairs only e1 with e1
        let d11 = delta_sum(4, &[(1, 1, 1)]);
        let ann = cocycle_annihilator(&a, &[d11]).unwrap();
        assert_eq!(ann.len(), 3);
        let span = RowSpace::from_vectors(Field::Rational, 4, &ann);
        for i in 1..4 {
            assert!(span.contains(&a.basis_vec(i)));
        }
        // empty list: whole space
        assert_eq!(cocycle_annihilator(&a, &[]).unwrap().len(), 4);
        // non-cocycles are rejected
        let bad = delta_sum(4, &[(1, 3, 1)]);
        assert!(matches!(
            cocycle_annihilator(&a, &[bad]),
            Err(CohomologyError::NotACocycle { index: 0 })
        ));
    }

    #[test]
    fn admissibility_flags_coboundaries() {
        let a = a4_01();
        // a coboundary has dependent (zero) class
        let db = coboundary_space(&a).pop().unwrap();
        let v = check_extension_admissible(&a, &[db]).unwrap();
        assert!(!v.classes_independent);
        assert!(!v.admissible());
        // the two-cocycle family from the tables is admissible
        let t1 = delta_sum(4, &[(2, 2, 1), (3, 1, 2), (4, 1, 1)]);
        let t2 = delta_sum(4, &[(1, 3, 1), (4, 1, 1)]);
        let v = check_extension_admissible(&a, &[t1, t2]).unwrap();
        assert!(v.admissible());
    }

    #[test]
    fn class_comparison_mod_coboundaries() {
        let a = a4_01();
        let t = delta_sum(4, &[(1, 3, 1), (4, 1, 1)]);
        let shifted = t.add(&delta_sum(4, &[(1, 1, 5), (2, 1, -3)]));
        assert!(same_class(&a, &t, &shifted));
        assert!(!same_class(&a, &t, &delta_sum(4, &[(1, 4, 1)])));
    }
}
