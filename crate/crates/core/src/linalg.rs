//! Dense exact linear algebra over `Q` and `Fp`.
//!
//! Everything the cohomology and isomorphism machinery needs reduces to row
//! reduction of small dense matrices (at most a few hundred rows by 36
//! columns), so this module stays deliberately simple: reduced row echelon
//! form with leftmost-pivot / first-row tie-breaking, kernels read off the
//! free columns, and span bookkeeping via [`RowSpace`]. The pivot rule is
//! fixed so that every derived basis (`Z^2`, `H^2` representatives,
//! quotient coordinates) is deterministic across runs.

use crate::field::{Field, Q, Scalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinalgError {
    /// Entries from more than one field in a single matrix or vector.
    MixedFields,
    /// Row/column/length mismatch between operands.
    DimensionMismatch { expected: usize, found: usize },
    /// Data length does not match the declared shape.
    ShapeMismatch,
    /// `complement_in_span` was handed a `sub` outside the span of `big`.
    NotInSpan,
    /// A square matrix required to be invertible was singular.
    Singular,
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::MixedFields => write!(f, "matrix entries come from different fields"),
            LinalgError::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            LinalgError::ShapeMismatch => write!(f, "data length does not match matrix shape"),
            LinalgError::NotInSpan => write!(f, "subspace is not contained in the given span"),
            LinalgError::Singular => write!(f, "matrix is singular"),
        }
    }
}

impl std::error::Error for LinalgError {}

/// A dense row-major matrix over a single field. Zero rows or columns are
/// allowed (the empty matrix); the field tag is carried explicitly so even
/// degenerate shapes know their coefficient field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Scalar>, field: Field) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::ShapeMismatch);
        }
        if data.iter().any(|s| s.field() != field) {
            return Err(LinalgError::MixedFields);
        }
        Ok(Matrix { rows, cols, field, data })
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, field: Field) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::ShapeMismatch);
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect(), field)
    }

    pub fn zero(rows: usize, cols: usize, field: Field) -> Self {
        Matrix {
            rows,
            cols,
            field,
            data: vec![Scalar::zero(field); rows * cols],
        }
    }

    pub fn identity(n: usize, field: Field) -> Self {
        let mut m = Matrix::zero(n, n, field);
        for i in 0..n {
            *m.at_mut(i, i) = Scalar::one(field);
        }
        m
    }

    /// Square matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Scalar>], field: Field) -> Result<Self, LinalgError> {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        if cols.iter().any(|v| v.len() != r) {
            return Err(LinalgError::ShapeMismatch);
        }
        let mut m = Matrix::zero(r, c, field);
        for (j, v) in cols.iter().enumerate() {
            for (i, s) in v.iter().enumerate() {
                if s.field() != field {
                    return Err(LinalgError::MixedFields);
                }
                *m.at_mut(i, j) = s.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.cols, self.rows, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let mut out = vec![Scalar::zero(self.field); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.at(i, j);
                if !e.is_zero() && !v[j].is_zero() {
                    out[i] = out[i].add(&e.mul(&v[j]));
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zero(self.rows, other.cols, self.field);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        let prod = a.mul(b);
                        let cur = out.at(i, j).add(&prod);
                        *out.at_mut(i, j) = cur;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form with the fixed pivot rule: scan columns left
    /// to right, pivot on the first remaining row with a nonzero entry.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..m.cols {
            if pivot_row >= m.rows {
                break;
            }
            let Some(src) = (pivot_row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            if src != pivot_row {
                for j in 0..m.cols {
                    let a = m.at(src, j).clone();
                    let b = m.at(pivot_row, j).clone();
                    *m.at_mut(src, j) = b;
                    *m.at_mut(pivot_row, j) = a;
                }
            }
            let inv = m.at(pivot_row, col).inv().expect("nonzero pivot");
            for j in col..m.cols {
                let v = m.at(pivot_row, j).mul(&inv);
                *m.at_mut(pivot_row, j) = v;
            }
            for r in 0..m.rows {
                if r == pivot_row || m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col).clone();
                for j in col..m.cols {
                    let v = m.at(r, j).sub(&factor.mul(m.at(pivot_row, j)));
                    *m.at_mut(r, j) = v;
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        let rank = pivots.len();
        Rref { matrix: m, pivots, rank }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Inverse via Gauss-Jordan on the augmented matrix.
    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::Singular);
        }
        let n = self.rows;
        let mut aug = Matrix::zero(n, 2 * n, self.field);
        for i in 0..n {
            for j in 0..n {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, n + i) = Scalar::one(self.field);
        }
        let red = aug.rref();
        if red.pivots.len() < n || red.pivots[n - 1] >= n {
            return Err(LinalgError::Singular);
        }
        let mut inv = Matrix::zero(n, n, self.field);
        for i in 0..n {
            for j in 0..n {
                *inv.at_mut(i, j) = red.matrix.at(i, n + j).clone();
            }
        }
        Ok(inv)
    }

    /// Basis of the right kernel `{v : Mv = 0}`, one vector per free column,
    /// in increasing free-column order.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let red = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut map = vec![None; self.cols];
            for (r, &c) in red.pivots.iter().enumerate() {
                map[c] = Some(r);
            }
            map
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut v = vec![Scalar::zero(self.field); self.cols];
            v[free] = Scalar::one(self.field);
            for (r, &c) in red.pivots.iter().enumerate() {
                v[c] = red.matrix.at(r, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Entrywise reduction mod `p`; `None` when `p` divides some denominator.
    pub fn reduce_mod_p(&self, p: u64) -> Option<Matrix> {
        let mut data = Vec::with_capacity(self.data.len());
        for s in &self.data {
            data.push(s.reduce_mod_p(p)?);
        }
        Some(Matrix {
            rows: self.rows,
            cols: self.cols,
            field: Field::Fp(p),
            data,
        })
    }
}

/// Result of a row reduction.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Incrementally maintained row space: rows kept in echelon form, used for
/// span membership, closure computations and deterministic complements.
#[derive(Clone, Debug)]
pub struct RowSpace {
    field: Field,
    width: usize,
    /// Echelon rows, each normalized to leading coefficient 1, sorted by pivot.
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(field: Field, width: usize) -> Self {
        RowSpace {
            field,
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors(field: Field, width: usize, vecs: &[Vec<Scalar>]) -> Self {
        let mut s = RowSpace::new(field, width);
        for v in vecs {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Echelon basis of the span.
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// Residual of `v` after eliminating all span components.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.width, "vector width mismatch");
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let factor = r[p].clone();
                for j in p..self.width {
                    r[j] = r[j].sub(&factor.mul(&row[j]));
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Add `v` to the span. Returns `true` when the span grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let mut r = self.reduce(v);
        let Some(pivot) = r.iter().position(|s| !s.is_zero()) else {
            return false;
        };
        let inv = r[pivot].inv().expect("nonzero pivot");
        for s in r.iter_mut() {
            *s = s.mul(&inv);
        }
        // Back-eliminate so earlier rows stay fully reduced.
        for (row, _) in self.rows.iter_mut().zip(&self.pivots) {
            if !row[pivot].is_zero() {
                let factor = row[pivot].clone();
                for j in 0..self.width {
                    row[j] = row[j].sub(&factor.mul(&r[j]));
                }
            }
        }
        let pos = self.pivots.partition_point(|&p| p < pivot);
        self.pivots.insert(pos, pivot);
        self.rows.insert(pos, r);
        true
    }
}

/// Coordinates of `v` in the given (independent) basis, or `None` when `v`
/// is outside the span. When present, `sum coords[i] * basis[i] == v`.
pub fn subspace_membership(basis: &[Vec<Scalar>], v: &[Scalar]) -> Option<Vec<Scalar>> {
    if basis.is_empty() {
        return if v.iter().all(Scalar::is_zero) {
            Some(Vec::new())
        } else {
            None
        };
    }
    let field = v.first().map_or(basis[0][0].field(), Scalar::field);
    let n = v.len();
    assert!(
        basis.iter().all(|b| b.len() == n),
        "basis vector length mismatch"
    );
    let k = basis.len();
    // Solve [B | v] with B the matrix whose columns are the basis vectors.
    let mut aug = Matrix::zero(n, k + 1, field);
    for (j, b) in basis.iter().enumerate() {
        for i in 0..n {
            *aug.at_mut(i, j) = b[i].clone();
        }
    }
    for i in 0..n {
        *aug.at_mut(i, k) = v[i].clone();
    }
    let red = aug.rref();
    if red.pivots.contains(&k) {
        return None; // inconsistent system
    }
    let mut coords = vec![Scalar::zero(field); k];
    for (r, &c) in red.pivots.iter().enumerate() {
        coords[c] = red.matrix.at(r, k).clone();
    }
    Some(coords)
}

/// Representatives extending `span(sub)` to a basis of `span(big)`, taken
/// from `big` in order (deterministic pivot-complement). Errors when `sub`
/// is not contained in `span(big)`.
pub fn complement_in_span(
    big: &[Vec<Scalar>],
    sub: &[Vec<Scalar>],
) -> Result<Vec<Vec<Scalar>>, LinalgError> {
    if big.is_empty() {
        return if sub.iter().all(|v| v.iter().all(Scalar::is_zero)) {
            Ok(Vec::new())
        } else {
            Err(LinalgError::NotInSpan)
        };
    }
    let field = big[0][0].field();
    let width = big[0].len();
    let big_space = RowSpace::from_vectors(field, width, big);
    for v in sub {
        if !big_space.contains(v) {
            return Err(LinalgError::NotInSpan);
        }
    }
    let mut space = RowSpace::from_vectors(field, width, sub);
    let mut result = Vec::new();
    for v in big {
        if space.insert(v) {
            result.push(v.clone());
        }
    }
    Ok(result)
}

/// Lift a residue to the unique fraction `n/d` with `|n|, d <= bound`,
/// `gcd(d, modulus) = 1` and `n = d * residue (mod modulus)`, when one
/// exists. Callers wanting guaranteed uniqueness should keep
/// `bound^2 < modulus / 2`.
pub fn rational_reconstruction(residue: &BigInt, modulus: &BigInt, bound: &BigInt) -> Option<Q> {
    assert!(modulus > &BigInt::zero());
    assert!(!residue.is_negative() && residue < modulus, "residue out of range");
    assert!(bound > &BigInt::zero());

    let (mut r0, mut r1) = (modulus.clone(), residue.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::from(1));
    while r1.abs() > *bound {
        let qt = &r0 / &r1;
        let r2 = &r0 - &qt * &r1;
        let t2 = &t0 - &qt * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() {
        return None;
    }
    let (mut num, mut den) = (r1, t1);
    if den.is_negative() {
        num = -num;
        den = -den;
    }
    if num.abs() > *bound || den > *bound {
        return None;
    }
    if num.gcd(&den) != BigInt::from(1) {
        return None;
    }
    if !den.gcd(modulus).is_one() {
        return None;
    }
    Some(Q::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{q, qr};

    fn qmat(rows: &[&[i64]]) -> Matrix {
        let data: Vec<Scalar> = rows
            .iter()
            .flat_map(|r| r.iter().map(|&n| Scalar::from_int(n, Field::Rational)))
            .collect();
        Matrix::new(rows.len(), rows[0].len(), data, Field::Rational).unwrap()
    }

    fn qvec(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&n| Scalar::from_int(n, Field::Rational)).collect()
    }

    #[test]
    fn rref_identity_is_fixed() {
        let m = Matrix::identity(3, Field::Rational);
        let red = m.rref();
        assert_eq!(red.matrix, m);
        assert_eq!(red.pivots, vec![0, 1, 2]);
        assert_eq!(red.rank, 3);
    }

    #[test]
    fn rref_zero_matrix() {
        let m = Matrix::zero(2, 4, Field::Rational);
        let red = m.rref();
        assert_eq!(red.matrix, m);
        assert!(red.pivots.is_empty());
        assert_eq!(red.rank, 0);
    }

    #[test]
    fn rref_rank_one() {
        let m = qmat(&[&[1, 2], &[2, 4]]);
        let red = m.rref();
        assert_eq!(red.matrix, qmat(&[&[1, 2], &[0, 0]]));
        assert_eq!(red.rank, 1);
    }

    #[test]
    fn mixed_fields_rejected_at_construction() {
        let data = vec![
            Scalar::from_int(1, Field::Rational),
            Scalar::from_int(1, Field::Fp(5)),
        ];
        assert_eq!(
            Matrix::new(1, 2, data, Field::Rational).unwrap_err(),
            LinalgError::MixedFields
        );
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        assert!(Matrix::identity(4, Field::Rational).kernel_basis().is_empty());
        let z = Matrix::zero(1, 3, Field::Rational);
        let k = z.kernel_basis();
        assert_eq!(k.len(), 3);
    }

    #[test]
    fn kernel_single_relation() {
        let m = qmat(&[&[1, 2]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        // proportional to (-2, 1)
        let v = &k[0];
        let lhs = v[0].mul(&Scalar::from_int(1, Field::Rational));
        let rhs = v[1].mul(&Scalar::from_int(-2, Field::Rational));
        assert_eq!(lhs, rhs);
        assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
    }

    #[test]
    fn membership_coordinates_reconstruct() {
        let basis = vec![qvec(&[1, 0])];
        assert_eq!(
            subspace_membership(&basis, &qvec(&[3, 0])),
            Some(qvec(&[3]))
        );
        assert_eq!(subspace_membership(&basis, &qvec(&[0, 1])), None);
        assert_eq!(subspace_membership(&[], &qvec(&[0, 0])), Some(vec![]));
        assert_eq!(subspace_membership(&[], &qvec(&[1, 0])), None);
    }

    #[test]
    fn complement_basics() {
        let big = vec![qvec(&[1, 0]), qvec(&[0, 1])];
        let sub = vec![qvec(&[1, 0])];
        let c = complement_in_span(&big, &sub).unwrap();
        assert_eq!(c, vec![qvec(&[0, 1])]);
        assert!(complement_in_span(&big, &big).unwrap().is_empty());
        let outside = vec![qvec(&[1, 1]), qvec(&[1, -1])];
        assert_eq!(
            complement_in_span(&sub.clone(), &outside).unwrap_err(),
            LinalgError::NotInSpan
        );
    }

    #[test]
    fn row_space_tracks_dimension() {
        let mut s = RowSpace::new(Field::Rational, 3);
        assert!(s.insert(&qvec(&[1, 1, 0])));
        assert!(s.insert(&qvec(&[0, 1, 1])));
        assert!(!s.insert(&qvec(&[1, 2, 1])));
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&qvec(&[2, 3, 1])));
        assert!(!s.contains(&qvec(&[0, 0, 1])));
    }

    #[test]
    fn inverse_round_trip() {
        let m = qmat(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(2, Field::Rational));
        let sing = qmat(&[&[1, 2], &[2, 4]]);
        assert!(sing.inverse().is_err());
    }

    /// Independent oracle: exhaust all fractions of height <= bound.
    fn reconstruct_by_exhaustion(residue: i64, modulus: i64, bound: i64) -> Option<(i64, i64)> {
        for d in 1..=bound {
            for n in -bound..=bound {
                if num_integer::gcd(n, d) != 1 {
                    continue;
                }
                if num_integer::gcd(d, modulus) != 1 {
                    continue;
                }
                if (n - d * residue).rem_euclid(modulus) == 0 {
                    return Some((n, d));
                }
            }
        }
        None
    }

    #[test]
    fn rational_reconstruction_matches_exhaustive_oracle() {
        let cases = [
            (0i64, 101i64, 5i64),
            (51, 101, 5),  // 1/2 mod 101
            (37, 101, 2),  // no admissible fraction
            (34, 101, 5),  // exercised against the oracle
            (67, 101, 5),
            (26, 103, 5),
        ];
        for (r, m, b) in cases {
            let got = rational_reconstruction(&BigInt::from(r), &BigInt::from(m), &BigInt::from(b));
            let want = reconstruct_by_exhaustion(r, m, b).map(|(n, d)| Q::new(n.into(), d.into()));
            assert_eq!(got, want, "residue {r} mod {m} bound {b}");
        }
        // The frozen headline cases.
        assert_eq!(
            rational_reconstruction(&BigInt::from(0), &BigInt::from(101), &BigInt::from(5)),
            Some(q(0))
        );
        assert_eq!(
            rational_reconstruction(&BigInt::from(51), &BigInt::from(101), &BigInt::from(5)),
            Some(qr(1, 2))
        );
        assert_eq!(
            rational_reconstruction(&BigInt::from(37), &BigInt::from(101), &BigInt::from(2)),
            None
        );
    }

    #[test]
    fn rational_reconstruction_round_trips_under_uniqueness_bound() {
        // For every fraction within the bound, reduce then lift.
        let p = 10007i64;
        let bound = 70i64; // 2 * 70^2 < 10007
        for d in 1..=7i64 {
            for n in -7..=7i64 {
                if num_integer::gcd(n, d) != 1 {
                    continue;
                }
                let dinv = crate::field::fp_inv(d.rem_euclid(p) as u64, p as u64);
                let residue = (n.rem_euclid(p) as u64) * dinv % p as u64;
                let got = rational_reconstruction(
                    &BigInt::from(residue),
                    &BigInt::from(p),
                    &BigInt::from(bound),
                );
                assert_eq!(got, Some(Q::new(n.into(), d.into())), "{n}/{d}");
            }
        }
    }

    #[test]
    fn rank_nullity_and_kernel_annihilation() {
        let m = qmat(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let red = m.rref();
        let k = m.kernel_basis();
        assert_eq!(red.rank + k.len(), m.cols());
        for v in &k {
            assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
        }
        // idempotence
        let again = red.matrix.rref();
        assert_eq!(again.matrix, red.matrix);
    }
}
