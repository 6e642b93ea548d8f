//! Structure-constant algebras and the identities that define the variety.
//!
//! An [`Algebra`] is a finite-dimensional (not necessarily associative)
//! algebra given by its structure tensor: `e_i e_j = sum_k c[i][j][k] e_k`
//! on a fixed basis. This module carries the defining-identity checker,
//! the power filtration and nilpotency verdict, annihilators, generated
//! subalgebras with derivation plans, homomorphism checks, base change,
//! reduction mod p, and central quotients.

use crate::field::{Field, Scalar};
use crate::linalg::{Matrix, RowSpace};
use crate::rng::SplitMix64;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraError {
    ShapeMismatch,
    MixedFields,
    VectorLength { expected: usize, found: usize },
    ZeroVector,
    FieldMismatch,
    BadPrime(u64),
    NotInAnnihilator,
    Singular,
    TrivialAnnihilator,
    NotOneGenerated,
    NotRational,
    RequiresFiniteField,
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::ShapeMismatch => write!(f, "structure tensor length mismatch"),
            AlgebraError::MixedFields => write!(f, "structure constants from different fields"),
            AlgebraError::VectorLength { expected, found } => {
                write!(f, "vector length {found}, expected {expected}")
            }
            AlgebraError::ZeroVector => write!(f, "zero vector not allowed here"),
            AlgebraError::FieldMismatch => write!(f, "operands over different fields"),
            AlgebraError::BadPrime(p) => {
                write!(f, "{p} divides a structure-constant denominator")
            }
            AlgebraError::NotInAnnihilator => {
                write!(f, "subspace is not contained in the annihilator")
            }
            AlgebraError::Singular => write!(f, "base-change matrix is singular"),
            AlgebraError::TrivialAnnihilator => write!(f, "annihilator is trivial"),
            AlgebraError::NotOneGenerated => write!(f, "algebra is not one-generated"),
            AlgebraError::NotRational => write!(f, "operation requires a rational algebra"),
            AlgebraError::RequiresFiniteField => {
                write!(f, "operation requires a finite-field algebra")
            }
        }
    }
}

impl std::error::Error for AlgebraError {}

/// A structure-constant algebra on a fixed basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Algebra {
    dim: usize,
    field: Field,
    /// `tensor[(i * dim + j) * dim + k]` is the `e_k`-coefficient of `e_i e_j`.
    tensor: Vec<Scalar>,
    name: Option<String>,
    /// Index of a declared generator, if any (0-based).
    generator: Option<usize>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Algebra({}, dim {}, over {})",
            self.name.as_deref().unwrap_or("?"),
            self.dim,
            self.field
        )
    }
}

impl Algebra {
    pub fn new(dim: usize, tensor: Vec<Scalar>, field: Field) -> Result<Self, AlgebraError> {
        if tensor.len() != dim * dim * dim {
            return Err(AlgebraError::ShapeMismatch);
        }
        if tensor.iter().any(|s| s.field() != field) {
            return Err(AlgebraError::MixedFields);
        }
        Ok(Algebra {
            dim,
            field,
            tensor,
            name: None,
            generator: None,
        })
    }

    pub fn zero_algebra(dim: usize, field: Field) -> Self {
        Algebra {
            dim,
            field,
            tensor: vec![Scalar::zero(field); dim * dim * dim],
            name: None,
            generator: None,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_generator(mut self, index: usize) -> Self {
        assert!(index < self.dim);
        self.generator = Some(index);
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = Some(name.into());
    }

    pub fn generator(&self) -> Option<usize> {
        self.generator
    }

    /// Structure constant `c_{ij}^k`, all indices 0-based.
    pub fn c(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.tensor[(i * self.dim + j) * self.dim + k]
    }

    pub fn c_mut(&mut self, i: usize, j: usize, k: usize) -> &mut Scalar {
        &mut self.tensor[(i * self.dim + j) * self.dim + k]
    }

    /// The product `e_i e_j` as a coordinate vector.
    pub fn basis_product(&self, i: usize, j: usize) -> Vec<Scalar> {
        let start = (i * self.dim + j) * self.dim;
        self.tensor[start..start + self.dim].to_vec()
    }

    pub fn zero_vec(&self) -> Vec<Scalar> {
        vec![Scalar::zero(self.field); self.dim]
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero_vec();
        v[i] = Scalar::one(self.field);
        v
    }

    fn check_vec(&self, v: &[Scalar]) -> Result<(), AlgebraError> {
        if v.len() != self.dim {
            return Err(AlgebraError::VectorLength {
                expected: self.dim,
                found: v.len(),
            });
        }
        if v.iter().any(|s| s.field() != self.field) {
            return Err(AlgebraError::FieldMismatch);
        }
        Ok(())
    }

    /// Bilinear product of two coordinate vectors.
    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>, AlgebraError> {
        self.check_vec(x)?;
        self.check_vec(y)?;
        Ok(self.mul_unchecked(x, y))
    }

    pub(crate) fn mul_unchecked(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero_vec();
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let coeff = x[i].mul(&y[j]);
                for k in 0..self.dim {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        out[k] = out[k].add(&coeff.mul(c));
                    }
                }
            }
        }
        out
    }

    /// Associator `(x, y, z) = (xy)z - x(yz)`.
    pub fn associator(
        &self,
        x: &[Scalar],
        y: &[Scalar],
        z: &[Scalar],
    ) -> Result<Vec<Scalar>, AlgebraError> {
        self.check_vec(x)?;
        self.check_vec(y)?;
        self.check_vec(z)?;
        let xy_z = self.mul_unchecked(&self.mul_unchecked(x, y), z);
        let x_yz = self.mul_unchecked(x, &self.mul_unchecked(y, z));
        Ok(vec_sub(&xy_z, &x_yz))
    }

    fn basis_associator(&self, i: usize, j: usize, k: usize) -> Vec<Scalar> {
        let xy_z = self.mul_unchecked(&self.basis_product(i, j), &self.basis_vec(k));
        let x_yz = self.mul_unchecked(&self.basis_vec(i), &self.basis_product(j, k));
        vec_sub(&xy_z, &x_yz)
    }

    /// Check the defining identities `(x,y,z) = (x,z,y)` and `(x,y,z) = (y,x,z)`
    /// on all basis triples. Both sides are trilinear, so basis triples suffice.
    pub fn check_assosymmetric(&self) -> AssosymmetryCheck {
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let base = self.basis_associator(i, j, k);
                    let right = self.basis_associator(i, k, j);
                    if base != right {
                        return AssosymmetryCheck::Violation {
                            identity: SymmetryIdentity::LastTwo,
                            triple: (i, j, k),
                            lhs: base,
                            rhs: right,
                        };
                    }
                    let left = self.basis_associator(j, i, k);
                    if base != left {
                        return AssosymmetryCheck::Violation {
                            identity: SymmetryIdentity::FirstTwo,
                            triple: (i, j, k),
                            lhs: base,
                            rhs: left,
                        };
                    }
                }
            }
        }
        AssosymmetryCheck::Pass
    }

    pub fn is_assosymmetric(&self) -> bool {
        matches!(self.check_assosymmetric(), AssosymmetryCheck::Pass)
    }

    /// Power filtration `A^1 = A`, `A^k = sum_{i+j=k} A^i A^j`, computed up to
    /// `k = dim + 1`. The algebra is nilpotent exactly when some term in that
    /// range vanishes.
    pub fn power_sequence(&self) -> PowerSequence {
        let mut layers: Vec<Vec<Vec<Scalar>>> = Vec::new();
        layers.push((0..self.dim).map(|i| self.basis_vec(i)).collect());
        let mut dims = vec![self.dim];
        let mut nilpotent = false;
        let mut index = None;
        for k in 2..=self.dim + 1 {
            let mut space = RowSpace::new(self.field, self.dim);
            let mut basis = Vec::new();
            for i in 1..k {
                let j = k - i;
                for x in &layers[i - 1] {
                    for y in &layers[j - 1] {
                        let p = self.mul_unchecked(x, y);
                        if space.insert(&p) {
                            basis.push(p);
                        }
                    }
                }
            }
            dims.push(space.dim());
            let is_zero = space.dim() == 0;
            layers.push(basis);
            if is_zero {
                nilpotent = true;
                index = Some(k);
                break;
            }
        }
        PowerSequence {
            dims,
            nilpotent,
            nilpotency_index: index,
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.power_sequence().nilpotent
    }

    /// Span of all products, `A . A`.
    pub fn square_space(&self) -> RowSpace {
        let mut s = RowSpace::new(self.field, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                s.insert(&self.basis_product(i, j));
            }
        }
        s
    }

    /// Rows of the combined left- and right-multiplication constraints:
    /// `x` is annihilating iff all rows pair to zero with `x`.
    fn annihilator_rows(&self, left: bool, right: bool) -> Matrix {
        let n = self.dim;
        let mut rows = Vec::new();
        for j in 0..n {
            for k in 0..n {
                if right {
                    // (x e_j)_k = sum_i x_i c_{ij}^k
                    let row: Vec<Scalar> = (0..n).map(|i| self.c(i, j, k).clone()).collect();
                    rows.push(row);
                }
                if left {
                    // (e_j x)_k = sum_i x_i c_{ji}^k
                    let row: Vec<Scalar> = (0..n).map(|i| self.c(j, i, k).clone()).collect();
                    rows.push(row);
                }
            }
        }
        Matrix::from_rows(rows, self.field).expect("well-formed rows")
    }

    /// Basis of `Ann(A) = {x : xA = Ax = 0}`.
    pub fn annihilator(&self) -> Vec<Vec<Scalar>> {
        self.annihilator_rows(true, true).kernel_basis()
    }

    /// Basis of the left annihilator `{x : xA = 0}`.
    pub fn left_annihilator(&self) -> Vec<Vec<Scalar>> {
        self.annihilator_rows(false, true).kernel_basis()
    }

    /// Basis of the right annihilator `{x : Ax = 0}`.
    pub fn right_annihilator(&self) -> Vec<Vec<Scalar>> {
        self.annihilator_rows(true, false).kernel_basis()
    }

    /// Close `span{x}` under the product. Returns the subspace basis and,
    /// when the closure is the whole algebra, a [`GeneratorPlan`] whose
    /// derivation steps rebuild each basis vector as a product word in `x`.
    pub fn generated_subalgebra(
        &self,
        x: &[Scalar],
    ) -> Result<(Vec<Vec<Scalar>>, Option<GeneratorPlan>), AlgebraError> {
        self.check_vec(x)?;
        if x.iter().all(Scalar::is_zero) {
            return Err(AlgebraError::ZeroVector);
        }
        let mut values: Vec<Vec<Scalar>> = vec![x.to_vec()];
        let mut steps: Vec<(usize, usize)> = Vec::new();
        let mut space = RowSpace::new(self.field, self.dim);
        space.insert(x);
        let mut tried = 0usize; // pairs (i, j) with i, j < tried are done
        loop {
            let len = values.len();
            if len == tried {
                break;
            }
            // Extend with products involving at least one new value.
            for i in 0..len {
                for j in 0..len {
                    if i < tried && j < tried {
                        continue;
                    }
                    let p = self.mul_unchecked(&values[i], &values[j]);
                    if space.insert(&p) {
                        values.push(p);
                        steps.push((i, j));
                    }
                }
            }
            tried = len;
        }
        let plan = if space.dim() == self.dim {
            Some(GeneratorPlan {
                generator: x.to_vec(),
                steps,
                basis: values.clone(),
            })
        } else {
            None
        };
        Ok((space.basis().to_vec(), plan))
    }

    /// Search for a one-generation witness: the declared generator first,
    /// then basis vectors, then all 0/1 combinations, then seeded random
    /// vectors. A `None` here is "no witness found", not a proof.
    pub fn one_generated_witness(
        &self,
        random_attempts: usize,
        seed: u64,
    ) -> Option<GeneratorPlan> {
        let try_vec = |v: &[Scalar]| -> Option<GeneratorPlan> {
            if v.iter().all(Scalar::is_zero) {
                return None;
            }
            self.generated_subalgebra(v).ok().and_then(|(_, plan)| plan)
        };
        if let Some(g) = self.generator {
            if let Some(plan) = try_vec(&self.basis_vec(g)) {
                return Some(plan);
            }
        }
        for i in 0..self.dim {
            if Some(i) == self.generator {
                continue;
            }
            if let Some(plan) = try_vec(&self.basis_vec(i)) {
                return Some(plan);
            }
        }
        if self.dim <= 16 {
            for mask in 1u32..(1u32 << self.dim) {
                if mask.count_ones() < 2 {
                    continue; // single basis vectors already tried
                }
                let v: Vec<Scalar> = (0..self.dim)
                    .map(|i| {
                        if mask >> i & 1 == 1 {
                            Scalar::one(self.field)
                        } else {
                            Scalar::zero(self.field)
                        }
                    })
                    .collect();
                if let Some(plan) = try_vec(&v) {
                    return Some(plan);
                }
            }
        }
        let mut rng = SplitMix64::new(seed);
        for _ in 0..random_attempts {
            let v = rng.vector(self.dim, self.field, 3);
            if let Some(plan) = try_vec(&v) {
                return Some(plan);
            }
        }
        None
    }

    /// Exhaustive witness search over a prime field: enumerates every nonzero
    /// vector, so a `None` result is a proof of not-one-generated over `F_p`.
    pub fn one_generated_exhaustive_fp(&self) -> Result<Option<GeneratorPlan>, AlgebraError> {
        let Field::Fp(p) = self.field else {
            return Err(AlgebraError::RequiresFiniteField);
        };
        let total = (p as u128).pow(self.dim as u32);
        for idx in 1..total {
            let mut v = Vec::with_capacity(self.dim);
            let mut rest = idx;
            for _ in 0..self.dim {
                v.push(Scalar::Fp {
                    value: (rest % p as u128) as u64,
                    p,
                });
                rest /= p as u128;
            }
            if let (_, Some(plan)) = self.generated_subalgebra(&v)? {
                return Ok(Some(plan));
            }
        }
        Ok(None)
    }

    /// Does the matrix `m` (columns = images of this algebra's basis) define
    /// an algebra homomorphism into `b`?
    pub fn is_homomorphism(&self, b: &Algebra, m: &Matrix) -> Result<HomCheck, AlgebraError> {
        if m.rows() != b.dim || m.cols() != self.dim {
            return Err(AlgebraError::VectorLength {
                expected: b.dim * self.dim,
                found: m.rows() * m.cols(),
            });
        }
        if self.field != b.field || m.field() != self.field {
            return Err(AlgebraError::FieldMismatch);
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let lhs = m.mul_vec(&self.basis_product(i, j)).expect("shape checked");
                let rhs = b.mul_unchecked(&m.column(i), &m.column(j));
                if lhs != rhs {
                    return Ok(HomCheck::Violation {
                        pair: (i, j),
                        image_of_product: lhs,
                        product_of_images: rhs,
                    });
                }
            }
        }
        Ok(HomCheck::Pass)
    }

    /// Transport the structure along an invertible matrix: the result `B`
    /// satisfies "`m` is an isomorphism from `self` to `B`".
    pub fn base_change(&self, m: &Matrix) -> Result<Algebra, AlgebraError> {
        if m.rows() != self.dim || m.cols() != self.dim || m.field() != self.field {
            return Err(AlgebraError::FieldMismatch);
        }
        let minv = m.inverse().map_err(|_| AlgebraError::Singular)?;
        let mut out = Algebra::zero_algebra(self.dim, self.field);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let prod = self.mul_unchecked(&minv.column(i), &minv.column(j));
                let image = m.mul_vec(&prod).expect("square");
                for k in 0..self.dim {
                    *out.c_mut(i, j, k) = image[k].clone();
                }
            }
        }
        Ok(out)
    }

    /// Entrywise reduction of a rational algebra mod a good prime.
    pub fn reduce_mod_p(&self, p: u64) -> Result<Algebra, AlgebraError> {
        if self.field != Field::Rational {
            return Err(AlgebraError::NotRational);
        }
        let mut tensor = Vec::with_capacity(self.tensor.len());
        for s in &self.tensor {
            tensor.push(s.reduce_mod_p(p).ok_or(AlgebraError::BadPrime(p))?);
        }
        let mut out = Algebra::new(self.dim, tensor, Field::Fp(p))?;
        out.name = self.name.clone();
        out.generator = self.generator;
        Ok(out)
    }

    /// Quotient by a central subspace `U` (must lie inside `Ann(A)`, which
    /// makes the induced product independent of representatives). The new
    /// basis is the classes of the original basis vectors at the non-pivot
    /// coordinates of `U`, in increasing index order.
    pub fn quotient_by_central_subspace(
        &self,
        u: &[Vec<Scalar>],
    ) -> Result<Algebra, AlgebraError> {
        let ann = RowSpace::from_vectors(self.field, self.dim, &self.annihilator());
        for v in u {
            self.check_vec(v)?;
            if !ann.contains(v) {
                return Err(AlgebraError::NotInAnnihilator);
            }
        }
        let uspace = RowSpace::from_vectors(self.field, self.dim, u);
        let kept: Vec<usize> = (0..self.dim)
            .filter(|i| !uspace.pivots().contains(i))
            .collect();
        let qdim = kept.len();
        let mut out = Algebra::zero_algebra(qdim, self.field);
        for (qi, &i) in kept.iter().enumerate() {
            for (qj, &j) in kept.iter().enumerate() {
                let reduced = uspace.reduce(&self.basis_product(i, j));
                for (qk, &k) in kept.iter().enumerate() {
                    *out.c_mut(qi, qj, qk) = reduced[k].clone();
                }
                // Components on pivot coordinates were eliminated by reduce.
            }
        }
        out.generator = self
            .generator
            .and_then(|g| kept.iter().position(|&k| k == g));
        Ok(out)
    }
}

/// Outcome of the defining-identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AssosymmetryCheck {
    Pass,
    Violation {
        identity: SymmetryIdentity,
        /// 0-based basis triple `(i, j, k)` at which it fails.
        triple: (usize, usize, usize),
        lhs: Vec<Scalar>,
        rhs: Vec<Scalar>,
    },
}

impl AssosymmetryCheck {
    pub fn passed(&self) -> bool {
        matches!(self, AssosymmetryCheck::Pass)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetryIdentity {
    /// `(x,y,z) = (x,z,y)`
    LastTwo,
    /// `(x,y,z) = (y,x,z)`
    FirstTwo,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSequence {
    /// `dims[k-1] = dim A^k`, listed until the first zero or `k = dim + 1`.
    pub dims: Vec<usize>,
    pub nilpotent: bool,
    /// First `k` with `A^k = 0`, when nilpotent.
    pub nilpotency_index: Option<usize>,
}

/// Outcome of a homomorphism check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomCheck {
    Pass,
    Violation {
        pair: (usize, usize),
        image_of_product: Vec<Scalar>,
        product_of_images: Vec<Scalar>,
    },
}

impl HomCheck {
    pub fn passed(&self) -> bool {
        matches!(self, HomCheck::Pass)
    }
}

/// A witness that an algebra is generated by a single element, together with
/// a straight-line derivation of a full basis from that element.
///
/// `basis[0]` is the generator; for `t >= 1`, `basis[t]` is the product
/// `basis[i] * basis[j]` where `(i, j) = steps[t-1]` and `i, j < t`. The
/// values are linearly independent and span the algebra, so a homomorphism
/// is pinned down by the image of the generator alone: replay the same
/// steps on the image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorPlan {
    pub generator: Vec<Scalar>,
    pub steps: Vec<(usize, usize)>,
    pub basis: Vec<Vec<Scalar>>,
}

impl GeneratorPlan {
    /// Replay the derivation inside `b`, starting from `img`.
    pub fn evaluate_in(&self, b: &Algebra, img: &[Scalar]) -> Vec<Vec<Scalar>> {
        let mut values: Vec<Vec<Scalar>> = Vec::with_capacity(self.basis.len());
        values.push(img.to_vec());
        for &(i, j) in &self.steps {
            let p = b.mul_unchecked(&values[i], &values[j]);
            values.push(p);
        }
        values
    }

    /// Check the plan against its own algebra: every step must reproduce the
    /// recorded basis vector (used as an internal sanity test).
    pub fn verify_in(&self, a: &Algebra) -> bool {
        let replay = self.evaluate_in(a, &self.generator);
        replay == self.basis
    }
}

pub fn vec_add(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    x.iter().zip(y).map(|(a, b)| a.add(b)).collect()
}

pub fn vec_sub(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    x.iter().zip(y).map(|(a, b)| a.sub(b)).collect()
}

pub fn vec_scale(c: &Scalar, x: &[Scalar]) -> Vec<Scalar> {
    x.iter().map(|a| c.mul(a)).collect()
}

pub fn vec_is_zero(x: &[Scalar]) -> bool {
    x.iter().all(Scalar::is_zero)
}

/// Intersection of two spans, as a basis list.
pub fn intersect_spans(
    field: Field,
    width: usize,
    a: &[Vec<Scalar>],
    b: &[Vec<Scalar>],
) -> Vec<Vec<Scalar>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // Kernel of [A^T | -B^T] stacked column-wise gives coefficient pairs.
    let cols = a.len() + b.len();
    let mut m = Matrix::zero(width, cols, field);
    for (j, v) in a.iter().enumerate() {
        for i in 0..width {
            *m.at_mut(i, j) = v[i].clone();
        }
    }
    for (j, v) in b.iter().enumerate() {
        for i in 0..width {
            *m.at_mut(i, a.len() + j) = v[i].neg();
        }
    }
    let mut out = RowSpace::new(field, width);
    let mut basis = Vec::new();
    for kv in m.kernel_basis() {
        let mut vec = vec![Scalar::zero(field); width];
        for (j, v) in a.iter().enumerate() {
            if !kv[j].is_zero() {
                vec = vec_add(&vec, &vec_scale(&kv[j], v));
            }
        }
        if out.insert(&vec) {
            basis.push(vec);
        }
    }
    basis
}

/// Do two vector lists span the same subspace?
pub fn same_span(field: Field, width: usize, a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> bool {
    let sa = RowSpace::from_vectors(field, width, a);
    let sb = RowSpace::from_vectors(field, width, b);
    sa.dim() == sb.dim() && b.iter().all(|v| sa.contains(v)) && a.iter().all(|v| sb.contains(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Tiny table builder mirroring the catalog's (kept separate so these
    /// tests do not depend on the catalog module).
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

    /// e1e1=e2, e1e2=e4, e2e1=e3 (the 4-dimensional base used all over).
    fn a4_01() -> Algebra {
        build(4, &[(1, 1, &[(2, 1)]), (1, 2, &[(4, 1)]), (2, 1, &[(3, 1)])])
    }

    #[test]
    fn multiply_reads_the_table() {
        let a = a4_01();
        let got = a.multiply(&a.basis_vec(0), &a.basis_vec(1)).unwrap();
        assert_eq!(got, a.basis_vec(3)); // e1 e2 = e4
        let zero = a.multiply(&a.basis_vec(2), &a.basis_vec(3)).unwrap();
        assert!(vec_is_zero(&zero)); // unlisted product is zero
        // bilinear expansion: (e1+e2) e1 = e2 + e3
        let x = vec_add(&a.basis_vec(0), &a.basis_vec(1));
        let got = a.multiply(&x, &a.basis_vec(0)).unwrap();
        assert_eq!(got, vec_add(&a.basis_vec(1), &a.basis_vec(2)));
    }

    #[test]
    fn associator_and_violation_detection() {
        // D: e1e1=e2, e1e2=e3, e2e2=e3 is not assosymmetric.
        let d = build(3, &[(1, 1, &[(2, 1)]), (1, 2, &[(3, 1)]), (2, 2, &[(3, 1)])]);
        let assoc = d
            .associator(&d.basis_vec(0), &d.basis_vec(0), &d.basis_vec(1))
            .unwrap();
        assert_eq!(assoc, d.basis_vec(2)); // (e1,e1,e2) = e3
        match d.check_assosymmetric() {
            AssosymmetryCheck::Violation { triple, lhs, rhs, .. } => {
                assert_eq!(triple, (0, 0, 1));
                assert_eq!(lhs, d.basis_vec(2));
                assert!(vec_is_zero(&rhs));
            }
            AssosymmetryCheck::Pass => panic!("expected violation"),
        }
        // zero algebra passes trivially
        assert!(Algebra::zero_algebra(3, Field::Rational).is_assosymmetric());
        // associator with a zero slot vanishes
        let z = d.zero_vec();
        let got = d.associator(&z, &d.basis_vec(1), &d.basis_vec(2)).unwrap();
        assert!(vec_is_zero(&got));
    }

    #[test]
    fn power_sequence_basics() {
        let z = Algebra::zero_algebra(3, Field::Rational);
        let p = z.power_sequence();
        assert_eq!(p.dims, vec![3, 0]);
        assert!(p.nilpotent);
        assert_eq!(p.nilpotency_index, Some(2));

        let idem = build(1, &[(1, 1, &[(1, 1)])]);
        let p = idem.power_sequence();
        assert!(!p.nilpotent);
        assert_eq!(p.dims, vec![1, 1]);
    }

    #[test]
    fn annihilator_of_the_4dim_base() {
        let a = a4_01();
        let ann = a.annihilator();
        assert_eq!(ann.len(), 2);
        let space = RowSpace::from_vectors(Field::Rational, 4, &ann);
        assert!(space.contains(&a.basis_vec(2)));
        assert!(space.contains(&a.basis_vec(3)));
        // whole space for the zero algebra
        let z = Algebra::zero_algebra(3, Field::Rational);
        assert_eq!(z.annihilator().len(), 3);
    }

    #[test]
    fn generated_subalgebra_and_plans() {
        // e1e1 = e2 in dimension 2: e1 generates, plan derives e2 = e1*e1.
        let a = build(2, &[(1, 1, &[(2, 1)])]);
        let (span, plan) = a.generated_subalgebra(&a.basis_vec(0)).unwrap();
        assert_eq!(span.len(), 2);
        let plan = plan.expect("one-generated");
        assert_eq!(plan.steps, vec![(0, 0)]);
        assert!(plan.verify_in(&a));

        // e2 only generates itself inside the 4-dim base.
        let b = a4_01();
        let (span, plan) = b.generated_subalgebra(&b.basis_vec(1)).unwrap();
        assert_eq!(span.len(), 1);
        assert!(plan.is_none());

        // zero vector is rejected
        assert_eq!(
            b.generated_subalgebra(&b.zero_vec()).unwrap_err(),
            AlgebraError::ZeroVector
        );

        // closure is product-closed
        let (span, _) = b.generated_subalgebra(&b.basis_vec(0)).unwrap();
        let space = RowSpace::from_vectors(Field::Rational, 4, &span);
        for x in &span {
            for y in &span {
                assert!(space.contains(&b.mul_unchecked(x, y)));
            }
        }
    }

    #[test]
    fn one_generated_witness_search() {
        let a = a4_01();
        let plan = a.one_generated_witness(10, 1).expect("e1 generates");
        assert_eq!(plan.generator, a.basis_vec(0));
        let z = Algebra::zero_algebra(2, Field::Rational);
        assert!(z.one_generated_witness(10, 1).is_none());
        // exhaustive proof over F5 for the zero algebra
        let zp = Algebra::zero_algebra(2, Field::Rational).reduce_mod_p(5).unwrap();
        assert!(zp.one_generated_exhaustive_fp().unwrap().is_none());
    }

    #[test]
    fn homomorphism_check_catches_bad_scaling() {
        // A2_01 with e1 -> 2e1, e2 -> 2e2 is not multiplicative.
        let a = build(2, &[(1, 1, &[(2, 1)])]);
        let m = Matrix::from_rows(
            vec![
                vec![Scalar::from_int(2, Field::Rational), Scalar::from_int(0, Field::Rational)],
                vec![Scalar::from_int(0, Field::Rational), Scalar::from_int(2, Field::Rational)],
            ],
            Field::Rational,
        )
        .unwrap();
        match a.is_homomorphism(&a, &m).unwrap() {
            HomCheck::Violation { pair, .. } => assert_eq!(pair, (0, 0)),
            HomCheck::Pass => panic!("expected violation"),
        }
        // identity is always a homomorphism
        let id = Matrix::identity(4, Field::Rational);
        assert!(a4_01().is_homomorphism(&a4_01(), &id).unwrap().passed());
    }

    #[test]
    fn base_change_produces_isomorphic_table() {
        let a = build(2, &[(1, 1, &[(2, 1)])]);
        let mut m = Matrix::identity(2, Field::Rational);
        *m.at_mut(0, 0) = Scalar::from_int(2, Field::Rational);
        let b = a.base_change(&m).unwrap();
        assert!(a.is_homomorphism(&b, &m).unwrap().passed());
        // permuting the zero algebra's basis changes nothing
        let z = Algebra::zero_algebra(3, Field::Rational);
        let mut perm = Matrix::zero(3, 3, Field::Rational);
        *perm.at_mut(0, 1) = Scalar::one(Field::Rational);
        *perm.at_mut(1, 2) = Scalar::one(Field::Rational);
        *perm.at_mut(2, 0) = Scalar::one(Field::Rational);
        assert_eq!(z.base_change(&perm).unwrap(), z);
        // singular matrices are rejected
        let sing = Matrix::zero(2, 2, Field::Rational);
        assert_eq!(a.base_change(&sing).unwrap_err(), AlgebraError::Singular);
    }

    #[test]
    fn reduction_mod_p_commutes_with_multiply() {
        let a = a4_01();
        for p in [5u64, 7, 11, 13] {
            let ap = a.reduce_mod_p(p).unwrap();
            for i in 0..4 {
                for j in 0..4 {
                    let over_q = a.basis_product(i, j);
                    let reduced: Vec<Scalar> =
                        over_q.iter().map(|s| s.reduce_mod_p(p).unwrap()).collect();
                    assert_eq!(ap.basis_product(i, j), reduced);
                }
            }
        }
    }

    #[test]
    fn quotient_by_central_subspace_drops_coordinates() {
        let a = a4_01();
        // span{e3, e4} = Ann(A)
        let u = vec![a.basis_vec(2), a.basis_vec(3)];
        let q2 = a.quotient_by_central_subspace(&u).unwrap();
        assert_eq!(q2.dim(), 2);
        assert_eq!(q2.basis_product(0, 0), q2.basis_vec(1)); // e1e1 = e2 survives
        assert!(vec_is_zero(&q2.basis_product(0, 1))); // e1e2 = e4 dies

        // quotient by nothing is the algebra itself
        let same = a.quotient_by_central_subspace(&[]).unwrap();
        assert_eq!(same.dim(), 4);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(same.basis_product(i, j), a.basis_product(i, j));
            }
        }

        // quotient of the zero algebra by everything is zero-dimensional
        let z = Algebra::zero_algebra(2, Field::Rational);
        let all = z.annihilator();
        assert_eq!(z.quotient_by_central_subspace(&all).unwrap().dim(), 0);

        // not inside the annihilator -> error
        assert_eq!(
            a.quotient_by_central_subspace(&[a.basis_vec(0)]).unwrap_err(),
            AlgebraError::NotInAnnihilator
        );
    }

    #[test]
    fn span_intersection() {
        let f = Field::Rational;
        let e = |i: usize| -> Vec<Scalar> {
            let mut v = vec![Scalar::zero(f); 3];
            v[i] = Scalar::one(f);
            v
        };
        let a = vec![e(0), e(1)];
        let b = vec![e(1), e(2)];
        let meet = intersect_spans(f, 3, &a, &b);
        assert_eq!(meet.len(), 1);
        assert!(RowSpace::from_vectors(f, 3, &meet).contains(&e(1)));
        assert!(intersect_spans(f, 3, &a, &[]).is_empty());
    }
}
