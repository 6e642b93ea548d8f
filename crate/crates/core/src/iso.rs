//! Isomorphism testing for one-generated algebras.
//!
//! Everything rides on one observation: a homomorphism out of a
//! one-generated algebra is pinned down by the image of the generator.
//! Replaying a [`GeneratorPlan`]'s derivation steps on a candidate image
//! inside the target yields the full candidate matrix, which is then
//! checked for invertibility and multiplicativity. Over `F_p` the `p^n`
//! candidate images can be enumerated exhaustively, so a failed search is a
//! certificate of non-isomorphism over that prime field. Over `Q` the
//! search enumerates small rational images and also lifts finite-field
//! witnesses through CRT and rational reconstruction; either way a returned
//! witness is verified exactly before it leaves this module.
//!
//! Non-isomorphism over extension fields is certified only by
//! [`Fingerprint`] mismatch: every fingerprint component is a rank or
//! kernel dimension of a matrix with entries polynomial in the structure
//! constants, and such dimensions survive base change and field extension.
//! Exhaustive `F_p` failure is reported separately and honestly labeled a
//! heuristic for characteristic zero: an isomorphism defined over an
//! extension of `Q` need not reduce to any `F_p`-point.

use crate::algebra::{Algebra, AlgebraError, GeneratorPlan, HomCheck};
use crate::cohomology::cohomology_basis;
use crate::field::{Field, Q, Scalar};
use crate::linalg::{rational_reconstruction, Matrix};
use num_bigint::BigInt;
use std::fmt;

/// Base-change-invariant separation data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub dim: usize,
    pub power_dims: Vec<usize>,
    pub nilpotent: bool,
    pub ann_dim: usize,
    pub left_ann_dim: usize,
    pub right_ann_dim: usize,
    pub square_dim: usize,
    pub z2_dim: usize,
    pub b2_dim: usize,
    pub h2_dim: usize,
    pub sym_rank: usize,
    pub antisym_rank: usize,
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "dim {}, powers {:?}, ann {}, lann {}, rann {}, A.A {}, Z2/B2/H2 {}/{}/{}, sym {}, antisym {}",
            self.dim,
            self.power_dims,
            self.ann_dim,
            self.left_ann_dim,
            self.right_ann_dim,
            self.square_dim,
            self.z2_dim,
            self.b2_dim,
            self.h2_dim,
            self.sym_rank,
            self.antisym_rank
        )
    }
}

pub fn fingerprint(a: &Algebra) -> Fingerprint {
    let n = a.dim();
    let f = a.field();
    let power = a.power_sequence();
    let coh = cohomology_basis(a);
    let (z2, b2, h2) = coh.dims();
    let mut sym_rows = Vec::with_capacity(n * n);
    let mut anti_rows = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let pij = a.basis_product(i, j);
            let pji = a.basis_product(j, i);
            sym_rows.push(
                pij.iter()
                    .zip(&pji)
                    .map(|(x, y)| x.add(y))
                    .collect::<Vec<_>>(),
            );
            anti_rows.push(
                pij.iter()
                    .zip(&pji)
                    .map(|(x, y)| x.sub(y))
                    .collect::<Vec<_>>(),
            );
        }
    }
    let sym_rank = Matrix::from_rows(sym_rows, f).expect("shape").rank();
    let antisym_rank = Matrix::from_rows(anti_rows, f).expect("shape").rank();
    Fingerprint {
        dim: n,
        power_dims: power.dims.clone(),
        nilpotent: power.nilpotent,
        ann_dim: a.annihilator().len(),
        left_ann_dim: a.left_annihilator().len(),
        right_ann_dim: a.right_annihilator().len(),
        square_dim: a.square_space().dim(),
        z2_dim: z2,
        b2_dim: b2,
        h2_dim: h2,
        sym_rank,
        antisym_rank,
    }
}

/// A change-of-basis matrix certified multiplicative and invertible.
#[derive(Clone, Debug)]
pub struct IsoWitness {
    pub matrix: Matrix,
    pub source: String,
    pub target: String,
}

impl IsoWitness {
    /// Verify and wrap: the matrix columns must be the images of the
    /// source basis, the matrix invertible, and multiplication preserved.
    pub fn certify(a: &Algebra, b: &Algebra, matrix: Matrix) -> Result<Self, IsoFailure> {
        if !matrix.is_invertible() {
            return Err(IsoFailure::NotInvertible);
        }
        match a.is_homomorphism(b, &matrix) {
            Ok(HomCheck::Pass) => Ok(IsoWitness {
                matrix,
                source: a.name().unwrap_or("?").to_string(),
                target: b.name().unwrap_or("?").to_string(),
            }),
            Ok(HomCheck::Violation { pair, .. }) => Err(IsoFailure::NotMultiplicative { pair }),
            Err(e) => Err(IsoFailure::Algebra(e)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoFailure {
    NotInvertible,
    NotMultiplicative { pair: (usize, usize) },
    Algebra(AlgebraError),
}

impl fmt::Display for IsoFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoFailure::NotInvertible => write!(f, "candidate matrix is singular"),
            IsoFailure::NotMultiplicative { pair } => {
                write!(f, "candidate fails multiplicativity at basis pair {pair:?}")
            }
            IsoFailure::Algebra(e) => write!(f, "{e}"),
        }
    }
}

/// Build the unique linear map sending the plan's derived basis to the same
/// derivation evaluated at `img` in `b`, then certify it.
pub fn iso_by_generator_image(
    a: &Algebra,
    plan: &GeneratorPlan,
    b: &Algebra,
    img: &[Scalar],
) -> Result<IsoWitness, IsoFailure> {
    let w = Matrix::from_columns(&plan.basis, a.field()).expect("plan basis shape");
    let w_inv = w.inverse().map_err(|_| IsoFailure::NotInvertible)?;
    candidate_from_image(a, plan, &w_inv, b, img)
        .ok_or(IsoFailure::NotInvertible)
        .and_then(|m| IsoWitness::certify(a, b, m))
}

/// Candidate matrix for one image; `None` when the derived values do not
/// span (so no bijective map exists for this image).
fn candidate_from_image(
    a: &Algebra,
    plan: &GeneratorPlan,
    w_inv: &Matrix,
    b: &Algebra,
    img: &[Scalar],
) -> Option<Matrix> {
    let values = plan.evaluate_in(b, img);
    let u = Matrix::from_columns(&values, a.field()).expect("shape");
    if !u.is_invertible() {
        return None;
    }
    Some(u.mul(w_inv).expect("shape"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoError {
    DimensionMismatch { left: usize, right: usize },
    BadPrime(u64),
    NotOneGenerated,
    RequiresRational,
}

impl fmt::Display for IsoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoError::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            IsoError::BadPrime(p) => write!(f, "{p} divides a structure-constant denominator"),
            IsoError::NotOneGenerated => write!(f, "no one-generation witness found"),
            IsoError::RequiresRational => write!(f, "search requires rational algebras"),
        }
    }
}

impl std::error::Error for IsoError {}

/// Outcome of the exhaustive finite-field search.
#[derive(Clone, Debug)]
pub enum FpIsoOutcome {
    /// A witness matrix over `F_p`, certified before returning.
    Witness(Matrix),
    /// All `p^n - 1` nonzero generator images failed: no isomorphism exists
    /// over `F_p`.
    Exhausted { p: u64, candidates: u128 },
}

impl FpIsoOutcome {
    pub fn witness(&self) -> Option<&Matrix> {
        match self {
            FpIsoOutcome::Witness(m) => Some(m),
            FpIsoOutcome::Exhausted { .. } => None,
        }
    }
}

/// Sparse mod-p view of an algebra, sized for tight enumeration loops.
struct FpTable {
    p: u64,
    dim: usize,
    entries: Vec<(usize, usize, usize, u64)>,
}

impl FpTable {
    fn new(a: &Algebra) -> Self {
        let Field::Fp(p) = a.field() else {
            panic!("FpTable needs a finite-field algebra");
        };
        let n = a.dim();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if let Scalar::Fp { value, .. } = a.c(i, j, k) {
                        if *value != 0 {
                            entries.push((i, j, k, *value));
                        }
                    }
                }
            }
        }
        FpTable { p, dim: n, entries }
    }

    fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.dim];
        for &(i, j, k, c) in &self.entries {
            if x[i] != 0 && y[j] != 0 {
                out[k] = (out[k] + x[i] * y[j] % self.p * c) % self.p;
            }
        }
        out
    }
}

/// Row-reduce in place over `F_p`; returns the rank.
fn fp_rank(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for col in 0..cols {
        if rank >= rows {
            break;
        }
        let Some(src) = (rank..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, src);
        let inv = crate::field::fp_inv(m[rank][col], p);
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..rows {
            if r != rank && m[r][col] != 0 {
                let f = m[r][col];
                for cidx in 0..cols {
                    let sub = f * m[rank][cidx] % p;
                    m[r][cidx] = (m[r][cidx] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn fp_inverse_matrix(m: &[Vec<u64>], p: u64) -> Option<Vec<Vec<u64>>> {
    let n = m.len();
    let mut aug: Vec<Vec<u64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u64::from(j == i)));
            r
        })
        .collect();
    for col in 0..n {
        let src = (col..n).find(|&r| aug[r][col] != 0)?;
        aug.swap(col, src);
        let inv = crate::field::fp_inv(aug[col][col], p);
        for x in aug[col].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..n {
            if r != col && aug[r][col] != 0 {
                let f = aug[r][col];
                for c in 0..2 * n {
                    let sub = f * aug[col][c] % p;
                    aug[r][c] = (aug[r][c] + p - sub) % p;
                }
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Derive (or find) a generator plan for a finite-field algebra.
fn fp_plan(a_p: &Algebra) -> Result<GeneratorPlan, IsoError> {
    if let Some(plan) = a_p.one_generated_witness(0, 1) {
        return Ok(plan);
    }
    match a_p.one_generated_exhaustive_fp() {
        Ok(Some(plan)) => Ok(plan),
        _ => Err(IsoError::NotOneGenerated),
    }
}

struct FpSearch {
    table: FpTable,
    steps: Vec<(usize, usize)>,
    /// `W^{-1}` as rows, where `W` has the plan basis as columns.
    w_inv: Vec<Vec<u64>>,
    /// Target-side products of the source table, reduced mod p:
    /// `products[i][j]` over the source basis.
    src_products: Vec<Vec<Vec<u64>>>,
}

impl FpSearch {
    fn new(a_p: &Algebra, b_p: &Algebra, plan: &GeneratorPlan) -> Result<Self, IsoError> {
        let Field::Fp(p) = a_p.field() else {
            panic!("FpSearch needs finite-field algebras");
        };
        let n = a_p.dim();
        // W columns are the plan basis vectors.
        let mut w = vec![vec![0u64; n]; n];
        for (t, v) in plan.basis.iter().enumerate() {
            for i in 0..n {
                if let Scalar::Fp { value, .. } = &v[i] {
                    w[i][t] = *value;
                }
            }
        }
        let w_inv = fp_inverse_matrix(&w, p).ok_or(IsoError::NotOneGenerated)?;
        let mut src_products = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                src_products[i][j] = a_p
                    .basis_product(i, j)
                    .iter()
                    .map(|s| match s {
                        Scalar::Fp { value, .. } => *value,
                        Scalar::Rational(_) => unreachable!(),
                    })
                    .collect();
            }
        }
        Ok(FpSearch {
            table: FpTable::new(b_p),
            steps: plan.steps.clone(),
            w_inv,
            src_products,
        })
    }

    /// Try one image; `Some(matrix rows)` on success.
    fn try_image(&self, img: &[u64]) -> Option<Vec<Vec<u64>>> {
        let p = self.table.p;
        let n = self.table.dim;
        let mut values: Vec<Vec<u64>> = Vec::with_capacity(n);
        values.push(img.to_vec());
        for &(i, j) in &self.steps {
            let prod = self.table.mul(&values[i], &values[j]);
            values.push(prod);
        }
        // U has the values as columns; M = U W^{-1}.
        let mut u = vec![vec![0u64; n]; n];
        for (t, v) in values.iter().enumerate() {
            for i in 0..n {
                u[i][t] = v[i];
            }
        }
        if fp_rank(u.clone(), p) != n {
            return None;
        }
        let mut m = vec![vec![0u64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u64;
                for k in 0..n {
                    acc = (acc + u[i][k] * self.w_inv[k][j]) % p;
                }
                m[i][j] = acc;
            }
        }
        // multiplicativity with early exit
        for i in 0..n {
            for j in 0..n {
                let lhs = {
                    let mut out = vec![0u64; n];
                    for k in 0..n {
                        let c = self.src_products[i][j][k];
                        if c != 0 {
                            for r in 0..n {
                                out[r] = (out[r] + m[r][k] * c) % p;
                            }
                        }
                    }
                    out
                };
                let col_i: Vec<u64> = (0..n).map(|r| m[r][i]).collect();
                let col_j: Vec<u64> = (0..n).map(|r| m[r][j]).collect();
                let rhs = self.table.mul(&col_i, &col_j);
                if lhs != rhs {
                    return None;
                }
            }
        }
        Some(m)
    }
}

fn fp_matrix_to_matrix(rows: &[Vec<u64>], p: u64) -> Matrix {
    let data: Vec<Scalar> = rows
        .iter()
        .flat_map(|r| r.iter().map(|&v| Scalar::Fp { value: v, p }))
        .collect();
    Matrix::new(rows.len(), rows[0].len(), data, Field::Fp(p)).expect("shape")
}

/// Exhaustive generator-image search over `F_p`. Completeness: any
/// isomorphism maps the generator to one of the `p^n` candidate images, so
/// an exhausted search proves there is none over `F_p`.
///
/// Characteristics 2 and 3 are rejected outright: the variety's defining
/// theory excludes them and half the catalog has denominator 2 anyway.
pub fn iso_search_fp(a: &Algebra, b: &Algebra, p: u64) -> Result<FpIsoOutcome, IsoError> {
    if p < 5 {
        return Err(IsoError::BadPrime(p));
    }
    if a.dim() != b.dim() {
        return Err(IsoError::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let a_p = a.reduce_mod_p(p).map_err(|_| IsoError::BadPrime(p))?;
    let b_p = b.reduce_mod_p(p).map_err(|_| IsoError::BadPrime(p))?;
    let plan = fp_plan(&a_p)?;
    let search = FpSearch::new(&a_p, &b_p, &plan)?;
    let n = a.dim();
    let total = (p as u128).pow(n as u32);
    let mut img = vec![0u64; n];
    for idx in 1..total {
        let mut rest = idx;
        for slot in img.iter_mut() {
            *slot = (rest % p as u128) as u64;
            rest /= p as u128;
        }
        if let Some(rows) = search.try_image(&img) {
            let m = fp_matrix_to_matrix(&rows, p);
            debug_assert!(a_p.is_homomorphism(&b_p, &m).unwrap().passed());
            return Ok(FpIsoOutcome::Witness(m));
        }
    }
    Ok(FpIsoOutcome::Exhausted {
        p,
        candidates: total - 1,
    })
}

/// All witness images over `F_p`, up to `cap` (enumeration order fixed).
fn fp_witness_images(
    a: &Algebra,
    b: &Algebra,
    p: u64,
    cap: usize,
) -> Result<Vec<Vec<u64>>, IsoError> {
    if p < 5 {
        return Err(IsoError::BadPrime(p));
    }
    let a_p = a.reduce_mod_p(p).map_err(|_| IsoError::BadPrime(p))?;
    let b_p = b.reduce_mod_p(p).map_err(|_| IsoError::BadPrime(p))?;
    let plan = fp_plan(&a_p)?;
    let search = FpSearch::new(&a_p, &b_p, &plan)?;
    let n = a.dim();
    let total = (p as u128).pow(n as u32);
    let mut out = Vec::new();
    let mut img = vec![0u64; n];
    for idx in 1..total {
        let mut rest = idx;
        for slot in img.iter_mut() {
            *slot = (rest % p as u128) as u64;
            rest /= p as u128;
        }
        if search.try_image(&img).is_some() {
            out.push(img.clone());
            if out.len() >= cap {
                break;
            }
        }
    }
    Ok(out)
}

/// Tuning knobs for the rational search.
#[derive(Clone, Debug)]
pub struct RationalSearchConfig {
    /// Coordinate height bound for direct enumeration.
    pub height_bound: i64,
    /// Primes used by the lifting strategy.
    pub primes: Vec<u64>,
    /// Cap on directly enumerated images.
    pub max_direct_candidates: usize,
    /// Cap on collected witnesses per prime in the lifting strategy.
    pub max_fp_witnesses: usize,
}

impl Default for RationalSearchConfig {
    fn default() -> Self {
        RationalSearchConfig {
            height_bound: 4,
            primes: vec![5, 7],
            max_direct_candidates: 200_000,
            max_fp_witnesses: 400,
        }
    }
}

/// Nonzero rationals with `max(|numerator|, denominator) <= bound`, ordered
/// by height then denominator then numerator.
pub fn rationals_of_height(bound: i64) -> Vec<Q> {
    let mut out = Vec::new();
    for h in 1..=bound {
        for d in 1..=h {
            for n in -h..=h {
                if n == 0 {
                    continue;
                }
                if n.abs().max(d) != h {
                    continue;
                }
                if num_integer::gcd(n.abs(), d) != 1 {
                    continue;
                }
                out.push(Q::new(n.into(), d.into()));
            }
        }
    }
    out
}

/// Supports ordered smallest-first, generator coordinate favored.
fn supports(n: usize) -> Vec<u32> {
    let mut masks: Vec<u32> = (1u32..(1 << n)).collect();
    masks.sort_by_key(|m| (m.count_ones(), m & 1 == 0, *m));
    masks
}

/// Search for an exact rational witness.
///
/// Strategy one enumerates generator images with small support and bounded
/// coordinate height. Strategy two collects finite-field witnesses for
/// pairs of good primes, lifts coordinatewise through CRT and rational
/// reconstruction, and verifies the lift exactly. `None` means "not found",
/// never "proven absent".
pub fn iso_search_rational(
    a: &Algebra,
    b: &Algebra,
    config: &RationalSearchConfig,
) -> Result<Option<IsoWitness>, IsoError> {
    if a.field() != Field::Rational || b.field() != Field::Rational {
        return Err(IsoError::RequiresRational);
    }
    if a.dim() != b.dim() {
        return Err(IsoError::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let plan = a
        .one_generated_witness(32, 1)
        .ok_or(IsoError::NotOneGenerated)?;
    let w = Matrix::from_columns(&plan.basis, Field::Rational).expect("shape");
    let w_inv = w.inverse().map_err(|_| IsoError::NotOneGenerated)?;
    let n = a.dim();

    // Strategy 1: direct enumeration.
    let values = rationals_of_height(config.height_bound);
    let mut budget = config.max_direct_candidates;
    'support: for mask in supports(n) {
        let coords: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let k = coords.len();
        let mut indices = vec![0usize; k];
        loop {
            if budget == 0 {
                break 'support;
            }
            budget -= 1;
            let mut img = vec![Scalar::zero(Field::Rational); n];
            for (slot, &coord) in indices.iter().zip(&coords) {
                img[coord] = Scalar::Rational(values[*slot].clone());
            }
            if let Some(m) = candidate_from_image(a, &plan, &w_inv, b, &img) {
                if let Ok(w) = IsoWitness::certify(a, b, m) {
                    return Ok(Some(w));
                }
            }
            // odometer over value indices
            let mut pos = 0;
            loop {
                if pos == k {
                    break;
                }
                indices[pos] += 1;
                if indices[pos] < values.len() {
                    break;
                }
                indices[pos] = 0;
                pos += 1;
            }
            if pos == k {
                break;
            }
        }
    }

    // Strategy 2: CRT lifting of finite-field witnesses.
    for (ai, &p) in config.primes.iter().enumerate() {
        for &q in &config.primes[ai + 1..] {
            let Ok(wp) = fp_witness_images(a, b, p, config.max_fp_witnesses) else {
                continue;
            };
            if wp.is_empty() {
                continue;
            }
            let Ok(wq) = fp_witness_images(a, b, q, config.max_fp_witnesses) else {
                continue;
            };
            let modulus = BigInt::from(p * q);
            let bound = BigInt::from(integer_sqrt(p * q / 2));
            let (cp, cq) = crt_coefficients(p, q);
            for img_p in &wp {
                for img_q in &wq {
                    let mut img = Vec::with_capacity(n);
                    let mut ok = true;
                    for i in 0..n {
                        let residue =
                            BigInt::from((img_p[i] * cp + img_q[i] * cq) % (p * q));
                        match rational_reconstruction(&residue, &modulus, &bound) {
                            Some(v) => img.push(Scalar::Rational(v)),
                            None => {
                                ok = false;
                                break;
                            }
                        }
                    }
                    if !ok {
                        continue;
                    }
                    if let Some(m) = candidate_from_image(a, &plan, &w_inv, b, &img) {
                        if let Ok(w) = IsoWitness::certify(a, b, m) {
                            return Ok(Some(w));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

fn integer_sqrt(x: u64) -> u64 {
    let mut r = (x as f64).sqrt() as u64;
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    while r * r > x {
        r -= 1;
    }
    r.max(1)
}

/// Coefficients `(cp, cq)` with `cp = 1 mod p, 0 mod q` and vice versa.
fn crt_coefficients(p: u64, q: u64) -> (u64, u64) {
    let qp = crate::field::fp_inv(q % p, p); // q^{-1} mod p
    let pq = crate::field::fp_inv(p % q, q); // p^{-1} mod q
    (q * qp, p * pq)
}

/// A non-isomorphism certificate, or the reasons one could not be produced.
#[derive(Clone, Debug)]
pub enum NonIsoOutcome {
    /// Different dimensions: trivially non-isomorphic.
    DimensionMismatch { left: usize, right: usize },
    /// The only certificate valid over every field extension.
    FingerprintMismatch {
        left: Box<Fingerprint>,
        right: Box<Fingerprint>,
    },
    /// Exhaustive generator-image failure over each listed good prime.
    /// Valid against rational isomorphisms with denominators coprime to
    /// these primes; heuristic evidence only over the complex field.
    FpExhaustion { primes: Vec<u64> },
    /// No certificate: a finite-field witness exists (or no good prime was
    /// usable), so the pair may well be isomorphic.
    NotCertified { detail: String },
}

impl NonIsoOutcome {
    pub fn separated(&self) -> bool {
        !matches!(self, NonIsoOutcome::NotCertified { .. })
    }
}

pub fn certify_noniso(a: &Algebra, b: &Algebra, primes: &[u64]) -> NonIsoOutcome {
    if a.dim() != b.dim() {
        return NonIsoOutcome::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        };
    }
    let fa = fingerprint(a);
    let fb = fingerprint(b);
    if fa != fb {
        return NonIsoOutcome::FingerprintMismatch {
            left: Box::new(fa),
            right: Box::new(fb),
        };
    }
    let mut exhausted = Vec::new();
    for &p in primes {
        match iso_search_fp(a, b, p) {
            Ok(FpIsoOutcome::Exhausted { .. }) => exhausted.push(p),
            Ok(FpIsoOutcome::Witness(_)) => {
                return NonIsoOutcome::NotCertified {
                    detail: format!("isomorphic over F{p}"),
                }
            }
            Err(e) => {
                return NonIsoOutcome::NotCertified {
                    detail: format!("search over F{p} unavailable: {e}"),
                }
            }
        }
    }
    if exhausted.is_empty() {
        NonIsoOutcome::NotCertified {
            detail: "no usable prime".into(),
        }
    } else {
        NonIsoOutcome::FpExhaustion { primes: exhausted }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::q;

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

    fn a2_01() -> Algebra {
        build(2, &[(1, 1, &[(2, 1)])]).with_name("A2_01")
    }

    #[test]
    fn generator_image_scaling_witness() {
        let a = a2_01();
        let plan = a.one_generated_witness(0, 1).unwrap();
        let img = vec![
            Scalar::Rational(q(2)),
            Scalar::Rational(q(0)),
        ];
        let w = iso_by_generator_image(&a, &plan, &a, &img).unwrap();
        // e1 -> 2e1 forces e2 -> 4e2
        assert_eq!(w.matrix.at(0, 0), &Scalar::Rational(q(2)));
        assert_eq!(w.matrix.at(1, 1), &Scalar::Rational(q(4)));
        // identity image gives the identity witness
        let id = iso_by_generator_image(&a, &plan, &a, &a.basis_vec(0)).unwrap();
        assert_eq!(id.matrix, Matrix::identity(2, Field::Rational));
    }

    #[test]
    fn fingerprint_of_zero_algebra() {
        let z = Algebra::zero_algebra(3, Field::Rational);
        let f = fingerprint(&z);
        assert_eq!(f.ann_dim, 3);
        assert_eq!(f.sym_rank, 0);
        assert_eq!(f.antisym_rank, 0);
        assert_eq!(f.z2_dim, 9);
    }

    #[test]
    fn fp_search_finds_self_isomorphism_immediately() {
        let a = a2_01();
        match iso_search_fp(&a, &a, 5).unwrap() {
            FpIsoOutcome::Witness(m) => {
                assert_eq!(m, Matrix::identity(2, Field::Fp(5)));
            }
            FpIsoOutcome::Exhausted { .. } => panic!("expected witness"),
        }
    }

    #[test]
    fn fp_search_exhausts_for_distinct_tables() {
        // e1e1=e2 in dim 2 versus the zero algebra... the zero algebra is
        // not one-generated, so compare two genuinely different
        // one-generated tables instead: x^2=y vs x^2=y with an extra
        // nilpotent layer mismatch is impossible in dim 2, so use dim 3.
        let a = build(3, &[(1, 1, &[(2, 1)]), (1, 2, &[(3, 1)])]);
        let b = build(3, &[(1, 1, &[(2, 1)]), (2, 1, &[(3, 1)])]);
        // these have different tables; whether isomorphic over F5 is decided
        // by the search itself, and the verdict must be stable
        let out_ab = iso_search_fp(&a, &b, 5).unwrap();
        let out_ba = iso_search_fp(&b, &a, 5).unwrap();
        assert_eq!(out_ab.witness().is_some(), out_ba.witness().is_some());
    }

    #[test]
    fn planted_base_change_is_always_found_over_fp() {
        let a = build(3, &[(1, 1, &[(2, 1)]), (1, 2, &[(3, 1)])]).with_name("chain3");
        // plant an invertible rational change of basis
        let mut m = Matrix::identity(3, Field::Rational);
        *m.at_mut(0, 0) = Scalar::Rational(q(2));
        *m.at_mut(1, 0) = Scalar::Rational(q(1));
        *m.at_mut(2, 1) = Scalar::Rational(q(-3));
        let b = a.base_change(&m).unwrap();
        match iso_search_fp(&a, &b, 5).unwrap() {
            FpIsoOutcome::Witness(w) => {
                let a5 = a.reduce_mod_p(5).unwrap();
                let b5 = b.reduce_mod_p(5).unwrap();
                assert!(a5.is_homomorphism(&b5, &w).unwrap().passed());
            }
            FpIsoOutcome::Exhausted { .. } => panic!("planted witness must be found"),
        }
    }

    #[test]
    fn rational_search_finds_identity_and_planted_witnesses() {
        let a = a2_01();
        let cfg = RationalSearchConfig::default();
        let w = iso_search_rational(&a, &a, &cfg).unwrap().expect("self iso");
        assert!(w.matrix.is_invertible());

        let big = build(4, &[(1, 1, &[(2, 1)]), (1, 2, &[(3, 1)]), (2, 1, &[(4, 1)])]);
        let mut m = Matrix::identity(4, Field::Rational);
        *m.at_mut(0, 0) = Scalar::Rational(crate::field::qr(1, 2));
        *m.at_mut(1, 0) = Scalar::Rational(q(1));
        let planted = big.base_change(&m).unwrap();
        let w = iso_search_rational(&big, &planted, &cfg)
            .unwrap()
            .expect("planted witness");
        assert!(big.is_homomorphism(&planted, &w.matrix).unwrap().passed());
    }

    #[test]
    fn witness_certification_rejects_corruption() {
        let a = a2_01();
        let plan = a.one_generated_witness(0, 1).unwrap();
        let img = vec![Scalar::Rational(q(3)), Scalar::Rational(q(1))];
        let w = iso_by_generator_image(&a, &plan, &a, &img).unwrap();
        let mut corrupted = w.matrix.clone();
        *corrupted.at_mut(1, 1) = corrupted.at(1, 1).add(&Scalar::Rational(q(1)));
        assert!(IsoWitness::certify(&a, &a, corrupted).is_err());
        let singular = Matrix::zero(2, 2, Field::Rational);
        assert!(matches!(
            IsoWitness::certify(&a, &a, singular),
            Err(IsoFailure::NotInvertible)
        ));
    }

    #[test]
    fn fingerprints_are_base_change_invariant() {
        let a = build(4, &[(1, 1, &[(2, 1)]), (1, 2, &[(4, 1)]), (2, 1, &[(3, 1)])]);
        let fa = fingerprint(&a);
        let mut rng = crate::rng::SplitMix64::new(7);
        let mut checked = 0;
        while checked < 5 {
            let mut m = Matrix::zero(4, 4, Field::Rational);
            for i in 0..4 {
                for j in 0..4 {
                    *m.at_mut(i, j) = Scalar::Rational(q(rng.small_int(2)));
                }
            }
            if !m.is_invertible() {
                continue;
            }
            let b = a.base_change(&m).unwrap();
            assert_eq!(fa, fingerprint(&b));
            checked += 1;
        }
    }

    #[test]
    fn noniso_certificates() {
        let a = build(3, &[(1, 1, &[(2, 1)]), (1, 2, &[(3, 1)])]).with_name("x");
        // self comparison yields no certificate
        assert!(!certify_noniso(&a, &a, &[5]).separated());
        // dimension mismatch is its own verdict
        let b = a2_01();
        assert!(matches!(
            certify_noniso(&a, &b, &[5]),
            NonIsoOutcome::DimensionMismatch { .. }
        ));
    }

    #[test]
    fn height_ordered_rationals() {
        let vals = rationals_of_height(2);
        assert_eq!(vals[0], q(-1));
        assert_eq!(vals[1], q(1));
        assert!(vals.contains(&crate::field::qr(1, 2)));
        assert!(vals.contains(&q(-2)));
        // -1, 1, -2, 2, -1/2, 1/2
        assert_eq!(vals.len(), 6);
        use num_bigint::BigInt;
        use num_traits::Signed;
        for v in &vals {
            assert!(v.numer().abs() <= BigInt::from(2));
            assert!(v.denom() <= &BigInt::from(2));
        }
    }
}
