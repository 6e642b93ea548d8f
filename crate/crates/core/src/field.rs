//! Exact field elements: arbitrary-precision rationals and prime-field residues.
//!
//! Every computation in this crate runs over one of two coefficient fields:
//! `Q` (rationals, kept in lowest terms by `num_rational`) or `Fp(p)` for a
//! prime `p`. A [`Scalar`] carries its field with it; mixing fields in an
//! arithmetic operation is a programming error and panics rather than
//! coercing. Public constructors that accept user data (matrices, algebras,
//! parsed documents) validate field homogeneity up front and return errors.
//!
//! The ground field of the classification being verified is algebraically
//! closed, but all structure constants in scope are rational and ranks and
//! kernel dimensions of linear systems do not change under field extension,
//! so computing over `Q` reproduces every dimension the tables assert.
//! `Fp` exists for exhaustive finite searches and modular lifting.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// Convenient alias used throughout the crate.
pub type Q = BigRational;

/// The coefficient field a scalar lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    /// The rational numbers.
    Rational,
    /// The prime field with `p` elements, `p` an odd prime below 2^31.
    Fp(u64),
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Fp(p) => write!(f, "F{p}"),
        }
    }
}

/// An exact field element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// A rational number in lowest terms with positive denominator
    /// (maintained by `BigRational`).
    Rational(Q),
    /// A residue in `[0, p)` together with its modulus.
    Fp { value: u64, p: u64 },
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Fp { value, p } => write!(f, "{value} (mod {p})"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Fp { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Scalar {
    pub fn zero(field: Field) -> Self {
        match field {
            Field::Rational => Scalar::Rational(Q::zero()),
            Field::Fp(p) => Scalar::Fp { value: 0, p },
        }
    }

    pub fn one(field: Field) -> Self {
        match field {
            Field::Rational => Scalar::Rational(Q::one()),
            Field::Fp(p) => Scalar::Fp { value: 1 % p, p },
        }
    }

    pub fn from_int(n: i64, field: Field) -> Self {
        match field {
            Field::Rational => Scalar::Rational(Q::from_integer(n.into())),
            Field::Fp(p) => Scalar::Fp {
                value: n.rem_euclid(p as i64) as u64,
                p,
            },
        }
    }

    pub fn from_rational(q: Q) -> Self {
        Scalar::Rational(q)
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Fp { p, .. } => Field::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Fp { value, .. } => *value == 1,
        }
    }

    /// The underlying rational, if this scalar is one.
    pub fn as_rational(&self) -> Option<&Q> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Fp { .. } => None,
        }
    }

    fn check_same_field(&self, other: &Scalar, op: &str) {
        if self.field() != other.field() {
            panic!(
                "field mismatch in scalar {op}: {} vs {}",
                self.field(),
                other.field()
            );
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.check_same_field(other, "addition");
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, .. }) => Scalar::Fp {
                value: (a + b) % p,
                p: *p,
            },
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.check_same_field(other, "subtraction");
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, .. }) => Scalar::Fp {
                value: (a + p - b) % p,
                p: *p,
            },
            _ => unreachable!(),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.check_same_field(other, "multiplication");
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, .. }) => Scalar::Fp {
                value: (a * b) % p,
                p: *p,
            },
            _ => unreachable!(),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Fp { value, p } => Scalar::Fp {
                value: (p - value) % p,
                p: *p,
            },
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Fp { value, p } => Scalar::Fp {
                value: fp_inv(*value, *p),
                p: *p,
            },
        })
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv().expect("division by zero scalar"))
    }

    /// Reduce a rational scalar modulo `p`. Fails when `p` divides the
    /// denominator (a "bad prime" for the value).
    pub fn reduce_mod_p(&self, p: u64) -> Option<Scalar> {
        match self {
            Scalar::Fp { .. } => None,
            Scalar::Rational(q) => {
                let pr = BigInt::from(p);
                let den = q.denom().mod_floor(&pr);
                if den.is_zero() {
                    return None;
                }
                let num = q.numer().mod_floor(&pr);
                let num = num.to_u64().expect("residue fits u64");
                let den = den.to_u64().expect("residue fits u64");
                Some(Scalar::Fp {
                    value: num * fp_inv(den, p) % p,
                    p,
                })
            }
        }
    }
}

/// Inverse mod an odd prime via Fermat.
pub(crate) fn fp_inv(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p), "inverse of zero mod {p}");
    fp_pow(a % p, p - 2, p)
}

pub(crate) fn fp_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Integer-literal rational.
pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// Rational from numerator and denominator.
pub fn qr(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

/// Is this rational a perfect square, and if so its nonnegative square root.
pub fn rational_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let num = x.numer().sqrt();
    let den = x.denom().sqrt();
    if &(&num * &num) == x.numer() && &(&den * &den) == x.denom() {
        Some(Q::new(num, den))
    } else {
        None
    }
}
