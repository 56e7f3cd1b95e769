//! Coefficient fields.
//!
//! Two interchangeable backends share the [`Field`] interface: the exact
//! field ℚ(Z) ([`ZRat`]), where `Z` stands for the transcendental constant
//! (q, a, q/a; q)∞ kept formal, and a high-precision real ([`Real`]) where
//! `Z` has been replaced by its numerical value. [`Scalar`] is the tagged
//! union used at API boundaries.

mod rational;
mod real;
pub mod zpoly;
mod zrat;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::QContext;
use crate::qpoly::Poly;

pub use rational::{parse_rational, rat, rational_to_string};
pub use real::{Real, REAL_PRECISION_BITS};
pub use zrat::ZRat;

/// Field operations needed by every algorithm in the crate.
///
/// Methods take references and return owned values; the std operator traits
/// are deliberately not used so that generic code reads the same for every
/// backend.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: &BigRational) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// Numerical value, substituting `z` for the formal generator.
    fn to_real(&self, z: &Real) -> Result<Real>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Coefficients of the product of two dense polynomials, both nonempty.
    /// Backends with expensive normalization override this to defer it.
    fn mul_coeffs(a: &[Self], b: &[Self]) -> Vec<Self> {
        let mut out = vec![Self::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (k, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + k] = out[i + k].add(&x.mul(y));
                }
            }
        }
        out
    }

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(v)))
    }

    fn scale(&self, r: &BigRational) -> Self {
        self.mul(&Self::from_rational(r))
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        rhs.inv().map(|i| self.mul(&i)).ok_or(Error::DivisionByZero)
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Integer power, negative exponents allowed for nonzero bases.
    fn powi(&self, e: i64) -> Result<Self> {
        let p = self.pow(e.unsigned_abs() as u32);
        if e >= 0 {
            Ok(p)
        } else {
            p.inv().ok_or(Error::DivisionByZero)
        }
    }
}

/// Fields with decidable equality, over which reduced rational functions in
/// `x` make sense.
pub trait ExactField: Field + Eq {
    /// Monic gcd of two polynomials in `x`. Backends may override the plain
    /// Euclidean algorithm with something faster.
    fn poly_gcd(a: &Poly<Self>, b: &Poly<Self>) -> Poly<Self> {
        a.gcd_euclid(b)
    }
}

/// Fields that can host the constant `Z` for a given context.
pub trait ZField: Field {
    fn z_value(ctx: &QContext) -> Result<Self>;
}

/// Which arithmetic a computation runs in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    #[default]
    Exact,
    Approx,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Exact => "exact",
            Backend::Approx => "approx",
        })
    }
}

impl FromStr for Backend {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Backend::Exact),
            "approx" => Ok(Backend::Approx),
            other => Err(Error::Parse(format!("unknown backend `{other}`"))),
        }
    }
}

/// A coefficient tagged with its backend.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(ZRat),
    Approx(Real),
}

impl Scalar {
    pub fn backend(&self) -> Backend {
        match self {
            Scalar::Exact(_) => Backend::Exact,
            Scalar::Approx(_) => Backend::Approx,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(v) => v.is_zero(),
            Scalar::Approx(v) => v.is_zero(),
        }
    }

    fn binary(
        &self,
        rhs: &Scalar,
        exact: impl FnOnce(&ZRat, &ZRat) -> Result<ZRat>,
        approx: impl FnOnce(&Real, &Real) -> Result<Real>,
    ) -> Result<Scalar> {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => exact(a, b).map(Scalar::Exact),
            (Scalar::Approx(a), Scalar::Approx(b)) => approx(a, b).map(Scalar::Approx),
            _ => Err(Error::BackendMismatch),
        }
    }

    pub fn add(&self, rhs: &Scalar) -> Result<Scalar> {
        self.binary(rhs, |a, b| Ok(a.add(b)), |a, b| Ok(a.add(b)))
    }

    pub fn sub(&self, rhs: &Scalar) -> Result<Scalar> {
        self.binary(rhs, |a, b| Ok(a.sub(b)), |a, b| Ok(a.sub(b)))
    }

    pub fn mul(&self, rhs: &Scalar) -> Result<Scalar> {
        self.binary(rhs, |a, b| Ok(a.mul(b)), |a, b| Ok(a.mul(b)))
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar> {
        self.binary(rhs, |a, b| a.checked_div(b), |a, b| a.checked_div(b))
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Exact(v) => Scalar::Exact(v.neg()),
            Scalar::Approx(v) => Scalar::Approx(v.neg()),
        }
    }

    /// Numerical value with `z` substituted for the generator.
    pub fn eval_z(&self, z: &Real) -> Result<Real> {
        match self {
            Scalar::Exact(v) => v.eval_z(z),
            Scalar::Approx(v) => Ok(v.clone()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(v) => v.fmt(f),
            Scalar::Approx(v) => v.fmt(f),
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;
    /// Parses the exact textual form, e.g. `[-1/2, 3] / [1]`.
    fn from_str(s: &str) -> Result<Self> {
        s.parse::<ZRat>().map(Scalar::Exact)
    }
}

impl From<ZRat> for Scalar {
    fn from(v: ZRat) -> Self {
        Scalar::Exact(v)
    }
}

impl From<Real> for Scalar {
    fn from(v: Real) -> Self {
        Scalar::Approx(v)
    }
}
