use std::fmt;

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::IBig;
use num_bigint::BigInt;
use num_rational::BigRational;

use super::Field;
use crate::error::Result;

/// Working precision of the approximate backend, in bits (about 77 decimal
/// digits, comfortably above the 50 needed to survive cancellation in the
/// Gram determinants).
pub const REAL_PRECISION_BITS: usize = 256;

type Float = FBig<HalfEven, 2>;

/// High-precision binary floating point number.
#[derive(Clone, Debug, PartialEq, PartialOrd)]
pub struct Real(Float);

fn to_ibig(v: &BigInt) -> IBig {
    IBig::from_le_bytes(&v.to_signed_bytes_le())
}

fn lift(v: IBig) -> Float {
    Float::from(v).with_precision(REAL_PRECISION_BITS).value()
}

impl Real {
    pub fn from_rational(r: &BigRational) -> Real {
        Real(lift(to_ibig(r.numer())) / lift(to_ibig(r.denom())))
    }

    pub fn from_f64(v: f64) -> Real {
        let f = Float::try_from(v).expect("finite f64");
        Real(f.with_precision(REAL_PRECISION_BITS).value())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }

    pub fn abs(&self) -> Real {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn is_negative(&self) -> bool {
        self.0 < Float::ZERO
    }

    pub fn max(self, other: Real) -> Real {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let dec = self.0.to_decimal().value().with_precision(digits).value();
        dec.to_string()
    }

    /// `|self - other| <= rel * max(|self|, |other|, floor)`.
    pub fn close_to(&self, other: &Real, rel: f64, floor: f64) -> bool {
        let diff = self.sub(other).abs();
        let scale = self.abs().max(other.abs()).max(Real::from_f64(floor));
        diff <= scale.mul(&Real::from_f64(rel))
    }
}

impl Field for Real {
    fn zero() -> Self {
        Real(lift(IBig::ZERO))
    }
    fn one() -> Self {
        Real(lift(IBig::ONE))
    }
    fn from_rational(r: &BigRational) -> Self {
        Real::from_rational(r)
    }
    fn is_zero(&self) -> bool {
        self.0 == Float::ZERO
    }
    fn add(&self, rhs: &Self) -> Self {
        Real(&self.0 + &rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Real(&self.0 - &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Real(&self.0 * &rhs.0)
    }
    fn neg(&self) -> Self {
        Real(-&self.0)
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Real(lift(IBig::ONE) / &self.0))
        }
    }
    fn to_real(&self, _z: &Real) -> Result<Real> {
        Ok(self.clone())
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string(30))
    }
}

impl super::ZField for Real {
    fn z_value(ctx: &crate::qcore::QContext) -> Result<Self> {
        crate::qcore::z_numeric(ctx, ctx.approx_tolerance)
    }
}
