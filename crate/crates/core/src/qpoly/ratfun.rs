use std::fmt;

use super::Poly;
use crate::error::{Error, Result};
use crate::scalar::{ExactField, Field};

/// Reduced rational function in `x`: `gcd(num, den) = 1`, `den` monic.
/// Canonical, so equality is structural and a residual is zero exactly
/// when its numerator is.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFun<F> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: ExactField> RatFun<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly<F>, den: Poly<F>) -> Self {
        if num.is_zero() {
            return RatFun::zero();
        }
        if den.degree() == Some(0) {
            return Self::normalized(num, den);
        }
        let g = num.gcd(&den);
        if g.is_one() {
            return Self::normalized(num, den);
        }
        let num = num.div_exact(&g).expect("gcd divides numerator");
        let den = den.div_exact(&g).expect("gcd divides denominator");
        Self::normalized(num, den)
    }

    /// Makes the denominator monic; coprimality is assumed.
    fn normalized(num: Poly<F>, den: Poly<F>) -> Self {
        let lc = den.leading().expect("nonzero denominator").clone();
        if lc.is_one() {
            return RatFun { num, den };
        }
        let inv = lc.inv().expect("nonzero leading coefficient");
        RatFun {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn zero() -> Self {
        RatFun { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFun { num: Poly::one(), den: Poly::one() }
    }

    pub fn constant(c: F) -> Self {
        RatFun { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        RatFun { num: p, den: Poly::one() }
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The underlying polynomial when the denominator is 1.
    pub fn to_poly(&self) -> Option<Poly<F>> {
        self.is_polynomial().then(|| self.num.clone())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = self.num.add(&rhs.num);
            if self.den.is_one() {
                return RatFun { num, den: self.den.clone() };
            }
            return Self::reduce(num, self.den.clone());
        }
        if self.den.is_one() {
            return RatFun { num: self.num.mul(&rhs.den).add(&rhs.num), den: rhs.den.clone() };
        }
        if rhs.den.is_one() {
            return RatFun { num: rhs.num.mul(&self.den).add(&self.num), den: self.den.clone() };
        }
        // Henrici: cancellation can only involve gcd(den, den').
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
            if num.is_zero() {
                return RatFun::zero();
            }
            return RatFun { num, den: self.den.mul(&rhs.den) };
        }
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = rhs.den.div_exact(&g).expect("gcd divides");
        let t = self.num.mul(&d1).add(&rhs.num.mul(&b1));
        if t.is_zero() {
            return RatFun::zero();
        }
        let g2 = t.gcd(&g);
        let num = t.div_exact(&g2).expect("gcd divides");
        let den = b1.mul(&rhs.den.div_exact(&g2).expect("gcd divides"));
        Self::normalized(num, den)
    }

    pub fn neg(&self) -> Self {
        RatFun { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        let g1 = if rhs.den.is_one() { Poly::one() } else { self.num.gcd(&rhs.den) };
        let g2 = if self.den.is_one() { Poly::one() } else { rhs.num.gcd(&self.den) };
        let split = |p: &Poly<F>, g: &Poly<F>| {
            if g.is_one() {
                p.clone()
            } else {
                p.div_exact(g).expect("gcd divides")
            }
        };
        let num = split(&self.num, &g1).mul(&split(&rhs.num, &g2));
        let den = split(&self.den, &g2).mul(&split(&rhs.den, &g1));
        Self::normalized(num, den)
    }

    pub fn mul_poly(&self, p: &Poly<F>) -> Self {
        self.mul(&RatFun::from_poly(p.clone()))
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return RatFun::zero();
        }
        RatFun { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// Value at `x0`; a vanishing denominator is reported, not divided.
    pub fn eval(&self, x0: &F) -> Result<F> {
        let d = self.den.eval(x0);
        if d.is_zero() {
            return Err(Error::ZeroDenominator(format!("pole at x = {x0}")));
        }
        self.num.eval(x0).checked_div(&d)
    }

    /// `r(c x)`. Dilation preserves coprimality, so only the leading
    /// coefficient needs fixing.
    pub fn dilate_by(&self, c: &F) -> Self {
        Self::normalized(self.num.dilate_by(c), self.den.dilate_by(c))
    }

    /// `(r(c x) - r(x)) / ((c - 1) x)`.
    pub fn q_derivative_by(&self, c: &F) -> Result<Self> {
        if self.is_polynomial() {
            return Ok(RatFun::from_poly(self.num.q_derivative_by(c)));
        }
        let p_c = self.num.dilate_by(c);
        let q_c = self.den.dilate_by(c);
        let top = p_c.mul(&self.den).sub(&self.num.mul(&q_c));
        let top = top.div_x()?;
        let scale = c.sub(&F::one()).inv().ok_or(Error::DivisionByZero)?;
        RatFun::new(top.scale(&scale), self.den.mul(&q_c))
    }
}

impl<F: ExactField> From<Poly<F>> for RatFun<F> {
    fn from(p: Poly<F>) -> Self {
        RatFun::from_poly(p)
    }
}

impl<F: Field> fmt::Display for RatFun<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "[{}] / [{}]", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use num_rational::BigRational;

    type R = RatFun<BigRational>;
    type P = Poly<BigRational>;

    fn p(v: &[i64]) -> P {
        Poly::new(v.iter().map(|&c| rat(c, 1)).collect())
    }

    #[test]
    fn reduction_is_canonical() {
        let r = R::new(p(&[-1, 1]), p(&[-1, 1])).unwrap();
        assert_eq!(r, R::one());
        let r = R::new(p(&[2, 2]), p(&[-2, 0, 2])).unwrap();
        assert_eq!(r, R::new(p(&[1]), p(&[-1, 1])).unwrap());
        assert!(R::new(p(&[1]), P::zero()).is_err());
    }

    #[test]
    fn derivative_of_reciprocal() {
        let q = rat(1, 2);
        let inv_x = R::new(p(&[1]), p(&[0, 1])).unwrap();
        // -1/(q x^2)
        let expect = R::new(p(&[-2]), p(&[0, 0, 1])).unwrap();
        assert_eq!(inv_x.q_derivative_by(&q).unwrap(), expect);
        let one = R::new(p(&[-1, 1]), p(&[-1, 1])).unwrap();
        assert!(one.q_derivative_by(&q).unwrap().is_zero());
        let f = p(&[3, 0, 5, 1]);
        assert_eq!(
            R::from_poly(f.clone()).q_derivative_by(&q).unwrap(),
            R::from_poly(f.q_derivative_by(&q))
        );
    }

    #[test]
    fn field_operations() {
        let a = R::new(p(&[1, 1]), p(&[-2, 1])).unwrap();
        let b = R::new(p(&[3]), p(&[0, 1, 1])).unwrap();
        let s = a.add(&b);
        assert_eq!(s.sub(&b), a);
        assert_eq!(a.mul(&b).div(&b).unwrap(), a);
        assert_eq!(a.mul(&a.inv().unwrap()), R::one());
    }
}
