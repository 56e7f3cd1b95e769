//! Dense polynomials in `x`, reduced rational functions in `x`, bivariate
//! kernels, and the q-difference operators acting on them.

mod bipoly;
mod ratfun;

use std::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::qcore::{boxminus_pow, q_factorial_in, QContext};
use crate::scalar::{ExactField, Field};

pub use bipoly::BiPoly;
pub use ratfun::RatFun;

/// Dense polynomial, constant term first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Poly::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Poly::monomial(F::one(), 1)
    }

    pub fn monomial(c: F, k: usize) -> Self {
        let mut v = vec![F::zero(); k];
        v.push(c);
        Poly::new(v)
    }

    /// `x - c`.
    pub fn linear_root(c: &F) -> Self {
        Poly::new(vec![c.neg(), F::one()])
    }

    pub fn from_rationals(v: &[BigRational]) -> Self {
        Poly::new(v.iter().map(F::from_rational).collect())
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn try_map<G: Field>(&self, f: impl Fn(&F) -> Result<G>) -> Result<Poly<G>> {
        Ok(Poly::new(self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k).add(&rhs.coeff(k))).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k).sub(&rhs.coeff(k))).collect())
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(F::neg).collect() }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|v| v.mul(c)).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        Poly::new(F::mul_coeffs(&self.coeffs, &rhs.coeffs))
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs.iter().rev().fold(F::zero(), |acc, c| acc.mul(x).add(c))
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = d.coeffs[dd].inv().ok_or(Error::DivisionByZero)?;
        if self.coeffs.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut r = self.coeffs.clone();
        let mut q = vec![F::zero(); self.coeffs.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].mul(&lead_inv);
            if !c.is_zero() {
                for (i, di) in d.coeffs.iter().enumerate() {
                    r[k + i] = r[k + i].sub(&c.mul(di));
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Poly::new(q), Poly::new(r)))
    }

    /// Remainder modulo a nonzero divisor.
    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).map(|(_, r)| r).expect("nonzero divisor")
    }

    /// Quotient that must be exact.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.divrem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::ExactDivisionFailed(format!(
                "remainder of degree {:?}",
                r.degree()
            )))
        }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd_euclid(&self, rhs: &Self) -> Self {
        let (mut a, mut b) = (self.monic(), rhs.monic());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.rem(&b).monic();
            a = b;
            b = r;
        }
        a
    }

    /// `p(c x)`.
    pub fn dilate_by(&self, c: &F) -> Self {
        let mut p = F::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for v in &self.coeffs {
            out.push(v.mul(&p));
            p = p.mul(c);
        }
        Poly::new(out)
    }

    /// Exact division by `x`; fails if the constant term is nonzero.
    pub fn div_x(&self) -> Result<Self> {
        match self.coeffs.first() {
            None => Ok(Poly::zero()),
            Some(c) if !c.is_zero() => {
                Err(Error::ExactDivisionFailed("constant term is not zero".into()))
            }
            Some(_) => Ok(Poly { coeffs: self.coeffs[1..].to_vec() }),
        }
    }

    /// Multiplication by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![F::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    /// `(p(c x) - p(x)) / ((c - 1) x)`, the q-difference quotient with
    /// base `c`. The numerator has no constant term, so the division by `x`
    /// is exact.
    pub fn q_derivative_by(&self, c: &F) -> Self {
        let diff = self.dilate_by(c).sub(self);
        let shifted = diff.div_x().expect("constant term cancels");
        let denom = c.sub(&F::one()).inv().expect("base must differ from 1");
        shifted.scale(&denom)
    }
}

impl<F: ExactField> Poly<F> {
    /// Monic gcd, dispatched to the backend's fastest method.
    pub fn gcd(&self, rhs: &Self) -> Self {
        F::poly_gcd(self, rhs)
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    /// Human-readable sum of terms, highest power first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Orientation of a q-difference operator: `ℓ = -1` uses base `q^{-1}`
/// (dilation), `ℓ = +1` uses base `q` (contraction).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ell {
    Minus,
    Plus,
}

impl Ell {
    pub const BOTH: [Ell; 2] = [Ell::Minus, Ell::Plus];

    pub fn sign(self) -> i8 {
        match self {
            Ell::Minus => -1,
            Ell::Plus => 1,
        }
    }

    /// Kronecker delta `δ_{ℓ,1}`.
    pub fn delta(self) -> usize {
        match self {
            Ell::Minus => 0,
            Ell::Plus => 1,
        }
    }

    pub fn flip(self) -> Ell {
        match self {
            Ell::Minus => Ell::Plus,
            Ell::Plus => Ell::Minus,
        }
    }

    pub fn from_sign(s: i64) -> Result<Ell> {
        match s {
            -1 => Ok(Ell::Minus),
            1 => Ok(Ell::Plus),
            other => Err(Error::Parse(format!("ell must be -1 or 1, got {other}"))),
        }
    }
}

impl fmt::Display for Ell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.sign())
    }
}

/// q-operators for a fixed base `q`, lifted into the working field.
#[derive(Clone, Debug)]
pub struct QOps<F> {
    pub q: F,
    pub qinv: F,
}

impl<F: Field> QOps<F> {
    pub fn new(q: &BigRational) -> Self {
        let q = F::from_rational(q);
        let qinv = q.inv().expect("q is nonzero");
        QOps { q, qinv }
    }

    pub fn from_ctx(ctx: &QContext) -> Self {
        QOps::new(&ctx.q)
    }

    /// `q^ℓ`.
    pub fn base(&self, ell: Ell) -> &F {
        match ell {
            Ell::Minus => &self.qinv,
            Ell::Plus => &self.q,
        }
    }

    /// `p(q^ℓ x)`.
    pub fn dilate(&self, p: &Poly<F>, ell: Ell) -> Poly<F> {
        p.dilate_by(self.base(ell))
    }

    /// `𝒟_{q^ℓ} p`.
    pub fn deriv(&self, p: &Poly<F>, ell: Ell) -> Poly<F> {
        p.q_derivative_by(self.base(ell))
    }

    /// `𝒟_{q^ℓ}^k p`.
    pub fn deriv_iter(&self, p: &Poly<F>, ell: Ell, k: usize) -> Poly<F> {
        let mut out = p.clone();
        for _ in 0..k {
            if out.is_zero() {
                break;
            }
            out = self.deriv(&out, ell);
        }
        out
    }

    /// `(𝒟_{q^ℓ}^k p)(x0)`.
    pub fn deriv_at(&self, p: &Poly<F>, ell: Ell, k: usize, x0: &F) -> F {
        self.deriv_iter(p, ell, k).eval(x0)
    }

    /// q-Taylor polynomial of order `m` around `alpha`:
    /// `Σ_{k≤m} (𝒟_q^k p)(α)/[k]_q! (x ⊟_q α)^k`.
    pub fn taylor(&self, p: &Poly<F>, alpha: &F, m: usize) -> Poly<F> {
        let mut out = Poly::zero();
        let mut dk = p.clone();
        for k in 0..=m {
            if dk.is_zero() {
                break;
            }
            let coef = dk
                .eval(alpha)
                .checked_div(&q_factorial_in(&self.q, k))
                .expect("q-factorials are nonzero");
            out = out.add(&boxminus_pow(&self.q, alpha, k).scale(&coef));
            dk = self.deriv(&dk, Ell::Plus);
        }
        out
    }
}

impl<F: ExactField> QOps<F> {
    pub fn dilate_rat(&self, r: &RatFun<F>, ell: Ell) -> RatFun<F> {
        r.dilate_by(self.base(ell))
    }

    pub fn deriv_rat(&self, r: &RatFun<F>, ell: Ell) -> Result<RatFun<F>> {
        r.q_derivative_by(self.base(ell))
    }
}

/// `p(q^ℓ x)` over the context's base.
pub fn poly_dilate<F: Field>(ctx: &QContext, p: &Poly<F>, ell: Ell) -> Poly<F> {
    QOps::from_ctx(ctx).dilate(p, ell)
}

/// `𝒟_{q^ℓ} p`.
pub fn q_derivative<F: Field>(ctx: &QContext, p: &Poly<F>, ell: Ell) -> Poly<F> {
    QOps::from_ctx(ctx).deriv(p, ell)
}

/// `𝒟_{q^ℓ}^k p`.
pub fn q_derivative_iter<F: Field>(ctx: &QContext, p: &Poly<F>, ell: Ell, k: usize) -> Poly<F> {
    QOps::from_ctx(ctx).deriv_iter(p, ell, k)
}

/// `(𝒟_{q^ℓ}^k p)(x0)`.
pub fn q_derivative_at<F: Field>(ctx: &QContext, p: &Poly<F>, ell: Ell, k: usize, x0: &F) -> F {
    QOps::from_ctx(ctx).deriv_at(p, ell, k, x0)
}

/// `𝒟_{q^ℓ}` of a rational function.
pub fn q_derivative_rat<F: ExactField>(ctx: &QContext, r: &RatFun<F>, ell: Ell) -> Result<RatFun<F>> {
    QOps::from_ctx(ctx).deriv_rat(r, ell)
}

/// q-Taylor polynomial of order `m` around `alpha`.
pub fn q_taylor_polynomial<F: Field>(ctx: &QContext, p: &Poly<F>, alpha: &F, m: usize) -> Poly<F> {
    QOps::from_ctx(ctx).taylor(p, alpha, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    type P = Poly<BigRational>;

    fn p(v: &[(i64, i64)]) -> P {
        Poly::new(v.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    fn ctx() -> QContext {
        QContext::new(rat(1, 2), rat(-1, 1), rat(1, 1), rat(1, 1), 2).unwrap()
    }

    #[test]
    fn dilation() {
        let c = ctx();
        assert_eq!(poly_dilate(&c, &P::one(), Ell::Plus), P::one());
        let x2 = P::monomial(rat(1, 1), 2);
        assert_eq!(poly_dilate(&c, &x2, Ell::Plus), P::monomial(rat(1, 4), 2));
        let f = p(&[(3, 1), (-2, 5), (7, 3)]);
        assert_eq!(poly_dilate(&c, &poly_dilate(&c, &f, Ell::Plus), Ell::Minus), f);
    }

    #[test]
    fn derivative_of_powers() {
        let c = ctx();
        assert!(q_derivative(&c, &p(&[(5, 1)]), Ell::Plus).is_zero());
        assert_eq!(q_derivative(&c, &P::monomial(rat(1, 1), 2), Ell::Plus), P::monomial(rat(3, 2), 1));
        assert_eq!(q_derivative(&c, &P::monomial(rat(1, 1), 3), Ell::Plus), P::monomial(rat(7, 4), 2));
        // base q^{-1} = 2: [2]_2 = 3
        assert_eq!(q_derivative(&c, &P::monomial(rat(1, 1), 2), Ell::Minus), P::monomial(rat(3, 1), 1));
    }

    #[test]
    fn iterated_derivatives() {
        let c = ctx();
        let x4 = P::monomial(rat(1, 1), 4);
        assert_eq!(q_derivative_iter(&c, &x4, Ell::Plus, 0), x4);
        assert_eq!(
            q_derivative_iter(&c, &x4, Ell::Plus, 4),
            P::constant(crate::qcore::q_factorial(&c, 4))
        );
        assert!(q_derivative_iter(&c, &x4, Ell::Plus, 5).is_zero());
        assert_eq!(q_derivative_at(&c, &x4, Ell::Plus, 1, &rat(1, 1)), rat(15, 8));
    }

    #[test]
    fn taylor_expansion() {
        let c = ctx();
        let f = p(&[(1, 3), (0, 1), (-4, 1), (2, 1)]);
        assert_eq!(q_taylor_polynomial(&c, &f, &rat(-2, 3), 3), f);
        assert_eq!(q_taylor_polynomial(&c, &f, &rat(5, 1), 7), f);
        assert_eq!(q_taylor_polynomial(&c, &P::x(), &rat(0, 1), 1), P::x());
        // 1 + (3/2)(x - 1)
        let x2 = P::monomial(rat(1, 1), 2);
        assert_eq!(q_taylor_polynomial(&c, &x2, &rat(1, 1), 1), p(&[(-1, 2), (3, 2)]));
    }

    #[test]
    fn gcd_and_division() {
        let a = p(&[(-1, 1), (0, 1), (1, 1)]); // x^2 - 1
        let b = p(&[(1, 1), (1, 1)]); // x + 1
        assert_eq!(a.gcd_euclid(&b), b);
        assert_eq!(a.div_exact(&b).unwrap(), p(&[(-1, 1), (1, 1)]));
        assert!(a.div_exact(&p(&[(2, 1), (1, 1)])).is_err());
    }
}
