//! q-calculus primitives: q-numbers, factorials, binomials, Pochhammer
//! symbols, the ⊟ power, and the numerical oracles (infinite products, the
//! Jackson integral against the orthogonality measure).

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::qpoly::Poly;
use crate::scalar::{parse_rational, Backend, Field, Real};

/// Default tolerance for the numerical backend.
pub const DEFAULT_APPROX_TOLERANCE: f64 = 1e-60;

/// Fixed parameters of a family: base `q`, lower endpoint `a`, the two
/// Sobolev masses and the derivative order `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct QContext {
    pub q: BigRational,
    pub a: BigRational,
    pub lambda: BigRational,
    pub mu: BigRational,
    pub j: usize,
    pub backend: Backend,
    pub approx_tolerance: f64,
}

impl QContext {
    /// Validated context: 0 < q < 1, a < 0, λ, μ ≥ 0, j ≥ 1.
    pub fn new(
        q: BigRational,
        a: BigRational,
        lambda: BigRational,
        mu: BigRational,
        j: usize,
    ) -> Result<QContext> {
        let bad = |m: &str| Err(Error::InvalidContext(m.to_string()));
        if !(q.is_positive() && q < BigRational::one()) {
            return bad("q must satisfy 0 < q < 1");
        }
        if !a.is_negative() {
            return bad("a must be negative");
        }
        if lambda.is_negative() || mu.is_negative() {
            return bad("lambda and mu must be nonnegative");
        }
        if j == 0 {
            return bad("j must be at least 1");
        }
        Ok(QContext {
            q,
            a,
            lambda,
            mu,
            j,
            backend: Backend::Exact,
            approx_tolerance: DEFAULT_APPROX_TOLERANCE,
        })
    }

    /// Parses exact `p/q` strings.
    pub fn parse(q: &str, a: &str, lambda: &str, mu: &str, j: usize) -> Result<QContext> {
        QContext::new(
            parse_rational(q)?,
            parse_rational(a)?,
            parse_rational(lambda)?,
            parse_rational(mu)?,
            j,
        )
    }

    pub fn with_backend(mut self, backend: Backend) -> QContext {
        self.backend = backend;
        self
    }

    pub fn with_tolerance(mut self, tol: f64) -> Result<QContext> {
        if tol.is_nan() || tol <= 0.0 {
            return Err(Error::ToleranceNotPositive);
        }
        self.approx_tolerance = tol;
        Ok(self)
    }

    /// Same parameters with different masses.
    pub fn with_masses(&self, lambda: BigRational, mu: BigRational) -> Result<QContext> {
        let mut c = QContext::new(self.q.clone(), self.a.clone(), lambda, mu, self.j)?;
        c.backend = self.backend;
        c.approx_tolerance = self.approx_tolerance;
        Ok(c)
    }

    /// Same parameters with a different derivative order.
    pub fn with_j(&self, j: usize) -> Result<QContext> {
        let mut c = QContext::new(self.q.clone(), self.a.clone(), self.lambda.clone(), self.mu.clone(), j)?;
        c.backend = self.backend;
        c.approx_tolerance = self.approx_tolerance;
        Ok(c)
    }

    /// λ = μ = 0: the Sobolev family collapses to the classical one.
    pub fn is_classical(&self) -> bool {
        self.lambda.is_zero() && self.mu.is_zero()
    }

    /// Compact parameter label used in reports.
    pub fn label(&self) -> String {
        format!(
            "q={}, a={}, lambda={}, mu={}, j={}",
            self.q, self.a, self.lambda, self.mu, self.j
        )
    }
}

/// `[m]_base = (1 - base^m)/(1 - base)` for every integer `m`.
pub fn q_int<F: Field>(base: &F, m: i64) -> F {
    let positive = |k: u64| {
        let mut acc = F::zero();
        let mut p = F::one();
        for _ in 0..k {
            acc = acc.add(&p);
            p = p.mul(base);
        }
        acc
    };
    if m >= 0 {
        positive(m as u64)
    } else {
        // [-k] = -base^{-k} [k]
        let k = m.unsigned_abs();
        let inv = base.inv().expect("q-number base must be nonzero");
        positive(k).mul(&inv.pow(k as u32)).neg()
    }
}

/// `[m]_q`.
pub fn q_number(ctx: &QContext, m: i64) -> BigRational {
    q_int(&ctx.q, m)
}

/// `[n]_base!`.
pub fn q_factorial_in<F: Field>(base: &F, n: usize) -> F {
    (1..=n as i64).fold(F::one(), |acc, i| acc.mul(&q_int(base, i)))
}

/// `[n]_q!`.
pub fn q_factorial(ctx: &QContext, n: usize) -> BigRational {
    q_factorial_in(&ctx.q, n)
}

/// Gaussian binomial `[n k]_q`.
pub fn q_binomial(ctx: &QContext, n: usize, k: usize) -> Result<BigRational> {
    q_binomial_in(&ctx.q, n, k)
}

pub fn q_binomial_in<F: Field>(base: &F, n: usize, k: usize) -> Result<F> {
    if k > n {
        return Err(Error::IndexOutOfRange(format!("binomial({n}, {k})")));
    }
    let num = q_factorial_in(base, n);
    let den = q_factorial_in(base, k).mul(&q_factorial_in(base, n - k));
    num.checked_div(&den)
}

/// `(c; q)_n = Π_{i=0}^{n-1} (1 - c q^i)`.
pub fn q_pochhammer<F: Field>(q: &F, c: &F, n: usize) -> F {
    let mut acc = F::one();
    let mut t = c.clone();
    for _ in 0..n {
        acc = acc.mul(&F::one().sub(&t));
        t = t.mul(q);
    }
    acc
}

/// `(c; q)_∞`, truncated once `|c| q^N / (1 - q) < tol`.
pub fn q_pochhammer_inf(ctx: &QContext, c: &Real, tol: f64) -> Result<Real> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::ToleranceNotPositive);
    }
    let qf = ctx.q.to_f64().unwrap_or(0.0);
    let qr = Real::from_rational(&ctx.q);
    let mut bound = c.to_f64().abs() / (1.0 - qf);
    let mut acc = Real::one();
    let mut t = c.clone();
    while bound >= tol && !t.is_zero() {
        acc = acc.mul(&Real::one().sub(&t));
        t = t.mul(&qr);
        bound *= qf;
    }
    Ok(acc)
}

/// `Z = (q, a, q/a; q)_∞` evaluated numerically.
pub fn z_numeric(ctx: &QContext, tol: f64) -> Result<Real> {
    let q = Real::from_rational(&ctx.q);
    let a = Real::from_rational(&ctx.a);
    let q_over_a = Real::from_rational(&(&ctx.q / &ctx.a));
    let t = tol / 8.0;
    Ok(q_pochhammer_inf(ctx, &q, t)?
        .mul(&q_pochhammer_inf(ctx, &a, t)?)
        .mul(&q_pochhammer_inf(ctx, &q_over_a, t)?))
}

/// q-falling factorial `[n]^{(k)}_q = (q^{-n}; q)_k (q - 1)^{-k} q^{kn - C(k,2)}`.
pub fn q_falling_factorial(ctx: &QContext, n: usize, k: usize) -> Result<BigRational> {
    if k > n {
        return Err(Error::IndexOutOfRange(format!("falling factorial({n}, {k})")));
    }
    let q = &ctx.q;
    let q_minus_n = q.pow(-(n as i32));
    let poch = q_pochhammer(q, &q_minus_n, k);
    let scale = (q - BigRational::one()).pow(-(k as i32));
    let expo = (k * n) as i64 - (k * k.saturating_sub(1) / 2) as i64;
    Ok(poch * scale * q.pow(expo as i32))
}

/// `(x ⊟_q y)^n = Π_{i<n} (x - y q^i)` as a monic polynomial in `x`.
pub fn boxminus_pow<F: Field>(q: &F, y: &F, n: usize) -> Poly<F> {
    let mut out = Poly::one();
    let mut shift = y.clone();
    for _ in 0..n {
        out = out.mul(&Poly::new(vec![shift.neg(), F::one()]));
        shift = shift.mul(q);
    }
    out
}

/// Jackson-integral oracle for `∫_a^1 f(x) (qx, qx/a; q)_∞ d_q x`, the
/// orthogonality measure whose total mass is `(1 - q) Z`.
///
/// Mass points sit at `q^k` and `a q^k`. Both weight sequences are bounded
/// by a geometric sequence, which gives the truncation rule.
pub fn jackson_integral_numeric(ctx: &QContext, f: &Poly<Real>, tol: f64) -> Result<Real> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::ToleranceNotPositive);
    }
    let qf = ctx.q.to_f64().unwrap_or(0.0);
    let af = ctx.a.to_f64().unwrap_or(0.0);
    let one = Real::one();
    let q = Real::from_rational(&ctx.q);
    let a = Real::from_rational(&ctx.a);
    let q_over_a = Real::from_rational(&(&ctx.q / &ctx.a));
    let aq = Real::from_rational(&(&ctx.a * &ctx.q));
    let inner_tol = tol * 1e-6;
    let qq_inf = q_pochhammer_inf(ctx, &q, inner_tol)?;
    let qa_inf = q_pochhammer_inf(ctx, &q_over_a, inner_tol)?;
    let aq_inf = q_pochhammer_inf(ctx, &aq, inner_tol)?;

    // sup |f| on [a, 1]
    let reach = af.abs().max(1.0);
    let m_bound: f64 = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| c.to_f64().abs() * reach.powi(i as i32))
        .sum::<f64>()
        .max(f64::MIN_POSITIVE);
    let tail_scale = m_bound * (qa_inf.to_f64() + af.abs() * aq_inf.to_f64());

    let one_minus_q = one.sub(&q);
    let mut total = Real::zero();
    let mut qk = one.clone();
    let mut poch_q = one.clone(); // (q;q)_k
    let mut poch_qa = one.clone(); // (q/a;q)_k
    let mut poch_aq = one.clone(); // (aq;q)_k
    let mut qk_f = 1.0f64;
    let mut k = 0usize;
    while qk_f * tail_scale >= tol {
        let w1 = one_minus_q
            .mul(&qk)
            .mul(&qq_inf)
            .mul(&qa_inf)
            .checked_div(&poch_q.mul(&poch_qa))?;
        let w2 = one_minus_q
            .mul(&a.neg())
            .mul(&qk)
            .mul(&aq_inf)
            .mul(&qq_inf)
            .checked_div(&poch_q.mul(&poch_aq))?;
        total = total
            .add(&f.eval(&qk).mul(&w1))
            .add(&f.eval(&a.mul(&qk)).mul(&w2));
        // advance to k + 1
        let qk1 = qk.mul(&q);
        poch_q = poch_q.mul(&one.sub(&qk1));
        poch_qa = poch_qa.mul(&one.sub(&q_over_a.mul(&qk)));
        poch_aq = poch_aq.mul(&one.sub(&aq.mul(&qk)));
        qk = qk1;
        qk_f *= qf;
        k += 1;
        if k > 100_000 {
            break;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn ctx() -> QContext {
        QContext::new(rat(1, 2), rat(-1, 1), rat(1, 1), rat(1, 1), 2).unwrap()
    }

    #[test]
    fn q_numbers() {
        let c = ctx();
        assert_eq!(q_number(&c, 0), rat(0, 1));
        assert_eq!(q_number(&c, 3), rat(7, 4));
        assert_eq!(q_number(&c, -1), rat(-2, 1));
        for m in -6..=6i64 {
            let closed = (BigRational::one() - c.q.pow(m as i32)) / (BigRational::one() - &c.q);
            assert_eq!(q_number(&c, m), closed, "m = {m}");
        }
    }

    #[test]
    fn factorials_and_binomials() {
        let c = ctx();
        assert_eq!(q_factorial(&c, 0), rat(1, 1));
        assert_eq!(q_binomial(&c, 2, 1).unwrap(), rat(3, 2));
        // [4]!/([2]![2]!) with [1..4] = 1, 3/2, 7/4, 15/8
        let oracle = (rat(1, 1) * rat(3, 2) * rat(7, 4) * rat(15, 8)) / (rat(3, 2) * rat(3, 2));
        assert_eq!(oracle, rat(35, 16));
        assert_eq!(q_binomial(&c, 4, 2).unwrap(), oracle);
        assert!(q_binomial(&c, 2, 3).is_err());
        for n in 0..8 {
            for k in 0..=n {
                assert_eq!(q_binomial(&c, n, k).unwrap(), q_binomial(&c, n, n - k).unwrap());
            }
        }
    }

    #[test]
    fn pochhammer() {
        let c = ctx();
        assert_eq!(q_pochhammer(&c.q, &rat(5, 7), 0), rat(1, 1));
        assert_eq!(q_pochhammer(&c.q, &c.q, 2), rat(1, 2) * rat(3, 4));
        assert_eq!(q_pochhammer(&c.q, &rat(3, 8), 2), rat(5, 8) * rat(13, 16));
        assert_eq!(q_pochhammer(&c.q, &rat(1, 1), 3), rat(0, 1));
    }

    #[test]
    fn pochhammer_infinite() {
        let c = ctx();
        let v = q_pochhammer_inf(&c, &Real::zero(), 1e-12).unwrap();
        assert_eq!(v, Real::one());
        let v = q_pochhammer_inf(&c, &Real::from_rational(&rat(1, 2)), 1e-12).unwrap();
        assert!((v.to_f64() - 0.288_788_095_086_602_4).abs() < 1e-11);
        let v = q_pochhammer_inf(&c, &Real::from_rational(&rat(-1, 1)), 1e-12).unwrap();
        assert!((v.to_f64() - 4.768_462_058_062_66).abs() < 1e-10);
        assert_eq!(
            q_pochhammer_inf(&c, &Real::one(), 0.0),
            Err(Error::ToleranceNotPositive)
        );
    }

    #[test]
    fn falling_factorial() {
        let c = ctx();
        assert_eq!(q_falling_factorial(&c, 5, 0).unwrap(), rat(1, 1));
        assert_eq!(q_falling_factorial(&c, 5, 1).unwrap(), q_number(&c, 5));
        assert_eq!(q_falling_factorial(&c, 3, 2).unwrap(), rat(21, 8));
        assert!(q_falling_factorial(&c, 2, 3).is_err());
    }

    #[test]
    fn boxminus() {
        let q = rat(1, 2);
        assert_eq!(boxminus_pow(&q, &rat(3, 1), 0), Poly::one());
        assert_eq!(boxminus_pow(&q, &rat(0, 1), 3), Poly::monomial(rat(1, 1), 3));
        let y = rat(3, 1);
        let expect = Poly::new(vec![&q * &y * &y, -(&y * (rat(1, 1) + &q)), rat(1, 1)]);
        assert_eq!(boxminus_pow(&q, &y, 2), expect);
    }

    #[test]
    fn context_validation() {
        assert!(QContext::new(rat(1, 1), rat(-1, 1), rat(0, 1), rat(0, 1), 1).is_err());
        assert!(QContext::new(rat(1, 2), rat(1, 1), rat(0, 1), rat(0, 1), 1).is_err());
        assert!(QContext::new(rat(1, 2), rat(-1, 1), rat(-1, 1), rat(0, 1), 1).is_err());
        assert!(QContext::new(rat(1, 2), rat(-1, 1), rat(0, 1), rat(0, 1), 0).is_err());
        assert!(QContext::parse("0.5", "-1", "1", "1", 2).is_err());
        assert!(QContext::parse("1/2", "-1", "1", "1", 2).is_ok());
    }

    #[test]
    fn z_numeric_value() {
        let z = z_numeric(&ctx(), 1e-40).unwrap();
        // (1/2;1/2)_inf (-1;1/2)_inf (-1/2;1/2)_inf
        let oracle = 0.288_788_095_086_602_4 * 4.768_462_058_062_66 * (4.768_462_058_062_66 / 2.0);
        assert!((z.to_f64() - oracle).abs() < 1e-9);
    }

    #[test]
    fn jackson_total_mass() {
        let c = ctx();
        let z = z_numeric(&c, 1e-40).unwrap();
        let mass = jackson_integral_numeric(&c, &Poly::one(), 1e-30).unwrap();
        let expect = z.mul(&Real::from_rational(&rat(1, 2)));
        assert!(mass.close_to(&expect, 1e-25, 0.0));
    }
}
