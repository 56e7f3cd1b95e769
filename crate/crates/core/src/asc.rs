//! The classical Al-Salam–Carlitz I family: recurrence and ₂φ₁
//! construction, norms, structure relation, forward shift, the second-order
//! q-difference equation and the Christoffel–Darboux kernels.

use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::qcore::{boxminus_pow, q_factorial_in, q_int, q_pochhammer, QContext};
use crate::qpoly::{BiPoly, Ell, Poly, QOps, RatFun};
use crate::scalar::{ExactField, ZField};

/// Recurrence data `U_{n+1} = (x - βₙ) Uₙ - γₙ U_{n-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct RecurrenceCoeffs<F> {
    pub beta: F,
    pub gamma: F,
}

/// `σ 𝒟_{q⁻¹} Uₙ = ᾱₙ U_{n+1} + β̄ₙ Uₙ + γ̄ₙ U_{n-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureCoeffs<F> {
    pub sigma: Poly<F>,
    pub alpha_bar: F,
    pub beta_bar: F,
    pub gamma_bar: F,
}

/// `σ 𝒟_q 𝒟_{q⁻¹} Uₙ + τ 𝒟_q Uₙ + λ_{n} Uₙ = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct EquationData<F> {
    pub tau: Poly<F>,
    pub eigenvalue: F,
}

/// Monic Al-Salam–Carlitz I polynomials over a field hosting `Z`.
///
/// Norms are `‖Uₙ‖² = Z hₙ`; over the exact field `Z` stays formal.
#[derive(Debug)]
pub struct AscFamily<F> {
    ctx: QContext,
    ops: QOps<F>,
    a: F,
    z: F,
    polys: RwLock<Vec<Poly<F>>>,
}

impl<F: ZField> AscFamily<F> {
    pub fn new(ctx: &QContext) -> Result<Self> {
        Ok(AscFamily {
            ctx: ctx.clone(),
            ops: QOps::from_ctx(ctx),
            a: F::from_rational(&ctx.a),
            z: F::z_value(ctx)?,
            polys: RwLock::new(vec![Poly::one()]),
        })
    }

    pub fn ctx(&self) -> &QContext {
        &self.ctx
    }

    pub fn ops(&self) -> &QOps<F> {
        &self.ops
    }

    pub fn q(&self) -> &F {
        &self.ops.q
    }

    pub fn a(&self) -> &F {
        &self.a
    }

    pub fn z(&self) -> &F {
        &self.z
    }

    fn q_pow(&self, n: i64) -> F {
        self.ops.q.powi(n).expect("q is nonzero")
    }

    /// `[m]_q`.
    pub fn qn(&self, m: i64) -> F {
        q_int(&self.ops.q, m)
    }

    /// `βₙ = (a + 1) qⁿ`.
    pub fn beta(&self, n: usize) -> F {
        self.a.add(&F::one()).mul(&self.q_pow(n as i64))
    }

    /// `γₙ = -a q^{n-1} (1 - qⁿ)`, zero at `n = 0`.
    pub fn gamma(&self, n: usize) -> F {
        if n == 0 {
            return F::zero();
        }
        let n = n as i64;
        self.a
            .neg()
            .mul(&self.q_pow(n - 1))
            .mul(&F::one().sub(&self.q_pow(n)))
    }

    pub fn recurrence_coeffs(&self, n: usize) -> RecurrenceCoeffs<F> {
        RecurrenceCoeffs { beta: self.beta(n), gamma: self.gamma(n) }
    }

    /// `Uₙ`, built by the recurrence and cached.
    pub fn poly(&self, n: usize) -> Poly<F> {
        if let Some(p) = self.polys.read().expect("cache lock").get(n) {
            return p.clone();
        }
        let mut polys = self.polys.write().expect("cache lock");
        while polys.len() <= n {
            let m = polys.len() - 1;
            let prev = if m == 0 { Poly::zero() } else { polys[m - 1].clone() };
            let shift = Poly::new(vec![self.beta(m).neg(), F::one()]);
            let next = shift.mul(&polys[m]).sub(&prev.scale(&self.gamma(m)));
            polys.push(next);
        }
        polys[n].clone()
    }

    /// `U_{-1} = 0` convention for index arithmetic.
    pub fn poly_signed(&self, n: i64) -> Poly<F> {
        if n < 0 {
            Poly::zero()
        } else {
            self.poly(n as usize)
        }
    }

    /// `Uₙ` from the terminating ₂φ₁ sum, with `x^k (x⁻¹; q)_k` expanded as
    /// `Π_{i<k} (x - qⁱ)`.
    pub fn poly_hypergeometric(&self, n: usize) -> Poly<F> {
        let q = &self.ops.q;
        let q_minus_n = self.q_pow(-(n as i64));
        let ratio = q.checked_div(&self.a).expect("a is nonzero");
        let one = F::one();
        let mut sum = Poly::zero();
        for k in 0..=n {
            let coef = q_pochhammer(q, &q_minus_n, k)
                .checked_div(&q_pochhammer(q, q, k))
                .expect("(q; q)_k is nonzero")
                .mul(&ratio.pow(k as u32));
            sum = sum.add(&boxminus_pow(q, &one, k).scale(&coef));
        }
        let lead = self
            .a
            .neg()
            .pow(n as u32)
            .mul(&self.q_pow((n * n.saturating_sub(1) / 2) as i64));
        sum.scale(&lead)
    }

    /// `hₙ = (-a)ⁿ (1 - q) (q; q)ₙ q^{C(n,2)}`.
    pub fn reduced_norm(&self, n: usize) -> F {
        let q = &self.ops.q;
        self.a
            .neg()
            .pow(n as u32)
            .mul(&F::one().sub(q))
            .mul(&q_pochhammer(q, q, n))
            .mul(&self.q_pow((n * n.saturating_sub(1) / 2) as i64))
    }

    /// `‖Uₙ‖² = Z hₙ`.
    pub fn norm(&self, n: usize) -> F {
        self.z.mul(&self.reduced_norm(n))
    }

    /// `σ(x) = (x - 1)(x - a)`.
    pub fn sigma(&self) -> Poly<F> {
        Poly::linear_root(&F::one()).mul(&Poly::linear_root(&self.a))
    }

    pub fn structure_coeffs(&self, n: usize) -> StructureCoeffs<F> {
        let nq = self.qn(n as i64);
        StructureCoeffs {
            sigma: self.sigma(),
            alpha_bar: self.q_pow(1 - n as i64).mul(&nq),
            beta_bar: self.a.add(&F::one()).mul(&self.ops.q).mul(&nq),
            gamma_bar: self.a.mul(&self.q_pow(n as i64)).mul(&nq),
        }
    }

    pub fn equation_data(&self, n: usize) -> EquationData<F> {
        let inv = F::one().sub(&self.ops.q).inv().expect("q differs from 1");
        let tau = Poly::linear_root(&self.a.add(&F::one())).scale(&inv);
        let n = n as i64;
        let eigenvalue = self.qn(n).mul(&self.qn(1 - n).sub(&inv));
        EquationData { tau, eigenvalue }
    }

    /// Right-hand side of `𝒟_q^k Uₙ = [n]^{(k)} U_{n-k}`.
    pub fn forward_shift(&self, n: usize, k: usize) -> Result<Poly<F>> {
        if k > n {
            return Err(Error::IndexOutOfRange(format!("forward shift k = {k} > n = {n}")));
        }
        let falling = (0..k).fold(F::one(), |acc, i| acc.mul(&self.qn((n - i) as i64)));
        Ok(self.poly(n - k).scale(&falling))
    }

    /// `σ 𝒟_{q⁻¹} Uₙ - (ᾱₙ U_{n+1} + β̄ₙ Uₙ + γ̄ₙ U_{n-1})`.
    pub fn structure_residual(&self, n: usize) -> Poly<F> {
        let s = self.structure_coeffs(n);
        let lhs = s.sigma.mul(&self.ops.deriv(&self.poly(n), Ell::Minus));
        let rhs = self
            .poly(n + 1)
            .scale(&s.alpha_bar)
            .add(&self.poly(n).scale(&s.beta_bar))
            .add(&self.poly_signed(n as i64 - 1).scale(&s.gamma_bar));
        lhs.sub(&rhs)
    }

    /// Left-hand side of the classical second-order equation.
    pub fn second_order_residual(&self, n: usize) -> Poly<F> {
        let u = self.poly(n);
        let e = self.equation_data(n);
        let d_plus = self.ops.deriv(&u, Ell::Plus);
        let dd = self.ops.deriv(&self.ops.deriv(&u, Ell::Minus), Ell::Plus);
        self.sigma()
            .mul(&dd)
            .add(&e.tau.mul(&d_plus))
            .add(&u.scale(&e.eigenvalue))
    }

    /// `K_n^{(i,j')}(x, y) = Σ_{k≤n} 𝒟^i Uₖ(x) 𝒟^{j'} Uₖ(y) / (Z hₖ)`.
    pub fn kernel_partial(&self, n: usize, i: usize, jp: usize) -> BiPoly<F> {
        let mut out = BiPoly::zero();
        for k in 0..=n {
            let u = self.poly(k);
            let dx = self.ops.deriv_iter(&u, Ell::Plus, i);
            let dy = self.ops.deriv_iter(&u, Ell::Plus, jp);
            if dx.is_zero() || dy.is_zero() {
                continue;
            }
            let w = self.norm(k).inv().expect("norms are nonzero");
            out = out.add(&BiPoly::product(&dx, &dy).scale(&w));
        }
        out
    }

    /// The Christoffel–Darboux kernel as the defining sum.
    pub fn cd_kernel(&self, n: usize) -> BiPoly<F> {
        self.kernel_partial(n, 0, 0)
    }

    /// The Christoffel–Darboux quotient
    /// `(U_{n+1}(x) Uₙ(y) - U_{n+1}(y) Uₙ(x)) / ((x - y) Z hₙ)`.
    pub fn cd_kernel_quotient(&self, n: usize) -> Result<BiPoly<F>> {
        let (u1, u0) = (self.poly(n + 1), self.poly(n));
        let top = BiPoly::product(&u1, &u0).sub(&BiPoly::product(&u0, &u1));
        let w = self.norm(n).inv().ok_or(Error::DivisionByZero)?;
        Ok(top.div_x_minus_y()?.scale(&w))
    }

    /// `K_n^{(0,j')}(x, y0)` as a polynomial in `x`; zero for `n < 0`.
    pub fn kernel_eval_y(&self, n: i64, jp: usize, y0: &F) -> Poly<F> {
        let mut out = Poly::zero();
        for k in 0..=n.max(-1) {
            let k = k as usize;
            let c = self.ops.deriv_at(&self.poly(k), Ell::Plus, jp, y0);
            if c.is_zero() {
                continue;
            }
            let w = c.checked_div(&self.norm(k)).expect("norms are nonzero");
            out = out.add(&self.poly(k).scale(&w));
        }
        out
    }

    /// `K_n^{(i,j')}(x0, y0)`; zero for `n < 0`.
    pub fn kernel_eval_xy(&self, n: i64, i: usize, jp: usize, x0: &F, y0: &F) -> F {
        let mut out = F::zero();
        for k in 0..=n.max(-1) {
            let k = k as usize;
            let u = self.poly(k);
            let t = self
                .ops
                .deriv_at(&u, Ell::Plus, i, x0)
                .mul(&self.ops.deriv_at(&u, Ell::Plus, jp, y0));
            if !t.is_zero() {
                out = out.add(&t.checked_div(&self.norm(k)).expect("norms are nonzero"));
            }
        }
        out
    }

    /// Numerator and denominator of the closed-form kernel coefficients at `y0`:
    /// `𝒜ₙ(x, y0) = [j]! T_j[U_{n-1}](x) / (Z h_{n-1} (x ⊟ y0)^{j+1})` and
    /// `ℬₙ` with `-Uₙ`, where `T_j` is the order-`j` q-Taylor polynomial at `y0`.
    fn kernel_ab_parts(&self, n: usize, y0: &F) -> Result<(Poly<F>, Poly<F>, Poly<F>)> {
        if n == 0 {
            return Err(Error::IndexOutOfRange("kernel coefficients need n ≥ 1".into()));
        }
        let j = self.ctx.j;
        let scale = q_factorial_in(&self.ops.q, j).checked_div(&self.norm(n - 1))?;
        let ta = self.ops.taylor(&self.poly(n - 1), y0, j).scale(&scale);
        let tb = self.ops.taylor(&self.poly(n), y0, j).scale(&scale).neg();
        let den = boxminus_pow(&self.ops.q, y0, j + 1);
        Ok((ta, tb, den))
    }

    /// `(𝒜ₙ(x0, y0), ℬₙ(x0, y0))`.
    pub fn kernel_ab_at(&self, n: usize, y0: &F, x0: &F) -> Result<(F, F)> {
        let (ta, tb, den) = self.kernel_ab_parts(n, y0)?;
        let d = den.eval(x0);
        if d.is_zero() {
            return Err(Error::ZeroDenominator(format!("kernel coefficient pole at x = {x0}")));
        }
        Ok((ta.eval(x0).checked_div(&d)?, tb.eval(x0).checked_div(&d)?))
    }

    /// Expansion `p = Σ cₖ Uₖ`, by peeling off leading terms.
    pub fn expand(&self, p: &Poly<F>) -> Vec<F> {
        let Some(d) = p.degree() else {
            return Vec::new();
        };
        let mut rest = p.clone();
        let mut out = vec![F::zero(); d + 1];
        for k in (0..=d).rev() {
            let c = rest.coeff(k);
            if !c.is_zero() {
                rest = rest.sub(&self.poly(k).scale(&c));
            }
            out[k] = c;
        }
        out
    }

    /// `∫ f g dα`, exact through the basis expansion.
    pub fn integral(&self, f: &Poly<F>, g: &Poly<F>) -> F {
        let (cf, cg) = (self.expand(f), self.expand(g));
        cf.iter()
            .zip(cg.iter())
            .enumerate()
            .filter(|(_, (a, b))| !a.is_zero() && !b.is_zero())
            .fold(F::zero(), |acc, (k, (a, b))| acc.add(&a.mul(b).mul(&self.norm(k))))
    }
}

impl<F: ZField + ExactField> AscFamily<F> {
    /// `(𝒜ₙ(x, y0), ℬₙ(x, y0))` as reduced rational functions of `x`.
    pub fn kernel_ab_coeffs(&self, n: usize, y0: &F) -> Result<(RatFun<F>, RatFun<F>)> {
        let (ta, tb, den) = self.kernel_ab_parts(n, y0)?;
        Ok((RatFun::new(ta, den.clone())?, RatFun::new(tb, den)?))
    }

    /// `𝒜ₙ Uₙ + ℬₙ U_{n-1}`; reduces to `K_{n-1}^{(0,j)}(x, y0)`.
    pub fn kernel_ab_combination(&self, n: usize, y0: &F) -> Result<RatFun<F>> {
        let (a, b) = self.kernel_ab_coeffs(n, y0)?;
        Ok(a.mul_poly(&self.poly(n)).add(&b.mul_poly(&self.poly(n - 1))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Field, ZRat};

    fn family(q: &str, a: &str, j: usize) -> AscFamily<ZRat> {
        AscFamily::new(&QContext::parse(q, a, "1", "1", j).unwrap()).unwrap()
    }

    fn rp(v: &[(i64, i64)]) -> Poly<ZRat> {
        Poly::new(v.iter().map(|&(n, d)| ZRat::from_rational(&rat(n, d))).collect())
    }

    #[test]
    fn low_degrees_match_closed_forms() {
        let f = family("1/2", "-1", 2);
        assert_eq!(f.poly(0), Poly::one());
        assert_eq!(f.poly(1), rp(&[(0, 1), (1, 1)]));
        // x² + (-aq - a - q - 1) x + a²q + aq + a + q at (1/2, -1)
        assert_eq!(f.poly(2), rp(&[(-1, 2), (0, 1), (1, 1)]));
        let g = family("1/3", "-2", 2);
        // -aq-a-q-1 = 2/3+2-1/3-1 = 4/3; a²q+aq+a+q = 4/3-2/3-2+1/3 = -1
        assert_eq!(g.poly(2), rp(&[(-1, 1), (4, 3), (1, 1)]));
    }

    #[test]
    fn hypergeometric_form_agrees() {
        for (q, a) in [("1/2", "-1"), ("1/3", "-2"), ("2/5", "-3/4")] {
            let f = family(q, a, 1);
            for n in 0..=10 {
                assert_eq!(f.poly(n), f.poly_hypergeometric(n), "n = {n}");
            }
        }
    }

    #[test]
    fn forward_shift_example() {
        let f = family("1/2", "-1", 1);
        assert_eq!(f.forward_shift(2, 1).unwrap(), rp(&[(0, 1), (3, 2)]));
        assert_eq!(f.forward_shift(3, 3).unwrap(), Poly::constant(ZRat::from_rational(&rat(21, 8))));
        assert!(f.forward_shift(1, 2).is_err());
    }

    #[test]
    fn structure_and_equation_hold() {
        let f = family("1/3", "-2", 1);
        for n in 0..=8 {
            assert!(f.structure_residual(n).is_zero(), "n = {n}");
            assert!(f.second_order_residual(n).is_zero(), "n = {n}");
        }
        assert!(f.equation_data(0).eigenvalue.is_zero());
    }

    #[test]
    fn kernel_forms_agree() {
        let f = family("1/2", "-1", 1);
        let h0 = f.norm(0).inv().unwrap();
        assert_eq!(f.cd_kernel(0), BiPoly::product(&Poly::one(), &Poly::constant(h0)));
        for n in 0..=5 {
            let k = f.cd_kernel(n);
            assert_eq!(k, f.cd_kernel_quotient(n).unwrap());
            assert_eq!(k, k.swap());
        }
        // 𝒟U₁ = 1, so K₁^{(1,1)} = 1/(Z h₁).
        let k11 = f.kernel_partial(1, 1, 1);
        let w = f.norm(1).inv().unwrap();
        assert_eq!(k11, BiPoly::product(&Poly::one(), &Poly::constant(w)));
        assert!(f.kernel_partial(2, 0, 3).is_zero());
    }

    // The sum form puts the first order on x. Differentiating x `jp` times and
    // y `i` times gives the transposed kernel instead.
    #[test]
    fn kernel_orders_follow_the_sum_form() {
        let f = family("1/2", "-1", 1);
        let q = f.q().clone();
        let diff = |k: &BiPoly<ZRat>, ox: usize, oy: usize| {
            let kx = (0..ox).fold(k.clone(), |acc, _| acc.q_derivative_x(&q));
            (0..oy).fold(kx, |acc, _| acc.q_derivative_y(&q))
        };
        let k = f.cd_kernel(4);
        assert_eq!(diff(&k, 0, 2), f.kernel_partial(4, 0, 2));
        assert_eq!(diff(&k, 1, 2), f.kernel_partial(4, 1, 2));
        assert_eq!(diff(&k, 2, 1), f.kernel_partial(4, 2, 1));
        assert_ne!(diff(&k, 2, 1), f.kernel_partial(4, 1, 2));
    }

    #[test]
    fn kernel_closed_form_reduces_to_polynomial() {
        for j in 1..=3 {
            let f = family("1/2", "-1", j);
            for n in 1..=5 {
                for y0 in [f.a().clone(), ZRat::one()] {
                    let c = f.kernel_ab_combination(n, &y0).unwrap();
                    assert_eq!(c.to_poly(), Some(f.kernel_eval_y(n as i64 - 1, j, &y0)), "j={j} n={n}");
                }
            }
        }
    }

    #[test]
    fn expansion_inverts_the_basis() {
        let f = family("1/2", "-1", 1);
        let x = Poly::<ZRat>::x();
        assert_eq!(f.expand(&x), vec![ZRat::zero(), ZRat::one()]);
        let x2 = x.mul(&x);
        let c = f.expand(&x2);
        // x² = U₂ + (β₀+β₁)U₁ + (β₀² + γ₁)U₀
        assert_eq!(c[1], f.beta(0).add(&f.beta(1)));
        assert_eq!(c[0], f.beta(0).mul(&f.beta(0)).add(&f.gamma(1)));
        assert_eq!(f.integral(&Poly::one(), &Poly::one()), f.z().scale(&rat(1, 2)));
    }
}
