//! First-order structure relations, ladder operators, the three-term
//! recurrence with rational coefficients and the two second-order holonomic
//! q-difference equations, for both `ℓ = -1` (`𝒟_{q⁻¹}`) and `ℓ = +1` (`𝒟_q`).
//!
//! Every coefficient is assembled literally from its closed formula and then
//! checked by reducing a residual; nothing here is trusted.

use crate::error::{Error, Result};
use crate::fault::Fault;
use crate::memo::Memo;
use crate::qcore::QContext;
use crate::qpoly::{Ell, Poly, RatFun};
use crate::scalar::{ExactField, ZField};
use crate::sobolev::{ConnectionCoeffs, SobolevFamily};

/// `σ_ℓ 𝒟_{q^ℓ} 𝕌ₙ = ℰ Uₙ + ℱ U_{n-1}` (first slot) and the same for
/// `𝕌_{n-1}` (second slot). For `ℓ = -1` the slots are formulas 1 and 2,
/// for `ℓ = +1` formulas 3 and 4.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionCoeffs<F> {
    pub ell: Ell,
    pub e: [RatFun<F>; 2],
    pub f: [RatFun<F>; 2],
    pub sigma_ell: Poly<F>,
}

/// `Θ = σ_ℓ det Bₙ` and `Ξ[i][s]` for `i ∈ {1, 2}` (stored at `i - 1`) and
/// expansion slot `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct XiTheta<F> {
    pub theta: RatFun<F>,
    pub xi: [[RatFun<F>; 2]; 2],
}

/// `α 𝕌_{n+1} = β 𝕌ₙ + γ 𝕌_{n-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TtrrCoeffs<F> {
    pub alpha: RatFun<F>,
    pub beta: RatFun<F>,
    pub gamma: RatFun<F>,
}

/// Coefficients of both holonomic equations.
#[derive(Clone, Debug, PartialEq)]
pub struct HolonomicCoeffs<F> {
    pub r: RatFun<F>,
    pub s: RatFun<F>,
    pub t: RatFun<F>,
    pub r_bar: RatFun<F>,
    pub s_bar: RatFun<F>,
    pub t_bar: RatFun<F>,
}

/// Which ladder operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LadderKind {
    Annihilate,
    Create,
}

/// Structure-relation machinery over an exact field.
#[derive(Debug)]
pub struct Ladder<F> {
    fam: SobolevFamily<F>,
    raw_first: Memo<(usize, Ell), (RatFun<F>, RatFun<F>)>,
    xi: Memo<(usize, Ell), XiTheta<F>>,
}

fn eps<F: ExactField>() -> RatFun<F> {
    RatFun::constant(Fault::epsilon())
}

impl<F: ZField + ExactField> Ladder<F> {
    pub fn new(fam: SobolevFamily<F>) -> Self {
        Ladder { fam, raw_first: Memo::new(), xi: Memo::new() }
    }

    pub fn from_ctx(ctx: &QContext, fault: Option<Fault>) -> Result<Self> {
        Ok(Ladder::new(SobolevFamily::new(ctx)?.with_fault(fault)))
    }

    pub fn family(&self) -> &SobolevFamily<F> {
        &self.fam
    }

    fn faulted(&self, target: Fault) -> bool {
        self.fam.fault() == Some(target)
    }

    fn x() -> Poly<F> {
        Poly::x()
    }

    /// `σ_ℓ`: `σ` for `ℓ = -1`, `1` for `ℓ = +1`.
    pub fn sigma_ell(&self, ell: Ell) -> Poly<F> {
        match ell {
            Ell::Minus => self.fam.asc().sigma(),
            Ell::Plus => Poly::one(),
        }
    }

    /// First-slot expansion coefficients before any fault is applied.
    fn first_slot(&self, n: usize, ell: Ell) -> Result<(RatFun<F>, RatFun<F>)> {
        self.raw_first.get_or_try((n, ell), || {
            let asc = self.fam.asc();
            let ops = asc.ops();
            let (c1, d1) = self.fam.connection_first(n)?;
            let c1s = ops.dilate_rat(&c1, ell);
            let d1s = ops.dilate_rat(&d1, ell);
            let dc1 = ops.deriv_rat(&c1, ell)?;
            let dd1 = ops.deriv_rat(&d1, ell)?;
            let x = Self::x();
            let beta_prev = Poly::constant(if n >= 1 { asc.beta(n - 1) } else { F::zero() });
            let g_prev = asc.gamma(n.saturating_sub(1));
            let (e, f) = match ell {
                Ell::Minus => {
                    let s = asc.structure_coeffs(n);
                    let sp = asc.structure_coeffs(n.saturating_sub(1));
                    let ratio = if n >= 2 { sp.gamma_bar.checked_div(&g_prev)? } else { F::zero() };
                    let sigma = RatFun::from_poly(s.sigma.clone());
                    let lin = x.sub(&Poly::constant(asc.beta(n))).scale(&s.alpha_bar);
                    let lin = lin.add(&Poly::constant(s.beta_bar.clone()));
                    let e = c1s
                        .mul_poly(&lin)
                        .add(&sigma.mul(&dc1))
                        .add(&d1s.scale(&sp.alpha_bar.sub(&ratio)));
                    let c_u1 = s.gamma_bar.sub(&s.alpha_bar.mul(&asc.gamma(n)));
                    let lin1 = Poly::constant(sp.beta_bar).add(&x.sub(&beta_prev).scale(&ratio));
                    let f = c1s.scale(&c_u1).add(&sigma.mul(&dd1)).add(&d1s.mul_poly(&lin1));
                    (e, f)
                }
                Ell::Plus => {
                    let r = if n >= 2 { asc.qn(n as i64 - 1).checked_div(&g_prev)? } else { F::zero() };
                    let e = dc1.sub(&d1s.scale(&r));
                    let f = c1s
                        .scale(&asc.qn(n as i64))
                        .add(&d1s.mul_poly(&x.sub(&beta_prev).scale(&r)))
                        .add(&dd1);
                    (e, f)
                }
            };
            Ok((e, f))
        })
    }

    fn slot_faults(ell: Ell) -> [(Fault, Fault); 2] {
        match ell {
            Ell::Minus => [(Fault::E1, Fault::F1), (Fault::E2, Fault::F2)],
            Ell::Plus => [(Fault::E3, Fault::F3), (Fault::E4, Fault::F4)],
        }
    }

    fn first_slot_faulted(&self, n: usize, ell: Ell) -> Result<(RatFun<F>, RatFun<F>)> {
        let (mut e, mut f) = self.first_slot(n, ell)?;
        let [(fe, ff), _] = Self::slot_faults(ell);
        if self.faulted(fe) {
            e = e.add(&eps());
        }
        if self.faulted(ff) {
            f = f.add(&eps());
        }
        Ok((e, f))
    }

    /// All expansion coefficients for degree `n ≥ 1`.
    pub fn expansion_coeffs(&self, n: usize, ell: Ell) -> Result<ExpansionCoeffs<F>> {
        if n == 0 {
            return Err(Error::IndexOutOfRange("expansion coefficients need n ≥ 1".into()));
        }
        let (e1, f1) = self.first_slot_faulted(n, ell)?;
        let (mut e2, mut f2) = if n == 1 {
            (RatFun::zero(), RatFun::zero())
        } else {
            let asc = self.fam.asc();
            let (ep, fp) = self.first_slot_faulted(n - 1, ell)?;
            let ginv = asc.gamma(n - 1).inv().ok_or(Error::DivisionByZero)?;
            let e2 = fp.scale(&ginv).neg();
            let shift = Poly::new(vec![asc.beta(n - 1), F::one().neg()]);
            let f2 = ep.add(&e2.mul_poly(&shift));
            (e2, f2)
        };
        let [_, (fe, ff)] = Self::slot_faults(ell);
        if self.faulted(fe) {
            e2 = e2.add(&eps());
        }
        if self.faulted(ff) {
            f2 = f2.add(&eps());
        }
        Ok(ExpansionCoeffs { ell, e: [e1, e2], f: [f1, f2], sigma_ell: self.sigma_ell(ell) })
    }

    fn sob(&self, n: usize) -> Result<Poly<F>> {
        self.fam.sobolev_poly(n)
    }

    fn sob_rat(&self, n: usize) -> Result<RatFun<F>> {
        Ok(RatFun::from_poly(self.sob(n)?))
    }

    fn d_sob(&self, n: usize, ell: Ell) -> Result<RatFun<F>> {
        Ok(RatFun::from_poly(self.fam.asc().ops().deriv(&self.sob(n)?, ell)))
    }

    /// Residuals of both derivative expansions.
    pub fn expansion_residuals(&self, n: usize, ell: Ell) -> Result<(RatFun<F>, RatFun<F>)> {
        let lc = self.expansion_coeffs(n, ell)?;
        let asc = self.fam.asc();
        let (u, u1) = (asc.poly(n), asc.poly(n - 1));
        let lhs = |m: usize| -> Result<RatFun<F>> { Ok(self.d_sob(m, ell)?.mul_poly(&lc.sigma_ell)) };
        let r1 = lhs(n)?.sub(&lc.e[0].mul_poly(&u)).sub(&lc.f[0].mul_poly(&u1));
        let r2 = lhs(n - 1)?.sub(&lc.e[1].mul_poly(&u)).sub(&lc.f[1].mul_poly(&u1));
        Ok((r1, r2))
    }

    /// `Θ` and the four `Ξ` for degree `n ≥ 1`.
    pub fn xi_theta(&self, n: usize, ell: Ell) -> Result<XiTheta<F>> {
        let mut xt = self.xi.get_or_try((n, ell), || {
            let cc = self.fam.connection_coeffs(n)?;
            if cc.det.is_zero() {
                return Err(Error::DegenerateConnection { n });
            }
            let lc = self.expansion_coeffs(n, ell)?;
            let ConnectionCoeffs { c1, d1, c2, d2, det } = cc;
            let theta = det.mul_poly(&lc.sigma_ell);
            let xi1 = |s: usize| lc.e[s].mul(&d1).sub(&c1.mul(&lc.f[s])).neg();
            let xi2 = |s: usize| lc.e[s].mul(&d2).sub(&c2.mul(&lc.f[s]));
            Ok(XiTheta { theta, xi: [[xi1(0), xi1(1)], [xi2(0), xi2(1)]] })
        })?;
        if self.faulted(Fault::Theta) {
            xt.theta = xt.theta.add(&eps());
        }
        if self.faulted(Fault::Xi) {
            xt.xi[1][0] = xt.xi[1][0].add(&eps());
        }
        Ok(xt)
    }

    /// Residuals of the two structure relations
    /// `Θ𝒟𝕌ₙ = Ξ₂𝕌ₙ + Ξ₁𝕌_{n-1}` and its companion for `𝕌_{n-1}`.
    pub fn structure_residuals(&self, n: usize, ell: Ell) -> Result<(RatFun<F>, RatFun<F>)> {
        let xt = self.xi_theta(n, ell)?;
        let (s, s1) = (self.sob_rat(n)?, self.sob_rat(n - 1)?);
        let r1 = xt
            .theta
            .mul(&self.d_sob(n, ell)?)
            .sub(&xt.xi[1][0].mul(&s))
            .sub(&xt.xi[0][0].mul(&s1));
        let r2 = xt
            .theta
            .mul(&self.d_sob(n - 1, ell)?)
            .sub(&xt.xi[1][1].mul(&s))
            .sub(&xt.xi[0][1].mul(&s1));
        Ok((r1, r2))
    }

    /// The annihilation operator `Θ𝒟 - Ξ_{2,1}` or the creation operator
    /// `Θ𝒟 - Ξ_{1,2}` of degree `n` applied to `g`.
    pub fn operator_apply(&self, n: usize, ell: Ell, kind: LadderKind, g: &RatFun<F>) -> Result<RatFun<F>> {
        let xt = self.xi_theta(n, ell)?;
        let dg = self.fam.asc().ops().deriv_rat(g, ell)?;
        let shift = match kind {
            LadderKind::Annihilate => &xt.xi[1][0],
            LadderKind::Create => &xt.xi[0][1],
        };
        Ok(xt.theta.mul(&dg).sub(&shift.mul(g)))
    }

    /// `𝔞 𝕌ₙ - Ξ_{1,1} 𝕌_{n-1}` or `𝔞† 𝕌_{n-1} - Ξ_{2,2} 𝕌ₙ`.
    pub fn ladder_apply(&self, n: usize, ell: Ell, kind: LadderKind) -> Result<RatFun<F>> {
        let xt = self.xi_theta(n, ell)?;
        let (s, s1) = (self.sob_rat(n)?, self.sob_rat(n - 1)?);
        Ok(match kind {
            LadderKind::Annihilate => self.operator_apply(n, ell, kind, &s)?.sub(&xt.xi[0][0].mul(&s1)),
            LadderKind::Create => self.operator_apply(n, ell, kind, &s1)?.sub(&xt.xi[1][1].mul(&s)),
        })
    }

    /// `Ξ_{1,1} 𝔞†(𝔞𝕌ₙ / Ξ_{1,1}) - Ξ_{1,1} Ξ_{2,2} 𝕌ₙ`.
    pub fn ladder_composition(&self, n: usize, ell: Ell) -> Result<RatFun<F>> {
        let xt = self.xi_theta(n, ell)?;
        let b = &xt.xi[0][0];
        if b.is_zero() {
            return Err(Error::DegenerateXi { n, ell: ell.sign() });
        }
        let s = self.sob_rat(n)?;
        let lowered = self.operator_apply(n, ell, LadderKind::Annihilate, &s)?.div(b)?;
        let raised = self.operator_apply(n, ell, LadderKind::Create, &lowered)?;
        Ok(b.mul(&raised).sub(&b.mul(&xt.xi[1][1]).mul(&s)))
    }

    /// Three-term recurrence coefficients linking `𝕌_{n+1}, 𝕌ₙ, 𝕌_{n-1}`.
    pub fn ttrr_coeffs(&self, n: usize, ell: Ell) -> Result<TtrrCoeffs<F>> {
        let cur = self.xi_theta(n, ell)?;
        let next = self.xi_theta(n + 1, ell)?;
        let mut alpha = cur.theta.mul(&next.xi[1][1]);
        let mut beta = next.theta.mul(&cur.xi[1][0]).sub(&cur.theta.mul(&next.xi[0][1]));
        let mut gamma = next.theta.mul(&cur.xi[0][0]);
        if self.faulted(Fault::TtrrAlpha) {
            alpha = alpha.add(&eps());
        }
        if self.faulted(Fault::TtrrBeta) {
            beta = beta.add(&eps());
        }
        if self.faulted(Fault::TtrrGamma) {
            gamma = gamma.add(&eps());
        }
        if alpha.is_zero() {
            return Err(Error::DegenerateTtrr { n, ell: ell.sign() });
        }
        Ok(TtrrCoeffs { alpha, beta, gamma })
    }

    pub fn ttrr_residual(&self, n: usize, ell: Ell) -> Result<RatFun<F>> {
        let t = self.ttrr_coeffs(n, ell)?;
        Ok(t.alpha
            .mul(&self.sob_rat(n + 1)?)
            .sub(&t.beta.mul(&self.sob_rat(n)?))
            .sub(&t.gamma.mul(&self.sob_rat(n - 1)?)))
    }

    /// `(β/α, γ/α)`; with no masses these are `(x - βₙ, -γₙ)`.
    pub fn ttrr_ratios(&self, n: usize, ell: Ell) -> Result<(RatFun<F>, RatFun<F>)> {
        let t = self.ttrr_coeffs(n, ell)?;
        Ok((t.beta.div(&t.alpha)?, t.gamma.div(&t.alpha)?))
    }

    /// Coefficients of both holonomic equations for degree `n ≥ 1`.
    pub fn holonomic_coeffs(&self, n: usize, ell: Ell) -> Result<HolonomicCoeffs<F>> {
        let xt = self.xi_theta(n, ell)?;
        let ops = self.fam.asc().ops();
        let [[b, e], [a, c]] = &xt.xi;
        let theta = &xt.theta;
        if b.is_zero() {
            return Err(Error::DegenerateXi { n, ell: ell.sign() });
        }
        let p = ops.base(ell).clone();
        let pm1x = RatFun::from_poly(Poly::monomial(p.sub(&F::one()), 1));
        let w = theta.add(&pm1x.mul(e));
        let db_b = ops.deriv_rat(b, ell)?.div(b)?;
        let mut r = theta.mul(&ops.dilate_rat(theta, ell));
        let mut s = theta
            .mul(&ops.deriv_rat(theta, ell)?.sub(&ops.dilate_rat(a, ell)).sub(e))
            .sub(&theta.mul(&w).mul(&db_b));
        let mut t = e
            .mul(a)
            .sub(&theta.mul(&ops.deriv_rat(a, ell)?))
            .add(&a.mul(&w).mul(&db_b))
            .sub(&ops.dilate_rat(b, ell).mul(c));
        if self.faulted(Fault::HoloR) {
            r = r.add(&eps());
        }
        if self.faulted(Fault::HoloS) {
            s = s.add(&eps());
        }
        if self.faulted(Fault::HoloT) {
            t = t.add(&eps());
        }
        let back = ell.flip();
        let r_bar = ops.dilate_rat(&r, back);
        let t_bar = ops.dilate_rat(&t, back);
        let pinv_m1x = RatFun::from_poly(Poly::monomial(ops.base(back).sub(&F::one()), 1));
        let s_bar = ops.dilate_rat(&s, back).add(&pinv_m1x.mul(&t_bar));
        Ok(HolonomicCoeffs { r, s, t, r_bar, s_bar, t_bar })
    }

    /// `ℛ 𝒟²_{q^ℓ} 𝕌ₙ + 𝒮 𝒟_{q^ℓ} 𝕌ₙ + 𝒯 𝕌ₙ`.
    pub fn holonomic1_residual(&self, n: usize, ell: Ell) -> Result<RatFun<F>> {
        let h = self.holonomic_coeffs(n, ell)?;
        let ops = self.fam.asc().ops();
        let u = self.sob(n)?;
        let d1 = ops.deriv(&u, ell);
        let d2 = ops.deriv(&d1, ell);
        Ok(h.r.mul_poly(&d2).add(&h.s.mul_poly(&d1)).add(&h.t.mul_poly(&u)))
    }

    /// `ℛ̄ 𝒟_{q^{-ℓ}}𝒟_{q^ℓ} 𝕌ₙ + 𝒮̄ 𝒟_{q^{-ℓ}} 𝕌ₙ + 𝒯̄ 𝕌ₙ`.
    pub fn holonomic2_residual(&self, n: usize, ell: Ell) -> Result<RatFun<F>> {
        let h = self.holonomic_coeffs(n, ell)?;
        let ops = self.fam.asc().ops();
        let u = self.sob(n)?;
        let back = ell.flip();
        let dd = ops.deriv(&ops.deriv(&u, ell), back);
        let db = ops.deriv(&u, back);
        Ok(h.r_bar.mul_poly(&dd).add(&h.s_bar.mul_poly(&db)).add(&h.t_bar.mul_poly(&u)))
    }

    /// With no masses, the `ℓ = -1` second holonomic equation uses the
    /// operator pair of the classical equation; checks that its coefficient
    /// triple is a common rational multiple of `(σ, τ, λₙ)`. The first
    /// equation uses `𝒟²_{q⁻¹}` instead and is not a multiple in general.
    pub fn holonomic_classical_multiple(&self, n: usize) -> Result<bool> {
        let h = self.holonomic_coeffs(n, Ell::Minus)?;
        let asc = self.fam.asc();
        let eq = asc.equation_data(n);
        let sigma = RatFun::from_poly(asc.sigma());
        let tau = RatFun::from_poly(eq.tau);
        if eq.eigenvalue.is_zero() {
            return Ok(h.t_bar.is_zero() && h.r_bar.mul(&tau) == h.s_bar.mul(&sigma));
        }
        let factor = h.t_bar.scale(&eq.eigenvalue.inv().ok_or(Error::DivisionByZero)?);
        // The second difference kills a linear polynomial, so at n = 1 the
        // leading coefficient is unconstrained.
        let lead_ok = n == 1 || factor.mul(&sigma) == h.r_bar;
        Ok(lead_ok && factor.mul(&tau) == h.s_bar)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Field, ZRat};

    fn ladder(q: &str, a: &str, l: &str, m: &str, j: usize) -> Ladder<ZRat> {
        Ladder::from_ctx(&QContext::parse(q, a, l, m, j).unwrap(), None).unwrap()
    }

    #[test]
    fn expansion_and_structure_relations() {
        let l = ladder("1/2", "-1", "1", "1", 2);
        for ell in Ell::BOTH {
            for n in 1..=4 {
                let (r1, r2) = l.expansion_residuals(n, ell).unwrap();
                assert!(r1.is_zero() && r2.is_zero(), "expansion n={n} ell={ell}");
                let (s1, s2) = l.structure_residuals(n, ell).unwrap();
                assert!(s1.is_zero() && s2.is_zero(), "structure n={n} ell={ell}");
                for kind in [LadderKind::Annihilate, LadderKind::Create] {
                    assert!(l.ladder_apply(n, ell, kind).unwrap().is_zero());
                }
                assert!(l.ttrr_residual(n, ell).unwrap().is_zero(), "ttrr n={n} ell={ell}");
            }
        }
    }

    #[test]
    fn holonomic_equations() {
        let l = ladder("1/3", "-2", "1/2", "2", 2);
        for ell in Ell::BOTH {
            for n in 1..=3 {
                assert!(l.holonomic1_residual(n, ell).unwrap().is_zero(), "n={n} ell={ell}");
                assert!(l.holonomic2_residual(n, ell).unwrap().is_zero(), "n={n} ell={ell}");
            }
        }
    }

    #[test]
    fn massless_limit_is_classical() {
        let l = ladder("1/2", "-1", "0", "0", 2);
        let asc = l.family().asc();
        for ell in Ell::BOTH {
            for n in 1..=4 {
                let (b, g) = l.ttrr_ratios(n, ell).unwrap();
                let lin = Poly::new(vec![asc.beta(n).neg(), ZRat::one()]);
                assert_eq!(b, RatFun::from_poly(lin));
                assert_eq!(g, RatFun::constant(asc.gamma(n).neg()));
            }
        }
        for n in 1..=4 {
            assert!(l.holonomic_classical_multiple(n).unwrap());
        }
    }

    #[test]
    fn injected_fault_is_visible() {
        let ctx = QContext::parse("1/2", "-1", "1", "1", 2).unwrap();
        let l = Ladder::<ZRat>::from_ctx(&ctx, Some(Fault::E3)).unwrap();
        let (r1, _) = l.expansion_residuals(3, Ell::Plus).unwrap();
        assert!(!r1.is_zero());
    }
}
