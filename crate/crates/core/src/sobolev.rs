//! Sobolev-type extension: the inner product with `j`-th q-derivative
//! masses at `a` and `1`, the Gram system, the polynomials `𝕌ₙ` by three
//! routes (kernel form, connection form, Gram–Schmidt), the inverse
//! connection and the ₃φ₂ representation.

use crate::asc::AscFamily;
use crate::error::{Error, Result};
use crate::fault::Fault;
use crate::memo::Memo;
use crate::qcore::{q_pochhammer, QContext};
use crate::qpoly::{Ell, Poly, RatFun};
use crate::scalar::{ExactField, Field, ZField};

/// The 2×2 system `A X = b` for the two Cramer unknowns.
#[derive(Clone, Debug, PartialEq)]
pub struct GramSystem<F> {
    pub a: [[F; 2]; 2],
    pub b: [F; 2],
    pub deltas: [F; 2],
}

impl<F: Field> GramSystem<F> {
    pub fn det(&self) -> F {
        self.a[0][0].mul(&self.a[1][1]).sub(&self.a[0][1].mul(&self.a[1][0]))
    }
}

/// `𝕌ₙ = 𝒞₁ Uₙ + 𝒟₁ U_{n-1}`, `𝕌_{n-1} = 𝒞₂ Uₙ + 𝒟₂ U_{n-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectionCoeffs<F> {
    pub c1: RatFun<F>,
    pub d1: RatFun<F>,
    pub c2: RatFun<F>,
    pub d2: RatFun<F>,
    pub det: RatFun<F>,
}

/// `ψₙ(x0)` and `ϑₙ(x0)` of the ₃φ₂ representation.
#[derive(Clone, Debug, PartialEq)]
pub struct HypergeomAux<F> {
    pub psi: F,
    pub vartheta: F,
}

/// The Sobolev-type orthogonal family for one context.
#[derive(Debug)]
pub struct SobolevFamily<F> {
    asc: AscFamily<F>,
    lambda: F,
    mu: F,
    one: F,
    fault: Option<Fault>,
    gram: Memo<usize, GramSystem<F>>,
    polys: Memo<usize, Poly<F>>,
    gs: Memo<usize, Poly<F>>,
    first: Memo<usize, (RatFun<F>, RatFun<F>)>,
}

impl<F: ZField> SobolevFamily<F> {
    pub fn new(ctx: &QContext) -> Result<Self> {
        Ok(SobolevFamily {
            asc: AscFamily::new(ctx)?,
            lambda: F::from_rational(&ctx.lambda),
            mu: F::from_rational(&ctx.mu),
            one: F::one(),
            fault: None,
            gram: Memo::new(),
            polys: Memo::new(),
            gs: Memo::new(),
            first: Memo::new(),
        })
    }

    /// Same family with one coefficient formula corrupted.
    pub fn with_fault(mut self, fault: Option<Fault>) -> Self {
        self.fault = fault;
        self
    }

    pub fn fault(&self) -> Option<Fault> {
        self.fault
    }

    pub fn asc(&self) -> &AscFamily<F> {
        &self.asc
    }

    pub fn ctx(&self) -> &QContext {
        self.asc.ctx()
    }

    pub fn j(&self) -> usize {
        self.ctx().j
    }

    fn dj_at(&self, p: &Poly<F>, x0: &F) -> F {
        self.asc.ops().deriv_at(p, Ell::Plus, self.j(), x0)
    }

    /// `⟨f, g⟩ = ∫ f g dα + λ 𝒟^j f(a) 𝒟^j g(a) + μ 𝒟^j f(1) 𝒟^j g(1)`.
    pub fn inner_product(&self, f: &Poly<F>, g: &Poly<F>) -> F {
        let a = self.asc.a();
        let mut out = self.asc.integral(f, g);
        if !self.lambda.is_zero() {
            out = out.add(&self.lambda.mul(&self.dj_at(f, a)).mul(&self.dj_at(g, a)));
        }
        if !self.mu.is_zero() {
            out = out.add(&self.mu.mul(&self.dj_at(f, &self.one)).mul(&self.dj_at(g, &self.one)));
        }
        out
    }

    /// Coefficients of `p` in the classical basis.
    pub fn expand_in_asc(&self, p: &Poly<F>) -> Vec<F> {
        self.asc.expand(p)
    }

    /// Gram system for degree `n ≥ 1`.
    pub fn gram_system(&self, n: usize) -> Result<GramSystem<F>> {
        if n == 0 {
            return Err(Error::IndexOutOfRange("gram system needs n ≥ 1".into()));
        }
        self.gram.get_or_try(n, || {
            let j = self.j();
            let m = n as i64 - 1;
            let (a, one) = (self.asc.a(), &self.one);
            let k = |x0: &F, y0: &F| self.asc.kernel_eval_xy(m, j, j, x0, y0);
            let mat = [
                [F::one().add(&self.lambda.mul(&k(a, a))), self.mu.mul(&k(a, one))],
                [self.lambda.mul(&k(one, a)), F::one().add(&self.mu.mul(&k(one, one)))],
            ];
            let u = self.asc.poly(n);
            let b = [self.dj_at(&u, a), self.dj_at(&u, one)];
            let mut sys = GramSystem { a: mat, b, deltas: [F::zero(), F::zero()] };
            let det = sys.det();
            if det.is_zero() {
                return Err(Error::SingularGram { n });
            }
            let d1 = sys.b[0].mul(&sys.a[1][1]).sub(&sys.a[0][1].mul(&sys.b[1]));
            let d2 = sys.a[0][0].mul(&sys.b[1]).sub(&sys.a[1][0].mul(&sys.b[0]));
            sys.deltas = [d1.checked_div(&det)?, d2.checked_div(&det)?];
            Ok(sys)
        })
    }

    /// `𝕌ₙ = Uₙ - λ K_{n-1}^{(0,j)}(x, a) Δ¹ - μ K_{n-1}^{(0,j)}(x, 1) Δ²`.
    pub fn sobolev_poly(&self, n: usize) -> Result<Poly<F>> {
        if n == 0 {
            return Ok(Poly::one());
        }
        self.polys.get_or_try(n, || {
            let u = self.asc.poly(n);
            let sys = self.gram_system(n)?;
            let (j, m) = (self.j(), n as i64 - 1);
            let mut out = u;
            let ca = self.lambda.mul(&sys.deltas[0]);
            if !ca.is_zero() {
                out = out.sub(&self.asc.kernel_eval_y(m, j, self.asc.a()).scale(&ca));
            }
            let c1 = self.mu.mul(&sys.deltas[1]);
            if !c1.is_zero() {
                out = out.sub(&self.asc.kernel_eval_y(m, j, &self.one).scale(&c1));
            }
            Ok(out)
        })
    }

    /// `𝕌ₙ` by monic Gram–Schmidt on `1, x, …, xⁿ` under the inner product.
    pub fn sobolev_poly_gs(&self, n: usize) -> Result<Poly<F>> {
        if n == 0 {
            return Ok(Poly::one());
        }
        self.gs.get_or_try(n, || {
            let xn = Poly::monomial(F::one(), n);
            let mut out = xn.clone();
            for m in 0..n {
                let pm = self.sobolev_poly_gs(m)?;
                let norm = self.inner_product(&pm, &pm);
                if norm.is_zero() {
                    return Err(Error::SingularGram { n: m });
                }
                let c = self.inner_product(&xn, &pm).checked_div(&norm)?;
                out = out.sub(&pm.scale(&c));
            }
            Ok(out)
        })
    }

    /// `⟨𝕌ₙ, 𝕌ₙ⟩`.
    pub fn sobolev_norm(&self, n: usize) -> Result<F> {
        let p = self.sobolev_poly(n)?;
        Ok(self.inner_product(&p, &p))
    }

    /// Fourier coefficients `a_{n,k}`, `k ≤ n`, of `𝕌ₙ` in the classical
    /// basis, from the closed formula
    /// `a_{n,k} = -(λ 𝒟^j𝕌ₙ(a) 𝒟^jUₖ(a) + μ 𝒟^j𝕌ₙ(1) 𝒟^jUₖ(1)) / (Z hₖ)`.
    pub fn fourier_coeffs(&self, n: usize) -> Result<Vec<F>> {
        let p = self.sobolev_poly(n)?;
        let a = self.asc.a();
        let (da, d1) = (self.dj_at(&p, a), self.dj_at(&p, &self.one));
        let mut out = Vec::with_capacity(n + 1);
        for k in 0..n {
            let u = self.asc.poly(k);
            let s = self
                .lambda
                .mul(&da)
                .mul(&self.dj_at(&u, a))
                .add(&self.mu.mul(&d1).mul(&self.dj_at(&u, &self.one)));
            out.push(s.neg().checked_div(&self.asc.norm(k))?);
        }
        out.push(F::one());
        Ok(out)
    }

    /// `(𝒞₁ₙ(x0), 𝒟₁ₙ(x0))`, pointwise.
    pub fn connection_at(&self, n: usize, x0: &F) -> Result<(F, F)> {
        if n == 0 {
            return Ok((F::one(), F::zero()));
        }
        let sys = self.gram_system(n)?;
        let la = self.lambda.mul(&sys.deltas[0]);
        let m1 = self.mu.mul(&sys.deltas[1]);
        let mut c = F::one();
        let mut d = F::zero();
        if !la.is_zero() {
            let (aa, ba) = self.asc.kernel_ab_at(n, self.asc.a(), x0)?;
            c = c.sub(&la.mul(&aa));
            d = d.sub(&la.mul(&ba));
        }
        if !m1.is_zero() {
            let (a1, b1) = self.asc.kernel_ab_at(n, &self.one, x0)?;
            c = c.sub(&m1.mul(&a1));
            d = d.sub(&m1.mul(&b1));
        }
        if self.fault == Some(Fault::C1) {
            c = c.add(&Fault::epsilon());
        }
        if self.fault == Some(Fault::D1) {
            d = d.add(&Fault::epsilon());
        }
        Ok((c, d))
    }

    /// `ψₙ(x0)` and `ϑₙ(x0)`; undefined where `𝒟₁ₙ(x0) = 0`.
    pub fn hypergeom_aux(&self, n: usize, x0: &F) -> Result<HypergeomAux<F>> {
        let undefined = |why: &str| Error::UndefinedAuxiliary(format!("n = {n}, x = {x0}: {why}"));
        if n == 0 {
            return Err(undefined("no auxiliary function at degree 0"));
        }
        let (c1, d1) = self.connection_at(n, x0)?;
        if d1.is_zero() {
            return Err(undefined("connection coefficient 𝒟₁ vanishes"));
        }
        let q = self.asc.q();
        let nn = n as i64;
        let vartheta = self
            .asc
            .a()
            .mul(&q.powi(nn - 2)?)
            .mul(&self.asc.qn(nn))
            .mul(&c1.checked_div(&d1)?)
            .sub(&self.asc.qn(nn - 1));
        let den = F::one().sub(q).mul(&vartheta).add(&F::one());
        let psi = den.inv().ok_or_else(|| undefined("ψ has a pole"))?;
        Ok(HypergeomAux { psi, vartheta })
    }

    /// `𝕌ₙ(x0)` from the terminating ₃φ₂ representation.
    pub fn hypergeom_eval(&self, n: usize, x0: &F) -> Result<F> {
        let undefined = |why: &str| Error::UndefinedAuxiliary(format!("n = {n}, x = {x0}: {why}"));
        let HypergeomAux { psi, .. } = self.hypergeom_aux(n, x0)?;
        let (_, d1) = self.connection_at(n, x0)?;
        let q = self.asc.q().clone();
        let a = self.asc.a().clone();
        let nn = n as i64;
        let psi_q = psi.checked_div(&q)?;
        let q_minus_n = q.powi(-nn)?;
        let ratio = q.checked_div(&a)?;
        let mut sum = F::zero();
        let mut lattice = F::one();
        for k in 0..=n {
            if k > 0 {
                lattice = lattice.mul(&x0.sub(&q.pow(k as u32 - 1)));
            }
            let den = q_pochhammer(&q, &psi_q, k).mul(&q_pochhammer(&q, &q, k));
            if den.is_zero() {
                return Err(undefined("(ψ/q; q)_k vanishes"));
            }
            let num = q_pochhammer(&q, &q_minus_n, k)
                .mul(&q_pochhammer(&q, &psi, k))
                .mul(&ratio.pow(k as u32))
                .mul(&lattice);
            sum = sum.add(&num.checked_div(&den)?);
        }
        let binom = nn * (nn - 1) / 2;
        let pre_num = a
            .neg()
            .pow(n as u32)
            .mul(&d1)
            .mul(&F::one().sub(&psi_q))
            .mul(&q.powi(binom - nn + 2)?);
        let pre_den = a.mul(&self.asc.qn(nn)).mul(&psi).mul(&F::one().sub(&q));
        if pre_den.is_zero() {
            return Err(undefined("prefactor has a pole"));
        }
        Ok(pre_num.checked_div(&pre_den)?.mul(&sum))
    }
}

impl<F: ZField + ExactField> SobolevFamily<F> {
    /// `(𝒞₁ₙ, 𝒟₁ₙ)` with the convention `(1, 0)` at `n = 0`.
    pub fn connection_first(&self, n: usize) -> Result<(RatFun<F>, RatFun<F>)> {
        if n == 0 {
            return Ok((RatFun::one(), RatFun::zero()));
        }
        let (mut c, mut d) = self.first.get_or_try(n, || {
            let sys = self.gram_system(n)?;
            let la = self.lambda.mul(&sys.deltas[0]);
            let m1 = self.mu.mul(&sys.deltas[1]);
            let mut c = RatFun::one();
            let mut d = RatFun::zero();
            for (w, y0) in [(la, self.asc.a().clone()), (m1, F::one())] {
                if w.is_zero() {
                    continue;
                }
                let (ka, kb) = self.asc.kernel_ab_coeffs(n, &y0)?;
                c = c.sub(&ka.scale(&w));
                d = d.sub(&kb.scale(&w));
            }
            Ok((c, d))
        })?;
        if self.fault == Some(Fault::C1) {
            c = c.add(&RatFun::constant(Fault::epsilon()));
        }
        if self.fault == Some(Fault::D1) {
            d = d.add(&RatFun::constant(Fault::epsilon()));
        }
        Ok((c, d))
    }

    /// All four connection coefficients and `det Bₙ`, `n ≥ 1`.
    pub fn connection_coeffs(&self, n: usize) -> Result<ConnectionCoeffs<F>> {
        if n == 0 {
            return Err(Error::IndexOutOfRange("connection coefficients need n ≥ 1".into()));
        }
        let (c1, d1) = self.connection_first(n)?;
        let (mut c2, mut d2) = if n == 1 {
            (RatFun::zero(), RatFun::one())
        } else {
            let (cp, dp) = self.connection_first(n - 1)?;
            let g = self.asc.gamma(n - 1);
            let ginv = g.inv().ok_or(Error::DivisionByZero)?;
            let c2 = dp.scale(&ginv).neg();
            let shift = Poly::new(vec![self.asc.beta(n - 1), F::one().neg()]);
            let d2 = cp.add(&c2.mul_poly(&shift));
            (c2, d2)
        };
        if self.fault == Some(Fault::C2) {
            c2 = c2.add(&RatFun::constant(Fault::epsilon()));
        }
        if self.fault == Some(Fault::D2) {
            d2 = d2.add(&RatFun::constant(Fault::epsilon()));
        }
        let det = c1.mul(&d2).sub(&c2.mul(&d1));
        Ok(ConnectionCoeffs { c1, d1, c2, d2, det })
    }

    /// Residuals of `𝕌ₙ = 𝒞₁Uₙ + 𝒟₁U_{n-1}` and `𝕌_{n-1} = 𝒞₂Uₙ + 𝒟₂U_{n-1}`.
    pub fn connection_residuals(&self, n: usize) -> Result<(RatFun<F>, RatFun<F>)> {
        let cc = self.connection_coeffs(n)?;
        let (u, u1) = (self.asc.poly(n), self.asc.poly(n - 1));
        let r1 = cc.c1.mul_poly(&u).add(&cc.d1.mul_poly(&u1)).sub(&self.sobolev_poly(n)?.into());
        let r2 = cc.c2.mul_poly(&u).add(&cc.d2.mul_poly(&u1)).sub(&self.sobolev_poly(n - 1)?.into());
        Ok((r1, r2))
    }

    /// `(Uₙ, U_{n-1})` recovered from `(𝕌ₙ, 𝕌_{n-1})` by inverting the
    /// connection matrix.
    pub fn inverse_connection(&self, n: usize) -> Result<(Poly<F>, Poly<F>)> {
        let cc = self.connection_coeffs(n)?;
        if cc.det.is_zero() {
            return Err(Error::DegenerateConnection { n });
        }
        let (s, s1) = (self.sobolev_poly(n)?, self.sobolev_poly(n - 1)?);
        let un = cc.d2.mul_poly(&s).sub(&cc.d1.mul_poly(&s1)).div(&cc.det)?;
        let um = cc.c1.mul_poly(&s1).sub(&cc.c2.mul_poly(&s)).div(&cc.det)?;
        let poly = |r: RatFun<F>| {
            r.to_poly().ok_or_else(|| {
                Error::ExactDivisionFailed(format!("inverse connection at n = {n} is not polynomial"))
            })
        };
        Ok((poly(un)?, poly(um)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ZRat};

    fn family(q: &str, a: &str, l: &str, m: &str, j: usize) -> SobolevFamily<ZRat> {
        SobolevFamily::new(&QContext::parse(q, a, l, m, j).unwrap()).unwrap()
    }

    #[test]
    fn unit_mass_is_total_measure() {
        let f = family("1/2", "-1", "1", "1", 1);
        let one = Poly::one();
        assert_eq!(f.inner_product(&one, &one), ZRat::z().scale(&rat(1, 2)));
    }

    #[test]
    fn routes_agree_and_are_orthogonal() {
        for (q, a, l, m) in [("1/2", "-1", "1", "1"), ("1/3", "-2", "1/2", "2")] {
            for j in 1..=3 {
                let f = family(q, a, l, m, j);
                for n in 0..=5 {
                    let p = f.sobolev_poly(n).unwrap();
                    assert!(p.is_monic() && p.degree() == Some(n));
                    assert_eq!(p, f.sobolev_poly_gs(n).unwrap(), "j={j} n={n}");
                    for k in 0..n {
                        let pk = f.sobolev_poly(k).unwrap();
                        assert!(f.inner_product(&pk, &p).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn low_degrees_coincide_with_classical() {
        let f = family("1/2", "-1", "1", "1", 3);
        for n in 0..=3 {
            assert_eq!(f.sobolev_poly(n).unwrap(), f.asc().poly(n));
        }
        // With a = -1 parity can still force 𝕌₄ = U₄; generic parameters do not.
        let h = family("1/3", "-2", "1/2", "2", 3);
        assert_ne!(h.sobolev_poly(4).unwrap(), h.asc().poly(4));
        let g = family("1/2", "-1", "0", "0", 2);
        for n in 0..=6 {
            assert_eq!(g.sobolev_poly(n).unwrap(), g.asc().poly(n));
        }
    }

    #[test]
    fn connection_identities() {
        let f = family("1/2", "-1", "1", "1", 2);
        for n in 1..=5 {
            let (r1, r2) = f.connection_residuals(n).unwrap();
            assert!(r1.is_zero() && r2.is_zero(), "n = {n}");
            let (u, u1) = f.inverse_connection(n).unwrap();
            assert_eq!(u, f.asc().poly(n));
            assert_eq!(u1, f.asc().poly(n - 1));
        }
    }

    #[test]
    fn fourier_coefficients_match_expansion() {
        let f = family("1/3", "-2", "1/2", "2", 2);
        for n in 0..=5 {
            let p = f.sobolev_poly(n).unwrap();
            assert_eq!(f.fourier_coeffs(n).unwrap(), f.expand_in_asc(&p));
        }
    }

    #[test]
    fn three_phi_two_representation() {
        let f = family("1/2", "-1", "1", "1", 2);
        let x0 = ZRat::from_rational(&rat(1, 3));
        for n in [4, 5] {
            let v = f.hypergeom_eval(n, &x0).unwrap();
            assert_eq!(v, f.sobolev_poly(n).unwrap().eval(&x0), "n = {n}");
        }
        assert!(matches!(f.hypergeom_eval(1, &x0), Err(Error::UndefinedAuxiliary(_))));
    }
}
