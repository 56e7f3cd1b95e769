//! Jacobi continued fractions built from the rational three-term recurrence.
//!
//! Index conventions: `β̂ₙ = βₙ₋₁/αₙ₋₁` and `γ̂ₙ = γₙ₋₁/αₙ₋₁` for `n ≥ 2`.
//! The recurrence is only available from degree one upward, so `β̂₁ = 𝕌₁`
//! directly and `γ̂₁` (which multiplies `𝕌₋₁ = 0`) is a free choice.
//! The tilded sequences are the hatted ones shifted by one.

use crate::error::{Error, Result};
use crate::ladder::Ladder;
use crate::qpoly::{Ell, RatFun};
use crate::scalar::{ExactField, ZField};

/// Numerator and denominator of one convergent, with the bottom-up value of
/// the finite continued fraction.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergentPair<F> {
    pub numerator: RatFun<F>,
    pub denominator: RatFun<F>,
    pub cf_value: RatFun<F>,
}

impl<F: ExactField> ConvergentPair<F> {
    /// Whether `numerator / denominator` equals the continued fraction.
    pub fn agrees(&self) -> Result<bool> {
        Ok(self.numerator.div(&self.denominator)? == self.cf_value)
    }
}

/// Free choices left open by the construction.
#[derive(Clone, Debug)]
pub struct JFractionOptions<F> {
    pub beta_hat0: RatFun<F>,
    pub gamma_hat1: RatFun<F>,
}

impl<F: ExactField> Default for JFractionOptions<F> {
    fn default() -> Self {
        JFractionOptions { beta_hat0: RatFun::zero(), gamma_hat1: RatFun::one() }
    }
}

/// Hatted coefficients for one `ℓ` together with the Sobolev polynomials
/// they are meant to generate.
#[derive(Clone, Debug)]
pub struct JFraction<F> {
    pub ell: Ell,
    /// `β̂₀ ..= β̂_{n_max+1}`.
    pub beta_hat: Vec<RatFun<F>>,
    /// `γ̂₀ ..= γ̂_{n_max+1}`; entry 0 is unused and kept at zero.
    pub gamma_hat: Vec<RatFun<F>>,
    sob: Vec<RatFun<F>>,
}

/// `b₀ + a₁/(b₁ + a₂/(… + aₙ/bₙ))`, evaluated from the bottom.
pub fn continued_fraction<F: ExactField>(b: &[RatFun<F>], a: &[RatFun<F>]) -> Result<RatFun<F>> {
    let n = b.len() - 1;
    let mut tail = b[n].clone();
    for k in (1..=n).rev() {
        if tail.is_zero() {
            return Err(Error::ZeroTailDenominator(k));
        }
        tail = b[k - 1].add(&a[k].div(&tail)?);
    }
    Ok(tail)
}

/// `Pₙ = bₙPₙ₋₁ + aₙPₙ₋₂` for `n = 0..len`, seeded by `(P₋₂, P₋₁)`.
fn recurse<F: ExactField>(
    b: &[RatFun<F>],
    a: &[RatFun<F>],
    seed: (RatFun<F>, RatFun<F>),
) -> Vec<RatFun<F>> {
    let (mut pp, mut p) = seed;
    let mut out = Vec::with_capacity(b.len());
    for k in 0..b.len() {
        let next = b[k].mul(&p).add(&a[k].mul(&pp));
        pp = std::mem::replace(&mut p, next.clone());
        out.push(next);
    }
    out
}

impl<F: ZField + ExactField> JFraction<F> {
    /// Coefficients up to `β̂_{n_max+1}`, enough for both convergent forms
    /// through depth `n_max`.
    pub fn build(ladder: &Ladder<F>, ell: Ell, n_max: usize, opts: &JFractionOptions<F>) -> Result<Self> {
        let fam = ladder.family();
        let sob = (0..=n_max + 2)
            .map(|n| fam.sobolev_poly(n).map(RatFun::from_poly))
            .collect::<Result<Vec<_>>>()?;
        let mut beta_hat = vec![opts.beta_hat0.clone(), sob[1].clone()];
        let mut gamma_hat = vec![RatFun::zero(), opts.gamma_hat1.clone()];
        for n in 1..=n_max {
            let (b, g) = ladder.ttrr_ratios(n, ell)?;
            beta_hat.push(b);
            gamma_hat.push(g);
        }
        Ok(JFraction { ell, beta_hat, gamma_hat, sob })
    }

    pub fn n_max(&self) -> usize {
        self.beta_hat.len() - 2
    }

    pub fn beta_tilde(&self, n: usize) -> &RatFun<F> {
        &self.beta_hat[n + 1]
    }

    pub fn gamma_tilde(&self, n: usize) -> &RatFun<F> {
        &self.gamma_hat[n + 1]
    }

    pub fn sobolev(&self, n: usize) -> &RatFun<F> {
        &self.sob[n]
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.n_max() {
            return Err(Error::IndexOutOfRange(format!("depth {n} exceeds {}", self.n_max())));
        }
        Ok(())
    }

    /// `𝒩₀ ..= 𝒩_{n_max}` with `𝒩₋₂ = 0`, `𝒩₋₁ = 1`.
    pub fn numerators_n(&self) -> Vec<RatFun<F>> {
        let k = self.n_max() + 1;
        recurse(&self.beta_hat[..k], &self.gamma_hat[..k], (RatFun::zero(), RatFun::one()))
    }

    /// `ℳ₀ ..= ℳ_{n_max}` with `ℳ₋₁ = 0`, `ℳ₀ = 1`.
    pub fn numerators_m(&self) -> Vec<RatFun<F>> {
        let k = self.n_max();
        let mut out = vec![RatFun::one()];
        out.extend(recurse(
            &self.beta_hat[2..k + 2],
            &self.gamma_hat[2..k + 2],
            (RatFun::zero(), RatFun::one()),
        ));
        out
    }

    /// `𝕌ₙ − β̂ₙ𝕌ₙ₋₁ − γ̂ₙ𝕌ₙ₋₂` for `1 ≤ n ≤ n_max + 1`, with `𝕌₋₁ = 0`.
    pub fn denominator_residual(&self, n: usize) -> Result<RatFun<F>> {
        if n == 0 || n > self.n_max() + 1 {
            return Err(Error::IndexOutOfRange(format!("denominator check at n = {n}")));
        }
        let prev2 = if n >= 2 { self.sob[n - 2].clone() } else { RatFun::zero() };
        Ok(self.sob[n]
            .sub(&self.beta_hat[n].mul(&self.sob[n - 1]))
            .sub(&self.gamma_hat[n].mul(&prev2)))
    }

    /// Depth-`n` convergent of the hatted fraction: `𝒩ₙ / 𝕌ₙ`.
    pub fn convergent_hat(&self, n: usize) -> Result<ConvergentPair<F>> {
        self.check(n)?;
        let numerator = self.numerators_n().swap_remove(n);
        let cf_value = continued_fraction(&self.beta_hat[..=n], &self.gamma_hat[..=n])?;
        Ok(ConvergentPair { numerator, denominator: self.sob[n].clone(), cf_value })
    }

    /// Depth-`n` convergent of the tilded fraction: `𝕌ₙ₊₁ / ℳₙ`.
    pub fn convergent_tilde(&self, n: usize) -> Result<ConvergentPair<F>> {
        self.check(n)?;
        let denominator = self.numerators_m().swap_remove(n);
        let cf_value = continued_fraction(&self.beta_hat[1..=n + 1], &self.gamma_hat[1..=n + 1])?;
        Ok(ConvergentPair { numerator: self.sob[n + 1].clone(), denominator, cf_value })
    }

    /// `𝒩ₙ𝕌ₙ₋₁ − 𝒩ₙ₋₁𝕌ₙ − (−1)ⁿ⁻¹ γ̂₁⋯γ̂ₙ` for `1 ≤ n ≤ n_max`.
    pub fn determinant_residual(&self, n: usize) -> Result<RatFun<F>> {
        self.check(n)?;
        if n == 0 {
            return Err(Error::IndexOutOfRange("determinant check needs n ≥ 1".into()));
        }
        let nn = self.numerators_n();
        let mut prod = self.gamma_hat[1..=n].iter().fold(RatFun::one(), |acc, g| acc.mul(g));
        if n % 2 == 0 {
            prod = prod.neg();
        }
        Ok(nn[n].mul(&self.sob[n - 1]).sub(&nn[n - 1].mul(&self.sob[n])).sub(&prod))
    }

    /// `ωₙ = 𝕌ₙ₊₁/𝕌ₙ`.
    pub fn omega(&self, n: usize) -> Result<RatFun<F>> {
        self.sob[n + 1].div(&self.sob[n])
    }

    /// `ωₙ₊₁ − (β̃ₙ₊₁ + γ̃ₙ₊₁/ωₙ)` for `0 ≤ n < n_max`.
    pub fn omega_residual(&self, n: usize) -> Result<RatFun<F>> {
        if n >= self.n_max() {
            return Err(Error::IndexOutOfRange(format!("omega step at n = {n}")));
        }
        let w = self.omega(n)?;
        let rhs = self.beta_tilde(n + 1).add(&self.gamma_tilde(n + 1).div(&w)?);
        Ok(self.omega(n + 1)?.sub(&rhs))
    }

    /// Both sides of the claimed ratio sum `𝕌ₙ₊₁/𝕌ₙ = Σᵢ γ̃ᵢ Πₕ₌ᵢ₊₁ⁿ β̃ₕ`.
    /// Nothing is asserted; callers compare and record.
    pub fn ratio_sum_probe(&self, n: usize) -> Result<(RatFun<F>, RatFun<F>)> {
        self.check(n)?;
        if n == 0 {
            return Err(Error::IndexOutOfRange("ratio sum needs n ≥ 1".into()));
        }
        if self.sob[n].is_zero() {
            return Err(Error::ZeroDenominator(format!("Sobolev polynomial of degree {n}")));
        }
        let lhs = self.omega(n)?;
        let mut rhs = RatFun::zero();
        for i in 1..=n {
            let tail = (i + 1..=n).fold(RatFun::one(), |acc, h| acc.mul(self.beta_tilde(h)));
            rhs = rhs.add(&self.gamma_tilde(i).mul(&tail));
        }
        Ok((lhs, rhs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::QContext;
    use crate::scalar::{Field, ZRat};

    fn jf(l: &str, m: &str, ell: Ell) -> JFraction<ZRat> {
        let ctx = QContext::parse("1/2", "-1", l, m, 2).unwrap();
        let lad = Ladder::from_ctx(&ctx, None).unwrap();
        JFraction::build(&lad, ell, 4, &JFractionOptions::default()).unwrap()
    }

    #[test]
    fn convergents_and_identities() {
        for ell in Ell::BOTH {
            let f = jf("1", "1", ell);
            for n in 0..=4 {
                assert!(f.convergent_hat(n).unwrap().agrees().unwrap(), "hat n={n}");
                assert!(f.convergent_tilde(n).unwrap().agrees().unwrap(), "tilde n={n}");
            }
            for n in 1..=5 {
                assert!(f.denominator_residual(n).unwrap().is_zero());
            }
            for n in 1..=4 {
                assert!(f.determinant_residual(n).unwrap().is_zero(), "det n={n}");
            }
            for n in 0..4 {
                assert!(f.omega_residual(n).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn low_numerators_match_expansions() {
        let f = jf("1", "1", Ell::Minus);
        let (b, g) = (&f.beta_hat, &f.gamma_hat);
        let nn = f.numerators_n();
        assert_eq!(nn[0], b[0]);
        assert_eq!(nn[1], b[0].mul(&b[1]).add(&g[1]));
        let n2 = b[0].mul(&b[1].mul(&b[2]).add(&g[2])).add(&b[2].mul(&g[1]));
        assert_eq!(nn[2], n2);
        let m = f.numerators_m();
        assert!(m[0].is_polynomial() && m[1] == b[2]);
    }

    #[test]
    fn massless_coefficients_are_classical() {
        let ctx = QContext::parse("1/2", "-1", "0", "0", 2).unwrap();
        let lad = Ladder::<ZRat>::from_ctx(&ctx, None).unwrap();
        let f = JFraction::build(&lad, Ell::Plus, 3, &JFractionOptions::default()).unwrap();
        let asc = lad.family().asc();
        for n in 1..=3 {
            assert_eq!(*f.gamma_tilde(n), RatFun::constant(asc.gamma(n).neg()));
        }
    }
}
