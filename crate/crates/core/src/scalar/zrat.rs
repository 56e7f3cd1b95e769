use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use super::zpoly::{self, ZPoly};
use super::{parse_rational, ExactField, Field, Real, ZField};
use crate::error::{Error, Result};
use crate::qcore::QContext;
use crate::qpoly::Poly;

/// Element of ℚ(Z) in canonical form: `num/den` coprime, `den` monic, zero
/// stored as `0/1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZRat {
    num: ZPoly,
    den: ZPoly,
}

impl ZRat {
    /// Builds `num/den` and brings it to canonical form.
    pub fn from_parts(num: ZPoly, den: ZPoly) -> Result<ZRat> {
        let den = zpoly::trim(den);
        if den.is_empty() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(zpoly::trim(num), den))
    }

    /// The generator `Z`.
    pub fn z() -> ZRat {
        ZRat {
            num: vec![BigRational::zero(), BigRational::one()],
            den: zpoly::one(),
        }
    }

    pub fn numer(&self) -> &[BigRational] {
        &self.num
    }

    pub fn denom(&self) -> &[BigRational] {
        &self.den
    }

    /// The value as a plain rational when it does not depend on `Z`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if !zpoly::is_one(&self.den) {
            return None;
        }
        match self.num.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.num[0].clone()),
            _ => None,
        }
    }

    /// Degree in `Z` of numerator and denominator.
    pub fn z_degrees(&self) -> (usize, usize) {
        (self.num.len().saturating_sub(1), self.den.len() - 1)
    }

    fn reduce(num: ZPoly, den: ZPoly) -> ZRat {
        if num.is_empty() {
            return ZRat::zero();
        }
        let (num, den) = if den.len() == 1 {
            (num, den)
        } else {
            let g = zpoly::gcd(&num, &den);
            if zpoly::is_one(&g) {
                (num, den)
            } else {
                (zpoly::div_exact(&num, &g), zpoly::div_exact(&den, &g))
            }
        };
        Self::normalized(num, den)
    }

    fn normalized(num: ZPoly, den: ZPoly) -> ZRat {
        let lc = den.last().expect("nonzero denominator").clone();
        if lc.is_one() {
            ZRat { num, den }
        } else {
            let inv = lc.recip();
            ZRat {
                num: zpoly::scale(&num, &inv),
                den: zpoly::scale(&den, &inv),
            }
        }
    }

    /// Substitutes a rational for `Z`; `None` at a pole.
    pub fn specialize(&self, z0: &BigRational) -> Option<BigRational> {
        let d = zpoly::eval(&self.den, z0);
        if d.is_zero() {
            None
        } else {
            Some(zpoly::eval(&self.num, z0) / d)
        }
    }

    /// Numerical value at `z`.
    pub fn eval_z(&self, z: &Real) -> Result<Real> {
        let horner = |p: &[BigRational]| {
            p.iter()
                .rev()
                .fold(Real::zero(), |acc, c| acc.mul(z).add(&Real::from_rational(c)))
        };
        let d = horner(&self.den);
        if d.is_zero() {
            return Err(Error::PoleAtZ);
        }
        horner(&self.num).checked_div(&d)
    }
}

impl Field for ZRat {
    fn zero() -> Self {
        ZRat {
            num: Vec::new(),
            den: zpoly::one(),
        }
    }

    fn one() -> Self {
        ZRat {
            num: zpoly::one(),
            den: zpoly::one(),
        }
    }

    fn from_rational(r: &BigRational) -> Self {
        ZRat {
            num: zpoly::constant(r.clone()),
            den: zpoly::one(),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    fn is_one(&self) -> bool {
        zpoly::is_one(&self.num) && zpoly::is_one(&self.den)
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = zpoly::add(&self.num, &rhs.num);
            if self.den.len() == 1 {
                return ZRat { num, den: self.den.clone() };
            }
            return Self::reduce(num, self.den.clone());
        }
        // Henrici: only the gcd of the denominators can cancel.
        let g = zpoly::gcd(&self.den, &rhs.den);
        if zpoly::is_one(&g) {
            let num = zpoly::add(
                &zpoly::mul(&self.num, &rhs.den),
                &zpoly::mul(&rhs.num, &self.den),
            );
            if num.is_empty() {
                return ZRat::zero();
            }
            return ZRat { num, den: zpoly::mul(&self.den, &rhs.den) };
        }
        let b1 = zpoly::div_exact(&self.den, &g);
        let d1 = zpoly::div_exact(&rhs.den, &g);
        let t = zpoly::add(&zpoly::mul(&self.num, &d1), &zpoly::mul(&rhs.num, &b1));
        if t.is_empty() {
            return ZRat::zero();
        }
        let g2 = zpoly::gcd(&t, &g);
        let num = zpoly::div_exact(&t, &g2);
        let den = zpoly::mul(&b1, &zpoly::div_exact(&rhs.den, &g2));
        Self::normalized(num, den)
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return ZRat::zero();
        }
        if let Some(c) = self.as_rational() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_rational() {
            return self.scale(&c);
        }
        let g1 = zpoly::gcd(&self.num, &rhs.den);
        let g2 = zpoly::gcd(&rhs.num, &self.den);
        let num = zpoly::mul(&zpoly::div_exact(&self.num, &g1), &zpoly::div_exact(&rhs.num, &g2));
        let den = zpoly::mul(&zpoly::div_exact(&self.den, &g2), &zpoly::div_exact(&rhs.den, &g1));
        Self::normalized(num, den)
    }

    fn neg(&self) -> Self {
        ZRat {
            num: zpoly::neg(&self.num),
            den: self.den.clone(),
        }
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::normalized(self.den.clone(), self.num.clone()))
    }

    fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return ZRat::zero();
        }
        ZRat {
            num: zpoly::scale(&self.num, r),
            den: self.den.clone(),
        }
    }

    fn to_real(&self, z: &Real) -> Result<Real> {
        self.eval_z(z)
    }

    /// Brings each factor to a common denominator, multiplies in ℚ[Z][x]
    /// and reduces once per output coefficient instead of once per term.
    fn mul_coeffs(a: &[Self], b: &[Self]) -> Vec<Self> {
        if a.len() == 1 || b.len() == 1 {
            let (c, p) = if a.len() == 1 { (&a[0], b) } else { (&b[0], a) };
            return p.iter().map(|v| v.mul(c)).collect();
        }
        let (na, da) = common_denominator(a);
        let (nb, db) = common_denominator(b);
        let den = zpoly::mul(&da, &db);
        let mut out = vec![ZPoly::new(); a.len() + b.len() - 1];
        for (i, x) in na.iter().enumerate() {
            if x.is_empty() {
                continue;
            }
            for (k, y) in nb.iter().enumerate() {
                if !y.is_empty() {
                    out[i + k] = zpoly::add(&out[i + k], &zpoly::mul(x, y));
                }
            }
        }
        out.into_iter().map(|num| ZRat::reduce(num, den.clone())).collect()
    }
}

/// Numerators over the least common denominator of a coefficient list.
fn common_denominator(v: &[ZRat]) -> (Vec<ZPoly>, ZPoly) {
    let mut lcm = zpoly::one();
    for c in v {
        if c.is_zero() || c.den == lcm || zpoly::is_one(&c.den) {
            continue;
        }
        let g = zpoly::gcd(&lcm, &c.den);
        lcm = zpoly::mul(&lcm, &zpoly::div_exact(&c.den, &g));
    }
    let nums = v
        .iter()
        .map(|c| {
            if c.is_zero() {
                ZPoly::new()
            } else if c.den == lcm {
                c.num.clone()
            } else {
                zpoly::mul(&c.num, &zpoly::div_exact(&lcm, &c.den))
            }
        })
        .collect();
    (nums, lcm)
}

/// Specialization points for the coprimality test in [`ExactField::poly_gcd`].
fn probe_points() -> [BigRational; 3] {
    [
        super::rat(1009, 7),
        super::rat(-2027, 13),
        super::rat(4099, 3),
    ]
}

/// Specializes every coefficient at `z0`; `None` when a coefficient has a
/// pole there or the leading coefficient vanishes (the degree would drop).
fn specialize_poly(p: &Poly<ZRat>, z0: &BigRational) -> Option<Poly<BigRational>> {
    let lead = p.leading()?.specialize(z0)?;
    if lead.is_zero() {
        return None;
    }
    let coeffs = p
        .coeffs()
        .iter()
        .map(|c| c.specialize(z0))
        .collect::<Option<Vec<_>>>()?;
    Some(Poly::new(coeffs))
}

impl ExactField for ZRat {
    /// Gcd in `x` over ℚ(Z).
    ///
    /// Specializing `Z` at a point where both leading coefficients survive
    /// can only enlarge the gcd, so a trivial gcd of the specializations
    /// proves coprimality. A nontrivial specialized gcd with rational
    /// coefficients is accepted when it divides both inputs, since it then
    /// has the maximal possible degree. Anything else falls back to Euclid.
    fn poly_gcd(a: &Poly<Self>, b: &Poly<Self>) -> Poly<Self> {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.degree() == Some(0) || b.degree() == Some(0) {
            return Poly::one();
        }
        for z0 in probe_points() {
            let (Some(a0), Some(b0)) = (specialize_poly(a, &z0), specialize_poly(b, &z0)) else {
                continue;
            };
            let g0 = a0.gcd_euclid(&b0);
            if g0.degree() == Some(0) {
                return Poly::one();
            }
            let lifted = g0.map(ZRat::from_rational);
            if a.rem(&lifted).is_zero() && b.rem(&lifted).is_zero() {
                return lifted;
            }
            break;
        }
        gcd_by_interpolation(a, b).unwrap_or_else(|| a.gcd_euclid(b))
    }
}

/// Gcd in `x` by interpolation in `Z`, for gcds whose coefficients depend
/// on `Z` (Euclid over ℚ(Z) swells badly on those).
///
/// With denominators cleared both inputs live in ℚ[Z][x]. The leading
/// coefficient of their primitive gcd `G` divides `γ`, the gcd of the two
/// leading coefficients, so at a good point `z` the scaled monic image
/// `γ(z)·gcd(A(z), B(z))` is the value of `(γ/lc G)·G`, whose degree in `Z`
/// is bounded in advance. Images of too high degree are unlucky and
/// dropped. The result is accepted only if it divides both inputs.
fn gcd_by_interpolation(a: &Poly<ZRat>, b: &Poly<ZRat>) -> Option<Poly<ZRat>> {
    let (na, _) = common_denominator(a.coeffs());
    let (nb, _) = common_denominator(b.coeffs());
    let (lead_a, lead_b) = (na.last()?, nb.last()?);
    let gamma = zpoly::gcd(lead_a, lead_b);
    let z_degree = |v: &[ZPoly]| v.iter().filter_map(|c| zpoly::degree(c)).max().unwrap_or(0);
    let needed = zpoly::degree(&gamma).unwrap_or(0) + z_degree(&na).min(z_degree(&nb)) + 1;
    let at = |v: &[ZPoly], z: &BigRational| Poly::new(v.iter().map(|c| zpoly::eval(c, z)).collect());

    let (mut points, mut images) = (Vec::new(), Vec::new());
    let mut deg = usize::MAX;
    for k in 1..=(4 * needed as i64 + 20) {
        if points.len() == needed {
            break;
        }
        // 1, -1, 2, -2, ...
        let z = super::rat(if k % 2 == 1 { (k + 1) / 2 } else { -k / 2 }, 1);
        let scale = zpoly::eval(&gamma, &z);
        if scale.is_zero() || zpoly::eval(lead_a, &z).is_zero() || zpoly::eval(lead_b, &z).is_zero() {
            continue;
        }
        let g = at(&na, &z).gcd_euclid(&at(&nb, &z));
        let d = g.degree()?;
        if d == 0 {
            return Some(Poly::one());
        }
        if d > deg {
            continue;
        }
        if d < deg {
            deg = d;
            points.clear();
            images.clear();
        }
        points.push(z);
        images.push(g.scale(&scale));
    }
    if points.len() < needed {
        return None;
    }
    let coeffs: Vec<ZPoly> = (0..=deg)
        .map(|i| interpolate(&points, &images.iter().map(|p: &Poly<BigRational>| p.coeff(i)).collect::<Vec<_>>()))
        .collect();
    let lead = ZRat::from_parts(coeffs[deg].clone(), zpoly::one()).ok()?.inv()?;
    let g = Poly::new(
        coeffs
            .into_iter()
            .map(|c| ZRat::from_parts(c, zpoly::one()).map(|v| v.mul(&lead)))
            .collect::<Result<Vec<_>>>()
            .ok()?,
    );
    (a.rem(&g).is_zero() && b.rem(&g).is_zero()).then_some(g)
}

/// Newton interpolation through `(xs[i], ys[i])`.
fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> ZPoly {
    let n = xs.len();
    let mut c = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            c[i] = (&c[i] - &c[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut p = zpoly::constant(c[n - 1].clone());
    for i in (0..n - 1).rev() {
        let lin = vec![-xs[i].clone(), BigRational::one()];
        p = zpoly::add(&zpoly::mul(&p, &lin), &zpoly::constant(c[i].clone()));
    }
    zpoly::trim(p)
}

impl ZField for ZRat {
    fn z_value(_ctx: &QContext) -> Result<Self> {
        Ok(ZRat::z())
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, p: &[BigRational]) -> fmt::Result {
    if p.is_empty() {
        return f.write_str("[0]");
    }
    f.write_str("[")?;
    for (i, c) in p.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{c}")?;
    }
    f.write_str("]")
}

impl fmt::Display for ZRat {
    /// `[num coefficients] / [den coefficients]`, constant term first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.num)?;
        f.write_str(" / ")?;
        write_list(f, &self.den)
    }
}

fn parse_list(s: &str) -> Result<ZPoly> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected a bracketed list, got `{s}`")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(parse_rational).collect()
}

impl FromStr for ZRat {
    type Err = Error;

    /// Accepts `[n0, n1, ...] / [d0, ...]`, a lone list (denominator 1), or a
    /// bare rational.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if !t.starts_with('[') {
            return Ok(ZRat::from_rational(&parse_rational(t)?));
        }
        let close = t
            .find(']')
            .ok_or_else(|| Error::Parse(format!("unterminated list in `{s}`")))?;
        let num = parse_list(&t[..=close])?;
        let rest = t[close + 1..].trim();
        let den = if rest.is_empty() {
            zpoly::one()
        } else {
            let d = rest
                .strip_prefix('/')
                .ok_or_else(|| Error::Parse(format!("expected `/` in `{s}`")))?;
            parse_list(d)?
        };
        ZRat::from_parts(num, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn zp(v: &[i64]) -> ZPoly {
        zpoly::trim(v.iter().map(|&c| rat(c, 1)).collect())
    }

    #[test]
    fn gcd_with_z_dependent_factor_matches_euclid() {
        let z = ZRat::z();
        let c = |v: i64| ZRat::from_i64(v);
        let zinv = z.inv().unwrap();
        // common factor Z x² + (1 - Z²) x + 1/Z, times cofactors in Z and x
        let common = Poly::new(vec![zinv.clone(), c(1).sub(&z.mul(&z)), z.clone()]);
        let f = Poly::new(vec![z.add(&c(3)), c(-2), z.mul(&z)]);
        let g = Poly::new(vec![c(5), zinv.add(&c(1)), c(0), z.sub(&c(7))]);
        let (a, b) = (common.mul(&f), common.mul(&g));
        let fast = gcd_by_interpolation(&a, &b).expect("interpolation succeeds");
        assert_eq!(fast, a.gcd_euclid(&b));
        assert_eq!(fast, common.monic());
        assert_eq!(ZRat::poly_gcd(&a, &b), fast);
        assert!(gcd_by_interpolation(&f, &g).unwrap().is_one());
    }

    #[test]
    fn inverse_pair_multiplies_to_one() {
        let a = ZRat::from_parts(zp(&[1, 1]), zp(&[0, 1])).unwrap();
        let b = ZRat::from_parts(zp(&[0, 1]), zp(&[1, 1])).unwrap();
        assert!(a.mul(&b).is_one());
    }

    #[test]
    fn rationals_add() {
        let s = ZRat::from_rational(&rat(1, 2)).add(&ZRat::from_rational(&rat(1, 3)));
        assert_eq!(s, ZRat::from_rational(&rat(5, 6)));
    }

    #[test]
    fn common_factor_cancels() {
        let r = ZRat::from_parts(zp(&[-1, 0, 1]), zp(&[-1, 1])).unwrap();
        assert_eq!(r, ZRat::from_parts(zp(&[1, 1]), zp(&[1])).unwrap());
    }

    #[test]
    fn denominator_is_monic() {
        let r = ZRat::from_parts(zp(&[1]), zp(&[2, 4])).unwrap();
        assert_eq!(r.denom(), &[rat(1, 2), rat(1, 1)][..]);
        assert_eq!(r.numer(), &[rat(1, 4)][..]);
    }

    #[test]
    fn eval_at_z() {
        let z = Real::from_rational(&rat(1, 4));
        assert_eq!(ZRat::z().eval_z(&z).unwrap(), z);
        let pole = ZRat::from_parts(zp(&[1]), zp(&[1, -1])).unwrap();
        assert_eq!(pole.eval_z(&Real::one()), Err(Error::PoleAtZ));
        let lin = ZRat::from_parts(zp(&[1, 2]), zp(&[3])).unwrap();
        assert_eq!(lin.eval_z(&Real::one()).unwrap(), Real::one());
    }

    #[test]
    fn text_round_trip() {
        let r: ZRat = "[-1/2, 3] / [1]".parse().unwrap();
        assert_eq!(r.to_string(), "[-1/2, 3] / [1]");
        assert_eq!(ZRat::zero().to_string(), "[0] / [1]");
        assert_eq!("[0] / [1]".parse::<ZRat>().unwrap(), ZRat::zero());
        assert_eq!("[] / [1]".parse::<ZRat>().unwrap(), ZRat::zero());
        assert!("[1] / [0]".parse::<ZRat>().is_err());
    }
}
