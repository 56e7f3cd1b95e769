//! Dense polynomials in the generator `Z` with rational coefficients,
//! stored constant term first with no trailing zeros.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type ZPoly = Vec<BigRational>;

pub fn trim(mut p: ZPoly) -> ZPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn constant(c: BigRational) -> ZPoly {
    trim(vec![c])
}

pub fn one() -> ZPoly {
    vec![BigRational::one()]
}

pub fn is_one(p: &[BigRational]) -> bool {
    p.len() == 1 && p[0].is_one()
}

/// Degree, with the zero polynomial reported as `None`.
pub fn degree(p: &[BigRational]) -> Option<usize> {
    p.len().checked_sub(1)
}

pub fn add(a: &[BigRational], b: &[BigRational]) -> ZPoly {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    trim(out)
}

pub fn sub(a: &[BigRational], b: &[BigRational]) -> ZPoly {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), BigRational::zero());
    }
    for (o, s) in out.iter_mut().zip(b) {
        *o -= s;
    }
    trim(out)
}

pub fn neg(a: &[BigRational]) -> ZPoly {
    a.iter().map(|c| -c).collect()
}

pub fn scale(a: &[BigRational], c: &BigRational) -> ZPoly {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|v| v * c).collect()
}

pub fn mul(a: &[BigRational], b: &[BigRational]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if b.len() == 1 {
        return scale(a, &b[0]);
    }
    if a.len() == 1 {
        return scale(b, &a[0]);
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (k, y) in b.iter().enumerate() {
            out[i + k] += x * y;
        }
    }
    trim(out)
}

/// Quotient and remainder. `b` must be nonzero.
pub fn divrem(a: &[BigRational], b: &[BigRational]) -> (ZPoly, ZPoly) {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let lead_inv = b[db].recip();
    let mut r = a.to_vec();
    let mut qt = vec![BigRational::zero(); a.len() - db];
    for k in (0..qt.len()).rev() {
        let c = &r[k + db] * &lead_inv;
        if !c.is_zero() {
            for (i, bi) in b.iter().enumerate() {
                r[k + i] -= &c * bi;
            }
        }
        qt[k] = c;
    }
    r.truncate(db);
    (trim(qt), trim(r))
}

/// Exact quotient; the caller guarantees divisibility.
pub fn div_exact(a: &[BigRational], b: &[BigRational]) -> ZPoly {
    if b.len() == 1 {
        return scale(a, &b[0].recip());
    }
    let (q, r) = divrem(a, b);
    debug_assert!(r.is_empty(), "inexact division in Q[Z]");
    q
}

pub fn monic(a: &[BigRational]) -> ZPoly {
    match a.last() {
        Some(l) if !l.is_one() => scale(a, &l.recip()),
        _ => a.to_vec(),
    }
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn gcd(a: &[BigRational], b: &[BigRational]) -> ZPoly {
    if a.is_empty() {
        return monic(b);
    }
    if b.is_empty() {
        return monic(a);
    }
    if a.len() == 1 || b.len() == 1 || modp::certainly_coprime(a, b) {
        return one();
    }
    let (mut x, mut y) = if a.len() >= b.len() {
        (monic(a), monic(b))
    } else {
        (monic(b), monic(a))
    };
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = monic(&r);
    }
    x
}

/// Coprimality certificate by reduction modulo a large prime.
///
/// If both leading coefficients survive the reduction, the image of the
/// monic gcd over ℚ divides both images, so a constant gcd mod p proves
/// the inputs coprime. Any other outcome is inconclusive.
mod modp {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_rational::BigRational;
    use num_traits::ToPrimitive;

    const P: u64 = (1 << 61) - 1;

    fn mulm(a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % P as u128) as u64
    }

    fn powm(mut b: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulm(acc, b);
            }
            b = mulm(b, b);
            e >>= 1;
        }
        acc
    }

    fn inv(a: u64) -> u64 {
        powm(a, P - 2)
    }

    fn reduce_int(v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(P)).to_u64().expect("residue fits")
    }

    fn image(p: &[BigRational]) -> Option<Vec<u64>> {
        let mut out = Vec::with_capacity(p.len());
        for c in p {
            let d = reduce_int(c.denom());
            if d == 0 {
                return None;
            }
            out.push(mulm(reduce_int(c.numer()), inv(d)));
        }
        if *out.last()? == 0 {
            return None;
        }
        Some(out)
    }

    fn rem(a: &mut Vec<u64>, b: &[u64]) {
        let db = b.len() - 1;
        let li = inv(b[db]);
        while a.len() >= b.len() {
            let c = mulm(*a.last().expect("nonempty"), li);
            let shift = a.len() - b.len();
            for (i, bi) in b.iter().enumerate() {
                a[shift + i] = (a[shift + i] + P - mulm(c, *bi)) % P;
            }
            a.pop();
            while a.last() == Some(&0) {
                a.pop();
            }
        }
    }

    pub fn certainly_coprime(a: &[BigRational], b: &[BigRational]) -> bool {
        let (Some(mut x), Some(mut y)) = (image(a), image(b)) else {
            return false;
        };
        while !y.is_empty() {
            rem(&mut x, &y);
            std::mem::swap(&mut x, &mut y);
        }
        x.len() == 1
    }
}

pub fn eval(p: &[BigRational], z: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn p(v: &[i64]) -> ZPoly {
        trim(v.iter().map(|&c| rat(c, 1)).collect())
    }

    #[test]
    fn gcd_of_shared_linear_factor() {
        // (Z-1)(Z+2) and (Z-1)(Z+3)
        assert_eq!(gcd(&p(&[-2, 1, 1]), &p(&[-3, 2, 1])), p(&[-1, 1]));
    }

    #[test]
    fn divrem_reconstructs() {
        let a = p(&[5, 0, 3, 1]);
        let b = p(&[1, 2]);
        let (q, r) = divrem(&a, &b);
        assert_eq!(add(&mul(&q, &b), &r), a);
    }
}
