//! Randomized invariants of the exact field and the q-calculus layer.

use num_rational::BigRational;
use proptest::prelude::*;
use qsobolev::qcore::{q_binomial_in, q_falling_factorial, q_int, q_number, q_pochhammer, QContext};
use qsobolev::scalar::{rat, zpoly};
use qsobolev::{Error, Field, Poly, Real, ZRat};

fn small_rat() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn zpoly_strategy(max_len: usize) -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec(small_rat(), 1..=max_len).prop_map(zpoly::trim)
}

fn zrat() -> impl Strategy<Value = ZRat> {
    (zpoly_strategy(3), zpoly_strategy(3))
        .prop_filter_map("nonzero denominator", |(n, d)| ZRat::from_parts(n, d).ok())
}

fn rat_poly(max_len: usize) -> impl Strategy<Value = Poly<BigRational>> {
    prop::collection::vec(small_rat(), 0..=max_len).prop_map(Poly::new)
}

fn q_value() -> impl Strategy<Value = BigRational> {
    (1i64..=9).prop_map(|k| rat(k, 10))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in zrat(), b in zrat(), c in zrat()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert!(a.sub(&a).is_zero());
        if let Some(inv) = a.inv() {
            prop_assert!(a.mul(&inv).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn canonical_equality(a in zrat(), b in zrat(), c in zrat(), d in zrat()) {
        prop_assume!(!b.is_zero() && !d.is_zero());
        let lhs = a.checked_div(&b).unwrap() == c.checked_div(&d).unwrap();
        prop_assert_eq!(lhs, a.mul(&d) == c.mul(&b));
    }

    #[test]
    fn common_factor_cancels(n in zpoly_strategy(3), d in zpoly_strategy(3), f in zpoly_strategy(2)) {
        prop_assume!(!d.is_empty() && !f.is_empty());
        let plain = ZRat::from_parts(n.clone(), d.clone()).unwrap();
        let padded = ZRat::from_parts(zpoly::mul(&n, &f), zpoly::mul(&d, &f)).unwrap();
        prop_assert_eq!(plain, padded);
    }

    #[test]
    fn eval_z_is_a_homomorphism(a in zrat(), b in zrat(), zk in 1i64..=9) {
        let z0 = rat(zk, 7);
        // Exact poles round to tiny nonzero denominators in binary.
        prop_assume!([&a, &b, &a.add(&b), &a.mul(&b)].iter().all(|v| v.specialize(&z0).is_some()));
        let z = Real::from_rational(&z0);
        let (ea, eb) = match (a.eval_z(&z), b.eval_z(&z)) {
            (Ok(x), Ok(y)) => (x, y),
            (Err(Error::PoleAtZ), _) | (_, Err(Error::PoleAtZ)) => return Ok(()),
            (Err(e), _) | (_, Err(e)) => panic!("{e}"),
        };
        for (got, want) in [(a.add(&b).eval_z(&z), ea.add(&eb)), (a.mul(&b).eval_z(&z), ea.mul(&eb))] {
            match got {
                Ok(v) => prop_assert!(v.close_to(&want, 1e-60, 1e-60)),
                Err(Error::PoleAtZ) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }

    #[test]
    fn q_derivative_product_rule(f in rat_poly(5), g in rat_poly(5), q in q_value()) {
        let d = |p: &Poly<BigRational>| p.q_derivative_by(&q);
        let lhs = d(&f.mul(&g));
        let rhs = f.dilate_by(&q).mul(&d(&g)).add(&g.mul(&d(&f)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn q_leibniz_rule(f in rat_poly(4), g in rat_poly(4), q in q_value(), n in 0usize..=4) {
        let dk = |p: &Poly<BigRational>, k: usize| (0..k).fold(p.clone(), |acc, _| acc.q_derivative_by(&q));
        let lhs = dk(&f.mul(&g), n);
        let mut rhs = Poly::zero();
        for k in 0..=n {
            let c = q_binomial_in(&q, n, k).unwrap();
            let shifted = dk(&f, n - k).dilate_by(&q.pow(k as i32));
            rhs = rhs.add(&shifted.mul(&dk(&g, k)).scale(&c));
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn falling_factorial_is_a_product(q in q_value(), n in 0usize..=8, k in 0usize..=8) {
        let ctx = QContext::new(q.clone(), rat(-1, 1), rat(1, 1), rat(1, 1), 1).unwrap();
        if k <= n {
            let prod = (0..k).fold(BigRational::from_integer(1.into()), |acc, i| acc * q_number(&ctx, (n - i) as i64));
            prop_assert_eq!(q_falling_factorial(&ctx, n, k).unwrap(), prod);
        } else {
            let q_minus_n = q.pow(-(n as i32));
            prop_assert!(q_pochhammer(&q, &q_minus_n, k).is_zero());
        }
    }

    #[test]
    fn q_integers_extend_to_negative_indices(q in q_value(), m in -8i64..=8) {
        let one = BigRational::from_integer(1.into());
        let closed = (one.clone() - q.pow(m as i32)) / (one - q.clone());
        prop_assert_eq!(q_int(&q, m), closed);
    }

    #[test]
    fn q_binomial_symmetry(q in q_value(), n in 0usize..=8, k in 0usize..=8) {
        prop_assume!(k <= n);
        prop_assert_eq!(q_binomial_in(&q, n, k).unwrap(), q_binomial_in(&q, n, n - k).unwrap());
    }
}
