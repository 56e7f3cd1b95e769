//! Randomized structural invariants of the classical and Sobolev families.

use proptest::prelude::*;
use qsobolev::asc::AscFamily;
use qsobolev::qcore::QContext;
use qsobolev::scalar::rat;
use qsobolev::sobolev::SobolevFamily;
use qsobolev::{Field, ZRat};

fn context() -> impl Strategy<Value = QContext> {
    (1i64..=4, 1i64..=3, 0i64..=3, 0i64..=3, 1usize..=3).prop_map(|(qk, ak, l, m, j)| {
        QContext::new(rat(qk, 5), rat(-ak, 2), rat(l, 2), rat(m, 3), j).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn classical_routes_agree(ctx in context()) {
        let asc = AscFamily::<ZRat>::new(&ctx).unwrap();
        for n in 0..=5 {
            prop_assert_eq!(asc.poly(n), asc.poly_hypergeometric(n));
            prop_assert!(asc.structure_residual(n).is_zero());
            prop_assert!(asc.second_order_residual(n).is_zero());
        }
    }

    #[test]
    fn sobolev_family_is_orthogonal_and_monic(ctx in context()) {
        let fam = SobolevFamily::<ZRat>::new(&ctx).unwrap();
        let polys: Vec<_> = (0..=4).map(|n| fam.sobolev_poly(n).unwrap()).collect();
        for (n, p) in polys.iter().enumerate() {
            prop_assert!(p.is_monic() && p.degree() == Some(n));
            prop_assert_eq!(p, &fam.sobolev_poly_gs(n).unwrap());
            for q in &polys[..n] {
                prop_assert!(fam.inner_product(q, p).is_zero());
            }
            if n <= ctx.j || ctx.is_classical() {
                prop_assert_eq!(p, &fam.asc().poly(n));
            }
        }
    }

    #[test]
    fn expansion_reconstructs(ctx in context(), coeffs in prop::collection::vec(-4i64..=4, 1..=5)) {
        let asc = AscFamily::<ZRat>::new(&ctx).unwrap();
        let p = qsobolev::Poly::new(coeffs.iter().map(|&c| ZRat::from_rational(&rat(c, 1))).collect());
        let back = asc
            .expand(&p)
            .iter()
            .enumerate()
            .fold(qsobolev::Poly::zero(), |acc, (k, c)| acc.add(&asc.poly(k).scale(c)));
        prop_assert_eq!(back, p);
    }
}
