use proptest::prelude::*;

use subregular::freealg::FreeElt;
use subregular::gsengine::Strategy as Order;
use subregular::hodges::{HodgesData, Level};
use subregular::ktheory::{
    bar_dual, gram_from_ext, hecke_apply, pair_with, pairing, Convention, HeckeWord, KElt,
};
use subregular::scalars::LaurentBi;

fn laurent() -> impl Strategy<Value = LaurentBi> {
    prop::collection::vec(((-3i64..=3, -3i64..=3), -4i64..=4), 0..4)
        .prop_map(|terms| LaurentBi::from_terms(terms.into_iter().map(|(k, c)| (k, c.into()))))
}

fn kelt(n: usize) -> impl Strategy<Value = KElt> {
    prop::collection::vec(laurent(), n).prop_map(KElt::from_coords)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, LaurentBi::zero());
        prop_assert_eq!(&a * &LaurentBi::one(), a.clone());
    }

    #[test]
    fn involutions_are_ring_maps(a in laurent(), b in laurent()) {
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        prop_assert_eq!((&a * &b).dagger(), &a.dagger() * &b.dagger());
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!(a.dagger().dagger(), a);
    }

    #[test]
    fn laurent_text_round_trip(a in laurent()) {
        prop_assert_eq!(LaurentBi::parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn pairing_is_hermitian((x, y) in (2usize..=5).prop_flat_map(|n| (kelt(n), kelt(n)))) {
        prop_assert_eq!(pairing(&x, &y), pairing(&y, &x).dagger());
        let g = gram_from_ext(x.n());
        prop_assert_eq!(pair_with(&g, &x, &y), pair_with(&g, &y, &x).dagger());
    }

    #[test]
    fn pairing_is_sesquilinear(x in kelt(3), y in kelt(3), c in laurent()) {
        prop_assert_eq!(pairing(&x.scale(&c), &y), &c * &pairing(&x, &y));
        prop_assert_eq!(pairing(&x, &y.scale(&c)), &c.dagger() * &pairing(&x, &y));
    }

    #[test]
    fn bar_dual_is_an_involution(x in kelt(4)) {
        prop_assert_eq!(bar_dual(&bar_dual(&x)), x);
    }

    #[test]
    fn sigma_then_inverse_is_identity(x in kelt(4)) {
        let w = HeckeWord::parse(4, Convention::Categorified, "s^-1 s").unwrap();
        prop_assert_eq!(hecke_apply(&w, &x).unwrap(), x);
    }
}

/// Random elements of the free algebra on the Hodges alphabet.
fn random_elements(data: &HodgesData, count: usize) -> Vec<FreeElt> {
    use rand::{Rng, SeedableRng};
    let al = data.alphabet();
    let p = data.p();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    (0..count)
        .map(|_| {
            let mut f = FreeElt::zero(p);
            for _ in 0..rng.gen_range(1..5) {
                let len = rng.gen_range(0..7);
                let word: Vec<u8> = (0..len).map(|_| rng.gen_range(0..al.len() as u8)).collect();
                f.add_term(al.monomial(&word, None), rng.gen_range(1..p as i64));
            }
            f
        })
        .collect()
}

#[test]
fn reduction_does_not_depend_on_strategy() {
    for (n, p, r, level) in [
        (2, 3, vec![1], Level::FrakT),
        (3, 5, vec![1, 2], Level::Small),
    ] {
        let data = HodgesData::new(n, p, &r).unwrap();
        let pair = data.complete(level).unwrap();
        for f in random_elements(&data, 200) {
            let a = pair.reduce_with_strategy(&f, Order::LeadingFirst);
            let b = pair.reduce_with_strategy(&f, Order::SmallestFirst);
            assert_eq!(
                a,
                b,
                "strategies disagree on {}",
                data.alphabet().fmt_elt(&f)
            );
        }
    }
}
