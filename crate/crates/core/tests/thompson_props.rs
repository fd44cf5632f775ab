use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wysiwyg::random;
use wysiwyg::thompson::rewrite::multiply_by_rewriting;
use wysiwyg::thompson::FElement;

fn pair(seed: u64) -> (FElement, FElement) {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    (random::element(&mut r, 8), random::element(&mut r, 8))
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

#[test]
fn f_relation() {
    // x0^-1 x1 x0 = x2
    let (a, b) = (FElement::a(), FElement::b());
    let lhs = a.inverse().multiply(&b).multiply(&a);
    assert_eq!(lhs, b.shift());
    assert_eq!(lhs.to_pl(), a.inverse().to_pl().compose(&b.to_pl()).compose(&a.to_pl()));
}

#[test]
fn powers_of_a() {
    assert_eq!(FElement::a_power(1), FElement::a());
    assert_eq!(FElement::a_power(2), FElement::a().multiply(&FElement::a()));
    assert_eq!(FElement::a_power(5).leaf_count(), 7);
    assert_eq!(FElement::a_power(-3), FElement::a().pow(3).inverse());
}

#[test]
fn words_and_pairs_parse_to_the_same_element() {
    let g: FElement = "A^2 B^-1".parse().unwrap();
    let h = FElement::a().pow(2).multiply(&FElement::b().inverse());
    assert_eq!(g, h);
    assert_eq!(g.to_string().parse::<FElement>().unwrap(), g);
    assert!("A^".parse::<FElement>().is_err());
}

proptest! {
    #[test]
    fn group_axioms(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (g, h) = pair(s1);
        let (k, _) = pair(s2);
        prop_assert_eq!(g.multiply(&h).multiply(&k), g.multiply(&h.multiply(&k)));
        prop_assert!(g.multiply(&g.inverse()).is_identity());
        prop_assert_eq!(g.multiply(&FElement::identity()), g.clone());
        prop_assert_eq!(g.inverse().inverse(), g);
    }

    #[test]
    fn products_agree_with_rewriting_and_pl(seed in any::<u64>()) {
        let (g, h) = pair(seed);
        let m = g.multiply(&h);
        prop_assert!(m.is_reduced());
        prop_assert_eq!(&multiply_by_rewriting(&g, &h), &m);
        prop_assert_eq!(m.to_pl(), g.to_pl().compose(&h.to_pl()));
    }

    #[test]
    fn inverse_is_the_functional_inverse(seed in any::<u64>()) {
        let (g, _) = pair(seed);
        prop_assert_eq!(g.inverse().to_pl(), g.to_pl().inverse());
        prop_assert!(g.to_pl().compose(&g.inverse().to_pl()).is_identity());
    }

    #[test]
    fn shift_is_an_injective_homomorphism(seed in any::<u64>()) {
        let (g, h) = pair(seed);
        prop_assert_eq!(g.multiply(&h).shift(), g.shift().multiply(&h.shift()));
        prop_assert_eq!(g.shift().is_identity(), g.is_identity());
        let p = g.shift().to_pl();
        let q = BigRational::new(3.into(), 8.into());
        prop_assert_eq!(p.eval(&q), q);
        prop_assert_eq!(p.eval(&half()), half());
    }

    #[test]
    fn reduction_is_confluent(seed in any::<u64>(), extra in 1usize..5) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let g = random::element(&mut r, 6);
        let big = random::unreduce(&mut r, &g, extra);
        prop_assert_eq!(random::reduce_randomly(&mut r, &big), g.clone());
        prop_assert_eq!(big.reduced(), g);
    }
}
