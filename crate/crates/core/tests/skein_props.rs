use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wysiwyg::random;
use wysiwyg::skein::cabled::{CabledVec, LocalOps};
use wysiwyg::skein::oracle::{brute_coefficient_exact, oracle_lambda};
use wysiwyg::skein::poly::{Laurent, RatFn};
use wysiwyg::skein::scalar::{Exact, Numeric};
use wysiwyg::skein::sweep::{apply_forest, Caps};
use wysiwyg::skein::tlmor::{lambda_laurent, TLMor};
use wysiwyg::thompson::FElement;
use wysiwyg::wysiwyg::Engine;
use wysiwyg::Vacuum;

#[test]
fn temperley_lieb_basics() {
    let ar = Exact;
    let cup = TLMor::<Laurent>::cup();
    assert_eq!(TLMor::compose(&cup, &TLMor::cap(), &ar).unwrap().closed_value(), Laurent::monomial(1, 1));
    let p = TLMor::p2(2, 0, &ar).unwrap();
    assert_eq!(TLMor::compose(&p, &p, &ar).unwrap(), p);
    assert!(TLMor::compose(&cup, &p, &ar).unwrap().is_zero());
}

#[test]
fn lambda_matches_the_theta_graph() {
    assert_eq!(lambda_laurent().to_ratfn(), oracle_lambda());
    assert_eq!(oracle_lambda().to_string(), "(δ^2-2)/(δ)");
}

#[test]
fn ratfn_parses_its_display() {
    let r: RatFn = "(δ^2-3)/(δ^2-2)".parse().unwrap();
    assert_eq!(r.to_string(), "(δ^2-3)/(δ^2-2)");
    assert!((r.eval_f64(2.0) - 0.5).abs() < 1e-15);
}

fn random_vector(r: &mut ChaCha8Rng, n: usize) -> CabledVec<Laurent> {
    let basis = CabledVec::<Laurent>::basis_diagrams(n);
    let mut v = CabledVec::zero(n);
    for p in &basis {
        let c: i64 = r.random_range(-2..=2);
        if c != 0 {
            v = v.add(&CabledVec::basis(n, p.clone()).unwrap().scale(&Laurent::monomial(c, 0))).unwrap();
        }
    }
    v.d_half = 1;
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn forests_act_isometrically(seed in any::<u64>(), n in 2usize..5, carets in 1usize..4) {
        let ar = Exact;
        let ops = LocalOps::new(&ar);
        let caps = Caps::default();
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let (x, y) = (random_vector(&mut r, n), random_vector(&mut r, n));
        let f = random::forest(&mut r, n, carets);
        let fx = apply_forest(&x, &f, 0, &caps, &ops, &ar).unwrap();
        let fy = apply_forest(&y, &f, 0, &caps, &ops, &ar).unwrap();
        prop_assert_eq!(fx.inner(&fy, &ar).unwrap(), x.inner(&y, &ar).unwrap());
    }

    #[test]
    fn sweep_matches_brute_force(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let g = random::element(&mut r, 4);
        prop_assume!(g.leaf_count() <= 6);
        let e = Engine::exact();
        for mode in [Vacuum::Psi, Vacuum::Omega] {
            prop_assume!(mode == Vacuum::Omega || g.leaf_count() >= 2);
            let c = e.coeff(mode, &g).unwrap();
            let b = brute_coefficient_exact(g.top(), g.bottom(), mode).unwrap();
            prop_assert_eq!(c.as_exact().unwrap(), &b);
        }
    }

    #[test]
    fn exact_and_numeric_agree(seed in any::<u64>(), k in 5u32..9) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let g = random::element(&mut r, 6);
        let delta = Numeric::root_of_unity(k).delta;
        let (e, n) = (Engine::exact(), Engine::numeric(delta));
        for mode in [Vacuum::Psi, Vacuum::Omega] {
            let x = e.coeff(mode, &g).unwrap().to_f64(delta);
            let y = n.coeff(mode, &g).unwrap().to_f64(delta);
            prop_assert!((x - y).abs() < 1e-9 * x.abs().max(1.0), "{mode:?} {g}: {x} vs {y}");
        }
    }

    #[test]
    fn coefficients_are_unitary_and_bounded(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let (g, h) = (random::element(&mut r, 5), random::element(&mut r, 5));
        let e = Engine::numeric(2.0);
        for mode in [Vacuum::Psi, Vacuum::Omega] {
            let v = e.vacuum(mode);
            let (gv, hv) = (e.act(&g, &v).unwrap(), e.act(&h, &v).unwrap());
            // ⟨gΨ, hΨ⟩ = ⟨h⁻¹gΨ, Ψ⟩
            let a = e.inner(&gv, &hv).unwrap().to_f64(2.0);
            let b = e.coeff(mode, &h.inverse().multiply(&g)).unwrap().to_f64(2.0);
            prop_assert!((a - b).abs() < 1e-9);
            prop_assert!((e.inner(&gv, &gv).unwrap().to_f64(2.0) - 1.0).abs() < 1e-9);
            prop_assert!(a.abs() <= 1.0 + 1e-9);
        }
    }
}

#[test]
fn d_coefficients() {
    let e = Engine::exact();
    let d = FElement::d();
    assert_eq!(e.coeff(Vacuum::Psi, &d).unwrap().to_string(), "(δ^2-3)/(δ^2-2)");
    assert_eq!(e.coeff(Vacuum::Psi, &FElement::a()).unwrap().to_string(), "1");
}

#[test]
fn degenerate_delta_is_an_error() {
    let e = Engine::numeric(Numeric::root_of_unity(4).delta);
    assert!(e.coeff(Vacuum::Psi, &FElement::d()).is_err());
}

/// The reference path: explicit Temperley-Lieb morphisms, no sweep.
fn coeff_by_morphisms(g: &FElement, mode: Vacuum) -> wysiwyg::skein::scalar::Scalar {
    use wysiwyg::skein::tlmor::{inner_product, tree_to_morphism, xcup};
    let ar = Exact;
    match mode {
        Vacuum::Omega => {
            let (b, t) = (tree_to_morphism(g.bottom(), &ar).unwrap(), tree_to_morphism(g.top(), &ar).unwrap());
            inner_product(&b, &t, &ar).unwrap()
        }
        Vacuum::Psi => {
            let side = |t: &wysiwyg::Tree| {
                let (l, r) = t.children().unwrap();
                let legs = tree_to_morphism(l, &ar).unwrap().tensor(&tree_to_morphism(r, &ar).unwrap());
                let mut m = TLMor::compose(&xcup(&ar), &legs, &ar).unwrap();
                m.vertices = legs.vertices;
                m
            };
            let c = xcup(&ar);
            &inner_product(&side(g.bottom()), &side(g.top()), &ar).unwrap() / &inner_product(&c, &c, &ar).unwrap()
        }
    }
}

#[test]
fn sweep_matches_explicit_morphisms() {
    let mut r = ChaCha8Rng::seed_from_u64(11);
    let e = Engine::exact();
    let mut checked = 0;
    while checked < 25 {
        let g = random::element(&mut r, 4);
        if !(2..=5).contains(&g.leaf_count()) {
            continue;
        }
        for mode in [Vacuum::Psi, Vacuum::Omega] {
            assert_eq!(e.coeff(mode, &g).unwrap(), coeff_by_morphisms(&g, mode), "{mode:?} {g}");
        }
        checked += 1;
    }
}
