//! The acceptance suite: each check returns a pass/fail line with details.
//! Used by `wysiwyg verify` and by the `acceptance` test target.

use std::fmt;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::forest::Tree;
use crate::random;
use crate::skein::cabled::{CabledVec, LocalOps};
use crate::skein::oracle::{brute_coefficient_exact, oracle_lambda, tree_pair_graph};
use crate::skein::pairing::Pairing;
use crate::skein::poly::{Laurent, RatFn};
use crate::skein::scalar::{Arith, Exact, Numeric, Scalar};
use crate::skein::sweep::{apply_forest, Caps};
use crate::skein::tlmor::{lambda_laurent, raw_vertex, xcup, TLMor};
use crate::thompson::rewrite::{multiply_by_rewriting, StrandDiagram};
use crate::thompson::FElement;
use crate::wysiwyg::{min_eigenvalue, Engine, LimitVector, Threshold};
use crate::Vacuum;

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] criterion {:>2} {}: {} ({} ms)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.millis
        )
    }
}

/// How to build a vector in any evaluation mode.
#[derive(Clone, Debug)]
pub enum VecSpec {
    Vacuum(Vacuum),
    VacuumOn(Vacuum, Tree),
    Acted(FElement, Vacuum),
    Basis(Vacuum, Tree, Pairing),
}

/// An exact quantity that can be recomputed numerically.
#[derive(Clone, Debug)]
pub enum Quantity {
    Coeff(Vacuum, FElement),
    Matrix(FElement, VecSpec, VecSpec),
    Inner(VecSpec, VecSpec),
}

pub fn build<A: Arith>(e: &Engine<A>, v: &VecSpec) -> Result<LimitVector<A::C>> {
    match v {
        VecSpec::Vacuum(m) => Ok(e.vacuum(*m)),
        VecSpec::VacuumOn(m, t) => e.vacuum_on(*m, t),
        VecSpec::Acted(g, m) => e.act(g, &e.vacuum(*m)),
        VecSpec::Basis(m, t, p) => e.tree_vector(*m, t, p.clone()),
    }
}

pub fn evaluate<A: Arith>(e: &Engine<A>, q: &Quantity) -> Result<Scalar> {
    match q {
        Quantity::Coeff(m, g) => e.coeff(*m, g),
        Quantity::Matrix(g, x, y) => e.matrix_coefficient(g, &build(e, x)?, &build(e, y)?),
        Quantity::Inner(x, y) => e.inner(&build(e, x)?, &build(e, y)?),
    }
}

/// Exact values produced by a criterion, kept for the exact/numeric comparison.
pub type Ledger = Vec<(Quantity, Scalar)>;

fn finish(id: u32, name: &'static str, start: Instant, r: Result<(bool, String)>) -> CriterionResult {
    let (passed, detail) = r.unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionResult {
        id,
        name,
        passed,
        detail,
        millis: start.elapsed().as_millis(),
    }
}

fn within_time(ok: bool, start: Instant, limit_ms: u128) -> bool {
    ok && start.elapsed().as_millis() < limit_ms
}

/// Fixed vector: `AΨ = Ψ` as vectors and `⟨AⁿΨ, Ψ⟩ = 1` for `n = 1..6`.
pub fn criterion1(ledger: &mut Ledger) -> CriterionResult {
    let start = Instant::now();
    let r = (|| {
        let e = Engine::exact();
        let psi = e.vacuum(Vacuum::Psi);
        let a_psi = e.act(&FElement::a(), &psi)?;
        let fixed = a_psi == e.stabilize(&psi, a_psi.tree())?;
        let mut all_one = true;
        for n in 1..=6 {
            let g = FElement::a_power(n);
            let c = e.coeff(Vacuum::Psi, &g)?;
            all_one &= c == Scalar::one();
            ledger.push((Quantity::Coeff(Vacuum::Psi, g), c));
        }
        let ok = within_time(fixed && all_one, start, 10_000);
        Ok((ok, format!("AΨ = Ψ: {fixed}; ⟨AⁿΨ,Ψ⟩ = 1 for n = 1..6: {all_one}")))
    })();
    finish(1, "fixed vector", start, r)
}

/// Inequivalence invariant: `⟨DΨ,Ψ⟩(d-1) - (d-2) = 0`, confirmed by brute force.
pub fn criterion2(ledger: &mut Ledger) -> CriterionResult {
    let start = Instant::now();
    let r = (|| {
        let e = Engine::exact();
        let dd = FElement::d();
        let c = e.coeff(Vacuum::Psi, &dd)?;
        let d = RatFn::d();
        let exact = c.as_exact().expect("exact");
        let identity = (&(exact * &(&d - &RatFn::one())) - &(&d - &RatFn::from_int(2))).is_zero();
        ledger.push((Quantity::Coeff(Vacuum::Psi, dd.clone()), c.clone()));

        let brute_psi = brute_coefficient_exact(dd.top(), dd.bottom(), Vacuum::Psi)?;
        let brute_omega = brute_coefficient_exact(dd.top(), dd.bottom(), Vacuum::Omega)?;
        let omega = e.coeff(Vacuum::Omega, &dd)?;
        ledger.push((Quantity::Coeff(Vacuum::Omega, dd.clone()), omega.clone()));
        let closed = tree_pair_graph(dd.top(), dd.bottom(), Vacuum::Omega)?.stats();
        let open = tree_pair_graph(dd.top(), dd.bottom(), Vacuum::Psi)?.stats();
        let oracle_ok = Scalar::Exact(brute_psi) == c && Scalar::Exact(brute_omega) == omega;
        let sizes_ok = (closed.trivalent, closed.edges, closed.terms) == (6, 9, 512);
        let ok = within_time(identity && oracle_ok && sizes_ok, start, 5_000);
        Ok((
            ok,
            format!(
                "⟨DΨ,Ψ⟩ = {c}; identity: {identity}; oracle agrees: {oracle_ok} \
                 (closed graph {}v/{}e/{} terms, Ψ graph {}v/{}e/{} terms)",
                closed.trivalent, closed.edges, closed.terms, open.trivalent, open.edges, open.terms
            ),
        ))
    })();
    finish(2, "inequivalence invariant", start, r)
}

fn threshold_rows_to_ledger(ledger: &mut Ledger, t: &Threshold, q: impl Fn(usize) -> Quantity) {
    for row in &t.rows {
        ledger.push((q(row.n), row.lhs.clone()));
    }
}

/// Coefficient factorization: `⟨AⁿgΨ, hΨ⟩ = ⟨gΨ,Ψ⟩⟨Ψ,hΨ⟩` from some `N ≤ 12` on.
pub fn criterion3(ledger: &mut Ledger) -> CriterionResult {
    let start = Instant::now();
    let r = (|| {
        let e = Engine::exact();
        let (dd, b) = (FElement::d(), FElement::b());
        let mut ok = true;
        let mut parts = Vec::new();
        for (name, g, h) in [("(D,D)", &dd, &dd), ("(D,B)", &dd, &b), ("(B,B)", &b, &b)] {
            let t = e.lemma43_threshold(g, h, 15)?;
            ok &= t.n.is_some_and(|n| n <= 12);
            parts.push(format!("{name} N = {}", t.n.map_or("none".into(), |n| n.to_string())));
            let hinv = h.inverse();
            threshold_rows_to_ledger(ledger, &t, |n| {
                Quantity::Coeff(Vacuum::Psi, hinv.multiply(&FElement::a_power(n as i64)).multiply(g))
            });
            ledger.push((Quantity::Coeff(Vacuum::Psi, g.clone()), e.coeff(Vacuum::Psi, g)?));
            ledger.push((Quantity::Coeff(Vacuum::Psi, h.clone()), e.coeff(Vacuum::Psi, h)?));
        }
        Ok((within_time(ok, start, 300_000), parts.join(", ")))
    })();
    finish(3, "coefficient factorization", start, r)
}

/// Ω decay at δ = 2: `|⟨AⁿΩ,Ω⟩|` strictly decreasing for `n = 2..15`, ratio → 1/2.
pub fn criterion4(ledger: &mut Ledger) -> CriterionResult {
    let start = Instant::now();
    let r = (|| {
        let num = Engine::numeric(2.0);
        let table = num.decay_table(Vacuum::Omega, 15)?;
        let abs: Vec<f64> = table.iter().map(|(_, v, _)| v.to_f64(2.0).abs()).collect();
        // table index i holds n = i + 1
        let decreasing = (2..15).all(|n| abs[n] < abs[n - 1]);
        let ratio = table[14].2.as_ref().map_or(f64::NAN, |r| r.to_f64(2.0));
        let close = (ratio - 0.5).abs() <= 1e-8;

        let ex = Engine::exact();
        for n in 1..=15 {
            let g = FElement::a_power(n);
            ledger.push((Quantity::Coeff(Vacuum::Omega, g.clone()), ex.coeff(Vacuum::Omega, &g)?));
        }
        Ok((
            decreasing && close,
            format!(
                "strictly decreasing n = 2..15: {decreasing}; ratio at n = 15: {ratio:.12} (target 0.5)"
            ),
        ))
    })();
    finish(4, "omega decay", start, r)
}

/// σ-limit: `⟨σⁿ(g)ξ,η⟩ = ⟨gΩ,Ω⟩⟨ξ,η⟩` from some `N ≤ 10` on, for `g ∈ {A, D}`.
pub fn criterion5(ledger: &mut Ledger) -> CriterionResult {
    let start = Instant::now();
    let r = (|| {
        let e = Engine::exact();
        let t2 = Tree::full(2);
        let xi = e.vacuum_on(Vacuum::Psi, &t2)?;
        let spec = VecSpec::VacuumOn(Vacuum::Psi, t2.clone());
        let mut ok = true;
        let mut parts = Vec::new();
        for (name, g) in [("A", FElement::a()), ("D", FElement::d())] {
            let t = e.sigma_limit_check(&g, &xi, &xi, 12)?;
            let found = t.n.is_some_and(|n| n <= 10);
            let limit = e.coeff(Vacuum::Omega, &g)?;
            ok &= found;
            if name == "A" {
                ok &= limit != Scalar::one();
            }
            parts.push(format!(
                "{name}: N = {}, limit {limit}",
                t.n.map_or("none".into(), |n| n.to_string())
            ));
            let g2 = g.clone();
            threshold_rows_to_ledger(ledger, &t, |n| {
                let mut s = g2.clone();
                for _ in 0..n {
                    s = s.shift();
                }
                Quantity::Matrix(s, spec.clone(), spec.clone())
            });
            ledger.push((Quantity::Coeff(Vacuum::Omega, g.clone()), limit));
        }
        Ok((ok, parts.join("; ")))
    })();
    finish(5, "sigma limit", start, r)
}

/// Weak limit `Aⁿ → P_Ψ` on orbit vectors and on tree vectors over `t₂`.
pub fn criterion6(ledger: &mut Ledger) -> CriterionResult {
    let start = Instant::now();
    let r = (|| {
        let e = Engine::exact();
        let t2 = Tree::full(2);
        let basis = CabledVec::<Laurent>::basis_diagrams(4);
        let mut specs = vec![
            ("Ψ", VecSpec::Vacuum(Vacuum::Psi)),
            ("DΨ", VecSpec::Acted(FElement::d(), Vacuum::Psi)),
            ("BΨ", VecSpec::Acted(FElement::b(), Vacuum::Psi)),
        ];
        let orbit = specs.len();
        specs.push(("u₁", VecSpec::Basis(Vacuum::Psi, t2.clone(), basis[0].clone())));
        specs.push(("u₂", VecSpec::Basis(Vacuum::Psi, t2.clone(), basis[1].clone())));
        let mut pairs = Vec::new();
        for i in 0..orbit {
            for j in 0..orbit {
                pairs.push((i, j));
            }
        }
        for i in orbit..specs.len() {
            for j in 0..specs.len() {
                pairs.push((i, j));
            }
        }
        let mut ok = true;
        let mut worst = 0;
        for (i, j) in pairs {
            let (x, y) = (build(&e, &specs[i].1)?, build(&e, &specs[j].1)?);
            let t = e.weak_limit_projection_check(&x, &y, 12)?;
            match t.n {
                Some(n) => worst = worst.max(n),
                None => {
                    ok = false;
                }
            }
            let (sx, sy) = (specs[i].1.clone(), specs[j].1.clone());
            threshold_rows_to_ledger(ledger, &t, |n| {
                Quantity::Matrix(FElement::a_power(n as i64), sx.clone(), sy.clone())
            });
        }
        Ok((ok, format!("all pairs reach the projection; largest N = {worst}")))
    })();
    finish(6, "weak limit projection", start, r)
}

/// Loop value, tadpole vanishing, bigon proportionality and isometry of forest maps.
pub fn criterion7() -> CriterionResult {
    let start = Instant::now();
    let r = (|| {
        let ar = Exact;
        let c = xcup(&ar);
        let loop_ok = TLMor::compose(&c, &c.adjoint(), &ar)?.closed_value() == Laurent::from_i64(0, &[-1, 0, 1]);
        let tadpole = TLMor::<Laurent>::cup().apply_p2(0, &ar)?.is_zero();
        let y = raw_vertex(&ar);
        let yy = TLMor::compose(&y, &y.adjoint(), &ar)?;
        let p2 = TLMor::p2(2, 0, &ar)?.scale(lambda_laurent());
        let bigon = yy.terms().count() == p2.term_count()
            && p2.terms().all(|(p, k)| &yy.coefficient(p) == k)
            && lambda_laurent().to_ratfn() == oracle_lambda();

        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
        let ops = LocalOps::new(&ar);
        let caps = Caps::default();
        let mut iso = true;
        for _ in 0..100 {
            let n = 2 + rand::Rng::random_range(&mut rng, 0..3usize);
            let basis = CabledVec::<Laurent>::basis_diagrams(n);
            let pick = |rng: &mut ChaCha8Rng| {
                let mut v = CabledVec::basis(n, basis[rand::Rng::random_range(rng, 0..basis.len())].clone())
                    .expect("reduced");
                v.d_half = 1;
                v
            };
            let (x, z) = (pick(&mut rng), pick(&mut rng));
            let carets = 1 + rand::Rng::random_range(&mut rng, 0..3usize);
            let f = random::forest(&mut rng, n, carets);
            let fx = apply_forest(&x, &f, 0, &caps, &ops, &ar)?;
            let fz = apply_forest(&z, &f, 0, &caps, &ops, &ar)?;
            iso &= fx.inner(&fz, &ar)? == x.inner(&z, &ar)?;
        }
        let ok = loop_ok && tadpole && bigon && iso;
        Ok((
            ok,
            format!(
                "loop = d: {loop_ok}; p₂∘cup = 0: {tadpole}; Y*Y = λp₂ with λ = {}: {bigon}; isometry on 100 forests: {iso}",
                lambda_laurent()
            ),
        ))
    })();
    finish(7, "category sanity", start, r)
}

/// Three multiplication algorithms agree; reduction is confluent.
pub fn criterion8() -> CriterionResult {
    let start = Instant::now();
    let r = (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
        let mut agree = 0;
        for _ in 0..500 {
            let g = random::element(&mut rng, 8);
            let h = random::element(&mut rng, 8);
            let m = g.multiply(&h);
            let rw = multiply_by_rewriting(&g, &h);
            let pl = g.to_pl().compose(&h.to_pl());
            if m == rw && m.to_pl() == pl {
                agree += 1;
            }
        }
        let mut confluent = 0;
        for _ in 0..500 {
            let g = random::element(&mut rng, 6);
            let extra = 1 + rand::Rng::random_range(&mut rng, 0..4usize);
            let big = random::unreduce(&mut rng, &g, extra);
            let a = random::reduce_randomly(&mut rng, &big);
            let b = random::reduce_randomly(&mut rng, &big);
            let mut sd = StrandDiagram::from_element(&big);
            sd.normalize_random(&mut rng);
            if a == b && a == big.reduced() && sd.to_element().as_ref() == Some(&a) {
                confluent += 1;
            }
        }
        let ok = within_time(agree == 500 && confluent == 500, start, 30_000);
        Ok((ok, format!("products agree {agree}/500; confluent reductions {confluent}/500")))
    })();
    finish(8, "group engine oracle", start, r)
}

/// Gram matrix of `{id, A, B, D, DB, D²}` is positive semidefinite at three admissible δ.
pub fn criterion9() -> CriterionResult {
    let start = Instant::now();
    let r = (|| {
        let (a, b, dd) = (FElement::a(), FElement::b(), FElement::d());
        let els = vec![
            FElement::identity(),
            a,
            b.clone(),
            dd.clone(),
            dd.multiply(&b),
            dd.multiply(&dd),
        ];
        let gram = Engine::exact().gram(Vacuum::Psi, &els)?;
        let mut ok = true;
        let mut parts = Vec::new();
        for delta in [Numeric::root_of_unity(5).delta, Numeric::root_of_unity(6).delta, 2.0] {
            let m = min_eigenvalue(&gram, delta);
            ok &= m >= -1e-9;
            parts.push(format!("δ = {delta:.6}: λ_min = {m:.3e}"));
        }
        Ok((ok, parts.join("; ")))
    })();
    finish(9, "positivity", start, r)
}

/// Every exact value from criteria 1-6, evaluated at δ = 2, matches numeric mode.
pub fn criterion10(ledger: &Ledger) -> CriterionResult {
    let start = Instant::now();
    let r = (|| {
        let num = Engine::numeric(2.0);
        let mut worst = 0.0f64;
        let mut bad = 0;
        for (q, exact) in ledger {
            let x = exact.to_f64(2.0);
            let y = evaluate(&num, q)?.to_f64(2.0);
            let err = (x - y).abs() / 1f64.max(x.abs());
            worst = worst.max(err);
            if err > 1e-9 {
                bad += 1;
            }
        }
        Ok((
            bad == 0 && !ledger.is_empty(),
            format!("{} values compared, {bad} mismatches, worst relative error {worst:.2e}", ledger.len()),
        ))
    })();
    finish(10, "exact/numeric agreement", start, r)
}

/// Runs every criterion in order.
pub fn run_all() -> Vec<CriterionResult> {
    let mut ledger = Ledger::new();
    let mut out = vec![
        criterion1(&mut ledger),
        criterion2(&mut ledger),
        criterion3(&mut ledger),
        criterion4(&mut ledger),
        criterion5(&mut ledger),
        criterion6(&mut ledger),
    ];
    out.push(criterion7());
    out.push(criterion8());
    out.push(criterion9());
    out.push(criterion10(&ledger));
    out
}
