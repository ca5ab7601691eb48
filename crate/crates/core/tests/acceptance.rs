//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Every check is exact; the only tolerances are the wall-clock
//! budgets below.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use taftcleft::algebra::Algebra;
use taftcleft::cleft::{all_data, all_data_b0, CleftAlgebra, CleftData};
use taftcleft::identities::{
    brute_force_comodule_solutions, build_pa, build_qu, enumerate_comodule_maps, evaluate,
    ComoduleMap, ZPolynomial,
};
use taftcleft::iso::{
    compatibility, extends_to_isomorphism, CriterionRoots, ExhaustiveDecider, IsoContext,
    IsoDecider, IsoWitness, RootFinder,
};
use taftcleft::ring::{
    check_hypotheses, cyclotomic_polynomial, cyclotomic_roots, ring_structure, Elem, FiniteRing,
};
use taftcleft::taft::{check_hopf_axioms, q_binomial, skew_binomial_check, TaftAlgebra};
use taftcleft::verify::{verify_theorem, VerifyOptions};

use common::*;

const HOPF_BUDGET: Duration = Duration::from_secs(1);
const IDENTITY_BUDGET: Duration = Duration::from_secs(10);
const VERIFY_BUDGET: Duration = Duration::from_secs(300);

/// (ring, N, q) for the two small test algebras.
const SMALL: &[(&str, usize, &str)] = &[("Z/5", 2, "4"), ("Z/7", 3, "2")];

/// (ring, N, q, expected classes) for the main verifier runs.
const VERIFY_RINGS: &[(&str, usize, &str, usize)] = &[
    ("Z/5", 2, "4", 10),
    ("Z/7", 3, "2", 21),
    ("GF(2^2)", 3, "[0,1]", 12),
    ("Z/25", 2, "24", 50),
    ("F_5[t]/(t^2)", 2, "4", 50),
    ("Z/5 x Z/5", 2, "[4,4]", 100),
];

/// Rings with at most 625 elements for the structure oracles.
const ORACLE_RINGS: &[&str] = &[
    "Z/2",
    "Z/3",
    "Z/4",
    "Z/5",
    "Z/6",
    "Z/7",
    "Z/8",
    "Z/9",
    "Z/10",
    "Z/11",
    "Z/12",
    "Z/13",
    "Z/14",
    "Z/15",
    "Z/16",
    "Z/18",
    "Z/20",
    "Z/21",
    "Z/24",
    "Z/25",
    "Z/27",
    "Z/30",
    "Z/35",
    "Z/49",
    "Z/625",
    "GF(4)",
    "GF(8)",
    "GF(9)",
    "GF(16)",
    "GF(25)",
    "GF(27)",
    "GF(49)",
    "GF(81)",
    "GF(5^4)",
    "F_5[t]/(t^2)",
    "F_3[t]/(t^3)",
    "Z/4[t]/(t^2+t+1)",
    "Z/9[t]/(t^2+1)",
    "Z/5 x Z/5",
    "Z/7 x Z/7",
    "Z/3 x Z/5",
    "Z/2 x GF(4)",
    "Z/3 x GF(4)",
    "Z/5 x F_5[t]/(t^2)",
    "Z/25 x Z/25",
];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn cleft(h: &Arc<TaftAlgebra>, d: CleftData) -> CleftAlgebra {
    CleftAlgebra::new(h.clone(), d).unwrap()
}

fn hopf_axioms() -> Outcome {
    let mut details = Vec::new();
    let mut pass = true;
    for &(spec, n, q) in SMALL {
        let start = Instant::now();
        let h = taft(spec, n, q);
        let axioms = check_hopf_axioms(&h);
        let elapsed = start.elapsed();
        pass &= axioms.all() && elapsed < HOPF_BUDGET;
        details.push(format!("{spec} N={n}: {:?} in {elapsed:.2?}", axioms.all()));
    }
    outcome(pass, details.join(", "))
}

fn q_binomial_theorem() -> Outcome {
    let mut pass = true;
    let mut checks = 0;
    for &(spec, n, q) in SMALL {
        let h = taft(spec, n, q);
        let r = h.ring().clone();
        for k in 1..=n {
            pass &= skew_binomial_check(h.params(), k);
            checks += 1;
            for i in 0..=k {
                pass &= q_binomial(&r, k as i64, i as i64, h.q()).unwrap()
                    == gaussian_binomial(&r, h.q(), k, i);
            }
        }
        // (x + g)^N = x^N + g^N = 1 in H, with x g = q g x
        let sum = h.g().add(&r, &h.x());
        pass &= h.pow(&sum, n as u64) == h.one();
        for i in 1..n {
            pass &= gaussian_binomial(&r, h.q(), n, i) == r.zero();
        }
    }
    outcome(
        pass,
        format!("{checks} skew binomial expansions, N-th power collapse on both rings"),
    )
}

fn comodule_families() -> Outcome {
    let h = taft("Z/5", 2, "4");
    let r = h.ring().clone();
    let mut pass = true;
    let mut cases = 0;
    let set = |v: Vec<taftcleft::cleft::CleftElement>| -> BTreeSet<Vec<Elem>> {
        v.into_iter().map(|e| e.coeffs().to_vec()).collect()
    };
    for d in all_data_b0(&r) {
        let b = cleft(&h, d);
        let none = BTreeMap::new();
        let e_want: BTreeSet<_> = r
            .elements()
            .map(|l| b.scalar(l).coeffs().to_vec())
            .collect();
        pass &= set(brute_force_comodule_solutions(&b, (0, 0), &none).unwrap()) == e_want;
        let g_want: BTreeSet<_> = r
            .elements()
            .map(|mu| b.v_g().scale(&r, mu).coeffs().to_vec())
            .collect();
        pass &= set(brute_force_comodule_solutions(&b, (1, 0), &none).unwrap()) == g_want;
        for lambda in r.elements() {
            let known: BTreeMap<_, _> = [((0, 0), b.scalar(lambda))].into_iter().collect();
            let x_want: BTreeSet<_> = r
                .elements()
                .map(|xi| {
                    b.v_x()
                        .scale(&r, lambda)
                        .add(&r, &b.v_g().scale(&r, xi))
                        .coeffs()
                        .to_vec()
                })
                .collect();
            pass &= set(brute_force_comodule_solutions(&b, (0, 1), &known).unwrap()) == x_want;
        }
        cases += 1;
    }
    outcome(pass, format!("{cases} data x 3 labels over Z/5"))
}

fn pa_vanishes() -> Outcome {
    let start = Instant::now();
    let mut pass = true;
    let mut evaluations = 0;
    for &(spec, n, q) in SMALL {
        let h = taft(spec, n, q);
        let r = h.ring().clone();
        for d in all_data_b0(&r) {
            let b = cleft(&h, d);
            let p = build_pa(&r, n, h.q(), d.a);
            for f in enumerate_comodule_maps(&b, 1).unwrap() {
                pass &= evaluate(&b, &p, &f).unwrap().is_zero(&r);
                evaluations += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    pass &= elapsed < IDENTITY_BUDGET;
    outcome(
        pass,
        format!("{evaluations} evaluations (20 + 42 data) in {elapsed:.2?}"),
    )
}

fn qu_vanishes() -> Outcome {
    let mut pass = true;
    let mut evaluations = 0;
    for &(spec, n, q) in SMALL {
        let h = taft(spec, n, q);
        let r = h.ring().clone();
        let (alpha, beta) = (alpha(&r), beta(&r));
        let k = alpha / n as u64;
        for d in all_data_b0(&r) {
            let b = cleft(&h, d);
            let p = build_qu(&r, n, d.u, alpha, beta).unwrap();
            let vg_beta = b.pow(&b.v_g(), beta);
            for f in enumerate_comodule_maps(&b, 1).unwrap() {
                let value = evaluate(&b, &p, &f).unwrap();
                let mu = f.params[0][1];
                let c = r.mul(
                    r.mul(power(&r, d.u, k), r.sub(r.one(), power(&r, mu, alpha))),
                    power(&r, mu, beta),
                );
                pass &= value.is_zero(&r) && value == vg_beta.scale(&r, c);
                evaluations += 1;
            }
        }
    }
    outcome(
        pass,
        format!("{evaluations} evaluations, closed form matches each"),
    )
}

fn separation() -> Outcome {
    let h = taft("Z/5", 2, "4");
    let r = h.ring().clone();
    let ctx = IsoContext::new(h.clone());
    let (alpha, beta) = (alpha(&r), beta(&r));
    let gamma = ComoduleMap::gamma(&r, 1);
    let data = all_data_b0(&r);
    let mut pass = true;
    let mut pairs = 0;
    for (i, &d) in data.iter().enumerate() {
        for &d2 in &data[i + 1..] {
            if ExhaustiveDecider.decide(&ctx, &d, &d2).unwrap().is_some() {
                continue;
            }
            pairs += 1;
            let (b, b2) = (cleft(&h, d), cleft(&h, d2));
            let nonzero = |alg: &CleftAlgebra, p: ZPolynomial| {
                !evaluate(alg, &p, &gamma).unwrap().is_zero(&r)
            };
            let pa_sep = nonzero(&b, build_pa(&r, 2, h.q(), d2.a))
                || nonzero(&b2, build_pa(&r, 2, h.q(), d.a));
            let qu_sep = nonzero(&b, build_qu(&r, 2, d2.u, alpha, beta).unwrap())
                || nonzero(&b2, build_qu(&r, 2, d.u, alpha, beta).unwrap());
            // the proofs separate by P_a exactly when a differs, otherwise by Q_u
            pass &= if d.a != d2.a { pa_sep } else { qu_sep };
        }
    }
    outcome(pass, format!("{pairs} non-isomorphic pairs over Z/5"))
}

fn main_theorem() -> Outcome {
    let start = Instant::now();
    let mut pass = true;
    let mut details = Vec::new();
    for &(spec, n, q, expected) in VERIFY_RINGS {
        let r = ring(spec);
        let oracle = class_count(&r, n);
        let q = r.parse_elem(q).unwrap();
        let report = verify_theorem(r, n, q, &VerifyOptions::default()).unwrap();
        let ok = report.ok() && report.classes == expected && oracle == expected;
        pass &= ok;
        details.push(format!(
            "{spec}: {} classes, {} counterexamples",
            report.classes,
            report.counterexamples.len()
        ));
    }
    let elapsed = start.elapsed();
    pass &= elapsed < VERIFY_BUDGET;
    outcome(pass, format!("{} in {elapsed:.2?}", details.join("; ")))
}

fn criterion_consistency() -> Outcome {
    let h = taft("Z/5", 2, "4");
    let r = h.ring().clone();
    let data = all_data(&r);
    let algebras: Vec<CleftAlgebra> = data.iter().map(|&d| cleft(&h, d)).collect();
    let witnesses: Vec<IsoWitness> = r
        .units()
        .into_iter()
        .flat_map(|s| r.elements().map(move |t| IsoWitness { s, t }))
        .collect();
    let (checks, isos, disagreements) = (0..data.len())
        .into_par_iter()
        .map(|i| {
            let mut counts = (0usize, 0usize, 0usize);
            for j in 0..data.len() {
                for w in &witnesses {
                    let equations = compatibility(&h, &data[i], &data[j], w) == [true; 3];
                    let extends = extends_to_isomorphism(&algebras[j], &algebras[i], w);
                    counts.0 += 1;
                    counts.1 += extends as usize;
                    counts.2 += (equations != extends) as usize;
                }
            }
            counts
        })
        .reduce(|| (0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
    outcome(
        disagreements == 0,
        format!("{checks} (pair, s, t) checks over 100 data, {isos} isomorphisms, {disagreements} disagreements"),
    )
}

fn galois_property() -> Outcome {
    let mut pass = true;
    let mut details = Vec::new();
    let start = Instant::now();
    for &(spec, n, q, _) in VERIFY_RINGS {
        let h = taft(spec, n, q);
        let data = all_data(h.ring());
        let failures = data
            .par_iter()
            .filter(|&&d| !cleft(&h, d).galois_check())
            .count();
        pass &= failures == 0;
        details.push(format!("{spec}: {}", data.len()));
    }
    outcome(
        pass,
        format!("{} data in {:.2?}", details.join(", "), start.elapsed()),
    )
}

/// Whether the unit c has an N-th root, by search.
fn has_root(r: &FiniteRing, us: &[Elem], c: Elem, n: usize) -> bool {
    us.iter().any(|&s| power(r, s, n as u64) == c)
}

fn structure_oracles() -> Outcome {
    let mut pass = true;
    let mut global_failures = Vec::new();
    let mut cyclotomic_ok = true;
    for n in 1..=12 {
        cyclotomic_ok &= cyclotomic_polynomial(n) == cyclotomic_float(n);
    }
    pass &= cyclotomic_ok;
    let results: Vec<(bool, Vec<String>)> = ORACLE_RINGS
        .par_iter()
        .map(|&spec| {
            let r = ring(spec);
            let s = ring_structure(&r);
            let mut ok = s.alpha == alpha(&r) && s.beta == beta(&r);
            ok &= s.idempotents.iter().copied().collect::<BTreeSet<_>>()
                == primitive_idempotents(&r)
                    .into_iter()
                    .collect::<BTreeSet<_>>();
            let us = units(&r);
            let mut global = Vec::new();
            for n in 2..=6 {
                let phi = cyclotomic_float(n);
                let roots: Vec<Elem> = r
                    .elements()
                    .filter(|&x| eval_int_poly(&r, &phi, x) == r.zero())
                    .collect();
                ok &= cyclotomic_roots(&r, n) == roots;
                let Some(q) = roots
                    .iter()
                    .copied()
                    .find(|&q| check_hypotheses(&r, n, q).map(|h| h.ok).unwrap_or(false))
                else {
                    continue;
                };
                let h = taft(spec, n, &r.format(q));
                let ctx = IsoContext::new(h);
                let k = s.alpha / n as u64;
                for &c in &us {
                    let root = has_root(&r, &us, c, n);
                    ok &= CriterionRoots.nth_root(&ctx, c).unwrap().is_some() == root;
                    if (power(&r, c, k) == r.one()) != root {
                        global.push(format!("{spec} N={n} c={}", r.format(c)));
                    }
                }
            }
            (ok, global)
        })
        .collect();
    for (ok, global) in results {
        pass &= ok;
        global_failures.extend(global);
    }
    let mut detail = format!(
        "{} rings; alpha, beta, idempotents, cyclotomic roots and root finder agree: {pass}",
        ORACLE_RINGS.len()
    );
    if !global_failures.is_empty() {
        pass = false;
        detail.push_str(&format!(
            "; c^k = 1 with k = alpha/N yet no N-th root: {}",
            global_failures.join(", ")
        ));
    }
    outcome(pass, detail)
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Hopf axioms", hopf_axioms),
        ("q-binomial theorem", q_binomial_theorem),
        ("comodule map families", comodule_families),
        ("P_a is an identity", pa_vanishes),
        ("Q_u is an identity", qu_vanishes),
        ("separation under the section map", separation),
        ("main theorem verifier", main_theorem),
        ("isomorphism equations", criterion_consistency),
        ("Galois property", galois_property),
        ("structure oracles", structure_oracles),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        failed += !o.pass as usize;
        println!(
            "criterion {:>2} {}: {} ({}; {:.2?})",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            name,
            o.detail,
            start.elapsed()
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
