//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so every line prints regardless of capture settings.

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use menulearn::audit::{self, AuditConfig, Axiom};
use menulearn::comparative::{self, witness_corpus, CheckStatus};
use menulearn::criteria::{bml_compare, hml_compare, jml_compare, sl_compare};
use menulearn::evaluation::{benefit_of_information, mix_menus, support_value};
use menulearn::generate::{shrink_toward_worst, Bounds, Sampler};
use menulearn::rational::{int, rat};
use menulearn::rationalize::{self, AlphaPolicy};
use menulearn::{
    Collection, CredalSet, InfoStructure, Instance, Menu, Posterior, Preference, Rational, Verdict,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    ensure(start.elapsed() < limit, || {
        format!("took {:?}, limit {:?}", start.elapsed(), limit)
    })
}

struct Worked {
    inst: Instance,
    f: Menu,
    gh: Menu,
    fstar: Menu,
    dp: InfoStructure,
    pi: InfoStructure,
}

/// Two states, prizes worth 0, 2 and 3; the uniform prior either stays put
/// or is fully revealed.
fn worked() -> Worked {
    let inst = Instance::new(
        vec!["w1".into(), "w2".into()],
        vec!["zero".into(), "two".into(), "three".into()],
        vec![int(0), int(2), int(3)],
    )
    .unwrap();
    let sure = |z: usize| inst.degenerate(z);
    let f = Menu::singleton(inst.act(vec![sure(1), sure(1)]).unwrap());
    let gh = Menu::new([
        inst.act(vec![sure(2), sure(0)]).unwrap(),
        inst.act(vec![sure(0), sure(2)]).unwrap(),
    ])
    .unwrap();
    let half = inst.lottery(vec![int(0), rat(1, 2), rat(1, 2)]).unwrap();
    let fstar = Menu::singleton(inst.act(vec![half.clone(), half]).unwrap());
    let dp = InfoStructure::point(inst.uniform_posterior());
    let pi = InfoStructure::new([
        (inst.point_posterior(0), rat(1, 2)),
        (inst.point_posterior(1), rat(1, 2)),
    ])
    .unwrap();
    Worked {
        inst,
        f,
        gh,
        fstar,
        dp,
        pi,
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let w = worked();
    let b = |m: &Menu, p: &InfoStructure| benefit_of_information(&w.inst, m, p);
    let expected = [
        (b(&w.f, &w.dp), int(2)),
        (b(&w.f, &w.pi), int(2)),
        (b(&w.gh, &w.dp), rat(3, 2)),
        (b(&w.gh, &w.pi), int(3)),
    ];
    for (i, (got, want)) in expected.iter().enumerate() {
        ensure(got == want, || format!("value {i}: got {got}, want {want}"))?;
    }
    let set = CredalSet::new(vec![w.dp.clone(), w.pi.clone()]).unwrap();
    let v = bml_compare(&w.inst, &w.f, &w.gh, &set);
    ensure(v == Verdict::Incomparable, || format!("bml verdict {v}"))?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("values 2, 2, 3/2, 3; bml Incomparable in {:?}", start.elapsed()))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let w = worked();
    for p in [&w.dp, &w.pi] {
        let v = benefit_of_information(&w.inst, &w.fstar, p);
        ensure(v == rat(5, 2), || format!("b(fstar) = {v}"))?;
    }
    let set = CredalSet::new(vec![w.dp.clone(), w.pi.clone()]).unwrap();
    let pref = Preference::jml(w.inst.clone(), set);
    let verdicts = [
        (pref.compare(&w.fstar, &w.gh), Verdict::Indifferent),
        (pref.compare(&w.f, &w.gh), Verdict::Indifferent),
        (pref.compare(&w.fstar, &w.f), Verdict::StrictBetter),
    ];
    for (got, want) in verdicts {
        ensure(got == want, || format!("jml verdict {got}, want {want}"))?;
    }
    let corpus = vec![w.fstar.clone(), w.gh.clone(), w.f.clone()];
    let report = audit::audit(&pref, &corpus, &AuditConfig::with_axioms(vec![Axiom::Transitivity]))
        .map_err(|e| e.to_string())?;
    let result = report.get(Axiom::Transitivity).unwrap();
    let cex = result
        .counterexample
        .as_ref()
        .ok_or("transitivity not flagged")?;
    let mut flagged = cex.menus.clone();
    flagged.sort();
    let mut triple = corpus.clone();
    triple.sort();
    ensure(flagged == triple, || "counterexample is not {fstar, gh, f}".into())?;
    ensure(audit::replay(&pref, cex), || "counterexample does not replay".into())?;
    within(start, Duration::from_secs(1))?;
    Ok(format!(
        "b(fstar) = 5/2; jml verdicts match; transitivity violation flagged in {:?}",
        start.elapsed()
    ))
}

fn criterion_3() -> Outcome {
    use Axiom::*;
    let start = Instant::now();
    let matrix: [(&str, Vec<Axiom>); 3] = [
        (
            "bml",
            vec![
                CompletenessForLotteries,
                Transitivity,
                PreferenceForFlexibility,
                DominanceAxiom,
                Independence,
                ExPostRandomization,
            ],
        ),
        (
            "jml",
            vec![
                Completeness,
                UnambiguousTransitivity,
                FavorableMixingMonotonicity,
                Independence,
            ],
        ),
        (
            "hml",
            vec![Reflexivity, UnambiguousTransitivity, CompletenessForLotteries],
        ),
    ];
    let instances = 50;
    let mut audited = 0usize;
    let mut vacuous = 0usize;
    for seed in 0..instances {
        let mut sampler = Sampler::new(1_000 + seed);
        let inst = sampler.instance();
        let set = sampler.credal_set(&inst);
        let coll = sampler.collection(&inst);
        for (label, axioms) in &matrix {
            let pref = match *label {
                "bml" => Preference::bml(inst.clone(), set.clone()),
                "jml" => Preference::jml(inst.clone(), set.clone()),
                _ => Preference::hml(inst.clone(), coll.clone()),
            };
            let config = AuditConfig {
                axioms: axioms.clone(),
                corpus_size: 10,
                seed,
                ..AuditConfig::default()
            };
            let corpus = audit::generate_corpus(&inst, &config);
            let report = audit::audit(&pref, &corpus, &config).map_err(|e| e.to_string())?;
            for r in &report.results {
                audited += 1;
                if r.status == menulearn::audit::AxiomStatus::Vacuous {
                    vacuous += 1;
                }
                ensure(!r.status.is_fail(), || {
                    format!("seed {seed}: {label} fails {}", r.axiom)
                })?;
            }
        }
    }
    within(start, Duration::from_secs(300))?;
    Ok(format!(
        "{instances} instances, {audited} axiom audits ({vacuous} vacuous), 0 failures in {:?}",
        start.elapsed()
    ))
}

fn criterion_4() -> Outcome {
    let mut pairs = 0usize;
    let mut seed = 0u64;
    while pairs < 1_000 {
        let mut s = Sampler::new(40_000 + seed);
        seed += 1;
        let inst = s.instance();
        let set = s.credal_set(&inst);
        let coll = s.collection(&inst);
        let pi = s.info_structure(&inst);
        let single = CredalSet::singleton(pi.clone());
        for _ in 0..5 {
            let (f, g) = (s.menu(&inst), s.menu(&inst));
            let checks = [
                (
                    "hml single member vs bml",
                    hml_compare(&inst, &f, &g, &Collection::single(set.clone())),
                    bml_compare(&inst, &f, &g, &set),
                ),
                (
                    "hml singleton members vs jml",
                    hml_compare(&inst, &f, &g, &Collection::singletons_of(&set)),
                    jml_compare(&inst, &f, &g, &set),
                ),
                (
                    "bml singleton vs sl",
                    bml_compare(&inst, &f, &g, &single),
                    sl_compare(&inst, &f, &g, &pi),
                ),
                (
                    "jml singleton vs sl",
                    jml_compare(&inst, &f, &g, &single),
                    sl_compare(&inst, &f, &g, &pi),
                ),
            ];
            for (name, a, b) in checks {
                ensure(a == b, || format!("seed {}: {name}: {a} vs {b}", seed - 1))?;
            }
            // the generic preference agrees with the direct comparators
            let direct = hml_compare(&inst, &f, &g, &coll);
            let generic = Preference::hml(inst.clone(), coll.clone()).compare(&f, &g);
            ensure(direct == generic, || format!("hml generic {generic} vs direct {direct}"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs, 0 mismatches across 4 identities"))
}

fn criterion_5() -> Outcome {
    let mut nested = 0usize;
    let mut nonvacuous = 0usize;
    let mut seed = 0u64;
    while nested < 25 {
        let mut s = Sampler::new(50_000 + seed);
        seed += 1;
        let inst = s.instance();
        let outer = s.credal_set(&inst);
        let inner = s.nested_subset(&outer);
        ensure(comparative::credal_subset(&inner, &outer).map_err(|e| e.to_string())?, || {
            format!("seed {}: constructed subset not recognized", seed - 1)
        })?;
        let corpus = witness_corpus(&inst, seed, 30);
        ensure(corpus.len() >= 30, || format!("corpus of {}", corpus.len()))?;
        let (b1, b2) = (
            Preference::bml(inst.clone(), inner.clone()),
            Preference::bml(inst.clone(), outer.clone()),
        );
        let (j1, j2) = (
            Preference::jml(inst.clone(), inner),
            Preference::jml(inst.clone(), outer),
        );
        let reports = [
            comparative::check_more_decisive(&b1, &b2, &corpus),
            comparative::check_less_negative_inconsistent(&b1, &b2, &corpus),
            comparative::check_more_strict_decisive(&j1, &j2, &corpus),
            comparative::check_less_inconsistent(&j1, &j2, &corpus),
        ];
        for r in &reports {
            ensure(r.passed(), || format!("seed {}: {} failed at {:?}", seed - 1, r.check, r.witness))?;
            if r.status == CheckStatus::Pass {
                nonvacuous += 1;
            }
        }
        nested += 1;
    }
    Ok(format!(
        "{nested} nested pairs on 30-menu corpora, 4 checks each ({nonvacuous} non-vacuous), 0 failures"
    ))
}

fn verdicts(inst: &Instance, menus: &[Menu], set: &CredalSet, coll: &Collection) -> Vec<Verdict> {
    let mut out = Vec::new();
    for f in menus {
        for g in menus {
            out.push(bml_compare(inst, f, g, set));
            out.push(jml_compare(inst, f, g, set));
            out.push(hml_compare(inst, f, g, coll));
        }
    }
    out
}

fn criterion_6() -> Outcome {
    let trials = 500;
    for t in 0..trials {
        let mut s = Sampler::new(60_000 + t);
        let inst = s.instance();
        let set = s.credal_set(&inst);
        let coll = s.collection(&inst);
        let menus: Vec<Menu> = (0..4).map(|_| s.menu(&inst)).collect();
        let base = verdicts(&inst, &menus, &set, &coll);

        let extra = s.point_in(&set);
        let padded = set.with_generator(extra).map_err(|e| e.to_string())?;
        let padded_coll = Collection::new(
            coll.members()
                .iter()
                .map(|m| {
                    let p = s.point_in(m);
                    m.with_generator(p).unwrap()
                })
                .collect(),
        )
        .unwrap();
        ensure(verdicts(&inst, &menus, &padded, &padded_coll) == base, || {
            format!("trial {t}: redundant generator changed a verdict")
        })?;

        let affine = inst.with_affine_utility(&int(3), &int(7)).map_err(|e| e.to_string())?;
        ensure(verdicts(&affine, &menus, &set, &coll) == base, || {
            format!("trial {t}: 3u+7 changed a verdict")
        })?;
    }
    Ok(format!("{trials} redundant-generator trials and {trials} affine trials, 0 changes"))
}

/// Expected utility of each act at `p`, maximised, computed from scratch.
fn phi_oracle(inst: &Instance, menu: &Menu, p: &Posterior) -> Rational {
    menu.acts()
        .iter()
        .map(|a| {
            a.outcomes()
                .iter()
                .zip(p.probs())
                .map(|(x, q)| {
                    let eu: Rational = x
                        .probs()
                        .iter()
                        .zip(inst.utility())
                        .map(|(pr, u)| pr * u)
                        .sum();
                    eu * q
                })
                .sum::<Rational>()
        })
        .max()
        .unwrap()
}

fn criterion_7() -> Outcome {
    let triples = 1_000;
    for t in 0..triples {
        let mut s = Sampler::new(70_000 + t);
        let inst = s.instance();
        let (f, g) = (s.menu(&inst), s.menu(&inst));
        let p = s.posterior(&inst);
        let a = s.weight();
        let mixed = mix_menus(&f, &g, &a).map_err(|e| e.to_string())?;
        let lhs = support_value(&inst, &mixed, &p);
        let rhs = &a * phi_oracle(&inst, &f, &p) + (int(1) - &a) * phi_oracle(&inst, &g, &p);
        ensure(lhs == rhs, || format!("triple {t}: phi({a} F + (1-a) G) = {lhs}, expected {rhs}"))?;

        let (p1, p2) = (s.info_structure(&inst), s.info_structure(&inst));
        let mix = p1.mix(&p2, &a).map_err(|e| e.to_string())?;
        let lhs = benefit_of_information(&inst, &f, &mix);
        let by_hand = |pi: &InfoStructure| -> Rational {
            pi.support().iter().map(|(q, w)| w * phi_oracle(&inst, &f, q)).sum()
        };
        let rhs = &a * by_hand(&p1) + (int(1) - &a) * by_hand(&p2);
        ensure(lhs == rhs, || format!("triple {t}: b not linear in pi ({lhs} vs {rhs})"))?;
    }
    Ok(format!("{triples} menu triples and {triples} structure triples, exact"))
}

fn criterion_8() -> Outcome {
    let configs = 500;
    let policies = [
        ("cautious", AlphaPolicy::Cautious),
        ("optimistic", AlphaPolicy::Optimistic),
        ("const 1/2", AlphaPolicy::Constant(rat(1, 2))),
    ];
    let mut sandwiched = 0usize;
    for c in 0..configs {
        let mut s = Sampler::new(80_000 + c);
        let inst = s.instance();
        let coll = s.collection(&inst);
        let mut corpus: Vec<Menu> = (0..3).map(|_| s.menu(&inst)).collect();
        corpus.push(s.constant_menu(&inst));
        let shrunk = shrink_toward_worst(&inst, &corpus[0], &rat(1, 2));
        corpus.push(shrunk);
        let lotteries: Vec<Menu> = (0..inst.num_prizes())
            .map(|z| Menu::constant(&inst, &inst.degenerate(z)).unwrap())
            .chain((0..2).map(|_| s.constant_menu(&inst)))
            .collect();
        let grid = rationalize::utility_grid(&inst, 12);
        for (name, policy) in &policies {
            let value = |m: &Menu| rationalize::rationalized_value(&inst, m, &coll, policy).unwrap();
            for m in &corpus {
                let band = rationalize::scenario_band(&inst, m, &coll);
                ensure(band.contains(&value(m)), || format!("config {c} {name}: value outside band"))?;
            }
            for x in &lotteries {
                let u = inst.lottery_utility(&x.acts()[0].outcomes()[0]);
                ensure(value(x) == u, || format!("config {c} {name}: U(x) = {} but u(x) = {u}", value(x)))?;
            }
            let report = rationalize::check_consistency(&inst, &coll, value, &corpus, &lotteries, &grid)
                .map_err(|e| e.to_string())?;
            ensure(report.passed(), || format!("config {c} {name}: {report:?}"))?;
            sandwiched += report.sandwiched_pairs;

            let ranking = rationalize::rank_menus(&inst, &corpus, &coll, policy).map_err(|e| e.to_string())?;
            ensure(ranking.len() == corpus.len(), || "ranking drops menus".into())?;
            for pair in ranking.windows(2) {
                let (a, b) = (&pair[0], &pair[1]);
                let ok = (a.value > b.value && b.rank == a.rank + 1)
                    || (a.value == b.value && a.rank == b.rank);
                ensure(ok, || format!("config {c} {name}: ranking not a dense total preorder"))?;
            }
        }
    }
    Ok(format!(
        "{configs} configurations x 3 policies; {sandwiched} sandwiched pairs, all consistent"
    ))
}

/// An information structure as posterior -> weight.
fn as_map(pi: &InfoStructure) -> BTreeMap<Vec<Rational>, Rational> {
    let mut out = BTreeMap::new();
    for (q, w) in pi.support() {
        *out.entry(q.probs().to_vec()).or_insert_with(|| int(0)) += w;
    }
    out
}

fn grid_weights(n: usize, denom: i64) -> Vec<Vec<i64>> {
    if n == 1 {
        return vec![vec![denom]];
    }
    let mut out = Vec::new();
    for k in 0..=denom {
        for mut rest in grid_weights(n - 1, denom - k) {
            rest.insert(0, k);
            out.push(rest);
        }
    }
    out
}

/// `Some(true)` if every inner generator is a grid combination of the outer
/// generators; `Some(false)` if some inner generator leaves the bounding box
/// of the outer ones; `None` otherwise.
fn grid_oracle(inner: &CredalSet, outer: &CredalSet, denom: i64) -> Option<bool> {
    let outer_maps: Vec<_> = outer.generators().iter().map(as_map).collect();
    let combos = grid_weights(outer_maps.len(), denom);
    let mut all_found = true;
    for g in inner.generators() {
        let target = as_map(g);
        let keys: Vec<&Vec<Rational>> = target
            .keys()
            .chain(outer_maps.iter().flat_map(|m| m.keys()))
            .collect();
        for k in &keys {
            let at = |m: &BTreeMap<Vec<Rational>, Rational>| m.get(*k).cloned().unwrap_or_else(|| int(0));
            let lo = outer_maps.iter().map(at).min().unwrap();
            let hi = outer_maps.iter().map(at).max().unwrap();
            let v = at(&target);
            if v < lo || v > hi {
                return Some(false);
            }
        }
        let found = combos.iter().any(|lam| {
            let mut acc: BTreeMap<Vec<Rational>, Rational> = BTreeMap::new();
            for (m, l) in outer_maps.iter().zip(lam) {
                if *l == 0 {
                    continue;
                }
                for (q, w) in m {
                    *acc.entry(q.clone()).or_insert_with(|| int(0)) += w * rat(*l, denom);
                }
            }
            acc == target
        });
        all_found &= found;
    }
    all_found.then_some(true)
}

fn criterion_9() -> Outcome {
    let bounds = Bounds {
        max_states: 2,
        max_support: 2,
        max_generators: 3,
        grid: 2,
        ..Bounds::default()
    };
    let (mut decided, mut yes, mut no, mut undecided) = (0usize, 0usize, 0usize, 0usize);
    let mut case = 0u64;
    while decided < 120 && case < 5_000 {
        let mut s = Sampler::with_bounds(90_000 + case, bounds);
        case += 1;
        let inst = s.instance();
        let outer = s.credal_set(&inst);
        // alternate between constructed members and unrelated sets
        let inner = if case.is_multiple_of(2) {
            s.nested_subset(&outer)
        } else {
            s.credal_set(&inst)
        };
        let fast = comparative::credal_subset(&inner, &outer).map_err(|e| e.to_string())?;
        match grid_oracle(&inner, &outer, 12) {
            Some(truth) => {
                ensure(truth == fast, || {
                    format!("case {}: oracle says {truth}, credal_subset says {fast}", case - 1)
                })?;
                decided += 1;
                if truth {
                    yes += 1
                } else {
                    no += 1
                }
            }
            None => undecided += 1,
        }
    }
    ensure(decided >= 100, || format!("only {decided} decided cases"))?;
    ensure(yes > 0 && no > 0, || format!("one-sided sample: {yes} in, {no} out"))?;
    Ok(format!(
        "{decided} decided cases ({yes} inside, {no} outside, {undecided} undecided), 0 disagreements"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("example 1 reproduction", criterion_1),
        ("example 2 reproduction", criterion_2),
        ("axiom-necessity matrix", criterion_3),
        ("reduction identities", criterion_4),
        ("comparative statics", criterion_5),
        ("uniqueness surrogates", criterion_6),
        ("support-function identities", criterion_7),
        ("rationalization", criterion_8),
        ("convex-membership oracle", criterion_9),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|p| {
                let msg = p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                Err(format!("panicked: {msg}"))
            });
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", i + 1)
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
