//! Invariants over seeded random instances. Proptest drives the seeds; the
//! sampler turns each seed into a small instance with menus and structures.

use menulearn::audit::{self, AuditConfig, Axiom};
use menulearn::comparative::credal_subset;
use menulearn::criteria::{bml_compare, jml_compare};
use menulearn::evaluation::{benefit_of_information, dominates, mix_menus, randomize, support_value};
use menulearn::generate::{shrink_toward_worst, Sampler};
use menulearn::rational::{format_rational, int, parse_rational, rat};
use menulearn::rationalize::{robust_strict, scenario_band};
use menulearn::{mean_posterior, Collection, CredalSet, Menu, Preference, Rational, Verdict};
use proptest::prelude::*;

fn cases(n: u32) -> ProptestConfig {
    ProptestConfig {
        cases: n,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(cases(96))]

    #[test]
    fn rationals_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let q = rat(n, d);
        prop_assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
    }

    #[test]
    fn support_function_is_mixture_linear(seed: u64) {
        let mut s = Sampler::new(seed);
        let inst = s.instance();
        let (f, g, p, a) = (s.menu(&inst), s.menu(&inst), s.posterior(&inst), s.weight());
        let mixed = mix_menus(&f, &g, &a).unwrap();
        prop_assert_eq!(
            support_value(&inst, &mixed, &p),
            &a * support_value(&inst, &f, &p) + (int(1) - &a) * support_value(&inst, &g, &p)
        );
    }

    #[test]
    fn benefit_is_linear_in_structure(seed: u64) {
        let mut s = Sampler::new(seed);
        let inst = s.instance();
        let f = s.menu(&inst);
        let (p1, p2, a) = (s.info_structure(&inst), s.info_structure(&inst), s.weight());
        let mix = p1.mix(&p2, &a).unwrap();
        prop_assert_eq!(
            benefit_of_information(&inst, &f, &mix),
            &a * benefit_of_information(&inst, &f, &p1)
                + (int(1) - &a) * benefit_of_information(&inst, &f, &p2)
        );
    }

    #[test]
    fn support_function_is_convex_in_posterior(seed: u64) {
        let mut s = Sampler::new(seed);
        let inst = s.instance();
        let f = s.menu(&inst);
        let (p, q, a) = (s.posterior(&inst), s.posterior(&inst), s.weight());
        let mid = support_value(&inst, &f, &p.mix(&q, &a));
        prop_assert!(mid <= &a * support_value(&inst, &f, &p) + (int(1) - &a) * support_value(&inst, &f, &q));
    }

    #[test]
    fn benefit_is_monotone_in_menu_inclusion(seed: u64) {
        let mut s = Sampler::new(seed);
        let inst = s.instance();
        let (f, g, pi) = (s.menu(&inst), s.menu(&inst), s.info_structure(&inst));
        let both = f.union(&g);
        prop_assert!(benefit_of_information(&inst, &both, &pi) >= benefit_of_information(&inst, &f, &pi));
    }

    #[test]
    fn dominance_implies_benefit_order(seed: u64) {
        let mut s = Sampler::new(seed);
        let inst = s.instance();
        let f = s.interior_menu(&inst);
        let g = shrink_toward_worst(&inst, &f, &s.weight());
        let pi = s.info_structure(&inst);
        prop_assert!(dominates(&inst, &f, &g, true));
        prop_assert!(benefit_of_information(&inst, &f, &pi) > benefit_of_information(&inst, &g, &pi));
    }

    #[test]
    fn ex_post_randomization_leaves_benefit_unchanged(seed: u64) {
        let mut s = Sampler::new(seed);
        let inst = s.instance();
        let (f, pi) = (s.menu(&inst), s.info_structure(&inst));
        let k = f.len();
        let raw: Vec<i64> = (0..k).map(|i| 1 + (seed.rotate_left(i as u32 * 7) % 4) as i64).collect();
        let total: i64 = raw.iter().sum();
        let betas: Vec<Rational> = raw.iter().map(|&r| rat(r, total)).collect();
        let r = randomize(&f, &betas).unwrap();
        prop_assert_eq!(benefit_of_information(&inst, &r, &pi), benefit_of_information(&inst, &f, &pi));
    }

    #[test]
    fn mean_posterior_is_affine(seed: u64) {
        let mut s = Sampler::new(seed);
        let inst = s.instance();
        let (p1, p2, a) = (s.info_structure(&inst), s.info_structure(&inst), s.weight());
        let mix = p1.mix(&p2, &a).unwrap();
        prop_assert_eq!(mean_posterior(&mix), mean_posterior(&p1).mix(&mean_posterior(&p2), &a));
    }

    #[test]
    fn redundant_generator_keeps_verdicts(seed: u64) {
        let mut s = Sampler::new(seed);
        let inst = s.instance();
        let set = s.credal_set(&inst);
        let padded = set.with_generator(s.point_in(&set)).unwrap();
        let (f, g) = (s.menu(&inst), s.menu(&inst));
        prop_assert_eq!(bml_compare(&inst, &f, &g, &set), bml_compare(&inst, &f, &g, &padded));
        prop_assert_eq!(jml_compare(&inst, &f, &g, &set), jml_compare(&inst, &f, &g, &padded));
    }

    #[test]
    fn positive_affine_utility_keeps_verdicts(seed: u64, scale in 1i64..6, shift in -5i64..6) {
        let mut s = Sampler::new(seed);
        let inst = s.instance();
        let coll = s.collection(&inst);
        let (f, g) = (s.menu(&inst), s.menu(&inst));
        let moved = inst.with_affine_utility(&int(scale), &int(shift)).unwrap();
        let before = Preference::hml(inst, coll.clone()).compare(&f, &g);
        prop_assert_eq!(before, Preference::hml(moved, coll).compare(&f, &g));
    }

    #[test]
    fn verdicts_are_antisymmetric(seed: u64) {
        let mut s = Sampler::new(seed);
        let inst = s.instance();
        let coll = s.collection(&inst);
        let (f, g) = (s.menu(&inst), s.menu(&inst));
        let pref = Preference::hml(inst, coll);
        prop_assert_eq!(pref.compare(&f, &g), pref.compare(&g, &f).reversed());
        prop_assert_eq!(pref.compare(&f, &f), Verdict::Indifferent);
    }

    #[test]
    fn credal_subset_is_a_preorder(seed: u64) {
        let mut s = Sampler::new(seed);
        let inst = s.instance();
        let outer = s.credal_set(&inst);
        let middle = s.nested_subset(&outer);
        let inner = s.nested_subset(&middle);
        prop_assert!(credal_subset(&outer, &outer).unwrap());
        prop_assert!(credal_subset(&inner, &middle).unwrap());
        prop_assert!(credal_subset(&middle, &outer).unwrap());
        prop_assert!(credal_subset(&inner, &outer).unwrap());
    }

    #[test]
    fn robust_strict_is_irreflexive_asymmetric_and_strict(seed: u64) {
        let mut s = Sampler::new(seed);
        let inst = s.instance();
        let coll = s.collection(&inst);
        let (f, g) = (s.menu(&inst), s.menu(&inst));
        prop_assert!(!robust_strict(&inst, &f, &f, &coll));
        if robust_strict(&inst, &f, &g, &coll) {
            prop_assert!(!robust_strict(&inst, &g, &f, &coll));
            let v = Preference::hml(inst.clone(), coll.clone()).compare(&f, &g);
            prop_assert_eq!(v, Verdict::StrictBetter);
        }
    }

    #[test]
    fn band_is_ordered_and_constant_menus_collapse(seed: u64) {
        let mut s = Sampler::new(seed);
        let inst = s.instance();
        let coll = s.collection(&inst);
        let band = scenario_band(&inst, &s.menu(&inst), &coll);
        prop_assert!(band.low <= band.high);
        prop_assert!(band.contains(&band.maxmin) && band.contains(&band.minmax));
        let x = s.lottery(&inst);
        let c = scenario_band(&inst, &Menu::constant(&inst, &x).unwrap(), &coll);
        prop_assert_eq!(&c.low, &c.high);
        prop_assert_eq!(c.low, inst.lottery_utility(&x));
    }
}

proptest! {
    #![proptest_config(cases(16))]

    /// Each criterion satisfies the axioms its representation needs.
    #[test]
    fn criteria_pass_their_axioms(seed: u64) {
        use Axiom::*;
        let mut s = Sampler::new(seed);
        let inst = s.instance();
        let set = s.credal_set(&inst);
        let config = AuditConfig { corpus_size: 8, seed, mixture_cap: 4, ..AuditConfig::default() };
        let corpus = audit::generate_corpus(&inst, &config);
        let cases = [
            (Preference::bml(inst.clone(), set.clone()), vec![Transitivity, PreferenceForFlexibility, Independence]),
            (Preference::jml(inst.clone(), set.clone()), vec![Completeness, Independence]),
            (Preference::hml(inst.clone(), Collection::singletons_of(&set)), vec![Completeness, UnambiguousTransitivity]),
        ];
        for (pref, axioms) in cases {
            let cfg = AuditConfig { axioms, ..config.clone() };
            let report = audit::audit(&pref, &corpus, &cfg).unwrap();
            prop_assert!(report.all_pass(), "{:?}", report.failures().map(|r| r.axiom).collect::<Vec<_>>());
        }
    }

    /// Any flagged counterexample replays against the same preference.
    #[test]
    fn counterexamples_replay(seed: u64) {
        let mut s = Sampler::new(seed);
        let inst = s.instance();
        let set = s.credal_set(&inst);
        let config = AuditConfig { corpus_size: 8, seed, mixture_cap: 3, ..AuditConfig::default() };
        let corpus = audit::generate_corpus(&inst, &config);
        let pref = Preference::jml(inst, set);
        let report = audit::audit(&pref, &corpus, &config).unwrap();
        for r in report.failures() {
            if let Some(cex) = &r.counterexample {
                prop_assert!(audit::replay(&pref, cex));
            }
        }
    }

    #[test]
    fn singleton_nesting_is_equality(seed: u64) {
        let mut s = Sampler::new(seed);
        let inst = s.instance();
        let a = s.info_structure(&inst);
        let b = s.info_structure(&inst);
        let sa = CredalSet::singleton(a.clone());
        let sb = CredalSet::singleton(b.clone());
        prop_assert_eq!(credal_subset(&sa, &sb).unwrap(), a == b);
    }
}
