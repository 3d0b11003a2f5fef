//! Brute-force axiom audits over seeded menu corpora.
//!
//! Each axiom is a predicate on a small tuple of menus (plus a mixing weight
//! or randomization weights). The audit enumerates every tuple of the
//! axiom's arity drawn from the corpus, or from menus derived from it, and
//! records the first violation. Violations are stored with their full
//! tuple so they can be replayed in isolation.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use num_traits::{One, Signed};
use rand::Rng;
use serde::Serialize;

use crate::criteria::{Criterion, Preference, Profile};
use crate::evaluation::{dominates, mix_menus, randomize};
use crate::generate::{shrink_toward_worst, Sampler};
use crate::model::{Instance, Menu, ModelError, Result, Verdict};
use crate::rational::{format_rational, rat, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Nontriviality,
    CompletenessForLotteries,
    Completeness,
    Transitivity,
    UnambiguousTransitivity,
    Reflexivity,
    PreferenceForFlexibility,
    DominanceAxiom,
    Independence,
    ExPostRandomization,
    FavorableMixingMonotonicity,
    /// Closedness of mixture sets; not finitely refutable, never audited.
    Continuity,
}

impl Axiom {
    pub const ALL: [Axiom; 12] = [
        Axiom::Nontriviality,
        Axiom::CompletenessForLotteries,
        Axiom::Completeness,
        Axiom::Transitivity,
        Axiom::UnambiguousTransitivity,
        Axiom::Reflexivity,
        Axiom::PreferenceForFlexibility,
        Axiom::DominanceAxiom,
        Axiom::Independence,
        Axiom::ExPostRandomization,
        Axiom::FavorableMixingMonotonicity,
        Axiom::Continuity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Nontriviality => "nontriviality",
            Axiom::CompletenessForLotteries => "completeness-for-lotteries",
            Axiom::Completeness => "completeness",
            Axiom::Transitivity => "transitivity",
            Axiom::UnambiguousTransitivity => "unambiguous-transitivity",
            Axiom::Reflexivity => "reflexivity",
            Axiom::PreferenceForFlexibility => "preference-for-flexibility",
            Axiom::DominanceAxiom => "dominance",
            Axiom::Independence => "independence",
            Axiom::ExPostRandomization => "ex-post-randomization",
            Axiom::FavorableMixingMonotonicity => "favorable-mixing-monotonicity",
            Axiom::Continuity => "continuity",
        }
    }

    pub fn parse(name: &str) -> Option<Axiom> {
        Axiom::ALL.into_iter().find(|a| a.name() == name)
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Axioms a representation of the given kind necessarily satisfies.
pub fn required_axioms(criterion: &Criterion) -> Vec<Axiom> {
    use Axiom::*;
    let basic = [Nontriviality, Continuity, Independence, ExPostRandomization];
    let specific: &[Axiom] = match criterion {
        Criterion::Bml(_) => &[
            CompletenessForLotteries,
            Transitivity,
            PreferenceForFlexibility,
            DominanceAxiom,
        ],
        Criterion::Jml(_) => &[
            Completeness,
            UnambiguousTransitivity,
            FavorableMixingMonotonicity,
        ],
        Criterion::Hml(_) => &[CompletenessForLotteries, UnambiguousTransitivity, Reflexivity],
        // a single structure is both a BML and a JML representation
        Criterion::Sl(_) => &[
            CompletenessForLotteries,
            Completeness,
            Transitivity,
            UnambiguousTransitivity,
            Reflexivity,
            PreferenceForFlexibility,
            DominanceAxiom,
            FavorableMixingMonotonicity,
        ],
    };
    let mut all: Vec<Axiom> = basic.iter().chain(specific).copied().collect();
    all.sort();
    all
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditConfig {
    pub axioms: Vec<Axiom>,
    pub corpus_size: usize,
    /// Mixing weights, each strictly inside (0, 1).
    pub alpha_grid: Vec<Rational>,
    pub seed: u64,
    /// Only the first `mixture_cap` corpus menus enter mixture-based axioms.
    pub mixture_cap: usize,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            axioms: Axiom::ALL.to_vec(),
            corpus_size: 12,
            alpha_grid: vec![rat(1, 3), rat(1, 2), rat(3, 4)],
            seed: 0,
            mixture_cap: 6,
        }
    }
}

impl AuditConfig {
    pub fn with_axioms(axioms: Vec<Axiom>) -> Self {
        AuditConfig {
            axioms,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.axioms.is_empty() {
            return Err(ModelError::BadWeights("no axioms selected".into()));
        }
        if let Some(a) = self
            .alpha_grid
            .iter()
            .find(|a| !a.is_positive() || **a >= Rational::one())
        {
            return Err(ModelError::BadWeight(format_rational(a)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AxiomStatus {
    Pass,
    /// Passed on every weight of the alpha grid.
    PassOnGrid,
    Fail,
    /// No tuple satisfied the antecedent.
    Vacuous,
    NotAudited,
}

impl AxiomStatus {
    pub fn is_fail(self) -> bool {
        self == AxiomStatus::Fail
    }
}

impl fmt::Display for AxiomStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AxiomStatus::Pass => "pass",
            AxiomStatus::PassOnGrid => "pass-on-grid",
            AxiomStatus::Fail => "fail",
            AxiomStatus::Vacuous => "vacuous",
            AxiomStatus::NotAudited => "not-audited",
        };
        f.write_str(s)
    }
}

/// A violating tuple, replayable with [`replay`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub axiom: Axiom,
    pub menus: Vec<Menu>,
    pub alpha: Option<Rational>,
    pub betas: Option<Vec<Rational>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomResult {
    pub axiom: Axiom,
    pub status: AxiomStatus,
    /// Tuples on which the antecedent held.
    pub tested: usize,
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub results: Vec<AxiomResult>,
}

impl AuditReport {
    pub fn get(&self, axiom: Axiom) -> Option<&AxiomResult> {
        self.results.iter().find(|r| r.axiom == axiom)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomResult> {
        self.results.iter().filter(|r| r.status.is_fail())
    }

    pub fn all_pass(&self) -> bool {
        self.failures().next().is_none()
    }
}

/// Seeded corpus of exactly `config.corpus_size` menus. It cycles through a
/// menu with interior lotteries, its strict-dominance shrinkage toward the
/// worst prize, a constant menu, a random menu and a subset of it, so any
/// corpus of four or more menus holds a strict-dominance pair.
pub fn generate_corpus(inst: &Instance, config: &AuditConfig) -> Vec<Menu> {
    let mut sampler = Sampler::new(config.seed);
    let mut corpus = Vec::with_capacity(config.corpus_size);
    let mut pending: Vec<Menu> = Vec::new();
    while corpus.len() < config.corpus_size {
        if pending.is_empty() {
            let interior = sampler.interior_menu(inst);
            let alpha = sampler.weight();
            let shrunk = shrink_toward_worst(inst, &interior, &alpha);
            let constant = sampler.constant_menu(inst);
            let random = sampler.menu(inst);
            let keep = sampler.rng().gen_range(0..random.len());
            let subset = Menu::singleton(random.acts()[keep].clone());
            // popped from the back
            pending = vec![subset, random, constant, shrunk, interior];
        }
        corpus.push(pending.pop().expect("refilled above"));
    }
    corpus
}

/// Memoised relation queries for one preference.
struct Judge<'p> {
    pref: &'p Preference,
    cache: RefCell<HashMap<Menu, Rc<Profile>>>,
}

impl<'p> Judge<'p> {
    fn new(pref: &'p Preference) -> Self {
        Judge {
            pref,
            cache: RefCell::new(HashMap::new()),
        }
    }

    fn profile(&self, menu: &Menu) -> Rc<Profile> {
        if let Some(p) = self.cache.borrow().get(menu) {
            return Rc::clone(p);
        }
        let p = Rc::new(self.pref.profile(menu));
        self.cache.borrow_mut().insert(menu.clone(), Rc::clone(&p));
        p
    }

    fn prefers(&self, f: &Menu, g: &Menu) -> bool {
        self.pref.prefers_profiles(&self.profile(f), &self.profile(g))
    }

    fn verdict(&self, f: &Menu, g: &Menu) -> Verdict {
        Verdict::from_pair(self.prefers(f, g), self.prefers(g, f))
    }

    fn strict(&self, f: &Menu, g: &Menu) -> bool {
        self.verdict(f, g) == Verdict::StrictBetter
    }

    fn inst(&self) -> &Instance {
        self.pref.instance()
    }

    /// `Some(holds)` when the antecedent is met, `None` otherwise.
    fn check(
        &self,
        axiom: Axiom,
        menus: &[&Menu],
        alpha: Option<&Rational>,
        betas: Option<&[Rational]>,
    ) -> Option<bool> {
        let inst = self.inst();
        match axiom {
            Axiom::Nontriviality => Some(self.verdict(menus[0], menus[1]) != Verdict::Indifferent
                && self.verdict(menus[0], menus[1]) != Verdict::Incomparable),
            Axiom::CompletenessForLotteries | Axiom::Completeness => {
                Some(self.verdict(menus[0], menus[1]) != Verdict::Incomparable)
            }
            Axiom::Transitivity => {
                let (f, g, h) = (menus[0], menus[1], menus[2]);
                (self.prefers(f, g) && self.prefers(g, h)).then(|| self.prefers(f, h))
            }
            Axiom::UnambiguousTransitivity => {
                let (f, g, h) = (menus[0], menus[1], menus[2]);
                let first = dominates(inst, f, g, false) && self.prefers(g, h);
                let second = self.prefers(f, g) && dominates(inst, g, h, false);
                (first || second).then(|| self.prefers(f, h))
            }
            Axiom::Reflexivity => Some(self.prefers(menus[0], menus[0])),
            Axiom::PreferenceForFlexibility => {
                let (f, g) = (menus[0], menus[1]);
                g.is_subset_of(f).then(|| self.prefers(f, g))
            }
            Axiom::DominanceAxiom => {
                let (f, g) = (menus[0], menus[1]);
                if g.len() != 1 || !dominates(inst, f, g, false) {
                    return None;
                }
                Some(self.verdict(f, &f.union(g)) == Verdict::Indifferent)
            }
            Axiom::Independence => {
                let (f, g, h) = (menus[0], menus[1], menus[2]);
                let alpha = alpha?;
                let fh = mix_menus(f, h, alpha).ok()?;
                let gh = mix_menus(g, h, alpha).ok()?;
                Some(self.verdict(f, g) == self.verdict(&fh, &gh))
            }
            Axiom::ExPostRandomization => {
                let f = menus[0];
                let r = randomize(f, betas?).ok()?;
                Some(self.verdict(f, &r) == Verdict::Indifferent)
            }
            Axiom::FavorableMixingMonotonicity => {
                let (f, g, h, h2) = (menus[0], menus[1], menus[2], menus[3]);
                let alpha = alpha?;
                if !(self.strict(f, g) && self.strict(h, h2)) {
                    return None;
                }
                let left = mix_menus(f, h, alpha).ok()?;
                let right = mix_menus(g, h2, alpha).ok()?;
                Some(self.strict(&left, &right))
            }
            Axiom::Continuity => None,
        }
    }
}

/// Re-checks a counterexample on its own. Returns true when the violation
/// reproduces.
pub fn replay(pref: &Preference, cex: &Counterexample) -> bool {
    let judge = Judge::new(pref);
    let menus: Vec<&Menu> = cex.menus.iter().collect();
    if cex.axiom == Axiom::Nontriviality {
        return judge.check(cex.axiom, &menus, None, None) == Some(false);
    }
    judge.check(cex.axiom, &menus, cex.alpha.as_ref(), cex.betas.as_deref()) == Some(false)
}

struct Scan {
    axiom: Axiom,
    tested: usize,
    counterexample: Option<Counterexample>,
}

impl Scan {
    fn new(axiom: Axiom) -> Self {
        Scan {
            axiom,
            tested: 0,
            counterexample: None,
        }
    }

    /// Records one tuple; returns false once a violation is stored.
    fn record(
        &mut self,
        outcome: Option<bool>,
        menus: &[&Menu],
        alpha: Option<&Rational>,
        betas: Option<&[Rational]>,
    ) -> bool {
        match outcome {
            None => true,
            Some(true) => {
                self.tested += 1;
                true
            }
            Some(false) => {
                self.tested += 1;
                self.counterexample = Some(Counterexample {
                    axiom: self.axiom,
                    menus: menus.iter().map(|m| (*m).clone()).collect(),
                    alpha: alpha.cloned(),
                    betas: betas.map(|b| b.to_vec()),
                });
                false
            }
        }
    }

    fn finish(self, on_grid: bool) -> AxiomResult {
        let status = match (&self.counterexample, self.tested) {
            (Some(_), _) => AxiomStatus::Fail,
            (None, 0) => AxiomStatus::Vacuous,
            (None, _) if on_grid => AxiomStatus::PassOnGrid,
            (None, _) => AxiomStatus::Pass,
        };
        AxiomResult {
            axiom: self.axiom,
            status,
            tested: self.tested,
            counterexample: self.counterexample,
        }
    }
}

/// Constant menus of the corpus together with one per prize.
fn lottery_menus(inst: &Instance, corpus: &[Menu]) -> Vec<Menu> {
    let mut menus: Vec<Menu> = (0..inst.num_prizes())
        .map(|z| Menu::constant(inst, &inst.degenerate(z)).expect("dimensions match"))
        .collect();
    menus.extend(
        corpus
            .iter()
            .filter(|m| m.len() == 1 && m.is_constant())
            .cloned(),
    );
    menus.sort();
    menus.dedup();
    menus
}

/// Pairs `(F, G)` with `G ⊆ F`: corpus pairs plus singletons and
/// one-act-removed subsets of every corpus menu.
fn subset_pairs(corpus: &[Menu]) -> Vec<(Menu, Menu)> {
    let mut pairs = Vec::new();
    for f in corpus {
        for g in corpus {
            if g.is_subset_of(f) {
                pairs.push((f.clone(), g.clone()));
            }
        }
        if f.len() > 1 {
            for (i, act) in f.acts().iter().enumerate() {
                pairs.push((f.clone(), Menu::singleton(act.clone())));
                let rest = f.acts().iter().enumerate().filter(|(j, _)| *j != i).map(|(_, a)| a.clone());
                pairs.push((f.clone(), Menu::new(rest.collect::<Vec<_>>()).expect("nonempty")));
            }
        }
    }
    pairs
}

/// Pairs `(F, {g})` with `F ⊵_D {g}`: each act shrunk toward the worst
/// prize, plus corpus acts that happen to be dominated.
fn dominated_additions(inst: &Instance, corpus: &[Menu]) -> Vec<(Menu, Menu)> {
    let all_acts: Vec<Menu> = corpus
        .iter()
        .flat_map(|m| m.acts().iter().cloned().map(Menu::singleton))
        .collect();
    let mut pairs = Vec::new();
    for f in corpus {
        for act in f.acts() {
            let g = shrink_toward_worst(inst, &Menu::singleton(act.clone()), &rat(1, 2));
            pairs.push((f.clone(), g));
        }
        for g in &all_acts {
            if !g.is_subset_of(f) && dominates(inst, f, g, false) {
                pairs.push((f.clone(), g.clone()));
            }
        }
    }
    pairs
}

fn ex_post_weights(config: &AuditConfig) -> Vec<Vec<Rational>> {
    let mut weights: Vec<Vec<Rational>> = config
        .alpha_grid
        .iter()
        .map(|a| vec![a.clone(), Rational::one() - a])
        .collect();
    weights.push(vec![rat(1, 3), rat(1, 3), rat(1, 3)]);
    weights
}

/// Audits the selected axioms over every tuple of the corpus.
pub fn audit(pref: &Preference, corpus: &[Menu], config: &AuditConfig) -> Result<AuditReport> {
    config.validate()?;
    let judge = Judge::new(pref);
    let inst = pref.instance();
    let mixing: Vec<&Menu> = corpus.iter().take(config.mixture_cap).collect();
    let grid = &config.alpha_grid;
    let mut results = Vec::new();

    for &axiom in &config.axioms {
        let mut scan = Scan::new(axiom);
        let on_grid = matches!(
            axiom,
            Axiom::Independence | Axiom::FavorableMixingMonotonicity
        );
        match axiom {
            Axiom::Continuity => {
                results.push(AxiomResult {
                    axiom,
                    status: AxiomStatus::NotAudited,
                    tested: 0,
                    counterexample: None,
                });
                continue;
            }
            Axiom::Nontriviality => {
                // one strict pair suffices
                let found = corpus.iter().any(|f| {
                    corpus
                        .iter()
                        .any(|g| judge.check(axiom, &[f, g], None, None) == Some(true))
                });
                results.push(AxiomResult {
                    axiom,
                    status: if found {
                        AxiomStatus::Pass
                    } else {
                        AxiomStatus::Fail
                    },
                    tested: usize::from(found),
                    counterexample: None,
                });
                continue;
            }
            Axiom::CompletenessForLotteries => {
                let lotteries = lottery_menus(inst, corpus);
                'scan: for x in &lotteries {
                    for y in &lotteries {
                        if !scan.record(judge.check(axiom, &[x, y], None, None), &[x, y], None, None) {
                            break 'scan;
                        }
                    }
                }
            }
            Axiom::Completeness => {
                'scan: for f in corpus {
                    for g in corpus {
                        if !scan.record(judge.check(axiom, &[f, g], None, None), &[f, g], None, None) {
                            break 'scan;
                        }
                    }
                }
            }
            Axiom::Transitivity | Axiom::UnambiguousTransitivity => {
                'scan: for f in corpus {
                    for g in corpus {
                        for h in corpus {
                            let t = [f, g, h];
                            if !scan.record(judge.check(axiom, &t, None, None), &t, None, None) {
                                break 'scan;
                            }
                        }
                    }
                }
            }
            Axiom::Reflexivity => {
                for f in corpus {
                    if !scan.record(judge.check(axiom, &[f], None, None), &[f], None, None) {
                        break;
                    }
                }
            }
            Axiom::PreferenceForFlexibility | Axiom::DominanceAxiom => {
                let pairs = if axiom == Axiom::PreferenceForFlexibility {
                    subset_pairs(corpus)
                } else {
                    dominated_additions(inst, corpus)
                };
                for (f, g) in &pairs {
                    if !scan.record(judge.check(axiom, &[f, g], None, None), &[f, g], None, None) {
                        break;
                    }
                }
            }
            Axiom::Independence => {
                'scan: for &f in &mixing {
                    for &g in &mixing {
                        for &h in &mixing {
                            for a in grid {
                                let t = [f, g, h];
                                if !scan.record(judge.check(axiom, &t, Some(a), None), &t, Some(a), None) {
                                    break 'scan;
                                }
                            }
                        }
                    }
                }
            }
            Axiom::ExPostRandomization => {
                let weights = ex_post_weights(config);
                'scan: for &f in &mixing {
                    for b in &weights {
                        if !scan.record(judge.check(axiom, &[f], None, Some(b)), &[f], None, Some(b)) {
                            break 'scan;
                        }
                    }
                }
            }
            Axiom::FavorableMixingMonotonicity => {
                let strict: Vec<(&Menu, &Menu)> = mixing
                    .iter()
                    .flat_map(|&f| mixing.iter().map(move |&g| (f, g)))
                    .filter(|(f, g)| judge.strict(f, g))
                    .collect();
                'scan: for &(f, g) in &strict {
                    for &(h, h2) in &strict {
                        for a in grid {
                            let t = [f, g, h, h2];
                            if !scan.record(judge.check(axiom, &t, Some(a), None), &t, Some(a), None) {
                                break 'scan;
                            }
                        }
                    }
                }
            }
        }
        results.push(scan.finish(on_grid));
    }
    Ok(AuditReport { results })
}

/// One row of the cross-audit matrix.
#[derive(Debug, Clone)]
pub struct CrossAuditRow {
    pub label: String,
    pub preference: Preference,
    pub report: AuditReport,
}

#[derive(Debug, Clone)]
pub struct CrossAuditReport {
    pub rows: Vec<CrossAuditRow>,
}

impl CrossAuditReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.report.all_pass())
    }
}

/// Runs every criterion against the axioms its representation requires on
/// a seeded corpus and seeded credal sets: BML, JML and HML, plus HML on a
/// single-member collection (audited with the BML axioms) and on
/// singleton members (audited with the JML axioms).
pub fn cross_audit(inst: &Instance, config: &AuditConfig) -> Result<CrossAuditReport> {
    let corpus = generate_corpus(inst, config);
    let mut sampler = Sampler::new(config.seed.wrapping_add(0x9e37_79b9));
    let set = sampler.credal_set(inst);
    let coll = sampler.collection(inst);
    let bml = Criterion::Bml(set.clone());
    let jml = Criterion::Jml(set.clone());
    let cases = vec![
        ("bml", Criterion::Bml(set.clone()), required_axioms(&bml)),
        ("jml", Criterion::Jml(set.clone()), required_axioms(&jml)),
        ("hml", Criterion::Hml(coll.clone()), required_axioms(&Criterion::Hml(coll))),
        (
            "hml-single-member",
            Criterion::Hml(crate::model::Collection::single(set.clone())),
            required_axioms(&bml),
        ),
        (
            "hml-singleton-members",
            Criterion::Hml(crate::model::Collection::singletons_of(&set)),
            required_axioms(&jml),
        ),
    ];
    let mut rows = Vec::new();
    for (label, criterion, axioms) in cases {
        let pref = Preference::new(inst.clone(), criterion);
        let cfg = AuditConfig {
            axioms,
            ..config.clone()
        };
        let report = audit(&pref, &corpus, &cfg)?;
        rows.push(CrossAuditRow {
            label: label.to_string(),
            preference: pref,
            report,
        });
    }
    Ok(CrossAuditReport { rows })
}
