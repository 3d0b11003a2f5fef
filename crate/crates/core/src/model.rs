//! Domain types: instances, lotteries, acts, menus, posteriors, information
//! structures and the polytopes/collections built from them.
//!
//! Every type is validated on construction and immutable afterwards. Maps
//! keyed by state or prize are stored as vectors in the owning instance's
//! label order, which makes structural equality insensitive to the order
//! labels appeared in the input.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{format_rational, is_unit_interval, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("state space is empty")]
    EmptyStateSpace,
    #[error("need at least two prizes, got {0}")]
    TooFewPrizes(usize),
    #[error("utility is constant across prizes")]
    ConstantUtility,
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("bad probability vector: {0}")]
    BadProbability(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("menu has no acts")]
    EmptyMenu,
    #[error("information structure has empty support")]
    EmptySupport,
    #[error("credal set has no generators")]
    EmptyCredalSet,
    #[error("collection has no members")]
    EmptyCollection,
    #[error("weight {0} outside [0, 1]")]
    BadWeight(String),
    #[error("bad weights: {0}")]
    BadWeights(String),
}

pub type Result<T, E = ModelError> = std::result::Result<T, E>;

fn check_distribution(probs: &[Rational], what: &str) -> Result<()> {
    if probs.is_empty() {
        return Err(ModelError::BadProbability(format!("{what} is empty")));
    }
    if let Some(p) = probs.iter().find(|p| p.is_negative()) {
        return Err(ModelError::BadProbability(format!(
            "{what} has negative entry {}",
            format_rational(p)
        )));
    }
    let total: Rational = probs.iter().sum();
    if !total.is_one() {
        return Err(ModelError::BadProbability(format!(
            "{what} sums to {}",
            format_rational(&total)
        )));
    }
    Ok(())
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(ModelError::DimensionMismatch { expected, found });
    }
    Ok(())
}

fn check_weight(alpha: &Rational) -> Result<()> {
    if !is_unit_interval(alpha) {
        return Err(ModelError::BadWeight(format_rational(alpha)));
    }
    Ok(())
}

fn mix_vectors(a: &[Rational], b: &[Rational], alpha: &Rational) -> Vec<Rational> {
    let beta = Rational::one() - alpha;
    a.iter()
        .zip(b)
        .map(|(x, y)| alpha * x + &beta * y)
        .collect()
}

/// Ambient decision environment: states, prizes and the vNM utility on prizes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    states: Vec<String>,
    prizes: Vec<String>,
    utility: Vec<Rational>,
}

impl Instance {
    pub fn new(states: Vec<String>, prizes: Vec<String>, utility: Vec<Rational>) -> Result<Self> {
        let inst = Instance {
            states,
            prizes,
            utility,
        };
        validate_instance(&inst)?;
        Ok(inst)
    }

    /// Convenience constructor with labels `w1..wn` and `z1..zm`.
    pub fn with_utilities(num_states: usize, utility: Vec<Rational>) -> Result<Self> {
        let states = (1..=num_states).map(|i| format!("w{i}")).collect();
        let prizes = (1..=utility.len()).map(|i| format!("z{i}")).collect();
        Self::new(states, prizes, utility)
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn prizes(&self) -> &[String] {
        &self.prizes
    }

    pub fn utility(&self) -> &[Rational] {
        &self.utility
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_prizes(&self) -> usize {
        self.prizes.len()
    }

    pub fn state_index(&self, label: &str) -> Option<usize> {
        self.states.iter().position(|s| s == label)
    }

    pub fn prize_index(&self, label: &str) -> Option<usize> {
        self.prizes.iter().position(|s| s == label)
    }

    /// Index of a prize with the lowest utility (first in label order).
    pub fn worst_prize(&self) -> usize {
        let min = self.min_utility();
        self.utility.iter().position(|u| *u == min).unwrap_or(0)
    }

    /// Index of a prize with the highest utility (first in label order).
    pub fn best_prize(&self) -> usize {
        let max = self.max_utility();
        self.utility.iter().position(|u| *u == max).unwrap_or(0)
    }

    pub fn min_utility(&self) -> Rational {
        self.utility.iter().min().cloned().unwrap_or_default()
    }

    pub fn max_utility(&self) -> Rational {
        self.utility.iter().max().cloned().unwrap_or_default()
    }

    /// Expected utility of a lottery, `Σ_z x(z)·u(z)`.
    pub fn lottery_utility(&self, x: &Lottery) -> Rational {
        x.probs.iter().zip(&self.utility).map(|(p, u)| p * u).sum()
    }

    pub fn lottery(&self, probs: Vec<Rational>) -> Result<Lottery> {
        check_dim(self.num_prizes(), probs.len())?;
        Lottery::new(probs)
    }

    /// Point mass on one prize.
    pub fn degenerate(&self, prize: usize) -> Lottery {
        let mut probs = vec![Rational::zero(); self.num_prizes()];
        probs[prize] = Rational::one();
        Lottery { probs }
    }

    /// A lottery over the best and worst prizes whose utility is `value`.
    /// Fails when `value` lies outside the utility range.
    pub fn lottery_with_utility(&self, value: &Rational) -> Result<Lottery> {
        let (lo, hi) = (self.min_utility(), self.max_utility());
        let weight = (value - &lo) / (&hi - &lo);
        check_weight(&weight)?;
        let mut probs = vec![Rational::zero(); self.num_prizes()];
        probs[self.best_prize()] += &weight;
        probs[self.worst_prize()] += Rational::one() - weight;
        Ok(Lottery { probs })
    }

    pub fn posterior(&self, probs: Vec<Rational>) -> Result<Posterior> {
        check_dim(self.num_states(), probs.len())?;
        Posterior::new(probs)
    }

    /// Degenerate belief `δ_ω`.
    pub fn point_posterior(&self, state: usize) -> Posterior {
        let mut probs = vec![Rational::zero(); self.num_states()];
        probs[state] = Rational::one();
        Posterior { probs }
    }

    pub fn uniform_posterior(&self) -> Posterior {
        let n = self.num_states();
        Posterior {
            probs: vec![Rational::new(1.into(), (n as i64).into()); n],
        }
    }

    pub fn act(&self, outcomes: Vec<Lottery>) -> Result<Act> {
        check_dim(self.num_states(), outcomes.len())?;
        for x in &outcomes {
            check_dim(self.num_prizes(), x.probs.len())?;
        }
        Ok(Act { outcomes })
    }

    /// The act whose statewise utilities are `utils`, realised with
    /// lotteries over the best and worst prizes.
    pub fn act_from_utilities(&self, utils: &[Rational]) -> Result<Act> {
        check_dim(self.num_states(), utils.len())?;
        let outcomes = utils
            .iter()
            .map(|u| self.lottery_with_utility(u))
            .collect::<Result<_>>()?;
        Ok(Act { outcomes })
    }

    /// Same instance with utility `scale·u + shift`; `scale` must be positive.
    pub fn with_affine_utility(&self, scale: &Rational, shift: &Rational) -> Result<Self> {
        if !scale.is_positive() {
            return Err(ModelError::BadWeight(format_rational(scale)));
        }
        let utility = self.utility.iter().map(|u| scale * u + shift).collect();
        Instance::new(self.states.clone(), self.prizes.clone(), utility)
    }
}

/// Checks every structural invariant of an instance.
pub fn validate_instance(inst: &Instance) -> Result<()> {
    if inst.states.is_empty() {
        return Err(ModelError::EmptyStateSpace);
    }
    if inst.prizes.len() < 2 {
        return Err(ModelError::TooFewPrizes(inst.prizes.len()));
    }
    check_dim(inst.prizes.len(), inst.utility.len())?;
    for labels in [&inst.states, &inst.prizes] {
        let mut seen = std::collections::BTreeSet::new();
        for label in labels {
            if !seen.insert(label) {
                return Err(ModelError::DuplicateLabel(label.clone()));
            }
        }
    }
    if inst.utility.iter().all(|u| *u == inst.utility[0]) {
        return Err(ModelError::ConstantUtility);
    }
    Ok(())
}

/// A lottery over the instance's prizes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lottery {
    probs: Vec<Rational>,
}

impl Lottery {
    pub fn new(probs: Vec<Rational>) -> Result<Self> {
        check_distribution(&probs, "lottery")?;
        Ok(Lottery { probs })
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    /// `alpha·self + (1-alpha)·other`; `alpha` is assumed to be in [0,1].
    pub fn mix(&self, other: &Lottery, alpha: &Rational) -> Lottery {
        Lottery {
            probs: mix_vectors(&self.probs, &other.probs, alpha),
        }
    }
}

/// State-contingent lottery payoff.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Act {
    outcomes: Vec<Lottery>,
}

impl Act {
    pub fn outcomes(&self) -> &[Lottery] {
        &self.outcomes
    }

    pub fn num_states(&self) -> usize {
        self.outcomes.len()
    }

    /// Statewise mixture `alpha·self + (1-alpha)·other`.
    pub fn mix(&self, other: &Act, alpha: &Rational) -> Act {
        Act {
            outcomes: self
                .outcomes
                .iter()
                .zip(&other.outcomes)
                .map(|(x, y)| x.mix(y, alpha))
                .collect(),
        }
    }

    /// Statewise utilities `u(f(ω))`.
    pub fn utilities(&self, inst: &Instance) -> Vec<Rational> {
        self.outcomes
            .iter()
            .map(|x| inst.lottery_utility(x))
            .collect()
    }
}

/// The act paying lottery `x` in every state.
pub fn constant_act(inst: &Instance, x: &Lottery) -> Result<Act> {
    check_dim(inst.num_prizes(), x.probs.len())?;
    Ok(Act {
        outcomes: vec![x.clone(); inst.num_states()],
    })
}

/// Nonempty finite set of acts, kept sorted and free of duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Menu {
    acts: Vec<Act>,
}

impl Menu {
    pub fn new(acts: impl IntoIterator<Item = Act>) -> Result<Self> {
        let mut acts: Vec<Act> = acts.into_iter().collect();
        let first = acts.first().ok_or(ModelError::EmptyMenu)?;
        let (states, prizes) = (first.num_states(), first.outcomes[0].probs.len());
        for act in &acts {
            check_dim(states, act.num_states())?;
            for x in &act.outcomes {
                check_dim(prizes, x.probs.len())?;
            }
        }
        acts.sort();
        acts.dedup();
        Ok(Menu { acts })
    }

    pub fn singleton(act: Act) -> Self {
        Menu { acts: vec![act] }
    }

    /// The menu `{x}` holding the constant act of lottery `x`.
    pub fn constant(inst: &Instance, x: &Lottery) -> Result<Self> {
        Ok(Menu::singleton(constant_act(inst, x)?))
    }

    pub fn acts(&self) -> &[Act] {
        &self.acts
    }

    pub fn len(&self) -> usize {
        self.acts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.acts.is_empty()
    }

    pub fn num_states(&self) -> usize {
        self.acts[0].num_states()
    }

    pub fn contains(&self, act: &Act) -> bool {
        self.acts.binary_search(act).is_ok()
    }

    /// Set inclusion `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Menu) -> bool {
        self.acts.iter().all(|a| other.contains(a))
    }

    pub fn union(&self, other: &Menu) -> Menu {
        Menu {
            acts: self.acts.iter().chain(&other.acts).cloned().collect(),
        }
        .canonical()
    }

    pub fn with_act(&self, act: Act) -> Menu {
        let mut acts = self.acts.clone();
        acts.push(act);
        Menu { acts }.canonical()
    }

    /// True if every act is a constant act.
    pub fn is_constant(&self) -> bool {
        self.acts
            .iter()
            .all(|a| a.outcomes.iter().all(|x| *x == a.outcomes[0]))
    }

    fn canonical(mut self) -> Menu {
        self.acts.sort();
        self.acts.dedup();
        self
    }

    pub(crate) fn from_acts_unchecked(acts: Vec<Act>) -> Menu {
        Menu { acts }.canonical()
    }
}

/// A belief over states.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Posterior {
    probs: Vec<Rational>,
}

impl Posterior {
    pub fn new(probs: Vec<Rational>) -> Result<Self> {
        check_distribution(&probs, "posterior")?;
        Ok(Posterior { probs })
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    pub fn num_states(&self) -> usize {
        self.probs.len()
    }

    pub fn mix(&self, other: &Posterior, alpha: &Rational) -> Posterior {
        Posterior {
            probs: mix_vectors(&self.probs, &other.probs, alpha),
        }
    }
}

/// Finite-support distribution over posteriors. Support points are sorted,
/// pairwise distinct and carry strictly positive weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InfoStructure {
    support: Vec<(Posterior, Rational)>,
}

impl InfoStructure {
    /// Builds a structure, merging the weights of repeated posteriors.
    pub fn new(support: impl IntoIterator<Item = (Posterior, Rational)>) -> Result<Self> {
        let support: Vec<_> = support.into_iter().collect();
        let first = support.first().ok_or(ModelError::EmptySupport)?;
        let states = first.0.num_states();
        for (p, w) in &support {
            check_dim(states, p.num_states())?;
            if !w.is_positive() {
                return Err(ModelError::BadProbability(format!(
                    "support weight {} is not positive",
                    format_rational(w)
                )));
            }
        }
        let weights: Vec<Rational> = support.iter().map(|(_, w)| w.clone()).collect();
        check_distribution(&weights, "support weight vector")?;
        Ok(Self::merged(support))
    }

    /// Point mass `δ_p` on a single posterior.
    pub fn point(p: Posterior) -> Self {
        InfoStructure {
            support: vec![(p, Rational::one())],
        }
    }

    /// Full information: `δ_{δ_ω}` with weight given by `prior(ω)`.
    pub fn revealing(inst: &Instance, prior: &Posterior) -> Result<Self> {
        Self::new(
            prior
                .probs
                .iter()
                .enumerate()
                .filter(|(_, w)| w.is_positive())
                .map(|(s, w)| (inst.point_posterior(s), w.clone())),
        )
    }

    fn merged(support: Vec<(Posterior, Rational)>) -> Self {
        let mut merged: BTreeMap<Posterior, Rational> = BTreeMap::new();
        for (p, w) in support {
            *merged.entry(p).or_insert_with(Rational::zero) += w;
        }
        InfoStructure {
            support: merged.into_iter().filter(|(_, w)| !w.is_zero()).collect(),
        }
    }

    pub fn support(&self) -> &[(Posterior, Rational)] {
        &self.support
    }

    pub fn num_states(&self) -> usize {
        self.support[0].0.num_states()
    }

    /// Weight mixture `alpha·self + (1-alpha)·other` of the two distributions.
    pub fn mix(&self, other: &InfoStructure, alpha: &Rational) -> Result<Self> {
        check_weight(alpha)?;
        check_dim(self.num_states(), other.num_states())?;
        let beta = Rational::one() - alpha;
        let support = self
            .support
            .iter()
            .map(|(p, w)| (p.clone(), w * alpha))
            .chain(other.support.iter().map(|(p, w)| (p.clone(), w * &beta)))
            .collect();
        Ok(Self::merged(support))
    }

    /// Convex combination `Σ_i λ_i π_i`; weights must be nonnegative and sum to one.
    pub fn combination(parts: &[(InfoStructure, Rational)]) -> Result<Self> {
        let weights: Vec<Rational> = parts.iter().map(|(_, w)| w.clone()).collect();
        check_distribution(&weights, "combination weights")
            .map_err(|e| ModelError::BadWeights(e.to_string()))?;
        let states = parts[0].0.num_states();
        let mut support = Vec::new();
        for (pi, lambda) in parts {
            check_dim(states, pi.num_states())?;
            support.extend(pi.support.iter().map(|(p, w)| (p.clone(), w * lambda)));
        }
        Ok(Self::merged(support))
    }
}

/// Expected posterior `E_π[p]`, the prior implied by `pi`.
pub fn mean_posterior(pi: &InfoStructure) -> Posterior {
    let mut probs = vec![Rational::zero(); pi.num_states()];
    for (p, w) in &pi.support {
        for (acc, q) in probs.iter_mut().zip(&p.probs) {
            *acc += w * q;
        }
    }
    Posterior { probs }
}

/// Polytope of information structures given by its generators. Generators
/// are kept as supplied (redundant ones included).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CredalSet {
    generators: Vec<InfoStructure>,
}

impl CredalSet {
    pub fn new(generators: Vec<InfoStructure>) -> Result<Self> {
        let first = generators.first().ok_or(ModelError::EmptyCredalSet)?;
        let states = first.num_states();
        for g in &generators {
            check_dim(states, g.num_states())?;
        }
        Ok(CredalSet { generators })
    }

    pub fn singleton(pi: InfoStructure) -> Self {
        CredalSet {
            generators: vec![pi],
        }
    }

    pub fn generators(&self) -> &[InfoStructure] {
        &self.generators
    }

    pub fn num_states(&self) -> usize {
        self.generators[0].num_states()
    }

    /// The same polytope with one more generator appended.
    pub fn with_generator(&self, pi: InfoStructure) -> Result<Self> {
        let mut generators = self.generators.clone();
        generators.push(pi);
        CredalSet::new(generators)
    }

    /// `alpha·self + (1-alpha)·{pi}`: generators mixed pointwise with `pi`.
    pub fn mix_with_point(&self, pi: &InfoStructure, alpha: &Rational) -> Result<Self> {
        let generators = self
            .generators
            .iter()
            .map(|g| g.mix(pi, alpha))
            .collect::<Result<_>>()?;
        CredalSet::new(generators)
    }
}

/// Nonempty finite family of credal sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Collection {
    members: Vec<CredalSet>,
}

impl Collection {
    pub fn new(members: Vec<CredalSet>) -> Result<Self> {
        let first = members.first().ok_or(ModelError::EmptyCollection)?;
        let states = first.num_states();
        for m in &members {
            check_dim(states, m.num_states())?;
        }
        Ok(Collection { members })
    }

    pub fn members(&self) -> &[CredalSet] {
        &self.members
    }

    /// `{Π}`.
    pub fn single(set: CredalSet) -> Self {
        Collection { members: vec![set] }
    }

    /// One singleton member per generator of `set`.
    pub fn singletons_of(set: &CredalSet) -> Self {
        Collection {
            members: set
                .generators
                .iter()
                .cloned()
                .map(CredalSet::singleton)
                .collect(),
        }
    }

    /// `{αΠ + (1-α){π} : π generator of Π}`.
    pub fn alpha_maxmin(set: &CredalSet, alpha: &Rational) -> Result<Self> {
        let members = set
            .generators
            .iter()
            .map(|pi| set.mix_with_point(pi, alpha))
            .collect::<Result<_>>()?;
        Collection::new(members)
    }
}

/// Four-valued outcome of comparing two menus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    StrictBetter,
    Indifferent,
    StrictWorse,
    Incomparable,
}

impl Verdict {
    /// Assembles a verdict from whether `F ≿ G` and whether `G ≿ F`.
    pub fn from_pair(forward: bool, backward: bool) -> Self {
        match (forward, backward) {
            (true, true) => Verdict::Indifferent,
            (true, false) => Verdict::StrictBetter,
            (false, true) => Verdict::StrictWorse,
            (false, false) => Verdict::Incomparable,
        }
    }

    /// The verdict seen from the other side of the pair.
    pub fn reversed(self) -> Self {
        match self {
            Verdict::StrictBetter => Verdict::StrictWorse,
            Verdict::StrictWorse => Verdict::StrictBetter,
            v => v,
        }
    }

    pub fn weakly_better(self) -> bool {
        matches!(self, Verdict::StrictBetter | Verdict::Indifferent)
    }

    pub fn weakly_worse(self) -> bool {
        matches!(self, Verdict::StrictWorse | Verdict::Indifferent)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::StrictBetter => "StrictBetter",
            Verdict::Indifferent => "Indifferent",
            Verdict::StrictWorse => "StrictWorse",
            Verdict::Incomparable => "Incomparable",
        };
        f.write_str(s)
    }
}
