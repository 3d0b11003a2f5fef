//! Comparative statics between two preferences sharing a utility: credal
//! nestedness, decisiveness and inconsistency orderings.
//!
//! Nestedness `Π1 ⊆ Π2` implies the behavioural orderings; the checks here
//! scan a finite corpus for counterexamples. The converse directions quantify
//! over all menus and are only ever witness-searched.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::criteria::{Preference, Profile};
use crate::evaluation::dominates;
use crate::generate::{shrink_toward_worst, Sampler};
use crate::hull::convex_weights;
use crate::model::{CredalSet, InfoStructure, Instance, Menu, ModelError, Posterior, Result};
use crate::rational::Rational;

/// Embeds structures as weight vectors indexed by the union of their
/// support posteriors.
pub fn embed(structures: &[&InfoStructure]) -> Result<Vec<Vec<Rational>>> {
    let states = structures.first().map(|s| s.num_states()).unwrap_or(0);
    let mut index: BTreeMap<&Posterior, usize> = BTreeMap::new();
    for s in structures {
        if s.num_states() != states {
            return Err(ModelError::DimensionMismatch {
                expected: states,
                found: s.num_states(),
            });
        }
        for (p, _) in s.support() {
            let next = index.len();
            index.entry(p).or_insert(next);
        }
    }
    Ok(structures
        .iter()
        .map(|s| {
            let mut v = vec![Rational::zero(); index.len()];
            for (p, w) in s.support() {
                v[index[p]] = w.clone();
            }
            v
        })
        .collect())
}

/// Convex weights expressing `pi` through `set`'s generators, if any.
pub fn hull_weights(pi: &InfoStructure, set: &CredalSet) -> Result<Option<Vec<Rational>>> {
    let mut all: Vec<&InfoStructure> = set.generators().iter().collect();
    all.push(pi);
    let mut vectors = embed(&all)?;
    let target = vectors.pop().expect("target was pushed");
    Ok(convex_weights(&vectors, &target))
}

/// `conv(inner) ⊆ conv(outer)`, decided exactly generator by generator.
pub fn credal_subset(inner: &CredalSet, outer: &CredalSet) -> Result<bool> {
    for pi in inner.generators() {
        if hull_weights(pi, outer)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Vacuous,
}

/// Outcome of one comparative check over a corpus. `witness` holds corpus
/// indices of the first violating tuple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub status: CheckStatus,
    pub witness: Option<Vec<usize>>,
    /// Tuples on which the antecedent held.
    pub tested: usize,
}

impl CheckReport {
    fn new(check: &str, tested: usize, witness: Option<Vec<usize>>) -> Self {
        let status = match (&witness, tested) {
            (Some(_), _) => CheckStatus::Fail,
            (None, 0) => CheckStatus::Vacuous,
            (None, _) => CheckStatus::Pass,
        };
        CheckReport {
            check: check.to_string(),
            status,
            witness,
            tested,
        }
    }

    pub fn passed(&self) -> bool {
        self.status != CheckStatus::Fail
    }
}

/// `≿` matrix over a corpus: `m[i][j]` is `corpus[i] ≿ corpus[j]`.
fn relation_matrix(pref: &Preference, corpus: &[Menu]) -> Vec<Vec<bool>> {
    let profiles: Vec<Profile> = corpus.iter().map(|m| pref.profile(m)).collect();
    profiles
        .iter()
        .map(|a| profiles.iter().map(|b| pref.prefers_profiles(a, b)).collect())
        .collect()
}

/// `(H, F)` index pairs with `H ⊳_D F`.
fn strict_dominance_pairs(inst: &Instance, corpus: &[Menu]) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for (h, mh) in corpus.iter().enumerate() {
        for (f, mf) in corpus.iter().enumerate() {
            if h != f && dominates(inst, mh, mf, true) {
                pairs.push((h, f));
            }
        }
    }
    pairs
}

/// `first` is more decisive than `second`: `F ≿₂ G ⇒ F ≿₁ G`.
pub fn check_more_decisive(first: &Preference, second: &Preference, corpus: &[Menu]) -> CheckReport {
    let r1 = relation_matrix(first, corpus);
    let r2 = relation_matrix(second, corpus);
    let n = corpus.len();
    let mut tested = 0;
    for f in 0..n {
        for g in 0..n {
            if r2[f][g] {
                tested += 1;
                if !r1[f][g] {
                    return CheckReport::new("more-decisive", tested, Some(vec![f, g]));
                }
            }
        }
    }
    CheckReport::new("more-decisive", tested, None)
}

/// `first` is more strict-decisive than `second`: `F ≻₂ G ⇒ F ≻₁ G`.
pub fn check_more_strict_decisive(
    first: &Preference,
    second: &Preference,
    corpus: &[Menu],
) -> CheckReport {
    let r1 = relation_matrix(first, corpus);
    let r2 = relation_matrix(second, corpus);
    let n = corpus.len();
    let mut tested = 0;
    for f in 0..n {
        for g in 0..n {
            if r2[f][g] && !r2[g][f] {
                tested += 1;
                if !(r1[f][g] && !r1[g][f]) {
                    return CheckReport::new("more-strict-decisive", tested, Some(vec![f, g]));
                }
            }
        }
    }
    CheckReport::new("more-strict-decisive", tested, None)
}

/// For `H ⊳_D F`: `H ⋡₁ G ⋡₁ F ⇒ H ⋡₂ G ⋡₂ F`. Witness order is `[F, G, H]`.
pub fn check_less_negative_inconsistent(
    first: &Preference,
    second: &Preference,
    corpus: &[Menu],
) -> CheckReport {
    let r1 = relation_matrix(first, corpus);
    let r2 = relation_matrix(second, corpus);
    let mut tested = 0;
    for (h, f) in strict_dominance_pairs(first.instance(), corpus) {
        for g in 0..corpus.len() {
            if !r1[h][g] && !r1[g][f] {
                tested += 1;
                if r2[h][g] || r2[g][f] {
                    return CheckReport::new("less-negative-inconsistent", tested, Some(vec![f, g, h]));
                }
            }
        }
    }
    CheckReport::new("less-negative-inconsistent", tested, None)
}

/// For `H ⊳_D F`: `F ≿₁ G ≿₁ H ⇒ F ≿₂ G ≿₂ H`. Witness order is `[F, G, H]`.
pub fn check_less_inconsistent(
    first: &Preference,
    second: &Preference,
    corpus: &[Menu],
) -> CheckReport {
    let r1 = relation_matrix(first, corpus);
    let r2 = relation_matrix(second, corpus);
    let mut tested = 0;
    for (h, f) in strict_dominance_pairs(first.instance(), corpus) {
        for g in 0..corpus.len() {
            if r1[f][g] && r1[g][h] {
                tested += 1;
                if !(r2[f][g] && r2[g][h]) {
                    return CheckReport::new("less-inconsistent", tested, Some(vec![f, g, h]));
                }
            }
        }
    }
    CheckReport::new("less-inconsistent", tested, None)
}

/// Random corpus for witness searches: random menus, each followed by its
/// shrinkage `αG + (1-α)x₀` toward the worst prize.
pub fn witness_corpus(inst: &Instance, seed: u64, size: usize) -> Vec<Menu> {
    let mut sampler = Sampler::new(seed);
    let mut corpus = Vec::with_capacity(size);
    while corpus.len() < size {
        let menu = sampler.menu(inst);
        let alpha = sampler.weight();
        let shrunk = shrink_toward_worst(inst, &menu, &alpha);
        corpus.push(menu);
        if corpus.len() < size {
            corpus.push(shrunk);
        }
    }
    corpus
}
