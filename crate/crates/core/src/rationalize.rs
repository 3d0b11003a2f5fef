//! Complete, transitive rankings derived from a hierarchical preference.
//!
//! Each menu gets a scenario band bounded by the max-of-min and min-of-max
//! benefits over the collection; a menu-dependent weight picks a value in
//! the band. The robust strict relation `≻≻` decides when one menu beats
//! another independent of which structures are consulted.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::criteria::collection_maxmin_gap;
use crate::evaluation::benefit_of_information;
use crate::model::{Collection, Instance, Menu, ModelError, Result};
use crate::rational::{format_rational, is_unit_interval, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScenarioBand {
    #[serde(with = "crate::rational::as_string")]
    pub maxmin: Rational,
    #[serde(with = "crate::rational::as_string")]
    pub minmax: Rational,
    #[serde(with = "crate::rational::as_string")]
    pub low: Rational,
    #[serde(with = "crate::rational::as_string")]
    pub high: Rational,
}

impl ScenarioBand {
    pub fn new(maxmin: Rational, minmax: Rational) -> Self {
        let (low, high) = if maxmin <= minmax {
            (maxmin.clone(), minmax.clone())
        } else {
            (minmax.clone(), maxmin.clone())
        };
        ScenarioBand {
            maxmin,
            minmax,
            low,
            high,
        }
    }

    pub fn contains(&self, value: &Rational) -> bool {
        self.low <= *value && *value <= self.high
    }
}

/// Max over members of the min benefit, and min over members of the max.
pub fn scenario_band(inst: &Instance, menu: &Menu, coll: &Collection) -> ScenarioBand {
    let per_member: Vec<(Rational, Rational)> = coll
        .members()
        .iter()
        .map(|set| {
            let values: Vec<Rational> = set
                .generators()
                .iter()
                .map(|pi| benefit_of_information(inst, menu, pi))
                .collect();
            let lo = values.iter().min().cloned().expect("nonempty");
            let hi = values.into_iter().max().expect("nonempty");
            (lo, hi)
        })
        .collect();
    let maxmin = per_member.iter().map(|(lo, _)| lo).max().cloned().expect("nonempty");
    let minmax = per_member.iter().map(|(_, hi)| hi).min().cloned().expect("nonempty");
    ScenarioBand::new(maxmin, minmax)
}

/// `F ≻≻ G`: the max-of-min gap is strictly positive one way and strictly
/// negative the other.
pub fn robust_strict(inst: &Instance, f: &Menu, g: &Menu, coll: &Collection) -> bool {
    collection_maxmin_gap(inst, f, g, coll) > Rational::zero()
        && collection_maxmin_gap(inst, g, f, coll) < Rational::zero()
}

/// How the weight on the max-of-min aggregate is chosen per menu.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlphaPolicy {
    Constant(Rational),
    /// Always lands on the band's low endpoint.
    Cautious,
    /// Always lands on the band's high endpoint.
    Optimistic,
    /// Per-menu weights with a fallback for menus not listed.
    Custom {
        weights: BTreeMap<Menu, Rational>,
        default: Rational,
    },
}

impl AlphaPolicy {
    /// Weight on the max-of-min term for a menu with this band.
    pub fn weight(&self, menu: &Menu, band: &ScenarioBand) -> Result<Rational> {
        let maxmin_is_low = band.maxmin <= band.minmax;
        let alpha = match self {
            AlphaPolicy::Constant(c) => c.clone(),
            AlphaPolicy::Cautious => flag(maxmin_is_low),
            AlphaPolicy::Optimistic => flag(!maxmin_is_low),
            AlphaPolicy::Custom { weights, default } => {
                weights.get(menu).unwrap_or(default).clone()
            }
        };
        if !is_unit_interval(&alpha) {
            return Err(ModelError::BadWeight(format_rational(&alpha)));
        }
        Ok(alpha)
    }
}

fn flag(on: bool) -> Rational {
    if on {
        Rational::one()
    } else {
        Rational::zero()
    }
}

/// `U(F) = α(F)·maxmin + (1-α(F))·minmax`.
pub fn rationalized_value(
    inst: &Instance,
    menu: &Menu,
    coll: &Collection,
    policy: &AlphaPolicy,
) -> Result<Rational> {
    let band = scenario_band(inst, menu, coll);
    value_in_band(menu, &band, policy)
}

fn value_in_band(menu: &Menu, band: &ScenarioBand, policy: &AlphaPolicy) -> Result<Rational> {
    let alpha = policy.weight(menu, band)?;
    Ok(&alpha * &band.maxmin + (Rational::one() - &alpha) * &band.minmax)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankEntry {
    /// Position of the menu in the input corpus.
    pub index: usize,
    /// Dense rank; tied menus share a rank. 1 is best.
    pub rank: usize,
    #[serde(with = "crate::rational::as_string")]
    pub value: Rational,
    pub band: ScenarioBand,
}

/// Ranks menus by rationalized value, best first; ties share a rank and
/// keep corpus order.
pub fn rank_menus(
    inst: &Instance,
    corpus: &[Menu],
    coll: &Collection,
    policy: &AlphaPolicy,
) -> Result<Vec<RankEntry>> {
    let mut entries = corpus
        .iter()
        .enumerate()
        .map(|(index, menu)| {
            let band = scenario_band(inst, menu, coll);
            let value = value_in_band(menu, &band, policy)?;
            Ok(RankEntry {
                index,
                rank: 0,
                value,
                band,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    entries.sort_by(|a, b| b.value.cmp(&a.value).then(a.index.cmp(&b.index)));
    let mut rank = 0;
    let mut last: Option<Rational> = None;
    for entry in &mut entries {
        if last.as_ref() != Some(&entry.value) {
            rank += 1;
            last = Some(entry.value.clone());
        }
        entry.rank = rank;
    }
    Ok(entries)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub lottery_consistency: bool,
    pub robust_strict_consistency: bool,
    /// Lottery-corpus indices `[x, y]` with `x ≿ y` but `U(x) < U(y)`.
    pub lottery_witness: Option<Vec<usize>>,
    /// Corpus indices `[F, G]` plus the grid utility of the separating lottery.
    pub robust_witness: Option<(Vec<usize>, String)>,
    /// Pairs where a separating grid lottery was found.
    pub sandwiched_pairs: usize,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.lottery_consistency && self.robust_strict_consistency
    }
}

/// Checks a value function `value` against the hierarchical preference on
/// `coll`:
/// lottery consistency on `lotteries` (constant menus) and robustly strict
/// consistency on `corpus`, searching separating lotteries among constant
/// menus whose utilities are the points of `grid`.
pub fn check_consistency(
    inst: &Instance,
    coll: &Collection,
    value: impl Fn(&Menu) -> Rational,
    corpus: &[Menu],
    lotteries: &[Menu],
    grid: &[Rational],
) -> Result<ConsistencyReport> {
    let mut report = ConsistencyReport {
        lottery_consistency: true,
        robust_strict_consistency: true,
        lottery_witness: None,
        robust_witness: None,
        sandwiched_pairs: 0,
    };

    let lottery_values: Vec<Rational> = lotteries.iter().map(&value).collect();
    'outer: for (i, x) in lotteries.iter().enumerate() {
        for (j, y) in lotteries.iter().enumerate() {
            if collection_maxmin_gap(inst, x, y, coll) >= Rational::zero()
                && lottery_values[i] < lottery_values[j]
            {
                report.lottery_consistency = false;
                report.lottery_witness = Some(vec![i, j]);
                break 'outer;
            }
        }
    }

    let witnesses: Vec<(Rational, Menu)> = grid
        .iter()
        .map(|u| {
            let x = inst.lottery_with_utility(u)?;
            Ok((u.clone(), Menu::constant(inst, &x)?))
        })
        .collect::<Result<_>>()?;
    let values: Vec<Rational> = corpus.iter().map(&value).collect();
    // robust_strict(F, x) for each menu and grid lottery
    let above: Vec<Vec<bool>> = corpus
        .iter()
        .map(|m| witnesses.iter().map(|(_, x)| robust_strict(inst, m, x, coll)).collect())
        .collect();
    let below: Vec<Vec<bool>> = corpus
        .iter()
        .map(|m| witnesses.iter().map(|(_, x)| robust_strict(inst, x, m, coll)).collect())
        .collect();
    for f in 0..corpus.len() {
        for g in 0..corpus.len() {
            let sep = (0..witnesses.len()).find(|&k| above[f][k] && below[g][k]);
            if let Some(k) = sep {
                report.sandwiched_pairs += 1;
                if values[f] <= values[g] && report.robust_strict_consistency {
                    report.robust_strict_consistency = false;
                    report.robust_witness = Some((vec![f, g], format_rational(&witnesses[k].0)));
                }
            }
        }
    }
    Ok(report)
}

/// `steps + 1` evenly spaced utilities spanning the instance's range.
pub fn utility_grid(inst: &Instance, steps: usize) -> Vec<Rational> {
    let (lo, hi) = (inst.min_utility(), inst.max_utility());
    let steps = steps.max(1);
    (0..=steps)
        .map(|k| {
            let t = Rational::new((k as i64).into(), (steps as i64).into());
            &lo + (&hi - &lo) * t
        })
        .collect()
}
