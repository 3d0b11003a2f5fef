//! Menu preference criteria: subjective learning (one information
//! structure), Bewley multiple learning (unanimity over a credal set),
//! justifiable multiple learning (some structure justifies the ranking) and
//! hierarchical multiple learning (max over sub-groups of min within each).
//!
//! The benefit gap `b_F(π) - b_G(π)` is linear in `π`, so its extrema over a
//! credal polytope are attained at generators. Every min/max below runs over
//! generators only.

use serde::Serialize;

use crate::evaluation::{act_value, benefit_of_information};
use crate::model::{
    mean_posterior, Act, Collection, CredalSet, InfoStructure, Instance, Menu, Verdict,
};
use crate::rational::Rational;

/// `b_F(π) - b_G(π)` at every generator of `set`, in generator order.
pub fn generator_gaps(inst: &Instance, f: &Menu, g: &Menu, set: &CredalSet) -> Vec<Rational> {
    set.generators()
        .iter()
        .map(|pi| benefit_of_information(inst, f, pi) - benefit_of_information(inst, g, pi))
        .collect()
}

/// `min_{π∈Π} (b_F(π) - b_G(π))`.
pub fn credal_min_gap(inst: &Instance, f: &Menu, g: &Menu, set: &CredalSet) -> Rational {
    generator_gaps(inst, f, g, set)
        .into_iter()
        .min()
        .expect("credal sets are nonempty")
}

/// `max_{π∈Π} (b_F(π) - b_G(π))`.
pub fn credal_max_gap(inst: &Instance, f: &Menu, g: &Menu, set: &CredalSet) -> Rational {
    generator_gaps(inst, f, g, set)
        .into_iter()
        .max()
        .expect("credal sets are nonempty")
}

/// `max_{Π∈𝚷} min_{π∈Π} (b_F(π) - b_G(π))`.
pub fn collection_maxmin_gap(inst: &Instance, f: &Menu, g: &Menu, coll: &Collection) -> Rational {
    coll.members()
        .iter()
        .map(|set| credal_min_gap(inst, f, g, set))
        .max()
        .expect("collections are nonempty")
}

fn both_ways(forward: impl Fn(&Menu, &Menu) -> bool, f: &Menu, g: &Menu) -> Verdict {
    Verdict::from_pair(forward(f, g), forward(g, f))
}

pub fn sl_compare(inst: &Instance, f: &Menu, g: &Menu, pi: &InfoStructure) -> Verdict {
    both_ways(
        |a, b| benefit_of_information(inst, a, pi) >= benefit_of_information(inst, b, pi),
        f,
        g,
    )
}

pub fn bml_compare(inst: &Instance, f: &Menu, g: &Menu, set: &CredalSet) -> Verdict {
    both_ways(
        |a, b| credal_min_gap(inst, a, b, set) >= Rational::default(),
        f,
        g,
    )
}

pub fn jml_compare(inst: &Instance, f: &Menu, g: &Menu, set: &CredalSet) -> Verdict {
    both_ways(
        |a, b| credal_max_gap(inst, a, b, set) >= Rational::default(),
        f,
        g,
    )
}

pub fn hml_compare(inst: &Instance, f: &Menu, g: &Menu, coll: &Collection) -> Verdict {
    both_ways(
        |a, b| collection_maxmin_gap(inst, a, b, coll) >= Rational::default(),
        f,
        g,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ReductionMode {
    Bewley,
    Justifiable,
}

/// Compares singleton menus `{f}`, `{g}` through the priors `E_π[p]` of the
/// generators, as a Bewley (unanimity) or justifiable (existence) rule over
/// acts.
pub fn singleton_reduction(
    inst: &Instance,
    f: &Act,
    g: &Act,
    set: &CredalSet,
    mode: ReductionMode,
) -> Verdict {
    let priors: Vec<_> = set.generators().iter().map(mean_posterior).collect();
    let prefers = |a: &Act, b: &Act| {
        let mut diffs = priors
            .iter()
            .map(|p| act_value(inst, a, p) - act_value(inst, b, p));
        match mode {
            ReductionMode::Bewley => diffs.all(|d| d >= Rational::default()),
            ReductionMode::Justifiable => diffs.any(|d| d >= Rational::default()),
        }
    };
    Verdict::from_pair(prefers(f, g), prefers(g, f))
}

/// Which rule and which information structures a preference uses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Criterion {
    Sl(InfoStructure),
    Bml(CredalSet),
    Jml(CredalSet),
    Hml(Collection),
}

impl Criterion {
    pub fn name(&self) -> &'static str {
        match self {
            Criterion::Sl(_) => "sl",
            Criterion::Bml(_) => "bml",
            Criterion::Jml(_) => "jml",
            Criterion::Hml(_) => "hml",
        }
    }

    /// Every criterion is a max-of-min over groups of structures: SL is one
    /// group of one, BML one group, JML one group per generator.
    fn groups(&self) -> Vec<Vec<InfoStructure>> {
        match self {
            Criterion::Sl(pi) => vec![vec![pi.clone()]],
            Criterion::Bml(set) => vec![set.generators().to_vec()],
            Criterion::Jml(set) => set.generators().iter().map(|g| vec![g.clone()]).collect(),
            Criterion::Hml(coll) => coll
                .members()
                .iter()
                .map(|m| m.generators().to_vec())
                .collect(),
        }
    }
}

/// Benefits of one menu at every structure a preference consults, grouped
/// as the criterion groups them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile(Vec<Vec<Rational>>);

impl Profile {
    pub fn groups(&self) -> &[Vec<Rational>] {
        &self.0
    }
}

/// A menu preference: an instance together with a criterion.
#[derive(Debug, Clone)]
pub struct Preference {
    inst: Instance,
    criterion: Criterion,
    groups: Vec<Vec<InfoStructure>>,
}

impl Preference {
    pub fn new(inst: Instance, criterion: Criterion) -> Self {
        let groups = criterion.groups();
        Preference {
            inst,
            criterion,
            groups,
        }
    }

    pub fn sl(inst: Instance, pi: InfoStructure) -> Self {
        Self::new(inst, Criterion::Sl(pi))
    }

    pub fn bml(inst: Instance, set: CredalSet) -> Self {
        Self::new(inst, Criterion::Bml(set))
    }

    pub fn jml(inst: Instance, set: CredalSet) -> Self {
        Self::new(inst, Criterion::Jml(set))
    }

    pub fn hml(inst: Instance, coll: Collection) -> Self {
        Self::new(inst, Criterion::Hml(coll))
    }

    pub fn instance(&self) -> &Instance {
        &self.inst
    }

    pub fn criterion(&self) -> &Criterion {
        &self.criterion
    }

    pub fn profile(&self, menu: &Menu) -> Profile {
        Profile(
            self.groups
                .iter()
                .map(|group| {
                    group
                        .iter()
                        .map(|pi| benefit_of_information(&self.inst, menu, pi))
                        .collect()
                })
                .collect(),
        )
    }

    /// `F ≿ G` from precomputed profiles.
    pub fn prefers_profiles(&self, f: &Profile, g: &Profile) -> bool {
        f.0.iter().zip(&g.0).any(|(a, b)| a.iter().zip(b).all(|(x, y)| x >= y))
    }

    pub fn compare_profiles(&self, f: &Profile, g: &Profile) -> Verdict {
        Verdict::from_pair(self.prefers_profiles(f, g), self.prefers_profiles(g, f))
    }

    /// `F ≿ G`.
    pub fn weakly_prefers(&self, f: &Menu, g: &Menu) -> bool {
        self.prefers_profiles(&self.profile(f), &self.profile(g))
    }

    pub fn compare(&self, f: &Menu, g: &Menu) -> Verdict {
        self.compare_profiles(&self.profile(f), &self.profile(g))
    }

    /// Per-structure rows justifying a comparison.
    pub fn gap_table(&self, f: &Menu, g: &Menu) -> Vec<GapRow> {
        let mut rows = Vec::new();
        for (group, structures) in self.groups.iter().enumerate() {
            for (index, pi) in structures.iter().enumerate() {
                let benefit_f = benefit_of_information(&self.inst, f, pi);
                let benefit_g = benefit_of_information(&self.inst, g, pi);
                rows.push(GapRow {
                    group,
                    index,
                    gap: &benefit_f - &benefit_g,
                    benefit_f,
                    benefit_g,
                });
            }
        }
        rows
    }
}

/// One line of a gap table: the structure's position and `b_F`, `b_G`, gap.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapRow {
    pub group: usize,
    pub index: usize,
    #[serde(with = "crate::rational::as_string")]
    pub benefit_f: Rational,
    #[serde(with = "crate::rational::as_string")]
    pub benefit_g: Rational,
    #[serde(with = "crate::rational::as_string")]
    pub gap: Rational,
}
