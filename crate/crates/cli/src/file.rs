//! JSON instance files.
//!
//! ```json
//! {
//!   "states": ["w1", "w2"],
//!   "prizes": ["low", "high"],
//!   "utility": {"low": "0", "high": "3"},
//!   "menus": {"g": [{"w1": {"high": "1"}, "w2": {"low": "1"}}]},
//!   "info_structures": {"pi": [{"posterior": {"w1": "1"}, "weight": "1/2"},
//!                              {"posterior": {"w2": "1"}, "weight": "1/2"}]},
//!   "credal_sets": {"Pi": ["pi"]},
//!   "collections": {"C": ["Pi"]}
//! }
//! ```
//!
//! Rationals are `"p/q"` strings. Prizes or states missing from a lottery
//! or posterior map have probability zero; every act must list every state.

use std::collections::BTreeMap;
use std::path::Path;

use menulearn::rational::{format_rational, parse_rational};
use menulearn::{
    Collection, CredalSet, InfoStructure, Instance, Lottery, Menu, ModelError, Posterior,
    Rational,
};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

type ProbMap = BTreeMap<String, String>;

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFile {
    pub states: Vec<String>,
    pub prizes: Vec<String>,
    pub utility: BTreeMap<String, String>,
    #[serde(default)]
    pub menus: BTreeMap<String, Vec<BTreeMap<String, ProbMap>>>,
    #[serde(default)]
    pub info_structures: BTreeMap<String, Vec<RawSupportPoint>>,
    #[serde(default)]
    pub credal_sets: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub collections: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSupportPoint {
    pub posterior: ProbMap,
    pub weight: String,
}

/// A parsed, validated instance file with every name resolved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub instance: Instance,
    pub menus: BTreeMap<String, Menu>,
    pub info_structures: BTreeMap<String, InfoStructure>,
    pub credal_sets: BTreeMap<String, CredalSet>,
    pub collections: BTreeMap<String, Collection>,
    credal_set_refs: BTreeMap<String, Vec<String>>,
    collection_refs: BTreeMap<String, Vec<String>>,
}

/// The kinds of named objects a file can hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Menu,
    InfoStructure,
    CredalSet,
    Collection,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Menu => "menu",
            Kind::InfoStructure => "information structure",
            Kind::CredalSet => "credal set",
            Kind::Collection => "collection",
        }
    }
}

fn invalid(what: impl std::fmt::Display, err: ModelError) -> CliError {
    CliError::Parse(format!("{what}: {err}"))
}

fn rational(text: &str, context: &str) -> Result<Rational, CliError> {
    parse_rational(text).map_err(|e| CliError::Parse(format!("{context}: {e}")))
}

fn dense(
    labels: &[String],
    map: &ProbMap,
    context: &str,
) -> Result<Vec<Rational>, CliError> {
    let mut out = vec![Rational::default(); labels.len()];
    for (label, value) in map {
        let i = labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| CliError::Parse(format!("{context}: unknown label {label:?}")))?;
        out[i] = rational(value, context)?;
    }
    Ok(out)
}

fn sparse(labels: &[String], values: &[Rational]) -> ProbMap {
    labels
        .iter()
        .zip(values)
        .filter(|(_, v)| **v != Rational::default())
        .map(|(l, v)| (l.clone(), format_rational(v)))
        .collect()
}

impl Document {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let raw: RawFile =
            serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        Self::from_raw(raw)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn from_raw(raw: RawFile) -> Result<Self, CliError> {
        let mut utility = Vec::with_capacity(raw.prizes.len());
        for prize in &raw.prizes {
            let text = raw
                .utility
                .get(prize)
                .ok_or_else(|| CliError::Parse(format!("no utility for prize {prize:?}")))?;
            utility.push(rational(text, "utility")?);
        }
        if let Some(extra) = raw.utility.keys().find(|k| !raw.prizes.contains(k)) {
            return Err(CliError::Parse(format!("utility for unknown prize {extra:?}")));
        }
        let instance = Instance::new(raw.states.clone(), raw.prizes.clone(), utility)
            .map_err(|e| invalid("instance", e))?;

        let mut menus = BTreeMap::new();
        for (name, acts) in &raw.menus {
            let context = format!("menu {name:?}");
            let mut parsed = Vec::new();
            for act in acts {
                let mut outcomes = Vec::with_capacity(instance.num_states());
                for state in instance.states() {
                    let lottery = act.get(state).ok_or_else(|| {
                        CliError::Parse(format!("{context}: act has no outcome for state {state:?}"))
                    })?;
                    let probs = dense(instance.prizes(), lottery, &context)?;
                    outcomes.push(Lottery::new(probs).map_err(|e| invalid(&context, e))?);
                }
                if let Some(extra) = act.keys().find(|s| instance.state_index(s).is_none()) {
                    return Err(CliError::Parse(format!("{context}: unknown state {extra:?}")));
                }
                parsed.push(instance.act(outcomes).map_err(|e| invalid(&context, e))?);
            }
            let menu = Menu::new(parsed).map_err(|e| invalid(&context, e))?;
            menus.insert(name.clone(), menu);
        }

        let mut info_structures = BTreeMap::new();
        for (name, points) in &raw.info_structures {
            let context = format!("information structure {name:?}");
            let mut support = Vec::new();
            for point in points {
                let probs = dense(instance.states(), &point.posterior, &context)?;
                let posterior = Posterior::new(probs).map_err(|e| invalid(&context, e))?;
                support.push((posterior, rational(&point.weight, &context)?));
            }
            let pi = InfoStructure::new(support).map_err(|e| invalid(&context, e))?;
            info_structures.insert(name.clone(), pi);
        }

        let mut credal_sets = BTreeMap::new();
        for (name, refs) in &raw.credal_sets {
            let generators = refs
                .iter()
                .map(|r| {
                    info_structures
                        .get(r)
                        .cloned()
                        .ok_or_else(|| CliError::UnknownName(format!("{r} (in credal set {name:?})")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let set = CredalSet::new(generators).map_err(|e| invalid(format!("credal set {name:?}"), e))?;
            credal_sets.insert(name.clone(), set);
        }

        let mut collections = BTreeMap::new();
        for (name, refs) in &raw.collections {
            let members = refs
                .iter()
                .map(|r| {
                    credal_sets
                        .get(r)
                        .cloned()
                        .ok_or_else(|| CliError::UnknownName(format!("{r} (in collection {name:?})")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let coll = Collection::new(members).map_err(|e| invalid(format!("collection {name:?}"), e))?;
            collections.insert(name.clone(), coll);
        }

        Ok(Document {
            instance,
            menus,
            info_structures,
            credal_sets,
            collections,
            credal_set_refs: raw.credal_sets,
            collection_refs: raw.collections,
        })
    }

    /// Canonical raw form: sparse maps, menus in canonical act order.
    pub fn to_raw(&self) -> RawFile {
        let inst = &self.instance;
        let utility = inst
            .prizes()
            .iter()
            .zip(inst.utility())
            .map(|(p, u)| (p.clone(), format_rational(u)))
            .collect();
        let menus = self
            .menus
            .iter()
            .map(|(name, menu)| {
                let acts = menu
                    .acts()
                    .iter()
                    .map(|act| {
                        inst.states()
                            .iter()
                            .zip(act.outcomes())
                            .map(|(s, x)| (s.clone(), sparse(inst.prizes(), x.probs())))
                            .collect()
                    })
                    .collect();
                (name.clone(), acts)
            })
            .collect();
        let info_structures = self
            .info_structures
            .iter()
            .map(|(name, pi)| {
                let points = pi
                    .support()
                    .iter()
                    .map(|(p, w)| RawSupportPoint {
                        posterior: sparse(inst.states(), p.probs()),
                        weight: format_rational(w),
                    })
                    .collect();
                (name.clone(), points)
            })
            .collect();
        RawFile {
            states: inst.states().to_vec(),
            prizes: inst.prizes().to_vec(),
            utility,
            menus,
            info_structures,
            credal_sets: self.credal_set_refs.clone(),
            collections: self.collection_refs.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("raw files always serialize")
    }

    pub fn menu(&self, name: &str) -> Result<&Menu, CliError> {
        self.menus.get(name).ok_or_else(|| self.missing(name, Kind::Menu))
    }

    pub fn info_structure(&self, name: &str) -> Result<&InfoStructure, CliError> {
        self.info_structures
            .get(name)
            .ok_or_else(|| self.missing(name, Kind::InfoStructure))
    }

    pub fn credal_set(&self, name: &str) -> Result<&CredalSet, CliError> {
        self.credal_sets
            .get(name)
            .ok_or_else(|| self.missing(name, Kind::CredalSet))
    }

    pub fn collection(&self, name: &str) -> Result<&Collection, CliError> {
        self.collections
            .get(name)
            .ok_or_else(|| self.missing(name, Kind::Collection))
    }

    /// Name of a menu structurally equal to `menu`, if the file has one.
    pub fn menu_name(&self, menu: &Menu) -> Option<&str> {
        self.menus
            .iter()
            .find(|(_, m)| *m == menu)
            .map(|(n, _)| n.as_str())
    }

    /// Generator names of a credal set, in file order. Empty if unknown.
    pub fn credal_set_refs(&self, name: &str) -> &[String] {
        self.credal_set_refs.get(name).map_or(&[], Vec::as_slice)
    }

    /// Member names of a collection, in file order. Empty if unknown.
    pub fn collection_refs(&self, name: &str) -> &[String] {
        self.collection_refs.get(name).map_or(&[], Vec::as_slice)
    }

    fn kind_of(&self, name: &str) -> Option<Kind> {
        if self.menus.contains_key(name) {
            Some(Kind::Menu)
        } else if self.info_structures.contains_key(name) {
            Some(Kind::InfoStructure)
        } else if self.credal_sets.contains_key(name) {
            Some(Kind::CredalSet)
        } else if self.collections.contains_key(name) {
            Some(Kind::Collection)
        } else {
            None
        }
    }

    fn missing(&self, name: &str, wanted: Kind) -> CliError {
        match self.kind_of(name) {
            Some(found) => CliError::KindMismatch {
                name: name.to_string(),
                expected: wanted.name(),
                found: found.name(),
            },
            None => CliError::UnknownName(format!("{} {name:?}", wanted.name())),
        }
    }
}
