//! Command implementations. Each returns the text to print and an exit
//! code, so they can be driven directly from tests.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use menulearn::audit::{self, required_axioms, AuditConfig, Axiom, AxiomResult};
use menulearn::comparative::{self, CheckReport};
use menulearn::criteria::GapRow;
use menulearn::evaluation::benefit_of_information;
use menulearn::rational::{approx, format_rational, parse_rational};
use menulearn::rationalize::{self, AlphaPolicy, RankEntry};
use menulearn::{Instance, Menu, Preference, Rational, Verdict};
use serde::Serialize;
use serde_json::json;

use crate::error::{exit, CliError};
use crate::file::Document;

pub const EXAMPLE1: &str = include_str!("../data/example1.json");
pub const EXAMPLE2: &str = include_str!("../data/example2.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Records,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CriterionKind {
    Sl,
    Bml,
    Jml,
    Hml,
}

/// Printed text plus process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            code: exit::OK,
        }
    }
}

fn exact(value: &Rational) -> String {
    format!("{}  (≈ {:.6})", format_rational(value), approx(value))
}

fn records<T: Serialize>(items: &[T]) -> String {
    let mut out = String::new();
    for item in items {
        out.push_str(&serde_json::to_string(item).expect("records serialize"));
        out.push('\n');
    }
    out
}

/// Renders a menu by its statewise utilities, e.g. `{(3, 0), (0, 3)}`.
pub fn render_menu(inst: &Instance, menu: &Menu) -> String {
    let acts: Vec<String> = menu
        .acts()
        .iter()
        .map(|a| {
            let u: Vec<String> = a.utilities(inst).iter().map(format_rational).collect();
            format!("({})", u.join(", "))
        })
        .collect();
    format!("{{{}}}", acts.join(", "))
}

/// Parses `1/3,1/2` into rationals.
pub fn parse_alpha_grid(text: &str) -> Result<Vec<Rational>, CliError> {
    text.split(',')
        .map(|t| parse_rational(t).map_err(|e| CliError::BadArgument(e.to_string())))
        .collect()
}

pub fn parse_policy(text: &str) -> Result<AlphaPolicy, CliError> {
    match text {
        "cautious" => Ok(AlphaPolicy::Cautious),
        "optimistic" => Ok(AlphaPolicy::Optimistic),
        other => {
            let value = other.strip_prefix("const=").ok_or_else(|| {
                CliError::BadArgument(format!(
                    "policy {other:?}: expected cautious, optimistic or const=<p/q>"
                ))
            })?;
            let c = parse_rational(value).map_err(|e| CliError::BadWeight(e.to_string()))?;
            if c < Rational::default() || c > Rational::from_integer(1.into()) {
                return Err(CliError::BadWeight(format_rational(&c)));
            }
            Ok(AlphaPolicy::Constant(c))
        }
    }
}

/// The preference named by a criterion and parameter, with display labels
/// for each consulted structure laid out like the criterion's groups.
fn preference(
    doc: &Document,
    kind: CriterionKind,
    param: &str,
) -> Result<(Preference, Vec<Vec<String>>), CliError> {
    let inst = doc.instance.clone();
    Ok(match kind {
        CriterionKind::Sl => {
            let pi = doc.info_structure(param)?.clone();
            (Preference::sl(inst, pi), vec![vec![param.to_string()]])
        }
        CriterionKind::Bml => {
            let set = doc.credal_set(param)?.clone();
            let labels = vec![doc.credal_set_refs(param).to_vec()];
            (Preference::bml(inst, set), labels)
        }
        CriterionKind::Jml => {
            let set = doc.credal_set(param)?.clone();
            let labels = doc
                .credal_set_refs(param)
                .iter()
                .map(|r| vec![r.clone()])
                .collect();
            (Preference::jml(inst, set), labels)
        }
        CriterionKind::Hml => {
            let coll = doc.collection(param)?.clone();
            let labels = doc
                .collection_refs(param)
                .iter()
                .map(|member| {
                    doc.credal_set_refs(member)
                        .iter()
                        .map(|r| format!("{member}/{r}"))
                        .collect()
                })
                .collect();
            (Preference::hml(inst, coll), labels)
        }
    })
}

pub fn cmd_evaluate(doc: &Document, menu: &str, info: &str, format: Format) -> Result<Outcome, CliError> {
    let m = doc.menu(menu)?;
    let pi = doc.info_structure(info)?;
    let value = benefit_of_information(&doc.instance, m, pi);
    let text = match format {
        Format::Table => format!("b({menu} | {info}) = {}\n", exact(&value)),
        Format::Records => records(&[json!({
            "menu": menu,
            "info_structure": info,
            "value": format_rational(&value),
            "approx": approx(&value),
        })]),
    };
    Ok(Outcome::ok(text))
}

#[derive(Serialize)]
struct GapRecord<'a> {
    structure: &'a str,
    #[serde(flatten)]
    row: &'a GapRow,
}

pub fn cmd_compare(
    doc: &Document,
    kind: CriterionKind,
    param: &str,
    a: &str,
    b: &str,
    format: Format,
) -> Result<Outcome, CliError> {
    let (pref, labels) = preference(doc, kind, param)?;
    let (fa, fb) = (doc.menu(a)?, doc.menu(b)?);
    let verdict = pref.compare(fa, fb);
    let rows = pref.gap_table(fa, fb);
    let text = match format {
        Format::Table => {
            let mut out = format!(
                "{} [{param}]: {a} vs {b} -> {verdict}\n",
                pref.criterion().name()
            );
            let _ = writeln!(out, "{:<16} {:>12} {:>12} {:>12}", "structure", format!("b({a})"), format!("b({b})"), "gap");
            for row in &rows {
                let _ = writeln!(
                    out,
                    "{:<16} {:>12} {:>12} {:>12}",
                    labels[row.group][row.index],
                    format_rational(&row.benefit_f),
                    format_rational(&row.benefit_g),
                    format_rational(&row.gap)
                );
            }
            out
        }
        Format::Records => {
            let mut out = records(&[json!({
                "criterion": pref.criterion().name(),
                "param": param,
                "a": a,
                "b": b,
                "verdict": verdict,
            })]);
            let gaps: Vec<GapRecord> = rows
                .iter()
                .map(|row| GapRecord {
                    structure: &labels[row.group][row.index],
                    row,
                })
                .collect();
            out.push_str(&records(&gaps));
            out
        }
    };
    Ok(Outcome::ok(text))
}

/// File menus in name order followed by `extra` generated menus.
fn corpus(doc: &Document, extra: usize, seed: u64) -> (Vec<Menu>, Vec<String>) {
    let mut menus: Vec<Menu> = doc.menus.values().cloned().collect();
    let mut names: Vec<String> = doc.menus.keys().cloned().collect();
    let config = AuditConfig {
        corpus_size: extra,
        seed,
        ..AuditConfig::default()
    };
    for (i, m) in audit::generate_corpus(&doc.instance, &config).into_iter().enumerate() {
        menus.push(m);
        names.push(format!("gen{i}"));
    }
    (menus, names)
}

fn describe(doc: &Document, corpus: &[Menu], names: &[String], menu: &Menu) -> String {
    corpus
        .iter()
        .position(|m| m == menu)
        .map(|i| names[i].clone())
        .unwrap_or_else(|| render_menu(&doc.instance, menu))
}

#[derive(Serialize)]
struct AxiomRecord {
    axiom: Axiom,
    status: String,
    required: bool,
    tested: usize,
    counterexample: Option<Vec<String>>,
    alpha: Option<String>,
    betas: Option<Vec<String>>,
}

pub struct AuditArgs<'a> {
    pub kind: CriterionKind,
    pub param: &'a str,
    pub axioms: Option<Vec<Axiom>>,
    pub corpus_size: usize,
    pub alpha_grid: Option<Vec<Rational>>,
    pub seed: u64,
    pub mixture_cap: Option<usize>,
}

pub fn cmd_audit(doc: &Document, args: &AuditArgs, format: Format) -> Result<Outcome, CliError> {
    let (pref, _) = preference(doc, args.kind, args.param)?;
    let defaults = AuditConfig::default();
    let config = AuditConfig {
        axioms: args.axioms.clone().unwrap_or_else(|| Axiom::ALL.to_vec()),
        corpus_size: args.corpus_size,
        alpha_grid: args.alpha_grid.clone().unwrap_or(defaults.alpha_grid),
        seed: args.seed,
        mixture_cap: args.mixture_cap.unwrap_or(defaults.mixture_cap),
    };
    config.validate()?;
    let (menus, names) = corpus(doc, config.corpus_size, config.seed);
    let report = audit::audit(&pref, &menus, &config)?;
    let required = required_axioms(pref.criterion());

    let record = |r: &AxiomResult| AxiomRecord {
        axiom: r.axiom,
        status: r.status.to_string(),
        required: required.contains(&r.axiom),
        tested: r.tested,
        counterexample: r
            .counterexample
            .as_ref()
            .map(|c| c.menus.iter().map(|m| describe(doc, &menus, &names, m)).collect()),
        alpha: r
            .counterexample
            .as_ref()
            .and_then(|c| c.alpha.as_ref().map(format_rational)),
        betas: r
            .counterexample
            .as_ref()
            .and_then(|c| c.betas.as_ref().map(|b| b.iter().map(format_rational).collect())),
    };
    let rows: Vec<AxiomRecord> = report.results.iter().map(record).collect();
    let required_failure = rows.iter().any(|r| r.required && r.status == "fail");

    let text = match format {
        Format::Table => {
            let mut out = format!(
                "audit {} [{}] over {} menus (seed {})\n",
                pref.criterion().name(),
                args.param,
                menus.len(),
                config.seed
            );
            let _ = writeln!(out, "{:<32} {:<13} {:>8}  {:<8}  counterexample", "axiom", "status", "tested", "required");
            for r in &rows {
                let mut cex = r
                    .counterexample
                    .as_ref()
                    .map(|c| format!("({})", c.join(", ")))
                    .unwrap_or_default();
                if let Some(a) = &r.alpha {
                    let _ = write!(cex, " alpha={a}");
                }
                if let Some(b) = &r.betas {
                    let _ = write!(cex, " betas=[{}]", b.join(", "));
                }
                let _ = writeln!(
                    out,
                    "{:<32} {:<13} {:>8}  {:<8}  {}",
                    r.axiom.name(),
                    r.status,
                    r.tested,
                    if r.required { "yes" } else { "no" },
                    cex
                );
            }
            out
        }
        Format::Records => records(&rows),
    };
    Ok(Outcome {
        text,
        code: if required_failure {
            exit::CHECK_FAILED
        } else {
            exit::OK
        },
    })
}

pub struct ComparativeArgs<'a> {
    pub kind: CriterionKind,
    pub first: &'a str,
    pub second: &'a str,
    pub corpus_size: usize,
    pub seed: u64,
}

pub fn cmd_comparative(doc: &Document, args: &ComparativeArgs, format: Format) -> Result<Outcome, CliError> {
    let (p1, p2) = (doc.credal_set(args.first)?, doc.credal_set(args.second)?);
    let nested = comparative::credal_subset(p1, p2)?;
    let (menus, names) = corpus(doc, args.corpus_size, args.seed);
    let inst = doc.instance.clone();
    let reports: Vec<CheckReport> = match args.kind {
        CriterionKind::Bml => {
            let (a, b) = (Preference::bml(inst.clone(), p1.clone()), Preference::bml(inst, p2.clone()));
            vec![
                comparative::check_more_decisive(&a, &b, &menus),
                comparative::check_less_negative_inconsistent(&a, &b, &menus),
            ]
        }
        CriterionKind::Jml => {
            let (a, b) = (Preference::jml(inst.clone(), p1.clone()), Preference::jml(inst, p2.clone()));
            vec![
                comparative::check_more_strict_decisive(&a, &b, &menus),
                comparative::check_less_inconsistent(&a, &b, &menus),
            ]
        }
        other => {
            return Err(CliError::BadArgument(format!(
                "comparative checks take bml or jml, not {other:?}"
            )))
        }
    };
    // nestedness forces every check to pass; otherwise failures are witnesses
    let broken = nested && reports.iter().any(|r| !r.passed());
    let witness_names = |r: &CheckReport| {
        r.witness
            .as_ref()
            .map(|w| w.iter().map(|&i| names[i].clone()).collect::<Vec<_>>())
    };
    let text = match format {
        Format::Table => {
            let mut out = format!(
                "{} ⊆ {}: {}\n",
                args.first,
                args.second,
                if nested { "yes" } else { "no" }
            );
            for r in &reports {
                let status = serde_json::to_value(r.status).expect("status serializes");
                let _ = write!(out, "{:<28} {:<8} tested {:>5}", r.check, status.as_str().unwrap_or(""), r.tested);
                if let Some(w) = witness_names(r) {
                    let _ = write!(out, "  witness ({})", w.join(", "));
                }
                out.push('\n');
            }
            out
        }
        Format::Records => {
            let mut out = records(&[json!({
                "first": args.first,
                "second": args.second,
                "nested": nested,
            })]);
            let rows: Vec<_> = reports
                .iter()
                .map(|r| json!({"check": r.check, "status": r.status, "tested": r.tested, "witness": witness_names(r)}))
                .collect();
            out.push_str(&records(&rows));
            out
        }
    };
    Ok(Outcome {
        text,
        code: if broken { exit::CHECK_FAILED } else { exit::OK },
    })
}

pub fn cmd_rationalize(
    doc: &Document,
    collection: &str,
    policy: &AlphaPolicy,
    menu_names: &[String],
    format: Format,
) -> Result<Outcome, CliError> {
    let coll = doc.collection(collection)?;
    let names: Vec<String> = if menu_names.is_empty() {
        doc.menus.keys().cloned().collect()
    } else {
        menu_names.to_vec()
    };
    let menus: Vec<Menu> = names
        .iter()
        .map(|n| doc.menu(n).cloned())
        .collect::<Result<_, _>>()?;
    let inst = &doc.instance;
    let ranking: Vec<RankEntry> = rationalize::rank_menus(inst, &menus, coll, policy)?;

    let values: BTreeMap<&Menu, Rational> = ranking
        .iter()
        .map(|r| (&menus[r.index], r.value.clone()))
        .collect();
    let lotteries: Vec<Menu> = (0..inst.num_prizes())
        .map(|z| Menu::constant(inst, &inst.degenerate(z)))
        .collect::<Result<_, _>>()?;
    let value = |m: &Menu| match values.get(m) {
        Some(v) => v.clone(),
        None => rationalize::rationalized_value(inst, m, coll, policy).expect("policy validated by ranking"),
    };
    let consistency = rationalize::check_consistency(
        inst,
        coll,
        value,
        &menus,
        &lotteries,
        &rationalize::utility_grid(inst, 24),
    )?;

    let text = match format {
        Format::Table => {
            let mut out = format!("ranking under collection {collection}\n");
            let _ = writeln!(out, "{:>4}  {:<12} {:>10} {:>10}  {:<18} {:>8} {:>8}", "rank", "menu", "value", "≈", "band", "maxmin", "minmax");
            for r in &ranking {
                let _ = writeln!(
                    out,
                    "{:>4}  {:<12} {:>10} {:>10.4}  {:<18} {:>8} {:>8}",
                    r.rank,
                    names[r.index],
                    format_rational(&r.value),
                    approx(&r.value),
                    format!("[{}, {}]", format_rational(&r.band.low), format_rational(&r.band.high)),
                    format_rational(&r.band.maxmin),
                    format_rational(&r.band.minmax),
                );
            }
            let _ = writeln!(
                out,
                "lottery consistency: {}; robustly strict consistency: {} ({} separated pairs)",
                if consistency.lottery_consistency { "ok" } else { "VIOLATED" },
                if consistency.robust_strict_consistency { "ok" } else { "VIOLATED" },
                consistency.sandwiched_pairs
            );
            out
        }
        Format::Records => {
            let rows: Vec<_> = ranking
                .iter()
                .map(|r| {
                    json!({
                        "menu": names[r.index],
                        "rank": r.rank,
                        "value": format_rational(&r.value),
                        "approx": approx(&r.value),
                        "band": r.band,
                    })
                })
                .collect();
            let mut out = records(&rows);
            out.push_str(&records(&[&consistency]));
            out
        }
    };
    Ok(Outcome {
        text,
        code: if consistency.passed() {
            exit::OK
        } else {
            exit::CHECK_FAILED
        },
    })
}

struct Expectation {
    label: String,
    expected: String,
    actual: String,
}

impl Expectation {
    fn new(label: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Self {
        Expectation {
            label: label.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }

    fn holds(&self) -> bool {
        self.expected == self.actual
    }
}

fn benefit(doc: &Document, menu: &str, info: &str) -> Result<String, CliError> {
    Ok(format_rational(&benefit_of_information(
        &doc.instance,
        doc.menu(menu)?,
        doc.info_structure(info)?,
    )))
}

/// Reproduces the incomparability and intransitivity examples from the
/// bundled files (or from `data_dir`, if given), checking every value.
pub fn cmd_examples(data_dir: Option<&Path>) -> Result<Outcome, CliError> {
    let (ex1, ex2) = match data_dir {
        Some(dir) => (
            Document::load(&dir.join("example1.json"))?,
            Document::load(&dir.join("example2.json"))?,
        ),
        None => (Document::from_json(EXAMPLE1)?, Document::from_json(EXAMPLE2)?),
    };
    let mut checks = Vec::new();

    for (menu, info, value) in [("f", "dp", "2"), ("f", "pi", "2"), ("gh", "dp", "3/2"), ("gh", "pi", "3")] {
        checks.push(Expectation::new(
            format!("example 1: b({menu} | {info})"),
            value,
            benefit(&ex1, menu, info)?,
        ));
    }
    let set1 = ex1.credal_set("Pi")?;
    let bml = Preference::bml(ex1.instance.clone(), set1.clone());
    checks.push(Expectation::new(
        "example 1: bml f vs gh",
        Verdict::Incomparable,
        bml.compare(ex1.menu("f")?, ex1.menu("gh")?),
    ));

    for info in ["dp", "pi"] {
        checks.push(Expectation::new(
            format!("example 2: b(fstar | {info})"),
            "5/2",
            benefit(&ex2, "fstar", info)?,
        ));
    }
    let jml = Preference::jml(ex2.instance.clone(), ex2.credal_set("Pi")?.clone());
    let (f, fstar, gh) = (ex2.menu("f")?, ex2.menu("fstar")?, ex2.menu("gh")?);
    checks.push(Expectation::new("example 2: jml fstar vs gh", Verdict::Indifferent, jml.compare(fstar, gh)));
    checks.push(Expectation::new("example 2: jml f vs gh", Verdict::Indifferent, jml.compare(f, gh)));
    checks.push(Expectation::new("example 2: jml fstar vs f", Verdict::StrictBetter, jml.compare(fstar, f)));

    let corpus = vec![fstar.clone(), gh.clone(), f.clone()];
    let report = audit::audit(&jml, &corpus, &AuditConfig::with_axioms(vec![Axiom::Transitivity]))?;
    let result = report.get(Axiom::Transitivity).expect("audited");
    let witness = result
        .counterexample
        .as_ref()
        .map(|c| {
            let names: Vec<&str> = c.menus.iter().map(|m| ex2.menu_name(m).unwrap_or("?")).collect();
            format!("fail ({})", names.join(", "))
        })
        .unwrap_or_else(|| result.status.to_string());
    checks.push(Expectation::new(
        "example 2: jml transitivity audit",
        "fail (f, gh, fstar)",
        witness,
    ));

    let mut out = String::new();
    let mut all = true;
    for c in &checks {
        all &= c.holds();
        let _ = writeln!(
            out,
            "{:<40} {:<22} {}",
            c.label,
            c.actual,
            if c.holds() { "ok".to_string() } else { format!("MISMATCH (expected {})", c.expected) }
        );
    }
    Ok(Outcome {
        text: out,
        code: if all { exit::OK } else { exit::CHECK_FAILED },
    })
}
