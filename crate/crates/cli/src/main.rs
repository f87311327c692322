mod config;
mod refs;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hereditary::algebra::{quasi_regular_group, unit_group};
use hereditary::constructions::{baer_algebra, bovdi_search, criterion_check, hereditary_certificates, Verdict};
use hereditary::grothendieck::{cyclic_certificate, is_hereditary, solve_membership, AlgebraEntry, ClassRegistry, Membership};
use hereditary::group::catalog::small_catalog;
use hereditary::group::invariants::structure_invariants;
use hereditary::group::iso::is_isomorphic;
use hereditary::group::ops::{abelian_invariants, is_abelian};
use hereditary::group::subgroups::subgroups;
use hereditary::homcount::{count_epis_bruteforce, count_epis_inclusion_exclusion, count_homs, lovasz_compare};
use hereditary::json::{
    membership_json, AlgebraJson, CertificateJson, HereditaryJson, LovaszJson, ReportJson,
    SubgroupJson, WitnessJson,
};
use hereditary::{suite, Error, GroupOps};
use serde_json::{json, Value};

use config::{Format, Overrides, RunConfig};

/// An error with the process exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn inconclusive(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BoundExceeded { .. }
            | Error::OrderOverflow { .. }
            | Error::SearchBudgetExceeded { .. }
            | Error::NotFound { .. }
            | Error::UnsupportedClass(_)
            | Error::PreconditionViolated(_)
            | Error::ConstructionFailed(_) => 1,
            Error::Internal(_) | Error::NotPerfectPower(..) | Error::NonDivisible(..) | Error::EmptyPositivePart => 3,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

#[derive(Parser)]
#[command(name = "hereditary", version, about = "Finite groups, their group algebras, and certificates that RG determines G")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// JSON file with `limits`, `format` and `output`.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Largest group materialized as a table.
    #[arg(long, global = true)]
    max_order: Option<u64>,
    #[arg(long, global = true)]
    max_algebra_elements: Option<u64>,
    /// Backtracking nodes per hom or isomorphism search.
    #[arg(long, global = true)]
    search_budget: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in groups.
    Catalog,
    Subgroups {
        #[arg(long)]
        group: String,
    },
    Invariants {
        #[arg(long)]
        group: String,
    },
    Iso {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
    },
    /// Unit group of RG (`--group`) or of any unital algebra (`--algebra`).
    Unitgroup {
        #[arg(long)]
        ring: String,
        #[arg(long, conflicts_with = "algebra", required_unless_present = "algebra")]
        group: Option<String>,
        #[arg(long)]
        algebra: Option<String>,
    },
    /// Circle group Q(A) of a quasi-regular algebra.
    Qgroup {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        algebra: String,
    },
    Groupalgebra {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        group: String,
    },
    Homcount {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
    },
    Epicount {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
    },
    Lovasz {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
    },
    Certificate {
        #[command(subcommand)]
        kind: CertificateKind,
    },
    /// Express [K] in the span of the unit groups of a pool of algebras.
    Membership {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        k: String,
        /// Algebra references; repeat or separate with `;`.
        #[arg(long, required = true, value_delimiter = ';')]
        pool: Vec<String>,
    },
    /// Check every subgroup class of G against a pool; without `--pool`,
    /// use the witnesses built by the constructions.
    Hereditary {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        group: String,
        #[arg(long, value_delimiter = ';')]
        pool: Vec<String>,
    },
    Baer {
        #[arg(long)]
        group: String,
    },
    BovdiSearch {
        #[arg(long)]
        group: String,
        /// Defaults to log2 |G|.
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        budget: Option<u64>,
    },
    Pipeline {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
    },
    /// Run the acceptance suite (all criteria, or the listed ones).
    VerifyAll { criteria: Vec<u32> },
}

#[derive(Subcommand)]
enum CertificateKind {
    Cyclic {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Catalog => "catalog",
            Command::Subgroups { .. } => "subgroups",
            Command::Invariants { .. } => "invariants",
            Command::Iso { .. } => "iso",
            Command::Unitgroup { .. } => "unitgroup",
            Command::Qgroup { .. } => "qgroup",
            Command::Groupalgebra { .. } => "groupalgebra",
            Command::Homcount { .. } => "homcount",
            Command::Epicount { .. } => "epicount",
            Command::Lovasz { .. } => "lovasz",
            Command::Certificate { .. } => "certificate",
            Command::Membership { .. } => "membership",
            Command::Hereditary { .. } => "hereditary",
            Command::Baer { .. } => "baer",
            Command::BovdiSearch { .. } => "bovdi-search",
            Command::Pipeline { .. } => "pipeline",
            Command::VerifyAll { .. } => "verify-all",
        }
    }
}

/// What a command produced: text lines, a JSON value, and an exit code.
struct Report {
    text: String,
    json: Value,
    code: u8,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, code: 0 }
    }
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report serializes")
}

fn list(xs: &[u64]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn group_summary<G: GroupOps + ?Sized>(g: &G) -> (String, Value) {
    if is_abelian(g) {
        let inv = abelian_invariants(g);
        (format!("order {}, abelian invariants {}", g.order(), list(&inv)), json!({"order": g.order(), "abelian_invariants": inv}))
    } else {
        (format!("order {}, nonabelian", g.order()), json!({"order": g.order(), "abelian_invariants": null}))
    }
}

fn execute(cmd: Command, cfg: &RunConfig) -> Result<Report, Failure> {
    let l = &cfg.limits;
    match cmd {
        Command::Catalog => {
            let groups = small_catalog(l);
            let mut text = String::new();
            let mut entries = Vec::new();
            for (name, g) in &groups {
                let key = structure_invariants(g).key();
                text += &format!("{name:<18} order {:>2}  {key}\n", g.order());
                entries.push(json!({"name": name, "order": g.order(), "class": key}));
            }
            text += "families: cyclic:m abelian:m1,..,mk dihedral:m quaternion8 heisenberg:p modular_p3:p trivial";
            Ok(Report::ok(text, json!({"groups": entries})))
        }
        Command::Subgroups { group } => {
            let g = refs::group(&group, l)?;
            let subs = subgroups(&g, l)?;
            let text = subs
                .iter()
                .map(|s| format!("order {:>3}: {:?}", s.order(), s.elements()))
                .collect::<Vec<_>>()
                .join("\n");
            let js: Vec<SubgroupJson> = subs.iter().map(SubgroupJson::from_subgroup).collect();
            Ok(Report::ok(format!("{text}\n{} subgroups", subs.len()), to_value(&js)))
        }
        Command::Invariants { group } => {
            let inv = structure_invariants(&refs::group(&group, l)?);
            let stats: Vec<String> = inv.order_statistics.iter().map(|(o, c)| format!("{o}:{c}")).collect();
            let text = format!(
                "order {}\nexponent {}\nnilpotency class {}\ncenter order {}\nderived subgroup order {}\nabelian invariants {}\nelement orders {}",
                inv.order,
                inv.exponent,
                inv.nilpotency_class.map_or("not nilpotent".to_string(), |c| c.to_string()),
                inv.center_order,
                inv.derived_subgroup_order,
                inv.abelian_invariants.as_deref().map_or("-".to_string(), list),
                stats.join(" "),
            );
            Ok(Report::ok(text, to_value(&inv)))
        }
        Command::Iso { g, h } => {
            let (g, h) = (refs::group(&g, l)?, refs::group(&h, l)?);
            Ok(match is_isomorphic(&g, &h, l)? {
                Some(map) => Report::ok(format!("isomorphic: {map:?}"), json!({"isomorphic": true, "map": map})),
                None => Report::ok("not isomorphic".into(), json!({"isomorphic": false})),
            })
        }
        Command::Unitgroup { ring, group, algebra } => {
            let r = refs::ring(&ring)?;
            let a = match (group, algebra) {
                (Some(g), _) => refs::algebra(&format!("group:{g}"), &r, l)?,
                (None, Some(a)) => refs::algebra(&a, &r, l)?,
                (None, None) => unreachable!("clap requires one of --group, --algebra"),
            };
            let (text, mut js) = group_summary(&unit_group(&a, l)?);
            js["algebra"] = a.label().into();
            Ok(Report::ok(format!("{}*: {text}", a.label()), js))
        }
        Command::Qgroup { ring, algebra } => {
            let r = refs::ring(&ring)?;
            let a = refs::algebra(&algebra, &r, l)?;
            let size = a.check_enumerable(l)?;
            let q = quasi_regular_group(&a, l)?;
            if q.order() as u64 != size {
                return Err(Failure::inconclusive(format!(
                    "{} is not quasi-regular: {} of {size} elements are quasi-invertible",
                    a.label(),
                    q.order()
                )));
            }
            let (text, mut js) = group_summary(&q);
            js["algebra"] = a.label().into();
            Ok(Report::ok(format!("Q({}): {text}", a.label()), js))
        }
        Command::Groupalgebra { ring, group } => {
            let r = refs::ring(&ring)?;
            let a = refs::algebra(&format!("group:{group}"), &r, l)?;
            let text = format!("{}: dimension {}, {} elements", a.label(), a.dim(), a.element_count().map_or("many".into(), |n| n.to_string()));
            Ok(Report::ok(text, to_value(&AlgebraJson::from_algebra(&a))))
        }
        Command::Homcount { g, h } => {
            let (g, h) = (refs::group(&g, l)?, refs::group(&h, l)?);
            let c = count_homs(&g, &h, l)?;
            Ok(Report::ok(format!("|Hom({}, {})| = {c}", g.label(), h.label()), json!({"count": c.to_string()})))
        }
        Command::Epicount { g, h } => {
            let (g, h) = (refs::group(&g, l)?, refs::group(&h, l)?);
            let ie = count_epis_inclusion_exclusion(&g, &h, l)?;
            let bf = count_epis_bruteforce(&g, &h, l)?;
            let js = json!({"inclusion_exclusion": ie.to_string(), "bruteforce": bf.to_string(), "agree": ie == bf});
            if ie != bf {
                return Err(Failure { code: 3, message: format!("epimorphism counts disagree: {ie} vs {bf}") });
            }
            Ok(Report::ok(format!("|Epi({}, {})| = {ie} (both methods agree)", g.label(), h.label()), js))
        }
        Command::Lovasz { g, h } => {
            let (g, h) = (refs::group(&g, l)?, refs::group(&h, l)?);
            let v = LovaszJson::from_verdict(&lovasz_compare(&g, &h, l)?);
            let text = match &v {
                LovaszJson::Isomorphic { map } => format!("Isomorphic: {map:?}"),
                LovaszJson::Distinguished { subgroup, count_g, count_h } => {
                    format!("Distinguished by |Hom({}, -)|: {count_g} vs {count_h}", subgroup.label)
                }
                LovaszJson::OrderMismatch => "orders differ".to_string(),
            };
            Ok(Report::ok(text, to_value(&v)))
        }
        Command::Certificate { kind: CertificateKind::Cyclic { p, n } } => {
            let r = refs::ring(&format!("Fp:{p}"))?;
            let mut reg = ClassRegistry::new(l);
            let layers = cyclic_certificate(&mut reg, r, n, l)?;
            let mut text = Vec::new();
            let mut js = Vec::new();
            for layer in &layers {
                let terms: Vec<String> =
                    layer.certificate.terms.iter().map(|(q, e)| format!("{q} [{}*]", e.label())).collect();
                text.push(format!("C{}: a = {} ; {}", p.pow(layer.i), list(&layer.multiplicities), terms.join(" + ")));
                js.push(json!({
                    "i": layer.i,
                    "multiplicities": layer.multiplicities,
                    "certificate": to_value(&CertificateJson::from_certificate(&layer.certificate)),
                }));
            }
            Ok(Report::ok(text.join("\n"), Value::Array(js)))
        }
        Command::Membership { ring, k, pool } => {
            let r = refs::ring(&ring)?;
            let k = refs::group(&k, l)?;
            let entries = pool
                .iter()
                .map(|s| Ok(AlgebraEntry::new(refs::algebra(s, &r, l)?, l)?))
                .collect::<Result<Vec<_>, Failure>>()?;
            let mut reg = ClassRegistry::new(l);
            let m = solve_membership(&mut reg, &k, &r, &entries)?;
            let js = membership_json(&m, &|i| reg.key(i).to_string());
            let code = if m.is_certified() { 0 } else { 1 };
            let text = match &m {
                Membership::Certified(c) => {
                    let terms: Vec<String> = c.terms.iter().map(|(q, e)| format!("{q} [{}*]", e.label())).collect();
                    format!("[{}] = {}", k.label(), terms.join(" + "))
                }
                Membership::NotInSpan { residual } => {
                    let parts: Vec<String> = residual.iter().map(|(i, q)| format!("{}: {}", reg.key(i), q)).collect();
                    format!("[{}] not in span; residual {}", k.label(), parts.join(", "))
                }
            };
            Ok(Report { text, json: to_value(&js), code })
        }
        Command::Hereditary { ring, group, pool } if pool.is_empty() => {
            let r = refs::ring(&ring)?;
            let g = refs::group(&group, l)?;
            let ws = hereditary_certificates(&g, r, l)?;
            let text = ws
                .iter()
                .map(|w| format!("{}: {:?}, {}", structure_invariants(&w.k).key(), w.route, describe_witness(&w.witness)))
                .collect::<Vec<_>>()
                .join("\n");
            let js: Vec<Value> = ws
                .iter()
                .map(|w| json!({"route": format!("{:?}", w.route), "witness": to_value(&WitnessJson::from_witness(&w.witness))}))
                .collect();
            Ok(Report::ok(format!("{text}\n{} hereditary", g.label()), json!({"group": g.label(), "hereditary": true, "witnesses": js})))
        }
        Command::Hereditary { ring, group, pool } => {
            let r = refs::ring(&ring)?;
            let g = refs::group(&group, l)?;
            let entries = pool
                .iter()
                .map(|s| Ok(AlgebraEntry::new(refs::algebra(s, &r, l)?, l)?))
                .collect::<Result<Vec<_>, Failure>>()?;
            let mut reg = ClassRegistry::new(l);
            let rep = is_hereditary(&mut reg, &g, &r, &entries, l)?;
            let js = HereditaryJson::from_report(&rep, &|i| reg.key(i).to_string());
            let mut text: Vec<String> = js
                .rows
                .iter()
                .map(|row| format!("{}: {}", row.subgroup, if matches!(row.membership, hereditary::json::MembershipJson::Certified { .. }) { "certified" } else { "not in span" }))
                .collect();
            text.push(format!("{} {}", g.label(), if js.hereditary { "hereditary" } else { "not hereditary over this pool" }));
            Ok(Report { text: text.join("\n"), code: if js.hereditary { 0 } else { 1 }, json: to_value(&js) })
        }
        Command::Baer { group } => {
            let g = refs::group(&group, l)?;
            let b = baer_algebra(&g, l)?;
            let text = format!(
                "{}: dimension {} over {}, commutator convention {:?}, basis {:?}",
                b.algebra.label(),
                b.algebra.dim(),
                b.algebra.ring().label(),
                b.convention,
                b.basis
            );
            let js = json!({"convention": format!("{:?}", b.convention), "basis": b.basis, "algebra": to_value(&AlgebraJson::from_algebra(&b.algebra))});
            Ok(Report::ok(text, js))
        }
        Command::BovdiSearch { group, dim, budget } => {
            let g = refs::group(&group, l)?;
            let dim = dim.unwrap_or_else(|| g.order().trailing_zeros() as usize);
            let hit = bovdi_search(&g, dim, budget.unwrap_or(l.algebra_search_budget), l)?;
            let text = format!("found in {:?} phase after {} nodes: {:?}", hit.phase, hit.explored, hit.algebra.constants());
            let js = json!({
                "phase": format!("{:?}", hit.phase),
                "explored": hit.explored,
                "map": hit.map,
                "algebra": to_value(&AlgebraJson::from_algebra(&hit.algebra)),
            });
            Ok(Report::ok(text, js))
        }
        Command::Pipeline { ring, g, h } => {
            let r = refs::ring(&ring)?;
            let (g, h) = (refs::group(&g, l)?, refs::group(&h, l)?);
            let rep = criterion_check(&g, &h, r, l)?;
            let mut text: Vec<String> = rep
                .rows
                .iter()
                .map(|row| {
                    format!(
                        "{:<24} G {:>8}  H {:>8}  {}",
                        row.subgroup,
                        row.g.recovered.to_string(),
                        row.h.recovered.to_string(),
                        if row.matched { "=" } else { "differ" }
                    )
                })
                .collect();
            let code = match &rep.verdict {
                Verdict::IsomorphicCertified(map) => {
                    text.push(format!("IsomorphicCertified {map:?}"));
                    0
                }
                Verdict::AlgebrasDistinguished(row) => {
                    text.push(format!("AlgebrasDistinguished at row {row} ({})", rep.rows[*row].subgroup));
                    0
                }
                Verdict::Inconclusive(why) => {
                    text.push(format!("Inconclusive: {why}"));
                    1
                }
            };
            Ok(Report { text: text.join("\n"), json: to_value(&ReportJson::from_report(&rep)), code })
        }
        Command::VerifyAll { criteria } => {
            for &id in &criteria {
                if !suite::CRITERIA.iter().any(|(i, _)| *i == id) {
                    return Err(Failure::usage(format!("no criterion {id}; expected 1..={}", suite::CRITERIA.len())));
                }
            }
            let outcomes = if criteria.is_empty() { suite::run_all(l) } else { criteria.iter().map(|&id| suite::run(id, l)).collect() };
            let passed = outcomes.iter().all(|o| o.passed);
            let text = outcomes.iter().map(|o| o.line()).collect::<Vec<_>>().join("\n");
            let js: Vec<Value> = outcomes
                .iter()
                .map(|o| json!({"id": o.id, "title": o.title, "passed": o.passed, "detail": o.detail}))
                .collect();
            Ok(Report { text, json: json!({"passed": passed, "criteria": js}), code: if passed { 0 } else { 3 } })
        }
    }
}

fn describe_witness(w: &hereditary::grothendieck::HereditaryWitness) -> String {
    format!("n = {}, A = {}, B = {}", w.n, w.a_label(), w.b_label())
}

fn emit(cfg: &RunConfig, report: &Report) -> Result<(), Failure> {
    let body = match cfg.format {
        Format::Text => report.text.clone(),
        Format::Json => serde_json::to_string_pretty(&report.json).expect("report serializes"),
    };
    let io = |e: std::io::Error| Failure { code: 3, message: format!("write failed: {e}") };
    match &cfg.output {
        Some(path) => std::fs::write(path, body + "\n").map_err(io),
        None => writeln!(std::io::stdout(), "{body}").map_err(io),
    }
}

fn run(args: impl IntoIterator<Item = std::ffi::OsString>) -> u8 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let g = cli.global;
    let overrides = Overrides {
        config: g.config,
        max_order: g.max_order,
        max_algebra_elements: g.max_algebra_elements,
        search_budget: g.search_budget,
        json: g.json,
        output: g.output,
    };
    let name = cli.command.name();
    let cfg = match config::resolve(name, overrides, |k| std::env::var(k).ok()) {
        Ok(c) => c,
        Err(f) => {
            eprintln!("error: {}", f.message);
            return f.code;
        }
    };
    match execute(cli.command, &cfg).and_then(|r| emit(&cfg, &r).map(|_| r.code)) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("{}: {}", cfg.command, f.message);
            f.code
        }
    }
}

fn main() -> ExitCode {
    ExitCode::from(run(std::env::args_os()))
}
