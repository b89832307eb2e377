use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use grouplab::catalog::{load_catalog, load_group_arg};
use grouplab::embeddings::Embedding;
use grouplab::group::Limits;
use grouplab::report::{render, ReportOptions};
use grouplab::scan::{scan, NamedGroup, ScanOutcome};
use grouplab::structure::{
    chief_series, derived_series, frattini, sylow_conjugates, sylow_subgroup, upper_central_series,
};
use grouplab::subgroup::{center, is_normal, is_subnormal, subgroup_generated};
use grouplab::theorems::{CheckId, LemmaId};
use grouplab::{classes, Permutation};

#[derive(Parser)]
#[command(name = "grouplab", version, about = "Finite permutation group checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct BudgetArgs {
    /// Element budget for group closures (overrides GROUPLAB_BUDGET).
    #[arg(long)]
    budget: Option<usize>,
    /// Largest group order for which the subgroup lattice is enumerated.
    #[arg(long)]
    enum_budget: Option<usize>,
}

impl BudgetArgs {
    fn limits(self) -> Result<Limits, String> {
        let mut limits = Limits::from_env()?;
        if let Some(b) = self.budget {
            limits.elements = b;
        }
        if let Some(b) = self.enum_budget {
            limits.enumeration = b;
        }
        Ok(limits)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate theorem or lemma checks on one group.
    Check {
        #[arg(long)]
        group: String,
        /// Check id, comma-separated ids, or `all`.
        #[arg(long, default_value = "all")]
        theorem: String,
        /// A prime, comma-separated primes, or `all` (every prime divisor).
        #[arg(long, default_value = "all")]
        p: String,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Test one subgroup embedding property.
    Predicate {
        name: String,
        #[arg(long)]
        group: String,
        /// Generators in cycle notation, separated by `;`.
        #[arg(long)]
        subgroup: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Print structural data.
    Structure {
        #[arg(long)]
        group: String,
        #[arg(long, value_enum)]
        show: Show,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Evaluate checks over every group of a catalog directory.
    Scan {
        #[arg(long)]
        catalog: PathBuf,
        #[arg(long, default_value = "all")]
        theorems: String,
        /// Lemma ids, `all` or `none`.
        #[arg(long, default_value = "none")]
        lemmas: String,
        #[arg(long, default_value = "all")]
        primes: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Show {
    Sylow,
    Frattini,
    Chief,
    Series,
    Ops,
}

fn parse_checks(text: &str, lemmas: bool) -> Result<Vec<CheckId>, String> {
    match text {
        "all" if lemmas => Ok(CheckId::all_lemmas()),
        "all" => Ok(CheckId::all_theorems()),
        "none" | "" => Ok(Vec::new()),
        _ => text
            .split(',')
            .map(|t| {
                let t = t.trim();
                if lemmas {
                    t.parse::<LemmaId>().map(CheckId::Lemma)
                } else {
                    t.parse::<CheckId>()
                }
            })
            .collect(),
    }
}

fn parse_primes(text: &str) -> Result<Option<Vec<u64>>, String> {
    if text == "all" {
        return Ok(None);
    }
    text.split(',')
        .map(|t| {
            let t = t.trim();
            match t.parse::<u64>() {
                Ok(p) if grouplab::arith::is_prime(p) => Ok(p),
                _ => Err(format!("not a prime: {t:?}")),
            }
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Some)
}

fn emit(
    outcome: &ScanOutcome,
    report: Option<&PathBuf>,
    timings: bool,
) -> Result<ExitCode, String> {
    let text = render(outcome, ReportOptions { timings });
    match report {
        Some(path) => {
            fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display()))?;
            print!("{}", text.lines().last().unwrap_or_default());
            println!();
        }
        None => print!("{text}"),
    }
    let s = outcome.summary();
    Ok(if s.violations > 0 {
        ExitCode::from(2)
    } else if s.errors > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn parse_subgroup_gens(text: &str, degree: usize) -> Result<Vec<Permutation>, String> {
    text.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| Permutation::parse(t, degree).map_err(|e| format!("{t:?}: {e}")))
        .collect()
}

fn structure(entry: &NamedGroup, show: Show) -> Result<String, String> {
    let g = &entry.group;
    let mut out = String::new();
    let err = |e: grouplab::GroupError| e.to_string();
    match show {
        Show::Sylow => {
            for p in g.prime_divisors() {
                let s = sylow_subgroup(g, p).map_err(err)?;
                let n = sylow_conjugates(g, p).map_err(err)?.len();
                out += &format!("p = {p}: {s}, {n} conjugates\n");
            }
        }
        Show::Frattini => out += &format!("{}\n", frattini(g).map_err(err)?),
        Show::Chief => out += &format!("chief factors {:?}\n", chief_series(g).factor_orders()),
        Show::Series => {
            out += &format!("derived series {:?}\n", derived_series(g).orders());
            out += &format!(
                "upper central series {:?}\n",
                upper_central_series(g).orders()
            );
            out += &format!("chief series {:?}\n", chief_series(g).orders());
        }
        Show::Ops => {
            out += &format!(
                "name: {}\norder: {}\ndegree: {}\n",
                entry.name,
                g.order(),
                g.degree()
            );
            out += &format!("center: {}\n", center(g).order());
            out += &format!("solvable: {}\n", classes::is_solvable(g).holds);
            out += &format!("nilpotent: {}\n", classes::is_nilpotent(g).holds);
            out += &format!("supersolvable: {}\n", classes::is_supersolvable(g).holds);
            for p in g.prime_divisors() {
                let v =
                    |r: grouplab::Result<classes::ClassVerdict>| r.map(|v| v.holds).map_err(err);
                out += &format!(
                    "p = {p}: p-solvable {}, p-nilpotent {}, p-supersolvable {}\n",
                    v(classes::is_p_solvable(g, p))?,
                    v(classes::is_p_nilpotent(g, p))?,
                    v(classes::is_p_supersolvable(g, p))?
                );
            }
        }
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Check {
            group,
            theorem,
            p,
            report,
            timings,
            budget,
        } => {
            let checks = parse_checks(&theorem, false)?;
            let primes = parse_primes(&p)?;
            let entry = load_group_arg(&group, budget.limits()?).map_err(|e| e.to_string())?;
            let outcome = match &primes {
                // explicitly requested primes are evaluated even when they do
                // not divide the order
                Some(list) => {
                    let mut out = ScanOutcome::default();
                    for &p in list {
                        for &c in &checks {
                            match grouplab::theorems::evaluate(c, &entry.name, &entry.group, p) {
                                Ok(r) => out.reports.push(r),
                                Err(e) => return Err(e.to_string()),
                            }
                        }
                    }
                    out
                }
                None => scan(std::slice::from_ref(&entry), &checks, None, 1),
            };
            emit(&outcome, report.as_ref(), timings)
        }
        Command::Predicate {
            name,
            group,
            subgroup,
            budget,
        } => {
            let plain = matches!(name.as_str(), "normal" | "subnormal");
            let pred: Option<Embedding> = if plain { None } else { Some(name.parse()?) };
            let entry = load_group_arg(&group, budget.limits()?).map_err(|e| e.to_string())?;
            let gens = parse_subgroup_gens(&subgroup, entry.group.degree())?;
            let g = &entry.group;
            let h = subgroup_generated(g, &gens).map_err(|e| e.to_string())?;
            match pred {
                Some(pred) => {
                    let v = pred.check(&h, g).map_err(|e| e.to_string())?;
                    println!("{pred}: {}", v.holds);
                    println!("subgroup: {h}");
                    println!("witness: {}", v.witness);
                }
                None => {
                    let holds = if name == "normal" {
                        is_normal(&h, g)
                    } else {
                        is_subnormal(&h, g)
                    };
                    println!("{name}: {}", holds.map_err(|e| e.to_string())?);
                    println!("subgroup: {h}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Structure {
            group,
            show,
            budget,
        } => {
            let entry = load_group_arg(&group, budget.limits()?).map_err(|e| e.to_string())?;
            print!("{}", structure(&entry, show)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Scan {
            catalog,
            theorems,
            lemmas,
            primes,
            jobs,
            report,
            timings,
            budget,
        } => {
            let mut checks = parse_checks(&theorems, false)?;
            checks.extend(parse_checks(&lemmas, true)?);
            let primes = parse_primes(&primes)?;
            let groups = load_catalog(&catalog, budget.limits()?).map_err(|e| e.to_string())?;
            let outcome = scan(&groups, &checks, primes.as_deref(), jobs);
            emit(&outcome, report.as_ref(), timings)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
