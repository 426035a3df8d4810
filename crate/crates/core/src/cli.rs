//! The `gsg` command line. [`run_command`] is the whole program; the binary
//! only forwards its arguments and prints the outcome.
//!
//! Exit codes: 0 when every requested check passes, 1 when a check fails,
//! 2 for usage, I/O and parse errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use crate::finite::{ElementSet, FiniteSemigroup};
use crate::gamma::{funcomp, sandwich, GammaSemigroup};
use crate::gsg::{parse_cayley, parse_gsg, to_gsg};
use crate::ideals::{
    check_green_theorem, check_ideal_correspondence_for, gamma_green_structure, green_structure, principal_ideal_gamma,
    principal_ideal_sigma, IdealKind, Relation,
};
use crate::rewrite::{check_local_confluence, reduce_traced, ConfluenceMode, Word};
use crate::sigma::{classify_normal_form, Sigma, SigmaElement};
use crate::simple::{check_transfer, TransferMode, TransferReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn verdict(passed: bool, stdout: String) -> Self {
        Outcome {
            code: if passed { EXIT_OK } else { EXIT_FAIL },
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: msg.into(),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "gsg", version, about = "Universal semigroup of a finite Γ-semigroup")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check table ranges and the Γ-associativity axiom
    Validate { file: PathBuf },
    /// Reduce a word such as `s1 g0 s1` to its normal form
    Reduce {
        file: PathBuf,
        #[arg(required = true, num_args = 1..)]
        tokens: Vec<String>,
        /// Print every rewrite step
        #[arg(long)]
        trace: bool,
    },
    /// Check that all overlap instances of the rewriting system rejoin
    #[command(group(ArgGroup::new("mode").args(["exhaustive", "sample"])))]
    Confluence {
        file: PathBuf,
        #[arg(long)]
        exhaustive: bool,
        /// Number of random overlap instances
        #[arg(long, value_name = "K", requires = "seed")]
        sample: Option<usize>,
        #[arg(long, value_name = "N", requires = "sample")]
        seed: Option<u64>,
    },
    /// Print Σ: its cardinality, its elements or its table
    #[command(group(ArgGroup::new("view").args(["card", "list", "table"])))]
    Sigma {
        file: PathBuf,
        #[arg(long)]
        card: bool,
        #[arg(long)]
        list: bool,
        #[arg(long)]
        table: bool,
    },
    /// Principal ideal of one element
    Ideal {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, value_enum)]
        carrier: CarrierArg,
        /// `x<i>` on the Γ side; any normal form on the Σ side
        elem: String,
    },
    /// Green's L, R and H classes
    #[command(group(ArgGroup::new("side").args(["gamma", "sigma", "derived"])))]
    Green {
        file: PathBuf,
        #[arg(long)]
        gamma: bool,
        #[arg(long)]
        sigma: bool,
        /// Green structure of the plain semigroup S_J
        #[arg(long, value_name = "J")]
        derived: Option<usize>,
    },
    /// Run the structural checks (all of them when no flag is given)
    Check {
        file: PathBuf,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        prop_left: bool,
        #[arg(long)]
        prop_right: bool,
        #[arg(long)]
        quasi: bool,
        #[arg(long)]
        h_corr: bool,
        #[arg(long)]
        green_theorem: bool,
        #[arg(long)]
        transfer_cs: bool,
        #[arg(long)]
        transfer_group: bool,
    },
    /// Emit a generated Γ-semigroup as `.gsg` on standard output
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        /// |A| for funcomp
        #[arg(long, value_name = "N", required_if_eq("kind", "funcomp"))]
        a: Option<usize>,
        /// |B| for funcomp
        #[arg(long, value_name = "M", required_if_eq("kind", "funcomp"))]
        b: Option<usize>,
        /// Cayley table of the seed semigroup for sandwich
        #[arg(long, value_name = "FILE", required_if_eq("kind", "sandwich"))]
        seed_table: Option<PathBuf>,
        /// Comma-separated seed elements forming Γ, e.g. `0,1`
        #[arg(long, value_name = "LIST", required_if_eq("kind", "sandwich"))]
        gamma_subset: Option<String>,
        /// Distinguished Γ element of the emitted document
        #[arg(long, default_value_t = 0)]
        gamma0: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Left,
    Right,
    Quasi,
}

impl From<KindArg> for IdealKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Left => IdealKind::Left,
            KindArg::Right => IdealKind::Right,
            KindArg::Quasi => IdealKind::Quasi,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CarrierArg {
    Gamma,
    Sigma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenKind {
    Funcomp,
    Sandwich,
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome::ok(rendered),
                _ => Outcome::usage(rendered),
            };
        }
    };
    match dispatch(cli.command) {
        Ok(outcome) => outcome,
        Err(msg) => Outcome::usage(format!("error: {msg}\n")),
    }
}

fn load(path: &Path) -> Result<GammaSemigroup, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_gsg(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// Loads a file and rejects tables that are not Γ-semigroups, since nothing
/// downstream is well defined for them.
fn load_valid(path: &Path, out: &mut String) -> Result<Option<GammaSemigroup>, String> {
    let gs = load(path)?;
    let report = gs.validate();
    if report.is_ok() {
        return Ok(Some(gs));
    }
    writeln!(out, "validate: fail ({} violations)", report.violations.len()).unwrap();
    for v in report.violations.iter().take(5) {
        writeln!(out, "  {v}").unwrap();
    }
    writeln!(out, "result: fail").unwrap();
    Ok(None)
}

fn tabulated(gs: &GammaSemigroup) -> Result<Sigma, String> {
    let sigma = Sigma::new(gs);
    sigma.semigroup().map_err(|e| e.to_string())?;
    Ok(sigma)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn gamma_set(set: &ElementSet) -> String {
    let parts: Vec<String> = set.iter().map(|x| format!("x{x}")).collect();
    format!("{{{}}}", parts.join(", "))
}

fn dispatch(command: Command) -> Result<Outcome, String> {
    match command {
        Command::Validate { file } => {
            let gs = load(&file)?;
            let report = gs.validate();
            let mut out = String::new();
            if report.is_ok() {
                writeln!(out, "ok").unwrap();
            } else {
                for v in &report.violations {
                    writeln!(out, "{v}").unwrap();
                }
                writeln!(out, "violations: {}", report.violations.len()).unwrap();
            }
            Ok(Outcome::verdict(report.is_ok(), out))
        }
        Command::Reduce { file, tokens, trace } => {
            let gs = load(&file)?;
            let word = Word::parse_tokens(tokens.iter().map(String::as_str)).map_err(|e| e.to_string())?;
            word.check(&gs).map_err(|e| e.to_string())?;
            let (normal, steps) = reduce_traced(&gs, &word);
            let mut out = String::new();
            if trace {
                writeln!(out, "{word}").unwrap();
                for step in &steps {
                    writeln!(
                        out,
                        "-> {} [{} at {}]",
                        step.after, step.redex.rule, step.redex.position
                    )
                    .unwrap();
                }
            }
            let element = classify_normal_form(&gs, &normal).map_err(|e| e.to_string())?;
            writeln!(out, "{element}").unwrap();
            Ok(Outcome::ok(out))
        }
        Command::Confluence {
            file,
            exhaustive: _,
            sample,
            seed,
        } => {
            let gs = load(&file)?;
            let mode = match (sample, seed) {
                (Some(k), Some(seed)) => ConfluenceMode::Sample { k, seed },
                _ => ConfluenceMode::Exhaustive,
            };
            let report = check_local_confluence(&gs, mode);
            let mut out = String::new();
            match mode {
                ConfluenceMode::Exhaustive => writeln!(out, "mode: exhaustive").unwrap(),
                ConfluenceMode::Sample { k, seed } => writeln!(out, "mode: sample k={k} seed={seed}").unwrap(),
            }
            if let Some(v) = report.range_violation {
                writeln!(out, "table out of range: {v}").unwrap();
            }
            for f in &report.families {
                writeln!(out, "{}: checked={} failures={}", f.family, f.checked, f.failures).unwrap();
            }
            for w in &report.witnesses {
                writeln!(out, "witness {w}").unwrap();
            }
            writeln!(out, "confluent: {}", yes_no(report.passed())).unwrap();
            Ok(Outcome::verdict(report.passed(), out))
        }
        Command::Sigma {
            file,
            card: _,
            list,
            table,
        } => {
            let gs = load(&file)?;
            let mut out = String::new();
            if list {
                let sigma = Sigma::with_cap(&gs, 0);
                for (i, e) in sigma.elements().enumerate() {
                    writeln!(out, "{i} {e}").unwrap();
                }
            } else if table {
                let sigma = tabulated(&gs)?;
                let t = sigma.semigroup().map_err(|e| e.to_string())?;
                for a in t.elements() {
                    let row: Vec<String> = t.elements().map(|b| t.label(t.mul(a, b))).collect();
                    writeln!(out, "{}: {}", t.label(a), row.join(" ")).unwrap();
                }
            } else {
                writeln!(out, "{}", Sigma::with_cap(&gs, 0).len()).unwrap();
            }
            Ok(Outcome::ok(out))
        }
        Command::Ideal {
            file,
            kind,
            carrier,
            elem,
        } => {
            let gs = load(&file)?;
            let kind = IdealKind::from(kind);
            let out = match carrier {
                CarrierArg::Gamma => {
                    let x = match elem.parse::<SigmaElement>() {
                        Ok(SigmaElement::X(x)) => x,
                        _ => match elem.strip_prefix('s').map(str::parse::<usize>) {
                            Some(Ok(x)) => x,
                            _ => return Err(format!("`{elem}` is not an element of S")),
                        },
                    };
                    let ideal = principal_ideal_gamma(&gs, kind, x).map_err(|e| e.to_string())?;
                    gamma_set(&ideal.members)
                }
                CarrierArg::Sigma => {
                    let e: SigmaElement = elem.parse().map_err(|e: crate::sigma::SigmaError| e.to_string())?;
                    let sigma = tabulated(&gs)?;
                    let ideal = principal_ideal_sigma(&sigma, kind, e).map_err(|e| e.to_string())?;
                    sigma.semigroup().unwrap().format_set(&ideal.members)
                }
            };
            Ok(Outcome::ok(format!("{out}\n")))
        }
        Command::Green {
            file,
            gamma: _,
            sigma,
            derived,
        } => {
            let mut out = String::new();
            let Some(gs) = load_valid(&file, &mut out)? else {
                return Ok(Outcome::verdict(false, out));
            };
            let print = |out: &mut String, sg: &FiniteSemigroup, g: &crate::ideals::GreenStructure| {
                for rel in [Relation::L, Relation::R, Relation::H] {
                    let classes = g.classes(rel);
                    writeln!(out, "{rel}-classes: {}", classes.len()).unwrap();
                    for c in &classes {
                        writeln!(out, "  {}", sg.format_set(c)).unwrap();
                    }
                }
            };
            if let Some(j) = derived {
                let sg = gs.derived_semigroup(j).map_err(|e| e.to_string())?;
                print(&mut out, &sg, &green_structure(&sg));
                return Ok(Outcome::ok(out));
            }
            let sig = tabulated(&gs)?;
            if sigma {
                let t = sig.semigroup().unwrap();
                print(&mut out, t, &green_structure(t));
                return Ok(Outcome::ok(out));
            }
            let gg = gamma_green_structure(&sig).map_err(|e| e.to_string())?;
            let s_labels = gs.derived_semigroup(gs.gamma0()).map_err(|e| e.to_string())?;
            print(&mut out, &s_labels, &gg.structure);
            let t = sig.semigroup().unwrap();
            for c in &gg.correspondence {
                writeln!(
                    out,
                    "x{}: H_gamma={} H_sigma={} equal={}",
                    c.x,
                    gamma_set(&c.gamma_class),
                    t.format_set(&c.sigma_class),
                    yes_no(c.holds(&sig))
                )
                .unwrap();
            }
            if !gg.passed() {
                writeln!(out, "definition mismatch for {} elements", gg.mismatches.len()).unwrap();
            }
            Ok(Outcome::verdict(gg.passed(), out))
        }
        Command::Check {
            file,
            all,
            prop_left,
            prop_right,
            quasi,
            h_corr,
            green_theorem,
            transfer_cs,
            transfer_group,
        } => {
            let flags = [
                prop_left,
                prop_right,
                quasi,
                h_corr,
                green_theorem,
                transfer_cs,
                transfer_group,
            ];
            let selected = if all || flags.iter().all(|f| !f) {
                [true; 7]
            } else {
                flags
            };
            run_checks(&file, selected)
        }
        Command::Gen {
            kind,
            a,
            b,
            seed_table,
            gamma_subset,
            gamma0,
        } => {
            let gs = match kind {
                GenKind::Funcomp => funcomp(a.unwrap_or(1), b.unwrap_or(1)).map_err(|e| e.to_string())?,
                GenKind::Sandwich => {
                    let path = seed_table.expect("required by clap");
                    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
                    let seed = parse_cayley(&text).map_err(|e| format!("{}: {e}", path.display()))?;
                    let subset = parse_list(&gamma_subset.expect("required by clap"))?;
                    sandwich(&seed, &subset).map_err(|e| e.to_string())?
                }
            };
            let gs = gs.with_gamma0(gamma0).map_err(|e| e.to_string())?;
            Ok(Outcome::ok(to_gsg(&gs)))
        }
    }
}

fn parse_list(list: &str) -> Result<Vec<usize>, String> {
    list.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("`{t}` in --gamma-subset is not an index"))
        })
        .collect()
}

fn transfer_lines(out: &mut String, report: &TransferReport) {
    if !report.premise {
        writeln!(out, "premise: not satisfied").unwrap();
        return;
    }
    writeln!(out, "premise: satisfied").unwrap();
    for d in &report.derived {
        let zero = d.zero.map_or("none".to_string(), |z| format!("x{z}"));
        write!(
            out,
            "gamma g{}: completely_simple={} zero={} kernel_size={}",
            d.gamma,
            yes_no(d.completely_simple),
            zero,
            d.kernel_size
        )
        .unwrap();
        if report.mode == TransferMode::Group {
            write!(out, " group={}", yes_no(d.group)).unwrap();
        }
        writeln!(out).unwrap();
    }
    let cs = report.sigma_prime.as_ref().is_some_and(|p| p.completely_simple);
    writeln!(out, "sigma_prime: completely_simple={}", yes_no(cs)).unwrap();
}

fn run_checks(file: &Path, selected: [bool; 7]) -> Result<Outcome, String> {
    let [prop_left, prop_right, quasi, h_corr, green_theorem, transfer_cs, transfer_group] = selected;
    let mut out = String::new();
    let Some(gs) = load_valid(file, &mut out)? else {
        return Ok(Outcome::verdict(false, out));
    };
    writeln!(out, "validate: ok").unwrap();
    let sigma = tabulated(&gs)?;
    let labels = sigma.semigroup().unwrap();
    let mut passed = true;

    for (enabled, kind, name) in [
        (prop_left, IdealKind::Left, "prop-left"),
        (prop_right, IdealKind::Right, "prop-right"),
        (quasi, IdealKind::Quasi, "quasi"),
    ] {
        if !enabled {
            continue;
        }
        let report = check_ideal_correspondence_for(&sigma, &[kind]).map_err(|e| e.to_string())?;
        passed &= report.passed();
        writeln!(
            out,
            "{name}: {} ({} elements)",
            if report.passed() { "pass" } else { "fail" },
            report.checked
        )
        .unwrap();
        for f in &report.failures {
            writeln!(
                out,
                "  x{}: expected {} actual {}",
                f.x,
                labels.format_set(&f.expected),
                labels.format_set(&f.actual)
            )
            .unwrap();
        }
    }

    if h_corr {
        let gg = gamma_green_structure(&sigma).map_err(|e| e.to_string())?;
        passed &= gg.passed();
        writeln!(out, "h-corr: {}", if gg.passed() { "pass" } else { "fail" }).unwrap();
        for &x in &gg.mismatches {
            writeln!(out, "  x{x}: definition mismatch").unwrap();
        }
    }

    if green_theorem {
        let report = check_green_theorem(&sigma).map_err(|e| e.to_string())?;
        passed &= report.passed();
        writeln!(out, "green-theorem:").unwrap();
        for e in &report.entries {
            let group = match e.group {
                Some(g) => yes_no(g && e.sigma_group == Some(true)),
                None => "n/a",
            };
            writeln!(out, "x{}: premise={} group={}", e.x, yes_no(e.premise.is_some()), group).unwrap();
        }
        writeln!(out, "applicable={} failures={}", report.applicable(), report.failures()).unwrap();
    }

    for (enabled, mode, name) in [
        (transfer_cs, TransferMode::CompletelySimple, "transfer-cs"),
        (transfer_group, TransferMode::Group, "transfer-group"),
    ] {
        if !enabled {
            continue;
        }
        let report = check_transfer(&sigma, mode).map_err(|e| e.to_string())?;
        passed &= report.passed();
        writeln!(out, "{name}:").unwrap();
        transfer_lines(&mut out, &report);
    }

    writeln!(out, "result: {}", if passed { "pass" } else { "fail" }).unwrap();
    Ok(Outcome::verdict(passed, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Outcome {
        run_command(std::iter::once("gsg").chain(args.iter().copied()))
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(&["frobnicate"]).code, EXIT_USAGE);
        assert_eq!(run(&[]).code, EXIT_USAGE);
        assert_eq!(run(&["check", "/nonexistent.gsg"]).code, EXIT_USAGE);
        assert_eq!(run(&["confluence", "x.gsg", "--sample", "5"]).code, EXIT_USAGE);
        assert_eq!(run(&["gen", "--kind", "funcomp", "--a", "1"]).code, EXIT_USAGE);
    }

    #[test]
    fn help_exits_zero() {
        let o = run(&["--help"]);
        assert_eq!(o.code, EXIT_OK);
        assert!(o.stdout.contains("confluence"));
    }

    #[test]
    fn gen_funcomp_emits_canonical_text() {
        let o = run(&["gen", "--kind", "funcomp", "--a", "1", "--b", "1"]);
        assert_eq!(o.code, EXIT_OK);
        assert_eq!(o.stdout, "S 1\nGAMMA 1\nGAMMA0 0\nTABLE 0\n0\n");
    }

    #[test]
    fn list_parsing() {
        assert_eq!(parse_list("0, 2,1"), Ok(vec![0, 2, 1]));
        assert!(parse_list("0,a").is_err());
    }
}
