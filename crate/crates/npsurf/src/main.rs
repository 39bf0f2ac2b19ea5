//! Command-line front end: fixture generation, Betti tables, property-(N_p)
//! checks and surface verdicts.
//!
//! Exit codes: 0 on success, 1 when a verdict is a failure of (N_p), 2 on
//! usage or validation errors, so shell pipelines can branch on the result.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use npsurf::koszul::{betti_table, check_np, BettiTable, NpReport};
use npsurf::lattice::DivisorClass;
use npsurf::surface::{
    builtin_lattice, chain_self_intersection, clifford_index_general_curve, mu,
    seshadri_certificate, PolarizedSurface, SeshadriOutcome, SurfaceFlags, SurfaceKind,
};
use npsurf::theorems::{
    combined_k3_verdict, enriques_verdict, mukai_multiple_verdict, theorem_a_verdict,
};
use npsurf::verdict::{Outcome, Verdict};
use npsurf::{fixtures, GradedModuleTable};

#[derive(Parser)]
#[command(
    name = "npsurf",
    version,
    about = "Koszul cohomology, Betti tables and property (N_p) for lattice-polarized surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output mode.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Print the table of dim K_{p,q} of a module file.
    Betti {
        /// Module file (JSON), or - for standard input.
        module: String,
        #[arg(long)]
        pmax: usize,
        #[arg(long, allow_hyphen_values = true)]
        qlo: i64,
        #[arg(long, allow_hyphen_values = true)]
        qhi: i64,
    },
    /// Check property (N_p) on a module file over a finite degree window.
    Np {
        /// Module file (JSON), or - for standard input.
        module: String,
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        /// Upper bound on q; defaults to 3, which is only valid when the
        /// module is known to be 3-regular.
        #[arg(long)]
        qbound: Option<i64>,
    },
    /// Emit a module fixture as JSON on standard output.
    Fixtures {
        #[command(subcommand)]
        fixture: FixtureCommand,
    },
    /// Lattice-level verdicts for a polarized surface.
    Surface {
        #[command(flatten)]
        source: SurfaceSource,
        #[command(subcommand)]
        verb: SurfaceVerb,
    },
}

#[derive(Subcommand)]
enum FixtureCommand {
    /// Rational normal curve of degree d: points {0, ..., d} in Z.
    Rnc {
        d: usize,
        #[arg(long, default_value_t = 3)]
        qmax: i64,
    },
    /// Veronese embedding of P^n by degree-d forms.
    Veronese {
        n: usize,
        d: usize,
        #[arg(long, default_value_t = 3)]
        qmax: i64,
    },
    /// Point configuration read from a file: one point per line,
    /// whitespace- or comma-separated integers.
    Points {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        qmax: i64,
    },
}

#[derive(Args)]
struct SurfaceSource {
    /// Surface description file (JSON with kind, gram, L, flags).
    #[arg(long, value_name = "FILE", conflicts_with = "fixture")]
    file: Option<PathBuf>,
    /// Built-in lattice fixture: U, U+E8(-1) or <2n>.
    #[arg(long)]
    fixture: Option<String>,
    /// Surface kind for a built-in fixture: k3, abelian or enriques.
    #[arg(long, requires = "fixture")]
    kind: Option<String>,
    /// Polarization coordinates for a built-in fixture, e.g. -L 5,15.
    #[arg(
        short = 'L',
        value_name = "c0,c1,...",
        requires = "fixture",
        allow_hyphen_values = true
    )]
    polarization: Option<String>,
    /// Built-in fixtures assert ample + globally generated; these negate.
    #[arg(long)]
    no_ample: bool,
    #[arg(long)]
    no_globally_generated: bool,
}

#[derive(Subcommand)]
enum SurfaceVerb {
    /// Decide property (N_p) by the applicable theorem.
    Verdict {
        #[arg(long)]
        p: u32,
        /// a = degree-5 threshold for K3/abelian, k3 = sharp K3 thresholds
        /// with the genus-two resolution, enriques = the Enriques criterion.
        /// Defaults by surface kind.
        #[arg(long, value_enum)]
        theorem: Option<TheoremChoice>,
    },
    /// Property (N_p) for the multiple m*L on a K3 surface.
    Mukai {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        p: u32,
    },
    /// List primitive isotropic classes up to a degree bound.
    Isotropic {
        #[arg(long)]
        maxdeg: i64,
    },
    /// Clifford index of a general curve in |L| on an Enriques surface.
    Clifford,
    /// Certify that the Seshadri constant at a very general point exceeds p+2.
    Seshadri {
        #[arg(long)]
        p: u32,
    },
    /// -(F^2) for a chain of (-2)-curves with the given multiplicities.
    Chain {
        #[arg(required = true, allow_hyphen_values = true)]
        multiplicities: Vec<i64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoremChoice {
    A,
    K3,
    Enriques,
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run() -> Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Betti {
            module,
            pmax,
            qlo,
            qhi,
        } => {
            let table = load_module(&module)?;
            let betti = betti_table(&table, pmax, qlo, qhi)?;
            print!("{}", render_betti(&betti, cli.format));
            Ok(ExitCode::SUCCESS)
        }
        Command::Np { module, p, qbound } => {
            let table = load_module(&module)?;
            let defaulted = qbound.is_none();
            let q_bound = qbound.unwrap_or(3);
            let report = check_np(&table, p, q_bound)?;
            let mut notes = Vec::new();
            if defaulted {
                notes.push(
                    "q_bound defaulted to 3 (valid when the module is 3-regular)".to_string(),
                );
            }
            notes.push(format!(
                "nothing is claimed outside the computed window 2 <= q <= {q_bound}"
            ));
            print!("{}", render_np(&report, &notes, cli.format)?);
            Ok(if report.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Fixtures { fixture } => {
            let table = match fixture {
                FixtureCommand::Rnc { d, qmax } => fixtures::rational_normal_curve(d, qmax)?,
                FixtureCommand::Veronese { n, d, qmax } => fixtures::veronese(n, d, qmax)?,
                FixtureCommand::Points { file, qmax } => {
                    let text = fs::read_to_string(&file)
                        .with_context(|| format!("cannot read {}", file.display()))?;
                    let points = parse_points(&text)?;
                    fixtures::point_configuration(&points, qmax)?
                }
            };
            println!("{}", table.to_json());
            Ok(ExitCode::SUCCESS)
        }
        Command::Surface { source, verb } => run_surface(source, verb, cli.format),
    }
}

fn run_surface(source: SurfaceSource, verb: SurfaceVerb, format: Format) -> Result<ExitCode> {
    match verb {
        SurfaceVerb::Chain { multiplicities } => {
            let value = chain_self_intersection(&multiplicities)?;
            match format {
                Format::Json => {
                    let out = serde_json::json!({
                        "multiplicities": multiplicities,
                        "negative_self_intersection": value,
                    });
                    println!("{out}");
                }
                Format::Text => println!("-(F^2) = {value}"),
                Format::Csv => bail!("csv output is not available for chain"),
            }
            Ok(ExitCode::SUCCESS)
        }
        SurfaceVerb::Verdict { p, theorem } => {
            let surface = load_surface(&source)?;
            let choice = theorem.unwrap_or(match surface.kind() {
                SurfaceKind::K3 => TheoremChoice::K3,
                SurfaceKind::Abelian => TheoremChoice::A,
                SurfaceKind::Enriques => TheoremChoice::Enriques,
            });
            let verdict = match choice {
                TheoremChoice::A => theorem_a_verdict(&surface, p)?,
                TheoremChoice::K3 => combined_k3_verdict(&surface, p)?,
                TheoremChoice::Enriques => enriques_verdict(&surface, p)?,
            };
            print_verdict(&verdict, format)?;
            Ok(exit_for(&verdict))
        }
        SurfaceVerb::Mukai { m, p } => {
            let surface = load_surface(&source)?;
            let verdict = mukai_multiple_verdict(&surface, m, p)?;
            print_verdict(&verdict, format)?;
            Ok(exit_for(&verdict))
        }
        SurfaceVerb::Isotropic { maxdeg } => {
            let surface = load_surface(&source)?;
            if maxdeg < 1 {
                bail!("--maxdeg must be at least 1");
            }
            let mut rows: Vec<(i64, DivisorClass)> = Vec::new();
            for degree in 1..=maxdeg {
                for class in surface.primitive_isotropic(degree)? {
                    rows.push((degree, class));
                }
            }
            match format {
                Format::Text => {
                    if rows.is_empty() {
                        println!("no primitive isotropic classes of degree <= {maxdeg}");
                    }
                    for (degree, class) in &rows {
                        println!("degree {degree}  coords {:?}", class.coords);
                    }
                }
                Format::Json => {
                    let items: Vec<_> = rows
                        .iter()
                        .map(|(degree, class)| {
                            serde_json::json!({
                                "degree": degree,
                                "self_int": 0,
                                "coords": class.coords,
                            })
                        })
                        .collect();
                    println!("{}", serde_json::Value::Array(items));
                }
                Format::Csv => {
                    println!("degree,self_int,coords");
                    for (degree, class) in &rows {
                        let coords = class
                            .coords
                            .iter()
                            .map(i64::to_string)
                            .collect::<Vec<_>>()
                            .join(" ");
                        println!("{degree},0,{coords}");
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        SurfaceVerb::Clifford => {
            let surface = load_surface(&source)?;
            let value = clifford_index_general_curve(&surface)?;
            match format {
                Format::Json => {
                    let phi = surface.phi()?;
                    let mu_value = mu(&surface)?;
                    let out = serde_json::json!({
                        "clifford_index": value,
                        "phi": phi,
                        "mu": mu_value,
                        "l2_quarter": surface.l2() / 4,
                    });
                    println!("{out}");
                }
                Format::Text => println!("clifford index of a general curve in |L|: {value}"),
                Format::Csv => bail!("csv output is not available for clifford"),
            }
            Ok(ExitCode::SUCCESS)
        }
        SurfaceVerb::Seshadri { p } => {
            let surface = load_surface(&source)?;
            let outcome = seshadri_certificate(&surface, p)?;
            match format {
                Format::Json => {
                    let out = match &outcome {
                        SeshadriOutcome::Certified { exceeds } => serde_json::json!({
                            "certified": true,
                            "epsilon_exceeds": exceeds,
                        }),
                        SeshadriOutcome::NoCertificate {
                            failed_hypothesis,
                            witness,
                        } => serde_json::json!({
                            "certified": false,
                            "failed_hypothesis": failed_hypothesis,
                            "witness": witness.as_ref().map(|w| w.coords.clone()),
                        }),
                    };
                    println!("{out}");
                }
                Format::Text => match &outcome {
                    SeshadriOutcome::Certified { exceeds } => {
                        println!("certified: epsilon(L; x) > {exceeds} at a very general point");
                    }
                    SeshadriOutcome::NoCertificate {
                        failed_hypothesis,
                        witness,
                    } => {
                        println!("no certificate: {failed_hypothesis} failed");
                        if let Some(w) = witness {
                            println!("witness: coords {:?}", w.coords);
                        }
                    }
                },
                Format::Csv => bail!("csv output is not available for seshadri"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn exit_for(verdict: &Verdict) -> ExitCode {
    if verdict.outcome == Outcome::FailsNp {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn load_module(path: &str) -> Result<GradedModuleTable> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .context("cannot read module from standard input")?;
        buf
    } else {
        fs::read_to_string(path).with_context(|| format!("cannot read {path}"))?
    };
    Ok(GradedModuleTable::from_json(&text)?)
}

fn load_surface(source: &SurfaceSource) -> Result<PolarizedSurface> {
    if let Some(file) = &source.file {
        let text = fs::read_to_string(file)
            .with_context(|| format!("cannot read {}", file.display()))?;
        return Ok(PolarizedSurface::from_json(&text)?);
    }
    let Some(fixture) = &source.fixture else {
        bail!("provide a surface via --file or --fixture");
    };
    let lattice = builtin_lattice(fixture)?;
    let kind = SurfaceKind::parse(
        source
            .kind
            .as_deref()
            .context("--fixture needs --kind k3|abelian|enriques")?,
    )?;
    let coords_text = source
        .polarization
        .as_deref()
        .context("--fixture needs a polarization, e.g. -L 5,15")?;
    let coords: Vec<i64> = coords_text
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<i64>()
                .with_context(|| format!("bad coordinate `{c}` in -L"))
        })
        .collect::<Result<_>>()?;
    let flags = SurfaceFlags {
        ample: !source.no_ample,
        globally_generated: !source.no_globally_generated,
    };
    Ok(PolarizedSurface::new(
        kind,
        lattice,
        DivisorClass::new(coords),
        flags,
    )?)
}

fn parse_points(text: &str) -> Result<Vec<Vec<i64>>> {
    let mut points = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let coords: Vec<i64> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<i64>()
                    .with_context(|| format!("line {}: bad integer `{s}`", lineno + 1))
            })
            .collect::<Result<_>>()?;
        points.push(coords);
    }
    Ok(points)
}

fn render_betti(betti: &BettiTable, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", betti.to_json()),
        Format::Csv => {
            let mut out = String::from("p,q,dim\n");
            for ((p, q), dim) in betti.cells() {
                out.push_str(&format!("{p},{q},{dim}\n"));
            }
            out
        }
        Format::Text => {
            let cell = |p: usize, q: i64| -> String {
                match betti.dim(p, q) {
                    Some(0) => "\u{b7}".to_string(),
                    Some(d) => d.to_string(),
                    None => String::new(),
                }
            };
            let mut widths = Vec::with_capacity(betti.p_max + 1);
            for p in 0..=betti.p_max {
                let mut w = format!("p={p}").len();
                for q in betti.q_lo..=betti.q_hi {
                    w = w.max(cell(p, q).chars().count());
                }
                widths.push(w);
            }
            let label_width = (betti.q_lo..=betti.q_hi)
                .map(|q| format!("q={q}").len())
                .max()
                .unwrap_or(3);
            let mut out = String::new();
            out.push_str(&" ".repeat(label_width));
            for p in 0..=betti.p_max {
                out.push_str(&format!("  {:>width$}", format!("p={p}"), width = widths[p]));
            }
            out.push('\n');
            for q in betti.q_lo..=betti.q_hi {
                out.push_str(&format!("{:>label_width$}", format!("q={q}")));
                for p in 0..=betti.p_max {
                    out.push_str(&format!("  {:>width$}", cell(p, q), width = widths[p]));
                }
                out.push('\n');
            }
            out
        }
    }
}

#[derive(Serialize)]
struct NpOutput<'a> {
    #[serde(flatten)]
    report: &'a NpReport,
    notes: &'a [String],
}

fn render_np(report: &NpReport, notes: &[String], format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let out = NpOutput { report, notes };
            Ok(format!("{}\n", serde_json::to_string(&out)?))
        }
        Format::Text => {
            let mut out = if report.holds {
                format!(
                    "property N_{} holds (K_{{i,q}} = 0 for i <= {}, 2 <= q <= {})\n",
                    report.p, report.p, report.q_bound
                )
            } else {
                let (i, q) = report.witness.expect("failing report carries a witness");
                format!("property N_{} fails at K_{{{i},{q}}}\n", report.p)
            };
            for note in notes {
                out.push_str(&format!("note: {note}\n"));
            }
            Ok(out)
        }
        Format::Csv => bail!("csv output is not available for np"),
    }
}

fn print_verdict(verdict: &Verdict, format: Format) -> Result<()> {
    match format {
        Format::Json => println!("{}", verdict.to_json()),
        Format::Text => {
            let outcome = match verdict.outcome {
                Outcome::HoldsNp => format!("holds: property N_{}", verdict.p),
                Outcome::FailsNp => format!("fails: property N_{}", verdict.p),
                Outcome::HypothesisNotMet => "hypothesis not met".to_string(),
                Outcome::Inconclusive => "inconclusive".to_string(),
            };
            println!("{outcome}");
            for h in &verdict.hypotheses {
                let mark = if h.satisfied { "satisfied" } else { "failed" };
                let values = h
                    .values
                    .iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect::<Vec<_>>()
                    .join(", ");
                println!("  hypothesis [{mark}] {} ({values})", h.name);
            }
            for w in &verdict.witnesses {
                println!(
                    "  witness coords {:?}  (L.F)={}  (F^2)={}",
                    w.coords, w.degree, w.self_int
                );
            }
            if let Some(conjecture) = &verdict.conditional_on {
                println!("  conditional on: {conjecture}");
            }
            for note in &verdict.notes {
                println!("  note: {note}");
            }
        }
        Format::Csv => bail!("csv output is not available for verdicts"),
    }
    Ok(())
}
