//! Command-line front end: search base objects, lift them, verify the lifted
//! structures, and emit certificates.
//!
//! Converter commands (`lift-coloring`, `lift-er`) print their artifact to
//! stdout or `--out`, so they compose through pipes. Search and verify
//! commands always print a certificate to stdout; search artifacts go to
//! `--out`. Certificates pin their input by content digest, never by path,
//! so a piped flow and a file-based flow emit identical bytes. Exit codes:
//! 0 verified, 1 check failed (certificate still printed), 2 usage or input
//! errors.

use clap::{Parser, Subcommand};
use std::fmt::Display;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;
use stepup_core::combin::binomial;
use stepup_core::{
    alpha_s, build_x, check_property, claim_check, find_clique, find_clique_in, find_mono_clique, lift_coloring,
    max_red_in_p_sets, realize_delta_pattern, search_base_coloring, search_base_hypergraph, sha256_hex,
    verify_base_phi, AlphaRequest, Certificate, ClaimId, ClaimVerdict, Color, ColorTable, Construction, EdgeSet,
    Hypergraph, LiftDescriptor, LiftRule, PhiViolation, Scope, SearchBudget, StepProperty, TwoColoring, XKind,
};

#[derive(Parser)]
#[command(name = "stepup", version, about = "Stepping-up lifts of colorings and hypergraphs, with verified certificates")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Search for a 3-uniform base coloring on [N]: at most 2 red triples
    /// per 4-set, no all-blue n-subset.
    SearchPhi {
        /// Ground set size of the base (the lift then lives on 2^N vertices).
        n: u64,
        /// Forbidden blue clique size.
        blue_bound: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Write the coloring here on success.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Write the search log here.
        #[arg(long, value_name = "FILE")]
        log: Option<PathBuf>,
        #[arg(long)]
        timings: bool,
    },
    /// Search for a (k-1)-uniform base hypergraph on [N] with no complete
    /// (k+1)-set and small k-independence.
    SearchBase {
        n: u64,
        /// Target uniformity of the eventual lift.
        k: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        log: Option<PathBuf>,
        #[arg(long)]
        timings: bool,
    },
    /// Materialize the 4-uniform lift of a base 3-coloring as an explicit
    /// table (guarded; small grounds only).
    LiftColoring {
        /// Base coloring file, or `-` for stdin.
        #[arg(default_value = "-")]
        input: String,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Emit a lift descriptor binding target uniformity k to a base
    /// hypergraph file.
    LiftEr {
        k: usize,
        /// Base hypergraph file; the descriptor references it by this path,
        /// so stdin is not accepted here.
        input: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Check a property and print a certificate.
    #[command(subcommand)]
    Verify(Check),
    /// Assemble the clique witness X from a tuple with rich local extrema
    /// and confirm its k-subsets are members under any base.
    BuildX {
        /// Tuple file (whitespace-separated vertices), or `-` for stdin.
        #[arg(default_value = "-")]
        input: String,
        /// `k5:T`, `k6`, or `general:K`.
        #[arg(long, value_name = "KIND")]
        kind: String,
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Subcommand)]
enum Check {
    /// Exhaustive base-coloring validity: at most 2 red triples per 4-set
    /// and no all-blue n-subset.
    BasePhi {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long = "blue-bound", value_name = "SIZE")]
        blue_bound: usize,
        #[arg(long)]
        timings: bool,
    },
    /// Maximum red k-subsets per p-set stays within a bound.
    RedDensity {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = 3)]
        bound: u64,
        /// Treat the input as a 3-uniform base and scan its lazy lift on
        /// 2^N vertices instead of the table itself.
        #[arg(long = "lift-base")]
        lift_base: bool,
        /// full | window:LO:HI | sample:SEED:COUNT
        #[arg(long, default_value = "full")]
        scope: String,
        #[arg(long)]
        timings: bool,
    },
    /// No all-blue clique larger than the bound (bounded existence search
    /// for a clique one past it).
    BlueClique {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long, value_name = "SIZE")]
        max: usize,
        #[arg(long = "lift-base")]
        lift_base: bool,
        #[arg(long)]
        timings: bool,
    },
    /// No complete t-subset in the hypergraph (explicit file or lift
    /// descriptor).
    CliqueFree {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long)]
        t: usize,
        /// full | window:LO:HI
        #[arg(long, default_value = "full")]
        scope: String,
        #[arg(long)]
        timings: bool,
    },
    /// s-independence number, optionally against a bound.
    Alpha {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long)]
        s: usize,
        #[arg(long, value_name = "SIZE")]
        max: Option<usize>,
        /// Seeded greedy passes instead of exact branch-and-bound; the
        /// result is a lower bound, not a proof.
        #[arg(long)]
        heuristic: bool,
        /// Run the exact search even above the usual ground-size cutoff.
        #[arg(long = "force-exact")]
        force_exact: bool,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 32)]
        restarts: u32,
        #[arg(long)]
        timings: bool,
    },
    /// One lemma claim over every realizable delta-pattern class of an
    /// arity.
    Claims {
        /// mono | mono2 | four
        #[arg(long)]
        which: String,
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        timings: bool,
    },
    /// Structural delta properties over a vertex window.
    Properties {
        /// Vertices are drawn from [0, 2^N).
        #[arg(long = "N")]
        n: u32,
        /// Comma-separated list from A, B, C, D, G.
        #[arg(long, value_name = "LIST")]
        which: String,
        /// full | window:LO:HI
        #[arg(long, default_value = "full")]
        scope: String,
        #[arg(long)]
        timings: bool,
    },
}

#[derive(clap::Args)]
struct BudgetArgs {
    /// Total local-search steps across restarts.
    #[arg(long, default_value_t = 200_000)]
    steps: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

impl BudgetArgs {
    fn build(&self) -> SearchBudget {
        SearchBudget::new(self.steps, self.seed)
    }
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("STEPUP_THREADS") {
        match threads.parse::<usize>() {
            Ok(n) if n >= 1 => {
                // Ignore failure: the pool can only be set once.
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => return usage(format!("STEPUP_THREADS must be a positive integer, got `{threads}`")),
        }
    }
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => usage(msg),
    }
}

fn usage(msg: impl Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::SearchPhi { n, blue_bound, budget, out, log, timings } => {
            search_phi(n, blue_bound, budget.build(), out, log, timings)
        }
        Cmd::SearchBase { n, k, budget, out, log, timings } => search_base(n, k, budget.build(), out, log, timings),
        Cmd::LiftColoring { input, out } => lift_coloring_cmd(&input, out),
        Cmd::LiftEr { k, input, out } => lift_er_cmd(k, &input, out),
        Cmd::Verify(check) => verify(check),
        Cmd::BuildX { input, kind, timings } => build_x_cmd(&input, &kind, timings),
    }
}

/// An input argument: file contents plus enough context to resolve relative
/// paths inside it and to pin its bytes in a certificate.
struct Input {
    text: String,
    /// Directory relative paths inside the input resolve against.
    dir: PathBuf,
    name: String,
    digest: String,
}

fn read_input(arg: &str) -> Result<Input, String> {
    let (text, dir, name) = if arg == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("reading stdin: {e}"))?;
        (buf, PathBuf::from("."), "stdin".to_string())
    } else {
        let text = std::fs::read_to_string(arg).map_err(|e| format!("{arg}: {e}"))?;
        let dir = Path::new(arg)
            .parent()
            .filter(|p| !p.as_os_str().is_empty())
            .map_or_else(|| PathBuf::from("."), Path::to_path_buf);
        (text, dir, arg.to_string())
    };
    let digest = sha256_hex(text.as_bytes());
    Ok(Input { text, dir, name, digest })
}

fn write_artifact(out: Option<&PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn finish(mut cert: Certificate, timings: bool, t0: Instant) -> Result<ExitCode, String> {
    if timings {
        cert.wall_ms = Some(t0.elapsed().as_millis() as u64);
    }
    print!("{}", cert.to_json());
    Ok(if cert.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn table_construction(input: &Input, table: &ColorTable) -> Construction {
    Construction {
        kind: "coloring-table".into(),
        uniformity: Some(table.uniformity() as u64),
        ground: Some(table.ground_size()),
        base_path: None,
        base_sha256: Some(input.digest.clone()),
        params: None,
    }
}

fn search_phi(
    ground: u64,
    blue_bound: usize,
    budget: SearchBudget,
    out: Option<PathBuf>,
    log: Option<PathBuf>,
    timings: bool,
) -> Result<ExitCode, String> {
    let t0 = Instant::now();
    let found = search_base_coloring(ground, blue_bound, budget).map_err(|e| e.to_string())?;
    if let Some(path) = log {
        std::fs::write(&path, stepup_core::log_text(&found.log)).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    let pass = found.phi.is_some();
    let mut cert = Certificate::new(
        "search.phi",
        format!("<= 2 red triples per 4-set, no blue {blue_bound}-clique, re-verified exhaustively"),
        Scope::Full,
        pass,
    );
    cert.construction = Some(Construction {
        kind: "local-search".into(),
        uniformity: Some(3),
        ground: Some(ground),
        base_path: None,
        base_sha256: None,
        params: Some(serde_json::json!({ "seed": budget.seed, "steps": budget.steps })),
    });
    match &found.phi {
        Some(phi) => {
            write_artifact(out.as_ref(), &phi.write())?;
            cert.witness = Some(serde_json::json!({
                "red_subsets": phi.red_count(),
                "artifact_sha256": sha256_hex(phi.write().as_bytes()),
            }));
        }
        None => {
            cert.witness = Some(serde_json::json!({
                "best_score": found.best_score,
                "space_exhausted": found.exhausted_space,
            }));
        }
    }
    finish(cert, timings, t0)
}

fn search_base(
    ground: u64,
    k: usize,
    budget: SearchBudget,
    out: Option<PathBuf>,
    log: Option<PathBuf>,
    timings: bool,
) -> Result<ExitCode, String> {
    let t0 = Instant::now();
    let found = search_base_hypergraph(ground, k, budget).map_err(|e| e.to_string())?;
    if let Some(path) = log {
        std::fs::write(&path, stepup_core::log_text(&found.log)).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    write_artifact(out.as_ref(), &found.graph.write())?;
    let mut cert = Certificate::new(
        "search.base",
        format!("no complete {}-subset in the base, {k}-independence minimized within budget", k + 1),
        Scope::Full,
        true,
    );
    cert.construction = Some(Construction {
        kind: "local-search".into(),
        uniformity: Some(k as u64 - 1),
        ground: Some(ground),
        base_path: None,
        base_sha256: None,
        params: Some(serde_json::json!({ "seed": budget.seed, "steps": budget.steps })),
    });
    cert.witness = Some(serde_json::json!({
        "alpha": found.alpha.value,
        "alpha_witness": found.alpha.witness,
        "edges": found.graph.edge_count(),
        "artifact_sha256": sha256_hex(found.graph.write().as_bytes()),
    }));
    finish(cert, timings, t0)
}

fn lift_coloring_cmd(input: &str, out: Option<PathBuf>) -> Result<ExitCode, String> {
    let input = read_input(input)?;
    let table = ColorTable::parse(&input.text).map_err(|e| format!("{}: {e}", input.name))?;
    let lifted = lift_coloring(table).map_err(|e| e.to_string())?;
    let explicit = TwoColoring::Lifted(lifted).to_explicit().map_err(|e| e.to_string())?;
    write_artifact(out.as_ref(), &explicit.write())?;
    Ok(ExitCode::SUCCESS)
}

fn lift_er_cmd(k: usize, input: &Path, out: Option<PathBuf>) -> Result<ExitCode, String> {
    let text = std::fs::read_to_string(input).map_err(|e| format!("{}: {e}", input.display()))?;
    let base = EdgeSet::parse(&text).map_err(|e| format!("{}: {e}", input.display()))?;
    let n = base.ground_size();
    // Validate the rule now so a bad descriptor never reaches a verifier.
    LiftRule::new(k, base).map_err(|e| e.to_string())?;
    let descriptor = LiftDescriptor {
        k,
        n,
        base_path: input.display().to_string(),
    };
    write_artifact(out.as_ref(), &descriptor.write())?;
    Ok(ExitCode::SUCCESS)
}

/// Loads a hypergraph argument: an explicit edge-set file or a lift
/// descriptor whose base path resolves relative to the descriptor location
/// (the working directory when the descriptor arrives on stdin).
fn read_hypergraph(arg: &str) -> Result<(Hypergraph, Input), String> {
    let input = read_input(arg)?;
    let first = input
        .text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    if first.starts_with("lift") {
        let d = LiftDescriptor::parse(&input.text).map_err(|e| format!("{}: {e}", input.name))?;
        let base_path = input.dir.join(&d.base_path);
        let base_text = std::fs::read_to_string(&base_path).map_err(|e| format!("{}: {e}", base_path.display()))?;
        let base = EdgeSet::parse(&base_text).map_err(|e| format!("{}: {e}", base_path.display()))?;
        if base.ground_size() != d.n {
            return Err(format!(
                "{}: descriptor says ground {} but {} has ground {}",
                input.name,
                d.n,
                base_path.display(),
                base.ground_size()
            ));
        }
        let rule = LiftRule::new(d.k, base).map_err(|e| e.to_string())?;
        Ok((Hypergraph::Lifted(rule), input))
    } else {
        let edges = EdgeSet::parse(&input.text).map_err(|e| format!("{}: {e}", input.name))?;
        Ok((Hypergraph::Explicit(edges), input))
    }
}

fn hypergraph_construction(h: &Hypergraph, input: &Input) -> Construction {
    Construction {
        kind: match h {
            Hypergraph::Explicit(_) => "edge-set".into(),
            Hypergraph::Lifted(_) => "lifted-hypergraph".into(),
        },
        uniformity: Some(h.uniformity() as u64),
        ground: Some(h.ground_size()),
        base_path: None,
        base_sha256: Some(input.digest.clone()),
        params: None,
    }
}

/// Builds the coloring a verify command operates on: the table itself, or
/// its lazy lift when `--lift-base` is set.
fn load_coloring(arg: &str, lift_base: bool) -> Result<(TwoColoring, Construction), String> {
    let input = read_input(arg)?;
    let table = ColorTable::parse(&input.text).map_err(|e| format!("{}: {e}", input.name))?;
    if lift_base {
        let lifted = lift_coloring(table).map_err(|e| e.to_string())?;
        let chi = TwoColoring::Lifted(lifted);
        let construction = Construction {
            kind: "lifted-coloring".into(),
            uniformity: Some(4),
            ground: Some(chi.ground_size()),
            base_path: None,
            base_sha256: Some(input.digest.clone()),
            params: None,
        };
        Ok((chi, construction))
    } else {
        let construction = table_construction(&input, &table);
        Ok((TwoColoring::Explicit(table), construction))
    }
}

fn verify(check: Check) -> Result<ExitCode, String> {
    match check {
        Check::BasePhi { input, blue_bound, timings } => {
            let t0 = Instant::now();
            let input = read_input(&input)?;
            let table = ColorTable::parse(&input.text).map_err(|e| format!("{}: {e}", input.name))?;
            let construction = table_construction(&input, &table);
            let report = verify_base_phi(&table, blue_bound).map_err(|e| e.to_string())?;
            let mut cert = Certificate::new(
                "verify.base-phi",
                format!("<= 2 red triples per 4-set, no blue {blue_bound}-clique"),
                Scope::Full,
                report.passed(),
            );
            cert.construction = Some(construction);
            cert.witness = report.violation.map(|v| match v {
                PhiViolation::RedHeavyFourSet { vertices, red_triples } => {
                    serde_json::json!({ "red_heavy_four_set": vertices, "red_triples": red_triples })
                }
                PhiViolation::BlueClique { vertices } => serde_json::json!({ "blue_clique": vertices }),
            });
            finish(cert, timings, t0)
        }
        Check::RedDensity { input, p, bound, lift_base, scope, timings } => {
            let t0 = Instant::now();
            let scope = Scope::parse(&scope)?;
            let (chi, construction) = load_coloring(&input, lift_base)?;
            let k = chi.uniformity();
            let scan = max_red_in_p_sets(&chi, p, scope).map_err(|e| e.to_string())?;
            let mut cert = Certificate::new(
                "verify.red-density",
                format!("red {k}-subsets per {p}-set <= {bound}"),
                scope,
                scan.max_red <= bound,
            );
            cert.construction = Some(construction);
            cert.witness = Some(serde_json::json!({
                "max_red": scan.max_red,
                "subset": scan.witness,
                "scanned": scan.scanned,
            }));
            finish(cert, timings, t0)
        }
        Check::BlueClique { input, max, lift_base, timings } => {
            let t0 = Instant::now();
            let (chi, construction) = load_coloring(&input, lift_base)?;
            let found = find_mono_clique(&chi, Color::Blue, max + 1).map_err(|e| e.to_string())?;
            let mut cert = Certificate::new(
                "verify.blue-clique",
                format!("no all-blue clique on {} vertices", max + 1),
                Scope::Full,
                found.is_none(),
            );
            cert.construction = Some(construction);
            cert.witness = found.map(|c| serde_json::json!({ "clique": c }));
            finish(cert, timings, t0)
        }
        Check::CliqueFree { input, t, scope, timings } => {
            let t0 = Instant::now();
            let scope = Scope::parse(&scope)?;
            let (h, input) = read_hypergraph(&input)?;
            let found = match scope {
                Scope::Full => find_clique(&h, t),
                Scope::Window { lo, hi } => {
                    if hi > h.ground_size() {
                        return Err(format!("window end {hi} exceeds ground size {}", h.ground_size()));
                    }
                    find_clique_in(&h, t, lo, hi)
                }
                Scope::Sample { .. } => return Err("clique search scopes: full | window:LO:HI".into()),
            };
            let mut cert = Certificate::new("verify.clique-free", format!("no complete {t}-subset"), scope, found.is_none());
            cert.construction = Some(hypergraph_construction(&h, &input));
            cert.witness = found.map(|c| serde_json::json!({ "clique": c }));
            finish(cert, timings, t0)
        }
        Check::Alpha { input, s, max, heuristic, force_exact, seed, restarts, timings } => {
            let t0 = Instant::now();
            if heuristic && force_exact {
                return Err("--heuristic and --force-exact are mutually exclusive".into());
            }
            let (h, input) = read_hypergraph(&input)?;
            let mode = if heuristic {
                AlphaRequest::Heuristic { seed, restarts }
            } else if force_exact {
                AlphaRequest::ExactForced
            } else {
                AlphaRequest::Exact
            };
            let result = alpha_s(&h, s, mode).map_err(|e| e.to_string())?;
            let pass = max.is_none_or(|m| result.value <= m);
            let property = match max {
                Some(m) => format!("alpha_{s} <= {m}"),
                None => format!("alpha_{s} reported"),
            };
            let scope = if heuristic { Scope::Sample { seed, count: restarts as u64 } } else { Scope::Full };
            let mut cert = Certificate::new("verify.alpha", property, scope, pass);
            cert.construction = Some(hypergraph_construction(&h, &input));
            cert.witness = Some(serde_json::json!({
                "alpha": result.value,
                "set": result.witness,
                "exact": result.exact,
            }));
            finish(cert, timings, t0)
        }
        Check::Claims { which, arity, timings } => {
            let t0 = Instant::now();
            let claim = ClaimId::parse(&which).ok_or_else(|| format!("unknown claim `{which}` (mono | mono2 | four)"))?;
            let mut applicable = 0u64;
            let mut skipped = 0u64;
            let mut violation: Option<serde_json::Value> = None;
            stepup_core::for_each_realizable_pattern(arity.saturating_sub(1), |p| {
                if violation.is_some() {
                    return;
                }
                let tuple = realize_delta_pattern(p).expect("enumerated patterns realize");
                match claim_check(claim, &tuple) {
                    Ok(ClaimVerdict::Holds) => applicable += 1,
                    Ok(ClaimVerdict::NotApplicable) => skipped += 1,
                    Ok(ClaimVerdict::Violated(cx)) => {
                        violation = Some(serde_json::json!({ "vertices": cx.vertices, "note": cx.note }));
                    }
                    Err(e) => violation = Some(serde_json::json!({ "error": e.to_string() })),
                }
            });
            if applicable == 0 && skipped == 0 {
                return Err(format!("arity {arity} yields no realizable patterns"));
            }
            let mut cert = Certificate::new(
                "verify.claims",
                format!("claim {} over all arity-{arity} delta-pattern classes", claim.name()),
                Scope::Full,
                violation.is_none(),
            );
            cert.witness = Some(match violation {
                Some(v) => v,
                None => serde_json::json!({ "applicable": applicable, "not_applicable": skipped }),
            });
            finish(cert, timings, t0)
        }
        Check::Properties { n, which, scope, timings } => {
            let t0 = Instant::now();
            let props = parse_properties(&which)?;
            let scope = Scope::parse(&scope)?;
            if n > 16 {
                return Err(format!("ground 2^{n} is out of range (max 2^16)"));
            }
            let ground = 1u64 << n;
            let (lo, hi) = match scope {
                Scope::Full => (0, ground),
                Scope::Window { lo, hi } => {
                    if hi > ground {
                        return Err(format!("window end {hi} exceeds ground size {ground}"));
                    }
                    (lo, hi)
                }
                Scope::Sample { .. } => return Err("property scopes: full | window:LO:HI".into()),
            };
            let width = hi - lo;
            let mut counterexample: Option<serde_json::Value> = None;
            let mut scanned = serde_json::Map::new();
            for (label, property) in &props {
                let arity = property.min_arity();
                let subsets = binomial(width, arity as u64);
                if subsets > (1 << 28) {
                    return Err(format!(
                        "property {label} over a width-{width} window means {subsets} {arity}-subsets; \
                         split the work with --scope window:LO:HI"
                    ));
                }
                let mut count = 0u64;
                let mut shifted = vec![0u64; arity];
                stepup_core::combin::for_each_ksubset(width, arity, |s| {
                    if counterexample.is_some() {
                        return;
                    }
                    for (b, x) in shifted.iter_mut().zip(s) {
                        *b = x + lo;
                    }
                    count += 1;
                    match check_property(&shifted, *property) {
                        Ok(v) if v.holds() => {}
                        Ok(_) => {
                            counterexample = Some(serde_json::json!({
                                "property": label.to_string(),
                                "vertices": shifted.clone(),
                            }));
                        }
                        Err(e) => counterexample = Some(serde_json::json!({ "error": e.to_string() })),
                    }
                });
                scanned.insert(label.to_string(), serde_json::json!(count));
                if counterexample.is_some() {
                    break;
                }
            }
            let labels: Vec<String> = props.iter().map(|(l, _)| l.to_string()).collect();
            let mut cert = Certificate::new(
                "verify.properties",
                format!("delta properties {} on their minimal arities", labels.join(",")),
                scope,
                counterexample.is_none(),
            );
            cert.witness = Some(match counterexample {
                Some(cx) => cx,
                None => serde_json::json!({ "scanned": scanned }),
            });
            finish(cert, timings, t0)
        }
    }
}

fn parse_properties(list: &str) -> Result<Vec<(char, StepProperty)>, String> {
    let mut props = Vec::new();
    for part in list.split(',') {
        let part = part.trim();
        let property = match part.to_ascii_uppercase().as_str() {
            "A" => StepProperty::A,
            "B" => StepProperty::B,
            "C" => StepProperty::C,
            "D" => StepProperty::D,
            "G" => StepProperty::G,
            _ => return Err(format!("unknown property `{part}` (A | B | C | D | G)")),
        };
        let label = part.to_ascii_uppercase().chars().next().unwrap();
        if !props.iter().any(|(l, _)| *l == label) {
            props.push((label, property));
        }
    }
    if props.is_empty() {
        return Err("--which needs at least one property".into());
    }
    Ok(props)
}

fn parse_kind(s: &str) -> Result<(XKind, usize), String> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        ["k5", t] => {
            let t: usize = t.parse().map_err(|_| format!("bad extrema budget `{t}`"))?;
            if t < 2 {
                return Err("k5 needs t >= 2 so a peak can sit among the first 2t maxima".into());
            }
            Ok((XKind::K5 { t }, 5))
        }
        ["k6"] => Ok((XKind::K6, 6)),
        ["general", k] => {
            let k: usize = k.parse().map_err(|_| format!("bad uniformity `{k}`"))?;
            Ok((XKind::General { k }, k))
        }
        _ => Err(format!("unknown kind `{s}` (k5:T | k6 | general:K)")),
    }
}

fn build_x_cmd(input: &str, kind: &str, timings: bool) -> Result<ExitCode, String> {
    let t0 = Instant::now();
    let (kind, k) = parse_kind(kind)?;
    let input = read_input(input)?;
    let mut tuple = Vec::new();
    for (line_no, line) in input.text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        for tok in line.split_whitespace() {
            let v: u64 = tok
                .parse()
                .map_err(|_| format!("{}: line {}: bad vertex `{tok}`", input.name, line_no + 1))?;
            tuple.push(v);
        }
    }
    let mut cert = Certificate::new(
        "build.x",
        format!("every {k}-subset of X is a member under any base"),
        Scope::Full,
        false,
    );
    cert.construction = Some(Construction {
        kind: "build-x".into(),
        uniformity: Some(k as u64),
        ground: None,
        base_path: None,
        base_sha256: Some(input.digest.clone()),
        params: None,
    });
    match build_x(kind, &tuple) {
        Ok(x) => {
            // Membership must not depend on the base; the empty and complete
            // bases bracket every other one.
            let width = 63;
            let mut member_everywhere = true;
            for base in [EdgeSet::empty(k - 1, width), EdgeSet::complete(k - 1, width)] {
                let rule = LiftRule::new(k, base.map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
                let mut probe = vec![0u64; k];
                member_everywhere &= all_ksubsets(&x.vertices, &mut probe, &mut |s| rule.contains_unchecked(s));
            }
            cert.verdict = if member_everywhere { stepup_core::Verdict::Pass } else { stepup_core::Verdict::Fail };
            cert.witness = Some(serde_json::json!({
                "vertices": x.vertices,
                "shape": x.shape.map(|s| format!("{s:?}")),
            }));
        }
        Err(e) => {
            cert.witness = Some(serde_json::json!({ "error": e.to_string() }));
        }
    }
    finish(cert, timings, t0)
}

fn all_ksubsets(set: &[u64], probe: &mut [u64], f: &mut impl FnMut(&[u64]) -> bool) -> bool {
    fn rec(set: &[u64], from: usize, depth: usize, probe: &mut [u64], f: &mut impl FnMut(&[u64]) -> bool) -> bool {
        let k = probe.len();
        if depth == k {
            return f(probe);
        }
        for i in from..=set.len() - (k - depth) {
            probe[depth] = set[i];
            if !rec(set, i + 1, depth + 1, probe, f) {
                return false;
            }
        }
        true
    }
    if probe.len() > set.len() {
        return true;
    }
    rec(set, 0, 0, probe, f)
}
