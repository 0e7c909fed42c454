use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use zsl_core::davenport::{DavenportEngine, EngineConfig};
use zsl_core::graded::PresentedGradedAlgebra;
use zsl_core::group::AbelianGroup;
use zsl_core::invariant::{
    beta_k, verify_beta_equals_davenport, verify_sigma_az2, verify_sigma_zpzd,
};
use zsl_core::lemmas::{verify_direct_product_bound, zero_sum_with_support};
use zsl_core::parse::{
    parse_abelian, parse_generators, parse_int_list, parse_relations, parse_repspec,
    parse_semidirect,
};
use zsl_core::suite::{verify_all, SuiteConfig};

#[derive(Parser)]
#[command(
    name = "zsl",
    version,
    about = "Zero-sum constants and degree bounds for invariant rings"
)]
struct Cli {
    /// Output format; csv is available for tabular results only.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Wall-clock budget; work left when it runs out is reported as skipped or partial.
    #[arg(long, global = true)]
    budget_seconds: Option<f64>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Generalized Davenport constant D_k with an extremal witness.
    Davenport {
        group: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// D_k and d_k for k = 1..K.
    DkTable {
        group: String,
        #[arg(long)]
        k_upto: usize,
    },
    /// Least length forcing a short zero-sum subsequence.
    Eta { group: String },
    /// Slope and offset of k -> D_k.
    Linearity {
        group: String,
        #[arg(long, default_value_t = 4)]
        k_upto: usize,
    },
    /// Zero-sum sequence over Z_p with prescribed support, e.g. `support-lemma 7 1,3`.
    SupportLemma { p: u64, support: String },
    /// Checks D_{r+s-1}(G+H) >= D_r(G) + D_s(H) - 1 with an explicit witness.
    ProductBound {
        g: String,
        h: String,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
    },
    /// beta_k of a representation: `reg(<group>)` or `ind(SD(p,d,e))`.
    Beta {
        rep: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Compares beta_k of the regular representation with D_k.
    Crosscheck {
        group: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Constructs the f_k for SD(p,d,e) and checks sigma = p.
    SigmaZpzd { group: String },
    /// Checks the origin-only invariants of Z_n x| Z_2 through a character of order e.
    SigmaAz2 { n: u64, e: u64 },
    /// beta_k of a presented graded algebra up to a degree cutoff.
    RingBeta {
        #[arg(long)]
        gens: String,
        #[arg(long)]
        rels: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 30)]
        cutoff: u32,
    },
    /// Runs the whole verification suite.
    VerifyAll {
        /// Restrict to these groups (repeatable); `ring` selects the presented algebra.
        #[arg(long = "group")]
        groups: Vec<String>,
        /// Shift the first expected value of the named check by one.
        #[arg(long)]
        inject_fault: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

/// A command result: full JSON, an optional table for csv, and whether
/// everything it checked held.
struct Output {
    json: Value,
    table: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
    passed: bool,
}

impl Output {
    fn new(json: Value, passed: bool) -> Self {
        Output {
            json,
            table: None,
            passed,
        }
    }

    fn with_table(mut self, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        self.table = Some((header, rows));
        self
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

/// Memo spill location, when `ZSL_CACHE_DIR` is set.
fn cache_path(group: &AbelianGroup) -> Option<PathBuf> {
    let dir = std::env::var_os("ZSL_CACHE_DIR")?;
    Some(PathBuf::from(dir).join(format!("kmax-{}.memo", group.label())))
}

fn engine(group: &str, config: &EngineConfig) -> anyhow::Result<DavenportEngine> {
    let a = parse_abelian(group)?;
    let mut e = DavenportEngine::new(&a, config.clone())?;
    if let Some(path) = cache_path(&a) {
        if path.exists() {
            e.packing_mut().load_memo(&path)?;
        }
    }
    Ok(e)
}

fn spill(e: &DavenportEngine) -> anyhow::Result<()> {
    if let Some(path) = cache_path(e.group()) {
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        }
        e.packing().save_memo(&path)?;
    }
    Ok(())
}

fn run(cli: &Cli) -> anyhow::Result<Output> {
    let budget = match cli.budget_seconds {
        Some(b) if !(b > 0.0 && b.is_finite()) => bail!("--budget-seconds must be positive"),
        b => b.map(Duration::from_secs_f64),
    };
    let config = EngineConfig {
        deadline: budget.map(|b| Instant::now() + b),
        ..EngineConfig::default()
    };
    let out = match &cli.command {
        Command::Davenport { group, k } => {
            let mut e = engine(group, &config)?;
            let r = e.davenport_k(*k)?;
            spill(&e)?;
            let row = vec![
                k.to_string(),
                r.davenport.to_string(),
                r.max_free_length.to_string(),
                r.extremal_witness.to_string(),
            ];
            Output::new(to_json(&r), true).with_table(vec!["k", "D_k", "d_k", "witness"], vec![row])
        }
        Command::DkTable { group, k_upto } => {
            let mut e = engine(group, &config)?;
            let reports = (1..=*k_upto)
                .map(|k| e.davenport_k(k))
                .collect::<Result<Vec<_>, _>>()?;
            spill(&e)?;
            let rows = reports
                .iter()
                .map(|r| {
                    vec![
                        r.k.to_string(),
                        r.davenport.to_string(),
                        r.max_free_length.to_string(),
                        r.extremal_witness.to_string(),
                    ]
                })
                .collect();
            Output::new(to_json(&reports), true)
                .with_table(vec!["k", "D_k", "d_k", "witness"], rows)
        }
        Command::Eta { group } => {
            let mut e = engine(group, &config)?;
            let r = e.eta()?;
            spill(&e)?;
            Output::new(to_json(&r), true)
        }
        Command::Linearity { group, k_upto } => {
            let mut e = engine(group, &config)?;
            let p = e.linearity_profile(*k_upto)?;
            spill(&e)?;
            let rows = p
                .table
                .iter()
                .map(|(k, d)| vec![k.to_string(), d.to_string(), (d - 1).to_string()])
                .collect();
            Output::new(to_json(&p), true).with_table(vec!["k", "D_k", "d_k"], rows)
        }
        Command::SupportLemma { p, support } => {
            let r = zero_sum_with_support(*p, &parse_int_list(support)?)?;
            Output::new(to_json(&r), true)
        }
        Command::ProductBound { g, h, r, s } => {
            let rep = verify_direct_product_bound(
                &parse_abelian(g)?,
                &parse_abelian(h)?,
                *r,
                *s,
                &config,
            )?;
            Output::new(to_json(&rep), rep.passed)
        }
        Command::Beta { rep, k } => {
            let rep = parse_repspec(rep)?.build()?;
            let r = beta_k(&rep, *k, config.deadline)?;
            let rows = r
                .certificate
                .iter()
                .map(|c| {
                    vec![
                        c.degree.to_string(),
                        c.dim_invariants.to_string(),
                        c.dim_power.to_string(),
                        c.outside.to_string(),
                    ]
                })
                .collect();
            Output::new(to_json(&r), true).with_table(
                vec!["degree", "dim_invariants", "dim_power", "outside"],
                rows,
            )
        }
        Command::Crosscheck { group, k } => {
            let r = verify_beta_equals_davenport(&parse_abelian(group)?, *k, &config)?;
            Output::new(to_json(&r), r.passed)
        }
        Command::SigmaZpzd { group } => {
            let r = verify_sigma_zpzd(&parse_semidirect(group)?)?;
            Output::new(to_json(&r), r.passed)
        }
        Command::SigmaAz2 { n, e } => {
            let r = verify_sigma_az2(*n, *e)?;
            Output::new(to_json(&r), r.passed)
        }
        Command::RingBeta {
            gens,
            rels,
            k,
            cutoff,
        } => {
            let (names, degrees) = parse_generators(gens)?;
            let relations = parse_relations(&names, rels)?;
            let mut ring = PresentedGradedAlgebra::new(names, degrees, relations, *cutoff)?
                .with_deadline(config.deadline);
            let r = ring.beta_k(*k, *cutoff)?;
            let rows = r
                .table
                .iter()
                .map(|c| {
                    vec![
                        c.degree.to_string(),
                        c.dim_component.to_string(),
                        c.dim_power.to_string(),
                        c.outside.to_string(),
                    ]
                })
                .collect();
            Output::new(to_json(&r), true).with_table(
                vec!["degree", "dim_component", "dim_power", "outside"],
                rows,
            )
        }
        Command::VerifyAll {
            groups,
            inject_fault,
            seed,
        } => {
            let mut suite = SuiteConfig {
                budget,
                inject_fault: inject_fault.clone(),
                ..SuiteConfig::default()
            };
            if let Some(seed) = seed {
                suite.seed = *seed;
            }
            if !groups.is_empty() {
                suite = suite.with_groups(groups)?;
            }
            let r = verify_all(&suite)?;
            let rows = r
                .checks
                .iter()
                .map(|c| {
                    vec![
                        c.id.to_string(),
                        c.name.clone(),
                        json!(c.status).as_str().unwrap_or_default().to_string(),
                        format!("{:.1}", c.wall_ms),
                        c.detail.clone(),
                    ]
                })
                .collect();
            Output::new(to_json(&r), !r.has_failures())
                .with_table(vec!["id", "name", "status", "wall_ms", "detail"], rows)
        }
    };
    Ok(out)
}

fn render(format: Format, out: &Output) -> anyhow::Result<Vec<u8>> {
    match format {
        Format::Json => {
            let mut buf = serde_json::to_vec_pretty(&out.json)?;
            buf.push(b'\n');
            Ok(buf)
        }
        Format::Csv => {
            let Some((header, rows)) = &out.table else {
                bail!("csv output is only available for tabular results; use --format json");
            };
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(header)?;
            for row in rows {
                w.write_record(row)?;
            }
            Ok(w.into_inner()?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| {
        let bytes = render(cli.format, &out)?;
        match &cli.out {
            Some(path) => {
                fs::write(path, &bytes).with_context(|| format!("writing {}", path.display()))?
            }
            None => std::io::stdout().write_all(&bytes)?,
        }
        Ok(out.passed)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("zsl: verification failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("zsl: {e:#}");
            ExitCode::from(2)
        }
    }
}
