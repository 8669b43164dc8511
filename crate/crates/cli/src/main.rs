use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mcmkit_cli::config::{resolve, Overrides};
use mcmkit_cli::input::{from_catalog, from_equation, from_factors, Params, Resolved};
use mcmkit_cli::report::analyze;
use mcmkit_cli::tables::{ext_table, graph_for, graph_json, render_graph, Engine};
use mcmkit_cli::{run_all, CliError, Suite};

#[derive(Parser)]
#[command(name = "mcmkit", version, about = "Maximal Cohen-Macaulay modules over curve singularities")]
struct Cli {
    /// Highest truncation degree of the precision ladder (overrides MF_PRECISION_MAX).
    #[arg(long, global = true)]
    precision_max: Option<u32>,
    /// QQ or a prime such as 32003 (overrides MF_FIELD).
    #[arg(long, global = true)]
    field: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Default)]
struct CatalogArgs {
    /// Family size parameter of the catalog entry.
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    q: Option<u32>,
    /// Cross-ratio parameter, e.g. 2 or 1/3.
    #[arg(long)]
    lambda: Option<String>,
}

impl CatalogArgs {
    fn params(&self) -> Params {
        Params { n: self.n, p: self.p, q: self.q, lambda: self.lambda.clone() }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Existence of cluster tilting objects, counts and geometry of a curve.
    Analyze {
        /// Equation f(x,y); top-level `*` separates the branches.
        equation: Option<String>,
        #[arg(long, conflicts_with_all = ["equation", "factors"])]
        catalog: Option<String>,
        /// Branches given one by one.
        #[arg(long, num_args = 1.., conflicts_with = "equation")]
        factors: Option<Vec<String>>,
        #[command(flatten)]
        params: CatalogArgs,
        /// Re-verify the counts with the Ext engine.
        #[arg(long)]
        verify: bool,
        /// Accept the compact notation `x3+xy3`.
        #[arg(long)]
        compact: bool,
        #[arg(long)]
        json: bool,
    },
    /// Exchange graph of the cluster tilting objects.
    MutationGraph {
        /// Number of branches, or the catalog parameter with --catalog.
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        catalog: Option<String>,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
    /// Pairwise Ext^1 dimensions of a catalog entry.
    ExtTable {
        catalog: String,
        #[arg(long, default_value = "symbolic")]
        engine: Engine,
        #[command(flatten)]
        params: CatalogArgs,
        #[arg(long)]
        json: bool,
    },
    /// Run a bundled verification suite (or `all`).
    Verify {
        suite: String,
        #[arg(long)]
        json: bool,
    },
}

fn run(cli: Cli) -> Result<(String, ExitCode), CliError> {
    let overrides = Overrides { precision_max: cli.precision_max, field: cli.field };
    let cfg = resolve(&overrides).map_err(CliError::Usage)?;
    match cli.cmd {
        Cmd::Analyze { equation, catalog, factors, params, verify, compact, json } => {
            let r: Resolved = match (equation, catalog, factors) {
                (Some(e), None, None) => from_equation(&e, compact)?,
                (None, Some(c), None) => from_catalog(&c, &params.params())?,
                (None, None, Some(f)) => from_factors(&f)?,
                _ => return Err(CliError::Usage("give an equation, --catalog or --factors".into())),
            };
            let rep = analyze(&r, &cfg, verify)?;
            let out = if json { pretty(&rep.to_json()) } else { rep.render() };
            Ok((out, ExitCode::SUCCESS))
        }
        Cmd::MutationGraph { n, catalog, p, q, lambda, dot, json } => {
            let r = match catalog {
                Some(c) => from_catalog(&c, &Params { n, p, q, lambda })?,
                None => {
                    let n = n.ok_or_else(|| CliError::Usage("give --n or --catalog".into()))?;
                    if n == 0 {
                        return Err(CliError::Usage("--n must be at least 1".into()));
                    }
                    let lines: Vec<String> = (0..n).map(|c| format!("x - {c}*y")).collect();
                    from_factors(&lines)?
                }
            };
            let g = graph_for(&r)?;
            let out = if dot {
                g.to_dot()
            } else if json {
                pretty(&graph_json(&g))
            } else {
                render_graph(&g)
            };
            Ok((out, ExitCode::SUCCESS))
        }
        Cmd::ExtTable { catalog, engine, params, json } => {
            let r = from_catalog(&catalog, &params.params())?;
            let t = ext_table(&r, engine, &cfg)?;
            let out = if json { pretty(&t.to_json()) } else { t.render() };
            let code = if t.agrees() == Some(false) { ExitCode::from(3) } else { ExitCode::SUCCESS };
            Ok((out, code))
        }
        Cmd::Verify { suite, json } => {
            let suites: Vec<Suite> =
                if suite == "all" { Suite::ALL.to_vec() } else { vec![suite.parse().map_err(CliError::Usage)?] };
            let reports = run_all(&suites, &cfg);
            let ok = reports.iter().all(|r| r.passed());
            let out = if json {
                pretty(&serde_json::json!({
                    "schema": mcmkit::JSON_SCHEMA,
                    "passed": ok,
                    "suites": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
                }))
            } else {
                reports.iter().map(|r| r.render()).collect()
            };
            Ok((out, if ok { ExitCode::SUCCESS } else { ExitCode::from(3) }))
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
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
        Ok((out, code)) => {
            print!("{out}");
            code
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
