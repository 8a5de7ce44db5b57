//! Argument parsing and verb dispatch for `nlrank`.
//!
//! Exit codes: 0 success, 1 domain error (or a failed check), 2 usage error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use nlrank::cusp::{self, Weight};
use nlrank::lattice::{catalog, CatalogName, Lattice};
use nlrank::routes::RouteRegistry;
use nlrank::{arith, nl, rank, Error, WeilRep, DEFAULT_MAX_GROUP};

pub const MAX_GROUP_ENV: &str = "NLRANK_MAX_GROUP";

#[derive(Parser, Debug)]
#[command(
    name = "nlrank",
    version,
    about = "Picard ranks of K3 moduli spaces and the lattices behind them"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Pretty, global = true)]
    format: Format,

    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Pretty,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Picard ranks of K_g for a range of genera.
    Rank {
        #[arg(long)]
        from: i64,
        #[arg(long)]
        to: i64,
        /// Route to compute with (closed-form or cusp-dim).
        #[arg(long, default_value = "closed-form")]
        method: String,
    },
    /// Lattice inspection.
    Lattice {
        #[command(subcommand)]
        action: LatticeAction,
    },
    /// Weil representation checks.
    Weil {
        #[command(subcommand)]
        action: WeilAction,
    },
    /// Dimension of vector-valued cusp forms for Lambda_g.
    Dim {
        #[arg(long)]
        g: i64,
        /// Weight such as 21/2; defaults to the weight of the Picard identity,
        /// and otherwise uses the dual Weil representation.
        #[arg(long)]
        k: Option<String>,
    },
    /// Noether-Lefschetz labels on the grid 0 <= d <= dmax, 0 <= h <= hmax.
    Nl {
        #[arg(long)]
        g: i64,
        #[arg(long)]
        dmax: i64,
        #[arg(long)]
        hmax: i64,
    },
    /// Compare every registered rank route over a range of genera.
    Crosscheck {
        #[arg(long)]
        from: i64,
        #[arg(long)]
        to: i64,
    },
}

#[derive(Subcommand, Debug)]
enum LatticeAction {
    /// Rank, determinant, signature and discriminant form.
    Info(LatticeArgs),
}

#[derive(Subcommand, Debug)]
enum WeilAction {
    /// Check the Mp2(Z) relations on rho(S), rho(T), rho(Z).
    Verify {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Dump the matrices as JSON.
    Matrices {
        #[command(flatten)]
        lattice: LatticeArgs,
    },
}

#[derive(Args, Debug)]
struct LatticeArgs {
    /// Catalog name: U, U(N), E8, minusE8, K3, Lambda_g, <n>.
    #[arg(long, required_unless_present = "file", conflicts_with = "file")]
    name: Option<String>,
    /// Genus for Lambda_g.
    #[arg(long)]
    g: Option<i64>,
    /// Scale for U(N).
    #[arg(long)]
    n: Option<i64>,
    /// JSON file {"name": ..., "gram": [[...]]}.
    #[arg(long)]
    file: Option<PathBuf>,
}

impl LatticeArgs {
    fn load(&self) -> Result<Lattice, Failure> {
        match (&self.name, &self.file) {
            (Some(name), _) => {
                let name = CatalogName::parse(name, self.g, self.n).map_err(Failure::usage)?;
                catalog(name).map_err(Failure::domain)
            }
            (None, Some(path)) => {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))
                    .map_err(|e| Failure::Domain(format!("{e:#}")))?;
                Lattice::from_json(&text).map_err(Failure::domain)
            }
            (None, None) => Err(Failure::Usage("either --name or --file is required".into())),
        }
    }
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl Failure {
    fn usage(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }

    fn domain(e: Error) -> Self {
        match e {
            Error::BadRange { .. }
            | Error::UnknownRoute(_)
            | Error::UnknownLattice(_)
            | Error::BadWeight(_) => Failure::Usage(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

const SYNOPSIS: &str = "usage:
  nlrank rank --from G --to H [--method closed-form|cusp-dim]
  nlrank lattice info (--name NAME [--g G] [--n N] | --file FILE)
  nlrank weil verify (--name NAME [--g G] | --file FILE) [--tol T]
  nlrank weil matrices (--name NAME [--g G] | --file FILE)
  nlrank dim --g G [--k K]
  nlrank nl --g G --dmax D --hmax H
  nlrank crosscheck --from G --to H
options: --format csv|json|pretty, --threads N";

pub fn dispatch(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };

    let max_group = match std::env::var(MAX_GROUP_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => n,
            _ => {
                let _ = writeln!(
                    err,
                    "error: {MAX_GROUP_ENV} must be a positive integer, got `{v}`"
                );
                return 2;
            }
        },
        Err(_) => DEFAULT_MAX_GROUP,
    };

    // output is assembled in full before it is emitted
    let mut buf: Vec<u8> = Vec::new();
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| run(&cli, max_group, &mut buf)),
            Err(e) => Err(Failure::Domain(e.to_string())),
        },
        None => run(&cli, max_group, &mut buf),
    };
    if let Err(e) = out.write_all(&buf) {
        let _ = writeln!(err, "error: {e}");
        return 1;
    }
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}\n\n{SYNOPSIS}");
            2
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn json<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn run(cli: &Cli, max_group: usize, out: &mut dyn Write) -> Result<u8, Failure> {
    let format = cli.format;
    match &cli.command {
        Command::Rank { from, to, method } => {
            let routes = RouteRegistry::with_defaults(max_group);
            if *from < 2 || from > to {
                return Err(Failure::domain(Error::BadRange { lo: *from, hi: *to }));
            }
            if method == "closed-form" {
                let reports = rank::rank_table(*from, *to).map_err(Failure::domain)?;
                match format {
                    Format::Csv => rank::write_csv(&reports, &mut *out).map_err(Failure::domain)?,
                    Format::Json => json(out, &reports)?,
                    Format::Pretty => {
                        writeln!(
                            out,
                            "{:>6} {:>6} {:>6} {:>14} {:>8} {:>6}",
                            "g", "alpha", "beta", "fracsum", "sqcount", "rank"
                        )?;
                        for r in &reports {
                            writeln!(
                                out,
                                "{:>6} {:>6} {:>6} {:>14} {:>8} {:>6}",
                                r.g,
                                r.alpha,
                                r.beta,
                                format!("{}/{}", r.fracsum.numer(), r.fracsum.denom()),
                                r.sqcount,
                                r.rank
                            )?;
                        }
                    }
                }
                return Ok(0);
            }
            let route = routes.get(method).map_err(Failure::domain)?;
            #[derive(Serialize)]
            struct Row {
                g: i64,
                rank: u64,
            }
            let rows = (*from..=*to)
                .map(|g| route.rank(g).map(|rank| Row { g, rank }))
                .collect::<Result<Vec<_>, _>>()
                .map_err(Failure::domain)?;
            match format {
                Format::Csv => {
                    writeln!(out, "g,rank")?;
                    for r in &rows {
                        writeln!(out, "{},{}", r.g, r.rank)?;
                    }
                }
                Format::Json => json(out, &rows)?,
                Format::Pretty => {
                    for r in &rows {
                        writeln!(out, "g = {:>4}  rank = {}", r.g, r.rank)?;
                    }
                }
            }
            Ok(0)
        }

        Command::Lattice {
            action: LatticeAction::Info(args),
        } => {
            let lat = args.load()?;
            let df = lat.discriminant_form().map_err(Failure::domain)?;
            let sig = lat.signature();
            #[derive(Serialize)]
            struct Info {
                name: Option<String>,
                rank: usize,
                determinant: String,
                signature: [usize; 2],
                orders: Vec<u64>,
                cardinality: String,
                level: u64,
                sig_mod_8: u8,
            }
            let info = Info {
                name: lat.name().map(str::to_string),
                rank: lat.rank(),
                determinant: lat.determinant().to_string(),
                signature: [sig.positive, sig.negative],
                orders: df.orders().to_vec(),
                cardinality: df.cardinality().to_string(),
                level: df.level(),
                sig_mod_8: df.sig_mod_8(),
            };
            let orders = info.orders.iter().map(u64::to_string).collect::<Vec<_>>();
            match format {
                Format::Csv => {
                    writeln!(
                        out,
                        "name,rank,determinant,pos,neg,orders,cardinality,level,sig_mod_8"
                    )?;
                    writeln!(
                        out,
                        "{},{},{},{},{},{},{},{},{}",
                        info.name.as_deref().unwrap_or(""),
                        info.rank,
                        info.determinant,
                        sig.positive,
                        sig.negative,
                        orders.join(";"),
                        info.cardinality,
                        info.level,
                        info.sig_mod_8
                    )?;
                }
                Format::Json => json(out, &info)?,
                Format::Pretty => {
                    writeln!(out, "name:         {}", info.name.as_deref().unwrap_or("-"))?;
                    writeln!(out, "rank:         {}", info.rank)?;
                    writeln!(out, "determinant:  {}", info.determinant)?;
                    writeln!(out, "signature:    {sig}")?;
                    let group = if orders.is_empty() {
                        "trivial".to_string()
                    } else {
                        orders
                            .iter()
                            .map(|d| format!("Z/{d}"))
                            .collect::<Vec<_>>()
                            .join(" + ")
                    };
                    writeln!(out, "discriminant: {group} (order {})", info.cardinality)?;
                    writeln!(out, "level:        {}", info.level)?;
                    writeln!(out, "sig mod 8:    {}", info.sig_mod_8)?;
                }
            }
            Ok(0)
        }

        Command::Weil { action } => {
            let (args, tol) = match action {
                WeilAction::Verify { lattice, tol } => (lattice, Some(*tol)),
                WeilAction::Matrices { lattice } => (lattice, None),
            };
            let lat = args.load()?;
            let df = lat.discriminant_form().map_err(Failure::domain)?;
            let rep = WeilRep::build(&df, max_group).map_err(Failure::domain)?;
            let Some(tol) = tol else {
                writeln!(out, "{}", rep.to_json().map_err(Failure::domain)?)?;
                return Ok(0);
            };
            let report = rep.verify_relations(tol);
            let gauss = arith::gauss_sum(&df).map_err(Failure::domain)?;
            let milgram = (gauss - arith::milgram_prediction(&df)).norm();
            #[derive(Serialize)]
            struct Verify {
                dimension: usize,
                #[serde(flatten)]
                relations: nlrank::weil::RelationReport,
                milgram_error: f64,
                tol: f64,
            }
            let v = Verify {
                dimension: rep.dimension(),
                relations: report,
                milgram_error: milgram,
                tol,
            };
            let pass = report.pass && milgram < tol;
            match format {
                Format::Csv => {
                    writeln!(out, "dimension,level,max_err_s2z,max_err_st3,max_err_tn,max_err_unitary,max_err_z_monomial,milgram_error,pass")?;
                    writeln!(
                        out,
                        "{},{},{:e},{:e},{:e},{:e},{:e},{:e},{}",
                        v.dimension,
                        report.level,
                        report.max_err_s2z,
                        report.max_err_st3,
                        report.max_err_tn,
                        report.max_err_unitary,
                        report.max_err_z_monomial,
                        milgram,
                        pass
                    )?;
                }
                Format::Json => json(out, &v)?,
                Format::Pretty => {
                    writeln!(out, "|A| = {}, level N = {}", v.dimension, report.level)?;
                    writeln!(out, "|S^2 - Z|        = {:.3e}", report.max_err_s2z)?;
                    writeln!(out, "|(ST)^3 - S^2|   = {:.3e}", report.max_err_st3)?;
                    writeln!(out, "|T^N - I|        = {:.3e}", report.max_err_tn)?;
                    writeln!(out, "|S S* - I|       = {:.3e}", report.max_err_unitary)?;
                    writeln!(out, "Z monomial error = {:.3e}", report.max_err_z_monomial)?;
                    writeln!(out, "Milgram error    = {:.3e}", milgram)?;
                    writeln!(out, "{}", if pass { "PASS" } else { "FAIL" })?;
                }
            }
            Ok(if pass { 0 } else { 1 })
        }

        Command::Dim { g, k } => {
            let lat = catalog(CatalogName::Lambda(*g)).map_err(Failure::domain)?;
            let report = match k {
                None => cusp::picard_report(&lat, true, max_group),
                Some(k) => {
                    let k: Weight = k.parse().map_err(Failure::usage)?;
                    cusp::dim_cusp_with(&lat, k, cusp::RepKind::Dual, max_group)
                }
            }
            .map_err(Failure::domain)?;
            match format {
                Format::Csv => {
                    writeln!(out, "g,k,d,rep,parity_mismatch,dim")?;
                    let rep = serde_json::to_value(report.rep)?;
                    writeln!(
                        out,
                        "{},{},{},{},{},{}",
                        g,
                        report.k,
                        report.d,
                        rep.as_str().unwrap_or_default(),
                        report.parity_mismatch,
                        report.dim
                    )?;
                }
                Format::Json => json(out, &report)?,
                Format::Pretty => {
                    writeln!(
                        out,
                        "Lambda_{g}: |A| = {}, weight k = {}",
                        report.d, report.k
                    )?;
                    if let Some(b) = &report.boundary_terms {
                        writeln!(
                            out,
                            "  dim V_k   = {} (symmetry {:+})",
                            b.subspace_dim, b.symmetry
                        )?;
                        writeln!(out, "  alpha(S)  = {}", b.alpha_s)?;
                        writeln!(out, "  alpha(ST) = {}", b.alpha_st)?;
                        writeln!(out, "  alpha(T)  = {}", b.alpha_t)?;
                        writeln!(out, "  dim M_k   = {}", b.modular_dim)?;
                        writeln!(out, "  Eisenstein= {}", b.eisenstein)?;
                    } else {
                        writeln!(out, "  weight parity does not match the signature")?;
                    }
                    writeln!(out, "dim S_k = {}", report.dim)?;
                }
            }
            Ok(0)
        }

        Command::Nl { g, dmax, hmax } => {
            let labels = nl::enumerate_nl(*g, *dmax, *hmax).map_err(|e| match e {
                Error::BadRange { .. } => {
                    Failure::Usage("--dmax and --hmax must be nonnegative".into())
                }
                other => Failure::domain(other),
            })?;
            match format {
                Format::Csv => nl::write_csv(&labels, &mut *out).map_err(Failure::domain)?,
                Format::Json => json(out, &labels)?,
                Format::Pretty => {
                    writeln!(
                        out,
                        "{:>5} {:>5} {:>8} {:>12} {:>6}",
                        "h", "d", "delta", "n", "gamma"
                    )?;
                    for l in &labels {
                        writeln!(
                            out,
                            "{:>5} {:>5} {:>8} {:>12} {:>6}{}",
                            l.h,
                            l.d,
                            l.delta,
                            l.n.to_string(),
                            l.gamma,
                            if l.degenerate { "  (degenerate)" } else { "" }
                        )?;
                    }
                }
            }
            Ok(0)
        }

        Command::Crosscheck { from, to } => {
            let routes = RouteRegistry::with_defaults(max_group);
            let rows = routes.crosscheck(*from, *to).map_err(Failure::domain)?;
            let names = routes.names();
            match format {
                Format::Csv => {
                    writeln!(out, "g,{},agree", names.join(","))?;
                    for r in &rows {
                        let cells: Vec<String> = r
                            .ranks
                            .iter()
                            .map(|x| {
                                x.rank
                                    .as_ref()
                                    .map_or_else(|_| "error".to_string(), u64::to_string)
                            })
                            .collect();
                        writeln!(out, "{},{},{}", r.g, cells.join(","), r.agree)?;
                    }
                }
                Format::Json => json(out, &rows)?,
                Format::Pretty => {
                    for r in &rows {
                        let cells: Vec<String> = r
                            .ranks
                            .iter()
                            .map(|x| match &x.rank {
                                Ok(v) => format!("{}={}", x.route, v),
                                Err(e) => format!("{}=error({e})", x.route),
                            })
                            .collect();
                        writeln!(
                            out,
                            "g = {:>4}  {}  {}",
                            r.g,
                            cells.join("  "),
                            if r.agree { "ok" } else { "MISMATCH" }
                        )?;
                    }
                }
            }
            Ok(if rows.iter().all(|r| r.agree) { 0 } else { 1 })
        }
    }
}
