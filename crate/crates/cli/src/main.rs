use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use affine_top::arith::{fmt_scalar, to_f64};
use affine_top::bcurve::{b_enclosure, build_y};
use affine_top::certify::{self, certify_g, default_dictionary, parse_dictionary, GOutcome, SweepOptions};
use affine_top::cover::{attractor_cover, box_dim_estimate, Stop};
use affine_top::dimension::{self, parse_family, search_family, sweep_dim, Axis, DimSweepOptions};
use affine_top::interior::{interior_diag, sweep_interior};
use affine_top::record::{self, write_atomic, write_jsonl, Meta, Record};
use affine_top::region::{status, RegionMap};
use affine_top::render;
use affine_top::topcurve::{iterate_top, mirror_defect, TopDiagnostic, TopOptions};
use affine_top::{ParamRect, Params, Strategy};

/// Certified computations for the IFS {(λx, μy), (μx+1−μ, λy+1−λ)}.
///
/// Exit status: 0 on success, 2 when nothing could be decided, 1 on errors.
#[derive(Parser, Debug)]
#[command(name = "affine-top", version, about)]
struct Cli {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,

    /// Run everything on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,

    /// Omit timestamps so outputs are byte-identical across runs.
    #[arg(long, global = true)]
    no_meta: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct Point {
    #[arg(long, default_value = "2/5")]
    lambda: String,
    #[arg(long, default_value = "9/10")]
    mu: String,
}

impl Point {
    fn params(&self) -> Result<Params> {
        Ok(Params::parse(&self.lambda, &self.mu)?)
    }
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Raster of an attractor cover (PPM, or PGM for a .pgm path).
    Render {
        #[command(flatten)]
        at: Point,
        #[arg(long, default_value_t = 18)]
        depth: u32,
        /// Grid side, a power of two.
        #[arg(long, default_value_t = 1024)]
        grid: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Pieces of Y_n as CSV or SVG, with a vertex-count histogram.
    Ycurve {
        #[command(flatten)]
        at: Point,
        #[arg(long, default_value_t = 4)]
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lower and upper enclosures of B from Y_n.
    Bcurve {
        #[command(flatten)]
        at: Point,
        #[arg(long, default_value_t = 10)]
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Iterate R from the lower B-enclosure.
    Top {
        #[command(flatten)]
        at: Point,
        #[arg(long, default_value_t = 20)]
        iters: usize,
        /// Level of the starting enclosure.
        #[arg(long, default_value_t = 12)]
        n: u32,
        /// Per-step vertical simplification tolerance 2^-bits (0 keeps every vertex).
        #[arg(long, default_value_t = 12)]
        tol_bits: u32,
        /// Grid for vertex snapping 2^-bits (0 disables).
        #[arg(long, default_value_t = 24)]
        snap_bits: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify a parameter rectangle as a subset of G.
    CertifyG {
        /// λ_lo,λ_hi,μ_lo,μ_hi
        #[arg(long)]
        rect: String,
        #[arg(long, default_value = "(01)")]
        word: String,
        #[arg(long, default_value_t = certify::DEFAULT_SPLIT)]
        split: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dyadic sweep of the parameter triangle for G.
    SweepG {
        #[arg(long, default_value_t = 8)]
        depth: u32,
        /// One word per line, `u(v)`; defaults to |u| ≤ 2, |v| ≤ 8.
        #[arg(long)]
        dict: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Dimension lower bound for one word family.
    Dim {
        #[command(flatten)]
        at: Point,
        #[arg(long, default_value = "01,1")]
        family: String,
        /// Projection axis, x or y.
        #[arg(long, default_value = "x")]
        axis: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search the word families (and optionally general subsets) for a bound.
    DimSearch {
        #[command(flatten)]
        at: Point,
        #[arg(long, default_value_t = 8)]
        mmax: usize,
        #[arg(long, default_value_t = 8)]
        nmax: usize,
        /// Longest word in the general subset search (0 skips it).
        #[arg(long, default_value_t = 0)]
        general_len: usize,
        /// Search log as JSON lines.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Dyadic sweep certifying dim > 1.
    SweepDim {
        #[arg(long, default_value_t = 8)]
        depth: u32,
        #[arg(long, default_value_t = 8)]
        mmax: usize,
        #[arg(long, default_value_t = 8)]
        nmax: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Non-empty interior predicate (JSON verdict).
    Interior {
        #[command(flatten)]
        at: Point,
    },
    /// Classify dyadic cells by the interior predicate.
    SweepInterior {
        #[arg(long, default_value_t = 8)]
        depth: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verify every record of a database.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        /// Also run exact checks at this many random points per record.
        #[arg(long, default_value_t = 0)]
        spot: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Region map from one or more databases (SVG, or PPM for a .ppm path).
    Map {
        #[arg(long = "in", required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        /// Pixels per side for PPM as 2^depth (default: finest cell).
        #[arg(long)]
        depth: Option<u32>,
        #[arg(long, default_value_t = 800)]
        size: u32,
    },
    /// Box-counting dimension estimate.
    Boxdim {
        #[command(flatten)]
        at: Point,
        #[arg(long, default_value_t = 6)]
        kmin: u32,
        #[arg(long, default_value_t = 11)]
        kmax: u32,
    },
}

/// What a subcommand established.
enum Outcome {
    Done,
    Undecided,
}

fn ext(p: &Path) -> String {
    p.extension().map(|e| e.to_string_lossy().to_lowercase()).unwrap_or_default()
}

fn write(path: &Path, bytes: &[u8]) -> Result<()> {
    write_atomic(path, bytes).with_context(|| format!("writing {}", path.display()))
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json value"));
}

fn run(cli: &Cli) -> Result<Outcome> {
    let strategy = if cli.sequential { Strategy::Sequential } else { Strategy::Parallel };
    let meta = if cli.no_meta { Meta::None } else { Meta::Stamp };
    match &cli.cmd {
        Cmd::Render { at, depth, grid, out } => {
            if !grid.is_power_of_two() {
                bail!("--grid must be a power of two, got {grid}");
            }
            let k = grid.trailing_zeros();
            let c = attractor_cover(&at.params()?, k, Stop::Depth(*depth), strategy)?;
            let bytes = if ext(out) == "pgm" { render::pgm_cover(&c) } else { render::ppm_cover(&c) };
            write(out, &bytes)?;
            println!("{} of {} cells occupied", c.count(), grid * grid);
        }
        Cmd::Ycurve { at, n, out } => {
            let y = build_y(&at.params()?, *n, strategy)?;
            for (v, count) in y.vertex_histogram() {
                println!("{v} vertices: {count} pieces");
            }
            if let Some(out) = out {
                match ext(out).as_str() {
                    "svg" => write(out, render::svg_ylevel(&y, 800).as_bytes())?,
                    _ => write(out, y.to_csv().as_bytes())?,
                }
            }
        }
        Cmd::Bcurve { at, n, out } => {
            let e = b_enclosure(&at.params()?, *n, strategy)?;
            println!("width {} ({:.6})", fmt_scalar(&e.width), to_f64(&e.width));
            if let Some(out) = out {
                match ext(out).as_str() {
                    "svg" => write(out, render::svg_curves(&[(&e.lower, "#2060c0"), (&e.upper, "#c04020")], 800).as_bytes())?,
                    _ => {
                        let mut s = String::from("curve,x,y\n");
                        for (name, c) in [("lower", &e.lower), ("upper", &e.upper)] {
                            for v in c.vertices() {
                                s.push_str(&format!("{name},{},{}\n", v.x, v.y));
                            }
                        }
                        write(out, s.as_bytes())?
                    }
                }
            }
        }
        Cmd::Top { at, iters, n, tol_bits, snap_bits, out } => {
            let p = at.params()?;
            let start = b_enclosure(&p, *n, strategy)?.lower;
            let opts = TopOptions {
                simplify_tol: (*tol_bits > 0).then(|| (-(*tol_bits as f64)).exp2()),
                snap_bits: (*snap_bits > 0).then_some(*snap_bits),
                hausdorff_bits: None,
            };
            let it = iterate_top(&p, &start, &format!("lower enclosure n={n}"), *iters, &opts)?;
            for (k, inc) in it.increments.iter().enumerate() {
                println!("step {:>3}  sup increment {:.6e}  vertices {}", k + 1, to_f64(inc), it.vertex_counts[k + 1]);
            }
            println!("simplification error {:.3e}", to_f64(&it.simplification_error));
            println!("mirror defect {:.3e}", to_f64(&mirror_defect(&it.curve, 16)));
            if let Some(out) = out {
                match ext(out).as_str() {
                    "svg" => write(out, render::svg_curves(&[(&it.curve, "black")], 800).as_bytes())?,
                    _ => write(out, it.curve.to_csv().as_bytes())?,
                }
            }
            match &it.diagnostic {
                None => {}
                Some(TopDiagnostic::NotMonotone { step, x, by }) => {
                    eprintln!("step {step}: R(c) < c at x = {x} by {by}");
                    return Ok(Outcome::Undecided);
                }
                Some(TopDiagnostic::Drop { step, drop }) => {
                    eprintln!("step {step}: top boundary falls at x = {} ({} to {})", drop.x, drop.at, drop.after);
                    return Ok(Outcome::Undecided);
                }
            }
        }
        Cmd::CertifyG { rect, word, split, out } => {
            let r = ParamRect::parse(rect)?;
            let a = word.parse()?;
            match certify_g(&r, &a, *split)? {
                GOutcome::Certified(c) => {
                    let rec = Record::from_g(&c, meta);
                    let line = record::to_jsonl(&[rec])?;
                    print!("{line}");
                    if let Some(out) = out {
                        write(out, line.as_bytes())?;
                    }
                }
                GOutcome::Undecided { failed } => {
                    eprintln!(
                        "undecided: {}",
                        if failed { "an inequality fails on the whole rectangle" } else { "interval enclosures straddle" }
                    );
                    return Ok(Outcome::Undecided);
                }
            }
        }
        Cmd::SweepG { depth, dict, out } => {
            let words = match dict {
                Some(path) => parse_dictionary(&std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?)?,
                None => default_dictionary(2, 8),
            };
            let opts = SweepOptions { strategy, ..SweepOptions::new(*depth) };
            let rep = certify::sweep_g(&words, &opts)?;
            write_jsonl(out, &record::g_records(&rep, meta))?;
            println!(
                "certified {} cells, undecided {}, coverage {:.4}",
                rep.certified.len(),
                rep.undecided.len(),
                rep.coverage()
            );
            if rep.certified.is_empty() {
                return Ok(Outcome::Undecided);
            }
        }
        Cmd::Dim { at, family, axis, out } => {
            let p = at.params()?;
            let ws = parse_family(family)?;
            let axis = match axis.as_str() {
                "x" => Axis::X,
                "y" => Axis::Y,
                other => bail!("--axis must be x or y, got {other}"),
            };
            let ev = dimension::rosc_check(&p, &ws, axis)?;
            match dimension::certify_family(&p, &ws, axis)? {
                Some(c) => {
                    print_json(&json!({
                        "family": c.words_string(),
                        "s_lo": fmt_scalar(c.s_lo()),
                        "s_hi": fmt_scalar(c.s_hi()),
                        "s_lo_f64": to_f64(c.s_lo()),
                        "s_hi_f64": to_f64(c.s_hi()),
                        "estimate": format!("{:.9}", c.estimate()),
                        "equation": "sum_i a_i * b_i^(s-1) = 1",
                    }));
                    if let Some(out) = out {
                        write_jsonl(out, &[Record::from_dim(&c, meta)])?;
                    }
                }
                None => {
                    eprintln!("no certificate: ROSC verdict {:?}", ev.verdict());
                    return Ok(Outcome::Undecided);
                }
            }
        }
        Cmd::DimSearch { at, mmax, nmax, general_len, log } => {
            let p = at.params()?;
            let res = search_family(&p, *mmax, *nmax, *general_len, strategy)?;
            if let Some(log) = log {
                write_jsonl(log, &res.log)?;
            }
            println!("{} families tried, {} subsets pruned by the sum test", res.log.len(), res.pruned);
            match res.certificate {
                Some(c) => println!("certified by {{{}}}: s in [{:.9}, {:.9}]", c.words_string(), to_f64(c.s_lo()), to_f64(c.s_hi())),
                None => {
                    println!("NONE");
                    return Ok(Outcome::Undecided);
                }
            }
        }
        Cmd::SweepDim { depth, mmax, nmax, out } => {
            let opts = DimSweepOptions { m_max: *mmax, n_max: *nmax, strategy, ..DimSweepOptions::new(*depth) };
            let rep = sweep_dim(&opts)?;
            write_jsonl(out, &record::dim_records(&rep, meta))?;
            println!(
                "certified {} cells, undecided {}, coverage {:.4}",
                rep.certified.len(),
                rep.undecided.len(),
                rep.coverage()
            );
            if rep.certified.is_empty() {
                return Ok(Outcome::Undecided);
            }
        }
        Cmd::Interior { at } => {
            let v = interior_diag(&at.params()?);
            print_json(&v.to_json());
            if !v.is_true() {
                return Ok(Outcome::Undecided);
            }
        }
        Cmd::SweepInterior { depth, out } => {
            let s = sweep_interior(*depth, strategy)?;
            let recs = record::interior_records(&s, meta);
            println!("{} cells certified, coverage {:.4}", recs.len(), s.coverage());
            if let Some(out) = out {
                write_jsonl(out, &recs)?;
            }
            if recs.is_empty() {
                return Ok(Outcome::Undecided);
            }
        }
        Cmd::Verify { input, spot, seed } => {
            let text = std::fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
            let checks = record::verify_text(&text, strategy);
            let mut bad = 0;
            for c in &checks {
                if let Err(e) = &c.result {
                    bad += 1;
                    eprintln!("{}:{}: {} record rejected: {e}", input.display(), c.line, c.kind);
                }
            }
            if *spot > 0 && bad == 0 {
                for (k, r) in record::parse_records(&text)?.iter().enumerate() {
                    let fails = r.spot_check(*spot, seed.wrapping_add(k as u64))?;
                    if let Some(p) = fails.first() {
                        bad += 1;
                        eprintln!("{}: record {} fails at λ = {}, μ = {}", input.display(), k + 1, p.lambda(), p.mu());
                    }
                }
            }
            println!("{} records, {} rejected", checks.len(), bad);
            if bad > 0 {
                return Err(anyhow!("{bad} record(s) failed verification"));
            }
        }
        Cmd::Map { inputs, out, depth, size } => {
            let mut map = RegionMap::default();
            for path in inputs {
                let recs = record::read_records(path).with_context(|| format!("reading {}", path.display()))?;
                map = map.merge(&RegionMap::from_records(&recs)?);
            }
            let depth = depth.unwrap_or_else(|| map.finest_depth().max(6));
            match ext(out).as_str() {
                "ppm" => write(out, &render::ppm_region(&map, depth))?,
                _ => write(out, render::svg_region(&map, *size).as_bytes())?,
            }
            println!(
                "coverage: G {:.4}, dim>1 {:.4}, both {:.4}, interior {:.4}",
                map.coverage(status::G),
                map.coverage(status::DIM),
                map.coverage(status::G | status::DIM),
                map.coverage(status::INTERIOR)
            );
        }
        Cmd::Boxdim { at, kmin, kmax } => {
            let e = box_dim_estimate(&at.params()?, *kmin, *kmax, strategy)?;
            for (k, c) in &e.counts {
                println!("k={k:>2}  cells {c}");
            }
            println!("slope {:.4} ± {:.4} (r² {:.5})", e.slope, e.stderr, e.r2);
        }
    }
    Ok(Outcome::Done)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = affine_top::exec::with_workers(cli.workers, || run(&cli));
    match res {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Undecided) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
