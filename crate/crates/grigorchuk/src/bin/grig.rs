//! Command-line front end. Exit status 1 means a contract violation
//! (bad input, failed check), 2 means an I/O error.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use grigorchuk::automaton::{max_cycle_ratio, parse_graph, serialize_graph, verify_graph, Transducer, TransducerGraph};
use grigorchuk::builder::{build, BuildParams, Threshold};
use grigorchuk::growth::{alpha_of_eta, check_sbgp, lower_bound_log_gamma, BoundParams, GrowthTable, Subgroup};
use grigorchuk::group::{act, free_reduce, in_h, is_trivial, psi, psi_preimage_basic};
use grigorchuk::minform::minimal_form;
use grigorchuk::optimizer::{optimize_weights, Schedule};
use grigorchuk::weight::SCALE;
use grigorchuk::{BinaryString, Error, PairWord, Weight, Word};

const BUDGET: usize = 5_000_000;

#[derive(Parser)]
#[command(name = "grig", version, about = "Grigorchuk group: word problem, growth, psi-preimage transducers")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for enumeration, verification and scoring.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Image of a binary string under a word (action on the tree).
    Act { word: String, string: String },
    /// Free reduction: cancel aa, bb, cc, dd and merge adjacent b, c, d.
    Reduce { word: String },
    /// Canonical minimal-weight word for the element of a word.
    Minform {
        word: String,
        #[arg(long, default_value = "tuned")]
        weights: String,
    },
    /// Decide whether a word is the identity (contraction word problem).
    Trivial { word: String },
    /// The two sections of a word with an even number of a.
    Psi { word: String },
    /// A psi-preimage of (u0,u1) by the length-4 constructor.
    PreimageBasic { u0: String, u1: String },
    /// Weighted growth table; unit and tuned weights unless --weights is given.
    Growth {
        /// Largest radius.
        #[arg(long)]
        radius: f64,
        #[arg(long, default_value_t = 1.0)]
        step: f64,
        #[arg(long)]
        weights: Option<String>,
        #[arg(long, value_enum, default_value_t = Sub::G)]
        subgroup: Sub,
    },
    /// Compare growth of H and G at sampled radii (index-2 subgroup inequalities).
    CheckSbgp {
        #[arg(long)]
        radius: f64,
        #[arg(long, default_value_t = 1.0)]
        step: f64,
        #[arg(long, default_value = "unit")]
        weights: String,
    },
    /// Check a transducer graph file; exits 1 if any rule is violated.
    VerifyGraph { file: PathBuf },
    /// Maximal cycle ratio of a transducer graph, with a witness cycle.
    Eta {
        file: PathBuf,
        #[arg(long)]
        include_special: bool,
        /// Override the weights line of the file.
        #[arg(long)]
        weights: Option<String>,
    },
    /// Growth exponent log 2 / log eta.
    Alpha { eta: f64 },
    /// Run a transducer graph on (u0,u1) and print the preimage with its weight bound.
    Transduce { file: PathBuf, u0: String, u1: String },
    /// Grow a transducer graph by the quality rule and attach end-of-input transitions.
    Build {
        #[arg(long, default_value = "tuned")]
        weights: String,
        #[arg(long, default_value_t = 0.01)]
        delta: f64,
        #[arg(long, default_value_t = 4.0)]
        eta_prime: f64,
        #[arg(long, default_value_t = 20)]
        max_len: usize,
        #[arg(long, default_value_t = 8)]
        special_len: usize,
        #[arg(long, value_enum, default_value_t = Thr::Cycle)]
        threshold: Thr,
        #[arg(long, default_value_t = 5000)]
        state_budget: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the build log (one JSON object per line) here.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Hill-climb the weights to lower the cycle ratio of a graph.
    Optimize {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        weights: Option<String>,
        #[arg(long, default_value = "default")]
        schedule: String,
        #[arg(long)]
        seed: Option<u64>,
        /// Write the best weights here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the CSV trace here instead of stdout.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Certified lower bound on log growth at n.
    Bound {
        n: f64,
        #[arg(long)]
        eta: f64,
        #[arg(long)]
        k: f64,
        #[arg(long)]
        l: f64,
        #[arg(long)]
        gamma_l: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Sub {
    G,
    H,
    B,
}

#[derive(Clone, Copy, ValueEnum)]
enum Thr {
    /// Quality at least 1/eta'.
    Literal,
    /// Quality at least 2/eta', which bounds every cycle ratio by eta'.
    Cycle,
}

/// Six significant digits.
fn num(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let digits = (5 - x.abs().log10().floor() as i32).max(0) as usize;
    format!("{x:.digits$}")
}

fn weights(spec: &str) -> Result<Weight, Error> {
    match spec {
        "tuned" => return Ok(Weight::tuned()),
        "unit" => return Ok(Weight::unit()),
        _ => {}
    }
    let text = if Path::new(spec).is_file() { std::fs::read_to_string(spec)? } else { spec.to_string() };
    let line = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .ok_or_else(|| Error::Parse(format!("no weights in {spec:?}")))?;
    line.strip_prefix("weights").unwrap_or(line).parse()
}

fn read_graph(file: &Path) -> Result<TransducerGraph, Error> {
    parse_graph(&std::fs::read_to_string(file)?)
}

fn radii(radius: f64, step: f64) -> Result<Vec<i64>, Error> {
    if !(radius >= 0.0) || !(step > 0.0) {
        return Err(Error::Contract("radius must be non-negative and step positive".into()));
    }
    let (r, s) = ((radius * SCALE as f64).round() as i64, (step * SCALE as f64).round() as i64);
    Ok((0..).map(|i| i * s).take_while(|&x| x <= r).collect())
}

/// What a command prints: plain text, and the same content for `--json`.
struct Out {
    text: String,
    json: serde_json::Value,
    ok: bool,
}

impl Out {
    fn new(text: impl Into<String>, json: impl Serialize) -> Out {
        Out { text: text.into(), json: serde_json::to_value(json).expect("serializable"), ok: true }
    }
}

fn run(cmd: Cmd) -> Result<Out, Error> {
    Ok(match cmd {
        Cmd::Act { word, string } => {
            let r = act(&word.parse()?, &BinaryString::parse(&string)?);
            Out::new(r.to_string(), json!({ "image": r.to_string() }))
        }
        Cmd::Reduce { word } => {
            let r = free_reduce(&word.parse()?);
            Out::new(r.to_string(), json!({ "reduced": r }))
        }
        Cmd::Minform { word, weights: ws } => {
            let omega = weights(&ws)?;
            let m = minimal_form(&word.parse()?, &omega)?;
            Out::new(format!("{m} {}", num(omega.weight_of(&m))), json!({ "minimal_form": m, "weight": omega.weight_of(&m) }))
        }
        Cmd::Trivial { word } => {
            let t = is_trivial(&word.parse()?);
            Out::new(t.to_string(), json!({ "trivial": t }))
        }
        Cmd::Psi { word } => {
            let w: Word = word.parse()?;
            if !in_h(&w) {
                return Err(Error::Contract(format!("{w} has an odd number of a")));
            }
            let p = psi(&w)?;
            Out::new(p.to_string(), json!({ "first": p.0, "second": p.1 }))
        }
        Cmd::PreimageBasic { u0, u1 } => {
            let v = psi_preimage_basic(&PairWord(u0.parse()?, u1.parse()?))?;
            Out::new(v.to_string(), json!({ "preimage": v, "length": v.len() }))
        }
        Cmd::Growth { radius, step, weights: ws, subgroup } => {
            let member = match subgroup {
                Sub::G => Subgroup::G,
                Sub::H => Subgroup::H,
                Sub::B => Subgroup::B,
            };
            let omegas = match ws {
                Some(s) => vec![weights(&s)?],
                None => vec![Weight::unit(), Weight::tuned()],
            };
            let rs = radii(radius, step)?;
            let tables = omegas.iter().map(|o| GrowthTable::at_radii(o, &rs, member, BUDGET)).collect::<Result<Vec<_>, _>>()?;
            let text = tables.iter().map(|t| format!("# {}\n{}", t.weight, t.to_csv())).collect::<Vec<_>>().join("\n");
            Out::new(text.trim_end(), &tables)
        }
        Cmd::CheckSbgp { radius, step, weights: ws } => {
            let omega = weights(&ws)?;
            let rows = check_sbgp(&omega, &radii(radius, step)?, BUDGET)?;
            let mut text = String::from("radius,lower,middle,upper,holds");
            for r in &rows {
                text.push_str(&format!("\n{},{},{},{},{}", r.radius, r.lower, r.middle, r.upper, r.holds));
            }
            let mut out = Out::new(text, &rows);
            out.ok = rows.iter().all(|r| r.holds);
            out
        }
        Cmd::VerifyGraph { file } => {
            let g = read_graph(&file)?;
            let r = verify_graph(&g);
            let mut text = format!(
                "states {} input {} transitions {} violations {}",
                r.states,
                r.input_states,
                r.transitions,
                r.violations.len()
            );
            for v in &r.violations {
                let at = v.line.map(|l| format!("line {l}: ")).unwrap_or_default();
                text.push_str(&format!("\n{at}{:?}: {}", v.kind, v.detail));
            }
            let mut out = Out::new(text, &r);
            out.ok = r.ok();
            out
        }
        Cmd::Eta { file, include_special, weights: ws } => {
            let g = read_graph(&file)?;
            let omega = match ws {
                Some(s) => weights(&s)?,
                None => g.weight,
            };
            let c = max_cycle_ratio(&g, &omega, include_special)?;
            let mut text = num(c.ratio);
            for (&t, &m) in c.transitions.iter().zip(&c.modes) {
                let tr = &g.transitions[t];
                let at = tr.line.map(|l| format!("line {l}")).unwrap_or_else(|| "generated".into());
                text.push_str(&format!("\n  {} {} -> {} ({at}{})", g.states[tr.from].buffer, tr.label, g.states[tr.to].buffer, if m { ", swapped" } else { "" }));
            }
            Out::new(text, &c)
        }
        Cmd::Alpha { eta } => {
            let a = alpha_of_eta(eta)?;
            Out::new(num(a), json!({ "eta": eta, "alpha": a }))
        }
        Cmd::Transduce { file, u0, u1 } => {
            let t = Transducer::new(&read_graph(&file)?)?;
            let r = t.run(&PairWord(u0.parse()?, u1.parse()?))?;
            let text = format!("{}\nweight {} bound {} (eta {} K {})", r.output, num(r.weight), num(r.bound), num(t.eta), num(t.k));
            Out::new(text, json!({ "result": r, "eta": t.eta, "k": t.k, "k_parts": t.k_parts }))
        }
        Cmd::Build { weights: ws, delta, eta_prime, max_len, special_len, threshold, state_budget, out, log } => {
            let mut p = BuildParams::new(weights(&ws)?);
            p.delta = delta;
            p.eta_prime = eta_prime;
            p.max_len = max_len;
            p.special_len = special_len;
            p.state_budget = state_budget;
            p.threshold = match threshold {
                Thr::Literal => Threshold::Literal,
                Thr::Cycle => Threshold::CycleBound,
            };
            let b = build(&p)?;
            let text = serialize_graph(&b.graph);
            if let Some(path) = log {
                let lines: Vec<String> = b.log.iter().map(|e| serde_json::to_string(e).expect("serializable")).collect();
                std::fs::write(path, lines.join("\n") + "\n")?;
            }
            let census = b.graph.census();
            match out {
                Some(path) => {
                    std::fs::write(&path, &text)?;
                    Out::new(format!("{census:?} written to {}", path.display()), json!({ "census": census, "out": path }))
                }
                None => Out::new(text.trim_end(), json!({ "census": census, "graph": text })),
            }
        }
        Cmd::Optimize { graph, weights: ws, schedule, seed, out, trace } => {
            if schedule != "default" {
                return Err(Error::Contract(format!("unknown schedule {schedule:?}; only \"default\" is defined")));
            }
            let g = read_graph(&graph)?;
            let start = match ws {
                Some(s) => weights(&s)?,
                None => g.weight,
            };
            let r = optimize_weights(&g, &start, &Schedule { seed, ..Schedule::default() })?;
            if let Some(path) = out {
                std::fs::write(path, format!("weights {}\n", r.weight))?;
            }
            let summary = format!("# eta {} from {} weights {}", num(r.eta), num(r.initial_eta), r.weight);
            let text = match trace {
                Some(path) => {
                    std::fs::write(path, r.trace_csv())?;
                    summary
                }
                None => format!("{}{summary}", r.trace_csv()),
            };
            Out::new(text, &r)
        }
        Cmd::Bound { n, eta, k, l, gamma_l } => {
            let b = lower_bound_log_gamma(n, &BoundParams { eta, k, l, gamma_l })?;
            Out::new(format!("log gamma >= {} (m {}, x {})", num(b.log_gamma), b.m, num(b.x)), &b)
        }
    })
}

fn kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) => "parse",
        Error::Graph { .. } => "graph",
        Error::Contract(_) => "contract",
        Error::Budget(_) => "budget",
        Error::Stuck(_) => "stuck",
        Error::NotInPsiH(_) => "not_in_psi_h",
        Error::Unbounded(_) => "unbounded",
        Error::NoBound(_) => "no_bound",
        Error::Io(_) => "io",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads.max(1)).build_global() {
        eprintln!("error: contract: {e}");
        return ExitCode::from(1);
    }
    match run(cli.cmd) {
        Ok(out) => {
            let text = if cli.json {
                serde_json::to_string_pretty(&json!({ "ok": out.ok, "result": out.json })).expect("serializable")
            } else {
                out.text
            };
            // a closed pipe is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let code = if matches!(e, Error::Io(_)) { 2 } else { 1 };
            if cli.json {
                let _ = writeln!(std::io::stdout().lock(), "{}", json!({ "ok": false, "error": kind(&e), "message": e.to_string() }));
            } else {
                eprintln!("error[{}]: {}", kind(&e), e.to_string().replace('\n', " "));
            }
            ExitCode::from(code)
        }
    }
}
