//! The `moessner` command line.
//!
//! Exit codes: 0 success or match, 1 verified mismatch, 2 usage or
//! runtime error. Every number is printed in decimal, including in JSON,
//! where values are strings.
//!
//! CSV columns:
//!
//! | command     | columns                                   |
//! |-------------|-------------------------------------------|
//! | eval        | `preset,params,value[,additions]`         |
//! | prefix      | `param,value`                             |
//! | compare     | `side,value,additions`                    |
//! | process     | `iteration,period,stage,values`           |
//! | inverse     | `step,values`                             |
//! | polygonal   | `n,quotient_sum,closed`                   |
//! | oeis-check  | `param,index,got,want,match`              |
//! | list-presets| `id,params,oracle,oeis,summary`           |
//!
//! Lists inside a CSV cell are separated by spaces.

use std::io::Write;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::engine::{evaluate, evaluate_counting, evaluate_memoized, SummationProgram};
use crate::numeric::Nat;
use crate::oeis::{self, FixtureSource};
use crate::presets::{self, PresetError, PresetParams};
use crate::process::{dp_power, run_process, InitRule};
use crate::{inverse, polygonal};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Plain,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "moessner", version, about = "Nested summations and Moessner's process")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Plain)]
    pub format: OutputFormat,
    /// Directory of `bNNNNNN.txt` files to use instead of the bundled ones.
    #[arg(long, global = true)]
    pub fixtures: Option<PathBuf>,
    /// Download b-files from `$OEIS_BASE_URL` instead of using fixtures.
    #[arg(long, global = true)]
    pub online: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a preset or a JSON program.
    Eval {
        #[arg(long, required_unless_present = "program")]
        preset: Option<String>,
        /// JSON file holding a summation program.
        #[arg(long, conflicts_with = "preset")]
        program: Option<PathBuf>,
        /// `K=V` pairs, comma separated or repeated.
        #[arg(long, num_args = 1..)]
        params: Vec<String>,
        /// Also report additions and leaves.
        #[arg(long, visible_alias = "count")]
        count_adds: bool,
        /// Use the (level, previous index) table evaluator.
        #[arg(long, conflicts_with = "count_adds")]
        memoized: bool,
    },
    /// Evaluate a preset over an inclusive range of one parameter.
    Prefix {
        #[arg(long)]
        preset: String,
        #[arg(long)]
        vary: String,
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long, num_args = 1..)]
        params: Vec<String>,
        #[arg(long)]
        memoized: bool,
    },
    /// Evaluate a preset two ways and compare.
    Compare {
        /// A preset id, or `dp_power`.
        #[arg(long)]
        preset: String,
        #[arg(long, num_args = 1..)]
        params: Vec<String>,
        #[arg(long, value_enum)]
        against: Against,
    },
    /// Run the list-based process.
    Process {
        #[arg(long)]
        exponent: u64,
        /// Number of final values.
        #[arg(long)]
        prefix: u64,
        /// `ones`, `const:C`, `indicator:A:D` or `succ`.
        #[arg(long, default_value = "ones")]
        init: String,
        /// Print every iteration.
        #[arg(long)]
        trace: bool,
    },
    /// Run the process backwards from `(x + 1)^n`.
    Inverse {
        #[arg(long)]
        exponent: u64,
        #[arg(long)]
        prefix: u64,
        /// Also check against the forward intermediates.
        #[arg(long)]
        check: bool,
    },
    /// Quotient sums against the polygonal closed form.
    Polygonal {
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 0)]
        from: u64,
        #[arg(long)]
        to: u64,
    },
    /// Compare a preset prefix with a b-file.
    OeisCheck {
        #[arg(long)]
        preset: String,
        /// Pick one of several manifest lines for the preset.
        #[arg(long)]
        a_number: Option<String>,
        #[arg(long)]
        from: Option<u64>,
        #[arg(long, default_value_t = 10)]
        count: u64,
    },
    /// List the preset catalog.
    ListPresets,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Against {
    Oracle,
    Memoized,
    Stolid,
    Dp,
}

/// Outcome of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    Mismatch,
}

impl Outcome {
    fn of(ok: bool) -> Self {
        if ok {
            Outcome::Ok
        } else {
            Outcome::Mismatch
        }
    }
}

pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(&cli, &mut out) {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::Mismatch) => 1,
        Err(e) if is_broken_pipe(&e) => 0,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e:#}");
            2
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        let io = c
            .downcast_ref::<std::io::Error>()
            .or_else(|| c.downcast_ref::<csv::Error>().and_then(|e| match e.kind() {
                csv::ErrorKind::Io(io) => Some(io),
                _ => None,
            }));
        io.is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
    })
}

fn parse_params(items: &[String]) -> Result<PresetParams, PresetError> {
    PresetParams::parse(&items.join(","))
}

fn params_json(p: &PresetParams) -> Value {
    Value::Object(p.pairs().into_iter().map(|(k, v)| (k, Value::String(v))).collect())
}

fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::Writer::from_writer(out)
}

fn spaced(values: &[Nat]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn commas(values: &[Nat]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn json_line<W: Write>(out: &mut W, v: &Value) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string(v)?)?;
    Ok(())
}

fn scalar(p: &PresetParams, name: &str) -> Result<u64> {
    p.scalars
        .get(name)
        .ok_or_else(|| anyhow!("missing parameter `{name}`"))?
        .to_u64()
        .ok_or_else(|| anyhow!("parameter `{name}` is too large"))
}

/// Runs a parsed command, writing results to `out`.
pub fn run<W: Write>(cli: &Cli, out: &mut W) -> Result<Outcome> {
    let fmt = cli.format;
    match &cli.command {
        Command::Eval {
            preset,
            program,
            params,
            count_adds,
            memoized,
        } => {
            let params = parse_params(params)?;
            let (label, prog) = match (preset, program) {
                (Some(id), _) => (id.clone(), presets::build(id, &params)?),
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    let prog: SummationProgram =
                        serde_json::from_str(&text).context("parsing program")?;
                    prog.validate()?;
                    ("program".to_string(), prog)
                }
                (None, None) => bail!("either --preset or --program is required"),
            };
            let (value, report) = if *count_adds {
                let r = evaluate_counting(&prog)?;
                (r.value.clone(), Some(r))
            } else if *memoized {
                (evaluate_memoized(&prog)?, None)
            } else {
                (evaluate(&prog)?, None)
            };
            match fmt {
                OutputFormat::Plain => {
                    writeln!(out, "{value}")?;
                    if let Some(r) = &report {
                        writeln!(out, "additions {}", r.additions)?;
                        writeln!(out, "leaves {}", r.leaves)?;
                    }
                }
                OutputFormat::Csv => {
                    let mut w = csv_writer(out);
                    let mut header = vec!["preset", "params", "value"];
                    let ps = params.to_string();
                    let v = value.to_string();
                    let mut row = vec![label.clone(), ps, v];
                    if let Some(r) = &report {
                        header.push("additions");
                        row.push(r.additions.to_string());
                    }
                    w.write_record(&header)?;
                    w.write_record(&row)?;
                    w.flush()?;
                }
                OutputFormat::Json => {
                    let mut obj = Map::new();
                    obj.insert("preset".into(), json!(label));
                    obj.insert("params".into(), params_json(&params));
                    obj.insert("value".into(), json!(value.to_string()));
                    if let Some(r) = &report {
                        obj.insert("additions".into(), json!(r.additions.to_string()));
                        obj.insert("leaves".into(), json!(r.leaves.to_string()));
                    }
                    json_line(out, &Value::Object(obj))?;
                }
            }
            Ok(Outcome::Ok)
        }

        Command::Prefix {
            preset,
            vary,
            from,
            to,
            params,
            memoized,
        } => {
            let base = parse_params(params)?;
            presets::info(preset)?;
            let mut rows = Vec::new();
            for v in *from..=*to {
                let mut p = base.clone();
                p.set(vary, v);
                let prog = presets::build(preset, &p)?;
                let value = if *memoized {
                    evaluate_memoized(&prog)?
                } else {
                    evaluate(&prog)?
                };
                rows.push((v, value));
            }
            match fmt {
                OutputFormat::Plain => {
                    if !rows.is_empty() {
                        let vals: Vec<Nat> = rows.iter().map(|(_, v)| v.clone()).collect();
                        writeln!(out, "{}", commas(&vals))?;
                    }
                }
                OutputFormat::Csv => {
                    let mut w = csv_writer(out);
                    w.write_record([vary.as_str(), "value"])?;
                    for (p, v) in &rows {
                        w.write_record([p.to_string(), v.to_string()])?;
                    }
                    w.flush()?;
                }
                OutputFormat::Json => {
                    let values: Vec<Value> = rows
                        .iter()
                        .map(|(p, v)| json!({ "param": p.to_string(), "value": v.to_string() }))
                        .collect();
                    json_line(
                        out,
                        &json!({
                            "preset": preset,
                            "vary": vary,
                            "params": params_json(&base),
                            "values": values,
                        }),
                    )?;
                }
            }
            Ok(Outcome::Ok)
        }

        Command::Compare {
            preset,
            params,
            against,
        } => {
            let params = parse_params(params)?;
            let (left, right) = compare_sides(preset, &params, *against)?;
            let ok = left.value == right.value;
            let sides = [("left", &left), ("right", &right)];
            match fmt {
                OutputFormat::Plain => {
                    for (name, s) in sides {
                        writeln!(out, "{name} {} = {} (additions {})", s.label, s.value, s.adds())?;
                    }
                    writeln!(out, "{}", if ok { "match" } else { "mismatch" })?;
                }
                OutputFormat::Csv => {
                    let mut w = csv_writer(out);
                    w.write_record(["side", "value", "additions"])?;
                    for (_, s) in sides {
                        w.write_record([s.label.clone(), s.value.to_string(), s.adds()])?;
                    }
                    w.flush()?;
                }
                OutputFormat::Json => {
                    let side = |s: &Side| {
                        json!({
                            "label": s.label,
                            "value": s.value.to_string(),
                            "additions": s.additions.map(|a| a.to_string()),
                        })
                    };
                    json_line(
                        out,
                        &json!({
                            "preset": preset,
                            "params": params_json(&params),
                            "left": side(&left),
                            "right": side(&right),
                            "match": ok,
                        }),
                    )?;
                }
            }
            Ok(Outcome::of(ok))
        }

        Command::Process {
            exponent,
            prefix,
            init,
            trace,
        } => {
            let rule = InitRule::parse(init).ok_or_else(|| anyhow!("cannot parse init `{init}`"))?;
            let (row, tr) = run_process(*exponent, *prefix, &rule)?;
            match fmt {
                OutputFormat::Plain => {
                    if *trace {
                        for s in &tr.steps {
                            writeln!(out, "# period {}", s.period)?;
                            writeln!(out, "before   {}", commas(&s.before.values))?;
                            writeln!(out, "filtered {}", commas(&s.filtered.values))?;
                            writeln!(out, "summed   {}", commas(&s.summed.values))?;
                        }
                    }
                    writeln!(out, "{}", commas(&row.values))?;
                }
                OutputFormat::Csv => {
                    let mut w = csv_writer(out);
                    w.write_record(["iteration", "period", "stage", "values"])?;
                    if *trace {
                        for s in &tr.steps {
                            let it = s.before.iteration.map(|i| i.to_string()).unwrap_or_default();
                            for (stage, r) in [("before", &s.before), ("filtered", &s.filtered), ("summed", &s.summed)] {
                                w.write_record([it.clone(), s.period.to_string(), stage.into(), spaced(&r.values)])?;
                            }
                        }
                    }
                    w.write_record(["".into(), "".into(), "final".to_string(), spaced(&row.values)])?;
                    w.flush()?;
                }
                OutputFormat::Json => {
                    let mut obj = json!({ "exponent": exponent, "init": rule.to_string(), "row": row });
                    if *trace {
                        obj["trace"] = serde_json::to_value(&tr)?;
                    }
                    json_line(out, &obj)?;
                }
            }
            Ok(Outcome::Ok)
        }

        Command::Inverse {
            exponent,
            prefix,
            check,
        } => {
            let tables = inverse::run_inverse(*exponent, *prefix)?;
            let ok = !*check || inverse::check_roundtrip(*exponent, *prefix);
            match fmt {
                OutputFormat::Plain => {
                    for t in &tables {
                        writeln!(out, "{}", commas(t))?;
                    }
                    if *check {
                        writeln!(out, "{}", if ok { "roundtrip ok" } else { "roundtrip mismatch" })?;
                    }
                }
                OutputFormat::Csv => {
                    let mut w = csv_writer(out);
                    w.write_record(["step", "values"])?;
                    for (i, t) in tables.iter().enumerate() {
                        w.write_record([i.to_string(), spaced(t)])?;
                    }
                    w.flush()?;
                }
                OutputFormat::Json => {
                    let rows: Vec<Vec<String>> = tables
                        .iter()
                        .map(|t| t.iter().map(|v| v.to_string()).collect())
                        .collect();
                    let mut obj = json!({ "exponent": exponent, "tables": rows });
                    if *check {
                        obj["roundtrip"] = json!(ok);
                    }
                    json_line(out, &obj)?;
                }
            }
            Ok(Outcome::of(ok))
        }

        Command::Polygonal { k, from, to } => {
            let mut rows = Vec::new();
            for n in *from..=*to {
                rows.push((n, polygonal::quotient_sum(*k, n)?, polygonal::polygonal_closed(*k, n)?));
            }
            let ok = rows.iter().all(|(_, a, b)| a == b);
            match fmt {
                OutputFormat::Plain => {
                    for (n, a, b) in &rows {
                        let mark = if a == b { "" } else { "  mismatch" };
                        writeln!(out, "{n} {a} {b}{mark}")?;
                    }
                }
                OutputFormat::Csv => {
                    let mut w = csv_writer(out);
                    w.write_record(["n", "quotient_sum", "closed"])?;
                    for (n, a, b) in &rows {
                        w.write_record([n.to_string(), a.to_string(), b.to_string()])?;
                    }
                    w.flush()?;
                }
                OutputFormat::Json => {
                    let rs: Vec<Value> = rows
                        .iter()
                        .map(|(n, a, b)| {
                            json!({ "n": n.to_string(), "quotient_sum": a.to_string(), "closed": b.to_string() })
                        })
                        .collect();
                    json_line(out, &json!({ "k": k, "rows": rs, "match": ok }))?;
                }
            }
            Ok(Outcome::of(ok))
        }

        Command::OeisCheck {
            preset,
            a_number,
            from,
            count,
        } => {
            let source = if cli.online {
                FixtureSource::Online
            } else if let Some(dir) = &cli.fixtures {
                FixtureSource::Directory(dir.clone())
            } else {
                FixtureSource::Bundled
            };
            let report = oeis::check_preset_prefix(preset, a_number.as_deref(), *from, *count, &source)?;
            match fmt {
                OutputFormat::Plain => {
                    for r in &report.rows {
                        let want = r.want.as_deref().unwrap_or("-");
                        let mark = if r.matches() { "ok" } else { "MISMATCH" };
                        writeln!(out, "{}={} [{}] {} {} {mark}", report.vary, r.param, r.index, r.got, want)?;
                    }
                    writeln!(
                        out,
                        "{} vs {}: {}/{} match",
                        report.preset,
                        report.a_number,
                        report.matched(),
                        report.rows.len()
                    )?;
                }
                OutputFormat::Csv => {
                    let mut w = csv_writer(out);
                    w.write_record(["param", "index", "got", "want", "match"])?;
                    for r in &report.rows {
                        w.write_record([
                            r.param.to_string(),
                            r.index.to_string(),
                            r.got.clone(),
                            r.want.clone().unwrap_or_default(),
                            r.matches().to_string(),
                        ])?;
                    }
                    w.flush()?;
                }
                OutputFormat::Json => json_line(out, &serde_json::to_value(&report)?)?,
            }
            Ok(Outcome::of(report.all_match()))
        }

        Command::ListPresets => {
            match fmt {
                OutputFormat::Plain => {
                    for p in presets::CATALOG {
                        let names: Vec<&str> = p.params.iter().map(|s| s.name).collect();
                        writeln!(out, "{:<20} {:<12} {}", p.id, names.join(","), p.summary)?;
                    }
                }
                OutputFormat::Csv => {
                    let mut w = csv_writer(out);
                    w.write_record(["id", "params", "oracle", "oeis", "summary"])?;
                    for p in presets::CATALOG {
                        let names: Vec<&str> = p.params.iter().map(|s| s.name).collect();
                        w.write_record([p.id, &names.join(" "), p.oracle, p.oeis.unwrap_or(""), p.summary])?;
                    }
                    w.flush()?;
                }
                OutputFormat::Json => json_line(out, &presets::list())?,
            }
            Ok(Outcome::Ok)
        }
    }
}

struct Side {
    label: String,
    value: Nat,
    additions: Option<u64>,
}

impl Side {
    fn adds(&self) -> String {
        self.additions.map_or_else(|| "n/a".to_string(), |a| a.to_string())
    }
}

fn counted(label: &str, prog: &SummationProgram) -> Result<Side> {
    let r = evaluate_counting(prog)?;
    Ok(Side {
        label: label.to_string(),
        value: r.value,
        additions: Some(r.additions),
    })
}

fn compare_sides(preset: &str, params: &PresetParams, against: Against) -> Result<(Side, Side)> {
    if preset == "dp_power" {
        let (x, n) = (scalar(params, "x")?, scalar(params, "n")?);
        let r = dp_power(x, n);
        let left = Side {
            label: "dp_power".into(),
            value: r.value,
            additions: Some(r.additions),
        };
        let right = match against {
            Against::Oracle => Side {
                label: "oracle".into(),
                value: crate::oracles::pow_fast(&Nat::from(x + 1), n),
                additions: None,
            },
            Against::Stolid => counted("moessner_stolid", &presets::build("moessner_stolid", params)?)?,
            Against::Memoized | Against::Dp => {
                let prog = presets::build("moessner", params)?;
                Side {
                    label: "moessner memoized".into(),
                    value: evaluate_memoized(&prog)?,
                    additions: None,
                }
            }
        };
        return Ok((left, right));
    }
    let prog = presets::build(preset, params)?;
    std::thread::scope(|s| {
        let left = s.spawn(|| counted(preset, &prog));
        let right = match against {
            Against::Oracle => Side {
                label: "oracle".into(),
                value: presets::expected(preset, params)?,
                additions: None,
            },
            Against::Memoized => Side {
                label: "memoized".into(),
                value: evaluate_memoized(&prog)?,
                additions: None,
            },
            Against::Stolid => {
                let mut p = PresetParams::new();
                p.set("x", scalar(params, "x")?);
                p.set("n", scalar(params, "n")?);
                counted("moessner_stolid", &presets::build("moessner_stolid", &p)?)?
            }
            Against::Dp => {
                let r = dp_power(scalar(params, "x")?, scalar(params, "n")?);
                Side {
                    label: "dp_power".into(),
                    value: r.value,
                    additions: Some(r.additions),
                }
            }
        };
        let left = left.join().map_err(|_| anyhow!("evaluation panicked"))??;
        Ok((left, right))
    })
}
