use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};

use gjl_core::calculus::{
    check_derivation, check_prop_derivation, deduction_transform, lift, translate_derivation, CalculusId,
    ConstantSpec, Derivation, PropJustification,
};
use gjl_core::canonical::{build_fragment, relevant_for, theorem_fragment, truth_lemma_check};
use gjl_core::decide::{
    conservativity_countermodel, conservativity_countermodel_m, decide_consequence, grid_oracle, ConsequenceQuery,
    Decision, DEFAULT_ATOM_CAP,
};
use gjl_core::fitting::GjModel;
use gjl_core::format;
use gjl_core::mkrtychev::GmModel;
use gjl_core::syntax::{parse_formula, parse_formulas, parse_term, star, Formula};
use gjl_core::{Assignment, EntailmentMode, Signature};

#[derive(Parser)]
#[command(name = "gjl", version, about = "Goedel justification logic toolkit")]
struct Cli {
    /// Output style.
    #[arg(long, global = true, value_enum, default_value_t = Style::Lines)]
    format: Style,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Style {
    Lines,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Parse formulas and print them normalised (or star-translated).
    Parse {
        formulas: Vec<String>,
        /// Read formulas from a file, one per line.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        star: bool,
    },
    /// Evaluate a formula in a Fitting model.
    EvalModel {
        model: PathBuf,
        /// World name; every world when omitted.
        #[arg(long)]
        world: Option<String>,
        #[arg(long)]
        formula: String,
    },
    /// Evaluate a formula in a Mkrtychev model.
    EvalMkrtychev {
        model: PathBuf,
        #[arg(long)]
        formula: String,
    },
    /// Report violated closure-condition instances.
    CheckModel {
        model: PathBuf,
        #[arg(long)]
        mkrtychev: bool,
    },
    /// List the model classes a model belongs to.
    Classify {
        model: PathBuf,
        #[arg(long)]
        mkrtychev: bool,
        /// Also check that the model respects this CS (`total`, `empty` or a file).
        #[arg(long)]
        cs: Option<String>,
        #[arg(long, default_value = "gj")]
        calculus: CalculusId,
    },
    /// Check a derivation file.
    CheckProof {
        file: PathBuf,
        #[command(flatten)]
        calc: CalcArgs,
    },
    /// Discharge an assumption from a derivation.
    Deduce {
        file: PathBuf,
        #[arg(long)]
        assumption: String,
        #[command(flatten)]
        calc: CalcArgs,
    },
    /// Internalise a derivation from premises x_i:φ_i.
    Lift {
        file: PathBuf,
        /// Comma-separated terms, one per premise.
        #[arg(long, value_delimiter = ',')]
        terms: Vec<String>,
        #[command(flatten)]
        calc: CalcArgs,
    },
    /// Star-translate a derivation and re-check it propositionally.
    Translate {
        file: PathBuf,
        #[command(flatten)]
        calc: CalcArgs,
    },
    /// Decide propositional Goedel consequence over star formulas.
    Decide {
        #[command(flatten)]
        query: QueryArgs,
        /// Use a uniform grid with this many steps instead of the chain.
        #[arg(long)]
        grid: Option<u64>,
    },
    /// Print a one-world countermodel for a non-consequence.
    Countermodel {
        #[command(flatten)]
        query: QueryArgs,
        /// Use this assignment instead of deciding a query.
        #[arg(long, conflicts_with = "goal")]
        assignment: Option<PathBuf>,
        #[arg(long)]
        mkrtychev: bool,
    },
    /// Build a canonical fragment and check the truth lemma for a formula.
    TruthLemma {
        /// Assignment files, one world each.
        #[arg(long = "assignment", required = true)]
        assignments: Vec<PathBuf>,
        #[arg(long)]
        formula: String,
        #[arg(long, default_value = "gj")]
        calculus: CalculusId,
        #[arg(long, default_value = "total")]
        cs: String,
        /// Print the fragment as a model file, check results as comments.
        #[arg(long)]
        export: bool,
    },
}

#[derive(Args)]
struct CalcArgs {
    /// Overrides the `calculus:` header.
    #[arg(long)]
    calculus: Option<CalculusId>,
    /// `total`, `empty` or a file; overrides the `cs:` header.
    #[arg(long)]
    cs: Option<String>,
}

#[derive(Args)]
struct QueryArgs {
    #[arg(long = "premise")]
    premises: Vec<String>,
    /// File with one premise per line.
    #[arg(long)]
    premises_file: Option<PathBuf>,
    #[arg(long)]
    goal: Option<String>,
    /// File holding the goal formula.
    #[arg(long, conflicts_with = "goal")]
    goal_file: Option<PathBuf>,
    #[arg(long, default_value = "leq")]
    mode: EntailmentMode,
    #[arg(long, env = "GJL_ATOM_CAP", default_value_t = DEFAULT_ATOM_CAP)]
    atom_cap: usize,
}

/// What a command produced: an exit code plus both renderings.
struct Report {
    code: u8,
    lines: Vec<String>,
    json: Json,
}

impl Report {
    fn ok(lines: Vec<String>, json: Json) -> Self {
        Report { code: 0, lines, json }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn formula(text: &str) -> Result<Formula> {
    parse_formula(text).map_err(|e| anyhow!("cannot parse `{text}`: {e}"))
}

fn cs_arg(calculus: CalculusId, spec: &str) -> Result<ConstantSpec> {
    let text = match spec.trim() {
        "total" | "empty" => spec.to_string(),
        path => read(Path::new(path))?,
    };
    format::parse_cs(calculus, &text).with_context(|| format!("bad constant specification `{spec}`"))
}

fn load_derivation(path: &Path, calc: &CalcArgs) -> Result<Derivation> {
    let file = format::parse_derivation(&read(path)?).with_context(|| format!("in {}", path.display()))?;
    let calculus = calc.calculus.or(file.calculus).unwrap_or(CalculusId::Gj);
    let spec = calc.cs.clone().or_else(|| file.cs.clone()).unwrap_or_else(|| "empty".to_string());
    let cs = cs_arg(calculus, &spec)?;
    Ok(file.into_derivation(calculus, cs))
}

fn load_gj(path: &Path) -> Result<GjModel> {
    format::parse_gj_model(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_gm(path: &Path) -> Result<GmModel> {
    format::parse_gm_model(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn text_lines(s: &str) -> Vec<String> {
    s.lines().map(str::to_string).collect()
}

impl QueryArgs {
    fn formulas(&self) -> Result<(Vec<Formula>, Formula)> {
        let mut premises = self.premises.iter().map(|p| formula(p)).collect::<Result<Vec<_>>>()?;
        if let Some(path) = &self.premises_file {
            let more = parse_formulas(&read(path)?)
                .map_err(|(line, e)| anyhow!("{} line {line}: {e}", path.display()))?;
            premises.extend(more);
        }
        let goal = match (&self.goal, &self.goal_file) {
            (Some(g), _) => formula(g)?,
            (None, Some(path)) => formula(read(path)?.trim())?,
            (None, None) => bail!("a goal is required (--goal or --goal-file)"),
        };
        Ok((premises, goal))
    }

    fn query(&self) -> Result<(Vec<Formula>, Formula, ConsequenceQuery)> {
        let (premises, goal) = self.formulas()?;
        let q = ConsequenceQuery::new(premises.iter().map(star).collect(), star(&goal), self.mode);
        Ok((premises, goal, q))
    }
}

fn assignment_json(a: &Assignment) -> Json {
    a.entries().map(|(atom, v)| (atom.to_string(), Json::String(v.to_string()))).collect::<serde_json::Map<_, _>>().into()
}

fn run(cmd: Command) -> Result<Report> {
    match cmd {
        Command::Parse { formulas, file, star: starred } => {
            let mut fs = formulas.iter().map(|f| formula(f)).collect::<Result<Vec<_>>>()?;
            if let Some(path) = file {
                fs.extend(parse_formulas(&read(&path)?).map_err(|(line, e)| anyhow!("{} line {line}: {e}", path.display()))?);
            }
            let lines: Vec<String> =
                fs.iter().map(|f| if starred { star(f).to_string() } else { f.to_string() }).collect();
            let json = fs
                .iter()
                .map(|f| json!({ "formula": f.to_string(), "star": star(f).to_string(), "depth": f.depth() }))
                .collect();
            Ok(Report::ok(lines, json))
        }
        Command::EvalModel { model, world, formula: text } => {
            let m = load_gj(&model)?;
            let f = formula(&text)?;
            let values = m.eval_all(&f)?;
            match world {
                Some(w) => {
                    let v = values[m.world_index(&w)?];
                    Ok(Report::ok(vec![v.to_string()], json!({ "world": w, "value": v.to_string() })))
                }
                None => {
                    let lines = m.worlds().iter().zip(&values).map(|(w, v)| format!("{w} {v}")).collect();
                    let json = m.worlds().iter().zip(&values).map(|(w, v)| json!({ "world": w, "value": v.to_string() }));
                    Ok(Report::ok(lines, json.collect()))
                }
            }
        }
        Command::EvalMkrtychev { model, formula: text } => {
            let v = load_gm(&model)?.eval(&formula(&text)?)?;
            Ok(Report::ok(vec![v.to_string()], json!({ "value": v.to_string() })))
        }
        Command::CheckModel { model, mkrtychev } => {
            let violations = if mkrtychev { load_gm(&model)?.check_closure() } else { load_gj(&model)?.check_closure() };
            let mut lines: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
            if lines.is_empty() {
                lines.push("OK".to_string());
            }
            let json = json!({ "violations": violations.iter().map(|v| v.to_string()).collect::<Vec<_>>() });
            Ok(Report { code: u8::from(!violations.is_empty()), lines, json })
        }
        Command::Classify { model, mkrtychev, cs, calculus } => {
            let cs = cs.map(|s| cs_arg(calculus, &s)).transpose()?;
            type Classified = (Vec<String>, Vec<(String, String)>, Option<bool>, Option<bool>);
            let (classes, failures, crisp, respects): Classified =
                if mkrtychev {
                    let m = load_gm(&model)?;
                    let r = m.classify();
                    let respects = cs.map(|cs| m.respects_cs(&cs)).transpose()?;
                    (
                        r.classes().iter().map(|c| c.to_string()).collect(),
                        r.failures.iter().map(|(c, w)| (c.name().to_string(), w.clone())).collect(),
                        None,
                        respects,
                    )
                } else {
                    let m = load_gj(&model)?;
                    let r = m.classify();
                    let respects = cs.map(|cs| m.respects_cs(&cs)).transpose()?;
                    (
                        r.classes().iter().map(|c| c.to_string()).collect(),
                        r.failures.iter().map(|(c, w)| (c.name().to_string(), w.clone())).collect(),
                        Some(r.crisp),
                        respects,
                    )
                };
            let mut lines = vec![format!(
                "classes: {}",
                if classes.is_empty() { "none".to_string() } else { classes.join(" ") }
            )];
            if let Some(c) = crisp {
                lines.push(format!("crisp: {}", if c { "yes" } else { "no" }));
            }
            if let Some(r) = respects {
                lines.push(format!("cs: {}", if r { "respected" } else { "violated" }));
            }
            lines.extend(failures.iter().map(|(c, w)| format!("fails {c}: {w}")));
            let json = json!({
                "classes": classes,
                "crisp": crisp,
                "respects_cs": respects,
                "failures": failures.iter().map(|(c, w)| json!({ "condition": c, "witness": w })).collect::<Vec<_>>(),
            });
            Ok(Report::ok(lines, json))
        }
        Command::CheckProof { file, calc } => {
            let d = load_derivation(&file, &calc)?;
            let checked = match check_derivation(&d) {
                Ok(c) => c,
                Err(e) => {
                    let json = json!({ "ok": false, "step": e.step().map(|i| i + 1), "error": e.to_string() });
                    return Ok(Report { code: 1, lines: vec![format!("invalid: {e}")], json });
                }
            };
            let mut lines = Vec::new();
            let mut axioms = Vec::new();
            for (i, s) in checked.schemas.iter().enumerate() {
                if let Some(s) = s {
                    lines.push(format!("step {}: {s}", i + 1));
                    axioms.push(json!({ "step": i + 1, "schema": s.to_string() }));
                }
            }
            lines.push(format!("OK ({} steps)", d.len()));
            let json = json!({ "ok": true, "steps": d.len(), "calculus": d.calculus.to_string(), "axioms": axioms });
            Ok(Report::ok(lines, json))
        }
        Command::Deduce { file, assumption, calc } => {
            let d = load_derivation(&file, &calc)?;
            let out = deduction_transform(&d, &formula(&assumption)?)?;
            let text = format::write_derivation(&out);
            let json = json!({ "steps": out.len(), "conclusion": out.conclusion().map(|f| f.to_string()), "derivation": text });
            Ok(Report::ok(text_lines(&text), json))
        }
        Command::Lift { file, terms, calc } => {
            let d = load_derivation(&file, &calc)?;
            let terms = terms
                .iter()
                .map(|t| parse_term(t.trim()).map_err(|e| anyhow!("cannot parse term `{t}`: {e}")))
                .collect::<Result<Vec<_>>>()?;
            let (t, out) = lift(&d, &terms)?;
            let text = format::write_derivation(&out);
            let mut lines = vec![format!("# term: {t}")];
            lines.extend(text_lines(&text));
            let json = json!({ "term": t.to_string(), "steps": out.len(), "derivation": text });
            Ok(Report::ok(lines, json))
        }
        Command::Translate { file, calc } => {
            let d = load_derivation(&file, &calc)?;
            let p = translate_derivation(&d)?;
            check_prop_derivation(&p).map_err(|e| anyhow!("translated derivation does not re-check: {e}"))?;
            let mut lines = Vec::new();
            for (i, th) in p.theorems.iter().enumerate() {
                lines.push(format!("theorem {}: {th}", i + 1));
            }
            for (f, j) in &p.steps {
                let j = match j {
                    PropJustification::Premise(i) => format!("premise {}", i + 1),
                    PropJustification::Axiom(s) => format!("axiom {s}"),
                    PropJustification::Theorem(i) => format!("theorem {}", i + 1),
                    PropJustification::Mp { minor, major } => format!("mp {} {}", minor + 1, major + 1),
                };
                lines.push(format!("{f} ; {j}"));
            }
            let json = json!({
                "premises": p.premises.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                "theorems": p.theorems.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                "steps": p.steps.iter().map(|(f, _)| f.to_string()).collect::<Vec<_>>(),
            });
            Ok(Report::ok(lines, json))
        }
        Command::Decide { query, grid } => {
            let (_, _, q) = query.query()?;
            let decision = match grid {
                Some(levels) => grid_oracle(&q, levels, query.atom_cap)?,
                None => decide_consequence(&q, query.atom_cap)?,
            };
            Ok(match decision {
                Decision::Valid => Report::ok(vec!["valid".to_string()], json!({ "valid": true })),
                Decision::Countermodel(a) => Report {
                    code: 1,
                    lines: text_lines(&format::write_assignment(&a)),
                    json: json!({ "valid": false, "countermodel": assignment_json(&a) }),
                },
            })
        }
        Command::Countermodel { query, assignment, mkrtychev } => {
            let (e, signature) = match assignment {
                Some(path) => {
                    let a = format::parse_assignment(&read(&path)?).with_context(|| format!("in {}", path.display()))?;
                    (a, Signature::new())
                }
                None => {
                    let (premises, goal, q) = query.query()?;
                    match decide_consequence(&q, query.atom_cap)? {
                        Decision::Valid => {
                            return Ok(Report {
                                code: 1,
                                lines: vec!["valid: no countermodel".to_string()],
                                json: json!({ "valid": true }),
                            })
                        }
                        Decision::Countermodel(a) => (a, Signature::covering(premises.iter().chain([&goal]))),
                    }
                }
            };
            let text = if mkrtychev {
                format::write_gm_model(&conservativity_countermodel_m(&e, signature))
            } else {
                format::write_gj_model(&conservativity_countermodel(&e, signature))
            };
            let json = json!({ "valid": false, "model": text });
            Ok(Report::ok(text_lines(&text), json))
        }
        Command::TruthLemma { assignments, formula: text, calculus, cs, export } => {
            let f = formula(&text)?;
            let cs = cs_arg(calculus, &cs)?;
            let evals = assignments
                .iter()
                .map(|p| format::parse_assignment(&read(p)?).with_context(|| format!("in {}", p.display())))
                .collect::<Result<Vec<_>>>()?;
            let theorems = theorem_fragment([&f], calculus, &cs);
            let frag = build_fragment(&evals, &theorems, &relevant_for([&f]))?;
            let canonical = frag.model.eval_all(&f)?;
            let mut lines = Vec::new();
            let mut rows = Vec::new();
            let mut all = true;
            for (w, name) in frag.model.worlds().iter().enumerate() {
                let holds = truth_lemma_check(&frag, w, &f)?;
                all &= holds;
                let direct = gjl_core::goedel::eval_prop(&frag.evaluations[w], &star(&f));
                lines.push(format!("{name}: {} {} {}", canonical[w], direct, if holds { "ok" } else { "MISMATCH" }));
                rows.push(json!({ "world": name, "canonical": canonical[w].to_string(), "star": direct.to_string(), "holds": holds }));
            }
            let model = format::write_gj_model(&frag.model);
            if export {
                // check results become comments so the output parses as a model
                lines = lines.into_iter().map(|l| format!("# {l}")).collect();
                lines.extend(text_lines(&model));
            }
            Ok(Report { code: u8::from(!all), lines, json: json!({ "worlds": rows, "model": export.then_some(model) }) })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let style = cli.format;
    match run(cli.command) {
        Ok(report) => {
            let mut out = io::stdout().lock();
            // a closed pipe is not worth a diagnostic
            let _ = match style {
                Style::Lines => report.lines.iter().try_for_each(|l| writeln!(out, "{l}")),
                Style::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report.json).expect("json")),
            };
            ExitCode::from(report.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
