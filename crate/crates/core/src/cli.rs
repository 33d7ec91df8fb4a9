//! Command dispatch behind the `horizon` binary.
//!
//! [`run`] never panics on bad input and never touches the process: it
//! returns the exit code with the text for stdout and stderr. Findings such
//! as an infeasible correlation set or a rejected chain exit 0; unreadable or
//! malformed input exits 2.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    diagonal_measurement, find_matching_row, lawvere_check, FixedPointReport, MeasurementTable, OutcomeMap,
};
use crate::error::{Error, Result};
use crate::lhv::{self, model_report, CorrelationSet, HiddenVariableModel, LambdaState, ModelReport, RationalValue};
use crate::outcome::Outcome;
use crate::quantum::{
    born, certain_conditionals, change_basis, describe_probability, hardy_state, parse_settings, recognise_fraction,
    Basis, QubitPairState, Settings,
};
use crate::reasoner::{
    epr_demo, fr_demo, hardy_demo, validate_chain, validate_step, ReasoningChain, StepReport, Trace, Verdict,
};
use crate::toy::{entangled_state, simulate, EpistemicState, MeasurementRecord, ObservableId, Proposition};

/// Seed used by `toy-sim` when none is given.
pub const DEFAULT_SEED: u64 = 0;
/// The bipartite information bound applied by `validate`.
pub const DEFAULT_INFO_BOUND: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Table,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    /// Diagonal measurement of a table file, or of the built-in 5x5 example.
    Diagonal {
        table: Option<PathBuf>,
    },
    ToySim {
        script: PathBuf,
    },
    /// `--correlations` checks feasibility; `--model` reports on a model;
    /// neither lists the sixteen deterministic vertices.
    Bell {
        correlations: Option<String>,
        model: Option<PathBuf>,
    },
    Hardy {
        settings: Option<String>,
    },
    Fr,
    Epr,
    Validate {
        chain: PathBuf,
        state: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub seed: Option<u64>,
    pub output_format: OutputFormat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(config: &RunConfig) -> RunOutput {
    match dispatch(config) {
        Ok(stdout) => RunOutput {
            exit_code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => RunOutput {
            exit_code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn dispatch(config: &RunConfig) -> Result<String> {
    let json = config.output_format == OutputFormat::Json;
    match &config.command {
        Command::Diagonal { table } => {
            let report = diagonal(table.as_deref())?;
            Ok(if json { to_json(&report) } else { report.table() })
        }
        Command::ToySim { script } => {
            let records = toy_sim(script, config.seed.unwrap_or(DEFAULT_SEED))?;
            Ok(if json {
                json_lines(&records)
            } else {
                records_table(&records)
            })
        }
        Command::Bell { correlations, model } => {
            let report = bell(correlations.as_deref(), model.as_deref())?;
            Ok(if json { to_json(&report) } else { report.table() })
        }
        Command::Hardy { settings } => {
            let settings = settings.as_deref().map(parse_settings).transpose()?;
            let report = hardy(settings.unwrap_or((Basis::X, Basis::X)))?;
            Ok(if json { to_json(&report) } else { report.table() })
        }
        Command::Fr => Ok(trace_output(&fr_demo(), json)),
        Command::Epr => Ok(trace_output(&epr_demo(), json)),
        Command::Validate { chain, state } => {
            let report = validate(chain, state.as_deref())?;
            Ok(if json { to_json(&report) } else { report.table() })
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Re-labels a parse error with the file it came from.
fn in_file<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { location, message } => Error::parse(format!("{}: {location}", path.display()), message),
        io @ Error::Io { .. } => io,
        other => Error::parse(path.display().to_string(), other.to_string()),
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn json_lines<T: Serialize>(items: &[T]) -> String {
    items
        .iter()
        .map(|i| serde_json::to_string(i).expect("records serialize") + "\n")
        .collect()
}

fn signs(outcomes: &[Outcome]) -> String {
    outcomes.iter().map(|o| o.symbol()).collect()
}

// ---- diagonal ----

#[derive(Debug, Clone, Serialize)]
pub struct DiagonalReport {
    pub table: Vec<Vec<i8>>,
    pub diagonal: Vec<Outcome>,
    pub diagonal_measurement: Vec<Outcome>,
    pub matching_row: Option<usize>,
    pub checks: Vec<FixedPointReport>,
}

const EXAMPLE_TABLE: &str = "\
+ - + + +
+ - + - -
- + - - -
+ - - + +
- - - + +
";

pub fn diagonal(path: Option<&Path>) -> Result<DiagonalReport> {
    let table = match path {
        Some(p) => in_file(p, MeasurementTable::parse(&read(p)?))?,
        None => MeasurementTable::from_grid(EXAMPLE_TABLE)?,
    };
    let g = diagonal_measurement(&table)?;
    let matching_row = find_matching_row(&table, &g)?;
    let checks = [OutcomeMap::Negation, OutcomeMap::Identity]
        .into_iter()
        .map(|alpha| lawvere_check(&table, alpha))
        .collect::<Result<Vec<_>>>()?;
    let diag = (1..=table.n_states())
        .map(|k| table.get(k, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(DiagonalReport {
        table: table.to_values(),
        diagonal: diag,
        diagonal_measurement: g.outcomes().to_vec(),
        matching_row,
        checks,
    })
}

impl DiagonalReport {
    fn table(&self) -> String {
        let mut s = String::new();
        for (i, row) in self.table.iter().enumerate() {
            let cells: String = row.iter().map(|v| if *v > 0 { " +" } else { " -" }).collect();
            let _ = writeln!(s, "m{:<3}{cells}", i + 1);
        }
        let _ = writeln!(s, "diagonal {}", signs(&self.diagonal));
        let _ = writeln!(s, "m_g      {}", signs(&self.diagonal_measurement));
        match self.matching_row {
            None => s.push_str("m_g matches no row\n"),
            Some(r) => {
                let _ = writeln!(s, "m_g equals row {r}");
            }
        }
        for c in &self.checks {
            let _ = writeln!(
                s,
                "alpha = {}: matching rows {:?}, fixed points {}, contradiction {}",
                c.alpha,
                c.matching_rows,
                if c.alpha_fixed_points.is_empty() {
                    "none".to_string()
                } else {
                    signs(&c.alpha_fixed_points)
                },
                c.contradiction
            );
        }
        s
    }
}

// ---- toy-sim ----

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Script {
    initial: Initial,
    measure: Vec<ObservableId>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Initial {
    Named(String),
    State(EpistemicState),
}

/// Script: `{"initial": <state> | "entangled", "measure": ["z_B", ...]}`.
pub fn toy_sim(path: &Path, seed: u64) -> Result<Vec<MeasurementRecord>> {
    let text = read(path)?;
    let script: Script = in_file(
        path,
        serde_json::from_str(&text)
            .map_err(|e| Error::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string())),
    )?;
    let initial = match script.initial {
        Initial::Named(n) if n == "entangled" => entangled_state(),
        Initial::Named(n) => {
            return Err(Error::parse(
                path.display().to_string(),
                format!("unknown initial state {n:?}"),
            ));
        }
        Initial::State(s) => s,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    in_file(path, simulate(&initial, &script.measure, &mut rng))
}

fn records_table(records: &[MeasurementRecord]) -> String {
    let mut s = String::new();
    for (i, r) in records.iter().enumerate() {
        let _ = writeln!(
            s,
            "{:>3}. {} -> {:+} ({}) {} => {}",
            i + 1,
            r.observable,
            r.outcome.value(),
            if r.forced { "entailed" } else { "random" },
            r.pre_state,
            r.post_state
        );
    }
    s
}

// ---- bell ----

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum BellReport {
    Feasibility {
        correlations: [RationalValue; 4],
        chsh: RationalValue,
        chsh_variants: Vec<RationalValue>,
        feasible: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        witness: Option<ModelReport>,
    },
    Model(ModelReport),
    Vertices {
        vertices: Vec<VertexEntry>,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct VertexEntry {
    pub index: usize,
    pub values: [Outcome; 4],
    pub chsh: RationalValue,
}

pub fn bell(correlations: Option<&str>, model: Option<&Path>) -> Result<BellReport> {
    match (correlations, model) {
        (Some(_), Some(_)) => Err(Error::domain("give either --correlations or --model, not both")),
        (Some(text), None) => {
            let c = CorrelationSet::parse(text)?;
            let witness = lhv::feasible(&c);
            Ok(BellReport::Feasibility {
                correlations: c.values().map(RationalValue::from),
                chsh: (&c.chsh()).into(),
                chsh_variants: c.chsh_variants().iter().map(RationalValue::from).collect(),
                feasible: witness.is_some(),
                witness: witness.as_ref().map(model_report),
            })
        }
        (None, Some(path)) => {
            let m = in_file(path, HiddenVariableModel::from_json(&read(path)?))?;
            Ok(BellReport::Model(model_report(&m)))
        }
        (None, None) => Ok(BellReport::Vertices {
            vertices: LambdaState::all()
                .map(|l| VertexEntry {
                    index: l.index(),
                    values: l.values(),
                    chsh: (&lhv::chsh(&HiddenVariableModel::point_mass(l))).into(),
                })
                .collect(),
        }),
    }
}

fn model_table(s: &mut String, m: &ModelReport) {
    let probs: Vec<String> = m
        .probabilities
        .iter()
        .enumerate()
        .filter(|(_, p)| p.as_str() != "0")
        .map(|(i, p)| format!("p{}={p}", i + 1))
        .collect();
    let _ = writeln!(s, "  weights: {}", probs.join(" "));
    for e in &m.expectations {
        let _ = writeln!(s, "  <{}> = {} ({})", e.pair, e.value.exact, e.value.decimal);
    }
    for e in &m.marginals {
        let _ = writeln!(
            s,
            "  P({}={:+}) = {} ({})",
            e.observable,
            e.outcome.value(),
            e.probability.exact,
            e.probability.decimal
        );
    }
    let _ = writeln!(s, "  CHSH = {} ({})", m.chsh.exact, m.chsh.decimal);
}

impl BellReport {
    fn table(&self) -> String {
        let mut s = String::new();
        match self {
            BellReport::Feasibility {
                correlations,
                chsh,
                chsh_variants,
                feasible,
                witness,
            } => {
                let names = ["x_A x_B", "x_A z_B", "z_A x_B", "z_A z_B"];
                for (n, v) in names.iter().zip(correlations) {
                    let _ = writeln!(s, "<{n}> = {} ({})", v.exact, v.decimal);
                }
                let _ = writeln!(s, "CHSH = {} ({})", chsh.exact, chsh.decimal);
                let vs: Vec<&str> = chsh_variants.iter().map(|v| v.exact.as_str()).collect();
                let _ = writeln!(s, "all CHSH forms: {}", vs.join(", "));
                if *feasible {
                    s.push_str("feasible: a local hidden-variable model reproduces these correlations\n");
                } else {
                    s.push_str("infeasible: no local hidden-variable model reproduces these correlations\n");
                }
                if let Some(w) = witness {
                    s.push_str("witness model:\n");
                    model_table(&mut s, w);
                }
            }
            BellReport::Model(m) => {
                s.push_str("model:\n");
                model_table(&mut s, m);
            }
            BellReport::Vertices { vertices } => {
                s.push_str("lambda  x_A z_A x_B z_B  CHSH\n");
                for v in vertices {
                    let vals: Vec<String> = v.values.iter().map(|o| format!("{:>3}", o.symbol())).collect();
                    let _ = writeln!(s, "{:>6} {}  {:>4}", v.index, vals.join(" "), v.chsh.exact);
                }
            }
        }
        s
    }
}

// ---- hardy ----

#[derive(Debug, Clone, Serialize)]
pub struct AmplitudeEntry {
    pub outcome: String,
    pub amplitude: [f64; 2],
    pub exact: String,
    pub probability: f64,
    pub probability_exact: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Expansion {
    pub basis: Settings,
    pub terms: Vec<AmplitudeEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HardyReport {
    pub expansions: Vec<Expansion>,
    pub settings: Settings,
    pub outcome_table: Vec<AmplitudeEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certain_conditionals: Option<Vec<Proposition>>,
    pub p_h: f64,
    pub p_h_exact: String,
    pub demo: Trace,
}

fn basis_label(b: Basis) -> String {
    match b {
        Basis::Z => "z".into(),
        Basis::X => "x".into(),
        Basis::Angle(t) => format!("angle({t})"),
    }
}

/// `sqrt(p)` with its sign, for real amplitudes whose square is a small
/// fraction.
fn describe_amplitude(a: Complex64) -> String {
    if a.im.abs() > 1e-12 {
        return format!("{}{:+}i", a.re, a.im);
    }
    let sign = if a.re < 0.0 { "-" } else { "" };
    match recognise_fraction(a.re * a.re, 1000, 1e-12) {
        Some((0, _)) => "0".into(),
        Some((1, 1)) => format!("{sign}1"),
        Some((p, q)) => format!("{sign}sqrt({p}/{q})"),
        None => format!("{}", a.re),
    }
}

fn expansion(state: &QubitPairState, settings: Settings) -> Vec<AmplitudeEntry> {
    let t = change_basis(state, settings);
    let (la, lb) = (basis_label(settings.0), basis_label(settings.1));
    let mut out = Vec::with_capacity(4);
    for a in Outcome::ALL {
        for b in Outcome::ALL {
            let amp = t.amplitude(a, b);
            let p = amp.norm_sqr();
            out.push(AmplitudeEntry {
                outcome: format!("{la}_A^{} {lb}_B^{}", a.symbol(), b.symbol()),
                amplitude: [amp.re, amp.im],
                exact: describe_amplitude(amp),
                probability: p,
                probability_exact: describe_probability(p),
            });
        }
    }
    out
}

pub fn hardy(settings: Settings) -> Result<HardyReport> {
    let h = hardy_state();
    let expansions = [
        (Basis::Z, Basis::Z),
        (Basis::X, Basis::X),
        (Basis::X, Basis::Z),
        (Basis::Z, Basis::X),
    ]
    .into_iter()
    .map(|basis| Expansion {
        basis,
        terms: expansion(&h, basis),
    })
    .collect();
    let certain = match (settings.0.axis(), settings.1.axis()) {
        (Some(_), Some(_)) => Some(certain_conditionals(&h, settings)?),
        _ => None,
    };
    let p_h = born(&h, (Basis::X, Basis::X)).p(Outcome::Minus, Outcome::Minus);
    Ok(HardyReport {
        expansions,
        settings,
        outcome_table: expansion(&h, settings),
        certain_conditionals: certain,
        p_h,
        p_h_exact: describe_probability(p_h),
        demo: hardy_demo(),
    })
}

fn terms_table(s: &mut String, terms: &[AmplitudeEntry]) {
    for t in terms {
        let _ = writeln!(
            s,
            "  |{}>  amplitude {:<14} P = {} ({})",
            t.outcome, t.exact, t.probability_exact, t.probability
        );
    }
}

impl HardyReport {
    fn table(&self) -> String {
        let mut s = String::new();
        for e in &self.expansions {
            let _ = writeln!(s, "basis ({}, {}):", basis_label(e.basis.0), basis_label(e.basis.1));
            terms_table(&mut s, &e.terms);
        }
        let _ = writeln!(
            s,
            "outcome table for ({}, {}):",
            basis_label(self.settings.0),
            basis_label(self.settings.1)
        );
        terms_table(&mut s, &self.outcome_table);
        if let Some(cs) = &self.certain_conditionals {
            let listed: Vec<String> = cs.iter().map(|c| format!("({c})")).collect();
            let _ = writeln!(
                s,
                "certain conditionals: {}",
                if listed.is_empty() {
                    "none".into()
                } else {
                    listed.join(" ")
                }
            );
        }
        s.push_str(&trace_table(&self.demo));
        s
    }
}

// ---- demos and validate ----

fn trace_output(t: &Trace, json: bool) -> String {
    if json {
        to_json(t)
    } else {
        trace_table(t)
    }
}

fn steps_table(s: &mut String, steps: &[StepReport]) {
    for r in steps {
        let st = &r.step;
        let _ = writeln!(
            s,
            "step {}: context {}, premise {}, conclusion ({}), basis ({}, {}): {}",
            st.id,
            st.context,
            st.premise,
            st.conclusion,
            basis_label(st.source.0),
            basis_label(st.source.1),
            r.verdict
        );
    }
}

fn trace_table(t: &Trace) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "chain {}:", t.name);
    steps_table(&mut s, &t.steps);
    let _ = writeln!(s, "fused conclusion ({}): {}", t.fused_conclusion, t.chain_verdict);
    for c in &t.counterfactuals {
        let _ = writeln!(
            s,
            "state {}: vary {}, hold {}: counterfactual {}",
            c.state,
            c.vary,
            c.hold,
            if c.supported { "supported" } else { "not supported" }
        );
    }
    if let Some(c) = &t.counterexample {
        let _ = writeln!(
            s,
            "P({}_A^{}, {}_B^{}) = {} ({})",
            basis_label(c.settings.0),
            c.outcome.0.symbol(),
            basis_label(c.settings.1),
            c.outcome.1.symbol(),
            c.exact,
            c.probability
        );
    }
    s
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidateReport {
    pub state: QubitPairState,
    pub info_bound: usize,
    pub steps: Vec<StepReport>,
    pub fused_conclusion: Proposition,
    pub chain_verdict: Verdict,
}

/// Checks a chain file against a state file, the Hardy state by default.
pub fn validate(chain: &Path, state: Option<&Path>) -> Result<ValidateReport> {
    let parsed = in_file(chain, ReasoningChain::from_json(&read(chain)?))?;
    let state = match state {
        Some(p) => in_file(p, QubitPairState::from_json(&read(p)?))?,
        None => hardy_state(),
    };
    let steps = parsed
        .steps
        .iter()
        .map(|st| {
            Ok(StepReport {
                step: st.clone(),
                verdict: validate_step(st, &state)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let chain_verdict = validate_chain(&parsed, &state, DEFAULT_INFO_BOUND)?;
    Ok(ValidateReport {
        state,
        info_bound: DEFAULT_INFO_BOUND,
        steps,
        fused_conclusion: parsed.fused_conclusion,
        chain_verdict,
    })
}

impl ValidateReport {
    fn table(&self) -> String {
        let mut s = String::new();
        steps_table(&mut s, &self.steps);
        let _ = writeln!(
            s,
            "fused conclusion ({}) under a {}-bit bound: {}",
            self.fused_conclusion, self.info_bound, self.chain_verdict
        );
        s
    }
}
