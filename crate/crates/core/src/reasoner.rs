//! Inference chains that fuse conclusions drawn in different measurement
//! contexts.
//!
//! Each step is a conditional certified by a zero joint probability in one
//! product basis. A chain is accepted only if every step holds, the contexts
//! never put incompatible observables (`x_S` and `z_S` on the same subsystem)
//! side by side, and the premises it treats as definite fit the information
//! bound.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::outcome::Outcome;
use crate::quantum::{born, certain_conditionals, describe_probability, hardy_state, Basis, QubitPairState, Settings};
use crate::toy::{supports_counterfactual, EpistemicState, ObservableId, Proposition, Scope, System};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Agent(pub String);

impl Agent {
    pub fn new(name: impl Into<String>) -> Self {
        Agent(name.into())
    }
}

impl fmt::Display for Agent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Measurements actually performed together: one observable per agent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<Agent, ObservableId>", into = "BTreeMap<Agent, ObservableId>")]
pub struct Context {
    measured: BTreeMap<Agent, ObservableId>,
}

impl Context {
    pub fn new(measured: BTreeMap<Agent, ObservableId>) -> Result<Self> {
        for (agent, obs) in &measured {
            if obs.scope() == Scope::AB {
                return Err(Error::domain(format!(
                    "agent {agent} measures the correlation {obs}; contexts hold single-subsystem observables"
                )));
            }
        }
        let entries: Vec<_> = measured.iter().collect();
        for (i, (a, p)) in entries.iter().enumerate() {
            for (b, q) in &entries[i + 1..] {
                if !p.compatible_with(**q) {
                    return Err(Error::domain(format!(
                        "{a} measuring {p} and {b} measuring {q} are not co-measurable"
                    )));
                }
            }
        }
        Ok(Context { measured })
    }

    pub fn of(pairs: &[(&str, ObservableId)]) -> Result<Self> {
        Self::new(pairs.iter().map(|(a, o)| (Agent::new(*a), *o)).collect())
    }

    pub fn measured(&self) -> &BTreeMap<Agent, ObservableId> {
        &self.measured
    }

    pub fn measures(&self, obs: ObservableId) -> bool {
        self.measured.values().any(|o| *o == obs)
    }

    /// The first pair of measurements, one from each context, that cannot be
    /// performed together.
    pub fn conflict_with(&self, other: &Context) -> Option<Conflict> {
        for (a, p) in &self.measured {
            for (b, q) in &other.measured {
                if !p.compatible_with(*q) {
                    return Some(Conflict {
                        first: (a.clone(), *p),
                        second: (b.clone(), *q),
                    });
                }
            }
        }
        None
    }
}

impl TryFrom<BTreeMap<Agent, ObservableId>> for Context {
    type Error = Error;

    fn try_from(m: BTreeMap<Agent, ObservableId>) -> Result<Self> {
        Context::new(m)
    }
}

impl From<Context> for BTreeMap<Agent, ObservableId> {
    fn from(c: Context) -> Self {
        c.measured
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (a, o)) in self.measured.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}: {o}")?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Conflict {
    pub first: (Agent, ObservableId),
    pub second: (Agent, ObservableId),
}

impl Conflict {
    pub fn same_agent(&self) -> bool {
        self.first.0 == self.second.0
    }
}

/// `premise`, hence `conclusion` (which is conditioned on the premise),
/// read off the expansion of the state in the `source` product basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawStep")]
pub struct InferenceStep {
    pub id: String,
    pub context: Context,
    pub premise: Proposition,
    pub conclusion: Proposition,
    pub source: Settings,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStep {
    id: String,
    context: Context,
    premise: Proposition,
    conclusion: Proposition,
    source: Settings,
}

impl TryFrom<RawStep> for InferenceStep {
    type Error = Error;

    fn try_from(r: RawStep) -> Result<Self> {
        InferenceStep::new(r.id, r.context, r.premise, r.conclusion, r.source)
    }
}

impl InferenceStep {
    pub fn new(
        id: impl Into<String>,
        context: Context,
        premise: Proposition,
        conclusion: Proposition,
        source: Settings,
    ) -> Result<Self> {
        let id = id.into();
        if !premise.is_direct() {
            return Err(Error::domain(format!(
                "step {id}: premise {premise} must be unconditional"
            )));
        }
        if conclusion.premise() != Some(premise) {
            return Err(Error::domain(format!(
                "step {id}: conclusion {conclusion} is not conditioned on the premise {premise}"
            )));
        }
        if !context.measures(premise.observable) {
            return Err(Error::domain(format!(
                "step {id}: the premise observable {} is not measured in context {context}",
                premise.observable
            )));
        }
        for basis in [source.0, source.1] {
            if basis.axis().is_none() {
                return Err(Error::domain(format!(
                    "step {id}: source basis {basis} is neither z nor x"
                )));
            }
        }
        Ok(InferenceStep {
            id,
            context,
            premise,
            conclusion,
            source,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReasoningChain {
    pub steps: Vec<InferenceStep>,
    pub fused_conclusion: Proposition,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawChain {
    steps: Vec<InferenceStep>,
    fused_conclusion: Proposition,
}

impl ReasoningChain {
    pub fn new(steps: Vec<InferenceStep>, fused_conclusion: Proposition) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::domain("a reasoning chain needs at least one step"));
        }
        let mut seen = BTreeSet::new();
        for s in &steps {
            if !seen.insert(s.id.as_str()) {
                return Err(Error::domain(format!("duplicate step id {}", s.id)));
            }
        }
        Ok(ReasoningChain {
            steps,
            fused_conclusion,
        })
    }

    /// `{"steps": [...], "fused_conclusion": {...}}`, or a bare list of steps
    /// whose fused conclusion is taken to be the last step's conclusion.
    pub fn from_json(text: &str) -> Result<Self> {
        let loc =
            |e: serde_json::Error| Error::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string());
        if text.trim_start().starts_with('[') {
            let steps: Vec<InferenceStep> = serde_json::from_str(text).map_err(loc)?;
            let last = steps
                .last()
                .map(|s| s.conclusion)
                .ok_or_else(|| Error::domain("a reasoning chain needs at least one step"))?;
            Self::new(steps, last)
        } else {
            let raw: RawChain = serde_json::from_str(text).map_err(loc)?;
            Self::new(raw.steps, raw.fused_conclusion)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reason {
    IncompatibleContexts,
    InformationBoundExceeded,
    ConditionNotEntailed,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reason::IncompatibleContexts => "incompatible-contexts",
            Reason::InformationBoundExceeded => "information-bound-exceeded",
            Reason::ConditionNotEntailed => "condition-not-entailed",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub steps: (String, String),
    /// Primary reason first.
    pub reasons: Vec<Reason>,
    pub detail: String,
}

impl Violation {
    pub fn reason(&self) -> Reason {
        self.reasons[0]
    }

    pub fn has(&self, r: Reason) -> bool {
        self.reasons.contains(&r)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<Violation>,
}

impl Verdict {
    pub fn valid() -> Self {
        Verdict {
            valid: true,
            violation: None,
        }
    }

    fn invalid(v: Violation) -> Self {
        Verdict {
            valid: false,
            violation: Some(v),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => f.write_str("valid"),
            Some(v) => {
                let reasons: Vec<String> = v.reasons.iter().map(Reason::to_string).collect();
                write!(
                    f,
                    "invalid [{}] between {} and {}: {}",
                    reasons.join(", "),
                    v.steps.0,
                    v.steps.1,
                    v.detail
                )
            }
        }
    }
}

/// Valid iff the state's zero joint probabilities in the source basis certify
/// the step's conclusion.
pub fn validate_step(step: &InferenceStep, state: &QubitPairState) -> Result<Verdict> {
    let certain = certain_conditionals(state, step.source)?;
    if certain.contains(&step.conclusion) {
        return Ok(Verdict::valid());
    }
    let dist = born(state, step.source);
    let (a, b) = if step.premise.observable.scope() == Scope::A {
        (step.premise.value, -step.conclusion.value)
    } else {
        (-step.conclusion.value, step.premise.value)
    };
    let p = if premise_matches_source(step) {
        format!("P({a:?}, {b:?}) = {}", describe_probability(dist.p(a, b)))
    } else {
        "the source basis does not measure these observables".to_string()
    };
    Ok(Verdict::invalid(Violation {
        steps: (step.id.clone(), step.id.clone()),
        reasons: vec![Reason::ConditionNotEntailed],
        detail: format!(
            "{} is not certain in basis ({}, {}): {p}",
            step.conclusion, step.source.0, step.source.1
        ),
    }))
}

fn premise_matches_source(step: &InferenceStep) -> bool {
    let side = |obs: ObservableId| match obs.scope() {
        Scope::A => step.source.0.axis() == Some(obs.axis()),
        Scope::B => step.source.1.axis() == Some(obs.axis()),
        Scope::AB => false,
    };
    side(step.premise.observable) && side(step.conclusion.observable)
}

/// Checks the steps in order and reports the first step at which fusing them
/// fails, with every reason detected there. When two contexts clash only
/// because different agents really performed incompatible measurements, the
/// information bound is the primary diagnosis; a single agent assigned two
/// bases is primarily a clash of contexts.
pub fn validate_chain(chain: &ReasoningChain, state: &QubitPairState, info_bound: usize) -> Result<Verdict> {
    if chain.steps.is_empty() {
        return Err(Error::domain("a reasoning chain needs at least one step"));
    }
    let mut premises = BTreeSet::new();
    for (k, step) in chain.steps.iter().enumerate() {
        let own = validate_step(step, state)?;
        if !own.valid {
            return Ok(own);
        }
        premises.insert(step.premise);
        let conflict = chain.steps[..k]
            .iter()
            .find_map(|earlier| earlier.context.conflict_with(&step.context).map(|c| (earlier, c)));
        let over = premises.len() > info_bound;
        if conflict.is_none() && !over {
            continue;
        }
        let first_id = conflict
            .as_ref()
            .map_or(&chain.steps[0].id, |(earlier, _)| &earlier.id)
            .clone();
        let mut reasons = Vec::new();
        let mut detail = Vec::new();
        if let Some((_, c)) = &conflict {
            reasons.push(Reason::IncompatibleContexts);
            detail.push(format!(
                "{} measures {} while {} measures {}",
                c.first.0, c.first.1, c.second.0, c.second.1
            ));
        }
        if over {
            let listed: Vec<String> = premises.iter().map(Proposition::to_string).collect();
            reasons.push(Reason::InformationBoundExceeded);
            detail.push(format!(
                "{} definite premises ({}) exceed the {info_bound}-bit bound",
                premises.len(),
                listed.join(", ")
            ));
        }
        if over && conflict.as_ref().is_some_and(|(_, c)| !c.same_agent()) {
            reasons.reverse();
            detail.reverse();
        }
        return Ok(Verdict::invalid(Violation {
            steps: (first_id, step.id.clone()),
            reasons,
            detail: detail.join("; "),
        }));
    }
    Ok(fused_verdict(chain, state, &premises))
}

/// The fused claim must itself be certified by the state, or be one of the
/// premises the chain took as given.
fn fused_verdict(chain: &ReasoningChain, state: &QubitPairState, premises: &BTreeSet<Proposition>) -> Verdict {
    let fused = chain.fused_conclusion;
    let supported = match fused.condition {
        None => premises.contains(&fused),
        Some(c) => {
            let settings = match (c.observable.scope(), fused.observable.scope()) {
                (Scope::A, Scope::B) => Some((c.observable, fused.observable)),
                (Scope::B, Scope::A) => Some((fused.observable, c.observable)),
                _ => None,
            };
            settings
                .and_then(|(a, b)| Some((Basis::from_axis(a.axis()).ok()?, Basis::from_axis(b.axis()).ok()?)))
                .and_then(|s| certain_conditionals(state, s).ok())
                .is_some_and(|certain| certain.contains(&fused))
        }
    };
    if supported {
        return Verdict::valid();
    }
    let first = chain.steps.first().expect("nonempty").id.clone();
    let last = chain.steps.last().expect("nonempty").id.clone();
    Verdict::invalid(Violation {
        steps: (first, last),
        reasons: vec![Reason::ConditionNotEntailed],
        detail: format!("the fused conclusion {fused} is not certified by the state"),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct StepReport {
    pub step: InferenceStep,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub settings: Settings,
    pub outcome: (Outcome, Outcome),
    pub probability: f64,
    pub exact: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CounterfactualCheck {
    pub state: EpistemicState,
    pub vary: Proposition,
    pub hold: Proposition,
    pub supported: bool,
}

/// Everything a demo derives, in order.
#[derive(Debug, Clone, Serialize)]
pub struct Trace {
    pub name: String,
    pub state: QubitPairState,
    pub steps: Vec<StepReport>,
    pub fused_conclusion: Proposition,
    pub chain_verdict: Verdict,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub counterfactuals: Vec<CounterfactualCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

fn trace(name: &str, state: QubitPairState, chain: ReasoningChain) -> Trace {
    let steps = chain
        .steps
        .iter()
        .map(|s| StepReport {
            step: s.clone(),
            verdict: validate_step(s, &state).expect("demo steps use z/x bases"),
        })
        .collect();
    let chain_verdict = validate_chain(&chain, &state, System::Bipartite.info_bound()).expect("nonempty chain");
    Trace {
        name: name.to_string(),
        steps,
        fused_conclusion: chain.fused_conclusion,
        chain_verdict,
        counterfactuals: Vec::new(),
        counterexample: None,
        state,
    }
}

fn d(o: ObservableId, v: Outcome) -> Proposition {
    Proposition::direct(o, v)
}

fn c(o: ObservableId, v: Outcome, given: ObservableId, gv: Outcome) -> Proposition {
    Proposition::conditional(o, v, given, gv).expect("distinct observables")
}

fn hardy_counterexample() -> Counterexample {
    let settings = (Basis::X, Basis::X);
    let probability = born(&hardy_state(), settings).p(Outcome::Minus, Outcome::Minus);
    Counterexample {
        settings,
        outcome: (Outcome::Minus, Outcome::Minus),
        probability,
        exact: describe_probability(probability),
    }
}

/// The Hardy-type chain with the given agent names for who measures what.
/// `x_a`/`z_a`/`x_b`/`z_b` name the agents performing x_A, z_A, x_B, z_B.
fn hardy_chain(x_a: &str, z_a: &str, x_b: &str, z_b: &str, ids: [&str; 3]) -> ReasoningChain {
    use ObservableId as O;
    use Outcome::{Minus as M, Plus as P};
    let ctx = |pairs: &[(&str, ObservableId)]| Context::of(pairs).expect("co-measurable");
    let steps = vec![
        InferenceStep::new(
            ids[0],
            ctx(&[(x_a, O::X_A), (z_b, O::Z_B)]),
            d(O::X_A, M),
            c(O::Z_B, M, O::X_A, M),
            (Basis::X, Basis::Z),
        ),
        InferenceStep::new(
            ids[1],
            ctx(&[(z_b, O::Z_B)]),
            d(O::Z_B, M),
            c(O::Z_A, P, O::Z_B, M),
            (Basis::Z, Basis::Z),
        ),
        InferenceStep::new(
            ids[2],
            ctx(&[(z_a, O::Z_A), (x_b, O::X_B)]),
            d(O::Z_A, P),
            c(O::X_B, P, O::Z_A, P),
            (Basis::Z, Basis::X),
        ),
    ]
    .into_iter()
    .collect::<Result<Vec<_>>>()
    .expect("well-formed steps");
    ReasoningChain::new(steps, c(O::X_B, P, O::X_A, M)).expect("nonempty")
}

/// The three single-context inferences on the Hardy state, fused into
/// "x_B^+ whenever x_A^-", against the Born probability of (x_A^-, x_B^-).
pub fn hardy_demo() -> Trace {
    let chain = hardy_chain("A", "A", "B", "B", ["i", "ii", "iii"]);
    let mut t = trace("hardy", hardy_state(), chain);
    t.counterexample = Some(hardy_counterexample());
    t
}

/// The same chain as Hardy's, with the z measurements actually carried out by
/// the friends F_A and F_B inside the labs that A and B later measure in x.
pub fn fr_demo() -> Trace {
    let chain = hardy_chain("A", "F_A", "B", "F_B", ["A sees -1", "F_B sees -1", "F_A sees +1"]);
    let mut t = trace("frauchiger-renner", hardy_state(), chain);
    t.counterexample = Some(hardy_counterexample());
    t
}

/// A's x and z results each fix B's on the anticorrelated singlet, but only in
/// the context where A made that measurement. Also reports which toy states
/// support varying A's value while holding B's.
pub fn epr_demo() -> Trace {
    use ObservableId as O;
    use Outcome::{Minus as M, Plus as P};
    let ctx = |pairs: &[(&str, ObservableId)]| Context::of(pairs).expect("co-measurable");
    let steps = vec![
        InferenceStep::new(
            "x",
            ctx(&[("A", O::X_A), ("B", O::X_B)]),
            d(O::X_A, P),
            c(O::X_B, M, O::X_A, P),
            (Basis::X, Basis::X),
        ),
        InferenceStep::new(
            "z",
            ctx(&[("A", O::Z_A), ("B", O::Z_B)]),
            d(O::Z_A, P),
            c(O::Z_B, M, O::Z_A, P),
            (Basis::Z, Basis::Z),
        ),
    ]
    .into_iter()
    .collect::<Result<Vec<_>>>()
    .expect("well-formed steps");
    // The element of reality EPR want for B: x_B^- outright.
    let chain = ReasoningChain::new(steps, d(O::X_B, M)).expect("nonempty");
    let mut t = trace("epr", QubitPairState::singlet(), chain);

    let bip = |props: Vec<Proposition>| EpistemicState::new(System::Bipartite, props).expect("valid toy state");
    let cases = [
        (bip(vec![d(O::X_A, P), d(O::X_AB, P)]), d(O::X_A, P), d(O::X_B, M)),
        (
            bip(vec![d(O::X_A, P), c(O::X_B, M, O::X_A, P)]),
            d(O::X_A, P),
            d(O::X_B, M),
        ),
        (bip(vec![d(O::X_A, P), d(O::X_B, M)]), d(O::X_A, P), d(O::X_B, M)),
    ];
    t.counterfactuals = cases
        .into_iter()
        .map(|(state, vary, hold)| {
            let supported = supports_counterfactual(&state, &vary, &hold).expect("vary stored, hold derivable");
            CounterfactualCheck {
                state,
                vary,
                hold,
                supported,
            }
        })
        .collect();
    t
}
