//! Information-bounded toy systems.
//!
//! A single toy system carries one definite bit (the value of one of
//! `x`, `y`, `z`); a pair carries two, which may be spent on individual
//! values or on the correlations `x_AB = x_A XOR x_B` and `z_AB = z_A XOR z_B`.
//!
//! Internally every proposition is a linear equation over GF(2). Each
//! observable owns a 4-bit mask over `(x_A, x_B, z_A, z_B)`; an outcome `+1`
//! is the bit `1`, which makes the correlation rule (`+1` iff the two values
//! differ) plain addition mod 2. The same masks double as symplectic vectors:
//! two propositions can be held together only if their observables commute,
//! so `x_S` and `z_S` of one subsystem never both carry a value, and a value
//! for `z_B` cannot coexist with the correlation `x_AB`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::outcome::Outcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Scope {
    A,
    B,
    /// Correlation between the two subsystems.
    AB,
}

const AX: u8 = 0b0001;
const BX: u8 = 0b0010;
const AZ: u8 = 0b0100;
const BZ: u8 = 0b1000;

/// A named toy observable such as `x_A` or `z_AB`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObservableId {
    axis: Axis,
    scope: Scope,
}

impl ObservableId {
    pub const X_A: Self = Self::raw(Axis::X, Scope::A);
    pub const Y_A: Self = Self::raw(Axis::Y, Scope::A);
    pub const Z_A: Self = Self::raw(Axis::Z, Scope::A);
    pub const X_B: Self = Self::raw(Axis::X, Scope::B);
    pub const Y_B: Self = Self::raw(Axis::Y, Scope::B);
    pub const Z_B: Self = Self::raw(Axis::Z, Scope::B);
    pub const X_AB: Self = Self::raw(Axis::X, Scope::AB);
    pub const Z_AB: Self = Self::raw(Axis::Z, Scope::AB);

    const fn raw(axis: Axis, scope: Scope) -> Self {
        ObservableId { axis, scope }
    }

    /// There is no `y` correlation observable.
    pub fn new(axis: Axis, scope: Scope) -> Result<Self> {
        if axis == Axis::Y && scope == Scope::AB {
            return Err(Error::domain("y has no correlation observable"));
        }
        Ok(Self::raw(axis, scope))
    }

    pub fn axis(self) -> Axis {
        self.axis
    }

    pub fn scope(self) -> Scope {
        self.scope
    }

    pub(crate) fn mask(self) -> u8 {
        let (x, z) = match self.scope {
            Scope::A => (AX, AZ),
            Scope::B => (BX, BZ),
            Scope::AB => (AX | BX, AZ | BZ),
        };
        match self.axis {
            Axis::X => x,
            Axis::Z => z,
            Axis::Y => x | z,
        }
    }

    /// Whether the two observables can carry definite values at once.
    pub fn compatible_with(self, other: ObservableId) -> bool {
        commutes(self.mask(), other.mask())
    }

    pub fn is_correlation(self) -> bool {
        self.scope == Scope::AB
    }
}

fn commutes(u: u8, w: u8) -> bool {
    let (ux, uz) = (u & 0b11, u >> 2);
    let (wx, wz) = (w & 0b11, w >> 2);
    ((ux & wz) ^ (uz & wx)).count_ones() % 2 == 0
}

impl fmt::Display for ObservableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let axis = match self.axis {
            Axis::X => 'x',
            Axis::Y => 'y',
            Axis::Z => 'z',
        };
        let scope = match self.scope {
            Scope::A => "A",
            Scope::B => "B",
            Scope::AB => "AB",
        };
        write!(f, "{axis}_{scope}")
    }
}

impl FromStr for ObservableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (axis, scope) = s
            .split_once('_')
            .ok_or_else(|| Error::domain(format!("unknown observable {s:?}")))?;
        let axis = match axis {
            "x" => Axis::X,
            "y" => Axis::Y,
            "z" => Axis::Z,
            _ => return Err(Error::domain(format!("unknown axis in observable {s:?}"))),
        };
        let scope = match scope {
            "A" => Scope::A,
            "B" => Scope::B,
            "AB" => Scope::AB,
            _ => return Err(Error::domain(format!("unknown subsystem in observable {s:?}"))),
        };
        ObservableId::new(axis, scope)
    }
}

impl Serialize for ObservableId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ObservableId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Condition {
    pub observable: ObservableId,
    pub value: Outcome,
}

/// `observable = value`, optionally only given `condition`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawProposition")]
pub struct Proposition {
    pub observable: ObservableId,
    pub value: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition: Option<Condition>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProposition {
    observable: ObservableId,
    value: Outcome,
    #[serde(default)]
    condition: Option<Condition>,
}

impl TryFrom<RawProposition> for Proposition {
    type Error = Error;

    fn try_from(raw: RawProposition) -> Result<Self> {
        match raw.condition {
            None => Ok(Proposition::direct(raw.observable, raw.value)),
            Some(c) => Proposition::conditional(raw.observable, raw.value, c.observable, c.value),
        }
    }
}

impl Proposition {
    pub fn direct(observable: ObservableId, value: Outcome) -> Self {
        Proposition {
            observable,
            value,
            condition: None,
        }
    }

    /// `(observable = value | given = given_value)`.
    pub fn conditional(
        observable: ObservableId,
        value: Outcome,
        given: ObservableId,
        given_value: Outcome,
    ) -> Result<Self> {
        if observable == given {
            return Err(Error::domain(format!(
                "conditional proposition on {observable} cannot be conditioned on itself"
            )));
        }
        Ok(Proposition {
            observable,
            value,
            condition: Some(Condition {
                observable: given,
                value: given_value,
            }),
        })
    }

    pub fn is_direct(&self) -> bool {
        self.condition.is_none()
    }

    /// The condition as a direct proposition.
    pub fn premise(&self) -> Option<Proposition> {
        self.condition.map(|c| Proposition::direct(c.observable, c.value))
    }

    /// The target with the condition stripped.
    pub fn unconditioned(&self) -> Proposition {
        Proposition::direct(self.observable, self.value)
    }

    pub fn given(&self, premise: Proposition) -> Result<Proposition> {
        Proposition::conditional(self.observable, self.value, premise.observable, premise.value)
    }

    fn observables(&self) -> impl Iterator<Item = ObservableId> {
        std::iter::once(self.observable).chain(self.condition.map(|c| c.observable))
    }
}

impl fmt::Display for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.observable, self.value.symbol())?;
        if let Some(c) = self.condition {
            write!(f, " | {}^{}", c.observable, c.value.symbol())?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum System {
    Single,
    Bipartite,
}

impl System {
    pub fn info_bound(self) -> usize {
        match self {
            System::Single => 1,
            System::Bipartite => 2,
        }
    }

    /// Single systems are addressed as subsystem `A` and carry `x`, `y`, `z`;
    /// pairs use `x` and `z` on `A`, `B` and `AB`.
    pub fn check_observable(self, obs: ObservableId) -> Result<()> {
        let ok = match self {
            System::Single => obs.scope == Scope::A,
            System::Bipartite => obs.axis != Axis::Y,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "observable {obs} is not defined for a {} system",
                match self {
                    System::Single => "single",
                    System::Bipartite => "bipartite",
                }
            )))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Insert {
    Independent,
    Redundant,
    Contradiction,
}

/// Row-reduced linear span over GF(2).
#[derive(Debug, Clone, Default)]
pub(crate) struct Span {
    rows: Vec<(u8, bool)>,
}

impl Span {
    fn reduce(&self, mut mask: u8, mut bit: bool) -> (u8, bool) {
        for &(row, rb) in &self.rows {
            let pivot = 1u8 << (7 - row.leading_zeros());
            if mask & pivot != 0 {
                mask ^= row;
                bit ^= rb;
            }
        }
        (mask, bit)
    }

    fn insert(&mut self, mask: u8, bit: bool) -> Insert {
        let (m, b) = self.reduce(mask, bit);
        if m == 0 {
            return if b { Insert::Contradiction } else { Insert::Redundant };
        }
        let pivot = 1u8 << (7 - m.leading_zeros());
        for row in &mut self.rows {
            if row.0 & pivot != 0 {
                row.0 ^= m;
                row.1 ^= b;
            }
        }
        self.rows.push((m, b));
        self.rows.sort_by_key(|r| std::cmp::Reverse(r.0));
        Insert::Independent
    }

    fn resolve(&self, mask: u8) -> Option<bool> {
        let (m, b) = self.reduce(mask, false);
        (m == 0).then_some(b)
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    fn pairwise_commuting(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, a)| self.rows[i + 1..].iter().all(|b| commutes(a.0, b.0)))
    }
}

/// What a list of propositions entails once every conditional whose
/// condition holds has been applied.
struct Closure {
    span: Span,
    contradiction: bool,
    inert_conditionals: usize,
}

impl Closure {
    fn of(props: &[Proposition]) -> Closure {
        let mut span = Span::default();
        let mut contradiction = false;
        for p in props.iter().filter(|p| p.is_direct()) {
            if span.insert(p.observable.mask(), p.value.is_plus()) == Insert::Contradiction {
                contradiction = true;
            }
        }
        let mut pending: Vec<&Proposition> = props.iter().filter(|p| !p.is_direct()).collect();
        loop {
            let before = pending.len();
            pending.retain(|p| {
                let c = p.condition.expect("conditional");
                if span.resolve(c.observable.mask()) == Some(c.value.is_plus()) {
                    if span.insert(p.observable.mask(), p.value.is_plus()) == Insert::Contradiction {
                        contradiction = true;
                    }
                    false
                } else {
                    true
                }
            });
            if pending.len() == before {
                break;
            }
        }
        Closure {
            span,
            contradiction,
            inert_conditionals: pending.len(),
        }
    }

    fn value(&self, obs: ObservableId) -> Option<Outcome> {
        if self.contradiction {
            return None;
        }
        self.span.resolve(obs.mask()).map(Outcome::from_bool)
    }

    fn information(&self) -> usize {
        self.span.rank() + self.inert_conditionals
    }
}

/// What is known about a toy system, oldest proposition first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawState")]
pub struct EpistemicState {
    system: System,
    propositions: Vec<Proposition>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawState {
    system: System,
    propositions: Vec<Proposition>,
}

impl TryFrom<RawState> for EpistemicState {
    type Error = Error;

    fn try_from(raw: RawState) -> Result<Self> {
        EpistemicState::new(raw.system, raw.propositions)
    }
}

impl EpistemicState {
    pub fn new(system: System, propositions: Vec<Proposition>) -> Result<Self> {
        let state = EpistemicState { system, propositions };
        state.validate()?;
        Ok(state)
    }

    pub fn empty(system: System) -> Self {
        EpistemicState {
            system,
            propositions: Vec::new(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string()))
    }

    pub fn system(&self) -> System {
        self.system
    }

    pub fn info_bound(&self) -> usize {
        self.system.info_bound()
    }

    pub fn propositions(&self) -> &[Proposition] {
        &self.propositions
    }

    pub fn contains(&self, p: &Proposition) -> bool {
        self.propositions.contains(p)
    }

    /// Number of independent bits the state holds: the rank of everything
    /// entailed, plus one per conditional whose condition is not entailed.
    pub fn independent_count(&self) -> usize {
        Closure::of(&self.propositions).information()
    }

    fn validate(&self) -> Result<()> {
        check_props(self.system, &self.propositions)
    }

    fn check_observable(&self, obs: ObservableId) -> Result<()> {
        self.system.check_observable(obs)
    }
}

fn check_props(system: System, props: &[Proposition]) -> Result<()> {
    for p in props {
        for obs in p.observables() {
            system.check_observable(obs)?;
        }
    }
    let closure = Closure::of(props);
    if closure.contradiction {
        return Err(Error::domain("propositions are mutually inconsistent"));
    }
    if !closure.span.pairwise_commuting() {
        return Err(Error::domain("propositions assign values to incompatible observables"));
    }
    let info = closure.information();
    if info > system.info_bound() {
        return Err(Error::domain(format!(
            "state holds {info} independent propositions, bound is {}",
            system.info_bound()
        )));
    }
    Ok(())
}

impl fmt::Display for EpistemicState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.propositions.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// The value of `obs` entailed by the state, if any.
pub fn infer(state: &EpistemicState, obs: ObservableId) -> Result<Option<Outcome>> {
    state.check_observable(obs)?;
    Ok(Closure::of(&state.propositions).value(obs))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MeasurementRecord {
    pub observable: ObservableId,
    pub outcome: Outcome,
    /// The outcome was already entailed before measuring.
    pub forced: bool,
    pub pre_state: EpistemicState,
    pub post_state: EpistemicState,
}

fn conflicts(p: &Proposition, obs: ObservableId) -> bool {
    p.observables().any(|o| !o.compatible_with(obs))
}

/// Measures `obs`. Entailed values are returned without touching the state;
/// otherwise the outcome is a fair coin and old propositions are evicted,
/// oldest incompatible one first and then oldest overall, until the new
/// state is admissible.
pub fn measure<R: Rng + ?Sized>(state: &EpistemicState, obs: ObservableId, rng: &mut R) -> Result<MeasurementRecord> {
    if let Some(outcome) = infer(state, obs)? {
        return Ok(MeasurementRecord {
            observable: obs,
            outcome,
            forced: true,
            pre_state: state.clone(),
            post_state: state.clone(),
        });
    }
    let outcome = Outcome::from_bool(rng.gen::<bool>());
    let fresh = Proposition::direct(obs, outcome);
    let mut kept: Vec<Proposition> = state.propositions.clone();
    loop {
        let mut candidate = kept.clone();
        candidate.push(fresh);
        if check_props(state.system, &candidate).is_ok() {
            kept = candidate;
            break;
        }
        let victim = kept.iter().position(|p| conflicts(p, obs)).unwrap_or(0);
        kept.remove(victim);
    }
    Ok(MeasurementRecord {
        observable: obs,
        outcome,
        forced: false,
        pre_state: state.clone(),
        post_state: EpistemicState {
            system: state.system,
            propositions: kept,
        },
    })
}

/// Runs a measurement sequence, threading each post-state into the next step.
pub fn simulate<R: Rng + ?Sized>(
    initial: &EpistemicState,
    sequence: &[ObservableId],
    rng: &mut R,
) -> Result<Vec<MeasurementRecord>> {
    let mut state = initial.clone();
    let mut records = Vec::with_capacity(sequence.len());
    for &obs in sequence {
        let record = measure(&state, obs, rng)?;
        state = record.post_state.clone();
        records.push(record);
    }
    Ok(records)
}

/// Both bits spent on correlations: `(x_AB^+, z_AB^+)`.
pub fn entangled_state() -> EpistemicState {
    EpistemicState {
        system: System::Bipartite,
        propositions: vec![
            Proposition::direct(ObservableId::X_AB, Outcome::Plus),
            Proposition::direct(ObservableId::Z_AB, Outcome::Plus),
        ],
    }
}

fn derivable(closure: &Closure, stored: &[Proposition], p: &Proposition) -> bool {
    if stored.contains(p) {
        return true;
    }
    if closure.value(p.observable) != Some(p.value) {
        return false;
    }
    match p.condition {
        None => true,
        Some(c) => closure.value(c.observable) == Some(c.value),
    }
}

/// Whether `hold` stays entailed if the direct proposition `vary` is swapped
/// for any other value of any observable on the same subsystem.
pub fn supports_counterfactual(state: &EpistemicState, vary: &Proposition, hold: &Proposition) -> Result<bool> {
    if !vary.is_direct() || !state.contains(vary) {
        return Err(Error::domain(format!("{vary} is not a direct proposition of {state}")));
    }
    let closure = Closure::of(&state.propositions);
    if !derivable(&closure, &state.propositions, hold) {
        return Err(Error::domain(format!("{hold} is not derivable from {state}")));
    }
    if hold.observable == vary.observable || hold.condition.is_some_and(|c| c.observable == vary.observable) {
        return Ok(false);
    }
    let base: Vec<Proposition> = state.propositions.iter().filter(|p| *p != vary).copied().collect();
    let axes = [Axis::X, Axis::Y, Axis::Z];
    let alternatives = axes
        .into_iter()
        .filter_map(|axis| ObservableId::new(axis, vary.observable.scope).ok())
        .filter(|o| state.system.check_observable(*o).is_ok())
        .flat_map(|o| Outcome::ALL.map(|v| Proposition::direct(o, v)))
        .filter(|alt| alt != vary);
    for alt in alternatives {
        let mut props = base.clone();
        props.push(alt);
        let closure = Closure::of(&props);
        let held = !closure.contradiction && {
            let target = closure.value(hold.observable) == Some(hold.value);
            match hold.condition {
                None => target,
                Some(c) => target && closure.value(c.observable) == Some(c.value),
            }
        };
        if !held {
            return Ok(false);
        }
    }
    Ok(true)
}
