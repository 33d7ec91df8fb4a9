//! Local hidden-variable calculus for the pair `(x_A, z_A, x_B, z_B)`.
//!
//! A model is a probability vector over the 16 deterministic assignments
//! `lambda_1 = (+,+,+,+)` through `lambda_16 = (-,-,-,-)`, enumerated
//! lexicographically with `+1` before `-1`. Everything is exact rational
//! arithmetic, so the CHSH bound and its closed forms are checked with zero
//! tolerance.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::feasibility;
use crate::outcome::Outcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LhvObservable {
    XA,
    ZA,
    XB,
    ZB,
}

impl LhvObservable {
    /// Column order of the assignment table.
    pub const ALL: [LhvObservable; 4] = [Self::XA, Self::ZA, Self::XB, Self::ZB];

    fn column(self) -> usize {
        self as usize
    }

    pub fn on_a(self) -> bool {
        matches!(self, Self::XA | Self::ZA)
    }
}

impl fmt::Display for LhvObservable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::XA => "x_A",
            Self::ZA => "z_A",
            Self::XB => "x_B",
            Self::ZB => "z_B",
        })
    }
}

impl FromStr for LhvObservable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x_A" => Ok(Self::XA),
            "z_A" => Ok(Self::ZA),
            "x_B" => Ok(Self::XB),
            "z_B" => Ok(Self::ZB),
            other => Err(Error::domain(format!(
                "unknown observable {other:?}; expected one of x_A, z_A, x_B, z_B"
            ))),
        }
    }
}

/// One of the 16 deterministic value assignments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LambdaState(u8);

impl LambdaState {
    /// `index` is 1-based.
    pub fn new(index: usize) -> Result<Self> {
        if !(1..=16).contains(&index) {
            return Err(Error::IndexOutOfRange {
                what: "hidden-variable state",
                index,
                max: 16,
            });
        }
        Ok(LambdaState(index as u8))
    }

    pub fn all() -> impl Iterator<Item = LambdaState> {
        (1..=16u8).map(LambdaState)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn value(self, obs: LhvObservable) -> Outcome {
        let bit = 3 - obs.column();
        Outcome::from_bool((self.0 - 1) >> bit & 1 == 0)
    }

    /// `(x_A, z_A, x_B, z_B)`.
    pub fn values(self) -> [Outcome; 4] {
        LhvObservable::ALL.map(|o| self.value(o))
    }

    pub fn from_values(values: [Outcome; 4]) -> Self {
        let offset = values.iter().fold(0u8, |acc, v| acc << 1 | u8::from(!v.is_plus()));
        LambdaState(offset + 1)
    }
}

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"3"`, `"-1/16"` or `"0.7072"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    let err = || Error::parse(format!("{text:?}"), "expected an integer, fraction or decimal");
    if s.contains('/') {
        let r = BigRational::from_str(s).map_err(|_| err())?;
        return Ok(r);
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let negative = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        if !int_digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let digits = format!("{}{}", if int_digits.is_empty() { "0" } else { int_digits }, frac);
        let numer = BigInt::from_str(&digits).map_err(|_| err())?;
        let denom = num::pow(BigInt::from(10), frac.len());
        let r = BigRational::new(numer, denom);
        return Ok(if negative { -r } else { r });
    }
    BigInt::from_str(s).map(BigRational::from_integer).map_err(|_| err())
}

/// Probability vector over the 16 assignments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HiddenVariableModel {
    probabilities: Vec<BigRational>,
    /// `probabilities[i] = scaled[i] / denominator` with one shared
    /// denominator, so sums over assignments are integer sums.
    scaled: Vec<BigInt>,
    denominator: BigInt,
}

impl HiddenVariableModel {
    pub fn new(probabilities: Vec<BigRational>) -> Result<Self> {
        if probabilities.len() != 16 {
            return Err(Error::shape(format!(
                "a hidden-variable model has 16 probabilities, got {}",
                probabilities.len()
            )));
        }
        if let Some(i) = probabilities.iter().position(|p| p.is_negative()) {
            return Err(Error::domain(format!("p_{} is negative", i + 1)));
        }
        let total: BigRational = probabilities.iter().sum();
        if !total.is_one() {
            return Err(Error::domain(format!("probabilities sum to {total}, not 1")));
        }
        Ok(Self::from_checked(probabilities))
    }

    fn from_checked(probabilities: Vec<BigRational>) -> Self {
        use num::Integer;
        let denominator = probabilities.iter().fold(BigInt::one(), |acc, p| acc.lcm(p.denom()));
        let scaled = probabilities
            .iter()
            .map(|p| p.numer() * (&denominator / p.denom()))
            .collect();
        HiddenVariableModel {
            probabilities,
            scaled,
            denominator,
        }
    }

    /// Exact sum of `sign(lambda) * p(lambda)`, reduced once at the end.
    fn signed_sum(&self, mut sign: impl FnMut(LambdaState) -> i8) -> BigRational {
        let mut total = BigInt::zero();
        for (l, n) in LambdaState::all().zip(&self.scaled) {
            match sign(l) {
                0 => {}
                1 => total += n,
                -1 => total -= n,
                k => total += n * BigInt::from(k),
            }
        }
        BigRational::new(total, self.denominator.clone())
    }

    pub fn uniform() -> Self {
        Self::from_checked(vec![rational(1, 16); 16])
    }

    pub fn point_mass(state: LambdaState) -> Self {
        let mut probabilities = vec![BigRational::zero(); 16];
        probabilities[state.index() - 1] = BigRational::one();
        Self::from_checked(probabilities)
    }

    /// Normalises nonnegative integer weights.
    pub fn from_weights(weights: &[u64]) -> Result<Self> {
        let total: u64 = weights.iter().sum();
        if total == 0 {
            return Err(Error::domain("weights sum to zero"));
        }
        Self::new(
            weights
                .iter()
                .map(|&w| BigRational::new(w.into(), total.into()))
                .collect(),
        )
    }

    /// Probability of `lambda_index` (1-based).
    pub fn p(&self, index: usize) -> &BigRational {
        &self.probabilities[index - 1]
    }

    pub fn probabilities(&self) -> &[BigRational] {
        &self.probabilities
    }

    pub fn iter(&self) -> impl Iterator<Item = (LambdaState, &BigRational)> {
        LambdaState::all().zip(&self.probabilities)
    }

    /// JSON array of 16 rational strings.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: Vec<String> = serde_json::from_str(text)
            .map_err(|e| Error::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string()))?;
        let probs = raw
            .iter()
            .enumerate()
            .map(|(i, s)| {
                parse_rational(s)
                    .map_err(|_| Error::parse(format!("p_{}", i + 1), format!("cannot read {s:?} as a rational")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(probs)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.probabilities.iter().map(ToString::to_string).collect()
    }
}

/// Exact probability of the partial assignment.
pub fn marginal(model: &HiddenVariableModel, assignment: &[(LhvObservable, Outcome)]) -> BigRational {
    model.signed_sum(|lambda| i8::from(assignment.iter().all(|&(o, v)| lambda.value(o) == v)))
}

/// Like [`marginal`] with observables given by name.
pub fn marginal_by_name(model: &HiddenVariableModel, assignment: &[(&str, Outcome)]) -> Result<BigRational> {
    let typed = assignment
        .iter()
        .map(|&(name, v)| Ok((name.parse()?, v)))
        .collect::<Result<Vec<_>>>()?;
    Ok(marginal(model, &typed))
}

/// `<a b> = sum over r, s of r s P(a = r, b = s)` for `a` on A and `b` on B.
pub fn expectation(model: &HiddenVariableModel, a: LhvObservable, b: LhvObservable) -> Result<BigRational> {
    if !a.on_a() || b.on_a() {
        return Err(Error::domain(format!(
            "expectation needs an observable on A then one on B, got {a} and {b}"
        )));
    }
    // Each assignment falls in exactly one (r, s) cell of the sum, weighted
    // by r s.
    Ok(model.signed_sum(|lambda| lambda.value(a).value() * lambda.value(b).value()))
}

/// `<x_A x_B> + <x_A z_B> + <z_A x_B> - <z_A z_B>`.
pub fn chsh(model: &HiddenVariableModel) -> BigRational {
    CorrelationSet::of_model(model).chsh()
}

fn weight(model: &HiddenVariableModel, indices: [usize; 8]) -> BigRational {
    model.signed_sum(|lambda| i8::from(indices.contains(&lambda.index())))
}

/// Assignments on which the CHSH combination equals -2.
pub const ANTI_CHSH_STATES: [usize; 8] = [3, 4, 6, 8, 9, 11, 13, 14];
/// Assignments on which the CHSH combination equals +2.
pub const PRO_CHSH_STATES: [usize; 8] = [1, 2, 5, 7, 10, 12, 15, 16];

/// `2 - 4 (p_3 + p_4 + p_6 + p_8 + p_9 + p_11 + p_13 + p_14)`.
pub fn chsh_from_negative_weight(model: &HiddenVariableModel) -> BigRational {
    rational(2, 1) - rational(4, 1) * weight(model, ANTI_CHSH_STATES)
}

/// `4 (p_1 + p_2 + p_5 + p_7 + p_10 + p_12 + p_15 + p_16) - 2`.
pub fn chsh_from_positive_weight(model: &HiddenVariableModel) -> BigRational {
    rational(4, 1) * weight(model, PRO_CHSH_STATES) - rational(2, 1)
}

/// The four cross-subsystem expectation values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrelationSet {
    pub xx: BigRational,
    pub xz: BigRational,
    pub zx: BigRational,
    pub zz: BigRational,
}

/// Sign patterns with an odd number of minus signs; applied to
/// `(xx, xz, zx, zz)` they give the eight CHSH variants.
pub const CHSH_SIGNS: [[i8; 4]; 8] = [
    [1, 1, 1, -1],
    [1, 1, -1, 1],
    [1, -1, 1, 1],
    [-1, 1, 1, 1],
    [-1, -1, -1, 1],
    [-1, -1, 1, -1],
    [-1, 1, -1, -1],
    [1, -1, -1, -1],
];

impl CorrelationSet {
    pub fn new(xx: BigRational, xz: BigRational, zx: BigRational, zz: BigRational) -> Result<Self> {
        let set = CorrelationSet { xx, xz, zx, zz };
        let one = BigRational::one();
        for (name, v) in set.named() {
            if v.abs() > one {
                return Err(Error::domain(format!("<{name}> = {v} lies outside [-1, 1]")));
            }
        }
        Ok(set)
    }

    pub fn from_ints(values: [i64; 4]) -> Result<Self> {
        let [a, b, c, d] = values.map(|v| BigRational::from_integer(v.into()));
        Self::new(a, b, c, d)
    }

    /// Parses `"a,b,c,d"` (integers, fractions or decimals).
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(',').collect();
        if parts.len() != 4 {
            return Err(Error::parse(
                format!("{text:?}"),
                format!("expected 4 comma-separated values, got {}", parts.len()),
            ));
        }
        let v = parts.iter().map(|p| parse_rational(p)).collect::<Result<Vec<_>>>()?;
        let [a, b, c, d]: [BigRational; 4] = v.try_into().expect("four values");
        Self::new(a, b, c, d)
    }

    pub fn of_model(model: &HiddenVariableModel) -> Self {
        use LhvObservable::*;
        let e = |a, b| expectation(model, a, b).expect("cross-subsystem pair");
        CorrelationSet {
            xx: e(XA, XB),
            xz: e(XA, ZB),
            zx: e(ZA, XB),
            zz: e(ZA, ZB),
        }
    }

    pub fn values(&self) -> [&BigRational; 4] {
        [&self.xx, &self.xz, &self.zx, &self.zz]
    }

    fn named(&self) -> [(&'static str, &BigRational); 4] {
        [
            ("x_A x_B", &self.xx),
            ("x_A z_B", &self.xz),
            ("z_A x_B", &self.zx),
            ("z_A z_B", &self.zz),
        ]
    }

    pub fn chsh(&self) -> BigRational {
        &self.xx + &self.xz + &self.zx - &self.zz
    }

    pub fn chsh_variants(&self) -> [BigRational; 8] {
        CHSH_SIGNS.map(|signs| {
            signs
                .iter()
                .zip(self.values())
                .map(|(&s, v)| BigRational::from_integer(i64::from(s).into()) * v)
                .sum()
        })
    }

    /// Every CHSH variant lies in `[-2, 2]`.
    pub fn satisfies_chsh_bounds(&self) -> bool {
        let two = rational(2, 1);
        self.chsh_variants().iter().all(|v| v.abs() <= two)
    }
}

/// Solves for a model reproducing `correlations` with the exact simplex alone.
pub fn lp_witness(correlations: &CorrelationSet) -> Option<HiddenVariableModel> {
    use LhvObservable::*;
    let pairs = [(XA, XB), (XA, ZB), (ZA, XB), (ZA, ZB)];
    let mut a = vec![vec![BigRational::one(); 16]];
    for (p, q) in pairs {
        a.push(
            LambdaState::all()
                .map(|l| BigRational::from_integer(i64::from(l.value(p).value() * l.value(q).value()).into()))
                .collect(),
        );
    }
    let mut b = vec![BigRational::one()];
    b.extend(correlations.values().into_iter().cloned());
    feasibility::nonnegative_solution(&a, &b).map(HiddenVariableModel::from_checked)
}

/// `p(lambda) = (1 + sum of E_ab a(lambda) b(lambda)) / 16`; reproduces the
/// correlations whenever it is nonnegative.
fn symmetric_witness(c: &CorrelationSet) -> Option<HiddenVariableModel> {
    use LhvObservable::*;
    let pairs = [(XA, XB, &c.xx), (XA, ZB, &c.xz), (ZA, XB, &c.zx), (ZA, ZB, &c.zz)];
    let probabilities: Vec<BigRational> = LambdaState::all()
        .map(|l| {
            let mut s = BigRational::one();
            for (p, q, e) in pairs {
                let sign = i64::from(l.value(p).value() * l.value(q).value());
                s += BigRational::from_integer(sign.into()) * e;
            }
            s / rational(16, 1)
        })
        .collect();
    probabilities
        .iter()
        .all(|p| !p.is_negative())
        .then(|| HiddenVariableModel::from_checked(probabilities))
}

/// A model whose four expectations equal `correlations` exactly, if one
/// exists.
pub fn feasible(correlations: &CorrelationSet) -> Option<HiddenVariableModel> {
    if !correlations.satisfies_chsh_bounds() {
        return None;
    }
    symmetric_witness(correlations).or_else(|| lp_witness(correlations))
}

/// Serializable summary of a model.
#[derive(Debug, Clone, Serialize)]
pub struct ModelReport {
    pub probabilities: Vec<String>,
    pub marginals: Vec<MarginalEntry>,
    pub expectations: Vec<ExpectationEntry>,
    pub chsh: RationalValue,
}

#[derive(Debug, Clone, Serialize)]
pub struct MarginalEntry {
    pub observable: String,
    pub outcome: Outcome,
    pub probability: RationalValue,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExpectationEntry {
    pub pair: String,
    pub value: RationalValue,
}

/// An exact value with its decimal approximation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RationalValue {
    pub exact: String,
    pub decimal: f64,
}

impl From<&BigRational> for RationalValue {
    fn from(r: &BigRational) -> Self {
        use num::ToPrimitive;
        RationalValue {
            exact: r.to_string(),
            decimal: r.to_f64().unwrap_or(f64::NAN),
        }
    }
}

pub fn model_report(model: &HiddenVariableModel) -> ModelReport {
    use LhvObservable::*;
    let marginals = LhvObservable::ALL
        .iter()
        .flat_map(|&o| {
            Outcome::ALL.map(|v| MarginalEntry {
                observable: o.to_string(),
                outcome: v,
                probability: (&marginal(model, &[(o, v)])).into(),
            })
        })
        .collect();
    let c = CorrelationSet::of_model(model);
    let expectations = [(XA, XB, &c.xx), (XA, ZB, &c.xz), (ZA, XB, &c.zx), (ZA, ZB, &c.zz)]
        .into_iter()
        .map(|(a, b, v)| ExpectationEntry {
            pair: format!("{a} {b}"),
            value: v.into(),
        })
        .collect();
    ModelReport {
        probabilities: model.to_strings(),
        marginals,
        expectations,
        chsh: (&c.chsh()).into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use LhvObservable::*;
    use Outcome::{Minus as M, Plus as P};

    /// `p_i = i / 136` so every index contributes a distinct weight.
    fn generic() -> HiddenVariableModel {
        HiddenVariableModel::from_weights(&(1..=16).collect::<Vec<u64>>()).unwrap()
    }

    fn sum_of(model: &HiddenVariableModel, idx: &[usize]) -> BigRational {
        idx.iter().map(|&i| model.p(i)).sum()
    }

    #[test]
    fn assignment_table_layout() {
        let l = |i| LambdaState::new(i).unwrap().values();
        assert_eq!(l(1), [P, P, P, P]);
        assert_eq!(l(2), [P, P, P, M]);
        assert_eq!(l(3), [P, P, M, P]);
        assert_eq!(l(5), [P, M, P, P]);
        assert_eq!(l(9), [M, P, P, P]);
        assert_eq!(l(16), [M, M, M, M]);
        for s in LambdaState::all() {
            assert_eq!(LambdaState::from_values(s.values()), s);
        }
        assert!(LambdaState::new(0).is_err());
        assert!(LambdaState::new(17).is_err());
    }

    #[test]
    fn marginals() {
        let m = generic();
        assert_eq!(marginal(&m, &[(XA, P)]), sum_of(&m, &[1, 2, 3, 4, 5, 6, 7, 8]));
        assert_eq!(marginal(&m, &[(XA, P), (XB, M)]), sum_of(&m, &[3, 4, 7, 8]));
        assert_eq!(marginal(&m, &[(XA, P), (ZA, P)]), sum_of(&m, &[1, 2, 3, 4]));
        assert!(marginal(&m, &[]).is_one());
        assert!(marginal_by_name(&m, &[("y_A", P)]).is_err());
        assert_eq!(marginal_by_name(&m, &[("x_A", P)]).unwrap(), marginal(&m, &[(XA, P)]));
    }

    #[test]
    fn expectation_expansion() {
        let m = generic();
        let plus = sum_of(&m, &[1, 2, 5, 6, 11, 12, 15, 16]);
        let minus = sum_of(&m, &[3, 4, 7, 8, 9, 10, 13, 14]);
        assert_eq!(expectation(&m, XA, XB).unwrap(), plus - minus);
        assert!(expectation(&HiddenVariableModel::uniform(), ZA, XB).unwrap().is_zero());
        let lambda1 = HiddenVariableModel::point_mass(LambdaState::new(1).unwrap());
        assert!(expectation(&lambda1, XA, XB).unwrap().is_one());
        assert!(expectation(&m, XA, ZA).is_err());
        assert!(expectation(&m, XB, XA).is_err());
    }

    #[test]
    fn chsh_examples() {
        let l = |i| HiddenVariableModel::point_mass(LambdaState::new(i).unwrap());
        assert_eq!(chsh(&l(1)), rational(2, 1));
        assert!(chsh(&HiddenVariableModel::uniform()).is_zero());
        assert_eq!(chsh(&l(3)), rational(-2, 1));
        let m = generic();
        assert_eq!(chsh(&m), chsh_from_negative_weight(&m));
        assert_eq!(chsh(&m), chsh_from_positive_weight(&m));
    }

    #[test]
    fn feasibility_examples() {
        // lambda_1 has every product equal to +1; its CHSH value is 1+1+1-1.
        let c = CorrelationSet::from_ints([1, 1, 1, 1]).unwrap();
        assert_eq!(c.chsh(), rational(2, 1));
        let w = feasible(&c).expect("deterministic strategy");
        assert_eq!(w, HiddenVariableModel::point_mass(LambdaState::new(1).unwrap()));

        // <z_A z_B> = -1 contradicts the other three being +1: CHSH = 4.
        let c = CorrelationSet::from_ints([1, 1, 1, -1]).unwrap();
        assert_eq!(c.chsh(), rational(4, 1));
        assert!(feasible(&c).is_none());
        assert!(lp_witness(&c).is_none());

        let r = parse_rational("0.7072").unwrap();
        let tsirelson = CorrelationSet::new(r.clone(), r.clone(), r.clone(), -r).unwrap();
        assert!(!tsirelson.satisfies_chsh_bounds());
        assert!(feasible(&tsirelson).is_none());
        assert!(lp_witness(&tsirelson).is_none());

        let zero = CorrelationSet::from_ints([0, 0, 0, 0]).unwrap();
        assert_eq!(feasible(&zero).unwrap(), HiddenVariableModel::uniform());
    }

    #[test]
    fn lp_route_matches_expectations() {
        let c = CorrelationSet::from_ints([1, -1, 1, -1]).unwrap();
        let w = lp_witness(&c).unwrap();
        assert_eq!(CorrelationSet::of_model(&w), c);
        let half = CorrelationSet::new(rational(1, 2), rational(1, 2), rational(1, 2), rational(-1, 2)).unwrap();
        let w = lp_witness(&half).unwrap();
        assert_eq!(CorrelationSet::of_model(&w), half);
    }

    #[test]
    fn correlation_range_checked() {
        assert!(CorrelationSet::from_ints([2, 0, 0, 0]).is_err());
        assert!(CorrelationSet::parse("1,1,1").is_err());
        assert!(CorrelationSet::parse("1,1,1,x").is_err());
        assert_eq!(
            CorrelationSet::parse("1/2, -0.25, 0, 1").unwrap(),
            CorrelationSet::new(rational(1, 2), rational(-1, 4), rational(0, 1), rational(1, 1)).unwrap()
        );
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("-0.5").unwrap(), rational(-1, 2));
        assert_eq!(parse_rational(".5").unwrap(), rational(1, 2));
        assert_eq!(parse_rational("3/9").unwrap(), rational(1, 3));
        assert!(parse_rational("1.").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn model_validation_and_json() {
        let text = serde_json::to_string(&HiddenVariableModel::uniform().to_strings()).unwrap();
        assert_eq!(
            HiddenVariableModel::from_json(&text).unwrap(),
            HiddenVariableModel::uniform()
        );
        let mut bad = vec!["0".to_string(); 16];
        bad[0] = "1/2".into();
        assert!(HiddenVariableModel::from_json(&serde_json::to_string(&bad).unwrap()).is_err());
        bad[1] = "1/2".into();
        assert!(HiddenVariableModel::from_json(&serde_json::to_string(&bad).unwrap()).is_ok());
        bad[2] = "-1/2".into();
        bad[3] = "1/2".into();
        assert!(HiddenVariableModel::from_json(&serde_json::to_string(&bad).unwrap()).is_err());
        assert!(HiddenVariableModel::from_json("[\"1\"]").is_err());
    }

    #[test]
    fn report_contents() {
        let r = model_report(&HiddenVariableModel::point_mass(LambdaState::new(1).unwrap()));
        assert_eq!(r.chsh.exact, "2");
        assert_eq!(r.marginals.len(), 8);
        assert_eq!(r.expectations[0].pair, "x_A x_B");
    }
}
