//! Two-qubit state vectors.
//!
//! Amplitudes are always ordered `(++, +-, -+, --)` with the first sign for
//! subsystem A, relative to a declared pair of measurement bases. A basis is
//! `z`, `x` or `angle(theta)`: the eigenbasis of `cos(theta) Z + sin(theta) X`
//! with `|theta+> = cos(theta/2)|z+> + sin(theta/2)|z->` and
//! `|theta-> = sin(theta/2)|z+> - cos(theta/2)|z->`. `angle(pi/2)` is `x`;
//! `angle(0)` measures the same thing as `z`, its minus vector differing by a
//! sign.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::outcome::Outcome;
use crate::toy::{Axis, ObservableId, Proposition, Scope};

/// Normalisation and round-trip tolerance.
pub const NORM_TOLERANCE: f64 = 1e-12;
/// Joint probabilities at or below this are treated as exact zeros.
pub const ZERO_PROBABILITY: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Basis {
    Z,
    X,
    /// Radians in the x-z plane, measured from z.
    Angle(f64),
}

pub type Settings = (Basis, Basis);

impl Basis {
    /// `[|+>, |->]` as `z`-basis coordinates.
    pub fn vectors(self) -> [[Complex64; 2]; 2] {
        let c = |re: f64| Complex64::new(re, 0.0);
        match self {
            Basis::Z => [[c(1.0), c(0.0)], [c(0.0), c(1.0)]],
            Basis::X => [
                [c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2)],
                [c(FRAC_1_SQRT_2), c(-FRAC_1_SQRT_2)],
            ],
            Basis::Angle(theta) => {
                let (s, co) = (theta / 2.0).sin_cos();
                [[c(co), c(s)], [c(s), c(-co)]]
            }
        }
    }

    /// The toy axis this basis measures, when it is `z` or `x`.
    pub fn axis(self) -> Option<Axis> {
        match self {
            Basis::Z => Some(Axis::Z),
            Basis::X => Some(Axis::X),
            Basis::Angle(theta) => {
                let t = theta.rem_euclid(2.0 * PI);
                let near = |target: f64| (t - target).abs() < 1e-12;
                if near(0.0) || near(2.0 * PI) {
                    Some(Axis::Z)
                } else if near(FRAC_PI_2) {
                    Some(Axis::X)
                } else {
                    None
                }
            }
        }
    }

    pub fn from_axis(axis: Axis) -> Result<Self> {
        match axis {
            Axis::Z => Ok(Basis::Z),
            Axis::X => Ok(Basis::X),
            Axis::Y => Err(Error::domain("the two-qubit engine has no y basis")),
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::Z => f.write_str("z"),
            Basis::X => f.write_str("x"),
            Basis::Angle(t) => write!(f, "{t}"),
        }
    }
}

impl FromStr for Basis {
    type Err = Error;

    /// `z`, `x`, a number of radians, or `angle(<radians>)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "z" | "Z" => return Ok(Basis::Z),
            "x" | "X" => return Ok(Basis::X),
            _ => {}
        }
        let inner = s.strip_prefix("angle(").and_then(|r| r.strip_suffix(')')).unwrap_or(s);
        inner
            .parse::<f64>()
            .ok()
            .filter(|t| t.is_finite())
            .map(Basis::Angle)
            .ok_or_else(|| Error::parse(format!("{s:?}"), "expected a basis: z, x or an angle in radians"))
    }
}

impl Serialize for Basis {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Basis::Angle(t) => s.serialize_f64(*t),
            other => s.collect_str(other),
        }
    }
}

impl<'de> Deserialize<'de> for Basis {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Name(String),
            Angle(f64),
        }
        match Raw::deserialize(d)? {
            Raw::Name(n) => n.parse().map_err(serde::de::Error::custom),
            Raw::Angle(t) => Ok(Basis::Angle(t)),
        }
    }
}

/// Parses `"<basisA>,<basisB>"`.
pub fn parse_settings(text: &str) -> Result<Settings> {
    let (a, b) = text
        .split_once(',')
        .ok_or_else(|| Error::parse(format!("{text:?}"), "expected <basisA>,<basisB>"))?;
    Ok((a.parse()?, b.parse()?))
}

fn index(a: Outcome, b: Outcome) -> usize {
    2 * usize::from(!a.is_plus()) + usize::from(!b.is_plus())
}

/// Normalised two-qubit pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitPairState {
    amplitudes: [Complex64; 4],
    basis: Settings,
}

impl QubitPairState {
    pub fn new(amplitudes: [Complex64; 4], basis: Settings) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::domain(format!("state has squared norm {norm}, expected 1")));
        }
        Ok(QubitPairState { amplitudes, basis })
    }

    /// Rescales `amplitudes` to unit norm.
    pub fn normalized(amplitudes: [Complex64; 4], basis: Settings) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::domain("cannot normalise a zero vector"));
        }
        Ok(QubitPairState {
            amplitudes: amplitudes.map(|a| a / norm),
            basis,
        })
    }

    pub fn from_real(amplitudes: [f64; 4], basis: Settings) -> Result<Self> {
        Self::normalized(amplitudes.map(|r| Complex64::new(r, 0.0)), basis)
    }

    /// `|a b>` in the `z` basis.
    pub fn product_z(a: Outcome, b: Outcome) -> Self {
        let mut amplitudes = [Complex64::new(0.0, 0.0); 4];
        amplitudes[index(a, b)] = Complex64::new(1.0, 0.0);
        QubitPairState {
            amplitudes,
            basis: (Basis::Z, Basis::Z),
        }
    }

    /// `(|z+ z-> - |z- z+>) / sqrt 2`.
    pub fn singlet() -> Self {
        Self::from_real([0.0, 1.0, -1.0, 0.0], (Basis::Z, Basis::Z)).expect("nonzero")
    }

    pub fn amplitudes(&self) -> &[Complex64; 4] {
        &self.amplitudes
    }

    pub fn amplitude(&self, a: Outcome, b: Outcome) -> Complex64 {
        self.amplitudes[index(a, b)]
    }

    pub fn basis(&self) -> Settings {
        self.basis
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Equal up to a global phase once both are written in `self`'s basis.
    pub fn approx_eq_up_to_phase(&self, other: &QubitPairState, tol: f64) -> bool {
        let other = change_basis(other, self.basis);
        let (k, _) = other
            .amplitudes
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm_sqr().total_cmp(&b.1.norm_sqr()))
            .expect("four amplitudes");
        if other.amplitudes[k].norm() < tol {
            return self.amplitudes.iter().all(|a| a.norm() < tol);
        }
        let ratio = self.amplitudes[k] / other.amplitudes[k];
        let phase = ratio / ratio.norm();
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .all(|(a, b)| (a - phase * b).norm() <= tol)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            basis: [Basis; 2],
            amplitudes: [[f64; 2]; 4],
        }
        let raw: Raw = serde_json::from_str(text)
            .map_err(|e| Error::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string()))?;
        Self::new(
            raw.amplitudes.map(|[re, im]| Complex64::new(re, im)),
            (raw.basis[0], raw.basis[1]),
        )
    }
}

impl Serialize for QubitPairState {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw {
            basis: [Basis; 2],
            amplitudes: [[f64; 2]; 4],
        }
        Raw {
            basis: [self.basis.0, self.basis.1],
            amplitudes: self.amplitudes.map(|a| [a.re, a.im]),
        }
        .serialize(s)
    }
}

/// `(|z+z+> + |z+z-> + |z-z+>) / sqrt 3`.
pub fn hardy_state() -> QubitPairState {
    QubitPairState::from_real([1.0, 1.0, 1.0, 0.0], (Basis::Z, Basis::Z)).expect("nonzero")
}

/// Re-expresses `s` in the product basis `target`.
#[allow(clippy::needless_range_loop)]
pub fn change_basis(s: &QubitPairState, target: Settings) -> QubitPairState {
    let (from_a, from_b) = (s.basis.0.vectors(), s.basis.1.vectors());
    let (to_a, to_b) = (target.0.vectors(), target.1.vectors());
    // z-basis coordinates first.
    let mut psi = [Complex64::new(0.0, 0.0); 4];
    for i in 0..2 {
        for j in 0..2 {
            let c = s.amplitudes[2 * i + j];
            for k in 0..2 {
                for l in 0..2 {
                    psi[2 * k + l] += c * from_a[i][k] * from_b[j][l];
                }
            }
        }
    }
    let mut amplitudes = [Complex64::new(0.0, 0.0); 4];
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..2 {
                for l in 0..2 {
                    acc += to_a[i][k].conj() * to_b[j][l].conj() * psi[2 * k + l];
                }
            }
            amplitudes[2 * i + j] = acc;
        }
    }
    QubitPairState {
        amplitudes,
        basis: target,
    }
}

/// Joint outcome probabilities ordered `(++, +-, -+, --)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OutcomeDistribution {
    pub probabilities: [f64; 4],
}

impl OutcomeDistribution {
    pub fn p(&self, a: Outcome, b: Outcome) -> f64 {
        self.probabilities[index(a, b)]
    }

    pub fn marginal_a(&self, a: Outcome) -> f64 {
        self.p(a, Outcome::Plus) + self.p(a, Outcome::Minus)
    }

    pub fn marginal_b(&self, b: Outcome) -> f64 {
        self.p(Outcome::Plus, b) + self.p(Outcome::Minus, b)
    }

    /// `E = sum of a b P(a, b)`.
    pub fn correlation(&self) -> f64 {
        let [pp, pm, mp, mm] = self.probabilities;
        pp - pm - mp + mm
    }
}

pub fn born(s: &QubitPairState, settings: Settings) -> OutcomeDistribution {
    let t = change_basis(s, settings);
    OutcomeDistribution {
        probabilities: t.amplitudes.map(|a| a.norm_sqr()),
    }
}

fn observable(basis: Basis, scope: Scope) -> Result<ObservableId> {
    let axis = basis
        .axis()
        .ok_or_else(|| Error::domain(format!("basis {basis} has no toy observable; use z or x")))?;
    ObservableId::new(axis, scope)
}

/// Conditionals certified by zero joint probabilities: whenever `a` has
/// nonzero probability on one side and `P(a, b) = 0`, the other side must
/// show `not b` given `a`. Both directions are reported, sorted.
pub fn certain_conditionals(s: &QubitPairState, settings: Settings) -> Result<Vec<Proposition>> {
    let obs_a = observable(settings.0, Scope::A)?;
    let obs_b = observable(settings.1, Scope::B)?;
    let dist = born(s, settings);
    let mut out = Vec::new();
    for a in Outcome::ALL {
        for b in Outcome::ALL {
            if dist.p(a, b) > ZERO_PROBABILITY {
                continue;
            }
            if dist.marginal_a(a) > ZERO_PROBABILITY {
                out.push(Proposition::conditional(obs_b, -b, obs_a, a)?);
            }
            if dist.marginal_b(b) > ZERO_PROBABILITY {
                out.push(Proposition::conditional(obs_a, -a, obs_b, b)?);
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct UNotReport {
    /// `U|1>` as `[[re, im], [re, im]]` over `(|1>, |-1>)`.
    pub image_of_plus: [[f64; 2]; 2],
    pub image_of_minus: [[f64; 2]; 2],
    pub image_of_symmetric: [[f64; 2]; 2],
    pub image_of_antisymmetric: [[f64; 2]; 2],
    pub swaps_basis_states: bool,
    /// `(|1> + |-1>)/sqrt 2` is left exactly in place.
    pub symmetric_is_fixed: bool,
    /// `(|1> - |-1>)/sqrt 2` only picks up the global phase -1.
    pub antisymmetric_fixed_up_to_phase: bool,
    pub antisymmetric_phase: [f64; 2],
}

/// Applies `U_NOT = |1><-1| + |-1><1|` to the basis states and the two
/// equal-weight superpositions.
pub fn u_not_fixed_point_check() -> UNotReport {
    type Qubit = [Complex64; 2];
    let apply = |v: Qubit| -> Qubit { [v[1], v[0]] };
    let close = |u: Qubit, v: Qubit| (u[0] - v[0]).norm() <= NORM_TOLERANCE && (u[1] - v[1]).norm() <= NORM_TOLERANCE;
    let c = |re: f64| Complex64::new(re, 0.0);
    let plus: Qubit = [c(1.0), c(0.0)];
    let minus: Qubit = [c(0.0), c(1.0)];
    let sym: Qubit = [c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2)];
    let anti: Qubit = [c(FRAC_1_SQRT_2), c(-FRAC_1_SQRT_2)];
    let (up, um, us, ua) = (apply(plus), apply(minus), apply(sym), apply(anti));
    let phase = ua[0] / anti[0];
    let raw = |q: Qubit| q.map(|a| [a.re, a.im]);
    UNotReport {
        image_of_plus: raw(up),
        image_of_minus: raw(um),
        image_of_symmetric: raw(us),
        image_of_antisymmetric: raw(ua),
        swaps_basis_states: close(up, minus) && close(um, plus),
        symmetric_is_fixed: close(us, sym),
        antisymmetric_fixed_up_to_phase: (phase.norm() - 1.0).abs() <= NORM_TOLERANCE
            && close(ua, anti.map(|a| a * phase)),
        antisymmetric_phase: [phase.re, phase.im],
    }
}

/// `E(a1,b1) + E(a1,b2) + E(a2,b1) - E(a2,b2)`.
pub fn chsh_quantum(s: &QubitPairState, a1: Basis, a2: Basis, b1: Basis, b2: Basis) -> f64 {
    let e = |a, b| born(s, (a, b)).correlation();
    e(a1, b1) + e(a1, b2) + e(a2, b1) - e(a2, b2)
}

/// Best CHSH settings found by [`scan_chsh`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChshScan {
    /// `[a1, a2, b1, b2]` in radians.
    pub angles: [f64; 4],
    pub value: f64,
}

impl ChshScan {
    pub fn bases(&self) -> [Basis; 4] {
        self.angles.map(Basis::Angle)
    }

    /// `E(a1,b1), E(a1,b2), E(a2,b1), E(a2,b2)`.
    pub fn correlations(&self, s: &QubitPairState) -> [f64; 4] {
        let [a1, a2, b1, b2] = self.bases();
        [(a1, b1), (a1, b2), (a2, b1), (a2, b2)].map(|st| born(s, st).correlation())
    }
}

/// Maximises the CHSH value over x-z plane angles. `a1` is pinned to 0 and
/// the other three angles are scanned on a `coarse`-point grid over a full
/// turn, then refined one coordinate at a time with step `fine` until no
/// step improves. A global rotation of both sides leaves the CHSH value of
/// rotation-invariant states unchanged, which is what pinning `a1` assumes.
pub fn scan_chsh(s: &QubitPairState, coarse: usize, fine: f64) -> ChshScan {
    let value = |t: [f64; 4]| {
        let [a1, a2, b1, b2] = t.map(Basis::Angle);
        chsh_quantum(s, a1, a2, b1, b2)
    };
    let step = 2.0 * PI / coarse as f64;
    let mut best = ChshScan {
        angles: [0.0; 4],
        value: f64::NEG_INFINITY,
    };
    for i in 0..coarse {
        for j in 0..coarse {
            for k in 0..coarse {
                let t = [0.0, i as f64 * step, j as f64 * step, k as f64 * step];
                let v = value(t);
                if v > best.value {
                    best = ChshScan { angles: t, value: v };
                }
            }
        }
    }
    let reach = (step / fine).ceil() as i64;
    loop {
        let before = best.value;
        for c in 1..4 {
            let centre = best.angles;
            for n in -reach..=reach {
                let mut t = centre;
                t[c] += n as f64 * fine;
                let v = value(t);
                if v > best.value + 1e-15 {
                    best = ChshScan { angles: t, value: v };
                }
            }
        }
        if best.value <= before + 1e-15 {
            return best;
        }
    }
}

/// Best fraction `p/q` with `q <= max_denominator` within `tol` of `x`.
pub fn recognise_fraction(x: f64, max_denominator: u64, tol: f64) -> Option<(i64, u64)> {
    (1..=max_denominator).find_map(|q| {
        let p = (x * q as f64).round();
        ((x - p / q as f64).abs() <= tol).then_some((p as i64, q))
    })
}

/// `p/q` when `x` is a small fraction, otherwise the decimal.
pub fn describe_probability(x: f64) -> String {
    match recognise_fraction(x, 1000, 1e-12) {
        Some((0, _)) => "0".into(),
        Some((p, 1)) => p.to_string(),
        Some((p, q)) => format!("{p}/{q}"),
        None => format!("{x}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Outcome::{Minus as M, Plus as P};

    const TOL: f64 = 1e-12;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= TOL
    }

    fn real_parts(s: &QubitPairState) -> [f64; 4] {
        for a in s.amplitudes() {
            assert!(a.im.abs() <= TOL);
        }
        s.amplitudes().map(|a| a.re)
    }

    #[test]
    fn hardy_amplitudes() {
        let h = hardy_state();
        assert!(close(h.norm_sqr(), 1.0));
        assert_eq!(h.amplitude(M, M), Complex64::new(0.0, 0.0));
        assert!(close(born(&h, (Basis::Z, Basis::Z)).p(P, P), 1.0 / 3.0));
    }

    #[test]
    fn hardy_in_x_x() {
        let r = real_parts(&change_basis(&hardy_state(), (Basis::X, Basis::X)));
        let s12 = 12f64.sqrt();
        let want = [3.0 / s12, 1.0 / s12, 1.0 / s12, -1.0 / s12];
        for (g, w) in r.iter().zip(want) {
            assert!(close(*g, w), "{r:?}");
        }
    }

    #[test]
    fn hardy_in_x_z() {
        let r = real_parts(&change_basis(&hardy_state(), (Basis::X, Basis::Z)));
        let want = [(2.0f64 / 3.0).sqrt(), 1.0 / 6f64.sqrt(), 0.0, 1.0 / 6f64.sqrt()];
        for (g, w) in r.iter().zip(want) {
            assert!(close(*g, w), "{r:?}");
        }
    }

    #[test]
    fn own_basis_is_identity() {
        let h = hardy_state();
        assert_eq!(change_basis(&h, h.basis()), h);
        let t = change_basis(&h, (Basis::X, Basis::Angle(0.3)));
        let back = change_basis(&t, t.basis());
        for (a, b) in t.amplitudes().iter().zip(back.amplitudes()) {
            assert!((a - b).norm() <= TOL);
        }
    }

    #[test]
    fn born_examples() {
        let h = hardy_state();
        assert!(close(born(&h, (Basis::X, Basis::X)).p(M, M), 1.0 / 12.0));
        let zz = born(&h, (Basis::Z, Basis::Z)).probabilities;
        for (g, w) in zz.iter().zip([1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.0]) {
            assert!(close(*g, w));
        }
        assert!(born(&h, (Basis::Z, Basis::X)).p(P, M) <= TOL);
    }

    #[test]
    fn angle_bases_match_named_ones() {
        let h = hardy_state();
        let via_angle = born(&h, (Basis::Angle(FRAC_PI_2), Basis::Angle(0.0)));
        let named = born(&h, (Basis::X, Basis::Z));
        for (a, b) in via_angle.probabilities.iter().zip(named.probabilities) {
            assert!(close(*a, b));
        }
        assert_eq!(Basis::Angle(0.0).axis(), Some(Axis::Z));
        assert_eq!(Basis::Angle(FRAC_PI_2).axis(), Some(Axis::X));
        assert_eq!(Basis::Angle(0.4).axis(), None);
    }

    #[test]
    fn conditionals_from_zero_probabilities() {
        let h = hardy_state();
        let c = |t, tv, g, gv| Proposition::conditional(t, tv, g, gv).unwrap();
        let xz = certain_conditionals(&h, (Basis::X, Basis::Z)).unwrap();
        assert!(xz.contains(&c(ObservableId::Z_B, M, ObservableId::X_A, M)));
        let zz = certain_conditionals(&h, (Basis::Z, Basis::Z)).unwrap();
        assert!(zz.contains(&c(ObservableId::Z_A, P, ObservableId::Z_B, M)));
        let zx = certain_conditionals(&h, (Basis::Z, Basis::X)).unwrap();
        assert!(zx.contains(&c(ObservableId::X_B, P, ObservableId::Z_A, P)));
        assert!(certain_conditionals(&h, (Basis::X, Basis::X)).unwrap().is_empty());

        let plus_plus = QubitPairState::from_real([1.0; 4], (Basis::Z, Basis::Z)).unwrap();
        assert!(certain_conditionals(&plus_plus, (Basis::Z, Basis::Z))
            .unwrap()
            .is_empty());
        assert!(certain_conditionals(&h, (Basis::Angle(0.3), Basis::Z)).is_err());
    }

    #[test]
    fn u_not() {
        let r = u_not_fixed_point_check();
        assert!(r.swaps_basis_states);
        assert_eq!(r.image_of_plus, [[0.0, 0.0], [1.0, 0.0]]);
        assert!(r.symmetric_is_fixed);
        assert!(r.antisymmetric_fixed_up_to_phase);
        assert!(close(r.antisymmetric_phase[0], -1.0));
    }

    #[test]
    fn product_state_chsh_is_classical() {
        let s = QubitPairState::product_z(P, P);
        let v = chsh_quantum(&s, Basis::Z, Basis::X, Basis::Z, Basis::X);
        assert!((-2.0..=2.0).contains(&v));
    }

    #[test]
    fn singlet_reaches_two_root_two() {
        use std::f64::consts::FRAC_PI_4;
        let s = QubitPairState::singlet();
        // E(a, b) = -cos(a - b) on the singlet.
        let v = chsh_quantum(
            &s,
            Basis::Angle(0.0),
            Basis::Angle(FRAC_PI_2),
            Basis::Angle(FRAC_PI_4 + PI),
            Basis::Angle(-FRAC_PI_4 + PI),
        );
        assert!((v - 2.0 * 2f64.sqrt()).abs() < 1e-9, "{v}");
    }

    #[test]
    fn scan_finds_the_singlet_optimum() {
        let s = QubitPairState::singlet();
        let scan = scan_chsh(&s, 16, 1e-3);
        // Closed form for the singlet: E(a, b) = -cos(a - b).
        let [a1, a2, b1, b2] = scan.angles;
        let e = |a: f64, b: f64| -(a - b).cos();
        let closed = e(a1, b1) + e(a1, b2) + e(a2, b1) - e(a2, b2);
        assert!((scan.value - closed).abs() < 1e-12);
        assert!(
            scan.value >= 2.8 && scan.value <= 2.0 * 2f64.sqrt() + 1e-9,
            "{}",
            scan.value
        );
    }

    #[test]
    fn phase_equality() {
        let h = hardy_state();
        let rotated = QubitPairState::new(h.amplitudes().map(|a| a * Complex64::new(0.0, 1.0)), h.basis()).unwrap();
        assert!(h.approx_eq_up_to_phase(&rotated, TOL));
        assert!(!h.approx_eq_up_to_phase(&QubitPairState::singlet(), TOL));
        let in_x = change_basis(&h, (Basis::X, Basis::X));
        assert!(h.approx_eq_up_to_phase(&in_x, TOL));
    }

    #[test]
    fn json_and_parsing() {
        let h = change_basis(&hardy_state(), (Basis::X, Basis::Angle(0.25)));
        let text = serde_json::to_string(&h).unwrap();
        let back = QubitPairState::from_json(&text).unwrap();
        assert_eq!(back, h);
        assert!(QubitPairState::from_json(r#"{"basis":["z","z"],"amplitudes":[[1,0],[1,0],[0,0],[0,0]]}"#).is_err());
        assert_eq!(parse_settings("x,z").unwrap(), (Basis::X, Basis::Z));
        assert_eq!(parse_settings("angle(0.5),x").unwrap(), (Basis::Angle(0.5), Basis::X));
        assert!(parse_settings("x").is_err());
        assert!(parse_settings("q,z").is_err());
    }

    #[test]
    fn fractions() {
        assert_eq!(describe_probability(1.0 / 12.0), "1/12");
        assert_eq!(describe_probability(1e-17), "0");
        assert_eq!(describe_probability(2.0 / 3.0), "2/3");
        assert_eq!(describe_probability(0.5f64.sqrt()), format!("{}", 0.5f64.sqrt()));
    }
}
