//! Finite dichotomic-measurement calculus.
//!
//! A [`MeasurementTable`] tabulates the outcome of measurement `n` on state
//! `k` for finitely many enumerated measurements and states. Indices are
//! 1-based everywhere in the public surface. New measurements are built from
//! rows with the Boolean connectives, and [`diagonal_measurement`] builds the
//! measurement that disagrees with row `k` on state `k`, which therefore
//! matches no row of the table it came from.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::outcome::Outcome;

/// Outcome of measurement `n` on state `k`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasurementTable {
    n_measurements: usize,
    n_states: usize,
    cells: Vec<Outcome>,
}

impl MeasurementTable {
    pub fn from_rows(rows: Vec<Vec<Outcome>>) -> Result<Self> {
        let n_measurements = rows.len();
        if n_measurements == 0 {
            return Err(Error::shape("table needs at least one measurement"));
        }
        let n_states = rows[0].len();
        if n_states == 0 {
            return Err(Error::shape("table needs at least one state"));
        }
        let mut cells = Vec::with_capacity(n_measurements * n_states);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n_states {
                return Err(Error::shape(format!(
                    "measurement {} has {} states, expected {}",
                    i + 1,
                    row.len(),
                    n_states
                )));
            }
            cells.extend(row);
        }
        Ok(MeasurementTable {
            n_measurements,
            n_states,
            cells,
        })
    }

    /// Builds a table from a `{1, -1}` integer matrix.
    pub fn from_values(rows: &[Vec<i64>]) -> Result<Self> {
        let rows = rows
            .iter()
            .enumerate()
            .map(|(n, row)| {
                row.iter()
                    .enumerate()
                    .map(|(k, &v)| {
                        Outcome::from_value(v).map_err(|_| {
                            Error::parse(
                                format!("measurement {}, state {}", n + 1, k + 1),
                                format!("expected 1 or -1, got {v}"),
                            )
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }

    /// Parses either the plain-text grid format (one measurement per line,
    /// `+`/`-` per state, whitespace ignored, `#` starts a comment) or a JSON
    /// integer matrix.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('[') {
            Self::from_json(text)
        } else {
            Self::from_grid(text)
        }
    }

    pub fn from_grid(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let content = line.split('#').next().unwrap_or("");
            let mut row = Vec::new();
            for (col, ch) in content.chars().enumerate() {
                match ch {
                    '+' => row.push(Outcome::Plus),
                    '-' => row.push(Outcome::Minus),
                    c if c.is_whitespace() => {}
                    c => {
                        return Err(Error::parse(
                            format!("line {}, column {}", lineno + 1, col + 1),
                            format!("unexpected character {c:?}, expected '+' or '-'"),
                        ))
                    }
                }
            }
            if row.is_empty() {
                continue;
            }
            if let Some(first) = rows.first() {
                let first: &Vec<Outcome> = first;
                if first.len() != row.len() {
                    return Err(Error::parse(
                        format!("line {}", lineno + 1),
                        format!("row has {} states, expected {}", row.len(), first.len()),
                    ));
                }
            }
            rows.push(row);
        }
        Self::from_rows(rows)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let rows: Vec<Vec<i64>> = serde_json::from_str(text)
            .map_err(|e| Error::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string()))?;
        Self::from_values(&rows)
    }

    pub fn to_grid(&self) -> String {
        let mut out = String::new();
        for n in 1..=self.n_measurements {
            out.extend(self.row_slice(n).iter().map(|o| o.symbol()));
            out.push('\n');
        }
        out
    }

    pub fn to_values(&self) -> Vec<Vec<i8>> {
        (1..=self.n_measurements)
            .map(|n| self.row_slice(n).iter().map(|o| o.value()).collect())
            .collect()
    }

    pub fn n_measurements(&self) -> usize {
        self.n_measurements
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn is_square(&self) -> bool {
        self.n_measurements == self.n_states
    }

    fn check_measurement(&self, n: usize) -> Result<()> {
        if n == 0 || n > self.n_measurements {
            return Err(Error::IndexOutOfRange {
                what: "measurement",
                index: n,
                max: self.n_measurements,
            });
        }
        Ok(())
    }

    fn check_state(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.n_states {
            return Err(Error::IndexOutOfRange {
                what: "state",
                index: k,
                max: self.n_states,
            });
        }
        Ok(())
    }

    fn row_slice(&self, n: usize) -> &[Outcome] {
        let start = (n - 1) * self.n_states;
        &self.cells[start..start + self.n_states]
    }

    /// Outcome of measurement `n` on state `k` (both 1-based).
    pub fn get(&self, n: usize, k: usize) -> Result<Outcome> {
        self.check_measurement(n)?;
        self.check_state(k)?;
        Ok(self.cells[(n - 1) * self.n_states + (k - 1)])
    }

    pub fn row(&self, n: usize) -> Result<&[Outcome]> {
        self.check_measurement(n)?;
        Ok(self.row_slice(n))
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Outcome]> {
        self.cells.chunks(self.n_states)
    }

    fn require_square(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::shape(format!(
                "diagonal construction needs a square table, got {} measurements x {} states",
                self.n_measurements, self.n_states
            )));
        }
        Ok(())
    }

    fn diagonal(&self) -> impl Iterator<Item = Outcome> + '_ {
        (0..self.n_states).map(move |k| self.cells[k * self.n_states + k])
    }
}

/// The four maps `{+1, -1} -> {+1, -1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutcomeMap {
    Identity,
    Negation,
    ConstantPlus,
    ConstantMinus,
}

impl OutcomeMap {
    pub const ALL: [OutcomeMap; 4] = [
        OutcomeMap::Identity,
        OutcomeMap::Negation,
        OutcomeMap::ConstantPlus,
        OutcomeMap::ConstantMinus,
    ];

    pub fn apply(self, o: Outcome) -> Outcome {
        match self {
            OutcomeMap::Identity => o,
            OutcomeMap::Negation => -o,
            OutcomeMap::ConstantPlus => Outcome::Plus,
            OutcomeMap::ConstantMinus => Outcome::Minus,
        }
    }

    pub fn fixed_points(self) -> Vec<Outcome> {
        Outcome::ALL.into_iter().filter(|&o| self.apply(o) == o).collect()
    }
}

impl fmt::Display for OutcomeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutcomeMap::Identity => "identity",
            OutcomeMap::Negation => "negation",
            OutcomeMap::ConstantPlus => "constant(+1)",
            OutcomeMap::ConstantMinus => "constant(-1)",
        })
    }
}

/// How a derived measurement was assembled from the rows of a table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Row(usize),
    Not(Box<Provenance>),
    Xor(Box<Provenance>, Box<Provenance>),
    And(Box<Provenance>, Box<Provenance>),
    Or(Box<Provenance>, Box<Provenance>),
    /// State `k` is sent to `map(f(k, k))`.
    Diagonal(OutcomeMap),
}

impl Provenance {
    /// Recomputes the outcome on every state of `table`.
    pub fn evaluate(&self, table: &MeasurementTable) -> Result<Vec<Outcome>> {
        let binary = |a: &Provenance, b: &Provenance, op: fn(Outcome, Outcome) -> Outcome| {
            let a = a.evaluate(table)?;
            let b = b.evaluate(table)?;
            Ok(a.into_iter().zip(b).map(|(x, y)| op(x, y)).collect())
        };
        match self {
            Provenance::Row(n) => Ok(table.row(*n)?.to_vec()),
            Provenance::Not(inner) => Ok(inner.evaluate(table)?.into_iter().map(|o| -o).collect()),
            Provenance::Xor(a, b) => binary(a, b, Outcome::xor),
            Provenance::And(a, b) => binary(a, b, Outcome::and),
            Provenance::Or(a, b) => binary(a, b, Outcome::or),
            Provenance::Diagonal(map) => {
                table.require_square()?;
                Ok(table.diagonal().map(|o| map.apply(o)).collect())
            }
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Row(n) => write!(f, "m{n}"),
            Provenance::Not(a) => write!(f, "NOT {a}"),
            Provenance::Xor(a, b) => write!(f, "({a} XOR {b})"),
            Provenance::And(a, b) => write!(f, "({a} AND {b})"),
            Provenance::Or(a, b) => write!(f, "({a} OR {b})"),
            Provenance::Diagonal(OutcomeMap::Negation) => write!(f, "m_g"),
            Provenance::Diagonal(map) => write!(f, "diag[{map}]"),
        }
    }
}

/// A measurement built from table rows, together with its construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedMeasurement {
    outcomes: Vec<Outcome>,
    provenance: Provenance,
}

impl DerivedMeasurement {
    pub fn row(table: &MeasurementTable, n: usize) -> Result<Self> {
        Ok(DerivedMeasurement {
            outcomes: table.row(n)?.to_vec(),
            provenance: Provenance::Row(n),
        })
    }

    /// Evaluates `provenance` against `table`.
    pub fn from_provenance(table: &MeasurementTable, provenance: Provenance) -> Result<Self> {
        Ok(DerivedMeasurement {
            outcomes: provenance.evaluate(table)?,
            provenance,
        })
    }

    pub fn outcomes(&self) -> &[Outcome] {
        &self.outcomes
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    pub fn negate(&self) -> Self {
        DerivedMeasurement {
            outcomes: self.outcomes.iter().map(|&o| -o).collect(),
            provenance: Provenance::Not(Box::new(self.provenance.clone())),
        }
    }

    fn combine(
        &self,
        other: &Self,
        op: fn(Outcome, Outcome) -> Outcome,
        wrap: fn(Box<Provenance>, Box<Provenance>) -> Provenance,
    ) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::shape(format!(
                "cannot combine measurements over {} and {} states",
                self.len(),
                other.len()
            )));
        }
        Ok(DerivedMeasurement {
            outcomes: self
                .outcomes
                .iter()
                .zip(&other.outcomes)
                .map(|(&a, &b)| op(a, b))
                .collect(),
            provenance: wrap(Box::new(self.provenance.clone()), Box::new(other.provenance.clone())),
        })
    }

    pub fn xor(&self, other: &Self) -> Result<Self> {
        self.combine(other, Outcome::xor, Provenance::Xor)
    }

    pub fn and(&self, other: &Self) -> Result<Self> {
        self.combine(other, Outcome::and, Provenance::And)
    }

    pub fn or(&self, other: &Self) -> Result<Self> {
        self.combine(other, Outcome::or, Provenance::Or)
    }

    /// True when re-evaluating the provenance on `table` gives the stored
    /// outcomes.
    pub fn is_consistent_with(&self, table: &MeasurementTable) -> bool {
        self.provenance
            .evaluate(table)
            .map(|o| o == self.outcomes)
            .unwrap_or(false)
    }
}

impl fmt::Display for DerivedMeasurement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            write!(f, "{}", o.symbol())?;
        }
        write!(f, "  = {}", self.provenance)
    }
}

/// `m_i XOR m_j`: `+1` on the states where the two rows disagree.
pub fn xor_compose(table: &MeasurementTable, i: usize, j: usize) -> Result<DerivedMeasurement> {
    DerivedMeasurement::row(table, i)?.xor(&DerivedMeasurement::row(table, j)?)
}

pub fn negate(m: &DerivedMeasurement) -> DerivedMeasurement {
    m.negate()
}

/// The measurement whose outcome on state `k` is the opposite of row `k` on
/// state `k`.
pub fn diagonal_measurement(table: &MeasurementTable) -> Result<DerivedMeasurement> {
    DerivedMeasurement::from_provenance(table, Provenance::Diagonal(OutcomeMap::Negation))
}

/// First row (1-based) that agrees with `m` on every state.
pub fn find_matching_row(table: &MeasurementTable, m: &DerivedMeasurement) -> Result<Option<usize>> {
    if m.len() != table.n_states() {
        return Err(Error::shape(format!(
            "measurement covers {} states, table has {}",
            m.len(),
            table.n_states()
        )));
    }
    Ok(table.rows().position(|row| row == m.outcomes()).map(|i| i + 1))
}

/// Appends the diagonal measurement as a new row and `new_state` as a new
/// state column, giving an `(n+1) x (n+1)` table. `new_state[n]` is the
/// outcome of measurement `n+1` (1-based) on the new state; its last entry is
/// the value of the appended diagonal row.
pub fn extend_by_diagonal(table: &MeasurementTable, new_state: &[Outcome]) -> Result<MeasurementTable> {
    let diag = diagonal_measurement(table)?;
    let n = table.n_measurements();
    if new_state.len() != n + 1 {
        return Err(Error::shape(format!(
            "new state column needs {} outcomes, got {}",
            n + 1,
            new_state.len()
        )));
    }
    let mut rows: Vec<Vec<Outcome>> = table
        .rows()
        .zip(new_state)
        .map(|(row, &extra)| {
            let mut r = row.to_vec();
            r.push(extra);
            r
        })
        .collect();
    let mut last = diag.outcomes().to_vec();
    last.push(new_state[n]);
    rows.push(last);
    MeasurementTable::from_rows(rows)
}

/// Per-row outcome of the commuting-square check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowCheck {
    /// 1-based measurement index.
    pub row: usize,
    pub diagonal_value: Outcome,
    /// `alpha(f(n, n))`, i.e. `g(n)`.
    pub mapped_value: Outcome,
    /// Whether `f(n, n) = alpha(f(n, n))`, the condition row `n` would need
    /// to satisfy in order to equal `g`.
    pub fixed_point_equation_holds: bool,
    pub row_equals_g: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedPointReport {
    pub alpha: OutcomeMap,
    pub g: Vec<Outcome>,
    pub rows: Vec<RowCheck>,
    pub matching_rows: Vec<usize>,
    pub alpha_fixed_points: Vec<Outcome>,
    /// No row reproduces `g` and `alpha` has no fixed point.
    pub contradiction: bool,
}

/// Builds `g(k) = alpha(f(k, k))` and checks it against every row.
pub fn lawvere_check(table: &MeasurementTable, alpha: OutcomeMap) -> Result<FixedPointReport> {
    table.require_square()?;
    let g: Vec<Outcome> = table.diagonal().map(|o| alpha.apply(o)).collect();
    let rows: Vec<RowCheck> = table
        .rows()
        .enumerate()
        .map(|(i, row)| {
            let diagonal_value = row[i];
            RowCheck {
                row: i + 1,
                diagonal_value,
                mapped_value: g[i],
                fixed_point_equation_holds: alpha.apply(diagonal_value) == diagonal_value,
                row_equals_g: row == g.as_slice(),
            }
        })
        .collect();
    let matching_rows: Vec<usize> = rows.iter().filter(|r| r.row_equals_g).map(|r| r.row).collect();
    let alpha_fixed_points = alpha.fixed_points();
    let contradiction = matching_rows.is_empty() && alpha_fixed_points.is_empty();
    Ok(FixedPointReport {
        alpha,
        g,
        rows,
        matching_rows,
        alpha_fixed_points,
        contradiction,
    })
}
