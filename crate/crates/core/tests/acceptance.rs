//! Acceptance gate: eight criteria, one PASS/FAIL line each, with the
//! runtime of each measured against its limit. Exits nonzero if any fail.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use epistemic_horizon::algebra::{
    diagonal_measurement, find_matching_row, lawvere_check, MeasurementTable, OutcomeMap,
};
use epistemic_horizon::lhv::{
    chsh, chsh_from_negative_weight, chsh_from_positive_weight, feasible, CorrelationSet, HiddenVariableModel,
    LambdaState, LhvObservable,
};
use epistemic_horizon::quantum::{born, change_basis, hardy_state, scan_chsh, Basis, QubitPairState};
use epistemic_horizon::reasoner::{epr_demo, fr_demo, hardy_demo, validate_step, Reason};
use epistemic_horizon::toy::{entangled_state, infer, measure, ObservableId};
use epistemic_horizon::Outcome;
use num::{BigRational, Signed, Zero};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Option<Duration>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// CHSH straight from the definition over the sixteen assignments.
fn oracle_chsh(m: &HiddenVariableModel) -> BigRational {
    use LhvObservable::*;
    let mut total = BigRational::zero();
    for (l, p) in m.iter() {
        let v = |o| i64::from(l.value(o).value());
        let term = v(XA) * v(XB) + v(XA) * v(ZB) + v(ZA) * v(XB) - v(ZA) * v(ZB);
        total += p * BigRational::from_integer(term.into());
    }
    total
}

fn chsh_bound() -> Check {
    let two = BigRational::from_integer(2.into());
    for l in LambdaState::all() {
        let m = HiddenVariableModel::point_mass(l);
        let v = chsh(&m);
        ensure(v.abs() <= two, || format!("vertex {} gives {v}", l.index()))?;
        ensure(v == oracle_chsh(&m), || {
            format!("vertex {} disagrees with oracle", l.index())
        })?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for trial in 0..10_000 {
        let weights: Vec<u64> = (0..16)
            .map(|_| if rng.gen_bool(0.3) { 0 } else { rng.gen_range(1..1000) })
            .collect();
        if weights.iter().all(|w| *w == 0) {
            continue;
        }
        let m = HiddenVariableModel::from_weights(&weights).map_err(|e| e.to_string())?;
        let v = chsh(&m);
        ensure(v.abs() <= two, || format!("mixture {trial} gives {v}"))?;
        ensure(v == chsh_from_negative_weight(&m), || {
            format!("mixture {trial}: 2 - 4 q identity fails")
        })?;
        ensure(v == chsh_from_positive_weight(&m), || {
            format!("mixture {trial}: 4 p - 2 identity fails")
        })?;
    }
    Ok("16 vertices and 10^4 mixtures within [-2, 2], both identities exact".into())
}

fn hardy_probability() -> Check {
    let p = born(&hardy_state(), (Basis::X, Basis::X)).p(Outcome::Minus, Outcome::Minus);
    ensure((p - 1.0 / 12.0).abs() <= 1e-12, || format!("P(-,-) = {p}"))?;
    Ok(format!("P(x_A^-, x_B^-) = {p:.15}"))
}

fn basis_expansions() -> Check {
    let s12 = 12f64.sqrt();
    let (r23, r16) = ((2.0f64 / 3.0).sqrt(), 1.0 / 6f64.sqrt());
    let expected = [
        ((Basis::X, Basis::X), [3.0 / s12, 1.0 / s12, 1.0 / s12, -1.0 / s12]),
        ((Basis::X, Basis::Z), [r23, r16, 0.0, r16]),
        ((Basis::Z, Basis::X), [r23, 0.0, r16, r16]),
    ];
    let h = hardy_state();
    for (settings, want) in expected {
        let got = change_basis(&h, settings);
        for (k, (g, w)) in got.amplitudes().iter().zip(want).enumerate() {
            ensure((g - Complex64::new(w, 0.0)).norm() <= 1e-12, || {
                format!("({}, {}) amplitude {k}: {g} vs {w}", settings.0, settings.1)
            })?;
        }
    }
    Ok("all twelve coefficients, zeros included, within 1e-12".into())
}

fn diagonal_escape() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for trial in 0..1_000 {
        let n = rng.gen_range(2..=12);
        let rows: Vec<Vec<Outcome>> = (0..n)
            .map(|_| (0..n).map(|_| Outcome::from_bool(rng.gen())).collect())
            .collect();
        let t = MeasurementTable::from_rows(rows).map_err(|e| e.to_string())?;
        let g = diagonal_measurement(&t).map_err(|e| e.to_string())?;
        ensure(find_matching_row(&t, &g).map_err(|e| e.to_string())?.is_none(), || {
            format!("table {trial}: diagonal matches a row")
        })?;
        // Oracle: entry k of g differs from entry k of row k.
        for k in 1..=n {
            ensure(g.outcomes()[k - 1] != t.get(k, k).unwrap(), || {
                format!("table {trial}: g({k}) = f({k},{k})")
            })?;
        }
        ensure(lawvere_check(&t, OutcomeMap::Negation).unwrap().contradiction, || {
            format!("table {trial}: negation not certified")
        })?;
        ensure(!lawvere_check(&t, OutcomeMap::Identity).unwrap().contradiction, || {
            format!("table {trial}: identity certified")
        })?;
    }
    Ok("10^3 tables of size 2-12 escaped; negation certified, identity never".into())
}

fn toy_bound() -> Check {
    const OBS: [ObservableId; 6] = [
        ObservableId::X_A,
        ObservableId::Z_A,
        ObservableId::X_B,
        ObservableId::Z_B,
        ObservableId::X_AB,
        ObservableId::Z_AB,
    ];
    let start = entangled_state();
    let mut steps = 0usize;
    for seed in 0..10_000u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let first = measure(&start, ObservableId::Z_B, &mut rng).map_err(|e| e.to_string())?;
        let st = &first.post_state;
        ensure(infer(st, ObservableId::Z_A).unwrap() == Some(-first.outcome), || {
            format!("seed {seed}: z_A not opposite z_B")
        })?;
        for x in [ObservableId::X_A, ObservableId::X_B, ObservableId::X_AB] {
            ensure(infer(st, x).unwrap().is_none(), || format!("seed {seed}: {x} survived"))?;
        }
        let mut st = first.post_state;
        for _ in 0..10 {
            let obs = OBS[rng.gen_range(0..OBS.len())];
            st = measure(&st, obs, &mut rng).map_err(|e| e.to_string())?.post_state;
            steps += 1;
            ensure(st.independent_count() <= 2, || {
                format!("seed {seed}: {st} holds more than 2 bits")
            })?;
        }
    }
    Ok(format!(
        "10^4 trajectories ({steps} further steps) within 2 bits; z_B always fixes z_A and clears x"
    ))
}

fn paradox_verdicts() -> Check {
    let h = hardy_state();
    let hardy = hardy_demo();
    for s in &hardy.steps {
        ensure(validate_step(&s.step, &h).unwrap().valid, || {
            format!("hardy step {} invalid", s.step.id)
        })?;
    }
    let v = hardy.chain_verdict.violation.clone().ok_or("hardy chain accepted")?;
    ensure(
        v.reason() == Reason::IncompatibleContexts && v.steps == ("i".into(), "iii".into()),
        || format!("hardy verdict {}", hardy.chain_verdict),
    )?;
    ensure(hardy.counterexample.as_ref().is_some_and(|c| c.exact == "1/12"), || {
        "hardy counterexample".into()
    })?;

    let fr = fr_demo();
    for s in &fr.steps {
        ensure(validate_step(&s.step, &h).unwrap().valid, || {
            format!("fr step {} invalid", s.step.id)
        })?;
    }
    let v = fr.chain_verdict.violation.clone().ok_or("fr chain accepted")?;
    ensure(
        v.reason() == Reason::InformationBoundExceeded && v.detail.contains("2-bit"),
        || format!("fr verdict {}", fr.chain_verdict),
    )?;

    let epr = epr_demo();
    let cf: Vec<(String, bool)> = epr
        .counterfactuals
        .iter()
        .map(|c| (c.state.to_string(), c.supported))
        .collect();
    let lookup = |s: &str| cf.iter().find(|(k, _)| k == s).map(|(_, v)| *v);
    ensure(lookup("(x_A^+, x_AB^+)") == Some(false), || format!("epr {cf:?}"))?;
    ensure(lookup("(x_A^+, x_B^-)") == Some(true), || format!("epr {cf:?}"))?;
    ensure(!epr.chain_verdict.valid, || "epr fusion accepted".into())?;
    Ok("hardy: incompatible-contexts (i, iii); fr: information-bound-exceeded; epr counterfactuals false/true".into())
}

fn quantum_violation() -> Check {
    let singlet = QubitPairState::singlet();
    let scan = scan_chsh(&singlet, 16, 1e-3);
    // Oracle: the singlet has E(a, b) = -cos(a - b), maximised at 2 sqrt 2.
    let tsirelson = 2.0 * 2f64.sqrt();
    ensure(scan.value >= 2.8 && scan.value <= tsirelson + 1e-9, || {
        format!("scan reached {}", scan.value)
    })?;
    ensure((scan.value - tsirelson).abs() < 1e-6, || {
        format!("scan {} vs oracle {tsirelson}", scan.value)
    })?;
    let corr = scan
        .correlations(&singlet)
        .map(|e| BigRational::from_float(e).expect("finite"));
    let [xx, xz, zx, zz] = corr;
    let c = CorrelationSet::new(xx, xz, zx, zz).map_err(|e| e.to_string())?;
    ensure(feasible(&c).is_none(), || {
        "a local model reproduced the singlet correlations".into()
    })?;
    Ok(format!(
        "CHSH {:.9} at angles {:?}; no local model",
        scan.value, scan.angles
    ))
}

fn non_signalling() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let basis = |rng: &mut ChaCha8Rng| match rng.gen_range(0..3) {
        0 => Basis::Z,
        1 => Basis::X,
        _ => Basis::Angle(rng.gen_range(-PI..PI)),
    };
    let mut worst = 0.0f64;
    for _ in 0..1_000 {
        let amps = [0; 4].map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let s = QubitPairState::normalized(amps, (basis(&mut rng), basis(&mut rng))).map_err(|e| e.to_string())?;
        let (a, b1, b2) = (basis(&mut rng), basis(&mut rng), basis(&mut rng));
        let (d1, d2) = (born(&s, (a, b1)), born(&s, (a, b2)));
        let (e1, e2) = (born(&s, (b1, a)), born(&s, (b2, a)));
        for o in Outcome::ALL {
            worst = worst
                .max((d1.marginal_a(o) - d2.marginal_a(o)).abs())
                .max((e1.marginal_b(o) - e2.marginal_b(o)).abs());
        }
    }
    ensure(worst <= 1e-12, || format!("marginal moved by {worst:e}"))?;
    Ok(format!("10^3 states, largest marginal shift {worst:.1e}"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 CHSH classical bound", chsh_bound, Some(Duration::from_secs(1))),
        ("2 Hardy probability", hardy_probability, None),
        ("3 basis-expansion fidelity", basis_expansions, None),
        ("4 diagonal escape", diagonal_escape, Some(Duration::from_secs(1))),
        ("5 toy information bound", toy_bound, Some(Duration::from_secs(5))),
        ("6 paradox verdicts", paradox_verdicts, None),
        ("7 quantum violation", quantum_violation, Some(Duration::from_secs(10))),
        ("8 non-signalling", non_signalling, None),
    ];
    let mut failed = 0;
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let result = match (result, limit) {
            (Ok(msg), Some(l)) if took > l => Err(format!("{msg}, but took {took:.2?} (limit {l:?})")),
            (r, _) => r,
        };
        match result {
            Ok(msg) => println!("PASS  {name:<28} {took:>9.2?}  {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  {name:<28} {took:>9.2?}  {msg}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} of 8 criteria failed");
        std::process::exit(1);
    }
    println!("all 8 criteria passed");
}
