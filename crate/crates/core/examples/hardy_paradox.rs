//! The Hardy state in all four product bases, the certain conditionals each
//! basis supports, and the verdict on chaining them.

use epistemic_horizon::quantum::{born, certain_conditionals, change_basis, hardy_state, Basis};
use epistemic_horizon::reasoner::hardy_demo;
use epistemic_horizon::Outcome;

fn main() -> epistemic_horizon::Result<()> {
    let h = hardy_state();
    for settings in [
        (Basis::Z, Basis::Z),
        (Basis::X, Basis::X),
        (Basis::X, Basis::Z),
        (Basis::Z, Basis::X),
    ] {
        let t = change_basis(&h, settings);
        let amps: Vec<String> = t.amplitudes().iter().map(|a| format!("{:+.6}", a.re)).collect();
        let certain: Vec<String> = certain_conditionals(&h, settings)?
            .iter()
            .map(|p| format!("({p})"))
            .collect();
        println!(
            "({}, {}): [{}]  certain: {}",
            settings.0,
            settings.1,
            amps.join(", "),
            certain.join(" ")
        );
    }

    let trace = hardy_demo();
    for s in &trace.steps {
        println!(
            "step {}: {} -> ({}) {}",
            s.step.id, s.step.premise, s.step.conclusion, s.verdict
        );
    }
    println!("fused ({}): {}", trace.fused_conclusion, trace.chain_verdict);
    let p = born(&h, (Basis::X, Basis::X)).p(Outcome::Minus, Outcome::Minus);
    println!("yet P(x_A^-, x_B^-) = {p:.6}");
    Ok(())
}
