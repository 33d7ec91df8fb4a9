//! Which toy states let us vary A's value while holding B's fixed, and why
//! the two anticorrelation inferences cannot be fused.

use epistemic_horizon::reasoner::epr_demo;

fn main() {
    let trace = epr_demo();
    for c in &trace.counterfactuals {
        println!("{}: vary {}, keep {} -> {}", c.state, c.vary, c.hold, c.supported);
    }
    for s in &trace.steps {
        println!(
            "step {} in {}: ({}) {}",
            s.step.id, s.step.context, s.step.conclusion, s.verdict
        );
    }
    println!("element of reality {}: {}", trace.fused_conclusion, trace.chain_verdict);
}
