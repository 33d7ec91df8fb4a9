//! The friend-lab chain: each agent's inference holds in its own context,
//! but telescoping them needs three definite bits about a two-bit system.

use epistemic_horizon::reasoner::{fr_demo, Reason};

fn main() {
    let trace = fr_demo();
    for s in &trace.steps {
        println!(
            "[{}] in {} : {} => ({})  {}",
            s.step.id, s.step.context, s.step.premise, s.step.conclusion, s.verdict
        );
    }
    println!("A concludes ({}): {}", trace.fused_conclusion, trace.chain_verdict);
    if let Some(v) = &trace.chain_verdict.violation {
        assert_eq!(v.reason(), Reason::InformationBoundExceeded);
    }
    if let Some(c) = &trace.counterexample {
        println!("both A and B see -1 with probability {}", c.exact);
    }
}
