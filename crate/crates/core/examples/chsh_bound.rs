//! Exact CHSH values of local hidden-variable models: the sixteen
//! deterministic vertices, a mixture, and feasibility of given correlations.

use epistemic_horizon::lhv::{
    chsh, chsh_from_negative_weight, chsh_from_positive_weight, feasible, CorrelationSet, HiddenVariableModel,
    LambdaState,
};

fn main() -> epistemic_horizon::Result<()> {
    for l in LambdaState::all() {
        let v = chsh(&HiddenVariableModel::point_mass(l));
        println!("lambda_{:<2} {:?}  CHSH {v}", l.index(), l.values().map(|o| o.value()));
    }

    let mixed = HiddenVariableModel::from_weights(&[3, 0, 1, 0, 2, 0, 0, 1, 0, 5, 0, 0, 1, 0, 0, 3])?;
    println!(
        "mixture: CHSH {} = 2 - 4 * (anti weight) = {} = 4 * (pro weight) - 2 = {}",
        chsh(&mixed),
        chsh_from_negative_weight(&mixed),
        chsh_from_positive_weight(&mixed)
    );

    for text in ["1,1,1,1", "0,0,0,0", "1/2,1/2,1/2,-1/2", "1,1,1,-1", "0.7,0.7,0.7,-0.7"] {
        let c = CorrelationSet::parse(text)?;
        match feasible(&c) {
            Some(m) => println!("{text}: feasible, witness weights {:?}", m.to_strings()),
            None => println!("{text}: infeasible (CHSH {})", c.chsh()),
        }
    }
    Ok(())
}
