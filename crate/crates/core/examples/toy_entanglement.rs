//! Measures z_B on the maximally entangled toy state for a few seeds: z_A is
//! then fixed opposite, and every x observable becomes undecided.

use epistemic_horizon::toy::{entangled_state, infer, measure, ObservableId};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> epistemic_horizon::Result<()> {
    let start = entangled_state();
    println!("initial {start}, {} independent bits", start.independent_count());
    for seed in 0..4 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = measure(&start, ObservableId::Z_B, &mut rng)?;
        let after = &r.post_state;
        println!(
            "seed {seed}: z_B = {:+}, state {after}, z_A = {:?}, x_A = {:?}, x_B = {:?}, x_AB = {:?}",
            r.outcome.value(),
            infer(after, ObservableId::Z_A)?,
            infer(after, ObservableId::X_A)?,
            infer(after, ObservableId::X_B)?,
            infer(after, ObservableId::X_AB)?,
        );
    }
    Ok(())
}
