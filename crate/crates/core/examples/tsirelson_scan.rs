//! Scans measurement angles on the singlet for the largest CHSH value, then
//! asks whether any local hidden-variable model matches those correlations.

use epistemic_horizon::lhv::{feasible, CorrelationSet};
use epistemic_horizon::quantum::{scan_chsh, QubitPairState};
use num::BigRational;

fn main() -> epistemic_horizon::Result<()> {
    let singlet = QubitPairState::singlet();
    let scan = scan_chsh(&singlet, 16, 1e-3);
    println!("angles {:?}", scan.angles);
    println!("CHSH {:.6} (2 sqrt 2 = {:.6})", scan.value, 2.0 * 2f64.sqrt());

    let [xx, xz, zx, zz] = scan
        .correlations(&singlet)
        .map(|e| BigRational::from_float(e).expect("finite"));
    let c = CorrelationSet::new(xx, xz, zx, zz)?;
    println!(
        "local model: {}",
        if feasible(&c).is_some() { "exists" } else { "none" }
    );
    Ok(())
}
