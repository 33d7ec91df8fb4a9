//! Builds the diagonal measurement of an outcome table, shows it matches no
//! row, then adds it as a new row and shows the bigger table escapes again.

use epistemic_horizon::algebra::{
    diagonal_measurement, extend_by_diagonal, find_matching_row, lawvere_check, MeasurementTable, OutcomeMap,
};
use epistemic_horizon::Outcome;

fn main() -> epistemic_horizon::Result<()> {
    let table = MeasurementTable::from_grid(
        "+ - + + +
         + - + - -
         - + - - -
         + - - + +
         - - - + +",
    )?;
    print!("{}", table.to_grid());

    let g = diagonal_measurement(&table)?;
    println!("{} = {:?}", g.provenance(), g.outcomes());
    println!("matching row: {:?}", find_matching_row(&table, &g)?);

    for alpha in OutcomeMap::ALL {
        let report = lawvere_check(&table, alpha)?;
        println!(
            "alpha {alpha:<13} rows equal to g: {:?}, fixed points: {:?}, contradiction: {}",
            report.matching_rows, report.alpha_fixed_points, report.contradiction
        );
    }

    // Add m_g as measurement 6, on a new state 6 of our choosing.
    let bigger = extend_by_diagonal(&table, &[Outcome::Plus; 6])?;
    let g2 = diagonal_measurement(&bigger)?;
    println!(
        "after extending: new diagonal matches row {:?}",
        find_matching_row(&bigger, &g2)?
    );
    Ok(())
}
