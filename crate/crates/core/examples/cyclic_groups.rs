//! Cohomology of finite cyclic groups from the periodic resolution.

use moduli_coh::cyclic::{cyclic_cohomology, restriction_cochain_matrix, CyclicAction};
use moduli_coh::linalg::IntegerMatrix;

fn main() -> moduli_coh::Result<()> {
    let rotation = CyclicAction::integral(4, IntegerMatrix::from_rows(&[[0, -1], [1, 0]]))?;
    for n in 0..=4 {
        println!("H^{n}(Z/4, Z^2 rotated) = {}", cyclic_cohomology(&rotation, n)?);
    }

    let swap = CyclicAction::integral(2, IntegerMatrix::from_rows(&[[0, 1], [1, 0]]))?;
    let reflection = CyclicAction::integral(2, IntegerMatrix::diagonal(&[1, -1]))?;
    println!("H^2(Z/2, Z^2 swapped) = {}", cyclic_cohomology(&swap, 2)?);
    println!("H^2(Z/2, Z + Z(-1)) = {}", cyclic_cohomology(&reflection, 2)?);

    let order6 = CyclicAction::integral(6, IntegerMatrix::from_rows(&[[0, -1], [1, 1]]))?;
    println!("restriction Z/6 -> Z/3 on 1-cochains:\n{}", restriction_cochain_matrix(&order6, 2, 1)?);
    Ok(())
}
