//! Cross-checks the periodic resolution against the bar complex and
//! cohomology_at against gcds of minors, on seeded random inputs.

use moduli_coh::brute::{bar_cyclic_cohomology, cyclic_oracle_agreement, linalg_oracle_agreement};
use moduli_coh::cyclic::CyclicAction;
use moduli_coh::linalg::IntegerMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> moduli_coh::Result<()> {
    let a = CyclicAction::integral(6, IntegerMatrix::from_rows(&[[0, -1], [1, 1]]))?;
    let bar: Vec<String> = bar_cyclic_cohomology(&a, 3)?.iter().map(ToString::to_string).collect();
    println!("bar complex, Z/6 on Z^2: {bar:?}");

    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cyclic = cyclic_oracle_agreement(&mut rng, 20)?;
    let linalg = linalg_oracle_agreement(&mut rng, 50)?;
    println!("seed {seed}: cyclic {} checked, {} mismatches", cyclic.checked, cyclic.mismatches.len());
    println!("seed {seed}: complexes {} checked, {} mismatches", linalg.checked, linalg.mismatches.len());
    Ok(())
}
