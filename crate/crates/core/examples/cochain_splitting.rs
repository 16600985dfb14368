//! The antisymmetrization cochains a^k and the primitive of a cup product,
//! checked exactly on sampled lattice points.

use moduli_coh::splitting::{splitting_map, verify_cup_primitive, verify_d_after_a, DualVector};

fn main() -> moduli_coh::Result<()> {
    let phis = [DualVector::from_integers(&[1, 2, 0]), DualVector::from_integers(&[0, -1, 3])];
    let a2 = splitting_map(&phis)?;
    let x = [vec![1, 0, 2], vec![-3, 1, 1]];
    println!("a^2(phi1 ^ phi2) at {x:?} = {}", a2.eval(&x)?);

    for (k, d) in [(1, 2), (2, 2), (2, 3), (3, 3)] {
        let r = verify_d_after_a(k, d, 500, 1)?;
        println!("{}: {} samples, {} failures", r.label, r.samples, r.failures);
    }
    let r = verify_cup_primitive(&phis[0], &phis[1], 500, 1)?;
    println!("{}: {} failures", r.label, r.failures);
    Ok(())
}
