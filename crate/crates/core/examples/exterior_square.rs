//! Exterior algebra on the duals of a torus and circles: the pullback of
//! H^2(BT) and the commuting square for Sym^k, k = 1, 2.

use moduli_coh::exterior::{evaluate_h2, pullback_on_h2, verify_square, verify_square_with_flip};
use moduli_coh::splitting::DualVector;

fn main() -> moduli_coh::Result<()> {
    let lambda = DualVector::from_integers(&[2, -1]);
    let e = pullback_on_h2(&lambda)?;
    println!("pullback = {e}");
    println!("on ((1,0),1) ^ ((0,1),0): {}", evaluate_h2(&e, [1, 0], 1, [0, 1], 0));

    for k in [1, 2] {
        let r = verify_square(k)?;
        println!("k = {k}: sign {:?}", r.sign);
        for row in &r.rows {
            println!("  x2^{}: {}", row.power_of_x2, row.top);
        }
    }
    println!("flipped control passes: {}", verify_square_with_flip(2, 0)?.passed());
    Ok(())
}
