//! q-torsion in H^1(SL2(Z), Sym^(q+1)) witnessed by the Dickson invariant.

use moduli_coh::moduli::p_torsion_scan;

fn main() -> moduli_coh::Result<()> {
    for q in [3, 5, 7, 11, 13] {
        let w = p_torsion_scan(q)?;
        println!(
            "q = {q}: invariant mod {q}: {}, H^1 = {}, divisible factor {}",
            w.invariance_holds(),
            w.h1,
            w.divisible_factor.map_or("none".to_string(), |d| format!("Z/{d}"))
        );
    }
    Ok(())
}
