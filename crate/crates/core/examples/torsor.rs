//! The 4-element torsor under M[2] = (Z/2)^2 and the cocycle count for GL2(Z/4).

use moduli_coh::torsor::{build_canonical_torsor, h1_one_cocycles, torsor_nontriviality_witness, FiniteGroupData, Mat2Z4};

fn main() -> moduli_coh::Result<()> {
    let t = build_canonical_torsor();
    println!("|M*/±1| = {}, |T| = {}", t.classes.len(), t.t.len());
    for &m in &t.m2 {
        println!("translate by {m:?}: {:?}", t.translation(m)?.0);
    }
    let w = torsor_nontriviality_witness();
    println!("{} permutes T as {:?}", w.generator, w.permutation.0);
    println!("-I acts as {:?}", t.matrix_action(&Mat2Z4::new([[-1, 0], [0, -1]]))?.0);

    for (name, g) in [("GL2(Z/4)", FiniteGroupData::gl2_z4_on_f2_squared()), ("SL2(Z/4)", FiniteGroupData::sl2_z4_on_f2_squared())] {
        println!("dim H^1({name}, (Z/2)^2) = {}", h1_one_cocycles(&g)?);
    }
    Ok(())
}
