//! The SL2(Z) modules Sym^k(Z^2) and the generator relations they satisfy.

use moduli_coh::linalg::BaseRing;
use moduli_coh::modules::{GeneratorSet, GroupModule, GEN_S, GEN_U};

fn main() -> moduli_coh::Result<()> {
    let gens = GeneratorSet::standard();
    gens.check_relations(BaseRing::Integers)?;
    println!("S =\n{}\nU =\n{}\nT = S^-1 U =\n{}", gens.s, gens.u, gens.t());

    let m = GroupModule::sym_power(3, BaseRing::Integers)?;
    println!("{} has rank {}", m.label(), m.rank());
    println!("S acts by\n{}", m.action(GEN_S)?);
    println!("U acts by\n{}", m.action(GEN_U)?);

    let m5 = GroupModule::sym_power(6, BaseRing::prime_field(5)?)?;
    let fixed = m5.fixed_vectors_mod_p().expect("prime field");
    println!("Sym^6(F_5^2) has {} invariant vectors", fixed.len());
    Ok(())
}
