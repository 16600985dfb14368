//! Smith normal form of an integer matrix and the cohomology of a small complex.

use moduli_coh::linalg::{smith_normal_form, BaseRing, CochainComplex, IntegerMatrix};

fn main() -> moduli_coh::Result<()> {
    let a = IntegerMatrix::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]);
    let s = smith_normal_form(&a);
    println!("A =\n{a}");
    println!("diagonal: {:?}", s.diagonal_entries().iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("U A V == D: {}", &(&s.left * &a) * &s.right == s.diagonal);

    // Z --2--> Z --0--> Z: cohomology Z/2 in the middle degree.
    let c = CochainComplex::new(
        vec![1, 1, 1],
        vec![IntegerMatrix::from_rows(&[[2]]), IntegerMatrix::from_rows(&[[0]])],
        BaseRing::Integers,
    )?;
    for n in 0..=2 {
        println!("H^{n} = {}", c.cohomology_at(n)?);
    }
    Ok(())
}
