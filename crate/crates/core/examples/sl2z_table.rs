//! H^p(SL2(Z), Sym^k Z^2) from the amalgam SL2(Z) = Z/4 *_{Z/2} Z/6.

use moduli_coh::amalgam::{sl2z_cohomology, CoefficientRing};
use moduli_coh::tables::{sl2z_table, Format};

fn main() -> moduli_coh::Result<()> {
    print!("{}", sl2z_table(6, 7)?.render(Format::Markdown));

    let g = sl2z_cohomology(4, 1, &CoefficientRing::Integers)?;
    println!("\nH^1(G, M_4) = {g} = {}", g.render_primary());
    let half = sl2z_cohomology(4, 1, &CoefficientRing::Localized(vec![2]))?;
    println!("with 2 inverted: {}", half.render_localized(&[2]));
    println!("over F_3: {}", sl2z_cohomology(4, 1, &CoefficientRing::Mod(3))?);
    Ok(())
}
