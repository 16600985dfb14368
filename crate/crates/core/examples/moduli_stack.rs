//! The Leray E_2 page for M_1 -> M_11, its dagger part and the mod-2 count.

use moduli_coh::moduli::{fty_consistency, E2Page};
use moduli_coh::tables::{moduli_half_table, moduli_table, Format};

fn main() -> moduli_coh::Result<()> {
    let page = E2Page::compute(9)?;
    for n in 0..=9 {
        let terms: Vec<String> = page.diagonal(n).iter().map(|((p, q), g)| format!("E2^({p},{q}) = {g}")).collect();
        println!("n = {n}: {}", terms.join(", "));
    }
    println!();
    print!("{}", moduli_table(9)?.render(Format::Markdown));
    println!();
    print!("{}", moduli_half_table(9)?.render(Format::Markdown));

    let report = fty_consistency(8)?;
    println!("\nn  tensor  torsion  total  expected");
    for r in &report.rows {
        println!("{}  {:>6}  {:>7}  {:>5}  {:>8}", r.n, r.dim_tensor, r.dim_torsion, r.computed, r.expected);
    }
    println!("consistent: {}", report.is_consistent());
    Ok(())
}
