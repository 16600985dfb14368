//! Runs a verification suite by name, as the command-line tool does.

use moduli_coh::verify::{run_suite, Suite};

fn main() -> moduli_coh::Result<()> {
    let suite: Suite = std::env::args().nth(1).as_deref().unwrap_or("torsor").parse()?;
    let report = run_suite(suite, 0);
    print!("{}", report.render());
    Ok(())
}
