//! Evaluates both finite hypergroups of a group and compares with the direct constants.
//!
//! ```bash
//! cargo run --example hypergroups -- sym:4
//! ```

use central_fourier::amenability::{amza, amzl, conj_hypergroup, dual_hypergroup, hypergroup_am, DEFAULT_TOLERANCE_EXPONENT};
use central_fourier::chartab::character_table;
use central_fourier::group::make_group;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "sl2:3".into());
    let t = character_table(&make_group(&spec)?)?;
    for h in [conj_hypergroup(&t)?, dual_hypergroup(&t)?] {
        println!("{}: {} points, total weight {}", h.label(), h.size(), h.total_weight());
        println!("  haar            {:?}", h.haar().iter().map(|w| w.to_string()).collect::<Vec<_>>());
        println!("  hyperdimensions {:?}", h.hyperdimensions().iter().map(|w| w.to_string()).collect::<Vec<_>>());
        println!("  AM = {}", hypergroup_am(&h, DEFAULT_TOLERANCE_EXPONENT)?.render());
    }
    println!("direct AMZL = {}", amzl(&t, DEFAULT_TOLERANCE_EXPONENT).render());
    println!("direct AMZA = {}", amza(&t)?);
    Ok(())
}
