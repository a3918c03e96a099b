//! Compares AMZA and ass of a group with every quotient by a normal closure of one element.
//!
//! ```bash
//! cargo run --example quotient_scan -- sl2:5
//! ```

use central_fourier::catalog::{quotient_compare_with, single_element_normal_closures};
use central_fourier::chartab::character_table;
use central_fourier::group::make_group;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "sym:4".into());
    let g = make_group(&spec)?;
    let t = character_table(&g)?;
    for n in single_element_normal_closures(&g) {
        let c = quotient_compare_with(&g, &t, &n)?;
        println!(
            "|N| = {:>3}: AMZA {} vs {} ({}), ass {} vs {} ({})",
            n.order(),
            c.amza_group,
            c.amza_quotient,
            if c.amza_holds { "ok" } else { "violated" },
            c.ass_group,
            c.ass_quotient,
            if c.ass_holds { "ok" } else { "violated" },
        );
    }
    Ok(())
}
