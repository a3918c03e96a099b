//! Prints AMZA, AMZL and ass, flagging groups where AMZA and AMZL differ.
//!
//! ```bash
//! cargo run --example amenability_constants -- sym:4 alt:5
//! ```

use central_fourier::amenability::{report, DEFAULT_TOLERANCE_EXPONENT};
use central_fourier::chartab::character_table;
use central_fourier::group::make_group;
use central_fourier::rational::exact_with_decimal;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut specs: Vec<String> = std::env::args().skip(1).collect();
    if specs.is_empty() {
        specs = ["dihedral:16", "sl2:3", "sym:4", "alt:5", "heisenberg:5"].map(String::from).to_vec();
    }
    for spec in specs {
        let t = character_table(&make_group(&spec)?)?;
        let r = report(&t, DEFAULT_TOLERANCE_EXPONENT)?;
        println!("{} (order {}, |Z| = {})", r.label, r.group_order, r.center_order);
        println!("  AMZA = {}", r.amza.render());
        println!("  AMZL = {}{}", r.amzl.render(), if r.amzl_inner_integral { "" } else { "  (enclosure)" });
        println!("  ass  = {}", exact_with_decimal(&r.ass));
        if r.amza.value() != r.amzl.value() {
            println!("  AMZA and AMZL differ");
        }
    }
    Ok(())
}
