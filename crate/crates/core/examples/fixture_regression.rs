//! Loads the committed SmallGroup fixtures and prints their constants.
//!
//! ```bash
//! cargo run --example fixture_regression
//! ```

use std::path::PathBuf;
use std::time::Instant;

use central_fourier::amenability::{amza, amzl, ass};
use central_fourier::catalog::{load_perm_group, load_perm_group_marked, quotient_compare};
use central_fourier::chartab::character_table;
use central_fourier::group::DEFAULT_MAX_ORDER;
use central_fourier::rational::exact_with_decimal;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in ["sg_32_43", "sg_96_204", "sg_192_1022", "sg_256_10070", "sg_567_16"] {
        let start = Instant::now();
        let g = load_perm_group(&fixture(&format!("{name}.perm.json")))?;
        let t = character_table(&g)?;
        println!("{} (order {}, {} classes)", g.label(), g.order(), t.class_count());
        println!("  AMZA = {}", exact_with_decimal(&amza(&t)?));
        println!("  AMZL = {}", amzl(&t, 30).render());
        println!("  ass  = {}", exact_with_decimal(&ass(&t)?));
        println!("  {:.2?}", start.elapsed());
    }

    let (g, marks) = load_perm_group_marked(&fixture("sg_192_1022.perm.json"), DEFAULT_MAX_ORDER)?;
    let c = quotient_compare(&g, &marks["N"])?;
    println!("G = {}, |N| = {}", g.label(), c.normal_order);
    println!("  AMZA(G) = {}  AMZA(G/N) = {}", exact_with_decimal(&c.amza_group), exact_with_decimal(&c.amza_quotient));
    println!("  ass(G)  = {}  ass(G/N)  = {}", exact_with_decimal(&c.ass_group), exact_with_decimal(&c.ass_quotient));
    println!("  AMZA(G) >= AMZA(G/N): {}", c.amza_holds);
    Ok(())
}
