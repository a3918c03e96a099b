//! Builds character tables and prints them with their center decomposition.
//!
//! ```bash
//! cargo run --example character_tables -- sl2:3 heisenberg:3
//! ```

use central_fourier::chartab::character_table;
use central_fourier::group::make_group;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut specs: Vec<String> = std::env::args().skip(1).collect();
    if specs.is_empty() {
        specs = vec!["sym:3".into(), "cyclic:3".into(), "sl2:3".into()];
    }
    for spec in specs {
        let t = character_table(&make_group(&spec)?)?;
        println!("{} (order {}, conductor {}, Dixon prime {:?})", t.label(), t.order(), t.conductor(), t.dixon_prime());
        println!("  |C|  {:?}", t.class_sizes());
        println!("  ord  {:?}", t.rep_orders());
        for (i, row) in t.values().iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            println!("  X{i:<3} {}", cells.join("  "));
        }
        let blocks = t.center_decomposition();
        println!("  center blocks {:?}, degree sums {:?}", blocks.blocks, blocks.degree_sums(&t));
        println!();
    }
    Ok(())
}
