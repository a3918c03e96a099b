//! Writes a character table, a Cayley table and a permutation file, then reads them back.
//!
//! ```bash
//! cargo run --example file_formats -- /tmp/cf-out
//! ```

use std::path::PathBuf;

use central_fourier::catalog::{
    load_cayley, load_chartable, load_perm_group, save_cayley, save_chartable, save_perm_group, PermGroupFile,
};
use central_fourier::chartab::character_table;
use central_fourier::group::make_group;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    std::fs::create_dir_all(&dir)?;

    let g = make_group("quaternion:8")?;
    let t = character_table(&g)?;
    let ctbl = dir.join("q8.ctbl.json");
    save_chartable(&t, &ctbl)?;
    println!("{} -> {} characters", ctbl.display(), load_chartable(&ctbl)?.class_count());

    let cayley = dir.join("q8.cayley.json");
    save_cayley(&g, &cayley)?;
    println!("{} -> order {}", cayley.display(), load_cayley(&cayley)?.order());

    let file = PermGroupFile {
        label: "A4".into(),
        degree: 4,
        generators: vec![vec![1, 2, 0, 3], vec![1, 0, 3, 2]],
        semidirect: None,
        marked: Default::default(),
    };
    let perm = dir.join("a4.perm.json");
    save_perm_group(&file, &perm)?;
    println!("{} -> order {}", perm.display(), load_perm_group(&perm)?.order());
    Ok(())
}
