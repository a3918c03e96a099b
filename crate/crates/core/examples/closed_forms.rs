//! Checks the closed forms against direct computation.
//!
//! ```bash
//! cargo run --example closed_forms -- aff:11 quaternion:8
//! ```

use central_fourier::amenability::DEFAULT_TOLERANCE_EXPONENT;
use central_fourier::chartab::character_table;
use central_fourier::closed_forms::{extraspecial_formula, frobenius_ass_check, verify_theorem, GroupProfile, TheoremId};
use central_fourier::group::make_group;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut specs: Vec<String> = std::env::args().skip(1).collect();
    if specs.is_empty() {
        specs = ["sym:3", "aff:7", "dihedral:8", "heisenberg:5", "direct(dihedral:8,cyclic:2)"].map(String::from).to_vec();
    }
    for spec in specs {
        let t = character_table(&make_group(&spec)?)?;
        let profile = GroupProfile::from_table(&t);
        println!("{spec}: cd = {:?}, cc = {:?}", profile.cd_set, profile.cc_set);
        for which in TheoremId::ALL {
            let r = verify_theorem(&t, which, DEFAULT_TOLERANCE_EXPONENT)?;
            match (&r.closed_form, r.equal) {
                (Some(c), Some(eq)) => println!("  {which}: closed {c}, direct {} -> {}", r.direct_amza, if eq { "equal" } else { "MISMATCH" }),
                _ => println!("  {which}: not applicable"),
            }
        }
        if let Some((formula, direct)) = frobenius_ass_check(&t)? {
            println!("  Frobenius ass: formula {formula}, direct {direct}");
        }
        if let Some((p, n)) = profile.extraspecial {
            println!("  extraspecial p = {p}, n = {n}: formula {}", extraspecial_formula(p, n));
        }
    }
    Ok(())
}
