//! Exact arithmetic in cyclotomic fields and certified magnitudes.
//!
//! ```bash
//! cargo run --example cyclotomic_arithmetic
//! ```

use central_fourier::cyclotomic::Cyclotomic;
use central_fourier::rational::decimal_string;

fn main() {
    let z3 = Cyclotomic::root_of_unity(3, 1);
    let z4 = Cyclotomic::root_of_unity(4, 1);
    println!("1 + z3 + z3^2 = {}", &(&Cyclotomic::one() + &z3) + &(&z3 * &z3));
    let mixed = &z3 + &z4;
    println!("z3 + i = {mixed} (conductor {})", mixed.conductor());
    println!("conj   = {}", mixed.conj());
    println!("galois 5 = {}", mixed.galois(5));
    let norm = &mixed * &mixed.conj();
    println!("|z3 + i|^2 = {norm}, rational: {:?}", norm.as_rational().map(|q| q.to_string()));
    let m = mixed.magnitude(30);
    println!("|z3 + i| in [{}, {}]", decimal_string(&m.lo, 32), decimal_string(&m.hi, 32));
    println!("as f64 {:?}", mixed.to_complex_f64());
}
