//! Which rank-one standard parabolics `p_{{α}}` are quasi-reductive:
//! the verdict per simple root for every simple type of rank up to 8.
//!
//!     cargo run --example parabolic_table

use iwasawa::paraquasi::table_row;
use iwasawa::rootsys::{Family, SimpleType};

fn main() {
    let mut types = Vec::new();
    for l in 1..=8 {
        types.push(SimpleType::new(Family::A, l).unwrap());
    }
    for l in 2..=8 {
        types.push(SimpleType::new(Family::B, l).unwrap());
    }
    for l in 3..=8 {
        types.push(SimpleType::new(Family::C, l).unwrap());
    }
    for l in 4..=8 {
        types.push(SimpleType::new(Family::D, l).unwrap());
    }
    for l in 6..=8 {
        types.push(SimpleType::new(Family::E, l).unwrap());
    }
    types.push(SimpleType::new(Family::F, 4).unwrap());
    types.push(SimpleType::new(Family::G, 2).unwrap());

    println!("x = quasi-reductive, . = not (node order beta1..beta_l)");
    for t in types {
        let row = table_row(t);
        let marks: String = row.iter().map(|&v| if v { 'x' } else { '.' }).collect();
        println!("  {:<4} {}", t.to_string(), marks);
    }
}
