//! Regenerate the cascade tables: `k` per simple type, and the sets of
//! strongly orthogonal cascade roots in simple-root coordinates.
//!
//!     cargo run --example cascade_tables

use iwasawa::cascade::{k_g, kostant_cascade};
use iwasawa::rootsys::{Family, RootSystem, SimpleType};

fn main() {
    println!("k per simple type (rank up to 12):");
    for (family, lo) in [
        (Family::A, 1usize),
        (Family::B, 2),
        (Family::C, 3),
        (Family::D, 4),
    ] {
        let ks: Vec<String> = (lo..=12)
            .map(|l| {
                let t = SimpleType::new(family, l).unwrap();
                format!("{t}:{}", k_g(t))
            })
            .collect();
        println!("  {}", ks.join("  "));
    }
    for t in [
        SimpleType::new(Family::E, 6).unwrap(),
        SimpleType::new(Family::E, 7).unwrap(),
        SimpleType::new(Family::E, 8).unwrap(),
        SimpleType::new(Family::F, 4).unwrap(),
        SimpleType::new(Family::G, 2).unwrap(),
    ] {
        println!("  {t}:{}", k_g(t));
    }

    println!("\ncascade roots (epsilon_K per element, outermost first):");
    let mut types = vec![
        SimpleType::new(Family::A, 5).unwrap(),
        SimpleType::new(Family::B, 6).unwrap(),
        SimpleType::new(Family::C, 5).unwrap(),
        SimpleType::new(Family::D, 6).unwrap(),
        SimpleType::new(Family::D, 7).unwrap(),
    ];
    for l in 6..=8 {
        types.push(SimpleType::new(Family::E, l).unwrap());
    }
    types.push(SimpleType::new(Family::F, 4).unwrap());
    types.push(SimpleType::new(Family::G, 2).unwrap());
    for t in types {
        let rs = RootSystem::build(t);
        let c = kostant_cascade(&rs, &rs.full_base());
        println!("  {t}:");
        for e in &c.elements {
            let nodes: Vec<String> = e.subset.iter().map(|&n| (n + 1).to_string()).collect();
            println!("    K = {{{}}}  epsilon = {:?}", nodes.join(","), e.epsilon.coeffs);
        }
    }
}
