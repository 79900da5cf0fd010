//! Structure constants up close: brackets in a Chevalley basis, the
//! Killing form, and semisimplicity of adjoint operators.
//!
//!     cargo run --example chevalley_playground

use iwasawa::chevalley::{basis_elem, StructureConstants};
use iwasawa::rootsys::{Family, RootSystem, SimpleType};
use num::One;

fn main() {
    let t = SimpleType::new(Family::G, 2).unwrap();
    let sc = StructureConstants::new(RootSystem::build(t));
    println!("type {t}: dim g = {}", sc.dim());

    println!("\nstructure constants N on positive pairs:");
    let m = sc.num_positive();
    for i in 0..m {
        for j in 0..m {
            let a = &sc.rs.positive_roots[i];
            let b = &sc.rs.positive_roots[j];
            if i < j && sc.rs.is_root(&a.add(b)) {
                println!("  N[{:?}, {:?}] = {}", a.coeffs, b.coeffs, sc.n(a, b));
            }
        }
    }

    println!("\nJacobi violations over all basis triples: {}", sc.jacobi_violations());

    let h = basis_elem(sc.cartan_index(0));
    println!("\nkappa(H_1, H_1) = {}", sc.invariant_form(&h, &h));

    // a root vector is never ad-semisimple, X + X_opposite always is
    let x = basis_elem(0);
    let mut sym = basis_elem(0);
    sym.insert(m, num::BigRational::one());
    println!(
        "ad X semisimple: {}   ad (X + X_opp) semisimple: {}",
        sc.ad_semisimple(&x),
        sc.ad_semisimple(&sym)
    );
}
