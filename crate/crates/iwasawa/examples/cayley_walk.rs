//! Walk the Cayley descent: starting from the maximally noncompact
//! Cartan, repeatedly move along a real cascade root. Each step lowers
//! the noncompact dimension by one and removes one real cascade root,
//! so the walk takes exactly #K_reel steps and the difference
//! `dim a − #K_reel` never moves.
//!
//!     cargo run --example cayley_walk

use iwasawa::realform::{analyze, CayleyState, Registry};

fn main() {
    let reg = Registry::load().expect("registry loads");
    for name in ["sl(4,R)", "su(2,4)", "so(2,3)", "EVI", "sl(2,H)"] {
        let a = analyze(reg.get(name).unwrap()).unwrap();
        let mut st = CayleyState::new(&a);
        println!(
            "{name}: dim a = {}, #K_reel = {}, invariant = {}",
            st.dim_a,
            st.kreel.len(),
            st.dim_a - st.kreel.len() as i64
        );
        let mut step = 0;
        while let Some(&k) = st.kreel.first() {
            let eps = a.epsilon_of(k);
            st = st.reduce(k).expect("real cascade root");
            step += 1;
            println!(
                "  step {step}: descend along {:?}  ->  dim a = {}, #K_reel = {}",
                eps.coeffs,
                st.dim_a,
                st.kreel.len()
            );
        }
        if step == 0 {
            println!("  no real cascade roots: the Cartan is already maximally compact");
        }
    }
}
