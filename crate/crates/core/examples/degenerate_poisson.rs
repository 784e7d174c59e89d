//! A rank-2 Poisson structure on T^3: the free coordinate splits off and the
//! first Betti numbers follow from the symplectic ones.

use hamtorus::homology::corank_poisson_product;
use hamtorus::{corank_computed, BasisKind, BettiOptions, Model};

fn main() -> hamtorus::Result<()> {
    let model = Model::degenerate_torus(3, 1, BasisKind::Product)?;
    println!("{model}");
    for w in 1..=5 {
        let computed = corank_computed(w, model, &BettiOptions::default(), None)?;
        let formula = corank_poisson_product(w as u64, 3, 1)?;
        println!("w={w}: computed {computed}, formula {formula}");
    }
    Ok(())
}
