//! Polynomial vector fields on the symplectic plane have no first homology
//! in any weight.

use hamtorus::homology::chain_dims;
use hamtorus::{corank_computed, BettiOptions, Model};

fn main() -> hamtorus::Result<()> {
    let model = Model::euclidean(2)?;
    for w in -1..=6 {
        let dims = chain_dims(w, model, 4)?;
        let corank = corank_computed(w, model, &BettiOptions::default(), None)?;
        println!("w={w:>2}  dims(m=1..4) {dims:?}  first Betti {corank}");
    }
    Ok(())
}
