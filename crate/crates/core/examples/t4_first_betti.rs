//! First Betti numbers on the 4-torus: matrix ranks against the closed form 16w - 8.

use hamtorus::homology::{corank_closed, corank_recursive};
use hamtorus::{corank_computed, BasisKind, BettiOptions, Model};

fn main() -> hamtorus::Result<()> {
    let model = Model::torus(4, BasisKind::Product)?;
    println!("{:>3} {:>9} {:>9} {:>7}", "w", "computed", "recursion", "closed");
    for w in 1..=6u64 {
        let computed = corank_computed(w as i64, model, &BettiOptions::default(), None)?;
        let rec = corank_recursive(w, 4)?;
        let closed = corank_closed(w, 4).unwrap();
        println!("{w:>3} {computed:>9} {rec:>9} {closed:>7}");
    }
    Ok(())
}
