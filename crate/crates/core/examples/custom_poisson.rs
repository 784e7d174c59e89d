//! Chain spaces and boundary ranks for a hand-built model, degree by degree.

use hamtorus::bracket::PoissonStructure;
use hamtorus::{rank, BasisKind, Model, RankPolicy, WeightComplex};

fn main() -> hamtorus::Result<()> {
    // T^6 with only the first two coordinate pairs coupled
    let model = Model::new(BasisKind::Fourier, PoissonStructure::degenerate(6, 2)?);
    let complex = WeightComplex::new(model, 2, 3)?;
    for m in 1..=3 {
        print!("m={m} dim {}", complex.dim(m));
        if m >= 2 {
            let d = complex.boundary(m)?;
            print!(", rank d_{m} = {}", rank(&d, RankPolicy::Fast, 0).0);
        }
        println!();
    }
    Ok(())
}
