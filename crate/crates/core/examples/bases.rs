//! Graded pieces of the product and Fourier bases and the bijection between them.

use hamtorus::basis::{dim_graded_piece, enumerate_graded_piece, multiply_top, psi_map};
use hamtorus::{BasisKind, BasisWord};

fn main() -> hamtorus::Result<()> {
    println!("{:>3} {:>8} {:>8} {:>10}", "k", "T^2", "T^4", "R^2 poly");
    for k in 0..=6 {
        println!(
            "{k:>3} {:>8} {:>8} {:>10}",
            dim_graded_piece(2, k, BasisKind::Product)?,
            dim_graded_piece(4, k, BasisKind::Product)?,
            dim_graded_piece(2, k, BasisKind::Polynomial)?,
        );
    }

    for u in enumerate_graded_piece(2, 2, BasisKind::Product)?.words() {
        println!("{u:>22}  ->  {}", psi_map(u)?);
    }

    // cos^2 x is rewritten as 1 - sin^2 x; only the top-degree part survives
    let u = BasisWord::product(&[1], &[1])?;
    let v = BasisWord::product(&[0], &[1])?;
    println!("({u}) * ({v}) = {}", multiply_top(&u, &v)?);
    Ok(())
}
