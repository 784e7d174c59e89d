//! Builds one boundary matrix, writes it in triplet text form, reads it back
//! and compares the rank policies.

use hamtorus::linalg::{rank_exact, RankMethod};
use hamtorus::{boundary_matrix, rank, BasisKind, Model, RankPolicy, SparseRationalMatrix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let model = Model::torus(4, BasisKind::Fourier)?;
    let d = boundary_matrix(4, 3, model)?;
    println!("d_3 at w=4 on {model}: {}x{}, {} nonzeros", d.rows(), d.cols(), d.nnz());

    let text = d.to_triplet_string();
    println!("{}", text.lines().take(4).collect::<Vec<_>>().join("\n"));
    let back: SparseRationalMatrix = text.parse()?;
    assert_eq!(back, d);

    let (fast, cert) = rank(&back, RankPolicy::Fast, 1);
    if let RankMethod::Modular { primes } = &cert.method {
        println!("rank {fast} mod {primes:?}");
    }
    println!("exact rank {}", rank_exact(&back));
    Ok(())
}
