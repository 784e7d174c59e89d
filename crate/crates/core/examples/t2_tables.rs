//! Betti tables of the weight-graded complex on the 2-torus, w = 2..6.

use hamtorus::{betti_table, BasisKind, BettiOptions, Model};

fn main() -> hamtorus::Result<()> {
    let model = Model::torus(2, BasisKind::Product)?;
    for w in 2..=6 {
        let t = betti_table(w, model, model.max_chain_degree(w), &BettiOptions::default(), None)?;
        println!("w={w}");
        let row = |xs: Vec<Option<usize>>| xs.iter().map(|x| format!("{:>5}", x.map_or("-".into(), |v| v.to_string()))).collect::<String>();
        println!("  dim  {}", row(t.dims().into_iter().map(Some).collect()));
        println!("  ker  {}", row(t.kernels()));
        println!("  H    {}", row(t.bettis()));
    }
    Ok(())
}
