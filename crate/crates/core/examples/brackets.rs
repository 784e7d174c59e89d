//! Top-degree Poisson brackets in the three bases, with the cokernel witnesses on T^2.

use hamtorus::basis::LinearCombination;
use hamtorus::bracket::{bracket_words, cokernel_witnesses_t2};
use hamtorus::{bracket_top, BasisKind, BasisWord, PoissonStructure};

fn main() -> hamtorus::Result<()> {
    let pi = PoissonStructure::symplectic(2)?;

    // sin x cos y and sin^2 x
    let u = BasisWord::product(&[1, 0], &[0, 1])?;
    let v = BasisWord::product(&[2, 0], &[0, 0])?;
    println!("{{{u}, {v}}} = {}", bracket_words(&u, &v, &pi)?);

    let f = BasisWord::fourier(&[2, -1])?;
    let g = BasisWord::fourier(&[-1, 3])?;
    println!("{{{f}, {g}}} = {}", bracket_words(&f, &g, &pi)?);

    let p = BasisWord::polynomial(&[2, 1])?;
    let q = BasisWord::polynomial(&[0, 3])?;
    println!("{{{p}, {q}}} = {}", bracket_words(&p, &q, &pi)?);

    // brackets extend bilinearly
    let mut sum = LinearCombination::from_word(f.clone());
    sum.add_term(g.clone(), hamtorus::Coeff::new(1, 2));
    println!("{{{sum}, {f}}} = {}", bracket_top(&sum, &LinearCombination::from_word(f.clone()), &pi)?);

    for kind in [BasisKind::Product, BasisKind::Fourier] {
        let ws: Vec<String> = cokernel_witnesses_t2(3, kind)?.iter().map(|w| w.to_string()).collect();
        println!("{kind} words not reached by brackets at degree 3: {}", ws.join(", "));
    }
    Ok(())
}
