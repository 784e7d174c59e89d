//! The corank recursion in every even dimension, its closed forms, and the
//! alternating identity it satisfies.

use hamtorus::homology::{alternating_identity_check, corank_closed, CorankRecursion};

fn main() -> hamtorus::Result<()> {
    let mut table = CorankRecursion::new();
    print!("{:>5}", "2n\\w");
    for w in 0..=8 {
        print!("{w:>8}");
    }
    println!();
    for two_n in (2..=10).step_by(2) {
        print!("{two_n:>5}");
        for w in 0..=8 {
            print!("{:>8}", table.get(w, two_n)?);
        }
        println!();
    }

    // closed forms exist through dimension 6
    for w in [1, 10, 100] {
        println!("closed form, 2n=6, w={w}: {}", corank_closed(w, 6).unwrap());
    }

    let ok = (1..=5).all(|n| (n + 1..=50).all(|w| alternating_identity_check(w, n).unwrap()));
    println!("alternating identity for n<=5, w<=50: {ok}");
    Ok(())
}
