mod common;

use common::chain_dim_by_shapes;
use hamtorus::basis::{dim_graded_piece, BasisKind};
use hamtorus::complex::{young_shapes, WedgeWord, YoungShape};
use hamtorus::tables;
use hamtorus::{boundary_matrix, chain_basis, Model, WeightComplex};
use proptest::prelude::*;

#[test]
fn shape_examples() {
    let mut got: Vec<Vec<u32>> = young_shapes(4, 2, |_| u64::MAX).iter().map(|s| s.multiplicities().to_vec()).collect();
    got.sort();
    assert_eq!(got, vec![vec![0, 2], vec![1, 0, 1]]);
    let got: Vec<Vec<u32>> = young_shapes(2, 2, |j| if j == 1 { 4 } else { 8 }).iter().map(|s| s.multiplicities().to_vec()).collect();
    assert_eq!(got, vec![vec![2]]);
    assert!(young_shapes(1, 2, |_| 10).is_empty());
    let shape = YoungShape::new(vec![1, 0, 2, 0, 0]);
    assert_eq!(shape.multiplicities(), &[1, 0, 2]);
    assert_eq!((shape.length(), shape.area()), (3, 7));
}

proptest! {
    #[test]
    fn shapes_are_exactly_the_capped_partitions(area in 0usize..12, length in 0usize..7, cap in 0u64..4) {
        let shapes = young_shapes(area, length, |_| cap);
        let mut seen = std::collections::HashSet::new();
        for s in &shapes {
            prop_assert_eq!(s.area(), area);
            prop_assert_eq!(s.length(), length);
            prop_assert!(s.multiplicities().iter().all(|&k| k as u64 <= cap));
            prop_assert!(seen.insert(s.multiplicities().to_vec()));
        }
        let brute = count_capped(area, length, 1, cap);
        prop_assert_eq!(shapes.len() as u64, brute);
        let sorted: Vec<_> = shapes.iter().map(|s| s.multiplicities().to_vec()).collect();
        prop_assert!(sorted.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn wedge_normalization_sign(perm in Just((0u32..6).collect::<Vec<_>>()).prop_shuffle()) {
        let (sign, w) = WedgeWord::normalize(perm.clone()).unwrap();
        prop_assert_eq!(w.generators(), &[0, 1, 2, 3, 4, 5]);
        let inversions = (0..6).flat_map(|i| (i + 1..6).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
        prop_assert_eq!(sign, if inversions % 2 == 0 { 1 } else { -1 });
    }
}

/// Number of partitions of `area` into exactly `length` parts `>= min`,
/// each part size used at most `cap` times.
fn count_capped(area: usize, length: usize, min: usize, cap: u64) -> u64 {
    if length == 0 {
        return u64::from(area == 0);
    }
    let mut total = 0;
    for j in min..=area {
        for k in 1..=(cap as usize).min(length) {
            if k * j > area {
                break;
            }
            total += count_capped(area - k * j, length - k, j + 1, cap);
        }
    }
    total
}

#[test]
fn repeated_generators_vanish() {
    assert!(WedgeWord::normalize(vec![3, 1, 3]).is_none());
    assert_eq!(WedgeWord::normalize(vec![2, 0, 1]).unwrap().0, 1);
    assert_eq!(WedgeWord::normalize(vec![1, 0]).unwrap().0, -1);
}

#[test]
fn chain_dimensions_match_tables_and_shape_counts() {
    for r in tables::T2.iter().chain(tables::T4.iter()) {
        for kind in [BasisKind::Product, BasisKind::Fourier] {
            let model = Model::torus(r.n, kind).unwrap();
            let complex = WeightComplex::new(model, r.w, r.dim.len() + 1).unwrap();
            for (i, &d) in r.dim.iter().enumerate() {
                let m = i + 1;
                assert_eq!(complex.dim(m), d, "T^{} w={} m={m}", r.n, r.w);
                let cap = |j: usize| dim_graded_piece(r.n, j as u32, kind).unwrap();
                assert_eq!(chain_dim_by_shapes(r.w as usize, m, &cap), d as u64);
            }
            assert_eq!(complex.dim(r.dim.len() + 1), 0);
        }
    }
}

#[test]
fn chain_basis_examples() {
    let t2 = Model::torus(2, BasisKind::Product).unwrap();
    assert_eq!(chain_basis(4, 3, t2).unwrap().dim(), 48);
    assert_eq!(chain_basis(6, 6, t2).unwrap().dim(), 0);
    assert_eq!(chain_basis(2, 2, Model::torus(4, BasisKind::Product).unwrap()).unwrap().dim(), 28);
    assert!(chain_basis(3, 0, t2).is_err());
}

#[test]
fn chain_words_are_canonical() {
    let model = Model::torus(2, BasisKind::Fourier).unwrap();
    let basis = chain_basis(5, 3, model).unwrap();
    let gens = basis.generators();
    for (i, w) in basis.words().iter().enumerate() {
        assert_eq!(basis.index_of(w), Some(i));
        let g = w.generators();
        assert!(g.windows(2).all(|p| p[0] < p[1]));
        let degrees: Vec<u32> = g.iter().map(|&x| gens.word(x).degree()).collect();
        assert!(degrees.windows(2).all(|p| p[0] <= p[1]));
        assert_eq!(degrees.iter().sum::<u32>(), 5);
        assert!(degrees.iter().all(|&d| d >= 1));
    }
}

#[test]
fn polynomial_spaces_respect_the_degree_bound() {
    let r2 = Model::euclidean(2).unwrap();
    for w in -2..=3i64 {
        let top = r2.max_chain_degree(w);
        assert_eq!(top as i64, (w + 7).max(0));
        let complex = WeightComplex::new(r2, w, top + 3).unwrap();
        for m in top + 1..=top + 3 {
            assert_eq!(complex.dim(m), 0, "w={w} m={m}");
        }
        for m in 1..=top {
            if (m as i64) < -w {
                assert_eq!(complex.dim(m), 0);
            }
        }
    }
    // weight -1: linear functions, dimension 2 on R^2
    assert_eq!(chain_basis(-1, 1, r2).unwrap().dim(), 2);
}

#[test]
fn small_boundaries() {
    let t2 = Model::torus(2, BasisKind::Product).unwrap();
    let d = boundary_matrix(2, 2, t2).unwrap();
    assert_eq!((d.rows(), d.cols()), (8, 6));
    assert_eq!(common::dense_rank(&d), 4);
    let d = boundary_matrix(3, 3, t2).unwrap();
    assert_eq!((d.rows(), d.cols()), (32, 4));
    assert_eq!(common::dense_rank(&d), 4);
    assert!(boundary_matrix(3, 1, t2).is_err());
}

#[test]
fn boundary_squares_to_zero() {
    let mut models = Vec::new();
    for kind in [BasisKind::Product, BasisKind::Fourier] {
        models.push((Model::torus(2, kind).unwrap(), 6));
        models.push((Model::torus(4, kind).unwrap(), 5));
        models.push((Model::degenerate_torus(3, 1, kind).unwrap(), 4));
    }
    for (model, max_w) in models {
        for w in 3..=max_w {
            let complex = WeightComplex::new(model, w, w as usize).unwrap();
            for m in 3..=w as usize {
                let product = complex.boundary(m - 1).unwrap().mul(&complex.boundary(m).unwrap()).unwrap();
                assert!(product.is_zero(), "{model} w={w} m={m}");
            }
        }
    }
    let r2 = Model::euclidean(2).unwrap();
    for w in -1..=2 {
        let top = r2.max_chain_degree(w).min(7);
        let complex = WeightComplex::new(r2, w, top).unwrap();
        for m in 3..=top {
            assert!(complex.boundary(m - 1).unwrap().mul(&complex.boundary(m).unwrap()).unwrap().is_zero());
        }
    }
}

#[test]
fn assembly_is_reproducible() {
    let model = Model::torus(4, BasisKind::Fourier).unwrap();
    let a = boundary_matrix(4, 3, model).unwrap().to_triplet_string();
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let b = single.install(|| boundary_matrix(4, 3, model).unwrap().to_triplet_string());
    assert_eq!(a, b);
    let c = WeightComplex::new(model, 4, 4).unwrap().boundary(3).unwrap().to_triplet_string();
    assert_eq!(a, c);
}

/// Boundary entries preserve the degree carried by each coordinate slot.
#[test]
fn boundary_preserves_slot_degrees() {
    let model = Model::torus(4, BasisKind::Product).unwrap();
    let complex = WeightComplex::new(model, 4, 3).unwrap();
    let d = complex.boundary(3).unwrap();
    let gens = complex.basis(3).generators().clone();
    let slot_profile = |g: &[u32]| -> Vec<u32> {
        (1..=4).map(|s| g.iter().map(|&x| gens.word(x).slot_degree(s)).sum()).collect()
    };
    for (r, c, _) in d.entries() {
        let src = &complex.basis(3).words()[*c as usize];
        let dst = &complex.basis(2).words()[*r as usize];
        assert_eq!(slot_profile(src.generators()), slot_profile(dst.generators()));
    }
}
