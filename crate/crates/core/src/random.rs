//! Seeded random acyclic complexes for the agreement and property suites.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::chain::{BasedChainComplex, ComplexChainComplex, Mat};

type CMat = DMatrix<Complex64>;

fn gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// A random invertible matrix with standard normal complex entries,
/// regenerated until reasonably conditioned.
fn random_invertible(n: usize, rng: &mut impl Rng) -> CMat {
    loop {
        let g = CMat::from_fn(n, n, |_, _| gaussian(rng));
        let sv = g.clone().svd(false, false).singular_values;
        if sv.min() > 1e-2 * sv.max() {
            return g;
        }
    }
}

/// A random acyclic complex with at most `max_top + 1` degrees and ranks at
/// most 2 * `max_piece_rank`.
///
/// Construction: a split acyclic shape (each degree an isomorphic image
/// slot plus a kernel slot) conjugated by random invertible basis changes,
/// so acyclicity is exact by design while every boundary entry is a dense
/// combination of standard normals.
pub fn random_acyclic_complex_with(
    rng: &mut impl Rng,
    max_top: usize,
    max_piece_rank: usize,
) -> ComplexChainComplex {
    let top = rng.gen_range(1..=max_top.max(1));
    // rank of the k-th boundary, k = 1..=top
    let piece: Vec<usize> = (0..top).map(|_| rng.gen_range(1..=max_piece_rank.max(1))).collect();
    let rank_at = |k: usize| -> usize {
        let down = if k >= 1 { piece.get(k - 1).copied().unwrap_or(0) } else { 0 };
        let up = piece.get(k).copied().unwrap_or(0);
        down + up
    };
    let ranks: Vec<usize> = (0..=top).map(rank_at).collect();
    let changes: Vec<CMat> = ranks.iter().map(|&n| random_invertible(n, rng)).collect();

    let mut boundaries = Vec::with_capacity(top);
    for k in 1..=top {
        // base shape: the last piece[k-1] coordinates of degree k map
        // identically onto the first piece[k-1] coordinates of degree k-1
        let mut base = CMat::zeros(ranks[k - 1], ranks[k]);
        for i in 0..piece[k - 1] {
            base[(i, ranks[k] - piece[k - 1] + i)] = Complex64::new(1.0, 0.0);
        }
        let inv = changes[k].clone().try_inverse().expect("conditioned");
        let b = &changes[k - 1] * base * inv;
        let mut m = Mat::zeros(ranks[k - 1], ranks[k]);
        for i in 0..ranks[k - 1] {
            for j in 0..ranks[k] {
                m.set(i, j, b[(i, j)]);
            }
        }
        boundaries.push(m);
    }
    BasedChainComplex::new(ranks, boundaries).expect("construction is exact by design")
}

/// The default test-suite shape: up to 5 degrees, ranks up to 6.
pub fn random_acyclic_complex(rng: &mut impl Rng) -> ComplexChainComplex {
    random_acyclic_complex_with(rng, 4, 3)
}
