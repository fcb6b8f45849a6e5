//! Smith normal form over the integers in exact arbitrary-precision
//! arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Invariant factors d_1 | d_2 | ... of an integer matrix, as positive u64
/// values. The count equals the rank over the rationals.
pub fn invariant_factors(rows: usize, cols: usize, entry: impl Fn(usize, usize) -> i64) -> Vec<u64> {
    let mut m: Vec<Vec<BigInt>> =
        (0..rows).map(|i| (0..cols).map(|j| BigInt::from(entry(i, j))).collect()).collect();
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pick a nonzero pivot of minimal absolute value in the trailing block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero()
                    && pivot.map_or(true, |(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }

        // clear row and column t by Euclidean steps; restart whenever a
        // remainder smaller than the pivot appears
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !m[i][t].is_zero() {
                    let q = div_nearest(&m[i][t], &m[t][t]);
                    for j in t..cols {
                        let v = &m[i][j] - &q * &m[t][j];
                        m[i][j] = v;
                    }
                    if !m[i][t].is_zero() {
                        m.swap(t, i);
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !m[t][j].is_zero() {
                    let q = div_nearest(&m[t][j], &m[t][t]);
                    for row in m.iter_mut().skip(t) {
                        let v = &row[j] - &q * &row[t];
                        row[j] = v;
                    }
                    if !m[t][j].is_zero() {
                        for row in m.iter_mut() {
                            row.swap(t, j);
                        }
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }

        // force divisibility: if some trailing entry is not divisible by the
        // pivot, fold its row into row t and redo this step
        let mut redo = false;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&m[i][j] % &m[t][t]).is_zero() {
                    for col in t..cols {
                        let v = &m[t][col] + &m[i][col];
                        m[t][col] = v;
                    }
                    redo = true;
                    break 'scan;
                }
            }
        }
        if redo {
            continue;
        }
        out.push(m[t][t].abs());
        t += 1;
    }
    out.into_iter().map(|d| u64::try_from(d).expect("invariant factor overflows u64")).collect()
}

/// Quotient rounded to nearest, so the remainder has at most half the
/// divisor's magnitude.
fn div_nearest(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if &r.abs() * 2 > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::{One, Signed, Zero};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn factors(m: &[&[i64]]) -> Vec<u64> {
        invariant_factors(m.len(), m.first().map_or(0, |r| r.len()), |i, j| m[i][j])
    }

    #[test]
    fn diagonal_reorders_into_divisor_chain() {
        assert_eq!(factors(&[&[6, 0], &[0, 4]]), vec![2, 12]);
        assert_eq!(factors(&[&[2, 0], &[0, 3]]), vec![1, 6]);
    }

    #[test]
    fn known_small_cases() {
        assert_eq!(factors(&[&[1]]), vec![1]);
        assert_eq!(factors(&[&[0]]), Vec::<u64>::new());
        assert_eq!(factors(&[&[5]]), vec![5]);
        assert_eq!(factors(&[&[2, 4], &[6, 8]]), vec![2, 4]);
        // rank 1
        assert_eq!(factors(&[&[1, 2], &[2, 4]]), vec![1]);
        assert_eq!(factors(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]), vec![2, 6, 12]);
    }

    /// Oracle: d_1 ... d_k equals the gcd of all k x k minors.
    fn minor_gcd_products(m: &[Vec<i64>]) -> Vec<BigInt> {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        let mut out = Vec::new();
        for k in 1..=rows.min(cols) {
            let mut g = BigInt::zero();
            for ri in combinations(rows, k) {
                for ci in combinations(cols, k) {
                    let d = det(&ri, &ci, m);
                    g = g.gcd(&d.abs());
                }
            }
            if g.is_zero() {
                break;
            }
            out.push(g);
        }
        out
    }

    fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for last in k - 1..n {
            for mut head in combinations(last, k - 1) {
                head.push(last);
                out.push(head);
            }
        }
        out
    }

    fn det(ri: &[usize], ci: &[usize], m: &[Vec<i64>]) -> BigInt {
        let k = ri.len();
        if k == 1 {
            return BigInt::from(m[ri[0]][ci[0]]);
        }
        let mut acc = BigInt::zero();
        for (pos, &r) in ri.iter().enumerate() {
            let rest: Vec<usize> = ri.iter().copied().filter(|&x| x != r).collect();
            let sub = det(&rest, &ci[1..], m);
            let term = BigInt::from(m[r][ci[0]]) * sub;
            if pos % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn random_matrices_match_minor_gcd_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let rows = rng.gen_range(1..=4);
            let cols = rng.gen_range(1..=4);
            let m: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_range(-9i64..=9)).collect())
                .collect();
            let got = invariant_factors(rows, cols, |i, j| m[i][j]);
            let gcds = minor_gcd_products(&m);
            assert_eq!(got.len(), gcds.len(), "rank mismatch for {m:?}");
            let mut prod = BigInt::one();
            for (k, &d) in got.iter().enumerate() {
                prod *= BigInt::from(d);
                assert_eq!(prod, gcds[k], "minor gcd mismatch at k={} for {m:?}", k + 1);
            }
            // divisibility chain
            for w in got.windows(2) {
                assert_eq!(w[1] % w[0], 0);
            }
        }
    }
}
