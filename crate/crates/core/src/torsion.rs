//! Torsion of complexes over the complex numbers by several independent
//! routes: transition-matrix determinants, chain contractions, alternating
//! singular-value products, and combinatorial Laplacian spectra, plus the
//! long-exact-sequence correction term for short exact sequences.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use crate::chain::{ComplexChainComplex, DEFAULT_RANK_TOL};
use crate::error::{Error, Result};
use crate::group_ring::TorsionClass;

type CMat = DMatrix<Complex64>;

/// Chosen homology class representatives: per degree, a matrix whose columns
/// are chains spanning homology.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub columns: Vec<CMat>,
}

/// A degree +1 map witnessing acyclicity: boundary times kappa plus kappa
/// times boundary is the identity, and kappa squares to zero.
#[derive(Clone, Debug)]
pub struct ChainContraction {
    /// kappas[k] maps degree k to degree k+1.
    pub kappas: Vec<CMat>,
}

/// Spectral decomposition data of the combinatorial Laplacians.
#[derive(Clone, Debug)]
pub struct HodgeData {
    /// Eigenvalues of the degree-k Laplacian, ascending.
    pub eigenvalues: Vec<Vec<f64>>,
    /// Orthonormal basis of the kernel of the Laplacian per degree.
    pub harmonic: Vec<CMat>,
    /// Orthonormal basis of the image of the incoming boundary per degree.
    pub exact: Vec<CMat>,
    /// Orthonormal basis of the image of the adjoint boundary per degree.
    pub coexact: Vec<CMat>,
}

fn svd_of(m: &CMat) -> nalgebra::SVD<Complex64, nalgebra::Dyn, nalgebra::Dyn> {
    m.clone().svd(true, true)
}

fn rank_of(m: &CMat, rel_tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let top = sv.max();
    sv.iter().filter(|&&s| s > rel_tol * top).count()
}

/// Rank against an absolute singular-value threshold, for matrices judged
/// on the scale of a whole complex.
fn rank_abs(m: &CMat, thr: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    sv.iter().filter(|&&s| s > thr).count()
}

/// Largest singular value across all boundary maps; rank decisions inside
/// one complex are thresholded against this common scale.
fn complex_scale(bd: &[CMat]) -> f64 {
    bd.iter()
        .filter(|m| m.nrows() > 0 && m.ncols() > 0)
        .map(|m| m.clone().svd(false, false).singular_values.max())
        .fold(0.0f64, f64::max)
}

fn pseudo_inverse_eps(m: &CMat, eps: f64) -> CMat {
    if m.nrows() == 0 || m.ncols() == 0 {
        return CMat::zeros(m.ncols(), m.nrows());
    }
    svd_of(m).pseudo_inverse(eps).expect("svd computed")
}

fn pseudo_inverse(m: &CMat, rel_tol: f64) -> CMat {
    if m.nrows() == 0 || m.ncols() == 0 {
        return CMat::zeros(m.ncols(), m.nrows());
    }
    let top = m.clone().svd(false, false).singular_values.max();
    pseudo_inverse_eps(m, rel_tol * top)
}

/// Orthonormal basis of the column space, as columns, against an absolute
/// threshold.
fn image_basis(m: &CMat, thr: f64) -> CMat {
    if m.nrows() == 0 || m.ncols() == 0 {
        return CMat::zeros(m.nrows(), 0);
    }
    let svd = svd_of(m);
    let u = svd.u.as_ref().expect("u computed");
    let r = svd.singular_values.iter().filter(|&&s| s > thr).count();
    u.columns(0, r).into_owned()
}

/// Stable selection of column indices of `m` spanning its image:
/// Gram-Schmidt with column pivoting on the largest residual, stopping at
/// the singular-value rank.
fn pivot_columns(m: &CMat, thr: f64) -> Vec<usize> {
    let r = rank_abs(m, thr);
    if r == 0 {
        return Vec::new();
    }
    let mut work = m.clone();
    let mut chosen: Vec<usize> = Vec::with_capacity(r);
    while chosen.len() < r {
        let j = (0..work.ncols())
            .filter(|j| !chosen.contains(j))
            .max_by(|&a, &b| {
                work.column(a)
                    .norm()
                    .partial_cmp(&work.column(b).norm())
                    .expect("finite norms")
            })
            .expect("rank bounded by column count");
        let q = work.column(j).normalize();
        chosen.push(j);
        for jj in 0..work.ncols() {
            if chosen.contains(&jj) {
                continue;
            }
            let overlap = q.dotc(&work.column(jj));
            let updated = work.column(jj) - &q * overlap;
            work.set_column(jj, &updated);
        }
    }
    chosen.sort_unstable();
    chosen
}

/// Boundary maps padded with an empty map above the top degree, so that
/// degree k always has an incoming boundary at index k+1.
fn padded_boundaries(c: &ComplexChainComplex) -> Vec<CMat> {
    let mut bd = c.to_na_boundaries();
    let top_rank = *c.ranks().last().expect("nonempty");
    bd.push(CMat::zeros(top_rank, 0));
    bd
}

/// Torsion from transition determinants between the stored basis and a
/// boundary-adapted basis in each degree, defined modulo sign.
///
/// For a two-term complex with invertible boundary M this is 1/det(M); the
/// specialized circle gives the class of 1/(t-1).
pub fn torsion_milnor(
    c: &ComplexChainComplex,
    hbasis: Option<&HomologyBasis>,
) -> Result<TorsionClass> {
    let bd = padded_boundaries(c);
    let n = c.top_degree();
    let h = c.homology_ranks();
    let thr = DEFAULT_RANK_TOL * complex_scale(&bd);

    // per degree: columns of C_k mapping isomorphically onto the image of
    // the outgoing boundary
    let lifts: Vec<Vec<usize>> = (0..=n + 1)
        .map(|k| if k <= n { pivot_columns(&bd[k], thr) } else { Vec::new() })
        .collect();

    let mut value = Complex64::new(1.0, 0.0);
    for k in 0..=n {
        let rk = c.ranks()[k];
        let mut m = CMat::zeros(rk, rk);
        let mut col = 0;
        // image of the incoming boundary
        for &j in &lifts[k + 1] {
            m.set_column(col, &bd[k + 1].column(j));
            col += 1;
        }
        // homology representatives
        if h[k] > 0 {
            let basis = hbasis.ok_or(Error::NonAcyclic { degree: k })?;
            let cols = basis.columns.get(k).filter(|b| b.nrows() == rk && b.ncols() == h[k]);
            let cols = cols.ok_or_else(|| Error::BadHomologyBasis {
                degree: k,
                reason: format!("need {} representative chains of length {}", h[k], rk),
            })?;
            for j in 0..h[k] {
                m.set_column(col, &cols.column(j));
                col += 1;
            }
        }
        // lifts of the outgoing boundary image
        for &j in &lifts[k] {
            let mut e = CMat::zeros(rk, 1);
            e[(j, 0)] = Complex64::new(1.0, 0.0);
            m.set_column(col, &e.column(0));
            col += 1;
        }
        debug_assert_eq!(col, rk);
        let det = m.determinant();
        if det.norm() < 1e-300 {
            return Err(Error::BadHomologyBasis {
                degree: k,
                reason: "transition matrix is singular (dependent classes?)".into(),
            });
        }
        if k % 2 == 0 {
            value /= det;
        } else {
            value *= det;
        }
    }
    Ok(TorsionClass::sign_only(value))
}

fn require_acyclic(c: &ComplexChainComplex) -> Result<()> {
    if let Some(k) = c.homology_ranks().iter().position(|&h| h > 0) {
        return Err(Error::NonAcyclic { degree: k });
    }
    Ok(())
}

/// The orthogonal-splitting contraction: kappa is the pseudo-inverse of the
/// boundary in each degree.
pub fn build_contraction(c: &ComplexChainComplex) -> Result<ChainContraction> {
    require_acyclic(c)?;
    let bd = c.to_na_boundaries();
    let n = c.top_degree();
    let thr = DEFAULT_RANK_TOL * complex_scale(&bd);
    let kappas = (0..n).map(|k| pseudo_inverse_eps(&bd[k + 1], thr)).collect();
    Ok(ChainContraction { kappas })
}

/// A contraction from randomized right splittings: generalized right
/// inverses s_k = pinv + (projector onto ker) * random, combined as
/// kappa_k = s_{k+1} (id - s_k boundary_k). Squares to zero by
/// construction; used to test independence of the contraction choice.
pub fn build_contraction_randomized(
    c: &ComplexChainComplex,
    rng: &mut impl Rng,
) -> Result<ChainContraction> {
    require_acyclic(c)?;
    let bd = padded_boundaries(c);
    let n = c.top_degree();
    let thr = DEFAULT_RANK_TOL * complex_scale(&bd);
    let splittings: Vec<CMat> = (0..=n + 1)
        .map(|k| {
            let d = &bd[k];
            let pinv = pseudo_inverse_eps(d, thr);
            if d.nrows() == 0 || d.ncols() == 0 {
                return pinv;
            }
            let proj_ker = CMat::identity(d.ncols(), d.ncols()) - &pinv * d;
            let random = CMat::from_fn(d.ncols(), d.nrows(), |_, _| {
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            });
            pinv + proj_ker * random
        })
        .collect();
    let kappas = (0..n)
        .map(|k| {
            let id = CMat::identity(c.ranks()[k], c.ranks()[k]);
            &splittings[k + 1] * (id - &splittings[k] * &bd[k])
        })
        .collect();
    Ok(ChainContraction { kappas })
}

/// Largest residual of the contraction identities: boundary kappa plus
/// kappa boundary minus identity, and kappa squared.
pub fn contraction_residual(c: &ComplexChainComplex, kappa: &ChainContraction) -> f64 {
    let bd = padded_boundaries(c);
    let n = c.top_degree();
    let mut worst: f64 = 0.0;
    for k in 0..=n {
        let rk = c.ranks()[k];
        let mut acc = -CMat::identity(rk, rk);
        if k < n {
            acc += &bd[k + 1] * &kappa.kappas[k];
        }
        if k > 0 {
            acc += &kappa.kappas[k - 1] * &bd[k];
        }
        worst = worst.max(acc.norm());
        if k + 1 < n {
            worst = worst.max((&kappa.kappas[k + 1] * &kappa.kappas[k]).norm());
        }
    }
    worst
}

/// Torsion as the determinant of (boundary + kappa) mapping even chains to
/// odd chains, for an explicitly supplied contraction.
pub fn torsion_with_contraction(
    c: &ComplexChainComplex,
    kappa: &ChainContraction,
) -> Result<TorsionClass> {
    require_acyclic(c)?;
    let bd = padded_boundaries(c);
    let n = c.top_degree();
    let even: Vec<usize> = (0..=n).step_by(2).collect();
    let odd: Vec<usize> = (1..=n).step_by(2).collect();
    let rows: usize = odd.iter().map(|&k| c.ranks()[k]).sum();
    let cols: usize = even.iter().map(|&k| c.ranks()[k]).sum();
    if rows != cols {
        return Err(Error::NonAcyclic { degree: 0 });
    }
    let offset = |list: &[usize], deg: usize| -> usize {
        list.iter().take_while(|&&k| k != deg).map(|&k| c.ranks()[k]).sum()
    };
    let mut m = CMat::zeros(rows, cols);
    for &e in &even {
        let c0 = offset(&even, e);
        // boundary down to degree e-1
        if e >= 1 {
            let r0 = offset(&odd, e - 1);
            let b = &bd[e];
            m.view_mut((r0, c0), (b.nrows(), b.ncols())).copy_from(b);
        }
        // kappa up to degree e+1
        if e < n {
            let r0 = offset(&odd, e + 1);
            let k = &kappa.kappas[e];
            m.view_mut((r0, c0), (k.nrows(), k.ncols())).copy_from(k);
        }
    }
    Ok(TorsionClass::sign_only(m.determinant()))
}

/// Torsion via the orthogonal-splitting contraction.
pub fn torsion_contraction(c: &ComplexChainComplex) -> Result<TorsionClass> {
    let kappa = build_contraction(c)?;
    torsion_with_contraction(c, &kappa)
}

/// |torsion| as the alternating product over degrees of the nonzero
/// singular values of the boundary maps.
pub fn torsion_alternating(c: &ComplexChainComplex) -> Result<f64> {
    require_acyclic(c)?;
    let bd = c.to_na_boundaries();
    let thr = DEFAULT_RANK_TOL * complex_scale(&bd);
    let mut value = 1.0f64;
    for (k, d) in bd.iter().enumerate().skip(1) {
        if d.nrows() == 0 || d.ncols() == 0 {
            continue;
        }
        let sv = d.clone().svd(false, false).singular_values;
        let prod: f64 = sv.iter().filter(|&&s| s > thr).product();
        if k % 2 == 0 {
            value *= prod;
        } else {
            value /= prod;
        }
    }
    Ok(value)
}

/// Relative eigenvalue threshold separating the kernel of a Laplacian from
/// its nonzero spectrum.
const SPECTRUM_TOL: f64 = 1e-9;

/// Laplacians, spectra, and the orthogonal harmonic/exact/coexact
/// decomposition in every degree.
pub fn hodge(c: &ComplexChainComplex) -> HodgeData {
    let bd = padded_boundaries(c);
    let n = c.top_degree();
    let thr = DEFAULT_RANK_TOL * complex_scale(&bd);
    let eigs: Vec<Option<nalgebra::SymmetricEigen<Complex64, nalgebra::Dyn>>> = (0..=n)
        .map(|k| {
            if c.ranks()[k] == 0 {
                return None;
            }
            let down = &bd[k];
            let up = &bd[k + 1];
            Some(nalgebra::SymmetricEigen::new(down.adjoint() * down + up * up.adjoint()))
        })
        .collect();
    // kernel detection against the largest eigenvalue across all degrees
    let global_top = eigs
        .iter()
        .flatten()
        .flat_map(|e| e.eigenvalues.iter().copied())
        .fold(0.0f64, f64::max);
    let eig_thr = SPECTRUM_TOL * global_top;

    let mut eigenvalues = Vec::with_capacity(n + 1);
    let mut harmonic = Vec::with_capacity(n + 1);
    let mut exact = Vec::with_capacity(n + 1);
    let mut coexact = Vec::with_capacity(n + 1);
    for (k, eig) in eigs.iter().enumerate() {
        let rk = c.ranks()[k];
        let Some(eig) = eig else {
            eigenvalues.push(Vec::new());
            harmonic.push(CMat::zeros(0, 0));
            exact.push(CMat::zeros(0, 0));
            coexact.push(CMat::zeros(0, 0));
            continue;
        };
        let mut order: Vec<usize> = (0..rk).collect();
        order.sort_by(|&a, &b| {
            eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).expect("real spectrum")
        });
        let vals: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i].max(0.0)).collect();
        let kernel_dim = vals.iter().filter(|&&v| v <= eig_thr).count();
        let mut kernel = CMat::zeros(rk, kernel_dim);
        for (j, &i) in order.iter().take(kernel_dim).enumerate() {
            kernel.set_column(j, &eig.eigenvectors.column(i));
        }
        eigenvalues.push(vals);
        harmonic.push(kernel);
        exact.push(image_basis(&bd[k + 1], thr));
        coexact.push(image_basis(&bd[k].adjoint(), thr));
    }
    HodgeData { eigenvalues, harmonic, exact, coexact }
}

impl HodgeData {
    pub fn harmonic_dims(&self) -> Vec<usize> {
        self.harmonic.iter().map(CMat::ncols).collect()
    }

    pub fn homology_basis(&self) -> HomologyBasis {
        HomologyBasis { columns: self.harmonic.clone() }
    }
}

/// |torsion| from the nonzero Laplacian spectra:
/// product over degrees of det'(Laplacian_i)^(i (-1)^i / 2), together with
/// the harmonic dimensions. For acyclic complexes this equals the other
/// |torsion|s; otherwise it is the torsion relative to the orthonormal
/// harmonic homology basis.
pub fn laplacian_torsion(c: &ComplexChainComplex) -> (f64, Vec<usize>) {
    let data = hodge(c);
    let global_top = data.eigenvalues.iter().flatten().fold(0.0f64, |a, &b| a.max(b));
    let mut log = 0.0f64;
    for (i, vals) in data.eigenvalues.iter().enumerate() {
        let det_ln: f64 = vals
            .iter()
            .filter(|&&v| v > SPECTRUM_TOL * global_top)
            .map(|&v| v.ln())
            .sum();
        let exponent = (i as f64) * if i % 2 == 0 { 0.5 } else { -0.5 };
        log += exponent * det_ln;
    }
    (log.exp(), data.harmonic_dims())
}

fn is_chain_map(
    from: &ComplexChainComplex,
    to: &ComplexChainComplex,
    maps: &[CMat],
    tol: f64,
) -> bool {
    let (bf, bt) = (from.to_na_boundaries(), to.to_na_boundaries());
    let n = from.top_degree().min(to.top_degree());
    (1..=n).all(|k| (&bt[k] * &maps[k] - &maps[k - 1] * &bf[k]).norm() <= tol)
}

/// Torsion of the long exact homology sequence of a degreewise short exact
/// sequence of complexes, with harmonic homology bases throughout. With the
/// same harmonic bases fed to `torsion_milnor`, the product of the sub- and
/// quotient-complex torsions times this value equals the total torsion
/// modulo sign.
pub fn les_torsion(
    sub: &ComplexChainComplex,
    total: &ComplexChainComplex,
    quot: &ComplexChainComplex,
    inclusion: &[CMat],
    projection: &[CMat],
) -> Result<TorsionClass> {
    let n = total.top_degree();
    if sub.top_degree() != n || quot.top_degree() != n {
        return Err(Error::NotExact("all three complexes must share the top degree".into()));
    }
    if inclusion.len() != n + 1 || projection.len() != n + 1 {
        return Err(Error::NotExact("need one inclusion and one projection per degree".into()));
    }
    let scale = |m: &CMat| m.norm().max(1.0);
    for k in 0..=n {
        let (i, p) = (&inclusion[k], &projection[k]);
        if i.nrows() != total.ranks()[k]
            || i.ncols() != sub.ranks()[k]
            || p.nrows() != quot.ranks()[k]
            || p.ncols() != total.ranks()[k]
        {
            return Err(Error::NotExact(format!("map dimensions wrong in degree {k}")));
        }
        if rank_of(i, DEFAULT_RANK_TOL) != sub.ranks()[k]
            || rank_of(p, DEFAULT_RANK_TOL) != quot.ranks()[k]
            || sub.ranks()[k] + quot.ranks()[k] != total.ranks()[k]
            || (p * i).norm() > 1e-9 * scale(p) * scale(i)
        {
            return Err(Error::NotExact(format!("sequence is not exact in degree {k}")));
        }
    }
    if !is_chain_map(sub, total, inclusion, 1e-9) || !is_chain_map(total, quot, projection, 1e-9) {
        return Err(Error::NotExact("the given maps do not commute with boundaries".into()));
    }

    let hodge_sub = hodge(sub);
    let hodge_total = hodge(total);
    let hodge_quot = hodge(quot);
    let bd_total = total.to_na_boundaries();

    // the long exact sequence as an acyclic based complex: homology of the
    // quotient sits at degree 3i, of the total at 3i+1, of the sub at 3i+2
    let mut ranks = vec![0usize; 3 * n + 3];
    for i in 0..=n {
        ranks[3 * i] = hodge_quot.harmonic[i].ncols();
        ranks[3 * i + 1] = hodge_total.harmonic[i].ncols();
        ranks[3 * i + 2] = hodge_sub.harmonic[i].ncols();
    }
    while ranks.len() > 1 && *ranks.last().expect("nonempty") == 0 {
        ranks.pop();
    }
    // induced map on homology: push representatives through, project onto
    // harmonics of the target
    let induced = |map: &CMat, src: &CMat, dst: &CMat| -> CMat { dst.adjoint() * (map * src) };
    let mut boundaries = Vec::with_capacity(ranks.len().saturating_sub(1));
    for d in 1..ranks.len() {
        let i = d / 3;
        let m = match d % 3 {
            // sub -> total at homology degree i
            2 => induced(&inclusion[i], &hodge_sub.harmonic[i], &hodge_total.harmonic[i]),
            // total -> quotient at homology degree i
            1 => induced(&projection[i], &hodge_total.harmonic[i], &hodge_quot.harmonic[i]),
            // connecting map: quotient degree i -> sub degree i-1, by lift,
            // boundary, unlift
            _ => {
                let lift = pseudo_inverse(&projection[i], DEFAULT_RANK_TOL);
                let unlift = pseudo_inverse(&inclusion[i - 1], DEFAULT_RANK_TOL);
                let chains = unlift * (&bd_total[i] * (lift * &hodge_quot.harmonic[i]));
                hodge_sub.harmonic[i - 1].adjoint() * chains
            }
        };
        let mut b = crate::chain::Mat::zeros(ranks[d - 1], ranks[d]);
        for r in 0..m.nrows() {
            for c in 0..m.ncols() {
                b.set(r, c, m[(r, c)]);
            }
        }
        boundaries.push(b);
    }
    let les = ComplexChainComplex::new(ranks, boundaries)?;
    torsion_milnor(&les, None)
}
