//! Finite based chain complexes over group rings, the integers, or the
//! complex numbers: validation, change of rings, homology, duals, direct
//! sums, and graded tensor products.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group_ring::{GroupRingElement, Representation};
use crate::snf;

/// Default relative threshold separating zero from nonzero singular values.
pub const DEFAULT_RANK_TOL: f64 = 1e-9;

/// Scalar domains a complex can live over.
pub trait Scalar: Clone + PartialEq {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Conjugation: the group ring involution, complex conjugation, or the
    /// identity on integers.
    fn conj(&self) -> Self;
    /// None for exact domains; the absolute value over the complex numbers.
    fn approx_abs(&self) -> Option<f64>;
}

impl Scalar for i64 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        *self
    }
    fn approx_abs(&self) -> Option<f64> {
        None
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        Complex64::new(self.re, -self.im)
    }
    fn approx_abs(&self) -> Option<f64> {
        Some(self.norm())
    }
}

impl Scalar for GroupRingElement {
    fn zero() -> Self {
        GroupRingElement::zero(0)
    }
    fn is_zero(&self) -> bool {
        GroupRingElement::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }
    fn mul(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn conj(&self) -> Self {
        self.involution()
    }
    fn approx_abs(&self) -> Option<f64> {
        None
    }
}

/// A dense row-major matrix over an arbitrary scalar domain.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Parse("ragged matrix rows".into()));
        }
        Ok(Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn matmul(&self, other: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out: Mat<T> = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).add(&a.mul(other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Conjugate transpose (dagger).
    pub fn dagger(&self) -> Mat<T> {
        let mut out = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn scale(&self, factor: &T) -> Mat<T> {
        let data = self.data.iter().map(|v| v.mul(factor)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<U: Scalar>(&self, f: impl Fn(&T) -> Result<U>) -> Result<Mat<U>> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(Mat { rows: self.rows, cols: self.cols, data })
    }

    fn max_abs(&self) -> f64 {
        self.data.iter().filter_map(Scalar::approx_abs).fold(0.0, f64::max)
    }

    /// Exactly zero for exact domains, entrywise below `tol` otherwise.
    fn is_zero_within(&self, tol: f64) -> bool {
        self.data.iter().all(|v| match v.approx_abs() {
            None => v.is_zero(),
            Some(a) => a <= tol,
        })
    }
}

/// A finite based chain complex: ranks per degree and boundary matrices,
/// where `boundary(k)` maps degree k to degree k-1.
#[derive(Clone, Debug, PartialEq)]
pub struct BasedChainComplex<T> {
    ranks: Vec<usize>,
    /// boundaries[k] has ranks[k-1] rows and ranks[k] columns; boundaries[0]
    /// is the empty map out of degree 0.
    boundaries: Vec<Mat<T>>,
}

pub type GroupRingComplex = BasedChainComplex<GroupRingElement>;
pub type IntegerComplex = BasedChainComplex<i64>;
pub type ComplexChainComplex = BasedChainComplex<Complex64>;

impl<T: Scalar> BasedChainComplex<T> {
    /// Build from ranks and the boundary maps for degrees 1..=n.
    pub fn new(ranks: Vec<usize>, boundaries: Vec<Mat<T>>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::InvalidComplex("a complex needs at least degree 0".into()));
        }
        if boundaries.len() != ranks.len() - 1 {
            return Err(Error::InvalidComplex(format!(
                "expected {} boundary maps for {} degrees, got {}",
                ranks.len() - 1,
                ranks.len(),
                boundaries.len()
            )));
        }
        let mut full = Vec::with_capacity(ranks.len());
        full.push(Mat::zeros(0, ranks[0]));
        full.extend(boundaries);
        let c = BasedChainComplex { ranks, boundaries: full };
        c.validate()?;
        Ok(c)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Top degree n.
    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn boundary(&self, k: usize) -> &Mat<T> {
        &self.boundaries[k]
    }

    /// Boundary maps for degrees 1..=n, without the empty degree-0 map.
    pub fn boundary_maps(&self) -> &[Mat<T>] {
        &self.boundaries[1..]
    }

    /// Check dimensions and that the boundary squares to zero, reporting the
    /// first violated degree.
    pub fn validate(&self) -> Result<()> {
        for k in 1..self.ranks.len() {
            let b = &self.boundaries[k];
            if b.nrows() != self.ranks[k - 1] || b.ncols() != self.ranks[k] {
                return Err(Error::DimensionMismatch {
                    degree: k,
                    detail: format!(
                        "boundary is {}x{}, ranks demand {}x{}",
                        b.nrows(),
                        b.ncols(),
                        self.ranks[k - 1],
                        self.ranks[k]
                    ),
                });
            }
        }
        for k in 2..self.ranks.len() {
            let prod = self.boundaries[k - 1].matmul(&self.boundaries[k]);
            let scale = (self.boundaries[k - 1].max_abs() * self.boundaries[k].max_abs())
                .max(1.0)
                * self.ranks[k - 1].max(1) as f64;
            if !prod.is_zero_within(1e-12 * scale) {
                return Err(Error::BoundarySquared { degree: k });
            }
        }
        Ok(())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(k, &r)| if k % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }

    /// Block sum: ranks add per degree, boundaries are block diagonal.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.ranks.len().max(other.ranks.len());
        let rank = |c: &Self, k: usize| c.ranks.get(k).copied().unwrap_or(0);
        let ranks: Vec<usize> = (0..n).map(|k| rank(self, k) + rank(other, k)).collect();
        let mut boundaries = vec![Mat::zeros(0, ranks[0])];
        for k in 1..n {
            let (ra, ca) = (rank(self, k - 1), rank(self, k));
            let (rb, cb) = (rank(other, k - 1), rank(other, k));
            let mut b = Mat::zeros(ra + rb, ca + cb);
            if k < self.boundaries.len() {
                for i in 0..ra {
                    for j in 0..ca {
                        b.set(i, j, self.boundaries[k].get(i, j).clone());
                    }
                }
            }
            if k < other.boundaries.len() {
                for i in 0..rb {
                    for j in 0..cb {
                        b.set(ra + i, ca + j, other.boundaries[k].get(i, j).clone());
                    }
                }
            }
            boundaries.push(b);
        }
        BasedChainComplex { ranks, boundaries }
    }

    /// The dual complex: grading reversed, boundaries conjugate-transposed.
    pub fn dual(&self) -> Self {
        let n = self.top_degree();
        let ranks: Vec<usize> = (0..=n).map(|k| self.ranks[n - k]).collect();
        let mut boundaries = vec![Mat::zeros(0, ranks[0])];
        for k in 1..=n {
            // boundary from dual degree k to k-1 is the dagger of the
            // original boundary from degree n-k+1 to n-k
            boundaries.push(self.boundaries[n - k + 1].dagger());
        }
        BasedChainComplex { ranks, boundaries }
    }

    /// Extend with zero ranks up to the given top degree.
    pub fn pad_to(&self, top: usize) -> Self {
        let mut ranks = self.ranks.clone();
        let mut boundaries = self.boundaries.clone();
        while ranks.len() <= top {
            boundaries.push(Mat::zeros(*ranks.last().expect("nonempty"), 0));
            ranks.push(0);
        }
        BasedChainComplex { ranks, boundaries }
    }

    /// Rescale every boundary map by a common factor.
    pub fn scale_boundaries(&self, factor: &T) -> Self {
        let mut boundaries = vec![self.boundaries[0].clone()];
        for b in &self.boundaries[1..] {
            boundaries.push(b.scale(factor));
        }
        BasedChainComplex { ranks: self.ranks.clone(), boundaries }
    }
}

impl GroupRingComplex {
    /// Change of rings along the evaluation homomorphism of `rep`.
    pub fn specialize(&self, rep: &Representation) -> Result<ComplexChainComplex> {
        let mut boundaries = Vec::new();
        for b in self.boundary_maps() {
            boundaries.push(b.try_map(|x| x.evaluate(rep))?);
        }
        BasedChainComplex::new(self.ranks.clone(), boundaries)
    }

    /// Change of rings along sigma -> 1, yielding the untwisted integral
    /// chains.
    pub fn specialize_integral(&self) -> Result<IntegerComplex> {
        let mut boundaries = Vec::new();
        for b in self.boundary_maps() {
            boundaries.push(b.map(|x| x.to_pairs().iter().map(|&(c, _)| c).sum::<i64>()));
        }
        BasedChainComplex::new(self.ranks.clone(), boundaries)
    }
}

impl ComplexChainComplex {
    pub fn to_na_boundaries(&self) -> Vec<DMatrix<Complex64>> {
        self.boundaries
            .iter()
            .map(|b| {
                DMatrix::from_fn(b.nrows(), b.ncols(), |i, j| *b.get(i, j))
            })
            .collect()
    }

    /// Dimensions of homology per degree, decided by singular values.
    pub fn homology_ranks(&self) -> Vec<usize> {
        self.homology_ranks_with_tol(DEFAULT_RANK_TOL)
    }

    pub fn homology_ranks_with_tol(&self, rel_tol: f64) -> Vec<usize> {
        let bd = self.to_na_boundaries();
        // threshold against the largest singular value of the whole complex,
        // so a boundary that is numerically zero does not fake full rank
        let spectra: Vec<Vec<f64>> = bd
            .iter()
            .map(|m| {
                if m.nrows() == 0 || m.ncols() == 0 {
                    Vec::new()
                } else {
                    m.clone().svd(false, false).singular_values.iter().copied().collect()
                }
            })
            .collect();
        let global = spectra.iter().flatten().fold(0.0f64, |a, &b| a.max(b));
        let rank = |k: usize| spectra[k].iter().filter(|&&s| s > rel_tol * global).count();
        let n = self.top_degree();
        (0..=n)
            .map(|k| {
                let out = rank(k);
                let inc = if k < n { rank(k + 1) } else { 0 };
                self.ranks[k] - out - inc
            })
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.homology_ranks().iter().all(|&h| h == 0)
    }

    /// Graded tensor product with an integral complex, with the Koszul sign
    /// d(x (x) y) = dx (x) y + (-1)^deg(x) x (x) dy.
    ///
    /// Basis order in each bidegree block is lexicographic with the left
    /// factor's index major; blocks of a total degree are ordered by the
    /// left degree ascending.
    pub fn tensor_product(&self, other: &IntegerComplex) -> ComplexChainComplex {
        let (na, nb) = (self.top_degree(), other.top_degree());
        let n = na + nb;
        let ra = self.ranks();
        let rb = other.ranks();
        let ranks: Vec<usize> = (0..=n)
            .map(|d| {
                (0..=d.min(na))
                    .filter(|&i| d - i <= nb)
                    .map(|i| ra[i] * rb[d - i])
                    .sum()
            })
            .collect();

        // offset of block (i, d-i) within total degree d
        let block_offset = |d: usize, i: usize| -> usize {
            (0..i).filter(|&m| m <= na && d - m <= nb).map(|m| ra[m] * rb[d - m]).sum()
        };

        let mut boundaries = vec![Mat::zeros(0, ranks[0])];
        for d in 1..=n {
            let mut m = Mat::zeros(ranks[d - 1], ranks[d]);
            for i in 0..=d.min(na) {
                let j = d - i;
                if j > nb {
                    continue;
                }
                let col0 = block_offset(d, i);
                for a in 0..ra[i] {
                    for b in 0..rb[j] {
                        let col = col0 + a * rb[j] + b;
                        // dx (x) y lands in block (i-1, j)
                        if i >= 1 {
                            let row0 = block_offset(d - 1, i - 1);
                            let da = self.boundary(i);
                            for a2 in 0..ra[i - 1] {
                                let v = *da.get(a2, a);
                                if !Scalar::is_zero(&v) {
                                    m.set(row0 + a2 * rb[j] + b, col, v);
                                }
                            }
                        }
                        // (-1)^i x (x) dy lands in block (i, j-1)
                        if j >= 1 {
                            let row0 = block_offset(d - 1, i);
                            let db = other.boundary(j);
                            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                            for b2 in 0..rb[j - 1] {
                                let v = *db.get(b2, b);
                                if v != 0 {
                                    m.set(
                                        row0 + a * rb[j - 1] + b2,
                                        col,
                                        Complex64::new(sign * v as f64, 0.0),
                                    );
                                }
                            }
                        }
                    }
                }
            }
            boundaries.push(m);
        }
        BasedChainComplex { ranks, boundaries }
    }
}

impl IntegerComplex {
    /// Integral homology per degree as (betti, torsion coefficients), via
    /// Smith normal form in exact arbitrary-precision arithmetic.
    pub fn integral_homology(&self) -> Vec<(usize, Vec<u64>)> {
        let n = self.top_degree();
        let rank_and_factors: Vec<(usize, Vec<u64>)> = (0..=n + 1)
            .map(|k| {
                if k == 0 || k > n {
                    (0, Vec::new())
                } else {
                    let b = self.boundary(k);
                    let factors = snf::invariant_factors(b.nrows(), b.ncols(), |i, j| {
                        *b.get(i, j)
                    });
                    let r = factors.len();
                    (r, factors)
                }
            })
            .collect();
        (0..=n)
            .map(|k| {
                let (rank_out, _) = &rank_and_factors[k];
                let (rank_in, factors_in) = &rank_and_factors[k + 1];
                let betti = self.ranks[k] - rank_out - rank_in;
                let torsion: Vec<u64> =
                    factors_in.iter().copied().filter(|&d| d > 1).collect();
                (betti, torsion)
            })
            .collect()
    }
}

// ---------------------------------------------------------------------------
// JSON wire format
// ---------------------------------------------------------------------------

/// A chain complex over any of the three supported scalar domains, for
/// serialization and the CLI.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyComplex {
    GroupRing(GroupRingComplex),
    Integer(IntegerComplex),
    Complex(ComplexChainComplex),
}

impl AnyComplex {
    pub fn to_json(&self) -> Value {
        match self {
            AnyComplex::GroupRing(c) => {
                let p = group_ring_modulus(c);
                complex_json(c, json!({"type": "cyclic", "p": p}), |x| {
                    Value::Array(
                        x.to_pairs()
                            .into_iter()
                            .map(|(coeff, exp)| json!([coeff, exp]))
                            .collect(),
                    )
                })
            }
            AnyComplex::Integer(c) => {
                complex_json(c, json!({"type": "integer"}), |&x| json!(x))
            }
            AnyComplex::Complex(c) => {
                complex_json(c, json!({"type": "complex"}), |x| json!([x.re, x.im]))
            }
        }
    }

    pub fn from_json(v: &Value) -> Result<AnyComplex> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("expected an object".into()))?;
        let ring = obj
            .get("ring")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("missing ring".into()))?;
        let ranks: Vec<usize> = serde_json::from_value(
            obj.get("ranks").cloned().ok_or_else(|| Error::Parse("missing ranks".into()))?,
        )
        .map_err(|e| Error::Parse(e.to_string()))?;
        let raw = obj
            .get("boundaries")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing boundaries".into()))?;
        match ring.get("type").and_then(Value::as_str) {
            Some("cyclic") => {
                let p = ring
                    .get("p")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| Error::Parse("cyclic ring needs p".into()))?;
                let b = parse_boundaries(raw, |e| parse_group_ring_entry(e, p))?;
                Ok(AnyComplex::GroupRing(BasedChainComplex::new(ranks, b)?))
            }
            Some("integer") => {
                let b = parse_boundaries(raw, |e| {
                    e.as_i64().ok_or_else(|| Error::Parse("integer entry expected".into()))
                })?;
                Ok(AnyComplex::Integer(BasedChainComplex::new(ranks, b)?))
            }
            Some("complex") => {
                let b = parse_boundaries(raw, parse_complex_entry)?;
                Ok(AnyComplex::Complex(BasedChainComplex::new(ranks, b)?))
            }
            other => Err(Error::Parse(format!("unknown ring type {other:?}"))),
        }
    }
}

fn group_ring_modulus(c: &GroupRingComplex) -> u64 {
    c.boundary_maps()
        .iter()
        .flat_map(|b| (0..b.nrows()).flat_map(move |i| (0..b.ncols()).map(move |j| b.get(i, j))))
        .find(|x| !GroupRingElement::is_zero(x))
        .map_or(0, GroupRingElement::modulus)
}

fn complex_json<T: Scalar>(
    c: &BasedChainComplex<T>,
    ring: Value,
    entry: impl Fn(&T) -> Value,
) -> Value {
    let boundaries: Vec<Value> = c
        .boundary_maps()
        .iter()
        .map(|b| {
            Value::Array(
                (0..b.nrows())
                    .map(|i| {
                        Value::Array((0..b.ncols()).map(|j| entry(b.get(i, j))).collect())
                    })
                    .collect(),
            )
        })
        .collect();
    json!({"ring": ring, "ranks": c.ranks(), "boundaries": boundaries})
}

fn parse_boundaries<T: Scalar>(
    raw: &[Value],
    entry: impl Fn(&Value) -> Result<T> + Copy,
) -> Result<Vec<Mat<T>>> {
    raw.iter()
        .map(|m| {
            let rows = m
                .as_array()
                .ok_or_else(|| Error::Parse("boundary must be a list of rows".into()))?
                .iter()
                .map(|row| {
                    row.as_array()
                        .ok_or_else(|| Error::Parse("row must be a list".into()))?
                        .iter()
                        .map(entry)
                        .collect::<Result<Vec<T>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            Mat::from_rows(rows)
        })
        .collect()
}

fn parse_group_ring_entry(e: &Value, p: u64) -> Result<GroupRingElement> {
    let pairs = e
        .as_array()
        .ok_or_else(|| Error::Parse("group ring entry must be a list of [coeff, exp]".into()))?
        .iter()
        .map(|pair| {
            let pair = pair
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Error::Parse("expected [coeff, exp]".into()))?;
            let c = pair[0].as_i64().ok_or_else(|| Error::Parse("bad coefficient".into()))?;
            let x = pair[1].as_i64().ok_or_else(|| Error::Parse("bad exponent".into()))?;
            Ok((c, x))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GroupRingElement::from_pairs(p, &pairs))
}

fn parse_complex_entry(e: &Value) -> Result<Complex64> {
    if let Some(x) = e.as_f64() {
        return Ok(Complex64::new(x, 0.0));
    }
    let a = e
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Error::Parse("complex entry must be [re, im]".into()))?;
    match (a[0].as_f64(), a[1].as_f64()) {
        (Some(re), Some(im)) => Ok(Complex64::new(re, im)),
        _ => Err(Error::Parse("complex entry must be [re, im]".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_ring::Representation;
    use crate::spaces::LensSpace;

    fn cplx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn lens_complex_validates() {
        let lens = LensSpace::new(5, &[1, 2]).unwrap();
        lens.chain_complex().validate().unwrap();
    }

    #[test]
    fn identity_boundary_validates() {
        let id = Mat::from_rows(vec![
            vec![cplx(1.0, 0.0), cplx(0.0, 0.0), cplx(0.0, 0.0)],
            vec![cplx(0.0, 0.0), cplx(1.0, 0.0), cplx(0.0, 0.0)],
            vec![cplx(0.0, 0.0), cplx(0.0, 0.0), cplx(1.0, 0.0)],
        ])
        .unwrap();
        BasedChainComplex::new(vec![3, 3], vec![id]).unwrap();
    }

    #[test]
    fn corrupted_complex_reports_degree() {
        let id2 = Mat::from_rows(vec![
            vec![1i64, 0],
            vec![0, 1],
        ])
        .unwrap();
        let err = BasedChainComplex::new(vec![2, 2, 2], vec![id2.clone(), id2]).unwrap_err();
        match err {
            Error::BoundarySquared { degree } => assert_eq!(degree, 2),
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn specialized_circle_has_t_minus_one_boundary() {
        let d = Mat::from_rows(vec![vec![GroupRingElement::sigma_pow_minus_one(1, 0)]]).unwrap();
        let circle = BasedChainComplex::new(vec![1, 1], vec![d]).unwrap();
        let rep = Representation::complex(cplx(2.0, 0.0)).unwrap();
        let sp = circle.specialize(&rep).unwrap();
        assert!((sp.boundary(1).get(0, 0) - cplx(1.0, 0.0)).norm() < 1e-12);
        assert_eq!(sp.homology_ranks(), vec![0, 0]);

        // t = 1 is not acyclic
        let one = Representation::Complex { re: 1.0, im: 0.0 };
        let sp1 = circle.specialize(&one).unwrap();
        assert_eq!(sp1.homology_ranks(), vec![1, 1]);
    }

    #[test]
    fn lens_specializations() {
        let lens = LensSpace::new(7, &[1, 1]).unwrap();
        let c = lens.chain_complex();
        let rep = Representation::root_of_unity(7, 1).unwrap();
        let sp = c.specialize(&rep).unwrap();
        assert_eq!(sp.homology_ranks(), vec![0, 0, 0, 0]);

        // sigma -> 1 gives boundaries alternating 0 and p
        let zi = c.specialize_integral().unwrap();
        assert_eq!(*zi.boundary(1).get(0, 0), 0);
        assert_eq!(*zi.boundary(2).get(0, 0), 7);
        assert_eq!(*zi.boundary(3).get(0, 0), 0);
    }

    #[test]
    fn lens_integral_homology() {
        let lens = LensSpace::new(5, &[1, 2]).unwrap();
        let zi = lens.chain_complex().specialize_integral().unwrap();
        let h = zi.integral_homology();
        assert_eq!(h[0], (1, vec![]));
        assert_eq!(h[1], (0, vec![5]));
        assert_eq!(h[2], (0, vec![]));
        assert_eq!(h[3], (1, vec![]));
    }

    #[test]
    fn zero_boundary_homology() {
        let z = Mat::zeros(1, 1);
        let c: IntegerComplex = BasedChainComplex::new(vec![1, 1], vec![z]).unwrap();
        assert_eq!(c.integral_homology(), vec![(1, vec![]), (1, vec![])]);
    }

    #[test]
    fn dual_is_involution() {
        let lens = LensSpace::new(7, &[1, 2]).unwrap();
        let c = lens.chain_complex();
        assert_eq!(c.dual().dual(), c);

        let m = Mat::from_rows(vec![vec![cplx(1.0, 2.0), cplx(0.0, -1.0)]]).unwrap();
        let two: ComplexChainComplex = BasedChainComplex { ranks: vec![2, 1], boundaries: vec![Mat::zeros(0, 2), m.dagger()] };
        let d = two.dual();
        assert_eq!(d.ranks(), &[1, 2]);
        // dagger of the dagger restores the original row
        assert_eq!(*d.boundary(1).get(0, 0), cplx(1.0, 2.0));
        assert_eq!(*d.boundary(1).get(0, 1), cplx(0.0, -1.0));
    }

    #[test]
    fn direct_sum_ranks_add() {
        let a: IntegerComplex =
            BasedChainComplex::new(vec![1, 1], vec![Mat::zeros(1, 1)]).unwrap();
        let b: IntegerComplex =
            BasedChainComplex::new(vec![2, 3], vec![Mat::zeros(2, 3)]).unwrap();
        assert_eq!(a.direct_sum(&b).ranks(), &[3, 4]);
        // sum with the empty complex is the identity
        let point: IntegerComplex = BasedChainComplex::new(vec![0], vec![]).unwrap();
        assert_eq!(a.direct_sum(&point).ranks(), a.ranks());
    }

    #[test]
    fn tensor_with_point_is_identity() {
        let d = Mat::from_rows(vec![vec![cplx(1.0, 0.0)]]).unwrap();
        let c = BasedChainComplex::new(vec![1, 1], vec![d]).unwrap();
        let point: IntegerComplex = BasedChainComplex::new(vec![1], vec![]).unwrap();
        let t = c.tensor_product(&point);
        assert_eq!(t, c);
    }

    #[test]
    fn tensor_boundary_squares_to_zero() {
        let d = Mat::from_rows(vec![vec![cplx(0.5, 0.3)]]).unwrap();
        let c = BasedChainComplex::new(vec![1, 1], vec![d]).unwrap();
        // interval: two vertices, one edge
        let interval: IntegerComplex = BasedChainComplex::new(
            vec![2, 1],
            vec![Mat::from_rows(vec![vec![1], vec![-1]]).unwrap()],
        )
        .unwrap();
        let t = c.tensor_product(&interval);
        t.validate().unwrap();
        assert_eq!(t.ranks(), &[2, 3, 1]);
    }

    #[test]
    fn euler_characteristic_matches_homology() {
        let lens = LensSpace::new(7, &[1, 2]).unwrap();
        let sp = lens
            .chain_complex()
            .specialize(&Representation::root_of_unity(7, 2).unwrap())
            .unwrap();
        let chi_h: i64 = sp
            .homology_ranks()
            .iter()
            .enumerate()
            .map(|(k, &h)| if k % 2 == 0 { h as i64 } else { -(h as i64) })
            .sum();
        assert_eq!(sp.euler_characteristic(), chi_h);
    }

    #[test]
    fn json_round_trip_group_ring_and_integer() {
        let lens = LensSpace::new(7, &[1, 2]).unwrap();
        let c = AnyComplex::GroupRing(lens.chain_complex());
        let v = c.to_json();
        assert_eq!(AnyComplex::from_json(&v).unwrap(), c);

        let zi = AnyComplex::Integer(lens.chain_complex().specialize_integral().unwrap());
        let v = zi.to_json();
        assert_eq!(AnyComplex::from_json(&v).unwrap(), zi);
    }
}
