//! Exact arithmetic in the group rings Z[Z_p] and Z[Z] (Laurent polynomials
//! in the generator), the conjugation anti-involution, and evaluation
//! homomorphisms into the complex units.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of Z[Z_p] (modulus p >= 1) or of Z[Z] (modulus 0), stored as a
/// sparse map from exponent of the generator to a nonzero integer coefficient.
///
/// The zero element is compatible with every modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingElement {
    modulus: u64,
    terms: BTreeMap<i64, i64>,
}

impl GroupRingElement {
    pub fn zero(modulus: u64) -> Self {
        GroupRingElement { modulus, terms: BTreeMap::new() }
    }

    pub fn one(modulus: u64) -> Self {
        Self::monomial(1, 0, modulus)
    }

    /// The generator sigma.
    pub fn sigma(modulus: u64) -> Self {
        Self::monomial(1, 1, modulus)
    }

    /// c * sigma^e.
    pub fn monomial(coeff: i64, exp: i64, modulus: u64) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(reduce_exp(exp, modulus), coeff);
        }
        GroupRingElement { modulus, terms }
    }

    pub fn constant(c: i64, modulus: u64) -> Self {
        Self::monomial(c, 0, modulus)
    }

    /// nu = 1 + sigma + ... + sigma^(p-1), the norm element of Z[Z_p].
    pub fn nu(p: u64) -> Self {
        assert!(p >= 1, "nu requires a finite cyclic group");
        let terms = (0..p as i64).map(|e| (e, 1)).collect();
        GroupRingElement { modulus: p, terms }
    }

    /// sigma^r - 1.
    pub fn sigma_pow_minus_one(r: i64, modulus: u64) -> Self {
        let mut x = Self::monomial(1, r, modulus);
        x = x + Self::constant(-1, modulus);
        x
    }

    pub fn from_pairs(modulus: u64, pairs: &[(i64, i64)]) -> Self {
        let mut out = Self::zero(modulus);
        for &(coeff, exp) in pairs {
            out = out + Self::monomial(coeff, exp, modulus);
        }
        out
    }

    /// Terms as (coefficient, exponent) pairs in increasing exponent order.
    pub fn to_pairs(&self) -> Vec<(i64, i64)> {
        self.terms.iter().map(|(&e, &c)| (c, e)).collect()
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        *self.terms.get(&reduce_exp(exp, self.modulus)).unwrap_or(&0)
    }

    fn compatible(&self, other: &Self) -> Result<u64> {
        if self.is_zero() {
            Ok(other.modulus)
        } else if other.is_zero() || self.modulus == other.modulus {
            Ok(self.modulus)
        } else {
            Err(Error::ModulusMismatch(self.modulus, other.modulus))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let modulus = self.compatible(other)?;
        let mut terms = self.terms.clone();
        for (&e, &c) in &other.terms {
            let entry = terms.entry(e).or_insert(0);
            *entry += c;
            if *entry == 0 {
                terms.remove(&e);
            }
        }
        Ok(GroupRingElement { modulus, terms })
    }

    /// Convolution product, exponents reduced mod p.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let modulus = self.compatible(other)?;
        let mut terms: BTreeMap<i64, i64> = BTreeMap::new();
        for (&ea, &ca) in &self.terms {
            for (&eb, &cb) in &other.terms {
                let e = reduce_exp(ea + eb, modulus);
                let entry = terms.entry(e).or_insert(0);
                *entry += ca * cb;
                if *entry == 0 {
                    terms.remove(&e);
                }
            }
        }
        Ok(GroupRingElement { modulus, terms })
    }

    /// The conjugation anti-involution sigma^e -> sigma^(-e).
    pub fn involution(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(&e, &c)| (reduce_exp(-e, self.modulus), c))
            .collect();
        GroupRingElement { modulus: self.modulus, terms }
    }

    /// Evaluation homomorphism sending sigma to `rep`'s value.
    ///
    /// For Z[Z_p] the value must be a p-th root of unity, otherwise the map
    /// is not a ring homomorphism.
    pub fn evaluate(&self, rep: &Representation) -> Result<Complex64> {
        let t = rep.value();
        rep.check_compatible(self.modulus)?;
        let mut acc = Complex64::new(0.0, 0.0);
        for (&e, &c) in &self.terms {
            acc += (c as f64) * t.powi(e as i32);
        }
        Ok(acc)
    }
}

fn reduce_exp(exp: i64, modulus: u64) -> i64 {
    if modulus == 0 {
        exp
    } else {
        exp.rem_euclid(modulus as i64)
    }
}

impl std::ops::Add for GroupRingElement {
    type Output = GroupRingElement;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("group ring modulus mismatch")
    }
}

impl std::ops::Mul for GroupRingElement {
    type Output = GroupRingElement;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("group ring modulus mismatch")
    }
}

impl std::ops::Neg for GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> Self {
        let terms = self.terms.into_iter().map(|(e, c)| (e, -c)).collect();
        GroupRingElement { modulus: self.modulus, terms }
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, &c) in &self.terms {
            if !first {
                write!(f, " {} ", if c < 0 { "-" } else { "+" })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            let a = c.abs();
            match e {
                0 => write!(f, "{}", a)?,
                1 if a == 1 => write!(f, "s")?,
                1 => write!(f, "{}s", a)?,
                _ if a == 1 => write!(f, "s^{}", e)?,
                _ => write!(f, "{}s^{}", a, e)?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Evaluation datum sending the generator to a unit complex number.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Representation {
    /// sigma -> e^(2 pi i k / p).
    RootOfUnity { p: u64, k: i64 },
    /// sigma -> e^(i psi).
    Angle { psi: f64 },
    /// sigma -> re + i im, any nonzero complex number.
    Complex { re: f64, im: f64 },
}

impl Representation {
    pub fn root_of_unity(p: u64, k: i64) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidRepresentation("p must be >= 1".into()));
        }
        if k.rem_euclid(p as i64) == 0 {
            return Err(Error::InvalidRepresentation(format!(
                "k = {k} is 0 mod {p}; the evaluation would be trivial"
            )));
        }
        Ok(Representation::RootOfUnity { p, k })
    }

    pub fn angle(psi: f64) -> Result<Self> {
        let reduced = psi.rem_euclid(2.0 * PI);
        if reduced.min(2.0 * PI - reduced) < 1e-12 {
            return Err(Error::InvalidRepresentation(
                "angle is 0 mod 2 pi; the evaluation would be trivial".into(),
            ));
        }
        Ok(Representation::Angle { psi })
    }

    pub fn complex(t: Complex64) -> Result<Self> {
        if t.norm() == 0.0 {
            return Err(Error::InvalidRepresentation("evaluation value must be nonzero".into()));
        }
        Ok(Representation::Complex { re: t.re, im: t.im })
    }

    /// Validity check mirroring the constructors, for deserialized values.
    pub fn validate(&self) -> Result<()> {
        match *self {
            Representation::RootOfUnity { p, k } => Self::root_of_unity(p, k).map(|_| ()),
            Representation::Angle { psi } => Self::angle(psi).map(|_| ()),
            Representation::Complex { re, im } => Self::complex(Complex64::new(re, im)).map(|_| ()),
        }
    }

    /// The evaluation value of the generator sigma.
    pub fn value(&self) -> Complex64 {
        match *self {
            Representation::RootOfUnity { p, k } => {
                Complex64::from_polar(1.0, 2.0 * PI * (k as f64) / (p as f64))
            }
            Representation::Angle { psi } => Complex64::from_polar(1.0, psi),
            Representation::Complex { re, im } => Complex64::new(re, im),
        }
    }

    /// True when the value is 1, i.e. when specialization fails to be acyclic
    /// for the complexes we care about.
    pub fn is_trivial(&self) -> bool {
        (self.value() - Complex64::new(1.0, 0.0)).norm() < 1e-12
    }

    /// A representation can evaluate Z[Z_p] only if sigma^p = 1 is respected.
    /// Z[Z] (modulus 0) accepts anything nonzero.
    pub fn check_compatible(&self, modulus: u64) -> Result<()> {
        if modulus == 0 {
            return Ok(());
        }
        let v = self.value();
        if (v.powi(modulus as i32) - Complex64::new(1.0, 0.0)).norm() > 1e-9 {
            return Err(Error::IncompatibleRepresentation {
                modulus,
                reason: format!("{v} is not a {modulus}-th root of unity"),
            });
        }
        Ok(())
    }
}

/// Ambiguity group of a torsion value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Ambiguity {
    None,
    /// Value defined modulo +-1, i.e. in K1-bar of the complex numbers.
    SignOnly,
    /// Value defined modulo {+- eta^j}, the covering-lift ambiguity.
    ModSignAndPowers { p: u64, eta: Complex64 },
}

impl Ambiguity {
    fn orbit(&self, v: Complex64) -> Vec<Complex64> {
        match *self {
            Ambiguity::None => vec![v],
            Ambiguity::SignOnly => vec![v, -v],
            Ambiguity::ModSignAndPowers { p, eta } => {
                let mut out = Vec::with_capacity(2 * p as usize);
                let mut w = v;
                for _ in 0..p {
                    out.push(w);
                    out.push(-w);
                    w *= eta;
                }
                out
            }
        }
    }

    fn matches(&self, other: &Ambiguity) -> bool {
        match (self, other) {
            (Ambiguity::None, Ambiguity::None) => true,
            (Ambiguity::SignOnly, Ambiguity::SignOnly) => true,
            (
                Ambiguity::ModSignAndPowers { p: p1, eta: e1 },
                Ambiguity::ModSignAndPowers { p: p2, eta: e2 },
            ) => p1 == p2 && (e1 - e2).norm() < 1e-9,
            _ => false,
        }
    }
}

/// A nonzero complex torsion value together with its ambiguity group.
///
/// Equality is orbit membership; the canonical representative (maximal real
/// part, ties broken by maximal imaginary part) is only for printing.
#[derive(Clone, Copy, Debug)]
pub struct TorsionClass {
    pub value: Complex64,
    pub ambiguity: Ambiguity,
}

impl TorsionClass {
    pub fn new(value: Complex64, ambiguity: Ambiguity) -> Self {
        TorsionClass { value, ambiguity }
    }

    pub fn sign_only(value: Complex64) -> Self {
        Self::new(value, Ambiguity::SignOnly)
    }

    /// |tau|^2, invariant under the ambiguity action for |eta| = 1.
    pub fn modulus_squared(&self) -> f64 {
        self.value.norm_sqr()
    }

    pub fn canonical(&self) -> Complex64 {
        let mut best = self.value;
        for w in self.ambiguity.orbit(self.value) {
            if w.re > best.re + 1e-15 || ((w.re - best.re).abs() <= 1e-15 && w.im > best.im) {
                best = w;
            }
        }
        best
    }

    /// Membership test: true iff some orbit member of `other` is within
    /// relative tolerance of `self`.
    pub fn class_equal(&self, other: &TorsionClass, tol: f64) -> Result<bool> {
        if !self.ambiguity.matches(&other.ambiguity) {
            return Err(Error::AmbiguityMismatch);
        }
        let scale = other.value.norm();
        Ok(self
            .ambiguity
            .orbit(other.value)
            .iter()
            .any(|w| (self.value - w).norm() <= tol * scale))
    }
}
