//! Torsion invariants of based chain complexes: group-ring coefficients and
//! their evaluations, several independent torsion algorithms over the
//! complex numbers, exact integral homology, lens-space classification, and
//! the zeta-regularized analytic comparison on the circle.

pub mod analytic;
pub mod chain;
pub mod error;
pub mod exec;
pub mod group_ring;
pub mod random;
pub mod snf;
pub mod spaces;
pub mod torsion;

pub use chain::{
    AnyComplex, BasedChainComplex, ComplexChainComplex, GroupRingComplex, IntegerComplex, Mat,
    DEFAULT_RANK_TOL,
};
pub use error::{Error, Result};
pub use group_ring::{Ambiguity, GroupRingElement, Representation, TorsionClass};
pub use spaces::LensSpace;
pub use torsion::{
    build_contraction, build_contraction_randomized, hodge, laplacian_torsion, les_torsion,
    torsion_alternating, torsion_contraction, torsion_milnor, torsion_with_contraction,
    ChainContraction, HodgeData, HomologyBasis,
};
