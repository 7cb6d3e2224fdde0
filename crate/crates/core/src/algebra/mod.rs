//! Structure-constant algebras with degree-n structures.

mod charpoly;
mod degree;
mod families;
mod spec;
mod structure;

pub use charpoly::{berkowitz, AlgebraRing, CharPoly, CommRing};
pub use degree::{char_poly, conjugate, cyclic_matrix, norm, trace, CyclicData, DegreeKind, DegreeStructure};
pub use families::{
    cyclic3, cyclic_algebra, dual, matrix, monogenic, product_algebra, quadratic, quaternion, semisimple_from_dims,
    split, trivial, Graded,
};
pub use spec::{parse_preset, AlgebraSpec, DegreeSpec};
pub use structure::{Element, StructureAlgebra};
