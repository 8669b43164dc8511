//! Maximal Cohen-Macaulay modules over curve singularities as matrix
//! factorizations.
//!
//! The crate has two independent engines. The symbolic one works with exact
//! truncated power series: [`matfac`] builds factorizations, [`homalg`] computes
//! stable Hom and Ext dimensions, [`cluster`] and [`endoalg`] build cluster
//! tilting objects and their endomorphism algebras. The combinatorial one,
//! [`arquiver`], computes the same data from translation quivers `ZΔ/G`.

pub mod arquiver;
pub mod cluster;
pub mod endoalg;
pub mod homalg;
pub mod linalg;
pub mod matfac;
pub mod scalar;
pub mod series;

pub use arquiver::{AutElement, DynkinDiagram, DynkinType, StableTranslationQuiver};
pub use cluster::{ExchangeData, FactorList, Irreducibility, Permutation};
pub use endoalg::{FiniteDimAlgebra, QuiverPresentation};
pub use homalg::{ExtKind, ExtReport, HomalgConfig, MorphismPair};
pub use matfac::{MatrixFactorization, PolyMatrix};
pub use scalar::{FieldChoice, Rational};
pub use series::{Monomial, Order, ParseOptions, Precision, TruncatedSeries};

/// Version of the JSON report layout.
pub const JSON_SCHEMA: u32 = 1;
