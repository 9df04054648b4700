//! Exact arithmetic for incidence algebras of finite posets.
//!
//! A poset `P` with an equivalence relation `∼` on its intervals gives a
//! space `L(P, ∼)` spanned by the classes. When `∼` is compatible with
//! concatenation and splitting of intervals, `L(P, ∼)` carries a product and
//! a coproduct, and its dual is the reduced incidence algebra with
//! convolution `⋆`. Everything here is computed over `ℚ` without rounding.

pub mod algebra;
pub mod error;
pub mod incidence;
pub mod interval_bialgebra;
pub mod morphisms;
pub mod poset;
pub mod relation;
pub mod sampling;
pub mod scalars;
pub mod series;

pub use algebra::{FiniteAlgebra, FiniteBialgebra, FiniteCoalgebra, LinearOperator};
pub use error::{Error, Result};
pub use incidence::{mobius, star, star_inverse, zeta, IncidenceFunction};
pub use interval_bialgebra::{build_interval_bialgebra, IntervalBialgebra};
pub use morphisms::ClassMap;
pub use poset::{Interval, Poset};
pub use relation::{relation_from_key, ClassId, IntervalRelation};
pub use scalars::{format_rational, parse_rational, Rational, SparseTensor, SparseVector};
pub use series::{TruncatedDirichletSeries, TruncatedPowerSeries};
