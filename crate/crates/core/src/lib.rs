//! Exact-arithmetic computations for hyperplane arrangements: power
//! ideals, zonotopal algebras and their hierarchical and superspace
//! variants, Macaulay inverse systems, Hilbert series, and the
//! deletion-contraction and truncation sequences relating them.

pub mod arrangement;
pub mod corpus;
pub mod invariants;
pub mod linalg;
pub mod powerideal;
pub mod series;
pub mod superspace;
pub mod superzono;
pub mod zonotopal;

pub use arrangement::{Arrangement, ArrangementError, CocircuitVector, Flat, TuttePoly};
pub use linalg::{Rat, RatMatrix};
pub use powerideal::{ExponentMap, FlatSelection, PowerIdealError};
pub use series::{BigradedTable, BivarPoly, HilbertFunction, LaurentSeries};
pub use superspace::SuperElement;
pub use superzono::{SuperSequenceReport, SuperZonoError};
pub use zonotopal::{OrderFilter, SequenceReport, ZonotopalError, ZonotopalSpec};
