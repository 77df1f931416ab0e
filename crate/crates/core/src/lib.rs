//! Truncated q-series arithmetic and a verification harness for the
//! coefficients `v0(n)` of the eighth order mock theta function `V0(q)`.

pub mod congruence;
pub mod dissect;
pub mod error;
pub mod genfun;
pub mod numtheory;
pub mod opmatrix;
pub mod qexpr;
pub mod report;
pub mod ring;
pub mod series;
pub mod suites;
pub mod theta;

pub use error::{SeriesError, VerifyError};
pub use ring::{Dyadic, Elem, RingTag, Val2};
pub use series::Series;
