//! Trace polynomials and word equations in `SL(2, C)`.
//!
//! * [`word`]: reduced words in the free group on `x`, `y` and their parser.
//! * [`poly`]: exact sparse integer polynomials in `s, t, u`.
//! * [`trace`]: trace polynomials, Dickson polynomials, singular loci.
//! * [`sl2`]: complex 2x2 matrices, the quotient map and centralizers.
//! * [`variety`]: trace-surface sampling, parametrizations, the conic bundle
//!   and the solver for `w(x, y) = g`.
//! * [`verify`]: the property suites behind `wordmap verify`.

pub mod cjson;
pub mod cli;
pub mod error;
pub mod poly;
pub mod roots;
pub mod sl2;
pub mod trace;
pub mod variety;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use poly::{ComplexTriple, TracePoly, Var};
pub use sl2::Mat2;
pub use word::FreeWord;
