//! Exact symbolic engine for algebras presented by ordering relations over
//! a field of rational functions in the Cartan variable, with the diagonal
//! reduction algebra DR(sl(2)) as the worked instance.

pub mod cli;
pub mod coeff;
pub mod drsl2;
pub mod error;
pub mod expr;
pub mod ncalg;
pub mod ore;
pub mod report;
pub mod rewrite;
pub mod sample;
pub mod weylmod;

pub use coeff::{Degree, Poly, RatFunc, Var};
pub use error::{Error, Result};
pub use ncalg::{concat, push_left, Alphabet, Generator, NCElement, Weight, Word};
pub use rewrite::{Presentation, RewriteRule, Strategy};
