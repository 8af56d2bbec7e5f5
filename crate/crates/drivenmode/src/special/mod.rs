//! Special functions needed by the closed-form solutions: complex Gamma,
//! the Faddeeva function (complex error functions), and the Gauss
//! hypergeometric function 2F1 with complex parameters.

mod faddeeva;
mod gamma;
mod hyp2f1;

pub use faddeeva::{erf, erfc, erfcx, faddeeva};
pub use gamma::{gamma, recip_gamma};
pub use hyp2f1::{hyp2f1, hyp2f1_one_minus};
