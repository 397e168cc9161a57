//! Elements of the free wheeled PROP on a signature, with rational
//! coefficients: sums of canonical monomials of one type `(p,q)`.

mod element;
mod enumerate;
pub mod oracle;

pub use element::PropElt;
pub use enumerate::{enumerate_monomials, random_element, random_monomial};
