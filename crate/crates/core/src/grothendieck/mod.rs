//! Concrete realizations of classes in the Grothendieck ring of varieties:
//! Laurent polynomials in `L`, truncated expansions in the dimension
//! filtration, variety profiles, Kapranov zeta functions and Euler products.

mod laurent;
mod profile;
mod series;
mod trunc;
mod zeta;

pub use laurent::LaurentL;
pub use profile::{Presentation, VarietyProfile};
pub use series::{euler_pow, euler_pow_profile, MSeries};
pub use trunc::TruncSeries;
pub use zeta::{
    euler_form, kapranov_zeta, sym_classes, sym_counts_at, zeta_inverse, zeta_inverse_at, zeta_value,
    zeta_value_at,
};
