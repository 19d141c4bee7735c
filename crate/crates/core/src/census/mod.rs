//! Exhaustive census of smooth hypersurfaces over `F_2` and `F_3`.

pub mod cache;
pub mod enumerate;
pub mod field;
pub mod form;
pub mod points;
pub mod report;
pub mod smooth;

pub use enumerate::{census, census_naive, check_budget, closed_points, form_count, gray_code, gray_step, CensusOptions, DEFAULT_CAP, DEFAULT_K};
pub use field::Field;
pub use form::Form;
pub use points::{monomial_count, monomials, PointSet};
pub use report::{compare, CensusReport, DeviationRow, DeviationTable, Prediction, Statistic, Tolerance};
pub use smooth::{is_smooth, PointScan, RankPlan, SmoothnessTester};
