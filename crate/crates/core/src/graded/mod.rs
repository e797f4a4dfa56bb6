//! Exact polynomial and bigraded-table algebra.

pub mod checks;
pub mod poly;
pub mod table;
pub mod vs;

pub use checks::{
    check_curious_hard_lefschetz, check_pw_exchange, check_relative_hard_lefschetz, SymmetryVerdict, Violation,
};
pub use poly::{is_palindromic, poly_arith, poly_divide_exact, LaurentPoly, PolyOp};
pub use table::{table_sums, weight_e_polynomial, Cell, FiltKind, FiltTable};
pub use vs::{sym_power, GradedVS};
