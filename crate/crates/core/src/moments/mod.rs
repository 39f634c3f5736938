//! Closed-form moments of the two weights and the auxiliary coefficient tables.

mod closed_form;
mod table;
mod weight;

pub use closed_form::{
    minus_branch, moment_minus, moment_minus_real, moment_minus_with, moment_plus, MinusBranch,
    INTEGER_GUARD,
};
pub use table::{
    d_table, f_entry_integral, f_entry_noninteger, f_entry_printed_integer, f_table, MomentTable,
    Provenance,
};
pub use weight::{Family, WeightSpec};
