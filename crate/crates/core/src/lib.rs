//! Exact checks of perverse and weight filtrations on symplectic varieties:
//! bigraded tables, Białynicki-Birula sums, decomposition-theorem bookkeeping,
//! Kummer-type fibres and a small intersection-theory engine.

pub mod bb;
pub mod cases;
pub mod catalog;
pub mod chow;
pub mod decomp;
pub mod error;
pub mod graded;
pub mod kummer;
pub mod report;

pub use cases::{kummer_report, resolution_diamond, run_case};
pub use catalog::CaseCatalog;
pub use error::{BbError, CaseError, CatalogError, ChowError, DecompError, PolyError, TableError};
pub use graded::{Cell, FiltKind, FiltTable, GradedVS, LaurentPoly};
pub use report::{render_diamond, CheckRecord, CheckValue, Report};
