//! Exact computations of Picard and Neron-Severi groups of moduli stacks of principal
//! bundles over families of curves, the weight cokernel of the central gerbe, and the
//! criterion for the existence of Poincare bundles.

pub mod error;
pub mod exact;
pub mod family;
pub mod forms;
pub mod gerbe;
pub mod picard;
pub mod root_datum;

pub use error::{Error, Result};
