pub mod classify;
pub mod cli;
pub mod cyclic;
pub mod exact;
pub mod factorization;
pub mod families;
pub mod fg;
pub mod par;
pub mod serde_util;
pub mod spec;

pub use classify::{classify, ClassificationReport, Property, Rank, Tri};
pub use cyclic::Budget;
pub use par::Exec;
pub use spec::{MonoidSpec, SpecFile};
