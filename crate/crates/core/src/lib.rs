//! Finite-model workbench for quantale-valued domain theory.

pub mod approx;
pub mod check;
pub mod closure;
pub mod dot;
pub mod domain;
pub mod error;
pub mod fixtures;
pub mod harness;
pub mod io;
pub mod limits;
pub mod lsubset;
pub mod order;
pub mod quantale;

pub use check::{CheckResult, Report};
pub use error::{Error, Result};
pub use limits::Limits;
pub use lsubset::{CarrierId, LSubset};
pub use order::LOrderedSet;
pub use quantale::{Elem, FiniteQuantale, QuantaleDef};
pub use approx::{ApproxRelation, ScottMap};
pub use closure::{ClosureOperator, ClosureSpace};
pub use domain::DomainAnalysis;
pub use harness::gen::GenConfig;
pub use harness::suite::{run_suite, SuiteReport, SuiteStatus};
