//! Kernelization for Cycle Contraction and Path Contraction, with an exact
//! brute-force oracle for checking reductions on small graphs.

pub mod cycle_kernel;
pub mod error;
pub mod graph;
pub mod instance;
pub mod oracle;
pub mod par;
pub mod path_kernel;
pub mod pcfe_kernel;
pub mod trace;
pub mod witness;
pub mod workbench;

pub use cycle_kernel::{kernelize_cycle, kernelize_cycle_with, BoundUsed, CycleKernelOutcome};
pub use error::{Error, Result};
pub use graph::{Graph, Vertex};
pub use instance::{CycleInstance, Instance, PathInstance, PcfeInstance, ProblemKind, Reduced};
pub use oracle::Oracle;
pub use par::Execution;
pub use path_kernel::{kernelize_path, KernelOutcome};
pub use pcfe_kernel::kernelize_pcfe;
pub use trace::{ReductionTrace, Rule, RuleRecord};
