//! Linear-constraint models of the optimization problems, CPLEX LP export,
//! and verification of assignments produced by external solvers.

mod builders;
mod certificates;
mod check;
mod system;
mod writer;

pub use builders::*;
pub use certificates::{
    connectivity_certificate, dual_lower_bound, flow_distance_certificate, verify_connectivity,
    verify_cut, verify_flow_distance, FlowCertificate, FlowDistanceCertificate,
};
pub use check::{
    check_assignment, edge_assignment, fill_missing_with_zero, parse_assignment, RowViolation,
    Verdict,
};
pub use system::{
    AffineExpr, Constraint, ConstraintSystem, LinExpr, ObjSense, Objective, Relation, VarKind,
    Variable,
};
pub use writer::{export_lp, write_lp};
