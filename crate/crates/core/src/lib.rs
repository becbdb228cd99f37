//! Exact symbolic dynamics for cascades presented over a closed grammar of
//! countable compact ultrametric spaces: classification of the dynamics,
//! Ellis semigroup elements as residue data plus a catalog of limit functions,
//! equicontinuity certificates, brute-force oracles, and an exact-rotation
//! disk demonstration.

pub(crate) mod arith;
pub mod diskdemo;
pub mod dyadic;
pub mod dynamics;
pub mod ellis;
pub mod equicont;
pub mod oracle;
pub mod presentation;

pub use diskdemo::{
    disk_apply, disk_p_iterate, disk_period, nonwap_witness, DiskError, DiskPoint, NonWapRow,
    NonWapWitness,
};
pub use dyadic::Dyadic;
pub use dynamics::{
    classify, first_aperiodic_point, max_rank_set, minimal_sets, orbit, period, period_set,
    Classification, FailureWitnesses, MinimalSet, Period, PeriodSetSpec,
};
pub use ellis::{
    compose, elements_equal, en_equals_ez, evaluate, inverse, is_abelian_truncated, is_wap,
    limit_elements, parse_element, parse_residue_list, truncated_semigroup, AbelianOutcome,
    ClosureKind, EllisElement, EllisError, EnEzOutcome, RealizabilityReport, ResidueSystem,
    SemigroupElement, SemigroupTable, Side, TailRule, WapOutcome,
};
pub use equicont::{
    equicontinuity_failure_witness, equicontinuity_modulus, uniform_period_bound, EquicontError,
};
pub use oracle::{
    crt_solve, p_iterate_limit, pointwise_closure, ClosureReport, CongruenceClassSpec, CrtOutcome,
    FunctionTable, PIterateOutcome, TableLabel,
};
pub use presentation::{
    apply_inverse, apply_map, apply_power, cb_rank_point, cb_rank_space, distance,
    enumerate_points, parse_cascade, parse_point, validate_point, CascadeExpr, ParamFamily,
    PieceSeq, PointId, PresentationError,
};
