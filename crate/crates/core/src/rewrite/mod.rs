//! Equational machinery: the equations of every theory as rewrite rules,
//! a bounded equivalence search, normal-form factorizations and exhaustive
//! enumeration of small terms.

mod enumerate;
mod instances;
mod normalize;
mod schema;
mod search;

pub use enumerate::{enumerate_arrows, find_arrow, find_arrows};
pub use instances::{
    arrow_candidates, check_schema, instance_space, instances, sweep, Failure, SchemaCheck,
};
pub use normalize::{normalize, Factorization, Stage};
pub use schema::{
    axiom_set, instantiate_arrow, schema_table, ArrowPat, ArrowVar, Direction, Env, Schema,
};
pub use search::{equivalent_bounded, neighbors, Budget, Outcome, RuleSet, Step};
