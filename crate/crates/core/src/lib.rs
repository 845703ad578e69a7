//! Finite kernels for rule systems, set-generation and the categories of
//! relations, basic pairs, concrete spaces and formal topologies.
//!
//! Subsets of a [`Carrier`] are bitmasks, so carriers hold at most 64
//! elements; exhaustive enumerations are further capped by [`limits`].

pub mod bp;
pub mod carrier;
pub mod cspa;
pub mod error;
pub mod ftop;
pub mod generation;
pub mod geom;
pub mod limits;
pub mod relcat;
pub mod rules;

pub use bp::{BasicPair, RelationPair};
pub use carrier::{
    bits, fin_carrier, meets, powerset, product_carrier, submasks, Carrier, FinCarrier, Subset,
    SubsetFamily,
};
pub use cspa::ConcreteSpace;
pub use error::{Error, Result};
pub use ftop::{AxiomSet, CoverTable, InductiveTopology, Preorder, SetPresentation};
pub use generation::{
    generates, minimal_generating, strongly_generates, GenerationReport, Witness,
};
pub use geom::{satisfies, FormulaBody, GeometricAxiom, GeometricTheory};
pub use limits::Limits;
pub use relcat::{compose, converse, identity, Relation, WeakEqualiser};
pub use rules::{Rule, RuleSet};
