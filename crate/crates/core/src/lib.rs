pub mod automorphism;
pub mod block;
pub mod corpus;
pub mod graph;
pub mod ideal;
pub mod multiset;
pub mod oracle;
pub mod regularity;
pub mod rewrite;
pub mod schemes;
pub mod structure;
