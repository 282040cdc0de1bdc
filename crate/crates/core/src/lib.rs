//! Super edge-graceful labelings of diameter-4 trees `RT(a_1, ..., a_n)`:
//! tree model, verifier, explicit constructions and an exhaustive search
//! oracle.

pub mod classify;
pub mod cli;
pub mod construct;
pub mod dot;
pub mod labeling;
pub mod search;
pub mod tree;

pub use classify::{classify, Classification, Dispatch, Family, Lemma};
pub use construct::{label_any, LabelOutcome};
pub use labeling::{induce, verify, EdgeLabeling, Label, LabelingFile, VerificationReport};
pub use search::{certify_not_seg, count_all, search, Certificate, Mode, SearchConfig, SearchOutcome, SearchResult};
pub use tree::{enumerate_specs, parse_spec, RootedTree, TreeSpec, Vertex};
