//! The built-in corpus of small groups.

use crate::spec::{parse_spec, GroupSpec};

/// Constructor expressions of the default corpus, in sweep order.
pub const DEFAULT_CORPUS: &[&str] = &[
    "C(1)",
    "C(2)",
    "C(3)",
    "C(4)",
    "C(5)",
    "C(6)",
    "C(7)",
    "C(8)",
    "C(9)",
    "C(10)",
    "C(11)",
    "C(12)",
    "C(13)",
    "C(14)",
    "C(15)",
    "C(16)",
    "Ab(2,2)",
    "Ab(2,4)",
    "Ab(2,2,2)",
    "Ab(3,3)",
    "D(3)",
    "D(4)",
    "D(5)",
    "D(6)",
    "D(7)",
    "D(8)",
    "D(16)",
    "Q(2)",
    "Q(3)",
    "Q(4)",
    "SD(4)",
    "M(2,4)",
    "M(2,5)",
    "M(3,3)",
    "Heis(3)",
    "Heis(5)",
    "ESP2(3)",
    "ES(2,1,+)",
    "ES(2,1,-)",
    "ES(2,2,+)",
    "ES(2,2,-)",
    "ES(3,1,p)",
    "ES(3,1,p2)",
    "ES(5,1,p)",
    "S(3)",
    "S(4)",
    "A(4)",
    "Q(2) x C(3)",
    "Q(2) x C(9)",
    "D(4) x C(9)",
    "D(4) x Heis(3)",
    "Q(2) x Heis(3)",
    "D(4) x D(4)",
];

pub fn default_corpus() -> Vec<GroupSpec> {
    DEFAULT_CORPUS
        .iter()
        .map(|s| parse_spec(s).expect("corpus entries are valid"))
        .collect()
}
