//! Benchmark fixtures.

use latcon_core::catalog::{by_name, corpus, n5};
use latcon_core::FiniteLattice;

/// Named lattices used across benches.
pub fn named() -> Vec<FiniteLattice> {
    ["n5", "m3", "n6", "l9", "l10", "b3", "chain8"].iter().map(|n| by_name(n).expect("catalog name")).collect()
}

/// The corpus of all lattices up to `n` elements.
pub fn small_corpus(n: usize) -> Vec<FiniteLattice> {
    corpus(n).expect("within enumeration limit")
}

pub fn pentagon() -> FiniteLattice {
    n5()
}
