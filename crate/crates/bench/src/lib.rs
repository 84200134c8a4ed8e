//! Fixed inputs shared by the benchmarks.

use grim_core::{make_family, Graph};

/// Boards that stress canonicalization: highly symmetric or irregular.
pub fn canon_inputs() -> Vec<(&'static str, Graph)> {
    ["complete:12", "cart(cycle:4,cycle:4)", "wheel:13", "kpartite:3,4,5", "join(path:6,cycle:7)"]
        .into_iter()
        .map(|s| (s, make_family(s).expect("valid spec")))
        .collect()
}
