//! Resource bounds shared across the pipeline.

use crate::group::DEFAULT_ORDER_CAP;
use crate::lattice::DEFAULT_SUBGROUP_CAP;

/// Bounds on group order and subgroup count. The defaults keep exhaustive
/// associativity validation and full lattice enumeration cheap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub max_order: usize,
    pub max_subgroups: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_order: DEFAULT_ORDER_CAP,
            max_subgroups: DEFAULT_SUBGROUP_CAP,
        }
    }
}

impl Caps {
    pub fn with_max_order(mut self, max_order: usize) -> Self {
        self.max_order = max_order;
        self
    }

    pub fn with_max_subgroups(mut self, max_subgroups: usize) -> Self {
        self.max_subgroups = max_subgroups;
        self
    }
}
