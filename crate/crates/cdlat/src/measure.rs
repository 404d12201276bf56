//! The Chermak-Delgado measure and the lattice of its maximizers.
//!
//! For a subgroup `H` of a finite group `G` the measure is
//! `m_G(H) = |H| * |C_G(H)|`. The subgroups attaining the maximum value
//! `m*(G)` form a modular, self-dual sublattice of the subgroup lattice
//! with a unique minimal and maximal member; [`cd_lattice`] extracts it.

use std::collections::BTreeSet;

use crate::group::GroupTable;
use crate::lattice::Lattice;
use crate::set::ElementSet;

/// `m_G(H) = |H| * |C_G(H)|`. Fits in 64 bits for any capped order.
pub fn cd_measure(group: &GroupTable, subgroup: &ElementSet) -> u64 {
    debug_assert!(group.is_subgroup(subgroup));
    subgroup.len() as u64 * group.centralizer(subgroup).len() as u64
}

/// The set of distinct measure values over the whole subgroup lattice.
pub fn measure_image(group: &GroupTable, lattice: &Lattice) -> BTreeSet<u64> {
    lattice
        .sets()
        .iter()
        .map(|h| cd_measure(group, h))
        .collect()
}

/// The Chermak-Delgado lattice of a group, along with the measure and
/// centralizer of every subgroup in the ambient lattice.
#[derive(Debug, Clone)]
pub struct CdResult {
    m_star: u64,
    members: Vec<usize>,
    member_flags: Vec<bool>,
    min_member: usize,
    max_member: usize,
    measures: Vec<u64>,
    centralizers: Vec<usize>,
}

impl CdResult {
    /// The maximum measure `m*(G)`.
    pub fn m_star(&self) -> u64 {
        self.m_star
    }

    /// Lattice indices of the measure maximizers, ascending.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn is_member(&self, index: usize) -> bool {
        self.member_flags[index]
    }

    /// The unique minimal member (the Chermak-Delgado subgroup).
    pub fn min_member(&self) -> usize {
        self.min_member
    }

    /// The unique maximal member.
    pub fn max_member(&self) -> usize {
        self.max_member
    }

    /// Measure of any subgroup in the ambient lattice.
    pub fn measure_of(&self, index: usize) -> u64 {
        self.measures[index]
    }

    /// Lattice index of `C_G(H)` for any subgroup in the ambient lattice.
    pub fn centralizer_of(&self, index: usize) -> usize {
        self.centralizers[index]
    }

    /// Distinct measure values over the whole lattice.
    pub fn image(&self) -> BTreeSet<u64> {
        self.measures.iter().copied().collect()
    }
}

/// Scans the full lattice, computing every measure, and extracts the
/// Chermak-Delgado lattice. The minimal and maximal members exist because
/// the maximizers form a sublattice; their absence would be a bug.
pub fn cd_lattice(group: &GroupTable, lattice: &Lattice) -> CdResult {
    let size = lattice.len();
    let mut measures = Vec::with_capacity(size);
    let mut centralizers = Vec::with_capacity(size);
    for set in lattice.sets() {
        let centralizer = group.centralizer(set);
        let measure = set.len() as u64 * centralizer.len() as u64;
        let index = lattice
            .index_of(&centralizer)
            .expect("a centralizer is a subgroup of a complete lattice");
        measures.push(measure);
        centralizers.push(index);
    }

    let m_star = *measures.iter().max().expect("lattice is nonempty");
    let members: Vec<usize> = (0..size).filter(|&i| measures[i] == m_star).collect();
    let mut member_flags = vec![false; size];
    for &m in &members {
        member_flags[m] = true;
    }

    let min_member = *members
        .iter()
        .find(|&&candidate| {
            members
                .iter()
                .all(|&other| lattice.get(candidate).is_subset_of(lattice.get(other)))
        })
        .expect("the Chermak-Delgado lattice has a unique minimal member");
    let max_member = *members
        .iter()
        .find(|&&candidate| {
            members
                .iter()
                .all(|&other| lattice.get(other).is_subset_of(lattice.get(candidate)))
        })
        .expect("the Chermak-Delgado lattice has a unique maximal member");

    CdResult {
        m_star,
        members,
        member_flags,
        min_member,
        max_member,
        measures,
        centralizers,
    }
}
