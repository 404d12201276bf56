//! Complete subgroup lattices and order-theoretic queries.
//!
//! Enumeration closes the set of cyclic subgroups under pairwise join with
//! a worklist and bitset dedupe. Every subgroup is the join of its cyclic
//! subgroups, so the closure is complete.

use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

use crate::group::GroupTable;
use crate::set::ElementSet;

/// Default bound on the number of subgroups enumerated per group; guards
/// against pathological inputs such as large elementary abelian 2-groups.
pub const DEFAULT_SUBGROUP_CAP: usize = 250_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("subgroup lattice exceeds the cap of {cap}")]
    ExceedsCap { cap: usize },
    #[error("subgroup {h} is not strictly contained in subgroup {k}")]
    NotComparable { h: usize, k: usize },
}

/// The full subgroup lattice of a group: every subgroup, canonically sorted
/// by order and then by ascending element list.
///
/// Index 0 is always the trivial subgroup and the last index is the whole
/// group. The lattice is immutable once enumerated; queries are read-only.
pub struct Lattice {
    subgroups: Vec<ElementSet>,
    index: HashMap<ElementSet, usize>,
    covers: OnceLock<Vec<(usize, usize)>>,
}

impl std::fmt::Debug for Lattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Lattice({} subgroups)", self.subgroups.len())
    }
}

/// Enumerates every subgroup of `group` with the default cap.
pub fn enumerate_subgroups(group: &GroupTable) -> Result<Lattice, LatticeError> {
    enumerate_subgroups_capped(group, DEFAULT_SUBGROUP_CAP)
}

pub fn enumerate_subgroups_capped(
    group: &GroupTable,
    cap: usize,
) -> Result<Lattice, LatticeError> {
    let n = group.order();

    // Atoms: all cyclic subgroups, each remembered with one generator.
    let mut atoms: Vec<(ElementSet, usize)> = Vec::new();
    let mut seen_atoms = HashSet::new();
    for x in 0..n {
        let cyclic = group.generated_by(&[x]);
        if seen_atoms.insert(cyclic.clone()) {
            atoms.push((cyclic, x));
        }
    }

    // Worklist closure under join-with-atom. Each discovered subgroup keeps
    // a small generating set so joins stay cheap.
    let mut found: HashSet<ElementSet> = HashSet::new();
    let mut queue: Vec<(ElementSet, Vec<usize>)> = Vec::new();
    for (set, gen) in &atoms {
        if found.insert(set.clone()) {
            queue.push((set.clone(), vec![*gen]));
        }
    }
    if queue.len() > cap {
        return Err(LatticeError::ExceedsCap { cap });
    }

    let mut cursor = 0;
    while cursor < queue.len() {
        let (current, gens) = queue[cursor].clone();
        cursor += 1;
        for (atom, atom_gen) in &atoms {
            if atom.is_subset_of(&current) {
                continue;
            }
            let mut joined_gens = gens.clone();
            joined_gens.push(*atom_gen);
            let joined = group.generated_by(&joined_gens);
            if found.insert(joined.clone()) {
                if found.len() > cap {
                    return Err(LatticeError::ExceedsCap { cap });
                }
                queue.push((joined, joined_gens));
            }
        }
    }

    let mut subgroups: Vec<ElementSet> = found.into_iter().collect();
    subgroups.sort();
    let index = subgroups
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    Ok(Lattice {
        subgroups,
        index,
        covers: OnceLock::new(),
    })
}

impl Lattice {
    /// Number of subgroups.
    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a lattice always contains the trivial subgroup and the group
    }

    pub fn get(&self, index: usize) -> &ElementSet {
        &self.subgroups[index]
    }

    pub fn sets(&self) -> &[ElementSet] {
        &self.subgroups
    }

    pub fn index_of(&self, set: &ElementSet) -> Option<usize> {
        self.index.get(set).copied()
    }

    /// Index of the trivial subgroup.
    pub fn bottom(&self) -> usize {
        0
    }

    /// Index of the whole group.
    pub fn top(&self) -> usize {
        self.subgroups.len() - 1
    }

    pub fn order_of(&self, index: usize) -> usize {
        self.subgroups[index].len()
    }

    fn check_comparable(&self, h: usize, k: usize) -> Result<(), LatticeError> {
        if !self.subgroups[h].is_proper_subset_of(&self.subgroups[k]) {
            return Err(LatticeError::NotComparable { h, k });
        }
        Ok(())
    }

    /// All subgroups strictly between `h` and `k`. Candidates are prefiltered
    /// by order divisibility; canonical sorting means every candidate index
    /// lies strictly between `h` and `k`.
    pub fn open_interval(&self, h: usize, k: usize) -> Result<Vec<usize>, LatticeError> {
        self.check_comparable(h, k)?;
        let (ho, ko) = (self.order_of(h), self.order_of(k));
        let mut out = Vec::new();
        for x in h + 1..k {
            let xo = self.order_of(x);
            if xo <= ho || xo >= ko || !xo.is_multiple_of(ho) || !ko.is_multiple_of(xo) {
                continue;
            }
            if self.subgroups[h].is_subset_of(&self.subgroups[x])
                && self.subgroups[x].is_subset_of(&self.subgroups[k])
            {
                out.push(x);
            }
        }
        Ok(out)
    }

    /// True when nothing lies strictly between `h` and `k`.
    pub fn is_maximal_in(&self, h: usize, k: usize) -> Result<bool, LatticeError> {
        self.check_comparable(h, k)?;
        Ok(!self.has_intermediate(h, k))
    }

    /// Existence version of `open_interval` with early exit.
    pub(crate) fn has_intermediate(&self, h: usize, k: usize) -> bool {
        let (ho, ko) = (self.order_of(h), self.order_of(k));
        for x in h + 1..k {
            let xo = self.order_of(x);
            if xo <= ho || xo >= ko || !xo.is_multiple_of(ho) || !ko.is_multiple_of(xo) {
                continue;
            }
            if self.subgroups[h].is_subset_of(&self.subgroups[x])
                && self.subgroups[x].is_subset_of(&self.subgroups[k])
            {
                return true;
            }
        }
        false
    }

    /// Indices of the subgroups invariant under conjugation by every group
    /// element.
    pub fn normal_subgroups(&self, group: &GroupTable) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| group.is_normal(&self.subgroups[i]))
            .collect()
    }

    /// Lattice meet: the intersection, which enumeration completeness
    /// guarantees is itself a member.
    pub fn meet(&self, h: usize, k: usize) -> usize {
        let glb = self.subgroups[h].intersection(&self.subgroups[k]);
        self.index_of(&glb)
            .expect("intersection of subgroups is a subgroup of a complete lattice")
    }

    /// Lattice join: the subgroup generated by the union.
    pub fn join(&self, group: &GroupTable, h: usize, k: usize) -> usize {
        let lub = group.generated_subgroup(&self.subgroups[h].union(&self.subgroups[k]));
        self.index_of(&lub)
            .expect("generated join is a subgroup of a complete lattice")
    }

    /// The cover relation `H ⋖ K` (the transitive reduction of containment),
    /// as `(h, k)` index pairs sorted ascending. Computed on first use.
    pub fn covers(&self) -> &[(usize, usize)] {
        self.covers.get_or_init(|| {
            let s = self.len();
            let mut pairs = Vec::new();
            let mut proper = Vec::new();
            let mut dominated = vec![false; s];
            for k in 0..s {
                let ko = self.order_of(k);
                proper.clear();
                for h in 0..k {
                    let ho = self.order_of(h);
                    if ho < ko
                        && ko.is_multiple_of(ho)
                        && self.subgroups[h].is_subset_of(&self.subgroups[k])
                    {
                        proper.push(h);
                    }
                }
                // Proper subgroups arrive in ascending canonical order;
                // walk them largest-first and knock out everything below a
                // survivor. Survivors are exactly the covers of k.
                for &h in &proper {
                    dominated[h] = false;
                }
                for (pos, &h) in proper.iter().enumerate().rev() {
                    if dominated[h] {
                        continue;
                    }
                    pairs.push((h, k));
                    let ho = self.order_of(h);
                    for &x in &proper[..pos] {
                        if !dominated[x]
                            && ho.is_multiple_of(self.order_of(x))
                            && self.subgroups[x].is_subset_of(&self.subgroups[h])
                        {
                            dominated[x] = true;
                        }
                    }
                }
            }
            pairs.sort_unstable();
            pairs
        })
    }
}
