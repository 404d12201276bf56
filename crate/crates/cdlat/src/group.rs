//! Finite groups as validated multiplication tables.
//!
//! A [`GroupTable`] stores a group of order `n` as an `n * n` table of
//! element indices, with the identity pinned at index 0. Construction always
//! runs the full axiom check, including an exhaustive associativity scan:
//! at the orders this crate targets, correctness outranks construction
//! speed.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::perm::Permutation;
use crate::set::ElementSet;

/// Default bound on the order of any constructed group.
pub const DEFAULT_ORDER_CAP: usize = 512;

/// Hard ceiling imposed by the `u16` element indices in the tables.
pub const ABSOLUTE_ORDER_LIMIT: usize = u16::MAX as usize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("generated group exceeds the order cap of {cap}")]
    ClosureExceedsCap { cap: usize },
    #[error("invalid permutation: {message}")]
    InvalidPermutation { message: String },
    #[error("not a group: {defect}")]
    NotAGroup { defect: TableDefect },
    #[error("subgroup is not normal: conjugating element {element} by {conjugator} leaves the subgroup")]
    NotNormal { conjugator: usize, element: usize },
    #[error("generator file, line {line}: {message}")]
    GeneratorFile { line: usize, message: String },
}

/// The first group axiom a candidate table violates, with a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableDefect {
    EntryOutOfRange { row: usize, col: usize, value: usize },
    RowNotPermutation { row: usize, value: usize },
    ColumnNotPermutation { col: usize, value: usize },
    IdentityFails { x: usize },
    NotAssociative { a: usize, b: usize, c: usize },
}

impl fmt::Display for TableDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TableDefect::EntryOutOfRange { row, col, value } => {
                write!(f, "entry ({row},{col}) = {value} is out of range")
            }
            TableDefect::RowNotPermutation { row, value } => {
                write!(f, "row {row} repeats the value {value}")
            }
            TableDefect::ColumnNotPermutation { col, value } => {
                write!(f, "column {col} repeats the value {value}")
            }
            TableDefect::IdentityFails { x } => {
                write!(f, "index 0 is not a two-sided identity at {x}")
            }
            TableDefect::NotAssociative { a, b, c } => {
                write!(f, "({a}*{b})*{c} != {a}*({b}*{c})")
            }
        }
    }
}

/// A finite group on the element indices `0..n`, identity at index 0.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupTable {
    n: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
}

/// Identity element index of every [`GroupTable`].
pub const IDENTITY: usize = 0;

impl GroupTable {
    /// The group with one element.
    pub fn trivial() -> Self {
        GroupTable {
            n: 1,
            mul: vec![0],
            inv: vec![0],
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// Conjugate `g * x * g^-1`.
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// Commutator `a * b * a^-1 * b^-1`.
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    /// Validates all group axioms on a raw table and builds the group.
    /// Checks run in a fixed order (range, Latin rows, Latin columns,
    /// identity, associativity) and report the first violation found.
    pub(crate) fn from_mul_table(n: usize, mul: Vec<u16>) -> Result<Self, GroupError> {
        assert!(n >= 1, "a group has at least the identity");
        assert!(n <= ABSOLUTE_ORDER_LIMIT + 1, "order exceeds index width");
        assert_eq!(mul.len(), n * n);
        let defect = |defect| Err(GroupError::NotAGroup { defect });

        for row in 0..n {
            for col in 0..n {
                let value = mul[row * n + col] as usize;
                if value >= n {
                    return defect(TableDefect::EntryOutOfRange { row, col, value });
                }
            }
        }
        let mut seen = vec![false; n];
        for row in 0..n {
            seen.fill(false);
            for col in 0..n {
                let value = mul[row * n + col] as usize;
                if seen[value] {
                    return defect(TableDefect::RowNotPermutation { row, value });
                }
                seen[value] = true;
            }
        }
        for col in 0..n {
            seen.fill(false);
            for row in 0..n {
                let value = mul[row * n + col] as usize;
                if seen[value] {
                    return defect(TableDefect::ColumnNotPermutation { col, value });
                }
                seen[value] = true;
            }
        }
        for x in 0..n {
            if mul[x] as usize != x || mul[x * n] as usize != x {
                return defect(TableDefect::IdentityFails { x });
            }
        }
        // Exhaustive associativity scan, first failing triple wins.
        for a in 0..n {
            let row_a = &mul[a * n..(a + 1) * n];
            for b in 0..n {
                let ab = row_a[b] as usize;
                let row_b = &mul[b * n..(b + 1) * n];
                let row_ab = &mul[ab * n..(ab + 1) * n];
                for c in 0..n {
                    if row_ab[c] != row_a[row_b[c] as usize] {
                        return defect(TableDefect::NotAssociative { a, b, c });
                    }
                }
            }
        }

        // A finite associative Latin square with identity is a group, so
        // two-sided inverses exist; read them off the rows.
        let mut inv = vec![0u16; n];
        for x in 0..n {
            let y = (0..n).find(|&y| mul[x * n + y] == 0).expect("row contains 0");
            debug_assert_eq!(mul[y * n + x], 0);
            inv[x] = y as u16;
        }
        Ok(GroupTable { n, mul, inv })
    }

    /// Builds a group from a full Cayley table given as rows of element
    /// indices. All axioms are validated; the error carries the first
    /// violated axiom and a witness.
    pub fn from_cayley_table(rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = rows.len();
        assert!(n >= 1, "a group has at least the identity");
        let mut mul = Vec::with_capacity(n * n);
        for (row_index, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "table must be square");
            for (col, &value) in row.iter().enumerate() {
                if value >= n {
                    return Err(GroupError::NotAGroup {
                        defect: TableDefect::EntryOutOfRange {
                            row: row_index,
                            col,
                            value,
                        },
                    });
                }
                mul.push(value as u16);
            }
        }
        Self::from_mul_table(n, mul)
    }

    /// The permutation group generated by `generators` on `degree` points,
    /// with the default order cap.
    ///
    /// Elements are canonically ordered by image tuple (the identity sorts
    /// first), so the table is deterministic across runs.
    pub fn from_generators(degree: usize, generators: &[Permutation]) -> Result<Self, GroupError> {
        Self::from_generators_capped(degree, generators, DEFAULT_ORDER_CAP)
    }

    pub fn from_generators_capped(
        degree: usize,
        generators: &[Permutation],
        cap: usize,
    ) -> Result<Self, GroupError> {
        for gen in generators {
            if gen.degree() != degree {
                return Err(GroupError::InvalidPermutation {
                    message: format!(
                        "generator {gen} has degree {} but the group has degree {degree}",
                        gen.degree()
                    ),
                });
            }
        }

        let mut seen = std::collections::HashSet::new();
        let identity = Permutation::identity(degree);
        seen.insert(identity.clone());
        let mut queue = vec![identity];
        let mut cursor = 0;
        while cursor < queue.len() {
            let current = queue[cursor].clone();
            cursor += 1;
            for gen in generators {
                let next = current.compose(gen);
                if seen.insert(next.clone()) {
                    if seen.len() > cap {
                        return Err(GroupError::ClosureExceedsCap { cap });
                    }
                    queue.push(next);
                }
            }
        }

        queue.sort();
        debug_assert!(queue[0].is_identity());
        let index: HashMap<&Permutation, usize> =
            queue.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let n = queue.len();
        let mut mul = Vec::with_capacity(n * n);
        for a in &queue {
            for b in &queue {
                mul.push(index[&a.compose(b)] as u16);
            }
        }
        Self::from_mul_table(n, mul)
    }

    /// Order of a single element.
    pub fn element_order(&self, x: usize) -> usize {
        let mut power = x;
        let mut order = 1;
        while power != IDENTITY {
            power = self.mul(power, x);
            order += 1;
        }
        order
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> usize {
        (0..self.n).fold(1, |acc, x| lcm(acc, self.element_order(x)))
    }

    /// The smallest subgroup containing `seed`; idempotent. An empty seed
    /// yields the trivial subgroup.
    pub fn generated_subgroup(&self, seed: &ElementSet) -> ElementSet {
        debug_assert_eq!(seed.universe(), self.n);
        let gens: Vec<usize> = seed.iter().collect();
        self.generated_by(&gens)
    }

    /// Closure of the identity under right multiplication by `gens`. In a
    /// finite group every inverse is a positive power, so this is the full
    /// generated subgroup.
    pub fn generated_by(&self, gens: &[usize]) -> ElementSet {
        let mut set = ElementSet::singleton(self.n, IDENTITY);
        let mut queue = vec![IDENTITY];
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push(y);
                }
            }
        }
        set
    }

    /// True if `set` contains the identity and is closed under the group
    /// operation (finiteness then gives inverses).
    pub fn is_subgroup(&self, set: &ElementSet) -> bool {
        if !set.contains(IDENTITY) {
            return false;
        }
        for a in set.iter() {
            for b in set.iter() {
                if !set.contains(self.mul(a, b)) {
                    return false;
                }
            }
        }
        true
    }

    /// Elements commuting with everything in `set`. Always a subgroup, and
    /// `C_G(S) = C_G(<S>)`. The empty set centralizes to the whole group.
    pub fn centralizer(&self, set: &ElementSet) -> ElementSet {
        debug_assert_eq!(set.universe(), self.n);
        let members: Vec<usize> = set.iter().collect();
        let mut out = ElementSet::empty(self.n);
        for g in 0..self.n {
            if members.iter().all(|&s| self.mul(g, s) == self.mul(s, g)) {
                out.insert(g);
            }
        }
        out
    }

    /// The center `Z(G)`, i.e. the centralizer of the whole group.
    pub fn center(&self) -> ElementSet {
        self.centralizer(&ElementSet::full(self.n))
    }

    /// The conjugate subgroup `g H g^-1`; same order as `H`.
    pub fn conjugate_subgroup(&self, subgroup: &ElementSet, g: usize) -> ElementSet {
        debug_assert!(self.is_subgroup(subgroup));
        let mut out = ElementSet::empty(self.n);
        for h in subgroup.iter() {
            out.insert(self.conj(g, h));
        }
        out
    }

    /// The set product `{a * b : a in A, b in B}` (not a subgroup in
    /// general).
    pub fn set_product(&self, left: &ElementSet, right: &ElementSet) -> ElementSet {
        let mut out = ElementSet::empty(self.n);
        for a in left.iter() {
            for b in right.iter() {
                out.insert(self.mul(a, b));
            }
        }
        out
    }

    /// `None` if the subgroup is normal, otherwise a witness `(g, h)` with
    /// `g h g^-1` outside the subgroup.
    pub fn normality_witness(&self, subgroup: &ElementSet) -> Option<(usize, usize)> {
        for g in 0..self.n {
            for h in subgroup.iter() {
                if !subgroup.contains(self.conj(g, h)) {
                    return Some((g, h));
                }
            }
        }
        None
    }

    pub fn is_normal(&self, subgroup: &ElementSet) -> bool {
        self.normality_witness(subgroup).is_none()
    }

    /// Componentwise direct product, with the default order cap. The pair
    /// `(a, b)` gets index `a * |H| + b`, so `G x 1` reproduces `G`'s table
    /// exactly.
    pub fn direct_product(&self, other: &Self) -> Result<Self, GroupError> {
        self.direct_product_capped(other, DEFAULT_ORDER_CAP)
    }

    pub fn direct_product_capped(&self, other: &Self, cap: usize) -> Result<Self, GroupError> {
        let n = self.n * other.n;
        if n > cap {
            return Err(GroupError::ClosureExceedsCap { cap });
        }
        let m = other.n;
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..self.n {
            for b in 0..m {
                for c in 0..self.n {
                    for d in 0..m {
                        mul.push((self.mul(a, c) * m + other.mul(b, d)) as u16);
                    }
                }
            }
        }
        Self::from_mul_table(n, mul)
    }

    /// The quotient group `G / N` for a normal subgroup `N`. Each coset is
    /// represented by its minimal element index, and cosets are numbered in
    /// ascending representative order, so the table is deterministic.
    pub fn quotient(&self, normal: &ElementSet) -> Result<Self, GroupError> {
        debug_assert!(self.is_subgroup(normal));
        if let Some((conjugator, element)) = self.normality_witness(normal) {
            return Err(GroupError::NotNormal {
                conjugator,
                element,
            });
        }

        let mut coset_of = vec![usize::MAX; self.n];
        let mut rep_position = vec![usize::MAX; self.n];
        let mut reps = Vec::new();
        for x in 0..self.n {
            if coset_of[x] != usize::MAX {
                continue;
            }
            // Ascending scan: x is the minimal element of its coset.
            rep_position[x] = reps.len();
            reps.push(x);
            for h in normal.iter() {
                coset_of[self.mul(x, h)] = x;
            }
        }
        let m = reps.len();
        debug_assert_eq!(m * normal.len(), self.n);

        let mut mul = Vec::with_capacity(m * m);
        for &a in &reps {
            for &b in &reps {
                mul.push(rep_position[coset_of[self.mul(a, b)]] as u16);
            }
        }
        Self::from_mul_table(m, mul)
    }

    /// The group structure induced on a subgroup, together with the map
    /// from new element indices back to indices in `self`. Elements keep
    /// their ascending order, so the identity stays at index 0.
    pub fn induced_subgroup(&self, subgroup: &ElementSet) -> (Self, Vec<usize>) {
        debug_assert!(self.is_subgroup(subgroup));
        let map: Vec<usize> = subgroup.iter().collect();
        let mut position = vec![usize::MAX; self.n];
        for (i, &e) in map.iter().enumerate() {
            position[e] = i;
        }
        let m = map.len();
        let mut mul = Vec::with_capacity(m * m);
        for &a in &map {
            for &b in &map {
                let p = position[self.mul(a, b)];
                assert_ne!(p, usize::MAX, "set is not closed under multiplication");
                mul.push(p as u16);
            }
        }
        let table = Self::from_mul_table(m, mul).expect("a subgroup is a group");
        (table, map)
    }

    /// The commutator subgroup `[H, H]` of a subgroup.
    pub fn commutator_subgroup_of(&self, subgroup: &ElementSet) -> ElementSet {
        let mut commutators = ElementSet::empty(self.n);
        for a in subgroup.iter() {
            for b in subgroup.iter() {
                commutators.insert(self.commutator(a, b));
            }
        }
        self.generated_subgroup(&commutators)
    }

    /// Basic structural invariants: abelianness, the prime factorization of
    /// the order, p-group detection, solvability (derived series) and
    /// nilpotency (upper central series).
    pub fn structure_flags(&self) -> StructureFlags {
        let is_abelian = (0..self.n)
            .all(|a| (a..self.n).all(|b| self.mul(a, b) == self.mul(b, a)));
        let prime_signature = factorize(self.n as u64);
        let p_group = match prime_signature.as_slice() {
            [(p, _)] => Some(*p),
            _ => None,
        };

        let mut derived = ElementSet::full(self.n);
        let is_solvable = loop {
            if derived.len() == 1 {
                break true;
            }
            let next = self.commutator_subgroup_of(&derived);
            if next == derived {
                break false;
            }
            derived = next;
        };

        let mut central = ElementSet::singleton(self.n, IDENTITY);
        let is_nilpotent = loop {
            if central.len() == self.n {
                break true;
            }
            let mut next = ElementSet::empty(self.n);
            for x in 0..self.n {
                if (0..self.n).all(|g| central.contains(self.commutator(x, g))) {
                    next.insert(x);
                }
            }
            if next == central {
                break false;
            }
            central = next;
        };

        StructureFlags {
            is_abelian,
            prime_signature,
            p_group,
            is_solvable,
            is_nilpotent,
        }
    }
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupTable(order {})", self.n)
    }
}

/// Flags computed by [`GroupTable::structure_flags`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureFlags {
    pub is_abelian: bool,
    /// Prime factorization of the group order as `(prime, exponent)` pairs,
    /// ascending by prime.
    pub prime_signature: Vec<(u64, u32)>,
    /// `Some(p)` when the order is a positive power of the single prime `p`.
    pub p_group: Option<u64>,
    pub is_solvable: bool,
    pub is_nilpotent: bool,
}

impl StructureFlags {
    /// Number of distinct primes dividing the order.
    pub fn prime_count(&self) -> usize {
        self.prime_signature.len()
    }
}

/// Trial-division factorization, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
