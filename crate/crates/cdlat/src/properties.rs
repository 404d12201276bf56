//! Structural checks on a computed Chermak-Delgado lattice.
//!
//! Every property verified here is a theorem about finite groups, so a
//! failure on a valid group always indicates an implementation bug. The
//! checks double as the pipeline's regression suite: each failure carries a
//! concrete witness that can be re-checked in isolation.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::group::{is_prime, GroupTable};
use crate::lattice::{enumerate_subgroups_capped, Lattice};
use crate::measure::{cd_lattice, CdResult};
use crate::set::ElementSet;

/// Identifiers for the ten verified properties, in canonical report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PropertyId {
    P1,
    P2,
    P3,
    P4,
    P5,
    P6,
    P7,
    P8,
    P9,
    P10,
}

impl PropertyId {
    pub const ALL: [PropertyId; 10] = [
        PropertyId::P1,
        PropertyId::P2,
        PropertyId::P3,
        PropertyId::P4,
        PropertyId::P5,
        PropertyId::P6,
        PropertyId::P7,
        PropertyId::P8,
        PropertyId::P9,
        PropertyId::P10,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PropertyId::P1 => "P1",
            PropertyId::P2 => "P2",
            PropertyId::P3 => "P3",
            PropertyId::P4 => "P4",
            PropertyId::P5 => "P5",
            PropertyId::P6 => "P6",
            PropertyId::P7 => "P7",
            PropertyId::P8 => "P8",
            PropertyId::P9 => "P9",
            PropertyId::P10 => "P10",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            PropertyId::P1 => {
                "m(H) <= m(C(H)) for every subgroup, and equality forces C(C(H)) = H"
            }
            PropertyId::P2 => "members have member centralizers, with C(C(H)) = H",
            PropertyId::P3 => {
                "the maximal member is normal and its own CD lattice equals CD(G)"
            }
            PropertyId::P4 => "the minimal member is normal, abelian, and contains the center",
            PropertyId::P5 => "members are closed under meet and join, and permute: HK = KH = join",
            PropertyId::P6 => "members are closed under conjugation",
            PropertyId::P7 => "the modular law holds on the members",
            PropertyId::P8 => "H -> C(H) is an order-reversing involution on the members",
            PropertyId::P9 => "if the trivial subgroup is a member, no member has prime order",
            PropertyId::P10 => "every member contains the center",
        }
    }
}

impl std::fmt::Display for PropertyId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A subgroup identified the way reports identify them: canonical lattice
/// index, order, and the sorted element list, so witnesses can be
/// re-checked outside this process.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupWitness {
    pub index: usize,
    pub order: usize,
    pub elements: Vec<usize>,
}

impl SubgroupWitness {
    pub fn from_lattice(lattice: &Lattice, index: usize) -> Self {
        let set = lattice.get(index);
        SubgroupWitness {
            index,
            order: set.len(),
            elements: set.iter().collect(),
        }
    }
}

/// Concrete evidence for a failed check: the subgroups involved, an
/// optional group element, and a one-line explanation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub subgroups: Vec<SubgroupWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<usize>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyCheck {
    pub id: PropertyId,
    pub passed: bool,
    pub witness: Option<Witness>,
}

/// Pass/fail per property, in canonical order P1..P10.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub checks: Vec<PropertyCheck>,
}

impl PropertyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

struct Context<'a> {
    group: &'a GroupTable,
    lattice: &'a Lattice,
    cd: &'a CdResult,
}

impl Context<'_> {
    fn witness_of(&self, index: usize) -> SubgroupWitness {
        SubgroupWitness::from_lattice(self.lattice, index)
    }

    fn pass(&self, id: PropertyId) -> PropertyCheck {
        PropertyCheck {
            id,
            passed: true,
            witness: None,
        }
    }

    fn fail(
        &self,
        id: PropertyId,
        subgroups: Vec<usize>,
        element: Option<usize>,
        note: impl Into<String>,
    ) -> PropertyCheck {
        PropertyCheck {
            id,
            passed: false,
            witness: Some(Witness {
                subgroups: subgroups.into_iter().map(|i| self.witness_of(i)).collect(),
                element,
                note: note.into(),
            }),
        }
    }
}

/// Runs all ten checks; each property reports independently with the first
/// witness found.
pub fn verify_cd_properties(
    group: &GroupTable,
    lattice: &Lattice,
    cd: &CdResult,
) -> PropertyReport {
    let ctx = Context { group, lattice, cd };
    let checks = vec![
        check_p1(&ctx),
        check_p2(&ctx),
        check_p3(&ctx),
        check_p4(&ctx),
        check_p5(&ctx),
        check_p6(&ctx),
        check_p7(&ctx),
        check_p8(&ctx),
        check_p9(&ctx),
        check_p10(&ctx),
    ];
    PropertyReport { checks }
}

fn check_p1(ctx: &Context) -> PropertyCheck {
    for h in 0..ctx.lattice.len() {
        let c = ctx.cd.centralizer_of(h);
        if ctx.cd.measure_of(h) > ctx.cd.measure_of(c) {
            return ctx.fail(
                PropertyId::P1,
                vec![h, c],
                None,
                format!(
                    "m(H) = {} exceeds m(C(H)) = {}",
                    ctx.cd.measure_of(h),
                    ctx.cd.measure_of(c)
                ),
            );
        }
        if ctx.cd.measure_of(h) == ctx.cd.measure_of(c) && ctx.cd.centralizer_of(c) != h {
            return ctx.fail(
                PropertyId::P1,
                vec![h, c, ctx.cd.centralizer_of(c)],
                None,
                "equal measures but C(C(H)) differs from H",
            );
        }
    }
    ctx.pass(PropertyId::P1)
}

fn check_p2(ctx: &Context) -> PropertyCheck {
    for &h in ctx.cd.members() {
        let c = ctx.cd.centralizer_of(h);
        if !ctx.cd.is_member(c) {
            return ctx.fail(
                PropertyId::P2,
                vec![h, c],
                None,
                "centralizer of a member is not a member",
            );
        }
        if ctx.cd.centralizer_of(c) != h {
            return ctx.fail(
                PropertyId::P2,
                vec![h, c, ctx.cd.centralizer_of(c)],
                None,
                "C(C(H)) differs from H on a member",
            );
        }
    }
    ctx.pass(PropertyId::P2)
}

/// Recomputes the full pipeline inside the maximal member and maps the
/// result back through element indices; an end-to-end self-consistency
/// check rather than a shortcut.
fn check_p3(ctx: &Context) -> PropertyCheck {
    let top = ctx.cd.max_member();
    if let Some((conjugator, element)) = ctx.group.normality_witness(ctx.lattice.get(top)) {
        let _ = element;
        return ctx.fail(
            PropertyId::P3,
            vec![top],
            Some(conjugator),
            "maximal member is not normal",
        );
    }

    let (inner, map) = ctx.group.induced_subgroup(ctx.lattice.get(top));
    let inner_lattice = enumerate_subgroups_capped(&inner, ctx.lattice.len())
        .expect("a subgroup has no more subgroups than its ambient group");
    let inner_cd = cd_lattice(&inner, &inner_lattice);

    let mapped: BTreeSet<ElementSet> = inner_cd
        .members()
        .iter()
        .map(|&i| {
            ElementSet::from_indices(
                ctx.group.order(),
                inner_lattice.get(i).iter().map(|e| map[e]),
            )
        })
        .collect();
    let original: BTreeSet<ElementSet> = ctx
        .cd
        .members()
        .iter()
        .map(|&i| ctx.lattice.get(i).clone())
        .collect();

    if mapped != original {
        let stray = mapped
            .symmetric_difference(&original)
            .next()
            .expect("sets differ");
        let involved = match ctx.lattice.index_of(stray) {
            Some(index) => vec![top, index],
            None => vec![top],
        };
        return ctx.fail(
            PropertyId::P3,
            involved,
            None,
            "CD lattice recomputed inside the maximal member differs from CD(G)",
        );
    }
    ctx.pass(PropertyId::P3)
}

fn check_p4(ctx: &Context) -> PropertyCheck {
    let bottom = ctx.cd.min_member();
    let set = ctx.lattice.get(bottom);
    if let Some((conjugator, _)) = ctx.group.normality_witness(set) {
        return ctx.fail(
            PropertyId::P4,
            vec![bottom],
            Some(conjugator),
            "minimal member is not normal",
        );
    }
    for a in set.iter() {
        for b in set.iter() {
            if ctx.group.mul(a, b) != ctx.group.mul(b, a) {
                return ctx.fail(
                    PropertyId::P4,
                    vec![bottom],
                    Some(a),
                    "minimal member is not abelian",
                );
            }
        }
    }
    if !ctx.group.center().is_subset_of(set) {
        return ctx.fail(
            PropertyId::P4,
            vec![bottom],
            None,
            "minimal member does not contain the center",
        );
    }
    ctx.pass(PropertyId::P4)
}

fn check_p5(ctx: &Context) -> PropertyCheck {
    for &a in ctx.cd.members() {
        for &b in ctx.cd.members() {
            let meet = ctx.lattice.meet(a, b);
            if !ctx.cd.is_member(meet) {
                return ctx.fail(
                    PropertyId::P5,
                    vec![a, b, meet],
                    None,
                    "meet of two members is not a member",
                );
            }
            let join = ctx.lattice.join(ctx.group, a, b);
            if !ctx.cd.is_member(join) {
                return ctx.fail(
                    PropertyId::P5,
                    vec![a, b, join],
                    None,
                    "join of two members is not a member",
                );
            }
            let hk = ctx.group.set_product(ctx.lattice.get(a), ctx.lattice.get(b));
            let kh = ctx.group.set_product(ctx.lattice.get(b), ctx.lattice.get(a));
            if hk != kh || &hk != ctx.lattice.get(join) {
                return ctx.fail(
                    PropertyId::P5,
                    vec![a, b, join],
                    None,
                    "members do not permute: HK, KH and the join disagree",
                );
            }
        }
    }
    ctx.pass(PropertyId::P5)
}

fn check_p6(ctx: &Context) -> PropertyCheck {
    for &h in ctx.cd.members() {
        for g in 0..ctx.group.order() {
            let conjugate = ctx.group.conjugate_subgroup(ctx.lattice.get(h), g);
            match ctx.lattice.index_of(&conjugate) {
                Some(index) if ctx.cd.is_member(index) => {}
                Some(index) => {
                    return ctx.fail(
                        PropertyId::P6,
                        vec![h, index],
                        Some(g),
                        "conjugate of a member is not a member",
                    )
                }
                None => {
                    return ctx.fail(
                        PropertyId::P6,
                        vec![h],
                        Some(g),
                        "conjugate of a member is missing from the lattice",
                    )
                }
            }
        }
    }
    ctx.pass(PropertyId::P6)
}

fn check_p7(ctx: &Context) -> PropertyCheck {
    let members = ctx.cd.members();
    let count = members.len();
    // Precompute meet and join over member pairs; the triple loop then only
    // compares indices. A meet or join landing outside the member set is a
    // closure failure (P5 territory) that the modular law cannot be stated
    // over, so it is reported here too.
    let mut meets = vec![0usize; count * count];
    let mut joins = vec![0usize; count * count];
    for (i, &a) in members.iter().enumerate() {
        for (j, &b) in members.iter().enumerate() {
            meets[i * count + j] = ctx.lattice.meet(a, b);
            joins[i * count + j] = ctx.lattice.join(ctx.group, a, b);
        }
    }
    let position = |global: usize| members.binary_search(&global).ok();

    for (xi, &x) in members.iter().enumerate() {
        for (zi, &z) in members.iter().enumerate() {
            if !ctx.lattice.get(x).is_subset_of(ctx.lattice.get(z)) {
                continue;
            }
            for (yi, &y) in members.iter().enumerate() {
                let meet_yz = meets[yi * count + zi];
                let join_xy = joins[xi * count + yi];
                let (Some(meet_pos), Some(join_pos)) = (position(meet_yz), position(join_xy))
                else {
                    return ctx.fail(
                        PropertyId::P7,
                        vec![x, y, z],
                        None,
                        "meet or join of members left the member set",
                    );
                };
                let lhs = joins[xi * count + meet_pos];
                let rhs = meets[join_pos * count + zi];
                if lhs != rhs {
                    return ctx.fail(
                        PropertyId::P7,
                        vec![x, y, z],
                        None,
                        "modular law fails: X v (Y ^ Z) != (X v Y) ^ Z with X <= Z",
                    );
                }
            }
        }
    }
    ctx.pass(PropertyId::P7)
}

fn check_p8(ctx: &Context) -> PropertyCheck {
    for &a in ctx.cd.members() {
        if ctx.cd.centralizer_of(ctx.cd.centralizer_of(a)) != a {
            return ctx.fail(
                PropertyId::P8,
                vec![a],
                None,
                "centralizer map is not an involution on the members",
            );
        }
        for &b in ctx.cd.members() {
            if ctx.lattice.get(a).is_subset_of(ctx.lattice.get(b)) {
                let ca = ctx.cd.centralizer_of(a);
                let cb = ctx.cd.centralizer_of(b);
                if !ctx.lattice.get(cb).is_subset_of(ctx.lattice.get(ca)) {
                    return ctx.fail(
                        PropertyId::P8,
                        vec![a, b, ca, cb],
                        None,
                        "centralizer map does not reverse order on the members",
                    );
                }
            }
        }
    }
    ctx.pass(PropertyId::P8)
}

fn check_p9(ctx: &Context) -> PropertyCheck {
    if ctx.cd.is_member(ctx.lattice.bottom()) {
        for &h in ctx.cd.members() {
            if is_prime(ctx.lattice.order_of(h) as u64) {
                return ctx.fail(
                    PropertyId::P9,
                    vec![h],
                    None,
                    "trivial subgroup is a member alongside a member of prime order",
                );
            }
        }
    }
    ctx.pass(PropertyId::P9)
}

fn check_p10(ctx: &Context) -> PropertyCheck {
    let center = ctx.group.center();
    for &h in ctx.cd.members() {
        if !center.is_subset_of(ctx.lattice.get(h)) {
            return ctx.fail(
                PropertyId::P10,
                vec![h],
                None,
                "member does not contain the center",
            );
        }
    }
    ctx.pass(PropertyId::P10)
}
