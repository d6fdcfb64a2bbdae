//! Subgroups as element bit-sets, and the operations that combine them.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use crate::arith;
use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::group::{Group, Limits};

#[derive(Clone)]
pub struct Subgroup {
    parent: Group,
    members: ElementSet,
    size: usize,
    gens: OnceLock<Vec<usize>>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent.same(&other.parent) && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(|H|={}, {:?})", self.size, self.members)
    }
}

impl Subgroup {
    /// Wraps a set already known to be a subgroup.
    pub(crate) fn from_closed_set(parent: &Group, members: ElementSet) -> Subgroup {
        let size = members.len();
        assert!(members.contains(0), "subgroup without identity");
        assert_eq!(parent.order() % size, 0, "subgroup order must divide group order");
        debug_assert!(is_closed(parent, &members));
        Subgroup {
            parent: parent.clone(),
            members,
            size,
            gens: OnceLock::new(),
        }
    }

    fn with_generators(parent: &Group, members: ElementSet, gens: Vec<usize>) -> Subgroup {
        let h = Self::from_closed_set(parent, members);
        let _ = h.gens.set(gens);
        h
    }

    /// Checked constructor: `None` unless `members` is a subgroup.
    pub fn from_members(parent: &Group, members: impl IntoIterator<Item = usize>) -> Option<Subgroup> {
        let n = parent.order();
        let mut set = ElementSet::new(n);
        for x in members {
            if x >= n {
                return None;
            }
            set.insert(x);
        }
        (set.contains(0) && is_closed(parent, &set)).then(|| Self::from_closed_set(parent, set))
    }

    pub fn parent(&self) -> &Group {
        &self.parent
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn bits(&self) -> &ElementSet {
        &self.members
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_trivial(&self) -> bool {
        self.size == 1
    }

    pub fn is_whole(&self) -> bool {
        self.size == self.parent.order()
    }

    /// A small generating set, chosen greedily by ascending element index.
    pub fn generators(&self) -> &[usize] {
        self.gens.get_or_init(|| {
            let mut gens = Vec::new();
            let mut span = ElementSet::from_indices(self.parent.order(), [0]);
            for x in self.members.iter() {
                if !span.contains(x) {
                    gens.push(x);
                    span = closure(&self.parent, &gens);
                    if span.len() == self.size {
                        break;
                    }
                }
            }
            gens
        })
    }

    pub fn generator_labels(&self) -> Vec<&str> {
        self.generators().iter().map(|&x| self.parent.label(x)).collect()
    }

    pub fn join(&self, other: &Subgroup) -> Result<Subgroup> {
        if !self.parent.same(&other.parent) {
            return Err(Error::ParentMismatch);
        }
        if other.is_subgroup_of(self) {
            return Ok(self.clone());
        }
        if self.is_subgroup_of(other) {
            return Ok(other.clone());
        }
        let mut gens = self.generators().to_vec();
        gens.extend_from_slice(other.generators());
        let set = closure(&self.parent, &gens);
        Ok(Subgroup::from_closed_set(&self.parent, set))
    }

    pub fn meet(&self, other: &Subgroup) -> Result<Subgroup> {
        if !self.parent.same(&other.parent) {
            return Err(Error::ParentMismatch);
        }
        Ok(Subgroup::from_closed_set(
            &self.parent,
            self.members.intersection(&other.members),
        ))
    }

    pub fn is_normal(&self) -> bool {
        let g = &self.parent;
        let gens = self.generators();
        g.elements().all(|x| {
            let xi = g.inv(x);
            gens.iter().all(|&h| self.contains(g.mul(g.mul(x, h), xi)))
        })
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .enumerate()
            .all(|(i, &a)| gens[i + 1..].iter().all(|&b| self.parent.commute(a, b)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.members().any(|x| self.parent.element_order(x) == self.size)
    }

    /// The subgroup as a group in its own right, members re-indexed in
    /// ascending order (so the identity stays at index 0).
    pub fn to_group(&self) -> Group {
        let g = &self.parent;
        let members: Vec<usize> = self.members().collect();
        let mut position = vec![usize::MAX; g.order()];
        for (i, &x) in members.iter().enumerate() {
            position[x] = i;
        }
        let n = members.len();
        let mut table = Vec::with_capacity(n * n);
        for &x in &members {
            for &y in &members {
                table.push(position[g.mul(x, y)] as u32);
            }
        }
        let labels = members.iter().map(|&x| g.label(x).to_string()).collect();
        let source = format!("sub({}; {})", g.source(), self.generator_labels().join(", "));
        Group::from_table_derived(n, table, labels, source).expect("restriction of a valid group")
    }
}

/// Breadth-first closure of `gens` under right multiplication.
pub(crate) fn closure(g: &Group, gens: &[usize]) -> ElementSet {
    let mut set = ElementSet::from_indices(g.order(), [0]);
    let mut frontier = vec![0usize];
    while let Some(x) = frontier.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

fn is_closed(g: &Group, set: &ElementSet) -> bool {
    let members: Vec<usize> = set.iter().collect();
    members
        .iter()
        .all(|&x| members.iter().all(|&y| set.contains(g.mul(x, y))))
}

/// Least subgroup containing `s`.
pub fn generated(g: &Group, s: &[usize]) -> Subgroup {
    let set = closure(g, s);
    Subgroup::from_closed_set(g, set)
}

/// Every subgroup of `g` exactly once, ordered by size and then by the
/// lexicographic order of member lists.
///
/// Starts from the trivial group and the cyclic subgroups, then repeatedly
/// joins each discovered subgroup with every cyclic subgroup it does not yet
/// contain. Every subgroup is a join of cyclic ones, so the worklist reaches
/// all of them.
pub fn all_subgroups(g: &Group, limits: &Limits) -> Result<Vec<Subgroup>> {
    limits.check_enumeration(g.order())?;

    let mut cyclic: Vec<(usize, ElementSet)> = Vec::new();
    let mut seen_cyclic: HashMap<ElementSet, ()> = HashMap::new();
    for x in g.elements().skip(1) {
        let set = closure(g, &[x]);
        if seen_cyclic.insert(set.clone(), ()).is_none() {
            cyclic.push((x, set));
        }
    }

    let mut found: Vec<(ElementSet, Vec<usize>)> = vec![(ElementSet::from_indices(g.order(), [0]), vec![])];
    let mut index: HashMap<ElementSet, usize> = HashMap::new();
    index.insert(found[0].0.clone(), 0);
    for (x, set) in &cyclic {
        index.insert(set.clone(), found.len());
        found.push((set.clone(), vec![*x]));
    }

    let mut i = 0;
    while i < found.len() {
        for (c, _) in &cyclic {
            if found[i].0.contains(*c) {
                continue;
            }
            let mut gens = found[i].1.clone();
            gens.push(*c);
            let set = closure(g, &gens);
            if !index.contains_key(&set) {
                index.insert(set.clone(), found.len());
                found.push((set, gens));
            }
        }
        i += 1;
    }

    let mut subgroups: Vec<Subgroup> = found
        .into_iter()
        .map(|(set, gens)| Subgroup::with_generators(g, set, gens))
        .collect();
    sort_subgroups(&mut subgroups);
    Ok(subgroups)
}

/// Export / node order: by size, then lexicographically by member list.
pub fn sort_subgroups(subgroups: &mut [Subgroup]) {
    subgroups.sort_by(|a, b| a.size.cmp(&b.size).then_with(|| a.members.lex_cmp(&b.members)));
}

/// A quotient group together with the projection `element -> coset index`.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: Group,
    pub projection: Vec<usize>,
}

/// Cosets are numbered by their smallest member; each coset is labeled
/// `[x]` with `x` that smallest member's label.
pub fn quotient(g: &Group, n: &Subgroup) -> Result<Quotient> {
    if !n.parent().same(g) {
        return Err(Error::ParentMismatch);
    }
    if !n.is_normal() {
        return Err(Error::NotNormal);
    }
    let mut projection = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if projection[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for m in n.members() {
            projection[g.mul(x, m)] = c;
        }
    }
    let k = reps.len();
    let mut table = Vec::with_capacity(k * k);
    for &a in &reps {
        for &b in &reps {
            table.push(projection[g.mul(a, b)] as u32);
        }
    }
    let labels = reps.iter().map(|&x| format!("[{}]", g.label(x))).collect();
    let source = format!("{} / {}", g.source(), n.size());
    let group = Group::from_table_derived(k, table, labels, source)?;
    Ok(Quotient { group, projection })
}

/// `[A, B]`, generated by all `x⁻¹y⁻¹xy` with `x ∈ A`, `y ∈ B`.
pub fn commutator_subgroup(a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
    if !a.parent().same(b.parent()) {
        return Err(Error::ParentMismatch);
    }
    let g = a.parent();
    let mut comms = ElementSet::new(g.order());
    for x in a.members() {
        for y in b.members() {
            comms.insert(g.commutator(x, y));
        }
    }
    let comms: Vec<usize> = comms.iter().filter(|&c| c != 0).collect();
    Ok(generated(g, &comms))
}

pub fn derived_subgroup(g: &Group) -> Subgroup {
    let whole = g.whole();
    commutator_subgroup(&whole, &whole).expect("same parent")
}

/// `1 = Z₀ ≤ Z₁ = Z(G) ≤ Z₂ ≤ …`. Always lists `Z₀` and `Z₁`; further terms
/// are appended while the series keeps growing.
pub fn upper_central_series(g: &Group) -> Vec<Subgroup> {
    let mut series = vec![g.trivial(), g.center()];
    loop {
        let last = series.last().expect("non-empty");
        if last.is_whole() {
            break;
        }
        let q = quotient(g, last).expect("terms of the series are normal");
        let zq = q.group.center();
        let pre = ElementSet::from_indices(g.order(), g.elements().filter(|&x| zq.contains(q.projection[x])));
        if pre.len() == last.size() {
            break;
        }
        series.push(Subgroup::from_closed_set(g, pre));
    }
    series
}

pub fn is_nilpotent(g: &Group) -> bool {
    upper_central_series(g).last().is_some_and(|top| top.is_whole())
}

/// For a nilpotent group, the Sylow `p`-subgroup for each prime `p` dividing
/// `|G|`, as the set of its `p`-power-order elements.
pub fn sylow_decomposition(g: &Group) -> Result<Vec<(u64, Subgroup)>> {
    if !is_nilpotent(g) {
        return Err(Error::NotNilpotent);
    }
    let orders: Vec<u64> = g.elements().map(|x| g.element_order(x) as u64).collect();
    let mut out = Vec::new();
    for (p, _) in arith::factorize(g.order() as u64) {
        let set = ElementSet::from_indices(g.order(), g.elements().filter(|&x| arith::is_power_of(orders[x], p)));
        let gens: Vec<usize> = set.iter().collect();
        let sub = generated(g, &gens);
        assert_eq!(sub.size(), set.len(), "p-elements of a nilpotent group form a subgroup");
        out.push((p, sub));
    }
    Ok(out)
}
