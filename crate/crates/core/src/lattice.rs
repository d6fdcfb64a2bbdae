//! Finite inclusion posets of subgroups.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::group::{DirectProduct, Group, Limits};
use crate::subgroup::{all_subgroups, sort_subgroups, Subgroup};

/// Square table indexed by node positions.
pub type Table = Vec<Vec<usize>>;

#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    group: Group,
    nodes: Vec<Subgroup>,
    /// `up[a]` holds every `b` with `nodes[a] ≤ nodes[b]`.
    up: Vec<ElementSet>,
    down: Vec<ElementSet>,
    hasse: Vec<(usize, usize)>,
    bottom: Option<usize>,
    top: Option<usize>,
    measures: Option<Vec<u64>>,
}

impl SubgroupLattice {
    /// Deduplicates and orders the nodes (by size, then member list), then
    /// computes inclusion and covering pairs.
    pub fn build(group: &Group, mut nodes: Vec<Subgroup>) -> Result<SubgroupLattice> {
        if nodes.iter().any(|h| !h.parent().same(group)) {
            return Err(Error::ParentMismatch);
        }
        sort_subgroups(&mut nodes);
        nodes.dedup();
        let k = nodes.len();
        let mut up = vec![ElementSet::new(k); k];
        let mut down = vec![ElementSet::new(k); k];
        for a in 0..k {
            for b in a..k {
                if nodes[a].is_subgroup_of(&nodes[b]) {
                    up[a].insert(b);
                    down[b].insert(a);
                }
            }
        }
        let mut hasse = Vec::new();
        for (a, above) in up.iter().enumerate() {
            for b in above.iter() {
                if b != a && above.intersection(&down[b]).len() == 2 {
                    hasse.push((a, b));
                }
            }
        }
        let bottom = (0..k).find(|&a| up[a].len() == k);
        let top = (0..k).find(|&b| down[b].len() == k);
        Ok(SubgroupLattice {
            group: group.clone(),
            nodes,
            up,
            down,
            hasse,
            bottom,
            top,
            measures: None,
        })
    }

    pub fn full(group: &Group, limits: &Limits) -> Result<SubgroupLattice> {
        Self::build(group, all_subgroups(group, limits)?)
    }

    /// `{H ∈ L(G) : bottom ≤ H ≤ top}`.
    pub fn interval(group: &Group, bottom: &Subgroup, top: &Subgroup, limits: &Limits) -> Result<SubgroupLattice> {
        if !bottom.parent().same(group) || !top.parent().same(group) {
            return Err(Error::ParentMismatch);
        }
        if !bottom.is_subgroup_of(top) {
            return Err(Error::NotNested);
        }
        Self::interval_of(group, &all_subgroups(group, limits)?, bottom, top)
    }

    /// Same as [`interval`](Self::interval) over an already enumerated L(G).
    pub fn interval_of(
        group: &Group,
        subgroups: &[Subgroup],
        bottom: &Subgroup,
        top: &Subgroup,
    ) -> Result<SubgroupLattice> {
        if !bottom.is_subgroup_of(top) {
            return Err(Error::NotNested);
        }
        let nodes = subgroups
            .iter()
            .filter(|h| bottom.is_subgroup_of(h) && h.is_subgroup_of(top))
            .cloned()
            .collect();
        Self::build(group, nodes)
    }

    /// Node set `{H₁ × H₂}` inside a direct product.
    pub fn product(dp: &DirectProduct, left: &SubgroupLattice, right: &SubgroupLattice) -> Result<SubgroupLattice> {
        let mut nodes = Vec::with_capacity(left.len() * right.len());
        for a in &left.nodes {
            for b in &right.nodes {
                nodes.push(dp.embed(a, b)?);
            }
        }
        Self::build(&dp.group, nodes)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn nodes(&self) -> &[Subgroup] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn hasse(&self) -> &[(usize, usize)] {
        &self.hasse
    }

    pub fn bottom(&self) -> Option<usize> {
        self.bottom
    }

    pub fn top(&self) -> Option<usize> {
        self.top
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn index_of(&self, h: &Subgroup) -> Option<usize> {
        self.nodes.iter().position(|n| n == h)
    }

    pub fn measures(&self) -> Option<&[u64]> {
        self.measures.as_deref()
    }

    pub fn attach_measures(&mut self, measures: Vec<u64>) {
        assert_eq!(measures.len(), self.nodes.len());
        self.measures = Some(measures);
    }

    /// Same node sets (parents must agree).
    pub fn same_nodes(&self, other: &SubgroupLattice) -> bool {
        self.group.same(&other.group) && self.nodes == other.nodes
    }

    fn lookup(&self) -> HashMap<&ElementSet, usize> {
        self.nodes.iter().enumerate().map(|(i, h)| (h.bits(), i)).collect()
    }

    /// Join and meet tables using subgroup join and meet. Fails with
    /// `NotClosed` when some join or meet leaves the node set.
    pub fn operation_tables(&self) -> Result<(Table, Table)> {
        let k = self.len();
        let lookup = self.lookup();
        let mut join = vec![vec![0; k]; k];
        let mut meet = vec![vec![0; k]; k];
        for a in 0..k {
            for b in a..k {
                let j = self.nodes[a].join(&self.nodes[b])?;
                let m = self.nodes[a].meet(&self.nodes[b])?;
                let (Some(&ji), Some(&mi)) = (lookup.get(j.bits()), lookup.get(m.bits())) else {
                    return Err(Error::NotClosed);
                };
                join[a][b] = ji;
                join[b][a] = ji;
                meet[a][b] = mi;
                meet[b][a] = mi;
            }
        }
        Ok((join, meet))
    }

    /// Closed under subgroup join and meet, i.e. a sublattice of L(G).
    pub fn is_sublattice(&self) -> bool {
        self.operation_tables().is_ok()
    }

    /// Least upper bound inside the poset itself, if it exists.
    pub fn poset_join(&self, a: usize, b: usize) -> Option<usize> {
        let common = self.up[a].intersection(&self.up[b]);
        let least = common.first()?;
        let ok = common.iter().all(|c| self.leq(least, c));
        ok.then_some(least)
    }

    pub fn poset_meet(&self, a: usize, b: usize) -> Option<usize> {
        let common = self.down[a].intersection(&self.down[b]);
        let greatest = common.iter().last()?;
        let ok = common.iter().all(|c| self.leq(c, greatest));
        ok.then_some(greatest)
    }

    /// `a ≤ c ⟹ a ∨ (b ∧ c) = (a ∨ b) ∧ c` for all nodes.
    pub fn is_modular(&self) -> Result<bool> {
        let (join, meet) = self.operation_tables()?;
        let k = self.len();
        for a in 0..k {
            for c in self.up[a].iter() {
                for b in 0..k {
                    if join[a][meet[b][c]] != meet[join[a][b]][c] {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Edges in a longest chain.
    pub fn length(&self) -> usize {
        // nodes are sorted by size, so index order is a topological order
        let mut depth = vec![0usize; self.len()];
        let mut edges = self.hasse.clone();
        edges.sort_unstable();
        for &(a, b) in &edges {
            depth[b] = depth[b].max(depth[a] + 1);
        }
        depth.into_iter().max().unwrap_or(0)
    }

    /// `H ↦ C_G(H)` as a node map, or `None` if some centralizer is missing.
    pub fn centralizer_map(&self) -> Option<Vec<usize>> {
        let lookup = self.lookup();
        self.nodes
            .iter()
            .map(|h| lookup.get(self.group.centralizer_of(h).bits()).copied())
            .collect()
    }

    /// `dual` is an order-reversing involutive bijection of the nodes.
    pub fn is_self_dual_via(&self, dual: &[usize]) -> bool {
        let k = self.len();
        if dual.len() != k || dual.iter().any(|&d| d >= k) {
            return false;
        }
        if (0..k).any(|a| dual[dual[a]] != a) {
            return false;
        }
        (0..k).all(|a| (0..k).all(|b| self.leq(a, b) == self.leq(dual[b], dual[a])))
    }

    pub fn node_label(&self, i: usize) -> String {
        let h = &self.nodes[i];
        format!("|H|={}: {{{}}}", h.size(), h.generator_labels().join(", "))
    }

    /// Hasse diagram as a DOT digraph, edges pointing from the smaller to the
    /// larger subgroup.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{}\" {{", escape(self.group.source()));
        out.push_str("  rankdir=BT;\n  node [shape=box];\n");
        for i in 0..self.len() {
            let mut label = self.node_label(i);
            if let Some(m) = &self.measures {
                let _ = write!(label, " m={}", m[i]);
            }
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", escape(&label));
        }
        for &(a, b) in &self.hasse {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }

    pub fn export(&self) -> LatticeExport {
        LatticeExport {
            group: self.group.source().to_string(),
            group_order: self.group.order(),
            length: self.length(),
            nodes: self
                .nodes
                .iter()
                .enumerate()
                .map(|(i, h)| NodeExport {
                    id: i,
                    order: h.size(),
                    elements: h.members().collect(),
                    generators: h.generator_labels().into_iter().map(String::from).collect(),
                    measure: self.measures.as_ref().map(|m| m[i]),
                })
                .collect(),
            edges: self.hasse.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.export()).expect("plain data serializes")
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// JSON form of a lattice. Keys are emitted in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeExport {
    pub group: String,
    pub group_order: usize,
    pub length: usize,
    pub nodes: Vec<NodeExport>,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeExport {
    pub id: usize,
    pub order: usize,
    pub elements: Vec<usize>,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measure: Option<u64>,
}
