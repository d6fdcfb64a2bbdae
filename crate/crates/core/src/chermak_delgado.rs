//! Chermak–Delgado measure `m_G(H) = |H|·|C_G(H)|`, the lattice of
//! subgroups attaining the maximum, and the centralizer lattice.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::group::{Group, Limits};
use crate::lattice::SubgroupLattice;
use crate::subgroup::{all_subgroups, Subgroup};

pub fn measure(g: &Group, h: &Subgroup) -> u64 {
    (h.size() * g.centralizer_of(h).size()) as u64
}

/// L(G) with every subgroup's centralizer and measure, computed once and
/// shared by all lattice queries and checks on the group.
#[derive(Debug, Clone)]
pub struct GroupAnalysis {
    group: Group,
    subgroups: Vec<Subgroup>,
    /// `centralizer[i]` indexes `C_G(subgroups[i])`.
    centralizer: Vec<usize>,
    measures: Vec<u64>,
    center: usize,
    max_measure: u64,
    cd: Vec<usize>,
    interval: Vec<usize>,
}

impl GroupAnalysis {
    pub fn new(group: &Group, limits: &Limits) -> Result<GroupAnalysis> {
        let subgroups = all_subgroups(group, limits)?;
        let index: HashMap<&ElementSet, usize> = subgroups.iter().enumerate().map(|(i, h)| (h.bits(), i)).collect();
        let centralizer: Vec<usize> = subgroups
            .iter()
            .map(|h| index[group.centralizer_of(h).bits()])
            .collect();
        let measures: Vec<u64> = subgroups
            .iter()
            .zip(&centralizer)
            .map(|(h, &c)| (h.size() * subgroups[c].size()) as u64)
            .collect();
        let center = index[group.center().bits()];
        let max_measure = measures.iter().copied().max().expect("L(G) is never empty");
        let cd = (0..subgroups.len()).filter(|&i| measures[i] == max_measure).collect();
        let z = &subgroups[center];
        let interval = (0..subgroups.len())
            .filter(|&i| z.is_subgroup_of(&subgroups[i]))
            .collect();
        Ok(GroupAnalysis {
            group: group.clone(),
            subgroups,
            centralizer,
            measures,
            center,
            max_measure,
            cd,
            interval,
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn measures(&self) -> &[u64] {
        &self.measures
    }

    pub fn centralizer_index(&self, i: usize) -> usize {
        self.centralizer[i]
    }

    pub fn center(&self) -> &Subgroup {
        &self.subgroups[self.center]
    }

    pub fn max_measure(&self) -> u64 {
        self.max_measure
    }

    /// Indices into [`subgroups`](Self::subgroups) of the CD(G) members.
    pub fn cd_indices(&self) -> &[usize] {
        &self.cd
    }

    /// Indices of the subgroups containing Z(G).
    pub fn interval_indices(&self) -> &[usize] {
        &self.interval
    }

    /// Indices of the distinct centralizers.
    pub fn centralizer_indices(&self) -> Vec<usize> {
        let mut c = self.centralizer.clone();
        c.sort_unstable();
        c.dedup();
        c
    }

    pub fn cd_equals_interval(&self) -> bool {
        self.cd == self.interval
    }

    pub fn cd_equals_full_lattice(&self) -> bool {
        self.cd.len() == self.subgroups.len()
    }

    fn lattice_of(&self, indices: &[usize]) -> SubgroupLattice {
        let nodes = indices.iter().map(|&i| self.subgroups[i].clone()).collect();
        let mut lat = SubgroupLattice::build(&self.group, nodes).expect("nodes share the parent");
        let measures = lat
            .nodes()
            .iter()
            .map(|h| {
                let i = indices
                    .iter()
                    .copied()
                    .find(|&i| &self.subgroups[i] == h)
                    .expect("node came from the index list");
                self.measures[i]
            })
            .collect();
        lat.attach_measures(measures);
        lat
    }

    pub fn cd_lattice(&self) -> SubgroupLattice {
        self.lattice_of(&self.cd)
    }

    pub fn interval_lattice(&self) -> SubgroupLattice {
        self.lattice_of(&self.interval)
    }

    pub fn centralizer_lattice(&self) -> SubgroupLattice {
        self.lattice_of(&self.centralizer_indices())
    }

    pub fn full_lattice(&self) -> SubgroupLattice {
        let all: Vec<usize> = (0..self.subgroups.len()).collect();
        self.lattice_of(&all)
    }

    /// For every `H ∈ CD(G)`: `C_G(H) ∈ CD(G)` and `C_G(C_G(H)) = H`.
    pub fn cd_centralizer_closed(&self) -> bool {
        self.cd.iter().all(|&h| {
            let c = self.centralizer[h];
            self.cd.binary_search(&c).is_ok() && self.centralizer[c] == h
        })
    }

    pub fn report(&self) -> CdReport {
        let cd = self.cd_lattice();
        let flags = compute_flags(
            &self.subgroups,
            &cd,
            &self.interval_lattice(),
            &self.centralizer_lattice(),
        );
        let nodes = |idx: &[usize]| idx.iter().map(|&i| self.subgroups[i].members().collect()).collect();
        CdReport {
            group: self.group.source().to_string(),
            order: self.group.order(),
            center_order: self.center().size(),
            subgroup_count: self.subgroups.len(),
            measures: self
                .subgroups
                .iter()
                .enumerate()
                .map(|(i, h)| MeasureEntry {
                    elements: h.members().collect(),
                    order: h.size(),
                    centralizer_order: self.subgroups[self.centralizer[i]].size(),
                    measure: self.measures[i],
                })
                .collect(),
            max_measure: self.max_measure,
            cd_nodes: nodes(&self.cd),
            centralizer_nodes: nodes(&self.centralizer_indices()),
            interval_nodes: nodes(&self.interval),
            flags,
        }
    }
}

fn compute_flags(
    subgroups: &[Subgroup],
    cd: &SubgroupLattice,
    interval: &SubgroupLattice,
    centralizers: &SubgroupLattice,
) -> CdFlags {
    let g = cd.group();
    let cd_is_sublattice = cd.is_sublattice();
    let cd_is_modular = cd.is_modular().unwrap_or(false);
    let dual = cd.centralizer_map();
    let cd_self_dual_via_centralizer = dual.as_ref().is_some_and(|d| cd.is_self_dual_via(d));
    let cd_centralizer_closed = cd.nodes().iter().all(|h| {
        let c = g.centralizer_of(h);
        cd.index_of(&c).is_some() && &g.centralizer_of(&c) == h
    });
    let cd_subset_of_centralizer_lattice = cd.nodes().iter().all(|h| centralizers.index_of(h).is_some());
    let cd_equals_interval = cd.nodes() == interval.nodes();
    let cd_length = cd.length();
    let cd_is_interval = match (cd.bottom(), cd.top()) {
        (Some(b), Some(t)) => {
            let (b, t) = (&cd.nodes()[b], &cd.nodes()[t]);
            subgroups
                .iter()
                .filter(|h| b.is_subgroup_of(h) && h.is_subgroup_of(t))
                .count()
                == cd.len()
        }
        _ => false,
    };
    CdFlags {
        cd_is_sublattice,
        cd_is_modular,
        cd_self_dual_via_centralizer,
        cd_centralizer_closed,
        cd_subset_of_centralizer_lattice,
        cd_equals_interval,
        cd_length,
        cd_length_even: cd_length.is_multiple_of(2),
        cd_is_interval,
    }
}

/// `(m(G), CD(G))`.
pub fn cd_lattice(g: &Group, limits: &Limits) -> Result<(u64, SubgroupLattice)> {
    let a = GroupAnalysis::new(g, limits)?;
    Ok((a.max_measure(), a.cd_lattice()))
}

/// `{C_G(H) : H ≤ G}`, which equals `{C_G(S) : S ⊆ G}`.
pub fn centralizer_lattice(g: &Group, limits: &Limits) -> Result<SubgroupLattice> {
    Ok(GroupAnalysis::new(g, limits)?.centralizer_lattice())
}

pub fn cd_report(g: &Group, limits: &Limits) -> Result<CdReport> {
    Ok(GroupAnalysis::new(g, limits)?.report())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasureEntry {
    pub elements: Vec<usize>,
    pub order: usize,
    pub centralizer_order: usize,
    pub measure: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CdFlags {
    pub cd_is_sublattice: bool,
    pub cd_is_modular: bool,
    pub cd_self_dual_via_centralizer: bool,
    pub cd_centralizer_closed: bool,
    pub cd_subset_of_centralizer_lattice: bool,
    pub cd_equals_interval: bool,
    pub cd_length: usize,
    pub cd_length_even: bool,
    /// Informational: CD(G) is some interval of L(G).
    pub cd_is_interval: bool,
}

/// Per-group record of measures, node sets and derived flags. Node sets are
/// sorted element-index lists, in lattice export order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CdReport {
    pub group: String,
    pub order: usize,
    pub center_order: usize,
    pub subgroup_count: usize,
    pub measures: Vec<MeasureEntry>,
    pub max_measure: u64,
    pub cd_nodes: Vec<Vec<usize>>,
    pub centralizer_nodes: Vec<Vec<usize>>,
    pub interval_nodes: Vec<Vec<usize>>,
    pub flags: CdFlags,
}

impl CdReport {
    /// Recomputes the flags from the stored node sets alone.
    pub fn recompute_flags(&self, g: &Group, limits: &Limits) -> Result<CdFlags> {
        let to_nodes = |sets: &[Vec<usize>]| -> Result<Vec<Subgroup>> {
            sets.iter()
                .map(|s| {
                    Subgroup::from_members(g, s.iter().copied())
                        .ok_or_else(|| Error::PreconditionFailed("stored node is not a subgroup".into()))
                })
                .collect()
        };
        let cd = SubgroupLattice::build(g, to_nodes(&self.cd_nodes)?)?;
        let interval = SubgroupLattice::build(g, to_nodes(&self.interval_nodes)?)?;
        let centralizers = SubgroupLattice::build(g, to_nodes(&self.centralizer_nodes)?)?;
        let subgroups = all_subgroups(g, limits)?;
        Ok(compute_flags(&subgroups, &cd, &interval, &centralizers))
    }

    pub fn to_text(&self, g: &Group) -> String {
        let mut out = String::new();
        let names = |set: &[usize]| set.iter().map(|&x| g.label(x)).collect::<Vec<_>>().join(", ");
        let _ = writeln!(out, "group: {}", self.group);
        let _ = writeln!(out, "order: {}", self.order);
        let _ = writeln!(out, "center order: {}", self.center_order);
        let _ = writeln!(out, "subgroups: {}", self.subgroup_count);
        let _ = writeln!(out, "m(G): {}", self.max_measure);
        let _ = writeln!(out, "CD(G): {} nodes", self.cd_nodes.len());
        for n in &self.cd_nodes {
            let _ = writeln!(out, "  |H|={}: {{{}}}", n.len(), names(n));
        }
        let _ = writeln!(out, "centralizer lattice: {} nodes", self.centralizer_nodes.len());
        let _ = writeln!(out, "[G/Z(G)]: {} nodes", self.interval_nodes.len());
        let f = &self.flags;
        for (name, value) in [
            ("cd_is_sublattice", f.cd_is_sublattice.to_string()),
            ("cd_is_modular", f.cd_is_modular.to_string()),
            (
                "cd_self_dual_via_centralizer",
                f.cd_self_dual_via_centralizer.to_string(),
            ),
            ("cd_centralizer_closed", f.cd_centralizer_closed.to_string()),
            (
                "cd_subset_of_centralizer_lattice",
                f.cd_subset_of_centralizer_lattice.to_string(),
            ),
            ("cd_equals_interval", f.cd_equals_interval.to_string()),
            ("cd_length", f.cd_length.to_string()),
            ("cd_length_even", f.cd_length_even.to_string()),
            ("cd_is_interval", f.cd_is_interval.to_string()),
        ] {
            let _ = writeln!(out, "{name}: {value}");
        }
        out
    }
}
