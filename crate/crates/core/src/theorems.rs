//! Executable checks of the structure results for groups `G` with
//! `CD(G) = [G/Z(G)]`.
//!
//! Every check returns a [`ClaimResult`]. A failing result always carries a
//! witness describing the counterexample. A check whose hypothesis does not
//! hold for the group passes *vacuously*, and is reported as such.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{gcd, prime_power};
use crate::chermak_delgado::GroupAnalysis;
use crate::constructors::construct;
use crate::error::{Error, Result};
use crate::group::{Group, Limits};
use crate::lattice::SubgroupLattice;
use crate::spec::{ExtraspecialType, GroupSpec};
use crate::subgroup::{commutator_subgroup, derived_subgroup, generated, is_nilpotent, quotient, sylow_decomposition};

/// Claim identifiers used in reports.
pub mod claims {
    /// CD(G) is a sublattice, modular, self-dual via `H ↦ C_G(H)`, inside the
    /// centralizer lattice, and `C_G(C_G(H)) = H` on it.
    pub const CD_PROPERTIES: &str = "cd-lattice-properties";
    /// p-groups: `CD(G) = [G/Z(G)]` iff `[G/Z(G)]` is modular and `G'` cyclic.
    pub const PGROUP_CRITERION: &str = "pgroup-criterion";
    /// The modular/cyclic condition agrees with `G' = ⟨a⟩`, `[⟨a⟩,G] ≤ ⟨a⁴⟩`.
    pub const CONDITION_EQUIVALENCE: &str = "condition-equivalence";
    /// Under the modular/cyclic condition every `H ∈ [G/Z(G)]` has measure `|G||Z(G)|`.
    pub const INTERVAL_MEASURE: &str = "interval-measure-constancy";
    /// Coprime products of qualifying p-groups and an abelian group satisfy `CD(G) = [G/Z(G)]`.
    pub const STRUCTURE_FORWARD: &str = "structure-forward";
    /// `CD(G) = [G/Z(G)]` forces the coprime decomposition.
    pub const STRUCTURE_CONVERSE: &str = "structure-converse";
    pub const NILPOTENT: &str = "interval-implies-nilpotent";
    pub const NOT_FULL_LATTICE: &str = "cd-not-full-lattice";
    pub const SUBGROUP_INHERITANCE: &str = "subgroup-inheritance";
    /// Non-abelian p-groups with an abelian maximal subgroup have `(G:Z(G)) = p²`.
    pub const CENTER_INDEX: &str = "center-index";
    pub const EXTRASPECIAL: &str = "extraspecial-interval";
    pub const EVEN_LENGTH: &str = "even-length";
    pub const DIRECT_PRODUCT: &str = "direct-product-decomposition";
    /// Group construction or enumeration itself failed.
    pub const SETUP: &str = "setup";
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Vacuous,
    Skipped,
    Fail,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "PASS",
            Outcome::Vacuous => "VACUOUS",
            Outcome::Skipped => "SKIP",
            Outcome::Fail => "FAIL",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub claim: String,
    pub group: String,
    pub outcome: Outcome,
    pub passed: bool,
    pub witness: Option<String>,
    pub note: Option<String>,
}

impl ClaimResult {
    fn new(claim: &str, group: &str, outcome: Outcome) -> Self {
        ClaimResult {
            claim: claim.to_string(),
            group: group.to_string(),
            outcome,
            passed: outcome != Outcome::Fail,
            witness: None,
            note: None,
        }
    }

    pub fn pass(claim: &str, group: &str) -> Self {
        Self::new(claim, group, Outcome::Pass)
    }

    pub fn fail(claim: &str, group: &str, witness: impl Into<String>) -> Self {
        let mut r = Self::new(claim, group, Outcome::Fail);
        r.witness = Some(witness.into());
        r
    }

    pub fn vacuous(claim: &str, group: &str, why: impl Into<String>) -> Self {
        Self::new(claim, group, Outcome::Vacuous).with_note(why)
    }

    pub fn skipped(claim: &str, group: &str, why: impl Into<String>) -> Self {
        Self::new(claim, group, Outcome::Skipped).with_note(why)
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    fn from_bool(claim: &str, group: &str, ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Self::pass(claim, group)
        } else {
            Self::fail(claim, group, witness())
        }
    }

    pub fn is_failure(&self) -> bool {
        self.outcome == Outcome::Fail
    }

    pub fn to_line(&self) -> String {
        let mut line = format!("{:<8} {:<30} {}", self.outcome.to_string(), self.claim, self.group);
        if let Some(w) = &self.witness {
            line.push_str(&format!("  witness: {w}"));
        }
        if let Some(n) = &self.note {
            line.push_str(&format!("  ({n})"));
        }
        line
    }
}

fn require_prime_power(g: &Group) -> Result<(u64, u32)> {
    prime_power(g.order() as u64).ok_or(Error::NotPrimePower(g.order()))
}

fn set_labels(g: &Group, members: impl Iterator<Item = usize>) -> String {
    format!("{{{}}}", members.map(|x| g.label(x)).collect::<Vec<_>>().join(", "))
}

/// `[G/Z(G)]` is modular and `G'` is cyclic.
pub fn modular_cyclic_condition(a: &GroupAnalysis) -> Result<bool> {
    let g = a.group();
    require_prime_power(g)?;
    Ok(derived_subgroup(g).is_cyclic() && a.interval_lattice().is_modular()?)
}

/// `G' = ⟨a⟩` is cyclic and `[⟨a⟩, G] ≤ ⟨a⁴⟩`.
pub fn commutator_power_condition(g: &Group) -> Result<bool> {
    require_prime_power(g)?;
    let derived = derived_subgroup(g);
    if !derived.is_cyclic() {
        return Ok(false);
    }
    let holds_for = |a: usize| {
        let cyclic = generated(g, &[a]);
        let comm = commutator_subgroup(&cyclic, &g.whole()).expect("same parent");
        comm.is_subgroup_of(&generated(g, &[g.power(a, 4)]))
    };
    let mut gens = derived.members().filter(|&x| g.element_order(x) == derived.size());
    let first = gens.next().expect("a cyclic group has a generator");
    let result = holds_for(first);
    debug_assert!(
        gens.all(|a| holds_for(a) == result),
        "the condition must not depend on the chosen generator of G'"
    );
    Ok(result)
}

pub fn check_condition_equivalence(a: &GroupAnalysis) -> Result<ClaimResult> {
    let g = a.group();
    let c1 = modular_cyclic_condition(a)?;
    let c2 = commutator_power_condition(g)?;
    Ok(
        ClaimResult::from_bool(claims::CONDITION_EQUIVALENCE, g.source(), c1 == c2, || {
            format!("modular/cyclic = {c1}, commutator-power = {c2}")
        })
        .with_note(format!("both conditions {c1}")),
    )
}

/// p-groups: `CD(G) = [G/Z(G)]` ⟺ `[G/Z(G)]` modular and `G'` cyclic.
pub fn check_pgroup_criterion(a: &GroupAnalysis) -> Result<ClaimResult> {
    let g = a.group();
    let lhs = a.cd_equals_interval();
    let rhs = modular_cyclic_condition(a)?;
    Ok(
        ClaimResult::from_bool(claims::PGROUP_CRITERION, g.source(), lhs == rhs, || {
            format!(
                "CD = [G/Z] is {lhs} ({} CD nodes, {} interval nodes) but modular/cyclic is {rhs}",
                a.cd_indices().len(),
                a.interval_indices().len()
            )
        })
        .with_note(format!("both sides {lhs}")),
    )
}

pub fn check_interval_measure(a: &GroupAnalysis) -> Result<ClaimResult> {
    let g = a.group();
    if !modular_cyclic_condition(a)? {
        return Ok(ClaimResult::vacuous(
            claims::INTERVAL_MEASURE,
            g.source(),
            "modular/cyclic condition does not hold",
        ));
    }
    let target = (g.order() * a.center().size()) as u64;
    let bad = a
        .interval_indices()
        .iter()
        .copied()
        .find(|&i| a.measures()[i] != target);
    Ok(ClaimResult::from_bool(
        claims::INTERVAL_MEASURE,
        g.source(),
        bad.is_none(),
        || {
            let i = bad.expect("failure has a witness");
            let h = &a.subgroups()[i];
            format!(
                "H = {} has measure {} != |G||Z(G)| = {target}",
                set_labels(g, h.members()),
                a.measures()[i]
            )
        },
    ))
}

/// Builds `G₁ × … × G_r × A` and checks `CD(G) = [G/Z(G)]` on it.
///
/// Every `Gᵢ` must be a p-group satisfying the modular/cyclic condition, `A`
/// must be abelian, and all orders must be pairwise coprime; otherwise the
/// corresponding error is returned.
pub fn check_structure_forward(factors: &[GroupSpec], abelian: &GroupSpec, limits: &Limits) -> Result<ClaimResult> {
    let mut orders = Vec::new();
    let mut product: Option<GroupSpec> = None;
    for spec in factors {
        let g = construct(spec, limits)?;
        let a = GroupAnalysis::new(&g, limits)?;
        let ok = match modular_cyclic_condition(&a) {
            Ok(ok) => ok,
            Err(Error::NotPrimePower(n)) => {
                return Err(Error::ConditionViolated(format!(
                    "{spec} has order {n}, not a prime power"
                )))
            }
            Err(e) => return Err(e),
        };
        if !ok {
            return Err(Error::ConditionViolated(format!(
                "{spec} fails the modular/cyclic condition"
            )));
        }
        orders.push((spec.to_string(), g.order() as u64));
        product = Some(match product {
            None => spec.clone(),
            Some(p) => GroupSpec::product(p, spec.clone()),
        });
    }
    let a = construct(abelian, limits)?;
    if !a.is_abelian() {
        return Err(Error::ConditionViolated(format!("{abelian} is not abelian")));
    }
    orders.push((abelian.to_string(), a.order() as u64));
    for i in 0..orders.len() {
        for j in i + 1..orders.len() {
            if gcd(orders[i].1, orders[j].1) != 1 {
                return Err(Error::CoprimalityViolated(format!(
                    "gcd(|{}|, |{}|) = {}",
                    orders[i].0,
                    orders[j].0,
                    gcd(orders[i].1, orders[j].1)
                )));
            }
        }
    }
    let full = match product {
        None => abelian.clone(),
        Some(p) => GroupSpec::product(p, abelian.clone()),
    };
    let g = construct(&full, limits)?;
    let an = GroupAnalysis::new(&g, limits)?;
    Ok(ClaimResult::from_bool(
        claims::STRUCTURE_FORWARD,
        g.source(),
        an.cd_equals_interval(),
        || {
            format!(
                "CD has {} nodes, [G/Z] has {} nodes",
                an.cd_indices().len(),
                an.interval_indices().len()
            )
        },
    ))
}

/// `CD(G) = [G/Z(G)]` implies `G` is the direct product of its Sylow
/// subgroups, each non-abelian one satisfying the modular/cyclic condition.
pub fn check_structure_converse(a: &GroupAnalysis, limits: &Limits) -> Result<ClaimResult> {
    let g = a.group();
    let claim = claims::STRUCTURE_CONVERSE;
    if !a.cd_equals_interval() {
        return Err(Error::PreconditionFailed("CD(G) differs from [G/Z(G)]".into()));
    }
    let sylows = match sylow_decomposition(g) {
        Ok(s) => s,
        Err(Error::NotNilpotent) => return Ok(ClaimResult::fail(claim, g.source(), "G is not nilpotent")),
        Err(e) => return Err(e),
    };
    let total: usize = sylows.iter().map(|(_, h)| h.size()).product();
    if total != g.order() {
        return Ok(ClaimResult::fail(
            claim,
            g.source(),
            format!("Sylow orders multiply to {total}, not {}", g.order()),
        ));
    }
    for (i, (p, h)) in sylows.iter().enumerate() {
        for (q, k) in &sylows[i + 1..] {
            if !h.meet(k)?.is_trivial() {
                return Ok(ClaimResult::fail(
                    claim,
                    g.source(),
                    format!("Sylow {p} and {q} intersect"),
                ));
            }
            let commute = h
                .generators()
                .iter()
                .all(|&x| k.generators().iter().all(|&y| g.commute(x, y)));
            if !commute {
                return Ok(ClaimResult::fail(
                    claim,
                    g.source(),
                    format!("Sylow {p} and {q} do not commute elementwise"),
                ));
            }
        }
    }
    let mut non_abelian = Vec::new();
    let mut abelian_order = 1;
    for (p, h) in &sylows {
        if h.is_abelian() {
            abelian_order *= h.size();
            continue;
        }
        let sub = GroupAnalysis::new(&h.to_group(), limits)?;
        if !modular_cyclic_condition(&sub)? {
            return Ok(ClaimResult::fail(
                claim,
                g.source(),
                format!(
                    "Sylow {p}-subgroup of order {} fails the modular/cyclic condition",
                    h.size()
                ),
            ));
        }
        non_abelian.push(format!("p = {p}, order {}", h.size()));
    }
    Ok(ClaimResult::pass(claim, g.source()).with_note(format!(
        "r = {} non-abelian Sylow factor(s) [{}], |A| = {abelian_order}",
        non_abelian.len(),
        non_abelian.join(", ")
    )))
}

/// `CD(G) = [G/Z(G)]` implies nilpotent.
pub fn check_nilpotency(a: &GroupAnalysis) -> ClaimResult {
    let g = a.group();
    if !a.cd_equals_interval() {
        return ClaimResult::vacuous(claims::NILPOTENT, g.source(), "CD(G) differs from [G/Z(G)]");
    }
    ClaimResult::from_bool(claims::NILPOTENT, g.source(), is_nilpotent(g), || {
        "CD(G) = [G/Z(G)] but G is not nilpotent".into()
    })
}

/// No non-trivial group has `CD(G) = L(G)`.
pub fn check_not_full_lattice(a: &GroupAnalysis) -> Result<ClaimResult> {
    let g = a.group();
    if g.order() == 1 {
        return Err(Error::TrivialGroup);
    }
    Ok(ClaimResult::from_bool(
        claims::NOT_FULL_LATTICE,
        g.source(),
        !a.cd_equals_full_lattice(),
        || format!("CD(G) contains all {} subgroups", a.subgroups().len()),
    )
    .with_note(format!(
        "|CD| = {}, |L| = {}",
        a.cd_indices().len(),
        a.subgroups().len()
    )))
}

/// `CD(G) = [G/Z(G)]` passes to every subgroup.
pub fn check_subgroup_inheritance(a: &GroupAnalysis, limits: &Limits) -> Result<ClaimResult> {
    let g = a.group();
    if !a.cd_equals_interval() {
        return Err(Error::PreconditionFailed("CD(G) differs from [G/Z(G)]".into()));
    }
    let failures: Vec<Result<Option<String>>> = a
        .subgroups()
        .par_iter()
        .map(|h| {
            let sub = GroupAnalysis::new(&h.to_group(), limits)?;
            Ok((!sub.cd_equals_interval()).then(|| set_labels(g, h.members())))
        })
        .collect();
    for f in failures {
        if let Some(w) = f? {
            return Ok(ClaimResult::fail(
                claims::SUBGROUP_INHERITANCE,
                g.source(),
                format!("H = {w} has CD(H) != [H/Z(H)]"),
            ));
        }
    }
    Ok(ClaimResult::pass(claims::SUBGROUP_INHERITANCE, g.source())
        .with_note(format!("{} subgroups checked", a.subgroups().len())))
}

/// Non-abelian p-group with `CD(G) = [G/Z(G)]` and an abelian subgroup of
/// index `p` has `(G:Z(G)) = p²`.
pub fn check_center_index(a: &GroupAnalysis) -> Result<ClaimResult> {
    let g = a.group();
    let claim = claims::CENTER_INDEX;
    let (p, _) = require_prime_power(g)?;
    if g.is_abelian() {
        return Err(Error::PreconditionFailed("G is abelian".into()));
    }
    if !a.cd_equals_interval() {
        return Err(Error::PreconditionFailed("CD(G) differs from [G/Z(G)]".into()));
    }
    let index_p = g.order() / p as usize;
    if !a.subgroups().iter().any(|h| h.size() == index_p && h.is_abelian()) {
        return Err(Error::PreconditionFailed("no abelian subgroup of index p".into()));
    }
    let index = g.order() / a.center().size();
    Ok(ClaimResult::from_bool(claim, g.source(), index as u64 == p * p, || {
        format!("(G:Z(G)) = {index}, expected {}", p * p)
    })
    .with_note(format!("(G:Z(G)) = {index}")))
}

/// Extraspecial group of order `p^(2n+1)`: `G/Z(G)` elementary abelian of
/// order `p^(2n)`, `G' = Z(G)` of order `p`, and `CD(G) = [G/Z(G)]` a modular
/// lattice of length `2n`.
pub fn check_extraspecial_group(a: &GroupAnalysis, p: u32, n: u32) -> Result<ClaimResult> {
    let g = a.group();
    let claim = claims::EXTRASPECIAL;
    let p = p as usize;
    let z = a.center();
    if z.size() != p {
        return Ok(ClaimResult::fail(claim, g.source(), format!("|Z(G)| = {}", z.size())));
    }
    let q = quotient(g, z)?.group;
    let expected = p.pow(2 * n);
    let elementary = q.is_abelian() && q.order() == expected && q.elements().skip(1).all(|x| q.element_order(x) == p);
    if !elementary {
        return Ok(ClaimResult::fail(
            claim,
            g.source(),
            format!(
                "G/Z(G) of order {} is not elementary abelian of order {expected}",
                q.order()
            ),
        ));
    }
    if &derived_subgroup(g) != z {
        return Ok(ClaimResult::fail(claim, g.source(), "G' differs from Z(G)"));
    }
    if !a.cd_equals_interval() {
        return Ok(ClaimResult::fail(claim, g.source(), "CD(G) differs from [G/Z(G)]"));
    }
    let cd = a.cd_lattice();
    if !cd.is_modular()? {
        return Ok(ClaimResult::fail(claim, g.source(), "CD(G) is not modular"));
    }
    let length = cd.length();
    Ok(ClaimResult::from_bool(claim, g.source(), length == 2 * n as usize, || {
        format!("CD(G) has length {length}, expected {}", 2 * n)
    })
    .with_note(format!("{} CD nodes, length {length}", cd.len())))
}

pub fn check_extraspecial(p: u32, n: u32, kind: ExtraspecialType, limits: &Limits) -> Result<ClaimResult> {
    let g = construct(&GroupSpec::Extraspecial { p, n, kind }, limits)?;
    check_extraspecial_group(&GroupAnalysis::new(&g, limits)?, p, n)
}

/// `CD(G) = [G/Z(G)]` forces an even lattice length.
pub fn check_even_length(a: &GroupAnalysis) -> ClaimResult {
    let g = a.group();
    if !a.cd_equals_interval() {
        return ClaimResult::vacuous(claims::EVEN_LENGTH, g.source(), "CD(G) differs from [G/Z(G)]");
    }
    let length = a.cd_lattice().length();
    ClaimResult::from_bool(claims::EVEN_LENGTH, g.source(), length.is_multiple_of(2), || {
        format!("CD(G) = [G/Z(G)] has odd length {length}")
    })
    .with_note(format!("length {length}"))
}

pub fn check_cd_properties(a: &GroupAnalysis) -> ClaimResult {
    let g = a.group();
    let f = a.report().flags;
    let mut failed = Vec::new();
    for (name, ok) in [
        ("sublattice", f.cd_is_sublattice),
        ("modular", f.cd_is_modular),
        ("self-dual via centralizer", f.cd_self_dual_via_centralizer),
        ("inside centralizer lattice", f.cd_subset_of_centralizer_lattice),
        ("C(C(H)) = H", f.cd_centralizer_closed),
    ] {
        if !ok {
            failed.push(name);
        }
    }
    ClaimResult::from_bool(claims::CD_PROPERTIES, g.source(), failed.is_empty(), || {
        format!("CD(G) is not: {}", failed.join(", "))
    })
}

/// `CD(G₁ × G₂) = CD(G₁) × CD(G₂)`.
///
/// `whole` may carry an existing analysis of the product; it is reused when
/// its table coincides with the freshly built product.
pub fn check_direct_product(
    left: &Group,
    right: &Group,
    whole: Option<&GroupAnalysis>,
    limits: &Limits,
) -> Result<ClaimResult> {
    let dp = left.direct_product(right, limits)?;
    let fresh;
    let an = match whole {
        Some(a) if a.group().same_table(&dp.group) => a,
        _ => {
            fresh = GroupAnalysis::new(&dp.group, limits)?;
            &fresh
        }
    };
    let cd_left = GroupAnalysis::new(left, limits)?.cd_lattice();
    let cd_right = GroupAnalysis::new(right, limits)?.cd_lattice();
    let expected = SubgroupLattice::product(&dp, &cd_left, &cd_right)?;
    let mut expected_sets: Vec<Vec<usize>> = expected.nodes().iter().map(|h| h.members().collect()).collect();
    let mut actual_sets: Vec<Vec<usize>> = an
        .cd_indices()
        .iter()
        .map(|&i| an.subgroups()[i].members().collect())
        .collect();
    expected_sets.sort();
    actual_sets.sort();
    let name = an.group().source().to_string();
    Ok(
        ClaimResult::from_bool(claims::DIRECT_PRODUCT, &name, expected_sets == actual_sets, || {
            format!(
                "CD(G) has {} nodes, CD(G1) x CD(G2) has {}",
                actual_sets.len(),
                expected_sets.len()
            )
        })
        .with_note(format!(
            "{} = {} x {} nodes",
            actual_sets.len(),
            cd_left.len(),
            cd_right.len()
        )),
    )
}

fn vacuous_on_precondition(claim: &str, group: &str, r: Result<ClaimResult>) -> ClaimResult {
    match r {
        Ok(r) => r,
        Err(
            e @ (Error::PreconditionFailed(_)
            | Error::CoprimalityViolated(_)
            | Error::ConditionViolated(_)
            | Error::TrivialGroup),
        ) => ClaimResult::vacuous(claim, group, e.to_string()),
        Err(e) => ClaimResult::fail(claim, group, format!("error: {e}")),
    }
}

fn skipped_unless_prime_power(claim: &str, group: &str, r: Result<ClaimResult>) -> ClaimResult {
    match r {
        Err(Error::NotPrimePower(n)) => ClaimResult::skipped(claim, group, format!("order {n} is not a prime power")),
        other => vacuous_on_precondition(claim, group, other),
    }
}

/// Every applicable check for one constructor expression, in a fixed order.
pub fn verify_spec(spec: &GroupSpec, limits: &Limits) -> Vec<ClaimResult> {
    let name = spec.to_string();
    let group = match construct(spec, limits) {
        Ok(g) => g,
        Err(e) => {
            return vec![ClaimResult::fail(
                claims::SETUP,
                &name,
                format!("construction failed: {e}"),
            )]
        }
    };
    let a = match GroupAnalysis::new(&group, limits) {
        Ok(a) => a,
        Err(e) => {
            return vec![ClaimResult::fail(
                claims::SETUP,
                &name,
                format!("enumeration failed: {e}"),
            )]
        }
    };
    let mut out = vec![check_cd_properties(&a)];
    out.push(vacuous_on_precondition(
        claims::NOT_FULL_LATTICE,
        &name,
        check_not_full_lattice(&a),
    ));
    out.push(check_nilpotency(&a));
    out.push(vacuous_on_precondition(
        claims::STRUCTURE_CONVERSE,
        &name,
        check_structure_converse(&a, limits),
    ));
    out.push(vacuous_on_precondition(
        claims::SUBGROUP_INHERITANCE,
        &name,
        check_subgroup_inheritance(&a, limits),
    ));
    out.push(check_even_length(&a));

    out.push(skipped_unless_prime_power(
        claims::PGROUP_CRITERION,
        &name,
        check_pgroup_criterion(&a),
    ));
    out.push(skipped_unless_prime_power(
        claims::CONDITION_EQUIVALENCE,
        &name,
        check_condition_equivalence(&a),
    ));
    out.push(skipped_unless_prime_power(
        claims::INTERVAL_MEASURE,
        &name,
        check_interval_measure(&a),
    ));
    out.push(skipped_unless_prime_power(
        claims::CENTER_INDEX,
        &name,
        check_center_index(&a),
    ));

    if let Some((p, n)) = spec.extraspecial_shape() {
        out.push(vacuous_on_precondition(
            claims::EXTRASPECIAL,
            &name,
            check_extraspecial_group(&a, p, n),
        ));
    }

    let factors = spec.product_factors();
    if factors.len() > 1 {
        out.push(forward_from_factors(&factors, &name, limits));
    }
    if let GroupSpec::Product(l, r) = spec {
        let res = construct(l, limits)
            .and_then(|lg| construct(r, limits).map(|rg| (lg, rg)))
            .and_then(|(lg, rg)| check_direct_product(&lg, &rg, Some(&a), limits));
        out.push(vacuous_on_precondition(claims::DIRECT_PRODUCT, &name, res));
    }
    out
}

/// Splits the factors into non-abelian ones and an abelian remainder, then
/// runs the forward structure check.
fn forward_from_factors(factors: &[&GroupSpec], name: &str, limits: &Limits) -> ClaimResult {
    let mut non_abelian = Vec::new();
    let mut abelian: Option<GroupSpec> = None;
    for &f in factors {
        match construct(f, limits) {
            Ok(g) if g.is_abelian() => {
                abelian = Some(match abelian {
                    None => f.clone(),
                    Some(a) => GroupSpec::product(a, f.clone()),
                })
            }
            Ok(_) => non_abelian.push(f.clone()),
            Err(e) => return ClaimResult::fail(claims::STRUCTURE_FORWARD, name, format!("error: {e}")),
        }
    }
    let abelian = abelian.unwrap_or(GroupSpec::Cyclic(1));
    let mut r = vacuous_on_precondition(
        claims::STRUCTURE_FORWARD,
        name,
        check_structure_forward(&non_abelian, &abelian, limits),
    );
    r.group = name.to_string();
    r
}

/// Runs [`verify_spec`] over every spec; results keep the corpus order.
pub fn run_corpus(corpus: &[GroupSpec], limits: &Limits) -> Vec<ClaimResult> {
    corpus
        .par_iter()
        .map(|s| verify_spec(s, limits))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

pub fn failure_count(results: &[ClaimResult]) -> usize {
    results.iter().filter(|r| r.is_failure()).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn analysis(s: &str) -> GroupAnalysis {
        let limits = Limits::default();
        GroupAnalysis::new(&construct(&s.parse().unwrap(), &limits).unwrap(), &limits).unwrap()
    }

    #[test]
    fn conditions_on_small_groups() {
        for (s, c1) in [
            ("D(4)", true),
            ("D(8)", false),
            ("Heis(3)", true),
            ("Q(2)", true),
            ("SD(4)", false),
        ] {
            let a = analysis(s);
            assert_eq!(modular_cyclic_condition(&a).unwrap(), c1, "{s}");
            assert_eq!(commutator_power_condition(a.group()).unwrap(), c1, "{s}");
        }
        assert!(commutator_power_condition(analysis("Ab(2,4)").group()).unwrap());
        assert_eq!(
            modular_cyclic_condition(&analysis("S(3)")).unwrap_err(),
            Error::NotPrimePower(6)
        );
    }

    #[test]
    fn pgroup_criterion_both_ways() {
        for s in ["D(4)", "Q(2)", "M(2,4)"] {
            let r = check_pgroup_criterion(&analysis(s)).unwrap();
            assert_eq!(r.outcome, Outcome::Pass, "{s}");
            assert_eq!(r.note.as_deref(), Some("both sides true"));
        }
        let r = check_pgroup_criterion(&analysis("D(8)")).unwrap();
        assert_eq!(r.outcome, Outcome::Pass);
        assert_eq!(r.note.as_deref(), Some("both sides false"));
    }

    #[test]
    fn forward_structure() {
        let limits = Limits::default();
        let q8 = GroupSpec::Dicyclic(2);
        let r = check_structure_forward(std::slice::from_ref(&q8), &GroupSpec::Cyclic(3), &limits).unwrap();
        assert_eq!(r.outcome, Outcome::Pass);
        let r = check_structure_forward(&[GroupSpec::Dihedral(4)], &GroupSpec::Cyclic(1), &limits).unwrap();
        assert_eq!(r.outcome, Outcome::Pass);
        assert!(matches!(
            check_structure_forward(std::slice::from_ref(&q8), &GroupSpec::Cyclic(2), &limits),
            Err(Error::CoprimalityViolated(_))
        ));
        assert!(matches!(
            check_structure_forward(&[GroupSpec::Dihedral(8)], &GroupSpec::Cyclic(3), &limits),
            Err(Error::ConditionViolated(_))
        ));
        assert!(matches!(
            check_structure_forward(&[q8], &GroupSpec::Symmetric(3), &limits),
            Err(Error::ConditionViolated(_))
        ));
    }

    #[test]
    fn converse_structure() {
        let limits = Limits::default();
        let r = check_structure_converse(&analysis("Q(2) x C(9)"), &limits).unwrap();
        assert_eq!(r.outcome, Outcome::Pass);
        let r = check_structure_converse(&analysis("Ab(2,3)"), &limits).unwrap();
        assert_eq!(r.outcome, Outcome::Pass);
        assert!(r.note.unwrap().starts_with("r = 0"));
        let r = check_structure_converse(&analysis("ES(3,1,p)"), &limits).unwrap();
        assert_eq!(r.outcome, Outcome::Pass);
        assert!(matches!(
            check_structure_converse(&analysis("S(3)"), &limits),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn corollaries() {
        let limits = Limits::default();
        assert_eq!(check_nilpotency(&analysis("S(3)")).outcome, Outcome::Vacuous);
        assert_eq!(check_nilpotency(&analysis("D(4)")).outcome, Outcome::Pass);
        assert_eq!(check_nilpotency(&analysis("Q(2) x C(3)")).outcome, Outcome::Pass);
        assert_eq!(
            check_not_full_lattice(&analysis("C(2)")).unwrap().outcome,
            Outcome::Pass
        );
        assert_eq!(
            check_not_full_lattice(&analysis("C(1)")).unwrap_err(),
            Error::TrivialGroup
        );
        for s in ["Q(2)", "ES(3,1,p)", "Ab(2,4)"] {
            assert_eq!(
                check_subgroup_inheritance(&analysis(s), &limits).unwrap().outcome,
                Outcome::Pass
            );
        }
        assert!(matches!(
            check_subgroup_inheritance(&analysis("D(8)"), &limits),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn center_index() {
        for s in ["D(4)", "Q(2)", "M(2,4)"] {
            let r = check_center_index(&analysis(s)).unwrap();
            assert_eq!(r.outcome, Outcome::Pass, "{s}");
            assert_eq!(r.note.as_deref(), Some("(G:Z(G)) = 4"));
        }
        assert!(matches!(
            check_center_index(&analysis("Ab(2,2)")),
            Err(Error::PreconditionFailed(_))
        ));
        // ES(2,2,+) has no abelian maximal subgroup
        assert!(matches!(
            check_center_index(&analysis("ES(2,2,+)")),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn extraspecial_examples() {
        let limits = Limits::default();
        let r = check_extraspecial(2, 1, ExtraspecialType::Plus, &limits).unwrap();
        assert_eq!(r.outcome, Outcome::Pass);
        let r = check_extraspecial(3, 1, ExtraspecialType::ExponentP, &limits).unwrap();
        assert_eq!(r.note.as_deref(), Some("6 CD nodes, length 2"));
        let r = check_extraspecial(2, 2, ExtraspecialType::Minus, &limits).unwrap();
        assert_eq!(r.outcome, Outcome::Pass);
        assert_eq!(r.note.as_deref(), Some("67 CD nodes, length 4"));
    }

    #[test]
    fn direct_product_decomposition() {
        let limits = Limits::default();
        let q8 = construct(&GroupSpec::Dicyclic(2), &limits).unwrap();
        let c3 = construct(&GroupSpec::Cyclic(3), &limits).unwrap();
        let r = check_direct_product(&q8, &c3, None, &limits).unwrap();
        assert_eq!(r.outcome, Outcome::Pass);
        assert_eq!(r.note.as_deref(), Some("5 = 5 x 1 nodes"));
    }

    #[test]
    fn verify_non_pgroup() {
        let results = verify_spec(&GroupSpec::Symmetric(3), &Limits::default());
        assert_eq!(failure_count(&results), 0);
        let get = |c: &str| results.iter().find(|r| r.claim == c).unwrap().outcome;
        assert_eq!(get(claims::NILPOTENT), Outcome::Vacuous);
        assert_eq!(get(claims::SUBGROUP_INHERITANCE), Outcome::Vacuous);
        assert_eq!(get(claims::NOT_FULL_LATTICE), Outcome::Pass);
        assert_eq!(get(claims::PGROUP_CRITERION), Outcome::Skipped);
    }

    #[test]
    fn verify_reports_setup_failures() {
        let results = verify_spec(&GroupSpec::Symmetric(6), &Limits::default());
        assert_eq!(results.len(), 1);
        assert!(results[0].is_failure());
        assert!(results[0].witness.is_some());
    }
}
