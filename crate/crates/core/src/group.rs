//! Finite groups as validated Cayley tables.
//!
//! Elements are the indices `0..n`; index `0` is always the identity. A
//! [`Group`] is immutable and cheap to clone (shared storage), so subgroups
//! and lattices hold their parent by value.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::subgroup::Subgroup;

/// Largest order for which associativity is checked exhaustively.
pub const ASSOCIATIVITY_CHECK_MAX: usize = 256;

/// Size caps for construction and subgroup enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest group whose subgroup lattice may be enumerated.
    pub max_order: usize,
    /// Largest group that may be constructed.
    pub max_closure: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 256,
            max_closure: 2048,
        }
    }
}

impl Limits {
    pub(crate) fn check_closure(&self, order: usize) -> Result<()> {
        if order > self.max_closure {
            Err(Error::ClosureCapExceeded {
                order,
                cap: self.max_closure,
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_enumeration(&self, order: usize) -> Result<()> {
        if order > self.max_order {
            Err(Error::OrderCapExceeded {
                order,
                cap: self.max_order,
            })
        } else {
            Ok(())
        }
    }
}

struct GroupData {
    order: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    labels: Vec<String>,
    source: String,
}

#[derive(Clone)]
pub struct Group(Arc<GroupData>);

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("source", &self.0.source)
            .field("order", &self.0.order)
            .finish()
    }
}

impl Group {
    /// Validates a row-major Cayley table and builds the group.
    ///
    /// The identity must sit at index 0. Rows and columns must be
    /// permutations. Associativity is checked when `order <= 256`.
    pub fn from_table(order: usize, table: Vec<u32>, labels: Vec<String>, source: impl Into<String>) -> Result<Group> {
        let group = Self::assemble(order, table, labels, source.into())?;
        if order <= ASSOCIATIVITY_CHECK_MAX {
            group.check_associative()?;
        }
        Ok(group)
    }

    /// Builds a group from a multiplication function on `0..order`.
    pub fn from_fn(
        order: usize,
        labels: Vec<String>,
        source: impl Into<String>,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<Group> {
        let mut table = Vec::with_capacity(order * order);
        for x in 0..order {
            for y in 0..order {
                table.push(mul(x, y) as u32);
            }
        }
        Self::from_table(order, table, labels, source)
    }

    /// Table validation without the cubic associativity pass. Used for groups
    /// derived from an already validated group (quotients, restrictions).
    pub(crate) fn from_table_derived(
        order: usize,
        table: Vec<u32>,
        labels: Vec<String>,
        source: String,
    ) -> Result<Group> {
        Self::assemble(order, table, labels, source)
    }

    fn assemble(order: usize, table: Vec<u32>, labels: Vec<String>, source: String) -> Result<Group> {
        if order == 0 {
            return Err(Error::InvalidTable("empty group".into()));
        }
        if table.len() != order * order {
            return Err(Error::InvalidTable(format!(
                "table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        if labels.len() != order {
            return Err(Error::InvalidTable(format!(
                "{} labels for {order} elements",
                labels.len()
            )));
        }
        for x in 0..order {
            if table[x] as usize != x || table[x * order] as usize != x {
                return Err(Error::InvalidTable(format!("index 0 is not an identity at {x}")));
            }
        }
        let mut seen = vec![0usize; order];
        let mut stamp = 0;
        for r in 0..order {
            stamp += 1;
            for c in 0..order {
                let v = table[r * order + c] as usize;
                if v >= order || seen[v] == stamp {
                    return Err(Error::InvalidTable(format!("row {r} is not a permutation")));
                }
                seen[v] = stamp;
            }
        }
        for c in 0..order {
            stamp += 1;
            for r in 0..order {
                let v = table[r * order + c] as usize;
                if seen[v] == stamp {
                    return Err(Error::InvalidTable(format!("column {c} is not a permutation")));
                }
                seen[v] = stamp;
            }
        }
        let mut inv = vec![0u32; order];
        for x in 0..order {
            let y = (0..order)
                .find(|&y| table[x * order + y] == 0)
                .expect("latin rows contain the identity");
            if table[y * order + x] != 0 {
                return Err(Error::InvalidTable(format!("element {x} has no two-sided inverse")));
            }
            inv[x] = y as u32;
        }
        Ok(Group(Arc::new(GroupData {
            order,
            table,
            inv,
            labels,
            source,
        })))
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.order();
        for x in 0..n {
            for y in 0..n {
                let xy = self.mul(x, y);
                for z in 0..n {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Err(Error::InvalidTable(format!("associativity fails at ({x}, {y}, {z})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Closure of a list of permutations under composition.
    pub fn from_generators(perms: &[Permutation], cap: usize) -> Result<Group> {
        let elements = permutation_closure(perms, cap)?;
        let index: HashMap<&Permutation, usize> = elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let n = elements.len();
        let mut table = Vec::with_capacity(n * n);
        for x in &elements {
            for y in &elements {
                table.push(index[&x.then(y)] as u32);
            }
        }
        let labels = elements.iter().map(|p| p.to_string()).collect();
        let source = format!(
            "Perm[{}]",
            perms.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
        );
        Self::from_table(n, table, labels, source)
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.0.table[x * self.0.order + y] as usize
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.0.inv[x] as usize
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn label(&self, x: usize) -> &str {
        &self.0.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn source(&self) -> &str {
        &self.0.source
    }

    pub fn table(&self) -> &[u32] {
        &self.0.table
    }

    /// Same underlying group object (not an isomorphism test).
    pub fn same(&self, other: &Group) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Equal labeled Cayley tables.
    pub fn same_table(&self, other: &Group) -> bool {
        self.0.table == other.0.table && self.0.labels == other.0.labels
    }

    pub(crate) fn with_source(&self, source: String) -> Group {
        Group(Arc::new(GroupData {
            order: self.0.order,
            table: self.0.table.clone(),
            inv: self.0.inv.clone(),
            labels: self.0.labels.clone(),
            source,
        }))
    }

    pub fn power(&self, x: usize, mut k: u64) -> usize {
        let mut base = x;
        let mut acc = 0;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `x⁻¹ y⁻¹ x y`.
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        let xy = self.mul(x, y);
        let yx = self.mul(y, x);
        self.mul(self.inv(yx), xy)
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    #[inline]
    pub fn commute(&self, x: usize, y: usize) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|x| (x + 1..n).all(|y| self.commute(x, y)))
    }

    pub fn center(&self) -> Subgroup {
        let n = self.order();
        let set = ElementSet::from_indices(n, (0..n).filter(|&x| (0..n).all(|y| self.commute(x, y))));
        Subgroup::from_closed_set(self, set)
    }

    /// Elements commuting with every element of `s`.
    pub fn centralizer(&self, s: &[usize]) -> Subgroup {
        let n = self.order();
        let set = ElementSet::from_indices(n, (0..n).filter(|&x| s.iter().all(|&y| self.commute(x, y))));
        Subgroup::from_closed_set(self, set)
    }

    pub fn centralizer_of(&self, h: &Subgroup) -> Subgroup {
        self.centralizer(h.generators())
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_closed_set(self, ElementSet::full(self.order()))
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup::from_closed_set(self, ElementSet::from_indices(self.order(), [0]))
    }

    /// Direct product with componentwise multiplication; `(i, j)` lives at
    /// index `i * |right| + j`.
    pub fn direct_product(&self, right: &Group, limits: &Limits) -> Result<DirectProduct> {
        let (na, nb) = (self.order(), right.order());
        limits.check_closure(na * nb)?;
        let n = na * nb;
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            let (i, j) = (x / nb, x % nb);
            for y in 0..n {
                let (k, l) = (y / nb, y % nb);
                table.push((self.mul(i, k) * nb + right.mul(j, l)) as u32);
            }
        }
        let labels = (0..n)
            .map(|x| format!("({},{})", self.label(x / nb), right.label(x % nb)))
            .collect();
        let source = format!("{} x {}", self.source(), right.source());
        let group = Self::from_table_derived(n, table, labels, source)?;
        Ok(DirectProduct {
            group,
            left: self.clone(),
            right: right.clone(),
        })
    }
}

/// An external direct product together with its factor coordinates.
#[derive(Debug, Clone)]
pub struct DirectProduct {
    pub group: Group,
    pub left: Group,
    pub right: Group,
}

impl DirectProduct {
    pub fn pair(&self, i: usize, j: usize) -> usize {
        i * self.right.order() + j
    }

    pub fn split(&self, x: usize) -> (usize, usize) {
        (x / self.right.order(), x % self.right.order())
    }

    /// `h1 × h2` as a subgroup of the product.
    pub fn embed(&self, h1: &Subgroup, h2: &Subgroup) -> Result<Subgroup> {
        if !h1.parent().same(&self.left) || !h2.parent().same(&self.right) {
            return Err(Error::ParentMismatch);
        }
        let mut set = ElementSet::new(self.group.order());
        for i in h1.members() {
            for j in h2.members() {
                set.insert(self.pair(i, j));
            }
        }
        Ok(Subgroup::from_closed_set(&self.group, set))
    }
}

/// All elements generated by `perms`, identity first, in breadth-first order.
pub fn permutation_closure(perms: &[Permutation], cap: usize) -> Result<Vec<Permutation>> {
    let degree = perms.first().map_or(1, |p| p.degree());
    if degree == 0 {
        return Err(Error::InvalidPermutation("degree must be at least 1".into()));
    }
    if let Some(p) = perms.iter().find(|p| p.degree() != degree) {
        return Err(Error::InvalidPermutation(format!(
            "mixed degrees {degree} and {}",
            p.degree()
        )));
    }
    for p in perms {
        Permutation::from_images(p.images().to_vec())?;
    }
    let identity = Permutation::identity(degree);
    let mut elements = vec![identity.clone()];
    let mut seen: HashMap<Permutation, ()> = HashMap::from([(identity, ())]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in perms {
            let next = elements[i].then(g);
            if seen.contains_key(&next) {
                continue;
            }
            if elements.len() >= cap {
                return Err(Error::ClosureCapExceeded {
                    order: elements.len() + 1,
                    cap,
                });
            }
            seen.insert(next.clone(), ());
            queue.push_back(elements.len());
            elements.push(next);
        }
    }
    Ok(elements)
}
