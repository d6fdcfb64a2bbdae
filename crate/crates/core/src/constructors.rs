//! Building groups from [`GroupSpec`] expressions.

use crate::error::{Error, Result};
use crate::group::{Group, Limits};
use crate::perm::Permutation;
use crate::spec::{ExtraspecialType, GroupSpec};
use crate::subgroup::{generated, quotient};

/// Largest degree accepted by `S(n)` and `A(n)`.
pub const MAX_SYMMETRIC_DEGREE: u32 = 6;

pub fn construct(spec: &GroupSpec, limits: &Limits) -> Result<Group> {
    spec.validate()?;
    build(spec, limits)
}

fn build(spec: &GroupSpec, limits: &Limits) -> Result<Group> {
    Ok(build_raw(spec, limits)?.with_source(spec.to_string()))
}

fn build_raw(spec: &GroupSpec, limits: &Limits) -> Result<Group> {
    match spec {
        GroupSpec::Cyclic(n) => metacyclic(*n as u64, 1, 0, 1, ["a", "b"], limits),
        GroupSpec::Abelian(ns) => {
            let mut acc = build(&GroupSpec::Cyclic(ns[0]), limits)?;
            for &n in &ns[1..] {
                let c = build(&GroupSpec::Cyclic(n), limits)?;
                acc = acc.direct_product(&c, limits)?.group;
            }
            Ok(acc)
        }
        GroupSpec::Dihedral(n) => {
            let n = *n as u64;
            metacyclic(n, 2, 0, n - 1, ["r", "s"], limits)
        }
        GroupSpec::Dicyclic(m) => {
            let m = *m as u64;
            metacyclic(2 * m, 2, m, 2 * m - 1, ["a", "x"], limits)
        }
        GroupSpec::SemiDihedral(k) => {
            let half = 1u64 << (k - 1);
            metacyclic(half, 2, 0, half / 2 - 1, ["a", "b"], limits)
        }
        GroupSpec::ModularMaxCyclic { p, k } => modular(*p as u64, *k, limits),
        GroupSpec::ExtraspecialP2(p) => modular(*p as u64, 3, limits),
        GroupSpec::Heisenberg(p) => heisenberg(*p as u64, limits),
        GroupSpec::Extraspecial { p, n, kind } => extraspecial(*p, *n, *kind, limits),
        GroupSpec::Symmetric(n) => symmetric(*n, limits),
        GroupSpec::Alternating(n) => alternating(*n, limits),
        GroupSpec::Product(a, b) => {
            let a = build(a, limits)?;
            let b = build(b, limits)?;
            Ok(a.direct_product(&b, limits)?.group)
        }
        GroupSpec::CentralProduct(a, b) => central_product(&build(a, limits)?, &build(b, limits)?, limits),
        GroupSpec::Perm(gens) => {
            let degree = gens
                .iter()
                .flatten()
                .flatten()
                .map(|&x| x as usize + 1)
                .max()
                .unwrap_or(1);
            let perms = gens
                .iter()
                .map(|cycles| Permutation::from_cycles(degree, cycles))
                .collect::<Result<Vec<_>>>()?;
            Group::from_generators(&perms, limits.max_closure)
        }
    }
}

fn checked_order(parts: &[u64], limits: &Limits) -> Result<usize> {
    let mut order: u64 = 1;
    for &p in parts {
        order = order.saturating_mul(p);
    }
    let order = usize::try_from(order).unwrap_or(usize::MAX);
    limits.check_closure(order)?;
    Ok(order)
}

/// `⟨a, b | a^m = 1, b^n = a^t, b a b⁻¹ = a^r⟩`, elements `a^i b^j` stored
/// at index `i + m·j`.
fn metacyclic(m: u64, n: u64, t: u64, r: u64, letters: [&str; 2], limits: &Limits) -> Result<Group> {
    let order = checked_order(&[m, n], limits)?;
    let r = r % m.max(1);
    // r^j mod m
    let mut rpow = vec![1 % m.max(1); n as usize];
    for j in 1..n as usize {
        rpow[j] = rpow[j - 1] * r % m;
    }
    debug_assert_eq!(rpow[n as usize - 1] * r % m, 1 % m, "r must have order dividing n");
    let power = |letter: &str, e: u64| match e {
        0 => String::new(),
        1 => letter.to_string(),
        e => format!("{letter}^{e}"),
    };
    let labels = (0..order as u64)
        .map(|x| {
            let (i, j) = (x % m, x / m);
            let s = power(letters[0], i) + &power(letters[1], j);
            if s.is_empty() {
                "e".to_string()
            } else {
                s
            }
        })
        .collect();
    Group::from_fn(order, labels, String::new(), |x, y| {
        let (i, j) = (x as u64 % m, x as u64 / m);
        let (k, l) = (y as u64 % m, y as u64 / m);
        let mut a = (i + rpow[j as usize] * k) % m;
        let mut b = j + l;
        if b >= n {
            b -= n;
            a = (a + t) % m;
        }
        (a + m * b) as usize
    })
}

fn modular(p: u64, k: u32, limits: &Limits) -> Result<Group> {
    let m = p.pow(k - 1);
    metacyclic(m, p, 0, 1 + p.pow(k - 2), ["a", "b"], limits)
}

/// Upper unitriangular 3×3 matrices over `F_p`; `(x, y, z)` at `x + p·y + p²·z`.
fn heisenberg(p: u64, limits: &Limits) -> Result<Group> {
    let order = checked_order(&[p, p, p], limits)?;
    let split = |v: usize| {
        let v = v as u64;
        (v % p, (v / p) % p, v / (p * p))
    };
    let labels = (0..order)
        .map(|v| {
            let (x, y, z) = split(v);
            format!("[{x},{y},{z}]")
        })
        .collect();
    Group::from_fn(order, labels, String::new(), |u, v| {
        let (x, y, z) = split(u);
        let (a, b, c) = split(v);
        ((x + a) % p + p * ((y + b) % p) + p * p * ((z + c + x * b) % p)) as usize
    })
}

fn extraspecial(p: u32, n: u32, kind: ExtraspecialType, limits: &Limits) -> Result<Group> {
    let p64 = p as u64;
    checked_order(&vec![p64; 2 * n as usize + 1], limits)?;
    let (first, rest) = match kind {
        ExtraspecialType::Plus => (GroupSpec::Dihedral(4), GroupSpec::Dihedral(4)),
        ExtraspecialType::Minus => (GroupSpec::Dicyclic(2), GroupSpec::Dihedral(4)),
        ExtraspecialType::ExponentP => (GroupSpec::Heisenberg(p), GroupSpec::Heisenberg(p)),
        ExtraspecialType::ExponentP2 => (GroupSpec::ExtraspecialP2(p), GroupSpec::Heisenberg(p)),
    };
    let mut acc = build(&first, limits)?;
    if n > 1 {
        let block = build(&rest, limits)?;
        for _ in 1..n {
            acc = central_product(&acc, &block, limits)?;
        }
    }
    Ok(acc)
}

/// Smallest-index element generating a cyclic subgroup of the given order.
fn canonical_generator(g: &Group, members: impl Iterator<Item = usize>, order: usize) -> Option<usize> {
    members.into_iter().find(|&x| g.element_order(x) == order)
}

/// `(A × B) / {(z^k, w^-k)}` where `z`, `w` are the canonical generators of
/// the two cyclic centers.
pub fn central_product(a: &Group, b: &Group, limits: &Limits) -> Result<Group> {
    let (za, zb) = (a.center(), b.center());
    let mismatch = || Error::CentralProductMismatch {
        left: format!("|Z| = {} in {}", za.size(), a.source()),
        right: format!("|Z| = {} in {}", zb.size(), b.source()),
    };
    if za.size() != zb.size() || !za.is_cyclic() || !zb.is_cyclic() {
        return Err(mismatch());
    }
    let z = canonical_generator(a, za.members(), za.size()).ok_or_else(mismatch)?;
    let w = canonical_generator(b, zb.members(), zb.size()).ok_or_else(mismatch)?;
    let prod = a.direct_product(b, limits)?;
    let diagonal = generated(&prod.group, &[prod.pair(z, b.inv(w))]);
    let q = quotient(&prod.group, &diagonal)?;
    Ok(q.group.with_source(format!("CP({}, {})", a.source(), b.source())))
}

fn symmetric(n: u32, limits: &Limits) -> Result<Group> {
    if n > MAX_SYMMETRIC_DEGREE {
        return Err(Error::UnsupportedParameter(format!(
            "S({n}): degree above {MAX_SYMMETRIC_DEGREE}"
        )));
    }
    let d = n as usize;
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Permutation::from_cycles(d, &[(0..n).collect()])?);
        gens.push(Permutation::from_cycles(d, &[vec![0, 1]])?);
    }
    permutation_group(d, &gens, limits)
}

fn alternating(n: u32, limits: &Limits) -> Result<Group> {
    if n > MAX_SYMMETRIC_DEGREE {
        return Err(Error::UnsupportedParameter(format!(
            "A({n}): degree above {MAX_SYMMETRIC_DEGREE}"
        )));
    }
    let d = n as usize;
    let gens = (2..n)
        .map(|k| Permutation::from_cycles(d, &[vec![0, 1, k]]))
        .collect::<Result<Vec<_>>>()?;
    permutation_group(d, &gens, limits)
}

fn permutation_group(degree: usize, gens: &[Permutation], limits: &Limits) -> Result<Group> {
    if gens.is_empty() {
        return Group::from_generators(&[Permutation::identity(degree.max(1))], limits.max_closure);
    }
    Group::from_generators(gens, limits.max_closure)
}
