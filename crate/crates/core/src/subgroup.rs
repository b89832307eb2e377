//! Subgroups as element subsets of a parent [`Group`], and the subgroup-level
//! operations everything else is built on: products, conjugates,
//! normalizers, closures and cores.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{GroupError, Result};
use crate::group::Group;
use crate::perm::Permutation;

/// Element set plus generators, detached from the parent (used in caches).
#[derive(Clone, Debug)]
pub(crate) struct SubgroupData {
    pub bits: FixedBitSet,
    pub gens: Vec<u32>,
}

/// A subgroup of a parent group, stored as a set of element indices.
#[derive(Clone)]
pub struct Subgroup {
    parent: Group,
    bits: FixedBitSet,
    gens: Vec<u32>,
    order: usize,
}

impl Subgroup {
    pub(crate) fn from_parts(parent: Group, bits: FixedBitSet, gens: Vec<u32>) -> Subgroup {
        let order = bits.count_ones(..);
        debug_assert_eq!(parent.order() % order, 0);
        Subgroup {
            parent,
            bits,
            gens,
            order,
        }
    }

    pub(crate) fn from_data(parent: &Group, data: &SubgroupData) -> Subgroup {
        Self::from_parts(parent.clone(), data.bits.clone(), data.gens.clone())
    }

    pub(crate) fn to_data(&self) -> SubgroupData {
        SubgroupData {
            bits: self.bits.clone(),
            gens: self.gens.clone(),
        }
    }

    /// Wraps a set already known to be a subgroup, choosing generators greedily.
    pub(crate) fn from_closed_bits(parent: &Group, bits: FixedBitSet) -> Subgroup {
        let mut gens = Vec::new();
        let mut cur = parent.empty_set();
        cur.insert(parent.identity() as usize);
        for i in bits.ones() {
            if !cur.contains(i) {
                gens.push(i as u32);
                cur = parent.close(&cur, &gens);
            }
        }
        debug_assert_eq!(cur, bits);
        Self::from_parts(parent.clone(), bits, gens)
    }

    pub fn parent(&self) -> &Group {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_whole(&self) -> bool {
        self.order == self.parent.order()
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn contains_index(&self, i: u32) -> bool {
        self.bits.contains(i as usize)
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.parent
            .index_of(p)
            .is_some_and(|i| self.contains_index(i))
    }

    pub fn indices(&self) -> impl Iterator<Item = u32> + '_ {
        self.bits.ones().map(|i| i as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = &Permutation> + '_ {
        self.indices().map(|i| self.parent.element(i))
    }

    pub fn generator_indices(&self) -> &[u32] {
        &self.gens
    }

    pub fn generators(&self) -> Vec<Permutation> {
        self.gens
            .iter()
            .map(|&g| self.parent.element(g).clone())
            .collect()
    }

    pub fn same_parent(&self, other: &Subgroup) -> bool {
        self.parent.same_as(&other.parent)
    }

    fn check_parent(&self, other: &Subgroup) -> Result<()> {
        if self.same_parent(other) {
            Ok(())
        } else {
            Err(GroupError::MismatchedParents)
        }
    }

    /// `self ≤ other`; both must share a parent.
    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        debug_assert!(self.same_parent(other));
        self.order <= other.order && self.bits.is_subset(&other.bits)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        debug_assert!(self.same_parent(other));
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Subgroup::from_closed_bits(&self.parent, bits)
    }

    /// Subgroup generated by both.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        debug_assert!(self.same_parent(other));
        if other.is_subgroup_of(self) {
            return self.clone();
        }
        if self.is_subgroup_of(other) {
            return other.clone();
        }
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().filter(|g| !self.contains_index(**g)));
        let bits = self.parent.close(&self.bits, &gens);
        Subgroup::from_parts(self.parent.clone(), bits, gens)
    }

    /// Ascending by order, then lexicographic on the sorted element lists.
    pub fn canonical_cmp(&self, other: &Subgroup) -> Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.bits.ones().cmp(other.bits.ones()))
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        crate::arith::is_power_of(self.order as u64, p)
    }

    /// Materializes the subgroup as a group of its own.
    pub fn to_group(&self) -> Group {
        let parent = &self.parent;
        let mut map = vec![u32::MAX; parent.order()];
        let mut elements = Vec::with_capacity(self.order);
        for (k, i) in self.indices().enumerate() {
            map[i as usize] = k as u32;
            elements.push(parent.element(i).clone());
        }
        let gens = self.gens.iter().map(|&g| map[g as usize]).collect();
        let table = parent.table_if_built().map(|_| {
            let idx: Vec<u32> = self.indices().collect();
            let mut t = Vec::with_capacity(idx.len() * idx.len());
            for &a in &idx {
                for &b in &idx {
                    t.push(map[parent.mul(a, b) as usize]);
                }
            }
            t.into_boxed_slice()
        });
        Group::from_parts(parent.degree(), elements, gens, parent.limits(), table)
    }

    /// The same set of permutations viewed inside another group.
    pub fn transport(&self, target: &Group) -> Result<Subgroup> {
        if self.parent.same_as(target) {
            return Ok(self.clone());
        }
        let mut bits = target.empty_set();
        for p in self.elements() {
            let i = target
                .index_of(p)
                .ok_or_else(|| GroupError::NotInParent(p.to_string()))?;
            bits.insert(i as usize);
        }
        let gens = self
            .gens
            .iter()
            .map(|&g| {
                target
                    .index_of(self.parent.element(g))
                    .expect("checked above")
            })
            .collect();
        Ok(Subgroup::from_parts(target.clone(), bits, gens))
    }

    pub(crate) fn conjugate_by_index(&self, g: u32) -> Subgroup {
        let parent = &self.parent;
        let mut bits = parent.empty_set();
        for h in self.indices() {
            bits.insert(parent.conj(h, g) as usize);
        }
        let gens = self.gens.iter().map(|&h| parent.conj(h, g)).collect();
        Subgroup::from_parts(parent.clone(), bits, gens)
    }

    /// Does `g` normalize this subgroup?
    pub(crate) fn normalized_by(&self, g: u32) -> bool {
        self.gens
            .iter()
            .all(|&h| self.contains_index(self.parent.conj(h, g)))
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.same_parent(other) && self.bits == other.bits
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.bits.hash(state);
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, g) in self.generators().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "> (order {})", self.order)
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A subset of a parent group with no closure requirement.
#[derive(Clone)]
pub struct ElementSet {
    parent: Group,
    bits: FixedBitSet,
}

impl ElementSet {
    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.parent
            .index_of(p)
            .is_some_and(|i| self.bits.contains(i as usize))
    }

    pub fn elements(&self) -> impl Iterator<Item = &Permutation> + '_ {
        self.bits.ones().map(|i| self.parent.element(i as u32))
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }
}

impl PartialEq for ElementSet {
    fn eq(&self, other: &Self) -> bool {
        self.parent.same_as(&other.parent) && self.bits == other.bits
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elements()).finish()
    }
}

fn check_parent(group: &Group, h: &Subgroup) -> Result<()> {
    if h.parent().same_as(group) {
        Ok(())
    } else {
        Err(GroupError::MismatchedParents)
    }
}

/// Smallest subgroup of `parent` containing `elements`.
pub fn subgroup_generated(parent: &Group, elements: &[Permutation]) -> Result<Subgroup> {
    let idx = elements
        .iter()
        .map(|p| {
            parent
                .index_of(p)
                .ok_or_else(|| GroupError::NotInParent(p.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(parent.subgroup_from_indices(&idx))
}

fn product_bits(h: &Subgroup, k: &Subgroup) -> FixedBitSet {
    let g = h.parent();
    let mut bits = g.empty_set();
    for a in h.indices() {
        for b in k.indices() {
            bits.insert(g.mul(a, b) as usize);
        }
    }
    bits
}

/// The product set `HK = {hk}`.
pub fn product_set(h: &Subgroup, k: &Subgroup) -> Result<ElementSet> {
    h.check_parent(k)?;
    Ok(ElementSet {
        parent: h.parent().clone(),
        bits: product_bits(h, k),
    })
}

/// `|HK|` from `|H||K|/|H ∩ K|`.
pub(crate) fn product_order(h: &Subgroup, k: &Subgroup) -> usize {
    let meet = h.bits().intersection_count(k.bits());
    h.order() * k.order() / meet
}

/// `HK = KH`.
pub fn permutes(h: &Subgroup, k: &Subgroup) -> Result<bool> {
    h.check_parent(k)?;
    Ok(permutes_unchecked(h, k))
}

pub(crate) fn permutes_unchecked(h: &Subgroup, k: &Subgroup) -> bool {
    if h.is_subgroup_of(k) || k.is_subgroup_of(h) {
        return true;
    }
    let g = h.parent();
    let hk = product_bits(h, k);
    // KH is the set of inverses of HK
    let holds = hk.ones().all(|x| hk.contains(g.inv(x as u32) as usize));
    debug_assert_eq!(holds, hk.count_ones(..) == h.join(k).order());
    holds
}

/// `H^g = g^-1 H g`.
pub fn conjugate_subgroup(h: &Subgroup, g: &Permutation) -> Result<Subgroup> {
    let gi = h
        .parent()
        .index_of(g)
        .ok_or_else(|| GroupError::NotInParent(g.to_string()))?;
    Ok(h.conjugate_by_index(gi))
}

pub fn normalizer(group: &Group, h: &Subgroup) -> Result<Subgroup> {
    check_parent(group, h)?;
    let mut bits = group.empty_set();
    for g in 0..group.order() as u32 {
        if h.normalized_by(g) {
            bits.insert(g as usize);
        }
    }
    Ok(Subgroup::from_closed_bits(group, bits))
}

/// Elements commuting with every permutation in `set`.
pub fn centralizer(group: &Group, set: &[Permutation]) -> Result<Subgroup> {
    let idx = set
        .iter()
        .map(|p| {
            group
                .index_of(p)
                .ok_or_else(|| GroupError::NotInParent(p.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(centralizer_of_indices(group, &idx))
}

pub(crate) fn centralizer_of_indices(group: &Group, idx: &[u32]) -> Subgroup {
    let mut bits = group.empty_set();
    for g in 0..group.order() as u32 {
        if idx.iter().all(|&s| group.mul(g, s) == group.mul(s, g)) {
            bits.insert(g as usize);
        }
    }
    Subgroup::from_closed_bits(group, bits)
}

pub fn center(group: &Group) -> Subgroup {
    centralizer_of_indices(group, group.generator_indices())
}

/// Smallest subgroup containing `h` and normalized by `ambient`, inside a
/// common parent.
pub(crate) fn normal_closure_within(ambient: &Subgroup, h: &Subgroup) -> Subgroup {
    let g = h.parent();
    let mut gens: Vec<u32> = h.generator_indices().to_vec();
    let mut bits = h.bits().clone();
    let mut i = 0;
    while i < gens.len() {
        let x = gens[i];
        i += 1;
        for &a in ambient.generator_indices() {
            let y = g.conj(x, a);
            if !bits.contains(y as usize) {
                gens.push(y);
                bits = g.close(&bits, &gens);
            }
        }
    }
    Subgroup::from_parts(g.clone(), bits, gens)
}

/// `H^G`, the smallest normal subgroup containing `h`.
pub fn normal_closure(group: &Group, h: &Subgroup) -> Result<Subgroup> {
    check_parent(group, h)?;
    Ok(normal_closure_within(&group.whole(), h))
}

/// Distinct conjugates of `h` under the whole parent, in discovery order.
pub(crate) fn conjugates(h: &Subgroup) -> Vec<Subgroup> {
    let g = h.parent();
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    seen.insert(h.bits().clone());
    let mut out = vec![h.clone()];
    let mut i = 0;
    while i < out.len() {
        let cur = out[i].clone();
        i += 1;
        for &a in g.generator_indices() {
            let c = cur.conjugate_by_index(a);
            if seen.insert(c.bits().clone()) {
                out.push(c);
            }
        }
    }
    out
}

/// `H_G`, the intersection of all conjugates of `h`.
pub fn core(group: &Group, h: &Subgroup) -> Result<Subgroup> {
    check_parent(group, h)?;
    let mut bits = h.bits().clone();
    for c in conjugates(h) {
        bits.intersect_with(c.bits());
    }
    Ok(Subgroup::from_closed_bits(group, bits))
}

pub fn is_normal(h: &Subgroup, group: &Group) -> Result<bool> {
    check_parent(group, h)?;
    Ok(is_normal_within(h, &group.whole()))
}

pub(crate) fn is_normal_within(h: &Subgroup, ambient: &Subgroup) -> bool {
    ambient
        .generator_indices()
        .iter()
        .all(|&g| h.normalized_by(g))
}

/// Subnormality via the chain `G ≥ H^G ≥ H^(H^G) ≥ …`.
pub fn is_subnormal(h: &Subgroup, group: &Group) -> Result<bool> {
    check_parent(group, h)?;
    let mut cur = group.whole();
    loop {
        let next = normal_closure_within(&cur, h);
        if next.order() == cur.order() {
            return Ok(cur.order() == h.order());
        }
        cur = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::generate_group;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    fn sym(n: usize) -> Group {
        let cyc: Vec<usize> = (1..=n).collect();
        generate_group(
            &[Permutation::from_cycles(&[cyc], n).unwrap(), p("(1 2)", n)],
            n,
        )
        .unwrap()
    }

    fn sub(g: &Group, gens: &[&str]) -> Subgroup {
        let gens: Vec<_> = gens.iter().map(|s| p(s, g.degree())).collect();
        subgroup_generated(g, &gens).unwrap()
    }

    #[test]
    fn generated_subgroups() {
        let s3 = sym(3);
        assert_eq!(sub(&s3, &["(1 2 3)"]).order(), 3);
        assert_eq!(sub(&s3, &[]).order(), 1);
        let s4 = sym(4);
        assert_eq!(sub(&s4, &["(1 2)", "(1 3 4)"]).order(), 24);
        let err = subgroup_generated(&s3, &[p("(1 2)", 4)]).unwrap_err();
        assert!(matches!(err, GroupError::NotInParent(_)));
    }

    #[test]
    fn permuting_examples() {
        let s3 = sym(3);
        let h = sub(&s3, &["(1 2)"]);
        assert!(permutes(&h, &sub(&s3, &["(1 2 3)"])).unwrap());
        let k = sub(&s3, &["(1 3)"]);
        assert_eq!(product_set(&h, &k).unwrap().len(), 4);
        assert!(!permutes(&h, &k).unwrap());
        assert!(permutes(&s3.trivial_subgroup(), &k).unwrap());
        let other = sym(3);
        assert_eq!(
            permutes(&h, &other.whole()).unwrap_err(),
            GroupError::MismatchedParents
        );
    }

    #[test]
    fn conjugation_examples() {
        let s3 = sym(3);
        let h = sub(&s3, &["(1 2)"]);
        assert_eq!(
            conjugate_subgroup(&h, &p("(2 3)", 3)).unwrap(),
            sub(&s3, &["(1 3)"])
        );
        assert_eq!(conjugate_subgroup(&h, &p("()", 3)).unwrap(), h);
        let s4 = sym(4);
        let v4 = sub(&s4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        for g in s4.elements() {
            assert_eq!(conjugate_subgroup(&v4, g).unwrap(), v4);
        }
        assert!(conjugate_subgroup(&h, &p("(1 2 3 4)", 4)).is_err());
    }

    #[test]
    fn normalizer_centralizer_center() {
        let s4 = sym(4);
        let d8 = sub(&s4, &["(1 2 3 4)", "(1 3)"]);
        assert_eq!(normalizer(&s4, &d8).unwrap(), d8);
        let s3 = sym(3);
        assert!(center(&s3).is_trivial());
        assert!(centralizer(&s3, &[p("()", 3)]).unwrap().is_whole());
        assert_eq!(center(&s4.whole().to_group()).order(), 1);
        assert_eq!(center(&d8.to_group()).order(), 2);
    }

    #[test]
    fn closure_and_core() {
        let s3 = sym(3);
        let h = sub(&s3, &["(1 2)"]);
        assert!(normal_closure(&s3, &h).unwrap().is_whole());
        assert!(core(&s3, &h).unwrap().is_trivial());
        let a3 = sub(&s3, &["(1 2 3)"]);
        assert_eq!(core(&s3, &a3).unwrap(), a3);
        assert_eq!(normal_closure(&s3, &a3).unwrap(), a3);
    }

    #[test]
    fn normality_and_subnormality() {
        let s4 = sym(4);
        let v4 = sub(&s4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        assert!(is_normal(&v4, &s4).unwrap());
        assert!(is_subnormal(&v4, &s4).unwrap());

        let a4 = sub(&s4, &["(1 2 3)", "(1 2)(3 4)"]).to_group();
        let h = sub(&a4, &["(1 2)(3 4)"]);
        assert!(!is_normal(&h, &a4).unwrap());
        assert!(is_subnormal(&h, &a4).unwrap());

        let s3 = sym(3);
        assert!(!is_subnormal(&sub(&s3, &["(1 2)"]), &s3).unwrap());
    }

    #[test]
    fn transport_between_groups() {
        let s4 = sym(4);
        let a4_sub = sub(&s4, &["(1 2 3)", "(1 2)(3 4)"]);
        let a4 = a4_sub.to_group();
        assert_eq!(a4.order(), 12);
        let h = sub(&a4, &["(1 2)(3 4)"]);
        let back = h.transport(&s4).unwrap();
        assert_eq!(back.order(), 2);
        assert!(back.is_subgroup_of(&a4_sub));
        let t = sub(&s4, &["(1 2)"]);
        assert!(t.transport(&a4).is_err());
    }
}
