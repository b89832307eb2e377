//! Structural operators: Sylow subgroups, quotients, characteristic
//! subgroups and series.

use std::collections::HashSet;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::arith;
use crate::error::{GroupError, Result};
use crate::group::{Group, TABLE_LIMIT};
use crate::lattice::maximal_subgroups;
use crate::perm::Permutation;
use crate::subgroup::{self, Subgroup};

fn check_prime(p: u64) -> Result<()> {
    if arith::is_prime(p) {
        Ok(())
    } else {
        Err(GroupError::NotPrime(p))
    }
}

/// Subgroup generated by `candidates`, adding a generator only when it is
/// not already in the span.
pub(crate) fn span(group: &Group, candidates: impl IntoIterator<Item = u32>) -> Subgroup {
    let mut bits = group.empty_set();
    bits.insert(group.identity() as usize);
    let mut gens = Vec::new();
    for x in candidates {
        if !bits.contains(x as usize) {
            gens.push(x);
            bits = group.close(&bits, &gens);
        }
    }
    Subgroup::from_parts(group.clone(), bits, gens)
}

// ---------------------------------------------------------------------------
// Sylow subgroups

/// A Sylow `p`-subgroup, grown one `p`-element of the normalizer at a time.
pub fn sylow_subgroup(group: &Group, p: u64) -> Result<Subgroup> {
    check_prime(p)?;
    let target = arith::p_part(group.order() as u64, p) as usize;
    let mut s = group.trivial_subgroup();
    while s.order() < target {
        let n = subgroup::normalizer(group, &s)?;
        let x = n
            .indices()
            .find(|&x| !s.contains_index(x) && arith::is_power_of(group.element_order(x), p))
            .expect("a p-subgroup below the p-part has a p-element in its normalizer outside it");
        s = s.join(&group.subgroup_from_indices(&[x]));
    }
    Ok(s)
}

/// All Sylow `p`-subgroups in canonical order.
pub fn sylow_conjugates(group: &Group, p: u64) -> Result<Vec<Subgroup>> {
    check_prime(p)?;
    let Some((_, cell)) = group.cache().sylows.iter().find(|(q, _)| *q == p) else {
        return Ok(vec![group.trivial_subgroup()]);
    };
    if let Some(data) = cell.get() {
        return Ok(data.iter().map(|d| Subgroup::from_data(group, d)).collect());
    }
    let mut all = subgroup::conjugates(&sylow_subgroup(group, p)?);
    all.sort_by(|a, b| a.canonical_cmp(b));
    let data = cell.get_or_init(|| Arc::new(all.iter().map(Subgroup::to_data).collect()));
    Ok(data.iter().map(|d| Subgroup::from_data(group, d)).collect())
}

// ---------------------------------------------------------------------------
// Quotients

/// `G/N` realized as the right-translation action on the cosets of `N`.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    group: Group,
    kernel: Subgroup,
    projection: Vec<u32>,
    reps: Vec<u32>,
}

impl QuotientGroup {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    /// Image of the parent element with the given index.
    pub fn project(&self, index: u32) -> u32 {
        self.projection[index as usize]
    }

    pub fn project_element(&self, p: &Permutation) -> Option<&Permutation> {
        let i = self.kernel.parent().index_of(p)?;
        Some(self.group.element(self.project(i)))
    }

    /// A parent element mapping to the given quotient element.
    pub fn representative(&self, q: u32) -> u32 {
        self.reps[q as usize]
    }

    /// `HN/N`.
    pub fn image(&self, h: &Subgroup) -> Subgroup {
        debug_assert!(h.same_parent(&self.kernel));
        let mut bits = self.group.empty_set();
        for x in h.indices() {
            bits.insert(self.project(x) as usize);
        }
        let gens = h
            .generator_indices()
            .iter()
            .map(|&g| self.project(g))
            .collect();
        Subgroup::from_parts(self.group.clone(), bits, gens)
    }

    /// Full preimage of a subgroup of the quotient.
    pub fn preimage(&self, s: &Subgroup) -> Subgroup {
        let parent = self.kernel.parent();
        let mut bits = parent.empty_set();
        for (e, &q) in self.projection.iter().enumerate() {
            if s.contains_index(q) {
                bits.insert(e);
            }
        }
        let mut gens = self.kernel.generator_indices().to_vec();
        gens.extend(
            s.generator_indices()
                .iter()
                .map(|&q| self.representative(q)),
        );
        Subgroup::from_parts(parent.clone(), bits, gens)
    }
}

pub fn quotient(group: &Group, n: &Subgroup) -> Result<QuotientGroup> {
    if !subgroup::is_normal(n, group)? {
        return Err(GroupError::NotNormal);
    }
    let order = group.order();
    let mut coset_of = vec![u32::MAX; order];
    let mut coset_reps: Vec<u32> = Vec::new();
    for e in 0..order as u32 {
        if coset_of[e as usize] != u32::MAX {
            continue;
        }
        let c = coset_reps.len() as u32;
        coset_reps.push(e);
        for k in n.indices() {
            coset_of[group.mul(k, e) as usize] = c;
        }
    }
    let m = coset_reps.len();
    let perms: Vec<Permutation> = coset_reps
        .iter()
        .map(|&r| {
            Permutation::from_images_unchecked(
                coset_reps
                    .iter()
                    .map(|&d| coset_of[group.mul(d, r) as usize])
                    .collect(),
            )
        })
        .collect();
    let mut sorted: Vec<usize> = (0..m).collect();
    sorted.sort_by(|&a, &b| perms[a].cmp(&perms[b]));
    let mut position = vec![0u32; m];
    for (pos, &c) in sorted.iter().enumerate() {
        position[c] = pos as u32;
    }
    let elements: Vec<Permutation> = sorted.iter().map(|&c| perms[c].clone()).collect();
    let reps: Vec<u32> = sorted.iter().map(|&c| coset_reps[c]).collect();
    let projection: Vec<u32> = coset_of.iter().map(|&c| position[c as usize]).collect();
    let table = (m <= TABLE_LIMIT).then(|| {
        let mut t = Vec::with_capacity(m * m);
        for &a in &reps {
            for &b in &reps {
                t.push(projection[group.mul(a, b) as usize]);
            }
        }
        t.into_boxed_slice()
    });
    let gens = group
        .generator_indices()
        .iter()
        .map(|&g| projection[g as usize])
        .collect();
    let qgroup = Group::from_parts(m, elements, gens, group.limits(), table);
    Ok(QuotientGroup {
        group: qgroup,
        kernel: n.clone(),
        projection,
        reps,
    })
}

// ---------------------------------------------------------------------------
// Series

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    /// Descending: `G > G' > G'' > …`.
    Derived,
    /// Ascending: `1 = Z_0 < Z_1 < …`.
    UpperCentral,
    /// Ascending: `1 = N_0 < N_1 < … < G`.
    Chief,
}

#[derive(Debug, Clone)]
pub struct SeriesRecord {
    pub kind: SeriesKind,
    pub terms: Vec<Subgroup>,
}

impl SeriesRecord {
    pub fn orders(&self) -> Vec<usize> {
        self.terms.iter().map(Subgroup::order).collect()
    }

    /// Orders of the successive factors, in series order.
    pub fn factor_orders(&self) -> Vec<usize> {
        self.terms
            .windows(2)
            .map(|w| match self.kind {
                SeriesKind::Derived => w[0].order() / w[1].order(),
                SeriesKind::UpperCentral | SeriesKind::Chief => w[1].order() / w[0].order(),
            })
            .collect()
    }

    pub fn last(&self) -> &Subgroup {
        self.terms.last().expect("series has at least one term")
    }
}

/// `⟨[x, y]⟩`, computed as the normal closure of generator commutators.
pub fn derived_subgroup(group: &Group) -> Subgroup {
    let gens = group.generator_indices();
    let comms = gens
        .iter()
        .flat_map(|&a| gens.iter().map(move |&b| (a, b)))
        .map(|(a, b)| group.commutator(a, b));
    let seed = span(group, comms.collect::<Vec<_>>());
    subgroup::normal_closure_within(&group.whole(), &seed)
}

pub fn derived_series(group: &Group) -> SeriesRecord {
    let mut terms = vec![group.whole()];
    let mut cur = group.clone();
    loop {
        let d = derived_subgroup(&cur);
        if d.order() == cur.order() {
            break;
        }
        terms.push(
            d.transport(group)
                .expect("derived subgroup lies in the group"),
        );
        cur = d.to_group();
    }
    SeriesRecord {
        kind: SeriesKind::Derived,
        terms,
    }
}

/// `Z_{i+1} = {x : [x, g] ∈ Z_i for all g}` until it stops growing.
pub fn upper_central_series(group: &Group) -> SeriesRecord {
    let mut terms = vec![group.trivial_subgroup()];
    loop {
        let cur = terms.last().unwrap();
        let mut bits = group.empty_set();
        for x in 0..group.order() as u32 {
            if group
                .generator_indices()
                .iter()
                .all(|&g| cur.contains_index(group.commutator(x, g)))
            {
                bits.insert(x as usize);
            }
        }
        if bits.count_ones(..) == cur.order() {
            break;
        }
        terms.push(Subgroup::from_closed_bits(group, bits));
    }
    SeriesRecord {
        kind: SeriesKind::UpperCentral,
        terms,
    }
}

/// Index at which the upper central series reaches the group, if it does.
pub fn nilpotency_class(group: &Group) -> Option<usize> {
    let series = upper_central_series(group);
    series.last().is_whole().then(|| series.terms.len() - 1)
}

/// Intersection of all maximal subgroups (the group itself when trivial).
pub fn frattini(group: &Group) -> Result<Subgroup> {
    let maxes = maximal_subgroups(group)?;
    let mut bits = group.full_set();
    for m in &maxes {
        bits.intersect_with(m.bits());
    }
    Ok(Subgroup::from_closed_bits(group, bits))
}

// ---------------------------------------------------------------------------
// Normal structure

/// Conjugacy classes, each listed from its smallest element index.
pub fn conjugacy_classes(group: &Group) -> Vec<Vec<u32>> {
    let data = group.cache().classes.get_or_init(|| {
        let mut assigned = vec![false; group.order()];
        let mut classes = Vec::new();
        for x in 0..group.order() as u32 {
            if assigned[x as usize] {
                continue;
            }
            assigned[x as usize] = true;
            let mut class = vec![x];
            let mut i = 0;
            while i < class.len() {
                let y = class[i];
                i += 1;
                for &g in group.generator_indices() {
                    let z = group.conj(y, g);
                    if !assigned[z as usize] {
                        assigned[z as usize] = true;
                        class.push(z);
                    }
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        Arc::new(classes)
    });
    data.as_ref().clone()
}

/// Distinct normal closures `⟨x⟩^G` of nontrivial elements.
fn element_normal_closures(group: &Group) -> Vec<Subgroup> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for class in conjugacy_classes(group) {
        if class[0] == group.identity() {
            continue;
        }
        let n = span(group, class);
        if seen.insert(n.bits().clone()) {
            out.push(n);
        }
    }
    out.sort_by(|a, b| a.canonical_cmp(b));
    out
}

/// All normal subgroups, canonical order.
pub fn all_normal_subgroups(group: &Group) -> Vec<Subgroup> {
    let data = group.cache().normal_subgroups.get_or_init(|| {
        let mut list = vec![group.trivial_subgroup()];
        list.extend(element_normal_closures(group));
        let mut seen: HashSet<FixedBitSet> = list.iter().map(|s| s.bits().clone()).collect();
        let mut i = 0;
        while i < list.len() {
            for j in 0..i {
                let joined = list[i].join(&list[j]);
                if seen.insert(joined.bits().clone()) {
                    list.push(joined);
                }
            }
            i += 1;
        }
        list.sort_by(|a, b| a.canonical_cmp(b));
        Arc::new(list.iter().map(Subgroup::to_data).collect())
    });
    data.iter().map(|d| Subgroup::from_data(group, d)).collect()
}

pub fn minimal_normal_subgroups(group: &Group) -> Vec<Subgroup> {
    let closures = element_normal_closures(group);
    closures
        .iter()
        .filter(|n| {
            !closures
                .iter()
                .any(|m| m.order() < n.order() && m.is_subgroup_of(n))
        })
        .cloned()
        .collect()
}

/// Normal subgroups minimal among those properly containing `below`.
pub(crate) fn minimal_normal_above(group: &Group, below: &Subgroup) -> Vec<Subgroup> {
    let above: Vec<Subgroup> = all_normal_subgroups(group)
        .into_iter()
        .filter(|n| n.order() > below.order() && below.is_subgroup_of(n))
        .collect();
    above
        .iter()
        .filter(|n| {
            !above
                .iter()
                .any(|m| m.order() < n.order() && m.is_subgroup_of(n))
        })
        .cloned()
        .collect()
}

/// Ascending chief series taking the canonically first choice at each step.
pub fn chief_series(group: &Group) -> SeriesRecord {
    chief_series_by(group, |_| 0)
}

/// Ascending chief series; `choose` picks among the available minimal steps.
pub fn chief_series_by(group: &Group, choose: impl Fn(&[Subgroup]) -> usize) -> SeriesRecord {
    let mut terms = vec![group.trivial_subgroup()];
    while !terms.last().unwrap().is_whole() {
        let options = minimal_normal_above(group, terms.last().unwrap());
        let pick = choose(&options).min(options.len() - 1);
        terms.push(options[pick].clone());
    }
    SeriesRecord {
        kind: SeriesKind::Chief,
        terms,
    }
}

fn join_normal_closures(group: &Group, keep: impl Fn(&Subgroup) -> bool) -> Subgroup {
    element_normal_closures(group)
        .into_iter()
        .filter(|n| keep(n))
        .fold(group.trivial_subgroup(), |acc, n| acc.join(&n))
}

/// Largest normal `p`-subgroup.
pub fn o_p(group: &Group, p: u64) -> Result<Subgroup> {
    check_prime(p)?;
    Ok(join_normal_closures(group, |n| n.is_p_group(p)))
}

/// Largest normal subgroup of order coprime to `p`.
pub fn o_p_prime(group: &Group, p: u64) -> Result<Subgroup> {
    check_prime(p)?;
    Ok(join_normal_closures(group, |n| !(n.order() as u64).is_multiple_of(p)))
}

/// Smallest normal subgroup with `p`-group quotient: the span of all
/// elements of order coprime to `p`.
pub fn o_upper_p(group: &Group, p: u64) -> Result<Subgroup> {
    check_prime(p)?;
    let res = span(
        group,
        (0..group.order() as u32).filter(|&x| !group.element_order(x).is_multiple_of(p)),
    );
    debug_assert!(subgroup::is_normal_within(&res, &group.whole()));
    debug_assert_eq!(
        subgroup::product_order(&sylow_subgroup(group, p)?, &res),
        group.order()
    );
    Ok(res)
}

/// Ascending construction: repeatedly adjoin every normal `N` sitting above the
/// current term with prime index `|N : Z|`, i.e. the preimages of the
/// prime-order minimal normal subgroups of the current quotient.
pub fn supersolvable_hypercentre(group: &Group) -> Subgroup {
    let mut cur = group.trivial_subgroup();
    loop {
        let normals = all_normal_subgroups(group);
        let steps: Vec<&Subgroup> = normals
            .iter()
            .filter(|n| {
                n.order() > cur.order()
                    && cur.is_subgroup_of(n)
                    && arith::is_prime((n.order() / cur.order()) as u64)
            })
            .collect();
        if steps.is_empty() {
            return cur;
        }
        cur = steps.iter().fold(cur.clone(), |acc, n| acc.join(n));
    }
}
