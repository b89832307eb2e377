//! Subgroup lattice enumeration.
//!
//! Seeds with every cyclic subgroup, then repeatedly joins each known
//! subgroup with a cyclic subgroup outside it until no new subgroup appears.
//! Every subgroup is a join of cyclic subgroups, so the fixpoint is the full
//! lattice. Results are cached on the group.

use std::collections::HashSet;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{GroupError, Result};
use crate::group::Group;
use crate::subgroup::{Subgroup, SubgroupData};

fn check_budget(group: &Group) -> Result<()> {
    let budget = group.limits().enumeration;
    if group.order() > budget {
        return Err(GroupError::EnumerationTooLarge {
            order: group.order(),
            budget,
        });
    }
    Ok(())
}

/// Distinct cyclic subgroups with one generator each.
pub(crate) fn cyclic_subgroups(group: &Group) -> Vec<(FixedBitSet, u32)> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for x in 0..group.order() as u32 {
        let bits = group.closure_of(&[x]);
        if seen.insert(bits.clone()) {
            out.push((bits, x));
        }
    }
    out
}

fn enumerate(group: &Group) -> Result<Arc<Vec<SubgroupData>>> {
    check_budget(group)?;
    let cyclics = cyclic_subgroups(group);
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut found: Vec<SubgroupData> = Vec::new();
    for (bits, x) in &cyclics {
        seen.insert(bits.clone());
        let gens = if *x == group.identity() {
            vec![]
        } else {
            vec![*x]
        };
        found.push(SubgroupData {
            bits: bits.clone(),
            gens,
        });
    }
    let mut head = 0;
    while head < found.len() {
        let cur = found[head].clone();
        head += 1;
        for (cbits, x) in &cyclics {
            if cbits.is_subset(&cur.bits) {
                continue;
            }
            let mut gens = cur.gens.clone();
            gens.push(*x);
            let bits = group.close(&cur.bits, &gens);
            if seen.insert(bits.clone()) {
                found.push(SubgroupData { bits, gens });
            }
        }
    }
    let mut subs: Vec<Subgroup> = found
        .iter()
        .map(|d| Subgroup::from_data(group, d))
        .collect();
    subs.sort_by(|a, b| a.canonical_cmp(b));
    Ok(Arc::new(subs.iter().map(Subgroup::to_data).collect()))
}

/// Every subgroup, ascending by order then canonical element-set order.
pub fn all_subgroups(group: &Group) -> Result<Vec<Subgroup>> {
    let data = group
        .cache()
        .lattice
        .get_or_init(|| enumerate(group))
        .clone()?;
    Ok(data.iter().map(|d| Subgroup::from_data(group, d)).collect())
}

/// Subgroups of order `m` (empty when `m` does not divide the group order).
pub fn subgroups_of_order(group: &Group, m: usize) -> Result<Vec<Subgroup>> {
    if m == 0 || !group.order().is_multiple_of(m) {
        return Ok(Vec::new());
    }
    if m == 1 {
        return Ok(vec![group.trivial_subgroup()]);
    }
    if m == group.order() {
        return Ok(vec![group.whole()]);
    }
    Ok(all_subgroups(group)?
        .into_iter()
        .filter(|s| s.order() == m)
        .collect())
}

/// Proper subgroups not contained in a larger proper subgroup.
pub fn maximal_subgroups(group: &Group) -> Result<Vec<Subgroup>> {
    let all = all_subgroups(group)?;
    let proper: Vec<&Subgroup> = all.iter().filter(|s| !s.is_whole()).collect();
    Ok(proper
        .iter()
        .filter(|s| {
            !proper
                .iter()
                .any(|t| t.order() > s.order() && s.is_subgroup_of(t))
        })
        .map(|s| (*s).clone())
        .collect())
}
