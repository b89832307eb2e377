//! Subgroup embedding properties.
//!
//! Each check returns an [`EmbeddingVerdict`] whose witness can be re-checked
//! independently: the Sylow subgroup that fails to permute, the supplement
//! that was found, or the conjugating element at which the defining
//! condition breaks.

use std::fmt;
use std::str::FromStr;

use crate::error::{GroupError, Result};
use crate::group::Group;
use crate::lattice::all_subgroups;
use crate::perm::Permutation;
use crate::structure::{all_normal_subgroups, sylow_conjugates};
use crate::subgroup::{self, product_order, Subgroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Embedding {
    SPermutable,
    SSemipermutable,
    Pronormal,
    CSupplemented,
    HSubgroup,
    WeaklyHSubgroup,
}

impl Embedding {
    pub const ALL: [Embedding; 6] = [
        Embedding::SPermutable,
        Embedding::SSemipermutable,
        Embedding::Pronormal,
        Embedding::CSupplemented,
        Embedding::HSubgroup,
        Embedding::WeaklyHSubgroup,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Embedding::SPermutable => "s-permutable",
            Embedding::SSemipermutable => "s-semipermutable",
            Embedding::Pronormal => "pronormal",
            Embedding::CSupplemented => "c-supplemented",
            Embedding::HSubgroup => "h-subgroup",
            Embedding::WeaklyHSubgroup => "weakly-h-subgroup",
        }
    }

    pub fn check(self, h: &Subgroup, group: &Group) -> Result<EmbeddingVerdict> {
        match self {
            Embedding::SPermutable => is_s_permutable(h, group),
            Embedding::SSemipermutable => is_s_semipermutable(h, group),
            Embedding::Pronormal => is_pronormal(h, group),
            Embedding::CSupplemented => is_c_supplemented(h, group),
            Embedding::HSubgroup => is_h_subgroup(h, group),
            Embedding::WeaklyHSubgroup => is_weakly_h_subgroup(h, group),
        }
    }
}

impl fmt::Display for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Embedding {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Embedding::ALL
            .into_iter()
            .find(|e| e.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown embedding predicate {s:?}"))
    }
}

#[derive(Debug, Clone)]
pub enum EmbeddingWitness {
    /// A universally quantified condition held everywhere.
    Universal,
    /// No supplement of the required kind exists.
    NoSupplement,
    NonPermutingSylow {
        prime: u64,
        sylow: Subgroup,
    },
    Supplement(Subgroup),
    Conjugator(Permutation),
}

impl fmt::Display for EmbeddingWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmbeddingWitness::Universal => f.write_str("holds for every instance"),
            EmbeddingWitness::NoSupplement => f.write_str("no suitable supplement"),
            EmbeddingWitness::NonPermutingSylow { prime, sylow } => {
                write!(f, "does not permute with Sylow {prime}-subgroup {sylow}")
            }
            EmbeddingWitness::Supplement(k) => write!(f, "supplement {k}"),
            EmbeddingWitness::Conjugator(g) => write!(f, "fails at g = {g}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct EmbeddingVerdict {
    pub predicate: Embedding,
    pub subgroup_order: usize,
    pub group_order: usize,
    pub holds: bool,
    pub witness: EmbeddingWitness,
}

impl EmbeddingVerdict {
    fn new(predicate: Embedding, h: &Subgroup, holds: bool, witness: EmbeddingWitness) -> Self {
        EmbeddingVerdict {
            predicate,
            subgroup_order: h.order(),
            group_order: h.parent().order(),
            holds,
            witness,
        }
    }

    /// Re-derives the boolean from the witness by direct recomputation.
    pub fn revalidate(&self, h: &Subgroup, group: &Group) -> Result<bool> {
        check_parent(h, group)?;
        let fresh = match &self.witness {
            EmbeddingWitness::NonPermutingSylow { prime, sylow } => {
                let is_sylow = sylow.order() as u64
                    == crate::arith::p_part(group.order() as u64, *prime)
                    && sylow.is_p_group(*prime);
                let relevant =
                    self.predicate == Embedding::SPermutable || !(h.order() as u64).is_multiple_of(*prime);
                is_sylow && relevant && !subgroup::permutes(h, sylow)?
            }
            EmbeddingWitness::Supplement(k) => match self.predicate {
                Embedding::CSupplemented => {
                    let core = subgroup::core(group, h)?;
                    product_order(h, k) == group.order() && h.intersection(k).is_subgroup_of(&core)
                }
                Embedding::WeaklyHSubgroup => {
                    subgroup::is_normal(k, group)?
                        && product_order(h, k) == group.order()
                        && is_h_subgroup(&h.intersection(k), group)?.holds
                }
                _ => return Ok(false),
            },
            EmbeddingWitness::Conjugator(g) => {
                let gi = group
                    .index_of(g)
                    .ok_or_else(|| GroupError::NotInParent(g.to_string()))?;
                let hg = h.conjugate_by_index(gi);
                match self.predicate {
                    Embedding::Pronormal => !conjugate_within_join(h, &hg),
                    Embedding::HSubgroup => {
                        let n = subgroup::normalizer(group, h)?;
                        n.intersection(&hg).is_subgroup_of(h)
                    }
                    _ => return Ok(false),
                }
            }
            EmbeddingWitness::Universal | EmbeddingWitness::NoSupplement => {
                self.predicate.check(h, group)?.holds
            }
        };
        Ok(match &self.witness {
            EmbeddingWitness::Conjugator(_) if self.predicate == Embedding::HSubgroup => {
                !self.holds && !fresh
            }
            EmbeddingWitness::NonPermutingSylow { .. } | EmbeddingWitness::Conjugator(_) => {
                !self.holds && fresh
            }
            EmbeddingWitness::Supplement(_) => self.holds && fresh,
            _ => fresh == self.holds,
        })
    }
}

fn check_parent(h: &Subgroup, group: &Group) -> Result<()> {
    if h.parent().same_as(group) {
        Ok(())
    } else {
        Err(GroupError::MismatchedParents)
    }
}

fn sylow_scan(h: &Subgroup, group: &Group, pred: Embedding) -> Result<EmbeddingVerdict> {
    check_parent(h, group)?;
    for q in group.prime_divisors() {
        if pred == Embedding::SSemipermutable && (h.order() as u64).is_multiple_of(q) {
            continue;
        }
        for sylow in sylow_conjugates(group, q)? {
            if !subgroup::permutes_unchecked(h, &sylow) {
                return Ok(EmbeddingVerdict::new(
                    pred,
                    h,
                    false,
                    EmbeddingWitness::NonPermutingSylow { prime: q, sylow },
                ));
            }
        }
    }
    Ok(EmbeddingVerdict::new(
        pred,
        h,
        true,
        EmbeddingWitness::Universal,
    ))
}

/// `H` permutes with every Sylow subgroup of `G`.
pub fn is_s_permutable(h: &Subgroup, group: &Group) -> Result<EmbeddingVerdict> {
    sylow_scan(h, group, Embedding::SPermutable)
}

/// `H` permutes with every Sylow `q`-subgroup for each prime `q ∤ |H|`.
pub fn is_s_semipermutable(h: &Subgroup, group: &Group) -> Result<EmbeddingVerdict> {
    sylow_scan(h, group, Embedding::SSemipermutable)
}

/// Distinct conjugates of `h`, each with one conjugating element.
fn conjugates_with_elements(h: &Subgroup) -> Vec<(Subgroup, u32)> {
    let g = h.parent();
    let mut seen = std::collections::HashSet::new();
    seen.insert(h.bits().clone());
    let mut out = vec![(h.clone(), g.identity())];
    let mut i = 0;
    while i < out.len() {
        let (cur, x) = out[i].clone();
        i += 1;
        for &a in g.generator_indices() {
            let c = cur.conjugate_by_index(a);
            if seen.insert(c.bits().clone()) {
                out.push((c, g.mul(x, a)));
            }
        }
    }
    out
}

/// Is `hg` a conjugate of `h` by some element of `⟨h, hg⟩`?
fn conjugate_within_join(h: &Subgroup, hg: &Subgroup) -> bool {
    if h == hg {
        return true;
    }
    let g = h.parent();
    let join = h.join(hg);
    let found = join.indices().any(|x| {
        h.generator_indices()
            .iter()
            .all(|&y| hg.contains_index(g.conj(y, x)))
    });
    found
}

/// `H` and `H^g` are conjugate in `⟨H, H^g⟩` for every `g`.
pub fn is_pronormal(h: &Subgroup, group: &Group) -> Result<EmbeddingVerdict> {
    check_parent(h, group)?;
    for (hg, g) in conjugates_with_elements(h) {
        if !conjugate_within_join(h, &hg) {
            return Ok(EmbeddingVerdict::new(
                Embedding::Pronormal,
                h,
                false,
                EmbeddingWitness::Conjugator(group.element(g).clone()),
            ));
        }
    }
    Ok(EmbeddingVerdict::new(
        Embedding::Pronormal,
        h,
        true,
        EmbeddingWitness::Universal,
    ))
}

/// Some `K ≤ G` has `G = HK` and `H ∩ K ≤ H_G`.
pub fn is_c_supplemented(h: &Subgroup, group: &Group) -> Result<EmbeddingVerdict> {
    check_parent(h, group)?;
    let order = group.order();
    let core = subgroup::core(group, h)?;
    // a normal H is supplemented by G itself; skip the lattice in that case
    let found = if core.order() == h.order() {
        Some(group.whole())
    } else {
        all_subgroups(group)?
            .into_iter()
            .filter(|k| (h.order() * k.order()).is_multiple_of(order))
            .find(|k| product_order(h, k) == order && h.intersection(k).is_subgroup_of(&core))
    };
    let (holds, witness) = match found {
        Some(k) => (true, EmbeddingWitness::Supplement(k)),
        None => (false, EmbeddingWitness::NoSupplement),
    };
    Ok(EmbeddingVerdict::new(
        Embedding::CSupplemented,
        h,
        holds,
        witness,
    ))
}

/// `N_G(H) ∩ H^g ≤ H` for every `g`.
pub fn is_h_subgroup(h: &Subgroup, group: &Group) -> Result<EmbeddingVerdict> {
    check_parent(h, group)?;
    let n = subgroup::normalizer(group, h)?;
    for (hg, g) in conjugates_with_elements(h) {
        if hg
            .indices()
            .any(|x| n.contains_index(x) && !h.contains_index(x))
        {
            return Ok(EmbeddingVerdict::new(
                Embedding::HSubgroup,
                h,
                false,
                EmbeddingWitness::Conjugator(group.element(g).clone()),
            ));
        }
    }
    Ok(EmbeddingVerdict::new(
        Embedding::HSubgroup,
        h,
        true,
        EmbeddingWitness::Universal,
    ))
}

/// Some normal `K` has `G = HK` with `H ∩ K` an H-subgroup of `G`.
pub fn is_weakly_h_subgroup(h: &Subgroup, group: &Group) -> Result<EmbeddingVerdict> {
    check_parent(h, group)?;
    for k in all_normal_subgroups(group) {
        if product_order(h, &k) != group.order() {
            continue;
        }
        if is_h_subgroup(&h.intersection(&k), group)?.holds {
            return Ok(EmbeddingVerdict::new(
                Embedding::WeaklyHSubgroup,
                h,
                true,
                EmbeddingWitness::Supplement(k),
            ));
        }
    }
    Ok(EmbeddingVerdict::new(
        Embedding::WeaklyHSubgroup,
        h,
        false,
        EmbeddingWitness::NoSupplement,
    ))
}
