//! Fully materialized finite permutation groups.
//!
//! A [`Group`] stores every element, sorted lexicographically by image array,
//! so an element is identified by its index. Products are served from a
//! multiplication table for groups up to [`TABLE_LIMIT`] elements and by
//! composing and looking up otherwise.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;

use crate::arith;
use crate::error::{GroupError, Result};
use crate::perm::Permutation;
use crate::subgroup::{Subgroup, SubgroupData};

pub const DEFAULT_ELEMENT_BUDGET: usize = 200_000;
pub const DEFAULT_ENUMERATION_BUDGET: usize = 2_000;
/// Environment variable overriding the default element budget.
pub const BUDGET_ENV: &str = "GROUPLAB_BUDGET";
/// Largest order for which a full multiplication table is kept.
pub const TABLE_LIMIT: usize = 2048;

/// Element budget for closures and order budget for subgroup-lattice work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub elements: usize,
    pub enumeration: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            elements: DEFAULT_ELEMENT_BUDGET,
            enumeration: DEFAULT_ENUMERATION_BUDGET,
        }
    }
}

impl Limits {
    /// Defaults, with the element budget taken from `GROUPLAB_BUDGET` when set.
    pub fn from_env() -> std::result::Result<Self, String> {
        let mut limits = Limits::default();
        if let Ok(raw) = std::env::var(BUDGET_ENV) {
            limits.elements = raw
                .trim()
                .parse()
                .map_err(|_| format!("{BUDGET_ENV} must be a positive integer, got {raw:?}"))?;
        }
        Ok(limits)
    }
}

#[derive(Default)]
pub(crate) struct GroupCache {
    pub lattice: OnceLock<Result<Arc<Vec<SubgroupData>>>>,
    pub normal_subgroups: OnceLock<Arc<Vec<SubgroupData>>>,
    pub classes: OnceLock<Arc<Vec<Vec<u32>>>>,
    pub sylows: Vec<(u64, OnceLock<Arc<Vec<SubgroupData>>>)>,
}

struct GroupData {
    degree: usize,
    elements: Vec<Permutation>,
    generators: Vec<u32>,
    identity: u32,
    limits: Limits,
    table: OnceLock<Box<[u32]>>,
    inverses: OnceLock<Box<[u32]>>,
    element_orders: OnceLock<Box<[u64]>>,
    cache: GroupCache,
}

/// A finite permutation group with every element enumerated.
///
/// Cloning is cheap; clones share elements, tables and caches.
#[derive(Clone)]
pub struct Group {
    data: Arc<GroupData>,
}

impl Group {
    /// Closure of `generators` under composition, with default limits.
    pub fn generate(generators: &[Permutation], degree: usize) -> Result<Group> {
        Self::generate_with_limits(generators, degree, Limits::default())
    }

    pub fn generate_with_limits(
        generators: &[Permutation],
        degree: usize,
        limits: Limits,
    ) -> Result<Group> {
        for g in generators {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let identity = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(identity.clone());
        queue.push_back(identity);
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y = x.compose(g);
                if !seen.contains(&y) {
                    if seen.len() >= limits.elements {
                        return Err(GroupError::GroupTooLarge {
                            budget: limits.elements,
                        });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort();
        let gens = generators
            .iter()
            .map(|g| elements.binary_search(g).expect("generator in closure") as u32)
            .collect();
        Ok(Self::from_parts(degree, elements, gens, limits, None))
    }

    pub fn trivial(degree: usize) -> Group {
        Self::from_parts(
            degree,
            vec![Permutation::identity(degree)],
            Vec::new(),
            Limits::default(),
            None,
        )
    }

    /// `elements` must be sorted, closed and duplicate-free.
    pub(crate) fn from_parts(
        degree: usize,
        elements: Vec<Permutation>,
        generators: Vec<u32>,
        limits: Limits,
        table: Option<Box<[u32]>>,
    ) -> Group {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        let identity = elements
            .binary_search(&Permutation::identity(degree))
            .expect("identity in group") as u32;
        let mut generators: Vec<u32> = generators.into_iter().filter(|&g| g != identity).collect();
        let mut seen = HashSet::new();
        generators.retain(|g| seen.insert(*g));
        let order = elements.len() as u64;
        let cache = GroupCache {
            sylows: arith::prime_divisors(order)
                .into_iter()
                .map(|p| (p, OnceLock::new()))
                .collect(),
            ..GroupCache::default()
        };
        let table_cell = OnceLock::new();
        if let Some(t) = table {
            debug_assert_eq!(t.len(), elements.len() * elements.len());
            let _ = table_cell.set(t);
        }
        Group {
            data: Arc::new(GroupData {
                degree,
                elements,
                generators,
                identity,
                limits,
                table: table_cell,
                inverses: OnceLock::new(),
                element_orders: OnceLock::new(),
                cache,
            }),
        }
    }

    pub fn degree(&self) -> usize {
        self.data.degree
    }

    pub fn order(&self) -> usize {
        self.data.elements.len()
    }

    pub fn limits(&self) -> Limits {
        self.data.limits
    }

    /// Elements in canonical (lexicographic) order.
    pub fn elements(&self) -> &[Permutation] {
        &self.data.elements
    }

    pub fn element(&self, index: u32) -> &Permutation {
        &self.data.elements[index as usize]
    }

    pub fn generators(&self) -> Vec<Permutation> {
        self.data
            .generators
            .iter()
            .map(|&g| self.element(g).clone())
            .collect()
    }

    pub fn generator_indices(&self) -> &[u32] {
        &self.data.generators
    }

    pub fn identity(&self) -> u32 {
        self.data.identity
    }

    pub fn index_of(&self, p: &Permutation) -> Option<u32> {
        if p.degree() != self.degree() {
            return None;
        }
        self.data.elements.binary_search(p).ok().map(|i| i as u32)
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index_of(p).is_some()
    }

    /// Same underlying group object (not merely equal element sets).
    pub fn same_as(&self, other: &Group) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub(crate) fn cache(&self) -> &GroupCache {
        &self.data.cache
    }

    fn table(&self) -> Option<&[u32]> {
        let n = self.order();
        if n > TABLE_LIMIT {
            return None;
        }
        Some(self.data.table.get_or_init(|| {
            let elems = &self.data.elements;
            let mut t = Vec::with_capacity(n * n);
            for a in elems {
                for b in elems {
                    let c = a.compose(b);
                    t.push(elems.binary_search(&c).expect("group closed") as u32);
                }
            }
            t.into_boxed_slice()
        }))
    }

    pub(crate) fn table_if_built(&self) -> Option<&[u32]> {
        self.data.table.get().map(|t| &t[..])
    }

    /// Product `a * b` (apply `a`, then `b`).
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match self.table() {
            Some(t) => t[a as usize * self.order() + b as usize],
            None => {
                let c = self.element(a).compose(self.element(b));
                self.index_of(&c).expect("group closed")
            }
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.data.inverses.get_or_init(|| {
            (0..self.order() as u32)
                .map(|i| {
                    self.index_of(&self.element(i).inverse())
                        .expect("group closed")
                })
                .collect()
        })[a as usize]
    }

    /// `g^-1 h g`.
    #[inline]
    pub fn conj(&self, h: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), h), g)
    }

    /// `a^-1 b^-1 a b`.
    #[inline]
    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn element_order(&self, a: u32) -> u64 {
        self.data.element_orders.get_or_init(|| {
            (0..self.order() as u32)
                .map(|i| self.element(i).order())
                .collect()
        })[a as usize]
    }

    /// Subgroup generated by `seed ∪ gens`, where `seed` is already a subgroup
    /// contained in that span.
    pub(crate) fn close(&self, seed: &FixedBitSet, gens: &[u32]) -> FixedBitSet {
        let mut result = seed.clone();
        result.insert(self.identity() as usize);
        let mut queue: Vec<u32> = result.ones().map(|i| i as u32).collect();
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !result.put(y as usize) {
                    queue.push(y);
                }
            }
        }
        result
    }

    pub(crate) fn closure_of(&self, gens: &[u32]) -> FixedBitSet {
        self.close(&self.empty_set(), gens)
    }

    pub(crate) fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.order())
    }

    pub(crate) fn full_set(&self) -> FixedBitSet {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_parts(self.clone(), self.full_set(), self.data.generators.clone())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        let mut s = self.empty_set();
        s.insert(self.identity() as usize);
        Subgroup::from_parts(self.clone(), s, Vec::new())
    }

    /// Subgroup generated by element indices.
    pub fn subgroup_from_indices(&self, gens: &[u32]) -> Subgroup {
        let gens: Vec<u32> = gens
            .iter()
            .copied()
            .filter(|&g| g != self.identity())
            .collect();
        Subgroup::from_parts(self.clone(), self.closure_of(&gens), gens)
    }

    pub fn prime_divisors(&self) -> Vec<u64> {
        arith::prime_divisors(self.order() as u64)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generator_indices();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Elements with the same image arrays, compared by value.
    pub fn same_elements(&self, other: &Group) -> bool {
        self.data.elements == other.data.elements
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Group(order {}, degree {}, gens [",
            self.order(),
            self.degree()
        )?;
        for (i, g) in self.generators().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str("])")
    }
}

/// Closure of `generators` on `degree` points.
pub fn generate_group(generators: &[Permutation], degree: usize) -> Result<Group> {
    Group::generate(generators, degree)
}
