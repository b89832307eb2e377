//! Group-class predicates: solvable, nilpotent, supersolvable and their
//! `p`-local versions.
//!
//! The `p`-local predicates use the chief-factor definitions: `G` is
//! `p`-solvable when every chief factor is a `p`-group or a `p'`-group, and
//! `p`-supersolvable when additionally every chief factor of order divisible
//! by `p` has order exactly `p`. `G` is `p`-nilpotent when it has a normal
//! subgroup of order the `p'`-part of `|G|`.

use std::fmt;

use crate::arith;
use crate::error::{GroupError, Result};
use crate::group::Group;
use crate::structure::{chief_series, derived_series, o_p_prime, upper_central_series};
use crate::subgroup::{self, Subgroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassPredicate {
    Solvable,
    PSolvable,
    PNilpotent,
    PSupersolvable,
    Nilpotent,
    Supersolvable,
}

impl ClassPredicate {
    pub fn name(self) -> &'static str {
        match self {
            ClassPredicate::Solvable => "solvable",
            ClassPredicate::PSolvable => "p-solvable",
            ClassPredicate::PNilpotent => "p-nilpotent",
            ClassPredicate::PSupersolvable => "p-supersolvable",
            ClassPredicate::Nilpotent => "nilpotent",
            ClassPredicate::Supersolvable => "supersolvable",
        }
    }
}

#[derive(Debug, Clone)]
pub enum ClassWitness {
    /// Term orders of the derived series.
    DerivedSeries(Vec<usize>),
    /// Term orders of the upper central series.
    UpperCentralSeries(Vec<usize>),
    /// Factor orders of the chief series; every factor is acceptable.
    ChiefSeries(Vec<usize>),
    /// The first unacceptable chief factor (0-based position from the bottom).
    ChiefFactor {
        position: usize,
        order: usize,
    },
    NormalComplement(Subgroup),
    /// `O_{p'}(G)` is smaller than the `p'`-part of `|G|`.
    NoComplement {
        largest: usize,
        needed: usize,
    },
}

impl fmt::Display for ClassWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassWitness::DerivedSeries(o) => write!(f, "derived series orders {o:?}"),
            ClassWitness::UpperCentralSeries(o) => write!(f, "upper central series orders {o:?}"),
            ClassWitness::ChiefSeries(o) => write!(f, "chief factor orders {o:?}"),
            ClassWitness::ChiefFactor { position, order } => {
                write!(f, "chief factor #{position} of order {order}")
            }
            ClassWitness::NormalComplement(s) => write!(f, "normal complement {s}"),
            ClassWitness::NoComplement { largest, needed } => {
                write!(
                    f,
                    "largest normal p'-subgroup has order {largest} < {needed}"
                )
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct ClassVerdict {
    pub predicate: ClassPredicate,
    pub group_order: usize,
    pub prime: Option<u64>,
    pub holds: bool,
    pub witness: ClassWitness,
}

impl ClassVerdict {
    /// Recomputes the witness from scratch and checks it certifies `holds`.
    pub fn revalidate(&self, group: &Group) -> bool {
        if group.order() != self.group_order {
            return false;
        }
        let p = self.prime.unwrap_or(0);
        match &self.witness {
            ClassWitness::DerivedSeries(orders) => {
                let fresh = derived_series(group).orders();
                fresh == *orders && self.holds == (*fresh.last().unwrap() == 1)
            }
            ClassWitness::UpperCentralSeries(orders) => {
                let fresh = upper_central_series(group).orders();
                fresh == *orders && self.holds == (*fresh.last().unwrap() == group.order())
            }
            ClassWitness::ChiefSeries(orders) => {
                self.holds
                    && chief_series(group).factor_orders() == *orders
                    && orders.iter().all(|&o| factor_ok(self.predicate, o, p))
            }
            ClassWitness::ChiefFactor { position, order } => {
                !self.holds
                    && chief_series(group).factor_orders().get(*position) == Some(order)
                    && !factor_ok(self.predicate, *order, p)
            }
            ClassWitness::NormalComplement(n) => {
                let Ok(n) = n.transport(group) else {
                    return false;
                };
                self.holds
                    && n.order() as u64
                        == group.order() as u64 / arith::p_part(group.order() as u64, p)
                    && subgroup::is_normal(&n, group).unwrap_or(false)
            }
            ClassWitness::NoComplement { largest, needed } => {
                !self.holds
                    && o_p_prime(group, p).map(|s| s.order()).ok() == Some(*largest)
                    && largest < needed
            }
        }
    }
}

fn check_prime(p: u64) -> Result<()> {
    if arith::is_prime(p) {
        Ok(())
    } else {
        Err(GroupError::NotPrime(p))
    }
}

fn factor_ok(pred: ClassPredicate, order: usize, p: u64) -> bool {
    let order = order as u64;
    match pred {
        ClassPredicate::PSolvable => !order.is_multiple_of(p) || arith::is_power_of(order, p),
        ClassPredicate::PSupersolvable => !order.is_multiple_of(p) || order == p,
        ClassPredicate::Supersolvable => arith::is_prime(order),
        _ => unreachable!("not a chief-factor predicate"),
    }
}

fn chief_factor_verdict(group: &Group, pred: ClassPredicate, p: Option<u64>) -> ClassVerdict {
    let factors = chief_series(group).factor_orders();
    let bad = factors
        .iter()
        .position(|&o| !factor_ok(pred, o, p.unwrap_or(0)));
    let (holds, witness) = match bad {
        Some(position) => (
            false,
            ClassWitness::ChiefFactor {
                position,
                order: factors[position],
            },
        ),
        None => (true, ClassWitness::ChiefSeries(factors)),
    };
    ClassVerdict {
        predicate: pred,
        group_order: group.order(),
        prime: p,
        holds,
        witness,
    }
}

pub fn is_solvable(group: &Group) -> ClassVerdict {
    let orders = derived_series(group).orders();
    ClassVerdict {
        predicate: ClassPredicate::Solvable,
        group_order: group.order(),
        prime: None,
        holds: *orders.last().unwrap() == 1,
        witness: ClassWitness::DerivedSeries(orders),
    }
}

pub fn is_p_solvable(group: &Group, p: u64) -> Result<ClassVerdict> {
    check_prime(p)?;
    Ok(chief_factor_verdict(
        group,
        ClassPredicate::PSolvable,
        Some(p),
    ))
}

pub fn is_p_supersolvable(group: &Group, p: u64) -> Result<ClassVerdict> {
    check_prime(p)?;
    Ok(chief_factor_verdict(
        group,
        ClassPredicate::PSupersolvable,
        Some(p),
    ))
}

pub fn is_p_nilpotent(group: &Group, p: u64) -> Result<ClassVerdict> {
    let opp = o_p_prime(group, p)?;
    let needed = group.order() / arith::p_part(group.order() as u64, p) as usize;
    let holds = opp.order() == needed;
    let witness = if holds {
        ClassWitness::NormalComplement(opp)
    } else {
        ClassWitness::NoComplement {
            largest: opp.order(),
            needed,
        }
    };
    Ok(ClassVerdict {
        predicate: ClassPredicate::PNilpotent,
        group_order: group.order(),
        prime: Some(p),
        holds,
        witness,
    })
}

pub fn is_nilpotent(group: &Group) -> ClassVerdict {
    let orders = upper_central_series(group).orders();
    ClassVerdict {
        predicate: ClassPredicate::Nilpotent,
        group_order: group.order(),
        prime: None,
        holds: *orders.last().unwrap() == group.order(),
        witness: ClassWitness::UpperCentralSeries(orders),
    }
}

pub fn is_supersolvable(group: &Group) -> ClassVerdict {
    chief_factor_verdict(group, ClassPredicate::Supersolvable, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::generate_group;
    use crate::perm::Permutation;

    fn group(gens: &[&str], n: usize) -> Group {
        generate_group(
            &gens
                .iter()
                .map(|s| Permutation::parse(s, n).unwrap())
                .collect::<Vec<_>>(),
            n,
        )
        .unwrap()
    }

    #[test]
    fn solvability() {
        let s4 = group(&["(1 2)", "(1 2 3 4)"], 4);
        let a5 = group(&["(1 2 3)", "(1 2 3 4 5)"], 5);
        assert!(is_solvable(&s4).holds);
        let v = is_solvable(&a5);
        assert!(!v.holds);
        assert!(v.revalidate(&a5));
        assert!(is_solvable(&group(&["(1 2 3 4)"], 4)).holds);
    }

    #[test]
    fn p_local_examples() {
        let s3 = group(&["(1 2)", "(1 2 3)"], 3);
        let s4 = group(&["(1 2)", "(1 2 3 4)"], 4);
        let a4 = group(&["(1 2 3)", "(1 2)(3 4)"], 4);
        let a5 = group(&["(1 2 3)", "(1 2 3 4 5)"], 5);

        let v = is_p_solvable(&a5, 5).unwrap();
        assert!(!v.holds);
        assert!(matches!(
            v.witness,
            ClassWitness::ChiefFactor { order: 60, .. }
        ));
        assert!(is_p_solvable(&a5, 7).unwrap().holds);
        assert!(is_p_solvable(&s4, 2).unwrap().holds);

        let v = is_p_nilpotent(&s3, 2).unwrap();
        assert!(v.holds && v.revalidate(&s3));
        let v = is_p_nilpotent(&s3, 3).unwrap();
        assert!(!v.holds && v.revalidate(&s3));
        assert!(is_p_nilpotent(&a4, 3).unwrap().holds);

        assert!(is_p_supersolvable(&s4, 3).unwrap().holds);
        let v = is_p_supersolvable(&s4, 2).unwrap();
        assert!(!v.holds);
        assert!(matches!(
            v.witness,
            ClassWitness::ChiefFactor { order: 4, .. }
        ));
        assert!(v.revalidate(&s4));
        assert!(
            is_p_supersolvable(&group(&["(1 2 3 4)", "(5 6 7)"], 7), 2)
                .unwrap()
                .holds
        );
        assert_eq!(is_p_solvable(&s3, 6).unwrap_err(), GroupError::NotPrime(6));
    }

    #[test]
    fn absolute_examples() {
        let q8 = group(&["(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)"], 8);
        let s3 = group(&["(1 2)", "(1 2 3)"], 3);
        let s4 = group(&["(1 2)", "(1 2 3 4)"], 4);
        assert!(is_nilpotent(&q8).holds);
        assert!(!is_nilpotent(&s3).holds);
        assert!(is_supersolvable(&s3).holds);
        let v = is_supersolvable(&s4);
        assert!(!v.holds && v.revalidate(&s4));
    }
}
