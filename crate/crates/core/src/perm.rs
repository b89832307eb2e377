//! Permutations of `{1..n}` and cycle notation.
//!
//! Points are stored 0-based; every textual form (parsing and display) is
//! 1-based. Products act on the right: `a.compose(&b)` maps `x` to `b(a(x))`,
//! so `x^(ab) = (x^a)^b`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleError {
    #[error("repeated point in cycle: {0}")]
    RepeatedPoint(usize),
    #[error("point {point} out of range 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point 0 is not allowed (points are 1-based)")]
    ZeroPoint,
    #[error("malformed cycle notation: {0}")]
    Syntax(String),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self, String> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n {
                return Err(format!("image {} out of range for degree {}", x + 1, n));
            }
            if seen[x] {
                return Err(format!("point {} is hit twice", x + 1));
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    /// Builds a permutation of the given degree from 1-based cycles.
    pub fn from_cycles(cycles: &[Vec<usize>], degree: usize) -> Result<Self, CycleError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut seen = vec![false; degree];
        for cycle in cycles {
            for &pt in cycle {
                if pt == 0 {
                    return Err(CycleError::ZeroPoint);
                }
                if pt > degree {
                    return Err(CycleError::PointOutOfRange { point: pt, degree });
                }
                if seen[pt - 1] {
                    return Err(CycleError::RepeatedPoint(pt));
                }
                seen[pt - 1] = true;
            }
            for (i, &pt) in cycle.iter().enumerate() {
                let next = cycle[(i + 1) % cycle.len()];
                images[pt - 1] = (next - 1) as u32;
            }
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    /// Parses `(1 2 3)(4 5)` (commas also accepted as separators) at the given degree.
    pub fn parse(text: &str, degree: usize) -> Result<Self, CycleError> {
        Self::from_cycles(&parse_cycles(text)?, degree)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based images.
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Image of a 1-based point.
    pub fn apply(&self, point: usize) -> usize {
        self.images[point - 1] as usize + 1
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` first, then `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in compose");
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation {
            images: inv.into_boxed_slice(),
        }
    }

    /// Nontrivial cycles, 1-based, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut visited = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if visited[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !visited[x] {
                visited[x] = true;
                cycle.push(x + 1);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| {
            acc / crate::arith::gcd(acc, c.len() as u64) * c.len() as u64
        })
    }

    /// Largest point moved, 0 for the identity.
    pub fn largest_moved_point(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .rev()
            .find(|(i, &x)| *i as u32 != x)
            .map_or(0, |(i, _)| i + 1)
    }

    /// Same permutation on `degree` points (fixed points appended or dropped).
    pub fn with_degree(&self, degree: usize) -> Result<Permutation, CycleError> {
        if self.largest_moved_point() > degree {
            return Err(CycleError::PointOutOfRange {
                point: self.largest_moved_point(),
                degree,
            });
        }
        Ok(Permutation {
            images: (0..degree)
                .map(|i| {
                    if i < self.degree() {
                        self.images[i]
                    } else {
                        i as u32
                    }
                })
                .collect(),
        })
    }

    /// Shifts the support up by `offset` points inside a larger degree.
    pub fn shifted(&self, offset: usize, degree: usize) -> Permutation {
        assert!(offset + self.degree() <= degree);
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[i + offset] = x + offset as u32;
        }
        Permutation {
            images: images.into_boxed_slice(),
        }
    }
}

/// Parses cycle notation into 1-based cycles without fixing a degree.
pub fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>, CycleError> {
    let text = text.trim();
    let mut cycles = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix('(') else {
            return Err(CycleError::Syntax(format!("expected '(' at {rest:?}")));
        };
        let Some(close) = body.find(')') else {
            return Err(CycleError::Syntax(format!("unclosed cycle in {text:?}")));
        };
        let inner = &body[..close];
        if inner.contains('(') {
            return Err(CycleError::Syntax(format!("nested '(' in {text:?}")));
        }
        let mut cycle = Vec::new();
        for tok in inner.split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            let pt: usize = tok
                .parse()
                .map_err(|_| CycleError::Syntax(format!("bad point {tok:?}")))?;
            if pt == 0 {
                return Err(CycleError::ZeroPoint);
            }
            if cycle.contains(&pt) {
                return Err(CycleError::RepeatedPoint(pt));
            }
            cycle.push(pt);
        }
        if cycle.len() > 1 {
            cycles.push(cycle);
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(cycles)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, pt) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{pt}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_display() {
        let p = Permutation::parse("(1 2 3)(4 5)", 5).unwrap();
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
        assert_eq!(p.apply(3), 1);
        assert_eq!(p.order(), 6);
        assert_eq!(Permutation::parse("(1,3)", 3).unwrap().to_string(), "(1 3)");
        assert!(Permutation::parse("()", 4).unwrap().is_identity());
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            Permutation::parse("(1 2 2)", 3),
            Err(CycleError::RepeatedPoint(2))
        );
        assert_eq!(
            Permutation::parse("(1 2)(2 3)", 3),
            Err(CycleError::RepeatedPoint(2))
        );
        assert_eq!(
            Permutation::parse("(1 4)", 3),
            Err(CycleError::PointOutOfRange {
                point: 4,
                degree: 3
            })
        );
        assert!(matches!(
            Permutation::parse("(1 2", 3),
            Err(CycleError::Syntax(_))
        ));
        assert!(matches!(
            Permutation::parse("1 2", 3),
            Err(CycleError::Syntax(_))
        ));
        assert_eq!(Permutation::parse("(0 1)", 3), Err(CycleError::ZeroPoint));
    }

    #[test]
    fn right_action_composition() {
        let a = Permutation::parse("(1 2)", 3).unwrap();
        let b = Permutation::parse("(2 3)", 3).unwrap();
        // 1 -> 2 -> 3, 3 -> 3 -> 2, 2 -> 1 -> 1
        assert_eq!(a.compose(&b).to_string(), "(1 3 2)");
        // conjugation relabels points: (1 2)^(2 3) = (1 3)
        let conj = b.inverse().compose(&a).compose(&b);
        assert_eq!(conj.to_string(), "(1 3)");
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn inverse_composes_to_identity(p in arb_perm(7)) {
            prop_assert!(p.compose(&p.inverse()).is_identity());
            prop_assert!(p.inverse().compose(&p).is_identity());
        }

        #[test]
        fn cycle_notation_round_trips(p in arb_perm(9)) {
            let text = p.to_string();
            prop_assert_eq!(Permutation::parse(&text, 9).unwrap(), p);
        }

        #[test]
        fn composition_is_associative(a in arb_perm(6), b in arb_perm(6), c in arb_perm(6)) {
            prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        }
    }
}
