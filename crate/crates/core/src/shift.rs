//! The free commutative monoid of shift operators, written additively as
//! exponent tuples in `N^r`.

use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// A product `s1^a1 * ... * sr^ar` of shift generators.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shift(SmallVec<[u32; 4]>);

impl Shift {
    pub fn identity(rank: usize) -> Self {
        Shift(SmallVec::from_elem(0, rank))
    }

    pub fn new(exponents: impl IntoIterator<Item = u32>) -> Self {
        Shift(exponents.into_iter().collect())
    }

    /// The generator `s_{index+1}` raised to `power`.
    pub fn generator(rank: usize, index: usize, power: u32) -> Self {
        let mut s = Self::identity(rank);
        s.0[index] = power;
        s
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn deg(&self) -> u64 {
        self.0.iter().map(|&a| u64::from(a)).sum()
    }

    fn check_rank(&self, other: &Shift) -> Result<()> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: other.rank(),
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Shift) -> Result<Shift> {
        self.check_rank(other)?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_add(b).ok_or(Error::ExponentOverflow))
            .collect::<Result<_>>()
            .map(Shift)
    }

    pub fn gcd(&self, other: &Shift) -> Result<Shift> {
        self.check_rank(other)?;
        Ok(Shift(self.0.iter().zip(&other.0).map(|(&a, &b)| a.min(b)).collect()))
    }

    pub fn lcm(&self, other: &Shift) -> Result<Shift> {
        self.check_rank(other)?;
        Ok(Shift(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect()))
    }

    /// Whether `self` divides `other`, i.e. componentwise `<=`.
    /// Shifts of different rank never divide each other.
    pub fn divides(&self, other: &Shift) -> bool {
        self.rank() == other.rank() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / divisor`.
    pub fn div(&self, divisor: &Shift) -> Result<Shift> {
        divisor.check_rank(self)?;
        if !divisor.divides(self) {
            return Err(Error::NotDivisible {
                divisor: divisor.to_string(),
                dividend: self.to_string(),
            });
        }
        Ok(Shift(self.0.iter().zip(&divisor.0).map(|(&a, &b)| a - b).collect()))
    }

    /// `gcd(self, other) == 1`.
    pub fn is_coprime(&self, other: &Shift) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Write `self` as `s1^a*s2^b...`, or `1` for the identity.
    pub fn to_product_string(&self) -> String {
        if self.is_identity() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &a) in self.0.iter().enumerate() {
            match a {
                0 => {}
                1 => parts.push(format!("s{}", i + 1)),
                _ => parts.push(format!("s{}^{}", i + 1, a)),
            }
        }
        parts.join("*")
    }
}

impl fmt::Display for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All shifts of rank `rank` with degree at most `max_deg`, ordered by degree
/// and, within one degree, lexicographically descending.
pub fn enumerate_up_to_degree(rank: usize, max_deg: u64) -> Vec<Shift> {
    let mut out = Vec::new();
    for d in 0..=max_deg {
        let mut current = vec![0u32; rank];
        compositions(&mut current, 0, d, &mut out);
    }
    out
}

fn compositions(current: &mut [u32], pos: usize, remaining: u64, out: &mut Vec<Shift>) {
    if pos + 1 >= current.len() {
        if let Some(last) = current.len().checked_sub(1) {
            current[last] = remaining as u32;
            out.push(Shift::new(current.iter().copied()));
            current[last] = 0;
        } else if remaining == 0 {
            out.push(Shift::new([]));
        }
        return;
    }
    for a in (0..=remaining).rev() {
        current[pos] = a as u32;
        compositions(current, pos + 1, remaining - a, out);
    }
    current[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(e: &[u32]) -> Shift {
        Shift::new(e.iter().copied())
    }

    #[test]
    fn mul_examples() {
        assert_eq!(s(&[1, 0, 2]).mul(&s(&[0, 3, 1])).unwrap(), s(&[1, 3, 3]));
        assert_eq!(s(&[0, 0, 0]).mul(&s(&[2, 1, 0])).unwrap(), s(&[2, 1, 0]));
        assert_eq!(s(&[1]).mul(&s(&[1])).unwrap(), s(&[2]));
        assert!(matches!(
            s(&[1]).mul(&s(&[1, 0])),
            Err(Error::RankMismatch { .. })
        ));
        assert_eq!(s(&[u32::MAX]).mul(&s(&[1])), Err(Error::ExponentOverflow));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(s(&[2, 1, 0]).gcd(&s(&[1, 0, 4])).unwrap(), s(&[1, 0, 0]));
        assert!(s(&[4, 2]).gcd(&Shift::identity(2)).unwrap().is_identity());
        assert_eq!(s(&[3, 2]).gcd(&s(&[3, 2])).unwrap(), s(&[3, 2]));
    }

    #[test]
    fn divides_and_div() {
        assert!(s(&[1, 0]).divides(&s(&[2, 3])));
        assert_eq!(s(&[2, 3]).div(&s(&[1, 0])).unwrap(), s(&[1, 3]));
        assert!(!s(&[2, 0]).divides(&s(&[1, 5])));
        assert!(s(&[2, 3]).div(&s(&[2, 3])).unwrap().is_identity());
        assert!(matches!(
            s(&[1, 5]).div(&s(&[2, 0])),
            Err(Error::NotDivisible { .. })
        ));
    }

    #[test]
    fn degree() {
        assert_eq!(s(&[1, 0, 1]).deg(), 2);
        assert_eq!(Shift::identity(3).deg(), 0);
        assert_eq!(s(&[0, 5, 0]).deg(), 5);
    }

    #[test]
    fn enumeration() {
        assert_eq!(
            enumerate_up_to_degree(2, 1),
            vec![s(&[0, 0]), s(&[1, 0]), s(&[0, 1])]
        );
        assert_eq!(enumerate_up_to_degree(3, 0), vec![s(&[0, 0, 0])]);
        assert_eq!(
            enumerate_up_to_degree(1, 4),
            (0..=4).map(|a| s(&[a])).collect::<Vec<_>>()
        );
    }

    #[test]
    fn product_string() {
        assert_eq!(s(&[2, 0, 1]).to_product_string(), "s1^2*s3");
        assert_eq!(Shift::identity(2).to_product_string(), "1");
    }

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    fn shift_pair() -> impl Strategy<Value = (Shift, Shift)> {
        (1usize..4).prop_flat_map(|r| {
            (
                prop::collection::vec(0u32..6, r).prop_map(Shift::new),
                prop::collection::vec(0u32..6, r).prop_map(Shift::new),
            )
        })
    }

    proptest! {
        #[test]
        fn gcd_times_quotient_reconstructs((a, b) in shift_pair()) {
            let g = a.gcd(&b).unwrap();
            prop_assert_eq!(g.mul(&a.div(&g).unwrap()).unwrap(), a.clone());
            prop_assert!(g.divides(&a) && g.divides(&b));
        }

        #[test]
        fn deg_is_additive((a, b) in shift_pair()) {
            prop_assert_eq!(a.mul(&b).unwrap().deg(), a.deg() + b.deg());
        }

        #[test]
        fn enumeration_count(r in 1usize..4, d in 0u64..6) {
            let all = enumerate_up_to_degree(r, d);
            prop_assert_eq!(all.len() as u64, binomial(d + r as u64, r as u64));
            prop_assert!(all.iter().all(|s| s.deg() <= d));
            let mut dedup = all.clone();
            dedup.sort();
            dedup.dedup();
            prop_assert_eq!(dedup.len(), all.len());
        }
    }
}
