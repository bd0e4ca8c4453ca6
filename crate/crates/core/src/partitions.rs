//! Integer partitions: orders, statistics, transforms, and enumeration.

use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A partition: a weakly decreasing sequence of positive integers.
/// Trailing zeros are never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Builds a partition; parts are sorted decreasingly and zeros dropped.
    pub fn new(parts: impl Into<Vec<u32>>) -> Self {
        let mut parts = parts.into();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of (nonzero) parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `λ_i` with 1-based index, zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        if i >= 1 && i <= self.0.len() {
            self.0[i - 1]
        } else {
            0
        }
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `n(λ) = Σ (i-1) λ_i`.
    pub fn n_stat(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &p)| i as u64 * p as u64)
            .sum()
    }

    /// `n(λ')`, computed as `Σ λ_i (λ_i - 1) / 2`.
    pub fn n_stat_conj(&self) -> u64 {
        self.0
            .iter()
            .map(|&p| p as u64 * (p as u64 - 1) / 2)
            .sum()
    }

    pub fn conjugate(&self) -> Partition {
        if self.is_empty() {
            return Partition::empty();
        }
        let cols = self.0[0] as usize;
        let mut parts = Vec::with_capacity(cols);
        for j in 1..=cols {
            parts.push(self.0.iter().filter(|&&p| p as usize >= j).count() as u32);
        }
        Partition(parts)
    }

    /// Extended dominance order: every prefix sum of `self` is at most the
    /// corresponding prefix sum of `other` (forcing `|self| <= |other|`).
    pub fn dominated_by(&self, other: &Partition) -> bool {
        let k = self.0.len().max(other.0.len());
        let (mut a, mut b) = (0u64, 0u64);
        for i in 1..=k {
            a += self.part(i) as u64;
            b += other.part(i) as u64;
            if a > b {
                return false;
            }
        }
        true
    }

    /// Containment of diagrams.
    pub fn contains(&self, other: &Partition) -> bool {
        other
            .0
            .iter()
            .enumerate()
            .all(|(i, &p)| self.part(i + 1) >= p)
    }

    /// `self/other` is a vertical strip: `other_i <= self_i <= other_i + 1`.
    pub fn vertical_strip_over(&self, other: &Partition) -> bool {
        let k = self.0.len().max(other.0.len());
        (1..=k).all(|i| {
            let (l, m) = (self.part(i), other.part(i));
            m <= l && l <= m + 1
        })
    }

    /// `self/other` is a horizontal strip: `self_{i+1} <= other_i <= self_i`.
    pub fn horizontal_strip_over(&self, other: &Partition) -> bool {
        let k = self.0.len().max(other.0.len()) + 1;
        (1..=k).all(|i| {
            let m = other.part(i);
            self.part(i + 1) <= m && m <= self.part(i)
        })
    }

    /// Boxes `(i, j)` of the diagram, 1-based, row-major.
    pub fn boxes(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p).map(move |j| (i as u32 + 1, j)))
    }

    /// The partition `2λ` with parts `2λ_i`.
    pub fn double(&self) -> Partition {
        Partition(self.0.iter().map(|&p| 2 * p).collect())
    }

    /// The partition `λ²` with parts `λ_{⌈i/2⌉}` (each part repeated twice).
    pub fn square(&self) -> Partition {
        let mut parts = Vec::with_capacity(2 * self.0.len());
        for &p in &self.0 {
            parts.push(p);
            parts.push(p);
        }
        Partition(parts)
    }

    /// `m^n + λ`, defined when `ℓ(λ) <= n`.
    pub fn box_add(&self, m: u32, n: usize) -> Result<Partition> {
        if self.len() > n {
            return Err(Error::ShapeError(format!(
                "length {} exceeds box height {n}",
                self.len()
            )));
        }
        Ok(Partition::new(
            (1..=n).map(|i| m + self.part(i)).collect::<Vec<_>>(),
        ))
    }

    /// `m^n - λ` with parts `m - λ_{n+1-i}`, defined when `λ ⊆ m^n`.
    pub fn box_complement(&self, m: u32, n: usize) -> Result<Partition> {
        if self.len() > n || self.part(1) > m {
            return Err(Error::ShapeError(format!(
                "{self} does not fit in {m}^{n}"
            )));
        }
        Ok(Partition::new(
            (1..=n).map(|i| m - self.part(n + 1 - i)).collect::<Vec<_>>(),
        ))
    }

    /// If `λ = 1^n + μ` with `ℓ(μ) <= n`, returns `μ`.
    pub fn strip_column(&self, n: usize) -> Option<Partition> {
        if self.len() != n && !(self.is_empty() && n == 0) {
            return None;
        }
        Some(Partition::new(
            self.0.iter().map(|&p| p - 1).collect::<Vec<_>>(),
        ))
    }
}

impl fmt::Display for Partition {
    /// Canonical form: comma-separated decreasing parts, empty string for
    /// the empty partition.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.0 {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for tok in s.split(',') {
            let p: u32 = tok
                .trim()
                .parse()
                .map_err(|_| Error::ParseError(format!("bad partition part {tok:?}")))?;
            parts.push(p);
        }
        Ok(Partition::new(parts))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(|e| D::Error::custom(format!("{e}")))
    }
}

/// Canonical listing order: graded by size, dominance-largest first within
/// a grade (lexicographically decreasing part vectors).
pub fn grevlex(a: &Partition, b: &Partition) -> std::cmp::Ordering {
    a.size()
        .cmp(&b.size())
        .then_with(|| b.parts().cmp(a.parts()))
}

/// Total order refining extended dominance: `a` strictly dominated by `b`
/// implies `a` sorts first.  Used for triangular solves.
pub fn dominance_refining(a: &Partition, b: &Partition) -> std::cmp::Ordering {
    a.size()
        .cmp(&b.size())
        .then_with(|| a.parts().cmp(b.parts()))
}

fn push_subpartitions(out: &mut Vec<Partition>, max_part: u32, len_left: usize, acc: &mut Vec<u32>) {
    out.push(Partition::new(acc.clone()));
    if len_left == 0 {
        return;
    }
    let hi = acc.last().copied().unwrap_or(max_part);
    for p in 1..=hi.min(max_part) {
        acc.push(p);
        push_subpartitions(out, max_part, len_left - 1, acc);
        acc.pop();
    }
}

/// All partitions contained in the box `m^n`, in graded reverse-lex order.
pub fn in_box(m: u32, n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    push_subpartitions(&mut out, m, n, &mut Vec::new());
    out.sort_by(grevlex);
    out.dedup();
    out
}

/// All partitions of size at most `max_size`, in graded reverse-lex order.
pub fn of_size_at_most(max_size: u32) -> Vec<Partition> {
    of_size_at_most_with_len(max_size, max_size as usize)
}

/// All partitions of size at most `max_size` with at most `max_len` parts.
pub fn of_size_at_most_with_len(max_size: u32, max_len: usize) -> Vec<Partition> {
    fn rec(out: &mut Vec<Partition>, budget: u32, max_part: u32, len_left: usize, acc: &mut Vec<u32>) {
        out.push(Partition::new(acc.clone()));
        if len_left == 0 {
            return;
        }
        for p in 1..=max_part.min(budget) {
            acc.push(p);
            rec(out, budget - p, p, len_left - 1, acc);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut out, max_size, max_size, max_len, &mut Vec::new());
    out.sort_by(grevlex);
    out.dedup();
    out
}

/// All partitions of size exactly `size`.
pub fn of_size(size: u32) -> Vec<Partition> {
    of_size_at_most(size)
        .into_iter()
        .filter(|p| p.size() == size)
        .collect()
}

/// All `μ` dominated by `λ` in the extended order, with `ℓ(μ) <= max_len`,
/// in graded reverse-lex order.
pub fn dominated_by(lambda: &Partition, max_len: usize) -> Vec<Partition> {
    of_size_at_most_with_len(lambda.size(), max_len)
        .into_iter()
        .filter(|mu| mu.dominated_by(lambda))
        .collect()
}

/// All `μ` with `κ ⊆ μ ⊆ λ`, in graded reverse-lex order.
pub fn between(kappa: &Partition, lambda: &Partition) -> Vec<Partition> {
    if !lambda.contains(kappa) {
        return Vec::new();
    }
    in_box(lambda.part(1), lambda.len())
        .into_iter()
        .filter(|mu| lambda.contains(mu) && mu.contains(kappa))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(pt(&[3, 1]).conjugate(), pt(&[2, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn conjugate_is_involution_up_to_size_8() {
        for lam in of_size_at_most(8) {
            assert_eq!(lam.conjugate().conjugate(), lam);
        }
    }

    #[test]
    fn dominance_examples() {
        // 311 >= 22 in the extended order even though |22| = 4 < 5
        assert!(pt(&[2, 2]).dominated_by(&pt(&[3, 1, 1])));
        assert!(!pt(&[3, 1, 1]).dominated_by(&pt(&[2, 2])));
        let lam = pt(&[4, 2, 1]);
        assert!(lam.dominated_by(&lam));
    }

    #[test]
    fn strip_examples() {
        assert!(pt(&[2, 1]).vertical_strip_over(&pt(&[1])));
        assert!(!pt(&[3, 1]).vertical_strip_over(&pt(&[1])));
        let lam = pt(&[2, 2, 1]);
        assert!(lam.vertical_strip_over(&lam));
        assert!(lam.horizontal_strip_over(&lam));
        // (2,2)/(1) is not a horizontal strip: two boxes in column 2
        assert!(!pt(&[2, 2]).horizontal_strip_over(&pt(&[1])));
    }

    #[test]
    fn stats_examples() {
        let lam = pt(&[2, 1]);
        assert_eq!((lam.size(), lam.n_stat(), lam.n_stat_conj()), (3, 1, 1));
        let row = pt(&[5]);
        assert_eq!((row.size(), row.n_stat(), row.n_stat_conj()), (5, 0, 10));
        let e = Partition::empty();
        assert_eq!((e.size(), e.n_stat(), e.n_stat_conj()), (0, 0, 0));
    }

    #[test]
    fn n_stat_conj_matches_conjugate() {
        for lam in of_size_at_most(8) {
            assert_eq!(lam.n_stat_conj(), lam.conjugate().n_stat());
        }
    }

    #[test]
    fn transform_examples() {
        let lam = pt(&[2, 1]);
        assert_eq!(lam.double(), pt(&[4, 2]));
        assert_eq!(lam.square(), pt(&[2, 2, 1, 1]));
        assert_eq!(pt(&[2, 1]).box_complement(3, 2).unwrap(), pt(&[2, 1]));
        assert!(pt(&[4]).box_complement(3, 2).is_err());
        assert!(pt(&[1, 1, 1]).box_add(2, 2).is_err());
    }

    #[test]
    fn complement_conjugate_identity() {
        // (m^n - λ)' = n^m - λ' for all λ ⊆ 3³
        for lam in in_box(3, 3) {
            let lhs = lam.box_complement(3, 3).unwrap().conjugate();
            let rhs = lam.conjugate().box_complement(3, 3).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn enumerate_examples() {
        let box11 = in_box(1, 2);
        assert_eq!(box11, vec![pt(&[]), pt(&[1]), pt(&[1, 1])]);
        let le2 = of_size_at_most(2);
        assert_eq!(le2, vec![pt(&[]), pt(&[1]), pt(&[2]), pt(&[1, 1])]);
        // extended dominance admits smaller sizes
        let dom = dominated_by(&pt(&[2]), 1);
        assert_eq!(dom, vec![pt(&[]), pt(&[1]), pt(&[2])]);
    }

    #[test]
    fn dominance_is_partial_order_up_to_6() {
        let all = of_size_at_most(6);
        for a in &all {
            for b in &all {
                if a.dominated_by(b) && b.dominated_by(a) {
                    assert_eq!(a, b, "antisymmetry");
                }
                for c in &all {
                    if a.dominated_by(b) && b.dominated_by(c) {
                        assert!(a.dominated_by(c), "transitivity {a:?} {b:?} {c:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn containment_implies_dominance_up_to_6() {
        let all = of_size_at_most(6);
        for a in &all {
            for b in &all {
                if b.contains(a) {
                    assert!(a.dominated_by(b), "{a:?} ⊆ {b:?}");
                }
            }
        }
    }

    #[test]
    fn vertical_strip_iff_conjugate_horizontal_up_to_6() {
        let all = of_size_at_most(6);
        for a in &all {
            for b in &all {
                assert_eq!(
                    a.vertical_strip_over(b),
                    a.conjugate().horizontal_strip_over(&b.conjugate()),
                    "{a:?} / {b:?}"
                );
            }
        }
    }

    #[test]
    fn solve_order_refines_dominance() {
        let all = of_size_at_most(6);
        for a in &all {
            for b in &all {
                if a.dominated_by(b) && a != b {
                    assert_eq!(dominance_refining(a, b), std::cmp::Ordering::Less);
                }
            }
        }
    }

    #[test]
    fn partition_string_round_trip() {
        for s in ["", "5", "3,2,1"] {
            let p: Partition = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
    }

    proptest! {
        #[test]
        fn new_normalizes(parts in proptest::collection::vec(0u32..6, 0..6)) {
            let p = Partition::new(parts);
            let v = p.parts();
            prop_assert!(v.windows(2).all(|w| w[0] >= w[1]));
            prop_assert!(v.iter().all(|&x| x > 0));
        }
    }
}
