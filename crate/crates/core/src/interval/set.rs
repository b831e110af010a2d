use std::cmp::Ordering;

use crate::error::{Error, Result};

use super::endpoint::{try_sort_by, Endpoint};

/// Half-open interval `[left, right)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub left: Endpoint,
    pub right: Endpoint,
}

impl Interval {
    pub fn length(&self) -> Endpoint {
        self.right.sub(&self.left)
    }
}

/// Finite disjoint union of half-open intervals, kept sorted and merged.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet::default()
    }

    pub fn single(left: Endpoint, right: Endpoint) -> Result<Self> {
        Self::from_pairs(vec![(left, right)])
    }

    /// Union of arbitrary (possibly overlapping) pairs. Pairs with `left > right`
    /// are rejected; empty pairs vanish.
    pub fn from_pairs(pairs: Vec<(Endpoint, Endpoint)>) -> Result<Self> {
        let mut kept = Vec::with_capacity(pairs.len());
        for (left, right) in pairs {
            match left.try_cmp(&right)? {
                Ordering::Greater => {
                    return Err(Error::invalid(format!("interval [{left}, {right}) has left > right")));
                }
                Ordering::Equal => {}
                Ordering::Less => kept.push(Interval { left, right }),
            }
        }
        let sorted = try_sort_by(kept, &|a: &Interval, b: &Interval| a.left.try_cmp(&b.left))?;
        let mut out: Vec<Interval> = Vec::with_capacity(sorted.len());
        for iv in sorted {
            if let Some(last) = out.last_mut() {
                if iv.left.try_le(&last.right)? {
                    if last.right.try_lt(&iv.right)? {
                        last.right = iv.right;
                    }
                    continue;
                }
            }
            out.push(iv);
        }
        Ok(IntervalSet { intervals: out })
    }

    /// Convenience constructor from exact rationals `(p1/q1, p2/q2)`.
    pub fn from_ratios(pairs: &[((i64, i64), (i64, i64))]) -> Result<Self> {
        Self::from_pairs(
            pairs.iter().map(|&((a, b), (c, d))| (Endpoint::ratio(a, b), Endpoint::ratio(c, d))).collect(),
        )
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn measure(&self) -> Endpoint {
        self.intervals.iter().fold(Endpoint::zero(), |acc, iv| acc.add(&iv.length()))
    }

    /// Sorted breakpoints `l0, r0, l1, r1, ...`.
    pub fn endpoints(&self) -> Vec<Endpoint> {
        self.intervals.iter().flat_map(|iv| [iv.left.clone(), iv.right.clone()]).collect()
    }

    pub fn lower(&self) -> Option<&Endpoint> {
        self.intervals.first().map(|iv| &iv.left)
    }

    pub fn upper(&self) -> Option<&Endpoint> {
        self.intervals.last().map(|iv| &iv.right)
    }

    pub fn to_f64_pairs(&self) -> Vec<(f64, f64)> {
        self.intervals.iter().map(|iv| (iv.left.to_f64(), iv.right.to_f64())).collect()
    }

    pub fn translate(&self, shift: &Endpoint) -> Self {
        IntervalSet {
            intervals: self
                .intervals
                .iter()
                .map(|iv| Interval { left: iv.left.add(shift), right: iv.right.add(shift) })
                .collect(),
        }
    }

    /// Scale by a positive rational factor.
    pub fn scale(&self, factor: &num_rational::BigRational) -> Self {
        assert!(*factor > num_traits::Zero::zero(), "scale factor must be positive");
        IntervalSet {
            intervals: self
                .intervals
                .iter()
                .map(|iv| Interval { left: iv.left.mul_rational(factor), right: iv.right.mul_rational(factor) })
                .collect(),
        }
    }

    pub fn contains(&self, x: &Endpoint) -> Result<bool> {
        for iv in &self.intervals {
            if iv.left.try_le(x)? && x.try_lt(&iv.right)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn combine(&self, other: &Self, keep: impl Fn(bool, bool) -> bool) -> Result<Self> {
        let points = merge_sorted(&self.endpoints(), &other.endpoints())?;
        let (mut ia, mut ib) = (0usize, 0usize);
        let mut out: Vec<Interval> = Vec::new();
        for w in points.windows(2) {
            let (lo, hi) = (&w[0], &w[1]);
            let in_a = covers(&self.intervals, &mut ia, lo)?;
            let in_b = covers(&other.intervals, &mut ib, lo)?;
            if !keep(in_a, in_b) {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.right == *lo => last.right = hi.clone(),
                _ => out.push(Interval { left: lo.clone(), right: hi.clone() }),
            }
        }
        Ok(IntervalSet { intervals: out })
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a && !b)
    }

    pub fn symmetric_difference(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a != b)
    }

    pub fn sym_diff_measure(&self, other: &Self) -> Result<Endpoint> {
        Ok(self.symmetric_difference(other)?.measure())
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool> {
        Ok(self.difference(other)?.is_empty())
    }

    /// Set equality decided through ordered comparisons (robust to different
    /// but equal representations of the same endpoint).
    pub fn set_eq(&self, other: &Self) -> Result<bool> {
        if self.intervals.len() != other.intervals.len() {
            return Ok(false);
        }
        for (a, b) in self.intervals.iter().zip(&other.intervals) {
            if !a.left.try_eq(&b.left)? || !a.right.try_eq(&b.right)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `[lo, hi) \ self`.
    pub fn complement_in(&self, lo: &Endpoint, hi: &Endpoint) -> Result<Self> {
        IntervalSet::single(lo.clone(), hi.clone())?.difference(self)
    }

    /// Rotation on the circle: `(self - r) mod 1`, for `self ⊆ [0,1)`.
    pub fn rotate(&self, r: &Endpoint) -> Result<Self> {
        let shifted = self.translate(&r.neg());
        let low = shifted.intersection(&IntervalSet::single(Endpoint::from_integer(-1), Endpoint::zero())?)?;
        let high = shifted.intersection(&IntervalSet::single(Endpoint::zero(), Endpoint::one())?)?;
        high.union(&low.translate(&Endpoint::one()))
    }
}

fn covers(intervals: &[Interval], idx: &mut usize, x: &Endpoint) -> Result<bool> {
    while *idx < intervals.len() && intervals[*idx].right.try_le(x)? {
        *idx += 1;
    }
    Ok(*idx < intervals.len() && intervals[*idx].left.try_le(x)?)
}

/// Merge two ascending lists, dropping duplicates.
pub(crate) fn merge_sorted(a: &[Endpoint], b: &[Endpoint]) -> Result<Vec<Endpoint>> {
    let mut out: Vec<Endpoint> = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = if j >= b.len() || (i < a.len() && a[i].try_le(&b[j])?) {
            i += 1;
            &a[i - 1]
        } else {
            j += 1;
            &b[j - 1]
        };
        match out.last() {
            Some(last) if last.try_eq(next)? => {}
            _ => out.push(next.clone()),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(p: &[((i64, i64), (i64, i64))]) -> IntervalSet {
        IntervalSet::from_ratios(p).unwrap()
    }

    #[test]
    fn normalization_merges_and_drops() {
        let s = set(&[((1, 2), (3, 4)), ((0, 1), (1, 2)), ((1, 3), (1, 3))]);
        assert_eq!(s, set(&[((0, 1), (3, 4))]));
        assert!(IntervalSet::single(Endpoint::one(), Endpoint::zero()).is_err());
    }

    #[test]
    fn boolean_operations() {
        let a = set(&[((0, 1), (1, 2))]);
        let b = set(&[((1, 4), (3, 4))]);
        assert_eq!(a.union(&b).unwrap(), set(&[((0, 1), (3, 4))]));
        assert_eq!(a.intersection(&b).unwrap(), set(&[((1, 4), (1, 2))]));
        assert_eq!(a.difference(&b).unwrap(), set(&[((0, 1), (1, 4))]));
        assert_eq!(a.symmetric_difference(&b).unwrap(), set(&[((0, 1), (1, 4)), ((1, 2), (3, 4))]));
        assert_eq!(a.sym_diff_measure(&b).unwrap(), Endpoint::ratio(1, 2));
    }

    #[test]
    fn rotation_wraps() {
        let s = set(&[((1, 10), (3, 10))]);
        let r = s.rotate(&Endpoint::ratio(2, 10)).unwrap();
        assert_eq!(r, set(&[((0, 1), (1, 10)), ((9, 10), (1, 1))]));
    }

    #[test]
    fn irrational_endpoints_mix() {
        let x = Endpoint::sqrt(2, 200).sub(&Endpoint::one());
        let a = IntervalSet::single(Endpoint::zero(), x.clone()).unwrap();
        let b = set(&[((1, 4), (1, 2))]);
        let u = a.union(&b).unwrap();
        assert_eq!(u.len(), 1);
        assert_eq!(u.upper().unwrap(), &Endpoint::ratio(1, 2));
        assert_eq!(a.intersection(&b).unwrap().measure(), x.sub(&Endpoint::ratio(1, 4)));
    }
}
