//! Folding of a set `S ⊆ [0,1)` onto the cell `[0, 1/N)`.
//!
//! Every `t` in the cell has the fiber `{t + k/N : k = 0..N-1}`; the count at
//! `t` is how many fiber points land in `S`. Computation is done in scaled
//! coordinates `u = N t ∈ [0,1)` and mapped back at the end.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

use super::endpoint::{try_sort_by, Endpoint};
use super::set::{merge_sorted, IntervalSet};

/// One constant piece `[left, right)` of the fold count.
#[derive(Clone, Debug, PartialEq)]
pub struct FoldPiece {
    pub left: Endpoint,
    pub right: Endpoint,
    pub count: u64,
}

/// Piecewise constant count function on `[0, 1/N)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FoldCounts {
    pub modulus: u64,
    pub pieces: Vec<FoldPiece>,
}

/// Piece of the cell together with the cell indices `k` whose translate hits `S`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberPiece {
    pub left: Endpoint,
    pub right: Endpoint,
    pub hits: Vec<u64>,
}

fn check_inputs(n: u64, s: &IntervalSet) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("N must be positive"));
    }
    if n > i64::MAX as u64 {
        return Err(Error::invalid("N too large"));
    }
    if let (Some(lo), Some(hi)) = (s.lower(), s.upper()) {
        if lo.try_lt(&Endpoint::zero())? || Endpoint::one().try_lt(hi)? {
            return Err(Error::invalid("set must lie in [0,1)"));
        }
    }
    Ok(())
}

fn int_endpoint(k: &BigInt) -> Endpoint {
    Endpoint::from_bigint(k.clone())
}

/// Pieces of `S` in scaled cell coordinates: `(cell k, [lo, hi) ⊆ [0,1))`.
fn cell_pieces(n: u64, s: &IntervalSet) -> Result<Vec<(u64, Endpoint, Endpoint)>> {
    let mut out = Vec::new();
    for iv in s.intervals() {
        let ul = iv.left.mul_int(n as i64);
        let ur = iv.right.mul_int(n as i64);
        let kl = ul.floor()?;
        let kr = ur.floor()?;
        let fl = ul.sub(&int_endpoint(&kl));
        let fr = ur.sub(&int_endpoint(&kr));
        let kl_u = kl.to_u64().ok_or_else(|| Error::invalid("cell index out of range"))?;
        let kr_u = kr.to_u64().ok_or_else(|| Error::invalid("cell index out of range"))?;
        if kl_u == kr_u {
            out.push((kl_u, fl, fr));
            continue;
        }
        out.push((kl_u, fl, Endpoint::one()));
        for k in kl_u + 1..kr_u {
            out.push((k, Endpoint::zero(), Endpoint::one()));
        }
        if !fr.is_zero() {
            out.push((kr_u, Endpoint::zero(), fr));
        }
    }
    Ok(out)
}

/// Count function `t ↦ #{k : t + k/N ∈ S}` on `[0, 1/N)`.
pub fn fold_counts(n: u64, s: &IntervalSet) -> Result<FoldCounts> {
    check_inputs(n, s)?;
    let mut base: u64 = 0;
    let mut events: Vec<(Endpoint, i64)> = Vec::new();
    for (_, lo, hi) in cell_pieces(n, s)? {
        if lo.is_zero() && hi == Endpoint::one() {
            base += 1;
            continue;
        }
        if lo.is_zero() {
            base += 1;
        } else {
            events.push((lo, 1));
        }
        if hi != Endpoint::one() {
            events.push((hi, -1));
        }
    }
    let events = try_sort_by(events, &|a: &(Endpoint, i64), b: &(Endpoint, i64)| a.0.try_cmp(&b.0))?;
    let mut pieces: Vec<FoldPiece> = Vec::new();
    let mut pos = Endpoint::zero();
    let mut count = base as i64;
    let push = |left: &Endpoint, right: &Endpoint, count: i64, pieces: &mut Vec<FoldPiece>| {
        debug_assert!(count >= 0);
        match pieces.last_mut() {
            Some(last) if last.count == count as u64 => last.right = right.clone(),
            _ => pieces.push(FoldPiece { left: left.clone(), right: right.clone(), count: count as u64 }),
        }
    };
    let mut i = 0;
    while i < events.len() {
        let x = events[i].0.clone();
        if pos.try_lt(&x)? {
            push(&pos, &x, count, &mut pieces);
        }
        while i < events.len() && events[i].0.try_cmp(&x)? == Ordering::Equal {
            count += events[i].1;
            i += 1;
        }
        pos = x;
    }
    if pos.try_lt(&Endpoint::one())? {
        push(&pos, &Endpoint::one(), count, &mut pieces);
    }
    let n_i = n as i64;
    for p in &mut pieces {
        p.left = p.left.div_int(n_i);
        p.right = p.right.div_int(n_i);
    }
    Ok(FoldCounts { modulus: n, pieces })
}

impl FoldCounts {
    fn collect(&self, pred: impl Fn(u64) -> bool) -> Result<IntervalSet> {
        IntervalSet::from_pairs(
            self.pieces.iter().filter(|p| pred(p.count)).map(|p| (p.left.clone(), p.right.clone())).collect(),
        )
    }

    /// `A_{≥n}`: points of the cell with at least `n` hits.
    pub fn at_least(&self, level: u64) -> Result<IntervalSet> {
        self.collect(|c| c >= level)
    }

    /// `A_n`: points of the cell with exactly `n` hits.
    pub fn exactly(&self, level: u64) -> Result<IntervalSet> {
        self.collect(|c| c == level)
    }

    pub fn max_count(&self) -> u64 {
        self.pieces.iter().map(|p| p.count).max().unwrap_or(0)
    }

    pub fn cell(&self) -> Endpoint {
        Endpoint::ratio(1, self.modulus as i64)
    }
}

pub fn a_geq(n: u64, s: &IntervalSet, level: u64) -> Result<IntervalSet> {
    if level == 0 || level > n {
        return Err(Error::invalid(format!("level {level} outside 1..={n}")));
    }
    fold_counts(n, s)?.at_least(level)
}

pub fn a_exact(n: u64, s: &IntervalSet, level: u64) -> Result<IntervalSet> {
    if level > n {
        return Err(Error::invalid(format!("level {level} outside 0..={n}")));
    }
    fold_counts(n, s)?.exactly(level)
}

/// `B_n`: the points of `S` whose fiber has exactly `n` hits.
pub fn b_exact(n: u64, s: &IntervalSet, level: u64) -> Result<IntervalSet> {
    if level == 0 || level > n {
        return Err(Error::invalid(format!("level {level} outside 1..={n}")));
    }
    let a = a_exact(n, s, level)?;
    lift(n, &a)?.intersection(s)
}

/// `∪_k (A + k/N)` for `A ⊆ [0, 1/N)`.
pub fn lift(n: u64, a: &IntervalSet) -> Result<IntervalSet> {
    let mut pairs = Vec::new();
    for k in 0..n {
        let shift = Endpoint::ratio(k as i64, n as i64);
        for iv in a.translate(&shift).intervals() {
            pairs.push((iv.left.clone(), iv.right.clone()));
        }
    }
    IntervalSet::from_pairs(pairs)
}

/// Partition of the cell into pieces with constant hit set.
pub fn fiber_pieces(n: u64, s: &IntervalSet) -> Result<Vec<FiberPiece>> {
    check_inputs(n, s)?;
    let cells = cell_pieces(n, s)?;
    let mut points = vec![Endpoint::zero(), Endpoint::one()];
    for (_, lo, hi) in &cells {
        points = merge_sorted(&points, &[lo.clone(), hi.clone()])?;
    }
    let mut out: Vec<FiberPiece> = Vec::new();
    for w in points.windows(2) {
        let mut hits = Vec::new();
        for (k, lo, hi) in &cells {
            if lo.try_le(&w[0])? && w[1].try_le(hi)? {
                hits.push(*k);
            }
        }
        hits.sort_unstable();
        hits.dedup();
        match out.last_mut() {
            Some(last) if last.hits == hits => last.right = w[1].clone(),
            _ => out.push(FiberPiece { left: w[0].clone(), right: w[1].clone(), hits }),
        }
    }
    let n_i = n as i64;
    for p in &mut out {
        p.left = p.left.div_int(n_i);
        p.right = p.right.div_int(n_i);
    }
    Ok(out)
}

/// True iff each gap between consecutive members of `{0, endpoints, 1}`
/// contains a grid point `k/N` (`1 ≤ k ≤ N-1`) in its interior.
pub fn grid_separation_ok(n: u64, endpoints: &[Endpoint]) -> Result<bool> {
    if n == 0 {
        return Err(Error::invalid("N must be positive"));
    }
    let mut pts = Vec::with_capacity(endpoints.len() + 2);
    pts.push(Endpoint::zero());
    pts.extend(endpoints.iter().cloned());
    pts.push(Endpoint::one());
    for w in pts.windows(2) {
        if !w[0].try_lt(&w[1])? {
            return Err(Error::invalid("endpoints must be strictly increasing inside (0,1)"));
        }
    }
    let n_big = BigRational::from_integer(BigInt::from(n));
    for w in pts.windows(2) {
        let k = w[0].mul_rational(&n_big).floor()? + 1;
        if k >= BigInt::from(n) || k <= BigInt::zero() {
            return Ok(false);
        }
        if !int_endpoint(&k).try_lt(&w[1].mul_rational(&n_big))? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(p: &[((i64, i64), (i64, i64))]) -> IntervalSet {
        IntervalSet::from_ratios(p).unwrap()
    }

    #[test]
    fn full_circle_counts() {
        let fc = fold_counts(3, &set(&[((0, 1), (1, 1))])).unwrap();
        assert_eq!(fc.pieces.len(), 1);
        assert_eq!(fc.pieces[0].count, 3);
        assert_eq!(fc.pieces[0].right, Endpoint::ratio(1, 3));
        assert_eq!(a_exact(3, &set(&[((0, 1), (1, 1))]), 3).unwrap(), set(&[((0, 1), (1, 3))]));
        assert_eq!(b_exact(3, &set(&[((0, 1), (1, 1))]), 3).unwrap(), set(&[((0, 1), (1, 1))]));
    }

    #[test]
    fn single_interval_n2() {
        // [0.2, 0.5) at N=2 is [0.4, 1) in cell 0 scaled.
        let s = set(&[((1, 5), (1, 2))]);
        let fc = fold_counts(2, &s).unwrap();
        let counts: Vec<u64> = fc.pieces.iter().map(|p| p.count).collect();
        assert_eq!(counts, vec![0, 1]);
        assert_eq!(fc.at_least(1).unwrap(), set(&[((1, 5), (1, 2))]));
        assert!(a_geq(2, &s, 2).unwrap().is_empty());
        assert_eq!(b_exact(2, &s, 1).unwrap(), s);
    }

    #[test]
    fn two_intervals_full_fibers() {
        let s = set(&[((1, 10), (3, 10)), ((6, 10), (8, 10))]);
        assert_eq!(a_exact(2, &s, 2).unwrap(), set(&[((1, 10), (3, 10))]));
        assert_eq!(a_geq(2, &s, 2).unwrap(), set(&[((1, 10), (3, 10))]));
        assert_eq!(b_exact(2, &s, 2).unwrap(), s);
        assert!(b_exact(2, &s, 1).unwrap().is_empty());
    }

    #[test]
    fn separation_examples() {
        let a = Endpoint::sqrt(2, 200).sub(&Endpoint::one());
        let b = Endpoint::sqrt(3, 200).sub(&Endpoint::one());
        assert!(grid_separation_ok(5, &[a, b]).unwrap());
        assert!(!grid_separation_ok(2, &[Endpoint::ratio(2, 5), Endpoint::ratio(3, 5)]).unwrap());
        assert!(grid_separation_ok(4, &[Endpoint::ratio(3, 10), Endpoint::ratio(3, 5)]).unwrap());
        assert!(grid_separation_ok(2, &[Endpoint::ratio(3, 5), Endpoint::ratio(2, 5)]).is_err());
    }

    #[test]
    fn fiber_hits() {
        let s = set(&[((1, 10), (3, 10)), ((6, 10), (7, 10))]);
        let pieces = fiber_pieces(2, &s).unwrap();
        let hits: Vec<Vec<u64>> = pieces.iter().map(|p| p.hits.clone()).collect();
        assert_eq!(hits, vec![vec![], vec![0, 1], vec![0], vec![]]);
        assert_eq!(pieces[1].left, Endpoint::ratio(1, 10));
        assert_eq!(pieces[1].right, Endpoint::ratio(2, 10));
    }

    #[test]
    fn rejects_sets_outside_unit_interval() {
        assert!(fold_counts(2, &set(&[((1, 2), (3, 2))])).is_err());
        assert!(fold_counts(0, &set(&[((0, 1), (1, 2))])).is_err());
    }
}
