//! Exact point-set topology on the base space.
//!
//! A `Space` is either a finite discrete set or a finite union of disjoint
//! closed rational intervals. A `Region` is a subset of a space held in
//! canonical form: the sorted list of maximal intervals with endpoint
//! openness flags, or a sorted index set. Canonical form makes equality,
//! inclusion, closure, and relative openness exactly decidable, which is
//! what the groupoid layers above rely on.
//!
//! Relative openness uses the identity: `r` is open in `ambient` iff
//! `closure(ambient \ r)` does not meet `r`. All other operations are
//! direct interval sweeps.

use crate::error::{Error, Result};
use crate::rational::{midpoint, rational_string, Rational};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Space {
    /// Disjoint, strictly separated closed components, sorted by lower bound.
    Intervals { components: Vec<(Rational, Rational)> },
    /// Discrete set `{0, …, size-1}`.
    Finite { size: usize },
}

impl Space {
    pub fn interval(lo: Rational, hi: Rational) -> Result<Space> {
        Space::from_components(vec![(lo, hi)])
    }

    pub fn from_components(mut components: Vec<(Rational, Rational)>) -> Result<Space> {
        if components.is_empty() {
            return Err(Error::Precondition("space needs at least one component".into()));
        }
        for (lo, hi) in &components {
            if lo > hi {
                return Err(Error::BadInterval {
                    lo: rational_string(lo),
                    hi: rational_string(hi),
                });
            }
        }
        components.sort();
        for w in components.windows(2) {
            let (_, hi) = &w[0];
            let (lo, _) = &w[1];
            if lo <= hi {
                return Err(Error::Precondition(format!(
                    "space components overlap or touch near {}",
                    rational_string(lo)
                )));
            }
        }
        Ok(Space::Intervals { components })
    }

    pub fn finite(size: usize) -> Result<Space> {
        if size == 0 {
            return Err(Error::Precondition("finite space needs at least one point".into()));
        }
        Ok(Space::Finite { size })
    }

    pub fn whole(&self) -> Region {
        match self {
            Space::Intervals { components } => Region::Intervals(
                components
                    .iter()
                    .map(|(lo, hi)| Interval::closed(lo.clone(), hi.clone()))
                    .collect(),
            ),
            Space::Finite { size } => Region::Indices((0..*size).collect()),
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        match (self, p) {
            (Space::Intervals { components }, Point::Coordinate(x)) => {
                components.iter().any(|(lo, hi)| lo <= x && x <= hi)
            }
            (Space::Finite { size }, Point::Index(i)) => i < size,
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Coordinate(Rational),
    Index(usize),
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Coordinate(x) => write!(f, "{}", rational_string(x)),
            Point::Index(i) => write!(f, "#{i}"),
        }
    }
}

/// One maximal interval of an interval-space region. Emptiness is a local
/// property (`lo > hi`, or `lo == hi` without both endpoints closed);
/// canonicalization never stores an empty interval.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational, lo_closed: bool, hi_closed: bool) -> Interval {
        Interval { lo, hi, lo_closed, hi_closed }
    }

    pub fn closed(lo: Rational, hi: Rational) -> Interval {
        Interval::new(lo, hi, true, true)
    }

    pub fn open(lo: Rational, hi: Rational) -> Interval {
        Interval::new(lo, hi, false, false)
    }

    pub fn point(x: Rational) -> Interval {
        Interval::new(x.clone(), x, true, true)
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && !(self.lo_closed && self.hi_closed))
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = x > &self.lo || (x == &self.lo && self.lo_closed);
        let below = x < &self.hi || (x == &self.hi && self.hi_closed);
        above && below
    }

    fn intersect(&self, other: &Interval) -> Interval {
        let (lo, lo_closed) = match self.lo.cmp(&other.lo) {
            std::cmp::Ordering::Greater => (self.lo.clone(), self.lo_closed),
            std::cmp::Ordering::Less => (other.lo.clone(), other.lo_closed),
            std::cmp::Ordering::Equal => (self.lo.clone(), self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.cmp(&other.hi) {
            std::cmp::Ordering::Less => (self.hi.clone(), self.hi_closed),
            std::cmp::Ordering::Greater => (other.hi.clone(), other.hi_closed),
            std::cmp::Ordering::Equal => (self.hi.clone(), self.hi_closed && other.hi_closed),
        };
        Interval::new(lo, hi, lo_closed, hi_closed)
    }

    fn overlaps(&self, other: &Interval) -> bool {
        !self.intersect(other).is_empty()
    }

    fn sort_key(&self) -> (Rational, u8, Rational, u8) {
        (
            self.lo.clone(),
            if self.lo_closed { 0 } else { 1 },
            self.hi.clone(),
            if self.hi_closed { 1 } else { 0 },
        )
    }
}

impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Interval {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi && self.lo_closed && self.hi_closed {
            return write!(f, "{{{}}}", rational_string(&self.lo));
        }
        write!(
            f,
            "{}{},{}{}",
            if self.lo_closed { "[" } else { "(" },
            rational_string(&self.lo),
            rational_string(&self.hi),
            if self.hi_closed { "]" } else { ")" },
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Region {
    Intervals(Vec<Interval>),
    Indices(BTreeSet<usize>),
}

impl PartialOrd for Region {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Region {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (Region::Intervals(a), Region::Intervals(b)) => a.cmp(b),
            (Region::Indices(a), Region::Indices(b)) => a.cmp(b),
            (Region::Intervals(_), Region::Indices(_)) => std::cmp::Ordering::Less,
            (Region::Indices(_), Region::Intervals(_)) => std::cmp::Ordering::Greater,
        }
    }
}

fn mismatch() -> Error {
    Error::SpaceMismatch("interval region combined with discrete region".into())
}

/// Merge sweep over intervals sorted by start. Two pieces merge when they
/// overlap or touch with at least one closed endpoint at the seam.
fn normalize_intervals(mut v: Vec<Interval>) -> Vec<Interval> {
    v.retain(|i| !i.is_empty());
    v.sort();
    let mut out: Vec<Interval> = Vec::with_capacity(v.len());
    for next in v {
        match out.last_mut() {
            None => out.push(next),
            Some(cur) => {
                let joined = next.lo < cur.hi
                    || (next.lo == cur.hi && (cur.hi_closed || next.lo_closed))
                    || (next.lo == cur.lo); // identical start, sorted so next ⊆ extends cur
                if joined {
                    match next.hi.cmp(&cur.hi) {
                        std::cmp::Ordering::Greater => {
                            cur.hi = next.hi;
                            cur.hi_closed = next.hi_closed;
                        }
                        std::cmp::Ordering::Equal => cur.hi_closed = cur.hi_closed || next.hi_closed,
                        std::cmp::Ordering::Less => {}
                    }
                } else {
                    out.push(next);
                }
            }
        }
    }
    out
}

fn subtract_interval(x: &Interval, y: &Interval) -> Vec<Interval> {
    if !x.overlaps(y) {
        return vec![x.clone()];
    }
    let mut out = Vec::new();
    let left = Interval::new(x.lo.clone(), y.lo.clone(), x.lo_closed, !y.lo_closed);
    if !left.is_empty() && left.hi <= x.hi {
        out.push(left);
    }
    let right = Interval::new(y.hi.clone(), x.hi.clone(), !y.hi_closed, x.hi_closed);
    if !right.is_empty() && right.lo >= x.lo {
        out.push(right);
    }
    out
}

impl Region {
    pub fn empty_intervals() -> Region {
        Region::Intervals(Vec::new())
    }

    pub fn empty_indices() -> Region {
        Region::Indices(BTreeSet::new())
    }

    /// Empty region of the same kind as the space.
    pub fn empty_for(space: &Space) -> Region {
        match space {
            Space::Intervals { .. } => Region::empty_intervals(),
            Space::Finite { .. } => Region::empty_indices(),
        }
    }

    /// Canonicalizes raw intervals without a space check.
    pub fn from_intervals(raw: Vec<Interval>) -> Region {
        Region::Intervals(normalize_intervals(raw))
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(idx: I) -> Region {
        Region::Indices(idx.into_iter().collect())
    }

    /// Canonicalizes and validates against a space: every interval must have
    /// `lo <= hi` and lie inside a component; every index must be in range.
    pub fn normalize_in(space: &Space, raw: Region) -> Result<Region> {
        match (space, raw) {
            (Space::Intervals { .. }, Region::Intervals(v)) => {
                for i in &v {
                    if i.lo > i.hi {
                        return Err(Error::BadInterval {
                            lo: rational_string(&i.lo),
                            hi: rational_string(&i.hi),
                        });
                    }
                }
                let region = Region::from_intervals(v);
                region.validate_in(space)?;
                Ok(region)
            }
            (Space::Finite { size }, Region::Indices(s)) => {
                if let Some(&bad) = s.iter().find(|&&i| i >= *size) {
                    return Err(Error::OutOfSpace(format!(
                        "index {bad} outside discrete space of size {size}"
                    )));
                }
                Ok(Region::Indices(s))
            }
            _ => Err(mismatch()),
        }
    }

    /// Checks containment in the space (emptiness of `self \ whole`).
    pub fn validate_in(&self, space: &Space) -> Result<()> {
        let excess = self.subtract(&space.whole())?;
        if excess.is_empty() {
            Ok(())
        } else {
            Err(Error::OutOfSpace(excess.to_string()))
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            Region::Intervals(v) => v.is_empty(),
            Region::Indices(s) => s.is_empty(),
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        match (self, p) {
            (Region::Intervals(v), Point::Coordinate(x)) => v.iter().any(|i| i.contains(x)),
            (Region::Indices(s), Point::Index(i)) => s.contains(i),
            _ => false,
        }
    }

    pub fn union(&self, other: &Region) -> Result<Region> {
        match (self, other) {
            (Region::Intervals(a), Region::Intervals(b)) => {
                let mut v = a.clone();
                v.extend(b.iter().cloned());
                Ok(Region::from_intervals(v))
            }
            (Region::Indices(a), Region::Indices(b)) => {
                Ok(Region::Indices(a.union(b).copied().collect()))
            }
            _ => Err(mismatch()),
        }
    }

    pub fn intersect(&self, other: &Region) -> Result<Region> {
        match (self, other) {
            (Region::Intervals(a), Region::Intervals(b)) => {
                let mut v = Vec::new();
                for x in a {
                    for y in b {
                        let z = x.intersect(y);
                        if !z.is_empty() {
                            v.push(z);
                        }
                    }
                }
                Ok(Region::from_intervals(v))
            }
            (Region::Indices(a), Region::Indices(b)) => {
                Ok(Region::Indices(a.intersection(b).copied().collect()))
            }
            _ => Err(mismatch()),
        }
    }

    pub fn subtract(&self, other: &Region) -> Result<Region> {
        match (self, other) {
            (Region::Intervals(a), Region::Intervals(b)) => {
                let mut pieces = a.clone();
                for y in b {
                    let mut next = Vec::new();
                    for x in &pieces {
                        next.extend(subtract_interval(x, y));
                    }
                    pieces = next;
                }
                Ok(Region::from_intervals(pieces))
            }
            (Region::Indices(a), Region::Indices(b)) => {
                Ok(Region::Indices(a.difference(b).copied().collect()))
            }
            _ => Err(mismatch()),
        }
    }

    pub fn is_subset_of(&self, other: &Region) -> Result<bool> {
        Ok(self.subtract(other)?.is_empty())
    }

    /// Closure within the space. For this interval class every finite
    /// endpoint of a nonempty interval is a limit point of the interval, so
    /// closing amounts to closing the endpoint flags and re-merging; the
    /// result stays inside the (closed) components.
    pub fn closure(&self, space: &Space) -> Result<Region> {
        match (space, self) {
            (Space::Intervals { .. }, Region::Intervals(v)) => {
                let closed = v
                    .iter()
                    .map(|i| Interval::closed(i.lo.clone(), i.hi.clone()))
                    .collect();
                Ok(Region::from_intervals(closed))
            }
            (Space::Finite { .. }, Region::Indices(_)) => Ok(self.clone()),
            _ => Err(mismatch()),
        }
    }

    /// Interior within the space: complement of the closure of the complement.
    pub fn interior(&self, space: &Space) -> Result<Region> {
        let complement = space.whole().subtract(self)?;
        space.whole().subtract(&complement.closure(space)?)
    }

    /// Whether `self` is open in the subspace topology of `ambient`
    /// (both inside `space`). Requires `self ⊆ ambient`.
    pub fn is_open_in(&self, space: &Space, ambient: &Region) -> Result<bool> {
        if !self.is_subset_of(ambient)? {
            return Err(Error::Precondition(format!(
                "{self} is not contained in the ambient {ambient}"
            )));
        }
        let rest = ambient.subtract(self)?;
        let touching = rest.closure(space)?.intersect(self)?;
        Ok(touching.is_empty())
    }

    /// One representative point per maximal interval (midpoint, or the point
    /// itself when degenerate) or per index.
    pub fn sample_points(&self) -> Vec<Point> {
        match self {
            Region::Intervals(v) => v
                .iter()
                .map(|i| {
                    if i.lo == i.hi {
                        Point::Coordinate(i.lo.clone())
                    } else {
                        Point::Coordinate(midpoint(&i.lo, &i.hi))
                    }
                })
                .collect(),
            Region::Indices(s) => s.iter().map(|&i| Point::Index(i)).collect(),
        }
    }

    /// All interval endpoints, in order of appearance.
    pub fn endpoints(&self) -> Vec<Rational> {
        match self {
            Region::Intervals(v) => {
                let mut out = Vec::with_capacity(2 * v.len());
                for i in v {
                    out.push(i.lo.clone());
                    out.push(i.hi.clone());
                }
                out
            }
            Region::Indices(_) => Vec::new(),
        }
    }

    pub fn intervals(&self) -> Option<&[Interval]> {
        match self {
            Region::Intervals(v) => Some(v),
            Region::Indices(_) => None,
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::Intervals(v) => {
                if v.is_empty() {
                    return write!(f, "{{}}");
                }
                let parts: Vec<String> = v.iter().map(|i| i.to_string()).collect();
                write!(f, "{}", parts.join(" ∪ "))
            }
            Region::Indices(s) => {
                let parts: Vec<String> = s.iter().map(|i| format!("#{i}")).collect();
                write!(f, "{{{}}}", parts.join(","))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn space_pm1() -> Space {
        Space::interval(rat(-1), rat(1)).unwrap()
    }

    fn iv(lo: i64, hi: i64, lc: bool, hc: bool) -> Interval {
        Interval::new(rat(lo), rat(hi), lc, hc)
    }

    #[test]
    fn normalize_merges_touching_when_one_side_closed() {
        // [0,1/2) ∪ [1/2,1] is the single interval [0,1].
        let r = Region::from_intervals(vec![
            Interval::new(rat(0), ratio(1, 2), true, false),
            Interval::new(ratio(1, 2), rat(1), true, true),
        ]);
        assert_eq!(r, Region::from_intervals(vec![iv(0, 1, true, true)]));
    }

    #[test]
    fn normalize_keeps_open_gap() {
        // [-1,0) ∪ (0,1] does not merge: the seam point 0 is missing.
        let r = Region::from_intervals(vec![
            iv(-1, 0, true, false),
            iv(0, 1, false, true),
        ]);
        assert_eq!(r.intervals().unwrap().len(), 2);
        assert!(!r.contains(&Point::Coordinate(rat(0))));
    }

    #[test]
    fn normalize_drops_empty_and_sorts() {
        let r = Region::from_intervals(vec![
            Interval::open(rat(3), rat(3)),
            iv(2, 3, true, true),
            iv(0, 1, true, true),
        ]);
        assert_eq!(
            r,
            Region::Intervals(vec![iv(0, 1, true, true), iv(2, 3, true, true)])
        );
    }

    #[test]
    fn degenerate_point_interval() {
        let r = Region::from_intervals(vec![Interval::point(rat(0))]);
        assert!(!r.is_empty());
        assert!(r.contains(&Point::Coordinate(rat(0))));
        assert_eq!(r.to_string(), "{0}");
    }

    #[test]
    fn normalize_in_rejects_out_of_space() {
        let s = space_pm1();
        let err = Region::normalize_in(&s, Region::Intervals(vec![iv(0, 2, true, true)]));
        assert!(matches!(err, Err(Error::OutOfSpace(_))));
        let err = Region::normalize_in(&s, Region::Intervals(vec![iv(1, 0, true, true)]));
        assert!(matches!(err, Err(Error::BadInterval { .. })));
    }

    #[test]
    fn intersect_and_union_examples() {
        let a = Region::from_intervals(vec![iv(-1, 0, true, false)]); // [-1,0)
        let b = Region::from_intervals(vec![iv(-1, 1, true, true)]); // [-1,1]
        assert_eq!(a.intersect(&b).unwrap(), a);
        assert_eq!(a.union(&b).unwrap(), b);

        let c = Region::from_intervals(vec![iv(0, 1, false, true)]); // (0,1]
        assert!(a.intersect(&c).unwrap().is_empty());
        let u = a.union(&c).unwrap();
        assert_eq!(u.intervals().unwrap().len(), 2);
    }

    #[test]
    fn intersection_remerges_seams() {
        // [0,2] ∩ ([0,1] ∪ (1,2]) = [0,2] as one maximal interval.
        let a = Region::from_intervals(vec![iv(0, 2, true, true)]);
        let b = Region::Intervals(vec![iv(0, 1, true, true), iv(1, 2, false, true)]);
        assert_eq!(a.intersect(&b).unwrap(), a);
    }

    #[test]
    fn subtract_splits() {
        let a = Region::from_intervals(vec![iv(-1, 1, true, true)]);
        let b = Region::from_intervals(vec![Interval::point(rat(0))]);
        let d = a.subtract(&b).unwrap();
        assert_eq!(
            d,
            Region::Intervals(vec![iv(-1, 0, true, false), iv(0, 1, false, true)])
        );
        // Removing an open middle keeps both closed endpoints.
        let c = Region::from_intervals(vec![iv(0, 1, false, false)]);
        let e = a.subtract(&c).unwrap();
        assert_eq!(
            e,
            Region::Intervals(vec![iv(-1, 0, true, true), Interval::point(rat(1))])
        );
    }

    #[test]
    fn closure_closes_flags() {
        let s = space_pm1();
        let a = Region::from_intervals(vec![iv(-1, 0, true, false)]);
        assert_eq!(
            a.closure(&s).unwrap(),
            Region::from_intervals(vec![iv(-1, 0, true, true)])
        );
        // Closure of [-1,0) ∪ (0,1] merges across the filled seam.
        let b = Region::Intervals(vec![iv(-1, 0, true, false), iv(0, 1, false, true)]);
        assert_eq!(
            b.closure(&s).unwrap(),
            Region::from_intervals(vec![iv(-1, 1, true, true)])
        );
    }

    #[test]
    fn interior_examples() {
        let s = space_pm1();
        // Interior relative to the space keeps the space's own boundary.
        let a = Region::from_intervals(vec![iv(-1, 0, true, true)]);
        assert_eq!(
            a.interior(&s).unwrap(),
            Region::from_intervals(vec![iv(-1, 0, true, false)])
        );
        let p = Region::from_intervals(vec![Interval::point(rat(0))]);
        assert!(p.interior(&s).unwrap().is_empty());
    }

    #[test]
    fn relative_openness() {
        let s = Space::interval(rat(0), rat(1)).unwrap();
        let ambient = s.whole();
        let half_open = Region::from_intervals(vec![Interval::new(ratio(1, 2), ratio(3, 4), true, false)]);
        assert!(!half_open.is_open_in(&s, &ambient).unwrap());
        let low = Region::from_intervals(vec![Interval::new(rat(0), ratio(1, 4), true, false)]);
        assert!(low.is_open_in(&s, &ambient).unwrap());
        let empty = Region::empty_intervals();
        assert!(empty.is_open_in(&s, &ambient).unwrap());
        // Not a subset of the ambient: ill-posed.
        let ambient_half = Region::from_intervals(vec![Interval::new(rat(0), ratio(1, 2), true, true)]);
        assert!(half_open.is_open_in(&s, &ambient_half).is_err());
    }

    #[test]
    fn openness_in_whole_space_matches_cover_members() {
        let s = space_pm1();
        let whole = s.whole();
        for (r, want) in [
            (Region::from_intervals(vec![iv(-1, 0, true, false)]), true),
            (Region::from_intervals(vec![iv(0, 1, false, true)]), true),
            (Region::from_intervals(vec![iv(-1, 1, true, true)]), true),
            (Region::from_intervals(vec![Interval::point(rat(0))]), false),
            (Region::from_intervals(vec![iv(0, 1, true, true)]), false),
        ] {
            assert_eq!(r.is_open_in(&s, &whole).unwrap(), want, "{r}");
        }
    }

    #[test]
    fn sample_points_are_members() {
        let r = Region::Intervals(vec![
            iv(-1, 0, true, false),
            Interval::point(rat(0)),
            iv(0, 1, false, true),
        ]);
        for p in r.sample_points() {
            assert!(r.contains(&p));
        }
    }

    #[test]
    fn finite_space_ops() {
        let s = Space::finite(3).unwrap();
        let a = Region::from_indices([0, 1]);
        let b = Region::from_indices([1, 2]);
        assert_eq!(a.intersect(&b).unwrap(), Region::from_indices([1]));
        assert_eq!(a.union(&b).unwrap(), s.whole());
        assert_eq!(a.subtract(&b).unwrap(), Region::from_indices([0]));
        assert_eq!(a.closure(&s).unwrap(), a);
        assert!(a.is_open_in(&s, &s.whole()).unwrap());
        assert!(Region::normalize_in(&s, Region::from_indices([5])).is_err());
    }

    #[test]
    fn mixed_kinds_error() {
        let a = Region::empty_intervals();
        let b = Region::empty_indices();
        assert!(a.union(&b).is_err());
        assert!(a.intersect(&b).is_err());
        assert!(a.subtract(&b).is_err());
    }

    #[test]
    fn multi_component_space() {
        let s = Space::from_components(vec![(rat(0), rat(1)), (rat(2), rat(3))]).unwrap();
        let whole = s.whole();
        assert_eq!(whole.intervals().unwrap().len(), 2);
        // A component is open in the space even though it is closed as a set.
        let left = Region::from_intervals(vec![iv(0, 1, true, true)]);
        assert!(left.is_open_in(&s, &whole).unwrap());
        assert!(Space::from_components(vec![(rat(0), rat(1)), (rat(1), rat(2))]).is_err());
    }
}
