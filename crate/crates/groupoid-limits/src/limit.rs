//! The limit groupoid over eventually periodic index tails.
//!
//! A limit arrow is a triple `(α, t, β)` of two tail sequences and a point.
//! The nested membership predicates carve out the subsets of interest: the
//! bundle of tail-equivalent pairs, the open core whose joint region chain
//! still contains the point, its closure, the closed core built from stable
//! region closures, and the limit groupoid itself, whose members project
//! into an open level groupoid at their tail divergence bound. Every
//! predicate terminates because region chains along periodic tails
//! stabilize within a computed window.
//!
//! The module also computes ranges of basic sets symbolically. For legs
//! constrained by level-`n` prefixes with tails forced equal, the range of
//! the basic set inside the closed core is a finite union of closures of
//! stable regions, found by iterating a finite set of region pairs through
//! the cover cycle and keeping the pairs that some tail can sustain
//! forever. This is what exhibits the failure of the range map to be open.

use std::fmt;

use crate::cover::{legs_agree_beyond, tail_equivalent, CoverSequence, MultiIndex, OmegaPoint};
use crate::error::{Error, Result};
use crate::finite::{self, ArrowN};
use crate::rational::{parse_rational, ratio};
use crate::region::{Point, Region};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LimitArrow {
    pub range_leg: OmegaPoint,
    pub point: Point,
    pub source_leg: OmegaPoint,
}

impl LimitArrow {
    pub fn new(range_leg: OmegaPoint, point: Point, source_leg: OmegaPoint) -> LimitArrow {
        LimitArrow { range_leg, point, source_leg }
    }

    pub fn is_unit(&self) -> bool {
        self.range_leg == self.source_leg
    }

    #[must_use]
    pub fn inverse(&self) -> LimitArrow {
        LimitArrow {
            range_leg: self.source_leg.clone(),
            point: self.point.clone(),
            source_leg: self.range_leg.clone(),
        }
    }

    /// Truncation of both legs to level `n`.
    pub fn project(&self, n: usize) -> ArrowN {
        ArrowN {
            range_leg: self.range_leg.truncate(n),
            point: self.point.clone(),
            source_leg: self.source_leg.truncate(n),
        }
    }

    /// Least `n` past which the legs agree entrywise, if any.
    pub fn divergence(&self) -> Option<usize> {
        tail_equivalent(&self.range_leg, &self.source_leg)
    }

    /// Reads `"(head|cycle, t, head|cycle)"`, the serialization produced by
    /// `Display`. Components are separated by comma-space; commas inside an
    /// index list carry no space. The point is a rational or `#i` for an
    /// index point.
    pub fn parse(s: &str) -> Result<LimitArrow> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("arrow literal must be parenthesized: {s}")))?;
        let parts: Vec<&str> = inner.split(", ").collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!(
                "arrow literal needs three comma-space separated components: {s}"
            )));
        }
        Ok(LimitArrow {
            range_leg: OmegaPoint::parse(parts[0])?,
            point: parse_point(parts[1])?,
            source_leg: OmegaPoint::parse(parts[2])?,
        })
    }
}

fn parse_point(s: &str) -> Result<Point> {
    if let Some(idx) = s.strip_prefix('#') {
        let i: usize = idx
            .parse()
            .map_err(|_| Error::Parse(format!("bad index point: {s}")))?;
        Ok(Point::Index(i))
    } else {
        Ok(Point::Coordinate(parse_rational(s)?))
    }
}

impl fmt::Display for LimitArrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.range_leg, self.point, self.source_leg)
    }
}

fn guard(seq: &CoverSequence, x: &LimitArrow) -> Result<()> {
    if !seq.space().contains(&x.point) {
        return Err(Error::PointOutsideSpace(x.point.to_string()));
    }
    Ok(())
}

/// The bundle: legs tail-equivalent, point anywhere in the space.
pub fn in_bundle(seq: &CoverSequence, x: &LimitArrow) -> Result<bool> {
    guard(seq, x)?;
    Ok(x.divergence().is_some())
}

/// The open core: the point survives the joint region chain of both legs
/// at every level, equivalently lies in its stable value.
pub fn in_open_core(seq: &CoverSequence, x: &LimitArrow) -> Result<bool> {
    guard(seq, x)?;
    if x.divergence().is_none() {
        return Ok(false);
    }
    let chain = seq.joint_open_chain(&[&x.range_leg, &x.source_leg])?;
    Ok(chain.stable().contains(&x.point))
}

/// Closure of the open core inside the bundle: the fiber over a leg pair
/// is the closure of the stable joint region.
pub fn in_open_core_closure(seq: &CoverSequence, x: &LimitArrow) -> Result<bool> {
    guard(seq, x)?;
    if x.divergence().is_none() {
        return Ok(false);
    }
    let chain = seq.joint_open_chain(&[&x.range_leg, &x.source_leg])?;
    Ok(chain.stable().closure(seq.space())?.contains(&x.point))
}

/// The closed core: the point lies in the stable region closure of each
/// leg separately.
pub fn in_closed_core(seq: &CoverSequence, x: &LimitArrow) -> Result<bool> {
    guard(seq, x)?;
    if x.divergence().is_none() {
        return Ok(false);
    }
    let (fr, _) = seq.stable_w_closure(&x.range_leg)?;
    if !fr.contains(&x.point) {
        return Ok(false);
    }
    let (fs, _) = seq.stable_w_closure(&x.source_leg)?;
    Ok(fs.contains(&x.point))
}

/// The level-`n` band of the closed core: members whose legs agree beyond
/// `n`. These bands increase in `n` and exhaust the closed core.
pub fn in_closed_band(seq: &CoverSequence, x: &LimitArrow, n: usize) -> Result<bool> {
    Ok(in_closed_core(seq, x)? && legs_agree_beyond(&x.range_leg, &x.source_leg, n))
}

/// The level-`n` window: the band members whose level-`n` projection lies
/// in the open level groupoid. These are the supports of the level-`n`
/// matrix unit images; their union over `n` is the limit groupoid.
pub fn in_window(seq: &CoverSequence, x: &LimitArrow, n: usize) -> Result<bool> {
    Ok(in_closed_band(seq, x, n)? && finite::in_level(seq, &x.project(n))?)
}

/// Membership in the limit groupoid, with the least window level as the
/// witness. A witness level must be at least the divergence bound, and the
/// projected regions only shrink with the level, so membership at the
/// divergence bound decides the whole union.
pub fn in_limit(seq: &CoverSequence, x: &LimitArrow) -> Result<Option<usize>> {
    guard(seq, x)?;
    let Some(d) = x.divergence() else {
        return Ok(None);
    };
    if !in_closed_core(seq, x)? {
        return Ok(None);
    }
    if finite::in_level(seq, &x.project(d))? {
        Ok(Some(d))
    } else {
        Ok(None)
    }
}

/// Composition `(α,t,β)(β,t,δ) = (α,t,δ)`; requires exact equality of the
/// middle legs in normal form and of the points.
pub fn compose_limit(x: &LimitArrow, y: &LimitArrow) -> Option<LimitArrow> {
    if x.source_leg != y.range_leg || x.point != y.point {
        return None;
    }
    Some(LimitArrow {
        range_leg: x.range_leg.clone(),
        point: x.point.clone(),
        source_leg: y.source_leg.clone(),
    })
}

/// Least index of a cover member containing the point at one level.
fn greedy_pick(seq: &CoverSequence, k: usize, t: &Point) -> Result<usize> {
    seq.cover_at(k).members().iter().position(|m| m.contains(t)).ok_or_else(|| {
        Error::Precondition(format!("no member of the level-{k} cover contains {t}"))
    })
}

/// Extends a level-`n` prefix to an eventually periodic sequence whose
/// region chain keeps `t` from level `n+1` on: each deeper entry is the
/// least cover member containing `t`. The picks depend only on the cover
/// at each level, so beyond the prefix covers they repeat with the cycle.
pub fn greedy_extension(
    seq: &CoverSequence,
    prefix: &MultiIndex,
    t: &Point,
) -> Result<OmegaPoint> {
    let n = prefix.level();
    let start = (n + 1).max(seq.prefix_len());
    let mut head = prefix.entries().to_vec();
    for k in n + 1..start {
        head.push(greedy_pick(seq, k, t)?);
    }
    let cycle: Vec<usize> = (start..start + seq.cycle_len())
        .map(|k| greedy_pick(seq, k, t))
        .collect::<Result<_>>()?;
    OmegaPoint::new(head, cycle)
}

/// Splits a closed-core arrow as a product of two arrows in the closure of
/// the open core, through a middle leg that keeps the point in its region
/// at every level.
///
/// Through the divergence bound the middle leg greedily takes the least
/// cover member containing the point; beyond it the leg copies the range
/// leg, so both factors are bundle arrows. The greedy initial segment `G`
/// is open and contains the point, and intersecting a stable region with
/// an open set commutes with closures on the overlap, which puts both
/// factors in the closure of the open core.
pub fn factor_through_closure(
    seq: &CoverSequence,
    z: &LimitArrow,
) -> Result<(LimitArrow, LimitArrow)> {
    guard(seq, z)?;
    if !in_closed_core(seq, z)? {
        return Err(Error::Precondition(
            "factorization requires a closed-core arrow".into(),
        ));
    }
    let d = z.divergence().expect("closed core implies tail equivalence");
    let picks: Vec<usize> = (0..=d)
        .map(|k| greedy_pick(seq, k, &z.point))
        .collect::<Result<_>>()?;
    let gamma = z.range_leg.with_prefix(&MultiIndex(picks))?;
    let x = LimitArrow::new(z.range_leg.clone(), z.point.clone(), gamma.clone());
    let y = LimitArrow::new(gamma, z.point.clone(), z.source_leg.clone());
    Ok((x, y))
}

/// A basic set of the closed core: level-`n` prefixes for both legs, tails
/// beyond `n` forced equal, point constrained to an open window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicSet {
    pub level: usize,
    pub range_prefix: MultiIndex,
    pub source_prefix: MultiIndex,
    pub window: Region,
}

impl BasicSet {
    pub fn new(
        seq: &CoverSequence,
        range_prefix: MultiIndex,
        source_prefix: MultiIndex,
        window: Region,
    ) -> Result<BasicSet> {
        if range_prefix.level() != source_prefix.level() {
            return Err(Error::LevelMismatch(format!(
                "prefixes at levels {} and {}",
                range_prefix.level(),
                source_prefix.level()
            )));
        }
        let level = range_prefix.level();
        for mi in [&range_prefix, &source_prefix] {
            for (k, &i) in mi.entries().iter().enumerate() {
                seq.member(k, i)?;
            }
        }
        let window = Region::normalize_in(seq.space(), window)?;
        if window.is_empty() {
            return Err(Error::EmptyBasicSet);
        }
        Ok(BasicSet { level, range_prefix, source_prefix, window })
    }
}

#[derive(Clone, Debug)]
pub struct BasicRange {
    pub leg: MultiIndex,
    /// Range of the basic set: the window cut to the reachable closures.
    pub range: Region,
    /// Union of all unit fibers over tails extending the range prefix.
    pub footprint: Region,
    pub relatively_open: bool,
}

/// Does some tail extension keep both regions intact at every level past
/// `after`? Beyond the remaining prefix the covers repeat, so checking one
/// full cycle decides all deeper levels.
fn sustainable(seq: &CoverSequence, after: usize, a: &Region, b: &Region) -> Result<bool> {
    let prefix = seq.prefix_len();
    let start = after + 1;
    let end = start.max(prefix) + seq.cycle_len();
    for k in start..end {
        let ok = seq
            .cover_at(k)
            .members()
            .iter()
            .try_fold(false, |acc, m| {
                Ok::<bool, Error>(acc || (a.is_subset_of(m)? && b.is_subset_of(m)?))
            })?;
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Union of `closure(A) ∩ closure(B)` over every pair of region chains
/// driven by a common tail from the two starting regions. The reachable
/// pair sets per level form a finite system that eventually cycles, and a
/// pair contributes exactly when it is reachable and sustainable.
fn tail_union(seq: &CoverSequence, level: usize, a0: Region, b0: Region) -> Result<Region> {
    let space = seq.space();
    let mut acc = Region::empty_for(space);
    let mut states: Vec<(Region, Region)> = Vec::new();
    if !a0.is_empty() && !b0.is_empty() {
        states.push((a0, b0));
    }
    let prefix = seq.prefix_len();
    let cycle = seq.cycle_len();
    let mut seen: Vec<(usize, Vec<(Region, Region)>)> = Vec::new();
    let mut m = level;
    loop {
        for (a, b) in &states {
            if sustainable(seq, m, a, b)? {
                let piece = a.closure(space)?.intersect(&b.closure(space)?)?;
                acc = acc.union(&piece)?;
            }
        }
        if states.is_empty() {
            break;
        }
        if m + 1 >= prefix {
            let phase = (m + 1 - prefix) % cycle;
            let key = (phase, states.clone());
            if seen.contains(&key) {
                break;
            }
            seen.push(key);
        }
        let mut next: Vec<(Region, Region)> = Vec::new();
        for (a, b) in &states {
            for p in seq.cover_at(m + 1).members() {
                let na = a.intersect(p)?;
                if na.is_empty() {
                    continue;
                }
                let nb = b.intersect(p)?;
                if nb.is_empty() {
                    continue;
                }
                let pair = (na, nb);
                if !next.contains(&pair) {
                    next.push(pair);
                }
            }
        }
        next.sort();
        states = next;
        m += 1;
        assert!(
            m <= level + prefix + 64 * cycle + 64,
            "region pair states failed to cycle"
        );
    }
    Ok(acc)
}

/// Computes the range of a basic set inside the closed core, the union of
/// unit fibers it can meet, and whether the range is open relative to that
/// footprint.
pub fn basic_range(seq: &CoverSequence, b: &BasicSet) -> Result<BasicRange> {
    let a0 = seq.w_region(&b.range_prefix)?;
    let b0 = seq.w_region(&b.source_prefix)?;
    let reach = tail_union(seq, b.level, a0.clone(), b0)?;
    let range = b.window.intersect(&reach)?;
    if range.is_empty() {
        return Err(Error::EmptyBasicSet);
    }
    let footprint = tail_union(seq, b.level, a0.clone(), a0)?;
    let relatively_open = range.is_open_in(seq.space(), &footprint)?;
    Ok(BasicRange { leg: b.range_prefix.clone(), range, footprint, relatively_open })
}

/// Membership record for the standard witness family showing the open core
/// has a boundary point with no compact neighborhood: a sequence inside
/// the open core converging to a point that only the closed core contains.
#[derive(Clone, Debug)]
pub struct LocalCompactnessReport {
    /// `(n, k, membership)` for the arrows with point `1/2 + 1/k` and legs
    /// starting with `n` zeros before the constant-one tail.
    pub approach_in_open_core: Vec<(usize, usize, bool)>,
    /// Per `n`: the limit arrow at `1/2` lies in the closed core.
    pub limit_in_closed_core: Vec<(usize, bool)>,
    /// Per `n`: the limit arrow at `1/2` escapes the open core.
    pub limit_in_open_core: Vec<(usize, bool)>,
    /// The all-zeros diagonal at `1/2` stays in the open core.
    pub diagonal_in_open_core: bool,
    pub holds: bool,
}

/// Runs the witness family on the builtin two-member tower over `[0,1]`
/// whose second member is `(1/2, 1]`; any other sequence is rejected.
pub fn script_local_compactness_failure(seq: &CoverSequence) -> Result<LocalCompactnessReport> {
    if *seq != crate::builtins::example_c() {
        return Err(Error::WrongBuiltin("example_C"));
    }
    let mut approach = Vec::new();
    let mut limit_closed = Vec::new();
    let mut limit_open = Vec::new();
    for n in 0..=2 {
        let leg = OmegaPoint::new(vec![0; n], vec![1])?;
        for k in 3..=10usize {
            let t = Point::Coordinate(ratio((k as i64) + 2, 2 * k as i64));
            let x = LimitArrow::new(leg.clone(), t, leg.clone());
            approach.push((n, k, in_open_core(seq, &x)?));
        }
        let lim = LimitArrow::new(leg.clone(), Point::Coordinate(ratio(1, 2)), leg.clone());
        limit_closed.push((n, in_closed_core(seq, &lim)?));
        limit_open.push((n, in_open_core(seq, &lim)?));
    }
    let diag = LimitArrow::new(
        OmegaPoint::constant(0),
        Point::Coordinate(ratio(1, 2)),
        OmegaPoint::constant(0),
    );
    let diagonal_in_open_core = in_open_core(seq, &diag)?;
    let holds = approach.iter().all(|&(_, _, b)| b)
        && limit_closed.iter().all(|&(_, b)| b)
        && limit_open.iter().all(|&(_, b)| !b)
        && diagonal_in_open_core;
    Ok(LocalCompactnessReport {
        approach_in_open_core: approach,
        limit_in_closed_core: limit_closed,
        limit_in_open_core: limit_open,
        diagonal_in_open_core,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{example_a, example_b, example_c};
    use crate::rational::rat;
    use crate::region::Interval;

    fn arrow(s: &str) -> LimitArrow {
        LimitArrow::parse(s).unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["(0|2, 0, |2)", "(|1, 1/2, 0|1)", "(0,2|1,2, -3/4, |2)"] {
            let x = arrow(s);
            assert_eq!(LimitArrow::parse(&x.to_string()).unwrap(), x);
        }
        let p = arrow("(|0, #0, |0)");
        assert_eq!(p.point, Point::Index(0));
        assert!(LimitArrow::parse("0|2, 0, |2").is_err());
        assert!(LimitArrow::parse("(0|2, 0)").is_err());
        assert!(LimitArrow::parse("(0|2, zero, |2)").is_err());
    }

    #[test]
    fn sharp_example_membership_ladder() {
        let seq = example_a();
        let z = arrow("(0|2, 0, 1|2)");
        assert!(in_bundle(&seq, &z).unwrap());
        assert!(in_closed_core(&seq, &z).unwrap());
        assert!(!in_open_core_closure(&seq, &z).unwrap());
        assert!(!in_open_core(&seq, &z).unwrap());
        assert_eq!(in_limit(&seq, &z).unwrap(), None);

        let x = arrow("(0|2, 0, |2)");
        let y = arrow("(|2, 0, 1|2)");
        assert!(in_open_core_closure(&seq, &x).unwrap());
        assert!(in_open_core_closure(&seq, &y).unwrap());
        assert!(!in_open_core(&seq, &x).unwrap());
        let z2 = compose_limit(&x, &y).unwrap();
        assert_eq!(z2, z);
        // The closure of the open core is not closed under products.
        assert!(!in_open_core_closure(&seq, &z2).unwrap());

        let shadow = z.project(0);
        assert!(!finite::in_level(&seq, &shadow).unwrap());
        assert!(finite::in_level_closed(&seq, &shadow).unwrap());
    }

    #[test]
    fn factorization_matches_the_worked_example() {
        let seq = example_a();
        let z = arrow("(0|2, 0, 1|2)");
        let (x, y) = factor_through_closure(&seq, &z).unwrap();
        assert_eq!(x.source_leg, OmegaPoint::constant(2));
        assert_eq!(y.range_leg, OmegaPoint::constant(2));
        assert!(in_open_core_closure(&seq, &x).unwrap());
        assert!(in_open_core_closure(&seq, &y).unwrap());
        assert_eq!(compose_limit(&x, &y).unwrap(), z);
    }

    #[test]
    fn factorization_rejects_non_members() {
        let seq = example_a();
        let outside = arrow("(0|0, 1/2, 0|0)");
        // Stable region [-1,0) has closure [-1,0]; 1/2 is outside.
        assert!(!in_closed_core(&seq, &outside).unwrap());
        assert!(matches!(
            factor_through_closure(&seq, &outside),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn limit_membership_and_least_witness() {
        let seq = example_a();
        let diag = arrow("(|2, 1/4, |2)");
        assert_eq!(in_limit(&seq, &diag).unwrap(), Some(0));
        let mixed = arrow("(0|2, -1/2, |2)");
        assert_eq!(in_limit(&seq, &mixed).unwrap(), Some(0));
        assert!(in_window(&seq, &mixed, 0).unwrap());
        let deep = arrow("(2,2,0|2, -1/2, |2)");
        // Legs agree beyond level 2 only.
        assert_eq!(deep.divergence(), Some(2));
        assert_eq!(in_limit(&seq, &deep).unwrap(), Some(2));
        // Open core members always lie in the limit groupoid.
        assert!(in_open_core(&seq, &diag).unwrap());
        let z = arrow("(0|2, 0, 1|2)");
        assert!(!in_window(&seq, &z, 0).unwrap());
        assert!(in_closed_band(&seq, &z, 0).unwrap());
    }

    #[test]
    fn bands_increase_and_projection_respects_structure() {
        let seq = example_a();
        let z = arrow("(0|2, 0, 1|2)");
        for n in 0..6 {
            if in_closed_band(&seq, &z, n).unwrap() {
                assert!(in_closed_band(&seq, &z, n + 1).unwrap());
            }
        }
        // Closed-core arrows project into the closed level groupoids.
        for n in 0..4 {
            assert!(finite::in_level_closed(&seq, &z.project(n)).unwrap());
        }
        // Projection at n factors through projection at m ≥ n.
        let x = arrow("(0,2|1, 1/2, |1)");
        assert_eq!(x.project(4).project(1), x.project(1));
        // Units project to units, inverses to inverses.
        assert!(arrow("(0|1, 0, 0|1)").project(2).is_unit());
        assert_eq!(z.inverse().project(1), z.project(1).inverse());
    }

    #[test]
    fn composition_requires_exact_middle_match() {
        let x = arrow("(0|2, 0, |2)");
        let y = arrow("(|2, 0, 1|2)");
        assert!(compose_limit(&x, &y).is_some());
        // Same tail written with a longer head still composes: normal
        // forms make the equality exact.
        let y2 = arrow("(2,2|2, 0, 1|2)");
        assert!(compose_limit(&x, &y2).is_some());
        let wrong_point = arrow("(|2, 1/2, 1|2)");
        assert!(compose_limit(&x, &wrong_point).is_none());
        let wrong_leg = arrow("(0|2, 0, 1|2)");
        assert!(compose_limit(&x, &wrong_leg).is_none());
        assert_eq!(x.inverse().inverse(), x);
    }

    #[test]
    fn basic_range_reproduces_the_etale_failure() {
        let seq = example_b();
        let b = BasicSet::new(
            &seq,
            MultiIndex(vec![0]),
            MultiIndex(vec![1]),
            Region::from_intervals(vec![Interval::new(ratio(1, 4), ratio(3, 4), false, false)]),
        )
        .unwrap();
        let out = basic_range(&seq, &b).unwrap();
        let expected =
            Region::from_intervals(vec![Interval::new(ratio(1, 2), ratio(3, 4), true, false)]);
        assert_eq!(out.range, expected);
        let full = Region::from_intervals(vec![Interval::new(rat(0), rat(1), true, true)]);
        assert_eq!(out.footprint, full);
        assert!(!out.relatively_open);
    }

    #[test]
    fn diagonal_basic_ranges_are_open() {
        let seq = example_b();
        let b = BasicSet::new(
            &seq,
            MultiIndex(vec![0]),
            MultiIndex(vec![0]),
            Region::from_intervals(vec![Interval::new(ratio(1, 4), ratio(3, 4), false, false)]),
        )
        .unwrap();
        let out = basic_range(&seq, &b).unwrap();
        assert!(out.relatively_open);
        let expected =
            Region::from_intervals(vec![Interval::new(ratio(1, 4), ratio(3, 4), false, false)]);
        assert_eq!(out.range, expected);

        let seq_a = example_a();
        let b2 = BasicSet::new(
            &seq_a,
            MultiIndex(vec![2]),
            MultiIndex(vec![2]),
            Region::from_intervals(vec![Interval::new(ratio(-1, 2), ratio(1, 2), false, false)]),
        )
        .unwrap();
        let out2 = basic_range(&seq_a, &b2).unwrap();
        assert!(out2.relatively_open);
    }

    #[test]
    fn empty_basic_sets_are_rejected() {
        let seq = example_a();
        assert!(matches!(
            BasicSet::new(
                &seq,
                MultiIndex(vec![0]),
                MultiIndex(vec![0]),
                Region::from_intervals(vec![]),
            ),
            Err(Error::EmptyBasicSet)
        ));
        // Window misses every reachable closure: range comes up empty.
        let b = BasicSet::new(
            &seq,
            MultiIndex(vec![0]),
            MultiIndex(vec![0]),
            Region::from_intervals(vec![Interval::new(ratio(1, 4), ratio(1, 2), false, false)]),
        )
        .unwrap();
        assert!(matches!(basic_range(&seq, &b), Err(Error::EmptyBasicSet)));
        // Prefix index outside the cover.
        assert!(BasicSet::new(
            &seq,
            MultiIndex(vec![7]),
            MultiIndex(vec![0]),
            Region::from_intervals(vec![Interval::new(ratio(-1, 2), ratio(1, 2), false, false)]),
        )
        .is_err());
    }

    #[test]
    fn local_compactness_script_verifies_the_witness_family() {
        let report = script_local_compactness_failure(&example_c()).unwrap();
        assert!(report.holds);
        assert_eq!(report.approach_in_open_core.len(), 3 * 8);
        assert!(report.diagonal_in_open_core);
        assert!(matches!(
            script_local_compactness_failure(&example_a()),
            Err(Error::WrongBuiltin("example_C"))
        ));
    }

    #[test]
    fn points_outside_the_space_are_errors() {
        let seq = example_a();
        let x = arrow("(|2, 5, |2)");
        assert!(matches!(in_bundle(&seq, &x), Err(Error::PointOutsideSpace(_))));
        assert!(matches!(in_limit(&seq, &x), Err(Error::PointOutsideSpace(_))));
    }
}
