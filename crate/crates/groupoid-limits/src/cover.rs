//! Ordered sequences of finite open covers, multi-indices over them, and the
//! chamber decomposition of the base space at each finite level.
//!
//! A `CoverSequence` assigns to every level `k ≥ 0` a finite open cover of
//! the space, given as a finite prefix followed by a repeating cycle of
//! covers. A `MultiIndex` picks one member per level up to some level `N`;
//! its intersection region `W` is what the finite-level groupoids are built
//! from. An `OmegaPoint` is an infinite, eventually periodic choice of
//! members, the tail data of the limit objects.
//!
//! Eventual periodicity is what keeps every question here decidable: the
//! decreasing chain of intersection regions along any point repeats over one
//! aligned period and is therefore constant from a computable level on.

use crate::error::{Error, Result};
use crate::region::{Point, Region, Space};
use num::integer::lcm;
use std::collections::BTreeMap;
use std::fmt;

pub const DEFAULT_OMEGA_CAP: usize = 200_000;

/// A choice of one cover member per level `0..=N`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(pub Vec<usize>);

impl MultiIndex {
    pub fn level(&self) -> usize {
        debug_assert!(!self.0.is_empty());
        self.0.len() - 1
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    /// Entries `0..=n`; requires `n <= level`.
    pub fn prefix(&self, n: usize) -> MultiIndex {
        assert!(n < self.0.len(), "prefix level {n} exceeds level {}", self.level());
        MultiIndex(self.0[..=n].to_vec())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// An infinite, eventually periodic member choice: `head` then `cycle`
/// repeated forever. Stored in normal form (primitive cycle, shortest head),
/// so structural equality is equality of the underlying sequences.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OmegaPoint {
    head: Vec<usize>,
    cycle: Vec<usize>,
}

fn primitive_cycle(cycle: Vec<usize>) -> Vec<usize> {
    let p = cycle.len();
    for d in 1..=p {
        if p % d == 0 && (0..p).all(|i| cycle[i] == cycle[i % d]) {
            return cycle[..d].to_vec();
        }
    }
    cycle
}

impl OmegaPoint {
    pub fn new(mut head: Vec<usize>, cycle: Vec<usize>) -> Result<OmegaPoint> {
        if cycle.is_empty() {
            return Err(Error::Precondition("omega point needs a nonempty cycle".into()));
        }
        let mut cycle = primitive_cycle(cycle);
        // Absorb head entries that already match the repeating tail: the
        // sequence h…x (c₀…c_{p-1})^ω with x = c_{p-1} equals
        // h… (c_{p-1} c₀ … c_{p-2})^ω.
        while let Some(&h) = head.last() {
            if h == *cycle.last().expect("nonempty cycle") {
                head.pop();
                cycle.rotate_right(1);
            } else {
                break;
            }
        }
        Ok(OmegaPoint { head, cycle })
    }

    pub fn constant(index: usize) -> OmegaPoint {
        OmegaPoint { head: Vec::new(), cycle: vec![index] }
    }

    pub fn head(&self) -> &[usize] {
        &self.head
    }

    pub fn cycle(&self) -> &[usize] {
        &self.cycle
    }

    pub fn index_at(&self, k: usize) -> usize {
        if k < self.head.len() {
            self.head[k]
        } else {
            self.cycle[(k - self.head.len()) % self.cycle.len()]
        }
    }

    pub fn truncate(&self, n: usize) -> MultiIndex {
        MultiIndex((0..=n).map(|k| self.index_at(k)).collect())
    }

    /// Replaces the entries through the prefix's level and keeps the rest
    /// of this sequence unchanged, renormalizing the result.
    pub fn with_prefix(&self, prefix: &MultiIndex) -> Result<OmegaPoint> {
        let n = prefix.level();
        let h = self.head.len();
        let explicit = (n + 1).max(h);
        let head: Vec<usize> = (0..explicit)
            .map(|k| if k <= n { prefix.entries()[k] } else { self.index_at(k) })
            .collect();
        let mut cycle = self.cycle.clone();
        let shift = (explicit - h) % cycle.len();
        cycle.rotate_left(shift);
        OmegaPoint::new(head, cycle)
    }

    /// Parses the `head|cycle` literal: single digits juxtaposed, or
    /// comma-separated entries when any index needs several digits.
    pub fn parse(s: &str) -> Result<OmegaPoint> {
        let s = s.trim();
        let (h, c) = s
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("omega literal `{s}` needs a `|`")))?;
        OmegaPoint::new(parse_index_run(h)?, parse_index_run(c)?)
    }
}

fn parse_index_run(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    if s.contains(',') {
        s.split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad index `{p}`")))
            })
            .collect()
    } else {
        s.chars()
            .map(|ch| {
                ch.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| Error::Parse(format!("bad index digit `{ch}`")))
            })
            .collect()
    }
}

fn fmt_index_run(xs: &[usize]) -> String {
    if xs.iter().all(|&x| x < 10) {
        xs.iter().map(|x| x.to_string()).collect()
    } else {
        xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for OmegaPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", fmt_index_run(&self.head), fmt_index_run(&self.cycle))
    }
}

/// Tail equivalence: the two sequences agree from some level on. Returns the
/// least `n` such that they agree at every `k > n` (0 when they agree
/// everywhere), or `None` when the tails differ forever.
pub fn tail_equivalent(a: &OmegaPoint, b: &OmegaPoint) -> Option<usize> {
    let h = a.head.len().max(b.head.len());
    let p = lcm(a.cycle.len(), b.cycle.len());
    if (h..h + p).any(|k| a.index_at(k) != b.index_at(k)) {
        return None;
    }
    let last_mismatch = (0..h).rev().find(|&k| a.index_at(k) != b.index_at(k));
    Some(last_mismatch.unwrap_or(0))
}

/// Whether the sequences agree at every level `k > n`.
pub fn legs_agree_beyond(a: &OmegaPoint, b: &OmegaPoint, n: usize) -> bool {
    let h = a.head.len().max(b.head.len()).max(n + 1);
    let p = lcm(a.cycle.len(), b.cycle.len());
    (n + 1..h + p).all(|k| a.index_at(k) == b.index_at(k))
}

/// One finite ordered cover: the member list may repeat regions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    members: Vec<Region>,
}

impl Cover {
    pub fn members(&self) -> &[Region] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum LevelRef {
    Prefix(usize),
    Cycle(usize),
}

impl fmt::Display for LevelRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LevelRef::Prefix(i) => write!(f, "prefix[{i}]"),
            LevelRef::Cycle(i) => write!(f, "cycle[{i}]"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum DefectKind {
    /// Member is not open in the space.
    NotOpen { member: usize, region: Region },
    /// The union of the members misses part of the space.
    Gap { missing: Region },
}

#[derive(Clone, Debug)]
pub struct CoverDefect {
    pub level: LevelRef,
    pub kind: DefectKind,
}

impl fmt::Display for CoverDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            DefectKind::NotOpen { member, region } => {
                write!(f, "{}: member {} = {} is not open in the space", self.level, member, region)
            }
            DefectKind::Gap { missing } => {
                write!(f, "{}: members do not cover {}", self.level, missing)
            }
        }
    }
}

/// The full tower of covers: `prefix[0..K]` then `cycle` repeated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSequence {
    space: Space,
    prefix: Vec<Cover>,
    cycle: Vec<Cover>,
}

impl CoverSequence {
    /// Builds the sequence, canonicalizing every member region and rejecting
    /// structurally bad input (regions outside the space, empty cycle,
    /// covers with no members).
    pub fn new(space: Space, prefix: Vec<Vec<Region>>, cycle: Vec<Vec<Region>>) -> Result<CoverSequence> {
        if cycle.is_empty() {
            return Err(Error::Precondition("cover sequence needs a nonempty tail cycle".into()));
        }
        let build = |covers: Vec<Vec<Region>>| -> Result<Vec<Cover>> {
            covers
                .into_iter()
                .map(|members| {
                    if members.is_empty() {
                        return Err(Error::Precondition("cover needs at least one member".into()));
                    }
                    let members = members
                        .into_iter()
                        .map(|m| Region::normalize_in(&space, m))
                        .collect::<Result<Vec<_>>>()?;
                    Ok(Cover { members })
                })
                .collect()
        };
        let prefix = build(prefix)?;
        let cycle = build(cycle)?;
        Ok(CoverSequence { space, prefix, cycle })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn prefix_len(&self) -> usize {
        self.prefix.len()
    }

    pub fn cycle_len(&self) -> usize {
        self.cycle.len()
    }

    pub fn cover_at(&self, k: usize) -> &Cover {
        if k < self.prefix.len() {
            &self.prefix[k]
        } else {
            &self.cycle[(k - self.prefix.len()) % self.cycle.len()]
        }
    }

    pub fn level_ref(&self, k: usize) -> LevelRef {
        if k < self.prefix.len() {
            LevelRef::Prefix(k)
        } else {
            LevelRef::Cycle((k - self.prefix.len()) % self.cycle.len())
        }
    }

    /// Number of member choices at level `k`.
    pub fn omega_size(&self, k: usize) -> usize {
        self.cover_at(k).len()
    }

    pub fn member(&self, k: usize, index: usize) -> Result<&Region> {
        let cover = self.cover_at(k);
        cover.members.get(index).ok_or(Error::IndexOutOfRange {
            level: k,
            index,
            size: cover.len(),
        })
    }

    /// Semantic validation: every member open in the space, every level
    /// covering the whole space. One pass over the prefix and the cycle
    /// suffices since levels repeat.
    pub fn validate(&self) -> Vec<CoverDefect> {
        let mut defects = Vec::new();
        let whole = self.space.whole();
        let mut check = |level: LevelRef, cover: &Cover| {
            let mut union = Region::empty_for(&self.space);
            for (i, m) in cover.members.iter().enumerate() {
                match m.is_open_in(&self.space, &whole) {
                    Ok(true) => {}
                    _ => defects.push(CoverDefect {
                        level,
                        kind: DefectKind::NotOpen { member: i, region: m.clone() },
                    }),
                }
                union = union.union(m).expect("members share the space");
            }
            let missing = whole.subtract(&union).expect("members share the space");
            if !missing.is_empty() {
                defects.push(CoverDefect { level, kind: DefectKind::Gap { missing } });
            }
        };
        for (i, c) in self.prefix.iter().enumerate() {
            check(LevelRef::Prefix(i), c);
        }
        for (i, c) in self.cycle.iter().enumerate() {
            check(LevelRef::Cycle(i), c);
        }
        defects
    }

    /// Checks that an omega point only ever uses member indices that exist.
    /// Levels beyond one aligned period repeat, so the finite window decides.
    pub fn check_point(&self, p: &OmegaPoint) -> Result<()> {
        let window = self.prefix.len().max(p.head.len()) + lcm(self.cycle.len(), p.cycle.len());
        for k in 0..window {
            let idx = p.index_at(k);
            if idx >= self.omega_size(k) {
                return Err(Error::IndexOutOfRange {
                    level: k,
                    index: idx,
                    size: self.omega_size(k),
                });
            }
        }
        Ok(())
    }

    /// Intersection `W` of the chosen members over levels `0..=N`.
    pub fn w_region(&self, idx: &MultiIndex) -> Result<Region> {
        let mut w = self.space.whole();
        for (k, &i) in idx.entries().iter().enumerate() {
            w = w.intersect(self.member(k, i)?)?;
        }
        Ok(w)
    }

    /// The decreasing chain of joint member intersections along the given
    /// omega points, computed until it provably stabilizes. `per_level[N]`
    /// is the intersection of all chosen members through level `N`; the
    /// chain is constant from `stable_from` on.
    pub fn joint_open_chain(&self, legs: &[&OmegaPoint]) -> Result<StableChain> {
        assert!(!legs.is_empty());
        for leg in legs {
            self.check_point(leg)?;
        }
        let align = self
            .prefix
            .len()
            .max(legs.iter().map(|l| l.head.len()).max().unwrap_or(0));
        let period = legs
            .iter()
            .fold(self.cycle.len(), |m, l| lcm(m, l.cycle.len()));
        let mut w = self.space.whole();
        let mut chain: Vec<Region> = Vec::new();
        let mut n = 0usize;
        loop {
            for leg in legs {
                w = w.intersect(self.member(n, leg.index_at(n))?)?;
            }
            chain.push(w.clone());
            if n >= align + period && chain[n] == chain[n - period] {
                break;
            }
            assert!(
                n <= align + 2 * period + 1,
                "region chain failed to stabilize within the aligned bound"
            );
            n += 1;
        }
        let stable = chain.last().expect("nonempty chain").clone();
        let stable_from = chain
            .iter()
            .position(|r| *r == stable)
            .expect("stable value occurs");
        Ok(StableChain { per_level: chain, stable_from })
    }

    /// The intersection of the closures of the `W` regions along `p`, with
    /// the first level from which the closure chain is already constant.
    pub fn stable_w_closure(&self, p: &OmegaPoint) -> Result<(Region, usize)> {
        let chain = self.joint_open_chain(&[p])?;
        let stable = chain.stable().closure(&self.space)?;
        for (n, w) in chain.per_level.iter().enumerate() {
            if w.closure(&self.space)? == stable {
                return Ok((stable, n));
            }
        }
        unreachable!("closure of the stable region occurs in the chain");
    }

    pub fn level_view(&self, level: usize) -> Result<LevelView> {
        self.level_view_capped(level, DEFAULT_OMEGA_CAP)
    }

    /// Chamber decomposition at `level`, refusing to enumerate more than
    /// `cap` multi-indices.
    pub fn level_view_capped(&self, level: usize, cap: usize) -> Result<LevelView> {
        let mut total: u128 = 1;
        for k in 0..=level {
            total = total.saturating_mul(self.omega_size(k) as u128);
        }
        if total > cap as u128 {
            return Err(Error::CapExceeded {
                level,
                requested: total.min(usize::MAX as u128) as usize,
                cap,
            });
        }
        let omega = self.enumerate_omega(level);
        let gens: Vec<(Region, Region)> = omega
            .iter()
            .map(|mi| {
                let w = self.w_region(mi)?;
                let cl = w.closure(&self.space)?;
                Ok((w, cl))
            })
            .collect::<Result<Vec<_>>>()?;
        let chambers = match &self.space {
            Space::Finite { size } => finite_chambers(*size, &gens),
            Space::Intervals { .. } => interval_chambers(&self.space, &gens),
        };
        Ok(LevelView { level, space: self.space.clone(), omega, chambers })
    }

    fn enumerate_omega(&self, level: usize) -> Vec<MultiIndex> {
        let sizes: Vec<usize> = (0..=level).map(|k| self.omega_size(k)).collect();
        let mut out = Vec::new();
        let mut current = vec![0usize; level + 1];
        loop {
            out.push(MultiIndex(current.clone()));
            // lexicographic increment, most significant entry first
            let mut k = level + 1;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                current[k] += 1;
                if current[k] < sizes[k] {
                    break;
                }
                current[k] = 0;
            }
        }
    }
}

/// A decreasing region chain that is constant from `stable_from` on.
#[derive(Clone, Debug)]
pub struct StableChain {
    pub per_level: Vec<Region>,
    pub stable_from: usize,
}

impl StableChain {
    pub fn stable(&self) -> &Region {
        self.per_level.last().expect("nonempty chain")
    }

    /// Value at level `n`, extended by constancy beyond the computed window.
    pub fn at(&self, n: usize) -> &Region {
        if n < self.per_level.len() {
            &self.per_level[n]
        } else {
            self.stable()
        }
    }
}

/// One atom of the partition generated by all `W` regions and their
/// closures at a fixed level. `open_sig` and `closed_sig` are the sorted
/// positions (into the level's multi-index enumeration) whose `W`, resp.
/// closure of `W`, contains the chamber; `open_sig ⊆ closed_sig` pointwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chamber {
    pub region: Region,
    pub open_sig: Vec<usize>,
    pub closed_sig: Vec<usize>,
    /// Position of each `open_sig` entry inside `closed_sig`.
    pub open_in_closed: Vec<usize>,
}

fn build_chamber(region: Region, open_bits: &[bool], closed_bits: &[bool]) -> Chamber {
    let open_sig: Vec<usize> = open_bits
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i))
        .collect();
    let closed_sig: Vec<usize> = closed_bits
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i))
        .collect();
    let open_in_closed = open_sig
        .iter()
        .map(|i| closed_sig.binary_search(i).expect("open signature inside closed"))
        .collect();
    Chamber { region, open_sig, closed_sig, open_in_closed }
}

fn finite_chambers(size: usize, gens: &[(Region, Region)]) -> Vec<Chamber> {
    let mut groups: BTreeMap<(Vec<bool>, Vec<bool>), Vec<usize>> = BTreeMap::new();
    for i in 0..size {
        let p = Point::Index(i);
        let open: Vec<bool> = gens.iter().map(|(w, _)| w.contains(&p)).collect();
        let closed: Vec<bool> = gens.iter().map(|(_, c)| c.contains(&p)).collect();
        groups.entry((open, closed)).or_default().push(i);
    }
    let mut chambers: Vec<Chamber> = groups
        .into_iter()
        .map(|((open, closed), idx)| build_chamber(Region::from_indices(idx), &open, &closed))
        .collect();
    chambers.sort_by(|a, b| a.region.cmp(&b.region));
    chambers
}

fn interval_chambers(space: &Space, gens: &[(Region, Region)]) -> Vec<Chamber> {
    let components = match space {
        Space::Intervals { components } => components,
        Space::Finite { .. } => unreachable!(),
    };
    // Generator endpoints split each component into singleton and open-gap
    // atoms on which every generator membership is constant.
    let cuts: Vec<_> = gens
        .iter()
        .flat_map(|(w, c)| {
            let mut e = w.endpoints();
            e.extend(c.endpoints());
            e
        })
        .collect();
    let mut atoms: Vec<Region> = Vec::new();
    for (lo, hi) in components {
        let mut pts: Vec<_> = cuts
            .iter()
            .filter(|x| *x >= lo && *x <= hi)
            .cloned()
            .collect();
        pts.push(lo.clone());
        pts.push(hi.clone());
        pts.sort();
        pts.dedup();
        for (i, p) in pts.iter().enumerate() {
            atoms.push(Region::from_intervals(vec![crate::region::Interval::point(p.clone())]));
            if i + 1 < pts.len() {
                atoms.push(Region::from_intervals(vec![crate::region::Interval::open(
                    p.clone(),
                    pts[i + 1].clone(),
                )]));
            }
        }
    }
    let mut groups: BTreeMap<(Vec<bool>, Vec<bool>), Vec<Region>> = BTreeMap::new();
    for atom in atoms {
        let sample = &atom.sample_points()[0];
        let open: Vec<bool> = gens.iter().map(|(w, _)| w.contains(sample)).collect();
        let closed: Vec<bool> = gens.iter().map(|(_, c)| c.contains(sample)).collect();
        groups.entry((open, closed)).or_default().push(atom);
    }
    let mut chambers: Vec<Chamber> = groups
        .into_iter()
        .map(|((open, closed), regions)| {
            let region = regions
                .into_iter()
                .reduce(|a, b| a.union(&b).expect("same space"))
                .expect("group is nonempty");
            build_chamber(region, &open, &closed)
        })
        .collect();
    chambers.sort_by(|a, b| a.region.cmp(&b.region));
    chambers
}

/// The chamber decomposition of the space at one level, together with the
/// full multi-index enumeration the signatures refer to.
#[derive(Clone, Debug)]
pub struct LevelView {
    level: usize,
    space: Space,
    omega: Vec<MultiIndex>,
    chambers: Vec<Chamber>,
}

impl LevelView {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn omega(&self) -> &[MultiIndex] {
        &self.omega
    }

    pub fn chambers(&self) -> &[Chamber] {
        &self.chambers
    }

    pub fn chamber(&self, c: usize) -> &Chamber {
        &self.chambers[c]
    }

    /// The unique chamber containing the point, if the point lies in the space.
    pub fn chamber_of(&self, p: &Point) -> Option<usize> {
        self.chambers.iter().position(|c| c.region.contains(p))
    }

    pub fn multi_index(&self, pos: usize) -> &MultiIndex {
        &self.omega[pos]
    }

    /// Position of `mi` within the chamber's open signature.
    pub fn open_pos(&self, c: usize, mi: &MultiIndex) -> Option<usize> {
        let at = self.omega.iter().position(|x| x == mi)?;
        self.chambers[c].open_sig.binary_search(&at).ok()
    }

    /// Position of `mi` within the chamber's closed signature.
    pub fn closed_pos(&self, c: usize, mi: &MultiIndex) -> Option<usize> {
        let at = self.omega.iter().position(|x| x == mi)?;
        self.chambers[c].closed_sig.binary_search(&at).ok()
    }

    pub fn open_sig_indices<'a>(&'a self, c: usize) -> impl Iterator<Item = &'a MultiIndex> + 'a {
        self.chambers[c].open_sig.iter().map(move |&i| &self.omega[i])
    }

    pub fn closed_sig_indices<'a>(&'a self, c: usize) -> impl Iterator<Item = &'a MultiIndex> + 'a {
        self.chambers[c].closed_sig.iter().map(move |&i| &self.omega[i])
    }
}
