//! Normalized 2-cocycles on the closed level groupoids, stored chamberwise.
//!
//! Within one chamber every arrow is determined by its two multi-indices,
//! so a cocycle is a table `σ[i,j,k]` over triples of closed-signature
//! positions: the value on the composable pair `((i,t,j), (j,t,k))`. Values
//! are exact circle elements (`Turn`), so the cocycle identity, coboundary
//! comparisons, and pullbacks are all decided exactly.
//!
//! The identity checked over each quadruple `(i,j,k,l)` is
//! `σ[i,k,l]·σ[i,j,k] = σ[j,k,l]·σ[i,j,l]`, and normalization demands
//! `σ[i,i,j] = σ[i,j,j] = 1`. A generator `μ[i,j]` (with `μ[i,i] = 1`)
//! induces the coboundary `σ[i,j,k] = μ[i,j]·μ[j,k]·conj(μ[i,k])`.

use crate::cover::{CoverSequence, LevelView};
use crate::error::{Error, Result};
use crate::turn::Turn;

#[derive(Clone, Debug)]
pub enum CocycleTable {
    /// Identically 1; kept symbolic so large trivial levels cost nothing.
    Trivial { dim: usize },
    Dense { dim: usize, entries: Vec<Turn> },
}

impl CocycleTable {
    pub fn trivial(dim: usize) -> CocycleTable {
        CocycleTable::Trivial { dim }
    }

    pub fn dense_zero(dim: usize) -> CocycleTable {
        CocycleTable::Dense { dim, entries: vec![Turn::ZERO; dim * dim * dim] }
    }

    pub fn dim(&self) -> usize {
        match self {
            CocycleTable::Trivial { dim } | CocycleTable::Dense { dim, .. } => *dim,
        }
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Turn {
        match self {
            CocycleTable::Trivial { .. } => Turn::ZERO,
            CocycleTable::Dense { dim, entries } => entries[(i * dim + j) * dim + k],
        }
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: Turn) {
        if let CocycleTable::Trivial { dim } = self {
            *self = CocycleTable::dense_zero(*dim);
        }
        match self {
            CocycleTable::Dense { dim, entries } => entries[(i * *dim + j) * *dim + k] = value,
            CocycleTable::Trivial { .. } => unreachable!(),
        }
    }
}

impl PartialEq for CocycleTable {
    fn eq(&self, other: &Self) -> bool {
        let d = self.dim();
        if d != other.dim() {
            return false;
        }
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    if self.get(i, j, k) != other.get(i, j, k) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl Eq for CocycleTable {}

/// A cocycle on the closed groupoid of one level: one table per chamber,
/// aligned with the chamber order of that level's view.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleData {
    pub level: usize,
    pub tables: Vec<CocycleTable>,
}

impl CocycleData {
    pub fn trivial(view: &LevelView) -> CocycleData {
        CocycleData {
            level: view.level(),
            tables: view
                .chambers()
                .iter()
                .map(|c| CocycleTable::trivial(c.closed_sig.len()))
                .collect(),
        }
    }

    pub fn check_alignment(&self, view: &LevelView) -> Result<()> {
        if self.level != view.level() {
            return Err(Error::LevelMismatch(format!(
                "cocycle at level {} used with view at level {}",
                self.level,
                view.level()
            )));
        }
        if self.tables.len() != view.chambers().len() {
            return Err(Error::BadTable(format!(
                "{} tables for {} chambers",
                self.tables.len(),
                view.chambers().len()
            )));
        }
        for (c, (t, ch)) in self.tables.iter().zip(view.chambers()).enumerate() {
            if t.dim() != ch.closed_sig.len() {
                return Err(Error::BadTable(format!(
                    "chamber {c} table has dimension {} but the closed signature has {}",
                    t.dim(),
                    ch.closed_sig.len()
                )));
            }
        }
        Ok(())
    }

    /// Copy with one entry replaced; densifies the chamber's table.
    #[must_use]
    pub fn with_entry(&self, chamber: usize, i: usize, j: usize, k: usize, value: Turn) -> CocycleData {
        let mut out = self.clone();
        out.tables[chamber].set(i, j, k, value);
        out
    }

    /// Pointwise product; the group operation on cocycles.
    pub fn product(&self, other: &CocycleData) -> Result<CocycleData> {
        if self.level != other.level || self.tables.len() != other.tables.len() {
            return Err(Error::LevelMismatch("cocycle product across levels".into()));
        }
        let tables = self
            .tables
            .iter()
            .zip(&other.tables)
            .map(|(a, b)| {
                let d = a.dim();
                if d != b.dim() {
                    return Err(Error::BadTable("cocycle product with mismatched dimensions".into()));
                }
                if let (CocycleTable::Trivial { .. }, CocycleTable::Trivial { .. }) = (a, b) {
                    return Ok(CocycleTable::trivial(d));
                }
                let mut t = CocycleTable::dense_zero(d);
                for i in 0..d {
                    for j in 0..d {
                        for k in 0..d {
                            t.set(i, j, k, a.get(i, j, k).mul(b.get(i, j, k)));
                        }
                    }
                }
                Ok(t)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CocycleData { level: self.level, tables })
    }

    /// Pointwise conjugate; the group inverse.
    #[must_use]
    pub fn inverse(&self) -> CocycleData {
        let tables = self
            .tables
            .iter()
            .map(|t| match t {
                CocycleTable::Trivial { dim } => CocycleTable::trivial(*dim),
                CocycleTable::Dense { dim, entries } => CocycleTable::Dense {
                    dim: *dim,
                    entries: entries.iter().map(|x| x.conj()).collect(),
                },
            })
            .collect();
        CocycleData { level: self.level, tables }
    }
}

/// Chamberwise generator `μ[i,j]` over closed-signature positions, with
/// `μ[i,i] = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoboundaryGenerator {
    pub level: usize,
    pub tables: Vec<MuTable>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuTable {
    dim: usize,
    entries: Vec<Turn>,
}

impl MuTable {
    pub fn identity(dim: usize) -> MuTable {
        MuTable { dim, entries: vec![Turn::ZERO; dim * dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Turn {
        self.entries[i * self.dim + j]
    }

    /// Diagonal entries must stay 1; off-diagonal assignments are free.
    pub fn set(&mut self, i: usize, j: usize, value: Turn) -> Result<()> {
        if i == j && !value.is_one() {
            return Err(Error::Precondition(
                "coboundary generator must be 1 on unit arrows".into(),
            ));
        }
        self.entries[i * self.dim + j] = value;
        Ok(())
    }
}

impl CoboundaryGenerator {
    pub fn identity(view: &LevelView) -> CoboundaryGenerator {
        CoboundaryGenerator {
            level: view.level(),
            tables: view
                .chambers()
                .iter()
                .map(|c| MuTable::identity(c.closed_sig.len()))
                .collect(),
        }
    }
}

/// The coboundary `δμ`: `σ[i,j,k] = μ[i,j]·μ[j,k]·conj(μ[i,k])`.
pub fn coboundary_from(view: &LevelView, mu: &CoboundaryGenerator) -> Result<CocycleData> {
    if mu.level != view.level() || mu.tables.len() != view.chambers().len() {
        return Err(Error::LevelMismatch("generator does not match the view".into()));
    }
    let tables = mu
        .tables
        .iter()
        .zip(view.chambers())
        .map(|(m, ch)| {
            let d = ch.closed_sig.len();
            if m.dim() != d {
                return Err(Error::BadTable("generator dimension mismatch".into()));
            }
            if m.entries.iter().all(|t| t.is_one()) {
                return Ok(CocycleTable::trivial(d));
            }
            let mut t = CocycleTable::dense_zero(d);
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        t.set(i, j, k, m.get(i, j).mul(m.get(j, k)).mul(m.get(i, k).conj()));
                    }
                }
            }
            Ok(t)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CocycleData { level: view.level(), tables })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `σ[i,i,j]` or `σ[i,j,j]` differs from 1.
    Normalization { chamber: usize, i: usize, j: usize, value: Turn },
    /// The identity fails on the quadruple `(i,j,k,l)`.
    Identity {
        chamber: usize,
        quad: [usize; 4],
        lhs: Turn,
        rhs: Turn,
    },
}

impl Violation {
    pub fn chamber(&self) -> usize {
        match self {
            Violation::Normalization { chamber, .. } | Violation::Identity { chamber, .. } => {
                *chamber
            }
        }
    }

    /// Renders the offending arrows with their multi-index names.
    pub fn describe(&self, view: &LevelView) -> String {
        let name = |c: usize, pos: usize| {
            let at = view.chamber(c).closed_sig[pos];
            view.multi_index(at).to_string()
        };
        match self {
            Violation::Normalization { chamber, i, j, value } => format!(
                "chamber {chamber} ({}): unit-arrow value σ on ({}, {}) is {value}, not 1",
                view.chamber(*chamber).region,
                name(*chamber, *i),
                name(*chamber, *j)
            ),
            Violation::Identity { chamber, quad: [i, j, k, l], lhs, rhs } => format!(
                "chamber {chamber} ({}): identity fails on ({}, {}, {}, {}): {lhs} ≠ {rhs}",
                view.chamber(*chamber).region,
                name(*chamber, *i),
                name(*chamber, *j),
                name(*chamber, *k),
                name(*chamber, *l)
            ),
        }
    }
}

/// Exhaustive exact check of normalization and the cocycle identity.
/// Structural misalignment is an error; mathematical failures come back as
/// the (possibly empty) violation list.
pub fn verify_cocycle(view: &LevelView, sigma: &CocycleData) -> Result<Vec<Violation>> {
    sigma.check_alignment(view)?;
    let mut out = Vec::new();
    for (c, table) in sigma.tables.iter().enumerate() {
        if let CocycleTable::Trivial { .. } = table {
            continue;
        }
        let d = table.dim();
        for i in 0..d {
            for j in 0..d {
                let left_unit = table.get(i, i, j);
                if !left_unit.is_one() {
                    out.push(Violation::Normalization { chamber: c, i, j, value: left_unit });
                }
                let right_unit = table.get(i, j, j);
                if !right_unit.is_one() {
                    out.push(Violation::Normalization { chamber: c, i, j, value: right_unit });
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        let lhs = table.get(i, k, l).mul(table.get(i, j, k));
                        let rhs = table.get(j, k, l).mul(table.get(i, j, l));
                        if lhs != rhs {
                            out.push(Violation::Identity { chamber: c, quad: [i, j, k, l], lhs, rhs });
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Trivializes a verified cocycle: on a full pair fiber every cocycle is a
/// coboundary, with the gauge-fixed generator `μ[i,j] = σ[i,j,0]`. Inputs
/// failing verification are rejected with the first violation.
pub fn is_coboundary(view: &LevelView, sigma: &CocycleData) -> Result<CoboundaryGenerator> {
    let violations = verify_cocycle(view, sigma)?;
    if let Some(v) = violations.first() {
        return Err(Error::NotACocycle(v.describe(view)));
    }
    let tables = sigma
        .tables
        .iter()
        .map(|t| {
            let d = t.dim();
            let mut m = MuTable::identity(d);
            for i in 0..d {
                for j in 0..d {
                    m.set(i, j, t.get(i, j, 0)).expect("σ[i,i,0] = 1 after verification");
                }
            }
            m
        })
        .collect();
    let mu = CoboundaryGenerator { level: sigma.level, tables };
    let back = coboundary_from(view, &mu)?;
    assert_eq!(&back, sigma, "gauge-fixed generator must reproduce the cocycle");
    Ok(mu)
}

/// Transports a level-`n` cocycle to a deeper level `m ≥ n` along the
/// prefix projection: the value on deeper arrows depends only on the
/// level-`n` truncations. Each deeper chamber sits inside a unique shallower
/// chamber, and truncating a closed-signature index lands in that chamber's
/// closed signature.
pub fn pullback(
    seq: &CoverSequence,
    sigma: &CocycleData,
    from: &LevelView,
    to: &LevelView,
) -> Result<CocycleData> {
    sigma.check_alignment(from)?;
    if to.level() < from.level() {
        return Err(Error::LevelMismatch(format!(
            "pullback goes to a deeper level: {} < {}",
            to.level(),
            from.level()
        )));
    }
    let _ = seq;
    let n = from.level();
    let mut tables = Vec::with_capacity(to.chambers().len());
    for ch in to.chambers() {
        let parent = from
            .chambers()
            .iter()
            .position(|p| ch.region.is_subset_of(&p.region).unwrap_or(false))
            .ok_or_else(|| {
                Error::Precondition(format!(
                    "chamber {} at level {} is not inside a level-{} chamber",
                    ch.region,
                    to.level(),
                    n
                ))
            })?;
        let src = &sigma.tables[parent];
        let d = ch.closed_sig.len();
        if let CocycleTable::Trivial { .. } = src {
            tables.push(CocycleTable::trivial(d));
            continue;
        }
        let map: Vec<usize> = ch
            .closed_sig
            .iter()
            .map(|&pos| {
                let mi = to.multi_index(pos).prefix(n);
                from.closed_pos(parent, &mi).ok_or_else(|| {
                    Error::Precondition(format!(
                        "truncated index {mi} missing from the parent chamber signature"
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut t = CocycleTable::dense_zero(d);
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    t.set(i, j, k, src.get(map[i], map[j], map[k]));
                }
            }
        }
        tables.push(t);
    }
    Ok(CocycleData { level: to.level(), tables })
}

/// A compatible family of cocycles along the tower, presented by its value
/// at a base level; deeper levels are pullbacks, and evaluation on limit
/// arrows factors through the base truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitCocycle {
    pub base_level: usize,
    pub data: CocycleData,
}

impl LimitCocycle {
    pub fn new(base_level: usize, data: CocycleData) -> Result<LimitCocycle> {
        if data.level != base_level {
            return Err(Error::LevelMismatch(format!(
                "limit cocycle based at {} holds level-{} data",
                base_level, data.level
            )));
        }
        Ok(LimitCocycle { base_level, data })
    }

    pub fn trivial(view: &LevelView) -> LimitCocycle {
        LimitCocycle { base_level: view.level(), data: CocycleData::trivial(view) }
    }
}
