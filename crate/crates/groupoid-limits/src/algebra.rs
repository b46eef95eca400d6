//! Twisted convolution algebras of the level groupoids.
//!
//! An element of the convolution algebra at level `N` is constant in the
//! point coordinate across each chamber, so it is stored as one complex
//! matrix per chamber, indexed by the chamber's fiber: the open signature
//! for functions on the open groupoid, the closed signature for functions
//! on its closure. Convolution, the involution, and the norms all act
//! blockwise; the cocycle supplies the twist.
//!
//! Two norms are computed. The summing norm bounds every representation by
//! row and column mass. The reduced norm is the largest operator norm of
//! the induced matrices `T_γ[α,β] = f[α,β]·σ(α,β,γ)` over all chambers and
//! base units `γ`; conjugating by the diagonal unitary `σ(·,γ,γ')` shows
//! the choice of `γ` inside one chamber never changes that norm, which the
//! tests pin down.

use num::complex::Complex64;

use crate::cocycle::{CocycleData, CocycleTable};
use crate::cover::{Chamber, LevelView};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::parallel;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    /// Functions on the open level groupoid; blocks over open signatures.
    Open,
    /// Functions on the closed level groupoid; blocks over closed signatures.
    Closed,
}

impl Domain {
    pub fn fiber<'a>(self, ch: &'a Chamber) -> &'a [usize] {
        match self {
            Domain::Open => &ch.open_sig,
            Domain::Closed => &ch.closed_sig,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement {
    pub level: usize,
    pub domain: Domain,
    pub blocks: Vec<CMatrix>,
}

impl AlgebraElement {
    pub fn zero(view: &LevelView, domain: Domain) -> AlgebraElement {
        AlgebraElement {
            level: view.level(),
            domain,
            blocks: view
                .chambers()
                .iter()
                .map(|ch| CMatrix::zeros(domain.fiber(ch).len()))
                .collect(),
        }
    }

    /// The unit: 1 on every unit arrow of the domain groupoid.
    pub fn identity(view: &LevelView, domain: Domain) -> AlgebraElement {
        AlgebraElement {
            level: view.level(),
            domain,
            blocks: view
                .chambers()
                .iter()
                .map(|ch| CMatrix::identity(domain.fiber(ch).len()))
                .collect(),
        }
    }

    pub fn check_alignment(&self, view: &LevelView) -> Result<()> {
        if self.level != view.level() {
            return Err(Error::LevelMismatch(format!(
                "element at level {} used with view at level {}",
                self.level,
                view.level()
            )));
        }
        if self.blocks.len() != view.chambers().len() {
            return Err(Error::BadTable(format!(
                "{} blocks for {} chambers",
                self.blocks.len(),
                view.chambers().len()
            )));
        }
        for (c, (b, ch)) in self.blocks.iter().zip(view.chambers()).enumerate() {
            let want = self.domain.fiber(ch).len();
            if b.dim() != want {
                return Err(Error::BadTable(format!(
                    "chamber {c} block has dimension {} but the fiber has {want}",
                    b.dim()
                )));
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.zip_same_shape(other)?;
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(AlgebraElement { level: self.level, domain: self.domain, blocks })
    }

    pub fn sub(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.zip_same_shape(other)?;
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.sub(b))
            .collect();
        Ok(AlgebraElement { level: self.level, domain: self.domain, blocks })
    }

    #[must_use]
    pub fn scale(&self, z: Complex64) -> AlgebraElement {
        AlgebraElement {
            level: self.level,
            domain: self.domain,
            blocks: self.blocks.iter().map(|b| b.scale(z)).collect(),
        }
    }

    /// Largest entry magnitude across all blocks.
    pub fn max_abs(&self) -> f64 {
        self.blocks.iter().map(CMatrix::max_abs).fold(0.0, f64::max)
    }

    fn zip_same_shape(&self, other: &AlgebraElement) -> Result<()> {
        if self.level != other.level
            || self.domain != other.domain
            || self.blocks.len() != other.blocks.len()
            || self
                .blocks
                .iter()
                .zip(&other.blocks)
                .any(|(a, b)| a.dim() != b.dim())
        {
            return Err(Error::DomainMismatch(
                "elements live on different level groupoids".into(),
            ));
        }
        Ok(())
    }
}

/// Cocycle value with indices in the element's domain. Cocycle tables are
/// stored over closed positions; open positions route through the chamber's
/// embedding of its open signature in the closed one.
fn twist(table: &CocycleTable, ch: &Chamber, domain: Domain, i: usize, j: usize, k: usize) -> Complex64 {
    match domain {
        Domain::Closed => table.get(i, j, k).to_complex(),
        Domain::Open => {
            let m = &ch.open_in_closed;
            table.get(m[i], m[j], m[k]).to_complex()
        }
    }
}

fn check_sigma(view: &LevelView, sigma: &CocycleData) -> Result<()> {
    sigma.check_alignment(view)
}

/// Twisted convolution: `(f∗g)[α,γ] = Σ_β f[α,β]·g[β,γ]·σ(α,β,γ)`.
pub fn convolve(
    view: &LevelView,
    f: &AlgebraElement,
    g: &AlgebraElement,
    sigma: &CocycleData,
) -> Result<AlgebraElement> {
    f.check_alignment(view)?;
    g.check_alignment(view)?;
    f.zip_same_shape(g)?;
    check_sigma(view, sigma)?;
    let mut out = AlgebraElement::zero(view, f.domain);
    for (c, ch) in view.chambers().iter().enumerate() {
        let d = f.domain.fiber(ch).len();
        let (fb, gb) = (&f.blocks[c], &g.blocks[c]);
        let hb = &mut out.blocks[c];
        for a in 0..d {
            for k in 0..d {
                let mut acc = Complex64::new(0.0, 0.0);
                for b in 0..d {
                    acc += fb[(a, b)] * gb[(b, k)] * twist(&sigma.tables[c], ch, f.domain, a, b, k);
                }
                hb[(a, k)] = acc;
            }
        }
    }
    Ok(out)
}

/// Twisted involution: `f*[α,β] = conj(f[β,α]·σ(α,β,α))`.
pub fn involution(
    view: &LevelView,
    f: &AlgebraElement,
    sigma: &CocycleData,
) -> Result<AlgebraElement> {
    f.check_alignment(view)?;
    check_sigma(view, sigma)?;
    let mut out = AlgebraElement::zero(view, f.domain);
    for (c, ch) in view.chambers().iter().enumerate() {
        let d = f.domain.fiber(ch).len();
        for a in 0..d {
            for b in 0..d {
                let z = f.blocks[c][(b, a)] * twist(&sigma.tables[c], ch, f.domain, a, b, a);
                out.blocks[c][(a, b)] = z.conj();
            }
        }
    }
    Ok(out)
}

/// Summing norm: the largest row or column absolute sum over any unit.
pub fn i_norm(f: &AlgebraElement) -> f64 {
    let mut best: f64 = 0.0;
    for b in &f.blocks {
        let d = b.dim();
        for i in 0..d {
            let mut row = 0.0;
            let mut col = 0.0;
            for j in 0..d {
                row += b[(i, j)].norm();
                col += b[(j, i)].norm();
            }
            best = best.max(row).max(col);
        }
    }
    best
}

/// The matrix of the representation induced at the unit `γ` (a position in
/// the chamber's domain fiber): `T[α,β] = f[α,β]·σ(α,β,γ)`.
pub fn induced_block(
    view: &LevelView,
    f: &AlgebraElement,
    sigma: &CocycleData,
    chamber: usize,
    basepoint: usize,
) -> Result<CMatrix> {
    f.check_alignment(view)?;
    check_sigma(view, sigma)?;
    let ch = view.chamber(chamber);
    let d = f.domain.fiber(ch).len();
    if basepoint >= d {
        return Err(Error::IndexOutOfRange { level: f.level, index: basepoint, size: d });
    }
    let mut t = CMatrix::zeros(d);
    for a in 0..d {
        for b in 0..d {
            t[(a, b)] =
                f.blocks[chamber][(a, b)] * twist(&sigma.tables[chamber], ch, f.domain, a, b, basepoint);
        }
    }
    Ok(t)
}

/// Reduced norm: the largest operator norm of an induced matrix over every
/// chamber and every base unit of the domain groupoid. Chambers are
/// independent, so they fan out over threads; the final reduction runs in
/// chamber order and is reproducible.
pub fn reduced_norm(view: &LevelView, f: &AlgebraElement, sigma: &CocycleData) -> Result<f64> {
    f.check_alignment(view)?;
    check_sigma(view, sigma)?;
    let ids: Vec<usize> = (0..view.chambers().len()).collect();
    let per_chamber = parallel::map_ordered(&ids, |&c| -> Result<f64> {
        let d = f.domain.fiber(view.chamber(c)).len();
        let basepoints = match &sigma.tables[c] {
            CocycleTable::Trivial { .. } => 1,
            CocycleTable::Dense { .. } => d,
        };
        let mut best: f64 = 0.0;
        for g in 0..basepoints {
            best = best.max(induced_block(view, f, sigma, c, g)?.operator_norm());
        }
        Ok(best)
    });
    per_chamber.into_iter().try_fold(0.0_f64, |acc, r| Ok(acc.max(r?)))
}

/// Zero-pads a function on the open groupoid to one on its closure. This is
/// the inclusion of convolution algebras induced by the open subgroupoid.
pub fn embed_closed(view: &LevelView, f: &AlgebraElement) -> Result<AlgebraElement> {
    f.check_alignment(view)?;
    if f.domain != Domain::Open {
        return Err(Error::DomainMismatch("only open-domain elements embed".into()));
    }
    let mut out = AlgebraElement::zero(view, Domain::Closed);
    for (c, ch) in view.chambers().iter().enumerate() {
        let m = &ch.open_in_closed;
        for a in 0..m.len() {
            for b in 0..m.len() {
                out.blocks[c][(m[a], m[b])] = f.blocks[c][(a, b)];
            }
        }
    }
    Ok(out)
}
