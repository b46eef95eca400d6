//! Embeddings of the level algebras into functions on the limit groupoid.
//!
//! A level-`n` element is pushed forward to a cylinder function: on an
//! arrow of the limit groupoid lying in the level-`n` window it evaluates,
//! through truncation, to the corresponding payload entry; elsewhere it
//! vanishes. The norm of the image is computed from finitely many induced
//! blocks, the map is a *-homomorphism for the pulled-back twist, and for
//! point-space towers the construction specializes to a direct limit of
//! matrix algebras with block-diagonal inclusions.

use num::complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{self, AlgebraElement, Domain};
use crate::cocycle::{pullback, CocycleData, CocycleTable, LimitCocycle};
use crate::cover::{CoverSequence, LevelView, MultiIndex, OmegaPoint};
use crate::error::{Error, Result};
use crate::limit::{self, LimitArrow};
use crate::linalg::CMatrix;
use crate::parallel;
use crate::region::{Point, Space};

/// Allowed drift between the base-level norm enumeration and the one-level
/// deeper cross-check.
pub const CYLINDER_NORM_CROSS_TOL: f64 = 1e-8;

/// A level element wrapped with cylinder semantics on the limit groupoid.
#[derive(Clone, Debug)]
pub struct CylinderElement {
    payload: AlgebraElement,
    /// Twist at the payload level, pulled back from the base.
    sigma: CocycleData,
    base_level: usize,
}

impl CylinderElement {
    pub fn level(&self) -> usize {
        self.payload.level
    }

    pub fn payload(&self) -> &AlgebraElement {
        &self.payload
    }

    pub fn sigma(&self) -> &CocycleData {
        &self.sigma
    }

    pub fn base_level(&self) -> usize {
        self.base_level
    }
}

/// Wraps an open-domain level element as a cylinder function, pulling the
/// limit twist back to the element's level.
pub fn phi(
    seq: &CoverSequence,
    view: &LevelView,
    f: &AlgebraElement,
    twist: &LimitCocycle,
) -> Result<CylinderElement> {
    if f.domain != Domain::Open {
        return Err(Error::DomainMismatch(
            "cylinder payloads live on the open level groupoid".into(),
        ));
    }
    f.check_alignment(view)?;
    if twist.base_level > view.level() {
        return Err(Error::LevelMismatch(format!(
            "twist based at level {} cannot serve level {}",
            twist.base_level,
            view.level()
        )));
    }
    let sigma = if twist.base_level == view.level() {
        twist.data.clone()
    } else {
        let base_view = seq.level_view(twist.base_level)?;
        pullback(seq, &twist.data, &base_view, view)?
    };
    Ok(CylinderElement { payload: f.clone(), sigma, base_level: twist.base_level })
}

/// Evaluates the cylinder function: the payload entry at the truncated
/// legs when the arrow lies in the level window, zero otherwise.
pub fn eval_cylinder(
    seq: &CoverSequence,
    view: &LevelView,
    cyl: &CylinderElement,
    x: &LimitArrow,
) -> Result<Complex64> {
    let n = view.level();
    if cyl.level() != n {
        return Err(Error::LevelMismatch(format!(
            "cylinder at level {} evaluated with a level-{n} view",
            cyl.level()
        )));
    }
    if !limit::in_window(seq, x, n)? {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let c = view.chamber_of(&x.point).expect("window members lie in the space");
    let i = view
        .open_pos(c, &x.range_leg.truncate(n))
        .expect("window membership puts the range prefix in the open signature");
    let j = view
        .open_pos(c, &x.source_leg.truncate(n))
        .expect("window membership puts the source prefix in the open signature");
    Ok(cyl.payload.blocks[c][(i, j)])
}

/// Convolution of two cylinder functions at one arrow by direct summation
/// over middle legs. Only middle legs sharing the range leg's tail beyond
/// the level can contribute, so the sum runs over level prefixes.
pub fn eval_product_at(
    seq: &CoverSequence,
    view: &LevelView,
    u: &CylinderElement,
    v: &CylinderElement,
    x: &LimitArrow,
) -> Result<Complex64> {
    let n = view.level();
    if u.level() != n || v.level() != n || u.sigma != v.sigma {
        return Err(Error::DomainMismatch(
            "cylinder product needs matching levels and twists".into(),
        ));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for g in 0..view.omega().len() {
        let mid = view.multi_index(g);
        let gamma = x.range_leg.with_prefix(mid)?;
        let y = LimitArrow::new(x.range_leg.clone(), x.point.clone(), gamma.clone());
        let z = LimitArrow::new(gamma, x.point.clone(), x.source_leg.clone());
        let a = eval_cylinder(seq, view, u, &y)?;
        if a == Complex64::new(0.0, 0.0) {
            continue;
        }
        let b = eval_cylinder(seq, view, v, &z)?;
        if b == Complex64::new(0.0, 0.0) {
            continue;
        }
        let c = view.chamber_of(&x.point).expect("nonzero factors force a chamber");
        let ci = view
            .closed_pos(c, &x.range_leg.truncate(n))
            .expect("nonzero factor puts the range prefix in the closed signature");
        let cg = view.closed_pos(c, mid).expect("nonzero factor puts the middle in the closed signature");
        let cj = view
            .closed_pos(c, &x.source_leg.truncate(n))
            .expect("nonzero factor puts the source prefix in the closed signature");
        acc += a * b * cyl_twist(&u.sigma, c, ci, cg, cj);
    }
    Ok(acc)
}

fn cyl_twist(sigma: &CocycleData, c: usize, i: usize, j: usize, k: usize) -> Complex64 {
    sigma.tables[c].get(i, j, k).to_complex()
}

fn basepoint_set(table: &CocycleTable, dim: usize, full: bool) -> Vec<usize> {
    match table {
        CocycleTable::Trivial { .. } => vec![0],
        CocycleTable::Dense { .. } => {
            if full || dim <= 16 {
                (0..dim).collect()
            } else {
                let mut v = vec![0, dim / 2, dim - 1];
                v.dedup();
                v
            }
        }
    }
}

/// Largest induced-block operator norm of the cylinder enumerated at level
/// `m ≥ n`: blocks over open fibers with rows and columns tied to share
/// their tail entries beyond `n`, twisted by the pulled-back cocycle at a
/// closed-signature basepoint.
fn norm_scan(
    seq: &CoverSequence,
    view: &LevelView,
    cyl: &CylinderElement,
    m: usize,
) -> Result<f64> {
    let n = view.level();
    let deeper_storage;
    let vm: &LevelView = if m == n {
        view
    } else {
        deeper_storage = seq.level_view(m)?;
        &deeper_storage
    };
    let sigma_storage;
    let sig: &CocycleData = if m == n {
        &cyl.sigma
    } else {
        sigma_storage = pullback(seq, &cyl.sigma, view, vm)?;
        &sigma_storage
    };
    let ids: Vec<usize> = (0..vm.chambers().len()).collect();
    let per_chamber = parallel::map_ordered(&ids, |&c| -> f64 {
        let ch = &vm.chambers()[c];
        let parent = if m == n {
            c
        } else {
            view.chambers()
                .iter()
                .position(|p| ch.region.is_subset_of(&p.region).unwrap_or(false))
                .expect("deeper chambers refine the base partition")
        };
        let d = ch.open_sig.len();
        let mut parent_open = Vec::with_capacity(d);
        let mut suffix: Vec<&[usize]> = Vec::with_capacity(d);
        for &pos in &ch.open_sig {
            let mi = vm.multi_index(pos);
            let pi = view
                .open_pos(parent, &mi.prefix(n))
                .expect("open membership truncates to open membership");
            parent_open.push(pi);
            suffix.push(&mi.entries()[n + 1..]);
        }
        let o2c = &ch.open_in_closed;
        let mut best: f64 = 0.0;
        for bp in basepoint_set(&sig.tables[c], ch.closed_sig.len(), m == n) {
            let mut t = CMatrix::zeros(d);
            for i in 0..d {
                for j in 0..d {
                    if suffix[i] == suffix[j] {
                        t[(i, j)] = cyl.payload.blocks[parent][(parent_open[i], parent_open[j])]
                            * cyl_twist(sig, c, o2c[i], o2c[j], bp);
                    }
                }
            }
            best = best.max(t.operator_norm());
        }
        best
    });
    Ok(per_chamber.into_iter().fold(0.0_f64, f64::max))
}

/// Reduced norm of the cylinder image: the base-level enumeration over
/// chambers and closed-signature basepoints, cross-checked against the
/// one-level-deeper enumeration on every call. Basepoints within a chamber
/// give unitarily conjugate blocks, so the deeper scan samples a spread of
/// them when the fiber is large.
pub fn reduced_norm_cylinder(
    seq: &CoverSequence,
    view: &LevelView,
    cyl: &CylinderElement,
) -> Result<f64> {
    if cyl.level() != view.level() {
        return Err(Error::LevelMismatch(format!(
            "cylinder at level {} normed with a level-{} view",
            cyl.level(),
            view.level()
        )));
    }
    let base = norm_scan(seq, view, cyl, view.level())?;
    let deeper = norm_scan(seq, view, cyl, view.level() + 1)?;
    assert!(
        (base - deeper).abs() <= CYLINDER_NORM_CROSS_TOL * base.max(1.0),
        "norm enumeration changed one level deeper: {base} vs {deeper}"
    );
    Ok(base)
}

/// A matrix-unit certificate that the limit groupoid is covered by the
/// cylinder supports: at the witness level, the single matrix unit named
/// by the truncated legs evaluates to a nonzero value on the arrow.
#[derive(Clone, Debug)]
pub struct SupportWitness {
    pub arrow: LimitArrow,
    pub level: usize,
    pub chamber: usize,
    pub range_prefix: MultiIndex,
    pub source_prefix: MultiIndex,
    pub value: Complex64,
}

/// Builds and validates the witness for an arrow of the limit groupoid.
pub fn support_witness(seq: &CoverSequence, x: &LimitArrow) -> Result<SupportWitness> {
    let Some(n) = limit::in_limit(seq, x)? else {
        return Err(Error::Precondition(
            "support witnesses exist only for limit groupoid members".into(),
        ));
    };
    let view = seq.level_view(n)?;
    let c = view.chamber_of(&x.point).expect("members lie in the space");
    let a = x.range_leg.truncate(n);
    let b = x.source_leg.truncate(n);
    let i = view.open_pos(c, &a).expect("witness level keeps the range prefix open");
    let j = view.open_pos(c, &b).expect("witness level keeps the source prefix open");
    let mut delta = AlgebraElement::zero(&view, Domain::Open);
    delta.blocks[c][(i, j)] = Complex64::new(1.0, 0.0);
    let cyl = phi(seq, &view, &delta, &LimitCocycle::trivial(&view))?;
    let value = eval_cylinder(seq, &view, &cyl, x)?;
    assert!(value != Complex64::new(0.0, 0.0), "matrix unit must hit its own arrow");
    Ok(SupportWitness { arrow: x.clone(), level: n, chamber: c, range_prefix: a, source_prefix: b, value })
}

/// Whether some level image up to `max_level` tells the two arrows apart:
/// a level where exactly one lies in the window, or where both do with
/// different projections.
pub fn can_separate(
    seq: &CoverSequence,
    x: &LimitArrow,
    y: &LimitArrow,
    max_level: usize,
) -> Result<bool> {
    if limit::in_limit(seq, x)?.is_none() || limit::in_limit(seq, y)?.is_none() {
        return Err(Error::Precondition(
            "separation is assessed between limit groupoid members".into(),
        ));
    }
    if x == y {
        return Err(Error::Precondition("separation needs two distinct arrows".into()));
    }
    for k in 0..=max_level {
        let zx = limit::in_window(seq, x, k)?;
        let zy = limit::in_window(seq, y, k)?;
        if zx != zy {
            return Ok(true);
        }
        if zx && zy && x.project(k) != y.project(k) {
            return Ok(true);
        }
    }
    Ok(false)
}

fn require_point_tower(seq: &CoverSequence) -> Result<()> {
    if !matches!(seq.space(), Space::Finite { size: 1 }) {
        return Err(Error::Precondition(
            "block amplification needs a point-space tower".into(),
        ));
    }
    Ok(())
}

fn full_point_view(view: &LevelView) -> Result<()> {
    if view.chambers().len() == 1 && view.chamber(0).open_sig.len() == view.omega().len() {
        Ok(())
    } else {
        Err(Error::Precondition(
            "point-space levels must form a single full fiber".into(),
        ))
    }
}

/// Block-diagonal inclusion of the level-`n` matrix algebra into level
/// `n+1`: the extended index repeats the block once per new cover member.
pub fn amplify(seq: &CoverSequence, f: &AlgebraElement) -> Result<AlgebraElement> {
    require_point_tower(seq)?;
    let n = f.level;
    let vn = seq.level_view(n)?;
    let vn1 = seq.level_view(n + 1)?;
    f.check_alignment(&vn)?;
    full_point_view(&vn)?;
    full_point_view(&vn1)?;
    let dn = vn.omega().len();
    let m = seq.omega_size(n + 1);
    debug_assert_eq!(vn1.omega().len(), dn * m);
    let mut out = AlgebraElement::zero(&vn1, f.domain);
    for a in 0..dn {
        debug_assert_eq!(vn1.multi_index(a * m).prefix(n), *vn.multi_index(a));
        for b in 0..dn {
            for j in 0..m {
                out.blocks[0][(a * m + j, b * m + j)] = f.blocks[0][(a, b)];
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct LevelCheck {
    pub level: usize,
    pub dim: usize,
    pub eval_agrees: bool,
    pub norms_match: bool,
    pub star_respected: bool,
    pub inclusion_isometric: bool,
}

#[derive(Clone, Debug)]
pub struct DirectLimitReport {
    pub levels: Vec<LevelCheck>,
    pub dims: Vec<usize>,
    pub holds: bool,
}

fn random_leg(rng: &mut ChaCha8Rng, seq: &CoverSequence, slack: usize) -> Result<OmegaPoint> {
    let start = seq.prefix_len() + rng.gen_range(0..=slack);
    let head: Vec<usize> = (0..start).map(|k| rng.gen_range(0..seq.omega_size(k))).collect();
    let cycle: Vec<usize> = (start..start + seq.cycle_len())
        .map(|k| rng.gen_range(0..seq.omega_size(k)))
        .collect();
    OmegaPoint::new(head, cycle)
}

fn random_matrix_element(rng: &mut ChaCha8Rng, view: &LevelView) -> AlgebraElement {
    let mut f = AlgebraElement::zero(view, Domain::Open);
    for b in &mut f.blocks {
        let d = b.dim();
        for i in 0..d {
            for j in 0..d {
                b[(i, j)] = Complex64::new(
                    rng.gen::<f64>() * 2.0 - 1.0,
                    rng.gen::<f64>() * 2.0 - 1.0,
                );
            }
        }
    }
    f
}

/// Verifies, level by level, that the point-space tower is a direct limit
/// of matrix algebras under the block inclusions: cylinder evaluations
/// agree exactly through the inclusion, reduced norms match exactly, and
/// the inclusion is a unital isometric *-homomorphism.
pub fn check_direct_limit(
    seq: &CoverSequence,
    top_level: usize,
    per_level: usize,
    seed: u64,
) -> Result<DirectLimitReport> {
    require_point_tower(seq)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut levels = Vec::new();
    let mut dims = Vec::new();
    for n in 0..top_level {
        let vn = seq.level_view(n)?;
        let vn1 = seq.level_view(n + 1)?;
        dims.push(vn.omega().len());
        if n + 1 == top_level {
            dims.push(vn1.omega().len());
        }
        let trivial_n = CocycleData::trivial(&vn);
        let trivial_n1 = CocycleData::trivial(&vn1);
        let mut eval_agrees = true;
        let mut norms_match = true;
        let mut star_respected = true;
        let mut inclusion_isometric = true;
        let ident_ok = amplify(seq, &AlgebraElement::identity(&vn, Domain::Open))?
            .sub(&AlgebraElement::identity(&vn1, Domain::Open))?
            .max_abs()
            == 0.0;
        star_respected &= ident_ok;
        for _ in 0..per_level {
            let f = random_matrix_element(&mut rng, &vn);
            let g = amplify(seq, &f)?;
            let cf = phi(seq, &vn, &f, &LimitCocycle::trivial(&vn))?;
            let cg = phi(seq, &vn1, &g, &LimitCocycle::trivial(&vn1))?;
            norms_match &= reduced_norm_cylinder(seq, &vn, &cf)?
                == reduced_norm_cylinder(seq, &vn1, &cg)?;
            inclusion_isometric &= algebra::reduced_norm(&vn, &f, &trivial_n)?
                == algebra::reduced_norm(&vn1, &g, &trivial_n1)?;
            for _ in 0..8 {
                let alpha = random_leg(&mut rng, seq, n + 2)?;
                let depth = rng.gen_range(0..=n + 1);
                let prefix = MultiIndex(
                    (0..=depth).map(|k| rng.gen_range(0..seq.omega_size(k))).collect(),
                );
                let beta = alpha.with_prefix(&prefix)?;
                let x = LimitArrow::new(alpha, Point::Index(0), beta);
                eval_agrees &= eval_cylinder(seq, &vn, &cf, &x)?
                    == eval_cylinder(seq, &vn1, &cg, &x)?;
            }
            let f2 = random_matrix_element(&mut rng, &vn);
            let lhs = amplify(seq, &algebra::convolve(&vn, &f, &f2, &trivial_n)?)?;
            let rhs = algebra::convolve(&vn1, &g, &amplify(seq, &f2)?, &trivial_n1)?;
            star_respected &= lhs.sub(&rhs)?.max_abs() == 0.0;
            let lstar = amplify(seq, &algebra::involution(&vn, &f, &trivial_n)?)?;
            let rstar = algebra::involution(&vn1, &g, &trivial_n1)?;
            star_respected &= lstar.sub(&rstar)?.max_abs() == 0.0;
        }
        levels.push(LevelCheck {
            level: n,
            dim: vn.omega().len(),
            eval_agrees,
            norms_match,
            star_respected,
            inclusion_isometric,
        });
    }
    let holds = levels
        .iter()
        .all(|l| l.eval_agrees && l.norms_match && l.star_respected && l.inclusion_isometric);
    Ok(DirectLimitReport { levels, dims, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{example_a, example_b, uhf_cover};
    use crate::cocycle::{coboundary_from, CoboundaryGenerator};
    use crate::turn::Turn;

    fn arrow(s: &str) -> LimitArrow {
        LimitArrow::parse(s).unwrap()
    }

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    #[test]
    fn eval_reads_the_truncated_entry() {
        let seq = example_a();
        let view = seq.level_view(0).unwrap();
        let mut f = AlgebraElement::zero(&view, Domain::Open);
        // Chamber 0 is [-1,0) with open fiber ((0), (2)).
        f.blocks[0][(1, 0)] = Complex64::new(3.5, -1.0);
        let cyl = phi(&seq, &view, &f, &LimitCocycle::trivial(&view)).unwrap();
        let x = arrow("(|2, -1/2, 0|2)");
        assert_eq!(
            eval_cylinder(&seq, &view, &cyl, &x).unwrap(),
            Complex64::new(3.5, -1.0)
        );
        // Legs diverging beyond the level evaluate to zero.
        let deep = arrow("(2,0|2, -1/2, |2)");
        assert_eq!(eval_cylinder(&seq, &view, &cyl, &deep).unwrap(), Complex64::new(0.0, 0.0));
        // A closure-only projection evaluates to zero.
        let edge = arrow("(0|2, 0, |2)");
        assert_eq!(eval_cylinder(&seq, &view, &cyl, &edge).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn eval_is_linear_and_units_see_the_identity() {
        let seq = example_a();
        let view = seq.level_view(0).unwrap();
        let e = AlgebraElement::identity(&view, Domain::Open);
        let cyl = phi(&seq, &view, &e, &LimitCocycle::trivial(&view)).unwrap();
        let unit = arrow("(|2, -1/2, |2)");
        assert_eq!(eval_cylinder(&seq, &view, &cyl, &unit).unwrap(), one());
        let mut f = AlgebraElement::zero(&view, Domain::Open);
        f.blocks[0][(0, 1)] = Complex64::new(2.0, 0.0);
        let sum = e.add(&f).unwrap();
        let cs = phi(&seq, &view, &sum, &LimitCocycle::trivial(&view)).unwrap();
        let cf = phi(&seq, &view, &f, &LimitCocycle::trivial(&view)).unwrap();
        let x = arrow("(0|2, -1/2, |2)");
        let lhs = eval_cylinder(&seq, &view, &cs, &x).unwrap();
        let rhs = eval_cylinder(&seq, &view, &cyl, &x).unwrap()
            + eval_cylinder(&seq, &view, &cf, &x).unwrap();
        assert_eq!(lhs, rhs);
    }

    fn quarter_cocycle(view: &LevelView) -> CocycleData {
        let mut mu = CoboundaryGenerator::identity(view);
        for t in &mut mu.tables {
            let d = t.dim();
            for i in 0..d {
                for j in 0..d {
                    if i != j {
                        t.set(i, j, Turn::new((3 * i + j + 1) as i64, 8)).unwrap();
                    }
                }
            }
        }
        coboundary_from(view, &mu).unwrap()
    }

    fn seeded_element(view: &LevelView, seed: u64) -> AlgebraElement {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        random_matrix_element(&mut rng, view)
    }

    #[test]
    fn embedding_is_isometric_for_trivial_and_coboundary_twists() {
        for seq in [example_a(), example_b()] {
            for n in 0..=2 {
                let view = seq.level_view(n).unwrap();
                let twists = [
                    LimitCocycle::trivial(&view),
                    LimitCocycle::new(n, quarter_cocycle(&view)).unwrap(),
                ];
                for (t, twist) in twists.iter().enumerate() {
                    let f = seeded_element(&view, 100 * n as u64 + t as u64);
                    let cyl = phi(&seq, &view, &f, twist).unwrap();
                    let level_norm =
                        algebra::reduced_norm(&view, &f, cyl.sigma()).unwrap();
                    let cyl_norm = reduced_norm_cylinder(&seq, &view, &cyl).unwrap();
                    assert!(
                        (level_norm - cyl_norm).abs() <= 1e-8 * level_norm.max(1.0),
                        "level {n} twist {t}: {level_norm} vs {cyl_norm}"
                    );
                }
            }
        }
    }

    #[test]
    fn twists_pull_back_from_shallower_base_levels() {
        let seq = example_a();
        let v0 = seq.level_view(0).unwrap();
        let v2 = seq.level_view(2).unwrap();
        let base = LimitCocycle::new(0, quarter_cocycle(&v0)).unwrap();
        let f = seeded_element(&v2, 7);
        let cyl = phi(&seq, &v2, &f, &base).unwrap();
        assert_eq!(cyl.sigma().level, 2);
        let level_norm = algebra::reduced_norm(&v2, &f, cyl.sigma()).unwrap();
        let cyl_norm = reduced_norm_cylinder(&seq, &v2, &cyl).unwrap();
        assert!((level_norm - cyl_norm).abs() <= 1e-8 * level_norm.max(1.0));
        // A base deeper than the payload level is rejected.
        assert!(phi(&seq, &v0, &seeded_element(&v0, 1), &LimitCocycle::trivial(&v2)).is_err());
    }

    #[test]
    fn norm_examples_unit_and_zero() {
        let seq = example_b();
        let view = seq.level_view(1).unwrap();
        let e = AlgebraElement::identity(&view, Domain::Open);
        let cyl = phi(&seq, &view, &e, &LimitCocycle::trivial(&view)).unwrap();
        assert!((reduced_norm_cylinder(&seq, &view, &cyl).unwrap() - 1.0).abs() < 1e-12);
        let z = AlgebraElement::zero(&view, Domain::Open);
        let cz = phi(&seq, &view, &z, &LimitCocycle::trivial(&view)).unwrap();
        assert_eq!(reduced_norm_cylinder(&seq, &view, &cz).unwrap(), 0.0);
    }

    #[test]
    fn pointwise_products_match_level_convolution() {
        let seq = example_a();
        let view = seq.level_view(1).unwrap();
        let sigma = quarter_cocycle(&view);
        let twist = LimitCocycle::new(1, sigma.clone()).unwrap();
        let f = seeded_element(&view, 21);
        let g = seeded_element(&view, 22);
        let cf = phi(&seq, &view, &f, &twist).unwrap();
        let cg = phi(&seq, &view, &g, &twist).unwrap();
        let fg = algebra::convolve(&view, &f, &g, &sigma).unwrap();
        let cfg = phi(&seq, &view, &fg, &twist).unwrap();
        for s in [
            "(0,2|2, -1/2, |2)",
            "(|2, -1/2, 0,2|2)",
            "(|2, 3/4, 1,1|2)",
            "(0,0|2, -1/4, 0,2|2)",
            "(|2, 1/2, |2)",
        ] {
            let x = arrow(s);
            let direct = eval_product_at(&seq, &view, &cf, &cg, &x).unwrap();
            let through = eval_cylinder(&seq, &view, &cfg, &x).unwrap();
            assert!(
                (direct - through).norm() <= 1e-10,
                "{s}: {direct} vs {through}"
            );
        }
    }

    #[test]
    fn pointwise_involution_matches_level_involution() {
        let seq = example_a();
        let view = seq.level_view(1).unwrap();
        let sigma = quarter_cocycle(&view);
        let twist = LimitCocycle::new(1, sigma.clone()).unwrap();
        let f = seeded_element(&view, 31);
        let fs = algebra::involution(&view, &f, &sigma).unwrap();
        let cf = phi(&seq, &view, &f, &twist).unwrap();
        let cfs = phi(&seq, &view, &fs, &twist).unwrap();
        let x = arrow("(0,2|2, -1/2, |2)");
        let n = view.level();
        let c = view.chamber_of(&x.point).unwrap();
        let i = view.closed_pos(c, &x.range_leg.truncate(n)).unwrap();
        let j = view.closed_pos(c, &x.source_leg.truncate(n)).unwrap();
        // f*(x) = conj(f(x⁻¹) σ(x, x⁻¹)) with σ(x, x⁻¹) read at (i, j, i).
        let direct = (eval_cylinder(&seq, &view, &cf, &x.inverse()).unwrap()
            * cyl_twist(&sigma, c, i, j, i))
        .conj();
        let through = eval_cylinder(&seq, &view, &cfs, &x).unwrap();
        assert!((direct - through).norm() <= 1e-12);
    }

    #[test]
    fn support_witnesses_match_the_worked_examples() {
        let seq = example_a();
        let unit = arrow("(|2, -1/2, |2)");
        let w = support_witness(&seq, &unit).unwrap();
        assert_eq!(w.level, 0);
        assert_eq!(w.range_prefix, MultiIndex(vec![2]));
        assert_eq!(w.source_prefix, MultiIndex(vec![2]));
        assert_eq!(w.value, one());

        let mixed = arrow("(0|2, -1/2, |2)");
        let w2 = support_witness(&seq, &mixed).unwrap();
        assert_eq!(w2.level, 0);
        assert_eq!(w2.range_prefix, MultiIndex(vec![0]));
        assert_eq!(w2.source_prefix, MultiIndex(vec![2]));
        assert_eq!(w2.value, one());

        let outside = arrow("(0|2, 0, 1|2)");
        assert!(support_witness(&seq, &outside).is_err());
    }

    #[test]
    fn separation_fails_on_the_tail_locked_pair() {
        let seq = example_a();
        let x = arrow("(2,0|2, 0, 2,0|2)");
        let y = arrow("(2,1|2, 0, 2,1|2)");
        assert_eq!(limit::in_limit(&seq, &x).unwrap(), Some(0));
        assert_eq!(limit::in_limit(&seq, &y).unwrap(), Some(0));
        for max_level in [0, 3, 12] {
            assert!(!can_separate(&seq, &x, &y, max_level).unwrap());
        }
        let a = arrow("(|2, -1/2, |2)");
        let b = arrow("(0|2, -1/2, 0|2)");
        assert!(can_separate(&seq, &a, &b, 0).unwrap());
        assert!(can_separate(&seq, &a, &b, 12).unwrap());
        assert!(can_separate(&seq, &a, &a, 3).is_err());
        let z = arrow("(0|2, 0, 1|2)");
        assert!(can_separate(&seq, &z, &a, 3).is_err());
    }

    #[test]
    fn amplification_matches_the_worked_block_example() {
        let seq = uhf_cover(&[], &[2]).unwrap();
        let v0 = seq.level_view(0).unwrap();
        let mut f = AlgebraElement::zero(&v0, Domain::Open);
        f.blocks[0][(0, 1)] = one();
        let g = amplify(&seq, &f).unwrap();
        assert_eq!(g.blocks[0].dim(), 4);
        assert_eq!(g.blocks[0][(0, 2)], one());
        assert_eq!(g.blocks[0][(1, 3)], one());
        assert_eq!(g.blocks[0][(0, 1)], Complex64::new(0.0, 0.0));
        let v1 = seq.level_view(1).unwrap();
        let n0 = algebra::reduced_norm(&v0, &f, &CocycleData::trivial(&v0)).unwrap();
        let n1 = algebra::reduced_norm(&v1, &g, &CocycleData::trivial(&v1)).unwrap();
        assert_eq!(n0, 1.0);
        assert_eq!(n1, 1.0);
        assert!(amplify(&example_a(), &f).is_err());
    }

    #[test]
    fn direct_limit_checks_hold_for_constant_and_periodic_factors() {
        let seq = uhf_cover(&[], &[2]).unwrap();
        let report = check_direct_limit(&seq, 4, 3, 11).unwrap();
        assert!(report.holds);
        assert_eq!(report.dims, vec![2, 4, 8, 16, 32]);

        let seq23 = uhf_cover(&[], &[2, 3]).unwrap();
        let report23 = check_direct_limit(&seq23, 3, 3, 12).unwrap();
        assert!(report23.holds);
        assert_eq!(report23.dims, vec![2, 6, 12, 36]);

        let ones = uhf_cover(&[], &[1]).unwrap();
        let rep1 = check_direct_limit(&ones, 3, 2, 13).unwrap();
        assert!(rep1.holds);
        assert_eq!(rep1.dims, vec![1, 1, 1, 1]);
    }
}
