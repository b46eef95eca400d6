//! Seeded generators for fuzzing towers, arrows, twists, and elements.
//!
//! Everything draws from a caller-provided ChaCha stream, so a fixed seed
//! reproduces the exact same objects across runs and platforms.

use num::complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraElement, Domain};
use crate::cocycle::{coboundary_from, CoboundaryGenerator, CocycleData};
use crate::cover::{CoverSequence, LevelView, MultiIndex, OmegaPoint};
use crate::error::Result;
use crate::limit::{self, greedy_extension, LimitArrow};
use crate::rational::{ratio, Rational};
use crate::region::{Interval, Point, Region, Space};
use crate::turn::Turn;

pub fn rng_from(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// An admissible sequence with uniform entries down to a random depth and a
/// uniform choice over one cover cycle beyond it.
pub fn omega_point(
    rng: &mut ChaCha8Rng,
    seq: &CoverSequence,
    slack: usize,
) -> Result<OmegaPoint> {
    let start = seq.prefix_len() + rng.gen_range(0..=slack);
    let head: Vec<usize> = (0..start).map(|k| rng.gen_range(0..seq.omega_size(k))).collect();
    let cycle: Vec<usize> = (start..start + seq.cycle_len())
        .map(|k| rng.gen_range(0..seq.omega_size(k)))
        .collect();
    OmegaPoint::new(head, cycle)
}

/// Exact points spread over the space: samples of the space itself plus
/// samples of every cover member closure through one full period.
pub fn point_pool(seq: &CoverSequence) -> Vec<Point> {
    let mut pool = seq.space().whole().sample_points();
    for k in 0..seq.prefix_len() + seq.cycle_len() {
        for m in seq.cover_at(k).members() {
            if let Ok(c) = m.closure(seq.space()) {
                pool.extend(c.sample_points());
            }
        }
    }
    pool.sort();
    pool.dedup();
    pool
}

pub fn point_from(rng: &mut ChaCha8Rng, pool: &[Point]) -> Point {
    pool[rng.gen_range(0..pool.len())].clone()
}

/// Arrow with independently drawn legs; lands anywhere in the big bundle.
pub fn bundle_arrow(
    rng: &mut ChaCha8Rng,
    seq: &CoverSequence,
    pool: &[Point],
    slack: usize,
) -> Result<LimitArrow> {
    let alpha = omega_point(rng, seq, slack)?;
    let beta = omega_point(rng, seq, slack)?;
    Ok(LimitArrow::new(alpha, point_from(rng, pool), beta))
}

/// Arrow whose legs agree beyond a random finite depth.
pub fn tailed_arrow(
    rng: &mut ChaCha8Rng,
    seq: &CoverSequence,
    pool: &[Point],
    slack: usize,
) -> Result<LimitArrow> {
    let alpha = omega_point(rng, seq, slack)?;
    let beta = if rng.gen_bool(0.25) {
        alpha.clone()
    } else {
        let depth = rng.gen_range(0..=seq.prefix_len() + slack);
        let prefix = MultiIndex(
            (0..=depth).map(|k| rng.gen_range(0..seq.omega_size(k))).collect(),
        );
        alpha.with_prefix(&prefix)?
    };
    Ok(LimitArrow::new(alpha, point_from(rng, pool), beta))
}

/// Mixture of tail-equivalent and fully independent arrows, for fuzzing
/// membership predicates across all strata.
pub fn mixed_arrow(
    rng: &mut ChaCha8Rng,
    seq: &CoverSequence,
    pool: &[Point],
    slack: usize,
) -> Result<LimitArrow> {
    if rng.gen_bool(0.5) {
        tailed_arrow(rng, seq, pool, slack)
    } else {
        bundle_arrow(rng, seq, pool, slack)
    }
}

fn members_containing(seq: &CoverSequence, k: usize, t: &Point) -> Vec<usize> {
    seq.cover_at(k)
        .members()
        .iter()
        .enumerate()
        .filter(|(_, m)| m.contains(t))
        .map(|(i, _)| i)
        .collect()
}

/// Arrow guaranteed to lie in the limit groupoid: both legs keep the point
/// inside their region chain at every level, via random containing picks
/// down to a random depth and greedy tails beyond it.
pub fn limit_arrow(
    rng: &mut ChaCha8Rng,
    seq: &CoverSequence,
    pool: &[Point],
    depth: usize,
) -> Result<LimitArrow> {
    let t = point_from(rng, pool);
    let d = rng.gen_range(0..=depth);
    let mut legs = Vec::with_capacity(2);
    for _ in 0..2 {
        let picks: Vec<usize> = (0..=d)
            .map(|k| {
                let opts = members_containing(seq, k, &t);
                opts[rng.gen_range(0..opts.len())]
            })
            .collect();
        legs.push(greedy_extension(seq, &MultiIndex(picks), &t)?);
    }
    let beta = legs.pop().expect("two legs were pushed");
    let alpha = legs.pop().expect("two legs were pushed");
    Ok(LimitArrow::new(alpha, t, beta))
}

/// Closed-core sample by rejection, seeded with guaranteed limit members
/// so the loop always terminates quickly.
pub fn closed_core_arrow(
    rng: &mut ChaCha8Rng,
    seq: &CoverSequence,
    pool: &[Point],
    slack: usize,
) -> Result<LimitArrow> {
    for round in 0..64 {
        let x = if round % 2 == 0 {
            tailed_arrow(rng, seq, pool, slack)?
        } else {
            limit_arrow(rng, seq, pool, slack)?
        };
        if limit::in_closed_core(seq, &x)? {
            return Ok(x);
        }
    }
    unreachable!("every second candidate lies in the limit groupoid")
}

fn rand_rational(rng: &mut ChaCha8Rng, lo: &Rational, hi: &Rational) -> Rational {
    const DENS: [i64; 8] = [1, 2, 3, 4, 6, 8, 12, 16];
    let den = DENS[rng.gen_range(0..DENS.len())];
    let num = rng.gen_range(0..=den);
    lo + (hi - lo) * ratio(num, den)
}

/// Random region drawn inside the space: a few rational intervals over the
/// hull for interval spaces, a uniform subset for finite spaces.
pub fn region(rng: &mut ChaCha8Rng, space: &Space) -> Result<Region> {
    match space {
        Space::Intervals { components } => {
            let lo = &components.first().expect("space is nonempty").0;
            let hi = &components.last().expect("space is nonempty").1;
            let count = rng.gen_range(0..=3);
            let ivs = (0..count)
                .map(|_| {
                    let a = rand_rational(rng, lo, hi);
                    let b = rand_rational(rng, lo, hi);
                    let (a, b) = if a <= b { (a, b) } else { (b, a) };
                    Interval::new(a, b, rng.gen_bool(0.5), rng.gen_bool(0.5))
                })
                .collect();
            Region::from_intervals(ivs).intersect(&space.whole())
        }
        Space::Finite { size } => {
            Ok(Region::from_indices((0..*size).filter(|_| rng.gen_bool(0.5))))
        }
    }
}

/// Element with independent uniform entries in the unit square of the
/// complex plane, one block per chamber.
pub fn element(rng: &mut ChaCha8Rng, view: &LevelView, domain: Domain) -> AlgebraElement {
    let mut f = AlgebraElement::zero(view, domain);
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

/// Coboundary generator with random off-diagonal turns of denominator 24.
pub fn coboundary_generator(rng: &mut ChaCha8Rng, view: &LevelView) -> CoboundaryGenerator {
    let mut mu = CoboundaryGenerator::identity(view);
    for t in &mut mu.tables {
        let d = t.dim();
        for i in 0..d {
            for j in 0..d {
                if i != j {
                    t.set(i, j, Turn::new(rng.gen_range(0..24), 24))
                        .expect("off-diagonal entries are unconstrained");
                }
            }
        }
    }
    mu
}

/// Seeded cocycle: the coboundary of a random generator, hence always a
/// valid normalized cocycle.
pub fn seeded_cocycle(view: &LevelView, seed: u64) -> CocycleData {
    let mut rng = rng_from(seed);
    let mu = coboundary_generator(&mut rng, view);
    coboundary_from(view, &mu).expect("coboundaries satisfy the cocycle laws")
}
