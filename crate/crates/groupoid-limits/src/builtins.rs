//! Named cover sequences used throughout the tests and the CLI.

use crate::cover::CoverSequence;
use crate::error::{Error, Result};
use crate::rational::{rat, ratio};
use crate::region::{Interval, Region, Space};

/// `[-1,1]` with the same three-member cover at every level: the two
/// half-open halves and the whole interval. The halves miss 0 but their
/// closures both contain it, which is what makes the limit's closure
/// structure interesting.
pub fn example_a() -> CoverSequence {
    let space = Space::interval(rat(-1), rat(1)).expect("valid space");
    let left = Region::from_intervals(vec![Interval::new(rat(-1), rat(0), true, false)]);
    let right = Region::from_intervals(vec![Interval::new(rat(0), rat(1), false, true)]);
    let whole = space.whole();
    CoverSequence::new(space, vec![], vec![vec![left, right, whole]]).expect("valid cover")
}

/// `[0,1]` with two members at level 0 (the whole interval and the open
/// right half `(1/2,1]`) and the trivial single-member cover afterwards.
/// The level-0 asymmetry survives into the limit as a basic set whose
/// range is only half-open.
pub fn example_b() -> CoverSequence {
    let space = Space::interval(rat(0), rat(1)).expect("valid space");
    let whole = space.whole();
    let right = Region::from_intervals(vec![Interval::new(ratio(1, 2), rat(1), false, true)]);
    let level0 = vec![whole.clone(), right];
    let trivial = vec![whole];
    CoverSequence::new(space, vec![level0], vec![trivial]).expect("valid cover")
}

/// `[0,1]` with the two-member cover `{[0,1], (1/2,1]}` at every level.
/// Points sliding down to 1/2 along the right member witness the failure
/// of local compactness in the leg-wise closure groupoid.
pub fn example_c() -> CoverSequence {
    let space = Space::interval(rat(0), rat(1)).expect("valid space");
    let whole = space.whole();
    let right = Region::from_intervals(vec![Interval::new(ratio(1, 2), rat(1), false, true)]);
    CoverSequence::new(space, vec![], vec![vec![whole, right]]).expect("valid cover")
}

/// One-point base space with `factors[k]` copies of the whole space at
/// level `k` (head then repeating cycle). All groupoid structure lives in
/// the member indices; the finite levels are full matrix algebras.
pub fn uhf_cover(head: &[usize], cycle: &[usize]) -> Result<CoverSequence> {
    if cycle.is_empty() {
        return Err(Error::Precondition("factor list needs a nonempty cycle".into()));
    }
    if head.iter().chain(cycle).any(|&m| m == 0) {
        return Err(Error::Precondition("factors must be at least 1".into()));
    }
    let space = Space::finite(1)?;
    let whole = space.whole();
    let cover_of = |m: usize| vec![whole.clone(); m];
    CoverSequence::new(
        space,
        head.iter().map(|&m| cover_of(m)).collect(),
        cycle.iter().map(|&m| cover_of(m)).collect(),
    )
}

/// Resolves a built-in name: `example_A`, `example_B`, `example_C`, or
/// `uhf(m1,m2,…)` with the factor list repeating forever.
pub fn builtin(name: &str) -> Result<CoverSequence> {
    let name = name.trim();
    match name {
        "example_A" => return Ok(example_a()),
        "example_B" => return Ok(example_b()),
        "example_C" => return Ok(example_c()),
        _ => {}
    }
    if let Some(rest) = name.strip_prefix("uhf(").and_then(|r| r.strip_suffix(')')) {
        let factors = rest
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad factor `{p}` in `{name}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        return uhf_cover(&[], &factors);
    }
    Err(Error::Parse(format!("unknown built-in cover sequence `{name}`")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_names_resolve() {
        assert_eq!(builtin("example_A").unwrap(), example_a());
        assert_eq!(builtin("example_B").unwrap(), example_b());
        assert_eq!(builtin("example_C").unwrap(), example_c());
        assert_eq!(builtin("uhf(2,3)").unwrap(), uhf_cover(&[], &[2, 3]).unwrap());
        assert!(builtin("uhf(2,x)").is_err());
        assert!(builtin("uhf(0)").is_err());
        assert!(builtin("example_D").is_err());
    }

    #[test]
    fn uhf_cover_validates() {
        let u = uhf_cover(&[2], &[3]).unwrap();
        assert!(u.validate().is_empty());
        assert_eq!(u.omega_size(0), 2);
        assert_eq!(u.omega_size(5), 3);
    }
}
