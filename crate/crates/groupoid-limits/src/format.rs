//! JSON descriptions of cover towers, twists, and algebra elements.
//!
//! Rationals travel as `p/q` strings and turns as fractions of a full
//! revolution, so files stay exact and diff cleanly. Loaders validate
//! everything they admit: covers must cover, cocycles must verify, and
//! element blocks must match their chamber fibers.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, Domain};
use crate::builtins::builtin;
use crate::cocycle::{coboundary_from, verify_cocycle, CoboundaryGenerator, CocycleData};
use crate::cover::CoverSequence;
use crate::error::{Error, Result};
use num::complex::Complex64;

use crate::random;
use crate::rational::{parse_rational, rational_string};
use crate::region::{Interval, Region, Space};
use crate::turn::Turn;

#[derive(Serialize, Deserialize)]
struct IntervalDto {
    lo: String,
    hi: String,
    lo_closed: bool,
    hi_closed: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RegionDto {
    Intervals(Vec<IntervalDto>),
    Indices(Vec<usize>),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum SpaceDto {
    Intervals { components: Vec<[String; 2]> },
    Finite { size: usize },
}

/// On-disk form of a cover tower: the space, the per-level prefix covers,
/// and the repeating tail cycle.
#[derive(Serialize, Deserialize)]
pub struct CoverFileDto {
    space: SpaceDto,
    prefix: Vec<Vec<RegionDto>>,
    tail_cycle: Vec<Vec<RegionDto>>,
}

fn interval_from_dto(dto: &IntervalDto) -> Result<Interval> {
    Ok(Interval::new(
        parse_rational(&dto.lo)?,
        parse_rational(&dto.hi)?,
        dto.lo_closed,
        dto.hi_closed,
    ))
}

fn region_from_dto(space: &Space, dto: &RegionDto) -> Result<Region> {
    match (space, dto) {
        (Space::Intervals { .. }, RegionDto::Intervals(ivs)) => Ok(Region::from_intervals(
            ivs.iter().map(interval_from_dto).collect::<Result<Vec<_>>>()?,
        )),
        (Space::Finite { .. }, RegionDto::Indices(idx)) => {
            Ok(Region::from_indices(idx.iter().copied()))
        }
        // An empty list parses as the interval arm; accept it for any space.
        (Space::Finite { .. }, RegionDto::Intervals(ivs)) if ivs.is_empty() => {
            Ok(Region::empty_for(space))
        }
        _ => Err(Error::Parse("region literal does not match the space kind".into())),
    }
}

fn region_to_dto(region: &Region) -> RegionDto {
    match region {
        Region::Intervals(ivs) => RegionDto::Intervals(
            ivs.iter()
                .map(|iv| IntervalDto {
                    lo: rational_string(&iv.lo),
                    hi: rational_string(&iv.hi),
                    lo_closed: iv.lo_closed,
                    hi_closed: iv.hi_closed,
                })
                .collect(),
        ),
        Region::Indices(idx) => RegionDto::Indices(idx.iter().copied().collect()),
    }
}

fn space_from_dto(dto: &SpaceDto) -> Result<Space> {
    match dto {
        SpaceDto::Intervals { components } => Space::from_components(
            components
                .iter()
                .map(|[lo, hi]| Ok((parse_rational(lo)?, parse_rational(hi)?)))
                .collect::<Result<Vec<_>>>()?,
        ),
        SpaceDto::Finite { size } => Space::finite(*size),
    }
}

fn space_to_dto(space: &Space) -> SpaceDto {
    match space {
        Space::Intervals { components } => SpaceDto::Intervals {
            components: components
                .iter()
                .map(|(lo, hi)| [rational_string(lo), rational_string(hi)])
                .collect(),
        },
        Space::Finite { size } => SpaceDto::Finite { size: *size },
    }
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Parse(format!("malformed JSON: {e}"))
}

/// Parses a cover tower and rejects it unless every level is an open cover.
pub fn cover_from_str(text: &str) -> Result<CoverSequence> {
    let dto: CoverFileDto = serde_json::from_str(text).map_err(json_err)?;
    let space = space_from_dto(&dto.space)?;
    let convert = |levels: &[Vec<RegionDto>]| -> Result<Vec<Vec<Region>>> {
        levels
            .iter()
            .map(|c| c.iter().map(|r| region_from_dto(&space, r)).collect())
            .collect()
    };
    let seq = CoverSequence::new(space.clone(), convert(&dto.prefix)?, convert(&dto.tail_cycle)?)?;
    let defects = seq.validate();
    if let Some(first) = defects.first() {
        return Err(Error::Parse(format!(
            "cover file has {} defect(s); first: {first}",
            defects.len()
        )));
    }
    Ok(seq)
}

pub fn cover_to_string(seq: &CoverSequence) -> String {
    let covers = |range: std::ops::Range<usize>| -> Vec<Vec<RegionDto>> {
        range
            .map(|k| seq.cover_at(k).members().iter().map(region_to_dto).collect())
            .collect()
    };
    let dto = CoverFileDto {
        space: space_to_dto(seq.space()),
        prefix: covers(0..seq.prefix_len()),
        tail_cycle: covers(seq.prefix_len()..seq.prefix_len() + seq.cycle_len()),
    };
    serde_json::to_string_pretty(&dto).expect("cover DTOs always serialize")
}

pub fn load_cover(path: &Path) -> Result<CoverSequence> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    cover_from_str(&text)
}

/// Resolves a cover input: an existing file path wins, otherwise the name
/// must be a built-in (`example_A`, `example_B`, `example_C`, `uhf(...)`).
pub fn resolve_cover(input: &str) -> Result<CoverSequence> {
    let path = Path::new(input);
    if path.is_file() {
        return load_cover(path);
    }
    builtin(input).map_err(|_| {
        Error::Parse(format!(
            "`{input}` is neither a readable file nor a built-in cover name"
        ))
    })
}

#[derive(Serialize, Deserialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
enum CocycleKindDto {
    Trivial,
    Coboundary,
    Explicit,
}

#[derive(Serialize, Deserialize)]
struct TurnEntryDto {
    chamber: usize,
    i: usize,
    j: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    turn: String,
}

/// On-disk form of a twist at one level: trivial, the coboundary of a
/// generator (seeded and/or listed), or an explicit table.
#[derive(Serialize, Deserialize)]
pub struct CocycleFileDto {
    level: usize,
    kind: CocycleKindDto,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    entries: Option<Vec<TurnEntryDto>>,
}

/// Parses a twist description against a tower and verifies the result is a
/// normalized cocycle before handing it out.
pub fn cocycle_from_str(seq: &CoverSequence, text: &str) -> Result<CocycleData> {
    let dto: CocycleFileDto = serde_json::from_str(text).map_err(json_err)?;
    let view = seq.level_view(dto.level)?;
    let sigma = match dto.kind {
        CocycleKindDto::Trivial => {
            if dto.seed.is_some() || dto.entries.is_some() {
                return Err(Error::Parse(
                    "a trivial twist takes neither seed nor entries".into(),
                ));
            }
            CocycleData::trivial(&view)
        }
        CocycleKindDto::Coboundary => {
            let mut mu = match dto.seed {
                Some(seed) => {
                    let mut rng = random::rng_from(seed);
                    random::coboundary_generator(&mut rng, &view)
                }
                None => CoboundaryGenerator::identity(&view),
            };
            for e in dto.entries.as_deref().unwrap_or_default() {
                if e.k.is_some() {
                    return Err(Error::Parse(
                        "generator entries are pairs; drop the `k` field".into(),
                    ));
                }
                let table = mu.tables.get_mut(e.chamber).ok_or_else(|| {
                    Error::Parse(format!("chamber {} out of range", e.chamber))
                })?;
                let d = table.dim();
                if e.i >= d || e.j >= d {
                    return Err(Error::Parse(format!(
                        "entry ({}, {}) outside the {d}-element fiber of chamber {}",
                        e.i, e.j, e.chamber
                    )));
                }
                table.set(e.i, e.j, Turn::parse(&e.turn)?)?;
            }
            coboundary_from(&view, &mu)?
        }
        CocycleKindDto::Explicit => {
            if dto.seed.is_some() {
                return Err(Error::Parse("an explicit twist takes no seed".into()));
            }
            let mut sigma = CocycleData::trivial(&view);
            let entries = dto
                .entries
                .as_deref()
                .ok_or_else(|| Error::Parse("an explicit twist needs entries".into()))?;
            for e in entries {
                let k = e.k.ok_or_else(|| {
                    Error::Parse("explicit entries are triples; add the `k` field".into())
                })?;
                let d = sigma
                    .tables
                    .get(e.chamber)
                    .ok_or_else(|| Error::Parse(format!("chamber {} out of range", e.chamber)))?
                    .dim();
                if e.i >= d || e.j >= d || k >= d {
                    return Err(Error::Parse(format!(
                        "entry ({}, {}, {k}) outside the {d}-element fiber of chamber {}",
                        e.i, e.j, e.chamber
                    )));
                }
                sigma = sigma.with_entry(e.chamber, e.i, e.j, k, Turn::parse(&e.turn)?);
            }
            sigma
        }
    };
    let violations = verify_cocycle(&view, &sigma)?;
    if let Some(first) = violations.first() {
        return Err(Error::NotACocycle(format!(
            "{} violation(s); first: {}",
            violations.len(),
            first.describe(&view)
        )));
    }
    Ok(sigma)
}

pub fn load_cocycle(seq: &CoverSequence, path: &Path) -> Result<CocycleData> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    cocycle_from_str(seq, &text)
}

#[derive(Serialize, Deserialize)]
struct ChamberMatrixDto {
    id: usize,
    matrix: Vec<Vec<[f64; 2]>>,
}

/// On-disk form of a level element: per-chamber complex blocks, or a seed
/// for a reproducible random element. Unlisted chambers are zero.
#[derive(Serialize, Deserialize)]
pub struct ElementFileDto {
    level: usize,
    domain: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    chambers: Option<Vec<ChamberMatrixDto>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
}

fn domain_from_str(s: &str) -> Result<Domain> {
    match s {
        "open" => Ok(Domain::Open),
        "closed" => Ok(Domain::Closed),
        _ => Err(Error::Parse(format!("domain must be `open` or `closed`, got `{s}`"))),
    }
}

/// Parses an element description against a tower, checking every block
/// against its chamber fiber.
pub fn element_from_str(seq: &CoverSequence, text: &str) -> Result<AlgebraElement> {
    let dto: ElementFileDto = serde_json::from_str(text).map_err(json_err)?;
    let view = seq.level_view(dto.level)?;
    let domain = domain_from_str(&dto.domain)?;
    match (&dto.chambers, dto.seed) {
        (Some(_), Some(_)) => Err(Error::Parse(
            "give either explicit chambers or a seed, not both".into(),
        )),
        (None, None) => Err(Error::Parse("element needs chambers or a seed".into())),
        (None, Some(seed)) => {
            let mut rng = random::rng_from(seed);
            Ok(random::element(&mut rng, &view, domain))
        }
        (Some(chambers), None) => {
            let mut f = AlgebraElement::zero(&view, domain);
            let mut seen = vec![false; f.blocks.len()];
            for cm in chambers {
                let block = f.blocks.get_mut(cm.id).ok_or_else(|| {
                    Error::Parse(format!("chamber {} out of range", cm.id))
                })?;
                if std::mem::replace(&mut seen[cm.id], true) {
                    return Err(Error::Parse(format!("chamber {} listed twice", cm.id)));
                }
                let d = block.dim();
                if cm.matrix.len() != d || cm.matrix.iter().any(|row| row.len() != d) {
                    return Err(Error::Parse(format!(
                        "chamber {} needs a {d}x{d} matrix to match its fiber",
                        cm.id
                    )));
                }
                for (i, row) in cm.matrix.iter().enumerate() {
                    for (j, [re, im]) in row.iter().enumerate() {
                        block[(i, j)] = Complex64::new(*re, *im);
                    }
                }
            }
            Ok(f)
        }
    }
}

pub fn load_element(seq: &CoverSequence, path: &Path) -> Result<AlgebraElement> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    element_from_str(seq, &text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{example_a, example_b};

    #[test]
    fn cover_round_trips_through_json() {
        for seq in [example_a(), example_b(), builtin("uhf(2,3)").unwrap()] {
            let text = cover_to_string(&seq);
            assert_eq!(cover_from_str(&text).unwrap(), seq);
        }
    }

    #[test]
    fn handwritten_cover_matches_the_builtin() {
        let text = r#"{
            "space": { "kind": "intervals", "components": [["0", "1"]] },
            "prefix": [
                [
                    [ { "lo": "0", "hi": "1", "lo_closed": true, "hi_closed": true } ],
                    [ { "lo": "1/2", "hi": "1", "lo_closed": false, "hi_closed": true } ]
                ]
            ],
            "tail_cycle": [
                [ [ { "lo": "0", "hi": "1", "lo_closed": true, "hi_closed": true } ] ]
            ]
        }"#;
        assert_eq!(cover_from_str(text).unwrap(), example_b());
    }

    #[test]
    fn bad_covers_are_rejected_with_reasons() {
        // Members that fail to cover the space.
        let gap = r#"{
            "space": { "kind": "intervals", "components": [["0", "1"]] },
            "prefix": [],
            "tail_cycle": [
                [ [ { "lo": "0", "hi": "1/2", "lo_closed": true, "hi_closed": true } ] ]
            ]
        }"#;
        assert!(matches!(cover_from_str(gap), Err(Error::Parse(m)) if m.contains("defect")));
        // Region kind mismatching the space kind.
        let mismatch = r#"{
            "space": { "kind": "finite", "size": 1 },
            "prefix": [],
            "tail_cycle": [ [ [ { "lo": "0", "hi": "1", "lo_closed": true, "hi_closed": true } ] ] ]
        }"#;
        assert!(cover_from_str(mismatch).is_err());
        assert!(cover_from_str("not json").is_err());
    }

    #[test]
    fn resolve_prefers_files_then_builtins() {
        let seq = resolve_cover("example_A").unwrap();
        assert_eq!(seq, example_a());
        let dir = std::env::temp_dir().join("groupoid-limits-format-test");
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join("cover.json");
        std::fs::write(&p, cover_to_string(&example_b())).unwrap();
        assert_eq!(resolve_cover(p.to_str().unwrap()).unwrap(), example_b());
        assert!(resolve_cover("no_such_thing").is_err());
    }

    #[test]
    fn cocycle_files_parse_and_validate() {
        let seq = example_a();
        let trivial = cocycle_from_str(&seq, r#"{ "level": 0, "kind": "trivial" }"#).unwrap();
        assert_eq!(trivial, CocycleData::trivial(&seq.level_view(0).unwrap()));

        let seeded =
            cocycle_from_str(&seq, r#"{ "level": 1, "kind": "coboundary", "seed": 42 }"#).unwrap();
        assert_eq!(seeded, random::seeded_cocycle(&seq.level_view(1).unwrap(), 42));

        let listed = cocycle_from_str(
            &seq,
            r#"{ "level": 0, "kind": "coboundary",
                 "entries": [ { "chamber": 0, "i": 0, "j": 1, "turn": "1/4" } ] }"#,
        )
        .unwrap();
        let view = seq.level_view(0).unwrap();
        assert!(verify_cocycle(&view, &listed).unwrap().is_empty());
        assert_ne!(listed, CocycleData::trivial(&view));

        // An explicit single entry breaks normalization and is refused.
        let broken = cocycle_from_str(
            &seq,
            r#"{ "level": 0, "kind": "explicit",
                 "entries": [ { "chamber": 0, "i": 0, "j": 0, "k": 1, "turn": "1/3" } ] }"#,
        );
        assert!(matches!(broken, Err(Error::NotACocycle(_))));
        assert!(cocycle_from_str(&seq, r#"{ "level": 0, "kind": "explicit" }"#).is_err());
        assert!(
            cocycle_from_str(&seq, r#"{ "level": 0, "kind": "trivial", "seed": 1 }"#).is_err()
        );
    }

    #[test]
    fn element_files_parse_and_validate() {
        let seq = example_b();
        // Level 0 of this tower: chamber 2 is the right-open overlap with a
        // two-element fiber; chambers 0 and 1 have singleton fibers.
        let f = element_from_str(
            &seq,
            r#"{ "level": 0, "domain": "open",
                 "chambers": [ { "id": 2, "matrix": [ [ [0,0], [1,0] ], [ [0,0], [0,0] ] ] } ] }"#,
        )
        .unwrap();
        assert_eq!(f.blocks[2][(0, 1)], Complex64::new(1.0, 0.0));
        assert_eq!(f.blocks[0].max_abs(), 0.0);
        assert_eq!(f.blocks[1].max_abs(), 0.0);

        let seeded =
            element_from_str(&seq, r#"{ "level": 1, "domain": "closed", "seed": 5 }"#).unwrap();
        let view = seq.level_view(1).unwrap();
        let mut rng = random::rng_from(5);
        let expected = random::element(&mut rng, &view, Domain::Closed);
        assert_eq!(seeded.sub(&expected).unwrap().max_abs(), 0.0);

        let wrong = element_from_str(
            &seq,
            r#"{ "level": 0, "domain": "open",
                 "chambers": [ { "id": 2, "matrix": [ [ [1,0] ] ] } ] }"#,
        );
        assert!(matches!(wrong, Err(Error::Parse(m)) if m.contains("fiber")));
        assert!(element_from_str(&seq, r#"{ "level": 0, "domain": "up" }"#).is_err());
        assert!(element_from_str(&seq, r#"{ "level": 0, "domain": "open" }"#).is_err());
    }
}
