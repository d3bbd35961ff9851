//! Enumeration of every spec of a given family at a given `m`.

use crate::analyze::closedform::{detect_family, role_rows, FamilyMatch};
use crate::construct::DefiningSetSpec;
use crate::error::{Error, Result};
use crate::simplicial::Face;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FaceScope {
    /// Every subset of `[m]` for every component.
    All,
    /// One face per size, `{1, …, s}`. Simultaneous coordinate permutations
    /// give equivalent codes, but distinct faces of equal size are not always
    /// related by one, so this is a sample, not a cover.
    Prefixes,
}

#[derive(Clone, Debug)]
pub struct SweepCase {
    pub spec: DefiningSetSpec,
    pub family: FamilyMatch,
}

#[derive(Clone, Debug, Default)]
pub struct Sweep {
    pub cases: Vec<SweepCase>,
    /// Specs outside the family's hypotheses (equal complemented sizes), or
    /// degenerate (an empty component or an empty whole complement).
    pub skipped: usize,
}

fn faces(m: usize, scope: FaceScope) -> Vec<Face> {
    match scope {
        FaceScope::All => Face::all(m).collect(),
        FaceScope::Prefixes => (0..=m).map(Face::prefix).collect(),
    }
}

/// Specs of family part `part` (1 to 6) over `F₂^m`. With `relaxed`, specs
/// whose complemented sizes collide are kept and flagged instead of skipped.
pub fn family_sweep(part: u8, m: usize, scope: FaceScope, relaxed: bool) -> Result<Sweep> {
    if !(1..=6).contains(&part) {
        return Err(Error::UnsupportedFamily(format!("there is no part {part}")));
    }
    let fs = faces(m, scope);
    let (roles, whole) = if part == 6 {
        (vec![[false; 4]], true)
    } else {
        (role_rows(usize::from(part) - 1), false)
    };
    let mut sweep = Sweep::default();
    for role in roles {
        let mask = (0..4).filter(|&i| role[i]).fold(0u8, |acc, i| acc | 1 << i);
        for &a in &fs {
            for &b in &fs {
                for &c in &fs {
                    for &d in &fs {
                        let spec = DefiningSetSpec::from_faces(m, [a, b, c, d], mask, whole)?;
                        match detect_family(&spec) {
                            Ok(family) if family.within_hypotheses || relaxed => {
                                sweep.cases.push(SweepCase { spec, family })
                            }
                            Ok(_) | Err(Error::UnsupportedFamily(_)) => sweep.skipped += 1,
                            Err(e) => return Err(e),
                        }
                    }
                }
            }
        }
    }
    Ok(sweep)
}
