//! Simplicial complexes generated by one face, their complements, and the
//! character sums and counting identities over them.
//!
//! A face `X ⊆ [m]` is stored as a bitmask with coordinate `i` at bit `i − 1`.
//! `Δ_X = { v ∈ F₂^m : Supp(v) ⊆ X }` is the complex it generates.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{walsh_hadamard_charsums, BitVector, MAX_AMBIENT_DIM};

/// A subset of `[m]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Face(u32);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub fn from_mask(mask: u32) -> Self {
        Face(mask)
    }

    /// From one-based coordinates.
    pub fn from_coords(coords: &[usize]) -> Result<Self> {
        let mut mask = 0u32;
        for &c in coords {
            if c == 0 || c > MAX_AMBIENT_DIM {
                return Err(Error::InvalidSetSpec(format!(
                    "coordinate {c} outside 1..={MAX_AMBIENT_DIM}"
                )));
            }
            mask |= 1 << (c - 1);
        }
        Ok(Face(mask))
    }

    /// `{1, …, size}`.
    pub fn prefix(size: usize) -> Self {
        assert!(size <= MAX_AMBIENT_DIM);
        Face(((1u64 << size) - 1) as u32)
    }

    pub fn full(m: usize) -> Self {
        Self::prefix(m)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn size(self) -> u32 {
        self.0.count_ones()
    }

    /// One-based coordinates in ascending order.
    pub fn coords(self) -> Vec<usize> {
        (0..32)
            .filter(|i| self.0 >> i & 1 == 1)
            .map(|i| i + 1)
            .collect()
    }

    pub fn is_subset_of(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Face) -> Face {
        Face(self.0 | other.0)
    }

    pub fn intersection(self, other: Face) -> Face {
        Face(self.0 & other.0)
    }

    /// Every face of `[m]`, ascending by mask.
    pub fn all(m: usize) -> impl Iterator<Item = Face> {
        (0..1u32 << m).map(Face)
    }

    fn fits(self, m: usize) -> bool {
        u64::from(self.0) >> m == 0
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum SetKind {
    /// `Δ_X`
    Simplex(Face),
    /// `Δ_X^c = F₂^m ∖ Δ_X`
    ComplementSimplex(Face),
    /// Sorted, duplicate-free masks.
    Explicit(Vec<u32>),
}

/// One subset of `F₂^m`, described symbolically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SetSpec {
    m: usize,
    kind: SetKind,
}

fn check_m(m: usize) -> Result<()> {
    if m > MAX_AMBIENT_DIM {
        return Err(Error::DimensionOutOfRange {
            m,
            max: MAX_AMBIENT_DIM,
        });
    }
    Ok(())
}

impl SetSpec {
    pub fn simplex(m: usize, face: Face) -> Result<Self> {
        check_m(m)?;
        if !face.fits(m) {
            return Err(Error::InvalidSetSpec(format!(
                "face {:?} not inside [{m}]",
                face.coords()
            )));
        }
        Ok(Self {
            m,
            kind: SetKind::Simplex(face),
        })
    }

    pub fn complement(m: usize, face: Face) -> Result<Self> {
        Self::simplex(m, face)?;
        Ok(Self {
            m,
            kind: SetKind::ComplementSimplex(face),
        })
    }

    pub fn full(m: usize) -> Result<Self> {
        Self::simplex(m, Face::full(m))
    }

    pub fn zero(m: usize) -> Result<Self> {
        Self::simplex(m, Face::EMPTY)
    }

    /// Duplicates are removed; the set is kept in ascending mask order.
    pub fn explicit(m: usize, vectors: &[BitVector]) -> Result<Self> {
        check_m(m)?;
        let mut masks = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    found: v.len(),
                });
            }
            masks.push(v.bits());
        }
        masks.sort_unstable();
        masks.dedup();
        Ok(Self {
            m,
            kind: SetKind::Explicit(masks),
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn kind(&self) -> &SetKind {
        &self.kind
    }

    /// The generating face when the set is a simplex or a simplex complement.
    pub fn face(&self) -> Option<Face> {
        match self.kind {
            SetKind::Simplex(f) | SetKind::ComplementSimplex(f) => Some(f),
            SetKind::Explicit(_) => None,
        }
    }

    pub fn is_complement(&self) -> bool {
        matches!(self.kind, SetKind::ComplementSimplex(_))
    }

    pub fn is_explicit(&self) -> bool {
        matches!(self.kind, SetKind::Explicit(_))
    }

    pub fn size(&self) -> u64 {
        match &self.kind {
            SetKind::Simplex(f) => 1 << f.size(),
            SetKind::ComplementSimplex(f) => (1u64 << self.m) - (1 << f.size()),
            SetKind::Explicit(v) => v.len() as u64,
        }
    }

    pub fn contains(&self, v: BitVector) -> bool {
        match &self.kind {
            SetKind::Simplex(f) => v.bits() & !f.mask() == 0,
            SetKind::ComplementSimplex(f) => v.bits() & !f.mask() != 0,
            SetKind::Explicit(list) => list.binary_search(&v.bits()).is_ok(),
        }
    }

    /// Masks of the members in ascending order.
    pub fn member_masks(&self) -> Vec<u32> {
        match &self.kind {
            SetKind::Simplex(f) => submasks(f.mask()),
            SetKind::ComplementSimplex(f) => {
                let f = f.mask();
                (0..1u32 << self.m).filter(|v| v & !f != 0).collect()
            }
            SetKind::Explicit(list) => list.clone(),
        }
    }
}

/// Submasks of `mask` in ascending order.
fn submasks(mask: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(1 << mask.count_ones());
    let mut sub = 0u32;
    loop {
        out.push(sub);
        if sub == mask {
            break;
        }
        sub = (sub | !mask).wrapping_add(1) & mask;
    }
    out
}

/// The members of `s` in ascending mask order.
pub fn members(s: &SetSpec) -> Vec<BitVector> {
    s.member_masks()
        .into_iter()
        .map(|b| BitVector::from_raw(b, s.m))
        .collect()
}

/// `ψ(x | Y)`: 1 when `Supp(x) ∩ Y = ∅`, else 0. `ψ(x | ∅) = 1`.
pub fn psi(x: BitVector, y: Face) -> u8 {
    u8::from(x.bits() & y.mask() == 0)
}

/// `Σ_{t∈s} (−1)^{x·t}`.
pub fn char_sum(s: &SetSpec, x: BitVector) -> i64 {
    assert_eq!(
        x.len(),
        s.m,
        "argument length differs from ambient dimension"
    );
    match &s.kind {
        SetKind::Simplex(y) => i64::from(psi(x, *y)) << y.size(),
        SetKind::ComplementSimplex(y) => {
            let full = if x.is_zero() { 1i64 << s.m } else { 0 };
            full - (i64::from(psi(x, *y)) << y.size())
        }
        SetKind::Explicit(list) => list
            .iter()
            .map(|&t| {
                if (x.bits() & t).count_ones() % 2 == 0 {
                    1
                } else {
                    -1
                }
            })
            .sum(),
    }
}

/// [`char_sum`] at every `x ∈ F₂^m`, indexed by mask.
pub fn char_sum_table(s: &SetSpec) -> Vec<i64> {
    match &s.kind {
        SetKind::Explicit(_) => {
            walsh_hadamard_charsums(&members(s), s.m).expect("members share the ambient dimension")
        }
        _ => BitVector::all(s.m).map(|x| char_sum(s, x)).collect(),
    }
}

/// `|Δ|` for the complex generated by an antichain of maximal faces, by
/// inclusion–exclusion over nonempty subfamilies.
pub fn complex_size_inclusion_exclusion(maximal_faces: &[Face]) -> Result<u64> {
    if maximal_faces.is_empty() {
        return Err(Error::InvalidSetSpec("no maximal faces given".into()));
    }
    if maximal_faces.len() > 24 {
        return Err(Error::TooLarge(format!(
            "{} maximal faces; inclusion-exclusion is limited to 24",
            maximal_faces.len()
        )));
    }
    for (i, a) in maximal_faces.iter().enumerate() {
        for (j, b) in maximal_faces.iter().enumerate() {
            if i != j && a.is_subset_of(*b) {
                return Err(Error::NotAntichain {
                    contained: a.coords(),
                    container: b.coords(),
                });
            }
        }
    }
    let mut total: i128 = 0;
    for family in 1u32..1 << maximal_faces.len() {
        let common = maximal_faces
            .iter()
            .enumerate()
            .filter(|(i, _)| family >> i & 1 == 1)
            .fold(u32::MAX, |acc, (_, f)| acc & f.mask());
        let term = 1i128 << common.count_ones();
        if family.count_ones() % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total as u64)
}

/// Number of nonzero `x ∈ F₂^m` with `ψ(x|X) = pattern.0` and `ψ(x|W) = pattern.1`.
pub fn count_psi_pattern(m: usize, x: Face, w: Face, pattern: (u8, u8)) -> u64 {
    let p = |e: u32| 1u64 << (m as u32 - e);
    let (sx, sw, su) = (x.size(), w.size(), x.union(w).size());
    match pattern {
        (0, 0) => (1u64 << m) + p(su) - p(sx) - p(sw),
        (1, 0) => p(sx) - p(su),
        (0, 1) => p(sw) - p(su),
        (1, 1) => p(su) - 1,
        _ => panic!("pattern entries must be 0 or 1"),
    }
}

/// JSON form: `{"kind": "simplex"|"complement"|"full"|"zero"|"explicit", "X": [..], "vectors": [..]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SetSpecJson {
    pub kind: String,
    #[serde(rename = "X", default, skip_serializing_if = "Vec::is_empty")]
    pub x: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vectors: Vec<String>,
}

impl SetSpecJson {
    pub fn resolve(&self, m: usize) -> Result<SetSpec> {
        let face = || Face::from_coords(&self.x);
        match self.kind.as_str() {
            "simplex" => SetSpec::simplex(m, face()?),
            "complement" => SetSpec::complement(m, face()?),
            "full" => SetSpec::full(m),
            "zero" => SetSpec::zero(m),
            "explicit" => {
                let vectors = self
                    .vectors
                    .iter()
                    .map(|s| s.parse::<BitVector>())
                    .collect::<Result<Vec<_>>>()?;
                SetSpec::explicit(m, &vectors)
            }
            other => Err(Error::InvalidSetSpec(format!("unknown kind {other:?}"))),
        }
    }
}

impl From<&SetSpec> for SetSpecJson {
    fn from(s: &SetSpec) -> Self {
        match &s.kind {
            SetKind::Simplex(f) => Self {
                kind: "simplex".into(),
                x: f.coords(),
                vectors: vec![],
            },
            SetKind::ComplementSimplex(f) => Self {
                kind: "complement".into(),
                x: f.coords(),
                vectors: vec![],
            },
            SetKind::Explicit(_) => Self {
                kind: "explicit".into(),
                x: vec![],
                vectors: members(s).iter().map(ToString::to_string).collect(),
            },
        }
    }
}
