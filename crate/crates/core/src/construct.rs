//! Defining sets `D = b₁A₁ + b₂A₂ + b₃A₃ + b₄A₄ ⊂ R^m`, their binary
//! projection, and the generator matrix of the binary subfield code.
//!
//! A column of the binary code is the 4-tuple `(d₁ + d₄, d₃, d₂, d₁)` for
//! `(d₁, d₂, d₃, d₄) ∈ A₁ × A₂ × A₃ × A₄`. Columns are ordered
//! lexicographically by the index into each `Aᵢ` (`d₁` outermost), each `Aᵢ`
//! in ascending mask order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BinaryMatrix, BitRow, BitVector};
use crate::ring::{trace_pairings, RingElement, BASIS};
use crate::simplicial::{Face, SetSpec, SetSpecJson};

/// Largest `m` for specs that need `(F₂^m)⁴` enumeration.
pub const MAX_M_ENUMERATED: usize = 5;
/// Largest `m` for any materialized defining set.
pub const MAX_M_MATERIALIZED: usize = 8;
/// Largest number of columns we are willing to materialize.
pub const MAX_COLUMNS: u128 = 1 << 24;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DefiningSetSpec {
    m: usize,
    components: [SetSpec; 4],
    complement_whole: bool,
}

impl DefiningSetSpec {
    pub fn new(components: [SetSpec; 4], complement_whole: bool) -> Result<Self> {
        let m = components[0].m();
        for c in &components[1..] {
            if c.m() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    found: c.m(),
                });
            }
        }
        Ok(Self {
            m,
            components,
            complement_whole,
        })
    }

    /// `Aᵢ = Δ_{faces[i]}`, or `Δ_{faces[i]}^c` where bit `i` of `complemented` is set.
    pub fn from_faces(
        m: usize,
        faces: [Face; 4],
        complemented: u8,
        complement_whole: bool,
    ) -> Result<Self> {
        let mut parts = Vec::with_capacity(4);
        for (i, f) in faces.into_iter().enumerate() {
            parts.push(if complemented >> i & 1 == 1 {
                SetSpec::complement(m, f)?
            } else {
                SetSpec::simplex(m, f)?
            });
        }
        let components: [SetSpec; 4] = parts.try_into().expect("four components");
        Self::new(components, complement_whole)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn components(&self) -> &[SetSpec; 4] {
        &self.components
    }

    pub fn complement_whole(&self) -> bool {
        self.complement_whole
    }

    /// `|D|`.
    pub fn size(&self) -> u128 {
        let product: u128 = self
            .components
            .iter()
            .map(|c| u128::from(c.size()))
            .product();
        if self.complement_whole {
            (1u128 << (4 * self.m)) - product
        } else {
            product
        }
    }

    fn needs_enumeration(&self) -> bool {
        self.complement_whole || self.components.iter().any(SetSpec::is_explicit)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: DefiningSetSpecJson = serde_json::from_str(s)?;
        raw.resolve()
    }

    pub fn to_json(&self) -> DefiningSetSpecJson {
        DefiningSetSpecJson::from(self)
    }
}

impl std::fmt::Display for DefiningSetSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let json = serde_json::to_string(&self.to_json()).map_err(|_| std::fmt::Error)?;
        f.write_str(&json)
    }
}

/// `{"m": int, "A1": SetSpec, …, "A4": SetSpec, "complement_whole": bool}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct DefiningSetSpecJson {
    pub m: usize,
    #[serde(rename = "A1")]
    pub a1: SetSpecJson,
    #[serde(rename = "A2")]
    pub a2: SetSpecJson,
    #[serde(rename = "A3")]
    pub a3: SetSpecJson,
    #[serde(rename = "A4")]
    pub a4: SetSpecJson,
    #[serde(default)]
    pub complement_whole: bool,
}

impl DefiningSetSpecJson {
    pub fn resolve(&self) -> Result<DefiningSetSpec> {
        if self.m == 0 {
            return Err(Error::DimensionOutOfRange {
                m: 0,
                max: crate::gf2::MAX_AMBIENT_DIM,
            });
        }
        let parts = [&self.a1, &self.a2, &self.a3, &self.a4]
            .into_iter()
            .map(|a| a.resolve(self.m))
            .collect::<Result<Vec<_>>>()?;
        DefiningSetSpec::new(
            parts.try_into().expect("four components"),
            self.complement_whole,
        )
    }
}

impl From<&DefiningSetSpec> for DefiningSetSpecJson {
    fn from(s: &DefiningSetSpec) -> Self {
        let [a1, a2, a3, a4] = &s.components;
        Self {
            m: s.m,
            a1: a1.into(),
            a2: a2.into(),
            a3: a3.into(),
            a4: a4.into(),
            complement_whole: s.complement_whole,
        }
    }
}

/// The projected defining set `D^(2)`: one packed 4-tuple per code column.
///
/// A column `(e₁, e₂, e₃, e₄)` is packed as `e₁ | e₂ << m | e₃ << 2m | e₄ << 3m`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BinaryDefiningSet {
    m: usize,
    columns: Vec<u64>,
}

impl BinaryDefiningSet {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn packed_columns(&self) -> &[u64] {
        &self.columns
    }

    pub fn column(&self, j: usize) -> [BitVector; 4] {
        let mask = (1u64 << self.m) - 1;
        let c = self.columns[j];
        std::array::from_fn(|b| BitVector::from_raw((c >> (b * self.m) & mask) as u32, self.m))
    }
}

fn pack(m: usize, parts: [u32; 4]) -> u64 {
    parts
        .iter()
        .enumerate()
        .fold(0u64, |acc, (b, &p)| acc | u64::from(p) << (b * m))
}

fn project(m: usize, d: [u32; 4]) -> u64 {
    let [d1, d2, d3, d4] = d;
    pack(m, [d1 ^ d4, d3, d2, d1])
}

pub fn build_defining_set(spec: &DefiningSetSpec) -> Result<BinaryDefiningSet> {
    let m = spec.m;
    let limit = if spec.needs_enumeration() {
        MAX_M_ENUMERATED
    } else {
        MAX_M_MATERIALIZED
    };
    if m == 0 || m > limit {
        return Err(Error::DimensionOutOfRange { m, max: limit });
    }
    let n = spec.size();
    if n > MAX_COLUMNS {
        return Err(Error::TooLarge(format!(
            "{n} columns (limit {MAX_COLUMNS})"
        )));
    }
    let sets: Vec<Vec<u32>> = spec.components.iter().map(SetSpec::member_masks).collect();
    let mut columns = Vec::with_capacity(n as usize);
    if spec.complement_whole {
        let comps = &spec.components;
        let inside = |d: [u32; 4]| (0..4).all(|i| comps[i].contains(BitVector::from_raw(d[i], m)));
        let side = 1u32 << m;
        for d1 in 0..side {
            for d2 in 0..side {
                for d3 in 0..side {
                    for d4 in 0..side {
                        let d = [d1, d2, d3, d4];
                        if !inside(d) {
                            columns.push(project(m, d));
                        }
                    }
                }
            }
        }
    } else {
        for &d1 in &sets[0] {
            for &d2 in &sets[1] {
                for &d3 in &sets[2] {
                    for &d4 in &sets[3] {
                        columns.push(project(m, [d1, d2, d3, d4]));
                    }
                }
            }
        }
    }
    debug_assert_eq!(columns.len() as u128, n);
    Ok(BinaryDefiningSet { m, columns })
}

/// `c(x₁, x₂, x₃, x₄)`: coordinate `j` is `(x₁, x₂, x₃, x₄) · column_j`.
pub fn codeword(ds: &BinaryDefiningSet, x: [BitVector; 4]) -> BitRow {
    for v in &x {
        assert_eq!(v.len(), ds.m, "message block length differs from m");
    }
    let packed = pack(ds.m, x.map(BitVector::bits));
    BitRow::from_bools(
        ds.columns
            .iter()
            .map(|&c| (packed & c).count_ones() % 2 == 1),
    )
}

/// A binary linear code given by a generator matrix, with its row-reduced
/// form cached.
#[derive(Clone, Debug)]
pub struct BinaryCode {
    generator: BinaryMatrix,
    reduced: BinaryMatrix,
    pivots: Vec<usize>,
    spec: Option<DefiningSetSpec>,
}

impl BinaryCode {
    pub fn from_generator(generator: BinaryMatrix) -> Self {
        let (reduced, pivots) = generator.row_reduce();
        Self {
            generator,
            reduced,
            pivots,
            spec: None,
        }
    }

    pub fn generator(&self) -> &BinaryMatrix {
        &self.generator
    }

    /// Row-reduced generator with `k` rows.
    pub fn reduced(&self) -> &BinaryMatrix {
        &self.reduced
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn n(&self) -> usize {
        self.generator.ncols()
    }

    pub fn k(&self) -> usize {
        self.reduced.nrows()
    }

    pub fn spec(&self) -> Option<&DefiningSetSpec> {
        self.spec.as_ref()
    }

    /// Codeword for message `msg` (bit `i` selects row `i` of the reduced generator).
    pub fn encode(&self, msg: u64) -> BitRow {
        let mut acc = BitRow::zeros(self.n());
        for (i, row) in self.reduced.rows().iter().enumerate() {
            if msg >> i & 1 == 1 {
                acc.xor_assign(row);
            }
        }
        acc
    }
}

/// Rows `[0, m)` carry the `x₁` unit vectors, `[m, 2m)` the `x₂` ones, and so on.
pub fn generator_matrix(ds: &BinaryDefiningSet) -> BinaryCode {
    let rows = 4 * ds.m;
    let mut g = BinaryMatrix::zeros(rows, ds.len());
    for (j, &c) in ds.columns.iter().enumerate() {
        let mut bits = c;
        while bits != 0 {
            let r = bits.trailing_zeros() as usize;
            g.set(r, j, true);
            bits &= bits - 1;
        }
    }
    BinaryCode::from_generator(g)
}

/// Builds the code of a spec end to end.
pub fn build_code(spec: &DefiningSetSpec) -> Result<BinaryCode> {
    let ds = build_defining_set(spec)?;
    let mut code = generator_matrix(&ds);
    code.spec = Some(spec.clone());
    Ok(code)
}

/// Subfield generator of a code over `R`: each entry is replaced by its
/// column `(τ(g b₁), τ(g b₂), τ(g b₃), τ(g b₄))`, and the four resulting
/// `k × n` blocks are stacked as `[G₁ + G₄; G₃; G₂; G₁]`.
pub fn subfield_generator_from_ring_matrix(g: &[Vec<RingElement>]) -> Result<BinaryMatrix> {
    let n = g.first().map_or(0, Vec::len);
    if let Some(bad) = g.iter().find(|r| r.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.len(),
        });
    }
    let k = g.len();
    let mut out = BinaryMatrix::zeros(4 * k, n);
    for (i, row) in g.iter().enumerate() {
        for (j, &entry) in row.iter().enumerate() {
            for (block, bit) in trace_pairings(entry).into_iter().enumerate() {
                if bit == 1 {
                    out.set(block * k + i, j, true);
                }
            }
        }
    }
    Ok(out)
}

/// Generator matrix over `R` of the code `C_D`: an `m × |D|` matrix whose
/// column `j` is `d_j = b₁d₁ + b₂d₂ + b₃d₃ + b₄d₄` in canonical column order.
pub fn ring_generator_matrix(spec: &DefiningSetSpec) -> Result<Vec<Vec<RingElement>>> {
    if spec.complement_whole {
        return Err(Error::UnsupportedFamily(
            "ring matrix is only built for product defining sets".into(),
        ));
    }
    let m = spec.m;
    let ds = build_defining_set(spec)?;
    let mut g = vec![Vec::with_capacity(ds.len()); m];
    for j in 0..ds.len() {
        // undo the projection (d₁ + d₄, d₃, d₂, d₁)
        let [e1, e2, e3, e4] = ds.column(j).map(BitVector::bits);
        let d = [e4, e3, e2, e1 ^ e4];
        for (r, row) in g.iter_mut().enumerate() {
            let entry = (0..4)
                .filter(|&t| d[t] >> r & 1 == 1)
                .fold(RingElement::ZERO, |acc, t| acc + BASIS[t]);
            row.push(entry);
        }
    }
    Ok(g)
}
