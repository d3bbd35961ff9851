use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::construct::BinaryCode;
use crate::error::{Error, Result};
use crate::gf2::{fwht_in_place, macwilliams_prefix, WeightDistribution};

/// Largest `k` for which exact minimality is attempted.
pub const MAX_EXACT_MINIMALITY_K: usize = 16;

pub fn min_distance(w: &WeightDistribution) -> Result<u64> {
    w.min_distance().ok_or(Error::ZeroCode)
}

/// `Σ_{i<k} ⌈d / 2^i⌉`.
pub fn griesmer_sum(k: u64, d: u64) -> u128 {
    (0..k)
        .map(|i| {
            if i >= 64 {
                u128::from(d > 0)
            } else {
                u128::from(d).div_ceil(1u128 << i)
            }
        })
        .sum()
}

/// No binary `[n, k, d+1]` code exists by the Griesmer bound.
pub fn is_distance_optimal(n: u64, k: u64, d: u64) -> bool {
    griesmer_sum(k, d + 1) > u128::from(n)
}

pub fn is_griesmer_attaining(n: u64, k: u64, d: u64) -> bool {
    griesmer_sum(k, d) == u128::from(n)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct MinimalityReport {
    /// `2·wt_min > wt_max`.
    pub sufficient: bool,
    pub exact: Option<bool>,
}

pub fn minimality_report(
    w: &WeightDistribution,
    code: Option<&BinaryCode>,
) -> Result<MinimalityReport> {
    let wmin = w.min_distance().ok_or(Error::ZeroCode)?;
    let wmax = w.max_weight().ok_or(Error::ZeroCode)?;
    let exact = match code {
        Some(c) if c.k() <= MAX_EXACT_MINIMALITY_K => Some(is_minimal_exact(c, w)),
        _ => None,
    };
    Ok(MinimalityReport {
        sufficient: 2 * wmin > wmax,
        exact,
    })
}

/// Every nonzero codeword `v` is minimal.
///
/// A nonzero `u ≠ v` with `Supp(u) ⊂ Supp(v)` splits `wt(v)` into two
/// nonzero weights, so only codewords whose weight is such a sum are tested;
/// for those, `v` is minimal iff the columns outside `Supp(v)` have rank `k − 1`.
pub fn is_minimal_exact(code: &BinaryCode, w: &WeightDistribution) -> bool {
    let k = code.k();
    if k == 0 {
        return true;
    }
    let weights: Vec<u64> = w.nonzero_weights().collect();
    let splittable = |wt: u64| {
        weights
            .iter()
            .any(|&a| a < wt && weights.binary_search(&(wt - a)).is_ok())
    };
    if !weights.iter().any(|&wt| splittable(wt)) {
        return true;
    }
    let cols = code.reduced().columns_u64().expect("k fits 64 bits");
    // wt(msg·G) = (n − Σ_c (−1)^{msg·c}) / 2
    let mut table = vec![0i64; 1 << k];
    for &c in &cols {
        table[c as usize] += 1;
    }
    fwht_in_place(&mut table);
    let n = cols.len() as i64;
    (1usize..1 << k).into_par_iter().all(|msg| {
        let wt = ((n - table[msg]) / 2) as u64;
        if !splittable(wt) {
            return true;
        }
        let msg = msg as u64;
        let mut basis = [0u64; 64];
        let mut rank = 0;
        for &c in cols.iter().filter(|&&c| (c & msg).count_ones() % 2 == 0) {
            let mut v = c;
            while v != 0 {
                let top = 63 - v.leading_zeros() as usize;
                if basis[top] == 0 {
                    basis[top] = v;
                    rank += 1;
                    break;
                }
                v ^= basis[top];
            }
            if rank + 1 == k {
                return true;
            }
        }
        rank + 1 == k
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct SelfOrthogonalityReport {
    /// Every weight is a multiple of 4.
    pub sufficient: bool,
    /// `G·Gᵀ = 0`.
    pub exact: Option<bool>,
}

pub fn self_orthogonality_report(
    w: &WeightDistribution,
    code: Option<&BinaryCode>,
) -> SelfOrthogonalityReport {
    SelfOrthogonalityReport {
        sufficient: w.nonzero_weights().all(|x| x % 4 == 0),
        exact: code.map(|c| c.reduced().gram_is_zero()),
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProjectivityReport {
    pub projective: bool,
    pub dual_a1: BigUint,
    pub dual_a2: BigUint,
    pub dual_a3: BigUint,
}

impl Serialize for ProjectivityReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ProjectivityReport", 4)?;
        st.serialize_field("projective", &self.projective)?;
        st.serialize_field("dual_a1", &self.dual_a1.to_string())?;
        st.serialize_field("dual_a2", &self.dual_a2.to_string())?;
        st.serialize_field("dual_a3", &self.dual_a3.to_string())?;
        st.end()
    }
}

/// Columns nonzero and pairwise distinct after row reduction, cross-checked
/// against `A'₁ = A'₂ = 0` from the MacWilliams identities.
pub fn projectivity_report(
    code: &BinaryCode,
    w: &WeightDistribution,
) -> Result<ProjectivityReport> {
    let by_columns = columns_projective(code);
    let k = u32::try_from(code.k()).expect("dimension fits u32");
    let dual = macwilliams_prefix(w, k, 3)?;
    let get = |j: usize| dual.get(j).cloned().unwrap_or_default();
    let (a1, a2, a3) = (get(1), get(2), get(3));
    let by_macwilliams = a1.is_zero() && a2.is_zero();
    if by_columns != by_macwilliams {
        return Err(Error::MethodDisagreement {
            by_columns,
            by_macwilliams,
            dual_a1: a1.to_string(),
            dual_a2: a2.to_string(),
        });
    }
    Ok(ProjectivityReport {
        projective: by_columns,
        dual_a1: a1,
        dual_a2: a2,
        dual_a3: a3,
    })
}

fn columns_projective(code: &BinaryCode) -> bool {
    let r = code.reduced();
    let mut cols: Vec<Vec<u64>> = (0..r.ncols())
        .map(|j| {
            let mut words = vec![0u64; r.nrows().div_ceil(64).max(1)];
            for i in 0..r.nrows() {
                if r.get(i, j) {
                    words[i / 64] |= 1 << (i % 64);
                }
            }
            words
        })
        .collect();
    if cols.iter().any(|c| c.iter().all(|&w| w == 0)) {
        return false;
    }
    let before = cols.len();
    cols.sort_unstable();
    cols.dedup();
    cols.len() == before
}

/// Minimum distance of the dual, resolved up to 3.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DualDistance {
    Exact(u64),
    AtLeastFour,
}

impl std::fmt::Display for DualDistance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Exact(d) => write!(f, "{d}"),
            Self::AtLeastFour => f.write_str(">=4"),
        }
    }
}

/// `[[n, n − 2k, d(C^⊥)]]` with the dual distance resolved up to 3.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CssParams {
    pub n: u64,
    pub k: u64,
    pub d: DualDistance,
}

impl Serialize for CssParams {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(3))?;
        seq.serialize_element(&self.n)?;
        seq.serialize_element(&self.k)?;
        match self.d {
            DualDistance::Exact(d) => seq.serialize_element(&d)?,
            DualDistance::AtLeastFour => seq.serialize_element(">=4")?,
        }
        seq.end()
    }
}

impl std::fmt::Display for CssParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[[{}, {}, {}]]", self.n, self.k, self.d)
    }
}

pub fn css_parameters(code: &BinaryCode, w: &WeightDistribution) -> Result<CssParams> {
    if code.k() == 0 {
        return Err(Error::ZeroCode);
    }
    if !code.reduced().gram_is_zero() {
        return Err(Error::NotSelfOrthogonal);
    }
    let k = code.k() as u32;
    let dual = macwilliams_prefix(w, k, 3)?;
    let d = (1..dual.len())
        .find(|&j| !dual[j].is_zero())
        .map_or(DualDistance::AtLeastFour, |j| DualDistance::Exact(j as u64));
    let n = code.n() as u64;
    Ok(CssParams {
        n,
        k: n - 2 * u64::from(k),
        d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_code, DefiningSetSpec};
    use crate::gf2::BinaryMatrix;
    use crate::simplicial::Face;

    fn face(c: &[usize]) -> Face {
        Face::from_coords(c).unwrap()
    }

    fn spec(m: usize, faces: [&[usize]; 4], complemented: u8) -> DefiningSetSpec {
        DefiningSetSpec::from_faces(m, faces.map(face), complemented, false).unwrap()
    }

    fn dist(n: u64, pairs: &[(u64, u64)]) -> WeightDistribution {
        WeightDistribution::from_pairs(n, pairs.iter().copied())
    }

    fn two_weight_120() -> (BinaryCode, WeightDistribution) {
        (
            build_code(&spec(4, [&[], &[], &[], &[1, 2, 3]], 0b0001)).unwrap(),
            dist(120, &[(0, 1), (60, 112), (64, 15)]),
        )
    }

    #[test]
    fn min_distance_examples() {
        assert_eq!(
            min_distance(&dist(120, &[(0, 1), (60, 112), (64, 15)])).unwrap(),
            60
        );
        assert_eq!(min_distance(&dist(9, &[(0, 1), (9, 1)])).unwrap(), 9);
        assert_eq!(
            min_distance(&dist(42, &[(0, 1), (20, 21), (21, 32), (24, 7), (28, 3)])).unwrap(),
            20
        );
        assert!(matches!(
            min_distance(&dist(4, &[(0, 1)])),
            Err(Error::ZeroCode)
        ));
    }

    #[test]
    fn griesmer_examples() {
        assert_eq!(griesmer_sum(7, 60), 120);
        assert!(is_griesmer_attaining(120, 7, 60));
        assert!(is_distance_optimal(120, 7, 60));
        assert_eq!(griesmer_sum(1, 1), 1);
        assert_eq!(griesmer_sum(9, 224), 448);
        assert!(is_griesmer_attaining(448, 9, 224));
        // the [7,4,3] Hamming code is optimal but not a Griesmer code
        assert_eq!(griesmer_sum(4, 3), 7);
        assert!(is_distance_optimal(7, 4, 3));
        assert!(!is_distance_optimal(8, 4, 3));
    }

    #[test]
    fn minimality_examples() {
        let (code, w) = two_weight_120();
        let r = minimality_report(&w, Some(&code)).unwrap();
        assert_eq!(
            r,
            MinimalityReport {
                sufficient: true,
                exact: Some(true)
            }
        );
        let r = minimality_report(&dist(5, &[(0, 1), (3, 4)]), None).unwrap();
        assert!(r.sufficient && r.exact.is_none());
    }

    #[test]
    fn exact_minimality_detects_nested_support() {
        // rows 1100 and 1110: the second contains the first
        let g = BinaryMatrix::parse_rows(&["1100", "1110"]).unwrap();
        let code = BinaryCode::from_generator(g);
        let w = dist(4, &[(0, 1), (1, 1), (2, 1), (3, 1)]);
        let r = minimality_report(&w, Some(&code)).unwrap();
        assert_eq!(
            r,
            MinimalityReport {
                sufficient: false,
                exact: Some(false)
            }
        );
    }

    #[test]
    fn self_orthogonality_examples() {
        let (code, w) = two_weight_120();
        assert_eq!(
            self_orthogonality_report(&w, Some(&code)),
            SelfOrthogonalityReport {
                sufficient: true,
                exact: Some(true)
            }
        );
        assert!(!self_orthogonality_report(&dist(1, &[(0, 1), (1, 1)]), None).sufficient);
        let w3 = dist(448, &[(0, 1), (224, 504), (256, 7)]);
        assert!(self_orthogonality_report(&w3, None).sufficient);
    }

    #[test]
    fn projectivity_examples() {
        let (code, w) = two_weight_120();
        assert!(projectivity_report(&code, &w).unwrap().projective);

        let rep = BinaryCode::from_generator(BinaryMatrix::parse_rows(&["11"]).unwrap());
        let r = projectivity_report(&rep, &dist(2, &[(0, 1), (2, 1)])).unwrap();
        assert!(!r.projective);
        assert_eq!(r.dual_a2, BigUint::from(1u32));

        let full = BinaryCode::from_generator(BinaryMatrix::identity(4));
        let wf =
            WeightDistribution::from_pairs(4, (0..=4).map(|i| (i, crate::gf2::binomial(4, i))));
        assert!(projectivity_report(&full, &wf).unwrap().projective);
    }

    #[test]
    fn projectivity_flags_method_disagreement() {
        // the [3,2] even-weight code is projective; a wrong distribution claims A'_1 = 1
        let even = BinaryCode::from_generator(BinaryMatrix::parse_rows(&["101", "011"]).unwrap());
        assert!(
            projectivity_report(&even, &dist(3, &[(0, 1), (2, 3)]))
                .unwrap()
                .projective
        );
        let wrong = dist(3, &[(0, 1), (1, 2), (2, 1)]);
        assert!(matches!(
            projectivity_report(&even, &wrong),
            Err(Error::MethodDisagreement { .. })
        ));
    }

    #[test]
    fn css_examples() {
        let (code, w) = two_weight_120();
        let p = css_parameters(&code, &w).unwrap();
        assert_eq!(
            p,
            CssParams {
                n: 120,
                k: 106,
                d: DualDistance::Exact(3)
            }
        );
        assert_eq!(serde_json::to_string(&p).unwrap(), "[120,106,3]");

        let code = build_code(&spec(4, [&[1], &[], &[1], &[1, 2, 3, 4]], 0b0001)).unwrap();
        let w = dist(448, &[(0, 1), (224, 504), (256, 7)]);
        assert_eq!(
            css_parameters(&code, &w).unwrap().to_string(),
            "[[448, 430, 3]]"
        );

        let zero = BinaryCode::from_generator(BinaryMatrix::zeros(1, 3));
        assert!(matches!(
            css_parameters(&zero, &dist(3, &[(0, 1)])),
            Err(Error::ZeroCode)
        ));
        let odd = BinaryCode::from_generator(BinaryMatrix::parse_rows(&["1"]).unwrap());
        assert!(matches!(
            css_parameters(&odd, &dist(1, &[(0, 1), (1, 1)])),
            Err(Error::NotSelfOrthogonal)
        ));
    }
}
