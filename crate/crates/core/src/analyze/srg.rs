//! Strongly regular graphs from projective two-weight binary codes.

use serde::Serialize;

use crate::construct::BinaryCode;
use crate::error::{Error, Result};
use crate::gf2::WeightDistribution;

/// Largest `k` for which the graph on `F₂^k` is built.
pub const MAX_GRAPH_K: usize = 14;

const Q: i128 = 2;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct SrgParams {
    pub n1: i128,
    pub k1: i128,
    pub lambda: i128,
    pub mu: i128,
    pub w1: u64,
    pub w2: u64,
}

impl SrgParams {
    pub fn tuple(&self) -> (i128, i128, i128, i128) {
        (self.n1, self.k1, self.lambda, self.mu)
    }

    /// Parameters of the complement graph.
    pub fn complement(&self) -> (i128, i128, i128, i128) {
        let (n, k, l, m) = self.tuple();
        (n, n - k - 1, n - 2 * k + m - 2, n - 2 * k + l)
    }
}

fn overflow() -> Error {
    Error::TooLarge("SRG parameters overflow 128-bit arithmetic".into())
}

/// `N₁ = 2^k`, `K₁ = n`, `λ = K₁² + 3K₁ − q(w₁+w₂) − K₁q(w₁+w₂) + q²w₁w₂`,
/// `μ = q²w₁w₂ / q^k`, checked against `(N₁ − K₁ − 1)μ = K₁(K₁ − λ − 1)`.
pub fn srg_parameters(n: u64, k: u32, w1: u64, w2: u64) -> Result<SrgParams> {
    if w1 == w2 || w1 == 0 || w2 == 0 {
        return Err(Error::NotTwoWeightProjective(format!(
            "weights {w1} and {w2} are not two distinct nonzero weights"
        )));
    }
    if k >= 120 {
        return Err(overflow());
    }
    let (w1, w2) = (w1.min(w2), w1.max(w2));
    let (a, b) = (i128::from(w1), i128::from(w2));
    let n1 = 1i128 << k;
    let k1 = i128::from(n) * (Q - 1);
    let sum = a.checked_add(b).ok_or_else(overflow)?;
    let prod = Q * Q * a.checked_mul(b).ok_or_else(overflow)?;
    let lambda = k1
        .checked_mul(k1)
        .and_then(|v| v.checked_add(3 * k1))
        .and_then(|v| v.checked_sub(Q * sum))
        .and_then(|v| v.checked_sub(k1.checked_mul(Q * sum)?))
        .and_then(|v| v.checked_add(prod))
        .ok_or_else(overflow)?;
    if prod % n1 != 0 {
        return Err(Error::NonIntegralMu {
            numerator: prod.to_string(),
            denominator: n1.to_string(),
        });
    }
    let mu = prod / n1;
    let lhs = (n1 - k1 - 1).checked_mul(mu);
    let rhs = k1.checked_mul(k1 - lambda - 1);
    if lhs.is_none() || lhs != rhs {
        return Err(Error::InconsistentSrgParameters {
            n1: n1.to_string(),
            k1: k1.to_string(),
            lambda: lambda.to_string(),
            mu: mu.to_string(),
        });
    }
    Ok(SrgParams {
        n1,
        k1,
        lambda,
        mu,
        w1,
        w2,
    })
}

/// The two nonzero weights of a two-weight distribution.
pub fn two_weights(w: &WeightDistribution) -> Result<(u64, u64)> {
    let ws: Vec<u64> = w.nonzero_weights().collect();
    match ws[..] {
        [a, b] => Ok((a, b)),
        _ => Err(Error::NotTwoWeightProjective(format!(
            "{} nonzero weights",
            ws.len()
        ))),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct SrgVerification {
    pub computed: SrgParams,
    /// `(N₁, K₁, λ, μ)` counted on the graph.
    pub measured: (i128, i128, i128, i128),
    pub verified: bool,
}

/// Builds the Cayley graph on `F₂^k` whose connection set is the set of
/// columns of the row-reduced generator, and counts its parameters.
///
/// Common neighbours of `x` and `y` depend only on `δ = x ⊕ y`: they number
/// `|S ∩ (S + δ)|`. Scanning every nonzero `δ` therefore covers every
/// ordered pair of distinct vertices.
pub fn srg_build_verify(
    code: &BinaryCode,
    w: &WeightDistribution,
    projective: bool,
) -> Result<SrgVerification> {
    let k = code.k();
    if !projective {
        return Err(Error::NotTwoWeightProjective(
            "code is not projective".into(),
        ));
    }
    let (w1, w2) = two_weights(w)?;
    if k > MAX_GRAPH_K {
        return Err(Error::TooLarge(format!(
            "graph on 2^{k} vertices (limit 2^{MAX_GRAPH_K})"
        )));
    }
    let computed = srg_parameters(code.n() as u64, k as u32, w1, w2)?;
    let cols = code.reduced().columns_u64().expect("k fits 64 bits");
    let size = 1usize << k;
    let mut in_set = vec![false; size];
    for &c in &cols {
        in_set[c as usize] = true;
    }
    let degree = in_set.iter().filter(|&&b| b).count() as i128;
    let mut lambda: Option<(usize, i128)> = None;
    let mut mu: Option<(usize, i128)> = None;
    for delta in 1..size {
        let common = cols.iter().filter(|&&s| in_set[s as usize ^ delta]).count() as i128;
        let slot = if in_set[delta] { &mut lambda } else { &mut mu };
        match *slot {
            None => *slot = Some((delta, common)),
            Some((first, v)) if v != common => {
                let kind = if in_set[delta] {
                    "adjacent"
                } else {
                    "non-adjacent"
                };
                return Err(Error::NotStronglyRegular(format!(
                    "{kind} pairs (0, {first}) and (0, {delta}) have {v} and {common} common neighbours"
                )));
            }
            Some(_) => {}
        }
    }
    let (Some((_, l)), Some((_, m))) = (lambda, mu) else {
        return Err(Error::NotStronglyRegular(
            "graph is complete or empty".into(),
        ));
    };
    let measured = (size as i128, degree, l, m);
    Ok(SrgVerification {
        computed,
        measured,
        verified: measured == computed.tuple(),
    })
}

/// `(2^{m+t}, (2^m − 2^x)2^t, (2^m − 2^{x+1})2^t, (2^m − 2^x)2^t)` for one
/// complement of size `x` and simplices of total size `t`.
pub fn single_complement_family(m: u32, x: u32, t: u32) -> (i128, i128, i128, i128) {
    let p = |e: u32| 1i128 << e;
    (
        p(m + t),
        (p(m) - p(x)) * p(t),
        (p(m) - p(x + 1)) * p(t),
        (p(m) - p(x)) * p(t),
    )
}

/// Its complement graph: `(2^{m+t}, 2^{x+t} − 1, 2^{x+t} − 2, 0)`.
pub fn single_complement_family_complement(m: u32, x: u32, t: u32) -> (i128, i128, i128, i128) {
    let p = |e: u32| 1i128 << e;
    (p(m + t), p(x + t) - 1, p(x + t) - 2, 0)
}

/// `(2^{4m}, 2^{4m} − 2^s, 2^{4m} − 2^{s+1}, 2^{4m} − 2^s)` for the whole
/// complement of simplices of total size `s`.
pub fn whole_complement_family(m: u32, s: u32) -> (i128, i128, i128, i128) {
    let p = |e: u32| 1i128 << e;
    (
        p(4 * m),
        p(4 * m) - p(s),
        p(4 * m) - p(s + 1),
        p(4 * m) - p(s),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_code, DefiningSetSpec};
    use crate::simplicial::Face;

    fn two_weight_120() -> BinaryCode {
        let faces = [
            Face::EMPTY,
            Face::EMPTY,
            Face::EMPTY,
            Face::from_coords(&[1, 2, 3]).unwrap(),
        ];
        build_code(&DefiningSetSpec::from_faces(4, faces, 0b0001, false).unwrap()).unwrap()
    }

    #[test]
    fn formula_examples() {
        let p = srg_parameters(120, 7, 60, 64).unwrap();
        assert_eq!(p.tuple(), (128, 120, 112, 120));
        assert_eq!(p.tuple(), single_complement_family(4, 0, 3));
        assert_eq!(p.complement(), (128, 7, 6, 0));
        assert_eq!(p.complement(), single_complement_family_complement(4, 0, 3));

        let p = srg_parameters(448, 9, 224, 256).unwrap();
        assert_eq!((p.lambda, p.mu), (384, 448));
    }

    #[test]
    fn formula_rejects_bad_input() {
        assert!(matches!(
            srg_parameters(10, 7, 3, 5),
            Err(Error::NonIntegralMu { .. })
        ));
        assert!(matches!(
            srg_parameters(10, 3, 4, 4),
            Err(Error::NotTwoWeightProjective(_))
        ));
    }

    #[test]
    fn two_weight_120_graph() {
        let code = two_weight_120();
        let w = WeightDistribution::from_pairs(120, [(0u64, 1u32), (60, 112), (64, 15)]);
        let v = srg_build_verify(&code, &w, true).unwrap();
        assert_eq!(v.measured, (128, 120, 112, 120));
        assert!(v.verified);
    }

    #[test]
    fn one_weight_code_is_rejected() {
        let faces = [Face::EMPTY; 4];
        let code =
            build_code(&DefiningSetSpec::from_faces(3, faces, 0b0001, false).unwrap()).unwrap();
        let w = WeightDistribution::from_pairs(7, [(0u64, 1u32), (4, 7)]);
        assert!(matches!(
            srg_build_verify(&code, &w, true),
            Err(Error::NotTwoWeightProjective(_))
        ));
    }

    #[test]
    fn whole_complement_family_values() {
        assert_eq!(whole_complement_family(1, 1), (16, 14, 12, 14));
        let p = srg_parameters(14, 4, 7, 8).unwrap();
        assert_eq!(p.tuple(), whole_complement_family(1, 1));
    }
}
