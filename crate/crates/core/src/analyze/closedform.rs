//! Closed-form weight distributions for simplicial-complex defining sets.
//!
//! Every table below is symmetric in its complemented sizes, so one
//! transcription per complement count covers all role assignments; the sizes
//! are passed in role order `(A₁, A₂, A₃, A₄)` restricted to the complemented
//! components.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::construct::DefiningSetSpec;
use crate::error::{Error, Result};
use crate::gf2::WeightDistribution;
use crate::simplicial::SetKind;

/// Largest `m` for which lengths and weights fit `u64`.
pub const MAX_M_CLOSED_FORM: usize = 15;

/// Which family part and summary-table row a spec falls under.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct FamilyMatch {
    /// 1 to 6.
    pub part: u8,
    /// 1 to 17, in the order the summary table lists its rows.
    pub summary_row: u8,
    /// Components given as complements (always all false for part 6).
    pub complemented: [bool; 4],
    /// Face sizes of `A₁..A₄`.
    pub sizes: [u32; 4],
    /// False when complemented sizes collide (parts 3 to 5 need them distinct).
    pub within_hypotheses: bool,
}

impl FamilyMatch {
    pub fn complemented_sizes(&self) -> Vec<u32> {
        (0..4)
            .filter(|&i| self.complemented[i])
            .map(|i| self.sizes[i])
            .collect()
    }

    pub fn simplex_sizes(&self) -> Vec<u32> {
        (0..4)
            .filter(|&i| !self.complemented[i])
            .map(|i| self.sizes[i])
            .collect()
    }

    pub fn total_size(&self) -> u32 {
        self.sizes.iter().sum()
    }
}

/// Role subsets with `j` complements, in summary-table order.
pub fn role_rows(j: usize) -> Vec<[bool; 4]> {
    let mut rows: Vec<Vec<usize>> = (0u8..16)
        .filter(|mask| mask.count_ones() as usize == j)
        .map(|mask| (0..4).filter(|&i| mask >> i & 1 == 1).collect())
        .collect();
    rows.sort();
    rows.into_iter()
        .map(|idx| std::array::from_fn(|i| idx.contains(&i)))
        .collect()
}

fn first_row_of_part(part: u8) -> u8 {
    match part {
        1 => 1,
        2 => 2,
        3 => 6,
        4 => 12,
        5 => 16,
        _ => 17,
    }
}

pub fn detect_family(spec: &DefiningSetSpec) -> Result<FamilyMatch> {
    let m = spec.m() as u32;
    let mut complemented = [false; 4];
    let mut sizes = [0u32; 4];
    for (i, c) in spec.components().iter().enumerate() {
        match c.kind() {
            SetKind::Simplex(f) => sizes[i] = f.size(),
            SetKind::ComplementSimplex(f) => {
                complemented[i] = true;
                sizes[i] = f.size();
            }
            SetKind::Explicit(_) => {
                return Err(Error::UnsupportedFamily(format!(
                    "component A{} is an explicit set",
                    i + 1
                )))
            }
        }
    }
    if spec.complement_whole() {
        if complemented.iter().any(|&c| c) {
            return Err(Error::UnsupportedFamily(
                "whole complement is only covered over four simplices".into(),
            ));
        }
        if sizes.iter().sum::<u32>() == 4 * m {
            return Err(Error::UnsupportedFamily(
                "the complement of all of R^m is empty".into(),
            ));
        }
        return Ok(FamilyMatch {
            part: 6,
            summary_row: 17,
            complemented,
            sizes,
            within_hypotheses: true,
        });
    }
    let j = complemented.iter().filter(|&&c| c).count();
    let comp_sizes: Vec<u32> = (0..4)
        .filter(|&i| complemented[i])
        .map(|i| sizes[i])
        .collect();
    if comp_sizes.iter().any(|&s| s >= m) {
        return Err(Error::UnsupportedFamily(
            "a complemented face is all of [m], so that component is empty".into(),
        ));
    }
    let distinct = comp_sizes
        .iter()
        .enumerate()
        .all(|(a, x)| comp_sizes[a + 1..].iter().all(|y| y != x));
    let part = j as u8 + 1;
    let offset = role_rows(j)
        .iter()
        .position(|r| *r == complemented)
        .expect("every role subset is listed") as u8;
    Ok(FamilyMatch {
        part,
        summary_row: first_row_of_part(part) + offset,
        complemented,
        sizes,
        within_hypotheses: distinct,
    })
}

fn p(e: i64) -> i128 {
    assert!((0..127).contains(&e), "exponent {e} out of range");
    1i128 << e
}

/// `(2·weight, count)` rows of the table for one complement count.
///
/// `comp` holds the complemented sizes, `c` the sum of the simplex sizes.
pub fn table_rows(m: u32, comp: &[u32], c: u32) -> Vec<(i128, i128)> {
    let m = i64::from(m);
    let c = i64::from(c);
    let q: Vec<i64> = comp.iter().map(|&s| i64::from(s)).collect();
    // (2^m − 2^a)
    let d = |a: i64| p(m) - p(a);
    match q.len() {
        0 => vec![(p(c), p(c) - 1)],
        1 => {
            let x = q[0];
            vec![(p(m + c), p(m - x) - 1), (d(x) * p(c), p(m + c) - p(m - x))]
        }
        2 => {
            let (x, y) = (q[0], q[1]);
            vec![
                (d(x) * p(m + c), p(m - y) - 1),
                (d(y) * p(m + c), p(m - x) - 1),
                (
                    (p(m) - p(x) - p(y)) * p(m + c),
                    p(2 * m - x - y) - p(m - y) - p(m - x) + 1,
                ),
                (d(x) * d(y) * p(c), p(2 * m + c) - p(2 * m - x - y)),
            ]
        }
        3 => {
            let (x, y, z) = (q[0], q[1], q[2]);
            let w = c;
            let pair = |a: i64, b: i64, other: i64| {
                (
                    d(other) * (p(m) - p(a) - p(b)) * p(m + w),
                    p(2 * m - a - b) - p(m - a) - p(m - b) + 1,
                )
            };
            vec![
                (d(x) * d(y) * p(m + w), p(m - z) - 1),
                (d(x) * d(z) * p(m + w), p(m - y) - 1),
                (d(y) * d(z) * p(m + w), p(m - x) - 1),
                pair(y, z, x),
                pair(x, z, y),
                pair(x, y, z),
                (
                    (p(2 * m) - p(m + x) - p(m + y) - p(m + z) + p(x + y) + p(y + z) + p(x + z))
                        * p(m + w),
                    p(3 * m - x - y - z) - p(2 * m - y - z) - p(2 * m - x - z) - p(2 * m - x - y)
                        + p(m - z)
                        + p(m - y)
                        + p(m - x)
                        - 1,
                ),
                (
                    d(x) * d(y) * d(z) * p(w),
                    p(3 * m + w) - p(3 * m - x - y - z),
                ),
            ]
        }
        4 => {
            let (x, y, z, w) = (q[0], q[1], q[2], q[3]);
            let one = |a: i64, b: i64, e: i64, missing: i64| {
                (d(a) * d(b) * d(e) * p(m), p(m - missing) - 1)
            };
            let two = |a: i64, b: i64, sa: i64, sb: i64| {
                (
                    d(a) * d(b) * (p(m) - p(sa) - p(sb)) * p(m),
                    p(2 * m - sa - sb) - p(m - sa) - p(m - sb) + 1,
                )
            };
            let three = |a: i64, r: [i64; 3]| {
                let [s, t, u] = r;
                (
                    d(a) * (p(2 * m) - p(m + s) - p(m + t) - p(m + u)
                        + p(s + t)
                        + p(t + u)
                        + p(s + u))
                        * p(m),
                    p(3 * m - s - t - u) - p(2 * m - s - t) - p(2 * m - t - u) - p(2 * m - s - u)
                        + p(m - s)
                        + p(m - t)
                        + p(m - u)
                        - 1,
                )
            };
            vec![
                one(x, z, w, y),
                one(x, y, w, z),
                one(x, y, z, w),
                one(y, z, w, x),
                two(x, w, y, z),
                two(x, z, y, w),
                two(x, y, z, w),
                two(z, w, x, y),
                two(y, w, x, z),
                two(y, z, x, w),
                three(x, [y, z, w]),
                three(w, [x, y, z]),
                three(z, [x, y, w]),
                three(y, [x, z, w]),
                (
                    (p(3 * m) - p(2 * m + z) - p(2 * m + w) - p(2 * m + x) - p(2 * m + y)
                        + p(m + z + w)
                        + p(m + x + z)
                        + p(m + x + w)
                        + p(m + z + y)
                        + p(m + y + w)
                        + p(m + x + y)
                        - p(x + z + w)
                        - p(y + z + w)
                        - p(x + y + z)
                        - p(x + y + w))
                        * p(m),
                    p(4 * m - x - y - z - w)
                        - p(3 * m - x - y - z)
                        - p(3 * m - y - z - w)
                        - p(3 * m - x - z - w)
                        - p(3 * m - x - y - w)
                        + p(2 * m - y - z)
                        + p(2 * m - x - z)
                        + p(2 * m - z - w)
                        + p(2 * m - x - y)
                        + p(2 * m - y - w)
                        + p(2 * m - x - w)
                        - p(m - x)
                        - p(m - y)
                        - p(m - z)
                        - p(m - w)
                        + 1,
                ),
                (
                    d(x) * d(y) * d(z) * d(w),
                    p(4 * m) - p(4 * m - x - y - z - w),
                ),
            ]
        }
        _ => panic!("at most four complemented components"),
    }
}

/// Rows for the complement of a product of simplices of total size `s`.
pub fn whole_complement_rows(m: u32, s: u32) -> Vec<(i128, i128)> {
    let (m, s) = (i64::from(m), i64::from(s));
    vec![
        (p(4 * m), p(4 * m - s) - 1),
        (p(4 * m) - p(s), p(4 * m) - p(4 * m - s)),
    ]
}

/// Weight distribution read off the closed-form tables.
pub fn wd_closedform(spec: &DefiningSetSpec) -> Result<WeightDistribution> {
    let fm = detect_family(spec)?;
    closedform_for(spec.m(), &fm)
}

/// As [`wd_closedform`], from an already detected family.
pub fn closedform_for(m: usize, fm: &FamilyMatch) -> Result<WeightDistribution> {
    if m > MAX_M_CLOSED_FORM {
        return Err(Error::TooLarge(format!(
            "closed forms are evaluated for m <= {MAX_M_CLOSED_FORM}"
        )));
    }
    let mu = m as u32;
    let (rows, length) = if fm.part == 6 {
        let s = fm.total_size();
        (
            whole_complement_rows(mu, s),
            p(4 * i64::from(mu)) - p(i64::from(s)),
        )
    } else {
        let comp = fm.complemented_sizes();
        let c: u32 = fm.simplex_sizes().iter().sum();
        let len = comp
            .iter()
            .map(|&x| p(i64::from(mu)) - p(i64::from(x)))
            .product::<i128>()
            * p(i64::from(c));
        (table_rows(mu, &comp, c), len)
    };
    rows_to_distribution(length as u64, &rows)
}

/// Drops zero-count rows, rejects half-integral or negative entries, and
/// merges equal weights.
///
/// When complemented sizes collide the tables count message tuples rather
/// than codewords: a weight-0 row then holds the nonzero kernel tuples, and
/// every count is divided by the kernel size `1 + count₀`.
pub fn rows_to_distribution(n: u64, rows: &[(i128, i128)]) -> Result<WeightDistribution> {
    let mut merged: BTreeMap<u64, u128> = BTreeMap::new();
    let mut kernel: u128 = 1;
    for &(tw, count) in rows {
        if count == 0 {
            continue;
        }
        if count < 0 || tw < 0 {
            return Err(Error::InvalidTableRow(format!(
                "weight {tw}/2 with count {count}"
            )));
        }
        if tw % 2 != 0 {
            return Err(Error::NonIntegralWeight {
                twice_weight: tw,
                count: count as u64,
            });
        }
        let w = (tw / 2) as u64;
        if w > n {
            return Err(Error::InvalidTableRow(format!(
                "weight {w} with count {count} in a code of length {n}"
            )));
        }
        if w == 0 {
            kernel += count as u128;
        } else {
            *merged.entry(w).or_default() += count as u128;
        }
    }
    if !kernel.is_power_of_two() {
        return Err(Error::InvalidTableRow(format!(
            "{kernel} tuples map to the zero word"
        )));
    }
    let mut dist = WeightDistribution::from_pairs(n, [(0u64, 1u32)]);
    for (w, c) in merged {
        if c % kernel != 0 {
            return Err(Error::MultiplicityMismatch {
                weight: w,
                count: c as u64,
                kernel: kernel as u64,
            });
        }
        dist.add(w, c / kernel);
    }
    Ok(dist)
}

/// The conditions one summary-table row states for its family.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct SummaryConditions {
    pub row: u8,
    /// `None` where the table makes no optimality claim.
    pub optimal: Option<bool>,
    pub minimal: bool,
    pub self_orthogonal: bool,
}

pub fn summary_conditions(m: usize, fm: &FamilyMatch) -> SummaryConditions {
    let m = m as u32;
    let comp = fm.complemented_sizes();
    let simp: u32 = fm.simplex_sizes().iter().sum();
    let max_comp = comp.iter().copied().max();
    let small_complements = max_comp.map_or(true, |x| x + 2 <= m);
    let (optimal, minimal, self_orthogonal) = match fm.part {
        1 => (Some(simp >= 2), true, simp >= 3),
        2 => (Some(true), small_complements, simp >= 3),
        3 => {
            let min = comp.iter().copied().min().unwrap_or(0);
            let claim = 1u64
                .checked_shl(fm.total_size())
                .is_some_and(|v| v <= u64::from(m + simp + min));
            (Some(claim), small_complements, simp >= 3)
        }
        4 => (None, small_complements, simp >= 3),
        5 => (None, small_complements, fm.sizes.iter().all(|&s| s > 0)),
        _ => {
            let s = fm.total_size();
            (Some(true), s + 2 <= 4 * m, s >= 3)
        }
    };
    SummaryConditions {
        row: fm.summary_row,
        optimal,
        minimal,
        self_orthogonal,
    }
}
