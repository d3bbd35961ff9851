use std::collections::HashMap;

use rayon::prelude::*;

use crate::construct::{BinaryCode, DefiningSetSpec, MAX_M_ENUMERATED};
use crate::error::{Error, Result};
use crate::gf2::WeightDistribution;
use crate::simplicial::char_sum_table;

/// Default cap on `2^k · n` for brute-force enumeration.
pub const DEFAULT_BUDGET: u128 = 1 << 32;

/// Largest dimension brute force will ever attempt, whatever the budget.
pub const MAX_BRUTEFORCE_K: usize = 32;

/// `2^k · n`, the bit-operation count of a brute-force run.
pub fn bruteforce_cost(code: &BinaryCode) -> u128 {
    (1u128 << code.k().min(127)) * code.n() as u128
}

/// Weight distribution by enumerating all `2^k` messages in Gray-code order
/// against the row-reduced generator.
pub fn wd_bruteforce(code: &BinaryCode, budget: u128) -> Result<WeightDistribution> {
    let k = code.k();
    let n = code.n() as u64;
    let required = bruteforce_cost(code);
    if k > MAX_BRUTEFORCE_K || required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    if k == 0 {
        return Ok(WeightDistribution::from_pairs(n, [(0u64, 1u32)]));
    }
    let rows: Vec<&[u64]> = code.reduced().rows().iter().map(|r| r.words()).collect();
    let width = rows[0].len();
    let chunk_bits = k.saturating_sub(8);
    let chunks = 1u64 << (k - chunk_bits);

    let merged = (0..chunks)
        .into_par_iter()
        .map(|h| {
            let start = h << chunk_bits;
            let end = start + (1u64 << chunk_bits);
            let mut acc = vec![0u64; width];
            let gray = start ^ (start >> 1);
            for (i, row) in rows.iter().enumerate() {
                if gray >> i & 1 == 1 {
                    acc.iter_mut().zip(row.iter()).for_each(|(a, b)| *a ^= b);
                }
            }
            let mut hist: HashMap<u64, u64> = HashMap::new();
            let weight = |acc: &[u64]| acc.iter().map(|w| u64::from(w.count_ones())).sum::<u64>();
            *hist.entry(weight(&acc)).or_default() += 1;
            for i in start + 1..end {
                let row = rows[i.trailing_zeros() as usize];
                acc.iter_mut().zip(row.iter()).for_each(|(a, b)| *a ^= b);
                *hist.entry(weight(&acc)).or_default() += 1;
            }
            hist
        })
        .reduce(HashMap::new, merge_hist);

    let mut dist = WeightDistribution::new(n);
    for (w, c) in merged {
        dist.add(w, c);
    }
    Ok(dist)
}

fn merge_hist<K: std::hash::Hash + Eq>(
    mut a: HashMap<K, u64>,
    b: HashMap<K, u64>,
) -> HashMap<K, u64> {
    for (w, c) in b {
        *a.entry(w).or_default() += c;
    }
    a
}

/// Weight distribution from `wt = |D|/2 − ½·S₁(x₁+x₄)·S₂(x₃)·S₃(x₂)·S₄(x₁)`
/// over every `(x₁, x₂, x₃, x₄) ∈ (F₂^m)⁴`, with tuple counts divided by the
/// kernel size `2^{4m−k}`.
pub fn wd_charsum(spec: &DefiningSetSpec) -> Result<WeightDistribution> {
    let m = spec.m();
    if m > MAX_M_ENUMERATED {
        return Err(Error::DimensionOutOfRange {
            m,
            max: MAX_M_ENUMERATED,
        });
    }
    let tables: Vec<Vec<i64>> = spec.components().iter().map(char_sum_table).collect();
    let (s1, s2, s3, s4) = (&tables[0], &tables[1], &tables[2], &tables[3]);
    let side = 1usize << m;
    let whole = 1i128 << (4 * m);
    let n = spec.size() as i128;
    let complemented = spec.complement_whole();
    // twice the weight, given the product of the four sums and whether x = 0
    let twice = move |p: i128, origin: bool| {
        if complemented {
            let over_complement = if origin { whole } else { 0 } - p;
            n - over_complement
        } else {
            n - p
        }
    };

    let hist = (0..side)
        .into_par_iter()
        .map(|x1| {
            let mut hist: HashMap<i128, u64> = HashMap::new();
            for x4 in 0..side {
                let outer = i128::from(s1[x1 ^ x4]) * i128::from(s4[x1]);
                for (x2, &sx2) in s3.iter().enumerate() {
                    let mid = outer * i128::from(sx2);
                    if mid == 0 && !(complemented && x1 == 0 && x4 == 0 && x2 == 0) {
                        *hist.entry(twice(0, false)).or_default() += side as u64;
                        continue;
                    }
                    for (x3, &sx3) in s2.iter().enumerate() {
                        let p = mid * i128::from(sx3);
                        let origin = x1 == 0 && x2 == 0 && x3 == 0 && x4 == 0;
                        *hist.entry(twice(p, origin)).or_default() += 1;
                    }
                }
            }
            hist
        })
        .reduce(HashMap::new, merge_hist);

    tuple_counts_to_distribution(n as u64, hist)
}

/// Turns a histogram of twice-weights over message tuples into codeword counts.
pub(crate) fn tuple_counts_to_distribution(
    n: u64,
    hist: HashMap<i128, u64>,
) -> Result<WeightDistribution> {
    let mut sorted: Vec<(i128, u64)> = hist.into_iter().filter(|&(_, c)| c > 0).collect();
    sorted.sort_unstable();
    if let Some(&(tw, count)) = sorted.iter().find(|(tw, _)| tw % 2 != 0) {
        return Err(Error::NonIntegralWeight {
            twice_weight: tw,
            count,
        });
    }
    let kernel = sorted
        .iter()
        .find(|(tw, _)| *tw == 0)
        .map(|&(_, c)| c)
        .unwrap_or(0);
    if !kernel.is_power_of_two() {
        return Err(Error::MultiplicityMismatch {
            weight: 0,
            count: kernel,
            kernel,
        });
    }
    let mut dist = WeightDistribution::new(n);
    for (tw, count) in sorted {
        let weight = (tw / 2) as u64;
        if count % kernel != 0 {
            return Err(Error::MultiplicityMismatch {
                weight,
                count,
                kernel,
            });
        }
        dist.add(weight, count / kernel);
    }
    Ok(dist)
}
