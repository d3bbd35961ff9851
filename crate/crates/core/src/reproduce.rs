//! Built-in golden suite: the worked codes and the closed parameter families,
//! each checked against its stated values and against a blessed JSON snapshot.

use std::path::PathBuf;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::analyze::{
    cross_check, full_report, is_griesmer_attaining, CodeReport, DualDistance, Engines,
    ReportOptions, DEFAULT_BUDGET,
};
use crate::construct::DefiningSetSpec;
use crate::error::Result;
use crate::gf2::WeightDistribution;
use crate::simplicial::Face;

/// Snapshot compiled into the crate.
pub const GOLDEN_JSON: &str = include_str!("../golden/reproduce.json");

/// Where `--bless` writes the snapshot.
pub fn golden_path() -> PathBuf {
    PathBuf::from(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/golden/reproduce.json"
    ))
}

/// One computed check before comparison with the snapshot.
#[derive(Clone, Debug)]
pub struct GoldenCheck {
    pub name: &'static str,
    pub observed: Value,
    /// `Err` holds the first stated value the computation contradicts.
    pub claim: std::result::Result<(), String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    /// First difference, empty on success.
    pub detail: String,
}

fn spec(m: usize, sizes: [usize; 4], complemented: u8) -> DefiningSetSpec {
    DefiningSetSpec::from_faces(m, sizes.map(Face::prefix), complemented, false)
        .expect("prefix faces fit m")
}

fn spec_coords(m: usize, coords: [&[usize]; 4], complemented: u8) -> DefiningSetSpec {
    let faces = coords.map(|c| Face::from_coords(c).expect("coordinates within m"));
    DefiningSetSpec::from_faces(m, faces, complemented, false).expect("faces fit m")
}

fn expect(cond: bool, what: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn dist(n: u64, pairs: &[(u64, u32)]) -> WeightDistribution {
    WeightDistribution::from_pairs(n, pairs.iter().copied())
}

fn report(spec: &DefiningSetSpec) -> Result<CodeReport> {
    full_report(spec, &ReportOptions::default())
}

fn params(r: &CodeReport) -> Value {
    json!([r.n, r.k, r.d])
}

fn enumerator_check(
    name: &'static str,
    r: &CodeReport,
    expected: WeightDistribution,
) -> GoldenCheck {
    let claim = expect(r.distribution == expected, || {
        format!("distribution {} (expected {expected})", r.distribution)
    });
    GoldenCheck {
        name,
        observed: serde_json::to_value(&r.distribution).expect("distribution serializes"),
        claim,
    }
}

fn css_check(name: &'static str, r: &CodeReport, n: u64, k: u64) -> GoldenCheck {
    let claim = match &r.css {
        Some(c) => expect((c.n, c.k, c.d) == (n, k, DualDistance::Exact(3)), || {
            format!("css {c} (expected [[{n}, {k}, 3]])")
        }),
        None => Err("no CSS parameters".into()),
    };
    GoldenCheck {
        name,
        observed: serde_json::to_value(r.css).expect("css serializes"),
        claim,
    }
}

fn worked_codes() -> Result<Vec<GoldenCheck>> {
    let mut out = Vec::new();

    let r = report(&spec_coords(4, [&[], &[], &[], &[1, 2, 3]], 0b0001))?;
    out.push(enumerator_check(
        "[120,7,60] enumerator",
        &r,
        dist(120, &[(0, 1), (60, 112), (64, 15)]),
    ));
    let flags = [
        r.griesmer_attaining,
        r.minimal_sufficient,
        r.self_orthogonal_sufficient,
        r.projective == Some(true),
    ];
    out.push(GoldenCheck {
        name: "[120,7,60] certificates",
        observed: json!({
            "parameters": params(&r),
            "griesmer_attaining": flags[0],
            "minimal": flags[1],
            "self_orthogonal": flags[2],
            "projective": flags[3],
        }),
        claim: expect(
            (r.n, r.k, r.d) == (120, 7, Some(60)) && flags.iter().all(|&f| f),
            || format!("parameters {} flags {flags:?}", params(&r)),
        ),
    });
    out.push(css_check("[120,7,60] CSS", &r, 120, 106));

    let r = report(&spec_coords(3, [&[], &[1], &[], &[]], 0b0011))?;
    out.push(enumerator_check(
        "[42,6,20] enumerator",
        &r,
        dist(42, &[(0, 1), (20, 21), (21, 32), (24, 7), (28, 3)]),
    ));
    out.push(GoldenCheck {
        name: "[42,6,20] parameters",
        observed: json!({
            "parameters": params(&r),
            "griesmer_distance_optimal": r.griesmer_distance_optimal,
            "minimal": r.minimal_sufficient,
        }),
        claim: expect(
            (r.n, r.k, r.d) == (42, 6, Some(20))
                && r.griesmer_distance_optimal
                && r.minimal_sufficient,
            || {
                format!(
                    "parameters {} optimal {}",
                    params(&r),
                    r.griesmer_distance_optimal
                )
            },
        ),
    });

    let r = report(&spec_coords(4, [&[1], &[], &[1], &[1, 2, 3, 4]], 0b0001))?;
    out.push(enumerator_check(
        "[448,9,224] enumerator",
        &r,
        dist(448, &[(0, 1), (224, 504), (256, 7)]),
    ));
    let flags = [
        r.griesmer_attaining,
        r.minimal_sufficient,
        r.self_orthogonal_sufficient,
    ];
    out.push(GoldenCheck {
        name: "[448,9,224] parameters",
        observed: json!({
            "parameters": params(&r),
            "griesmer_attaining": flags[0],
            "minimal": flags[1],
            "self_orthogonal": flags[2],
        }),
        claim: expect(
            (r.n, r.k, r.d) == (448, 9, Some(224)) && flags.iter().all(|&f| f),
            || format!("parameters {} flags {flags:?}", params(&r)),
        ),
    });
    out.push(css_check("[448,9,224] CSS", &r, 448, 430));
    Ok(out)
}

const FAMILY_ENGINES: Engines = Engines {
    closedform: true,
    charsum: true,
    bruteforce: false,
};

struct Row {
    label: Value,
    w: WeightDistribution,
    n: u64,
    k: u64,
    d: u64,
}

fn family_row(label: Value, spec: &DefiningSetSpec) -> Result<Row> {
    let w = cross_check(spec, FAMILY_ENGINES, DEFAULT_BUDGET)?.distribution;
    Ok(Row {
        label,
        n: w.length(),
        k: u64::from(w.dimension().expect("engines return full distributions")),
        d: w.min_distance().unwrap_or(0),
        w,
    })
}

/// Runs `stated` on each row and records `[label, n, k, d, weights]`.
fn family_check(
    name: &'static str,
    rows: Vec<Row>,
    stated: impl Fn(&Row) -> std::result::Result<(), String>,
) -> GoldenCheck {
    let observed = rows
        .iter()
        .map(|r| json!([r.label, r.n, r.k, r.d, r.w.weight_count()]))
        .collect();
    let claim = rows
        .iter()
        .try_for_each(|r| stated(r).map_err(|e| format!("{}: {e}", r.label)));
    GoldenCheck {
        name,
        observed: Value::Array(observed),
        claim,
    }
}

fn shape(r: &Row, n: u64, k: u64, d: u64, weights: usize) -> std::result::Result<(), String> {
    expect(
        (r.n, r.k, r.d, r.w.weight_count()) == (n, k, d, weights),
        || {
            format!(
                "[{}, {}, {}] with {} weights (expected [{n}, {k}, {d}] with {weights})",
                r.n,
                r.k,
                r.d,
                r.w.weight_count()
            )
        },
    )
}

fn closed_families() -> Result<Vec<GoldenCheck>> {
    let p = |e: usize| 1u64 << e;
    let mut out = Vec::new();

    // uv·Δ_W
    let mut rows = Vec::new();
    for m in 1..=4 {
        for w in 1..=m {
            rows.push(family_row(
                json!({"m": m, "W": w}),
                &spec(m, [0, 0, 0, w], 0),
            )?);
        }
    }
    out.push(family_check("one-weight uv-simplex family", rows, |r| {
        let w = r.label["W"].as_u64().expect("label") as usize;
        shape(r, p(w), w as u64, p(w - 1), 1)?;
        expect(
            w < 2 || crate::analyze::is_distance_optimal(r.n, r.k, r.d),
            || "not distance-optimal".into(),
        )
    }));

    // uv·Δ_W^c
    let mut rows = Vec::new();
    for m in 2..=4 {
        for w in 1..m {
            rows.push(family_row(
                json!({"m": m, "W": w}),
                &spec(m, [0, 0, 0, w], 0b1000),
            )?);
        }
    }
    out.push(family_check("two-weight uv-complement family", rows, |r| {
        let m = r.label["m"].as_u64().expect("label") as usize;
        let w = r.label["W"].as_u64().expect("label") as usize;
        shape(r, p(m) - p(w), m as u64, p(m - 1) - p(w - 1), 2)?;
        expect(is_griesmer_attaining(r.n, r.k, r.d), || {
            "does not attain the Griesmer bound".into()
        })
    }));

    // u·F₂^m + v·Δ_Y + uv·Δ_W^c, which is b₂Δ_Y + b₃F₂^m + b₄Δ_W^c in the trace basis
    let mut rows = Vec::new();
    for m in 1..=4 {
        for w in 0..m {
            for y in 0..=m {
                rows.push(family_row(
                    json!({"m": m, "Y": y, "W": w}),
                    &spec(m, [0, y, m, w], 0b1000),
                )?);
            }
        }
    }
    out.push(family_check("two-weight mixed family", rows, |r| {
        let m = r.label["m"].as_u64().expect("label") as usize;
        let y = r.label["Y"].as_u64().expect("label") as usize;
        let w = r.label["W"].as_u64().expect("label") as usize;
        let n = (p(m) - p(w)) * p(m + y);
        shape(r, n, (2 * m + y) as u64, n / 2, 2)?;
        expect(is_griesmer_attaining(r.n, r.k, r.d), || {
            "does not attain the Griesmer bound".into()
        })
    }));

    // one complement of size at most m − 2 plus three nonempty simplices, m = 4
    let m = 4;
    let mut rows = Vec::new();
    for x in 0..=m - 2 {
        for y in 1..=m {
            for z in 1..=m {
                for w in 1..=m {
                    let label = json!({"X": x, "Y": y, "Z": z, "W": w});
                    rows.push(family_row(label, &spec(m, [x, y, z, w], 0b0001))?);
                }
            }
        }
    }
    out.push(family_check("single-complement sweep at m=4", rows, |r| {
        expect(crate::analyze::is_distance_optimal(r.n, r.k, r.d), || {
            "not distance-optimal".into()
        })?;
        let wmax = r.w.max_weight().unwrap_or(0);
        expect(2 * r.d > wmax, || {
            format!("2·{} <= {wmax}, minimality condition fails", r.d)
        })?;
        expect(r.w.nonzero_weights().all(|x| x % 4 == 0), || {
            "a weight is not a multiple of 4".into()
        })
    }));
    Ok(out)
}

/// Computes every check.
pub fn run_checks() -> Result<Vec<GoldenCheck>> {
    let mut out = worked_codes()?;
    out.extend(closed_families()?);
    Ok(out)
}

/// The snapshot `--bless` writes: check name to observed value.
pub fn snapshot(checks: &[GoldenCheck]) -> Value {
    let map: Map<String, Value> = checks
        .iter()
        .map(|c| (c.name.to_string(), c.observed.clone()))
        .collect();
    Value::Object(map)
}

fn first_diff(path: &str, want: &Value, got: &Value) -> Option<String> {
    match (want, got) {
        (Value::Object(a), Value::Object(b)) => {
            for key in a.keys().chain(b.keys().filter(|k| !a.contains_key(*k))) {
                let sub = format!("{path}.{key}");
                match (a.get(key), b.get(key)) {
                    (Some(x), Some(y)) => {
                        if let Some(d) = first_diff(&sub, x, y) {
                            return Some(d);
                        }
                    }
                    (x, y) => return Some(format!("{sub}: golden {x:?}, computed {y:?}")),
                }
            }
            None
        }
        (Value::Array(a), Value::Array(b)) => {
            for (i, (x, y)) in a.iter().zip(b).enumerate() {
                if let Some(d) = first_diff(&format!("{path}[{i}]"), x, y) {
                    return Some(d);
                }
            }
            (a.len() != b.len()).then(|| {
                format!(
                    "{path}: golden has {} entries, computed {}",
                    a.len(),
                    b.len()
                )
            })
        }
        _ => (want != got).then(|| format!("{path}: golden {want}, computed {got}")),
    }
}

/// A check passes when its stated values hold and it matches `golden`.
pub fn compare(checks: &[GoldenCheck], golden: &Value) -> Vec<CheckOutcome> {
    checks
        .iter()
        .map(|c| {
            let detail = match (&c.claim, golden.get(c.name)) {
                (Err(e), _) => e.clone(),
                (Ok(()), None) => "missing from golden file".to_string(),
                (Ok(()), Some(g)) => first_diff(c.name, g, &c.observed).unwrap_or_default(),
            };
            CheckOutcome {
                name: c.name,
                passed: detail.is_empty(),
                detail,
            }
        })
        .collect()
}

/// Runs the suite against the compiled-in snapshot.
pub fn reproduce() -> Result<Vec<CheckOutcome>> {
    let golden: Value = serde_json::from_str(GOLDEN_JSON)?;
    Ok(compare(&run_checks()?, &golden))
}
