use std::collections::BTreeMap;

use proptest::prelude::*;

use simplicode::analyze::{
    detect_family, family_sweep, is_distance_optimal, is_griesmer_attaining, minimality_report,
    projectivity_report, summary_conditions, wd_bruteforce, wd_charsum, wd_closedform, FaceScope,
    DEFAULT_BUDGET,
};
use simplicode::gf2::{macwilliams_prefix, walsh_hadamard_charsums};
use simplicode::simplicial::{
    char_sum, complex_size_inclusion_exclusion, count_psi_pattern, members, psi,
};
use simplicode::{
    build_code, build_defining_set, codeword, BinaryCode, BinaryMatrix, BitRow, BitVector,
    DefiningSetSpec, Face, SetSpec, WeightDistribution,
};

fn matrix(rows: usize, cols: usize, bits: &[bool]) -> BinaryMatrix {
    let rows = (0..rows)
        .map(|r| BitRow::from_bools(bits[r * cols..(r + 1) * cols].iter().copied()))
        .collect();
    BinaryMatrix::from_rows(cols, rows).unwrap()
}

prop_compose! {
    fn any_matrix(max_rows: usize, max_cols: usize)
        (rows in 1..=max_rows, cols in 1..=max_cols)
        (bits in prop::collection::vec(any::<bool>(), rows * cols), rows in Just(rows), cols in Just(cols))
        -> BinaryMatrix {
        matrix(rows, cols, &bits)
    }
}

prop_compose! {
    fn vector_set(max_m: usize)
        (m in 1..=max_m)
        (raw in prop::collection::btree_set(0u32..1 << m, 0..40), m in Just(m))
        -> (usize, Vec<BitVector>) {
        (m, raw.into_iter().map(|b| BitVector::new(b, m).unwrap()).collect())
    }
}

fn set_spec(m: usize, kind: u8, face: u32, raw: &[u32]) -> SetSpec {
    let face = Face::from_mask(face & ((1 << m) - 1));
    match kind % 5 {
        0 => SetSpec::simplex(m, face).unwrap(),
        1 => SetSpec::complement(m, face).unwrap(),
        2 => SetSpec::full(m).unwrap(),
        3 => SetSpec::zero(m).unwrap(),
        _ => {
            let vs: Vec<BitVector> = raw
                .iter()
                .map(|&b| BitVector::new(b & ((1 << m) - 1), m).unwrap())
                .collect();
            SetSpec::explicit(m, &vs).unwrap()
        }
    }
}

prop_compose! {
    fn any_set_spec(max_m: usize)
        (m in 1..=max_m)
        (kind in any::<u8>(), face in any::<u32>(), raw in prop::collection::vec(any::<u32>(), 0..20), m in Just(m))
        -> SetSpec {
        set_spec(m, kind, face, &raw)
    }
}

// a simplex/complement spec with each component chosen independently.
prop_compose! {
    fn face_spec(max_m: usize)
        (m in 1..=max_m)
        (faces in prop::array::uniform4(0u32..1 << m), mask in 0u8..16, m in Just(m))
        -> DefiningSetSpec {
        DefiningSetSpec::from_faces(m, faces.map(Face::from_mask), mask, false).unwrap()
    }
}

fn direct_distribution(g: &BinaryMatrix) -> WeightDistribution {
    let k = g.nrows();
    let mut w = WeightDistribution::new(g.ncols() as u64);
    for msg in 0u64..1 << k {
        let mut row = BitRow::zeros(g.ncols());
        for i in 0..k {
            if msg >> i & 1 == 1 {
                row.xor_assign(g.row(i));
            }
        }
        w.add(row.weight(), 1u32);
    }
    w
}

fn random_code(g: BinaryMatrix) -> (BinaryCode, WeightDistribution) {
    let r = g.rank();
    let (reduced, _) = g.row_reduce();
    let basis = BinaryMatrix::from_rows(g.ncols(), reduced.rows()[..r].to_vec()).unwrap();
    let w = direct_distribution(&basis);
    (BinaryCode::from_generator(basis), w)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn rank_equals_pivot_count(g in any_matrix(10, 24)) {
        let (reduced, pivots) = g.row_reduce();
        prop_assert_eq!(g.rank(), pivots.len());
        prop_assert_eq!(reduced.rank(), pivots.len());
        prop_assert!(pivots.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn walsh_hadamard_matches_direct_sums((m, set) in vector_set(10)) {
        let table = walsh_hadamard_charsums(&set, m).unwrap();
        for x in BitVector::all(m) {
            let direct: i64 = set.iter().map(|&t| if x.dot(t) == 0 { 1 } else { -1 }).sum();
            prop_assert_eq!(table[x.bits() as usize], direct);
        }
        let energy: i64 = table.iter().map(|v| v * v).sum();
        prop_assert_eq!(energy, (1i64 << m) * set.len() as i64);
    }

    #[test]
    fn macwilliams_matches_dual_enumeration(g in any_matrix(7, 14)) {
        let (code, w) = random_code(g);
        let n = code.n();
        let rows = code.generator().rows();
        let mut low = [0u32; 4];
        for v in 0u64..1 << n {
            let word = BitRow::from_bools((0..n).map(|i| v >> i & 1 == 1));
            if rows.iter().all(|r| r.dot(&word) == 0) && v.count_ones() <= 3 {
                low[v.count_ones() as usize] += 1;
            }
        }
        let dual = macwilliams_prefix(&w, code.k() as u32, 3).unwrap();
        for (j, count) in dual.iter().enumerate() {
            prop_assert_eq!(count.clone(), low[j].into());
        }
    }

    #[test]
    fn projectivity_methods_agree(g in any_matrix(6, 10)) {
        let (code, w) = random_code(g);
        prop_assert!(projectivity_report(&code, &w).is_ok());
    }

    #[test]
    fn char_sum_matches_members(s in any_set_spec(10)) {
        let ms = members(&s);
        prop_assert_eq!(ms.len() as u64, s.size());
        for x in BitVector::all(s.m()) {
            let direct: i64 = ms.iter().map(|&t| if x.dot(t) == 0 { 1 } else { -1 }).sum();
            prop_assert_eq!(char_sum(&s, x), direct);
        }
    }

    #[test]
    fn simplices_are_downward_closed(m in 1usize..=10, face in any::<u32>()) {
        let s = SetSpec::simplex(m, Face::from_mask(face & ((1 << m) - 1))).unwrap();
        for v in members(&s) {
            let mut sub = v.bits();
            loop {
                prop_assert!(s.contains(BitVector::new(sub, m).unwrap()));
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & v.bits();
            }
        }
    }

    #[test]
    fn psi_pattern_counts(m in 1usize..=6, x in any::<u32>(), w in any::<u32>(), a in 0u8..2, b in 0u8..2) {
        let mask = (1u32 << m) - 1;
        let (x, w) = (Face::from_mask(x & mask), Face::from_mask(w & mask));
        let direct = BitVector::all(m)
            .filter(|v| !v.is_zero() && psi(*v, x) == a && psi(*v, w) == b)
            .count() as u64;
        prop_assert_eq!(count_psi_pattern(m, x, w, (a, b)), direct);
    }

    #[test]
    fn inclusion_exclusion_matches_enumeration(m in 1usize..=10, raw in prop::collection::vec(any::<u32>(), 1..6)) {
        let mask = (1u32 << m) - 1;
        let mut masks: Vec<u32> = raw.iter().map(|&r| r & mask).collect();
        masks.sort_unstable();
        masks.dedup();
        let antichain: Vec<u32> = masks
            .iter()
            .copied()
            .filter(|&a| !masks.iter().any(|&b| b != a && a & !b == 0))
            .collect();
        let faces: Vec<Face> = antichain.into_iter().map(Face::from_mask).collect();
        let direct = (0u32..1 << m)
            .filter(|&v| faces.iter().any(|f| v & !f.mask() == 0))
            .count() as u64;
        prop_assert_eq!(complex_size_inclusion_exclusion(&faces).unwrap(), direct);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn generator_span_is_codeword_set(spec in face_spec(2)) {
        let ds = build_defining_set(&spec).unwrap();
        let code = build_code(&spec).unwrap();
        let m = spec.m();
        let mut from_tuples = BTreeMap::new();
        for t in 0u32..1 << (4 * m) {
            let x = [0, 1, 2, 3].map(|i| BitVector::new(t >> (i * m) & ((1 << m) - 1), m).unwrap());
            from_tuples.insert(codeword(&ds, x).to_string(), ());
        }
        let mut from_rows = BTreeMap::new();
        for msg in 0u64..1 << code.k() {
            from_rows.insert(code.encode(msg).to_string(), ());
        }
        prop_assert_eq!(from_tuples, from_rows);
    }

    #[test]
    fn sampled_codewords_lie_in_row_space(spec in face_spec(4), tuples in prop::collection::vec(any::<u32>(), 8)) {
        let ds = build_defining_set(&spec).unwrap();
        let code = build_code(&spec).unwrap();
        let m = spec.m();
        for t in tuples {
            let x = [0, 1, 2, 3].map(|i| BitVector::new(t >> (i * m) & ((1 << m) - 1), m).unwrap());
            let word = codeword(&ds, x);
            let mut rows = code.generator().rows().to_vec();
            rows.push(word);
            let extended = BinaryMatrix::from_rows(code.n(), rows).unwrap();
            prop_assert_eq!(extended.rank(), code.k());
        }
    }

    #[test]
    fn length_matches_closed_form(spec in face_spec(4)) {
        let n = build_defining_set(&spec).unwrap().len() as u64;
        prop_assert_eq!(n as u128, spec.size());
        if let Ok(w) = wd_closedform(&spec) {
            prop_assert_eq!(w.length(), n);
        }
    }

    #[test]
    fn engines_agree_on_random_faces(spec in face_spec(3)) {
        let charsum = wd_charsum(&spec).unwrap();
        let brute = wd_bruteforce(&build_code(&spec).unwrap(), DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(&charsum, &brute);
        if let Ok(closed) = wd_closedform(&spec) {
            prop_assert_eq!(&closed, &brute);
        }
    }

    #[test]
    fn charsum_tuple_counts_divide_evenly(spec in face_spec(3)) {
        // every count is a tuple count divided by 2^{4m−k}; scaling back recovers all 2^{4m} tuples
        let w = wd_charsum(&spec).unwrap();
        let k = w.dimension().unwrap();
        prop_assert_eq!(k as usize, build_code(&spec).unwrap().k());
        let kernel = num_bigint::BigUint::from(1u32) << (4 * spec.m() as u32 - k);
        prop_assert_eq!(w.total() * kernel, num_bigint::BigUint::from(1u32) << (4 * spec.m()));
    }

    #[test]
    fn family_certificates(spec in face_spec(3)) {
        let Ok(family) = detect_family(&spec) else { return Ok(()) };
        if !family.within_hypotheses {
            return Ok(());
        }
        let w = wd_charsum(&spec).unwrap();
        let Some(d) = w.min_distance() else { return Ok(()) };
        let (n, k) = (w.length(), u64::from(w.dimension().unwrap()));
        if family.part == 1 && family.total_size() >= 2 {
            prop_assert!(is_distance_optimal(n, k, d));
        }
        if family.part == 2 {
            prop_assert!(is_griesmer_attaining(n, k, d));
        }
        let conditions = summary_conditions(spec.m(), &family);
        if conditions.minimal {
            prop_assert!(minimality_report(&w, None).unwrap().sufficient);
        }
        if conditions.self_orthogonal {
            prop_assert!(w.nonzero_weights().all(|x| x % 4 == 0));
        }
    }
}

#[test]
fn whole_complement_attains_griesmer() {
    for m in 1..=2usize {
        for faces in (0..1u32 << (4 * m))
            .map(|t| [0, 1, 2, 3].map(|i| Face::from_mask(t >> (i * m) & ((1 << m) - 1))))
        {
            let spec = DefiningSetSpec::from_faces(m, faces, 0, true).unwrap();
            let Ok(w) = wd_closedform(&spec) else {
                continue;
            };
            let Some(d) = w.min_distance() else { continue };
            assert_eq!(w, wd_charsum(&spec).unwrap(), "{spec}");
            assert!(
                is_griesmer_attaining(w.length(), u64::from(w.dimension().unwrap()), d),
                "{spec}"
            );
        }
    }
}

#[test]
fn tables_hold_with_colliding_sizes() {
    for part in 3..=5u8 {
        for m in 1..=3usize {
            let sweep = family_sweep(part, m, FaceScope::All, true).unwrap();
            for case in sweep.cases.iter().filter(|c| !c.family.within_hypotheses) {
                let closed = wd_closedform(&case.spec).unwrap();
                assert_eq!(closed, wd_charsum(&case.spec).unwrap(), "{}", case.spec);
                if m <= 2 {
                    let code = build_code(&case.spec).unwrap();
                    assert_eq!(
                        closed,
                        wd_bruteforce(&code, DEFAULT_BUDGET).unwrap(),
                        "{}",
                        case.spec
                    );
                }
            }
        }
    }
}
