//! Acceptance gate: ten end-to-end checks covering the congruence solver,
//! the two limit-function catalogs, the six-way classification on randomized
//! expressions, group axioms and the inverse/backward formulas for distal
//! semigroups, the uniform return bound, the disk-rotation witness, and
//! cross-validation of every symbolic result against sampling oracles.
//!
//! Each check prints one `acceptance[NN] name: PASS/FAIL` line.

use cascade_core::ellis::truncated_period_lcm;
use cascade_core::{
    apply_inverse, apply_power, classify, compose, crt_solve, disk_period, distance,
    en_equals_ez, enumerate_points, equicontinuity_modulus, evaluate, inverse,
    is_abelian_truncated, is_wap, nonwap_witness, p_iterate_limit, parse_residue_list, period,
    pointwise_closure, truncated_semigroup, uniform_period_bound, AbelianOutcome, CascadeExpr,
    ClosureKind, CongruenceClassSpec, CrtOutcome, Dyadic, DiskPoint, EllisElement, EnEzOutcome,
    ParamFamily, Period, PieceSeq, PointId, ResidueSystem, Side, TableLabel, WapOutcome,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

/// Run one acceptance check, print its verdict line, and enforce its time
/// budget (generous enough for unoptimized builds).
fn criterion(id: u32, name: &str, budget: Duration, body: impl FnOnce() + std::panic::UnwindSafe) {
    let start = Instant::now();
    let result = std::panic::catch_unwind(body);
    let elapsed = start.elapsed();
    match result {
        Ok(()) => println!("acceptance[{id:02}] {name}: PASS ({elapsed:.2?})"),
        Err(cause) => {
            println!("acceptance[{id:02}] {name}: FAIL ({elapsed:.2?})");
            std::panic::resume_unwind(cause);
        }
    }
    assert!(elapsed <= budget, "{name} took {elapsed:.2?}, budget {budget:.2?}");
}

// ---------------------------------------------------------------------------
// deterministic random expressions
// ---------------------------------------------------------------------------

fn random_family(rng: &mut ChaCha8Rng) -> ParamFamily {
    match rng.gen_range(0u8..3) {
        0 => ParamFamily::Const(rng.gen_range(1..=5)),
        1 => ParamFamily::Linear(rng.gen_range(1..=2), rng.gen_range(1..=4)),
        _ => ParamFamily::Geometric(rng.gen_range(1..=2), rng.gen_range(2..=3)),
    }
}

/// Random expression over the full grammar; `with_aperiodic` admits the two
/// aperiodic generators as leaves.
fn random_expr(rng: &mut ChaCha8Rng, budget: u32, with_aperiodic: bool) -> CascadeExpr {
    let leaf = |rng: &mut ChaCha8Rng| {
        if with_aperiodic && rng.gen_range(0u8..5) >= 3 {
            if rng.gen() {
                CascadeExpr::Shift2
            } else {
                CascadeExpr::IShift
            }
        } else {
            CascadeExpr::Cycle(rng.gen_range(1..=6))
        }
    };
    if budget == 0 {
        return leaf(rng);
    }
    match rng.gen_range(0u8..8) {
        0 | 1 | 2 => leaf(rng),
        3 | 4 => CascadeExpr::sum(
            random_expr(rng, budget - 1, with_aperiodic),
            random_expr(rng, budget - 1, with_aperiodic),
        ),
        5 => CascadeExpr::cycle_of(random_expr(rng, budget - 1, with_aperiodic), rng.gen_range(2..=4)),
        _ => {
            let head =
                (0..rng.gen_range(0..=2)).map(|_| random_expr(rng, budget - 1, with_aperiodic));
            CascadeExpr::Tower(PieceSeq { head: head.collect(), tail: random_family(rng) })
        }
    }
}

/// Fifty deterministic all-periodic expressions kept small enough to check
/// exhaustively: truncated period lcm at depth 6 at most 60, at most 400
/// points at depth 8. Returned with their lcm.
fn distal_suite() -> Vec<(CascadeExpr, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0005);
    let mut out = Vec::new();
    while out.len() < 50 {
        let expr = random_expr(&mut rng, 2, false);
        let Ok(lcm) = truncated_period_lcm(&expr, 6) else { continue };
        if lcm > 60 {
            continue;
        }
        let Ok(points) = enumerate_points(&expr, 8) else { continue };
        if points.len() > 400 {
            continue;
        }
        out.push((expr, lcm));
    }
    out
}

/// Twenty residue classes modulo the lcm, as forward limit elements.
fn element_classes(rng: &mut ChaCha8Rng, lcm: u64) -> Vec<u64> {
    (0..20).map(|_| rng.gen_range(0..lcm)).collect()
}

fn forward_element(expr: &CascadeExpr, class: u64) -> EllisElement {
    let residues = ResidueSystem::truncated_for(expr, 6, class).expect("residue system fits");
    EllisElement::forward_limit(residues)
}

fn visible_periods(expr: &CascadeExpr) -> Vec<u64> {
    cascade_core::period_set(expr).expect("period spectrum").enumerate(6).into_iter().collect()
}

// ---------------------------------------------------------------------------
// the ten checks
// ---------------------------------------------------------------------------

#[test]
fn acceptance_01_congruence_incompatibility_certificate() {
    criterion(1, "congruence-incompatibility-certificate", Duration::from_secs(1), || {
        let system = parse_residue_list("4:3,16:9").expect("parses");
        let report = system.realizable().expect("finite check");
        assert!(!report.realizable);
        assert!(report.exact);
        assert_eq!(report.witness, None);
        assert!(report.detail.contains("3 mod 4"), "detail: {}", report.detail);
        assert!(report.detail.contains("9 mod 16"), "detail: {}", report.detail);
        match crt_solve(&[(4, 3), (16, 9)]).expect("solver runs") {
            CrtOutcome::Incompatible { a, b } => {
                assert_eq!(a, (4, 3));
                assert_eq!(b, (16, 9));
            }
            CrtOutcome::Solution { witness, modulus } => {
                panic!("expected incompatibility, got {witness} (mod {modulus})")
            }
        }
    });
}

#[test]
fn acceptance_02_shift_catalog_noncommutative() {
    criterion(2, "shift-catalog-noncommutative", Duration::from_secs(1), || {
        let expr = CascadeExpr::Shift2;
        let table = truncated_semigroup(&expr, 6, 4).expect("table fits");
        let fwd = table
            .elements
            .iter()
            .position(|e| matches!(&e.element, EllisElement::Limit { side: Side::Forward, .. }))
            .expect("forward limit in catalog");
        let bwd = table
            .elements
            .iter()
            .position(|e| matches!(&e.element, EllisElement::Limit { side: Side::Backward, .. }))
            .expect("backward limit in catalog");
        // composing in either order keeps the inner element: the two orders differ
        assert_eq!(table.table[fwd][bwd], Some(bwd));
        assert_eq!(table.table[bwd][fwd], Some(fwd));
        assert_ne!(table.table[fwd][bwd], table.table[bwd][fwd]);

        // both orders agree with brute-force composition of the sampled tables
        let closure = pointwise_closure(&expr, 6, 64, true).expect("closure runs");
        let map_of = |label: &TableLabel| {
            closure
                .tables
                .iter()
                .find(|t| t.label == *label)
                .unwrap_or_else(|| panic!("missing sampled table {label}"))
                .map
                .clone()
        };
        let fwd_map = map_of(&TableLabel::ForwardLimit { residue: 0, modulus: 1 });
        let bwd_map = map_of(&TableLabel::BackwardLimit { residue: 0, modulus: 1 });
        let fwd_el = &table.elements[fwd].element;
        let bwd_el = &table.elements[bwd].element;
        let fwd_bwd = compose(&expr, fwd_el, bwd_el).expect("compose");
        let bwd_fwd = compose(&expr, bwd_el, fwd_el).expect("compose");
        let mut somewhere_different = false;
        for x in enumerate_points(&expr, 6).expect("points") {
            let sampled_fb = fwd_map[&bwd_map[&x]].clone();
            let sampled_bf = bwd_map[&fwd_map[&x]].clone();
            assert_eq!(evaluate(&expr, &fwd_bwd, &x).expect("evaluate"), sampled_fb);
            assert_eq!(evaluate(&expr, &bwd_fwd, &x).expect("evaluate"), sampled_bf);
            somewhere_different |= sampled_fb != sampled_bf;
        }
        assert!(somewhere_different, "the two composition orders never differed");
    });
}

#[test]
fn acceptance_03_chain_catalog_commutative_wap() {
    criterion(3, "chain-catalog-commutative-wap", Duration::from_secs(1), || {
        let expr = CascadeExpr::IShift;
        let table = truncated_semigroup(&expr, 8, 3).expect("table fits");
        // powers f^-3..f^3 plus exactly one limit element
        assert_eq!(table.elements.len(), 8);
        let limits: Vec<_> =
            table.elements.iter().filter(|e| e.element.is_limit()).collect();
        assert_eq!(limits.len(), 1);
        // the limit element is the constant map onto the chain's limit point
        for x in enumerate_points(&expr, 8).expect("points") {
            assert_eq!(evaluate(&expr, &limits[0].element, &x).expect("evaluate"), PointId::Inf);
        }
        // every element continuous at this truncation, and the table commutes
        assert!(table.elements.iter().all(|e| e.continuous));
        assert!(matches!(is_wap(&expr, 8).expect("wap check"), WapOutcome::Wap { .. }));
        assert!(matches!(
            is_abelian_truncated(&expr, 8, 3).expect("commutativity check"),
            AbelianOutcome::Abelian { .. }
        ));
        // the chain's base point never returns to itself
        assert_eq!(period(&expr, &PointId::Seq(0)).expect("period"), Period::Aperiodic);
    });
}

#[test]
fn acceptance_04_six_equivalence_random_suite() {
    criterion(4, "six-equivalence-random-suite", Duration::from_secs(60), || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0004);
        let mut exprs: Vec<CascadeExpr> = Vec::new();
        // 120 all-periodic draws
        for _ in 0..120 {
            exprs.push(random_expr(&mut rng, 2, false));
        }
        // 80 guaranteed mixes: a small all-periodic part summed with an
        // aperiodic generator (either order)
        for i in 0..80 {
            let small = loop {
                let candidate = random_expr(&mut rng, 1, false);
                if enumerate_points(&candidate, 8).map(|p| p.len() <= 60).unwrap_or(false) {
                    break candidate;
                }
            };
            let generator =
                if i % 2 == 0 { CascadeExpr::Shift2 } else { CascadeExpr::IShift };
            exprs.push(if i % 4 < 2 {
                CascadeExpr::sum(small, generator)
            } else {
                CascadeExpr::sum(generator, small)
            });
        }
        // 20 nested aperiodic draws kept small
        let mut nested = 0;
        while nested < 20 {
            let candidate = random_expr(&mut rng, 1, true);
            if candidate.is_all_periodic() {
                continue;
            }
            if !enumerate_points(&candidate, 8).map(|p| p.len() <= 60).unwrap_or(false) {
                continue;
            }
            exprs.push(candidate);
            nested += 1;
        }
        assert!(exprs.len() >= 200);

        let mut negatives = 0;
        for expr in &exprs {
            let verdicts = classify(expr).expect("classification");
            let all = verdicts.all_periodic;
            // the six properties stand or fall together
            assert_eq!(verdicts.equicontinuous, all, "{expr}");
            assert_eq!(verdicts.distal, all, "{expr}");
            assert_eq!(verdicts.fp_homeo_exists, all, "{expr}");
            assert_eq!(verdicts.uniform_bound_exists, all, "{expr}");
            assert_eq!(verdicts.en_eq_ez, all, "{expr}");
            if all {
                assert!(verdicts.witnesses.is_none(), "{expr}");
                continue;
            }
            negatives += 1;
            let w = verdicts.witnesses.expect("negative verdicts carry witnesses");
            // the named point really never returns
            assert_eq!(period(expr, &w.aperiodic_point).expect("period"), Period::Aperiodic);
            // the named limit element really merges the named pair
            let (a, b) = &w.merged_pair;
            assert_ne!(a, b, "{expr}");
            assert_eq!(
                evaluate(expr, &w.noninjective_element, a).expect("evaluate"),
                w.merged_image,
                "{expr}"
            );
            assert_eq!(
                evaluate(expr, &w.noninjective_element, b).expect("evaluate"),
                w.merged_image,
                "{expr}"
            );
            // when the bounded search found a separation triple, re-check it
            if let Some((x, y, n)) = &w.equicont_failure {
                let eps = Dyadic::pow2_neg(1);
                assert!(distance(expr, x, y) < eps, "{expr}");
                let fx = apply_power(expr, x, *n as i64).expect("iterate");
                let fy = apply_power(expr, y, *n as i64).expect("iterate");
                assert!(distance(expr, &fx, &fy) >= eps, "{expr}");
            }
        }
        assert!(negatives >= 100, "only {negatives} aperiodic cases");

        // on the bare generators the bounded search must succeed
        for generator in [CascadeExpr::Shift2, CascadeExpr::IShift] {
            let verdicts = classify(&generator).expect("classification");
            assert!(verdicts.witnesses.expect("witnesses").equicont_failure.is_some());
        }
    });
}

#[test]
fn acceptance_05_residue_group_axioms() {
    criterion(5, "residue-group-axioms", Duration::from_secs(120), || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0055);
        for (expr, lcm) in distal_suite() {
            let points = enumerate_points(&expr, 6).expect("points");
            let periods = visible_periods(&expr);
            let identity = forward_element(&expr, 0);
            // the class-0 element acts as the identity map
            for x in &points {
                assert_eq!(&evaluate(&expr, &identity, x).expect("evaluate"), x, "{expr}");
            }

            let classes = element_classes(&mut rng, lcm);
            let elements: Vec<EllisElement> =
                classes.iter().map(|&r| forward_element(&expr, r)).collect();
            for (r, g) in classes.iter().zip(&elements) {
                // two-sided inverse: both orders are the identity pointwise
                let g_inv = inverse(&expr, g).expect("invertible in the distal case");
                let left = compose(&expr, &g_inv, g).expect("compose");
                let right = compose(&expr, g, &g_inv).expect("compose");
                for x in &points {
                    assert_eq!(&evaluate(&expr, &left, x).expect("evaluate"), x, "{expr}");
                    assert_eq!(&evaluate(&expr, &right, x).expect("evaluate"), x, "{expr}");
                }
                // composition adds residue classes coordinatewise
                for (s, h) in classes.iter().zip(&elements) {
                    let gh = compose(&expr, g, h).expect("compose");
                    for &n in &periods {
                        assert_eq!(
                            gh.residue_class(n),
                            Some((r + s) % n),
                            "{expr}: {g} . {h} mod {n}"
                        );
                    }
                }
            }

            // associativity on the truncated multiplication table
            let table = truncated_semigroup(&expr, 6, 4).expect("table fits");
            assert_eq!(table.closure, ClosureKind::Complete);
            let l = table.elements.len();
            let at = |i: usize, j: usize| table.table[i][j].expect("complete table");
            for i in 0..l {
                for j in 0..l {
                    for k in 0..l {
                        assert_eq!(at(at(i, j), k), at(i, at(j, k)), "{expr}");
                    }
                }
            }

            // the sampled closure realizes residue addition as table lookup
            let closure = pointwise_closure(&expr, 6, 8 * lcm, false).expect("closure runs");
            assert!(closure.undetermined.is_empty(), "{expr}");
            let sampled = |class: u64| {
                closure
                    .tables
                    .iter()
                    .find(|t| {
                        t.label == TableLabel::ForwardLimit { residue: class, modulus: lcm }
                            || t.label == TableLabel::Power(class as i64)
                    })
                    .map(|t| t.map.clone())
            };
            for pair in 0..6u64 {
                let r = classes[(pair as usize) % classes.len()];
                let s = classes[(pair as usize * 7 + 3) % classes.len()];
                let gh = compose(
                    &expr,
                    &forward_element(&expr, r),
                    &forward_element(&expr, s),
                )
                .expect("compose");
                let Some(map) = sampled((r + s) % lcm) else {
                    panic!("{expr}: sampled closure lacks class {} mod {lcm}", (r + s) % lcm)
                };
                for x in &points {
                    assert_eq!(&evaluate(&expr, &gh, x).expect("evaluate"), &map[x], "{expr}");
                }
            }
        }
    });
}

#[test]
fn acceptance_06_backward_inverse_formula() {
    criterion(6, "backward-inverse-formula", Duration::from_secs(60), || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0055); // same elements as the group suite
        for (expr, lcm) in distal_suite() {
            let points = enumerate_points(&expr, 6).expect("points");
            let periods = visible_periods(&expr);
            for r in element_classes(&mut rng, lcm) {
                let g = forward_element(&expr, r);
                let g_inv = inverse(&expr, &g).expect("invertible in the distal case");
                // the inverse is the backward limit with negated residues
                let EllisElement::Limit { side, residues } = &g_inv else {
                    panic!("{expr}: inverse of a limit element must be a limit element")
                };
                assert_eq!(*side, Side::Backward, "{expr}");
                for &n in &periods {
                    assert_eq!(g_inv.residue_class(n), Some((n - r % n) % n), "{expr}");
                }
                // sampling along the negated backward class reproduces it
                let spec = CongruenceClassSpec::Class {
                    residues: residues.explicit.iter().map(|(&n, &c)| (n, c)).collect(),
                    forward: false,
                };
                for x in points.iter().take(40) {
                    let outcome =
                        p_iterate_limit(&expr, x, &spec, 8 * lcm).expect("sampling runs");
                    assert_eq!(
                        outcome.value(),
                        Some(&evaluate(&expr, &g_inv, x).expect("evaluate")),
                        "{expr} at {x}"
                    );
                }
            }
        }
    });
}

#[test]
fn acceptance_07_one_sided_two_sided_comparison() {
    criterion(7, "one-sided-two-sided-comparison", Duration::from_secs(60), || {
        for (expr, _) in distal_suite() {
            let EnEzOutcome::Equal { witness } = en_equals_ez(&expr).expect("comparison") else {
                panic!("{expr}: all-periodic cascades have equal one- and two-sided semigroups")
            };
            // the witness lies in class n-1 for every visible period n
            for n in visible_periods(&expr) {
                assert_eq!(witness.residue_class(n), Some(n - 1), "{expr}");
            }
            let EllisElement::Limit { side, residues } = &witness else {
                panic!("{expr}: witness must be a limit element")
            };
            assert_eq!(*side, Side::Forward);
            assert!(residues.realizable().expect("finite check").realizable, "{expr}");
            // and it acts as the inverse map on every depth-6 point
            for x in enumerate_points(&expr, 6).expect("points") {
                assert_eq!(
                    evaluate(&expr, &witness, &x).expect("evaluate"),
                    apply_inverse(&expr, &x).expect("inverse map"),
                    "{expr}"
                );
            }
        }
        for generator in [CascadeExpr::Shift2, CascadeExpr::IShift] {
            let EnEzOutcome::NotEqual { witness_point } =
                en_equals_ez(&generator).expect("comparison")
            else {
                panic!("{generator}: semigroups must differ")
            };
            assert_eq!(period(&generator, &witness_point).expect("period"), Period::Aperiodic);
        }
    });
}

#[test]
fn acceptance_08_uniform_return_bound_sweep() {
    criterion(8, "uniform-return-bound-sweep", Duration::from_secs(60), || {
        let mut suite: Vec<CascadeExpr> =
            distal_suite().into_iter().map(|(expr, _)| expr).collect();
        for canon in ["tower(cycle(3))", "tower(cycle(2^n))", "sum(cycle(2),cycle(3))"] {
            suite.push(cascade_core::parse_cascade(canon).expect("canonical expression"));
        }
        let epsilons = [1, 2, 3, 4].map(Dyadic::pow2_neg);
        for (index, expr) in suite.iter().enumerate() {
            let deep_points = enumerate_points(expr, 8).expect("points");
            for eps in &epsilons {
                // every point comes back within eps after any multiple of l
                let l = uniform_period_bound(expr, eps).expect("bound exists") as i64;
                for x in &deep_points {
                    for n in 1..=64i64 {
                        let image = apply_power(expr, x, n * l).expect("iterate");
                        assert!(
                            distance(expr, x, &image) < *eps,
                            "{expr}: point {x} strayed at exponent {}",
                            n * l
                        );
                    }
                }
            }
            // the modulus keeps close pairs close under every iterate
            // (checked on the depth-6 truncation for the first 20 expressions
            // plus the three canonical ones, 64 iterates each)
            if index >= 20 && index < suite.len() - 3 {
                continue;
            }
            let points = enumerate_points(expr, 6).expect("points");
            for eps in &epsilons {
                let delta = equicontinuity_modulus(expr, eps).expect("modulus exists");
                for (i, x) in points.iter().enumerate() {
                    for y in &points[i + 1..] {
                        if distance(expr, x, y) > delta {
                            continue;
                        }
                        for n in 0..=64i64 {
                            let fx = apply_power(expr, x, n).expect("iterate");
                            let fy = apply_power(expr, y, n).expect("iterate");
                            assert!(distance(expr, &fx, &fy) < *eps, "{expr}: pair {x},{y} at {n}");
                        }
                    }
                }
            }
        }
    });
}

#[test]
fn acceptance_09_disk_rotation_witness() {
    criterion(9, "disk-rotation-witness", Duration::from_secs(1), || {
        let witness = nonwap_witness(3).expect("three rows");
        assert_eq!(witness.rows.len(), 3);
        for (row, m) in witness.rows.iter().zip([3i64, 5, 7]) {
            // the row point sits at radius (1 + 1/(2m))*pi, angle 0
            let expected = DiskPoint::from_parts(2 * m + 1, 2 * m, 0, 1).expect("point");
            assert_eq!(row.point, expected);
            assert_eq!(row.period, 4 * m as u64);
            assert_eq!(row.residue, (4 * m as u64, 2 * m as u64));
            // iterating along the class rotates it exactly halfway round
            let image = DiskPoint::from_parts(2 * m + 1, 2 * m, 1, 1).expect("point");
            assert_eq!(row.image, image);
        }
        // the limit function fixes the limit point of the rows
        let center = DiskPoint::from_parts(1, 1, 0, 1).expect("point");
        assert_eq!(witness.limit_point, center);
        assert_eq!(witness.limit_image, center);
        // and the innermost row circle has period 12 = 4*3
        assert_eq!(disk_period(&witness.rows[0].point), 12);
    });
}

#[test]
fn acceptance_10_closure_cardinality_cross_check() {
    criterion(10, "closure-cardinality-cross-check", Duration::from_secs(60), || {
        // brute-forced closure size equals the period lcm on finite spaces
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0010);
        let mut checked = 0;
        let canonical = cascade_core::parse_cascade("sum(cycle(2),cycle(3))").expect("parses");
        let lcm6 = truncated_period_lcm(&canonical, 0).expect("lcm");
        assert_eq!(lcm6, 6);
        let report = pointwise_closure(&canonical, 0, 8 * lcm6, false).expect("closure runs");
        assert_eq!(report.cardinality(), 6);
        while checked < 30 {
            let expr = random_expr(&mut rng, 2, false);
            if !expr.is_finite_space() {
                continue;
            }
            let Ok(lcm) = truncated_period_lcm(&expr, 0) else { continue };
            if lcm > 60 {
                continue;
            }
            let closure = pointwise_closure(&expr, 0, 8 * lcm, false).expect("closure runs");
            assert!(closure.invariant_truncation, "{expr}");
            assert!(closure.undetermined.is_empty(), "{expr}");
            assert_eq!(closure.cardinality() as u64, lcm, "{expr}");
            checked += 1;
        }

        // the congruence solver and the realizability check agree exactly:
        // exhaustively over all two-constraint systems with moduli <= 12 and
        // all three-constraint systems with moduli <= 6
        let mut systems: Vec<Vec<(u64, u64)>> = Vec::new();
        for n in 1..=12u64 {
            for r in 0..n {
                systems.push(vec![(n, r)]);
            }
        }
        for n1 in 1..=12u64 {
            for n2 in (n1 + 1)..=12 {
                for r1 in 0..n1 {
                    for r2 in 0..n2 {
                        systems.push(vec![(n1, r1), (n2, r2)]);
                    }
                }
            }
        }
        for n1 in 1..=6u64 {
            for n2 in (n1 + 1)..=6 {
                for n3 in (n2 + 1)..=6 {
                    for r1 in 0..n1 {
                        for r2 in 0..n2 {
                            for r3 in 0..n3 {
                                systems.push(vec![(n1, r1), (n2, r2), (n3, r3)]);
                            }
                        }
                    }
                }
            }
        }
        for pairs in &systems {
            let solved = crt_solve(pairs).expect("solver runs");
            let report =
                ResidueSystem::from_pairs(pairs).realizable().expect("finite check");
            match solved {
                CrtOutcome::Solution { witness, .. } => {
                    assert!(report.realizable, "{pairs:?}");
                    assert_eq!(report.witness, Some(witness), "{pairs:?}");
                    for (n, r) in pairs {
                        assert_eq!(witness % n, *r, "{pairs:?}");
                    }
                }
                CrtOutcome::Incompatible { .. } => {
                    assert!(!report.realizable, "{pairs:?}");
                }
            }
        }
    });
}
