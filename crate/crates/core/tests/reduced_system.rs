use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sl2cohom::multiindex::enumerate_up_to;
use sl2cohom::reduced::{is_coboundary, is_coboundary_modulo, is_cocycle, system_rank, Family};
use sl2cohom::sweep::{nonresonant_weights, run_sweep, t_grid, Comparison, OraclePolicy, SweepConfig, VerifyReport};
use sl2cohom::{
    build_system, classify, cocycle_basis, cocycle_residual, dim_h2_closed_form, dim_h2_via_system, gamma,
    split_systems, CaseTag, MultiIndex, Polynomial, Rational, RationalMatrix, ReducedTwoCochain, Weights,
};

fn family_offset(f: Family) -> i64 {
    match f {
        Family::First => 1,
        Family::Second => 0,
        Family::Third => -1,
    }
}

/// Monomials `x^m Ω^α` of one family with `X_x` weight `weight`.
fn monomials(w: &Weights, alpha_max: u32, weight: i64) -> Vec<(Family, MultiIndex, usize)> {
    let k = w.delta_natural().expect("integral delta") as i64;
    let mut out = Vec::new();
    for alpha in enumerate_up_to(w.n(), alpha_max) {
        for family in [Family::First, Family::Second, Family::Third] {
            let m = weight - k + alpha.weight() as i64 - family_offset(family);
            if m >= 0 {
                out.push((family, alpha.clone(), m as usize));
            }
        }
    }
    out
}

/// A basis of reduced cocycles of one weight, `|α| ≤ alpha_max`.
fn cocycle_space(w: &Arc<Weights>, alpha_max: u32, weight: i64) -> Vec<ReducedTwoCochain> {
    let keys = monomials(w, alpha_max, weight);
    let unit = |(family, alpha, m): &(Family, MultiIndex, usize)| {
        let mut f = ReducedTwoCochain::zero(w.clone());
        f.add_term(*family, alpha.clone(), &Polynomial::monomial(Rational::one(), *m));
        f
    };
    let mut rows: HashMap<(MultiIndex, usize), usize> = HashMap::new();
    let mut columns = Vec::new();
    for key in &keys {
        let mut column = Vec::new();
        for (alpha, poly) in cocycle_residual(&unit(key)) {
            for (power, value) in poly.terms() {
                let next = rows.len();
                let r = *rows.entry((alpha.clone(), power)).or_insert(next);
                column.push((r, value.clone()));
            }
        }
        columns.push(column);
    }
    let mut matrix = RationalMatrix::zeros(rows.len().max(1), keys.len());
    for (j, column) in columns.iter().enumerate() {
        for (r, v) in column {
            matrix.set(*r, j, v.clone());
        }
    }
    matrix
        .kernel_basis()
        .into_iter()
        .map(|v| {
            let mut f = ReducedTwoCochain::zero(w.clone());
            for (key, c) in keys.iter().zip(v) {
                f.add_term(key.0, key.1.clone(), &Polynomial::monomial(c, key.2));
            }
            f
        })
        .collect()
}

#[test]
fn cocycles_normalize_to_the_top_indices() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let instances = [
        Weights::from_t_vector(&[0, 0], 1),
        Weights::from_t_vector(&[1, 0], 2),
        Weights::from_t_vector(&[1, 1], 2),
        Weights::from_t_vector(&[1], 2),
        Weights::with_delta(vec![Rational::one(), Rational::one()], Rational::from(2)),
    ];
    for w in instances {
        let k = w.delta_natural().unwrap() as usize;
        let w = Arc::new(w);
        for weight in -1..=1 {
            let space = cocycle_space(&w, k as u32 + 2, weight);
            for _ in 0..4 {
                let mut f = ReducedTwoCochain::zero(w.clone());
                for g in &space {
                    let c = Rational::from(rng.gen_range(-3i64..=3));
                    f.a.add_scaled(&g.a, &c);
                    f.b.add_scaled(&g.b, &c);
                    f.c.add_scaled(&g.c, &c);
                }
                assert!(is_cocycle(&f));
                let normal = |family: Family, alpha: &MultiIndex| match family {
                    Family::First => alpha.weight() as usize == k,
                    _ => alpha.weight() as usize + 1 == k,
                };
                assert!(is_coboundary_modulo(&f, k as u32 + 3, normal), "{w} weight {weight}");
            }
        }
    }
}

#[test]
fn nonresonant_systems_have_maximal_rank() {
    for n in 1..=4 {
        for k in 0..=5u64 {
            let w = nonresonant_weights(n, k);
            let sys = build_system(n, k, w.lambdas()).unwrap();
            assert_eq!(sys.rank() as u64, gamma(n as u64, k as i64 - 1), "n={n} k={k}");
        }
    }
}

#[test]
fn split_ranks_dominate_the_full_rank() {
    for k in 1..=4 {
        for t in t_grid(3, k) {
            let w = Weights::from_t_vector(&t, k);
            let sys = build_system(3, k, w.lambdas()).unwrap();
            let split = split_systems(&sys, t[0]).unwrap();
            assert!(split.s1.rank() + split.s2.rank() >= sys.rank(), "t={t:?}");
            assert_eq!(
                split.s1.row_labels.len() + split.s2.row_labels.len(),
                sys.row_labels.len()
            );
        }
    }
}

#[test]
fn two_argument_benchmark() {
    for k in 1..=5 {
        for t in t_grid(2, k) {
            let w = Weights::from_t_vector(&t, k);
            let expected = if t[0] + t[1] + 1 >= k { 4 } else { 1 };
            assert_eq!(dim_h2_via_system(&w).dim, Some(expected), "t={t:?} k={k}");
        }
    }
}

#[test]
fn basis_sizes_and_residuals() {
    let mut instances: Vec<Weights> = (1..=4)
        .flat_map(|n| (0..=5).map(move |k| nonresonant_weights(n, k)))
        .collect();
    for k in 1..=5 {
        instances.extend(t_grid(2, k).into_iter().map(|t| Weights::from_t_vector(&t, k)));
    }
    for w in instances {
        let basis = cocycle_basis(&w).unwrap();
        assert_eq!(Some(basis.len() as u64), dim_h2_via_system(&w).dim, "{w}");
        assert!(basis.iter().all(is_cocycle), "{w}");
    }
}

#[test]
fn third_family_representatives_are_not_coboundaries() {
    for k in 1..=3 {
        for t in t_grid(2, k) {
            let w = Weights::from_t_vector(&t, k);
            let ell = system_rank(&w, None).unwrap().ell as usize;
            let basis = cocycle_basis(&w).unwrap();
            for f in &basis[basis.len() - ell..] {
                assert!(!f.c.is_zero());
                assert!(!is_coboundary(f, k as u32 + 2), "{w}");
            }
        }
    }
}

fn grid_rows() -> Vec<sl2cohom::sweep::SweepRow> {
    let mut rows = Vec::new();
    for n in 1..=3 {
        rows.extend(
            run_sweep(&SweepConfig {
                n,
                k_max: 5,
                oracle: OraclePolicy::Never,
                ..Default::default()
            })
            .unwrap(),
        );
    }
    rows
}

#[test]
fn closed_form_mismatches_are_all_reported() {
    let rows = grid_rows();
    let report = VerifyReport::from_rows(rows.clone());
    let reported: Vec<&str> = report
        .discrepancies
        .iter()
        .filter(|d| d.comparison == Comparison::ClosedSystem)
        .map(|d| d.row.as_str())
        .collect();
    for row in &rows {
        let mismatch = row.dim_closed != Some(row.dim_system);
        assert_eq!(mismatch, reported.contains(&row.key().as_str()), "{}", row.key());
    }
    assert_eq!(report.exit_code(), 0);
}

#[test]
fn closed_form_on_generic_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let n = rng.gen_range(1..=3);
        let k = rng.gen_range(0..=5u64);
        let lambdas: Vec<Rational> = (0..n).map(|_| Rational::frac(rng.gen_range(1..=9), 3)).collect();
        let w = Weights::with_delta(lambdas, Rational::from(k));
        let tag = classify(&w);
        assert_eq!(tag, CaseTag::NonResonant { k });
        assert_eq!(dim_h2_closed_form(&tag, n), dim_h2_via_system(&w).dim);
    }
    for _ in 0..20 {
        let n = rng.gen_range(1..=3);
        let lambdas: Vec<Rational> = (0..n).map(|_| Rational::frac(rng.gen_range(-6..=6), 2)).collect();
        let delta = Rational::frac(rng.gen_range(-20..=20) * 2 + 1, 2) / Rational::from(rng.gen_range(1..=3i64));
        let w = Weights::with_delta(lambdas, delta);
        assert_eq!(classify(&w), CaseTag::NonIntegerDelta);
        assert_eq!(dim_h2_closed_form(&classify(&w), n), Some(0));
        assert_eq!(dim_h2_via_system(&w).dim, Some(0));
    }
}

#[test]
fn closed_form_never_drops_below_the_generic_value() {
    for row in grid_rows() {
        if let CaseTag::Singular { k, .. } = row.case {
            if let Some(v) = row.dim_closed {
                assert!(v >= gamma(row.n as u64 - 1, k as i64), "{}", row.key());
            }
        }
    }
}
