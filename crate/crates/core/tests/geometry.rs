use quadp3::geometry::*;
use quadp3::linescheme::{line_scheme_system, BracketRewriter};
use quadp3::multipoly::MPoly;
use quadp3::ncalg::QuadAlgebra;
use quadp3::pointscheme::{enumerate_points, projectively_equal};
use quadp3::scalars::{RatFunc, Rational, Ring};
use quadp3::towers::{int, Surd};

fn alphas() -> Vec<Rational> {
    vec![Rational::from_i64(3), Rational::from_i64(5)]
}

fn system() -> Vec<MPoly<RatFunc>> {
    line_scheme_system(&QuadAlgebra::a_alpha(), &BracketRewriter::new()).unwrap().polynomials()
}

fn e(k: usize) -> Vec<Surd> {
    (0..4).map(|j| int((j == k) as i64)).collect()
}

fn keep(p: &[Surd], idx: &[usize]) -> Vec<Surd> {
    (0..4).map(|j| if idx.contains(&j) { p[j].clone() } else { Surd::zero() }).collect()
}

fn pl(a: &[Surd], b: &[Surd]) -> Vec<Surd> {
    to_full(pluecker_of_line(&join(a, b).unwrap()).coords())
}

/// Lines through `p` built directly from coordinate joins: `e_k` with the
/// point whose k-th coordinate is cleared, plus, for points with all
/// coordinates nonzero, the two joins of complementary coordinate pairs.
fn hand_lines(p: &[Surd]) -> Vec<Vec<Surd>> {
    let mut out: Vec<Vec<Surd>> = (0..4)
        .map(|k| pl(&e(k), &keep(p, &(0..4).filter(|&j| j != k).collect::<Vec<_>>())))
        .collect();
    if p.iter().all(|c| !c.is_zero()) {
        out.push(pl(&keep(p, &[0, 2]), &keep(p, &[1, 3])));
        out.push(pl(&keep(p, &[0, 3]), &keep(p, &[1, 2])));
    }
    out
}

#[test]
fn intersections_match_table() {
    let found = pairwise_intersections(&components()).unwrap();
    assert_eq!(found.len(), 28);
    let report = compare_intersections(&found, &alphas()).unwrap();
    assert!(report.mismatches.is_empty(), "{:?}", report.mismatches);
    assert_eq!((report.nonempty_pairs, report.one_point_pairs, report.two_point_pairs), (14, 6, 8));
    assert_eq!(report.distinct_points, 20);
    assert!(report.passed);
}

#[test]
fn intersection_points_lie_on_both_components() {
    let comps = components();
    for x in pairwise_intersections(&comps).unwrap() {
        let c1 = comps.iter().find(|c| c.name == x.first).unwrap();
        let c2 = comps.iter().find(|c| c.name == x.second).unwrap();
        for p in &x.points {
            assert!(lies_on(c1, p).unwrap() && lies_on(c2, p).unwrap());
            assert!(pluecker_form(p).is_zero());
        }
    }
}

#[test]
fn incidence_counts_and_memberships() {
    let s = incidence_summary(&components(), &system(), &enumerate_points(), &alphas()).unwrap();
    assert!(s.passed);
    assert_eq!(s.infinite_points, ["e1", "e2", "e3", "e4"]);
    assert_eq!(s.six_line_points.len(), 8);
    assert_eq!(s.four_line_points.len(), 8);
}

#[test]
fn incident_lines_match_coordinate_joins() {
    let comps = components();
    let sys = system();
    for q in enumerate_points().iter().filter(|q| q.family > 0) {
        let r = lines_through_point(&comps, &sys, q, &alphas()).unwrap();
        let got: Vec<Vec<Surd>> = r.lines.iter().map(|l| to_full(&l.pluecker)).collect();
        let want = hand_lines(&q.coords);
        assert_eq!(got.len(), want.len(), "{}", q.label);
        for w in &want {
            assert!(got.iter().any(|g| projectively_equal(g, w)), "{}: missing line", q.label);
        }
    }
}

#[test]
fn components_kill_the_system() {
    let r = verify_components(&system(), &alphas(), 200_000).unwrap();
    let degrees: Vec<i64> = r.components.iter().map(|c| c.hilbert[0].degree).collect();
    assert_eq!(degrees, [4, 4, 3, 3, 1, 2, 1, 2]);
    assert_eq!(r.degree_sum, 20);
    for c in &r.components {
        assert!(c.passed(), "{}: {:?}", c.name, c.failures);
    }
    assert!(r.passed);
}

#[test]
fn jacobian_criteria() {
    let r = jacobian_checks(&alphas(), 4, 11, 200_000).unwrap();
    assert_eq!(r.j1_samples, 8);
    assert_eq!(r.j1_rank_two, 8);
    assert_eq!(r.j2_rank_at_eps2, 1);
    for flags in [&r.j1_nonsingular, &r.j2_unique_drop, &r.h_nonsingular, &r.w_nonsingular] {
        assert_eq!(flags, &[true, true]);
    }
    assert!(r.passed);
}

#[test]
fn birational_maps() {
    let r = birational_check().unwrap();
    assert!(r.chi_delta && r.delta_on_curve && r.delta_chi);
}

#[test]
fn normalizing_intersection_dims() {
    let found = pairwise_intersections(&components()).unwrap();
    let pts = intersection_points(&found);
    let r = ideal_dim_report(&QuadAlgebra::a_alpha(), &RatFunc::from_i64(-1), &RatFunc::from_i64(1), &pts).unwrap();
    assert_eq!(r.dims.len(), 20);
    assert!(r.dims.iter().all(|(_, d)| d.dim == 2));
    assert_eq!(r.span_checks, [true, true]);
}
