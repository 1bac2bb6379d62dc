use super::*;
use crate::field::FieldContext;
use crate::graph::maximal_cliques;
use crate::graph::from_graph6;
use crate::reference::{halved_antipodal_johnson, johnson, rook_complement, rook_grid};
use crate::symplectic::build_cover;

fn cover(n: u32) -> Graph {
    let ctx = FieldContext::for_subfield_order(n).unwrap();
    build_cover(&ctx).unwrap().graph
}

fn petersen() -> Graph {
    johnson(5, 2).unwrap().complement()
}

#[test]
fn detection_on_the_corpus() {
    assert_eq!(
        detect_locally_grid(&cover(5)).unwrap(),
        GridDetection::Grid { m: 5, n: 5 }
    );
    assert_eq!(
        detect_locally_grid(&johnson(6, 3).unwrap()).unwrap(),
        GridDetection::Grid { m: 3, n: 3 }
    );
    assert_eq!(
        detect_locally_grid(&johnson(10, 5).unwrap()).unwrap(),
        GridDetection::Grid { m: 5, n: 5 }
    );
    assert_eq!(
        detect_locally_grid(&rook_complement(4)).unwrap(),
        GridDetection::Grid { m: 3, n: 3 }
    );
    assert_eq!(
        detect_locally_grid(&halved_antipodal_johnson(8, 4).unwrap()).unwrap(),
        GridDetection::Grid { m: 4, n: 4 }
    );
    assert_eq!(
        detect_locally_grid(&petersen()).unwrap(),
        GridDetection::Failure { witness: 0 }
    );
    // rook grids themselves are not locally grid (2K_{n-1} neighbourhoods)
    assert!(matches!(
        detect_locally_grid(&rook_grid(5, 5)).unwrap(),
        GridDetection::Failure { .. }
    ));
    let disconnected = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
    assert!(detect_locally_grid(&disconnected).is_err());
}

fn drop_one_edge(g: &Graph) -> Graph {
    let mut edges = g.edges();
    edges.pop();
    Graph::from_edges(g.n_vertices(), edges).unwrap()
}

#[test]
fn structural_census_on_reference_graphs() {
    let census = structural_census(&cover(5)).unwrap();
    assert_eq!(census.n, 5);
    assert_eq!(census.clique_count, 130);
    assert_eq!(census.triangle_count, 2600);
    assert!(census.violations.is_empty());

    let census = structural_census(&johnson(6, 3).unwrap()).unwrap();
    assert_eq!(census.clique_count, 30);
    assert!(census.violations.is_empty());

    let census = structural_census(&rook_complement(4)).unwrap();
    assert_eq!(census.clique_count, 24);
    assert!(census.violations.is_empty());
}

#[test]
fn structural_census_flags_corruption() {
    let corrupted = drop_one_edge(&cover(5));
    assert!(matches!(
        detect_locally_grid(&corrupted).unwrap(),
        GridDetection::Failure { .. }
    ));
    let census = structural_census(&corrupted).unwrap();
    assert!(!census.violations.is_empty());
    assert!(census
        .violations
        .iter()
        .any(|v| v.check == "locally-grid-detection"));
}

#[test]
fn grid_cliques_agree_with_generic_enumerator() {
    for (g, n) in [
        (johnson(6, 3).unwrap(), 3),
        (rook_complement(4), 3),
        (cover(5), 5),
    ] {
        let (grown, violations) = grid_cliques(&g, n);
        assert!(violations.is_empty());
        assert_eq!(grown, maximal_cliques(&g));
    }
}

#[test]
fn clique_distance_audit_on_corpus() {
    assert!(clique_distance_audit(&cover(5)).unwrap().is_empty());
    assert!(clique_distance_audit(&johnson(6, 3).unwrap())
        .unwrap()
        .is_empty());
    assert!(clique_distance_audit(&rook_complement(4))
        .unwrap()
        .is_empty());
    assert!(!clique_distance_audit(&drop_one_edge(&cover(5)))
        .unwrap()
        .is_empty());
}

#[test]
fn parameter_bounds_audit_on_corpus() {
    for g in [
        cover(5),
        johnson(6, 3).unwrap(),
        johnson(10, 5).unwrap(),
        rook_complement(4),
    ] {
        let violations = parameter_bounds_audit(&g).unwrap();
        assert!(violations.is_empty(), "{violations:?}");
    }
}

#[test]
fn k2_split_values() {
    // the 78-vertex cover: 50 distance-2 vertices, all with c₂ = 8
    let g = cover(5);
    let p = g.bfs_profile_with_mu(0, 5);
    assert_eq!(p.counts, vec![1, 25, 50, 2]);
    assert_eq!(p.k2_by_mu.as_ref().unwrap().get(&8), Some(&50));
    assert_eq!(p.ell, Some(10));

    // the 200-vertex cover: k₂ = 147, all c₂ = 12
    let g = cover(7);
    let p = g.bfs_profile_with_mu(0, 7);
    assert_eq!(p.k(2), 147);
    assert_eq!(p.k2_by_mu.as_ref().unwrap().get(&12), Some(&147));

    // complement of the 4×4 grid: k₂ = 6, c₂ ≡ 6
    let g = rook_complement(4);
    let p = g.bfs_profile_with_mu(0, 3);
    assert_eq!(p.counts, vec![1, 9, 6]);
    assert_eq!(p.k2_by_mu.as_ref().unwrap().get(&6), Some(&6));
}

#[test]
fn mu_clique_audit_on_corpus() {
    let audit = mu_clique_matching_audit(&cover(5)).unwrap();
    assert!(audit.violations.is_empty());
    assert!(!audit.reports.is_empty());
    for report in &audit.reports {
        assert_eq!(report.c2_sum % 4, 0);
        if report.clique_distance == 1 {
            // four distance-2 members, each contributing c₂ = 8
            assert_eq!(report.c2_sum, 32);
            assert!(!report.t.is_empty());
        } else {
            // five or six distance-2 members (the rest at distance 3)
            assert!(report.c2_sum == 40 || report.c2_sum == 48);
            assert!(report.t.is_empty());
        }
    }

    let audit = mu_clique_matching_audit(&johnson(6, 3).unwrap()).unwrap();
    assert!(audit.violations.is_empty());
    for report in &audit.reports {
        let members = report.c2_sum / 4; // all μ-graphs have order 4
        assert_eq!(report.c2_sum, 4 * members);
    }

    // locally 2×2 host is rejected
    assert!(matches!(
        mu_clique_matching_audit(&johnson(4, 2).unwrap()),
        Err(Error::Domain(_))
    ));
}

#[test]
fn parity_audit_on_corpus() {
    assert!(parity_audit(&cover(5)).unwrap().is_empty());
    assert!(parity_audit(&rook_complement(4)).unwrap().is_empty());
    assert!(matches!(
        parity_audit(&johnson(10, 5).unwrap()),
        Err(Error::HypothesisUnmet(_))
    ));
    // 410 vertices, every μ-graph a single 16-cycle
    assert!(parity_audit(&cover(9)).unwrap().is_empty());
}

#[test]
fn bounds_reference_values() {
    let b = order_diameter_bounds(5, Regime::AtLeastNMinus1).unwrap();
    assert_eq!((b.order_bound, b.diam_bound), (312, 8));
    assert_eq!(b.f_near_integer, Some(false));
    assert_eq!(b.log_sandwich_ok, Some(true));

    let b = order_diameter_bounds(3, Regime::AtLeast2NMinus2).unwrap();
    assert_eq!((b.order_bound, b.diam_bound), (20, 3));

    let b = order_diameter_bounds(7, Regime::AtLeast2NMinus2).unwrap();
    assert_eq!((b.order_bound, b.diam_bound), (200, 3));

    let b = order_diameter_bounds(5, Regime::Exactly2NMinus2).unwrap();
    assert_eq!((b.order_bound, b.diam_bound), (78, 3));

    // f(3) = ln 18 / (2 ln 2) ≈ 2.0849
    let b = order_diameter_bounds(3, Regime::AtLeastNMinus1).unwrap();
    assert_eq!(b.order_bound, 54);
    assert_eq!(b.diam_bound, 5);
    let f = b.f.unwrap();
    assert!(f.lo < 2.085 && f.hi > 2.084);
    assert!(f.width() < 1e-12 * f.hi.max(1.0));

    assert!(order_diameter_bounds(1, Regime::AtLeastNMinus1).is_err());
}

#[test]
fn diameter_exponent_never_integral_small_range() {
    for n in 2..=100 {
        let f = diameter_exponent(n).unwrap();
        assert!(!f.brackets_integer(), "f({n}) encloses an integer");
        assert!(f.width() < 1e-12 * f.hi.max(1.0));
    }
}

#[test]
fn five_by_five_branches() {
    let report = five_by_five_audit(&cover(5)).unwrap();
    assert_eq!(report.order, 78);
    assert!(report.mu_hypothesis);
    assert_eq!(report.branch, Some(FiveByFiveBranch::Order78));
    assert!(report.violations.is_empty());

    let report = five_by_five_audit(&johnson(10, 5).unwrap()).unwrap();
    assert_eq!(report.order, 252);
    assert_eq!(report.mu_min, 4);
    assert!(!report.mu_hypothesis);
    assert_eq!(report.branch, None);
    assert!(report.violations.is_empty());

    assert!(matches!(
        five_by_five_audit(&rook_complement(4)),
        Err(Error::Domain(_))
    ));
}

#[test]
fn pair_params_sum_to_degree() {
    let g = cover(5);
    let dist = g.distances_from(3);
    for y in 0..g.n_vertices() {
        let p = pair_params(&g, &dist, y);
        assert_eq!(p.a + p.b + p.c, g.degree(y));
    }
}

#[test]
fn violation_serializes_with_check_id() {
    let v = Violation::new("some-check", vec![1, 2], "context".into());
    let json = serde_json::to_string(&v).unwrap();
    assert!(json.contains("\"check\":\"some-check\""));
}

#[test]
fn graph6_import_passes_audits() {
    // round-trip the 78-vertex cover through graph6 and re-audit
    let g = cover(5);
    let back = from_graph6(&crate::graph::to_graph6(&g)).unwrap();
    assert_eq!(
        detect_locally_grid(&back).unwrap(),
        GridDetection::Grid { m: 5, n: 5 }
    );
}
