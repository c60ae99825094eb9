use std::collections::BTreeSet;

use z2tri::analyze::synthetic::{compression_wheel, find_colouring, octahedron, supportive_octahedron};
use z2tri::analyze::{
    apply_move, complexity_certificate, compression_pattern_scan, edge_embeddings, find_maximal_lsts,
    fundamental_report, low_degree_lint, lst_intersection_matrix, pachner, promote, BoundForm, KnownFamily,
    LowDegreeCase, MoveSpec, PatternKind, support_tori, TorusKind,
};
use z2tri::build::lgraph::LensClassification;
use z2tri::build::{enumerate_minimal_lens_families, fold_lst, lst, seifert_family, Family};
use z2tri::z2::{basis_from_skeleton, classify_with_skeleton, nonzero_classes, Cocycle, TetType};
use z2tri::homology::homology_from_skeleton;
use z2tri::{compute_skeleton, first_homology, isomorphic, Triangulation};

fn fold(p: u64, q: u64, w: u64) -> Triangulation {
    let (t, m) = lst(p, q).unwrap();
    fold_lst(&t, &m, w).unwrap().0
}

fn balanced_lens(n: u64) -> Triangulation {
    fold(1, 2 * n - 2, 2 * n - 2)
}

fn classes(tri: &Triangulation) -> Vec<Cocycle> {
    nonzero_classes(&basis_from_skeleton(&compute_skeleton(tri)))
}

fn family(f: Family, k: u64, m: u64, n: u64) -> Triangulation {
    seifert_family(f, k, m, n).unwrap().0
}

#[test]
fn lens_fold_has_two_tori_meeting_in_all_but_two() {
    for (p, q) in [(1, 4), (2, 5), (3, 7), (1, 6)] {
        for w in [p, q] {
            let tri = fold(p, q, w);
            let l = find_maximal_lsts(&tri);
            assert_eq!(l.len(), 2, "fold of lst({p},{q}) along {w}");
            let a: BTreeSet<_> = l[0].tetrahedra.iter().collect();
            let b: BTreeSet<_> = l[1].tetrahedra.iter().collect();
            assert_eq!(a.intersection(&b).count(), tri.tet_count() - 2);
            let m = lst_intersection_matrix(&l);
            assert!(m[0][1] > 1);
            assert_eq!(m[0][1], m[1][0]);
        }
    }
}

#[test]
fn lst_alone_is_its_own_maximal_torus() {
    let (t, _) = lst(1, 2).unwrap();
    let l = find_maximal_lsts(&t);
    assert_eq!(l.len(), 1);
    assert_eq!(l[0].tetrahedra, vec![0]);
    assert_eq!((l[0].p, l[0].q), (1, 2));
    assert_eq!(lst_intersection_matrix(&l), vec![vec![0]]);

    let (t, _) = lst(3, 5).unwrap();
    let l = find_maximal_lsts(&t);
    assert_eq!(l.len(), 1);
    assert_eq!(l[0].tetrahedra.len(), t.tet_count());
    assert_eq!((l[0].p, l[0].q), (3, 5));
}

#[test]
fn augmented_families_have_three_tori() {
    for f in [Family::M, Family::MPrime] {
        for (k, m, n) in [(1, 1, 1), (1, 2, 3), (3, 1, 2)] {
            let l = find_maximal_lsts(&family(f, k, m, n));
            assert_eq!(l.len(), 3, "{f} {k},{m},{n}");
            let mat = lst_intersection_matrix(&l);
            for (i, row) in mat.iter().enumerate() {
                assert_eq!(row[i], 0);
                assert!(row.iter().all(|&x| x <= 1), "{f}: {mat:?}");
            }
        }
    }
    let mut pq: Vec<(u64, u64)> = find_maximal_lsts(&family(Family::MPrime, 2, 1, 3)).iter().map(|l| (l.p, l.q)).collect();
    pq.sort_unstable();
    assert_eq!(pq, vec![(1, 3), (1, 5), (1, 7)]);
}

#[test]
fn lint_single_tetrahedron_l52() {
    let tri = fold(1, 2, 1);
    assert_eq!(tri.tet_count(), 1);
    assert_eq!(first_homology(&tri).unwrap().order(), Some(5));
    let r = low_degree_lint(&tri, &compute_skeleton(&tri)).unwrap();
    assert_eq!(r.degree_sum, 6);
    // both edges of the single tetrahedron have degree 3
    assert_eq!(r.edges.len(), 2);
    assert!(r.edges.iter().all(|e| e.degree == 3 && e.case == LowDegreeCase::Case3a));
}

#[test]
fn lint_balanced_lens_degree_three_edges_sit_in_t134() {
    for n in 4..=8 {
        let tri = balanced_lens(n);
        let sk = compute_skeleton(&tri);
        let phi = &classes(&tri)[0];
        let r = low_degree_lint(&tri, &sk).unwrap();
        let even_threes: Vec<_> = r.edges.iter().filter(|e| e.degree == 3 && !phi.is_odd(e.edge)).collect();
        assert!(!even_threes.is_empty());
        assert!(even_threes.iter().all(|e| e.case == LowDegreeCase::Case3c), "n={n}: {even_threes:?}");
    }
}

#[test]
fn lint_degree_one_edges() {
    for f in [Family::M, Family::MPrime] {
        for tri in [family(f, 1, 2, 1), family(f, 3, 1, 1)] {
            let r = low_degree_lint(&tri, &compute_skeleton(&tri)).unwrap();
            assert!(r.edges.iter().all(|e| e.degree > 1));
        }
    }
    for tri in [family(Family::P, 1, 0, 0), family(Family::Q, 6, 0, 0)] {
        let r = low_degree_lint(&tri, &compute_skeleton(&tri)).unwrap();
        assert!(r.edges.iter().all(|e| e.degree > 1));
    }
    // layered lens spaces have none; folding over the univalent edge leaves
    // it with degree one, which the lint reports unless the result is S3
    for (p, q) in z2tri::build::lgraph::lgraph_fractions(7) {
        let (t, m) = lst(p, q).unwrap();
        for w in m.boundary_weights() {
            let tri = fold_lst(&t, &m, w).unwrap().0;
            let r = low_degree_lint(&tri, &compute_skeleton(&tri)).unwrap();
            let ones: Vec<_> = r.edges.iter().filter(|e| e.degree == 1).collect();
            if w == p + q {
                assert_eq!(ones.len(), 1, "lst({p},{q})");
                let sphere = first_homology(&tri).unwrap().order() == Some(1);
                let expected = if sphere { LowDegreeCase::Sphere } else { LowDegreeCase::Unexplained };
                assert_eq!(ones[0].case, expected);
            } else {
                assert!(ones.is_empty(), "lst({p},{q}) fold {w}");
            }
        }
    }
}

#[test]
fn lint_rejects_bounded_input() {
    let (t, _) = lst(1, 3).unwrap();
    assert!(low_degree_lint(&t, &compute_skeleton(&t)).is_err());
}

#[test]
fn balanced_report_is_eq1_equality() {
    for n in 3..=7 {
        let tri = balanced_lens(n);
        let sk = compute_skeleton(&tri);
        let r = fundamental_report(&tri, &sk, &classes(&tri)[0], 0).unwrap();
        assert_eq!((r.eq1_lhs, r.eq1_rhs), (2, 2));
        assert!(r.eq1_holds && r.balanced);
        assert_eq!(r.census.n_t, 0);
        assert_eq!(r.g, 2 - r.chi);
    }
}

#[test]
fn k_phi_adds_eight_per_pattern() {
    let tri = balanced_lens(5);
    let sk = compute_skeleton(&tri);
    let phi = &classes(&tri)[0];
    let a = fundamental_report(&tri, &sk, phi, 0).unwrap();
    let b = fundamental_report(&tri, &sk, phi, 2).unwrap();
    assert_eq!(b.eq1_rhs - a.eq1_rhs, 16);
    assert_eq!(a.identity_lhs, b.identity_lhs);
}

#[test]
fn lens_family_with_one_degree_three_edge() {
    let items = enumerate_minimal_lens_families(9).unwrap();
    let odd: Vec<_> = items.iter().filter(|i| i.classification == LensClassification::E3OneE5One).collect();
    assert!(!odd.is_empty());
    for i in odd {
        assert_eq!(i.census.even_of_degree(3), 1);
        assert_eq!(i.census.even_of_degree(5), 1);
    }
}

#[test]
fn two_three_then_three_two_is_identity() {
    let tri = family(Family::M, 1, 1, 2);
    for t in 0..tri.tet_count() {
        for f in 0..4 {
            if tri.gluing(t, f).is_some_and(|g| g.tet == t) {
                continue;
            }
            let o = apply_move(&tri, MoveSpec::Move23 { tet: t, facet: f }).unwrap();
            let sk = compute_skeleton(&o.tri);
            let e = sk.edge_of[o.first_new][0];
            assert_eq!(sk.degree(e), 3);
            let back = pachner(&o.tri, MoveSpec::Move32 { edge: e }).unwrap();
            assert!(isomorphic(&back, &tri), "site ({t},{f})");
        }
    }
}

#[test]
fn moves_reject_bad_sites() {
    let tri = balanced_lens(4);
    let sk = compute_skeleton(&tri);
    let high = (0..sk.edges.len()).find(|&e| sk.degree(e) > 4).unwrap();
    assert!(pachner(&tri, MoveSpec::Move32 { edge: high }).is_err());
    assert!(pachner(&tri, MoveSpec::Move44 { edge: high, axis: 0 }).is_err());
    assert!(pachner(&tri, MoveSpec::Move44 { edge: 0, axis: 2 }).is_err());
    let (t, _) = lst(1, 3).unwrap();
    let (bt, bf) = t.boundary_facets()[0];
    assert!(pachner(&t, MoveSpec::Move23 { tet: bt, facet: bf }).is_err());
}

#[test]
fn cocycle_transfers_across_moves() {
    let tri = family(Family::MPrime, 1, 1, 1);
    let sk = compute_skeleton(&tri);
    for phi in classes(&tri) {
        let o = apply_move(&tri, MoveSpec::Move23 { tet: 0, facet: 2 }).unwrap();
        let np = o.transfer(&tri, &phi).unwrap();
        let nsk = compute_skeleton(&o.tri);
        assert!(np.is_cocycle(&nsk));
        for (old, new) in o.kept.iter().enumerate() {
            if let Some(new) = new {
                for a in 0..6 {
                    assert_eq!(phi.is_odd(sk.edge_of[old][a]), np.is_odd(nsk.edge_of[*new][a]));
                }
            }
        }
    }
}

#[test]
fn all_quad_octahedron_flips_to_four_dt() {
    let oct = octahedron();
    let sk = compute_skeleton(&oct);
    let axis = sk.edge_of[0][0];
    assert_eq!(edge_embeddings(&oct, &sk, axis).unwrap().len(), 4);
    let phi = find_colouring(&sk, |p| {
        !p.is_odd(axis) && classify_with_skeleton(&sk, p).is_ok_and(|t| t.iter().all(|x| x.is_dq()))
    })
    .expect("an all-Dq colouring");
    for a in 0..2 {
        let o = apply_move(&oct, MoveSpec::Move44 { edge: axis, axis: a }).unwrap();
        let np = o.transfer(&oct, &phi).unwrap();
        let types = classify_with_skeleton(&compute_skeleton(&o.tri), &np).unwrap();
        assert_eq!(types.len(), 4);
        assert!(types.iter().all(|t| matches!(t, TetType::Dt { .. })), "axis {a}: {types:?}");
    }
}

fn sorted_labels(types: &[TetType]) -> Vec<&'static str> {
    let mut l: Vec<_> = types.iter().map(|t| t.label()).collect();
    l.sort_unstable();
    l
}

#[test]
fn flip_on_dq_dt_d0_dt_removes_an_empty_tetrahedron() {
    let (tri, phi, e) = supportive_octahedron(["Dq", "Dt", "D0", "Dt"]).expect("fixture");
    let sk = compute_skeleton(&tri);
    let before = classify_with_skeleton(&sk, &phi).unwrap();
    let n0 = |t: &[TetType]| t.iter().filter(|x| **x == TetType::D0).count();
    let mut reduced = false;
    for axis in 0..2 {
        let o = apply_move(&tri, MoveSpec::Move44 { edge: e, axis }).unwrap();
        let np = o.transfer(&tri, &phi).unwrap();
        let after = classify_with_skeleton(&compute_skeleton(&o.tri), &np).unwrap();
        assert_eq!(sorted_labels(&after[o.first_new..]), ["Dq", "Dq", "Dt", "Dt"]);
        reduced |= n0(&after) + 1 == n0(&before);
    }
    assert!(reduced);
}

#[test]
fn promote_fixed_point_without_supportive_tori() {
    let mut seen = 0;
    for tri in [balanced_lens(5), family(Family::M, 1, 1, 1), family(Family::Q, 4, 0, 0)] {
        let sk = compute_skeleton(&tri);
        for phi in classes(&tri) {
            let types = classify_with_skeleton(&sk, &phi).unwrap();
            let mut lsts = find_maximal_lsts(&tri);
            lsts.iter_mut().for_each(|l| l.tag_with(&types));
            if support_tori(&sk, &phi, &lsts).iter().any(|s| s.kind == TorusKind::Supportive) {
                continue;
            }
            seen += 1;
            let out = promote(&tri, &phi).unwrap();
            assert!(out.log.is_empty());
            assert_eq!(out.tri, tri);
            assert_eq!(out.phi, phi);
        }
    }
    assert!(seen >= 2);
}

#[test]
fn promote_removes_supportive_tori_from_m111() {
    let tri = family(Family::M, 1, 1, 1);
    let phi = &classes(&tri)[0];
    let out = promote(&tri, phi).unwrap();
    assert!(!out.log.is_empty());
    let last = out.log.last().unwrap();
    assert_eq!(last.measure_after.1, 0);
    assert_eq!(out.tri.tet_count(), tri.tet_count());
    assert_eq!(first_homology(&out.tri).unwrap(), first_homology(&tri).unwrap());
    assert!(out.phi.is_cocycle(&compute_skeleton(&out.tri)));
}

#[test]
fn promote_flips_supportive_octahedra() {
    for pattern in [["Dq", "Dq", "Dt", "Dt"], ["Dq", "Dq", "Dq", "Dq"], ["Dq", "Dt", "D0", "Dt"]] {
        let Some((tri, phi, e)) = supportive_octahedron(pattern) else {
            panic!("no fixture for {pattern:?}");
        };
        let out = promote(&tri, &phi).unwrap();
        assert_eq!(out.log.len(), 1, "{pattern:?}: {:?}", out.unresolved);
        let flip = &out.log[0];
        assert_eq!(flip.edge, e);
        assert_eq!(flip.types_before, pattern);
        assert!(flip.measure_after < flip.measure_before);
        assert!(flip.measure_after.1 < flip.measure_before.1 || flip.measure_after.0 < flip.measure_before.0);
        let h = |t: &Triangulation| homology_from_skeleton(&compute_skeleton(t));
        assert_eq!(h(&out.tri), h(&tri));
    }
}

#[test]
fn compression_scan_empty_on_taut_families() {
    let mut tris = vec![family(Family::Q, 4, 0, 0), family(Family::Q, 8, 0, 0)];
    for f in [Family::M, Family::MPrime] {
        for (k, m, n) in [(1, 1, 1), (2, 1, 3), (3, 3, 3)] {
            tris.push(family(f, k, m, n));
        }
    }
    for tri in &tris {
        let sk = compute_skeleton(tri);
        for phi in classes(tri) {
            assert!(compression_pattern_scan(tri, &sk, &phi).unwrap().is_empty());
        }
    }
}

#[test]
fn compression_wheel_has_one_d6k3() {
    let (tri, phi, e) = compression_wheel().expect("wheel fixture");
    let sk = compute_skeleton(&tri);
    let p = compression_pattern_scan(&tri, &sk, &phi).unwrap();
    assert_eq!(p.len(), 1);
    assert_eq!(p[0].kind, PatternKind::D6k3);
    assert_eq!(p[0].edge, e);
    assert_eq!(p[0].tori.len(), 3);
    assert_eq!(p[0].curve.len(), 6);
}

#[test]
fn certificate_balanced_lens() {
    for n in 3..=6 {
        let c = complexity_certificate(&balanced_lens(n), Some(KnownFamily::BalancedLens)).unwrap();
        assert!(c.balanced);
        assert_eq!(c.z2_rank, 1);
        let b = c.bounds.iter().find(|b| b.form == BoundForm::OnePlusTwoNorm).unwrap();
        assert!(b.consistent && b.certified);
        assert_eq!(b.value, 2 * n as i64 - 3);
    }
}

#[test]
fn certificate_families() {
    let c = complexity_certificate(&family(Family::M, 1, 2, 2), Some(KnownFamily::M)).unwrap();
    assert_eq!(c.tet_count, 12);
    let b = c.bounds.iter().find(|b| b.form == BoundForm::TwoPlusTwoNorm).unwrap();
    assert!(b.consistent && b.certified);
    assert!(!c.bounds.iter().find(|b| b.form == BoundForm::OnePlusTwoNorm).unwrap().consistent);

    let c = complexity_certificate(&family(Family::MPrime, 2, 2, 1), Some(KnownFamily::MPrime)).unwrap();
    assert_eq!(c.z2_rank, 2);
    let sum: i64 = c.classes.iter().map(|x| x.norm_upper.unwrap()).sum();
    assert_eq!(c.tet_count as i64, 3 + sum);
    assert!(c.bounds.iter().any(|b| b.form == BoundForm::ThreePlusSum && b.certified));

    let c = complexity_certificate(&family(Family::Q, 6, 0, 0), Some(KnownFamily::Q)).unwrap();
    assert!(c.twisted_squares.iter().any(|s| s.kind == z2tri::surface::SquareKind::Klein));

    let (t, _) = lst(1, 2).unwrap();
    assert!(complexity_certificate(&t, None).is_err());
}
