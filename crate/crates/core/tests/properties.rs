//! Property tests over randomly chosen constructed instances.

use proptest::prelude::*;
use z2tri::analyze::{apply_move, fundamental_report, pachner, MoveSpec};
use z2tri::build::lgraph::lgraph_fractions;
use z2tri::build::{fold_lst, lst, seifert_family, Family};
use z2tri::homology::homology_from_skeleton;
use z2tri::surface::canonical::{canonical_census, chi_formula};
use z2tri::surface::coord::euler_char;
use z2tri::z2::{basis_from_skeleton, Cocycle};
use z2tri::{canonical, compute_skeleton, isomorphic, orientability, Perm4, Triangulation};

fn instance() -> impl Strategy<Value = Triangulation> {
    let fracs = lgraph_fractions(7);
    let n = fracs.len();
    prop_oneof![
        (0..n, 0..3usize).prop_map(move |(i, w)| {
            let (p, q) = fracs[i];
            let (t, m) = lst(p, q).unwrap();
            fold_lst(&t, &m, m.boundary_weights()[w]).unwrap().0
        }),
        (0..3usize, 1..4u64, 1..4u64, 1..4u64).prop_map(|(f, k, m, n)| {
            let fam = [Family::M, Family::MPrime, Family::P][f];
            seifert_family(fam, k, m, n).unwrap().0
        }),
        (2..6u64).prop_map(|k| seifert_family(Family::Q, 2 * k, 0, 0).unwrap().0),
    ]
}

fn bounded_instance() -> impl Strategy<Value = Triangulation> {
    let fracs = lgraph_fractions(7);
    (0..fracs.len()).prop_map(move |i| lst(fracs[i].0, fracs[i].1).unwrap().0)
}

fn relabelled(tri: &Triangulation, seed: u64) -> Triangulation {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..tri.tet_count()).collect();
    order.shuffle(&mut rng);
    let perms: Vec<Perm4> = Perm4::all().collect();
    let relabel: Vec<Perm4> = (0..tri.tet_count()).map(|_| *perms.choose(&mut rng).unwrap()).collect();
    tri.relabel(&order, &relabel)
}

fn cocycle(tri: &Triangulation, mask: u64) -> Cocycle {
    let sk = compute_skeleton(tri);
    let mut phi = Cocycle::zero(sk.edges.len());
    for (j, b) in basis_from_skeleton(&sk).iter().enumerate() {
        if mask >> j & 1 == 1 {
            phi = phi.sum(b);
        }
    }
    phi
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_round_trip(tri in prop_oneof![instance(), bounded_instance()]) {
        let back = Triangulation::parse(&tri.to_text()).unwrap();
        prop_assert_eq!(&back, &tri);
        prop_assert_eq!(canonical(&back), canonical(&tri));
    }

    #[test]
    fn relabelling_preserves_everything(tri in instance(), seed in any::<u64>()) {
        let r = relabelled(&tri, seed);
        prop_assert!(r.validate().is_ok());
        prop_assert!(isomorphic(&r, &tri));
        prop_assert_eq!(canonical(&r), canonical(&tri));
        prop_assert_eq!(homology_from_skeleton(&compute_skeleton(&r)), homology_from_skeleton(&compute_skeleton(&tri)));
        prop_assert_eq!(orientability(&r), orientability(&tri));
        prop_assert_eq!(basis_from_skeleton(&compute_skeleton(&r)).len(), basis_from_skeleton(&compute_skeleton(&tri)).len());
    }

    #[test]
    fn identity_and_two_chi_methods(tri in instance(), mask in any::<u64>()) {
        let phi = cocycle(&tri, mask);
        let sk = compute_skeleton(&tri);
        prop_assert!(phi.is_cocycle(&sk));
        let (s, census) = canonical_census(&tri, &sk, &phi).unwrap();
        prop_assert_eq!(s.chi, chi_formula(&census).unwrap());
        prop_assert_eq!(s.chi, euler_char(&tri, &s.coord).unwrap());
        let r = fundamental_report(&tri, &sk, &phi, 0).unwrap();
        prop_assert_eq!(r.identity_lhs, r.identity_rhs);
    }

    #[test]
    fn two_three_is_inverted_by_three_two(tri in instance(), site in any::<prop::sample::Index>(), mask in any::<u64>()) {
        let sites: Vec<(usize, usize)> = (0..tri.tet_count())
            .flat_map(|t| (0..4).map(move |f| (t, f)))
            .filter(|&(t, f)| tri.gluing(t, f).is_some_and(|g| g.tet != t))
            .collect();
        prop_assume!(!sites.is_empty());
        let (t, f) = sites[site.index(sites.len())];
        let o = apply_move(&tri, MoveSpec::Move23 { tet: t, facet: f }).unwrap();
        let sk = compute_skeleton(&o.tri);
        prop_assert_eq!(homology_from_skeleton(&sk), homology_from_skeleton(&compute_skeleton(&tri)));
        let phi = cocycle(&tri, mask);
        let np = o.transfer(&tri, &phi).unwrap();
        prop_assert!(np.is_cocycle(&sk));
        // the canonical surface changes by an isotopy, so chi is kept
        let chi = |t: &Triangulation, p: &Cocycle| canonical_census(t, &compute_skeleton(t), p).unwrap().0.chi;
        prop_assert_eq!(chi(&o.tri, &np), chi(&tri, &phi));
        let back = pachner(&o.tri, MoveSpec::Move32 { edge: sk.edge_of[o.first_new][0] }).unwrap();
        prop_assert!(isomorphic(&back, &tri));
    }
}
