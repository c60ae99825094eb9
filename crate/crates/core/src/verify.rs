//! The acceptance checks, run over a grid of constructed instances.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::analyze::synthetic::{find_colouring, octahedron, supportive_octahedron};
use crate::analyze::{
    apply_move, find_maximal_lsts, fundamental_report, lst_intersection_matrix, low_degree_lint, pachner, KnownFamily,
    MoveSpec,
};
use crate::build::augmented::attachment_for_slope;
use crate::build::lgraph::lgraph_fractions;
use crate::build::{fold_lst, lst, seifert_family, Attachment, Family};
use crate::error::{Error, Result};
use crate::homology::{homology_from_skeleton, orientability};
use crate::isomorphism::isomorphic;
use crate::parallel;
use crate::skeleton::{compute_skeleton, Skeleton};
use crate::surface::canonical::{b_modification_with_skeleton, canonical_census, chi_formula};
use crate::surface::coord::surface_classify;
use crate::surface::formal::special_solutions;
use crate::surface::squares::{scan_with_skeleton, SquareKind};
use crate::triangulation::Triangulation;
use crate::z2::{basis_from_skeleton, classify_with_skeleton, nonzero_classes, Cocycle, TetType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    LstCounts,
    FoldHomology,
    OneTetFolds,
    Balanced,
    Chi,
    FamilyM,
    FamilyMprime,
    Quaternionic,
    Octagon,
    Formal,
    Moves,
    LstRecognition,
    Identity,
    Lint,
}

impl Criterion {
    pub const ALL: [Criterion; 14] = [
        Criterion::LstCounts,
        Criterion::FoldHomology,
        Criterion::OneTetFolds,
        Criterion::Balanced,
        Criterion::Chi,
        Criterion::FamilyM,
        Criterion::FamilyMprime,
        Criterion::Quaternionic,
        Criterion::Octagon,
        Criterion::Formal,
        Criterion::Moves,
        Criterion::LstRecognition,
        Criterion::Identity,
        Criterion::Lint,
    ];

    pub fn id(self) -> usize {
        self as usize + 1
    }

    pub fn name(self) -> &'static str {
        match self {
            Criterion::LstCounts => "lst-counts",
            Criterion::FoldHomology => "fold-homology",
            Criterion::OneTetFolds => "one-tet-folds",
            Criterion::Balanced => "balanced",
            Criterion::Chi => "chi",
            Criterion::FamilyM => "family-m",
            Criterion::FamilyMprime => "family-mprime",
            Criterion::Quaternionic => "quaternionic",
            Criterion::Octagon => "octagon",
            Criterion::Formal => "formal",
            Criterion::Moves => "moves",
            Criterion::LstRecognition => "lst-recognition",
            Criterion::Identity => "identity",
            Criterion::Lint => "lint",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Criterion {
    type Err = Error;
    fn from_str(s: &str) -> Result<Criterion> {
        Criterion::ALL
            .into_iter()
            .find(|c| c.name() == s || c.id().to_string() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown check {s:?}")))
    }
}

/// Parameter ranges of the verification grid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    /// L-graph depth for the solid torus counts.
    pub lst_depth: usize,
    /// L-graph depth for the lens space folds.
    pub lens_depth: usize,
    /// `k, m, n` range `1..=family_max` for M and M'; `k` range for P.
    pub family_max: u64,
    pub quaternionic: Vec<u64>,
    pub balanced: Vec<u64>,
    /// Most even edges for the exhaustive b-modification check.
    pub octagon_max_even: usize,
    pub move_sites: usize,
    pub random_cocycles: usize,
    pub seed: u64,
    /// Extra `.tri` files fed to the generic checks.
    #[serde(default)]
    pub files: Vec<PathBuf>,
}

impl Default for Grid {
    fn default() -> Grid {
        Grid {
            lst_depth: 12,
            lens_depth: 10,
            family_max: 3,
            quaternionic: vec![4, 6, 8, 10],
            balanced: (3..=12).collect(),
            octagon_max_even: 12,
            move_sites: 100,
            random_cocycles: 200,
            seed: 0x5eed,
            files: Vec::new(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub key: String,
    pub tri: Triangulation,
    pub family: Option<KnownFamily>,
    /// Seifert pairs of an augmented solid torus.
    pub slopes: Option<Vec<(i64, i64)>>,
    /// Lens folds: the weight of the fold edge relative to `(p, q)`.
    pub lens: Option<LensFold>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LensFold {
    pub p: u64,
    pub q: u64,
    pub weight: u64,
    pub order: u64,
}

/// Every instance used by the grid checks, sorted by key.
pub struct Universe {
    pub lens: Vec<Instance>,
    pub families: Vec<Instance>,
    pub files: Vec<Instance>,
    /// `path: line n: message` for every file that failed to load.
    pub input_errors: Vec<String>,
}

impl Universe {
    pub fn build(grid: &Grid) -> Result<Universe> {
        let fracs = lgraph_fractions(grid.lens_depth);
        let lens: Vec<Result<Vec<Instance>>> = parallel::map(&fracs, |&(p, q)| {
            let (t, m) = lst(p, q)?;
            m.boundary_weights()
                .iter()
                .map(|&w| {
                    let (f, rec) = fold_lst(&t, &m, w)?;
                    Ok(Instance {
                        key: format!("lens/{p}-{q}/fold-{w}"),
                        tri: f,
                        family: None,
                        slopes: None,
                        lens: Some(LensFold { p, q, weight: w, order: rec.lens.0 }),
                    })
                })
                .collect()
        });
        let mut lens: Vec<Instance> = lens.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().collect();
        lens.sort_by(|a, b| a.key.cmp(&b.key));

        let mut specs = Vec::new();
        for k in 1..=grid.family_max {
            for m in 1..=grid.family_max {
                for n in 1..=grid.family_max {
                    specs.push((Family::M, k, m, n));
                    specs.push((Family::MPrime, k, m, n));
                }
            }
            specs.push((Family::P, k, 0, 0));
        }
        for &k in &grid.quaternionic {
            specs.push((Family::Q, k, 0, 0));
        }
        let fams: Vec<Result<Instance>> = parallel::map(&specs, |&(fam, k, m, n)| {
            let (tri, params) = seifert_family(fam, k, m, n)?;
            let family = match fam {
                Family::M => KnownFamily::M,
                Family::MPrime => KnownFamily::MPrime,
                Family::P => KnownFamily::P,
                Family::Q => KnownFamily::Q,
            };
            let key = match fam {
                Family::M | Family::MPrime => format!("{}/{k},{m},{n}", if fam == Family::M { "M" } else { "Mprime" }),
                _ => format!("{fam}/{k:02}"),
            };
            let slopes = (fam != Family::Q).then(|| params.slopes.clone());
            Ok(Instance { key, tri, family: Some(family), slopes, lens: None })
        });
        let mut families = fams.into_iter().collect::<Result<Vec<_>>>()?;
        families.sort_by(|a, b| a.key.cmp(&b.key));

        let mut files = Vec::new();
        let mut input_errors = Vec::new();
        for path in &grid.files {
            let loaded = std::fs::read_to_string(path)
                .map_err(|e| format!("{}: {e}", path.display()))
                .and_then(|text| Triangulation::parse(&text).map_err(|e| format!("{}: {e}", path.display())));
            match loaded {
                Ok(tri) => files.push(Instance {
                    key: format!("file/{}", path.display()),
                    tri,
                    family: None,
                    slopes: None,
                    lens: None,
                }),
                Err(e) => input_errors.push(e),
            }
        }
        files.sort_by(|a, b| a.key.cmp(&b.key));
        Ok(Universe { lens, families, files, input_errors })
    }

    pub fn all(&self) -> impl Iterator<Item = &Instance> {
        self.families.iter().chain(&self.lens).chain(&self.files)
    }

    fn family(&self, f: KnownFamily) -> Vec<&Instance> {
        self.families.iter().filter(|i| i.family == Some(f)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: usize,
    pub criterion: Criterion,
    pub passed: bool,
    /// Number of individual comparisons made.
    pub checked: usize,
    pub failures: Vec<String>,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2} {:<16} {} checks",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.criterion.name(),
            self.checked
        )?;
        if let Some(first) = self.failures.first() {
            write!(f, "; {} failures, first: {first}", self.failures.len())?;
        }
        Ok(())
    }
}

/// Outcome of one comparison.
type Probe = std::result::Result<(), String>;

fn expect(ok: bool, msg: impl FnOnce() -> String) -> Probe {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn collect(items: Vec<Vec<Probe>>) -> (usize, Vec<String>) {
    let mut checked = 0;
    let mut failures = Vec::new();
    for p in items.into_iter().flatten() {
        checked += 1;
        if let Err(e) = p {
            failures.push(e);
        }
    }
    (checked, failures)
}

fn classes(sk: &Skeleton) -> Vec<Cocycle> {
    nonzero_classes(&basis_from_skeleton(sk))
}

fn lst_counts(grid: &Grid) -> (usize, Vec<String>) {
    let fracs = lgraph_fractions(grid.lst_depth);
    collect(parallel::map(&fracs, |&(p, q)| {
        let r = lst(p, q).map_err(|e| e.to_string()).and_then(|(t, _)| {
            let c = compute_skeleton(&t).counts();
            let d = t.tet_count();
            expect(c.vertices == 1 && c.edges == d + 2 && c.faces == 2 * d + 1, || {
                format!("lst({p},{q}): {d} tets, {} vertices, {} edges, {} faces", c.vertices, c.edges, c.faces)
            })
        });
        vec![r]
    }))
}

fn fold_homology(u: &Universe) -> (usize, Vec<String>) {
    collect(parallel::map(&u.lens, |i| {
        let lf = i.lens.expect("lens instance");
        let expected = if lf.weight == lf.p {
            2 * lf.q + lf.p
        } else if lf.weight == lf.q {
            2 * lf.p + lf.q
        } else {
            lf.p.abs_diff(lf.q)
        };
        let h = homology_from_skeleton(&compute_skeleton(&i.tri));
        vec![expect(h.order() == Some(expected) && lf.order == expected, || {
            format!("{}: |H1| = {:?}, expected {expected}", i.key, h.order())
        })]
    }))
}

fn one_tet_folds() -> (usize, Vec<String>) {
    let mut out = Vec::new();
    let (t, m) = lst(1, 2).expect("lst(1,2)");
    for (w, order) in [(1, 4 + 1), (2, 4), (3, 1)] {
        let r = fold_lst(&t, &m, w).map_err(|e| e.to_string()).and_then(|(f, _)| {
            let h = homology_from_skeleton(&compute_skeleton(&f));
            expect(f.tet_count() == 1 && h.order() == Some(order), || format!("fold {w}: |H1| = {:?}, expected {order}", h.order()))
        });
        out.push(r);
    }
    collect(vec![out])
}

fn balanced(grid: &Grid) -> (usize, Vec<String>) {
    collect(parallel::map(&grid.balanced, |&n| {
        let run = || -> std::result::Result<Vec<Probe>, String> {
            let (t, m) = lst(1, 2 * n - 2).map_err(|e| e.to_string())?;
            let (f, _) = fold_lst(&t, &m, 2 * n - 2).map_err(|e| e.to_string())?;
            let sk = compute_skeleton(&f);
            let cls = classes(&sk);
            let mut out = vec![expect(f.tet_count() as u64 == 2 * n - 3 && cls.len() == 1, || {
                format!("n={n}: {} tets, rank {}", f.tet_count(), cls.len())
            })];
            if let Some(phi) = cls.first() {
                let r = fundamental_report(&f, &sk, phi, 0).map_err(|e| e.to_string())?;
                let c = &r.census;
                out.push(expect(c.e_count as u64 == n - 1 && c.o_count as u64 == n - 1, || {
                    format!("n={n}: e={} o={}", c.e_count, c.o_count)
                }));
                out.push(expect(r.chi == 2 - n as i64, || format!("n={n}: chi {}", r.chi)));
                out.push(expect(
                    r.eq1_lhs == r.eq1_rhs && r.eq1_lhs == 2 && c.n_t == 0 && r.k_phi == 0 && r.balanced,
                    || format!("n={n}: e3={} rhs={} n_t={}", r.eq1_lhs, r.eq1_rhs, c.n_t),
                ));
            }
            Ok(out)
        };
        run().unwrap_or_else(|e| vec![Err(format!("n={n}: {e}"))])
    }))
}

fn chi_equality(u: &Universe) -> (usize, Vec<String>) {
    let all: Vec<&Instance> = u.all().collect();
    collect(parallel::map(&all, |i| {
        let sk = compute_skeleton(&i.tri);
        classes(&sk)
            .iter()
            .map(|phi| {
                let (s, census) = canonical_census(&i.tri, &sk, phi).map_err(|e| format!("{}: {e}", i.key))?;
                let f = chi_formula(&census).map_err(|e| format!("{}: {e}", i.key))?;
                expect(s.chi == f, || format!("{} class {}: discs {} formula {f}", i.key, phi.to_bit_string(), s.chi))
            })
            .collect()
    }))
}

/// Per class: (chi, orientable, connected, all tetrahedra Dq).
fn class_surfaces(tri: &Triangulation, sk: &Skeleton) -> std::result::Result<Vec<(i64, bool, bool, bool)>, String> {
    classes(sk)
        .iter()
        .map(|phi| {
            let (s, _) = canonical_census(tri, sk, phi).map_err(|e| e.to_string())?;
            let c = surface_classify(tri, &s.coord).map_err(|e| e.to_string())?;
            let types = classify_with_skeleton(sk, phi).map_err(|e| e.to_string())?;
            Ok((s.chi, c.orientable, c.connected, types.iter().all(|t| t.is_dq())))
        })
        .collect()
}

fn params(key: &str) -> Vec<i64> {
    key.split('/').nth(1).unwrap_or("").split(',').filter_map(|x| x.parse().ok()).collect()
}

fn family_m(u: &Universe) -> (usize, Vec<String>) {
    let inst = u.family(KnownFamily::M);
    collect(parallel::map(&inst, |i| {
        let s: i64 = params(&i.key).iter().sum();
        let sk = compute_skeleton(&i.tri);
        match class_surfaces(&i.tri, &sk) {
            Err(e) => vec![Err(format!("{}: {e}", i.key))],
            Ok(cs) => vec![
                expect(i.tri.tet_count() as i64 == 2 * (s + 1), || format!("{}: {} tets", i.key, i.tri.tet_count())),
                expect(cs.len() == 1, || format!("{}: rank {}", i.key, if cs.is_empty() { 0 } else { cs.len().ilog2() + 1 })),
                expect(cs.first().map(|c| c.0) == Some(-s), || format!("{}: chi {:?}", i.key, cs.first().map(|c| c.0))),
            ],
        }
    }))
}

fn family_mprime(u: &Universe) -> (usize, Vec<String>) {
    let inst = u.family(KnownFamily::MPrime);
    collect(parallel::map(&inst, |i| {
        let s: i64 = params(&i.key).iter().sum();
        let sk = compute_skeleton(&i.tri);
        match class_surfaces(&i.tri, &sk) {
            Err(e) => vec![Err(format!("{}: {e}", i.key))],
            Ok(cs) => {
                let sum: i64 = cs.iter().map(|c| -c.0).sum();
                let t = i.tri.tet_count() as i64;
                vec![
                    expect(t == 2 * s + 3, || format!("{}: {t} tets", i.key)),
                    expect(cs.len() == 3, || format!("{}: {} nonzero classes", i.key, cs.len())),
                    expect(sum == 2 * s && t == 3 + sum, || format!("{}: sum of -chi {sum}", i.key)),
                ]
            }
        }
    }))
}

fn quaternionic(u: &Universe) -> (usize, Vec<String>) {
    let inst = u.family(KnownFamily::Q);
    collect(parallel::map(&inst, |i| {
        let k = params(&i.key.replace("Q/", "x/")).first().copied().unwrap_or(0);
        let sk = compute_skeleton(&i.tri);
        let h = homology_from_skeleton(&sk);
        let mut out = vec![
            expect(i.tri.tet_count() as i64 == k, || format!("{}: {} tets", i.key, i.tri.tet_count())),
            expect(h.invariant_factors == [2, 2] && h.betti == 0, || format!("{}: H1 {:?}", i.key, h)),
        ];
        match class_surfaces(&i.tri, &sk) {
            Err(e) => out.push(Err(format!("{}: {e}", i.key))),
            Ok(cs) => {
                out.push(expect(cs.len() == 3 && cs.iter().all(|c| c.3), || format!("{}: not all Dq", i.key)));
                let klein = cs.iter().filter(|c| c.0 == 0 && !c.1 && c.2).count();
                out.push(expect(klein == 1, || format!("{}: {klein} Klein bottle classes", i.key)));
            }
        }
        let squares = scan_with_skeleton(&sk);
        out.push(expect(squares.iter().any(|s| s.kind == SquareKind::Klein), || format!("{}: no Klein square", i.key)));
        out
    }))
}

fn octagon(grid: &Grid, u: &Universe) -> (usize, Vec<String>) {
    let mut inst: Vec<(&Instance, bool)> = u
        .family(KnownFamily::Q)
        .into_iter()
        .filter(|i| i.tri.tet_count() <= 6)
        .map(|i| (i, true))
        .collect();
    inst.extend(u.lens.iter().map(|i| (i, false)));
    let max_even = grid.octagon_max_even;
    collect(parallel::map(&inst, |&(i, taut)| {
        let sk = compute_skeleton(&i.tri);
        let mut out = Vec::new();
        for phi in classes(&sk) {
            let Ok(types) = classify_with_skeleton(&sk, &phi) else { continue };
            let even = phi.even_edges();
            if !types.iter().all(|t| t.is_dq()) || even.len() > max_even {
                if taut {
                    out.push(Err(format!("{}: quaternionic instance outside the octagon check", i.key)));
                }
                continue;
            }
            let base = match canonical_census(&i.tri, &sk, &phi) {
                Ok((s, _)) => s.chi,
                Err(e) => {
                    out.push(Err(format!("{}: {e}", i.key)));
                    continue;
                }
            };
            for mask in 0u64..1 << even.len() {
                let b: Vec<usize> = even.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, &e)| e).collect();
                let r = b_modification_with_skeleton(&i.tri, &sk, &phi, &b).map_err(|e| format!("{} b={b:?}: {e}", i.key));
                out.push(r.and_then(|m| {
                    let formula = base - 2 * m.octagons + 2 * b.len() as i64;
                    expect(m.chi == formula, || format!("{} b={b:?}: chi {} formula {formula}", i.key, m.chi))?;
                    expect(!taut || m.octagons >= b.len() as i64, || {
                        format!("{} b={b:?}: {} octagons < {}", i.key, m.octagons, b.len())
                    })
                }));
            }
        }
        out
    }))
}

fn formal(u: &Universe) -> (usize, Vec<String>) {
    let all: Vec<&Instance> = u.all().collect();
    collect(parallel::map(&all, |i| {
        let s = special_solutions(&i.tri);
        let two = num_rational::Ratio::from_integer(2);
        let one = num_rational::Ratio::from_integer(1);
        let mut out: Vec<Probe> = s
            .edge
            .iter()
            .enumerate()
            .map(|(e, c)| expect(s.formal_chi(c) == two, || format!("{} edge {e}: {}", i.key, s.formal_chi(c))))
            .collect();
        out.extend(
            s.tetrahedral
                .iter()
                .enumerate()
                .map(|(t, c)| expect(s.formal_chi(c) == one, || format!("{} tet {t}: {}", i.key, s.formal_chi(c)))),
        );
        out
    }))
}

fn moves(grid: &Grid, u: &Universe) -> (usize, Vec<String>) {
    let mut out = Vec::new();
    let pool: Vec<&Instance> = u.all().filter(|i| i.tri.tet_count() >= 2).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(grid.seed);
    let mut sites = Vec::new();
    let mut attempts = 0;
    while sites.len() < grid.move_sites && attempts < 100 * grid.move_sites.max(1) {
        attempts += 1;
        let i = pool[rng.gen_range(0..pool.len())];
        let (t, f) = (rng.gen_range(0..i.tri.tet_count()), rng.gen_range(0..4));
        if i.tri.gluing(t, f).is_some_and(|g| g.tet != t) {
            sites.push((i, t, f));
        }
    }
    out.push(expect(sites.len() == grid.move_sites, || format!("only {} 2-3 sites found", sites.len())));
    out.extend(parallel::map(&sites, |&(i, t, f)| {
        let site = format!("{} 2-3 at ({t},{f})", i.key);
        let o = apply_move(&i.tri, MoveSpec::Move23 { tet: t, facet: f }).map_err(|e| format!("{site}: {e}"))?;
        let h0 = homology_from_skeleton(&compute_skeleton(&i.tri));
        let sk = compute_skeleton(&o.tri);
        expect(homology_from_skeleton(&sk) == h0 && orientability(&o.tri) == orientability(&i.tri), || {
            format!("{site}: homology or orientability changed")
        })?;
        expect(o.tri.tet_count() == i.tri.tet_count() + 1, || format!("{site}: tet count"))?;
        let back = pachner(&o.tri, MoveSpec::Move32 { edge: sk.edge_of[o.first_new][0] }).map_err(|e| format!("{site}: 3-2: {e}"))?;
        expect(isomorphic(&back, &i.tri), || format!("{site}: 3-2 does not invert"))
    }));

    // every legal 3-2 and 4-4 on the family instances
    out.extend(
        parallel::map(&u.families, |i| {
            let sk = compute_skeleton(&i.tri);
            let h0 = homology_from_skeleton(&sk);
            let mut r = Vec::new();
            for e in 0..sk.edges.len() {
                let mvs: Vec<MoveSpec> = match sk.degree(e) {
                    3 => vec![MoveSpec::Move32 { edge: e }],
                    4 => vec![MoveSpec::Move44 { edge: e, axis: 0 }, MoveSpec::Move44 { edge: e, axis: 1 }],
                    _ => continue,
                };
                for mv in mvs {
                    let Ok(t) = pachner(&i.tri, mv) else { continue };
                    let delta = if matches!(mv, MoveSpec::Move32 { .. }) { -1 } else { 0 };
                    r.push(expect(
                        homology_from_skeleton(&compute_skeleton(&t)) == h0
                            && t.tet_count() as i64 == i.tri.tet_count() as i64 + delta
                            && orientability(&t) == orientability(&i.tri),
                        || format!("{} {mv:?}: invariants changed", i.key),
                    ));
                }
            }
            r
        })
        .into_iter()
        .flatten(),
    );

    // octahedron flips
    let oct = octahedron();
    let sk = compute_skeleton(&oct);
    let axis_edge = sk.edge_of[0][0];
    let all_dq = find_colouring(&sk, |p| {
        !p.is_odd(axis_edge) && classify_with_skeleton(&sk, p).is_ok_and(|t| t.iter().all(|x| x.is_dq()))
    });
    match all_dq {
        None => out.push(Err("no all-Dq colouring of the octahedron".into())),
        Some(phi) => {
            for axis in 0..2 {
                out.push(
                    apply_move(&oct, MoveSpec::Move44 { edge: axis_edge, axis })
                        .and_then(|o| {
                            let np = o.transfer(&oct, &phi)?;
                            classify_with_skeleton(&compute_skeleton(&o.tri), &np)
                        })
                        .map_err(|e| e.to_string())
                        .and_then(|types| {
                            expect(types.iter().all(|t| matches!(t, TetType::Dt { .. })), || {
                                format!("all-Dq octahedron axis {axis}: {types:?}")
                            })
                        }),
                );
            }
        }
    }
    match supportive_octahedron(["Dq", "Dt", "D0", "Dt"]) {
        None => out.push(Err("no (Dq,Dt,D0,Dt) fixture".into())),
        Some((t, phi, e)) => {
            for axis in 0..2 {
                let r = apply_move(&t, MoveSpec::Move44 { edge: e, axis })
                    .and_then(|o| {
                        let np = o.transfer(&t, &phi)?;
                        let types = classify_with_skeleton(&compute_skeleton(&o.tri), &np)?;
                        let mut l: Vec<&str> = types[o.first_new..].iter().map(|x| x.label()).collect();
                        l.sort_unstable();
                        Ok(l)
                    })
                    .map_err(|e| e.to_string())
                    .and_then(|l| expect(l == ["Dq", "Dq", "Dt", "Dt"], || format!("(Dq,Dt,D0,Dt) axis {axis}: {l:?}")));
                out.push(r);
            }
        }
    }
    collect(vec![out])
}

fn expected_tori(slopes: &[(i64, i64)]) -> Option<Vec<(u64, u64)>> {
    let mut out = Vec::new();
    for (side, &s) in slopes.iter().enumerate() {
        match attachment_for_slope(side, s).ok()? {
            Attachment::Lst { weights, .. } => {
                let mut w = weights;
                w.sort_unstable();
                out.push((w[0], w[1]));
            }
            Attachment::Fold { .. } => {}
        }
    }
    out.sort_unstable();
    Some(out)
}

fn lst_recognition(u: &Universe) -> (usize, Vec<String>) {
    let lens: Vec<&Instance> = u
        .lens
        .iter()
        .filter(|i| i.tri.tet_count() >= 3 && i.lens.is_some_and(|l| l.weight == l.p || l.weight == l.q))
        .collect();
    let mut items: Vec<Vec<Probe>> = parallel::map(&lens, |i| {
        let l = find_maximal_lsts(&i.tri);
        let t = i.tri.tet_count();
        let mut out = vec![expect(l.len() == 2, || format!("{}: {} maximal tori", i.key, l.len()))];
        if l.len() == 2 {
            let a: std::collections::BTreeSet<usize> = l[0].tetrahedra.iter().copied().collect();
            let b: std::collections::BTreeSet<usize> = l[1].tetrahedra.iter().copied().collect();
            out.push(expect(a.intersection(&b).count() == t - 2 && a.union(&b).count() == t, || {
                format!("{}: tori {:?} {:?}", i.key, l[0].tetrahedra, l[1].tetrahedra)
            }));
            out.push(expect(lst_intersection_matrix(&l)[0][1] > 1, || format!("{}: tori share one edge", i.key)));
        }
        out
    });
    let fams: Vec<&Instance> = u
        .families
        .iter()
        .filter(|i| matches!(i.family, Some(KnownFamily::M | KnownFamily::MPrime)))
        .collect();
    items.extend(parallel::map(&fams, |i| {
        let l = find_maximal_lsts(&i.tri);
        let m = lst_intersection_matrix(&l);
        let mut found: Vec<(u64, u64)> = l.iter().map(|x| (x.p, x.q)).collect();
        found.sort_unstable();
        let expected = i.slopes.as_deref().and_then(expected_tori);
        vec![
            expect(l.len() == 3, || format!("{}: {} maximal tori", i.key, l.len())),
            expect(m.iter().flatten().all(|&x| x <= 1), || format!("{}: intersections {m:?}", i.key)),
            expect(expected.as_ref() == Some(&found), || format!("{}: tori {found:?}, attached {expected:?}", i.key)),
        ]
    }));
    collect(items)
}

fn identity(grid: &Grid, u: &Universe) -> (usize, Vec<String>) {
    let all: Vec<&Instance> = u.all().collect();
    let mut items = parallel::map(&all, |i| {
        let sk = compute_skeleton(&i.tri);
        classes(&sk)
            .iter()
            .map(|phi| {
                let r = fundamental_report(&i.tri, &sk, phi, 0).map_err(|e| format!("{}: {e}", i.key))?;
                expect(r.identity_lhs == r.identity_rhs, || format!("{}: {} vs {}", i.key, r.identity_lhs, r.identity_rhs))
            })
            .collect()
    });
    // random cocycle vectors: random combinations of a kernel basis
    let mut rng = ChaCha8Rng::seed_from_u64(grid.seed ^ 0x1d);
    let picks: Vec<(&Instance, u64)> = (0..grid.random_cocycles)
        .map(|_| (all[rng.gen_range(0..all.len())], rng.gen::<u64>()))
        .collect();
    items.push(parallel::map(&picks, |&(i, mask)| {
        let sk = compute_skeleton(&i.tri);
        let basis = basis_from_skeleton(&sk);
        let mut phi = Cocycle::zero(sk.edges.len());
        for (j, b) in basis.iter().enumerate() {
            if mask >> j & 1 == 1 {
                phi = phi.sum(b);
            }
        }
        let r = fundamental_report(&i.tri, &sk, &phi, 0).map_err(|e| format!("{} {}: {e}", i.key, phi.to_bit_string()))?;
        expect(r.identity_lhs == r.identity_rhs, || format!("{} {}: identity", i.key, phi.to_bit_string()))
    }));
    collect(items)
}

fn lint(u: &Universe) -> (usize, Vec<String>) {
    let all: Vec<&Instance> = u.all().collect();
    collect(parallel::map(&all, |i| {
        let sk = compute_skeleton(&i.tri);
        if sk.vertices.len() != 1 {
            return vec![];
        }
        vec![low_degree_lint(&i.tri, &sk).map_err(|e| format!("{}: {e}", i.key)).and_then(|r| {
            expect(r.degree_sum == 6 && r.edge_count == r.tet_count + 1, || {
                format!("{}: sum (6-i) E_i = {}, E = {}, T = {}", i.key, r.degree_sum, r.edge_count, r.tet_count)
            })
        })]
    }))
}

pub fn run_check(c: Criterion, grid: &Grid, u: &Universe) -> CheckResult {
    let (checked, mut failures) = match c {
        Criterion::LstCounts => lst_counts(grid),
        Criterion::FoldHomology => fold_homology(u),
        Criterion::OneTetFolds => one_tet_folds(),
        Criterion::Balanced => balanced(grid),
        Criterion::Chi => chi_equality(u),
        Criterion::FamilyM => family_m(u),
        Criterion::FamilyMprime => family_mprime(u),
        Criterion::Quaternionic => quaternionic(u),
        Criterion::Octagon => octagon(grid, u),
        Criterion::Formal => formal(u),
        Criterion::Moves => moves(grid, u),
        Criterion::LstRecognition => lst_recognition(u),
        Criterion::Identity => identity(grid, u),
        Criterion::Lint => lint(u),
    };
    failures.sort();
    CheckResult { id: c.id(), criterion: c, passed: failures.is_empty() && checked > 0, checked, failures }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub input_errors: Vec<String>,
    pub results: Vec<CheckResult>,
}

/// Run the selected checks (all when `only` is empty), in criterion order.
pub fn verify_suite(grid: &Grid, only: &[Criterion]) -> Result<VerifyReport> {
    let u = Universe::build(grid)?;
    let chosen: Vec<Criterion> = Criterion::ALL.into_iter().filter(|c| only.is_empty() || only.contains(c)).collect();
    let results: Vec<CheckResult> = chosen.into_iter().map(|c| run_check(c, grid, &u)).collect();
    let passed = u.input_errors.is_empty() && results.iter().all(|r| r.passed);
    Ok(VerifyReport { passed, input_errors: u.input_errors, results })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn criterion_names_and_numbers() {
        for c in Criterion::ALL {
            assert_eq!(c.name().parse::<Criterion>().unwrap(), c);
            assert_eq!(c.id().to_string().parse::<Criterion>().unwrap(), c);
        }
        assert!("15".parse::<Criterion>().is_err());
        assert_eq!(Criterion::Lint.id(), 14);
    }

    #[test]
    fn grid_json_round_trip() {
        let g = Grid::default();
        let text = serde_json::to_string(&g).unwrap();
        assert_eq!(serde_json::from_str::<Grid>(&text).unwrap(), g);
    }

    fn small() -> Grid {
        Grid {
            lst_depth: 5,
            lens_depth: 5,
            family_max: 1,
            quaternionic: vec![4],
            balanced: vec![3, 4],
            move_sites: 5,
            random_cocycles: 5,
            ..Grid::default()
        }
    }

    #[test]
    fn only_filters() {
        let r = verify_suite(&small(), &[Criterion::Formal, Criterion::Chi]).unwrap();
        let ids: Vec<usize> = r.results.iter().map(|x| x.id).collect();
        assert_eq!(ids, [5, 10]);
        assert!(r.passed);
    }

    #[test]
    fn instance_order_is_by_key() {
        let u = Universe::build(&small()).unwrap();
        assert!(u.lens.windows(2).all(|w| w[0].key < w[1].key));
        assert!(u.families.windows(2).all(|w| w[0].key < w[1].key));
    }

    #[test]
    fn missing_file_is_an_input_error() {
        let g = Grid { files: vec![PathBuf::from("/nonexistent/x.tri")], ..small() };
        let r = verify_suite(&g, &[Criterion::Lint]).unwrap();
        assert!(!r.passed);
        assert_eq!(r.input_errors.len(), 1);
        assert!(r.results[0].passed);
    }
}
