//! Orbit classification against a geometric brute-force oracle: face
//! correspondences and symmetries are read off from where known plane maps
//! send face interiors, then every permutation of S_4 is tried.

use std::f64::consts::PI;

use symcurve_core::forms::Affine;
use symcurve_core::moduli::{orbit_decision, symplectically_equivalent, Verdict};
use symcurve_core::perm::all_perms;
use symcurve_core::shapes::{radial_distortion, trefoil};
use symcurve_core::{
    analyze, face_areas, AnalysisOptions, AreaVector, Arrangement, ClosedCurve, Perm, Point,
};

fn arrangement(c: ClosedCurve) -> Arrangement {
    analyze(c, &AnalysisOptions::default())
        .unwrap()
        .structure
        .unwrap()
        .arrangement
}

fn face_at(arr: &Arrangement, p: Point) -> usize {
    (0..arr.bounded_face_count())
        .find(|&j| arr.face_contains(j, p))
        .expect("point in a bounded face")
}

/// `j -> face of b containing m(rep_j of a)`.
fn induced(a: &Arrangement, b: &Arrangement, m: impl Fn(Point) -> Point) -> Perm {
    let images = (0..a.bounded_face_count())
        .map(|j| face_at(b, m(a.faces()[j].representative)))
        .collect();
    Perm::new(images).unwrap()
}

fn rotate(k: usize) -> impl Fn(Point) -> Point {
    let r = Affine::rotation(2.0 * PI * k as f64 / 3.0);
    move |p| r.apply(p)
}

fn distortion(phase: f64) -> impl Fn(f64) -> f64 {
    move |th| 0.15 * (th - phase).cos()
}

fn warp(g: impl Fn(f64) -> f64) -> impl Fn(Point) -> Point {
    move |p: Point| {
        let k = 1.0 + g(p.y.atan2(p.x));
        Point::new(p.x * k, p.y * k)
    }
}

struct Oracle {
    /// Geometric symmetry group of `a` on its face labels.
    group: Vec<Perm>,
}

impl Oracle {
    fn for_distorted_trefoil(t: &Arrangement, a: &Arrangement, phase: f64) -> Self {
        let phi = induced(t, a, warp(distortion(phase)));
        let group = (0..3)
            .map(|k| {
                let s = induced(t, t, rotate(k));
                phi.compose(&s).compose(&phi.inverse())
            })
            .collect();
        Self { group }
    }

    /// Equivalent iff some `σ ∈ S_4` lying in `corr ∘ G` matches areas.
    fn decide(
        &self,
        corr: &Perm,
        a: &AreaVector,
        b: &AreaVector,
        tol: f64,
    ) -> (Verdict, Vec<Perm>) {
        let coset: Vec<Perm> = self.group.iter().map(|g| corr.compose(g)).collect();
        let thr = tol * a.max().max(b.max());
        let hits: Vec<Perm> = all_perms(4)
            .into_iter()
            .filter(|s| coset.contains(s))
            .filter(|s| (0..4).all(|j| (a[j] - b[s.apply(j)]).abs() <= thr))
            .collect();
        let v = if hits.is_empty() {
            Verdict::Inequivalent
        } else {
            Verdict::Equivalent
        };
        (v, hits)
    }
}

#[test]
fn geometric_and_combinatorial_groups_agree() {
    let t = arrangement(trefoil(512).unwrap());
    let g = symcurve_core::symmetry_group(&t);
    let mut geo: Vec<Perm> = (0..3).map(|k| induced(&t, &t, rotate(k))).collect();
    let mut comb: Vec<Perm> = g.face_perms().cloned().collect();
    geo.sort_by_key(|p| p.images().to_vec());
    comb.sort_by_key(|p| p.images().to_vec());
    assert_eq!(geo, comb);
}

#[test]
fn rotations_and_reflected_distortions_match_the_oracle() {
    let t_curve = trefoil(1024).unwrap();
    let t = arrangement(t_curve.clone());
    let phase = 0.3;
    let a_curve = radial_distortion(&t_curve, distortion(phase)).unwrap();
    let a = arrangement(a_curve.clone());
    let oracle = Oracle::for_distorted_trefoil(&t, &a, phase);
    let areas_a = face_areas(&a).unwrap();

    let mut cases = Vec::new();
    for k in 0..3 {
        let b = arrangement(a_curve.map_points(rotate(k)).unwrap());
        let corr = induced(&a, &b, rotate(k));
        cases.push((format!("rotation {k}"), b, corr));
    }
    // Mirror the distortion across the y axis, which carries the trefoil
    // image to itself: two petals trade areas.
    let mirrored = PI - phase;
    let c = arrangement(radial_distortion(&t_curve, distortion(mirrored)).unwrap());
    let unwarp = |q: Point| {
        let k = 1.0 + distortion(phase)(q.y.atan2(q.x));
        Point::new(q.x / k, q.y / k)
    };
    let corr = induced(&t, &c, warp(distortion(mirrored))).compose(&induced(&a, &t, unwarp));
    cases.push(("mirrored distortion".to_string(), c, corr));

    for (name, b, corr) in &cases {
        let areas_b = face_areas(b).unwrap();
        let (expected, hits) = oracle.decide(corr, &areas_a, &areas_b, 1e-3);
        let d = symplectically_equivalent(&a, b, 1e-3).unwrap();
        assert_eq!(d.verdict, expected, "{name}");
        assert_eq!(
            expected == Verdict::Equivalent,
            name.starts_with("rotation"),
            "{name}"
        );
        if expected == Verdict::Equivalent {
            let w = d.witness.unwrap();
            assert!(
                hits.contains(&w.correspondence),
                "{name}: {}",
                w.correspondence
            );
        }
    }
}

#[test]
fn every_relabelling_of_distinct_areas() {
    let t = arrangement(trefoil(512).unwrap());
    let group = symcurve_core::symmetry_group(&t);
    let oracle = Oracle {
        group: group.face_perms().cloned().collect(),
    };
    let a = AreaVector::new(vec![1.0, 2.0, 3.0, 5.0]).unwrap();
    for s in all_perms(4) {
        // b[s(j)] = a[j]
        let mut b = vec![0.0; 4];
        for j in 0..4 {
            b[s.apply(j)] = a[j];
        }
        let b = AreaVector::new(b).unwrap();
        let id = Perm::identity(4);
        let d = orbit_decision(&group, &id, &a, &b, 1e-3).unwrap();
        let (expected, _) = oracle.decide(&id, &a, &b, 1e-3);
        assert_eq!(d.verdict, expected, "{s}");
        assert_eq!(
            d.verdict == Verdict::Equivalent,
            group.contains_face_perm(&s),
            "{s}"
        );
        if d.verdict == Verdict::Equivalent {
            assert_eq!(d.witness.unwrap().group_element, s);
        }
    }
}

#[test]
fn rotated_symmetric_trefoil_is_witnessed_by_a_three_cycle() {
    let c = trefoil(512).unwrap();
    let a = arrangement(c.clone());
    for k in 1..3 {
        let b = arrangement(c.map_points(rotate(k)).unwrap());
        let d = symplectically_equivalent(&a, &b, 1e-3).unwrap();
        assert_eq!(d.verdict, Verdict::Equivalent);
        let w = d.witness.unwrap();
        assert!(w.group_element.is_identity());
        assert_eq!(w.correspondence, induced(&a, &b, rotate(k)));
        assert_eq!(w.correspondence.cycle_type(), vec![3, 1]);
    }
}
