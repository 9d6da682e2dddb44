//! Acceptance checks, one PASS/FAIL line each. Exits non-zero when any
//! check fails.

mod common;

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{random_area_preserving, random_generic, s, save, symcurve};
use symcurve_core::forms::Affine;
use symcurve_core::moduli::{
    moduli_dimension, orbit_decision, symplectically_equivalent, CurveSpec, LocalSingularity,
    Surface, Verdict,
};
use symcurve_core::perm::all_perms;
use symcurve_core::shapes::{figure_eight, radial_distortion, trefoil};
use symcurve_core::{
    analyze, face_areas, integrate_density_over_faces, isotopy_match, moser_interpolation,
    primitive_diffeo, pullback, realize_area_vector, resample, symmetry_group, AnalysisOptions,
    AreaVector, Arrangement, ClosedCurve, Density, Grid, Perm, Point, Rect,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn arrangement(c: &ClosedCurve) -> Arrangement {
    analyze(c.clone(), &AnalysisOptions::default())
        .unwrap()
        .structure
        .expect("generic curve")
        .arrangement
}

fn rel_err(got: &[f64], want: &[f64]) -> f64 {
    let m = want.iter().copied().fold(0.0, f64::max);
    got.iter()
        .zip(want)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
        / m
}

fn trefoil_symmetry() -> Outcome {
    let t0 = Instant::now();
    let a =
        analyze(trefoil(512).unwrap(), &AnalysisOptions::default()).map_err(|e| e.to_string())?;
    let st = a.structure().map_err(|e| e.to_string())?;
    let (r, order, cyclic) = (
        st.arrangement.bounded_face_count(),
        st.symmetry.order(),
        st.symmetry.is_cyclic(),
    );
    let dt = t0.elapsed();
    check(
        r == 4 && order == 3 && cyclic && st.symmetry.degree() == 4 && dt < Duration::from_secs(1),
        format!("r = {r}, |G_f| = {order}, cyclic = {cyclic}, {dt:.2?}"),
    )
}

fn face_count_law() -> Outcome {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let n = 120;
    let mut bad = Vec::new();
    let mut crossings = 0;
    for k in 0..n {
        let (_, arr) = random_generic(&mut rng, 400);
        let v = arr.vertex_count();
        crossings = crossings.max(v);
        if arr.bounded_face_count() != v + 1 || arr.euler_characteristic() != 2 {
            bad.push(k);
        }
    }
    let dt = t0.elapsed();
    check(
        bad.is_empty() && dt < Duration::from_secs(60),
        format!("{n} curves (up to {crossings} double points), failures {bad:?}, {dt:.2?}"),
    )
}

fn symplectic_invariance() -> Outcome {
    let t0 = Instant::now();
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let samples = 1024;
    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();
    for i in 0..25 {
        let (c, arr) = random_generic(&mut rng, samples);
        let areas = face_areas(&arr).unwrap();
        let original = save(dir.path(), "a.txt", &c);
        for j in 0..10 {
            let m = random_area_preserving(&mut rng);
            let mapped = c.map_points(|p| m.apply(p)).unwrap();
            let re = resample(&mapped, samples).unwrap();
            let other = arrangement(&re);
            let corr = isotopy_match(&arr, &other)
                .ok_or_else(|| format!("curve {i} map {j}: isotopy type changed"))?
                .faces;
            let b = face_areas(&other).unwrap();
            let pulled: Vec<f64> = (0..areas.len()).map(|k| b[corr.apply(k)]).collect();
            let err = rel_err(&pulled, areas.entries());
            worst = worst.max(err);
            let path = save(dir.path(), "b.txt", &mapped);
            let run = symcurve(&[
                "--resample",
                "1024",
                "compare",
                "--labelled",
                s(&original),
                s(&path),
            ]);
            if err > 1e-3 || run.code != 0 {
                failures.push(format!("{i}/{j} (err {err:.2e}, exit {})", run.code));
            }
        }
    }
    check(
        failures.is_empty(),
        format!(
            "250 maps, worst relative error {worst:.2e}, failures {failures:?}, {:.2?}",
            t0.elapsed()
        ),
    )
}

fn cone_surjectivity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut curves = vec![trefoil(512).unwrap(), figure_eight(512).unwrap()];
    for _ in 0..3 {
        curves.push(random_generic(&mut rng, 512).0);
    }
    let mut worst: f64 = 0.0;
    let mut slowest = Duration::ZERO;
    for c in &curves {
        let arr = arrangement(c);
        for _ in 0..2 {
            let t0 = Instant::now();
            let grid = Grid::covering(&arr.bounding_box(), 256).unwrap();
            let base = Density::standard(grid);
            let base_areas = integrate_density_over_faces(&arr, &base).unwrap();
            let target = AreaVector::new(
                base_areas
                    .entries()
                    .iter()
                    .map(|b| b * (1.0 + rng.gen_range(0.05..2.0)))
                    .collect(),
            )
            .unwrap();
            let w = realize_area_vector(&arr, &target, &base).map_err(|e| e.to_string())?;
            let got = integrate_density_over_faces(&arr, &w).unwrap();
            slowest = slowest.max(t0.elapsed());
            worst = worst.max(rel_err(got.entries(), target.entries()));
        }
    }
    check(
        worst <= 1e-3 && slowest < Duration::from_secs(5),
        format!(
            "{} cases on 256^2, worst relative error {worst:.2e}, slowest {slowest:.2?}",
            2 * curves.len()
        ),
    )
}

fn primitive_round_trip() -> Outcome {
    let dom = Rect::new(-2.0, 2.0, -2.0, 2.0);
    let f = |p: Point| {
        let r2 = (p.x - 0.2).powi(2) + (p.y + 0.1).powi(2);
        1.0 + if r2 < 1.0 {
            0.5 * (1.0 - r2).powi(4)
        } else {
            0.0
        }
    };
    let defect = |n: usize| {
        let grid = Grid::new(dom, n, n).unwrap();
        let omega = Density::from_fn(grid, dom, f).unwrap();
        let psi = primitive_diffeo(&omega).unwrap();
        pullback(&psi, &Density::standard(grid))
            .unwrap()
            .max_abs_diff(&omega, None)
            .unwrap()
    };
    let (coarse, fine) = (defect(128), defect(512));
    check(
        fine <= 1e-4 && coarse / fine >= 4.0,
        format!(
            "defect 128^2 {coarse:.2e}, 512^2 {fine:.2e}, ratio {:.1}",
            coarse / fine
        ),
    )
}

fn moser_contract() -> Outcome {
    let bump = |p: Point, cx: f64| {
        let s2 = ((p.x - cx).powi(2) + p.y * p.y) / 0.81;
        if s2 < 1.0 {
            (1.0 - s2).powi(4)
        } else {
            0.0
        }
    };
    let grid = Grid::new(Rect::new(-3.0, 3.0, -2.0, 2.0), 129, 129).unwrap();
    let f0 = Density::standard(grid);
    let f1 = Density::from_fn(grid, Rect::new(-2.0, 2.0, -1.0, 1.0), |p| {
        1.0 + 0.4 * (bump(p, -1.0) - bump(p, 1.0))
    })
    .unwrap();
    let defect = |steps: usize| {
        let rho = moser_interpolation(&f0, &f1, steps).unwrap();
        pullback(&rho, &f1)
            .unwrap()
            .max_abs_diff(&f0, None)
            .unwrap()
    };
    let (a, b) = (defect(64), defect(128));
    check(
        a < 1e-3 && a / b >= 3.0,
        format!(
            "defect 64 steps {a:.2e}, 128 steps {b:.2e}, ratio {:.1}",
            a / b
        ),
    )
}

fn moduli_dimensions() -> Outcome {
    use LocalSingularity::*;
    let dim =
        |r, pts: Vec<LocalSingularity>, s| moduli_dimension(&CurveSpec::new(r, pts, s)).unwrap();
    let catalog: Vec<usize> = [A2, E12, W18, E24]
        .iter()
        .map(|g| g.local_dimension())
        .collect();
    let e24 = dim(1, vec![E24], Surface::Plane);
    let plane = dim(3, vec![], Surface::Plane);
    let bounded = dim(3, vec![], Surface::Bounded);
    let mixed = dim(2, vec![A2, E12, W18], Surface::Bounded);
    check(
        catalog == [0, 1, 2, 3] && e24 == 4 && plane == 3 && bounded == 2 && mixed == 1 + 3,
        format!("catalog {catalog:?}, E24 injective {e24}, r=3 plane {plane} bounded {bounded}, mixed {mixed}"),
    )
}

fn orbit_classification() -> Outcome {
    let t_curve = trefoil(1024).unwrap();
    let t = arrangement(&t_curve);
    let group = symmetry_group(&t);
    let rot = |k: usize| Affine::rotation(2.0 * PI * k as f64 / 3.0);
    let face_at = |arr: &Arrangement, p: Point| (0..4).find(|&j| arr.face_contains(j, p)).unwrap();
    let geometric: Vec<Perm> = (0..3)
        .map(|k| {
            Perm::new(
                (0..4)
                    .map(|j| face_at(&t, rot(k).apply(t.faces()[j].representative)))
                    .collect(),
            )
            .unwrap()
        })
        .collect();
    let center = (0..4)
        .find(|&j| t.faces()[j].representative.norm() < 0.1)
        .unwrap();
    // 1-based, as cycle notation.
    let petals: Vec<usize> = (0..4).filter(|&j| j != center).map(|j| j + 1).collect();

    let a = AreaVector::new(
        (0..4)
            .map(|j| if j == center { 4.0 } else { 2.0 + j as f64 })
            .collect(),
    )
    .unwrap();
    let thr = 1e-3 * a.max();
    let mut disagreements = Vec::new();
    let (mut eq, mut ineq) = (0, 0);
    for s in all_perms(4) {
        let mut b = vec![0.0; 4];
        for j in 0..4 {
            b[s.apply(j)] = a[j];
        }
        let b = AreaVector::new(b).unwrap();
        let oracle = all_perms(4)
            .into_iter()
            .filter(|g| geometric.contains(g))
            .any(|g| (0..4).all(|j| (a[j] - b[g.apply(j)]).abs() <= thr));
        let d =
            orbit_decision(&group, &Perm::identity(4), &a, &b, 1e-3).map_err(|e| e.to_string())?;
        if d.is_equivalent() != oracle {
            disagreements.push(s.to_cycle_string());
        }
        if oracle {
            eq += 1;
        } else {
            ineq += 1;
        }
    }
    let three_cycle = Perm::from_cycles(4, &[&[petals[0], petals[1], petals[2]]]).unwrap();
    let transposition = Perm::from_cycles(4, &[&[petals[0], petals[1]]]).unwrap();
    let permuted = |p: &Perm| {
        let mut b = vec![0.0; 4];
        for j in 0..4 {
            b[p.apply(j)] = a[j];
        }
        AreaVector::new(b).unwrap()
    };
    let v3 = orbit_decision(
        &group,
        &Perm::identity(4),
        &a,
        &permuted(&three_cycle),
        1e-3,
    )
    .unwrap()
    .verdict;
    let v2 = orbit_decision(
        &group,
        &Perm::identity(4),
        &a,
        &permuted(&transposition),
        1e-3,
    )
    .unwrap()
    .verdict;

    // The same dichotomy on curves: a rotated distorted trefoil and a mirrored distortion.
    let g = |phase: f64| move |th: f64| 0.15 * (th - phase).cos();
    let distorted = radial_distortion(&t_curve, g(0.3)).unwrap();
    let da = arrangement(&distorted);
    let rotated = arrangement(&distorted.map_points(|p| rot(1).apply(p)).unwrap());
    let mirrored = arrangement(&radial_distortion(&t_curve, g(PI - 0.3)).unwrap());
    let cr = symplectically_equivalent(&da, &rotated, 1e-3)
        .unwrap()
        .verdict;
    let cm = symplectically_equivalent(&da, &mirrored, 1e-3)
        .unwrap()
        .verdict;

    check(
        disagreements.is_empty()
            && v3 == Verdict::Equivalent
            && v2 == Verdict::Inequivalent
            && cr == Verdict::Equivalent
            && cm == Verdict::Inequivalent,
        format!(
            "S_4 sweep {eq} equivalent / {ineq} inequivalent, disagreements {disagreements:?}; \
             3-cycle {v3}, transposition {v2}; rotated curve {cr}, mirrored curve {cm}"
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("trefoil symmetry", trefoil_symmetry),
        ("face-count law", face_count_law),
        ("symplectic invariance of face areas", symplectic_invariance),
        ("cone surjectivity", cone_surjectivity),
        ("primitive diffeomorphism round trip", primitive_round_trip),
        ("Moser contract", moser_contract),
        ("moduli dimensions", moduli_dimensions),
        ("orbit classification", orbit_classification),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let (tag, detail) = match run() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {} {name}: {detail}", k + 1);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
