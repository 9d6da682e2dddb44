//! Independent oracles: closed-form areas, lattice winding counts and frozen
//! regression values for the standard curves.

use std::f64::consts::PI;

use symcurve_core::forms::bump_profile;
use symcurve_core::geom::{signed_area, winding_number};
use symcurve_core::shapes::{circle, figure_eight, trefoil, trefoil_point};
use symcurve_core::{
    analyze, canonical_code, face_areas, gauss_code, integrate_density_over_faces, AnalysisOptions,
    Arrangement, ClosedCurve, Density, Grid, Point,
};

/// `∫_0^1 exp(-1/u) du = e^{-1} - E_1(1)`.
const BUMP_RADIAL: f64 = 0.148_495_506_775_922;

fn arrangement(c: ClosedCurve) -> Arrangement {
    analyze(c, &AnalysisOptions::default())
        .unwrap()
        .structure
        .unwrap()
        .arrangement
}

#[test]
fn inscribed_polygon_area() {
    for n in [64usize, 256, 1000] {
        let a = face_areas(&arrangement(circle(n, Point::new(0.3, -2.0), 1.7).unwrap())).unwrap();
        let exact = 0.5 * n as f64 * (2.0 * PI / n as f64).sin() * 1.7 * 1.7;
        assert!((a[0] - exact).abs() < 1e-12, "{n}: {} vs {exact}", a[0]);
    }
}

#[test]
fn gerono_lobes_are_four_thirds() {
    // ∫_0^π sin 2t cos t dt = 4/3.
    let a = face_areas(&arrangement(figure_eight(2048).unwrap())).unwrap();
    for x in a.entries() {
        assert!((x - 4.0 / 3.0).abs() < 1e-5, "{x}");
    }
}

#[test]
fn trefoil_winding_identity_and_lattice_count() {
    let arr = arrangement(trefoil(2048).unwrap());
    let a = face_areas(&arr).unwrap();
    let center = (0..4)
        .find(|&j| arr.faces()[j].representative.norm() < 0.1)
        .unwrap();
    let petals: f64 = (0..4).filter(|&j| j != center).map(|j| a[j]).sum();
    // The center has winding number 2; ∮ x dy = 7π for the smooth curve.
    let shoelace = signed_area(&arr.loops()[0]).abs();
    assert!((petals + 2.0 * a[center] - shoelace).abs() < 1e-10);
    assert!((shoelace - 7.0 * PI).abs() < 1e-3);

    let dense: Vec<Point> = (0..3000)
        .map(|k| trefoil_point(2.0 * PI * k as f64 / 3000.0))
        .collect();
    let n = 400;
    let (lo, hi) = (-3.2, 3.2);
    let h = (hi - lo) / n as f64;
    let mut twice = 0usize;
    for i in 0..n {
        for j in 0..n {
            let p = Point::new(lo + (i as f64 + 0.5) * h, lo + (j as f64 + 0.5) * h);
            if winding_number(&dense, p).abs() == 2 {
                twice += 1;
            }
        }
    }
    let lattice = twice as f64 * h * h;
    assert!(
        (lattice - a[center]).abs() < 1e-2 * a[center],
        "{lattice} vs {}",
        a[center]
    );
}

#[test]
fn frozen_trefoil_values() {
    let arr = arrangement(trefoil(512).unwrap());
    let a = face_areas(&arr).unwrap();
    let frozen = [
        4.505424515926202,
        4.505425150911439,
        4.236215011777021,
        4.5054245159262045,
    ];
    for (x, f) in a.entries().iter().zip(frozen) {
        assert!((x - f).abs() < 1e-9, "{x} vs {f}");
    }
    let gc = gauss_code(&arr);
    assert_eq!(gc.to_word_string(), "1+ 2- 3+ 1+ 2- 3+");
    assert_eq!(
        canonical_code(&gc),
        "D6F4:F2,1,3,1 F5,4,6,2 B0,7,8,O B9,8,0,1 F8,9,7,3 B1,2,10,4 F7,0,9,2 B6,11,4,3 B4,5,11,O F3,10,1,2 F11,6,5,4 B10,3,2,O"
    );
}

#[test]
fn frozen_codes_of_circle_and_figure_eight() {
    let c = arrangement(circle(256, Point::new(0.0, 0.0), 1.0).unwrap());
    assert_eq!(canonical_code(&gauss_code(&c)), "D1F1:F1,0,0,1 B0,1,1,O");
    let e = arrangement(figure_eight(512).unwrap());
    assert_eq!(
        canonical_code(&gauss_code(&e)),
        "D2F2:F2,1,0,1 F3,0,2,O B0,3,1,O B1,2,3,2"
    );
}

#[test]
fn constant_density_doubles_areas() {
    let arr = arrangement(trefoil(512).unwrap());
    let grid = Grid::covering(&arr.bounding_box(), 200).unwrap();
    let got = integrate_density_over_faces(&arr, &Density::constant(grid, 2.0).unwrap()).unwrap();
    let a = face_areas(&arr).unwrap();
    for j in 0..4 {
        assert!((got[j] - 2.0 * a[j]).abs() < 1e-10 * a[j]);
    }
}

#[test]
fn unit_bump_adds_one_to_its_face() {
    let arr = arrangement(figure_eight(1024).unwrap());
    let (center, clearance) = arr.deepest_point(0);
    let radius = 0.8 * clearance;
    let amp = 1.0 / (PI * radius * radius * BUMP_RADIAL);
    let grid = Grid::covering(&arr.bounding_box(), 512).unwrap();
    let f = Density::from_fn(grid, grid.domain(), |p| {
        1.0 + amp * bump_profile(p.dist(center) / radius)
    })
    .unwrap();
    let got = integrate_density_over_faces(&arr, &f).unwrap();
    let a = face_areas(&arr).unwrap();
    assert!((got[0] - a[0] - 1.0).abs() < 1e-3, "{}", got[0] - a[0]);
    assert!((got[1] - a[1]).abs() < 1e-10 * a[1], "{}", got[1] - a[1]);
}
