#![allow(dead_code)]

use std::f64::consts::TAU;

use std::path::{Path, PathBuf};
use std::process::Command;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use symcurve::format::write_curve;
use symcurve_core::forms::{Affine, PlanarMap, TrigSeries};
use symcurve_core::shapes::trig_loop;
use symcurve_core::{
    analyze, check_generic, resample, AnalysisOptions, Arrangement, ClosedCurve, GenericityOptions,
};

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn symcurve(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_symcurve"))
        .args(args)
        .output()
        .unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

pub fn save(dir: &Path, name: &str, curve: &ClosedCurve) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, write_curve(curve)).unwrap();
    p
}

pub fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Value after `key: ` on the first line starting with it.
pub fn field<'a>(out: &'a str, key: &str) -> &'a str {
    let prefix = format!("{key}: ");
    out.lines()
        .find_map(|l| l.strip_prefix(prefix.as_str()))
        .unwrap_or_else(|| panic!("no `{key}` in\n{out}"))
}

fn speed_ratio(c: &ClosedCurve) -> f64 {
    let lp = &c.loops()[0];
    let chords: Vec<f64> = (0..lp.len())
        .map(|k| lp[k].dist(lp[(k + 1) % lp.len()]))
        .collect();
    let mean = chords.iter().sum::<f64>() / chords.len() as f64;
    chords.iter().copied().fold(f64::INFINITY, f64::min) / mean
}

/// Random three-harmonic loop without near-cusps that stays generic after
/// equal-arclength resampling.
pub fn random_generic(rng: &mut ChaCha8Rng, samples: usize) -> (ClosedCurve, Arrangement) {
    loop {
        let coeffs: Vec<[f64; 4]> = (1..=3)
            .map(|k| {
                let s = 1.0 / k as f64;
                [
                    rng.gen_range(-s..s),
                    rng.gen_range(-s..s),
                    rng.gen_range(-s..s),
                    rng.gen_range(-s..s),
                ]
            })
            .collect();
        let c = trig_loop(samples, &coeffs).unwrap();
        if speed_ratio(&c) < 0.3
            || !check_generic(
                &resample(&c, samples).unwrap(),
                &GenericityOptions::default(),
            )
            .is_generic
        {
            continue;
        }
        let a = analyze(c, &AnalysisOptions::default()).unwrap();
        if let Some(s) = a.structure {
            return (a.curve, s.arrangement);
        }
    }
}

fn trig(rng: &mut ChaCha8Rng) -> TrigSeries {
    TrigSeries::new(
        (0..rng.gen_range(1..=2))
            .map(|_| {
                (
                    rng.gen_range(0.05..0.3),
                    rng.gen_range(0.3..1.5),
                    rng.gen_range(0.0..TAU),
                )
            })
            .collect(),
    )
}

/// Random composition of shears and rigid motions.
pub fn random_area_preserving(rng: &mut ChaCha8Rng) -> PlanarMap {
    let mut m = PlanarMap::identity();
    for _ in 0..rng.gen_range(1..=3) {
        let next = match rng.gen_range(0..3) {
            0 => PlanarMap::ShearX(trig(rng)),
            1 => PlanarMap::ShearY(trig(rng)),
            _ => PlanarMap::Affine(
                Affine::rotation(rng.gen_range(0.0..TAU))
                    .with_translation(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            ),
        };
        m = m.then(next);
    }
    m
}
