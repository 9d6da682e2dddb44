//! Sampled closed curves and their genericity certificate.
//!
//! A curve is a list of closed polylines ("loops"); the stored sample order
//! is the parameter direction. Genericity is certified on the polyline at
//! explicit tolerances: every self-intersection must be a transverse double
//! point, nothing may pass within `sep_tol` of itself without crossing, and
//! consecutive segments may not turn by `max_turn` or more.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::geom::{closest_approach, line_angle, rem_euclid, segment_intersection, Point, Rect};

/// Minimum number of samples per loop.
pub const MIN_SAMPLES: usize = 8;

/// Oriented closed curve given as one or more sampled loops.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedCurve {
    loops: Vec<Vec<Point>>,
}

impl ClosedCurve {
    /// Validates sample counts, finiteness and distinct consecutive samples
    /// (including the closing pair last -> first).
    pub fn new(loops: Vec<Vec<Point>>) -> Result<Self> {
        if loops.is_empty() {
            return Err(Error::EmptyCurve);
        }
        for (li, lp) in loops.iter().enumerate() {
            if lp.len() < MIN_SAMPLES {
                return Err(Error::TooFewSamples {
                    loop_index: li,
                    samples: lp.len(),
                    min: MIN_SAMPLES,
                });
            }
            for (i, p) in lp.iter().enumerate() {
                if !p.is_finite() {
                    return Err(Error::NonFinitePoint {
                        loop_index: li,
                        index: i,
                    });
                }
                let prev = lp[(i + lp.len() - 1) % lp.len()];
                if prev == *p {
                    return Err(Error::RepeatedPoint {
                        loop_index: li,
                        index: i,
                    });
                }
            }
        }
        Ok(Self { loops })
    }

    /// Single loop sampled from a parametrization over `[0, 2pi)`.
    pub fn from_fn(samples: usize, f: impl Fn(f64) -> Point) -> Result<Self> {
        let pts = (0..samples)
            .map(|k| f(2.0 * core::f64::consts::PI * k as f64 / samples as f64))
            .collect();
        Self::new(vec![pts])
    }

    pub fn loops(&self) -> &[Vec<Point>] {
        &self.loops
    }

    pub fn loop_count(&self) -> usize {
        self.loops.len()
    }

    pub fn into_loops(self) -> Vec<Vec<Point>> {
        self.loops
    }

    pub fn bounding_box(&self) -> Rect {
        Rect::bounding(self.loops.iter().flatten()).expect("validated curve is non-empty")
    }

    /// Applies `f` to every sample and re-validates.
    pub fn map_points(&self, mut f: impl FnMut(Point) -> Point) -> Result<Self> {
        Self::new(
            self.loops
                .iter()
                .map(|lp| lp.iter().map(|p| f(*p)).collect())
                .collect(),
        )
    }

    /// Point at `param` in `[0, n)` on loop `li`, linear between samples.
    pub fn point_at(&self, li: usize, param: f64) -> Point {
        let lp = &self.loops[li];
        let n = lp.len();
        let p = rem_euclid(param, n as f64);
        let i = (p.floor() as usize).min(n - 1);
        let t = p - i as f64;
        lp[i].lerp(lp[(i + 1) % n], t)
    }

    /// Direction of segment `i` of loop `li` (unnormalized).
    pub fn segment_dir(&self, li: usize, i: usize) -> Point {
        let lp = &self.loops[li];
        let n = lp.len();
        lp[(i + 1) % n] - lp[i % n]
    }

    pub fn arclength(&self, li: usize) -> f64 {
        let lp = &self.loops[li];
        (0..lp.len())
            .map(|i| lp[i].dist(lp[(i + 1) % lp.len()]))
            .sum()
    }

    pub fn total_arclength(&self) -> f64 {
        (0..self.loops.len()).map(|li| self.arclength(li)).sum()
    }
}

/// Resamples every loop to `samples_per_loop` points spaced uniformly in
/// arclength of the output polyline (equal chords), starting at the first
/// sample. Output vertices lie on the input polyline, so resampling twice
/// reproduces the first result.
pub fn resample(curve: &ClosedCurve, samples_per_loop: usize) -> Result<ClosedCurve> {
    if samples_per_loop < MIN_SAMPLES {
        return Err(Error::SampleCount(samples_per_loop));
    }
    let loops = curve
        .loops()
        .iter()
        .map(|lp| resample_loop(lp, samples_per_loop))
        .collect();
    ClosedCurve::new(loops)
}

fn resample_loop(lp: &[Point], n: usize) -> Vec<Point> {
    let m = lp.len();
    let mut cum = Vec::with_capacity(m + 1);
    cum.push(0.0);
    for i in 0..m {
        let last = *cum.last().unwrap();
        cum.push(last + lp[i].dist(lp[(i + 1) % m]));
    }
    let total = cum[m];
    let at = |s: f64| -> Point {
        let s = s.clamp(0.0, total);
        // Last segment whose start is <= s.
        let i = cum
            .partition_point(|&c| c <= s)
            .saturating_sub(1)
            .min(m - 1);
        let len = cum[i + 1] - cum[i];
        let t = if len > 0.0 {
            ((s - cum[i]) / len).clamp(0.0, 1.0)
        } else {
            0.0
        };
        lp[i].lerp(lp[(i + 1) % m], t)
    };

    let mut params: Vec<f64> = (0..n).map(|k| total * k as f64 / n as f64).collect();
    let mut pts: Vec<Point> = params.iter().map(|&s| at(s)).collect();
    // Fixed-point iteration towards equal chords; the chord/arc ratio is
    // close to one, so the unit-gain update contracts.
    for _ in 0..200 {
        let chords: Vec<f64> = (0..n).map(|k| pts[k].dist(pts[(k + 1) % n])).collect();
        let chord_total: f64 = chords.iter().sum();
        let mut acc = 0.0;
        let mut worst: f64 = 0.0;
        let mut next = params.clone();
        for k in 1..n {
            acc += chords[k - 1];
            let err = chord_total * k as f64 / n as f64 - acc;
            worst = worst.max(err.abs());
            next[k] = params[k] + err;
        }
        if worst <= 1e-14 * total {
            break;
        }
        // Keep the parameters strictly increasing.
        let monotone = next.windows(2).all(|w| w[0] < w[1]) && next[n - 1] < total;
        if !monotone {
            break;
        }
        params = next;
        pts = params.iter().map(|&s| at(s)).collect();
    }
    pts
}

/// Tolerances for [`check_generic`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenericityOptions {
    /// Minimum crossing angle (radians) of a transverse double point.
    pub angle_tol: f64,
    /// Separation tolerance; `None` means `1e-6` times the bounding-box diagonal.
    pub sep_tol: Option<f64>,
    /// Turning angle between consecutive segments at or above which a
    /// vertex is flagged as a cusp proxy.
    pub max_turn: f64,
}

impl Default for GenericityOptions {
    fn default() -> Self {
        Self {
            angle_tol: 0.1,
            sep_tol: None,
            max_turn: FRAC_PI_2,
        }
    }
}

impl GenericityOptions {
    pub fn resolved_sep_tol(&self, curve: &ClosedCurve) -> f64 {
        self.sep_tol
            .unwrap_or_else(|| 1e-6 * curve.bounding_box().diagonal())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationKind {
    Tangency,
    TriplePoint,
    NearMiss,
    CuspProxy,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationKind::Tangency => "tangency",
            ViolationKind::TriplePoint => "triple-point",
            ViolationKind::NearMiss => "near-miss",
            ViolationKind::CuspProxy => "cusp-proxy",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub location: Point,
}

/// Position on the curve: loop index and parameter in `[0, n)`, where the
/// integer part is the segment index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchParam {
    pub loop_index: usize,
    pub param: f64,
}

/// Transverse self-intersection of two branches.
#[derive(Debug, Clone, PartialEq)]
pub struct DoublePoint {
    pub point: Point,
    /// Branches ordered by `(loop_index, param)`.
    pub branches: [BranchParam; 2],
    /// Unit forward tangents of the two branches.
    pub tangents: [Point; 2],
    /// Acute angle between the branch tangents.
    pub angle: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenericityReport {
    pub is_generic: bool,
    pub double_points: Vec<DoublePoint>,
    pub violations: Vec<Violation>,
    pub angle_tol: f64,
    pub sep_tol: f64,
}

impl GenericityReport {
    pub fn count(&self, kind: ViolationKind) -> usize {
        self.violations.iter().filter(|v| v.kind == kind).count()
    }
}

struct Segment {
    loop_index: usize,
    index: usize,
    a: Point,
    b: Point,
    bbox: Rect,
}

struct Candidate {
    point: Point,
    germs: [(BranchParam, Point); 2],
}

/// Locates all double points of the polyline and reports genericity
/// violations. Never fails.
pub fn check_generic(curve: &ClosedCurve, opts: &GenericityOptions) -> GenericityReport {
    let sep_tol = opts.resolved_sep_tol(curve);
    let mut violations = Vec::new();

    for lp in curve.loops() {
        let n = lp.len();
        for k in 0..n {
            let d0 = lp[k] - lp[(k + n - 1) % n];
            let d1 = lp[(k + 1) % n] - lp[k];
            let turn = d0.cross(d1).abs().atan2(d0.dot(d1));
            if turn >= opts.max_turn {
                violations.push(Violation {
                    kind: ViolationKind::CuspProxy,
                    location: lp[k],
                });
            }
        }
    }

    let mut segs: Vec<Segment> = Vec::new();
    for (li, lp) in curve.loops().iter().enumerate() {
        let n = lp.len();
        for i in 0..n {
            let a = lp[i];
            let b = lp[(i + 1) % n];
            let mut bbox = Rect { min: a, max: a };
            bbox.include(b);
            segs.push(Segment {
                loop_index: li,
                index: i,
                a,
                b,
                bbox: bbox.inflate(sep_tol),
            });
        }
    }
    segs.sort_by(|p, q| p.bbox.min.x.total_cmp(&q.bbox.min.x));

    let mut candidates: Vec<Candidate> = Vec::new();
    let mut near: Vec<Point> = Vec::new();
    let mut parallel_touch: Vec<Point> = Vec::new();
    const SLACK: f64 = 1e-9;
    for i in 0..segs.len() {
        let s = &segs[i];
        for t in &segs[i + 1..] {
            if t.bbox.min.x > s.bbox.max.x {
                break;
            }
            if !s.bbox.intersects(&t.bbox) {
                continue;
            }
            if s.loop_index == t.loop_index {
                let n = curve.loops()[s.loop_index].len();
                let d = s.index.abs_diff(t.index);
                if d <= 1 || d == n - 1 {
                    continue;
                }
            }
            match segment_intersection(s.a, s.b, t.a, t.b, SLACK) {
                Some((ts, tt)) => {
                    let ns = curve.loops()[s.loop_index].len() as f64;
                    let nt = curve.loops()[t.loop_index].len() as f64;
                    let ps = rem_euclid(s.index as f64 + ts.clamp(0.0, 1.0), ns);
                    let pt = rem_euclid(t.index as f64 + tt.clamp(0.0, 1.0), nt);
                    candidates.push(Candidate {
                        point: s.a.lerp(s.b, ts.clamp(0.0, 1.0)),
                        germs: [
                            (
                                BranchParam {
                                    loop_index: s.loop_index,
                                    param: ps,
                                },
                                s.b - s.a,
                            ),
                            (
                                BranchParam {
                                    loop_index: t.loop_index,
                                    param: pt,
                                },
                                t.b - t.a,
                            ),
                        ],
                    });
                }
                None => {
                    let (d, loc) = closest_approach(s.a, s.b, t.a, t.b);
                    if d <= sep_tol {
                        let parallel = (s.b - s.a).cross(t.b - t.a).abs()
                            <= 1e-12 * (s.b - s.a).norm() * (t.b - t.a).norm();
                        if parallel && d == 0.0 {
                            parallel_touch.push(loc);
                        } else {
                            near.push(loc);
                        }
                    }
                }
            }
        }
    }

    // Cluster candidates closer than sep_tol.
    let mut parent: Vec<usize> = (0..candidates.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..candidates.len() {
        for j in i + 1..candidates.len() {
            if candidates[i].point.dist(candidates[j].point) <= sep_tol {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[b] = a;
                }
            }
        }
    }
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    let mut root_slot: Vec<Option<usize>> = vec![None; candidates.len()];
    for i in 0..candidates.len() {
        let r = find(&mut parent, i);
        match root_slot[r] {
            Some(c) => clusters[c].push(i),
            None => {
                root_slot[r] = Some(clusters.len());
                clusters.push(vec![i]);
            }
        }
    }

    let mut double_points = Vec::new();
    let mut cluster_points = Vec::new();
    for cl in &clusters {
        let mut germs: Vec<(BranchParam, Point)> = Vec::new();
        let mut centre = Point::default();
        for &ci in cl {
            centre = centre + candidates[ci].point;
            for g in candidates[ci].germs {
                let n = curve.loops()[g.0.loop_index].len() as f64;
                let dup = germs.iter().any(|h| {
                    h.0.loop_index == g.0.loop_index && {
                        let d = (h.0.param - g.0.param).abs();
                        d.min(n - d) <= 1.0 + 1e-9
                    }
                });
                if !dup {
                    germs.push(g);
                }
            }
        }
        let point = centre * (1.0 / cl.len() as f64);
        cluster_points.push(point);
        match germs.len() {
            2 => {
                germs.sort_by(|a, b| {
                    (a.0.loop_index, a.0.param)
                        .partial_cmp(&(b.0.loop_index, b.0.param))
                        .unwrap()
                });
                let ta = germs[0].1 * (1.0 / germs[0].1.norm());
                let tb = germs[1].1 * (1.0 / germs[1].1.norm());
                let angle = line_angle(ta, tb);
                if angle < opts.angle_tol {
                    violations.push(Violation {
                        kind: ViolationKind::Tangency,
                        location: point,
                    });
                } else {
                    double_points.push(DoublePoint {
                        point,
                        branches: [germs[0].0, germs[1].0],
                        tangents: [ta, tb],
                        angle,
                    });
                }
            }
            1 => violations.push(Violation {
                kind: ViolationKind::CuspProxy,
                location: point,
            }),
            _ => violations.push(Violation {
                kind: ViolationKind::TriplePoint,
                location: point,
            }),
        }
    }

    for loc in parallel_touch {
        violations.push(Violation {
            kind: ViolationKind::Tangency,
            location: loc,
        });
    }
    for loc in near {
        let at_crossing = cluster_points.iter().any(|c| c.dist(loc) <= 4.0 * sep_tol)
            || candidates
                .iter()
                .any(|c| c.point.dist(loc) <= 4.0 * sep_tol);
        if !at_crossing {
            violations.push(Violation {
                kind: ViolationKind::NearMiss,
                location: loc,
            });
        }
    }

    double_points.sort_by(|a, b| {
        let ka = (a.branches[0].loop_index, a.branches[0].param);
        let kb = (b.branches[0].loop_index, b.branches[0].param);
        ka.partial_cmp(&kb).unwrap()
    });
    violations.sort_by(|a, b| {
        (a.kind, a.location.x, a.location.y)
            .partial_cmp(&(b.kind, b.location.x, b.location.y))
            .unwrap()
    });

    GenericityReport {
        is_generic: violations.is_empty(),
        double_points,
        violations,
        angle_tol: opts.angle_tol,
        sep_tol,
    }
}
