//! Equivalence decisions and moduli dimension counts.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::arrangement::{face_areas, AreaVector, Arrangement};
use crate::diagram::{isotopy_match, symmetry_group, SymmetryGroup};
use crate::error::{Error, Result};
use crate::perm::Perm;

/// Default relative area tolerance.
pub const DEFAULT_TOLERANCE: f64 = 1e-3;

/// Local singularity catalog with labelled local moduli dimensions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LocalSingularity {
    /// Ordinary cusp `(t^2, t^3)`.
    A2,
    /// Transverse double point.
    Node,
    /// Stable multigerm with tangential branches.
    TangentMultigermStable,
    /// `(t^3, t^7 + λ t^8)`.
    E12,
    /// `(t^4, t^7 + λ1 t^9 + λ2 t^13)`.
    W18,
    /// `(t^3, t^10 + ...)`, local moduli space `R^3`.
    E24,
    Custom {
        name: String,
        dimension: usize,
    },
}

impl LocalSingularity {
    pub fn name(&self) -> &str {
        match self {
            LocalSingularity::A2 => "A2",
            LocalSingularity::Node => "NODE",
            LocalSingularity::TangentMultigermStable => "TANGENT_MULTIGERM_STABLE",
            LocalSingularity::E12 => "E12",
            LocalSingularity::W18 => "W18",
            LocalSingularity::E24 => "E24",
            LocalSingularity::Custom { name, .. } => name,
        }
    }

    /// Dimension of the labelled local symplectic moduli space.
    pub fn local_dimension(&self) -> usize {
        match self {
            LocalSingularity::A2
            | LocalSingularity::Node
            | LocalSingularity::TangentMultigermStable => 0,
            LocalSingularity::E12 => 1,
            LocalSingularity::W18 => 2,
            LocalSingularity::E24 => 3,
            LocalSingularity::Custom { dimension, .. } => *dimension,
        }
    }

    pub fn parametrization(&self) -> &'static str {
        match self {
            LocalSingularity::A2 => "(t^2, t^3)",
            LocalSingularity::Node => "two transverse smooth branches",
            LocalSingularity::TangentMultigermStable => "stable multigerm",
            LocalSingularity::E12 => "(t^3, t^7)",
            LocalSingularity::W18 => "(t^4, t^7)",
            LocalSingularity::E24 => "(t^3, t^10)",
            LocalSingularity::Custom { .. } => "declared",
        }
    }

    pub fn normal_form(&self) -> &'static str {
        match self {
            LocalSingularity::A2 => "(t^2, t^3), no moduli",
            LocalSingularity::Node | LocalSingularity::TangentMultigermStable => {
                "stable, no moduli"
            }
            LocalSingularity::E12 => "(t^3, t^7 + a t^8)",
            LocalSingularity::W18 => "(t^4, t^7 + a t^9 + b t^13)",
            LocalSingularity::E24 => "moduli space diffeomorphic to R^3",
            LocalSingularity::Custom { .. } => "declared dimension",
        }
    }

    /// Catalog names as printed by [`LocalSingularity::name`].
    pub const CATALOG: [&'static str; 6] = [
        "A2",
        "NODE",
        "TANGENT_MULTIGERM_STABLE",
        "E12",
        "W18",
        "E24",
    ];
}

impl FromStr for LocalSingularity {
    type Err = String;

    fn from_str(s: &str) -> core::result::Result<Self, String> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "A2" => LocalSingularity::A2,
            "NODE" => LocalSingularity::Node,
            "TANGENT_MULTIGERM_STABLE" => LocalSingularity::TangentMultigermStable,
            "E12" => LocalSingularity::E12,
            "W18" => LocalSingularity::W18,
            "E24" => LocalSingularity::E24,
            _ => return Err(alloc::format!("unknown singularity `{s}`")),
        })
    }
}

impl fmt::Display for LocalSingularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Surface {
    Plane,
    Unbounded,
    Bounded,
}

impl Surface {
    pub fn as_str(self) -> &'static str {
        match self {
            Surface::Plane => "plane",
            Surface::Unbounded => "unbounded",
            Surface::Bounded => "bounded",
        }
    }
}

impl FromStr for Surface {
    type Err = String;

    fn from_str(s: &str) -> core::result::Result<Self, String> {
        match s {
            "plane" => Ok(Surface::Plane),
            "unbounded" => Ok(Surface::Unbounded),
            "bounded" => Ok(Surface::Bounded),
            _ => Err(alloc::format!("unknown surface `{s}`")),
        }
    }
}

/// Declared data of a finite-type curve for the dimension count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveSpec {
    pub r: usize,
    pub unstable_points: Vec<LocalSingularity>,
    pub surface: Surface,
}

impl CurveSpec {
    pub fn new(r: usize, unstable_points: Vec<LocalSingularity>, surface: Surface) -> Self {
        Self {
            r,
            unstable_points,
            surface,
        }
    }
}

/// Term-by-term dimension count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionBreakdown {
    pub local_terms: Vec<(String, usize)>,
    /// `r`, or `r - 1` on a surface of bounded area.
    pub area_term: usize,
    pub total: usize,
}

pub fn dimension_breakdown(spec: &CurveSpec) -> Result<DimensionBreakdown> {
    let area_term = match spec.surface {
        Surface::Plane | Surface::Unbounded => spec.r,
        Surface::Bounded => spec
            .r
            .checked_sub(1)
            .ok_or(Error::BoundedSurfaceWithoutFaces)?,
    };
    let local_terms: Vec<(String, usize)> = spec
        .unstable_points
        .iter()
        .map(|p| (String::from(p.name()), p.local_dimension()))
        .collect();
    let total = local_terms.iter().map(|t| t.1).sum::<usize>() + area_term;
    Ok(DimensionBreakdown {
        local_terms,
        area_term,
        total,
    })
}

/// Sum of local moduli dimensions plus `r` (`r - 1` on a bounded-area
/// surface).
pub fn moduli_dimension(spec: &CurveSpec) -> Result<usize> {
    dimension_breakdown(spec).map(|b| b.total)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Equivalent,
    Inequivalent,
    Incomparable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Equivalent => "EQUIVALENT",
            Verdict::Inequivalent => "INEQUIVALENT",
            Verdict::Incomparable => "INCOMPARABLE",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Best matching found: the face map `a -> b` actually compared, the
/// symmetry used to produce it, and the per-face discrepancies.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub correspondence: Perm,
    pub group_element: Perm,
    pub discrepancies: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decision {
    pub verdict: Verdict,
    /// Present whenever the curves are comparable.
    pub witness: Option<Witness>,
    /// Largest absolute discrepancy of the witness.
    pub max_discrepancy: f64,
    /// Relative tolerance used.
    pub tolerance: f64,
    /// Absolute threshold: `tolerance` times the largest face area.
    pub threshold: f64,
}

impl Decision {
    pub fn incomparable(tolerance: f64) -> Self {
        Self {
            verdict: Verdict::Incomparable,
            witness: None,
            max_discrepancy: f64::INFINITY,
            tolerance,
            threshold: f64::NAN,
        }
    }

    pub fn is_equivalent(&self) -> bool {
        self.verdict == Verdict::Equivalent
    }
}

fn discrepancies(a: &AreaVector, b: &AreaVector, corr: &Perm) -> Vec<f64> {
    (0..a.len())
        .map(|j| (a[j] - b[corr.apply(j)]).abs())
        .collect()
}

/// Compares labelled area vectors through a face correspondence `a -> b`.
pub fn labelled_equivalent(
    a: &AreaVector,
    b: &AreaVector,
    corr: &Perm,
    tol: f64,
) -> Result<Decision> {
    if corr.len() != a.len() || a.len() != b.len() {
        return Err(Error::NotABijection(corr.len()));
    }
    let d = discrepancies(a, b, corr);
    let max = d.iter().copied().fold(0.0, f64::max);
    let threshold = tol * a.max().max(b.max());
    Ok(Decision {
        verdict: if max <= threshold {
            Verdict::Equivalent
        } else {
            Verdict::Inequivalent
        },
        witness: Some(Witness {
            correspondence: corr.clone(),
            group_element: Perm::identity(a.len()),
            discrepancies: d,
        }),
        max_discrepancy: max,
        tolerance: tol,
        threshold,
    })
}

/// Orbit comparison: tries `j -> corr(g(j))` for the face permutations `g`
/// of `group` in order, identity first. The witness is the first `g` that
/// matches within tolerance, or the closest one when none does.
pub fn orbit_decision(
    group: &SymmetryGroup,
    corr: &Perm,
    a: &AreaVector,
    b: &AreaVector,
    tol: f64,
) -> Result<Decision> {
    let mut best: Option<Decision> = None;
    for g in group.face_perms() {
        let composite = corr.compose(g);
        let mut d = labelled_equivalent(a, b, &composite, tol)?;
        if let Some(w) = d.witness.as_mut() {
            w.group_element = g.clone();
        }
        if d.is_equivalent() {
            return Ok(d);
        }
        if best
            .as_ref()
            .is_none_or(|b| d.max_discrepancy < b.max_discrepancy)
        {
            best = Some(d);
        }
    }
    best.ok_or(Error::NotABijection(corr.len()))
}

/// Decides equivalence under area-preserving diffeomorphisms, up to the
/// symmetry group of `a`.
pub fn symplectically_equivalent(a: &Arrangement, b: &Arrangement, tol: f64) -> Result<Decision> {
    let Some(m) = isotopy_match(a, b) else {
        return Ok(Decision::incomparable(tol));
    };
    let group = symmetry_group(a);
    orbit_decision(&group, &m.faces, &face_areas(a)?, &face_areas(b)?, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn catalog_dimensions() {
        let dims: Vec<usize> = LocalSingularity::CATALOG
            .iter()
            .map(|n| n.parse::<LocalSingularity>().unwrap().local_dimension())
            .collect();
        assert_eq!(dims, vec![0, 0, 0, 1, 2, 3]);
        assert!("X9".parse::<LocalSingularity>().is_err());
    }

    #[test]
    fn dimension_formula() {
        let e24 = CurveSpec::new(1, vec![LocalSingularity::E24], Surface::Plane);
        assert_eq!(moduli_dimension(&e24).unwrap(), 4);
        assert_eq!(
            moduli_dimension(&CurveSpec::new(4, vec![], Surface::Plane)).unwrap(),
            4
        );
        assert_eq!(
            moduli_dimension(&CurveSpec::new(2, vec![], Surface::Bounded)).unwrap(),
            1
        );
        assert_eq!(
            moduli_dimension(&CurveSpec::new(2, vec![], Surface::Unbounded)).unwrap(),
            2
        );
        assert_eq!(
            moduli_dimension(&CurveSpec::new(0, vec![], Surface::Bounded)),
            Err(Error::BoundedSurfaceWithoutFaces)
        );
    }

    #[test]
    fn labelled_decisions() {
        let a = AreaVector::new(vec![1.0, 2.0, 3.0]).unwrap();
        let id = Perm::identity(3);
        assert!(labelled_equivalent(&a, &a, &id, 1e-3)
            .unwrap()
            .is_equivalent());
        let b = AreaVector::new(vec![4.0, 8.0, 12.0]).unwrap();
        assert_eq!(
            labelled_equivalent(&a, &b, &id, 1e-3).unwrap().verdict,
            Verdict::Inequivalent
        );
        assert!(labelled_equivalent(&a, &a, &Perm::identity(2), 1e-3).is_err());
    }
}
