//! One-call pipeline from a sampled curve to its invariants.

use alloc::string::String;

use crate::arrangement::{build_arrangement, face_areas, AreaVector, Arrangement};
use crate::curve::{check_generic, resample, ClosedCurve, GenericityOptions, GenericityReport};
use crate::diagram::{gauss_code, symmetry_group, GaussCode, SymmetryGroup};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AnalysisOptions {
    pub genericity: GenericityOptions,
    /// Resample every loop to this many equal-arclength points first.
    pub resample: Option<usize>,
}

/// Everything derived from a generic curve.
#[derive(Debug, Clone)]
pub struct Structure {
    pub arrangement: Arrangement,
    pub areas: AreaVector,
    pub gauss: GaussCode,
    pub symmetry: SymmetryGroup,
}

impl Structure {
    pub fn canonical_code(&self) -> &str {
        self.symmetry.canonical_code()
    }
}

#[derive(Debug, Clone)]
pub struct AnalyzedCurve {
    pub curve: ClosedCurve,
    pub report: GenericityReport,
    /// `None` when the curve is not generic.
    pub structure: Option<Structure>,
}

impl AnalyzedCurve {
    pub fn is_generic(&self) -> bool {
        self.report.is_generic
    }

    pub fn structure(&self) -> Result<&Structure> {
        self.structure.as_ref().ok_or(Error::NotGeneric {
            violations: self.report.violations.len(),
        })
    }

    pub fn canonical_code(&self) -> Option<String> {
        self.structure
            .as_ref()
            .map(|s| String::from(s.canonical_code()))
    }
}

/// Certifies genericity and, when it holds, builds the arrangement, the face
/// areas, the Gauss code and the symmetry group.
pub fn analyze(curve: ClosedCurve, opts: &AnalysisOptions) -> Result<AnalyzedCurve> {
    let curve = match opts.resample {
        Some(n) => resample(&curve, n)?,
        None => curve,
    };
    let report = check_generic(&curve, &opts.genericity);
    let structure = if report.is_generic {
        let arrangement = build_arrangement(&curve, &report)?;
        let areas = face_areas(&arrangement)?;
        let gauss = gauss_code(&arrangement);
        let symmetry = symmetry_group(&arrangement);
        Some(Structure {
            arrangement,
            areas,
            gauss,
            symmetry,
        })
    } else {
        None
    };
    Ok(AnalyzedCurve {
        curve,
        report,
        structure,
    })
}
