//! End-to-end analysis of one surface, producing a serializable report.

use serde::Serialize;

use crate::elliptic::{genus1_report, FastenbergVerdict, FiberEntry, PlaceClass};
use crate::error::{Error, Result};
use crate::locus::{
    classify_isotrivial, classify_trichotomy, fiber_genus, singular_locus, structure_decomposition, IsotrivialForm,
    SingularLocus, StructureDecomposition, Trichotomy,
};
use crate::model::{BaseChangeSpec, DelsarteSurface, SurfaceInput, ValidationReport};
use crate::oracle::{away_from_zero, away_singularities_are_nodes, discriminant_oracle};
use crate::poly::UPoly;
use crate::rational::format_rational;
use crate::reduction::{classify_degenerate, detect_split_direction, kernel_direction, reduce_to_minimal, Degeneracy};
use crate::shioda::{lefschetz_counts, lefschetz_number_exhaustive};

#[derive(Clone, Debug, Default)]
pub struct AnalyzeOptions {
    /// Rerun formula-based results against their brute-force oracles.
    pub verify: bool,
    /// Compute the Lefschetz number of the exponent matrix.
    pub shioda: bool,
    /// `h^2` of the resolved surface, needed for a Picard number.
    pub h2: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InputEcho {
    pub monomials: Vec<[u32; 4]>,
    pub coefficients: Vec<String>,
    pub affine_equation: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegeneracySection {
    pub verdict: Degeneracy,
    pub split_vector: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimalSection {
    pub fibration: String,
    pub monomials: Vec<[u32; 2]>,
    pub substitution: BaseChangeSpec,
    pub exponent: i64,
    pub plane_equation: String,
    pub plane_rows: Vec<[u32; 3]>,
    pub curve_degree: u32,
    pub ell1_contained: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocusSection {
    pub k4: u64,
    pub degenerate: bool,
    pub constant: Option<String>,
    pub equation: Option<String>,
    pub rational_roots: Vec<String>,
}

impl From<&SingularLocus> for LocusSection {
    fn from(l: &SingularLocus) -> Self {
        LocusSection {
            k4: l.k4,
            degenerate: l.degenerate,
            constant: l.constant.as_ref().map(format_rational),
            equation: l.equation(),
            rational_roots: l.rational_roots.iter().map(format_rational).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind")]
pub enum TrichotomySection {
    Rejected { reason: String },
    Isotrivial { duplicate: usize },
    Superelliptic { form: String, a: u32, b: u32, c: u32, d: u32 },
    SemistableElsewhere,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberRow {
    pub place: String,
    pub class: PlaceClass,
    pub count: usize,
    pub symbol: String,
    pub euler: u32,
    pub conductor: u32,
    pub n: u32,
}

impl From<&FiberEntry> for FiberRow {
    fn from(f: &FiberEntry) -> Self {
        FiberRow {
            place: f.place.clone(),
            class: f.class,
            count: f.count,
            symbol: f.fiber.to_string(),
            euler: f.fiber.euler(),
            conductor: f.fiber.conductor(),
            n: f.fiber.n_value(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Genus1Section {
    pub weierstrass: Option<String>,
    pub c4: Option<String>,
    pub c6: Option<String>,
    pub delta: Option<String>,
    pub j: Option<String>,
    pub fibers: Vec<FiberRow>,
    pub gamma: Option<String>,
    pub nonconstant_j: bool,
    pub verdict: FastenbergVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct ShiodaSection {
    pub l0_count: u64,
    pub lambda: u64,
    pub h2: Option<u64>,
    pub rho: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationSection {
    /// Squarefree oracle polynomial, or why it was not computed.
    pub oracle: String,
    pub locus_matches_oracle: Option<bool>,
    pub kernel_matches_inverse: bool,
    pub away_singularities_are_nodes: Option<bool>,
    pub lambda_exhaustive: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub input: InputEcho,
    pub validation: ValidationReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degeneracy: Option<DegeneracySection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimal: Option<MinimalSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel: Option<[i64; 4]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub singular_locus: Option<LocusSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureDecomposition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fiber_genus: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trichotomy: Option<TrichotomySection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub isotrivial: Option<IsotrivialForm>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genus1: Option<Genus1Section>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shioda: Option<ShiodaSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationSection>,
}

pub fn analyze_input(input: &SurfaceInput, opts: &AnalyzeOptions) -> Result<AnalysisReport> {
    analyze(&input.to_surface()?, opts)
}

pub fn analyze(s: &DelsarteSurface, opts: &AnalyzeOptions) -> Result<AnalysisReport> {
    let input = InputEcho {
        monomials: s.rows().to_vec(),
        coefficients: s.coefficients().iter().map(format_rational).collect(),
        affine_equation: s.affine_equation().to_string(),
    };
    let validation = s.validate();
    let mut report = AnalysisReport {
        input,
        validation,
        degeneracy: None,
        minimal: None,
        kernel: None,
        singular_locus: None,
        structure: None,
        fiber_genus: None,
        trichotomy: None,
        isotrivial: None,
        genus1: None,
        shioda: None,
        verification: None,
    };

    let a = s.exponent_matrix();
    if let Some(v) = detect_split_direction(&a) {
        report.degeneracy = Some(DegeneracySection {
            verdict: classify_degenerate(&v),
            split_vector: v.entries().iter().map(ToString::to_string).collect(),
        });
        return Ok(report);
    }

    let red = reduce_to_minimal(s)?;
    let mf = &red.fibration;
    let plane = mf.plane();
    report.minimal = Some(MinimalSection {
        fibration: mf.to_string(),
        monomials: mf.monomials().iter().map(|m| [m.x, m.y]).collect(),
        substitution: red.substitution.clone(),
        exponent: red.exponent,
        plane_equation: plane.equation(),
        plane_rows: plane.rows.to_vec(),
        curve_degree: plane.degree,
        ell1_contained: plane.ell1_contained,
    });
    let k = mf.kernel_i64();
    report.kernel = Some(k);
    let locus = singular_locus(mf);
    report.singular_locus = Some(LocusSection::from(&locus));
    report.structure = Some(structure_decomposition(mf));

    let genus = fiber_genus(mf)?;
    report.fiber_genus = Some(genus);
    let tri = match classify_trichotomy(mf) {
        Ok(t) => Some(t),
        Err(Error::Rejected(reason)) => {
            report.trichotomy = Some(TrichotomySection::Rejected { reason });
            None
        }
        Err(e) => return Err(e),
    };
    if let Some(t) = &tri {
        report.trichotomy = Some(match t {
            Trichotomy::Isotrivial { duplicate } => TrichotomySection::Isotrivial { duplicate: *duplicate },
            Trichotomy::Superelliptic { form } => TrichotomySection::Superelliptic {
                form: form.to_string(),
                a: form.a,
                b: form.b,
                c: form.c,
                d: form.d,
            },
            Trichotomy::SemistableElsewhere => TrichotomySection::SemistableElsewhere,
        });
    }

    let mut constant_j = matches!(tri, Some(Trichotomy::Isotrivial { .. }));
    if genus == 1 {
        let g1 = genus1_report(mf)?;
        constant_j |= g1.verdict == FastenbergVerdict::ConstantJ;
        report.genus1 = Some(Genus1Section {
            weierstrass: g1.model.as_ref().map(ToString::to_string),
            c4: g1.invariants.as_ref().map(|i| i.c4.to_string()),
            c6: g1.invariants.as_ref().map(|i| i.c6.to_string()),
            delta: g1.invariants.as_ref().map(|i| i.delta.to_string()),
            j: g1.invariants.as_ref().map(|i| i.j.to_string()),
            fibers: g1.fibers.iter().map(FiberRow::from).collect(),
            gamma: g1.gamma.as_ref().map(format_rational),
            nonconstant_j: g1.nonconstant_j,
            verdict: g1.verdict,
        });
    }
    if constant_j && tri.is_some() {
        report.isotrivial = match classify_isotrivial(mf, red.exponent.unsigned_abs()) {
            Ok(f) => Some(f),
            Err(Error::NoIsotrivialMatch(_)) => None,
            Err(e) => return Err(e),
        };
    }

    if opts.shioda || opts.h2.is_some() {
        let (l0_count, lambda) = lefschetz_counts(&a)?;
        let rho = match opts.h2 {
            Some(h2) => Some(h2.checked_sub(lambda).ok_or_else(|| {
                Error::Rejected(format!("h2 = {h2} is smaller than the Lefschetz number {lambda}"))
            })?),
            None => None,
        };
        report.shioda = Some(ShiodaSection { l0_count, lambda, h2: opts.h2, rho });
    }

    if opts.verify {
        report.verification = Some(verify(s, &red.fibration, &locus, report.shioda.as_ref())?);
    }
    Ok(report)
}

fn verify(
    s: &DelsarteSurface,
    mf: &crate::reduction::MinimalFibration,
    locus: &SingularLocus,
    shioda: Option<&ShiodaSection>,
) -> Result<VerificationSection> {
    let k = mf.kernel_i64();
    let dir = kernel_direction(&mf.surface().exponent_matrix())?;
    let kernel_matches_inverse = {
        let kq: Vec<_> = k.iter().map(|&x| crate::rational::int(x)).collect();
        let pivot = (0..4).find(|&i| !dir[i].eq(&crate::rational::int(0)));
        match pivot {
            Some(i) => {
                let scale = &kq[i] / &dir[i];
                (0..4).all(|j| kq[j] == &dir[j] * &scale)
            }
            None => false,
        }
    };
    if !kernel_matches_inverse {
        return Err(Error::Internal(format!("kernel {k:?} is not proportional to (0,0,1,-1)A^-1")));
    }

    let eq = mf.surface().affine_equation();
    let (oracle, locus_matches_oracle) = match discriminant_oracle(&eq) {
        Ok(p) => {
            let matches = match locus.polynomial() {
                Some(expected) => {
                    let ok = away_from_zero(&p).monic() == expected.squarefree().monic();
                    if !ok {
                        return Err(Error::Internal(format!(
                            "oracle polynomial {p} disagrees with t^{} = {}",
                            locus.k4,
                            locus.constant_string()
                        )));
                    }
                    Some(true)
                }
                None => None,
            };
            (p.to_string(), matches)
        }
        Err(e @ (Error::DegreeOverflow { .. } | Error::GenericallySingular)) => (format!("skipped: {e}"), None),
        Err(e) => return Err(e),
    };
    let nodes = match away_singularities_are_nodes(&eq) {
        Ok(b) => Some(b),
        Err(Error::DegreeOverflow { .. } | Error::GenericallySingular) => None,
        Err(e) => return Err(e),
    };

    let lambda_exhaustive = match shioda {
        Some(sec) => {
            let l = lefschetz_number_exhaustive(&s.exponent_matrix())?;
            if l != sec.lambda {
                return Err(Error::Internal(format!("Lefschetz number {} disagrees with exhaustive loop {l}", sec.lambda)));
            }
            Some(l)
        }
        None => None,
    };
    Ok(VerificationSection {
        oracle,
        locus_matches_oracle,
        kernel_matches_inverse,
        away_singularities_are_nodes: nodes,
        lambda_exhaustive,
    })
}

/// The locus polynomial `t^k4 - c`, squarefree and monic, for callers comparing
/// against an oracle.
pub fn expected_locus_polynomial(locus: &SingularLocus) -> Option<UPoly> {
    locus.polynomial().map(|p| p.squarefree().monic())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surf(rows: [[u32; 4]; 4]) -> DelsarteSurface {
        DelsarteSurface::from_rows(rows).unwrap()
    }

    fn full() -> AnalyzeOptions {
        AnalyzeOptions { verify: true, shioda: true, h2: None }
    }

    #[test]
    fn first_example_report() {
        let r = analyze(&surf([[0, 2, 0, 1], [3, 0, 0, 0], [2, 0, 0, 1], [0, 0, 1, 2]]), &full()).unwrap();
        assert_eq!(r.kernel, Some([0, 2, -3, 1]));
        assert_eq!(r.singular_locus.as_ref().unwrap().equation.as_deref(), Some("t = -4/27"));
        let g1 = r.genus1.as_ref().unwrap();
        assert_eq!(g1.gamma.as_deref(), Some("2/3"));
        let v = r.verification.as_ref().unwrap();
        assert_eq!(v.locus_matches_oracle, Some(true));
        assert_eq!(v.lambda_exhaustive, Some(r.shioda.as_ref().unwrap().lambda));
    }

    #[test]
    fn degenerate_input_stops_early() {
        let r = analyze(&surf([[2, 0, 0, 4], [0, 2, 0, 4], [3, 1, 1, 1], [1, 3, 1, 1]]), &full()).unwrap();
        assert_eq!(r.degeneracy.unwrap().verdict, Degeneracy::SplitAfterBaseChange(2));
        assert!(r.minimal.is_none() && r.verification.is_none());
    }

    #[test]
    fn report_is_deterministic() {
        let s = surf([[0, 2, 0, 4], [3, 0, 0, 3], [0, 0, 0, 6], [0, 0, 6, 0]]);
        let a = serde_json::to_string(&analyze(&s, &full()).unwrap()).unwrap();
        let b = serde_json::to_string(&analyze(&s, &full()).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn isotrivial_section() {
        // y^2 + x^3 + t^6 + 1 reduces to y^2 + x^3 + 1 + t, j = 0.
        let r = analyze(&surf([[0, 2, 0, 4], [3, 0, 0, 3], [0, 0, 0, 6], [0, 0, 6, 0]]), &full()).unwrap();
        assert_eq!(r.minimal.as_ref().unwrap().exponent, 6);
        assert!(matches!(r.trichotomy, Some(TrichotomySection::Isotrivial { duplicate: 2 })));
        assert_eq!(r.genus1.as_ref().unwrap().verdict, FastenbergVerdict::ConstantJ);
        assert!(matches!(r.isotrivial, Some(IsotrivialForm::ProductLike { .. })));
    }

    #[test]
    fn h2_gives_rho() {
        let f = [[5, 0, 0, 0], [0, 5, 0, 0], [0, 0, 5, 0], [0, 0, 0, 5]];
        let r = analyze(&surf(f), &AnalyzeOptions { verify: false, shioda: true, h2: Some(53) }).unwrap();
        assert_eq!(r.shioda.unwrap().rho, Some(37));
    }
}
