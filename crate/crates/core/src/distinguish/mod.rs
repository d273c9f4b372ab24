//! The comparison pipeline: decide that two curves are non-isomorphic through
//! L-polynomials and cover data, and emit/verify self-contained certificates.

pub mod census;
mod certificate;

pub use census::{census, CensusReport};
pub use certificate::{verify_certificate, verify_certificate_value, Certificate};

use crate::cover::{enumerate_double_covers, AsCoverSpec};
use crate::curve::CurveModel;
use crate::error::{Error, Result};
use crate::zeta::{choose_ell, smallest_separating_prime};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The L-polynomials of the curves themselves differ.
    DistinctL,
    /// Equal L-polynomials, but the sign-normalized per-orbit trace multisets
    /// of the rational double covers differ over F_{q^n}.
    DistinctByCovers { extension: u32 },
    /// Split counts of a configured pair of Artin-Schreier covers differ.
    DistinctByAsCovers,
    /// Nothing separated the curves within the configured limits. This is a
    /// verdict, not an error: the method is one-sided.
    Undistinguished { depth: u32 },
}

impl Verdict {
    pub fn distinguished(&self) -> bool {
        !matches!(self, Verdict::Undistinguished { .. })
    }
}

#[derive(Clone, Debug)]
pub struct ComparePolicy {
    /// Largest extension degree for cover comparison.
    pub max_extension: u32,
    /// Optional explicit Artin-Schreier covers (one per curve, shift 0) to
    /// compare by split-count multisets over all shifts.
    pub as_specs: Option<Box<(AsCoverSpec, AsCoverSpec)>>,
}

impl Default for ComparePolicy {
    fn default() -> Self {
        ComparePolicy { max_extension: 5, as_specs: None }
    }
}

#[derive(Clone, Debug)]
pub struct CompareOutcome {
    pub verdict: Verdict,
    pub certificate: Option<Certificate>,
}

/// Sign-normalized per-orbit trace multiset of the rational double covers of
/// a curve over F_{q^n}: sorted (orbit size, |trace|) pairs.
pub fn cover_trace_multiset(model: &CurveModel, n: u32) -> Result<Vec<(usize, u64)>> {
    enumerate_double_covers(model, n)?.orbit_trace_summary()
}

/// Split counts of an Artin-Schreier cover across all shifts a in F_p,
/// as a sorted multiset (twists of one another, so order carries no meaning).
pub fn as_split_counts(spec: &AsCoverSpec, n: u32) -> Result<Vec<u64>> {
    let p = spec.double.base().field().p();
    let mut out = Vec::new();
    for a in 0..p {
        let s = AsCoverSpec::new(spec.double.clone(), spec.u.clone(), spec.v.clone(), a)?;
        out.push(s.count_points(n)?);
    }
    out.sort_unstable();
    Ok(out)
}

pub fn compare_curves(
    x: &CurveModel,
    y: &CurveModel,
    policy: &ComparePolicy,
) -> Result<CompareOutcome> {
    if x.field().id() != y.field().id() {
        return Err(Error::BaseFieldMismatch);
    }
    let gx = x.genus()?;
    let gy = y.genus()?;
    if gx != gy {
        return Err(Error::GenusMismatch(gx, gy));
    }
    let lx = x.lpolynomial()?;
    let ly = y.lpolynomial()?;
    if lx != ly {
        let ell = choose_ell(&lx, &ly)?;
        let cert = Certificate::distinct_l(x, y, ell, &lx, &ly)?;
        return Ok(CompareOutcome { verdict: Verdict::DistinctL, certificate: Some(cert) });
    }
    // Equal L-polynomials: walk cover data. Kummer covers exist only in odd
    // characteristic and only for hyperelliptic models.
    let kummer_applies = matches!(x, CurveModel::HyperOdd { .. });
    if kummer_applies {
        for n in 1..=policy.max_extension {
            let mx = cover_trace_multiset(x, n)?;
            let my = cover_trace_multiset(y, n)?;
            if mx != my {
                let ell = separating_prime_for_multisets(&mx, &my);
                let cert = Certificate::distinct_by_covers(x, y, n, ell, &mx, &my)?;
                return Ok(CompareOutcome {
                    verdict: Verdict::DistinctByCovers { extension: n },
                    certificate: Some(cert),
                });
            }
        }
    }
    if let Some(pair) = &policy.as_specs {
        let (sx, sy) = (&pair.0, &pair.1);
        let cx = as_split_counts(sx, 1)?;
        let cy = as_split_counts(sy, 1)?;
        if cx != cy {
            let ell = separating_prime_for_counts(&cx, &cy);
            let cert = Certificate::distinct_by_as(x, y, sx, sy, ell, &cx, &cy)?;
            return Ok(CompareOutcome {
                verdict: Verdict::DistinctByAsCovers,
                certificate: Some(cert),
            });
        }
    }
    Ok(CompareOutcome {
        verdict: Verdict::Undistinguished { depth: policy.max_extension },
        certificate: None,
    })
}

/// Smallest prime modulo which the two (size, trace) multisets differ.
pub(crate) fn separating_prime_for_multisets(a: &[(usize, u64)], b: &[(usize, u64)]) -> u64 {
    if a.len() != b.len() {
        return 2;
    }
    let mut ell = 2u64;
    loop {
        if crate::zeta::is_prime_u64(ell) {
            let red = |m: &[(usize, u64)]| {
                let mut v: Vec<(usize, u64)> = m.iter().map(|&(s, t)| (s, t % ell)).collect();
                v.sort_unstable();
                v
            };
            if red(a) != red(b) {
                return ell;
            }
        }
        ell += 1;
    }
}

pub(crate) fn separating_prime_for_counts(a: &[u64], b: &[u64]) -> u64 {
    let ai: Vec<i128> = a.iter().map(|&x| x as i128).collect();
    let bi: Vec<i128> = b.iter().map(|&x| x as i128).collect();
    // multisets are sorted; fall back to termwise comparison of residues
    let mut ell = 2u64;
    loop {
        if crate::zeta::is_prime_u64(ell) {
            let red = |m: &[i128]| {
                let mut v: Vec<i128> = m.iter().map(|&x| x % ell as i128).collect();
                v.sort_unstable();
                v
            };
            if red(&ai) != red(&bi) {
                return ell;
            }
        }
        ell += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::{Field, Poly};

    fn model(p: u64, coeffs: &[i64]) -> CurveModel {
        let f = Field::get(p, 1).unwrap();
        CurveModel::hyper_odd(Poly::from_int_coeffs(&f, coeffs)).unwrap()
    }

    #[test]
    fn example5_distinct_at_depth_one() {
        let c1 = model(7, &[4, 0, 3, 0, 0, 0, 1]);
        let c2 = model(7, &[1, 0, 5, 0, 5, 0, 1]);
        let out = compare_curves(&c1, &c2, &ComparePolicy::default()).unwrap();
        assert_eq!(out.verdict, Verdict::DistinctByCovers { extension: 1 });
        let cert = out.certificate.unwrap();
        assert!(verify_certificate(&cert.to_json_string()).unwrap());
    }

    #[test]
    fn example2_distinct_at_depth_five() {
        let c1 = model(3, &[1, 2, 0, 0, 1, 1]);
        let c2 = model(3, &[2, 2, 1, 1, 0, 1]);
        let out = compare_curves(&c1, &c2, &ComparePolicy::default()).unwrap();
        assert_eq!(out.verdict, Verdict::DistinctByCovers { extension: 5 });
    }

    #[test]
    fn curve_never_distinguished_from_itself() {
        let c = model(3, &[1, 2, 0, 0, 1, 1]);
        for depth in [1, 3, 5] {
            let out = compare_curves(
                &c,
                &c.clone(),
                &ComparePolicy { max_extension: depth, as_specs: None },
            )
            .unwrap();
            assert_eq!(out.verdict, Verdict::Undistinguished { depth });
        }
    }

    #[test]
    fn compare_is_symmetric() {
        let c1 = model(7, &[4, 0, 3, 0, 0, 0, 1]);
        let c2 = model(7, &[1, 0, 5, 0, 5, 0, 1]);
        let a = compare_curves(&c1, &c2, &ComparePolicy::default()).unwrap();
        let b = compare_curves(&c2, &c1, &ComparePolicy::default()).unwrap();
        assert_eq!(a.verdict, b.verdict);
    }

    #[test]
    fn distinct_l_certificate() {
        // two curves over F_3 with different counts
        let c1 = model(3, &[-1, 0, 0, 0, 0, 1]); // N_1 = 4
        let c2 = model(3, &[1, 2, 0, 0, 1, 1]); // N_1 = 3
        let out = compare_curves(&c1, &c2, &ComparePolicy::default()).unwrap();
        assert_eq!(out.verdict, Verdict::DistinctL);
        let cert = out.certificate.unwrap();
        assert!(verify_certificate(&cert.to_json_string()).unwrap());
    }

    #[test]
    fn genus_mismatch_rejected() {
        let c1 = model(3, &[-1, 0, 0, 0, 0, 1]);
        let c3 = model(3, &[1, 2, 0, 0, 0, 1, 0, 1]); // degree 7: genus 3
        assert!(matches!(
            compare_curves(&c1, &c3, &ComparePolicy::default()),
            Err(Error::GenusMismatch(2, 3))
        ));
    }
}
