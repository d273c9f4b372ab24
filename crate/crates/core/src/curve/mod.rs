//! Curve models and exhaustive point/place counting over extension fields.
//!
//! Three model kinds are supported: odd-characteristic hyperelliptic
//! y^2 = f(x), characteristic-2 hyperelliptic y^2 + h(x) y = f(x), and smooth
//! plane quartics. Counting always refers to the smooth projective model;
//! points at infinity of hyperelliptic models go through the canonical second
//! chart x = 1/u, y = v/u^(g+1).

use crate::error::{Error, Result};
use crate::ffield::series::{AsReduction, LaurentSeries};
use crate::ffield::{Embedding, Field, FieldElement, FieldRef, Poly};
use crate::zeta::{point_counts_to_place_count, LPolynomial};

/// Default number of field elements a single enumeration may touch.
pub const DEFAULT_BUDGET: u64 = 1 << 26;

/// Enumeration budget, overridable through the environment.
pub fn enumeration_budget() -> u64 {
    std::env::var("ZETACOVER_BUDGET")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

/// Exponent triples (a, b, c) of the 15 quartic monomials x^a y^b z^c in the
/// fixed serialization order.
pub const QUARTIC_MONOMIALS: [(u32, u32, u32); 15] = [
    (4, 0, 0),
    (3, 1, 0),
    (3, 0, 1),
    (2, 2, 0),
    (2, 1, 1),
    (2, 0, 2),
    (1, 3, 0),
    (1, 2, 1),
    (1, 1, 2),
    (1, 0, 3),
    (0, 4, 0),
    (0, 3, 1),
    (0, 2, 2),
    (0, 1, 3),
    (0, 0, 4),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveModel {
    /// y^2 = f(x), odd characteristic, f squarefree of degree 2g+1 or 2g+2.
    HyperOdd { f: Poly },
    /// y^2 + h(x) y = f(x) in characteristic 2.
    HyperChar2 { h: Poly, f: Poly },
    /// Homogeneous quartic form, coefficients in QUARTIC_MONOMIALS order.
    PlaneQuartic { field: FieldRef, coeffs: Vec<FieldElement> },
}

impl CurveModel {
    pub fn hyper_odd(f: Poly) -> Result<CurveModel> {
        if f.field().p() == 2 {
            return Err(Error::EvenCharacteristic);
        }
        Ok(CurveModel::HyperOdd { f })
    }

    pub fn hyper_char2(h: Poly, f: Poly) -> Result<CurveModel> {
        if h.field().p() != 2 {
            return Err(Error::OddCharacteristic);
        }
        Ok(CurveModel::HyperChar2 { h, f })
    }

    pub fn plane_quartic(field: &FieldRef, coeffs: Vec<FieldElement>) -> Result<CurveModel> {
        if coeffs.len() != 15 {
            return Err(Error::BadCoverSpec(format!(
                "plane quartic needs 15 coefficients, got {}",
                coeffs.len()
            )));
        }
        for &c in &coeffs {
            field.check(c);
        }
        Ok(CurveModel::PlaneQuartic { field: field.clone(), coeffs })
    }

    pub fn field(&self) -> &FieldRef {
        match self {
            CurveModel::HyperOdd { f } => f.field(),
            CurveModel::HyperChar2 { h, .. } => h.field(),
            CurveModel::PlaneQuartic { field, .. } => field,
        }
    }

    /// Genus of the underlying function field, without the goodness check.
    /// For char-2 models this runs the Artin-Schreier reduction of f/h^2 at
    /// every pole place; a return of < 1 flags a degenerate model.
    pub fn genus_raw(&self) -> Result<i64> {
        match self {
            CurveModel::HyperOdd { f } => {
                let d = f.degree().ok_or(Error::ZeroPolynomial)?;
                Ok((d as i64 + 1) / 2 - 1)
            }
            CurveModel::HyperChar2 { h, f } => char2_genus(h, f),
            CurveModel::PlaneQuartic { .. } => Ok(3),
        }
    }

    /// Genus of a good model.
    pub fn genus(&self) -> Result<u32> {
        if !self.is_good_model() {
            return Err(Error::SingularModel);
        }
        Ok(self.genus_raw()? as u32)
    }

    /// Nonsingularity of the model (both charts for hyperelliptic models; a
    /// closed-point search in degrees <= 9 for quartics, exact by Bezout on
    /// the partial-derivative system).
    pub fn is_good_model(&self) -> bool {
        match self {
            CurveModel::HyperOdd { f } => {
                f.degree().map_or(false, |d| d >= 3) && f.is_squarefree()
            }
            CurveModel::HyperChar2 { h, f } => char2_good_model(h, f),
            CurveModel::PlaneQuartic { field, coeffs } => quartic_smooth(field, coeffs),
        }
    }

    /// The same model with coefficients embedded into F_{q^n}.
    pub fn base_change(&self, n: u32) -> Result<CurveModel> {
        let base = self.field();
        let ext = Field::get(base.p(), base.k() * n)?;
        let emb = Embedding::new(base, &ext)?;
        Ok(match self {
            CurveModel::HyperOdd { f } => CurveModel::HyperOdd { f: emb.map_poly(f) },
            CurveModel::HyperChar2 { h, f } => {
                CurveModel::HyperChar2 { h: emb.map_poly(h), f: emb.map_poly(f) }
            }
            CurveModel::PlaneQuartic { coeffs, .. } => CurveModel::PlaneQuartic {
                field: ext.clone(),
                coeffs: coeffs.iter().map(|&c| emb.map(c)).collect(),
            },
        })
    }

    /// Number of points on the smooth projective model over F_{q^n}.
    pub fn count_points(&self, n: u32) -> Result<u64> {
        let base = self.field();
        let qn = (base.order() as u128).pow(n);
        let budget = enumeration_budget();
        if qn > budget as u128 {
            return Err(Error::BudgetExceeded { needed: qn, budget });
        }
        let model = if n == 1 { self.clone() } else { self.base_change(n)? };
        Ok(match &model {
            CurveModel::HyperOdd { f } => count_hyper_odd(f),
            CurveModel::HyperChar2 { h, f } => count_hyper_char2(h, f)?,
            CurveModel::PlaneQuartic { field, coeffs } => count_quartic(field, coeffs),
        })
    }

    /// Number of degree-d places, by Mobius inversion of the point counts.
    pub fn count_places(&self, d: u32) -> Result<u64> {
        let counts: Vec<u64> =
            (1..=d).map(|e| self.count_points(e)).collect::<Result<_>>()?;
        point_counts_to_place_count(&counts, d as usize)
    }

    /// Point counts N_1..N_m.
    pub fn counts_up_to(&self, m: u32) -> Result<Vec<u64>> {
        (1..=m).map(|n| self.count_points(n)).collect()
    }

    /// L-polynomial from exhaustive counting over F_q .. F_{q^g}.
    pub fn lpolynomial(&self) -> Result<LPolynomial> {
        let g = self.genus()?;
        let counts = self.counts_up_to(g)?;
        LPolynomial::from_counts(self.field().order(), g, &counts)
    }

    /// Direct y-per-x enumeration; an independent oracle for the
    /// character-sum counting path (hyperelliptic models only).
    pub fn count_points_naive(&self, n: u32) -> Result<u64> {
        let model = if n == 1 { self.clone() } else { self.base_change(n)? };
        match &model {
            CurveModel::HyperOdd { f } => {
                let field = f.field().clone();
                let q = field.order();
                let mut total = 0u64;
                for x in 0..q {
                    let v = f.eval_idx(x);
                    for y in 0..q {
                        if field.mul_idx(y, y) == v {
                            total += 1;
                        }
                    }
                }
                Ok(total + infinite_points_odd(f))
            }
            CurveModel::HyperChar2 { h, f } => {
                let field = f.field().clone();
                let q = field.order();
                let mut total = 0u64;
                for x in 0..q {
                    let hv = h.eval_idx(x);
                    let fv = f.eval_idx(x);
                    for y in 0..q {
                        let lhs = field.add_idx(field.mul_idx(y, y), field.mul_idx(hv, y));
                        if lhs == fv {
                            total += 1;
                        }
                    }
                }
                Ok(total + char2_infinite_points(h, f)?)
            }
            CurveModel::PlaneQuartic { field, coeffs } => Ok(count_quartic(field, coeffs)),
        }
    }
}

/// Points at infinity of y^2 = f(x): one (ramified) for odd degree, and for
/// even degree two or zero depending on the square class of the leading
/// coefficient.
fn infinite_points_odd(f: &Poly) -> u64 {
    let field = f.field();
    let d = f.deg_or_zero();
    if d % 2 == 1 {
        1
    } else if field.is_square(f.leading_coeff()) {
        2
    } else {
        0
    }
}

fn count_hyper_odd(f: &Poly) -> u64 {
    let field = f.field().clone();
    let q = field.order();
    let _ = field.square_table();
    let mut acc: i64 = q as i64;
    for x in 0..q {
        let v = f.eval_idx(x);
        if v != 0 {
            acc += if field.square_bit(v) { 1 } else { -1 };
        }
    }
    (acc as u64) + infinite_points_odd(f)
}

/// Fiber size over x = infinity for y^2 + h y = f through the second chart.
fn char2_infinite_points(h: &Poly, f: &Poly) -> Result<u64> {
    let field = h.field().clone();
    let g = char2_genus(h, f)?;
    debug_assert!(g >= 1);
    let g = g as usize;
    let hh0 = rev_coeff(h, g + 1);
    let ff0 = rev_coeff(f, 2 * g + 2);
    if hh0 == 0 {
        return Ok(1);
    }
    let inv = field.inv_idx(field.mul_idx(hh0, hh0))?;
    let v = field.mul_idx(ff0, inv);
    Ok(if field.trace_zero_bit(v) { 2 } else { 0 })
}

/// Coefficient of u^0 in u^n * p(1/u), i.e. the coefficient of x^n in p.
fn rev_coeff(p: &Poly, n: usize) -> u64 {
    p.coeff(n).index()
}

fn count_hyper_char2(h: &Poly, f: &Poly) -> Result<u64> {
    let field = h.field().clone();
    let q = field.order();
    let _ = field.trace_zero_table();
    let mut total = 0u64;
    for x in 0..q {
        let hv = h.eval_idx(x);
        if hv == 0 {
            total += 1;
        } else {
            let fv = f.eval_idx(x);
            let inv = field.inv_idx(field.mul_idx(hv, hv))?;
            let v = field.mul_idx(fv, inv);
            if field.trace_zero_bit(v) {
                total += 2;
            }
        }
    }
    Ok(total + char2_infinite_points(h, f)?)
}

fn eval_form(field: &Field, terms: &[(u32, u32, u32, u64)], x: u64, y: u64, z: u64) -> u64 {
    // powers up to 4
    let mut px = [1u64; 5];
    let mut py = [1u64; 5];
    let mut pz = [1u64; 5];
    for i in 1..5 {
        px[i] = field.mul_idx(px[i - 1], x);
        py[i] = field.mul_idx(py[i - 1], y);
        pz[i] = field.mul_idx(pz[i - 1], z);
    }
    let mut acc = 0u64;
    for &(a, b, c, coeff) in terms {
        if coeff == 0 {
            continue;
        }
        let m = field.mul_idx(field.mul_idx(px[a as usize], py[b as usize]), pz[c as usize]);
        acc = field.add_idx(acc, field.mul_idx(coeff, m));
    }
    acc
}

fn quartic_terms(coeffs: &[FieldElement]) -> Vec<(u32, u32, u32, u64)> {
    QUARTIC_MONOMIALS
        .iter()
        .zip(coeffs)
        .map(|(&(a, b, c), e)| (a, b, c, e.index()))
        .collect()
}

/// Formal partial derivative of a form given as exponent/coefficient terms.
fn form_partial(
    field: &Field,
    terms: &[(u32, u32, u32, u64)],
    var: usize,
) -> Vec<(u32, u32, u32, u64)> {
    let mut out = Vec::new();
    for &(a, b, c, coeff) in terms {
        let (e, da, db, dc) = match var {
            0 => (a, 1, 0, 0),
            1 => (b, 0, 1, 0),
            _ => (c, 0, 0, 1),
        };
        if e == 0 {
            continue;
        }
        let m = field.from_int(e as i64);
        let nc = field.mul_idx(coeff, m.index());
        if nc != 0 {
            out.push((a - da, b - db, c - dc, nc));
        }
    }
    out
}

fn for_each_projective_point(q: u64, mut visit: impl FnMut(u64, u64, u64)) {
    for y in 0..q {
        for z in 0..q {
            visit(1, y, z);
        }
    }
    for z in 0..q {
        visit(0, 1, z);
    }
    visit(0, 0, 1);
}

fn count_quartic(field: &FieldRef, coeffs: &[FieldElement]) -> u64 {
    let terms = quartic_terms(coeffs);
    let mut n = 0u64;
    for_each_projective_point(field.order(), |x, y, z| {
        if eval_form(field, &terms, x, y, z) == 0 {
            n += 1;
        }
    });
    n
}

/// Smoothness search over F_{q^j} for all j <= 9: the three partials cut out
/// at most 9 closed points (Bezout), each of residue degree at most 9, so the
/// search range is exact, not heuristic.
fn quartic_smooth(field: &FieldRef, coeffs: &[FieldElement]) -> bool {
    if coeffs.iter().all(|c| field.is_zero(*c)) {
        return false;
    }
    for j in 1..=9u32 {
        let ext = match Field::get(field.p(), field.k() * j) {
            Ok(e) => e,
            Err(_) => return false,
        };
        let emb = match Embedding::new(field, &ext) {
            Ok(e) => e,
            Err(_) => return false,
        };
        let ext_coeffs: Vec<FieldElement> = coeffs.iter().map(|&c| emb.map(c)).collect();
        let terms = quartic_terms(&ext_coeffs);
        let parts: Vec<Vec<(u32, u32, u32, u64)>> =
            (0..3).map(|v| form_partial(&ext, &terms, v)).collect();
        let mut singular = false;
        for_each_projective_point(ext.order(), |x, y, z| {
            if singular {
                return;
            }
            if eval_form(&ext, &terms, x, y, z) == 0
                && parts.iter().all(|p| eval_form(&ext, p, x, y, z) == 0)
            {
                singular = true;
            }
        });
        if singular {
            return false;
        }
    }
    true
}

// ---- characteristic-2 hyperelliptic machinery ----

/// Genus of y^2 + h y = f via Artin-Schreier reduction of f/h^2 at every pole
/// place: 2g - 2 = -4 + sum over ramified places of (m_P + 1) deg P.
/// Returns -1 for the degenerate (split) case.
pub(crate) fn char2_genus(h: &Poly, f: &Poly) -> Result<i64> {
    let field = h.field().clone();
    debug_assert_eq!(field.p(), 2);
    if h.is_zero() {
        return Err(Error::SingularModel);
    }
    if f.is_zero() {
        // y^2 = h y is split (y = 0 and y = h components)
        return Ok(-1);
    }
    let mut conductor: i64 = 0;
    // finite poles: the distinct irreducible factors of h
    let hfac = h.factor()?;
    for (pi, _) in &hfac.factors {
        let d = pi.deg_or_zero() as u32;
        let ext = Field::get(field.p(), field.k() * d)?;
        let emb = Embedding::new(&field, &ext)?;
        let pix = emb.map_poly(pi);
        let root = find_root(&pix).expect("irreducible factor has a root in its degree field");
        let fe = emb.map_poly(f);
        let he = emb.map_poly(h);
        if let Some(m) = reduce_at_finite(&fe, &he, root)? {
            conductor += (m + 1) * d as i64;
        }
    }
    // infinity
    if let Some(m) = reduce_at_inf(f, h)? {
        conductor += m + 1;
    }
    Ok((conductor - 2) / 2)
}

pub(crate) fn find_root(p: &Poly) -> Option<FieldElement> {
    let field = p.field();
    (0..field.order()).find(|&x| p.eval_idx(x) == 0).map(|x| field.el(x))
}

/// Pole order of the reduced Artin-Schreier class of f/h^2 at x = r, or None
/// when the class is regular there.
fn reduce_at_finite(f: &Poly, h: &Poly, r: FieldElement) -> Result<Option<i64>> {
    let field = f.field().clone();
    let fr = Poly::from_elements(&field, &f.taylor_shift(r));
    let hr = Poly::from_elements(&field, &h.taylor_shift(r));
    let e = hr.coeff_indices().iter().position(|&c| c != 0).unwrap_or(0);
    let sf = fr.coeff_indices().iter().position(|&c| c != 0).unwrap_or(0);
    let pole = 2 * e as i64 - sf as i64;
    if pole <= 0 {
        return Ok(None);
    }
    // accurate through the constant term after the t^(-2e) shift
    let prec = 2 * pole + 2 * e as i64 + 4;
    let unit_h = Poly::from_indices(&field, hr.coeff_indices()[e..].to_vec());
    let uh = LaurentSeries::from_poly(&unit_h, prec);
    let inv = uh.inverse()?;
    let inv2 = inv.mul(&inv);
    let fs = LaurentSeries::from_poly(&fr, prec + 2 * e as i64);
    let phi = fs.mul(&inv2).mul_monomial(field.one(), -2 * (e as i64));
    match phi.as_reduce()? {
        AsReduction::Ramified { pole_order } => Ok(Some(pole_order)),
        AsReduction::Regular(_) => Ok(None),
    }
}

fn reduce_at_inf(f: &Poly, h: &Poly) -> Result<Option<i64>> {
    let field = f.field().clone();
    let df = f.deg_or_zero() as i64;
    let dh = h.deg_or_zero() as i64;
    let pole = df - 2 * dh;
    if pole <= 0 {
        return Ok(None);
    }
    let prec = 2 * pole + 4;
    let frev = f.reverse_into(f.deg_or_zero());
    let hrev = h.reverse_into(h.deg_or_zero());
    let fs = LaurentSeries::from_poly(&frev, prec);
    let hs = LaurentSeries::from_poly(&hrev, prec);
    let inv = hs.inverse()?;
    let inv2 = inv.mul(&inv);
    let phi = fs.mul(&inv2).mul_monomial(field.one(), -pole);
    match phi.as_reduce()? {
        AsReduction::Ramified { pole_order } => Ok(Some(pole_order)),
        AsReduction::Regular(_) => Ok(None),
    }
}

/// Chart nonsingularity for v^2 + a(u) v = b(u): no u0 (over extensions up to
/// the degree of a) with a(u0) = 0 and a'(u0)^2 b(u0) = b'(u0)^2.
fn char2_chart_smooth(a: &Poly, b: &Poly) -> bool {
    let field = a.field().clone();
    if a.is_zero() {
        return false;
    }
    let da = a.deg_or_zero().max(1) as u32;
    for j in 1..=da {
        let ext = match Field::get(field.p(), field.k() * j) {
            Ok(e) => e,
            Err(_) => return false,
        };
        let emb = Embedding::new(&field, &ext).expect("same characteristic");
        let ae = emb.map_poly(a);
        let be = emb.map_poly(b);
        let dae = ae.derivative();
        let dbe = be.derivative();
        for x in 0..ext.order() {
            if ae.eval_idx(x) == 0 {
                let lhs = {
                    let t = dae.eval_idx(x);
                    ext.mul_idx(ext.mul_idx(t, t), be.eval_idx(x))
                };
                let rhs = {
                    let t = dbe.eval_idx(x);
                    ext.mul_idx(t, t)
                };
                if lhs == rhs {
                    return false;
                }
            }
        }
    }
    true
}

fn char2_good_model(h: &Poly, f: &Poly) -> bool {
    if h.is_zero() || f.is_zero() {
        return false;
    }
    let g = match char2_genus(h, f) {
        Ok(g) if g >= 1 => g as usize,
        _ => return false,
    };
    if h.deg_or_zero() > g + 1 || f.deg_or_zero() > 2 * g + 2 {
        return false;
    }
    if !char2_chart_smooth(h, f) {
        return false;
    }
    let hh = h.reverse_into(g + 1);
    let ff = f.reverse_into(2 * g + 2);
    char2_chart_smooth(&hh, &ff)
}
