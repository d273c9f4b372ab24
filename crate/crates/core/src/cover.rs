//! Unramified covers of hyperelliptic curves: Kummer double covers indexed by
//! even-degree factors of f, their Frobenius orbits and Prym (elliptic)
//! traces, and Artin-Schreier p-covers of a double cover with split counting
//! above poles via local reduction.

use crate::curve::CurveModel;
use crate::error::{Error, Result};
use crate::ffield::series::{AsReduction, LaurentSeries};
use crate::ffield::{Embedding, Field, FieldElement, FieldRef, Poly};

/// An unramified double cover w^2 = twist * f1(x) of a hyperelliptic curve
/// y^2 = f(x), determined by a monic even-degree factor f1 of f and a square
/// class representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCoverSpec {
    base: CurveModel,
    f1: Poly,
    twist: FieldElement,
}

impl DoubleCoverSpec {
    pub fn new(base: CurveModel, f1: Poly, twist: FieldElement) -> Result<DoubleCoverSpec> {
        let f = match &base {
            CurveModel::HyperOdd { f } => f,
            _ => {
                return Err(Error::BadCoverSpec(
                    "double covers need an odd-characteristic hyperelliptic base".into(),
                ))
            }
        };
        if !base.is_good_model() {
            return Err(Error::SingularModel);
        }
        let field = f.field().clone();
        field.check(twist);
        if field.is_zero(twist) {
            return Err(Error::BadCoverSpec("twist must be nonzero".into()));
        }
        if f1.field().id() != field.id() {
            return Err(Error::FieldMismatch);
        }
        if !f1.is_monic() || f1.deg_or_zero() % 2 != 0 || f1.deg_or_zero() == 0 {
            return Err(Error::BadCoverSpec("f1 must be monic of positive even degree".into()));
        }
        if !f1.divides(f) {
            return Err(Error::BadCoverSpec("f1 must divide f".into()));
        }
        if f1.deg_or_zero() == f.deg_or_zero() {
            return Err(Error::BadCoverSpec("f1 must be a proper factor".into()));
        }
        Ok(DoubleCoverSpec { base, f1, twist })
    }

    pub fn base(&self) -> &CurveModel {
        &self.base
    }
    pub fn f1(&self) -> &Poly {
        &self.f1
    }
    pub fn twist(&self) -> FieldElement {
        self.twist
    }

    pub fn base_poly(&self) -> &Poly {
        match &self.base {
            CurveModel::HyperOdd { f } => f,
            _ => unreachable!("validated at construction"),
        }
    }

    fn extended(&self, n: u32) -> Result<(FieldRef, Poly, Poly, FieldElement)> {
        let field = self.base.field();
        let ext = Field::get(field.p(), field.k() * n)?;
        let emb = Embedding::new(field, &ext)?;
        Ok((
            ext.clone(),
            emb.map_poly(self.base_poly()),
            emb.map_poly(&self.f1),
            emb.map(self.twist),
        ))
    }

    /// Points of the smooth double-cover model over F_{q^n} (q the field of
    /// the spec). Fibers over Weierstrass zeros of f1 are governed by the
    /// complementary factor f2 = f/f1, the local unit there.
    pub fn count_points(&self, n: u32) -> Result<u64> {
        let (ext, f, f1, c) = self.extended(n)?;
        let q = ext.order();
        let budget = crate::curve::enumeration_budget();
        if q as u128 > budget as u128 {
            return Err(Error::BudgetExceeded { needed: q as u128, budget });
        }
        let f2 = f.divrem(&f1)?.0;
        let _ = ext.square_table();
        let chi = |v: u64| -> i64 {
            if v == 0 {
                0
            } else if ext.square_bit(v) {
                1
            } else {
                -1
            }
        };
        let mut total: i64 = 0;
        for x in 0..q {
            let fv = f.eval_idx(x);
            if fv != 0 {
                let base_pts = 1 + chi(fv);
                if base_pts > 0 {
                    let wv = ext.mul_idx(c.index(), f1.eval_idx(x));
                    total += base_pts * (1 + chi(wv));
                }
            } else {
                let f1v = f1.eval_idx(x);
                let unit = if f1v != 0 { f1v } else { f2.eval_idx(x) };
                total += 1 + chi(ext.mul_idx(c.index(), unit));
            }
        }
        // infinity: the leading local unit is lc(f)^(deg f1) times a square,
        // and deg f1 is even, so only the twist class decides the fiber
        let d = f.deg_or_zero();
        if d % 2 == 1 {
            total += 1 + chi(c.index());
        } else {
            total += (1 + chi(f.leading_coeff().index())) * (1 + chi(c.index()));
        }
        Ok(total as u64)
    }

    /// Frobenius trace of the elliptic Prym factor over F_{q^n}:
    /// a_E = N_base - N_cover. Requires a genus-2 base.
    pub fn prym_trace(&self, n: u32) -> Result<i64> {
        let g = self.base.genus()?;
        if g != 2 {
            return Err(Error::GenusMismatch(g, 2));
        }
        let nb = self.base.count_points(n)? as i64;
        let nc = self.count_points(n)? as i64;
        let a = nb - nc;
        let qn = (self.base.field().order() as i128).pow(n);
        if (a as i128) * (a as i128) > 4 * qn {
            return Err(Error::WeilViolation(format!(
                "Prym trace {a} exceeds the bound over extension {n}"
            )));
        }
        Ok(a)
    }
}

/// The rational double covers of a base curve over F_{q^n}, grouped into
/// Frobenius orbits. Each class stands for a twist pair.
#[derive(Clone, Debug)]
pub struct DoubleCovers {
    /// base model over the extension field
    pub base_ext: CurveModel,
    /// canonical nonsquare of the extension field
    pub nonsquare: FieldElement,
    /// orbits sorted by canonical representative; members sorted within
    pub orbits: Vec<Vec<Poly>>,
}

impl DoubleCovers {
    pub fn class_count(&self) -> usize {
        self.orbits.iter().map(|o| o.len()).sum()
    }

    pub fn spec(&self, f1: &Poly, twist: FieldElement) -> Result<DoubleCoverSpec> {
        DoubleCoverSpec::new(self.base_ext.clone(), f1.clone(), twist)
    }

    /// One (orbit size, |trace|) entry per orbit, sorted; verifies that all
    /// orbit members report the same trace over the field of definition.
    pub fn orbit_trace_summary(&self) -> Result<Vec<(usize, u64)>> {
        let field = self.base_ext.field().clone();
        let one = field.one();
        let mut out = Vec::new();
        for orbit in &self.orbits {
            let mut traces = Vec::new();
            for f1 in orbit {
                let spec = self.spec(f1, one)?;
                traces.push(spec.prym_trace(1)?);
            }
            let t0 = traces[0].unsigned_abs();
            if traces.iter().any(|t| t.unsigned_abs() != t0) {
                return Err(Error::InconsistentCounts(format!(
                    "Frobenius-orbit members disagree: {traces:?}"
                )));
            }
            out.push((orbit.len(), t0));
        }
        out.sort_unstable();
        Ok(out)
    }
}

/// Normalize a class representative under the complement identification
/// (meaningful when deg f is even: {f1} ~ {f/f1 made monic}).
fn class_rep(f: &Poly, f1: Poly) -> Poly {
    if f.deg_or_zero() % 2 == 1 {
        return f1;
    }
    let comp = f.divrem(&f1).expect("factor divides").0.monic().1;
    f1.min(comp)
}

/// Enumerate the rational unramified double covers of a hyperelliptic base
/// over F_{q^n}: one class per nontrivial even-degree monic factor of f
/// modulo complements, partitioned into Frobenius orbits.
pub fn enumerate_double_covers(base: &CurveModel, n: u32) -> Result<DoubleCovers> {
    match base {
        CurveModel::HyperOdd { .. } => {}
        _ => return Err(Error::EvenCharacteristic),
    }
    if !base.is_good_model() {
        return Err(Error::SingularModel);
    }
    let q = base.field().order();
    let base_ext = base.base_change(n)?;
    let f = match &base_ext {
        CurveModel::HyperOdd { f } => f.clone(),
        _ => unreachable!(),
    };
    let ext = f.field().clone();
    let fac = f.factor()?;
    let parts: Vec<Poly> = fac.factors.iter().map(|(p, _)| p.clone()).collect();
    let s = parts.len();
    let full_mask: u32 = (1 << s) - 1;
    let mut classes: Vec<Poly> = Vec::new();
    for mask in 1u32..=full_mask {
        if mask == full_mask && f.deg_or_zero() % 2 == 0 {
            continue; // the trivial class
        }
        let deg: usize = parts
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, p)| p.deg_or_zero())
            .sum();
        if deg % 2 != 0 || deg == 0 {
            continue;
        }
        let mut f1 = Poly::one(&ext);
        for (i, p) in parts.iter().enumerate() {
            if mask >> i & 1 == 1 {
                f1 = f1.mul(p);
            }
        }
        let rep = class_rep(&f, f1);
        if !classes.contains(&rep) {
            classes.push(rep);
        }
    }
    // Frobenius orbits under coefficientwise a -> a^q
    let frob = |poly: &Poly| -> Poly {
        let coeffs: Vec<FieldElement> =
            poly.coeff_elements().iter().map(|&a| ext.pow(a, q)).collect();
        class_rep(&f, Poly::from_elements(&ext, &coeffs))
    };
    let mut remaining = classes;
    remaining.sort();
    let mut orbits = Vec::new();
    while let Some(start) = remaining.first().cloned() {
        let mut orbit = vec![start.clone()];
        let mut cur = frob(&start);
        while cur != start {
            orbit.push(cur.clone());
            cur = frob(&cur);
        }
        remaining.retain(|p| !orbit.contains(p));
        orbit.sort();
        orbits.push(orbit);
    }
    orbits.sort_by(|a, b| a[0].cmp(&b[0]));
    let nonsquare = ext.canonical_nonsquare()?;
    Ok(DoubleCovers { base_ext, nonsquare, orbits })
}

/// Artin-Schreier p-cover z^p - z = u(x) + v(x) w + a of a Kummer double
/// cover, with w the cover coordinate (w^2 = twist * f1). Construction
/// certifies the cover unramified by local reduction at every pole place.
#[derive(Clone, Debug)]
pub struct AsCoverSpec {
    pub double: DoubleCoverSpec,
    pub u: Poly,
    pub v: Poly,
    /// shift a in the prime field
    pub shift: u64,
}

impl AsCoverSpec {
    pub fn new(double: DoubleCoverSpec, u: Poly, v: Poly, shift: u64) -> Result<AsCoverSpec> {
        let field = double.base.field().clone();
        if u.field().id() != field.id() || v.field().id() != field.id() {
            return Err(Error::FieldMismatch);
        }
        let spec = AsCoverSpec { double, u, v, shift: shift % field.p() };
        spec.certify_unramified()?;
        Ok(spec)
    }

    /// Local reduction must terminate without a pole of order prime to p at
    /// every place over x = infinity (the only poles of u + v w). When the
    /// twist class is a nonsquare the branches live in the quadratic
    /// extension and the reduction runs there; the pullback to the full
    /// cover multiplies pole orders by at most 2, coprime to p, so the
    /// verdict transfers.
    fn certify_unramified(&self) -> Result<()> {
        let field = self.double.base.field().clone();
        let ext_deg = if field.is_square(self.double.twist) { 1 } else { 2 };
        let ext = Field::get(field.p(), field.k() * ext_deg)?;
        let emb = Embedding::new(&field, &ext)?;
        let cf1 = emb.map_poly(&self.double.f1).scale(emb.map(self.double.twist));
        let u = emb.map_poly(&self.u);
        let v = emb.map_poly(&self.v);
        for red in infinite_branch_reductions(&cf1, &u, &v)? {
            if let AsReduction::Ramified { pole_order } = red {
                return Err(Error::RamifiedCover { pole_order });
            }
        }
        Ok(())
    }

    /// Points of the AS cover over F_{q^n}: every point of the double cover
    /// contributes p when the absolute trace of the (reduced) g-value plus
    /// the shift vanishes, 0 otherwise.
    pub fn count_points(&self, n: u32) -> Result<u64> {
        let field = self.double.base.field().clone();
        let p = field.p();
        let ext = Field::get(field.p(), field.k() * n)?;
        let budget = crate::curve::enumeration_budget();
        if ext.order() as u128 > budget as u128 {
            return Err(Error::BudgetExceeded { needed: ext.order() as u128, budget });
        }
        let emb = Embedding::new(&field, &ext)?;
        let f = emb.map_poly(self.double.base_poly());
        let f1 = emb.map_poly(&self.double.f1);
        let c = emb.map(self.double.twist);
        let u = emb.map_poly(&self.u);
        let v = emb.map_poly(&self.v);
        let f2 = f.divrem(&f1)?.0;
        let shift = self.shift;
        let _ = ext.square_table();
        let _ = ext.trace_zero_table();
        let q = ext.order();
        let split = |val: u64| -> u64 {
            let t = ext.add_idx(val, shift);
            if ext.trace_zero_bit(t) {
                p
            } else {
                0
            }
        };
        let mut total = 0u64;
        for x in 0..q {
            let fv = f.eval_idx(x);
            let y_count: u64 = if fv == 0 {
                1
            } else if ext.square_bit(fv) {
                2
            } else {
                0
            };
            if y_count == 0 {
                continue;
            }
            let cf1v = ext.mul_idx(c.index(), f1.eval_idx(x));
            if cf1v != 0 {
                if ext.square_bit(cf1v) {
                    let w = ext.sqrt(ext.el(cf1v))?;
                    for wv in [w, ext.neg(w)] {
                        let val =
                            ext.add_idx(u.eval_idx(x), ext.mul_idx(v.eval_idx(x), wv.index()));
                        total += y_count * split(val);
                    }
                }
            } else {
                // zero of f1: the lone base Weierstrass point there, w = 0 upstairs
                debug_assert_eq!(fv, 0);
                let unit = ext.mul_idx(c.index(), f2.eval_idx(x));
                let w_count: u64 = if ext.square_bit(unit) { 2 } else { 0 };
                total += w_count * split(u.eval_idx(x));
            }
        }
        // infinity: rational points are (base branch, w branch) pairs and the
        // g-value only depends on the w branch
        let d = f.deg_or_zero();
        let base_branches: u64 = if d % 2 == 1 {
            1
        } else if ext.square_bit(f.leading_coeff().index()) {
            2
        } else {
            0
        };
        if base_branches > 0 && ext.is_square(c) {
            let cf1 = f1.scale(c);
            for red in infinite_branch_reductions(&cf1, &u, &v)? {
                match red {
                    AsReduction::Regular(val) => {
                        total += base_branches * split(val.index());
                    }
                    AsReduction::Ramified { pole_order } => {
                        return Err(Error::RamifiedCover { pole_order });
                    }
                }
            }
        }
        Ok(total)
    }
}

/// Reduced values of g = u(x) + v(x) w at the places of w^2 = cf1(x) over
/// x = infinity. Empty when the leading class is a nonsquare (the place is
/// inert and carries no rational branches).
pub fn infinite_branch_reductions(cf1: &Poly, u: &Poly, v: &Poly) -> Result<Vec<AsReduction>> {
    let field = cf1.field().clone();
    let d1 = cf1.deg_or_zero();
    if d1 % 2 != 0 {
        return Err(Error::BadCoverSpec("f1 must have even degree".into()));
    }
    let lead = cf1.leading_coeff();
    if !field.is_square(lead) {
        return Ok(Vec::new());
    }
    let end = (u.deg_or_zero() + v.deg_or_zero() + d1 + 8) as i64;
    // w = +-sqrt(cf1(1/s)), a Laurent series of valuation -deg(f1)/2
    let w_plus = LaurentSeries::from_poly_inv(cf1, end).sqrt()?;
    let us = LaurentSeries::from_poly_inv(u, end);
    let vs = LaurentSeries::from_poly_inv(v, end);
    let mut out = Vec::new();
    for sign in [1i64, -1] {
        let w = w_plus.mul_monomial(field.from_int(sign), 0);
        let g = us.add(&vs.mul(&w));
        out.push(g.as_reduce()?);
    }
    Ok(out)
}

/// Two-torsion data of the Jacobian of y^2 = f(x), read off the factorization
/// type of f: degrees of the irreducible factors, the minimal extension with
/// full 2-torsion (every factor degree divides m), and the rational
/// 2-torsion order at each level dividing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoTorsionProfile {
    pub factor_degrees: Vec<usize>,
    /// lcm of the factor degrees
    pub full_level: u64,
    /// (extension degree m dividing full_level, #J[2](F_{q^m}))
    pub orders: Vec<(u64, u64)>,
}

impl TwoTorsionProfile {
    pub fn full_over(&self, m: u64) -> bool {
        m % self.full_level == 0
    }

    pub fn order_over(&self, m: u64) -> u64 {
        two_torsion_order(&self.factor_degrees, m)
    }
}

/// Number of rational 2-torsion points over F_{q^m}, counted through
/// even-degree stable factorizations modulo complements.
fn two_torsion_order(degrees: &[usize], m: u64) -> u64 {
    let total: usize = degrees.iter().sum();
    let mut split_degrees = Vec::new();
    for &d in degrees {
        let g = gcd(d as u64, m) as usize;
        for _ in 0..g {
            split_degrees.push(d / g);
        }
    }
    let s = split_degrees.len() as u32;
    let even_subsets: u64 = if split_degrees.iter().all(|d| d % 2 == 0) {
        1u64 << s
    } else {
        1u64 << (s - 1)
    };
    if total % 2 == 1 {
        even_subsets
    } else {
        even_subsets / 2
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn two_torsion_profile(f: &Poly) -> Result<TwoTorsionProfile> {
    if f.field().p() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if !f.is_squarefree() {
        return Err(Error::SingularModel);
    }
    let fac = f.factor()?;
    let factor_degrees = fac.degrees();
    let full_level = factor_degrees.iter().fold(1u64, |acc, &d| {
        let d = d as u64;
        acc / gcd(acc, d) * d
    });
    let mut orders = Vec::new();
    for m in 1..=full_level {
        if full_level % m == 0 {
            orders.push((m, two_torsion_order(&factor_degrees, m)));
        }
    }
    Ok(TwoTorsionProfile { factor_degrees, full_level, orders })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FieldRef {
        Field::get(3, 1).unwrap()
    }

    fn model3(coeffs: &[i64]) -> CurveModel {
        CurveModel::hyper_odd(Poly::from_int_coeffs(&f3(), coeffs)).unwrap()
    }

    /// y^2 = x^5 - 1
    fn ex3_c1() -> CurveModel {
        model3(&[-1, 0, 0, 0, 0, 1])
    }
    /// y^2 = x^5 + 1
    fn ex3_c2() -> CurveModel {
        model3(&[1, 0, 0, 0, 0, 1])
    }

    #[test]
    fn unique_cover_of_x5_minus_1() {
        let covers = enumerate_double_covers(&ex3_c1(), 1).unwrap();
        assert_eq!(covers.class_count(), 1);
        let f1 = covers.orbits[0][0].clone();
        assert_eq!(f1, Poly::from_int_coeffs(&f3(), &[1, 1, 1, 1, 1]));
        let field = covers.base_ext.field().clone();
        let pinned = covers.spec(&f1, field.one()).unwrap();
        assert_eq!(pinned.count_points(1).unwrap(), 6);
        let other = covers.spec(&f1, covers.nonsquare).unwrap();
        assert_eq!(other.count_points(1).unwrap(), 2);
    }

    #[test]
    fn irreducible_f_has_no_rational_covers() {
        // the first example's first curve: 2 times an irreducible sextic
        let c1 = model3(&[2, 0, 0, 2, 2, 0, 2]);
        let covers = enumerate_double_covers(&c1, 1).unwrap();
        assert_eq!(covers.class_count(), 0);
    }

    #[test]
    fn twist_pair_counts_sum_to_twice_base() {
        let base = ex3_c1();
        for n in 1..=2u32 {
            let covers = enumerate_double_covers(&base, n).unwrap();
            let field = covers.base_ext.field().clone();
            let base_count = covers.base_ext.count_points(1).unwrap();
            for orbit in &covers.orbits {
                for f1 in orbit {
                    let c1 = covers.spec(f1, field.one()).unwrap().count_points(1).unwrap();
                    let c2 =
                        covers.spec(f1, covers.nonsquare).unwrap().count_points(1).unwrap();
                    assert_eq!(c1 + c2, 2 * base_count, "n = {n}");
                }
            }
        }
    }

    #[test]
    fn cover_count_bounded_by_degree() {
        let covers = enumerate_double_covers(&ex3_c1(), 1).unwrap();
        let field = covers.base_ext.field().clone();
        for m in 1..=3u32 {
            let nb = covers.base_ext.count_points(m).unwrap();
            for orbit in &covers.orbits {
                for f1 in orbit {
                    let nc = covers.spec(f1, field.one()).unwrap().count_points(m).unwrap();
                    assert!(nc <= 2 * nb);
                }
            }
        }
    }

    #[test]
    fn example2_frobenius_orbits_and_traces() {
        // y^2 = x^5 + x^4 + 2x + 1 over F_3, double covers over F_3^5
        let c1 = model3(&[1, 2, 0, 0, 1, 1]);
        let covers = enumerate_double_covers(&c1, 5).unwrap();
        assert_eq!(covers.class_count(), 15);
        assert_eq!(covers.orbits.len(), 3);
        assert!(covers.orbits.iter().all(|o| o.len() == 5));
        let mut traces: Vec<u64> =
            covers.orbit_trace_summary().unwrap().iter().map(|&(_, t)| t).collect();
        traces.sort_unstable();
        assert_eq!(traces, vec![8, 28, 28]);
    }

    #[test]
    fn example2b_traces() {
        // y^2 = 2x^6 + x^4 + x^3 + 1 and y^2 = x^6 + x^4 + x^3 + 2
        let c1 = model3(&[1, 0, 0, 1, 1, 0, 2]);
        let c2 = model3(&[2, 0, 0, 1, 1, 0, 1]);
        let t1: Vec<u64> = enumerate_double_covers(&c1, 5)
            .unwrap()
            .orbit_trace_summary()
            .unwrap()
            .iter()
            .map(|&(_, t)| t)
            .collect();
        let t2: Vec<u64> = enumerate_double_covers(&c2, 5)
            .unwrap()
            .orbit_trace_summary()
            .unwrap()
            .iter()
            .map(|&(_, t)| t)
            .collect();
        assert_eq!(t1, vec![4, 16, 28]);
        assert_eq!(t2, vec![4, 4, 16]);
    }

    #[test]
    fn example5_traces_over_f7() {
        let f7 = Field::get(7, 1).unwrap();
        let c1 =
            CurveModel::hyper_odd(Poly::from_int_coeffs(&f7, &[4, 0, 3, 0, 0, 0, 1])).unwrap();
        let c2 =
            CurveModel::hyper_odd(Poly::from_int_coeffs(&f7, &[1, 0, 5, 0, 5, 0, 1])).unwrap();
        let cov1 = enumerate_double_covers(&c1, 1).unwrap();
        let cov2 = enumerate_double_covers(&c2, 1).unwrap();
        assert_eq!(cov1.class_count(), 3);
        assert_eq!(cov2.class_count(), 3);
        let t1: Vec<u64> =
            cov1.orbit_trace_summary().unwrap().iter().map(|&(_, t)| t).collect();
        assert_eq!(t1, vec![4, 4, 4]);
        // the second curve has trace-0 elliptic factors, so no matching with
        // the first is possible; its multiset is {0, 0, 4}
        let t2: Vec<u64> =
            cov2.orbit_trace_summary().unwrap().iter().map(|&(_, t)| t).collect();
        assert_eq!(t2, vec![0, 0, 4]);
        // the x^2+1 class is the one carrying the +-4: its complementary
        // elliptic curve v^2 = x^4 + 4x^2 + 1 has 4 points over F_7
        let f1 = Poly::from_int_coeffs(&f7, &[1, 0, 1]);
        let spec = cov2.spec(&f1, f7.one()).unwrap();
        assert_eq!(spec.prym_trace(1).unwrap().unsigned_abs(), 4);
        let prym = CurveModel::hyper_odd(Poly::from_int_coeffs(&f7, &[1, 0, 4, 0, 1])).unwrap();
        assert_eq!(prym.count_points(1).unwrap(), 4);
        // twisting negates the trace
        let a = cov2.spec(&cov2.orbits[0][0], f7.one()).unwrap().prym_trace(1).unwrap();
        let b =
            cov2.spec(&cov2.orbits[0][0], cov2.nonsquare).unwrap().prym_trace(1).unwrap();
        assert_eq!(a, -b);
    }

    #[test]
    fn as_cover_split_counts() {
        // triple covers z^3 - z = (x + 1) w + a of the pinned double cover of
        // y^2 = x^5 - 1 have 12, 3, 3 points
        let covers = enumerate_double_covers(&ex3_c1(), 1).unwrap();
        let field = covers.base_ext.field().clone();
        let double = covers.spec(&covers.orbits[0][0], field.one()).unwrap();
        let u = Poly::zero(&field);
        let v = Poly::from_int_coeffs(&field, &[1, 1]);
        let counts: Vec<u64> = (0..3)
            .map(|a| {
                AsCoverSpec::new(double.clone(), u.clone(), v.clone(), a)
                    .unwrap()
                    .count_points(1)
                    .unwrap()
            })
            .collect();
        assert_eq!(counts, vec![12, 3, 3]);
        assert_eq!(counts.iter().sum::<u64>(), 3 * double.count_points(1).unwrap());

        // z^3 - z = (x - 1) w + a over y^2 = x^5 + 1: 0, 9, 9
        let covers2 = enumerate_double_covers(&ex3_c2(), 1).unwrap();
        let double2 = covers2.spec(&covers2.orbits[0][0], field.one()).unwrap();
        assert_eq!(double2.count_points(1).unwrap(), 6);
        let v2 = Poly::from_int_coeffs(&field, &[-1, 1]);
        let counts2: Vec<u64> = (0..3)
            .map(|a| {
                AsCoverSpec::new(double2.clone(), u.clone(), v2.clone(), a)
                    .unwrap()
                    .count_points(1)
                    .unwrap()
            })
            .collect();
        assert_eq!(counts2, vec![0, 9, 9]);
    }

    #[test]
    fn ramified_as_cover_rejected() {
        // z^3 - z = x w on the same double cover leaves an order-2 pole
        let covers = enumerate_double_covers(&ex3_c1(), 1).unwrap();
        let field = covers.base_ext.field().clone();
        let double = covers.spec(&covers.orbits[0][0], field.one()).unwrap();
        assert!(matches!(
            AsCoverSpec::new(double, Poly::zero(&field), Poly::x(&field), 0),
            Err(Error::RamifiedCover { pole_order: 2 })
        ));
    }

    #[test]
    fn two_torsion_profiles_example1() {
        let field = f3();
        let fa = Poly::from_int_coeffs(&field, &[2, 0, 0, 2, 2, 0, 2]);
        let fb = Poly::from_int_coeffs(&field, &[2, 2, 1, 0, 1, 2, 2]);
        let pa = two_torsion_profile(&fa).unwrap();
        let pb = two_torsion_profile(&fb).unwrap();
        assert_eq!(pa.factor_degrees, vec![6]);
        assert_eq!(pb.factor_degrees, vec![3, 3]);
        assert!(!pa.full_over(3));
        assert!(pb.full_over(3));
        assert_eq!(pa.order_over(3), 4); // splits into three quadratics over F_27
        assert_eq!(pb.order_over(3), 16); // full: 2^(2g)
        // a split odd-degree cubic: full over the base field, order 2^(s-1)
        let split = Poly::from_int_coeffs(&field, &[0, 1])
            .mul(&Poly::from_int_coeffs(&field, &[1, 1]))
            .mul(&Poly::from_int_coeffs(&field, &[2, 1]));
        let p = two_torsion_profile(&split).unwrap();
        assert_eq!(p.full_level, 1);
        assert_eq!(p.order_over(1), 4);
    }

    #[test]
    fn cover_class_count_matches_two_torsion() {
        for (coeffs, n) in [
            (&[2i64, 0, 0, 2, 2, 0, 2][..], 3u32),
            (&[-1, 0, 0, 0, 0, 1][..], 1),
            (&[1, 2, 0, 0, 1, 1][..], 5),
        ] {
            let base = model3(coeffs);
            let covers = enumerate_double_covers(&base, n).unwrap();
            let fext = match &covers.base_ext {
                CurveModel::HyperOdd { f } => f.clone(),
                _ => unreachable!(),
            };
            let profile = two_torsion_profile(&fext).unwrap();
            assert_eq!(covers.class_count() as u64 + 1, profile.order_over(1));
        }
    }
}
