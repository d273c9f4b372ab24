//! Univariate polynomials over a finite field, with exact arithmetic,
//! gcds, and deterministic factorization (distinct-degree splitting followed
//! by equal-degree splitting driven by a fixed element enumeration, no
//! randomness anywhere).

use super::{FieldElement, FieldRef};
use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::fmt;

/// Polynomial with coefficients in a fixed field. Coefficients are stored as
/// element indices, constant term first, with no trailing zeros (the zero
/// polynomial has an empty coefficient vector).
#[derive(Clone)]
pub struct Poly {
    field: FieldRef,
    c: Vec<u32>,
}

impl Poly {
    pub fn zero(field: &FieldRef) -> Poly {
        Poly { field: field.clone(), c: Vec::new() }
    }

    pub fn one(field: &FieldRef) -> Poly {
        Poly { field: field.clone(), c: vec![1] }
    }

    pub fn x(field: &FieldRef) -> Poly {
        Poly { field: field.clone(), c: vec![0, 1] }
    }

    pub fn constant(field: &FieldRef, a: FieldElement) -> Poly {
        field.check(a);
        let mut p = Poly { field: field.clone(), c: vec![a.idx] };
        p.normalize();
        p
    }

    /// Build from integer coefficients (ascending), reduced into the prime subfield.
    pub fn from_int_coeffs(field: &FieldRef, coeffs: &[i64]) -> Poly {
        let c = coeffs.iter().map(|&n| field.from_int(n).idx).collect();
        let mut p = Poly { field: field.clone(), c };
        p.normalize();
        p
    }

    pub fn from_elements(field: &FieldRef, coeffs: &[FieldElement]) -> Poly {
        for &a in coeffs {
            field.check(a);
        }
        let mut p = Poly { field: field.clone(), c: coeffs.iter().map(|a| a.idx).collect() };
        p.normalize();
        p
    }

    pub(crate) fn from_indices(field: &FieldRef, c: Vec<u32>) -> Poly {
        let mut p = Poly { field: field.clone(), c };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn deg_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.field.el(*self.c.get(i).unwrap_or(&0) as u64)
    }

    pub fn leading_coeff(&self) -> FieldElement {
        self.field.el(*self.c.last().unwrap_or(&0) as u64)
    }

    pub fn coeff_elements(&self) -> Vec<FieldElement> {
        self.c.iter().map(|&i| self.field.el(i as u64)).collect()
    }

    pub(crate) fn coeff_indices(&self) -> &[u32] {
        &self.c
    }

    pub fn is_monic(&self) -> bool {
        self.c.last() == Some(&1)
    }

    fn same_field(&self, other: &Poly) -> bool {
        self.field.id() == other.field.id()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert!(self.same_field(other));
        let f = &self.field;
        let n = self.c.len().max(other.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            let a = *self.c.get(i).unwrap_or(&0) as u64;
            let b = *other.c.get(i).unwrap_or(&0) as u64;
            c.push(f.add_idx(a, b) as u32);
        }
        Poly::from_indices(f, c)
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        let c = self.c.iter().map(|&a| f.neg_idx(a as u64) as u32).collect();
        Poly { field: f.clone(), c }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert!(self.same_field(other));
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut c = vec![0u32; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let t = f.mul_idx(a as u64, b as u64);
                c[i + j] = f.add_idx(c[i + j] as u64, t) as u32;
            }
        }
        Poly::from_indices(f, c)
    }

    pub fn scale(&self, a: FieldElement) -> Poly {
        self.field.check(a);
        let f = &self.field;
        let c = self.c.iter().map(|&x| f.mul_idx(x as u64, a.idx as u64) as u32).collect();
        Poly::from_indices(f, c)
    }

    /// Multiply by x^n.
    pub fn shift_up(&self, n: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![0u32; n];
        c.extend_from_slice(&self.c);
        Poly { field: self.field.clone(), c }
    }

    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        assert!(self.same_field(divisor));
        if divisor.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let f = &self.field;
        let dd = divisor.c.len() - 1;
        if self.c.len() < divisor.c.len() {
            return Ok((Poly::zero(f), self.clone()));
        }
        let lc_inv = f.inv_idx(*divisor.c.last().unwrap() as u64)?;
        let mut rem = self.c.clone();
        let mut quot = vec![0u32; rem.len() - dd];
        for j in (dd..rem.len()).rev() {
            let c = f.mul_idx(rem[j] as u64, lc_inv);
            if c != 0 {
                quot[j - dd] = c as u32;
                for (i, &m) in divisor.c.iter().enumerate() {
                    let t = f.mul_idx(c, m as u64);
                    rem[j - dd + i] = f.sub_idx(rem[j - dd + i] as u64, t) as u32;
                }
            }
        }
        rem.truncate(dd);
        Ok((Poly::from_indices(f, quot), Poly::from_indices(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divrem(divisor)?.1)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        match other.divrem(self) {
            Ok((_, r)) => r.is_zero(),
            Err(_) => false,
        }
    }

    /// Monic gcd (gcd of zero polynomials is zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        assert!(self.same_field(other));
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic().1
        }
    }

    /// Returns (leading unit, monic polynomial).
    pub fn monic(&self) -> (FieldElement, Poly) {
        if self.is_zero() {
            return (self.field.one(), self.clone());
        }
        let lc = self.leading_coeff();
        let inv = self.field.inv(lc).expect("leading coefficient is nonzero");
        (lc, self.scale(inv))
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        if self.c.len() <= 1 {
            return Poly::zero(f);
        }
        let mut c = Vec::with_capacity(self.c.len() - 1);
        for (i, &a) in self.c.iter().enumerate().skip(1) {
            let m = f.from_int(i as i64);
            c.push(f.mul_idx(a as u64, m.idx as u64) as u32);
        }
        Poly::from_indices(f, c)
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        self.field.check(x);
        self.field.el(self.eval_idx(x.idx as u64))
    }

    #[inline]
    pub(crate) fn eval_idx(&self, x: u64) -> u64 {
        let f = &self.field;
        let mut acc = 0u64;
        for &a in self.c.iter().rev() {
            acc = f.mul_idx(acc, x);
            acc = f.add_idx(acc, a as u64);
        }
        acc
    }

    /// Coefficients of f(r + t) as a polynomial in t (robust in any characteristic).
    pub fn taylor_shift(&self, r: FieldElement) -> Vec<FieldElement> {
        self.field.check(r);
        let f = &self.field;
        let lin = Poly::from_elements(f, &[f.neg(r), f.one()]); // x - r
        let mut g = self.clone();
        let mut out = Vec::with_capacity(self.c.len());
        while !g.is_zero() {
            let (q, rem) = g.divrem(&lin).expect("linear divisor");
            out.push(rem.coeff(0));
            g = q;
        }
        if out.is_empty() {
            out.push(f.zero());
        }
        out
    }

    /// s^n * f(1/s) for n >= deg f: the reversed coefficient vector padded to degree n.
    pub fn reverse_into(&self, n: usize) -> Poly {
        let d = self.deg_or_zero();
        assert!(self.is_zero() || n >= d);
        let mut c = vec![0u32; n + 1];
        for (i, &a) in self.c.iter().enumerate() {
            c[n - i] = a;
        }
        Poly::from_indices(&self.field, c)
    }

    pub fn pow_mod(&self, mut e: u64, modulus: &Poly) -> Result<Poly> {
        let mut base = self.rem(modulus)?;
        let mut acc = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus)?;
            }
            base = base.mul(&base).rem(modulus)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// The p-th root of a polynomial whose exponents are all divisible by p.
    pub fn pth_root(&self) -> Poly {
        let f = &self.field;
        let p = f.p() as usize;
        let mut c = Vec::new();
        for (i, &a) in self.c.iter().enumerate() {
            if i % p == 0 {
                c.push(f.pth_root(f.el(a as u64)).idx);
            } else {
                debug_assert_eq!(a, 0, "exponent support must be divisible by p");
            }
        }
        Poly::from_indices(f, c)
    }

    /// Squarefree test. In characteristic p a vanishing derivative means the
    /// polynomial is a p-th power (detected exactly by the exponent-support
    /// criterion), hence not squarefree for positive degree.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => {
                let d = self.derivative();
                if d.is_zero() {
                    return false;
                }
                self.gcd(&d).degree() == Some(0)
            }
        }
    }

    /// Rabin irreducibility test (deterministic).
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let f = &self.field;
        let q = f.order();
        let monic = self.monic().1;
        let x = Poly::x(f);
        // x^(q^i) mod f for i = 1..n via iterated q-power
        let mut frob = Vec::with_capacity(n + 1);
        frob.push(x.clone());
        for i in 1..=n {
            let prev = &frob[i - 1];
            frob.push(prev.pow_mod(q, &monic).expect("modulus nonzero"));
        }
        if frob[n] != x.rem(&monic).unwrap() {
            return false;
        }
        let mut primes = Vec::new();
        let mut m = n;
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                primes.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            primes.push(m);
        }
        for r in primes {
            let g = frob[n / r].sub(&x).gcd(&monic);
            if g.degree() != Some(0) {
                return false;
            }
        }
        true
    }

    /// Complete factorization into monic irreducibles times a unit.
    pub fn factor(&self) -> Result<Factorization> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (unit, monic) = self.monic();
        let mut factors = factor_monic(&monic);
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(Factorization { unit, factors })
    }
}

/// Factorization into sorted monic irreducibles with multiplicities.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub unit: FieldElement,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn product(&self) -> Poly {
        let field = if let Some((f, _)) = self.factors.first() {
            f.field().clone()
        } else {
            return Poly::zero(&crate::ffield::Field::get(2, 1).unwrap()).scale(self.unit);
        };
        let mut acc = Poly::constant(&field, self.unit);
        for (f, e) in &self.factors {
            for _ in 0..*e {
                acc = acc.mul(f);
            }
        }
        acc
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (f, e) in &self.factors {
            for _ in 0..*e {
                out.push(f.deg_or_zero());
            }
        }
        out.sort_unstable();
        out
    }
}

fn factor_monic(f: &Poly) -> Vec<(Poly, u32)> {
    let field = f.field().clone();
    let p = field.p();
    if f.degree() == Some(0) || f.is_zero() {
        return Vec::new();
    }
    let df = f.derivative();
    if df.is_zero() {
        let root = f.pth_root();
        return factor_monic(&root).into_iter().map(|(g, e)| (g, e * p as u32)).collect();
    }
    let d = f.gcd(&df);
    let w = if d.degree() == Some(0) { f.clone() } else { f.divrem(&d).unwrap().0 };
    // w: product of the distinct irreducible factors of f whose multiplicity
    // is not divisible by p
    let mut out: Vec<(Poly, u32)> = Vec::new();
    let mut rem = f.clone();
    for pi in squarefree_factor(&w) {
        let mut e = 0u32;
        loop {
            let (q, r) = rem.divrem(&pi).unwrap();
            if r.is_zero() {
                rem = q;
                e += 1;
            } else {
                break;
            }
        }
        debug_assert!(e > 0);
        out.push((pi, e));
    }
    if rem.degree().unwrap_or(0) > 0 {
        // leftover factors all have multiplicity divisible by p
        for (pi, e) in factor_monic(&rem) {
            match out.iter_mut().find(|(g, _)| *g == pi) {
                Some((_, cnt)) => *cnt += e,
                None => out.push((pi, e)),
            }
        }
    }
    out
}

/// Distinct-degree splitting of a squarefree monic polynomial.
fn squarefree_factor(f: &Poly) -> Vec<Poly> {
    let field = f.field().clone();
    let q = field.order();
    let x = Poly::x(&field);
    let mut out = Vec::new();
    let mut w = f.clone();
    let mut h = x.clone();
    let mut d = 0usize;
    while let Some(deg) = w.degree() {
        if deg == 0 {
            break;
        }
        d += 1;
        if 2 * d > deg {
            out.push(w.clone());
            break;
        }
        h = h.pow_mod(q, &w).unwrap();
        let g = h.sub(&x).gcd(&w);
        if g.degree().unwrap_or(0) > 0 {
            equal_degree_factor(&g, d, &mut out);
            w = w.divrem(&g).unwrap().0;
            h = h.rem(&w).unwrap_or_else(|_| h.clone());
        }
    }
    out
}

/// Equal-degree splitting of a squarefree product of irreducibles of degree d,
/// driven by a deterministic enumeration of candidate polynomials.
fn equal_degree_factor(g: &Poly, d: usize, out: &mut Vec<Poly>) {
    let n = g.deg_or_zero();
    debug_assert_eq!(n % d, 0);
    if n == d {
        out.push(g.clone());
        return;
    }
    let field = g.field().clone();
    let q = field.order();
    // candidate polynomials in deterministic index order, degree >= 1
    let mut counter = q; // first index with degree >= 1
    loop {
        let cand = poly_from_counter(&field, counter);
        counter += 1;
        if cand.degree().unwrap_or(0) == 0 || cand.deg_or_zero() >= n {
            if counter > q.saturating_pow(n as u32).saturating_mul(4) {
                unreachable!("separating polynomial exists below the enumeration bound");
            }
            continue;
        }
        let split = if field.p() == 2 {
            // trace map a + a^2 + ... over F_{2^(k*d)}
            let e = field.k() as usize * d;
            let mut term = cand.rem(g).unwrap();
            let mut tr = term.clone();
            for _ in 1..e {
                term = term.mul(&term).rem(g).unwrap();
                tr = tr.add(&term);
            }
            tr.gcd(g)
        } else {
            // cand^((q^d - 1)/2) via the norm-style ladder:
            // (q^d - 1)/2 = (1 + q + ... + q^(d-1)) * (q - 1)/2
            let mut acc = cand.rem(g).unwrap();
            let mut frob = acc.clone();
            for _ in 1..d {
                frob = frob.pow_mod(q, g).unwrap();
                acc = acc.mul(&frob).rem(g).unwrap();
            }
            let b = acc.pow_mod((q - 1) / 2, g).unwrap();
            b.sub(&Poly::one(&field)).gcd(g)
        };
        let sd = split.degree().unwrap_or(0);
        if sd > 0 && sd < n {
            equal_degree_factor(&split, d, out);
            let rest = g.divrem(&split).unwrap().0;
            equal_degree_factor(&rest, d, out);
            return;
        }
    }
}

/// Polynomial whose coefficient indices are the base-q digits of the counter.
fn poly_from_counter(field: &FieldRef, counter: u64) -> Poly {
    let q = field.order();
    let mut c = Vec::new();
    let mut m = counter;
    while m > 0 {
        c.push((m % q) as u32);
        m /= q;
    }
    Poly::from_indices(field, c)
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.field.id() == other.field.id() && self.c == other.c
    }
}
impl Eq for Poly {}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Deterministic total order: by degree, then coefficient indices ascending
/// from the constant term.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.c.len(), &self.c).cmp(&(other.c.len(), &other.c))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.c.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::Field;

    fn f3() -> FieldRef {
        Field::get(3, 1).unwrap()
    }

    #[test]
    fn arithmetic_roundtrip() {
        let f = f3();
        let a = Poly::from_int_coeffs(&f, &[1, 2, 0, 1]);
        let b = Poly::from_int_coeffs(&f, &[2, 1]);
        let prod = a.mul(&b);
        let (q, r) = prod.divrem(&b).unwrap();
        assert_eq!(q, a);
        assert!(r.is_zero());
    }

    #[test]
    fn example_one_factorizations() {
        let f = f3();
        // 2x^6 + 2x^4 + 2x^3 + 2: a unit times one irreducible sextic
        let f1 = Poly::from_int_coeffs(&f, &[2, 0, 0, 2, 2, 0, 2]);
        let fac1 = f1.factor().unwrap();
        assert_eq!(fac1.unit, f.el(2));
        assert_eq!(fac1.factors.len(), 1);
        assert_eq!(fac1.factors[0].0.degree(), Some(6));
        assert_eq!(fac1.factors[0].1, 1);
        assert!(fac1.factors[0].0.is_irreducible());
        // oracle: exhaustive trial division by monic polynomials of degree <= 3
        let sextic = &fac1.factors[0].0;
        for deg in 1..=3usize {
            for m in 0..3u64.pow(deg as u32) {
                let mut cs: Vec<i64> = Vec::new();
                let mut r = m;
                for _ in 0..deg {
                    cs.push((r % 3) as i64);
                    r /= 3;
                }
                cs.push(1);
                let cand = Poly::from_int_coeffs(&f, &cs);
                assert!(!sextic.divrem(&cand).unwrap().1.is_zero());
            }
        }

        // 2x^6 + 2x^5 + x^4 + x^2 + 2x + 2: two irreducible cubics
        let f2 = Poly::from_int_coeffs(&f, &[2, 2, 1, 0, 1, 2, 2]);
        let fac2 = f2.factor().unwrap();
        assert_eq!(fac2.degrees(), vec![3, 3]);
        for (g, _) in &fac2.factors {
            assert!(g.is_irreducible());
        }
        assert_eq!(fac2.product(), f2);
    }

    #[test]
    fn x_squared_not_squarefree() {
        let f = f3();
        let x2 = Poly::from_int_coeffs(&f, &[0, 0, 1]);
        assert!(!x2.is_squarefree());
        let f4 = Field::get(2, 2).unwrap();
        let x2c2 = Poly::from_int_coeffs(&f4, &[0, 0, 1]);
        assert!(!x2c2.is_squarefree());
    }

    #[test]
    fn char2_pth_power_detection() {
        let f2 = Field::get(2, 1).unwrap();
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2: derivative vanishes identically
        let g = Poly::from_int_coeffs(&f2, &[1, 0, 1, 0, 1]);
        assert!(g.derivative().is_zero());
        assert!(!g.is_squarefree());
        let fac = g.factor().unwrap();
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0].1, 2);
        assert_eq!(fac.product(), g);
    }

    #[test]
    fn factor_multiplies_back_with_multiplicities() {
        let f = f3();
        for seed in 0..200u64 {
            let coeffs: Vec<i64> = (0..7).map(|i| ((seed * 31 + i * 17 + 5) % 3) as i64).collect();
            let g = Poly::from_int_coeffs(&f, &coeffs);
            if g.is_zero() {
                continue;
            }
            let fac = g.factor().unwrap();
            assert_eq!(fac.product(), g, "seed {seed}");
            for (pi, _) in &fac.factors {
                assert!(pi.is_irreducible(), "seed {seed}");
                assert!(pi.is_monic());
            }
        }
    }

    #[test]
    fn factorization_over_extension_field() {
        // the Example-1 sextic splits into three quadratics over F_27
        let f3 = f3();
        let f27 = Field::get(3, 3).unwrap();
        let emb = crate::ffield::Embedding::new(&f3, &f27).unwrap();
        let sextic = Poly::from_int_coeffs(&f3, &[1, 0, 0, 1, 1, 0, 1]);
        assert!(sextic.is_irreducible());
        let lifted = emb.map_poly(&sextic);
        let fac = lifted.factor().unwrap();
        assert_eq!(fac.degrees(), vec![2, 2, 2]);
        assert_eq!(fac.product(), lifted);
    }

    #[test]
    fn quintic_splits_over_f243() {
        let f3 = f3();
        let f243 = Field::get(3, 5).unwrap();
        let emb = crate::ffield::Embedding::new(&f3, &f243).unwrap();
        let quintic = Poly::from_int_coeffs(&f3, &[1, 2, 0, 0, 1, 1]); // x^5+x^4+2x+1
        assert!(quintic.is_irreducible());
        let lifted = emb.map_poly(&quintic);
        let fac = lifted.factor().unwrap();
        assert_eq!(fac.degrees(), vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn taylor_shift_evaluates_correctly() {
        let f = Field::get(5, 1).unwrap();
        let g = Poly::from_int_coeffs(&f, &[3, 1, 4, 2]);
        let r = f.el(2);
        let shifted = g.taylor_shift(r);
        // g(r + t) evaluated at t = s equals g(r + s)
        for s in 0..5u64 {
            let t = f.el(s);
            let mut acc = f.zero();
            for &c in shifted.iter().rev() {
                acc = f.add(f.mul(acc, t), c);
            }
            assert_eq!(acc, g.eval(f.add(r, t)));
        }
    }
}
