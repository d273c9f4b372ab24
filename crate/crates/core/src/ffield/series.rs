//! Truncated Laurent series over a finite field, with the local
//! Artin-Schreier reduction used to certify covers unramified and to read off
//! split values above poles.
//!
//! A series stores coefficients for exponents `min_exp .. end_exp`; operations
//! track how far the result stays accurate.

use super::poly::Poly;
use super::{FieldElement, FieldRef};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct LaurentSeries {
    field: FieldRef,
    min_exp: i64,
    /// coefficient indices for s^min_exp, s^(min_exp+1), ...
    c: Vec<u32>,
}

/// Outcome of Artin-Schreier reduction at a place.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AsReduction {
    /// All pole terms removed; the fiber splits according to the absolute
    /// trace of this constant term.
    Regular(FieldElement),
    /// A pole of order prime to p remains: the cover ramifies here.
    Ramified { pole_order: i64 },
}

impl LaurentSeries {
    pub fn new(field: &FieldRef, min_exp: i64, coeffs: Vec<u32>) -> LaurentSeries {
        LaurentSeries { field: field.clone(), min_exp, c: coeffs }
    }

    /// f as a series in s (exact), padded with zeros up to end_exp.
    pub fn from_poly(f: &Poly, end_exp: i64) -> LaurentSeries {
        let field = f.field().clone();
        let mut c: Vec<u32> = f.coeff_indices().to_vec();
        while (c.len() as i64) < end_exp {
            c.push(0);
        }
        LaurentSeries { field, min_exp: 0, c }
    }

    /// f(1/s) as a series (exact), padded with zeros up to end_exp.
    pub fn from_poly_inv(f: &Poly, end_exp: i64) -> LaurentSeries {
        let field = f.field().clone();
        let d = f.deg_or_zero() as i64;
        let mut c: Vec<u32> = f.coeff_indices().iter().rev().copied().collect();
        if c.is_empty() {
            c.push(0);
        }
        while (-d + c.len() as i64) < end_exp {
            c.push(0);
        }
        LaurentSeries { field, min_exp: -d, c }
    }

    pub fn end_exp(&self) -> i64 {
        self.min_exp + self.c.len() as i64
    }

    pub fn coeff_at(&self, e: i64) -> FieldElement {
        if e < self.min_exp || e >= self.end_exp() {
            return self.field.zero();
        }
        self.field.el(self.c[(e - self.min_exp) as usize] as u64)
    }

    /// Exponent of the first nonzero coefficient within the stored window.
    pub fn valuation(&self) -> Option<i64> {
        self.c.iter().position(|&x| x != 0).map(|i| self.min_exp + i as i64)
    }

    /// Multiply by a single monomial a * s^e.
    pub fn mul_monomial(&self, a: FieldElement, e: i64) -> LaurentSeries {
        let f = &self.field;
        f.check(a);
        let c = self.c.iter().map(|&x| f.mul_idx(x as u64, a.idx as u64) as u32).collect();
        LaurentSeries { field: f.clone(), min_exp: self.min_exp + e, c }
    }

    pub fn add(&self, other: &LaurentSeries) -> LaurentSeries {
        let f = &self.field;
        let min = self.min_exp.min(other.min_exp);
        let end = self.end_exp().min(other.end_exp());
        let mut c = Vec::with_capacity((end - min).max(0) as usize);
        for e in min..end {
            let a = self.coeff_at(e).idx as u64;
            let b = other.coeff_at(e).idx as u64;
            c.push(f.add_idx(a, b) as u32);
        }
        LaurentSeries { field: f.clone(), min_exp: min, c }
    }

    pub fn mul(&self, other: &LaurentSeries) -> LaurentSeries {
        let f = &self.field;
        let min = self.min_exp + other.min_exp;
        // error terms: O(s^{a.end}) * s^{b.min} and vice versa
        let end = (self.end_exp() + other.min_exp).min(other.end_exp() + self.min_exp);
        let n = (end - min).max(0) as usize;
        let mut c = vec![0u32; n];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                if i + j < n && b != 0 {
                    let t = f.mul_idx(a as u64, b as u64);
                    c[i + j] = f.add_idx(c[i + j] as u64, t) as u32;
                }
            }
        }
        LaurentSeries { field: f.clone(), min_exp: min, c }
    }

    /// Multiplicative inverse of a series with a nonzero leading term.
    pub fn inverse(&self) -> Result<LaurentSeries> {
        let f = &self.field;
        let v = self.valuation().ok_or(Error::DivisionByZero)?;
        let shift = (v - self.min_exp) as usize;
        let unit: Vec<u32> = self.c[shift..].to_vec();
        let n = unit.len();
        let u0_inv = f.inv_idx(unit[0] as u64)?;
        let mut inv = vec![0u32; n];
        inv[0] = u0_inv as u32;
        for j in 1..n {
            let mut acc = 0u64;
            for i in 1..=j {
                let t = f.mul_idx(unit[i] as u64, inv[j - i] as u64);
                acc = f.add_idx(acc, t);
            }
            inv[j] = f.mul_idx(f.neg_idx(acc), u0_inv) as u32;
        }
        Ok(LaurentSeries { field: f.clone(), min_exp: -v, c: inv })
    }

    /// Square root of a series whose valuation is even and whose leading
    /// coefficient is a square (odd characteristic).
    pub fn sqrt(&self) -> Result<LaurentSeries> {
        let f = &self.field;
        if f.p() == 2 {
            return Err(Error::EvenCharacteristic);
        }
        let v = self.valuation().ok_or(Error::NonSquare)?;
        if v % 2 != 0 {
            return Err(Error::NonSquare);
        }
        let shift = (v - self.min_exp) as usize;
        let unit: Vec<u32> = self.c[shift..].to_vec();
        let n = unit.len();
        let w0 = f.sqrt(f.el(unit[0] as u64))?;
        let two_w0_inv = f.inv(f.add(w0, w0))?;
        let mut w = vec![0u32; n];
        w[0] = w0.idx;
        for j in 1..n {
            // u_j = 2 w_0 w_j + sum_{i=1}^{j-1} w_i w_{j-i}
            let mut acc = 0u64;
            for i in 1..j {
                let t = f.mul_idx(w[i] as u64, w[j - i] as u64);
                acc = f.add_idx(acc, t);
            }
            let rhs = f.sub_idx(unit[j] as u64, acc);
            w[j] = f.mul_idx(rhs, two_w0_inv.idx as u64) as u32;
        }
        Ok(LaurentSeries { field: f.clone(), min_exp: v / 2, c: w })
    }

    /// Artin-Schreier reduction: repeatedly remove pole terms of order
    /// divisible by p by subtracting h^p - h with h a p-th-root monomial.
    /// Needs accurate coefficients through the constant term.
    pub fn as_reduce(&self) -> Result<AsReduction> {
        let f = &self.field;
        let p = f.p() as i64;
        if self.end_exp() < 1 {
            return Err(Error::PrecisionInsufficient {
                have: self.c.len(),
                need: (1 - self.min_exp) as usize,
            });
        }
        let min = self.min_exp.min(0);
        let n = (1 - min) as usize; // window for exponents min..=0
        let mut w = vec![0u64; n];
        for e in min..=0 {
            w[(e - min) as usize] = self.coeff_at(e).idx as u64;
        }
        loop {
            let pole = match w.iter().position(|&x| x != 0) {
                Some(i) if (min + i as i64) < 0 => min + i as i64,
                _ => {
                    return Ok(AsReduction::Regular(f.el(w[n - 1])));
                }
            };
            let order = -pole;
            if order % p != 0 {
                return Ok(AsReduction::Ramified { pole_order: order });
            }
            let c = w[(pole - min) as usize];
            let root = f.pth_root(f.el(c));
            w[(pole - min) as usize] = 0;
            let target = pole / p; // strictly closer to zero, still negative
            let slot = (target - min) as usize;
            w[slot] = f.add_idx(w[slot], root.idx as u64);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::Field;

    #[test]
    fn inverse_and_mul_roundtrip() {
        let f = Field::get(3, 1).unwrap();
        // u = 1 + 2s + s^3, compute u * u^{-1} = 1 + O(s^n)
        let u = LaurentSeries::from_poly(&Poly::from_int_coeffs(&f, &[1, 2, 0, 1]), 12);
        let inv = u.inverse().unwrap();
        let prod = u.mul(&inv);
        assert_eq!(prod.coeff_at(0), f.one());
        for e in 1..prod.end_exp() {
            assert!(f.is_zero(prod.coeff_at(e)), "exponent {e}");
        }
    }

    #[test]
    fn sqrt_squares_back() {
        let f = Field::get(3, 1).unwrap();
        let u = LaurentSeries::from_poly(&Poly::from_int_coeffs(&f, &[1, 1, 1, 1, 1]), 10);
        let w = u.sqrt().unwrap();
        let sq = w.mul(&w);
        for e in 0..sq.end_exp() {
            assert_eq!(sq.coeff_at(e), u.coeff_at(e), "exponent {e}");
        }
        // the specific expansion used by the triple-cover example:
        // sqrt(1 + s + s^2 + s^3 + s^4) = 1 + 2s + 0s^2 + 2s^3 + ...
        assert_eq!(w.coeff_at(0), f.el(1));
        assert_eq!(w.coeff_at(1), f.el(2));
        assert_eq!(w.coeff_at(2), f.el(0));
        assert_eq!(w.coeff_at(3), f.el(2));
    }

    #[test]
    fn as_reduce_monomial_pole() {
        // pole c*s^-3 over F_3 is eliminated by h = c^(1/3) * s^-1
        let f = Field::get(3, 1).unwrap();
        for c in 1..3u64 {
            let s = LaurentSeries::new(&f, -3, vec![c as u32, 0, 0, 0]);
            match s.as_reduce().unwrap() {
                AsReduction::Regular(v) => {
                    // c s^-3 - (h^3 - h) = h = c^(1/3) s^-1, then that pole has
                    // order 1, prime to 3 -> wait, the added term is a pole again
                    unreachable!("pure odd-order tail should ramify, got {v:?}")
                }
                AsReduction::Ramified { pole_order } => assert_eq!(pole_order, 1),
            }
        }
        // c*s^-3 + (-c^(1/3))*s^-1 reduces to regular 0
        let c = 2u32;
        let f3 = Field::get(3, 1).unwrap();
        let root = f3.pth_root(f3.el(c as u64));
        let neg_root = f3.neg(root);
        let s = LaurentSeries::new(&f3, -3, vec![c, 0, neg_root.idx, 0]);
        assert_eq!(s.as_reduce().unwrap(), AsReduction::Regular(f3.zero()));
    }

    #[test]
    fn as_reduce_order_one_pole_is_ramified() {
        let f = Field::get(3, 1).unwrap();
        let s = LaurentSeries::new(&f, -1, vec![1, 0]);
        assert_eq!(s.as_reduce().unwrap(), AsReduction::Ramified { pole_order: 1 });
    }

    #[test]
    fn as_reduce_requires_constant_term() {
        let f = Field::get(3, 1).unwrap();
        let s = LaurentSeries::new(&f, -3, vec![1, 0]);
        assert!(matches!(s.as_reduce(), Err(Error::PrecisionInsufficient { .. })));
    }

    #[test]
    fn char2_reduction() {
        let f = Field::get(2, 1).unwrap();
        // s^-4 + s^-2 reduces: order 4 -> add root at -2 (1+1=0) -> regular
        let s = LaurentSeries::new(&f, -4, vec![1, 0, 1, 0, 0]);
        assert_eq!(s.as_reduce().unwrap(), AsReduction::Regular(f.zero()));
        // s^-4 alone: -4 -> -2 -> -1: ramified order 1
        let s2 = LaurentSeries::new(&f, -4, vec![1, 0, 0, 0, 0]);
        assert_eq!(s2.as_reduce().unwrap(), AsReduction::Ramified { pole_order: 1 });
        // s^-5: odd order, immediately ramified
        let s3 = LaurentSeries::new(&f, -5, vec![1, 0, 0, 0, 0, 0]);
        assert_eq!(s3.as_reduce().unwrap(), AsReduction::Ramified { pole_order: 5 });
    }
}
