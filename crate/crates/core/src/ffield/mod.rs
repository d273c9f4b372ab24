//! Exact arithmetic in small finite fields F_{p^k}.
//!
//! Elements are residue classes represented by their index in the canonical
//! enumeration: the element with coefficient vector (c_0, ..., c_{k-1}) over
//! F_p (with respect to the power basis of the modulus) has index
//! `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`. Index order is the deterministic
//! enumeration order used everywhere (default moduli, canonical nonsquares,
//! orbit representatives).
//!
//! Fields are interned in a global registry so that repeated
//! [`Field::get`] calls share tables, and are immutable and safe to share
//! across threads. Multiplication uses discrete-log tables when the order is
//! small enough; otherwise coefficient-vector arithmetic.

pub mod poly;
pub mod series;

use crate::error::{Error, Result};
use once_cell::sync::{Lazy, OnceCell};
use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::{Arc, Mutex};

pub use poly::Poly;

/// Largest supported field order (indices must fit in u32).
pub const MAX_ORDER: u64 = 1 << 31;
/// Orders up to this bound get discrete-log multiplication tables.
const LOG_TABLE_LIMIT: u64 = 1 << 20;
/// Hard cap on the extension degree.
const MAX_K: usize = 32;

/// An element of a specific [`Field`], tagged with the owning field's id.
#[derive(Copy, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    pub(crate) field: u32,
    pub(crate) idx: u32,
}

impl FieldElement {
    /// Enumeration index of the element (0 is zero, 1 is one).
    pub fn index(self) -> u64 {
        self.idx as u64
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "el#{}@f{}", self.idx, self.field)
    }
}

pub type FieldRef = Arc<Field>;

/// Descriptor of F_{p^k} with an explicit irreducible modulus over F_p.
pub struct Field {
    id: u32,
    p: u64,
    k: u32,
    q: u64,
    /// Monic modulus of degree k, coefficients in [0, p). For k = 1 this is x.
    modulus: Vec<u64>,
    /// Discrete-log tables (empty when q > LOG_TABLE_LIMIT).
    /// exp[e] = index of g^e for 0 <= e < q-1; log[idx] for idx >= 1.
    exp: Vec<u32>,
    log: Vec<u32>,
    /// Bit i set iff element i is a nonzero square (odd characteristic).
    square_bits: OnceCell<Vec<u64>>,
    /// Bit i set iff the absolute trace of element i is zero.
    trace_zero_bits: OnceCell<Vec<u64>>,
    nonsquare: OnceCell<u32>,
}

static FIELD_ID: AtomicU32 = AtomicU32::new(0);

#[allow(clippy::type_complexity)]
static REGISTRY: Lazy<Mutex<HashMap<(u64, u32, Vec<u64>), FieldRef>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Cache of embedding generators keyed by (small field id, big field id).
static EMBEDDINGS: Lazy<Mutex<HashMap<(u32, u32), u32>>> = Lazy::new(|| Mutex::new(HashMap::new()));

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// F_{p^k} with the deterministic default modulus: the lexicographically
    /// smallest irreducible monic of degree k (smallest candidate index).
    pub fn get(p: u64, k: u32) -> Result<FieldRef> {
        Self::with_modulus(p, k, None)
    }

    /// F_{p^k} with an explicit monic irreducible modulus given by its
    /// coefficients c_0..c_k (ascending, c_k = 1).
    pub fn with_modulus(p: u64, k: u32, modulus: Option<Vec<u64>>) -> Result<FieldRef> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k < 1 || k as usize > MAX_K {
            return Err(Error::BadModulusDegree { expected: k, got: None });
        }
        let q128 = (p as u128).pow(k);
        if q128 > MAX_ORDER as u128 {
            return Err(Error::FieldTooLarge(q128, MAX_ORDER));
        }
        let modulus = match modulus {
            Some(m) => {
                let m: Vec<u64> = m.iter().map(|&c| c % p).collect();
                if m.len() != k as usize + 1 || *m.last().unwrap() != 1 {
                    return Err(Error::BadModulusDegree {
                        expected: k,
                        got: m.iter().rposition(|&c| c != 0),
                    });
                }
                if k > 1 {
                    let base = Field::get(p, 1)?;
                    let mp = Poly::from_int_coeffs(&base, &m.iter().map(|&c| c as i64).collect::<Vec<_>>());
                    if !mp.is_irreducible() {
                        return Err(Error::ReducibleModulus { p });
                    }
                }
                m
            }
            None => {
                if k == 1 {
                    vec![0, 1]
                } else {
                    Self::default_modulus(p, k)?
                }
            }
        };
        let key = (p, k, modulus.clone());
        let mut reg = REGISTRY.lock().unwrap();
        if let Some(f) = reg.get(&key) {
            return Ok(f.clone());
        }
        let field = Arc::new(Self::build(p, k, modulus));
        reg.insert(key, field.clone());
        Ok(field)
    }

    /// Smallest irreducible monic of degree k over F_p in index order.
    fn default_modulus(p: u64, k: u32) -> Result<Vec<u64>> {
        let base = Field::get(p, 1)?;
        let count = (p as u128).pow(k);
        let mut digits = vec![0u64; k as usize];
        for _ in 0..count {
            let mut coeffs: Vec<i64> = digits.iter().map(|&d| d as i64).collect();
            coeffs.push(1);
            let cand = Poly::from_int_coeffs(&base, &coeffs);
            if cand.is_irreducible() {
                let mut m = digits.clone();
                m.push(1);
                return Ok(m);
            }
            // odometer increment
            for d in digits.iter_mut() {
                *d += 1;
                if *d < p {
                    break;
                }
                *d = 0;
            }
        }
        unreachable!("irreducible polynomials of every degree exist over F_p")
    }

    fn build(p: u64, k: u32, modulus: Vec<u64>) -> Field {
        let q = (p as u64).pow(k);
        let mut field = Field {
            id: FIELD_ID.fetch_add(1, Ordering::SeqCst),
            p,
            k,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            square_bits: OnceCell::new(),
            trace_zero_bits: OnceCell::new(),
            nonsquare: OnceCell::new(),
        };
        if q <= LOG_TABLE_LIMIT && q > 2 {
            field.build_log_tables();
        }
        field
    }

    fn build_log_tables(&mut self) {
        let q = self.q;
        let g = self.find_generator();
        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut log = vec![0u32; q as usize];
        let mut acc = 1u64;
        for e in 0..(q - 1) {
            exp.push(acc as u32);
            log[acc as usize] = e as u32;
            acc = self.mul_digits(acc, g);
        }
        debug_assert_eq!(acc, 1);
        log[0] = u32::MAX;
        self.exp = exp;
        self.log = log;
    }

    /// First element in index order generating the multiplicative group.
    fn find_generator(&self) -> u64 {
        let order = self.q - 1;
        let mut prime_parts = Vec::new();
        let mut m = order;
        let mut d = 2u64;
        while d * d <= m {
            if m % d == 0 {
                prime_parts.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            prime_parts.push(m);
        }
        'cand: for c in 2..self.q {
            for &r in &prime_parts {
                if self.pow_digits(c, order / r) == 1 {
                    continue 'cand;
                }
            }
            return c;
        }
        unreachable!("multiplicative group of a finite field is cyclic")
    }

    pub fn id(&self) -> u32 {
        self.id
    }
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    /// Field order q = p^k.
    pub fn order(&self) -> u64 {
        self.q
    }
    /// Modulus coefficients c_0..c_k (ascending, monic).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn el(&self, idx: u64) -> FieldElement {
        debug_assert!(idx < self.q);
        FieldElement { field: self.id, idx: idx as u32 }
    }
    pub fn zero(&self) -> FieldElement {
        self.el(0)
    }
    pub fn one(&self) -> FieldElement {
        self.el(1)
    }

    /// The element of the prime subfield congruent to n.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let p = self.p as i64;
        self.el(n.rem_euclid(p) as u64)
    }

    /// Element from its coefficient vector over F_p (ascending powers of the generator).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.k as usize {
            return Err(Error::BadModulusDegree { expected: self.k, got: Some(coeffs.len()) });
        }
        let mut idx = 0u64;
        for (i, &c) in coeffs.iter().enumerate() {
            if c >= self.p {
                return Err(Error::BadModulusDegree { expected: self.k, got: Some(i) });
            }
            idx += c * self.p.pow(i as u32);
        }
        Ok(self.el(idx))
    }

    /// Coefficient vector over F_p (length k, ascending).
    pub fn coeffs(&self, a: FieldElement) -> Vec<u64> {
        self.check(a);
        let mut out = vec![0u64; self.k as usize];
        let mut r = a.idx as u64;
        for c in out.iter_mut() {
            *c = r % self.p;
            r /= self.p;
        }
        out
    }

    #[inline]
    pub(crate) fn check(&self, a: FieldElement) {
        assert_eq!(a.field, self.id, "element from a different field");
    }

    fn check_pair(&self, a: FieldElement, b: FieldElement) -> Result<()> {
        if a.field != self.id || b.field != self.id {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    // ---- index-level arithmetic (crate-internal hot paths) ----

    #[inline]
    pub(crate) fn add_idx(&self, a: u64, b: u64) -> u64 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.k == 1 {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        let mut out = 0u64;
        let mut pw = 1u64;
        let (mut x, mut y) = (a, b);
        for _ in 0..self.k {
            let s = x % self.p + y % self.p;
            out += (if s >= self.p { s - self.p } else { s }) * pw;
            x /= self.p;
            y /= self.p;
            pw *= self.p;
        }
        out
    }

    #[inline]
    pub(crate) fn neg_idx(&self, a: u64) -> u64 {
        if self.p == 2 {
            return a;
        }
        if self.k == 1 {
            return if a == 0 { 0 } else { self.p - a };
        }
        let mut out = 0u64;
        let mut pw = 1u64;
        let mut x = a;
        for _ in 0..self.k {
            let d = x % self.p;
            out += (if d == 0 { 0 } else { self.p - d }) * pw;
            x /= self.p;
            pw *= self.p;
        }
        out
    }

    #[inline]
    pub(crate) fn sub_idx(&self, a: u64, b: u64) -> u64 {
        self.add_idx(a, self.neg_idx(b))
    }

    #[inline]
    pub(crate) fn mul_idx(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        if !self.exp.is_empty() {
            let e = self.log[a as usize] as u64 + self.log[b as usize] as u64;
            let m = self.q - 1;
            return self.exp[(if e >= m { e - m } else { e }) as usize] as u64;
        }
        self.mul_digits(a, b)
    }

    fn mul_digits(&self, a: u64, b: u64) -> u64 {
        let p = self.p;
        let k = self.k as usize;
        if k == 1 {
            return (a * b) % p;
        }
        let mut da = [0u64; MAX_K];
        let mut db = [0u64; MAX_K];
        let (mut x, mut y) = (a, b);
        for i in 0..k {
            da[i] = x % p;
            db[i] = y % p;
            x /= p;
            y /= p;
        }
        let mut prod = [0u64; 2 * MAX_K];
        for i in 0..k {
            if da[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] += da[i] * db[j];
            }
        }
        // reduce by the monic modulus
        for j in (k..2 * k - 1).rev() {
            let c = prod[j] % p;
            if c != 0 {
                for (i, &m) in self.modulus.iter().take(k).enumerate() {
                    // add c * (p - m) = subtract c*m mod p
                    prod[j - k + i] += c * (p - m) % p * 1;
                }
            }
            prod[j] = 0;
        }
        let mut out = 0u64;
        let mut pw = 1u64;
        for item in prod.iter().take(k) {
            out += (item % p) * pw;
            pw *= p;
        }
        out
    }

    pub(crate) fn pow_idx(&self, a: u64, mut e: u64) -> u64 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        if !self.exp.is_empty() {
            let m = self.q - 1;
            let le = (self.log[a as usize] as u128 * (e % m as u64) as u128 % m as u128) as u64;
            return self.exp[le as usize] as u64;
        }
        let mut base = a;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_digits(acc, base);
            }
            base = self.mul_digits(base, base);
            e >>= 1;
        }
        acc
    }

    fn pow_digits(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_digits(acc, base);
            }
            base = self.mul_digits(base, base);
            e >>= 1;
        }
        acc
    }

    pub(crate) fn inv_idx(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        if !self.exp.is_empty() {
            let m = self.q - 1;
            let l = self.log[a as usize] as u64;
            return Ok(self.exp[((m - l) % m) as usize] as u64);
        }
        Ok(self.pow_digits(a, self.q - 2))
    }

    // ---- element-level API ----

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        self.el(self.add_idx(a.idx as u64, b.idx as u64))
    }
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        self.el(self.sub_idx(a.idx as u64, b.idx as u64))
    }
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.check(a);
        self.el(self.neg_idx(a.idx as u64))
    }
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        self.el(self.mul_idx(a.idx as u64, b.idx as u64))
    }
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        self.check(a);
        Ok(self.el(self.inv_idx(a.idx as u64)?))
    }
    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }
    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        self.check(a);
        self.el(self.pow_idx(a.idx as u64, e))
    }
    /// The p-power Frobenius a -> a^p.
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.p)
    }
    /// Inverse Frobenius: the unique p-th root.
    pub fn pth_root(&self, a: FieldElement) -> FieldElement {
        // a^(p^(k-1)) since a^(p^k) = a
        let mut out = a;
        for _ in 0..self.k - 1 {
            out = self.frobenius(out);
        }
        out
    }
    pub fn is_zero(&self, a: FieldElement) -> bool {
        self.check(a);
        a.idx == 0
    }

    /// Checked variants used where mixed-field input is a data error rather
    /// than a programming error.
    pub fn try_add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check_pair(a, b)?;
        Ok(self.add(a, b))
    }
    pub fn try_mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check_pair(a, b)?;
        Ok(self.mul(a, b))
    }

    /// Quadratic character: 0 on zero, 1 on nonzero squares, -1 otherwise.
    /// In characteristic 2 every element is a square.
    pub fn chi(&self, a: FieldElement) -> i32 {
        self.check(a);
        if a.idx == 0 {
            return 0;
        }
        if self.p == 2 {
            return 1;
        }
        if self.square_bit(a.idx as u64) {
            1
        } else {
            -1
        }
    }

    pub fn is_square(&self, a: FieldElement) -> bool {
        self.check(a);
        a.idx == 0 || self.p == 2 || self.square_bit(a.idx as u64)
    }

    #[inline]
    pub(crate) fn square_bit(&self, idx: u64) -> bool {
        let bits = self.square_table();
        bits[(idx >> 6) as usize] >> (idx & 63) & 1 == 1
    }

    /// Bitmap of nonzero squares, built once per field by enumerating e^2.
    pub(crate) fn square_table(&self) -> &[u64] {
        self.square_bits.get_or_init(|| {
            let words = (self.q as usize + 63) / 64;
            let mut bits = vec![0u64; words];
            if !self.exp.is_empty() {
                let mut e = 0usize;
                let m = (self.q - 1) as usize;
                while e < m {
                    let idx = self.exp[e] as u64;
                    bits[(idx >> 6) as usize] |= 1 << (idx & 63);
                    e += 2;
                }
            } else {
                for a in 1..self.q {
                    let s = self.mul_digits(a, a);
                    bits[(s >> 6) as usize] |= 1 << (s & 63);
                }
            }
            bits
        })
    }

    /// Bitmap of elements with absolute trace zero.
    pub(crate) fn trace_zero_table(&self) -> &[u64] {
        self.trace_zero_bits.get_or_init(|| {
            let words = (self.q as usize + 63) / 64;
            let mut bits = vec![0u64; words];
            for a in 0..self.q {
                if self.trace_idx(a) == 0 {
                    bits[(a >> 6) as usize] |= 1 << (a & 63);
                }
            }
            bits
        })
    }

    #[inline]
    pub(crate) fn trace_zero_bit(&self, idx: u64) -> bool {
        let bits = self.trace_zero_table();
        bits[(idx >> 6) as usize] >> (idx & 63) & 1 == 1
    }

    pub(crate) fn trace_idx(&self, a: u64) -> u64 {
        let mut term = a;
        let mut sum = a;
        for _ in 1..self.k {
            term = self.pow_idx(term, self.p);
            sum = self.add_idx(sum, term);
        }
        debug_assert!(sum < self.p, "absolute trace must land in the prime field");
        sum
    }

    /// Absolute trace Tr(a) = a + a^p + ... + a^(p^(k-1)), as an integer in [0, p).
    pub fn absolute_trace(&self, a: FieldElement) -> u64 {
        self.check(a);
        self.trace_idx(a.idx as u64)
    }

    /// Least nonsquare in index order (odd characteristic).
    pub fn canonical_nonsquare(&self) -> Result<FieldElement> {
        if self.p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        let idx = *self.nonsquare.get_or_init(|| {
            (2..self.q)
                .find(|&c| !self.square_bit(c))
                .expect("odd field has nonsquares") as u32
        });
        Ok(self.el(idx as u64))
    }

    /// Square root. In odd characteristic errors on nonsquares and returns the
    /// root with the smaller index; in characteristic 2 it is the inverse of
    /// the (bijective) squaring map.
    pub fn sqrt(&self, a: FieldElement) -> Result<FieldElement> {
        self.check(a);
        if a.idx == 0 {
            return Ok(a);
        }
        if self.p == 2 {
            // a^(2^(m-1)) where q = 2^m
            let mut out = a;
            let m = self.k;
            for _ in 0..m.saturating_sub(1) {
                out = self.mul(out, out);
            }
            debug_assert_eq!(self.mul(out, out), a);
            return Ok(out);
        }
        if !self.is_square(a) {
            return Err(Error::NonSquare);
        }
        let s = if !self.exp.is_empty() {
            let l = self.log[a.idx as usize] as u64;
            debug_assert_eq!(l % 2, 0);
            self.el(self.exp[(l / 2) as usize] as u64)
        } else {
            self.tonelli_shanks(a)?
        };
        let t = self.neg(s);
        Ok(if s.idx <= t.idx { s } else { t })
    }

    fn tonelli_shanks(&self, a: FieldElement) -> Result<FieldElement> {
        let q = self.q;
        if q % 4 == 3 {
            return Ok(self.pow(a, (q + 1) / 4));
        }
        let mut s = 0u32;
        let mut m = q - 1;
        while m % 2 == 0 {
            m /= 2;
            s += 1;
        }
        let ns = self.canonical_nonsquare()?;
        let mut c = self.pow(ns, m);
        let mut t = self.pow(a, m);
        let mut r = self.pow(a, (m + 1) / 2);
        let mut e = s;
        loop {
            if t == self.one() {
                return Ok(r);
            }
            let mut i = 0;
            let mut tt = t;
            while tt != self.one() {
                tt = self.mul(tt, tt);
                i += 1;
                if i == e {
                    return Err(Error::NonSquare);
                }
            }
            let mut b = c;
            for _ in 0..e - i - 1 {
                b = self.mul(b, b);
            }
            r = self.mul(r, b);
            c = self.mul(b, b);
            t = self.mul(t, c);
            e = i;
        }
    }

    /// All field elements in the canonical enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        let id = self.id;
        (0..self.q).map(move |i| FieldElement { field: id, idx: i as u32 })
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{{{}^{}}}", self.p, self.k)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}
impl Eq for Field {}

/// Embedding of F_{p^k} into F_{p^(k*n)}, determined by the image of the
/// small field's generator (the least root of the small modulus in the big
/// field, making the embedding deterministic).
pub struct Embedding {
    pub from: FieldRef,
    pub to: FieldRef,
    gen_image: FieldElement,
    /// powers of gen_image up to k-1
    powers: Vec<FieldElement>,
}

impl Embedding {
    pub fn new(from: &FieldRef, to: &FieldRef) -> Result<Embedding> {
        if from.p != to.p || to.k % from.k != 0 {
            return Err(Error::BaseFieldMismatch);
        }
        let gen_image = if from.k == 1 {
            to.one()
        } else {
            let cached = EMBEDDINGS.lock().unwrap().get(&(from.id, to.id)).copied();
            let idx = match cached {
                Some(i) => i,
                None => {
                    let i = Self::find_root(from, to)?;
                    EMBEDDINGS.lock().unwrap().insert((from.id, to.id), i);
                    i
                }
            };
            to.el(idx as u64)
        };
        let mut powers = Vec::with_capacity(from.k as usize);
        let mut acc = to.one();
        for _ in 0..from.k {
            powers.push(acc);
            acc = to.mul(acc, gen_image);
        }
        Ok(Embedding { from: from.clone(), to: to.clone(), gen_image, powers })
    }

    /// Least root (in index order) of the small modulus inside the big field.
    fn find_root(from: &FieldRef, to: &FieldRef) -> Result<u32> {
        let m = &from.modulus;
        for cand in 0..to.q {
            let mut acc = 0u64;
            for &c in m.iter().rev() {
                acc = to.mul_idx(acc, cand);
                acc = to.add_idx(acc, c); // prime-subfield constant embeds as itself
            }
            if acc == 0 {
                return Ok(cand as u32);
            }
        }
        Err(Error::BaseFieldMismatch)
    }

    pub fn gen_image(&self) -> FieldElement {
        self.gen_image
    }

    pub fn map(&self, a: FieldElement) -> FieldElement {
        self.from.check(a);
        if self.from.k == 1 {
            return self.to.el(a.idx as u64);
        }
        let coeffs = self.from.coeffs(a);
        let mut out = self.to.zero();
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                let term = self.to.mul(self.to.el(c), self.powers[i]);
                out = self.to.add(out, term);
            }
        }
        out
    }

    pub fn map_poly(&self, f: &Poly) -> Poly {
        let coeffs: Vec<FieldElement> = f.coeff_elements().iter().map(|&c| self.map(c)).collect();
        Poly::from_elements(&self.to, &coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f3 = Field::get(3, 1).unwrap();
        assert_eq!(f3.order(), 3);
        // inv(2) = 2 since 2*2 = 4 = 1
        assert_eq!(f3.inv(f3.el(2)).unwrap(), f3.el(2));
        assert!(Field::get(4, 1).is_err());
        assert!(matches!(Field::get(4, 1), Err(Error::NotPrime(4))));
    }

    #[test]
    fn f9_frobenius_involution() {
        let f9 = Field::get(3, 2).unwrap();
        for a in f9.elements() {
            assert_eq!(f9.frobenius(f9.frobenius(a)), a);
        }
    }

    #[test]
    fn f243_default_modulus_is_first_irreducible() {
        let f = Field::get(3, 5).unwrap();
        // Oracle: exhaustive trial division by all monic polynomials of degree 1..=2.
        let base = Field::get(3, 1).unwrap();
        let is_irred_oracle = |m: &[u64]| -> bool {
            let mp = Poly::from_int_coeffs(&base, &m.iter().map(|&c| c as i64).collect::<Vec<_>>());
            for d in 1..=2usize {
                for idx in 0..3u64.pow(d as u32) {
                    let mut cs: Vec<i64> = Vec::new();
                    let mut r = idx;
                    for _ in 0..d {
                        cs.push((r % 3) as i64);
                        r /= 3;
                    }
                    cs.push(1);
                    let div = Poly::from_int_coeffs(&base, &cs);
                    if mp.divrem(&div).unwrap().1.is_zero() {
                        return false;
                    }
                }
            }
            true
        };
        assert!(is_irred_oracle(f.modulus()));
        // every smaller monic quintic is reducible
        let chosen: u64 = f.modulus()[..5]
            .iter()
            .enumerate()
            .map(|(i, &c)| c * 3u64.pow(i as u32))
            .sum();
        for smaller in 0..chosen {
            let mut m = Vec::new();
            let mut r = smaller;
            for _ in 0..5 {
                m.push(r % 3);
                r /= 3;
            }
            m.push(1);
            assert!(!is_irred_oracle(&m), "candidate {smaller} should be reducible");
        }
    }

    #[test]
    fn fermat_in_f243() {
        let f = Field::get(3, 5).unwrap();
        // sample 100 elements deterministically
        for i in 0..100u64 {
            let a = f.el(i * 2 + 1);
            assert_eq!(f.pow(a, 243), a);
        }
    }

    #[test]
    fn f7_squares() {
        let f7 = Field::get(7, 1).unwrap();
        // brute-force oracle: square all nonzero elements
        let mut squares: Vec<u64> = (1..7).map(|a| (a * a) % 7).collect();
        squares.sort_unstable();
        squares.dedup();
        assert_eq!(squares, vec![1, 2, 4]);
        for a in 1..7u64 {
            assert_eq!(f7.is_square(f7.el(a)), squares.contains(&a));
        }
    }

    #[test]
    fn f3_squares_and_f4_sqrt() {
        let f3 = Field::get(3, 1).unwrap();
        assert!(f3.is_square(f3.el(0)));
        assert!(f3.is_square(f3.el(1)));
        assert!(!f3.is_square(f3.el(2)));
        let f4 = Field::get(2, 2).unwrap();
        // squaring is a bijection: every element has a unique square root
        let mut seen = std::collections::HashSet::new();
        for a in f4.elements() {
            let r = f4.sqrt(a).unwrap();
            assert_eq!(f4.mul(r, r), a);
            assert!(seen.insert(r));
        }
    }

    #[test]
    fn absolute_trace_values() {
        let f3 = Field::get(3, 1).unwrap();
        for a in 0..3 {
            assert_eq!(f3.absolute_trace(f3.el(a)), a);
        }
        let f9 = Field::get(3, 2).unwrap();
        let zero_traces = f9.elements().filter(|&a| f9.absolute_trace(a) == 0).count();
        assert_eq!(zero_traces, 3);
        // F4 with generator w: Tr(w) = w + w^2 = 1
        let f4 = Field::get(2, 2).unwrap();
        let w = f4.el(2); // the generator x of F_2[x]/(x^2+x+1)
        assert_eq!(f4.absolute_trace(w), 1);
    }

    #[test]
    fn trace_is_linear_over_prime_field() {
        let f = Field::get(3, 3).unwrap();
        for a in 0..27u64 {
            for b in 0..27u64 {
                let (ea, eb) = (f.el(a), f.el(b));
                let lhs = f.absolute_trace(f.add(ea, eb));
                let rhs = (f.absolute_trace(ea) + f.absolute_trace(eb)) % 3;
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn field_axioms_sampled() {
        for &(p, k) in &[(3u64, 2u32), (7, 1), (2, 4), (5, 2)] {
            let f = Field::get(p, k).unwrap();
            let q = f.order();
            let pick = |i: u64| f.el((i * 37 + 11) % q);
            for i in 0..40u64 {
                let (a, b, c) = (pick(i), pick(i + 13), pick(i + 29));
                assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                assert_eq!(f.add(a, f.neg(a)), f.zero());
                if !f.is_zero(a) {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                }
            }
        }
    }

    #[test]
    fn square_counts_odd_char() {
        for &(p, k) in &[(3u64, 2u32), (7, 1), (5, 2)] {
            let f = Field::get(p, k).unwrap();
            let n = f.elements().filter(|&a| !f.is_zero(a) && f.is_square(a)).count() as u64;
            assert_eq!(n, (f.order() - 1) / 2);
        }
    }

    #[test]
    fn chi_multiplicative() {
        let f = Field::get(3, 2).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                if !f.is_zero(a) && !f.is_zero(b) {
                    assert_eq!(f.chi(f.mul(a, b)), f.chi(a) * f.chi(b));
                }
            }
        }
    }

    #[test]
    fn mixed_field_errors() {
        let f3 = Field::get(3, 1).unwrap();
        let f9 = Field::get(3, 2).unwrap();
        let a = f3.el(1);
        let b = f9.el(1);
        assert!(matches!(f3.try_add(a, b), Err(Error::FieldMismatch)));
        assert!(matches!(f3.try_mul(b, b), Err(Error::FieldMismatch)));
        assert!(matches!(f3.inv(f3.zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn sqrt_roundtrip_odd() {
        let f = Field::get(7, 2).unwrap();
        for a in f.elements() {
            if f.is_square(a) {
                let r = f.sqrt(a).unwrap();
                assert_eq!(f.mul(r, r), a);
            } else {
                assert!(f.sqrt(a).is_err());
            }
        }
    }

    #[test]
    fn embedding_respects_arithmetic() {
        let f3 = Field::get(3, 1).unwrap();
        let f27 = Field::get(3, 3).unwrap();
        let emb = Embedding::new(&f3, &f27).unwrap();
        for a in 0..3u64 {
            for b in 0..3u64 {
                let (ea, eb) = (f3.el(a), f3.el(b));
                assert_eq!(emb.map(f3.mul(ea, eb)), f27.mul(emb.map(ea), emb.map(eb)));
                assert_eq!(emb.map(f3.add(ea, eb)), f27.add(emb.map(ea), emb.map(eb)));
            }
        }
        let f9 = Field::get(3, 2).unwrap();
        let f81 = Field::get(3, 4).unwrap();
        let emb2 = Embedding::new(&f9, &f81).unwrap();
        for a in f9.elements() {
            for b in f9.elements() {
                assert_eq!(emb2.map(f9.mul(a, b)), f81.mul(emb2.map(a), emb2.map(b)));
            }
        }
        // image of the generator is a root of the small modulus
        let img = emb2.gen_image();
        let mut acc = f81.zero();
        for &c in f9.modulus().iter().rev() {
            acc = f81.mul(acc, img);
            acc = f81.add(acc, f81.el(c));
        }
        assert!(f81.is_zero(acc));
    }
}
