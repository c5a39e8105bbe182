//! Finite fields `GF(p^k)`.
//!
//! An element is stored as a `u64` index `Σ c_j p^j`, where `c_0, …, c_{k−1}`
//! are its coordinates in the basis `1, x, …, x^{k−1}` modulo the defining
//! polynomial. Indices `0..p` are the prime subfield, `0` is zero, `1` is one.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rand::Rng;

use super::poly::Poly;
use crate::error::{Error, Result};

/// Largest extension degree accepted by [`GaloisField::new`].
pub const MAX_DEGREE: u32 = 16;

/// Fields with at most this many elements use lookup tables.
const TABLE_LIMIT: u64 = 256;

/// Element indices must stay below this bound.
const ORDER_LIMIT: u128 = 1 << 63;

struct Tables {
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

struct Inner {
    p: u64,
    k: u32,
    q: u64,
    /// Monic defining polynomial, coefficients low to high (length `k + 1`).
    modulus: Vec<u64>,
    tables: Option<Tables>,
}

/// Handle to a finite field. Cheap to clone; equal iff `p` and `k` agree.
#[derive(Clone)]
pub struct GaloisField(Arc<Inner>);

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.k == other.0.k)
    }
}

impl Eq for GaloisField {}

impl std::hash::Hash for GaloisField {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.k.hash(state);
    }
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.k)
    }
}

impl fmt::Display for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.k)
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Writes `q` as `p^k` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let (mut k, mut m) = (0u32, q);
    while m > 1 {
        m /= p;
        k += 1;
    }
    Some((p, k))
}

fn cache() -> &'static Mutex<HashMap<(u64, u32), GaloisField>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), GaloisField>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl GaloisField {
    /// `GF(p^k)` for prime `p` and `1 ≤ k ≤ 16`.
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if k == 0 || k > MAX_DEGREE {
            return Err(Error::Domain(format!(
                "extension degree {k} outside 1..={MAX_DEGREE}"
            )));
        }
        Self::with_degree(p, k)
    }

    /// `GF(q)` for a prime power `q`.
    pub fn of_order(q: u64) -> Result<Self> {
        let (p, k) = prime_power(q)
            .ok_or_else(|| Error::Domain(format!("{q} is not a prime power")))?;
        Self::new(p, k)
    }

    /// Like [`GaloisField::new`] without the degree limit; used for splitting
    /// fields, which are bounded only by the element representation.
    pub(crate) fn with_degree(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::Domain("extension degree 0".into()));
        }
        if let Some(f) = cache().lock().expect("field cache poisoned").get(&(p, k)) {
            return Ok(f.clone());
        }
        if p >= 1 << 31 {
            return Err(Error::FieldTooLarge { p, k });
        }
        let q = (p as u128).checked_pow(k).filter(|&q| q < ORDER_LIMIT);
        let Some(q) = q else {
            return Err(Error::FieldTooLarge { p, k });
        };
        let q = q as u64;
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            least_irreducible(p, k)
        };
        let mut inner = Inner {
            p,
            k,
            q,
            modulus,
            tables: None,
        };
        if q <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        let field = GaloisField(Arc::new(inner));
        cache()
            .lock()
            .expect("field cache poisoned")
            .insert((p, k), field.clone());
        Ok(field)
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.k
    }

    /// Number of elements `q = p^k`.
    pub fn order(&self) -> u64 {
        self.0.q
    }

    /// Defining polynomial, coefficients low to high.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn prime_subfield(&self) -> GaloisField {
        if self.0.k == 1 {
            self.clone()
        } else {
            GaloisField::with_degree(self.0.p, 1).expect("prime field of a valid field")
        }
    }

    pub fn zero(&self) -> u64 {
        0
    }

    pub fn one(&self) -> u64 {
        1
    }

    /// The class of `x` modulo the defining polynomial (for `k = 1`, the
    /// root of the linear modulus, i.e. zero).
    pub fn generator(&self) -> u64 {
        if self.0.k == 1 {
            0
        } else {
            self.0.p
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> u64 {
        v.rem_euclid(self.0.p as i64) as u64
    }

    pub fn contains(&self, a: u64) -> bool {
        a < self.0.q
    }

    pub fn elements(&self) -> std::ops::Range<u64> {
        0..self.0.q
    }

    /// Coordinates `c_0, …, c_{k−1}` of `a`.
    pub fn digits(&self, mut a: u64) -> Vec<u64> {
        let p = self.0.p;
        (0..self.0.k)
            .map(|_| {
                let d = a % p;
                a /= p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u64]) -> Result<u64> {
        if digits.len() > self.0.k as usize {
            return Err(Error::Parse(format!(
                "{} coordinates given for {self}, expected at most {}",
                digits.len(),
                self.0.k
            )));
        }
        let p = self.0.p;
        let mut v = 0u64;
        for &d in digits.iter().rev() {
            if d >= p {
                return Err(Error::Parse(format!("coordinate {d} is not reduced mod {p}")));
            }
            v = v * p + d;
        }
        Ok(v)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let inner = &*self.0;
        if let Some(t) = &inner.tables {
            return u64::from(t.add[(a * inner.q + b) as usize]);
        }
        let p = inner.p;
        if inner.k == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        let (mut a, mut b, mut v, mut place) = (a, b, 0u64, 1u64);
        while a > 0 || b > 0 {
            let d = (a % p + b % p) % p;
            v += d * place;
            a /= p;
            b /= p;
            place = place.wrapping_mul(p);
        }
        v
    }

    pub fn neg(&self, a: u64) -> u64 {
        let inner = &*self.0;
        if let Some(t) = &inner.tables {
            return u64::from(t.neg[a as usize]);
        }
        let p = inner.p;
        if inner.k == 1 {
            return if a == 0 { 0 } else { p - a };
        }
        let (mut a, mut v, mut place) = (a, 0u64, 1u64);
        while a > 0 {
            let d = (p - a % p) % p;
            v += d * place;
            a /= p;
            place = place.wrapping_mul(p);
        }
        v
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let inner = &*self.0;
        if let Some(t) = &inner.tables {
            return u64::from(t.mul[(a * inner.q + b) as usize]);
        }
        if inner.k == 1 {
            return a * b % inner.p;
        }
        if a == 0 || b == 0 {
            return 0;
        }
        mul_generic(inner, a, b)
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        if let Some(t) = &self.0.tables {
            return Ok(u64::from(t.inv[a as usize]));
        }
        Ok(self.pow(a, self.0.q - 2))
    }

    pub fn div(&self, a: u64, b: u64) -> Result<u64> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let (mut base, mut acc) = (a, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        let mut ord = self.0.q - 1;
        for r in prime_factors(ord) {
            while ord.is_multiple_of(r) && self.pow(a, ord / r) == 1 {
                ord /= r;
            }
        }
        Ok(ord)
    }

    /// Some `c` with `c^n = a`, searched exhaustively in small fields.
    pub fn nth_root(&self, a: u64, n: u64) -> Option<u64> {
        if self.0.q > 1 << 20 {
            return None;
        }
        self.elements().find(|&c| self.pow(c, n) == a)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.0.q)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(1..self.0.q)
    }

    /// Bytes needed to encode one element.
    pub fn bytes_per_element(&self) -> usize {
        let bits = 64 - (self.0.q - 1).leading_zeros() as usize;
        bits.div_ceil(8).max(1)
    }

    /// Parses an element: an index such as `"3"` or `"-1"` (negative values
    /// are reduced in the prime subfield), or a coordinate list `"[c0,c1]"`.
    pub fn parse_element(&self, text: &str) -> Result<u64> {
        let t = text.trim();
        if let Some(body) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let digits = body
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<u64>()
                        .map_err(|e| Error::Parse(format!("coordinate `{s}`: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            return self.from_digits(&digits);
        }
        if let Some(neg) = t.strip_prefix('-') {
            let v: u64 = neg
                .parse()
                .map_err(|e| Error::Parse(format!("element `{t}`: {e}")))?;
            return Ok(self.neg(v % self.0.p));
        }
        let v: u64 = t
            .parse()
            .map_err(|e| Error::Parse(format!("element `{t}`: {e}")))?;
        if v >= self.0.q {
            return Err(Error::Parse(format!("element {v} out of range for {self}")));
        }
        Ok(v)
    }

    /// Prime-field elements print as integers, others as coordinate lists.
    pub fn format_element(&self, a: u64) -> String {
        if self.0.k == 1 {
            a.to_string()
        } else {
            let d: Vec<String> = self.digits(a).iter().map(u64::to_string).collect();
            format!("[{}]", d.join(","))
        }
    }

    pub fn element(&self, value: u64) -> FieldElement {
        debug_assert!(self.contains(value));
        FieldElement {
            field: self.clone(),
            value,
        }
    }
}

fn mul_generic(inner: &Inner, a: u64, b: u64) -> u64 {
    let p = inner.p;
    let k = inner.k as usize;
    let mut da = [0u64; 64];
    let mut db = [0u64; 64];
    let (mut x, mut y) = (a, b);
    for j in 0..k {
        da[j] = x % p;
        db[j] = y % p;
        x /= p;
        y /= p;
    }
    let mut prod = [0u64; 128];
    for i in 0..k {
        if da[i] == 0 {
            continue;
        }
        for j in 0..k {
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        }
    }
    let m = &inner.modulus;
    for d in (k..2 * k - 1).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for j in 0..k {
            // x^d = −Σ m_j x^{d−k+j}
            let sub = c * m[j] % p;
            prod[d - k + j] = (prod[d - k + j] + p - sub) % p;
        }
    }
    let mut v = 0u64;
    for j in (0..k).rev() {
        v = v * p + prod[j];
    }
    v
}

fn build_tables(inner: &Inner) -> Tables {
    let q = inner.q;
    let field = |a: u64, b: u64, op: fn(&Inner, u64, u64) -> u64| op(inner, a, b) as u8;
    let add_one = |inner: &Inner, a: u64, b: u64| {
        let p = inner.p;
        let (mut a, mut b, mut v, mut place) = (a, b, 0u64, 1u64);
        while a > 0 || b > 0 {
            v += (a % p + b % p) % p * place;
            a /= p;
            b /= p;
            place *= p;
        }
        v
    };
    let mul_one = |inner: &Inner, a: u64, b: u64| {
        if inner.k == 1 {
            a * b % inner.p
        } else if a == 0 || b == 0 {
            0
        } else {
            mul_generic(inner, a, b)
        }
    };
    let mut add = vec![0u8; (q * q) as usize];
    let mut mul = vec![0u8; (q * q) as usize];
    for a in 0..q {
        for b in 0..q {
            add[(a * q + b) as usize] = field(a, b, add_one);
            mul[(a * q + b) as usize] = field(a, b, mul_one);
        }
    }
    let mut neg = vec![0u8; q as usize];
    let mut inv = vec![0u8; q as usize];
    for a in 0..q {
        for b in 0..q {
            if add[(a * q + b) as usize] == 0 {
                neg[a as usize] = b as u8;
            }
            if mul[(a * q + b) as usize] == 1 {
                inv[a as usize] = b as u8;
            }
        }
    }
    Tables { add, mul, neg, inv }
}

/// Lexicographically least monic irreducible polynomial of degree `k` over
/// `GF(p)`, comparing coefficient vectors from the constant term upwards.
fn least_irreducible(p: u64, k: u32) -> Vec<u64> {
    let prime = GaloisField::with_degree(p, 1).expect("p is prime");
    let k = k as usize;
    // Enumerate (c_0, …, c_{k−1}) in lexicographic order: c_0 is the most
    // significant digit of the counter.
    let total = (p as u128).pow(k as u32);
    let mut t: u128 = 0;
    while t < total {
        let mut coeffs = vec![0u64; k + 1];
        let mut rest = t;
        for j in (0..k).rev() {
            coeffs[j] = (rest % p as u128) as u64;
            rest /= p as u128;
        }
        coeffs[k] = 1;
        if coeffs[0] != 0 {
            let f = Poly::new(&prime, coeffs.clone());
            if f.is_irreducible() {
                return coeffs;
            }
        }
        t += 1;
    }
    unreachable!("irreducible polynomials of every degree exist over GF({p})")
}

/// A field element bundled with its field, for ergonomic arithmetic.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: GaloisField,
    value: u64,
}

impl FieldElement {
    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(self.field.element(self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.field.element(self.field.pow(self.value, e))
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {:?}", self.field.format_element(self.value), self.field)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format_element(self.value))
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $op:ident) => {
        impl std::ops::$tr for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                assert_eq!(self.field, rhs.field, "elements of different fields");
                self.field.element(self.field.$op(self.value, rhs.value))
            }
        }
        impl std::ops::$tr for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.field.element(self.field.neg(self.value))
    }
}

impl std::ops::Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}
