//! Exact arithmetic in finite fields F_{p^k}.
//!
//! An element of F_{p^k} is a polynomial c_0 + c_1 x + ... + c_{k-1} x^{k-1}
//! over F_p modulo a fixed irreducible modulus, stored as the base-p integer
//! encoding `sum c_i p^i` in a `u64`.  The modulus is the lexicographically
//! first monic irreducible of degree k, coefficients compared low-degree
//! first, so two fields with the same (p, k) are always identical and
//! encodings can be exchanged freely.
//!
//! Fields up to 2^16 elements carry log/antilog tables; larger ones (capped
//! at 2^32) fall back to polynomial arithmetic.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};

/// Largest order for which log/antilog tables are precomputed.
const TABLE_LIMIT: u64 = 1 << 16;

/// Hard cap on the field order.
const ORDER_LIMIT: u64 = 1 << 32;

struct Tables {
    /// `log[e]` is the discrete log of encoding `e` (undefined at 0).
    log: Vec<u32>,
    /// `exp[i] = g^i` for `0 <= i < 2(order-1)`, so products of two logs
    /// index without a reduction.
    exp: Vec<u64>,
}

struct FieldRepr {
    p: u64,
    k: u32,
    order: u64,
    /// Monic modulus, low-degree-first, length k+1.
    modulus: Vec<u64>,
    tables: Option<Tables>,
    /// Cached embeddings into larger fields, keyed by target degree.
    embeddings: Mutex<HashMap<u32, Arc<Embedding>>>,
}

/// A finite field handle; cheap to clone and compare.
#[derive(Clone)]
pub struct Field(Arc<FieldRepr>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.k == other.0.k
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.k)
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as p^e with p prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut v = q;
            let mut e = 0;
            while v % p == 0 {
                v /= p;
                e += 1;
            }
            return if v == 1 { Some((p, e)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

// --- dense polynomial helpers over F_p (low-degree-first, trimmed) ---

fn poly_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of `a` by monic `b`.
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    debug_assert_eq!(*b.last().unwrap(), 1);
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for i in 0..db {
                let sub = (lead * b[i]) % p;
                let idx = shift + i;
                r[idx] = (r[idx] + p - sub) % p;
            }
        }
        r.pop();
        poly_trim(&mut r);
    }
    r
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    if deg == 1 {
        return true;
    }
    // Trial division by every monic polynomial of degree 1..=deg/2.
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        let mut g = vec![0u64; d + 1];
        g[d] = 1;
        for n in 0..count {
            let mut v = n;
            for c in g.iter_mut().take(d) {
                *c = v % p;
                v /= p;
            }
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically first monic irreducible of degree `k` over F_p,
/// coefficients compared low-degree-first.
fn first_irreducible(p: u64, k: u32) -> Vec<u64> {
    let k = k as usize;
    if k == 1 {
        return vec![0, 1]; // x itself
    }
    let count = p.pow(k as u32);
    let mut f = vec![0u64; k + 1];
    f[k] = 1;
    for key in 0..count {
        // Low-degree coefficients are the most significant lex digits.
        let mut v = key;
        for i in (0..k).rev() {
            f[i] = v % p;
            v /= p;
        }
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible of every degree exists")
}

fn factor(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Field {
    /// Builds F_{p^k} with the canonical modulus.
    pub fn new(p: u64, k: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::InvalidParameter("extension degree must be >= 1".into()));
        }
        let mut order: u64 = 1;
        for _ in 0..k {
            order = order.checked_mul(p).filter(|&o| o < ORDER_LIMIT).ok_or(Error::FieldTooLarge { p, k })?;
        }
        let modulus = first_irreducible(p, k);
        let mut field = FieldRepr {
            p,
            k,
            order,
            modulus,
            tables: None,
            embeddings: Mutex::new(HashMap::new()),
        };
        if order <= TABLE_LIMIT {
            field.tables = Some(build_tables(&field));
        }
        Ok(Field(Arc::new(field)))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn k(&self) -> u32 {
        self.0.k
    }

    pub fn order(&self) -> u64 {
        self.0.order
    }

    /// The modulus polynomial, low-degree-first, length k+1.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    /// Iterates all encodings in plain numeric order.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.0.order
    }

    /// Sort key realizing the canonical element order: coefficient sequences
    /// (c_0, c_1, ...) compared lexicographically.
    pub fn canonical_key(&self, a: u64) -> u64 {
        let (p, k) = (self.0.p, self.0.k);
        let mut key = 0;
        let mut a = a;
        for _ in 0..k {
            key = key * p + a % p;
            a /= p;
        }
        key
    }

    /// All encodings listed in canonical order.
    pub fn elements_canonical(&self) -> Vec<u64> {
        // canonical_key is an involution (digit reversal), so mapping the
        // key range back through it enumerates elements in key order.
        (0..self.0.order).map(|key| self.canonical_key(key)).collect()
    }

    pub fn element(&self, enc: u64) -> FieldElement {
        assert!(enc < self.0.order, "encoding out of range");
        FieldElement { field: self.clone(), enc }
    }

    pub fn zero_elem(&self) -> FieldElement {
        self.element(0)
    }

    pub fn one_elem(&self) -> FieldElement {
        self.element(1)
    }

    /// Coefficient vector (c_0, ..., c_{k-1}) of an encoding.
    pub fn coeffs(&self, a: u64) -> Vec<u64> {
        let (p, k) = (self.0.p, self.0.k);
        let mut a = a;
        (0..k)
            .map(|_| {
                let c = a % p;
                a /= p;
                c
            })
            .collect()
    }

    /// Encodes a coefficient vector, reducing each entry mod p; entries past
    /// degree k-1 must be absent or zero.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> FieldElement {
        let (p, k) = (self.0.p, self.0.k as usize);
        assert!(coeffs.iter().skip(k).all(|&c| c % p == 0), "coefficients exceed field degree");
        let mut enc = 0;
        for &c in coeffs.iter().take(k).rev() {
            enc = enc * p + c % p;
        }
        self.element(enc)
    }

    // --- raw arithmetic on encodings ---

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (p, k) = (self.0.p, self.0.k);
        if p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..k {
            out += (a % p + b % p) % p * place;
            place *= p;
            a /= p;
            b /= p;
        }
        out
    }

    pub fn neg(&self, a: u64) -> u64 {
        let (p, k) = (self.0.p, self.0.k);
        if p == 2 {
            return a;
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..k {
            out += (p - a % p) % p * place;
            place *= p;
            a /= p;
        }
        out
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        if let Some(t) = &self.0.tables {
            return t.exp[(t.log[a as usize] + t.log[b as usize]) as usize];
        }
        self.mul_poly(a, b)
    }

    fn mul_poly(&self, a: u64, b: u64) -> u64 {
        let p = self.0.p;
        let prod = poly_mul(&self.coeffs(a), &self.coeffs(b), p);
        let red = poly_rem(&prod, &self.0.modulus, p);
        let mut enc = 0;
        for &c in red.iter().rev() {
            enc = enc * p + c;
        }
        enc
    }

    /// Multiplicative inverse; `None` at zero.
    pub fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        if let Some(t) = &self.0.tables {
            let n = self.0.order - 1;
            return Some(t.exp[(n - t.log[a as usize] as u64) as usize]);
        }
        Some(self.pow(a, self.0.order - 2))
    }

    pub fn div(&self, a: u64, b: u64) -> Result<u64> {
        let ib = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, ib))
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        if let Some(t) = &self.0.tables {
            let n = self.0.order - 1;
            let idx = (t.log[a as usize] as u128 * (e % n) as u128 % n as u128) as usize;
            return t.exp[idx];
        }
        let mut base = a;
        let mut e = e % (self.0.order - 1);
        if e == 0 {
            return 1;
        }
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_poly(acc, base);
            }
            base = self.mul_poly(base, base);
            e >>= 1;
        }
        acc
    }

    /// i-fold Frobenius a -> a^(p^i).
    pub fn frobenius(&self, a: u64, i: u32) -> u64 {
        let i = i % self.0.k;
        if i == 0 {
            return a;
        }
        self.pow(a, self.0.p.pow(i))
    }

    /// Trace down to the subfield F_{p^sub_degree}: the sum of the
    /// sub_degree-fold Frobenius orbit.  The result is an encoding of this
    /// field that is guaranteed to lie in the subfield's image.
    pub fn relative_trace(&self, a: u64, sub_degree: u32) -> Result<u64> {
        if sub_degree == 0 || self.0.k % sub_degree != 0 {
            return Err(Error::NotASubfield { sub: sub_degree, sup: self.0.k });
        }
        let steps = self.0.k / sub_degree;
        let mut acc = a;
        let mut t = a;
        for _ in 1..steps {
            t = self.frobenius(t, sub_degree);
            acc = self.add(acc, t);
        }
        Ok(acc)
    }

    /// Absolute trace to F_p, returned as an integer below p.
    pub fn trace_to_prime(&self, a: u64) -> u64 {
        let t = self.relative_trace(a, 1).expect("degree 1 always divides");
        debug_assert!(t < self.0.p);
        t
    }

    /// Trace-dual basis of `basis` with respect to the absolute trace form:
    /// the unique basis {b'_j} with Tr(b_i b'_j) = [i == j].
    pub fn dual_basis(&self, basis: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let k = self.0.k as usize;
        if basis.len() != k || basis.iter().any(|b| b.field != *self) {
            return Err(Error::NotABasis);
        }
        let p = self.0.p;
        // Gram matrix of the trace form, entries in F_p.
        let mut gram = vec![vec![0u64; k]; k];
        for i in 0..k {
            for j in 0..k {
                gram[i][j] = self.trace_to_prime(self.mul(basis[i].enc, basis[j].enc));
            }
        }
        let inv = invert_mod_p(&gram, p).ok_or(Error::NotABasis)?;
        // Dual_j = sum_i inv[i][j] b_i; scalars below p are encodings of
        // constants, so plain field multiplication applies them.
        let mut out = Vec::with_capacity(k);
        for j in 0..k {
            let mut acc = 0;
            for i in 0..k {
                acc = self.add(acc, self.mul(inv[i][j], basis[i].enc));
            }
            out.push(self.element(acc));
        }
        Ok(out)
    }

    /// The polynomial basis {1, x, ..., x^{k-1}}.
    pub fn polynomial_basis(&self) -> Vec<FieldElement> {
        (0..self.0.k).map(|i| self.element(self.0.p.pow(i))).collect()
    }

    /// Embedding of this field into `target`, cached per target degree.
    pub fn embedding(&self, target: &Field) -> Result<Arc<Embedding>> {
        if self.0.p != target.0.p {
            return Err(Error::MixedFields);
        }
        if target.0.k % self.0.k != 0 {
            return Err(Error::NotASubfield { sub: self.0.k, sup: target.0.k });
        }
        let mut cache = self.0.embeddings.lock().unwrap();
        if let Some(e) = cache.get(&target.0.k) {
            return Ok(e.clone());
        }
        let emb = Arc::new(Embedding::build(self, target)?);
        cache.insert(target.0.k, emb.clone());
        Ok(emb)
    }
}

fn build_tables(f: &FieldRepr) -> Tables {
    let order = f.order;
    let n = order - 1;
    // Polynomial-arithmetic multiply, used only while bootstrapping.
    let raw_mul = |a: u64, b: u64| -> u64 {
        let prod = poly_mul(&coeffs_of(a, f.p, f.k), &coeffs_of(b, f.p, f.k), f.p);
        let red = poly_rem(&prod, &f.modulus, f.p);
        red.iter().rev().fold(0, |acc, &c| acc * f.p + c)
    };
    let raw_pow = |mut a: u64, mut e: u64| -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = raw_mul(acc, a);
            }
            a = raw_mul(a, a);
            e >>= 1;
        }
        acc
    };
    let factors = factor(n);
    let gen = (2..order)
        .find(|&c| factors.iter().all(|&ell| raw_pow(c, n / ell) != 1))
        .expect("the multiplicative group is cyclic");
    let mut exp = vec![0u64; (2 * n) as usize];
    let mut log = vec![0u32; order as usize];
    let mut cur = 1;
    for i in 0..n {
        exp[i as usize] = cur;
        exp[(i + n) as usize] = cur;
        log[cur as usize] = i as u32;
        cur = raw_mul(cur, gen);
    }
    debug_assert_eq!(cur, 1);
    Tables { log, exp }
}

fn coeffs_of(a: u64, p: u64, k: u32) -> Vec<u64> {
    let mut a = a;
    (0..k)
        .map(|_| {
            let c = a % p;
            a /= p;
            c
        })
        .collect()
}

/// Gauss-Jordan inverse of a square matrix over F_p; `None` if singular.
fn invert_mod_p(m: &[Vec<u64>], p: u64) -> Option<Vec<Vec<u64>>> {
    let n = m.len();
    let inv_scalar = |a: u64| -> u64 {
        // p is prime and a != 0, so Fermat gives the inverse.
        let mut acc = 1u64;
        let mut base = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    };
    let mut a: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|&x| x % p).collect()).collect();
    let mut b: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let s = inv_scalar(a[col][col]);
        for j in 0..n {
            a[col][j] = a[col][j] * s % p;
            b[col][j] = b[col][j] * s % p;
        }
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let f = a[r][col];
                for j in 0..n {
                    a[r][j] = (a[r][j] + (p - f) * a[col][j]) % p;
                    b[r][j] = (b[r][j] + (p - f) * b[col][j]) % p;
                }
            }
        }
    }
    Some(b)
}

/// An F_p-linear field homomorphism F_{p^k} -> F_{p^K}, k | K, that sends the
/// source generator to the canonically smallest root of the source modulus.
pub struct Embedding {
    p: u64,
    source_k: u32,
    target: Field,
    /// Images of 1, x, ..., x^{k-1} in the target.
    powers: Vec<u64>,
    /// Row-major K x K transform over F_p turning target coordinates into
    /// source coordinates (rows below k must vanish for image membership).
    section_transform: Vec<u64>,
}

impl Embedding {
    fn build(source: &Field, target: &Field) -> Result<Embedding> {
        let p = source.0.p;
        let k = source.0.k as usize;
        let kk = target.0.k as usize;
        // Smallest root, in canonical element order, of the source modulus.
        let modulus = &source.0.modulus;
        let root = target
            .elements_canonical()
            .into_iter()
            .find(|&c| {
                let mut acc = 0;
                for &m in modulus.iter().rev() {
                    acc = target.add(target.mul(acc, c), m % p);
                }
                acc == 0
            })
            .ok_or_else(|| Error::Internal("modulus has no root in the extension".into()))?;
        let mut powers = Vec::with_capacity(k);
        let mut cur = 1;
        for _ in 0..k {
            powers.push(cur);
            cur = target.mul(cur, root);
        }
        // The embedding matrix L (K x k over F_p) has columns powers[i].
        // Row-reduce [L | I] to produce T with T L = [I_k; 0]; T is the
        // section plus the membership test.
        let mut aug: Vec<Vec<u64>> = (0..kk)
            .map(|r| {
                let mut row: Vec<u64> = powers.iter().map(|&w| target.coeffs(w)[r]).collect();
                row.extend((0..kk).map(|j| u64::from(j == r)));
                row
            })
            .collect();
        let inv_scalar = |a: u64| -> u64 {
            let mut acc = 1u64;
            let mut base = a % p;
            let mut e = p - 2;
            while e > 0 {
                if e & 1 == 1 {
                    acc = acc * base % p;
                }
                base = base * base % p;
                e >>= 1;
            }
            acc
        };
        let width = k + kk;
        let mut pivot_row = 0;
        for col in 0..k {
            let pr = (pivot_row..kk).find(|&r| aug[r][col] != 0).ok_or(Error::NotABasis)?;
            aug.swap(pivot_row, pr);
            let s = inv_scalar(aug[pivot_row][col]);
            for j in 0..width {
                aug[pivot_row][j] = aug[pivot_row][j] * s % p;
            }
            for r in 0..kk {
                if r != pivot_row && aug[r][col] != 0 {
                    let f = aug[r][col];
                    for j in 0..width {
                        aug[r][j] = (aug[r][j] + (p - f) * aug[pivot_row][j]) % p;
                    }
                }
            }
            pivot_row += 1;
        }
        let section_transform = aug.iter().flat_map(|r| r[k..].iter().copied()).collect();
        Ok(Embedding {
            p,
            source_k: source.0.k,
            target: target.clone(),
            powers,
            section_transform,
        })
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    /// Maps a source encoding into the target field.
    pub fn map(&self, a: u64) -> u64 {
        let coeffs = coeffs_of(a, self.p, self.source_k);
        let mut acc = 0;
        for (c, &w) in coeffs.iter().zip(&self.powers) {
            if *c != 0 {
                acc = self.target.add(acc, self.target.mul(*c, w));
            }
        }
        acc
    }

    /// Pulls a target encoding back to the source field; `None` when the
    /// element lies outside the embedded image.
    pub fn section(&self, a: u64) -> Option<u64> {
        let p = self.p;
        let k = self.source_k as usize;
        let kk = self.target.0.k as usize;
        let y = self.target.coeffs(a);
        let mut z = vec![0u64; kk];
        for (r, zr) in z.iter_mut().enumerate() {
            let mut acc = 0;
            for c in 0..kk {
                acc = (acc + self.section_transform[r * kk + c] * y[c]) % p;
            }
            *zr = acc;
        }
        if z[k..].iter().any(|&v| v != 0) {
            return None;
        }
        Some(z[..k].iter().rev().fold(0, |acc, &c| acc * p + c))
    }
}

/// An element paired with its field, for checked arithmetic at API surfaces.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    enc: u64,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn enc(&self) -> u64 {
        self.enc
    }

    pub fn coeffs(&self) -> Vec<u64> {
        self.field.coeffs(self.enc)
    }

    pub fn is_zero(&self) -> bool {
        self.enc == 0
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        Ok(self.field.element(self.field.add(self.enc, rhs.enc)))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        Ok(self.field.element(self.field.sub(self.enc, rhs.enc)))
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        Ok(self.field.element(self.field.mul(self.enc, rhs.enc)))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        Ok(self.field.element(self.field.div(self.enc, rhs.enc)?))
    }

    pub fn neg(&self) -> Self {
        self.field.element(self.field.neg(self.enc))
    }

    pub fn inverse(&self) -> Result<Self> {
        let inv = self.field.inv(self.enc).ok_or(Error::DivisionByZero)?;
        Ok(self.field.element(inv))
    }

    pub fn pow(&self, e: u64) -> Self {
        self.field.element(self.field.pow(self.enc, e))
    }

    pub fn frobenius(&self, i: u32) -> Self {
        self.field.element(self.field.frobenius(self.enc, i))
    }
}

impl fmt::Display for FieldElement {
    /// Coefficient list `c0,c1,...,c_{k-1}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.coeffs().iter().map(|c| c.to_string()).collect();
        write!(f, "{}", cs.join(","))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[{}]", self.field, self)
    }
}
