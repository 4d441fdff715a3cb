//! Exact arithmetic in GF(p) and GF(p^r), with a designated m-th root of unity.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::poly::raw;

#[derive(Debug, Error)]
pub enum FieldError {
    #[error("p = {0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("modulus must be monic of degree r with coefficients in [0, p)")]
    BadModulus,
    #[error("modulus is reducible over GF(p): divisible by {factor:?}")]
    ReducibleModulus { factor: Vec<u64> },
    #[error("field size p^r does not fit in 64 bits")]
    FieldTooLarge,
    #[error("gcd(m, p) must be 1, got m = {m}, p = {p}")]
    RepeatedRoots { m: u64, p: u64 },
    #[error("m = {m} does not divide p^r - 1 = {group}")]
    OrderDoesNotDivide { m: u64, group: u64 },
    #[error("supplied alpha does not have order {0}")]
    WrongAlphaOrder(u64),
    #[error("no element of multiplicative order m = {0} exists in this field")]
    NoRootOfUnity(u64),
    #[error("element coefficients must have length r = {r} with entries in [0, p)")]
    BadElement { r: usize },
    #[error("cannot invert zero")]
    ZeroInverse,
    #[error("no irreducible modulus of degree {r} found over GF({p})")]
    NoIrreducible { p: u64, r: usize },
    #[error("q = {q} has no multiplicative order modulo m = {m} (gcd != 1)")]
    NoOrderModM { q: u64, m: u64 },
}

/// Scalar arithmetic mod a prime. Everything fits in u64 (p < 2^32).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        PrimeField { p }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Inverse by Fermat; panics on zero (callers guard).
    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "division by zero in GF({})", self.p);
        self.pow(a, self.p - 2)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
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

/// Log/antilog tables w.r.t. a primitive element, built when p^r <= 2^16.
struct LogTables {
    /// exp[i] = canonical index of g^i, length size-1
    exp: Vec<u32>,
    /// log[idx] = discrete log of the element with canonical index idx (log[0] unused)
    log: Vec<u32>,
}

struct FieldInner {
    prime: PrimeField,
    r: usize,
    /// monic, ascending, length r+1
    modulus: Vec<u64>,
    m: u64,
    size: u64,
    alpha: Vec<u64>,
    /// alpha^e for e in [0, m)
    alpha_pows: Vec<Vec<u64>>,
    /// coefficients -> exponent, for elements of <alpha>
    alpha_log: HashMap<Vec<u64>, u64>,
    tables: Option<LogTables>,
}

/// A concrete GF(p^r) together with its chosen m-th root of unity. Cheap to clone.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<FieldInner>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FieldSpec(GF({}^{}), m={})",
            self.inner.prime.p, self.inner.r, self.inner.m
        )
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.prime == other.inner.prime
                && self.inner.r == other.inner.r
                && self.inner.modulus == other.inner.modulus
                && self.inner.m == other.inner.m
                && self.inner.alpha == other.inner.alpha)
    }
}
impl Eq for FieldSpec {}

impl FieldSpec {
    /// GF(p^r) mod `modulus` with alpha derived as g^((p^r-1)/m) from the first
    /// primitive element g in canonical index order.
    pub fn new(p: u64, r: usize, modulus: Vec<u64>, m: u64) -> Result<FieldSpec, FieldError> {
        Self::build(p, r, modulus, m, None)
    }

    /// Same, but with an explicitly chosen alpha (must have order exactly m).
    pub fn with_alpha(
        p: u64,
        r: usize,
        modulus: Vec<u64>,
        m: u64,
        alpha: Vec<u64>,
    ) -> Result<FieldSpec, FieldError> {
        Self::build(p, r, modulus, m, Some(alpha))
    }

    /// The smallest field containing an m-th root of unity: r = ord_m(p),
    /// modulus = first irreducible of degree r in canonical index order.
    pub fn minimal(p: u64, m: u64) -> Result<FieldSpec, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if m == 0 || gcd(m, p) != 1 {
            return Err(FieldError::RepeatedRoots { m, p });
        }
        // multiplicative order of p modulo m
        let mut r = 1usize;
        let mut acc = p % m;
        while acc != 1 % m {
            acc = acc * p % m;
            r += 1;
            if r > 64 {
                return Err(FieldError::NoOrderModM { q: p, m });
            }
        }
        let modulus = find_irreducible(PrimeField::new(p), r)?;
        Self::build(p, r, modulus, m, None)
    }

    fn build(
        p: u64,
        r: usize,
        mut modulus: Vec<u64>,
        m: u64,
        alpha: Option<Vec<u64>>,
    ) -> Result<FieldSpec, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if p >= 1 << 32 {
            return Err(FieldError::FieldTooLarge);
        }
        if r == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let prime = PrimeField::new(p);
        raw::normalize(&mut modulus);
        if modulus.len() != r + 1 || modulus[r] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(FieldError::BadModulus);
        }
        if let Some(factor) = irreducibility_witness(prime, &modulus) {
            return Err(FieldError::ReducibleModulus { factor });
        }
        let size = checked_pow(p, r).ok_or(FieldError::FieldTooLarge)?;
        if m == 0 || gcd(m, p) != 1 {
            return Err(FieldError::RepeatedRoots { m, p });
        }
        if (size - 1) % m != 0 {
            return Err(FieldError::OrderDoesNotDivide { m, group: size - 1 });
        }

        let mut inner = FieldInner {
            prime,
            r,
            modulus,
            m,
            size,
            alpha: vec![0; r],
            alpha_pows: Vec::new(),
            alpha_log: HashMap::new(),
            tables: None,
        };

        let alpha = match alpha {
            Some(mut a) => {
                if a.len() > r {
                    raw::normalize(&mut a);
                }
                if a.len() > r || a.iter().any(|&c| c >= p) {
                    return Err(FieldError::BadElement { r });
                }
                a.resize(r, 0);
                if inner.order_of(&a) != Some(m) {
                    return Err(FieldError::WrongAlphaOrder(m));
                }
                a
            }
            None => {
                let g = inner.find_primitive().ok_or(FieldError::NoRootOfUnity(m))?;
                inner.pow_raw(&g, (size - 1) / m)
            }
        };
        inner.alpha = alpha;

        // powers of alpha and the discrete log within <alpha>
        let mut pows = Vec::with_capacity(m as usize);
        let mut cur = inner.one_raw();
        for _ in 0..m {
            pows.push(cur.clone());
            cur = inner.mul_raw(&cur, &inner.alpha);
        }
        debug_assert_eq!(cur, inner.one_raw());
        let mut dlog = HashMap::with_capacity(m as usize);
        for (e, v) in pows.iter().enumerate() {
            dlog.insert(v.clone(), e as u64);
        }
        inner.alpha_pows = pows;
        inner.alpha_log = dlog;

        if size <= 1 << 16 {
            inner.tables = inner.build_tables();
        }

        Ok(FieldSpec {
            inner: Arc::new(inner),
        })
    }

    pub fn p(&self) -> u64 {
        self.inner.prime.p
    }

    pub fn r(&self) -> usize {
        self.inner.r
    }

    pub fn m(&self) -> u64 {
        self.inner.m
    }

    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    pub fn size(&self) -> u64 {
        self.inner.size
    }

    pub fn prime_field(&self) -> PrimeField {
        self.inner.prime
    }

    pub fn same_as(&self, other: &FieldSpec) -> bool {
        self == other
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coeffs: vec![0; self.inner.r],
        }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coeffs: self.inner.one_raw(),
        }
    }

    /// Embed a base-field scalar.
    pub fn from_base(&self, c: u64) -> FieldElement {
        let mut coeffs = vec![0; self.inner.r];
        coeffs[0] = c % self.p();
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    pub fn element(&self, mut coeffs: Vec<u64>) -> Result<FieldElement, FieldError> {
        if coeffs.len() > self.inner.r {
            raw::normalize(&mut coeffs);
        }
        if coeffs.len() > self.inner.r || coeffs.iter().any(|&c| c >= self.p()) {
            return Err(FieldError::BadElement { r: self.inner.r });
        }
        coeffs.resize(self.inner.r, 0);
        Ok(FieldElement {
            field: self.clone(),
            coeffs,
        })
    }

    pub fn alpha(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coeffs: self.inner.alpha.clone(),
        }
    }

    /// alpha^(e mod m) for any integer e.
    pub fn alpha_pow(&self, e: i64) -> FieldElement {
        let m = self.inner.m as i64;
        let e = e.rem_euclid(m) as usize;
        FieldElement {
            field: self.clone(),
            coeffs: self.inner.alpha_pows[e].clone(),
        }
    }

    /// Exponent e with elem = alpha^e, if elem lies in <alpha>.
    pub fn alpha_exponent_of(&self, elem: &FieldElement) -> Option<u64> {
        self.inner.alpha_log.get(&elem.coeffs).copied()
    }

    /// Iterator over all field elements in canonical index order; test-scale only.
    pub fn all_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let size = self.inner.size;
        (0..size).map(move |idx| FieldElement {
            field: self.clone(),
            coeffs: self.inner.index_to_coeffs(idx),
        })
    }
}

impl FieldInner {
    fn one_raw(&self) -> Vec<u64> {
        let mut v = vec![0; self.r];
        v[0] = 1 % self.prime.p;
        v
    }

    fn index_to_coeffs(&self, mut idx: u64) -> Vec<u64> {
        let p = self.prime.p;
        let mut v = vec![0; self.r];
        for c in v.iter_mut() {
            *c = idx % p;
            idx /= p;
        }
        v
    }

    fn coeffs_to_index(&self, coeffs: &[u64]) -> u64 {
        let p = self.prime.p;
        let mut idx = 0u64;
        for &c in coeffs.iter().rev() {
            idx = idx * p + c;
        }
        idx
    }

    fn add_raw(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| self.prime.add(x, y))
            .collect()
    }

    fn mul_raw(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        if let Some(t) = &self.tables {
            let ia = self.coeffs_to_index(a);
            let ib = self.coeffs_to_index(b);
            if ia == 0 || ib == 0 {
                return vec![0; self.r];
            }
            let n = self.size - 1;
            let e = (t.log[ia as usize] as u64 + t.log[ib as usize] as u64) % n;
            return self.index_to_coeffs(t.exp[e as usize] as u64);
        }
        self.mul_generic(a, b)
    }

    fn mul_generic(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let r = self.r;
        let mut prod = vec![0u64; 2 * r - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                prod[i + j] = self.prime.add(prod[i + j], self.prime.mul(x, y));
            }
        }
        // reduce degrees >= r using X^r = -(modulus mod X^r)
        for d in (r..2 * r - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for j in 0..r {
                let mc = self.modulus[j];
                if mc != 0 {
                    prod[d - r + j] = self.prime.sub(prod[d - r + j], self.prime.mul(c, mc));
                }
            }
        }
        prod.truncate(r);
        prod
    }

    fn pow_raw(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let mut base = a.to_vec();
        let mut acc = self.one_raw();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(&acc, &base);
            }
            base = self.mul_raw(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn inv_raw(&self, a: &[u64]) -> Option<Vec<u64>> {
        if a.iter().all(|&c| c == 0) {
            return None;
        }
        if let Some(t) = &self.tables {
            let ia = self.coeffs_to_index(a);
            let n = self.size - 1;
            let e = (n - t.log[ia as usize] as u64) % n;
            return Some(self.index_to_coeffs(t.exp[e as usize] as u64));
        }
        // extended Euclid in GF(p)[X] against the modulus
        let mut av = a.to_vec();
        raw::normalize(&mut av);
        let (g, s, _) = raw::ext_gcd(&av, &self.modulus, &self.prime);
        debug_assert_eq!(g.len(), 1, "modulus must be coprime to nonzero elements");
        let ginv = self.prime.inv(g[0]);
        let mut out: Vec<u64> = s.iter().map(|&c| self.prime.mul(c, ginv)).collect();
        let (_, mut rem) = raw::divmod(&out, &self.modulus, &self.prime).expect("modulus nonzero");
        std::mem::swap(&mut out, &mut rem);
        out.resize(self.r, 0);
        Some(out)
    }

    /// Multiplicative order, None for zero.
    fn order_of(&self, a: &[u64]) -> Option<u64> {
        if a.iter().all(|&c| c == 0) {
            return None;
        }
        let n = self.size - 1;
        if self.pow_raw(a, n) != self.one_raw() {
            return None;
        }
        let mut order = n;
        for q in prime_factors(n) {
            while order.is_multiple_of(q) && self.pow_raw(a, order / q) == self.one_raw() {
                order /= q;
            }
        }
        Some(order)
    }

    fn find_primitive(&self) -> Option<Vec<u64>> {
        let n = self.size - 1;
        for idx in 1..self.size {
            let cand = self.index_to_coeffs(idx);
            if self.order_of(&cand) == Some(n) {
                return Some(cand);
            }
        }
        None
    }

    fn build_tables(&self) -> Option<LogTables> {
        let g = self.find_primitive()?;
        let n = self.size - 1;
        let mut exp = vec![0u32; n as usize];
        let mut log = vec![0u32; self.size as usize];
        let mut cur = self.one_raw();
        for i in 0..n {
            let idx = self.coeffs_to_index(&cur);
            exp[i as usize] = idx as u32;
            log[idx as usize] = i as u32;
            cur = self.mul_raw(&cur, &g);
        }
        Some(LogTables { exp, log })
    }
}

/// An element of GF(p^r), stored as its power-basis coordinate vector.
#[derive(Clone)]
pub struct FieldElement {
    field: FieldSpec,
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The GF(p)-coordinate vector in the power basis (length r).
    pub fn coordinates(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        let coeffs = self
            .field
            .inner
            .inv_raw(&self.coeffs)
            .ok_or(FieldError::ZeroInverse)?;
        Ok(FieldElement {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coeffs: self.field.inner.pow_raw(&self.coeffs, e),
        }
    }

    /// Multiply by a base-field scalar.
    pub fn scale(&self, c: u64) -> FieldElement {
        let pf = self.field.inner.prime;
        let c = c % pf.p;
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|&x| pf.mul(x, c)).collect(),
        }
    }

    fn check_same_field(&self, other: &FieldElement) {
        assert!(
            self.field.same_as(&other.field),
            "field elements from different FieldSpecs"
        );
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.check_same_field(other);
        self.coeffs == other.coeffs
    }
}
impl Eq for FieldElement {}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fe{:?}", self.coeffs)
    }
}

impl std::ops::Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.check_same_field(rhs);
        FieldElement {
            field: self.field.clone(),
            coeffs: self.field.inner.add_raw(&self.coeffs, &rhs.coeffs),
        }
    }
}

impl std::ops::Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.check_same_field(rhs);
        let pf = self.field.inner.prime;
        FieldElement {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(&a, &b)| pf.sub(a, b))
                .collect(),
        }
    }
}

impl std::ops::Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.check_same_field(rhs);
        FieldElement {
            field: self.field.clone(),
            coeffs: self.field.inner.mul_raw(&self.coeffs, &rhs.coeffs),
        }
    }
}

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let pf = self.field.inner.prime;
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|&a| pf.neg(a)).collect(),
        }
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn checked_pow(p: u64, r: usize) -> Option<u64> {
    let mut acc = 1u64;
    for _ in 0..r {
        acc = acc.checked_mul(p)?;
    }
    Some(acc)
}

/// Returns a proper monic divisor of degree <= r/2 if one exists.
fn irreducibility_witness(pf: PrimeField, modulus: &[u64]) -> Option<Vec<u64>> {
    let r = modulus.len() - 1;
    if r == 1 {
        return None;
    }
    for d in 1..=r / 2 {
        // all monic polynomials of degree d
        let count = checked_pow(pf.p, d).expect("trial divisor space fits");
        for idx in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut k = idx;
            for _ in 0..d {
                cand.push(k % pf.p);
                k /= pf.p;
            }
            cand.push(1);
            let (_, rem) = raw::divmod(modulus, &cand, &pf).expect("divisor nonzero");
            if rem.is_empty() {
                return Some(cand);
            }
        }
    }
    None
}

/// First irreducible monic polynomial of degree r, in canonical index order.
fn find_irreducible(pf: PrimeField, r: usize) -> Result<Vec<u64>, FieldError> {
    let count = checked_pow(pf.p, r).ok_or(FieldError::FieldTooLarge)?;
    for idx in 0..count {
        let mut cand = Vec::with_capacity(r + 1);
        let mut k = idx;
        for _ in 0..r {
            cand.push(k % pf.p);
            k /= pf.p;
        }
        cand.push(1);
        if cand[0] == 0 {
            continue; // divisible by X
        }
        if irreducibility_witness(pf, &cand).is_none() {
            return Ok(cand);
        }
    }
    Err(FieldError::NoIrreducible { p: pf.p, r })
}
