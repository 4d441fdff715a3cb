//! Univariate polynomials over GF(p) and GF(p^r); cyclotomic cosets and
//! minimal polynomials.

use std::fmt;

use thiserror::Error;

use crate::field::{gcd as int_gcd, FieldElement, FieldSpec, PrimeField};

#[derive(Debug, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd({q}, {m}) != 1: coset orbit is not well defined")]
    CosetNotCoprime { q: u64, m: u64 },
    #[error("coset representative {i} out of range [0, {m})")]
    CosetOutOfRange { i: u64, m: u64 },
}

/// Coefficient-level routines on raw ascending vectors over GF(p).
/// The zero polynomial is the empty vector; otherwise the top coefficient is nonzero.
pub(crate) mod raw {
    use super::PrimeField;

    pub fn normalize(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn add(a: &[u64], b: &[u64], pf: &PrimeField) -> Vec<u64> {
        let mut out = vec![0; a.len().max(b.len())];
        for (i, o) in out.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            *o = pf.add(x, y);
        }
        normalize(&mut out);
        out
    }

    pub fn sub(a: &[u64], b: &[u64], pf: &PrimeField) -> Vec<u64> {
        let mut out = vec![0; a.len().max(b.len())];
        for (i, o) in out.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            *o = pf.sub(x, y);
        }
        normalize(&mut out);
        out
    }

    pub fn mul(a: &[u64], b: &[u64], pf: &PrimeField) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    out[i + j] = pf.add(out[i + j], pf.mul(x, y));
                }
            }
        }
        normalize(&mut out);
        out
    }

    pub fn divmod(a: &[u64], b: &[u64], pf: &PrimeField) -> Option<(Vec<u64>, Vec<u64>)> {
        if b.is_empty() {
            return None;
        }
        let mut rem = a.to_vec();
        normalize(&mut rem);
        if rem.len() < b.len() {
            return Some((Vec::new(), rem));
        }
        let lead_inv = pf.inv(*b.last().unwrap());
        let mut quot = vec![0; rem.len() - b.len() + 1];
        while rem.len() >= b.len() {
            let shift = rem.len() - b.len();
            let coef = pf.mul(*rem.last().unwrap(), lead_inv);
            quot[shift] = coef;
            for (j, &bc) in b.iter().enumerate() {
                if bc != 0 {
                    rem[shift + j] = pf.sub(rem[shift + j], pf.mul(coef, bc));
                }
            }
            normalize(&mut rem);
            if rem.is_empty() {
                break;
            }
        }
        normalize(&mut quot);
        Some((quot, rem))
    }

    pub fn gcd(a: &[u64], b: &[u64], pf: &PrimeField) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        normalize(&mut x);
        normalize(&mut y);
        while !y.is_empty() {
            let (_, r) = divmod(&x, &y, pf).unwrap();
            x = y;
            y = r;
        }
        make_monic(&mut x, pf);
        x
    }

    /// (g, s, t) with a*s + b*t = g; g normalized monic.
    pub fn ext_gcd(a: &[u64], b: &[u64], pf: &PrimeField) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
        let mut r0 = a.to_vec();
        let mut r1 = b.to_vec();
        normalize(&mut r0);
        normalize(&mut r1);
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = divmod(&r0, &r1, pf).unwrap();
            let s = sub(&s0, &mul(&q, &s1, pf), pf);
            let t = sub(&t0, &mul(&q, &t1, pf), pf);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if let Some(&lead) = r0.last() {
            let inv = pf.inv(lead);
            for c in r0.iter_mut().chain(s0.iter_mut()).chain(t0.iter_mut()) {
                *c = pf.mul(*c, inv);
            }
        }
        (r0, s0, t0)
    }

    pub fn make_monic(v: &mut [u64], pf: &PrimeField) {
        if let Some(&lead) = v.last() {
            if lead != 1 {
                let inv = pf.inv(lead);
                for c in v.iter_mut() {
                    *c = pf.mul(*c, inv);
                }
            }
        }
    }
}

/// Polynomial over GF(p), ascending coefficients, canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<u64>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly { coeffs: vec![1] }
    }

    pub fn from_coeffs(mut coeffs: Vec<u64>, pf: &PrimeField) -> Poly {
        for c in coeffs.iter_mut() {
            *c %= pf.p();
        }
        raw::normalize(&mut coeffs);
        Poly { coeffs }
    }

    pub fn monomial(deg: usize, c: u64, pf: &PrimeField) -> Poly {
        let c = c % pf.p();
        if c == 0 {
            return Poly::zero();
        }
        let mut coeffs = vec![0; deg + 1];
        coeffs[deg] = c;
        Poly { coeffs }
    }

    /// X^m - 1.
    pub fn xm_minus_one(m: u64, pf: &PrimeField) -> Poly {
        let mut coeffs = vec![0; m as usize + 1];
        coeffs[0] = pf.neg(1);
        coeffs[m as usize] = 1;
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c))
    }

    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    pub fn add(&self, other: &Poly, pf: &PrimeField) -> Poly {
        Poly {
            coeffs: raw::add(&self.coeffs, &other.coeffs, pf),
        }
    }

    pub fn sub(&self, other: &Poly, pf: &PrimeField) -> Poly {
        Poly {
            coeffs: raw::sub(&self.coeffs, &other.coeffs, pf),
        }
    }

    pub fn mul(&self, other: &Poly, pf: &PrimeField) -> Poly {
        Poly {
            coeffs: raw::mul(&self.coeffs, &other.coeffs, pf),
        }
    }

    pub fn divmod(&self, other: &Poly, pf: &PrimeField) -> Result<(Poly, Poly), PolyError> {
        let (q, r) =
            raw::divmod(&self.coeffs, &other.coeffs, pf).ok_or(PolyError::DivisionByZero)?;
        Ok((Poly { coeffs: q }, Poly { coeffs: r }))
    }

    pub fn divides(&self, other: &Poly, pf: &PrimeField) -> bool {
        match raw::divmod(&other.coeffs, &self.coeffs, pf) {
            Some((_, r)) => r.is_empty(),
            None => other.is_zero(),
        }
    }

    /// Monic gcd; gcd(f, 0) = monic(f).
    pub fn gcd(&self, other: &Poly, pf: &PrimeField) -> Poly {
        Poly {
            coeffs: raw::gcd(&self.coeffs, &other.coeffs, pf),
        }
    }

    pub fn monic(&self, pf: &PrimeField) -> Poly {
        let mut coeffs = self.coeffs.clone();
        raw::make_monic(&mut coeffs, pf);
        Poly { coeffs }
    }

    /// Reduce modulo X^m - 1 by folding exponents.
    pub fn rem_xm_minus_one(&self, m: u64, pf: &PrimeField) -> Poly {
        let m = m as usize;
        let mut out = vec![0u64; m];
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                out[i % m] = pf.add(out[i % m], c);
            }
        }
        raw::normalize(&mut out);
        Poly { coeffs: out }
    }

    pub fn mul_mod_xm(&self, other: &Poly, m: u64, pf: &PrimeField) -> Poly {
        self.mul(other, pf).rem_xm_minus_one(m, pf)
    }

    /// Multiply by X modulo X^m - 1 (one cyclic shift).
    pub fn shift_mod_xm(&self, m: u64, pf: &PrimeField) -> Poly {
        self.mul_mod_xm(&Poly::monomial(1, 1, pf), m, pf)
    }

    /// Horner evaluation in the extension, base coefficients lifted canonically.
    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let spec = x.field();
        let mut acc = spec.zero();
        for &c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &spec.from_base(c);
        }
        acc
    }

    /// Evaluate at alpha^e using exponent arithmetic mod m.
    pub fn eval_alpha_pow(&self, e: i64, spec: &FieldSpec) -> FieldElement {
        let m = spec.m() as i64;
        let e = e.rem_euclid(m);
        let mut acc = spec.zero();
        for (s, c) in self.support() {
            let term = spec.alpha_pow(e * (s as i64 % m)).scale(c);
            acc = &acc + &term;
        }
        acc
    }
}

/// Orbit of i under multiplication by q modulo m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicCoset {
    pub representative: u64,
    pub members: Vec<u64>,
}

pub fn cyclotomic_coset(i: u64, m: u64, q: u64) -> Result<CyclotomicCoset, PolyError> {
    if int_gcd(q % m, m) != 1 {
        return Err(PolyError::CosetNotCoprime { q, m });
    }
    if i >= m {
        return Err(PolyError::CosetOutOfRange { i, m });
    }
    let mut members = vec![i];
    let mut j = i * q % m;
    while j != i {
        members.push(j);
        j = j * q % m;
    }
    members.sort_unstable();
    Ok(CyclotomicCoset {
        representative: i,
        members,
    })
}

/// All cosets modulo m, keyed by their smallest member, ascending.
pub fn cyclotomic_cosets(m: u64, q: u64) -> Result<Vec<CyclotomicCoset>, PolyError> {
    let mut seen = vec![false; m as usize];
    let mut out = Vec::new();
    for i in 0..m {
        if seen[i as usize] {
            continue;
        }
        let mut coset = cyclotomic_coset(i, m, q)?;
        for &j in &coset.members {
            seen[j as usize] = true;
        }
        coset.representative = i;
        out.push(coset);
    }
    Ok(out)
}

/// Minimal polynomial of alpha^i over GF(p): product of (X - alpha^j) over the
/// coset of i, then coefficient descent to the base field.
pub fn minimal_polynomial(i: u64, spec: &FieldSpec) -> Result<Poly, PolyError> {
    let coset = cyclotomic_coset(i % spec.m(), spec.m(), spec.p())?;
    let mut prod = ExtPoly::constant(spec.one());
    for &j in &coset.members {
        let linear =
            ExtPoly::from_coeffs(spec.clone(), vec![-&spec.alpha_pow(j as i64), spec.one()]);
        prod = prod.mul(&linear);
    }
    let mut coeffs = Vec::with_capacity(prod.coeffs.len());
    for c in &prod.coeffs {
        let coords = c.coordinates();
        assert!(
            coords[1..].iter().all(|&x| x == 0),
            "minimal polynomial coefficient {c:?} is not in the base field"
        );
        coeffs.push(coords[0]);
    }
    Ok(Poly { coeffs })
}

/// Polynomial over GF(p^r), ascending coefficients, canonical form.
#[derive(Clone, PartialEq, Eq)]
pub struct ExtPoly {
    field: FieldSpec,
    coeffs: Vec<FieldElement>,
}

impl fmt::Debug for ExtPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtPoly{:?}", self.coeffs)
    }
}

impl ExtPoly {
    pub fn zero(field: FieldSpec) -> ExtPoly {
        ExtPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: FieldElement) -> ExtPoly {
        let field = c.field().clone();
        let mut p = ExtPoly {
            field,
            coeffs: vec![c],
        };
        p.normalize();
        p
    }

    pub fn from_coeffs(field: FieldSpec, coeffs: Vec<FieldElement>) -> ExtPoly {
        let mut p = ExtPoly { field, coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map(FieldElement::is_zero) == Some(true) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn add(&self, other: &ExtPoly) -> ExtPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(&self.coeff(i) + &other.coeff(i));
        }
        ExtPoly::from_coeffs(self.field.clone(), coeffs)
    }

    pub fn mul(&self, other: &ExtPoly) -> ExtPoly {
        if self.is_zero() || other.is_zero() {
            return ExtPoly::zero(self.field.clone());
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        ExtPoly::from_coeffs(self.field.clone(), coeffs)
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }
}
