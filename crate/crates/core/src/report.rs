//! Deterministic text rendering for reports and transcripts. Extension
//! elements print as powers of alpha ("a^e") when they lie in <alpha>,
//! "0" when zero, and as an explicit coordinate list otherwise.

use crate::bound::BoundCertificate;
use crate::code::{QcCode, Word};
use crate::decoder::{ErrorDescription, SyndromeSet};
use crate::field::FieldElement;
use crate::poly::ExtPoly;
use crate::spectral::{EigencodeDistance, Eigenvalue};

pub fn fmt_element(e: &FieldElement) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    match e.field().alpha_exponent_of(e) {
        Some(exp) => format!("a^{exp}"),
        None => {
            let coords: Vec<String> = e.coordinates().iter().map(u64::to_string).collect();
            format!("poly({})", coords.join(","))
        }
    }
}

pub fn fmt_vector(v: &[FieldElement]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_element).collect();
    format!("({})", parts.join(", "))
}

pub fn fmt_ext_poly(p: &ExtPoly) -> String {
    if p.is_zero() {
        return "[0]".to_string();
    }
    let parts: Vec<String> = p.coeffs().iter().map(fmt_element).collect();
    format!("[{}]", parts.join(", "))
}

pub fn fmt_exponents(exps: &[u64]) -> String {
    let parts: Vec<String> = exps.iter().map(u64::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

pub fn fmt_dec(dec: EigencodeDistance) -> String {
    match dec {
        EigencodeDistance::Infinite => "infinity".to_string(),
        EigencodeDistance::Exact(d) => d.to_string(),
        EigencodeDistance::NotComputed => ">=1 (not computed)".to_string(),
    }
}

pub fn code_header(code: &QcCode) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "code: [{}, {}] {}-quasi-cyclic over GF({}), m = {}\n",
        code.n(),
        code.k(),
        code.ell(),
        code.spec().p(),
        code.m()
    ));
    let modulus: Vec<String> = code.spec().modulus().iter().map(u64::to_string).collect();
    out.push_str(&format!(
        "field: GF({}^{}), modulus [{}], alpha of order {}\n",
        code.spec().p(),
        code.spec().r(),
        modulus.join(","),
        code.m()
    ));
    out
}

pub fn eigenvalue_table(eigs: &[Eigenvalue]) -> String {
    let mut out = String::from("eigenvalues (exponent: algebraic/geometric):\n");
    for e in eigs {
        out.push_str(&format!(
            "  {}: {}/{}\n",
            e.exponent, e.algebraic, e.geometric
        ));
    }
    out
}

pub fn certificate_block(cert: &BoundCertificate) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "certificate: f = {}, z = {}, delta = {}, nu = {}\n",
        cert.f, cert.z, cert.delta, cert.nu
    ));
    out.push_str(&format!("  D = {}\n", fmt_exponents(&cert.d_set)));
    out.push_str(&format!(
        "  intersection dimension = {}\n",
        cert.intersection.dim()
    ));
    out.push_str(&format!("  eigencode distance = {}\n", fmt_dec(cert.dec())));
    match &cert.witness {
        Some(w) => out.push_str(&format!("  witness = {}\n", fmt_vector(w))),
        None => {
            if cert.dec() == EigencodeDistance::Infinite {
                out.push_str(
                    "  witness = none found (eigencode is trivial but the search failed)\n",
                );
            } else {
                out.push_str("  witness = none (eigencode is nontrivial)\n");
            }
        }
    }
    out.push_str(&format!("  d* = {}\n", cert.dstar));
    out
}

pub fn syndrome_block(synd: &SyndromeSet) -> String {
    let mut out = String::from("syndromes:\n");
    for (t, poly) in synd.polys().iter().enumerate() {
        out.push_str(&format!("  S_{t} = {}\n", fmt_ext_poly(poly)));
    }
    out
}

pub fn error_block(err: &ErrorDescription) -> String {
    let mut out = String::new();
    let positions: Vec<String> = err.positions.iter().map(u64::to_string).collect();
    out.push_str(&format!("positions: [{}]\n", positions.join(", ")));
    for (pos, value) in err.positions.iter().zip(&err.big_values) {
        out.push_str(&format!("  E_{pos} = {}\n", fmt_element(value)));
    }
    for (pos, symbols) in err.positions.iter().zip(&err.symbols) {
        let row: Vec<String> = symbols.iter().map(u64::to_string).collect();
        out.push_str(&format!("  e[{pos}] = ({})\n", row.join(", ")));
    }
    out.push_str(&format!(
        "epsilon = {}, epsilon_tilde = {}\n",
        err.epsilon, err.epsilon_tilde
    ));
    out
}

pub fn word_block(code: &QcCode, label: &str, word: &Word) -> String {
    let flat: Vec<String> = code.word_to_flat(word).iter().map(u64::to_string).collect();
    format!("{label}: [{}]\n", flat.join(" "))
}
