//! Helpers shared by the integration suites: bundled data, code generators,
//! and independently coded run-bound oracles.

use std::collections::BTreeSet;
use std::path::PathBuf;

use rand::seq::IndexedRandom;
use rand::Rng;

use qcc::code::{validate, GroebnerMatrix, QcCode};
use qcc::field::FieldSpec;
use qcc::files::CodeDefinitionFile;
use qcc::poly::{cyclotomic_cosets, minimal_polynomial, Poly};

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn example_code() -> QcCode {
    CodeDefinitionFile::from_path(&data_dir().join("paper_ex1.json"))
        .expect("bundled code file parses")
        .to_code()
        .expect("bundled code file validates")
}

/// An enumerable decodable 2-quasi-cyclic code over GF(2^4), m = 15, k = 10,
/// built like the worked example: g00 = m0 m1 m3, g01 = g00 (X+1), g11 = g00 m5.
pub fn small_code() -> QcCode {
    let spec = FieldSpec::minimal(2, 15).unwrap();
    let pf = spec.prime_field();
    let m0 = minimal_polynomial(0, &spec).unwrap();
    let m1 = minimal_polynomial(1, &spec).unwrap();
    let m3 = minimal_polynomial(3, &spec).unwrap();
    let m5 = minimal_polynomial(5, &spec).unwrap();
    let g00 = m0.mul(&m1, &pf).mul(&m3, &pf);
    let g01 = g00.mul(&Poly::from_coeffs(vec![1, 1], &pf), &pf);
    let g11 = g00.mul(&m5, &pf);
    let basis = GroebnerMatrix::new(15, vec![vec![g00, g01], vec![Poly::zero(), g11]]);
    validate(basis, spec).unwrap()
}

/// Random valid code with m in {7, 9, 15, 21}, ell in {1, 2, 3}, p = 2 and
/// 1 <= k <= 18. Diagonals drop a budgeted set of cyclotomic-coset factors
/// from X^m - 1; off-diagonal entries are multiples of the row's diagonal,
/// which keeps the rows a shift-closed Gröbner basis.
pub fn random_code<R: Rng + ?Sized>(rng: &mut R) -> QcCode {
    loop {
        let m = *[7u64, 9, 15, 21].choose(rng).unwrap();
        let ell = *[1usize, 2, 3].choose(rng).unwrap();
        let spec = FieldSpec::minimal(2, m).unwrap();
        let pf = spec.prime_field();
        let cosets = cyclotomic_cosets(m, 2).unwrap();
        let minpolys: Vec<Poly> = cosets
            .iter()
            .map(|c| minimal_polynomial(c.representative, &spec).unwrap())
            .collect();

        let budget = rng.random_range(1..=18usize);
        let mut remaining = budget;
        let mut diagonals: Vec<Poly> = Vec::with_capacity(ell);
        for _ in 0..ell {
            let mut order: Vec<usize> = (0..minpolys.len()).collect();
            for i in (1..order.len()).rev() {
                order.swap(i, rng.random_range(0..=i));
            }
            let mut g = Poly::one();
            for &idx in &order {
                let deg = minpolys[idx].deg().unwrap();
                if deg <= remaining && rng.random_range(0..4) != 0 {
                    remaining -= deg; // dropped from this diagonal
                } else {
                    g = g.mul(&minpolys[idx], &pf);
                }
            }
            diagonals.push(g);
        }
        let k = (m as usize) * ell - diagonals.iter().map(|g| g.deg().unwrap()).sum::<usize>();
        if k == 0 || k > 18 {
            continue;
        }
        // ascending diagonal degrees give the off-diagonals room
        diagonals.sort_by_key(|g| g.deg().unwrap());

        let mut entries = vec![vec![Poly::zero(); ell]; ell];
        for i in 0..ell {
            entries[i][i] = diagonals[i].clone();
        }
        let xm1 = Poly::xm_minus_one(m, &pf);
        for i in 0..ell {
            if entries[i][i] == xm1 {
                continue; // such a row must stay zero elsewhere
            }
            let di = entries[i][i].deg().unwrap();
            for j in i + 1..ell {
                let dj = entries[j][j].deg().unwrap();
                if dj <= di {
                    continue;
                }
                let acoeffs: Vec<u64> = (0..dj - di).map(|_| rng.random_range(0..2)).collect();
                let a = Poly::from_coeffs(acoeffs, &pf);
                entries[i][j] = entries[i][i].mul(&a, &pf);
            }
        }
        let basis = GroebnerMatrix::new(m, entries);
        return validate(basis, spec).expect("constructed basis is valid");
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Independent run-bound oracle on a zero set: the largest delta + nu over all
/// f, all z coprime to m, and nu <= max_nu such that every exponent
/// f + j + i z (i in [delta-1), j in [nu+1)) lies in the set, with delta > 2.
/// max_nu = 0 is the consecutive-run (BCH-style) bound with arbitrary spacing;
/// nu >= 1 adds the shifted-row (Hartmann-Tzeng-style) runs.
pub fn run_bound_oracle(zeros: &BTreeSet<u64>, m: u64, max_nu: usize) -> Option<usize> {
    let mut best: Option<usize> = None;
    for nu in 0..=max_nu as u64 {
        for z in 1..m {
            if gcd(z, m) != 1 {
                continue;
            }
            for f in 0..m {
                let mut delta = 2u64;
                'grow: for d in 3..=(m + 1) {
                    for i in 0..d - 1 {
                        for j in 0..=nu {
                            if !zeros.contains(&((f + j + i * z) % m)) {
                                break 'grow;
                            }
                        }
                    }
                    delta = d;
                }
                if delta >= 3 {
                    let bound = (delta + nu) as usize;
                    if best.is_none_or(|b| bound > b) {
                        best = Some(bound);
                    }
                }
            }
        }
    }
    best
}

/// Zero set of an ell = 1 generator polynomial.
pub fn generator_zeros(g: &Poly, spec: &FieldSpec) -> BTreeSet<u64> {
    (0..spec.m())
        .filter(|&e| g.eval_alpha_pow(e as i64, spec).is_zero())
        .collect()
}
