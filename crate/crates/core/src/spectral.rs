//! Spectral analysis of a quasi-cyclic code: eigenvalues of the generator
//! matrix, eigenspaces and their intersections, the eigencode and its distance.

use crate::code::QcCode;
use crate::field::{FieldElement, FieldSpec};
use crate::linalg;

/// An eigenvalue alpha^exponent of the code with both multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenvalue {
    pub exponent: u64,
    /// Root order of (X - alpha^exponent) in det G(X). Since X^m - 1 is
    /// squarefree here, this is the number of vanishing diagonal entries.
    pub algebraic: usize,
    /// Right-kernel dimension of G(alpha^exponent).
    pub geometric: usize,
}

/// A subspace of GF(p^r)^ell with a leading-one normalized basis, labeled by
/// the eigenvalue exponents it was cut out by.
#[derive(Clone, Debug)]
pub struct Eigenspace {
    ell: usize,
    exponents: Vec<u64>,
    basis: Vec<Vec<FieldElement>>,
}

impl Eigenspace {
    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<FieldElement>] {
        &self.basis
    }

    /// Exponent labels, sorted ascending.
    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }
}

/// All exponents e in [0, m) with det G(alpha^e) = 0, with multiplicities.
pub fn eigenvalues(code: &QcCode) -> Vec<Eigenvalue> {
    let spec = code.spec();
    let mut out = Vec::new();
    for e in 0..code.m() {
        let vanishing = (0..code.ell())
            .filter(|&i| {
                code.basis()
                    .diagonal(i)
                    .eval_alpha_pow(e as i64, spec)
                    .is_zero()
            })
            .count();
        if vanishing == 0 {
            continue;
        }
        let mat = evaluated_matrix(code, e);
        let geometric = code.ell() - linalg::ext::rank(&mat);
        out.push(Eigenvalue {
            exponent: e,
            algebraic: vanishing,
            geometric,
        });
    }
    out
}

fn evaluated_matrix(code: &QcCode, e: u64) -> Vec<Vec<FieldElement>> {
    let spec = code.spec();
    (0..code.ell())
        .map(|i| {
            (0..code.ell())
                .map(|j| code.basis().entry(i, j).eval_alpha_pow(e as i64, spec))
                .collect()
        })
        .collect()
}

/// Right kernel of G(alpha^e); the zero-dimensional space if e is not an
/// eigenvalue exponent.
pub fn eigenspace(code: &QcCode, e: u64) -> Eigenspace {
    let e = e % code.m();
    let mat = evaluated_matrix(code, e);
    let mut basis = linalg::ext::right_kernel(&mat, code.ell(), code.spec());
    linalg::ext::normalize_leading(&mut basis);
    Eigenspace {
        ell: code.ell(),
        exponents: vec![e],
        basis,
    }
}

/// Intersection of eigenspaces, computed pairwise with early exit once zero.
pub fn intersect(spaces: &[Eigenspace]) -> Eigenspace {
    assert!(
        !spaces.is_empty(),
        "intersect needs at least one eigenspace"
    );
    let ell = spaces[0].ell;
    assert!(
        spaces.iter().all(|s| s.ell == ell),
        "eigenspaces must share the same ambient dimension"
    );
    let mut acc = spaces[0].clone();
    for s in &spaces[1..] {
        acc = intersect_pair(&acc, s);
        if acc.is_zero() {
            let mut exponents: Vec<u64> = spaces.iter().flat_map(|s| s.exponents.clone()).collect();
            exponents.sort_unstable();
            exponents.dedup();
            acc.exponents = exponents;
            return acc;
        }
    }
    acc.exponents.sort_unstable();
    acc.exponents.dedup();
    acc
}

fn intersect_pair(a: &Eigenspace, b: &Eigenspace) -> Eigenspace {
    let mut exponents = a.exponents.clone();
    exponents.extend_from_slice(&b.exponents);
    if a.is_zero() || b.is_zero() {
        return Eigenspace {
            ell: a.ell,
            exponents,
            basis: Vec::new(),
        };
    }
    let spec = a.basis[0][0].field().clone();
    // columns: coefficients x for a-basis, then y for b-basis; rows enforce
    // sum x_i a_i - sum y_j b_j = 0 coordinate-wise
    let cols = a.dim() + b.dim();
    let mat: Vec<Vec<FieldElement>> = (0..a.ell)
        .map(|coord| {
            let mut row = Vec::with_capacity(cols);
            for v in &a.basis {
                row.push(v[coord].clone());
            }
            for w in &b.basis {
                row.push(-&w[coord]);
            }
            row
        })
        .collect();
    let kernel = linalg::ext::right_kernel(&mat, cols, &spec);
    let mut basis: Vec<Vec<FieldElement>> = kernel
        .iter()
        .map(|coeffs| {
            let mut v = vec![spec.zero(); a.ell];
            for (i, av) in a.basis.iter().enumerate() {
                if coeffs[i].is_zero() {
                    continue;
                }
                for (t, e) in v.iter_mut().enumerate() {
                    *e = &*e + &(&coeffs[i] * &av[t]);
                }
            }
            v
        })
        .collect();
    // the mapped kernel vectors can be linearly dependent; keep a basis
    basis = independent_subset(basis);
    linalg::ext::normalize_leading(&mut basis);
    Eigenspace {
        ell: a.ell,
        exponents,
        basis,
    }
}

fn independent_subset(vectors: Vec<Vec<FieldElement>>) -> Vec<Vec<FieldElement>> {
    let mut kept: Vec<Vec<FieldElement>> = Vec::new();
    for v in vectors {
        if v.iter().all(FieldElement::is_zero) {
            continue;
        }
        let mut stack = kept.clone();
        stack.push(v.clone());
        if linalg::ext::rank(&stack) > kept.len() {
            kept.push(v);
        }
    }
    kept
}

/// How far the eigencode's minimum distance is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EigencodeDistance {
    /// The eigencode is the zero code.
    Infinite,
    Exact(usize),
    /// Enumeration refused (p^k_ec above the cutoff); only >= 1 is certified.
    NotComputed,
}

impl EigencodeDistance {
    /// min(value, other) treating Infinite as larger than everything and
    /// NotComputed as the conservative lower bound 1.
    pub fn min_with(self, other: usize) -> usize {
        match self {
            EigencodeDistance::Infinite => other,
            EigencodeDistance::Exact(d) => d.min(other),
            EigencodeDistance::NotComputed => 1.min(other),
        }
    }
}

/// The eigencode of a space: GF(p) vectors orthogonal to every basis vector,
/// with its minimum distance.
#[derive(Clone, Debug)]
pub struct EigencodeInfo {
    /// GF(p)-basis of the eigencode over the ell coordinates.
    pub generators: Vec<Vec<u64>>,
    pub distance: EigencodeDistance,
}

const EIGENCODE_ENUM_CUTOFF: u128 = 1 << 20;

pub fn eigencode(space: &Eigenspace, spec: &FieldSpec) -> EigencodeInfo {
    let pf = spec.prime_field();
    // expand each constraint sum v_i c_i = 0 into r base-field rows
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(space.dim() * spec.r());
    for v in &space.basis {
        for h in 0..spec.r() {
            rows.push(v.iter().map(|e| e.coordinates()[h]).collect());
        }
    }
    let generators = if rows.is_empty() {
        // no constraints: the full space GF(p)^ell
        (0..space.ell)
            .map(|i| {
                let mut v = vec![0u64; space.ell];
                v[i] = 1;
                v
            })
            .collect()
    } else {
        linalg::prime::right_kernel(&rows, space.ell, &pf)
    };
    if generators.is_empty() {
        return EigencodeInfo {
            generators,
            distance: EigencodeDistance::Infinite,
        };
    }
    let kec = generators.len() as u32;
    let words = (spec.p() as u128).checked_pow(kec);
    if words.is_none_or(|w| w > EIGENCODE_ENUM_CUTOFF) {
        return EigencodeInfo {
            generators,
            distance: EigencodeDistance::NotComputed,
        };
    }
    // exhaustive weight enumeration over all nonzero combinations
    let p = spec.p();
    let total = words.unwrap() as u64;
    let mut best = usize::MAX;
    for idx in 1..total {
        let mut word = vec![0u64; space.ell];
        let mut k = idx;
        for g in &generators {
            let c = k % p;
            k /= p;
            if c == 0 {
                continue;
            }
            for (acc, &v) in word.iter_mut().zip(g) {
                *acc = pf.add(*acc, pf.mul(c, v));
            }
        }
        let w = word.iter().filter(|&&x| x != 0).count();
        if w > 0 {
            best = best.min(w);
        }
    }
    EigencodeInfo {
        generators,
        distance: EigencodeDistance::Exact(best),
    }
}

/// A vector in the span whose ell coordinates are linearly independent over
/// GF(p), scaled so its first nonzero coordinate is 1. Search order: basis
/// vectors, combinations of up to three of them, then seeded random span
/// elements.
pub fn independent_witness(space: &Eigenspace, spec: &FieldSpec) -> Option<Vec<FieldElement>> {
    use rand::{Rng, SeedableRng};

    if space.is_zero() || space.ell > spec.r() {
        return None;
    }
    let check = |v: &[FieldElement]| -> bool {
        let rows: Vec<Vec<u64>> = v.iter().map(|e| e.coordinates().to_vec()).collect();
        linalg::prime::rank(&rows, &spec.prime_field()) == space.ell
    };
    let normalize = |v: Vec<FieldElement>| -> Vec<FieldElement> {
        let mut out = v;
        let lead = out
            .iter()
            .find(|e| !e.is_zero())
            .expect("independent vector is nonzero")
            .clone();
        let inv = lead.inv().expect("nonzero");
        for e in out.iter_mut() {
            *e = &*e * &inv;
        }
        out
    };

    for v in &space.basis {
        if check(v) {
            return Some(normalize(v.clone()));
        }
    }

    // combinations of up to 3 basis vectors with nonzero coefficients
    let dim = space.dim();
    let p = spec.p();
    let nonzero: Vec<u64> = (1..p).collect();
    let try_combo = |idxs: &[usize], coeffs: &[u64]| -> Option<Vec<FieldElement>> {
        let mut v = vec![spec.zero(); space.ell];
        for (&i, &c) in idxs.iter().zip(coeffs) {
            for (t, e) in v.iter_mut().enumerate() {
                *e = &*e + &space.basis[i][t].scale(c);
            }
        }
        if check(&v) {
            Some(normalize(v))
        } else {
            None
        }
    };
    for i in 0..dim {
        for j in i + 1..dim {
            for &ci in &nonzero {
                for &cj in &nonzero {
                    if let Some(v) = try_combo(&[i, j], &[ci, cj]) {
                        return Some(v);
                    }
                    for kk in j + 1..dim {
                        for &ck in &nonzero {
                            if let Some(v) = try_combo(&[i, j, kk], &[ci, cj, ck]) {
                                return Some(v);
                            }
                        }
                    }
                }
            }
        }
    }

    // uniformly random span elements: full extension-field coefficients
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(0x5eed_41c3);
    let random_element = |rng: &mut rand_chacha::ChaCha12Rng| {
        let coords: Vec<u64> = (0..spec.r()).map(|_| rng.random_range(0..p)).collect();
        spec.element(coords).expect("coordinates in range")
    };
    for _ in 0..1000 {
        let coeffs: Vec<FieldElement> = (0..dim).map(|_| random_element(&mut rng)).collect();
        if coeffs.iter().all(FieldElement::is_zero) {
            continue;
        }
        let mut v = vec![spec.zero(); space.ell];
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (t, e) in v.iter_mut().enumerate() {
                *e = &*e + &(c * &space.basis[i][t]);
            }
        }
        if !v.iter().all(FieldElement::is_zero) && check(&v) {
            return Some(normalize(v));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{validate, GroebnerMatrix};
    use crate::field::FieldSpec;
    use crate::poly::minimal_polynomial;
    use crate::testutil::example_code;
    use rand::SeedableRng;

    #[test]
    fn example_eigenvalues_and_multiplicities() {
        let code = example_code();
        let eigs = eigenvalues(&code);
        let mult2: Vec<u64> = eigs
            .iter()
            .filter(|e| e.algebraic == 2)
            .map(|e| e.exponent)
            .collect();
        assert_eq!(mult2, vec![0, 1, 2, 4, 8, 9, 16, 18, 32, 36]);
        let mult1: Vec<u64> = eigs
            .iter()
            .filter(|e| e.algebraic == 1)
            .map(|e| e.exponent)
            .collect();
        assert_eq!(mult1, vec![5, 10, 17, 20, 34, 40]);
        for e in &eigs {
            assert_eq!(e.algebraic, e.geometric, "exponent {}", e.exponent);
        }
        // total algebraic multiplicity = deg det G = m*ell - k
        let total: usize = eigs.iter().map(|e| e.algebraic).sum();
        assert_eq!(total, code.n() - code.k());
    }

    #[test]
    fn ell_one_eigenvalues_are_generator_zeros() {
        let spec = FieldSpec::minimal(2, 15).unwrap();
        let g = minimal_polynomial(1, &spec).unwrap();
        let zeros: Vec<u64> = (0..15)
            .filter(|&e| g.eval_alpha_pow(e as i64, &spec).is_zero())
            .collect();
        let code = validate(GroebnerMatrix::new(15, vec![vec![g]]), spec).unwrap();
        let eigs = eigenvalues(&code);
        let exps: Vec<u64> = eigs.iter().map(|e| e.exponent).collect();
        assert_eq!(exps, zeros);
        assert!(eigs.iter().all(|e| e.algebraic == 1 && e.geometric == 1));
    }

    #[test]
    fn example_eigenspace_dimensions() {
        let code = example_code();
        let spec = code.spec();
        for e in [0u64, 1, 2, 4, 8, 9, 16, 18, 32, 36] {
            assert_eq!(eigenspace(&code, e).dim(), 2, "exponent {e}");
        }
        let v5 = eigenspace(&code, 5);
        assert_eq!(v5.dim(), 1);
        // basis vector proportional to (1, alpha^4 + 1); leading-one form equals it
        let expect = vec![spec.one(), &spec.alpha_pow(4) + &spec.one()];
        assert_eq!(v5.basis()[0], expect);
        assert_eq!(eigenspace(&code, 3).dim(), 0);
    }

    #[test]
    fn example_intersection_contains_witness() {
        let code = example_code();
        let spec = code.spec();
        let spaces: Vec<Eigenspace> = [0u64, 4, 8, 1, 5, 9]
            .iter()
            .map(|&e| eigenspace(&code, e))
            .collect();
        let inter = intersect(&spaces);
        assert_eq!(inter.dim(), 1);
        let expect = vec![spec.one(), &spec.alpha_pow(4) + &spec.one()];
        assert_eq!(inter.basis()[0], expect);
        assert_eq!(inter.exponents(), &[0, 1, 4, 5, 8, 9]);

        // intersect([V]) = V
        let single = intersect(&spaces[..1]);
        assert_eq!(single.dim(), spaces[0].dim());

        // intersecting with the zero space stays zero
        let zero = eigenspace(&code, 3);
        let with_zero = intersect(&[spaces[0].clone(), zero]);
        assert!(with_zero.is_zero());
    }

    #[test]
    fn eigencode_cases() {
        let code = example_code();
        let spec = code.spec();
        let spaces: Vec<Eigenspace> = [0u64, 4, 8, 1, 5, 9]
            .iter()
            .map(|&e| eigenspace(&code, e))
            .collect();
        let inter = intersect(&spaces);
        let ec = eigencode(&inter, spec);
        assert_eq!(ec.distance, EigencodeDistance::Infinite);
        assert!(ec.generators.is_empty());

        // no constraints: the full space, distance 1
        let zero_space = eigenspace(&code, 3);
        let ec = eigencode(&zero_space, spec);
        assert_eq!(ec.generators.len(), 2);
        assert_eq!(ec.distance, EigencodeDistance::Exact(1));

        // a space containing (1,1) over GF(2): eigencode {00, 11}, distance 2
        let ones = Eigenspace {
            ell: 2,
            exponents: vec![],
            basis: vec![vec![spec.one(), spec.one()]],
        };
        let ec = eigencode(&ones, spec);
        assert_eq!(ec.generators, vec![vec![1, 1]]);
        assert_eq!(ec.distance, EigencodeDistance::Exact(2));
    }

    #[test]
    fn witness_for_example_intersection() {
        let code = example_code();
        let spec = code.spec();
        let spaces: Vec<Eigenspace> = [0u64, 4, 8, 1, 5, 9]
            .iter()
            .map(|&e| eigenspace(&code, e))
            .collect();
        let inter = intersect(&spaces);
        let w = independent_witness(&inter, spec).unwrap();
        assert_eq!(w, vec![spec.one(), &spec.alpha_pow(4) + &spec.one()]);

        // ell = 1: any nonzero vector qualifies
        let one_dim = Eigenspace {
            ell: 1,
            exponents: vec![],
            basis: vec![vec![spec.alpha_pow(7)]],
        };
        let w = independent_witness(&one_dim, spec).unwrap();
        assert_eq!(w, vec![spec.one()]);

        // zero space: none
        assert!(independent_witness(&eigenspace(&code, 3), spec).is_none());
    }

    #[test]
    fn eigenvectors_annihilate_codewords() {
        let code = example_code();
        let spec = code.spec();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(11);
        let eigs = eigenvalues(&code);
        for _ in 0..5 {
            let c = code.random_codeword(&mut rng);
            for eig in &eigs {
                let space = eigenspace(&code, eig.exponent);
                for v in space.basis() {
                    let mut acc = spec.zero();
                    for (t, comp) in c.components().iter().enumerate() {
                        let val = comp.eval_alpha_pow(eig.exponent as i64, spec);
                        acc = &acc + &(&val * &v[t]);
                    }
                    assert!(acc.is_zero(), "exponent {}", eig.exponent);
                }
            }
        }
    }

    #[test]
    fn eigencode_generators_satisfy_constraints() {
        let code = example_code();
        let spec = code.spec();
        let v5 = eigenspace(&code, 5);
        // use a space with a nontrivial eigencode: a single vector (1, 1)
        let ones = Eigenspace {
            ell: 2,
            exponents: vec![],
            basis: vec![vec![spec.one(), spec.one()]],
        };
        for space in [&v5, &ones] {
            let ec = eigencode(space, spec);
            for g in &ec.generators {
                for v in space.basis() {
                    let mut acc = spec.zero();
                    for (vi, &ci) in v.iter().zip(g) {
                        acc = &acc + &vi.scale(ci);
                    }
                    assert!(acc.is_zero());
                }
            }
        }
    }
}
