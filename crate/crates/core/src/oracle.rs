//! Brute-force ground truth at small scale: exact minimum distance, nearest
//! codeword, and the syndrome-matrix rank decomposition.

use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::bound::BoundCertificate;
use crate::code::{QcCode, Word};
use crate::field::FieldElement;
use crate::linalg;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("message space p^k = {space} exceeds the enumeration guard {limit}")]
    GuardExceeded { space: u128, limit: u128 },
    #[error("the code has dimension zero; minimum distance is undefined")]
    ZeroDimension,
}

const MIN_DISTANCE_GUARD: u128 = 1 << 18;
const NEAREST_GUARD: u128 = 1 << 16;

fn space_size(code: &QcCode) -> u128 {
    (code.spec().p() as u128).saturating_pow(code.k() as u32)
}

/// Loopless reflected mixed-radix Gray walk: each step changes one digit by
/// +1 or -1, visiting all p^k words starting from zero.
struct GrayWalk {
    radix: u64,
    digits: Vec<u64>,
    focus: Vec<usize>,
    dir: Vec<i8>,
}

impl GrayWalk {
    fn new(k: usize, radix: u64) -> GrayWalk {
        GrayWalk {
            radix,
            digits: vec![0; k],
            focus: (0..=k).collect(),
            dir: vec![1; k],
        }
    }

    /// Next digit change (index, +1/-1), or None when the walk is done.
    fn step(&mut self) -> Option<(usize, i8)> {
        let j = self.focus[0];
        self.focus[0] = 0;
        if j == self.digits.len() {
            return None;
        }
        let d = self.dir[j];
        self.digits[j] = (self.digits[j] as i64 + d as i64) as u64;
        if self.digits[j] == 0 || self.digits[j] == self.radix - 1 {
            self.dir[j] = -self.dir[j];
            self.focus[j] = self.focus[j + 1];
            self.focus[j + 1] = j + 1;
        }
        Some((j, d))
    }
}

/// Incrementally maintained combination of generator rows with a nonzero count
/// against a fixed reference vector.
struct WalkState<'a> {
    rows: &'a [Vec<u64>],
    p: u64,
    current: Vec<u64>,
    reference: Vec<u64>,
    differing: usize,
}

impl<'a> WalkState<'a> {
    fn new(rows: &'a [Vec<u64>], n: usize, p: u64, reference: Vec<u64>) -> WalkState<'a> {
        let current = vec![0u64; n];
        let differing = reference.iter().filter(|&&v| v != 0).count();
        WalkState {
            rows,
            p,
            current,
            reference,
            differing,
        }
    }

    fn apply(&mut self, row: usize, delta: i8) {
        for (pos, &v) in self.rows[row].iter().enumerate() {
            if v == 0 {
                continue;
            }
            let old = self.current[pos];
            let new = if delta > 0 {
                let s = old + v;
                if s >= self.p {
                    s - self.p
                } else {
                    s
                }
            } else {
                if old >= v {
                    old - v
                } else {
                    old + self.p - v
                }
            };
            self.current[pos] = new;
            let was = old != self.reference[pos];
            let is = new != self.reference[pos];
            match (was, is) {
                (false, true) => self.differing += 1,
                (true, false) => self.differing -= 1,
                _ => {}
            }
        }
    }
}

/// Exact minimum Hamming weight over all p^k - 1 nonzero codewords, counted
/// in the m*ell-symbol flat layout. Guarded at p^k <= 2^18.
pub fn min_distance_exhaustive(code: &QcCode) -> Result<usize, OracleError> {
    if code.k() == 0 {
        return Err(OracleError::ZeroDimension);
    }
    let space = space_size(code);
    if space > MIN_DISTANCE_GUARD {
        return Err(OracleError::GuardExceeded {
            space,
            limit: MIN_DISTANCE_GUARD,
        });
    }
    let rows = code.shift_generator_rows();
    let mut state = WalkState::new(&rows, code.n(), code.spec().p(), vec![0u64; code.n()]);
    let mut walk = GrayWalk::new(code.k(), code.spec().p());
    let mut best = usize::MAX;
    while let Some((row, delta)) = walk.step() {
        state.apply(row, delta);
        // the all-zero word is only the starting point, never revisited
        best = best.min(state.differing);
    }
    Ok(best)
}

/// A codeword at minimal Hamming distance from rx, with the number of
/// codewords achieving that distance. Guarded at p^k <= 2^16.
#[derive(Clone, Debug)]
pub struct NearestResult {
    pub codeword: Word,
    pub distance: usize,
    pub tie_count: usize,
}

pub fn nearest_codeword(code: &QcCode, rx: &Word) -> Result<NearestResult, OracleError> {
    let space = space_size(code);
    if space > NEAREST_GUARD {
        return Err(OracleError::GuardExceeded {
            space,
            limit: NEAREST_GUARD,
        });
    }
    let rows = code.shift_generator_rows();
    let reference = code.word_to_flat(rx);
    let mut state = WalkState::new(&rows, code.n(), code.spec().p(), reference);
    let mut walk = GrayWalk::new(code.k(), code.spec().p());
    let mut best = state.differing;
    let mut best_digits = walk.digits.clone();
    let mut ties = 1usize;
    while let Some((row, delta)) = walk.step() {
        state.apply(row, delta);
        if state.differing < best {
            best = state.differing;
            best_digits = walk.digits.clone();
            ties = 1;
        } else if state.differing == best {
            ties += 1;
        }
    }
    // rebuild the argmin from its digit snapshot
    let pf = code.spec().prime_field();
    let mut flat = vec![0u64; code.n()];
    for (row, &c) in rows.iter().zip(&best_digits) {
        if c == 0 {
            continue;
        }
        for (acc, &v) in flat.iter_mut().zip(row) {
            *acc = pf.add(*acc, pf.mul(c, v));
        }
    }
    let codeword = code.word_from_flat(&flat).expect("basis rows are in range");
    Ok(NearestResult {
        codeword,
        distance: best,
        tie_count: ties,
    })
}

/// Non-guaranteed upper bound on the minimum weight from random nonzero
/// codewords; deterministic for a fixed seed.
pub fn sampled_weight_upper_bound(code: &QcCode, samples: u64, seed: u64) -> usize {
    let rows = code.shift_generator_rows();
    let p = code.spec().p();
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
    let mut best = usize::MAX;
    if p == 2 {
        // bit-packed fast path
        let words = code.n().div_ceil(64);
        let packed: Vec<Vec<u64>> = rows
            .iter()
            .map(|r| {
                let mut w = vec![0u64; words];
                for (i, &v) in r.iter().enumerate() {
                    if v != 0 {
                        w[i / 64] |= 1 << (i % 64);
                    }
                }
                w
            })
            .collect();
        let mut acc = vec![0u64; words];
        for _ in 0..samples {
            acc.iter_mut().for_each(|w| *w = 0);
            let mut any = false;
            for row in &packed {
                if rng.random::<bool>() {
                    any = true;
                    for (a, &w) in acc.iter_mut().zip(row) {
                        *a ^= w;
                    }
                }
            }
            if !any {
                continue;
            }
            let w: usize = acc.iter().map(|x| x.count_ones() as usize).sum();
            if w > 0 {
                best = best.min(w);
            }
        }
    } else {
        let pf = code.spec().prime_field();
        let mut acc = vec![0u64; code.n()];
        for _ in 0..samples {
            acc.iter_mut().for_each(|x| *x = 0);
            let mut any = false;
            for row in &rows {
                let c = rng.random_range(0..p);
                if c == 0 {
                    continue;
                }
                any = true;
                for (a, &v) in acc.iter_mut().zip(row) {
                    *a = pf.add(*a, pf.mul(c, v));
                }
            }
            if !any {
                continue;
            }
            let w = acc.iter().filter(|&&x| x != 0).count();
            if w > 0 {
                best = best.min(w);
            }
        }
    }
    best
}

/// Rebuild the stacked syndrome matrix of a planted error and check the
/// X . Y . Xbar decomposition entrywise together with rank(S) = eps.
pub fn verify_rank_decomposition(code: &QcCode, cert: &BoundCertificate, error: &Word) -> bool {
    let spec = code.spec();
    let Some(witness) = cert.witness.as_ref() else {
        return false;
    };
    let m = code.m() as i64;
    let positions = error.burst_positions();
    let eps = positions.len();
    if eps == 0 {
        return true; // rank 0, empty decomposition
    }
    let delta = cert.delta;
    let nu = cert.nu;
    let z = cert.z as i64;
    let f = cert.f as i64;
    if delta - 1 < eps {
        return false; // no Hankel rows exist at this error weight
    }
    let power = |e: i64| spec.alpha_pow(e.rem_euclid(m));

    // syndrome grid of the error word
    let grid: Vec<Vec<FieldElement>> = (0..=nu as i64)
        .map(|t| {
            (0..delta as i64 - 1)
                .map(|i| {
                    let e = (f + i * z + t).rem_euclid(m);
                    let mut acc = spec.zero();
                    for (j, comp) in error.components().iter().enumerate() {
                        acc = &acc + &(&comp.eval_alpha_pow(e, spec) * &witness[j]);
                    }
                    acc
                })
                .collect()
        })
        .collect();

    // E_s = sum_t e_{s,t} v_t
    let big: Vec<FieldElement> = positions
        .iter()
        .map(|&s| {
            let mut acc = spec.zero();
            for (t, comp) in error.components().iter().enumerate() {
                acc = &acc + &witness[t].scale(comp.coeff(s as usize));
            }
            acc
        })
        .collect();

    // stacked Hankel S, (nu+1)(delta-1-eps) x eps
    let mut stacked: Vec<Vec<FieldElement>> = Vec::new();
    for t in 0..=nu {
        for i in 0..delta - 1 - eps {
            stacked.push((0..eps).map(|j| grid[t][i + j].clone()).collect());
        }
    }

    // X^(t)[i][j] = alpha^{(t + z i) s_j}, Y = diag(E_{s_j} alpha^{f s_j}),
    // Xbar[j][c] = alpha^{s_j z c}
    let mut product: Vec<Vec<FieldElement>> = Vec::new();
    for t in 0..=nu as i64 {
        for i in 0..delta as i64 - 1 - eps as i64 {
            let row: Vec<FieldElement> = (0..eps as i64)
                .map(|c| {
                    let mut acc = spec.zero();
                    for (j, &s) in positions.iter().enumerate() {
                        let s = s as i64;
                        let x = power((t + z * i) * s);
                        let y = &big[j] * &power(f * s);
                        let xbar = power(s * z * c);
                        acc = &acc + &(&(&x * &y) * &xbar);
                    }
                    acc
                })
                .collect();
            product.push(row);
        }
    }

    if stacked != product {
        return false;
    }
    linalg::ext::rank(&stacked) == eps
}

/// Random burst-error word: eps distinct positions, each with at least one
/// nonzero symbol across the ell components.
pub fn random_burst_error<R: Rng + ?Sized>(code: &QcCode, eps: usize, rng: &mut R) -> Word {
    let mut positions: Vec<u64> = Vec::new();
    while positions.len() < eps {
        let p = rng.random_range(0..code.m());
        if !positions.contains(&p) {
            positions.push(p);
        }
    }
    let mut flat = vec![0u64; code.n()];
    for &pos in &positions {
        loop {
            let mut any = false;
            for t in 0..code.ell() {
                let v = rng.random_range(0..code.spec().p());
                flat[pos as usize * code.ell() + t] = v;
                any |= v != 0;
            }
            if any {
                break;
            }
        }
    }
    code.word_from_flat(&flat).expect("symbols in range")
}
