//! Exact Gaussian elimination over GF(p) and GF(p^r). Internal.

#[derive(Debug, PartialEq, Eq)]
pub(crate) enum SolveError {
    Inconsistent,
    Underdetermined,
}

/// Matrices over GF(p) as row vectors of u64.
pub(crate) mod prime {
    use super::SolveError;
    use crate::field::PrimeField;

    /// In-place reduced row echelon form; returns pivot column indices.
    pub fn rref(mat: &mut [Vec<u64>], pf: &PrimeField) -> Vec<usize> {
        let rows = mat.len();
        let cols = mat.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            let Some(sel) = (row..rows).find(|&i| mat[i][col] != 0) else {
                continue;
            };
            mat.swap(row, sel);
            let inv = pf.inv(mat[row][col]);
            for c in col..cols {
                mat[row][c] = pf.mul(mat[row][c], inv);
            }
            for i in 0..rows {
                if i != row && mat[i][col] != 0 {
                    let factor = mat[i][col];
                    for c in col..cols {
                        let delta = pf.mul(factor, mat[row][c]);
                        mat[i][c] = pf.sub(mat[i][c], delta);
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(mat: &[Vec<u64>], pf: &PrimeField) -> usize {
        let mut work = mat.to_vec();
        rref(&mut work, pf).len()
    }

    /// Basis of { x : mat x = 0 }, one vector per free column, free entry 1.
    pub fn right_kernel(mat: &[Vec<u64>], cols: usize, pf: &PrimeField) -> Vec<Vec<u64>> {
        let mut work: Vec<Vec<u64>> = mat
            .iter()
            .map(|r| {
                debug_assert_eq!(r.len(), cols);
                r.clone()
            })
            .collect();
        let pivots = rref(&mut work, pf);
        let mut basis = Vec::new();
        for free in 0..cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![0u64; cols];
            v[free] = 1;
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = pf.neg(work[prow][free]);
            }
            basis.push(v);
        }
        basis
    }

    /// Unique solution of mat x = rhs, or why there is none.
    pub fn solve_unique(
        mat: &[Vec<u64>],
        rhs: &[u64],
        cols: usize,
        pf: &PrimeField,
    ) -> Result<Vec<u64>, SolveError> {
        let mut work: Vec<Vec<u64>> = mat
            .iter()
            .zip(rhs)
            .map(|(r, &b)| {
                debug_assert_eq!(r.len(), cols);
                let mut row = r.clone();
                row.push(b);
                row
            })
            .collect();
        let pivots = rref(&mut work, pf);
        if pivots.last() == Some(&cols) {
            return Err(SolveError::Inconsistent);
        }
        if pivots.len() < cols {
            return Err(SolveError::Underdetermined);
        }
        let mut x = vec![0u64; cols];
        for (prow, &pcol) in pivots.iter().enumerate() {
            x[pcol] = work[prow][cols];
        }
        Ok(x)
    }
}

/// Matrices over GF(p^r) as row vectors of FieldElement.
pub(crate) mod ext {
    use super::SolveError;
    use crate::field::{FieldElement, FieldSpec};

    pub fn rref(mat: &mut [Vec<FieldElement>]) -> Vec<usize> {
        let rows = mat.len();
        let cols = mat.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            let Some(sel) = (row..rows).find(|&i| !mat[i][col].is_zero()) else {
                continue;
            };
            mat.swap(row, sel);
            let inv = mat[row][col].inv().expect("pivot nonzero");
            for c in col..cols {
                mat[row][c] = &mat[row][c] * &inv;
            }
            for i in 0..rows {
                if i != row && !mat[i][col].is_zero() {
                    let factor = mat[i][col].clone();
                    for c in col..cols {
                        let delta = &factor * &mat[row][c];
                        mat[i][c] = &mat[i][c] - &delta;
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(mat: &[Vec<FieldElement>]) -> usize {
        let mut work = mat.to_vec();
        rref(&mut work).len()
    }

    pub fn right_kernel(
        mat: &[Vec<FieldElement>],
        cols: usize,
        spec: &FieldSpec,
    ) -> Vec<Vec<FieldElement>> {
        let mut work = mat.to_vec();
        let pivots = rref(&mut work);
        let mut basis = Vec::new();
        for free in 0..cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![spec.zero(); cols];
            v[free] = spec.one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = -&work[prow][free];
            }
            basis.push(v);
        }
        basis
    }

    pub fn solve_unique(
        mat: &[Vec<FieldElement>],
        rhs: &[FieldElement],
        cols: usize,
    ) -> Result<Vec<FieldElement>, SolveError> {
        let mut work: Vec<Vec<FieldElement>> = mat
            .iter()
            .zip(rhs)
            .map(|(r, b)| {
                debug_assert_eq!(r.len(), cols);
                let mut row = r.clone();
                row.push(b.clone());
                row
            })
            .collect();
        let pivots = rref(&mut work);
        if pivots.last() == Some(&cols) {
            return Err(SolveError::Inconsistent);
        }
        if pivots.len() < cols {
            return Err(SolveError::Underdetermined);
        }
        let spec = rhs
            .first()
            .map(|e| e.field().clone())
            .expect("nonempty system");
        let mut x = vec![spec.zero(); cols];
        for (prow, &pcol) in pivots.iter().enumerate() {
            x[pcol] = work[prow][cols].clone();
        }
        Ok(x)
    }

    /// Scale each basis vector so its first nonzero coordinate is 1.
    pub fn normalize_leading(basis: &mut [Vec<FieldElement>]) {
        for v in basis.iter_mut() {
            if let Some(lead) = v.iter().find(|e| !e.is_zero()) {
                let inv = lead.inv().expect("nonzero");
                for e in v.iter_mut() {
                    *e = &*e * &inv;
                }
            }
        }
    }
}
