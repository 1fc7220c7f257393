use super::{IntegerRing, Matrix};
use crate::{Error, Result};

/// Row-style Hermite basis of the lattice spanned by a list of vectors.
///
/// `echelon = transform * basis`, with `transform` unimodular and
/// `echelon` in row echelon form with positive pivots.
#[derive(Clone, Debug)]
pub struct HermiteBasis<T> {
    dim: usize,
    echelon: Matrix<T>,
    transform: Matrix<T>,
    pivots: Vec<(usize, usize)>,
}

impl<T: IntegerRing> HermiteBasis<T> {
    pub fn new(basis: &[Vec<T>], dim: usize) -> Result<Self> {
        if let Some(bad) = basis.iter().find(|v| v.len() != dim) {
            return Err(Error::Domain(format!("basis vector of length {} in dimension {dim}", bad.len())));
        }
        let k = basis.len();
        let mut h = Matrix::from_rows(basis.to_vec(), dim);
        let mut t = Matrix::identity(k);
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..dim {
            if row == k {
                break;
            }
            loop {
                let best = (row..k)
                    .filter(|&i| !h[(i, col)].is_zero())
                    .min_by(|&a, &b| h[(a, col)].abs().cmp(&h[(b, col)].abs()));
                let Some(p) = best else { break };
                h.swap_rows(row, p);
                t.swap_rows(row, p);
                let mut clean = true;
                for i in row + 1..k {
                    if h[(i, col)].is_zero() {
                        continue;
                    }
                    let q = -h[(i, col)].div_floor(&h[(row, col)]);
                    h.add_row_multiple(i, row, &q);
                    t.add_row_multiple(i, row, &q);
                    clean &= h[(i, col)].is_zero();
                }
                if clean {
                    break;
                }
            }
            if h[(row, col)].is_zero() {
                continue;
            }
            if h[(row, col)].is_negative() {
                h.negate_row(row);
                t.negate_row(row);
            }
            for i in 0..row {
                let q = -h[(i, col)].div_floor(&h[(row, col)]);
                h.add_row_multiple(i, row, &q);
                t.add_row_multiple(i, row, &q);
            }
            pivots.push((row, col));
            row += 1;
        }
        Ok(HermiteBasis { dim, echelon: h, transform: t, pivots })
    }

    pub fn echelon(&self) -> &Matrix<T> {
        &self.echelon
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Integer coefficients expressing `target` in the original basis, or
    /// `None` when `target` is outside the lattice.
    pub fn solve(&self, target: &[T]) -> Result<Option<Vec<T>>> {
        if target.len() != self.dim {
            return Err(Error::Domain(format!(
                "target of length {} in dimension {}",
                target.len(),
                self.dim
            )));
        }
        let mut rest = target.to_vec();
        let mut coeffs = vec![T::zero(); self.echelon.rows()];
        for &(r, col) in &self.pivots {
            let (q, rem) = rest[col].div_rem(&self.echelon[(r, col)]);
            if !rem.is_zero() {
                return Ok(None);
            }
            for j in 0..self.dim {
                rest[j] = rest[j].clone() - q.clone() * self.echelon[(r, j)].clone();
            }
            coeffs[r] = q;
        }
        if rest.iter().any(|x| !x.is_zero()) {
            return Ok(None);
        }
        Ok(Some(self.transform.left_apply(&coeffs)))
    }
}

/// Decides whether `target` lies in the integer span of `basis`; returns
/// coefficients when it does.
pub fn subgroup_membership<T: IntegerRing>(basis: &[Vec<T>], target: &[T]) -> Result<Option<Vec<T>>> {
    HermiteBasis::new(basis, target.len())?.solve(target)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_multiple() {
        let c = subgroup_membership(&[vec![2i64, -2]], &[4, -4]).unwrap();
        assert_eq!(c, Some(vec![2]));
    }

    #[test]
    fn pivot_does_not_divide() {
        assert_eq!(subgroup_membership(&[vec![2i64, -2]], &[1, -1]).unwrap(), None);
    }

    #[test]
    fn empty_basis() {
        assert_eq!(subgroup_membership::<i64>(&[], &[0, 0]).unwrap(), Some(vec![]));
        assert_eq!(subgroup_membership::<i64>(&[], &[0, 1]).unwrap(), None);
    }

    #[test]
    fn dimension_mismatch() {
        assert!(matches!(subgroup_membership(&[vec![1i64, 0]], &[1]), Err(Error::Domain(_))));
    }

    #[test]
    fn coefficients_reconstruct_target() {
        let basis = vec![vec![4i64, 6, 0], vec![2, 2, 2], vec![0, 2, -2]];
        let target = [6i64, 4, 10];
        let c = subgroup_membership(&basis, &target).unwrap().expect("member");
        let recon: Vec<i64> =
            (0..3).map(|j| (0..3).map(|i| c[i] * basis[i][j]).sum()).collect();
        assert_eq!(recon, target);
    }
}
