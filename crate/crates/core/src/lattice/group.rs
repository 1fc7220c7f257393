use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use super::{smith_normal_form, HermiteBasis, Matrix};
use crate::{Error, Result};

/// `Z^rank` plus cyclic factors `Z/d_1 + ... + Z/d_k` with `2 <= d_1 | d_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AbelianGroupStructure {
    pub rank: usize,
    pub torsion: Vec<BigUint>,
}

impl AbelianGroupStructure {
    pub fn free(rank: usize) -> Self {
        AbelianGroupStructure { rank, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Order of the group, when finite.
    pub fn order(&self) -> Option<BigUint> {
        (self.rank == 0).then(|| self.torsion.iter().product())
    }

    /// Canonical form of the direct sum.
    pub fn direct_sum(&self, other: &AbelianGroupStructure) -> AbelianGroupStructure {
        let divisors: Vec<BigInt> = self.torsion.iter().chain(&other.torsion).map(|d| BigInt::from(d.clone())).collect();
        let k = divisors.len();
        let mut m = Matrix::zeros(k, k);
        for (i, d) in divisors.into_iter().enumerate() {
            m[(i, i)] = d;
        }
        let torsion = canonical_torsion(&smith_normal_form(&m).invariant_factors());
        AbelianGroupStructure { rank: self.rank + other.rank, torsion }
    }
}

impl fmt::Display for AbelianGroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

fn canonical_torsion(factors: &[BigInt]) -> Vec<BigUint> {
    factors
        .iter()
        .filter(|d| !d.is_one())
        .map(|d| d.abs().to_biguint().expect("nonnegative"))
        .collect()
}

/// `Z^m / <rows>`.
pub fn structure_from_relations(m: usize, rows: Vec<Vec<BigInt>>) -> AbelianGroupStructure {
    let snf = smith_normal_form(&Matrix::from_rows(rows, m));
    let factors = snf.invariant_factors();
    AbelianGroupStructure { rank: m - factors.len(), torsion: canonical_torsion(&factors) }
}

fn difference(u: &[BigUint], v: &[BigUint]) -> Vec<BigInt> {
    u.iter().zip(v).map(|(a, b)| BigInt::from(a.clone()) - BigInt::from(b.clone())).collect()
}

fn check_relations(m: usize, relations: &[(Vec<BigUint>, Vec<BigUint>)]) -> Result<()> {
    for (i, (u, v)) in relations.iter().enumerate() {
        if u.len() != m || v.len() != m {
            return Err(Error::Presentation(format!(
                "relation {i} has sides of length {} and {}, expected {m}",
                u.len(),
                v.len()
            )));
        }
    }
    Ok(())
}

/// Grothendieck group of `<e_1..e_m | u_i = v_i>`: the quotient of `Z^m`
/// by the span of the differences `u_i - v_i`.
pub fn grothendieck_group_fp(
    num_generators: usize,
    relations: &[(Vec<BigUint>, Vec<BigUint>)],
) -> Result<AbelianGroupStructure> {
    check_relations(num_generators, relations)?;
    let rows = relations.iter().map(|(u, v)| difference(u, v)).collect();
    Ok(structure_from_relations(num_generators, rows))
}

/// Grothendieck group of a finite monoid from its addition table: one
/// generator per element and relations `e_a + e_b = e_(a+b)`. The zero
/// needs no relation of its own: `e_0 + e_0 = e_0` already kills it.
pub fn grothendieck_of_table(table: &[Vec<usize>]) -> AbelianGroupStructure {
    let n = table.len();
    let mut rows = Vec::new();
    for a in 0..n {
        for b in a..n {
            let mut r = vec![BigInt::zero(); n];
            r[a] += 1;
            r[b] += 1;
            r[table[a][b]] -= 1;
            if r.iter().any(|x| !x.is_zero()) {
                rows.push(r);
            }
        }
    }
    structure_from_relations(n, rows)
}

/// The subgroup of `Z^d` generated by the given vectors (always free).
pub fn sublattice_structure(gens: &[Vec<BigUint>], dim: usize) -> AbelianGroupStructure {
    let rows: Vec<Vec<BigInt>> = gens.iter().map(|g| g.iter().cloned().map(BigInt::from).collect()).collect();
    let snf = smith_normal_form(&Matrix::from_rows(rows, dim));
    AbelianGroupStructure::free(snf.rank())
}

/// `Z^m` modulo a relation lattice, with exact membership and the
/// coordinates of the free part.
#[derive(Clone, Debug)]
pub struct LatticeQuotient {
    dim: usize,
    hermite: HermiteBasis<BigInt>,
    /// Columns of the Smith transform `v`, restricted to the free part.
    free_basis: Matrix<BigInt>,
    structure: AbelianGroupStructure,
}

impl LatticeQuotient {
    pub fn new(dim: usize, relations: &[(Vec<BigUint>, Vec<BigUint>)]) -> Result<Self> {
        check_relations(dim, relations)?;
        let rows: Vec<Vec<BigInt>> = relations.iter().map(|(u, v)| difference(u, v)).collect();
        let hermite = HermiteBasis::new(&rows, dim)?;
        let snf = smith_normal_form(&Matrix::from_rows(rows, dim));
        let factors = snf.invariant_factors();
        let r = factors.len();
        let mut free_basis = Matrix::zeros(dim, dim - r);
        for i in 0..dim {
            for j in r..dim {
                free_basis[(i, j - r)] = snf.v[(i, j)].clone();
            }
        }
        let structure = AbelianGroupStructure { rank: dim - r, torsion: canonical_torsion(&factors) };
        Ok(LatticeQuotient { dim, hermite, free_basis, structure })
    }

    pub fn structure(&self) -> &AbelianGroupStructure {
        &self.structure
    }

    /// Is `w` in the relation lattice, i.e. zero in the quotient?
    pub fn contains(&self, w: &[BigInt]) -> bool {
        matches!(self.hermite.solve(w), Ok(Some(_)))
    }

    /// Image of `w` in the free part `Z^rank`. Two vectors have the same
    /// image exactly when their difference is torsion in the quotient.
    pub fn free_coordinates(&self, w: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(w.len(), self.dim);
        self.free_basis.left_apply(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn two_e1_equals_two_e2() {
        let g = grothendieck_group_fp(2, &[(nat(&[2, 0]), nat(&[0, 2]))]).unwrap();
        assert_eq!(g, AbelianGroupStructure { rank: 1, torsion: vec![BigUint::from(2u32)] });
        assert_eq!(g.to_string(), "Z + Z/2");
    }

    #[test]
    fn free_when_no_relations() {
        assert_eq!(grothendieck_group_fp(3, &[]).unwrap(), AbelianGroupStructure::free(3));
    }

    #[test]
    fn cyclic_three() {
        let g = grothendieck_group_fp(1, &[(nat(&[3]), nat(&[0]))]).unwrap();
        assert_eq!(g.rank, 0);
        assert_eq!(g.torsion, vec![BigUint::from(3u32)]);
    }

    #[test]
    fn length_mismatch() {
        let err = grothendieck_group_fp(2, &[(nat(&[1]), nat(&[0, 1]))]).unwrap_err();
        assert!(matches!(err, Error::Presentation(_)));
    }

    #[test]
    fn direct_sum_merges_coprime_factors() {
        let a = AbelianGroupStructure { rank: 1, torsion: vec![BigUint::from(2u32)] };
        let b = AbelianGroupStructure { rank: 0, torsion: vec![BigUint::from(3u32)] };
        assert_eq!(a.direct_sum(&b), AbelianGroupStructure { rank: 1, torsion: vec![BigUint::from(6u32)] });
    }

    #[test]
    fn table_of_cyclic_four() {
        let table: Vec<Vec<usize>> = (0..4).map(|a| (0..4).map(|b| (a + b) % 4).collect()).collect();
        let g = grothendieck_of_table(&table);
        assert_eq!(g, AbelianGroupStructure { rank: 0, torsion: vec![BigUint::from(4u32)] });
    }

    #[test]
    fn free_coordinates_detect_torsion() {
        let q = LatticeQuotient::new(2, &[(nat(&[2, 0]), nat(&[0, 2]))]).unwrap();
        let d = vec![BigInt::from(1), BigInt::from(-1)];
        assert!(!q.contains(&d));
        assert!(q.free_coordinates(&d).iter().all(|x| x.is_zero()));
        let e1 = vec![BigInt::from(1), BigInt::from(0)];
        assert!(q.free_coordinates(&e1).iter().any(|x| !x.is_zero()));
    }
}
