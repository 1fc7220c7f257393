use embedkit::lattice::{grothendieck_group_fp, smith_normal_form, SmithForm};
use embedkit::{AbelianGroupStructure, IntMatrix, Integer, Matrix};
use num_bigint::BigUint;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Fraction-free (Bareiss) determinant.
fn det(m: &[Vec<Integer>]) -> Integer {
    let n = m.len();
    if n == 0 {
        return Integer::one();
    }
    let mut a = m.to_vec();
    let mut sign = Integer::one();
    let mut prev = Integer::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return Integer::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// gcd of all k x k minors.
fn determinantal_divisor(a: &IntMatrix, k: usize) -> Integer {
    let mut g = Integer::zero();
    for rows in subsets(a.rows(), k) {
        for cols in subsets(a.cols(), k) {
            let minor: Vec<Vec<Integer>> =
                rows.iter().map(|&i| cols.iter().map(|&j| a[(i, j)].clone()).collect()).collect();
            g = g.gcd(&det(&minor));
        }
    }
    g
}

fn to_rows(m: &IntMatrix) -> Vec<Vec<Integer>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn random_matrix(rng: &mut ChaCha8Rng) -> IntMatrix {
    let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
    let rows = (0..r).map(|_| (0..c).map(|_| Integer::from(rng.gen_range(-9i64..=9))).collect()).collect();
    Matrix::from_rows(rows, c)
}

fn check_snf(a: &IntMatrix, f: &SmithForm<Integer>) {
    assert_eq!(&(&f.u * a) * &f.v, f.s, "U*A*V != S for {a}");
    assert_eq!(det(&to_rows(&f.u)).abs(), Integer::one());
    assert_eq!(det(&to_rows(&f.v)).abs(), Integer::one());
    assert!(f.s.is_diagonal());
    let d = f.s.diagonal();
    assert!(d.iter().all(|x| !x.is_negative()));
    for w in d.windows(2) {
        assert!(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])), "chain {d:?}");
    }
    // d_1 * ... * d_k = gcd of k x k minors
    let mut prod = Integer::one();
    for (k, x) in d.iter().enumerate() {
        prod *= x;
        assert_eq!(prod, determinantal_divisor(a, k + 1), "divisor {k} of {a}");
    }
}

#[test]
fn smith_form_on_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..200 {
        let a = random_matrix(&mut rng);
        check_snf(&a, &smith_normal_form(&a));
    }
}

#[test]
fn smith_form_over_machine_integers() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..50 {
        let a = random_matrix(&mut rng);
        let small = Matrix::from_rows(
            to_rows(&a).into_iter().map(|r| r.into_iter().map(|x| i64::try_from(x).unwrap()).collect()).collect(),
            a.cols(),
        );
        let f = smith_normal_form(&small);
        let big = smith_normal_form(&a);
        assert_eq!(f.s.diagonal().into_iter().map(Integer::from).collect::<Vec<_>>(), big.s.diagonal());
    }
}

#[test]
fn degenerate_shapes() {
    for a in [Matrix::<Integer>::zeros(3, 2), Matrix::zeros(1, 1), Matrix::identity(4)] {
        check_snf(&a, &smith_normal_form(&a));
    }
}

#[test]
fn grothendieck_of_a_doubled_relation() {
    let two = |v: [u32; 2]| v.iter().map(|&x| BigUint::from(x)).collect::<Vec<_>>();
    let g = grothendieck_group_fp(2, &[(two([2, 0]), two([0, 2]))]).unwrap();
    assert_eq!(g, AbelianGroupStructure { rank: 1, torsion: vec![BigUint::from(2u32)] });

    // change of basis e1 - e2, e2 turns the relation into 2*(e1 - e2) = 0
    let a: IntMatrix = Matrix::from_i64(&[&[2, -2]]);
    let v: IntMatrix = Matrix::from_i64(&[&[1, 1], &[0, 1]]);
    assert_eq!(&a * &v, Matrix::from_i64(&[&[2, 0]]));
    assert_eq!(det(&to_rows(&v)), Integer::one());
}

#[test]
fn free_groups_of_naturals() {
    for k in 1..=3 {
        let g = embedkit::catalog::affine(k).grothendieck().unwrap();
        assert_eq!(g, AbelianGroupStructure::free(k));
    }
}
