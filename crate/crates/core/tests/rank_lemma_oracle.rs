use hok_core::linalg::RationalMatrix;
use hok_core::rank_lemma::{check_rank, sign_matrix, valid_params, RankLemmaParams};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Subsets of Z = Z^* ⊔ Z_* as membership vectors with the given offset.
fn subsets(z: usize, zp: usize, off: i64) -> Vec<Vec<bool>> {
    let n = z + zp;
    (0..1usize << n)
        .map(|m| (0..n).map(|i| m >> i & 1 == 1).collect::<Vec<bool>>())
        .filter(|s| s[..z].iter().filter(|&&b| b).count() as i64 - s[z..].iter().filter(|&&b| b).count() as i64 == off)
        .collect()
}

fn naive_rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &m[rank][c];
                for k in 0..cols {
                    let d = &f * &m[rank][k];
                    m[r][k] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn oracle(p: &RankLemmaParams) -> (usize, usize, usize) {
    let (z, zp) = (p.z as usize, p.zp as usize);
    let e = subsets(z, zp, p.d as i64);
    let f = subsets(z, zp, p.dp as i64);
    let m: Vec<Vec<BigRational>> = f
        .iter()
        .map(|n| {
            e.iter()
                .map(|mm| {
                    let k = n.iter().zip(mm).filter(|(a, b)| **a && **b).count();
                    if k % 2 == 0 {
                        BigRational::one()
                    } else {
                        -BigRational::one()
                    }
                })
                .collect()
        })
        .collect();
    (f.len(), e.len(), naive_rank(m))
}

#[test]
fn ranks_match_naive_elimination() {
    for p in valid_params(6) {
        let (rows, cols, rank) = oracle(&p);
        let c = check_rank(&p).unwrap();
        assert_eq!((c.rows, c.cols, c.rank), (rows, cols, rank), "{p:?}");
        assert_eq!(rank, rows, "full row rank fails for {p:?}");
    }
}

#[test]
fn valid_parameter_count() {
    // brute-force the validity predicate independently
    let mut n = 0;
    for s in 1..=9i64 {
        for z in 0..=s {
            let zp = s - z;
            for d in 0..=z {
                for _dp in -zp..=z {
                    if (z - d - (zp + d)).abs() == 1 {
                        n += 1;
                    }
                }
            }
        }
    }
    assert_eq!(valid_params(9).len(), n);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn entries_are_signs_and_rank_is_full(idx in 0usize..1000) {
        let all = valid_params(8);
        let p = all[idx % all.len()];
        let m: RationalMatrix = sign_matrix(&p).unwrap();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let v = m.get(i, j);
                prop_assert!(*v == BigRational::one() || *v == -BigRational::one());
            }
        }
        prop_assert_eq!(m.rank(), m.rows());
    }
}
