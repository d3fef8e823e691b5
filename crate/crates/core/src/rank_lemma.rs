//! Ranks of sign matrices (−1)^{|N∩M|} over subsets of Z = Z^* ⊔ Z_* with
//! prescribed cardinality offsets, and two binomial identities.

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{rank_mod_p, RationalMatrix};

/// Largest |E| or |F| accepted by [`sign_matrix`].
pub const MAX_SIDE: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RankLemmaParams {
    /// |Z^*|
    pub z: u32,
    /// |Z_*|
    pub zp: u32,
    pub d: u32,
    pub dp: i32,
}

impl RankLemmaParams {
    pub fn new(z: u32, zp: u32, d: u32, dp: i32) -> Result<Self> {
        let p = RankLemmaParams { z, zp, d, dp };
        p.validate()?;
        Ok(p)
    }

    pub fn is_valid(&self) -> bool {
        let (z, zp, d, dp) = (self.z as i64, self.zp as i64, self.d as i64, self.dp as i64);
        d <= z && ((z - d - (zp + d)).abs() == 1) && -zp <= dp && dp <= z
    }

    pub fn validate(&self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidParams(format!(
                "need d <= z, z-d = z'+d±1, -z' <= d' <= z (got z={}, z'={}, d={}, d'={})",
                self.z, self.zp, self.d, self.dp
            )))
        }
    }

    fn offset_set(&self, off: i32) -> Vec<u32> {
        let n = self.z + self.zp;
        let low = (1u32 << self.z) - 1;
        (0u32..1 << n)
            .filter(|m| (m & low).count_ones() as i32 - (m >> self.z).count_ones() as i32 == off)
            .collect()
    }
}

/// Subsets as bitmasks, Z^* in the low z bits. Ordered by mask value.
pub fn ef_sets(p: &RankLemmaParams) -> Result<(Vec<u32>, Vec<u32>)> {
    p.validate()?;
    if p.z + p.zp > 24 {
        return Err(Error::ResourceLimit(format!("|Z| = {} exceeds 24", p.z + p.zp)));
    }
    Ok((p.offset_set(p.d as i32), p.offset_set(p.dp)))
}

fn sign(a: u32, b: u32) -> i64 {
    if (a & b).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn sign_rows(rows: &[u32], cols: &[u32]) -> Vec<Vec<i64>> {
    rows.iter().map(|&n| cols.iter().map(|&m| sign(n, m)).collect()).collect()
}

/// Rows F, columns E.
pub fn sign_matrix(p: &RankLemmaParams) -> Result<RationalMatrix> {
    let (e, f) = ef_sets(p)?;
    guard(&e, &f)?;
    RationalMatrix::from_i64_rows(&sign_rows(&f, &e))
}

fn guard(e: &[u32], f: &[u32]) -> Result<()> {
    if e.len().max(f.len()) > MAX_SIDE {
        return Err(Error::ResourceLimit(format!("sign matrix {}x{} exceeds {MAX_SIDE}", f.len(), e.len())));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankCheck {
    pub params: RankLemmaParams,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    /// "modular" when the rank mod 2^61−1 already reached |F|.
    pub method: &'static str,
    pub passed: bool,
}

pub fn check_rank(p: &RankLemmaParams) -> Result<RankCheck> {
    let (e, f) = ef_sets(p)?;
    guard(&e, &f)?;
    let m = sign_rows(&f, &e);
    let modular = rank_mod_p(&m);
    let (rank, method) = if modular == f.len() {
        (modular, "modular")
    } else {
        (RationalMatrix::from_i64_rows(&m)?.rank(), "bareiss")
    };
    Ok(RankCheck { params: *p, rows: f.len(), cols: e.len(), rank, method, passed: rank == f.len() })
}

/// True iff the sign matrix has rank |F|.
pub fn verify_rank(p: &RankLemmaParams) -> Result<bool> {
    Ok(check_rank(p)?.passed)
}

/// All valid tuples with z + z' ≤ `max_sum`, in lexicographic order.
pub fn valid_params(max_sum: u32) -> Vec<RankLemmaParams> {
    let mut out = Vec::new();
    for n in 1..=max_sum {
        for z in 0..=n {
            let zp = n - z;
            for d in 0..=z {
                for dp in -(zp as i32)..=z as i32 {
                    let p = RankLemmaParams { z, zp, d, dp };
                    if p.is_valid() {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

#[cfg(feature = "parallel")]
pub fn sweep(max_sum: u32) -> Result<Vec<RankCheck>> {
    valid_params(max_sum).par_iter().map(check_rank).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn sweep(max_sum: u32) -> Result<Vec<RankCheck>> {
    valid_params(max_sum).iter().map(check_rank).collect()
}

/// C(n, m), zero outside 0 ≤ m ≤ n.
pub fn binomial(n: i64, m: i64) -> i128 {
    if n < 0 || m < 0 || m > n {
        return 0;
    }
    let m = m.min(n - m);
    (0..m).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// Σ_j C(z',j)·C(d, j+d'−l) = C(z'+d, l+d−d').
pub fn binomial_identity_1(zp: i64, d: i64, dp: i64, l: i64) -> bool {
    let lhs: i128 = (0..=zp).map(|j| binomial(zp, j) * binomial(d, j + dp - l)).sum();
    lhs == binomial(zp + d, l + d - dp)
}

/// Σ_l (−1)^l C(z,l)·C(z+1,l+k) = (−1)^⌊(z−k+1)/2⌋ · C(z, ⌊(z−k+1)/2⌋).
pub fn binomial_identity_2(z: i64, k: i64) -> bool {
    let lhs: i128 = (0..=z)
        .map(|l| {
            let t = binomial(z, l) * binomial(z + 1, l + k);
            if l % 2 == 0 {
                t
            } else {
                -t
            }
        })
        .sum();
    let h = (z - k + 1).div_euclid(2);
    let rhs = binomial(z, h) * if h.rem_euclid(2) == 0 { 1 } else { -1 };
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(z: u32, zp: u32, d: u32, dp: i32) -> RankLemmaParams {
        RankLemmaParams::new(z, zp, d, dp).unwrap()
    }

    #[test]
    fn base_cases() {
        assert_eq!(ef_sets(&p(1, 0, 0, 0)).unwrap(), (vec![0], vec![0]));
        assert_eq!(ef_sets(&p(1, 0, 1, 1)).unwrap(), (vec![1], vec![1]));
        assert_eq!(sign_matrix(&p(1, 0, 0, 0)).unwrap(), RationalMatrix::from_i64_rows(&[vec![1]]).unwrap());
        assert_eq!(sign_matrix(&p(1, 0, 1, 1)).unwrap(), RationalMatrix::from_i64_rows(&[vec![-1]]).unwrap());
    }

    #[test]
    fn small_instances() {
        let m = sign_matrix(&p(2, 1, 0, 0)).unwrap();
        assert_eq!((m.rows(), m.cols(), m.rank()), (3, 3, 3));
        let c = check_rank(&p(2, 1, 1, 0)).unwrap();
        assert!(c.passed);
        assert_eq!(c.rank, c.rows);
    }

    #[test]
    fn invalid() {
        assert!(RankLemmaParams::new(2, 2, 0, 0).is_err());
        assert!(RankLemmaParams::new(1, 0, 2, 0).is_err());
        assert!(RankLemmaParams::new(2, 1, 0, 3).is_err());
    }

    #[test]
    fn transpose_swaps_offsets() {
        let a = p(3, 2, 0, 1);
        let (e, f) = ef_sets(&a).unwrap();
        let t = RationalMatrix::from_i64_rows(&sign_rows(&e, &f)).unwrap();
        assert_eq!(sign_matrix(&a).unwrap().transpose(), t);
    }

    #[test]
    fn small_sweep() {
        assert!(sweep(7).unwrap().iter().all(|c| c.passed));
    }

    #[test]
    fn identities() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, -1), 0);
        assert!(binomial_identity_2(0, 0));
        for z in 0..=6 {
            for k in -z - 1..=z {
                assert!(binomial_identity_2(z, k), "{z} {k}");
            }
        }
        assert!(binomial_identity_1(4, 0, 1, 2));
        assert!(binomial_identity_1(3, 2, -1, 1));
    }
}
