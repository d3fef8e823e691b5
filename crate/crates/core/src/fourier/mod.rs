//! Nonabelian Fourier pairings on M(Γ), the classical subset-sign blocks,
//! and the explicit fixture matrices.

mod fixtures;
mod group;

pub use fixtures::{fixture, reference_fixtures, Expectation, Fixture};
pub use group::{Character, ClassData, FamilyGroup, GroupKind, DATA_DIR_ENV, DATA_FILE};

use serde::Serialize;

use crate::error::Result;
use crate::linalg::{rat, ri, CycloMatrix, CycloNumber, Rational, RationalMatrix};
use crate::symbols::{Family, Series};

/// (x, σ): a class representative and an irreducible character of its centralizer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MPair {
    pub class: usize,
    pub character: usize,
    pub x: usize,
    pub label: String,
}

pub fn m_of_gamma(g: &FamilyGroup) -> Vec<MPair> {
    g.classes
        .iter()
        .enumerate()
        .flat_map(|(ci, c)| {
            c.characters.iter().enumerate().map(move |(k, ch)| MPair {
                class: ci,
                character: k,
                x: c.rep,
                label: format!("({},{})", c.label, ch.label),
            })
        })
        .collect()
}

/// {(x,σ),(y,τ)} = 1/(|Z(x)||Z(y)|) Σ_{g : x and gyg⁻¹ commute} σ(gyg⁻¹) conj(τ(g⁻¹xg)).
pub fn pairing(g: &FamilyGroup, p1: &MPair, p2: &MPair) -> CycloNumber {
    let (cx, cy) = (&g.classes[p1.class], &g.classes[p2.class]);
    let (sigma, tau) = (&cx.characters[p1.character], &cy.characters[p2.character]);
    let mut acc = CycloNumber::zero();
    for h in 0..g.order() {
        let y2 = g.conj(h, p2.x);
        if !g.commute(p1.x, y2) {
            continue;
        }
        let x2 = g.conj(g.inv(h), p1.x);
        let a = &sigma.values[cx.centralizer_pos(y2).expect("commutes with x")];
        let b = &tau.values[cy.centralizer_pos(x2).expect("commutes with y")];
        acc += &(a * &b.conj());
    }
    acc.scale(&rat(1, (cx.centralizer.len() * cy.centralizer.len()) as i64))
}

pub fn pairing_matrix(g: &FamilyGroup) -> CycloMatrix {
    let pairs = m_of_gamma(g);
    CycloMatrix::from_fn(pairs.len(), pairs.len(), |i, j| pairing(g, &pairs[i], &pairs[j]))
}

/// Sign block with row and column labels (subsets M# of Z).
#[derive(Clone, Debug, Serialize)]
pub struct ClassicalBlock {
    pub rows: Vec<Vec<u32>>,
    pub cols: Vec<Vec<u32>>,
    #[serde(serialize_with = "ser_matrix")]
    pub matrix: RationalMatrix,
}

fn ser_matrix<S: serde::Serializer>(m: &RationalMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    m.to_json().serialize(s)
}

fn subsets(z: &[u32]) -> Vec<Vec<u32>> {
    (0u64..1 << z.len())
        .map(|mask| z.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect())
        .collect()
}

fn sign_block(rows: &[Vec<u32>], cols: &[Vec<u32>], scale: &Rational) -> RationalMatrix {
    RationalMatrix::from_fn(rows.len(), cols.len(), |i, j| {
        let k = rows[i].iter().filter(|x| cols[j].contains(x)).count();
        if k % 2 == 0 {
            scale.clone()
        } else {
            -scale.clone()
        }
    })
}

/// (1/2^s)(−1)^{|M#∩N#|} on the series' index sets.
/// BC: balanced subsets, s = z. D: balanced subsets avoiding the first element
/// of Z_* (one per complementary pair), s = z − 1. ²D: balanced rows against
/// columns with |M#∩Z^*| = |M#∩Z_*| − 1, s = z.
pub fn classical_block(f: &Family) -> Result<ClassicalBlock> {
    let all = subsets(&f.z_set);
    let balanced: Vec<Vec<u32>> = all.iter().filter(|m| f.balance(m) == 0).cloned().collect();
    let pow = |s: usize| Rational::new(1.into(), num_bigint::BigInt::from(1u64) << s);
    let (rows, cols, scale) = match f.series {
        Series::BC => (balanced.clone(), balanced, pow(f.z)),
        Series::D => {
            if f.z == 0 {
                (vec![vec![]], vec![vec![]], ri(1))
            } else {
                let x = f.z_lower[0];
                let reps: Vec<Vec<u32>> = balanced.into_iter().filter(|m| !m.contains(&x)).collect();
                (reps.clone(), reps, pow(f.z - 1))
            }
        }
        Series::TwistedD => {
            let cols = all.into_iter().filter(|m| f.balance(m) == -1).collect();
            (balanced, cols, pow(f.z))
        }
    };
    let matrix = sign_block(&rows, &cols, &scale);
    Ok(ClassicalBlock { rows, cols, matrix })
}

/// Finds index lists (r, c) with `big[r[i]][c[j]] == small[i][j]`. When
/// `principal`, rows and columns use the same list.
pub fn find_submatrix(big: &CycloMatrix, small: &RationalMatrix, principal: bool) -> Option<(Vec<usize>, Vec<usize>)> {
    let small = small.to_cyclo();
    if principal {
        let mut chosen = Vec::new();
        return match_principal(big, &small, &mut chosen).then(|| (chosen.clone(), chosen));
    }
    let mut rows = Vec::new();
    let mut cols = Vec::new();
    match_rows(big, &small, &mut rows, &mut cols).then_some((rows, cols))
}

fn match_principal(big: &CycloMatrix, small: &CycloMatrix, chosen: &mut Vec<usize>) -> bool {
    let k = chosen.len();
    if k == small.rows() {
        return true;
    }
    for cand in 0..big.rows() {
        if chosen.contains(&cand) {
            continue;
        }
        let ok = big.get(cand, cand) == small.get(k, k)
            && chosen
                .iter()
                .enumerate()
                .all(|(i, &c)| big.get(c, cand) == small.get(i, k) && big.get(cand, c) == small.get(k, i));
        if ok {
            chosen.push(cand);
            if match_principal(big, small, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

fn match_rows(big: &CycloMatrix, small: &CycloMatrix, rows: &mut Vec<usize>, cols: &mut Vec<usize>) -> bool {
    if rows.len() == small.rows() {
        return match_cols(big, small, rows, cols);
    }
    for cand in 0..big.rows() {
        if rows.contains(&cand) {
            continue;
        }
        rows.push(cand);
        if match_rows(big, small, rows, cols) {
            return true;
        }
        rows.pop();
    }
    false
}

fn match_cols(big: &CycloMatrix, small: &CycloMatrix, rows: &[usize], cols: &mut Vec<usize>) -> bool {
    let k = cols.len();
    if k == small.cols() {
        return true;
    }
    for cand in 0..big.cols() {
        if cols.contains(&cand) {
            continue;
        }
        if rows.iter().enumerate().all(|(i, &r)| big.get(r, cand) == small.get(i, k)) {
            cols.push(cand);
            if match_cols(big, small, rows, cols) {
                return true;
            }
            cols.pop();
        }
    }
    false
}

/// Checks the group is supported and returns it with its pairing matrix.
pub fn gamma_matrix(kind: GroupKind) -> Result<(FamilyGroup, CycloMatrix)> {
    let g = FamilyGroup::load(kind)?;
    let m = pairing_matrix(&g);
    Ok((g, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::{enumerate_symbols, families};

    #[test]
    fn pair_counts() {
        assert_eq!(m_of_gamma(&FamilyGroup::elementary_abelian(1)).len(), 4);
        assert_eq!(m_of_gamma(&FamilyGroup::elementary_abelian(2)).len(), 16);
        assert_eq!(m_of_gamma(&FamilyGroup::load(GroupKind::S3).unwrap()).len(), 8);
        assert_eq!(m_of_gamma(&FamilyGroup::load(GroupKind::S4).unwrap()).len(), 21);
    }

    #[test]
    fn z2_is_m6() {
        let m = pairing_matrix(&FamilyGroup::elementary_abelian(1));
        assert_eq!(m.to_rational().unwrap(), fixture("M6").unwrap().matrix);
    }

    #[test]
    fn trivial_group() {
        let m = pairing_matrix(&FamilyGroup::elementary_abelian(0));
        assert_eq!(m.to_rational().unwrap(), RationalMatrix::identity(1));
    }

    #[test]
    fn bc_blocks() {
        let fams = families(&enumerate_symbols(Series::BC, 2).unwrap()).unwrap();
        for f in &fams {
            let b = classical_block(f).unwrap();
            if f.z == 0 {
                assert_eq!(b.matrix, RationalMatrix::identity(1));
            } else {
                assert_eq!(b.matrix.rows(), 3);
                assert_ne!(b.matrix.det().unwrap(), ri(0));
                assert!(find_submatrix(&b.matrix.to_cyclo(), &fixture("M3").unwrap().matrix, true).is_some());
            }
        }
    }

    #[test]
    fn submatrix_search() {
        let m6 = fixture("M6").unwrap().matrix.to_cyclo();
        assert!(find_submatrix(&m6, &fixture("M8").unwrap().matrix, true).is_some());
        assert!(find_submatrix(&m6, &fixture("M1").unwrap().matrix, false).is_some());
        assert!(find_submatrix(&m6, &fixture("M2").unwrap().matrix, true).is_none());
    }
}
