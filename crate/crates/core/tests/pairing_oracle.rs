use hok_core::fourier::{pairing_matrix, FamilyGroup, GroupKind};
use hok_core::linalg::{CycloMatrix, CycloNumber};

type P = [usize; 3];

fn mul(a: &P, b: &P) -> P {
    [a[b[0]], a[b[1]], a[b[2]]]
}

fn inv(a: &P) -> P {
    let mut r = [0; 3];
    for i in 0..3 {
        r[a[i]] = i;
    }
    r
}

fn sign(a: &P) -> i64 {
    let mut s = 1;
    for i in 0..3 {
        for j in i + 1..3 {
            if a[i] > a[j] {
                s = -s;
            }
        }
    }
    s
}

/// Character of the centralizer of `x` evaluated at an element commuting with it.
#[derive(Clone, Copy)]
enum Ch {
    Triv,
    Sgn,
    Refl,
    Order2Sign,
    Order3(i64),
}

fn eval(ch: Ch, x: &P, y: &P) -> CycloNumber {
    let id = [0, 1, 2];
    match ch {
        Ch::Triv => CycloNumber::one(),
        Ch::Sgn => CycloNumber::from_int(sign(y)),
        Ch::Refl => CycloNumber::from_int(match (y == &id, sign(y)) {
            (true, _) => 2,
            (false, -1) => 0,
            _ => -1,
        }),
        Ch::Order2Sign => CycloNumber::from_int(if y == &id { 1 } else { -1 }),
        Ch::Order3(k) => {
            // y = x^e with e in {0,1,2}
            let e = if y == &id {
                0
            } else if y == x {
                1
            } else {
                2
            };
            CycloNumber::zeta_pow(3, k * e)
        }
    }
}

fn oracle() -> Vec<Vec<CycloNumber>> {
    let g: Vec<P> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
    let id = [0, 1, 2];
    let t = [1, 0, 2];
    let c = [1, 2, 0];
    let pairs: Vec<(P, Ch)> = vec![
        (id, Ch::Triv),
        (id, Ch::Sgn),
        (id, Ch::Refl),
        (t, Ch::Triv),
        (t, Ch::Order2Sign),
        (c, Ch::Order3(0)),
        (c, Ch::Order3(1)),
        (c, Ch::Order3(2)),
    ];
    let centralizer = |x: &P| g.iter().filter(|h| mul(h, x) == mul(x, h)).count() as i64;
    pairs
        .iter()
        .map(|(x, s)| {
            pairs
                .iter()
                .map(|(y, tau)| {
                    let mut acc = CycloNumber::zero();
                    for h in &g {
                        let y2 = mul(&mul(h, y), &inv(h));
                        if mul(x, &y2) != mul(&y2, x) {
                            continue;
                        }
                        let x2 = mul(&mul(&inv(h), x), h);
                        acc += &(&eval(*s, x, &y2) * &eval(*tau, y, &x2).conj());
                    }
                    acc.scale(&num_rational::BigRational::new(1.into(), (centralizer(x) * centralizer(y)).into()))
                })
                .collect()
        })
        .collect()
}

/// Simultaneous row/column permutation taking `a` to `b`, by backtracking.
fn equivalent(a: &CycloMatrix, b: &[Vec<CycloNumber>]) -> bool {
    fn go(a: &CycloMatrix, b: &[Vec<CycloNumber>], perm: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let i = perm.len();
        if i == b.len() {
            return true;
        }
        for k in 0..b.len() {
            if used[k] || *a.get(k, k) != b[i][i] {
                continue;
            }
            if (0..i).all(|j| *a.get(k, perm[j]) == b[i][j] && *a.get(perm[j], k) == b[j][i]) {
                used[k] = true;
                perm.push(k);
                if go(a, b, perm, used) {
                    return true;
                }
                perm.pop();
                used[k] = false;
            }
        }
        false
    }
    a.rows() == b.len() && go(a, b, &mut Vec::new(), &mut vec![false; b.len()])
}

#[test]
fn s3_pairing_matches_direct_double_loop() {
    let m = pairing_matrix(&FamilyGroup::load(GroupKind::S3).unwrap());
    let o = oracle();
    assert!(equivalent(&m, &o));
    // unitary and symmetric
    for i in 0..8 {
        for j in 0..8 {
            assert_eq!(o[i][j], o[j][i]);
        }
    }
}

#[test]
fn elementary_abelian_pairing_is_a_sign_matrix() {
    // M(Z/2^k): entries ±1/2^k, and the matrix squares to the identity
    for k in 1..=2 {
        let m = pairing_matrix(&FamilyGroup::elementary_abelian(k)).to_rational().unwrap();
        let scale = num_rational::BigRational::new(1.into(), (1i64 << k).into());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                assert!(*m.get(i, j) == scale || *m.get(i, j) == -scale.clone());
            }
        }
        let sq = m.mul(&m).unwrap();
        assert_eq!(sq, hok_core::linalg::RationalMatrix::identity(m.rows()));
    }
}
