//! Weyl groups as permutations of the root list, and F-conjugacy classes.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::root_data::{Family, RootDatum, RootSystemType};

/// Largest group order generated without an explicit override.
pub const DEFAULT_ORDER_LIMIT: u64 = 51840;

pub type Perm = Vec<u16>;

pub fn weyl_order(t: RootSystemType) -> u64 {
    let n = t.rank as u64;
    let fact = |k: u64| (1..=k).product::<u64>();
    match t.family {
        Family::A => fact(n + 1),
        Family::B | Family::C => (1 << n) * fact(n),
        Family::D => (1 << (n - 1)) * fact(n),
        Family::E => match n {
            6 => 51840,
            7 => 2903040,
            _ => 696729600,
        },
        Family::F => 1152,
        Family::G => 12,
    }
}

#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub datum: RootDatum,
    /// Positive roots then negatives.
    pub roots: Vec<Vec<i64>>,
    pub generators: Vec<Perm>,
    /// Breadth-first order from the identity.
    pub elements: Vec<Perm>,
    /// Reduced word (generator indices) of each element.
    pub words: Vec<Vec<u8>>,
    index: HashMap<Perm, usize>,
}

pub fn generate_weyl(d: &RootDatum) -> Result<WeylGroup> {
    generate_weyl_with_limit(d, DEFAULT_ORDER_LIMIT)
}

pub fn generate_weyl_with_limit(d: &RootDatum, limit: u64) -> Result<WeylGroup> {
    let order = weyl_order(d.ty);
    if order > limit {
        return Err(Error::ResourceLimit(format!("|W({})| = {order} exceeds {limit}", d.ty)));
    }
    let roots = d.all_roots();
    let pos: HashMap<&Vec<i64>, usize> = roots.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let n = d.rank();
    let generators: Vec<Perm> = (0..n)
        .map(|i| {
            roots
                .iter()
                .map(|r| {
                    let mut s = r.clone();
                    s[i] -= d.pairing(r, i);
                    pos[&s] as u16
                })
                .collect()
        })
        .collect();
    let id: Perm = (0..roots.len() as u16).collect();
    let mut elements = vec![id.clone()];
    let mut words = vec![vec![]];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut head = 0;
    while head < elements.len() {
        for (g, s) in generators.iter().enumerate() {
            let e = compose(s, &elements[head]);
            if !index.contains_key(&e) {
                let mut w = vec![g as u8];
                w.extend(&words[head]);
                index.insert(e.clone(), elements.len());
                elements.push(e);
                words.push(w);
            }
        }
        head += 1;
    }
    Ok(WeylGroup { datum: d.clone(), roots, generators, elements, words, index })
}

/// (x ∘ y)(r) = x(y(r)).
pub fn compose(x: &[u16], y: &[u16]) -> Perm {
    y.iter().map(|&r| x[r as usize]).collect()
}

pub fn invert(x: &[u16]) -> Perm {
    let mut inv = vec![0u16; x.len()];
    for (i, &v) in x.iter().enumerate() {
        inv[v as usize] = i as u16;
    }
    inv
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, p: &[u16]) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&compose(&self.elements[a], &self.elements[b])]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.index[&invert(&self.elements[a])]
    }

    pub fn length(&self, a: usize) -> usize {
        self.words[a].len()
    }
}

/// A diagram automorphism of the simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusTwist {
    /// Image of simple root i.
    pub perm: Vec<usize>,
    pub order: u8,
}

impl FrobeniusTwist {
    pub fn trivial(n: usize) -> Self {
        FrobeniusTwist { perm: (0..n).collect(), order: 1 }
    }

    /// The standard twist for `t.twist`.
    pub fn for_type(t: RootSystemType) -> Result<Self> {
        let n = t.rank;
        let mut perm: Vec<usize> = (0..n).collect();
        match (t.twist, t.family) {
            (1, _) => {}
            (2, Family::A) => perm = (0..n).rev().collect(),
            (2, Family::D) => perm.swap(n - 2, n - 1),
            (3, Family::D) => {
                perm[0] = 2;
                perm[2] = 3;
                perm[3] = 0;
            }
            (2, Family::E) => {
                perm.swap(0, 5);
                perm.swap(2, 4);
            }
            _ => return Err(Error::InvalidParams(format!("no twist for {t}"))),
        }
        Ok(FrobeniusTwist { perm, order: t.twist })
    }

    pub fn preserves(&self, cartan: &[Vec<i64>]) -> bool {
        let n = cartan.len();
        self.perm.len() == n
            && (0..n).all(|i| (0..n).all(|j| cartan[self.perm[i]][self.perm[j]] == cartan[i][j]))
    }

    /// Induced permutation of the root list.
    fn root_perm(&self, w: &WeylGroup) -> Perm {
        let pos: HashMap<&Vec<i64>, usize> = w.roots.iter().enumerate().map(|(i, r)| (r, i)).collect();
        w.roots
            .iter()
            .map(|r| {
                let mut img = vec![0i64; r.len()];
                for (i, &c) in r.iter().enumerate() {
                    img[self.perm[i]] = c;
                }
                pos[&img] as u16
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FClass {
    pub representative: usize,
    pub word: Vec<u8>,
    pub size: usize,
}

/// Classes of w ~ x⁻¹ w F(x), representatives are the first member in element order.
pub fn f_conjugacy_classes(w: &WeylGroup, f: &FrobeniusTwist) -> Result<Vec<FClass>> {
    if !f.preserves(&w.datum.cartan) {
        return Err(Error::InvalidParams("twist does not preserve the Cartan matrix".into()));
    }
    let sigma = f.root_perm(w);
    let sigma_inv = invert(&sigma);
    // F(s) for each generator s
    let fgens: Vec<Perm> = w.generators.iter().map(|s| compose(&compose(&sigma, s), &sigma_inv)).collect();
    let mut class_of = vec![usize::MAX; w.order()];
    let mut classes = Vec::new();
    for start in 0..w.order() {
        if class_of[start] != usize::MAX {
            continue;
        }
        let id = classes.len();
        class_of[start] = id;
        let mut stack = vec![start];
        let mut size = 0;
        while let Some(e) = stack.pop() {
            size += 1;
            for (s, fs) in w.generators.iter().zip(&fgens) {
                // s⁻¹ e F(s), with s = s⁻¹
                let next = compose(&compose(s, &w.elements[e]), fs);
                let k = w.index[&next];
                if class_of[k] == usize::MAX {
                    class_of[k] = id;
                    stack.push(k);
                }
            }
        }
        classes.push(FClass { representative: start, word: w.words[start].clone(), size });
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_data::build_root_datum;

    fn weyl(s: &str) -> WeylGroup {
        let t: RootSystemType = s.parse().unwrap();
        generate_weyl(&build_root_datum(t).unwrap()).unwrap()
    }

    fn classes(s: &str) -> usize {
        let t: RootSystemType = s.parse().unwrap();
        let w = weyl(&t.untwisted().to_string());
        f_conjugacy_classes(&w, &FrobeniusTwist::for_type(t).unwrap()).unwrap().len()
    }

    #[test]
    fn orders() {
        assert_eq!(weyl("A2").order(), 6);
        assert_eq!(weyl("B3").order(), 48);
        assert_eq!(weyl("G2").order(), 12);
        assert_eq!(weyl("F4").order(), 1152);
    }

    #[test]
    fn guard() {
        let d = build_root_datum("E7".parse().unwrap()).unwrap();
        assert!(matches!(generate_weyl(&d), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn generators_are_involutions() {
        let w = weyl("B3");
        for s in &w.generators {
            assert_eq!(compose(s, s), w.elements[0]);
        }
    }

    #[test]
    fn class_counts() {
        assert_eq!(classes("A1"), 2);
        assert_eq!(classes("B2"), 5);
        assert_eq!(classes("2A2"), 3);
        assert_eq!(classes("G2"), 6);
    }

    #[test]
    fn twists_preserve_cartan() {
        for s in ["2A4", "2D5", "3D4", "2E6"] {
            let t: RootSystemType = s.parse().unwrap();
            let d = build_root_datum(t).unwrap();
            assert!(FrobeniusTwist::for_type(t).unwrap().preserves(&d.cartan), "{s}");
        }
    }
}
