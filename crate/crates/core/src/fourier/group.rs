use std::collections::HashMap;
use std::path::PathBuf;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::linalg::CycloNumber;

/// Environment variable naming a directory that overrides the bundled data.
pub const DATA_DIR_ENV: &str = "HOK_DATA_DIR";
pub const DATA_FILE: &str = "family_groups.json";
const BUNDLED: &str = include_str!("../../data/family_groups.json");
const DATA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    ElementaryAbelian2(usize),
    S3,
    S4,
}

impl std::str::FromStr for GroupKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.to_ascii_uppercase().as_str() {
            "S3" => Ok(GroupKind::S3),
            "S4" => Ok(GroupKind::S4),
            "1" | "TRIVIAL" => Ok(GroupKind::ElementaryAbelian2(0)),
            "Z2" => Ok(GroupKind::ElementaryAbelian2(1)),
            u => u
                .strip_prefix("Z2^")
                .and_then(|k| k.parse().ok())
                .map(GroupKind::ElementaryAbelian2)
                .ok_or_else(|| Error::Parse(format!("unknown group {s:?}; use S3, S4, Z2 or Z2^k"))),
        }
    }
}

impl std::fmt::Display for GroupKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupKind::ElementaryAbelian2(k) => write!(f, "Z2^{k}"),
            GroupKind::S3 => write!(f, "S3"),
            GroupKind::S4 => write!(f, "S4"),
        }
    }
}

pub type Perm = Vec<u8>;

#[derive(Clone, Debug)]
pub struct Character {
    pub label: String,
    /// Values indexed like `ClassData::centralizer`.
    pub values: Vec<CycloNumber>,
}

#[derive(Clone, Debug)]
pub struct ClassData {
    pub label: String,
    pub rep: usize,
    pub members: Vec<usize>,
    /// Sorted element indices of Z(rep).
    pub centralizer: Vec<usize>,
    pub characters: Vec<Character>,
}

impl ClassData {
    pub fn centralizer_pos(&self, g: usize) -> Option<usize> {
        self.centralizer.binary_search(&g).ok()
    }
}

/// A finite group Γ given by permutations, with centralizer character tables.
#[derive(Clone, Debug)]
pub struct FamilyGroup {
    pub kind: GroupKind,
    pub elements: Vec<Perm>,
    mult: Vec<Vec<usize>>,
    inv: Vec<usize>,
    pub classes: Vec<ClassData>,
}

fn compose(p: &[u8], q: &[u8]) -> Perm {
    q.iter().map(|&i| p[i as usize]).collect()
}

fn closure(gens: &[Perm], degree: usize) -> Vec<Perm> {
    let id: Perm = (0..degree as u8).collect();
    let mut seen = std::collections::BTreeSet::from([id.clone()]);
    let mut stack = vec![id];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = compose(g, &x);
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

impl FamilyGroup {
    fn from_elements(kind: GroupKind, elements: Vec<Perm>) -> Self {
        let index: HashMap<&Perm, usize> = elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mult: Vec<Vec<usize>> = elements
            .iter()
            .map(|a| elements.iter().map(|b| index[&compose(a, b)]).collect())
            .collect();
        let inv = (0..elements.len()).map(|a| mult[a].iter().position(|&c| c == 0).unwrap()).collect();
        FamilyGroup { kind, elements, mult, inv, classes: vec![] }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// g x g⁻¹.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mult[self.mult[g][x]][self.inv[g]]
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mult[a][b] == self.mult[b][a]
    }

    pub fn index_of(&self, p: &[u8]) -> Option<usize> {
        self.elements.iter().position(|e| e == p)
    }

    fn class_of(&self, x: usize, within: &[usize]) -> Vec<usize> {
        let mut c: Vec<usize> = within.iter().map(|&g| self.conj(g, x)).collect();
        c.sort_unstable();
        c.dedup();
        c
    }

    fn centralizer(&self, x: usize) -> Vec<usize> {
        (0..self.order()).filter(|&g| self.commute(g, x)).collect()
    }

    /// (Z/2)^k realized on 2k points; characters generated.
    pub fn elementary_abelian(k: usize) -> Self {
        let gens: Vec<Perm> = (0..k)
            .map(|i| {
                let mut p: Perm = (0..2 * k as u8).collect();
                p.swap(2 * i, 2 * i + 1);
                p
            })
            .collect();
        let elements = closure(&gens, 2 * k);
        let mut g = Self::from_elements(GroupKind::ElementaryAbelian2(k), elements);
        let bits = |p: &Perm| (0..k).fold(0usize, |acc, i| acc | (((p[2 * i] != 2 * i as u8) as usize) << i));
        let mask: Vec<usize> = g.elements.iter().map(bits).collect();
        let mut order: Vec<usize> = (0..g.order()).collect();
        order.sort_by_key(|&i| mask[i]);
        let all: Vec<usize> = (0..g.order()).collect();
        g.classes = order
            .iter()
            .map(|&x| ClassData {
                label: format!("{:0width$b}", mask[x], width = k.max(1)),
                rep: x,
                members: vec![x],
                centralizer: all.clone(),
                characters: order
                    .iter()
                    .map(|&e| Character {
                        label: format!("{:0width$b}", mask[e], width = k.max(1)),
                        values: all
                            .iter()
                            .map(|&y| {
                                let s = (mask[e] & mask[y]).count_ones();
                                CycloNumber::from_int(if s.is_multiple_of(2) { 1 } else { -1 })
                            })
                            .collect(),
                    })
                    .collect(),
            })
            .collect();
        g
    }

    /// S3 or S4 from the bundled data, or from `$HOK_DATA_DIR/family_groups.json`.
    pub fn load(kind: GroupKind) -> Result<Self> {
        match kind {
            GroupKind::ElementaryAbelian2(k) => {
                if k > 6 {
                    return Err(Error::ResourceLimit(format!("(Z/2)^{k} above (Z/2)^6")));
                }
                Ok(Self::elementary_abelian(k))
            }
            _ => {
                let text = match std::env::var_os(DATA_DIR_ENV) {
                    Some(dir) => {
                        let path = PathBuf::from(dir).join(DATA_FILE);
                        std::fs::read_to_string(&path)
                            .map_err(|e| Error::Data(format!("{}: {e}", path.display())))?
                    }
                    None => BUNDLED.to_string(),
                };
                Self::from_data(kind, &text)
            }
        }
    }

    pub fn from_data(kind: GroupKind, text: &str) -> Result<Self> {
        let file: DataFile = serde_json::from_str(text).map_err(|e| Error::Data(e.to_string()))?;
        if file.version != DATA_VERSION {
            return Err(Error::Data(format!("unsupported data version {}", file.version)));
        }
        let name = kind.to_string();
        let spec = file
            .groups
            .into_iter()
            .find(|g| g.name == name)
            .ok_or_else(|| Error::Data(format!("group {name} missing from data")))?;
        let perm = |p: &[u8]| -> Result<Perm> {
            let mut s = p.to_vec();
            s.sort_unstable();
            if s != (0..spec.degree as u8).collect::<Vec<_>>() {
                return Err(Error::Data(format!("{p:?} is not a permutation of degree {}", spec.degree)));
            }
            Ok(p.to_vec())
        };
        let gens = spec.generators.iter().map(|g| perm(g)).collect::<Result<Vec<_>>>()?;
        let mut g = Self::from_elements(kind, closure(&gens, spec.degree));
        let all: Vec<usize> = (0..g.order()).collect();
        let mut covered = vec![false; g.order()];
        let mut classes = Vec::new();
        for c in &spec.classes {
            let rep = g.index_of(&perm(&c.rep)?).ok_or_else(|| Error::Data("class rep not in group".into()))?;
            let members = g.class_of(rep, &all);
            for &m in &members {
                if std::mem::replace(&mut covered[m], true) {
                    return Err(Error::Data(format!("class {} listed twice", c.label)));
                }
            }
            let centralizer = g.centralizer(rep);
            let mut characters = Vec::new();
            for ch in &c.characters {
                let mut values: Vec<Option<CycloNumber>> = vec![None; centralizer.len()];
                for v in &ch.values {
                    let y = g.index_of(&perm(&v.elem)?).ok_or_else(|| Error::Data("value element not in group".into()))?;
                    if !centralizer.contains(&y) {
                        return Err(Error::Data(format!("{:?} not in the centralizer of {}", v.elem, c.label)));
                    }
                    let val = CycloNumber::from_json(&v.value)?;
                    for z in g.class_of(y, &centralizer) {
                        let pos = centralizer.binary_search(&z).unwrap();
                        if values[pos].replace(val.clone()).is_some() {
                            return Err(Error::Data(format!("character {} of {} given twice on a class", ch.label, c.label)));
                        }
                    }
                }
                let values = values
                    .into_iter()
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| Error::Data(format!("character {} of {} incomplete", ch.label, c.label)))?;
                characters.push(Character { label: ch.label.clone(), values });
            }
            classes.push(ClassData { label: c.label.clone(), rep, members, centralizer, characters });
        }
        if covered.iter().any(|c| !c) {
            return Err(Error::Data(format!("{name}: classes do not cover the group")));
        }
        g.classes = classes;
        g.validate()?;
        Ok(g)
    }

    /// Orthonormality and completeness of each centralizer table.
    pub fn validate(&self) -> Result<()> {
        for c in &self.classes {
            let n = c.centralizer.len() as i64;
            let nclasses = {
                let mut seen = vec![false; c.centralizer.len()];
                let mut k = 0;
                for (i, &y) in c.centralizer.iter().enumerate() {
                    if !seen[i] {
                        k += 1;
                        for z in self.class_of(y, &c.centralizer) {
                            seen[c.centralizer_pos(z).unwrap()] = true;
                        }
                    }
                }
                k
            };
            if c.characters.len() != nclasses {
                return Err(Error::Data(format!("class {}: {} characters for {nclasses} classes", c.label, c.characters.len())));
            }
            for (i, a) in c.characters.iter().enumerate() {
                for (j, b) in c.characters.iter().enumerate() {
                    let s: CycloNumber = a.values.iter().zip(&b.values).map(|(x, y)| x * &y.conj()).sum();
                    let expect = CycloNumber::from_int(if i == j { n } else { 0 });
                    if s != expect {
                        return Err(Error::Data(format!("class {}: characters {} and {} not orthonormal", c.label, a.label, b.label)));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Deserialize)]
struct DataFile {
    version: u32,
    groups: Vec<GroupSpec>,
}

#[derive(Deserialize)]
struct GroupSpec {
    name: String,
    degree: usize,
    generators: Vec<Vec<u8>>,
    classes: Vec<ClassSpec>,
}

#[derive(Deserialize)]
struct ClassSpec {
    label: String,
    rep: Vec<u8>,
    characters: Vec<CharSpec>,
}

#[derive(Deserialize)]
struct CharSpec {
    label: String,
    values: Vec<ValueSpec>,
}

#[derive(Deserialize)]
struct ValueSpec {
    elem: Vec<u8>,
    value: serde_json::Value,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_tables_load() {
        let s3 = FamilyGroup::load(GroupKind::S3).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.classes.len(), 3);
        let s4 = FamilyGroup::load(GroupKind::S4).unwrap();
        assert_eq!(s4.order(), 24);
        let sizes: Vec<usize> = s4.classes.iter().map(|c| c.members.len()).collect();
        assert_eq!(sizes.iter().sum::<usize>(), 24);
    }

    #[test]
    fn corrupted_table_is_rejected() {
        let bad = BUNDLED.replacen("\"value\": \"-1\"", "\"value\": \"1\"", 1);
        assert!(matches!(FamilyGroup::from_data(GroupKind::S3, &bad), Err(Error::Data(_))));
        let wrong_version = BUNDLED.replacen("\"version\": 1", "\"version\": 7", 1);
        assert!(FamilyGroup::from_data(GroupKind::S3, &wrong_version).is_err());
    }

    #[test]
    fn elementary_abelian() {
        let g = FamilyGroup::elementary_abelian(2);
        assert_eq!(g.order(), 4);
        assert_eq!(g.classes.len(), 4);
        g.validate().unwrap();
        assert_eq!(FamilyGroup::elementary_abelian(0).order(), 1);
    }

    #[test]
    fn parse_kind() {
        assert_eq!("Z2^3".parse::<GroupKind>().unwrap(), GroupKind::ElementaryAbelian2(3));
        assert_eq!("s4".parse::<GroupKind>().unwrap(), GroupKind::S4);
        assert!("S5".parse::<GroupKind>().is_err());
    }
}
