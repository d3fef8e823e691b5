//! GL_n(F_q) for small n and q, enumerated as matrices, with its standard
//! Levis, parabolics, Bruhat cells and maximal tori.

use super::field::{irreducible, is_squarefree, GaloisField, Poly};
use crate::error::{Error, Result};

pub type Mat = [u8; 9];

/// Models accepted by [`build_gl`].
pub const SUPPORTED: &[(usize, u32)] = &[(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3)];
pub const MAX_ORDER: u64 = 12000;

pub fn gl_order(n: usize, q: u32) -> u64 {
    let qn = (q as u64).pow(n as u32);
    (0..n as u32).map(|i| qn - (q as u64).pow(i)).product()
}

/// A subset of G closed under the group law, as sorted element indices.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub label: String,
    pub elements: Vec<usize>,
    pos: Vec<u32>,
}

impl Subgroup {
    fn new(label: String, elements: Vec<usize>, group_order: usize) -> Self {
        let mut pos = vec![u32::MAX; group_order];
        for (i, &e) in elements.iter().enumerate() {
            pos[e] = i as u32;
        }
        Subgroup { label, elements, pos }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.pos[g] != u32::MAX
    }

    pub fn position(&self, g: usize) -> Option<usize> {
        match self.pos[g] {
            u32::MAX => None,
            p => Some(p as usize),
        }
    }
}

/// Conjugacy classes (or γ-twisted classes) of a subgroup.
#[derive(Clone, Debug)]
pub struct Classes {
    pub twisted: bool,
    /// Global index of the first member of each class.
    pub reps: Vec<usize>,
    /// Subgroup positions of each class.
    pub members: Vec<Vec<usize>>,
    /// Class of each subgroup position.
    pub class_of: Vec<usize>,
}

impl Classes {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

/// P = L ⋉ U inside an ambient standard Levi.
#[derive(Clone, Debug)]
pub struct Parabolic {
    pub label: String,
    pub ambient_comp: Vec<usize>,
    pub levi_comp: Vec<usize>,
    pub opposite: bool,
    pub ambient: Subgroup,
    pub levi: Subgroup,
    pub parabolic: Subgroup,
    pub radical: Vec<usize>,
    /// Levi position of the Levi component of each parabolic position.
    levi_part: Vec<u32>,
}

impl Parabolic {
    pub fn levi_part(&self, g: usize) -> Option<usize> {
        self.parabolic.position(g).map(|p| self.levi_part[p] as usize)
    }

    pub fn radical_order(&self) -> usize {
        self.radical.len()
    }
}

#[derive(Clone, Debug)]
pub struct TorusClass {
    pub partition: Vec<usize>,
    pub label: String,
    pub elements: Vec<usize>,
    /// Elements with squarefree characteristic polynomial.
    pub regular: Vec<usize>,
}

/// Bruhat decomposition G = ⊔ BwB.
#[derive(Clone, Debug)]
pub struct Bruhat {
    /// One-line notation of each w.
    pub weyl: Vec<Vec<usize>>,
    pub lengths: Vec<usize>,
    pub cell_of: Vec<usize>,
    pub cell_sizes: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct GlModel {
    pub n: usize,
    pub field: GaloisField,
    elements: Vec<Mat>,
    code: Vec<u32>,
    inverse: Vec<u32>,
    pub identity: usize,
    pub whole: Subgroup,
    /// γ: g ↦ w0 ᵗg⁻¹ w0, as a permutation of the elements.
    pub gamma: Vec<u32>,
    pub generators: Vec<usize>,
}

pub fn build_gl(n: usize, q: u32) -> Result<GlModel> {
    build_gl_with_limit(n, q, MAX_ORDER)
}

pub fn build_gl_with_limit(n: usize, q: u32, limit: u64) -> Result<GlModel> {
    if !(1..=3).contains(&n) {
        return Err(Error::InvalidParams(format!("GL_{n} not supported")));
    }
    let field = GaloisField::new(q)?;
    let order = gl_order(n, q);
    if order > limit {
        return Err(Error::ResourceLimit(format!("|GL_{n}(F_{q})| = {order} exceeds {limit}")));
    }
    let ncodes = (q as usize).pow((n * n) as u32);
    let mut code = vec![u32::MAX; ncodes];
    let mut elements = Vec::with_capacity(order as usize);
    for c in 0..ncodes {
        let m = decode(c, n, q);
        if det(&field, n, &m) != 0 {
            code[c] = elements.len() as u32;
            elements.push(m);
        }
    }
    let mut g = GlModel {
        n,
        field,
        elements,
        code,
        inverse: vec![],
        identity: 0,
        whole: Subgroup::new(String::new(), vec![], 0),
        gamma: vec![],
        generators: vec![],
    };
    let mut id = [0u8; 9];
    for i in 0..n {
        id[i * n + i] = 1;
    }
    g.identity = g.index_of(&id).expect("identity is invertible");
    g.inverse = (0..g.order()).map(|i| g.index_of(&mat_inverse(&g.field, n, &g.elements[i])).unwrap() as u32).collect();
    g.whole = Subgroup::new("G".into(), (0..g.order()).collect(), g.order());
    g.generators = g.make_generators();
    g.gamma = (0..g.order())
        .map(|i| {
            let inv = &g.elements[g.inverse[i] as usize];
            let mut m = [0u8; 9];
            for r in 0..n {
                for c in 0..n {
                    m[r * n + c] = inv[(n - 1 - c) * n + (n - 1 - r)];
                }
            }
            g.index_of(&m).unwrap() as u32
        })
        .collect();
    g.check_gamma()?;
    Ok(g)
}

fn decode(mut c: usize, n: usize, q: u32) -> Mat {
    let mut m = [0u8; 9];
    for x in m.iter_mut().take(n * n) {
        *x = (c % q as usize) as u8;
        c /= q as usize;
    }
    m
}

fn det(f: &GaloisField, n: usize, m: &Mat) -> u8 {
    match n {
        1 => m[0],
        2 => f.sub(f.mul(m[0], m[3]), f.mul(m[1], m[2])),
        _ => {
            let minor = |a: usize, b: usize, c: usize, d: usize| f.sub(f.mul(m[a], m[d]), f.mul(m[b], m[c]));
            let t0 = f.mul(m[0], minor(4, 5, 7, 8));
            let t1 = f.mul(m[1], minor(3, 5, 6, 8));
            let t2 = f.mul(m[2], minor(3, 4, 6, 7));
            f.add(f.sub(t0, t1), t2)
        }
    }
}

fn mat_mul(f: &GaloisField, n: usize, a: &Mat, b: &Mat) -> Mat {
    let mut out = [0u8; 9];
    for i in 0..n {
        for j in 0..n {
            let mut s = 0;
            for k in 0..n {
                s = f.add(s, f.mul(a[i * n + k], b[k * n + j]));
            }
            out[i * n + j] = s;
        }
    }
    out
}

/// Row-reduces a copy of `a`; returns the rank.
fn mat_rank(f: &GaloisField, n: usize, a: &Mat) -> usize {
    let mut m = *a;
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..n).find(|&i| m[i * n + c] != 0) else { continue };
        for j in 0..n {
            m.swap(r * n + j, p * n + j);
        }
        let inv = f.inv(m[r * n + c]);
        for i in 0..n {
            if i != r && m[i * n + c] != 0 {
                let t = f.mul(m[i * n + c], inv);
                for j in 0..n {
                    m[i * n + j] = f.sub(m[i * n + j], f.mul(t, m[r * n + j]));
                }
            }
        }
        r += 1;
    }
    r
}

fn mat_inverse(f: &GaloisField, n: usize, a: &Mat) -> Mat {
    let mut m = *a;
    let mut inv = [0u8; 9];
    for i in 0..n {
        inv[i * n + i] = 1;
    }
    for c in 0..n {
        let p = (c..n).find(|&i| m[i * n + c] != 0).expect("invertible");
        for j in 0..n {
            m.swap(c * n + j, p * n + j);
            inv.swap(c * n + j, p * n + j);
        }
        let s = f.inv(m[c * n + c]);
        for j in 0..n {
            m[c * n + j] = f.mul(m[c * n + j], s);
            inv[c * n + j] = f.mul(inv[c * n + j], s);
        }
        for i in 0..n {
            if i != c && m[i * n + c] != 0 {
                let t = m[i * n + c];
                for j in 0..n {
                    m[i * n + j] = f.sub(m[i * n + j], f.mul(t, m[c * n + j]));
                    inv[i * n + j] = f.sub(inv[i * n + j], f.mul(t, inv[c * n + j]));
                }
            }
        }
    }
    inv
}

fn blocks(comp: &[usize]) -> Vec<usize> {
    comp.iter().enumerate().flat_map(|(b, &s)| std::iter::repeat_n(b, s)).collect()
}

/// "G" for the one-block composition, "L(a,b,..)" otherwise.
pub fn comp_label(comp: &[usize]) -> String {
    if comp.len() == 1 {
        return "G".into();
    }
    format!("L({})", comp.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
}

/// Compositions of n refining `comp` (including `comp` itself).
pub fn refinements(comp: &[usize]) -> Vec<Vec<usize>> {
    fn compositions(k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in 1..=k {
            for rest in compositions(k - first) {
                let mut c = vec![first];
                c.extend(rest);
                out.push(c);
            }
        }
        out
    }
    let mut out = vec![vec![]];
    for &part in comp {
        let mut next = Vec::new();
        for prefix in &out {
            for c in compositions(part) {
                let mut v: Vec<usize> = prefix.clone();
                v.extend(c);
                next.push(v);
            }
        }
        out = next;
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(b.cmp(a)));
    out
}

/// Partitions of n in decreasing lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            go(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut vec![], &mut out);
    out
}

/// a ≤ b in the dominance order (partitions of the same n).
pub fn dominated(a: &[usize], b: &[usize]) -> bool {
    let (mut sa, mut sb) = (0, 0);
    for i in 0..a.len().max(b.len()) {
        sa += a.get(i).copied().unwrap_or(0);
        sb += b.get(i).copied().unwrap_or(0);
        if sa > sb {
            return false;
        }
    }
    true
}

impl GlModel {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn q(&self) -> u32 {
        self.field.q
    }

    pub fn name(&self) -> String {
        format!("GL{}(F{})", self.n, self.field.q)
    }

    pub fn element(&self, i: usize) -> &Mat {
        &self.elements[i]
    }

    /// Rows of the matrix, for display.
    pub fn matrix_rows(&self, i: usize) -> Vec<Vec<u8>> {
        let m = &self.elements[i];
        (0..self.n).map(|r| m[r * self.n..(r + 1) * self.n].to_vec()).collect()
    }

    pub fn index_of(&self, m: &Mat) -> Option<usize> {
        let q = self.field.q as usize;
        let mut c = 0usize;
        for &x in m[..self.n * self.n].iter().rev() {
            c = c * q + x as usize;
        }
        match self.code[c] {
            u32::MAX => None,
            i => Some(i as usize),
        }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index_of(&mat_mul(&self.field, self.n, &self.elements[a], &self.elements[b])).expect("closed under products")
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn sigma(&self, a: usize, twisted: bool) -> usize {
        if twisted {
            self.gamma[a] as usize
        } else {
            a
        }
    }

    /// σ(k)·g·k⁻¹, with σ = γ when twisted.
    pub fn tconj(&self, k: usize, g: usize, twisted: bool) -> usize {
        self.mul(self.mul(self.sigma(k, twisted), g), self.inv(k))
    }

    fn make_generators(&self) -> Vec<usize> {
        let n = self.n;
        let mut out = Vec::new();
        let mut d = [0u8; 9];
        for i in 0..n {
            d[i * n + i] = 1;
        }
        d[0] = self.field.generator;
        out.push(self.index_of(&d).unwrap());
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                for a in 1..self.field.q as u8 {
                    let mut m = [0u8; 9];
                    for k in 0..n {
                        m[k * n + k] = 1;
                    }
                    m[i * n + j] = a;
                    out.push(self.index_of(&m).unwrap());
                }
            }
        }
        out
    }

    /// γ(g s) = γ(g) γ(s) for every g and every generator s, which forces
    /// multiplicativity on all pairs.
    fn check_gamma(&self) -> Result<()> {
        for g in 0..self.order() {
            for &s in &self.generators {
                if self.gamma[self.mul(g, s)] as usize != self.mul(self.gamma[g] as usize, self.gamma[s] as usize) {
                    return Err(Error::Data("γ is not multiplicative".into()));
                }
            }
        }
        Ok(())
    }

    pub fn subgroup_where(&self, label: String, pred: impl Fn(&Mat) -> bool) -> Subgroup {
        let elems = (0..self.order()).filter(|&i| pred(&self.elements[i])).collect();
        Subgroup::new(label, elems, self.order())
    }

    pub fn subgroup_from(&self, label: String, mut elems: Vec<usize>) -> Subgroup {
        elems.sort_unstable();
        elems.dedup();
        Subgroup::new(label, elems, self.order())
    }

    /// Block-diagonal matrices for the composition.
    pub fn levi(&self, comp: &[usize]) -> Result<Subgroup> {
        self.check_comp(comp)?;
        if comp.len() == 1 {
            return Ok(self.whole.clone());
        }
        let b = blocks(comp);
        let n = self.n;
        Ok(self.subgroup_where(comp_label(comp), |m| {
            (0..n).all(|i| (0..n).all(|j| b[i] == b[j] || m[i * n + j] == 0))
        }))
    }

    fn check_comp(&self, comp: &[usize]) -> Result<()> {
        if comp.iter().sum::<usize>() != self.n || comp.contains(&0) {
            return Err(Error::InvalidParams(format!("{comp:?} is not a composition of {}", self.n)));
        }
        Ok(())
    }

    /// Standard (block upper triangular) or opposite parabolic with Levi
    /// `levi_comp`, inside the Levi of `ambient_comp`.
    pub fn parabolic(&self, ambient_comp: &[usize], levi_comp: &[usize], opposite: bool) -> Result<Parabolic> {
        self.check_comp(levi_comp)?;
        let coarse = blocks(ambient_comp);
        let fine = blocks(levi_comp);
        let n = self.n;
        if (0..n).any(|i| (0..n).any(|j| fine[i] == fine[j] && coarse[i] != coarse[j])) {
            return Err(Error::InvalidParams(format!("{levi_comp:?} does not refine {ambient_comp:?}")));
        }
        let ambient = self.levi(ambient_comp)?;
        let levi = self.levi(levi_comp)?;
        let below = |i: usize, j: usize| if opposite { fine[i] < fine[j] } else { fine[i] > fine[j] };
        let in_p = |m: &Mat| (0..n).all(|i| (0..n).all(|j| !below(i, j) || m[i * n + j] == 0));
        let pelems: Vec<usize> = ambient.elements.iter().copied().filter(|&g| in_p(&self.elements[g])).collect();
        let radical: Vec<usize> = pelems
            .iter()
            .copied()
            .filter(|&g| {
                let m = &self.elements[g];
                (0..n).all(|i| (0..n).all(|j| fine[i] != fine[j] || m[i * n + j] == u8::from(i == j)))
            })
            .collect();
        let tag = if opposite { "P-" } else { "P" };
        let parabolic = Subgroup::new(format!("{tag}{}", comp_label(levi_comp)), pelems, self.order());
        let levi_part = parabolic
            .elements
            .iter()
            .map(|&g| {
                let mut m = self.elements[g];
                for i in 0..n {
                    for j in 0..n {
                        if fine[i] != fine[j] {
                            m[i * n + j] = 0;
                        }
                    }
                }
                levi.position(self.index_of(&m).expect("Levi part is invertible")).unwrap() as u32
            })
            .collect();
        if parabolic.order() != levi.order() * radical.len() {
            return Err(Error::Data(format!("|P| != |L||U| for {}", parabolic.label)));
        }
        Ok(Parabolic {
            label: format!("{} in {}", parabolic.label, comp_label(ambient_comp)),
            ambient_comp: ambient_comp.to_vec(),
            levi_comp: levi_comp.to_vec(),
            opposite,
            ambient,
            levi,
            parabolic,
            radical,
            levi_part,
        })
    }

    pub fn borel(&self) -> Result<Parabolic> {
        self.parabolic(&[self.n], &vec![1; self.n], false)
    }

    /// γ maps the subgroup onto itself.
    pub fn gamma_stable(&self, s: &Subgroup) -> bool {
        s.elements.iter().all(|&g| s.contains(self.gamma[g] as usize))
    }

    pub fn classes(&self, s: &Subgroup, twisted: bool) -> Result<Classes> {
        if twisted && !self.gamma_stable(s) {
            return Err(Error::TwistDoesNotStabilize);
        }
        let mut class_of = vec![usize::MAX; s.order()];
        let mut reps = Vec::new();
        let mut members = Vec::new();
        for start in 0..s.order() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = reps.len();
            let g = s.elements[start];
            let mut mem = Vec::new();
            for &k in &s.elements {
                let p = s.position(self.tconj(k, g, twisted)).expect("subgroup is closed");
                if class_of[p] == usize::MAX {
                    class_of[p] = id;
                    mem.push(p);
                }
            }
            mem.sort_unstable();
            reps.push(g);
            members.push(mem);
        }
        Ok(Classes { twisted, reps, members, class_of })
    }

    /// |Z_G(g)| = |G| / |class of g|.
    pub fn centralizer_order(&self, g: usize) -> usize {
        (0..self.order()).filter(|&h| self.mul(h, g) == self.mul(g, h)).count()
    }

    /// Coefficients of det(xI − g), low to high.
    pub fn char_poly(&self, g: usize) -> Poly {
        let f = &self.field;
        let m = &self.elements[g];
        let n = self.n;
        let tr = (0..n).fold(0, |s, i| f.add(s, m[i * n + i]));
        let d = det(f, n, m);
        match n {
            1 => vec![f.neg(m[0]), 1],
            2 => vec![d, f.neg(tr), 1],
            _ => {
                let pm = |a: usize, b: usize| f.sub(f.mul(m[a * 4], m[b * 4]), f.mul(m[a * 3 + b], m[b * 3 + a]));
                let m2 = f.add(f.add(pm(0, 1), pm(0, 2)), pm(1, 2));
                vec![f.neg(d), m2, f.neg(tr), 1]
            }
        }
    }

    /// Regular semisimple: characteristic polynomial without repeated roots.
    pub fn is_regular_semisimple(&self, g: usize) -> bool {
        is_squarefree(&self.field, &self.char_poly(g))
    }

    /// Jordan type of a unipotent element, None otherwise.
    pub fn jordan_type(&self, g: usize) -> Option<Vec<usize>> {
        let (f, n) = (&self.field, self.n);
        let mut x = self.elements[g];
        for i in 0..n {
            x[i * n + i] = f.sub(x[i * n + i], 1);
        }
        let mut ranks = vec![n];
        let mut power = x;
        for _ in 0..n {
            ranks.push(mat_rank(f, n, &power));
            power = mat_mul(f, n, &power, &x);
        }
        if ranks[n] != 0 {
            return None;
        }
        // blocks of size ≥ k: r_{k-1} − r_k
        let at_least: Vec<usize> = (1..=n).map(|k| ranks[k - 1] - ranks[k]).collect();
        let mut parts = Vec::new();
        for k in (1..=n).rev() {
            let exactly = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
            parts.extend(std::iter::repeat_n(k, exactly));
        }
        Some(parts)
    }

    /// Permutation matrix with e_j ↦ e_{w(j)}.
    pub fn perm_matrix(&self, w: &[usize]) -> usize {
        let n = self.n;
        let mut m = [0u8; 9];
        for (j, &wj) in w.iter().enumerate() {
            m[wj * n + j] = 1;
        }
        self.index_of(&m).unwrap()
    }

    pub fn bruhat(&self) -> Result<Bruhat> {
        let b = self.borel()?;
        let mut weyl = permutations(self.n);
        weyl.sort_by_key(|w| inversions(w));
        let lengths: Vec<usize> = weyl.iter().map(|w| inversions(w)).collect();
        let mut cell_of = vec![usize::MAX; self.order()];
        for (k, w) in weyl.iter().enumerate() {
            let pw = self.perm_matrix(w);
            for &x in &b.parabolic.elements {
                let xw = self.mul(x, pw);
                for &y in &b.parabolic.elements {
                    cell_of[self.mul(xw, y)] = k;
                }
            }
        }
        if cell_of.contains(&usize::MAX) {
            return Err(Error::Data("Bruhat cells do not cover G".into()));
        }
        let mut cell_sizes = vec![0; weyl.len()];
        for &c in &cell_of {
            cell_sizes[c] += 1;
        }
        let q = self.q() as usize;
        let expected: usize = lengths.iter().map(|&l| b.parabolic.order() * q.pow(l as u32)).sum();
        if expected != self.order() {
            return Err(Error::Data("Bruhat count check failed".into()));
        }
        Ok(Bruhat { weyl, lengths, cell_of, cell_sizes })
    }

    /// One maximal torus per partition of n: the units of ⊕ F_q[C_d] for
    /// companion matrices C_d of irreducible polynomials.
    pub fn torus_classes(&self) -> Result<Vec<TorusClass>> {
        let (f, n, q) = (&self.field, self.n, self.q() as usize);
        let mut out = Vec::new();
        for part in partitions(n).into_iter().rev() {
            // per part: list of d×d blocks (row-major) of F_q[C]^×
            let mut block_lists: Vec<Vec<Vec<u8>>> = Vec::new();
            for &d in &part {
                let poly = irreducible(f, d)?;
                let mut comp = vec![0u8; d * d];
                for i in 1..d {
                    comp[i * d + i - 1] = 1;
                }
                for i in 0..d {
                    comp[i * d + d - 1] = f.neg(poly[i]);
                }
                let mut powers = vec![identity_block(d)];
                for _ in 1..d {
                    let last = powers.last().unwrap();
                    powers.push(block_mul(f, d, last, &comp));
                }
                let mut list = Vec::new();
                for code in 1..q.pow(d as u32) {
                    let mut m = vec![0u8; d * d];
                    for (i, pw) in powers.iter().enumerate() {
                        let c = (code / q.pow(i as u32) % q) as u8;
                        for (x, &y) in m.iter_mut().zip(pw) {
                            *x = f.add(*x, f.mul(c, y));
                        }
                    }
                    list.push(m);
                }
                block_lists.push(list);
            }
            let mut elems = Vec::new();
            let mut idx = vec![0usize; part.len()];
            'outer: loop {
                let mut m = [0u8; 9];
                let mut off = 0;
                for (b, &d) in part.iter().enumerate() {
                    let blk = &block_lists[b][idx[b]];
                    for i in 0..d {
                        for j in 0..d {
                            m[(off + i) * n + off + j] = blk[i * d + j];
                        }
                    }
                    off += d;
                }
                elems.push(self.index_of(&m).expect("torus elements are invertible"));
                for b in (0..part.len()).rev() {
                    idx[b] += 1;
                    if idx[b] < block_lists[b].len() {
                        continue 'outer;
                    }
                    idx[b] = 0;
                }
                break;
            }
            elems.sort_unstable();
            let regular = elems.iter().copied().filter(|&g| self.is_regular_semisimple(g)).collect();
            let label = format!("T({})", part.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","));
            out.push(TorusClass { partition: part, label, elements: elems, regular });
        }
        Ok(out)
    }

    /// Class label from sizes and a short description of the representative.
    pub fn describe(&self, g: usize) -> String {
        let rows: Vec<String> = self
            .matrix_rows(g)
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        format!("[{}]", rows.join("; "))
    }
}

fn identity_block(d: usize) -> Vec<u8> {
    let mut m = vec![0u8; d * d];
    for i in 0..d {
        m[i * d + i] = 1;
    }
    m
}

fn block_mul(f: &GaloisField, d: usize, a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; d * d];
    for i in 0..d {
        for j in 0..d {
            let mut s = 0;
            for k in 0..d {
                s = f.add(s, f.mul(a[i * d + k], b[k * d + j]));
            }
            out[i * d + j] = s;
        }
    }
    out
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut v = p.clone();
            v.insert(i, n - 1);
            out.push(v);
        }
    }
    out.sort();
    out
}

pub fn inversions(w: &[usize]) -> usize {
    (0..w.len()).map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count()).sum()
}

/// Blocks of a composition as index sets, for Weyl-group bookkeeping.
pub fn block_map(comp: &[usize]) -> Vec<usize> {
    blocks(comp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_classes() {
        let g = build_gl(2, 2).unwrap();
        assert_eq!(g.order(), 6);
        let g = build_gl(2, 3).unwrap();
        assert_eq!(g.order(), 48);
        assert_eq!(g.classes(&g.whole, false).unwrap().len(), 8);
        assert_eq!(build_gl(3, 2).unwrap().order(), 168);
        assert!(matches!(build_gl_with_limit(3, 3, 1000), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn inverses() {
        let g = build_gl(2, 4).unwrap();
        for a in 0..g.order() {
            assert_eq!(g.mul(a, g.inv(a)), g.identity);
        }
    }

    #[test]
    fn parabolics() {
        let g = build_gl(3, 2).unwrap();
        let b = g.borel().unwrap();
        assert_eq!((b.parabolic.order(), b.levi.order(), b.radical_order()), (8, 1, 8));
        let p = g.parabolic(&[3], &[2, 1], false).unwrap();
        assert_eq!((p.levi.order(), p.radical_order()), (6, 4));
        let inner = g.parabolic(&[2, 1], &[1, 1, 1], true).unwrap();
        assert_eq!(inner.radical_order(), 2);
        assert!(g.gamma_stable(&b.parabolic));
        assert!(!g.gamma_stable(&p.levi));
    }

    #[test]
    fn bruhat_cells() {
        let g = build_gl(3, 2).unwrap();
        assert_eq!(g.bruhat().unwrap().weyl.len(), 6);
        assert_eq!(build_gl(2, 3).unwrap().bruhat().unwrap().cell_sizes, vec![12, 36]);
    }

    #[test]
    fn tori() {
        let g = build_gl(2, 2).unwrap();
        let t = g.torus_classes().unwrap();
        assert_eq!(t[0].elements.len(), 1);
        assert!(t[0].regular.is_empty());
        assert_eq!(t[1].regular.len(), 2);
        let g = build_gl(3, 2).unwrap();
        let sizes: Vec<usize> = g.torus_classes().unwrap().iter().map(|t| t.elements.len()).collect();
        assert_eq!(sizes, vec![1, 3, 7]);
    }

    #[test]
    fn jordan_types() {
        let g = build_gl(3, 3).unwrap();
        let mut types = std::collections::BTreeSet::new();
        for x in 0..g.order() {
            if let Some(t) = g.jordan_type(x) {
                types.insert(t);
            }
        }
        assert_eq!(types.len(), 3);
        assert!(dominated(&[1, 1, 1], &[2, 1]));
        assert!(!dominated(&[3], &[2, 1]));
    }

    #[test]
    fn combinatorics() {
        assert_eq!(partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        assert_eq!(refinements(&[2, 1]).len(), 2);
        assert_eq!(inversions(&[2, 1, 0]), 3);
    }
}
