//! Seeded identity checks for induction and restriction on a model.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::class_fn::{inner_product, normalized_restriction, parabolic_restriction, ClassFunction, InductionKernel};
use super::decompose::Harmonic;
use super::gl::{permutations, refinements, Classes, GlModel, Parabolic, Subgroup};
use crate::error::{Error, Result};
use crate::linalg::{ri, CycloNumber, Rational};

#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckTally {
    pub name: String,
    pub group: String,
    pub twisted: bool,
    pub checked: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
    /// Adjunction only: mismatches when the restriction is not divided by |U|.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub literal_mismatches: Option<usize>,
}

impl CheckTally {
    fn new(name: &str, g: &GlModel, twisted: bool) -> Self {
        CheckTally { name: name.into(), group: g.name(), twisted, ..Default::default() }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0 && self.checked > 0
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=3).into())
}

/// Random rational values constant on the given classes.
pub fn random_class_function(rng: &mut ChaCha8Rng, s: &Subgroup, classes: &Classes) -> ClassFunction {
    let vals: Vec<Rational> = (0..classes.len()).map(|_| random_rational(rng)).collect();
    ClassFunction::from_rational_classes(s, classes, &vals).expect("lengths agree")
}

/// Proper standard parabolics of G, or the γ-stable ones when twisted.
pub fn proper_standard(g: &GlModel, twisted: bool) -> Result<Vec<Parabolic>> {
    let mut out = Vec::new();
    for c in refinements(&[g.n]) {
        if c.len() == 1 {
            continue;
        }
        let p = g.parabolic(&[g.n], &c, false)?;
        if !twisted || (g.gamma_stable(&p.parabolic) && g.gamma_stable(&p.levi)) {
            out.push(p);
        }
    }
    Ok(out)
}

struct Setup {
    p: Parabolic,
    kernel: InductionKernel,
    m_classes: Classes,
}

fn setups(g: &GlModel, twisted: bool) -> Result<Vec<Setup>> {
    proper_standard(g, twisted)?
        .into_iter()
        .map(|p| {
            let kernel = InductionKernel::new(g, &p, twisted)?;
            let m_classes = g.classes(&p.levi, twisted)?;
            Ok(Setup { p, kernel, m_classes })
        })
        .collect()
}

/// ⟨f, Ind φ⟩_G = ⟨r̄ f, φ⟩_M with r̄ = r / |U|.
pub fn check_adjunction(g: &GlModel, twisted: bool, pairs: usize, seed: u64) -> Result<CheckTally> {
    let mut t = CheckTally::new("adjunction", g, twisted);
    let mut literal = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g_classes = g.classes(&g.whole, twisted)?;
    let ss = setups(g, twisted)?;
    for k in 0..pairs {
        let s = &ss[k % ss.len()];
        let f = random_class_function(&mut rng, &g.whole, &g_classes);
        let phi = random_class_function(&mut rng, &s.p.levi, &s.m_classes);
        let lhs = inner_product(&g.whole, &f, &s.kernel.apply(&phi)?)?;
        let rhs = inner_product(&s.p.levi, &normalized_restriction(g, &s.p, &f)?, &phi)?;
        let lit = inner_product(&s.p.levi, &parabolic_restriction(g, &s.p, &f)?, &phi)?;
        if lit != lhs {
            literal += 1;
        }
        t.record(lhs == rhs, || format!("{} pair {k}", s.p.label));
    }
    t.literal_mismatches = Some(literal);
    Ok(t)
}

/// Induction through P and through the opposite parabolic agree.
pub fn check_resind(g: &GlModel, twisted: bool, pairs: usize, seed: u64) -> Result<CheckTally> {
    let mut t = CheckTally::new("resind", g, twisted);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ss = setups(g, twisted)?;
    let opp: Vec<InductionKernel> = ss
        .iter()
        .map(|s| InductionKernel::new(g, &g.parabolic(&[g.n], &s.p.levi_comp, true)?, twisted))
        .collect::<Result<_>>()?;
    for k in 0..pairs {
        let i = k % ss.len();
        let phi = random_class_function(&mut rng, &ss[i].p.levi, &ss[i].m_classes);
        t.record(ss[i].kernel.apply(&phi)? == opp[i].apply(&phi)?, || format!("{} pair {k}", ss[i].p.label));
    }
    Ok(t)
}

/// Ind φ and (|G|/|P|)·(lift of φ to P) pair equally with every class
/// function; φ need not be invariant.
pub fn check_find(g: &GlModel, twisted: bool, pairs: usize, seed: u64) -> Result<CheckTally> {
    let mut t = CheckTally::new("find", g, twisted);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g_classes = g.classes(&g.whole, twisted)?;
    let ss = setups(g, twisted)?;
    for k in 0..pairs {
        let s = &ss[k % ss.len()];
        let values: Vec<CycloNumber> =
            (0..s.p.levi.order()).map(|_| CycloNumber::from_rational(random_rational(&mut rng))).collect();
        let phi = ClassFunction { domain: s.p.levi.label.clone(), values };
        let ind = s.kernel.apply(&phi)?;
        let scale = ri(g.order() as i64) / ri(s.p.parabolic.order() as i64);
        let mut lift = vec![Rational::from_integer(0.into()); g.order()];
        for &x in &s.p.parabolic.elements {
            let m = s.p.levi_part(x).expect("x lies in P");
            lift[x] = phi.values[m].to_rational().expect("rational input") * &scale;
        }
        let ok = g_classes.members.iter().all(|c| {
            let a: Rational = c.iter().map(|&x| ind.values[x].to_rational().unwrap()).sum();
            let b: Rational = c.iter().map(|&x| lift[x].clone()).sum();
            a == b
        });
        t.record(ok, || format!("{} pair {k}", s.p.label));
    }
    Ok(t)
}

/// Composition of the standard Levi of `ambient` whose elements are `set`.
fn find_levi(g: &GlModel, ambient: &[usize], set: &[usize]) -> Result<Vec<usize>> {
    for c in refinements(ambient) {
        if g.levi(&c)?.elements == set {
            return Ok(c);
        }
    }
    Err(Error::Data("intersection is not a standard Levi".into()))
}

/// Minimal-length representatives of W_{M'} \ W / W_M.
fn double_coset_reps(n: usize, m: &[usize], mp: &[usize]) -> Vec<Vec<usize>> {
    let block = |comp: &[usize]| -> Vec<usize> { comp.iter().enumerate().flat_map(|(b, &s)| std::iter::repeat_n(b, s)).collect() };
    let (bm, bmp) = (block(m), block(mp));
    let perms = permutations(n);
    let in_w = |w: &Vec<usize>, b: &[usize]| (0..n).all(|i| b[w[i]] == b[i]);
    let wm: Vec<&Vec<usize>> = perms.iter().filter(|w| in_w(w, &bm)).collect();
    let wmp: Vec<&Vec<usize>> = perms.iter().filter(|w| in_w(w, &bmp)).collect();
    let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { (0..n).map(|i| a[b[i]]).collect() };
    let mut seen: Vec<Vec<usize>> = Vec::new();
    let mut reps = Vec::new();
    for w in &perms {
        if seen.contains(w) {
            continue;
        }
        let mut coset: Vec<Vec<usize>> =
            wmp.iter().flat_map(|a| wm.iter().map(move |b| compose(&compose(a, w), b))).collect();
        coset.sort();
        coset.dedup();
        let rep = coset.iter().min_by_key(|x| (super::gl::inversions(x), (*x).clone())).unwrap().clone();
        seen.extend(coset);
        reps.push(rep);
    }
    reps.sort();
    reps
}

/// r̄_{M'} ∘ Ind_M = Σ_w Ind_{M'∩wMw⁻¹}^{M'} ∘ Ad(w) ∘ r̄^M_{M∩w⁻¹M'w}.
pub fn check_mackey(g: &GlModel, pairs: usize, seed: u64) -> Result<CheckTally> {
    let mut t = CheckTally::new("mackey", g, false);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ps = proper_standard(g, false)?;
    let mut cases = Vec::new();
    for a in &ps {
        for b in &ps {
            cases.push((a, b));
        }
    }
    for k in 0..pairs {
        let (pm, pmp) = cases[k % cases.len()];
        let m_classes = g.classes(&pm.levi, false)?;
        let phi = random_class_function(&mut rng, &pm.levi, &m_classes);
        let lhs = normalized_restriction(g, pmp, &InductionKernel::new(g, pm, false)?.apply(&phi)?)?;
        let mut rhs = ClassFunction::zero(&pmp.levi);
        for w in double_coset_reps(g.n, &pm.levi_comp, &pmp.levi_comp) {
            let pw = g.perm_matrix(&w);
            let pw_inv = g.inv(pw);
            let conj = |x: usize| g.mul(g.mul(pw, x), pw_inv);
            let l1: Vec<usize> = pm.levi.elements.iter().copied().filter(|&x| pmp.levi.contains(conj(x))).collect();
            let c1 = find_levi(g, &pm.levi_comp, &l1)?;
            let mut l2: Vec<usize> = l1.iter().map(|&x| conj(x)).collect();
            l2.sort_unstable();
            let c2 = find_levi(g, &pmp.levi_comp, &l2)?;
            let q1 = g.parabolic(&pm.levi_comp, &c1, false)?;
            let q2 = g.parabolic(&pmp.levi_comp, &c2, false)?;
            let psi = normalized_restriction(g, &q1, &phi)?;
            let values = q2
                .levi
                .elements
                .iter()
                .map(|&y| psi.values[q1.levi.position(g.mul(g.mul(pw_inv, y), pw)).unwrap()].clone())
                .collect();
            let moved = ClassFunction { domain: q2.levi.label.clone(), values };
            rhs = rhs.add(&InductionKernel::new(g, &q2, false)?.apply(&moved)?)?;
        }
        t.record(lhs == rhs, || format!("{} -> {} pair {k}", pm.label, pmp.label));
    }
    Ok(t)
}

/// Gram relations between induced cuspidal bases on distinct and equal Levis.
pub fn check_vdx(h: &Harmonic) -> CheckTally {
    let mut t = CheckTally::new("vdx", h.g, h.twisted);
    for (a, la) in h.levis.iter().enumerate() {
        for (b, lb) in h.levis.iter().enumerate() {
            for (i, bi) in la.cusp_basis.iter().enumerate() {
                for (j, bj) in lb.cusp_basis.iter().enumerate() {
                    let actual = h.g_inner(&la.induced[i], &lb.induced[j]);
                    let expected = if a == b {
                        ri(la.normalizer_index() as i64) * la.inner(bi, bj)
                    } else {
                        Rational::from_integer(0.into())
                    };
                    t.record(actual == expected, || format!("{}[{i}] vs {}[{j}]", la.label, lb.label));
                }
            }
        }
    }
    t
}

/// Decomposition of every class indicator, and the dimension count.
pub fn check_dcc(h: &Harmonic) -> Result<CheckTally> {
    let mut t = CheckTally::new("dcc", h.g, h.twisted);
    for k in 0..h.classes.len() {
        let f = ClassFunction::class_indicator(&h.g.whole, &h.classes, k);
        let r = h.cuspidal_decomposition(&f);
        t.record(r.is_ok(), || format!("class {k}: {:?}", r.err()));
    }
    let audit = h.dimension_audit()?;
    t.record(audit.passed, || format!("dimension audit {:?}", audit));
    Ok(t)
}

/// All identity checks on one model, untwisted and twisted.
pub fn run_all(g: &GlModel, pairs: usize, seed: u64) -> Result<Vec<CheckTally>> {
    let mut out = Vec::new();
    for twisted in [false, true] {
        out.push(check_adjunction(g, twisted, pairs, seed)?);
        out.push(check_resind(g, twisted, pairs, seed)?);
        out.push(check_find(g, twisted, pairs, seed)?);
        let h = Harmonic::new(g, twisted)?;
        out.push(check_vdx(&h));
        out.push(check_dcc(&h)?);
    }
    out.push(check_mackey(g, pairs, seed)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::gl::build_gl;

    #[test]
    fn gl2_f3_all() {
        let g = build_gl(2, 3).unwrap();
        for t in run_all(&g, 20, 7).unwrap() {
            assert!(t.passed(), "{t:?}");
        }
    }

    #[test]
    fn literal_adjunction_is_off_by_u() {
        let g = build_gl(2, 3).unwrap();
        let t = check_adjunction(&g, false, 10, 1).unwrap();
        assert!(t.passed());
        assert!(t.literal_mismatches.unwrap() > 0);
    }

    #[test]
    fn gl3_mackey() {
        let g = build_gl(3, 2).unwrap();
        let t = check_mackey(&g, 30, 3).unwrap();
        assert!(t.passed(), "{t:?}");
    }

    #[test]
    fn coset_reps() {
        assert_eq!(double_coset_reps(3, &[1, 1, 1], &[1, 1, 1]).len(), 6);
        assert_eq!(double_coset_reps(3, &[2, 1], &[2, 1]).len(), 2);
        assert_eq!(double_coset_reps(3, &[2, 1], &[1, 2]).len(), 2);
    }
}
