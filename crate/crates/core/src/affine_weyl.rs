//! The extended affine Weyl group `W = W_f x| X^v`.
//!
//! Elements are stored translation-first as `t_tau * w` with the finite
//! part held in a cached enumeration of `W_f` (as integer matrices acting
//! on `X^v`). The module provides the explicit length formula, reduced
//! words by descent peeling, the length-zero subgroup, minimal coset
//! representatives, Bruhat order by the lifting recursion, the induced
//! order on coweights, and the partition of the affine diagram nodes into
//! parameter classes.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Mutex;

use crate::intlin::{self, covec_mat, dot, mat_mul, mat_vec};
use crate::root_datum::{AffineRoot, Coweight, RootDatum, RootSystem};
use crate::{Error, Result};

/// Handle to an element of the cached finite Weyl group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinEl(pub u32);

impl FinEl {
    pub const IDENTITY: FinEl = FinEl(0);
}

/// The finite Weyl group, enumerated once by closure over the simple
/// reflections and stored as integer action matrices on `X^v`.
#[derive(Debug)]
pub struct FiniteWeyl {
    pub rank: usize,
    mats: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, u32>,
    pub length: Vec<u32>,
    /// Canonical reduced word (from breadth-first enumeration).
    pub word: Vec<Vec<u8>>,
    inv: Vec<u32>,
    pub longest: FinEl,
    gens: Vec<FinEl>,
}

impl FiniteWeyl {
    pub fn enumerate(sys: &RootSystem) -> Result<FiniteWeyl> {
        let n = sys.rank;
        let k = sys.simples;
        let mut gen_mats = Vec::with_capacity(k);
        for i in 0..k {
            // s_i acts by lambda -> lambda - alpha_i(lambda) alpha_i^v.
            let mut m = intlin::identity(n);
            for r in 0..n {
                for c in 0..n {
                    m[r * n + c] -= sys.simple_coroot(i)[r] * sys.simple_root(i)[c];
                }
            }
            gen_mats.push(m);
        }

        let mut mats = vec![intlin::identity(n)];
        let mut index = HashMap::new();
        index.insert(mats[0].clone(), 0u32);
        let mut length = vec![0u32];
        let mut word: Vec<Vec<u8>> = vec![vec![]];
        let mut head = 0;
        while head < mats.len() {
            if mats.len() > 2_000_000 {
                return Err(Error::Internal("finite Weyl group enumeration blew up".into()));
            }
            for (i, g) in gen_mats.iter().enumerate() {
                let m = mat_mul(&mats[head], g, n);
                if !index.contains_key(&m) {
                    index.insert(m.clone(), mats.len() as u32);
                    let mut w = word[head].clone();
                    w.push(i as u8);
                    word.push(w);
                    length.push(length[head] + 1);
                    mats.push(m);
                }
            }
            head += 1;
        }

        let mut inv = vec![0u32; mats.len()];
        for (e, w) in word.iter().enumerate() {
            let mut m = intlin::identity(n);
            for &i in w.iter().rev() {
                m = mat_mul(&m, &gen_mats[i as usize], n);
            }
            inv[e] = index[&m];
        }
        let longest = {
            let max = *length.iter().max().expect("nonempty group");
            let hits: Vec<u32> = (0..mats.len() as u32).filter(|&e| length[e as usize] == max).collect();
            if hits.len() != 1 {
                return Err(Error::Internal("longest element is not unique".into()));
            }
            FinEl(hits[0])
        };
        let gens = (0..k).map(|i| FinEl(index[&gen_mats[i]])).collect();
        Ok(FiniteWeyl { rank: n, mats, index, length, word, inv, longest, gens })
    }

    pub fn size(&self) -> usize {
        self.mats.len()
    }

    pub fn mat(&self, e: FinEl) -> &[i64] {
        &self.mats[e.0 as usize]
    }

    pub fn lookup(&self, mat: &[i64]) -> Option<FinEl> {
        self.index.get(mat).copied().map(FinEl)
    }

    pub fn mul(&self, a: FinEl, b: FinEl) -> FinEl {
        let m = mat_mul(self.mat(a), self.mat(b), self.rank);
        FinEl(self.index[&m])
    }

    pub fn inv(&self, a: FinEl) -> FinEl {
        FinEl(self.inv[a.0 as usize])
    }

    pub fn apply(&self, e: FinEl, v: &[i64]) -> Vec<i64> {
        mat_vec(self.mat(e), self.rank, v)
    }

    pub fn gen(&self, i: usize) -> FinEl {
        self.gens[i]
    }

    pub fn len_of(&self, e: FinEl) -> u64 {
        self.length[e.0 as usize] as u64
    }

    /// Elements in breadth-first (length-ascending) order.
    pub fn elements(&self) -> impl Iterator<Item = FinEl> {
        (0..self.size() as u32).map(FinEl)
    }
}

/// An element `t_tau * fin` of the extended affine Weyl group, acting on a
/// coweight by `lambda -> fin(lambda) + tau`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineWeylElement {
    pub tau: Coweight,
    pub fin: FinEl,
}

/// An `omega`-residue together with letters in the simple affine roots:
/// the element equals `residue * s_{a_1} * ... * s_{a_m}` with `m` its
/// length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedWord {
    pub residue: AffineWeylElement,
    pub letters: Vec<usize>,
}

/// A node of the affine Dynkin diagram.
#[derive(Debug, Clone)]
pub struct AffNode {
    pub name: String,
    pub label: String,
    pub root: AffineRoot,
    pub refl: AffineWeylElement,
}

/// Root system plus finite Weyl group plus the affine simple reflections:
/// everything needed for the group-level operations.
#[derive(Debug)]
pub struct WeylData {
    pub sys: RootSystem,
    pub wf: FiniteWeyl,
    pub nodes: Vec<AffNode>,
    bruhat_memo: Mutex<HashMap<(AffineWeylElement, AffineWeylElement), bool>>,
}

impl WeylData {
    pub fn new(datum: &RootDatum) -> Result<WeylData> {
        let sys = RootSystem::new(datum)?;
        let wf = FiniteWeyl::enumerate(&sys)?;
        let k = sys.simples;

        let mut nodes = Vec::new();
        for i in 0..k {
            let name = format!("s{}", i + 1);
            let label = datum
                .labels
                .get(&name)
                .ok_or_else(|| Error::Validation(format!("missing label for node {}", name)))?
                .clone();
            nodes.push(AffNode {
                name,
                label,
                root: AffineRoot {
                    fvec: sys.simple_root(i).clone(),
                    fcoroot: sys.simple_coroot(i).clone(),
                    level: 0,
                },
                refl: AffineWeylElement { tau: vec![0; sys.rank], fin: wf.gen(i) },
            });
        }
        for (c, &m) in sys.maximal.iter().enumerate() {
            let name = format!("a{}", c + 1);
            let label = datum
                .labels
                .get(&name)
                .ok_or_else(|| Error::Validation(format!("missing label for node {}", name)))?
                .clone();
            let theta = &sys.positive[m];
            // s_{-theta + delta} = t_{theta^v} s_theta
            let mut refl_mat = intlin::identity(sys.rank);
            for r in 0..sys.rank {
                for cc in 0..sys.rank {
                    refl_mat[r * sys.rank + cc] -= theta.coroot[r] * theta.vector[cc];
                }
            }
            let fin = wf
                .lookup(&refl_mat)
                .ok_or_else(|| Error::Internal("reflection of maximal root not in W_f".into()))?;
            nodes.push(AffNode {
                name,
                label,
                root: AffineRoot {
                    fvec: theta.vector.iter().map(|x| -x).collect(),
                    fcoroot: theta.coroot.iter().map(|x| -x).collect(),
                    level: 1,
                },
                refl: AffineWeylElement { tau: theta.coroot.clone(), fin },
            });
        }
        let extra: Vec<_> = datum
            .labels
            .keys()
            .filter(|k| !nodes.iter().any(|n| &n.name == *k))
            .cloned()
            .collect();
        if !extra.is_empty() {
            return Err(Error::Validation(format!("labels for unknown nodes: {:?}", extra)));
        }

        Ok(WeylData { sys, wf, nodes, bruhat_memo: Mutex::new(HashMap::new()) })
    }

    pub fn rank(&self) -> usize {
        self.sys.rank
    }

    pub fn identity(&self) -> AffineWeylElement {
        AffineWeylElement { tau: vec![0; self.rank()], fin: FinEl::IDENTITY }
    }

    pub fn translation(&self, tau: &[i64]) -> AffineWeylElement {
        AffineWeylElement { tau: tau.to_vec(), fin: FinEl::IDENTITY }
    }

    pub fn from_fin(&self, fin: FinEl) -> AffineWeylElement {
        AffineWeylElement { tau: vec![0; self.rank()], fin }
    }

    /// Group law `(t_sigma u)(t_tau v) = t_{sigma + u(tau)} (u v)`.
    pub fn mul(&self, a: &AffineWeylElement, b: &AffineWeylElement) -> AffineWeylElement {
        let mut tau = self.wf.apply(a.fin, &b.tau);
        for (t, s) in tau.iter_mut().zip(&a.tau) {
            *t += s;
        }
        AffineWeylElement { tau, fin: self.wf.mul(a.fin, b.fin) }
    }

    /// `(t_tau u)^{-1} = t_{-u^{-1}(tau)} u^{-1}`.
    pub fn inv(&self, a: &AffineWeylElement) -> AffineWeylElement {
        let fi = self.wf.inv(a.fin);
        let tau = self.wf.apply(fi, &a.tau).iter().map(|x| -x).collect();
        AffineWeylElement { tau, fin: fi }
    }

    pub fn act(&self, w: &AffineWeylElement, lambda: &[i64]) -> Coweight {
        let mut v = self.wf.apply(w.fin, lambda);
        for (x, t) in v.iter_mut().zip(&w.tau) {
            *x += t;
        }
        v
    }

    /// Right action on affine roots: `alpha^w(lambda) = alpha(w lambda)`.
    pub fn act_on_affine_root(&self, a: &AffineRoot, w: &AffineWeylElement) -> AffineRoot {
        let n = self.rank();
        let fvec = covec_mat(&a.fvec, self.wf.mat(w.fin), n);
        let fcoroot = self
            .sys
            .coroot_of(&fvec)
            .expect("image of a root under the Weyl group is a root");
        let level = dot(&a.fvec, &w.tau) + a.level;
        AffineRoot { fvec, fcoroot, level }
    }

    /// The explicit length formula, applied after rewriting
    /// `t_tau w = w t_{w^{-1} tau}`.
    pub fn length(&self, w: &AffineWeylElement) -> u64 {
        let fi = self.wf.inv(w.fin);
        let sigma = self.wf.apply(fi, &w.tau);
        let mi = self.wf.mat(fi);
        let mut total: i64 = 0;
        for r in &self.sys.positive {
            let image = covec_mat(&r.vector, mi, self.rank());
            let a = dot(&r.vector, &sigma);
            let keeps_sign = self.sys.sign_of(&image) == Some(true);
            total += if keeps_sign { a.abs() } else { (a + 1).abs() };
        }
        total as u64
    }

    pub fn is_length_zero(&self, w: &AffineWeylElement) -> bool {
        self.length(w) == 0
    }

    /// `l(w s_a) = l(w) + 1` iff the node's root stays positive under the
    /// right action of `w^{-1}`.
    pub fn right_ascent(&self, w: &AffineWeylElement, node: usize) -> bool {
        let img = self.act_on_affine_root(&self.nodes[node].root, &self.inv(w));
        img.is_positive(&self.sys)
    }

    /// `l(s_a w) = l(w) + 1` iff the node's root stays positive under the
    /// right action of `w`.
    pub fn left_ascent(&self, w: &AffineWeylElement, node: usize) -> bool {
        let img = self.act_on_affine_root(&self.nodes[node].root, w);
        img.is_positive(&self.sys)
    }

    /// Peel right descents until the length-zero residue remains.
    pub fn reduced_word(&self, w: &AffineWeylElement) -> ReducedWord {
        let mut letters = Vec::new();
        let mut cur = w.clone();
        let mut len = self.length(&cur);
        while len > 0 {
            let i = (0..self.nodes.len())
                .find(|&i| !self.right_ascent(&cur, i))
                .expect("element of positive length has a right descent");
            letters.push(i);
            cur = self.mul(&cur, &self.nodes[i].refl);
            len -= 1;
        }
        letters.reverse();
        ReducedWord { residue: cur, letters }
    }

    /// Like `reduced_word` but choosing descents in caller-supplied order,
    /// used by tests to confirm word-independence of derived data.
    pub fn reduced_word_with<F>(&self, w: &AffineWeylElement, mut pick: F) -> ReducedWord
    where
        F: FnMut(&[usize]) -> usize,
    {
        let mut letters = Vec::new();
        let mut cur = w.clone();
        let mut len = self.length(&cur);
        while len > 0 {
            let descents: Vec<usize> = (0..self.nodes.len())
                .filter(|&i| self.length(&self.mul(&cur, &self.nodes[i].refl)) < len)
                .collect();
            let i = descents[pick(&descents) % descents.len()];
            cur = self.mul(&cur, &self.nodes[i].refl);
            len -= 1;
            letters.push(i);
        }
        letters.reverse();
        ReducedWord { residue: cur, letters }
    }

    /// Rebuild the element of a reduced word.
    pub fn assemble(&self, rw: &ReducedWord) -> AffineWeylElement {
        let mut cur = rw.residue.clone();
        for &i in &rw.letters {
            cur = self.mul(&cur, &self.nodes[i].refl);
        }
        cur
    }

    /// Minimal-length representative `m_tau = t_tau w_tau` of `t_tau W_f`,
    /// where `w_tau` is minimal with `w_tau^{-1}(tau)` antidominant.
    pub fn min_coset_rep(&self, tau: &[i64]) -> (AffineWeylElement, FinEl) {
        for u in self.wf.elements() {
            let img = self.wf.apply(self.wf.inv(u), tau);
            if self.sys.is_antidominant(&img) {
                return (AffineWeylElement { tau: tau.to_vec(), fin: u }, u);
            }
        }
        unreachable!("every orbit meets the antidominant chamber");
    }

    /// Longest element `n_lambda = w_0 t_lambda` of the double coset of a
    /// dominant `lambda`.
    pub fn longest_double_rep(&self, lambda: &[i64]) -> Result<AffineWeylElement> {
        if !self.sys.is_dominant(lambda) {
            return Err(Error::Usage(format!("{:?} is not dominant", lambda)));
        }
        let w0 = self.wf.longest;
        Ok(AffineWeylElement { tau: self.wf.apply(w0, lambda), fin: w0 })
    }

    /// Membership of a coweight in the coroot lattice.
    pub fn in_coroot_lattice(&self, tau: &[i64]) -> bool {
        let n = self.rank();
        let k = self.sys.simples;
        let mut a = vec![0i64; n * k];
        for j in 0..k {
            for i in 0..n {
                a[i * k + j] = self.sys.simple_coroot(j)[i];
            }
        }
        intlin::solve(&a, n, k, tau).is_some()
    }

    /// Same length-zero residue, i.e. comparability in the Bruhat order.
    pub fn same_component(&self, u: &AffineWeylElement, w: &AffineWeylElement) -> bool {
        let d = self.mul(&self.inv(u), w);
        self.in_coroot_lattice(&d.tau)
    }

    /// Bruhat order on `W`, with elements of distinct residues incomparable.
    pub fn bruhat_leq(&self, u: &AffineWeylElement, w: &AffineWeylElement) -> bool {
        if u == w {
            return true;
        }
        if !self.same_component(u, w) {
            return false;
        }
        self.bruhat_rec(u, w)
    }

    fn bruhat_rec(&self, u: &AffineWeylElement, w: &AffineWeylElement) -> bool {
        if u == w {
            return true;
        }
        let (lu, lw) = (self.length(u), self.length(w));
        if lu >= lw {
            return false;
        }
        let key = (u.clone(), w.clone());
        if let Some(&r) = self.bruhat_memo.lock().unwrap().get(&key) {
            return r;
        }
        // Standard lifting: pick a left descent s of w; then u <= w iff
        // (su <= sw when su < u) or (u <= sw otherwise).
        let node = (0..self.nodes.len())
            .find(|&i| !self.left_ascent(w, i))
            .expect("positive-length element has a left descent");
        let refl = &self.nodes[node].refl;
        let sw = self.mul(refl, w);
        let r = if !self.left_ascent(u, node) {
            self.bruhat_rec(&self.mul(refl, u), &sw)
        } else {
            self.bruhat_rec(u, &sw)
        };
        self.bruhat_memo.lock().unwrap().insert(key, r);
        r
    }

    /// The order on `X^v` induced by the Bruhat order on the minimal coset
    /// representatives.
    pub fn coweight_leq(&self, eta: &[i64], tau: &[i64]) -> bool {
        let (me, _) = self.min_coset_rep(eta);
        let (mt, _) = self.min_coset_rep(tau);
        self.bruhat_leq(&me, &mt)
    }

    /// Dominance shortcut for dominant pairs: `tau - eta` a nonnegative
    /// integer combination of simple coroots. Kept as a cross-checked
    /// conjecture against [`Self::coweight_leq`], never as the definition.
    pub fn dominance_leq(&self, eta: &[i64], tau: &[i64]) -> bool {
        let n = self.rank();
        let k = self.sys.simples;
        let mut a = vec![0i64; n * k];
        for j in 0..k {
            for i in 0..n {
                a[i * k + j] = self.sys.simple_coroot(j)[i];
            }
        }
        let d: Vec<i64> = tau.iter().zip(eta).map(|(t, e)| t - e).collect();
        // simple coroots are independent, so a solution is unique
        intlin::solve(&a, n, k, &d).is_some_and(|c| c.iter().all(|&x| x >= 0))
    }

    /// The orbit of a coweight under the finite Weyl group, deduplicated.
    pub fn orbit(&self, tau: &[i64]) -> Vec<Coweight> {
        let mut out: Vec<Coweight> = self.wf.elements().map(|u| self.wf.apply(u, tau)).collect();
        out.sort();
        out.dedup();
        out
    }

    /// The dominant representative of the orbit of a coweight.
    pub fn dominant_rep(&self, tau: &[i64]) -> Coweight {
        for u in self.wf.elements() {
            let img = self.wf.apply(u, tau);
            if self.sys.is_dominant(&img) {
                return img;
            }
        }
        unreachable!("every orbit meets the dominant chamber");
    }

    /// Elements of the non-extended group `W^a` of length at most `max_len`.
    pub fn elements_up_to(&self, max_len: u64) -> Vec<AffineWeylElement> {
        let mut out = vec![self.identity()];
        let mut seen: HashMap<AffineWeylElement, ()> = HashMap::new();
        seen.insert(self.identity(), ());
        let mut head = 0;
        while head < out.len() {
            let l = self.length(&out[head]);
            if l < max_len {
                for node in &self.nodes {
                    let next = self.mul(&out[head], &node.refl);
                    if self.length(&next) == l + 1 && !seen.contains_key(&next) {
                        seen.insert(next.clone(), ());
                        out.push(next);
                    }
                }
            }
            head += 1;
        }
        out
    }

    /// Dominant coweights with `l(n_lambda) <= max_len`, one representative
    /// per class modulo the central directions (coweights are identified
    /// when all simple roots agree on them).
    pub fn dominant_coweights(&self, max_len: u64) -> Vec<Coweight> {
        let k = self.sys.simples;
        let n = self.rank();
        let l0 = self.wf.len_of(self.wf.longest);
        if max_len < l0 {
            return Vec::new();
        }
        let budget = (max_len - l0) as i64;
        // l(n_lambda) = l(w_0) + sum over positive roots alpha of
        // alpha(lambda), a positive combination of the pairing key.
        let mut h = vec![0i64; k];
        for exp in &self.sys.expansion {
            for (hi, e) in h.iter_mut().zip(exp) {
                *hi += e;
            }
        }
        let mut a = vec![0i64; k * n];
        for i in 0..k {
            for j in 0..n {
                a[i * n + j] = self.sys.simple_root(i)[j];
            }
        }
        let mut keys: Vec<Vec<i64>> = Vec::new();
        let mut cur = vec![0i64; k];
        enumerate_keys(&h, budget, 0, &mut cur, &mut keys);
        let mut out = Vec::new();
        for key in keys {
            if let Some(lambda) = intlin::solve(&a, k, n, &key) {
                out.push(lambda);
            }
        }
        out
    }

    // -----------------------------------------------------------------
    // Parameter classes
    // -----------------------------------------------------------------

    /// Partition of the affine-diagram nodes into conjugacy classes of
    /// simple reflections: odd-bond connectivity merged with the action of
    /// the length-zero subgroup. Returns the class index of each node,
    /// classes numbered by first occurrence.
    pub fn parameter_classes(&self) -> Result<Vec<usize>> {
        let nn = self.nodes.len();
        let mut uf: Vec<usize> = (0..nn).collect();
        fn find(uf: &mut Vec<usize>, i: usize) -> usize {
            if uf[i] != i {
                let r = find(uf, uf[i]);
                uf[i] = r;
            }
            uf[i]
        }
        fn union(uf: &mut Vec<usize>, i: usize, j: usize) {
            let (a, b) = (find(uf, i), find(uf, j));
            if a != b {
                uf[b] = a;
            }
        }

        // (a) odd bonds in the affine Coxeter diagram: the Cartan product
        // 0,1,2,3,>=4 corresponds to bond order 2,3,4,6,infinity, and only
        // order 3 is odd.
        for i in 0..nn {
            for j in (i + 1)..nn {
                let a = &self.nodes[i].root;
                let b = &self.nodes[j].root;
                let prod = dot(&b.fvec, &a.fcoroot) * dot(&a.fvec, &b.fcoroot);
                if prod == 1 {
                    union(&mut uf, i, j);
                }
            }
        }

        // (b) the action of Omega on the diagram.
        for omega in self.omega_generators()? {
            let oi = self.inv(&omega);
            for i in 0..nn {
                let img = self.act_on_affine_root(&self.nodes[i].root, &oi);
                let j = self
                    .nodes
                    .iter()
                    .position(|n| n.root.fvec == img.fvec && n.root.level == img.level)
                    .ok_or_else(|| {
                        Error::Internal("length-zero element does not permute the diagram".into())
                    })?;
                union(&mut uf, i, j);
            }
        }

        let mut class_of = vec![usize::MAX; nn];
        let mut next = 0;
        for i in 0..nn {
            let r = find(&mut uf, i);
            if class_of[r] == usize::MAX {
                class_of[r] = next;
                next += 1;
            }
            class_of[i] = class_of[r];
        }
        let class_of: Vec<usize> = (0..nn).map(|i| class_of[find(&mut uf, i)]).collect();

        // Labels must be constant on classes.
        for c in 0..next {
            let members: Vec<usize> = (0..nn).filter(|&i| class_of[i] == c).collect();
            let mut labels: Vec<String> =
                members.iter().map(|&i| self.nodes[i].label.clone()).collect();
            labels.dedup();
            if labels.len() > 1 {
                return Err(Error::LabelConflict {
                    class: members
                        .iter()
                        .map(|&i| self.nodes[i].name.clone())
                        .collect::<Vec<_>>()
                        .join(","),
                    labels,
                });
            }
        }
        Ok(class_of)
    }

    /// One length-zero element per generator of `X^v / Q^v` (the images of
    /// the lattice basis vectors suffice).
    pub fn omega_generators(&self) -> Result<Vec<AffineWeylElement>> {
        let n = self.rank();
        let k = self.sys.simples;
        let np = self.sys.positive.len();
        let mut out = Vec::new();
        for b in 0..n {
            let mut g = vec![0i64; n];
            g[b] = 1;
            let mut found = None;
            for u in self.wf.elements() {
                // Length zero forces alpha(sigma) = 0 when alpha^{u^{-1}}
                // stays positive and alpha(sigma) = -1 otherwise; tau =
                // u(sigma) must land in g + Q^v.
                let rows = np + n;
                let cols = n + k;
                let mut a = vec![0i64; rows * cols];
                let mut rhs = vec![0i64; rows];
                let ui = self.wf.inv(u);
                let mi = self.wf.mat(ui);
                for (r, root) in self.sys.positive.iter().enumerate() {
                    for c in 0..n {
                        a[r * cols + c] = root.vector[c];
                    }
                    let image = covec_mat(&root.vector, mi, n);
                    rhs[r] = if self.sys.sign_of(&image) == Some(true) { 0 } else { -1 };
                }
                let mu = self.wf.mat(u);
                for i in 0..n {
                    for c in 0..n {
                        a[(np + i) * cols + c] = mu[i * n + c];
                    }
                    for j in 0..k {
                        a[(np + i) * cols + n + j] = -self.sys.simple_coroot(j)[i];
                    }
                    rhs[np + i] = g[i];
                }
                if let Some(x) = intlin::solve(&a, rows, cols, &rhs) {
                    let sigma = &x[..n];
                    let tau = self.wf.apply(u, sigma);
                    let omega = AffineWeylElement { tau, fin: u };
                    debug_assert_eq!(self.length(&omega), 0);
                    found = Some(omega);
                    break;
                }
            }
            out.push(found.ok_or_else(|| {
                Error::Internal("coset of W^a without length-zero element".into())
            })?);
        }
        Ok(out)
    }

    // -----------------------------------------------------------------
    // Element text syntax
    // -----------------------------------------------------------------

    /// Parse `t[1,0]*s1`, `w0`, `id`, `a1`, products left-to-right.
    pub fn parse_element(&self, text: &str) -> Result<AffineWeylElement> {
        let mut acc = self.identity();
        for token in text.split('*') {
            let token = token.trim();
            let piece = if token == "id" {
                self.identity()
            } else if token == "w0" {
                self.from_fin(self.wf.longest)
            } else if let Some(body) = token.strip_prefix("t[") {
                let body = body
                    .strip_suffix(']')
                    .ok_or_else(|| Error::Usage(format!("unterminated {:?}", token)))?;
                let tau = crate::cli::parse_coweight(body, self.rank())?;
                self.translation(&tau)
            } else if let Some(i) = token.strip_prefix('s') {
                let i: usize = i
                    .parse()
                    .map_err(|_| Error::Usage(format!("bad token {:?}", token)))?;
                if i == 0 || i > self.sys.simples {
                    return Err(Error::Usage(format!("no finite node {:?}", token)));
                }
                self.nodes[i - 1].refl.clone()
            } else if let Some(i) = token.strip_prefix('a') {
                let i: usize = i
                    .parse()
                    .map_err(|_| Error::Usage(format!("bad token {:?}", token)))?;
                if i == 0 || i > self.sys.maximal.len() {
                    return Err(Error::Usage(format!("no affine node {:?}", token)));
                }
                self.nodes[self.sys.simples + i - 1].refl.clone()
            } else {
                return Err(Error::Usage(format!("bad token {:?}", token)));
            };
            acc = self.mul(&acc, &piece);
        }
        Ok(acc)
    }

    /// Canonical text form `t[..]*s..`, using the cached word of the finite
    /// part; `id` for the identity.
    pub fn element_text(&self, w: &AffineWeylElement) -> String {
        let mut parts = Vec::new();
        if w.tau.iter().any(|&x| x != 0) {
            let mut s = String::from("t[");
            for (i, c) in w.tau.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                let _ = write!(s, "{}", c);
            }
            s.push(']');
            parts.push(s);
        }
        if w.fin != FinEl::IDENTITY {
            for &i in &self.wf.word[w.fin.0 as usize] {
                parts.push(format!("s{}", i + 1));
            }
        }
        if parts.is_empty() {
            "id".to_string()
        } else {
            parts.join("*")
        }
    }
}

fn enumerate_keys(h: &[i64], budget: i64, idx: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if idx == h.len() {
        out.push(cur.clone());
        return;
    }
    let mut used = 0i64;
    loop {
        if used > budget {
            break;
        }
        cur[idx] = if h[idx] > 0 { used / h[idx] } else { 0 };
        enumerate_keys(h, budget - cur[idx] * h[idx], idx + 1, cur, out);
        if h[idx] == 0 {
            break;
        }
        used += h[idx];
    }
    cur[idx] = 0;
}
