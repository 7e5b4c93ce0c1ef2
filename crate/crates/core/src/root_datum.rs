//! Root data and finite root-system combinatorics.
//!
//! A root datum is given by explicit integer vectors: simple roots inside
//! `X = Z^n` and simple coroots inside the dual `X^v = Z^n`, paired by the
//! dot product. From that we enumerate the positive roots by reflection
//! closure, classify the Dynkin components against the standard finite-type
//! list, locate the maximal root of each component, and detect special
//! simple roots (the long simple root of a C-type component whose affine
//! node carries a different parameter), which produce the modified system
//! of halved roots used by the Demazure operators.

use std::collections::{BTreeMap, HashMap};

use crate::intlin::{self, dot};
use crate::{Error, Result};

/// Element of the coweight lattice `X^v = Z^n`.
pub type Coweight = Vec<i64>;
/// Element of the character lattice `X = Z^n`, acting on `X^v` by dot product.
pub type RootVec = Vec<i64>;

/// Raw input datum: lattice rank, simple (co)roots and the parameter-class
/// labels attached to the nodes of the affine diagram (`s1..sk` for the
/// finite simple reflections, `a1..am` one per maximal root).
#[derive(Debug, Clone)]
pub struct RootDatum {
    pub rank: usize,
    pub simple_roots: Vec<RootVec>,
    pub simple_coroots: Vec<Coweight>,
    pub labels: BTreeMap<String, String>,
}

/// A finite root together with its coroot and sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRoot {
    pub vector: RootVec,
    pub coroot: Coweight,
    pub positive: bool,
}

/// An affine root `fvec + level * delta`, as an affine function on `X^v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineRoot {
    pub fvec: RootVec,
    pub fcoroot: Coweight,
    pub level: i64,
}

impl AffineRoot {
    pub fn eval(&self, tau: &[i64]) -> i64 {
        dot(&self.fvec, tau) + self.level
    }

    /// Positivity per the decomposition of the positive affine roots:
    /// positive finite part with level >= 0, or negative with level > 0.
    pub fn is_positive(&self, sys: &RootSystem) -> bool {
        match sys.sign_of(&self.fvec) {
            Some(true) => self.level >= 0,
            Some(false) => self.level > 0,
            None => panic!("not an affine root"),
        }
    }
}

/// Dynkin type of one connected component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentType {
    pub name: String,
    /// Global simple index of the long simple root when the component is of
    /// type `C_n` (with `C_1 = A_1`, `C_2 = B_2`); `None` otherwise.
    pub c_long: Option<usize>,
}

/// The enumerated finite root system attached to a validated datum.
#[derive(Debug, Clone)]
pub struct RootSystem {
    pub rank: usize,
    pub simples: usize,
    /// `cartan[i * simples + j] = alpha_j(alpha_i^v)`.
    pub cartan: Vec<i64>,
    /// Positive roots; the first `simples` entries are the simple roots.
    pub positive: Vec<FiniteRoot>,
    /// Expansion of each positive root over the simple roots.
    pub expansion: Vec<Vec<i64>>,
    pub component_of_simple: Vec<usize>,
    pub components: Vec<Vec<usize>>,
    pub component_types: Vec<ComponentType>,
    /// Index into `positive` of the maximal root of each component.
    pub maximal: Vec<usize>,
    pub two_rho: RootVec,
    pub two_rho_check: Coweight,
    index_of: HashMap<RootVec, usize>,
}

impl RootSystem {
    /// Validate the datum and enumerate its combinatorics.
    pub fn new(datum: &RootDatum) -> Result<Self> {
        let n = datum.rank;
        let k = datum.simple_roots.len();
        if n == 0 {
            return Err(Error::Validation("rank must be positive".into()));
        }
        if k == 0 {
            return Err(Error::Validation("at least one simple root required".into()));
        }
        if datum.simple_coroots.len() != k {
            return Err(Error::Validation(format!(
                "{} simple roots but {} simple coroots",
                k,
                datum.simple_coroots.len()
            )));
        }
        for (i, v) in datum.simple_roots.iter().chain(&datum.simple_coroots).enumerate() {
            if v.len() != n {
                return Err(Error::Validation(format!(
                    "vector {} has length {}, expected rank {}",
                    i + 1,
                    v.len(),
                    n
                )));
            }
        }

        let mut cartan = vec![0i64; k * k];
        for i in 0..k {
            for j in 0..k {
                cartan[i * k + j] = dot(&datum.simple_roots[j], &datum.simple_coroots[i]);
            }
        }
        for i in 0..k {
            if cartan[i * k + i] != 2 {
                return Err(Error::Validation(format!(
                    "pairing alpha_{}(alpha_{}^v) = {}, expected 2",
                    i + 1,
                    i + 1,
                    cartan[i * k + i]
                )));
            }
            for j in 0..k {
                if i != j {
                    let (a, b) = (cartan[i * k + j], cartan[j * k + i]);
                    if a > 0 || b > 0 || ((a == 0) != (b == 0)) {
                        return Err(Error::Validation(format!(
                            "Cartan entries ({},{}) = ({}, {}) are not those of a \
                             generalized Cartan matrix",
                            i + 1,
                            j + 1,
                            a,
                            b
                        )));
                    }
                }
            }
        }

        let root_flat: Vec<i64> = datum.simple_roots.iter().flatten().copied().collect();
        if intlin::rank(&root_flat, k, n) != k {
            return Err(Error::Validation("simple roots are linearly dependent".into()));
        }
        let coroot_flat: Vec<i64> = datum.simple_coroots.iter().flatten().copied().collect();
        if intlin::rank(&coroot_flat, k, n) != k {
            return Err(Error::Validation("simple coroots are linearly dependent".into()));
        }

        // Connected components of the Dynkin diagram.
        let mut component_of_simple = vec![usize::MAX; k];
        let mut components: Vec<Vec<usize>> = Vec::new();
        for start in 0..k {
            if component_of_simple[start] != usize::MAX {
                continue;
            }
            let c = components.len();
            let mut stack = vec![start];
            let mut comp = Vec::new();
            component_of_simple[start] = c;
            while let Some(i) = stack.pop() {
                comp.push(i);
                for j in 0..k {
                    if component_of_simple[j] == usize::MAX && cartan[i * k + j] != 0 {
                        component_of_simple[j] = c;
                        stack.push(j);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }

        let component_types = components
            .iter()
            .map(|comp| classify_component(&cartan, k, comp))
            .collect::<Result<Vec<_>>>()?;

        // Reflection closure of the simple roots. Reflecting a positive root
        // other than alpha_i in s_i stays positive, so no sign checks are
        // needed along the way.
        let mut positive: Vec<FiniteRoot> = Vec::new();
        let mut expansion: Vec<Vec<i64>> = Vec::new();
        let mut index_of: HashMap<RootVec, usize> = HashMap::new();
        for i in 0..k {
            let mut e = vec![0i64; k];
            e[i] = 1;
            index_of.insert(datum.simple_roots[i].clone(), i);
            positive.push(FiniteRoot {
                vector: datum.simple_roots[i].clone(),
                coroot: datum.simple_coroots[i].clone(),
                positive: true,
            });
            expansion.push(e);
        }
        let mut head = 0;
        while head < positive.len() {
            if positive.len() > 100_000 {
                return Err(Error::Internal("positive-root closure did not terminate".into()));
            }
            for i in 0..k {
                if head < k && head == i {
                    continue;
                }
                let a = dot(&positive[head].vector, &datum.simple_coroots[i]);
                if a == 0 {
                    continue; // reflection fixes this root
                }
                let mut vec = positive[head].vector.clone();
                let mut cor = positive[head].coroot.clone();
                let b = dot(&datum.simple_roots[i], &positive[head].coroot);
                for t in 0..n {
                    vec[t] -= a * datum.simple_roots[i][t];
                    cor[t] -= b * datum.simple_coroots[i][t];
                }
                if !index_of.contains_key(&vec) {
                    let mut exp = expansion[head].clone();
                    exp[i] -= a;
                    debug_assert!(exp.iter().all(|&c| c >= 0));
                    index_of.insert(vec.clone(), positive.len());
                    positive.push(FiniteRoot { vector: vec, coroot: cor, positive: true });
                    expansion.push(exp);
                }
            }
            head += 1;
        }

        // Maximal roots: alpha with (alpha + Sigma_f) disjoint from Delta_f.
        let mut maximal = vec![usize::MAX; components.len()];
        for (r, root) in positive.iter().enumerate() {
            let is_max = (0..k).all(|i| {
                let s: Vec<i64> = root
                    .vector
                    .iter()
                    .zip(&datum.simple_roots[i])
                    .map(|(a, b)| a + b)
                    .collect();
                !index_of.contains_key(&s) && {
                    let neg: Vec<i64> = s.iter().map(|x| -x).collect();
                    !index_of.contains_key(&neg)
                }
            });
            if is_max {
                let comp = component_of_root(&expansion[r], &component_of_simple);
                if maximal[comp] != usize::MAX {
                    return Err(Error::Internal(format!(
                        "component {} has two maximal roots",
                        comp
                    )));
                }
                maximal[comp] = r;
            }
        }
        if maximal.contains(&usize::MAX) {
            return Err(Error::Internal("component without maximal root".into()));
        }

        let mut two_rho = vec![0i64; n];
        let mut two_rho_check = vec![0i64; n];
        for r in &positive {
            for t in 0..n {
                two_rho[t] += r.vector[t];
                two_rho_check[t] += r.coroot[t];
            }
        }

        Ok(RootSystem {
            rank: n,
            simples: k,
            cartan,
            positive,
            expansion,
            component_of_simple,
            components,
            component_types,
            maximal,
            two_rho,
            two_rho_check,
            index_of,
        })
    }

    pub fn simple_root(&self, i: usize) -> &RootVec {
        &self.positive[i].vector
    }

    pub fn simple_coroot(&self, i: usize) -> &Coweight {
        &self.positive[i].coroot
    }

    /// Index of a positive root by its vector.
    pub fn index_of(&self, vector: &[i64]) -> Option<usize> {
        self.index_of.get(vector).copied()
    }

    /// `Some(true)` if the vector is a positive root, `Some(false)` if a
    /// negative one, `None` if it is not a root at all.
    pub fn sign_of(&self, vector: &[i64]) -> Option<bool> {
        if self.index_of.contains_key(vector) {
            return Some(true);
        }
        let neg: Vec<i64> = vector.iter().map(|x| -x).collect();
        if self.index_of.contains_key(&neg) {
            return Some(false);
        }
        None
    }

    /// The coroot of an arbitrary root vector (positive or negative).
    pub fn coroot_of(&self, vector: &[i64]) -> Option<Coweight> {
        if let Some(i) = self.index_of(vector) {
            return Some(self.positive[i].coroot.clone());
        }
        let neg: Vec<i64> = vector.iter().map(|x| -x).collect();
        self.index_of(&neg)
            .map(|i| self.positive[i].coroot.iter().map(|x| -x).collect())
    }

    /// The maximal root of each component as a `FiniteRoot`.
    pub fn maximal_roots(&self) -> Vec<&FiniteRoot> {
        self.maximal.iter().map(|&i| &self.positive[i]).collect()
    }

    /// Orbit of a root vector under the simple reflections.
    pub fn reflection_orbit(&self, vector: &RootVec) -> Vec<RootVec> {
        let mut seen: Vec<RootVec> = vec![vector.clone()];
        let mut head = 0;
        while head < seen.len() {
            for i in 0..self.simples {
                let a = dot(&seen[head], self.simple_coroot(i));
                let img: Vec<i64> = seen[head]
                    .iter()
                    .zip(self.simple_root(i))
                    .map(|(x, s)| x - a * s)
                    .collect();
                if !seen.contains(&img) {
                    seen.push(img);
                }
            }
            head += 1;
        }
        seen
    }

    pub fn is_dominant(&self, lambda: &[i64]) -> bool {
        (0..self.simples).all(|i| dot(self.simple_root(i), lambda) >= 0)
    }

    pub fn is_antidominant(&self, lambda: &[i64]) -> bool {
        (0..self.simples).all(|i| dot(self.simple_root(i), lambda) <= 0)
    }
}

fn component_of_root(expansion: &[i64], component_of_simple: &[usize]) -> usize {
    expansion
        .iter()
        .position(|&c| c != 0)
        .map(|i| component_of_simple[i])
        .expect("zero root")
}

// ---------------------------------------------------------------------------
// Component classification
// ---------------------------------------------------------------------------

/// Standard Cartan matrices, convention `m[i][j] = alpha_j(alpha_i^v)`.
fn standard_candidates(r: usize) -> Vec<(String, Vec<i64>, Option<usize>)> {
    let mut out = Vec::new();
    let path = |bonds: &[(usize, usize, i64, i64)]| -> Vec<i64> {
        let mut m = vec![0i64; r * r];
        for i in 0..r {
            m[i * r + i] = 2;
        }
        for &(i, j, a, b) in bonds {
            m[i * r + j] = a;
            m[j * r + i] = b;
        }
        m
    };
    let chain: Vec<(usize, usize, i64, i64)> =
        (0..r.saturating_sub(1)).map(|i| (i, i + 1, -1, -1)).collect();

    if r == 1 {
        // A1 = C1: the single root counts as long.
        out.push(("A1".to_string(), vec![2], Some(0)));
        return out;
    }
    out.push((format!("A{}", r), path(&chain), None));
    {
        // C_r: unique long simple root at the end. Covers B2 at r = 2.
        let mut bonds = chain.clone();
        bonds[r - 2] = (r - 2, r - 1, -2, -1);
        out.push((format!("C{}", r), path(&bonds), Some(r - 1)));
    }
    if r >= 3 {
        let mut bonds = chain.clone();
        bonds[r - 2] = (r - 2, r - 1, -1, -2);
        out.push((format!("B{}", r), path(&bonds), None));
    }
    if r == 2 {
        out.push(("G2".to_string(), path(&[(0, 1, -3, -1)]), None));
    }
    if r == 4 {
        let mut bonds = chain.clone();
        bonds[1] = (1, 2, -1, -2);
        out.push(("F4".to_string(), path(&bonds), None));
    }
    if r >= 4 {
        let mut bonds: Vec<(usize, usize, i64, i64)> =
            (0..r - 2).map(|i| (i, i + 1, -1, -1)).collect();
        bonds.push((r - 3, r - 1, -1, -1));
        out.push((format!("D{}", r), path(&bonds), None));
    }
    if (6..=8).contains(&r) {
        // Bourbaki numbering: branch node is alpha_4 (index 3), alpha_2
        // (index 1) hangs off it, the rest form a chain.
        let mut bonds = vec![(0usize, 2usize, -1i64, -1i64), (1, 3, -1, -1)];
        for i in 2..r - 1 {
            bonds.push((i, i + 1, -1, -1));
        }
        out.push((format!("E{}", r), path(&bonds), None));
    }
    out
}

/// Backtracking search for a simultaneous row/column permutation carrying
/// `sub` onto `cand`.
fn find_iso(sub: &[i64], cand: &[i64], r: usize) -> Option<Vec<usize>> {
    fn rec(
        sub: &[i64],
        cand: &[i64],
        r: usize,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let i = perm.len();
        if i == r {
            return true;
        }
        'outer: for p in 0..r {
            if used[p] {
                continue;
            }
            for (j, &q) in perm.iter().enumerate() {
                if sub[i * r + j] != cand[p * r + q] || sub[j * r + i] != cand[q * r + p] {
                    continue 'outer;
                }
            }
            perm.push(p);
            used[p] = true;
            if rec(sub, cand, r, perm, used) {
                return true;
            }
            perm.pop();
            used[p] = false;
        }
        false
    }
    let mut perm = Vec::new();
    let mut used = vec![false; r];
    rec(sub, cand, r, &mut perm, &mut used).then_some(perm)
}

fn classify_component(cartan: &[i64], k: usize, comp: &[usize]) -> Result<ComponentType> {
    let r = comp.len();
    let mut sub = vec![0i64; r * r];
    for (a, &i) in comp.iter().enumerate() {
        for (b, &j) in comp.iter().enumerate() {
            sub[a * r + b] = cartan[i * k + j];
        }
    }
    for (name, cand, long) in standard_candidates(r) {
        if let Some(perm) = find_iso(&sub, &cand, r) {
            let c_long = long.map(|l| {
                let pos = perm.iter().position(|&p| p == l).expect("perm is onto");
                comp[pos]
            });
            return Ok(ComponentType { name, c_long });
        }
    }
    Err(Error::Validation(format!(
        "component {{{}}} is not of finite type",
        comp.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
    )))
}

// ---------------------------------------------------------------------------
// The modified root system
// ---------------------------------------------------------------------------

/// Halved simple roots attached to the special ones; reflections unchanged.
#[derive(Debug, Clone)]
pub struct TildeSystem {
    /// Per simple root: whether `epsilon = 1/2`.
    pub special: Vec<bool>,
    /// `epsilon(alpha) * alpha`, an element of `X`.
    pub tilde_roots: Vec<RootVec>,
    /// `epsilon(alpha)^{-1} * alpha^v`.
    pub tilde_coroots: Vec<Coweight>,
    /// Per simple root: the parameter class supplying `v_0` (the class of
    /// the affine node of the component for special roots, the root's own
    /// class otherwise).
    pub v0_class: Vec<usize>,
}

/// Decide which simple roots are special and build the modified system.
///
/// `node_class` assigns a parameter class to every affine-diagram node
/// (finite nodes `0..k`, then one node per component), and `class_value`
/// gives the exponent vector of each class's parameter, so that two classes
/// carry equal parameters exactly when their values coincide.
pub fn detect_special(
    sys: &RootSystem,
    node_class: &[usize],
    class_value: &[Vec<i64>],
) -> Result<TildeSystem> {
    let k = sys.simples;
    let mut special = vec![false; k];
    let mut tilde_roots = Vec::with_capacity(k);
    let mut tilde_coroots = Vec::with_capacity(k);
    let mut v0_class = vec![0usize; k];

    for i in 0..k {
        v0_class[i] = node_class[i];
        let comp = sys.component_of_simple[i];
        let eligible = sys.component_types[comp].c_long == Some(i) && {
            let theta = &sys.positive[sys.maximal[comp]].vector;
            sys.reflection_orbit(sys.simple_root(i)).contains(theta)
        };
        if !eligible {
            continue;
        }
        let affine_node = k + comp;
        if class_value[node_class[affine_node]] == class_value[node_class[i]] {
            continue;
        }
        special[i] = true;
        v0_class[i] = node_class[affine_node];
    }

    for i in 0..k {
        if special[i] {
            let root = sys.simple_root(i);
            if root.iter().any(|c| c % 2 != 0) {
                return Err(Error::Unsupported(format!(
                    "special simple root {} is not divisible by 2 in X",
                    i + 1
                )));
            }
            tilde_roots.push(root.iter().map(|c| c / 2).collect());
            tilde_coroots.push(sys.simple_coroot(i).iter().map(|c| c * 2).collect());
        } else {
            tilde_roots.push(sys.simple_root(i).clone());
            tilde_coroots.push(sys.simple_coroot(i).clone());
        }
    }

    Ok(TildeSystem { special, tilde_roots, tilde_coroots, v0_class })
}

// ---------------------------------------------------------------------------
// Datum files
// ---------------------------------------------------------------------------

impl RootDatum {
    /// Parse the plain-text datum format: `rank N`, `root i: c1 .. cN`,
    /// `coroot i: c1 .. cN`, `label node: symbol`. Comments start with `#`.
    pub fn parse(text: &str) -> Result<RootDatum> {
        let mut rank: Option<usize> = None;
        let mut roots: BTreeMap<usize, RootVec> = BTreeMap::new();
        let mut coroots: BTreeMap<usize, Coweight> = BTreeMap::new();
        let mut labels = BTreeMap::new();

        let err = |line: usize, msg: String| Error::Parse { line, msg };
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let keyword = line.split_whitespace().next().unwrap_or("");
            if keyword == "rank" {
                let rest = line["rank".len()..].trim();
                let n = rest
                    .parse::<usize>()
                    .map_err(|_| err(line_no, format!("bad rank: {:?}", rest)))?;
                rank = Some(n);
            } else if keyword == "root" || keyword == "coroot" {
                let body = line[keyword.len()..].trim();
                let (i_str, vec_str) = body
                    .split_once(':')
                    .ok_or_else(|| err(line_no, "missing `:`".into()))?;
                let i = i_str
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| err(line_no, format!("bad index {:?}", i_str.trim())))?;
                if i == 0 {
                    return Err(err(line_no, "indices are 1-based".into()));
                }
                let vec = vec_str
                    .split_whitespace()
                    .map(|t| {
                        t.parse::<i64>()
                            .map_err(|_| err(line_no, format!("bad integer {:?}", t)))
                    })
                    .collect::<Result<Vec<i64>>>()?;
                let table = if keyword == "root" { &mut roots } else { &mut coroots };
                if table.insert(i, vec).is_some() {
                    return Err(err(line_no, format!("duplicate {} {}", keyword, i)));
                }
            } else if keyword == "label" {
                let rest = &line["label".len()..];
                let (node, symbol) = rest
                    .split_once(':')
                    .ok_or_else(|| err(line_no, "missing `:`".into()))?;
                let node = node.trim().to_string();
                let symbol = symbol.trim().to_string();
                if symbol.is_empty()
                    || !symbol.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                {
                    return Err(err(line_no, format!("bad symbol {:?}", symbol)));
                }
                if labels.insert(node.clone(), symbol).is_some() {
                    return Err(err(line_no, format!("duplicate label for {:?}", node)));
                }
            } else {
                return Err(err(line_no, format!("unrecognized line {:?}", line)));
            }
        }

        let rank = rank.ok_or(Error::Parse { line: 0, msg: "missing `rank`".into() })?;
        let k = roots.len();
        if coroots.len() != k {
            return Err(Error::Validation(format!(
                "{} roots but {} coroots",
                k,
                coroots.len()
            )));
        }
        let mut simple_roots = Vec::with_capacity(k);
        let mut simple_coroots = Vec::with_capacity(k);
        for i in 1..=k {
            simple_roots.push(
                roots
                    .remove(&i)
                    .ok_or_else(|| Error::Validation(format!("missing root {}", i)))?,
            );
            simple_coroots.push(
                coroots
                    .remove(&i)
                    .ok_or_else(|| Error::Validation(format!("missing coroot {}", i)))?,
            );
        }
        Ok(RootDatum { rank, simple_roots, simple_coroots, labels })
    }

    pub fn parse_file(path: &std::path::Path) -> Result<RootDatum> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::Usage(format!("cannot read {}: {}", path.display(), e))
        })?;
        RootDatum::parse(&text)
    }
}
