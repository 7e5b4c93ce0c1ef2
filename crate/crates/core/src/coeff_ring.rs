//! The coefficient ring `L`: exact multi-parameter Laurent polynomials
//! with the bar involution, the evaluation map to the integers, and the
//! positive part `L_++` used by the triangularity and positivity checks.
//!
//! Two instances are supported. In generic mode each parameter class gets
//! its own variable and `L_++` is the non-unital subring generated by the
//! required products. In specialized single-variable mode every class
//! parameter is an integer power of one variable `v` and `L_++` is
//! `v Z[v]`, the canonical choice for which `x -> x - bar(x)` is a
//! bijection onto the antisymmetric part.

use std::collections::{BTreeMap, HashSet};

use crate::{Error, Result};

/// Exponent vector of a Laurent monomial.
pub type ExpVec = Vec<i64>;

/// A Laurent polynomial over the integers, kept canonical (no zero
/// coefficients stored).
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<ExpVec, i64>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn one(nvars: usize) -> LaurentPoly {
        LaurentPoly::monomial(vec![0; nvars], 1)
    }

    pub fn constant(nvars: usize, c: i64) -> LaurentPoly {
        LaurentPoly::monomial(vec![0; nvars], c)
    }

    pub fn monomial(exp: ExpVec, coeff: i64) -> LaurentPoly {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(exp, coeff);
        }
        LaurentPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, &c)| c == 1 && e.iter().all(|&x| x == 0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &i64)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: &[i64]) -> i64 {
        self.terms.get(exp).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, exp: ExpVec, coeff: i64) {
        if coeff == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if *slot.get() == 0 {
                    slot.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, &c) in other.terms() {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, &c) in other.terms() {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, &c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, &c1) in self.terms() {
            for (e2, &c2) in other.terms() {
                let e: ExpVec = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: i64) -> LaurentPoly {
        if c == 0 {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, &x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiplicative inverse, defined for monomials with coefficient +-1.
    pub fn inv_monomial(&self) -> LaurentPoly {
        let (e, c) = self.as_monomial().expect("inverse of a non-monomial");
        assert!(c == 1 || c == -1, "inverse of a non-unit");
        LaurentPoly::monomial(e.iter().map(|x| -x).collect(), c)
    }

    pub fn as_monomial(&self) -> Option<(&ExpVec, i64)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, &c)| (e, c))
        } else {
            None
        }
    }

    /// The bar involution: negates every exponent vector.
    pub fn bar(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, &c)| (e.iter().map(|x| -x).collect(), c))
                .collect(),
        }
    }

    /// Evaluation at all parameters equal to one: the coefficient sum.
    pub fn epsilon(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Exact division, `None` when the divisor does not divide. Peels the
    /// lexicographically smallest term of the remainder against that of
    /// the divisor; for an exact quotient both extremes match term by
    /// term, so integer divisibility failures and a step cap detect the
    /// inexact case.
    pub fn exact_div(&self, g: &LaurentPoly) -> Option<LaurentPoly> {
        let (ge, gc) = g.terms.iter().next()?;
        let mut rem = self.clone();
        let mut q = LaurentPoly::zero();
        let mut steps = 0;
        while !rem.is_zero() {
            steps += 1;
            if steps > 200_000 {
                return None;
            }
            let (re, rc) = rem.terms.iter().next().map(|(e, &c)| (e.clone(), c))?;
            if rc % gc != 0 {
                return None;
            }
            let qe: ExpVec = re.iter().zip(ge).map(|(a, b)| a - b).collect();
            let qc = rc / gc;
            q.add_term(qe.clone(), qc);
            rem = rem.sub(&g.mul(&LaurentPoly::monomial(qe, qc)));
        }
        Some(q)
    }

    /// Render with the given variable symbols, terms in descending
    /// lexicographic order of exponent vectors.
    pub fn display(&self, symbols: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, &c)) in self.terms.iter().rev().enumerate() {
            let mono = monomial_string(e, symbols);
            let body = if mono.is_empty() {
                format!("{}", c.abs())
            } else if c.abs() == 1 {
                mono
            } else {
                format!("{}*{}", c.abs(), mono)
            };
            if i == 0 {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

fn monomial_string(exp: &[i64], symbols: &[String]) -> String {
    let mut parts = Vec::new();
    for (s, &e) in symbols.iter().zip(exp) {
        if e == 0 {
            continue;
        }
        if e == 1 {
            parts.push(s.clone());
        } else {
            parts.push(format!("{}^{}", s, e));
        }
    }
    parts.join("*")
}

// ---------------------------------------------------------------------------
// Parameter specifications
// ---------------------------------------------------------------------------

/// Assignment of ring parameters to the conjugacy classes of simple
/// reflections: either one fresh variable per distinct class symbol, or a
/// single variable `v` with one integer exponent per class.
#[derive(Debug, Clone)]
pub struct ParamSpec {
    pub symbols: Vec<String>,
    /// Per class: the exponent vector of its parameter monomial.
    pub class_exp: Vec<ExpVec>,
    pub specialized: bool,
}

impl ParamSpec {
    /// Generic mode: classes with equal labels share a variable.
    pub fn generic(class_labels: &[String]) -> ParamSpec {
        let mut symbols: Vec<String> = Vec::new();
        for l in class_labels {
            if !symbols.contains(l) {
                symbols.push(l.clone());
            }
        }
        let class_exp = class_labels
            .iter()
            .map(|l| {
                let mut e = vec![0i64; symbols.len()];
                e[symbols.iter().position(|s| s == l).unwrap()] = 1;
                e
            })
            .collect();
        ParamSpec { symbols, class_exp, specialized: false }
    }

    /// Specialized mode: every class symbol is sent to `v^{n}` for the
    /// exponent assigned to it.
    pub fn specialize(
        class_labels: &[String],
        exponents: &BTreeMap<String, i64>,
    ) -> Result<ParamSpec> {
        let mut class_exp = Vec::with_capacity(class_labels.len());
        for l in class_labels {
            let n = exponents.get(l).ok_or_else(|| {
                Error::Usage(format!("no exponent given for parameter symbol {:?}", l))
            })?;
            class_exp.push(vec![*n]);
        }
        for sym in exponents.keys() {
            if !class_labels.contains(sym) {
                return Err(Error::Usage(format!(
                    "exponent given for unknown symbol {:?}",
                    sym
                )));
            }
        }
        Ok(ParamSpec { symbols: vec!["v".to_string()], class_exp, specialized: true })
    }

    pub fn nvars(&self) -> usize {
        self.symbols.len()
    }

    /// The parameter monomial `v^{s}` of a class.
    pub fn v_class(&self, class: usize) -> LaurentPoly {
        LaurentPoly::monomial(self.class_exp[class].clone(), 1)
    }
}

// ---------------------------------------------------------------------------
// The positive part
// ---------------------------------------------------------------------------

/// Outcome of an `L_++` membership test. Cone membership beyond the search
/// budget is reported as indeterminate rather than guessed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    In,
    NotIn,
    Unknown,
}

/// The non-unital subring `L_++`. In specialized mode this is `v Z[v]`;
/// in generic mode the semigroup-span of the listed generator monomials.
#[derive(Debug, Clone)]
pub struct LppCone {
    pub gens: Vec<ExpVec>,
    pub single_std: bool,
    pub budget: usize,
}

impl LppCone {
    pub fn standard() -> LppCone {
        LppCone { gens: vec![vec![1]], single_std: true, budget: 10_000 }
    }

    pub fn generated(gens: Vec<ExpVec>) -> LppCone {
        LppCone { gens, single_std: false, budget: 10_000 }
    }

    /// Do the generators themselves lie in the cone? In specialized mode
    /// this is the hypothesis `n_s > 0`, `n_s +- n_{s_0} > 0` of the main
    /// positivity statement.
    pub fn generators_admissible(&self) -> bool {
        if self.single_std {
            self.gens.iter().all(|g| g[0] >= 1)
        } else {
            true
        }
    }
}

/// Membership of every term of `x` in `L_++`.
pub fn in_lpp(x: &LaurentPoly, cone: &LppCone) -> Membership {
    let mut verdict = Membership::In;
    for (e, _) in x.terms() {
        match term_in_lpp(e, cone) {
            Membership::In => {}
            Membership::NotIn => return Membership::NotIn,
            Membership::Unknown => verdict = Membership::Unknown,
        }
    }
    verdict
}

/// Membership of a single monomial exponent.
pub fn term_in_lpp(exp: &[i64], cone: &LppCone) -> Membership {
    if cone.single_std {
        return if exp[0] >= 1 { Membership::In } else { Membership::NotIn };
    }
    // A coordinate functional that is >= 1 on every generator bounds the
    // search depth and rejects targets outside the cone's halfspace.
    let nvars = exp.len();
    let weight: Vec<i64> = (0..nvars)
        .map(|c| i64::from(cone.gens.iter().all(|g| g[c] >= 0)))
        .collect();
    let graded = cone
        .gens
        .iter()
        .all(|g| g.iter().zip(&weight).map(|(x, w)| x * w).sum::<i64>() >= 1);
    if graded {
        let mut budget = cone.budget;
        let mut failed: HashSet<ExpVec> = HashSet::new();
        return match reachable(exp, &cone.gens, &weight, &mut failed, &mut budget) {
            Some(true) => Membership::In,
            Some(false) => Membership::NotIn,
            None => Membership::Unknown,
        };
    }
    // Without a positive grading non-membership cannot be certified; look
    // for a witness by iterative deepening and report indeterminate
    // otherwise.
    let mut budget = cone.budget;
    for depth in 1.. {
        match witness_at_depth(exp, &cone.gens, depth, &mut budget) {
            Some(true) => return Membership::In,
            Some(false) => {}
            None => return Membership::Unknown,
        }
    }
    unreachable!()
}

fn witness_at_depth(target: &[i64], gens: &[ExpVec], depth: usize, budget: &mut usize) -> Option<bool> {
    if *budget == 0 {
        return None;
    }
    *budget -= 1;
    for g in gens {
        let rest: ExpVec = target.iter().zip(g).map(|(t, x)| t - x).collect();
        if rest.iter().all(|&x| x == 0) {
            return Some(true);
        }
        if depth > 1 {
            match witness_at_depth(&rest, gens, depth - 1, budget) {
                Some(true) => return Some(true),
                Some(false) => {}
                None => return None,
            }
        }
    }
    Some(false)
}

fn reachable(
    target: &[i64],
    gens: &[ExpVec],
    grading: &[i64],
    failed: &mut HashSet<ExpVec>,
    budget: &mut usize,
) -> Option<bool> {
    if target.iter().zip(grading).map(|(t, x)| t * x).sum::<i64>() < 1 {
        return Some(false);
    }
    if *budget == 0 {
        return None;
    }
    *budget -= 1;
    if failed.contains(target) {
        return Some(false);
    }
    let mut unknown = false;
    for g in gens {
        let rest: ExpVec = target.iter().zip(g).map(|(t, x)| t - x).collect();
        if rest.iter().all(|&x| x == 0) {
            return Some(true);
        }
        match reachable(&rest, gens, grading, failed, budget) {
            Some(true) => return Some(true),
            Some(false) => {}
            None => unknown = true,
        }
    }
    if unknown {
        None
    } else {
        failed.insert(target.to_vec());
        Some(false)
    }
}

// ---------------------------------------------------------------------------
// The map phi
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tri {
    Holds,
    Fails,
    NotChecked,
}

/// Structural report on `phi: L_++ -> L^-, x -> x - bar(x)`.
#[derive(Debug, Clone)]
pub struct PhiReport {
    pub injective: Tri,
    pub surjective: Tri,
    pub note: String,
}

/// Certify injectivity (no nonzero bar-symmetric element of `L_++`) and,
/// in the standard single-variable case, surjectivity.
pub fn phi_maps(cone: &LppCone) -> PhiReport {
    if cone.single_std {
        return PhiReport {
            injective: Tri::Holds,
            surjective: Tri::Holds,
            note: "standard case: v^k -> v^k - v^{-k} matches bases of vZ[v] and L^-".into(),
        };
    }
    if cone.gens.iter().any(|g| g.iter().all(|&x| x == 0)) {
        return PhiReport {
            injective: Tri::Fails,
            surjective: Tri::NotChecked,
            note: "the cone contains 1, which phi kills".into(),
        };
    }
    // A linear functional that is >= 1 on every generator is positive on
    // the whole semigroup, so no element can be bar-symmetric.
    let nvars = cone.gens.first().map(|g| g.len()).unwrap_or(0);
    let weight: Vec<i64> = (0..nvars)
        .map(|c| i64::from(cone.gens.iter().all(|g| g[c] >= 0)))
        .collect();
    if cone
        .gens
        .iter()
        .all(|g| g.iter().zip(&weight).map(|(x, w)| x * w).sum::<i64>() >= 1)
    {
        return PhiReport {
            injective: Tri::Holds,
            surjective: Tri::NotChecked,
            note: "a positive grading separates the cone from its bar image; \
                   surjectivity onto L^- is not needed and not checked"
                .into(),
        };
    }
    // Degenerate generator data: look for an explicit bar-symmetric element.
    let mut frontier: Vec<ExpVec> = vec![vec![0; nvars]];
    let mut seen: HashSet<ExpVec> = HashSet::new();
    for _ in 0..6 {
        let mut next = Vec::new();
        for t in &frontier {
            for g in &cone.gens {
                let s: ExpVec = t.iter().zip(g).map(|(a, b)| a + b).collect();
                if seen.insert(s.clone()) {
                    next.push(s);
                }
            }
        }
        frontier = next;
    }
    for s in &seen {
        let neg: ExpVec = s.iter().map(|x| -x).collect();
        if seen.contains(&neg) {
            return PhiReport {
                injective: Tri::Fails,
                surjective: Tri::NotChecked,
                note: format!("bar-symmetric cone element found at exponent {:?}", s),
            };
        }
    }
    PhiReport {
        injective: Tri::NotChecked,
        surjective: Tri::NotChecked,
        note: "no positive grading found and no symmetric element within budget".into(),
    }
}
