//! The polynomial model `L[X^v]`: exponential polynomials with Laurent
//! coefficients, the Hecke action by string expansion, Demazure operators
//! over the modified root system, Demazure and Weyl characters, the
//! triangular basis `p_tau`, and the generalized Hall-Littlewood
//! polynomials `P_lambda`.
//!
//! No rational-function arithmetic appears anywhere: every divided
//! difference is evaluated through the finite geometric string it expands
//! to, so exactness and termination are structural.

use std::collections::BTreeMap;

use crate::affine_weyl::FinEl;
use crate::algebra::Algebra;
use crate::coeff_ring::LaurentPoly;
use crate::intlin::dot;
use crate::root_datum::Coweight;
use crate::{Error, Result};

/// Finite sparse map from coweights to Laurent coefficients: an element of
/// the group algebra `L[X^v]` in the monomials `e^tau`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExpPoly {
    terms: BTreeMap<Coweight, LaurentPoly>,
}

impl ExpPoly {
    pub fn zero() -> ExpPoly {
        ExpPoly::default()
    }

    pub fn monomial(tau: Coweight, c: LaurentPoly) -> ExpPoly {
        let mut p = ExpPoly::zero();
        p.add_term(tau, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Coweight, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Coweight> {
        self.terms.keys()
    }

    pub fn coeff(&self, tau: &[i64]) -> LaurentPoly {
        self.terms.get(tau).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, tau: Coweight, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(tau) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                let s = slot.get().add(&c);
                if s.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &ExpPoly) -> ExpPoly {
        let mut out = self.clone();
        for (t, c) in other.terms() {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &ExpPoly) -> ExpPoly {
        let mut out = self.clone();
        for (t, c) in other.terms() {
            out.add_term(t.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &LaurentPoly) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (t, x) in self.terms() {
            out.add_term(t.clone(), x.mul(c));
        }
        out
    }

    pub fn mul(&self, other: &ExpPoly) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (t1, c1) in self.terms() {
            for (t2, c2) in other.terms() {
                let t: Coweight = t1.iter().zip(t2).map(|(a, b)| a + b).collect();
                out.add_term(t, c1.mul(c2));
            }
        }
        out
    }

    /// Shift every exponent by `eta`: multiplication by `e^{eta}`.
    pub fn shift(&self, eta: &[i64]) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (t, c) in self.terms() {
            out.add_term(t.iter().zip(eta).map(|(a, b)| a + b).collect(), c.clone());
        }
        out
    }

    /// Left action of a finite Weyl element by permuting exponents.
    pub fn apply_fin(&self, alg: &Algebra, e: FinEl) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (t, c) in self.terms() {
            out.add_term(alg.weyl.wf.apply(e, t), c.clone());
        }
        out
    }

    pub fn is_invariant(&self, alg: &Algebra) -> bool {
        (0..alg.simples()).all(|i| &self.apply_fin(alg, alg.weyl.wf.gen(i)) == self)
    }

    /// Forget the parameters: evaluate every coefficient at one.
    pub fn epsilon(&self) -> BTreeMap<Coweight, i64> {
        self.terms
            .iter()
            .filter_map(|(t, c)| {
                let e = c.epsilon();
                (e != 0).then(|| (t.clone(), e))
            })
            .collect()
    }

    /// Canonical serialization, exponents in descending lexicographic order.
    pub fn display(&self, symbols: &[String]) -> String {
        display_in_basis(self.terms.iter().rev(), symbols, "e")
    }
}

/// Render `coeff b[exps]` terms with sign pulled out of monomial
/// coefficients; shared by the `e`- and `s`-basis printers.
pub(crate) fn display_in_basis<'a>(
    terms: impl Iterator<Item = (&'a Coweight, &'a LaurentPoly)>,
    symbols: &[String],
    basis: &str,
) -> String {
    let mut out = String::new();
    let mut first = true;
    for (t, c) in terms {
        let (neg, body) = signed_coeff(c, symbols);
        let exp = format!(
            "{}[{}]",
            basis,
            t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        );
        if first {
            if neg {
                out.push('-');
            }
            first = false;
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if body.is_empty() {
            out.push_str(&exp);
        } else {
            out.push_str(&body);
            out.push(' ');
            out.push_str(&exp);
        }
    }
    if first {
        out.push('0');
    }
    out
}

/// Split a coefficient into a sign and a printable body; the body is empty
/// for `+-1` and parenthesized when the coefficient has several terms.
fn signed_coeff(c: &LaurentPoly, symbols: &[String]) -> (bool, String) {
    if let Some((_, x)) = c.as_monomial() {
        let abs = if x < 0 { c.neg() } else { c.clone() };
        let body = if abs.is_one() { String::new() } else { abs.display(symbols) };
        (x < 0, body)
    } else {
        (false, format!("({})", c.display(symbols)))
    }
}

// ---------------------------------------------------------------------------
// String operators
// ---------------------------------------------------------------------------

/// `(f - s f) / (1 - e^{-step})` for the reflection `s(tau) = tau -
/// pairing(tau) * step`, expanded monomial by monomial as a finite string.
pub fn string_quotient(f: &ExpPoly, pairing: &[i64], step: &[i64]) -> ExpPoly {
    let mut out = ExpPoly::zero();
    for (tau, c) in f.terms() {
        let k = dot(pairing, tau);
        if k >= 0 {
            for j in 0..k {
                out.add_term(tau.iter().zip(step).map(|(t, s)| t - j * s).collect(), c.clone());
            }
        } else {
            for j in 1..=(-k) {
                out.add_term(
                    tau.iter().zip(step).map(|(t, s)| t + j * s).collect(),
                    c.neg(),
                );
            }
        }
    }
    out
}

/// The Hecke action of the generator of a finite simple root on `L[X^v]`:
/// `H_s(e^tau) = v^{-s} e^{s(tau)} + (v^{-s} - v^s + (v_0^{-s} - v_0^s)
/// e^{-alpha^v}) (e^tau - e^{s(tau)}) / (1 - e^{-2 alpha^v})`, with the
/// divided term expanded as the even/odd halves of the root string.
pub fn hecke_act(alg: &Algebra, i: usize, f: &ExpPoly) -> ExpPoly {
    let alpha = alg.weyl.sys.simple_root(i).clone();
    let alpha_check = alg.weyl.sys.simple_coroot(i).clone();
    let v = alg.v_node(i);
    let v0 = alg.v0_simple(i);
    let cv = v.inv_monomial().sub(&v); // v^{-s} - v^{s}
    let cv0 = v0.inv_monomial().sub(&v0);

    let mut out = ExpPoly::zero();
    for (tau, c) in f.terms() {
        let k = dot(&alpha, tau);
        let s_tau: Coweight = tau.iter().zip(&alpha_check).map(|(t, a)| t - k * a).collect();
        out.add_term(s_tau.clone(), c.mul(&v.inv_monomial()));
        if k == 0 {
            continue;
        }
        // Even-offset and odd-offset parts of the string from tau down to
        // s(tau), antisymmetric under k -> -k.
        let (base, sign, count) = if k > 0 { (tau, 1, k) } else { (&s_tau, -1, -k) };
        let ca = c.mul(&cv).scale(sign);
        let cb = c.mul(&cv0).scale(sign);
        for j in 0..count {
            let exp: Coweight = base.iter().zip(&alpha_check).map(|(t, a)| t - j * a).collect();
            if j % 2 == 0 {
                out.add_term(exp, ca.clone());
            } else {
                out.add_term(exp, cb.clone());
            }
        }
    }
    out
}

/// Iterated Hecke action along a word (applied right to left, matching
/// operator composition).
pub fn hecke_act_word(alg: &Algebra, word: &[u8], f: &ExpPoly) -> ExpPoly {
    let mut acc = f.clone();
    for &i in word.iter().rev() {
        acc = hecke_act(alg, i as usize, &acc);
    }
    acc
}

// ---------------------------------------------------------------------------
// Demazure operators and characters
// ---------------------------------------------------------------------------

/// The Demazure operator of a simple root of the modified system:
/// `D_s = s + (1 - e^{-alpha^v})^{-1} (1 - s)` with the coroot taken in
/// the modified system, evaluated as a full string.
pub fn demazure(alg: &Algebra, i: usize, f: &ExpPoly) -> Result<ExpPoly> {
    let beta = &alg.tilde.tilde_roots[i];
    let step = &alg.tilde.tilde_coroots[i];
    let mut out = ExpPoly::zero();
    for (tau, c) in f.terms() {
        let num = dot(alg.weyl.sys.simple_root(i), tau);
        if alg.tilde.special[i] && num % 2 != 0 {
            return Err(Error::Internal(format!(
                "halved root {} pairs half-integrally with {:?}",
                i + 1,
                tau
            )));
        }
        let k = dot(beta, tau);
        if k >= 0 {
            for j in 0..=k {
                out.add_term(tau.iter().zip(step).map(|(t, s)| t - j * s).collect(), c.clone());
            }
        } else {
            for j in 1..=(-k - 1) {
                out.add_term(
                    tau.iter().zip(step).map(|(t, s)| t + j * s).collect(),
                    c.neg(),
                );
            }
        }
    }
    Ok(out)
}

pub fn demazure_word(alg: &Algebra, word: &[u8], f: &ExpPoly) -> Result<ExpPoly> {
    let mut acc = f.clone();
    for &i in word.iter().rev() {
        acc = demazure(alg, i as usize, &acc)?;
    }
    Ok(acc)
}

/// Shortest finite element carrying `tau` into the dominant chamber.
fn dominating_element(alg: &Algebra, tau: &[i64]) -> FinEl {
    for u in alg.weyl.wf.elements() {
        if alg.weyl.sys.is_dominant(&alg.weyl.wf.apply(alg.weyl.wf.inv(u), tau)) {
            return u;
        }
    }
    unreachable!("every orbit meets the dominant chamber")
}

/// The Demazure character `delta_tau = D_w(e^{tau_+})` for any `w` with
/// `w^{-1} tau` dominant; the choice does not matter.
pub fn demazure_char(alg: &Algebra, tau: &[i64]) -> Result<ExpPoly> {
    let w = dominating_element(alg, tau);
    let tau_plus = alg.weyl.wf.apply(alg.weyl.wf.inv(w), tau);
    let word = alg.weyl.wf.word[w.0 as usize].clone();
    demazure_word(alg, &word, &ExpPoly::monomial(tau_plus, alg.one()))
}

/// The Weyl character of the modified dual system: `D_{w_0}(e^lambda)`.
pub fn schur(alg: &Algebra, lambda: &[i64]) -> Result<ExpPoly> {
    if !alg.weyl.sys.is_dominant(lambda) {
        return Err(Error::Usage(format!("{:?} is not dominant", lambda)));
    }
    let word = alg.weyl.wf.word[alg.weyl.wf.longest.0 as usize].clone();
    demazure_word(alg, &word, &ExpPoly::monomial(lambda.to_vec(), alg.one()))
}

// ---------------------------------------------------------------------------
// The p-basis and Hall-Littlewood polynomials
// ---------------------------------------------------------------------------

/// `p_tau = v^{w_tau} v^w H_w(e^{tau_+})` along the shortest `w` with
/// `w^{-1} tau` dominant.
pub fn p_basis(alg: &Algebra, tau: &[i64]) -> ExpPoly {
    let w = dominating_element(alg, tau);
    let tau_plus = alg.weyl.wf.apply(alg.weyl.wf.inv(w), tau);
    let word = alg.weyl.wf.word[w.0 as usize].clone();
    let acted = hecke_act_word(alg, &word, &ExpPoly::monomial(tau_plus, alg.one()));
    let (_, w_tau) = alg.weyl.min_coset_rep(tau);
    acted.scale(&alg.v_of_fin(w_tau).mul(alg.v_of_fin(w)))
}

/// `P_lambda = sum over the orbit of v^{w_tau} p_tau`, the generalized
/// Hall-Littlewood polynomial: invariant with unit coefficient at
/// `e^lambda`.
pub fn hall_littlewood(alg: &Algebra, lambda: &[i64]) -> Result<ExpPoly> {
    if !alg.weyl.sys.is_dominant(lambda) {
        return Err(Error::Usage(format!("{:?} is not dominant", lambda)));
    }
    if let Some(p) = alg.caches.hall_littlewood.lock().unwrap().get(lambda) {
        return Ok(p.clone());
    }
    let mut out = ExpPoly::zero();
    for tau in alg.weyl.orbit(lambda) {
        let (_, w_tau) = alg.weyl.min_coset_rep(&tau);
        out = out.add(&p_basis(alg, &tau).scale(alg.v_of_fin(w_tau)));
    }
    let lead = out.coeff(lambda);
    if !lead.is_one() {
        return Err(Error::TheoremViolation(format!(
            "P_{:?} has leading coefficient {} at e^lambda, expected 1",
            lambda,
            lead.display(&alg.params.symbols)
        )));
    }
    alg.caches
        .hall_littlewood
        .lock()
        .unwrap()
        .insert(lambda.to_vec(), out.clone());
    Ok(out)
}

/// Expand an invariant polynomial over the Weyl characters by greedy
/// elimination at dominance-maximal dominant exponents (lexicographically
/// largest among incomparable maxima, for reproducibility).
pub fn expand_in_schur(alg: &Algebra, f: &ExpPoly) -> Result<BTreeMap<Coweight, LaurentPoly>> {
    if !f.is_invariant(alg) {
        return Err(Error::Usage("expansion input is not invariant".into()));
    }
    let mut rem = f.clone();
    let mut out: BTreeMap<Coweight, LaurentPoly> = BTreeMap::new();
    let mut guard = 0;
    while !rem.is_zero() {
        guard += 1;
        if guard > 100_000 {
            return Err(Error::Internal("schur expansion did not terminate".into()));
        }
        let dominants: Vec<Coweight> = rem
            .support()
            .filter(|t| alg.weyl.sys.is_dominant(t))
            .cloned()
            .collect();
        if dominants.is_empty() {
            return Err(Error::Internal(
                "invariant polynomial with no dominant exponent".into(),
            ));
        }
        let pivot = dominants
            .iter()
            .filter(|t| {
                dominants
                    .iter()
                    .all(|u| *t == u || !alg.weyl.coweight_leq(t, u))
            })
            .max_by(|a, b| a.cmp(b))
            .expect("maximal element exists")
            .clone();
        let c = rem.coeff(&pivot);
        rem = rem.sub(&schur(alg, &pivot)?.scale(&c));
        let prev = out.insert(pivot, c);
        debug_assert!(prev.is_none());
    }
    Ok(out)
}
