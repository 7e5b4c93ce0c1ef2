//! The spherical subalgebra: closed-form bases of the right-invariant
//! module and of the bi-invariant subalgebra, the Satake correspondence
//! with the invariant polynomials, the normalized product, and the
//! construction of the Kazhdan-Lusztig basis elements with their
//! certificates.

use std::collections::BTreeMap;

use crate::affine_weyl::AffineWeylElement;
use crate::algebra::Algebra;
use crate::coeff_ring::{in_lpp, LaurentPoly, Membership};
use crate::hecke::{self, HeckeElement};
use crate::poly_rep::{self, ExpPoly};
use crate::root_datum::Coweight;
use crate::{Error, Result};

/// Element of the spherical subalgebra: its expansion over the orbit-sum
/// basis and the cached image in the standard basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphericalElement {
    pub n_coeffs: BTreeMap<Coweight, LaurentPoly>,
    pub h_image: HeckeElement,
}

/// Certificate attached to a constructed Kazhdan-Lusztig element: the two
/// defining properties plus positivity bookkeeping. The element is a
/// valid basis element exactly when all three flags hold.
#[derive(Debug, Clone)]
pub struct KLCertificate {
    pub lambda: Coweight,
    pub element: HeckeElement,
    pub selfdual: bool,
    pub leading_ok: bool,
    pub positivity_ok: bool,
    /// Coefficients outside `L_++` (or undecided within budget).
    pub offending: Vec<(AffineWeylElement, LaurentPoly, Membership)>,
}

impl KLCertificate {
    pub fn valid(&self) -> bool {
        self.selfdual && self.leading_ok && self.positivity_ok
    }
}

/// `M_tau = H_{m_tau} theta`, emitted through the closed-form coset sum
/// `v^{m_tau w_0} sum over t_tau W_f of v^{-w} H_w`.
pub fn m_tau(alg: &Algebra, tau: &[i64]) -> HeckeElement {
    let w = &alg.weyl;
    let (m, _) = w.min_coset_rep(tau);
    let prefactor = alg.v_of(&w.mul(&m, &w.from_fin(w.wf.longest)));
    let mut out = HeckeElement::zero();
    let t = w.translation(tau);
    for u in w.wf.elements() {
        let el = w.mul(&t, &w.from_fin(u));
        let c = prefactor.mul(&alg.v_of_inv(&el));
        out.add_term(el, c);
    }
    out
}

/// `N_lambda`, computed through both closed forms (orbit sum of `M_tau`
/// and the double-coset sum) and compared.
pub fn n_lambda(alg: &Algebra, lambda: &[i64]) -> Result<HeckeElement> {
    let w = &alg.weyl;
    if !w.sys.is_dominant(lambda) {
        return Err(Error::Usage(format!("{:?} is not dominant", lambda)));
    }
    if let Some(h) = alg.caches.n_lambda.lock().unwrap().get(lambda) {
        return Ok(h.clone());
    }

    let orbit = w.orbit(lambda);
    let mut via_m = HeckeElement::zero();
    for tau in &orbit {
        let (_, w_tau) = w.min_coset_rep(tau);
        via_m = via_m.add(&m_tau(alg, tau).scale(alg.v_of_fin(w_tau)));
    }

    let n_el = w.longest_double_rep(lambda)?;
    let prefactor = alg.v_of(&n_el);
    let mut via_coset = HeckeElement::zero();
    for tau in &orbit {
        let t = w.translation(tau);
        for u in w.wf.elements() {
            let el = w.mul(&t, &w.from_fin(u));
            let c = prefactor.mul(&alg.v_of_inv(&el));
            via_coset.add_term(el, c);
        }
    }

    if via_m != via_coset {
        return Err(Error::Internal(format!(
            "the two closed forms of N_{:?} disagree",
            lambda
        )));
    }
    alg.caches
        .n_lambda
        .lock()
        .unwrap()
        .insert(lambda.to_vec(), via_m.clone());
    Ok(via_m)
}

/// Pick the expansion pivot: a dominance-maximal dominant exponent,
/// lexicographically largest among incomparable maxima.
fn pivot_exponent(alg: &Algebra, f: &ExpPoly) -> Result<Coweight> {
    let dominants: Vec<Coweight> = f
        .support()
        .filter(|t| alg.weyl.sys.is_dominant(t))
        .cloned()
        .collect();
    if dominants.is_empty() {
        return Err(Error::Internal(
            "invariant polynomial with no dominant exponent".into(),
        ));
    }
    Ok(dominants
        .iter()
        .filter(|t| dominants.iter().all(|u| *t == u || !alg.weyl.coweight_leq(t, u)))
        .max_by(|a, b| a.cmp(b))
        .expect("maximal element exists")
        .clone())
}

/// The Satake map on invariants: expand over the Hall-Littlewood basis by
/// unitriangular elimination, verify the expansion forward, and push to
/// the orbit-sum basis of the spherical subalgebra.
pub fn satake(alg: &Algebra, xi: &ExpPoly) -> Result<SphericalElement> {
    if !xi.is_invariant(alg) {
        return Err(Error::Usage("satake input is not invariant".into()));
    }
    let mut rem = xi.clone();
    let mut coeffs: BTreeMap<Coweight, LaurentPoly> = BTreeMap::new();
    let mut guard = 0;
    while !rem.is_zero() {
        guard += 1;
        if guard > 100_000 {
            return Err(Error::Internal("satake elimination did not terminate".into()));
        }
        let pivot = pivot_exponent(alg, &rem)?;
        let p = poly_rep::hall_littlewood(alg, &pivot)?;
        // hall_littlewood guarantees a unit pivot coefficient; anything
        // else would already have surfaced as a theorem violation.
        let c = rem.coeff(&pivot);
        rem = rem.sub(&p.scale(&c));
        coeffs.insert(pivot, c);
    }

    let mut back = ExpPoly::zero();
    for (lam, c) in &coeffs {
        back = back.add(&poly_rep::hall_littlewood(alg, lam)?.scale(c));
    }
    if back != *xi {
        return Err(Error::Internal("satake forward verification failed".into()));
    }

    let mut h = HeckeElement::zero();
    for (lam, c) in &coeffs {
        h = h.add(&n_lambda(alg, lam)?.scale(c));
    }
    Ok(SphericalElement { n_coeffs: coeffs, h_image: h })
}

/// The Kazhdan-Lusztig element of the double-coset top for a dominant
/// coweight: the Satake image of the Weyl character, certified.
pub fn kl_spherical(alg: &Algebra, lambda: &[i64]) -> Result<KLCertificate> {
    let element = kl_element(alg, lambda)?;
    let n_el = alg.weyl.longest_double_rep(lambda)?;
    let selfdual = hecke::dual(alg, &element) == element;
    let leading_ok = element.coeff(&n_el).is_some_and(|c| c.is_one());
    let cone = alg.lpp_cone();
    let mut offending = Vec::new();
    for (w, c) in element.terms() {
        if w == &n_el {
            continue;
        }
        match in_lpp(c, &cone) {
            Membership::In => {}
            m => offending.push((w.clone(), c.clone(), m)),
        }
    }
    let positivity_ok = offending.is_empty();
    Ok(KLCertificate {
        lambda: lambda.to_vec(),
        element,
        selfdual,
        leading_ok,
        positivity_ok,
        offending,
    })
}

/// The underlying element of `kl_spherical`, cached.
pub fn kl_element(alg: &Algebra, lambda: &[i64]) -> Result<HeckeElement> {
    if let Some(h) = alg.caches.kl_element.lock().unwrap().get(lambda) {
        return Ok(h.clone());
    }
    let s = poly_rep::schur(alg, lambda)?;
    let el = satake(alg, &s)?.h_image;
    alg.caches
        .kl_element
        .lock()
        .unwrap()
        .insert(lambda.to_vec(), el.clone());
    Ok(el)
}

/// Expand a bi-invariant element over the orbit-sum basis by peeling
/// double-coset tops.
pub fn expand_spherical(
    alg: &Algebra,
    h: &HeckeElement,
) -> Result<BTreeMap<Coweight, LaurentPoly>> {
    let w = &alg.weyl;
    let mut rem = h.clone();
    let mut out = BTreeMap::new();
    let mut guard = 0;
    while !rem.is_zero() {
        guard += 1;
        if guard > 100_000 {
            return Err(Error::Internal("spherical expansion did not terminate".into()));
        }
        let (top, _) = rem
            .terms()
            .max_by_key(|(el, _)| w.length(el))
            .expect("nonzero element");
        if top.fin != w.wf.longest {
            return Err(Error::TheoremViolation(format!(
                "element outside the spherical span: top term {} is not a \
                 double-coset top",
                w.element_text(top)
            )));
        }
        let lambda = w.wf.apply(w.wf.longest, &top.tau);
        if !w.sys.is_dominant(&lambda) {
            return Err(Error::TheoremViolation(format!(
                "element outside the spherical span at {}",
                w.element_text(top)
            )));
        }
        let c = rem.coeff(top).cloned().expect("top term present");
        rem = rem.sub(&n_lambda(alg, &lambda)?.scale(&c));
        out.insert(lambda, c);
    }
    Ok(out)
}

/// The normalized product: multiply in the algebra and divide every
/// coefficient exactly by the scalar `P` with `theta^2 = P theta`.
pub fn star_product(
    alg: &Algebra,
    x: &SphericalElement,
    y: &SphericalElement,
) -> Result<SphericalElement> {
    let p = hecke::p_scalar(alg);
    let prod = hecke::mult(alg, &x.h_image, &y.h_image);
    let mut divided = HeckeElement::zero();
    for (w, c) in prod.terms() {
        let q = c.exact_div(&p).ok_or_else(|| {
            Error::Internal(format!(
                "coefficient at {} is not divisible by P",
                alg.weyl.element_text(w)
            ))
        })?;
        divided.add_term(w.clone(), q);
    }
    let n_coeffs = expand_spherical(alg, &divided)?;
    Ok(SphericalElement { n_coeffs, h_image: divided })
}

/// Tensor-product multiplicities computed on the polynomial side as the
/// Weyl-character expansion of `s_lambda s_mu`.
pub fn tensor_multiplicities(
    alg: &Algebra,
    lambda: &[i64],
    mu: &[i64],
) -> Result<BTreeMap<Coweight, i64>> {
    let prod = poly_rep::schur(alg, lambda)?.mul(&poly_rep::schur(alg, mu)?);
    let expansion = poly_rep::expand_in_schur(alg, &prod)?;
    let mut out = BTreeMap::new();
    for (nu, c) in expansion {
        let value = constant_value(&c).ok_or_else(|| {
            Error::TheoremViolation(format!(
                "multiplicity of {:?} is not constant: {}",
                nu,
                c.display(&alg.params.symbols)
            ))
        })?;
        if value < 0 {
            return Err(Error::TheoremViolation(format!(
                "negative multiplicity {} at {:?}",
                value, nu
            )));
        }
        out.insert(nu, value);
    }
    Ok(out)
}

/// The same multiplicities from the algebra side: expand the normalized
/// product of two Kazhdan-Lusztig elements over the Kazhdan-Lusztig
/// elements themselves, requiring integer coefficients.
pub fn tensor_via_star(
    alg: &Algebra,
    lambda: &[i64],
    mu: &[i64],
) -> Result<BTreeMap<Coweight, i64>> {
    let x = satake(alg, &poly_rep::schur(alg, lambda)?)?;
    let y = satake(alg, &poly_rep::schur(alg, mu)?)?;
    let mut rem = star_product(alg, &x, &y)?.h_image;
    let w = &alg.weyl;
    let mut out = BTreeMap::new();
    let mut guard = 0;
    while !rem.is_zero() {
        guard += 1;
        if guard > 100_000 {
            return Err(Error::Internal("KL re-expansion did not terminate".into()));
        }
        let (top, _) = rem
            .terms()
            .max_by_key(|(el, _)| w.length(el))
            .expect("nonzero element");
        if top.fin != w.wf.longest {
            return Err(Error::TheoremViolation(format!(
                "star product leaves the spherical span at {}",
                w.element_text(top)
            )));
        }
        let nu = w.wf.apply(w.wf.longest, &top.tau);
        let c = rem.coeff(top).cloned().expect("top term present");
        let value = constant_value(&c).ok_or_else(|| {
            Error::TheoremViolation(format!(
                "KL coefficient of {:?} is not constant: {}",
                nu,
                c.display(&alg.params.symbols)
            ))
        })?;
        rem = rem.sub(&kl_element(alg, &nu)?.scale(&c));
        if value != 0 {
            out.insert(nu, value);
        }
    }
    Ok(out)
}

/// The coefficient-evaluation weight multiplicity: apply the evaluation
/// map to the coefficient of the double-coset top of `mu` inside the
/// Kazhdan-Lusztig element of `lambda`.
pub fn weight_multiplicity(alg: &Algebra, lambda: &[i64], mu: &[i64]) -> Result<i64> {
    let n_mu = alg.weyl.longest_double_rep(mu)?;
    let el = kl_element(alg, lambda)?;
    Ok(el.coeff(&n_mu).map_or(0, |c| c.epsilon()))
}

fn constant_value(c: &LaurentPoly) -> Option<i64> {
    if c.is_zero() {
        return Some(0);
    }
    c.as_monomial()
        .filter(|(e, _)| e.iter().all(|&x| x == 0))
        .map(|(_, v)| v)
}

/// Render a certificate as the `(element, coefficient, in-cone)` table
/// with summary flags; `machine` switches to the stable line format.
pub fn render_certificate(alg: &Algebra, cert: &KLCertificate, machine: bool) -> String {
    let mut rows: Vec<(u64, String, String, &'static str)> = Vec::new();
    let n_el = alg.weyl.longest_double_rep(&cert.lambda).expect("dominant");
    for (w, c) in cert.element.terms() {
        let status = if *w == n_el {
            if c.is_one() {
                "lead"
            } else {
                "LEAD-BAD"
            }
        } else if cert.offending.iter().any(|(o, _, _)| o == w) {
            "OUT"
        } else {
            "in"
        };
        rows.push((
            alg.weyl.length(w),
            alg.weyl.element_text(w),
            c.display(&alg.params.symbols),
            status,
        ));
    }
    rows.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    let mut out = String::new();
    if machine {
        for (_, w, c, s) in &rows {
            out.push_str(&format!("term {} @ {} ; {}\n", c, w, s));
        }
        out.push_str(&format!(
            "selfdual={} leading={} positivity={} valid={}\n",
            cert.selfdual,
            cert.leading_ok,
            cert.positivity_ok,
            cert.valid()
        ));
    } else {
        out.push_str(&format!(
            "KL element for lambda = {:?} (top of the double coset)\n",
            cert.lambda
        ));
        for (l, w, c, s) in &rows {
            out.push_str(&format!("  [{:>4}] {:<28} {:<30} {}\n", l, w, c, s));
        }
        out.push_str(&format!(
            "  selfdual: {}   leading 1: {}   lower terms positive: {}   => {}\n",
            pass(cert.selfdual),
            pass(cert.leading_ok),
            pass(cert.positivity_ok),
            if cert.valid() { "CERTIFIED" } else { "NOT A KL ELEMENT" }
        ));
    }
    out
}

fn pass(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}
