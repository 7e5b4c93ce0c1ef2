//! The extended affine Hecke algebra: sparse elements in the standard
//! basis, multiplication through the braid and quadratic relations, the
//! bar duality, the commuting translation elements `Y_tau` with the
//! induced map from the group algebra of the coweight lattice, and the
//! spherical idempotent-like element `theta`.

use std::collections::BTreeMap;

use crate::affine_weyl::{AffineWeylElement, FinEl};
use crate::algebra::Algebra;
use crate::coeff_ring::LaurentPoly;
use crate::poly_rep::ExpPoly;
use crate::root_datum::Coweight;

/// A finitely supported map from group elements to coefficients, written
/// in the standard basis.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HeckeElement {
    terms: BTreeMap<AffineWeylElement, LaurentPoly>,
}

impl HeckeElement {
    pub fn zero() -> HeckeElement {
        HeckeElement::default()
    }

    pub fn basis(w: AffineWeylElement, nvars: usize) -> HeckeElement {
        let mut h = HeckeElement::zero();
        h.add_term(w, LaurentPoly::one(nvars));
        h
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AffineWeylElement, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &AffineWeylElement) -> Option<&LaurentPoly> {
        self.terms.get(w)
    }

    pub fn add_term(&mut self, w: AffineWeylElement, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
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

    pub fn add(&self, other: &HeckeElement) -> HeckeElement {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &HeckeElement) -> HeckeElement {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &LaurentPoly) -> HeckeElement {
        let mut out = HeckeElement::zero();
        if c.is_zero() {
            return out;
        }
        for (w, x) in self.terms() {
            out.add_term(w.clone(), x.mul(c));
        }
        out
    }

    /// Apply a coefficient map (bar, evaluation composition, ...).
    pub fn map_coeffs(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (w, c) in self.terms() {
            out.add_term(w.clone(), f(c));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Multiply by the generator of an affine-diagram node: the braid relation
/// on ascents, the quadratic relation on descents.
pub fn mult_by_gen(alg: &Algebra, h: &HeckeElement, node: usize, side: Side) -> HeckeElement {
    let w = &alg.weyl;
    let refl = w.nodes[node].refl.clone();
    let va = alg.v_node(node);
    let va_inv = va.inv_monomial();
    let qcoeff = va_inv.sub(&va); // v^{-s} - v^{s}
    let mut out = HeckeElement::zero();
    for (u, c) in h.terms() {
        let (prod, ascent) = match side {
            Side::Right => (w.mul(u, &refl), w.right_ascent(u, node)),
            Side::Left => (w.mul(&refl, u), w.left_ascent(u, node)),
        };
        out.add_term(prod, c.clone());
        if !ascent {
            out.add_term(u.clone(), c.mul(&qcoeff));
        }
    }
    out
}

/// `H_a^{-1} = H_a + (v^a - v^{-a}) H_e`, from the quadratic relation.
pub fn gen_inverse(alg: &Algebra, node: usize) -> HeckeElement {
    let va = alg.v_node(node);
    let mut out = HeckeElement::basis(alg.weyl.nodes[node].refl.clone(), alg.nvars());
    out.add_term(alg.weyl.identity(), va.sub(&va.inv_monomial()));
    out
}

/// `h * H_a^{-1} = h * H_a + (v^a - v^{-a}) h`.
pub fn mult_gen_inv_right(alg: &Algebra, h: &HeckeElement, node: usize) -> HeckeElement {
    let va = alg.v_node(node);
    let corr = va.sub(&va.inv_monomial());
    mult_by_gen(alg, h, node, Side::Right).add(&h.scale(&corr))
}

/// Right multiplication by a basis element of length zero.
fn mult_omega_right(alg: &Algebra, h: &HeckeElement, omega: &AffineWeylElement) -> HeckeElement {
    let mut out = HeckeElement::zero();
    for (u, c) in h.terms() {
        out.add_term(alg.weyl.mul(u, omega), c.clone());
    }
    out
}

/// General product: factor each basis element of the right operand into
/// its residue and letters and multiply through.
pub fn mult(alg: &Algebra, h1: &HeckeElement, h2: &HeckeElement) -> HeckeElement {
    let mut out = HeckeElement::zero();
    for (w, c) in h2.terms() {
        let rw = alg.weyl.reduced_word(w);
        let mut acc = mult_omega_right(alg, h1, &rw.residue);
        for &a in &rw.letters {
            acc = mult_by_gen(alg, &acc, a, Side::Right);
        }
        out = out.add(&acc.scale(c));
    }
    out
}

/// `H_w^{-1}`, via the reversed word of generator inverses.
pub fn basis_inverse(alg: &Algebra, w: &AffineWeylElement) -> HeckeElement {
    let rw = alg.weyl.reduced_word(w);
    let mut acc = HeckeElement::basis(alg.weyl.identity(), alg.nvars());
    for &a in rw.letters.iter().rev() {
        acc = mult_gen_inv_right(alg, &acc, a);
    }
    mult_omega_right(alg, &acc, &alg.weyl.inv(&rw.residue))
}

/// The dual of a basis element, `d(H_w) = H_{w^{-1}}^{-1}`, memoized.
pub fn d_basis(alg: &Algebra, w: &AffineWeylElement) -> HeckeElement {
    if let Some(h) = alg.caches.d_basis.lock().unwrap().get(w) {
        return h.clone();
    }
    // H_{w^{-1}}^{-1} = H_omega * H_{s_1}^{-1} ... H_{s_m}^{-1} in word order.
    let rw = alg.weyl.reduced_word(w);
    let mut acc = HeckeElement::basis(rw.residue.clone(), alg.nvars());
    for &a in &rw.letters {
        acc = mult_gen_inv_right(alg, &acc, a);
    }
    alg.caches.put(&alg.caches.d_basis, w.clone(), acc.clone());
    acc
}

/// The bar duality `d`: semilinear over the bar involution of the
/// coefficients, `H_w -> H_{w^{-1}}^{-1}`.
pub fn dual(alg: &Algebra, h: &HeckeElement) -> HeckeElement {
    let mut out = HeckeElement::zero();
    for (w, c) in h.terms() {
        out = out.add(&d_basis(alg, w).scale(&c.bar()));
    }
    out
}

/// The commuting translation element `Y_tau = H_{t_{tau+mu}} H_{t_mu}^{-1}`
/// with `mu` the smallest multiple of `2 rho^v` making `tau + mu` dominant.
pub fn y_tau(alg: &Algebra, tau: &[i64]) -> HeckeElement {
    if let Some(h) = alg.caches.y_tau.lock().unwrap().get(tau) {
        return h.clone();
    }
    let sys = &alg.weyl.sys;
    let mut k: i64 = 0;
    for i in 0..sys.simples {
        let a = crate::intlin::dot(sys.simple_root(i), tau);
        let b = crate::intlin::dot(sys.simple_root(i), &sys.two_rho_check);
        debug_assert!(b > 0);
        if a < 0 {
            k = k.max((-a + b - 1) / b);
        }
    }
    let mu: Coweight = sys.two_rho_check.iter().map(|x| x * k).collect();
    let lam: Coweight = tau.iter().zip(&mu).map(|(a, b)| a + b).collect();
    let mut acc = HeckeElement::basis(alg.weyl.translation(&lam), alg.nvars());
    if k > 0 {
        let rw = alg.weyl.reduced_word(&alg.weyl.translation(&mu));
        for &a in rw.letters.iter().rev() {
            acc = mult_gen_inv_right(alg, &acc, a);
        }
        acc = mult_omega_right(alg, &acc, &alg.weyl.inv(&rw.residue));
    }
    alg.caches.put(&alg.caches.y_tau, tau.to_vec(), acc.clone());
    acc
}

/// The linear extension of `e^tau -> Y_tau`.
pub fn phi(alg: &Algebra, xi: &ExpPoly) -> HeckeElement {
    let mut out = HeckeElement::zero();
    for (tau, c) in xi.terms() {
        out = out.add(&y_tau(alg, tau).scale(c));
    }
    out
}

/// The chamber-twisted version `Phi_w(xi) = H_w Phi(w^{-1} xi) H_w^{-1}`.
pub fn phi_w(alg: &Algebra, xi: &ExpPoly, w: FinEl) -> HeckeElement {
    let wi = alg.weyl.wf.inv(w);
    let twisted = xi.apply_fin(alg, wi);
    let inner = phi(alg, &twisted);
    let mut acc = mult(alg, &HeckeElement::basis(alg.weyl.from_fin(w), alg.nvars()), &inner);
    for &a in alg.weyl.wf.word[w.0 as usize].iter().rev() {
        acc = mult_gen_inv_right(alg, &acc, a as usize);
    }
    acc
}

/// `theta = sum over the finite group of v^{w w_0} H_w`.
pub fn theta(alg: &Algebra) -> HeckeElement {
    let wf = &alg.weyl.wf;
    let mut out = HeckeElement::zero();
    for u in wf.elements() {
        let m = alg.v_of_fin(wf.mul(u, wf.longest)).clone();
        out.add_term(alg.weyl.from_fin(u), m);
    }
    out
}

/// `P = v^{-w_0} sum (v^w)^2`, the scalar with `theta^2 = P theta`.
pub fn p_scalar(alg: &Algebra) -> LaurentPoly {
    let wf = &alg.weyl.wf;
    let mut sum = LaurentPoly::zero();
    for u in wf.elements() {
        let v = alg.v_of_fin(u);
        sum = sum.add(&v.mul(v));
    }
    sum.mul(&alg.v_of_fin(wf.longest).inv_monomial())
}

/// Canonical serialization: one `coeff  @  element` line per term, sorted
/// by (length, element text).
pub fn display(alg: &Algebra, h: &HeckeElement) -> String {
    let mut rows: Vec<(u64, String, String)> = h
        .terms()
        .map(|(w, c)| {
            (
                alg.weyl.length(w),
                alg.weyl.element_text(w),
                c.display(&alg.params.symbols),
            )
        })
        .collect();
    rows.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    rows.into_iter()
        .map(|(_, w, c)| format!("{}  @  {}", c, w))
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Specialization;
    use crate::data;

    fn gl2() -> Algebra {
        Algebra::new(data::gl2(), Specialization::Generic).unwrap()
    }

    fn sp2() -> Algebra {
        Algebra::new(data::sp2(), Specialization::Generic).unwrap()
    }

    fn basis(alg: &Algebra, text: &str) -> HeckeElement {
        HeckeElement::basis(alg.weyl.parse_element(text).unwrap(), alg.nvars())
    }

    #[test]
    fn quadratic_relation() {
        let alg = gl2();
        let he = basis(&alg, "id");
        let hs = mult_by_gen(&alg, &he, 0, Side::Right);
        assert_eq!(hs, basis(&alg, "s1"));

        // H_s H_s = H_e + (v^{-s} - v^s) H_s
        let hss = mult_by_gen(&alg, &hs, 0, Side::Right);
        let v = alg.v_node(0);
        let mut expect = basis(&alg, "id");
        expect = expect.add(&basis(&alg, "s1").scale(&v.inv_monomial().sub(&v)));
        assert_eq!(hss, expect);

        // (H_s - v^{-s})(H_s + v^s) = 0
        let x = hs.sub(&he.scale(&v.inv_monomial()));
        let prod = mult(&alg, &x, &hs.add(&he.scale(&v)));
        assert!(prod.is_zero());
    }

    #[test]
    fn rank_one_eigenvector() {
        // (H_s + v^s H_e) H_s = v^{-s} (H_s + v^s H_e)
        let alg = gl2();
        let v = alg.v_node(0);
        let th = basis(&alg, "s1").add(&basis(&alg, "id").scale(&v));
        let prod = mult_by_gen(&alg, &th, 0, Side::Right);
        assert_eq!(prod, th.scale(&v.inv_monomial()));
    }

    #[test]
    fn braid_words_agree() {
        let alg = Algebra::new(data::sp4(), Specialization::Generic).unwrap();
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for e in alg.weyl.elements_up_to(4) {
            let expect = HeckeElement::basis(e.clone(), alg.nvars());
            for _ in 0..2 {
                let rw = alg.weyl.reduced_word_with(&e, |_| rng.gen::<usize>());
                let mut acc = HeckeElement::basis(rw.residue.clone(), alg.nvars());
                for &a in &rw.letters {
                    acc = mult_by_gen(&alg, &acc, a, Side::Right);
                }
                assert_eq!(acc, expect);
            }
        }
    }

    #[test]
    fn translations_multiply() {
        let alg = gl2();
        let a = basis(&alg, "t[1,0]");
        let b = basis(&alg, "t[2,1]");
        assert_eq!(mult(&alg, &a, &b), basis(&alg, "t[3,1]"));
        // identity and length-zero inverses
        let h = basis(&alg, "t[1,0]*s1");
        assert_eq!(mult(&alg, &h, &basis(&alg, "id")), h);
        let omega = alg.weyl.parse_element("t[1,0]*s1").unwrap();
        assert_eq!(alg.weyl.length(&omega), 0);
        let prod = mult(
            &alg,
            &HeckeElement::basis(omega.clone(), alg.nvars()),
            &HeckeElement::basis(alg.weyl.inv(&omega), alg.nvars()),
        );
        assert_eq!(prod, basis(&alg, "id"));
    }

    #[test]
    fn mult_is_associative_on_samples() {
        let alg = sp2();
        let xs = [basis(&alg, "s1"), basis(&alg, "a1"), basis(&alg, "t[1]")];
        for a in &xs {
            for b in &xs {
                for c in &xs {
                    let left = mult(&alg, &mult(&alg, a, b), c);
                    let right = mult(&alg, a, &mult(&alg, b, c));
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn basis_inverse_works() {
        let alg = sp2();
        for text in ["id", "s1", "a1", "t[1]", "t[-1]"] {
            let w = alg.weyl.parse_element(text).unwrap();
            let inv = basis_inverse(&alg, &w);
            let prod = mult(&alg, &HeckeElement::basis(w, alg.nvars()), &inv);
            assert_eq!(prod, basis(&alg, "id"), "inverse of {}", text);
        }
    }

    #[test]
    fn gen_inverse_satisfies_the_rephrased_quadratic() {
        // H_s + v^s = H_s^{-1} + v^{-s}
        for alg in [gl2(), sp2()] {
            for node in 0..alg.weyl.nodes.len() {
                let v = alg.v_node(node);
                let hs = HeckeElement::basis(alg.weyl.nodes[node].refl.clone(), alg.nvars());
                let lhs = hs.add(&basis(&alg, "id").scale(&v));
                let rhs = gen_inverse(&alg, node)
                    .add(&basis(&alg, "id").scale(&v.inv_monomial()));
                assert_eq!(lhs, rhs);
                assert_eq!(
                    mult(&alg, &hs, &gen_inverse(&alg, node)),
                    basis(&alg, "id")
                );
            }
        }
    }

    #[test]
    fn dual_examples() {
        let alg = gl2();
        assert_eq!(dual(&alg, &basis(&alg, "id")), basis(&alg, "id"));

        // d(H_s) = H_s + (v^s - v^{-s}) H_e
        let v = alg.v_node(0);
        let expect = basis(&alg, "s1").add(&basis(&alg, "id").scale(&v.sub(&v.inv_monomial())));
        assert_eq!(dual(&alg, &basis(&alg, "s1")), expect);

        // theta in rank one is self-dual
        let th = basis(&alg, "s1").add(&basis(&alg, "id").scale(&v));
        assert_eq!(dual(&alg, &th), th);
    }

    #[test]
    fn dual_is_an_involution_and_multiplicative() {
        let alg = sp2();
        let xs = [
            basis(&alg, "s1"),
            basis(&alg, "a1").scale(&alg.v_node(1)),
            basis(&alg, "t[1]").add(&basis(&alg, "id")),
        ];
        for x in &xs {
            assert_eq!(dual(&alg, &dual(&alg, x)), *x);
            for y in &xs {
                assert_eq!(
                    dual(&alg, &mult(&alg, x, y)),
                    mult(&alg, &dual(&alg, x), &dual(&alg, y))
                );
            }
        }
    }

    #[test]
    fn y_examples() {
        let alg = gl2();
        assert_eq!(y_tau(&alg, &[0, 0]), basis(&alg, "id"));
        assert_eq!(y_tau(&alg, &[1, 0]), basis(&alg, "t[1,0]"));

        // Y_{(0,1)} = H_{t_{(1,1)}} H_{t_{(1,0)}}^{-1}
        let expect = mult(
            &alg,
            &basis(&alg, "t[1,1]"),
            &basis_inverse(&alg, &alg.weyl.parse_element("t[1,0]").unwrap()),
        );
        assert_eq!(y_tau(&alg, &[0, 1]), expect);
    }

    #[test]
    fn y_is_multiplicative_and_commuting() {
        let alg = gl2();
        let taus: Vec<Vec<i64>> = vec![vec![1, 0], vec![0, 1], vec![-1, 1], vec![1, 1]];
        for a in &taus {
            for b in &taus {
                let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                let ya = y_tau(&alg, a);
                let yb = y_tau(&alg, b);
                assert_eq!(mult(&alg, &ya, &yb), y_tau(&alg, &sum));
                assert_eq!(mult(&alg, &ya, &yb), mult(&alg, &yb, &ya));
            }
        }
    }

    #[test]
    fn y_is_independent_of_mu() {
        let alg = sp2();
        for tau in [[-2i64], [-1], [0], [1], [2]] {
            let y = y_tau(&alg, &tau);
            // alternative mu: one extra step of 2rho^v
            let two_rho_check = alg.weyl.sys.two_rho_check.clone();
            let mut k = 0i64;
            while !alg.weyl.sys.is_dominant(
                &tau.iter()
                    .zip(&two_rho_check)
                    .map(|(a, b)| a + b * k)
                    .collect::<Vec<_>>(),
            ) {
                k += 1;
            }
            k += 1; // deliberately larger
            let mu: Vec<i64> = two_rho_check.iter().map(|x| x * k).collect();
            let lam: Vec<i64> = tau.iter().zip(&mu).map(|(a, b)| a + b).collect();
            let alt = mult(
                &alg,
                &HeckeElement::basis(alg.weyl.translation(&lam), alg.nvars()),
                &basis_inverse(&alg, &alg.weyl.translation(&mu)),
            );
            assert_eq!(y, alt, "tau = {:?}", tau);
        }
    }

    #[test]
    fn theta_and_p_rank_one() {
        let alg = gl2();
        let v = alg.v_node(0);
        let th = theta(&alg);
        assert_eq!(th, basis(&alg, "s1").add(&basis(&alg, "id").scale(&v)));
        let p = p_scalar(&alg);
        assert_eq!(p, v.add(&v.inv_monomial()));
    }

    #[test]
    fn theta_eigen_and_square() {
        for datum in [data::gl2(), data::sp2(), data::sp4()] {
            let alg = Algebra::new(datum, Specialization::Generic).unwrap();
            let th = theta(&alg);
            for i in 0..alg.simples() {
                let vi_inv = alg.v_node(i).inv_monomial();
                assert_eq!(mult_by_gen(&alg, &th, i, Side::Right), th.scale(&vi_inv));
                assert_eq!(mult_by_gen(&alg, &th, i, Side::Left), th.scale(&vi_inv));
            }
            let p = p_scalar(&alg);
            assert_eq!(mult(&alg, &th, &th), th.scale(&p));
        }
    }

    #[test]
    fn p_scalar_gl3() {
        let alg = Algebra::new(data::gl3(), Specialization::Generic).unwrap();
        // lengths 0,1,1,2,2,3 in the symmetric group on three letters
        let v = |k: i64| LaurentPoly::monomial(vec![k], 1);
        let expect = v(-3).add(&v(-1).scale(2)).add(&v(1).scale(2)).add(&v(3));
        assert_eq!(p_scalar(&alg), expect);
    }

    #[test]
    fn phi_w_identity_is_phi() {
        let alg = gl2();
        let xi = ExpPoly::monomial(vec![0, 1], alg.one());
        assert_eq!(phi_w(&alg, &xi, FinEl::IDENTITY), phi(&alg, &xi));
    }

    #[test]
    fn phi_w_substitution_example() {
        // Phi_s(e^{(0,1)}) = H_s H_{t_{(1,0)}} H_s^{-1}
        let alg = gl2();
        let xi = ExpPoly::monomial(vec![0, 1], alg.one());
        let s = alg.weyl.wf.gen(0);
        let lhs = phi_w(&alg, &xi, s);
        let hs = basis(&alg, "s1");
        let rhs = mult(
            &alg,
            &mult(&alg, &hs, &basis(&alg, "t[1,0]")),
            &basis_inverse(&alg, &alg.weyl.parse_element("s1").unwrap()),
        );
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn phi_and_phi_w_agree_on_invariants() {
        let alg = gl2();
        // e^{(1,0)} + e^{(0,1)} is invariant
        let xi = ExpPoly::monomial(vec![1, 0], alg.one())
            .add(&ExpPoly::monomial(vec![0, 1], alg.one()));
        let s = alg.weyl.wf.gen(0);
        assert_eq!(phi_w(&alg, &xi, s), phi(&alg, &xi));
    }

    #[test]
    fn center_and_selfduality_of_invariant_images() {
        let alg = sp2();
        let xi = ExpPoly::monomial(vec![1], alg.one()).add(&ExpPoly::monomial(vec![-1], alg.one()));
        let h = phi(&alg, &xi);
        for node in 0..alg.weyl.nodes.len() {
            assert_eq!(
                mult_by_gen(&alg, &h, node, Side::Left),
                mult_by_gen(&alg, &h, node, Side::Right)
            );
        }
        assert_eq!(dual(&alg, &h), h);
        // d(Phi(xi)) = Phi_{w_0}(xi) for arbitrary xi
        let any = ExpPoly::monomial(vec![1], alg.one());
        assert_eq!(
            dual(&alg, &phi(&alg, &any)),
            phi_w(&alg, &any, alg.weyl.wf.longest)
        );
    }

    #[test]
    fn serialization_is_sorted() {
        let alg = gl2();
        let th = theta(&alg);
        let text = display(&alg, &th);
        assert_eq!(text, "v  @  id\n1  @  s1");
    }
}
