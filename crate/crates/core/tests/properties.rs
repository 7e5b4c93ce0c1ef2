//! Cross-module properties that tie the group combinatorics to the
//! algebra structure, plus parameter-specialization behavior on the
//! higher-rank data.

use std::collections::BTreeMap;

use hecke::algebra::{Algebra, Specialization};
use hecke::coeff_ring::{phi_maps, Tri};
use hecke::data;
use hecke::hecke::{self as hk, HeckeElement, Side};
use hecke::poly_rep;
use hecke::{oracles, spherical_kl};

#[test]
fn length_additivity_matches_basis_multiplicativity() {
    // l(uv) <= l(u) + l(v), with equality exactly when the basis elements
    // multiply without quadratic corrections
    for datum in [data::gl2(), data::sp2(), data::sp4()] {
        let alg = Algebra::new(datum, Specialization::Generic).unwrap();
        let elems = alg.weyl.elements_up_to(3);
        for u in elems.iter().take(20) {
            for v in elems.iter().take(20) {
                let uv = alg.weyl.mul(u, v);
                let (lu, lv, luv) =
                    (alg.weyl.length(u), alg.weyl.length(v), alg.weyl.length(&uv));
                assert!(luv <= lu + lv);
                let prod = hk::mult(
                    &alg,
                    &HeckeElement::basis(u.clone(), alg.nvars()),
                    &HeckeElement::basis(v.clone(), alg.nvars()),
                );
                let additive = luv == lu + lv;
                let clean = prod == HeckeElement::basis(uv.clone(), alg.nvars());
                assert_eq!(additive, clean);
            }
        }
    }
}

#[test]
fn satake_images_live_in_the_spherical_subalgebra() {
    for (_, datum) in data::all() {
        let alg = Algebra::new(datum, Specialization::Generic).unwrap();
        for lam in alg.weyl.dominant_coweights(6) {
            let xi = poly_rep::schur(&alg, &lam).unwrap();
            let h = spherical_kl::satake(&alg, &xi).unwrap().h_image;
            for i in 0..alg.simples() {
                let vi = alg.v_node(i).inv_monomial();
                assert_eq!(hk::mult_by_gen(&alg, &h, i, Side::Left), h.scale(&vi));
                assert_eq!(hk::mult_by_gen(&alg, &h, i, Side::Right), h.scale(&vi));
            }
        }
    }
}

#[test]
fn satake_is_a_ring_map_for_the_star_product() {
    for datum in [data::gl2(), data::sp2(), data::sp4()] {
        let alg = Algebra::new(datum, Specialization::Generic).unwrap();
        let grid = alg.weyl.dominant_coweights(6);
        for a in grid.iter().take(3) {
            for b in grid.iter().take(3) {
                let xa = poly_rep::schur(&alg, a).unwrap();
                let xb = poly_rep::schur(&alg, b).unwrap();
                let lhs = spherical_kl::satake(&alg, &xa.mul(&xb)).unwrap();
                let rhs = spherical_kl::star_product(
                    &alg,
                    &spherical_kl::satake(&alg, &xa).unwrap(),
                    &spherical_kl::satake(&alg, &xb).unwrap(),
                )
                .unwrap();
                assert_eq!(lhs, rhs, "lambda {:?} mu {:?}", a, b);
            }
        }
    }
}

#[test]
fn sp4_specialized_certificates() {
    // distinct exponents keeping the long root special, hypotheses met
    let mut map = BTreeMap::new();
    map.insert("v".to_string(), 1i64);
    map.insert("w".to_string(), 2i64);
    map.insert("w0".to_string(), 1i64);
    let alg = Algebra::new(data::sp4(), Specialization::Single(map)).unwrap();
    assert_eq!(alg.special_roots(), vec![1]);
    assert!(alg.lpp_cone().generators_admissible());
    for lam in alg.weyl.dominant_coweights(8) {
        let cert = spherical_kl::kl_spherical(&alg, &lam).unwrap();
        assert!(cert.valid(), "lambda {:?}: {:?}", lam, cert.offending);
    }

    // |n_{w0}| >= n_w breaks the hypothesis and the certificate reports it
    let mut map = BTreeMap::new();
    map.insert("v".to_string(), 1i64);
    map.insert("w".to_string(), 1i64);
    map.insert("w0".to_string(), 3i64);
    let alg = Algebra::new(data::sp4(), Specialization::Single(map)).unwrap();
    assert!(!alg.lpp_cone().generators_admissible());
    let cert = spherical_kl::kl_spherical(&alg, &[1, 1]).unwrap();
    assert!(!cert.positivity_ok);
    assert!(!cert.offending.is_empty());
}

#[test]
fn phi_reports_on_bundled_data() {
    for (name, datum) in data::all() {
        let alg = Algebra::new(datum, Specialization::Generic).unwrap();
        let rep = phi_maps(&alg.lpp_cone());
        assert_eq!(rep.injective, Tri::Holds, "{}", name);
        assert_eq!(rep.surjective, Tri::NotChecked, "{}", name);
    }
    // the standard specialization is certified bijective
    let mut map = BTreeMap::new();
    map.insert("v".to_string(), 1i64);
    let alg = Algebra::new(data::gl2(), Specialization::Single(map)).unwrap();
    let rep = phi_maps(&alg.lpp_cone());
    assert_eq!((rep.injective, rep.surjective), (Tri::Holds, Tri::Holds));
}

#[test]
fn tensor_agreement_on_nonsimply_laced_data() {
    for datum in [data::sp4(), data::g2()] {
        let alg = Algebra::new(datum, Specialization::Generic).unwrap();
        // smallest nontrivial dominant class representatives
        let grid = alg.weyl.dominant_coweights(12);
        for lam in grid.iter().take(3) {
            let main = spherical_kl::tensor_multiplicities(&alg, lam, lam).unwrap();
            let oracle = oracles::tensor_decompose(&alg, lam, lam).unwrap();
            assert_eq!(main, oracle, "lambda {:?}", lam);
        }
    }
}

#[test]
fn classical_kostka_foulkes_expansions() {
    // the textbook rank-two Kostka-Foulkes inversions at t = v^2:
    //   P_{(2,1,0)} = s_{(2,1,0)} - (t + t^2) s_{(1,1,1)}
    //   P_{(3,0,0)} = s_{(3,0,0)} - t s_{(2,1,0)} + t^2 s_{(1,1,1)}
    let alg = Algebra::new(data::gl3(), Specialization::Generic).unwrap();
    let t = |k: i64, c: i64| {
        let mut p = hecke::coeff_ring::LaurentPoly::zero();
        p.add_term(vec![2 * k], c);
        p
    };

    let p210 = poly_rep::hall_littlewood(&alg, &[2, 1, 0]).unwrap();
    let exp = poly_rep::expand_in_schur(&alg, &p210).unwrap();
    assert_eq!(exp.len(), 2);
    assert!(exp[&vec![2, 1, 0]].is_one());
    assert_eq!(exp[&vec![1, 1, 1]], t(1, -1).add(&t(2, -1)));

    let p300 = poly_rep::hall_littlewood(&alg, &[3, 0, 0]).unwrap();
    let exp = poly_rep::expand_in_schur(&alg, &p300).unwrap();
    assert_eq!(exp.len(), 3);
    assert!(exp[&vec![3, 0, 0]].is_one());
    assert_eq!(exp[&vec![2, 1, 0]], t(1, -1));
    assert_eq!(exp[&vec![1, 1, 1]], t(2, 1));
}

#[test]
fn cache_bound_env_var_is_honored() {
    // a tiny cache bound must not change any result
    std::env::set_var("HECKE_CACHE_BOUND", "2");
    let alg = Algebra::new(data::gl2(), Specialization::Generic).unwrap();
    std::env::remove_var("HECKE_CACHE_BOUND");
    let unbounded = Algebra::new(data::gl2(), Specialization::Generic).unwrap();
    for lam in alg.weyl.dominant_coweights(8) {
        let a = spherical_kl::kl_spherical(&alg, &lam).unwrap();
        let b = spherical_kl::kl_spherical(&unbounded, &lam).unwrap();
        assert_eq!(a.element, b.element);
        assert_eq!(a.valid(), b.valid());
    }
}
