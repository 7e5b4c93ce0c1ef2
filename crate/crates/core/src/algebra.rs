//! The assembled setting: a validated root datum, its extended affine Weyl
//! group, the parameter classes of the affine diagram, a parameter
//! specification, and the modified root system for the special simple
//! roots. All higher modules operate relative to an [`Algebra`].

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use crate::affine_weyl::{AffineWeylElement, FinEl, WeylData};
use crate::coeff_ring::{ExpVec, LaurentPoly, LppCone, ParamSpec};
use crate::hecke::HeckeElement;
use crate::root_datum::{detect_special, Coweight, RootDatum, TildeSystem};
use crate::Result;

/// Choice of coefficient ring.
#[derive(Debug, Clone, Default)]
pub enum Specialization {
    /// One variable per distinct class symbol.
    #[default]
    Generic,
    /// Single variable `v`; each class symbol becomes `v^{n}`.
    Single(BTreeMap<String, i64>),
}

pub(crate) struct Caches {
    /// Entry cap per memo table, configurable through `HECKE_CACHE_BOUND`.
    pub(crate) bound: usize,
    pub(crate) y_tau: Mutex<HashMap<Coweight, HeckeElement>>,
    pub(crate) d_basis: Mutex<HashMap<AffineWeylElement, HeckeElement>>,
    pub(crate) hall_littlewood: Mutex<HashMap<Coweight, crate::poly_rep::ExpPoly>>,
    pub(crate) n_lambda: Mutex<HashMap<Coweight, HeckeElement>>,
    pub(crate) kl_element: Mutex<HashMap<Coweight, HeckeElement>>,
    pub(crate) char_table: Mutex<HashMap<Coweight, std::collections::BTreeMap<Coweight, i64>>>,
}

impl Default for Caches {
    fn default() -> Caches {
        let bound = std::env::var("HECKE_CACHE_BOUND")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(1_000_000);
        Caches {
            bound,
            y_tau: Mutex::default(),
            d_basis: Mutex::default(),
            hall_littlewood: Mutex::default(),
            n_lambda: Mutex::default(),
            kl_element: Mutex::default(),
            char_table: Mutex::default(),
        }
    }
}

impl Caches {
    /// Insert unless the table is full; the caches are accelerators, so
    /// dropping entries is always safe.
    pub(crate) fn put<K: std::hash::Hash + Eq, V>(
        &self,
        table: &Mutex<HashMap<K, V>>,
        key: K,
        value: V,
    ) {
        let mut t = table.lock().unwrap();
        if t.len() < self.bound {
            t.insert(key, value);
        }
    }
}

/// An extended affine Hecke algebra with chosen parameters.
pub struct Algebra {
    pub datum: RootDatum,
    pub weyl: WeylData,
    /// Parameter class of each affine-diagram node.
    pub node_class: Vec<usize>,
    /// User label of each class.
    pub class_labels: Vec<String>,
    pub params: ParamSpec,
    pub tilde: TildeSystem,
    /// `v^w` for the finite Weyl group, indexed like the enumeration.
    fin_v: Vec<LaurentPoly>,
    pub(crate) caches: Caches,
}

impl Algebra {
    pub fn new(datum: RootDatum, spec: Specialization) -> Result<Algebra> {
        let weyl = WeylData::new(&datum)?;
        let node_class = weyl.parameter_classes()?;
        let n_classes = node_class.iter().max().map_or(0, |m| m + 1);
        let class_labels: Vec<String> = (0..n_classes)
            .map(|c| {
                let i = node_class.iter().position(|&x| x == c).expect("nonempty class");
                weyl.nodes[i].label.clone()
            })
            .collect();
        let params = match spec {
            Specialization::Generic => ParamSpec::generic(&class_labels),
            Specialization::Single(map) => ParamSpec::specialize(&class_labels, &map)?,
        };
        let tilde = detect_special(&weyl.sys, &node_class, &params.class_exp)?;

        let mut fin_v = vec![LaurentPoly::one(params.nvars()); weyl.wf.size()];
        for e in weyl.wf.elements() {
            let mut m = LaurentPoly::one(params.nvars());
            for &i in &weyl.wf.word[e.0 as usize] {
                m = m.mul(&params.v_class(node_class[i as usize]));
            }
            fin_v[e.0 as usize] = m;
        }

        Ok(Algebra {
            datum,
            weyl,
            node_class,
            class_labels,
            params,
            tilde,
            fin_v,
            caches: Caches::default(),
        })
    }

    pub fn rank(&self) -> usize {
        self.weyl.rank()
    }

    pub fn simples(&self) -> usize {
        self.weyl.sys.simples
    }

    pub fn nvars(&self) -> usize {
        self.params.nvars()
    }

    pub fn one(&self) -> LaurentPoly {
        LaurentPoly::one(self.nvars())
    }

    /// `v^{s}` of an affine-diagram node.
    pub fn v_node(&self, node: usize) -> LaurentPoly {
        self.params.v_class(self.node_class[node])
    }

    /// `v_0^{s}` of a finite simple root: the affine-node parameter of its
    /// component when the root is special, its own parameter otherwise.
    pub fn v0_simple(&self, i: usize) -> LaurentPoly {
        self.params.v_class(self.tilde.v0_class[i])
    }

    /// `v^w` for a finite Weyl element.
    pub fn v_of_fin(&self, e: FinEl) -> &LaurentPoly {
        &self.fin_v[e.0 as usize]
    }

    /// `v^w` for any element, via a reduced word; the residue contributes 1.
    pub fn v_of(&self, w: &AffineWeylElement) -> LaurentPoly {
        let rw = self.weyl.reduced_word(w);
        let mut m = self.one();
        for &i in &rw.letters {
            m = m.mul(&self.v_node(i));
        }
        m
    }

    /// `v^{-w} = (v^w)^{-1}`.
    pub fn v_of_inv(&self, w: &AffineWeylElement) -> LaurentPoly {
        self.v_of(w).inv_monomial()
    }

    /// The positive part `L_++`: in specialized mode `v Z[v]`, in generic
    /// mode the non-unital subring generated by the `v^s` for finite `s`
    /// and `v^s v_0^{+-s}` for special ones.
    pub fn lpp_cone(&self) -> LppCone {
        let mut gens: Vec<ExpVec> = Vec::new();
        let mut push = |g: ExpVec| {
            if !gens.contains(&g) {
                gens.push(g);
            }
        };
        for i in 0..self.simples() {
            let vs = &self.params.class_exp[self.node_class[i]];
            push(vs.clone());
            if self.tilde.special[i] {
                let v0 = &self.params.class_exp[self.tilde.v0_class[i]];
                push(vs.iter().zip(v0).map(|(a, b)| a + b).collect());
                push(vs.iter().zip(v0).map(|(a, b)| a - b).collect());
            }
        }
        if self.params.specialized {
            LppCone { gens, single_std: true, budget: 10_000 }
        } else {
            LppCone::generated(gens)
        }
    }

    /// Names of the special simple roots, for reports.
    pub fn special_roots(&self) -> Vec<usize> {
        (0..self.simples()).filter(|&i| self.tilde.special[i]).collect()
    }
}
