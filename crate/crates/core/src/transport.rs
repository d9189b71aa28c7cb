//! Transport of action structures through an equivalence of categories.
//!
//! An [`EquivalenceDatum`] is a quasi-inverse pair `F : C -> D`,
//! `G : D -> C` together with natural isomorphisms `eps_M : GF(M) -> M`
//! and `eta_N : FG(N) -> N`, all given as explicit closures on concrete
//! modules. Given an action of a monoidal category on `C`, the
//! transported action on `D` is
//!
//! ```text
//!   X . N := F(X . G(N))
//! ```
//!
//! with associativity, right, and middle constraints assembled from the
//! source constraints and `eps` alone:
//!
//! ```text
//!   n_{X,Y,N}  = F( (id_X . eps^-1_{Y.GN})  o  m_{X,Y,GN} )
//!   nr_{N,X,Y} = F( (eps^-1_{GN.X} . id_Y)  o  mr_{GN,X,Y} )
//!   p_{X,N,Z}  = F( (id_X . eps^-1_{GN.Z})  o  b_{X,GN,Z}  o  (eps_{X.GN} . id_Z) )
//! ```
//!
//! `eta` enters only through the transported *unit* constraints
//! (`l'_N = eta_N o F(l_{GN})` and its right analogue); the associativity
//! data above never consumes it, and a test pins that down by flipping
//! the sign of `eta` and comparing matrices.
//!
//! The functors themselves become module functors between the source and
//! transported structures, with structure morphisms
//!
//! ```text
//!   s_{X,M}  = F(id_X . eps^-1_M)     (for F, left)     t_{X,N}  = eps_{X.GN}   (for G, left)
//!   sr_{M,X} = F(eps^-1_M . id_X)     (for F, right)    tr_{N,X} = eps_{GN.X}   (for G, right)
//! ```
//!
//! Object-level applications of `F`, `G`, `eps`, and `eta` are memoized
//! per datum, keyed by module content: repeated coherence checks hit the
//! same objects over and over, and content keying also guarantees that
//! content-equal inputs share one output `Arc`.

use crate::error::{Error, Result};
use crate::modcat::{ActMor, ActObj, BimoduleAction, BimoduleFunctor, Constraint1, Constraint2,
    Constraint3, LeftAction, ModuleFunctor, MorF, ObjF, RightAction, RightModuleFunctor};
use crate::module::{Module, ModuleMorphism};
use crate::scalar::Scalar;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

#[derive(Default)]
struct Caches {
    forward: HashMap<Arc<Module>, Arc<Module>>,
    backward: HashMap<Arc<Module>, Arc<Module>>,
    eps: HashMap<Arc<Module>, ModuleMorphism>,
    eps_inv: HashMap<Arc<Module>, ModuleMorphism>,
    eta: HashMap<Arc<Module>, ModuleMorphism>,
}

pub struct EquivalenceDatum {
    forward_obj: ObjF,
    forward_mor: MorF,
    backward_obj: ObjF,
    backward_mor: MorF,
    source_iso: Constraint1,
    target_iso: Constraint1,
    caches: Mutex<Caches>,
}

impl EquivalenceDatum {
    pub fn new(
        forward_obj: ObjF,
        forward_mor: MorF,
        backward_obj: ObjF,
        backward_mor: MorF,
        source_iso: Constraint1,
        target_iso: Constraint1,
    ) -> Arc<EquivalenceDatum> {
        Arc::new(EquivalenceDatum {
            forward_obj,
            forward_mor,
            backward_obj,
            backward_mor,
            source_iso,
            target_iso,
            caches: Mutex::new(Caches::default()),
        })
    }

    /// The identity self-equivalence of any category of modules.
    pub fn identity() -> Arc<EquivalenceDatum> {
        let id_obj: ObjF = Arc::new(|m: &Arc<Module>| Ok(m.clone()));
        let id_mor: MorF = Arc::new(|f: &ModuleMorphism| Ok(f.clone()));
        let id_iso: Constraint1 = Arc::new(|m: &Arc<Module>| Ok(ModuleMorphism::identity(m)));
        EquivalenceDatum::new(id_obj.clone(), id_mor.clone(), id_obj, id_mor, id_iso.clone(), id_iso)
    }

    /// Identity functors with the round-trip isomorphisms rescaled:
    /// `eps = counit * id`, `eta = unit * id`. With equal nonzero scales
    /// every transported diagram commutes; with unequal scales exactly
    /// the unit-constraint diagrams break, by the ratio — the standard
    /// mutation for checking that a verifier is actually sensitive.
    pub fn rescaled_identity(counit: Scalar, unit: Scalar) -> Arc<EquivalenceDatum> {
        let id_obj: ObjF = Arc::new(|m: &Arc<Module>| Ok(m.clone()));
        let id_mor: MorF = Arc::new(|f: &ModuleMorphism| Ok(f.clone()));
        let eps: Constraint1 = Arc::new(move |m: &Arc<Module>| {
            Ok(ModuleMorphism::identity(m).scale(&counit))
        });
        let eta: Constraint1 = Arc::new(move |m: &Arc<Module>| {
            Ok(ModuleMorphism::identity(m).scale(&unit))
        });
        EquivalenceDatum::new(id_obj.clone(), id_mor.clone(), id_obj, id_mor, eps, eta)
    }

    /// `F` on objects, memoized.
    pub fn forward(&self, m: &Arc<Module>) -> Result<Arc<Module>> {
        if let Some(hit) = self.caches.lock().unwrap().forward.get(m) {
            return Ok(hit.clone());
        }
        let value = (self.forward_obj)(m)?;
        let mut caches = self.caches.lock().unwrap();
        Ok(caches.forward.entry(m.clone()).or_insert(value).clone())
    }

    /// `G` on objects, memoized.
    pub fn backward(&self, n: &Arc<Module>) -> Result<Arc<Module>> {
        if let Some(hit) = self.caches.lock().unwrap().backward.get(n) {
            return Ok(hit.clone());
        }
        let value = (self.backward_obj)(n)?;
        let mut caches = self.caches.lock().unwrap();
        Ok(caches.backward.entry(n.clone()).or_insert(value).clone())
    }

    /// `F` on morphisms. Endpoints are re-keyed through the object cache
    /// so composing with object-level outputs never fails on `Arc`
    /// identity.
    pub fn forward_mor(&self, f: &ModuleMorphism) -> Result<ModuleMorphism> {
        let out = (self.forward_mor)(f)?;
        ModuleMorphism::new(self.forward(&f.source)?, self.forward(&f.target)?, out.mat)
    }

    /// `G` on morphisms.
    pub fn backward_mor(&self, f: &ModuleMorphism) -> Result<ModuleMorphism> {
        let out = (self.backward_mor)(f)?;
        ModuleMorphism::new(self.backward(&f.source)?, self.backward(&f.target)?, out.mat)
    }

    /// `eps_M : GF(M) -> M`, memoized; endpoints are validated once on
    /// first computation.
    pub fn eps(&self, m: &Arc<Module>) -> Result<ModuleMorphism> {
        if let Some(hit) = self.caches.lock().unwrap().eps.get(m) {
            return Ok(hit.clone());
        }
        let raw = (self.source_iso)(m)?;
        let gf = self.backward(&self.forward(m)?)?;
        if !raw.source.same_as(&gf) || !raw.target.same_as(m) {
            return Err(Error::MalformedConstraint(format!(
                "source isomorphism at a module of dimension {} has endpoints {} -> {}, expected {} -> {}",
                m.dim(),
                raw.source.dim(),
                raw.target.dim(),
                gf.dim(),
                m.dim()
            )));
        }
        let value = ModuleMorphism::new(gf, m.clone(), raw.mat)?;
        let mut caches = self.caches.lock().unwrap();
        Ok(caches.eps.entry(m.clone()).or_insert(value).clone())
    }

    /// `eps^-1_M : M -> GF(M)`, memoized.
    pub fn eps_inv(&self, m: &Arc<Module>) -> Result<ModuleMorphism> {
        if let Some(hit) = self.caches.lock().unwrap().eps_inv.get(m) {
            return Ok(hit.clone());
        }
        let eps = self.eps(m)?;
        let value = eps.inverse()?.ok_or_else(|| {
            Error::DegenerateEquivalence(format!(
                "source isomorphism is singular at a module of dimension {}",
                m.dim()
            ))
        })?;
        let mut caches = self.caches.lock().unwrap();
        Ok(caches.eps_inv.entry(m.clone()).or_insert(value).clone())
    }

    /// `eta_N : FG(N) -> N`, memoized.
    pub fn eta(&self, n: &Arc<Module>) -> Result<ModuleMorphism> {
        if let Some(hit) = self.caches.lock().unwrap().eta.get(n) {
            return Ok(hit.clone());
        }
        let raw = (self.target_iso)(n)?;
        let fg = self.forward(&self.backward(n)?)?;
        if !raw.source.same_as(&fg) || !raw.target.same_as(n) {
            return Err(Error::MalformedConstraint(format!(
                "target isomorphism at a module of dimension {} has endpoints {} -> {}, expected {} -> {}",
                n.dim(),
                raw.source.dim(),
                raw.target.dim(),
                fg.dim(),
                n.dim()
            )));
        }
        let value = ModuleMorphism::new(fg, n.clone(), raw.mat)?;
        let mut caches = self.caches.lock().unwrap();
        Ok(caches.eta.entry(n.clone()).or_insert(value).clone())
    }
}

/// Composite equivalence: first `inner : C -> D`, then `outer : D -> E`.
/// The composite counits are `eps_M = eps^inner_M o G_inner(eps^outer at
/// F_inner(M))` and `eta_N = eta^outer_N o F_outer(eta^inner at
/// G_outer(N))`.
pub fn compose_equivalences(
    outer: &Arc<EquivalenceDatum>,
    inner: &Arc<EquivalenceDatum>,
) -> Arc<EquivalenceDatum> {
    let forward_obj: ObjF = {
        let (o, i) = (outer.clone(), inner.clone());
        Arc::new(move |m| o.forward(&i.forward(m)?))
    };
    let forward_mor: MorF = {
        let (o, i) = (outer.clone(), inner.clone());
        Arc::new(move |f| o.forward_mor(&i.forward_mor(f)?))
    };
    let backward_obj: ObjF = {
        let (o, i) = (outer.clone(), inner.clone());
        Arc::new(move |n| i.backward(&o.backward(n)?))
    };
    let backward_mor: MorF = {
        let (o, i) = (outer.clone(), inner.clone());
        Arc::new(move |f| i.backward_mor(&o.backward_mor(f)?))
    };
    let source_iso: Constraint1 = {
        let (o, i) = (outer.clone(), inner.clone());
        Arc::new(move |m| {
            let fm = i.forward(m)?;
            let outer_eps = i.backward_mor(&o.eps(&fm)?)?;
            i.eps(m)?.compose(&outer_eps)
        })
    };
    let target_iso: Constraint1 = {
        let (o, i) = (outer.clone(), inner.clone());
        Arc::new(move |n| {
            let gn = o.backward(n)?;
            let inner_eta = o.forward_mor(&i.eta(&gn)?)?;
            o.eta(n)?.compose(&inner_eta)
        })
    };
    EquivalenceDatum::new(forward_obj, forward_mor, backward_obj, backward_mor, source_iso, target_iso)
}

/// The transported left action `X . N = F(X . G(N))`.
pub fn transported_left_action(source: &LeftAction, eq: &Arc<EquivalenceDatum>) -> LeftAction {
    let act: ActObj = {
        let (s, e) = (source.clone(), eq.clone());
        Arc::new(move |x, n| e.forward(&(s.act)(x, &e.backward(n)?)?))
    };
    let act_mor: ActMor = {
        let (s, e) = (source.clone(), eq.clone());
        Arc::new(move |f, g| e.forward_mor(&(s.act_mor)(f, &e.backward_mor(g)?)?))
    };
    let constraint = {
        let (s, e) = (source.clone(), eq.clone());
        Arc::new(move |x: &Arc<Module>, y: &Arc<Module>, n: &Arc<Module>| {
            let gn = e.backward(n)?;
            let ygn = (s.act)(y, &gn)?;
            let lift = (s.act_mor)(&ModuleMorphism::identity(x), &e.eps_inv(&ygn)?)?;
            e.forward_mor(&lift.compose(&(s.constraint)(x, y, &gn)?)?)
        }) as Constraint3
    };
    let unit_constraint: Constraint1 = {
        let (s, e) = (source.clone(), eq.clone());
        Arc::new(move |n: &Arc<Module>| {
            let gn = e.backward(n)?;
            e.eta(n)?.compose(&e.forward_mor(&(s.unit_constraint)(&gn)?)?)
        })
    };
    LeftAction { ctx: source.ctx.clone(), act, act_mor, constraint, unit_constraint }
}

/// The transported right action `N . X = F(G(N) . X)`.
pub fn transported_right_action(source: &RightAction, eq: &Arc<EquivalenceDatum>) -> RightAction {
    let act: ActObj = {
        let (s, e) = (source.clone(), eq.clone());
        Arc::new(move |n, x| e.forward(&(s.act)(&e.backward(n)?, x)?))
    };
    let act_mor: ActMor = {
        let (s, e) = (source.clone(), eq.clone());
        Arc::new(move |g, f| e.forward_mor(&(s.act_mor)(&e.backward_mor(g)?, f)?))
    };
    let constraint = {
        let (s, e) = (source.clone(), eq.clone());
        Arc::new(move |n: &Arc<Module>, x: &Arc<Module>, y: &Arc<Module>| {
            let gn = e.backward(n)?;
            let gnx = (s.act)(&gn, x)?;
            let lift = (s.act_mor)(&e.eps_inv(&gnx)?, &ModuleMorphism::identity(y))?;
            e.forward_mor(&lift.compose(&(s.constraint)(&gn, x, y)?)?)
        }) as Constraint3
    };
    let unit_constraint: Constraint1 = {
        let (s, e) = (source.clone(), eq.clone());
        Arc::new(move |n: &Arc<Module>| {
            let gn = e.backward(n)?;
            e.eta(n)?.compose(&e.forward_mor(&(s.unit_constraint)(&gn)?)?)
        })
    };
    RightAction { ctx: source.ctx.clone(), act, act_mor, constraint, unit_constraint }
}

/// The transported two-sided structure, with middle constraint
/// `p_{X,N,Z} = F((id_X . eps^-1_{GN.Z}) o b_{X,GN,Z} o (eps_{X.GN} . id_Z))`.
pub fn transported_bimodule_action(
    source: &BimoduleAction,
    eq: &Arc<EquivalenceDatum>,
) -> BimoduleAction {
    let left = transported_left_action(&source.left, eq);
    let right = transported_right_action(&source.right, eq);
    let middle = {
        let (sl, sr, sm, e) =
            (source.left.clone(), source.right.clone(), source.middle.clone(), eq.clone());
        Arc::new(move |x: &Arc<Module>, n: &Arc<Module>, z: &Arc<Module>| {
            let gn = e.backward(n)?;
            let xgn = (sl.act)(x, &gn)?;
            let gnz = (sr.act)(&gn, z)?;
            let first = (sr.act_mor)(&e.eps(&xgn)?, &ModuleMorphism::identity(z))?;
            let last = (sl.act_mor)(&ModuleMorphism::identity(x), &e.eps_inv(&gnz)?)?;
            e.forward_mor(&last.compose(&sm(x, &gn, z)?)?.compose(&first)?)
        }) as Constraint3
    };
    BimoduleAction { left, right, middle }
}

/// `F` as a left module functor from the source structure to the
/// transported one: `s_{X,M} = F(id_X . eps^-1_M)`.
pub fn forward_left_functor(source: &LeftAction, eq: &Arc<EquivalenceDatum>) -> ModuleFunctor {
    let onto: ObjF = {
        let e = eq.clone();
        Arc::new(move |m| e.forward(m))
    };
    let on_mor: MorF = {
        let e = eq.clone();
        Arc::new(move |f| e.forward_mor(f))
    };
    let structure = {
        let (s, e) = (source.clone(), eq.clone());
        Arc::new(move |x: &Arc<Module>, m: &Arc<Module>| {
            e.forward_mor(&(s.act_mor)(&ModuleMorphism::identity(x), &e.eps_inv(m)?)?)
        }) as Constraint2
    };
    ModuleFunctor { onto, on_mor, structure }
}

/// `G` as a left module functor from the transported structure back to
/// the source: `t_{X,N} = eps_{X.G(N)}`.
pub fn backward_left_functor(source: &LeftAction, eq: &Arc<EquivalenceDatum>) -> ModuleFunctor {
    let onto: ObjF = {
        let e = eq.clone();
        Arc::new(move |n| e.backward(n))
    };
    let on_mor: MorF = {
        let e = eq.clone();
        Arc::new(move |f| e.backward_mor(f))
    };
    let structure = {
        let (s, e) = (source.clone(), eq.clone());
        Arc::new(move |x: &Arc<Module>, n: &Arc<Module>| {
            let xgn = (s.act)(x, &e.backward(n)?)?;
            e.eps(&xgn)
        }) as Constraint2
    };
    ModuleFunctor { onto, on_mor, structure }
}

/// `F` as a right module functor: `sr_{M,X} = F(eps^-1_M . id_X)`.
pub fn forward_right_functor(source: &RightAction, eq: &Arc<EquivalenceDatum>) -> RightModuleFunctor {
    let onto: ObjF = {
        let e = eq.clone();
        Arc::new(move |m| e.forward(m))
    };
    let on_mor: MorF = {
        let e = eq.clone();
        Arc::new(move |f| e.forward_mor(f))
    };
    let structure = {
        let (s, e) = (source.clone(), eq.clone());
        Arc::new(move |m: &Arc<Module>, x: &Arc<Module>| {
            e.forward_mor(&(s.act_mor)(&e.eps_inv(m)?, &ModuleMorphism::identity(x))?)
        }) as Constraint2
    };
    RightModuleFunctor { onto, on_mor, structure }
}

/// `F` with both structure families at once.
pub fn forward_bimodule_functor(source: &BimoduleAction, eq: &Arc<EquivalenceDatum>) -> BimoduleFunctor {
    let left = forward_left_functor(&source.left, eq);
    let right = forward_right_functor(&source.right, eq);
    BimoduleFunctor {
        onto: left.onto,
        on_mor: left.on_mor,
        left_structure: left.structure,
        right_structure: right.structure,
    }
}

/// `G` with both structure families at once.
pub fn backward_bimodule_functor(source: &BimoduleAction, eq: &Arc<EquivalenceDatum>) -> BimoduleFunctor {
    let left = backward_left_functor(&source.left, eq);
    let right = backward_right_functor(&source.right, eq);
    BimoduleFunctor {
        onto: left.onto,
        on_mor: left.on_mor,
        left_structure: left.structure,
        right_structure: right.structure,
    }
}

/// `G` as a right module functor: `tr_{N,X} = eps_{G(N).X}`.
pub fn backward_right_functor(source: &RightAction, eq: &Arc<EquivalenceDatum>) -> RightModuleFunctor {
    let onto: ObjF = {
        let e = eq.clone();
        Arc::new(move |n| e.backward(n))
    };
    let on_mor: MorF = {
        let e = eq.clone();
        Arc::new(move |f| e.backward_mor(f))
    };
    let structure = {
        let (s, e) = (source.clone(), eq.clone());
        Arc::new(move |n: &Arc<Module>, x: &Arc<Module>| {
            let gnx = (s.act)(&e.backward(n)?, x)?;
            e.eps(&gnx)
        }) as Constraint2
    };
    RightModuleFunctor { onto, on_mor, structure }
}
