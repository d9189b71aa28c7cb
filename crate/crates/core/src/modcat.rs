//! Action structures and coherence checkers.
//!
//! A *left action structure* packages how a monoidal category of modules
//! acts on another category of modules: the action on objects and
//! morphisms, the associativity constraint `m_{X,Y,M} : (X . Y) . M ->
//! X . (Y . M)` (writing `.` for both the monoidal product and the
//! action), and the unit constraint `l_M : 1 . M -> M`. Right actions
//! carry `mr_{M,X,Y} : M . (X . Y) -> (M . X) . Y`, and two-sided
//! structures add the middle constraint `b_{X,M,Z} : (X . M) . Z ->
//! X . (M . Z)`.
//!
//! Checkers evaluate both composite paths of a coherence diagram at a
//! concrete tuple of objects and compare the matrices entrywise. A
//! mathematical failure is a *result* ([`DiagramReport`] with `pass =
//! false` and the two offending composites); only structurally malformed
//! input (paths that do not even compose) is an error.
//!
//! Everything is closure-based so that the same checkers run against the
//! strict structures of a bialgebra's own module category and against
//! structures transported through an equivalence.

use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::module::{Module, ModuleMorphism};
use crate::monoidal::MonoidalContext;
use std::sync::Arc;

pub type ObjF = Arc<dyn Fn(&Arc<Module>) -> Result<Arc<Module>> + Send + Sync>;
pub type MorF = Arc<dyn Fn(&ModuleMorphism) -> Result<ModuleMorphism> + Send + Sync>;
pub type ActObj = Arc<dyn Fn(&Arc<Module>, &Arc<Module>) -> Result<Arc<Module>> + Send + Sync>;
pub type ActMor = Arc<dyn Fn(&ModuleMorphism, &ModuleMorphism) -> Result<ModuleMorphism> + Send + Sync>;
pub type Constraint1 = Arc<dyn Fn(&Arc<Module>) -> Result<ModuleMorphism> + Send + Sync>;
pub type Constraint2 = Arc<dyn Fn(&Arc<Module>, &Arc<Module>) -> Result<ModuleMorphism> + Send + Sync>;
pub type Constraint3 =
    Arc<dyn Fn(&Arc<Module>, &Arc<Module>, &Arc<Module>) -> Result<ModuleMorphism> + Send + Sync>;

/// Outcome of evaluating one coherence diagram at one object tuple.
#[derive(Clone)]
pub struct DiagramReport {
    pub diagram: &'static str,
    /// Dimensions of the objects the diagram was instantiated at.
    pub tuple: String,
    pub pass: bool,
    /// The two composite matrices when they differ.
    pub failure: Option<(Mat, Mat)>,
}

impl std::fmt::Debug for DiagramReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} {} {}",
            self.diagram,
            self.tuple,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

fn compare(
    diagram: &'static str,
    tuple: String,
    lhs: &ModuleMorphism,
    rhs: &ModuleMorphism,
) -> Result<DiagramReport> {
    if !lhs.source.same_as(&rhs.source) || !lhs.target.same_as(&rhs.target) {
        return Err(Error::MalformedConstraint(format!(
            "{diagram}: the two paths have different endpoints ({} -> {} vs {} -> {})",
            lhs.source.dim(),
            lhs.target.dim(),
            rhs.source.dim(),
            rhs.target.dim()
        )));
    }
    let pass = lhs.mat == rhs.mat;
    Ok(DiagramReport {
        diagram,
        tuple,
        pass,
        failure: if pass { None } else { Some((lhs.mat.clone(), rhs.mat.clone())) },
    })
}

#[derive(Clone)]
pub struct LeftAction {
    pub ctx: Arc<MonoidalContext>,
    pub act: ActObj,
    pub act_mor: ActMor,
    /// `m_{X,Y,M} : (X . Y) . M -> X . (Y . M)`.
    pub constraint: Constraint3,
    /// `l_M : 1 . M -> M`.
    pub unit_constraint: Constraint1,
}

#[derive(Clone)]
pub struct RightAction {
    pub ctx: Arc<MonoidalContext>,
    pub act: ActObj,
    pub act_mor: ActMor,
    /// `mr_{M,X,Y} : M . (X . Y) -> (M . X) . Y`.
    pub constraint: Constraint3,
    /// `r_M : M . 1 -> M`.
    pub unit_constraint: Constraint1,
}

/// Simultaneous left and right actions with a middle constraint
/// `b_{X,M,Z} : (X . M) . Z -> X . (M . Z)`.
#[derive(Clone)]
pub struct BimoduleAction {
    pub left: LeftAction,
    pub right: RightAction,
    pub middle: Constraint3,
}

fn strict_identity(src: &Arc<Module>, dst: &Arc<Module>, what: &str) -> Result<ModuleMorphism> {
    if !src.same_as(dst) {
        return Err(Error::MalformedConstraint(format!(
            "strict {what} constraint instantiated at unequal modules ({} vs {})",
            src.dim(),
            dst.dim()
        )));
    }
    ModuleMorphism::new(src.clone(), dst.clone(), Mat::identity(src.dim(), src.algebra().field()))
}

impl LeftAction {
    /// The module category of the bialgebra acting on itself by the
    /// tensor product. Associativity and unit constraints are identity
    /// matrices because the Kronecker realization is strict; the
    /// constructor closures verify that strictness instead of assuming
    /// it.
    pub fn strict(ctx: &Arc<MonoidalContext>) -> LeftAction {
        let act = {
            let c = ctx.clone();
            Arc::new(move |x: &Arc<Module>, m: &Arc<Module>| c.tensor(x, m)) as ActObj
        };
        let act_mor = {
            let c = ctx.clone();
            Arc::new(move |f: &ModuleMorphism, g: &ModuleMorphism| c.tensor_morphism(f, g)) as ActMor
        };
        let constraint = {
            let c = ctx.clone();
            Arc::new(move |x: &Arc<Module>, y: &Arc<Module>, m: &Arc<Module>| {
                let src = c.tensor(&c.tensor(x, y)?, m)?;
                let dst = c.tensor(x, &c.tensor(y, m)?)?;
                strict_identity(&src, &dst, "associativity")
            }) as Constraint3
        };
        let unit_constraint = {
            let c = ctx.clone();
            Arc::new(move |m: &Arc<Module>| {
                let src = c.tensor(&c.unit_module(), m)?;
                strict_identity(&src, m, "left unit")
            }) as Constraint1
        };
        LeftAction { ctx: ctx.clone(), act, act_mor, constraint, unit_constraint }
    }
}

impl RightAction {
    pub fn strict(ctx: &Arc<MonoidalContext>) -> RightAction {
        let act = {
            let c = ctx.clone();
            Arc::new(move |m: &Arc<Module>, x: &Arc<Module>| c.tensor(m, x)) as ActObj
        };
        let act_mor = {
            let c = ctx.clone();
            Arc::new(move |g: &ModuleMorphism, f: &ModuleMorphism| c.tensor_morphism(g, f)) as ActMor
        };
        let constraint = {
            let c = ctx.clone();
            Arc::new(move |m: &Arc<Module>, x: &Arc<Module>, y: &Arc<Module>| {
                let src = c.tensor(m, &c.tensor(x, y)?)?;
                let dst = c.tensor(&c.tensor(m, x)?, y)?;
                strict_identity(&src, &dst, "right associativity")
            }) as Constraint3
        };
        let unit_constraint = {
            let c = ctx.clone();
            Arc::new(move |m: &Arc<Module>| {
                let src = c.tensor(m, &c.unit_module())?;
                strict_identity(&src, m, "right unit")
            }) as Constraint1
        };
        RightAction { ctx: ctx.clone(), act, act_mor, constraint, unit_constraint }
    }
}

impl BimoduleAction {
    pub fn strict(ctx: &Arc<MonoidalContext>) -> BimoduleAction {
        let middle = {
            let c = ctx.clone();
            Arc::new(move |x: &Arc<Module>, m: &Arc<Module>, z: &Arc<Module>| {
                let src = c.tensor(&c.tensor(x, m)?, z)?;
                let dst = c.tensor(x, &c.tensor(m, z)?)?;
                strict_identity(&src, &dst, "middle")
            }) as Constraint3
        };
        BimoduleAction { left: LeftAction::strict(ctx), right: RightAction::strict(ctx), middle }
    }
}

fn dims(parts: &[(&str, usize)]) -> String {
    let body: Vec<String> = parts.iter().map(|(n, d)| format!("{n}={d}")).collect();
    format!("({})", body.join(","))
}

/// `(id_X . m_{Y,Z,M}) o m_{X,YZ,M} = m_{X,Y,Z.M} o m_{XY,Z,M}` on
/// `((X.Y).Z).M`.
pub fn check_left_pentagon(
    a: &LeftAction,
    x: &Arc<Module>,
    y: &Arc<Module>,
    z: &Arc<Module>,
    m: &Arc<Module>,
) -> Result<DiagramReport> {
    let xy = a.ctx.tensor(x, y)?;
    let yz = a.ctx.tensor(y, z)?;
    let inner = (a.constraint)(y, z, m)?;
    let lhs = (a.act_mor)(&ModuleMorphism::identity(x), &inner)?
        .compose(&(a.constraint)(x, &yz, m)?)?;
    let zm = (a.act)(z, m)?;
    let rhs = (a.constraint)(x, y, &zm)?.compose(&(a.constraint)(&xy, z, m)?)?;
    compare(
        "left-pentagon",
        dims(&[("X", x.dim()), ("Y", y.dim()), ("Z", z.dim()), ("M", m.dim())]),
        &lhs,
        &rhs,
    )
}

/// `l_{X.M} o m_{1,X,M} = id`.
pub fn check_left_unit(a: &LeftAction, x: &Arc<Module>, m: &Arc<Module>) -> Result<DiagramReport> {
    let xm = (a.act)(x, m)?;
    let one = a.ctx.unit_module();
    let lhs = (a.unit_constraint)(&xm)?.compose(&(a.constraint)(&one, x, m)?)?;
    let rhs = ModuleMorphism::identity(&xm);
    compare("left-unit", dims(&[("X", x.dim()), ("M", m.dim())]), &lhs, &rhs)
}

/// `(id_X . l_M) o m_{X,1,M} = id`.
pub fn check_left_unit_middle(
    a: &LeftAction,
    x: &Arc<Module>,
    m: &Arc<Module>,
) -> Result<DiagramReport> {
    let xm = (a.act)(x, m)?;
    let one = a.ctx.unit_module();
    let lhs = (a.act_mor)(&ModuleMorphism::identity(x), &(a.unit_constraint)(m)?)?
        .compose(&(a.constraint)(x, &one, m)?)?;
    let rhs = ModuleMorphism::identity(&xm);
    compare("left-unit-middle", dims(&[("X", x.dim()), ("M", m.dim())]), &lhs, &rhs)
}

/// `(mr_{M,X,Y} . id_Z) o mr_{M,XY,Z} = mr_{M.X,Y,Z} o mr_{M,X,YZ}` on
/// `M.(X.Y.Z)`.
pub fn check_right_pentagon(
    a: &RightAction,
    m: &Arc<Module>,
    x: &Arc<Module>,
    y: &Arc<Module>,
    z: &Arc<Module>,
) -> Result<DiagramReport> {
    let xy = a.ctx.tensor(x, y)?;
    let yz = a.ctx.tensor(y, z)?;
    let lhs = (a.act_mor)(&(a.constraint)(m, x, y)?, &ModuleMorphism::identity(z))?
        .compose(&(a.constraint)(m, &xy, z)?)?;
    let mx = (a.act)(m, x)?;
    let rhs = (a.constraint)(&mx, y, z)?.compose(&(a.constraint)(m, x, &yz)?)?;
    compare(
        "right-pentagon",
        dims(&[("M", m.dim()), ("X", x.dim()), ("Y", y.dim()), ("Z", z.dim())]),
        &lhs,
        &rhs,
    )
}

/// `r_{M.X} o mr_{M,X,1} = id`.
pub fn check_right_unit(a: &RightAction, m: &Arc<Module>, x: &Arc<Module>) -> Result<DiagramReport> {
    let mx = (a.act)(m, x)?;
    let one = a.ctx.unit_module();
    let lhs = (a.unit_constraint)(&mx)?.compose(&(a.constraint)(m, x, &one)?)?;
    let rhs = ModuleMorphism::identity(&mx);
    compare("right-unit", dims(&[("M", m.dim()), ("X", x.dim())]), &lhs, &rhs)
}

/// `(r_M . id_X) o mr_{M,1,X} = id`.
pub fn check_right_unit_middle(
    a: &RightAction,
    m: &Arc<Module>,
    x: &Arc<Module>,
) -> Result<DiagramReport> {
    let mx = (a.act)(m, x)?;
    let one = a.ctx.unit_module();
    let lhs = (a.act_mor)(&(a.unit_constraint)(m)?, &ModuleMorphism::identity(x))?
        .compose(&(a.constraint)(m, &one, x)?)?;
    let rhs = ModuleMorphism::identity(&mx);
    compare("right-unit-middle", dims(&[("M", m.dim()), ("X", x.dim())]), &lhs, &rhs)
}

/// Middle constraint against the left action:
/// `(id_X . b_{Y,M,Z}) o b_{X,Y.M,Z} o (m_{X,Y,M} . id_Z)
///  = m_{X,Y,M.Z} o b_{XY,M,Z}` on `((XY).M).Z`.
pub fn check_middle_left(
    a: &BimoduleAction,
    x: &Arc<Module>,
    y: &Arc<Module>,
    m: &Arc<Module>,
    z: &Arc<Module>,
) -> Result<DiagramReport> {
    let xy = a.left.ctx.tensor(x, y)?;
    let ym = (a.left.act)(y, m)?;
    let id_z = ModuleMorphism::identity(z);
    let lhs = (a.left.act_mor)(&ModuleMorphism::identity(x), &(a.middle)(y, m, z)?)?
        .compose(&(a.middle)(x, &ym, z)?)?
        .compose(&(a.right.act_mor)(&(a.left.constraint)(x, y, m)?, &id_z)?)?;
    let mz = (a.right.act)(m, z)?;
    let rhs = (a.left.constraint)(x, y, &mz)?.compose(&(a.middle)(&xy, m, z)?)?;
    compare(
        "middle-left",
        dims(&[("X", x.dim()), ("Y", y.dim()), ("M", m.dim()), ("Z", z.dim())]),
        &lhs,
        &rhs,
    )
}

/// Middle constraint against the right action:
/// `(id_X . mr_{M,W,Z}) o b_{X,M,WZ}
///  = b_{X,M.W,Z} o (b_{X,M,W} . id_Z) o mr_{X.M,W,Z}` on `(X.M).(WZ)`.
pub fn check_middle_right(
    a: &BimoduleAction,
    x: &Arc<Module>,
    m: &Arc<Module>,
    w: &Arc<Module>,
    z: &Arc<Module>,
) -> Result<DiagramReport> {
    let wz = a.right.ctx.tensor(w, z)?;
    let lhs = (a.left.act_mor)(&ModuleMorphism::identity(x), &(a.right.constraint)(m, w, z)?)?
        .compose(&(a.middle)(x, m, &wz)?)?;
    let xm = (a.left.act)(x, m)?;
    let mw = (a.right.act)(m, w)?;
    let rhs = (a.middle)(x, &mw, z)?
        .compose(&(a.right.act_mor)(&(a.middle)(x, m, w)?, &ModuleMorphism::identity(z))?)?
        .compose(&(a.right.constraint)(&xm, w, z)?)?;
    compare(
        "middle-right",
        dims(&[("X", x.dim()), ("M", m.dim()), ("W", w.dim()), ("Z", z.dim())]),
        &lhs,
        &rhs,
    )
}

/// `r_{X.M} = (id_X . r_M) o b_{X,M,1}`.
pub fn check_middle_unit(
    a: &BimoduleAction,
    x: &Arc<Module>,
    m: &Arc<Module>,
) -> Result<DiagramReport> {
    let one = a.right.ctx.unit_module();
    let xm = (a.left.act)(x, m)?;
    let lhs = (a.left.act_mor)(&ModuleMorphism::identity(x), &(a.right.unit_constraint)(m)?)?
        .compose(&(a.middle)(x, m, &one)?)?;
    let rhs = (a.right.unit_constraint)(&xm)?;
    compare("middle-unit", dims(&[("X", x.dim()), ("M", m.dim())]), &lhs, &rhs)
}

/// A functor between module categories together with its left-action
/// structure morphisms `s_{X,M} : F(X . M) -> X . F(M)`.
#[derive(Clone)]
pub struct ModuleFunctor {
    pub onto: ObjF,
    pub on_mor: MorF,
    pub structure: Constraint2,
}

/// A functor with right-action structure `sr_{M,X} : F(M . X) -> F(M) . X`.
#[derive(Clone)]
pub struct RightModuleFunctor {
    pub onto: ObjF,
    pub on_mor: MorF,
    pub structure: Constraint2,
}

/// A functor with both structures.
#[derive(Clone)]
pub struct BimoduleFunctor {
    pub onto: ObjF,
    pub on_mor: MorF,
    pub left_structure: Constraint2,
    pub right_structure: Constraint2,
}

/// Coherence of a left module functor:
/// `(id_X . s_{Y,M}) o s_{X,Y.M} o F(m_{X,Y,M})
///  = n_{X,Y,F(M)} o s_{XY,M}` on `F((XY).M)`,
/// where `m` is the source constraint and `n` the target one.
pub fn check_left_functor(
    source: &LeftAction,
    target: &LeftAction,
    f: &ModuleFunctor,
    x: &Arc<Module>,
    y: &Arc<Module>,
    m: &Arc<Module>,
) -> Result<DiagramReport> {
    let xy = source.ctx.tensor(x, y)?;
    let ym = (source.act)(y, m)?;
    let fm = (f.onto)(m)?;
    let lhs = (target.act_mor)(&ModuleMorphism::identity(x), &(f.structure)(y, m)?)?
        .compose(&(f.structure)(x, &ym)?)?
        .compose(&(f.on_mor)(&(source.constraint)(x, y, m)?)?)?;
    let rhs = (target.constraint)(x, y, &fm)?.compose(&(f.structure)(&xy, m)?)?;
    compare(
        "functor-left",
        dims(&[("X", x.dim()), ("Y", y.dim()), ("M", m.dim())]),
        &lhs,
        &rhs,
    )
}

/// `l'_{F(M)} o s_{1,M} = F(l_M)`.
pub fn check_left_functor_unit(
    source: &LeftAction,
    target: &LeftAction,
    f: &ModuleFunctor,
    m: &Arc<Module>,
) -> Result<DiagramReport> {
    let one = source.ctx.unit_module();
    let fm = (f.onto)(m)?;
    let lhs = (target.unit_constraint)(&fm)?.compose(&(f.structure)(&one, m)?)?;
    let rhs = (f.on_mor)(&(source.unit_constraint)(m)?)?;
    compare("functor-left-unit", dims(&[("M", m.dim())]), &lhs, &rhs)
}

/// Coherence of a right module functor:
/// `(sr_{M,X} . id_Y) o sr_{M.X,Y} o F(mr_{M,X,Y})
///  = nr_{F(M),X,Y} o sr_{M,XY}` on `F(M.(XY))`.
pub fn check_right_functor(
    source: &RightAction,
    target: &RightAction,
    f: &RightModuleFunctor,
    m: &Arc<Module>,
    x: &Arc<Module>,
    y: &Arc<Module>,
) -> Result<DiagramReport> {
    let xy = source.ctx.tensor(x, y)?;
    let mx = (source.act)(m, x)?;
    let fm = (f.onto)(m)?;
    let lhs = (target.act_mor)(&(f.structure)(m, x)?, &ModuleMorphism::identity(y))?
        .compose(&(f.structure)(&mx, y)?)?
        .compose(&(f.on_mor)(&(source.constraint)(m, x, y)?)?)?;
    let rhs = (target.constraint)(&fm, x, y)?.compose(&(f.structure)(m, &xy)?)?;
    compare(
        "functor-right",
        dims(&[("M", m.dim()), ("X", x.dim()), ("Y", y.dim())]),
        &lhs,
        &rhs,
    )
}

/// `r'_{F(M)} o sr_{M,1} = F(r_M)`.
pub fn check_right_functor_unit(
    source: &RightAction,
    target: &RightAction,
    f: &RightModuleFunctor,
    m: &Arc<Module>,
) -> Result<DiagramReport> {
    let one = source.ctx.unit_module();
    let fm = (f.onto)(m)?;
    let lhs = (target.unit_constraint)(&fm)?.compose(&(f.structure)(m, &one)?)?;
    let rhs = (f.on_mor)(&(source.unit_constraint)(m)?)?;
    compare("functor-right-unit", dims(&[("M", m.dim())]), &lhs, &rhs)
}

/// Coherence of a bimodule functor:
/// `(id_X . sr_{M,Y}) o s_{X,M.Y} o F(b_{X,M,Y})
///  = p_{X,F(M),Y} o (s_{X,M} . id_Y) o sr_{X.M,Y}` on `F((X.M).Y)`.
pub fn check_bimodule_functor(
    source: &BimoduleAction,
    target: &BimoduleAction,
    f: &BimoduleFunctor,
    x: &Arc<Module>,
    m: &Arc<Module>,
    y: &Arc<Module>,
) -> Result<DiagramReport> {
    let my = (source.right.act)(m, y)?;
    let xm = (source.left.act)(x, m)?;
    let fm = (f.onto)(m)?;
    let lhs = (target.left.act_mor)(&ModuleMorphism::identity(x), &(f.right_structure)(m, y)?)?
        .compose(&(f.left_structure)(x, &my)?)?
        .compose(&(f.on_mor)(&(source.middle)(x, m, y)?)?)?;
    let rhs = (target.middle)(x, &fm, y)?
        .compose(&(target.right.act_mor)(&(f.left_structure)(x, m)?, &ModuleMorphism::identity(y))?)?
        .compose(&(f.right_structure)(&xm, y)?)?;
    compare(
        "functor-bimodule",
        dims(&[("X", x.dim()), ("M", m.dim()), ("Y", y.dim())]),
        &lhs,
        &rhs,
    )
}

/// Naturality of the structure morphism in both slots:
/// `s_{X',M'} o F(f . g) = (f . F(g)) o s_{X,M}`.
pub fn check_left_functor_naturality(
    source: &LeftAction,
    target: &LeftAction,
    fun: &ModuleFunctor,
    f: &ModuleMorphism,
    g: &ModuleMorphism,
) -> Result<DiagramReport> {
    let lhs = (fun.structure)(&f.target, &g.target)?
        .compose(&(fun.on_mor)(&(source.act_mor)(f, g)?)?)?;
    let rhs = (target.act_mor)(f, &(fun.on_mor)(g)?)?.compose(&(fun.structure)(&f.source, &g.source)?)?;
    compare(
        "naturality-left",
        dims(&[
            ("X", f.source.dim()),
            ("X'", f.target.dim()),
            ("M", g.source.dim()),
            ("M'", g.target.dim()),
        ]),
        &lhs,
        &rhs,
    )
}

/// `sr_{M',X'} o F(g . f) = (F(g) . f) o sr_{M,X}`.
pub fn check_right_functor_naturality(
    source: &RightAction,
    target: &RightAction,
    fun: &RightModuleFunctor,
    g: &ModuleMorphism,
    f: &ModuleMorphism,
) -> Result<DiagramReport> {
    let lhs = (fun.structure)(&g.target, &f.target)?
        .compose(&(fun.on_mor)(&(source.act_mor)(g, f)?)?)?;
    let rhs = (target.act_mor)(&(fun.on_mor)(g)?, f)?.compose(&(fun.structure)(&g.source, &f.source)?)?;
    compare(
        "naturality-right",
        dims(&[
            ("M", g.source.dim()),
            ("M'", g.target.dim()),
            ("X", f.source.dim()),
            ("X'", f.target.dim()),
        ]),
        &lhs,
        &rhs,
    )
}

/// Naturality of a left action's associativity constraint:
/// `m_{X',Y',M'} o ((f (x) g) . h) = (f . (g . h)) o m_{X,Y,M}`.
pub fn check_left_constraint_naturality(
    a: &LeftAction,
    f: &ModuleMorphism,
    g: &ModuleMorphism,
    h: &ModuleMorphism,
) -> Result<DiagramReport> {
    let fg = a.ctx.tensor_morphism(f, g)?;
    let lhs = (a.constraint)(&f.target, &g.target, &h.target)?.compose(&(a.act_mor)(&fg, h)?)?;
    let gh = (a.act_mor)(g, h)?;
    let rhs = (a.act_mor)(f, &gh)?.compose(&(a.constraint)(&f.source, &g.source, &h.source)?)?;
    compare(
        "constraint-naturality",
        dims(&[("X", f.source.dim()), ("Y", g.source.dim()), ("M", h.source.dim())]),
        &lhs,
        &rhs,
    )
}

/// Composite of left module functors (outer after inner) with structure
/// `u_{X,M} = t_{X,F(M)} o G(s_{X,M})`.
pub fn compose_module_functors(outer: &ModuleFunctor, inner: &ModuleFunctor) -> ModuleFunctor {
    let onto = {
        let (go, fo) = (outer.onto.clone(), inner.onto.clone());
        Arc::new(move |m: &Arc<Module>| go(&fo(m)?)) as ObjF
    };
    let on_mor = {
        let (gm, fm) = (outer.on_mor.clone(), inner.on_mor.clone());
        Arc::new(move |h: &ModuleMorphism| gm(&fm(h)?)) as MorF
    };
    let structure = {
        let (gs, gm, fo, fs) =
            (outer.structure.clone(), outer.on_mor.clone(), inner.onto.clone(), inner.structure.clone());
        Arc::new(move |x: &Arc<Module>, m: &Arc<Module>| {
            let fm_obj = fo(m)?;
            gs(x, &fm_obj)?.compose(&gm(&fs(x, m)?)?)
        }) as Constraint2
    };
    ModuleFunctor { onto, on_mor, structure }
}

/// Composite of right module functors with
/// `ur_{M,X} = tr_{F(M),X} o G(sr_{M,X})`.
pub fn compose_right_module_functors(
    outer: &RightModuleFunctor,
    inner: &RightModuleFunctor,
) -> RightModuleFunctor {
    let onto = {
        let (go, fo) = (outer.onto.clone(), inner.onto.clone());
        Arc::new(move |m: &Arc<Module>| go(&fo(m)?)) as ObjF
    };
    let on_mor = {
        let (gm, fm) = (outer.on_mor.clone(), inner.on_mor.clone());
        Arc::new(move |h: &ModuleMorphism| gm(&fm(h)?)) as MorF
    };
    let structure = {
        let (gs, gm, fo, fs) =
            (outer.structure.clone(), outer.on_mor.clone(), inner.onto.clone(), inner.structure.clone());
        Arc::new(move |m: &Arc<Module>, x: &Arc<Module>| {
            let fm_obj = fo(m)?;
            gs(&fm_obj, x)?.compose(&gm(&fs(m, x)?)?)
        }) as Constraint2
    };
    RightModuleFunctor { onto, on_mor, structure }
}

/// Whether a natural family `theta_M : F(M) -> F'(M)` is an isomorphism
/// of module functors at the sampled pair: each component invertible, and
/// `s'_{X,M} o theta_{X.M} = (id_X . theta_M) o s_{X,M}`.
pub fn check_functor_isomorphism(
    source: &LeftAction,
    target: &LeftAction,
    f: &ModuleFunctor,
    f2: &ModuleFunctor,
    theta: &Constraint1,
    x: &Arc<Module>,
    m: &Arc<Module>,
) -> Result<Vec<DiagramReport>> {
    let tuple = dims(&[("X", x.dim()), ("M", m.dim())]);
    let xm = (source.act)(x, m)?;
    let theta_m = theta(m)?;
    let theta_xm = theta(&xm)?;
    let invertible = theta_m.is_invertible() && theta_xm.is_invertible();
    let mut reports = vec![DiagramReport {
        diagram: "iso-invertible",
        tuple: tuple.clone(),
        pass: invertible,
        failure: None,
    }];
    let lhs = (f2.structure)(x, m)?.compose(&theta_xm)?;
    let rhs = (target.act_mor)(&ModuleMorphism::identity(x), &theta_m)?.compose(&(f.structure)(x, m)?)?;
    reports.push(compare("functor-iso", tuple, &lhs, &rhs)?);
    Ok(reports)
}
