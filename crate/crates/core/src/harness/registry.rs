//! The registered statements. Each one is checked on every assignment of
//! its quantifiers over the instance's full ideal and submodule lattices.

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::hom::ModuleHom;
use crate::module::{FiniteModule, Submodule};
use crate::predicates::{check_classical, check_j_presimplifiable, check_j_submodule, check_weakly_j_ideal,
    check_weakly_j_submodule, ClassicalKind, Witness as ScanWitness};
use crate::ring::{FiniteRing, Ideal};

use super::context::HomKind;
use super::{assign, Assignment, Context, Details, Eval, Property, Scope, Value};

const FG_NOTE: &str = "finitely generated: automatic for finite modules";
const NOT_FM_NOTE: &str = "module is not faithful multiplication";

/// Largest ring on which every presentation ideal is tried.
pub const PRESENTATION_MAX_RING: usize = 16;

pub fn registry() -> &'static [Property] {
    &REGISTRY
}

static REGISTRY: [Property; 30] = [
    Property {
        id: "DEF_IMPL",
        statement: "every J-submodule is weakly J",
        budget: "|L| |R||M|",
        variant: false,
        scope: per_proper,
        evaluate: def_impl,
    },
    Property {
        id: "LEM_L1",
        statement: "weakly J, inside J(R)M and not J implies (N:M)N = 0 and (N:M)^2 ⊆ Ann(M)",
        budget: "|L| |R||M|",
        variant: false,
        scope: per_proper,
        evaluate: lem_l1,
    },
    Property {
        id: "THM_EQ1",
        statement: "for proper N: weakly J, the (N:Rm) condition, the ideal-element condition and the ideal-submodule condition coincide",
        budget: "|L| (|M||R| + |Id||M| + |Id||L|)",
        variant: false,
        scope: per_proper,
        evaluate: thm_eq1,
    },
    Property {
        id: "PROP_IM",
        statement: "M f.g. faithful multiplication: I is a weakly J-ideal iff IM is weakly J",
        budget: "|Id|",
        variant: false,
        scope: fm_per_ideal,
        evaluate: prop_im,
    },
    Property {
        id: "COR_NM",
        statement: "M f.g. faithful multiplication: N weakly J iff (N:M) weakly J-ideal iff N = IM for a weakly J-ideal I",
        budget: "|L| |Id|",
        variant: false,
        scope: fm_per_sub,
        evaluate: cor_nm,
    },
    Property {
        id: "LEM_L2",
        statement: "a weakly J-ideal lies inside J(R)",
        budget: "|Id|",
        variant: false,
        scope: per_proper_ideal,
        evaluate: lem_l2,
    },
    Property {
        id: "COR_REDUCED",
        statement: "M f.g. faithful multiplication, N weakly J but not J: (N:M)N = 0, N^2 = 0, and N = 0 when M is reduced",
        budget: "|L|",
        variant: false,
        scope: fm_per_proper,
        evaluate: cor_reduced,
    },
    Property {
        id: "PROP_PURE",
        statement: "M f.g. faithful multiplication, N pure and weakly J, I weakly J-ideal: IN is weakly J",
        budget: "|L| |Id| |R||M|",
        variant: false,
        scope: fm_proper_by_ideal,
        evaluate: prop_pure,
    },
    Property {
        id: "LEM_MAJED",
        statement: "M faithful multiplication, I f.g. faithful multiplication ideal: N = (IN :_M I), and N ⊆ IM gives (JN :_M I) = J(N :_M I)",
        budget: "|Id|^2 |L| |M|",
        variant: false,
        scope: majed_scope,
        evaluate: lem_majed,
    },
    Property {
        id: "PROP_SPLIT",
        statement: "M faithful multiplication, I f.g. faithful multiplication ideal, IN weakly J: I weakly J-ideal or N weakly J",
        budget: "|Id| |L|",
        variant: false,
        scope: majed_scope,
        evaluate: prop_split,
    },
    Property {
        id: "PROP_RESIDUAL",
        statement: "M f.g. faithful multiplication: (1) N weakly J, I faithful, (N :_M I) proper gives (N :_M I) weakly J; (2) I f.g. faithful multiplication, (N :_M I) proper: N weakly J in IM iff (N :_M I) weakly J in M",
        budget: "|Id| |L| |R||M|",
        variant: false,
        scope: residual_scope,
        evaluate: prop_residual,
    },
    Property {
        id: "PROP_NS",
        statement: "M f.g. faithful multiplication, S not inside J(R), N weakly J with (0 :_M S) ⊆ N: (N :_M S) is weakly J",
        budget: "|S-sets| |L| |R||M|",
        variant: false,
        scope: ns_scope,
        evaluate: prop_ns,
    },
    Property {
        id: "THM_MAX",
        statement: "M f.g. faithful multiplication, (0 :_M s) ⊆ N for every s outside J(R), N maximal weakly J: N is a J-submodule",
        budget: "|L|^2",
        variant: false,
        scope: max_scope,
        evaluate: thm_max,
    },
    Property {
        id: "THM_FM",
        statement: "M f.g. faithful multiplication: N weakly J iff 0 != KL ⊆ N forces K ⊆ J(M) or L ⊆ N",
        budget: "|L|^3",
        variant: false,
        scope: fm_per_proper,
        evaluate: thm_fm,
    },
    Property {
        id: "COR_CM",
        statement: "M f.g. faithful multiplication: N weakly J iff 0 != m1 m2 ⊆ N forces m1 ∈ J(M) or m2 ∈ N",
        budget: "|L| |M|^2",
        variant: false,
        scope: fm_per_proper,
        evaluate: cor_cm,
    },
    Property {
        id: "PROP_NJM",
        statement: "M f.g. faithful multiplication: weakly J lies in J(M); N, K weakly J with K not J gives NK = 0",
        budget: "|L|^2",
        variant: false,
        scope: njm_scope,
        evaluate: prop_njm,
    },
    Property {
        id: "PROP_F",
        statement: "(1) surjective φ, N weakly J containing ker φ: φ(N) weakly J; (2) injective φ, K weakly J, φ^-1(K) proper: φ^-1(K) weakly J",
        budget: "|Hom| |L|",
        variant: false,
        scope: f_scope,
        evaluate: prop_f,
    },
    Property {
        id: "COR_QUOTIENT",
        statement: "L ⊆ N: (1) N weakly J gives N/L weakly J; (2) L and N/L weakly J give N weakly J; (3) L J-submodule and N/L weakly J give N J-submodule",
        budget: "|L|^2 |R||M|",
        variant: false,
        scope: quotient_scope,
        evaluate: cor_quotient,
    },
    Property {
        id: "PROP_INT",
        statement: "intersections of two or three weakly J submodules are weakly J",
        budget: "w^3",
        variant: false,
        scope: int_scope,
        evaluate: prop_int,
    },
    Property {
        id: "PROP_SUM",
        statement: "M f.g. faithful multiplication: the sum of two weakly J submodules is weakly J",
        budget: "w^2",
        variant: false,
        scope: sum_scope,
        evaluate: prop_sum,
    },
    Property {
        id: "LEM_SMALL",
        statement: "M f.g. faithful multiplication: every weakly J submodule is small",
        budget: "|L|^2",
        variant: false,
        scope: fm_per_proper,
        evaluate: lem_small,
    },
    Property {
        id: "PROP_JP",
        statement: "in a J-presimplifiable module every weakly J submodule is a J-submodule",
        budget: "|L|",
        variant: false,
        scope: per_proper,
        evaluate: prop_jp,
    },
    Property {
        id: "PROP_D",
        statement: "N1 × ... × Nk weakly J in M1 × ... × Mk: each Ni != Mi is weakly J in Mi",
        budget: "Π|L_i| |R||M|",
        variant: false,
        scope: product_scope,
        evaluate: prop_d,
    },
    Property {
        id: "PROP_S",
        statement: "S^-1 J(R) = J(S^-1 R): (1) N weakly J with S^-1 N proper gives S^-1 N weakly J; (2) S^-1 N weakly J and S missing Z(M), Z_(J(R)M:M)(R), Z_N(M) gives N weakly J",
        budget: "|S-sets| |L|",
        variant: false,
        scope: s_scope,
        evaluate: prop_s,
    },
    Property {
        id: "PROP_WP",
        statement: "weakly primary N with (N:M) ⊆ J(R) is weakly J",
        budget: "|L| |R||M|",
        variant: false,
        scope: per_proper,
        evaluate: prop_wp,
    },
    Property {
        id: "PROP_ID",
        statement: "IM ⊆ N: (1) I(+)N weakly J-ideal gives I weakly J-ideal and N weakly J; (2) I J-ideal, N weakly J, (I:r) = 0 whenever rm = 0, r ∉ J(R), m ∉ N: I(+)N weakly J-ideal",
        budget: "|Id| |L| |R(+)M|^2",
        variant: false,
        scope: id_scope,
        evaluate: prop_id,
    },
    Property {
        id: "FACT_COLON",
        statement: "M f.g. faithful multiplication: (IM:M) = I and (IN:M) = I(N:M)",
        budget: "|Id| |L|",
        variant: false,
        scope: colon_scope,
        evaluate: fact_colon,
    },
    Property {
        id: "FACT_JM",
        statement: "M f.g. faithful multiplication: J(M) = J(R)M",
        budget: "1",
        variant: false,
        scope: jm_scope,
        evaluate: fact_jm,
    },
    Property {
        id: "FACT_IDEALIZATION",
        statement: "J(R(+)M) = J(R)(+)M; I(+)N is an ideal iff IM ⊆ N, and then its radical is √I(+)M",
        budget: "|Id| |L|",
        variant: false,
        scope: idealization_scope,
        evaluate: fact_idealization,
    },
    Property {
        id: "NK_PRESENTATION",
        statement: "M multiplication: IJM is the same for every choice of I with IM = N and J with JM = K",
        budget: "|L|^2 |Id|^2",
        variant: false,
        scope: presentation_scope,
        evaluate: nk_presentation,
    },
];

// ---- shared helpers ----

pub(crate) fn details<const K: usize>(pairs: [(&str, Value); K]) -> Details {
    assign(pairs)
}

pub(crate) fn reason(text: impl Into<String>) -> Details {
    details([("reason", Value::Text(text.into()))])
}

fn scan_pair(w: Option<ScanWitness>) -> (usize, usize) {
    match w {
        Some(ScanWitness::Scalar { r, m }) => (r, m),
        Some(ScanWitness::RingPair { a, b }) => (a, b),
        _ => (usize::MAX, usize::MAX),
    }
}

/// `None` when `set` is a weakly J submodule of `module`, otherwise the
/// reason with the least violating pair.
pub(crate) fn wj_failure(module: &FiniteModule, set: &ElemSet, label: &str) -> Option<Details> {
    if set.is_full() {
        return Some(details([
            ("reason", format!("{label} is the whole module").into()),
            (label, set.into()),
        ]));
    }
    let n = Submodule::from_set_unchecked(set.clone());
    let v = check_weakly_j_submodule(module, &n).expect("proper submodule");
    if v.holds {
        return None;
    }
    let (r, m) = scan_pair(v.witness);
    Some(details([
        ("reason", format!("{label} is not weakly J").into()),
        (label, set.into()),
        ("r", r.into()),
        ("m", m.into()),
    ]))
}

pub(crate) fn j_failure(module: &FiniteModule, set: &ElemSet, label: &str) -> Option<Details> {
    if set.is_full() {
        return Some(details([
            ("reason", format!("{label} is the whole module").into()),
            (label, set.into()),
        ]));
    }
    let n = Submodule::from_set_unchecked(set.clone());
    let v = check_j_submodule(module, &n).expect("proper submodule");
    if v.holds {
        return None;
    }
    let (r, m) = scan_pair(v.witness);
    Some(details([
        ("reason", format!("{label} is not a J-submodule").into()),
        (label, set.into()),
        ("r", r.into()),
        ("m", m.into()),
    ]))
}

fn wj_ideal_failure(ring: &FiniteRing, set: &ElemSet, label: &str) -> Option<Details> {
    if set.is_full() {
        return Some(details([
            ("reason", format!("{label} is the whole ring").into()),
            (label, set.into()),
        ]));
    }
    let i = Ideal::from_set_unchecked(set.clone());
    let v = check_weakly_j_ideal(ring, &i).expect("proper ideal");
    if v.holds {
        return None;
    }
    let (a, b) = scan_pair(v.witness);
    Some(details([
        ("reason", format!("{label} is not a weakly J-ideal").into()),
        (label, set.into()),
        ("a", a.into()),
        ("b", b.into()),
    ]))
}

fn verdict(failure: Option<Details>, checks: usize) -> Eval {
    match failure {
        Some(d) => Eval::Fail(d),
        None => Eval::Pass(checks),
    }
}

fn set_value(ctx: &Context, k: usize) -> Value {
    ctx.subs()[k].members().into()
}

fn ideal_value(ctx: &Context, i: usize) -> Value {
    ctx.ideals()[i].members().into()
}

pub(crate) fn proper_sub(ctx: &Context, a: &Assignment, key: &str) -> Result<usize> {
    let k = ctx.sub(a, key)?;
    if ctx.subs()[k].is_full() {
        return Err(Error::NotProper);
    }
    Ok(k)
}

fn part(ctx: &Context, a: &Assignment) -> Result<usize> {
    ctx.elem(a, "part")
}

pub(crate) fn fm_gate(ctx: &Context, build: impl FnOnce() -> Vec<Assignment>) -> Scope {
    let mut notes = vec![FG_NOTE.to_string()];
    if !ctx.fgfm() {
        notes.push(NOT_FM_NOTE.into());
        return Scope {
            assignments: Vec::new(),
            notes,
        };
    }
    Scope {
        assignments: build(),
        notes,
    }
}

pub(crate) fn proper_assignments(ctx: &Context) -> Vec<Assignment> {
    ctx.proper().map(|k| assign([("N", set_value(ctx, k))])).collect()
}

pub(crate) fn per_proper(ctx: &Context) -> Scope {
    proper_assignments(ctx).into()
}

fn fm_per_proper(ctx: &Context) -> Scope {
    fm_gate(ctx, || proper_assignments(ctx))
}

fn fm_per_sub(ctx: &Context) -> Scope {
    fm_gate(ctx, || {
        (0..ctx.subs().len()).map(|k| assign([("N", set_value(ctx, k))])).collect()
    })
}

fn fm_per_ideal(ctx: &Context) -> Scope {
    fm_gate(ctx, || {
        (0..ctx.ideals().len()).map(|i| assign([("I", ideal_value(ctx, i))])).collect()
    })
}

fn per_proper_ideal(ctx: &Context) -> Scope {
    (0..ctx.ideals().len())
        .filter(|&i| !ctx.ideals()[i].is_full())
        .map(|i| assign([("I", ideal_value(ctx, i))]))
        .collect::<Vec<_>>()
        .into()
}

fn jacobson_module(ctx: &Context) -> usize {
    ctx.ideal_times_module(ctx.ideal_index(ctx.ring.jacobson_radical().members()))
}

// ---- properties ----

fn def_impl(ctx: &Context, a: &Assignment) -> Result<Eval> {
    let k = proper_sub(ctx, a, "N")?;
    if !ctx.lattice.j[k] {
        return Ok(Eval::Skip);
    }
    Ok(verdict(wj_failure(&ctx.module, &ctx.subs()[k], "N"), 1))
}

fn lem_l1(ctx: &Context, a: &Assignment) -> Result<Eval> {
    let k = proper_sub(ctx, a, "N")?;
    let n = &ctx.subs()[k];
    let jm = &ctx.subs()[jacobson_module(ctx)];
    if !ctx.lattice.wj[k] || !n.is_subset(jm) || ctx.lattice.j[k] {
        return Ok(Eval::Skip);
    }
    let c = ctx.colon(k);
    let cn = ctx.action(c, k);
    if !ctx.subs()[cn].is_zero() {
        return Ok(Eval::Fail(details([
            ("reason", "(N:M)N != 0".into()),
            ("(N:M)N", set_value(ctx, cn)),
        ])));
    }
    let colon = &ctx.ideals()[c];
    let sq = ctx.ring.ideal_product(colon, colon);
    if !sq.is_subset(&ctx.module.annihilator()) {
        return Ok(Eval::Fail(details([
            ("reason", "(N:M)^2 is not inside Ann(M)".into()),
            ("(N:M)^2", sq.members().into()),
        ])));
    }
    Ok(Eval::Pass(2))
}

/// The four equivalent conditions for a proper submodule.
pub(crate) fn eq1_conditions(ctx: &Context, k: usize) -> ([bool; 4], usize) {
    let m = &ctx.module;
    let n = ctx.subs()[k].members();
    let jc = ctx.jc();
    let mut checks = 0;
    let c1 = ctx.lattice.wj[k];
    // (N:Rm) ⊆ (J(R)M:M) ∪ (0:Rm) for m ∉ N
    let zero = m.zero();
    let c2 = m.elements().filter(|&x| !n.contains(x)).all(|x| {
        checks += 1;
        let rm = m.cyclic_submodule(x);
        let colon = m.colon_subset(n, &rm);
        let ann = m.colon_subset(&zero, &rm);
        colon.is_subset(&jc.union(&ann))
    });
    // 0 != Im ⊆ N gives I ⊆ (J(R)M:M) or m ∈ N
    let c3 = ctx.ideals().iter().all(|i| {
        i.is_subset(jc)
            || m.elements().all(|x| {
                checks += 1;
                let im = m.scalar_image(i, x);
                im.is_zero() || !im.is_subset(n) || n.contains(x)
            })
    });
    // 0 != IK ⊆ N gives I ⊆ (J(R)M:M) or K ⊆ N
    let c4 = (0..ctx.ideals().len()).all(|i| {
        ctx.ideals()[i].is_subset(jc)
            || (0..ctx.subs().len()).all(|l| {
                checks += 1;
                let ik = &ctx.subs()[ctx.action(i, l)];
                ik.is_zero() || !ik.is_subset(n) || ctx.subs()[l].is_subset(n)
            })
    });
    ([c1, c2, c3, c4], checks)
}

fn thm_eq1(ctx: &Context, a: &Assignment) -> Result<Eval> {
    let k = proper_sub(ctx, a, "N")?;
    let (c, checks) = eq1_conditions(ctx, k);
    if c.iter().all(|&x| x == c[0]) {
        return Ok(Eval::Pass(checks));
    }
    Ok(Eval::Fail(details([
        ("reason", "conditions disagree".into()),
        ("weakly_j", c[0].into()),
        ("colon_condition", c[1].into()),
        ("element_condition", c[2].into()),
        ("submodule_condition", c[3].into()),
    ])))
}

fn prop_im(ctx: &Context, a: &Assignment) -> Result<Eval> {
    if !ctx.fgfm() {
        return Ok(Eval::Skip);
    }
    let i = ctx.ideal(a, "I")?;
    let im = ctx.ideal_times_module(i);
    let lhs = ctx.wj_ideal[i];
    let rhs = ctx.lattice.wj[im];
    if lhs == rhs {
        return Ok(Eval::Pass(1));
    }
    Ok(Eval::Fail(details([
        ("reason", "I weakly J-ideal and IM weakly J disagree".into()),
        ("I_weakly_j_ideal", lhs.into()),
        ("IM_weakly_j", rhs.into()),
        ("IM", set_value(ctx, im)),
    ])))
}

fn cor_nm(ctx: &Context, a: &Assignment) -> Result<Eval> {
    if !ctx.fgfm() {
        return Ok(Eval::Skip);
    }
    let k = ctx.sub(a, "N")?;
    let c1 = ctx.lattice.wj[k];
    let c2 = ctx.wj_ideal[ctx.colon(k)];
    let c3 = (0..ctx.ideals().len()).any(|i| ctx.wj_ideal[i] && ctx.ideal_times_module(i) == k);
    if c1 == c2 && c2 == c3 {
        return Ok(Eval::Pass(ctx.ideals().len() + 2));
    }
    Ok(Eval::Fail(details([
        ("reason", "conditions disagree".into()),
        ("weakly_j", c1.into()),
        ("colon_weakly_j_ideal", c2.into()),
        ("presented_by_weakly_j_ideal", c3.into()),
    ])))
}

fn lem_l2(ctx: &Context, a: &Assignment) -> Result<Eval> {
    let i = ctx.ideal(a, "I")?;
    if ctx.ideals()[i].is_full() {
        return Err(Error::IdealNotProper);
    }
    if !ctx.wj_ideal[i] {
        return Ok(Eval::Skip);
    }
    if ctx.ideals()[i].is_subset(ctx.ring.jacobson_radical()) {
        return Ok(Eval::Pass(1));
    }
    Ok(Eval::Fail(reason("weakly J-ideal not inside J(R)")))
}

fn cor_reduced(ctx: &Context, a: &Assignment) -> Result<Eval> {
    if !ctx.fgfm() {
        return Ok(Eval::Skip);
    }
    let k = proper_sub(ctx, a, "N")?;
    if !ctx.lattice.wj[k] || ctx.lattice.j[k] {
        return Ok(Eval::Skip);
    }
    let cn = ctx.action(ctx.colon(k), k);
    if !ctx.subs()[cn].is_zero() {
        return Ok(Eval::Fail(details([("reason", "(N:M)N != 0".into()), ("(N:M)N", set_value(ctx, cn))])));
    }
    let sq = ctx.product(k, k);
    if !ctx.subs()[sq].is_zero() {
        return Ok(Eval::Fail(details([("reason", "N^2 != 0".into()), ("N^2", set_value(ctx, sq))])));
    }
    if ctx.flags.reduced && !ctx.subs()[k].is_zero() {
        return Ok(Eval::Fail(reason("M reduced but N != 0")));
    }
    Ok(Eval::Pass(3))
}

fn fm_proper_by_ideal(ctx: &Context) -> Scope {
    fm_gate(ctx, || {
        let mut out = Vec::new();
        for k in ctx.proper() {
            for i in 0..ctx.ideals().len() {
                out.push(assign([("N", set_value(ctx, k)), ("I", ideal_value(ctx, i))]));
            }
        }
        out
    })
}

fn prop_pure(ctx: &Context, a: &Assignment) -> Result<Eval> {
    if !ctx.fgfm() {
        return Ok(Eval::Skip);
    }
    let k = proper_sub(ctx, a, "N")?;
    let i = ctx.ideal(a, "I")?;
    if !ctx.lattice.wj[k] || !ctx.wj_ideal[i] || !ctx.module.is_pure(&ctx.subs()[k]) {
        return Ok(Eval::Skip);
    }
    let inn = ctx.action(i, k);
    Ok(verdict(wj_failure(&ctx.module, &ctx.subs()[inn], "IN"), 1))
}

fn majed_scope(ctx: &Context) -> Scope {
    let fm = ctx.flags.faithful && ctx.flags.multiplication;
    let mut notes = vec![FG_NOTE.to_string()];
    if !fm {
        notes.push(NOT_FM_NOTE.into());
        return Scope {
            assignments: Vec::new(),
            notes,
        };
    }
    let mut out = Vec::new();
    for i in (0..ctx.ideals().len()).filter(|&i| ctx.fm_ideal(i)) {
        for k in 0..ctx.subs().len() {
            out.push(assign([("I", ideal_value(ctx, i)), ("N", set_value(ctx, k))]));
        }
    }
    Scope {
        assignments: out,
        notes,
    }
}

fn majed_hyp(ctx: &Context, a: &Assignment) -> Result<Option<(usize, usize)>> {
    let i = ctx.ideal(a, "I")?;
    let k = ctx.sub(a, "N")?;
    if !(ctx.flags.faithful && ctx.flags.multiplication) || !ctx.fm_ideal(i) {
        return Ok(None);
    }
    Ok(Some((i, k)))
}

fn lem_majed(ctx: &Context, a: &Assignment) -> Result<Eval> {
    let Some((i, k)) = majed_hyp(ctx, a)? else {
        return Ok(Eval::Skip);
    };
    let m = &ctx.module;
    let ideal = &ctx.ideals()[i];
    let inn = ctx.action(i, k);
    let back = m.residual(&ctx.subs()[inn], ideal)?;
    if &back != &ctx.subs()[k] {
        return Ok(Eval::Fail(details([
            ("reason", "(IN :_M I) != N".into()),
            ("(IN:_M I)", back.members().into()),
        ])));
    }
    let mut checks = 1;
    if ctx.subs()[k].is_subset(&ctx.subs()[ctx.ideal_times_module(i)]) {
        let res = m.residual(&ctx.subs()[k], ideal)?;
        let res_idx = ctx.sub_index(&res);
        for j in 0..ctx.ideals().len() {
            checks += 1;
            let jn = ctx.action(j, k);
            let lhs = m.residual(&ctx.subs()[jn], ideal)?;
            let rhs = &ctx.subs()[ctx.action(j, res_idx)];
            if &lhs != rhs {
                return Ok(Eval::Fail(details([
                    ("reason", "(JN :_M I) != J(N :_M I)".into()),
                    ("J", ideal_value(ctx, j)),
                    ("lhs", lhs.members().into()),
                    ("rhs", rhs.members().into()),
                ])));
            }
        }
    }
    Ok(Eval::Pass(checks))
}

fn prop_split(ctx: &Context, a: &Assignment) -> Result<Eval> {
    let Some((i, k)) = majed_hyp(ctx, a)? else {
        return Ok(Eval::Skip);
    };
    let inn = ctx.action(i, k);
    if !ctx.lattice.wj[inn] {
        return Ok(Eval::Skip);
    }
    if ctx.wj_ideal[i] || ctx.lattice.wj[k] {
        return Ok(Eval::Pass(2));
    }
    Ok(Eval::Fail(reason("neither I is a weakly J-ideal nor N weakly J")))
}

fn residual_scope(ctx: &Context) -> Scope {
    fm_gate(ctx, || {
        let mut out = Vec::new();
        for i in 0..ctx.ideals().len() {
            for k in ctx.proper() {
                out.push(assign([("part", 1.into()), ("I", ideal_value(ctx, i)), ("N", set_value(ctx, k))]));
            }
        }
        for i in (0..ctx.ideals().len()).filter(|&i| ctx.fm_ideal(i)) {
            let im = &ctx.subs()[ctx.ideal_times_module(i)];
            for k in (0..ctx.subs().len()).filter(|&k| ctx.subs()[k].is_subset(im)) {
                out.push(assign([("part", 2.into()), ("I", ideal_value(ctx, i)), ("N", set_value(ctx, k))]));
            }
        }
        out
    })
}

/// Part (1) of the residual statement, with or without requiring `I`
/// faithful.
pub(crate) fn residual_part1(ctx: &Context, a: &Assignment, need_faithful: bool) -> Result<Eval> {
    if !ctx.fgfm() {
        return Ok(Eval::Skip);
    }
    let i = ctx.ideal(a, "I")?;
    let k = proper_sub(ctx, a, "N")?;
    let ideal = &ctx.ideals()[i];
    if need_faithful && !ctx.ring.annihilator(ideal)?.is_zero() {
        return Ok(Eval::Skip);
    }
    let res = ctx.module.residual(&ctx.subs()[k], ideal)?;
    if !ctx.lattice.wj[k] || res.is_full() {
        return Ok(Eval::Skip);
    }
    Ok(verdict(wj_failure(&ctx.module, &res, "(N:_M I)"), 1))
}

fn prop_residual(ctx: &Context, a: &Assignment) -> Result<Eval> {
    match part(ctx, a)? {
        1 => residual_part1(ctx, a, true),
        2 => {
            if !ctx.fgfm() {
                return Ok(Eval::Skip);
            }
            let i = ctx.ideal(a, "I")?;
            let k = ctx.sub(a, "N")?;
            if !ctx.fm_ideal(i) {
                return Ok(Eval::Skip);
            }
            let ideal = &ctx.ideals()[i];
            let im = ctx.ideal_times_module(i);
            if !ctx.subs()[k].is_subset(&ctx.subs()[im]) {
                return Err(Error::NotASubmodule("N is not inside IM".into()));
            }
            let res = ctx.module.residual(&ctx.subs()[k], ideal)?;
            if res.is_full() {
                return Ok(Eval::Skip);
            }
            let inc = ctx.inclusion(im)?;
            let inner = inc.inclusion.preimage(&ctx.subs()[k]);
            let lhs = inc.lattice.weakly_j(&inner);
            let rhs = ctx.lattice.weakly_j(&res);
            if lhs == rhs {
                return Ok(Eval::Pass(2));
            }
            Ok(Eval::Fail(details([
                ("reason", "N weakly J in IM and (N:_M I) weakly J in M disagree".into()),
                ("N_in_IM", lhs.into()),
                ("residual_in_M", rhs.into()),
            ])))
        }
        p => Err(Error::Parse(format!("no part {p}"))),
    }
}

/// Singletons outside J(R), instance subsets, and multiplicative sets,
/// keeping those not inside J(R).
pub(crate) fn ns_sets(ctx: &Context) -> Vec<ElemSet> {
    let r = &ctx.ring;
    let jr = r.jacobson_radical();
    let mut sets: Vec<ElemSet> = r
        .elements()
        .filter(|&s| !jr.contains(s))
        .map(|s| ElemSet::singleton(r.order(), s))
        .chain(ctx.subsets.iter().cloned())
        .chain(ctx.multiplicative_sets())
        .filter(|s| !s.is_subset(jr))
        .collect();
    sets.sort();
    sets.dedup();
    sets
}

fn ns_scope(ctx: &Context) -> Scope {
    fm_gate(ctx, || {
        let mut out = Vec::new();
        for s in ns_sets(ctx) {
            for k in ctx.proper() {
                out.push(assign([("S", (&s).into()), ("N", set_value(ctx, k))]));
            }
        }
        out
    })
}

fn prop_ns(ctx: &Context, a: &Assignment) -> Result<Eval> {
    if !ctx.fgfm() {
        return Ok(Eval::Skip);
    }
    let s = ctx.set_in(a, "S", ctx.ring.order())?;
    let k = proper_sub(ctx, a, "N")?;
    let m = &ctx.module;
    if s.is_subset(ctx.ring.jacobson_radical()) || !ctx.lattice.wj[k] {
        return Ok(Eval::Skip);
    }
    let n = &ctx.subs()[k];
    if !m.residual(&m.zero(), &s)?.is_subset(n) {
        return Ok(Eval::Skip);
    }
    let res = m.residual(n, &s)?;
    Ok(verdict(wj_failure(m, &res, "(N:_M S)"), 1))
}

/// `(0 :_M s) ⊆ N` for every `s ∉ J(R)`.
pub(crate) fn annihilators_inside(ctx: &Context, k: usize) -> bool {
    let n = &ctx.subs()[k];
    let jr = ctx.ring.jacobson_radical();
    ctx.ring
        .elements()
        .filter(|&s| !jr.contains(s))
        .all(|s| ctx.module.elements().all(|x| ctx.module.act(s, x) != 0 || n.contains(x)))
}

fn max_scope(ctx: &Context) -> Scope {
    let mut s = fm_per_proper(ctx);
    s.notes.push("(0 :_M S) ⊆ N for all S ⊄ J(R) checked through singletons s ∉ J(R)".into());
    s
}

fn thm_max(ctx: &Context, a: &Assignment) -> Result<Eval> {
    if !ctx.fgfm() {
        return Ok(Eval::Skip);
    }
    let k = proper_sub(ctx, a, "N")?;
    if !ctx.lattice.wj[k] || !annihilators_inside(ctx, k) {
        return Ok(Eval::Skip);
    }
    let n = &ctx.subs()[k];
    let larger = (0..ctx.subs().len()).any(|l| ctx.lattice.wj[l] && n.is_strict_subset(&ctx.subs()[l]));
    if larger {
        return Ok(Eval::Skip);
    }
    Ok(verdict(j_failure(&ctx.module, n, "N"), 1))
}

fn thm_fm(ctx: &Context, a: &Assignment) -> Result<Eval> {
    if !ctx.fgfm() {
        return Ok(Eval::Skip);
    }
    let k = proper_sub(ctx, a, "N")?;
    let n = &ctx.subs()[k];
    let jm = ctx.module.jacobson();
    let count = ctx.subs().len();
    let mut checks = 0;
    let c2 = (0..count).all(|x| {
        ctx.subs()[x].is_subset(jm)
            || (0..count).all(|y| {
                checks += 1;
                let p = &ctx.subs()[ctx.product(x, y)];
                p.is_zero() || !p.is_subset(n) || ctx.subs()[y].is_subset(n)
            })
    });
    let c1 = ctx.lattice.wj[k];
    if c1 == c2 {
        return Ok(Eval::Pass(checks));
    }
    Ok(Eval::Fail(details([
        ("reason", "conditions disagree".into()),
        ("weakly_j", c1.into()),
        ("product_condition", c2.into()),
    ])))
}

fn cor_cm(ctx: &Context, a: &Assignment) -> Result<Eval> {
    if !ctx.fgfm() {
        return Ok(Eval::Skip);
    }
    let k = proper_sub(ctx, a, "N")?;
    let n = &ctx.subs()[k];
    let jm = ctx.module.jacobson();
    let m = &ctx.module;
    let mut checks = 0;
    let c2 = m.elements().all(|x| {
        jm.contains(x)
            || m.elements().all(|y| {
                checks += 1;
                let p = &ctx.subs()[ctx.product(ctx.cyclic(x), ctx.cyclic(y))];
                p.is_zero() || !p.is_subset(n) || n.contains(y)
            })
    });
    let c1 = ctx.lattice.wj[k];
    if c1 == c2 {
        return Ok(Eval::Pass(checks));
    }
    Ok(Eval::Fail(details([
        ("reason", "conditions disagree".into()),
        ("weakly_j", c1.into()),
        ("element_condition", c2.into()),
    ])))
}

fn njm_scope(ctx: &Context) -> Scope {
    fm_gate(ctx, || {
        let mut out = proper_assignments(ctx);
        for a in out.iter_mut() {
            a.insert("part".into(), 1.into());
        }
        for k in ctx.proper() {
            for l in ctx.proper() {
                out.push(assign([("part", 2.into()), ("N", set_value(ctx, k)), ("K", set_value(ctx, l))]));
            }
        }
        out
    })
}

fn prop_njm(ctx: &Context, a: &Assignment) -> Result<Eval> {
    if !ctx.fgfm() {
        return Ok(Eval::Skip);
    }
    let k = proper_sub(ctx, a, "N")?;
    match part(ctx, a)? {
        1 => {
            if !ctx.lattice.wj[k] {
                return Ok(Eval::Skip);
            }
            if ctx.subs()[k].is_subset(ctx.module.jacobson()) {
                Ok(Eval::Pass(1))
            } else {
                Ok(Eval::Fail(reason("N is not inside J(M)")))
            }
        }
        2 => {
            let l = proper_sub(ctx, a, "K")?;
            if !ctx.lattice.wj[k] || !ctx.lattice.wj[l] || ctx.lattice.j[l] {
                return Ok(Eval::Skip);
            }
            let p = ctx.product(k, l);
            if ctx.subs()[p].is_zero() {
                Ok(Eval::Pass(1))
            } else {
                Ok(Eval::Fail(details([("reason", "NK != 0".into()), ("NK", set_value(ctx, p))])))
            }
        }
        p => Err(Error::Parse(format!("no part {p}"))),
    }
}

fn hom_assignment(ctx: &Context, h: usize) -> Assignment {
    let e = &ctx.homs().0[h];
    let mut a = assign([
        ("hom", h.into()),
        ("kind", e.kind.name().into()),
        ("map", e.hom.map().to_vec().into()),
    ]);
    if let Some(l) = e.l {
        a.insert("L".into(), set_value(ctx, l));
    }
    a
}

fn f_scope(ctx: &Context) -> Scope {
    let (homs, notes) = ctx.homs();
    let mut out = Vec::new();
    for (h, e) in homs.iter().enumerate() {
        let Ok((src, tgt)) = ctx.hom_lattices(e.kind, e.l) else { continue };
        if e.hom.is_surjective() {
            for n in src.subs().iter().filter(|n| !n.is_full()) {
                let mut a = hom_assignment(ctx, h);
                a.insert("part".into(), 1.into());
                a.insert("N".into(), n.members().into());
                out.push(a);
            }
        }
        if e.hom.is_injective() {
            for k in tgt.subs().iter().filter(|k| !k.is_full()) {
                let mut a = hom_assignment(ctx, h);
                a.insert("part".into(), 2.into());
                a.insert("K".into(), k.members().into());
                out.push(a);
            }
        }
    }
    Scope {
        assignments: out,
        notes: notes.clone(),
    }
}

/// Rebuilds the hom named by an assignment, reusing the cached one when
/// the recorded index still matches.
pub(crate) fn resolve_hom(ctx: &Context, a: &Assignment) -> Result<(HomKind, Option<usize>, ModuleHom)> {
    let kind = HomKind::parse(ctx.text(a, "kind")?)?;
    let l = match kind {
        HomKind::Endo => None,
        _ => Some(ctx.sub(a, "L")?),
    };
    let map = ctx.list(a, "map")?;
    if let Ok(h) = ctx.elem(a, "hom") {
        if let Some(e) = ctx.homs().0.get(h) {
            if e.kind == kind && e.l == l && e.hom.map() == map {
                return Ok((kind, l, e.hom.clone()));
            }
        }
    }
    let (src, tgt) = ctx.hom_lattices(kind, l)?;
    let hom = ModuleHom::new(src.module.clone(), tgt.module.clone(), map.to_vec())?;
    Ok((kind, l, hom))
}

fn prop_f(ctx: &Context, a: &Assignment) -> Result<Eval> {
    let (kind, l, hom) = resolve_hom(ctx, a)?;
    let (src, tgt) = ctx.hom_lattices(kind, l)?;
    match part(ctx, a)? {
        1 => {
            let n = ctx.set_in(a, "N", src.module.order())?;
            if !hom.is_surjective() || !src.weakly_j(&n) || !hom.kernel().is_subset(&n) {
                return Ok(Eval::Skip);
            }
            Ok(verdict(wj_failure(&tgt.module, &hom.image(&n), "φ(N)"), 1))
        }
        2 => {
            let k = ctx.set_in(a, "K", tgt.module.order())?;
            if !hom.is_injective() || !tgt.weakly_j(&k) {
                return Ok(Eval::Skip);
            }
            let pre = hom.preimage(&k);
            if pre.is_full() {
                return Ok(Eval::Skip);
            }
            Ok(verdict(wj_failure(&src.module, &pre, "φ^-1(K)"), 1))
        }
        p => Err(Error::Parse(format!("no part {p}"))),
    }
}

fn quotient_scope(ctx: &Context) -> Scope {
    let mut out = Vec::new();
    for p in 1..=3usize {
        for l in ctx.proper() {
            for k in ctx.proper() {
                if ctx.subs()[l].is_subset(&ctx.subs()[k]) {
                    out.push(assign([("part", p.into()), ("L", set_value(ctx, l)), ("N", set_value(ctx, k))]));
                }
            }
        }
    }
    out.into()
}

fn cor_quotient(ctx: &Context, a: &Assignment) -> Result<Eval> {
    let l = proper_sub(ctx, a, "L")?;
    let k = proper_sub(ctx, a, "N")?;
    if !ctx.subs()[l].is_subset(&ctx.subs()[k]) {
        return Err(Error::NotASubmodule("L is not inside N".into()));
    }
    let q = ctx.quotient(l)?;
    let nl = q.projection.image(&ctx.subs()[k]);
    let quotient_wj = q.lattice.weakly_j(&nl);
    match part(ctx, a)? {
        1 => {
            if !ctx.lattice.wj[k] {
                return Ok(Eval::Skip);
            }
            Ok(verdict(wj_failure(&q.lattice.module, &nl, "N/L"), 1))
        }
        2 => {
            if !ctx.lattice.wj[l] || !quotient_wj {
                return Ok(Eval::Skip);
            }
            Ok(verdict(wj_failure(&ctx.module, &ctx.subs()[k], "N"), 1))
        }
        3 => {
            if !ctx.lattice.j[l] || !quotient_wj {
                return Ok(Eval::Skip);
            }
            Ok(verdict(j_failure(&ctx.module, &ctx.subs()[k], "N"), 1))
        }
        p => Err(Error::Parse(format!("no part {p}"))),
    }
}

fn wj_indices(ctx: &Context) -> Vec<usize> {
    ctx.proper().filter(|&k| ctx.lattice.wj[k]).collect()
}

fn int_scope(ctx: &Context) -> Scope {
    let w = wj_indices(ctx);
    let mut out = Vec::new();
    for (x, &i) in w.iter().enumerate() {
        for (y, &j) in w.iter().enumerate().skip(x + 1) {
            out.push(assign([("N1", set_value(ctx, i)), ("N2", set_value(ctx, j))]));
            for &k in w.iter().skip(y + 1) {
                out.push(assign([
                    ("N1", set_value(ctx, i)),
                    ("N2", set_value(ctx, j)),
                    ("N3", set_value(ctx, k)),
                ]));
            }
        }
    }
    out.into()
}

fn prop_int(ctx: &Context, a: &Assignment) -> Result<Eval> {
    let keys: Vec<&str> = ["N1", "N2", "N3"].into_iter().filter(|k| a.contains_key(*k)).collect();
    let mut acc = ctx.module.whole().into_set();
    for key in keys {
        let k = proper_sub(ctx, a, key)?;
        if !ctx.lattice.wj[k] {
            return Ok(Eval::Skip);
        }
        acc = acc.intersection(&ctx.subs()[k]);
    }
    Ok(verdict(wj_failure(&ctx.module, &acc, "intersection"), 1))
}

pub(crate) fn pair_scope(ctx: &Context) -> Vec<Assignment> {
    let w = wj_indices(ctx);
    let mut out = Vec::new();
    for (x, &i) in w.iter().enumerate() {
        for &j in w.iter().skip(x + 1) {
            out.push(assign([("N1", set_value(ctx, i)), ("N2", set_value(ctx, j))]));
        }
    }
    out
}

fn sum_scope(ctx: &Context) -> Scope {
    fm_gate(ctx, || pair_scope(ctx))
}

pub(crate) fn sum_of_pair(ctx: &Context, a: &Assignment) -> Result<Eval> {
    let i = proper_sub(ctx, a, "N1")?;
    let j = proper_sub(ctx, a, "N2")?;
    if !ctx.lattice.wj[i] || !ctx.lattice.wj[j] {
        return Ok(Eval::Skip);
    }
    let s = ctx.module.sum(&ctx.subs()[i], &ctx.subs()[j]);
    Ok(verdict(wj_failure(&ctx.module, &s, "N1+N2"), 1))
}

fn prop_sum(ctx: &Context, a: &Assignment) -> Result<Eval> {
    if !ctx.fgfm() {
        return Ok(Eval::Skip);
    }
    sum_of_pair(ctx, a)
}

fn lem_small(ctx: &Context, a: &Assignment) -> Result<Eval> {
    if !ctx.fgfm() {
        return Ok(Eval::Skip);
    }
    let k = proper_sub(ctx, a, "N")?;
    if !ctx.lattice.wj[k] {
        return Ok(Eval::Skip);
    }
    let n = &ctx.subs()[k];
    let bad = ctx
        .subs()
        .iter()
        .find(|other| !other.is_full() && ctx.module.sum(n, other).is_full());
    Ok(match bad {
        Some(other) => Eval::Fail(details([
            ("reason", "N + K = M with K proper".into()),
            ("K", other.members().into()),
        ])),
        None => Eval::Pass(ctx.subs().len()),
    })
}

fn prop_jp(ctx: &Context, a: &Assignment) -> Result<Eval> {
    let k = proper_sub(ctx, a, "N")?;
    if !ctx.lattice.wj[k] || !check_j_presimplifiable(&ctx.module).holds {
        return Ok(Eval::Skip);
    }
    Ok(verdict(j_failure(&ctx.module, &ctx.subs()[k], "N"), 1))
}

fn product_scope(ctx: &Context) -> Scope {
    let factors = ctx.module.factors();
    if factors.len() < 2 {
        return Scope {
            assignments: Vec::new(),
            notes: vec!["module is not a product".into()],
        };
    }
    let mut out: Vec<Assignment> = vec![Assignment::new()];
    for (i, f) in factors.iter().enumerate() {
        let key = format!("N{}", i + 1);
        let mut next = Vec::new();
        for a in &out {
            for n in f.submodules() {
                let mut b = a.clone();
                b.insert(key.clone(), n.members().into());
                next.push(b);
            }
        }
        out = next;
    }
    out.into()
}

/// The factor submodules of a product assignment and their product set.
pub(crate) fn product_parts(ctx: &Context, a: &Assignment) -> Result<(Vec<ElemSet>, ElemSet)> {
    let factors = ctx.module.factors();
    if factors.len() < 2 {
        return Err(Error::ModuleAxiom("module is not a product".into()));
    }
    let mut parts = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        let set = ctx.set_in(a, &format!("N{}", i + 1), f.order())?;
        if !f.is_submodule(&set) {
            return Err(Error::NotASubmodule(set.to_string()));
        }
        parts.push(set);
    }
    let lists: Vec<Vec<usize>> = parts.iter().map(|p| p.to_vec()).collect();
    let mut product = ElemSet::empty(ctx.module.order());
    let mut idx = vec![0usize; lists.len()];
    loop {
        let tuple: Vec<usize> = idx.iter().zip(&lists).map(|(&i, l)| l[i]).collect();
        product.insert(ctx.module.encode_tuple(&tuple));
        let mut d = lists.len();
        loop {
            if d == 0 {
                return Ok((parts, product));
            }
            d -= 1;
            idx[d] += 1;
            if idx[d] < lists[d].len() {
                break;
            }
            idx[d] = 0;
        }
    }
}

fn prop_d(ctx: &Context, a: &Assignment) -> Result<Eval> {
    let (parts, product) = product_parts(ctx, a)?;
    if product.is_full() || !ctx.lattice.weakly_j(&product) {
        return Ok(Eval::Skip);
    }
    let mut checks = 0;
    for (i, (f, p)) in ctx.module.factors().iter().zip(&parts).enumerate() {
        if p.is_full() {
            continue;
        }
        checks += 1;
        if let Some(mut d) = wj_failure(f, p, "Ni") {
            d.insert("factor".into(), (i + 1).into());
            return Ok(Eval::Fail(d));
        }
    }
    Ok(Eval::Pass(checks))
}

fn s_scope(ctx: &Context) -> Scope {
    let locs = ctx.localizations();
    let good = locs.iter().filter(|d| d.jacobson_extends).count();
    let mut out = Vec::new();
    for d in locs.iter().filter(|d| d.jacobson_extends) {
        for p in 1..=2usize {
            for k in ctx.proper() {
                out.push(assign([("part", p.into()), ("S", (&d.set).into()), ("N", set_value(ctx, k))]));
            }
        }
    }
    Scope {
        assignments: out,
        notes: vec![format!("{good} of {} multiplicative sets satisfy S^-1 J(R) = J(S^-1 R)", locs.len())],
    }
}

fn prop_s(ctx: &Context, a: &Assignment) -> Result<Eval> {
    let s = ctx.set_in(a, "S", ctx.ring.order())?;
    let k = proper_sub(ctx, a, "N")?;
    let Some(d) = ctx.localization(&s) else {
        return Err(Error::NotMultiplicativelyClosed);
    };
    if !d.jacobson_extends {
        return Ok(Eval::Skip);
    }
    let n = &ctx.subs()[k];
    let sn = d.module.extend_submodule(n);
    match part(ctx, a)? {
        1 => {
            if !ctx.lattice.wj[k] || sn.is_full() {
                return Ok(Eval::Skip);
            }
            Ok(verdict(wj_failure(&d.lattice.module, &sn, "S^-1 N"), 1))
        }
        2 => {
            if !d.lattice.weakly_j(&sn) {
                return Ok(Eval::Skip);
            }
            let m = &ctx.module;
            let zm = m.zero_divisors();
            let zj = ctx.ring.zero_divisors_mod(ctx.jc());
            let zn = m.zero_divisors_mod(n);
            if s.iter().any(|x| zm.contains(x) || zj.contains(x) || zn.contains(x)) {
                return Ok(Eval::Skip);
            }
            Ok(verdict(wj_failure(m, n, "N"), 1))
        }
        p => Err(Error::Parse(format!("no part {p}"))),
    }
}

fn prop_wp(ctx: &Context, a: &Assignment) -> Result<Eval> {
    let k = proper_sub(ctx, a, "N")?;
    let n = &ctx.subs()[k];
    if !ctx.ideals()[ctx.colon(k)].is_subset(ctx.ring.jacobson_radical()) {
        return Ok(Eval::Skip);
    }
    if !check_classical(&ctx.module, n, ClassicalKind::WeaklyPrimary)?.holds {
        return Ok(Eval::Skip);
    }
    Ok(verdict(wj_failure(&ctx.module, n, "N"), 1))
}

/// Pairs `(r, m)` with `rm = 0`, `r ∉ J(R)`, `m ∉ N`, split by whether
/// `(I : r) = 0`.
fn id_condition(ctx: &Context, i: usize, k: usize) -> Result<(usize, usize)> {
    let r = &ctx.ring;
    let jr = r.jacobson_radical();
    let n = &ctx.subs()[k];
    let ideal = &ctx.ideals()[i];
    let mut zero = 0;
    let mut nonzero = 0;
    for x in r.elements().filter(|&x| !jr.contains(x)) {
        let bad = ctx.module.elements().any(|m| ctx.module.act(x, m) == 0 && !n.contains(m));
        if !bad {
            continue;
        }
        if r.colon(ideal, &r.principal(x))?.is_zero() {
            zero += 1;
        } else {
            nonzero += 1;
        }
    }
    Ok((zero, nonzero))
}

fn id_scope(ctx: &Context) -> Scope {
    let Some(_) = ctx.idealization() else {
        return Scope {
            assignments: Vec::new(),
            notes: vec![format!("R(+)M exceeds order {}", super::IDEALIZATION_MAX_ORDER)],
        };
    };
    let mut out = Vec::new();
    let mut differ = 0;
    for p in 1..=2usize {
        for i in 0..ctx.ideals().len() {
            let im = &ctx.subs()[ctx.ideal_times_module(i)];
            for k in ctx.proper() {
                if !im.is_subset(&ctx.subs()[k]) {
                    continue;
                }
                if p == 2 && ctx.j_ideal[i] && ctx.lattice.wj[k] {
                    if let Ok((zero, nonzero)) = id_condition(ctx, i, k) {
                        if zero > 0 && nonzero > 0 {
                            differ += 1;
                        }
                    }
                }
                out.push(assign([("part", p.into()), ("I", ideal_value(ctx, i)), ("N", set_value(ctx, k))]));
            }
        }
    }
    let mut notes = vec!["part (2) reads the (I:r) condition as: for all such (r, m)".to_string()];
    if differ > 0 {
        notes.push(format!("for-all and exists readings differ on {differ} (I, N) pairs"));
    }
    Scope {
        assignments: out,
        notes,
    }
}

fn prop_id(ctx: &Context, a: &Assignment) -> Result<Eval> {
    let Some(id) = ctx.idealization() else {
        return Ok(Eval::Skip);
    };
    let i = ctx.ideal(a, "I")?;
    let k = proper_sub(ctx, a, "N")?;
    let ideal = &ctx.ideals()[i];
    let n = &ctx.subs()[k];
    let pair = id.construction.ideal(ideal, n)?;
    let pair_wj = id.weakly_j_ideal(&pair);
    match part(ctx, a)? {
        1 => {
            if !pair_wj {
                return Ok(Eval::Skip);
            }
            if let Some(d) = wj_ideal_failure(&ctx.ring, ideal, "I") {
                return Ok(Eval::Fail(d));
            }
            Ok(verdict(wj_failure(&ctx.module, n, "N"), 2))
        }
        2 => {
            if !ctx.j_ideal[i] || !ctx.lattice.wj[k] {
                return Ok(Eval::Skip);
            }
            let (_, nonzero) = id_condition(ctx, i, k)?;
            if nonzero > 0 {
                return Ok(Eval::Skip);
            }
            Ok(verdict(wj_ideal_failure(id.construction.ring(), &pair, "I(+)N"), 1))
        }
        p => Err(Error::Parse(format!("no part {p}"))),
    }
}

fn colon_scope(ctx: &Context) -> Scope {
    fm_gate(ctx, || {
        let mut out = Vec::new();
        for i in 0..ctx.ideals().len() {
            out.push(assign([("part", 1.into()), ("I", ideal_value(ctx, i))]));
        }
        for i in 0..ctx.ideals().len() {
            for k in ctx.proper() {
                out.push(assign([("part", 2.into()), ("I", ideal_value(ctx, i)), ("N", set_value(ctx, k))]));
            }
        }
        out
    })
}

fn fact_colon(ctx: &Context, a: &Assignment) -> Result<Eval> {
    if !ctx.fgfm() {
        return Ok(Eval::Skip);
    }
    let i = ctx.ideal(a, "I")?;
    match part(ctx, a)? {
        1 => {
            let back = ctx.colon(ctx.ideal_times_module(i));
            if back == i {
                Ok(Eval::Pass(1))
            } else {
                Ok(Eval::Fail(details([("reason", "(IM:M) != I".into()), ("(IM:M)", ideal_value(ctx, back))])))
            }
        }
        2 => {
            let k = proper_sub(ctx, a, "N")?;
            let lhs = ctx.colon(ctx.action(i, k));
            let rhs = ctx.ring.ideal_product(&ctx.ideals()[i], &ctx.ideals()[ctx.colon(k)]);
            if ctx.ideals()[lhs] == rhs {
                Ok(Eval::Pass(1))
            } else {
                Ok(Eval::Fail(details([
                    ("reason", "(IN:M) != I(N:M)".into()),
                    ("(IN:M)", ideal_value(ctx, lhs)),
                    ("I(N:M)", rhs.members().into()),
                ])))
            }
        }
        p => Err(Error::Parse(format!("no part {p}"))),
    }
}

fn jm_scope(ctx: &Context) -> Scope {
    fm_gate(ctx, || vec![Assignment::new()])
}

fn fact_jm(ctx: &Context, _a: &Assignment) -> Result<Eval> {
    if !ctx.fgfm() {
        return Ok(Eval::Skip);
    }
    let jm = ctx.module.jacobson();
    let jrm = &ctx.subs()[jacobson_module(ctx)];
    if jm == jrm {
        return Ok(Eval::Pass(1));
    }
    Ok(Eval::Fail(details([
        ("reason", "J(M) != J(R)M".into()),
        ("J(M)", jm.members().into()),
        ("J(R)M", jrm.members().into()),
    ])))
}

fn idealization_scope(ctx: &Context) -> Scope {
    if ctx.idealization().is_none() {
        return Scope {
            assignments: Vec::new(),
            notes: vec![format!("R(+)M exceeds order {}", super::IDEALIZATION_MAX_ORDER)],
        };
    }
    let mut out = vec![assign([("part", 1.into())])];
    for i in 0..ctx.ideals().len() {
        for k in 0..ctx.subs().len() {
            out.push(assign([("part", 2.into()), ("I", ideal_value(ctx, i)), ("N", set_value(ctx, k))]));
        }
    }
    out.into()
}

fn fact_idealization(ctx: &Context, a: &Assignment) -> Result<Eval> {
    let Some(id) = ctx.idealization() else {
        return Ok(Eval::Skip);
    };
    let c = &id.construction;
    match part(ctx, a)? {
        1 => {
            let actual = c.ring().checked_jacobson()?;
            if actual == c.expected_jacobson() {
                Ok(Eval::Pass(1))
            } else {
                Ok(Eval::Fail(details([("reason", "J(R(+)M) != J(R)(+)M".into()), ("J", actual.members().into())])))
            }
        }
        2 => {
            let i = ctx.ideal(a, "I")?;
            let k = ctx.sub(a, "N")?;
            let ideal = &ctx.ideals()[i];
            let n = &ctx.subs()[k];
            let condition = ctx.subs()[ctx.ideal_times_module(i)].is_subset(n);
            let is_ideal = c.ring().is_ideal(&c.product_set(ideal, n));
            if condition != is_ideal {
                return Ok(Eval::Fail(details([
                    ("reason", "I(+)N ideal and IM ⊆ N disagree".into()),
                    ("is_ideal", is_ideal.into()),
                    ("IM_inside_N", condition.into()),
                ])));
            }
            if is_ideal {
                if let Err(e) = c.ideal(ideal, n) {
                    return Ok(Eval::Fail(reason(e.to_string())));
                }
            }
            Ok(Eval::Pass(2))
        }
        p => Err(Error::Parse(format!("no part {p}"))),
    }
}

fn presentation_scope(ctx: &Context) -> Scope {
    if !ctx.flags.multiplication {
        return Scope {
            assignments: Vec::new(),
            notes: vec!["module is not multiplication".into()],
        };
    }
    if ctx.ring.order() > PRESENTATION_MAX_RING {
        return Scope {
            assignments: Vec::new(),
            notes: vec![format!("ring order above {PRESENTATION_MAX_RING}")],
        };
    }
    let n = ctx.subs().len();
    let mut out = Vec::new();
    for k in 0..n {
        for l in 0..n {
            out.push(assign([("N", set_value(ctx, k)), ("K", set_value(ctx, l))]));
        }
    }
    out.into()
}

fn nk_presentation(ctx: &Context, a: &Assignment) -> Result<Eval> {
    if !ctx.flags.multiplication || ctx.ring.order() > PRESENTATION_MAX_RING {
        return Ok(Eval::Skip);
    }
    let k = ctx.sub(a, "N")?;
    let l = ctx.sub(a, "K")?;
    let canonical = ctx.product(k, l);
    let pres = |x: usize| -> Vec<usize> {
        (0..ctx.ideals().len()).filter(|&i| ctx.ideal_times_module(i) == x).collect()
    };
    let mut checks = 0;
    for i in pres(k) {
        for j in pres(l) {
            checks += 1;
            let ij = ctx.ring.ideal_product(&ctx.ideals()[i], &ctx.ideals()[j]);
            let p = ctx.ideal_times_module(ctx.ideal_index(ij.members()));
            if p != canonical {
                return Ok(Eval::Fail(details([
                    ("reason", "product depends on the presentation".into()),
                    ("I", ideal_value(ctx, i)),
                    ("J", ideal_value(ctx, j)),
                    ("IJM", set_value(ctx, p)),
                ])));
            }
        }
    }
    Ok(Eval::Pass(checks))
}
