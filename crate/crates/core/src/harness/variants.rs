//! Weakened statements, each missing one hypothesis of a registered
//! property. They are expected to fail and `hunt` looks for where.

use crate::error::Result;
use crate::predicates::{check_classical, ClassicalKind};

use super::registry::{
    details, fm_gate, j_failure, pair_scope, per_proper, product_parts, proper_sub, residual_part1, sum_of_pair,
    wj_failure,
};
use super::{assign, Assignment, Context, Eval, Property, Scope};

pub fn variants() -> &'static [Property] {
    &VARIANTS
}

static VARIANTS: [Property; 6] = [
    Property {
        id: "V1",
        statement: "every weakly J submodule is a J-submodule",
        budget: "|L| |R||M|",
        variant: true,
        scope: per_proper,
        evaluate: v1,
    },
    Property {
        id: "V2",
        statement: "a product of weakly J factor submodules is weakly J",
        budget: "Π|L_i| |R||M|",
        variant: true,
        scope: v2_scope,
        evaluate: v2,
    },
    Property {
        id: "V3",
        statement: "every weakly primary submodule is weakly J",
        budget: "|L| |R||M|",
        variant: true,
        scope: per_proper,
        evaluate: v3,
    },
    Property {
        id: "V4",
        statement: "N weakly J inside J(R)M gives (N:M)N = 0",
        budget: "|L|",
        variant: true,
        scope: per_proper,
        evaluate: v4,
    },
    Property {
        id: "V5",
        statement: "M f.g. faithful multiplication, N weakly J, (N :_M I) proper: (N :_M I) is weakly J, for any ideal I",
        budget: "|Id| |L| |R||M|",
        variant: true,
        scope: v5_scope,
        evaluate: v5,
    },
    Property {
        id: "V6",
        statement: "the sum of two weakly J submodules is weakly J",
        budget: "w^2",
        variant: true,
        scope: v6_scope,
        evaluate: sum_of_pair,
    },
];

fn v1(ctx: &Context, a: &Assignment) -> Result<Eval> {
    let k = proper_sub(ctx, a, "N")?;
    if !ctx.lattice.wj[k] {
        return Ok(Eval::Skip);
    }
    Ok(match j_failure(&ctx.module, &ctx.subs()[k], "N") {
        Some(d) => Eval::Fail(d),
        None => Eval::Pass(1),
    })
}

fn v2_scope(ctx: &Context) -> Scope {
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
            for n in f.submodules().iter().filter(|n| !n.is_full()) {
                let mut b = a.clone();
                b.insert(key.clone(), n.members().into());
                next.push(b);
            }
        }
        out = next;
    }
    out.into()
}

fn v2(ctx: &Context, a: &Assignment) -> Result<Eval> {
    let (parts, product) = product_parts(ctx, a)?;
    for (f, p) in ctx.module.factors().iter().zip(&parts) {
        if p.is_full() || wj_failure(f, p, "Ni").is_some() {
            return Ok(Eval::Skip);
        }
    }
    Ok(match wj_failure(&ctx.module, &product, "N") {
        Some(d) => Eval::Fail(d),
        None => Eval::Pass(1),
    })
}

fn v3(ctx: &Context, a: &Assignment) -> Result<Eval> {
    let k = proper_sub(ctx, a, "N")?;
    let n = &ctx.subs()[k];
    if !check_classical(&ctx.module, n, ClassicalKind::WeaklyPrimary)?.holds {
        return Ok(Eval::Skip);
    }
    Ok(match wj_failure(&ctx.module, n, "N") {
        Some(d) => Eval::Fail(d),
        None => Eval::Pass(1),
    })
}

fn v4(ctx: &Context, a: &Assignment) -> Result<Eval> {
    let k = proper_sub(ctx, a, "N")?;
    let jm = ctx.module.jacobson_ring_times();
    if !ctx.lattice.wj[k] || !ctx.subs()[k].is_subset(&jm) {
        return Ok(Eval::Skip);
    }
    let cn = ctx.action(ctx.colon(k), k);
    if ctx.subs()[cn].is_zero() {
        return Ok(Eval::Pass(1));
    }
    Ok(Eval::Fail(details([
        ("reason", "(N:M)N != 0".into()),
        ("(N:M)N", ctx.subs()[cn].members().into()),
    ])))
}

fn v5_scope(ctx: &Context) -> Scope {
    fm_gate(ctx, || {
        let mut out = Vec::new();
        for i in ctx.ideals() {
            for k in ctx.proper() {
                out.push(assign([("I", i.members().into()), ("N", ctx.subs()[k].members().into())]));
            }
        }
        out
    })
}

fn v5(ctx: &Context, a: &Assignment) -> Result<Eval> {
    residual_part1(ctx, a, false)
}

fn v6_scope(ctx: &Context) -> Scope {
    pair_scope(ctx).into()
}
