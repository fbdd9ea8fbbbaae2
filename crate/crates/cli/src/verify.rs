//! Named verification suites, each a list of check reports.

use std::sync::Arc;

use anyhow::Result;
use clap::ValueEnum;
use essalg_core::catalog::Catalog;
use essalg_core::category::check_category_laws;
use essalg_core::checks::{check_green_axioms, check_group_axioms, check_morphism, CheckReport};
use essalg_core::essential::{essential_support, out_comparison, support_inclusion_check, supported};
use essalg_core::functor::{FunctorRegistry, GreenFunctor};
use essalg_core::group::{FiniteGroup, SigmaKind};
use essalg_core::morphism::{Extension, GreenMorphism, Linearization};
use essalg_core::shift::{inf_morphism, nu_dim_check, res_morphism, shift, shift_report, support_equality};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Axioms,
    Morphisms,
    Essential,
    Shift,
    All,
}

fn groups(catalog: &Catalog, n: usize) -> Vec<FiniteGroup> {
    catalog.entries().iter().filter(|e| e.group.order() <= n).map(|e| e.group.clone()).collect()
}

fn report(subject: &str, checked: usize, violations: Vec<String>) -> CheckReport {
    CheckReport {
        subject: subject.to_string(),
        checked,
        skipped: 0,
        violations,
    }
}

fn axioms(catalog: &Catalog, r: &FunctorRegistry) -> Result<Vec<CheckReport>> {
    let all = groups(catalog, catalog.complete_up_to());
    let bad: Vec<String> = all.iter().filter(|g| !check_group_axioms(g)).map(|g| format!("{} is not a group", g.label())).collect();
    let mut out = vec![report("group axioms", all.len(), bad)];
    let b = r.base("burnside")?;
    let instances: Vec<(Arc<dyn GreenFunctor>, usize)> = vec![
        (b.clone(), 4),
        (r.base("classfun:rational")?, 6),
        (r.base("classfun:ordinary")?, 6),
        (shift(b, &catalog.resolve("C2")?, "C2"), 4),
    ];
    for (f, n) in instances {
        out.push(check_green_axioms(&*f, &groups(catalog, n))?);
        out.push(check_category_laws(&f, &groups(catalog, 2))?);
    }
    Ok(out)
}

fn morphisms(catalog: &Catalog, r: &FunctorRegistry) -> Result<Vec<CheckReport>> {
    let small = groups(catalog, 4);
    let b = r.base("burnside")?;
    let (rat, ord) = (r.base("classfun:rational")?, r.base("classfun:ordinary")?);
    let mut ms: Vec<Box<dyn GreenMorphism>> = vec![
        Box::new(Linearization::new(b.clone(), rat.clone(), SigmaKind::Rational)?),
        Box::new(Linearization::new(b, ord.clone(), SigmaKind::Ordinary)?),
        Box::new(Extension::new(rat, ord)?),
    ];
    for name in r.names() {
        for g in ["C2", "C3"] {
            let sh = shift(r.base(&name)?, &catalog.resolve(g)?, g);
            ms.push(Box::new(inf_morphism(&sh)));
            ms.push(Box::new(res_morphism(&sh)));
        }
    }
    ms.iter().map(|m| Ok(check_morphism(&**m, &small, 8)?)).collect()
}

fn essential(catalog: &Catalog, r: &FunctorRegistry) -> Result<Vec<CheckReport>> {
    let b = r.base("burnside")?;
    let mut out = Vec::new();
    let mut bad = Vec::new();
    let small = groups(catalog, 6);
    for h in &small {
        let c = out_comparison(b.clone(), h, catalog)?;
        if !c.isomorphic || c.dim_essential != c.out_order {
            bad.push(format!("{}: dim {} vs |Out| {}", c.group, c.dim_essential, c.out_order));
        }
    }
    out.push(report("Burnside essential algebra vs kOut", small.len(), bad));

    // cyclic groups whose order is not 2 mod 4
    let n = catalog.complete_up_to();
    let want: Vec<String> = catalog
        .entries()
        .iter()
        .filter(|e| e.group.elements().any(|x| e.group.elem_order(x) as usize == e.group.order()) && e.group.order() % 4 != 2)
        .map(|e| e.label.clone())
        .collect();
    let got = supported(&essential_support(r.base("classfun:rational")?, catalog, Some(n))?);
    let v = if got == want { vec![] } else { vec![format!("rational support {got:?}, expected {want:?}")] };
    out.push(report("rational support", catalog.len(), v));
    let got = supported(&essential_support(r.base("classfun:ordinary")?, catalog, Some(8))?);
    let v = if got == ["1"] { vec![] } else { vec![format!("ordinary support {got:?}")] };
    out.push(report("ordinary support", 1, v));

    let (b, rat, ord) = (r.base("burnside")?, r.base("classfun:rational")?, r.base("classfun:ordinary")?);
    out.push(support_inclusion_check(&Linearization::new(b, rat.clone(), SigmaKind::Rational)?, catalog, Some(6))?);
    out.push(support_inclusion_check(&Extension::new(rat, ord)?, catalog, Some(n))?);
    Ok(out)
}

fn shifts(catalog: &Catalog, r: &FunctorRegistry) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for (base, g, max) in [("burnside", "C2", 6), ("classfun:rational", "C3", 9), ("classfun:rational", "S3", 9)] {
        let sh = shift(r.base(base)?, &catalog.resolve(g)?, g);
        out.push(support_equality(&sh, catalog, max)?);
        let rep = shift_report(&sh, catalog, max)?;
        let bad = rep
            .rows
            .iter()
            .filter(|row| !row.split_ok)
            .map(|row| format!("{}: {:?}", row.group, row.failures))
            .collect();
        out.push(report(&format!("splitting: {base} shifted by {g}"), rep.rows.len(), bad));
    }
    let mut bad = Vec::new();
    for (h, g) in [("1", "C3"), ("C3", "C4"), ("C4", "C3")] {
        let sh = shift(r.base("classfun:rational")?, &catalog.resolve(g)?, g);
        let rep = nu_dim_check(&sh, &catalog.resolve(h)?, catalog)?;
        if !rep.passed() {
            bad.push(format!("ν at ({h}, {g})"));
        }
    }
    out.push(report("ν dimensions", 3, bad));
    Ok(out)
}

pub fn run(suite: Suite, catalog: &Catalog) -> Result<Vec<CheckReport>> {
    let r = FunctorRegistry::default();
    Ok(match suite {
        Suite::Axioms => axioms(catalog, &r)?,
        Suite::Morphisms => morphisms(catalog, &r)?,
        Suite::Essential => essential(catalog, &r)?,
        Suite::Shift => shifts(catalog, &r)?,
        Suite::All => {
            let mut v = axioms(catalog, &r)?;
            v.extend(morphisms(catalog, &r)?);
            v.extend(essential(catalog, &r)?);
            v.extend(shifts(catalog, &r)?);
            v
        }
    })
}
