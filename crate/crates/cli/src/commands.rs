//! `catalog`, `essential` and `shift`.

use std::sync::Arc;

use anyhow::{bail, Result};
use essalg_core::catalog::Catalog;
use essalg_core::checks::CheckReport;
use essalg_core::essential::{essential_report, EssentialReport};
use essalg_core::functor::{FunctorRegistry, GreenFunctor, Shifted};
use essalg_core::group::{FiniteGroup, SigmaKind};
use essalg_core::shift::{nu_dim_check, seed_split, shift, split_report, support_equality, NuReport, SeedReport, ShiftRow};
use essalg_core::Error;
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::cache::{Cache, Mode};
use crate::output::{strings, Report};

/// Outcome of a command: the report and whether every invariant held.
pub struct Outcome<T: Serialize> {
    pub report: Report<T>,
    pub ok: bool,
}

/// Computes one row per group in parallel, going through the cache. In
/// check mode each cached row is compared with a fresh computation.
fn cached_rows<T, F>(cache: &Cache, kind: &str, groups: &[(String, FiniteGroup)], compute: F) -> Result<(Vec<T>, Vec<String>)>
where
    T: Serialize + DeserializeOwned + PartialEq + Send,
    F: Fn(&FiniteGroup) -> essalg_core::Result<Option<T>> + Sync,
{
    let rows: Vec<(Option<T>, bool, Option<T>)> = groups
        .par_iter()
        .map(|(label, g)| {
            let stored = cache.load::<T>(kind, label);
            if cache.mode() == Mode::ReadWrite && stored.is_some() {
                return Ok((stored, false, None));
            }
            Ok((compute(g)?, true, stored))
        })
        .collect::<essalg_core::Result<_>>()?;
    let mut out = Vec::with_capacity(rows.len());
    let mut mismatches = Vec::new();
    for ((label, _), (row, fresh, stored)) in groups.iter().zip(rows) {
        if let (Some(r), Some(s)) = (&row, &stored) {
            if r != s {
                mismatches.push(format!("cached {kind} row for {label} differs from recomputation"));
            }
        }
        if let Some(r) = row {
            if fresh {
                cache.store(kind, label, &r)?;
            }
            out.push(r);
        }
    }
    Ok((out, mismatches))
}

fn selected_groups(catalog: &Catalog, max_order: usize, group: Option<&str>) -> Result<Vec<(String, FiniteGroup)>> {
    if let Some(label) = group {
        let g = catalog.resolve(label)?;
        return Ok(vec![(catalog.display(&g), g)]);
    }
    if max_order > catalog.complete_up_to() {
        bail!("the catalog is complete only up to order {}", catalog.complete_up_to());
    }
    Ok(catalog
        .entries()
        .iter()
        .filter(|e| e.group.order() <= max_order)
        .map(|e| (e.label.clone(), e.group.clone()))
        .collect())
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CatalogRow {
    label: String,
    order: usize,
    abelian: bool,
    out_order: usize,
    conjugacy_classes: usize,
    rational_classes: usize,
}

pub fn catalog(catalog: &Catalog, max_order: usize) -> Result<Outcome<Vec<CatalogRow>>> {
    let groups = selected_groups(catalog, max_order, None)?;
    let value = groups
        .par_iter()
        .map(|(label, g)| {
            Ok(CatalogRow {
                label: label.clone(),
                order: g.order(),
                abelian: g.is_abelian(),
                out_order: g.outer_classes()?.len(),
                conjugacy_classes: g.sigma_classes(SigmaKind::Ordinary).len(),
                rational_classes: g.sigma_classes(SigmaKind::Rational).len(),
            })
        })
        .collect::<essalg_core::Result<Vec<_>>>()?;
    let rows = value
        .iter()
        .map(|r| {
            vec![
                r.label.clone(),
                r.order.to_string(),
                r.abelian.to_string(),
                r.out_order.to_string(),
                r.conjugacy_classes.to_string(),
                r.rational_classes.to_string(),
            ]
        })
        .collect();
    Ok(Outcome {
        report: Report {
            header: strings(["label", "order", "abelian", "outOrder", "conjugacyClasses", "rationalClasses"]),
            rows,
            value,
            notes: vec![],
        },
        ok: true,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EssentialRow {
    pub group: String,
    pub order: usize,
    pub report: Option<EssentialReport>,
    /// Why the group was not computed.
    pub skipped: Option<String>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EssentialOutput {
    functor: String,
    max_order: usize,
    cap: usize,
    rows: Vec<EssentialRow>,
    cache_mismatches: Vec<String>,
}

pub struct EssentialArgs<'a> {
    pub functor: &'a str,
    pub max_order: Option<usize>,
    pub group: Option<&'a str>,
    pub cap: Option<usize>,
}

pub fn essential(catalog: &Catalog, cache: &Cache, args: EssentialArgs) -> Result<Outcome<EssentialOutput>> {
    let f = FunctorRegistry::default().resolve(args.functor, catalog)?;
    let cap = args.cap.unwrap_or_else(|| f.essential_cap());
    let max_order = args.max_order.unwrap_or(cap);
    let groups = selected_groups(catalog, max_order, args.group)?;
    let kind = format!("essential:{}", f.cache_key());
    let skip = |g: &FiniteGroup, why: String| EssentialRow {
        group: catalog.display(g),
        order: g.order(),
        report: None,
        skipped: Some(why),
    };
    let (rows, mismatches) = cached_rows(&cache_or_off(cache, &f), &kind, &groups, |g| {
        if g.order() > cap {
            return Ok(Some(skip(g, format!("beyond cap {cap}"))));
        }
        match essential_report(f.clone(), g, catalog) {
            Ok(r) => Ok(Some(EssentialRow {
                group: r.group.clone(),
                order: g.order(),
                report: Some(r),
                skipped: None,
            })),
            Err(e @ (Error::OrderBoundExceeded { .. } | Error::CatalogInsufficient { .. })) => Ok(Some(skip(g, e.to_string()))),
            Err(e) => Err(e),
        }
    })?;
    let consistent = rows.iter().filter_map(|r| r.report.as_ref()).all(|r| {
        r.dim_end == r.dim_ideal + r.dim_essential
            && r.dim_essential == r.dim_radical + r.dim_semisimple
            && r.vanished == (r.dim_essential == 0)
    });
    let mut header = strings(EssentialReport::CSV_HEADER).to_vec();
    header.push("skipped".into());
    let table = rows
        .iter()
        .map(|r| match &r.report {
            Some(rep) => {
                let mut cells = rep.csv_row().to_vec();
                cells.push(String::new());
                cells
            }
            None => {
                let mut cells = vec![f.name(), r.group.clone()];
                cells.extend(std::iter::repeat_n(String::new(), 6));
                cells.push(r.skipped.clone().unwrap_or_default());
                cells
            }
        })
        .collect();
    let ok = consistent && mismatches.is_empty();
    Ok(Outcome {
        report: Report {
            header,
            rows: table,
            notes: mismatches.clone(),
            value: EssentialOutput {
                functor: f.name(),
                max_order,
                cap,
                rows,
                cache_mismatches: mismatches,
            },
        },
        ok,
    })
}

/// Functors outside the registry's base set are not cached, since their
/// names do not pin down their content.
fn cache_or_off(cache: &Cache, f: &Arc<dyn GreenFunctor>) -> Cache {
    let known = FunctorRegistry::default().names().contains(&f.cache_key()) || f.cache_key().starts_with("shift:");
    cache.with_mode(if known { cache.mode() } else { Mode::Off })
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ShiftOutput {
    base: String,
    shift_group: String,
    max_order: usize,
    cap: usize,
    rows: Vec<ShiftRow>,
    support_equality: CheckReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    nu: Option<Vec<NuEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seeds: Option<Vec<SeedReport>>,
    cache_mismatches: Vec<String>,
}

/// A `ν` check, or why it does not apply to the group.
#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NuEntry {
    group: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<NuReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    not_applicable: Option<String>,
}

pub struct ShiftArgs<'a> {
    pub functor: &'a str,
    pub shift_group: &'a str,
    pub max_order: Option<usize>,
    pub nu: bool,
    pub seeds: bool,
}

pub fn shift_cmd(catalog: &Catalog, cache: &Cache, args: ShiftArgs) -> Result<Outcome<ShiftOutput>> {
    let registry = FunctorRegistry::default();
    let base = registry.base(args.functor)?;
    let g = catalog.resolve(args.shift_group)?;
    let sh: Arc<Shifted> = shift(base.clone(), &g, &catalog.display(&g));
    let cap = base.shifted_essential_cap() / g.order();
    let max_order = args.max_order.unwrap_or(cap).min(cap);
    let groups = selected_groups(catalog, max_order, None)?;
    let kind = format!("shift-row:{}", sh.name());
    let (rows, mismatches) = cached_rows(cache, &kind, &groups, |h| Ok(Some(split_report(&sh, h, catalog)?.row)))?;
    let support = support_equality(&sh, catalog, max_order)?;

    let nu = args
        .nu
        .then(|| {
            groups
                .par_iter()
                .map(|(label, h)| {
                    let (report, not_applicable) = match nu_dim_check(&sh, h, catalog) {
                        Ok(r) => (Some(r), None),
                        Err(e @ (Error::GcdConditionFailed(_) | Error::FunctorMismatch { .. })) => (None, Some(e.to_string())),
                        Err(e) => return Err(e),
                    };
                    Ok(NuEntry {
                        group: label.clone(),
                        report,
                        not_applicable,
                    })
                })
                .collect::<essalg_core::Result<Vec<_>>>()
        })
        .transpose()?;
    let seeds = args
        .seeds
        .then(|| groups.par_iter().map(|(_, h)| seed_split(&sh, h, catalog)).collect::<essalg_core::Result<Vec<_>>>())
        .transpose()?;

    let mut ok = mismatches.is_empty() && support.passed() && rows.iter().all(|r| r.split_ok && r.support_match);
    if let Some(nu) = &nu {
        ok &= nu.iter().filter_map(|e| e.report.as_ref()).all(|r| r.passed());
    }

    let mut header = strings(ShiftRow::CSV_HEADER).to_vec();
    if nu.is_some() {
        header.extend(strings(["rationalClasses", "nuOk"]));
    }
    if seeds.is_some() {
        header.extend(strings(["quotientRadical", "quotientSemisimple", "kappaRadical", "kappaSemisimple"]));
    }
    let table = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut cells = r.csv_row().to_vec();
            if let Some(nu) = &nu {
                match &nu[i].report {
                    Some(n) => cells.extend([n.rational_classes.to_string(), n.passed().to_string()]),
                    None => cells.extend([String::new(), "n/a".into()]),
                }
            }
            if let Some(s) = &seeds {
                let s = &s[i];
                cells.extend([s.quotient_radical, s.quotient_semisimple, s.kappa_radical, s.kappa_semisimple].map(|x| x.to_string()));
            }
            cells
        })
        .collect();
    let mut notes = vec![format!(
        "support equality: {} checked, {} skipped, {} violations",
        support.checked,
        support.skipped,
        support.violations.len()
    )];
    notes.extend(support.violations.iter().cloned());
    notes.extend(rows.iter().flat_map(|r| r.failures.iter().map(move |f| format!("{}: {f}", r.group))));
    notes.extend(mismatches.iter().cloned());
    Ok(Outcome {
        report: Report {
            header,
            rows: table,
            notes,
            value: ShiftOutput {
                base: base.name(),
                shift_group: catalog.display(&g),
                max_order,
                cap,
                rows,
                support_equality: support,
                nu,
                seeds,
                cache_mismatches: mismatches,
            },
        },
        ok,
    })
}
