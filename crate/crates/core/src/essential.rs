//! Essential ideals and algebras: endomorphisms of `H` in `P_A` modulo those
//! factoring through groups of smaller order.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::Catalog;
use crate::category::EndAlgebra;
use crate::checks::CheckReport;
use crate::error::{Error, Result};
use crate::functor::GreenFunctor;
use crate::group::{direct_product, Elem, FiniteGroup};
use crate::linalg::{
    check_algebra_homomorphism, quotient_algebra, radical, Algebra, FiniteDimAlgebra, IdealCheck, Matrix, Quotient,
    SparseVec, Subspace,
};
use crate::morphism::GreenMorphism;

/// Above this many ideal-row/basis pairs the closure check is sampled.
const FULL_IDEAL_CHECK: usize = 20_000;
const SAMPLED_IDEAL_CHECK: usize = 4_000;

/// `I_A(H)`: the span of `β ∘ α` over catalog groups `K` with `|K| < |H|`,
/// `β` and `α` running over bases of `A(H x K)` and `A(K x H)`.
pub fn essential_ideal(f: &dyn GreenFunctor, h: &FiniteGroup, catalog: &Catalog) -> Result<Subspace> {
    let ambient = f.dim(&direct_product(h, h).group)?;
    let mut ideal = Subspace::zero(ambient);
    for entry in catalog.smaller_than(h.order())? {
        let k = &entry.group;
        let d_hk = f.dim(&direct_product(h, k).group)?;
        let d_kh = f.dim(&direct_product(k, h).group)?;
        let products: Vec<Vec<SparseVec>> = (0..d_hk)
            .into_par_iter()
            .map(|i| (0..d_kh).map(|j| f.pa_compose_basis(h, k, h, i, j)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let mut seen = HashSet::new();
        for v in products.into_iter().flatten() {
            if !v.is_zero() && seen.insert(v.clone()) {
                ideal.insert(v);
                if ideal.is_full() {
                    return Ok(ideal);
                }
            }
        }
    }
    Ok(ideal)
}

/// `Â(H) = End(H)/I_A(H)` together with the data it was built from.
pub struct Essential {
    pub end: EndAlgebra,
    pub ideal: Subspace,
    pub quotient: Quotient,
}

impl Essential {
    pub fn dim(&self) -> usize {
        self.quotient.algebra.dim()
    }

    pub fn algebra(&self) -> &FiniteDimAlgebra {
        &self.quotient.algebra
    }
}

fn ideal_check(ideal: &Subspace) -> IdealCheck {
    if ideal.dim() * ideal.ambient() <= FULL_IDEAL_CHECK {
        IdealCheck::Full
    } else {
        IdealCheck::Sampled(SAMPLED_IDEAL_CHECK)
    }
}

pub fn essential_algebra(f: Arc<dyn GreenFunctor>, h: &FiniteGroup, catalog: &Catalog) -> Result<Essential> {
    let ideal = essential_ideal(&*f, h, catalog)?;
    let end = EndAlgebra::new(f, h)?;
    let quotient = quotient_algebra(&end, &ideal, ideal_check(&ideal))?;
    Ok(Essential { end, ideal, quotient })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EssentialReport {
    pub functor: String,
    pub group: String,
    pub dim_end: usize,
    pub dim_ideal: usize,
    pub dim_essential: usize,
    pub dim_radical: usize,
    pub dim_semisimple: usize,
    pub vanished: bool,
}

impl EssentialReport {
    pub const CSV_HEADER: [&'static str; 8] =
        ["functor", "group", "dimEnd", "dimIdeal", "dimEssential", "dimRadical", "dimSemisimple", "vanished"];

    pub fn csv_row(&self) -> [String; 8] {
        [
            self.functor.clone(),
            self.group.clone(),
            self.dim_end.to_string(),
            self.dim_ideal.to_string(),
            self.dim_essential.to_string(),
            self.dim_radical.to_string(),
            self.dim_semisimple.to_string(),
            self.vanished.to_string(),
        ]
    }
}

pub fn essential_report(f: Arc<dyn GreenFunctor>, h: &FiniteGroup, catalog: &Catalog) -> Result<EssentialReport> {
    let name = f.name();
    let e = essential_algebra(f, h, catalog)?;
    let rad = radical(e.algebra()).dim();
    Ok(EssentialReport {
        functor: name,
        group: catalog.display(h),
        dim_end: e.end.dim(),
        dim_ideal: e.ideal.dim(),
        dim_essential: e.dim(),
        dim_radical: rad,
        dim_semisimple: e.dim() - rad,
        vanished: e.dim() == 0,
    })
}

/// One catalog group in a support scan; `vanished` is `None` when the group
/// was beyond the cap or a bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportEntry {
    pub group: String,
    pub order: usize,
    pub vanished: Option<bool>,
    pub note: Option<String>,
}

/// `Ŝupp(A)` and `Ẑ(A)` on the catalog, up to `cap` (default: the functor's).
pub fn essential_support(f: Arc<dyn GreenFunctor>, catalog: &Catalog, cap: Option<usize>) -> Result<Vec<SupportEntry>> {
    let cap = cap.unwrap_or_else(|| f.essential_cap());
    catalog
        .entries()
        .par_iter()
        .map(|e| {
            let order = e.group.order();
            if order > cap {
                return Ok(SupportEntry {
                    group: e.label.clone(),
                    order,
                    vanished: None,
                    note: Some(format!("beyond cap {cap}")),
                });
            }
            match essential_ideal(&*f, &e.group, catalog) {
                Ok(ideal) => Ok(SupportEntry {
                    group: e.label.clone(),
                    order,
                    vanished: Some(ideal.is_full()),
                    note: None,
                }),
                Err(err @ (Error::OrderBoundExceeded { .. } | Error::CatalogInsufficient { .. })) => Ok(SupportEntry {
                    group: e.label.clone(),
                    order,
                    vanished: None,
                    note: Some(err.to_string()),
                }),
                Err(err) => Err(err),
            }
        })
        .collect()
}

/// Labels of the supported groups in a scan.
pub fn supported(scan: &[SupportEntry]) -> Vec<String> {
    scan.iter().filter(|e| e.vanished == Some(false)).map(|e| e.group.clone()).collect()
}

/// `f̂_H: Â_src(H) -> Â_tgt(H)` with its certification.
pub struct InducedMap {
    pub source: Essential,
    pub target: Essential,
    pub matrix: Matrix,
    pub is_unital_homomorphism: bool,
}

pub fn induced_essential_morphism(m: &dyn GreenMorphism, h: &FiniteGroup, catalog: &Catalog) -> Result<InducedMap> {
    let source = essential_algebra(m.source(), h, catalog)?;
    let target = essential_algebra(m.target(), h, catalog)?;
    let comp = m.component(&direct_product(h, h).group)?;
    for row in source.ideal.basis() {
        if !target.ideal.contains(&comp.apply(row)) {
            return Err(Error::IdealNotPreserved(format!("{} at {}", m.name(), catalog.display(h))));
        }
    }
    let cols = source
        .quotient
        .lift
        .iter()
        .map(|&i| target.quotient.project(&comp.apply(&SparseVec::unit(i))))
        .collect();
    let matrix = Matrix::from_columns(target.dim(), cols);
    let ok = check_algebra_homomorphism(&matrix, source.algebra(), target.algebra())?;
    Ok(InducedMap {
        source,
        target,
        matrix,
        is_unital_homomorphism: ok,
    })
}

/// `Ŝupp(target) ⊆ Ŝupp(source)`, with each induced map certified at
/// every group where both sides were computed.
pub fn support_inclusion_check(m: &dyn GreenMorphism, catalog: &Catalog, cap: Option<usize>) -> Result<CheckReport> {
    let mut rep = CheckReport {
        subject: format!("support inclusion: {}", m.name()),
        ..Default::default()
    };
    let src = essential_support(m.source(), catalog, cap)?;
    let tgt = essential_support(m.target(), catalog, cap)?;
    for (a, c) in src.iter().zip(&tgt) {
        let (Some(va), Some(vc)) = (a.vanished, c.vanished) else {
            rep.skipped += 1;
            continue;
        };
        rep.checked += 1;
        if va && !vc {
            rep.violations.push(format!("{} supports the target but not the source", a.group));
        }
        let h = catalog.get(&a.group).expect("catalog label");
        match induced_essential_morphism(m, h, catalog) {
            Ok(map) if map.is_unital_homomorphism => {}
            Ok(_) => rep.violations.push(format!("induced map at {} is not a unital homomorphism", a.group)),
            Err(Error::IdealNotPreserved(s)) => rep.violations.push(format!("ideal not preserved: {s}")),
            Err(e) => return Err(e),
        }
    }
    Ok(rep)
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OutComparison {
    pub group: String,
    pub out_order: usize,
    pub dim_essential: usize,
    /// The graph classes project to a basis of `Â(H)`.
    pub basis_ok: bool,
    /// `[Δ_φ]·[Δ_ψ] = [Δ_{φψ}]` in `Â(H)` and `[Δ_id]` is the unit.
    pub multiplicative_ok: bool,
    pub isomorphic: bool,
}

/// Index of the outer class containing `alpha`.
fn outer_index(reps: &[Vec<Elem>], inner: &[Vec<Elem>], alpha: &[Elem]) -> usize {
    let classes: HashMap<Vec<Elem>, usize> = reps
        .iter()
        .enumerate()
        .flat_map(|(t, r)| inner.iter().map(move |inn| (r.iter().map(|&y| inn[y as usize]).collect::<Vec<_>>(), t)))
        .collect();
    classes[alpha]
}

/// Compares `Â_B(H)` with `Q Out(H)` through `φ ↦ [(H x H)/Δ_φ]`, where
/// `Δ_φ = {(φ(h), h)}`; the biset of `Δ_φ` is `Iso(φ)`, so `φψ = φ ∘ ψ`.
pub fn out_comparison(burnside: Arc<dyn GreenFunctor>, h: &FiniteGroup, catalog: &Catalog) -> Result<OutComparison> {
    if burnside.name() != "burnside" {
        return Err(Error::FunctorMismatch {
            expected: "burnside".into(),
            got: burnside.name(),
        });
    }
    let e = essential_algebra(burnside, h, catalog)?;
    let p = direct_product(h, h);
    let lat = p.group.subgroup_lattice()?;
    let reps: Vec<Vec<Elem>> = h.outer_classes()?.into_iter().map(|phi| phi.map).collect();
    let inner: Vec<Vec<Elem>> = h.elements().map(|g| h.inner_automorphism(g).map).collect();
    let image: Vec<SparseVec> = reps
        .iter()
        .map(|phi| {
            let mut graph: Vec<Elem> = h.elements().map(|x| p.pair(phi[x as usize], x)).collect();
            graph.sort_unstable();
            let c = lat.class_of_elements(&graph).expect("graph is a subgroup");
            e.quotient.project(&SparseVec::unit(c))
        })
        .collect();
    let n = reps.len();
    let basis_ok = n == e.dim() && Subspace::span(e.dim(), image.iter().cloned()).dim() == n;
    let alg = e.algebra();
    let mut multiplicative_ok = alg.unit() == Some(image[0].clone()) || n == 0;
    for (s, phi) in reps.iter().enumerate() {
        for (t, psi) in reps.iter().enumerate() {
            let composed: Vec<Elem> = psi.iter().map(|&y| phi[y as usize]).collect();
            let u = outer_index(&reps, &inner, &composed);
            multiplicative_ok &= alg.mul(&image[s], &image[t])? == image[u];
        }
    }
    Ok(OutComparison {
        group: catalog.display(h),
        out_order: n,
        dim_essential: e.dim(),
        basis_ok,
        multiplicative_ok,
        isomorphic: basis_ok && multiplicative_ok,
    })
}
