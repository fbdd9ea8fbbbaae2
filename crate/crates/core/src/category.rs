//! The category `P_A`: objects are groups, `P_A(H, K) = A(K x H)`.

use std::sync::Arc;

use dashmap::DashMap;
use serde_json::json;

use crate::checks::CheckReport;
use crate::error::{Error, Result};
use crate::functor::{pa_compose, pa_identity, GreenFunctor};
use crate::group::{direct_product, FiniteGroup};
use crate::linalg::{Algebra, DenseRationals, SparseVec};
use crate::morphism::GreenMorphism;

/// A morphism `source -> target` of `P_A`, as coordinates in
/// `A(target x source)`.
#[derive(Clone)]
pub struct PAMorphism {
    pub functor: Arc<dyn GreenFunctor>,
    pub source: FiniteGroup,
    pub target: FiniteGroup,
    pub vector: SparseVec,
}

impl std::fmt::Debug for PAMorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PAMorphism[{}]({} -> {}: {})", self.functor.name(), self.source.label(), self.target.label(), self.vector)
    }
}

impl PartialEq for PAMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.functor.cache_key() == other.functor.cache_key()
            && self.source == other.source
            && self.target == other.target
            && self.vector == other.vector
    }
}

impl PAMorphism {
    pub fn new(functor: Arc<dyn GreenFunctor>, source: &FiniteGroup, target: &FiniteGroup, vector: SparseVec) -> Result<Self> {
        let d = functor.dim(&direct_product(target, source).group)?;
        if let Some(m) = vector.max_index().filter(|&m| m >= d) {
            return Err(Error::DimensionMismatch { expected: d, got: m + 1 });
        }
        Ok(PAMorphism {
            functor,
            source: source.clone(),
            target: target.clone(),
            vector,
        })
    }

    pub fn basis(functor: Arc<dyn GreenFunctor>, source: &FiniteGroup, target: &FiniteGroup, i: usize) -> Result<Self> {
        PAMorphism::new(functor, source, target, SparseVec::unit(i))
    }

    pub fn identity(functor: Arc<dyn GreenFunctor>, h: &FiniteGroup) -> Result<Self> {
        let v = pa_identity(&*functor, h)?;
        PAMorphism::new(functor, h, h, v)
    }

    /// `self ∘ alpha`.
    pub fn compose(&self, alpha: &PAMorphism) -> Result<PAMorphism> {
        if self.functor.cache_key() != alpha.functor.cache_key() {
            return Err(Error::FunctorMismatch {
                expected: self.functor.name(),
                got: alpha.functor.name(),
            });
        }
        if self.source != alpha.target {
            return Err(Error::MiddleGroupMismatch(self.source.label().into(), alpha.target.label().into()));
        }
        let v = pa_compose(&*self.functor, &self.target, &self.source, &alpha.source, &self.vector, &alpha.vector)?;
        Ok(PAMorphism {
            functor: self.functor.clone(),
            source: alpha.source.clone(),
            target: self.target.clone(),
            vector: v,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let n = self.functor.dim(&direct_product(&self.target, &self.source).group).unwrap_or(0);
        let dense = self.vector.to_dense(n);
        json!({
            "functor": self.functor.name(),
            "source": self.source.label(),
            "target": self.target.label(),
            "vector": serde_json::to_value(DenseRationals(&dense)).expect("rationals serialize"),
        })
    }
}

/// `End_{P_A}(H) = A(H x H)` under `∘`, with products computed on demand.
pub struct EndAlgebra {
    functor: Arc<dyn GreenFunctor>,
    h: FiniteGroup,
    dim: usize,
    unit: SparseVec,
    products: DashMap<(usize, usize), SparseVec>,
}

impl EndAlgebra {
    pub fn new(functor: Arc<dyn GreenFunctor>, h: &FiniteGroup) -> Result<Self> {
        let dim = functor.dim(&direct_product(h, h).group)?;
        let unit = pa_identity(&*functor, h)?;
        Ok(EndAlgebra {
            functor,
            h: h.clone(),
            dim,
            unit,
            products: DashMap::new(),
        })
    }

    pub fn functor(&self) -> &Arc<dyn GreenFunctor> {
        &self.functor
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.h
    }
}

impl Algebra for EndAlgebra {
    fn dim(&self) -> usize {
        self.dim
    }

    fn unit(&self) -> Option<SparseVec> {
        Some(self.unit.clone())
    }

    fn mul_basis(&self, i: usize, j: usize) -> Result<SparseVec> {
        if let Some(v) = self.products.get(&(i, j)) {
            return Ok(v.clone());
        }
        let v = self.functor.pa_compose_basis(&self.h, &self.h, &self.h, i, j)?;
        self.products.insert((i, j), v.clone());
        Ok(v)
    }
}

pub fn end_algebra(functor: Arc<dyn GreenFunctor>, h: &FiniteGroup) -> Result<EndAlgebra> {
    EndAlgebra::new(functor, h)
}

/// `f_{K x H}(α)`, a morphism of `P_C` for `α` in `P_A`.
pub fn apply_green_morphism_pa(f: &dyn GreenMorphism, alpha: &PAMorphism) -> Result<PAMorphism> {
    let src = f.source();
    if src.cache_key() != alpha.functor.cache_key() {
        return Err(Error::FunctorMismatch {
            expected: src.name(),
            got: alpha.functor.name(),
        });
    }
    let m = f.component(&direct_product(&alpha.target, &alpha.source).group)?;
    PAMorphism::new(f.target(), &alpha.source, &alpha.target, m.apply(&alpha.vector))
}

fn basis_morphisms(f: &Arc<dyn GreenFunctor>, source: &FiniteGroup, target: &FiniteGroup) -> Result<Vec<PAMorphism>> {
    let d = f.dim(&direct_product(target, source).group)?;
    (0..d).map(|i| PAMorphism::basis(f.clone(), source, target, i)).collect()
}

/// Unit laws for all groups and associativity on basis triples.
pub fn check_category_laws(f: &Arc<dyn GreenFunctor>, groups: &[FiniteGroup]) -> Result<CheckReport> {
    let mut rep = CheckReport {
        subject: format!("category laws: {}", f.name()),
        ..Default::default()
    };
    for h in groups {
        for k in groups {
            let id_h = PAMorphism::identity(f.clone(), h)?;
            let id_k = PAMorphism::identity(f.clone(), k)?;
            for a in basis_morphisms(f, h, k)? {
                let ok = id_k.compose(&a)? == a && a.compose(&id_h)? == a;
                rep.checked += 1;
                if !ok {
                    rep.violations.push(format!("unit law {} -> {} at {}", h.label(), k.label(), a.vector));
                }
            }
        }
    }
    for h in groups {
        for k in groups {
            for l in groups {
                for m in groups {
                    let alphas = basis_morphisms(f, h, k)?;
                    let betas = basis_morphisms(f, k, l)?;
                    let gammas = basis_morphisms(f, l, m)?;
                    for a in &alphas {
                        for b in &betas {
                            let ba = b.compose(a)?;
                            for c in &gammas {
                                let ok = c.compose(&ba)? == c.compose(b)?.compose(a)?;
                                rep.checked += 1;
                                if !ok {
                                    rep.violations.push(format!(
                                        "associativity {} {} {} {}",
                                        h.label(),
                                        k.label(),
                                        l.label(),
                                        m.label()
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// `f(β ∘ α) = f(β) ∘ f(α)` on basis pairs and `f(Id_H) = Id_H`.
pub fn check_pa_functoriality(f: &dyn GreenMorphism, groups: &[FiniteGroup]) -> Result<CheckReport> {
    let src = f.source();
    let mut rep = CheckReport {
        subject: format!("P_A functoriality: {}", f.name()),
        ..Default::default()
    };
    for h in groups {
        let lhs = apply_green_morphism_pa(f, &PAMorphism::identity(src.clone(), h)?)?;
        let rhs = PAMorphism::identity(f.target(), h)?;
        rep.checked += 1;
        if lhs != rhs {
            rep.violations.push(format!("identity of {}", h.label()));
        }
        for k in groups {
            for l in groups {
                for a in basis_morphisms(&src, h, k)? {
                    for b in basis_morphisms(&src, k, l)? {
                        let lhs = apply_green_morphism_pa(f, &b.compose(&a)?)?;
                        let rhs = apply_green_morphism_pa(f, &b)?.compose(&apply_green_morphism_pa(f, &a)?)?;
                        rep.checked += 1;
                        if lhs != rhs {
                            rep.violations.push(format!("composition {} {} {}", h.label(), k.label(), l.label()));
                        }
                    }
                }
            }
        }
    }
    Ok(rep)
}
