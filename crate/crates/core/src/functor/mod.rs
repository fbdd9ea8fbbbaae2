//! Green biset functors behind one trait, with a name-based registry.
//!
//! A functor assigns to each group `H` a based rational vector space `A(H)`,
//! to each biset a matrix, and to each pair of groups a bilinear cross
//! product. Composition in the associated category `P_A` has a direct fast
//! path per functor; [`definitional`] keeps the literal biset route so the
//! two can be compared on small groups.

mod burnside;
mod classfun;
pub mod definitional;
mod shifted;

use std::collections::BTreeMap;
use std::sync::Arc;

use dashmap::DashMap;

pub use burnside::Burnside;
pub use classfun::ClassFunctions;
pub use shifted::{twisted_diagonal, Shifted};

use crate::biset::{arrow_right, basic_iso, basic_res, transitive_from_class, Biset, BurnsideElement};
use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::group::{direct_product, FiniteGroup, Homomorphism, SigmaKind, Subgroup};
use crate::linalg::{Matrix, SparseVec};

/// A Green biset functor over the rationals.
pub trait GreenFunctor: Send + Sync {
    fn name(&self) -> String;

    /// Distinguishes instances whose names could coincide (for cache keys).
    fn cache_key(&self) -> String {
        self.name()
    }

    fn dim(&self, h: &FiniteGroup) -> Result<usize>;

    fn basis_labels(&self, h: &FiniteGroup) -> Result<Vec<String>>;

    /// The linear map `A(G) -> A(K)` of a `(K, G)`-biset.
    fn act_biset(&self, u: &Biset) -> Result<Matrix>;

    /// `e_i x e_j` in `A(K x H)`.
    fn cross_basis(&self, k: &FiniteGroup, h: &FiniteGroup, i: usize, j: usize) -> Result<SparseVec>;

    /// The unit `ε ∈ A(1)`.
    fn epsilon(&self) -> SparseVec;

    /// `e_i ∘ e_j` in `P_A`, for `e_i ∈ A(L x K)` and `e_j ∈ A(K x H)`.
    fn pa_compose_basis(
        &self,
        l: &FiniteGroup,
        k: &FiniteGroup,
        h: &FiniteGroup,
        i: usize,
        j: usize,
    ) -> Result<SparseVec>;

    /// Largest `|H|` for which essential algebras are computed by default.
    fn essential_cap(&self) -> usize;
}

/// Functors admitting a Yoneda-Dress shift: they expose the shifted
/// product and composition for every shift group.
pub trait ShiftBase: GreenFunctor {
    /// Largest `|H x G|` for shifted essential algebras.
    fn shifted_essential_cap(&self) -> usize {
        self.essential_cap()
    }

    /// `e_i x^d e_j ∈ A(K x H x G)` for `e_i ∈ A(K x G)`, `e_j ∈ A(H x G)`.
    fn shifted_cross_basis(
        &self,
        k: &FiniteGroup,
        h: &FiniteGroup,
        g: &FiniteGroup,
        i: usize,
        j: usize,
    ) -> Result<SparseVec>;

    /// Composition in `P_{A_G}`: `e_i ∈ A(L x K x G)`, `e_j ∈ A(K x H x G)`,
    /// result in `A(L x H x G)`.
    fn shifted_compose_basis(
        &self,
        l: &FiniteGroup,
        k: &FiniteGroup,
        h: &FiniteGroup,
        g: &FiniteGroup,
        i: usize,
        j: usize,
    ) -> Result<SparseVec>;
}

/// Extends a basis-level bilinear map.
pub fn bilinear(
    a: &SparseVec,
    b: &SparseVec,
    mut f: impl FnMut(usize, usize) -> Result<SparseVec>,
) -> Result<SparseVec> {
    let mut out = SparseVec::zero();
    for (i, x) in a.entries() {
        for (j, y) in b.entries() {
            out.add_scaled(&(x * y), &f(*i, *j)?);
        }
    }
    Ok(out)
}

fn check_len(f: &dyn GreenFunctor, h: &FiniteGroup, v: &SparseVec) -> Result<()> {
    let d = f.dim(h)?;
    match v.max_index() {
        Some(m) if m >= d => Err(Error::DimensionMismatch { expected: d, got: m + 1 }),
        _ => Ok(()),
    }
}

/// `a x b ∈ A(K x H)`.
pub fn cross(f: &dyn GreenFunctor, k: &FiniteGroup, h: &FiniteGroup, a: &SparseVec, b: &SparseVec) -> Result<SparseVec> {
    check_len(f, k, a)?;
    check_len(f, h, b)?;
    bilinear(a, b, |i, j| f.cross_basis(k, h, i, j))
}

/// `β ∘ α` in `P_A` for `β ∈ A(L x K)`, `α ∈ A(K x H)`.
pub fn pa_compose(
    f: &dyn GreenFunctor,
    l: &FiniteGroup,
    k: &FiniteGroup,
    h: &FiniteGroup,
    beta: &SparseVec,
    alpha: &SparseVec,
) -> Result<SparseVec> {
    check_len(f, &direct_product(l, k).group, beta)?;
    check_len(f, &direct_product(k, h).group, alpha)?;
    bilinear(beta, alpha, |i, j| f.pa_compose_basis(l, k, h, i, j))
}

/// `Id_H = A(→H)(ε)`.
pub fn pa_identity(f: &dyn GreenFunctor, h: &FiniteGroup) -> Result<SparseVec> {
    Ok(f.act_biset(&arrow_right(h))?.apply(&f.epsilon()))
}

/// The `(H, H x H)`-biset `Iso(δ⁻¹) ∘ Res^{H x H}_{Δ(H)}`.
pub fn diagonal_restriction(h: &FiniteGroup) -> Result<Biset> {
    let p = direct_product(h, h);
    let mut diag: Vec<u32> = h.elements().map(|x| p.pair(x, x)).collect();
    diag.sort_unstable();
    let delta = Subgroup::new(&p.group, diag)?;
    let res = basic_res(&p.group, &delta)?;
    let (dg, emb) = p.group.subgroup_as_group(&delta);
    // δ: H -> Δ(H), h -> (h, h); its inverse relabels Δ(H) as H
    let pos = |x: u32| emb.iter().position(|&y| y == x).unwrap() as u32;
    let delta_map: Vec<u32> = h.elements().map(|x| pos(p.pair(x, x))).collect();
    let delta_inv = Homomorphism::new(h.clone(), dg, delta_map)?.inverse()?;
    Biset::compose(&basic_iso(&delta_inv)?, &res)
}

/// `ab = A(Iso(δ⁻¹) ∘ Res^{H x H}_{Δ(H)})(a x b)`.
pub fn internal_product(f: &dyn GreenFunctor, h: &FiniteGroup, a: &SparseVec, b: &SparseVec) -> Result<SparseVec> {
    let u = diagonal_restriction(h)?;
    Ok(f.act_biset(&u)?.apply(&cross(f, h, h, a, b)?))
}

/// `A(Inf^H_1)(ε)`, the unit of the internal product.
pub fn internal_unit(f: &dyn GreenFunctor, h: &FiniteGroup) -> Result<SparseVec> {
    let whole = Subgroup::new(h, h.elements().collect())?;
    let inf = crate::biset::basic_inf(h, &whole)?;
    Ok(f.act_biset(&inf)?.apply(&f.epsilon()))
}

type TransitiveKey = (String, u64, u64, usize);

fn transitive_cache() -> &'static DashMap<TransitiveKey, Arc<Matrix>> {
    static C: std::sync::OnceLock<DashMap<TransitiveKey, Arc<Matrix>>> = std::sync::OnceLock::new();
    C.get_or_init(DashMap::new)
}

/// `A(β)` for a Burnside element: each transitive class is realized once
/// and its matrix cached.
pub fn act(f: &dyn GreenFunctor, beta: &BurnsideElement) -> Result<Matrix> {
    let rows = f.dim(&beta.left)?;
    let cols = f.dim(&beta.right)?;
    let mut out = Matrix::zeros(rows, cols);
    for (c, v) in beta.coeffs() {
        let key = (f.cache_key(), beta.left.id(), beta.right.id(), *c);
        let m = match transitive_cache().get(&key) {
            Some(m) => m.clone(),
            None => {
                let x = transitive_from_class(&beta.left, &beta.right, *c)?;
                let m = Arc::new(f.act_biset(&x)?);
                transitive_cache().insert(key, m.clone());
                m
            }
        };
        out = out.add(&m.scale(v));
    }
    Ok(out)
}

/// Name-to-functor table; selectors are `burnside`, `classfun:rational`,
/// `classfun:ordinary` and `shift:<base>:<group>`.
#[derive(Clone)]
pub struct FunctorRegistry {
    bases: BTreeMap<String, Arc<dyn ShiftBase>>,
}

impl Default for FunctorRegistry {
    fn default() -> Self {
        let mut r = FunctorRegistry { bases: BTreeMap::new() };
        r.register(Arc::new(Burnside::new()));
        r.register(Arc::new(ClassFunctions::new(SigmaKind::Rational)));
        r.register(Arc::new(ClassFunctions::new(SigmaKind::Ordinary)));
        r
    }
}

impl FunctorRegistry {
    pub fn register(&mut self, base: Arc<dyn ShiftBase>) {
        self.bases.insert(base.name(), base);
    }

    pub fn names(&self) -> Vec<String> {
        self.bases.keys().cloned().collect()
    }

    pub fn base(&self, name: &str) -> Result<Arc<dyn ShiftBase>> {
        self.bases
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnknownFunctor(name.to_string()))
    }

    /// Resolves a selector; shift groups are looked up in `catalog`.
    pub fn resolve(&self, selector: &str, catalog: &Catalog) -> Result<Arc<dyn GreenFunctor>> {
        match selector.strip_prefix("shift:") {
            None => Ok(self.base(selector)? as Arc<dyn GreenFunctor>),
            Some(rest) => {
                let (base, label) = rest
                    .rsplit_once(':')
                    .ok_or_else(|| Error::UnknownFunctor(selector.to_string()))?;
                let g = catalog.resolve(label)?;
                Ok(Arc::new(Shifted::new(self.base(base)?, g, label)))
            }
        }
    }

    /// The base and shift group of a selector (`None` for unshifted).
    pub fn resolve_parts(&self, selector: &str, catalog: &Catalog) -> Result<(Arc<dyn ShiftBase>, Option<FiniteGroup>)> {
        match selector.strip_prefix("shift:") {
            None => Ok((self.base(selector)?, None)),
            Some(rest) => {
                let (base, label) = rest
                    .rsplit_once(':')
                    .ok_or_else(|| Error::UnknownFunctor(selector.to_string()))?;
                Ok((self.base(base)?, Some(catalog.resolve(label)?)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biset::basic_ind;
    use crate::linalg::qi;

    fn cat(label: &str) -> FiniteGroup {
        Catalog::builtin().get(label).unwrap().clone()
    }

    #[test]
    fn registry_resolves_selectors() {
        let r = FunctorRegistry::default();
        let cat = Catalog::builtin();
        assert_eq!(r.names(), vec!["burnside", "classfun:ordinary", "classfun:rational"]);
        assert_eq!(r.resolve("burnside", cat).unwrap().name(), "burnside");
        assert_eq!(r.resolve("shift:classfun:rational:C3", cat).unwrap().name(), "shift:classfun:rational:C3");
        assert!(matches!(r.resolve("nope", cat), Err(Error::UnknownFunctor(_))));
        assert!(matches!(r.resolve("shift:burnside", cat), Err(Error::UnknownFunctor(_))));
        assert!(matches!(r.resolve("shift:burnside:Z9", cat), Err(Error::UnknownGroup(_))));
    }

    #[test]
    fn internal_products() {
        let r = FunctorRegistry::default();
        let b = r.base("burnside").unwrap();
        let c2 = cat("C2");
        // [C2/1]·[C2/1] = 2[C2/1]; class 0 is the trivial subgroup
        let free = SparseVec::unit(0);
        assert_eq!(internal_product(&*b, &c2, &free, &free).unwrap(), free.scale(&qi(2)));
        for name in r.names() {
            let f = r.base(&name).unwrap();
            for label in ["1", "C2", "C3", "V4", "S3"] {
                let h = cat(label);
                let u = internal_unit(&*f, &h).unwrap();
                for i in 0..f.dim(&h).unwrap() {
                    let e = SparseVec::unit(i);
                    assert_eq!(internal_product(&*f, &h, &u, &e).unwrap(), e, "{name} {label}");
                    assert_eq!(internal_product(&*f, &h, &e, &u).unwrap(), e, "{name} {label}");
                }
            }
        }
    }

    #[test]
    fn class_function_internal_product_is_pointwise() {
        let r = FunctorRegistry::default();
        for name in ["classfun:rational", "classfun:ordinary"] {
            let f = r.base(name).unwrap();
            for label in ["C4", "S3", "Q8"] {
                let h = cat(label);
                let d = f.dim(&h).unwrap();
                for i in 0..d {
                    for j in 0..d {
                        let p = internal_product(&*f, &h, &SparseVec::unit(i), &SparseVec::unit(j)).unwrap();
                        let expect = if i == j { SparseVec::unit(i) } else { SparseVec::zero() };
                        assert_eq!(p, expect);
                    }
                }
            }
        }
    }

    #[test]
    fn act_on_burnside_elements_is_additive() {
        let r = FunctorRegistry::default();
        let c2 = cat("C2");
        let one = FiniteGroup::trivial();
        for name in r.names() {
            let f = r.base(&name).unwrap();
            let id = BurnsideElement::identity(&c2).unwrap();
            assert!(act(&*f, &id).unwrap().is_identity());
            let res = basic_res(&c2, &Subgroup::new(&c2, vec![0]).unwrap()).unwrap().decompose().unwrap();
            let ind = basic_ind(&c2, &Subgroup::new(&c2, vec![0]).unwrap()).unwrap().decompose().unwrap();
            let sum = crate::biset::burnside_compose(&ind, &res).unwrap();
            let twice = sum.add(&sum).unwrap();
            assert_eq!(act(&*f, &twice).unwrap(), act(&*f, &sum).unwrap().scale(&qi(2)));
            let _ = &one;
        }
    }
}
