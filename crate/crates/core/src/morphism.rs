//! Morphisms of Green biset functors, given componentwise as matrices.

use std::sync::Arc;

use crate::biset::{basic_inf, basic_iso, basic_res, Biset};
use crate::error::{Error, Result};
use crate::functor::{GreenFunctor, ShiftBase, Shifted};
use crate::group::{direct_product, FiniteGroup, Homomorphism, SigmaKind, Subgroup};
use crate::linalg::{q, Matrix, SparseVec};

pub trait GreenMorphism: Send + Sync {
    fn name(&self) -> String;
    fn source(&self) -> Arc<dyn GreenFunctor>;
    fn target(&self) -> Arc<dyn GreenFunctor>;
    /// `A_source(H) -> A_target(H)`.
    fn component(&self, h: &FiniteGroup) -> Result<Matrix>;
}

pub struct IdentityMorphism {
    f: Arc<dyn GreenFunctor>,
}

impl IdentityMorphism {
    pub fn new(f: Arc<dyn GreenFunctor>) -> Self {
        IdentityMorphism { f }
    }
}

impl GreenMorphism for IdentityMorphism {
    fn name(&self) -> String {
        format!("id[{}]", self.f.name())
    }
    fn source(&self) -> Arc<dyn GreenFunctor> {
        self.f.clone()
    }
    fn target(&self) -> Arc<dyn GreenFunctor> {
        self.f.clone()
    }
    fn component(&self, h: &FiniteGroup) -> Result<Matrix> {
        Ok(Matrix::identity(self.f.dim(h)?))
    }
}

/// Sends an `H`-set to its permutation character `h ↦ |X^h|`.
pub struct Linearization {
    burnside: Arc<dyn GreenFunctor>,
    classfun: Arc<dyn GreenFunctor>,
    kind: SigmaKind,
}

impl Linearization {
    /// `burnside` and `classfun` must be the Burnside functor and the class
    /// functions for `kind`; only their names are checked.
    pub fn new(burnside: Arc<dyn GreenFunctor>, classfun: Arc<dyn GreenFunctor>, kind: SigmaKind) -> Result<Self> {
        expect_name(&*burnside, "burnside")?;
        expect_name(&*classfun, &format!("classfun:{}", kind.name()))?;
        Ok(Linearization { burnside, classfun, kind })
    }
}

fn expect_name(f: &dyn GreenFunctor, name: &str) -> Result<()> {
    if f.name() != name {
        return Err(Error::FunctorMismatch {
            expected: name.into(),
            got: f.name(),
        });
    }
    Ok(())
}

impl GreenMorphism for Linearization {
    fn name(&self) -> String {
        format!("linearization[{}]", self.kind.name())
    }
    fn source(&self) -> Arc<dyn GreenFunctor> {
        self.burnside.clone()
    }
    fn target(&self) -> Arc<dyn GreenFunctor> {
        self.classfun.clone()
    }
    /// `|(H/S)^x| = #{a : a⁻¹ x a ∈ S} / |S|`, read at class representatives.
    fn component(&self, h: &FiniteGroup) -> Result<Matrix> {
        let lat = h.subgroup_lattice()?;
        let classes = h.sigma_classes(self.kind);
        let cols = (0..lat.num_classes())
            .map(|c| {
                let s = lat.class_rep(c);
                SparseVec::from_entries(
                    (0..classes.len())
                        .map(|d| {
                            let x = classes.rep(d);
                            let n = h.elements().filter(|&a| s.contains(h.conj(h.inv(a), x))).count();
                            (d, q(n as i64, s.order() as i64))
                        })
                        .collect(),
                )
            })
            .collect();
        Ok(Matrix::from_columns(classes.len(), cols))
    }
}

/// Rational class functions viewed as ordinary ones.
pub struct Extension {
    rational: Arc<dyn GreenFunctor>,
    ordinary: Arc<dyn GreenFunctor>,
}

impl Extension {
    pub fn new(rational: Arc<dyn GreenFunctor>, ordinary: Arc<dyn GreenFunctor>) -> Result<Self> {
        expect_name(&*rational, "classfun:rational")?;
        expect_name(&*ordinary, "classfun:ordinary")?;
        Ok(Extension { rational, ordinary })
    }
}

impl GreenMorphism for Extension {
    fn name(&self) -> String {
        "extension".into()
    }
    fn source(&self) -> Arc<dyn GreenFunctor> {
        self.rational.clone()
    }
    fn target(&self) -> Arc<dyn GreenFunctor> {
        self.ordinary.clone()
    }
    /// `e_D ↦ Σ e_C` over the conjugacy classes `C ⊆ D`.
    fn component(&self, h: &FiniteGroup) -> Result<Matrix> {
        let rat = h.sigma_classes(SigmaKind::Rational);
        let ord = h.sigma_classes(SigmaKind::Ordinary);
        let cols = (0..rat.len())
            .map(|d| {
                let mut cs: Vec<usize> = rat.class(d).iter().map(|&x| ord.class_of(x)).collect();
                cs.sort_unstable();
                cs.dedup();
                SparseVec::from_entries(cs.into_iter().map(|c| (c, q(1, 1))).collect())
            })
            .collect();
        Ok(Matrix::from_columns(ord.len(), cols))
    }
}

/// The `(H x G, H)`-biset `Inf^{H x G}_H`: inflation along `H x G -> H`.
pub fn inflation_biset(h: &FiniteGroup, g: &FiniteGroup) -> Result<Biset> {
    let p = direct_product(h, g);
    let mut n: Vec<u32> = g.elements().map(|x| p.pair(h.identity(), x)).collect();
    n.sort_unstable();
    let n = Subgroup::new(&p.group, n)?;
    let inf = basic_inf(&p.group, &n)?;
    let (quot, proj) = p.group.quotient(&n)?;
    let iso = Homomorphism::new(h.clone(), quot, h.elements().map(|x| proj[p.pair(x, g.identity()) as usize]).collect())?;
    Biset::compose(&inf, &basic_iso(&iso)?)
}

/// The `(H, H x G)`-biset `Res^{H x G}_H`, along `H -> H x 1`.
pub fn restriction_biset(h: &FiniteGroup, g: &FiniteGroup) -> Result<Biset> {
    let p = direct_product(h, g);
    let mut s: Vec<u32> = h.elements().map(|x| p.pair(x, g.identity())).collect();
    s.sort_unstable();
    let s = Subgroup::new(&p.group, s)?;
    let res = basic_res(&p.group, &s)?;
    let (sg, emb) = p.group.subgroup_as_group(&s);
    let rho = Homomorphism::new(sg, h.clone(), emb.iter().map(|&x| p.unpair(x).0).collect())?;
    Biset::compose(&basic_iso(&rho)?, &res)
}

/// `Inf: A -> A_G`, `Inf_H = A(Inf^{H x G}_H)`.
pub struct ShiftInf {
    base: Arc<dyn ShiftBase>,
    shifted: Arc<Shifted>,
}

/// `Res: A_G -> A`, `Res_H = A(Res^{H x G}_H)`.
pub struct ShiftRes {
    base: Arc<dyn ShiftBase>,
    shifted: Arc<Shifted>,
}

impl ShiftInf {
    pub fn new(shifted: Arc<Shifted>) -> Self {
        ShiftInf {
            base: shifted.base().clone(),
            shifted,
        }
    }
}

impl ShiftRes {
    pub fn new(shifted: Arc<Shifted>) -> Self {
        ShiftRes {
            base: shifted.base().clone(),
            shifted,
        }
    }
}

impl GreenMorphism for ShiftInf {
    fn name(&self) -> String {
        format!("inf[{}]", self.shifted.name())
    }
    fn source(&self) -> Arc<dyn GreenFunctor> {
        self.base.clone()
    }
    fn target(&self) -> Arc<dyn GreenFunctor> {
        self.shifted.clone()
    }
    fn component(&self, h: &FiniteGroup) -> Result<Matrix> {
        self.base.act_biset(&inflation_biset(h, self.shifted.group())?)
    }
}

impl GreenMorphism for ShiftRes {
    fn name(&self) -> String {
        format!("res[{}]", self.shifted.name())
    }
    fn source(&self) -> Arc<dyn GreenFunctor> {
        self.shifted.clone()
    }
    fn target(&self) -> Arc<dyn GreenFunctor> {
        self.base.clone()
    }
    fn component(&self, h: &FiniteGroup) -> Result<Matrix> {
        self.base.act_biset(&restriction_biset(h, self.shifted.group())?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;
    use crate::functor::FunctorRegistry;
    use crate::linalg::qi;

    fn cat(label: &str) -> FiniteGroup {
        Catalog::builtin().get(label).unwrap().clone()
    }

    #[test]
    fn linearization_values() {
        let r = FunctorRegistry::default();
        let lin = Linearization::new(r.base("burnside").unwrap(), r.base("classfun:ordinary").unwrap(), SigmaKind::Ordinary)
            .unwrap();
        let c2 = cat("C2");
        let m = lin.component(&c2).unwrap();
        // [C2/1] ↦ (2, 0), [C2/C2] ↦ (1, 1)
        assert_eq!(m.to_dense(), vec![vec![qi(2), qi(1)], vec![qi(0), qi(1)]]);
        assert!(Linearization::new(r.base("burnside").unwrap(), r.base("classfun:rational").unwrap(), SigmaKind::Ordinary)
            .is_err());
    }

    #[test]
    fn extension_on_c3() {
        let r = FunctorRegistry::default();
        let ext = Extension::new(r.base("classfun:rational").unwrap(), r.base("classfun:ordinary").unwrap()).unwrap();
        let c3 = cat("C3");
        let m = ext.component(&c3).unwrap();
        assert_eq!((m.rows(), m.cols()), (3, 2));
        assert_eq!(m.column(1).nnz(), 2);
        assert!(ext.component(&FiniteGroup::trivial()).unwrap().is_identity());
    }

    #[test]
    fn res_after_inf_is_identity() {
        let r = FunctorRegistry::default();
        for name in r.names() {
            for g in ["C2", "C3"] {
                let sh = Arc::new(Shifted::new(r.base(&name).unwrap(), cat(g), g));
                let (inf, res) = (ShiftInf::new(sh.clone()), ShiftRes::new(sh.clone()));
                for h in ["1", "C2", "S3", "V4"] {
                    let h = cat(h);
                    let prod = res.component(&h).unwrap().mul(&inf.component(&h).unwrap()).unwrap();
                    assert!(prod.is_identity(), "{name} {g}");
                }
            }
        }
    }
}
