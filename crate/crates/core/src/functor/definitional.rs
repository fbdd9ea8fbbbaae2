//! Composition and shifted products computed literally through bisets.
//! Slow; used to cross-check the direct formulas on small groups.

use super::{cross, GreenFunctor, ShiftBase};
use crate::biset::{arrow_left, Biset};
use crate::error::Result;
use crate::group::{direct_product, product_of, FiniteGroup};
use crate::linalg::SparseVec;

/// The `(L x H, L x K x K x H)`-biset `Id_L x ←K x Id_H`.
pub fn composition_biset(l: &FiniteGroup, k: &FiniteGroup, h: &FiniteGroup) -> Biset {
    Biset::external(&Biset::identity(l), &Biset::external(&arrow_left(k), &Biset::identity(h)))
}

/// `β ∘ α = A(Id_L x ←K x Id_H)(β x α)`.
pub fn pa_compose(
    f: &dyn GreenFunctor,
    l: &FiniteGroup,
    k: &FiniteGroup,
    h: &FiniteGroup,
    beta: &SparseVec,
    alpha: &SparseVec,
) -> Result<SparseVec> {
    let lk = direct_product(l, k).group;
    let kh = direct_product(k, h).group;
    let prod = cross(f, &lk, &kh, beta, alpha)?;
    Ok(f.act_biset(&composition_biset(l, k, h))?.apply(&prod))
}

/// `a x^d b`: the cross product in `A(K x G x H x G)` pulled back along the
/// twisted diagonal.
pub fn shifted_cross(
    f: &dyn GreenFunctor,
    k: &FiniteGroup,
    h: &FiniteGroup,
    g: &FiniteGroup,
    a: &SparseVec,
    b: &SparseVec,
) -> Result<SparseVec> {
    let prod = cross(f, &product_of(&[k, g]), &product_of(&[h, g]), a, b)?;
    Ok(f.act_biset(&super::twisted_diagonal(k, h, g))?.apply(&prod))
}

/// Composition in the shifted category, through [`shifted_cross`].
pub fn shifted_compose(
    f: &dyn ShiftBase,
    l: &FiniteGroup,
    k: &FiniteGroup,
    h: &FiniteGroup,
    g: &FiniteGroup,
    beta: &SparseVec,
    alpha: &SparseVec,
) -> Result<SparseVec> {
    let lk = direct_product(l, k).group;
    let kh = direct_product(k, h).group;
    let prod = shifted_cross(f, &lk, &kh, g, beta, alpha)?;
    let u = Biset::external(&composition_biset(l, k, h), &Biset::identity(g));
    Ok(f.act_biset(&u)?.apply(&prod))
}
