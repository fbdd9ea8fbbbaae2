//! The Yoneda-Dress shift `A_G(H) = A(H x G)`.

use std::sync::Arc;

use super::{GreenFunctor, ShiftBase};
use crate::biset::{basic_inf, Biset};
use crate::error::Result;
use crate::group::{product_of, tuple_coords, tuple_index, FiniteGroup, Subgroup};
use crate::linalg::{Matrix, SparseVec};

/// The `(K x H x G, K x G x H x G)`-biset `K x G x H x G`, with the left
/// group acting through `(k, h, g) ↦ (k, g, h, g)`.
pub fn twisted_diagonal(k: &FiniteGroup, h: &FiniteGroup, g: &FiniteGroup) -> Biset {
    let left = product_of(&[k, h, g]);
    let right = product_of(&[k, g, h, g]);
    let embed: Vec<u32> = left
        .elements()
        .map(|m| {
            let c = tuple_coords(&[k, h, g], m);
            tuple_index(&[k, g, h, g], &[c[0], c[2], c[1], c[2]])
        })
        .collect();
    Biset::from_fns(
        &left,
        &right,
        right.order(),
        |m, x| right.mul(embed[m as usize], x as u32) as usize,
        |x, m| right.mul(x as u32, m) as usize,
    )
}

/// A functor shifted by a fixed group. Shifts are not nested.
pub struct Shifted {
    base: Arc<dyn ShiftBase>,
    g: FiniteGroup,
    label: String,
}

impl Shifted {
    pub fn new(base: Arc<dyn ShiftBase>, g: FiniteGroup, label: &str) -> Self {
        Shifted {
            base,
            g,
            label: label.to_string(),
        }
    }

    pub fn base(&self) -> &Arc<dyn ShiftBase> {
        &self.base
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.g
    }

    fn hg(&self, h: &FiniteGroup) -> FiniteGroup {
        product_of(&[h, &self.g])
    }
}

impl GreenFunctor for Shifted {
    fn name(&self) -> String {
        format!("shift:{}:{}", self.base.name(), self.label)
    }

    fn cache_key(&self) -> String {
        format!("shift:{}:{}", self.base.cache_key(), self.g.id())
    }

    fn dim(&self, h: &FiniteGroup) -> Result<usize> {
        self.base.dim(&self.hg(h))
    }

    fn basis_labels(&self, h: &FiniteGroup) -> Result<Vec<String>> {
        self.base.basis_labels(&self.hg(h))
    }

    fn act_biset(&self, u: &Biset) -> Result<Matrix> {
        self.base.act_biset(&Biset::external(u, &Biset::identity(&self.g)))
    }

    fn cross_basis(&self, k: &FiniteGroup, h: &FiniteGroup, i: usize, j: usize) -> Result<SparseVec> {
        self.base.shifted_cross_basis(k, h, &self.g, i, j)
    }

    /// `A(Inf^G_1)(ε)`.
    fn epsilon(&self) -> SparseVec {
        let whole = Subgroup::new(&self.g, self.g.elements().collect()).expect("whole group");
        let inf = basic_inf(&self.g, &whole).expect("quotient by the whole group");
        self.base
            .act_biset(&inf)
            .expect("lattice of the shift group")
            .apply(&self.base.epsilon())
    }

    fn pa_compose_basis(&self, l: &FiniteGroup, k: &FiniteGroup, h: &FiniteGroup, i: usize, j: usize) -> Result<SparseVec> {
        self.base.shifted_compose_basis(l, k, h, &self.g, i, j)
    }

    fn essential_cap(&self) -> usize {
        (self.base.shifted_essential_cap() / self.g.order()).max(1)
    }
}
