//! Rational class functions constant on σ-classes, for σ the ordinary or
//! rational conjugacy relation. Basis: indicator functions of the classes.

use std::collections::HashMap;
use std::sync::Arc;

use dashmap::DashMap;

use super::{GreenFunctor, ShiftBase};
use crate::biset::Biset;
use crate::error::{Error, Result};
use crate::group::{product_of, tuple_coords, tuple_index, FiniteGroup, SigmaKind};
use crate::linalg::{q, Matrix, SparseVec, Q};

type Tensor = Arc<HashMap<(usize, usize), SparseVec>>;

pub struct ClassFunctions {
    kind: SigmaKind,
    cross: DashMap<(u64, u64, u64), Tensor>,
    compose: DashMap<(u64, u64, u64, u64), Tensor>,
}

impl ClassFunctions {
    pub fn new(kind: SigmaKind) -> Self {
        ClassFunctions {
            kind,
            cross: DashMap::new(),
            compose: DashMap::new(),
        }
    }

    pub fn kind(&self) -> SigmaKind {
        self.kind
    }

    fn cross_tensor(&self, k: &FiniteGroup, h: &FiniteGroup, g: &FiniteGroup) -> Result<Tensor> {
        let key = (k.id(), h.id(), g.id());
        if let Some(t) = self.cross.get(&key) {
            return Ok(t.clone());
        }
        let m = product_of(&[k, h, g]);
        let kg = product_of(&[k, g]);
        let hg = product_of(&[h, g]);
        let (pm, pkg, phg) = (m.sigma_classes(self.kind), kg.sigma_classes(self.kind), hg.sigma_classes(self.kind));
        let pair_of = |x| {
            let c = tuple_coords(&[k, h, g], x);
            (
                pkg.class_of(tuple_index(&[k, g], &[c[0], c[2]])),
                phg.class_of(tuple_index(&[h, g], &[c[1], c[2]])),
            )
        };
        let mut acc: HashMap<(usize, usize), Vec<(usize, Q)>> = HashMap::new();
        for c in 0..pm.len() {
            let p = pair_of(pm.rep(c));
            if pm.class(c).iter().any(|&x| pair_of(x) != p) {
                return Err(Error::SigmaNotClosed(format!(
                    "cross product into {} x {} x {}",
                    k.label(),
                    h.label(),
                    g.label()
                )));
            }
            acc.entry(p).or_default().push((c, q(1, 1)));
        }
        let t: Tensor = Arc::new(acc.into_iter().map(|(p, v)| (p, SparseVec::from_entries(v))).collect());
        self.cross.insert(key, t.clone());
        Ok(t)
    }

    fn compose_tensor(&self, l: &FiniteGroup, k: &FiniteGroup, h: &FiniteGroup, g: &FiniteGroup) -> Result<Tensor> {
        let key = (l.id(), k.id(), h.id(), g.id());
        if let Some(t) = self.compose.get(&key) {
            return Ok(t.clone());
        }
        let out = product_of(&[l, h, g]);
        let lkg = product_of(&[l, k, g]);
        let khg = product_of(&[k, h, g]);
        let (po, p1, p2) = (out.sigma_classes(self.kind), lkg.sigma_classes(self.kind), khg.sigma_classes(self.kind));
        let profile = |x| {
            let c = tuple_coords(&[l, h, g], x);
            let mut pairs: Vec<(usize, usize)> = k
                .elements()
                .map(|a| {
                    (
                        p1.class_of(tuple_index(&[l, k, g], &[c[0], a, c[2]])),
                        p2.class_of(tuple_index(&[k, h, g], &[a, c[1], c[2]])),
                    )
                })
                .collect();
            pairs.sort_unstable();
            pairs
        };
        let mut acc: HashMap<(usize, usize), Vec<(usize, Q)>> = HashMap::new();
        for c in 0..po.len() {
            let pairs = profile(po.rep(c));
            if po.class(c).iter().any(|&x| profile(x) != pairs) {
                return Err(Error::SigmaNotClosed(format!(
                    "composition through {} into {} x {} x {}",
                    k.label(),
                    l.label(),
                    h.label(),
                    g.label()
                )));
            }
            let mut i = 0;
            while i < pairs.len() {
                let mut j = i;
                while j < pairs.len() && pairs[j] == pairs[i] {
                    j += 1;
                }
                acc.entry(pairs[i]).or_default().push((c, q((j - i) as i64, k.order() as i64)));
                i = j;
            }
        }
        let t: Tensor = Arc::new(acc.into_iter().map(|(p, v)| (p, SparseVec::from_entries(v))).collect());
        self.compose.insert(key, t.clone());
        Ok(t)
    }
}

impl GreenFunctor for ClassFunctions {
    fn name(&self) -> String {
        format!("classfun:{}", self.kind.name())
    }

    fn dim(&self, h: &FiniteGroup) -> Result<usize> {
        Ok(h.sigma_classes(self.kind).len())
    }

    fn basis_labels(&self, h: &FiniteGroup) -> Result<Vec<String>> {
        let p = h.sigma_classes(self.kind);
        Ok((0..p.len())
            .map(|c| format!("1[{}:{}|{}]", h.label(), p.rep(c), p.class(c).len()))
            .collect())
    }

    /// `(U f)(k) = |G|⁻¹ Σ f(g)` over pairs `(u, g)` with `k u = u g`.
    fn act_biset(&self, u: &Biset) -> Result<Matrix> {
        let (k, g) = (u.left(), u.right());
        let (pk, pg) = (k.sigma_classes(self.kind), g.sigma_classes(self.kind));
        let (rows, cols) = (pk.len(), pg.len());
        let mut counts = vec![0u64; rows * cols];
        let mut image: Vec<(u32, u32)> = Vec::with_capacity(g.order());
        for x in 0..u.size() {
            image.clear();
            image.extend(g.elements().map(|b| (u.act_right(x, b) as u32, pg.class_of(b) as u32)));
            image.sort_unstable();
            for c in 0..rows {
                let v = u.act_left(pk.rep(c), x) as u32;
                let start = image.partition_point(|&(w, _)| w < v);
                for &(w, d) in &image[start..] {
                    if w != v {
                        break;
                    }
                    counts[c * cols + d as usize] += 1;
                }
            }
        }
        let n = g.order() as i64;
        let columns = (0..cols)
            .map(|d| {
                SparseVec::from_entries(
                    (0..rows)
                        .filter(|&c| counts[c * cols + d] != 0)
                        .map(|c| (c, q(counts[c * cols + d] as i64, n)))
                        .collect(),
                )
            })
            .collect();
        Ok(Matrix::from_columns(rows, columns))
    }

    fn cross_basis(&self, k: &FiniteGroup, h: &FiniteGroup, i: usize, j: usize) -> Result<SparseVec> {
        self.shifted_cross_basis(k, h, &FiniteGroup::trivial(), i, j)
    }

    fn epsilon(&self) -> SparseVec {
        SparseVec::unit(0)
    }

    fn pa_compose_basis(&self, l: &FiniteGroup, k: &FiniteGroup, h: &FiniteGroup, i: usize, j: usize) -> Result<SparseVec> {
        self.shifted_compose_basis(l, k, h, &FiniteGroup::trivial(), i, j)
    }

    fn essential_cap(&self) -> usize {
        15
    }
}

impl ShiftBase for ClassFunctions {
    /// Tables stay small enough for `|H x G| ≤ 54`, i.e. `H ≤ 9` against `S3`.
    fn shifted_essential_cap(&self) -> usize {
        54
    }

    /// `(a x^d b)(k, h, g) = a(k, g) b(h, g)`.
    fn shifted_cross_basis(&self, k: &FiniteGroup, h: &FiniteGroup, g: &FiniteGroup, i: usize, j: usize) -> Result<SparseVec> {
        Ok(self.cross_tensor(k, h, g)?.get(&(i, j)).cloned().unwrap_or_else(SparseVec::zero))
    }

    /// `(β ∘ α)(l, h, g) = |K|⁻¹ Σ_k β(l, k, g) α(k, h, g)`.
    fn shifted_compose_basis(
        &self,
        l: &FiniteGroup,
        k: &FiniteGroup,
        h: &FiniteGroup,
        g: &FiniteGroup,
        i: usize,
        j: usize,
    ) -> Result<SparseVec> {
        Ok(self.compose_tensor(l, k, h, g)?.get(&(i, j)).cloned().unwrap_or_else(SparseVec::zero))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;
    use crate::functor::{definitional, pa_identity};
    use crate::group::direct_product;
    use crate::linalg::qi;

    fn cat(label: &str) -> FiniteGroup {
        Catalog::builtin().get(label).unwrap().clone()
    }

    #[test]
    fn identity_on_c2() {
        let f = ClassFunctions::new(SigmaKind::Ordinary);
        let c2 = cat("C2");
        // Id is |H| times the indicator of the diagonal: classes (0,0) and (1,1)
        let id = pa_identity(&f, &c2).unwrap();
        let p = direct_product(&c2, &c2);
        let pc = p.group.sigma_classes(SigmaKind::Ordinary);
        let expect = SparseVec::from_entries(vec![
            (pc.class_of(p.pair(0, 0)), qi(2)),
            (pc.class_of(p.pair(1, 1)), qi(2)),
        ]);
        assert_eq!(id, expect);
        assert_eq!(id.to_dense(4), vec![qi(2), qi(0), qi(0), qi(2)]);
    }

    #[test]
    fn rational_and_ordinary_differ_on_c3() {
        let c3 = cat("C3");
        assert_eq!(ClassFunctions::new(SigmaKind::Ordinary).dim(&c3).unwrap(), 3);
        assert_eq!(ClassFunctions::new(SigmaKind::Rational).dim(&c3).unwrap(), 2);
    }

    #[test]
    fn fast_paths_match_definitions() {
        for kind in [SigmaKind::Ordinary, SigmaKind::Rational] {
            let f = ClassFunctions::new(kind);
            let groups = [FiniteGroup::trivial(), cat("C2"), cat("C3"), cat("S3")];
            for l in &groups {
                for k in &groups {
                    for h in &groups {
                        if l.order() * k.order() * k.order() * h.order() > 72 {
                            continue;
                        }
                        let lk = direct_product(l, k).group;
                        let kh = direct_product(k, h).group;
                        for i in 0..f.dim(&lk).unwrap() {
                            for j in 0..f.dim(&kh).unwrap() {
                                let fast = f.pa_compose_basis(l, k, h, i, j).unwrap();
                                let slow =
                                    definitional::pa_compose(&f, l, k, h, &SparseVec::unit(i), &SparseVec::unit(j)).unwrap();
                                assert_eq!(fast, slow);
                            }
                        }
                    }
                }
            }
            let c2 = cat("C2");
            for (k, h) in [(&groups[0], &c2), (&c2, &groups[2])] {
                let kg = direct_product(k, &c2).group;
                let hg = direct_product(h, &c2).group;
                for i in 0..f.dim(&kg).unwrap() {
                    for j in 0..f.dim(&hg).unwrap() {
                        let fast = f.shifted_cross_basis(k, h, &c2, i, j).unwrap();
                        let slow = definitional::shifted_cross(&f, k, h, &c2, &SparseVec::unit(i), &SparseVec::unit(j)).unwrap();
                        assert_eq!(fast, slow);
                    }
                }
            }
        }
    }
}
