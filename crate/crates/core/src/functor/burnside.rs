//! The Burnside functor: `B(H)` has the transitive `H`-sets as basis.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use dashmap::DashMap;
use num_traits::{One, Zero};

use super::{GreenFunctor, ShiftBase};
use crate::biset::{orbits_of, Biset, CosetSpace};
use crate::error::Result;
use crate::group::{product_of, tuple_coords, tuple_index, Elem, FiniteGroup};
use crate::linalg::{Matrix, SparseVec, Q};

type Key = (u64, u64, u64, u64, usize, usize);

#[derive(Default)]
pub struct Burnside {
    cross: DashMap<Key, SparseVec>,
    compose: DashMap<Key, SparseVec>,
}

impl Burnside {
    pub fn new() -> Self {
        Self::default()
    }
}

/// Coset space of the representative of a subgroup class, cached.
fn cosets(m: &FiniteGroup, class: usize) -> Result<Arc<CosetSpace>> {
    static C: OnceLock<DashMap<(u64, usize), Arc<CosetSpace>>> = OnceLock::new();
    let cache = C.get_or_init(DashMap::new);
    if let Some(c) = cache.get(&(m.id(), class)) {
        return Ok(c.clone());
    }
    let lat = m.subgroup_lattice()?;
    let cs = Arc::new(CosetSpace::new(m, lat.class_rep(class).elements()));
    cache.insert((m.id(), class), cs.clone());
    Ok(cs)
}

/// Decomposes the `M`-set on `0..n` into subgroup classes of `M`.
fn decompose(m: &FiniteGroup, n: usize, act: impl Fn(Elem, usize) -> usize) -> Result<SparseVec> {
    let lat = m.subgroup_lattice()?;
    let mut counts: BTreeMap<usize, Q> = BTreeMap::new();
    for o in orbits_of(m, m.generators(), n, act) {
        let c = lat.class_of_elements(&o.stabilizer).expect("stabilizer is a subgroup");
        *counts.entry(c).or_insert_with(Q::zero) += Q::one();
    }
    Ok(SparseVec::from_entries(counts.into_iter().collect()))
}

/// Labels each point with the least point of its orbit under `gens`,
/// returning orbit ids and one representative per orbit.
fn orbit_ids(n: usize, gens: &[Elem], act: impl Fn(Elem, usize) -> usize) -> (Vec<u32>, Vec<usize>) {
    let mut id = vec![u32::MAX; n];
    let mut reps = Vec::new();
    let mut stack = Vec::new();
    for x in 0..n {
        if id[x] != u32::MAX {
            continue;
        }
        let o = reps.len() as u32;
        reps.push(x);
        id[x] = o;
        stack.push(x);
        while let Some(y) = stack.pop() {
            for &s in gens {
                let z = act(s, y);
                if id[z] == u32::MAX {
                    id[z] = o;
                    stack.push(z);
                }
            }
        }
    }
    (id, reps)
}

impl GreenFunctor for Burnside {
    fn name(&self) -> String {
        "burnside".into()
    }

    fn dim(&self, h: &FiniteGroup) -> Result<usize> {
        Ok(h.subgroup_lattice()?.num_classes())
    }

    fn basis_labels(&self, h: &FiniteGroup) -> Result<Vec<String>> {
        let lat = h.subgroup_lattice()?;
        Ok((0..lat.num_classes())
            .map(|c| format!("[{}/S{}:{}]", h.label(), c, lat.class_rep(c).order()))
            .collect())
    }

    /// `[G/S] ↦ U ×_G G/S`, which as a `K`-set is `U/S`.
    fn act_biset(&self, u: &Biset) -> Result<Matrix> {
        let (k, g) = (u.left(), u.right());
        let lat_g = g.subgroup_lattice()?;
        let rows = k.subgroup_lattice()?.num_classes();
        let mut cols = Vec::with_capacity(lat_g.num_classes());
        for c in 0..lat_g.num_classes() {
            let s_gens = g.generators_of(lat_g.class_rep(c).elements());
            let (id, reps) = orbit_ids(u.size(), &s_gens, |s, x| u.act_right(x, s));
            cols.push(decompose(k, reps.len(), |m, o| id[u.act_left(m, reps[o])] as usize)?);
        }
        Ok(Matrix::from_columns(rows, cols))
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
        8
    }
}

impl ShiftBase for Burnside {
    fn shifted_essential_cap(&self) -> usize {
        12
    }

    /// `X x Y` restricted along `K x H x G -> (K x G) x (H x G)`.
    fn shifted_cross_basis(&self, k: &FiniteGroup, h: &FiniteGroup, g: &FiniteGroup, i: usize, j: usize) -> Result<SparseVec> {
        let key = (k.id(), h.id(), g.id(), 0, i, j);
        if let Some(v) = self.cross.get(&key) {
            return Ok(v.clone());
        }
        let kg = product_of(&[k, g]);
        let hg = product_of(&[h, g]);
        let m = product_of(&[k, h, g]);
        let x = cosets(&kg, i)?;
        let y = cosets(&hg, j)?;
        let split: Vec<(Elem, Elem)> = m
            .elements()
            .map(|e| {
                let c = tuple_coords(&[k, h, g], e);
                (tuple_index(&[k, g], &[c[0], c[2]]), tuple_index(&[h, g], &[c[1], c[2]]))
            })
            .collect();
        let ny = y.len();
        let v = decompose(&m, x.len() * ny, |e, p| {
            let (a, b) = split[e as usize];
            x.act(a, p / ny) * ny + y.act(b, p % ny)
        })?;
        self.cross.insert(key, v.clone());
        Ok(v)
    }

    /// `(X x Y)/K` with `K` acting through both middle coordinates, as an
    /// `L x H x G`-set.
    fn shifted_compose_basis(
        &self,
        l: &FiniteGroup,
        k: &FiniteGroup,
        h: &FiniteGroup,
        g: &FiniteGroup,
        i: usize,
        j: usize,
    ) -> Result<SparseVec> {
        let key = (l.id(), k.id(), h.id(), g.id(), i, j);
        if let Some(v) = self.compose.get(&key) {
            return Ok(v.clone());
        }
        let m1 = product_of(&[l, k, g]);
        let m2 = product_of(&[k, h, g]);
        let out = product_of(&[l, h, g]);
        let x = cosets(&m1, i)?;
        let y = cosets(&m2, j)?;
        let ny = y.len();
        let (el, ek, eh, eg) = (l.identity(), k.identity(), h.identity(), g.identity());
        let k_gens: Vec<(Elem, Elem)> = k
            .generators()
            .iter()
            .map(|&a| (tuple_index(&[l, k, g], &[el, a, eg]), tuple_index(&[k, h, g], &[a, eh, eg])))
            .collect();
        let idx: Vec<Elem> = (0..k_gens.len() as Elem).collect();
        let (id, reps) = orbit_ids(x.len() * ny, &idx, |s, p| {
            let (a, b) = k_gens[s as usize];
            x.act(a, p / ny) * ny + y.act(b, p % ny)
        });
        let split: Vec<(Elem, Elem)> = out
            .elements()
            .map(|e| {
                let c = tuple_coords(&[l, h, g], e);
                (tuple_index(&[l, k, g], &[c[0], ek, c[2]]), tuple_index(&[k, h, g], &[ek, c[1], c[2]]))
            })
            .collect();
        let v = decompose(&out, reps.len(), |e, o| {
            let (a, b) = split[e as usize];
            let p = reps[o];
            id[x.act(a, p / ny) * ny + y.act(b, p % ny)] as usize
        })?;
        self.compose.insert(key, v.clone());
        Ok(v)
    }
}
