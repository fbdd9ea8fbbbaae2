//! Finite bisets, their composition as orbit sets, and the double Burnside
//! group they generate.
//!
//! A `(K, G)`-biset is stored through two flat action tables:
//! `left_action[k * size + x] = k·x` and `right_action[x * |G| + g] = x·g`.
//! Transitive bisets `[(K x G)/L]` are realized on the left cosets of `L`,
//! ordered by least element, with `(k, g)` acting as `k·x·g⁻¹`.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use dashmap::DashMap;
use num_traits::{One, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::group::{direct_product, DirectProduct, Elem, FiniteGroup, Homomorphism, Subgroup};
use crate::linalg::{SparseVec, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Biset {
    left: FiniteGroup,
    right: FiniteGroup,
    size: usize,
    left_action: Vec<u32>,
    right_action: Vec<u32>,
}

impl Biset {
    /// Validates the action tables: both must be actions and they must commute.
    /// Checking generators is enough since a map agreeing with a homomorphism
    /// on generators, and respecting the identity, is determined by them.
    pub fn from_actions(
        left: FiniteGroup,
        right: FiniteGroup,
        size: usize,
        left_action: Vec<u32>,
        right_action: Vec<u32>,
    ) -> Result<Biset> {
        if left_action.len() != left.order() * size || right_action.len() != size * right.order() {
            return Err(Error::DimensionMismatch {
                expected: (left.order() + right.order()) * size,
                got: left_action.len() + right_action.len(),
            });
        }
        if left_action.iter().chain(&right_action).any(|&x| x as usize >= size) {
            return Err(Error::NotAnAction("point out of range in a"));
        }
        let b = Biset::from_trusted(left, right, size, left_action, right_action);
        let (k, g) = (&b.left, &b.right);
        for x in 0..size {
            if b.act_left(k.identity(), x) != x {
                return Err(Error::NotAnAction("left"));
            }
            if b.act_right(x, g.identity()) != x {
                return Err(Error::NotAnAction("right"));
            }
        }
        for &s in k.generators() {
            for a in k.elements() {
                for x in 0..size {
                    if b.act_left(k.mul(s, a), x) != b.act_left(s, b.act_left(a, x)) {
                        return Err(Error::NotAnAction("left"));
                    }
                }
            }
        }
        for &t in g.generators() {
            for a in g.elements() {
                for x in 0..size {
                    if b.act_right(x, g.mul(a, t)) != b.act_right(b.act_right(x, a), t) {
                        return Err(Error::NotAnAction("right"));
                    }
                }
            }
        }
        for &s in k.generators() {
            for &t in g.generators() {
                for x in 0..size {
                    if b.act_right(b.act_left(s, x), t) != b.act_left(s, b.act_right(x, t)) {
                        return Err(Error::ActionsDoNotCommute);
                    }
                }
            }
        }
        Ok(b)
    }

    pub(crate) fn from_trusted(
        left: FiniteGroup,
        right: FiniteGroup,
        size: usize,
        left_action: Vec<u32>,
        right_action: Vec<u32>,
    ) -> Biset {
        debug_assert_eq!(left_action.len(), left.order() * size);
        debug_assert_eq!(right_action.len(), right.order() * size);
        Biset {
            left,
            right,
            size,
            left_action,
            right_action,
        }
    }

    /// Builds a biset from action closures; the caller guarantees the axioms.
    pub(crate) fn from_fns(
        left: &FiniteGroup,
        right: &FiniteGroup,
        size: usize,
        l: impl Fn(Elem, usize) -> usize,
        r: impl Fn(usize, Elem) -> usize,
    ) -> Biset {
        let mut left_action = Vec::with_capacity(left.order() * size);
        for k in left.elements() {
            for x in 0..size {
                left_action.push(l(k, x) as u32);
            }
        }
        let mut right_action = Vec::with_capacity(size * right.order());
        for x in 0..size {
            for g in right.elements() {
                right_action.push(r(x, g) as u32);
            }
        }
        Biset::from_trusted(left.clone(), right.clone(), size, left_action, right_action)
    }

    pub fn left(&self) -> &FiniteGroup {
        &self.left
    }

    pub fn right(&self) -> &FiniteGroup {
        &self.right
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn act_left(&self, k: Elem, x: usize) -> usize {
        self.left_action[k as usize * self.size + x] as usize
    }

    #[inline]
    pub fn act_right(&self, x: usize, g: Elem) -> usize {
        self.right_action[x * self.right.order() + g as usize] as usize
    }

    /// The empty `(K, G)`-biset.
    pub fn empty(left: &FiniteGroup, right: &FiniteGroup) -> Biset {
        Biset::from_trusted(left.clone(), right.clone(), 0, Vec::new(), Vec::new())
    }

    /// A single point with trivial actions.
    pub fn point(left: &FiniteGroup, right: &FiniteGroup) -> Biset {
        Biset::from_fns(left, right, 1, |_, _| 0, |_, _| 0)
    }

    /// `G` acting on itself by multiplication on both sides.
    pub fn identity(g: &FiniteGroup) -> Biset {
        Biset::from_fns(g, g, g.order(), |a, x| g.mul(a, x as Elem) as usize, |x, b| g.mul(x as Elem, b) as usize)
    }

    /// `g·x·h = h⁻¹ x g⁻¹`: a `(G, K)`-biset from a `(K, G)`-biset.
    pub fn opposite(&self) -> Biset {
        let (k, g) = (&self.left, &self.right);
        Biset::from_fns(g, k, self.size, |a, x| self.act_right(x, g.inv(a)), |x, b| self.act_left(k.inv(b), x))
    }

    pub fn disjoint_union(&self, other: &Biset) -> Result<Biset> {
        if self.left != other.left || self.right != other.right {
            return Err(Error::MiddleGroupMismatch(
                format!("{}/{}", self.left, self.right),
                format!("{}/{}", other.left, other.right),
            ));
        }
        let n = self.size;
        Ok(Biset::from_fns(
            &self.left,
            &self.right,
            n + other.size,
            |k, x| if x < n { self.act_left(k, x) } else { n + other.act_left(k, x - n) },
            |x, g| if x < n { self.act_right(x, g) } else { n + other.act_right(x - n, g) },
        ))
    }

    /// `Y ∘ X`, with the orbit index of every pair `(y, x)` (pair index
    /// `y * |X| + x`).
    pub fn compose_with_orbits(y: &Biset, x: &Biset) -> Result<(Biset, Vec<u32>)> {
        if y.right != x.left {
            return Err(Error::MiddleGroupMismatch(y.right.label().into(), x.left.label().into()));
        }
        let h = &x.left;
        let (ny, nx) = (y.size, x.size);
        let gens: Vec<Elem> = h.generators().iter().map(|&s| h.inv(s)).collect();
        let mut orbit_of = vec![u32::MAX; ny * nx];
        let mut reps: Vec<(usize, usize)> = Vec::new();
        let mut stack = Vec::new();
        for p in 0..ny * nx {
            if orbit_of[p] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push((p / nx.max(1), p % nx.max(1)));
            orbit_of[p] = id;
            stack.push(p);
            while let Some(q) = stack.pop() {
                let (a, b) = (q / nx, q % nx);
                // h·(y, x) = (y·h⁻¹, h·x), run over h = s⁻¹ for generators s
                for &t in &gens {
                    let r = y.act_right(a, h.inv(t)) * nx + x.act_left(t, b);
                    if orbit_of[r] == u32::MAX {
                        orbit_of[r] = id;
                        stack.push(r);
                    }
                }
            }
        }
        let composed = Biset::from_fns(
            &y.left,
            &x.right,
            reps.len(),
            |k, o| {
                let (a, b) = reps[o];
                orbit_of[y.act_left(k, a) * nx + b] as usize
            },
            |o, g| {
                let (a, b) = reps[o];
                orbit_of[a * nx + x.act_right(b, g)] as usize
            },
        );
        Ok((composed, orbit_of))
    }

    pub fn compose(y: &Biset, x: &Biset) -> Result<Biset> {
        Ok(Biset::compose_with_orbits(y, x)?.0)
    }

    /// External product: an `(L x H, K x G)`-biset on `Y x X`, point
    /// `(y, x)` stored at `y * |X| + x`.
    pub fn external(y: &Biset, x: &Biset) -> Biset {
        let lp = direct_product(&y.left, &x.left);
        let rp = direct_product(&y.right, &x.right);
        let nx = x.size;
        Biset::from_fns(
            &lp.group,
            &rp.group,
            y.size * nx,
            |m, p| {
                let (l, h) = lp.unpair(m);
                y.act_left(l, p / nx) * nx + x.act_left(h, p % nx)
            },
            |p, m| {
                let (k, g) = rp.unpair(m);
                y.act_right(p / nx, k) * nx + x.act_right(p % nx, g)
            },
        )
    }

    /// Orbits of `K x G` under `(k, g)·x = k·x·g⁻¹`, with stabilizers as sorted
    /// element lists of `K x G`.
    pub fn orbits(&self) -> (DirectProduct, Vec<Orbit>) {
        let p = direct_product(&self.left, &self.right);
        let gens = product_generators(&p);
        let orbits = orbits_of(&p.group, &gens, self.size, |m, x| {
            let (k, g) = p.unpair(m);
            self.act_right(self.act_left(k, x), self.right.inv(g))
        });
        (p, orbits)
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().1.len() == 1
    }

    /// Orbit decomposition in the basis of transitive classes.
    pub fn decompose(&self) -> Result<BurnsideElement> {
        let (p, orbits) = self.orbits();
        let lattice = p.group.subgroup_lattice()?;
        let mut coeffs: BTreeMap<usize, Q> = BTreeMap::new();
        for o in orbits {
            let c = lattice
                .class_of_elements(&o.stabilizer)
                .expect("stabilizer is a subgroup");
            *coeffs.entry(c).or_insert_with(Q::zero) += Q::one();
        }
        Ok(BurnsideElement {
            left: self.left.clone(),
            right: self.right.clone(),
            coeffs,
        })
    }

    /// Lattice-free isomorphism invariant: the sorted multiset of orbit
    /// stabilizers, each replaced by its least conjugate.
    pub fn canonical_key(&self) -> Vec<Vec<Elem>> {
        let (p, orbits) = self.orbits();
        let mut keys: Vec<Vec<Elem>> = orbits
            .iter()
            .map(|o| least_conjugate_in_product(&p, &o.stabilizer))
            .collect();
        keys.sort();
        keys
    }

    /// Isomorphism of bisets, decided by comparing orbit stabilizer classes.
    pub fn is_isomorphic(&self, other: &Biset) -> bool {
        self.left == other.left
            && self.right == other.right
            && self.size == other.size
            && self.canonical_key() == other.canonical_key()
    }
}

fn product_generators(p: &DirectProduct) -> Vec<Elem> {
    let (e1, e2) = (p.left.identity(), p.right.identity());
    p.left
        .generators()
        .iter()
        .map(|&k| p.pair(k, e2))
        .chain(p.right.generators().iter().map(|&g| p.pair(e1, g)))
        .collect()
}

/// Least `m S m⁻¹` over `m` in the product, conjugating componentwise.
fn least_conjugate_in_product(p: &DirectProduct, s: &[Elem]) -> Vec<Elem> {
    let (k, g) = (&p.left, &p.right);
    let mut best = s.to_vec();
    let mut buf = Vec::with_capacity(s.len());
    for a in k.elements() {
        for b in g.elements() {
            buf.clear();
            buf.extend(s.iter().map(|&x| {
                let (u, v) = p.unpair(x);
                p.pair(k.conj(a, u), g.conj(b, v))
            }));
            buf.sort_unstable();
            if buf < best {
                best.clone_from(&buf);
            }
        }
    }
    best
}

/// An orbit of a left action: least point, size and point stabilizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub rep: usize,
    pub size: usize,
    pub stabilizer: Vec<Elem>,
}

/// Orbits of a left action of `group` on `0..n`, found by search along
/// `gens`; stabilizers are taken by testing every group element.
pub(crate) fn orbits_of(
    group: &FiniteGroup,
    gens: &[Elem],
    n: usize,
    act: impl Fn(Elem, usize) -> usize,
) -> Vec<Orbit> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        seen[x] = true;
        stack.push(x);
        let mut size = 0;
        while let Some(y) = stack.pop() {
            size += 1;
            for &s in gens {
                let z = act(s, y);
                if !seen[z] {
                    seen[z] = true;
                    stack.push(z);
                }
            }
        }
        let stabilizer = group.elements().filter(|&m| act(m, x) == x).collect();
        out.push(Orbit { rep: x, size, stabilizer });
    }
    out
}

/// Left cosets `aL` of a subgroup, ordered by least element.
#[derive(Clone, Debug)]
pub(crate) struct CosetSpace {
    pub group: FiniteGroup,
    pub coset_of: Vec<u32>,
    pub reps: Vec<Elem>,
}

impl CosetSpace {
    pub fn new(group: &FiniteGroup, sub: &[Elem]) -> CosetSpace {
        let mut coset_of = vec![u32::MAX; group.order()];
        let mut reps = Vec::new();
        for a in group.elements() {
            if coset_of[a as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(a);
            for &s in sub {
                coset_of[group.mul(a, s) as usize] = id;
            }
        }
        CosetSpace {
            group: group.clone(),
            coset_of,
            reps,
        }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    #[inline]
    pub fn act(&self, m: Elem, c: usize) -> usize {
        self.coset_of[self.group.mul(m, self.reps[c]) as usize] as usize
    }
}

/// `[(K x G)/L]` for a subgroup `L` of `K x G` given by sorted elements.
pub fn transitive_from_subgroup(k: &FiniteGroup, g: &FiniteGroup, l: &[Elem]) -> Result<Biset> {
    let p = direct_product(k, g);
    let sub = Subgroup::new(&p.group, l.to_vec())?;
    let cosets = CosetSpace::new(&p.group, sub.elements());
    let (ek, eg) = (k.identity(), g.identity());
    Ok(Biset::from_fns(
        k,
        g,
        cosets.len(),
        |a, c| cosets.act(p.pair(a, eg), c),
        |c, b| cosets.act(p.pair(ek, g.inv(b)), c),
    ))
}

/// The transitive biset of a subgroup class of `K x G`, cached.
pub fn transitive_from_class(k: &FiniteGroup, g: &FiniteGroup, class: usize) -> Result<Arc<Biset>> {
    static CACHE: OnceLock<DashMap<(u64, u64, usize), Arc<Biset>>> = OnceLock::new();
    let cache = CACHE.get_or_init(DashMap::new);
    if let Some(b) = cache.get(&(k.id(), g.id(), class)) {
        return Ok(b.clone());
    }
    let lattice = direct_product(k, g).group.subgroup_lattice()?;
    if class >= lattice.num_classes() {
        return Err(Error::NotASubgroup);
    }
    let b = Arc::new(transitive_from_subgroup(k, g, lattice.class_rep(class).elements())?);
    cache.insert((k.id(), g.id(), class), b.clone());
    Ok(b)
}

/// `Res^G_H = _H G_G`.
pub fn basic_res(g: &FiniteGroup, h: &Subgroup) -> Result<Biset> {
    if !g.is_subgroup(h.elements()) {
        return Err(Error::NotASubgroup);
    }
    let (hg, emb) = g.subgroup_as_group(h);
    Ok(Biset::from_fns(&hg, g, g.order(), |a, x| g.mul(emb[a as usize], x as Elem) as usize, |x, b| {
        g.mul(x as Elem, b) as usize
    }))
}

/// `Ind^G_H = _G G_H`.
pub fn basic_ind(g: &FiniteGroup, h: &Subgroup) -> Result<Biset> {
    if !g.is_subgroup(h.elements()) {
        return Err(Error::NotASubgroup);
    }
    let (hg, emb) = g.subgroup_as_group(h);
    Ok(Biset::from_fns(g, &hg, g.order(), |a, x| g.mul(a, x as Elem) as usize, |x, b| {
        g.mul(x as Elem, emb[b as usize]) as usize
    }))
}

/// `Inf^G_{G/N} = _G (G/N)_{G/N}`.
pub fn basic_inf(g: &FiniteGroup, n: &Subgroup) -> Result<Biset> {
    let (q, proj) = g.quotient(n)?;
    Ok(Biset::from_fns(g, &q, q.order(), |a, x| q.mul(proj[a as usize], x as Elem) as usize, |x, b| {
        q.mul(x as Elem, b) as usize
    }))
}

/// `Def^G_{G/N} = _{G/N} (G/N)_G`.
pub fn basic_def(g: &FiniteGroup, n: &Subgroup) -> Result<Biset> {
    let (q, proj) = g.quotient(n)?;
    Ok(Biset::from_fns(&q, g, q.order(), |a, x| q.mul(a, x as Elem) as usize, |x, b| {
        q.mul(x as Elem, proj[b as usize]) as usize
    }))
}

/// `Iso(ψ)` for a bijection `ψ: H -> G`: the `(G, H)`-biset `G` with
/// `a·x·h = a x ψ(h)`.
pub fn basic_iso(psi: &Homomorphism) -> Result<Biset> {
    if !psi.is_bijective() {
        return Err(Error::NotBijective);
    }
    let g = &psi.target;
    Ok(Biset::from_fns(g, &psi.source, g.order(), |a, x| g.mul(a, x as Elem) as usize, |x, h| {
        g.mul(x as Elem, psi.apply(h)) as usize
    }))
}

/// `→H`: the `(H x H, 1)`-biset `H` with `(h1, h2)·h = h1 h h2⁻¹`.
pub fn arrow_right(h: &FiniteGroup) -> Biset {
    let p = direct_product(h, h);
    Biset::from_fns(
        &p.group,
        &FiniteGroup::trivial(),
        h.order(),
        |m, x| {
            let (a, b) = p.unpair(m);
            h.mul(h.mul(a, x as Elem), h.inv(b)) as usize
        },
        |x, _| x,
    )
}

/// `←H`, the opposite of `→H`.
pub fn arrow_left(h: &FiniteGroup) -> Biset {
    arrow_right(h).opposite()
}

/// `{(k, g)} -> {(g, k)}` between subgroups of `K x G` and `G x K`.
pub fn transpose_subgroup(k: &FiniteGroup, g: &FiniteGroup, l: &[Elem]) -> Vec<Elem> {
    let kg = direct_product(k, g);
    let gk = direct_product(g, k);
    let mut out: Vec<Elem> = l
        .iter()
        .map(|&x| {
            let (a, b) = kg.unpair(x);
            gk.pair(b, a)
        })
        .collect();
    out.sort_unstable();
    out
}

/// A rational combination of transitive `(K, G)`-biset classes, keyed by the
/// subgroup class ids of `K x G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BurnsideElement {
    pub left: FiniteGroup,
    pub right: FiniteGroup,
    coeffs: BTreeMap<usize, Q>,
}

impl BurnsideElement {
    pub fn zero(left: &FiniteGroup, right: &FiniteGroup) -> Self {
        BurnsideElement {
            left: left.clone(),
            right: right.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis(left: &FiniteGroup, right: &FiniteGroup, class: usize) -> Self {
        let mut b = BurnsideElement::zero(left, right);
        b.coeffs.insert(class, Q::one());
        b
    }

    pub fn from_coeffs(left: &FiniteGroup, right: &FiniteGroup, coeffs: impl IntoIterator<Item = (usize, Q)>) -> Self {
        let mut b = BurnsideElement::zero(left, right);
        for (c, v) in coeffs {
            b.add_term(c, &v);
        }
        b
    }

    /// `[G]` in `B(G, G)`.
    pub fn identity(g: &FiniteGroup) -> Result<Self> {
        Biset::identity(g).decompose()
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, Q> {
        &self.coeffs
    }

    pub fn get(&self, class: usize) -> Q {
        self.coeffs.get(&class).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, class: usize, v: &Q) {
        let e = self.coeffs.entry(class).or_insert_with(Q::zero);
        *e += v;
        if e.is_zero() {
            self.coeffs.remove(&class);
        }
    }

    pub fn add(&self, other: &BurnsideElement) -> Result<Self> {
        if self.left != other.left || self.right != other.right {
            return Err(Error::MiddleGroupMismatch(self.left.label().into(), other.left.label().into()));
        }
        let mut out = self.clone();
        for (c, v) in &other.coeffs {
            out.add_term(*c, v);
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Q) -> Self {
        let mut out = BurnsideElement::zero(&self.left, &self.right);
        if !s.is_zero() {
            out.coeffs = self.coeffs.iter().map(|(c, v)| (*c, v * s)).collect();
        }
        out
    }

    pub fn to_sparse(&self) -> SparseVec {
        SparseVec::from_entries(self.coeffs.iter().map(|(c, v)| (*c, v.clone())).collect())
    }

    /// `{left, right, entries: [[class_id, num, den]]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|(c, v)| json!([c, v.numer().to_string(), v.denom().to_string()]))
            .collect();
        json!({ "left": self.left.label(), "right": self.right.label(), "entries": entries })
    }
}

type ClassPairKey = (u64, u64, u64, u64, usize, usize);

fn compose_cache() -> &'static DashMap<ClassPairKey, Arc<BTreeMap<usize, Q>>> {
    static C: OnceLock<DashMap<ClassPairKey, Arc<BTreeMap<usize, Q>>>> = OnceLock::new();
    C.get_or_init(DashMap::new)
}

/// Bilinear extension of composition, memoized per pair of transitive classes.
pub fn burnside_compose(beta: &BurnsideElement, alpha: &BurnsideElement) -> Result<BurnsideElement> {
    if beta.right != alpha.left {
        return Err(Error::MiddleGroupMismatch(beta.right.label().into(), alpha.left.label().into()));
    }
    let (k, h, g) = (&beta.left, &beta.right, &alpha.right);
    let mut out = BurnsideElement::zero(k, g);
    for (c1, v1) in &beta.coeffs {
        for (c2, v2) in &alpha.coeffs {
            // no group id is u64::MAX, so this cannot collide with an external key
            let key = (k.id(), h.id(), g.id(), u64::MAX, *c1, *c2);
            let terms = match compose_cache().get(&key) {
                Some(t) => t.clone(),
                None => {
                    let y = transitive_from_class(k, h, *c1)?;
                    let x = transitive_from_class(h, g, *c2)?;
                    let t = Arc::new(Biset::compose(&y, &x)?.decompose()?.coeffs);
                    compose_cache().insert(key, t.clone());
                    t
                }
            };
            let s = v1 * v2;
            for (c, v) in terms.iter() {
                out.add_term(*c, &(v * &s));
            }
        }
    }
    Ok(out)
}

/// Bilinear extension of the external product, memoized per class pair.
pub fn burnside_external(beta: &BurnsideElement, alpha: &BurnsideElement) -> Result<BurnsideElement> {
    let (l, k, h, g) = (&beta.left, &beta.right, &alpha.left, &alpha.right);
    let lh = direct_product(l, h).group;
    let kg = direct_product(k, g).group;
    let mut out = BurnsideElement::zero(&lh, &kg);
    for (c1, v1) in &beta.coeffs {
        for (c2, v2) in &alpha.coeffs {
            let key = (l.id(), k.id(), h.id(), g.id(), *c1, *c2);
            let terms = match compose_cache().get(&key) {
                Some(t) => t.clone(),
                None => {
                    let y = transitive_from_class(l, k, *c1)?;
                    let x = transitive_from_class(h, g, *c2)?;
                    let t = Arc::new(Biset::external(&y, &x).decompose()?.coeffs);
                    compose_cache().insert(key, t.clone());
                    t
                }
            };
            let s = v1 * v2;
            for (c, v) in terms.iter() {
                out.add_term(*c, &(v * &s));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;
    use crate::linalg::qi;

    fn cat(label: &str) -> FiniteGroup {
        Catalog::builtin().get(label).unwrap().clone()
    }

    fn sub(g: &FiniteGroup, els: &[Elem]) -> Subgroup {
        Subgroup::new(g, els.to_vec()).unwrap()
    }

    fn trivial_sub(g: &FiniteGroup) -> Subgroup {
        sub(g, &[g.identity()])
    }

    fn whole(g: &FiniteGroup) -> Subgroup {
        sub(g, &g.elements().collect::<Vec<_>>())
    }

    fn diagonal_class(g: &FiniteGroup) -> usize {
        let p = direct_product(g, g);
        let mut d: Vec<Elem> = g.elements().map(|x| p.pair(x, x)).collect();
        d.sort_unstable();
        p.group.subgroup_lattice().unwrap().class_of_elements(&d).unwrap()
    }

    #[test]
    fn validation() {
        let one = FiniteGroup::trivial();
        let c2 = cat("C2");
        assert_eq!(Biset::from_actions(c2.clone(), c2.clone(), 0, vec![], vec![]).unwrap().size(), 0);
        let id = Biset::identity(&c2);
        let rebuilt =
            Biset::from_actions(c2.clone(), c2.clone(), 2, id.left_action.clone(), id.right_action.clone()).unwrap();
        assert_eq!(rebuilt, id);
        // C2 swaps 0,1 on the left and 1,2 on the right: the swaps do not commute
        let left = vec![0, 1, 2, 1, 0, 2];
        let right = vec![0, 0, 1, 2, 2, 1];
        assert_eq!(
            Biset::from_actions(c2.clone(), c2.clone(), 3, left, right).unwrap_err(),
            Error::ActionsDoNotCommute
        );
        let bad_left = vec![0, 1, 0, 0];
        assert_eq!(
            Biset::from_actions(c2.clone(), one.clone(), 2, bad_left, vec![0, 1]).unwrap_err(),
            Error::NotAnAction("left")
        );
    }

    #[test]
    fn opposite_is_an_involution() {
        let s3 = cat("S3");
        let h = sub(&s3, &[0, 3]);
        let x = basic_ind(&s3, &h).unwrap();
        assert_eq!(x.opposite().opposite(), x);
        assert!(x.opposite().is_isomorphic(&basic_res(&s3, &h).unwrap()));
        let c3 = cat("C3");
        assert!(arrow_right(&c3).opposite().is_isomorphic(&arrow_left(&c3)));
    }

    #[test]
    fn basic_bisets() {
        let c4 = cat("C4");
        let id = Biset::identity(&c4);
        assert!(basic_res(&c4, &whole(&c4)).unwrap().is_isomorphic(&id));
        assert!(basic_inf(&c4, &trivial_sub(&c4)).unwrap().is_isomorphic(&id));
        let c2 = sub(&c4, &[0, 2]);
        let def = basic_def(&c4, &c2).unwrap();
        assert_eq!(def.size(), 2);
        for x in 0..2 {
            for g in c4.elements() {
                assert_eq!(def.act_right(x, g), def.act_right(x, c4.mul(g, 2)));
            }
        }
        let psi = c4.automorphism_group().unwrap().pop().unwrap();
        let iso = basic_iso(&psi).unwrap();
        assert!(Biset::compose(&iso, &basic_iso(&psi.inverse().unwrap()).unwrap()).unwrap().is_isomorphic(&id));
        let not_bij = Homomorphism {
            source: c4.clone(),
            target: c4.clone(),
            map: vec![0, 2, 0, 2],
        };
        assert_eq!(basic_iso(&not_bij).unwrap_err(), Error::NotBijective);
    }

    #[test]
    fn arrows() {
        let one = FiniteGroup::trivial();
        assert_eq!(arrow_right(&one), Biset::point(&one, &one));
        let c2 = cat("C2");
        let d = arrow_right(&c2).decompose().unwrap();
        let c2c2 = direct_product(&c2, &c2).group;
        assert_eq!(d, BurnsideElement::basis(&c2c2, &one, diagonal_class(&c2)));
        let s3 = cat("S3");
        let (p, orbits) = arrow_right(&s3).orbits();
        assert_eq!(orbits.len(), 1);
        // (H x H) x 1 is the same table as H x H
        assert_eq!(p.group, direct_product(&s3, &s3).group);
        let mut diag: Vec<Elem> = s3.elements().map(|x| direct_product(&s3, &s3).pair(x, x)).collect();
        diag.sort_unstable();
        assert_eq!(orbits[0].stabilizer, diag);
    }

    #[test]
    fn compositions() {
        let one = FiniteGroup::trivial();
        let c2 = cat("C2");
        let t = trivial_sub(&c2);
        let x = basic_ind(&c2, &t).unwrap();
        let y = basic_res(&c2, &t).unwrap();
        let yx = Biset::compose(&y, &x).unwrap();
        assert_eq!((yx.left().order(), yx.right().order(), yx.size()), (1, 1, 2));
        let xy = Biset::compose(&x, &y).unwrap();
        let free = direct_product(&c2, &c2).group.subgroup_lattice().unwrap().class_of_elements(&[0]).unwrap();
        assert_eq!(xy.decompose().unwrap(), BurnsideElement::basis(&c2, &c2, free));
        let s3 = cat("S3");
        let z = transitive_from_subgroup(&s3, &c2, &[0, 6]).unwrap();
        assert!(Biset::compose(&Biset::identity(&s3), &z).unwrap().is_isomorphic(&z));
        assert!(Biset::compose(&z, &Biset::identity(&c2)).unwrap().is_isomorphic(&z));
        assert!(matches!(Biset::compose(&z, &z), Err(Error::MiddleGroupMismatch(..))));
        let _ = one;
    }

    #[test]
    fn decompositions() {
        let c3 = cat("C3");
        assert!(Biset::empty(&c3, &c3).decompose().unwrap().is_zero());
        let reg = Biset::identity(&c3).decompose().unwrap();
        assert_eq!(reg, BurnsideElement::basis(&c3, &c3, diagonal_class(&c3)));
        let x = transitive_from_subgroup(&c3, &c3, &[0]).unwrap();
        let xx = x.disjoint_union(&x).unwrap();
        assert_eq!(xx.decompose().unwrap(), x.decompose().unwrap().scale(&qi(2)));
    }

    #[test]
    fn transitive_round_trip() {
        let groups = ["1", "C2", "C3", "V4", "S3"];
        for a in groups {
            for b in groups {
                let (k, g) = (cat(a), cat(b));
                if k.order() * g.order() > 24 {
                    continue;
                }
                let lat = direct_product(&k, &g).group.subgroup_lattice().unwrap();
                for c in 0..lat.num_classes() {
                    let x = transitive_from_class(&k, &g, c).unwrap();
                    assert_eq!(x.decompose().unwrap(), BurnsideElement::basis(&k, &g, c), "{a} {b} {c}");
                }
                let full: Vec<Elem> = direct_product(&k, &g).group.elements().collect();
                assert_eq!(transitive_from_subgroup(&k, &g, &full).unwrap().size(), 1);
                assert_eq!(transitive_from_subgroup(&k, &g, &[0]).unwrap().size(), k.order() * g.order());
            }
        }
        let s3 = cat("S3");
        let p = direct_product(&s3, &s3);
        let mut diag: Vec<Elem> = s3.elements().map(|x| p.pair(x, x)).collect();
        diag.sort_unstable();
        assert!(transitive_from_subgroup(&s3, &s3, &diag).unwrap().is_isomorphic(&Biset::identity(&s3)));
        assert!(transitive_from_subgroup(&s3, &s3, &[0, 1]).is_err());
    }

    #[test]
    fn opposite_transposes_stabilizers() {
        let (k, g) = (cat("S3"), cat("C2"));
        let lat_kg = direct_product(&k, &g).group.subgroup_lattice().unwrap();
        let lat_gk = direct_product(&g, &k).group.subgroup_lattice().unwrap();
        for c in 0..lat_kg.num_classes() {
            let x = transitive_from_class(&k, &g, c).unwrap();
            let t = transpose_subgroup(&k, &g, lat_kg.class_rep(c).elements());
            let expected = BurnsideElement::basis(&g, &k, lat_gk.class_of_elements(&t).unwrap());
            assert_eq!(x.opposite().decompose().unwrap(), expected);
        }
    }

    #[test]
    fn external_products() {
        let one = FiniteGroup::trivial();
        let c2 = cat("C2");
        let x = transitive_from_subgroup(&c2, &c2, &[0]).unwrap();
        let e = Biset::external(&Biset::point(&one, &one), &x);
        assert_eq!(e, x);
        let a = arrow_right(&c2);
        let aa = Biset::external(&a, &a);
        assert_eq!(aa.size(), 4);
        // both factors are transitive with diagonal stabilizers, so is the product
        let d = aa.decompose().unwrap();
        assert_eq!(d.coeffs().len(), 1);
        let ext = burnside_external(&a.decompose().unwrap(), &a.decompose().unwrap()).unwrap();
        assert_eq!(ext, d);
    }

    #[test]
    fn memoized_compose_matches_direct() {
        let (one, c2) = (FiniteGroup::trivial(), cat("C2"));
        // [(C2 x 1)/(C2 x 1)] ∘ [(1 x C2)/(1 x C2)]
        let beta = BurnsideElement::basis(&c2, &one, 1);
        let alpha = BurnsideElement::basis(&one, &c2, 1);
        let via_classes = burnside_compose(&beta, &alpha).unwrap();
        let direct = Biset::compose(
            &transitive_from_subgroup(&c2, &one, &[0, 1]).unwrap(),
            &transitive_from_subgroup(&one, &c2, &[0, 1]).unwrap(),
        )
        .unwrap()
        .decompose()
        .unwrap();
        assert_eq!(via_classes, direct);
        let id = BurnsideElement::identity(&c2).unwrap();
        let x = BurnsideElement::from_coeffs(&c2, &c2, [(0, qi(3)), (2, qi(-1))]);
        assert_eq!(burnside_compose(&id, &x).unwrap(), x);
        assert_eq!(
            burnside_compose(&x.scale(&qi(2)), &x).unwrap(),
            burnside_compose(&x, &x).unwrap().scale(&qi(2))
        );
        assert_eq!(x.to_json()["entries"][0], json!([0, "3", "1"]));
    }
}
