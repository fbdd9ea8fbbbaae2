//! Finite groups stored as closed multiplication tables.
//!
//! Every group is interned: two constructions that produce the same table
//! share one [`FiniteGroup`] handle and therefore one set of cached data
//! (classes, subgroup lattice, automorphisms). Direct products use the
//! row-major pairing `(a, b) -> a * |H| + b`, which makes `(L x K) x H` and
//! `L x (K x H)` literally the same table, and `H x 1`, `1 x H` the same
//! table as `H`.

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use dashmap::DashMap;

use crate::error::{Error, Result};

pub type Elem = u32;

/// Largest group order for which subgroup lattices and automorphism groups
/// may be requested, whatever the configured bound.
pub const HARD_LATTICE_LIMIT: usize = 225;
pub const DEFAULT_LATTICE_BOUND: usize = 144;
/// Largest order for which a multiplication table is materialized.
pub const TABLE_LIMIT: usize = 4096;

static LATTICE_BOUND: AtomicUsize = AtomicUsize::new(DEFAULT_LATTICE_BOUND);

pub fn lattice_bound() -> usize {
    LATTICE_BOUND.load(Ordering::Relaxed)
}

/// Sets the order bound for lattice and automorphism computations.
pub fn set_lattice_bound(bound: usize) -> Result<()> {
    if bound > HARD_LATTICE_LIMIT {
        return Err(Error::OrderBoundExceeded {
            order: bound,
            bound: HARD_LATTICE_LIMIT,
        });
    }
    LATTICE_BOUND.store(bound, Ordering::Relaxed);
    Ok(())
}

fn check_bound(order: usize) -> Result<()> {
    let bound = lattice_bound();
    if order > bound {
        Err(Error::OrderBoundExceeded { order, bound })
    } else {
        Ok(())
    }
}

/// Which elements a class function is required to be constant on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SigmaKind {
    /// Ordinary conjugacy classes.
    Ordinary,
    /// Conjugacy combined with coprime power maps.
    Rational,
}

impl SigmaKind {
    pub fn name(self) -> &'static str {
        match self {
            SigmaKind::Ordinary => "ordinary",
            SigmaKind::Rational => "rational",
        }
    }
}

/// A partition of the elements of a group, classes ordered by least element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    classes: Vec<Vec<Elem>>,
    class_of: Vec<u32>,
}

impl Partition {
    fn from_labels(labels: &[usize]) -> Self {
        let mut remap: HashMap<usize, u32> = HashMap::new();
        let mut classes: Vec<Vec<Elem>> = Vec::new();
        let mut class_of = vec![0u32; labels.len()];
        for (x, &l) in labels.iter().enumerate() {
            let c = *remap.entry(l).or_insert_with(|| {
                classes.push(Vec::new());
                (classes.len() - 1) as u32
            });
            classes[c as usize].push(x as Elem);
            class_of[x] = c;
        }
        Partition { classes, class_of }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<Elem>] {
        &self.classes
    }

    pub fn class(&self, c: usize) -> &[Elem] {
        &self.classes[c]
    }

    pub fn class_of(&self, x: Elem) -> usize {
        self.class_of[x as usize] as usize
    }

    /// Least element of class `c`.
    pub fn rep(&self, c: usize) -> Elem {
        self.classes[c][0]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// True when every class of `self` lies inside a class of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.classes.iter().all(|c| {
            let k = coarser.class_of(c[0]);
            c.iter().all(|&x| coarser.class_of(x) == k)
        })
    }
}

/// A subgroup, as the sorted list of its element indices in the parent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<Elem>,
}

impl Subgroup {
    pub(crate) fn from_sorted(elements: Vec<Elem>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Subgroup { elements }
    }

    /// Validates `elements` as a subgroup of `parent`.
    pub fn new(parent: &FiniteGroup, mut elements: Vec<Elem>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if !parent.is_subgroup(&elements) {
            return Err(Error::NotASubgroup);
        }
        Ok(Subgroup { elements })
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

/// All subgroups of a group, grouped into conjugacy classes.
///
/// Subgroups are sorted by `(order, elements)`; a class is represented by its
/// first member, which is the member with the lexicographically least element
/// list. Classes are ordered by their representatives.
#[derive(Debug)]
pub struct SubgroupLattice {
    subgroups: Vec<Subgroup>,
    index: HashMap<Vec<Elem>, usize>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl SubgroupLattice {
    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn find(&self, sorted_elements: &[Elem]) -> Option<usize> {
        self.index.get(sorted_elements).copied()
    }

    pub fn class_of_subgroup(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn class_of_elements(&self, sorted_elements: &[Elem]) -> Option<usize> {
        self.find(sorted_elements).map(|i| self.class_of[i])
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_members(&self, c: usize) -> &[usize] {
        &self.classes[c]
    }

    pub fn class_rep(&self, c: usize) -> &Subgroup {
        &self.subgroups[self.classes[c][0]]
    }
}

struct GroupData {
    id: u64,
    label: String,
    order: usize,
    identity: Elem,
    table: Vec<Elem>,
    inverse: Vec<Elem>,
    elem_order: Vec<u32>,
    generators: OnceLock<Vec<Elem>>,
    conjugacy: OnceLock<Partition>,
    rational: OnceLock<Partition>,
    lattice: OnceLock<Arc<SubgroupLattice>>,
    automorphisms: OnceLock<Arc<Vec<Vec<Elem>>>>,
}

/// A finite group given by its multiplication table. Cheap to clone.
#[derive(Clone)]
pub struct FiniteGroup(Arc<GroupData>);

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}

impl Eq for FiniteGroup {}

impl Hash for FiniteGroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.id.hash(state)
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.0.label, self.0.order)
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.label)
    }
}

struct Interner {
    by_fingerprint: HashMap<u64, Vec<FiniteGroup>>,
}

static INTERNER: OnceLock<Mutex<Interner>> = OnceLock::new();
static NEXT_ID: AtomicU64 = AtomicU64::new(1);
static PRODUCTS: OnceLock<DashMap<(u64, u64), FiniteGroup>> = OnceLock::new();

fn fingerprint(order: usize, table: &[Elem]) -> u64 {
    let mut h = DefaultHasher::new();
    order.hash(&mut h);
    table.hash(&mut h);
    h.finish()
}

impl FiniteGroup {
    /// Builds a group from a trusted table (already known to satisfy the
    /// group axioms). Returns the interned handle for that table.
    pub(crate) fn from_trusted(label: &str, order: usize, table: Vec<Elem>) -> FiniteGroup {
        assert!((1..=TABLE_LIMIT).contains(&order), "group order {order} out of range");
        debug_assert_eq!(table.len(), order * order);
        let fp = fingerprint(order, &table);
        let interner = INTERNER.get_or_init(|| {
            Mutex::new(Interner {
                by_fingerprint: HashMap::new(),
            })
        });
        let mut guard = interner.lock().unwrap();
        if let Some(existing) = guard
            .by_fingerprint
            .get(&fp)
            .and_then(|v| v.iter().find(|g| g.0.order == order && g.0.table == table))
        {
            return existing.clone();
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] as usize == x))
            .expect("trusted table has an identity") as Elem;
        let mut inverse = vec![0; order];
        for x in 0..order {
            let row = &table[x * order..(x + 1) * order];
            inverse[x] = row.iter().position(|&y| y == identity).expect("inverse") as Elem;
        }
        let mut elem_order = vec![0u32; order];
        for x in 0..order {
            let mut k = 1;
            let mut y = x as Elem;
            while y != identity {
                y = table[y as usize * order + x];
                k += 1;
            }
            elem_order[x] = k;
        }
        let g = FiniteGroup(Arc::new(GroupData {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            label: label.to_string(),
            order,
            identity,
            table,
            inverse,
            elem_order,
            generators: OnceLock::new(),
            conjugacy: OnceLock::new(),
            rational: OnceLock::new(),
            lattice: OnceLock::new(),
            automorphisms: OnceLock::new(),
        }));
        guard.by_fingerprint.entry(fp).or_default().push(g.clone());
        g
    }

    /// Validates a square table and returns the group it defines.
    pub fn from_table(label: &str, rows: &[Vec<usize>]) -> Result<FiniteGroup> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::MalformedTable("empty table".into()));
        }
        if n > HARD_LATTICE_LIMIT {
            return Err(Error::OrderBoundExceeded {
                order: n,
                bound: HARD_LATTICE_LIMIT,
            });
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedTable(format!("row {i} has length {}", row.len())));
            }
            for &x in row {
                if x >= n {
                    return Err(Error::MalformedTable(format!("entry {x} out of range")));
                }
                table.push(x as Elem);
            }
        }
        let m = |a: usize, b: usize| table[a * n + b] as usize;
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| m(e, x) == x && m(x, e) == x))
            .ok_or(Error::NoIdentity)?;
        for x in 0..n {
            if !(0..n).any(|y| m(x, y) == identity && m(y, x) == identity) {
                return Err(Error::NoInverse(x));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = m(a, b);
                for c in 0..n {
                    if m(ab, c) != m(a, m(b, c)) {
                        return Err(Error::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(FiniteGroup::from_trusted(label, n, table))
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::from_trusted("1", 1, vec![0])
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        let table = (0..n * n).map(|i| ((i / n + i % n) % n) as Elem).collect();
        let label = if n == 1 { "1".to_string() } else { format!("C{n}") };
        FiniteGroup::from_trusted(&label, n, table)
    }

    pub fn id(&self) -> u64 {
        self.0.id
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn identity(&self) -> Elem {
        self.0.identity
    }

    pub fn is_trivial(&self) -> bool {
        self.0.order == 1
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.0.table[a as usize * self.0.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.0.inverse[a as usize]
    }

    /// `g a g^-1`
    #[inline]
    pub fn conj(&self, g: Elem, a: Elem) -> Elem {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn pow(&self, a: Elem, k: u64) -> Elem {
        let k = k % self.elem_order(a) as u64;
        (0..k).fold(self.identity(), |acc, _| self.mul(acc, a))
    }

    pub fn elem_order(&self, a: Elem) -> u32 {
        self.0.elem_order[a as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.0.order as Elem
    }

    /// Row-major table view, `table()[a * n + b] = a * b`.
    pub fn table(&self) -> &[Elem] {
        &self.0.table
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        (0..n)
            .map(|a| (0..n).map(|b| self.mul(a as Elem, b as Elem) as usize).collect())
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order() as Elem;
        (0..n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center(&self) -> Vec<Elem> {
        self.elements()
            .filter(|&z| self.generators().iter().all(|&g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    pub fn exponent(&self) -> u64 {
        self.elements().fold(1u64, |acc, x| {
            num_integer::lcm(acc, self.elem_order(x) as u64)
        })
    }

    /// Sorted element orders, an isomorphism invariant.
    pub fn order_profile(&self) -> Vec<u32> {
        let mut v = self.0.elem_order.clone();
        v.sort_unstable();
        v
    }

    /// Sorted subgroup generated by `gens`.
    pub fn closure(&self, gens: &[Elem]) -> Vec<Elem> {
        let n = self.order();
        let e = self.identity();
        let mut seen = vec![false; n];
        seen[e as usize] = true;
        let mut out = vec![e];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            i += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// A small generating set of the subgroup with the given elements: elements
    /// are added greedily, largest order first, ties by index.
    pub fn generators_of(&self, elements: &[Elem]) -> Vec<Elem> {
        let mut cands: Vec<Elem> = elements.to_vec();
        cands.sort_by_key(|&x| (std::cmp::Reverse(self.elem_order(x)), x));
        let mut gens = Vec::new();
        let mut span = vec![self.identity()];
        for x in cands {
            if span.len() == elements.len() {
                break;
            }
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = self.closure(&gens);
            }
        }
        gens
    }

    pub fn generators(&self) -> &[Elem] {
        self.0.generators.get_or_init(|| {
            let all: Vec<Elem> = self.elements().collect();
            self.generators_of(&all)
        })
    }

    pub fn is_subgroup(&self, sorted: &[Elem]) -> bool {
        if sorted.is_empty() || sorted.binary_search(&self.identity()).is_err() {
            return false;
        }
        if sorted.iter().any(|&x| x as usize >= self.order()) {
            return false;
        }
        sorted.iter().all(|&a| {
            sorted
                .iter()
                .all(|&b| sorted.binary_search(&self.mul(a, self.inv(b))).is_ok())
        })
    }

    pub fn is_normal(&self, sub: &Subgroup) -> bool {
        self.generators()
            .iter()
            .all(|&g| sub.elements().iter().all(|&s| sub.contains(self.conj(g, s))))
    }

    pub fn conjugate_subgroup(&self, g: Elem, sub: &[Elem]) -> Vec<Elem> {
        let mut v: Vec<Elem> = sub.iter().map(|&s| self.conj(g, s)).collect();
        v.sort_unstable();
        v
    }

    /// Conjugacy classes of elements.
    pub fn conjugacy_classes(&self) -> &Partition {
        self.0.conjugacy.get_or_init(|| {
            let n = self.order();
            let mut label = vec![usize::MAX; n];
            let gens = self.generators().to_vec();
            for x in 0..n {
                if label[x] != usize::MAX {
                    continue;
                }
                label[x] = x;
                let mut stack = vec![x as Elem];
                while let Some(y) = stack.pop() {
                    for &g in &gens {
                        let z = self.conj(g, y) as usize;
                        if label[z] == usize::MAX {
                            label[z] = x;
                            stack.push(z as Elem);
                        }
                    }
                }
            }
            Partition::from_labels(&label)
        })
    }

    /// Classes for the given sigma kind. Rational classes merge `x` with the
    /// conjugates of every coprime power `x^t`.
    pub fn sigma_classes(&self, kind: SigmaKind) -> &Partition {
        match kind {
            SigmaKind::Ordinary => self.conjugacy_classes(),
            SigmaKind::Rational => self.0.rational.get_or_init(|| {
                let conj = self.conjugacy_classes();
                let mut parent: Vec<usize> = (0..conj.len()).collect();
                fn find(p: &mut [usize], mut x: usize) -> usize {
                    while p[x] != x {
                        p[x] = p[p[x]];
                        x = p[x];
                    }
                    x
                }
                for c in 0..conj.len() {
                    let x = conj.rep(c);
                    let ord = self.elem_order(x) as u64;
                    let mut y = x;
                    for t in 2..ord {
                        y = self.mul(y, x);
                        if num_integer::gcd(t, ord) == 1 {
                            let a = find(&mut parent, c);
                            let b = find(&mut parent, conj.class_of(y));
                            if a != b {
                                parent[a.max(b)] = a.min(b);
                            }
                        }
                    }
                }
                let labels: Vec<usize> = (0..self.order())
                    .map(|x| {
                        let c = conj.class_of(x as Elem);
                        find(&mut parent, c)
                    })
                    .collect();
                Partition::from_labels(&labels)
            }),
        }
    }

    /// All subgroups, up to the configured order bound.
    pub fn subgroup_lattice(&self) -> Result<Arc<SubgroupLattice>> {
        if let Some(l) = self.0.lattice.get() {
            return Ok(l.clone());
        }
        check_bound(self.order())?;
        Ok(self.0.lattice.get_or_init(|| Arc::new(self.compute_lattice())).clone())
    }

    fn compute_lattice(&self) -> SubgroupLattice {
        let n = self.order();
        let e = self.identity();
        let mut cyclic_seen: HashSet<Vec<Elem>> = HashSet::new();
        let mut cyclic: Vec<Elem> = Vec::new();
        for x in self.elements() {
            if x != e && cyclic_seen.insert(self.closure(&[x])) {
                cyclic.push(x);
            }
        }
        let mut found: HashSet<Vec<Elem>> = HashSet::new();
        let mut subs: Vec<(Vec<Elem>, Vec<Elem>)> = vec![(vec![e], vec![])];
        found.insert(vec![e]);
        let mut mask = vec![false; n];
        let mut i = 0;
        while i < subs.len() {
            let (els, gens) = subs[i].clone();
            for &x in &els {
                mask[x as usize] = true;
            }
            for &c in &cyclic {
                if mask[c as usize] {
                    continue;
                }
                let mut g2 = gens.clone();
                g2.push(c);
                let joined = self.closure(&g2);
                if found.insert(joined.clone()) {
                    subs.push((joined, g2));
                }
            }
            for &x in &els {
                mask[x as usize] = false;
            }
            i += 1;
        }
        let mut subgroups: Vec<Subgroup> = subs
            .into_iter()
            .map(|(els, _)| Subgroup::from_sorted(els))
            .collect();
        subgroups.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
        let index: HashMap<Vec<Elem>, usize> = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.elements.clone(), i))
            .collect();
        let gens = self.generators().to_vec();
        let mut class_of = vec![usize::MAX; subgroups.len()];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for i in 0..subgroups.len() {
            if class_of[i] != usize::MAX {
                continue;
            }
            let c = classes.len();
            class_of[i] = c;
            let mut members = vec![i];
            let mut stack = vec![i];
            while let Some(j) = stack.pop() {
                for &g in &gens {
                    let k = index[&self.conjugate_subgroup(g, &subgroups[j].elements)];
                    if class_of[k] == usize::MAX {
                        class_of[k] = c;
                        members.push(k);
                        stack.push(k);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        SubgroupLattice {
            subgroups,
            index,
            class_of,
            classes,
        }
    }

    /// Normal subgroups, as lattice indices.
    pub fn normal_subgroups(&self) -> Result<Vec<usize>> {
        let lat = self.subgroup_lattice()?;
        Ok((0..lat.num_classes())
            .filter(|&c| lat.class_members(c).len() == 1)
            .map(|c| lat.class_members(c)[0])
            .collect())
    }

    /// The subgroup with the given elements as a group in its own right,
    /// together with its embedding (new index -> parent index).
    pub fn subgroup_as_group(&self, sub: &Subgroup) -> (FiniteGroup, Vec<Elem>) {
        let els = sub.elements();
        let m = els.len();
        let pos: HashMap<Elem, Elem> = els.iter().enumerate().map(|(i, &x)| (x, i as Elem)).collect();
        let mut table = Vec::with_capacity(m * m);
        for &a in els {
            for &b in els {
                table.push(pos[&self.mul(a, b)]);
            }
        }
        let label = if m == self.order() {
            self.label().to_string()
        } else {
            format!("{}<{}>", self.label(), m)
        };
        (FiniteGroup::from_trusted(&label, m, table), els.to_vec())
    }

    /// `G/N` with cosets ordered by least element, and the projection.
    pub fn quotient(&self, normal: &Subgroup) -> Result<(FiniteGroup, Vec<Elem>)> {
        if !self.is_normal(normal) {
            return Err(Error::NotNormal);
        }
        let n = self.order();
        let mut proj = vec![Elem::MAX; n];
        let mut reps = Vec::new();
        for x in self.elements() {
            if proj[x as usize] != Elem::MAX {
                continue;
            }
            let c = reps.len() as Elem;
            reps.push(x);
            for &s in normal.elements() {
                proj[self.mul(x, s) as usize] = c;
            }
        }
        let m = reps.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &reps {
            for &b in &reps {
                table.push(proj[self.mul(a, b) as usize]);
            }
        }
        let label = if normal.order() == 1 {
            self.label().to_string()
        } else if normal.order() == n {
            "1".to_string()
        } else {
            format!("{}/{}", self.label(), normal.order())
        };
        Ok((FiniteGroup::from_trusted(&label, m, table), proj))
    }

    /// Every automorphism, as element maps, sorted lexicographically.
    pub fn automorphism_maps(&self) -> Result<Arc<Vec<Vec<Elem>>>> {
        if let Some(a) = self.0.automorphisms.get() {
            return Ok(a.clone());
        }
        check_bound(self.order())?;
        Ok(self
            .0
            .automorphisms
            .get_or_init(|| {
                let mut maps = Vec::new();
                search_isomorphisms(self, self, false, &mut |m| {
                    maps.push(m.to_vec());
                    true
                });
                maps.sort();
                Arc::new(maps)
            })
            .clone())
    }

    pub fn automorphism_group(&self) -> Result<Vec<Homomorphism>> {
        Ok(self
            .automorphism_maps()?
            .iter()
            .map(|m| Homomorphism {
                source: self.clone(),
                target: self.clone(),
                map: m.clone(),
            })
            .collect())
    }

    /// The inner automorphism `x -> g x g^-1`.
    pub fn inner_automorphism(&self, g: Elem) -> Homomorphism {
        Homomorphism {
            source: self.clone(),
            target: self.clone(),
            map: self.elements().map(|x| self.conj(g, x)).collect(),
        }
    }

    /// Representatives of `Aut(G)/Inn(G)`. Each class is represented by its
    /// lexicographically least map; classes are ordered by representative.
    pub fn outer_classes(&self) -> Result<Vec<Homomorphism>> {
        let auts = self.automorphism_maps()?;
        let inner: HashSet<Vec<Elem>> = self
            .elements()
            .map(|g| self.inner_automorphism(g).map)
            .collect();
        let pos: HashMap<&Vec<Elem>, usize> = auts.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut done = vec![false; auts.len()];
        let mut reps = Vec::new();
        for i in 0..auts.len() {
            if done[i] {
                continue;
            }
            reps.push(Homomorphism {
                source: self.clone(),
                target: self.clone(),
                map: auts[i].clone(),
            });
            for inn in &inner {
                let composed: Vec<Elem> = auts[i].iter().map(|&y| inn[y as usize]).collect();
                done[pos[&composed]] = true;
            }
        }
        Ok(reps)
    }

    /// Decides isomorphism; returns a witness `self -> other` when one exists.
    pub fn isomorphism_to(&self, other: &FiniteGroup) -> Result<Option<Homomorphism>> {
        check_bound(self.order())?;
        if self.order() != other.order()
            || self.order_profile() != other.order_profile()
            || self.center().len() != other.center().len()
            || self.conjugacy_classes().len() != other.conjugacy_classes().len()
        {
            return Ok(None);
        }
        let mut witness = None;
        search_isomorphisms(self, other, true, &mut |m| {
            witness = Some(m.to_vec());
            false
        });
        Ok(witness.map(|map| Homomorphism {
            source: self.clone(),
            target: other.clone(),
            map,
        }))
    }

    pub fn are_isomorphic(&self, other: &FiniteGroup) -> Result<bool> {
        Ok(self.isomorphism_to(other)?.is_some())
    }
}

/// Enumerates bijective homomorphisms `src -> tgt` by assigning images to the
/// generators of `src`, checking consistency on each partial assignment.
/// `visit` returns false to stop.
fn search_isomorphisms(
    src: &FiniteGroup,
    tgt: &FiniteGroup,
    _stop_at_first: bool,
    visit: &mut dyn FnMut(&[Elem]) -> bool,
) {
    let gens = src.generators().to_vec();
    let cands: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&g| {
            tgt.elements()
                .filter(|&y| tgt.elem_order(y) == src.elem_order(g))
                .collect()
        })
        .collect();
    let mut imgs: Vec<Elem> = Vec::with_capacity(gens.len());
    fn rec(
        src: &FiniteGroup,
        tgt: &FiniteGroup,
        gens: &[Elem],
        cands: &[Vec<Elem>],
        imgs: &mut Vec<Elem>,
        visit: &mut dyn FnMut(&[Elem]) -> bool,
    ) -> bool {
        let r = imgs.len();
        let Some(map) = extend_partial(src, tgt, &gens[..r], imgs) else {
            return true;
        };
        if r == gens.len() {
            return visit(&map);
        }
        for &y in &cands[r] {
            imgs.push(y);
            let go_on = rec(src, tgt, gens, cands, imgs, visit);
            imgs.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
    rec(src, tgt, &gens, &cands, &mut imgs, visit);
}

/// Extends `gens -> imgs` over the subgroup generated by `gens`; `None` if the
/// assignment is inconsistent or not injective there.
fn extend_partial(
    src: &FiniteGroup,
    tgt: &FiniteGroup,
    gens: &[Elem],
    imgs: &[Elem],
) -> Option<Vec<Elem>> {
    let mut map = vec![Elem::MAX; src.order()];
    let mut used = vec![false; tgt.order()];
    map[src.identity() as usize] = tgt.identity();
    used[tgt.identity() as usize] = true;
    let mut queue = vec![src.identity()];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        for (&g, &im) in gens.iter().zip(imgs) {
            let y = src.mul(x, g);
            let fy = tgt.mul(map[x as usize], im);
            match map[y as usize] {
                Elem::MAX => {
                    if used[fy as usize] {
                        return None;
                    }
                    used[fy as usize] = true;
                    map[y as usize] = fy;
                    queue.push(y);
                }
                existing if existing != fy => return None,
                _ => {}
            }
        }
    }
    Some(map)
}

/// A group homomorphism given by its element map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    pub source: FiniteGroup,
    pub target: FiniteGroup,
    pub map: Vec<Elem>,
}

impl Homomorphism {
    /// Validates `map` as a homomorphism.
    pub fn new(source: FiniteGroup, target: FiniteGroup, map: Vec<Elem>) -> Result<Self> {
        if map.len() != source.order() || map.iter().any(|&y| y as usize >= target.order()) {
            return Err(Error::NotAHomomorphism);
        }
        for a in source.elements() {
            for b in source.elements() {
                if map[source.mul(a, b) as usize] != target.mul(map[a as usize], map[b as usize]) {
                    return Err(Error::NotAHomomorphism);
                }
            }
        }
        Ok(Homomorphism { source, target, map })
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        Homomorphism {
            source: g.clone(),
            target: g.clone(),
            map: g.elements().collect(),
        }
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x as usize]
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.order() != self.target.order() {
            return false;
        }
        let mut seen = vec![false; self.target.order()];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y as usize], true))
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Homomorphism) -> Homomorphism {
        Homomorphism {
            source: other.source.clone(),
            target: self.target.clone(),
            map: other.map.iter().map(|&y| self.map[y as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Result<Homomorphism> {
        if !self.is_bijective() {
            return Err(Error::NotBijective);
        }
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y as usize] = x as Elem;
        }
        Ok(Homomorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            map: inv,
        })
    }
}

/// The direct product `G x H` together with its index pairing.
#[derive(Clone, Debug)]
pub struct DirectProduct {
    pub group: FiniteGroup,
    pub left: FiniteGroup,
    pub right: FiniteGroup,
}

impl DirectProduct {
    #[inline]
    pub fn pair(&self, a: Elem, b: Elem) -> Elem {
        a * self.right.order() as Elem + b
    }

    #[inline]
    pub fn unpair(&self, x: Elem) -> (Elem, Elem) {
        let m = self.right.order() as Elem;
        (x / m, x % m)
    }
}

/// `G x H`, cached per pair of factors.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> DirectProduct {
    let products = PRODUCTS.get_or_init(DashMap::new);
    let group = products
        .entry((g.id(), h.id()))
        .or_insert_with(|| {
            let (n, m) = (g.order(), h.order());
            let order = n * m;
            let mut table = Vec::with_capacity(order * order);
            for x in 0..order {
                let (a1, b1) = ((x / m) as Elem, (x % m) as Elem);
                for y in 0..order {
                    let (a2, b2) = ((y / m) as Elem, (y % m) as Elem);
                    table.push(g.mul(a1, a2) * m as Elem + h.mul(b1, b2));
                }
            }
            let label = if g.is_trivial() {
                h.label().to_string()
            } else if h.is_trivial() {
                g.label().to_string()
            } else {
                format!("{}x{}", g.label(), h.label())
            };
            FiniteGroup::from_trusted(&label, order, table)
        })
        .clone();
    DirectProduct {
        group,
        left: g.clone(),
        right: h.clone(),
    }
}

/// Shorthand for the product group of a list of factors, left-associated.
pub fn product_of(factors: &[&FiniteGroup]) -> FiniteGroup {
    let mut acc = FiniteGroup::trivial();
    for f in factors {
        acc = direct_product(&acc, f).group;
    }
    acc
}

/// Index of the tuple `coords` in `product_of(factors)`.
pub fn tuple_index(factors: &[&FiniteGroup], coords: &[Elem]) -> Elem {
    debug_assert_eq!(factors.len(), coords.len());
    factors
        .iter()
        .zip(coords)
        .fold(0, |acc, (f, &c)| acc * f.order() as Elem + c)
}

/// Inverse of [`tuple_index`].
pub fn tuple_coords(factors: &[&FiniteGroup], mut x: Elem) -> Vec<Elem> {
    let mut out = vec![0; factors.len()];
    for (i, f) in factors.iter().enumerate().rev() {
        let m = f.order() as Elem;
        out[i] = x % m;
        x /= m;
    }
    out
}
