//! `Inf: A -> A_G` and `Res: A_G -> A`, the kernel ideal `κ_G = ker Res`,
//! and how essential algebras of `A_G` split along it.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::biset::Biset;
use crate::catalog::Catalog;
use crate::category::EndAlgebra;
use crate::checks::CheckReport;
use crate::error::{Error, Result};
use crate::essential::{essential_algebra, essential_support, Essential};
use crate::functor::{pa_identity, twisted_diagonal, GreenFunctor, ShiftBase, Shifted};
use crate::group::{direct_product, product_of, tuple_coords, tuple_index, Elem, FiniteGroup, SigmaKind};
use crate::linalg::{
    check_algebra_homomorphism, radical, restrict_to_subspace, two_sided_ideal, Algebra, Matrix, SparseVec, Subspace,
};
use crate::morphism::{GreenMorphism, ShiftInf, ShiftRes};

pub fn shift(base: Arc<dyn ShiftBase>, g: &FiniteGroup, label: &str) -> Arc<Shifted> {
    Arc::new(Shifted::new(base, g.clone(), label))
}

pub fn inf_morphism(shifted: &Arc<Shifted>) -> ShiftInf {
    ShiftInf::new(shifted.clone())
}

pub fn res_morphism(shifted: &Arc<Shifted>) -> ShiftRes {
    ShiftRes::new(shifted.clone())
}

/// `κ_G(X)`, the kernel of `Res_X`.
pub fn kappa(shifted: &Arc<Shifted>, x: &FiniteGroup) -> Result<Subspace> {
    Ok(res_morphism(shifted).component(x)?.kernel())
}

/// Closure of `κ_G(H x H)` under composition with `End_{P_{A_G}}(H)` on
/// both sides.
pub fn kappa_is_ideal(shifted: &Arc<Shifted>, h: &FiniteGroup) -> Result<bool> {
    let k = kappa(shifted, &direct_product(h, h).group)?;
    let end = EndAlgebra::new(shifted.clone(), h)?;
    for r in k.basis() {
        for j in 0..end.dim() {
            let e = SparseVec::unit(j);
            if !k.contains(&end.mul(r, &e)?) || !k.contains(&end.mul(&e, r)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ShiftRow {
    pub group: String,
    pub dim_essential: usize,
    pub dim_shifted_essential: usize,
    pub dim_kappa_hat: usize,
    pub split_ok: bool,
    pub support_match: bool,
    /// Which parts of the splitting failed, if any.
    pub failures: Vec<String>,
}

impl ShiftRow {
    pub const CSV_HEADER: [&'static str; 6] =
        ["group", "dimEssential", "dimShiftedEssential", "dimKappaHat", "splitOk", "supportMatch"];

    pub fn csv_row(&self) -> [String; 6] {
        [
            self.group.clone(),
            self.dim_essential.to_string(),
            self.dim_shifted_essential.to_string(),
            self.dim_kappa_hat.to_string(),
            self.split_ok.to_string(),
            self.support_match.to_string(),
        ]
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ShiftReport {
    pub base: String,
    pub shift_group: String,
    pub max_order: usize,
    pub rows: Vec<ShiftRow>,
}

/// Everything computed for one `(A, G, H)`.
pub struct Split {
    pub essential: Essential,
    pub shifted: Essential,
    /// `κ̂_G(H)` inside `Â_G(H)`.
    pub kappa_hat: Subspace,
    /// `Â_G(H) -> Â(H)` induced by `Res`.
    pub res_bar: Matrix,
    /// `Â(H) -> Â_G(H)` induced by `Inf`.
    pub inf_bar: Matrix,
    pub row: ShiftRow,
}

/// Image of each lifted basis vector of `from`, projected into `to`.
fn induced(from: &Essential, to: &Essential, comp: &Matrix) -> Matrix {
    let cols = from.quotient.lift.iter().map(|&i| to.quotient.project(&comp.apply(&SparseVec::unit(i)))).collect();
    Matrix::from_columns(to.dim(), cols)
}

pub fn split_report(shifted: &Arc<Shifted>, h: &FiniteGroup, catalog: &Catalog) -> Result<Split> {
    let base: Arc<dyn GreenFunctor> = shifted.base().clone();
    let hh = direct_product(h, h).group;
    let (inf, res) = (inf_morphism(shifted), res_morphism(shifted));
    let (inf_c, res_c) = (inf.component(&hh)?, res.component(&hh)?);
    let mut failures = Vec::new();

    // End level: End_G = Inf(End) ⊕ κ, with Res ∘ Inf = Id.
    let kappa = res_c.kernel();
    let inf_image = inf_c.image();
    if !res_c.mul(&inf_c)?.is_identity() {
        failures.push("Res∘Inf ≠ Id on End".to_string());
    }
    if inf_image.dim() + kappa.dim() != res_c.cols() || !inf_image.intersection(&kappa).is_zero() {
        failures.push("End_G is not Inf(End) ⊕ κ".to_string());
    }

    let essential = essential_algebra(base, h, catalog)?;
    let shifted_e = essential_algebra(shifted.clone(), h, catalog)?;
    let kappa_hat = Subspace::span(shifted_e.dim(), kappa.basis().iter().map(|r| shifted_e.quotient.project(r)));

    if shifted_e.dim() != essential.dim() + kappa_hat.dim() {
        failures.push("dim Â_G ≠ dim Â + dim κ̂".to_string());
    }
    if shifted_e.ideal.basis().iter().any(|r| !essential.ideal.contains(&res_c.apply(r))) {
        failures.push("Res does not preserve the essential ideal".to_string());
    }
    if essential.ideal.basis().iter().any(|r| !shifted_e.ideal.contains(&inf_c.apply(r))) {
        failures.push("Inf does not preserve the essential ideal".to_string());
    }
    let res_bar = induced(&shifted_e, &essential, &res_c);
    let inf_bar = induced(&essential, &shifted_e, &inf_c);
    if !check_algebra_homomorphism(&res_bar, shifted_e.algebra(), essential.algebra())? {
        failures.push("Res̄ is not a unital homomorphism".to_string());
    }
    if res_bar.rank() != essential.dim() {
        failures.push("Res̄ is not surjective".to_string());
    }
    if res_bar.kernel() != kappa_hat {
        failures.push("ker Res̄ ≠ κ̂".to_string());
    }
    if !check_algebra_homomorphism(&inf_bar, essential.algebra(), shifted_e.algebra())? {
        failures.push("Inf̄ is not a unital homomorphism".to_string());
    }
    if !res_bar.mul(&inf_bar)?.is_identity() {
        failures.push("Inf̄ is not a section of Res̄".to_string());
    }

    let row = ShiftRow {
        group: catalog.display(h),
        dim_essential: essential.dim(),
        dim_shifted_essential: shifted_e.dim(),
        dim_kappa_hat: kappa_hat.dim(),
        split_ok: failures.is_empty(),
        support_match: (essential.dim() == 0) == (shifted_e.dim() == 0),
        failures,
    };
    Ok(Split {
        essential,
        shifted: shifted_e,
        kappa_hat,
        res_bar,
        inf_bar,
        row,
    })
}

/// Split rows for every catalog group with `|H| ≤ max_order` and
/// `|H x G|` within the base functor's shifted cap.
pub fn shift_report(shifted: &Arc<Shifted>, catalog: &Catalog, max_order: usize) -> Result<ShiftReport> {
    let cap = shifted.base().shifted_essential_cap();
    let rows = catalog
        .entries()
        .iter()
        .filter(|e| e.group.order() <= max_order && e.group.order() * shifted.group().order() <= cap)
        .map(|e| Ok(split_report(shifted, &e.group, catalog)?.row))
        .collect::<Result<Vec<_>>>()?;
    Ok(ShiftReport {
        base: shifted.base().name(),
        shift_group: catalog.display(shifted.group()),
        max_order,
        rows,
    })
}

/// Pointwise agreement of the vanishing flags of `A` and `A_G` on catalog
/// groups of order at most `max_order`.
pub fn support_equality(shifted: &Arc<Shifted>, catalog: &Catalog, max_order: usize) -> Result<CheckReport> {
    let base: Arc<dyn GreenFunctor> = shifted.base().clone();
    let mut rep = CheckReport {
        subject: format!("support equality: {}", shifted.name()),
        ..Default::default()
    };
    let plain = essential_support(base, catalog, Some(max_order))?;
    let cap = (shifted.base().shifted_essential_cap() / shifted.group().order()).min(max_order);
    let shifted_scan = essential_support(shifted.clone(), catalog, Some(cap))?;
    for (a, b) in plain.iter().zip(&shifted_scan) {
        match (a.vanished, b.vanished) {
            (Some(x), Some(y)) => {
                rep.checked += 1;
                if x != y {
                    rep.violations.push(format!("{}: A vanishes {x}, A_G vanishes {y}", a.group));
                }
            }
            _ => rep.skipped += usize::from(a.order <= max_order),
        }
    }
    Ok(rep)
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NuReport {
    pub group: String,
    pub shift_group: String,
    pub rational_classes: usize,
    pub dim_essential: usize,
    pub dim_shifted_essential: usize,
    pub dims_ok: bool,
    /// `ν(â ⊗ b) = (a x b)^` is bijective, multiplicative and unital.
    pub nu_isomorphism: bool,
    /// `κ̂_G(H) = ν(Â(H) ⊗ ⟨e_E : E ≠ {1}⟩)`.
    pub kappa_tensor_image: bool,
    /// `κ̂_G(H)` is the ideal generated by the classes of `Id_H x e_E`, `E ≠ {1}`.
    pub kappa_generated: bool,
}

impl NuReport {
    pub fn passed(&self) -> bool {
        self.dims_ok && self.nu_isomorphism && self.kappa_tensor_image && self.kappa_generated
    }
}

/// `ν: Â(H) ⊗ kR_Q(G) -> Â_G(H)` for rational class functions with coprime
/// orders, and the description of `κ̂_G(H)` through it.
pub fn nu_dim_check(shifted: &Arc<Shifted>, h: &FiniteGroup, catalog: &Catalog) -> Result<NuReport> {
    let g = shifted.group();
    let gcd = num_integer::gcd(h.order(), g.order());
    if gcd != 1 {
        return Err(Error::GcdConditionFailed(gcd));
    }
    if shifted.base().name() != "classfun:rational" {
        return Err(Error::FunctorMismatch {
            expected: "classfun:rational".into(),
            got: shifted.base().name(),
        });
    }
    let split = split_report(shifted, h, catalog)?;
    let (plain, big) = (&split.essential, &split.shifted);
    let classes = g.sigma_classes(SigmaKind::Rational);
    let c = classes.len();
    let hh = direct_product(h, h).group;
    let one = FiniteGroup::trivial();
    let inf = inf_morphism(shifted).component(&hh)?;
    // a x e_E in A(H x H x G), read in A_G(H x H)
    let times = |a: &SparseVec, e: usize| -> Result<SparseVec> {
        let v = crate::functor::bilinear(&inf.apply(a), &SparseVec::unit(e), |i, j| {
            shifted.base().shifted_cross_basis(&hh, &one, g, i, j)
        })?;
        Ok(big.quotient.project(&v))
    };
    // column i * c + e is ν(â_i ⊗ e_E)
    let nu_cols = plain
        .quotient
        .lift
        .iter()
        .flat_map(|&l| (0..c).map(move |e| (l, e)))
        .map(|(l, e)| times(&SparseVec::unit(l), e))
        .collect::<Result<Vec<_>>>()?;
    let nu = Matrix::from_columns(big.dim(), nu_cols.clone());
    let nu_of = |a: &SparseVec, e: usize| nu.apply(&SparseVec::from_entries(a.entries().iter().map(|(i, x)| (i * c + e, x.clone())).collect()));
    let mut nu_isomorphism = nu.rank() == big.dim() && nu.cols() == big.dim();
    let (pa, ba) = (plain.algebra(), big.algebra());
    for i in 0..plain.dim() {
        for j in 0..plain.dim() {
            let prod = pa.mul_basis(i, j)?;
            for e in 0..c {
                for f in 0..c {
                    let lhs = ba.mul(&nu_cols[i * c + e], &nu_cols[j * c + f])?;
                    let rhs = if e == f { nu_of(&prod, e) } else { SparseVec::zero() };
                    nu_isomorphism &= lhs == rhs;
                }
            }
        }
    }
    if let (Some(u), Some(bu)) = (pa.unit(), ba.unit()) {
        let mut total = SparseVec::zero();
        for e in 0..c {
            total.add_scaled(&crate::linalg::qi(1), &nu_of(&u, e));
        }
        nu_isomorphism &= total == bu;
    }

    let identity_class = classes.class_of(g.identity());
    let nontrivial: Vec<usize> = (0..c).filter(|&e| e != identity_class).collect();
    let tensor_image = Subspace::span(
        big.dim(),
        (0..plain.dim()).flat_map(|i| nontrivial.iter().map(move |&e| i * c + e)).map(|k| nu_cols[k].clone()),
    );
    let id_h = pa_identity(&**shifted.base(), h)?;
    let generators = nontrivial.iter().map(|&e| times(&id_h, e)).collect::<Result<Vec<_>>>()?;
    let generated = two_sided_ideal(ba, generators)?;
    Ok(NuReport {
        group: catalog.display(h),
        shift_group: catalog.display(g),
        rational_classes: c,
        dim_essential: plain.dim(),
        dim_shifted_essential: big.dim(),
        dims_ok: big.dim() == plain.dim() * c,
        nu_isomorphism,
        kappa_tensor_image: tensor_image == split.kappa_hat,
        kappa_generated: generated == split.kappa_hat,
    })
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SeedReport {
    pub group: String,
    pub dim_quotient: usize,
    pub quotient_radical: usize,
    pub quotient_semisimple: usize,
    pub dim_kappa_hat: usize,
    pub kappa_radical: usize,
    pub kappa_semisimple: usize,
    /// `Â_G(H)/κ̂_G(H) ≅ Â(H)` through `Res`.
    pub quotient_certified: bool,
}

/// Radical data of `Â_G(H)/κ̂ ≅ Â(H)` and of `κ̂` as an algebra without unit.
pub fn seed_split(shifted: &Arc<Shifted>, h: &FiniteGroup, catalog: &Catalog) -> Result<SeedReport> {
    let split = split_report(shifted, h, catalog)?;
    let q_rad = radical(split.essential.algebra()).dim();
    let kappa_alg = restrict_to_subspace(split.shifted.algebra(), &split.kappa_hat)?;
    let k_rad = radical(&kappa_alg).dim();
    Ok(SeedReport {
        group: catalog.display(h),
        dim_quotient: split.essential.dim(),
        quotient_radical: q_rad,
        quotient_semisimple: split.essential.dim() - q_rad,
        dim_kappa_hat: split.kappa_hat.dim(),
        kappa_radical: k_rad,
        kappa_semisimple: split.kappa_hat.dim() - k_rad,
        quotient_certified: split.row.split_ok,
    })
}

/// A basis element of `A_G(1)` outside `Inf(A(1))`. Since `Inf(ε)` is the
/// unit of `A_G`, such an element shows `Inf(A)` is not an ideal of `A_G`.
pub fn inf_not_ideal_witness(shifted: &Arc<Shifted>) -> Result<Option<usize>> {
    let one = FiniteGroup::trivial();
    let image = inf_morphism(shifted).component(&one)?.image();
    let unit = shifted.epsilon();
    for j in 0..shifted.dim(&one)? {
        let e = SparseVec::unit(j);
        if !image.contains(&e) {
            // ε_G x e_j = e_j lies in A_G(1) but not in Inf(A(1))
            let prod = shifted.cross_basis(&one, &one, unit.leading().unwrap_or(0), j)?;
            if unit.nnz() == 1 && prod == e {
                return Ok(Some(j));
            }
        }
    }
    Ok(None)
}

/// The biset `T` with `l·x·r = λ(l) x ρ(r)` for homomorphisms into `T`.
fn along(left: &FiniteGroup, right: &FiniteGroup, t: &FiniteGroup, lambda: &[Elem], rho: &[Elem]) -> Biset {
    Biset::from_fns(
        left,
        right,
        t.order(),
        |l, x| t.mul(lambda[l as usize], x as Elem) as usize,
        |x, r| t.mul(x as Elem, rho[r as usize]) as usize,
    )
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ProofReport {
    pub k: String,
    pub h: String,
    pub g: String,
    /// Twisted diagonal after inflation from `K x H`.
    pub inflation_iso: bool,
    /// Restriction to `K x H` after the twisted diagonal.
    pub restriction_iso: bool,
    /// The explicit maps are well defined, equivariant and bijective.
    pub explicit_maps: bool,
}

impl ProofReport {
    pub fn passed(&self) -> bool {
        self.inflation_iso && self.restriction_iso && self.explicit_maps
    }
}

/// Whether `phi` on pairs descends to an isomorphism `composed -> target`.
fn explicit_iso(composed: &Biset, orbit_of: &[u32], target: &Biset, phi: impl Fn(usize) -> usize) -> bool {
    let n = composed.size();
    if n != target.size() {
        return false;
    }
    let mut psi = vec![usize::MAX; n];
    for (p, &o) in orbit_of.iter().enumerate() {
        let v = phi(p);
        let slot = &mut psi[o as usize];
        if *slot == usize::MAX {
            *slot = v;
        } else if *slot != v {
            return false;
        }
    }
    let mut hit = vec![false; n];
    if psi.iter().any(|&v| v == usize::MAX || std::mem::replace(&mut hit[v], true)) {
        return false;
    }
    (0..n).all(|o| {
        composed.left().elements().all(|k| psi[composed.act_left(k, o)] == target.act_left(k, psi[o]))
            && composed.right().elements().all(|g| psi[composed.act_right(o, g)] == target.act_right(psi[o], g))
    })
}

/// The two biset isomorphisms behind `Inf` and `Res` being Green morphisms.
pub fn proof_biset_iso_check(k: &FiniteGroup, h: &FiniteGroup, g: &FiniteGroup) -> Result<ProofReport> {
    let kh = product_of(&[k, h]);
    let khg = product_of(&[k, h, g]);
    let kghg = product_of(&[k, g, h, g]);
    let twisted = twisted_diagonal(k, h, g);
    let id_kh: Vec<Elem> = kh.elements().collect();
    let proj = |m: &FiniteGroup, f: &[&FiniteGroup], pick: &[usize]| -> Vec<Elem> {
        m.elements()
            .map(|x| {
                let c = tuple_coords(f, x);
                tuple_index(&[k, h], &[c[pick[0]], c[pick[1]]])
            })
            .collect()
    };

    // Inf^{K x G x H x G}_{K x H} composed with the twisted diagonal
    let inf_big = along(&kghg, &kh, &kh, &proj(&kghg, &[k, g, h, g], &[0, 2]), &id_kh);
    let inf_small = along(&khg, &kh, &kh, &proj(&khg, &[k, h, g], &[0, 1]), &id_kh);
    let (left1, orbits1) = Biset::compose_with_orbits(&twisted, &inf_big)?;
    let inflation_iso = left1.canonical_key() == inf_small.canonical_key();
    let n_inf = inf_big.size();
    let map1 = |p: usize| {
        let (y, x) = (p / n_inf, p % n_inf);
        let a = tuple_coords(&[k, g, h, g], y as Elem);
        let b = tuple_coords(&[k, h], x as Elem);
        tuple_index(&[k, h], &[k.mul(a[0], b[0]), h.mul(a[2], b[1])]) as usize
    };

    // Res^{K x H x G}_{K x H} after the twisted diagonal
    let emb_small: Vec<Elem> = kh
        .elements()
        .map(|x| {
            let c = tuple_coords(&[k, h], x);
            tuple_index(&[k, h, g], &[c[0], c[1], g.identity()])
        })
        .collect();
    let emb_big: Vec<Elem> = kh
        .elements()
        .map(|x| {
            let c = tuple_coords(&[k, h], x);
            tuple_index(&[k, g, h, g], &[c[0], g.identity(), c[1], g.identity()])
        })
        .collect();
    let id_khg: Vec<Elem> = khg.elements().collect();
    let id_kghg: Vec<Elem> = kghg.elements().collect();
    let res_small = along(&kh, &khg, &khg, &emb_small, &id_khg);
    let res_big = along(&kh, &kghg, &kghg, &emb_big, &id_kghg);
    let (left2, orbits2) = Biset::compose_with_orbits(&res_small, &twisted)?;
    let restriction_iso = left2.canonical_key() == res_big.canonical_key();
    let n_tw = twisted.size();
    let map2 = |p: usize| {
        let (y, x) = (p / n_tw, p % n_tw);
        let a = tuple_coords(&[k, h, g], y as Elem);
        let b = tuple_coords(&[k, g, h, g], x as Elem);
        tuple_index(
            &[k, g, h, g],
            &[k.mul(a[0], b[0]), g.mul(a[2], b[1]), h.mul(a[1], b[2]), g.mul(a[2], b[3])],
        ) as usize
    };

    let explicit_maps = explicit_iso(&left1, &orbits1, &inf_small, map1) && explicit_iso(&left2, &orbits2, &res_big, map2);
    Ok(ProofReport {
        k: k.label().into(),
        h: h.label().into(),
        g: g.label().into(),
        inflation_iso,
        restriction_iso,
        explicit_maps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functor::FunctorRegistry;
    use crate::linalg::qi;

    fn cat(label: &str) -> FiniteGroup {
        Catalog::builtin().get(label).unwrap().clone()
    }

    fn shifted(base: &str, g: &str) -> Arc<Shifted> {
        shift(FunctorRegistry::default().base(base).unwrap(), &cat(g), g)
    }

    #[test]
    fn proof_isomorphisms() {
        for (k, h, g) in [("1", "1", "1"), ("C2", "C2", "C2"), ("C2", "C3", "C2"), ("S3", "1", "C2")] {
            let rep = proof_biset_iso_check(&cat(k), &cat(h), &cat(g)).unwrap();
            assert!(rep.passed(), "{rep:?}");
        }
    }

    #[test]
    fn trivial_shift_splits_trivially() {
        let sh = shifted("burnside", "1");
        for h in ["1", "C2", "S3"] {
            let s = split_report(&sh, &cat(h), Catalog::builtin()).unwrap();
            assert!(s.row.split_ok, "{:?}", s.row);
            assert_eq!(s.row.dim_kappa_hat, 0);
        }
        assert!(kappa(&sh, &cat("V4")).unwrap().is_zero());
    }

    #[test]
    fn burnside_c2_at_c2() {
        let sh = shifted("burnside", "C2");
        let s = split_report(&sh, &cat("C2"), Catalog::builtin()).unwrap();
        assert!(s.row.split_ok, "{:?}", s.row);
        assert_eq!(s.row.dim_essential, 1);
        assert_eq!(s.row.dim_shifted_essential, 1 + s.row.dim_kappa_hat);
        assert!(kappa_is_ideal(&sh, &cat("C2")).unwrap());
    }

    #[test]
    fn epsilon_of_shifted_burnside_is_a_point() {
        let sh = shifted("burnside", "C2");
        // B(1 x C2) has classes [1, C2]; the point is the second
        assert_eq!(sh.epsilon(), SparseVec::unit(1));
    }

    #[test]
    fn kappa_at_trivial_group() {
        for g in ["C3", "C4"] {
            let sh = shifted("classfun:rational", g);
            let one = FiniteGroup::trivial();
            let res = res_morphism(&sh).component(&one).unwrap();
            let gg = cat(g);
            let classes = gg.sigma_classes(SigmaKind::Rational);
            let id = classes.class_of(gg.identity());
            for d in 0..classes.len() {
                assert_eq!(res.column(d).get(0), qi(i64::from(d == id)));
            }
            let k = kappa(&sh, &one).unwrap();
            let expect = Subspace::span(classes.len(), (0..classes.len()).filter(|&d| d != id).map(SparseVec::unit));
            assert_eq!(k, expect);
        }
    }

    #[test]
    fn nu_checks() {
        for (h, g, factor) in [("1", "C3", 2), ("C3", "C4", 3), ("C4", "C3", 2), ("C5", "C3", 2), ("C8", "C3", 2)] {
            let sh = shifted("classfun:rational", g);
            let rep = nu_dim_check(&sh, &cat(h), Catalog::builtin()).unwrap();
            assert_eq!(rep.rational_classes, factor);
            assert!(rep.passed(), "{rep:?}");
        }
        let sh = shifted("classfun:rational", "C2");
        assert!(matches!(nu_dim_check(&sh, &cat("C4"), Catalog::builtin()), Err(Error::GcdConditionFailed(2))));
    }

    #[test]
    fn seeds() {
        let s = seed_split(&shifted("classfun:rational", "C3"), &FiniteGroup::trivial(), Catalog::builtin()).unwrap();
        assert_eq!((s.dim_quotient, s.dim_kappa_hat), (1, 1));
        assert!(s.quotient_certified);
        let s = seed_split(&shifted("burnside", "C2"), &FiniteGroup::trivial(), Catalog::builtin()).unwrap();
        assert_eq!((s.dim_quotient, s.dim_kappa_hat), (1, 1));
    }

    #[test]
    fn inflation_image_is_not_an_ideal() {
        assert!(inf_not_ideal_witness(&shifted("burnside", "C2")).unwrap().is_some());
        assert!(inf_not_ideal_witness(&shifted("burnside", "1")).unwrap().is_none());
    }
}
