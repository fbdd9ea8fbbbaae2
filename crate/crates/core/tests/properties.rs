//! Randomized invariants over small catalog groups.

use essalg_core::biset::{burnside_compose, transitive_from_class, Biset, BurnsideElement};
use essalg_core::catalog::Catalog;
use essalg_core::checks::check_act_functoriality;
use essalg_core::functor::FunctorRegistry;
use essalg_core::group::{direct_product, FiniteGroup};
use proptest::prelude::*;

fn pool() -> Vec<FiniteGroup> {
    Catalog::builtin().entries().iter().filter(|e| e.group.order() <= 6).map(|e| e.group.clone()).collect()
}

fn classes(left: &FiniteGroup, right: &FiniteGroup) -> usize {
    direct_product(left, right).group.subgroup_lattice().unwrap().num_classes()
}

/// Four group indices and three class seeds, reduced modulo the lattice size.
fn quad() -> impl Strategy<Value = ([usize; 4], [usize; 3])> {
    let n = pool().len();
    ([0..n, 0..n, 0..n, 0..n], [any::<usize>(), any::<usize>(), any::<usize>()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn concrete_composition_is_associative((g, s) in quad()) {
        let p = pool();
        let (a, b, c, d) = (&p[g[0]], &p[g[1]], &p[g[2]], &p[g[3]]);
        let x = transitive_from_class(b, a, s[0] % classes(b, a)).unwrap();
        let y = transitive_from_class(c, b, s[1] % classes(c, b)).unwrap();
        let z = transitive_from_class(d, c, s[2] % classes(d, c)).unwrap();
        let lhs = Biset::compose(&z, &Biset::compose(&y, &x).unwrap()).unwrap();
        let rhs = Biset::compose(&Biset::compose(&z, &y).unwrap(), &x).unwrap();
        prop_assert!(lhs.is_isomorphic(&rhs));
        let coords = burnside_compose(&z.decompose().unwrap(), &burnside_compose(&y.decompose().unwrap(), &x.decompose().unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs.decompose().unwrap(), coords);
    }

    #[test]
    fn action_is_functorial((g, s) in quad()) {
        let p = pool();
        let (a, b, c) = (&p[g[0]], &p[g[1]], &p[g[2]]);
        let alpha = BurnsideElement::basis(b, a, s[0] % classes(b, a));
        let beta = BurnsideElement::basis(c, b, s[1] % classes(c, b));
        let r = FunctorRegistry::default();
        let names = r.names();
        let f = r.base(&names[g[3] % names.len()]).unwrap();
        prop_assert!(check_act_functoriality(&*f, &beta, &alpha).unwrap());
    }
}
