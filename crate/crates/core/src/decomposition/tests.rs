use super::*;
use crate::catalog::{builtin_catalog, group};

fn of_order(g: &FiniteGroup, k: usize) -> usize {
    (0..g.order()).find(|&x| g.element_order(x) == k).unwrap()
}

/// `A × B` with index `a |B| + b`, and a generator of each cyclic factor.
fn cyclic_product(m: &str, n: &str) -> (FiniteGroup, usize, usize) {
    let a = group(m);
    let b = group(n);
    let (g, _, _) = a.direct_product(&b).unwrap();
    let x = of_order(&a, a.order());
    let y = of_order(&b, b.order());
    (g, x * b.order(), y)
}

fn type_of(g: &FiniteGroup, h: &Subgroup) -> Vec<usize> {
    g.abelian_type_of(h).unwrap().orders().to_vec()
}

#[test]
fn homocyclic_rank_examples() {
    let c4 = group("C4");
    assert_eq!(homocyclic_rank(&c4, 2).unwrap(), 1);
    assert_eq!(homocyclic_rank(&c4, 1).unwrap(), 0);
    let d8 = group("D8");
    for t in 1..=3 {
        assert_eq!(homocyclic_rank(&d8, t).unwrap(), 0);
    }
    let g = group("D8xC4");
    assert_eq!(homocyclic_rank(&g, 2).unwrap(), 1);
    assert_eq!(homocyclic_rank(&g, 1).unwrap(), 0);
}

#[test]
fn extract_component_examples() {
    let g = group("C4xC2");
    let (t, s) = extract_component(&g, 2).unwrap();
    assert_eq!(type_of(&g, &t), vec![4]);
    assert_eq!(type_of(&g, &s), vec![2]);

    let g = group("D8xC4");
    let (t, s) = extract_component(&g, 2).unwrap();
    assert_eq!(type_of(&g, &t), vec![4]);
    assert_eq!(s.order(), 8);
    assert!(g.abelian_type_of(&s).is_err());
    let (sg, _) = g.subgroup_as_group(&s);
    let ab = sg
        .section_type(&sg.whole(), &sg.derived_subgroup())
        .unwrap();
    assert_eq!(ab.orders(), &[2, 2]);

    let q8 = group("Q8");
    for t in 1..=3 {
        let (t, s) = extract_component(&q8, t).unwrap();
        assert!(t.is_trivial());
        assert_eq!(s, q8.whole());
    }
}

#[test]
fn complement_construction_examples() {
    let (g, a, b) = cyclic_product("C4", "C2");
    let tt = g.generate(&[g.mul(a, b)]);
    let s = complement_construction(&g, &tt, 2).unwrap();
    assert_eq!(s.order(), 2);
    assert!(g.meet(&s, &tt).is_trivial());
    assert_eq!(g.join(&s, &tt), g.whole());

    let (g, a, a2) = cyclic_product("C4", "C4");
    let diag = g.generate(&[g.mul(a, a2)]);
    let s = complement_construction(&g, &diag, 2).unwrap();
    assert_eq!(type_of(&g, &s), vec![4]);
    assert!(g.meet(&s, &diag).is_trivial());
    assert_eq!(g.join(&s, &diag), g.whole());

    assert_eq!(
        complement_construction(&g, &g.trivial(), 2).unwrap(),
        g.whole()
    );
}

#[test]
fn complement_construction_checks_its_preconditions() {
    let (g, a, _) = cyclic_product("C4", "C2");
    // ⟨a^2⟩ lies in ℧_1(G)
    let sq = g.generate(&[g.mul(a, a)]);
    assert!(matches!(
        complement_construction(&g, &sq, 1),
        Err(DecompositionError::Precondition(_))
    ));
    // not homocyclic of exponent 2^1
    let c = g.generate(&[a]);
    assert!(matches!(
        complement_construction(&g, &c, 1),
        Err(DecompositionError::Precondition(_))
    ));
    let d8 = group("D8");
    let z = d8.center();
    assert!(matches!(
        complement_construction(&d8, &z, 1),
        Err(DecompositionError::Precondition(_))
    ));
}

#[test]
fn twist_uses_the_inverse_power_of_y() {
    // x = (a, b) with x^3 = y^3: the twist must be x y^(-1), not x y
    let (g, a, b) = cyclic_product("C3", "C9");
    let x = g.mul(a, b);
    let twisted = split_off_cyclic(&g, &g.whole(), &[x], b, 2).unwrap();
    assert_eq!(twisted, vec![a]);
    let y = g.generate(&[b]);
    let plus = g.generate(&[g.mul(x, b)]);
    assert!(!g.meet(&plus, &y).is_trivial());
    let tt = g.generate(&[b]);
    let s = complement_construction(&g, &tt, 2).unwrap();
    assert_eq!(type_of(&g, &s), vec![3]);
}

#[test]
fn ab_nab_split_examples() {
    let g = group("D8xC4xC2");
    let dec = ab_nab_split(&g).unwrap();
    assert_eq!(dec.nab_order, 8);
    assert!(!dec.nab_abelian);
    let (n, _) = g.subgroup_as_group(&dec.nab);
    assert_eq!(
        n.section_type(&n.whole(), &n.derived_subgroup())
            .unwrap()
            .orders(),
        &[2, 2]
    );
    let comps: Vec<(u32, usize)> = dec.components.iter().map(|c| (c.t, c.rank)).collect();
    assert_eq!(comps, vec![(1, 1), (2, 1)]);
    assert_eq!(dec.ab_type.orders(), &[4, 2]);

    let q8 = group("Q8");
    let dec = ab_nab_split(&q8).unwrap();
    assert!(dec.components.is_empty());
    assert_eq!(dec.nab, q8.whole());
}

#[test]
fn abelian_groups_split_into_their_invariant_factors() {
    for e in builtin_catalog() {
        let g = e.build().unwrap();
        let Ok(ty) = g.abelian_type() else { continue };
        let dec = ab_nab_split(&g).unwrap();
        assert_eq!(dec.ab_type, ty, "{}", e.name);
        assert!(dec.nab.is_trivial(), "{}", e.name);
    }
}

#[test]
fn every_catalog_group_decomposes_with_a_certificate() {
    for e in builtin_catalog() {
        let g = e.build().unwrap();
        let dec = ab_nab_split(&g).unwrap();
        assert!(dec.certificate.holds(), "{}", e.name);
        assert_eq!(ab_type_by_formula(&g).unwrap(), dec.ab_type, "{}", e.name);
        for c in lemma41_checks(&g, &dec).unwrap() {
            assert!(c.all(), "{} t = {}: {c:?}", e.name, c.t);
        }
        // NAb has nothing left to extract
        let (n, _) = g.subgroup_as_group(&dec.nab);
        assert!(
            ab_nab_split(&n).unwrap().components.is_empty(),
            "{}",
            e.name
        );
        // deterministic witnesses
        let again = ab_nab_split(&g).unwrap();
        assert_eq!(again.nab_generators, dec.nab_generators);
        let gens = |d: &HomocyclicDecomposition| {
            d.components
                .iter()
                .map(|c| c.generators.clone())
                .collect::<Vec<_>>()
        };
        assert_eq!(gens(&again), gens(&dec));
    }
}

#[test]
fn components_merge_under_products_with_abelian_groups() {
    for g_name in ["D8", "Q8", "Heis27", "M16", "D8xC2"] {
        let g = group(g_name);
        let base = ab_nab_split(&g).unwrap().ab_type;
        for a_name in ["C2", "C4", "C3", "C9", "C4xC2"] {
            let a = group(a_name);
            let Ok((ga, _, _)) = g.direct_product(&a) else {
                continue;
            };
            let dec = ab_nab_split(&ga).unwrap();
            let mut want = base.orders().to_vec();
            want.extend_from_slice(a.abelian_type().unwrap().orders());
            assert_eq!(dec.ab_type, AbelianType::new(want), "{g_name} x {a_name}");
            assert_eq!(dec.nab_order * dec.ab_type.order(), ga.order());
        }
    }
}

#[test]
fn lemma41_checks_on_d8_times_c4() {
    let g = group("D8xC4");
    let dec = ab_nab_split(&g).unwrap();
    let checks = lemma41_checks(&g, &dec).unwrap();
    assert!(checks.iter().all(ComponentChecks::all));
    // ℧_2(G)G' is the derived subgroup of the D8 factor
    let n = agemo_derived(&g, &g.whole(), 2);
    assert_eq!(n, agemo_derived(&g, &dec.nab, 2));
    assert_eq!(n.order(), 2);
    assert_eq!(n, g.derived_subgroup());
}
