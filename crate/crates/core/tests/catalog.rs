//! Catalog-wide structural invariants, including the forbidden-sublattice
//! cross-check of the distributivity predicate.

use lattika_core::*;

/// Does the lattice contain a five-element subset closed under meet and
/// join that forms a diamond (three incomparable mids) or a pentagon?
fn has_forbidden_sublattice(lat: &Lattice) -> bool {
    let n = lat.len();
    let elems: Vec<Elem> = lat.elems().collect();
    let mut combo = [0usize; 5];
    fn rec(
        lat: &Lattice,
        elems: &[Elem],
        combo: &mut [usize; 5],
        depth: usize,
        start: usize,
    ) -> bool {
        if depth == 5 {
            let set: Subset = combo.iter().map(|&i| elems[i]).collect();
            // Closed under both operations?
            for a in set.iter() {
                for b in set.iter() {
                    if !set.contains(lat.meet(a, b)) || !set.contains(lat.join(a, b)) {
                        return false;
                    }
                }
            }
            return is_diamond_or_pentagon(lat, set);
        }
        for i in start..elems.len() {
            combo[depth] = i;
            if rec(lat, elems, combo, depth + 1, i + 1) {
                return true;
            }
        }
        false
    }
    if n < 5 {
        return false;
    }
    rec(lat, &elems, &mut combo, 0, 0)
}

fn is_diamond_or_pentagon(lat: &Lattice, set: Subset) -> bool {
    let members: Vec<Elem> = set.iter().collect();
    let bot = members
        .iter()
        .copied()
        .find(|&b| members.iter().all(|&x| lat.leq(b, x)));
    let top = members
        .iter()
        .copied()
        .find(|&t| members.iter().all(|&x| lat.leq(x, t)));
    let (Some(bot), Some(top)) = (bot, top) else {
        return false;
    };
    let mids: Vec<Elem> = members
        .iter()
        .copied()
        .filter(|&x| x != bot && x != top)
        .collect();
    if mids.len() != 3 {
        return false;
    }
    let pairwise = |f: &dyn Fn(Elem, Elem) -> bool| {
        f(mids[0], mids[1]) as u8 + f(mids[0], mids[2]) as u8 + f(mids[1], mids[2]) as u8
    };
    let comparable =
        pairwise(&|a, b| lat.leq(a, b) || lat.leq(b, a));
    let glb_bot = pairwise(&|a, b| lat.meet(a, b) == bot);
    let lub_top = pairwise(&|a, b| lat.join(a, b) == top);
    // Diamond: all three mids incomparable, all pairs meet at bottom and
    // join at top. Pentagon: exactly one comparable pair, the two cross
    // pairs meet at bottom and join at top.
    (comparable == 0 && glb_bot == 3 && lub_top == 3)
        || (comparable == 1 && glb_bot >= 2 && lub_top >= 2)
}

#[test]
fn distributivity_matches_the_forbidden_sublattice_criterion() {
    for entry in default_catalog(DEFAULT_CATALOG_SEED) {
        let lat = &entry.lattice;
        if lat.len() > 16 {
            continue; // keep the 5-subset scan cheap
        }
        assert_eq!(
            lat.is_distributive(),
            !has_forbidden_sublattice(lat),
            "lattice {}",
            entry.id
        );
    }
    // And on the canonical positive cases.
    assert!(has_forbidden_sublattice(&named("m3").unwrap()));
    assert!(has_forbidden_sublattice(&named("n5").unwrap()));
    assert!(!has_forbidden_sublattice(&named("ex5").unwrap()));
}

#[test]
fn distributivity_agrees_with_the_dual_law_catalog_wide() {
    for entry in default_catalog(DEFAULT_CATALOG_SEED) {
        let lat = &entry.lattice;
        let dual = lat.elems().all(|a| {
            lat.elems().all(|b| {
                lat.elems()
                    .all(|c| lat.join(a, lat.meet(b, c)) == lat.meet(lat.join(a, b), lat.join(a, c)))
            })
        });
        assert_eq!(lat.is_distributive(), dual, "lattice {}", entry.id);
    }
}

#[test]
fn size_limit_one_passes_vacuously_on_the_default_catalog() {
    let catalog = default_catalog(DEFAULT_CATALOG_SEED);
    let reports = run_theorem_suite(&catalog, None, Some(1)).unwrap();
    assert_eq!(reports.len(), 17);
    for r in &reports {
        assert_eq!(r.instances, 0, "{}", r.theorem);
        assert_eq!(r.violations, 0, "{}", r.theorem);
    }
}

#[test]
fn filter_count_equals_element_count_catalog_wide() {
    for entry in default_catalog(DEFAULT_CATALOG_SEED) {
        assert_eq!(
            all_filters(&entry.lattice).len(),
            entry.lattice.len(),
            "lattice {}",
            entry.id
        );
    }
}

#[test]
fn l_domain_agrees_with_top_primality_catalog_wide() {
    for entry in default_catalog(DEFAULT_CATALOG_SEED) {
        let lat = &entry.lattice;
        let top = FilterSet::new(lat, Subset::singleton(lat.top())).unwrap();
        assert_eq!(
            lat.is_l_domain(),
            is_prime_filter(lat, &top),
            "lattice {}",
            entry.id
        );
    }
}

#[test]
fn kernel_of_quotient_projection_is_the_modulus_catalog_wide() {
    for entry in default_catalog(DEFAULT_CATALOG_SEED) {
        let lat = &entry.lattice;
        if lat.len() > 12 {
            continue;
        }
        for p in all_filters(lat) {
            match quotient(lat, &p) {
                Ok(qt) => {
                    let proj = qt.projection();
                    assert_eq!(kernel(&proj).unwrap().members(), p.members());
                }
                Err(_) => {
                    // Construction may only fail without distributivity.
                    assert!(!lat.is_distributive(), "lattice {}", entry.id);
                }
            }
        }
    }
}

#[test]
fn filter_operations_stay_filters_on_distributive_entries() {
    for entry in default_catalog(DEFAULT_CATALOG_SEED) {
        let lat = &entry.lattice;
        if !lat.is_distributive() || lat.len() > 12 {
            continue;
        }
        for f in all_filters(lat) {
            for g in all_filters(lat) {
                assert!(filter_join(lat, &f, &g).is_ok(), "lattice {}", entry.id);
                let r = residual_filter(lat, &f, &g).unwrap();
                assert!(is_filter(lat, r), "lattice {}", entry.id);
                assert!(f.members().is_subset_of(r));
            }
        }
    }
}

#[test]
fn catalog_rebuild_is_byte_identical() {
    let a = default_catalog(DEFAULT_CATALOG_SEED);
    let b = default_catalog(DEFAULT_CATALOG_SEED);
    let ser = |cat: &[CatalogEntry]| -> String {
        cat.iter()
            .map(|e| LatticeDoc::from_lattice(&e.lattice).to_json())
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(ser(&a), ser(&b));
    // A different seed changes the random entries.
    let c = default_catalog(DEFAULT_CATALOG_SEED + 1);
    assert_ne!(ser(&a), ser(&c));
}
