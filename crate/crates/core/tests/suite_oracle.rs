//! Cross-validation of the theorem suite against literal re-derivations
//! built only from the public operations. The suite's inner loops are
//! word-level specializations; these oracles recompute several sweeps the
//! slow way and compare instance and violation counts exactly.

use lattika_core::*;

fn mixed_catalog() -> Vec<CatalogEntry> {
    let mut entries: Vec<CatalogEntry> = [
        ("boolean-2", boolean(2).unwrap()),
        ("chain-4", chain(4).unwrap()),
        ("ex5", named("ex5").unwrap()),
        ("m3", named("m3").unwrap()),
        ("n5", named("n5").unwrap()),
    ]
    .into_iter()
    .map(|(id, lattice)| CatalogEntry {
        id: id.to_string(),
        lattice,
        provenance: Provenance::Named { id: id.to_string() },
    })
    .collect();
    entries.sort_by(|a, b| a.id.cmp(&b.id));
    entries
}

fn suite_report(catalog: &[CatalogEntry], id: TheoremId) -> VerificationReport {
    run_theorem_suite(catalog, Some(&[id]), None)
        .unwrap()
        .remove(0)
}

fn proper_filters(lat: &Lattice) -> Vec<FilterSet> {
    all_filters(lat)
        .into_iter()
        .filter(|f| f.is_proper(lat))
        .collect()
}

#[test]
fn ghasem_suite_matches_literal_recount() {
    let catalog = mixed_catalog();
    let report = suite_report(&catalog, TheoremId::ThmGhasem);
    let mut instances = 0u64;
    let mut violations = 0u64;
    for entry in &catalog {
        let lat = &entry.lattice;
        for s in all_vee_closed_sets(lat) {
            for q in proper_filters(lat) {
                instances += 1;
                if !check_ghasem_equivalences(lat, &s, &q).all_equal() {
                    violations += 1;
                }
            }
        }
    }
    assert_eq!((report.instances, report.violations), (instances, violations));
    assert_eq!(violations, 0);
}

#[test]
fn disjointness_suite_matches_literal_recount() {
    let catalog = mixed_catalog();
    let report = suite_report(&catalog, TheoremId::Prop1Disjoint);
    let mut instances = 0u64;
    let mut violations = 0u64;
    for entry in &catalog {
        let lat = &entry.lattice;
        for s in all_vee_closed_sets(lat) {
            for q in all_s_filters(lat, &s) {
                instances += 1;
                if q.members().intersects(s.members()) {
                    violations += 1;
                }
            }
        }
    }
    assert_eq!((report.instances, report.violations), (instances, violations));
}

#[test]
fn remark_prime_suite_matches_literal_recount() {
    let catalog = mixed_catalog();
    let report = suite_report(&catalog, TheoremId::RemarkPrime);
    let mut instances = 0u64;
    let mut violations = 0u64;
    for entry in &catalog {
        let lat = &entry.lattice;
        for s in all_vee_closed_sets(lat) {
            for q in proper_filters(lat) {
                if !is_prime_filter(lat, &q) {
                    continue;
                }
                instances += 1;
                let disjoint = !q.members().intersects(s.members());
                if is_s_filter(lat, &s, &q) != disjoint {
                    violations += 1;
                }
            }
        }
    }
    assert_eq!((report.instances, report.violations), (instances, violations));
}

#[test]
fn small_suite_matches_literal_recount() {
    let catalog = mixed_catalog();
    let report = suite_report(&catalog, TheoremId::ThmSmall);
    let mut instances = 0u64;
    let mut violations = 0u64;
    for entry in &catalog {
        let lat = &entry.lattice;
        if !lat.is_distributive() {
            continue; // declared scope
        }
        for s in all_vee_closed_sets(lat) {
            let s_filters = all_s_filters(lat, &s);
            for p in proper_filters(lat) {
                if p.members().intersects(s.members()) {
                    continue;
                }
                instances += 1;
                let ok = match smallest_s_filter(lat, &s, &p) {
                    Ok(sat) => {
                        is_s_filter(lat, &s, &sat)
                            && p.members().is_subset_of(sat.members())
                            && s_filters
                                .iter()
                                .filter(|q| p.members().is_subset_of(q.members()))
                                .all(|q| sat.members().is_subset_of(q.members()))
                    }
                    Err(_) => false,
                };
                if !ok {
                    violations += 1;
                }
            }
        }
    }
    assert_eq!((report.instances, report.violations), (instances, violations));
    assert_eq!(violations, 0);
}

#[test]
fn maximal_prime_suite_matches_literal_recount() {
    let catalog = mixed_catalog();
    let report = suite_report(&catalog, TheoremId::ThmMaximalPrime);
    let mut instances = 0u64;
    let mut violations = 0u64;
    for entry in &catalog {
        let lat = &entry.lattice;
        if !lat.is_distributive() {
            continue;
        }
        for s in all_vee_closed_sets(lat) {
            for q in maximal_s_filters(lat, &s) {
                instances += 1;
                if !is_prime_filter(lat, &q) {
                    violations += 1;
                }
            }
        }
    }
    assert_eq!((report.instances, report.violations), (instances, violations));
    // The diamond genuinely violates the claim when the scope is lifted.
    let m3_only = vec![mixed_catalog().remove(3)];
    assert_eq!(m3_only[0].id, "m3");
    let w = hunt_counterexample(&m3_only, TheoremId::ThmMaximalPrime, Some("distributive"))
        .unwrap();
    assert!(w.is_some());
}

#[test]
fn intersection_suite_matches_literal_recount() {
    let catalog = mixed_catalog();
    let report = suite_report(&catalog, TheoremId::PropIntersection);
    let mut instances = 0u64;
    let mut violations = 0u64;
    for entry in &catalog {
        let lat = &entry.lattice;
        for s in all_vee_closed_sets(lat) {
            let sf = all_s_filters(lat, &s);
            for (i, a) in sf.iter().enumerate() {
                for b in &sf[i..] {
                    instances += 1;
                    let ok = intersect_s_filters(lat, &s, &[*a, *b])
                        .map(|q| is_s_filter(lat, &s, &q))
                        .unwrap_or(false);
                    if !ok {
                        violations += 1;
                    }
                }
            }
        }
    }
    assert_eq!((report.instances, report.violations), (instances, violations));
}

#[test]
fn minprime_suite_matches_literal_recount() {
    let catalog = mixed_catalog();
    let report = suite_report(&catalog, TheoremId::ThmMinprime);
    let mut instances = 0u64;
    let mut violations = 0u64;
    for entry in &catalog {
        let lat = &entry.lattice;
        for s in all_vee_closed_sets(lat) {
            for q in all_s_filters(lat, &s) {
                instances += 1;
                if !check_min_primes_s(lat, &s, &q).unwrap() {
                    violations += 1;
                }
            }
        }
    }
    assert_eq!((report.instances, report.violations), (instances, violations));
    assert_eq!(violations, 0);
}

#[test]
fn khamen_suite_matches_literal_recount() {
    let catalog = mixed_catalog();
    let report = suite_report(&catalog, TheoremId::ThmKhamen);
    let mut instances = 0u64;
    let mut violations = 0u64;
    for entry in &catalog {
        let lat = &entry.lattice;
        if !lat.is_distributive() {
            continue;
        }
        for s in all_vee_closed_sets(lat) {
            for f in proper_filters(lat) {
                if f.members().intersects(s.members()) {
                    continue;
                }
                instances += 1;
                let ok = match find_prime_s_filter_containing(lat, &s, &f) {
                    Ok(q) => {
                        f.members().is_subset_of(q.members())
                            && is_prime_filter(lat, &q)
                            && !q.members().intersects(s.members())
                            && is_s_filter(lat, &s, &q)
                    }
                    Err(_) => false,
                };
                if !ok {
                    violations += 1;
                }
            }
        }
    }
    assert_eq!((report.instances, report.violations), (instances, violations));
    assert_eq!(violations, 0);
}
