//! Precomputed per-lattice tables for the exhaustive sweeps.
//!
//! All quantified objects are rebuilt here from their raw definitions:
//! filters from the subset axioms (pinned to the oracle in module tests),
//! vee-closed sets by enumeration, distributivity by the triple scan rather
//! than the cached flag. Residual rows and the fixed-element masks turn the
//! inner loops of every checker into single word operations.

use crate::filter::all_filters;
use crate::generate::CatalogEntry;
use crate::lattice::{Elem, Lattice};
use crate::sfilter::enumerate_vee_closed_masks;
use crate::subset::Subset;

pub(crate) struct LatticeCtx<'a> {
    pub entry: &'a CatalogEntry,
    pub lat: &'a Lattice,
    pub n: usize,
    pub distributive: bool,
    /// All filters as masks, ascending bit pattern.
    pub filters: Vec<Subset>,
    /// Generator (minimum element) of each filter.
    pub gens: Vec<Elem>,
    pub proper: Vec<bool>,
    /// rows\[qi\]\[t\] = { x | x \/ t in q }: the residual of q by t.
    pub rows: Vec<Vec<Subset>>,
    /// dmask\[qi\] = { t | (q : t) inside q }; with properness this is the
    /// S-filter condition elementwise.
    pub dmask: Vec<Subset>,
    pub prime: Vec<bool>,
    /// Generators of proper prime filters.
    pub prime_gens: Subset,
    /// Vee-closed masks ascending by bit pattern (instance iteration order).
    pub vee: Vec<Subset>,
    /// Filter index owning each generator element.
    pub fidx_of_gen: Vec<usize>,
}

impl<'a> LatticeCtx<'a> {
    pub fn build(entry: &'a CatalogEntry) -> LatticeCtx<'a> {
        let lat = &entry.lattice;
        let n = lat.len();

        // Re-derive distributivity instead of trusting the cached flag.
        let mut distributive = true;
        'outer: for a in lat.elems() {
            for b in lat.elems() {
                for c in lat.elems() {
                    if lat.meet(a, lat.join(b, c))
                        != lat.join(lat.meet(a, b), lat.meet(a, c))
                    {
                        distributive = false;
                        break 'outer;
                    }
                }
            }
        }
        debug_assert_eq!(distributive, lat.is_distributive());

        let mut filter_sets = all_filters(lat);
        filter_sets.sort_by_key(|f| f.members().bits());
        let filters: Vec<Subset> = filter_sets.iter().map(|f| f.members()).collect();
        let gens: Vec<Elem> = filter_sets.iter().map(|f| f.generator(lat)).collect();
        let proper: Vec<bool> = filters.iter().map(|f| !f.contains(lat.bottom())).collect();
        let mut fidx_of_gen = vec![usize::MAX; n];
        for (qi, g) in gens.iter().enumerate() {
            fidx_of_gen[g.index()] = qi;
        }

        let mut rows = Vec::with_capacity(filters.len());
        let mut dmask = Vec::with_capacity(filters.len());
        for q in &filters {
            let mut qrows = Vec::with_capacity(n);
            let mut d = Subset::EMPTY;
            for t in lat.elems() {
                let row: Subset = lat.elems().filter(|&x| q.contains(lat.join(x, t))).collect();
                if row.is_subset_of(*q) {
                    d.insert(t);
                }
                qrows.push(row);
            }
            rows.push(qrows);
            dmask.push(d);
        }

        // Prime: proper, and joins from outside cannot land inside, i.e.
        // every residual by an outside element stays inside.
        let mut prime = Vec::with_capacity(filters.len());
        let mut prime_gens = Subset::EMPTY;
        for (qi, q) in filters.iter().enumerate() {
            let outside = q.complement(n);
            let is_prime = proper[qi] && outside.is_subset_of(dmask[qi]);
            if is_prime {
                prime_gens.insert(gens[qi]);
            }
            prime.push(is_prime);
        }

        let mut vee = enumerate_vee_closed_masks(lat);
        vee.sort_by_key(|s| s.bits());

        LatticeCtx {
            entry,
            lat,
            n,
            distributive,
            filters,
            gens,
            proper,
            rows,
            dmask,
            prime,
            prime_gens,
            vee,
            fidx_of_gen,
        }
    }

    /// Generators of the proper filters satisfying the S-filter condition.
    pub fn s_filter_gens(&self, s: Subset) -> Subset {
        let mut m = Subset::EMPTY;
        for qi in 0..self.filters.len() {
            if self.proper[qi] && s.is_subset_of(self.dmask[qi]) {
                m.insert(self.gens[qi]);
            }
        }
        m
    }

    /// Is the filter at `qi` an S-filter for the given S mask?
    pub fn is_s_filter_idx(&self, s: Subset, qi: usize) -> bool {
        self.proper[qi] && s.is_subset_of(self.dmask[qi])
    }

    /// Check that a raw subset is a filter: in a finite lattice that means
    /// it is the up-set of its meet.
    pub fn subset_is_filter(&self, x: Subset) -> Option<Elem> {
        let m = self.lat.meet_all(x)?;
        (self.lat.upset(m) == x).then_some(m)
    }
}

/// The same tables for lattices outside the catalog (hom codomains,
/// products); no vee-closed enumeration unless asked.
pub(crate) struct MiniCtx {
    pub filters: Vec<Subset>,
    pub proper: Vec<bool>,
    pub dmask: Vec<Subset>,
    fidx: Vec<usize>,
}

impl MiniCtx {
    pub fn build(lat: &Lattice) -> MiniCtx {
        let mut filter_sets = all_filters(lat);
        filter_sets.sort_by_key(|f| f.members().bits());
        let filters: Vec<Subset> = filter_sets.iter().map(|f| f.members()).collect();
        let gens: Vec<Elem> = filter_sets.iter().map(|f| f.generator(lat)).collect();
        let proper: Vec<bool> = filters.iter().map(|f| !f.contains(lat.bottom())).collect();
        let mut fidx = vec![usize::MAX; lat.len()];
        for (qi, g) in gens.iter().enumerate() {
            fidx[g.index()] = qi;
        }
        let mut dmask = Vec::with_capacity(filters.len());
        for q in &filters {
            let mut d = Subset::EMPTY;
            for t in lat.elems() {
                let row_ok = lat
                    .elems()
                    .all(|x| !q.contains(lat.join(x, t)) || q.contains(x));
                if row_ok {
                    d.insert(t);
                }
            }
            dmask.push(d);
        }
        MiniCtx {
            filters,
            proper,
            dmask,
            fidx,
        }
    }

    /// Index of the principal filter generated by `g`.
    pub fn fidx_of_gen(&self, g: Elem) -> usize {
        self.fidx[g.index()]
    }
}
