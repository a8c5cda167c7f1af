//! Quotients of a lattice by a filter.
//!
//! Elements u, v are identified when u /\ x = v /\ y for some x, y in the
//! modulus filter. The class order is read as: some representatives
//! compare, equivalently u /\ x <= v for some x in the modulus — the one
//! reading that makes the class meet/join formulas well defined. The
//! construction validates the result and reports a witness instead of
//! producing a non-lattice (possible when the base is not distributive).

use thiserror::Error;

use crate::filter::FilterSet;
use crate::hom::{make_hom, LatticeHom};
use crate::lattice::{BuildError, Elem, Lattice};
use crate::sfilter::{is_s_filter, is_vee_closed, s_filter_predicate, VeeClosedSet};
use crate::subset::Subset;

#[derive(Clone, Debug)]
pub struct QuotientLattice {
    base: Lattice,
    modulus: FilterSet,
    /// Equivalence classes as subsets of the base, one per quotient element.
    classes: Vec<Subset>,
    quotient: Lattice,
    /// Base element index -> quotient element index.
    class_of: Vec<u32>,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum QuotientError {
    #[error("quotient order is ill-defined: classes of `{u}` and `{v}` break {what}")]
    QuotientOrderIllDefined { u: String, v: String, what: String },
    #[error("modulus is not contained in the filter")]
    ModulusNotContained,
    #[error("the given filter is not an S-filter of the base")]
    NotAnSFilter,
    #[error("base lattice is not complemented")]
    NotComplemented,
    #[error("image of the filter fails the S-filter condition in the quotient")]
    ImageNotSFilter,
    #[error(transparent)]
    Build(#[from] BuildError),
}

/// Build the quotient of `lat` by the filter `p`.
pub fn quotient(lat: &Lattice, p: &FilterSet) -> Result<QuotientLattice, QuotientError> {
    p.check(lat);
    let n = lat.len();

    // u ~ v iff u /\ x = v /\ y for some x, y in p.
    let meets_with_p = |u: Elem| -> Subset { p.members().iter().map(|x| lat.meet(u, x)).collect() };
    let meet_sets: Vec<Subset> = lat.elems().map(meets_with_p).collect();
    let mut class_of = vec![u32::MAX; n];
    let mut classes: Vec<Subset> = Vec::new();
    for u in lat.elems() {
        if class_of[u.index()] != u32::MAX {
            continue;
        }
        let mut class = Subset::singleton(u);
        for v in lat.elems() {
            if v != u && meet_sets[u.index()].intersects(meet_sets[v.index()]) {
                class.insert(v);
            }
        }
        let idx = classes.len() as u32;
        for v in class.iter() {
            class_of[v.index()] = idx;
        }
        classes.push(class);
    }
    // Deterministic class order: ascending bit pattern.
    classes.sort_by_key(|c| c.bits());
    for (i, c) in classes.iter().enumerate() {
        for v in c.iter() {
            class_of[v.index()] = i as u32;
        }
    }

    // Class order: [u] <= [v] iff u /\ x <= v for some x in p. This is
    // representative-independent because p is meet-closed.
    let m = classes.len();
    let class_leq = |cu: Subset, cv: Subset| -> bool {
        let u = cu.iter().next().expect("classes are nonempty");
        let v = cv.iter().next().expect("classes are nonempty");
        p.members().iter().any(|x| lat.leq(lat.meet(u, x), v))
    };
    let mut leq = vec![false; m * m];
    for (i, cu) in classes.iter().enumerate() {
        for (j, cv) in classes.iter().enumerate() {
            leq[i * m + j] = class_leq(*cu, *cv);
        }
    }

    let names: Vec<String> = classes
        .iter()
        .map(|c| {
            let labels: Vec<&str> = c.iter().map(|e| lat.label(e)).collect();
            format!("{{{}}}", labels.join(","))
        })
        .collect();
    let q = Lattice::from_leq_named("", names, &leq).map_err(|e| match e {
        BuildError::NotALattice { a, b, kind } => QuotientError::QuotientOrderIllDefined {
            u: a,
            v: b,
            what: kind.to_string(),
        },
        BuildError::NotAntisymmetric(a, b) => QuotientError::QuotientOrderIllDefined {
            u: a,
            v: b,
            what: "antisymmetry".to_string(),
        },
        other => QuotientError::Build(other),
    })?;

    // The class formulas must hold: [u] \/ [v] = [u \/ v] and dually.
    for u in lat.elems() {
        for v in lat.elems() {
            let cu = Elem::new(class_of[u.index()] as usize);
            let cv = Elem::new(class_of[v.index()] as usize);
            let join_ok = q.join(cu, cv).index() == class_of[lat.join(u, v).index()] as usize;
            let meet_ok = q.meet(cu, cv).index() == class_of[lat.meet(u, v).index()] as usize;
            if !join_ok || !meet_ok {
                return Err(QuotientError::QuotientOrderIllDefined {
                    u: lat.label(u).to_string(),
                    v: lat.label(v).to_string(),
                    what: if join_ok { "the meet formula" } else { "the join formula" }.to_string(),
                });
            }
        }
    }

    let out = QuotientLattice {
        base: lat.clone(),
        modulus: *p,
        classes,
        quotient: q,
        class_of,
    };
    // The class of any modulus member is the quotient top.
    debug_assert!(p
        .members()
        .iter()
        .all(|u| out.class_of(u) == out.quotient.top()));
    Ok(out)
}

impl QuotientLattice {
    pub fn base(&self) -> &Lattice {
        &self.base
    }

    pub fn modulus(&self) -> &FilterSet {
        &self.modulus
    }

    pub fn lattice(&self) -> &Lattice {
        &self.quotient
    }

    pub fn classes(&self) -> &[Subset] {
        &self.classes
    }

    pub fn class_of(&self, u: Elem) -> Elem {
        Elem::new(self.class_of[u.index()] as usize)
    }

    /// Image of a base subset in the quotient.
    pub fn project_subset(&self, s: Subset) -> Subset {
        s.iter().map(|e| self.class_of(e)).collect()
    }

    /// The natural projection as a validated homomorphism.
    pub fn projection(&self) -> LatticeHom {
        let map: Vec<usize> = self.class_of.iter().map(|&i| i as usize).collect();
        make_hom(&self.base, &self.quotient, &map)
            .expect("the class formulas make the projection a hom")
    }
}

/// Transport an S-filter through the quotient: the image of `q` must be an
/// image-of-S filter of the quotient lattice.
pub fn quotient_s_filter(
    qt: &QuotientLattice,
    s: &VeeClosedSet,
    q: &FilterSet,
) -> Result<FilterSet, QuotientError> {
    q.check(qt.base());
    s.check(qt.base());
    if !qt.base().is_complemented() {
        return Err(QuotientError::NotComplemented);
    }
    if !qt.modulus().members().is_subset_of(q.members()) {
        return Err(QuotientError::ModulusNotContained);
    }
    if !is_s_filter(qt.base(), s, q) {
        return Err(QuotientError::NotAnSFilter);
    }
    let img = qt.project_subset(q.members());
    let s_bar = qt.project_subset(s.members());
    debug_assert!(is_vee_closed(qt.lattice(), s_bar));
    let filter = FilterSet::new(qt.lattice(), img).map_err(|_| QuotientError::ImageNotSFilter)?;
    if !s_filter_predicate(qt.lattice(), s_bar, img) {
        return Err(QuotientError::ImageNotSFilter);
    }
    Ok(filter)
}
