//! Filters of a finite bounded lattice.
//!
//! A filter is a nonempty, meet-closed, upward-closed subset. In a finite
//! lattice every filter is the up-set of its minimum, which makes
//! enumeration and containment tests cheap; the subset-scan characterization
//! is kept as a test oracle.

use thiserror::Error;

use crate::lattice::{Elem, Lattice, LatticeToken};
use crate::subset::Subset;

/// A validated filter of one lattice. The improper filter (the whole
/// lattice) is representable; operations that need properness say so.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct FilterSet {
    token: LatticeToken,
    members: Subset,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum FilterError {
    #[error("subset is not a filter")]
    NotAFilter,
    #[error("generator set is empty")]
    EmptyGeneratorSet,
    #[error("filters belong to different lattices")]
    MixedLattices,
    #[error("filter is improper")]
    ImproperFilter,
    #[error("elementwise join of the two filters is not a filter (witness element index {witness})")]
    NotAFilterResult { witness: usize },
}

/// True iff `x` is nonempty, meet-closed and upward closed.
pub fn is_filter(lat: &Lattice, x: Subset) -> bool {
    if x.is_empty() {
        return false;
    }
    for a in x.iter() {
        if !lat.upset(a).is_subset_of(x) {
            return false;
        }
        for b in x.iter() {
            if !x.contains(lat.meet(a, b)) {
                return false;
            }
        }
    }
    true
}

impl FilterSet {
    /// Validate a subset as a filter.
    pub fn new(lat: &Lattice, members: Subset) -> Result<FilterSet, FilterError> {
        if is_filter(lat, members) {
            Ok(FilterSet {
                token: lat.token(),
                members,
            })
        } else {
            Err(FilterError::NotAFilter)
        }
    }

    pub(crate) fn from_upset(lat: &Lattice, generator: Elem) -> FilterSet {
        FilterSet {
            token: lat.token(),
            members: lat.upset(generator),
        }
    }

    pub fn members(&self) -> Subset {
        self.members
    }

    pub fn token(&self) -> LatticeToken {
        self.token
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.members.contains(e)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false // filters are nonempty by construction
    }

    /// Proper means the bottom element (equivalently, not every element) is
    /// absent.
    pub fn is_proper(&self, lat: &Lattice) -> bool {
        self.check(lat);
        !self.members.contains(lat.bottom())
    }

    /// The minimum element; a finite filter is its up-set.
    pub fn generator(&self, lat: &Lattice) -> Elem {
        self.check(lat);
        lat.meet_all(self.members).expect("filters are nonempty")
    }

    pub fn is_subset_of(&self, other: &FilterSet) -> bool {
        self.members.is_subset_of(other.members)
    }

    pub(crate) fn check(&self, lat: &Lattice) {
        assert_eq!(
            self.token,
            lat.token(),
            "filter used with a different lattice"
        );
    }

    /// Member labels in lattice index order.
    pub fn labels<'a>(&self, lat: &'a Lattice) -> Vec<&'a str> {
        self.check(lat);
        self.members.iter().map(|e| lat.label(e)).collect()
    }
}

/// The least filter containing a nonempty generating set: all elements above
/// some finite meet of generators, which in a finite lattice is the up-set
/// of the meet of all of them.
pub fn generate_filter(lat: &Lattice, x: Subset) -> Result<FilterSet, FilterError> {
    let m = lat.meet_all(x).ok_or(FilterError::EmptyGeneratorSet)?;
    Ok(FilterSet::from_upset(lat, m))
}

/// Every filter of the lattice, in canonical (size, bit pattern) order.
pub fn all_filters(lat: &Lattice) -> Vec<FilterSet> {
    let mut out: Vec<FilterSet> = lat.elems().map(|a| FilterSet::from_upset(lat, a)).collect();
    out.sort_by_key(|f| f.members.canonical_key());
    out
}

/// Prime: proper, and u \/ v in F forces u in F or v in F.
pub fn is_prime_filter(lat: &Lattice, f: &FilterSet) -> bool {
    f.check(lat);
    if !f.is_proper(lat) {
        return false;
    }
    for u in lat.elems() {
        if f.contains(u) {
            continue;
        }
        for v in lat.elems() {
            if !f.contains(v) && f.contains(lat.join(u, v)) {
                return false;
            }
        }
    }
    true
}

/// Maximal: proper, and the only strictly larger filter is the whole
/// lattice.
pub fn is_maximal_filter(lat: &Lattice, f: &FilterSet) -> bool {
    f.check(lat);
    if !f.is_proper(lat) {
        return false;
    }
    let full = lat.full_set();
    all_filters(lat).iter().all(|h| {
        let strictly_larger = f.members().is_subset_of(h.members()) && f.members() != h.members();
        !strictly_larger || h.members() == full
    })
}

/// Elementwise join { a \/ b | a in F, b in G }. The raw set is validated,
/// never silently repaired.
pub fn filter_join(lat: &Lattice, f: &FilterSet, g: &FilterSet) -> Result<FilterSet, FilterError> {
    f.check(lat);
    if f.token() != g.token() {
        return Err(FilterError::MixedLattices);
    }
    let mut set = Subset::EMPTY;
    for a in f.members().iter() {
        for b in g.members().iter() {
            set.insert(lat.join(a, b));
        }
    }
    if is_filter(lat, set) {
        Ok(FilterSet {
            token: lat.token(),
            members: set,
        })
    } else {
        let witness = set
            .iter()
            .find(|&a| !lat.upset(a).is_subset_of(set) || set.iter().any(|b| !set.contains(lat.meet(a, b))))
            .map(|e| e.index())
            .unwrap_or(0);
        Err(FilterError::NotAFilterResult { witness })
    }
}

/// Residual { x | x \/ w in q for every w in p }, returned raw: on
/// non-distributive lattices it can fail the filter axioms.
pub fn residual_filter(
    lat: &Lattice,
    q: &FilterSet,
    p: &FilterSet,
) -> Result<Subset, FilterError> {
    q.check(lat);
    if q.token() != p.token() {
        return Err(FilterError::MixedLattices);
    }
    let set = lat
        .elems()
        .filter(|&x| p.members().iter().all(|w| q.contains(lat.join(x, w))))
        .collect();
    Ok(set)
}

/// Residual by a single element: { x | x \/ t in q }, also raw.
pub fn residual_elem(lat: &Lattice, q: &FilterSet, t: Elem) -> Subset {
    q.check(lat);
    lat.elems().filter(|&x| q.contains(lat.join(x, t))).collect()
}

/// Prime filters containing `f` that are inclusion-minimal among those.
pub fn min_primes_over(lat: &Lattice, f: &FilterSet) -> Result<Vec<FilterSet>, FilterError> {
    f.check(lat);
    if !f.is_proper(lat) {
        return Err(FilterError::ImproperFilter);
    }
    let primes: Vec<FilterSet> = all_filters(lat)
        .into_iter()
        .filter(|p| f.members().is_subset_of(p.members()) && is_prime_filter(lat, p))
        .collect();
    let mut minimal: Vec<FilterSet> = primes
        .iter()
        .filter(|p| {
            primes
                .iter()
                .all(|q| q.members() == p.members() || !q.members().is_subset_of(p.members()))
        })
        .copied()
        .collect();
    minimal.sort_by_key(|f| f.members().canonical_key());
    Ok(minimal)
}
