//! Vee-closed sets, S-filters, saturation, and the derived notions
//! (characterizations, avoidance, extension, maximality, S-complete sets).

use thiserror::Error;

use crate::filter::{all_filters, is_filter, is_prime_filter, residual_elem, FilterSet};
use crate::lattice::{Elem, Lattice, LatticeToken};
use crate::subset::Subset;

/// A subset containing the bottom element and closed under join.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct VeeClosedSet {
    token: LatticeToken,
    members: Subset,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SFilterError {
    #[error("subset is not vee-closed")]
    NotVeeClosed,
    #[error("the filter meets S")]
    DisjointnessViolated,
    #[error("lattice is not distributive")]
    NonDistributive,
    #[error("saturation is not a filter")]
    SaturationNotFilter,
    #[error("input filter at position {0} is not an S-filter")]
    NotAllSFilters(usize),
    #[error("filter family is empty")]
    EmptyFamily,
    #[error("the given filter is not an S-filter")]
    NotAnSFilter,
    #[error("S is not contained in the candidate set")]
    SNotContained,
    #[error("the candidate set is not S-complete")]
    NotSComplete,
    #[error("no maximal filter disjoint from S is prime")]
    MaximalDisjointNotPrime,
    #[error("values belong to different lattices")]
    MixedLattices,
}

/// True iff the subset contains bottom and is closed under join.
pub fn is_vee_closed(lat: &Lattice, x: Subset) -> bool {
    if !x.contains(lat.bottom()) {
        return false;
    }
    for s in x.iter() {
        for t in x.iter() {
            if !x.contains(lat.join(s, t)) {
                return false;
            }
        }
    }
    true
}

impl VeeClosedSet {
    pub fn new(lat: &Lattice, members: Subset) -> Result<VeeClosedSet, SFilterError> {
        if is_vee_closed(lat, members) {
            Ok(VeeClosedSet {
                token: lat.token(),
                members,
            })
        } else {
            Err(SFilterError::NotVeeClosed)
        }
    }

    pub(crate) fn from_members_unchecked(lat: &Lattice, members: Subset) -> VeeClosedSet {
        debug_assert!(is_vee_closed(lat, members));
        VeeClosedSet {
            token: lat.token(),
            members,
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

    pub(crate) fn check(&self, lat: &Lattice) {
        assert_eq!(
            self.token,
            lat.token(),
            "vee-closed set used with a different lattice"
        );
    }

    pub fn labels<'a>(&self, lat: &'a Lattice) -> Vec<&'a str> {
        self.check(lat);
        self.members.iter().map(|e| lat.label(e)).collect()
    }
}

/// Every vee-closed subset of the lattice, in canonical (size, bit pattern)
/// order.
///
/// Enumeration walks elements along a linear extension, branching on
/// include/exclude and propagating join closure; closure can only force
/// elements later in the extension, so every closed set is reached exactly
/// once.
pub fn all_vee_closed_sets(lat: &Lattice) -> Vec<VeeClosedSet> {
    let mut masks = enumerate_vee_closed_masks(lat);
    masks.sort_by_key(|s| s.canonical_key());
    masks
        .into_iter()
        .map(|m| VeeClosedSet::from_members_unchecked(lat, m))
        .collect()
}

pub(crate) fn enumerate_vee_closed_masks(lat: &Lattice) -> Vec<Subset> {
    let order = lat.linear_extension();
    let n = lat.len();
    let mut out = Vec::new();
    let start = Subset::singleton(lat.bottom());

    // Join-closure of `set` extended with `new`, aborting on contact with
    // `forbidden`. Closure joins stay above the new element, hence later in
    // the extension than the current branch position.
    fn close(
        lat: &Lattice,
        mut set: Subset,
        new: Elem,
        forbidden: Subset,
    ) -> Option<Subset> {
        let mut queue = vec![new];
        set.insert(new);
        while let Some(x) = queue.pop() {
            for y in set.iter() {
                let j = lat.join(x, y);
                if !set.contains(j) {
                    if forbidden.contains(j) {
                        return None;
                    }
                    set.insert(j);
                    queue.push(j);
                }
            }
        }
        Some(set)
    }

    fn rec(
        lat: &Lattice,
        order: &[Elem],
        pos: usize,
        set: Subset,
        forbidden: Subset,
        out: &mut Vec<Subset>,
    ) {
        let Some(&e) = order.get(pos) else {
            out.push(set);
            return;
        };
        if set.contains(e) {
            rec(lat, order, pos + 1, set, forbidden, out);
            return;
        }
        // Exclude e.
        let mut f = forbidden;
        f.insert(e);
        rec(lat, order, pos + 1, set, f, out);
        // Include e, closing under joins.
        if let Some(closed) = close(lat, set, e, forbidden) {
            rec(lat, order, pos + 1, closed, forbidden, out);
        }
    }

    // The bottom element is first in any linear extension; it is always in.
    debug_assert_eq!(order[0], lat.bottom());
    rec(lat, &order, 1, start, Subset::EMPTY, &mut out);
    debug_assert!(out.len() <= 1 << (n - 1));
    out
}

/// The S-filter condition alone, on a raw subset in place of S: for all
/// u in s, v in the lattice, u \/ v in q implies v in q — plus properness
/// of q. Used both by [`is_s_filter`] and by homomorphism transport, where
/// the image of a vee-closed set need not contain the codomain bottom.
pub fn s_filter_predicate(lat: &Lattice, s: Subset, q: Subset) -> bool {
    if q.contains(lat.bottom()) {
        return false;
    }
    for u in s.iter() {
        for v in lat.elems() {
            if q.contains(lat.join(u, v)) && !q.contains(v) {
                return false;
            }
        }
    }
    true
}

/// True iff `q` is proper and u \/ v in q with u in S forces v in q.
pub fn is_s_filter(lat: &Lattice, s: &VeeClosedSet, q: &FilterSet) -> bool {
    s.check(lat);
    q.check(lat);
    s_filter_predicate(lat, s.members(), q.members())
}

/// All proper filters satisfying the S-filter condition, canonical order.
pub fn all_s_filters(lat: &Lattice, s: &VeeClosedSet) -> Vec<FilterSet> {
    all_filters(lat)
        .into_iter()
        .filter(|q| is_s_filter(lat, s, q))
        .collect()
}

/// The saturation { a | a \/ t in p for some t in S }, returned as a raw
/// subset: properness and filterness are the caller's concern, and on
/// non-distributive lattices the set can fail the filter axioms.
pub fn saturate(lat: &Lattice, s: &VeeClosedSet, p: &FilterSet) -> Subset {
    s.check(lat);
    p.check(lat);
    let mut out = Subset::EMPTY;
    for a in lat.elems() {
        if s.members().iter().any(|t| p.contains(lat.join(a, t))) {
            out.insert(a);
        }
    }
    out
}

/// The smallest S-filter containing `p`: the saturation, checked.
pub fn smallest_s_filter(
    lat: &Lattice,
    s: &VeeClosedSet,
    p: &FilterSet,
) -> Result<FilterSet, SFilterError> {
    s.check(lat);
    p.check(lat);
    if p.members().intersects(s.members()) {
        return Err(SFilterError::DisjointnessViolated);
    }
    if !lat.is_distributive() {
        return Err(SFilterError::NonDistributive);
    }
    let sat = saturate(lat, s, p);
    if !is_filter(lat, sat) {
        return Err(SFilterError::SaturationNotFilter);
    }
    let f = FilterSet::new(lat, sat).expect("just validated");
    debug_assert!(is_s_filter(lat, s, &f));
    debug_assert!(p.members().is_subset_of(sat));
    Ok(f)
}

/// Outcome of the two-filter characterization check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCharacterization {
    pub holds: bool,
    /// First failing pair (r, p) in ascending bit-pattern order, if any.
    pub witness: Option<(FilterSet, FilterSet)>,
}

/// For all filter pairs (r, p): r \/ p inside q and r meeting S force p
/// inside q.
pub fn check_pair_characterization(
    lat: &Lattice,
    s: &VeeClosedSet,
    q: &FilterSet,
) -> PairCharacterization {
    s.check(lat);
    q.check(lat);
    let mut filters = all_filters(lat);
    filters.sort_by_key(|f| f.members().bits());
    for r in &filters {
        if !r.members().intersects(s.members()) {
            continue;
        }
        for p in &filters {
            let join_set = crate::filter::filter_join(lat, r, p)
                .map(|f| f.members())
                .unwrap_or_else(|_| {
                    // Raw elementwise join set even if it fails the axioms.
                    let mut set = Subset::EMPTY;
                    for a in r.members().iter() {
                        for b in p.members().iter() {
                            set.insert(lat.join(a, b));
                        }
                    }
                    set
                });
            if join_set.is_subset_of(q.members()) && !p.members().is_subset_of(q.members()) {
                return PairCharacterization {
                    holds: false,
                    witness: Some((*r, *p)),
                };
            }
        }
    }
    PairCharacterization {
        holds: true,
        witness: None,
    }
}

/// The three characterizations of being an S-filter, each computed from its
/// definition.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct GhasemTriple {
    pub s_filter: bool,
    pub residuals_fixed: bool,
    pub saturation_fixed: bool,
}

impl GhasemTriple {
    pub fn all_equal(&self) -> bool {
        self.s_filter == self.residuals_fixed && self.residuals_fixed == self.saturation_fixed
    }
}

/// (is an S-filter, (q : t) = q for every t in S, saturation of q equals q).
pub fn check_ghasem_equivalences(lat: &Lattice, s: &VeeClosedSet, q: &FilterSet) -> GhasemTriple {
    let s_filter = is_s_filter(lat, s, q);
    let residuals_fixed = s
        .members()
        .iter()
        .all(|t| residual_elem(lat, q, t) == q.members());
    let saturation_fixed = saturate(lat, s, q) == q.members();
    GhasemTriple {
        s_filter,
        residuals_fixed,
        saturation_fixed,
    }
}

/// Which hypothesis of the avoidance statement failed first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnmetHypothesis {
    NotProper { position: usize },
    NotCovering,
    Redundant { position: usize },
    FirstNotSFilter,
    TailMeetsNothing { position: usize },
}

/// Verdict of one avoidance instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AvoidanceVerdict {
    HypothesisUnmet(UnmetHypothesis),
    Holds,
    Violated,
}

/// Check the avoidance statement on an ordered family: if p is covered by
/// the q_i irredundantly, q_1 satisfies the S-filter condition and every
/// later q_i meets S, then p must lie inside q_1.
pub fn prime_avoidance_check(
    lat: &Lattice,
    s: &VeeClosedSet,
    p: &FilterSet,
    qs: &[FilterSet],
) -> Result<AvoidanceVerdict, SFilterError> {
    s.check(lat);
    p.check(lat);
    if qs.is_empty() {
        return Err(SFilterError::EmptyFamily);
    }
    for q in qs {
        q.check(lat);
    }
    if !p.is_proper(lat) {
        return Ok(AvoidanceVerdict::HypothesisUnmet(
            UnmetHypothesis::NotProper { position: 0 },
        ));
    }
    for (i, q) in qs.iter().enumerate() {
        if !q.is_proper(lat) {
            return Ok(AvoidanceVerdict::HypothesisUnmet(
                UnmetHypothesis::NotProper { position: i + 1 },
            ));
        }
    }
    let union = qs
        .iter()
        .fold(Subset::EMPTY, |acc, q| acc.union(q.members()));
    if !p.members().is_subset_of(union) {
        return Ok(AvoidanceVerdict::HypothesisUnmet(UnmetHypothesis::NotCovering));
    }
    for drop in 0..qs.len() {
        let rest = qs
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != drop)
            .fold(Subset::EMPTY, |acc, (_, q)| acc.union(q.members()));
        if p.members().is_subset_of(rest) {
            return Ok(AvoidanceVerdict::HypothesisUnmet(
                UnmetHypothesis::Redundant { position: drop },
            ));
        }
    }
    if !is_s_filter(lat, s, &qs[0]) {
        return Ok(AvoidanceVerdict::HypothesisUnmet(
            UnmetHypothesis::FirstNotSFilter,
        ));
    }
    for (i, q) in qs.iter().enumerate().skip(1) {
        if !q.members().intersects(s.members()) {
            return Ok(AvoidanceVerdict::HypothesisUnmet(
                UnmetHypothesis::TailMeetsNothing { position: i },
            ));
        }
    }
    if p.members().is_subset_of(qs[0].members()) {
        Ok(AvoidanceVerdict::Holds)
    } else {
        Ok(AvoidanceVerdict::Violated)
    }
}

/// Intersection of a nonempty family of S-filters, itself an S-filter.
pub fn intersect_s_filters(
    lat: &Lattice,
    s: &VeeClosedSet,
    qs: &[FilterSet],
) -> Result<FilterSet, SFilterError> {
    if qs.is_empty() {
        return Err(SFilterError::EmptyFamily);
    }
    for (i, q) in qs.iter().enumerate() {
        if !is_s_filter(lat, s, q) {
            return Err(SFilterError::NotAllSFilters(i));
        }
    }
    let inter = qs
        .iter()
        .fold(lat.full_set(), |acc, q| acc.inter(q.members()));
    let f = FilterSet::new(lat, inter).expect("intersection of filters is a filter");
    debug_assert!(is_s_filter(lat, s, &f));
    Ok(f)
}

/// Extend `f` to a prime S-filter: exhaustive maximality search in place of
/// a maximal-element argument. Candidates are the filters containing `f`
/// and disjoint from S; among the inclusion-maximal ones, the first in
/// canonical order that verifies prime is returned.
pub fn find_prime_s_filter_containing(
    lat: &Lattice,
    s: &VeeClosedSet,
    f: &FilterSet,
) -> Result<FilterSet, SFilterError> {
    s.check(lat);
    f.check(lat);
    if f.members().intersects(s.members()) {
        return Err(SFilterError::DisjointnessViolated);
    }
    let candidates: Vec<FilterSet> = all_filters(lat)
        .into_iter()
        .filter(|q| {
            f.members().is_subset_of(q.members()) && !q.members().intersects(s.members())
        })
        .collect();
    let mut maximal: Vec<FilterSet> = candidates
        .iter()
        .filter(|q| {
            candidates
                .iter()
                .all(|h| h.members() == q.members() || !q.members().is_subset_of(h.members()))
        })
        .copied()
        .collect();
    maximal.sort_by_key(|q| q.members().canonical_key());
    for q in &maximal {
        if is_prime_filter(lat, q) {
            debug_assert!(is_s_filter(lat, s, q));
            return Ok(*q);
        }
    }
    Err(SFilterError::MaximalDisjointNotPrime)
}

/// Inclusion-maximal members of the S-filters, canonical order.
pub fn maximal_s_filters(lat: &Lattice, s: &VeeClosedSet) -> Vec<FilterSet> {
    let sf = all_s_filters(lat, s);
    let mut out: Vec<FilterSet> = sf
        .iter()
        .filter(|q| {
            sf.iter()
                .all(|h| h.members() == q.members() || !q.members().is_subset_of(h.members()))
        })
        .copied()
        .collect();
    out.sort_by_key(|q| q.members().canonical_key());
    out
}

/// True iff every prime filter minimal over the S-filter `q` is itself an
/// S-filter.
pub fn check_min_primes_s(
    lat: &Lattice,
    s: &VeeClosedSet,
    q: &FilterSet,
) -> Result<bool, SFilterError> {
    if !is_s_filter(lat, s, q) {
        return Err(SFilterError::NotAnSFilter);
    }
    let mins = crate::filter::min_primes_over(lat, q).expect("S-filters are proper");
    Ok(mins.iter().all(|p| is_s_filter(lat, s, p)))
}

/// S-vee-closed: `sp` holds a nonzero element of S, and t \/ t' stays in
/// `sp` for t in S and t' in `sp`.
pub fn is_s_vee_closed(lat: &Lattice, s: &VeeClosedSet, sp: Subset) -> bool {
    s.check(lat);
    is_s_vee_closed_raw(lat, s.members(), sp)
}

pub(crate) fn is_s_vee_closed_raw(lat: &Lattice, s: Subset, sp: Subset) -> bool {
    let nonzero = s.inter(sp).iter().any(|t| t != lat.bottom());
    if !nonzero {
        return false;
    }
    for t in s.inter(sp).iter() {
        for tp in sp.iter() {
            if !sp.contains(lat.join(t, tp)) {
                return false;
            }
        }
    }
    true
}

/// S-complete: S-vee-closed, and joins can only land in `sp` when both
/// operands are already there.
pub fn is_s_complete(lat: &Lattice, s: &VeeClosedSet, sp: Subset) -> bool {
    s.check(lat);
    is_s_complete_raw(lat, s.members(), sp)
}

pub(crate) fn is_s_complete_raw(lat: &Lattice, s: Subset, sp: Subset) -> bool {
    if !is_s_vee_closed_raw(lat, s, sp) {
        return false;
    }
    for x in lat.elems() {
        for y in lat.elems() {
            if sp.contains(lat.join(x, y)) && !(sp.contains(x) && sp.contains(y)) {
                return false;
            }
        }
    }
    true
}

/// Decompose an S-complete set containing S as the complement of a union of
/// S-filters: returns the family of all S-filters disjoint from `sp`.
pub fn s_complete_decomposition(
    lat: &Lattice,
    s: &VeeClosedSet,
    sp: Subset,
) -> Result<Vec<FilterSet>, SFilterError> {
    s.check(lat);
    if !s.members().is_subset_of(sp) {
        return Err(SFilterError::SNotContained);
    }
    if !is_s_complete(lat, s, sp) {
        return Err(SFilterError::NotSComplete);
    }
    Ok(all_s_filters(lat, s)
        .into_iter()
        .filter(|q| !q.members().intersects(sp))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{boolean, chain, named};

    fn ex5() -> Lattice {
        named("ex5").unwrap()
    }

    fn by_labels(lat: &Lattice, labels: &[&str]) -> Subset {
        labels.iter().map(|l| lat.elem_by_label(l).unwrap()).collect()
    }

    fn filter(lat: &Lattice, labels: &[&str]) -> FilterSet {
        FilterSet::new(lat, by_labels(lat, labels)).unwrap()
    }

    fn vee(lat: &Lattice, labels: &[&str]) -> VeeClosedSet {
        VeeClosedSet::new(lat, by_labels(lat, labels)).unwrap()
    }

    /// Oracle: scan all subsets for the vee-closed property.
    fn brute_force_vee_closed(lat: &Lattice) -> Vec<Subset> {
        let mut out = Vec::new();
        for bits in 0..(1u64 << lat.len()) {
            let s = Subset::from_bits(bits);
            if is_vee_closed(lat, s) {
                out.push(s);
            }
        }
        out.sort_by_key(|s| s.canonical_key());
        out
    }

    #[test]
    fn vee_closed_examples() {
        let l = ex5();
        assert!(is_vee_closed(&l, by_labels(&l, &["0", "u"])));
        assert!(!is_vee_closed(&l, by_labels(&l, &["u"])));
        assert!(!is_vee_closed(&l, by_labels(&l, &["0", "u", "v"])));
    }

    #[test]
    fn enumeration_matches_brute_force_oracle() {
        for l in [
            ex5(),
            named("m3").unwrap(),
            named("n5").unwrap(),
            boolean(3).unwrap(),
            chain(6).unwrap(),
            crate::generate::divisor_lattice(60).unwrap(),
        ] {
            let fast: Vec<Subset> = all_vee_closed_sets(&l).iter().map(|v| v.members()).collect();
            assert_eq!(fast, brute_force_vee_closed(&l), "lattice {}", l.name());
        }
    }

    #[test]
    fn vee_closed_counts() {
        assert_eq!(all_vee_closed_sets(&ex5()).len(), 14);
        assert_eq!(all_vee_closed_sets(&chain(2).unwrap()).len(), 2);
        assert_eq!(all_vee_closed_sets(&chain(1).unwrap()).len(), 1);
    }

    #[test]
    fn golden_s_filter_example() {
        let l = ex5();
        let s = vee(&l, &["0", "u"]);
        let q1 = filter(&l, &["v", "w", "1"]);
        let q2 = filter(&l, &["w", "1"]);
        let q3 = filter(&l, &["u", "w", "1"]);
        assert!(is_s_filter(&l, &s, &q1));
        assert!(!is_s_filter(&l, &s, &q2));
        assert!(!is_s_filter(&l, &s, &q3));
    }

    #[test]
    fn all_s_filters_examples() {
        let l = ex5();
        let s = vee(&l, &["0", "u"]);
        let sets: Vec<Subset> = all_s_filters(&l, &s).iter().map(|f| f.members()).collect();
        assert_eq!(
            sets,
            vec![by_labels(&l, &["1"]), by_labels(&l, &["v", "w", "1"])]
        );
        // Degenerate S = {0}: every proper filter qualifies.
        let s0 = vee(&l, &["0"]);
        assert_eq!(all_s_filters(&l, &s0).len(), 4);
        // S meeting the top leaves nothing.
        let sw = vee(&l, &["0", "u", "w", "1"]);
        assert!(all_s_filters(&l, &sw).is_empty());
    }

    #[test]
    fn saturate_examples() {
        let l = ex5();
        let s = vee(&l, &["0", "u"]);
        let p = filter(&l, &["w", "1"]);
        assert_eq!(saturate(&l, &s, &p), by_labels(&l, &["v", "w", "1"]));
        let s0 = vee(&l, &["0"]);
        for p in all_filters(&l) {
            assert_eq!(saturate(&l, &s0, &p), p.members());
        }
        // Non-distributive failure: on the diamond the saturation of {1}
        // by {0,a} is {b,c,1}, which is not meet-closed.
        let m3 = named("m3").unwrap();
        let s = vee(&m3, &["0", "a"]);
        let p = filter(&m3, &["1"]);
        let sat = saturate(&m3, &s, &p);
        assert_eq!(sat, by_labels(&m3, &["b", "c", "1"]));
        assert!(!is_filter(&m3, sat));
    }

    #[test]
    fn smallest_s_filter_examples() {
        let l = ex5();
        let s = vee(&l, &["0", "u"]);
        let p = filter(&l, &["w", "1"]);
        let smallest = smallest_s_filter(&l, &s, &p).unwrap();
        assert_eq!(smallest.members(), by_labels(&l, &["v", "w", "1"]));
        // Minimality against the full S-filter list.
        for q in all_s_filters(&l, &s) {
            if p.members().is_subset_of(q.members()) {
                assert!(smallest.members().is_subset_of(q.members()));
            }
        }
        // A filter that is already an S-filter saturates to itself.
        let q1 = filter(&l, &["v", "w", "1"]);
        assert_eq!(smallest_s_filter(&l, &s, &q1).unwrap().members(), q1.members());
        // Disjointness is required.
        let p_u = filter(&l, &["u", "w", "1"]);
        assert!(matches!(
            smallest_s_filter(&l, &s, &p_u),
            Err(SFilterError::DisjointnessViolated)
        ));
        // Distributivity is required.
        let m3 = named("m3").unwrap();
        let s = vee(&m3, &["0", "a"]);
        let p = filter(&m3, &["1"]);
        assert!(matches!(
            smallest_s_filter(&m3, &s, &p),
            Err(SFilterError::NonDistributive)
        ));
    }

    #[test]
    fn pair_characterization_examples() {
        let l = ex5();
        let s = vee(&l, &["0", "u"]);
        let q1 = filter(&l, &["v", "w", "1"]);
        assert!(check_pair_characterization(&l, &s, &q1).holds);
        let q2 = filter(&l, &["w", "1"]);
        let res = check_pair_characterization(&l, &s, &q2);
        assert!(!res.holds);
        let (r, p) = res.witness.unwrap();
        assert_eq!(r.members(), by_labels(&l, &["u", "w", "1"]));
        assert_eq!(p.members(), by_labels(&l, &["v", "w", "1"]));
        // S = {0}: the condition degenerates to truth on proper filters.
        let s0 = vee(&l, &["0"]);
        for q in all_filters(&l) {
            if q.is_proper(&l) {
                assert!(check_pair_characterization(&l, &s0, &q).holds);
            }
        }
    }

    #[test]
    fn pair_characterization_agrees_with_s_filter() {
        for l in [ex5(), boolean(2).unwrap(), chain(4).unwrap()] {
            for s in all_vee_closed_sets(&l) {
                for q in all_filters(&l) {
                    if q.is_proper(&l) {
                        assert_eq!(
                            check_pair_characterization(&l, &s, &q).holds,
                            is_s_filter(&l, &s, &q)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn ghasem_examples() {
        let l = ex5();
        let s = vee(&l, &["0", "u"]);
        let q1 = filter(&l, &["v", "w", "1"]);
        let t1 = check_ghasem_equivalences(&l, &s, &q1);
        assert_eq!(
            (t1.s_filter, t1.residuals_fixed, t1.saturation_fixed),
            (true, true, true)
        );
        let q2 = filter(&l, &["w", "1"]);
        let t2 = check_ghasem_equivalences(&l, &s, &q2);
        assert_eq!(
            (t2.s_filter, t2.residuals_fixed, t2.saturation_fixed),
            (false, false, false)
        );
        let s0 = vee(&l, &["0"]);
        for q in all_filters(&l) {
            if q.is_proper(&l) {
                let t = check_ghasem_equivalences(&l, &s0, &q);
                assert!(t.s_filter && t.residuals_fixed && t.saturation_fixed);
            }
        }
    }

    #[test]
    fn avoidance_examples() {
        let l = ex5();
        let s = vee(&l, &["0", "u"]);
        let q1 = filter(&l, &["v", "w", "1"]);
        let p = filter(&l, &["1"]);
        assert_eq!(
            prime_avoidance_check(&l, &s, &p, &[q1]).unwrap(),
            AvoidanceVerdict::Holds
        );
        // Tail member disjoint from S.
        let q2 = filter(&l, &["w", "1"]);
        let verdict = prime_avoidance_check(&l, &s, &filter(&l, &["w", "1"]), &[q1, q2]).unwrap();
        assert!(matches!(verdict, AvoidanceVerdict::HypothesisUnmet(_)));
        assert!(matches!(
            prime_avoidance_check(&l, &s, &p, &[]),
            Err(SFilterError::EmptyFamily)
        ));
        // Exhaustive n = 2 scan: the hypotheses are never jointly
        // satisfiable, because the cover forces p inside a single member.
        let proper: Vec<FilterSet> = all_filters(&l)
            .into_iter()
            .filter(|f| f.is_proper(&l))
            .collect();
        for s in all_vee_closed_sets(&l) {
            for p in &proper {
                for qa in &proper {
                    for qb in &proper {
                        let v = prime_avoidance_check(&l, &s, p, &[*qa, *qb]).unwrap();
                        assert!(matches!(v, AvoidanceVerdict::HypothesisUnmet(_)));
                    }
                }
            }
        }
    }

    #[test]
    fn intersection_examples() {
        let l = ex5();
        let s = vee(&l, &["0", "u"]);
        let q1 = filter(&l, &["v", "w", "1"]);
        let top = filter(&l, &["1"]);
        let inter = intersect_s_filters(&l, &s, &[q1, top]).unwrap();
        assert_eq!(inter.members(), top.members());
        assert!(is_s_filter(&l, &s, &inter));
        let single = intersect_s_filters(&l, &s, &[q1]).unwrap();
        assert_eq!(single.members(), q1.members());
        let not_s = filter(&l, &["w", "1"]);
        assert!(matches!(
            intersect_s_filters(&l, &s, &[q1, not_s]),
            Err(SFilterError::NotAllSFilters(1))
        ));
    }

    #[test]
    fn intersection_sweep_over_small_catalog() {
        for l in [ex5(), named("m3").unwrap(), named("n5").unwrap(), boolean(2).unwrap()] {
            for s in all_vee_closed_sets(&l) {
                let sf = all_s_filters(&l, &s);
                for a in &sf {
                    for b in &sf {
                        let i = intersect_s_filters(&l, &s, &[*a, *b]).unwrap();
                        assert!(is_s_filter(&l, &s, &i));
                    }
                }
            }
        }
    }

    #[test]
    fn prime_extension_examples() {
        let l = ex5();
        let s = vee(&l, &["0", "u"]);
        let f = filter(&l, &["w", "1"]);
        let q = find_prime_s_filter_containing(&l, &s, &f).unwrap();
        assert_eq!(q.members(), by_labels(&l, &["v", "w", "1"]));
        // {top} extends whenever it is disjoint: some prime above it.
        let top = filter(&l, &["1"]);
        let q = find_prime_s_filter_containing(&l, &s, &top).unwrap();
        assert!(is_prime_filter(&l, &q));
        assert!(is_s_filter(&l, &s, &q));
        let f_u = filter(&l, &["u", "w", "1"]);
        assert!(matches!(
            find_prime_s_filter_containing(&l, &s, &f_u),
            Err(SFilterError::DisjointnessViolated)
        ));
        // Without distributivity the maximal disjoint filters need not be
        // prime: the diamond has no prime filters at all.
        let m3 = named("m3").unwrap();
        let s0 = VeeClosedSet::new(&m3, Subset::singleton(m3.bottom())).unwrap();
        let top3 = FilterSet::new(&m3, Subset::singleton(m3.top())).unwrap();
        assert!(matches!(
            find_prime_s_filter_containing(&m3, &s0, &top3),
            Err(SFilterError::MaximalDisjointNotPrime)
        ));
    }

    #[test]
    fn maximal_s_filters_examples() {
        let l = ex5();
        let s = vee(&l, &["0", "u"]);
        let m: Vec<Subset> = maximal_s_filters(&l, &s).iter().map(|f| f.members()).collect();
        assert_eq!(m, vec![by_labels(&l, &["v", "w", "1"])]);
        let s0 = vee(&l, &["0"]);
        let m: Vec<Subset> = maximal_s_filters(&l, &s0).iter().map(|f| f.members()).collect();
        assert_eq!(
            m,
            vec![
                by_labels(&l, &["u", "w", "1"]),
                by_labels(&l, &["v", "w", "1"])
            ]
        );
        let s_top = vee(&l, &["0", "u", "w", "1"]);
        assert!(maximal_s_filters(&l, &s_top).is_empty());
    }

    #[test]
    fn min_primes_examples() {
        let l = ex5();
        let s = vee(&l, &["0", "u"]);
        let q1 = filter(&l, &["v", "w", "1"]);
        assert!(check_min_primes_s(&l, &s, &q1).unwrap());
        let top = filter(&l, &["1"]);
        assert!(check_min_primes_s(&l, &s, &top).unwrap());
        let q2 = filter(&l, &["w", "1"]);
        assert!(matches!(
            check_min_primes_s(&l, &s, &q2),
            Err(SFilterError::NotAnSFilter)
        ));
    }

    #[test]
    fn s_complete_examples() {
        let l = ex5();
        let s = vee(&l, &["0", "u"]);
        assert!(is_s_complete(&l, &s, by_labels(&l, &["0", "u"])));
        assert!(!is_s_complete(&l, &s, by_labels(&l, &["0", "u", "w"])));
        assert!(is_s_vee_closed(&l, &s, by_labels(&l, &["0", "u", "w"])));
        assert!(is_s_complete(&l, &s, l.full_set()));
        // S = {0} admits no S-vee-closed set at all.
        let s0 = vee(&l, &["0"]);
        for bits in 0..(1u64 << l.len()) {
            assert!(!is_s_vee_closed(&l, &s0, Subset::from_bits(bits)));
        }
    }

    #[test]
    fn s_complete_decomposition_examples() {
        let l = ex5();
        let s = vee(&l, &["0", "u"]);
        let sp = by_labels(&l, &["0", "u"]);
        let family = s_complete_decomposition(&l, &s, sp).unwrap();
        let union = family
            .iter()
            .fold(Subset::EMPTY, |acc, q| acc.union(q.members()));
        assert_eq!(union.complement(l.len()), sp);
        assert_eq!(family.len(), 2);
        // Full set: the family is empty, complement of nothing is everything.
        let family = s_complete_decomposition(&l, &s, l.full_set()).unwrap();
        assert!(family.is_empty());
        assert!(matches!(
            s_complete_decomposition(&l, &s, by_labels(&l, &["0", "u", "w"])),
            Err(SFilterError::NotSComplete)
        ));
        assert!(matches!(
            s_complete_decomposition(&l, &s, by_labels(&l, &["0"])),
            Err(SFilterError::SNotContained)
        ));
    }

    #[test]
    fn saturation_idempotent_on_distributive() {
        for l in [ex5(), boolean(3).unwrap(), chain(5).unwrap()] {
            for s in all_vee_closed_sets(&l) {
                for p in all_filters(&l) {
                    if p.is_proper(&l) && !p.members().intersects(s.members()) {
                        let once = saturate(&l, &s, &p);
                        let f = FilterSet::new(&l, once).unwrap();
                        assert_eq!(saturate(&l, &s, &f), once);
                    }
                }
            }
        }
    }
}
