//! Lattice homomorphisms and transport of filters along them.

use thiserror::Error;

use crate::filter::{is_filter, FilterSet};
use crate::lattice::{Elem, Lattice};
use crate::sfilter::{is_s_filter, s_filter_predicate, VeeClosedSet};
use crate::subset::Subset;

/// A total map between two lattices preserving meet and join. The lattices
/// are owned so a hom is self-contained.
#[derive(Clone, Debug)]
pub struct LatticeHom {
    domain: Lattice,
    codomain: Lattice,
    map: Vec<u32>,
    top_preserving: bool,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum HomError {
    #[error("map does not preserve {law} at pair ({a}, {b})")]
    NotAHom { a: String, b: String, law: Law },
    #[error("homomorphism does not map top to top")]
    NotTopPreserving,
    #[error("domain lattice is not complemented")]
    NotComplemented,
    #[error("homomorphism is not onto")]
    NotOnto,
    #[error("kernel is not contained in the given filter")]
    KernelNotContained,
    #[error("the given filter is not an S-filter of the domain")]
    NotAnSFilter,
    #[error("image of the filter fails the image-side S-filter condition")]
    ImageNotSFilter,
    #[error("map length does not match the domain size")]
    ArityMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Law {
    Meet,
    Join,
}

impl std::fmt::Display for Law {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Law::Meet => write!(f, "meet"),
            Law::Join => write!(f, "join"),
        }
    }
}

/// Validate `map` (domain index -> codomain index) as a lattice
/// homomorphism.
pub fn make_hom(domain: &Lattice, codomain: &Lattice, map: &[usize]) -> Result<LatticeHom, HomError> {
    if map.len() != domain.len() {
        return Err(HomError::ArityMismatch);
    }
    for &i in map {
        if i >= codomain.len() {
            return Err(HomError::ArityMismatch);
        }
    }
    let f = |e: Elem| Elem::new(map[e.index()]);
    for a in domain.elems() {
        for b in domain.elems() {
            if f(domain.meet(a, b)) != codomain.meet(f(a), f(b)) {
                return Err(HomError::NotAHom {
                    a: domain.label(a).to_string(),
                    b: domain.label(b).to_string(),
                    law: Law::Meet,
                });
            }
            if f(domain.join(a, b)) != codomain.join(f(a), f(b)) {
                return Err(HomError::NotAHom {
                    a: domain.label(a).to_string(),
                    b: domain.label(b).to_string(),
                    law: Law::Join,
                });
            }
        }
    }
    let top_preserving = f(domain.top()) == codomain.top();
    Ok(LatticeHom {
        domain: domain.clone(),
        codomain: codomain.clone(),
        map: map.iter().map(|&i| i as u32).collect(),
        top_preserving,
    })
}

impl LatticeHom {
    pub fn domain(&self) -> &Lattice {
        &self.domain
    }

    pub fn codomain(&self) -> &Lattice {
        &self.codomain
    }

    pub fn apply(&self, e: Elem) -> Elem {
        Elem::new(self.map[e.index()] as usize)
    }

    pub fn is_top_preserving(&self) -> bool {
        self.top_preserving
    }

    pub fn is_onto(&self) -> bool {
        let image: Subset = self.domain.elems().map(|e| self.apply(e)).collect();
        image == self.codomain.full_set()
    }

    /// Image of a domain subset.
    pub fn image(&self, s: Subset) -> Subset {
        s.iter().map(|e| self.apply(e)).collect()
    }

    /// Preimage of a codomain subset.
    pub fn preimage(&self, s: Subset) -> Subset {
        self.domain.elems().filter(|&e| s.contains(self.apply(e))).collect()
    }
}

/// Ker = preimage of the top; a filter whenever the hom preserves top.
pub fn kernel(hom: &LatticeHom) -> Result<FilterSet, HomError> {
    if !hom.is_top_preserving() {
        return Err(HomError::NotTopPreserving);
    }
    let ker = hom.preimage(Subset::singleton(hom.codomain.top()));
    Ok(FilterSet::new(hom.domain(), ker).expect("kernel of a top-preserving hom is a filter"))
}

/// Preimage of a codomain filter; always a filter when top is preserved.
pub fn preimage_filter(hom: &LatticeHom, q2: &FilterSet) -> Result<FilterSet, HomError> {
    if !hom.is_top_preserving() {
        return Err(HomError::NotTopPreserving);
    }
    q2.check(hom.codomain());
    let pre = hom.preimage(q2.members());
    Ok(FilterSet::new(hom.domain(), pre).expect("preimage of a filter under a hom is a filter"))
}

/// Image of an S-filter through an onto hom with complemented domain and
/// kernel inside the filter; checked to satisfy the image-side condition
/// against the image of S.
pub fn image_filter(
    hom: &LatticeHom,
    q1: &FilterSet,
    s: &VeeClosedSet,
) -> Result<FilterSet, HomError> {
    q1.check(hom.domain());
    s.check(hom.domain());
    if !hom.is_top_preserving() {
        return Err(HomError::NotTopPreserving);
    }
    if !hom.domain().is_complemented() {
        return Err(HomError::NotComplemented);
    }
    if !hom.is_onto() {
        return Err(HomError::NotOnto);
    }
    let ker = kernel(hom)?;
    if !ker.members().is_subset_of(q1.members()) {
        return Err(HomError::KernelNotContained);
    }
    if !is_s_filter(hom.domain(), s, q1) {
        return Err(HomError::NotAnSFilter);
    }
    let img = hom.image(q1.members());
    let s_img = hom.image(s.members());
    if !is_filter(hom.codomain(), img) || !s_filter_predicate(hom.codomain(), s_img, img) {
        return Err(HomError::ImageNotSFilter);
    }
    Ok(FilterSet::new(hom.codomain(), img).expect("just validated"))
}

/// All homomorphisms between two small lattices, by brute force over maps,
/// in lexicographic map order.
pub fn all_homs(domain: &Lattice, codomain: &Lattice) -> Vec<LatticeHom> {
    let n = domain.len();
    let m = codomain.len();
    let mut out = Vec::new();
    let mut map = vec![0usize; n];
    loop {
        if let Ok(h) = make_hom(domain, codomain, &map) {
            out.push(h);
        }
        // Next map in lexicographic order.
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            map[i] += 1;
            if map[i] < m {
                break;
            }
            map[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filter::all_filters;
    use crate::generate::{boolean, chain, named};

    fn b2_to_c2() -> (Lattice, Lattice, LatticeHom) {
        let b2 = boolean(2).unwrap();
        let c2 = chain(2).unwrap();
        // x maps to 1 iff x >= a, where a is the first atom.
        let a = b2.elem(1).unwrap();
        let map: Vec<usize> = b2
            .elems()
            .map(|x| if b2.leq(a, x) { 1 } else { 0 })
            .collect();
        let h = make_hom(&b2, &c2, &map).unwrap();
        (b2, c2, h)
    }

    #[test]
    fn identity_and_swap_are_homs() {
        let l = named("ex5").unwrap();
        let id: Vec<usize> = (0..l.len()).map(|i| i).collect();
        let h = make_hom(&l, &l, &id).unwrap();
        assert!(h.is_top_preserving());
        // Swapping the two atoms is an automorphism of ex5.
        let u = l.elem_by_label("u").unwrap().index();
        let v = l.elem_by_label("v").unwrap().index();
        let mut swap = id.clone();
        swap.swap(u, v);
        assert!(make_hom(&l, &l, &swap).is_ok());
        // Swapping an atom with the coatom is not.
        let w = l.elem_by_label("w").unwrap().index();
        let mut bad = id;
        bad.swap(u, w);
        assert!(matches!(make_hom(&l, &l, &bad), Err(HomError::NotAHom { .. })));
    }

    #[test]
    fn kernel_examples() {
        let (b2, _c2, h) = b2_to_c2();
        assert!(h.is_top_preserving());
        assert!(h.is_onto());
        let ker = kernel(&h).unwrap();
        let expected: Subset = [b2.elem(1).unwrap(), b2.top()].into_iter().collect();
        assert_eq!(ker.members(), expected);

        let l = named("ex5").unwrap();
        let id: Vec<usize> = (0..l.len()).collect();
        let h = make_hom(&l, &l, &id).unwrap();
        assert_eq!(kernel(&h).unwrap().members(), Subset::singleton(l.top()));
        // Constant-top map: improper kernel.
        let top = l.top().index();
        let h = make_hom(&l, &l, &vec![top; l.len()]).unwrap();
        assert_eq!(kernel(&h).unwrap().members(), l.full_set());
    }

    #[test]
    fn preimage_examples() {
        let (b2, c2, h) = b2_to_c2();
        let q2 = FilterSet::new(&c2, Subset::singleton(c2.top())).unwrap();
        let pre = preimage_filter(&h, &q2).unwrap();
        let expected: Subset = [b2.elem(1).unwrap(), b2.top()].into_iter().collect();
        assert_eq!(pre.members(), expected);
        // With S = {0, b} in the square, the image of S in the chain is
        // {0}, q2 is a {0}-filter, and the preimage is an S-filter.
        let b = b2.elem(2).unwrap();
        let s = VeeClosedSet::new(&b2, [b2.bottom(), b].into_iter().collect()).unwrap();
        let s_img = h.image(s.members());
        assert!(s_filter_predicate(&c2, s_img, q2.members()));
        assert!(is_s_filter(&b2, &s, &pre));
    }

    #[test]
    fn image_examples() {
        let (b2, c2, h) = b2_to_c2();
        let a = b2.elem(1).unwrap();
        let b = b2.elem(2).unwrap();
        let q1 = FilterSet::new(&b2, [a, b2.top()].into_iter().collect()).unwrap();
        let s = VeeClosedSet::new(&b2, [b2.bottom(), b].into_iter().collect()).unwrap();
        let img = image_filter(&h, &q1, &s).unwrap();
        assert_eq!(img.members(), Subset::singleton(c2.top()));

        // Identity on a complemented lattice returns the filter itself.
        let id: Vec<usize> = (0..b2.len()).collect();
        let idh = make_hom(&b2, &b2, &id).unwrap();
        assert_eq!(image_filter(&idh, &q1, &s).unwrap().members(), q1.members());

        // ex5 is not complemented.
        let l = named("ex5").unwrap();
        let id: Vec<usize> = (0..l.len()).collect();
        let h5 = make_hom(&l, &l, &id).unwrap();
        let q = FilterSet::new(&l, Subset::singleton(l.top())).unwrap();
        let s5 = VeeClosedSet::new(&l, Subset::singleton(l.bottom())).unwrap();
        assert!(matches!(
            image_filter(&h5, &q, &s5),
            Err(HomError::NotComplemented)
        ));
    }

    #[test]
    fn brute_force_homs_are_homs_and_include_constants() {
        let c2 = chain(2).unwrap();
        let b2 = boolean(2).unwrap();
        let homs = all_homs(&b2, &c2);
        assert!(!homs.is_empty());
        for h in &homs {
            for a in b2.elems() {
                for b in b2.elems() {
                    assert_eq!(h.apply(b2.meet(a, b)), c2.meet(h.apply(a), h.apply(b)));
                    assert_eq!(h.apply(b2.join(a, b)), c2.join(h.apply(a), h.apply(b)));
                }
            }
        }
        // Constant maps are homs; at least the two constants are present.
        assert!(homs.iter().any(|h| b2.elems().all(|e| h.apply(e) == c2.top())));
        assert!(homs.iter().any(|h| b2.elems().all(|e| h.apply(e) == c2.bottom())));
    }

    #[test]
    fn preimage_transport_sweep_small() {
        // Over every hom between small fixtures: whenever q2 satisfies the
        // image-S condition, the preimage is an S-filter.
        let doms = [boolean(2).unwrap(), chain(3).unwrap()];
        let cods = [chain(2).unwrap(), boolean(2).unwrap()];
        for d in &doms {
            for c in &cods {
                for h in all_homs(d, c) {
                    if !h.is_top_preserving() {
                        continue;
                    }
                    for s in crate::sfilter::all_vee_closed_sets(d) {
                        let s_img = h.image(s.members());
                        for q2 in all_filters(c) {
                            if !q2.is_proper(c) {
                                continue;
                            }
                            if s_filter_predicate(c, s_img, q2.members()) {
                                let pre = preimage_filter(&h, &q2).unwrap();
                                assert!(is_s_filter(d, &s, &pre));
                            }
                        }
                    }
                }
            }
        }
    }
}
