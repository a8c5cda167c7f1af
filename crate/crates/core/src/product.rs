//! Cartesian products of lattices with componentwise order.

use thiserror::Error;

use crate::filter::FilterSet;
use crate::hom::{make_hom, LatticeHom};
use crate::lattice::{Elem, Lattice};
use crate::sfilter::{is_s_filter, s_filter_predicate, VeeClosedSet};
use crate::subset::{Subset, MAX_ELEMENTS};

#[derive(Clone, Debug)]
pub struct ProductLattice {
    factors: Vec<Lattice>,
    lattice: Lattice,
    /// Mixed-radix strides: index = sum_i tuple\[i\] * strides\[i\].
    strides: Vec<usize>,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ProductError {
    #[error("product of {0} elements exceeds the {MAX_ELEMENTS}-element limit")]
    TooLarge(usize),
    #[error("a product needs at least two factors")]
    TooFewFactors,
    #[error("argument lists have mismatched arity")]
    ArityMismatch,
    #[error("the biconditional failed: product side {product_side}, factor side {factor_side}")]
    BiconditionalViolated {
        product_side: bool,
        factor_side: bool,
    },
}

/// Componentwise product of at least two lattices. Labels are tuple-joined
/// factor labels.
pub fn product(factors: &[Lattice]) -> Result<ProductLattice, ProductError> {
    if factors.len() < 2 {
        return Err(ProductError::TooFewFactors);
    }
    let mut size = 1usize;
    for f in factors {
        size = size
            .checked_mul(f.len())
            .filter(|&s| s <= MAX_ELEMENTS)
            .ok_or(ProductError::TooLarge(usize::MAX))?;
    }
    if size > MAX_ELEMENTS {
        return Err(ProductError::TooLarge(size));
    }
    let t = factors.len();
    let mut strides = vec![0usize; t];
    let mut acc = 1usize;
    for i in (0..t).rev() {
        strides[i] = acc;
        acc *= factors[i].len();
    }
    let tuple_of = |index: usize| -> Vec<usize> {
        (0..t).map(|i| index / strides[i] % factors[i].len()).collect()
    };
    let names: Vec<String> = (0..size)
        .map(|idx| {
            let tuple = tuple_of(idx);
            let labels: Vec<&str> = tuple
                .iter()
                .enumerate()
                .map(|(i, &x)| factors[i].label(factors[i].elem(x).unwrap()))
                .collect();
            format!("({})", labels.join(","))
        })
        .collect();
    let mut leq = vec![false; size * size];
    for a in 0..size {
        let ta = tuple_of(a);
        for b in 0..size {
            let tb = tuple_of(b);
            leq[a * size + b] = (0..t).all(|i| {
                factors[i].leq(
                    factors[i].elem(ta[i]).unwrap(),
                    factors[i].elem(tb[i]).unwrap(),
                )
            });
        }
    }
    let lattice = Lattice::from_leq_named("product", names, &leq)
        .expect("componentwise order of lattices is a lattice");
    Ok(ProductLattice {
        factors: factors.to_vec(),
        lattice,
        strides,
    })
}

impl ProductLattice {
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn factors(&self) -> &[Lattice] {
        &self.factors
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn tuple_to_index(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.factors.len());
        tuple.iter().zip(&self.strides).map(|(x, s)| x * s).sum()
    }

    pub fn index_to_tuple(&self, index: usize) -> Vec<usize> {
        (0..self.factors.len())
            .map(|i| index / self.strides[i] % self.factors[i].len())
            .collect()
    }

    /// The i-th coordinate projection as a homomorphism.
    pub fn projection(&self, i: usize) -> LatticeHom {
        let map: Vec<usize> = (0..self.lattice.len())
            .map(|idx| self.index_to_tuple(idx)[i])
            .collect();
        make_hom(&self.lattice, &self.factors[i], &map)
            .expect("coordinate projections are homs")
    }

    /// Product of per-factor subsets, as a subset of the product lattice.
    pub fn subset_product(&self, parts: &[Subset]) -> Result<Subset, ProductError> {
        if parts.len() != self.factors.len() {
            return Err(ProductError::ArityMismatch);
        }
        let mut out = Subset::EMPTY;
        for idx in 0..self.lattice.len() {
            let tuple = self.index_to_tuple(idx);
            if tuple
                .iter()
                .enumerate()
                .all(|(i, &x)| parts[i].contains(Elem::new(x)))
            {
                out.insert(Elem::new(idx));
            }
        }
        Ok(out)
    }
}

/// Both sides of the product S-filter equivalence: the product filter
/// against the product vee-closed set, and the conjunction of the factor
/// conditions. The common value is returned; a mismatch is an error
/// carrying both sides.
pub fn product_s_filter_check(
    prod: &ProductLattice,
    ss: &[VeeClosedSet],
    qs: &[FilterSet],
) -> Result<bool, ProductError> {
    if ss.len() != prod.arity() || qs.len() != prod.arity() {
        return Err(ProductError::ArityMismatch);
    }
    let s_parts: Vec<Subset> = ss.iter().map(|s| s.members()).collect();
    let q_parts: Vec<Subset> = qs.iter().map(|q| q.members()).collect();
    let s_prod = prod.subset_product(&s_parts)?;
    let q_prod = prod.subset_product(&q_parts)?;
    let product_side = s_filter_predicate(prod.lattice(), s_prod, q_prod);
    let factor_side = (0..prod.arity()).all(|i| is_s_filter(&prod.factors()[i], &ss[i], &qs[i]));
    if product_side != factor_side {
        return Err(ProductError::BiconditionalViolated {
            product_side,
            factor_side,
        });
    }
    Ok(product_side)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filter::all_filters;
    use crate::generate::{boolean, chain, named};
    use crate::sfilter::all_vee_closed_sets;

    #[test]
    fn square_of_two_chains_is_boolean() {
        let c2 = chain(2).unwrap();
        let p = product(&[c2.clone(), c2.clone()]).unwrap();
        let b2 = boolean(2).unwrap();
        assert_eq!(p.lattice().len(), 4);
        assert!(p.lattice().is_complemented());
        assert!(p.lattice().is_distributive());
        // Componentwise tables match the Boolean square's.
        for a in 0..4 {
            for b in 0..4 {
                let pa = p.lattice().elem(a).unwrap();
                let pb = p.lattice().elem(b).unwrap();
                let ta = p.index_to_tuple(a);
                let tb = p.index_to_tuple(b);
                let expect_join: Vec<usize> = ta
                    .iter()
                    .zip(&tb)
                    .map(|(&x, &y)| {
                        c2.join(c2.elem(x).unwrap(), c2.elem(y).unwrap()).index()
                    })
                    .collect();
                assert_eq!(
                    p.index_to_tuple(p.lattice().join(pa, pb).index()),
                    expect_join
                );
            }
        }
        let _ = b2;
    }

    #[test]
    fn product_with_point_is_isomorphic_copy() {
        let l = named("ex5").unwrap();
        let pt = chain(1).unwrap();
        let p = product(&[l.clone(), pt]).unwrap();
        assert_eq!(p.lattice().len(), l.len());
        assert_eq!(p.lattice().is_distributive(), l.is_distributive());
    }

    #[test]
    fn grid_is_distributive() {
        let p = product(&[chain(2).unwrap(), chain(3).unwrap()]).unwrap();
        assert_eq!(p.lattice().len(), 6);
        assert!(p.lattice().is_distributive());
    }

    #[test]
    fn labels_are_tuples_and_projections_are_onto_homs() {
        let p = product(&[chain(2).unwrap(), chain(3).unwrap()]).unwrap();
        assert!(p.lattice().labels().contains(&"(0,2)".to_string()));
        for i in 0..2 {
            let proj = p.projection(i);
            assert!(proj.is_onto());
            assert!(proj.is_top_preserving());
        }
    }

    #[test]
    fn size_cap() {
        let b3 = boolean(3).unwrap();
        assert!(matches!(
            product(&[b3.clone(), b3.clone(), b3.clone()]),
            Err(ProductError::TooLarge(_))
        ));
        assert!(matches!(
            product(&[b3.clone()]),
            Err(ProductError::TooFewFactors)
        ));
    }

    #[test]
    fn s_filter_check_examples() {
        let c2 = chain(2).unwrap();
        let p = product(&[c2.clone(), c2.clone()]).unwrap();
        let bot = Subset::singleton(c2.bottom());
        let s0 = VeeClosedSet::new(&c2, bot).unwrap();
        let top = FilterSet::new(&c2, Subset::singleton(c2.top())).unwrap();
        assert!(product_s_filter_check(&p, &[s0, s0], &[top, top]).unwrap());

        // Second factor fails: S contains the top.
        let s_all = VeeClosedSet::new(&c2, c2.full_set()).unwrap();
        assert_eq!(
            product_s_filter_check(&p, &[s0, s_all], &[top, top]).unwrap(),
            false
        );
    }

    #[test]
    fn biconditional_sweep_on_proper_filters() {
        let lats = [chain(2).unwrap(), chain(3).unwrap(), boolean(2).unwrap()];
        for a in &lats {
            for b in &lats {
                let p = product(&[a.clone(), b.clone()]).unwrap();
                for sa in all_vee_closed_sets(a) {
                    for sb in all_vee_closed_sets(b) {
                        for qa in all_filters(a) {
                            if !qa.is_proper(a) {
                                continue;
                            }
                            for qb in all_filters(b) {
                                if !qb.is_proper(b) {
                                    continue;
                                }
                                assert!(product_s_filter_check(
                                    &p,
                                    &[sa, sb],
                                    &[qa, qb]
                                )
                                .is_ok());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn improper_factor_breaks_the_biconditional() {
        // With an improper first component the product can still satisfy
        // the product-side condition while the factor side fails.
        let c2 = chain(2).unwrap();
        let p = product(&[c2.clone(), c2.clone()]).unwrap();
        let s0 = VeeClosedSet::new(&c2, Subset::singleton(c2.bottom())).unwrap();
        let improper = FilterSet::new(&c2, c2.full_set()).unwrap();
        let top = FilterSet::new(&c2, Subset::singleton(c2.top())).unwrap();
        assert!(matches!(
            product_s_filter_check(&p, &[s0, s0], &[improper, top]),
            Err(ProductError::BiconditionalViolated {
                product_side: true,
                factor_side: false
            })
        ));
    }
}
