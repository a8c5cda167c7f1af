//! Finite bounded lattices with fully precomputed structure.
//!
//! A [`Lattice`] is built either from a cover relation ([`Poset`]) or from a
//! full order relation. Construction is eager: every value that exists has
//! been checked for reflexivity, antisymmetry, transitivity, unique meets
//! and joins, and global bounds. Meet and join are table lookups afterwards.

use std::sync::atomic::{AtomicU64, Ordering};

use thiserror::Error;

use crate::subset::{Subset, MAX_ELEMENTS};

/// An element of one lattice, identified by its index.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Elem(u32);

impl Elem {
    pub(crate) fn new(index: usize) -> Elem {
        Elem(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite poset given by labels and a cover relation, the input form for
/// lattice construction and the base object for down-set lattices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    covers: Vec<(usize, usize)>,
    /// leq\[a\] = up-set of a under the reflexive-transitive closure.
    up: Vec<Subset>,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("element list is empty")]
    Unbounded,
    #[error("more than {MAX_ELEMENTS} elements ({0})")]
    TooLarge(usize),
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("cover references unknown label `{0}`")]
    UnknownLabel(String),
    #[error("cover relation has a cycle through `{0}`")]
    CyclicCovers(String),
    #[error("cover `{0}` -> `{1}` is implied by transitivity of other covers")]
    RedundantCover(String, String),
    #[error("elements `{a}` and `{b}` have no unique {kind}")]
    NotALattice { a: String, b: String, kind: BoundKind },
    #[error("order is not antisymmetric at `{0}`, `{1}`")]
    NotAntisymmetric(String, String),
    #[error("order is not transitive at `{0}`, `{1}`")]
    NotTransitive(String, String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    GreatestLowerBound,
    LeastUpperBound,
}

impl std::fmt::Display for BoundKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundKind::GreatestLowerBound => write!(f, "greatest lower bound"),
            BoundKind::LeastUpperBound => write!(f, "least upper bound"),
        }
    }
}

impl Poset {
    /// Build a poset from labels and cover pairs. Covers must be acyclic and
    /// transitively irredundant.
    pub fn new<S: AsRef<str>>(names: &[S], covers: &[(S, S)]) -> Result<Poset, BuildError> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let n = names.len();
        if n == 0 {
            return Err(BuildError::Unbounded);
        }
        if n > MAX_ELEMENTS {
            return Err(BuildError::TooLarge(n));
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(BuildError::DuplicateLabel(name.clone()));
            }
        }
        let index_of = |label: &str| -> Result<usize, BuildError> {
            names
                .iter()
                .position(|x| x == label)
                .ok_or_else(|| BuildError::UnknownLabel(label.to_string()))
        };
        let mut pairs = Vec::with_capacity(covers.len());
        for (lo, hi) in covers {
            pairs.push((index_of(lo.as_ref())?, index_of(hi.as_ref())?));
        }
        Poset::from_indexed(names, pairs)
    }

    pub(crate) fn from_indexed(
        names: Vec<String>,
        covers: Vec<(usize, usize)>,
    ) -> Result<Poset, BuildError> {
        let n = names.len();
        // Reflexive-transitive closure of the covers.
        let mut up = vec![Subset::EMPTY; n];
        for (i, u) in up.iter_mut().enumerate() {
            u.insert(Elem::new(i));
        }
        for &(lo, hi) in &covers {
            up[lo].insert(Elem::new(hi));
        }
        let mut changed = true;
        while changed {
            changed = false;
            for a in 0..n {
                let mut acc = up[a];
                for b in up[a].iter() {
                    acc = acc.union(up[b.index()]);
                }
                if acc != up[a] {
                    up[a] = acc;
                    changed = true;
                }
            }
        }
        // A cycle shows up as two distinct mutually-reachable elements.
        for a in 0..n {
            for b in (a + 1)..n {
                if up[a].contains(Elem::new(b)) && up[b].contains(Elem::new(a)) {
                    return Err(BuildError::CyclicCovers(names[a].clone()));
                }
            }
        }
        // Reject covers already implied by the other covers' closure.
        for (k, &(lo, hi)) in covers.iter().enumerate() {
            if lo == hi {
                return Err(BuildError::CyclicCovers(names[lo].clone()));
            }
            for (j, &(lo2, hi2)) in covers.iter().enumerate() {
                if j != k && lo2 == lo && up[hi2].contains(Elem::new(hi)) && hi2 != hi {
                    return Err(BuildError::RedundantCover(
                        names[lo].clone(),
                        names[hi].clone(),
                    ));
                }
            }
        }
        Ok(Poset { names, covers, up })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// a <= b in the reflexive-transitive closure of the covers.
    pub fn leq_idx(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(Elem::new(b))
    }

    /// All down-sets of the poset, each as a subset mask. Enumeration grows
    /// down-sets one element at a time, so thin posets of any supported
    /// size work; callers cap the count.
    pub fn downsets(&self) -> Vec<Subset> {
        let n = self.len();
        let mut down = vec![Subset::EMPTY; n];
        for a in 0..n {
            for b in 0..n {
                if self.leq_idx(b, a) {
                    down[a].insert(Elem::new(b));
                }
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        seen.insert(Subset::EMPTY);
        let mut frontier = vec![Subset::EMPTY];
        while let Some(d) = frontier.pop() {
            // One past the lattice cap is enough for callers to reject.
            if seen.len() > MAX_ELEMENTS {
                break;
            }
            for e in 0..n {
                let e = Elem::new(e);
                let mut below = down[e.index()];
                below.remove(e);
                if !d.contains(e) && below.is_subset_of(d) {
                    let mut bigger = d;
                    bigger.insert(e);
                    if seen.insert(bigger) {
                        frontier.push(bigger);
                    }
                }
            }
        }
        let mut out: Vec<Subset> = seen.into_iter().collect();
        out.sort_by_key(|s| s.canonical_key());
        out
    }
}

static NEXT_TOKEN: AtomicU64 = AtomicU64::new(1);

/// Identity token tying filters and related values to the lattice they were
/// created on. Clones of a lattice share the token.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct LatticeToken(u64);

/// Structural flags, decided once at construction.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct LatticeFlags {
    pub distributive: bool,
    pub modular: bool,
    pub complemented: bool,
}

/// A finite bounded lattice: labels, order, meet/join tables and bounds.
#[derive(Clone, Debug)]
pub struct Lattice {
    token: LatticeToken,
    name: String,
    names: Vec<String>,
    n: usize,
    /// up\[a\] = { b | a <= b }; row a of the order relation.
    up: Vec<Subset>,
    /// down\[b\] = { a | a <= b }.
    down: Vec<Subset>,
    meet: Vec<u32>,
    join: Vec<u32>,
    bottom: Elem,
    top: Elem,
    covers: Vec<(usize, usize)>,
    flags: LatticeFlags,
}

/// Build a lattice from a cover relation, failing if any pair lacks a unique
/// greatest lower bound or least upper bound.
pub fn lattice_from_covers(poset: &Poset) -> Result<Lattice, BuildError> {
    let n = poset.len();
    let mut leq = vec![false; n * n];
    for a in 0..n {
        for b in 0..n {
            leq[a * n + b] = poset.leq_idx(a, b);
        }
    }
    Lattice::from_leq_named("", poset.names().to_vec(), &leq)
}

impl Lattice {
    /// Build and validate a lattice from an explicit order relation
    /// (`leq[a * n + b]` means `a <= b`).
    pub fn from_leq_named(
        name: &str,
        names: Vec<String>,
        leq: &[bool],
    ) -> Result<Lattice, BuildError> {
        let n = names.len();
        if n == 0 {
            return Err(BuildError::Unbounded);
        }
        if n > MAX_ELEMENTS {
            return Err(BuildError::TooLarge(n));
        }
        assert_eq!(leq.len(), n * n, "order relation has wrong shape");
        for (i, nm) in names.iter().enumerate() {
            if names[..i].contains(nm) {
                return Err(BuildError::DuplicateLabel(nm.clone()));
            }
        }

        let mut up = vec![Subset::EMPTY; n];
        let mut down = vec![Subset::EMPTY; n];
        for a in 0..n {
            for b in 0..n {
                if leq[a * n + b] {
                    up[a].insert(Elem::new(b));
                    down[b].insert(Elem::new(a));
                }
            }
        }
        for a in 0..n {
            if !leq[a * n + a] {
                return Err(BuildError::NotAntisymmetric(
                    names[a].clone(),
                    names[a].clone(),
                ));
            }
            for b in 0..n {
                if a != b && leq[a * n + b] && leq[b * n + a] {
                    return Err(BuildError::NotAntisymmetric(
                        names[a].clone(),
                        names[b].clone(),
                    ));
                }
                // Transitivity: everything above b must be above a.
                if leq[a * n + b] && !up[b].is_subset_of(up[a]) {
                    return Err(BuildError::NotTransitive(
                        names[a].clone(),
                        names[b].clone(),
                    ));
                }
            }
        }

        // Meet and join tables: the lower-bound set must have a unique
        // greatest element, dually for upper bounds.
        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                let lows = down[a].inter(down[b]);
                let glb = lows.iter().find(|m| lows.is_subset_of(down[m.index()]));
                let ups = up[a].inter(up[b]);
                let lub = ups.iter().find(|j| ups.is_subset_of(up[j.index()]));
                let (Some(glb), Some(lub)) = (glb, lub) else {
                    let kind = if glb.is_none() {
                        BoundKind::GreatestLowerBound
                    } else {
                        BoundKind::LeastUpperBound
                    };
                    return Err(BuildError::NotALattice {
                        a: names[a].clone(),
                        b: names[b].clone(),
                        kind,
                    });
                };
                meet[a * n + b] = glb.index() as u32;
                meet[b * n + a] = glb.index() as u32;
                join[a * n + b] = lub.index() as u32;
                join[b * n + a] = lub.index() as u32;
            }
        }

        // Bounds exist once all pairwise meets/joins do.
        let mut bot = 0usize;
        let mut top = 0usize;
        for x in 1..n {
            bot = meet[bot * n + x] as usize;
            top = join[top * n + x] as usize;
        }

        let mut covers = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && leq[a * n + b] {
                    let between = up[a].inter(down[b]).len();
                    if between == 2 {
                        covers.push((a, b));
                    }
                }
            }
        }

        let mut lat = Lattice {
            token: LatticeToken(NEXT_TOKEN.fetch_add(1, Ordering::Relaxed)),
            name: name.to_string(),
            names,
            n,
            up,
            down,
            meet,
            join,
            bottom: Elem::new(bot),
            top: Elem::new(top),
            covers,
            flags: LatticeFlags {
                distributive: false,
                modular: false,
                complemented: false,
            },
        };
        lat.flags = LatticeFlags {
            distributive: lat.compute_distributive(),
            modular: lat.compute_modular(),
            complemented: lat.compute_complemented(),
        };
        Ok(lat)
    }

    pub fn token(&self) -> LatticeToken {
        self.token
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: &str) {
        self.name = name.to_string();
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false // construction rejects empty element lists
    }

    pub fn labels(&self) -> &[String] {
        &self.names
    }

    pub fn label(&self, e: Elem) -> &str {
        &self.names[e.index()]
    }

    pub fn elem(&self, index: usize) -> Option<Elem> {
        (index < self.n).then(|| Elem::new(index))
    }

    pub fn elem_by_label(&self, label: &str) -> Option<Elem> {
        self.names.iter().position(|x| x == label).map(Elem::new)
    }

    pub fn elems(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.n).map(Elem::new)
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    /// Cover pairs (lower, upper) of the order, derived from the relation.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn flags(&self) -> LatticeFlags {
        self.flags
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.up[a.index()].contains(b)
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        Elem::new(self.meet[a.index() * self.n + b.index()] as usize)
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        Elem::new(self.join[a.index() * self.n + b.index()] as usize)
    }

    /// The up-set of `a` as a mask; this is the principal filter generated
    /// by `a`.
    pub fn upset(&self, a: Elem) -> Subset {
        self.up[a.index()]
    }

    pub fn downset(&self, a: Elem) -> Subset {
        self.down[a.index()]
    }

    pub fn strict_downset(&self, a: Elem) -> Subset {
        let mut s = self.down[a.index()];
        s.remove(a);
        s
    }

    pub fn strict_upset(&self, a: Elem) -> Subset {
        let mut s = self.up[a.index()];
        s.remove(a);
        s
    }

    /// Meet of all members of a nonempty subset.
    pub fn meet_all(&self, s: Subset) -> Option<Elem> {
        let mut it = s.iter();
        let first = it.next()?;
        Some(it.fold(first, |acc, e| self.meet(acc, e)))
    }

    /// Join of all members of a nonempty subset.
    pub fn join_all(&self, s: Subset) -> Option<Elem> {
        let mut it = s.iter();
        let first = it.next()?;
        Some(it.fold(first, |acc, e| self.join(acc, e)))
    }

    pub fn full_set(&self) -> Subset {
        Subset::full(self.n)
    }

    fn compute_distributive(&self) -> bool {
        // a /\ (b \/ c) = (a /\ b) \/ (a /\ c) over all triples.
        for a in self.elems() {
            for b in self.elems() {
                for c in self.elems() {
                    let lhs = self.meet(a, self.join(b, c));
                    let rhs = self.join(self.meet(a, b), self.meet(a, c));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn compute_modular(&self) -> bool {
        // a <= c implies a \/ (b /\ c) = (a \/ b) /\ c.
        for a in self.elems() {
            for c in self.elems() {
                if !self.leq(a, c) {
                    continue;
                }
                for b in self.elems() {
                    let lhs = self.join(a, self.meet(b, c));
                    let rhs = self.meet(self.join(a, b), c);
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn compute_complemented(&self) -> bool {
        self.elems().all(|a| !self.complements(a).is_empty())
    }

    pub fn is_distributive(&self) -> bool {
        self.flags.distributive
    }

    pub fn is_modular(&self) -> bool {
        self.flags.modular
    }

    pub fn is_complemented(&self) -> bool {
        self.flags.complemented
    }

    /// All v with a \/ v = top and a /\ v = bottom.
    pub fn complements(&self, a: Elem) -> Subset {
        self.elems()
            .filter(|&v| self.join(a, v) == self.top && self.meet(a, v) == self.bottom)
            .collect()
    }

    /// No two non-top elements join to the top; equivalently {top} is a
    /// prime filter.
    pub fn is_l_domain(&self) -> bool {
        for a in self.elems() {
            for b in self.elems() {
                if self.join(a, b) == self.top && a != self.top && b != self.top {
                    return false;
                }
            }
        }
        true
    }

    /// An index order that refines the lattice order: sorting by down-set
    /// size gives a linear extension regardless of input element order.
    pub fn linear_extension(&self) -> Vec<Elem> {
        let mut order: Vec<Elem> = self.elems().collect();
        order.sort_by_key(|e| (self.down[e.index()].len(), e.index()));
        order
    }
}
