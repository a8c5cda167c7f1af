//! Lattice generators and the default verification catalog.
//!
//! Every generator returns a fully validated [`Lattice`]. The random poset
//! sampler uses a fixed 64-bit linear congruential generator (Knuth's MMIX
//! multiplier and increment), so a (size, seed) pair names the same poset on
//! any machine.

use thiserror::Error;

use crate::lattice::{lattice_from_covers, BuildError, Lattice, Poset};
use crate::subset::MAX_ELEMENTS;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("unknown lattice name `{0}`")]
    UnknownName(String),
    #[error("requested lattice is too large ({0} elements, limit {MAX_ELEMENTS})")]
    TooLarge(usize),
    #[error("bad generator parameters: {0}")]
    BadParams(String),
    #[error(transparent)]
    Build(#[from] BuildError),
}

/// The n-element chain 0 < 1 < ... < n-1.
pub fn chain(n: usize) -> Result<Lattice, GenError> {
    if n == 0 {
        return Err(GenError::BadParams("chain needs at least one element".into()));
    }
    if n > MAX_ELEMENTS {
        return Err(GenError::TooLarge(n));
    }
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let covers: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    let poset = Poset::from_indexed(names, covers)?;
    let mut lat = lattice_from_covers(&poset)?;
    lat.set_name(&format!("chain-{n}"));
    Ok(lat)
}

/// The Boolean lattice with 2^k elements, ordered by bit containment.
/// Element labels are k-bit strings; the order lists subsets by size.
pub fn boolean(k: usize) -> Result<Lattice, GenError> {
    if 1usize.checked_shl(k as u32).is_none() || (1usize << k) > MAX_ELEMENTS {
        return Err(GenError::TooLarge(1usize << k.min(63)));
    }
    let size = 1usize << k;
    let mut masks: Vec<usize> = (0..size).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let names: Vec<String> = masks
        .iter()
        .map(|m| {
            if k == 0 {
                "1".to_string()
            } else {
                (0..k).rev().map(|b| if m >> b & 1 == 1 { '1' } else { '0' }).collect()
            }
        })
        .collect();
    let mut leq = vec![false; size * size];
    for (i, a) in masks.iter().enumerate() {
        for (j, b) in masks.iter().enumerate() {
            leq[i * size + j] = a & !b == 0;
        }
    }
    let mut lat = Lattice::from_leq_named(&format!("boolean-{k}"), names, &leq)?;
    lat.set_name(&format!("boolean-{k}"));
    Ok(lat)
}

/// Named five-element fixtures: `ex5` (two atoms joined below a coatom),
/// `m3` (the diamond), `n5` (the pentagon).
pub fn named(id: &str) -> Result<Lattice, GenError> {
    let (names, covers): (&[&str], &[(&str, &str)]) = match id {
        "ex5" => (
            &["0", "u", "v", "w", "1"],
            &[("0", "u"), ("0", "v"), ("u", "w"), ("v", "w"), ("w", "1")],
        ),
        "m3" => (
            &["0", "a", "b", "c", "1"],
            &[
                ("0", "a"),
                ("0", "b"),
                ("0", "c"),
                ("a", "1"),
                ("b", "1"),
                ("c", "1"),
            ],
        ),
        "n5" => (
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("0", "b"), ("a", "c"), ("c", "1"), ("b", "1")],
        ),
        other => return Err(GenError::UnknownName(other.to_string())),
    };
    let poset = Poset::new(names, covers)?;
    let mut lat = lattice_from_covers(&poset)?;
    lat.set_name(id);
    Ok(lat)
}

/// Divisors of n under divisibility; meet is gcd and join is lcm.
pub fn divisor_lattice(n: u64) -> Result<Lattice, GenError> {
    if n == 0 {
        return Err(GenError::BadParams("divisors of 0 are unbounded".into()));
    }
    let divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    if divisors.len() > MAX_ELEMENTS {
        return Err(GenError::TooLarge(divisors.len()));
    }
    let size = divisors.len();
    let names: Vec<String> = divisors.iter().map(|d| d.to_string()).collect();
    let mut leq = vec![false; size * size];
    for (i, a) in divisors.iter().enumerate() {
        for (j, b) in divisors.iter().enumerate() {
            leq[i * size + j] = b % a == 0;
        }
    }
    let mut lat = Lattice::from_leq_named("", names, &leq)?;
    lat.set_name(&format!("divisors-{n}"));
    Ok(lat)
}

/// The lattice of down-sets of a poset, ordered by inclusion: meet is
/// intersection, join is union, and the result is always bounded and
/// distributive.
pub fn downset_lattice(poset: &Poset) -> Result<Lattice, GenError> {
    let downsets = poset.downsets();
    if downsets.len() > MAX_ELEMENTS {
        return Err(GenError::TooLarge(downsets.len()));
    }
    let size = downsets.len();
    let names: Vec<String> = downsets
        .iter()
        .map(|d| {
            let mut labels: Vec<&str> =
                d.iter().map(|e| poset.names()[e.index()].as_str()).collect();
            labels.sort_unstable();
            format!("{{{}}}", labels.join(","))
        })
        .collect();
    let mut leq = vec![false; size * size];
    for (i, a) in downsets.iter().enumerate() {
        for (j, b) in downsets.iter().enumerate() {
            leq[i * size + j] = a.is_subset_of(*b);
        }
    }
    let mut lat = Lattice::from_leq_named("", names, &leq)?;
    lat.set_name("downsets");
    debug_assert!(lat.is_distributive());
    Ok(lat)
}

/// Fixed 64-bit linear congruential generator (Knuth MMIX constants), used
/// so that seeds mean the same poset everywhere.
#[derive(Clone, Debug)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Lcg {
        Lcg { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self
            .state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.state
    }

    pub fn next_bool(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }
}

/// A pseudo-random poset on n points: each pair (i, j) with i < j is made
/// comparable with probability one half under the identity linear
/// extension, then the relation is closed transitively and reduced to
/// covers. Deterministic in (n, seed).
pub fn random_poset(n: usize, seed: u64) -> Result<Poset, GenError> {
    if n == 0 || n > 6 {
        return Err(GenError::BadParams(format!(
            "random poset size must be between 1 and 6, got {n}"
        )));
    }
    let mut rng = Lcg::new(seed);
    let mut rel = vec![false; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.next_bool() {
                rel[i * n + j] = true;
            }
        }
    }
    // Transitive closure (indices already form a linear extension).
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if rel[i * n + k] && rel[k * n + j] {
                    rel[i * n + j] = true;
                }
            }
        }
    }
    // Transitive reduction: keep only covering pairs.
    let mut covers = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if rel[i * n + j] {
                let implied = (0..n).any(|k| rel[i * n + k] && rel[k * n + j]);
                if !implied {
                    covers.push((i, j));
                }
            }
        }
    }
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    Ok(Poset::from_indexed(names, covers)?)
}

/// How a catalog entry was constructed; rebuilding from it is bit-identical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Chain { n: usize },
    Boolean { k: usize },
    Named { id: String },
    Divisors { n: u64 },
    RandomDownsets { n: usize, seed: u64 },
}

/// One lattice of the verification catalog.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: String,
    pub lattice: Lattice,
    pub provenance: Provenance,
}

pub const DEFAULT_CATALOG_SEED: u64 = 42;

/// Number of random down-set lattices in the default catalog.
pub const RANDOM_DOWNSET_COUNT: usize = 100;

fn rebuild(provenance: &Provenance) -> Result<Lattice, GenError> {
    match provenance {
        Provenance::Chain { n } => chain(*n),
        Provenance::Boolean { k } => boolean(*k),
        Provenance::Named { id } => named(id),
        Provenance::Divisors { n } => divisor_lattice(*n),
        Provenance::RandomDownsets { n, seed } => {
            let poset = random_poset(*n, *seed)?;
            downset_lattice(&poset)
        }
    }
}

/// The default verification catalog: chains 2..=6, Booleans 1..=3, the
/// named five-element fixtures, four divisor lattices, and 100 down-set
/// lattices of seeded random posets with 2..=5 points. Sorted by id.
pub fn default_catalog(seed: u64) -> Vec<CatalogEntry> {
    let mut entries: Vec<(String, Provenance)> = Vec::new();
    for n in 2..=6 {
        entries.push((format!("chain-{n}"), Provenance::Chain { n }));
    }
    for k in 1..=3 {
        entries.push((format!("boolean-{k}"), Provenance::Boolean { k }));
    }
    for id in ["ex5", "m3", "n5"] {
        entries.push((id.to_string(), Provenance::Named { id: id.to_string() }));
    }
    for n in [12u64, 30, 36, 60] {
        entries.push((format!("divisors-{n}"), Provenance::Divisors { n }));
    }
    for k in 0..RANDOM_DOWNSET_COUNT {
        let n = 2 + k % 4;
        let entry_seed = seed.wrapping_add(k as u64);
        entries.push((
            format!("rnd-ds-{k:03}"),
            Provenance::RandomDownsets { n, seed: entry_seed },
        ));
    }
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    entries
        .into_iter()
        .map(|(id, provenance)| {
            let mut lattice = rebuild(&provenance).expect("catalog entries are constructible");
            lattice.set_name(&id);
            CatalogEntry {
                id,
                lattice,
                provenance,
            }
        })
        .collect()
}

/// A single-entry catalog, for focused runs.
pub fn singleton_catalog(lat: Lattice) -> Vec<CatalogEntry> {
    vec![CatalogEntry {
        id: lat.name().to_string(),
        lattice: lat,
        provenance: Provenance::Named { id: String::new() },
    }]
}
