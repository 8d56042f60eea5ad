//! Breadth-first ball enumeration over canonical forms.
//!
//! Two families of sets are tracked side by side:
//!
//! * the cumulative balls `B_n = {e} ∪ S ∪ … ∪ S^n` and their word-length
//!   spheres `B_n \ B_{n-1}` (elements whose shortest `S`-word has length
//!   exactly `n`);
//! * the literal power sets `S^n` (products of exactly `n` factors) and the
//!   literal differences `S^n \ S^{n-1}`, computed as true set differences.
//!
//! Elements are interned in an insertion-ordered set, so word-length sphere
//! `n` is the contiguous index range `[|B_{n-1}|, |B_n|)` and the whole
//! enumeration is deterministic.

use std::mem::size_of;

use indexmap::IndexSet;

use crate::group::{CanonicalForm, GeneratingSet, GroupBackend, GroupElement};

use super::GrowthError;

/// Default memory budget for enumeration: 2 GiB.
pub const DEFAULT_MEMORY_BUDGET: usize = 2 << 30;

/// Bookkeeping bytes charged per interned element on top of the form itself
/// (hash-table slot, cached hash, power-set bits).
const PER_ELEMENT_OVERHEAD: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// Largest radius to enumerate (`n_max ≥ 1`).
    pub n_max: usize,
    /// Element sets are retained for radii `≤ store_limit`.
    pub store_limit: usize,
    /// Approximate byte budget for the interned element set.
    pub memory_budget: usize,
}

impl EnumerationOptions {
    pub fn new(n_max: usize) -> Self {
        EnumerationOptions {
            n_max,
            store_limit: 0,
            memory_budget: DEFAULT_MEMORY_BUDGET,
        }
    }

    pub fn store_limit(mut self, store_limit: usize) -> Self {
        self.store_limit = store_limit;
        self
    }

    pub fn memory_budget(mut self, bytes: usize) -> Self {
        self.memory_budget = bytes;
        self
    }
}

/// Exact counts of balls, spheres and power sets up to `radius_max`.
///
/// Every count vector is indexed by radius starting at `n = 0`, where all of
/// them equal 1 (`S^0 = B_0 = {e}`).
#[derive(Clone, Debug)]
pub struct BallTable {
    group_label: String,
    generators: String,
    set_size: usize,
    symmetric: bool,
    contains_identity: bool,
    radius_max: usize,
    ball_sizes: Vec<u64>,
    sphere_sizes: Vec<u64>,
    power_sizes: Vec<u64>,
    literal_differences: Vec<u64>,
    stored_radius: usize,
    elements: IndexSet<CanonicalForm>,
    backend: crate::group::BackendId,
    warnings: Vec<String>,
}

impl BallTable {
    pub fn group_label(&self) -> &str {
        &self.group_label
    }

    /// The generating set, formatted as comma-separated words.
    pub fn generators(&self) -> &str {
        &self.generators
    }

    pub fn set_size(&self) -> usize {
        self.set_size
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn contains_identity(&self) -> bool {
        self.contains_identity
    }

    pub fn radius_max(&self) -> usize {
        self.radius_max
    }

    /// `|B_n|` for `n = 0..=radius_max`.
    pub fn ball_sizes(&self) -> &[u64] {
        &self.ball_sizes
    }

    /// `|B_n \ B_{n-1}|` (word-length spheres), with entry 0 equal to 1.
    pub fn sphere_sizes(&self) -> &[u64] {
        &self.sphere_sizes
    }

    /// `|S^n|` for `n = 0..=radius_max`.
    pub fn power_sizes(&self) -> &[u64] {
        &self.power_sizes
    }

    /// `|S^n \ S^{n-1}|` as a literal set difference, entry 0 equal to 1.
    pub fn literal_differences(&self) -> &[u64] {
        &self.literal_differences
    }

    /// Largest radius whose elements are retained.
    pub fn stored_radius(&self) -> usize {
        self.stored_radius
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    fn sphere_range(&self, n: usize) -> Option<std::ops::Range<usize>> {
        if n > self.stored_radius {
            return None;
        }
        let start = if n == 0 { 0 } else { self.ball_sizes[n - 1] as usize };
        Some(start..self.ball_sizes[n] as usize)
    }

    /// Elements of word length exactly `n`, if retained.
    pub fn sphere(&self, n: usize) -> Option<Vec<GroupElement>> {
        let range = self.sphere_range(n)?;
        Some(
            range
                .map(|i| GroupElement {
                    backend: self.backend,
                    form: self.elements[i].clone(),
                })
                .collect(),
        )
    }

    /// Canonical forms of word length exactly `n`, if retained.
    pub fn sphere_forms(&self, n: usize) -> Option<impl Iterator<Item = &CanonicalForm>> {
        let range = self.sphere_range(n)?;
        Some(range.map(move |i| &self.elements[i]))
    }

    /// Word length of `x` if it is at most the stored radius.
    pub fn word_length(&self, x: &GroupElement) -> Option<usize> {
        if x.backend != self.backend {
            return None;
        }
        self.form_length(&x.form)
    }

    pub(crate) fn form_length(&self, form: &CanonicalForm) -> Option<usize> {
        let idx = self.index_of(form)? as u64;
        Some(self.ball_sizes.partition_point(|&b| b <= idx))
    }

    /// Position of a stored form; sphere `n` occupies `[|B_{n-1}|, |B_n|)`.
    pub(crate) fn index_of(&self, form: &CanonicalForm) -> Option<usize> {
        self.elements.get_index_of(form)
    }

    pub(crate) fn backend(&self) -> crate::group::BackendId {
        self.backend
    }
}

/// Enumerates balls, spheres and power sets of `set` up to `options.n_max`.
///
/// On budget exhaustion the error carries the table for every fully
/// completed radius.
pub fn enumerate_balls(
    group: &GroupBackend,
    set: &GeneratingSet,
    options: EnumerationOptions,
) -> Result<BallTable, GrowthError> {
    if options.n_max < 1 {
        return Err(GrowthError::RadiusTooSmall(options.n_max));
    }
    let gens: Vec<CanonicalForm> = set
        .elements()
        .iter()
        .map(|g| {
            if g.backend != group.id() {
                Err(GrowthError::Group(crate::group::GroupError::BackendMismatch))
            } else {
                Ok(g.form.clone())
            }
        })
        .collect::<Result<_, _>>()?;

    let mut warnings = Vec::new();
    if set.contains_identity() {
        warnings.push(
            "generating set contains the identity; spheres and power sets become nested".into(),
        );
    }
    if !set.is_symmetric() {
        warnings.push("generating set is not symmetric; growth theorems do not apply".into());
    }

    let mut table = BallTable {
        group_label: group.label(),
        generators: set.describe(group),
        set_size: set.len(),
        symmetric: set.is_symmetric(),
        contains_identity: set.contains_identity(),
        radius_max: 0,
        ball_sizes: vec![1],
        sphere_sizes: vec![1],
        power_sizes: vec![1],
        literal_differences: vec![1],
        stored_radius: 0,
        elements: IndexSet::new(),
        backend: group.id(),
        warnings,
    };
    let identity = group.identity_form();
    let mut bytes = element_bytes(&identity);
    table.elements.insert(identity);

    // Power set S^{n-1} as a bitmap over element indices (all lie in B_{n-1}).
    let mut power: Vec<bool> = vec![true];

    for n in 1..=options.n_max {
        let sphere_start = table.ball_sizes[n - 1] as usize;
        let prev_start = if n == 1 { 0 } else { table.ball_sizes[n - 2] as usize };

        // Word-length sphere n: new elements among products g·s, |g| = n-1.
        for i in prev_start..sphere_start {
            for s in &gens {
                let h = group.mul_forms(&table.elements[i], s)?;
                if !table.elements.contains(&h) {
                    bytes += element_bytes(&h);
                    if bytes > options.memory_budget {
                        table.elements.truncate(sphere_start);
                        return Err(budget_exceeded(table, options));
                    }
                    table.elements.insert(h);
                }
            }
        }
        let ball = table.elements.len();

        // Literal power set S^n = S^{n-1}·S, every product lies in B_n.
        let mut next = vec![false; ball];
        for (i, _) in power.iter().enumerate().filter(|(_, &b)| b) {
            for s in &gens {
                let h = group.mul_forms(&table.elements[i], s)?;
                let j = table
                    .elements
                    .get_index_of(&h)
                    .expect("product of length ≤ n lies in the ball");
                next[j] = true;
            }
        }
        let power_size = next.iter().filter(|&&b| b).count() as u64;
        let difference = next
            .iter()
            .enumerate()
            .filter(|&(j, &b)| b && !power.get(j).copied().unwrap_or(false))
            .count() as u64;
        power = next;

        table.ball_sizes.push(ball as u64);
        table.sphere_sizes.push((ball - sphere_start) as u64);
        table.power_sizes.push(power_size);
        table.literal_differences.push(difference);
        table.radius_max = n;
    }

    finish(&mut table, options.store_limit);
    Ok(table)
}

fn element_bytes(form: &CanonicalForm) -> usize {
    size_of::<CanonicalForm>() + form.heap_bytes() + PER_ELEMENT_OVERHEAD
}

fn finish(table: &mut BallTable, store_limit: usize) {
    table.stored_radius = store_limit.min(table.radius_max);
    table
        .elements
        .truncate(table.ball_sizes[table.stored_radius] as usize);
    table.elements.shrink_to_fit();
}

fn budget_exceeded(mut table: BallTable, options: EnumerationOptions) -> GrowthError {
    let completed = table.radius_max;
    table.warnings.push(format!(
        "memory budget of {} bytes exhausted at radius {}",
        options.memory_budget,
        completed + 1
    ));
    finish(&mut table, options.store_limit);
    GrowthError::MemoryBudget {
        completed,
        partial: Box::new(table),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::CayleyTable;

    fn table(group: &GroupBackend, gens: &str, n: usize, store: usize) -> BallTable {
        let set = GeneratingSet::parse(group, gens).unwrap();
        enumerate_balls(group, &set, EnumerationOptions::new(n).store_limit(store)).unwrap()
    }

    #[test]
    fn free_group_counts() {
        let f2 = GroupBackend::free(2);
        let t = table(&f2, "standard", 6, 3);
        assert_eq!(t.sphere_sizes(), &[1, 4, 12, 36, 108, 324, 972]);
        assert_eq!(&t.ball_sizes()[..4], &[1, 5, 17, 53]);
        // Free groups are bipartite: S^n is exactly the sphere of length n
        // plus the lower spheres of the same parity.
        assert_eq!(&t.power_sizes()[..4], &[1, 4, 13, 40]);
        assert_eq!(&t.literal_differences()[..4], &[1, 4, 13, 40]);
        assert_eq!(t.sphere(2).unwrap().len(), 12);
        assert!(t.sphere(4).is_none());
        let ab = f2.parse_word("ab'").unwrap();
        assert_eq!(t.word_length(&ab), Some(2));
    }

    #[test]
    fn integers_have_constant_spheres() {
        let z = GroupBackend::free(1);
        let t = table(&z, "a,a'", 10, 0);
        assert!(t.sphere_sizes()[1..].iter().all(|&s| s == 2));
        assert_eq!(t.ball_sizes()[10], 21);
        assert_eq!(t.power_sizes()[10], 11);
    }

    #[test]
    fn finite_group_spheres_vanish() {
        let z5 = GroupBackend::finite_cayley(CayleyTable::cyclic(5));
        let t = table(&z5, "#1,#4", 5, 5);
        assert_eq!(t.sphere_sizes(), &[1, 2, 2, 0, 0, 0]);
        assert_eq!(t.ball_sizes()[5], 5);
    }

    #[test]
    fn identity_in_set_is_flagged() {
        let z = GroupBackend::free(1);
        let t = table(&z, "1,a,a'", 4, 0);
        assert!(t.contains_identity());
        assert!(!t.warnings().is_empty());
        // With e ∈ S the power sets are the balls.
        assert_eq!(t.power_sizes(), t.ball_sizes());
    }

    #[test]
    fn budget_returns_partial_table() {
        let f2 = GroupBackend::free(2);
        let set = f2.standard_generators().unwrap();
        let err = enumerate_balls(&f2, &set, EnumerationOptions::new(20).memory_budget(20_000))
            .unwrap_err();
        match err {
            GrowthError::MemoryBudget { completed, partial } => {
                assert!(completed >= 2);
                assert_eq!(partial.radius_max(), completed);
                assert_eq!(partial.sphere_sizes().len(), completed + 1);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn zero_radius_rejected() {
        let f2 = GroupBackend::free(2);
        let set = f2.standard_generators().unwrap();
        assert!(matches!(
            enumerate_balls(&f2, &set, EnumerationOptions::new(0)),
            Err(GrowthError::RadiusTooSmall(0))
        ));
    }
}
