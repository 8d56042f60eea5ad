use std::cmp::Ordering;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

/// Opaque identifier tying elements to the backend that produced them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BackendId(u64);

static NEXT_BACKEND: AtomicU64 = AtomicU64::new(1);

impl BackendId {
    pub(crate) fn fresh() -> Self {
        BackendId(NEXT_BACKEND.fetch_add(1, AtomicOrdering::Relaxed))
    }
}

/// One syllable `g_factor^exp` of a free product normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub factor: u32,
    pub exp: i32,
}

/// Unique normal form of a group element.
///
/// `Word` holds signed 1-based generator indices (`-i` is the inverse of
/// generator `i`), `Syllables` the exponent-compressed free product form and
/// `Index` a position in a finite Cayley table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CanonicalForm {
    Word(Box<[i32]>),
    Syllables(Box<[Syllable]>),
    Index(u32),
}

impl CanonicalForm {
    /// Number of letters or syllables; 0 for table indices.
    pub fn len(&self) -> usize {
        match self {
            CanonicalForm::Word(w) => w.len(),
            CanonicalForm::Syllables(s) => s.len(),
            CanonicalForm::Index(_) => 0,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Rough heap footprint, used by enumeration memory budgets.
    pub(crate) fn heap_bytes(&self) -> usize {
        match self {
            CanonicalForm::Word(w) => w.len() * std::mem::size_of::<i32>(),
            CanonicalForm::Syllables(s) => s.len() * std::mem::size_of::<Syllable>(),
            CanonicalForm::Index(_) => 0,
        }
    }
}

fn letter_key(l: i32) -> (u32, bool) {
    (l.unsigned_abs(), l < 0)
}

// Shortlex, so sorted reports list short elements first.
impl Ord for CanonicalForm {
    fn cmp(&self, other: &Self) -> Ordering {
        use CanonicalForm::*;
        match (self, other) {
            (Word(a), Word(b)) => a
                .len()
                .cmp(&b.len())
                .then_with(|| a.iter().map(|&l| letter_key(l)).cmp(b.iter().map(|&l| letter_key(l)))),
            (Syllables(a), Syllables(b)) => a.len().cmp(&b.len()).then_with(|| a.cmp(b)),
            (Index(a), Index(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for CanonicalForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl CanonicalForm {
    fn rank(&self) -> u8 {
        match self {
            CanonicalForm::Word(_) => 0,
            CanonicalForm::Syllables(_) => 1,
            CanonicalForm::Index(_) => 2,
        }
    }
}

/// An element of a specific [`GroupBackend`](super::GroupBackend).
///
/// Two elements are equal iff they come from the same backend and their
/// canonical forms coincide.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub(crate) backend: BackendId,
    pub(crate) form: CanonicalForm,
}

impl GroupElement {
    pub fn backend_id(&self) -> BackendId {
        self.backend
    }

    pub fn canonical_form(&self) -> &CanonicalForm {
        &self.form
    }
}
