//! Discrete groups with computable normal forms.
//!
//! A [`GroupBackend`] is immutable once built and can be shared freely across
//! threads. Elements carry the id of the backend that produced them, so mixing
//! elements from two backends is caught instead of silently mis-multiplied.

mod cayley;
mod element;
pub mod file;
mod fpc;
mod free;
mod rewriting;

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

pub use cayley::{CayleyTable, ASSOCIATIVITY_CHECK_LIMIT};
pub use element::{BackendId, CanonicalForm, GroupElement, Syllable};
pub use rewriting::{shortlex_cmp, RewritingSystem, Rule};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("elements belong to different groups")]
    BackendMismatch,
    #[error("generator letter {letter} is out of range for {generators} generators")]
    GeneratorOutOfRange { letter: i32, generators: usize },
    #[error("element index {index} is out of range for a group of order {order}")]
    IndexOutOfRange { index: u32, order: usize },
    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),
    #[error("invalid rewriting system: {0}")]
    InvalidRewriting(String),
    #[error("rewriting system is not locally confluent: {word:?} reduces to {left:?} and {right:?}")]
    NotConfluent {
        word: Vec<i32>,
        left: Vec<i32>,
        right: Vec<i32>,
    },
    #[error("rewriting did not terminate (internal error)")]
    RewritingDiverged,
    #[error("cannot parse word '{word}': {reason}")]
    BadWord { word: String, reason: String },
    #[error("generating set is empty")]
    EmptyGeneratingSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BackendKind {
    FreeGroup { rank: u32 },
    /// `orders[j] == 0` is an infinite cyclic factor.
    FreeProductCyclic { orders: Vec<u32> },
    FiniteCayley(CayleyTable),
    RewritingSystem(RewritingSystem),
}

#[derive(Debug)]
pub struct GroupBackend {
    id: BackendId,
    kind: BackendKind,
}

impl GroupBackend {
    fn with_kind(kind: BackendKind) -> Self {
        GroupBackend {
            id: BackendId::fresh(),
            kind,
        }
    }

    pub fn free(rank: u32) -> Self {
        GroupBackend::with_kind(BackendKind::FreeGroup { rank })
    }

    pub fn free_product_cyclic(orders: Vec<u32>) -> Self {
        GroupBackend::with_kind(BackendKind::FreeProductCyclic { orders })
    }

    pub fn finite_cayley(table: CayleyTable) -> Self {
        GroupBackend::with_kind(BackendKind::FiniteCayley(table))
    }

    pub fn rewriting(system: RewritingSystem) -> Self {
        GroupBackend::with_kind(BackendKind::RewritingSystem(system))
    }

    pub fn id(&self) -> BackendId {
        self.id
    }

    pub fn kind(&self) -> &BackendKind {
        &self.kind
    }

    /// Short description in the command-line group grammar.
    pub fn label(&self) -> String {
        match &self.kind {
            BackendKind::FreeGroup { rank } => format!("free:{rank}"),
            BackendKind::FreeProductCyclic { orders } => {
                let o: Vec<String> = orders.iter().map(|m| m.to_string()).collect();
                format!("fpc:{}", o.join(","))
            }
            BackendKind::FiniteCayley(t) => format!("cayley(order={})", t.order()),
            BackendKind::RewritingSystem(r) => {
                format!("rws(generators={},rules={})", r.generators(), r.rules().len())
            }
        }
    }

    /// Number of letters `a, b, ...` available in words.
    pub fn num_generators(&self) -> usize {
        match &self.kind {
            BackendKind::FreeGroup { rank } => *rank as usize,
            BackendKind::FreeProductCyclic { orders } => orders.len(),
            BackendKind::FiniteCayley(t) => t.generators().len(),
            BackendKind::RewritingSystem(r) => r.generators(),
        }
    }

    fn wrap(&self, form: CanonicalForm) -> GroupElement {
        GroupElement {
            backend: self.id,
            form,
        }
    }

    pub(crate) fn identity_form(&self) -> CanonicalForm {
        match &self.kind {
            BackendKind::FreeGroup { .. } | BackendKind::RewritingSystem(_) => {
                CanonicalForm::Word(Box::new([]))
            }
            BackendKind::FreeProductCyclic { .. } => CanonicalForm::Syllables(Box::new([])),
            BackendKind::FiniteCayley(t) => CanonicalForm::Index(t.identity()),
        }
    }

    pub fn identity(&self) -> GroupElement {
        self.wrap(self.identity_form())
    }

    pub fn is_identity(&self, x: &GroupElement) -> bool {
        x.backend == self.id && x.form == self.identity_form()
    }

    /// Generator `i` (0-based), i.e. the letter `a + i`.
    pub fn generator(&self, i: usize) -> Result<GroupElement, GroupError> {
        self.canonicalize(&[i as i32 + 1])
    }

    /// Element `index` of a finite Cayley table.
    pub fn table_element(&self, index: u32) -> Result<GroupElement, GroupError> {
        match &self.kind {
            BackendKind::FiniteCayley(t) if (index as usize) < t.order() => {
                Ok(self.wrap(CanonicalForm::Index(index)))
            }
            BackendKind::FiniteCayley(t) => Err(GroupError::IndexOutOfRange {
                index,
                order: t.order(),
            }),
            _ => Err(GroupError::BadWord {
                word: format!("#{index}"),
                reason: "table indices only exist in Cayley groups".into(),
            }),
        }
    }

    /// Normal form of a raw word of signed 1-based generator letters.
    pub fn canonicalize(&self, word: &[i32]) -> Result<GroupElement, GroupError> {
        let n = self.num_generators();
        if let Some(&bad) = word.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > n) {
            return Err(GroupError::GeneratorOutOfRange {
                letter: bad,
                generators: n,
            });
        }
        let form = match &self.kind {
            BackendKind::FreeGroup { .. } => {
                CanonicalForm::Word(free::reduce(word.iter().copied()).into_boxed_slice())
            }
            BackendKind::FreeProductCyclic { orders } => {
                CanonicalForm::Syllables(fpc::from_letters(orders, word).into_boxed_slice())
            }
            BackendKind::FiniteCayley(t) => {
                let mut acc = t.identity();
                for &l in word {
                    let g = t.generators()[l.unsigned_abs() as usize - 1];
                    let g = if l < 0 { t.inverse(g) } else { g };
                    acc = t.multiply(acc, g);
                }
                CanonicalForm::Index(acc)
            }
            BackendKind::RewritingSystem(r) => {
                CanonicalForm::Word(r.reduce(word)?.into_boxed_slice())
            }
        };
        Ok(self.wrap(form))
    }

    fn check(&self, x: &GroupElement) -> Result<(), GroupError> {
        if x.backend == self.id {
            Ok(())
        } else {
            Err(GroupError::BackendMismatch)
        }
    }

    pub fn multiply(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.wrap(self.mul_forms(&x.form, &y.form)?))
    }

    pub fn invert(&self, x: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(x)?;
        Ok(self.wrap(self.inv_form(&x.form)?))
    }

    /// Product of two forms already known to belong to this backend.
    pub(crate) fn mul_forms(
        &self,
        x: &CanonicalForm,
        y: &CanonicalForm,
    ) -> Result<CanonicalForm, GroupError> {
        Ok(match (&self.kind, x, y) {
            (BackendKind::FreeGroup { .. }, CanonicalForm::Word(a), CanonicalForm::Word(b)) => {
                CanonicalForm::Word(free::multiply(a, b).into_boxed_slice())
            }
            (
                BackendKind::FreeProductCyclic { orders },
                CanonicalForm::Syllables(a),
                CanonicalForm::Syllables(b),
            ) => CanonicalForm::Syllables(fpc::multiply(orders, a, b).into_boxed_slice()),
            (BackendKind::FiniteCayley(t), CanonicalForm::Index(a), CanonicalForm::Index(b)) => {
                CanonicalForm::Index(t.multiply(*a, *b))
            }
            (BackendKind::RewritingSystem(r), CanonicalForm::Word(a), CanonicalForm::Word(b)) => {
                let mut w = Vec::with_capacity(a.len() + b.len());
                w.extend_from_slice(a);
                w.extend_from_slice(b);
                CanonicalForm::Word(r.reduce(&w)?.into_boxed_slice())
            }
            _ => return Err(GroupError::BackendMismatch),
        })
    }

    pub(crate) fn inv_form(&self, x: &CanonicalForm) -> Result<CanonicalForm, GroupError> {
        Ok(match (&self.kind, x) {
            (BackendKind::FreeGroup { .. }, CanonicalForm::Word(a)) => {
                CanonicalForm::Word(free::invert(a).into_boxed_slice())
            }
            (BackendKind::FreeProductCyclic { orders }, CanonicalForm::Syllables(a)) => {
                CanonicalForm::Syllables(fpc::invert(orders, a).into_boxed_slice())
            }
            (BackendKind::FiniteCayley(t), CanonicalForm::Index(a)) => {
                CanonicalForm::Index(t.inverse(*a))
            }
            (BackendKind::RewritingSystem(r), CanonicalForm::Word(a)) => {
                CanonicalForm::Word(r.reduce(&free::invert(a))?.into_boxed_slice())
            }
            _ => return Err(GroupError::BackendMismatch),
        })
    }

    /// Parses a word over `a..z` with `'` marking an inverse letter.
    /// `1` (or the empty string) is the identity and `#k` names element `k`
    /// of a Cayley table.
    pub fn parse_word(&self, text: &str) -> Result<GroupElement, GroupError> {
        let text = text.trim();
        if let Some(idx) = text.strip_prefix('#') {
            let index: u32 = idx.parse().map_err(|_| GroupError::BadWord {
                word: text.into(),
                reason: "expected a table index after '#'".into(),
            })?;
            return self.table_element(index);
        }
        let letters = parse_letters(text)?;
        self.canonicalize(&letters)
    }

    /// Inverse of [`parse_word`](Self::parse_word).
    pub fn format(&self, x: &GroupElement) -> String {
        format_form(&x.form)
    }

    /// `{a, a', b, b', ...}` for free groups and `{g, g^-1}` per factor for
    /// free products (a single letter when the factor has order 2).
    pub fn standard_generators(&self) -> Result<GeneratingSet, GroupError> {
        let mut elems = Vec::new();
        for i in 0..self.num_generators() {
            let g = self.generator(i)?;
            elems.push(g.clone());
            elems.push(self.invert(&g)?);
        }
        GeneratingSet::new(self, elems)
    }
}

fn letter_char(l: i32) -> String {
    let c = (b'a' + (l.unsigned_abs() - 1) as u8) as char;
    if l < 0 {
        format!("{c}'")
    } else {
        c.to_string()
    }
}

pub(crate) fn format_form(form: &CanonicalForm) -> String {
    match form {
        CanonicalForm::Word(w) if w.is_empty() => "1".into(),
        CanonicalForm::Syllables(s) if s.is_empty() => "1".into(),
        CanonicalForm::Word(w) => w.iter().map(|&l| letter_char(l)).collect(),
        CanonicalForm::Syllables(s) => s
            .iter()
            .map(|syl| {
                let l = (syl.factor as i32 + 1) * syl.exp.signum();
                letter_char(l).repeat(syl.exp.unsigned_abs() as usize)
            })
            .collect(),
        CanonicalForm::Index(i) => format!("#{i}"),
    }
}

/// Letters of a word such as `ab'a`; `1` and the empty string are empty.
pub fn parse_letters(text: &str) -> Result<Vec<i32>, GroupError> {
    let text = text.trim();
    if text.is_empty() || text == "1" {
        return Ok(Vec::new());
    }
    let mut out: Vec<i32> = Vec::new();
    for c in text.chars() {
        match c {
            'a'..='z' => out.push((c as u8 - b'a') as i32 + 1),
            '\'' => match out.last_mut() {
                Some(l) if *l > 0 => *l = -*l,
                _ => {
                    return Err(GroupError::BadWord {
                        word: text.into(),
                        reason: "misplaced inverse mark".into(),
                    })
                }
            },
            _ => {
                return Err(GroupError::BadWord {
                    word: text.into(),
                    reason: format!("unexpected character '{c}'"),
                })
            }
        }
    }
    Ok(out)
}

/// A finite deduplicated subset of a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingSet {
    elements: Vec<GroupElement>,
    symmetric: bool,
    contains_identity: bool,
}

impl GeneratingSet {
    /// Drops duplicates (keeping first occurrences) and records whether the
    /// set is closed under inversion and whether it contains the identity.
    pub fn new(group: &GroupBackend, elements: Vec<GroupElement>) -> Result<Self, GroupError> {
        if elements.is_empty() {
            return Err(GroupError::EmptyGeneratingSet);
        }
        let mut seen = HashSet::new();
        let mut unique = Vec::with_capacity(elements.len());
        for e in elements {
            group.check(&e)?;
            if seen.insert(e.clone()) {
                unique.push(e);
            }
        }
        let symmetric = unique
            .iter()
            .map(|x| group.invert(x).map(|i| seen.contains(&i)))
            .collect::<Result<Vec<bool>, _>>()?
            .into_iter()
            .all(|b| b);
        let contains_identity = unique.iter().any(|x| group.is_identity(x));
        Ok(GeneratingSet {
            elements: unique,
            symmetric,
            contains_identity,
        })
    }

    /// Comma-separated words, or `standard`.
    pub fn parse(group: &GroupBackend, text: &str) -> Result<Self, GroupError> {
        if text.trim() == "standard" {
            return group.standard_generators();
        }
        let elems = text
            .split(',')
            .map(|w| group.parse_word(w))
            .collect::<Result<Vec<_>, _>>()?;
        GeneratingSet::new(group, elems)
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn contains_identity(&self) -> bool {
        self.contains_identity
    }

    pub fn describe(&self, group: &GroupBackend) -> String {
        let words: Vec<String> = self.elements.iter().map(|e| group.format(e)).collect();
        words.join(",")
    }
}

/// True iff `set` is closed under inversion.
pub fn validate_symmetric(group: &GroupBackend, set: &GeneratingSet) -> bool {
    let members: HashSet<&GroupElement> = set.elements().iter().collect();
    set.elements().iter().all(|x| match group.invert(x) {
        Ok(inv) => members.contains(&inv),
        Err(_) => false,
    })
}

impl fmt::Display for GroupBackend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}
