//! Plain finite semigroups given by an explicit multiplication table.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Sorted set of element indices. Used for ideals and Green classes.
pub type ElementSet = BTreeSet<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiniteError {
    #[error("semigroup must have at least one element")]
    Empty,
    #[error("table has {found} entries, expected {expected}")]
    TableShape { expected: usize, found: usize },
    #[error("product {a}*{b} = {value} is out of range for size {size}")]
    OutOfRange {
        a: usize,
        b: usize,
        value: usize,
        size: usize,
    },
    #[error("{0} labels given for a semigroup of size {1}")]
    LabelCount(usize, usize),
    #[error("subset is not closed: {a}*{b} = {product} leaves it")]
    NotClosed { a: usize, b: usize, product: usize },
}

/// A finite semigroup `{0, .., size-1}` with a row-major product table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    size: usize,
    product: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl FiniteSemigroup {
    /// Builds a semigroup from a row-major table. Associativity is not
    /// checked here, see [`FiniteSemigroup::associativity_witness`].
    pub fn new(size: usize, product: Vec<usize>) -> Result<Self, FiniteError> {
        if size == 0 {
            return Err(FiniteError::Empty);
        }
        if product.len() != size * size {
            return Err(FiniteError::TableShape {
                expected: size * size,
                found: product.len(),
            });
        }
        if let Some(pos) = product.iter().position(|&v| v >= size) {
            return Err(FiniteError::OutOfRange {
                a: pos / size,
                b: pos % size,
                value: product[pos],
                size,
            });
        }
        Ok(FiniteSemigroup {
            size,
            product,
            labels: None,
        })
    }

    pub fn from_fn(size: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self, FiniteError> {
        let product = (0..size * size).map(|i| f(i / size, i % size)).collect();
        Self::new(size, product)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, FiniteError> {
        if labels.len() != self.size {
            return Err(FiniteError::LabelCount(labels.len(), self.size));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.product[a * self.size + b]
    }

    pub fn table(&self) -> &[usize] {
        &self.product
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of an element; falls back to its index.
    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    /// First triple `(a, b, c)` with `(ab)c != a(bc)`, if any.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        for a in self.elements() {
            for b in self.elements() {
                let ab = self.mul(a, b);
                for c in self.elements() {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_witness().is_none()
    }

    /// The subsemigroup on `subset`, reindexed in increasing order of the
    /// original indices. Labels are carried over.
    pub fn restrict(&self, subset: &ElementSet) -> Result<FiniteSemigroup, FiniteError> {
        let members: Vec<usize> = subset.iter().copied().collect();
        if members.is_empty() {
            return Err(FiniteError::Empty);
        }
        let mut position = vec![usize::MAX; self.size];
        for (i, &m) in members.iter().enumerate() {
            position[m] = i;
        }
        let k = members.len();
        let mut product = Vec::with_capacity(k * k);
        for &a in &members {
            for &b in &members {
                let p = self.mul(a, b);
                if position[p] == usize::MAX {
                    return Err(FiniteError::NotClosed { a, b, product: p });
                }
                product.push(position[p]);
            }
        }
        let labels = self
            .labels
            .as_ref()
            .map(|l| members.iter().map(|&m| l[m].clone()).collect());
        Ok(FiniteSemigroup {
            size: k,
            product,
            labels,
        })
    }

    /// `S¹a = {a} ∪ Sa`.
    pub fn principal_left(&self, a: usize) -> ElementSet {
        let mut set: ElementSet = self.elements().map(|s| self.mul(s, a)).collect();
        set.insert(a);
        set
    }

    /// `aS¹ = {a} ∪ aS`.
    pub fn principal_right(&self, a: usize) -> ElementSet {
        let mut set: ElementSet = self.elements().map(|s| self.mul(a, s)).collect();
        set.insert(a);
        set
    }

    /// `S¹a ∩ aS¹`.
    pub fn principal_quasi(&self, a: usize) -> ElementSet {
        let left = self.principal_left(a);
        self.principal_right(a).intersection(&left).copied().collect()
    }

    /// `S¹aS¹ = {a} ∪ Sa ∪ aS ∪ SaS`.
    pub fn principal_two_sided(&self, a: usize) -> ElementSet {
        let left = self.principal_left(a);
        let mut set = ElementSet::new();
        for &l in &left {
            set.insert(l);
            for s in self.elements() {
                set.insert(self.mul(l, s));
            }
        }
        set
    }

    pub fn is_left_ideal(&self, set: &ElementSet) -> bool {
        !set.is_empty()
            && set
                .iter()
                .all(|&m| self.elements().all(|s| set.contains(&self.mul(s, m))))
    }

    pub fn is_right_ideal(&self, set: &ElementSet) -> bool {
        !set.is_empty()
            && set
                .iter()
                .all(|&m| self.elements().all(|s| set.contains(&self.mul(m, s))))
    }

    pub fn is_two_sided_ideal(&self, set: &ElementSet) -> bool {
        self.is_left_ideal(set) && self.is_right_ideal(set)
    }

    /// `QS ∩ SQ ⊆ Q`.
    pub fn is_quasi_ideal(&self, set: &ElementSet) -> bool {
        if set.is_empty() {
            return false;
        }
        let qs: ElementSet = set
            .iter()
            .flat_map(|&q| self.elements().map(move |s| (q, s)))
            .map(|(q, s)| self.mul(q, s))
            .collect();
        let sq: ElementSet = set
            .iter()
            .flat_map(|&q| self.elements().map(move |s| (s, q)))
            .map(|(s, q)| self.mul(s, q))
            .collect();
        qs.intersection(&sq).all(|p| set.contains(p))
    }

    pub fn is_subsemigroup(&self, set: &ElementSet) -> bool {
        !set.is_empty() && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    pub fn is_idempotent(&self, e: usize) -> bool {
        self.mul(e, e) == e
    }

    /// Identity of the whole semigroup, if it has one.
    pub fn identity(&self) -> Option<usize> {
        self.elements()
            .find(|&e| self.elements().all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
    }

    /// Checks the group axioms on `subset` under this product: closure, a
    /// two-sided identity inside the subset, and an inverse for every member.
    /// Returns the identity on success.
    pub fn subset_group_identity(&self, subset: &ElementSet) -> Option<usize> {
        if !self.is_subsemigroup(subset) {
            return None;
        }
        let identity = subset
            .iter()
            .copied()
            .find(|&e| subset.iter().all(|&x| self.mul(e, x) == x && self.mul(x, e) == x))?;
        let all_invertible = subset.iter().all(|&x| {
            subset
                .iter()
                .any(|&y| self.mul(x, y) == identity && self.mul(y, x) == identity)
        });
        all_invertible.then_some(identity)
    }

    pub fn is_group(&self) -> bool {
        let all: ElementSet = self.elements().collect();
        self.subset_group_identity(&all).is_some()
    }

    /// Renders a set using element labels, e.g. `{x0, g1.x0}`.
    pub fn format_set(&self, set: &ElementSet) -> String {
        let parts: Vec<String> = set.iter().map(|&e| self.label(e)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for FiniteSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteSemigroup")
            .field("size", &self.size)
            .field("product", &self.product)
            .finish()
    }
}

/// Small named semigroups used as seeds and as test fixtures.
pub mod named {
    use super::FiniteSemigroup;

    /// The cyclic group `Z_k` under addition.
    pub fn cyclic_group(k: usize) -> FiniteSemigroup {
        FiniteSemigroup::from_fn(k, |a, b| (a + b) % k).expect("k >= 1")
    }

    /// `xy = x` for all `x, y`.
    pub fn left_zero(k: usize) -> FiniteSemigroup {
        FiniteSemigroup::from_fn(k, |a, _| a).expect("k >= 1")
    }

    /// `xy = y` for all `x, y`.
    pub fn right_zero(k: usize) -> FiniteSemigroup {
        FiniteSemigroup::from_fn(k, |_, b| b).expect("k >= 1")
    }

    /// `xy = 0` for all `x, y`.
    pub fn null(k: usize) -> FiniteSemigroup {
        FiniteSemigroup::from_fn(k, |_, _| 0).expect("k >= 1")
    }

    /// Rectangular band `I × J` with `(i, j)(k, l) = (i, l)`, indexed `i * cols + j`.
    pub fn rectangular_band(rows: usize, cols: usize) -> FiniteSemigroup {
        FiniteSemigroup::from_fn(rows * cols, |a, b| (a / cols) * cols + b % cols).expect("rows, cols >= 1")
    }

    /// `{0, .., k-1}` under `min`; a chain semilattice with zero `0`.
    pub fn min_chain(k: usize) -> FiniteSemigroup {
        FiniteSemigroup::from_fn(k, |a, b| a.min(b)).expect("k >= 1")
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn rejects_bad_tables() {
        assert_eq!(FiniteSemigroup::new(0, vec![]), Err(FiniteError::Empty));
        assert!(matches!(
            FiniteSemigroup::new(2, vec![0, 1, 1]),
            Err(FiniteError::TableShape { expected: 4, found: 3 })
        ));
        assert!(matches!(
            FiniteSemigroup::new(2, vec![0, 1, 2, 0]),
            Err(FiniteError::OutOfRange {
                a: 1,
                b: 0,
                value: 2,
                ..
            })
        ));
    }

    #[test]
    fn named_seeds_are_associative() {
        for sg in [
            cyclic_group(3),
            left_zero(3),
            right_zero(2),
            null(3),
            rectangular_band(2, 3),
            min_chain(4),
        ] {
            assert!(sg.is_associative(), "{sg:?}");
        }
        let bad = FiniteSemigroup::new(2, vec![1, 1, 1, 0]).unwrap();
        assert_eq!(bad.associativity_witness(), Some((0, 0, 1)));
    }

    #[test]
    fn principal_ideals_of_left_zero() {
        let lz = left_zero(2);
        assert_eq!(lz.principal_left(0), ElementSet::from([0, 1]));
        assert_eq!(lz.principal_right(0), ElementSet::from([0]));
        assert_eq!(lz.principal_quasi(1), ElementSet::from([1]));
        assert_eq!(lz.principal_two_sided(1), ElementSet::from([0, 1]));
    }

    #[test]
    fn restriction_and_closure() {
        let z4 = cyclic_group(4);
        let sub = z4.restrict(&ElementSet::from([0, 2])).unwrap();
        assert!(sub.is_group());
        assert!(matches!(
            z4.restrict(&ElementSet::from([1])),
            Err(FiniteError::NotClosed { a: 1, b: 1, product: 2 })
        ));
    }

    #[test]
    fn group_detection() {
        assert!(cyclic_group(2).is_group());
        assert!(!left_zero(2).is_group());
        assert!(!null(2).is_group());
        assert_eq!(cyclic_group(3).identity(), Some(0));
        assert_eq!(min_chain(3).identity(), Some(2));
        assert!(cyclic_group(1).is_group());
    }

    #[test]
    fn quasi_ideal_predicate() {
        let lz = left_zero(2);
        assert!(lz.is_quasi_ideal(&ElementSet::from([0])));
        assert!(!lz.is_quasi_ideal(&ElementSet::new()));
        let n = null(3);
        assert!(!n.is_quasi_ideal(&ElementSet::from([1])));
        assert!(n.is_quasi_ideal(&ElementSet::from([0])));
    }
}
