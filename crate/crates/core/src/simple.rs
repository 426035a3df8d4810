//! Idempotents, kernels, minimal one-sided and quasi-ideals, complete
//! simplicity, and the transfer of complete simplicity (or of being a
//! group) from `S_γ₀` to every `S_γ`.

use std::fmt;

use thiserror::Error;

use crate::finite::{ElementSet, FiniteSemigroup};
use crate::gamma::GammaSemigroup;
use crate::ideals::{green_structure, Relation};
use crate::sigma::{Sigma, SigmaError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentAnalysis {
    pub idempotents: ElementSet,
    /// Pairs `(e, f)` with `e ≤ f`, i.e. `ef = fe = e`; reflexive pairs included.
    pub natural_order: Vec<(usize, usize)>,
    pub primitive: ElementSet,
    /// Two-sided zero. A one-element semigroup is treated as a trivial group
    /// and reports no zero.
    pub zero: Option<usize>,
    pub left_zeros: ElementSet,
    pub right_zeros: ElementSet,
}

impl IdempotentAnalysis {
    pub fn leq(&self, e: usize, f: usize) -> bool {
        self.natural_order.contains(&(e, f))
    }
}

pub fn idempotent_analysis(sg: &FiniteSemigroup) -> IdempotentAnalysis {
    let idempotents: ElementSet = sg.elements().filter(|&e| sg.is_idempotent(e)).collect();
    let mut natural_order = Vec::new();
    for &e in &idempotents {
        for &f in &idempotents {
            if sg.mul(e, f) == e && sg.mul(f, e) == e {
                natural_order.push((e, f));
            }
        }
    }
    let left_zeros: ElementSet = sg
        .elements()
        .filter(|&z| sg.elements().all(|x| sg.mul(z, x) == z))
        .collect();
    let right_zeros: ElementSet = sg
        .elements()
        .filter(|&z| sg.elements().all(|x| sg.mul(x, z) == z))
        .collect();
    let zero = if sg.size() > 1 {
        left_zeros.intersection(&right_zeros).next().copied()
    } else {
        None
    };
    let candidates: Vec<usize> = idempotents.iter().copied().filter(|&e| Some(e) != zero).collect();
    let primitive = candidates
        .iter()
        .copied()
        .filter(|&e| candidates.iter().all(|&f| f == e || !natural_order.contains(&(f, e))))
        .collect();
    IdempotentAnalysis {
        idempotents,
        natural_order,
        primitive,
        zero,
        left_zeros,
        right_zeros,
    }
}

/// Every principal two-sided ideal is the whole carrier.
pub fn is_simple(sg: &FiniteSemigroup) -> bool {
    sg.elements().all(|a| sg.principal_two_sided(a).len() == sg.size())
}

/// Every H-class contains an idempotent.
pub fn is_completely_regular(sg: &FiniteSemigroup) -> bool {
    let green = green_structure(sg);
    green
        .classes(Relation::H)
        .iter()
        .all(|h| h.iter().any(|&e| sg.is_idempotent(e)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureAnalysis {
    pub kernel: ElementSet,
    pub minimal_left_ideals: Vec<ElementSet>,
    pub minimal_right_ideals: Vec<ElementSet>,
    pub minimal_quasi_ideals: Vec<ElementSet>,
    pub maximal_subgroups: Vec<ElementSet>,
}

impl StructureAnalysis {
    pub fn union_of_minimal_quasi_ideals(&self) -> ElementSet {
        self.minimal_quasi_ideals.iter().flatten().copied().collect()
    }

    /// Identity of the maximal subgroup containing `a`.
    pub fn group_unit(&self, sg: &FiniteSemigroup, a: usize) -> Option<usize> {
        self.maximal_subgroups
            .iter()
            .find(|h| h.contains(&a))
            .and_then(|h| h.iter().copied().find(|&e| sg.is_idempotent(e)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("internal invariant: {0} inclusion-minimal principal ideals")]
    KernelNotUnique(usize),
}

/// Principal ideals `P(x)` with `P(y) = P(x)` for every `y ∈ P(x)`; these are
/// exactly the minimal ones of that kind.
fn minimal_principal(sg: &FiniteSemigroup, principal: impl Fn(usize) -> ElementSet) -> Vec<ElementSet> {
    let all: Vec<ElementSet> = sg.elements().map(&principal).collect();
    let mut found: Vec<ElementSet> = Vec::new();
    for p in &all {
        if p.iter().all(|&y| &all[y] == p) && !found.contains(p) {
            found.push(p.clone());
        }
    }
    found.sort();
    found
}

pub fn minimal_structures(sg: &FiniteSemigroup) -> Result<StructureAnalysis, StructureError> {
    let ideals: Vec<ElementSet> = sg.elements().map(|a| sg.principal_two_sided(a)).collect();
    let mut minimal: Vec<&ElementSet> = ideals
        .iter()
        .filter(|j| !ideals.iter().any(|k| k.len() < j.len() && k.is_subset(j)))
        .collect();
    minimal.sort();
    minimal.dedup();
    if minimal.len() != 1 {
        return Err(StructureError::KernelNotUnique(minimal.len()));
    }
    let kernel = minimal[0].clone();

    let green = green_structure(sg);
    let maximal_subgroups = green
        .classes(Relation::H)
        .into_iter()
        .filter(|h| h.iter().any(|&e| sg.is_idempotent(e)))
        .collect();

    Ok(StructureAnalysis {
        kernel,
        minimal_left_ideals: minimal_principal(sg, |a| sg.principal_left(a)),
        minimal_right_ideals: minimal_principal(sg, |a| sg.principal_right(a)),
        minimal_quasi_ideals: minimal_principal(sg, |a| sg.principal_quasi(a)),
        maximal_subgroups,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimplicityFailure {
    HasZero(usize),
    /// The principal two-sided ideal of this element is proper.
    NotSimple(usize),
    NoPrimitiveIdempotent,
}

impl fmt::Display for SimplicityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimplicityFailure::HasZero(z) => write!(f, "zero {z}"),
            SimplicityFailure::NotSimple(a) => write!(f, "proper ideal generated by {a}"),
            SimplicityFailure::NoPrimitiveIdempotent => f.write_str("no primitive idempotent"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompleteSimplicity {
    pub primitive_idempotent: Option<usize>,
    pub failures: Vec<SimplicityFailure>,
}

impl CompleteSimplicity {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Without zero, simple, and with a primitive idempotent.
pub fn is_completely_simple(sg: &FiniteSemigroup) -> CompleteSimplicity {
    let idem = idempotent_analysis(sg);
    let mut failures = Vec::new();
    if let Some(z) = idem.zero {
        failures.push(SimplicityFailure::HasZero(z));
    }
    if let Some(a) = sg.elements().find(|&a| sg.principal_two_sided(a).len() != sg.size()) {
        failures.push(SimplicityFailure::NotSimple(a));
    }
    let primitive_idempotent = idem.primitive.iter().next().copied();
    if primitive_idempotent.is_none() {
        failures.push(SimplicityFailure::NoPrimitiveIdempotent);
    }
    CompleteSimplicity {
        primitive_idempotent,
        failures,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransferMode {
    Group,
    CompletelySimple,
}

impl fmt::Display for TransferMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TransferMode::Group => "group",
            TransferMode::CompletelySimple => "completely-simple",
        })
    }
}

/// Facts about one `S_γ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedFacts {
    pub gamma: usize,
    pub completely_simple: bool,
    pub group: bool,
    pub completely_regular: bool,
    pub zero: Option<usize>,
    pub kernel_size: usize,
    pub size: usize,
}

impl DerivedFacts {
    fn of(gamma: usize, sg: &FiniteSemigroup) -> Result<Self, StructureError> {
        Ok(DerivedFacts {
            gamma,
            completely_simple: is_completely_simple(sg).holds(),
            group: sg.is_group(),
            completely_regular: is_completely_regular(sg),
            zero: idempotent_analysis(sg).zero,
            kernel_size: minimal_structures(sg)?.kernel.len(),
            size: sg.size(),
        })
    }

    fn satisfies(&self, mode: TransferMode) -> bool {
        let target = match mode {
            TransferMode::Group => self.group && self.completely_simple,
            TransferMode::CompletelySimple => self.completely_simple,
        };
        target && self.completely_regular && self.zero.is_none() && self.kernel_size == self.size
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaPrimeFacts {
    pub size: usize,
    pub completely_simple: bool,
    pub zero: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferReport {
    pub mode: TransferMode,
    pub gamma0: usize,
    pub premise: bool,
    /// Empty when the premise fails.
    pub derived: Vec<DerivedFacts>,
    pub sigma_prime: Option<SigmaPrimeFacts>,
}

impl TransferReport {
    /// True when the premise fails (nothing is claimed) or every claim holds.
    pub fn passed(&self) -> bool {
        if !self.premise {
            return true;
        }
        self.derived.iter().all(|d| d.satisfies(self.mode))
            && self
                .sigma_prime
                .as_ref()
                .is_some_and(|p| p.completely_simple && p.zero.is_none())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransferError {
    #[error(transparent)]
    Sigma(#[from] SigmaError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// Evaluates the premise on `S_γ₀`; if it holds, evaluates the conclusion
/// for every `S_γ` together with the Σ′ waypoint.
pub fn check_transfer(sigma: &Sigma, mode: TransferMode) -> Result<TransferReport, TransferError> {
    let gs: &GammaSemigroup = sigma.gamma_semigroup();
    let g0 = gs.gamma0();
    let base = gs.derived_semigroup(g0).expect("γ₀ in range");
    let premise = match mode {
        TransferMode::Group => base.is_group(),
        TransferMode::CompletelySimple => is_completely_simple(&base).holds(),
    };
    let mut report = TransferReport {
        mode,
        gamma0: g0,
        premise,
        derived: Vec::new(),
        sigma_prime: None,
    };
    if !premise {
        return Ok(report);
    }
    for g in 0..gs.gamma_size() {
        let sg = gs.derived_semigroup(g).expect("γ in range");
        report.derived.push(DerivedFacts::of(g, &sg)?);
    }
    let prime = sigma.prime()?;
    let cs = is_completely_simple(&prime);
    report.sigma_prime = Some(SigmaPrimeFacts {
        size: prime.size(),
        completely_simple: cs.holds(),
        zero: idempotent_analysis(&prime).zero,
    });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::named::*;
    use crate::instances;

    fn set(xs: &[usize]) -> ElementSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn idempotents_of_small_semigroups() {
        let g = idempotent_analysis(&cyclic_group(2));
        assert_eq!(g.idempotents, set(&[0]));
        assert_eq!(g.primitive, set(&[0]));
        assert_eq!(g.zero, None);

        let lz = idempotent_analysis(&left_zero(2));
        assert_eq!(lz.idempotents, set(&[0, 1]));
        assert_eq!(lz.primitive, set(&[0, 1]));
        assert!(!lz.leq(0, 1) && !lz.leq(1, 0));
        assert_eq!(lz.left_zeros, set(&[0, 1]));
        assert!(lz.right_zeros.is_empty());

        let nl = idempotent_analysis(&null(2));
        assert_eq!(nl.zero, Some(0));
        assert_eq!(nl.idempotents, set(&[0]));
        assert!(nl.primitive.is_empty());
    }

    #[test]
    fn primitive_excludes_zero_and_higher_idempotents() {
        // chain 0 < 1 < 2 under min: zero 0, primitive {1}
        let c = idempotent_analysis(&min_chain(3));
        assert_eq!(c.zero, Some(0));
        assert_eq!(c.primitive, set(&[1]));
        assert!(c.leq(1, 2) && !c.leq(2, 1));
    }

    #[test]
    fn one_element_semigroup_is_a_group() {
        let t = cyclic_group(1);
        assert_eq!(idempotent_analysis(&t).zero, None);
        assert!(is_completely_simple(&t).holds());
    }

    #[test]
    fn simplicity_and_regularity() {
        assert!(is_simple(&cyclic_group(2)));
        assert!(is_simple(&left_zero(2)));
        assert!(!is_simple(&null(2)));
        assert!(is_completely_regular(&cyclic_group(3)));
        assert!(is_completely_regular(&left_zero(2)));
        assert!(!is_completely_regular(&null(2)));
    }

    #[test]
    fn minimal_structures_examples() {
        let lz = minimal_structures(&left_zero(2)).unwrap();
        assert_eq!(lz.kernel, set(&[0, 1]));
        assert_eq!(lz.minimal_left_ideals, vec![set(&[0, 1])]);
        assert_eq!(lz.minimal_quasi_ideals, vec![set(&[0]), set(&[1])]);
        assert_eq!(lz.maximal_subgroups, lz.minimal_quasi_ideals);

        let g = minimal_structures(&cyclic_group(2)).unwrap();
        assert_eq!(g.kernel, set(&[0, 1]));
        assert_eq!(g.minimal_quasi_ideals, vec![set(&[0, 1])]);
        assert_eq!(g.group_unit(&cyclic_group(2), 1), Some(0));

        let e1 = instances::e1().derived_semigroup(0).unwrap();
        let t = minimal_structures(&e1).unwrap();
        assert_eq!(t.kernel, set(&[0]));
        assert_eq!(t.minimal_left_ideals, vec![set(&[0])]);
        assert_eq!(t.minimal_quasi_ideals, vec![set(&[0])]);
        assert_eq!(t.maximal_subgroups, vec![set(&[0])]);

        let n = minimal_structures(&null(3)).unwrap();
        assert_eq!(n.kernel, set(&[0]));
    }

    #[test]
    fn completely_simple_examples() {
        let lz = is_completely_simple(&left_zero(2));
        assert!(lz.holds());
        assert_eq!(lz.primitive_idempotent, Some(0));
        assert!(is_completely_simple(&cyclic_group(2)).holds());
        assert!(is_completely_simple(&rectangular_band(2, 3)).holds());
        let nl = is_completely_simple(&null(2));
        assert!(!nl.holds());
        assert!(nl.failures.contains(&SimplicityFailure::HasZero(0)));
        assert!(nl.failures.contains(&SimplicityFailure::NotSimple(0)));
    }

    #[test]
    fn transfer_examples() {
        let r = check_transfer(&Sigma::new(&instances::e3_prime()), TransferMode::CompletelySimple).unwrap();
        assert!(r.premise);
        assert_eq!(r.derived.len(), 2);
        assert_eq!(r.sigma_prime.as_ref().unwrap().size, 18);
        assert!(r.passed());

        let r = check_transfer(&Sigma::new(&instances::e4_prime()), TransferMode::Group).unwrap();
        assert!(r.premise);
        assert!(r.derived.iter().all(|d| d.group));
        assert!(r.passed());

        let r = check_transfer(&Sigma::new(&instances::null_sandwich()), TransferMode::CompletelySimple).unwrap();
        assert!(!r.premise);
        assert!(r.derived.is_empty() && r.sigma_prime.is_none());
        assert!(r.passed());

        // left-zero seed is not a group
        let r = check_transfer(&Sigma::new(&instances::e3_prime()), TransferMode::Group).unwrap();
        assert!(!r.premise);
    }

    #[test]
    fn e4_prime_second_product_is_a_group() {
        let s1 = instances::e4_prime().derived_semigroup(1).unwrap();
        assert_eq!(s1.identity(), Some(1));
        assert!(s1.is_group());
        for x in 0..2 {
            assert_eq!(s1.mul(x, x), 1);
        }
    }
}
