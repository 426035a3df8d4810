//! Principal one-sided and quasi-ideals on both sides of the S ↪ Σ
//! embedding, Green's L, R and H relations, and the Γ-Green theorem check.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::finite::{ElementSet, FiniteSemigroup};
use crate::gamma::GammaSemigroup;
use crate::sigma::{Sigma, SigmaElement, SigmaError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdealKind {
    Left,
    Right,
    Quasi,
    TwoSided,
}

impl IdealKind {
    pub const ONE_SIDED_AND_QUASI: [IdealKind; 3] = [IdealKind::Left, IdealKind::Right, IdealKind::Quasi];
}

impl fmt::Display for IdealKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IdealKind::Left => "left",
            IdealKind::Right => "right",
            IdealKind::Quasi => "quasi",
            IdealKind::TwoSided => "two-sided",
        })
    }
}

impl FromStr for IdealKind {
    type Err = IdealError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "left" => Ok(IdealKind::Left),
            "right" => Ok(IdealKind::Right),
            "quasi" => Ok(IdealKind::Quasi),
            "two-sided" => Ok(IdealKind::TwoSided),
            _ => Err(IdealError::Kind(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Carrier {
    Gamma,
    Sigma,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("unknown ideal kind `{0}`")]
    Kind(String),
    #[error("x{index} out of range (|S| = {size})")]
    Range { index: usize, size: usize },
    #[error("{0} is not an element of Σ")]
    NotInSigma(SigmaElement),
    #[error(transparent)]
    Sigma(#[from] SigmaError),
}

/// A principal ideal together with the carrier it lives in. Members are
/// s-indices on the Γ side and Σ indices on the Σ side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealSet {
    pub carrier: Carrier,
    pub kind: IdealKind,
    pub generator: usize,
    pub members: ElementSet,
}

/// `SΓA`
fn s_gamma_left(gs: &GammaSemigroup, set: &ElementSet) -> ElementSet {
    let mut out = ElementSet::new();
    for &a in set {
        for s in 0..gs.s_size() {
            for g in 0..gs.gamma_size() {
                out.insert(gs.mul(s, g, a));
            }
        }
    }
    out
}

/// `AΓS`
fn s_gamma_right(gs: &GammaSemigroup, set: &ElementSet) -> ElementSet {
    let mut out = ElementSet::new();
    for &a in set {
        for s in 0..gs.s_size() {
            for g in 0..gs.gamma_size() {
                out.insert(gs.mul(a, g, s));
            }
        }
    }
    out
}

/// `(x)ℓ = SΓx ∪ {x}`, `(x)r = xΓS ∪ {x}`, `(x)q = (x)ℓ ∩ (x)r`, and
/// `(x) = {x} ∪ SΓx ∪ xΓS ∪ SΓxΓS`.
pub fn principal_ideal_gamma(gs: &GammaSemigroup, kind: IdealKind, x: usize) -> Result<IdealSet, IdealError> {
    if x >= gs.s_size() {
        return Err(IdealError::Range {
            index: x,
            size: gs.s_size(),
        });
    }
    let single = ElementSet::from([x]);
    let left = || {
        let mut l = s_gamma_left(gs, &single);
        l.insert(x);
        l
    };
    let right = || {
        let mut r = s_gamma_right(gs, &single);
        r.insert(x);
        r
    };
    let members = match kind {
        IdealKind::Left => left(),
        IdealKind::Right => right(),
        IdealKind::Quasi => left().intersection(&right()).copied().collect(),
        IdealKind::TwoSided => {
            let l = left();
            let mut all = s_gamma_right(gs, &l);
            all.extend(l);
            all.extend(right());
            all
        }
    };
    Ok(IdealSet {
        carrier: Carrier::Gamma,
        kind,
        generator: x,
        members,
    })
}

/// Closure test for a subset of `S` under the Γ-side definitions:
/// left `SΓL ⊆ L`, right `RΓS ⊆ R`, quasi `QΓS ∩ SΓQ ⊆ Q`.
pub fn is_gamma_ideal(gs: &GammaSemigroup, kind: IdealKind, set: &ElementSet) -> bool {
    if set.is_empty() {
        return false;
    }
    match kind {
        IdealKind::Left => s_gamma_left(gs, set).is_subset(set),
        IdealKind::Right => s_gamma_right(gs, set).is_subset(set),
        IdealKind::TwoSided => s_gamma_left(gs, set).is_subset(set) && s_gamma_right(gs, set).is_subset(set),
        IdealKind::Quasi => {
            let right = s_gamma_right(gs, set);
            s_gamma_left(gs, set).intersection(&right).all(|e| set.contains(e))
        }
    }
}

/// `Γ`-subsemigroup test: `AΓA ⊆ A`.
pub fn is_gamma_subsemigroup(gs: &GammaSemigroup, set: &ElementSet) -> bool {
    !set.is_empty()
        && set.iter().all(|&a| {
            set.iter()
                .all(|&b| (0..gs.gamma_size()).all(|g| set.contains(&gs.mul(a, g, b))))
        })
}

/// Principal ideal in an arbitrary finite semigroup: `S¹a`, `aS¹`,
/// `S¹a ∩ aS¹` or `S¹aS¹`.
pub fn principal_ideal(sg: &FiniteSemigroup, kind: IdealKind, a: usize) -> ElementSet {
    match kind {
        IdealKind::Left => sg.principal_left(a),
        IdealKind::Right => sg.principal_right(a),
        IdealKind::Quasi => sg.principal_quasi(a),
        IdealKind::TwoSided => sg.principal_two_sided(a),
    }
}

pub fn is_ideal(sg: &FiniteSemigroup, kind: IdealKind, set: &ElementSet) -> bool {
    match kind {
        IdealKind::Left => sg.is_left_ideal(set),
        IdealKind::Right => sg.is_right_ideal(set),
        IdealKind::Quasi => sg.is_quasi_ideal(set),
        IdealKind::TwoSided => sg.is_two_sided_ideal(set),
    }
}

/// Principal ideal of `e` inside the Σ table.
pub fn principal_ideal_sigma(sigma: &Sigma, kind: IdealKind, e: SigmaElement) -> Result<IdealSet, IdealError> {
    if !sigma.contains(e) {
        return Err(IdealError::NotInSigma(e));
    }
    let table = sigma.semigroup()?;
    let generator = sigma.index_of(e);
    Ok(IdealSet {
        carrier: Carrier::Sigma,
        kind,
        generator,
        members: principal_ideal(table, kind, generator),
    })
}

/// The Σ-side set predicted from a Γ-side ideal: `A ∪ ΓA` for left,
/// `A ∪ AΓ` for right, and `A` itself for quasi.
pub fn predicted_sigma_ideal(sigma: &Sigma, kind: IdealKind, gamma_side: &ElementSet) -> ElementSet {
    let m = sigma.gamma_semigroup().gamma_size();
    let mut out: ElementSet = gamma_side.iter().map(|&y| sigma.embed_s(y)).collect();
    for &y in gamma_side {
        for g in 0..m {
            match kind {
                IdealKind::Left => {
                    out.insert(sigma.index_of(SigmaElement::GX(g, y)));
                }
                IdealKind::Right => {
                    out.insert(sigma.index_of(SigmaElement::XG(y, g)));
                }
                IdealKind::Quasi | IdealKind::TwoSided => {}
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrespondenceFailure {
    pub x: usize,
    pub kind: IdealKind,
    /// Σ indices predicted from the Γ side.
    pub expected: ElementSet,
    /// Σ indices actually generated in the table.
    pub actual: ElementSet,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CorrespondenceReport {
    pub checked: usize,
    pub failures: Vec<CorrespondenceFailure>,
}

impl CorrespondenceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failures_of(&self, kind: IdealKind) -> impl Iterator<Item = &CorrespondenceFailure> {
        self.failures.iter().filter(move |f| f.kind == kind)
    }
}

/// Compares, for every `x ∈ S` and each requested kind, the principal ideal
/// of `X(x)` in Σ with the set predicted from `(x)ℓ^Γ`, `(x)r^Γ` or `(x)q^Γ`.
pub fn check_ideal_correspondence_for(sigma: &Sigma, kinds: &[IdealKind]) -> Result<CorrespondenceReport, IdealError> {
    let gs = sigma.gamma_semigroup();
    let table = sigma.semigroup()?;
    let mut report = CorrespondenceReport::default();
    for x in 0..gs.s_size() {
        for &kind in kinds {
            let gamma_side = principal_ideal_gamma(gs, kind, x)?.members;
            let expected = predicted_sigma_ideal(sigma, kind, &gamma_side);
            let actual = principal_ideal(table, kind, sigma.embed_s(x));
            report.checked += 1;
            if expected != actual {
                report.failures.push(CorrespondenceFailure {
                    x,
                    kind,
                    expected,
                    actual,
                });
            }
        }
    }
    Ok(report)
}

pub fn check_ideal_correspondence(sigma: &Sigma) -> Result<CorrespondenceReport, IdealError> {
    check_ideal_correspondence_for(sigma, &IdealKind::ONE_SIDED_AND_QUASI)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    L,
    R,
    H,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::L => "L",
            Relation::R => "R",
            Relation::H => "H",
        })
    }
}

/// L-, R- and H-class ids for every element. Ids are numbered in order of
/// each class's smallest element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreenStructure {
    pub l_class: Vec<usize>,
    pub r_class: Vec<usize>,
    pub h_class: Vec<usize>,
}

fn class_ids<K: std::hash::Hash + Eq>(keys: impl IntoIterator<Item = K>) -> Vec<usize> {
    let mut seen: HashMap<K, usize> = HashMap::new();
    keys.into_iter()
        .map(|k| {
            let next = seen.len();
            *seen.entry(k).or_insert(next)
        })
        .collect()
}

impl GreenStructure {
    /// From the principal left and right ideal of every element.
    pub fn from_ideals(left: Vec<ElementSet>, right: Vec<ElementSet>) -> Self {
        let l_class = class_ids(left);
        let r_class = class_ids(right);
        let h_class = class_ids(l_class.iter().copied().zip(r_class.iter().copied()));
        GreenStructure {
            l_class,
            r_class,
            h_class,
        }
    }

    pub fn len(&self) -> usize {
        self.l_class.len()
    }

    pub fn is_empty(&self) -> bool {
        self.l_class.is_empty()
    }

    fn ids(&self, rel: Relation) -> &[usize] {
        match rel {
            Relation::L => &self.l_class,
            Relation::R => &self.r_class,
            Relation::H => &self.h_class,
        }
    }

    /// The class of `a` under `rel`.
    pub fn class_of(&self, rel: Relation, a: usize) -> ElementSet {
        let ids = self.ids(rel);
        (0..ids.len()).filter(|&b| ids[b] == ids[a]).collect()
    }

    /// All classes of `rel`, ordered by class id.
    pub fn classes(&self, rel: Relation) -> Vec<ElementSet> {
        let ids = self.ids(rel);
        let count = ids.iter().copied().max().map_or(0, |m| m + 1);
        let mut out = vec![ElementSet::new(); count];
        for (a, &id) in ids.iter().enumerate() {
            out[id].insert(a);
        }
        out
    }
}

/// Green structure of a finite semigroup via `S¹a` and `aS¹`.
pub fn green_structure(sg: &FiniteSemigroup) -> GreenStructure {
    GreenStructure::from_ideals(
        sg.elements().map(|a| sg.principal_left(a)).collect(),
        sg.elements().map(|a| sg.principal_right(a)).collect(),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HCorrespondence {
    pub x: usize,
    /// `H_x^Γ` as s-indices.
    pub gamma_class: ElementSet,
    /// `H_x^Σ` as Σ indices.
    pub sigma_class: ElementSet,
}

impl HCorrespondence {
    pub fn holds(&self, sigma: &Sigma) -> bool {
        let embedded: ElementSet = self.gamma_class.iter().map(|&y| sigma.embed_s(y)).collect();
        embedded == self.sigma_class
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaGreen {
    pub structure: GreenStructure,
    pub correspondence: Vec<HCorrespondence>,
    /// `x` for which `H_x^Σ ≠ H_x^Γ`. A nonzero count means the principal
    /// ideal definition of the Γ-side relations disagrees with Σ.
    pub mismatches: Vec<usize>,
}

impl GammaGreen {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Γ-side Green structure from `(x)ℓ^Γ` and `(x)r^Γ`, and the comparison
/// `H_x^Σ = H_x^Γ` for every `x`.
pub fn gamma_green_structure(sigma: &Sigma) -> Result<GammaGreen, IdealError> {
    let gs = sigma.gamma_semigroup();
    let n = gs.s_size();
    let left = (0..n)
        .map(|x| principal_ideal_gamma(gs, IdealKind::Left, x).map(|i| i.members))
        .collect::<Result<_, _>>()?;
    let right = (0..n)
        .map(|x| principal_ideal_gamma(gs, IdealKind::Right, x).map(|i| i.members))
        .collect::<Result<_, _>>()?;
    let structure = GreenStructure::from_ideals(left, right);
    let sigma_green = green_structure(sigma.semigroup()?);
    let correspondence: Vec<HCorrespondence> = (0..n)
        .map(|x| HCorrespondence {
            x,
            gamma_class: structure.class_of(Relation::H, x),
            sigma_class: sigma_green.class_of(Relation::H, sigma.embed_s(x)),
        })
        .collect();
    let mismatches = correspondence.iter().filter(|c| !c.holds(sigma)).map(|c| c.x).collect();
    Ok(GammaGreen {
        structure,
        correspondence,
        mismatches,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreenTheoremEntry {
    pub x: usize,
    /// Some `y ∈ H_x^Γ` with `xγ₀y ∈ H_x^Γ`, when one exists.
    pub premise: Option<usize>,
    pub h_class: ElementSet,
    /// `H_x^Γ` is a group under `S_γ₀`; `None` when the premise fails.
    pub group: Option<bool>,
    /// `H_x^Σ` is a group under the Σ product; `None` when the premise fails.
    pub sigma_group: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreenTheoremReport {
    pub entries: Vec<GreenTheoremEntry>,
}

impl GreenTheoremReport {
    pub fn applicable(&self) -> usize {
        self.entries.iter().filter(|e| e.premise.is_some()).count()
    }

    pub fn failures(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| e.group == Some(false) || e.sigma_group == Some(false))
            .count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }
}

/// For every `x` whose H-class contains `y` and `xγ₀y`, checks that the
/// class is a subgroup of `S_γ₀`, and that `H_x^Σ` is a subgroup of Σ.
pub fn check_green_theorem(sigma: &Sigma) -> Result<GreenTheoremReport, IdealError> {
    let gs = sigma.gamma_semigroup();
    let g0 = gs.gamma0();
    let green = gamma_green_structure(sigma)?;
    let s_g0 = gs.derived_semigroup(g0).expect("γ₀ in range");
    let table = sigma.semigroup()?;
    let entries = green
        .correspondence
        .iter()
        .map(|c| {
            let x = c.x;
            let h = &c.gamma_class;
            let premise = h.iter().copied().find(|&y| h.contains(&gs.mul(x, g0, y)));
            let (group, sigma_group) = match premise {
                Some(_) => (
                    Some(s_g0.subset_group_identity(h).is_some()),
                    Some(table.subset_group_identity(&c.sigma_class).is_some()),
                ),
                None => (None, None),
            };
            GreenTheoremEntry {
                x,
                premise,
                h_class: h.clone(),
                group,
                sigma_group,
            }
        })
        .collect();
    Ok(GreenTheoremReport { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::named;
    use crate::instances;

    fn set(xs: &[usize]) -> ElementSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn gamma_principal_ideals() {
        let e3 = instances::e3();
        assert_eq!(
            principal_ideal_gamma(&e3, IdealKind::Left, 0).unwrap().members,
            set(&[0, 1])
        );
        assert_eq!(
            principal_ideal_gamma(&e3, IdealKind::Right, 0).unwrap().members,
            set(&[0])
        );
        let e4 = instances::e4();
        assert_eq!(
            principal_ideal_gamma(&e4, IdealKind::Left, 1).unwrap().members,
            set(&[0, 1])
        );
        let e1 = instances::e1();
        for kind in [IdealKind::Left, IdealKind::Right, IdealKind::Quasi, IdealKind::TwoSided] {
            assert_eq!(principal_ideal_gamma(&e1, kind, 0).unwrap().members, set(&[0]));
        }
        assert!(matches!(
            principal_ideal_gamma(&e1, IdealKind::Left, 1),
            Err(IdealError::Range { index: 1, size: 1 })
        ));
    }

    #[test]
    fn sigma_principal_ideals_on_e1() {
        let sigma = Sigma::new(&instances::e1());
        let left = principal_ideal_sigma(&sigma, IdealKind::Left, SigmaElement::X(0)).unwrap();
        let expected: ElementSet = [SigmaElement::X(0), SigmaElement::GX(0, 0), SigmaElement::GX(1, 0)]
            .into_iter()
            .map(|e| sigma.index_of(e))
            .collect();
        assert_eq!(left.members, expected);
        let quasi = principal_ideal_sigma(&sigma, IdealKind::Quasi, SigmaElement::X(0)).unwrap();
        assert_eq!(quasi.members, set(&[0]));
        for e in sigma.elements().collect::<Vec<_>>() {
            for kind in [IdealKind::Left, IdealKind::Right, IdealKind::Quasi, IdealKind::TwoSided] {
                let ideal = principal_ideal_sigma(&sigma, kind, e).unwrap();
                assert!(ideal.members.contains(&sigma.index_of(e)));
            }
        }
        assert!(principal_ideal_sigma(&sigma, IdealKind::Left, SigmaElement::X(4)).is_err());
    }

    #[test]
    fn correspondence_on_small_instances() {
        for gs in [instances::e1(), instances::e3(), instances::e4()] {
            let report = check_ideal_correspondence(&Sigma::new(&gs)).unwrap();
            assert!(report.passed(), "{report:?}");
            assert_eq!(report.checked, 3 * gs.s_size());
        }
    }

    #[test]
    fn green_of_small_semigroups() {
        let g = green_structure(&named::cyclic_group(2));
        assert_eq!(g.classes(Relation::H), vec![set(&[0, 1])]);
        let lz = green_structure(&named::left_zero(2));
        assert_eq!(lz.classes(Relation::L), vec![set(&[0, 1])]);
        assert_eq!(lz.classes(Relation::R), vec![set(&[0]), set(&[1])]);
        assert_eq!(lz.classes(Relation::H), vec![set(&[0]), set(&[1])]);

        let sigma = Sigma::new(&instances::e1());
        let g = green_structure(sigma.semigroup().unwrap());
        assert_eq!(g.class_of(Relation::H, sigma.embed_s(0)), set(&[0]));
    }

    #[test]
    fn gamma_green_cases() {
        let e4 = gamma_green_structure(&Sigma::new(&instances::e4())).unwrap();
        assert_eq!(e4.structure.classes(Relation::H), vec![set(&[0, 1])]);
        assert!(e4.passed());
        let e3 = gamma_green_structure(&Sigma::new(&instances::e3())).unwrap();
        assert_eq!(e3.structure.classes(Relation::H), vec![set(&[0]), set(&[1])]);
        assert!(e3.passed());
        let e1 = gamma_green_structure(&Sigma::new(&instances::e1())).unwrap();
        assert_eq!(e1.structure.classes(Relation::H), vec![set(&[0])]);
    }

    #[test]
    fn green_theorem_cases() {
        let r = check_green_theorem(&Sigma::new(&instances::e4())).unwrap();
        assert_eq!(r.entries[0].premise, Some(0));
        assert_eq!(r.entries[0].group, Some(true));
        assert_eq!(r.applicable(), 2);
        assert!(r.passed());

        let r = check_green_theorem(&Sigma::new(&instances::e3())).unwrap();
        assert_eq!(r.entries[0].premise, Some(0));
        assert_eq!(r.entries[0].h_class, set(&[0]));
        assert!(r.passed());

        // null semigroup: H-classes {0}, {1}; 1γ1 = 0 leaves {1}
        let r = check_green_theorem(&Sigma::new(&instances::null_sandwich())).unwrap();
        assert_eq!(r.entries[1].premise, None);
        assert_eq!(r.entries[1].group, None);
        assert!(r.passed());
    }

    #[test]
    fn green_theorem_partial_premise() {
        let gs = GammaSemigroup::from_fn(2, 1, 0, |_, _, _| 0).unwrap();
        let r = check_green_theorem(&Sigma::new(&gs)).unwrap();
        // x0: H = {0}, 0γ0 = 0 -> applicable; x1: H = {1}, 1γ1 = 0 -> not
        assert_eq!(r.applicable(), 1);
        assert_eq!(r.failures(), 0);
    }

    #[test]
    fn idempotents_always_satisfy_the_premise() {
        // every finite S_γ₀ has an idempotent e, and eγ₀e = e ∈ H_e
        for (name, gs) in instances::catalogue() {
            let r = check_green_theorem(&Sigma::new(&gs)).unwrap();
            assert!(r.applicable() >= 1, "{name}");
        }
        let empty = GreenTheoremReport { entries: vec![] };
        assert_eq!((empty.applicable(), empty.failures()), (0, 0));
        assert!(empty.passed());
    }

    #[test]
    fn closure_predicates() {
        let e4 = instances::e4();
        assert!(is_gamma_ideal(&e4, IdealKind::Left, &set(&[0, 1])));
        assert!(!is_gamma_ideal(&e4, IdealKind::Left, &set(&[0])));
        assert!(!is_gamma_ideal(&e4, IdealKind::Quasi, &ElementSet::new()));
        assert!(is_gamma_subsemigroup(&e4, &set(&[0])));
        assert!(!is_gamma_subsemigroup(&e4, &set(&[1])));
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("quasi".parse::<IdealKind>(), Ok(IdealKind::Quasi));
        assert!("middle".parse::<IdealKind>().is_err());
    }
}
