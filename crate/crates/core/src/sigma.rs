//! The universal semigroup Σ of a Γ-semigroup: normal forms of the
//! rewriting system with concatenate-then-reduce multiplication.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::finite::{ElementSet, FiniteSemigroup};
use crate::gamma::GammaSemigroup;
use crate::rewrite::{is_irreducible, reduce, Letter, Word};

/// Default cap on `|Σ|` below which the multiplication table is materialized.
pub const DEFAULT_TABLE_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SigmaError {
    #[error("word [{0}] is reducible")]
    Reducible(Word),
    #[error("internal invariant: irreducible word [{0}] has no normal-form shape")]
    NoShape(Word),
    #[error("letter out of range in [{0}]")]
    Range(Word),
    #[error("bad element `{0}`: expected x<i>, g<j>, g<j>.x<i>, x<i>.g<j> or g<j>.x<i>.g<k>")]
    Syntax(String),
    #[error("internal invariant: Σ' is not closed, {a} * {b} = {product}")]
    NotClosed {
        a: SigmaElement,
        b: SigmaElement,
        product: SigmaElement,
    },
    #[error("|Σ| = {size} exceeds the table cap {cap}")]
    TooLarge { size: usize, cap: usize },
}

/// One of the five irreducible shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SigmaElement {
    X(usize),
    G(usize),
    GX(usize, usize),
    XG(usize, usize),
    GXG(usize, usize, usize),
}

impl SigmaElement {
    pub fn to_word(self) -> Word {
        use Letter::{G, S};
        let letters = match self {
            SigmaElement::X(x) => vec![S(x)],
            SigmaElement::G(g) => vec![G(g)],
            SigmaElement::GX(g, x) => vec![G(g), S(x)],
            SigmaElement::XG(x, g) => vec![S(x), G(g)],
            SigmaElement::GXG(g, x, h) => vec![G(g), S(x), G(h)],
        };
        Word::new(letters).expect("nonempty")
    }

    pub fn is_gamma(self) -> bool {
        matches!(self, SigmaElement::G(_))
    }

    /// Shape name: `x`, `g`, `gx`, `xg` or `gxg`.
    pub fn shape(self) -> &'static str {
        match self {
            SigmaElement::X(_) => "x",
            SigmaElement::G(_) => "g",
            SigmaElement::GX(..) => "gx",
            SigmaElement::XG(..) => "xg",
            SigmaElement::GXG(..) => "gxg",
        }
    }

    fn in_range(self, n: usize, m: usize) -> bool {
        match self {
            SigmaElement::X(x) => x < n,
            SigmaElement::G(g) => g < m,
            SigmaElement::GX(g, x) | SigmaElement::XG(x, g) => x < n && g < m,
            SigmaElement::GXG(g, x, h) => x < n && g < m && h < m,
        }
    }
}

impl fmt::Display for SigmaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SigmaElement::X(x) => write!(f, "x{x}"),
            SigmaElement::G(g) => write!(f, "g{g}"),
            SigmaElement::GX(g, x) => write!(f, "g{g}.x{x}"),
            SigmaElement::XG(x, g) => write!(f, "x{x}.g{g}"),
            SigmaElement::GXG(g, x, h) => write!(f, "g{g}.x{x}.g{h}"),
        }
    }
}

impl FromStr for SigmaElement {
    type Err = SigmaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SigmaError::Syntax(s.to_string());
        let parts: Vec<(char, usize)> = s
            .split('.')
            .map(|p| {
                let mut chars = p.chars();
                let kind = chars.next().ok_or_else(bad)?;
                let digits = chars.as_str();
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad());
                }
                Ok((kind, digits.parse().map_err(|_| bad())?))
            })
            .collect::<Result<_, _>>()?;
        match parts.as_slice() {
            [('x', x)] => Ok(SigmaElement::X(*x)),
            [('g', g)] => Ok(SigmaElement::G(*g)),
            [('g', g), ('x', x)] => Ok(SigmaElement::GX(*g, *x)),
            [('x', x), ('g', g)] => Ok(SigmaElement::XG(*x, *g)),
            [('g', g), ('x', x), ('g', h)] => Ok(SigmaElement::GXG(*g, *x, *h)),
            _ => Err(bad()),
        }
    }
}

/// The shape of an irreducible word.
pub fn classify_normal_form(gs: &GammaSemigroup, w: &Word) -> Result<SigmaElement, SigmaError> {
    use Letter::{G, S};
    if w.check(gs).is_err() {
        return Err(SigmaError::Range(w.clone()));
    }
    if !is_irreducible(w) {
        return Err(SigmaError::Reducible(w.clone()));
    }
    match *w.letters() {
        [S(x)] => Ok(SigmaElement::X(x)),
        [G(g)] => Ok(SigmaElement::G(g)),
        [G(g), S(x)] => Ok(SigmaElement::GX(g, x)),
        [S(x), G(g)] => Ok(SigmaElement::XG(x, g)),
        [G(g), S(x), G(h)] => Ok(SigmaElement::GXG(g, x, h)),
        _ => Err(SigmaError::NoShape(w.clone())),
    }
}

/// The Σ-class of an arbitrary word.
pub fn element_of_word(gs: &GammaSemigroup, w: &Word) -> Result<SigmaElement, SigmaError> {
    if w.check(gs).is_err() {
        return Err(SigmaError::Range(w.clone()));
    }
    classify_normal_form(gs, &reduce(gs, w))
}

/// `a · b`: concatenate the normal forms and reduce.
pub fn sigma_multiply(gs: &GammaSemigroup, a: SigmaElement, b: SigmaElement) -> SigmaElement {
    let w = reduce(gs, &a.to_word().concat(&b.to_word()));
    classify_normal_form(gs, &w).expect("reduce yields a normal form")
}

/// `n + m + 2nm + nm²`.
pub fn sigma_cardinality(n: usize, m: usize) -> usize {
    n + m + 2 * n * m + n * m * m
}

/// Σ with a fixed element indexing: all `X`, then all `G`, then `GX`
/// (γ-major), `XG` (x-major), and `GXG` in lexicographic `(γ, x, γ')` order.
#[derive(Clone)]
pub struct Sigma {
    gs: GammaSemigroup,
    cap: usize,
    table: Option<FiniteSemigroup>,
}

impl Sigma {
    /// Σ with the multiplication table built when `|Σ| ≤ DEFAULT_TABLE_CAP`.
    pub fn new(gs: &GammaSemigroup) -> Self {
        Self::with_cap(gs, DEFAULT_TABLE_CAP)
    }

    pub fn with_cap(gs: &GammaSemigroup, cap: usize) -> Self {
        let mut sigma = Sigma {
            gs: gs.clone(),
            cap,
            table: None,
        };
        let size = sigma.len();
        if size <= cap {
            let elems: Vec<SigmaElement> = sigma.elements().collect();
            let product = elems
                .iter()
                .flat_map(|&a| elems.iter().map(move |&b| (a, b)))
                .map(|(a, b)| sigma.index_of(sigma_multiply(gs, a, b)))
                .collect();
            let labels = elems.iter().map(|e| e.to_string()).collect();
            let table = FiniteSemigroup::new(size, product)
                .and_then(|t| t.with_labels(labels))
                .expect("products are valid indices");
            sigma.table = Some(table);
        }
        sigma
    }

    pub fn gamma_semigroup(&self) -> &GammaSemigroup {
        &self.gs
    }

    pub fn len(&self) -> usize {
        sigma_cardinality(self.gs.s_size(), self.gs.gamma_size())
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn index_of(&self, e: SigmaElement) -> usize {
        let (n, m) = (self.gs.s_size(), self.gs.gamma_size());
        match e {
            SigmaElement::X(x) => x,
            SigmaElement::G(g) => n + g,
            SigmaElement::GX(g, x) => n + m + g * n + x,
            SigmaElement::XG(x, g) => n + m + n * m + x * m + g,
            SigmaElement::GXG(g, x, h) => n + m + 2 * n * m + (g * n + x) * m + h,
        }
    }

    pub fn element(&self, idx: usize) -> SigmaElement {
        let (n, m) = (self.gs.s_size(), self.gs.gamma_size());
        assert!(idx < self.len(), "Σ index {idx} out of range");
        if idx < n {
            return SigmaElement::X(idx);
        }
        let idx = idx - n;
        if idx < m {
            return SigmaElement::G(idx);
        }
        let idx = idx - m;
        if idx < n * m {
            return SigmaElement::GX(idx / n, idx % n);
        }
        let idx = idx - n * m;
        if idx < n * m {
            return SigmaElement::XG(idx / m, idx % m);
        }
        let idx = idx - n * m;
        SigmaElement::GXG(idx / (n * m), (idx / m) % n, idx % m)
    }

    /// Checks that `e` belongs to this Σ.
    pub fn contains(&self, e: SigmaElement) -> bool {
        e.in_range(self.gs.s_size(), self.gs.gamma_size())
    }

    pub fn elements(&self) -> impl Iterator<Item = SigmaElement> + '_ {
        (0..self.len()).map(|i| self.element(i))
    }

    pub fn mul(&self, a: SigmaElement, b: SigmaElement) -> SigmaElement {
        match &self.table {
            Some(t) => self.element(t.mul(self.index_of(a), self.index_of(b))),
            None => sigma_multiply(&self.gs, a, b),
        }
    }

    pub fn table(&self) -> Option<&FiniteSemigroup> {
        self.table.as_ref()
    }

    pub fn semigroup(&self) -> Result<&FiniteSemigroup, SigmaError> {
        self.table.as_ref().ok_or(SigmaError::TooLarge {
            size: self.len(),
            cap: self.cap,
        })
    }

    /// Index of `X(x)`, the image of `x ∈ S`.
    pub fn embed_s(&self, x: usize) -> usize {
        self.index_of(SigmaElement::X(x))
    }

    pub fn embed_gamma(&self, g: usize) -> usize {
        self.index_of(SigmaElement::G(g))
    }

    /// Indices of the image of `S` in Σ.
    pub fn s_image(&self) -> ElementSet {
        (0..self.gs.s_size()).collect()
    }

    /// Indices of every element that is not a bare `G(γ)`.
    pub fn prime_indices(&self) -> ElementSet {
        (0..self.len()).filter(|&i| !self.element(i).is_gamma()).collect()
    }

    /// `Σ′ = Σ ∖ Γ` as a standalone semigroup, indices in Σ order with the
    /// Γ block removed.
    pub fn prime(&self) -> Result<FiniteSemigroup, SigmaError> {
        let table = self.semigroup()?;
        table.restrict(&self.prime_indices()).map_err(|e| match e {
            crate::finite::FiniteError::NotClosed { a, b, product } => SigmaError::NotClosed {
                a: self.element(a),
                b: self.element(b),
                product: self.element(product),
            },
            other => unreachable!("restricting a valid table: {other}"),
        })
    }
}

impl fmt::Debug for Sigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Sigma")
            .field("gs", &self.gs)
            .field("len", &self.len())
            .field("tabulated", &self.table.is_some())
            .finish()
    }
}

/// Σ with its table.
pub fn enumerate_sigma(gs: &GammaSemigroup) -> Sigma {
    Sigma::new(gs)
}

/// Σ′ as a standalone semigroup.
pub fn sigma_prime(gs: &GammaSemigroup) -> Result<FiniteSemigroup, SigmaError> {
    Sigma::new(gs).prime()
}

/// Closure of `{X(x)} ∪ {G(γ)}` under [`sigma_multiply`], by worklist
/// saturation. Shares nothing with [`Sigma`]'s enumeration.
pub fn sigma_closure_oracle(gs: &GammaSemigroup) -> BTreeSet<SigmaElement> {
    let mut found: BTreeSet<SigmaElement> = BTreeSet::new();
    let mut order: Vec<SigmaElement> = Vec::new();
    let mut queue: VecDeque<SigmaElement> = (0..gs.s_size())
        .map(SigmaElement::X)
        .chain((0..gs.gamma_size()).map(SigmaElement::G))
        .collect();
    while let Some(e) = queue.pop_front() {
        if !found.insert(e) {
            continue;
        }
        order.push(e);
        for &other in &order {
            for p in [sigma_multiply(gs, e, other), sigma_multiply(gs, other, e)] {
                if !found.contains(&p) {
                    queue.push_back(p);
                }
            }
        }
    }
    found
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomomorphismError {
    #[error("Γ differs: source has {source_size} elements, target has {target}")]
    GammaMismatch { source_size: usize, target: usize },
    #[error("φ has {found} entries, expected {expected}")]
    Length { expected: usize, found: usize },
    #[error("φ({x}) = {image} is out of range")]
    Range { x: usize, image: usize },
    #[error("φ is not a Γ-homomorphism: φ(x{x} g{gamma} x{y}) = x{lhs} but φ(x{x}) g{gamma} φ(x{y}) = x{rhs}")]
    NotGammaHomomorphism {
        x: usize,
        gamma: usize,
        y: usize,
        lhs: usize,
        rhs: usize,
    },
    #[error("Σ is too large to tabulate")]
    TooLarge,
    #[error("internal invariant: induced map fails {0}")]
    Invariant(String),
}

/// The homomorphism `Σ → Σ′` induced by a Γ-homomorphism `φ: S → S′`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedHomomorphism {
    phi: Vec<usize>,
    /// Σ index to target Σ index.
    map: Vec<usize>,
    pub pairs_checked: usize,
}

impl InducedHomomorphism {
    pub fn apply(&self, e: SigmaElement) -> SigmaElement {
        let f = |x: usize| self.phi[x];
        match e {
            SigmaElement::X(x) => SigmaElement::X(f(x)),
            SigmaElement::G(g) => SigmaElement::G(g),
            SigmaElement::GX(g, x) => SigmaElement::GX(g, f(x)),
            SigmaElement::XG(x, g) => SigmaElement::XG(f(x), g),
            SigmaElement::GXG(g, x, h) => SigmaElement::GXG(g, f(x), h),
        }
    }

    pub fn index_map(&self) -> &[usize] {
        &self.map
    }
}

/// First `(x, γ, y)` with `φ(xγy) ≠ φ(x)γφ(y)`.
pub fn gamma_homomorphism_witness(
    source: &GammaSemigroup,
    target: &GammaSemigroup,
    phi: &[usize],
) -> Option<(usize, usize, usize)> {
    for x in 0..source.s_size() {
        for g in 0..source.gamma_size() {
            for y in 0..source.s_size() {
                if phi[source.mul(x, g, y)] != target.mul(phi[x], g, phi[y]) {
                    return Some((x, g, y));
                }
            }
        }
    }
    None
}

/// Builds the shape-wise extension of `phi` and verifies that it is
/// multiplicative on every pair, fixes every `G(γ)`, and agrees with `phi`
/// on the image of `S`.
pub fn induced_homomorphism(
    source: &Sigma,
    target: &Sigma,
    phi: &[usize],
) -> Result<InducedHomomorphism, HomomorphismError> {
    let (gs, gt) = (source.gamma_semigroup(), target.gamma_semigroup());
    if gs.gamma_size() != gt.gamma_size() {
        return Err(HomomorphismError::GammaMismatch {
            source_size: gs.gamma_size(),
            target: gt.gamma_size(),
        });
    }
    if phi.len() != gs.s_size() {
        return Err(HomomorphismError::Length {
            expected: gs.s_size(),
            found: phi.len(),
        });
    }
    if let Some((x, &image)) = phi.iter().enumerate().find(|(_, &v)| v >= gt.s_size()) {
        return Err(HomomorphismError::Range { x, image });
    }
    if let Some((x, gamma, y)) = gamma_homomorphism_witness(gs, gt, phi) {
        return Err(HomomorphismError::NotGammaHomomorphism {
            x,
            gamma,
            y,
            lhs: phi[gs.mul(x, gamma, y)],
            rhs: gt.mul(phi[x], gamma, phi[y]),
        });
    }

    let mut hom = InducedHomomorphism {
        phi: phi.to_vec(),
        map: Vec::with_capacity(source.len()),
        pairs_checked: 0,
    };
    hom.map = source.elements().map(|e| target.index_of(hom.apply(e))).collect();

    let st = source.semigroup().map_err(|_| HomomorphismError::TooLarge)?;
    let tt = target.semigroup().map_err(|_| HomomorphismError::TooLarge)?;
    for a in st.elements() {
        for b in st.elements() {
            if hom.map[st.mul(a, b)] != tt.mul(hom.map[a], hom.map[b]) {
                return Err(HomomorphismError::Invariant(format!(
                    "multiplicativity at ({}, {})",
                    source.element(a),
                    source.element(b)
                )));
            }
            hom.pairs_checked += 1;
        }
    }
    for g in 0..gs.gamma_size() {
        if hom.map[source.embed_gamma(g)] != target.embed_gamma(g) {
            return Err(HomomorphismError::Invariant(format!("to fix g{g}")));
        }
    }
    for (x, &image) in phi.iter().enumerate() {
        if hom.map[source.embed_s(x)] != target.embed_s(image) {
            return Err(HomomorphismError::Invariant(format!("the generator square at x{x}")));
        }
    }
    Ok(hom)
}
