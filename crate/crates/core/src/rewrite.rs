//! The length-reducing rewriting system on words over `S ∪ Γ`:
//!
//! ```text
//! (u, γ₁, γ₂, v) → (u, γ₁, v)
//! (u, x, γ, y, v) → (u, xγy, v)
//! (u, x, y, v)    → (u, xγ₀y, v)
//! ```
//!
//! Every rule shortens the word, so reduction terminates; local confluence is
//! checked instance-wise by [`check_local_confluence`].

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::gamma::{GammaSemigroup, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    S(usize),
    G(usize),
}

impl Letter {
    pub fn is_s(self) -> bool {
        matches!(self, Letter::S(_))
    }

    pub fn is_g(self) -> bool {
        matches!(self, Letter::G(_))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::S(i) => write!(f, "s{i}"),
            Letter::G(j) => write!(f, "g{j}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("a word must contain at least one letter")]
    Empty,
    #[error("bad token `{0}`: expected s<i> or g<j>")]
    Token(String),
    #[error("letter {letter} out of range (|S| = {s_size}, |Γ| = {gamma_size})")]
    Range {
        letter: Letter,
        s_size: usize,
        gamma_size: usize,
    },
}

impl FromStr for Letter {
    type Err = WordError;

    fn from_str(tok: &str) -> Result<Self, Self::Err> {
        let bad = || WordError::Token(tok.to_string());
        let (kind, digits) = tok.split_at(tok.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let index: usize = digits.parse().map_err(|_| bad())?;
        match kind {
            "s" => Ok(Letter::S(index)),
            "g" => Ok(Letter::G(index)),
            _ => Err(bad()),
        }
    }
}

/// A nonempty word of the free semigroup on `S ∪ Γ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self, WordError> {
        if letters.is_empty() {
            Err(WordError::Empty)
        } else {
            Ok(Word(letters))
        }
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Checks every letter against the carriers of `gs`.
    pub fn check(&self, gs: &GammaSemigroup) -> Result<(), WordError> {
        for &letter in &self.0 {
            let ok = match letter {
                Letter::S(i) => i < gs.s_size(),
                Letter::G(j) => j < gs.gamma_size(),
            };
            if !ok {
                return Err(WordError::Range {
                    letter,
                    s_size: gs.s_size(),
                    gamma_size: gs.gamma_size(),
                });
            }
        }
        Ok(())
    }

    /// Parses whitespace-separated tokens such as `s0 g1 s2`.
    pub fn parse_tokens<'a>(tokens: impl IntoIterator<Item = &'a str>) -> Result<Self, WordError> {
        let letters = tokens.into_iter().map(str::parse).collect::<Result<Vec<Letter>, _>>()?;
        Word::new(letters)
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Word::parse_tokens(s.split_whitespace())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// `(γ₁, γ₂) → γ₁`
    GammaGamma,
    /// `(x, γ, y) → xγy`
    SGammaS,
    /// `(x, y) → xγ₀y`
    SS,
}

impl Rule {
    pub fn width(self) -> usize {
        match self {
            Rule::SGammaS => 3,
            Rule::GammaGamma | Rule::SS => 2,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::GammaGamma => "gamma-gamma",
            Rule::SGammaS => "s-gamma-s",
            Rule::SS => "s-s",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Redex {
    pub position: usize,
    pub rule: Rule,
}

impl Redex {
    pub fn span(self) -> std::ops::Range<usize> {
        self.position..self.position + self.rule.width()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("rule {rule} does not match at position {position}")]
    NoMatch { position: usize, rule: Rule },
}

/// The redex starting at `pos`, if one does. At most one rule can match at a
/// given position; `SGammaS` is tried before `GammaGamma` and `SS`.
fn redex_at(letters: &[Letter], pos: usize) -> Option<Redex> {
    use Letter::{G, S};
    let rule = match letters.get(pos..)? {
        [S(_), G(_), S(_), ..] => Rule::SGammaS,
        [G(_), G(_), ..] => Rule::GammaGamma,
        [S(_), S(_), ..] => Rule::SS,
        _ => return None,
    };
    Some(Redex { position: pos, rule })
}

fn matches(letters: &[Letter], r: Redex) -> bool {
    use Letter::{G, S};
    matches!(
        (r.rule, letters.get(r.span())),
        (Rule::SGammaS, Some([S(_), G(_), S(_)]))
            | (Rule::GammaGamma, Some([G(_), G(_)]))
            | (Rule::SS, Some([S(_), S(_)]))
    )
}

/// All redexes of `w`, in increasing position.
pub fn redexes(w: &Word) -> Vec<Redex> {
    (0..w.len()).filter_map(|p| redex_at(&w.0, p)).collect()
}

pub fn is_irreducible(w: &Word) -> bool {
    (0..w.len()).all(|p| redex_at(&w.0, p).is_none())
}

/// Letter that replaces the window of a matched redex.
fn contract(gs: &GammaSemigroup, window: &[Letter], rule: Rule) -> Letter {
    use Letter::{G, S};
    match (rule, window) {
        (Rule::GammaGamma, [G(g1), G(_)]) => G(*g1),
        (Rule::SGammaS, [S(x), G(g), S(y)]) => S(gs.mul(*x, *g, *y)),
        (Rule::SS, [S(x), S(y)]) => S(gs.mul(*x, gs.gamma0(), *y)),
        _ => unreachable!("contract called on a non-matching window"),
    }
}

fn apply_in_place(gs: &GammaSemigroup, letters: &mut Vec<Letter>, r: Redex) {
    let replacement = contract(gs, &letters[r.span()], r.rule);
    letters.splice(r.span(), std::iter::once(replacement));
}

/// One rewrite step at `r`.
pub fn rewrite_once(gs: &GammaSemigroup, w: &Word, r: Redex) -> Result<Word, RewriteError> {
    if !matches(&w.0, r) {
        return Err(RewriteError::NoMatch {
            position: r.position,
            rule: r.rule,
        });
    }
    let mut letters = w.0.clone();
    apply_in_place(gs, &mut letters, r);
    Ok(Word(letters))
}

/// Normal form under the leftmost strategy.
///
/// After a rewrite at `p` only a window starting at `p - 2` or later can hold
/// a new redex, so scanning resumes there.
pub fn reduce(gs: &GammaSemigroup, w: &Word) -> Word {
    let mut letters = w.0.clone();
    let mut pos = 0;
    while pos < letters.len() {
        match redex_at(&letters, pos) {
            Some(r) => {
                apply_in_place(gs, &mut letters, r);
                pos = pos.saturating_sub(2);
            }
            None => pos += 1,
        }
    }
    Word(letters)
}

/// One recorded step of a reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub redex: Redex,
    pub before: Word,
    pub after: Word,
}

/// Leftmost reduction with every intermediate word recorded.
pub fn reduce_traced(gs: &GammaSemigroup, w: &Word) -> (Word, Vec<Step>) {
    reduce_with_strategy(gs, w, |_| 0)
}

/// Reduction where `choose` picks, at each step, an index into the current
/// list of redexes (sorted by position).
pub fn reduce_with_strategy(
    gs: &GammaSemigroup,
    w: &Word,
    mut choose: impl FnMut(&[Redex]) -> usize,
) -> (Word, Vec<Step>) {
    let mut current = w.clone();
    let mut steps = Vec::new();
    loop {
        let available = redexes(&current);
        if available.is_empty() {
            return (current, steps);
        }
        let redex = available[choose(&available) % available.len()];
        let next = rewrite_once(gs, &current, redex).expect("redex was just found");
        steps.push(Step {
            redex,
            before: current,
            after: next.clone(),
        });
        current = next;
    }
}

/// Reduction choosing a uniformly random redex each step.
pub fn reduce_random(gs: &GammaSemigroup, w: &Word, rng: &mut impl Rng) -> Word {
    reduce_with_strategy(gs, w, |rs| rng.gen_range(0..rs.len())).0
}

/// The five ways two redexes of this system can overlap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Overlap {
    /// `(x, y, γ, z)`: `SS` at 0, `SGammaS` at 1
    SsSgs,
    /// `(x, γ, y, z)`: `SGammaS` at 0, `SS` at 2
    SgsSs,
    /// `(x, γ, y, γ', z)`: `SGammaS` at 0 and 2
    SgsSgs,
    /// `(x, y, z)`: `SS` at 0 and 1
    SsSs,
    /// `(γ₁, γ₂, γ₃)`: `GammaGamma` at 0 and 1
    GgGg,
}

impl Overlap {
    pub const ALL: [Overlap; 5] = [
        Overlap::SsSgs,
        Overlap::SgsSs,
        Overlap::SgsSgs,
        Overlap::SsSs,
        Overlap::GgGg,
    ];

    /// Family number 1..=5.
    pub fn number(self) -> usize {
        Overlap::ALL.iter().position(|&o| o == self).unwrap() + 1
    }

    pub fn pattern(self) -> &'static str {
        match self {
            Overlap::SsSgs => "x y g z",
            Overlap::SgsSs => "x g y z",
            Overlap::SgsSgs => "x g y g' z",
            Overlap::SsSs => "x y z",
            Overlap::GgGg => "g1 g2 g3",
        }
    }

    /// `(number of S letters, number of Γ letters)` in the pattern.
    fn arity(self) -> (usize, usize) {
        match self {
            Overlap::SsSgs | Overlap::SgsSs => (3, 1),
            Overlap::SgsSgs => (3, 2),
            Overlap::SsSs => (3, 0),
            Overlap::GgGg => (0, 3),
        }
    }

    /// The two overlapping redexes.
    pub fn redexes(self) -> (Redex, Redex) {
        let r = |position, rule| Redex { position, rule };
        match self {
            Overlap::SsSgs => (r(0, Rule::SS), r(1, Rule::SGammaS)),
            Overlap::SgsSs => (r(0, Rule::SGammaS), r(2, Rule::SS)),
            Overlap::SgsSgs => (r(0, Rule::SGammaS), r(2, Rule::SGammaS)),
            Overlap::SsSs => (r(0, Rule::SS), r(1, Rule::SS)),
            Overlap::GgGg => (r(0, Rule::GammaGamma), r(1, Rule::GammaGamma)),
        }
    }

    /// Instantiates the pattern with the given S- and Γ-letters.
    pub fn instantiate(self, s: &[usize], g: &[usize]) -> Word {
        use Letter::{G, S};
        let letters = match self {
            Overlap::SsSgs => vec![S(s[0]), S(s[1]), G(g[0]), S(s[2])],
            Overlap::SgsSs => vec![S(s[0]), G(g[0]), S(s[1]), S(s[2])],
            Overlap::SgsSgs => vec![S(s[0]), G(g[0]), S(s[1]), G(g[1]), S(s[2])],
            Overlap::SsSs => vec![S(s[0]), S(s[1]), S(s[2])],
            Overlap::GgGg => vec![G(g[0]), G(g[1]), G(g[2])],
        };
        Word(letters)
    }

    /// Which family, if any, `w` is an instance of.
    pub fn classify(w: &Word) -> Option<Overlap> {
        use Letter::{G, S};
        match w.letters() {
            [S(_), S(_), G(_), S(_)] => Some(Overlap::SsSgs),
            [S(_), G(_), S(_), S(_)] => Some(Overlap::SgsSs),
            [S(_), G(_), S(_), G(_), S(_)] => Some(Overlap::SgsSgs),
            [S(_), S(_), S(_)] => Some(Overlap::SsSs),
            [G(_), G(_), G(_)] => Some(Overlap::GgGg),
            _ => None,
        }
    }

    pub fn instance_count(self, n: usize, m: usize) -> u64 {
        let (ks, kg) = self.arity();
        (n as u64).pow(ks as u32) * (m as u64).pow(kg as u32)
    }
}

impl fmt::Display for Overlap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "overlap {} ({})", self.number(), self.pattern())
    }
}

/// An overlap instance whose two one-step reducts have different normal forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPairFailure {
    pub family: Overlap,
    pub word: Word,
    pub left: Word,
    pub right: Word,
    pub left_normal: Word,
    pub right_normal: Word,
}

impl fmt::Display for CriticalPairFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: [{}] -> [{}] ->* [{}] but [{}] ->* [{}]",
            self.family, self.word, self.left, self.left_normal, self.right, self.right_normal
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConfluenceMode {
    Exhaustive,
    Sample { k: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyStats {
    pub family: Overlap,
    pub checked: u64,
    pub failures: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub mode: ConfluenceMode,
    pub families: [FamilyStats; 5],
    /// First failing instance per family, in family order.
    pub witnesses: Vec<CriticalPairFailure>,
    /// Set when the table has out-of-range entries and rewriting is undefined.
    pub range_violation: Option<Violation>,
}

impl ConfluenceReport {
    pub fn passed(&self) -> bool {
        self.range_violation.is_none() && self.families.iter().all(|f| f.failures == 0)
    }

    pub fn witness(&self, family: Overlap) -> Option<&CriticalPairFailure> {
        self.witnesses.iter().find(|w| w.family == family)
    }

    pub fn checked(&self) -> u64 {
        self.families.iter().map(|f| f.checked).sum()
    }
}

/// Resolves one overlap instance; `None` when both reducts join.
pub fn resolve_overlap(gs: &GammaSemigroup, family: Overlap, w: &Word) -> Option<CriticalPairFailure> {
    let (r1, r2) = family.redexes();
    let left = rewrite_once(gs, w, r1).expect("family pattern matches");
    let right = rewrite_once(gs, w, r2).expect("family pattern matches");
    let left_normal = reduce(gs, &left);
    let right_normal = reduce(gs, &right);
    (left_normal != right_normal).then(|| CriticalPairFailure {
        family,
        word: w.clone(),
        left,
        right,
        left_normal,
        right_normal,
    })
}

/// Mixed-radix odometer over `digits` positions with the given radices.
fn odometer(radices: Vec<usize>) -> impl Iterator<Item = Vec<usize>> {
    let total: usize = radices.iter().product();
    (0..total).map(move |mut code| {
        radices
            .iter()
            .map(|&r| {
                let d = code % r;
                code /= r;
                d
            })
            .collect()
    })
}

/// Instantiates the five overlap families and checks that every pair of
/// one-step reducts rejoins.
pub fn check_local_confluence(gs: &GammaSemigroup, mode: ConfluenceMode) -> ConfluenceReport {
    let (n, m) = (gs.s_size(), gs.gamma_size());
    let mut families = Overlap::ALL.map(|family| FamilyStats {
        family,
        checked: 0,
        failures: 0,
    });
    let mut witnesses = Vec::new();
    let validation = gs.validate();
    if let Some(v) = validation
        .violations
        .iter()
        .find(|v| matches!(v, Violation::Range { .. }))
    {
        return ConfluenceReport {
            mode,
            families,
            witnesses,
            range_violation: Some(*v),
        };
    }

    let mut record = |idx: usize, w: &Word, witnesses: &mut Vec<CriticalPairFailure>| {
        let family = Overlap::ALL[idx];
        families[idx].checked += 1;
        if let Some(failure) = resolve_overlap(gs, family, w) {
            families[idx].failures += 1;
            if !witnesses.iter().any(|x: &CriticalPairFailure| x.family == family) {
                witnesses.push(failure);
            }
        }
    };

    match mode {
        ConfluenceMode::Exhaustive => {
            for (idx, family) in Overlap::ALL.into_iter().enumerate() {
                let (ks, kg) = family.arity();
                let mut radices = vec![n; ks];
                radices.extend(std::iter::repeat_n(m, kg));
                for digits in odometer(radices) {
                    let w = family.instantiate(&digits[..ks], &digits[ks..]);
                    record(idx, &w, &mut witnesses);
                }
            }
        }
        ConfluenceMode::Sample { k, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..k {
                let idx = rng.gen_range(0..Overlap::ALL.len());
                let family = Overlap::ALL[idx];
                let (ks, kg) = family.arity();
                let s: Vec<usize> = (0..ks).map(|_| rng.gen_range(0..n)).collect();
                let g: Vec<usize> = (0..kg).map(|_| rng.gen_range(0..m)).collect();
                let w = family.instantiate(&s, &g);
                record(idx, &w, &mut witnesses);
            }
        }
    }
    witnesses.sort_by_key(|w| w.family);
    ConfluenceReport {
        mode,
        families,
        witnesses,
        range_violation: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;
    use Letter::{G, S};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn parses_tokens() {
        assert_eq!(w("s0 g1 s2").letters(), &[S(0), G(1), S(2)]);
        assert_eq!("".parse::<Word>(), Err(WordError::Empty));
        assert!(matches!("s0 x1".parse::<Word>(), Err(WordError::Token(_))));
        assert!(matches!("s".parse::<Word>(), Err(WordError::Token(_))));
        assert!(matches!("s1a".parse::<Word>(), Err(WordError::Token(_))));
        assert_eq!(w("s10 g3").to_string(), "s10 g3");
    }

    #[test]
    fn rewrite_once_examples() {
        let gs = instances::e1();
        let r = Redex {
            position: 0,
            rule: Rule::GammaGamma,
        };
        assert_eq!(rewrite_once(&gs, &w("g1 g0"), r), Ok(w("g1")));

        let e4 = instances::e4();
        let r = Redex {
            position: 0,
            rule: Rule::SGammaS,
        };
        assert_eq!(rewrite_once(&e4, &w("s1 g0 s1"), r), Ok(w("s0")));

        assert!(redexes(&w("g0 s0")).is_empty());
        assert_eq!(
            rewrite_once(
                &gs,
                &w("g0 s0"),
                Redex {
                    position: 0,
                    rule: Rule::SS
                }
            ),
            Err(RewriteError::NoMatch {
                position: 0,
                rule: Rule::SS
            })
        );
    }

    #[test]
    fn rewriting_shortens_by_rule_width_minus_one() {
        let e4 = instances::e4();
        for (word, redex, len) in [
            (
                "s0 s1 g0",
                Redex {
                    position: 0,
                    rule: Rule::SS,
                },
                2,
            ),
            (
                "s0 g0 s1 g0",
                Redex {
                    position: 0,
                    rule: Rule::SGammaS,
                },
                2,
            ),
            (
                "g0 g0 s1",
                Redex {
                    position: 0,
                    rule: Rule::GammaGamma,
                },
                2,
            ),
        ] {
            assert_eq!(rewrite_once(&e4, &w(word), redex).unwrap().len(), len);
        }
    }

    #[test]
    fn reduce_examples() {
        let gs = GammaSemigroup::from_fn(1, 4, 0, |_, _, _| 0).unwrap();
        assert_eq!(reduce(&gs, &w("g1 g2 g3")), w("g1"));
        assert_eq!(reduce(&instances::e4(), &w("s1 s1")), w("s0"));
        assert_eq!(reduce(&instances::e1(), &w("s0")), w("s0"));
        assert_eq!(reduce(&instances::e4(), &w("g0 s1 s1 g0 g0 s1 g0")), w("g0 s1 g0"));
    }

    #[test]
    fn trace_records_each_step() {
        let e4 = instances::e4();
        let (nf, steps) = reduce_traced(&e4, &w("s1 g0 s1 s1"));
        assert_eq!(nf, w("s1"));
        assert_eq!(steps.len(), 2);
        assert_eq!(steps[0].after, w("s0 s1"));
        assert!(steps.iter().all(|s| s.after.len() < s.before.len()));
    }

    #[test]
    fn confluence_on_trivial_instance() {
        let report = check_local_confluence(&instances::e1(), ConfluenceMode::Exhaustive);
        assert!(report.passed());
        // n=1, m=2: 2 + 2 + 4 + 1 + 8
        assert_eq!(report.checked(), 17);
    }

    #[test]
    fn corrupted_table_fails_overlap_three() {
        let report = check_local_confluence(&instances::corrupted(), ConfluenceMode::Exhaustive);
        assert!(!report.passed());
        let witness = report.witness(Overlap::SgsSgs).expect("overlap 3 witness");
        assert_eq!(Overlap::classify(&witness.word), Some(Overlap::SgsSgs));
        assert_ne!(witness.left_normal, witness.right_normal);
        // the gamma-only family never depends on the table
        assert_eq!(report.families[4].failures, 0);
    }

    #[test]
    fn range_violation_short_circuits() {
        let gs = GammaSemigroup::new(2, 1, vec![0, 1, 1, 2], 0).unwrap();
        let report = check_local_confluence(&gs, ConfluenceMode::Exhaustive);
        assert!(!report.passed());
        assert!(report.range_violation.is_some());
    }

    #[test]
    fn sampling_is_seeded() {
        let gs = crate::gamma::funcomp(2, 2).unwrap();
        let mode = ConfluenceMode::Sample { k: 200, seed: 7 };
        let a = check_local_confluence(&gs, mode);
        let b = check_local_confluence(&gs, mode);
        assert_eq!(a, b);
        assert!(a.passed());
        assert_eq!(a.checked(), 200);
    }

    #[test]
    fn overlap_counts() {
        assert_eq!(Overlap::SgsSgs.instance_count(4, 4), 4u64.pow(3) * 16);
        assert_eq!(Overlap::GgGg.instance_count(4, 3), 27);
    }
}
