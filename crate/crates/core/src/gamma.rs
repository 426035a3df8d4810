//! Finite Γ-semigroups: a set `S`, a set `Γ`, and a ternary product
//! `S × Γ × S → S` satisfying `(aαb)βc = aα(bβc)`.

use std::fmt;

use thiserror::Error;

use crate::finite::{FiniteError, FiniteSemigroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GammaError {
    #[error("S must be nonempty")]
    EmptyS,
    #[error("Γ must be nonempty")]
    EmptyGamma,
    #[error("table has {found} entries, expected {expected}")]
    TableShape { expected: usize, found: usize },
    #[error("s-index {index} out of range (|S| = {size})")]
    SIndex { index: usize, size: usize },
    #[error("γ-index {index} out of range (|Γ| = {size})")]
    GammaIndex { index: usize, size: usize },
    #[error("invalid seed semigroup: {0}")]
    InvalidSeed(String),
    #[error(transparent)]
    Finite(#[from] FiniteError),
}

/// A finite Γ-semigroup with dense indices `S = {0..n}`, `Γ = {0..m}`.
///
/// Entries of the table are not range-checked on construction so that
/// [`GammaSemigroup::validate`] can report them; every other operation
/// assumes a validated value.
#[derive(Clone, PartialEq, Eq)]
pub struct GammaSemigroup {
    s_size: usize,
    gamma_size: usize,
    // index (a * m + γ) * n + b
    table: Vec<usize>,
    gamma0: usize,
}

/// One failed invariant of a Γ-semigroup table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    Range {
        a: usize,
        gamma: usize,
        b: usize,
        value: usize,
    },
    /// `(a α b) β c != a α (b β c)`
    Associativity {
        a: usize,
        b: usize,
        c: usize,
        alpha: usize,
        beta: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Range { a, gamma, b, value } => {
                write!(f, "range: x{a} g{gamma} x{b} = {value}")
            }
            Violation::Associativity { a, b, c, alpha, beta } => write!(
                f,
                "associativity: (x{a} g{alpha} x{b}) g{beta} x{c} != x{a} g{alpha} (x{b} g{beta} x{c})"
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has_range_violations(&self) -> bool {
        self.violations.iter().any(|v| matches!(v, Violation::Range { .. }))
    }
}

impl GammaSemigroup {
    /// `table` is laid out as `m` blocks of `n × n`, block `γ` row `a`
    /// column `b` holding `aγb`.
    pub fn new(s_size: usize, gamma_size: usize, table: Vec<usize>, gamma0: usize) -> Result<Self, GammaError> {
        if s_size == 0 {
            return Err(GammaError::EmptyS);
        }
        if gamma_size == 0 {
            return Err(GammaError::EmptyGamma);
        }
        let expected = s_size * s_size * gamma_size;
        if table.len() != expected {
            return Err(GammaError::TableShape {
                expected,
                found: table.len(),
            });
        }
        if gamma0 >= gamma_size {
            return Err(GammaError::GammaIndex {
                index: gamma0,
                size: gamma_size,
            });
        }
        let mut gs = GammaSemigroup {
            s_size,
            gamma_size,
            table: vec![0; expected],
            gamma0,
        };
        // convert block-major input into the internal layout
        for g in 0..gamma_size {
            for a in 0..s_size {
                for b in 0..s_size {
                    let v = table[(g * s_size + a) * s_size + b];
                    let slot = gs.slot(a, g, b);
                    gs.table[slot] = v;
                }
            }
        }
        Ok(gs)
    }

    pub fn from_fn(
        s_size: usize,
        gamma_size: usize,
        gamma0: usize,
        f: impl Fn(usize, usize, usize) -> usize,
    ) -> Result<Self, GammaError> {
        let mut table = Vec::with_capacity(s_size * s_size * gamma_size);
        for g in 0..gamma_size {
            for a in 0..s_size {
                for b in 0..s_size {
                    table.push(f(a, g, b));
                }
            }
        }
        Self::new(s_size, gamma_size, table, gamma0)
    }

    #[inline]
    fn slot(&self, a: usize, gamma: usize, b: usize) -> usize {
        (a * self.gamma_size + gamma) * self.s_size + b
    }

    pub fn s_size(&self) -> usize {
        self.s_size
    }

    pub fn gamma_size(&self) -> usize {
        self.gamma_size
    }

    pub fn gamma0(&self) -> usize {
        self.gamma0
    }

    /// Same table with a different distinguished `γ₀`.
    pub fn with_gamma0(&self, gamma0: usize) -> Result<Self, GammaError> {
        if gamma0 >= self.gamma_size {
            return Err(GammaError::GammaIndex {
                index: gamma0,
                size: self.gamma_size,
            });
        }
        Ok(GammaSemigroup { gamma0, ..self.clone() })
    }

    /// Unchecked `aγb`; panics if an index is out of range.
    #[inline]
    pub fn mul(&self, a: usize, gamma: usize, b: usize) -> usize {
        self.table[self.slot(a, gamma, b)]
    }

    /// Checked `aγb`.
    pub fn gamma_product(&self, a: usize, gamma: usize, b: usize) -> Result<usize, GammaError> {
        self.check_s(a)?;
        self.check_s(b)?;
        self.check_gamma(gamma)?;
        Ok(self.mul(a, gamma, b))
    }

    pub fn check_s(&self, index: usize) -> Result<(), GammaError> {
        if index < self.s_size {
            Ok(())
        } else {
            Err(GammaError::SIndex {
                index,
                size: self.s_size,
            })
        }
    }

    pub fn check_gamma(&self, index: usize) -> Result<(), GammaError> {
        if index < self.gamma_size {
            Ok(())
        } else {
            Err(GammaError::GammaIndex {
                index,
                size: self.gamma_size,
            })
        }
    }

    /// Range check on every cell, then the exhaustive `O(n³m²)` axiom loop.
    /// Associativity is only examined once every entry is in range.
    pub fn validate(&self) -> ValidationReport {
        let (n, m) = (self.s_size, self.gamma_size);
        let mut violations = Vec::new();
        for a in 0..n {
            for g in 0..m {
                for b in 0..n {
                    let value = self.mul(a, g, b);
                    if value >= n {
                        violations.push(Violation::Range { a, gamma: g, b, value });
                    }
                }
            }
        }
        if !violations.is_empty() {
            return ValidationReport { violations };
        }
        for a in 0..n {
            for alpha in 0..m {
                for b in 0..n {
                    let ab = self.mul(a, alpha, b);
                    for beta in 0..m {
                        for c in 0..n {
                            if self.mul(ab, beta, c) != self.mul(a, alpha, self.mul(b, beta, c)) {
                                violations.push(Violation::Associativity { a, b, c, alpha, beta });
                            }
                        }
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    /// `S_γ`: the plain semigroup on `S` with `x·y = xγy`.
    pub fn derived_semigroup(&self, gamma: usize) -> Result<FiniteSemigroup, GammaError> {
        self.check_gamma(gamma)?;
        let sg = FiniteSemigroup::from_fn(self.s_size, |a, b| self.mul(a, gamma, b))?;
        let labels = (0..self.s_size).map(|i| format!("x{i}")).collect();
        Ok(sg.with_labels(labels)?)
    }

    /// Table in the block-major layout accepted by [`GammaSemigroup::new`].
    pub fn block_table(&self) -> Vec<usize> {
        let n = self.s_size;
        let mut out = Vec::with_capacity(self.table.len());
        for g in 0..self.gamma_size {
            for a in 0..n {
                for b in 0..n {
                    out.push(self.mul(a, g, b));
                }
            }
        }
        out
    }
}

impl fmt::Debug for GammaSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GammaSemigroup")
            .field("s_size", &self.s_size)
            .field("gamma_size", &self.gamma_size)
            .field("gamma0", &self.gamma0)
            .field("table", &self.block_table())
            .finish()
    }
}

/// Sandwich construction: `Γ ⊆ T` and `aγb = a·γ·b` computed in the seed `T`.
pub fn sandwich(seed: &FiniteSemigroup, gamma_subset: &[usize]) -> Result<GammaSemigroup, GammaError> {
    if gamma_subset.is_empty() {
        return Err(GammaError::InvalidSeed("Γ subset is empty".into()));
    }
    if let Some(&bad) = gamma_subset.iter().find(|&&g| g >= seed.size()) {
        return Err(GammaError::InvalidSeed(format!(
            "Γ element {bad} is not in the seed (size {})",
            seed.size()
        )));
    }
    let mut seen = vec![false; seed.size()];
    for &g in gamma_subset {
        if std::mem::replace(&mut seen[g], true) {
            return Err(GammaError::InvalidSeed(format!("Γ element {g} repeated")));
        }
    }
    if let Some((a, b, c)) = seed.associativity_witness() {
        return Err(GammaError::InvalidSeed(format!(
            "seed is not associative at ({a}, {b}, {c})"
        )));
    }
    GammaSemigroup::from_fn(seed.size(), gamma_subset.len(), 0, |a, g, b| {
        seed.mul(seed.mul(a, gamma_subset[g]), b)
    })
}

/// Encoding of a map `{0..domain} → {0..codomain}` as a base-`codomain`
/// integer, digit `t` being the image of `t`.
pub fn decode_map(mut code: usize, domain: usize, codomain: usize) -> Vec<usize> {
    (0..domain)
        .map(|_| {
            let d = code % codomain;
            code /= codomain;
            d
        })
        .collect()
}

pub fn encode_map(images: &[usize], codomain: usize) -> usize {
    images.iter().rev().fold(0, |acc, &d| acc * codomain + d)
}

fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    u32::try_from(exp).ok().and_then(|e| base.checked_pow(e))
}

/// Largest carrier the function-composition family will materialize.
pub const FUNCOMP_MAX_MAPS: usize = 4096;

/// Function-composition family: `S = B^A`, `Γ = A^B`, and
/// `(aγb)(t) = a(γ(b(t)))`, maps applied right to left.
pub fn funcomp(a_size: usize, b_size: usize) -> Result<GammaSemigroup, GammaError> {
    if a_size == 0 || b_size == 0 {
        return Err(GammaError::InvalidSeed("|A| and |B| must be at least 1".into()));
    }
    let too_big = || GammaError::InvalidSeed(format!("funcomp({a_size}, {b_size}) is too large"));
    let n = checked_pow(b_size, a_size).ok_or_else(too_big)?;
    let m = checked_pow(a_size, b_size).ok_or_else(too_big)?;
    if n > FUNCOMP_MAX_MAPS || m > FUNCOMP_MAX_MAPS || n * n * m > 1 << 24 {
        return Err(too_big());
    }
    let s_maps: Vec<Vec<usize>> = (0..n).map(|c| decode_map(c, a_size, b_size)).collect();
    let g_maps: Vec<Vec<usize>> = (0..m).map(|c| decode_map(c, b_size, a_size)).collect();
    GammaSemigroup::from_fn(n, m, 0, |x, g, y| {
        let composed: Vec<usize> = (0..a_size).map(|t| s_maps[x][g_maps[g][s_maps[y][t]]]).collect();
        encode_map(&composed, b_size)
    })
}
