//! Basis symbols and finite index windows.
//!
//! The algebras handled here share a common countable basis drawn from
//! seven families:
//!
//! | family | indices            | doubled index `idx2` |
//! |--------|--------------------|----------------------|
//! | `L`    | integers `n`       | `2n` (even)          |
//! | `M`    | integers `n`       | `2n` (even)          |
//! | `N`    | integers `n`       | `2n` (even)          |
//! | `Y`    | half-integers `n+1/2` | `2n+1` (odd)      |
//! | `CL`, `CLN`, `CN` | central, unindexed | `0`       |
//!
//! Storing the doubled index keeps all arithmetic integral. A symbol's
//! degree under the natural half-integer grading is `idx2/2`.
//!
//! Symbols order by family (`L < M < N < Y < CL < CLN < CN`) and then by
//! doubled index; this ordering is the canonical term order used by
//! every printer and solver, so outputs are deterministic.

use crate::rational::Rational;
use serde::Serialize;
use std::fmt;

/// Generator family tag.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub enum Kind {
    L,
    M,
    N,
    Y,
    CL,
    CLN,
    CN,
}

impl Kind {
    /// True for the three unindexed central generators.
    pub fn is_central(self) -> bool {
        matches!(self, Kind::CL | Kind::CLN | Kind::CN)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::L => "L",
            Kind::M => "M",
            Kind::N => "N",
            Kind::Y => "Y",
            Kind::CL => "CL",
            Kind::CLN => "CLN",
            Kind::CN => "CN",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Error for a family/index combination that violates the encoding.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymbolError {
    #[error("family {kind} requires an even doubled index, got {idx2}")]
    ExpectedEven { kind: Kind, idx2: i64 },
    #[error("family Y requires an odd doubled index, got {idx2}")]
    ExpectedOdd { idx2: i64 },
    #[error("central family {kind} carries no index, got {idx2}")]
    CentralIndexed { kind: Kind, idx2: i64 },
}

/// One basis symbol: a family tag plus a doubled index.
///
/// The derived ordering (family first, then `idx2`) is the canonical
/// basis order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BasisSymbol {
    pub kind: Kind,
    pub idx2: i64,
}

impl BasisSymbol {
    /// Builds a symbol, enforcing the parity and centrality invariants.
    pub fn new(kind: Kind, idx2: i64) -> Result<Self, SymbolError> {
        match kind {
            Kind::L | Kind::M | Kind::N => {
                if idx2 % 2 != 0 {
                    return Err(SymbolError::ExpectedEven { kind, idx2 });
                }
            }
            Kind::Y => {
                if idx2 % 2 == 0 {
                    return Err(SymbolError::ExpectedOdd { idx2 });
                }
            }
            Kind::CL | Kind::CLN | Kind::CN => {
                if idx2 != 0 {
                    return Err(SymbolError::CentralIndexed { kind, idx2 });
                }
            }
        }
        Ok(BasisSymbol { kind, idx2 })
    }

    /// `L_n`, `M_n` or `N_n` for an integer `n`.
    ///
    /// # Panics
    /// Panics if `kind` is not `L`, `M` or `N`.
    pub fn integer(kind: Kind, n: i64) -> Self {
        assert!(
            matches!(kind, Kind::L | Kind::M | Kind::N),
            "integer index requires family L, M or N"
        );
        BasisSymbol { kind, idx2: 2 * n }
    }

    /// `Y_{n+1/2}` for an integer `n`.
    pub fn half(n: i64) -> Self {
        BasisSymbol { kind: Kind::Y, idx2: 2 * n + 1 }
    }

    /// One of the central generators `CL`, `CLN`, `CN`.
    ///
    /// # Panics
    /// Panics if `kind` is not central.
    pub fn central(kind: Kind) -> Self {
        assert!(kind.is_central(), "not a central family");
        BasisSymbol { kind, idx2: 0 }
    }

    pub fn is_central(&self) -> bool {
        self.kind.is_central()
    }

    /// The integer index of an `L`/`M`/`N` symbol.
    ///
    /// # Panics
    /// Panics for `Y` or central symbols.
    pub fn index(&self) -> i64 {
        assert!(
            matches!(self.kind, Kind::L | Kind::M | Kind::N),
            "integer index only for L, M, N"
        );
        self.idx2 / 2
    }

    /// For `Y_{n+1/2}`, the integer `n`.
    ///
    /// # Panics
    /// Panics for non-`Y` symbols.
    pub fn half_base(&self) -> i64 {
        assert!(self.kind == Kind::Y, "half base only for Y");
        (self.idx2 - 1) / 2
    }

    /// The grading degree `idx2/2` as an exact rational.
    pub fn degree(&self) -> Rational {
        Rational::new(self.idx2, 2)
    }
}

impl fmt::Display for BasisSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::L | Kind::M | Kind::N => write!(f, "{}({})", self.kind, self.idx2 / 2),
            Kind::Y => write!(f, "Y({}/2)", self.idx2),
            Kind::CL | Kind::CLN | Kind::CN => write!(f, "{}", self.kind),
        }
    }
}

/// Symmetric index window: indexed symbols with `|idx2| <= 2k` are in
/// the window; central symbols always are.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Window {
    pub k: u32,
}

impl Window {
    pub fn new(k: u32) -> Self {
        Window { k }
    }

    /// The window of symbols whose index is bounded by `k` in absolute
    /// value (so `|idx2| <= 2k`).
    pub fn contains(&self, s: &BasisSymbol) -> bool {
        s.is_central() || s.idx2.unsigned_abs() <= 2 * self.k as u64
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_invariants() {
        assert!(BasisSymbol::new(Kind::L, 3).is_err());
        assert!(BasisSymbol::new(Kind::Y, 4).is_err());
        assert!(BasisSymbol::new(Kind::CL, 2).is_err());
        assert!(BasisSymbol::new(Kind::M, -6).is_ok());
        assert!(BasisSymbol::new(Kind::Y, -5).is_ok());
        assert!(BasisSymbol::new(Kind::CN, 0).is_ok());
    }

    #[test]
    fn canonical_order() {
        let l1 = BasisSymbol::integer(Kind::L, 1);
        let lm1 = BasisSymbol::integer(Kind::L, -1);
        let m0 = BasisSymbol::integer(Kind::M, 0);
        let y = BasisSymbol::half(0);
        let cl = BasisSymbol::central(Kind::CL);
        let mut v = vec![cl, y, m0, l1, lm1];
        v.sort();
        assert_eq!(v, vec![lm1, l1, m0, y, cl]);
    }

    #[test]
    fn display_forms() {
        assert_eq!(BasisSymbol::integer(Kind::L, -2).to_string(), "L(-2)");
        assert_eq!(BasisSymbol::half(1).to_string(), "Y(3/2)");
        assert_eq!(BasisSymbol::half(-1).to_string(), "Y(-1/2)");
        assert_eq!(BasisSymbol::central(Kind::CLN).to_string(), "CLN");
    }

    #[test]
    fn window_membership() {
        let w = Window::new(2);
        assert!(w.contains(&BasisSymbol::integer(Kind::L, 2)));
        assert!(!w.contains(&BasisSymbol::integer(Kind::L, 3)));
        assert!(w.contains(&BasisSymbol::half(1))); // idx2 = 3 <= 4
        assert!(!w.contains(&BasisSymbol::half(2))); // idx2 = 5 > 4
        assert!(w.contains(&BasisSymbol::central(Kind::CN)));
    }

    #[test]
    fn degree_is_half_idx2() {
        assert_eq!(BasisSymbol::half(1).degree(), Rational::new(3, 2));
        assert_eq!(BasisSymbol::integer(Kind::N, -3).degree(), Rational::from_int(-3));
    }
}
