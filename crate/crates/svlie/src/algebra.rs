//! Bracket tables and window-scale structural checks.
//!
//! The extended Schrodinger-Virasoro algebra has basis
//! `L_n, M_n, N_n (n integer)`, `Y_{n+1/2} (n integer)` and brackets
//!
//! ```text
//! [L_m, L_n] = (n - m) L_{m+n}
//! [L_m, M_n] = n M_{m+n}
//! [L_m, N_n] = n N_{m+n}
//! [L_m, Y_{n+1/2}] = (n + (1-m)/2) Y_{m+n+1/2}
//! [N_m, M_n] = 2 M_{m+n}
//! [N_m, Y_{n+1/2}] = Y_{m+n+1/2}
//! [Y_{m+1/2}, Y_{n+1/2}] = (m - n) M_{m+n+1}
//! ```
//!
//! with all other family pairs zero. Its central extension adds the
//! generators `CL`, `CLN`, `CN` and the corrections
//!
//! ```text
//! [L_m, L_n] += d(m+n) (m^3 - m)/12 CL
//! [L_m, N_n] += d(m+n) (m^2 - m)    CLN
//! [N_m, N_n]  = d(m+n) n            CN
//! ```
//!
//! where `d(k)` is 1 at `k = 0` and 0 otherwise. [`AlgebraId`] selects
//! either algebra or one of the standard subalgebras and ideals; every
//! algebra here is a span of basis families (plus `N_0` alone in one
//! case), so membership is decided symbol by symbol.

use crate::element::Element;
use crate::rational::Rational;
use crate::symbol::{BasisSymbol, Kind, Window};
use std::fmt;
use std::str::FromStr;

/// The algebras and distinguished subspaces the library can work in.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum AlgebraId {
    /// `L` family only, no central terms.
    Witt,
    /// The Schrodinger-Virasoro algebra: families `L`, `M`, `Y`.
    Sv,
    /// The extended Schrodinger-Virasoro algebra: `L`, `M`, `N`, `Y`.
    Svt,
    /// The universal central extension of [`AlgebraId::Svt`]: all four
    /// families plus `CL`, `CLN`, `CN`.
    SvHat,
    /// Heisenberg part: `N` family plus `CN`.
    Heis,
    /// Virasoro part: `L` family plus `CL`.
    Vir,
    /// Twisted Heisenberg-Virasoro part: `L`, `N`, `CL`, `CLN`, `CN`.
    HVir,
    /// The ideal spanned by `M` and `Y`, viewed inside the extension.
    S,
    /// `Heis + S`: families `M`, `N`, `Y` plus `CN`.
    Hs,
    /// Ideal of [`AlgebraId::Svt`]: the `M` family.
    I1,
    /// Ideal of [`AlgebraId::Svt`]: families `M`, `Y`.
    I2,
    /// Ideal of [`AlgebraId::Svt`]: families `M`, `Y` plus `N_0`.
    I3,
    /// Ideal of [`AlgebraId::Svt`]: families `M`, `N`, `Y`.
    I4,
}

impl AlgebraId {
    pub const ALL: [AlgebraId; 13] = [
        AlgebraId::Witt,
        AlgebraId::Sv,
        AlgebraId::Svt,
        AlgebraId::SvHat,
        AlgebraId::Heis,
        AlgebraId::Vir,
        AlgebraId::HVir,
        AlgebraId::S,
        AlgebraId::Hs,
        AlgebraId::I1,
        AlgebraId::I2,
        AlgebraId::I3,
        AlgebraId::I4,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AlgebraId::Witt => "witt",
            AlgebraId::Sv => "sv",
            AlgebraId::Svt => "svt",
            AlgebraId::SvHat => "svhat",
            AlgebraId::Heis => "heis",
            AlgebraId::Vir => "vir",
            AlgebraId::HVir => "hvir",
            AlgebraId::S => "s",
            AlgebraId::Hs => "hs",
            AlgebraId::I1 => "i1",
            AlgebraId::I2 => "i2",
            AlgebraId::I3 => "i3",
            AlgebraId::I4 => "i4",
        }
    }

    /// Whether `s` belongs to the defining basis of this algebra.
    pub fn contains(self, s: &BasisSymbol) -> bool {
        match self {
            AlgebraId::Witt => s.kind == Kind::L,
            AlgebraId::Sv => matches!(s.kind, Kind::L | Kind::M | Kind::Y),
            AlgebraId::Svt => matches!(s.kind, Kind::L | Kind::M | Kind::N | Kind::Y),
            AlgebraId::SvHat => true,
            AlgebraId::Heis => matches!(s.kind, Kind::N | Kind::CN),
            AlgebraId::Vir => matches!(s.kind, Kind::L | Kind::CL),
            AlgebraId::HVir => {
                matches!(s.kind, Kind::L | Kind::N | Kind::CL | Kind::CLN | Kind::CN)
            }
            AlgebraId::S => matches!(s.kind, Kind::M | Kind::Y),
            AlgebraId::Hs => matches!(s.kind, Kind::M | Kind::N | Kind::Y | Kind::CN),
            AlgebraId::I1 => s.kind == Kind::M,
            AlgebraId::I2 => matches!(s.kind, Kind::M | Kind::Y),
            AlgebraId::I3 => {
                matches!(s.kind, Kind::M | Kind::Y) || (s.kind == Kind::N && s.idx2 == 0)
            }
            AlgebraId::I4 => matches!(s.kind, Kind::M | Kind::N | Kind::Y),
        }
    }

    /// Which central correction the bracket of this algebra carries.
    pub(crate) fn central_style(self) -> CentralStyle {
        match self {
            AlgebraId::SvHat | AlgebraId::Heis | AlgebraId::Vir | AlgebraId::HVir | AlgebraId::Hs => {
                CentralStyle::Standard
            }
            _ => CentralStyle::None,
        }
    }

    /// The basis symbols of this algebra inside `w`, canonically ordered.
    pub fn basis_in_window(self, w: Window) -> Vec<BasisSymbol> {
        let k2 = 2 * w.k as i64;
        let mut out = Vec::new();
        for kind in [Kind::L, Kind::M, Kind::N] {
            for idx2 in (-k2..=k2).step_by(2) {
                let s = BasisSymbol { kind, idx2 };
                if self.contains(&s) {
                    out.push(s);
                }
            }
        }
        {
            let mut idx2 = -k2 + 1;
            while idx2 <= k2 {
                let s = BasisSymbol { kind: Kind::Y, idx2 };
                if self.contains(&s) {
                    out.push(s);
                }
                idx2 += 2;
            }
        }
        for kind in [Kind::CL, Kind::CLN, Kind::CN] {
            let s = BasisSymbol::central(kind);
            if self.contains(&s) {
                out.push(s);
            }
        }
        out
    }
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AlgebraId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AlgebraId::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| format!("unknown algebra `{s}` (expected one of witt, sv, svt, svhat, heis, vir, hvir, s, hs, i1, i2, i3, i4)"))
    }
}

/// Choice of central correction on `[L_m, N_n]` at `m + n = 0`.
///
/// The standard table uses `(m^2 - m) CLN`; the basis produced by the
/// wedge construction satisfies the variant `(n^2 - n) CLN` instead
/// (the two differ by a coboundary).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum CentralStyle {
    None,
    Standard,
    Primed,
}

/// The raw structure constants on a pair of basis symbols, with the
/// central corrections selected by `style`. No membership filtering.
pub(crate) fn symbol_bracket(style: CentralStyle, x: &BasisSymbol, y: &BasisSymbol) -> Element {
    if x.kind > y.kind {
        return -&symbol_bracket(style, y, x);
    }
    if x.is_central() || y.is_central() {
        return Element::zero();
    }
    let mut out = Element::zero();
    let sum2 = x.idx2 + y.idx2;
    match (x.kind, y.kind) {
        (Kind::L, Kind::L) => {
            let (m, n) = (x.index(), y.index());
            out.add_term(
                BasisSymbol { kind: Kind::L, idx2: sum2 },
                &Rational::from_int(n - m),
            );
            if style != CentralStyle::None && sum2 == 0 {
                out.add_term(
                    BasisSymbol::central(Kind::CL),
                    &Rational::new(m * m * m - m, 12),
                );
            }
        }
        (Kind::L, Kind::M) => {
            let n = y.index();
            out.add_term(BasisSymbol { kind: Kind::M, idx2: sum2 }, &Rational::from_int(n));
        }
        (Kind::L, Kind::N) => {
            let (m, n) = (x.index(), y.index());
            out.add_term(BasisSymbol { kind: Kind::N, idx2: sum2 }, &Rational::from_int(n));
            if style != CentralStyle::None && sum2 == 0 {
                let c = match style {
                    CentralStyle::Standard => m * m - m,
                    CentralStyle::Primed => n * n - n,
                    CentralStyle::None => unreachable!(),
                };
                out.add_term(BasisSymbol::central(Kind::CLN), &Rational::from_int(c));
            }
        }
        (Kind::L, Kind::Y) => {
            // [L_m, Y_{n+1/2}] = (n + (1-m)/2) Y_{m+n+1/2}.
            let m = x.index();
            out.add_term(
                BasisSymbol { kind: Kind::Y, idx2: sum2 },
                &Rational::new(y.idx2 - m, 2),
            );
        }
        (Kind::M, Kind::N) => {
            // [N_m, M_n] = 2 M_{m+n}, reversed.
            out.add_term(BasisSymbol { kind: Kind::M, idx2: sum2 }, &Rational::from_int(-2));
        }
        (Kind::N, Kind::N) => {
            if style != CentralStyle::None && sum2 == 0 {
                out.add_term(BasisSymbol::central(Kind::CN), &Rational::from_int(y.index()));
            }
        }
        (Kind::N, Kind::Y) => {
            out.add_term(BasisSymbol { kind: Kind::Y, idx2: sum2 }, &Rational::one());
        }
        (Kind::Y, Kind::Y) => {
            // [Y_{m+1/2}, Y_{n+1/2}] = (m - n) M_{m+n+1}.
            let diff = (x.idx2 - y.idx2) / 2;
            out.add_term(BasisSymbol { kind: Kind::M, idx2: sum2 }, &Rational::from_int(diff));
        }
        // (M, M), (L, M) handled above; every remaining combination
        // in family order is zero: (M, Y) and (M, M).
        _ => {}
    }
    out
}

/// Errors from bracket evaluation and the window checks.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("symbol {symbol} is not in algebra {algebra}")]
    NotInAlgebra { symbol: String, algebra: AlgebraId },
    #[error("{sub} is not contained in {algebra}: symbol {symbol}")]
    NotContained {
        symbol: String,
        sub: AlgebraId,
        algebra: AlgebraId,
    },
    #[error("generator {index} is zero")]
    ZeroGenerator { index: usize },
    #[error("generator {index} has support outside the window: {symbol}")]
    GeneratorOutsideWindow { index: usize, symbol: String },
}

fn check_membership(alg: AlgebraId, x: &Element) -> Result<(), AlgebraError> {
    for s in x.support() {
        if !alg.contains(s) {
            return Err(AlgebraError::NotInAlgebra { symbol: s.to_string(), algebra: alg });
        }
    }
    Ok(())
}

/// The Lie bracket of two elements of `alg`. Exact: the result may
/// involve symbols of arbitrarily large index.
pub fn bracket(alg: AlgebraId, x: &Element, y: &Element) -> Result<Element, AlgebraError> {
    check_membership(alg, x)?;
    check_membership(alg, y)?;
    Ok(bracket_unchecked(alg.central_style(), x, y))
}

pub(crate) fn bracket_unchecked(style: CentralStyle, x: &Element, y: &Element) -> Element {
    let mut out = Element::zero();
    for (sx, cx) in x.iter() {
        for (sy, cy) in y.iter() {
            let term = symbol_bracket(style, sx, sy);
            if !term.is_zero() {
                out.add_scaled(&term, &(cx * cy));
            }
        }
    }
    out
}

/// One failed check instance: the witness symbols and the exact defect.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Violation {
    pub witness: Vec<String>,
    pub defect: String,
}

/// Outcome of an exhaustive window check.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CheckReport {
    pub pairs_checked: usize,
    pub triples_checked: usize,
    pub violations: Vec<Violation>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn violation(&mut self, witness: Vec<String>, defect: String) {
        self.violations.push(Violation { witness, defect });
    }
}

/// Verifies antisymmetry on all window pairs and the Jacobi identity
/// on all window triples of `alg`. All evaluation is exact, so there
/// is no boundary truncation: a violation is a genuine violation.
pub fn check_jacobi(alg: AlgebraId, w: Window) -> CheckReport {
    let basis = alg.basis_in_window(w);
    let style = alg.central_style();
    let n = basis.len();
    let mut report = CheckReport::default();
    // Antisymmetry, including [x, x] = 0.
    let mut table = vec![vec![Element::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let b = symbol_bracket(style, &basis[i], &basis[j]);
            let neg = symbol_bracket(style, &basis[j], &basis[i]);
            report.pairs_checked += 1;
            if !(&b + &neg).is_zero() {
                report.violation(
                    vec![basis[i].to_string(), basis[j].to_string()],
                    (&b + &neg).to_string(),
                );
            }
            table[j][i] = -&b;
            table[i][j] = b;
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let (x, y, z) = (&basis[i], &basis[j], &basis[k]);
                let mut defect = bracket_unchecked(style, &table[i][j], &Element::from_symbol(*z));
                defect.add_scaled(
                    &bracket_unchecked(style, &table[j][k], &Element::from_symbol(*x)),
                    &Rational::one(),
                );
                defect.add_scaled(
                    &bracket_unchecked(style, &table[k][i], &Element::from_symbol(*y)),
                    &Rational::one(),
                );
                report.triples_checked += 1;
                if !defect.is_zero() {
                    report.violation(
                        vec![x.to_string(), y.to_string(), z.to_string()],
                        defect.to_string(),
                    );
                }
            }
        }
    }
    report
}

/// Verifies the half-integer grading on all window pairs: every
/// non-central bracket term has degree equal to the sum of the input
/// degrees, and central terms only occur at total degree zero.
pub fn check_grading(alg: AlgebraId, w: Window) -> CheckReport {
    let basis = alg.basis_in_window(w);
    let style = alg.central_style();
    let mut report = CheckReport::default();
    for (i, x) in basis.iter().enumerate() {
        for y in &basis[i..] {
            report.pairs_checked += 1;
            let b = symbol_bracket(style, x, y);
            let bad: Vec<String> = b
                .iter()
                .filter(|(s, _)| {
                    if s.is_central() {
                        x.idx2 + y.idx2 != 0
                    } else {
                        s.idx2 != x.idx2 + y.idx2
                    }
                })
                .map(|(s, c)| format!("{}*{}", c, s))
                .collect();
            if !bad.is_empty() {
                report.violation(vec![x.to_string(), y.to_string()], bad.join(" + "));
            }
        }
    }
    report
}

/// Solves for the centralizer of the window inside the interior: all
/// elements supported on the interior window that commute with every
/// basis symbol of the full window. Returns a canonical basis.
///
/// With `interior` well inside `w` this is a faithful finite model of
/// the center; symbols near the window boundary are excluded as
/// candidates precisely because their brackets with far symbols are
/// not all examined.
pub fn center(alg: AlgebraId, w: Window, interior: u32) -> Vec<Element> {
    let basis = alg.basis_in_window(w);
    let style = alg.central_style();
    let inner = alg.basis_in_window(Window::new(interior));
    let mut ech = crate::linalg::Echelon::new();
    for b in &basis {
        // Equations: coefficient of every output symbol in [x, b] = 0.
        let mut rows: std::collections::BTreeMap<BasisSymbol, crate::linalg::Row> =
            std::collections::BTreeMap::new();
        for (j, s) in inner.iter().enumerate() {
            let prod = symbol_bracket(style, s, b);
            for (u, c) in prod.iter() {
                rows.entry(*u).or_default().push((j, c.clone()));
            }
        }
        for (_, mut row) in rows {
            row.sort_by_key(|(c, _)| *c);
            ech.insert(row);
        }
    }
    ech.nullspace(inner.len())
        .into_iter()
        .map(|v| {
            Element::from_terms(v.into_iter().map(|(j, c)| (inner[j], c)))
        })
        .collect()
}

/// Checks that `sub` is an ideal of `alg` on the window: for every
/// window basis symbol `a` of `alg` and `s` of `sub`, the bracket
/// `[a, s]` lies in the span of `sub`. Evaluation is exact, so this is
/// conclusive for the examined pairs.
pub fn check_ideal(alg: AlgebraId, sub: AlgebraId, w: Window) -> Result<CheckReport, AlgebraError> {
    let sub_basis = sub.basis_in_window(w);
    for s in &sub_basis {
        if !alg.contains(s) {
            return Err(AlgebraError::NotContained {
                symbol: s.to_string(),
                sub,
                algebra: alg,
            });
        }
    }
    let basis = alg.basis_in_window(w);
    let style = alg.central_style();
    let mut report = CheckReport::default();
    for a in &basis {
        for s in &sub_basis {
            report.pairs_checked += 1;
            let b = symbol_bracket(style, a, s);
            let outside = b.filter(|u| !sub.contains(u));
            if !outside.is_zero() {
                report.violation(vec![a.to_string(), s.to_string()], outside.to_string());
            }
        }
    }
    Ok(report)
}

/// Closes `gens` under the bracket within the window and returns a
/// canonical basis of the resulting subspace. Products with any term
/// outside the window are discarded whole (no truncation), so the
/// result is a subspace of the window span that the generators
/// certifiably reach.
pub fn generated_subspace(
    alg: AlgebraId,
    gens: &[Element],
    w: Window,
) -> Result<Vec<Element>, AlgebraError> {
    let basis = alg.basis_in_window(w);
    let col = |s: &BasisSymbol| basis.binary_search(s);
    for (index, g) in gens.iter().enumerate() {
        if g.is_zero() {
            return Err(AlgebraError::ZeroGenerator { index });
        }
        check_membership(alg, g)?;
        if let Some(s) = g.support().find(|s| !w.contains(s)) {
            return Err(AlgebraError::GeneratorOutsideWindow { index, symbol: s.to_string() });
        }
    }
    let style = alg.central_style();
    let to_row = |e: &Element| -> crate::linalg::Row {
        e.iter().map(|(s, c)| (col(s).unwrap(), c.clone())).collect()
    };
    let mut ech = crate::linalg::Echelon::new();
    for g in gens {
        ech.insert(to_row(g));
    }
    loop {
        let current: Vec<Element> = ech
            .rows()
            .iter()
            .map(|r| Element::from_terms(r.iter().map(|(j, c)| (basis[*j], c.clone()))))
            .collect();
        let before = ech.rank();
        for i in 0..current.len() {
            for j in (i + 1)..current.len() {
                let p = bracket_unchecked(style, &current[i], &current[j]);
                if p.is_zero() || p.support().any(|s| !w.contains(s)) {
                    continue;
                }
                ech.insert(to_row(&p));
            }
        }
        if ech.rank() == before {
            break;
        }
    }
    Ok(ech
        .rows()
        .iter()
        .map(|r| Element::from_terms(r.iter().map(|(j, c)| (basis[*j], c.clone()))))
        .collect())
}
