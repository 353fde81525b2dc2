//! The automorphism group of the extended algebra and its lift to the
//! centrally extended table.
//!
//! Modulo inner automorphisms generated by exponentials of nilpotent
//! adjoint operators, every automorphism of the extended algebra is
//! determined by four parameters `(eps, lambda, a, d)` with
//! `eps = +-1`, `lambda` an integer, and `a, d` nonzero scalars:
//!
//! ```text
//! s(L_n) = a^n eps L_{eps n} + a^n lambda N_{eps n}
//! s(N_n) = a^n N_{eps n}
//! s(M_n) = eps d^2 a^(n-1) M_{eps(n - 2 lambda)}
//! s(Y_{n+1/2}) = d a^n Y_{eps(n + 1/2 - lambda)}
//! ```
//!
//! Composition (right factor applied first), inversion, and the
//! factorization into a flip, an integer shift, and a scaling
//!
//! ```text
//! (eps, lambda, a, d) = pi_eps . shift_lambda . scale_{a,d}
//! ```
//!
//! are implemented exactly on the parameters and verified as maps.
//!
//! Inner automorphisms: `ad M_i` squares to zero and `ad Y_j` cubes to
//! zero, so their exponentials are polynomial. A product of
//! `exp(b_k ad Y_{m_k+1/2})` factors collapses to
//!
//! ```text
//! exp(sum_k b_k ad Y_{m_k+1/2}) . exp(sum_{i<j} ((m_i - m_j)/2) b_i b_j ad M_{m_i+m_j+1})
//! ```
//!
//! with the leftmost factor applied last.
//!
//! The lift to the centrally extended table (with the `n^2 - n`
//! normalization of the `[L, N]` central term) acts on the three
//! central generators by `eps` and acquires degree-zero central
//! corrections:
//!
//! ```text
//! t(L_n) = a^n eps L_{eps n} + a^n lambda N_{eps n}
//!          - lambda [n=0] CLN + (eps/2) lambda^2 [n=0] CN
//! t(N_n) = a^n N_{eps n} + (eps - 1)[n=0] CLN + eps lambda [n=0] CN
//! t(M_n), t(Y_j): as the base map;  t(C) = eps C for each central C.
//! ```

use crate::algebra::{bracket_unchecked, CentralStyle, CheckReport};
use crate::element::Element;
use crate::extension::covering_bracket;
use crate::rational::Rational;
use crate::symbol::{BasisSymbol, Kind, Window};
use std::fmt;
use std::str::FromStr;

/// Errors from automorphism construction and application.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AutError {
    #[error("eps must be 1 or -1, got {0}")]
    BadEps(i64),
    #[error("parameter {name} must be nonzero")]
    ZeroParam { name: &'static str },
    #[error("central symbol {symbol} is outside the domain of the base automorphism")]
    CentralSymbol { symbol: String },
    #[error("inner factor {symbol} must be of kind M or Y")]
    BadInnerFactor { symbol: String },
    #[error("normal form requires a word of Y factors only; found {symbol}")]
    RejectedInput { symbol: String },
    #[error("invalid parameter string {input:?}: expected eps,lambda,a,d")]
    ParseParams { input: String },
}

/// Parameters of an outer-representative automorphism.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct AutParams {
    pub eps: i64,
    pub lambda: i64,
    pub a: Rational,
    pub d: Rational,
}

impl AutParams {
    pub fn new(eps: i64, lambda: i64, a: Rational, d: Rational) -> Result<Self, AutError> {
        if eps != 1 && eps != -1 {
            return Err(AutError::BadEps(eps));
        }
        if a.is_zero() {
            return Err(AutError::ZeroParam { name: "a" });
        }
        if d.is_zero() {
            return Err(AutError::ZeroParam { name: "d" });
        }
        Ok(AutParams { eps, lambda, a, d })
    }

    pub fn identity() -> Self {
        AutParams { eps: 1, lambda: 0, a: Rational::one(), d: Rational::one() }
    }

    /// The flip factor `pi_eps`.
    pub fn flip(eps: i64) -> Result<Self, AutError> {
        AutParams::new(eps, 0, Rational::one(), Rational::one())
    }

    /// The integer-shift factor `shift_lambda`.
    pub fn shift(lambda: i64) -> Self {
        AutParams { eps: 1, lambda, a: Rational::one(), d: Rational::one() }
    }

    /// The scaling factor `scale_{a,d}`.
    pub fn scale(a: Rational, d: Rational) -> Result<Self, AutError> {
        AutParams::new(1, 0, a, d)
    }
}

impl fmt::Display for AutParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.eps, self.lambda, self.a, self.d)
    }
}

impl FromStr for AutParams {
    type Err = AutError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || AutError::ParseParams { input: s.to_string() };
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [eps, lambda, a, d]: [&str; 4] = parts.try_into().map_err(|_| err())?;
        AutParams::new(
            eps.parse().map_err(|_| err())?,
            lambda.parse().map_err(|_| err())?,
            a.parse().map_err(|_| err())?,
            d.parse().map_err(|_| err())?,
        )
    }
}

fn eps_rat(eps: i64) -> Rational {
    Rational::from_int(eps)
}

/// Applies the base automorphism to one non-central symbol.
fn apply_symbol(p: &AutParams, s: &BasisSymbol) -> Result<Element, AutError> {
    let e = p.eps;
    match s.kind {
        Kind::L => {
            let n = s.idx2 / 2;
            let an = p.a.pow(n);
            let mut out = Element::term(
                BasisSymbol::integer(Kind::L, e * n),
                &an * &eps_rat(e),
            );
            out.add_term(
                BasisSymbol::integer(Kind::N, e * n),
                &(&an * &Rational::from_int(p.lambda)),
            );
            Ok(out)
        }
        Kind::N => {
            let n = s.idx2 / 2;
            Ok(Element::term(
                BasisSymbol::integer(Kind::N, e * n),
                p.a.pow(n),
            ))
        }
        Kind::M => {
            let n = s.idx2 / 2;
            let coeff = &(&eps_rat(e) * &(&p.d * &p.d)) * &p.a.pow(n - 1);
            Ok(Element::term(
                BasisSymbol::integer(Kind::M, e * (n - 2 * p.lambda)),
                coeff,
            ))
        }
        Kind::Y => {
            let n = (s.idx2 - 1) / 2;
            let target = BasisSymbol::new(Kind::Y, e * (s.idx2 - 2 * p.lambda))
                .expect("odd index stays odd");
            Ok(Element::term(target, &p.d * &p.a.pow(n)))
        }
        _ => Err(AutError::CentralSymbol { symbol: s.to_string() }),
    }
}

/// Applies the base automorphism linearly to an element of the
/// extended algebra (no central symbols).
pub fn apply_aut(p: &AutParams, x: &Element) -> Result<Element, AutError> {
    let mut out = Element::zero();
    for (s, c) in x.iter() {
        out.add_scaled(&apply_symbol(p, s)?, c);
    }
    Ok(out)
}

/// The composite map `p1 . p2` (apply `p2` first).
pub fn compose(p1: &AutParams, p2: &AutParams) -> AutParams {
    let eps = p1.eps * p2.eps;
    let lambda = p2.eps * p1.lambda + p2.lambda;
    let a = &p1.a.pow(p2.eps) * &p2.a;
    let d = &(&p1.d * &p2.d) * &p1.a.pow((p2.eps - 1) / 2 - p2.eps * p2.lambda);
    AutParams { eps, lambda, a, d }
}

/// The inverse map.
pub fn inverse(p: &AutParams) -> AutParams {
    AutParams {
        eps: p.eps,
        lambda: -p.eps * p.lambda,
        a: p.a.pow(-p.eps),
        d: &p.d.recip() * &p.a.pow((1 - p.eps) / 2 - p.lambda),
    }
}

/// Verifies that the base map respects every window bracket:
/// `s([x, y]) = [s(x), s(y)]` with exact (untruncated) evaluation.
pub fn check_homomorphism(p: &AutParams, w: Window) -> CheckReport {
    let symbols = crate::algebra::AlgebraId::Svt.basis_in_window(w);
    let mut report = CheckReport::default();
    let images: Vec<Element> = symbols
        .iter()
        .map(|s| apply_symbol(p, s).expect("non-central window symbol"))
        .collect();
    for (i, x) in symbols.iter().enumerate() {
        for (j, y) in symbols.iter().enumerate().skip(i + 1) {
            let lhs = apply_aut(
                p,
                &bracket_unchecked(
                    CentralStyle::None,
                    &Element::from_symbol(*x),
                    &Element::from_symbol(*y),
                ),
            )
            .expect("bracket stays non-central");
            let rhs = bracket_unchecked(CentralStyle::None, &images[i], &images[j]);
            report.pairs_checked += 1;
            if lhs != rhs {
                report.violation(
                    vec![x.to_string(), y.to_string()],
                    format!("difference {}", &lhs - &rhs),
                );
            }
        }
    }
    report
}

/// Verifies that applying `compose(p1, p2)` agrees with applying `p2`
/// then `p1` on every window symbol.
pub fn check_compose_agreement(p1: &AutParams, p2: &AutParams, w: Window) -> CheckReport {
    let symbols = crate::algebra::AlgebraId::Svt.basis_in_window(w);
    let combined = compose(p1, p2);
    let mut report = CheckReport::default();
    for s in &symbols {
        let direct = apply_symbol(&combined, s).expect("non-central");
        let staged = apply_aut(p1, &apply_symbol(p2, s).expect("non-central"))
            .expect("image stays non-central");
        report.pairs_checked += 1;
        if direct != staged {
            report.violation(
                vec![s.to_string()],
                format!("{direct} vs {staged}"),
            );
        }
    }
    report
}

/// Verifies the group law around two sample points: compose/inverse
/// functionality, associativity, the flip/shift/scale factorization,
/// and the conjugation relations between the factors.
pub fn verify_group_relations(p1: &AutParams, p2: &AutParams, w: Window) -> CheckReport {
    let mut report = CheckReport::default();
    let param_eq = |name: &str, got: &AutParams, want: &AutParams, r: &mut CheckReport| {
        r.pairs_checked += 1;
        if got != want {
            r.violation(vec![name.to_string()], format!("{got} vs {want}"));
        }
    };
    let id = AutParams::identity();
    // Inverses compose to the identity on both sides.
    param_eq("p1 . p1^-1", &compose(p1, &inverse(p1)), &id, &mut report);
    param_eq("p1^-1 . p1", &compose(&inverse(p1), p1), &id, &mut report);
    param_eq("p2 . p2^-1", &compose(p2, &inverse(p2)), &id, &mut report);
    // Associativity around the samples.
    param_eq(
        "(p1 p2) p1 = p1 (p2 p1)",
        &compose(&compose(p1, p2), p1),
        &compose(p1, &compose(p2, p1)),
        &mut report,
    );
    // Factorization: parameters are exactly flip . shift . scale.
    for (name, p) in [("p1", p1), ("p2", p2)] {
        let rebuilt = compose(
            &AutParams::flip(p.eps).expect("valid eps"),
            &compose(
                &AutParams::shift(p.lambda),
                &AutParams::scale(p.a.clone(), p.d.clone()).expect("nonzero"),
            ),
        );
        param_eq(&format!("{name} = flip.shift.scale"), &rebuilt, p, &mut report);
    }
    // Factor groups: flips multiply, shifts add, scalings multiply.
    let flip1 = AutParams::flip(p1.eps).expect("valid");
    let flip2 = AutParams::flip(p2.eps).expect("valid");
    param_eq(
        "flip.flip",
        &compose(&flip1, &flip2),
        &AutParams::flip(p1.eps * p2.eps).expect("valid"),
        &mut report,
    );
    param_eq(
        "shift.shift",
        &compose(&AutParams::shift(p1.lambda), &AutParams::shift(p2.lambda)),
        &AutParams::shift(p1.lambda + p2.lambda),
        &mut report,
    );
    param_eq(
        "scale.scale",
        &compose(
            &AutParams::scale(p1.a.clone(), p1.d.clone()).expect("nonzero"),
            &AutParams::scale(p2.a.clone(), p2.d.clone()).expect("nonzero"),
        ),
        &AutParams::scale(&p1.a * &p2.a, &p1.d * &p2.d).expect("nonzero"),
        &mut report,
    );
    // Conjugation relations between the factors.
    let eps = p1.eps;
    let flip = AutParams::flip(eps).expect("valid");
    param_eq(
        "flip^-1.shift.flip",
        &compose(&inverse(&flip), &compose(&AutParams::shift(p2.lambda), &flip)),
        &AutParams::shift(eps * p2.lambda),
        &mut report,
    );
    param_eq(
        "flip^-1.scale.flip",
        &compose(
            &inverse(&flip),
            &compose(
                &AutParams::scale(p2.a.clone(), p2.d.clone()).expect("nonzero"),
                &flip,
            ),
        ),
        &AutParams::scale(p2.a.pow(eps), &p2.d * &p2.a.pow((eps - 1) / 2))
            .expect("nonzero"),
        &mut report,
    );
    let shift = AutParams::shift(p1.lambda);
    param_eq(
        "shift^-1.scale.shift",
        &compose(
            &inverse(&shift),
            &compose(
                &AutParams::scale(p2.a.clone(), p2.d.clone()).expect("nonzero"),
                &shift,
            ),
        ),
        &AutParams::scale(p2.a.clone(), &p2.d * &p2.a.pow(-p1.lambda))
            .expect("nonzero"),
        &mut report,
    );
    // The composite and the inverse act correctly as maps.
    let functional = check_compose_agreement(p1, p2, w);
    report.pairs_checked += functional.pairs_checked;
    report.violations.extend(functional.violations);
    let symbols = crate::algebra::AlgebraId::Svt.basis_in_window(w);
    let inv = inverse(p1);
    for s in &symbols {
        report.pairs_checked += 1;
        let round = apply_aut(&inv, &apply_symbol(p1, s).expect("non-central"))
            .expect("non-central");
        if round != Element::from_symbol(*s) {
            report.violation(vec![s.to_string()], format!("{round} vs {s}"));
        }
    }
    report
}

/// One exponential factor `exp(c . ad s)` with `s` of kind M or Y.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerWord {
    factors: Vec<(Rational, BasisSymbol)>,
}

impl InnerWord {
    /// Builds a word from leftmost to rightmost factor. Factors must
    /// be M or Y symbols (those have nilpotent adjoint action).
    pub fn new(factors: Vec<(Rational, BasisSymbol)>) -> Result<Self, AutError> {
        for (_, s) in &factors {
            if s.kind != Kind::M && s.kind != Kind::Y {
                return Err(AutError::BadInnerFactor { symbol: s.to_string() });
            }
        }
        Ok(InnerWord { factors })
    }

    pub fn factors(&self) -> &[(Rational, BasisSymbol)] {
        &self.factors
    }
}

impl fmt::Display for InnerWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (c, s)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}*{s}")?;
        }
        Ok(())
    }
}

impl FromStr for InnerWord {
    type Err = AutError;

    /// Parses `"c1*SYM1,c2*SYM2,..."`, e.g. `"1*Y(3/2),1*Y(1/2)"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || AutError::ParseParams { input: s.to_string() };
        let trimmed = s.trim();
        if trimmed == "1" || trimmed.is_empty() {
            return InnerWord::new(Vec::new());
        }
        let mut factors = Vec::new();
        for part in trimmed.split(',') {
            let (c, sym) = part.trim().split_once('*').ok_or_else(err)?;
            let coeff: Rational = c.trim().parse().map_err(|_| err())?;
            let symbol = crate::parse::parse_symbol(sym.trim()).map_err(|_| err())?;
            factors.push((coeff, symbol));
        }
        InnerWord::new(factors)
    }
}

/// `exp(ad g)` for a nilpotent combination `g` of M and Y symbols:
/// the cube of the adjoint operator vanishes, so the exponential is
/// `1 + ad g + (1/2)(ad g)^2`.
pub fn exp_ad(g: &Element, x: &Element) -> Element {
    let style = CentralStyle::None;
    let u1 = bracket_unchecked(style, g, x);
    let u2 = bracket_unchecked(style, g, &u1);
    debug_assert!(
        bracket_unchecked(style, g, &u2).is_zero(),
        "adjoint operator of {g} is not nilpotent of order three"
    );
    let mut out = x.clone();
    out.add_scaled(&u1, &Rational::one());
    out.add_scaled(&u2, &Rational::new(1, 2));
    out
}

/// Applies the word of exponentials, rightmost factor first.
pub fn apply_inner(word: &InnerWord, x: &Element) -> Element {
    let mut out = x.clone();
    for (c, s) in word.factors.iter().rev() {
        let g = Element::term(*s, c.clone());
        out = exp_ad(&g, &out);
    }
    out
}

/// The collapsed form of a word of Y-exponentials: one exponential of
/// the summed Y part applied after one exponential of the commutator
/// M part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerNormalForm {
    pub y_sum: Element,
    pub m_sum: Element,
}

impl InnerNormalForm {
    pub fn apply(&self, x: &Element) -> Element {
        exp_ad(&self.y_sum, &exp_ad(&self.m_sum, x))
    }
}

/// Collapses a word of Y-factor exponentials into the normal form
/// `exp(ad sum_k b_k Y_k) . exp(ad sum_{i<j} (b_i b_j / 2) [Y_i, Y_j])`.
/// Words containing M factors are rejected: the normal form describes
/// the Y-generated coset, and M factors belong to its M-part already.
pub fn inner_coset_normal_form(word: &InnerWord) -> Result<InnerNormalForm, AutError> {
    for (_, s) in &word.factors {
        if s.kind != Kind::Y {
            return Err(AutError::RejectedInput { symbol: s.to_string() });
        }
    }
    let mut y_sum = Element::zero();
    let mut m_sum = Element::zero();
    for (i, (bi, yi)) in word.factors.iter().enumerate() {
        y_sum.add_term(*yi, bi);
        for (bj, yj) in &word.factors[i + 1..] {
            let comm = bracket_unchecked(
                CentralStyle::None,
                &Element::from_symbol(*yi),
                &Element::from_symbol(*yj),
            );
            m_sum.add_scaled(&comm, &(&(bi * bj) * &Rational::new(1, 2)));
        }
    }
    Ok(InnerNormalForm { y_sum, m_sum })
}

/// Verifies the nilpotency orders behind the inner exponentials, on
/// every window symbol: `ad M_i ad M_j = 0`, `(ad Y)^3 = 0`, and the
/// mixed products `ad M ad Y = ad Y ad M = 0`.
pub fn check_inner_nilpotency(w: Window) -> CheckReport {
    let style = CentralStyle::None;
    let symbols = crate::algebra::AlgebraId::Svt.basis_in_window(w);
    let ms: Vec<&BasisSymbol> = symbols.iter().filter(|s| s.kind == Kind::M).collect();
    let ys: Vec<&BasisSymbol> = symbols.iter().filter(|s| s.kind == Kind::Y).collect();
    let mut report = CheckReport::default();
    let ad = |s: &BasisSymbol, x: &Element| {
        bracket_unchecked(style, &Element::from_symbol(*s), x)
    };
    for x in &symbols {
        let e = Element::from_symbol(*x);
        for mi in &ms {
            for mj in &ms {
                report.pairs_checked += 1;
                let out = ad(mi, &ad(mj, &e));
                if !out.is_zero() {
                    report.violation(
                        vec![mi.to_string(), mj.to_string(), x.to_string()],
                        out.to_string(),
                    );
                }
            }
            for yj in &ys {
                report.pairs_checked += 2;
                let out = ad(mi, &ad(yj, &e));
                if !out.is_zero() {
                    report.violation(
                        vec![mi.to_string(), yj.to_string(), x.to_string()],
                        out.to_string(),
                    );
                }
                let out = ad(yj, &ad(mi, &e));
                if !out.is_zero() {
                    report.violation(
                        vec![yj.to_string(), mi.to_string(), x.to_string()],
                        out.to_string(),
                    );
                }
            }
        }
        for yi in &ys {
            report.pairs_checked += 1;
            let out = ad(yi, &ad(yi, &ad(yi, &e)));
            if !out.is_zero() {
                report.violation(
                    vec![yi.to_string(), x.to_string()],
                    out.to_string(),
                );
            }
        }
    }
    report
}

/// Applies the lift of the base automorphism to one symbol of the
/// centrally extended algebra (primed-table normalization).
fn lift_symbol(p: &AutParams, s: &BasisSymbol) -> Element {
    let e = p.eps;
    match s.kind {
        Kind::L => {
            let mut out = apply_symbol(p, s).expect("non-central");
            if s.idx2 == 0 {
                out.add_term(
                    BasisSymbol::central(Kind::CLN),
                    &Rational::from_int(-p.lambda),
                );
                out.add_term(
                    BasisSymbol::central(Kind::CN),
                    &(&eps_rat(e) * &Rational::new(p.lambda * p.lambda, 2)),
                );
            }
            out
        }
        Kind::N => {
            let mut out = apply_symbol(p, s).expect("non-central");
            if s.idx2 == 0 {
                out.add_term(
                    BasisSymbol::central(Kind::CLN),
                    &Rational::from_int(e - 1),
                );
                out.add_term(
                    BasisSymbol::central(Kind::CN),
                    &Rational::from_int(e * p.lambda),
                );
            }
            out
        }
        Kind::M | Kind::Y => apply_symbol(p, s).expect("non-central"),
        Kind::CL | Kind::CLN | Kind::CN => Element::term(*s, eps_rat(e)),
    }
}

/// Applies the lifted automorphism linearly to an element of the
/// centrally extended algebra.
pub fn lift_apply(p: &AutParams, x: &Element) -> Element {
    let mut out = Element::zero();
    for (s, c) in x.iter() {
        out.add_scaled(&lift_symbol(p, s), c);
    }
    out
}

/// Verifies the lift against the covering bracket table (the variant
/// with the `n^2 - n` central normalization on `[L, N]`):
/// `t([x, y]) = [t(x), t(y)]` for all window pairs of the centrally
/// extended basis.
pub fn check_lift_homomorphism(p: &AutParams, w: Window) -> CheckReport {
    let symbols = crate::algebra::AlgebraId::SvHat.basis_in_window(w);
    let images: Vec<Element> = symbols.iter().map(|s| lift_symbol(p, s)).collect();
    let mut report = CheckReport::default();
    for (i, x) in symbols.iter().enumerate() {
        for (j, y) in symbols.iter().enumerate().skip(i + 1) {
            let lhs = lift_apply(
                p,
                &covering_bracket(&Element::from_symbol(*x), &Element::from_symbol(*y)),
            );
            let rhs = covering_bracket(&images[i], &images[j]);
            report.pairs_checked += 1;
            if lhs != rhs {
                report.violation(
                    vec![x.to_string(), y.to_string()],
                    format!("{lhs} vs {rhs}"),
                );
            }
        }
    }
    report
}
