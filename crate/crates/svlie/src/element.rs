//! Sparse elements: finite rational combinations of basis symbols.
//!
//! An [`Element`] stores its terms in canonical symbol order and never
//! keeps a zero coefficient, so structural equality is semantic
//! equality and the printed form is unique.

use crate::rational::Rational;
use crate::symbol::BasisSymbol;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// A finite linear combination of basis symbols with rational
/// coefficients. The zero element has no terms.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Element {
    terms: BTreeMap<BasisSymbol, Rational>,
}

impl Element {
    pub fn zero() -> Self {
        Element { terms: BTreeMap::new() }
    }

    /// The single basis symbol `s` with coefficient one.
    pub fn from_symbol(s: BasisSymbol) -> Self {
        Element::term(s, Rational::one())
    }

    /// The single term `c * s` (zero `c` yields the zero element).
    pub fn term(s: BasisSymbol, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(s, c);
        }
        Element { terms }
    }

    /// Builds an element from arbitrary (symbol, coefficient) pairs,
    /// merging duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (BasisSymbol, Rational)>>(iter: I) -> Self {
        let mut e = Element::zero();
        for (s, c) in iter {
            e.add_term(s, &c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of `s` (zero if absent).
    pub fn coeff(&self, s: &BasisSymbol) -> Rational {
        self.terms.get(s).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in canonical symbol order.
    pub fn iter(&self) -> impl Iterator<Item = (&BasisSymbol, &Rational)> {
        self.terms.iter()
    }

    /// The symbols with nonzero coefficient, in canonical order.
    pub fn support(&self) -> impl Iterator<Item = &BasisSymbol> {
        self.terms.keys()
    }

    /// Adds `c * s` in place.
    pub fn add_term(&mut self, s: BasisSymbol, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(s).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&s);
        }
    }

    /// Adds `c * other` in place.
    pub fn add_scaled(&mut self, other: &Element, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (s, x) in other.iter() {
            self.add_term(*s, &(x * c));
        }
    }

    /// The element scaled by `c`.
    pub fn scale(&self, c: &Rational) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self.terms.iter().map(|(s, x)| (*s, x * c)).collect(),
        }
    }

    /// Restriction to the symbols satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&BasisSymbol) -> bool) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(s, _)| keep(s))
                .map(|(s, c)| (*s, c.clone()))
                .collect(),
        }
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::from_int(-1));
        out
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&Rational::from_int(-1))
    }
}

impl fmt::Display for Element {
    /// Canonical printed form: terms in basis order, exact rational
    /// coefficients, unit coefficients omitted. The zero element prints
    /// as `0`. Examples: `L(1)`, `-2*L(0)`, `1/2*Y(3/2) + M(0)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (s, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if mag.is_one() {
                write!(f, "{s}")?;
            } else {
                write!(f, "{mag}*{s}")?;
            }
        }
        Ok(())
    }
}
