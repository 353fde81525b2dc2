//! Exact sparse linear algebra over the rationals.
//!
//! All solvers reduce to one primitive: maintaining a reduced row
//! echelon form incrementally as rows arrive. Because the reduced form
//! of a row space is unique, every downstream answer (ranks, nullspace
//! bases, residues) is canonical regardless of the order in which
//! equations were generated.

use crate::rational::Rational;

/// A sparse row: strictly increasing column indices with nonzero
/// rational entries.
pub type Row = Vec<(usize, Rational)>;

/// Adds `c * src` to `dst`, keeping the sparse representation sorted
/// and zero-free.
pub fn row_add_scaled(dst: &Row, src: &Row, c: &Rational) -> Row {
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        match (dst.get(i), src.get(j)) {
            (Some((ci, vi)), Some((cj, vj))) => {
                if ci < cj {
                    out.push((*ci, vi.clone()));
                    i += 1;
                } else if cj < ci {
                    let v = vj * c;
                    if !v.is_zero() {
                        out.push((*cj, v));
                    }
                    j += 1;
                } else {
                    let v = vi + &(vj * c);
                    if !v.is_zero() {
                        out.push((*ci, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
            (Some((ci, vi)), None) => {
                out.push((*ci, vi.clone()));
                i += 1;
            }
            (None, Some((cj, vj))) => {
                let v = vj * c;
                if !v.is_zero() {
                    out.push((*cj, v));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Scales a row so its leading entry is one.
fn row_monic(mut row: Row) -> Row {
    if let Some((_, lead)) = row.first() {
        let inv = lead.recip();
        if !inv.is_one() {
            for (_, v) in row.iter_mut() {
                *v *= &inv;
            }
        }
    }
    row
}

/// An incrementally maintained reduced row echelon form.
///
/// Rows are stored monic, fully reduced against each other, and sorted
/// by pivot column, so the stored matrix is the unique reduced echelon
/// basis of the row space.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<Row>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    /// Current rank.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// The echelon rows, sorted by pivot column.
    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    /// The pivot columns, ascending.
    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r[0].0)
    }

    /// Reduces `row` against the echelon without inserting it. The
    /// result is the canonical residue: zero exactly when `row` lies in
    /// the row space.
    pub fn reduce(&self, mut row: Row) -> Row {
        // Rows are sorted by pivot, so one left-to-right sweep reduces
        // every reducible position.
        let mut k = 0;
        let mut out: Row = Vec::new();
        let mut i = 0;
        while i < row.len() {
            let (col, val) = row[i].clone();
            // Find a pivot row for this column, if any.
            while k < self.rows.len() && self.rows[k][0].0 < col {
                k += 1;
            }
            if k < self.rows.len() && self.rows[k][0].0 == col {
                let coef = -&val;
                // Merge the remaining tail with the pivot row.
                let tail: Row = row[i..].to_vec();
                row = row_add_scaled(&tail, &self.rows[k], &coef);
                i = 0;
                out.reserve(row.len());
                continue;
            }
            out.push((col, val));
            i += 1;
        }
        out
    }

    /// Inserts a row, keeping the reduced form. Returns `true` if the
    /// rank grew (the row was independent).
    pub fn insert(&mut self, row: Row) -> bool {
        let residue = self.reduce(row);
        if residue.is_empty() {
            return false;
        }
        let residue = row_monic(residue);
        let pivot = residue[0].0;
        // Back-substitute the new pivot into existing rows.
        for r in self.rows.iter_mut() {
            if let Some(pos) = r.iter().position(|(c, _)| *c == pivot) {
                let coef = -r[pos].1.clone();
                *r = row_add_scaled(r, &residue, &coef);
            }
        }
        let at = self
            .rows
            .binary_search_by_key(&pivot, |r| r[0].0)
            .unwrap_err();
        self.rows.insert(at, residue);
        true
    }

    /// Whether `row` lies in the row space.
    pub fn contains(&self, row: Row) -> bool {
        self.reduce(row).is_empty()
    }

    /// A canonical basis of the solution space of `self * x = 0` over
    /// columns `0..cols`: one monic vector per free column, sorted.
    pub fn nullspace(&self, cols: usize) -> Vec<Row> {
        let pivot_cols: Vec<usize> = self.pivots().collect();
        let mut out = Vec::new();
        for free in 0..cols {
            if pivot_cols.binary_search(&free).is_ok() {
                continue;
            }
            let mut v: Row = Vec::new();
            for r in &self.rows {
                if let Some((_, c)) = r.iter().find(|(col, _)| *col == free) {
                    v.push((r[0].0, -c));
                }
            }
            v.push((free, Rational::one()));
            v.sort_by_key(|(c, _)| *c);
            out.push(v);
        }
        out
    }
}

/// Solves `A x = b` where the rows of `A` and entries of `b` arrive as
/// (row, rhs) pairs over `cols` unknowns. Returns the canonical
/// solution with all free variables set to zero, or `None` if the
/// system is inconsistent.
pub fn solve_linear(rows: &[(Row, Rational)], cols: usize) -> Option<Vec<Rational>> {
    // Work in the augmented space with the right-hand side as an extra
    // trailing column.
    let mut ech = Echelon::new();
    for (row, rhs) in rows {
        let mut aug = row.clone();
        if !rhs.is_zero() {
            aug.push((cols, rhs.clone()));
        }
        ech.insert(aug);
    }
    // Inconsistent iff some echelon row pivots on the augmented column.
    if ech.pivots().any(|p| p == cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for r in ech.rows() {
        let pivot = r[0].0;
        // Free variables are zero, so the pivot value is just the
        // augmented entry.
        let rhs = r
            .iter()
            .find(|(c, _)| *c == cols)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(Rational::zero);
        x[pivot] = rhs;
    }
    Some(x)
}
