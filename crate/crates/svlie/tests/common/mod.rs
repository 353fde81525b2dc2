//! Shared test helpers: a dense, textbook Gauss-Jordan elimination over
//! exact rationals (an independent cross-check oracle for the library's
//! incremental sparse echelon solver) and the command-line test matrix.

#![allow(dead_code)]

use svlie::Rational;

/// One representative invocation per subcommand, used both for golden
/// reports and for byte-stability checks. Every entry must succeed with
/// exit code 0.
pub fn cli_matrix() -> Vec<(&'static str, Vec<&'static str>)> {
    vec![
        ("bracket", vec!["bracket", "--algebra", "svhat", "L(2)", "L(-2)"]),
        ("verify-jacobi", vec!["verify-jacobi", "--algebra", "svt", "--window", "3"]),
        ("verify-grading", vec!["verify-grading", "--algebra", "svhat", "--window", "3"]),
        ("verify-ideal", vec!["verify-ideal", "--algebra", "svt", "--sub", "i2", "--window", "3"]),
        ("center", vec!["center", "--algebra", "sv", "--window", "4"]),
        ("solve-h2", vec!["solve-h2", "--algebra", "svt", "--window", "4"]),
        ("solve-leibniz-h2", vec!["solve-leibniz-h2", "--algebra", "svt", "--window", "4"]),
        ("solve-invariant-form", vec!["solve-invariant-form", "--algebra", "svt", "--window", "4"]),
        ("solve-derivations", vec!["solve-derivations", "--degree", "2"]),
        ("hom-dim", vec!["hom-dim", "--from", "2", "--to", "2"]),
        ("wedge-reduce", vec!["wedge-reduce", "--window", "5", "L(3)", "L(-3)"]),
        ("verify-wedge-relations", vec!["verify-wedge-relations", "--window", "4"]),
        ("verify-primed-table", vec!["verify-primed-table", "--window", "4"]),
        ("aut-apply", vec!["aut-apply", "--params", "-1,1,2,1/3", "L(1) + M(0)"]),
        ("aut-compose", vec!["aut-compose", "-1,1,2,1", "1,2,3,1"]),
        ("aut-inverse", vec!["aut-inverse", "-1,2,3,1/2"]),
        ("aut-verify", vec!["aut-verify", "--window", "3", "--samples", "5", "--seed", "42"]),
        ("inner-apply", vec!["inner-apply", "--word", "1*Y(1/2),1/2*M(0)", "L(0) + N(0)"]),
        ("inner-normal-form", vec!["inner-normal-form", "1*Y(1/2),2*Y(3/2),3*Y(1/2)"]),
        ("lift-apply", vec!["lift-apply", "--params", "-1,1,1,1", "L(0) + N(0) + CL"]),
        ("sweep", vec!["sweep", "--command", "center", "--algebra", "sv", "--range", "3..5"]),
    ]
}

/// Runs the packaged binary with `SVLIE_MAX_K` cleared so ambient
/// environment cannot perturb report bytes.
pub fn run_cli(args: &[&str]) -> std::process::Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_svlie"))
        .args(args)
        .env_remove("SVLIE_MAX_K")
        .output()
        .expect("binary runs")
}

/// A dense rational matrix built row by row.
pub struct DenseMatrix {
    cols: usize,
    rows: Vec<Vec<Rational>>,
}

impl DenseMatrix {
    pub fn new(cols: usize) -> Self {
        DenseMatrix { cols, rows: Vec::new() }
    }

    /// Appends a row given as sparse `(column, value)` entries.
    pub fn push_sparse(&mut self, entries: &[(usize, Rational)]) {
        let mut row = vec![Rational::zero(); self.cols];
        for (j, v) in entries {
            row[*j] = &row[*j] + v;
        }
        self.rows.push(row);
    }

    /// Full Gauss-Jordan reduction: returns the reduced rows and the
    /// pivot column of each.
    fn reduced(&self) -> (Vec<Vec<Rational>>, Vec<usize>) {
        let mut m = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for j in 0..self.cols {
            let Some(p) = (r..m.len()).find(|&i| !m[i][j].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][j].recip();
            for v in &mut m[r] {
                *v = &*v * &inv;
            }
            for i in 0..m.len() {
                if i != r && !m[i][j].is_zero() {
                    let f = m[i][j].clone();
                    for c in 0..self.cols {
                        let delta = &f * &m[r][c];
                        m[i][c] = &m[i][c] - &delta;
                    }
                }
            }
            pivots.push(j);
            r += 1;
            if r == m.len() {
                break;
            }
        }
        m.truncate(r);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.reduced().0.len()
    }

    /// A basis of the right nullspace, one dense vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (m, pivots) = self.reduced();
        let mut basis = Vec::new();
        for j in 0..self.cols {
            if pivots.contains(&j) {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[j] = Rational::one();
            for (row, &pj) in m.iter().zip(&pivots) {
                v[pj] = -&row[j];
            }
            basis.push(v);
        }
        basis
    }
}
