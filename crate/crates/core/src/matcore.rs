//! Dense nonnegative matrices, structural checks, and the Perron
//! eigenvalue oracle that validates every bound this crate produces.
//!
//! Matrices are stored dense and row-major; everything here targets
//! desk-scale orders where an n-squared table is cheap.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::connectivity;

/// Default relative residual for the power iteration oracle.
pub const DEFAULT_ORACLE_TOL: f64 = 1e-12;

/// Default iteration budget for a matrix of order `n`.
pub fn default_max_iter(n: usize) -> usize {
    200 * n + 10_000
}

#[derive(Debug, Error)]
pub enum MatError {
    #[error("matrix order must be at least 1")]
    Empty,
    #[error("row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("entry ({i},{j}) is negative: {value}")]
    NegativeEntry { i: usize, j: usize, value: f64 },
    #[error("entry ({i},{j}) is not finite")]
    NonFiniteEntry { i: usize, j: usize },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("vector length {got} does not match matrix order {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("matrix support is not irreducible (support digraph not strongly connected)")]
    NotIrreducible,
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error(
        "power iteration did not converge in {iterations} iterations \
         (best estimate rho = {rho}, residual = {residual})"
    )]
    NoConvergence {
        rho: f64,
        residual: f64,
        iterations: usize,
    },
}

/// Dense square matrix with finite nonnegative entries.
///
/// The diagonal is unconstrained here; [`crate::bounds::ShiftedSystem`]
/// additionally requires a zero diagonal for its off-diagonal part.
#[derive(Debug, Clone, PartialEq)]
pub struct NonnegMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl NonnegMatrix {
    /// Builds a matrix from row slices, validating shape and entries.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, MatError> {
        let n = rows.len();
        if n == 0 {
            return Err(MatError::Empty);
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(MatError::NotSquare {
                    row: i + 1,
                    len: row.len(),
                    n,
                });
            }
            entries.extend_from_slice(row);
        }
        Self::from_flat(n, entries)
    }

    /// Builds a matrix from a row-major entry buffer.
    pub fn from_flat(n: usize, entries: Vec<f64>) -> Result<Self, MatError> {
        if n == 0 {
            return Err(MatError::Empty);
        }
        if entries.len() != n * n {
            return Err(MatError::NotSquare {
                row: entries.len() / n + 1,
                len: entries.len() % n,
                n,
            });
        }
        for (k, &v) in entries.iter().enumerate() {
            let (i, j) = (k / n + 1, k % n + 1);
            if !v.is_finite() {
                return Err(MatError::NonFiniteEntry { i, j });
            }
            if v < 0.0 {
                return Err(MatError::NegativeEntry { i, j, value: v });
            }
        }
        Ok(Self { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.n).all(|i| self.at(i, i) == 0.0)
    }

    /// Returns `self + diag(t)`.
    pub fn with_diagonal(&self, t: &[f64]) -> Result<Self, MatError> {
        if t.len() != self.n {
            return Err(MatError::LengthMismatch {
                expected: self.n,
                got: t.len(),
            });
        }
        let mut entries = self.entries.clone();
        for (i, &ti) in t.iter().enumerate() {
            entries[i * self.n + i] += ti;
        }
        Self::from_flat(self.n, entries)
    }

    pub fn transposed(&self) -> Self {
        let n = self.n;
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j];
            }
        }
        Self { n, entries }
    }

    /// Returns `c * self` for positive `c`.
    pub fn scaled(&self, c: f64) -> Result<Self, MatError> {
        Self::from_flat(self.n, self.entries.iter().map(|&v| c * v).collect())
    }

    /// Out-neighbor lists of the support digraph (arc i -> j iff the
    /// off-diagonal entry (i,j) is positive).
    pub(crate) fn support_adjacency(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut adj = vec![Vec::new(); n];
        for (i, out) in adj.iter_mut().enumerate() {
            for j in 0..n {
                if i != j && self.at(i, j) > 0.0 {
                    out.push(j);
                }
            }
        }
        adj
    }

    /// Parses the plain-text matrix format: first line `n`, then `n`
    /// lines of `n` whitespace-separated decimal reals.
    pub fn parse(text: &str) -> Result<Self, MatError> {
        let mut lines = text.lines().enumerate();
        let (header_idx, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, 1, "empty input, expected matrix order"))?;
        let header_line = header_idx + 1;
        let trimmed = header.trim();
        if trimmed.is_empty() {
            return Err(parse_err(header_line, 1, "expected matrix order"));
        }
        let n: usize = trimmed.parse().map_err(|_| {
            parse_err(
                header_line,
                col_of(header, trimmed),
                &format!("invalid matrix order `{trimmed}`"),
            )
        })?;
        if n == 0 {
            return Err(parse_err(header_line, col_of(header, trimmed), "matrix order must be positive"));
        }

        let mut entries = Vec::with_capacity(n * n);
        let mut rows_read = 0usize;
        let mut last_line = header_line;
        for (idx, line) in lines {
            let line_no = idx + 1;
            last_line = line_no;
            if rows_read == n {
                if line.trim().is_empty() {
                    continue;
                }
                return Err(parse_err(
                    line_no,
                    col_of(line, line.trim_start()),
                    &format!("unexpected content after {n} rows"),
                ));
            }
            if line.trim().is_empty() {
                return Err(parse_err(line_no, 1, "blank line inside matrix body"));
            }
            let mut count = 0usize;
            for token in tokens_with_columns(line) {
                let (col, tok) = token;
                if count == n {
                    return Err(parse_err(
                        line_no,
                        col,
                        &format!("row has more than {n} entries"),
                    ));
                }
                let value: f64 = tok
                    .parse()
                    .map_err(|_| parse_err(line_no, col, &format!("invalid real `{tok}`")))?;
                if !value.is_finite() {
                    return Err(parse_err(line_no, col, "entries must be finite"));
                }
                if value < 0.0 {
                    return Err(parse_err(line_no, col, "entries must be nonnegative"));
                }
                entries.push(value);
                count += 1;
            }
            if count < n {
                return Err(parse_err(
                    line_no,
                    line.len() + 1,
                    &format!("row has {count} entries, expected {n}"),
                ));
            }
            rows_read += 1;
        }
        if rows_read < n {
            return Err(parse_err(
                last_line + 1,
                1,
                &format!("expected {n} rows, found {rows_read}"),
            ));
        }
        Ok(Self { n, entries })
    }

    /// Writes the plain-text matrix format read back by [`Self::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|v| format!("{v}")).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

fn parse_err(line: usize, column: usize, message: &str) -> MatError {
    MatError::Parse {
        line,
        column,
        message: message.to_string(),
    }
}

fn col_of(line: &str, token: &str) -> usize {
    let offset = token.as_ptr() as usize - line.as_ptr() as usize;
    offset + 1
}

/// Splits a line on ASCII whitespace, keeping each token's one-based
/// starting column.
fn tokens_with_columns(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (pos, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..pos]));
            }
        } else if start.is_none() {
            start = Some(pos);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

/// Parses a whitespace-separated list of nonnegative reals (a shift
/// vector). Lines may not contain anything else.
pub fn parse_vector(text: &str) -> Result<Vec<f64>, MatError> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        for (col, tok) in tokens_with_columns(line) {
            let value: f64 = tok
                .parse()
                .map_err(|_| parse_err(idx + 1, col, &format!("invalid real `{tok}`")))?;
            if !value.is_finite() {
                return Err(parse_err(idx + 1, col, "entries must be finite"));
            }
            out.push(value);
        }
    }
    Ok(out)
}

/// Row sums of `a`.
pub fn row_sums(a: &NonnegMatrix) -> Vec<f64> {
    (0..a.n()).map(|i| a.row(i).iter().sum()).collect()
}

/// Weighted row sums: `result[i] = sum_j a[i][j] * weights[j]`.
pub fn weighted_row_sums(a: &NonnegMatrix, weights: &[f64]) -> Result<Vec<f64>, MatError> {
    if weights.len() != a.n() {
        return Err(MatError::LengthMismatch {
            expected: a.n(),
            got: weights.len(),
        });
    }
    Ok((0..a.n())
        .map(|i| {
            a.row(i)
                .iter()
                .zip(weights)
                .map(|(&aij, &wj)| aij * wj)
                .sum()
        })
        .collect())
}

/// True iff the support digraph of `a` is strongly connected.
pub fn is_irreducible(a: &NonnegMatrix) -> bool {
    connectivity::is_strongly_connected(&a.support_adjacency())
}

/// Output of the power iteration oracle. `vector` is the Perron vector
/// normalized to max entry 1; `residual` is the infinity norm of
/// `B x - rho x` divided by `rho`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralResult {
    pub rho: f64,
    pub vector: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
}

/// Min/max row sums of a nonnegative matrix; they sandwich the spectral
/// radius, with equality on either side exactly when all row sums agree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowSumBounds {
    pub lower: f64,
    pub upper: f64,
    pub all_equal: bool,
}

pub fn row_sum_bounds(b: &NonnegMatrix) -> RowSumBounds {
    let sums = row_sums(b);
    let lower = sums.iter().cloned().fold(f64::INFINITY, f64::min);
    let upper = sums.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let all_equal = (upper - lower) <= 1e-12 * upper.abs().max(1.0);
    RowSumBounds {
        lower,
        upper,
        all_equal,
    }
}

/// Spectral radius of a nonnegative matrix with irreducible support,
/// by power iteration on `B + I`.
///
/// The unit shift makes the iteration primitive even for periodic
/// matrices such as bipartite adjacency; it moves every eigenvalue up
/// by one and preserves which of them dominates, so `rho(B)` is
/// recovered as `rho(B + I) - 1`. The start vector is all ones and the
/// whole computation is deterministic for fixed inputs.
pub fn spectral_radius(
    b: &NonnegMatrix,
    tol: f64,
    max_iter: usize,
) -> Result<SpectralResult, MatError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(MatError::InvalidTolerance(tol));
    }
    if !is_irreducible(b) {
        return Err(MatError::NotIrreducible);
    }
    let n = b.n();
    let mut x = vec![1.0_f64; n];
    let mut y = vec![0.0_f64; n];
    let mut best_rho = f64::NAN;
    let mut best_residual = f64::INFINITY;

    for iter in 1..=max_iter {
        for i in 0..n {
            let row = b.row(i);
            let mut acc = x[i];
            for j in 0..n {
                acc += row[j] * x[j];
            }
            y[i] = acc;
        }
        let lambda = y.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let mut raw = 0.0_f64;
        for i in 0..n {
            raw = raw.max((y[i] - lambda * x[i]).abs());
        }
        let rho = lambda - 1.0;
        let residual = raw / rho.max(f64::MIN_POSITIVE);
        if residual < best_residual {
            best_residual = residual;
            best_rho = rho;
        }
        if residual <= tol {
            return Ok(SpectralResult {
                rho,
                vector: x,
                residual,
                iterations: iter,
            });
        }
        for i in 0..n {
            x[i] = y[i] / lambda;
        }
    }
    Err(MatError::NoConvergence {
        rho: best_rho,
        residual: best_residual,
        iterations: max_iter,
    })
}

/// [`spectral_radius`] with the default tolerance and iteration budget.
pub fn spectral_radius_default(b: &NonnegMatrix) -> Result<SpectralResult, MatError> {
    spectral_radius(b, DEFAULT_ORACLE_TOL, default_max_iter(b.n()))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn mat(rows: &[&[f64]]) -> NonnegMatrix {
        NonnegMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn row_sums_basic() {
        let a = mat(&[&[0.0, 2.0], &[1.0, 0.0]]);
        assert_eq!(row_sums(&a), vec![2.0, 1.0]);
        let k3 = mat(&[&[0.0, 1.0, 1.0], &[1.0, 0.0, 1.0], &[1.0, 1.0, 0.0]]);
        assert_eq!(row_sums(&k3), vec![2.0, 2.0, 2.0]);
        // star with center first: degrees 3,1,1,1 counted by hand
        let star = mat(&[
            &[0.0, 1.0, 1.0, 1.0],
            &[1.0, 0.0, 0.0, 0.0],
            &[1.0, 0.0, 0.0, 0.0],
            &[1.0, 0.0, 0.0, 0.0],
        ]);
        assert_eq!(row_sums(&star), vec![3.0, 1.0, 1.0, 1.0]);
    }

    #[test]
    fn weighted_row_sums_basic() {
        let a = mat(&[&[0.0, 2.0], &[1.0, 0.0]]);
        // s1 = 2*1, s2 = 1*2, expanded by hand
        assert_eq!(weighted_row_sums(&a, &[2.0, 1.0]).unwrap(), vec![2.0, 2.0]);
        let k3 = mat(&[&[0.0, 1.0, 1.0], &[1.0, 0.0, 1.0], &[1.0, 1.0, 0.0]]);
        assert_eq!(
            weighted_row_sums(&k3, &[2.0, 2.0, 2.0]).unwrap(),
            vec![4.0, 4.0, 4.0]
        );
        let star = mat(&[
            &[0.0, 1.0, 1.0, 1.0],
            &[1.0, 0.0, 0.0, 0.0],
            &[1.0, 0.0, 0.0, 0.0],
            &[1.0, 0.0, 0.0, 0.0],
        ]);
        assert_eq!(
            weighted_row_sums(&star, &[3.0, 1.0, 1.0, 1.0]).unwrap(),
            vec![3.0, 3.0, 3.0, 3.0]
        );
    }

    #[test]
    fn weighted_row_sums_length_mismatch() {
        let a = mat(&[&[0.0, 2.0], &[1.0, 0.0]]);
        assert!(matches!(
            weighted_row_sums(&a, &[1.0]),
            Err(MatError::LengthMismatch {
                expected: 2,
                got: 1
            })
        ));
    }

    #[test]
    fn irreducibility_checks() {
        assert!(is_irreducible(&mat(&[&[0.0, 1.0], &[1.0, 0.0]])));
        assert!(!is_irreducible(&mat(&[&[0.0, 1.0], &[0.0, 0.0]])));
        // connected undirected graph has symmetric, hence irreducible, support
        let p3 = mat(&[&[0.0, 1.0, 0.0], &[1.0, 0.0, 1.0], &[0.0, 1.0, 0.0]]);
        assert!(is_irreducible(&p3));
    }

    #[test]
    fn oracle_matches_characteristic_roots() {
        // eigenvalues +/- sqrt(2) from lambda^2 - 2
        let a = mat(&[&[0.0, 2.0], &[1.0, 0.0]]);
        let r = spectral_radius_default(&a).unwrap();
        assert!((r.rho - 2.0_f64.sqrt()).abs() < 1e-11);
        assert!(r.vector.iter().all(|&v| v > 0.0));
        assert!(r.residual <= DEFAULT_ORACLE_TOL);

        // trace 3, determinant 0 -> eigenvalues {3, 0}
        let b = mat(&[&[2.0, 2.0], &[1.0, 1.0]]);
        assert!((spectral_radius_default(&b).unwrap().rho - 3.0).abs() < 1e-11);

        // trace 5.5, determinant 2.5 -> eigenvalues {5, 0.5}
        let c = mat(&[&[4.5, 2.0], &[1.0, 1.0]]);
        assert!((spectral_radius_default(&c).unwrap().rho - 5.0).abs() < 1e-11);
    }

    #[test]
    fn oracle_rejects_reducible_input() {
        let a = mat(&[&[1.0, 1.0], &[0.0, 1.0]]);
        assert!(matches!(
            spectral_radius_default(&a),
            Err(MatError::NotIrreducible)
        ));
    }

    #[test]
    fn oracle_reports_best_estimate_on_budget_exhaustion() {
        let a = mat(&[&[0.0, 2.0], &[1.0, 0.0]]);
        match spectral_radius(&a, 1e-15, 2) {
            Err(MatError::NoConvergence {
                rho,
                residual,
                iterations,
            }) => {
                assert_eq!(iterations, 2);
                assert!(rho > 0.0);
                assert!(residual.is_finite());
            }
            other => panic!("expected NoConvergence, got {other:?}"),
        }
    }

    #[test]
    fn row_sum_bounds_examples() {
        let a = mat(&[&[0.0, 2.0], &[1.0, 0.0]]);
        let b = row_sum_bounds(&a);
        assert_eq!((b.lower, b.upper, b.all_equal), (1.0, 2.0, false));
        let rho = spectral_radius_default(&a).unwrap().rho;
        assert!(b.lower <= rho && rho <= b.upper);

        let k3 = mat(&[&[0.0, 1.0, 1.0], &[1.0, 0.0, 1.0], &[1.0, 1.0, 0.0]]);
        let bk = row_sum_bounds(&k3);
        assert_eq!((bk.lower, bk.upper, bk.all_equal), (2.0, 2.0, true));

        let c = mat(&[&[2.0, 2.0], &[1.0, 1.0]]);
        let bc = row_sum_bounds(&c);
        assert_eq!((bc.lower, bc.upper), (2.0, 4.0));
        assert!(!bc.all_equal);
    }

    #[test]
    fn parse_round_trip() {
        let a = mat(&[&[0.0, 2.5], &[1.0, 0.0]]);
        let parsed = NonnegMatrix::parse(&a.to_text()).unwrap();
        assert_eq!(parsed, a);
    }

    #[test]
    fn parse_reports_line_and_column() {
        match NonnegMatrix::parse("2\n0 1\n1 x\n") {
            Err(MatError::Parse { line, column, .. }) => {
                assert_eq!((line, column), (3, 3));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        match NonnegMatrix::parse("2\n0 1\n") {
            Err(MatError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        match NonnegMatrix::parse("2\n0 1 7\n1 0\n") {
            Err(MatError::Parse { line, column, .. }) => assert_eq!((line, column), (2, 5)),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_negative_and_non_finite() {
        assert!(matches!(
            NonnegMatrix::from_rows(&[vec![0.0, -1.0], vec![1.0, 0.0]]),
            Err(MatError::NegativeEntry { i: 1, j: 2, .. })
        ));
        assert!(matches!(
            NonnegMatrix::from_rows(&[vec![0.0, f64::NAN], vec![1.0, 0.0]]),
            Err(MatError::NonFiniteEntry { i: 1, j: 2 })
        ));
    }

    #[test]
    fn order_one_matrix_is_exact() {
        let m = mat(&[&[3.5]]);
        let r = spectral_radius_default(&m).unwrap();
        assert_eq!(r.rho, 3.5);
        assert_eq!(r.iterations, 1);
    }
}
