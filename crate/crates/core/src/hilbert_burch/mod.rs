//! Codimension-two rings presented by a Hilbert–Burch matrix.
//!
//! For a perfect height-two ideal `I` with `n` generators and Hilbert–Burch
//! matrix `A` (of size `(n-1) x n` up to transpose), `I` is generated by the
//! maximal minors of `A`, and when `S/I` is generically Gorenstein its
//! canonical trace is generated by the `(n-2)`-minors of `A`.

mod semigroup;

pub use semigroup::{semigroup_analyze, semigroup_hb_trace, SemigroupData, SemigroupTrace};

use std::collections::BTreeMap;

use crate::determinantal::{specializes_condition, SymbolicMatrix};
use crate::error::{Error, Result};
use crate::ideal::GeneratorIdeal;
use crate::poly::{parse_polynomials, Var};

/// Hypotheses the caller vouches for. They cannot be checked here.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Assertions {
    /// `S/I` is generically Gorenstein.
    pub generically_gorenstein: bool,
    /// The ideal of `(r+1)`-minors has the generic height.
    pub generic_height: bool,
}

impl Assertions {
    /// Human-readable list of what was assumed.
    pub fn describe(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.generically_gorenstein {
            out.push("generically Gorenstein (asserted by user, not verified)".to_string());
        }
        if self.generic_height {
            out.push("ideal of minors has generic height (asserted by user, not verified)".to_string());
        }
        out
    }
}

/// A matrix meant as a Hilbert–Burch matrix, with optional degree data.
///
/// `row_degrees` (`a_1..a_n`) and `col_degrees` (`b_1..b_{n-1}`) follow the
/// `n x (n-1)` orientation: entry `f_ij` should have degree `a_i - b_j`.
/// For an `(n-1) x n` input the vector `a` indexes columns.
#[derive(Clone, Debug)]
pub struct GradedMatrixInput {
    matrix: SymbolicMatrix,
    a: Option<Vec<i64>>,
    b: Option<Vec<i64>>,
}

impl GradedMatrixInput {
    pub fn new(matrix: SymbolicMatrix) -> Result<Self> {
        Self::with_degrees(matrix, None, None)
    }

    pub fn with_degrees(matrix: SymbolicMatrix, a: Option<Vec<i64>>, b: Option<Vec<i64>>) -> Result<Self> {
        let (rows, cols) = (matrix.nrows(), matrix.ncols());
        if rows == 0 || cols == 0 || (rows + 1 != cols && cols + 1 != rows) {
            return Err(Error::Dimension(format!(
                "a Hilbert-Burch matrix must be (n-1) x n or n x (n-1), got {rows} x {cols}"
            )));
        }
        let n = rows.max(cols);
        if let Some(a) = &a {
            if a.len() != n {
                return Err(Error::Dimension(format!("expected {n} values for a, got {}", a.len())));
            }
        }
        if let Some(b) = &b {
            if b.len() != n - 1 {
                return Err(Error::Dimension(format!("expected {} values for b, got {}", n - 1, b.len())));
            }
        }
        Ok(GradedMatrixInput { matrix, a, b })
    }

    pub fn matrix(&self) -> &SymbolicMatrix {
        &self.matrix
    }

    /// Number of generators of the ideal.
    pub fn n(&self) -> usize {
        self.matrix.nrows().max(self.matrix.ncols())
    }

    pub fn row_degrees(&self) -> Option<&[i64]> {
        self.a.as_deref()
    }

    pub fn col_degrees(&self) -> Option<&[i64]> {
        self.b.as_deref()
    }

    /// The matrix in `(n-1) x n` orientation.
    pub fn wide(&self) -> SymbolicMatrix {
        if self.matrix.nrows() < self.matrix.ncols() {
            self.matrix.clone()
        } else {
            self.matrix.transpose()
        }
    }

    /// Indices `(i, j)` into `a` and `b` of the input cell `(row, col)`.
    fn degree_indices(&self, row: usize, col: usize) -> (usize, usize) {
        if self.matrix.nrows() > self.matrix.ncols() {
            (row, col)
        } else {
            (col, row)
        }
    }
}

/// Reads the text matrix format: one row per line, entries separated by
/// `;`, `#` starts a comment. Header lines `a: ...`, `b: ...` give degree
/// vectors and `w: var=weight ...` grading weights.
pub fn parse_matrix_file(text: &str) -> Result<GradedMatrixInput> {
    let (matrix, a, b) = read_matrix(text)?;
    GradedMatrixInput::with_degrees(matrix, a, b)
}

/// The same format read as a matrix of any shape; degree headers are
/// accepted and ignored.
pub fn parse_plain_matrix(text: &str) -> Result<SymbolicMatrix> {
    Ok(read_matrix(text)?.0)
}

type DegreeVector = Option<Vec<i64>>;

fn read_matrix(text: &str) -> Result<(SymbolicMatrix, DegreeVector, DegreeVector)> {
    let mut a = None;
    let mut b = None;
    let mut weights: BTreeMap<Var, u32> = BTreeMap::new();
    let mut rows: Vec<(usize, Vec<String>)> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = header(line, 'a') {
            a = Some(parse_ints(rest, ln)?);
        } else if let Some(rest) = header(line, 'b') {
            b = Some(parse_ints(rest, ln)?);
        } else if let Some(rest) = header(line, 'w') {
            for item in rest.split_whitespace() {
                let (v, w) = item
                    .split_once('=')
                    .ok_or_else(|| Error::Invalid(format!("line {ln}: expected var=weight, got `{item}`")))?;
                let w: u32 = w
                    .trim()
                    .parse()
                    .map_err(|_| Error::Invalid(format!("line {ln}: bad weight `{w}`")))?;
                weights.insert(Var::from_name(v.trim()), w);
            }
        } else {
            rows.push((ln, line.split(';').map(|e| e.trim().to_string()).collect()));
        }
    }
    if rows.is_empty() {
        return Err(Error::Dimension("matrix file has no rows".into()));
    }
    let texts: Vec<&str> = rows.iter().flat_map(|(_, r)| r.iter().map(String::as_str)).collect();
    let polys = match parse_polynomials(&texts, Some(&weights)) {
        Ok(ps) => ps,
        Err(e) => {
            // find the offending entry for a useful message
            for (ln, r) in &rows {
                for (k, t) in r.iter().enumerate() {
                    if let Err(inner) = parse_polynomials(&[t], None) {
                        return Err(Error::Invalid(format!("line {ln}, entry {}: {inner}", k + 1)));
                    }
                }
            }
            return Err(e);
        }
    };
    let ring = match polys.first() {
        Some(p) => p.ring().clone(),
        None => unreachable!("at least one row"),
    };
    let mut it = polys.into_iter();
    let matrix_rows: Vec<Vec<_>> = rows
        .iter()
        .map(|(_, r)| it.by_ref().take(r.len()).collect())
        .collect();
    let matrix = SymbolicMatrix::new(&ring, matrix_rows)?;
    Ok((matrix, a, b))
}

fn header(line: &str, key: char) -> Option<&str> {
    let rest = line.strip_prefix(key)?.trim_start();
    rest.strip_prefix(':')
}

fn parse_ints(s: &str, ln: usize) -> Result<Vec<i64>> {
    s.split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| Error::Invalid(format!("line {ln}: `{t}` is not an integer")))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    NotHomogeneous,
    WrongDegree { expected: i64, found: u64 },
    /// `a_i - b_j <= 0` but the entry is nonzero.
    ShouldBeZero { expected: i64 },
}

/// A grading violation at a 0-based cell of the input matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingViolation {
    pub row: usize,
    pub col: usize,
    pub kind: ViolationKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorCheck {
    /// 0-based column of the `(n-1) x n` orientation left out.
    pub omitted: usize,
    pub zero: bool,
    pub homogeneous: bool,
    pub degree: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HbCheckReport {
    pub rows: usize,
    pub cols: usize,
    pub n: usize,
    pub violations: Vec<GradingViolation>,
    pub zero_rows: Vec<usize>,
    pub zero_cols: Vec<usize>,
    pub minors: Vec<MinorCheck>,
    /// Properties that are never checked and must be vouched for.
    pub unchecked: Vec<String>,
}

impl HbCheckReport {
    pub fn all_minors_homogeneous(&self) -> bool {
        self.minors.iter().all(|m| m.homogeneous)
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty() && self.zero_rows.is_empty() && self.zero_cols.is_empty() && self.all_minors_homogeneous()
    }
}

pub fn hb_check(input: &GradedMatrixInput) -> HbCheckReport {
    let m = input.matrix();
    let mut violations = Vec::new();
    if let (Some(a), Some(b)) = (input.row_degrees(), input.col_degrees()) {
        for row in 0..m.nrows() {
            for col in 0..m.ncols() {
                let f = m.entry(row, col);
                if f.is_zero() {
                    continue;
                }
                let (i, j) = input.degree_indices(row, col);
                let expected = a[i] - b[j];
                let kind = if expected <= 0 {
                    Some(ViolationKind::ShouldBeZero { expected })
                } else {
                    match f.homogeneous_degree() {
                        None => Some(ViolationKind::NotHomogeneous),
                        Some(d) if d as i64 != expected => Some(ViolationKind::WrongDegree { expected, found: d }),
                        Some(_) => None,
                    }
                };
                if let Some(kind) = kind {
                    violations.push(GradingViolation { row, col, kind });
                }
            }
        }
    }
    let minors = input
        .wide()
        .maximal_minors_by_column()
        .expect("shape checked on construction")
        .iter()
        .enumerate()
        .map(|(omitted, p)| MinorCheck {
            omitted,
            zero: p.is_zero(),
            homogeneous: p.is_homogeneous(),
            degree: if p.is_zero() { None } else { p.homogeneous_degree() },
        })
        .collect();
    HbCheckReport {
        rows: m.nrows(),
        cols: m.ncols(),
        n: input.n(),
        violations,
        zero_rows: m.zero_rows(),
        zero_cols: m.zero_cols(),
        minors,
        unchecked: vec![
            "height 2 / perfection of the ideal of maximal minors".to_string(),
            "generic Gorensteinness of the quotient ring".to_string(),
        ],
    }
}

#[derive(Clone, Debug)]
pub struct HbIdeal {
    /// The maximal minors by omitted column, sign-normalized; may contain
    /// zeros.
    pub minors: Vec<crate::poly::Polynomial>,
    pub ideal: GeneratorIdeal,
    pub warnings: Vec<String>,
}

/// The ideal of maximal minors.
pub fn hb_ideal(input: &GradedMatrixInput) -> Result<HbIdeal> {
    let wide = input.wide();
    let minors: Vec<_> = wide
        .maximal_minors_by_column()?
        .into_iter()
        .map(|p| p.sign_normalized())
        .collect();
    let warnings = minors
        .iter()
        .enumerate()
        .filter(|(_, p)| p.is_zero())
        .map(|(j, _)| format!("maximal minor omitting column {} vanishes and was dropped", j + 1))
        .collect();
    let ideal = GeneratorIdeal::new(wide.ring(), minors.iter().cloned())?;
    Ok(HbIdeal {
        minors,
        ideal,
        warnings,
    })
}

#[derive(Clone, Debug)]
pub struct TraceResult {
    pub ideal: GeneratorIdeal,
    pub assumptions: Vec<String>,
    pub warnings: Vec<String>,
}

/// The canonical trace `I_{n-2}(A)` of `S/I`. Refuses to run unless the
/// caller asserts that `S/I` is generically Gorenstein.
pub fn hb_trace(input: &GradedMatrixInput, assertions: &Assertions) -> Result<TraceResult> {
    if !assertions.generically_gorenstein {
        return Err(Error::Hypothesis(
            "the trace formula needs S/I generically Gorenstein; this must be asserted".into(),
        ));
    }
    let ideal = input.wide().ideal_of_minors(input.n() - 2)?;
    Ok(TraceResult {
        ideal,
        assumptions: assertions.describe(),
        warnings: Vec::new(),
    })
}

/// `I_r(M)^{n-m}` for an `m x n` matrix `M` (transposed if taller than
/// wide), the trace predicted when the generic trace specializes. A warning
/// is attached when `n <= 2m - r` fails.
pub fn trace_of_specialization(
    matrix: &SymbolicMatrix,
    r: usize,
    assertions: &Assertions,
) -> Result<TraceResult> {
    let (m, n) = if matrix.nrows() <= matrix.ncols() {
        (matrix.nrows(), matrix.ncols())
    } else {
        (matrix.ncols(), matrix.nrows())
    };
    if r < 1 || r + 1 > m {
        return Err(Error::Hypothesis(format!(
            "need 1 <= r <= min(m, n) - 1, got r = {r} for a {m} x {n} matrix"
        )));
    }
    let mut warnings = Vec::new();
    if !specializes_condition(m, n, r) {
        warnings.push(format!(
            "n <= 2m - r fails for (m, n, r) = ({m}, {n}, {r}); the trace need not specialize"
        ));
    }
    let ideal = matrix.ideal_of_minors(r)?.power((n - m) as u32);
    Ok(TraceResult {
        ideal,
        assumptions: assertions.describe(),
        warnings,
    })
}
