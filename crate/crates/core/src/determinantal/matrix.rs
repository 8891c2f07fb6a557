use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ideal::GeneratorIdeal;
use crate::poly::{Polynomial, Ring, Var};

/// A rectangular matrix of polynomials over one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicMatrix {
    ring: Ring,
    nrows: usize,
    ncols: usize,
    entries: Vec<Polynomial>,
}

impl SymbolicMatrix {
    pub fn new(ring: &Ring, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map(Vec::len).unwrap_or(0);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Dimension("rows have different lengths".into()));
        }
        let entries: Vec<Polynomial> = rows.into_iter().flatten().collect();
        for e in &entries {
            ring.check_same(e.ring())?;
        }
        Ok(SymbolicMatrix {
            ring: ring.clone(),
            nrows,
            ncols,
            entries,
        })
    }

    /// The `m x n` matrix of indeterminates `base_i_j` (1-based).
    pub fn generic(base: &str, m: usize, n: usize) -> Self {
        let vars = (1..=m).flat_map(|i| (1..=n).map(move |j| Var::new(base, &[i as u32, j as u32])));
        let ring = Ring::new(vars);
        SymbolicMatrix::generic_in(&ring, base, m, n).expect("variables exist")
    }

    /// Generic matrix whose variables already live in `ring`.
    pub fn generic_in(ring: &Ring, base: &str, m: usize, n: usize) -> Result<Self> {
        let mut rows = Vec::with_capacity(m);
        for i in 1..=m {
            let mut row = Vec::with_capacity(n);
            for j in 1..=n {
                row.push(ring.variable(&Var::new(base, &[i as u32, j as u32]))?);
            }
            rows.push(row);
        }
        SymbolicMatrix::new(ring, rows)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Entry at 0-based position `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.ncols + j]
    }

    pub fn entries(&self) -> impl Iterator<Item = &Polynomial> {
        self.entries.iter()
    }

    pub fn transpose(&self) -> SymbolicMatrix {
        let rows = (0..self.ncols)
            .map(|j| (0..self.nrows).map(|i| self.entry(i, j).clone()).collect())
            .collect();
        SymbolicMatrix::new(&self.ring, rows).expect("rectangular")
    }

    pub fn zero_rows(&self) -> Vec<usize> {
        (0..self.nrows)
            .filter(|&i| (0..self.ncols).all(|j| self.entry(i, j).is_zero()))
            .collect()
    }

    pub fn zero_cols(&self) -> Vec<usize> {
        (0..self.ncols)
            .filter(|&j| (0..self.nrows).all(|i| self.entry(i, j).is_zero()))
            .collect()
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.to_strings_with(&|v: &Var| v.to_string())
    }

    pub fn to_strings_with(&self, name: &dyn Fn(&Var) -> String) -> Vec<Vec<String>> {
        (0..self.nrows)
            .map(|i| (0..self.ncols).map(|j| self.entry(i, j).format_with(name)).collect())
            .collect()
    }

    /// The minor `[A|B]` with 1-based index sets.
    pub fn minor(&self, idx: &MinorIndex) -> Result<Polynomial> {
        if let Some(&a) = idx.rows.last() {
            if a > self.nrows {
                return Err(Error::Bounds(format!("row {a} of a {}-row matrix", self.nrows)));
            }
        }
        if let Some(&b) = idx.cols.last() {
            if b > self.ncols {
                return Err(Error::Bounds(format!(
                    "column {b} of a {}-column matrix",
                    self.ncols
                )));
            }
        }
        let rows: Vec<usize> = idx.rows.iter().map(|a| a - 1).collect();
        let cols: Vec<usize> = idx.cols.iter().map(|b| b - 1).collect();
        Ok(self.det_of(&rows, &cols))
    }

    /// Determinant of the submatrix on 0-based `rows` x `cols` by Laplace
    /// expansion along rows, memoized on the set of consumed columns.
    pub(crate) fn det_of(&self, rows: &[usize], cols: &[usize]) -> Polynomial {
        assert_eq!(rows.len(), cols.len());
        assert!(cols.len() < 64);
        let mut memo = HashMap::new();
        self.laplace(rows, cols, 0, &mut memo)
    }

    fn laplace(
        &self,
        rows: &[usize],
        cols: &[usize],
        used: u64,
        memo: &mut HashMap<u64, Polynomial>,
    ) -> Polynomial {
        let depth = used.count_ones() as usize;
        if depth == rows.len() {
            return self.ring.one();
        }
        if let Some(p) = memo.get(&used) {
            return p.clone();
        }
        let mut acc = self.ring.zero();
        let mut free_before = 0usize;
        for (k, &c) in cols.iter().enumerate() {
            if used & (1 << k) != 0 {
                continue;
            }
            let e = self.entry(rows[depth], c);
            if !e.is_zero() {
                let sub = self.laplace(rows, cols, used | (1 << k), memo);
                if !sub.is_zero() {
                    let t = e.mul(&sub).expect("same ring");
                    acc = if free_before.is_multiple_of(2) {
                        acc.add(&t)
                    } else {
                        acc.sub(&t)
                    }
                    .expect("same ring");
                }
            }
            free_before += 1;
        }
        memo.insert(used, acc.clone());
        acc
    }

    /// All maximal minors obtained by deleting one column of a matrix with
    /// one fewer rows than columns; entry `j` omits column `j` (0-based).
    pub fn maximal_minors_by_column(&self) -> Result<Vec<Polynomial>> {
        if self.nrows + 1 != self.ncols {
            return Err(Error::Dimension(format!(
                "expected an (n-1) x n matrix, got {} x {}",
                self.nrows, self.ncols
            )));
        }
        let rows: Vec<usize> = (0..self.nrows).collect();
        Ok((0..self.ncols)
            .map(|j| {
                let cols: Vec<usize> = (0..self.ncols).filter(|&c| c != j).collect();
                self.det_of(&rows, &cols)
            })
            .collect())
    }

    /// The ideal `I_t(M)` of all `t`-minors, zero minors dropped and
    /// duplicates identified up to sign (each kept with positive leading
    /// coefficient). `t = 0` gives the unit ideal.
    pub fn ideal_of_minors(&self, t: usize) -> Result<GeneratorIdeal> {
        if t == 0 {
            return Ok(GeneratorIdeal::unit(&self.ring));
        }
        if t > self.nrows.min(self.ncols) {
            return Err(Error::Bounds(format!(
                "{t}-minors of a {} x {} matrix",
                self.nrows, self.ncols
            )));
        }
        let mut gens = Vec::new();
        for rows in combinations(self.nrows, t) {
            for cols in combinations(self.ncols, t) {
                let d = self.det_of(&rows, &cols);
                if !d.is_zero() {
                    gens.push(d.sign_normalized());
                }
            }
        }
        GeneratorIdeal::new(&self.ring, gens)
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                break;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// A minor label `[a_1..a_s | b_1..b_s]` with 1-based, strictly increasing
/// row and column indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinorIndex {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl MinorIndex {
    pub fn new(rows: &[usize], cols: &[usize]) -> Result<Self> {
        if rows.len() != cols.len() {
            return Err(Error::NonSquare {
                rows: rows.len(),
                cols: cols.len(),
            });
        }
        if rows.is_empty() {
            return Err(Error::Invalid("a minor needs at least one row".into()));
        }
        let mut rows = rows.to_vec();
        let mut cols = cols.to_vec();
        rows.sort_unstable();
        cols.sort_unstable();
        let strict = |v: &[usize]| v[0] >= 1 && v.windows(2).all(|w| w[0] < w[1]);
        if !strict(&rows) || !strict(&cols) {
            return Err(Error::Bounds(
                "minor indices must be distinct and at least 1".into(),
            ));
        }
        Ok(MinorIndex { rows, cols })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    /// All `s`-minor labels of an `m x n` matrix.
    pub fn all(m: usize, n: usize, s: usize) -> Vec<MinorIndex> {
        let mut out = Vec::new();
        for r in combinations(m, s) {
            for c in combinations(n, s) {
                out.push(MinorIndex {
                    rows: r.iter().map(|i| i + 1).collect(),
                    cols: c.iter().map(|j| j + 1).collect(),
                });
            }
        }
        out
    }
}

impl std::fmt::Display for MinorIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "[{}|{}]", join(&self.rows), join(&self.cols))
    }
}

/// The partial order on minors: `[A|B] <= [C|D]` iff `|A| >= |C|` and
/// `a_i <= c_i`, `b_i <= d_i` for every `i <= |C|`.
pub fn minor_leq(u: &MinorIndex, v: &MinorIndex) -> bool {
    u.size() >= v.size()
        && u.rows.iter().zip(&v.rows).all(|(a, c)| a <= c)
        && u.cols.iter().zip(&v.cols).all(|(b, d)| b <= d)
}
