//! Exact span computations on coefficient matrices of equigenerated
//! polynomial lists.
//!
//! Every minimal-generator count in this crate reduces to the rank of a
//! matrix whose rows are the coefficient vectors of homogeneous polynomials
//! of one degree. Rows are cleared to primitive integer vectors and reduced
//! by fraction-free elimination. A prime-field pass runs first; it can only
//! certify full row rank (independence mod p implies independence over Q),
//! so any other outcome is settled by the exact integer elimination.

use std::collections::BTreeMap;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Ring};

pub const DEFAULT_PRIME: u64 = 2_147_483_647;
pub const DEFAULT_MAX_ENTRIES: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankOptions {
    /// Prime for the modular fast path, `None` to go straight to exact
    /// elimination. Must satisfy `2^30 < p < 2^32`.
    pub prime: Option<u64>,
    /// Refuse matrices with more nonzero entries than this.
    pub max_entries: usize,
}

impl Default for RankOptions {
    fn default() -> Self {
        RankOptions {
            prime: Some(DEFAULT_PRIME),
            max_entries: DEFAULT_MAX_ENTRIES,
        }
    }
}

impl RankOptions {
    pub fn exact_only() -> Self {
        RankOptions {
            prime: None,
            ..Default::default()
        }
    }

    pub fn with_max_entries(max_entries: usize) -> Self {
        RankOptions {
            max_entries,
            ..Default::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if let Some(p) = self.prime {
            if p <= 1 << 30 || p >= 1 << 32 || !is_prime(p) {
                return Err(Error::Invalid(format!(
                    "modular rank needs a prime between 2^30 and 2^32, got {p}"
                )));
            }
        }
        Ok(())
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// How a reported rank was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankCertificate {
    /// Full row rank modulo the configured prime.
    Modular,
    /// Exact integer elimination.
    Exact,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankReport {
    pub rank: usize,
    pub modular_rank: Option<usize>,
    pub certificate: RankCertificate,
}

/// Sparse row: strictly increasing column indices, nonzero entries.
pub type SparseRow<T> = Vec<(usize, T)>;

/// Coefficient matrix of a polynomial list: one row per polynomial, one
/// column per monomial occurring in some input, columns in canonical
/// monomial order (highest first).
#[derive(Clone, Debug)]
pub struct CoefficientMatrix {
    columns: Vec<Monomial>,
    rows: Vec<SparseRow<BigRational>>,
}

impl CoefficientMatrix {
    pub fn from_polynomials(polys: &[Polynomial]) -> Result<Self> {
        if let Some(first) = polys.first() {
            for p in polys {
                first.ring().check_same(p.ring())?;
            }
        }
        let mut cols: BTreeMap<&Monomial, usize> = BTreeMap::new();
        for p in polys {
            for (m, _) in p.terms() {
                cols.insert(m, 0);
            }
        }
        let columns: Vec<Monomial> = cols.keys().rev().map(|m| (*m).clone()).collect();
        for (k, m) in columns.iter().enumerate() {
            *cols.get_mut(m).expect("present") = k;
        }
        let rows = polys
            .iter()
            .map(|p| p.terms().iter().map(|(m, c)| (cols[m], c.clone())).collect())
            .collect();
        Ok(CoefficientMatrix { columns, rows })
    }

    pub fn columns(&self) -> &[Monomial] {
        &self.columns
    }

    pub fn rows(&self) -> &[SparseRow<BigRational>] {
        &self.rows
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Rebuilds the polynomial of row `i`.
    pub fn row_polynomial(&self, ring: &Ring, i: usize) -> Polynomial {
        Polynomial::from_terms(
            ring,
            self.rows[i]
                .iter()
                .map(|(j, c)| (self.columns[*j].clone(), c.clone())),
        )
    }

    /// Rows scaled to primitive integer vectors (same row space).
    pub fn integer_rows(&self) -> Vec<SparseRow<BigInt>> {
        self.rows.iter().map(|r| primitive_integer_row(r)).collect()
    }
}

fn primitive_integer_row(row: &[(usize, BigRational)]) -> SparseRow<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let mut out: SparseRow<BigInt> = row
        .iter()
        .map(|(j, c)| (*j, c.numer() * (&lcm / c.denom())))
        .collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut SparseRow<BigInt>) {
    let g = row.iter().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for (_, c) in row.iter_mut() {
            *c /= &g;
        }
    }
}

/// Common weighted degree of the nonzero inputs, `None` if all are zero.
fn common_degree<'a>(polys: impl IntoIterator<Item = &'a Polynomial>) -> Result<Option<u64>> {
    let mut deg = None;
    for p in polys {
        if p.is_zero() {
            continue;
        }
        let d = p.homogeneous_degree().ok_or(Error::MixedDegree)?;
        match deg {
            None => deg = Some(d),
            Some(e) if e != d => return Err(Error::MixedDegree),
            _ => {}
        }
    }
    Ok(deg)
}

fn check_context(polys: &[&Polynomial]) -> Result<()> {
    if let Some(first) = polys.first() {
        for p in polys {
            first.ring().check_same(p.ring())?;
        }
    }
    Ok(())
}

/// Dimension of the Q-span of homogeneous polynomials of one degree.
pub fn span_dim(gens: &[Polynomial]) -> Result<usize> {
    Ok(span_dim_with(gens, &RankOptions::default())?.rank)
}

pub fn span_dim_with(gens: &[Polynomial], opts: &RankOptions) -> Result<RankReport> {
    opts.validate()?;
    check_context(&gens.iter().collect::<Vec<_>>())?;
    common_degree(gens)?;
    let matrix = CoefficientMatrix::from_polynomials(gens)?;
    let nnz = matrix.nnz();
    if nnz > opts.max_entries {
        return Err(Error::Resource {
            needed: nnz,
            cap: opts.max_entries,
        });
    }
    let rows: Vec<SparseRow<BigInt>> = matrix
        .integer_rows()
        .into_iter()
        .filter(|r| !r.is_empty())
        .collect();
    let modular_rank = opts.prime.map(|p| modular_rank(&rows, p));
    if modular_rank == Some(rows.len()) {
        return Ok(RankReport {
            rank: rows.len(),
            modular_rank,
            certificate: RankCertificate::Modular,
        });
    }
    let rank = integer_rank(rows);
    if let Some(mr) = modular_rank {
        if mr > rank {
            return Err(Error::Internal(format!(
                "modular rank {mr} exceeds exact rank {rank}"
            )));
        }
    }
    Ok(RankReport {
        rank,
        modular_rank,
        certificate: RankCertificate::Exact,
    })
}

/// True iff both lists span the same Q-vector space.
pub fn span_equal(a: &[Polynomial], b: &[Polynomial]) -> Result<bool> {
    let all: Vec<Polynomial> = a.iter().chain(b).cloned().collect();
    check_context(&all.iter().collect::<Vec<_>>())?;
    common_degree(&all)?;
    let da = span_dim(a)?;
    let db = span_dim(b)?;
    if da != db {
        return Ok(false);
    }
    Ok(span_dim(&all)? == da)
}

/// True iff `p` lies in the Q-span of `gens`.
pub fn in_span(p: &Polynomial, gens: &[Polynomial]) -> Result<bool> {
    if p.is_zero() {
        return Ok(true);
    }
    if gens.iter().all(Polynomial::is_zero) {
        check_context(&std::iter::once(p).chain(gens).collect::<Vec<_>>())?;
        return Ok(false);
    }
    let mut all = gens.to_vec();
    all.push(p.clone());
    check_context(&all.iter().collect::<Vec<_>>())?;
    common_degree(&all)?;
    Ok(span_dim(&all)? == span_dim(gens)?)
}

fn bits(x: &BigInt) -> u64 {
    x.bits()
}

/// `lhs_scale * row - rhs_scale * basis`, merged over sorted columns.
fn combine(row: &[(usize, BigInt)], a: &BigInt, basis: &[(usize, BigInt)], b: &BigInt) -> SparseRow<BigInt> {
    let mut out = Vec::with_capacity(row.len() + basis.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < basis.len() {
        let ci = row.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = basis.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        let (col, v) = if ci < cj {
            i += 1;
            (ci, a * &row[i - 1].1)
        } else if cj < ci {
            j += 1;
            (cj, -(b * &basis[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (ci, a * &row[i - 1].1 - b * &basis[j - 1].1)
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    out
}

fn lookup<T>(row: &[(usize, T)], col: usize) -> Option<&T> {
    row.binary_search_by_key(&col, |e| e.0).ok().map(|k| &row[k].1)
}

/// Exact rank of integer rows by fraction-free elimination.
///
/// Each surviving row becomes a basis row whose pivot is its entry of
/// smallest bit length; later rows are cleared at every pivot by
/// cross-multiplication and then divided by their content.
pub fn integer_rank(rows: Vec<SparseRow<BigInt>>) -> usize {
    let mut basis: Vec<(usize, SparseRow<BigInt>)> = Vec::new();
    for mut r in rows {
        for (pc, b) in &basis {
            if let Some(x) = lookup(&r, *pc).cloned() {
                let piv = lookup(b, *pc).expect("pivot entry");
                let g = piv.gcd(&x);
                let (a, c) = (piv / &g, &x / &g);
                r = combine(&r, &a, b, &c);
                make_primitive(&mut r);
                if r.is_empty() {
                    break;
                }
            }
        }
        if r.is_empty() {
            continue;
        }
        if r[0].1.sign() == Sign::Minus {
            for (_, c) in r.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        let pc = r
            .iter()
            .min_by_key(|(c, v)| (bits(v), *c))
            .map(|(c, _)| *c)
            .expect("nonempty");
        basis.push((pc, r));
    }
    basis.len()
}

fn to_mod(x: &BigInt, p: u64) -> u64 {
    let r = (x % BigInt::from(p)).to_i64().expect("fits");
    if r < 0 {
        (r + p as i64) as u64
    } else {
        r as u64
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Rank of the rows reduced modulo the prime `p` (`p < 2^32`). Never
/// exceeds the rank over Q.
pub fn modular_rank(rows: &[SparseRow<BigInt>], p: u64) -> usize {
    let mut basis: Vec<(usize, SparseRow<u64>)> = Vec::new();
    for row in rows {
        let mut r: SparseRow<u64> = row
            .iter()
            .map(|(c, v)| (*c, to_mod(v, p)))
            .filter(|(_, v)| *v != 0)
            .collect();
        for (pc, b) in &basis {
            let Some(&x) = lookup(&r, *pc) else { continue };
            // basis rows are monic at their pivot
            let f = p - x;
            let mut out = Vec::with_capacity(r.len() + b.len());
            let (mut i, mut j) = (0, 0);
            while i < r.len() || j < b.len() {
                let ci = r.get(i).map(|e| e.0).unwrap_or(usize::MAX);
                let cj = b.get(j).map(|e| e.0).unwrap_or(usize::MAX);
                let (col, v) = if ci < cj {
                    i += 1;
                    (ci, r[i - 1].1)
                } else if cj < ci {
                    j += 1;
                    (cj, f * b[j - 1].1 % p)
                } else {
                    i += 1;
                    j += 1;
                    (ci, (r[i - 1].1 + f * b[j - 1].1) % p)
                };
                if v != 0 {
                    out.push((col, v));
                }
            }
            r = out;
            if r.is_empty() {
                break;
            }
        }
        if let Some(&(pc, v)) = r.first() {
            let inv = pow_mod(v, p - 2, p);
            for (_, c) in r.iter_mut() {
                *c = *c * inv % p;
            }
            basis.push((pc, r));
        }
    }
    basis.len()
}
