//! Generic determinantal rings `K[X]/I_{r+1}(X)`.
//!
//! The quotient ring is never materialized. Ideals of it are presented by
//! generators in `K[X]` and pushed through the substitution
//! `x_ij -> sum_k y_ik z_kj` into the polynomial ring `K[Y, Z]`, which is
//! injective on the quotient. Minimal generator counts of equigenerated
//! ideals are then ranks of coefficient matrices.

mod matrix;
mod segre;
mod teter;

pub use matrix::{combinations, minor_leq, MinorIndex, SymbolicMatrix};
pub use segre::SegreContext;
pub use teter::{specializes_condition, teter_formula};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ideal::GeneratorIdeal;
use crate::linalg::{self, RankOptions};
use crate::poly::Polynomial;

/// The generic `m x n` matrix of indeterminates with `m <= n` and the minor
/// size parameter `r`, `1 <= r <= m - 1`.
///
/// A request with more rows than columns is transposed; `transposed` records
/// that the variable labels refer to the transpose.
#[derive(Clone, Debug)]
pub struct GenericMatrixContext {
    m: usize,
    n: usize,
    r: usize,
    transposed: bool,
    matrix: SymbolicMatrix,
}

impl GenericMatrixContext {
    pub fn new(m: usize, n: usize, r: usize) -> Result<Self> {
        let (m, n, transposed) = if m > n { (n, m, true) } else { (m, n, false) };
        if r < 1 || r + 1 > m {
            return Err(Error::Hypothesis(format!(
                "need 1 <= r <= min(m, n) - 1, got r = {r} for a {m} x {n} matrix"
            )));
        }
        Ok(GenericMatrixContext {
            m,
            n,
            r,
            transposed,
            matrix: SymbolicMatrix::generic("x", m, n),
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn transposed(&self) -> bool {
        self.transposed
    }

    pub fn matrix(&self) -> &SymbolicMatrix {
        &self.matrix
    }

    /// `n - m`: the power of `Q` giving the canonical module.
    pub fn canonical_exponent(&self) -> u32 {
        (self.n - self.m) as u32
    }

    pub fn is_gorenstein(&self) -> bool {
        self.m == self.n
    }

    pub fn minor(&self, idx: &MinorIndex) -> Result<Polynomial> {
        self.matrix.minor(idx)
    }

    /// `I_t(X)`.
    pub fn ideal_of_minors(&self, t: usize) -> Result<GeneratorIdeal> {
        self.matrix.ideal_of_minors(t)
    }

    /// `delta = [1..r | 1..r]`.
    pub fn delta(&self) -> Polynomial {
        let first: Vec<usize> = (0..self.r).collect();
        self.matrix.det_of(&first, &first)
    }

    /// `P`: the r-minors of the first r rows.
    pub fn p_ideal(&self) -> GeneratorIdeal {
        let rows: Vec<usize> = (0..self.r).collect();
        let gens = combinations(self.n, self.r)
            .into_iter()
            .map(|cols| self.matrix.det_of(&rows, &cols));
        GeneratorIdeal::new(self.matrix.ring(), gens).expect("same ring")
    }

    /// `Q`: the r-minors of the first r columns.
    pub fn q_ideal(&self) -> GeneratorIdeal {
        let cols: Vec<usize> = (0..self.r).collect();
        let gens = combinations(self.m, self.r)
            .into_iter()
            .map(|rows| self.matrix.det_of(&rows, &cols));
        GeneratorIdeal::new(self.matrix.ring(), gens).expect("same ring")
    }

    pub fn p_q_delta(&self) -> (GeneratorIdeal, GeneratorIdeal, Polynomial) {
        (self.p_ideal(), self.q_ideal(), self.delta())
    }

    /// Generators of `I_r(X)^l` in `K[X]`, read modulo `I_{r+1}(X)`. With
    /// `l = n - m` (the default) this is the canonical trace; `l = 0` gives
    /// the unit ideal.
    pub fn trace(&self, l: Option<u32>) -> GeneratorIdeal {
        let l = l.unwrap_or_else(|| self.canonical_exponent());
        self.ideal_of_minors(self.r).expect("r < m").power(l)
    }

    /// The canonical module `Q^{n-m}`.
    pub fn canonical_module(&self) -> FractionalPowerIdeal {
        FractionalPowerIdeal {
            numerator: self.q_ideal().power(self.canonical_exponent()),
            delta: self.delta(),
            exponent: 0,
        }
    }

    /// The anti-canonical module `(delta^{-1} P)^{n-m}`.
    pub fn anticanonical_module(&self) -> FractionalPowerIdeal {
        let e = self.canonical_exponent();
        FractionalPowerIdeal {
            numerator: self.p_ideal().power(e),
            delta: self.delta(),
            exponent: e,
        }
    }
}

/// `delta^{-exponent} * numerator`, a fractional ideal of the determinantal
/// ring. Only used to name the canonical and anti-canonical modules; its
/// generator count equals that of the numerator.
#[derive(Clone, Debug)]
pub struct FractionalPowerIdeal {
    pub numerator: GeneratorIdeal,
    pub delta: Polynomial,
    pub exponent: u32,
}

impl FractionalPowerIdeal {
    pub fn mu(&self, seg: &SegreContext, opts: &RankOptions) -> Result<usize> {
        mu_in_quotient(&self.numerator, seg, opts)
    }
}

/// Minimal number of generators, in the determinantal ring, of an
/// equigenerated ideal presented in `K[X]`.
pub fn mu_in_quotient(ideal: &GeneratorIdeal, seg: &SegreContext, opts: &RankOptions) -> Result<usize> {
    if !ideal.is_equigenerated() {
        return Err(Error::NotEquigenerated);
    }
    let images = seg.phi_all(ideal.gens(), opts.max_entries)?;
    Ok(linalg::span_dim_with(&images, opts)?.rank)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PqIdentityReport {
    pub holds: bool,
    pub pq_generators: usize,
    pub delta_ir_generators: usize,
    pub span_dim: usize,
}

/// Checks `P*Q = delta * I_r(X)` in the determinantal ring by comparing the
/// spans of both generator lists after the substitution.
pub fn verify_pq_identity(
    ctx: &GenericMatrixContext,
    seg: &SegreContext,
    opts: &RankOptions,
) -> Result<PqIdentityReport> {
    let (p, q, delta) = ctx.p_q_delta();
    let pq = p.product(&q)?;
    let delta_ir = GeneratorIdeal::new(
        ctx.matrix().ring(),
        ctx.ideal_of_minors(ctx.r())?
            .gens()
            .iter()
            .map(|g| delta.mul(g))
            .collect::<Result<Vec<_>>>()?,
    )?;
    let a = seg.phi_all(pq.gens(), opts.max_entries)?;
    let b = seg.phi_all(delta_ir.gens(), opts.max_entries)?;
    let da = linalg::span_dim_with(&a, opts)?.rank;
    let db = linalg::span_dim_with(&b, opts)?.rank;
    let both: Vec<Polynomial> = a.into_iter().chain(b).collect();
    let dab = linalg::span_dim_with(&both, opts)?.rank;
    Ok(PqIdentityReport {
        holds: da == db && db == dab,
        pq_generators: pq.len(),
        delta_ir_generators: delta_ir.len(),
        span_dim: dab,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicativityReport {
    pub l: u32,
    pub mu_pq: usize,
    pub mu_p: usize,
    pub mu_q: usize,
    pub holds: bool,
}

/// Checks `mu((PQ)^l) = mu(P^l) * mu(Q^l)` in the determinantal ring.
pub fn verify_mu_multiplicativity(
    ctx: &GenericMatrixContext,
    seg: &SegreContext,
    l: u32,
    opts: &RankOptions,
) -> Result<MultiplicativityReport> {
    if l < 1 {
        return Err(Error::Invalid("power must be at least 1".into()));
    }
    let (p, q, _) = ctx.p_q_delta();
    let mu_p = mu_in_quotient(&p.power(l), seg, opts)?;
    let mu_q = mu_in_quotient(&q.power(l), seg, opts)?;
    let mu_pq = mu_in_quotient(&p.product(&q)?.power(l), seg, opts)?;
    Ok(MultiplicativityReport {
        l,
        mu_pq,
        mu_p,
        mu_q,
        holds: mu_pq == mu_p * mu_q,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TeterReport {
    pub formula: BigInt,
    pub oracle: usize,
    pub agree: bool,
}

/// Compares the closed-form Teter number with `mu(P^{n-m})` computed in the
/// determinantal ring.
pub fn teter_verify(ctx: &GenericMatrixContext, seg: &SegreContext, opts: &RankOptions) -> Result<TeterReport> {
    let formula = teter_formula(ctx.m(), ctx.n(), ctx.r())?;
    let oracle = ctx.anticanonical_module().mu(seg, opts)?;
    Ok(TeterReport {
        agree: formula == BigInt::from(oracle),
        formula,
        oracle,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(m: usize, n: usize, r: usize) -> (GenericMatrixContext, SegreContext) {
        let c = GenericMatrixContext::new(m, n, r).unwrap();
        let s = SegreContext::new(&c);
        (c, s)
    }

    #[test]
    fn context_validation_and_transpose() {
        assert!(GenericMatrixContext::new(2, 3, 0).is_err());
        assert!(GenericMatrixContext::new(2, 3, 2).is_err());
        let c = GenericMatrixContext::new(4, 3, 2).unwrap();
        assert_eq!((c.m(), c.n(), c.transposed()), (3, 4, true));
    }

    #[test]
    fn p_q_delta_small_cases() {
        let (c, _) = ctx(2, 3, 1);
        let (p, q, d) = c.p_q_delta();
        assert_eq!(p.to_strings(), ["x_1_1", "x_1_2", "x_1_3"]);
        assert_eq!(q.to_strings(), ["x_1_1", "x_2_1"]);
        assert_eq!(d.to_string(), "x_1_1");
        let (c, _) = ctx(3, 4, 2);
        let (p, q, d) = c.p_q_delta();
        assert_eq!((p.len(), q.len()), (6, 3));
        assert_eq!(d.to_string(), "x_1_1*x_2_2 - x_1_2*x_2_1");
    }

    #[test]
    fn generic_traces() {
        let (c, _) = ctx(2, 3, 1);
        assert_eq!(c.trace(None).len(), 6);
        let (c, _) = ctx(3, 3, 2);
        assert!(c.trace(None).is_unit());
        let (c, s) = ctx(2, 4, 1);
        let t = c.trace(None);
        // all products of two of the eight variables
        assert_eq!(t.len(), 36);
        // modulo the 2-minors: (quadrics in y_1, y_2) x (quadrics in z_1..z_4)
        assert_eq!(mu_in_quotient(&t, &s, &RankOptions::default()).unwrap(), 3 * 10);
    }

    #[test]
    fn mu_of_small_ideals() {
        let opts = RankOptions::default();
        let (c, s) = ctx(2, 3, 1);
        assert_eq!(mu_in_quotient(&c.p_ideal(), &s, &opts).unwrap(), 3);
        let pq = c.p_ideal().product(&c.q_ideal()).unwrap();
        assert_eq!(mu_in_quotient(&pq, &s, &opts).unwrap(), 6);
        let (c, s) = ctx(2, 4, 1);
        assert_eq!(mu_in_quotient(&c.p_ideal().power(2), &s, &opts).unwrap(), 10);
        // 2-minors of a generic 2x3 matrix in a polynomial ring
        let m = SymbolicMatrix::generic("x", 2, 3);
        assert_eq!(m.ideal_of_minors(2).unwrap().mu_equigenerated().unwrap(), 3);
    }

    #[test]
    fn identity_checks_small() {
        let opts = RankOptions::default();
        for (m, n, r) in [(2, 3, 1), (3, 3, 2), (2, 2, 1)] {
            let (c, s) = ctx(m, n, r);
            assert!(verify_pq_identity(&c, &s, &opts).unwrap().holds, "{m} {n} {r}");
        }
        let (c, s) = ctx(2, 3, 1);
        let rep = verify_mu_multiplicativity(&c, &s, 1, &opts).unwrap();
        assert_eq!((rep.mu_pq, rep.mu_p, rep.mu_q), (6, 3, 2));
        assert!(rep.holds);
        assert!(verify_mu_multiplicativity(&c, &s, 0, &opts).is_err());
    }

    #[test]
    fn teter_verification_small() {
        let opts = RankOptions::default();
        let (c, s) = ctx(2, 3, 1);
        let rep = teter_verify(&c, &s, &opts).unwrap();
        assert_eq!(rep.formula, BigInt::from(3));
        assert_eq!(rep.oracle, 3);
        assert!(rep.agree);
        let (c, s) = ctx(3, 3, 2);
        assert!(matches!(teter_verify(&c, &s, &opts), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn resource_guard_is_enforced() {
        let (c, s) = ctx(3, 4, 2);
        let tiny = RankOptions::with_max_entries(10);
        let err = mu_in_quotient(&c.p_ideal(), &s, &tiny).unwrap_err();
        assert!(matches!(err, Error::Resource { .. }));
    }
}
