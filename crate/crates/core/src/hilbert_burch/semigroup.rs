//! Numerical semigroups with three generators and their Hilbert–Burch
//! matrices.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use crate::determinantal::SymbolicMatrix;
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::poly::{Monomial, Polynomial, Ring, Var};

/// Invariants of `H = <n1, n2, n3>`.
///
/// `decompositions[i][j]` is `r_ij` in `c_i n_i = r_ij n_j + r_ik n_k`; the
/// diagonal holds `c_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupData {
    pub generators: [u64; 3],
    pub gaps: Vec<u64>,
    pub frobenius: u64,
    pub symmetric: bool,
    pub critical: [u64; 3],
    pub decompositions: [[u64; 3]; 3],
}

/// Elements `< bound` of the semigroup generated by `gens`.
fn sieve(gens: &[u64], bound: u64) -> Vec<bool> {
    let mut member = vec![false; bound as usize];
    if bound > 0 {
        member[0] = true;
    }
    for k in 1..bound as usize {
        member[k] = gens.iter().any(|&g| g as usize <= k && member[k - g as usize]);
    }
    member
}

/// All `(a, b)` with `a*p + b*q = t`.
fn representations(t: u64, p: u64, q: u64) -> Vec<(u64, u64)> {
    (0..=t / p)
        .filter(|a| (t - a * p).is_multiple_of(q))
        .map(|a| (a, (t - a * p) / q))
        .collect()
}

pub fn semigroup_analyze(n1: u64, n2: u64, n3: u64) -> Result<SemigroupData> {
    let mut g = [n1, n2, n3];
    g.sort_unstable();
    if g[0] == 0 {
        return Err(Error::Semigroup("generators must be positive".into()));
    }
    if g[0].gcd(&g[1]).gcd(&g[2]) != 1 {
        return Err(Error::Semigroup(format!(
            "gcd({}, {}, {}) must be 1",
            g[0], g[1], g[2]
        )));
    }
    for i in 0..3 {
        let others: Vec<u64> = (0..3).filter(|&k| k != i).map(|k| g[k]).collect();
        let dup = others.contains(&g[i]);
        if dup || sieve(&others, g[i] + 1)[g[i] as usize] {
            return Err(Error::Semigroup(format!(
                "{} lies in the semigroup generated by {} and {}; generators are not minimal",
                g[i], others[0], others[1]
            )));
        }
    }
    let bound = g[0] * g[2];
    let member = sieve(&g, bound);
    let gaps: Vec<u64> = (0..bound).filter(|&k| !member[k as usize]).collect();
    let frobenius = *gaps.last().expect("smallest generator is at least 2");
    let symmetric = frobenius % 2 == 1 && gaps.len() as u64 == frobenius.div_ceil(2);

    let mut critical = [0u64; 3];
    let mut decompositions = [[0u64; 3]; 3];
    for i in 0..3 {
        let (j, k) = match i {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let c = (1..=g[j])
            .find(|&c| !representations(c * g[i], g[j], g[k]).is_empty())
            .expect("n_j * n_i is a multiple of n_j");
        let reps = representations(c * g[i], g[j], g[k]);
        let chosen = if symmetric {
            reps[0]
        } else {
            if reps.len() != 1 || reps[0].0 == 0 || reps[0].1 == 0 {
                return Err(Error::Internal(format!(
                    "{c}*{} should have one decomposition with positive exponents, found {:?}",
                    g[i], reps
                )));
            }
            reps[0]
        };
        critical[i] = c;
        decompositions[i][i] = c;
        decompositions[i][j] = chosen.0;
        decompositions[i][k] = chosen.1;
    }
    Ok(SemigroupData {
        generators: g,
        gaps,
        frobenius,
        symmetric,
        critical,
        decompositions,
    })
}

impl SemigroupData {
    /// `K[x, y, z]` graded by the generators.
    pub fn ring(&self) -> Ring {
        let names = ["x", "y", "z"];
        let weights: BTreeMap<Var, u32> = names
            .iter()
            .zip(self.generators)
            .map(|(n, w)| (Var::plain(*n), w as u32))
            .collect();
        Ring::with_weights(names.map(Var::plain), &weights).expect("positive weights")
    }

    /// The critical binomials `x_i^{c_i} - x_j^{r_ij} x_k^{r_ik}`.
    pub fn critical_binomials(&self) -> Vec<Polynomial> {
        let ring = self.ring();
        (0..3)
            .map(|i| {
                let lead = power(&ring, i, self.critical[i]);
                let mut rest = vec![0u32; 3];
                for k in (0..3).filter(|&k| k != i) {
                    rest[k] = self.decompositions[i][k] as u32;
                }
                let tail = ring.term(Monomial::from_exponents(&rest), BigRational::one());
                lead.sub(&tail).expect("same ring")
            })
            .collect()
    }
}

fn power(ring: &Ring, i: usize, e: u64) -> Polynomial {
    let mut ex = vec![0u32; 3];
    ex[i] = e as u32;
    ring.term(Monomial::from_exponents(&ex), BigRational::one())
}

#[derive(Clone, Debug)]
pub struct SemigroupTrace {
    pub data: SemigroupData,
    /// `None` in the symmetric (complete intersection) case.
    pub matrix: Option<SymbolicMatrix>,
    pub binomials: Vec<Polynomial>,
    pub trace: MonomialIdeal,
    pub gorenstein: bool,
    pub nearly_gorenstein: bool,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for rest in permutations(n - 1) {
            let mut p = vec![first];
            p.extend(rest.into_iter().map(|x| if x >= first { x + 1 } else { x }));
            out.push(p);
        }
    }
    out
}

fn minors_match(m: &SymbolicMatrix, binomials: &[Polynomial]) -> bool {
    let Ok(minors) = m.maximal_minors_by_column() else {
        return false;
    };
    let mut used = [false; 3];
    minors.iter().all(|p| {
        binomials.iter().enumerate().any(|(k, b)| {
            let hit = !used[k] && p.equal_up_to_sign(b);
            if hit {
                used[k] = true;
            }
            hit
        })
    })
}

/// The canonical trace of `K[H]`: the unit ideal for symmetric `H`, and
/// otherwise the ideal of entries of a Hilbert–Burch matrix whose minors are
/// checked to be the critical binomials.
pub fn semigroup_hb_trace(n1: u64, n2: u64, n3: u64) -> Result<SemigroupTrace> {
    let data = semigroup_analyze(n1, n2, n3)?;
    let ring = data.ring();
    let binomials = data.critical_binomials();
    if data.symmetric {
        // two of the three coincide up to sign for a complete intersection
        let mut binomials = binomials;
        let mut k = 0;
        while k < binomials.len() {
            if binomials[..k].iter().any(|b| b.equal_up_to_sign(&binomials[k])) {
                binomials.remove(k);
            } else {
                k += 1;
            }
        }
        return Ok(SemigroupTrace {
            data,
            matrix: None,
            binomials,
            trace: MonomialIdeal::unit(&ring),
            gorenstein: true,
            nearly_gorenstein: true,
        });
    }
    let r = &data.decompositions;
    let entries = [
        power(&ring, 0, r[1][0]),
        power(&ring, 1, r[2][1]),
        power(&ring, 2, r[0][2]),
        power(&ring, 1, r[0][1]),
        power(&ring, 2, r[1][2]),
        power(&ring, 0, r[2][0]),
    ];
    for perm in permutations(6) {
        let rows = vec![
            perm[..3].iter().map(|&k| entries[k].clone()).collect(),
            perm[3..].iter().map(|&k| entries[k].clone()).collect(),
        ];
        let m = SymbolicMatrix::new(&ring, rows)?;
        if minors_match(&m, &binomials) {
            let trace = MonomialIdeal::minimalize(
                &ring,
                entries.iter().map(|e| e.as_term().expect("monomial").0.clone()),
            );
            let nearly_gorenstein = (0..3).all(|i| trace.contains(&ring.var_monomial(i)));
            return Ok(SemigroupTrace {
                data,
                matrix: Some(m),
                binomials,
                trace,
                gorenstein: false,
                nearly_gorenstein,
            });
        }
    }
    Err(Error::Internal(format!(
        "no 2 x 3 layout of the six entries has the critical binomials of <{n1}, {n2}, {n3}> as minors"
    )))
}
