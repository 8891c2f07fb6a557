use crate::error::{Error, Result};
use crate::poly::{Polynomial, Ring, Var};

use super::{GenericMatrixContext, SymbolicMatrix};

/// Target of the substitution `x_ij -> (Y*Z)_ij` with `Y` a generic `m x r`
/// matrix (`y_i_k`) and `Z` a generic `r x n` matrix (`z_k_j`).
#[derive(Clone, Debug)]
pub struct SegreContext {
    source: crate::poly::Ring,
    ring: Ring,
    y: SymbolicMatrix,
    z: SymbolicMatrix,
    images: Vec<Polynomial>,
}

impl SegreContext {
    pub fn new(ctx: &GenericMatrixContext) -> Self {
        let (m, n, r) = (ctx.m(), ctx.n(), ctx.r());
        let ys = (1..=m).flat_map(|i| (1..=r).map(move |k| Var::new("y", &[i as u32, k as u32])));
        let zs = (1..=r).flat_map(|k| (1..=n).map(move |j| Var::new("z", &[k as u32, j as u32])));
        let ring = Ring::new(ys.chain(zs));
        let y = SymbolicMatrix::generic_in(&ring, "y", m, r).expect("y variables");
        let z = SymbolicMatrix::generic_in(&ring, "z", r, n).expect("z variables");
        let source = ctx.matrix().ring().clone();
        // images indexed like the source ring's variables
        let images = source
            .vars()
            .iter()
            .map(|v| {
                let (i, j) = (v.indices()[0] as usize - 1, v.indices()[1] as usize - 1);
                let mut acc = ring.zero();
                for k in 0..r {
                    acc = acc.add(&y.entry(i, k).mul(z.entry(k, j)).expect("same ring")).expect("same ring");
                }
                acc
            })
            .collect();
        SegreContext {
            source,
            ring,
            y,
            z,
            images,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn y(&self) -> &SymbolicMatrix {
        &self.y
    }

    pub fn z(&self) -> &SymbolicMatrix {
        &self.z
    }

    /// `det(Y_[r])`.
    pub fn delta_y(&self) -> Polynomial {
        let r: Vec<usize> = (0..self.y.ncols()).collect();
        self.y.det_of(&r, &r)
    }

    /// `det(Z_[r])`.
    pub fn delta_z(&self) -> Polynomial {
        let r: Vec<usize> = (0..self.z.nrows()).collect();
        self.z.det_of(&r, &r)
    }

    /// `det(Y_I)` for 0-based row indices `I`.
    pub fn det_y_rows(&self, rows: &[usize]) -> Polynomial {
        let cols: Vec<usize> = (0..self.y.ncols()).collect();
        self.y.det_of(rows, &cols)
    }

    /// `det(Z_J)` for 0-based column indices `J`.
    pub fn det_z_cols(&self, cols: &[usize]) -> Polynomial {
        let rows: Vec<usize> = (0..self.z.nrows()).collect();
        self.z.det_of(&rows, cols)
    }

    /// Applies `x_ij -> sum_k y_ik z_kj`. Polynomials from another ring are
    /// accepted as long as they only use the generic `x` variables.
    pub fn phi(&self, p: &Polynomial, max_terms: usize) -> Result<Polynomial> {
        let p = if p.ring().same(&self.source) {
            p.clone()
        } else {
            p.embed(&self.source).map_err(|e| match e {
                Error::ForeignVariable(v) => Error::ForeignVariable(v),
                other => other,
            })?
        };
        p.substitute(&self.ring, &self.images, max_terms)
    }

    pub fn phi_all(&self, ps: &[Polynomial], max_terms: usize) -> Result<Vec<Polynomial>> {
        let mut total = 0usize;
        let mut out = Vec::with_capacity(ps.len());
        for p in ps {
            let img = self.phi(p, max_terms)?;
            total = total.saturating_add(img.len());
            if total > max_terms {
                return Err(Error::Resource {
                    needed: total,
                    cap: max_terms,
                });
            }
            out.push(img);
        }
        Ok(out)
    }
}
