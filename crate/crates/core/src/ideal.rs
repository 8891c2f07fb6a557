//! Ideals presented by generator lists, and monomial ideals kept minimal.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::linalg::{self, RankOptions};
use crate::poly::{Monomial, Polynomial, Ring, Var};

/// An ideal given by a finite list of generators.
///
/// Zero generators are dropped, exact duplicates removed and the list kept
/// in canonical order. No span reduction happens here; minimal generator
/// counts come from [`GeneratorIdeal::mu_equigenerated`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorIdeal {
    ring: Ring,
    gens: Vec<Polynomial>,
}

impl GeneratorIdeal {
    pub fn new(ring: &Ring, gens: impl IntoIterator<Item = Polynomial>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for g in gens {
            ring.check_same(g.ring())?;
            if !g.is_zero() && seen.insert(g.clone()) {
                out.push(g);
            }
        }
        out.sort_by(Polynomial::canonical_cmp);
        Ok(GeneratorIdeal {
            ring: ring.clone(),
            gens: out,
        })
    }

    /// The unit ideal, generated by 1.
    pub fn unit(ring: &Ring) -> Self {
        GeneratorIdeal {
            ring: ring.clone(),
            gens: vec![ring.one()],
        }
    }

    pub fn zero(ring: &Ring) -> Self {
        GeneratorIdeal {
            ring: ring.clone(),
            gens: Vec::new(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.homogeneous_degree() == Some(0))
    }

    /// The common degree of all generators, if there is one.
    pub fn common_degree(&self) -> Option<u64> {
        let mut it = self.gens.iter().map(Polynomial::homogeneous_degree);
        let d = it.next()??;
        it.all(|e| e == Some(d)).then_some(d)
    }

    pub fn is_equigenerated(&self) -> bool {
        self.gens.is_empty() || self.common_degree().is_some()
    }

    /// All pairwise products, duplicates removed.
    pub fn product(&self, other: &GeneratorIdeal) -> Result<GeneratorIdeal> {
        self.ring.check_same(&other.ring)?;
        let mut prods = Vec::with_capacity(self.len() * other.len());
        for a in &self.gens {
            for b in &other.gens {
                prods.push(a.mul(b)?);
            }
        }
        GeneratorIdeal::new(&self.ring, prods)
    }

    /// `self^l`; `l = 0` gives the unit ideal.
    pub fn power(&self, l: u32) -> GeneratorIdeal {
        let mut acc = GeneratorIdeal::unit(&self.ring);
        for _ in 0..l {
            acc = acc.product(self).expect("same ring");
        }
        acc
    }

    /// Minimal number of generators of an equigenerated homogeneous ideal
    /// of a polynomial ring, i.e. the dimension of the generator span.
    pub fn mu_equigenerated(&self) -> Result<usize> {
        self.mu_equigenerated_with(&RankOptions::default())
    }

    pub fn mu_equigenerated_with(&self, opts: &RankOptions) -> Result<usize> {
        if !self.is_equigenerated() {
            return Err(Error::NotEquigenerated);
        }
        Ok(linalg::span_dim_with(&self.gens, opts)?.rank)
    }

    /// The generator list read as monomials (signs ignored), if it is one.
    pub fn as_monomial_ideal(&self) -> Option<MonomialIdeal> {
        let monos = self
            .gens
            .iter()
            .map(|g| g.as_term().map(|(m, _)| m.clone()))
            .collect::<Option<Vec<_>>>()?;
        Some(MonomialIdeal::minimalize(&self.ring, monos))
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.to_string()).collect()
    }
}

/// A monomial ideal stored by its minimal generators in canonical order
/// (by degree, then descending term order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    ring: Ring,
    gens: Vec<Monomial>,
}

fn canonical_monomial_order(a: &Monomial, b: &Monomial) -> Ordering {
    a.total_degree()
        .cmp(&b.total_degree())
        .then_with(|| b.cmp(a))
}

impl MonomialIdeal {
    /// Keeps exactly the divisibility-minimal monomials.
    pub fn minimalize(ring: &Ring, gens: impl IntoIterator<Item = Monomial>) -> Self {
        let mut all: Vec<Monomial> = gens.into_iter().collect();
        all.sort_by(canonical_monomial_order);
        all.dedup();
        let mut keep: Vec<Monomial> = Vec::with_capacity(all.len());
        // sorted by degree, so only earlier entries can divide later ones
        for m in all {
            if !keep.iter().any(|k| k.divides(&m)) {
                keep.push(m);
            }
        }
        keep.sort_by(canonical_monomial_order);
        MonomialIdeal {
            ring: ring.clone(),
            gens: keep,
        }
    }

    pub fn unit(ring: &Ring) -> Self {
        MonomialIdeal {
            ring: ring.clone(),
            gens: vec![ring.one_monomial()],
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(Monomial::is_one)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Substitutes `v = 1` in every generator. Variables outside the ring
    /// leave the ideal unchanged.
    pub fn localize(&self, v: &Var) -> MonomialIdeal {
        match self.ring.index_of(v) {
            Some(i) => self.localize_index(i),
            None => self.clone(),
        }
    }

    pub fn localize_index(&self, i: usize) -> MonomialIdeal {
        MonomialIdeal::minimalize(&self.ring, self.gens.iter().map(|m| m.without(i)))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.ring.check_same(&other.ring)?;
        Ok(MonomialIdeal::minimalize(
            &self.ring,
            self.gens.iter().chain(&other.gens).cloned(),
        ))
    }

    pub fn to_generator_ideal(&self) -> GeneratorIdeal {
        let polys = self
            .gens
            .iter()
            .map(|m| self.ring.term(m.clone(), num_traits::One::one()));
        GeneratorIdeal::new(&self.ring, polys).expect("same ring")
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.gens.iter().map(|m| self.ring.format_monomial(m)).collect()
    }

    pub fn to_strings_with(&self, name: &dyn Fn(&Var) -> String) -> Vec<String> {
        self.gens
            .iter()
            .map(|m| self.ring.format_monomial_with(m, name))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomials;

    fn ideal(texts: &[&str]) -> GeneratorIdeal {
        let ps = parse_polynomials(texts, None).unwrap();
        let ring = ps[0].ring().clone();
        GeneratorIdeal::new(&ring, ps).unwrap()
    }

    fn mono_ideal(ring: &Ring, texts: &[&str]) -> MonomialIdeal {
        let ms = texts
            .iter()
            .map(|t| ring.parse(t).unwrap().as_term().unwrap().0.clone());
        MonomialIdeal::minimalize(ring, ms)
    }

    #[test]
    fn product_of_maximal_ideal_with_itself() {
        let m = ideal(&["x", "y"]);
        let sq = m.product(&m).unwrap();
        assert_eq!(sq.to_strings(), ["x^2", "x*y", "y^2"]);
        assert_eq!(m.power(2), sq);
        assert!(m.power(0).is_unit());
        assert_eq!(m.product(&GeneratorIdeal::unit(m.ring())).unwrap(), m);
    }

    #[test]
    fn product_keeps_distinct_products() {
        let ps = parse_polynomials(&["x_1_1", "x_1_2", "x_2_1"], None).unwrap();
        let ring = ps[0].ring().clone();
        let a = GeneratorIdeal::new(&ring, [ps[0].clone(), ps[1].clone()]).unwrap();
        let b = GeneratorIdeal::new(&ring, [ps[0].clone(), ps[2].clone()]).unwrap();
        assert_eq!(a.product(&b).unwrap().len(), 4);
    }

    #[test]
    fn power_of_four_variables() {
        let i = ideal(&["x_1_1", "x_1_2", "x_1_3", "x_1_4"]);
        assert_eq!(i.power(2).len(), 10);
    }

    #[test]
    fn mu_examples() {
        assert_eq!(ideal(&["x", "y", "x + y"]).mu_equigenerated().unwrap(), 2);
        assert_eq!(ideal(&["x^2", "x*y", "y^2"]).mu_equigenerated().unwrap(), 3);
        assert_eq!(
            ideal(&["x", "y^2"]).mu_equigenerated().unwrap_err(),
            Error::NotEquigenerated
        );
    }

    #[test]
    fn non_homogeneous_generators_have_no_mu() {
        let i = ideal(&["x + y^2", "x"]);
        assert!(!i.is_equigenerated());
        assert_eq!(i.mu_equigenerated().unwrap_err(), Error::NotEquigenerated);
    }

    #[test]
    fn minimalize_examples() {
        let ring = Ring::new(["x", "y", "z"].map(Var::plain));
        assert_eq!(mono_ideal(&ring, &["x", "x*y", "y^2"]).to_strings(), ["x", "y^2"]);
        assert_eq!(mono_ideal(&ring, &["x*y*z"]).to_strings(), ["x*y*z"]);
        let m = mono_ideal(&ring, &["x*y", "x", "x*z", "y^2*z"]);
        assert_eq!(MonomialIdeal::minimalize(&ring, m.gens().to_vec()), m);
    }

    #[test]
    fn localization_examples() {
        let ring = Ring::new(["w", "x", "y", "z"].map(Var::plain));
        let i = mono_ideal(&ring, &["x*y", "y*z"]);
        assert_eq!(i.localize(&Var::plain("y")).to_strings(), ["x", "z"]);
        let j = mono_ideal(&ring, &["x*y", "z"]);
        assert_eq!(j.localize(&Var::plain("w")), j);
        assert_eq!(j.localize(&Var::plain("q")), j);
        assert!(mono_ideal(&ring, &["x"]).localize(&Var::plain("x")).is_unit());
    }

    #[test]
    fn sum_examples() {
        let ring = Ring::new(["x", "y"].map(Var::plain));
        let x = mono_ideal(&ring, &["x"]);
        let y = mono_ideal(&ring, &["y"]);
        let xy = mono_ideal(&ring, &["x*y"]);
        assert_eq!(x.sum(&y).unwrap().to_strings(), ["x", "y"]);
        assert_eq!(x.sum(&xy).unwrap(), x);
    }
}
