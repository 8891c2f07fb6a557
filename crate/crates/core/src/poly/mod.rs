//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! A [`Ring`] fixes an ordered set of variables together with positive
//! integer grading weights. Monomials are dense exponent vectors over the
//! ring's variables, and a [`Polynomial`] is a sorted list of terms with
//! nonzero [`BigRational`] coefficients. Terms are kept in graded
//! lexicographic order (highest first), which is also the print order.

mod integer;
mod parse;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use integer::{binomial, det_integer};
pub use parse::{parse_polynomial, parse_polynomials};

/// A named indeterminate such as `x_1_2`, `y_3_1` or plain `a`.
///
/// Variables are ordered by base name first, then by their index tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    base: String,
    indices: Vec<u32>,
}

impl Var {
    pub fn new(base: impl Into<String>, indices: &[u32]) -> Self {
        Var {
            base: base.into(),
            indices: indices.to_vec(),
        }
    }

    pub fn plain(base: impl Into<String>) -> Self {
        Var::new(base, &[])
    }

    /// Splits `name` at underscores into a base and numeric indices. Names
    /// whose suffixes are not canonical non-negative integers are kept whole.
    pub fn from_name(name: &str) -> Self {
        let mut parts = name.split('_');
        let base = parts.next().unwrap_or_default();
        let mut indices = Vec::new();
        for part in parts {
            let canonical = !part.is_empty()
                && part.bytes().all(|b| b.is_ascii_digit())
                && (part == "0" || !part.starts_with('0'));
            match part.parse::<u32>() {
                Ok(i) if canonical => indices.push(i),
                _ => return Var::plain(name),
            }
        }
        if base.is_empty() {
            return Var::plain(name);
        }
        Var::new(base, &indices)
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.base)?;
        for i in &self.indices {
            write!(f, "_{i}")?;
        }
        Ok(())
    }
}

struct RingData {
    vars: Vec<Var>,
    weights: Vec<u32>,
    lookup: HashMap<Var, usize>,
}

/// An ambient polynomial ring `Q[vars]` with a grading.
///
/// Cloning is cheap. Two rings are the same context when they have the same
/// variables with the same weights.
#[derive(Clone)]
pub struct Ring(Arc<RingData>);

impl Ring {
    /// Ring with all weights equal to one. Duplicate variables are merged.
    pub fn new(vars: impl IntoIterator<Item = Var>) -> Self {
        let set: BTreeSet<Var> = vars.into_iter().collect();
        let vars: Vec<Var> = set.into_iter().collect();
        let weights = vec![1; vars.len()];
        Ring::build(vars, weights)
    }

    /// Ring with explicit weights; variables missing from `weights` get 1.
    pub fn with_weights(
        vars: impl IntoIterator<Item = Var>,
        weights: &BTreeMap<Var, u32>,
    ) -> Result<Self> {
        let set: BTreeSet<Var> = vars.into_iter().collect();
        let vars: Vec<Var> = set.into_iter().collect();
        let mut ws = Vec::with_capacity(vars.len());
        for v in &vars {
            let w = weights.get(v).copied().unwrap_or(1);
            if w == 0 {
                return Err(Error::Invalid(format!("weight of {v} must be positive")));
            }
            ws.push(w);
        }
        Ok(Ring::build(vars, ws))
    }

    fn build(vars: Vec<Var>, weights: Vec<u32>) -> Self {
        let lookup = vars.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        Ring(Arc::new(RingData {
            vars,
            weights,
            lookup,
        }))
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn vars(&self) -> &[Var] {
        &self.0.vars
    }

    pub fn var(&self, i: usize) -> &Var {
        &self.0.vars[i]
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.0.weights[i]
    }

    pub fn index_of(&self, v: &Var) -> Option<usize> {
        self.0.lookup.get(v).copied()
    }

    pub fn same(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.vars == other.0.vars && self.0.weights == other.0.weights)
    }

    pub fn check_same(&self, other: &Ring) -> Result<()> {
        if self.same(other) {
            Ok(())
        } else {
            Err(Error::MixedContext)
        }
    }

    pub fn one_monomial(&self) -> Monomial {
        Monomial(vec![0; self.nvars()].into_boxed_slice())
    }

    pub fn var_monomial(&self, i: usize) -> Monomial {
        let mut e = vec![0; self.nvars()];
        e[i] = 1;
        Monomial(e.into_boxed_slice())
    }

    /// Monomial from `(variable, exponent)` pairs.
    pub fn monomial(&self, factors: &[(Var, u32)]) -> Result<Monomial> {
        let mut e = vec![0u32; self.nvars()];
        for (v, k) in factors {
            let i = self
                .index_of(v)
                .ok_or_else(|| Error::ForeignVariable(v.to_string()))?;
            e[i] += k;
        }
        Ok(Monomial(e.into_boxed_slice()))
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial {
            ring: self.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(&self) -> Polynomial {
        self.constant(BigRational::one())
    }

    pub fn constant(&self, c: BigRational) -> Polynomial {
        self.term(self.one_monomial(), c)
    }

    pub fn term(&self, m: Monomial, c: BigRational) -> Polynomial {
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: self.clone(),
            terms,
        }
    }

    pub fn variable(&self, v: &Var) -> Result<Polynomial> {
        let i = self
            .index_of(v)
            .ok_or_else(|| Error::ForeignVariable(v.to_string()))?;
        Ok(self.term(self.var_monomial(i), BigRational::one()))
    }

    /// Weighted degree of a monomial in this ring.
    pub fn degree(&self, m: &Monomial) -> u64 {
        m.0.iter()
            .zip(&self.0.weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum()
    }

    /// Parses `text` into this ring; every variable must belong to it.
    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        parse::parse_in(self, text)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        self.format_monomial_with(m, &|v: &Var| v.to_string())
    }

    pub fn format_monomial_with(&self, m: &Monomial, name: &dyn Fn(&Var) -> String) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(name(self.var(i))),
                _ => parts.push(format!("{}^{}", name(self.var(i)), e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.vars().iter().map(|v| v.to_string()).collect();
        write!(f, "Ring[{}]", names.join(", "))
    }
}

/// Exponent vector over the variables of some [`Ring`].
///
/// `Ord` is graded lexicographic on unweighted total degree, with earlier
/// ring variables ranking higher.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    /// Exponent vector in ring variable order; its length must match the
    /// ring the monomial is used with.
    pub fn from_exponents(exponents: &[u32]) -> Self {
        Monomial(exponents.into())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial(
            self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect(),
        ))
    }

    /// Sets the exponent of variable `i` to zero.
    pub fn without(&self, i: usize) -> Monomial {
        let mut e = self.0.clone();
        e[i] = 0;
        Monomial(e)
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in some [`Ring`], terms sorted from highest to lowest.
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, BigRational)>,
}

impl Polynomial {
    /// Builds a polynomial from arbitrary terms, merging and dropping zeros.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut acc: HashMap<Monomial, BigRational> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.0.len(), ring.nvars());
            *acc.entry(m).or_insert_with(BigRational::zero) += c;
        }
        Polynomial::from_map(ring, acc)
    }

    fn from_map(ring: &Ring, acc: HashMap<Monomial, BigRational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, BigRational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.terms.first().map(|(_, c)| c)
    }

    /// The single monomial and coefficient of a one-term polynomial.
    pub fn as_term(&self) -> Option<(&Monomial, &BigRational)> {
        match self.terms.as_slice() {
            [(m, c)] => Some((m, c)),
            _ => None,
        }
    }

    /// Weighted degree if every term has the same weighted degree.
    /// The zero polynomial has no degree.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        let mut it = self.terms.iter().map(|(m, _)| self.ring.degree(m));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(&other.ring)?;
        Ok(self.combine(other, false))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(&other.ring)?;
        Ok(self.combine(other, true))
    }

    fn combine(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let signed = |c: &BigRational| if negate { -c.clone() } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), signed(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a[i].1 + signed(&b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), signed(c))));
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(&other.ring)?;
        let mut acc: HashMap<Monomial, BigRational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                *acc.entry(m1.mul(m2)).or_insert_with(BigRational::zero) += c1 * c2;
            }
        }
        Ok(Polynomial::from_map(&self.ring, acc))
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return self.ring.zero();
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = self.ring.one();
        for _ in 0..k {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Multiplies by -1 if needed so the leading coefficient is positive.
    pub fn sign_normalized(&self) -> Polynomial {
        match self.leading_coefficient() {
            Some(c) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    /// True if `self == other` or `self == -other`.
    pub fn equal_up_to_sign(&self, other: &Polynomial) -> bool {
        self.ring.same(&other.ring)
            && self.terms.len() == other.terms.len()
            && (self.terms == other.terms || self.neg().terms == other.terms)
    }

    /// Ring homomorphism `Q[ring] -> Q[target]` sending variable `i` to
    /// `images[i]`. Fails with a resource error once the number of
    /// generated (pre-collection) terms exceeds `max_terms`.
    pub fn substitute(
        &self,
        target: &Ring,
        images: &[Polynomial],
        max_terms: usize,
    ) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::Invalid(format!(
                "substitution needs {} images, got {}",
                self.ring.nvars(),
                images.len()
            )));
        }
        for img in images {
            target.check_same(&img.ring)?;
        }
        let mut powers: HashMap<(usize, u32), Polynomial> = HashMap::new();
        let mut acc: HashMap<Monomial, BigRational> = HashMap::new();
        let mut generated = 0usize;
        for (m, c) in &self.terms {
            let mut t = target.constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = powers
                    .entry((i, e))
                    .or_insert_with(|| images[i].pow(e));
                generated = generated.saturating_add(t.len().saturating_mul(p.len()));
                if generated > max_terms {
                    return Err(Error::Resource {
                        needed: generated,
                        cap: max_terms,
                    });
                }
                t = t.mul(p)?;
            }
            for (m2, c2) in t.terms {
                *acc.entry(m2).or_insert_with(BigRational::zero) += c2;
            }
        }
        Ok(Polynomial::from_map(target, acc))
    }

    /// Re-expresses the polynomial in a ring containing all of its variables.
    pub fn embed(&self, target: &Ring) -> Result<Polynomial> {
        let mut map = Vec::with_capacity(self.ring.nvars());
        for v in self.ring.vars() {
            map.push(target.index_of(v));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.nvars()];
            for (i, &k) in m.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let j = map[i].ok_or_else(|| Error::ForeignVariable(self.ring.var(i).to_string()))?;
                e[j] = k;
            }
            terms.push((Monomial(e.into_boxed_slice()), c.clone()));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Variables (by ring index) that occur in some term.
    pub fn variables_used(&self) -> BTreeSet<usize> {
        self.terms.iter().flat_map(|(m, _)| m.support()).collect()
    }

    /// Canonical total order on polynomials of one ring: by degree of the
    /// leading term, then termwise.
    pub fn canonical_cmp(&self, other: &Polynomial) -> Ordering {
        let deg = |p: &Polynomial| p.terms.first().map(|(m, _)| p.ring.degree(m));
        deg(self).cmp(&deg(other)).then_with(|| {
            for (a, b) in self.terms.iter().zip(&other.terms) {
                let o = b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1));
                if o != Ordering::Equal {
                    return o;
                }
            }
            self.terms.len().cmp(&other.terms.len())
        })
    }

    /// Formats with a custom variable naming, e.g. for aliasing.
    pub fn format_with(&self, name: &dyn Fn(&Var) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            if m.is_one() {
                out.push_str(&format_rational(&a));
            } else {
                if !a.is_one() {
                    out.push_str(&format_rational(&a));
                    out.push('*');
                }
                out.push_str(&self.ring.format_monomial_with(m, name));
            }
        }
        out
    }
}

pub(crate) fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same(&other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Hash for Polynomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&|v: &Var| v.to_string()))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn variable_names_split_into_indices() {
        let v = Var::from_name("x_1_12");
        assert_eq!(v.base(), "x");
        assert_eq!(v.indices(), &[1, 12]);
        assert_eq!(v.to_string(), "x_1_12");
        assert_eq!(Var::from_name("a").indices(), &[] as &[u32]);
        // leading zeros and non-numeric suffixes keep the whole name
        assert_eq!(Var::from_name("x_01").base(), "x_01");
        assert_eq!(Var::from_name("x_a").base(), "x_a");
        assert_eq!(Var::from_name("x_01").to_string(), "x_01");
    }

    #[test]
    fn variable_order_is_base_then_indices() {
        let mut vs = [Var::from_name("y_1_1"),
            Var::from_name("x_2_1"),
            Var::from_name("x_1_10"),
            Var::from_name("x_1_2")];
        vs.sort();
        let names: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
        assert_eq!(names, ["x_1_2", "x_1_10", "x_2_1", "y_1_1"]);
    }

    #[test]
    fn difference_of_squares() {
        let ring = Ring::new([Var::plain("x"), Var::plain("y")]);
        let x = ring.variable(&Var::plain("x")).unwrap();
        let y = ring.variable(&Var::plain("y")).unwrap();
        let p = x.add(&y).unwrap().mul(&x.sub(&y).unwrap()).unwrap();
        assert_eq!(p.to_string(), "x^2 - y^2");
        assert!(p.mul(&ring.zero()).unwrap().is_zero());
    }

    #[test]
    fn mixed_context_is_rejected() {
        let r1 = Ring::new([Var::plain("x")]);
        let r2 = Ring::new([Var::plain("y")]);
        let err = r1.one().add(&r2.one()).unwrap_err();
        assert_eq!(err, Error::MixedContext);
        // structurally equal rings are the same context
        let r3 = Ring::new([Var::plain("x")]);
        assert!(r1.one().add(&r3.one()).is_ok());
    }

    #[test]
    fn weighted_degree() {
        let mut w = BTreeMap::new();
        w.insert(Var::plain("x"), 3);
        w.insert(Var::plain("y"), 4);
        let ring = Ring::with_weights([Var::plain("x"), Var::plain("y")], &w).unwrap();
        let p = ring.parse("x^4 - y^3").unwrap();
        assert_eq!(p.homogeneous_degree(), Some(12));
        assert!(ring.parse("x + y").unwrap().homogeneous_degree().is_none());
        w.insert(Var::plain("x"), 0);
        assert!(Ring::with_weights([Var::plain("x")], &w).is_err());
    }

    #[test]
    fn substitution_is_a_homomorphism_on_a_sample() {
        let src = Ring::new([Var::plain("a"), Var::plain("b")]);
        let dst = Ring::new([Var::plain("s"), Var::plain("t")]);
        let images = vec![dst.parse("s + t").unwrap(), dst.parse("s - t").unwrap()];
        let p = src.parse("a*b").unwrap();
        let img = p.substitute(&dst, &images, usize::MAX).unwrap();
        assert_eq!(img.to_string(), "s^2 - t^2");
        let err = p.substitute(&dst, &images, 2).unwrap_err();
        assert!(matches!(err, Error::Resource { .. }));
    }

    #[test]
    fn sign_helpers() {
        let ring = Ring::new([Var::plain("x"), Var::plain("y")]);
        let p = ring.parse("-x + y").unwrap();
        assert_eq!(p.sign_normalized().to_string(), "x - y");
        assert!(p.equal_up_to_sign(&ring.parse("x - y").unwrap()));
        assert!(!p.equal_up_to_sign(&ring.parse("x + y").unwrap()));
        assert_eq!(ring.constant(q(-3)).to_string(), "-3");
    }
}
