//! Generic perfect height-two monomial ideals attached to trees.
//!
//! A tree on `[n]` with ordered edges gives an `(n-1) x n` matrix whose
//! `k`-th row carries `-x_i_j` in column `i` and `x_j_i` in column `j` for
//! the `k`-th edge `{i, j}`, `i < j`. Its maximal minors are monomials
//! `v_j`, and its `(n-2)`-minors generate the canonical trace.

use std::collections::{BTreeMap, VecDeque};

use crate::determinantal::SymbolicMatrix;
use crate::error::{Error, Result, TreeError};
use crate::ideal::MonomialIdeal;
use crate::poly::{Monomial, Ring, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Tree {
    /// Validates an edge list on the vertices `1..=n`. Each edge is stored
    /// with its smaller endpoint first; the order of the list is kept.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> std::result::Result<Self, TreeError> {
        if edges.is_empty() {
            return Err(TreeError::Empty);
        }
        let mut parent: Vec<usize> = (0..=n).collect();
        fn find(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        let mut seen = std::collections::HashSet::new();
        let mut normalized = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            for v in [a, b] {
                if v == 0 || v > n {
                    return Err(TreeError::VertexRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(TreeError::SelfLoop(a));
            }
            let (i, j) = (a.min(b), a.max(b));
            if !seen.insert((i, j)) {
                return Err(TreeError::DuplicateEdge(i, j));
            }
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri == rj {
                return Err(TreeError::Cycle(i, j));
            }
            parent[ri] = rj;
            normalized.push((i, j));
        }
        if normalized.len() + 1 != n {
            return Err(TreeError::Disconnected);
        }
        let mut adjacency = vec![Vec::new(); n + 1];
        for &(i, j) in &normalized {
            adjacency[i].push(j);
            adjacency[j].push(i);
        }
        for nb in &mut adjacency {
            nb.sort_unstable();
        }
        Ok(Tree {
            n,
            edges: normalized,
            adjacency,
        })
    }

    /// Parses `"1-2,2-3,..."`. Without `n` the vertex set is `1..=max label`.
    pub fn parse(spec: &str, n: Option<usize>) -> std::result::Result<Self, TreeError> {
        let mut edges = Vec::new();
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let parsed = item.split_once('-').and_then(|(a, b)| {
                Some((a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?))
            });
            edges.push(parsed.ok_or_else(|| TreeError::Malformed(item.to_string()))?);
        }
        let max = edges.iter().map(|&(a, b)| a.max(b)).max().unwrap_or(0);
        Tree::new(n.unwrap_or(max), &edges)
    }

    /// Decodes a Prüfer sequence over `1..=seq.len() + 2`.
    pub fn from_prufer(seq: &[usize]) -> std::result::Result<Self, TreeError> {
        let n = seq.len() + 2;
        if let Some(&v) = seq.iter().find(|&&v| v == 0 || v > n) {
            return Err(TreeError::VertexRange { vertex: v, n });
        }
        let mut degree = vec![1usize; n + 1];
        for &v in seq {
            degree[v] += 1;
        }
        let mut edges = Vec::with_capacity(n - 1);
        for &v in seq {
            let leaf = (1..=n).find(|&u| degree[u] == 1).expect("a leaf exists");
            edges.push((leaf, v));
            degree[leaf] -= 1;
            degree[v] -= 1;
        }
        let rest: Vec<usize> = (1..=n).filter(|&u| degree[u] == 1).collect();
        edges.push((rest[0], rest[1]));
        Tree::new(n, &edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// The same tree with edges sorted lexicographically.
    pub fn canonical(&self) -> Tree {
        let mut t = self.clone();
        t.edges.sort_unstable();
        t
    }

    /// The same tree with its edges listed in the given order (a permutation
    /// of `0..n-1`).
    pub fn reordered(&self, order: &[usize]) -> Result<Tree> {
        let edges: Vec<(usize, usize)> = order
            .iter()
            .map(|&k| {
                self.edges
                    .get(k)
                    .copied()
                    .ok_or_else(|| Error::Bounds(format!("edge {k} of {}", self.edges.len())))
            })
            .collect::<Result<_>>()?;
        Ok(Tree::new(self.n, &edges)?)
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            return Err(TreeError::VertexRange { vertex: v, n: self.n }.into());
        }
        Ok(())
    }

    /// The neighbor of `i` on the path from `i` to `j`.
    pub fn branch_vertex(&self, i: usize, j: usize) -> Result<usize> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        if i == j {
            return Err(Error::Invalid(format!("branch vertex needs distinct vertices, got {i} twice")));
        }
        let parents = self.bfs_parents(i);
        let mut v = j;
        while parents[v] != i {
            v = parents[v];
        }
        Ok(v)
    }

    /// BFS tree rooted at `root`; `parents[root] = 0`.
    fn bfs_parents(&self, root: usize) -> Vec<usize> {
        let mut parents = vec![usize::MAX; self.n + 1];
        parents[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if parents[w] == usize::MAX {
                    parents[w] = u;
                    queue.push_back(w);
                }
            }
        }
        parents
    }

    /// `b(i, j)` for all ordered pairs, indexed `[i][j]`.
    fn branch_table(&self) -> Vec<Vec<usize>> {
        let mut table = vec![vec![0; self.n + 1]; self.n + 1];
        for i in 1..=self.n {
            let parents = self.bfs_parents(i);
            for j in 1..=self.n {
                if j == i {
                    continue;
                }
                let mut v = j;
                while parents[v] != i {
                    v = parents[v];
                }
                table[i][j] = v;
            }
        }
        table
    }

    /// The ring of edge variables `x_i_j`, `x_j_i`.
    pub fn ring(&self) -> Ring {
        Ring::new(
            self.edges
                .iter()
                .flat_map(|&(i, j)| [edge_var(i, j), edge_var(j, i)]),
        )
    }
}

impl std::fmt::Display for Tree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.edges.iter().map(|(i, j)| format!("{i}-{j}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

fn edge_var(i: usize, j: usize) -> Var {
    Var::new("x", &[i as u32, j as u32])
}

pub fn tree_parse(spec: &str, n: Option<usize>) -> Result<Tree> {
    Ok(Tree::parse(spec, n)?)
}

/// The matrix `A(Γ)`.
pub fn tree_matrix(t: &Tree) -> SymbolicMatrix {
    let ring = t.ring();
    let rows = t
        .edges()
        .iter()
        .map(|&(i, j)| {
            let mut row = vec![ring.zero(); t.n()];
            row[i - 1] = ring.variable(&edge_var(i, j)).expect("edge variable").neg();
            row[j - 1] = ring.variable(&edge_var(j, i)).expect("edge variable");
            row
        })
        .collect();
    SymbolicMatrix::new(&ring, rows).expect("rectangular")
}

pub fn branch_vertex(t: &Tree, i: usize, j: usize) -> Result<usize> {
    t.branch_vertex(i, j)
}

/// `v_j = prod_{i != j} x_{i, b(i, j)}` for `j = 1..=n`, checked against
/// the maximal minors of `A(Γ)`.
pub fn vertex_monomials(t: &Tree) -> Result<Vec<Monomial>> {
    let ring = t.ring();
    let table = t.branch_table();
    let mut out = Vec::with_capacity(t.n());
    for j in 1..=t.n() {
        let mut ex = vec![0u32; ring.nvars()];
        for i in (1..=t.n()).filter(|&i| i != j) {
            let k = ring.index_of(&edge_var(i, table[i][j])).expect("edge variable");
            ex[k] += 1;
        }
        out.push(Monomial::from_exponents(&ex));
    }
    let minors = tree_matrix(t).maximal_minors_by_column()?;
    for (j, (v, minor)) in out.iter().zip(&minors).enumerate() {
        let ok = matches!(minor.as_term(), Some((m, _)) if m == v);
        if !ok {
            return Err(Error::Internal(format!(
                "v_{} = {} disagrees with the maximal minor {}",
                j + 1,
                ring.format_monomial(v),
                minor
            )));
        }
    }
    Ok(out)
}

/// `I(Γ) = (v_1, ..., v_n)`.
pub fn tree_ideal(t: &Tree) -> Result<MonomialIdeal> {
    Ok(MonomialIdeal::minimalize(&t.ring(), vertex_monomials(t)?))
}

/// The monomials `v_j / x_{i, b(i, j)}`, minimalized. These are the
/// `(n-2)`-minors reached by expanding some `v_j` along a row; in general
/// they are only part of the `(n-2)`-minors.
pub fn tree_trace_quotients(t: &Tree) -> Result<MonomialIdeal> {
    let ring = t.ring();
    let table = t.branch_table();
    let vs = vertex_monomials(t)?;
    let mut quotients = Vec::new();
    for j in 1..=t.n() {
        for i in (1..=t.n()).filter(|&i| i != j) {
            let k = ring.index_of(&edge_var(i, table[i][j])).expect("edge variable");
            quotients.push(vs[j - 1].div(&ring.var_monomial(k)).expect("factor of v_j"));
        }
    }
    Ok(MonomialIdeal::minimalize(&ring, quotients))
}

/// The `(n-2)`-minors of `A(Γ)` up to sign, minimalized: the canonical
/// trace of `S/I(Γ)` lifted to `S`. The unit ideal for a single edge.
pub fn tree_trace_minors(t: &Tree) -> Result<MonomialIdeal> {
    let ideal = tree_matrix(t).ideal_of_minors(t.n() - 2)?;
    ideal
        .as_monomial_ideal()
        .ok_or_else(|| Error::Internal(format!("a {}-minor of A(Γ) is not a monomial", t.n() - 2)))
}

/// The sum over all variables `x` of the localizations `I(Γ)(x)`.
pub fn tree_trace_localizations(t: &Tree) -> Result<MonomialIdeal> {
    let ideal = tree_ideal(t)?;
    let ring = ideal.ring().clone();
    let gens = (0..ring.nvars()).flat_map(|k| ideal.localize_index(k).gens().to_vec());
    Ok(MonomialIdeal::minimalize(&ring, gens))
}

/// Compares `minors + I(Γ)` with the sum of localizations.
///
/// The two sides agree for paths but not in general: the sum of
/// localizations only sees the quotients `v_j / x_{i, b(i, j)}`.
pub fn tree_verify_monloc(t: &Tree) -> Result<bool> {
    let lhs = tree_trace_minors(t)?.sum(&tree_ideal(t)?)?;
    Ok(lhs == tree_trace_localizations(t)?)
}

/// Letters `a, b, c, ...` for the nonzero entries of `A(Γ)` in row-major
/// order. Past `z` the letters repeat with a numeric suffix.
pub fn alias_map(t: &Tree) -> BTreeMap<Var, String> {
    let mut out = BTreeMap::new();
    for (k, &(i, j)) in t.edges().iter().enumerate() {
        for (slot, v) in [edge_var(i, j), edge_var(j, i)].into_iter().enumerate() {
            out.insert(v, alias_name(2 * k + slot));
        }
    }
    out
}

fn alias_name(k: usize) -> String {
    let letter = (b'a' + (k % 26) as u8) as char;
    match k / 26 {
        0 => letter.to_string(),
        round => format!("{letter}{round}"),
    }
}

/// Everything computed for one tree.
#[derive(Clone, Debug)]
pub struct TreeReport {
    pub tree: Tree,
    pub matrix: SymbolicMatrix,
    pub ideal: MonomialIdeal,
    pub trace_minors: MonomialIdeal,
    pub trace_quotients: MonomialIdeal,
    pub trace_localized: MonomialIdeal,
    pub verified: bool,
}

pub fn analyze_tree(t: &Tree) -> Result<TreeReport> {
    let ideal = tree_ideal(t)?;
    let trace_minors = tree_trace_minors(t)?;
    let trace_quotients = tree_trace_quotients(t)?;
    let trace_localized = tree_trace_localizations(t)?;
    let verified = trace_minors.sum(&ideal)? == trace_localized;
    Ok(TreeReport {
        tree: t.clone(),
        matrix: tree_matrix(t),
        ideal,
        trace_minors,
        trace_quotients,
        trace_localized,
        verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> Tree {
        Tree::parse("1-2,2-3,3-4,3-5", None).unwrap()
    }

    #[test]
    fn parse_errors() {
        assert_eq!(Tree::parse("1-2,3-4", None).unwrap_err(), TreeError::Disconnected);
        assert_eq!(Tree::parse("1-2,2-3,1-3", None).unwrap_err(), TreeError::Cycle(1, 3));
        assert_eq!(Tree::parse("1-2,2-1", None).unwrap_err(), TreeError::DuplicateEdge(1, 2));
        assert_eq!(Tree::parse("1-1", None).unwrap_err(), TreeError::SelfLoop(1));
        assert_eq!(Tree::parse("", None).unwrap_err(), TreeError::Empty);
        assert_eq!(Tree::parse("1-x", None).unwrap_err(), TreeError::Malformed("1-x".into()));
        assert_eq!(Tree::parse("1-2", Some(3)).unwrap_err(), TreeError::Disconnected);
        assert_eq!(
            Tree::parse("1-3", Some(2)).unwrap_err(),
            TreeError::VertexRange { vertex: 3, n: 2 }
        );
        assert_eq!(Tree::parse("2-1", None).unwrap().edges(), [(1, 2)]);
    }

    #[test]
    fn example_matrix() {
        let m = tree_matrix(&example());
        assert_eq!(
            m.to_strings(),
            [
                ["-x_1_2", "x_2_1", "0", "0", "0"],
                ["0", "-x_2_3", "x_3_2", "0", "0"],
                ["0", "0", "-x_3_4", "x_4_3", "0"],
                ["0", "0", "-x_3_5", "0", "x_5_3"],
            ]
        );
        let a = alias_map(&example());
        let aliased = m.to_strings_with(&|v: &Var| a[v].clone());
        assert_eq!(aliased[3], ["0", "0", "-g", "0", "h"]);
    }

    #[test]
    fn branch_vertices() {
        let t = example();
        assert_eq!(t.branch_vertex(1, 4).unwrap(), 2);
        assert_eq!(t.branch_vertex(4, 5).unwrap(), 3);
        assert_eq!(t.branch_vertex(2, 1).unwrap(), 1);
        assert!(t.branch_vertex(2, 2).is_err());
        assert!(t.branch_vertex(2, 9).is_err());
    }

    #[test]
    fn example_ideal() {
        let t = example();
        let vs: Vec<String> = vertex_monomials(&t)
            .unwrap()
            .iter()
            .map(|m| t.ring().format_monomial(m))
            .collect();
        assert_eq!(
            vs,
            [
                "x_2_1*x_3_2*x_4_3*x_5_3",
                "x_1_2*x_3_2*x_4_3*x_5_3",
                "x_1_2*x_2_3*x_4_3*x_5_3",
                "x_1_2*x_2_3*x_3_4*x_5_3",
                "x_1_2*x_2_3*x_3_5*x_4_3",
            ]
        );
    }

    #[test]
    fn small_trees() {
        let edge = Tree::parse("1-2", None).unwrap();
        assert_eq!(tree_ideal(&edge).unwrap().len(), 2);
        assert!(tree_trace_minors(&edge).unwrap().is_unit());
        assert!(tree_trace_localizations(&edge).unwrap().is_unit());
        assert!(tree_verify_monloc(&edge).unwrap());

        let path = Tree::parse("1-2,2-3", None).unwrap();
        let expected = ["x_1_2", "x_2_1", "x_2_3", "x_3_2"];
        assert_eq!(tree_trace_minors(&path).unwrap().to_strings(), expected);
        assert_eq!(tree_trace_localizations(&path).unwrap().to_strings(), expected);
    }

    #[test]
    fn prufer_decoding() {
        // the star centred at 1
        let t = Tree::from_prufer(&[1, 1, 1]).unwrap();
        assert_eq!(t.canonical().edges(), [(1, 2), (1, 3), (1, 4), (1, 5)]);
        assert_eq!(Tree::from_prufer(&[]).unwrap().edges(), [(1, 2)]);
        assert!(Tree::from_prufer(&[7]).is_err());
    }

    #[test]
    fn aliases_past_the_alphabet() {
        assert_eq!(alias_name(0), "a");
        assert_eq!(alias_name(25), "z");
        assert_eq!(alias_name(27), "b1");
    }
}
