//! Homology-sphere classification of Brieskorn–Pham links through the gcd graph.

use serde::{Deserialize, Serialize};

use crate::arith::gcd_u64;
use crate::error::{Error, Result};
use crate::link::ExponentVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HomologyClass {
    IntegralHomologySphere,
    RationalHomologySphereOnly,
    NotRationalHS,
}

impl HomologyClass {
    pub fn is_rational(self) -> bool {
        self != HomologyClass::NotRationalHS
    }

    pub fn is_integral(self) -> bool {
        self == HomologyClass::IntegralHomologySphere
    }
}

/// Vertices are exponent positions; `i ~ j` iff `gcd(a_i, a_j) > 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrieskornGraph {
    exponents: Vec<u64>,
    adjacency: Vec<Vec<usize>>,
    c_ev: Vec<usize>,
}

impl BrieskornGraph {
    pub fn new(exponents: &[u64]) -> Result<Self> {
        if exponents.iter().any(|&a| a < 2) {
            return Err(Error::InvalidInput(
                "graph vertices need exponents >= 2; exponent 1 is the standard-sphere case".into(),
            ));
        }
        let k = exponents.len();
        let mut adjacency = vec![Vec::new(); k];
        for i in 0..k {
            for j in (i + 1)..k {
                if gcd_u64(exponents[i], exponents[j]) > 1 {
                    adjacency[i].push(j);
                    adjacency[j].push(i);
                }
            }
        }
        // every even vertex is adjacent to every other even vertex, so one
        // flood fill from any of them yields the whole even component
        let mut c_ev = Vec::new();
        if let Some(start) = exponents.iter().position(|a| a % 2 == 0) {
            let mut seen = vec![false; k];
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                c_ev.push(v);
                for &u in &adjacency[v] {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            c_ev.sort_unstable();
        }
        Ok(BrieskornGraph {
            exponents: exponents.to_vec(),
            adjacency,
            c_ev,
        })
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, nbrs) in self.adjacency.iter().enumerate() {
            out.extend(nbrs.iter().filter(|&&j| j > i).map(|&j| (i, j)));
        }
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn isolated(&self) -> Vec<usize> {
        (0..self.exponents.len())
            .filter(|&v| self.adjacency[v].is_empty())
            .collect()
    }

    /// The component containing the even exponents (empty if all are odd).
    pub fn c_ev(&self) -> &[usize] {
        &self.c_ev
    }

    /// `|C_ev|` odd and every distinct pair inside it has gcd exactly 2.
    pub fn c_ev_is_odd_gcd_two(&self) -> bool {
        if self.c_ev.len().is_multiple_of(2) {
            return false;
        }
        self.c_ev.iter().enumerate().all(|(k, &i)| {
            self.c_ev[k + 1..]
                .iter()
                .all(|&j| gcd_u64(self.exponents[i], self.exponents[j]) == 2)
        })
    }

    pub fn classify(&self) -> HomologyClass {
        let isolated = self.isolated();
        let c_ev_ok = self.c_ev_is_odd_gcd_two();
        let rational = !isolated.is_empty() || c_ev_ok;
        // In the one-isolated-point clause the isolated vertex must lie outside
        // C_ev; an isolated even vertex is C_ev itself and does not count.
        let odd_isolated = isolated.iter().filter(|v| !self.c_ev.contains(v)).count();
        let integral = isolated.len() >= 2 || (isolated.len() == 1 && odd_isolated == 1 && c_ev_ok);
        if integral {
            HomologyClass::IntegralHomologySphere
        } else if rational {
            HomologyClass::RationalHomologySphereOnly
        } else {
            HomologyClass::NotRationalHS
        }
    }
}

pub fn build_graph(a: &ExponentVector) -> Result<BrieskornGraph> {
    BrieskornGraph::new(a.as_slice())
}

pub fn classify_homology(a: &ExponentVector) -> HomologyClass {
    if a.has_unit_exponent() {
        return HomologyClass::IntegralHomologySphere;
    }
    BrieskornGraph::new(a.as_slice())
        .expect("exponents >= 2")
        .classify()
}

/// Highly connected integral homology spheres of dimension at least 5 are
/// homotopy spheres.
pub fn is_homotopy_sphere(a: &ExponentVector) -> bool {
    a.dimension() >= 5 && classify_homology(a).is_integral()
}

/// Whether some final exponent `x >= 2` could make `prefix ++ [x]` an
/// integral homology sphere.
///
/// Adding a vertex never isolates an existing one, so `x` must itself be an
/// isolated odd vertex and the prefix must already satisfy one of the clauses
/// with that extra isolated point.
pub fn integral_extension_possible(prefix: &[u64]) -> bool {
    if prefix.is_empty() {
        return true;
    }
    let g = match BrieskornGraph::new(prefix) {
        Ok(g) => g,
        Err(_) => return true,
    };
    !g.isolated().is_empty() || g.c_ev_is_odd_gcd_two()
}
