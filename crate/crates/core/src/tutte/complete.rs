//! Closed evaluations: complete graphs by recurrence, chromatic and
//! classical Tutte specializations.

use super::delcon::z_del_con;
use crate::algebra::rat::{pow_u, Rat};
use crate::graph::multigraph::MultiGraph;
use num_traits::{One, Zero};

fn binomials(n: usize) -> Vec<Vec<Rat>> {
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![Rat::one(); i + 1];
        for j in 1..i {
            row[j] = &rows[i - 1][j - 1] + &rows[i - 1][j];
        }
        rows.push(row);
    }
    rows
}

/// Z of the complete graph K_n at (q, v), all edges weight v, in O(n^2)
/// rational operations.
///
/// With y = 1+v, the connected sums D_k satisfy
///   D_k = y^(k(k-1)/2) - sum_{i<k} C(k-1,i-1) D_i y^((k-i)(k-i-1)/2),
/// splitting off the component containing the lowest vertex, and then
///   Z_n = sum_k C(n-1,k-1) q D_k Z_{n-k}.
pub fn z_complete(n: usize, q: &Rat, v: &Rat) -> Rat {
    if n == 0 {
        return Rat::one();
    }
    let y = &Rat::one() + v;
    let binom = binomials(n);
    let ypow_choose2 =
        |k: usize| -> Rat { pow_u(&y, (k * (k - 1) / 2) as u32) };
    let mut d = vec![Rat::zero(); n + 1];
    for k in 1..=n {
        let mut val = ypow_choose2(k);
        for i in 1..k {
            val = &val - &(&(&binom[k - 1][i - 1] * &d[i]) * &ypow_choose2(k - i));
        }
        d[k] = val;
    }
    let mut z = vec![Rat::zero(); n + 1];
    z[0] = Rat::one();
    for m in 1..=n {
        let mut val = Rat::zero();
        for k in 1..=m {
            val = &val + &(&(&binom[m - 1][k - 1] * &(q * &d[k])) * &z[m - k]);
        }
        z[m] = val;
    }
    z.pop().unwrap()
}

/// Chromatic polynomial value: Z at all edge weights -1.
pub fn chromatic(g: &MultiGraph, q: &Rat) -> Rat {
    let minus_one = -Rat::one();
    z_del_con(&g.with_uniform_weight(&minus_one), q)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TutteError {
    UndefinedAtUnitLine,
}

impl std::fmt::Display for TutteError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "classical Tutte polynomial undefined at x=1 or y=1 via this identity")
    }
}

impl std::error::Error for TutteError {}

/// Classical Tutte polynomial T_G(x,y) of the unweighted graph underlying
/// `g`, via T = (x-1)^(-k(E)) (y-1)^(-|V|) Z((x-1)(y-1), y-1).
pub fn classical_tutte(g: &MultiGraph, x: &Rat, y: &Rat) -> Result<Rat, TutteError> {
    let one = Rat::one();
    if x == &one || y == &one {
        return Err(TutteError::UndefinedAtUnitLine);
    }
    let xm = x - &one;
    let ym = y - &one;
    let q = &xm * &ym;
    let z = z_del_con(&g.with_uniform_weight(&ym), &q);
    let k = g.num_components() as u32;
    let n = g.vertex_count() as u32;
    Ok(&z / &(&pow_u(&xm, k) * &pow_u(&ym, n)))
}

/// Convenience: K_n as a multigraph with uniform weight.
pub fn complete_graph(n: usize, w: &Rat) -> MultiGraph {
    let mut g = MultiGraph::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            g.add_edge(i, j, w.clone());
        }
    }
    g
}
