//! Reference constructions written entry by entry from the definitions,
//! using labels and the edge list rather than any builder code. Tests treat
//! these as ground truth.

use crate::builders::{IncidenceMatrices, TopologyMatrices};
use crate::graph::{Edge, NetworkSystem, Tier, TierError};
use crate::linalg::{Matrix, Vector};
use crate::scalar::Scalar;

fn listed(sys: &NetworkSystem, head: usize, tail: usize) -> Option<Edge> {
    let nodes = sys.nodes();
    let pair = Edge::new(nodes[head].clone(), nodes[tail].clone());
    sys.edges().contains(&pair).then_some(pair)
}

fn entry<S: Scalar>(sys: &NetworkSystem, head: usize, tail: usize) -> S {
    match listed(sys, head, tail) {
        Some(e) => S::from_rational(&sys.weight_of(&e)),
        None => S::zero(),
    }
}

/// Weighted out-degree of node `i`, summed over the edge list.
pub fn out_degree<S: Scalar>(sys: &NetworkSystem, i: usize) -> S {
    let u = &sys.nodes()[i];
    let mut total = S::zero();
    for e in sys.edges().iter().filter(|e| &e.head == u) {
        total = total + S::from_rational(&sys.weight_of(e));
    }
    total
}

/// Weighted in-degree of node `i`, summed over the edge list.
pub fn in_degree<S: Scalar>(sys: &NetworkSystem, i: usize) -> S {
    let u = &sys.nodes()[i];
    let mut total = S::zero();
    for e in sys.edges().iter().filter(|e| &e.tail == u) {
        total = total + S::from_rational(&sys.weight_of(e));
    }
    total
}

pub fn oracle_matrices<S: Scalar>(sys: &NetworkSystem) -> Result<TopologyMatrices<S>, TierError> {
    sys.require_tier(Tier::Weighted)?;
    let m = sys.m();
    let n = sys.n();
    let nodes = sys.nodes();
    let edges = sys.edges();

    let a: Vec<Vec<S>> = (0..m).map(|i| (0..m).map(|j| entry(sys, i, j)).collect()).collect();
    let mut dout = vec![vec![S::zero(); m]; m];
    let mut din = vec![vec![S::zero(); m]; m];
    let mut l = vec![vec![S::zero(); m]; m];
    for i in 0..m {
        dout[i][i] = out_degree(sys, i);
        din[i][i] = in_degree(sys, i);
    }
    for i in 0..m {
        for j in 0..m {
            l[i][j] = dout[i][j].clone() - a[i][j].clone();
        }
    }

    let mut w = vec![vec![S::zero(); n]; n];
    for (j, e) in edges.iter().enumerate() {
        w[j][j] = S::from_rational(&sys.weight_of(e));
    }

    let incidence = if edges.iter().any(|e| e.head == e.tail) {
        None
    } else {
        let mut iout = vec![vec![S::zero(); n]; m];
        let mut iin = vec![vec![S::zero(); n]; m];
        let mut k = vec![vec![S::zero(); n]; m];
        for i in 0..m {
            for j in 0..n {
                if edges[j].head == nodes[i] {
                    iout[i][j] = S::one();
                    k[i][j] = S::one();
                }
                if edges[j].tail == nodes[i] {
                    iin[i][j] = S::one();
                    k[i][j] = -S::one();
                }
            }
        }
        Some(IncidenceMatrices {
            iout: dense(iout, n),
            iin: dense(iin, n),
            k: dense(k, n),
        })
    };

    Ok(TopologyMatrices {
        a: dense(a, m),
        dout: dense(dout, m),
        din: dense(din, m),
        l: dense(l, m),
        w: dense(w, n),
        incidence,
    })
}

fn dense<S: Scalar>(rows: Vec<Vec<S>>, cols: usize) -> Matrix<S> {
    if rows.is_empty() {
        return Matrix::zeros(0, cols);
    }
    Matrix::from_rows(rows).expect("rectangular")
}

/// `Σ_{j≠i} a_ij (v_i - v_j)` from the edge list.
pub fn injected_current<S: Scalar>(sys: &NetworkSystem, v: &Vector<S>, i: usize) -> S {
    let mut total = S::zero();
    for j in (0..sys.m()).filter(|&j| j != i) {
        let a: S = entry(sys, i, j);
        total = total + a * (v[i].clone() - v[j].clone());
    }
    total
}

/// `½ Σ_i Σ_j a_ij (v_i - v_j)²`.
pub fn dissipated_power<S: Scalar>(sys: &NetworkSystem, v: &Vector<S>) -> S {
    let mut total = S::zero();
    for i in 0..sys.m() {
        for j in 0..sys.m() {
            let a: S = entry(sys, i, j);
            let d = v[i].clone() - v[j].clone();
            total = total + a * d.clone() * d;
        }
    }
    total / S::from_i64(2)
}

/// Star-mesh weight between boundary nodes `i` and `j` after eliminating a
/// single interior node `z` from a symmetric, self-loop-free system:
/// `a_ij + a_iz a_zj / Σ_k a_zk`.
pub fn star_mesh_weight<S: Scalar>(sys: &NetworkSystem, i: usize, j: usize, z: usize) -> S {
    let a = |p: usize, q: usize| -> S { entry(sys, p, q) };
    let mut degree = S::zero();
    for k in 0..sys.m() {
        degree = degree + a(z, k);
    }
    a(i, j) + a(i, z) * a(z, j) / degree
}
