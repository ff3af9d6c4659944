//! Topology matrices of a network system.
//!
//! Rows follow node order and incidence columns follow edge order. The
//! adjacency, degree, Laplacian and weight matrices need the `Weighted` tier;
//! the incidence matrices additionally need `Simple` (no self-loops).

use crate::graph::{NetworkSystem, Tier, TierError};
use crate::linalg::Matrix;
use crate::scalar::{Backend, Scalar};

/// Entry (i, j) is the weight of edge i -> j, zero for non-edges.
pub fn adjacency_mat<S: Scalar>(sys: &NetworkSystem) -> Result<Matrix<S>, TierError> {
    sys.require_tier(Tier::Weighted)?;
    Ok(adjacency_unchecked(sys))
}

fn adjacency_unchecked<S: Scalar>(sys: &NetworkSystem) -> Matrix<S> {
    let m = sys.m();
    let mut a = Matrix::zeros(m, m);
    for &(h, t) in sys.edge_positions() {
        a = a.with_entry(h, t, S::from_rational(&sys.weight(h, t)));
    }
    a
}

/// Diagonal of weighted out-degrees, `diag(A * J)`.
pub fn out_degree_mat<S: Scalar>(sys: &NetworkSystem) -> Result<Matrix<S>, TierError> {
    sys.require_tier(Tier::Weighted)?;
    Ok(degree_matrix(&adjacency_unchecked(sys)))
}

/// Diagonal of weighted in-degrees, `diag(Aᵀ * J)`.
pub fn in_degree_mat<S: Scalar>(sys: &NetworkSystem) -> Result<Matrix<S>, TierError> {
    sys.require_tier(Tier::Weighted)?;
    Ok(degree_matrix(&adjacency_unchecked::<S>(sys).transpose()))
}

// Exact arithmetic goes through the product with the all-ones matrix; floats
// sum rows directly, which yields the same diagonal.
fn degree_matrix<S: Scalar>(a: &Matrix<S>) -> Matrix<S> {
    match S::BACKEND {
        Backend::Rational => a
            .mul(&Matrix::ones(a.rows()))
            .and_then(|p| p.diag_matrix())
            .expect("square adjacency"),
        Backend::Float => {
            let sums: Vec<S> = (0..a.rows()).map(|i| a.row_sum(i)).collect();
            Matrix::from_diagonal(&sums)
        }
    }
}

/// `L = Dout - A`.
pub fn laplacian_mat<S: Scalar>(sys: &NetworkSystem) -> Result<Matrix<S>, TierError> {
    sys.require_tier(Tier::Weighted)?;
    let a = adjacency_unchecked::<S>(sys);
    Ok(degree_matrix(&a).sub(&a).expect("same dimensions"))
}

/// Entry (i, j) is 1 when node i is the head of edge j.
pub fn out_inc_mat<S: Scalar>(sys: &NetworkSystem) -> Result<Matrix<S>, TierError> {
    sys.require_tier(Tier::Weighted)?;
    sys.require_tier(Tier::Simple)?;
    Ok(incidence(sys, |(h, _)| h))
}

/// Entry (i, j) is 1 when node i is the tail of edge j.
pub fn in_inc_mat<S: Scalar>(sys: &NetworkSystem) -> Result<Matrix<S>, TierError> {
    sys.require_tier(Tier::Weighted)?;
    sys.require_tier(Tier::Simple)?;
    Ok(incidence(sys, |(_, t)| t))
}

fn incidence<S: Scalar>(sys: &NetworkSystem, end: impl Fn((usize, usize)) -> usize) -> Matrix<S> {
    let edges = sys.edge_positions();
    Matrix::from_fn(
        sys.m(),
        sys.n(),
        |i, j| {
            if end(edges[j]) == i {
                S::one()
            } else {
                S::zero()
            }
        },
    )
}

/// Oriented incidence `K = Iout - Iin`.
pub fn incidence_mat<S: Scalar>(sys: &NetworkSystem) -> Result<Matrix<S>, TierError> {
    let iout = out_inc_mat::<S>(sys)?;
    let iin = in_inc_mat::<S>(sys)?;
    Ok(iout.sub(&iin).expect("same dimensions"))
}

/// Diagonal of edge weights in edge order.
pub fn weight_mat<S: Scalar>(sys: &NetworkSystem) -> Result<Matrix<S>, TierError> {
    sys.require_tier(Tier::Weighted)?;
    let diag: Vec<S> = (0..sys.n()).map(|j| S::from_rational(&sys.edge_weight(j))).collect();
    Ok(Matrix::from_diagonal(&diag))
}

#[derive(Debug, Clone, PartialEq)]
pub struct IncidenceMatrices<S> {
    pub iout: Matrix<S>,
    pub iin: Matrix<S>,
    pub k: Matrix<S>,
}

/// Every topology matrix of one system.
#[derive(Debug, Clone, PartialEq)]
pub struct TopologyMatrices<S> {
    pub a: Matrix<S>,
    pub dout: Matrix<S>,
    pub din: Matrix<S>,
    pub l: Matrix<S>,
    pub w: Matrix<S>,
    /// `None` when the system has self-loops.
    pub incidence: Option<IncidenceMatrices<S>>,
}

impl<S: Scalar> TopologyMatrices<S> {
    pub fn build(sys: &NetworkSystem) -> Result<Self, TierError> {
        build_all(sys)
    }

    pub fn m(&self) -> usize {
        self.a.rows()
    }

    pub fn n(&self) -> usize {
        self.w.rows()
    }

    /// Looks a member up by its short name (`A`, `Dout`, `Din`, `L`, `W`,
    /// `Iout`, `Iin`, `K`), case-insensitively.
    pub fn by_name(&self, name: &str) -> Option<&Matrix<S>> {
        let inc = self.incidence.as_ref();
        match name.to_ascii_lowercase().as_str() {
            "a" => Some(&self.a),
            "dout" => Some(&self.dout),
            "din" => Some(&self.din),
            "l" => Some(&self.l),
            "w" => Some(&self.w),
            "iout" => inc.map(|i| &i.iout),
            "iin" => inc.map(|i| &i.iin),
            "k" => inc.map(|i| &i.k),
            _ => None,
        }
    }
}

/// Canonical member names in output order.
pub const MATRIX_NAMES: [&str; 8] = ["A", "Dout", "Din", "L", "Iout", "Iin", "K", "W"];

pub fn build_all<S: Scalar>(sys: &NetworkSystem) -> Result<TopologyMatrices<S>, TierError> {
    sys.require_tier(Tier::Weighted)?;
    let a = adjacency_unchecked::<S>(sys);
    let dout = degree_matrix(&a);
    let din = degree_matrix(&a.transpose());
    let l = dout.sub(&a).expect("same dimensions");
    let incidence = if sys.satisfies(Tier::Simple) {
        let iout = incidence::<S>(sys, |(h, _)| h);
        let iin = incidence::<S>(sys, |(_, t)| t);
        let k = iout.sub(&iin).expect("same dimensions");
        Some(IncidenceMatrices { iout, iin, k })
    } else {
        None
    };
    Ok(TopologyMatrices {
        w: weight_mat(sys)?,
        a,
        dout,
        din,
        l,
        incidence,
    })
}
