//! Kron reduction: eliminate the interior nodes of a Laplacian through the
//! Schur complement `A - B D⁻¹ C` of its interior block.

use thiserror::Error;

use crate::builders::laplacian_mat;
use crate::checks::{CheckReport, Verdict, Witness};
use crate::graph::{NetworkSystem, NodeLabel, Partition, TierError};
use crate::linalg::{Blocks, LinalgError, Matrix};
use crate::scalar::{Scalar, DEFAULT_EPS};

pub const CLOSURE: &str = "kron_closure";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KronError {
    #[error("Laplacian is {rows}x{cols} but the partition covers {nodes} nodes")]
    DimensionMismatch { rows: usize, cols: usize, nodes: usize },
    #[error("interior block is singular; interior nodes: {}", join(.interior))]
    SingularInterior { interior: Vec<NodeLabel> },
    #[error("partition does not match the node order of the system")]
    PartitionMismatch,
    #[error(transparent)]
    Tier(#[from] TierError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

fn join(labels: &[NodeLabel]) -> String {
    labels.iter().map(NodeLabel::as_str).collect::<Vec<_>>().join(", ")
}

#[derive(Debug, Clone, PartialEq)]
pub struct KronResult<S> {
    pub reduced: Matrix<S>,
    pub blocks: Blocks<S>,
    pub interior_inverse: Matrix<S>,
    pub closure: CheckReport,
    /// Every entry of the interior inverse is non-negative.
    pub nonneg_inverse: bool,
}

/// Reduces `l` onto the boundary nodes of `part`, comparing with tolerance
/// `eps` on the float backend.
pub fn kron_red<S: Scalar>(l: &Matrix<S>, part: &Partition, eps: f64) -> Result<KronResult<S>, KronError> {
    let nodes = part.len();
    if l.rows() != nodes || l.cols() != nodes {
        return Err(KronError::DimensionMismatch {
            rows: l.rows(),
            cols: l.cols(),
            nodes,
        });
    }
    let k = part.boundary().len();
    let blocks = l.split_block(k, k)?;
    let interior_inverse = blocks
        .bottom_right
        .inverse()?
        .ok_or_else(|| KronError::SingularInterior {
            interior: part.interior().to_vec(),
        })?;
    let correction = blocks.top_right.mul(&interior_inverse)?.mul(&blocks.bottom_left)?;
    let reduced = blocks.top_left.sub(&correction)?;
    let nonneg_inverse = interior_inverse
        .entries()
        .all(|(_, _, v)| v.sign_within(eps) != std::cmp::Ordering::Less);
    let closure = closure_report(&reduced, nonneg_inverse, eps);
    Ok(KronResult {
        reduced,
        blocks,
        interior_inverse,
        closure,
        nonneg_inverse,
    })
}

/// Builds the Laplacian of `sys` and reduces it along `part`, which must
/// split the system's own node order.
pub fn kron_reduce_system<S: Scalar>(
    sys: &NetworkSystem,
    part: &Partition,
    eps: f64,
) -> Result<KronResult<S>, KronError> {
    if !part.matches(sys) {
        return Err(KronError::PartitionMismatch);
    }
    let l = laplacian_mat::<S>(sys)?;
    kron_red(&l, part, eps)
}

/// Re-evaluates whether the reduced matrix is a Laplacian.
pub fn check_closure<S: Scalar>(res: &KronResult<S>, eps: f64) -> CheckReport {
    closure_report(&res.reduced, res.nonneg_inverse, eps)
}

fn closure_report<S: Scalar>(reduced: &Matrix<S>, nonneg_inverse: bool, eps: f64) -> CheckReport {
    let witness = reduced.laplacian_violation(eps).map(|v| {
        let (row, col) = v.position();
        Witness {
            relation: v.to_string(),
            row,
            col: Some(col),
            lhs: reduced.get(row, col).map(|x| x.to_decimal().0).unwrap_or_default(),
            rhs: "Laplacian".into(),
        }
    });
    CheckReport {
        name: CLOSURE.into(),
        verdict: if witness.is_some() {
            Verdict::Fail
        } else {
            Verdict::Pass
        },
        witness,
        backend: S::BACKEND,
        tolerance: (!S::is_exact()).then_some(eps),
        detail: Some(format!("interior inverse non-negative: {nonneg_inverse}")),
    }
}

/// [`kron_red`] at the default tolerance.
pub fn kron_red_default<S: Scalar>(l: &Matrix<S>, part: &Partition) -> Result<KronResult<S>, KronError> {
    kron_red(l, part, DEFAULT_EPS)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::four_block;
    use crate::scalar::{rational_from_i64 as r, Rational};
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn labels(names: &[&str]) -> Vec<NodeLabel> {
        names.iter().map(|&n| NodeLabel::new(n)).collect()
    }

    fn p3_laplacian() -> Matrix<Rational> {
        Matrix::from_i64_rows(&[&[1, 0, -1], &[0, 1, -1], &[-1, -1, 2]])
    }

    fn p3() -> NetworkSystem {
        NetworkSystem::from_triples(
            &["a", "c", "b"],
            &[("a", "b", r(1)), ("b", "a", r(1)), ("b", "c", r(1)), ("c", "b", r(1))],
        )
        .unwrap()
    }

    fn k4() -> NetworkSystem {
        let names = ["n0", "n1", "n2", "n3"];
        let mut edges = Vec::new();
        for h in names {
            for t in names {
                if h != t {
                    edges.push((h, t, r(1)));
                }
            }
        }
        NetworkSystem::from_triples(&names, &edges).unwrap()
    }

    #[test]
    fn p3_reduction() {
        let part = Partition::new(labels(&["a", "c", "b"]), 2).unwrap();
        let res = kron_red(&p3_laplacian(), &part, 0.0).unwrap();
        let half = q(1, 2);
        let expected = Matrix::from_rows(vec![
            vec![half.clone(), -half.clone()],
            vec![-half.clone(), half.clone()],
        ])
        .unwrap();
        assert_eq!(res.reduced, expected);
        assert_eq!(res.interior_inverse, Matrix::from_rows(vec![vec![half]]).unwrap());
        assert!(res.closure.passed());
        assert!(res.nonneg_inverse);
        assert_eq!(four_block(&res.blocks).unwrap(), p3_laplacian());

        let via_system = kron_reduce_system::<Rational>(&p3(), &p3().make_partition(2).unwrap(), 0.0).unwrap();
        assert_eq!(via_system.reduced, res.reduced);

        let float = kron_reduce_system::<f64>(&p3(), &p3().make_partition(2).unwrap(), 1e-9).unwrap();
        let expected = Matrix::from_rows(vec![vec![0.5, -0.5], vec![-0.5, 0.5]]).unwrap();
        assert!(float.reduced.eq_within(&expected, 1e-12));
    }

    #[test]
    fn zero_coupling_leaves_boundary_block() {
        let l: Matrix<Rational> = Matrix::from_i64_rows(&[&[1, -1, 0], &[-1, 1, 0], &[0, 0, 3]]);
        let part = Partition::new(labels(&["x", "y", "z"]), 2).unwrap();
        let res = kron_red(&l, &part, 0.0).unwrap();
        assert_eq!(res.reduced, Matrix::from_i64_rows(&[&[1, -1], &[-1, 1]]));
    }

    #[test]
    fn singular_interior() {
        // z is isolated, so its interior block is [[0]].
        let l: Matrix<Rational> = Matrix::from_i64_rows(&[&[1, -1, 0], &[-1, 1, 0], &[0, 0, 0]]);
        let part = Partition::new(labels(&["x", "y", "z"]), 2).unwrap();
        let err = kron_red(&l, &part, 0.0).unwrap_err();
        assert_eq!(
            err,
            KronError::SingularInterior {
                interior: labels(&["z"])
            }
        );
        assert!(err.to_string().contains("interior nodes: z"));
    }

    #[test]
    fn k4_reduction() {
        let sys = k4();
        let res = kron_reduce_system::<Rational>(&sys, &sys.make_partition(3).unwrap(), 0.0).unwrap();
        // Eliminating a degree-3 node with unit edges adds 1*1/3 to each
        // remaining pair.
        let w = q(4, 3);
        let expected = Matrix::from_fn(3, 3, |i, j| if i == j { &w * r(2) } else { -w.clone() });
        assert_eq!(res.reduced, expected);
        assert!(check_closure(&res, 0.0).passed());
    }

    #[test]
    fn dimension_mismatch() {
        let part = Partition::new(labels(&["a", "b", "c", "d"]), 2).unwrap();
        assert!(matches!(
            kron_red(&p3_laplacian(), &part, 0.0),
            Err(KronError::DimensionMismatch { nodes: 4, .. })
        ));
        let wrong_order = Partition::new(labels(&["a", "b", "c"]), 2).unwrap();
        assert_eq!(
            kron_reduce_system::<Rational>(&p3(), &wrong_order, 0.0).unwrap_err(),
            KronError::PartitionMismatch
        );
    }

    #[test]
    fn closure_can_fail_on_arbitrary_input() {
        let m: Matrix<Rational> = Matrix::from_i64_rows(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 1]]);
        let part = Partition::new(labels(&["x", "y", "z"]), 2).unwrap();
        let res = kron_red(&m, &part, 0.0).unwrap();
        assert_eq!(res.closure.verdict, Verdict::Fail);
        let w = res.closure.witness.unwrap();
        assert_eq!((w.row, w.col), (0, Some(1)));
    }

    #[test]
    fn two_step_reduction_matches_one_step() {
        let names = ["n0", "n1", "n2", "n3"];
        let mut edges = Vec::new();
        for k in 0..3 {
            edges.push((names[k], names[k + 1], r(1)));
            edges.push((names[k + 1], names[k], r(1)));
        }
        let p4 = NetworkSystem::from_triples(&names, &edges).unwrap();
        let l = laplacian_mat::<Rational>(&p4).unwrap();
        let once = kron_red(&l, &p4.make_partition(2).unwrap(), 0.0).unwrap().reduced;

        let first = kron_red(&l, &p4.make_partition(3).unwrap(), 0.0).unwrap().reduced;
        let part = Partition::new(labels(&names[..3]), 2).unwrap();
        let twice = kron_red(&first, &part, 0.0).unwrap().reduced;
        assert_eq!(once, twice);
    }
}
