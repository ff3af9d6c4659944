//! Resistive-circuit analysis. Adjacency entries act as conductances, so the
//! resistance between two nodes is `1 / a_ij` and exists only on edges.
//!
//! Currents and powers are unitless here; the CLI labels them amps and
//! watts for voltages given in volts.

use std::fmt::Write as _;

use thiserror::Error;

use crate::builders::{adjacency_mat, laplacian_mat};
use crate::graph::{NetworkSystem, NodeLabel, Tier, TierError};
use crate::linalg::{Matrix, Vector};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElectricalError {
    #[error("node index {index} out of range for {nodes} nodes")]
    IndexOutOfRange { index: usize, nodes: usize },
    #[error("no resistor between nodes {head} and {tail}")]
    NoResistor { head: usize, tail: usize },
    #[error("voltage profile has {got} entries but the network has {expected} nodes")]
    ProfileLength { expected: usize, got: usize },
    #[error(transparent)]
    Tier(#[from] TierError),
}

/// Node voltages, aligned with the node order.
#[derive(Debug, Clone, PartialEq)]
pub struct VoltageProfile<S>(Vector<S>);

impl<S: Scalar> VoltageProfile<S> {
    pub fn new(values: Vec<S>) -> Self {
        Self(Vector::new(values))
    }

    pub fn as_vector(&self) -> &Vector<S> {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    /// Every voltage raised by `c`.
    pub fn shifted(&self, c: &S) -> Self {
        Self(self.0.map(|x| x.clone() + c.clone()))
    }
}

impl<S> std::ops::Index<usize> for VoltageProfile<S> {
    type Output = S;

    fn index(&self, i: usize) -> &S {
        &self.0[i]
    }
}

/// Power dissipated by the resistor on edge `head -> tail`.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgePower<S> {
    pub head: usize,
    pub tail: usize,
    pub current: S,
    pub power: S,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PowerReport<S> {
    /// One entry per ordered edge, in row-major order of (head, tail).
    pub per_edge: Vec<EdgePower<S>>,
    /// Net injected current per node.
    pub injected: Vector<S>,
    /// Half the sum of per-edge powers.
    pub total: S,
    /// `vᵀ L v`.
    pub quadratic_form: S,
}

impl<S: Scalar> PowerReport<S> {
    pub fn consistent(&self, eps: f64) -> bool {
        self.total.near(&self.quadratic_form, eps)
    }

    pub fn to_json(&self, labels: &[NodeLabel]) -> serde_json::Value {
        let per_edge: Vec<_> = self
            .per_edge
            .iter()
            .map(|e| {
                serde_json::json!({
                    "head": labels[e.head].as_str(),
                    "tail": labels[e.tail].as_str(),
                    "current": e.current.to_json(),
                    "power": e.power.to_json(),
                })
            })
            .collect();
        let injected: Vec<_> = labels
            .iter()
            .zip(self.injected.iter())
            .map(|(l, c)| serde_json::json!({"node": l.as_str(), "current": c.to_json()}))
            .collect();
        serde_json::json!({
            "per_edge": per_edge,
            "injected": injected,
            "total": self.total.to_json(),
            "quadratic_form": self.quadratic_form.to_json(),
        })
    }

    /// Human-readable table.
    pub fn to_table(&self, labels: &[NodeLabel]) -> String {
        let d = |x: &S| x.to_decimal().0;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<12} {:<12} {:>14} {:>14}",
            "head", "tail", "current (A)", "power (W)"
        );
        for e in &self.per_edge {
            let _ = writeln!(
                out,
                "{:<12} {:<12} {:>14} {:>14}",
                labels[e.head].as_str(),
                labels[e.tail].as_str(),
                d(&e.current),
                d(&e.power)
            );
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "{:<12} {:>14}", "node", "injected (A)");
        for (l, c) in labels.iter().zip(self.injected.iter()) {
            let _ = writeln!(out, "{:<12} {:>14}", l.as_str(), d(c));
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "total power (W): {}", d(&self.total));
        let _ = writeln!(out, "v^T L v (W): {}", d(&self.quadratic_form));
        out
    }
}

/// Conductance network derived from a weighted system.
#[derive(Debug, Clone, PartialEq)]
pub struct ResistiveNetwork<S> {
    conductance: Matrix<S>,
    laplacian: Matrix<S>,
    symmetry_error: Option<TierError>,
}

impl<S: Scalar> ResistiveNetwork<S> {
    pub fn new(sys: &NetworkSystem) -> Result<Self, TierError> {
        let conductance = adjacency_mat(sys)?;
        let laplacian = laplacian_mat(sys)?;
        let symmetry_error = sys.require_tier(Tier::SymmetricWeighted).err();
        Ok(Self {
            conductance,
            laplacian,
            symmetry_error,
        })
    }

    pub fn nodes(&self) -> usize {
        self.conductance.rows()
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetry_error.is_none()
    }

    pub fn laplacian(&self) -> &Matrix<S> {
        &self.laplacian
    }

    fn check_index(&self, index: usize) -> Result<(), ElectricalError> {
        if index < self.nodes() {
            Ok(())
        } else {
            Err(ElectricalError::IndexOutOfRange {
                index,
                nodes: self.nodes(),
            })
        }
    }

    fn check_profile(&self, v: &VoltageProfile<S>) -> Result<(), ElectricalError> {
        if v.dim() == self.nodes() {
            Ok(())
        } else {
            Err(ElectricalError::ProfileLength {
                expected: self.nodes(),
                got: v.dim(),
            })
        }
    }

    fn require_symmetric(&self) -> Result<(), ElectricalError> {
        match &self.symmetry_error {
            None => Ok(()),
            Some(e) => Err(e.clone().into()),
        }
    }

    /// Ohm's law: `a_ij (v_i - v_j)`; zero between non-adjacent nodes.
    pub fn current(&self, v: &VoltageProfile<S>, i: usize, j: usize) -> Result<S, ElectricalError> {
        self.check_profile(v)?;
        self.check_index(i)?;
        self.check_index(j)?;
        Ok(self.current_unchecked(v, i, j))
    }

    fn current_unchecked(&self, v: &VoltageProfile<S>, i: usize, j: usize) -> S {
        let a = &self.conductance[(i, j)];
        if a.is_zero() {
            return S::zero();
        }
        a.clone() * (v[i].clone() - v[j].clone())
    }

    /// Net current injected at node `i`: the sum of currents to every other
    /// node.
    pub fn injected_current(&self, v: &VoltageProfile<S>, i: usize) -> Result<S, ElectricalError> {
        self.check_profile(v)?;
        self.check_index(i)?;
        Ok((0..self.nodes())
            .filter(|&j| j != i)
            .fold(S::zero(), |acc, j| acc + self.current_unchecked(v, i, j)))
    }

    /// `c_ij² / a_ij`, the dissipation of the resistor between i and j.
    pub fn power(&self, v: &VoltageProfile<S>, i: usize, j: usize) -> Result<S, ElectricalError> {
        let c = self.current(v, i, j)?;
        let a = &self.conductance[(i, j)];
        if a.is_zero() {
            return Err(ElectricalError::NoResistor { head: i, tail: j });
        }
        Ok(c.clone() * c / a.clone())
    }

    /// `½ Σ a_ij (v_i - v_j)²` over all ordered node pairs.
    pub fn quadratic_form_expansion(&self, v: &VoltageProfile<S>) -> Result<S, ElectricalError> {
        self.require_symmetric()?;
        self.check_profile(v)?;
        let m = self.nodes();
        let mut sum = S::zero();
        for i in 0..m {
            for j in 0..m {
                let diff = v[i].clone() - v[j].clone();
                sum = sum + self.conductance[(i, j)].clone() * diff.clone() * diff;
            }
        }
        Ok(sum / S::from_i64(2))
    }

    /// Per-edge powers, injected currents, the halved power sum and `vᵀ L v`.
    pub fn total_power(&self, v: &VoltageProfile<S>) -> Result<PowerReport<S>, ElectricalError> {
        self.require_symmetric()?;
        self.check_profile(v)?;
        let m = self.nodes();
        let mut per_edge = Vec::new();
        for i in 0..m {
            for j in 0..m {
                if self.conductance[(i, j)].is_zero() {
                    continue;
                }
                per_edge.push(EdgePower {
                    head: i,
                    tail: j,
                    current: self.current_unchecked(v, i, j),
                    power: self.power(v, i, j)?,
                });
            }
        }
        let total = per_edge.iter().fold(S::zero(), |acc, e| acc + e.power.clone()) / S::from_i64(2);
        let lv = self.laplacian.mul_vec(v.as_vector()).expect("profile length checked");
        let quadratic_form = v.as_vector().inner_prod(&lv).expect("same length");
        let injected = Vector::from_fn(m, |i| self.injected_current(v, i).expect("index in range"));
        Ok(PowerReport {
            per_edge,
            injected,
            total,
            quadratic_form,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational_from_i64 as r, Rational};

    fn two_cycle() -> NetworkSystem {
        NetworkSystem::from_triples(&["a", "b"], &[("a", "b", r(2)), ("b", "a", r(2))]).unwrap()
    }

    fn volts(values: &[i64]) -> VoltageProfile<Rational> {
        VoltageProfile::new(values.iter().map(|&x| r(x)).collect())
    }

    #[test]
    fn two_cycle_fixture() {
        let net = ResistiveNetwork::<Rational>::new(&two_cycle()).unwrap();
        let v = volts(&[3, 1]);
        assert_eq!(net.current(&v, 0, 1).unwrap(), r(4));
        assert_eq!(net.current(&v, 1, 1).unwrap(), r(0));
        assert_eq!(net.injected_current(&v, 0).unwrap(), r(4));
        let lv = net.laplacian().mul_vec(v.as_vector()).unwrap();
        assert_eq!(lv[0], r(4));
        assert_eq!(net.power(&v, 0, 1).unwrap(), r(8));
        let report = net.total_power(&v).unwrap();
        assert_eq!(report.total, r(8));
        assert_eq!(report.quadratic_form, r(8));
        assert_eq!(net.quadratic_form_expansion(&v).unwrap(), r(8));
        assert_eq!(report.per_edge.len(), 2);
        assert_eq!(report.injected, Vector::from_i64(&[4, -4]));
    }

    #[test]
    fn constant_and_zero_profiles() {
        let net = ResistiveNetwork::<Rational>::new(&two_cycle()).unwrap();
        let flat = volts(&[5, 5]);
        assert_eq!(net.injected_current(&flat, 1).unwrap(), r(0));
        assert_eq!(net.power(&flat, 0, 1).unwrap(), r(0));
        assert_eq!(net.total_power(&flat).unwrap().total, r(0));
        assert_eq!(net.quadratic_form_expansion(&volts(&[0, 0])).unwrap(), r(0));
    }

    #[test]
    fn non_edges() {
        let sys = NetworkSystem::from_triples(&["a", "b", "c"], &[("a", "b", r(1)), ("b", "a", r(1))]).unwrap();
        let net = ResistiveNetwork::<Rational>::new(&sys).unwrap();
        let v = volts(&[1, 2, 7]);
        assert_eq!(net.current(&v, 0, 2).unwrap(), r(0));
        assert_eq!(net.injected_current(&v, 2).unwrap(), r(0));
        assert_eq!(
            net.power(&v, 0, 2).unwrap_err(),
            ElectricalError::NoResistor { head: 0, tail: 2 }
        );
        assert!(matches!(
            net.current(&v, 0, 3),
            Err(ElectricalError::IndexOutOfRange { index: 3, .. })
        ));
        assert!(matches!(
            net.current(&volts(&[1]), 0, 1),
            Err(ElectricalError::ProfileLength { .. })
        ));
    }

    #[test]
    fn p3_profile() {
        let sys = NetworkSystem::from_triples(
            &["a", "c", "b"],
            &[("a", "b", r(1)), ("b", "a", r(1)), ("b", "c", r(1)), ("c", "b", r(1))],
        )
        .unwrap();
        let net = ResistiveNetwork::<Rational>::new(&sys).unwrap();
        let v = volts(&[1, 0, 0]);
        let report = net.total_power(&v).unwrap();
        assert_eq!(report.quadratic_form, r(1));
        assert_eq!(report.total, r(1));
    }

    #[test]
    fn totals_need_symmetry() {
        let g3 = NetworkSystem::from_triples(
            &["a", "b", "c"],
            &[("a", "b", r(2)), ("b", "c", r(3)), ("c", "a", r(4))],
        )
        .unwrap();
        let net = ResistiveNetwork::<Rational>::new(&g3).unwrap();
        assert!(!net.is_symmetric());
        let v = volts(&[1, 2, 3]);
        assert!(matches!(net.total_power(&v), Err(ElectricalError::Tier(_))));
        assert!(matches!(
            net.quadratic_form_expansion(&v),
            Err(ElectricalError::Tier(_))
        ));
        // injected current only needs the weighted tier
        assert_eq!(net.injected_current(&v, 0).unwrap(), r(-2));
    }

    #[test]
    fn float_backend() {
        let net = ResistiveNetwork::<f64>::new(&two_cycle()).unwrap();
        let v = VoltageProfile::new(vec![3.0, 1.0]);
        let report = net.total_power(&v).unwrap();
        assert!(report.consistent(1e-9));
        assert_eq!(report.total, 8.0);
    }

    #[test]
    fn rendering() {
        let sys = two_cycle();
        let net = ResistiveNetwork::<Rational>::new(&sys).unwrap();
        let report = net.total_power(&volts(&[3, 1])).unwrap();
        let json = report.to_json(sys.nodes());
        assert_eq!(json["total"], serde_json::json!(8));
        assert_eq!(json["injected"][1], serde_json::json!({"node": "b", "current": -4}));
        let table = report.to_table(sys.nodes());
        assert!(table.contains("total power (W): 8"));
    }
}
