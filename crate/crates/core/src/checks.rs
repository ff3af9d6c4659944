//! Executable versions of the relations between topology matrices.
//!
//! Every check returns a [`CheckReport`]; a failing report carries the first
//! entry at which the two sides of the identity disagree.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::builders::{build_all, IncidenceMatrices, TopologyMatrices};
use crate::graph::{NetworkSystem, Tier, TierError};
use crate::linalg::Matrix;
use crate::scalar::{Backend, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Where and how an identity failed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    /// Which side-by-side comparison failed, e.g. `Dout = Iout*W*Iout^T`.
    pub relation: String,
    pub row: usize,
    /// `None` for row-indexed quantities such as row sums.
    pub col: Option<usize>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub backend: Backend,
    /// Absolute tolerance; only meaningful on the float backend.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckReport {
    fn new<S: Scalar>(name: &str, witness: Option<Witness>, eps: f64) -> Self {
        Self {
            name: name.to_string(),
            verdict: if witness.is_some() {
                Verdict::Fail
            } else {
                Verdict::Pass
            },
            witness,
            backend: S::BACKEND,
            tolerance: (!S::is_exact()).then_some(eps),
            detail: None,
        }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// One line: `PASS name [backend]`, followed by the witness on failure and
/// the detail if any.
impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match self.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        };
        write!(f, "{verdict} {} [{}", self.name, self.backend)?;
        if let Some(tol) = self.tolerance {
            write!(f, ", tol {tol:e}")?;
        }
        f.write_str("]")?;
        if let Some(w) = &self.witness {
            match w.col {
                Some(col) => write!(f, " {} at ({}, {})", w.relation, w.row, col)?,
                None => write!(f, " {} at row {}", w.relation, w.row)?,
            }
            write!(f, ": lhs={} rhs={}", w.lhs, w.rhs)?;
        }
        if let Some(d) = &self.detail {
            write!(f, " ({d})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("check `{0}` needs incidence matrices, which are absent for systems with self-loops")]
    IncidenceAbsent(&'static str),
    #[error(transparent)]
    Tier(#[from] TierError),
}

pub const ROW_SUMS: &str = "row_sums";
pub const COL_SUMS_IFF_BALANCED: &str = "col_sums_iff_balanced";
pub const DEG_INCIDENCE: &str = "deg_incidence";
pub const ADJ_INCIDENCE: &str = "adj_incidence";
pub const LAP_INCIDENCE: &str = "lap_incidence";
pub const SYMMETRY: &str = "symmetry";

fn text<S: Scalar>(v: &S) -> String {
    v.to_decimal().0
}

fn compare<S: Scalar>(relation: &str, lhs: &Matrix<S>, rhs: &Matrix<S>, eps: f64) -> Option<Witness> {
    let (row, col) = lhs.first_difference(rhs, eps)?;
    let entry = |m: &Matrix<S>| match m.get(row, col) {
        Some(v) => text(v),
        None => format!("{}x{} matrix", m.rows(), m.cols()),
    };
    Some(Witness {
        relation: relation.to_string(),
        row,
        col: Some(col),
        lhs: entry(lhs),
        rhs: entry(rhs),
    })
}

fn product<S: Scalar>(factors: &[&Matrix<S>]) -> Matrix<S> {
    let (first, rest) = factors.split_first().expect("at least one factor");
    rest.iter().fold((*first).clone(), |acc, m| {
        acc.mul(m).expect("conformable topology matrices")
    })
}

fn incidence<'a, S>(t: &'a TopologyMatrices<S>, name: &'static str) -> Result<&'a IncidenceMatrices<S>, CheckError> {
    t.incidence.as_ref().ok_or(CheckError::IncidenceAbsent(name))
}

/// Every row of L sums to zero.
pub fn check_row_sums<S: Scalar>(t: &TopologyMatrices<S>, eps: f64) -> CheckReport {
    let witness = (0..t.l.rows()).find_map(|i| {
        let sum = t.l.row_sum(i);
        (!sum.near(&S::zero(), eps)).then(|| Witness {
            relation: "sum_j L(i,j) = 0".into(),
            row: i,
            col: None,
            lhs: text(&sum),
            rhs: "0".into(),
        })
    });
    CheckReport::new::<S>(ROW_SUMS, witness, eps)
}

/// `Din = Dout` holds exactly when `Jᵀ L = 0`. The check passes when both
/// sides agree, and the detail records which sides held.
pub fn check_col_sums_iff_balanced<S: Scalar>(t: &TopologyMatrices<S>, eps: f64) -> CheckReport {
    let m = t.m();
    let balance_gap = compare("Din = Dout", &t.din, &t.dout, eps);
    let col_sums = Matrix::ones(m).transpose().mul(&t.l).expect("square Laplacian");
    let col_gap = compare("J^T L = 0", &col_sums, &Matrix::zeros(m, m), eps);
    let (balanced, zero_cols) = (balance_gap.is_none(), col_gap.is_none());
    let witness = match (balanced, zero_cols) {
        (true, false) => col_gap,
        (false, true) => balance_gap,
        _ => None,
    };
    CheckReport::new::<S>(COL_SUMS_IFF_BALANCED, witness, eps)
        .with_detail(format!("Din = Dout: {balanced}; J^T L = 0: {zero_cols}"))
}

/// `Dout = Iout W Ioutᵀ` and `Din = Iin W Iinᵀ`.
pub fn check_deg_incidence<S: Scalar>(t: &TopologyMatrices<S>, eps: f64) -> Result<CheckReport, CheckError> {
    let inc = incidence(t, DEG_INCIDENCE)?;
    let out = product(&[&inc.iout, &t.w, &inc.iout.transpose()]);
    let inn = product(&[&inc.iin, &t.w, &inc.iin.transpose()]);
    let witness =
        compare("Dout = Iout*W*Iout^T", &t.dout, &out, eps).or_else(|| compare("Din = Iin*W*Iin^T", &t.din, &inn, eps));
    Ok(CheckReport::new::<S>(DEG_INCIDENCE, witness, eps))
}

/// `A = Iout W Iinᵀ`.
pub fn check_adj_incidence<S: Scalar>(t: &TopologyMatrices<S>, eps: f64) -> Result<CheckReport, CheckError> {
    let inc = incidence(t, ADJ_INCIDENCE)?;
    let rhs = product(&[&inc.iout, &t.w, &inc.iin.transpose()]);
    let witness = compare("A = Iout*W*Iin^T", &t.a, &rhs, eps);
    Ok(CheckReport::new::<S>(ADJ_INCIDENCE, witness, eps))
}

/// `L = Iout W Kᵀ`, and the same with `K` expanded as `Iout - Iin`.
pub fn check_lap_incidence<S: Scalar>(t: &TopologyMatrices<S>, eps: f64) -> Result<CheckReport, CheckError> {
    let inc = incidence(t, LAP_INCIDENCE)?;
    let via_k = product(&[&inc.iout, &t.w, &inc.k.transpose()]);
    let expanded = inc.iout.sub(&inc.iin).expect("same dimensions").transpose();
    let via_parts = product(&[&inc.iout, &t.w, &expanded]);
    let witness = compare("L = Iout*W*K^T", &t.l, &via_k, eps)
        .or_else(|| compare("L = Iout*W*(Iout-Iin)^T", &t.l, &via_parts, eps));
    Ok(CheckReport::new::<S>(LAP_INCIDENCE, witness, eps))
}

/// A and L are symmetric. Only defined on symmetric-weighted systems.
pub fn check_symmetry<S: Scalar>(
    t: &TopologyMatrices<S>,
    sys: &NetworkSystem,
    eps: f64,
) -> Result<CheckReport, CheckError> {
    sys.require_tier(Tier::SymmetricWeighted)?;
    let witness =
        compare("A = A^T", &t.a, &t.a.transpose(), eps).or_else(|| compare("L = L^T", &t.l, &t.l.transpose(), eps));
    Ok(CheckReport::new::<S>(SYMMETRY, witness, eps))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Skipped {
    pub name: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub reports: Vec<CheckReport>,
    pub skipped: Vec<Skipped>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.reports.iter().all(CheckReport::passed)
    }
}

/// Runs every check that applies to the system's tiers.
pub fn run_suite<S: Scalar>(sys: &NetworkSystem, eps: f64) -> Result<SuiteReport, TierError> {
    let t = build_all::<S>(sys)?;
    Ok(run_suite_on(&t, sys, eps))
}

type IncidenceCheck<S> = fn(&TopologyMatrices<S>, f64) -> Result<CheckReport, CheckError>;

/// Same as [`run_suite`] on matrices that are already built.
pub fn run_suite_on<S: Scalar>(t: &TopologyMatrices<S>, sys: &NetworkSystem, eps: f64) -> SuiteReport {
    let mut reports = vec![check_row_sums(t, eps), check_col_sums_iff_balanced(t, eps)];
    let mut skipped = Vec::new();
    let incidence_checks: [(&str, IncidenceCheck<S>); 3] = [
        (DEG_INCIDENCE, check_deg_incidence),
        (ADJ_INCIDENCE, check_adj_incidence),
        (LAP_INCIDENCE, check_lap_incidence),
    ];
    for (name, check) in incidence_checks {
        match check(t, eps) {
            Ok(r) => reports.push(r),
            Err(e) => skipped.push(Skipped {
                name: name.into(),
                reason: e.to_string(),
            }),
        }
    }
    match check_symmetry(t, sys, eps) {
        Ok(r) => reports.push(r),
        Err(e) => skipped.push(Skipped {
            name: SYMMETRY.into(),
            reason: e.to_string(),
        }),
    }
    SuiteReport { reports, skipped }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational_from_i64 as r, Rational, DEFAULT_EPS};

    fn g3() -> NetworkSystem {
        NetworkSystem::from_triples(
            &["a", "b", "c"],
            &[("a", "b", r(2)), ("b", "c", r(3)), ("c", "a", r(4))],
        )
        .unwrap()
    }

    fn p3() -> NetworkSystem {
        NetworkSystem::from_triples(
            &["a", "c", "b"],
            &[("a", "b", r(1)), ("b", "a", r(1)), ("b", "c", r(1)), ("c", "b", r(1))],
        )
        .unwrap()
    }

    fn single() -> NetworkSystem {
        NetworkSystem::from_triples(&["a", "b"], &[("a", "b", r(7))]).unwrap()
    }

    fn built(sys: &NetworkSystem) -> TopologyMatrices<Rational> {
        build_all(sys).unwrap()
    }

    fn bump(m: &Matrix<Rational>, i: usize, j: usize) -> Matrix<Rational> {
        m.with_entry(i, j, &m[(i, j)] + r(1))
    }

    #[test]
    fn row_sums() {
        assert!(check_row_sums(&built(&g3()), 0.0).passed());
        let loop_sys = NetworkSystem::from_triples(&["a"], &[("a", "a", r(5))]).unwrap();
        assert!(check_row_sums(&built(&loop_sys), 0.0).passed());

        let mut t = built(&g3());
        t.l = bump(&t.l, 0, 0);
        let rep = check_row_sums(&t, 0.0);
        assert_eq!(rep.verdict, Verdict::Fail);
        let w = rep.witness.unwrap();
        assert_eq!((w.row, w.col, w.lhs.as_str()), (0, None, "1"));
    }

    #[test]
    fn balance_biconditional() {
        let rep = check_col_sums_iff_balanced(&built(&g3()), 0.0);
        assert!(rep.passed());
        assert_eq!(rep.detail.as_deref(), Some("Din = Dout: false; J^T L = 0: false"));

        let cyc = NetworkSystem::from_triples(&["a", "b"], &[("a", "b", r(2)), ("b", "a", r(2))]).unwrap();
        let rep = check_col_sums_iff_balanced(&built(&cyc), 0.0);
        assert!(rep.passed());
        assert_eq!(rep.detail.as_deref(), Some("Din = Dout: true; J^T L = 0: true"));

        // Break one side only.
        let mut t = built(&cyc);
        t.din = bump(&t.din, 1, 1);
        let rep = check_col_sums_iff_balanced(&t, 0.0);
        assert!(!rep.passed());
        assert_eq!(rep.witness.unwrap().row, 1);
    }

    #[test]
    fn degree_incidence() {
        assert!(check_deg_incidence(&built(&g3()), 0.0).unwrap().passed());
        assert!(check_deg_incidence(&built(&single()), 0.0).unwrap().passed());
        let mut t = built(&g3());
        t.w = bump(&t.w, 0, 0);
        let rep = check_deg_incidence(&t, 0.0).unwrap();
        let w = rep.witness.unwrap();
        assert_eq!((w.row, w.col), (0, Some(0)));
        assert_eq!((w.lhs.as_str(), w.rhs.as_str()), ("2", "3"));
    }

    #[test]
    fn adjacency_incidence() {
        assert!(check_adj_incidence(&built(&g3()), 0.0).unwrap().passed());
        assert!(check_adj_incidence(&built(&single()), 0.0).unwrap().passed());
        // Drop edge 0 = (a, b) from Iin: its tail marker at (1, 0) disappears.
        let mut t = built(&g3());
        let inc = t.incidence.as_mut().unwrap();
        inc.iin = inc.iin.with_entry(1, 0, r(0));
        let w = check_adj_incidence(&t, 0.0).unwrap().witness.unwrap();
        assert_eq!((w.row, w.col), (0, Some(1)));
        assert_eq!((w.lhs.as_str(), w.rhs.as_str()), ("2", "0"));
    }

    #[test]
    fn laplacian_incidence() {
        for sys in [g3(), single(), p3()] {
            assert!(check_lap_incidence(&built(&sys), 0.0).unwrap().passed());
        }
        let loop_sys = NetworkSystem::from_triples(&["a", "b"], &[("a", "a", r(1)), ("a", "b", r(1))]).unwrap();
        let err = check_lap_incidence(&built(&loop_sys), 0.0).unwrap_err();
        assert_eq!(err, CheckError::IncidenceAbsent(LAP_INCIDENCE));
    }

    #[test]
    fn symmetry() {
        assert!(check_symmetry(&built(&p3()), &p3(), 0.0).unwrap().passed());
        let cyc = NetworkSystem::from_triples(&["a", "b"], &[("a", "b", r(2)), ("b", "a", r(2))]).unwrap();
        assert!(check_symmetry(&built(&cyc), &cyc, 0.0).unwrap().passed());
        let lopsided = NetworkSystem::from_triples(&["a", "b"], &[("a", "b", r(2)), ("b", "a", r(1))]).unwrap();
        assert!(matches!(
            check_symmetry(&built(&lopsided), &lopsided, 0.0),
            Err(CheckError::Tier(_))
        ));
    }

    #[test]
    fn suites() {
        let suite = run_suite::<Rational>(&g3(), DEFAULT_EPS).unwrap();
        assert_eq!(suite.reports.len(), 5);
        assert!(suite.all_passed());
        assert_eq!(suite.skipped.len(), 1);
        assert_eq!(suite.skipped[0].name, SYMMETRY);

        let suite = run_suite::<Rational>(&p3(), DEFAULT_EPS).unwrap();
        assert_eq!(suite.reports.len(), 6);
        assert!(suite.all_passed());

        let loop_sys = NetworkSystem::from_triples(&["a", "b"], &[("a", "a", r(1)), ("a", "b", r(1))]).unwrap();
        let suite = run_suite::<f64>(&loop_sys, DEFAULT_EPS).unwrap();
        let names: Vec<_> = suite.skipped.iter().map(|s| s.name.as_str()).collect();
        assert_eq!(names, vec![DEG_INCIDENCE, ADJ_INCIDENCE, LAP_INCIDENCE, SYMMETRY]);
        assert!(suite.all_passed());
    }

    #[test]
    fn report_rendering() {
        let rep = check_row_sums(&built(&g3()), 0.0);
        assert_eq!(rep.to_string(), "PASS row_sums [rational]");
        assert_eq!(
            rep.to_json(),
            serde_json::json!({"name": "row_sums", "verdict": "pass", "backend": "rational"})
        );

        let t = build_all::<f64>(&g3()).unwrap();
        let mut broken = t.clone();
        broken.l = broken.l.with_entry(2, 0, 0.0);
        let rep = check_row_sums(&broken, 1e-9);
        assert_eq!(
            rep.to_string(),
            "FAIL row_sums [float, tol 1e-9] sum_j L(i,j) = 0 at row 2: lhs=4 rhs=0"
        );
    }
}
