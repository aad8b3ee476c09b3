//! The canonical cycle and the identities relating it to the Yau cycle.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::analysis::Analysis;
use crate::error::{Error, Result};
use crate::exact::{self, ExactInt, SolveFailure};
use crate::lattice::{RationalCycle, WeightedDualGraph};
use crate::report::{CheckId, Quantity, TheoremReport};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalData {
    pub z_k: RationalCycle,
    pub is_numerically_gorenstein: bool,
}

/// Solves `Z_K . E_i = -K.E_i` exactly and checks the residual.
pub fn canonical_cycle(g: &WeightedDualGraph) -> Result<CanonicalData> {
    let n = g.len();
    let rhs: Vec<i64> = g.canonical_degrees().iter().map(|k| -k).collect();
    let (num, det): (Vec<BigInt>, BigInt) = match exact::solve::<i128>(n, g.matrix(), &rhs) {
        Ok((x, d)) => (x.iter().map(ExactInt::to_big).collect(), d.to_big()),
        Err(SolveFailure::Singular) => return Err(Error::NotNegativeDefinite),
        Err(SolveFailure::Overflow) => match exact::solve::<BigInt>(n, g.matrix(), &rhs) {
            Ok(r) => r,
            Err(_) => return Err(Error::NotNegativeDefinite),
        },
    };
    let z_k = RationalCycle(num.into_iter().map(|x| BigRational::new(x, det.clone())).collect());
    for i in 0..n {
        let mut acc = BigRational::zero();
        for j in 0..n {
            acc += &z_k.0[j] * BigRational::from_integer(g.entry(i, j).into());
        }
        if acc != BigRational::from_integer(rhs[i].into()) {
            return Err(Error::Invariant(format!("canonical cycle residual is non-zero at {i}")));
        }
    }
    let is_numerically_gorenstein = z_k.is_integral();
    Ok(CanonicalData { z_k, is_numerically_gorenstein })
}

/// Reports for the four canonical-cycle identities.
pub fn check_canonical_theorems(g: &WeightedDualGraph) -> Result<Vec<TheoremReport>> {
    let a = Analysis::new(g)?;
    Ok(canonical_reports(g, &a))
}

pub(crate) fn canonical_reports(g: &WeightedDualGraph, a: &Analysis) -> Vec<TheoremReport> {
    vec![
        elliptic_yau_canonical(a),
        degree_one_canonical(a),
        degree_two_canonical(a),
        general_canonical(g, a),
    ]
}

fn yau_multiple(a: &Analysis, q: BigRational) -> Option<Quantity> {
    a.yau.as_ref().map(|y| Quantity::rational(&RationalCycle::from_cycle(&y.yau_cycle).scaled(&q)))
}

fn computed(a: &Analysis) -> Option<Quantity> {
    Some(Quantity::rational(&a.canonical.z_k))
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

pub(crate) fn elliptic_yau_canonical(a: &Analysis) -> TheoremReport {
    TheoremReport::new(
        CheckId::EllipticYauCanonical,
        vec![
            ("fundamental genus 1", a.fundamental_genus == 1),
            ("numerically Gorenstein", a.canonical.is_numerically_gorenstein),
            ("minimal resolution", a.minimal),
        ],
        yau_multiple(a, int(1)),
        computed(a),
    )
}

pub(crate) fn degree_one_canonical(a: &Analysis) -> TheoremReport {
    let p = a.fundamental_genus;
    TheoremReport::new(
        CheckId::DegreeOneCanonical,
        vec![
            ("positive fundamental genus", p > 0),
            ("degree 1", a.degree == 1),
            ("minimal resolution", a.minimal),
            ("essentially irreducible", a.essentially_irreducible()),
        ],
        yau_multiple(a, int(2 * p - 1)),
        computed(a),
    )
}

pub(crate) fn degree_two_canonical(a: &Analysis) -> TheoremReport {
    let p = a.fundamental_genus;
    let r = TheoremReport::new(
        CheckId::DegreeTwoCanonical,
        vec![
            ("positive fundamental genus", p > 0),
            ("degree 2", a.degree == 2),
            ("minimal resolution", a.minimal),
            ("essentially irreducible", a.essentially_irreducible()),
            ("D_m = Z_min", a.dm_is_zmin()),
        ],
        yau_multiple(a, int(p)),
        computed(a),
    );
    r.with_info(format!("numerically Gorenstein: {}", a.canonical.is_numerically_gorenstein))
}

pub(crate) fn general_canonical(g: &WeightedDualGraph, a: &Analysis) -> TheoremReport {
    let p = a.fundamental_genus;
    let ka_plus_z2 = a.special_vertex().map(|s| g.canonical_degrees()[s] + a.z_squared);
    let factor = BigRational::new((2 - 2 * p).into(), a.z_squared.into()) + int(1);
    TheoremReport::new(
        CheckId::GeneralCanonical,
        vec![
            ("positive fundamental genus", p > 0),
            ("minimal resolution", a.minimal),
            ("essentially irreducible", a.essentially_irreducible()),
            ("K.A + Z^2 >= 0", ka_plus_z2.is_some_and(|v| v >= 0)),
            ("D_m = Z_min", a.dm_is_zmin()),
        ],
        yau_multiple(a, factor),
        computed(a),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs;
    use crate::lattice::Cycle;
    use crate::report::Verdict;

    #[test]
    fn ade_canonical_cycle_vanishes() {
        for g in graphs::ade_family(8) {
            let c = canonical_cycle(&g).unwrap();
            assert!(c.z_k.0.iter().all(Zero::is_zero));
            assert!(c.is_numerically_gorenstein);
        }
    }

    #[test]
    fn elliptic_minus_two_vertex() {
        let c = canonical_cycle(&graphs::single(-2, 1)).unwrap();
        assert_eq!(c.z_k.to_cycle(), Some(Cycle(vec![1])));
    }

    #[test]
    fn elliptic_path_canonical_cycle() {
        let c = canonical_cycle(&graphs::b1_a_b2()).unwrap();
        assert_eq!(c.z_k.to_cycle(), Some(Cycle(vec![1, 2, 1])));
    }

    #[test]
    fn non_gorenstein_example() {
        // A single rational (-3)-curve: Z_K = E/3.
        let c = canonical_cycle(&graphs::single(-3, 0)).unwrap();
        assert!(!c.is_numerically_gorenstein);
        assert_eq!(c.z_k.to_strings(), vec!["1/3".to_string()]);
    }

    fn verdict(reports: &[TheoremReport], id: CheckId) -> Verdict {
        reports.iter().find(|r| r.check == id).unwrap().verdict
    }

    #[test]
    fn degree_one_vertex_passes() {
        let r = check_canonical_theorems(&graphs::single(-1, 1)).unwrap();
        assert_eq!(verdict(&r, CheckId::DegreeOneCanonical), Verdict::Pass);
        assert_eq!(verdict(&r, CheckId::DegreeTwoCanonical), Verdict::NotApplicable);
    }

    #[test]
    fn elliptic_path_passes_degree_two() {
        let r = check_canonical_theorems(&graphs::b1_a_b2()).unwrap();
        assert_eq!(verdict(&r, CheckId::DegreeTwoCanonical), Verdict::Pass);
        assert_eq!(verdict(&r, CheckId::EllipticYauCanonical), Verdict::Pass);
    }

    #[test]
    fn rational_graphs_are_not_applicable() {
        for g in [graphs::e8(), graphs::d_n(5)] {
            for r in check_canonical_theorems(&g).unwrap() {
                assert_eq!(r.verdict, Verdict::NotApplicable, "{:?}", r.check);
            }
        }
    }
}
