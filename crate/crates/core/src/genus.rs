//! Riemann-Roch arithmetic on cycles.

use crate::cycles;
use crate::error::{Error, Result};
use crate::lattice::{self, Cycle, WeightedDualGraph};

/// Adjunction values `k_i = K.E_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KVector(pub Vec<i64>);

impl KVector {
    pub fn of(g: &WeightedDualGraph) -> Self {
        KVector(g.canonical_degrees().to_vec())
    }

    pub fn dot(&self, d: &Cycle) -> i64 {
        self.0.iter().zip(&d.0).map(|(k, x)| k * x).sum()
    }
}

/// `d.d + d.K`, which is always even.
pub(crate) fn quadratic_part(g: &WeightedDualGraph, d: &Cycle) -> Result<i64> {
    let dd = lattice::intersect(g, d, d)?;
    let dk = g.canonical_degrees().iter().zip(&d.0).try_fold(0i64, |acc, (k, x)| {
        k.checked_mul(*x).and_then(|t| acc.checked_add(t))
    });
    let s = dk.and_then(|dk| dd.checked_add(dk)).ok_or(Error::Overflow)?;
    if s % 2 != 0 {
        return Err(Error::Invariant(format!(
            "D^2 + D.K = {s} is odd; genus or conductor data is inconsistent"
        )));
    }
    Ok(s)
}

/// `chi(D) = -(D^2 + D.K)/2`, defined for every integer cycle.
pub fn chi(g: &WeightedDualGraph, d: &Cycle) -> Result<i64> {
    Ok(-quadratic_part(g, d)? / 2)
}

/// Arithmetic genus `1 - chi(D)` of an effective cycle.
pub fn pa(g: &WeightedDualGraph, d: &Cycle) -> Result<i64> {
    g.check_dim(d)?;
    if !d.is_effective() {
        return Err(Error::NotEffective);
    }
    Ok(1 - chi(g, d)?)
}

/// `p_a` without validation, for cycles already known to be effective and small.
#[inline]
pub(crate) fn pa_raw(g: &WeightedDualGraph, d: &Cycle) -> i64 {
    let dd = lattice::self_intersection(g, d);
    let dk: i64 = g.canonical_degrees().iter().zip(&d.0).map(|(k, x)| k * x).sum();
    1 + (dd + dk) / 2
}

/// `-Z^2` for the fundamental cycle `Z`.
pub fn degree(g: &WeightedDualGraph) -> Result<i64> {
    let z = cycles::fundamental_cycle_full(g)?;
    Ok(-lattice::intersect(g, &z, &z)?)
}

/// `p_a(Z)` for the fundamental cycle `Z`.
pub fn fundamental_genus(g: &WeightedDualGraph) -> Result<i64> {
    let z = cycles::fundamental_cycle_full(g)?;
    pa(g, &z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs;
    use crate::lattice::{Edge, VertexData};
    use proptest::prelude::*;

    #[test]
    fn rational_double_points_have_chi_one() {
        for g in graphs::ade_family(10) {
            let z = cycles::fundamental_cycle_full(&g).unwrap();
            assert_eq!(chi(&g, &z).unwrap(), 1);
            assert_eq!(pa(&g, &z).unwrap(), 0);
            assert_eq!(degree(&g).unwrap(), 2);
            assert_eq!(fundamental_genus(&g).unwrap(), 0);
        }
    }

    #[test]
    fn chi_of_zero_is_zero() {
        let g = graphs::e8();
        assert_eq!(chi(&g, &Cycle::zero(8)).unwrap(), 0);
    }

    #[test]
    fn genus_two_vertex() {
        let g = graphs::single(-2, 2);
        let e = Cycle(vec![1]);
        assert_eq!(chi(&g, &e).unwrap(), -1);
        assert_eq!(pa(&g, &e).unwrap(), 2);
    }

    #[test]
    fn rational_minus_two_vertex_has_genus_zero() {
        let g = graphs::single(-2, 0);
        assert_eq!(pa(&g, &Cycle(vec![1])).unwrap(), 0);
    }

    #[test]
    fn elliptic_path_genus() {
        let g = graphs::b1_a_b2();
        assert_eq!(pa(&g, &Cycle(vec![1, 1, 1])).unwrap(), 1);
        assert_eq!(degree(&g).unwrap(), 2);
        assert_eq!(fundamental_genus(&g).unwrap(), 1);
    }

    #[test]
    fn elliptic_minus_one_curve() {
        let g = graphs::single(-1, 1);
        assert_eq!(degree(&g).unwrap(), 1);
        assert_eq!(fundamental_genus(&g).unwrap(), 1);
    }

    #[test]
    fn pa_rejects_non_effective() {
        let g = graphs::a_n(2);
        assert_eq!(pa(&g, &Cycle(vec![1, -1])).unwrap_err(), Error::NotEffective);
        assert_eq!(pa(&g, &Cycle(vec![0, 0])).unwrap_err(), Error::NotEffective);
    }

    #[test]
    fn vertex_genus_matches_adjunction() {
        for genus in 0..4 {
            for w in -6..=-1 {
                let g = graphs::single(w, genus);
                assert_eq!(pa(&g, &Cycle(vec![1])).unwrap(), genus as i64);
            }
        }
    }

    #[test]
    fn pa_is_monotone_along_computation_sequences() {
        for g in [graphs::e8(), graphs::b1_a_b2(), graphs::d_n(7)] {
            let (_, seq) = cycles::fundamental_cycle(&g, &(0..g.len()).collect::<Vec<_>>()).unwrap();
            let genera: Vec<i64> = seq.cycles.iter().map(|c| pa(&g, c).unwrap()).collect();
            assert!(genera.windows(2).all(|w| w[0] <= w[1]), "{genera:?}");
        }
    }

    fn fixture_graphs() -> Vec<WeightedDualGraph> {
        vec![
            graphs::e8(),
            graphs::b1_a_b2(),
            graphs::elliptic_minus_one_with_tail(),
            WeightedDualGraph::new(
                vec![VertexData::new(-3, 2), VertexData::rational(-2), VertexData::new(-4, 1)],
                vec![Edge::with_multiplicity(0, 1, 2), Edge::new(1, 2)],
            )
            .unwrap(),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn additivity(which in 0usize..4, a in prop::collection::vec(0i64..5, 8), b in prop::collection::vec(0i64..5, 8)) {
            let g = &fixture_graphs()[which];
            let n = g.len();
            let mut a = Cycle(a[..n].to_vec());
            let mut b = Cycle(b[..n].to_vec());
            if a.is_zero() { a.0[0] = 1; }
            if b.is_zero() { b.0[n - 1] = 1; }
            let sum = &a + &b;
            let lhs = pa(g, &sum).unwrap();
            let rhs = pa(g, &a).unwrap() + pa(g, &b).unwrap() + lattice::intersect(g, &a, &b).unwrap() - 1;
            prop_assert_eq!(lhs, rhs);
        }
    }
}
