//! Tyurina components and the Yau sequence.

use serde::Serialize;

use crate::cycles;
use crate::error::{Error, Result};
use crate::genus;
use crate::lattice::{self, Cycle, WeightedDualGraph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct YauData {
    /// `D_1 = Z > D_2 > ... > D_m`.
    pub sequence: Vec<Cycle>,
    pub yau_cycle: Cycle,
    pub length: usize,
    pub z_min: Cycle,
    pub fundamental_genus: i64,
}

impl YauData {
    pub fn last(&self) -> &Cycle {
        self.sequence.last().expect("sequence is never empty")
    }

    /// `(p_a(Y), m(p_f - 1) + 1)`; the two agree.
    pub fn genus_identity(&self, g: &WeightedDualGraph) -> Result<(i64, i64)> {
        let lhs = genus::pa(g, &self.yau_cycle)?;
        let rhs = self.length as i64 * (self.fundamental_genus - 1) + 1;
        Ok((lhs, rhs))
    }
}

/// The largest `D < d` on which `d` is numerically trivial and which keeps the
/// arithmetic genus of `d`: the fundamental cycle of the connected component
/// of `{E <= d : E.d = 0}` that contains `z_min`.
///
/// Returns [`Error::SequenceTerminates`] when `d.z_min < 0`.
pub fn tyurina_component(g: &WeightedDualGraph, d: &Cycle, z_min: &Cycle) -> Result<Cycle> {
    g.check_dim(d)?;
    g.check_dim(z_min)?;
    if !d.is_effective() || !z_min.is_effective() {
        return Err(Error::NotEffective);
    }
    if !z_min.le(d) {
        return Err(Error::Domain(format!("{z_min} is not a subcycle of {d}")));
    }
    let degrees = g.degrees(d);
    let zs = z_min.support();
    if zs.iter().any(|&i| degrees[i] < 0) {
        return Err(Error::SequenceTerminates);
    }
    if zs.iter().any(|&i| degrees[i] > 0) {
        return Err(Error::Domain(format!("{d} meets its minimal model positively")));
    }
    let zero_locus: Vec<bool> = (0..g.len()).map(|i| d.0[i] > 0 && degrees[i] == 0).collect();
    let component = g
        .components_on(&zero_locus)
        .into_iter()
        .find(|c| c.contains(&zs[0]))
        .expect("z_min lies in the zero locus");
    if zs.iter().any(|i| !component.contains(i)) {
        return Err(Error::Domain("minimal model has disconnected support".into()));
    }
    let mask: Vec<bool> = (0..g.len()).map(|i| component.contains(&i)).collect();
    let t = cycles::fundamental_cycle_on(g, &mask);
    if !t.lt(d) {
        return Err(Error::Invariant(format!("Tyurina component {t} is not below {d}")));
    }
    let (pt, pd) = (genus::pa(g, &t)?, genus::pa(g, d)?);
    if pt != pd {
        return Err(Error::Invariant(format!(
            "Tyurina component {t} has genus {pt}, expected {pd}"
        )));
    }
    Ok(t)
}

/// Iterated Tyurina components starting from the fundamental cycle.
pub fn yau_sequence(g: &WeightedDualGraph) -> Result<YauData> {
    let z = cycles::fundamental_cycle_full(g)?;
    yau_sequence_from(g, z)
}

pub(crate) fn yau_sequence_from(g: &WeightedDualGraph, z: Cycle) -> Result<YauData> {
    let p_f = genus::pa(g, &z)?;
    if p_f <= 0 {
        return Err(Error::Domain(format!(
            "the Yau sequence needs positive fundamental genus, got {p_f}"
        )));
    }
    let z_min = cycles::minimal_model(g, &z)?;
    let cap = z.total() as usize;
    let mut sequence = vec![z];
    loop {
        let d = sequence.last().expect("non-empty");
        match tyurina_component(g, d, &z_min) {
            Err(Error::SequenceTerminates) => break,
            Err(e) => return Err(e),
            Ok(next) => {
                let model = cycles::minimal_model(g, &next)?;
                if model != z_min {
                    return Err(Error::Invariant(format!(
                        "minimal model of {next} is {model}, not {z_min}"
                    )));
                }
                sequence.push(next);
            }
        }
        if sequence.len() > cap {
            return Err(Error::Invariant("Yau sequence longer than the coefficient sum of Z".into()));
        }
    }
    let yau_cycle = sequence.iter().fold(Cycle::zero(g.len()), |acc, d| &acc + d);
    debug_assert!(lattice::intersect(g, sequence.last().unwrap(), &z_min).unwrap() < 0);
    Ok(YauData { length: sequence.len(), sequence, yau_cycle, z_min, fundamental_genus: p_f })
}
