//! Everything the checks need about one graph, computed once.

use crate::canonical::{self, CanonicalData};
use crate::classify::{self, EssentialIrreducibility};
use crate::cycles;
use crate::error::Result;
use crate::genus;
use crate::lattice::{self, Cycle, WeightedDualGraph};
use crate::yau::{self, YauData};

#[derive(Debug, Clone)]
pub struct Analysis {
    pub z: Cycle,
    pub z_squared: i64,
    pub degree: i64,
    pub fundamental_genus: i64,
    pub minimal: bool,
    pub canonical: CanonicalData,
    /// Present when the fundamental genus is positive.
    pub yau: Option<YauData>,
    /// Present when the fundamental genus is positive.
    pub essential: Option<EssentialIrreducibility>,
}

impl Analysis {
    pub fn new(g: &WeightedDualGraph) -> Result<Self> {
        let z = cycles::fundamental_cycle_full(g)?;
        let z_squared = lattice::intersect(g, &z, &z)?;
        let fundamental_genus = genus::pa(g, &z)?;
        let canonical = canonical::canonical_cycle(g)?;
        let (yau, essential) = if fundamental_genus > 0 {
            (
                Some(yau::yau_sequence_from(g, z.clone())?),
                Some(classify::essential_irreducibility_of(g, &z)),
            )
        } else {
            (None, None)
        };
        Ok(Analysis {
            z,
            z_squared,
            degree: -z_squared,
            fundamental_genus,
            minimal: g.is_minimal(),
            canonical,
            yau,
            essential,
        })
    }

    pub fn essentially_irreducible(&self) -> bool {
        self.essential.as_ref().is_some_and(|e| e.holds)
    }

    pub fn special_vertex(&self) -> Option<usize> {
        self.essential.as_ref().filter(|e| e.holds).and_then(|e| e.special_vertex)
    }

    pub fn dm_is_zmin(&self) -> bool {
        self.yau.as_ref().is_some_and(|y| *y.last() == y.z_min)
    }

    pub fn length(&self) -> Option<usize> {
        self.yau.as_ref().map(|y| y.length)
    }
}
