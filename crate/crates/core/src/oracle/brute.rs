//! Exhaustive searches over subcycles. Slow, simple, and independent of the
//! algorithms they check.

use crate::cycles;
use crate::error::Result;
use crate::genus;
use crate::oracle::pamax;
use crate::lattice::{Cycle, WeightedDualGraph};

pub use crate::cycles::anti_nef_minimum;

/// Componentwise minimum of the full-support cycles `1 <= C <= upper` that
/// are anti-nef on the whole graph. The fundamental cycle lies below every
/// such cycle, so whenever `upper` is anti-nef the result is exactly the
/// fundamental cycle.
pub fn anti_nef_minimum_in(g: &WeightedDualGraph, upper: &Cycle) -> Option<Cycle> {
    let n = g.len();
    if upper.0.iter().any(|&u| u < 1) {
        return None;
    }
    let ones = Cycle(vec![1; n]);
    let mut best: Option<Cycle> = None;
    let mut c = ones.clone();
    loop {
        if (0..n).all(|i| g.degree_on(&c, i) <= 0) {
            best = Some(match best {
                None => c.clone(),
                Some(b) => b.componentwise_min(&c),
            });
        }
        let mut i = 0;
        while i < n && c.0[i] == upper.0[i] {
            c.0[i] = 1;
            i += 1;
        }
        if i == n {
            return best;
        }
        c.0[i] += 1;
    }
}

/// The elements of `set` with nothing in `set` strictly below them.
fn minimal_elements(set: &[Cycle]) -> Vec<Cycle> {
    set.iter().filter(|c| !set.iter().any(|o| Cycle::lt(o, c))).cloned().collect()
}

fn maximal_elements(set: &[Cycle]) -> Vec<Cycle> {
    set.iter().filter(|c| !set.iter().any(|o| Cycle::lt(c, o))).cloned().collect()
}

/// The unique minimal `0 < C <= d` with `p_a(C) = p_a(d)`. `None` if the
/// minimal elements are not unique.
pub fn minimal_model_oracle(g: &WeightedDualGraph, d: &Cycle) -> Option<Cycle> {
    let target = genus::pa_raw(g, d);
    let hits: Vec<Cycle> = cycles::subcycles(d)
        .filter(|c| !c.is_zero() && genus::pa_raw(g, c) == target)
        .collect();
    match minimal_elements(&hits).as_slice() {
        [only] => Some(only.clone()),
        _ => None,
    }
}

/// The unique maximal `0 < D < d` with `d.E = 0` on every component of `D`
/// and `p_a(D) = p_a(d)`. `None` if there is no such cycle or the maximal
/// ones are not unique.
pub fn tyurina_oracle(g: &WeightedDualGraph, d: &Cycle) -> Option<Cycle> {
    let target = genus::pa_raw(g, d);
    let degrees = g.degrees(d);
    let hits: Vec<Cycle> = cycles::subcycles(d)
        .filter(|c| {
            !c.is_zero()
                && c != d
                && c.support().iter().all(|&i| degrees[i] == 0)
                && genus::pa_raw(g, c) == target
        })
        .collect();
    match maximal_elements(&hits).as_slice() {
        [only] => Some(only.clone()),
        _ => None,
    }
}

/// [`minimal_model_oracle`] over the level set `p_a >= p_a(d)` below `d`
/// instead of every subcycle; the same answer for a fraction of the work.
pub fn minimal_model_level_set(g: &WeightedDualGraph, d: &Cycle) -> Result<Option<Cycle>> {
    let target = genus::pa_raw(g, d);
    let hits: Vec<Cycle> =
        pamax::level_set(g, d, target)?.into_iter().filter(|c| genus::pa_raw(g, c) == target).collect();
    Ok(match minimal_elements(&hits).as_slice() {
        [only] => Some(only.clone()),
        _ => None,
    })
}

/// [`tyurina_oracle`] over the level set `p_a >= p_a(d)` below `d`.
pub fn tyurina_level_set(g: &WeightedDualGraph, d: &Cycle) -> Result<Option<Cycle>> {
    let target = genus::pa_raw(g, d);
    let degrees = g.degrees(d);
    let hits: Vec<Cycle> = pamax::level_set(g, d, target)?
        .into_iter()
        .filter(|c| c != d && c.support().iter().all(|&i| degrees[i] == 0) && genus::pa_raw(g, c) == target)
        .collect();
    Ok(match maximal_elements(&hits).as_slice() {
        [only] => Some(only.clone()),
        _ => None,
    })
}

/// Whether `d` is chain-connected, straight from the definition: every
/// proper `0 < C < d` meets some component of `d - C` positively.
pub fn chain_connected_oracle(g: &WeightedDualGraph, d: &Cycle) -> bool {
    cycles::subcycles(d).filter(|c| !c.is_zero() && c != d).all(|c| {
        let rest = d - &c;
        rest.support().iter().any(|&i| g.degree_on(&c, i) > 0)
    })
}
