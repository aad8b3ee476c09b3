//! The eight shapes `Gamma'` can take for degree-two singularities with an
//! essentially irreducible fundamental cycle and a Yau sequence of length at
//! least two, with the expected restrictions of `Z`, `D_m` and `Z_min`.
//!
//! Layout conventions used below:
//! * paths are listed starting next to `A`;
//! * for `D_n'`, `long_arm` runs from the free end of the long arm to the fork
//!   (inclusive), and the two short leaves are listed separately.

use serde::Serialize;

use super::ade::{AdeShape, AdeType};
use crate::lattice::Cycle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TemplateCase {
    /// Two chains `A_m'` and `A_n'` hanging off `A` by their ends.
    TwoChains,
    /// One chain attached to `A` at an end, `Z = 1 2 ... 2` towards `A`.
    ChainEnd,
    /// One chain attached to `A` at the vertex next to an end.
    ChainNearEnd,
    /// `D_n'` attached to `A` at position `k'` of its long arm.
    DLongArm,
    /// `D_n'` attached to `A` at a short leaf, `Z` growing along the long arm.
    DShortLeaf,
    /// `D_n'` attached to `A` at both short leaves.
    DBothLeaves,
    /// `E6` attached to `A` at the end of a long arm.
    E6End,
    /// `D5` attached at a short leaf with the smaller coefficient pattern.
    D5ShortLeafReduced,
}

impl TemplateCase {
    /// Position in the classification list, 1 to 8.
    pub fn number(&self) -> u8 {
        match self {
            TemplateCase::TwoChains => 1,
            TemplateCase::ChainEnd => 2,
            TemplateCase::ChainNearEnd => 3,
            TemplateCase::DLongArm => 4,
            TemplateCase::DShortLeaf => 5,
            TemplateCase::DBothLeaves => 6,
            TemplateCase::E6End => 7,
            TemplateCase::D5ShortLeafReduced => 8,
        }
    }
}

/// One way of laying a template over `Gamma'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Candidate {
    pub case: TemplateCase,
    pub m_prime: Option<usize>,
    pub n_prime: Option<usize>,
    pub k_prime: Option<usize>,
    /// Edges from `A` into `Gamma'`, sorted.
    pub attach: Vec<(usize, i64)>,
    /// Expected `Z` on every vertex of `Gamma'`, including `A`.
    pub z: Vec<(usize, i64)>,
    pub dm: Vec<(usize, i64)>,
    pub zmin: Vec<(usize, i64)>,
}

impl Candidate {
    fn new(case: TemplateCase, mut attach: Vec<(usize, i64)>) -> Self {
        attach.sort_unstable();
        Candidate {
            case,
            m_prime: None,
            n_prime: None,
            k_prime: None,
            attach,
            z: Vec::new(),
            dm: Vec::new(),
            zmin: Vec::new(),
        }
    }
}

pub(crate) fn to_cycle(n: usize, values: &[(usize, i64)]) -> Cycle {
    let mut c = Cycle::zero(n);
    for &(v, x) in values {
        c.0[v] = x;
    }
    c
}

/// Every template placement compatible with the branch shapes. The caller
/// filters them against the actual attachments and coefficients.
pub(crate) fn candidates(a: usize, branches: &[AdeShape]) -> Vec<Candidate> {
    match branches {
        [AdeShape::A { path: p }, AdeShape::A { path: q }] => two_chains(a, p, q),
        [AdeShape::A { path }] => {
            let rev: Vec<usize> = path.iter().rev().copied().collect();
            let mut out = Vec::new();
            for chain in [path.clone(), rev] {
                out.extend(chain_end(a, &chain));
                out.extend(chain_near_end(a, &chain));
            }
            out
        }
        [AdeShape::Forked { ty: AdeType::D(n), fork, arms }] => {
            let mut out = Vec::new();
            for long in 0..3 {
                if arms[long].len() != n - 3 {
                    continue;
                }
                let mut long_arm: Vec<usize> = arms[long].iter().rev().copied().collect();
                long_arm.push(*fork);
                let leaves: Vec<usize> = (0..3).filter(|&i| i != long).map(|i| arms[i][0]).collect();
                out.extend(d_family(a, *n, &long_arm, [leaves[0], leaves[1]]));
            }
            out
        }
        [AdeShape::Forked { ty: AdeType::E6, fork, arms }] => {
            let pendant = arms[0][0];
            let mut out = Vec::new();
            for (x, y) in [(&arms[1], &arms[2]), (&arms[2], &arms[1])] {
                let chain = [y[1], y[0], *fork, x[0], x[1]];
                let mut c = Candidate::new(TemplateCase::E6End, vec![(chain[4], 1)]);
                c.z = chain.iter().copied().zip([2, 3, 4, 3, 2]).collect();
                c.z.extend([(pendant, 2), (a, 1)]);
                c.dm = vec![(a, 1)];
                c.zmin = vec![(a, 1)];
                out.push(c);
            }
            out
        }
        _ => Vec::new(),
    }
}

fn two_chains(a: usize, p: &[usize], q: &[usize]) -> Vec<Candidate> {
    let orient = |path: &[usize]| -> Vec<Vec<usize>> {
        let rev: Vec<usize> = path.iter().rev().copied().collect();
        vec![path.to_vec(), rev]
    };
    let mut out = Vec::new();
    for p in orient(p) {
        for q in orient(q) {
            for (long, short) in [(&p, &q), (&q, &p)] {
                if long.len() < short.len() {
                    continue;
                }
                let mut c = Candidate::new(TemplateCase::TwoChains, vec![(long[0], 1), (short[0], 1)]);
                c.m_prime = Some(long.len());
                c.n_prime = Some(short.len());
                c.z = long.iter().chain(short.iter()).map(|&v| (v, 1)).collect();
                c.z.push((a, 1));
                c.dm = long[..long.len() - short.len()].iter().map(|&v| (v, 1)).collect();
                c.dm.push((a, 1));
                c.zmin = vec![(a, 1)];
                out.push(c);
            }
        }
    }
    out
}

/// `chain[0]` is next to `A`.
fn chain_end(a: usize, chain: &[usize]) -> Vec<Candidate> {
    let n = chain.len();
    if n < 2 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (mult, za) in [(1, 2), (2, 1)] {
        let mut c = Candidate::new(TemplateCase::ChainEnd, vec![(chain[0], mult)]);
        c.n_prime = Some(n);
        c.z = chain.iter().enumerate().map(|(i, &v)| (v, if i + 1 == n { 1 } else { 2 })).collect();
        c.z.push((a, za));
        c.dm = if n % 2 == 0 {
            vec![(chain[0], 2), (chain[1], 1), (a, za)]
        } else {
            vec![(chain[0], 1), (a, za)]
        };
        c.zmin = vec![(chain[0], 1), (a, za)];
        out.push(c);
    }
    out
}

/// `A` meets `p[n-2]`, the neighbour of the end `p[n-1]`.
fn chain_near_end(a: usize, p: &[usize]) -> Vec<Candidate> {
    let n = p.len();
    if n < 3 {
        return Vec::new();
    }
    let mut c = Candidate::new(TemplateCase::ChainNearEnd, vec![(p[n - 2], 1)]);
    c.n_prime = Some(n);
    c.z = p
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, if i == 0 || i == n - 1 { 1 } else { 2 }))
        .collect();
    c.z.push((a, 1));
    c.dm = if n % 2 == 0 { vec![(p[n - 2], 1), (p[n - 1], 1), (a, 1)] } else { vec![(a, 1)] };
    c.zmin = vec![(a, 1)];
    vec![c]
}

fn d_family(a: usize, n: usize, long_arm: &[usize], leaves: [usize; 2]) -> Vec<Candidate> {
    let mut out = Vec::new();
    let fork = *long_arm.last().expect("long arm ends at the fork");
    // Attached along the long arm.
    for k in (0..long_arm.len()).filter(|k| k % 2 == 0) {
        let mut c = Candidate::new(TemplateCase::DLongArm, vec![(long_arm[k], 1)]);
        c.n_prime = Some(n);
        c.k_prime = Some(k);
        c.z = long_arm.iter().enumerate().map(|(i, &v)| (v, i.min(k) as i64 + 2)).collect();
        let leaf = (k as i64 + 2) / 2;
        c.z.extend([(leaves[0], leaf), (leaves[1], leaf), (a, 1)]);
        c.dm = long_arm.iter().enumerate().skip(1).map(|(i, &v)| (v, i.min(k) as i64)).collect();
        c.dm.extend([(leaves[0], k as i64 / 2), (leaves[1], k as i64 / 2), (a, 1)]);
        c.zmin = c.dm.clone();
        out.push(c);
    }
    let n_i = n as i64;
    let grow = |shift: i64| -> Vec<(usize, i64)> {
        long_arm.iter().enumerate().map(|(i, &v)| (v, i as i64 + shift)).collect()
    };
    for (up, at) in [(leaves[0], leaves[1]), (leaves[1], leaves[0])] {
        if n % 2 == 1 {
            for (mult, za) in [(1, 2), (2, 1)] {
                let mut c = Candidate::new(TemplateCase::DShortLeaf, vec![(at, mult)]);
                c.n_prime = Some(n);
                c.z = grow(2);
                c.z.extend([(up, (n_i - 1) / 2), (at, (n_i + 1) / 2), (a, za)]);
                c.dm = grow(0);
                c.dm.extend([(up, (n_i - 3) / 2), (at, (n_i - 1) / 2), (a, za)]);
                c.zmin = c.dm.clone();
                out.push(c);
            }
        }
        if n == 5 {
            let mut c = Candidate::new(TemplateCase::D5ShortLeafReduced, vec![(at, 1)]);
            c.n_prime = Some(5);
            c.z = vec![(long_arm[0], 1), (long_arm[1], 2), (fork, 3), (up, 2), (at, 2), (a, 1)];
            c.dm = vec![(long_arm[0], 1), (long_arm[1], 1), (fork, 1), (at, 1), (a, 1)];
            c.zmin = vec![(a, 1)];
            out.push(c);
        }
    }
    if n % 2 == 0 {
        let mut c = Candidate::new(TemplateCase::DBothLeaves, vec![(leaves[0], 1), (leaves[1], 1)]);
        c.n_prime = Some(n);
        c.z = grow(2);
        c.z.extend([(leaves[0], n_i / 2), (leaves[1], n_i / 2), (a, 1)]);
        c.dm = grow(0);
        c.dm.extend([(leaves[0], (n_i - 2) / 2), (leaves[1], (n_i - 2) / 2), (a, 1)]);
        c.zmin = c.dm.clone();
        out.push(c);
    }
    out
}
