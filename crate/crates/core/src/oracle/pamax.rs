//! Exact maximum of `p_a` over all effective cycles.
//!
//! Write `f(x) = x^T M x + k^T x`, so `p_a(x) = 1 + f(x)/2`. With `Q = -M`
//! positive definite, `f(x) = f(c) - (x - c)^T Q (x - c)` for the real centre
//! `c = Q^{-1} k / 2`, and every cycle beating the current best lies in an
//! ellipsoid around `c`. The ellipsoid is enumerated coordinate by coordinate
//! from an `L D L^T` factorisation (Fincke-Pohst) inside a box `[0, B]^n`;
//! afterwards the ellipsoid's bounding box certifies that nothing better can
//! lie outside `[0, B]^n`, or `B` is doubled and the search repeated.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, ToPrimitive, Zero};
use serde::Serialize;

use crate::cycles;
use crate::error::{Error, Result};
use crate::genus;
use crate::lattice::{Cycle, WeightedDualGraph};

/// Default cap on the per-coordinate box bound.
pub const DEFAULT_BOX_CAP: i64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PaMaxResult {
    pub maximizer: Cycle,
    /// `p_a(V,o)`.
    pub value: i64,
    /// Bound `B` of the final search box `[0, B]^n`.
    pub box_bound: i64,
    /// Every cycle at least as good as the maximizer lies inside the box.
    pub boundary_clear: bool,
}

trait Scalar: Clone + Ord + Zero + One + CheckedAdd + CheckedSub + CheckedMul + CheckedDiv {
    fn int(v: i64) -> Self;
    fn approx(&self) -> f64;
    fn floor_i64(&self) -> Option<i64>;
}

impl Scalar for Ratio<i128> {
    fn int(v: i64) -> Self {
        Ratio::from_integer(v as i128)
    }
    fn approx(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
    fn floor_i64(&self) -> Option<i64> {
        self.floor().to_integer().to_i64()
    }
}

impl Scalar for BigRational {
    fn int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn approx(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
    fn floor_i64(&self) -> Option<i64> {
        self.floor().to_integer().to_i64()
    }
}

/// Intermediate overflow in the fixed-width scalar type.
struct Overflow;

fn add<T: Scalar>(a: &T, b: &T) -> Result<T, Overflow> {
    a.checked_add(b).ok_or(Overflow)
}
fn sub<T: Scalar>(a: &T, b: &T) -> Result<T, Overflow> {
    a.checked_sub(b).ok_or(Overflow)
}
fn mul<T: Scalar>(a: &T, b: &T) -> Result<T, Overflow> {
    a.checked_mul(b).ok_or(Overflow)
}
fn div<T: Scalar>(a: &T, b: &T) -> Result<T, Overflow> {
    a.checked_div(b).ok_or(Overflow)
}

/// `Q = U^T D U` with `U` unit upper triangular, plus the centre and the
/// diagonal of `Q^{-1}`.
struct Factor<T> {
    n: usize,
    d: Vec<T>,
    u: Vec<T>,
    c: Vec<T>,
    f_c: T,
    q_inv_diag: Vec<T>,
}

impl<T: Scalar> Factor<T> {
    fn new(g: &WeightedDualGraph) -> Result<Self, Overflow> {
        let n = g.len();
        let q = |i: usize, j: usize| T::int(-g.entry(i, j));
        let mut d: Vec<T> = Vec::with_capacity(n);
        let mut u: Vec<T> = vec![T::zero(); n * n];
        for i in 0..n {
            u[i * n + i] = T::one();
            let mut di = q(i, i);
            for l in 0..i {
                di = sub(&di, &mul(&d[l], &mul(&u[l * n + i], &u[l * n + i])?)?)?;
            }
            for j in i + 1..n {
                let mut s = q(i, j);
                for l in 0..i {
                    s = sub(&s, &mul(&d[l], &mul(&u[l * n + i], &u[l * n + j])?)?)?;
                }
                u[i * n + j] = div(&s, &di)?;
            }
            d.push(di);
        }
        let mut f = Factor { n, d, u, c: Vec::new(), f_c: T::zero(), q_inv_diag: Vec::new() };
        let half = div(&T::one(), &T::int(2))?;
        let rhs: Vec<T> = g
            .canonical_degrees()
            .iter()
            .map(|&k| mul(&T::int(k), &half))
            .collect::<Result<_, _>>()?;
        f.c = f.solve(&rhs)?;
        let mut kc = T::zero();
        for (k, c) in g.canonical_degrees().iter().zip(&f.c) {
            kc = add(&kc, &mul(&T::int(*k), c)?)?;
        }
        f.f_c = mul(&kc, &half)?;
        for i in 0..n {
            let mut e = vec![T::zero(); n];
            e[i] = T::one();
            let col = f.solve(&e)?;
            f.q_inv_diag.push(col[i].clone());
        }
        Ok(f)
    }

    /// Solves `Q x = b`.
    fn solve(&self, b: &[T]) -> Result<Vec<T>, Overflow> {
        let n = self.n;
        // U^T y = b
        let mut y: Vec<T> = Vec::with_capacity(n);
        for i in 0..n {
            let mut s = b[i].clone();
            for l in 0..i {
                s = sub(&s, &mul(&self.u[l * n + i], &y[l])?)?;
            }
            y.push(s);
        }
        // D z = y, U x = z
        let mut x = vec![T::zero(); n];
        for i in (0..n).rev() {
            let mut s = div(&y[i], &self.d[i])?;
            for j in i + 1..n {
                s = sub(&s, &mul(&self.u[i * n + j], &x[j])?)?;
            }
            x[i] = s;
        }
        Ok(x)
    }
}

struct Search<'a, T> {
    g: &'a WeightedDualGraph,
    f: &'a Factor<T>,
    upper: Vec<i64>,
    x: Vec<i64>,
    best_f: i64,
    best: Vec<i64>,
    radius: T,
    /// When set, every point of the ellipsoid is collected and the radius
    /// stays fixed.
    collected: Option<Vec<Cycle>>,
}

impl<'a, T: Scalar> Search<'a, T> {
    fn objective(&self, x: &[i64]) -> i64 {
        let c = Cycle(x.to_vec());
        2 * (genus::pa_raw(self.g, &c) - 1)
    }

    fn set_radius(&mut self) -> Result<(), Overflow> {
        self.radius = sub(&self.f.f_c, &T::int(self.best_f + 2))?;
        Ok(())
    }

    /// Level `i` with `partial = sum over levels above of d_l (x_l - t_l)^2`.
    fn descend(&mut self, i: usize, partial: &T) -> Result<(), Overflow> {
        let n = self.f.n;
        let mut t = self.f.c[i].clone();
        for j in i + 1..n {
            let yj = sub(&T::int(self.x[j]), &self.f.c[j])?;
            t = sub(&t, &mul(&self.f.u[i * n + j], &yj)?)?;
        }
        let di = &self.f.d[i];
        let slack = sub(&self.radius, partial)?;
        if slack < T::zero() {
            return Ok(());
        }
        let term = |x: i64| -> Result<T, Overflow> {
            let y = sub(&T::int(x), &t)?;
            mul(di, &mul(&y, &y)?)
        };
        let fits = |x: i64| -> Result<bool, Overflow> { Ok(term(x)? <= slack) };
        let width = (slack.approx() / di.approx()).max(0.0).sqrt();
        let centre = t.approx();
        let bound = self.upper[i];
        let clamp = |v: f64| v.clamp(-1.0, bound as f64 + 1.0) as i64;
        let mut lo = clamp((centre - width).ceil());
        let mut hi = clamp((centre + width).floor());
        // Float estimates only seed the bounds; exact checks settle them.
        let t_floor = t.floor_i64().ok_or(Overflow)?;
        let lo_cap = t_floor.clamp(0, bound);
        lo = lo.clamp(0, bound);
        while lo > 0 && fits(lo - 1)? {
            lo -= 1;
        }
        while lo <= lo_cap && !fits(lo)? {
            lo += 1;
        }
        hi = hi.clamp(0, bound);
        let hi_floor = (t_floor + 1).clamp(0, bound);
        while hi < bound && fits(hi + 1)? {
            hi += 1;
        }
        while hi >= hi_floor && hi >= lo && !fits(hi)? {
            hi -= 1;
        }
        for v in lo..=hi {
            let tv = term(v)?;
            if tv > slack {
                continue;
            }
            self.x[i] = v;
            let next = add(partial, &tv)?;
            if i == 0 {
                if let Some(out) = self.collected.as_mut() {
                    if self.x.iter().any(|&c| c != 0) {
                        out.push(Cycle(self.x.clone()));
                    }
                } else if self.x.iter().any(|&c| c != 0) {
                    let fx = self.objective(&self.x);
                    if fx > self.best_f {
                        self.best_f = fx;
                        self.best = self.x.clone();
                        self.set_radius()?;
                    }
                }
            } else {
                self.descend(i - 1, &next)?;
            }
            // The radius may have shrunk below what this level allows.
            if partial > &self.radius {
                break;
            }
        }
        self.x[i] = 0;
        Ok(())
    }
}

/// Whether every `x` with `(x - c)^T Q (x - c) <= radius` has all `x_i <= bound`.
fn ellipsoid_inside<T: Scalar>(f: &Factor<T>, radius: &T, bound: i64) -> Result<bool, Overflow> {
    if *radius < T::zero() {
        return Ok(true);
    }
    for i in 0..f.n {
        // |x_i - c_i|^2 <= radius * (Q^{-1})_ii on the ellipsoid.
        let edge = sub(&T::int(bound + 1), &f.c[i])?;
        if edge <= T::zero() {
            return Ok(false);
        }
        if mul(&edge, &edge)? <= mul(radius, &f.q_inv_diag[i])? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn run<T: Scalar>(
    g: &WeightedDualGraph,
    start_bound: i64,
    cap: i64,
    seed: &(i64, Vec<i64>),
) -> Result<Result<PaMaxResult>, Overflow> {
    let f = Factor::<T>::new(g)?;
    let n = g.len();
    let mut bound = start_bound.max(1);
    let mut best_f = seed.0;
    let mut best = seed.1.clone();
    loop {
        let mut s = Search {
            g,
            f: &f,
            upper: vec![bound; n],
            x: vec![0; n],
            best_f,
            best: best.clone(),
            radius: T::zero(),
            collected: None,
        };
        s.set_radius()?;
        s.descend(n - 1, &T::zero())?;
        best_f = s.best_f;
        best = s.best;
        let radius = sub(&f.f_c, &T::int(best_f + 2))?;
        if ellipsoid_inside(&f, &radius, bound)? {
            return Ok(Ok(PaMaxResult {
                maximizer: Cycle(best),
                value: 1 + best_f / 2,
                box_bound: bound,
                boundary_clear: true,
            }));
        }
        if bound >= cap {
            return Ok(Err(Error::BudgetExceeded {
                budget: cap as u64,
                what: "p_a maximization box bound".into(),
            }));
        }
        bound = (bound * 2).min(cap);
    }
}

/// Best of a few easy candidates, to start the search with a small ellipsoid.
fn seed(g: &WeightedDualGraph, z: &Cycle, bound: i64) -> (i64, Vec<i64>) {
    let n = g.len();
    let mut best = (i64::MIN, vec![0; n]);
    let mut consider = |c: Cycle| {
        let v = 2 * (genus::pa_raw(g, &c) - 1);
        if v > best.0 {
            best = (v, c.0);
        }
    };
    for i in 0..n {
        consider(Cycle::vertex(n, i));
    }
    for k in 1..=bound {
        consider(z.scaled(k));
    }
    best
}

/// `p_a(V,o) = max { p_a(D) : D > 0 }`, exactly.
pub fn pa_max(g: &WeightedDualGraph, initial_bound: Option<i64>) -> Result<PaMaxResult> {
    pa_max_with_cap(g, initial_bound, DEFAULT_BOX_CAP)
}

pub fn pa_max_with_cap(g: &WeightedDualGraph, initial_bound: Option<i64>, cap: i64) -> Result<PaMaxResult> {
    let z = cycles::fundamental_cycle_full(g)?;
    let p_f = genus::pa(g, &z)?;
    let start = initial_bound.unwrap_or(4 * p_f.max(1) * z.max_coefficient()).clamp(1, cap);
    let seed = seed(g, &z, start);
    match run::<Ratio<i128>>(g, start, cap, &seed) {
        Ok(r) => r,
        Err(Overflow) => match run::<BigRational>(g, start, cap, &seed) {
            Ok(r) => r,
            Err(Overflow) => Err(Error::Overflow),
        },
    }
}

fn level_set_with<T: Scalar>(
    g: &WeightedDualGraph,
    upper: &Cycle,
    min_pa: i64,
) -> Result<Vec<Cycle>, Overflow> {
    let f = Factor::<T>::new(g)?;
    let n = g.len();
    let mut s = Search {
        g,
        f: &f,
        upper: upper.0.clone(),
        x: vec![0; n],
        best_f: 0,
        best: Vec::new(),
        radius: sub(&f.f_c, &T::int(2 * (min_pa - 1)))?,
        collected: Some(Vec::new()),
    };
    s.descend(n - 1, &T::zero())?;
    Ok(s.collected.unwrap_or_default())
}

/// Every cycle `0 < C <= upper` with `p_a(C) >= min_pa`, by enumerating the
/// lattice points of the ellipsoid `p_a >= min_pa` inside the box.
pub fn level_set(g: &WeightedDualGraph, upper: &Cycle, min_pa: i64) -> Result<Vec<Cycle>> {
    g.check_dim(upper)?;
    if !upper.is_effective() {
        return Err(Error::NotEffective);
    }
    let mut out = match level_set_with::<Ratio<i128>>(g, upper, min_pa) {
        Ok(v) => v,
        Err(Overflow) => level_set_with::<BigRational>(g, upper, min_pa).map_err(|_| Error::Overflow)?,
    };
    out.sort();
    if let Some(c) = out.iter().find(|c| genus::pa_raw(g, c) < min_pa) {
        return Err(Error::Invariant(format!("level set search returned {c} below the threshold")));
    }
    Ok(out)
}

/// Exhaustive maximum of `p_a` over `[0, bound]^n` minus the origin.
pub fn pa_max_exhaustive(g: &WeightedDualGraph, bound: i64) -> (i64, Cycle) {
    let top = Cycle(vec![bound; g.len()]);
    let mut best = (i64::MIN, Cycle::zero(g.len()));
    for c in cycles::subcycles(&top) {
        if c.is_zero() {
            continue;
        }
        let v = genus::pa_raw(g, &c);
        if v > best.0 {
            best = (v, c);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs;
    use crate::lattice::{Edge, VertexData};

    #[test]
    fn genus_two_vertex() {
        // p_a(nE) = 1 + 2n - n^2 peaks at n = 1.
        let r = pa_max(&graphs::single(-2, 2), None).unwrap();
        assert_eq!((r.value, r.maximizer.clone()), (2, Cycle(vec![1])));
        assert!(r.boundary_clear);
    }

    #[test]
    fn elliptic_path() {
        assert_eq!(pa_max(&graphs::b1_a_b2(), None).unwrap().value, 1);
    }

    #[test]
    fn elliptic_minus_one_curve() {
        let r = pa_max(&graphs::single(-1, 1), None).unwrap();
        assert_eq!((r.value, r.maximizer), (1, Cycle(vec![1])));
    }

    #[test]
    fn rational_graphs_peak_at_zero() {
        for g in graphs::ade_family(6) {
            assert_eq!(pa_max(&g, None).unwrap().value, 0);
        }
    }

    #[test]
    fn high_genus_vertex_needs_a_large_multiple() {
        // p_a(nE) = 1 + n(n(-1) + (1 + 2*9 - 2))/2 = 1 + n(17 - n)/2, max at n = 8, 9.
        let g = graphs::single(-1, 9);
        let r = pa_max(&g, Some(1)).unwrap();
        assert_eq!(r.value, 1 + 8 * 9 / 2);
        assert!(r.box_bound >= r.maximizer.max_coefficient());
    }

    #[test]
    fn budget_is_enforced() {
        let g = graphs::single(-1, 9);
        let err = pa_max_with_cap(&g, Some(1), 4).unwrap_err();
        assert_eq!(err.kind(), crate::error::ErrorKind::Resource);
    }

    #[test]
    fn level_set_matches_exhaustive_filter() {
        let g = WeightedDualGraph::new(
            vec![VertexData::new(-3, 2), VertexData::rational(-2), VertexData::new(-2, 1), VertexData::new(-4, 1)],
            vec![Edge::new(0, 1), Edge::new(1, 2), Edge::with_multiplicity(2, 3, 2)],
        )
        .unwrap();
        let upper = Cycle(vec![3, 4, 2, 3]);
        for min_pa in -6..4 {
            let mut brute: Vec<Cycle> = cycles::subcycles(&upper)
                .filter(|c| !c.is_zero() && genus::pa_raw(&g, c) >= min_pa)
                .collect();
            brute.sort();
            assert_eq!(level_set(&g, &upper, min_pa).unwrap(), brute, "min_pa {min_pa}");
        }
    }

    #[test]
    fn agrees_with_exhaustive_box() {
        let g = WeightedDualGraph::new(
            vec![VertexData::new(-3, 2), VertexData::rational(-2), VertexData::new(-2, 1)],
            vec![Edge::with_multiplicity(0, 1, 1), Edge::new(1, 2)],
        )
        .unwrap();
        let r = pa_max(&g, None).unwrap();
        assert_eq!(r.value, pa_max_exhaustive(&g, 6).0);
        assert_eq!(genus::pa(&g, &r.maximizer).unwrap(), r.value);
    }
}
