//! Sails of hyperbolic operators in all four octants, represented by one
//! period of vertices and the shift that carries the period onto itself.

use serde::Serialize;

use crate::analysis::{canonical_word, same_sequence};
use crate::error::{Error, Result};
use crate::lattice::{
    angle_sail, angle_sail_bruteforce, int_sine, lls_of_chain, LatticePoint, LlsFragment, LlsRole, VertexChain,
};
use crate::operators::IntMatrix2;
use crate::reduction::reduce;
use crate::scalar::{int, Int};

/// One period of a sail: `shift(first vertex) = last vertex`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct SailPeriod<T: Int> {
    pub octant: u8,
    pub chain: VertexChain<T>,
    /// Lengths of the period's edges alternating with the sines at their far
    /// ends, the last sine being the one at the final vertex.
    pub lls: LlsFragment<T>,
    pub shift: IntMatrix2<T>,
}

impl<T: Int> SailPeriod<T> {
    /// Build from a counterclockwise chain and its shift.
    pub fn from_chain(octant: u8, chain: VertexChain<T>, shift: IntMatrix2<T>) -> Result<Self> {
        let v = chain.vertices();
        if v.len() < 2 {
            return Err(Error::InvalidChain("period needs two vertices".into()));
        }
        if &shift.apply(chain.first()) != chain.last() {
            return Err(Error::Internal("shift does not close the period".into()));
        }
        let mut lls = lls_of_chain(&chain, &LatticePoint::origin())?;
        let next = shift.apply(&v[1]);
        lls.values.push(int_sine(&v[v.len() - 2], &v[v.len() - 1], &next)?);
        Ok(Self { octant, chain, lls, shift })
    }

    pub fn word(&self) -> &[T] {
        &self.lls.values
    }

    /// Roles of the period word, each value tagged as a length or a sine.
    fn tagged(&self, swap: bool) -> Vec<(u8, T)> {
        self.lls
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let role = self.lls.role_at(i);
                let role = if swap { role.swap() } else { role };
                (u8::from(role == LlsRole::Sine), v.clone())
            })
            .collect()
    }

    pub fn negated(&self, octant: u8) -> Self {
        Self {
            octant,
            chain: self.chain.map(|p| -p.clone()),
            lls: self.lls.clone(),
            shift: self.shift.clone(),
        }
    }
}

/// Period of the sail in octant 0 together with everything else needed.
fn octant_zero<T: Int>(a: &IntMatrix2<T>) -> Result<SailPeriod<T>> {
    let trace = reduce(a)?;
    let r = &trace.final_state;
    let t = &trace.t;
    let e1 = LatticePoint::new(T::one(), T::zero());
    let image = r.apply(&e1);
    let chain_r = if image.x.is_zero() || image.x == image.y {
        VertexChain::new(vec![e1, image])?
    } else {
        angle_sail(&image)?
    };
    let mut chain = chain_r.map(|p| t.apply(p));
    let s = r.conjugate(&t.inverse()?)?;
    let shift = if t.det() < T::zero() {
        chain = chain.reversed();
        s.inverse()?
    } else {
        s
    };
    SailPeriod::from_chain(0, chain, shift)
}

/// The adjacent sail counterclockwise of `s`: its vertices are the primitive
/// edge vectors of `s`.
fn dual_period<T: Int>(s: &SailPeriod<T>, octant: u8) -> Result<SailPeriod<T>> {
    let v = s.chain.vertices();
    let mut edges: Vec<LatticePoint<T>> =
        v.windows(2).map(|w| (w[1].clone() - w[0].clone()).primitive()).collect();
    let wrap = (s.shift.apply(&v[1]) - v[v.len() - 1].clone()).primitive();
    edges.push(wrap);
    edges.reverse();
    SailPeriod::from_chain(octant, VertexChain::new(edges)?, s.shift.inverse()?)
}

/// One period of the sail of `a` in the given octant (0–3, counterclockwise).
pub fn operator_sail_period<T: Int>(a: &IntMatrix2<T>, octant: u8) -> Result<SailPeriod<T>> {
    if octant > 3 {
        return Err(Error::OutOfRange(format!("octant {octant} not in 0..=3")));
    }
    let s0 = octant_zero(a)?;
    Ok(match octant {
        0 => s0,
        1 => dual_period(&s0, 1)?,
        2 => s0.negated(2),
        _ => dual_period(&s0, 1)?.negated(3),
    })
}

pub fn four_sail_periods<T: Int>(a: &IntMatrix2<T>) -> Result<[SailPeriod<T>; 4]> {
    let s0 = octant_zero(a)?;
    let s1 = dual_period(&s0, 1)?;
    let s2 = s0.negated(2);
    let s3 = s1.negated(3);
    Ok([s0, s1, s2, s3])
}

/// Whether the lengths of one sail are the sines of the other and vice versa.
pub fn check_duality<T: Int>(s1: &SailPeriod<T>, s2: &SailPeriod<T>) -> bool {
    same_sequence(&s1.tagged(true), &s2.tagged(false))
}

/// Sign of the quadratic form vanishing on the eigenlines,
/// `F(x, y) = b x² + (d − a) x y − c y²`.
pub fn eigen_form<T: Int>(a: &IntMatrix2<T>, v: &LatticePoint<T>) -> T {
    a.b().clone() * v.x.clone() * v.x.clone() + (a.d().clone() - a.a().clone()) * v.x.clone() * v.y.clone()
        - a.c().clone() * v.y.clone() * v.y.clone()
}

fn eigen_bilinear2<T: Int>(a: &IntMatrix2<T>, u: &LatticePoint<T>, v: &LatticePoint<T>) -> T {
    int::<T>(2) * a.b().clone() * u.x.clone() * v.x.clone()
        + (a.d().clone() - a.a().clone()) * (u.x.clone() * v.y.clone() + u.y.clone() * v.x.clone())
        - int::<T>(2) * a.c().clone() * u.y.clone() * v.y.clone()
}

/// Octant of `v` counted counterclockwise from the octant of `reference`,
/// decided by exact sign tests against the eigenlines. `None` on an eigenline.
pub fn relative_octant<T: Int>(a: &IntMatrix2<T>, reference: &LatticePoint<T>, v: &LatticePoint<T>) -> Option<u8> {
    let fr = eigen_form(a, reference).signum();
    let fv = eigen_form(a, v).signum();
    if fr.is_zero() || fv.is_zero() {
        return None;
    }
    if fr == fv {
        let b = eigen_bilinear2(a, reference, v).signum();
        Some(if b == fr { 0 } else { 2 })
    } else {
        Some(if reference.cross(v).is_positive() { 1 } else { 3 })
    }
}

/// A primitive lattice point in each octant, counterclockwise from the octant of `reference`.
pub fn octant_representatives<T: Int>(a: &IntMatrix2<T>, reference: &LatticePoint<T>) -> Result<[LatticePoint<T>; 4]> {
    if relative_octant(a, reference, reference).is_none() {
        return Err(Error::OutOfRange(format!("{reference} lies on an eigenline")));
    }
    let mut found: [Option<LatticePoint<T>>; 4] = [None, None, None, None];
    let mut r = 1i64;
    while found.iter().any(Option::is_none) {
        for x in -r..=r {
            for y in -r..=r {
                if x.abs().max(y.abs()) != r {
                    continue;
                }
                let p = LatticePoint::new(int::<T>(x), int::<T>(y));
                if !p.is_primitive() {
                    continue;
                }
                if let Some(k) = relative_octant(a, reference, &p) {
                    found[k as usize].get_or_insert(p);
                }
            }
        }
        r += 1;
    }
    Ok(found.map(|p| p.expect("all found")))
}

/// Period of the sail of the octant containing `w`, by convex hull of the
/// lattice points in a cone spanning two periods.
///
/// Independent of the reduction: with `G` the positive multiple of `a` or of
/// its inverse that turns `w` counterclockwise, the hull of the cone from `w`
/// to `G²w` agrees with the sail between its last vertex `Y` before ray `Gw`
/// and `GY`.
pub fn octant_sail_bruteforce<T: Int>(a: &IntMatrix2<T>, w: &LatticePoint<T>) -> Result<SailPeriod<T>> {
    if !a.det().is_one() || a.trace().abs() < int(3) {
        return Err(Error::NotHyperbolic(a.trace().to_string()));
    }
    let w = w.primitive();
    if eigen_form(a, &w).is_zero() {
        return Err(Error::OutOfRange(format!("{w} lies on an eigenline")));
    }
    let m = if a.trace().is_negative() { -a.clone() } else { a.clone() };
    let g = if w.cross(&m.apply(&w)).is_positive() { m } else { m.inverse()? };
    let gw = g.apply(&w);
    let g2w = g.apply(&gw);
    let bound = w.max_norm().max(g2w.primitive().max_norm());
    let hull = angle_sail_bruteforce(&w, &g2w, &bound)?;
    let v = hull.vertices();
    let y_idx = v
        .iter()
        .rposition(|p| gw.cross(p) <= T::zero())
        .ok_or_else(|| Error::Internal("no hull vertex before the shifted ray".into()))?;
    let gy = g.apply(&v[y_idx]);
    let end = v
        .iter()
        .position(|p| p == &gy)
        .ok_or_else(|| Error::Internal("shifted vertex missing from hull".into()))?;
    let chain = VertexChain::new(v[y_idx..=end].to_vec())?;
    SailPeriod::from_chain(0, chain, g)
}

/// Whether `p` is a vertex of the infinite sail that `period` generates.
pub fn sail_contains<T: Int>(period: &SailPeriod<T>, p: &LatticePoint<T>) -> Result<bool> {
    let first = period.chain.first();
    let last = period.chain.last();
    let inv = period.shift.inverse()?;
    let mut q = p.clone();
    // move q into the angular range [first, last)
    let mut guard = 0;
    while last.cross(&q) >= T::zero() {
        q = inv.apply(&q);
        guard += 1;
        if guard > 10_000 {
            return Ok(false);
        }
    }
    while first.cross(&q) < T::zero() {
        q = period.shift.apply(&q);
        guard += 1;
        if guard > 10_000 {
            return Ok(false);
        }
    }
    Ok(period.chain.vertices().contains(&q))
}

/// Canonical cyclic word of a sail period for comparisons.
pub fn canonical_sail_word<T: Int>(s: &SailPeriod<T>) -> Vec<T> {
    canonical_word(s.word())
}
