//! Integer lengths and sines, sails of planar lattice angles, and LLS fragments.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{cf_expand, Parity};
use crate::numeric::ContinuedFraction;
use crate::scalar::{int, Int};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(bound = "")]
pub struct LatticePoint<T: Int> {
    #[serde(serialize_with = "crate::scalar::serialize_int")]
    pub x: T,
    #[serde(serialize_with = "crate::scalar::serialize_int")]
    pub y: T,
}

impl<T: Int> LatticePoint<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn from_i64(x: i64, y: i64) -> Self {
        Self { x: int(x), y: int(y) }
    }

    pub fn origin() -> Self {
        Self { x: T::zero(), y: T::zero() }
    }

    pub fn is_origin(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// `det(self | other)`.
    pub fn cross(&self, other: &Self) -> T {
        self.x.clone() * other.y.clone() - self.y.clone() * other.x.clone()
    }

    pub fn dot(&self, other: &Self) -> T {
        self.x.clone() * other.x.clone() + self.y.clone() * other.y.clone()
    }

    /// gcd of the coordinates; zero only at the origin.
    pub fn content(&self) -> T {
        self.x.gcd(&self.y)
    }

    /// The first lattice point on the ray through `self`.
    pub fn primitive(&self) -> Self {
        let g = self.content();
        if g.is_zero() {
            return self.clone();
        }
        Self { x: self.x.clone() / g.clone(), y: self.y.clone() / g }
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == T::one()
    }

    pub fn max_norm(&self) -> T {
        let (ax, ay) = (self.x.abs(), self.y.abs());
        if ax > ay {
            ax
        } else {
            ay
        }
    }
}

impl<T: Int> Add for LatticePoint<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { x: self.x + o.x, y: self.y + o.y }
    }
}

impl<T: Int> Sub for LatticePoint<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self { x: self.x - o.x, y: self.y - o.y }
    }
}

impl<T: Int> Neg for LatticePoint<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { x: -self.x, y: -self.y }
    }
}

impl<T: Int> fmt::Display for LatticePoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Convex broken line of lattice points.
///
/// Consecutive vertices are distinct, no three consecutive vertices are
/// collinear and every turn has the same orientation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(bound = "")]
pub struct VertexChain<T: Int> {
    vertices: Vec<LatticePoint<T>>,
}

impl<T: Int> VertexChain<T> {
    pub fn new(vertices: Vec<LatticePoint<T>>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidChain("no vertices".into()));
        }
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidChain("repeated consecutive vertex".into()));
        }
        let mut orientation = Ordering::Equal;
        for w in vertices.windows(3) {
            let turn = turn(&w[0], &w[1], &w[2]).cmp(&T::zero());
            if turn == Ordering::Equal {
                return Err(Error::InvalidChain(format!("collinear vertices at {}", w[1])));
            }
            if orientation != Ordering::Equal && orientation != turn {
                return Err(Error::InvalidChain(format!("chain is not convex at {}", w[1])));
            }
            orientation = turn;
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[LatticePoint<T>] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<LatticePoint<T>> {
        self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn first(&self) -> &LatticePoint<T> {
        &self.vertices[0]
    }

    pub fn last(&self) -> &LatticePoint<T> {
        self.vertices.last().expect("nonempty")
    }

    /// Sign of every turn: `Less` for chains bending clockwise, `Equal` for a single edge.
    pub fn orientation(&self) -> Ordering {
        self.vertices
            .windows(3)
            .next()
            .map(|w| turn(&w[0], &w[1], &w[2]).cmp(&T::zero()))
            .unwrap_or(Ordering::Equal)
    }

    pub fn map(&self, f: impl Fn(&LatticePoint<T>) -> LatticePoint<T>) -> Self {
        Self { vertices: self.vertices.iter().map(f).collect() }
    }

    pub fn reversed(&self) -> Self {
        let mut v = self.vertices.clone();
        v.reverse();
        Self { vertices: v }
    }
}

/// `cross(b - a, c - b)`: negative for a clockwise turn at `b`.
pub(crate) fn turn<T: Int>(a: &LatticePoint<T>, b: &LatticePoint<T>, c: &LatticePoint<T>) -> T {
    (b.clone() - a.clone()).cross(&(c.clone() - b.clone()))
}

/// Whether a value measures an edge or a vertex angle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LlsRole {
    Length,
    Sine,
}

impl LlsRole {
    pub fn swap(self) -> Self {
        match self {
            LlsRole::Length => LlsRole::Sine,
            LlsRole::Sine => LlsRole::Length,
        }
    }
}

/// Alternating integer lengths and integer sines read along a chain.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(bound = "")]
pub struct LlsFragment<T: Int> {
    #[serde(serialize_with = "crate::scalar::serialize_int_seq")]
    pub values: Vec<T>,
    pub starts_with: LlsRole,
}

impl<T: Int> LlsFragment<T> {
    pub fn role_at(&self, i: usize) -> LlsRole {
        if i % 2 == 0 {
            self.starts_with
        } else {
            self.starts_with.swap()
        }
    }

    /// Values at even offsets from the first length.
    pub fn lengths(&self) -> Vec<T> {
        self.values_with(LlsRole::Length)
    }

    pub fn sines(&self) -> Vec<T> {
        self.values_with(LlsRole::Sine)
    }

    fn values_with(&self, role: LlsRole) -> Vec<T> {
        self.values
            .iter()
            .enumerate()
            .filter(|(i, _)| self.role_at(*i) == role)
            .map(|(_, v)| v.clone())
            .collect()
    }
}

/// Number of lattice points on segment `PQ` minus one: `gcd(|Δx|, |Δy|)`.
pub fn int_length<T: Int>(p: &LatticePoint<T>, q: &LatticePoint<T>) -> Result<T> {
    if p == q {
        return Err(Error::CoincidentPoints);
    }
    Ok((q.clone() - p.clone()).content())
}

/// Integer sine of the angle `QPR` with vertex `P`.
///
/// Index of the sublattice spanned by the primitive vectors along `PQ` and
/// `PR`; zero when the three points are collinear.
pub fn int_sine<T: Int>(q: &LatticePoint<T>, p: &LatticePoint<T>, r: &LatticePoint<T>) -> Result<T> {
    if q == p || r == p {
        return Err(Error::CoincidentPoints);
    }
    let u = q.clone() - p.clone();
    let v = r.clone() - p.clone();
    let area = u.cross(&v).abs();
    Ok(area / (u.content() * v.content()))
}

/// Sail of the angle between the rays through `(1, 0)` and `q = (a, b)`,
/// read off the convergents of the odd expansion `b/a = [a0:a1;...;a_2n]`.
///
/// Requires `q` primitive with `b > a >= 1`. The vertices are `(1, 0)` and
/// `(q_2k, p_2k)` for `k = 0..=n`.
pub fn angle_sail<T: Int>(q: &LatticePoint<T>) -> Result<VertexChain<T>> {
    let (a, b) = (&q.x, &q.y);
    if !q.is_primitive() || a < &T::one() || b <= a {
        return Err(Error::AngleNotNormalized);
    }
    let cf = cf_expand(&Ratio::new(b.clone(), a.clone()), Parity::Odd);
    let pairs = crate::numeric::cf::convergent_pairs(&cf);
    let mut vertices = vec![LatticePoint::new(T::one(), T::zero())];
    vertices.extend(pairs.into_iter().step_by(2).map(|(p, q)| LatticePoint::new(q, p)));
    VertexChain::new(vertices)
}

/// Odd expansion of `b/a` for a normalized angle, the digits its sail encodes.
pub fn angle_digits<T: Int>(q: &LatticePoint<T>) -> Result<ContinuedFraction<T>> {
    if !q.is_primitive() || q.x < T::one() || q.y <= q.x {
        return Err(Error::AngleNotNormalized);
    }
    Ok(cf_expand(&Ratio::new(q.y.clone(), q.x.clone()), Parity::Odd))
}

/// Sail of the closed angle spanned by two lattice directions, by direct
/// convex hull of the lattice points it contains.
///
/// The chain runs counterclockwise from the first lattice point on one ray to
/// the first lattice point on the other. Hull vertices on the origin side all
/// lie in the triangle spanned by those two points and the origin, so only
/// that triangle of the `|x|, |y| <= bound` box is scanned. Fails with
/// [`Error::BoundInsufficient`] when either ray point falls outside the box.
pub fn angle_sail_bruteforce<T: Int>(
    pdir: &LatticePoint<T>,
    qdir: &LatticePoint<T>,
    bound: &T,
) -> Result<VertexChain<T>> {
    if pdir.is_origin() || qdir.is_origin() {
        return Err(Error::CoincidentPoints);
    }
    let orient = pdir.cross(qdir);
    if orient.is_zero() {
        return Err(Error::CollinearRays);
    }
    let (p1, p2) = if orient.is_positive() {
        (pdir.primitive(), qdir.primitive())
    } else {
        (qdir.primitive(), pdir.primitive())
    };
    if &p1.max_norm() > bound || &p2.max_norm() > bound {
        return Err(Error::BoundInsufficient);
    }
    let points = triangle_points(&p1, &p2);
    Ok(near_hull(points))
}

/// Nonzero lattice points of the closed triangle `O p1 p2` (`p1` clockwise of `p2`).
fn triangle_points<T: Int>(p1: &LatticePoint<T>, p2: &LatticePoint<T>) -> Vec<LatticePoint<T>> {
    let zero = T::zero();
    let min = |a: &T, b: &T| if a < b { a.clone() } else { b.clone() };
    let max = |a: &T, b: &T| if a > b { a.clone() } else { b.clone() };
    let x_lo = min(&min(&p1.x, &p2.x), &zero);
    let x_hi = max(&max(&p1.x, &p2.x), &zero);
    let edge = p2.clone() - p1.clone();
    // each side as alpha·x + beta·y >= gamma
    let sides = [
        (-p1.y.clone(), p1.x.clone(), T::zero()),
        (p2.y.clone(), -p2.x.clone(), T::zero()),
        (-edge.y.clone(), edge.x.clone(), -p1.cross(&edge)),
    ];
    let mut out = Vec::new();
    let mut x = x_lo;
    while x <= x_hi {
        if let Some((lo, hi)) = column_range(&sides, &x) {
            let mut y = lo;
            while y <= hi {
                let v = LatticePoint::new(x.clone(), y.clone());
                if !v.is_origin() {
                    out.push(v);
                }
                y = y + T::one();
            }
        }
        x = x + T::one();
    }
    out
}

/// Integer `y` with `alpha·x + beta·y >= gamma` for every side, for a fixed `x`.
fn column_range<T: Int>(sides: &[(T, T, T)], x: &T) -> Option<(T, T)> {
    let mut lo: Option<T> = None;
    let mut hi: Option<T> = None;
    for (alpha, beta, gamma) in sides {
        let rhs = gamma.clone() - alpha.clone() * x.clone();
        if beta.is_zero() {
            if rhs.is_positive() {
                return None;
            }
        } else if beta.is_positive() {
            let bound = -((-rhs).div_floor(beta));
            lo = Some(match lo {
                Some(l) if l >= bound => l,
                _ => bound,
            });
        } else {
            let bound = (-rhs).div_floor(&-beta.clone());
            hi = Some(match hi {
                Some(h) if h <= bound => h,
                _ => bound,
            });
        }
    }
    match (lo, hi) {
        (Some(l), Some(h)) if l <= h => Some((l, h)),
        _ => None,
    }
}

/// Boundary of the convex hull facing the origin, for points inside a cone
/// narrower than a half-plane. Graham scan in angular order around the origin.
pub(crate) fn near_hull<T: Int>(mut points: Vec<LatticePoint<T>>) -> VertexChain<T> {
    points.sort_by(|u, v| match v.cross(u).cmp(&T::zero()) {
        // u before v when u is clockwise of v
        Ordering::Less => Ordering::Less,
        Ordering::Greater => Ordering::Greater,
        Ordering::Equal => (u.x.abs() + u.y.abs()).cmp(&(v.x.abs() + v.y.abs())),
    });
    points.dedup_by(|later, earlier| later.cross(earlier).is_zero());
    let mut hull: Vec<LatticePoint<T>> = Vec::new();
    for v in points {
        while hull.len() >= 2 && !turn(&hull[hull.len() - 2], &hull[hull.len() - 1], &v).is_negative() {
            hull.pop();
        }
        hull.push(v);
    }
    VertexChain::new(hull).expect("Graham scan output is a convex chain")
}

/// Lengths of the edges and sines at the inner vertices, alternating from the first edge.
pub fn lls_of_chain<T: Int>(chain: &VertexChain<T>, apex: &LatticePoint<T>) -> Result<LlsFragment<T>> {
    let v = chain.vertices();
    if v.len() < 2 {
        return Err(Error::InvalidChain("fewer than two vertices".into()));
    }
    for w in v.windows(2) {
        if on_segment(apex, &w[0], &w[1]) {
            return Err(Error::InvalidChain(format!("apex {apex} lies on the chain")));
        }
    }
    let mut values = Vec::with_capacity(2 * v.len() - 3);
    for i in 0..v.len() - 1 {
        if i > 0 {
            values.push(int_sine(&v[i - 1], &v[i], &v[i + 1])?);
        }
        values.push(int_length(&v[i], &v[i + 1])?);
    }
    Ok(LlsFragment { values, starts_with: LlsRole::Length })
}

fn on_segment<T: Int>(p: &LatticePoint<T>, a: &LatticePoint<T>, b: &LatticePoint<T>) -> bool {
    let ab = b.clone() - a.clone();
    let ap = p.clone() - a.clone();
    ab.cross(&ap).is_zero() && !ap.dot(&ab).is_negative() && ap.dot(&ap) <= ab.dot(&ab)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i64, y: i64) -> LatticePoint<i64> {
        LatticePoint::from_i64(x, y)
    }

    fn pts(v: &[(i64, i64)]) -> Vec<LatticePoint<i64>> {
        v.iter().map(|&(x, y)| pt(x, y)).collect()
    }

    #[test]
    fn integer_length() {
        assert_eq!(int_length(&pt(0, 0), &pt(2, 4)), Ok(2));
        assert_eq!(int_length(&pt(1, 0), &pt(1, 2)), Ok(2));
        assert_eq!(int_length(&pt(0, 0), &pt(3, 5)), Ok(1));
        assert_eq!(int_length(&pt(1, 1), &pt(1, 1)), Err(Error::CoincidentPoints));
    }

    #[test]
    fn integer_sine() {
        assert_eq!(int_sine(&pt(1, 0), &pt(0, 0), &pt(1, 1)), Ok(1));
        assert_eq!(int_sine(&pt(1, 0), &pt(0, 0), &pt(1, 2)), Ok(2));
        assert_eq!(int_sine(&pt(2, 0), &pt(0, 0), &pt(0, 3)), Ok(1));
        assert_eq!(int_sine(&pt(2, 0), &pt(0, 0), &pt(-4, 0)), Ok(0));
        assert_eq!(int_sine(&pt(0, 0), &pt(0, 0), &pt(1, 0)), Err(Error::CoincidentPoints));
        // adjacent angle has the same sine
        assert_eq!(int_sine(&pt(-1, 0), &pt(0, 0), &pt(1, 2)), Ok(2));
    }

    #[test]
    fn convergent_sail_fixtures() {
        let s = angle_sail(&pt(2, 5)).unwrap();
        assert_eq!(s.vertices(), pts(&[(1, 0), (1, 2), (2, 5)]).as_slice());
        assert_eq!(lls_of_chain(&s, &pt(0, 0)).unwrap().values, vec![2, 1, 1]);
        let s = angle_sail(&pt(1, 2)).unwrap();
        assert_eq!(s.vertices(), pts(&[(1, 0), (1, 2)]).as_slice());
        assert_eq!(lls_of_chain(&s, &pt(0, 0)).unwrap().values, vec![2]);
        assert_eq!(angle_sail(&pt(1, 1)), Err(Error::AngleNotNormalized));
        assert_eq!(angle_sail(&pt(2, 4)), Err(Error::AngleNotNormalized));
        assert_eq!(angle_sail(&pt(3, 2)), Err(Error::AngleNotNormalized));
    }

    #[test]
    fn bruteforce_fixtures() {
        let s = angle_sail_bruteforce(&pt(1, 0), &pt(2, 5), &10).unwrap();
        assert_eq!(s, angle_sail(&pt(2, 5)).unwrap());
        let q = angle_sail_bruteforce(&pt(1, 0), &pt(0, 1), &5).unwrap();
        assert_eq!(q.vertices(), pts(&[(1, 0), (0, 1)]).as_slice());
        assert_eq!(lls_of_chain(&q, &pt(0, 0)).unwrap().values, vec![1]);
        // argument order does not matter, output stays counterclockwise
        let r = angle_sail_bruteforce(&pt(2, 5), &pt(1, 0), &10).unwrap();
        assert_eq!(r, s);
        assert_eq!(angle_sail_bruteforce(&pt(1, 0), &pt(2, 5), &4), Err(Error::BoundInsufficient));
        assert_eq!(angle_sail_bruteforce(&pt(1, 0), &pt(-3, 0), &4), Err(Error::CollinearRays));
    }

    #[test]
    fn chain_validation() {
        assert!(VertexChain::new(pts(&[(1, 0), (1, 1), (1, 2)])).is_err());
        assert!(VertexChain::new(pts(&[(1, 0), (1, 0)])).is_err());
        assert!(VertexChain::new(pts(&[(2, 0), (1, 1), (2, 3), (1, 4)])).is_err());
        assert!(VertexChain::new(pts(&[(1, 0), (1, 1)])).is_ok());
    }

    #[test]
    fn lls_of_chain_errors() {
        let single = VertexChain::new(pts(&[(1, 0)])).unwrap();
        assert!(lls_of_chain(&single, &pt(0, 0)).is_err());
        let through = VertexChain::new(pts(&[(-1, 0), (1, 0)])).unwrap();
        assert!(lls_of_chain(&through, &pt(0, 0)).is_err());
        assert_eq!(lls_of_chain(&VertexChain::new(pts(&[(1, 0), (1, 1)])).unwrap(), &pt(0, 0)).unwrap().values, vec![1]);
    }
}
