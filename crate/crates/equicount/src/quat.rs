//! Hamilton's quaternion algebra over `Q` with the Hurwitz maximal order
//! `O = Z<1, i, j, rho>`, `rho = (1+i+j+k)/2`.
//!
//! Elements carry exact rational coordinates. Lattices (left ideals, the
//! order itself) are rank-4 Z-modules written in Hermite normal form over the
//! Hurwitz basis, so lattice indices and unimodularity tests are exact
//! determinant computations.
//!
//! The Hamilton algebra has reduced discriminant `D_A = 2`; counting
//! constants downstream keep `D_A` and `prod_{p | D_A} (p^3 - 1)` symbolic so
//! they stay readable against their sources.

use num::{One, Signed, Zero};

use crate::arith::Rat;
use crate::{Error, Result};

/// A quaternion `w + x i + y j + z k` with rational coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Quaternion {
    pub w: Rat,
    pub x: Rat,
    pub y: Rat,
    pub z: Rat,
}

impl Quaternion {
    pub fn new(w: Rat, x: Rat, y: Rat, z: Rat) -> Self {
        Quaternion { w, x, y, z }
    }
    pub fn from_ints(w: i128, x: i128, y: i128, z: i128) -> Self {
        Quaternion::new(
            Rat::from_integer(w),
            Rat::from_integer(x),
            Rat::from_integer(y),
            Rat::from_integer(z),
        )
    }
    /// Coordinates over the Hurwitz basis `{1, i, j, rho}`:
    /// `c0 + c1 i + c2 j + c3 rho`.
    pub fn from_coords(c: [i128; 4]) -> Self {
        let h = Rat::new(c[3], 2);
        Quaternion::new(
            Rat::from_integer(c[0]) + h,
            Rat::from_integer(c[1]) + h,
            Rat::from_integer(c[2]) + h,
            h,
        )
    }
    /// Inverse of `from_coords`; `None` when not a Hurwitz integer.
    pub fn to_coords(&self) -> Option<[i128; 4]> {
        let c3 = self.z + self.z;
        let c0 = self.w - self.z;
        let c1 = self.x - self.z;
        let c2 = self.y - self.z;
        if c3.is_integer() && c0.is_integer() && c1.is_integer() && c2.is_integer() {
            Some([*c0.numer(), *c1.numer(), *c2.numer(), *c3.numer()])
        } else {
            None
        }
    }
    pub fn zero() -> Self {
        Quaternion::from_ints(0, 0, 0, 0)
    }
    pub fn one() -> Self {
        Quaternion::from_ints(1, 0, 0, 0)
    }
    pub fn is_zero(&self) -> bool {
        self.w.is_zero() && self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }
    pub fn add(&self, o: &Quaternion) -> Quaternion {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
    pub fn sub(&self, o: &Quaternion) -> Quaternion {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
    pub fn neg(&self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
    pub fn mul(&self, o: &Quaternion) -> Quaternion {
        let (a1, b1, c1, d1) = (self.w, self.x, self.y, self.z);
        let (a2, b2, c2, d2) = (o.w, o.x, o.y, o.z);
        Quaternion::new(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }
    pub fn conj(&self) -> Quaternion {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }
    /// Reduced norm `q qbar = w^2 + x^2 + y^2 + z^2`.
    pub fn norm(&self) -> Rat {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }
    /// Reduced trace `q + qbar = 2w`.
    pub fn trace(&self) -> Rat {
        self.w + self.w
    }
    pub fn inv(&self) -> Option<Quaternion> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conj();
        Some(Quaternion::new(c.w / n, c.x / n, c.y / n, c.z / n))
    }
    pub fn scale(&self, r: Rat) -> Quaternion {
        Quaternion::new(self.w * r, self.x * r, self.y * r, self.z * r)
    }
    pub fn to_f64(&self) -> [f64; 4] {
        [rf(self.w), rf(self.x), rf(self.y), rf(self.z)]
    }
}

fn rf(r: Rat) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Hurwitz basis `{1, i, j, rho}` as quaternions.
pub fn hurwitz_basis() -> [Quaternion; 4] {
    [
        Quaternion::from_coords([1, 0, 0, 0]),
        Quaternion::from_coords([0, 1, 0, 0]),
        Quaternion::from_coords([0, 0, 1, 0]),
        Quaternion::from_coords([0, 0, 0, 1]),
    ]
}

/// The 24 units of the Hurwitz order: `+-1, +-i, +-j, +-k` and
/// `(+-1 +- i +- j +- k)/2`, recovered by enumerating norm-1 points.
pub fn hurwitz_units() -> Vec<Quaternion> {
    let mut out = Vec::with_capacity(24);
    for c0 in -2i128..=2 {
        for c1 in -2i128..=2 {
            for c2 in -2i128..=2 {
                for c3 in -2i128..=2 {
                    let q = Quaternion::from_coords([c0, c1, c2, c3]);
                    if q.norm() == Rat::one() {
                        out.push(q);
                    }
                }
            }
        }
    }
    out
}

/// Row-reduce integer 4-vectors to a canonical upper-triangular lattice
/// basis (Hermite normal form, pivots on the diagonal, entries above each
/// pivot reduced into `[0, pivot)`). Returns `None` when the rank is < 4.
fn hnf_4(rows: &[[i128; 4]]) -> Option<[[i128; 4]; 4]> {
    let mut m: Vec<[i128; 4]> = rows
        .iter()
        .copied()
        .filter(|r| r.iter().any(|&v| v != 0))
        .collect();
    let mut basis: Vec<[i128; 4]> = Vec::with_capacity(4);
    for col in 0..4 {
        loop {
            let mut nz: Vec<usize> = (0..m.len()).filter(|&i| m[i][col] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            nz.sort_by_key(|&i| m[i][col].abs());
            let pivot = nz[0];
            for &i in &nz[1..] {
                let q = m[i][col] / m[pivot][col];
                for k in 0..4 {
                    m[i][k] -= q * m[pivot][k];
                }
            }
            m.retain(|r| r.iter().any(|&v| v != 0));
        }
        if let Some(i) = (0..m.len()).find(|&i| m[i][col] != 0) {
            let mut row = m.remove(i);
            if row[col] < 0 {
                for v in row.iter_mut() {
                    *v = -*v;
                }
            }
            basis.push(row);
        } else {
            return None;
        }
    }
    let mut b: [[i128; 4]; 4] = [basis[0], basis[1], basis[2], basis[3]];
    for col in (0..4).rev() {
        for upper in 0..col {
            let q = b[upper][col].div_euclid(b[col][col]);
            for k in 0..4 {
                b[upper][k] -= q * b[col][k];
            }
        }
    }
    Some(b)
}

/// A full-rank sublattice of the Hurwitz order, in HNF over `{1, i, j, rho}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuatLattice {
    pub basis: [[i128; 4]; 4],
}

impl QuatLattice {
    pub fn hurwitz_order() -> Self {
        QuatLattice {
            basis: [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
        }
    }
    pub fn index(&self) -> i128 {
        (0..4).map(|i| self.basis[i][i]).product()
    }
    pub fn is_full_order(&self) -> bool {
        self.index() == 1
    }
}

/// The left ideal `O v` as a lattice: spanned by `v, iv, jv, rho v`.
pub fn left_ideal_of(v: &Quaternion) -> Result<QuatLattice> {
    if v.is_zero() {
        return Err(Error::EmptyGenerators);
    }
    let rows: Vec<[i128; 4]> = hurwitz_basis()
        .iter()
        .map(|b| {
            b.mul(v)
                .to_coords()
                .expect("left multiple of a Hurwitz integer stays integral")
        })
        .collect();
    let basis = hnf_4(&rows).expect("left ideal has full rank");
    Ok(QuatLattice { basis })
}

/// Coset representatives of `O / O v`; exactly `N(v)^2` of them.
pub fn residues_mod(v: &Quaternion) -> Result<Vec<Quaternion>> {
    let lat = left_ideal_of(v)?;
    let d: Vec<i128> = (0..4).map(|i| lat.basis[i][i]).collect();
    let mut out = Vec::with_capacity((d[0] * d[1] * d[2] * d[3]) as usize);
    for c0 in 0..d[0] {
        for c1 in 0..d[1] {
            for c2 in 0..d[2] {
                for c3 in 0..d[3] {
                    out.push(Quaternion::from_coords([c0, c1, c2, c3]));
                }
            }
        }
    }
    Ok(out)
}

/// Does `(u, v)` generate the full order, `O u + O v = O`?
pub fn pair_is_unimodular(u: &Quaternion, v: &Quaternion) -> bool {
    if u.is_zero() && v.is_zero() {
        return false;
    }
    let mut rows: Vec<[i128; 4]> = Vec::with_capacity(8);
    for b in hurwitz_basis() {
        for q in [u, v] {
            if q.is_zero() {
                continue;
            }
            match b.mul(q).to_coords() {
                Some(c) => rows.push(c),
                None => return false, // not in the order at all
            }
        }
    }
    match hnf_4(&rows) {
        Some(basis) => (0..4).map(|i| basis[i][i]).product::<i128>() == 1,
        None => false,
    }
}

/// All Hurwitz integers with `0 < N(q) <= bound` (plus zero when
/// `include_zero`), in a deterministic order.
pub fn hurwitz_norm_ball(bound: Rat, include_zero: bool) -> Vec<Quaternion> {
    let mut out = Vec::new();
    if bound < Rat::zero() {
        return out;
    }
    if include_zero {
        out.push(Quaternion::zero());
    }
    // doubled coordinates (2w, 2x, 2y, 2z), all of equal parity
    let b4 = bound * Rat::from_integer(4);
    let r = {
        let f = (*b4.numer() as f64 / *b4.denom() as f64).sqrt();
        f as i128 + 1
    };
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                for d in -r..=r {
                    if (a & 1) != (b & 1) || (a & 1) != (c & 1) || (a & 1) != (d & 1) {
                        continue;
                    }
                    let n4 = a * a + b * b + c * c + d * d;
                    if n4 == 0 || Rat::from_integer(n4) > b4 {
                        continue;
                    }
                    out.push(Quaternion::new(
                        Rat::new(a, 2),
                        Rat::new(b, 2),
                        Rat::new(c, 2),
                        Rat::new(d, 2),
                    ));
                }
            }
        }
    }
    out.sort_by(|p, q| {
        p.norm()
            .cmp(&q.norm())
            .then(p.w.cmp(&q.w))
            .then(p.x.cmp(&q.x))
            .then(p.y.cmp(&q.y))
            .then(p.z.cmp(&q.z))
    });
    out
}

/// A 2x2 quaternion matrix acting on the right projective line.
#[derive(Debug, Clone, PartialEq)]
pub struct QuatMat2 {
    pub a: Quaternion,
    pub b: Quaternion,
    pub c: Quaternion,
    pub d: Quaternion,
}

impl QuatMat2 {
    pub fn new(a: Quaternion, b: Quaternion, c: Quaternion, d: Quaternion) -> Self {
        QuatMat2 { a, b, c, d }
    }
    pub fn identity() -> Self {
        QuatMat2::new(
            Quaternion::one(),
            Quaternion::zero(),
            Quaternion::zero(),
            Quaternion::one(),
        )
    }
    pub fn from_rational(m: &crate::arith::Mat2) -> Self {
        QuatMat2::new(
            Quaternion::from_ints(m.a, 0, 0, 0),
            Quaternion::from_ints(m.b, 0, 0, 0),
            Quaternion::from_ints(m.c, 0, 0, 0),
            Quaternion::from_ints(m.d, 0, 0, 0),
        )
    }
    pub fn mul(&self, o: &QuatMat2) -> QuatMat2 {
        QuatMat2::new(
            self.a.mul(&o.a).add(&self.b.mul(&o.c)),
            self.a.mul(&o.b).add(&self.b.mul(&o.d)),
            self.c.mul(&o.a).add(&self.d.mul(&o.c)),
            self.c.mul(&o.b).add(&self.d.mul(&o.d)),
        )
    }
}

/// Dieudonne determinant `N(ad) + N(bc) - Tr(a cbar d bbar)`, a nonnegative
/// rational.
pub fn dieudonne_det(g: &QuatMat2) -> Rat {
    let n1 = g.a.mul(&g.d).norm();
    let n2 = g.b.mul(&g.c).norm();
    let t = g.a.mul(&g.c.conj()).mul(&g.d).mul(&g.b.conj()).trace();
    n1 + n2 - t
}

/// Largest real root of `2x^3 - c1 x^2 + 2(c2 c3 - 1)x + (c1 - c2^2 - c3^2)`
/// where `c1 = N(a+d) + Tr(ad - bc)`, `c2 = Tr(a+d)/2`,
/// `c3 = Tr((ad-bc) abar + (da-cb) dbar)/2`. Requires Dieudonne det 1;
/// always `>= 1` there, and `> 1` exactly for the loxodromic elements.
pub fn x_gamma(g: &QuatMat2) -> Result<f64> {
    let det = dieudonne_det(g);
    if det != Rat::one() {
        return Err(Error::NotUnimodular(*det.numer() / *det.denom()));
    }
    let s = g.a.add(&g.d);
    let adbc = g.a.mul(&g.d).sub(&g.b.mul(&g.c));
    let dacb = g.d.mul(&g.a).sub(&g.c.mul(&g.b));
    let two = Rat::from_integer(2);
    let c1 = s.norm() + adbc.trace();
    let c2 = s.trace() / two;
    let c3 = adbc.mul(&g.a.conj()).add(&dacb.mul(&g.d.conj())).trace() / two;
    Ok(largest_real_root_cubic(
        two,
        -c1,
        two * (c2 * c3 - Rat::one()),
        c1 - c2 * c2 - c3 * c3,
    ))
}

/// Translation length in hyperbolic 5-space: `|ln |X + sqrt(X^2 - 1)||`.
pub fn translation_length_h5(g: &QuatMat2) -> Result<f64> {
    let x = x_gamma(g)?;
    if x <= 1.0 {
        return Ok(0.0);
    }
    Ok((x + (x * x - 1.0).sqrt()).ln().abs())
}

/// Largest real root of `a3 x^3 + a2 x^2 + a1 x + a0` with rational
/// coefficients and `a3 > 0`, to absolute accuracy better than 1e-12.
///
/// The critical points of the cubic split the line into monotone pieces; the
/// exact sign of `f` at the right critical point (a linear-in-`sqrt(delta)`
/// expression, decided in integer arithmetic) tells which piece carries the
/// largest root. Bisection then runs with exact rational sign evaluations,
/// which keeps multiple roots (the elliptic and parabolic cases) honest where
/// floating-point evaluation loses all significance.
fn largest_real_root_cubic(a3: Rat, a2: Rat, a1: Rat, a0: Rat) -> f64 {
    use num::BigRational;
    let big = |r: Rat| {
        BigRational::new(
            num::BigInt::from(*r.numer()),
            num::BigInt::from(*r.denom()),
        )
    };
    let (b3, b2, b1, b0) = (big(a3), big(a2), big(a1), big(a0));
    let eval = |x: &BigRational| ((&b3 * x + &b2) * x + &b1) * x + &b0;
    let sgn = |x: &BigRational| -> i32 {
        if x.is_zero() {
            0
        } else if x.is_positive() {
            1
        } else {
            -1
        }
    };
    let brf = |x: &BigRational| -> f64 {
        let n = x.numer();
        let d = x.denom();
        let nf = n.to_string().parse::<f64>().unwrap_or(0.0);
        let df = d.to_string().parse::<f64>().unwrap_or(1.0);
        nf / df
    };
    // Cauchy bound on all real roots
    let bound = {
        let m = [rf(a0).abs(), rf(a1).abs(), rf(a2).abs()]
            .into_iter()
            .fold(0.0f64, f64::max);
        (1.0 + m / rf(a3)).ceil() as i128 + 1
    };
    let bisect = |mut lo: BigRational, mut hi: BigRational| -> f64 {
        debug_assert!(sgn(&eval(&lo)) <= 0 && sgn(&eval(&hi)) > 0);
        for _ in 0..90 {
            let mid = (&lo + &hi) / BigRational::from_integer(2.into());
            if sgn(&eval(&mid)) <= 0 {
                lo = mid;
            } else {
                hi = mid;
            }
            if brf(&(&hi - &lo)) < 1e-13 {
                break;
            }
        }
        brf(&lo)
    };
    let lo_b = BigRational::from_integer((-bound).into());
    let hi_b = BigRational::from_integer(bound.into());
    // f' = 3 a3 x^2 + 2 a2 x + a1, critical points where delta > 0
    let delta = big(Rat::from_integer(4) * a2 * a2 - Rat::from_integer(12) * a3 * a1);
    if sgn(&delta) <= 0 {
        // monotone (up to an inflection): unique real root
        return bisect(lo_b, hi_b);
    }
    // remainder of f mod f' is linear: r(x) = alpha x + beta
    // f = f' * (x/3 + a2/(9 a3)) + r
    let alpha = &b1 * BigRational::new(2.into(), 3.into())
        - &b2 * &b2 * BigRational::new(2.into(), 9.into()) / &b3;
    let beta = &b0 - &b2 * &b1 * BigRational::new(1.into(), 9.into()) / &b3;
    // sign of f at the right critical point x+ = (-2a2 + sqrt(delta))/(6a3):
    // r(x+) = (alpha/(6a3)) sqrt(delta) + (beta - alpha a2/(3 a3))
    let lin_a = &alpha / (BigRational::from_integer(6.into()) * &b3);
    let lin_b = &beta - &alpha * &b2 / (BigRational::from_integer(3.into()) * &b3);
    let s_plus = {
        let (sa, sb) = (sgn(&lin_a), sgn(&lin_b));
        if sa == 0 {
            sb
        } else if sb == 0 || sa == sb {
            sa
        } else {
            let lhs = &lin_a * &lin_a * &delta;
            let rhs = &lin_b * &lin_b;
            match lhs.cmp(&rhs) {
                std::cmp::Ordering::Greater => sa,
                std::cmp::Ordering::Less => sb,
                std::cmp::Ordering::Equal => 0,
            }
        }
    };
    // x+ in floating point (then polished on f', where it is a simple root)
    let x_plus = {
        let d = brf(&delta).max(0.0).sqrt();
        let mut x = (-2.0 * rf(a2) + d) / (6.0 * rf(a3));
        for _ in 0..4 {
            let fp = (3.0 * rf(a3) * x + 2.0 * rf(a2)) * x + rf(a1);
            let fpp = 6.0 * rf(a3) * x + 2.0 * rf(a2);
            if fpp.abs() > 1e-300 {
                x -= fp / fpp;
            }
        }
        x
    };
    if s_plus > 0 {
        // local minimum above the axis: unique real root, left of it
        return bisect(lo_b, hi_b);
    }
    if s_plus == 0 {
        // the local minimum is a double root and nothing lies beyond it
        return x_plus;
    }
    // largest root is the simple crossing right of x+; find an exact-sign
    // left bracket just above x+ (dyadic nudges; a miss below 2^-44 means the
    // crossing is within tolerance of x+ itself)
    let mut step = BigRational::from_integer(1.into());
    let x_plus_lo = BigRational::new(
        num::BigInt::from((x_plus * 1e15).floor() as i128),
        num::BigInt::from(1_000_000_000_000_000i128),
    );
    for _ in 0..60 {
        let cand = &x_plus_lo + &step;
        if sgn(&eval(&cand)) <= 0 {
            return bisect(cand, hi_b);
        }
        step /= BigRational::from_integer(2.into());
        if brf(&step) < 2.0f64.powi(-44) {
            break;
        }
    }
    x_plus
}
