//! Arithmetic in an imaginary quadratic field `K = Q(sqrt(D_K))`.
//!
//! Integers are written over the canonical basis `{1, omega}` with
//! `omega = sqrt(D_K)/2` when `D_K = 0 mod 4` and `omega = (1+sqrt(D_K))/2`
//! when `D_K = 1 mod 4`. Fractional ideals are stored as a positive
//! denominator together with the column Hermite normal form of an integral
//! lattice, which makes ideal equality a structural comparison.

use std::cmp::Ordering;

use num::Zero;

use crate::arith::{gcd_i128, kronecker, xgcd_i128, Rat};
use crate::{Error, Result};

/// Is `d` a fundamental discriminant of an imaginary quadratic field?
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d >= 0 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => {
            let mut m = -d;
            let mut p = 2;
            while p * p <= m {
                if m % (p * p) == 0 {
                    return false;
                }
                while m % p == 0 {
                    m /= p;
                }
                p += 1;
            }
            true
        }
        0 => {
            let m = d / 4;
            // m = 2 or 3 mod 4 and m squarefree
            if m.rem_euclid(4) != 2 && m.rem_euclid(4) != 3 {
                return false;
            }
            let mut n = -m;
            let mut p = 2i64;
            while p * p <= n {
                if n % (p * p) == 0 {
                    return false;
                }
                while n % p == 0 {
                    n /= p;
                }
                p += 1;
            }
            true
        }
        _ => false,
    }
}

/// An element `x + y omega` of `O_K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadInt {
    pub d: i64,
    pub x: i128,
    pub y: i128,
}

impl QuadInt {
    pub fn new(d: i64, x: i128, y: i128) -> Self {
        debug_assert!(is_fundamental_discriminant(d), "D_K = {d} not fundamental");
        QuadInt { d, x, y }
    }
    pub fn zero(d: i64) -> Self {
        QuadInt::new(d, 0, 0)
    }
    pub fn one(d: i64) -> Self {
        QuadInt::new(d, 1, 0)
    }
    pub fn omega(d: i64) -> Self {
        QuadInt::new(d, 0, 1)
    }
    pub fn from_int(d: i64, n: i128) -> Self {
        QuadInt::new(d, n, 0)
    }
    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0
    }
    fn check(&self, other: &QuadInt) {
        assert_eq!(self.d, other.d, "mismatched D_K: {} vs {}", self.d, other.d);
    }
    pub fn add(&self, o: &QuadInt) -> QuadInt {
        self.check(o);
        QuadInt::new(self.d, self.x + o.x, self.y + o.y)
    }
    pub fn sub(&self, o: &QuadInt) -> QuadInt {
        self.check(o);
        QuadInt::new(self.d, self.x - o.x, self.y - o.y)
    }
    pub fn neg(&self) -> QuadInt {
        QuadInt::new(self.d, -self.x, -self.y)
    }
    pub fn mul(&self, o: &QuadInt) -> QuadInt {
        self.check(o);
        let (x1, y1, x2, y2) = (self.x, self.y, o.x, o.y);
        if self.d % 4 == 0 {
            // omega^2 = D/4
            let m = (self.d / 4) as i128;
            QuadInt::new(self.d, x1 * x2 + m * y1 * y2, x1 * y2 + x2 * y1)
        } else {
            // omega^2 = omega - (1-D)/4
            let c = ((1 - self.d) / 4) as i128;
            QuadInt::new(self.d, x1 * x2 - c * y1 * y2, x1 * y2 + x2 * y1 + y1 * y2)
        }
    }
    pub fn mul_int(&self, n: i128) -> QuadInt {
        QuadInt::new(self.d, self.x * n, self.y * n)
    }
    pub fn conj(&self) -> QuadInt {
        if self.d % 4 == 0 {
            QuadInt::new(self.d, self.x, -self.y)
        } else {
            QuadInt::new(self.d, self.x + self.y, -self.y)
        }
    }
    /// `z zbar >= 0`, zero only at zero.
    pub fn norm(&self) -> i128 {
        if self.d % 4 == 0 {
            let m = (self.d / 4) as i128;
            self.x * self.x - m * self.y * self.y
        } else {
            let c = ((1 - self.d) / 4) as i128;
            self.x * self.x + self.x * self.y + c * self.y * self.y
        }
    }
    pub fn trace(&self) -> i128 {
        if self.d % 4 == 0 {
            2 * self.x
        } else {
            2 * self.x + self.y
        }
    }
    /// Complex embedding with `Im(omega) > 0`.
    pub fn to_complex(&self) -> (f64, f64) {
        let s = (-(self.d as f64)).sqrt();
        if self.d % 4 == 0 {
            (self.x as f64, self.y as f64 * s / 2.0)
        } else {
            (self.x as f64 + self.y as f64 / 2.0, self.y as f64 * s / 2.0)
        }
    }
}

/// A field element of `K`, as rational coordinates over `{1, omega}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KElem {
    pub d: i64,
    pub x: Rat,
    pub y: Rat,
}

impl KElem {
    pub fn new(d: i64, x: Rat, y: Rat) -> Self {
        KElem { d, x, y }
    }
    pub fn from_int(z: &QuadInt) -> Self {
        KElem::new(z.d, Rat::from_integer(z.x), Rat::from_integer(z.y))
    }
    pub fn from_rat(d: i64, q: Rat) -> Self {
        KElem::new(d, q, Rat::zero())
    }
    pub fn zero(d: i64) -> Self {
        KElem::new(d, Rat::zero(), Rat::zero())
    }
    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
    fn check(&self, o: &KElem) {
        assert_eq!(self.d, o.d, "mismatched D_K");
    }
    pub fn add(&self, o: &KElem) -> KElem {
        self.check(o);
        KElem::new(self.d, self.x + o.x, self.y + o.y)
    }
    pub fn sub(&self, o: &KElem) -> KElem {
        self.check(o);
        KElem::new(self.d, self.x - o.x, self.y - o.y)
    }
    pub fn neg(&self) -> KElem {
        KElem::new(self.d, -self.x, -self.y)
    }
    pub fn mul(&self, o: &KElem) -> KElem {
        self.check(o);
        let (x1, y1, x2, y2) = (self.x, self.y, o.x, o.y);
        if self.d % 4 == 0 {
            let m = Rat::from_integer((self.d / 4) as i128);
            KElem::new(self.d, x1 * x2 + m * y1 * y2, x1 * y2 + x2 * y1)
        } else {
            let c = Rat::from_integer(((1 - self.d) / 4) as i128);
            KElem::new(self.d, x1 * x2 - c * y1 * y2, x1 * y2 + x2 * y1 + y1 * y2)
        }
    }
    pub fn conj(&self) -> KElem {
        if self.d % 4 == 0 {
            KElem::new(self.d, self.x, -self.y)
        } else {
            KElem::new(self.d, self.x + self.y, -self.y)
        }
    }
    pub fn norm(&self) -> Rat {
        if self.d % 4 == 0 {
            let m = Rat::from_integer((self.d / 4) as i128);
            self.x * self.x - m * self.y * self.y
        } else {
            let c = Rat::from_integer(((1 - self.d) / 4) as i128);
            self.x * self.x + self.x * self.y + c * self.y * self.y
        }
    }
    pub fn trace(&self) -> Rat {
        if self.d % 4 == 0 {
            self.x + self.x
        } else {
            self.x + self.x + self.y
        }
    }
    pub fn inv(&self) -> Option<KElem> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conj();
        Some(KElem::new(self.d, c.x / n, c.y / n))
    }
    pub fn div(&self, o: &KElem) -> Option<KElem> {
        o.inv().map(|i| self.mul(&i))
    }
    pub fn to_complex(&self) -> (f64, f64) {
        let s = (-(self.d as f64)).sqrt();
        let (x, y) = (rat_f64(self.x), rat_f64(self.y));
        if self.d % 4 == 0 {
            (x, y * s / 2.0)
        } else {
            (x + y / 2.0, y * s / 2.0)
        }
    }
    /// Exact integrality test (lies in `O_K`).
    pub fn to_quadint(&self) -> Option<QuadInt> {
        if self.x.is_integer() && self.y.is_integer() {
            Some(QuadInt::new(self.d, *self.x.numer(), *self.y.numer()))
        } else {
            None
        }
    }
}

pub fn rat_f64(r: Rat) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Unit group of `O_K`: 4 elements for `D_K = -4`, 6 for `D_K = -3`,
/// otherwise `{1, -1}`.
pub fn units(d: i64) -> Vec<QuadInt> {
    let one = QuadInt::one(d);
    let w = QuadInt::omega(d);
    match d {
        -4 => vec![one, w, one.neg(), w.neg()],
        -3 => {
            let w2 = w.mul(&w); // omega - 1
            vec![one, w, w2, one.neg(), w.neg(), w2.neg()]
        }
        _ => vec![one, one.neg()],
    }
}

pub fn unit_count(d: i64) -> u32 {
    match d {
        -4 => 4,
        -3 => 6,
        _ => 2,
    }
}

/// Column HNF of the lattice spanned by integer vectors `(x, y)`:
/// basis `(a, 0), (b, c)` with `a, c > 0` and `0 <= b < a`.
fn hnf_2(gens: &[(i128, i128)]) -> Option<(i128, i128, i128)> {
    let gens: Vec<(i128, i128)> = gens.iter().copied().filter(|g| *g != (0, 0)).collect();
    if gens.is_empty() {
        return None;
    }
    // vector with minimal positive y-coefficient via gcd chaining
    let mut b_vec: Option<(i128, i128)> = None;
    for g in &gens {
        if g.1 == 0 {
            continue;
        }
        b_vec = Some(match b_vec {
            None => *g,
            Some(bv) => {
                let (_, s, t) = xgcd_i128(bv.1, g.1);
                (s * bv.0 + t * g.0, s * bv.1 + t * g.1)
            }
        });
    }
    match b_vec {
        Some(bv) => {
            let bv = if bv.1 < 0 { (-bv.0, -bv.1) } else { bv };
            let c = bv.1;
            let mut a = 0i128;
            for g in &gens {
                debug_assert_eq!(g.1 % c, 0);
                let k = g.1 / c;
                a = gcd_i128(a, g.0 - k * bv.0);
            }
            if a == 0 {
                return None; // rank 1
            }
            let b = bv.0.rem_euclid(a);
            Some((a, b, c))
        }
        None => None, // all gens on the rational axis: rank 1
    }
}

/// A fractional ideal of `O_K`: `(1/den) * L` with `L` integral in HNF.
/// Stored in lowest terms, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QIdeal {
    pub d: i64,
    pub den: i128,
    /// HNF columns `(a, 0)` and `(b, c)` over `{1, omega}`.
    pub a: i128,
    pub b: i128,
    pub c: i128,
}

impl QIdeal {
    fn reduced(d: i64, den: i128, a: i128, b: i128, c: i128) -> QIdeal {
        let g = gcd_i128(gcd_i128(a, c), gcd_i128(b, den));
        let (den, a, c) = (den / g, a / g, c / g);
        let b = (b / g).rem_euclid(a);
        QIdeal { d, den, a, b, c }
    }

    /// The ring `O_K` itself.
    pub fn ring(d: i64) -> QIdeal {
        QIdeal { d, den: 1, a: 1, b: 0, c: 1 }
    }

    /// O_K-module generated by `gens / den`.
    pub fn from_gens(gens: &[QuadInt], den: i128) -> Result<QIdeal> {
        if gens.is_empty() || gens.iter().all(|g| g.is_zero()) {
            return Err(Error::EmptyGenerators);
        }
        let d = gens[0].d;
        let w = QuadInt::omega(d);
        let mut zgens = Vec::with_capacity(2 * gens.len());
        for g in gens {
            zgens.push((g.x, g.y));
            let gw = g.mul(&w);
            zgens.push((gw.x, gw.y));
        }
        let (a, b, c) = hnf_2(&zgens).ok_or(Error::ZeroIdeal)?;
        Ok(QIdeal::reduced(d, den.abs(), a, b, c))
    }

    pub fn principal(z: &QuadInt) -> Result<QIdeal> {
        QIdeal::from_gens(std::slice::from_ref(z), 1)
    }

    pub fn is_integral(&self) -> bool {
        self.den == 1
    }

    /// Multiply by the denominator: an integral ideal in the same class.
    pub fn integralized(&self) -> QIdeal {
        QIdeal { den: 1, ..self.clone() }
    }

    pub fn norm(&self) -> Rat {
        Rat::new(self.a * self.c, self.den * self.den)
    }

    pub fn basis(&self) -> (QuadInt, QuadInt) {
        (
            QuadInt::new(self.d, self.a, 0),
            QuadInt::new(self.d, self.b, self.c),
        )
    }

    /// Does the integral element `z` lie in this ideal?
    pub fn contains(&self, z: &QuadInt) -> bool {
        assert_eq!(z.d, self.d);
        // z * den must lie in the integral lattice
        let zx = z.x * self.den;
        let zy = z.y * self.den;
        if zy % self.c != 0 {
            return false;
        }
        let t = zy / self.c;
        (zx - t * self.b) % self.a == 0
    }

    pub fn sum(&self, o: &QIdeal) -> QIdeal {
        assert_eq!(self.d, o.d);
        let l = num::integer::lcm(self.den, o.den);
        let (s1, s2) = (l / self.den, l / o.den);
        let gens = [
            (self.a * s1, 0),
            (self.b * s1, self.c * s1),
            (o.a * s2, 0),
            (o.b * s2, o.c * s2),
        ];
        let (a, b, c) = hnf_2(&gens).expect("sum of nonzero ideals");
        QIdeal::reduced(self.d, l, a, b, c)
    }

    pub fn product(&self, o: &QIdeal) -> QIdeal {
        assert_eq!(self.d, o.d);
        let (b1, b2) = self.basis();
        let (c1, c2) = o.basis();
        let mut gens = Vec::with_capacity(8);
        let w = QuadInt::omega(self.d);
        for u in [&b1, &b2] {
            for v in [&c1, &c2] {
                let p = u.mul(v);
                gens.push((p.x, p.y));
                let pw = p.mul(&w);
                gens.push((pw.x, pw.y));
            }
        }
        let (a, b, c) = hnf_2(&gens).expect("product of nonzero ideals");
        QIdeal::reduced(self.d, self.den * o.den, a, b, c)
    }

    pub fn conj_ideal(&self) -> QIdeal {
        let (b1, b2) = self.basis();
        let gens = [b1.conj(), b2.conj()];
        let q = QIdeal::from_gens(&gens, 1).expect("conjugate ideal");
        QIdeal::reduced(q.d, self.den, q.a, q.b, q.c)
    }

    /// Scale by an integral element — stays in the same ideal class.
    pub fn scale(&self, z: &QuadInt) -> QIdeal {
        let (b1, b2) = self.basis();
        let gens = [b1.mul(z), b2.mul(z)];
        let q = QIdeal::from_gens(&gens, 1).expect("scaled ideal");
        QIdeal::reduced(q.d, self.den, q.a, q.b, q.c)
    }
}

/// Coset representatives of `m / sub` for integral ideals `sub` inside `m`.
/// Exactly `norm(sub)/norm(m)` elements are returned.
pub fn ideal_residues(m: &QIdeal, sub: &QIdeal) -> Result<Vec<QuadInt>> {
    assert!(m.is_integral() && sub.is_integral(), "integral ideals only");
    assert_eq!(m.d, sub.d);
    // transition matrix T with sub_cols = m_cols * T must be integral
    if sub.c % m.c != 0 {
        return Err(Error::NotASubIdeal);
    }
    let t11 = sub.c / m.c;
    if (sub.b - t11 * m.b) % m.a != 0 {
        return Err(Error::NotASubIdeal);
    }
    if sub.a % m.a != 0 {
        return Err(Error::NotASubIdeal);
    }
    let t00 = sub.a / m.a;
    let (b1, b2) = m.basis();
    let mut out = Vec::with_capacity((t00 * t11) as usize);
    for i in 0..t00 {
        for j in 0..t11 {
            out.push(b1.mul_int(i).add(&b2.mul_int(j)));
        }
    }
    Ok(out)
}

/// `phi_K(a) = Card (O_K / a)^x` for an integral nonzero ideal.
pub fn euler_phi_k(a: &QIdeal) -> Result<u64> {
    if !a.is_integral() {
        return Err(Error::NotASubIdeal);
    }
    let ring = QIdeal::ring(a.d);
    let res = ideal_residues(&ring, a)?;
    let mut count = 0;
    for u in &res {
        if u.is_zero() {
            if a == &ring {
                count += 1; // the ring has the single residue 0 = 1
            }
            continue;
        }
        let s = QIdeal::principal(u)?.sum(a);
        if s == ring {
            count += 1;
        }
    }
    Ok(count)
}

/// All elements of the integral ideal `m` with norm at most `bound`,
/// including 0, sorted by norm then coordinates.
pub fn elements_of_norm_up_to(m: &QIdeal, bound: Rat) -> Vec<QuadInt> {
    assert!(m.is_integral());
    if bound < Rat::zero() {
        return Vec::new();
    }
    let (b1, b2) = m.basis();
    // norm on coordinates (s, t): A s^2 + B s t + C t^2, positive definite
    let a = b1.norm();
    let c = b2.norm();
    let b = b1.mul(&b2.conj()).trace();
    let det4 = 4 * a * c - b * b;
    debug_assert!(det4 > 0);
    let tb = bound * Rat::from_integer(4 * a);
    let tmax = rat_isqrt_floor(tb / Rat::from_integer(det4));
    let mut out = Vec::new();
    for t in -tmax..=tmax {
        // A s^2 + (B t) s + (C t^2 - bound) <= 0
        let disc = Rat::from_integer(b * b * t * t)
            - Rat::from_integer(4 * a) * (Rat::from_integer(c * t * t) - bound);
        if disc < Rat::zero() {
            continue;
        }
        let sq = rat_f64(disc).max(0.0).sqrt();
        let mid = -(b as f64) * t as f64;
        let lo = ((mid - sq) / (2.0 * a as f64)).floor() as i128 - 1;
        let hi = ((mid + sq) / (2.0 * a as f64)).ceil() as i128 + 1;
        for s in lo..=hi {
            let z = b1.mul_int(s).add(&b2.mul_int(t));
            if Rat::from_integer(z.norm()) <= bound {
                out.push(z);
            }
        }
    }
    out.sort_by(|p, q| {
        p.norm()
            .cmp(&q.norm())
            .then(p.x.cmp(&q.x))
            .then(p.y.cmp(&q.y))
    });
    out
}

fn rat_isqrt_floor(r: Rat) -> i128 {
    if r < Rat::zero() {
        return -1;
    }
    let f = rat_f64(r).sqrt();
    let mut k = f as i128;
    while Rat::from_integer((k + 1) * (k + 1)) <= r {
        k += 1;
    }
    while k > 0 && Rat::from_integer(k * k) > r {
        k -= 1;
    }
    k
}

/// Outcome of a certified principality search.
#[derive(Debug, Clone, PartialEq)]
pub enum Principality {
    Yes(KElem),
    No,
    Inconclusive,
}

/// Is the ideal principal? Scans the full norm ball of the integralized
/// ideal, so a `No` is certified; `Inconclusive` only when the forced scan
/// bound exceeds `search_bound`.
pub fn ideal_is_principal(a: &QIdeal, search_bound: i128) -> Principality {
    let ai = a.integralized();
    let target = ai.norm();
    debug_assert!(target.is_integer());
    if target.numer() > &search_bound {
        return Principality::Inconclusive;
    }
    for z in elements_of_norm_up_to(&ai, target) {
        if z.is_zero() {
            continue;
        }
        if Rat::from_integer(z.norm()) == target {
            if let Ok(p) = QIdeal::principal(&z) {
                if p == ai {
                    let g = KElem::new(a.d, Rat::new(z.x, a.den), Rat::new(z.y, a.den));
                    return Principality::Yes(g);
                }
            }
        }
    }
    Principality::No
}

/// Are `a` and `b` in the same ideal class? Decided through principality of
/// `a * conj(b)` (as `b * conj(b)` is principal).
pub fn ideal_class_equal(a: &QIdeal, b: &QIdeal, search_bound: i128) -> Principality {
    let prod = a.product(&b.conj_ideal());
    ideal_is_principal(&prod, search_bound)
}

/// Canonical residue of `z` modulo the integral ideal `c` (HNF box).
pub fn reduce_mod(z: &QuadInt, c: &QIdeal) -> QuadInt {
    debug_assert!(c.is_integral());
    let t = z.y.div_euclid(c.c);
    let x = z.x - t * c.b;
    let y = z.y - t * c.c;
    let s = x.div_euclid(c.a);
    QuadInt::new(z.d, x - s * c.a, y)
}

/// Smallest `k >= 1` such that the `2k`-th Fibonacci number lies in the
/// integral ideal `c`, found by iterating Fibonacci pairs modulo `c`.
/// The iteration is capped at `6 norm(c)^2` steps.
pub fn fib_index_kc(c: &QIdeal) -> Result<u64> {
    assert!(c.is_integral());
    let n = *c.norm().numer();
    let cap = (6 * n * n) as u64;
    let d = c.d;
    let mut f_prev = reduce_mod(&QuadInt::one(d), c); // F_1
    let mut f_cur = reduce_mod(&QuadInt::one(d), c); // F_2
    let mut idx = 2u64;
    loop {
        if idx % 2 == 0 && f_cur.is_zero() {
            return Ok(idx / 2);
        }
        if idx > cap {
            return Err(Error::IterationCap { cap });
        }
        let nxt = reduce_mod(&f_prev.add(&f_cur), c);
        f_prev = f_cur;
        f_cur = nxt;
        idx += 1;
    }
}

/// Norm-Euclidean fields, where rounding division always reduces the norm.
pub fn is_euclidean(d: i64) -> bool {
    matches!(d, -3 | -4 | -7 | -8 | -11)
}

/// Rounded division `a / b` in a norm-Euclidean field: the remainder
/// `a - q b` has norm strictly less than `norm(b)`.
pub fn div_round(a: &QuadInt, b: &QuadInt) -> QuadInt {
    debug_assert!(is_euclidean(a.d));
    debug_assert!(!b.is_zero());
    let n = b.norm();
    let t = a.mul(&b.conj()); // a / b = t / n
    let round = |num: i128| -> i128 {
        num.div_euclid(n) + if 2 * num.rem_euclid(n) >= n { 1 } else { 0 }
    };
    QuadInt::new(a.d, round(t.x), round(t.y))
}

/// Extended gcd in a norm-Euclidean field: `(g, s, t)` with `s a + t b = g`.
pub fn xgcd_quad(a: &QuadInt, b: &QuadInt) -> (QuadInt, QuadInt, QuadInt) {
    let d = a.d;
    let (mut r0, mut r1) = (*a, *b);
    let (mut s0, mut s1) = (QuadInt::one(d), QuadInt::zero(d));
    let (mut t0, mut t1) = (QuadInt::zero(d), QuadInt::one(d));
    while !r1.is_zero() {
        let q = div_round(&r0, &r1);
        let r2 = r0.sub(&q.mul(&r1));
        debug_assert!(r2.norm() < r1.norm());
        r0 = r1;
        r1 = r2;
        let s2 = s0.sub(&q.mul(&s1));
        s0 = s1;
        s1 = s2;
        let t2 = t0.sub(&q.mul(&t1));
        t0 = t1;
        t1 = t2;
    }
    (r0, s0, t0)
}

/// The distinct prime ideals of `O_K` above the rational prime `p`.
pub fn prime_ideals_above(d: i64, p: i64) -> Vec<QIdeal> {
    let sym = kronecker(d as i128, p as i128);
    let pz = QuadInt::from_int(d, p as i128);
    if sym == -1 {
        return vec![QIdeal::principal(&pz).expect("inert prime")];
    }
    let mut out: Vec<QIdeal> = Vec::new();
    for r in 0..p as i128 {
        let z = QuadInt::new(d, r, 1);
        if z.norm() % (p as i128) == 0 {
            let ideal = QIdeal::from_gens(&[pz, z], 1).expect("prime above p");
            if *ideal.norm().numer() == p as i128 && !out.contains(&ideal) {
                out.push(ideal);
            }
        }
    }
    out
}

/// Index of the Hecke congruence subgroup of level `c` (an integral ideal):
/// `n(c) prod_{p | c} (1 + 1/n(p))` over the distinct prime ideals dividing c.
pub fn hecke_index_k(c: &QIdeal) -> Result<i128> {
    assert!(c.is_integral());
    let n = *c.norm().numer();
    let mut idx = Rat::from_integer(n);
    let mut seen: Vec<QIdeal> = Vec::new();
    for p in crate::arith::prime_factors(n as u64) {
        for pr in prime_ideals_above(c.d, p as i64) {
            let (b1, b2) = c.basis();
            if pr.contains(&b1) && pr.contains(&b2) && !seen.contains(&pr) {
                let np = *pr.norm().numer();
                idx *= Rat::new(np + 1, np);
                seen.push(pr);
            }
        }
    }
    debug_assert!(idx.is_integer());
    Ok(*idx.numer())
}

/// Index of the Hecke congruence subgroup of level `n` over the rationals:
/// `n prod_{p | n} (1 + 1/p)`.
pub fn hecke_index_q(n: i128) -> i128 {
    assert!(n > 0);
    let mut idx = Rat::from_integer(n);
    for p in crate::arith::prime_factors(n as u64) {
        idx *= Rat::new(p as i128 + 1, p as i128);
    }
    *idx.numer()
}

/// Deterministic ordering helper for element lists.
pub fn cmp_coords(a: &QuadInt, b: &QuadInt) -> Ordering {
    a.x.cmp(&b.x).then(a.y.cmp(&b.y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadint_basics() {
        // D = -4: omega = i
        let z = QuadInt::new(-4, 1, 1);
        assert_eq!(z.norm(), 2);
        assert_eq!(z.trace(), 2);
        // D = -3: omega = (1+sqrt(-3))/2, trace 1
        let w = QuadInt::omega(-3);
        assert_eq!(w.trace(), 1);
        assert_eq!(w.norm(), 1);
        for &(x, y) in &[(2i128, 3i128), (-1, 4), (0, 7)] {
            for &d in &[-3i64, -4, -7, -8, -11, -20] {
                let z = QuadInt::new(d, x, y);
                assert_eq!(z.conj().conj(), z);
                assert_eq!(z.conj().norm(), z.norm());
                assert_eq!(z.mul(&z.conj()).x, z.norm());
                assert_eq!(z.mul(&z.conj()).y, 0);
            }
        }
    }

    #[test]
    fn norm_multiplicative() {
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            seed = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((seed >> 33) as i128 % 20) - 10
        };
        for &d in &[-4i64, -3, -20, -7] {
            for _ in 0..100 {
                let z = QuadInt::new(d, next(), next());
                let w = QuadInt::new(d, next(), next());
                assert_eq!(z.mul(&w).norm(), z.norm() * w.norm());
            }
        }
    }

    #[test]
    fn units_table() {
        assert_eq!(units(-4).len(), 4);
        assert_eq!(units(-3).len(), 6);
        assert_eq!(units(-7).len(), 2);
        for &d in &[-3i64, -4, -7] {
            for u in units(d) {
                assert_eq!(u.norm(), 1);
            }
        }
    }

    #[test]
    fn ideal_hnf_and_norms() {
        // (2, 1+sqrt(-5)) in Q(sqrt(-5)), D = -20, omega = sqrt(-5)
        let d = -20;
        let p2 = QIdeal::from_gens(&[QuadInt::from_int(d, 2), QuadInt::new(d, 1, 1)], 1).unwrap();
        assert_eq!(p2.norm(), Rat::from_integer(2));
        // HNF canonicity: another generating set of the same ideal
        // (3 + omega = 2 + (1 + omega), and (3 + omega) - 2 recovers 1 + omega)
        let alt = QIdeal::from_gens(
            &[
                QuadInt::from_int(d, 2),
                QuadInt::new(d, 3, 1),
                QuadInt::new(d, 2, 2),
            ],
            1,
        )
        .unwrap();
        assert_eq!(p2, alt);
        assert_eq!(p2.sum(&p2), p2);
        // norm multiplicativity on products
        let p3 = QIdeal::from_gens(&[QuadInt::from_int(d, 3), QuadInt::new(d, 1, 1)], 1).unwrap();
        let prod = p2.product(&p3);
        assert_eq!(prod.norm(), Rat::from_integer(6));
        // O_K-module closure: omega * basis stays inside
        let (b1, b2) = p2.basis();
        let w = QuadInt::omega(d);
        assert!(p2.contains(&b1.mul(&w)));
        assert!(p2.contains(&b2.mul(&w)));
    }

    #[test]
    fn principality() {
        let two = QIdeal::principal(&QuadInt::from_int(-4, 2)).unwrap();
        match ideal_is_principal(&two, 100) {
            Principality::Yes(g) => assert_eq!(g.norm(), Rat::from_integer(4)),
            other => panic!("expected principal, got {other:?}"),
        }
        let d = -20;
        let p2 = QIdeal::from_gens(&[QuadInt::from_int(d, 2), QuadInt::new(d, 1, 1)], 1).unwrap();
        assert_eq!(ideal_is_principal(&p2, 100), Principality::No);
        // class invariance under principal multipliers
        let m = p2.scale(&QuadInt::new(d, 1, 1));
        match ideal_class_equal(&p2, &m, 1000) {
            Principality::Yes(_) => {}
            other => panic!("expected same class, got {other:?}"),
        }
    }

    #[test]
    fn residues_and_phi_k() {
        let ring = QIdeal::ring(-4);
        let onei = QIdeal::principal(&QuadInt::new(-4, 1, 1)).unwrap();
        assert_eq!(ideal_residues(&ring, &onei).unwrap().len(), 2);
        let two = QIdeal::principal(&QuadInt::from_int(-4, 2)).unwrap();
        assert_eq!(ideal_residues(&ring, &two).unwrap().len(), 4);
        assert_eq!(euler_phi_k(&onei).unwrap(), 1);
        assert_eq!(euler_phi_k(&ring).unwrap(), 1);
        assert_eq!(euler_phi_k(&two).unwrap(), 2);
        // error path: sub not inside m
        let five = QIdeal::principal(&QuadInt::from_int(-4, 5)).unwrap();
        assert!(ideal_residues(&five, &two).is_err());
    }

    #[test]
    fn phi_k_multiplicative_on_coprime() {
        let a = QIdeal::principal(&QuadInt::new(-4, 1, 1)).unwrap();
        let b = QIdeal::principal(&QuadInt::from_int(-4, 3)).unwrap();
        assert_eq!(a.sum(&b), QIdeal::ring(-4));
        let prod = a.product(&b);
        assert_eq!(
            euler_phi_k(&prod).unwrap(),
            euler_phi_k(&a).unwrap() * euler_phi_k(&b).unwrap()
        );
        // index identity [O_K : vO_K] = n(v)
        for &(x, y) in &[(1i128, 1i128), (2, 1), (3, 2), (0, 2)] {
            let v = QuadInt::new(-4, x, y);
            let vi = QIdeal::principal(&v).unwrap();
            let res = ideal_residues(&QIdeal::ring(-4), &vi).unwrap();
            assert_eq!(res.len() as i128, v.norm());
        }
    }

    #[test]
    fn norm_ball() {
        let ring = QIdeal::ring(-4);
        let b1 = elements_of_norm_up_to(&ring, Rat::from_integer(1));
        assert_eq!(b1.len(), 5); // 0, +-1, +-i
        let b2 = elements_of_norm_up_to(&ring, Rat::from_integer(2));
        assert_eq!(b2.len(), 9);
        // Gauss circle sanity: count ~ pi * bound / covol(O_K)
        let bound = 5000;
        let bn = elements_of_norm_up_to(&ring, Rat::from_integer(bound));
        let expect = std::f64::consts::PI * bound as f64;
        assert!((bn.len() as f64 / expect - 1.0).abs() < 0.05);
    }

    #[test]
    fn fibonacci_ideal_index() {
        let two = QIdeal::principal(&QuadInt::from_int(-4, 2)).unwrap();
        assert_eq!(fib_index_kc(&two).unwrap(), 3); // F_6 = 8
        let three = QIdeal::principal(&QuadInt::from_int(-4, 3)).unwrap();
        assert_eq!(fib_index_kc(&three).unwrap(), 2); // F_4 = 3
        assert_eq!(fib_index_kc(&QIdeal::ring(-4)).unwrap(), 1); // F_2 = 1
    }

    #[test]
    fn euclidean_xgcd() {
        for &d in &[-3i64, -4, -7, -8, -11] {
            let a = QuadInt::new(d, 7, 3);
            let b = QuadInt::new(d, 2, 5);
            let (g, s, t) = xgcd_quad(&a, &b);
            assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        }
    }

    #[test]
    fn hecke_indices() {
        assert_eq!(hecke_index_q(4), 6);
        assert_eq!(hecke_index_q(1), 1);
        // level (1+i) in Q(i): n = 2, index 3
        let onei = QIdeal::principal(&QuadInt::new(-4, 1, 1)).unwrap();
        assert_eq!(hecke_index_k(&onei).unwrap(), 3);
        assert_eq!(hecke_index_k(&QIdeal::ring(-4)).unwrap(), 1);
    }

    #[test]
    fn prime_splitting() {
        // 5 splits in Z[i], 3 is inert, 2 ramifies
        assert_eq!(prime_ideals_above(-4, 5).len(), 2);
        assert_eq!(prime_ideals_above(-4, 3).len(), 1);
        assert_eq!(*prime_ideals_above(-4, 3)[0].norm().numer(), 9);
        assert_eq!(prime_ideals_above(-4, 2).len(), 1);
        assert_eq!(*prime_ideals_above(-4, 2)[0].norm().numer(), 2);
    }
}
