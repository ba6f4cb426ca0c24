//! Elementary number theory shared by every other module: Kronecker symbols,
//! Euler's totient and its summatory function, certified values of `zeta(s)`
//! and `L(s, chi_D)`, fundamental solutions of `t^2 - D u^2 = 4`, and
//! automorph matrices of indefinite binary quadratic forms.
//!
//! All integer arithmetic here is exact; floating point only enters for the
//! final value of a regulator or an L-series, and those carry a guaranteed
//! absolute error bound.

use num::bigint::BigInt;
use num::rational::Ratio;
use num::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

pub type Rat = Ratio<i128>;

pub fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended gcd: returns `(g, x, y)` with `x*a + y*b = g >= 0`.
pub fn xgcd_i128(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            return (-a, -1, 0);
        }
        return (a, 1, 0);
    }
    let (g, x, y) = xgcd_i128(b, a % b);
    (g, y, x - (a / b) * y)
}

/// Floor of the square root of a nonnegative integer.
pub fn isqrt(n: i128) -> i128 {
    if n < 0 {
        panic!("isqrt of negative number");
    }
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as i128;
    while x > 0 && x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

pub fn is_square(n: i128) -> bool {
    n >= 0 && {
        let r = isqrt(n);
        r * r == n
    }
}

/// Is the rational `q` a square in `Q`?
pub fn is_square_rat(q: Rat) -> bool {
    !q.is_negative() && is_square(*q.numer()) && is_square(*q.denom())
}

/// Kronecker symbol `(a|n)`, the completely multiplicative extension of the
/// Legendre symbol. Used as the quadratic character `chi_D = (D|.)` attached
/// to a fundamental discriminant `D`.
pub fn kronecker(a: i128, n: i128) -> i32 {
    let (mut a, mut n) = (a, n);
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    if a % 2 == 0 && n % 2 == 0 {
        return 0;
    }
    // strip factors of 2 from n using (a|2)
    let mut result = 1i32;
    let mut v = 0;
    while n % 2 == 0 {
        n /= 2;
        v += 1;
    }
    if v % 2 == 1 {
        match a.rem_euclid(8) {
            1 | 7 => {}
            3 | 5 => result = -result,
            _ => return 0,
        }
    }
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    // n is now odd and positive: quadratic reciprocity loop
    a = a.rem_euclid(n);
    while a != 0 {
        let mut v2 = 0;
        while a % 2 == 0 {
            a /= 2;
            v2 += 1;
        }
        if v2 % 2 == 1 && (n % 8 == 3 || n % 8 == 5) {
            result = -result;
        }
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        let t = a;
        a = n % t;
        n = t;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// `phi(n) = Card (Z/nZ)^x` by trial-division factorization.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi needs n >= 1");
    let mut r = n;
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            r -= r / p;
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        r -= r / m;
    }
    r
}

/// Summatory totient `Phi(n) = sum_{k<=n} phi(k)`, via a phi sieve.
pub fn phi_summatory(n: u64) -> u64 {
    phi_table(n).iter().skip(1).sum()
}

/// Sieve of `phi(0..=n)`; `phi[0] = 0`.
pub fn phi_table(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut phi: Vec<u64> = (0..=n as u64).collect();
    for p in 2..=n {
        if phi[p] == p as u64 {
            // p prime
            let mut k = p;
            while k <= n {
                phi[k] -= phi[k] / p as u64;
                k += p;
            }
        }
    }
    phi
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// An L-series value with a certified absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LValue {
    /// Fundamental discriminant of the character, or 1 for `zeta`.
    pub d: i64,
    pub s: u32,
    pub value: f64,
    /// Guaranteed bound on `|value - exact|`.
    pub tol: f64,
}

/// `zeta(s)` for `s in {2, 3}` by direct summation. The tail past `N` is
/// sandwiched between the integrals over `[N, oo)` and `[N+1, oo)`; taking
/// their mean leaves an error of at most `N^-s / 2`.
pub fn riemann_zeta(s: u32, tol: f64) -> Result<LValue> {
    if s != 2 && s != 3 {
        return Err(Error::UnsupportedExponent(s));
    }
    assert!(tol > 0.0);
    let n = ((1.0 / (2.0 * tol)).powf(1.0 / s as f64).ceil() as u64).max(16);
    let mut sum = 0.0f64;
    for k in (1..=n).rev() {
        sum += (k as f64).powi(-(s as i32));
    }
    let sm1 = (s - 1) as f64;
    let tail = ((n as f64).powf(-sm1) + ((n + 1) as f64).powf(-sm1)) / (2.0 * sm1);
    Ok(LValue {
        d: 1,
        s,
        value: sum + tail,
        tol,
    })
}

/// `L(s, chi_D)` for a fundamental discriminant `D` and `s in {2, 3}`.
///
/// Since `chi_D` is non-principal its partial sums are bounded by some `B`
/// (computed exactly over one period), so by Abel summation the tail past `N`
/// is at most `2B (N+1)^-s`.
pub fn dirichlet_l(d: i64, s: u32, tol: f64) -> Result<LValue> {
    if s != 2 && s != 3 {
        return Err(Error::UnsupportedExponent(s));
    }
    assert!(tol > 0.0);
    let period = d.unsigned_abs().max(1);
    let chi: Vec<i32> = (0..period).map(|r| kronecker(d as i128, r as i128)).collect();
    let mut b: i64 = 0;
    let mut run: i64 = 0;
    for &c in &chi {
        run += c as i64;
        b = b.max(run.abs());
    }
    let b = b.max(1) as f64;
    let n = ((2.0 * b / tol).powf(1.0 / s as f64).ceil() as u64).max(16);
    let mut sum = 0.0f64;
    for k in (1..=n).rev() {
        let c = chi[(k % period) as usize];
        if c != 0 {
            sum += c as f64 * (k as f64).powi(-(s as i32));
        }
    }
    Ok(LValue {
        d,
        s,
        value: sum,
        tol,
    })
}

/// `zeta_K(2) = zeta(2) L(2, chi_{D_K})` for an imaginary quadratic field of
/// fundamental discriminant `d_k`.
pub fn zeta_k2(d_k: i64, tol: f64) -> Result<LValue> {
    let sub = tol / 8.0;
    let z = riemann_zeta(2, sub)?;
    let l = dirichlet_l(d_k, 2, sub)?;
    // |zL - z'L'| <= |z||L-L'| + |L'||z-z'| <= 2 sub + 2 sub < tol
    Ok(LValue {
        d: d_k,
        s: 2,
        value: z.value * l.value,
        tol,
    })
}

/// Fundamental solution of the Pell-Fermat equation `t^2 - D u^2 = 4`.
#[derive(Debug, Clone, PartialEq)]
pub struct PellSolution {
    pub d: i128,
    pub t: BigInt,
    pub u: BigInt,
    /// `arccosh(t/2) = ln((t + u sqrt D)/2)`, the regulator of the order of
    /// discriminant `D`.
    pub regulator: f64,
}

/// Natural log of a positive BigInt, stable even when it exceeds f64 range.
fn ln_big(x: &BigInt) -> f64 {
    if let Some(f) = x.to_f64() {
        if f.is_finite() {
            return f.ln();
        }
    }
    let bits = x.bits();
    let top = x >> (bits.saturating_sub(53));
    let t = top.to_f64().unwrap_or(1.0);
    t.ln() + (bits.saturating_sub(53)) as f64 * std::f64::consts::LN_2
}

/// 2x2 integer matrix, column action `(x, y) -> (a x + b y, c x + d y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: i128,
    pub b: i128,
    pub c: i128,
    pub d: i128,
}

impl Mat2 {
    pub fn new(a: i128, b: i128, c: i128, d: i128) -> Self {
        Mat2 { a, b, c, d }
    }
    pub fn identity() -> Self {
        Mat2::new(1, 0, 0, 1)
    }
    pub fn det(&self) -> i128 {
        self.a * self.d - self.b * self.c
    }
    pub fn trace(&self) -> i128 {
        self.a + self.d
    }
    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
    /// Inverse, assuming `det = 1`.
    pub fn inv_unimodular(&self) -> Mat2 {
        debug_assert_eq!(self.det(), 1);
        Mat2::new(self.d, -self.b, -self.c, self.a)
    }
    pub fn neg(&self) -> Mat2 {
        Mat2::new(-self.a, -self.b, -self.c, -self.d)
    }
    pub fn apply(&self, x: i128, y: i128) -> (i128, i128) {
        (self.a * x + self.b * y, self.c * x + self.d * y)
    }
    /// Row action `(c, d) -> (c, d) * M`.
    pub fn apply_row(&self, c: i128, d: i128) -> (i128, i128) {
        (c * self.a + d * self.c, c * self.b + d * self.d)
    }
}

/// One reduction step in the cycle of reduced indefinite forms, returning the
/// successor form and the transition matrix.
fn rho_step(f: (i128, i128, i128), disc: i128) -> ((i128, i128, i128), Mat2) {
    let (_, b, c) = f;
    debug_assert!(c != 0);
    let ca = c.abs();
    let sq = isqrt(disc);
    // r = -b mod 2|c|, shifted into the reduction window
    let mut r = (-b).rem_euclid(2 * ca);
    if ca > sq {
        // want -|c| < r <= |c|
        if r > ca {
            r -= 2 * ca;
        }
    } else {
        // want sqrt(D) - 2|c| < r < sqrt(D): take the largest r below sqrt(D)
        while r > sq {
            r -= 2 * ca;
        }
        while r + 2 * ca <= sq {
            r += 2 * ca;
        }
    }
    let s = (b + r) / (2 * c);
    let c2 = (r * r - disc) / (4 * c);
    ((c, r, c2), Mat2::new(0, -1, 1, s))
}

/// Fundamental automorph of the principal form of discriminant `d`, found by
/// walking once around its cycle of reduced forms. Returns `(t, u)` with
/// `t^2 - d u^2 = 4` minimal in `u`.
fn pell_by_cycle(d: i128) -> (BigInt, BigInt) {
    let b0 = d.rem_euclid(2);
    let mut f = (1i128, b0, (b0 * b0 - d) / 4);
    // reduce until the form repeats; first walk into the cycle
    let mut seen_start: Option<(i128, i128, i128)> = None;
    let mut acc_a = BigInt::one();
    let mut acc_b = BigInt::zero();
    let mut acc_c = BigInt::zero();
    let mut acc_d = BigInt::one();
    for _ in 0..10_000 {
        if seen_start.is_none() {
            let (a, b, _) = f;
            // 0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b, exactly
            let ta = 2 * a.abs();
            let reduced = b > 0
                && b * b < d
                && d < (ta + b) * (ta + b)
                && (ta - b < 0 || (ta - b) * (ta - b) < d);
            if reduced {
                seen_start = Some(f);
            }
        }
        let (nf, m) = rho_step(f, d);
        if seen_start.is_some() {
            let (na, nb, nc, nd) = (
                &acc_a * m.a + &acc_b * m.c,
                &acc_a * m.b + &acc_b * m.d,
                &acc_c * m.a + &acc_d * m.c,
                &acc_c * m.b + &acc_d * m.d,
            );
            acc_a = na;
            acc_b = nb;
            acc_c = nc;
            acc_d = nd;
        }
        f = nf;
        if let Some(start) = seen_start {
            if f == start {
                break;
            }
        }
    }
    // the accumulated matrix M is an automorph of the starting reduced form
    // (a, b, c); the associated Pell solution is t = |tr M|, u = |M_21 / a|
    let start = seen_start.expect("indefinite form cycle not found");
    let t = (&acc_a + &acc_d).abs();
    let u = (&acc_c / BigInt::from(start.0)).abs();
    // the cycle has even length; if the matrix came out with negative trace
    // the absolute values above already normalise it
    (t, u)
}

/// Fundamental solution of `t^2 - D u^2 = 4` with `t, u > 0` and `u` minimal.
///
/// `D` must be a positive non-square with `D = 0 or 1 mod 4`. Solved via the
/// cycle of reduced forms (equivalent to the continued fraction of `sqrt D`);
/// the brute-force scan in the tests double-checks minimality for small `D`.
pub fn pell_fundamental(d: i128) -> Result<PellSolution> {
    if d <= 0 || is_square(d) {
        return Err(Error::BadPellDiscriminant(d));
    }
    if d.rem_euclid(4) > 1 {
        return Err(Error::BadPellDiscriminant(d));
    }
    let (t, u) = pell_by_cycle(d);
    debug_assert!(&t * &t - BigInt::from(d) * &u * &u == BigInt::from(4));
    let regulator = {
        // ln((t + u sqrt d)/2)
        let tf = t.to_f64().unwrap_or(f64::INFINITY);
        let uf = u.to_f64().unwrap_or(f64::INFINITY);
        if tf.is_finite() && uf.is_finite() {
            ((tf + uf * (d as f64).sqrt()) / 2.0).ln()
        } else {
            // t + u sqrt d = t (1 + r) with r = u sqrt(d) / t -> 1
            let r = (ln_big(&u) + 0.5 * (d as f64).ln() - ln_big(&t)).exp();
            ln_big(&t) + (1.0 + r).ln() - std::f64::consts::LN_2
        }
    };
    Ok(PellSolution { d, t, u, regulator })
}

/// Regulator `ln((t + u sqrt D)/2)` of the order of discriminant `D`.
pub fn regulator(d: i128) -> Result<f64> {
    Ok(pell_fundamental(d)?.regulator)
}

/// Fundamental automorph of a primitive indefinite form `(a, b, c)`:
/// `M = [(t-bu)/2, -cu; au, (t+bu)/2]` for the fundamental `(t, u)` of
/// `t^2 - (b^2-4ac) u^2 = 4`. `Q o M = Q` and `det M = 1`.
pub fn automorph(a: i128, b: i128, c: i128) -> Result<Mat2> {
    let disc = b * b - 4 * a * c;
    if disc <= 0 || is_square(disc) {
        return Err(Error::NotIndefinite { a, b, c });
    }
    if gcd_i128(gcd_i128(a, b), c) != 1 {
        return Err(Error::ImprimitiveForm { a, b, c });
    }
    let pell = pell_fundamental(disc)?;
    let (t, u) = (
        pell.t.to_i128().ok_or(Error::Overflow("automorph entries"))?,
        pell.u.to_i128().ok_or(Error::Overflow("automorph entries"))?,
    );
    let m = Mat2::new((t - b * u) / 2, -c * u, a * u, (t + b * u) / 2);
    debug_assert_eq!(m.det(), 1);
    Ok(m)
}
