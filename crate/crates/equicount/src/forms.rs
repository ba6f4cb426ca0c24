//! Binary quadratic, Hermitian and Hamiltonian forms: evaluation, the right
//! action by precomposition, discriminants, representation counts, and orbit
//! enumeration of indefinite Hermitian forms under the elementary generators
//! of the Bianchi group.
//!
//! A Hermitian form `f(u,v) = a|u|^2 + 2 Re(b ubar v) + c|v|^2` is the
//! quadratic map of the Hermitian matrix `[[a, b],[bbar, c]]`; precomposition
//! by `g` is the congruence `g* M g`, which keeps the coefficients integral
//! and the discriminant `|b|^2 - ac` fixed. The Hamiltonian case is the same
//! with quaternion conjugate-transposes.

use std::collections::{HashMap, HashSet, VecDeque};

use num::{One, Signed};

use crate::arith::{automorph, gcd_i128, Mat2, Rat};
use crate::qfield::{is_euclidean, QIdeal, QuadInt};
use crate::quat::{dieudonne_det, pair_is_unimodular, Quaternion, QuatMat2};
use crate::{Error, Result};

/// A binary form over one of the three coefficient rings.
#[derive(Debug, Clone, PartialEq)]
pub enum BinForm {
    /// `a u^2 + b u v + c v^2` over `Z`.
    Quadratic { a: i128, b: i128, c: i128 },
    /// `a |u|^2 + 2 Re(b ubar v) + c |v|^2` over `O_K`, `a, c` rational
    /// integers.
    Hermitian { a: i128, b: QuadInt, c: i128 },
    /// `a N(u) + Tr(ubar b v) + c N(v)` over the Hurwitz order.
    Hamiltonian { a: i128, b: Quaternion, c: i128 },
}

impl BinForm {
    pub fn hermitian(a: i128, b: QuadInt, c: i128) -> Self {
        BinForm::Hermitian { a, b, c }
    }
    pub fn hamiltonian_ints(a: i128, b: [i128; 4], c: i128) -> Self {
        BinForm::Hamiltonian {
            a,
            b: Quaternion::from_ints(b[0], b[1], b[2], b[3]),
            c,
        }
    }

    /// Discriminant: `b^2 - 4ac` (quadratic) or `|b|^2 - ac` / `N(b) - ac`.
    pub fn disc(&self) -> i128 {
        match self {
            BinForm::Quadratic { a, b, c } => b * b - 4 * a * c,
            BinForm::Hermitian { a, b, c } => b.norm() - a * c,
            BinForm::Hamiltonian { a, b, c } => {
                let n = b.norm();
                debug_assert!(n.is_integer());
                *n.numer() - a * c
            }
        }
    }

    pub fn is_positive_definite(&self) -> bool {
        let a = match self {
            BinForm::Quadratic { a, .. } => *a,
            BinForm::Hermitian { a, .. } => *a,
            BinForm::Hamiltonian { a, .. } => *a,
        };
        self.disc() < 0 && a > 0
    }
}

pub fn eval_quadratic(f: &BinForm, u: i128, v: i128) -> i128 {
    match f {
        BinForm::Quadratic { a, b, c } => a * u * u + b * u * v + c * v * v,
        _ => panic!("quadratic evaluation on a non-quadratic form"),
    }
}

pub fn eval_hermitian(f: &BinForm, u: &QuadInt, v: &QuadInt) -> i128 {
    match f {
        BinForm::Hermitian { a, b, c } => {
            let cross = b.mul(&u.conj()).mul(v).trace();
            a * u.norm() + cross + c * v.norm()
        }
        _ => panic!("hermitian evaluation on a non-hermitian form"),
    }
}

pub fn eval_hamiltonian(f: &BinForm, u: &Quaternion, v: &Quaternion) -> Rat {
    match f {
        BinForm::Hamiltonian { a, b, c } => {
            let cross = u.conj().mul(b).mul(v).trace();
            Rat::from_integer(*a) * u.norm() + cross + Rat::from_integer(*c) * v.norm()
        }
        _ => panic!("hamiltonian evaluation on a non-hamiltonian form"),
    }
}

/// Precompose a quadratic form by a unimodular integer matrix (column
/// action `(u, v) -> (a u + b v, c u + d v)`).
pub fn compose_quadratic(f: &BinForm, g: &Mat2) -> Result<BinForm> {
    let (a, b, c) = match f {
        BinForm::Quadratic { a, b, c } => (*a, *b, *c),
        _ => panic!("ring mismatch"),
    };
    if g.det() != 1 {
        return Err(Error::NotUnimodular(g.det()));
    }
    let (p, q, r, s) = (g.a, g.b, g.c, g.d);
    Ok(BinForm::Quadratic {
        a: a * p * p + b * p * r + c * r * r,
        b: 2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
        c: a * q * q + b * q * s + c * s * s,
    })
}

/// Precompose a Hermitian form by `g` over `O_K`: the congruence `g* M g` of
/// the Hermitian matrix `M = [[a, b],[bbar, c]]`.
pub fn compose_hermitian(f: &BinForm, g: &crate::quadirr::KMat2) -> Result<BinForm> {
    let (a, b, c) = match f {
        BinForm::Hermitian { a, b, c } => (*a, *b, *c),
        _ => panic!("ring mismatch"),
    };
    if !g.is_unimodular() {
        return Err(Error::NotUnimodular(0));
    }
    let d = b.d;
    let (ai, bi, ci, di) = (g.a, g.b, g.c, g.d);
    let aq = QuadInt::from_int(d, a);
    let cq = QuadInt::from_int(d, c);
    // new entries of g* M g
    let m00 = ai
        .conj()
        .mul(&aq.mul(&ai).add(&b.mul(&ci)))
        .add(&ci.conj().mul(&b.conj().mul(&ai).add(&cq.mul(&ci))));
    let m01 = ai
        .conj()
        .mul(&aq.mul(&bi).add(&b.mul(&di)))
        .add(&ci.conj().mul(&b.conj().mul(&bi).add(&cq.mul(&di))));
    let m11 = bi
        .conj()
        .mul(&aq.mul(&bi).add(&b.mul(&di)))
        .add(&di.conj().mul(&b.conj().mul(&bi).add(&cq.mul(&di))));
    debug_assert_eq!(m00.y, 0);
    debug_assert_eq!(m11.y, 0);
    Ok(BinForm::Hermitian {
        a: m00.x,
        b: m01,
        c: m11.x,
    })
}

/// Precompose a Hamiltonian form by a Dieudonne-determinant-1 quaternion
/// matrix.
pub fn compose_hamiltonian(f: &BinForm, g: &QuatMat2) -> Result<BinForm> {
    let (a, b, c) = match f {
        BinForm::Hamiltonian { a, b, c } => (*a, *b, *c),
        _ => panic!("ring mismatch"),
    };
    if dieudonne_det(g) != Rat::one() {
        return Err(Error::NotUnimodular(0));
    }
    let ar = Rat::from_integer(a);
    let cr = Rat::from_integer(c);
    let scale = |q: &Quaternion, r: Rat| q.scale(r);
    let m00 = g
        .a
        .conj()
        .mul(&scale(&g.a, ar).add(&b.mul(&g.c)))
        .add(&g.c.conj().mul(&b.conj().mul(&g.a).add(&scale(&g.c, cr))));
    let m01 = g
        .a
        .conj()
        .mul(&scale(&g.b, ar).add(&b.mul(&g.d)))
        .add(&g.c.conj().mul(&b.conj().mul(&g.b).add(&scale(&g.d, cr))));
    let m11 = g
        .b
        .conj()
        .mul(&scale(&g.b, ar).add(&b.mul(&g.d)))
        .add(&g.d.conj().mul(&b.conj().mul(&g.b).add(&scale(&g.d, cr))));
    debug_assert!(m00.norm() == m00.w * m00.w); // real
    debug_assert!(m11.norm() == m11.w * m11.w);
    debug_assert!(m00.w.is_integer() && m11.w.is_integer());
    Ok(BinForm::Hamiltonian {
        a: *m00.w.numer(),
        b: m01,
        c: *m11.w.numer(),
    })
}

/// The constant `iota(f)` of an integral Hermitian form over `Z[i]`:
/// 2 when `Disc = 0 mod 4`; for `a, c` both even, 3 when `Disc = 1 mod 4`
/// and `Disc mod 8` when `Disc = 2 mod 4`; otherwise 1.
pub fn iota_f(f: &BinForm) -> u8 {
    let (a, b, c) = match f {
        BinForm::Hermitian { a, b, c } => (*a, b, *c),
        _ => panic!("iota is defined for Hermitian forms over Z[i]"),
    };
    assert_eq!(b.d, -4, "iota is defined over Z[i]");
    let disc = f.disc();
    if disc.rem_euclid(4) == 0 {
        return 2;
    }
    if a % 2 == 0 && c % 2 == 0 {
        if disc.rem_euclid(4) == 1 {
            return 3;
        }
        if disc.rem_euclid(4) == 2 {
            return disc.rem_euclid(8) as u8;
        }
    }
    1
}

/// Count of `m`-primitive representations `f(u, v) <= s n(m)` for a positive
/// definite form. The normalisation follows each kind's leading constant:
/// raw pairs for the quadratic and Hamiltonian kinds, pair classes modulo
/// the simultaneous sign flip for the Hermitian kind (the reading of
/// "nonequivalent representations" under which its printed constant is the
/// leading coefficient).
pub fn posdef_count(f: &BinForm, m: Option<&QIdeal>, s: Rat) -> Result<u64> {
    if !f.is_positive_definite() {
        return Err(Error::WrongDefiniteness);
    }
    match f {
        BinForm::Quadratic { a, b, c } => {
            let bound = s;
            // 4a f(u,v) = (2au + bv)^2 - disc v^2: v and u ranges
            let disc = f.disc(); // negative
            let vmax = crate::qfield::rat_f64(
                bound * Rat::from_integer(4 * *a) / Rat::from_integer(-disc),
            )
            .max(0.0)
            .sqrt() as i128
                + 1;
            let mut count = 0u64;
            for v in -vmax..=vmax {
                // a u^2 + (bv) u + (c v^2 - s) <= 0
                let aa = *a as f64;
                let bb = (*b * v) as f64;
                let cc = (*c * v * v) as f64 - crate::qfield::rat_f64(bound);
                let d2 = bb * bb - 4.0 * aa * cc;
                if d2 < 0.0 {
                    continue;
                }
                let lo = ((-bb - d2.sqrt()) / (2.0 * aa)).floor() as i128 - 1;
                let hi = ((-bb + d2.sqrt()) / (2.0 * aa)).ceil() as i128 + 1;
                for u in lo..=hi {
                    if (u, v) == (0, 0) || gcd_i128(u, v) != 1 {
                        continue;
                    }
                    if Rat::from_integer(eval_quadratic(f, u, v)) <= bound {
                        count += 1;
                    }
                }
            }
            Ok(count)
        }
        BinForm::Hermitian { a: _, b, c: _ } => {
            let d = b.d;
            let m_ideal = m.cloned().unwrap_or_else(|| QIdeal::ring(d)).integralized();
            let bound = s * m_ideal.norm();
            // f(u, v) <= bound confines both |u|^2 and |v|^2: for a
            // positive definite Hermitian matrix M, f >= lambda_min (|u|^2 +
            // |v|^2); use the crude bound via the definite 2x2 minors
            let reach = posdef_reach_hermitian(f, bound);
            let us = crate::qfield::elements_of_norm_up_to(&m_ideal, reach);
            let mut count = 0u64;
            for u in &us {
                for v in &us {
                    if u.is_zero() && v.is_zero() {
                        continue;
                    }
                    if Rat::from_integer(eval_hermitian(f, u, v)) > bound {
                        continue;
                    }
                    let gens: Vec<QuadInt> =
                        [*u, *v].into_iter().filter(|z| !z.is_zero()).collect();
                    if QIdeal::from_gens(&gens, 1)? == m_ideal {
                        count += 1;
                    }
                }
            }
            debug_assert_eq!(count % 2, 0);
            Ok(count / 2)
        }
        BinForm::Hamiltonian { .. } => {
            let bound = s; // m = O only
            let reach = posdef_reach_hamiltonian(f, bound);
            let us = crate::quat::hurwitz_norm_ball(reach, true);
            let mut count = 0u64;
            for u in &us {
                for v in &us {
                    if u.is_zero() && v.is_zero() {
                        continue;
                    }
                    if eval_hamiltonian(f, u, v) > bound {
                        continue;
                    }
                    if pair_is_unimodular(u, v) {
                        count += 1;
                    }
                }
            }
            Ok(count)
        }
    }
}

/// Bound on `|u|^2` and `|v|^2` under `f(u,v) <= bound` for positive
/// definite Hermitian `f`: the smallest eigenvalue of `[[a, |b|],[|b|, c]]`
/// bounds the quadratic form from below.
fn posdef_reach_hermitian(f: &BinForm, bound: Rat) -> Rat {
    let (a, b, c) = match f {
        BinForm::Hermitian { a, b, c } => (*a as f64, (b.norm() as f64).sqrt(), *c as f64),
        _ => unreachable!(),
    };
    let tr = a + c;
    let det = a * c - b * b;
    let lam_min = (tr - (tr * tr - 4.0 * det).sqrt()) / 2.0;
    let r = crate::qfield::rat_f64(bound) / lam_min;
    Rat::approximate_float(r * 1.01 + 1.0).unwrap_or(bound * Rat::from_integer(1000))
}

fn posdef_reach_hamiltonian(f: &BinForm, bound: Rat) -> Rat {
    let (a, b, c) = match f {
        BinForm::Hamiltonian { a, b, c } => {
            (*a as f64, crate::qfield::rat_f64(b.norm()).sqrt(), *c as f64)
        }
        _ => unreachable!(),
    };
    let tr = a + c;
    let det = a * c - b * b;
    let lam_min = (tr - (tr * tr - 4.0 * det).sqrt()) / 2.0;
    let r = crate::qfield::rat_f64(bound) / lam_min;
    Rat::approximate_float(r * 1.01 + 1.0).unwrap_or(bound * Rat::from_integer(1000))
}

/// Image of a positive definite Hermitian form in the upper half-space:
/// `(-b/a, sqrt(-Disc)/a)` as `(re, im, height)`.
pub fn posdef_to_point_hermitian(f: &BinForm) -> Result<[f64; 3]> {
    if !f.is_positive_definite() {
        return Err(Error::WrongDefiniteness);
    }
    match f {
        BinForm::Hermitian { a, b, .. } => {
            let (re, im) = b.to_complex();
            let af = *a as f64;
            Ok([
                -re / af,
                -im / af,
                ((-f.disc()) as f64).sqrt() / af,
            ])
        }
        _ => panic!("hermitian forms only"),
    }
}

/// Same for positive definite Hamiltonian forms: a point of `H x R_+`.
pub fn posdef_to_point_hamiltonian(f: &BinForm) -> Result<[f64; 5]> {
    if !f.is_positive_definite() {
        return Err(Error::WrongDefiniteness);
    }
    match f {
        BinForm::Hamiltonian { a, b, .. } => {
            let bf = b.to_f64();
            let af = *a as f64;
            Ok([
                -bf[0] / af,
                -bf[1] / af,
                -bf[2] / af,
                -bf[3] / af,
                ((-f.disc()) as f64).sqrt() / af,
            ])
        }
        _ => panic!("hamiltonian forms only"),
    }
}

/// Canonical representative of a pair under the infinite cyclic automorph
/// group and the sign: column action, squared-norm descent, then sign and
/// lexicographic normalisation.
pub fn canonical_pair(m: &Mat2, u: i128, v: i128) -> (i128, i128) {
    let minv = m.inv_unimodular();
    let norm = |(x, y): (i128, i128)| x * x + y * y;
    let mut cur = (u, v);
    loop {
        let f = m.apply(cur.0, cur.1);
        let b = minv.apply(cur.0, cur.1);
        let (cand, n) = if norm(f) <= norm(b) {
            (f, norm(f))
        } else {
            (b, norm(b))
        };
        if n < norm(cur) {
            cur = cand;
        } else {
            break;
        }
    }
    let mut cands = vec![cur, m.apply(cur.0, cur.1), minv.apply(cur.0, cur.1)];
    let nmin = cands.iter().copied().map(norm).min().unwrap();
    cands.retain(|w| norm(*w) == nmin);
    let mut best: Option<(i128, i128)> = None;
    for w in cands {
        let w = if w.0 < 0 || (w.0 == 0 && w.1 < 0) {
            (-w.0, -w.1)
        } else {
            w
        };
        if best.map_or(true, |b| w < b) {
            best = Some(w);
        }
    }
    best.unwrap()
}

#[derive(Debug, Clone)]
pub struct IndefOrbitCount {
    pub count: u64,
    pub reps: Vec<(i128, i128)>,
    pub saturated: bool,
}

/// `Card SO_Q(Z) \ {(u,v) coprime : |Q(u,v)| <= s}` for a primitive
/// indefinite quadratic form: enumerate coprime pairs in doubling boxes,
/// canonicalise under the fundamental automorph and the sign, and stop when
/// two consecutive doublings add nothing.
pub fn indef_bqf_orbit_count(a: i128, b: i128, c: i128, s: i128) -> Result<IndefOrbitCount> {
    let disc = b * b - 4 * a * c;
    if disc <= 0 || crate::arith::is_square(disc) {
        return Err(Error::NotIndefinite { a, b, c });
    }
    let m = automorph(a, b, c)?;
    let f = BinForm::Quadratic { a, b, c };
    let mut reps: HashSet<(i128, i128)> = HashSet::new();
    let mut x: i128 = 16.max((3.0 * (s as f64).sqrt()) as i128);
    let mut stable = 0;
    let mut rounds = 0;
    let mut saturated = false;
    loop {
        let before = reps.len();
        for u in -x..=x {
            for v in -x..=x {
                if (u, v) == (0, 0) || gcd_i128(u, v) != 1 {
                    continue;
                }
                if eval_quadratic(&f, u, v).abs() > s {
                    continue;
                }
                reps.insert(canonical_pair(&m, u, v));
            }
        }
        rounds += 1;
        if reps.len() == before && rounds > 1 {
            stable += 1;
            if stable >= 2 {
                saturated = true;
                break;
            }
        } else {
            stable = 0;
        }
        if rounds > 14 {
            break;
        }
        x *= 2;
    }
    let mut list: Vec<(i128, i128)> = reps.into_iter().collect();
    list.sort();
    Ok(IndefOrbitCount {
        count: list.len() as u64,
        reps: list,
        saturated,
    })
}

/// Policy knobs for the Hermitian orbit breadth-first search.
#[derive(Debug, Clone, Copy)]
pub struct BfsPolicy {
    /// Working census bound: forms with `|a|` beyond this are not expanded.
    pub a_cap: i128,
    /// Translation parameters `mu` are scanned with `|mu|^2 <= mu_cap`.
    pub mu_cap: i128,
    pub max_depth: u32,
    /// Doubling rounds of the saturation loop.
    pub max_rounds: u32,
}

impl BfsPolicy {
    pub fn for_census(s: i128) -> BfsPolicy {
        BfsPolicy {
            a_cap: s * 9 / 8 + 4,
            mu_cap: 2 * s + 8,
            max_depth: 64,
            max_rounds: 4,
        }
    }
}

#[derive(Debug, Clone)]
pub struct HermOrbitCensus {
    /// Canonically reduced forms `(a, b mod a O_K, c)` with `0 < |a| <= s`.
    pub forms: Vec<(i128, QuadInt, i128)>,
    pub disc: i128,
    pub saturated: bool,
}

impl HermOrbitCensus {
    /// The points `b/a` of the census forms, as complex values (they lie in
    /// the centered fundamental cell of the reduction).
    pub fn points(&self) -> Vec<(f64, f64)> {
        self.forms
            .iter()
            .map(|(a, b, _)| {
                let (re, im) = b.to_complex();
                (re / *a as f64, im / *a as f64)
            })
            .collect()
    }
    pub fn census(&self, s: i128) -> u64 {
        self.forms.iter().filter(|(a, _, _)| a.abs() <= s).count() as u64
    }
}

/// Reduce `b` modulo `a O_K` into the centered coordinate box
/// `[-|a|/2, |a|/2)^2` (ties resolved toward the lower representative).
fn reduce_b_mod_a(a: i128, b: &QuadInt) -> QuadInt {
    let aa = a.abs();
    let red = |t: i128| -> i128 {
        let h = aa / 2;
        (t + h).rem_euclid(aa) - h
    };
    QuadInt::new(b.d, red(b.x), red(b.y))
}

fn herm_canonical(disc: i128, a: i128, b: &QuadInt) -> (i128, QuadInt, i128) {
    let br = reduce_b_mod_a(a, b);
    let c = (br.norm() - disc) / a;
    debug_assert_eq!((br.norm() - disc) % a, 0);
    (a, br, c)
}

/// Orbit census of an indefinite integral Hermitian form under the
/// elementary generators of `SL_2(O_K)` (norm-Euclidean fields only):
/// breadth-first search over `f -> (f o T_mu) o S`, canonicalising by the
/// unipotent reduction `b mod a O_K`. Depth, translation range and working
/// bound grow together until the `<= s` census is stable.
pub fn herm_orbit_bfs(
    f: &BinForm,
    s: i128,
    policy: BfsPolicy,
) -> Result<HermOrbitCensus> {
    let (a0, b0, _c0) = match f {
        BinForm::Hermitian { a, b, c } => (*a, *b, *c),
        _ => panic!("hermitian forms only"),
    };
    let d = b0.d;
    if !is_euclidean(d) {
        return Err(Error::NotEuclidean(d));
    }
    let disc = f.disc();
    if disc <= 0 {
        return Err(Error::WrongDefiniteness);
    }
    if a0 == 0 {
        return Err(Error::WrongDefiniteness);
    }
    let mut pol = policy;
    let mut prev_census: Option<u64> = None;
    for round in 0..policy.max_rounds.max(1) {
        let census = herm_bfs_pass(d, disc, a0, &b0, s, &pol)?;
        let count = census.census(s);
        if let Some(p) = prev_census {
            if p == count {
                return Ok(HermOrbitCensus {
                    saturated: true,
                    ..census
                });
            }
        }
        prev_census = Some(count);
        if round + 1 == policy.max_rounds.max(1) {
            return Ok(census);
        }
        pol.a_cap = pol.a_cap * 2;
        pol.mu_cap = pol.mu_cap * 2;
        pol.max_depth = pol.max_depth * 2;
    }
    unreachable!()
}

fn herm_bfs_pass(
    d: i64,
    disc: i128,
    a0: i128,
    b0: &QuadInt,
    s: i128,
    pol: &BfsPolicy,
) -> Result<HermOrbitCensus> {
    let start = herm_canonical(disc, a0, b0);
    let mut seen: HashMap<(i128, i128, i128), (i128, QuadInt, i128)> = HashMap::new();
    let key = |(a, b, _c): &(i128, QuadInt, i128)| (*a, b.x, b.y);
    seen.insert(key(&start), start.clone());
    let mut frontier = VecDeque::new();
    frontier.push_back(start);
    let mut depth = 0;
    while !frontier.is_empty() && depth < pol.max_depth {
        let mut next = VecDeque::new();
        for (a, b, c) in frontier.drain(..) {
            // neighbours: f o T_mu then S: a' = f(mu, 1) = a|mu|^2 + Tr(mubar b) + c
            let mus = crate::qfield::elements_of_norm_up_to(
                &QIdeal::ring(d),
                Rat::from_integer(pol.mu_cap),
            );
            for mu in mus {
                let aprime = a * mu.norm() + b.mul(&mu.conj()).trace() + c;
                if aprime == 0 || aprime.abs() > pol.a_cap {
                    continue;
                }
                // b of f o T_mu is b + a mu; after S the new b is -conj(b + a mu)
                let bt = b.add(&mu.mul_int(a));
                let bnew = bt.conj().neg();
                let cand = herm_canonical(disc, aprime, &bnew);
                if !seen.contains_key(&key(&cand)) {
                    seen.insert(key(&cand), cand.clone());
                    next.push_back(cand);
                }
            }
        }
        frontier = next;
        depth += 1;
    }
    let mut forms: Vec<(i128, QuadInt, i128)> = seen
        .into_values()
        .filter(|(a, _, _)| a.abs() <= s)
        .collect();
    forms.sort_by_key(|(a, b, _)| (*a, b.x, b.y));
    Ok(HermOrbitCensus {
        forms,
        disc,
        saturated: false,
    })
}
