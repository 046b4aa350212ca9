//! Independent brute-force count of irreducible SU(2) representations of
//! `π₁ Σ(a₁,a₂,a₃)`, sharing no code with the rotation-number enumeration.
//!
//! Quaternions are plain `[f64; 4]`. For each central value `h = ε = ±1`
//! the unknowns are `X₁, X₂ ∈ SU(2)` with `X₃ = ε^{-b} (X₁X₂)⁻¹`; the residual
//! stacks `log(X_i^{a_i} ε^{b_i})`. Levenberg–Marquardt with a forward
//! difference Jacobian runs from Haar-random starts; converged irreducible
//! solutions are clustered by their three rotation angles.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Q = [f64; 4];

pub fn mul(a: Q, b: Q) -> Q {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

pub fn conj(a: Q) -> Q {
    [a[0], -a[1], -a[2], -a[3]]
}

fn scale(a: Q, s: f64) -> Q {
    [a[0] * s, a[1] * s, a[2] * s, a[3] * s]
}

pub fn normalize(a: Q) -> Q {
    let n = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    scale(a, 1.0 / n)
}

/// `exp(v·(i,j,k))`.
pub fn exp(v: [f64; 3]) -> Q {
    let t = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if t < 1e-300 {
        return [1.0, 0.0, 0.0, 0.0];
    }
    let s = t.sin() / t;
    [t.cos(), v[0] * s, v[1] * s, v[2] * s]
}

/// Principal logarithm, angle in `[0, π]`.
pub fn log(q: Q) -> [f64; 3] {
    let n = (q[1] * q[1] + q[2] * q[2] + q[3] * q[3]).sqrt();
    let t = n.atan2(q[0]);
    if n < 1e-300 {
        return [0.0; 3];
    }
    [q[1] * t / n, q[2] * t / n, q[3] * t / n]
}

/// Rotation angle in `[0, π]`.
pub fn angle(q: Q) -> f64 {
    let n = (q[1] * q[1] + q[2] * q[2] + q[3] * q[3]).sqrt();
    n.atan2(q[0])
}

/// Integer power by repeated squaring.
pub fn pow(q: Q, k: i64) -> Q {
    let mut base = if k < 0 { conj(q) } else { q };
    let mut e = k.unsigned_abs();
    let mut acc = [1.0, 0.0, 0.0, 0.0];
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        e >>= 1;
    }
    acc
}

fn central(eps: f64, k: i64) -> Q {
    if eps < 0.0 && k.rem_euclid(2) == 1 {
        [-1.0, 0.0, 0.0, 0.0]
    } else {
        [1.0, 0.0, 0.0, 0.0]
    }
}

/// Uniform axis, rotation angle `πk/a` with `0 < k < a` uniform: every
/// solution has `X^a = ±1`, so this puts each candidate angle on equal footing.
pub fn random_start<R: Rng>(rng: &mut R, a: i64) -> Q {
    let axis = loop {
        let v: [f64; 3] = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-3 && n <= 1.0 {
            break [v[0] / n, v[1] / n, v[2] / n];
        }
    };
    let t = std::f64::consts::PI * rng.random_range(1..a.max(2)) as f64 / a as f64;
    exp([axis[0] * t, axis[1] * t, axis[2] * t])
}


/// Seifert invariants `(b; (aᵢ, bᵢ))` of `Σ(a₁,a₂,a₃)`, computed directly:
/// `bᵢ = (A/aᵢ)⁻¹ mod aᵢ` and `b = (Σ bᵢ A/aᵢ − 1)/A`.
pub fn invariants(a: [i64; 3]) -> (i64, [i64; 3]) {
    let big: i64 = a.iter().product();
    let mut bs = [0; 3];
    for i in 0..3 {
        let m = big / a[i];
        bs[i] = (1..a[i]).find(|&x| (x * m) % a[i] == 1).unwrap_or(0);
        if a[i] == 1 {
            bs[i] = 0;
        }
    }
    let s: i64 = (0..3).map(|i| bs[i] * (big / a[i])).sum();
    assert_eq!((s - 1) % big, 0);
    (((s - 1) / big), bs)
}

struct Problem {
    a: [i64; 3],
    bs: [i64; 3],
    eps: f64,
    shift3: Q,
}

impl Problem {
    fn x3(&self, x1: Q, x2: Q) -> Q {
        mul(self.shift3, conj(mul(x1, x2)))
    }

    /// `X_i^{a_i} ε^{b_i} − 1`, smooth everywhere unlike the logarithm.
    fn residual(&self, x: &[Q; 2]) -> [f64; 12] {
        let xs = [x[0], x[1], self.x3(x[0], x[1])];
        let mut r = [0.0; 12];
        for i in 0..3 {
            let mut q = mul(pow(xs[i], self.a[i]), central(self.eps, self.bs[i]));
            q[0] -= 1.0;
            r[4 * i..4 * i + 4].copy_from_slice(&q);
        }
        r
    }

    fn perturb(x: &[Q; 2], d: &[f64; 6]) -> [Q; 2] {
        [
            normalize(mul(exp([d[0], d[1], d[2]]), x[0])),
            normalize(mul(exp([d[3], d[4], d[5]]), x[1])),
        ]
    }
}

fn norm2(r: &[f64]) -> f64 {
    r.iter().map(|x| x * x).sum()
}

/// Solves the 6×6 system `m x = v` by Gaussian elimination with pivoting.
fn solve6(mut m: [[f64; 6]; 6], mut v: [f64; 6]) -> Option<[f64; 6]> {
    for c in 0..6 {
        let p = (c..6).max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs()))?;
        if m[p][c].abs() < 1e-300 {
            return None;
        }
        m.swap(c, p);
        v.swap(c, p);
        for r in c + 1..6 {
            let f = m[r][c] / m[c][c];
            let pivot = m[c];
            for (x, y) in m[r][c..].iter_mut().zip(&pivot[c..]) {
                *x -= f * y;
            }
            v[r] -= f * v[c];
        }
    }
    let mut x = [0.0; 6];
    for c in (0..6).rev() {
        let s: f64 = (c + 1..6).map(|k| m[c][k] * x[k]).sum();
        x[c] = (v[c] - s) / m[c][c];
    }
    Some(x)
}

fn levenberg_marquardt(p: &Problem, mut x: [Q; 2]) -> ([Q; 2], f64) {
    let mut r = p.residual(&x);
    let mut f = norm2(&r);
    let mut lambda = 1e-3;
    let h = 1e-7;
    for it in 0..40 {
        if f < 1e-26 || (it == 12 && f > 1e-6) {
            break;
        }
        let mut jac = [[0.0; 6]; 12];
        for k in 0..6 {
            let mut d = [0.0; 6];
            d[k] = h;
            let rk = p.residual(&Problem::perturb(&x, &d));
            for i in 0..12 {
                jac[i][k] = (rk[i] - r[i]) / h;
            }
        }
        let mut jtj = [[0.0; 6]; 6];
        let mut jtr = [0.0; 6];
        for a in 0..6 {
            for b in 0..6 {
                jtj[a][b] = (0..12).map(|i| jac[i][a] * jac[i][b]).sum();
            }
            jtr[a] = -(0..12).map(|i| jac[i][a] * r[i]).sum::<f64>();
        }
        let mut accepted = false;
        for _ in 0..12 {
            let mut m = jtj;
            for (a, row) in m.iter_mut().enumerate() {
                row[a] += lambda * (1.0 + jtj[a][a]);
            }
            let Some(d) = solve6(m, jtr) else { break };
            let xn = Problem::perturb(&x, &d);
            let rn = p.residual(&xn);
            let fnew = norm2(&rn);
            if fnew < f {
                x = xn;
                r = rn;
                f = fnew;
                lambda = (lambda * 0.3).max(1e-15);
                accepted = true;
                break;
            }
            lambda *= 10.0;
        }
        if !accepted {
            break;
        }
    }
    (x, r.iter().fold(0.0f64, |m, v| m.max(v.abs())))
}

/// The three cyclic relabelings of the relation `X₁X₂X₃ = h⁻ᵇ`; since `h` is
/// central each one is the same system with a different generator eliminated.
fn rotations(a: [i64; 3], eps: f64) -> [Problem; 3] {
    let (b, bs) = invariants(a);
    std::array::from_fn(|r| Problem {
        a: std::array::from_fn(|i| a[(i + r) % 3]),
        bs: std::array::from_fn(|i| bs[(i + r) % 3]),
        eps,
        shift3: conj(central(eps, b)),
    })
}

/// One restart with a randomly chosen eliminated generator. Returns the
/// rotation angles of an irreducible solution in the original order.
fn attempt<R: Rng>(ps: &[Problem; 3], rng: &mut R) -> Option<[f64; 3]> {
    let r = rng.random_range(0..3);
    let p = &ps[r];
    let start = [random_start(rng, p.a[0]), random_start(rng, p.a[1])];
    let (x, res) = levenberg_marquardt(p, start);
    if res >= 1e-9 {
        return None;
    }
    let comm = mul(mul(x[0], x[1]), conj(mul(x[1], x[0])));
    if angle(comm) < 1e-4 {
        return None; // abelian
    }
    let rotated = [angle(x[0]), angle(x[1]), angle(p.x3(x[0], x[1]))];
    let mut key = [0.0; 3];
    for i in 0..3 {
        key[(i + r) % 3] = rotated[i];
    }
    Some(key)
}

fn same(k: &[f64; 3], l: &[f64; 3]) -> bool {
    k.iter().zip(l).all(|(u, v)| (u - v).abs() < 1e-6)
}

/// Irreducible conjugacy classes as `(sign of h, rotation angles, hits)`
/// after a fixed number of restarts per sign.
pub fn classes(a: [i64; 3], restarts: usize, seed: u64) -> Vec<(i8, [f64; 3], usize)> {
    let mut out: Vec<(i8, [f64; 3], usize)> = Vec::new();
    for (e, eps) in [(1i8, 1.0), (-1, -1.0)] {
        let ps = rotations(a, eps);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ if e > 0 { 0 } else { 0x5eed });
        for _ in 0..restarts {
            let Some(key) = attempt(&ps, &mut rng) else { continue };
            match out.iter_mut().find(|(s, k, _)| *s == e && same(k, &key)) {
                Some(c) => c.2 += 1,
                None => out.push((e, key, 1)),
            }
        }
    }
    out
}

/// Number of irreducible conjugacy classes. For each sign of `h` the search
/// stops once `patience` consecutive restarts add no new class.
pub fn count_classes(a: [i64; 3], patience: usize, seed: u64) -> usize {
    let mut found: Vec<(i8, [f64; 3])> = Vec::new();
    for (e, eps) in [(1i8, 1.0), (-1, -1.0)] {
        let ps = rotations(a, eps);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ if e > 0 { 0 } else { 0x5eed });
        let mut idle = 0;
        while idle < patience {
            idle += 1;
            let Some(key) = attempt(&ps, &mut rng) else { continue };
            if !found.iter().any(|(s, k)| *s == e && same(k, &key)) {
                found.push((e, key));
                idle = 0;
            }
        }
    }
    found.len()
}

/// Pairwise coprime triples `2 ≤ a₁ < a₂ < a₃` with product at most `max`.
pub fn coprime_triples(max: i64) -> Vec<[i64; 3]> {
    let gcd = |mut x: i64, mut y: i64| {
        while y != 0 {
            (x, y) = (y, x % y);
        }
        x
    };
    let mut out = Vec::new();
    for a in 2..=max {
        for b in a + 1..=max / a {
            for c in b + 1..=max / (a * b) {
                if gcd(a, b) == 1 && gcd(a, c) == 1 && gcd(b, c) == 1 {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

