//! Exact arithmetic in cyclotomic fields Q(ζ_n).
//!
//! An element is stored in the power basis `1, ζ_n, …, ζ_n^{φ(n)-1}`, i.e.
//! reduced modulo the cyclotomic polynomial Φ_n. That basis is a Z-basis of
//! Z[ζ_n], so the representation is canonical once the conductor is minimal:
//! two values are equal iff conductor and coefficients agree. Every public
//! constructor and operation returns a normalized value.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub type Q = Ratio<i64>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<Q>,
}

// ---------------------------------------------------------------------------
// per-conductor tables

struct FieldData {
    n: usize,
    phi: usize,
    /// Power-basis coordinates of ζ_n^k for every 0 <= k < n.
    powers: Vec<Vec<i64>>,
}

/// Embedding of Q(ζ_d) into Q(ζ_n) together with a left inverse.
struct Subfield {
    /// phi(n) x phi(d), column j = coordinates of ζ_d^j in Q(ζ_n).
    embed: Vec<Vec<Q>>,
    /// phi(d) x phi(n)
    left_inverse: Vec<Vec<Q>>,
}

fn field(n: usize) -> Arc<FieldData> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<FieldData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&n) {
        return f.clone();
    }
    let built = Arc::new(FieldData::new(n));
    cache.lock().unwrap().entry(n).or_insert(built).clone()
}

fn subfield(n: usize, d: usize) -> Arc<Subfield> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<Subfield>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(s) = cache.lock().unwrap().get(&(n, d)) {
        return s.clone();
    }
    let built = Arc::new(Subfield::new(n, d));
    cache.lock().unwrap().entry((n, d)).or_insert(built).clone()
}

pub(crate) fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|&k| k.gcd(&n) == 1).count()
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
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

/// Integer coefficients of Φ_n, lowest degree first.
pub(crate) fn cyclotomic_polynomial(n: usize) -> Vec<i64> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut poly = vec![0i64; n + 1];
    poly[0] = -1;
    poly[n] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let div = cyclotomic_polynomial(d);
        poly = exact_divide(&poly, &div);
    }
    cache.lock().unwrap().insert(n, poly.clone());
    poly
}

fn exact_divide(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let lead = den[dn];
    debug_assert!(lead == 1);
    let qlen = num.len() - dn;
    let mut quot = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

impl FieldData {
    fn new(n: usize) -> Self {
        let poly = cyclotomic_polynomial(n);
        let phi = poly.len() - 1;
        let mut powers = Vec::with_capacity(n);
        // ζ^k for k < phi is a basis vector; above that use ζ^phi = -Σ poly[i] ζ^i
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by ζ
            let top = cur[phi - 1];
            let mut next = vec![0i64; phi];
            next[1..phi].copy_from_slice(&cur[..(phi - 1)]);
            if top != 0 {
                for (i, c) in next.iter_mut().enumerate() {
                    *c -= top * poly[i];
                }
            }
            cur = next;
        }
        FieldData { n, phi, powers }
    }

    /// Reduce a vector indexed by exponents mod n into the power basis.
    fn reduce(&self, by_exponent: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.phi];
        for (k, c) in by_exponent.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &self.powers[k % self.n];
            for (o, &r) in out.iter_mut().zip(row) {
                if r != 0 {
                    *o += *c * Q::from_integer(r);
                }
            }
        }
        out
    }

    fn mul(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        let mut acc = vec![Q::zero(); self.n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                acc[(i + j) % self.n] += *x * *y;
            }
        }
        self.reduce(&acc)
    }
}

impl Subfield {
    fn new(n: usize, d: usize) -> Self {
        let big = field(n);
        let small_phi = euler_phi(d);
        let step = n / d;
        let rows = big.phi;
        let embed: Vec<Vec<Q>> = (0..rows)
            .map(|r| {
                (0..small_phi)
                    .map(|j| Q::from_integer(big.powers[(j * step) % n][r]))
                    .collect()
            })
            .collect();
        // pick independent rows by elimination, then invert that block
        let mut pivots = Vec::new();
        let mut basis: Vec<Vec<Q>> = Vec::new();
        for (r, row) in embed.iter().enumerate() {
            let mut v = row.clone();
            for b in &basis {
                let lead = first_nonzero(b).unwrap();
                if !v[lead].is_zero() {
                    let f = v[lead] / b[lead];
                    for (x, y) in v.iter_mut().zip(b) {
                        *x -= f * *y;
                    }
                }
            }
            if first_nonzero(&v).is_some() {
                basis.push(v);
                pivots.push(r);
                if pivots.len() == small_phi {
                    break;
                }
            }
        }
        assert_eq!(pivots.len(), small_phi, "subfield embedding must have full rank");
        let block: Vec<Vec<Q>> = pivots.iter().map(|&r| embed[r].clone()).collect();
        let inv = invert_rational(&block);
        let mut left_inverse = vec![vec![Q::zero(); rows]; small_phi];
        for i in 0..small_phi {
            for (k, &r) in pivots.iter().enumerate() {
                left_inverse[i][r] = inv[i][k];
            }
        }
        Subfield {
            embed,
            left_inverse,
        }
    }

    /// Coordinates in the subfield if `x` (big-field coordinates) lies in it.
    fn pull_back(&self, x: &[Q]) -> Option<Vec<Q>> {
        let y: Vec<Q> = self
            .left_inverse
            .iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| *a * *b).sum())
            .collect();
        let back = self
            .embed
            .iter()
            .map(|row| row.iter().zip(&y).map(|(a, b)| *a * *b).sum::<Q>());
        if back.zip(x).all(|(a, b)| a == *b) {
            Some(y)
        } else {
            None
        }
    }
}

fn first_nonzero(v: &[Q]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

fn invert_rational(m: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("singular block");
        a.swap(col, piv);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= f * *y;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

// ---------------------------------------------------------------------------

impl Cyclotomic {
    pub fn zero() -> Self {
        Self::from_rational(Q::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Q::one())
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(Q::from_integer(v))
    }

    pub fn from_rational(q: Q) -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![q],
        }
    }

    /// ζ_n^k.
    pub fn zeta(n: u32, k: i64) -> Self {
        assert!(n > 0);
        let e = k.rem_euclid(n as i64) as usize;
        let mut v = vec![Q::zero(); n as usize];
        v[e] = Q::one();
        Self::from_exponents(n, &v)
    }

    /// Build Σ c_k ζ_n^k from coefficients indexed by exponent (any length; indices
    /// are read mod n).
    pub fn from_exponents(n: u32, coeffs: &[Q]) -> Self {
        assert!(n > 0);
        let f = field(n as usize);
        let mut folded = vec![Q::zero(); n as usize];
        for (k, c) in coeffs.iter().enumerate() {
            folded[k % n as usize] += *c;
        }
        Self::normalized(n, f.reduce(&folded))
    }

    /// Canonical form of an arbitrary coefficient list. Idempotent.
    pub fn normalize(n: u32, coeffs: &[Q]) -> Self {
        Self::from_exponents(n, coeffs)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Coefficient of ζ_n^k in the canonical form (zero for k >= φ(n)).
    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).copied().unwrap_or_else(Q::zero)
    }

    /// Coefficients indexed by every exponent 0 <= k < n.
    pub fn exponent_coeffs(&self) -> Vec<Q> {
        let mut v = self.coeffs.clone();
        v.resize(self.conductor as usize, Q::zero());
        v
    }

    /// Exponent-indexed coefficients after embedding into Q(ζ_target); the
    /// conductor must divide `target`.
    pub fn exponents_at(&self, target: u32) -> Vec<Q> {
        assert_eq!(target % self.conductor, 0, "conductor must divide the target");
        let step = (target / self.conductor) as usize;
        let mut v = vec![Q::zero(); target as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[k * step] = *c;
        }
        v
    }

    fn normalized(n: u32, mut coeffs: Vec<Q>) -> Self {
        let mut n = n as usize;
        loop {
            if coeffs.iter().skip(1).all(|c| c.is_zero()) {
                return Cyclotomic {
                    conductor: 1,
                    coeffs: vec![coeffs[0]],
                };
            }
            let mut shrunk = false;
            for p in prime_factors(n) {
                let d = n / p;
                if let Some(y) = subfield(n, d).pull_back(&coeffs) {
                    coeffs = y;
                    n = d;
                    shrunk = true;
                    break;
                }
            }
            if !shrunk {
                return Cyclotomic {
                    conductor: n as u32,
                    coeffs,
                };
            }
        }
    }

    /// Power-basis coordinates after embedding into Q(ζ_target).
    fn lift(&self, target: usize) -> Vec<Q> {
        let n = self.conductor as usize;
        debug_assert_eq!(target % n, 0);
        if n == target {
            return self.coeffs.clone();
        }
        let step = target / n;
        let mut by_exp = vec![Q::zero(); target];
        for (k, c) in self.coeffs.iter().enumerate() {
            by_exp[(k * step) % target] += *c;
        }
        field(target).reduce(&by_exp)
    }

    fn common(&self, other: &Self) -> usize {
        (self.conductor as usize).lcm(&(other.conductor as usize))
    }

    pub fn is_zero(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_one()
    }

    pub fn to_rational(&self) -> Option<Q> {
        (self.conductor == 1).then(|| self.coeffs[0])
    }

    /// Some(k) if the value is a rational integer.
    pub fn to_integer(&self) -> Option<i64> {
        self.to_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    pub fn scale(&self, q: Q) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| *c * q).collect(),
        }
    }

    /// The Galois automorphism ζ ↦ ζ^a (a coprime to the conductor).
    pub fn galois(&self, a: i64) -> Self {
        let n = self.conductor as usize;
        if n == 1 {
            return self.clone();
        }
        let a = a.rem_euclid(n as i64) as usize;
        assert_eq!(a.gcd(&n), 1, "Galois exponent must be a unit mod the conductor");
        let mut by_exp = vec![Q::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            by_exp[(k * a) % n] += *c;
        }
        Cyclotomic::normalized(n as u32, field(n).reduce(&by_exp))
    }

    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Multiplicative inverse via the field norm.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.to_rational() {
            return Some(Self::from_rational(q.recip()));
        }
        let n = self.conductor as i64;
        let mut others = Self::one();
        for a in 2..n {
            if a.gcd(&n) == 1 {
                others = &others * &self.galois(a);
            }
        }
        let norm = (self * &others)
            .to_rational()
            .expect("norm of a cyclotomic is rational");
        Some(others.scale(norm.recip()))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// True if the value is a root of unity.
    pub fn is_root_of_unity(&self) -> bool {
        let n = self.conductor as i64;
        let order = if n % 2 == 0 { n } else { 2 * n };
        (0..order).any(|k| *self == Cyclotomic::zeta(order as u32, k))
    }

    pub fn to_complex(&self) -> Complex64 {
        let n = self.conductor as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let ang = 2.0 * std::f64::consts::PI * k as f64 / n;
                Complex64::from_polar(ratio_to_f64(c), ang)
            })
            .sum()
    }
}

pub fn ratio_to_f64(q: &Q) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

/// Render a rational as "p/q" (or "p" when integral).
pub fn format_rational(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl Default for Cyclotomic {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Cyclotomic {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<Q> for Cyclotomic {
    fn from(q: Q) -> Self {
        Self::from_rational(q)
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let n = self.common(rhs);
        let v: Vec<Q> = self
            .lift(n)
            .into_iter()
            .zip(rhs.lift(n))
            .map(|(a, b)| a + b)
            .collect();
        Cyclotomic::normalized(n as u32, v)
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        if self.is_zero() || rhs.is_zero() {
            return Cyclotomic::zero();
        }
        if let Some(q) = self.to_rational() {
            return rhs.scale(q);
        }
        if let Some(q) = rhs.to_rational() {
            return self.scale(q);
        }
        let n = self.common(rhs);
        let prod = field(n).mul(&self.lift(n), &rhs.lift(n));
        Cyclotomic::normalized(n as u32, prod)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -*c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |a, b| &a + &b)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conductor == 1 {
            return write!(f, "{}", format_rational(&self.coeffs[0]));
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let term = match k {
                0 => format_rational(&mag),
                _ => {
                    let z = if k == 1 {
                        format!("z{}", self.conductor)
                    } else {
                        format!("z{}^{}", self.conductor, k)
                    };
                    if mag.is_one() {
                        z
                    } else {
                        format!("{}*{}", format_rational(&mag), z)
                    }
                }
            };
            write!(f, "{term}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct CyclotomicRepr {
    conductor: u32,
    coeffs: Vec<String>,
}

fn parse_rational(s: &str) -> Option<Q> {
    match s.split_once('/') {
        Some((n, d)) => {
            let (n, d): (i64, i64) = (n.trim().parse().ok()?, d.trim().parse().ok()?);
            (d != 0).then(|| Q::new(n, d))
        }
        None => s.trim().parse().ok().map(Q::from_integer),
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CyclotomicRepr {
            conductor: self.conductor,
            coeffs: self
                .exponent_coeffs()
                .iter()
                .map(format_rational)
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = CyclotomicRepr::deserialize(d)?;
        let coeffs: Option<Vec<Q>> = r.coeffs.iter().map(|c| parse_rational(c)).collect();
        let coeffs = match coeffs {
            Some(c) if r.conductor > 0 => c,
            _ => return Err(serde::de::Error::custom("invalid cyclotomic")),
        };
        Ok(Cyclotomic::normalize(r.conductor, &coeffs))
    }
}
