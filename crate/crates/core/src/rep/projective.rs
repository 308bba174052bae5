//! Explicit unitary (projective) irreps obtained by splitting the twisted
//! regular representation with a random Hermitian element of its commutant.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::scalars::{ComplexApprox, ToleranceConfig};

pub type CMatrix = DMatrix<Complex64>;

const SPLIT_ATTEMPTS: usize = 3;

/// ρ(g) for every element g; for a projective rep ρ(g)ρ(h) = α(g,h)ρ(gh).
#[derive(Debug, Clone)]
pub struct MatrixRep {
    pub degree: usize,
    pub matrices: Vec<CMatrix>,
}

impl MatrixRep {
    pub fn character(&self) -> Vec<ComplexApprox> {
        self.matrices.iter().map(|m| m.trace()).collect()
    }

    pub fn trivial(order: usize) -> Self {
        MatrixRep {
            degree: 1,
            matrices: vec![CMatrix::identity(1, 1); order],
        }
    }

    /// Largest deviation from ρ(g)ρ(h) = α(g,h)ρ(gh) and from unitarity.
    pub fn defect(&self, g: &FiniteGroup, alpha: &CocycleTable) -> f64 {
        let id = CMatrix::identity(self.degree, self.degree);
        let mut worst: f64 = 0.0;
        for a in g.elements() {
            let m = &self.matrices[a];
            worst = worst.max((m * m.adjoint() - &id).norm());
            for b in g.elements() {
                let lhs = m * &self.matrices[b];
                let rhs = &self.matrices[g.mul(a, b)] * alpha.get(a, b);
                worst = worst.max((lhs - rhs).norm());
            }
        }
        worst
    }
}

/// A normalized 2-cocycle with values on the unit circle.
#[derive(Debug, Clone, PartialEq)]
pub struct CocycleTable {
    pub values: Vec<Vec<ComplexApprox>>,
}

impl Serialize for CocycleTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<Vec<[f64; 2]>> = self
            .values
            .iter()
            .map(|row| row.iter().map(|&z| crate::scalars::complex_pair(z)).collect())
            .collect();
        pairs.serialize(s)
    }
}

impl CocycleTable {
    pub fn trivial(order: usize) -> Self {
        CocycleTable {
            values: vec![vec![Complex64::new(1.0, 0.0); order]; order],
        }
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, g: usize, h: usize) -> ComplexApprox {
        self.values[g][h]
    }

    /// Pointwise inverse (= complex conjugate on the unit circle).
    pub fn inverse(&self) -> Self {
        CocycleTable {
            values: self
                .values
                .iter()
                .map(|row| row.iter().map(|z| z.conj()).collect())
                .collect(),
        }
    }

    /// Unit modulus, normalization and the cocycle identity, all at tolerance.
    pub fn verify(&self, g: &FiniteGroup, tol: &ToleranceConfig) -> Result<()> {
        let n = g.order();
        if self.order() != n {
            return Err(Error::Invalid(format!("cocycle table of size {} for group of order {n}", self.order())));
        }
        let one = Complex64::new(1.0, 0.0);
        for a in 0..n {
            for b in 0..n {
                let v = self.get(a, b);
                if !v.is_finite() || (v.norm() - 1.0).abs() > tol.eps_abs.max(1e-12) * 10.0 {
                    return Err(Error::CocycleInvalid { g: a, h: b, k: 0, defect: (v.norm() - 1.0).abs() });
                }
            }
            if !tol.approx_eq(self.get(0, a), one) || !tol.approx_eq(self.get(a, 0), one) {
                return Err(Error::CocycleInvalid { g: 0, h: a, k: 0, defect: (self.get(0, a) - one).norm() });
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = g.mul(a, b);
                for c in 0..n {
                    let lhs = self.get(a, b) * self.get(ab, c);
                    let rhs = self.get(a, g.mul(b, c)) * self.get(b, c);
                    if !tol.approx_eq(lhs, rhs) {
                        return Err(Error::CocycleInvalid { g: a, h: b, k: c, defect: (lhs - rhs).norm() });
                    }
                }
            }
        }
        Ok(())
    }

    /// g is α-regular iff α(g,h) = α(h,g) for all h commuting with g.
    pub fn is_regular(&self, g: &FiniteGroup, a: usize, tol: &ToleranceConfig) -> bool {
        g.elements()
            .filter(|&h| g.mul(a, h) == g.mul(h, a))
            .all(|h| tol.approx_eq(self.get(a, h), self.get(h, a)))
    }

    pub fn regular_class_count(&self, g: &FiniteGroup, tol: &ToleranceConfig) -> usize {
        g.conjugacy_data()
            .classes
            .iter()
            .filter(|c| self.is_regular(g, c[0], tol))
            .count()
    }
}

/// Irreps of the twisted group algebra C^α[G], in the gauge of α.
#[derive(Debug, Clone)]
pub struct TwistedIrreps {
    pub degrees: Vec<usize>,
    /// irrep × element
    pub characters: Vec<Vec<ComplexApprox>>,
    pub reps: Vec<MatrixRep>,
    /// How many eigenspaces of the split regular representation carried each irrep.
    pub regular_multiplicities: Vec<usize>,
}

impl TwistedIrreps {
    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// Index of the irrep whose character matches, if any.
    pub fn find(&self, character: &[ComplexApprox], tol: &ToleranceConfig) -> Option<usize> {
        self.characters
            .iter()
            .position(|c| c.iter().zip(character).all(|(&a, &b)| tol.approx_eq(a, b)))
    }
}

fn split_seed(g: &FiniteGroup, tol: &ToleranceConfig, attempt: usize) -> u64 {
    tol.rng_seed
        .wrapping_add(g.fingerprint())
        .wrapping_add((attempt as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn twisted_left_regular(g: &FiniteGroup, alpha: &CocycleTable) -> Vec<CMatrix> {
    let n = g.order();
    g.elements()
        .map(|a| {
            let mut m = CMatrix::zeros(n, n);
            for k in 0..n {
                m[(g.mul(a, k), k)] = alpha.get(a, k);
            }
            m
        })
        .collect()
}

fn twisted_right_regular(g: &FiniteGroup, alpha: &CocycleTable, k: usize) -> CMatrix {
    let n = g.order();
    let mut m = CMatrix::zeros(n, n);
    for h in 0..n {
        m[(g.mul(h, k), h)] = alpha.get(h, k);
    }
    m
}

fn split_once(
    g: &FiniteGroup,
    alpha: &CocycleTable,
    left: &[CMatrix],
    tol: &ToleranceConfig,
    seed: u64,
) -> std::result::Result<TwistedIrreps, String> {
    let n = g.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = CMatrix::zeros(n, n);
    for k in 0..n {
        let c = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        x += twisted_right_regular(g, alpha, k) * c;
    }
    let h = &x + x.adjoint();
    let eig = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let scale = eig.eigenvalues.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let gap = 1e-7 * scale;
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match clusters.last_mut() {
            Some(c) if (eig.eigenvalues[i] - eig.eigenvalues[*c.last().unwrap()]).abs() < gap => c.push(i),
            _ => clusters.push(vec![i]),
        }
    }

    let check = ToleranceConfig {
        eps_abs: tol.eps_abs.max(1e-9) * 1e3,
        eps_rel: tol.eps_rel.max(1e-9) * 1e3,
        ..*tol
    };
    let mut found: Vec<(MatrixRep, Vec<ComplexApprox>, usize)> = Vec::new();
    for cluster in &clusters {
        let d = cluster.len();
        let v = CMatrix::from_fn(n, d, |r, c| eig.eigenvectors[(r, cluster[c])]);
        let vh = v.adjoint();
        let matrices: Vec<CMatrix> = left.iter().map(|l| &vh * l * &v).collect();
        let rep = MatrixRep { degree: d, matrices };
        let chi = rep.character();
        let norm: f64 = chi.iter().map(|z| z.norm_sqr()).sum::<f64>() / n as f64;
        if (norm - 1.0).abs() > 1e-6 {
            return Err(format!("eigenspace of dimension {d} is reducible (norm {norm:.6})"));
        }
        if let Some(slot) = found
            .iter_mut()
            .find(|(_, c, _)| c.iter().zip(&chi).all(|(&a, &b)| check.approx_eq(a, b)))
        {
            slot.2 += 1;
        } else {
            found.push((rep, chi, 1));
        }
    }
    let sq: usize = found.iter().map(|(r, _, _)| r.degree * r.degree).sum();
    if sq != n {
        return Err(format!("squared degrees sum to {sq}, expected {n}"));
    }
    for (rep, _, _) in &found {
        let defect = rep.defect(g, alpha);
        if defect > 1e-6 {
            return Err(format!("extracted block violates the twisted homomorphism law by {defect:e}"));
        }
    }
    found.sort_by(|a, b| {
        a.0.degree.cmp(&b.0.degree).then_with(|| {
            for (x, y) in a.1.iter().zip(&b.1) {
                let ord = round_key(x.re)
                    .cmp(&round_key(y.re))
                    .then(round_key(x.im).cmp(&round_key(y.im)));
                if ord.is_ne() {
                    return ord.reverse();
                }
            }
            std::cmp::Ordering::Equal
        })
    });
    Ok(TwistedIrreps {
        degrees: found.iter().map(|(r, _, _)| r.degree).collect(),
        characters: found.iter().map(|(_, c, _)| c.clone()).collect(),
        regular_multiplicities: found.iter().map(|(_, _, m)| *m).collect(),
        reps: found.into_iter().map(|(r, _, _)| r).collect(),
    })
}

fn round_key(x: f64) -> i64 {
    (x * 1e6).round() as i64
}

/// Irreps of C^α[G] by splitting the α-twisted regular representation.
pub fn twisted_algebra_irreps(
    g: &FiniteGroup,
    alpha: &CocycleTable,
    tol: &ToleranceConfig,
) -> Result<TwistedIrreps> {
    alpha.verify(g, tol)?;
    let left = twisted_left_regular(g, alpha);
    let mut last = String::new();
    for attempt in 0..SPLIT_ATTEMPTS {
        match split_once(g, alpha, &left, tol, split_seed(g, tol, attempt)) {
            Ok(irreps) => return Ok(irreps),
            Err(reason) => last = reason,
        }
    }
    Err(Error::SplitFailure {
        attempts: SPLIT_ATTEMPTS,
        reason: last,
    })
}

/// Ordinary unitary irreps, ordered to match the rows of the character table.
pub fn explicit_irreps(
    g: &FiniteGroup,
    table: &super::CharacterTable,
    tol: &ToleranceConfig,
) -> Result<Vec<MatrixRep>> {
    let split = twisted_algebra_irreps(g, &CocycleTable::trivial(g.order()), tol)?;
    let check = ToleranceConfig::with_eps(1e-6);
    table
        .values
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let target: Vec<ComplexApprox> = g.elements().map(|a| row[table.class_of[a]].to_complex()).collect();
            split
                .find(&target, &check)
                .map(|k| split.reps[k].clone())
                .ok_or_else(|| Error::SplitFailure {
                    attempts: SPLIT_ATTEMPTS,
                    reason: format!("no split block matches character row {i}"),
                })
        })
        .collect()
}
