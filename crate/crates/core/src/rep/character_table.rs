//! Exact character tables by the Burnside–Dixon method.
//!
//! The class-multiplication coefficients are reduced modulo a prime
//! p ≡ 1 (mod exponent) with p > 2√|G|; common eigenvectors of the class
//! matrices over F_p give the central characters, and each character value is
//! recovered exactly from the eigenvalue multiplicities of ρ(g), computed mod p.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::scalars::{Cyclotomic, Q};

#[derive(Debug, Clone, Serialize)]
pub struct CharacterTable {
    pub group_order: usize,
    /// Smallest element of each class; class 0 is the identity.
    pub class_reps: Vec<usize>,
    pub class_sizes: Vec<usize>,
    #[serde(skip)]
    pub class_of: Vec<usize>,
    pub irrep_degrees: Vec<usize>,
    /// irrep × class
    pub values: Vec<Vec<Cyclotomic>>,
}

impl CharacterTable {
    pub fn num_irreps(&self) -> usize {
        self.irrep_degrees.len()
    }

    pub fn num_classes(&self) -> usize {
        self.class_reps.len()
    }

    /// χ_i(g) for an element g.
    pub fn value(&self, irrep: usize, element: usize) -> &Cyclotomic {
        &self.values[irrep][self.class_of[element]]
    }

    /// (1/|G|) Σ_c |c|·a(c)·conj(b(c))
    pub fn inner_product(&self, a: &[Cyclotomic], b: &[Cyclotomic]) -> Cyclotomic {
        let sum: Cyclotomic = a
            .iter()
            .zip(b)
            .zip(&self.class_sizes)
            .map(|((x, y), &s)| (x * &y.conj()).scale(Q::from_integer(s as i64)))
            .sum();
        sum.scale(Q::new(1, self.group_order as i64))
    }

    /// Row index whose values equal the given class function.
    pub fn find_row(&self, class_fn: &[Cyclotomic]) -> Option<usize> {
        self.values.iter().position(|row| row.as_slice() == class_fn)
    }

    /// Exact row orthogonality, degree sum and trivial-first checks.
    pub fn verify(&self) -> Result<()> {
        let k = self.num_irreps();
        if k != self.num_classes() {
            return Err(Error::Invalid(format!("{k} irreps for {} classes", self.num_classes())));
        }
        if self.values[0].iter().any(|v| !v.is_one()) {
            return Err(Error::Invalid("first row is not the trivial character".into()));
        }
        let sq: usize = self.irrep_degrees.iter().map(|d| d * d).sum();
        if sq != self.group_order {
            return Err(Error::Invalid(format!("sum of squared degrees {sq} != |G|")));
        }
        for i in 0..k {
            for j in 0..k {
                let ip = self.inner_product(&self.values[i], &self.values[j]);
                let want = Cyclotomic::from_int((i == j) as i64);
                if ip != want {
                    return Err(Error::Invalid(format!("rows {i}, {j} have inner product {ip}")));
                }
            }
        }
        Ok(())
    }
}

/// Multiplicities m_i = ⟨f, χ_i⟩, which must all be nonnegative integers.
pub fn decompose_by_characters(module_char: &[Cyclotomic], table: &CharacterTable) -> Result<Vec<u64>> {
    table
        .values
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let m = table.inner_product(module_char, row);
            match m.to_integer() {
                Some(v) if v >= 0 => Ok(v as u64),
                _ => Err(Error::NotACharacter {
                    irrep: i,
                    value: m.to_string(),
                }),
            }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// arithmetic mod p

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn dixon_prime(exponent: u64, order: u64) -> u64 {
    let mut p = exponent + 1;
    while !(is_prime(p) && p * p > 4 * order) {
        p += exponent;
    }
    p
}

/// An element of multiplicative order exactly `e` in F_p^*.
fn root_of_unity_mod(e: u64, p: u64) -> u64 {
    let factors: Vec<u64> = (2..=e).filter(|&q| e.is_multiple_of(q) && is_prime(q)).collect();
    for a in 2..p {
        let z = pow_mod(a, (p - 1) / e, p);
        if factors.iter().all(|&q| pow_mod(z, e / q, p) != 1) {
            return z;
        }
    }
    1
}

/// Basis of the null space of a d×d matrix mod p (columns as vectors).
fn nullspace_mod(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a: Vec<Vec<u64>> = m.to_vec();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, pr);
        let inv = inv_mod(a[r][c], p);
        for x in a[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..cols {
                    a[i][j] = (a[i][j] + p - f * a[r][j] % p) % p;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (i, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = (p - a[i][f]) % p;
            }
            v
        })
        .collect()
}

/// Row-reduce a list of vectors; returns (rref rows, pivot columns).
fn rref_mod(vectors: Vec<Vec<u64>>, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut a = vectors;
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, pr);
        let inv = inv_mod(a[r][c], p);
        for x in a[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..cols {
                    a[i][j] = (a[i][j] + p - f * a[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn character_table(g: &FiniteGroup) -> Result<CharacterTable> {
    let n = g.order();
    let cd = g.conjugacy_data();
    let r = cd.len();
    let sizes: Vec<usize> = cd.classes.iter().map(|c| c.len()).collect();
    let e = g.exponent() as u64;
    let p = dixon_prime(e, n as u64);

    // c[i][j][k] = #{x in C_i : x⁻¹ g_k in C_j}
    let mut coeff = vec![vec![vec![0u64; r]; r]; r];
    for k in 0..r {
        let gk = cd.representative(k);
        for x in g.elements() {
            let i = cd.class_of[x];
            let j = cd.class_of[g.mul(g.inv(x), gk)];
            coeff[i][j][k] += 1;
        }
    }

    // simultaneous eigenspaces of A_i, (A_i)_{jk} = c_ijk
    let identity: Vec<Vec<u64>> = (0..r)
        .map(|i| (0..r).map(|j| (i == j) as u64).collect())
        .collect();
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![identity];
    for i in 1..r {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let apply = |v: &[u64]| -> Vec<u64> {
            (0..r)
                .map(|j| (0..r).map(|k| coeff[i][j][k] % p * v[k] % p).sum::<u64>() % p)
                .collect()
        };
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            let (basis, pivots) = rref_mod(space, p);
            let d = basis.len();
            // restriction in rref coordinates: coordinate = value at pivot columns
            let images: Vec<Vec<u64>> = basis.iter().map(|b| apply(b)).collect();
            let restricted: Vec<Vec<u64>> = (0..d)
                .map(|row| (0..d).map(|col| images[col][pivots[row]]).collect())
                .collect();
            let mut found = 0;
            for lambda in 0..p {
                let shifted: Vec<Vec<u64>> = restricted
                    .iter()
                    .enumerate()
                    .map(|(a, rowv)| {
                        rowv.iter()
                            .enumerate()
                            .map(|(b, &x)| if a == b { (x + p - lambda) % p } else { x })
                            .collect()
                    })
                    .collect();
                let null = nullspace_mod(&shifted, p);
                if null.is_empty() {
                    continue;
                }
                found += null.len();
                let vecs: Vec<Vec<u64>> = null
                    .iter()
                    .map(|u| {
                        (0..r)
                            .map(|col| {
                                (0..d).map(|t| u[t] * basis[t][col] % p).sum::<u64>() % p
                            })
                            .collect()
                    })
                    .collect();
                next.push(vecs);
                if found == d {
                    break;
                }
            }
            if found != d {
                return Err(Error::Invalid(format!(
                    "class algebra of {} does not split mod {p}",
                    g.name()
                )));
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) || spaces.len() != r {
        return Err(Error::Invalid(format!(
            "class matrices of {} have a repeated common eigenvalue mod {p}",
            g.name()
        )));
    }

    let inv_class: Vec<usize> = (0..r)
        .map(|k| cd.class_of[g.inv(cd.representative(k))])
        .collect();
    let z = root_of_unity_mod(e, p);
    let z_inv = inv_mod(z, p);
    let mut rows: Vec<(usize, Vec<Cyclotomic>)> = Vec::with_capacity(r);
    for space in &spaces {
        let v = &space[0];
        let lead = inv_mod(v[0], p);
        let w: Vec<u64> = v.iter().map(|x| x * lead % p).collect();
        let s: u64 = (0..r)
            .map(|k| w[k] * w[inv_class[k]] % p * inv_mod(sizes[k] as u64, p) % p)
            .sum::<u64>()
            % p;
        let d2 = (n as u64 % p) * inv_mod(s, p) % p;
        let degree = (1..=n as u64)
            .take_while(|d| d * d <= n as u64)
            .find(|d| d * d % p == d2)
            .ok_or_else(|| Error::Invalid("no valid degree in Dixon lift".into()))?;
        let chi_mod: Vec<u64> = (0..r)
            .map(|k| w[k] * (degree % p) % p * inv_mod(sizes[k] as u64, p) % p)
            .collect();
        let values: Vec<Cyclotomic> = (0..r)
            .map(|k| {
                let gk = cd.representative(k);
                let powers: Vec<u64> = (0..e)
                    .map(|l| chi_mod[cd.class_of[g.pow(gk, l as i64)]])
                    .collect();
                let inv_e = inv_mod(e % p, p);
                let mult: Vec<Q> = (0..e)
                    .map(|s| {
                        let zs = pow_mod(z_inv, s, p);
                        let mut acc = 0u64;
                        let mut zl = 1u64;
                        for &pw in &powers {
                            acc = (acc + pw * zl) % p;
                            zl = zl * zs % p;
                        }
                        Q::from_integer((acc * inv_e % p) as i64)
                    })
                    .collect();
                Cyclotomic::from_exponents(e as u32, &mult)
            })
            .collect();
        rows.push((degree as usize, values));
    }

    // trivial first, then by degree and values
    let trivial = rows
        .iter()
        .position(|(d, vals)| *d == 1 && vals.iter().all(|v| v.is_one()))
        .ok_or_else(|| Error::Invalid("trivial character missing".into()))?;
    let triv = rows.remove(trivial);
    rows.sort_by(|a, b| {
        a.0.cmp(&b.0).then_with(|| {
            let ka: Vec<(u32, Vec<Q>)> = a.1.iter().map(|v| (v.conductor(), v.exponent_coeffs())).collect();
            let kb: Vec<(u32, Vec<Q>)> = b.1.iter().map(|v| (v.conductor(), v.exponent_coeffs())).collect();
            ka.cmp(&kb)
        })
    });
    rows.insert(0, triv);

    let table = CharacterTable {
        group_order: n,
        class_reps: (0..r).map(|k| cd.representative(k)).collect(),
        class_sizes: sizes,
        class_of: cd.class_of.clone(),
        irrep_degrees: rows.iter().map(|(d, _)| *d).collect(),
        values: rows.into_iter().map(|(_, v)| v).collect(),
    };
    table.verify()?;
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::group_from_spec;

    fn degrees(spec: &str) -> Vec<usize> {
        character_table(&group_from_spec(spec).unwrap())
            .unwrap()
            .irrep_degrees
    }

    #[test]
    fn z2_table() {
        let t = character_table(&group_from_spec("Z2").unwrap()).unwrap();
        assert_eq!(t.irrep_degrees, vec![1, 1]);
        assert_eq!(t.values[0], vec![Cyclotomic::one(), Cyclotomic::one()]);
        assert_eq!(t.values[1], vec![Cyclotomic::one(), Cyclotomic::from_int(-1)]);
    }

    #[test]
    fn small_degrees() {
        assert_eq!(degrees("S3"), vec![1, 1, 2]);
        assert_eq!(degrees("Q8"), vec![1, 1, 1, 1, 2]);
        assert_eq!(degrees("D4"), vec![1, 1, 1, 1, 2]);
        assert_eq!(degrees("A4"), vec![1, 1, 1, 3]);
        assert_eq!(degrees("S4"), vec![1, 1, 2, 3, 3]);
        assert_eq!(degrees("Z1"), vec![1]);
        assert_eq!(degrees("Z5").len(), 5);
    }

    #[test]
    fn column_orthogonality() {
        for spec in ["S3", "Q8", "A4", "S4", "D4", "Z4", "Z2xZ2", "Z3xS3"] {
            let t = character_table(&group_from_spec(spec).unwrap()).unwrap();
            let k = t.num_classes();
            for a in 0..k {
                for b in 0..k {
                    let s: Cyclotomic = (0..t.num_irreps())
                        .map(|i| &t.values[i][a] * &t.values[i][b].conj())
                        .sum();
                    let want = if a == b {
                        Cyclotomic::from_int((t.group_order / t.class_sizes[a]) as i64)
                    } else {
                        Cyclotomic::zero()
                    };
                    assert_eq!(s, want, "{spec} columns {a},{b}");
                }
            }
        }
    }

    #[test]
    fn decomposition() {
        let g = group_from_spec("S3").unwrap();
        let t = character_table(&g).unwrap();
        // regular character
        let reg: Vec<Cyclotomic> = (0..t.num_classes())
            .map(|c| Cyclotomic::from_int(if c == 0 { 6 } else { 0 }))
            .collect();
        assert_eq!(decompose_by_characters(&reg, &t).unwrap(), vec![1, 1, 2]);
        let triv = t.values[0].clone();
        assert_eq!(decompose_by_characters(&triv, &t).unwrap(), vec![1, 0, 0]);
        let half: Vec<Cyclotomic> = triv.iter().map(|v| v.scale(Q::new(1, 2))).collect();
        assert!(matches!(
            decompose_by_characters(&half, &t),
            Err(Error::NotACharacter { .. })
        ));
    }

    #[test]
    fn induced_from_a3() {
        // Ind_{A3}^{S3} ω: value 2 at e, ω+ω² = -1 at 3-cycles, 0 at transpositions
        let g = group_from_spec("S3").unwrap();
        let t = character_table(&g).unwrap();
        let ind: Vec<Cyclotomic> = t
            .class_reps
            .iter()
            .map(|&rep| match g.element_order(rep) {
                1 => Cyclotomic::from_int(2),
                3 => &Cyclotomic::zeta(3, 1) + &Cyclotomic::zeta(3, 2),
                _ => Cyclotomic::zero(),
            })
            .collect();
        assert_eq!(decompose_by_characters(&ind, &t).unwrap(), vec![0, 0, 1]);
    }
}
