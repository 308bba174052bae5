//! Modular data of the untwisted Drinfeld double D(M).

use num_integer::Integer;
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::checks::Check;
use crate::error::{Error, Result};
use crate::group::{EmbeddedGroup, FiniteGroup};
use crate::rep::{character_table, CharacterTable};
use crate::scalars::{CycMatrix, Cyclotomic, Q};

/// Simple object (a, π) of Rep D(M): a class representative and an irrep of
/// its centralizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DoubleSimple {
    pub class_index: usize,
    pub class_rep: usize,
    pub centralizer_irrep: usize,
}

#[derive(Debug, Clone)]
pub struct CentralizerData {
    pub rep: usize,
    pub class_size: usize,
    pub centralizer: EmbeddedGroup,
    pub table: CharacterTable,
}

impl CentralizerData {
    /// χ_π(x) for x in the centralizer, given as a parent element.
    pub fn value(&self, irrep: usize, x: usize) -> &Cyclotomic {
        let local = self
            .centralizer
            .to_local(x)
            .expect("element lies in the centralizer");
        self.table.value(irrep, local)
    }
}

pub fn centralizer_data(m: &FiniteGroup) -> Result<Vec<CentralizerData>> {
    let cd = m.conjugacy_data();
    cd.classes
        .iter()
        .zip(&cd.centralizers)
        .map(|(class, cent)| {
            let centralizer = cent.to_group(m);
            let table = character_table(&centralizer.group)?;
            Ok(CentralizerData {
                rep: class[0],
                class_size: class.len(),
                centralizer,
                table,
            })
        })
        .collect()
}

pub fn double_simples(m: &FiniteGroup) -> Result<Vec<DoubleSimple>> {
    Ok(simples_of(&centralizer_data(m)?))
}

fn simples_of(classes: &[CentralizerData]) -> Vec<DoubleSimple> {
    classes
        .iter()
        .enumerate()
        .flat_map(|(i, c)| {
            (0..c.table.num_irreps()).map(move |pi| DoubleSimple {
                class_index: i,
                class_rep: c.rep,
                centralizer_irrep: pi,
            })
        })
        .collect()
}

/// Fusion coefficients N_ij^k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fusion {
    rank: usize,
    coeffs: Vec<u32>,
}

impl Fusion {
    pub fn new(rank: usize) -> Self {
        Fusion {
            rank,
            coeffs: vec![0; rank * rank * rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> u32 {
        self.coeffs[(i * self.rank + j) * self.rank + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: u32) {
        self.coeffs[(i * self.rank + j) * self.rank + k] = v;
    }

    /// First (i, j, k, l) where (x_i x_j) x_k and x_i (x_j x_k) differ.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize, usize)> {
        let r = self.rank;
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    for l in 0..r {
                        let lhs: u64 = (0..r)
                            .map(|m| self.get(i, j, m) as u64 * self.get(m, k, l) as u64)
                            .sum();
                        let rhs: u64 = (0..r)
                            .map(|m| self.get(j, k, m) as u64 * self.get(i, m, l) as u64)
                            .sum();
                        if lhs != rhs {
                            return Some((i, j, k, l));
                        }
                    }
                }
            }
        }
        None
    }

    /// Nonzero entries as (i, j, k, mult).
    pub fn sparse(&self) -> Vec<(usize, usize, usize, u32)> {
        let r = self.rank;
        let mut out = Vec::new();
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let v = self.get(i, j, k);
                    if v != 0 {
                        out.push((i, j, k, v));
                    }
                }
            }
        }
        out
    }
}

impl Serialize for Fusion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            i: usize,
            j: usize,
            k: usize,
            mult: u32,
        }
        let entries: Vec<Entry> = self
            .sparse()
            .into_iter()
            .map(|(i, j, k, mult)| Entry { i, j, k, mult })
            .collect();
        entries.serialize(s)
    }
}

#[derive(Debug, Clone)]
pub struct ModularData {
    pub labels: Vec<String>,
    pub dims: Vec<Cyclotomic>,
    pub s: Vec<Vec<Cyclotomic>>,
    pub t: Vec<Cyclotomic>,
    pub fusion: Option<Fusion>,
    pub global_dim_sq: Cyclotomic,
    /// A conductor containing every entry of S and T.
    pub conductor: u32,
}

impl Serialize for ModularData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ModularData", 6)?;
        st.serialize_field("S", &self.s)?;
        st.serialize_field("T", &self.t)?;
        st.serialize_field("dims", &self.dims)?;
        st.serialize_field("fusion", &self.fusion)?;
        st.serialize_field("global_dim_sq", &self.global_dim_sq)?;
        st.serialize_field("labels", &self.labels)?;
        st.end()
    }
}

impl ModularData {
    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    fn s_matrix(&self) -> CycMatrix {
        CycMatrix::from_entries(self.conductor, &self.s)
    }
}

/// D(M) together with the per-class data its labels refer to.
#[derive(Debug, Clone)]
pub struct DoubleModel {
    pub group_order: usize,
    pub simples: Vec<DoubleSimple>,
    pub classes: Vec<CentralizerData>,
    pub data: ModularData,
}

impl DoubleModel {
    pub fn dim(&self, i: usize) -> usize {
        let s = &self.simples[i];
        let c = &self.classes[s.class_index];
        c.class_size * c.table.irrep_degrees[s.centralizer_irrep]
    }

    pub fn index_of(&self, class_index: usize, irrep: usize) -> Option<usize> {
        self.simples
            .iter()
            .position(|s| s.class_index == class_index && s.centralizer_irrep == irrep)
    }
}

/// S_{(a,χ),(b,η)} = 1/(|C(a)||C(b)|) Σ_{g : [a, gbg⁻¹] = 1} χ(gbg⁻¹)·η(g⁻¹ag),
/// T_{(a,χ)} = χ(a)/χ(e); all invariants are verified exactly before returning.
pub fn double_modular_data(m: &FiniteGroup) -> Result<DoubleModel> {
    let classes = centralizer_data(m)?;
    let simples = simples_of(&classes);
    let conductor = m.exponent() as u32;
    let order = m.order();

    let labels: Vec<String> = simples
        .iter()
        .map(|s| format!("{}:{}", m.element_name(s.class_rep), s.centralizer_irrep))
        .collect();
    let dims: Vec<Cyclotomic> = simples
        .iter()
        .map(|s| {
            let c = &classes[s.class_index];
            Cyclotomic::from_int((c.class_size * c.table.irrep_degrees[s.centralizer_irrep]) as i64)
        })
        .collect();

    let r = simples.len();
    let mut s_mat = vec![vec![Cyclotomic::zero(); r]; r];
    let nc = classes.len();
    for ci in 0..nc {
        for cj in ci..nc {
            let (a, b) = (classes[ci].rep, classes[cj].rep);
            let pairs: Vec<(usize, usize)> = m
                .elements()
                .filter_map(|g| {
                    let x = m.conj(g, b);
                    (m.mul(a, x) == m.mul(x, a)).then(|| (x, m.conj(m.inv(g), a)))
                })
                .collect();
            let norm = Q::new(1, (order / classes[ci].class_size * (order / classes[cj].class_size)) as i64);
            let rows: Vec<usize> = (0..r).filter(|&k| simples[k].class_index == ci).collect();
            let cols: Vec<usize> = (0..r).filter(|&k| simples[k].class_index == cj).collect();
            for &p in &rows {
                for &q in &cols {
                    let chi = simples[p].centralizer_irrep;
                    let eta = simples[q].centralizer_irrep;
                    let mut acc = vec![Q::zero(); conductor as usize];
                    for &(x, y) in &pairs {
                        let u = classes[ci].value(chi, x).exponents_at(conductor);
                        let v = classes[cj].value(eta, y).exponents_at(conductor);
                        for (i, cu) in u.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                            for (j, cv) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                                acc[(i + j) % conductor as usize] += *cu * *cv;
                            }
                        }
                    }
                    let val = Cyclotomic::from_exponents(conductor, &acc).scale(norm);
                    s_mat[q][p] = val.clone();
                    s_mat[p][q] = val;
                }
            }
        }
    }

    let t: Vec<Cyclotomic> = simples
        .iter()
        .map(|s| {
            let c = &classes[s.class_index];
            let deg = c.table.irrep_degrees[s.centralizer_irrep] as i64;
            c.value(s.centralizer_irrep, s.class_rep).scale(Q::new(1, deg))
        })
        .collect();

    let global_dim_sq: Cyclotomic = dims.iter().map(|d| d * d).sum();
    let data = ModularData {
        labels,
        dims,
        s: s_mat,
        t,
        fusion: None,
        global_dim_sq,
        conductor,
    };
    let failed: Vec<Check> = verify_modular_axioms(&data)
        .into_iter()
        .filter(|c| !c.pass)
        .collect();
    if let Some(c) = failed.first() {
        return Err(Error::AxiomFailure {
            axiom: c.name.clone(),
            witness: c.witness.clone().unwrap_or_default(),
        });
    }
    Ok(DoubleModel {
        group_order: order,
        simples,
        classes,
        data,
    })
}

/// Verlinde coefficients N_ij^k = Σ_m S_im S_jm conj(S_km) / S_0m, checked to
/// be nonnegative integers.
pub fn verlinde_fusion(md: &ModularData) -> Result<Fusion> {
    let r = md.rank();
    let n = md.conductor as usize;
    let s0: Vec<Q> = (0..r)
        .map(|m| {
            md.s[0][m].to_rational().filter(|q| !q.is_zero()).ok_or_else(|| Error::AxiomFailure {
                axiom: "unit row".into(),
                witness: format!("S[0][{m}] = {} is not a nonzero rational", md.s[0][m]),
            })
        })
        .collect::<Result<_>>()?;

    // integer exponent vectors A = den·S
    let exps: Vec<Vec<Vec<Q>>> = md.s.iter().map(|row| row.iter().map(|x| x.exponents_at(md.conductor)).collect()).collect();
    let den = exps
        .iter()
        .flatten()
        .flatten()
        .fold(1i64, |acc, q| acc.lcm(q.denom()));
    let ints: Vec<Vec<Vec<i64>>> = exps
        .iter()
        .map(|row| row.iter().map(|v| v.iter().map(|q| (q * den).to_integer()).collect()).collect())
        .collect();
    // weights w_m = 1/S_0m scaled to integers
    let wden = s0.iter().fold(1i64, |acc, q| acc.lcm(q.numer()));
    let weights: Vec<i64> = s0.iter().map(|q| (q.recip() * wden).to_integer()).collect();
    let scale = Q::new(1, 1) / (Q::from_integer(den).pow(3) * Q::from_integer(wden));

    let conv = |a: &[i64], b: &[i64], out: &mut [i64]| {
        for (i, &x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
            for (j, &y) in b.iter().enumerate().filter(|(_, y)| **y != 0) {
                out[(i + j) % n] += x * y;
            }
        }
    };
    let conj_vec = |v: &[i64]| -> Vec<i64> { (0..n).map(|k| v[(n - k) % n]).collect() };
    let conj_rows: Vec<Vec<Vec<i64>>> = ints.iter().map(|row| row.iter().map(|v| conj_vec(v)).collect()).collect();

    let mut fusion = Fusion::new(r);
    for i in 0..r {
        for j in i..r {
            let pm: Vec<Vec<i64>> = (0..r)
                .map(|m| {
                    let mut out = vec![0i64; n];
                    conv(&ints[i][m], &ints[j][m], &mut out);
                    out.iter().map(|x| x * weights[m]).collect()
                })
                .collect();
            for k in 0..r {
                let mut acc = vec![0i64; n];
                for m in 0..r {
                    conv(&pm[m], &conj_rows[k][m], &mut acc);
                }
                let coeffs: Vec<Q> = acc.iter().map(|&x| Q::from_integer(x) * scale).collect();
                let val = Cyclotomic::from_exponents(md.conductor, &coeffs);
                match val.to_integer() {
                    Some(v) if v >= 0 => {
                        fusion.set(i, j, k, v as u32);
                        fusion.set(j, i, k, v as u32);
                    }
                    _ => {
                        return Err(Error::NonIntegralFusion {
                            i,
                            j,
                            k,
                            value: val.to_string(),
                        })
                    }
                }
            }
        }
    }
    for j in 0..r {
        for k in 0..r {
            if fusion.get(0, j, k) != (j == k) as u32 {
                return Err(Error::AxiomFailure {
                    axiom: "unit fusion".into(),
                    witness: format!("N[0][{j}][{k}] = {}", fusion.get(0, j, k)),
                });
            }
        }
    }
    Ok(fusion)
}

fn first_mismatch(a: &[Vec<Cyclotomic>], b: &[Vec<Cyclotomic>]) -> Option<(usize, usize)> {
    for (i, (ra, rb)) in a.iter().zip(b).enumerate() {
        for (j, (x, y)) in ra.iter().zip(rb).enumerate() {
            if x != y {
                return Some((i, j));
            }
        }
    }
    None
}

/// Exact determinant by Gaussian elimination over the cyclotomic field.
pub fn determinant(m: &[Vec<Cyclotomic>]) -> Cyclotomic {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Cyclotomic::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Cyclotomic::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det = &det * &a[c][c];
        let inv = a[c][c].inv().expect("pivot is nonzero");
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..n {
                let d = &f * &a[c][j];
                a[i][j] = &a[i][j] - &d;
            }
        }
    }
    det
}

/// Pass/fail per modular axiom; every comparison is exact.
pub fn verify_modular_axioms(md: &ModularData) -> Vec<Check> {
    let r = md.rank();
    let mut out = Vec::new();

    let sym = (0..r).flat_map(|i| (0..r).map(move |j| (i, j))).find(|&(i, j)| md.s[i][j] != md.s[j][i]);
    out.push(Check::from_bool("S symmetric", sym.is_none(), || format!("S[{:?}] differs from its transpose", sym.unwrap())));

    let s = md.s_matrix();
    let ssh = s.mul(&s.adjoint()).to_entries();
    let id: Vec<Vec<Cyclotomic>> = (0..r).map(|i| (0..r).map(|j| Cyclotomic::from_int((i == j) as i64)).collect()).collect();
    let bad = first_mismatch(&ssh, &id);
    out.push(Check::from_bool("S unitary", bad.is_none(), || {
        let (i, j) = bad.unwrap();
        format!("(S S*)[{i}][{j}] = {}", ssh[i][j])
    }));

    let t_ok = md.t.iter().position(|x| !x.is_root_of_unity());
    out.push(Check::from_bool("T roots of unity", t_ok.is_none(), || format!("T[{}] = {}", t_ok.unwrap(), md.t[t_ok.unwrap()])));

    let d2: Cyclotomic = md.dims.iter().map(|d| d * d).sum();
    let gd_ok = d2 == md.global_dim_sq;
    let root = md.global_dim_sq.to_rational().and_then(rational_sqrt);
    let first_row = root.as_ref().and_then(|dq| {
        (0..r).find(|&j| md.s[0][j] != md.dims[j].scale(dq.recip()))
    });
    out.push(Check::from_bool(
        "first row is dims/D",
        gd_ok && root.is_some() && first_row.is_none(),
        || match (gd_ok, &root) {
            (false, _) => format!("sum of squared dims {d2} != {}", md.global_dim_sq),
            (_, None) => format!("global dimension {} has no rational square root", md.global_dim_sq),
            _ => format!("S[0][{}] = {}", first_row.unwrap(), md.s[0][first_row.unwrap()]),
        },
    ));

    let s2 = s.mul(&s).to_entries();
    let perm = s2.iter().all(|row| {
        row.iter().filter(|x| x.is_one()).count() == 1 && row.iter().all(|x| x.is_one() || x.is_zero())
    });
    out.push(Check::from_bool("S^2 is a permutation", perm, || "S^2 has an entry outside {0,1}".into()));

    // Our S is the complex conjugate of the usual convention, so the modular
    // relation reads (S T⁻¹)³ ∝ S².
    let tinv: Vec<Cyclotomic> = md.t.iter().map(|x| x.conj()).collect();
    let st = s.mul(&CycMatrix::diagonal(md.conductor, &tinv));
    let st3 = st.mul(&st).mul(&st).to_entries();
    let rel = proportional(&st3, &s2);
    out.push(Check::from_bool("(S T^-1)^3 proportional to S^2", rel, || "no common scalar".into()));

    let det = determinant(&md.s);
    out.push(Check::from_bool("det S nonzero", !det.is_zero(), || "det S = 0".into()));
    out
}

fn proportional(a: &[Vec<Cyclotomic>], b: &[Vec<Cyclotomic>]) -> bool {
    let Some((i, j)) = (0..b.len()).flat_map(|i| (0..b.len()).map(move |j| (i, j))).find(|&(i, j)| !b[i][j].is_zero()) else {
        return false;
    };
    let Some(inv) = b[i][j].inv() else { return false };
    let lambda = &a[i][j] * &inv;
    if lambda.is_zero() {
        return false;
    }
    a.iter().zip(b).all(|(ra, rb)| ra.iter().zip(rb).all(|(x, y)| *x == &lambda * y))
}

fn rational_sqrt(q: Q) -> Option<Q> {
    let isqrt = |v: i64| -> Option<i64> {
        if v < 0 {
            return None;
        }
        let r = (v as f64).sqrt().round() as i64;
        (r - 1..=r + 1).find(|&x| x >= 0 && x * x == v)
    };
    Some(Q::new(isqrt(*q.numer())?, isqrt(*q.denom())?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::group_from_spec;

    fn model(spec: &str) -> DoubleModel {
        double_modular_data(&group_from_spec(spec).unwrap()).unwrap()
    }

    #[test]
    fn z2_s_matrix() {
        let d = model("Z2");
        let h = Q::new(1, 2);
        let signs = [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(d.data.s[i][j], Cyclotomic::from_rational(h * signs[i][j]));
            }
        }
    }

    #[test]
    fn trivial_group() {
        let d = model("Z1");
        assert_eq!(d.data.s, vec![vec![Cyclotomic::one()]]);
        assert_eq!(d.data.t, vec![Cyclotomic::one()]);
    }

    #[test]
    fn counts_and_dims() {
        assert_eq!(model("Z2").simples.len(), 4);
        let s3 = model("S3");
        let mut dims: Vec<usize> = (0..s3.simples.len()).map(|i| s3.dim(i)).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 1, 2, 2, 2, 2, 3, 3]);
        for j in 0..8 {
            assert_eq!(s3.data.s[j][0], Cyclotomic::from_rational(Q::new(s3.dim(j) as i64, 6)));
        }
        assert_eq!(model("Q8").simples.len(), 22);
    }

    #[test]
    fn zeroed_entry_breaks_unitarity() {
        let mut d = model("S3").data;
        d.s[1][2] = Cyclotomic::zero();
        let checks = verify_modular_axioms(&d);
        assert!(!checks.iter().find(|c| c.name == "S unitary").unwrap().pass);
    }

    #[test]
    fn z3_nondegenerate() {
        let d = model("Z3");
        assert_eq!(d.simples.len(), 9);
        assert!(!determinant(&d.data.s).is_zero());
    }

    #[test]
    fn z2_fusion_of_invertibles() {
        let d = model("Z2");
        let f = verlinde_fusion(&d.data).unwrap();
        for i in 1..4 {
            for j in 1..4 {
                if i != j {
                    let k = 6 - i - j;
                    assert_eq!(f.get(i, j, k), 1);
                    assert_eq!((0..4).map(|l| f.get(i, j, l)).sum::<u32>(), 1);
                }
            }
        }
    }

    #[test]
    fn s3_fusion_dimensions() {
        let d = model("S3");
        let f = verlinde_fusion(&d.data).unwrap();
        for i in 0..8 {
            for j in 0..8 {
                let lhs: usize = (0..8).map(|k| f.get(i, j, k) as usize * d.dim(k)).sum();
                assert_eq!(lhs, d.dim(i) * d.dim(j));
            }
        }
        assert!(f.associativity_witness().is_none());
    }
}
