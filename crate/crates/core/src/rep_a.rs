//! Rep A for A = F(M/N), realized as modules over L = C[N] ⋉ F(M).
//!
//! Simple L-modules are labelled by (m, π): m the smallest element of its
//! N-conjugacy orbit in M and π an irrep of C_N(m). Characters of modules are
//! kept exactly as "diagonal traces" D(g, n) = Σ_{grade(b)=g} ρ(n)_{bb}, with
//! values stored as integer exponent vectors over ζ_e, e = exponent(M).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{quotient_with_section, EmbeddedGroup, FiniteGroup, QuotientData, Subgroup};
use crate::rep::{character_table, explicit_irreps, CMatrix, CharacterTable, MatrixRep};
use crate::scalars::{Cyclotomic, ToleranceConfig, Q};

/// N-conjugacy orbit in M with the data attached to its smallest element.
#[derive(Debug, Clone)]
pub struct OrbitData {
    pub m: usize,
    pub members: Vec<usize>,
    pub centralizer: Subgroup,
    pub centralizer_group: EmbeddedGroup,
    pub table: CharacterTable,
    pub irreps: Vec<MatrixRep>,
    /// Left coset representatives t_i of C_N(m) in N; t_0 = e.
    pub cosets: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SimpleLabel {
    #[serde(rename = "m_index")]
    pub m: usize,
    #[serde(rename = "centralizer_irrep")]
    pub pi: usize,
    #[serde(rename = "dimA")]
    pub dim_a: usize,
    pub sector: usize,
    #[serde(skip)]
    pub orbit: usize,
}

impl SimpleLabel {
    pub fn is_untwisted(&self) -> bool {
        self.sector == 0
    }
}

/// An M-graded module with a compatible N-action.
#[derive(Debug, Clone)]
pub struct GradedModule {
    pub dim: usize,
    /// basis index -> element of M
    pub grading: Vec<usize>,
    /// indexed like the members of N
    pub n_action: Vec<CMatrix>,
}

/// Exact diagonal-trace character D(g, n) for g ∈ M, n ∈ N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleChar {
    m_order: usize,
    n_order: usize,
    conductor: usize,
    data: Vec<i64>,
}

impl ModuleChar {
    fn zero(m_order: usize, n_order: usize, conductor: usize) -> Self {
        ModuleChar {
            m_order,
            n_order,
            conductor,
            data: vec![0; m_order * n_order * conductor],
        }
    }

    fn slot(&self, g: usize, n_local: usize) -> std::ops::Range<usize> {
        let start = (g * self.n_order + n_local) * self.conductor;
        start..start + self.conductor
    }

    pub fn get(&self, g: usize, n_local: usize) -> &[i64] {
        &self.data[self.slot(g, n_local)]
    }

    fn get_mut(&mut self, g: usize, n_local: usize) -> &mut [i64] {
        let r = self.slot(g, n_local);
        &mut self.data[r]
    }

    pub fn value(&self, g: usize, n_local: usize) -> Cyclotomic {
        let q: Vec<Q> = self.get(g, n_local).iter().map(|&x| Q::from_integer(x)).collect();
        Cyclotomic::from_exponents(self.conductor as u32, &q)
    }

    /// Total dimension Σ_g D(g, e).
    pub fn dimension(&self) -> i64 {
        (0..self.m_order).map(|g| self.get(g, 0)[0]).sum()
    }
}

fn exps_int(c: &Cyclotomic, conductor: usize) -> Vec<i64> {
    c.exponents_at(conductor as u32)
        .iter()
        .map(|q| {
            assert!(q.is_integer(), "character value must be an algebraic integer");
            q.to_integer()
        })
        .collect()
}

fn conj_exps(v: &[i64]) -> Vec<i64> {
    let n = v.len();
    (0..n).map(|k| v[(n - k) % n]).collect()
}

#[derive(Debug, Clone)]
pub struct RepA {
    pub m: FiniteGroup,
    pub n: Subgroup,
    pub quotient: QuotientData,
    pub orbits: Vec<OrbitData>,
    pub labels: Vec<SimpleLabel>,
    pub tol: ToleranceConfig,
    /// M element -> position in the member list of N
    n_local: Vec<Option<usize>>,
    /// M element -> orbit index
    orbit_of: Vec<usize>,
    conductor: usize,
    chars: Vec<ModuleChar>,
}

impl RepA {
    pub fn new(m: &FiniteGroup, n: &Subgroup, tol: &ToleranceConfig) -> Result<Self> {
        let quotient = quotient_with_section(m, n)?;
        let mut n_local = vec![None; m.order()];
        for (i, &x) in n.members().iter().enumerate() {
            n_local[x] = Some(i);
        }
        let mut orbit_of = vec![usize::MAX; m.order()];
        let mut orbits = Vec::new();
        for x in m.elements() {
            if orbit_of[x] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = n.members().iter().map(|&k| m.conj(k, x)).collect();
            members.sort();
            members.dedup();
            for &y in &members {
                orbit_of[y] = orbits.len();
            }
            let cent_members: Vec<usize> = n
                .members()
                .iter()
                .copied()
                .filter(|&k| m.mul(k, x) == m.mul(x, k))
                .collect();
            let centralizer = Subgroup::from_members(m, cent_members)?;
            let centralizer_group = centralizer.to_group(m);
            let table = character_table(&centralizer_group.group)?;
            let irreps = explicit_irreps(&centralizer_group.group, &table, tol)?;
            let mut cosets = Vec::new();
            let mut covered = vec![false; m.order()];
            for &t in n.members() {
                if covered[t] {
                    continue;
                }
                cosets.push(t);
                for &c in centralizer.members() {
                    covered[m.mul(t, c)] = true;
                }
            }
            orbits.push(OrbitData {
                m: x,
                members,
                centralizer,
                centralizer_group,
                table,
                irreps,
                cosets,
            });
        }
        let mut labels = Vec::new();
        for (oi, o) in orbits.iter().enumerate() {
            for (pi, &deg) in o.table.irrep_degrees.iter().enumerate() {
                labels.push(SimpleLabel {
                    m: o.m,
                    pi,
                    dim_a: o.cosets.len() * deg,
                    sector: quotient.project(o.m),
                    orbit: oi,
                });
            }
        }
        let mut rep = RepA {
            m: m.clone(),
            n: n.clone(),
            quotient,
            orbits,
            labels,
            tol: *tol,
            n_local,
            orbit_of,
            conductor: m.exponent(),
            chars: Vec::new(),
        };
        rep.chars = (0..rep.labels.len()).map(|i| rep.induced_char(i)).collect();
        Ok(rep)
    }

    pub fn num_labels(&self) -> usize {
        self.labels.len()
    }

    pub fn unit(&self) -> usize {
        0
    }

    pub fn n_members(&self) -> &[usize] {
        self.n.members()
    }

    pub fn n_local(&self, x: usize) -> Option<usize> {
        self.n_local[x]
    }

    pub fn g_order(&self) -> usize {
        self.quotient.quotient.order()
    }

    pub fn label_index(&self, m: usize, pi: usize) -> Option<usize> {
        self.labels.iter().position(|l| l.m == m && l.pi == pi)
    }

    pub fn orbit_of(&self, x: usize) -> &OrbitData {
        &self.orbits[self.orbit_of[x]]
    }

    pub fn char_of(&self, label: usize) -> &ModuleChar {
        &self.chars[label]
    }

    pub fn conductor(&self) -> usize {
        self.conductor
    }

    fn induced_char(&self, label: usize) -> ModuleChar {
        let l = self.labels[label];
        let o = &self.orbits[l.orbit];
        let m = &self.m;
        let mut ch = ModuleChar::zero(m.order(), self.n.order(), self.conductor);
        for &t in &o.cosets {
            let g = m.conj(t, o.m);
            for (nl, &k) in self.n.members().iter().enumerate() {
                let c = m.mul(m.mul(m.inv(t), k), t);
                if let Some(local) = o.centralizer_group.to_local(c) {
                    let v = exps_int(o.table.value(l.pi, local), self.conductor);
                    for (slot, x) in ch.get_mut(g, nl).iter_mut().zip(v) {
                        *slot += x;
                    }
                }
            }
        }
        ch
    }

    /// Multiplicities of every simple label in a module with the given character.
    pub fn decompose(&self, ch: &ModuleChar) -> Result<Vec<u64>> {
        self.labels
            .iter()
            .map(|l| {
                let o = &self.orbits[l.orbit];
                let mut acc = vec![0i64; self.conductor];
                for (cl, &c) in o.centralizer.members().iter().enumerate() {
                    let nl = self.n_local[c].unwrap();
                    let a = ch.get(l.m, nl);
                    let b = conj_exps(&exps_int(o.table.value(l.pi, cl), self.conductor));
                    convolve(a, &b, &mut acc);
                }
                let q: Vec<Q> = acc.iter().map(|&x| Q::from_integer(x)).collect();
                let v = Cyclotomic::from_exponents(self.conductor as u32, &q)
                    .scale(Q::new(1, o.centralizer.order() as i64));
                match v.to_integer() {
                    Some(k) if k >= 0 => Ok(k as u64),
                    _ => Err(Error::NonIntegralMultiplicity {
                        value: v.to_complex().re,
                        context: format!("label ({}, {})", self.m.element_name(l.m), l.pi),
                    }),
                }
            })
            .collect()
    }

    /// Character of the tensor product over L (multiplicative grading,
    /// diagonal N-action), evaluated only where `decompose` reads it.
    pub fn tensor_char(&self, a: &ModuleChar, b: &ModuleChar) -> ModuleChar {
        let m = &self.m;
        let mut out = ModuleChar::zero(m.order(), self.n.order(), self.conductor);
        for o in &self.orbits {
            for &c in o.centralizer.members() {
                let nl = self.n_local[c].unwrap();
                let mut acc = vec![0i64; self.conductor];
                for g1 in m.elements() {
                    let g2 = m.mul(m.inv(g1), o.m);
                    convolve(a.get(g1, nl), b.get(g2, nl), &mut acc);
                }
                out.get_mut(o.m, nl).copy_from_slice(&acc);
            }
        }
        out
    }

    pub fn dual_char(&self, a: &ModuleChar) -> ModuleChar {
        let m = &self.m;
        let mut out = ModuleChar::zero(m.order(), self.n.order(), self.conductor);
        for g in m.elements() {
            for nl in 0..self.n.order() {
                let v = conj_exps(a.get(m.inv(g), nl));
                out.get_mut(g, nl).copy_from_slice(&v);
            }
        }
        out
    }

    /// Character of the module twisted by conjugation with k ∈ M: grading
    /// g ↦ k g k⁻¹ and n acting as k⁻¹ n k.
    pub fn conjugated_char(&self, a: &ModuleChar, k: usize) -> ModuleChar {
        let m = &self.m;
        let kinv = m.inv(k);
        let mut out = ModuleChar::zero(m.order(), self.n.order(), self.conductor);
        for g in m.elements() {
            for (nl, &x) in self.n.members().iter().enumerate() {
                let src_g = m.conj(kinv, g);
                let src_n = self.n_local[m.conj(kinv, x)].unwrap();
                out.get_mut(g, nl).copy_from_slice(a.get(src_g, src_n));
            }
        }
        out
    }

    /// The unique label of a simple module character.
    pub fn identify(&self, ch: &ModuleChar) -> Result<usize> {
        let mult = self.decompose(ch)?;
        let nonzero: Vec<usize> = (0..mult.len()).filter(|&i| mult[i] != 0).collect();
        match nonzero.as_slice() {
            [i] if mult[*i] == 1 => Ok(*i),
            _ => Err(Error::Invalid(format!("module is not simple: multiplicities {mult:?}"))),
        }
    }

    pub fn fuse_labels(&self, x: usize, y: usize) -> Result<Vec<u64>> {
        let mult = self.decompose(&self.tensor_char(&self.chars[x], &self.chars[y]))?;
        let total: usize = mult.iter().zip(&self.labels).map(|(&k, l)| k as usize * l.dim_a).sum();
        let want = self.labels[x].dim_a * self.labels[y].dim_a;
        if total != want {
            return Err(Error::NonIntegralMultiplicity {
                value: total as f64,
                context: format!("fusion of labels {x} and {y} has dimension {total}, expected {want}"),
            });
        }
        Ok(mult)
    }

    pub fn dual_label(&self, x: usize) -> Result<usize> {
        self.identify(&self.dual_char(&self.chars[x]))
    }

    /// g·(m, π) = (g̃ m g̃⁻¹, π ∘ conj_{g̃⁻¹}), relabelled canonically.
    pub fn act_on_label(&self, g: usize, x: usize) -> usize {
        self.act_on_label_with(&self.quotient, g, x)
    }

    pub fn act_on_label_with(&self, q: &QuotientData, g: usize, x: usize) -> usize {
        let m = &self.m;
        let l = self.labels[x];
        let o = &self.orbits[l.orbit];
        let lift = q.lift(g);
        let moved = m.conj(lift, l.m);
        let target = self.orbit_of(moved);
        let n0 = self
            .n
            .members()
            .iter()
            .copied()
            .find(|&k| m.conj(k, moved) == target.m)
            .expect("canonical element lies in the N-orbit");
        let k = m.mul(n0, lift);
        let kinv = m.inv(k);
        let row: Vec<Cyclotomic> = target
            .table
            .class_reps
            .iter()
            .map(|&local| {
                let c = target.centralizer_group.to_parent(local);
                let back = o.centralizer_group.to_local(m.conj(kinv, c)).unwrap();
                o.table.value(l.pi, back).clone()
            })
            .collect();
        let pi = target.table.find_row(&row).expect("conjugate of an irrep is an irrep");
        self.label_index(target.m, pi).unwrap()
    }

    /// The induced module Ind_{C_N(m)}^{N} π with grading t_i m t_i⁻¹.
    pub fn build_graded_module(&self, x: usize) -> GradedModule {
        let m = &self.m;
        let l = self.labels[x];
        let o = &self.orbits[l.orbit];
        let rho = &o.irreps[l.pi];
        let d = rho.degree;
        let k = o.cosets.len();
        let dim = k * d;
        let grading: Vec<usize> = o
            .cosets
            .iter()
            .flat_map(|&t| std::iter::repeat_n(m.conj(t, o.m), d))
            .collect();
        let n_action = self
            .n
            .members()
            .iter()
            .map(|&nn| {
                let mut mat = CMatrix::zeros(dim, dim);
                for (j, &tj) in o.cosets.iter().enumerate() {
                    let ntj = m.mul(nn, tj);
                    let (i, c) = o
                        .cosets
                        .iter()
                        .enumerate()
                        .find_map(|(i, &ti)| {
                            let c = m.mul(m.inv(ti), ntj);
                            o.centralizer_group.to_local(c).map(|c| (i, c))
                        })
                        .expect("cosets cover N");
                    mat.view_mut((i * d, j * d), (d, d)).copy_from(&rho.matrices[c]);
                }
                mat
            })
            .collect();
        GradedModule {
            dim,
            grading,
            n_action,
        }
    }

    /// Untwisted labels paired with (class index, irrep) labels of D(N).
    pub fn untwisted_to_double(&self, dn: &crate::double::DoubleModel) -> Vec<(usize, Option<usize>)> {
        let emb = self.n.to_group(&self.m);
        (0..self.labels.len())
            .filter(|&i| self.labels[i].is_untwisted())
            .map(|i| {
                let l = self.labels[i];
                let local = emb.to_local(l.m).unwrap();
                let j = dn
                    .simples
                    .iter()
                    .position(|s| s.class_rep == local && s.centralizer_irrep == l.pi);
                (i, j)
            })
            .collect()
    }

    /// Section-independent sector check helpers.
    pub fn sector(&self, x: usize) -> usize {
        self.labels[x].sector
    }
}

pub(crate) fn convolve(a: &[i64], b: &[i64], out: &mut [i64]) {
    let n = out.len();
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                out[(i + j) % n] += x * y;
            }
        }
    }
}

impl GradedModule {
    /// Largest violation of the homomorphism law and of grading compatibility.
    pub fn defect(&self, rep: &RepA) -> f64 {
        let m = &rep.m;
        let members = rep.n_members();
        let mut worst: f64 = 0.0;
        for (a, &x) in members.iter().enumerate() {
            for (b, &y) in members.iter().enumerate() {
                let xy = rep.n_local(m.mul(x, y)).unwrap();
                let diff = &self.n_action[a] * &self.n_action[b] - &self.n_action[xy];
                worst = worst.max(diff.norm());
            }
            let mat = &self.n_action[a];
            for i in 0..self.dim {
                for j in 0..self.dim {
                    if mat[(i, j)].norm() > 1e-12 && self.grading[i] != m.conj(x, self.grading[j]) {
                        worst = worst.max(mat[(i, j)].norm());
                    }
                }
            }
        }
        worst
    }

    /// Numerical diagonal trace at (g, n).
    pub fn diagonal_trace(&self, g: usize, n_local: usize) -> num_complex::Complex64 {
        (0..self.dim)
            .filter(|&b| self.grading[b] == g)
            .map(|b| self.n_action[n_local][(b, b)])
            .sum()
    }
}

/// Label list for (M, N); convenience wrapper.
pub fn repa_simples(m: &FiniteGroup, n: &Subgroup, tol: &ToleranceConfig) -> Result<Vec<SimpleLabel>> {
    Ok(RepA::new(m, n, tol)?.labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::double::double_modular_data;
    use crate::group::group_from_spec;

    fn setup(spec: &str, order: usize) -> RepA {
        let m = group_from_spec(spec).unwrap();
        let n = m.normal_subgroups().into_iter().find(|s| s.order() == order).unwrap();
        RepA::new(&m, &n, &ToleranceConfig::default()).unwrap()
    }

    #[test]
    fn s3_a3_labels() {
        let r = setup("S3", 3);
        assert_eq!(r.num_labels(), 10);
        let untw: Vec<usize> = r.labels.iter().filter(|l| l.is_untwisted()).map(|l| l.dim_a).collect();
        assert_eq!(untw, vec![1; 9]);
        let tw: Vec<usize> = r.labels.iter().filter(|l| !l.is_untwisted()).map(|l| l.dim_a).collect();
        assert_eq!(tw, vec![3]);
    }

    #[test]
    fn q8_center_labels() {
        let r = setup("Q8", 2);
        assert_eq!(r.num_labels(), 16);
        assert!(r.labels.iter().all(|l| l.dim_a == 1));
        for s in 0..4 {
            assert_eq!(r.labels.iter().filter(|l| l.sector == s).count(), 4);
        }
    }

    #[test]
    fn whole_group_gives_double() {
        let m = group_from_spec("S3").unwrap();
        let r = RepA::new(&m, &m.whole(), &ToleranceConfig::default()).unwrap();
        assert_eq!(r.num_labels(), 8);
    }

    #[test]
    fn graded_module_matches_exact_character() {
        for (spec, ord) in [("S3", 3), ("Q8", 2), ("S4", 12), ("S4", 4), ("D4", 2)] {
            let r = setup(spec, ord);
            for x in 0..r.num_labels() {
                let gm = r.build_graded_module(x);
                assert_eq!(gm.dim, r.labels[x].dim_a);
                assert!(gm.defect(&r) < 1e-9, "{spec} label {x}");
                let ch = r.char_of(x);
                for g in r.m.elements() {
                    for nl in 0..r.n.order() {
                        let exact = ch.value(g, nl).to_complex();
                        assert!((exact - gm.diagonal_trace(g, nl)).norm() < 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn twisted_label_module() {
        let r = setup("S3", 3);
        let x = r.labels.iter().position(|l| !l.is_untwisted()).unwrap();
        let gm = r.build_graded_module(x);
        let mut grades = gm.grading.clone();
        grades.sort();
        grades.dedup();
        assert_eq!(grades.len(), 3);
        assert!(grades.iter().all(|&g| r.m.element_order(g) == 2));
    }

    #[test]
    fn action_swaps_a3_characters() {
        let r = setup("S3", 3);
        let e_labels: Vec<usize> = (0..r.num_labels()).filter(|&i| r.labels[i].m == 0).collect();
        assert_eq!(e_labels.len(), 3);
        assert_eq!(r.act_on_label(1, e_labels[0]), e_labels[0]);
        assert_eq!(r.act_on_label(1, e_labels[1]), e_labels[2]);
        assert_eq!(r.act_on_label(1, e_labels[2]), e_labels[1]);
        for x in 0..r.num_labels() {
            assert_eq!(r.act_on_label(0, x), x);
        }
    }

    #[test]
    fn action_agrees_with_character_transport() {
        for (spec, ord) in [("S3", 3), ("Q8", 2), ("S4", 12), ("S4", 4), ("D4", 2), ("Z4", 2)] {
            let r = setup(spec, ord);
            for g in 0..r.g_order() {
                for x in 0..r.num_labels() {
                    let moved = r.conjugated_char(r.char_of(x), r.quotient.lift(g));
                    assert_eq!(r.identify(&moved).unwrap(), r.act_on_label(g, x));
                }
            }
        }
    }

    #[test]
    fn duals_and_unit() {
        let r = setup("S3", 3);
        assert_eq!(r.dual_label(0).unwrap(), 0);
        let e_labels: Vec<usize> = (0..r.num_labels()).filter(|&i| r.labels[i].m == 0).collect();
        assert_eq!(r.dual_label(e_labels[1]).unwrap(), e_labels[2]);
        let tw = r.labels.iter().position(|l| !l.is_untwisted()).unwrap();
        assert_eq!(r.dual_label(tw).unwrap(), tw);
        for x in 0..r.num_labels() {
            let f = r.fuse_labels(x, 0).unwrap();
            assert_eq!(f.iter().sum::<u64>(), 1);
            assert_eq!(f[x], 1);
            let d = r.dual_label(x).unwrap();
            assert_eq!(r.fuse_labels(x, d).unwrap()[0], 1);
        }
        let ff = r.fuse_labels(tw, tw).unwrap();
        let dim: usize = ff.iter().zip(&r.labels).map(|(&k, l)| k as usize * l.dim_a).sum();
        assert_eq!(dim, 9);
        assert!(ff.iter().zip(&r.labels).all(|(&k, l)| k == 0 || l.is_untwisted()));
    }

    #[test]
    fn untwisted_fusion_is_double_of_n() {
        let r = setup("S3", 3);
        let n_group = r.n.to_group(&r.m).group;
        let dn = double_modular_data(&n_group).unwrap();
        let f = crate::double::verlinde_fusion(&dn.data).unwrap();
        let map = r.untwisted_to_double(&dn);
        assert!(map.iter().all(|(_, j)| j.is_some()));
        for &(x, jx) in &map {
            for &(y, jy) in &map {
                let ours = r.fuse_labels(x, y).unwrap();
                for &(z, jz) in &map {
                    assert_eq!(ours[z] as u32, f.get(jx.unwrap(), jy.unwrap(), jz.unwrap()));
                }
            }
        }
    }
}
