//! The equivariantized category D: G-orbits on simples of Rep A, Schur-unique
//! intertwiners φ_s(g), orbit cocycles, and the simples X_{λ,O}.

mod braiding;
mod clifford;
mod functors;
mod matcher;

pub use braiding::{check_braiding, BraidingReport, DObject};
pub use clifford::{clifford_check, CliffordReport};
pub use functors::{c_side_induction, functor_multiplicities, induction_image, FunctorMatrices};
pub use matcher::{c1_census, match_to_double, orbifold_smatrix_rows, orbit_summaries, Bijection, EquivalenceReport, OrbitSummary};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{EmbeddedGroup, FiniteGroup, QuotientData, Subgroup};
use crate::rep::{twisted_algebra_irreps, CMatrix, CocycleTable, TwistedIrreps};
use crate::rep_a::{GradedModule, RepA};
use crate::scalars::ToleranceConfig;

/// A G-orbit of simple labels; `labels[i] = transversal[i]·base`.
#[derive(Debug, Clone, Serialize)]
pub struct Orbit {
    pub labels: Vec<usize>,
    pub base: usize,
    /// G_s as sorted elements of G
    pub stabilizer: Vec<usize>,
    pub transversal: Vec<usize>,
    pub untwisted: bool,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct OrbitCocycle {
    pub stabilizer: EmbeddedGroup,
    /// α on G_s in local indices
    pub alpha: CocycleTable,
    pub alpha_regular: usize,
    pub stabilizer_classes: usize,
    /// irreps of the α⁻¹-twisted algebra of G_s
    pub irreps: TwistedIrreps,
}

impl OrbitCocycle {
    pub fn is_trivial(&self) -> bool {
        self.alpha_regular == self.stabilizer_classes
    }
}

/// X_{λ,O}
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DSimple {
    pub orbit: usize,
    pub lambda: usize,
    pub lambda_deg: usize,
    pub dim: usize,
    #[serde(skip)]
    pub untwisted: bool,
}

/// Everything built for one (M, N) instance.
#[derive(Debug, Clone)]
pub struct Orbifold {
    pub rep: RepA,
    pub modules: Vec<GradedModule>,
    pub orbits: Vec<Orbit>,
    pub cocycles: Vec<OrbitCocycle>,
    pub d_simples: Vec<DSimple>,
    /// label -> orbit index
    pub orbit_of: Vec<usize>,
    n_generators: Vec<usize>,
}

pub fn orbits_and_stabilizers(rep: &RepA) -> Vec<Orbit> {
    orbits_with(rep, &rep.quotient)
}

fn orbits_with(rep: &RepA, q: &QuotientData) -> Vec<Orbit> {
    let g_order = rep.g_order();
    let mut seen = vec![false; rep.num_labels()];
    let mut orbits = Vec::new();
    for base in 0..rep.num_labels() {
        if seen[base] {
            continue;
        }
        let mut labels = Vec::new();
        let mut transversal = Vec::new();
        let mut stabilizer = Vec::new();
        for g in 0..g_order {
            let t = rep.act_on_label_with(q, g, base);
            if t == base {
                stabilizer.push(g);
            }
            if !labels.contains(&t) {
                labels.push(t);
                transversal.push(g);
                seen[t] = true;
            }
        }
        orbits.push(Orbit {
            untwisted: rep.labels[base].is_untwisted(),
            labels,
            base,
            stabilizer,
            transversal,
        });
    }
    orbits
}

/// Normalized Frobenius norm √d, first nonzero entry (row-major) positive real.
fn normalize_intertwiner(mut t: CMatrix) -> CMatrix {
    let d = t.nrows() as f64;
    let norm = t.norm();
    t /= Complex64::new(norm / d.sqrt(), 0.0);
    let lead = (0..t.nrows())
        .flat_map(|i| (0..t.ncols()).map(move |j| (i, j)))
        .map(|(i, j)| t[(i, j)])
        .find(|z| z.norm() > 1e-6)
        .unwrap_or(Complex64::new(1.0, 0.0));
    t * (lead.conj() / lead.norm())
}

impl Orbifold {
    pub fn build(rep: RepA) -> Result<Self> {
        let modules: Vec<GradedModule> = (0..rep.num_labels()).map(|x| rep.build_graded_module(x)).collect();
        let emb = rep.n.to_group(&rep.m);
        let n_generators = emb.group.generators().iter().map(|&g| emb.to_parent(g)).collect();
        let orbits = orbits_and_stabilizers(&rep);
        let mut orbit_of = vec![0; rep.num_labels()];
        for (i, o) in orbits.iter().enumerate() {
            for &l in &o.labels {
                orbit_of[l] = i;
            }
        }
        let mut orb = Orbifold {
            rep,
            modules,
            orbits,
            cocycles: Vec::new(),
            d_simples: Vec::new(),
            orbit_of,
            n_generators,
        };
        orb.cocycles = (0..orb.orbits.len())
            .map(|i| orb.orbit_cocycle(i))
            .collect::<Result<_>>()?;
        let mut ds = Vec::new();
        for (oi, (o, c)) in orb.orbits.iter().zip(&orb.cocycles).enumerate() {
            let base_dim = orb.rep.labels[o.base].dim_a;
            for (lambda, &deg) in c.irreps.degrees.iter().enumerate() {
                ds.push(DSimple {
                    orbit: oi,
                    lambda,
                    lambda_deg: deg,
                    dim: deg * o.len() * base_dim,
                    untwisted: o.untwisted,
                });
            }
        }
        orb.d_simples = ds;
        Ok(orb)
    }

    pub fn new(m: &FiniteGroup, n: &Subgroup, tol: &ToleranceConfig) -> Result<Self> {
        Self::build(RepA::new(m, n, tol)?)
    }

    pub fn tol(&self) -> &ToleranceConfig {
        &self.rep.tol
    }

    pub fn g_group(&self) -> &FiniteGroup {
        &self.rep.quotient.quotient
    }

    /// φ_s(g): the twisted module of s by the lift of g, mapped onto the
    /// module of g·s.
    pub fn intertwiner(&self, s: usize, g: usize) -> Result<CMatrix> {
        self.intertwiner_with(&self.rep.quotient, s, g)
    }

    pub fn intertwiner_with(&self, q: &QuotientData, s: usize, g: usize) -> Result<CMatrix> {
        let rep = &self.rep;
        let m = &rep.m;
        let k = q.lift(g);
        let kinv = m.inv(k);
        let t = rep.act_on_label_with(q, g, s);
        let (vs, vt) = (&self.modules[s], &self.modules[t]);
        let (ds, dt) = (vs.dim, vt.dim);
        let context = || format!("label {s} moved by {g}");
        if ds != dt {
            return Err(Error::SchurViolation { dim: 0, context: context() });
        }
        let unknowns: Vec<(usize, usize)> = (0..dt)
            .flat_map(|i| (0..ds).map(move |j| (i, j)))
            .filter(|&(i, j)| vt.grading[i] == m.conj(k, vs.grading[j]))
            .collect();
        if unknowns.is_empty() {
            return Err(Error::SchurViolation { dim: 0, context: context() });
        }
        let mut rows: Vec<Vec<Complex64>> = Vec::new();
        for &n in &self.n_generators {
            let a = &vs.n_action[rep.n_local(m.mul(m.mul(kinv, n), k)).unwrap()];
            let b = &vt.n_action[rep.n_local(n).unwrap()];
            // (T a − b T)[p][q] = Σ_j T[p][j] a[j][q] − Σ_i b[p][i] T[i][q]
            for p in 0..dt {
                for qq in 0..ds {
                    let row: Vec<Complex64> = unknowns
                        .iter()
                        .map(|&(i, j)| {
                            let mut v = Complex64::new(0.0, 0.0);
                            if i == p {
                                v += a[(j, qq)];
                            }
                            if j == qq {
                                v -= b[(p, i)];
                            }
                            v
                        })
                        .collect();
                    if row.iter().any(|z| z.norm() > 0.0) {
                        rows.push(row);
                    }
                }
            }
        }
        let u = unknowns.len();
        let null: Vec<Complex64> = if rows.is_empty() {
            if u != 1 {
                return Err(Error::SchurViolation { dim: u, context: context() });
            }
            vec![Complex64::new(1.0, 0.0)]
        } else {
            let a = DMatrix::from_fn(rows.len(), u, |r, c| rows[r][c]);
            let h = a.adjoint() * &a;
            let eig = h.symmetric_eigen();
            let scale = eig.eigenvalues.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
            let zero: Vec<usize> = (0..u).filter(|&i| eig.eigenvalues[i].abs() < 1e-9 * scale).collect();
            if zero.len() != 1 {
                return Err(Error::SchurViolation { dim: zero.len(), context: context() });
            }
            eig.eigenvectors.column(zero[0]).iter().copied().collect()
        };
        let mut tmat = CMatrix::zeros(dt, ds);
        for (&(i, j), v) in unknowns.iter().zip(null) {
            tmat[(i, j)] = v;
        }
        Ok(normalize_intertwiner(tmat))
    }

    /// α on the stabilizer of a base label: T_g T_h = α(g,h)·ρ_s(c)·T_{gh},
    /// with c = g̃h̃(gh)~⁻¹ ∈ N.
    pub fn cocycle_at(&self, q: &QuotientData, s: usize, stabilizer: &[usize]) -> Result<(EmbeddedGroup, CocycleTable)> {
        let g = &q.quotient;
        let sub = Subgroup::from_members(g, stabilizer.to_vec())?;
        let emb = sub.to_group(g);
        let ts: Vec<CMatrix> = emb
            .embedding
            .iter()
            .map(|&x| self.intertwiner_with(q, s, x))
            .collect::<Result<_>>()?;
        let rho = &self.modules[s].n_action;
        let d = self.modules[s].dim as f64;
        let k = emb.group.order();
        let mut values = vec![vec![Complex64::new(1.0, 0.0); k]; k];
        for a in 0..k {
            for b in 0..k {
                let (ga, gb) = (emb.to_parent(a), emb.to_parent(b));
                let c = q.lift_defect(&self.rep.m, ga, gb);
                let rhs = &rho[self.rep.n_local(c).unwrap()] * &ts[emb.group.mul(a, b)];
                let lhs = &ts[a] * &ts[b];
                let alpha = (rhs.adjoint() * &lhs).trace() / d;
                let defect = (lhs - rhs * alpha).norm();
                if defect > 1e-6 {
                    return Err(Error::CocycleInvalid { g: a, h: b, k: 0, defect });
                }
                values[a][b] = alpha / alpha.norm();
            }
        }
        Ok((emb, CocycleTable { values }))
    }

    fn orbit_cocycle(&self, oi: usize) -> Result<OrbitCocycle> {
        let o = &self.orbits[oi];
        let (stabilizer, alpha) = self.cocycle_at(&self.rep.quotient, o.base, &o.stabilizer)?;
        let tol = self.tol();
        alpha.verify(&stabilizer.group, tol)?;
        let alpha_regular = alpha.regular_class_count(&stabilizer.group, tol);
        let irreps = twisted_algebra_irreps(&stabilizer.group, &alpha.inverse(), tol)?;
        if irreps.len() != alpha_regular {
            return Err(Error::Invalid(format!(
                "orbit {oi}: {} twisted irreps but {alpha_regular} regular classes",
                irreps.len()
            )));
        }
        Ok(OrbitCocycle {
            stabilizer_classes: stabilizer.group.conjugacy_data().len(),
            stabilizer,
            alpha,
            alpha_regular,
            irreps,
        })
    }

    /// α-regular class count recomputed at another point of the orbit.
    pub fn alpha_regular_at(&self, q: &QuotientData, label: usize) -> Result<usize> {
        let g = &q.quotient;
        let stab: Vec<usize> = g
            .elements()
            .filter(|&x| self.rep.act_on_label_with(q, x, label) == label)
            .collect();
        let (emb, alpha) = self.cocycle_at(q, label, &stab)?;
        alpha.verify(&emb.group, self.tol())?;
        Ok(alpha.regular_class_count(&emb.group, self.tol()))
    }

    pub fn d0_simples(&self) -> Vec<usize> {
        (0..self.d_simples.len()).filter(|&i| self.d_simples[i].untwisted).collect()
    }

    pub fn labels_in_sector(&self, g: usize) -> Vec<usize> {
        (0..self.rep.num_labels()).filter(|&x| self.rep.labels[x].sector == g).collect()
    }

    /// Σ over D-simples of dim², which must equal |M|².
    pub fn global_dim_sq(&self) -> usize {
        self.d_simples.iter().map(|d| d.dim * d.dim).sum()
    }

    /// Idempotence and rank of (1/|G|) Σ_g φ(g) on Ind X_s.
    pub fn sym_projector_check(&self, s: usize) -> (bool, usize) {
        let obj = DObject::induced(self, s);
        let p = obj.sym_projector(self);
        let idem = (&p * &p - &p).norm() < 1e-9;
        let eig = p.symmetric_eigen();
        let rank = eig.eigenvalues.iter().filter(|v| v.abs() > 0.5).count();
        (idem, rank)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::group_from_spec;

    pub(crate) fn build(spec: &str, order: usize) -> Orbifold {
        let m = group_from_spec(spec).unwrap();
        let n = m.normal_subgroups().into_iter().find(|s| s.order() == order).unwrap();
        Orbifold::new(&m, &n, &ToleranceConfig::default()).unwrap()
    }

    fn sizes(o: &Orbifold) -> Vec<usize> {
        let mut v: Vec<usize> = o.orbits.iter().map(|x| x.len()).collect();
        v.sort();
        v
    }

    #[test]
    fn s3_orbits_and_dsimples() {
        let o = build("S3", 3);
        assert_eq!(sizes(&o), vec![1, 1, 2, 2, 2, 2]);
        let mut dims: Vec<usize> = o.d_simples.iter().map(|d| d.dim).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 1, 2, 2, 2, 2, 3, 3]);
        assert_eq!(o.global_dim_sq(), 36);
        assert_eq!(o.d0_simples().len(), 6);
    }

    #[test]
    fn q8_cocycles() {
        let o = build("Q8", 2);
        assert_eq!(sizes(&o), vec![1, 1, 1, 1, 2, 2, 2, 2, 2, 2]);
        assert_eq!(o.d_simples.len(), 22);
        let e_orbits: Vec<usize> = (0..o.orbits.len())
            .filter(|&i| o.rep.labels[o.orbits[i].base].m == 0)
            .collect();
        let regs: Vec<usize> = e_orbits.iter().map(|&i| o.cocycles[i].alpha_regular).collect();
        assert_eq!(regs, vec![4, 1]);
    }

    #[test]
    fn identity_intertwiner_is_identity() {
        let o = build("S4", 4);
        for s in 0..o.rep.num_labels() {
            let t = o.intertwiner(s, 0).unwrap();
            let d = t.nrows();
            assert!((t - CMatrix::identity(d, d)).norm() < 1e-9);
        }
    }

    #[test]
    fn intertwiners_are_unitary() {
        let o = build("S4", 4);
        for s in 0..o.rep.num_labels() {
            for g in 0..o.g_group().order() {
                let t = o.intertwiner(s, g).unwrap();
                let d = t.nrows();
                assert!((&t * t.adjoint() - CMatrix::identity(d, d)).norm() < 1e-8);
            }
        }
    }

    #[test]
    fn trivial_quotient_keeps_labels() {
        let m = group_from_spec("S3").unwrap();
        let o = Orbifold::new(&m, &m.whole(), &ToleranceConfig::default()).unwrap();
        assert!(o.orbits.iter().all(|x| x.len() == 1 && x.stabilizer == vec![0]));
        assert_eq!(o.d_simples.len(), 8);
    }

    #[test]
    fn holomorphic_case() {
        // N trivial: Rep⁰A is vector spaces and D⁰ is Rep G
        let m = group_from_spec("S3").unwrap();
        let o = Orbifold::new(&m, &m.trivial_subgroup(), &ToleranceConfig::default()).unwrap();
        let mut d0: Vec<usize> = o.d0_simples().iter().map(|&i| o.d_simples[i].dim).collect();
        d0.sort();
        assert_eq!(d0, vec![1, 1, 2]);
        assert_eq!(o.d_simples.len(), 8);
    }
}
