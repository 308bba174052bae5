//! Concrete objects of D and the braiding σ(w ⊗ y) = (m·φ_Y(g_w) y) ⊗ w,
//! where w has degree m ∈ M, lies in the A-component x ∈ G, and
//! g_w = x⁻¹ p(m) x is its sector.
//!
//! An A-module in C = Rep D(M) is an M-graded M-module split into components
//! X^{(x)}, x ∈ G, with k·X^{(x)} = X^{(p(k)x)}. The tensor product over A keeps
//! exactly the pure tensors whose components agree.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::Orbifold;
use crate::error::{Error, Result};
use crate::rep::CMatrix;
use crate::rep_a::GradedModule;

type Sparse = Vec<(usize, Complex64)>;

#[derive(Debug, Clone)]
enum Kind {
    /// ⊕_{h∈G} Ind V_s, basis (h, x, i), component x·h, φ(g): h ↦ h g⁻¹
    Induced { label: usize, module: GradedModule },
    /// A = F(G), basis δ_x, component x, φ(g)δ_x = δ_{x g⁻¹}
    Unit,
}

#[derive(Debug, Clone)]
pub struct DObject {
    kind: Kind,
    g_order: usize,
    pub dim: usize,
    pub component: Vec<usize>,
    pub degree: Vec<usize>,
}

impl DObject {
    pub fn induced(orb: &Orbifold, label: usize) -> Self {
        let rep = &orb.rep;
        let (g, m) = (orb.g_group(), &rep.m);
        let module = orb.modules[label].clone();
        let dv = module.dim;
        let n = g.order();
        let mut component = Vec::with_capacity(n * n * dv);
        let mut degree = Vec::with_capacity(n * n * dv);
        for h in 0..n {
            for x in 0..n {
                let lift = rep.quotient.lift(x);
                for i in 0..dv {
                    component.push(g.mul(x, h));
                    degree.push(m.conj(lift, module.grading[i]));
                }
            }
        }
        DObject {
            kind: Kind::Induced { label, module },
            g_order: n,
            dim: n * n * dv,
            component,
            degree,
        }
    }

    pub fn unit(orb: &Orbifold) -> Self {
        let n = orb.g_group().order();
        DObject {
            kind: Kind::Unit,
            g_order: n,
            dim: n,
            component: (0..n).collect(),
            degree: vec![0; n],
        }
    }

    pub fn label(&self) -> Option<usize> {
        match &self.kind {
            Kind::Induced { label, .. } => Some(*label),
            Kind::Unit => None,
        }
    }

    /// k·e_b for k ∈ M.
    fn act(&self, orb: &Orbifold, k: usize, b: usize) -> Sparse {
        let rep = &orb.rep;
        let (g, m) = (orb.g_group(), &rep.m);
        let pk = rep.quotient.project(k);
        match &self.kind {
            Kind::Unit => vec![(g.mul(pk, b), Complex64::new(1.0, 0.0))],
            Kind::Induced { module, .. } => {
                let dv = module.dim;
                let n = self.g_order;
                let (h, x, i) = (b / (n * dv), (b / dv) % n, b % dv);
                let x2 = g.mul(pk, x);
                let nn = m.mul(m.mul(m.inv(rep.quotient.lift(x2)), k), rep.quotient.lift(x));
                let mat = &module.n_action[rep.n_local(nn).expect("defect lies in N")];
                (0..dv)
                    .filter(|&j| mat[(j, i)].norm() > 1e-14)
                    .map(|j| ((h * n + x2) * dv + j, mat[(j, i)]))
                    .collect()
            }
        }
    }

    fn phi(&self, orb: &Orbifold, gg: usize, b: usize) -> usize {
        let g = orb.g_group();
        match &self.kind {
            Kind::Unit => g.mul(b, g.inv(gg)),
            Kind::Induced { module, .. } => {
                let dv = module.dim;
                let n = self.g_order;
                let (h, rest) = (b / (n * dv), b % (n * dv));
                g.mul(h, g.inv(gg)) * n * dv + rest
            }
        }
    }

    /// (1/|G|) Σ_g φ(g) as a dense matrix.
    pub fn sym_projector(&self, orb: &Orbifold) -> CMatrix {
        let mut p = CMatrix::zeros(self.dim, self.dim);
        let w = Complex64::new(1.0 / self.g_order as f64, 0.0);
        for gg in 0..self.g_order {
            for b in 0..self.dim {
                p[(self.phi(orb, gg, b), b)] += w;
            }
        }
        p
    }

    /// Sector x⁻¹ p(m) x of a basis vector.
    fn sector(&self, orb: &Orbifold, b: usize) -> usize {
        let g = orb.g_group();
        let x = self.component[b];
        g.mul(g.mul(g.inv(x), orb.rep.quotient.project(self.degree[b])), x)
    }
}

/// σ_{X,Y}(e_w ⊗ e_y) as a combination of e_{y'} ⊗ e_w.
fn sigma(orb: &Orbifold, x: &DObject, y: &DObject, w: usize, b: usize) -> Vec<((usize, usize), Complex64)> {
    let g = x.sector(orb, w);
    let moved = y.phi(orb, g, b);
    y.act(orb, x.degree[w], moved)
        .into_iter()
        .map(|(j, c)| ((j, w), c))
        .collect()
}

/// Plain braiding of C: e_w ⊗ e_y ↦ (m·e_y) ⊗ e_w.
fn c_braiding(orb: &Orbifold, x: &DObject, y: &DObject, w: usize, b: usize) -> Vec<((usize, usize), Complex64)> {
    y.act(orb, x.degree[w], b).into_iter().map(|(j, c)| ((j, w), c)).collect()
}

type Triple = BTreeMap<(usize, usize, usize), Complex64>;

fn add(map: &mut Triple, key: (usize, usize, usize), c: Complex64) {
    *map.entry(key).or_insert(Complex64::new(0.0, 0.0)) += c;
}

fn apply_first(orb: &Orbifold, p: &DObject, q: &DObject, v: &Triple) -> Triple {
    let mut out = Triple::new();
    for (&(a, b, c), &coef) in v {
        for ((b2, a2), s) in sigma(orb, p, q, a, b) {
            add(&mut out, (b2, a2, c), coef * s);
        }
    }
    out
}

fn apply_second(orb: &Orbifold, q: &DObject, r: &DObject, v: &Triple) -> Triple {
    let mut out = Triple::new();
    for (&(a, b, c), &coef) in v {
        for ((c2, b2), s) in sigma(orb, q, r, b, c) {
            add(&mut out, (a, c2, b2), coef * s);
        }
    }
    out
}

fn distance(a: &Triple, b: &Triple) -> f64 {
    let mut worst: f64 = 0.0;
    for (k, v) in a {
        let w = b.get(k).copied().unwrap_or_default();
        worst = worst.max((v - w).norm());
    }
    for (k, v) in b {
        if !a.contains_key(k) {
            worst = worst.max(v.norm());
        }
    }
    worst
}

#[derive(Debug, Clone, Serialize)]
pub struct BraidingReport {
    pub object_triples: usize,
    pub basis_triples: usize,
    pub max_ybe_defect: f64,
    pub max_unit_double_braiding_defect: f64,
    pub max_equivariance_defect: f64,
    pub max_morphism_defect: f64,
    pub descent_pairs: usize,
    pub untwisted_plain_flip: bool,
}

fn pick(rng: &mut ChaCha8Rng, items: &[usize]) -> Option<usize> {
    (!items.is_empty()).then(|| items[rng.random_range(0..items.len())])
}

/// Seeded checks of descent, G-equivariance, the Yang–Baxter equation, and
/// transparency of the unit object.
pub fn check_braiding(orb: &Orbifold, object_triples: usize, basis_per_triple: usize, ybe_tol: f64) -> Result<BraidingReport> {
    let tol = orb.tol();
    let seed = tol.rng_seed ^ orb.rep.m.fingerprint() ^ (orb.rep.n.order() as u64).rotate_left(17);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = orb.g_group();
    let n_g = g.order();

    let mut objects: Vec<DObject> = (0..orb.rep.num_labels()).map(|s| DObject::induced(orb, s)).collect();
    objects.push(DObject::unit(orb));
    let unit = objects.len() - 1;
    let by_component = |o: &DObject, z: usize| -> Vec<usize> { (0..o.dim).filter(|&b| o.component[b] == z).collect() };

    let mut report = BraidingReport {
        object_triples,
        basis_triples: 0,
        max_ybe_defect: 0.0,
        max_unit_double_braiding_defect: 0.0,
        max_equivariance_defect: 0.0,
        max_morphism_defect: 0.0,
        descent_pairs: 0,
        untwisted_plain_flip: true,
    };

    for _ in 0..object_triples {
        let idx: Vec<usize> = (0..3).map(|_| rng.random_range(0..objects.len())).collect();
        let (x, y, z) = (&objects[idx[0]], &objects[idx[1]], &objects[idx[2]]);

        for _ in 0..basis_per_triple {
            // descent: matched pairs stay matched, mismatched stay mismatched
            let w = rng.random_range(0..x.dim);
            let b = rng.random_range(0..y.dim);
            let matched = x.component[w] == y.component[b];
            for ((b2, w2), _) in sigma(orb, x, y, w, b) {
                if (y.component[b2] == x.component[w2]) != matched {
                    return Err(Error::DescentFailure {
                        witness: format!("objects {:?}/{:?}, basis {w} ⊗ {b}", x.label(), y.label()),
                    });
                }
            }
            report.descent_pairs += 1;

            // G-equivariance: σ∘(φ(h)⊗φ(h)) = (φ(h)⊗φ(h))∘σ
            let h = rng.random_range(0..n_g);
            let lhs: Triple = sigma(orb, x, y, x.phi(orb, h, w), y.phi(orb, h, b))
                .into_iter()
                .map(|((p, q), c)| ((p, q, 0), c))
                .collect();
            let rhs: Triple = sigma(orb, x, y, w, b)
                .into_iter()
                .map(|((p, q), c)| ((y.phi(orb, h, p), x.phi(orb, h, q), 0), c))
                .collect();
            report.max_equivariance_defect = report.max_equivariance_defect.max(distance(&lhs, &rhs));

            // morphism in C: σ∘(k⊗k) = (k⊗k)∘σ
            let k = rng.random_range(0..orb.rep.m.order());
            let mut lhs = Triple::new();
            for (w2, c1) in x.act(orb, k, w) {
                for (b2, c2) in y.act(orb, k, b) {
                    for ((p, q), s) in sigma(orb, x, y, w2, b2) {
                        add(&mut lhs, (p, q, 0), c1 * c2 * s);
                    }
                }
            }
            let mut rhs = Triple::new();
            for ((p, q), s) in sigma(orb, x, y, w, b) {
                for (p2, c1) in y.act(orb, k, p) {
                    for (q2, c2) in x.act(orb, k, q) {
                        add(&mut rhs, (p2, q2, 0), s * c1 * c2);
                    }
                }
            }
            report.max_morphism_defect = report.max_morphism_defect.max(distance(&lhs, &rhs));

            // Yang–Baxter on the tensor product over A
            let comp = rng.random_range(0..n_g);
            let (Some(a), Some(bb), Some(c)) = (
                pick(&mut rng, &by_component(x, comp)),
                pick(&mut rng, &by_component(y, comp)),
                pick(&mut rng, &by_component(z, comp)),
            ) else {
                continue;
            };
            let mut v = Triple::new();
            v.insert((a, bb, c), Complex64::new(1.0, 0.0));
            let left = apply_first(orb, y, z, &apply_second(orb, x, z, &apply_first(orb, x, y, &v)));
            let right = apply_second(orb, x, y, &apply_first(orb, x, z, &apply_second(orb, y, z, &v)));
            let defect = distance(&left, &right);
            report.basis_triples += 1;
            report.max_ybe_defect = report.max_ybe_defect.max(defect);
            if defect > ybe_tol {
                return Err(Error::YbeFailure {
                    defect,
                    witness: format!("objects {:?}, {:?}, {:?}", x.label(), y.label(), z.label()),
                });
            }
        }
    }
    if report.max_equivariance_defect > ybe_tol || report.max_morphism_defect > ybe_tol {
        return Err(Error::DescentFailure {
            witness: format!(
                "equivariance defect {:e}, morphism defect {:e}",
                report.max_equivariance_defect, report.max_morphism_defect
            ),
        });
    }

    // unit object is transparent on X ⊗_A A and A ⊗_A X
    let u = &objects[unit];
    for x in &objects {
        for w in 0..x.dim {
            let z = x.component[w];
            let mut v = Triple::new();
            v.insert((w, z, 0), Complex64::new(1.0, 0.0));
            let back = apply_first(orb, u, x, &apply_first(orb, x, u, &v));
            report.max_unit_double_braiding_defect = report.max_unit_double_braiding_defect.max(distance(&back, &v));
            let mut v2 = Triple::new();
            v2.insert((z, w, 0), Complex64::new(1.0, 0.0));
            let back2 = apply_first(orb, x, u, &apply_first(orb, u, x, &v2));
            report.max_unit_double_braiding_defect = report.max_unit_double_braiding_defect.max(distance(&back2, &v2));
        }
    }

    // untwisted X: σ is the braiding of C
    for x in objects.iter().filter(|o| o.label().is_none_or(|l| orb.rep.labels[l].is_untwisted())) {
        for y in [&objects[unit], &objects[rng.random_range(0..objects.len())]] {
            for _ in 0..basis_per_triple {
                let w = rng.random_range(0..x.dim);
                let b = rng.random_range(0..y.dim);
                let s: Triple = sigma(orb, x, y, w, b).into_iter().map(|((p, q), c)| ((p, q, 0), c)).collect();
                let c: Triple = c_braiding(orb, x, y, w, b).into_iter().map(|((p, q), c)| ((p, q, 0), c)).collect();
                if distance(&s, &c) > tol.eps_abs {
                    report.untwisted_plain_flip = false;
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::super::tests::build;
    use super::*;

    #[test]
    fn braiding_checks_pass() {
        for (spec, ord) in [("S3", 3), ("Q8", 2), ("S4", 4)] {
            let o = build(spec, ord);
            let r = check_braiding(&o, 20, 8, 1e-7).unwrap();
            assert!(r.basis_triples > 0);
            assert!(r.max_unit_double_braiding_defect < 1e-9, "{spec}: {r:?}");
            assert!(r.untwisted_plain_flip);
        }
    }

    #[test]
    fn sym_projector() {
        let o = build("S3", 3);
        for s in 0..o.rep.num_labels() {
            let (idem, rank) = o.sym_projector_check(s);
            assert!(idem);
            assert_eq!(rank, o.g_group().order() * o.modules[s].dim);
        }
    }

    #[test]
    fn twisted_against_omega() {
        // (S3, A3): twisted X against Ind(e, ω); φ swaps the ω/ω² blocks
        let o = build("S3", 3);
        let tw = o.rep.labels.iter().position(|l| !l.is_untwisted()).unwrap();
        let omega = (0..o.rep.num_labels()).find(|&x| o.rep.labels[x].m == 0 && o.rep.labels[x].pi == 1).unwrap();
        let x = DObject::induced(&o, tw);
        let y = DObject::induced(&o, omega);
        assert_eq!(y.dim, 4);
        let mut moved = false;
        for w in 0..x.dim {
            for b in 0..y.dim {
                if x.component[w] == y.component[b] {
                    for ((b2, _), c) in sigma(&o, &x, &y, w, b) {
                        assert!((c.norm() - 1.0).abs() < 1e-9);
                        moved |= b2 / 2 != b / 2;
                    }
                }
            }
        }
        assert!(moved);
    }
}
