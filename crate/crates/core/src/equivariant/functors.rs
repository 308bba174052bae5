//! The forgetful functor F: D → Rep A and induction G = Ind: Rep A → D, as
//! multiplicity matrices between simple labels and D-simples.

use serde::Serialize;

use super::Orbifold;
use crate::double::DoubleModel;
use crate::error::{Error, Result};
use crate::rep_a::convolve;
use crate::scalars::{Cyclotomic, Q};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FunctorMatrices {
    /// D-simple × label: multiplicity of the label in F(X_{λ,O})
    pub f: Vec<Vec<u64>>,
    /// label × D-simple: multiplicity of X_{λ,O} in Ind X_s
    pub g: Vec<Vec<u64>>,
}

impl FunctorMatrices {
    pub fn reciprocity_witness(&self) -> Option<(usize, usize)> {
        for (d, row) in self.f.iter().enumerate() {
            for (s, &v) in row.iter().enumerate() {
                if self.g[s][d] != v {
                    return Some((d, s));
                }
            }
        }
        None
    }
}

/// Ind X_s = ⊕_λ (deg λ)·X_{λ,O(s)}, read off from how many eigenspaces of the
/// split twisted regular representation carry each λ.
pub fn induction_image(orb: &Orbifold, s: usize) -> Vec<u64> {
    let oi = orb.orbit_of[s];
    let irreps = &orb.cocycles[oi].irreps;
    orb.d_simples
        .iter()
        .map(|d| {
            if d.orbit == oi {
                irreps.regular_multiplicities[d.lambda] as u64
            } else {
                0
            }
        })
        .collect()
}

pub fn functor_multiplicities(orb: &Orbifold) -> FunctorMatrices {
    let f = orb
        .d_simples
        .iter()
        .map(|d| {
            let deg = orb.cocycles[d.orbit].irreps.reps[d.lambda].degree as u64;
            (0..orb.rep.num_labels())
                .map(|t| if orb.orbit_of[t] == d.orbit { deg } else { 0 })
                .collect()
        })
        .collect();
    let g = (0..orb.rep.num_labels()).map(|s| induction_image(orb, s)).collect();
    FunctorMatrices { f, g }
}

/// Exact decomposition of the D(M)-module D(M) ⊗_L X_s into simples of D(M).
pub fn c_side_induction(orb: &Orbifold, dm: &DoubleModel, s: usize) -> Result<Vec<u64>> {
    let rep = &orb.rep;
    let m = &rep.m;
    let ch = rep.char_of(s);
    let l = rep.conductor();
    let lifts: Vec<usize> = (0..rep.g_order()).map(|x| rep.quotient.lift(x)).collect();
    let mut out = Vec::with_capacity(dm.simples.len());
    let mut total = 0usize;
    for (idx, simple) in dm.simples.iter().enumerate() {
        let class = &dm.classes[simple.class_index];
        let a = class.rep;
        let mut acc = vec![0i64; l];
        for &c in &class.centralizer.embedding {
            let mut trace = vec![0i64; l];
            for &k in &lifts {
                let kinv = m.inv(k);
                if let Some(nl) = rep.n_local(m.mul(m.mul(kinv, c), k)) {
                    let v = ch.get(m.mul(m.mul(kinv, a), k), nl);
                    for (t, x) in trace.iter_mut().zip(v) {
                        *t += x;
                    }
                }
            }
            let chi = class.value(simple.centralizer_irrep, c).conj().exponents_at(l as u32);
            let chi: Vec<i64> = chi.iter().map(|q| q.to_integer()).collect();
            convolve(&trace, &chi, &mut acc);
        }
        let q: Vec<Q> = acc.iter().map(|&x| Q::from_integer(x)).collect();
        let v = Cyclotomic::from_exponents(l as u32, &q).scale(Q::new(1, class.centralizer.group.order() as i64));
        match v.to_integer() {
            Some(k) if k >= 0 => {
                total += k as usize * dm.dim(idx);
                out.push(k as u64);
            }
            _ => {
                return Err(Error::NonIntegralMultiplicity {
                    value: v.to_complex().re,
                    context: format!("D(M) simple {idx} in induced module of label {s}"),
                })
            }
        }
    }
    let want = rep.g_order() * rep.labels[s].dim_a;
    if total != want {
        return Err(Error::Invalid(format!("induced module of label {s} has dimension {total}, expected {want}")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::tests::build;
    use super::*;
    use crate::double::double_modular_data;

    #[test]
    fn reciprocity_and_degrees() {
        for (spec, ord) in [("S3", 3), ("Q8", 2), ("S4", 4)] {
            let o = build(spec, ord);
            let fm = functor_multiplicities(&o);
            assert_eq!(fm.reciprocity_witness(), None, "{spec}");
            for (d, ds) in o.d_simples.iter().enumerate() {
                let s = o.orbits[ds.orbit].base;
                assert_eq!(fm.g[s][d], ds.lambda_deg as u64);
            }
        }
    }

    #[test]
    fn unit_row() {
        let o = build("S3", 3);
        let fm = functor_multiplicities(&o);
        let unit = o.d_simples.iter().position(|d| d.orbit == o.orbit_of[0] && d.lambda == 0).unwrap();
        let row: Vec<usize> = (0..o.rep.num_labels()).filter(|&t| fm.f[unit][t] != 0).collect();
        assert_eq!(row, vec![0]);
        assert_eq!(fm.f[unit][0], 1);
    }

    #[test]
    fn twisted_induction_in_s3() {
        let o = build("S3", 3);
        let s = o.rep.labels.iter().position(|l| !l.is_untwisted()).unwrap();
        let img = induction_image(&o, s);
        assert_eq!(img.iter().filter(|&&k| k == 1).count(), 2);
        assert_eq!(img.iter().sum::<u64>(), 2);
    }

    #[test]
    fn q8_sign_induction() {
        let o = build("Q8", 2);
        let s = (0..o.rep.num_labels()).find(|&x| o.rep.labels[x].m == 0 && o.rep.labels[x].pi == 1).unwrap();
        let img = induction_image(&o, s);
        let hit: Vec<usize> = (0..img.len()).filter(|&d| img[d] != 0).collect();
        assert_eq!(hit.len(), 1);
        assert_eq!(img[hit[0]], 2);
        assert_eq!(o.d_simples[hit[0]].lambda_deg, 2);
    }

    #[test]
    fn c_side_dimensions() {
        let o = build("S3", 3);
        let dm = double_modular_data(&o.rep.m).unwrap();
        for s in 0..o.rep.num_labels() {
            let v = c_side_induction(&o, &dm, s).unwrap();
            assert!(v.iter().sum::<u64>() > 0);
        }
    }
}
