//! End-to-end acceptance run: one PASS/FAIL line per criterion.
//!
//! Expected values are recomputed here by brute force over group elements
//! wherever possible, rather than read back from the library.

use std::process::{Command, ExitCode};
use std::time::Instant;

use num_complex::Complex64;

use orbifold::double::{double_modular_data, verlinde_fusion, DoubleModel};
use orbifold::equivariant::{check_braiding, clifford_check, functor_multiplicities, match_to_double, Orbifold};
use orbifold::group::{group_from_spec, FiniteGroup};
use orbifold::scalars::{Cyclotomic, ToleranceConfig};
use orbifold::suite::{emit_report, resolve_instance, run_verify_suite, Format, SuiteConfig, DEFAULT_CATALOG};

const DOUBLE_GROUPS: [&str; 9] = ["Z2", "Z3", "Z4", "Z2xZ2", "S3", "D4", "Q8", "A4", "S4"];
const CLIFFORD_PAIRS: [&str; 5] = ["S3/index:2", "Q8/center", "S4/index:2", "S4/index:6", "D4/center"];

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Number of simultaneous-conjugacy orbits on commuting pairs of `members`,
/// by Burnside over pairwise commuting triples.
fn commuting_pair_orbits(g: &FiniteGroup, members: &[usize]) -> usize {
    let commute = |a: usize, b: usize| g.mul(a, b) == g.mul(b, a);
    let mut triples = 0;
    for &a in members {
        for &b in members.iter().filter(|&&b| commute(a, b)) {
            triples += members.iter().filter(|&&c| commute(a, c) && commute(b, c)).count();
        }
    }
    assert_eq!(triples % members.len(), 0);
    triples / members.len()
}

fn conjugacy_class_count(g: &FiniteGroup) -> usize {
    let all: Vec<usize> = g.elements().collect();
    let commuting = all.iter().map(|&a| all.iter().filter(|&&b| g.mul(a, b) == g.mul(b, a)).count()).sum::<usize>();
    commuting / g.order()
}

fn build(instance: &str) -> Orbifold {
    let inst = resolve_instance(instance, false, 64).unwrap();
    Orbifold::new(&inst.m, &inst.n, &ToleranceConfig::default()).unwrap()
}

fn criterion_1() -> Outcome {
    for spec in DOUBLE_GROUPS {
        let m = group_from_spec(spec).map_err(|e| e.to_string())?;
        let dm = double_modular_data(&m).map_err(|e| format!("{spec}: {e}"))?;
        let r = dm.simples.len();
        let census = commuting_pair_orbits(&m, &m.elements().collect::<Vec<_>>());
        ensure(r == census, || format!("{spec}: {r} simples, brute-force census {census}"))?;
        let dims2: usize = (0..r).map(|i| dm.dim(i).pow(2)).sum();
        ensure(dims2 == m.order().pow(2), || format!("{spec}: sum dim^2 = {dims2}"))?;

        let s = &dm.data.s;
        for i in 0..r {
            for j in 0..r {
                ensure(s[i][j] == s[j][i], || format!("{spec}: S not symmetric at ({i},{j})"))?;
                let dot: Cyclotomic = (0..r).map(|k| &s[i][k] * &s[j][k].conj()).sum();
                let want = if i == j { Cyclotomic::one() } else { Cyclotomic::zero() };
                ensure(dot == want, || format!("{spec}: (S S*)[{i}][{j}] = {dot}"))?;
            }
        }

        // exact fusion from the library against a floating-point Verlinde sum
        let fusion = verlinde_fusion(&dm.data).map_err(|e| format!("{spec}: {e}"))?;
        let sc: Vec<Vec<Complex64>> = s.iter().map(|row| row.iter().map(Cyclotomic::to_complex).collect()).collect();
        let mut n = vec![vec![vec![0u32; r]; r]; r];
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let v: Complex64 = (0..r).map(|a| sc[i][a] * sc[j][a] * sc[k][a].conj() / sc[0][a]).sum();
                    let rounded = v.re.round();
                    ensure((v - Complex64::new(rounded, 0.0)).norm() < 1e-6 && rounded >= 0.0, || {
                        format!("{spec}: N[{i}][{j}][{k}] = {v}")
                    })?;
                    n[i][j][k] = rounded as u32;
                    ensure(fusion.get(i, j, k) == n[i][j][k], || format!("{spec}: exact and numeric N[{i}][{j}][{k}] differ"))?;
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    for l in 0..r {
                        let lhs: u32 = (0..r).map(|x| n[i][j][x] * n[x][k][l]).sum();
                        let rhs: u32 = (0..r).map(|x| n[j][k][x] * n[i][x][l]).sum();
                        ensure(lhs == rhs, || format!("{spec}: fusion not associative at {i},{j},{k},{l}"))?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn criterion_2(orbs: &[(&str, Orbifold)]) -> Outcome {
    for (name, orb) in orbs {
        let rep = &orb.rep;
        let n_members = rep.n.members();
        let untwisted: Vec<usize> = (0..rep.num_labels()).filter(|&x| rep.labels[x].is_untwisted()).collect();
        let census = commuting_pair_orbits(&rep.m, n_members);
        ensure(untwisted.len() == census, || format!("{name}: {} untwisted labels, D(N) census {census}", untwisted.len()))?;

        let n_group = rep.n.to_group(&rep.m).group;
        let dn = double_modular_data(&n_group).map_err(|e| e.to_string())?;
        let mut ours: Vec<usize> = untwisted.iter().map(|&x| rep.labels[x].dim_a).collect();
        let mut theirs: Vec<usize> = (0..dn.simples.len()).map(|i| dn.dim(i)).collect();
        ours.sort();
        theirs.sort();
        ensure(ours == theirs, || format!("{name}: untwisted dims {ours:?} vs D(N) dims {theirs:?}"))?;
        let pairs = rep.untwisted_to_double(&dn);
        let mut hit: Vec<usize> = pairs.iter().filter_map(|p| p.1).collect();
        hit.sort();
        hit.dedup();
        ensure(hit.len() == dn.simples.len(), || format!("{name}: untwisted labels do not cover D(N)"))?;

        let g_order = rep.g_order();
        let constant = n_members.len().pow(2);
        for g in 0..g_order {
            let dims: Vec<usize> = rep.labels.iter().filter(|l| l.sector == g).map(|l| l.dim_a).collect();
            ensure(!dims.is_empty(), || format!("{name}: sector {g} is empty"))?;
            let sq: usize = dims.iter().map(|d| d * d).sum();
            ensure(sq == constant, || format!("{name}: sector {g} has sum dim^2 = {sq}, expected {constant}"))?;
        }
    }
    Ok(())
}

fn criterion_3(orbs: &[(&str, Orbifold)]) -> Outcome {
    for (name, orb) in orbs {
        let rep = &orb.rep;
        let g = orb.g_group();
        let nl = rep.num_labels();
        for h in g.elements() {
            let hinv = g.inv(h);
            for x in 0..nl {
                let lhs = rep.sector(rep.act_on_label(hinv, x));
                let rhs = g.mul(g.mul(hinv, rep.sector(x)), h);
                ensure(lhs == rhs, || format!("{name}: conjugation rule fails for h={h}, label {x}"))?;
            }
        }
        for x in 0..nl {
            for y in 0..nl {
                let mult = rep.fuse_labels(x, y).map_err(|e| e.to_string())?;
                let want = g.mul(rep.sector(x), rep.sector(y));
                let total: usize = (0..nl).map(|z| mult[z] as usize * rep.labels[z].dim_a).sum();
                ensure(total == rep.labels[x].dim_a * rep.labels[y].dim_a, || format!("{name}: {x} ⊗ {y} has wrong dimension"))?;
                for z in (0..nl).filter(|&z| mult[z] > 0) {
                    ensure(rep.sector(z) == want, || format!("{name}: {x} ⊗ {y} contains {z} outside sector {want}"))?;
                }
            }
            let d = rep.dual_label(x).map_err(|e| e.to_string())?;
            ensure(rep.sector(d) == g.inv(rep.sector(x)), || format!("{name}: dual of {x} in the wrong sector"))?;
        }
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    for instance in CLIFFORD_PAIRS {
        let orb = build(instance);
        let r = clifford_check(&orb, instance).map_err(|e| e.to_string())?;
        let m = &orb.rep.m;
        let classes = conjugacy_class_count(m);
        ensure(r.dims.len() == classes, || format!("{instance}: {} irreps from orbits, {classes} classes of M", r.dims.len()))?;
        let sq: usize = r.dims.iter().map(|d| d * d).sum();
        ensure(sq == m.order(), || format!("{instance}: sum of squared degrees {sq}"))?;
        ensure(r.passed(), || format!("{instance}: {:?}", r.checks))?;
        if instance == "Q8/center" {
            let nontrivial: Vec<usize> = (0..orb.orbits.len())
                .filter(|&i| orb.rep.labels[orb.orbits[i].base].m == 0 && !orb.cocycles[i].is_trivial())
                .collect();
            ensure(nontrivial.len() == 1 && r.nontrivial_cocycle_orbits == 1, || format!("Q8: nontrivial orbits {nontrivial:?}"))?;
            let degrees = &orb.cocycles[nontrivial[0]].irreps.degrees;
            ensure(degrees == &vec![2], || format!("Q8: nontrivial orbit gives degrees {degrees:?}"))?;
        }
    }
    Ok(())
}

fn criterion_5(orbs: &[(&str, Orbifold)], doubles: &[DoubleModel]) -> Outcome {
    for ((name, orb), dm) in orbs.iter().zip(doubles) {
        let r = match_to_double(orb, dm, name).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{name}: {:?}", r.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>()))?;
        let census = commuting_pair_orbits(&orb.rep.m, &orb.rep.m.elements().collect::<Vec<_>>());
        ensure(orb.d_simples.len() == census, || format!("{name}: {} D-simples, census {census}", orb.d_simples.len()))?;
        let mut dims: Vec<usize> = orb.d_simples.iter().map(|d| d.dim).collect();
        dims.sort();
        if *name == "S3/index:2" {
            ensure(dims == vec![1, 1, 2, 2, 2, 2, 3, 3], || format!("S3: dims {dims:?}"))?;
        }
        if *name == "Q8/center" {
            ensure(dims.len() == 22, || format!("Q8: {} simples", dims.len()))?;
        }
    }
    Ok(())
}

fn criterion_6(orbs: &[(&str, Orbifold)]) -> Outcome {
    for (name, orb) in orbs {
        let fm = functor_multiplicities(orb);
        ensure(fm.reciprocity_witness().is_none(), || format!("{name}: F is not the transpose of G"))?;
        for (d, ds) in orb.d_simples.iter().enumerate() {
            let s = orb.orbits[ds.orbit].base;
            let deg = orb.cocycles[ds.orbit].irreps.reps[ds.lambda].matrices[0].nrows();
            ensure(fm.g[s][d] == deg as u64, || format!("{name}: Ind multiplicity {} vs degree {deg}", fm.g[s][d]))?;
        }
        for d in orb.d0_simples() {
            for t in 0..orb.rep.num_labels() {
                ensure(fm.f[d][t] == 0 || orb.rep.labels[t].is_untwisted(), || format!("{name}: D0 row {d} hits twisted label {t}"))?;
            }
        }
    }
    Ok(())
}

fn criterion_7(orbs: &[(&str, Orbifold)]) -> Outcome {
    for (name, orb) in orbs {
        let r = check_braiding(orb, 20, 8, 1e-7).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.object_triples >= 20 && r.basis_triples > 0, || format!("{name}: too few triples {r:?}"))?;
        ensure(r.max_ybe_defect <= 1e-7, || format!("{name}: YBE defect {:e}", r.max_ybe_defect))?;
        ensure(r.max_unit_double_braiding_defect <= 1e-9, || format!("{name}: unit defect {:e}", r.max_unit_double_braiding_defect))?;
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let cfg = SuiteConfig::default();
    let a = emit_report(&run_verify_suite(&cfg).map_err(|e| e.to_string())?, Format::Json);
    let b = emit_report(&run_verify_suite(&cfg).map_err(|e| e.to_string())?, Format::Json);
    ensure(a == b, || "library reports differ between runs".into())?;
    let run = || Command::new(env!("CARGO_BIN_EXE_orbifold")).arg("verify").output().map_err(|e| e.to_string());
    let (x, y) = (run()?, run()?);
    ensure(x.status.success(), || format!("CLI exited with {}", x.status))?;
    ensure(x.stdout == y.stdout && !x.stdout.is_empty(), || "CLI outputs differ between runs".into())?;
    ensure(x.stdout == a.as_bytes(), || "CLI and library reports differ".into())
}

fn main() -> ExitCode {
    let start = Instant::now();
    let orbs: Vec<(&str, Orbifold)> = DEFAULT_CATALOG.iter().map(|&s| (s, build(s))).collect();
    let doubles: Vec<DoubleModel> = orbs.iter().map(|(_, o)| double_modular_data(&o.rep.m).unwrap()).collect();

    let results: Vec<(&str, Outcome)> = vec![
        ("1 double modular data", criterion_1()),
        ("2 Rep A structure", criterion_2(&orbs)),
        ("3 sector axioms", criterion_3(&orbs)),
        ("4 Clifford theory", criterion_4()),
        ("5 equivalence with D(M)", criterion_5(&orbs, &doubles)),
        ("6 functors", criterion_6(&orbs)),
        ("7 braiding", criterion_7(&orbs)),
        ("8 deterministic reports", criterion_8()),
    ];
    let mut all = true;
    for (name, r) in &results {
        match r {
            Ok(()) => println!("PASS criterion {name}"),
            Err(w) => {
                all = false;
                println!("FAIL criterion {name}: {w}");
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let in_time = secs < 300.0;
    println!("{} acceptance finished in {secs:.1}s", if in_time { "PASS" } else { "FAIL" });
    if all && in_time {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
