use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use orbifold::double::double_modular_data;
use orbifold::equivariant::{clifford_check, functor_multiplicities, orbit_summaries, Orbifold};
use orbifold::group::{group_from_spec_with_cap, DEFAULT_ORDER_CAP};
use orbifold::rep::character_table;
use orbifold::rep_a::RepA;
use orbifold::scalars::ToleranceConfig;
use orbifold::suite::{emit_report, resolve_instance, run_verify_suite, CheckKind, Format, SuiteConfig, DEFAULT_CATALOG};

#[derive(Parser)]
#[command(name = "orbifold", version, about = "Orbifolds of group-theoretical modular categories")]
struct Cli {
    /// absolute and relative tolerance for floating-point checks
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Json)]
    format: OutFormat,
    /// accept trivial or whole-group subgroups
    #[arg(long, global = true)]
    allow_degenerate: bool,
    #[arg(long, global = true, env = "ORBIFOLD_MAX_ORDER", default_value_t = DEFAULT_ORDER_CAP)]
    max_order: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Group-level information
    Group {
        #[command(subcommand)]
        what: GroupCommand,
    },
    /// Modular data of the Drinfeld double D(M)
    Double { spec: String },
    /// Simple objects of Rep A for an instance "<group>/<selector>"
    Repa { instance: String },
    /// Orbits, cocycles and simples of the equivariantization
    Orbifold { instance: String },
    /// Clifford theory check: Irr(M) from orbits on Irr(N)
    Clifford { instance: String },
    /// Run the verification suite
    Verify {
        /// instances; the default catalog when empty
        instances: Vec<String>,
        /// comma-separated subset of checks
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
        /// number of seeded object triples for the braiding checks
        #[arg(long, default_value_t = 20)]
        triples: usize,
        /// include wall-clock timings (breaks byte-identical output)
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Subcommand)]
enum GroupCommand {
    Info { spec: String },
}

fn print<T: Serialize>(value: &T, format: OutFormat, text: impl FnOnce() -> String) {
    match format {
        OutFormat::Json => {
            let v = serde_json::to_value(value).expect("serializable");
            println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
        }
        OutFormat::Text => print!("{}", text()),
    }
}

fn run(cli: Cli) -> orbifold::Result<ExitCode> {
    let tol = ToleranceConfig::with_eps(cli.tol).with_seed(cli.seed);
    let cap = cli.max_order;
    match cli.command {
        Command::Group { what: GroupCommand::Info { spec } } => {
            let g = group_from_spec_with_cap(&spec, cap)?;
            let table = character_table(&g)?;
            let normal: Vec<usize> = g.normal_subgroups().iter().map(|s| s.order()).collect();
            let info = json!({
                "spec": spec,
                "order": g.order(),
                "exponent": g.exponent(),
                "abelian": g.is_abelian(),
                "class_sizes": table.class_sizes,
                "irrep_degrees": table.irrep_degrees,
                "normal_subgroup_orders": normal,
                "center_order": g.center().order(),
                "derived_order": g.derived_subgroup().order(),
            });
            print(&info, cli.format, || {
                format!(
                    "{spec}: order {}, exponent {}, {} classes\nirrep degrees {:?}\nnormal subgroup orders {normal:?}\n",
                    g.order(),
                    g.exponent(),
                    table.num_classes(),
                    table.irrep_degrees
                )
            });
        }
        Command::Double { spec } => {
            let g = group_from_spec_with_cap(&spec, cap)?;
            let dm = double_modular_data(&g)?;
            print(&dm.data, cli.format, || {
                let mut s = format!("D({spec}): {} simples, conductor {}\n", dm.simples.len(), dm.data.conductor);
                for (i, l) in dm.data.labels.iter().enumerate() {
                    s.push_str(&format!("{i:3} {l} dim {} T {}\n", dm.dim(i), dm.data.t[i]));
                }
                s
            });
        }
        Command::Repa { instance } => {
            let inst = resolve_instance(&instance, cli.allow_degenerate, cap)?;
            let rep = RepA::new(&inst.m, &inst.n, &tol)?;
            print(&json!({ "input": instance, "labels": rep.labels }), cli.format, || {
                let mut s = format!("{instance}: {} simple labels\n", rep.num_labels());
                for (i, l) in rep.labels.iter().enumerate() {
                    s.push_str(&format!(
                        "{i:3} m={} pi={} dimA={} sector={}\n",
                        rep.m.element_name(l.m),
                        l.pi,
                        l.dim_a,
                        rep.quotient.quotient.element_name(l.sector)
                    ));
                }
                s
            });
        }
        Command::Orbifold { instance } => {
            let inst = resolve_instance(&instance, cli.allow_degenerate, cap)?;
            let orb = Orbifold::new(&inst.m, &inst.n, &tol)?;
            let fm = functor_multiplicities(&orb);
            let out = json!({
                "input": instance,
                "orbits": orbit_summaries(&orb),
                "d_simples": orb.d_simples,
                "functors": fm,
                "global_dim_sq": orb.global_dim_sq(),
            });
            print(&out, cli.format, || {
                let mut s = format!("{instance}: {} orbits, {} simples\n", orb.orbits.len(), orb.d_simples.len());
                for (i, d) in orb.d_simples.iter().enumerate() {
                    s.push_str(&format!("{i:3} orbit {} lambda {} (deg {}) dim {}\n", d.orbit, d.lambda, d.lambda_deg, d.dim));
                }
                s
            });
        }
        Command::Clifford { instance } => {
            let inst = resolve_instance(&instance, cli.allow_degenerate, cap)?;
            let orb = Orbifold::new(&inst.m, &inst.n, &tol)?;
            let r = clifford_check(&orb, &instance)?;
            print(&r, cli.format, || {
                let mut s = format!("{instance}: dims {:?}, {} nontrivial cocycle orbits\n", r.dims, r.nontrivial_cocycle_orbits);
                for c in &r.checks {
                    s.push_str(&format!("{} {}\n", if c.pass { "PASS" } else { "FAIL" }, c.name));
                }
                s
            });
            return Ok(if r.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE });
        }
        Command::Verify { instances, checks, triples, timing } => {
            let checks = if checks.is_empty() {
                CheckKind::ALL.to_vec()
            } else {
                checks.iter().map(|c| c.parse()).collect::<orbifold::Result<_>>()?
            };
            let format = match cli.format {
                OutFormat::Json => Format::Json,
                OutFormat::Text => Format::Text,
            };
            let cfg = SuiteConfig {
                instances: if instances.is_empty() { DEFAULT_CATALOG.iter().map(|s| s.to_string()).collect() } else { instances },
                checks,
                tol,
                format,
                allow_degenerate: cli.allow_degenerate,
                max_order: cap,
                braiding_triples: triples,
                timing,
                ..Default::default()
            };
            let report = run_verify_suite(&cfg)?;
            print!("{}", emit_report(&report, cfg.format));
            return Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::FAILURE });
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
