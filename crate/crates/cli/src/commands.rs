use clap::Args;
use serde_json::{json, Value};

use symlie_core::combinatorics::{dim_product_with_alphabet, to_f64, GroupFamily, GroupSpec, ProductGroupSpec};
use symlie_core::dense_oracle::{commutant_report, energy_hamiltonian, group_generator_matrices, CommutantOptions};
use symlie_core::pauli_orbits::enumerate_invariant_basis;
use symlie_core::variance_lab::{
    rows_to_csv, run_variance_experiment, AnsatzKind, AnsatzOptions, ExperimentConfig, ProbePolicy,
};
use symlie_core::{dim_energy_preserving, dim_product, Error, DEFAULT_MATRIX_CAP};

use crate::output::{float, Format, Grid};
use crate::Caps;

type Out = Result<String, String>;

fn err(e: Error) -> String {
    e.to_string()
}

fn parse_spec(s: &str) -> Result<ProductGroupSpec, String> {
    s.parse::<ProductGroupSpec>().map_err(|e| format!("cannot parse group spec {s:?}: {e}"))
}

/// `A..B` (inclusive) with an optional `:STEP`.
fn parse_range(s: &str, default_step: usize) -> Result<Vec<usize>, String> {
    let bad = || format!("expected A..B or A..B:STEP, got {s:?}");
    let (range, step) = match s.split_once(':') {
        Some((r, st)) => (r, st.trim().parse::<usize>().map_err(|_| bad())?),
        None => (s, default_step),
    };
    let (a, b) = range.split_once("..").ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a > b || step == 0 {
        return Err(bad());
    }
    Ok((a..=b).step_by(step).collect())
}

pub fn dim(spec: &str, alphabet: u64, sweep: Option<&str>, format: Format) -> Out {
    if alphabet == 0 {
        return Err("alphabet must be positive".into());
    }
    match (spec, sweep) {
        ("figure1", s) => figure1(&parse_range(s.unwrap_or("1..14"), 1)?, alphabet, format),
        ("figure2", s) => figure2(&parse_range(s.unwrap_or("1..14"), 1)?, alphabet, format),
        (template, Some(s)) => sweep_template(template, &parse_range(s, 1)?, alphabet, format),
        (spec, None) => {
            let parsed = parse_spec(spec)?;
            let d = dim_product_with_alphabet(&parsed, alphabet).map_err(err)?;
            Ok(match format {
                Format::Table => format!("{d}\n"),
                Format::Csv => format!("spec;alphabet;dimension\n{parsed};{alphabet};{d}\n"),
                Format::Json => format!(
                    "{}\n",
                    serde_json::to_string_pretty(
                        &json!({"spec": parsed.to_string(), "alphabet": alphabet, "dimension": d.to_string()})
                    )
                    .unwrap()
                ),
            })
        }
    }
}

fn family_dim(family: GroupFamily, n: usize, alphabet: u64) -> Result<String, String> {
    let spec = GroupSpec::new(family, n).map_err(err)?;
    dim_product_with_alphabet(&spec.into(), alphabet).map(|d| d.to_string()).map_err(err)
}

fn grid_json(grid: &Grid) -> Value {
    Value::Array(
        grid.rows
            .iter()
            .map(|r| {
                Value::Object(
                    grid.headers
                        .iter()
                        .zip(r)
                        .map(|(h, c)| (h.clone(), if c.is_empty() { Value::Null } else { Value::String(c.clone()) }))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn figure1(ns: &[usize], alphabet: u64, format: Format) -> Out {
    if ns.contains(&0) {
        return Err("sweep must start at 1".into());
    }
    let mut grid = Grid::new(["N", "C_N", "D_N", "A_N", "S_N", "Unrestricted"]);
    for &n in ns {
        let mut row = vec![n.to_string()];
        for f in [GroupFamily::Cyclic, GroupFamily::Dihedral, GroupFamily::Alternating, GroupFamily::Symmetric, GroupFamily::Trivial] {
            row.push(family_dim(f, n, alphabet)?);
        }
        grid.push(row);
    }
    Ok(grid.render(format, || grid_json(&grid)))
}

fn figure2(ns: &[usize], alphabet: u64, format: Format) -> Out {
    if ns.contains(&0) {
        return Err("sweep must start at 1".into());
    }
    let mixes = [
        (GroupFamily::Cyclic, 3),
        (GroupFamily::Cyclic, 5),
        (GroupFamily::Cyclic, 8),
        (GroupFamily::Dihedral, 3),
        (GroupFamily::Dihedral, 5),
        (GroupFamily::Dihedral, 8),
        (GroupFamily::Symmetric, 3),
        (GroupFamily::Symmetric, 5),
        (GroupFamily::Symmetric, 8),
    ];
    let mut headers = vec!["N".to_string()];
    headers.extend(mixes.iter().map(|(f, k)| format!("{}{k}", f.letter())));
    headers.extend(["Unrestricted".to_string(), "S_N".to_string()]);
    let mut grid = Grid::new(headers);
    for &n in ns {
        let mut row = vec![n.to_string()];
        for &(f, k) in &mixes {
            if n <= k {
                row.push(String::new());
                continue;
            }
            let spec = ProductGroupSpec::new(vec![GroupSpec::new(f, n - k).map_err(err)?, GroupSpec::trivial(k)])
                .map_err(err)?;
            row.push(dim_product_with_alphabet(&spec, alphabet).map_err(err)?.to_string());
        }
        row.push(family_dim(GroupFamily::Trivial, n, alphabet)?);
        row.push(family_dim(GroupFamily::Symmetric, n, alphabet)?);
        grid.push(row);
    }
    Ok(grid.render(format, || grid_json(&grid)))
}

fn sweep_template(template: &str, ns: &[usize], alphabet: u64, format: Format) -> Out {
    let template = if template.len() == 1 { format!("{template}:*") } else { template.to_string() };
    if !template.contains('*') {
        return Err(format!("sweep template {template:?} has no '*' placeholder"));
    }
    let mut grid = Grid::new(["N", "spec", "dimension"]);
    for &n in ns {
        let spec = parse_spec(&template.replace('*', &n.to_string()))?;
        let d = dim_product_with_alphabet(&spec, alphabet).map_err(err)?;
        grid.push(vec![n.to_string(), spec.to_string(), d.to_string()]);
    }
    Ok(grid.render(format, || grid_json(&grid)))
}

pub fn orbits(spec: &str, count_only: bool, format: Format, caps: Caps) -> Out {
    let parsed = parse_spec(spec)?;
    let basis = enumerate_invariant_basis(&parsed, caps.cap_space).map_err(err)?;
    if count_only {
        return Ok(match format {
            Format::Table => format!("{}\n", basis.len()),
            Format::Csv => format!("spec;count\n{parsed};{}\n", basis.len()),
            Format::Json => format!("{}\n", json!({"spec": parsed.to_string(), "count": basis.len()})),
        });
    }
    let mut grid = Grid::new(["representative", "weight", "members"]);
    for e in &basis {
        let members: Vec<String> = e.members.iter().map(ToString::to_string).collect();
        grid.push(vec![e.representative.to_string(), e.weight.to_string(), members.join(",")]);
    }
    Ok(grid.render(format, || serde_json::to_value(&basis).expect("serialisable")))
}

pub fn oracle(target: &str, qubits: Option<usize>, format: Format, caps: Caps) -> Out {
    let opts = CommutantOptions::default();
    let (label, n, gens, expected) = if target.eq_ignore_ascii_case("energy") {
        let n = qubits.ok_or("`oracle energy` needs --qubits")?;
        let h = energy_hamiltonian(n, DEFAULT_MATRIX_CAP).map_err(err)?;
        ("energy".to_string(), n, vec![h], dim_energy_preserving(n as u64))
    } else {
        let spec = parse_spec(target)?;
        let order = spec.order();
        if order > caps.cap_order.into() {
            return Err(err(Error::OrderCapExceeded { order, cap: caps.cap_order }));
        }
        let n = spec.degree();
        if qubits.is_some_and(|q| q != n) {
            return Err(format!("{spec} acts on {n} qubits, not {}", qubits.unwrap()));
        }
        let gens = group_generator_matrices(&spec, DEFAULT_MATRIX_CAP).map_err(err)?;
        (spec.to_string(), n, gens, dim_product(&spec).map_err(err)?)
    };
    if n > opts.max_qubits {
        return Err(format!("the dense oracle supports at most {} qubits, got {n}", opts.max_qubits));
    }
    let report = commutant_report(&gens, n, &opts).map_err(err)?;
    let agrees = !report.indeterminate && expected == report.dimension.into();
    let opt = |x: Option<f64>| x.map(float).unwrap_or_default();
    let fields: Vec<(&str, String)> = vec![
        ("target", label.clone()),
        ("qubits", n.to_string()),
        ("dimension", report.dimension.to_string()),
        ("expected", expected.to_string()),
        ("agrees", agrees.to_string()),
        ("rank", report.rank.to_string()),
        ("basis_size", report.basis_size.to_string()),
        ("generators", report.generator_count.to_string()),
        ("constraints", report.constraint_count.to_string()),
        ("tolerance", float(report.tolerance)),
        ("smallest_accepted", opt(report.smallest_accepted)),
        ("largest_rejected", opt(report.largest_rejected)),
        ("gap_ratio", opt(report.gap_ratio)),
        ("indeterminate", report.indeterminate.to_string()),
    ];
    Ok(match format {
        Format::Table => fields.iter().map(|(k, v)| format!("{k:>17}: {v}\n")).collect(),
        Format::Csv => {
            let mut g = Grid::new(fields.iter().map(|(k, _)| *k));
            g.push(fields.iter().map(|(_, v)| v.clone()).collect());
            g.csv()
        }
        Format::Json => {
            let mut v = serde_json::to_value(&report).expect("serialisable");
            v["target"] = json!(label);
            v["expected"] = json!(expected.to_string());
            v["agrees"] = json!(agrees);
            format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
        }
    })
}

pub fn scaling(max: usize, format: Format) -> Out {
    if max == 0 {
        return Err("--max must be at least 1".into());
    }
    let mut grid = Grid::new(["family", "N", "dimension", "dim*N/4^N", "dim/N^3", "dim*sqrt(N)/4^N"]);
    let families = [
        GroupFamily::Trivial,
        GroupFamily::Cyclic,
        GroupFamily::Dihedral,
        GroupFamily::Alternating,
        GroupFamily::Symmetric,
    ];
    // Each dimension arrives as exact decimal text plus an f64 for the ratios.
    let mut push = |name: String, n: usize, d: (String, f64)| {
        let (x, nf) = (d.1, n as f64);
        let four = 4f64.powi(n as i32);
        grid.push(vec![
            name,
            n.to_string(),
            d.0,
            float(x * nf / four),
            float(x / nf.powi(3)),
            float(x * nf.sqrt() / four),
        ]);
    };
    for f in families {
        for n in 1..=max {
            let spec = GroupSpec::new(f, n).map_err(err)?;
            let d = dim_product(&spec.into()).map_err(err)?;
            push(format!("{}_N", f.letter()), n, (d.to_string(), to_f64(&d)));
        }
    }
    for n in 1..=max {
        let d = dim_energy_preserving(n as u64);
        push("energy".into(), n, (d.to_string(), to_f64(&d)));
    }
    Ok(grid.render(format, || grid_json(&grid)))
}

#[derive(Args, Debug)]
pub struct VarianceArgs {
    /// Qubit counts: `A..B` (step 2), `A..B:STEP`, or a comma list.
    #[arg(long, default_value = "4..10")]
    qubits: String,
    /// Parameter vectors drawn per (qubit count, ansatz).
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Fixed layer count for every ansatz; by default about 6n slots each.
    #[arg(long)]
    layers: Option<usize>,
    /// `all`, or a comma list of `permutation`, `cyclic`, `strongly_entangling`.
    #[arg(long, default_value = "all")]
    ansatz: String,
    /// Drop the distance-2 ZZ ring from the cyclic ansatz.
    #[arg(long)]
    no_theta4: bool,
    /// Report the variance of every slot instead of the middle-layer probe.
    #[arg(long)]
    all_slots: bool,
    #[arg(long, default_value_t = 50)]
    dataset_size: usize,
    #[arg(long, default_value_t = 0.4)]
    edge_probability: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

fn parse_qubits(s: &str) -> Result<Vec<usize>, String> {
    if s.contains("..") {
        return parse_range(s, 2);
    }
    s.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| format!("bad qubit count {x:?}")))
        .collect()
}

pub fn variance(args: &VarianceArgs) -> Out {
    let ansatzes = if args.ansatz.eq_ignore_ascii_case("all") {
        AnsatzKind::ALL.to_vec()
    } else {
        args.ansatz.split(',').map(|a| a.trim().parse::<AnsatzKind>().map_err(err)).collect::<Result<_, _>>()?
    };
    let cfg = ExperimentConfig {
        qubits: parse_qubits(&args.qubits)?,
        ansatzes,
        samples_per_point: args.samples,
        dataset_size: args.dataset_size,
        edge_probability: args.edge_probability,
        seed: args.seed,
        layers: args.layers,
        options: AnsatzOptions { cyclic_theta4: !args.no_theta4 },
        probe: if args.all_slots { ProbePolicy::AllSlots } else { ProbePolicy::MiddleLayer },
        ..ExperimentConfig::default()
    };
    let rows = run_variance_experiment(&cfg).map_err(err)?;
    Ok(match args.format {
        Format::Csv => rows_to_csv(&rows, args.all_slots),
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&rows).unwrap()),
        Format::Table => {
            let mut g = Grid::new(["qubits", "ansatz", "variance", "samples", "seed", "slot", "layers", "params"]);
            for r in &rows {
                g.push(vec![
                    r.qubits.to_string(),
                    r.ansatz.to_string(),
                    float(r.variance),
                    r.samples.to_string(),
                    r.seed.to_string(),
                    r.slot.to_string(),
                    r.layers.to_string(),
                    r.n_params.to_string(),
                ]);
            }
            g.table()
        }
    })
}
