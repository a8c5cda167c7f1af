use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};

use lattika_core::{
    all_filters, all_s_filters, default_catalog, doc, emit_dot, generate, hunt_counterexample,
    is_filter, is_maximal_filter, is_prime_filter, is_s_filter, load_lattice, quotient,
    run_theorem_suite, saturate, verify::reports_to_jsonl, FilterSet, Lattice, LatticeDoc,
    TheoremId, VeeClosedSet, DEFAULT_CATALOG_SEED,
};

#[derive(Parser)]
#[command(name = "lattika")]
#[command(about = "Finite bounded lattices, filters and S-filters, with an exhaustive theorem suite")]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a lattice document and print its structure.
    Check { file: PathBuf },

    /// List the filters of a lattice.
    Filters {
        file: PathBuf,
        /// Only prime filters.
        #[arg(long, conflicts_with = "maximal")]
        prime: bool,
        /// Only maximal filters.
        #[arg(long)]
        maximal: bool,
    },

    /// List the S-filters for a vee-closed set S.
    Sfilters {
        file: PathBuf,
        /// S as comma-separated element labels.
        #[arg(long = "s")]
        s: String,
        /// Machine-readable output.
        #[arg(long)]
        json: bool,
    },

    /// Saturate a filter by a vee-closed set S.
    Saturate {
        file: PathBuf,
        #[arg(long = "s")]
        s: String,
        /// The filter as comma-separated element labels.
        #[arg(long)]
        filter: String,
        #[arg(long)]
        json: bool,
    },

    /// Quotient a lattice by a filter and emit the quotient document.
    Quotient {
        file: PathBuf,
        #[arg(long)]
        filter: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },

    /// Product of two lattices, emitted as a lattice document.
    Product {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },

    /// Generate a lattice: chain:N, boolean:K, ex5, m3, n5, divisors:N,
    /// downsets:poset.json, random:N,SEED (down-sets of a seeded random poset).
    Gen {
        spec: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },

    /// Run the theorem suite over the default catalog.
    Verify {
        /// Restrict to one theorem id.
        #[arg(long)]
        theorem: Option<String>,
        /// Skip catalog lattices larger than this.
        #[arg(long)]
        max_size: Option<usize>,
        /// Write a JSON-lines report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },

    /// Re-run one theorem with a hypothesis dropped and report the first
    /// counterexample.
    Hunt {
        #[arg(long)]
        theorem: String,
        /// Hypothesis name to unenforce.
        #[arg(long)]
        drop: String,
    },

    /// Emit a DOT drawing of the cover relation.
    Dot {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn catalog_seed() -> u64 {
    std::env::var("LATTIKA_SEED")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_CATALOG_SEED)
}

fn parse_filter(lat: &Lattice, text: &str) -> Result<FilterSet> {
    let set = doc::parse_labels(lat, text).map_err(|e| anyhow!(e))?;
    FilterSet::new(lat, set).map_err(|e| anyhow!("--filter {text}: {e}"))
}

fn parse_vee(lat: &Lattice, text: &str) -> Result<VeeClosedSet> {
    let set = doc::parse_labels(lat, text).map_err(|e| anyhow!(e))?;
    VeeClosedSet::new(lat, set).map_err(|e| anyhow!("--s {text}: {e}"))
}

fn set_line(lat: &Lattice, s: lattika_core::Subset) -> String {
    format!("{{{}}}", doc::sorted_labels(lat, s).join(","))
}

fn write_or_print(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Check { file } => {
            let lat = load_lattice(&file)?;
            let flags = lat.flags();
            println!("name: {}", lat.name());
            println!("elements: {}", lat.len());
            println!("bottom: {}", lat.label(lat.bottom()));
            println!("top: {}", lat.label(lat.top()));
            println!("distributive: {}", flags.distributive);
            println!("modular: {}", flags.modular);
            println!("complemented: {}", flags.complemented);
            println!("l-domain: {}", lat.is_l_domain());
            println!("filters: {}", all_filters(&lat).len());
        }
        Command::Filters {
            file,
            prime,
            maximal,
        } => {
            let lat = load_lattice(&file)?;
            for f in all_filters(&lat) {
                if prime && !is_prime_filter(&lat, &f) {
                    continue;
                }
                if maximal && !is_maximal_filter(&lat, &f) {
                    continue;
                }
                println!("{}", set_line(&lat, f.members()));
            }
        }
        Command::Sfilters { file, s, json } => {
            let lat = load_lattice(&file)?;
            let s = parse_vee(&lat, &s)?;
            let sf = all_s_filters(&lat, &s);
            if json {
                let arr: Vec<Vec<String>> = sf
                    .iter()
                    .map(|f| doc::sorted_labels(&lat, f.members()))
                    .collect();
                println!("{}", serde_json::json!({ "s_filters": arr }));
            } else {
                for f in sf {
                    println!("{}", set_line(&lat, f.members()));
                }
            }
        }
        Command::Saturate { file, s, filter, json } => {
            let lat = load_lattice(&file)?;
            let s = parse_vee(&lat, &s)?;
            let p = parse_filter(&lat, &filter)?;
            let sat = saturate(&lat, &s, &p);
            let filter_ok = is_filter(&lat, sat);
            let s_filter_ok = filter_ok
                && FilterSet::new(&lat, sat)
                    .map(|f| is_s_filter(&lat, &s, &f))
                    .unwrap_or(false);
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "saturation": doc::sorted_labels(&lat, sat),
                        "is_filter": filter_ok,
                        "is_s_filter": s_filter_ok,
                    })
                );
            } else {
                println!("{}", set_line(&lat, sat));
                println!("filter: {filter_ok}");
                println!("s-filter: {s_filter_ok}");
            }
        }
        Command::Quotient { file, filter, output } => {
            let lat = load_lattice(&file)?;
            let p = parse_filter(&lat, &filter)?;
            let qt = quotient(&lat, &p)?;
            let mut q = qt.lattice().clone();
            q.set_name(&format!("{}/{{{}}}", lat.name(), doc::sorted_labels(&lat, p.members()).join(",")));
            write_or_print(output.as_deref(), &(LatticeDoc::from_lattice(&q).to_json() + "\n"))?;
        }
        Command::Product { a, b, output } => {
            let la = load_lattice(&a)?;
            let lb = load_lattice(&b)?;
            let prod = lattika_core::product(&[la.clone(), lb.clone()])?;
            let mut p = prod.lattice().clone();
            p.set_name(&format!("{}x{}", la.name(), lb.name()));
            write_or_print(output.as_deref(), &(LatticeDoc::from_lattice(&p).to_json() + "\n"))?;
        }
        Command::Gen { spec, output } => {
            let lat = gen_lattice(&spec)?;
            write_or_print(output.as_deref(), &(LatticeDoc::from_lattice(&lat).to_json() + "\n"))?;
        }
        Command::Verify {
            theorem,
            max_size,
            json,
        } => {
            let seed = catalog_seed();
            let catalog = default_catalog(seed);
            let filter: Option<Vec<TheoremId>> = match theorem {
                Some(t) => Some(vec![parse_theorem(&t)?]),
                None => None,
            };
            let reports = run_theorem_suite(&catalog, filter.as_deref(), max_size)?;
            let mut violations = 0u64;
            for r in &reports {
                let scope = if r.distributive_only {
                    " [distributive sub-catalog]"
                } else {
                    ""
                };
                println!(
                    "{:<20} instances={:<10} violations={}{scope} ({:?})",
                    r.theorem, r.instances, r.violations, r.wall_time
                );
                for note in &r.notes {
                    println!("    note: {note}");
                }
                for w in &r.witnesses {
                    println!(
                        "    witness: {} S={{{}}} filters={:?} — {}",
                        w.lattice_id,
                        w.s.join(","),
                        w.filters,
                        w.detail
                    );
                }
                violations += r.violations;
            }
            println!(
                "total: {} theorems, {} violations",
                reports.len(),
                violations
            );
            if let Some(path) = json {
                let text = reports_to_jsonl(&reports, catalog.len(), seed);
                std::fs::write(&path, text)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            if violations > 0 {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Hunt { theorem, drop } => {
            let catalog = default_catalog(catalog_seed());
            let theorem = parse_theorem(&theorem)?;
            match hunt_counterexample(&catalog, theorem, Some(&drop))? {
                Some(w) => {
                    println!("counterexample found:");
                    println!("{}", serde_json::to_string_pretty(&w)?);
                }
                None => println!("no counterexample found"),
            }
        }
        Command::Dot { file, output } => {
            let lat = load_lattice(&file)?;
            write_or_print(output.as_deref(), &emit_dot(&lat))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_theorem(text: &str) -> Result<TheoremId> {
    TheoremId::parse(text).ok_or_else(|| {
        let all: Vec<&str> = TheoremId::ALL.iter().map(|t| t.as_str()).collect();
        anyhow!("unknown theorem `{text}`; one of: {}", all.join(", "))
    })
}

fn gen_lattice(spec: &str) -> Result<Lattice> {
    let (family, arg) = match spec.split_once(':') {
        Some((f, a)) => (f, Some(a)),
        None => (spec, None),
    };
    let lat = match (family, arg) {
        ("chain", Some(n)) => generate::chain(n.parse().context("chain size")?)?,
        ("boolean", Some(k)) => generate::boolean(k.parse().context("boolean rank")?)?,
        ("divisors", Some(n)) => generate::divisor_lattice(n.parse().context("divisors of")?)?,
        ("ex5", None) | ("m3", None) | ("n5", None) => generate::named(family)?,
        ("downsets", Some(path)) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading poset file {path}"))?;
            let d = LatticeDoc::from_json(&text)?;
            let covers: Vec<(&str, &str)> = d
                .covers
                .iter()
                .map(|(a, b)| (a.as_str(), b.as_str()))
                .collect();
            let names: Vec<&str> = d.elements.iter().map(|s| s.as_str()).collect();
            let poset = lattika_core::Poset::new(&names, &covers)?;
            let mut lat = generate::downset_lattice(&poset)?;
            lat.set_name(&format!("downsets-{}", d.name));
            lat
        }
        ("random", Some(args)) => {
            let (n, seed) = args
                .split_once(',')
                .ok_or_else(|| anyhow!("random wants N,SEED"))?;
            let poset = generate::random_poset(
                n.trim().parse().context("poset size")?,
                seed.trim().parse().context("seed")?,
            )?;
            let mut lat = generate::downset_lattice(&poset)?;
            lat.set_name(&format!("rnd-ds-{n}-{seed}", n = n.trim(), seed = seed.trim()));
            lat
        }
        _ => bail!(
            "unknown generator `{spec}`; use chain:N, boolean:K, ex5, m3, n5, \
             divisors:N, downsets:poset.json or random:N,SEED"
        ),
    };
    Ok(lat)
}
