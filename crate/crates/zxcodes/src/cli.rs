//! Command-line surface tying the pipeline together.
//!
//! Verbs: build, simplify, concat, contract, extract-stabilizers,
//! extract-circuit, validate, distance, verify, export-dot, catalog.
//! Inputs are catalog names, file paths, or `-` for standard input;
//! artifacts go to standard output unless `-o` names a file; logs go to
//! standard error. Exit codes: 0 success, 1 domain error (invalid encoder,
//! failed precondition), 2 I/O or parse error.

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::circuit::CliffordCircuit;
use crate::code::StabilizerCode;
use crate::compose::{self, CatalogEntry, ConcatenationPlan};
use crate::dense::proportional;
use crate::diagram::GraphLikeDiagram;
use crate::encoder::{EncoderDiagram, GraphCode};
use crate::error::{Error, Result};
use crate::rewrite::{self, Strategy};

#[derive(Parser, Debug)]
#[command(name = "zxcodes", version, about = "Graph-code encoders as graph-like ZX-diagrams")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build an encoder diagram from a circuit, graph code, or stabilizer code
    Build {
        /// Encoding circuit file (text format); requires --data
        #[arg(long, conflicts_with_all = ["graph_code", "stabilizer"])]
        circuit: Option<PathBuf>,
        /// Data qubit indices for --circuit; all others are plugged with |0>
        #[arg(long, value_delimiter = ',')]
        data: Vec<usize>,
        /// Graph code JSON (catalog name, path, or - for stdin)
        #[arg(long, conflicts_with = "stabilizer")]
        graph_code: Option<String>,
        /// Stabilizer code JSON (catalog name, path, or - for stdin)
        #[arg(long)]
        stabilizer: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Simplify a diagram to its reduced form
    Simplify {
        /// Diagram JSON (path or - for stdin)
        #[arg(short, long, default_value = "-")]
        input: String,
        /// Strategy file, or "auto"
        #[arg(long, default_value = "auto")]
        strategy: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Concatenate an outer encoder with inner encoders
    Concat {
        /// Plan JSON: `{"outer": ref, "inners": [refs], "basis_changes": [refs]}`
        #[arg(long)]
        plan: Option<String>,
        #[arg(long)]
        outer: Option<String>,
        /// Inner encoder ref; repeat per block, or give once to reuse
        #[arg(long)]
        inner: Vec<String>,
        /// Basis change per block: "H", "I", or a circuit file
        #[arg(long, default_value = "H")]
        basis: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Contract output legs of two encoders
    Contract {
        /// Plan JSON: {"contractions": [[ref, leg, ref, leg], ...]};
        /// "#i" references the result of contraction i
        #[arg(long)]
        plan: Option<String>,
        #[arg(long, requires_all = ["leg_a", "b", "leg_b"])]
        a: Option<String>,
        #[arg(long)]
        leg_a: Option<usize>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        leg_b: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Extract stabilizers and logical operators as JSON
    ExtractStabilizers {
        #[arg(short, long, default_value = "-")]
        input: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Extract an encoding circuit (text format; data qubits in a comment)
    ExtractCircuit {
        #[arg(short, long, default_value = "-")]
        input: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check encoder validity; exit 0 when the bi-adjacency has full rank
    Validate {
        #[arg(short, long, default_value = "-")]
        input: String,
    },
    /// Brute-force minimum distance of a stabilizer code
    Distance {
        /// Code JSON, encoder ref (the code is extracted), or catalog name
        #[arg(short, long, default_value = "-")]
        input: String,
        /// Cap on the enumeration dimension (2^budget candidates)
        #[arg(long)]
        budget: Option<u32>,
    },
    /// Run the dense-oracle suite on a named fixture
    Verify {
        /// Catalog name or encoder file
        #[arg(short, long)]
        fixture: String,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Dense checks are skipped above this many boundary wires
        #[arg(long, default_value_t = 16)]
        budget: usize,
    },
    /// Export a diagram to GraphViz DOT
    ExportDot {
        #[arg(short, long, default_value = "-")]
        input: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print a catalog object as JSON
    Catalog {
        /// five_one_three, steane, repetition(n), shor, ame6, happy
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn read_source(spec: &str) -> Result<String> {
    if spec == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        Ok(std::fs::read_to_string(spec)?)
    }
}

fn write_artifact(output: &Option<PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

/// Resolve a reference: catalog name, file path, or stdin. Files and stdin
/// hold JSON for one of the three object kinds, told apart by their keys.
fn load_entry(spec: &str) -> Result<CatalogEntry> {
    match compose::catalog(spec) {
        Ok(entry) => return Ok(entry),
        Err(Error::UnknownCatalog(_)) => {}
        Err(e) => return Err(e),
    }
    parse_entry(&read_source(spec)?)
}

fn parse_entry(text: &str) -> Result<CatalogEntry> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
    if obj.contains_key("vertices") {
        let d = GraphLikeDiagram::deserialize(&value)?;
        Ok(CatalogEntry::Encoder(EncoderDiagram::new(d)?))
    } else if obj.contains_key("graph_edges") {
        Ok(CatalogEntry::GraphCode(GraphCode::deserialize(&value)?))
    } else if obj.contains_key("stabilizers") {
        Ok(CatalogEntry::Code(StabilizerCode::deserialize(&value)?))
    } else {
        Err(Error::Parse(
            "JSON object is not a diagram, graph code, or stabilizer code".into(),
        ))
    }
}

fn entry_to_encoder(entry: CatalogEntry) -> Result<EncoderDiagram> {
    match entry {
        CatalogEntry::Encoder(e) => Ok(e),
        CatalogEntry::GraphCode(gc) => EncoderDiagram::from_graph_code(&gc),
        CatalogEntry::Code(code) => EncoderDiagram::from_stabilizer(&code),
    }
}

fn load_encoder(spec: &str) -> Result<EncoderDiagram> {
    entry_to_encoder(load_entry(spec)?)
}

fn load_strategy(spec: &str) -> Result<Strategy> {
    if spec == "auto" || spec == "default" {
        Ok(Strategy::auto())
    } else {
        Strategy::parse(&std::fs::read_to_string(spec)?)
    }
}

fn load_basis_change(spec: &str, k: usize) -> Result<CliffordCircuit> {
    match spec {
        "H" | "h" => Ok(compose::hadamard_basis_change(k)),
        "I" | "i" | "identity" => Ok(CliffordCircuit::new(k)),
        path => {
            let c = CliffordCircuit::parse(&std::fs::read_to_string(path)?)?;
            if c.qubits() > k {
                return Err(Error::ArityMismatch(format!(
                    "basis change acts on {} qubits, block has {k} inputs",
                    c.qubits()
                )));
            }
            // pad narrow circuits up to the block size
            let mut padded = CliffordCircuit::new(k);
            padded.extend(c.gates().iter().copied())?;
            Ok(padded)
        }
    }
}

#[derive(Deserialize)]
struct ConcatPlanJson {
    outer: String,
    inners: Vec<String>,
    #[serde(default)]
    basis_changes: Vec<String>,
}

#[derive(Deserialize)]
struct ContractPlanJson {
    contractions: Vec<(String, usize, String, usize)>,
}

fn encoder_json(e: &EncoderDiagram) -> Result<String> {
    Ok(format!("{}\n", serde_json::to_string_pretty(e.diagram())?))
}

/// Execute one command. Errors propagate with their exit-code class.
pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Build {
            circuit,
            data,
            graph_code,
            stabilizer,
            output,
        } => {
            let e = if let Some(path) = circuit {
                let c = CliffordCircuit::parse(&std::fs::read_to_string(&path)?)?;
                EncoderDiagram::from_circuit(&c, &data)?
            } else if let Some(spec) = graph_code {
                let CatalogEntry::GraphCode(gc) = load_entry(&spec)? else {
                    return Err(Error::Parse(format!("{spec} is not a graph code")));
                };
                EncoderDiagram::from_graph_code(&gc)?
            } else if let Some(spec) = stabilizer {
                let CatalogEntry::Code(code) = load_entry(&spec)? else {
                    return Err(Error::Parse(format!("{spec} is not a stabilizer code")));
                };
                EncoderDiagram::from_stabilizer(&code)?
            } else {
                return Err(Error::Parse(
                    "build needs one of --circuit, --graph-code, --stabilizer".into(),
                ));
            };
            eprintln!("built encoder: k={}, n={}", e.k(), e.n());
            write_artifact(&output, &encoder_json(&e)?)
        }
        Command::Simplify {
            input,
            strategy,
            output,
        } => {
            let mut d: GraphLikeDiagram = serde_json::from_str(&read_source(&input)?)?;
            let stats = rewrite::simplify(&mut d, &load_strategy(&strategy)?)?;
            d.validate()?;
            rewrite::reduced_postconditions(&d)?;
            eprintln!(
                "simplified in {} steps (lc {}, pv {}, pv2 {})",
                stats.steps, stats.local_complements, stats.pivots, stats.boundary_pivots
            );
            write_artifact(&output, &format!("{}\n", serde_json::to_string_pretty(&d)?))
        }
        Command::Concat {
            plan,
            outer,
            inner,
            basis,
            output,
        } => {
            let e = if let Some(spec) = plan {
                let raw: ConcatPlanJson = serde_json::from_str(&read_source(&spec)?)?;
                let outer = load_encoder(&raw.outer)?;
                let inners: Vec<EncoderDiagram> = raw
                    .inners
                    .iter()
                    .map(|r| load_encoder(r))
                    .collect::<Result<_>>()?;
                let basis_specs = if raw.basis_changes.is_empty() {
                    vec!["H".to_string(); inners.len()]
                } else {
                    raw.basis_changes
                };
                let basis_changes = inners
                    .iter()
                    .zip(&basis_specs)
                    .map(|(e, s)| load_basis_change(s, e.k()))
                    .collect::<Result<_>>()?;
                compose::concatenate(&ConcatenationPlan {
                    outer,
                    inners,
                    basis_changes,
                })?
            } else {
                let outer = load_encoder(&outer.ok_or_else(|| {
                    Error::Parse("concat needs --plan or --outer/--inner".into())
                })?)?;
                if inner.is_empty() {
                    return Err(Error::Parse("concat needs at least one --inner".into()));
                }
                let mut inners: Vec<EncoderDiagram> = inner
                    .iter()
                    .map(|r| load_encoder(r))
                    .collect::<Result<_>>()?;
                if inners.len() == 1 {
                    // one block given: reuse it across all outer outputs
                    let k = inners[0].k();
                    if k != 0 && outer.n() % k == 0 {
                        inners = vec![inners[0].clone(); outer.n() / k];
                    }
                }
                let basis_changes = inners
                    .iter()
                    .map(|e| load_basis_change(&basis, e.k()))
                    .collect::<Result<_>>()?;
                compose::concatenate(&ConcatenationPlan {
                    outer,
                    inners,
                    basis_changes,
                })?
            };
            eprintln!("concatenated encoder: k={}, n={}", e.k(), e.n());
            write_artifact(&output, &encoder_json(&e)?)
        }
        Command::Contract {
            plan,
            a,
            leg_a,
            b,
            leg_b,
            output,
        } => {
            let e = if let Some(spec) = plan {
                let raw: ContractPlanJson = serde_json::from_str(&read_source(&spec)?)?;
                let mut results: Vec<EncoderDiagram> = Vec::new();
                for (ra, la, rb, lb) in &raw.contractions {
                    let resolve = |spec: &str, results: &[EncoderDiagram]| -> Result<EncoderDiagram> {
                        if let Some(idx) = spec.strip_prefix('#') {
                            let i: usize = idx
                                .parse()
                                .map_err(|_| Error::Parse(format!("bad back-reference {spec}")))?;
                            results
                                .get(i)
                                .cloned()
                                .ok_or_else(|| Error::Parse(format!("no contraction result {spec}")))
                        } else {
                            load_encoder(spec)
                        }
                    };
                    let ea = resolve(ra, &results)?;
                    // identical catalog or file refs mean two fresh copies;
                    // only a repeated back-reference contracts within one
                    let r = if ra == rb && ra.starts_with('#') {
                        compose::self_contract(&ea, *la, *lb)?
                    } else {
                        compose::contract(&ea, *la, &resolve(rb, &results)?, *lb)?
                    };
                    results.push(r);
                }
                results
                    .pop()
                    .ok_or_else(|| Error::Parse("empty contraction plan".into()))?
            } else {
                let (a, la, b, lb) = match (a, leg_a, b, leg_b) {
                    (Some(a), Some(la), Some(b), Some(lb)) => (a, la, b, lb),
                    _ => {
                        return Err(Error::Parse(
                            "contract needs --plan or --a/--leg-a/--b/--leg-b".into(),
                        ))
                    }
                };
                compose::contract(&load_encoder(&a)?, la, &load_encoder(&b)?, lb)?
            };
            if !e.validate() {
                return Err(Error::InvalidEncoder(
                    "contracted encoder is rank deficient".into(),
                ));
            }
            eprintln!("contracted encoder: k={}, n={}", e.k(), e.n());
            write_artifact(&output, &encoder_json(&e)?)
        }
        Command::ExtractStabilizers { input, output } => {
            let e = load_encoder(&input)?;
            let code = e.extract_code()?;
            eprintln!(
                "extracted [[{},{}]] code with {} stabilizers",
                code.n(),
                code.k(),
                code.stabilizers().len()
            );
            write_artifact(&output, &format!("{}\n", serde_json::to_string_pretty(&code)?))
        }
        Command::ExtractCircuit { input, output } => {
            let e = load_encoder(&input)?;
            let ext = e.extract_circuit()?;
            let mut text = format!(
                "# data qubits: {}\n# ancillas (prepare in |+>): {}\n",
                ext.data_qubits
                    .iter()
                    .map(|q| q.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
                ext.ancilla_count
            );
            text.push_str(&ext.circuit.to_text());
            eprintln!(
                "extracted circuit: {} gates on {} qubits",
                ext.circuit.len(),
                ext.circuit.qubits()
            );
            write_artifact(&output, &text)
        }
        Command::Validate { input } => {
            let e = load_encoder(&input)?;
            if e.validate() {
                println!("valid: rank(gamma) = k = {}", e.k());
                Ok(())
            } else {
                println!("invalid: rank(gamma) < k");
                Err(Error::InvalidEncoder("bi-adjacency is rank deficient".into()))
            }
        }
        Command::Distance { input, budget } => {
            let code = match load_entry(&input)? {
                CatalogEntry::Code(code) => code,
                entry => entry_to_encoder(entry)?.extract_code()?,
            };
            println!("{}", code.min_distance(budget)?);
            Ok(())
        }
        Command::Verify {
            fixture,
            tol,
            seed,
            budget,
        } => verify(&fixture, tol, seed, budget),
        Command::ExportDot { input, output } => {
            let d: GraphLikeDiagram = serde_json::from_str(&read_source(&input)?)?;
            write_artifact(&output, &d.to_dot())
        }
        Command::Catalog { name, output } => {
            let text = match compose::catalog(&name)? {
                CatalogEntry::Encoder(e) => encoder_json(&e)?,
                CatalogEntry::GraphCode(gc) => {
                    format!("{}\n", serde_json::to_string_pretty(&gc)?)
                }
                CatalogEntry::Code(code) => {
                    format!("{}\n", serde_json::to_string_pretty(&code)?)
                }
            };
            write_artifact(&output, &text)
        }
    }
}

/// The dense-oracle suite: one pass/fail line per property.
fn verify(fixture: &str, tol: f64, seed: u64, budget: usize) -> Result<()> {
    let e = load_encoder(fixture)?;
    let mut failures = 0;
    let mut report = |name: &str, outcome: std::result::Result<String, String>| match outcome {
        Ok(detail) => println!("PASS {name}: {detail}"),
        Err(detail) => {
            println!("FAIL {name}: {detail}");
            failures += 1;
        }
    };

    report(
        "graph-like",
        e.diagram()
            .validate()
            .map(|_| "all four conditions hold".into())
            .map_err(|err| err.to_string()),
    );
    report(
        "rank",
        if e.validate() {
            Ok(format!("rank(gamma) = k = {}", e.k()))
        } else {
            Err("bi-adjacency is rank deficient".into())
        },
    );
    let mut reduced = e.clone();
    let reduced_ok = reduced
        .simplify(&Strategy::auto())
        .and_then(|_| rewrite::reduced_postconditions(reduced.diagram()));
    report(
        "reduction",
        reduced_ok
            .map(|_| format!("{} interior spiders", reduced.diagram().num_interior()))
            .map_err(|err| err.to_string()),
    );

    let code = e.extract_code()?;
    let dense_ok = e.k() + e.n() <= budget;
    if dense_ok {
        let m = e.diagram().evaluate_dense()?;
        let mut bad = 0;
        for g in code.stabilizers() {
            for col in 0..1usize << e.k() {
                let mut v = m.column(col);
                g.apply_to_state(&mut v);
                if v.iter()
                    .zip(m.column(col).iter())
                    .any(|(a, b)| (a - b).norm() > tol * 10.0)
                {
                    bad += 1;
                }
            }
        }
        report(
            "stabilizers",
            if bad == 0 {
                Ok(format!(
                    "{} generators fix all {} encoded basis states",
                    code.stabilizers().len(),
                    1usize << e.k()
                ))
            } else {
                Err(format!("{bad} generator/state pairs break"))
            },
        );
        // logicals must preserve the codespace
        let norm2: f64 = m.column(0).iter().map(|c| c.norm_sqr()).sum();
        let mut bad = 0;
        for l in code.logical_x().iter().chain(code.logical_z()) {
            for col in 0..1usize << e.k() {
                let mut v = m.column(col);
                l.apply_to_state(&mut v);
                for c2 in 0..1usize << e.k() {
                    let base = m.column(c2);
                    let overlap: crate::dense::C64 =
                        base.iter().zip(&v).map(|(b, x)| b.conj() * x).sum();
                    let coef = overlap / norm2;
                    for (x, b) in v.iter_mut().zip(&base) {
                        *x -= coef * b;
                    }
                }
                if v.iter().any(|c| c.norm() > tol * 100.0) {
                    bad += 1;
                }
            }
        }
        report(
            "logicals",
            if bad == 0 {
                Ok(format!(
                    "{} logical operators preserve the codespace",
                    2 * code.k()
                ))
            } else {
                Err(format!("{bad} logical/state pairs leave the codespace"))
            },
        );
    } else {
        eprintln!(
            "note: dense checks skipped ({} legs over budget {budget})",
            e.k() + e.n()
        );
    }

    let bent_back = e
        .bend()
        .bend_to_map(e.k())
        .map_err(|err| err.to_string())
        .and_then(|d| {
            if d == *e.diagram() {
                Ok("bend twice is the identity".to_string())
            } else {
                Err("bend round trip changed the diagram".to_string())
            }
        });
    report("duality", bent_back);

    if dense_ok {
        let ext = e.extract_circuit()?;
        let mut rebuilt = GraphLikeDiagram::from_circuit(&ext.circuit);
        let mut ancillas: Vec<usize> = (0..ext.circuit.qubits())
            .filter(|q| !ext.data_qubits.contains(q))
            .collect();
        ancillas.reverse();
        for q in ancillas {
            rebuilt.plug_input(q, crate::diagram::PlugState::Plus)?;
        }
        rewrite::simplify(&mut rebuilt, &Strategy::auto())?;
        let ok = proportional(
            &rebuilt.evaluate_dense()?,
            &e.diagram().evaluate_dense()?,
            tol,
        );
        report(
            "circuit",
            if ok {
                Ok(format!(
                    "{}-gate encoding circuit round-trips",
                    ext.circuit.len()
                ))
            } else {
                Err("extracted circuit does not reproduce the encoder".into())
            },
        );
    }

    // seeded rewrite soundness spot check
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = 0;
    for _ in 0..20 {
        let c = crate::random::random_circuit(&mut rng, 4, 20);
        let mut d = GraphLikeDiagram::from_circuit(&c);
        rewrite::simplify(&mut d, &Strategy::auto())?;
        if !proportional(&d.evaluate_dense()?, &c.unitary()?, tol) {
            bad += 1;
        }
    }
    report(
        "rewrites",
        if bad == 0 {
            Ok("20 seeded random circuits simplify soundly".into())
        } else {
            Err(format!("{bad} of 20 seeded circuits broke under rewriting"))
        },
    );

    match code.min_distance(None) {
        Ok(d) => eprintln!("reported distance: {d}"),
        Err(Error::BudgetExceeded(msg)) => eprintln!("distance skipped: {msg}"),
        Err(err) => return Err(err),
    }

    if failures == 0 {
        Ok(())
    } else {
        Err(Error::InvalidEncoder(format!(
            "{failures} verification properties failed"
        )))
    }
}
