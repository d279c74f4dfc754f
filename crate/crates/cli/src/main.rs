use std::io::{Read, Write};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use subregular::freealg::Alphabet;
use subregular::gsengine::{GSPair, Scope};
use subregular::hodges::{self, HodgesData};
use subregular::ktheory::{self, Convention, HeckeWord, KElt};
use subregular::modlie::{self, SubregChi, WeightData};
use subregular::nocycle::{self, NoCycleAlg, Word};
use subregular::{acceptance, par};

#[derive(Parser)]
#[command(
    name = "subregular",
    version,
    about = "Exact computations for subregular representations"
)]
#[command(after_help = "Set SUBREGULAR_THREADS to bound the worker pool.")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Rewriting systems and Groebner-Shirshov completion
    #[command(subcommand)]
    Gs(GsCmd),
    /// Hodges' algebras and their baby Vermas
    #[command(subcommand)]
    Hodges(HodgesCmd),
    /// The no-cycle algebra, string and band modules
    #[command(subcommand)]
    Nocycle(NocycleCmd),
    /// Baby Verma modules for sl_n at a subregular nilpotent
    #[command(subcommand)]
    Modlie(ModlieCmd),
    /// Hecke action, duality and pairing on the K-group
    #[command(subcommand)]
    Ktheory(KtheoryCmd),
    /// Run the acceptance criteria
    Acceptance(AcceptanceArgs),
}

#[derive(Subcommand)]
enum GsCmd {
    /// Complete a rule set and count its standard monomials
    Complete {
        /// Letters with weights, lowest precedence first, e.g. `a:1,b:3,h:1;Y1`
        #[arg(long)]
        alphabet: String,
        /// File with one relation per line, or `-` for standard input
        #[arg(long)]
        rules: String,
        /// Prime modulus
        #[arg(long, default_value_t = 5)]
        p: u64,
        #[arg(long, default_value_t = 64)]
        weight_cap: u32,
        /// Stop counting standard monomials past this many
        #[arg(long, default_value_t = 100_000)]
        basis_cap: usize,
    },
}

#[derive(Args)]
struct HodgesParams {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: u64,
    /// r_1..r_{n-1}, comma separated
    #[arg(long, value_delimiter = ',')]
    r: Vec<u64>,
}

impl HodgesParams {
    fn data(&self) -> Result<HodgesData> {
        Ok(HodgesData::new(self.n, self.p, &self.r)?)
    }
}

#[derive(Subcommand)]
enum HodgesCmd {
    /// Dimensions, Loewy layers of the Vermas, projectives and the Ext quiver
    Report(HodgesParams),
    /// Compare completion of the restricted algebra with the closed-form rules
    Shirshov(HodgesParams),
}

#[derive(Subcommand)]
enum NocycleCmd {
    /// List the string words W_t up to rotation and inversion
    Strings {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
    },
    /// Build a string module, or a band module when --lambda is given
    Module {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 5)]
        q: u64,
        /// Word such as `a0 b1*`
        #[arg(long)]
        word: String,
        #[arg(long)]
        lambda: Option<u64>,
    },
    /// Enumerate all small modules and match indecomposables to the list
    Sweep {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        q: u64,
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
    },
    /// Check the map from the skew coinvariant algebra
    Upsilon {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Subcommand)]
enum ModlieCmd {
    /// Structure of the baby Verma at the flag F_{k,alpha}
    Verma {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        #[arg(long, value_delimiter = ',')]
        r: Vec<u64>,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        alpha: u64,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        report: ReportFormat,
    },
    /// Values of chi on the standard basis
    Chi {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Lusztig,
    Categorified,
}

#[derive(Subcommand)]
enum KtheoryCmd {
    /// Check the Hecke relations and the two theta actions
    Verify {
        #[arg(long)]
        n: usize,
    },
    /// Evaluate the pairing; elements are `["c1", ..., "cn"]` or `c1,...,cn`
    Pair {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Apply a Hecke word, e.g. `s T1 T0^-1`, rightmost first
    Apply {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, value_enum, default_value_t = ConventionArg::Categorified)]
        convention: ConventionArg,
    },
    /// Bigraded Ext groups between the simples
    Ext {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Args)]
struct AcceptanceArgs {
    /// Skip informational extras; all criteria still run
    #[arg(long)]
    quick: bool,
    /// Run a single criterion
    #[arg(long)]
    only: Option<usize>,
}

fn emit(v: &impl serde::Serialize) -> Result<()> {
    say(&serde_json::to_string_pretty(v)?)
}

fn say(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{text}") {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn read_source(path: &str) -> Result<String> {
    let mut s = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut s)?;
    } else {
        s = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    }
    Ok(s)
}

fn gs(cmd: GsCmd) -> Result<()> {
    let GsCmd::Complete {
        alphabet,
        rules,
        p,
        weight_cap,
        basis_cap,
    } = cmd;
    let al = Alphabet::parse(&alphabet)?;
    let text = read_source(&rules)?;
    let rels = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| al.parse_elt(l, p))
        .collect::<subregular::Result<Vec<_>>>()?;
    let done = GSPair::from_relations(al, p, &rels)?.complete(weight_cap)?;
    let basis = match done.standard_monomials(Scope::Ring, basis_cap) {
        Ok(b) => json!(b.len()),
        Err(e) => json!(e.to_string()),
    };
    emit(&json!({
        "schema": "subregular.gs.complete/1",
        "p": p,
        "rules": done.to_strings(),
        "basis_size": basis,
    }))
}

fn hodges_cmd(cmd: HodgesCmd) -> Result<()> {
    match cmd {
        HodgesCmd::Report(a) => emit(&a.data()?.structure_report()?),
        HodgesCmd::Shirshov(a) => {
            let rep = hodges::verify_shirshov(&a.data()?)?;
            let mut v = serde_json::to_value(&rep)?;
            v["schema"] = json!("subregular.hodges.shirshov/1");
            emit(&v)
        }
    }
}

fn nocycle_cmd(cmd: NocycleCmd) -> Result<()> {
    match cmd {
        NocycleCmd::Strings { k, t } => {
            let words: Vec<String> = nocycle::enumerate_strings(k, t)?
                .iter()
                .map(Word::to_string)
                .collect();
            emit(
                &json!({ "schema": "subregular.nocycle.strings/1", "k": k, "t": t, "count": words.len(), "words": words }),
            )
        }
        NocycleCmd::Module { k, q, word, lambda } => {
            let alg = NoCycleAlg::new(k, q)?;
            let w = Word::parse(&word)?;
            let m = match lambda {
                Some(l) => alg.band_module(&w, l)?,
                None => alg.string_module(&w)?,
            };
            emit(
                &json!({ "schema": "subregular.nocycle.module/1", "word": w.to_string(), "lambda": lambda, "module": m }),
            )
        }
        NocycleCmd::Sweep { k, q, max_dim } => {
            let rep = nocycle::classification_sweep(&NoCycleAlg::new(k, q)?, max_dim)?;
            let mut v = serde_json::to_value(&rep)?;
            v["schema"] = json!("subregular.nocycle.sweep/1");
            emit(&v)
        }
        NocycleCmd::Upsilon { n, q } => emit(&nocycle::coinvariant_upsilon(n, q)?),
    }
}

fn modlie_cmd(cmd: ModlieCmd) -> Result<()> {
    match cmd {
        ModlieCmd::Verma {
            n,
            p,
            r,
            k,
            alpha,
            report,
        } => {
            let chi = SubregChi::new(n, p)?;
            let w = WeightData::new(p, &r)?;
            if w.n() != n {
                bail!("--r needs {} entries for n = {n}", n - 1);
            }
            let bor = modlie::flag_borel(&chi, k, alpha)?;
            let rep = modlie::verma_report(&chi, &w, &bor)?;
            match report {
                ReportFormat::Json => emit(&rep),
                ReportFormat::Text => {
                    use std::fmt::Write as _;
                    let mut t = String::new();
                    writeln!(
                        t,
                        "baby Verma for sl_{n} over F_{p}, r = {r:?}, flag (k={k}, alpha={alpha})"
                    )?;
                    writeln!(t, "dimension {}", rep.dim)?;
                    writeln!(t, "simples (label, dim) {:?}", rep.simples)?;
                    writeln!(t, "composition multiplicities {:?}", rep.multiplicities)?;
                    write!(t, "endomorphism dimension {}", rep.end_dim)?;
                    if let Some(layers) = &rep.layers {
                        for (i, l) in layers.iter().enumerate() {
                            write!(
                                t,
                                "\nlayer {i}: L_{}[{}] of dimension {}",
                                l.label, l.shift, l.dim
                            )?;
                        }
                    }
                    say(&t)
                }
            }
        }
        ModlieCmd::Chi { n, p } => {
            let chi = SubregChi::new(n, p)?;
            emit(
                &json!({ "schema": "subregular.modlie.chi/1", "n": n, "p": p, "values": chi.table() }),
            )
        }
    }
}

fn ktheory_cmd(cmd: KtheoryCmd) -> Result<()> {
    match cmd {
        KtheoryCmd::Verify { n } => {
            let rep = ktheory::verify_algebra_relations(n)?;
            emit(&rep)
        }
        KtheoryCmd::Pair { x, y } => {
            let x = KElt::parse(&x)?;
            let y = KElt::parse(&y)?;
            if x.n() != y.n() {
                bail!("elements have ranks {} and {}", x.n(), y.n());
            }
            emit(&json!({
                "schema": "subregular.ktheory.pair/1",
                "n": x.n(),
                "x": x,
                "y": y,
                "pairing": ktheory::pairing(&x, &y).to_string(),
                "pairing_from_ext": ktheory::pairing_from_ext(&x, &y).to_string(),
            }))
        }
        KtheoryCmd::Apply {
            word,
            x,
            convention,
        } => {
            let x = KElt::parse(&x)?;
            let conv = match convention {
                ConventionArg::Lusztig => Convention::Lusztig,
                ConventionArg::Categorified => Convention::Categorified,
            };
            let w = HeckeWord::parse(x.n(), conv, &word)?;
            let y = ktheory::hecke_apply(&w, &x)?;
            emit(
                &json!({ "schema": "subregular.ktheory.apply/1", "word": w.to_string(), "convention": conv, "x": x, "result": y }),
            )
        }
        KtheoryCmd::Ext { n } => {
            if n < 2 {
                bail!("need n >= 2");
            }
            let t = ktheory::ext_table(n);
            let entries: Vec<Value> = t
                .entries
                .iter()
                .map(|e| json!({ "i": e.i, "j": e.j, "m": e.m, "graded_dim": t.graded_dim(e.i, e.j, e.m).to_string() }))
                .collect();
            emit(&json!({ "schema": "subregular.ktheory.ext/1", "n": n, "entries": entries }))
        }
    }
}

fn acceptance_cmd(a: AcceptanceArgs) -> Result<bool> {
    let report = match a.only {
        Some(id) => {
            if !(1..=10).contains(&id) {
                bail!("criteria are numbered 1 to 10");
            }
            let r = acceptance::run(id, a.quick);
            let passed = usize::from(r.passed);
            acceptance::AcceptanceReport {
                schema: "subregular.acceptance/1",
                quick: a.quick,
                passed,
                failed: 1 - passed,
                results: vec![r],
            }
        }
        None => acceptance::run_all(a.quick),
    };
    for r in &report.results {
        eprintln!("{}", r.line());
    }
    emit(&report)?;
    Ok(report.failed == 0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let _ = par::pool();
    let outcome = match cli.cmd {
        Cmd::Gs(c) => gs(c).map(|_| true),
        Cmd::Hodges(c) => hodges_cmd(c).map(|_| true),
        Cmd::Nocycle(c) => nocycle_cmd(c).map(|_| true),
        Cmd::Modlie(c) => modlie_cmd(c).map(|_| true),
        Cmd::Ktheory(c) => ktheory_cmd(c).map(|_| true),
        Cmd::Acceptance(a) => acceptance_cmd(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
