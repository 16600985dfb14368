use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use moduli_coh::amalgam::{sl2z_cohomology, sl2z_cohomology_module, CoefficientRing};
use moduli_coh::modules::standard_coefficient_module;
use moduli_coh::tables::{moduli_half_table, moduli_table, sl2z_table_over, Format};
use moduli_coh::torsor::{build_canonical_torsor, h1_one_cocycles, torsor_nontriviality_witness, FiniteGroupData};
use moduli_coh::verify::{run_suite, Suite};
use moduli_coh::Error;

#[derive(Parser)]
#[command(name = "moduli-coh", version, about = "Exact cohomology of SL2(Z) and of the moduli of elliptic curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// One group H^p(SL2(Z), M).
    Sl2z {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: usize,
        /// Coefficient module: sym, sym_dual, f2_squared or trivial_Z.
        #[arg(long, default_value = "sym")]
        module: String,
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, value_enum, default_value_t = FormatArg::Md)]
        format: FormatArg,
    },
    /// A grid of groups.
    Table {
        which: TableKind,
        #[arg(long, default_value_t = 4)]
        max_k: usize,
        #[arg(long, default_value_t = 7)]
        max_p: usize,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, value_enum, default_value_t = FormatArg::Md)]
        format: FormatArg,
    },
    /// Run a verification suite; exits 1 if any check fails.
    Verify {
        #[arg(default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The 4-element torsor under (Z/2)^2.
    Torsor {
        #[command(subcommand)]
        action: TorsorAction,
    },
    /// Dimension of H^1 of a finite matrix group acting on (Z/2)^2.
    Cocycles {
        #[arg(long, value_enum, default_value_t = GroupArg::Gl2Z4)]
        group: GroupArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Md)]
        format: FormatArg,
    },
}

#[derive(Subcommand)]
enum TorsorAction {
    Demo {
        #[arg(long, value_enum, default_value_t = FormatArg::Md)]
        format: FormatArg,
    },
}

#[derive(Args)]
struct RingArgs {
    /// Reduce coefficients mod this prime.
    #[arg(long = "mod", conflicts_with = "invert")]
    modulus: Option<u64>,
    /// Invert this prime (repeatable).
    #[arg(long)]
    invert: Vec<u64>,
}

impl RingArgs {
    fn ring(&self) -> CoefficientRing {
        match (self.modulus, self.invert.is_empty()) {
            (Some(q), _) => CoefficientRing::Mod(q),
            (None, true) => CoefficientRing::Integers,
            (None, false) => CoefficientRing::Localized(self.invert.clone()),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Md,
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Md => Format::Markdown,
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    Sl2z,
    Moduli,
    ModuliHalf,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    Gl2Z4,
    Sl2Z4,
}

enum Failure {
    Usage(String),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Sl2z { k, p, module, ring, format } => {
            let ring = ring.ring();
            let group = match (module.as_str(), &ring) {
                ("sym", _) => sl2z_cohomology(*k, *p, &ring)?,
                (name, CoefficientRing::Integers) => {
                    let name = if name == "sym_dual" { "sym_dual_k" } else { name };
                    let m = standard_coefficient_module(name, Some(*k))?;
                    sl2z_cohomology_module(&m, *p)?
                }
                _ => return Err(Failure::Usage("--mod and --invert apply to --module sym only".into())),
            };
            let inverted = match &ring {
                CoefficientRing::Localized(ps) => ps.clone(),
                _ => Vec::new(),
            };
            let rendered = group.render_localized(&inverted);
            Ok(match Format::from(*format) {
                Format::Markdown => format!("{rendered}\n"),
                Format::Csv => format!("k,p,ring,group\n{k},{p},{ring},{rendered}\n"),
                Format::Json => {
                    let doc = json!({ "k": k, "p": p, "module": module, "ring": ring.to_string(), "group": group, "rendered": rendered });
                    format!("{doc:#}\n")
                }
            })
        }
        Command::Table { which, max_k, max_p, max_n, ring, format } => {
            let table = match which {
                TableKind::Sl2z => sl2z_table_over(*max_k, *max_p, &ring.ring())?,
                TableKind::Moduli => moduli_table(*max_n)?,
                TableKind::ModuliHalf => moduli_half_table(*max_n)?,
            };
            Ok(table.render((*format).into()))
        }
        Command::Verify { suite, seed } => {
            let suite: Suite = suite.parse()?;
            let report = run_suite(suite, *seed);
            let text = report.render();
            if report.passed() {
                Ok(text)
            } else {
                Err(Failure::Verify(text))
            }
        }
        Command::Torsor { action: TorsorAction::Demo { format } } => Ok(torsor_demo((*format).into())),
        Command::Cocycles { group, format } => {
            let (name, data) = match group {
                GroupArg::Gl2Z4 => ("GL2(Z/4)", FiniteGroupData::gl2_z4_on_f2_squared()),
                GroupArg::Sl2Z4 => ("SL2(Z/4)", FiniteGroupData::sl2_z4_on_f2_squared()),
            };
            let dim = h1_one_cocycles(&data)?;
            Ok(match Format::from(*format) {
                Format::Json => format!("{:#}\n", json!({ "group": name, "order": data.order(), "h1_dim": dim })),
                Format::Csv => format!("group,order,h1_dim\n{name},{},{dim}\n", data.order()),
                Format::Markdown => format!("dim H^1({name}, (Z/2)^2) = {dim}  (|G| = {})\n", data.order()),
            })
        }
    }
}

fn torsor_demo(format: Format) -> String {
    let t = build_canonical_torsor();
    let w = torsor_nontriviality_witness();
    let show = |s: &moduli_coh::torsor::Section| {
        let items: Vec<String> = s.iter().map(|[a, b]| format!("±({a},{b})")).collect();
        format!("{{{}}}", items.join(", "))
    };
    let translations: Vec<(String, Vec<usize>)> = t
        .m2
        .iter()
        .map(|&m| (format!("({},{})", m[0], m[1]), t.translation(m).expect("2-torsion").0))
        .collect();
    if format == Format::Json {
        let doc = json!({
            "sections": t.t.iter().map(show).collect::<Vec<_>>(),
            "raw_labelings": t.raw_labelings(),
            "translations": translations,
            "generator": w.generator.to_string(),
            "permutation": w.permutation.0,
            "cycle_type": w.permutation.cycle_type(),
            "nontrivial": w.nontrivial,
        });
        return format!("{doc:#}\n");
    }
    let mut out = format!("T has {} elements ({} raw labelings up to complement)\n", t.t.len(), t.raw_labelings());
    for (i, s) in t.t.iter().enumerate() {
        out += &format!("  T[{i}] = {}\n", show(s));
    }
    out += "translation by M[2]:\n";
    for (m, perm) in &translations {
        out += &format!("  {m} -> {perm:?}\n");
    }
    out += &format!(
        "{} acts as {:?} with cycle type {:?}; fixed points: {}\n",
        w.generator,
        w.permutation.0,
        w.permutation.cycle_type(),
        if w.nontrivial { "none" } else { "some" }
    );
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code) = match run(&cli) {
        Ok(text) => (text, 0),
        Err(Failure::Verify(text)) => (text, 1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(code)
}
