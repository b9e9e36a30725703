use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ec_atlas::census;
use ec_atlas::curve::Curve;
use ec_atlas::field::Field;
use ec_atlas::frobenius::{self, ConductorEstimate, ConductorEstimator, ConductorPair};
use ec_atlas::survey::{self, AppendixConfig, FamilySelector, Format, APPENDIX_CONFIGS};
use ec_atlas::vladut::{self, ClassInstance};

#[derive(Parser)]
#[command(name = "ec-atlas", version, about = "Group structure of elliptic curves over small finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct CurveArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    r: u32,
    /// Coefficient A; use c0,c1,... (constant first) when r > 1.
    #[arg(long = "A", allow_hyphen_values = true)]
    a: String,
    /// Coefficient B, same format as A.
    #[arg(long = "B", allow_hyphen_values = true)]
    b: String,
}

#[derive(Subcommand)]
enum Command {
    /// Number of rational points.
    Count(CurveArgs),
    /// Order, trace, group structure and supersingularity.
    Structure(CurveArgs),
    /// Isogeny classes of a curve family.
    Survey {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long)]
        family: FamilySelector,
        #[arg(long, default_value = "markdown")]
        format: Format,
    },
    /// Admissible group structures for an isogeny class.
    Vladut {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: u32,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
    },
    /// Estimated endomorphism-ring conductor of an ordinary curve.
    Conductor {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, default_value_t = 6)]
        kmax: u32,
    },
    /// Conductor-based isomorphism test for two curves of equal order.
    Iso {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long, allow_hyphen_values = true)]
        t: i64,
        #[arg(long)]
        g1: u64,
        #[arg(long)]
        g2: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Recompute the reference tables and diff them against the fixtures.
    VerifyAppendix {
        /// A single configuration such as j0_r1_p7.
        #[arg(long)]
        only: Option<AppendixConfig>,
    },
}

/// Failure that maps to exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn build_curve(args: &CurveArgs) -> Result<Curve, UsageError> {
    let field = Field::new(args.p, args.r)?;
    let a = field.parse_element(&args.a)?;
    let b = field.parse_element(&args.b)?;
    Ok(Curve::new(&field, a, b)?)
}

fn run(cli: Cli) -> Result<ExitCode, UsageError> {
    match cli.command {
        Command::Count(args) => {
            let curve = build_curve(&args)?;
            println!("{}", census::count_points(&curve));
        }
        Command::Structure(args) => {
            let curve = build_curve(&args)?;
            let c = census::census(&curve);
            println!("order: {}", c.order);
            println!("trace: {}", c.trace);
            println!("structure: {} ({})", c.shape, c.shape.compact());
            println!("supersingular: {}", c.supersingular);
        }
        Command::Survey {
            p,
            r,
            family,
            format,
        } => {
            let field = Field::new(p, r)?;
            let table = survey::survey(&field, family)?;
            print!("{}", survey::render(&table, format));
        }
        Command::Vladut { q, p, r, m } => {
            let inst = ClassInstance::new(q, p, r, m)?;
            println!("order: {}", inst.order());
            for shape in vladut::admissible_shapes(&inst) {
                let case = vladut::accepting_case(&inst, &shape)?
                    .expect("admissible shapes have a case");
                println!("{} ({}) case {}", shape, shape.compact(), case);
            }
            println!("unique: {}", vladut::structure_unique(&inst));
        }
        Command::Conductor { curve, kmax } => {
            let curve = build_curve(&curve)?;
            let q = curve.field().q();
            let t = census::trace(&curve);
            let ctx = frobenius::order_context(t, q, curve.field().p())?;
            println!("trace: {t}");
            println!("g_pi: {}", ctx.g_pi);
            match ConductorEstimator::new(kmax, ec_atlas::field::DEFAULT_FIELD_BOUND)
                .estimate(&curve)?
            {
                ConductorEstimate::Resolved(g) => println!("conductor (estimated): {g}"),
                ConductorEstimate::Ambiguous(why) => println!("conductor: ambiguous ({why:?})"),
            }
        }
        Command::Iso {
            p,
            r,
            t,
            g1,
            g2,
            k,
        } => {
            let q = ec_atlas::arith::checked_pow(p, r)
                .ok_or_else(|| UsageError(format!("{p}^{r} overflows")))?;
            let ctx = frobenius::order_context(t, q, p)?;
            let pair = ConductorPair::new(g1, g2);
            let iso = frobenius::hm_isomorphic(&ctx, &pair, k)?;
            println!("isomorphic: {iso}");
        }
        Command::VerifyAppendix { only } => {
            let configs: Vec<AppendixConfig> = match only {
                Some(c) => vec![c],
                None => APPENDIX_CONFIGS.to_vec(),
            };
            let mut clean = true;
            for config in configs {
                let report = survey::verify_config(config)?;
                let flagged = report.hasse_violations().count();
                let status = if report.is_clean() { "ok" } else { "FAIL" };
                println!(
                    "{config}: {status} ({} matched, {flagged} flagged)",
                    report.matches()
                );
                for entry in &report.entries {
                    if !matches!(entry, survey::RowDiff::Match { .. }) {
                        println!("  {entry}");
                    }
                }
                clean &= report.is_clean();
            }
            if !clean {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
