//! `unitsum`: evaluate symmetric sums over unit subgroups of `Z/mZ`.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use unitsum::{ExponentMultiset, SubgroupSpec};

const POLY_HELP: &str = "\
Polynomial grammar (whitespace ignored):
  polynomial := term (('+' | '-') term)*
  term       := ['-'] [integer '*'] factor ('*' factor)*
  factor     := 'x' index ['^' ['-'] integer]
Variables run from x1 to x<arity>. Example: \"x1^2*x2^5 + 3*x1*x2\".";

#[derive(Parser, Debug)]
#[command(
    name = "unitsum",
    version,
    about = "Symmetric sums of monomials over distinct elements of unit subgroups of Z/mZ"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GroupArgs {
    /// Ring modulus m (>= 2).
    #[arg(long)]
    modulus: u64,
    /// Subgroup: units, nth:<n> or gen:<g1,g2,...>.
    #[arg(long, default_value = "units")]
    subgroup: SubgroupSpec,
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    /// Print a JSON object instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate the sum for an exponent list or a polynomial.
    #[command(after_help = POLY_HELP)]
    Eval {
        #[command(flatten)]
        group: GroupArgs,
        /// Comma-separated exponents a1,...,ak.
        #[arg(
            long,
            allow_hyphen_values = true,
            conflicts_with = "poly",
            required_unless_present = "poly"
        )]
        exponents: Option<ExponentMultiset>,
        /// Polynomial in x1..xk; needs --arity.
        #[arg(long, allow_hyphen_values = true, requires = "arity")]
        poly: Option<String>,
        /// Number of variables k for --poly.
        #[arg(long)]
        arity: Option<usize>,
        /// Use the partition formula even when the niceness check fails.
        #[arg(long)]
        force_closed_form: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check the minimax niceness condition.
    Nice {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, allow_hyphen_values = true)]
        exponents: ExponentMultiset,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// List the partitions of exponent positions with block sums divisible by lambda.
    Partitions {
        #[arg(long, allow_hyphen_values = true)]
        exponents: ExponentMultiset,
        /// Group exponent; taken from the subgroup when --modulus is given.
        #[arg(long, required_unless_present = "modulus")]
        lambda: Option<u64>,
        /// Group order n for the block weights; defaults to lambda, or the subgroup order.
        #[arg(long)]
        order: Option<u64>,
        #[arg(long)]
        modulus: Option<u64>,
        #[arg(long, default_value = "units")]
        subgroup: SubgroupSpec,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run the brute-force oracle or one of its identities.
    Oracle {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, allow_hyphen_values = true)]
        exponents: ExponentMultiset,
        #[arg(long, value_enum, default_value_t = Check::P)]
        check: Check,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Recompute the bundled worked congruences.
    Demo {
        /// Run only the named demo.
        #[arg(long)]
        name: Option<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Time the oracle against the closed form for k = 1..kmax.
    Bench {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 3)]
        kmax: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Check {
    /// p(A) by enumeration.
    P,
    /// The truncated sum with every coordinate different from 1.
    Psharp,
    /// Inclusion-exclusion between p# and the p(B).
    Eq4,
    /// p(A) = n * p#(A without a) for each position a.
    Npsharp,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, json) = match cli.command {
        Command::Eval {
            group,
            exponents,
            poly,
            arity,
            force_closed_form,
            out,
        } => (
            commands::eval(&group, exponents, poly.zip(arity), force_closed_form),
            out.json,
        ),
        Command::Nice {
            group,
            exponents,
            out,
        } => (commands::nice(&group, &exponents), out.json),
        Command::Partitions {
            exponents,
            lambda,
            order,
            modulus,
            subgroup,
            out,
        } => (
            commands::partitions(&exponents, lambda, order, modulus, &subgroup),
            out.json,
        ),
        Command::Oracle {
            group,
            exponents,
            check,
            out,
        } => (commands::oracle(&group, &exponents, check), out.json),
        Command::Demo { name, out } => (commands::demo(name.as_deref()), out.json),
        Command::Bench {
            group,
            kmax,
            seed,
            out,
        } => (commands::bench(&group, kmax, seed), out.json),
    };
    match result {
        Ok(run) => {
            run.result.print(json);
            match run.mismatch {
                Some(msg) => {
                    eprintln!("error: {msg}");
                    ExitCode::from(1)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
