//! Command-line front end for the Hecke algebra library.

use clap::{Parser, Subcommand};
use hecke::cli::{self, Command, CommandRequest};

#[derive(Parser)]
#[command(
    name = "hecke",
    about = "Exact computations in extended affine Hecke algebras with unequal parameters",
    after_help = "DATUM is a root-datum file (see data/*.datum for the format) or one of \
                  the bundled names gl2, gl3, sp2, sp4, g2."
)]
struct Args {
    /// Root-datum file path or bundled datum name.
    #[arg(long, global = true, default_value = "gl2")]
    datum: String,

    /// Specialize all parameters into one variable, e.g. `v=2,v0=-1`.
    #[arg(long, global = true)]
    specialize: Option<String>,

    /// Machine-readable output (stable line format for golden tests).
    #[arg(long, global = true)]
    machine: bool,

    /// Exit nonzero when a theorem-level check fails.
    #[arg(long, global = true)]
    strict: bool,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate the datum: classification, parameter classes, special roots.
    Validate,
    /// Length of a group element, e.g. `t[1,0]*s1`.
    Length { element: String },
    /// Reduced word and length-zero residue of a group element.
    Word { element: String },
    /// Bruhat comparison of two group elements.
    Leq { lhs: String, rhs: String },
    /// Weyl character of a dominant coweight, as monomials.
    Schur {
        #[arg(long)]
        lambda: String,
    },
    /// Hall-Littlewood polynomial of a dominant coweight, in the character basis.
    Hl {
        #[arg(long)]
        lambda: String,
    },
    /// Kazhdan-Lusztig element of the double-coset top, with certificate.
    Kl {
        #[arg(long)]
        lambda: String,
    },
    /// Tensor-product multiplicities of two dominant coweights.
    Tensor {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
    },
    /// One weight multiplicity from the Kazhdan-Lusztig coefficients.
    Wtmult {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
    },
    /// Run the oracle cross-check suite and print a pass/fail matrix.
    Verify {
        #[arg(long, default_value_t = 6)]
        max_length: u64,
        /// Disable the parallel map over the coweight grids.
        #[arg(long)]
        sequential: bool,
    },
}

fn main() {
    let args = Args::parse();
    let command = match args.command {
        Cmd::Validate => Command::Validate,
        Cmd::Length { element } => Command::Length { element },
        Cmd::Word { element } => Command::Word { element },
        Cmd::Leq { lhs, rhs } => Command::Leq { lhs, rhs },
        Cmd::Schur { lambda } => Command::Schur { lambda },
        Cmd::Hl { lambda } => Command::Hl { lambda },
        Cmd::Kl { lambda } => Command::Kl { lambda },
        Cmd::Tensor { lambda, mu } => Command::Tensor { lambda, mu },
        Cmd::Wtmult { lambda, mu } => Command::Wtmult { lambda, mu },
        Cmd::Verify { max_length, sequential } => Command::Verify { max_length, sequential },
    };
    let request = CommandRequest {
        command,
        datum: args.datum,
        specialize: args.specialize,
        machine: args.machine,
        strict: args.strict,
    };
    match cli::run(&request) {
        Ok(report) => {
            println!("{}", report.text);
            let failed = report.has_checks && !report.checks_ok;
            let verify_like = matches!(request.command, Command::Verify { .. });
            if failed && (request.strict || verify_like) {
                std::process::exit(1);
            }
        }
        Err(e) => {
            eprintln!("error: {}", e);
            std::process::exit(2);
        }
    }
}
