//! `cycgroups`: command line access to cyclic presentations, LOG groups,
//! star graphs, abelianization, coset enumeration and conjugacy.

mod commands;
mod source;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "cycgroups", version, about = "Cyclically presented groups and their HNN extensions")]
struct Cli {
    /// Output format. CSV is only available for `survey`.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Where a cyclic word comes from.
#[derive(Args, Debug, Clone, Default)]
pub struct FamilyArgs {
    /// hnk, sv, ln, catalog or word.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    /// `H_n(m, k)` parameter; normalized mod n.
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<i64>,
    /// `H_n(m, k)` or SV parameter; normalized mod n for hnk.
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<i64>,
    /// SV offsets `q_1..q_r`, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub q: Vec<i64>,
    /// SV exponents `eps_0..eps_r`, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub eps: Vec<i64>,
    /// `L_n` parameters `p_0..p_{r-1}`, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub p: Vec<i64>,
    /// Catalog entry: g1, h1, gl, sieradski.
    #[arg(long)]
    pub name: Option<String>,
    /// Catalog parameter (`l` for gl, `r` for sieradski).
    #[arg(long)]
    pub param: Option<usize>,
    /// Catalog form.
    #[arg(long, default_value = "a")]
    pub form: String,
    /// Defining word such as "x1 x2 x3^-1" (with --family word).
    #[arg(long, allow_hyphen_values = true)]
    pub word: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct TripleArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub m: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub k: i64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the defining word of a family member.
    Family(FamilyArgs),
    /// Expand the cyclic presentation.
    Pres(FamilyArgs),
    /// Two-generator presentation of the natural HNN extension.
    Hnn(FamilyArgs),
    /// Recover a cyclic word from a two-generator relator W(a, c).
    Derive {
        #[arg(long)]
        n: usize,
        /// Relator in a and c, e.g. "a c^-1 c a c^-2".
        #[arg(long, allow_hyphen_values = true)]
        relator: String,
    },
    /// Rewrite an SV word in y-generators and match the alternating form.
    Ytrans(FamilyArgs),
    /// Collapse a LOG read from a JSON file.
    LogCollapse {
        #[arg(long)]
        file: PathBuf,
    },
    /// Star graph of the cyclic presentation.
    Star(FamilyArgs),
    /// Girth of the star graph and short cycles.
    Girth {
        #[command(flatten)]
        family: FamilyArgs,
        /// List cycles up to this length.
        #[arg(long)]
        spectrum: Option<usize>,
    },
    /// C(3)-T(6) / C(3)-T(7) verdicts for `H_n(m, k)`.
    Classify(TripleArgs),
    /// Is the star graph that of a special C(3)-T(6) presentation.
    Special(FamilyArgs),
    /// Short cycles of the star graph of `H_n(3, 1)`.
    Taxonomy {
        #[arg(long)]
        n: usize,
    },
    /// Abelian invariants by Smith normal form and the circulant resultant.
    Abelian {
        #[command(flatten)]
        family: FamilyArgs,
        /// A presentation "< gens | rels >" instead of a family.
        #[arg(long)]
        pres: Option<String>,
    },
    /// Group order by coset enumeration.
    Order {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        pres: Option<String>,
        /// Coset cap; defaults to $CYCGROUPS_MAX_COSETS or 5000000.
        #[arg(long)]
        max_cosets: Option<usize>,
        /// Print the coset table.
        #[arg(long)]
        dump: bool,
    },
    /// Conjugacy of `u t^p` and `v t^q` in `G x| Z` for a finite `G`.
    Conj {
        #[command(flatten)]
        family: FamilyArgs,
        /// First element of G as a word in x1..xn.
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        /// Power of t in the first element.
        #[arg(long = "u-power", allow_hyphen_values = true, default_value_t = 0)]
        u_power: i64,
        /// Second element of G.
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        /// Power of t in the second element.
        #[arg(long = "v-power", allow_hyphen_values = true, default_value_t = 0)]
        v_power: i64,
        #[arg(long)]
        max_cosets: Option<usize>,
    },
    /// Classify every `H_n(m, k)` with `2 <= n <= nmax`.
    Survey {
        #[arg(long)]
        nmax: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the cross-checks for one family member.
    Verify(FamilyArgs),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli.command, cli.format) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
