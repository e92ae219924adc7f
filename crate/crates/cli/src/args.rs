use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "lcslab",
    version,
    about = "Exact checks for LCS, contact and cohomology computations on Lie algebras"
)]
pub struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized searches (default: $LCSLAB_SEED, else 0).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
#[command(group(ArgGroup::new("source").required(true).args(["algebra", "file", "catalog"])))]
pub struct AlgebraArgs {
    /// Structure equations in Salamon notation, e.g. "(0,0,-12,0)".
    #[arg(long, allow_hyphen_values = true)]
    pub algebra: Option<String>,
    /// JSON algebra file.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Catalog entry name.
    #[arg(long)]
    pub catalog: Option<String>,
    /// Catalog parameters, e.g. --param b=1 or --param a=1 b=2.
    #[arg(long = "param", value_name = "NAME=VALUE", num_args = 1.., requires = "catalog")]
    pub params: Vec<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Family {
    G1,
    G2,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse an algebra and check the Jacobi identity.
    Validate(AlgebraArgs),
    /// Structural profile and invariant fingerprint.
    Profile(AlgebraArgs),
    /// Cohomology of d_theta (theta defaults to 0).
    Cohomology {
        #[command(flatten)]
        input: AlgebraArgs,
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<String>,
    },
    /// Verify d omega = theta ^ omega with omega nondegenerate.
    LcsVerify {
        #[command(flatten)]
        input: AlgebraArgs,
        #[arg(long, allow_hyphen_values = true)]
        omega: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<String>,
    },
    /// Search for an LCS form with the given Lee form.
    LcsSearch {
        #[command(flatten)]
        input: AlgebraArgs,
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        /// Number of random samples.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// First or second kind of a verified LCS pair.
    Kind {
        #[command(flatten)]
        input: AlgebraArgs,
        #[arg(long, allow_hyphen_values = true)]
        omega: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<String>,
    },
    /// Verify a contact form and compute its Reeb vector.
    ContactVerify {
        #[command(flatten)]
        input: AlgebraArgs,
        #[arg(long, allow_hyphen_values = true)]
        eta: Option<String>,
    },
    /// Search for a contact form.
    ContactSearch {
        #[command(flatten)]
        input: AlgebraArgs,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Derivation algebra, or a membership test for one matrix.
    Derivations {
        #[command(flatten)]
        input: AlgebraArgs,
        /// Matrix like "[[0,0],[1,0]]"; columns are images of basis vectors.
        #[arg(long, allow_hyphen_values = true)]
        matrix: Option<String>,
    },
    /// LCS algebra R x_D h from a contact form eta and a derivation D.
    ExtendContact {
        #[command(flatten)]
        input: AlgebraArgs,
        #[arg(long, allow_hyphen_values = true)]
        eta: String,
        #[arg(long, allow_hyphen_values = true)]
        derivation: String,
    },
    /// Double extension of a symplectic algebra (s, beta) by E.
    DoubleExtend {
        #[command(flatten)]
        input: AlgebraArgs,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long, allow_hyphen_values = true)]
        derivation: String,
    },
    /// Lattice checks for the g1 and g2 families.
    LatticeCheck {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        k: u32,
        /// pi/2, pi or 2pi (g1 only).
        #[arg(long, allow_hyphen_values = true)]
        t0: Option<String>,
    },
    /// Browse the built-in catalog.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Subcommand, Debug)]
pub enum CatalogCommand {
    List,
    Show {
        name: String,
        #[arg(long = "param", value_name = "NAME=VALUE", num_args = 1..)]
        params: Vec<String>,
    },
}
