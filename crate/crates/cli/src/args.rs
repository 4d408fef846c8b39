use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "ggt", version, about = "Build, check and recognize G-graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Summary,
    Json,
    Dot,
}

#[derive(Debug, Args)]
pub struct OutputArg {
    /// Output format
    #[arg(short = 'o', long = "output", value_enum, default_value = "summary")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    /// Group spec: Z<n>, Z<m>xZ<n>[x...], S<n> or perm:<degree>:<cycles>[,<cycles>...]
    #[arg(short = 'g', long = "group")]
    pub group: String,
    /// Generator multiset, comma separated
    #[arg(short = 's', long = "gens")]
    pub gens: String,
    /// Build Ψ(G,S) (with loops) instead of Φ(G,S)
    #[arg(long)]
    pub loops: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Construct and inspect Φ(G,S) / Ψ(G,S)
    #[command(subcommand)]
    Ggraph(GgraphCmd),
    /// Connected components against the subgroup ⟨S⟩
    Components {
        #[command(flatten)]
        g: GroupArgs,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Complete bipartite multigraph K^l_{m,n} as a G-graph
    Kmn {
        m: usize,
        n: usize,
        l: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Incidence graphs
    #[command(subcommand)]
    Incidence(IncidenceCmd),
    /// Is the incidence graph of Φ(G,{s,t}) a G-graph?
    BipartiteTest {
        #[arg(short = 'g', long = "group")]
        group: String,
        #[arg(short = 's')]
        s: String,
        #[arg(short = 't')]
        t: String,
        /// Only search the automorphism required by the necessary condition
        #[arg(long, conflicts_with = "sufficient")]
        necessary: bool,
        /// Only try the homomorphism of the sufficient condition
        #[arg(long)]
        sufficient: bool,
        /// Node budget of the necessary search
        #[arg(long)]
        budget: Option<u64>,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Check a graph against an (H, C) witness
    Recognize {
        /// Graph JSON file
        #[arg(long)]
        graph: PathBuf,
        /// Witness JSON file
        #[arg(long)]
        witness: PathBuf,
        /// Characterization with loops (Ψ graphs)
        #[arg(long)]
        loops: bool,
        /// Rebuild (H, S) and an isomorphism onto the input
        #[arg(long)]
        reconstruct: bool,
        #[command(flatten)]
        out: OutputArg,
    },
    /// The incidence graph of K_n
    #[command(subcommand)]
    Ikn(IknCmd),
}

#[derive(Debug, Subcommand)]
pub enum GgraphCmd {
    /// Build the graph
    Build {
        #[command(flatten)]
        g: GroupArgs,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Check the structural properties every G-graph has
    Verify {
        #[command(flatten)]
        g: GroupArgs,
        #[command(flatten)]
        out: OutputArg,
    },
    /// The shift automorphisms as a recognition witness
    Shifts {
        #[command(flatten)]
        g: GroupArgs,
        #[command(flatten)]
        out: OutputArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum IncidenceCmd {
    /// Incidence graph of a graph file or of Φ(G,S)
    Build {
        /// Graph JSON file
        #[arg(long, conflicts_with_all = ["group", "gens"])]
        graph: Option<PathBuf>,
        #[arg(short = 'g', long = "group", requires = "gens")]
        group: Option<String>,
        #[arg(short = 's', long = "gens", requires = "group")]
        gens: Option<String>,
        #[arg(long)]
        loops: bool,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Γ' with IΓ' ≅ Φ(G,{s,t}), for simple Φ with o(t) = 2
    Preimage {
        #[arg(short = 'g', long = "group")]
        group: String,
        #[arg(short = 's', long = "gens")]
        gens: String,
        #[command(flatten)]
        out: OutputArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum IknCmd {
    /// Check a certificate τ
    Verify {
        n: usize,
        /// τ in cycle notation, e.g. "(1)(2,3)(4,5)"
        #[arg(long)]
        tau: String,
        /// Also build Φ(⟨σ,τ⟩,{σ,τ}) and check it is I(K_n)
        #[arg(long)]
        build: bool,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Search certificates
    Search {
        n: usize,
        /// Stop at the first certificate (default)
        #[arg(long, conflicts_with_all = ["all", "canonical"])]
        first: bool,
        /// Every certificate
        #[arg(long, conflicts_with = "canonical")]
        all: bool,
        /// One certificate per conjugacy class under the units mod n−1
        #[arg(long)]
        canonical: bool,
        /// Node budget
        #[arg(long)]
        budget: Option<u64>,
        /// Search even when an arithmetic obstruction applies
        #[arg(long)]
        exhaustive: bool,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Decide every n from 2 to nmax and compare with the known list
    Table {
        nmax: usize,
        #[arg(long)]
        budget: Option<u64>,
        #[command(flatten)]
        out: OutputArg,
    },
}
