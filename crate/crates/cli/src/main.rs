mod commands;
mod error;
mod files;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::CliError;

#[derive(Parser)]
#[command(
    name = "permcrypt",
    version,
    about = "Public-key encryption over the symmetric group, and its attacks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a key pair
    Keygen(KeygenArgs),
    /// Encrypt a file; the scheme follows the public key
    Encrypt(EncryptArgs),
    /// Decrypt a ciphertext file
    Decrypt(DecryptArgs),
    /// Attacks that need no secret key
    #[command(subcommand)]
    Attack(AttackCommand),
    /// Run both schemes end to end at degree 64
    Demo {
        #[arg(long, value_parser = parse_seed)]
        seed: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Scheme {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
}

#[derive(Args)]
struct KeygenArgs {
    #[arg(long)]
    scheme: Scheme,
    #[arg(long, default_value_t = permcrypt::DEFAULT_DEGREE)]
    degree: usize,
    /// Public key output
    #[arg(long)]
    out: PathBuf,
    /// Secret key output
    #[arg(long)]
    secret: PathBuf,
    /// Hex seed for reproducible keys; system entropy when absent
    #[arg(long, value_parser = parse_seed)]
    seed: Option<u64>,
    /// Cycle lengths of X for scheme 1
    #[arg(long, value_delimiter = ',')]
    profile: Option<Vec<usize>>,
    /// Write hex text instead of raw bytes
    #[arg(long)]
    armor: bool,
}

#[derive(Args)]
struct EncryptArgs {
    #[arg(long = "pub")]
    public: PathBuf,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_parser = parse_seed)]
    seed: Option<u64>,
    #[arg(long)]
    armor: bool,
}

#[derive(Args)]
struct DecryptArgs {
    #[arg(long)]
    secret: PathBuf,
    #[arg(long = "pub")]
    public: PathBuf,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum AttackCommand {
    /// Recover scheme 1 plaintexts from the public key and ciphertext
    Scheme1 {
        #[arg(long = "pub")]
        public: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Exhaustive conjugacy search against a scheme 2 public key
    Conjugacy {
        #[arg(long = "pub")]
        public: PathBuf,
        #[arg(long, default_value_t = permcrypt::cryptanalysis::MAX_BRUTE_FORCE_DEGREE)]
        max_degree: usize,
        /// Save the recovered conjugator as a scheme 2 secret key
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report the cell multiset each scheme 2 record reveals
    Leakage {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let digits = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")).unwrap_or(s);
    if digits.is_empty() || digits.len() > 16 {
        return Err("seed must be 1 to 16 hex digits".into());
    }
    u64::from_str_radix(digits, 16).map_err(|e| format!("bad hex seed: {e}"))
}

fn run() -> Result<(), CliError> {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e)
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) =>
        {
            e.print().ok();
            return Ok(());
        }
        Err(e) => return Err(CliError::Usage(e.render().to_string())),
    };
    match cli.command {
        Command::Keygen(a) => commands::keygen(
            matches!(a.scheme, Scheme::One),
            a.degree,
            &a.out,
            &a.secret,
            a.seed,
            a.profile.as_deref(),
            a.armor,
        ),
        Command::Encrypt(a) => commands::encrypt(&a.public, &a.input, &a.out, a.seed, a.armor),
        Command::Decrypt(a) => commands::decrypt(&a.secret, &a.public, &a.input, &a.out),
        Command::Attack(AttackCommand::Scheme1 { public, input }) => commands::attack_scheme1(&public, &input),
        Command::Attack(AttackCommand::Conjugacy {
            public,
            max_degree,
            out,
        }) => commands::attack_conjugacy(&public, max_degree, out.as_deref()),
        Command::Attack(AttackCommand::Leakage { input }) => commands::attack_leakage(&input),
        Command::Demo { seed } => commands::demo(seed),
    }
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {}", e.to_string().trim_end());
        std::process::exit(e.exit_code());
    }
}
