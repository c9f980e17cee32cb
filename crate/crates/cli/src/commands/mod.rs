use anyhow::Result;

use crate::cli::{Cli, Command};

mod cost;
mod equivariance;
mod filter;
mod mixing;
mod roundtrip;
mod square;

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Pass,
    /// `--check` was given and at least one tolerance was violated.
    CheckFailed(Vec<String>),
}

impl Outcome {
    fn from_failures(check: bool, failures: Vec<String>) -> Self {
        if !check {
            for f in &failures {
                log::warn!("{f}");
            }
        }
        if check && !failures.is_empty() {
            Self::CheckFailed(failures)
        } else {
            Self::Pass
        }
    }
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Equivariance(args) => equivariance::run(&args),
        Command::Cost(args) => cost::run(&args),
        Command::Roundtrip(args) => roundtrip::run(&args),
        Command::Mixing(args) => mixing::run(&args),
        Command::Square(args) => square::run(&args),
        Command::Filter(args) => filter::run(&args),
    }
}
