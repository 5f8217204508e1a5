// SPDX-License-Identifier: Apache-2.0

//! `dmnr` command-line tool.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 data error.

mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;

/// Error carrying the process exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    pub fn data(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<dmnr::Error> for Failure {
    fn from(e: dmnr::Error) -> Self {
        match e {
            dmnr::Error::InvalidParams(_) | dmnr::Error::InvalidSpec(_) => Failure::usage(e.to_string()),
            _ => Failure::data(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("dmnr: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
