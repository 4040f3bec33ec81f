//! Runs a problem file the way the command line does and prints the table
//! followed by the JSON report.
//!
//! cargo run --example problem_file -- corpus/composite.toml peirce

use hochschild::cli::{Command, ProblemFile};

fn main() -> hochschild::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args.next().unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/one_point.toml").into());
    let problem = ProblemFile::read(path.as_ref())?;
    let command = match args.next() {
        Some(name) => Command::from_name(&name).ok_or_else(|| hochschild::Error::Input(format!("unknown command '{name}'")))?,
        None => Command::Les,
    };
    let common = hochschild::cli::Common {
        problem: path.into(),
        max_degree: None,
        field: None,
        q: None,
        report: None,
        budget: None,
        paths: Vec::new(),
        seed: 2024,
    };
    let (report, outcome) = hochschild::cli::execute(command, &problem, &common)?;
    println!("{}", outcome.text.trim_end());
    print!("{}", report.to_json());
    Ok(())
}
