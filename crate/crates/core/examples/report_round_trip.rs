// Runs a command through the library front end and parses its records
// back, as a plotting script would.
//
// ```bash
// cargo run -p nonhermitian --example report_round_trip
// ```

use clap::Parser;
use nonhermitian::cli::{run, Cli, OutputFormat};
use nonhermitian::report::Report;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cli = Cli::try_parse_from(["nonherm", "growth", "--group", "fpc:2,3", "--gens", "a,ab,bba", "--n-max", "14"])?;
    let text = run(&cli)?.render(OutputFormat::Records);
    let report = Report::parse(&text)?;
    for r in report.records_of("radius") {
        println!(
            "n = {:>2}  |B_n| = {:>5}  sphere root = {}",
            r.get("n").unwrap_or("?"),
            r.get("ball").unwrap_or("?"),
            r.get("sphere_root").unwrap_or("?")
        );
    }
    if report.to_records() != text {
        return Err("records did not round-trip".into());
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
