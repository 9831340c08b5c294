//! The report pipeline behind the binary, driven from code: a bounds run on
//! an inline domain, rendered as CSV.

use btl::cli::{execute, Command, DomainInput, Format, RunConfig};

fn main() -> btl::Result<()> {
    let domain = DomainInput::parse(
        r#"{"kind": "polygon", "params": {"vertices": [[0, 0], [3, 0], [3, 1], [1, 2]]}}"#,
    )?;
    let mut config = RunConfig::new(Command::Bounds, domain);
    config.deltas = vec![0.5, 2.0];
    config.level = 3;
    let report = execute(&config)?;
    print!("{}", report.render(Format::Csv)?);
    println!("failed: {}", report.failed());
    Ok(())
}
