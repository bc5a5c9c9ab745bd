//! Running a suite programmatically and reading the report.

use qshelf::verify::{run_suite, Format, Suite, SuiteConfig};

fn main() -> qshelf::Result<()> {
    let cfg = SuiteConfig {
        suite: Suite::Xq,
        k_max: 3,
        order: 30,
        j_max: 2,
        ..SuiteConfig::default()
    };
    let report = run_suite(&cfg)?;
    println!("{:?}, exit code {}", report.summary, report.exit_code);
    for r in report.results.iter().take(5) {
        println!("{r}");
    }

    let cfg = SuiteConfig {
        format: Format::Json,
        suite: Suite::Gga,
        k_max: 2,
        order: 10,
        j_max: 1,
        ..cfg
    };
    let json = run_suite(&cfg)?.render();
    println!("{}", &json[..json.len().min(600)]);
    Ok(())
}
