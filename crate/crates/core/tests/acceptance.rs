//! The acceptance suite as its own test binary: one pass/fail line per criterion.

use std::process::ExitCode;

use wysiwyg::verify;

fn main() -> ExitCode {
    let results = verify::run_all();
    for r in &results {
        println!("{r}");
    }
    let failed: Vec<u32> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    println!("{}/{} criteria passed", results.len() - failed.len(), results.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
