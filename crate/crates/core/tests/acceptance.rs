//! One line per criterion; nonzero exit if any fails.

use bigproj::verify::{self, Status, VerifyConfig};
use std::process::ExitCode;

fn main() -> ExitCode {
    let reports = verify::run(&VerifyConfig::default());
    let mut bad = 0;
    for r in &reports {
        let tag = match &r.status {
            Status::Pass => "PASS".to_string(),
            Status::Fail => {
                bad += 1;
                "FAIL".to_string()
            }
            Status::Skipped(why) => format!("SKIPPED ({why})"),
        };
        println!("criterion {} {}: {}", r.criterion, r.id, tag);
        if r.failed() {
            eprintln!("{}", serde_json::to_string_pretty(&r.to_json()).unwrap_or_default());
        }
    }
    if reports.len() != 9 {
        println!("expected 9 criteria, ran {}", reports.len());
        return ExitCode::FAILURE;
    }
    if bad > 0 {
        println!("{bad} criteria failed");
        ExitCode::FAILURE
    } else {
        println!("all 9 criteria pass");
        ExitCode::SUCCESS
    }
}
