//! Surveys the built-in corpus and prints the aggregate summary.
//!
//! ```bash
//! cargo run --release --example corpus_survey -- 100
//! ```

use std::time::Instant;

use central_fourier::catalog::{builtin_corpus, survey, SurveyInput};
use central_fourier::group::BuildOptions;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let max: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(100);
    let inputs: Vec<SurveyInput> = builtin_corpus(max).into_iter().map(SurveyInput::new).collect();
    let start = Instant::now();
    let (records, summary) = survey(&inputs, None, &BuildOptions::default(), 30)?;
    for r in records.iter().filter(|r| !r.equal_flag) {
        println!("{:<40} order {:>4}  AMZA {:<14} AMZL {}", r.label, r.order, r.amza, r.amzl);
    }
    println!("{}", serde_json::to_string_pretty(&summary.to_json())?);
    println!("{} groups in {:.2?}", records.len(), start.elapsed());
    Ok(())
}
