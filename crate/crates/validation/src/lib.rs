//! Runner for the acceptance suite: each criterion is a closure returning a
//! verdict and a one-line summary, timed against its budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: u32,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
    pub elapsed: Duration,
}

#[derive(Debug, Default)]
pub struct Gate {
    results: Vec<CriterionResult>,
}

impl Gate {
    pub fn new() -> Self {
        Gate::default()
    }

    /// Runs one criterion and prints its line. An error or an overrun of
    /// `budget` counts as a failure.
    pub fn run<F>(&mut self, id: u32, title: &'static str, budget: Duration, check: F)
    where
        F: FnOnce() -> Result<(bool, String), String>,
    {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let (mut pass, mut detail) = match outcome {
            Ok(v) => v,
            Err(e) => (false, format!("error: {e}")),
        };
        if elapsed > budget {
            pass = false;
            detail.push_str(&format!("; over budget of {budget:?}"));
        }
        println!(
            "[{}] criterion {id}: {title}: {detail} ({:.2} s)",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
        self.results.push(CriterionResult { id, title, pass, detail, elapsed });
    }

    pub fn results(&self) -> &[CriterionResult] {
        &self.results
    }

    /// Prints the summary; failure exit status if any criterion failed.
    pub fn finish(self) -> ExitCode {
        let failed: Vec<u32> = self.results.iter().filter(|r| !r.pass).map(|r| r.id).collect();
        println!(
            "acceptance: {}/{} criteria passed{}",
            self.results.len() - failed.len(),
            self.results.len(),
            if failed.is_empty() { String::new() } else { format!("; failing: {failed:?}") }
        );
        if failed.is_empty() {
            ExitCode::SUCCESS
        } else {
            ExitCode::FAILURE
        }
    }
}
