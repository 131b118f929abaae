//! Running the bundled job corpus through the command dispatcher.
//!
//! `cargo run --example cli_jobs`

use gausslab::cli::{corpus, dispatch, dispatch_with_workers, Format, JobDescriptor};

fn main() {
    for f in corpus() {
        let rep = dispatch(&JobDescriptor::from_fixture(&f, 0)).unwrap();
        println!("{:<22} {:<16} {} checks, {}", f.name, f.command.as_str(), rep.checks.len(), if rep.passed() { "pass" } else { "FAIL" });
    }
    let job = JobDescriptor::from_fixture(&gausslab::cli::fixture("vdgv_f2").unwrap(), 0);
    let a = dispatch_with_workers(&job, 1).unwrap();
    let b = dispatch_with_workers(&job, 4).unwrap();
    assert_eq!(a.payload(), b.payload());
    print!("{}", a.render(Format::Csv));
}
