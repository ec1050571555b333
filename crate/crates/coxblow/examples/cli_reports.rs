//! Runs every corpus document through the report builders the command-line
//! tool uses and prints the verdicts.

use coxblow::cli::build_report;
use coxblow::cli::doc::parse_document;
use coxblow::cli::report::Config;

fn main() -> coxblow::Result<()> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let mut files: Vec<_> = std::fs::read_dir(&dir).expect("corpus").map(|e| e.unwrap().path()).collect();
    files.sort();
    for path in files {
        let text = std::fs::read_to_string(&path).expect("readable corpus");
        let command = match parse_document(&text)?.problem.kind() {
            "gluing-system" => "check-gluing",
            k => k,
        }
        .to_string();
        let r = build_report(&command, &text, &Config::default())?;
        println!("{:<40} {}", path.file_name().unwrap().to_string_lossy(), r.value["verdicts"]);
    }
    Ok(())
}
