//! Drive the command-line interface in process: generate an instance
//! file, solve it, and verify the produced solution, checking exit codes
//! the way a shell pipeline would.

use colflow::cli::run_with_io;
use std::fs;

fn colflow(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("colflow").chain(args.iter().copied());
    let code = run_with_io(argv, &mut out, &mut err);
    if !err.is_empty() {
        eprint!("{}", String::from_utf8_lossy(&err));
    }
    (code, String::from_utf8(out).expect("utf-8 output"))
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join("colflow-cli-example");
    fs::create_dir_all(&dir)?;
    let instance = dir.join("instance.cfd");
    let solution = dir.join("solution.txt");
    let instance_path = instance.to_str().unwrap();
    let solution_path = solution.to_str().unwrap();

    // `generate fixture` writes an instance file to stdout.
    let (code, text) = colflow(&["generate", "fixture", "fig1"]);
    assert_eq!(code, 0);
    fs::write(&instance, &text)?;
    println!("generated instance:\n{text}");

    // `solve` picks an algorithm to match the instance, names it in a
    // comment line, and prints the solution listing.
    let (code, text) = colflow(&["solve", instance_path]);
    assert_eq!(code, 0);
    fs::write(&solution, &text)?;
    println!("solve:\n{text}");

    // `verify` re-checks the solution file against the instance.
    let (code, text) = colflow(&["verify", instance_path, solution_path]);
    assert_eq!(code, 0);
    println!("verify: {text}");

    // `decide` exits 0 on yes and 1 on no, like grep.
    let (code, text) = colflow(&["decide", instance_path, "--k", "2"]);
    println!("decide --k 2 (exit {code}): {text}");
    assert_eq!(code, 0);
    let (code, text) = colflow(&["decide", instance_path, "--k", "1"]);
    println!("decide --k 1 (exit {code}): {text}");
    assert_eq!(code, 1);

    // Machine-readable output for everything else.
    let (code, text) = colflow(&["info", instance_path, "--format", "json"]);
    assert_eq!(code, 0);
    println!("info --format json:\n{text}");

    fs::remove_dir_all(&dir)?;
    Ok(())
}
