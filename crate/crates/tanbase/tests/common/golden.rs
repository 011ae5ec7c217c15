//! Golden files for CLI output. Set `TANBASE_BLESS=1` to rewrite them.

use std::path::PathBuf;

pub const CASES: [(&str, &[&str]); 3] = [
    ("graphs_enum_g0_n4.txt", &["graphs", "enum", "--genus", "0", "--legs", "4"]),
    (
        "puiseux_root_sqrt.txt",
        &["puiseux", "root", "-n", "2", "--char", "0", "--order", "3", "--series", "1+t1"],
    ),
    (
        "kummer_split_f5.txt",
        &["kummer", "split", "--char", "5", "--vars", "1", "--order", "2", "--rel", "t1:4"],
    ),
];

pub fn path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

pub fn invoke(args: &[&str]) -> tanbase::Outcome {
    tanbase::run(std::iter::once("tanbase").chain(args.iter().copied()))
}

/// Runs every case twice and compares both runs with the stored files.
pub fn check() -> Result<(), String> {
    let bless = std::env::var_os("TANBASE_BLESS").is_some();
    for (name, args) in CASES {
        let first = invoke(args);
        let second = invoke(args);
        if first.code != 0 {
            return Err(format!("{name}: exit {} {}", first.code, first.stderr));
        }
        if first != second {
            return Err(format!("{name}: output differs between runs"));
        }
        let file = path(name);
        if bless {
            std::fs::write(&file, &first.stdout).map_err(|e| e.to_string())?;
        }
        let stored = std::fs::read_to_string(&file).map_err(|e| format!("{}: {e}", file.display()))?;
        if stored != first.stdout {
            return Err(format!("{name}: output differs from the golden file"));
        }
    }
    Ok(())
}
