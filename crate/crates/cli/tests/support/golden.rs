//! Golden transcripts: each `NAME.cmds` under `tests/golden` lists command
//! lines (optionally prefixed by `VAR=value` assignments), and `NAME.out`
//! holds what running them prints. `PFL_BLESS=1` rewrites the `.out` files.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

pub const SUBCOMMANDS: &[&str] = &[
    "closed",
    "biclosed",
    "generators",
    "models",
    "weq",
    "bp-eq",
    "cspa-eq",
    "coreflect",
    "cover",
    "points",
    "check-ftm",
    "encode-ftm",
    "translate",
];

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

#[derive(Debug, Default)]
pub struct Report {
    pub pfl_files: usize,
    pub mismatches: Vec<String>,
    pub unstable: Vec<String>,
    pub exit_codes: BTreeSet<i32>,
    pub subcommands: BTreeSet<String>,
}

/// Splits on whitespace, honouring single and double quotes.
pub fn split_words(line: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut quote: Option<char> = None;
    let mut in_word = false;
    for c in line.chars() {
        match quote {
            Some(q) if c == q => quote = None,
            Some(_) => cur.push(c),
            None if c == '\'' || c == '"' => {
                quote = Some(c);
                in_word = true;
            }
            None if c.is_whitespace() => {
                if in_word {
                    out.push(std::mem::take(&mut cur));
                    in_word = false;
                }
            }
            None => {
                cur.push(c);
                in_word = true;
            }
        }
    }
    if in_word {
        out.push(cur);
    }
    out
}

pub fn is_assignment(w: &str) -> bool {
    match w.split_once('=') {
        Some((k, _)) => !k.is_empty() && k.chars().all(|c| c.is_ascii_uppercase() || c == '_'),
        None => false,
    }
}

pub struct Outcome {
    pub text: String,
    pub code: i32,
}

pub fn run_line(dir: &Path, line: &str) -> Outcome {
    let words = split_words(line);
    let split = words.iter().take_while(|w| is_assignment(w)).count();
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_pfl"));
    cmd.current_dir(dir)
        .env_remove("PFL_LIMIT")
        .args(&words[split..]);
    for w in &words[..split] {
        let (k, v) = w.split_once('=').unwrap();
        cmd.env(k, v);
    }
    let out = cmd.output().expect("spawn pfl");
    let code = out.status.code().unwrap_or(-1);
    let mut text = String::from("$ ");
    for w in &words[..split] {
        text.push_str(w);
        text.push(' ');
    }
    text.push_str("pfl ");
    text.push_str(
        line.splitn(split + 1, char::is_whitespace)
            .last()
            .unwrap_or("")
            .trim_start(),
    );
    text.push('\n');
    text.push_str(&String::from_utf8_lossy(&out.stdout));
    if !out.stderr.is_empty() {
        text.push_str("--- stderr\n");
        text.push_str(&String::from_utf8_lossy(&out.stderr));
    }
    text.push_str(&format!("[exit {code}]\n\n"));
    Outcome { text, code }
}

pub fn transcript(dir: &Path, cmds: &str, report: &mut Report) -> String {
    let mut text = String::new();
    for line in cmds
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
    {
        let o = run_line(dir, line);
        report.exit_codes.insert(o.code);
        let words = split_words(line);
        if let Some(sub) = words.iter().find(|w| !is_assignment(w)) {
            report.subcommands.insert(sub.clone());
        }
        text.push_str(&o.text);
    }
    text
}

pub fn check_corpus() -> Report {
    let dir = golden_dir();
    let bless = std::env::var("PFL_BLESS")
        .map(|v| v == "1")
        .unwrap_or(false);
    let mut report = Report::default();
    let mut entries: Vec<PathBuf> = fs::read_dir(&dir)
        .expect("golden dir")
        .map(|e| e.unwrap().path())
        .collect();
    entries.sort();
    report.pfl_files = entries
        .iter()
        .filter(|p| p.extension().is_some_and(|e| e == "pfl"))
        .count();
    for cmds_path in entries
        .iter()
        .filter(|p| p.extension().is_some_and(|e| e == "cmds"))
    {
        let cmds = fs::read_to_string(cmds_path).unwrap();
        let first = transcript(&dir, &cmds, &mut report);
        let second = transcript(&dir, &cmds, &mut Report::default());
        let stem = cmds_path.file_stem().unwrap().to_string_lossy().to_string();
        if first != second {
            report.unstable.push(stem.clone());
        }
        let out_path = cmds_path.with_extension("out");
        if bless {
            fs::write(&out_path, &first).unwrap();
            continue;
        }
        match fs::read_to_string(&out_path) {
            Ok(want) if want == first => {}
            Ok(want) => {
                let line = want
                    .lines()
                    .zip(first.lines())
                    .position(|(a, b)| a != b)
                    .unwrap_or_else(|| want.lines().count().min(first.lines().count()));
                report
                    .mismatches
                    .push(format!("{stem}.out differs near line {}", line + 1));
            }
            Err(_) => report.mismatches.push(format!("{stem}.out is missing")),
        }
    }
    report
}
