#![allow(dead_code)]

use std::path::PathBuf;

use dunkl_cli::expr::{Atom, Expr};
use dunkl_cli::{parse_expression, run, Output};

pub fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests")
}

/// One corpus line: `None` for parse-only entries.
pub struct Entry {
    pub setup: Option<(String, String, String)>,
    pub expr: String,
}

pub fn corpus() -> Vec<Entry> {
    let text = std::fs::read_to_string(dir().join("corpus.txt")).unwrap();
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (head, expr) = l.split_once(" | ").expect("corpus line has ` | `");
            let words: Vec<&str> = head.split_whitespace().collect();
            let setup = match words.as_slice() {
                ["parse"] => None,
                [g, n, m] => Some((g.to_string(), n.to_string(), m.to_string())),
                _ => panic!("bad corpus line {l}"),
            };
            Entry { setup, expr: expr.into() }
        })
        .collect()
}

pub fn dunkl(args: &[&str]) -> Output {
    run(std::iter::once("dunkl").chain(args.iter().copied()))
}

pub fn normal_form(setup: &(String, String, String), expr: &str) -> Output {
    let (g, n, m) = setup;
    dunkl(&["normal-form", expr, "--group", g, "--rank", n, "--mode", m])
}

/// `print(parse(s)) == s` and `parse(print(e)) == e`.
pub fn round_trips(s: &str) -> Result<Expr, String> {
    let e = parse_expression(s).map_err(|err| format!("{s}: {err}"))?;
    let printed = e.to_string();
    if printed != s {
        return Err(format!("{s} printed back as {printed}"));
    }
    let again = parse_expression(&printed).map_err(|err| format!("{printed}: {err}"))?;
    if again != e {
        return Err(format!("{s} reparsed to a different tree"));
    }
    Ok(e)
}

/// Names of the node and atom kinds used by an expression.
pub fn features(e: &Expr, out: &mut std::collections::BTreeSet<&'static str>) {
    let name = match e {
        Expr::Num(r) if r.is_integer() => "integer",
        Expr::Num(_) => "fraction",
        Expr::Coupling(_) => "coupling",
        Expr::Rank => "N",
        Expr::Atom(a) => match a {
            Atom::X(_) => "x",
            Atom::D(_) => "D",
            Atom::M(..) => "M",
            Atom::E(..) => "E",
            Atom::Reflection(..) => "s[i,j]",
            Atom::RootReflection(_) => "s[a]",
            Atom::S(..) => "S",
            Atom::Ssum => "Ssum",
            Atom::H => "H",
            Atom::HOmega => "HOmega",
            Atom::Msq => "Msq",
            Atom::Rho => "rho",
            Atom::Group(_) => "w",
        },
        Expr::Neg(_) => "neg",
        Expr::Add(..) => "add",
        Expr::Sub(..) => "sub",
        Expr::Mul(..) => "mul",
        Expr::Pow(..) => "pow",
        Expr::Commutator(..) => "commutator",
        Expr::Anticommutator(..) => "anticommutator",
    };
    out.insert(name);
    match e {
        Expr::Neg(a) | Expr::Pow(a, _) => features(a, out),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Commutator(a, b) | Expr::Anticommutator(a, b) => {
            features(a, out);
            features(b, out);
        }
        _ => {}
    }
}

pub const ALL_FEATURES: [&str; 24] = [
    "integer", "fraction", "coupling", "N", "x", "D", "M", "E", "s[i,j]", "s[a]", "S", "Ssum", "H", "HOmega", "Msq",
    "rho", "w", "neg", "add", "sub", "mul", "pow", "commutator", "anticommutator",
];

/// The normal forms of the corpus, one block per evaluable entry.
pub fn normal_form_listing() -> String {
    let mut s = String::new();
    for e in corpus() {
        let Some(setup) = &e.setup else { continue };
        let out = normal_form(setup, &e.expr);
        assert_eq!(out.code, 0, "{}: {}", e.expr, out.stderr);
        s.push_str(&format!("{} {} {} | {}\n=> {}", setup.0, setup.1, setup.2, e.expr, out.stdout));
    }
    s
}

/// Golden command lines: file name, arguments, expected exit code.
pub const GOLDEN_COMMANDS: &[(&str, &[&str], i32)] = &[
    ("normal_form_so4.json", &["normal-form", "M[1,3]*M[2,4]", "--rank", "4", "--mode", "so", "--format", "json"], 0),
    ("verify_pfaffian_A4.json", &["verify", "pfaffian", "--group", "A", "--rank", "4", "--format", "json"], 0),
    ("verify_centre_A3_d4.json", &["verify", "centre", "--group", "A", "--rank", "3", "--degree", "4", "--format", "json"], 0),
    ("verify_relations_so_B2.json", &["verify", "relations-so", "--group", "B", "--rank", "2", "--format", "json"], 0),
    ("verify_crossing_A4.txt", &["verify", "crossing", "--rank", "4"], 0),
    ("verify_so3_example.txt", &["verify", "so3-example", "--rank", "3"], 0),
    ("verify_relations_gl_A3.txt", &["verify", "relations-gl", "--rank", "3"], 0),
    ("verify_hamiltonian_A2_d4.json", &["verify", "hamiltonian", "--rank", "2", "--degree", "4", "--format", "json"], 0),
    ("verify_restriction_A3_d4.json", &["verify", "restriction", "--rank", "3", "--degree", "4", "--format", "json"], 0),
    ("verify_coxeter_general_D4.txt", &["verify", "coxeter-general", "--group", "D", "--rank", "4"], 0),
    ("verify_pbw_A3_d3.json", &["verify", "pbw", "--rank", "3", "--degree", "3", "--format", "json"], 0),
    ("verify_centre_B2_d2.txt", &["verify", "centre", "--group", "B", "--rank", "2", "--degree", "2"], 1),
    ("verify_relations_so_A3_numeric.txt", &["verify", "relations-so", "--rank", "3", "--numeric-g", "1/3"], 0),
    ("basis_so_A4_d2.txt", &["basis", "--rank", "4", "--degree", "2"], 0),
    ("basis_gl_A2_d2.json", &["basis", "--mode", "gl", "--rank", "2", "--degree", "2", "--format", "json"], 0),
    ("centre_gl_A2.json", &["centre", "--mode", "gl", "--rank", "2", "--format", "json"], 0),
];

/// Compares `actual` with the golden file, or rewrites it when
/// `UPDATE_GOLDEN` is set. Returns a description of the mismatch.
pub fn check_golden(name: &str, actual: &str) -> Result<(), String> {
    let path = dir().join("golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return Ok(());
    }
    let expected = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected == actual {
        return Ok(());
    }
    let line = expected.lines().zip(actual.lines()).position(|(a, b)| a != b).unwrap_or(0);
    Err(format!("{name} differs from the golden file near line {}", line + 1))
}
