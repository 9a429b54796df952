//! Acceptance run: one PASS/FAIL line per criterion, in order.
//!
//! The process exits non-zero when any criterion ends differently from the
//! recorded expectation. The one expected failure is the B2 centre, whose
//! dimension exceeds the powers of the angular Hamiltonian.

mod common;

use std::collections::BTreeMap;
use std::io::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use dunkl_core::cherednik::Context;
use dunkl_core::coxeter::{build_root_system, Family};
use dunkl_core::exactmath::{CoeffPoly, Rat};
use dunkl_core::polyrep::{oracle_check, verify_gamma, DunklContext};
use dunkl_core::report::Report;
use dunkl_core::subalgebra::{
    centralizer, pbw_rank_check, soundness_check, verify_relation_suite, Kind, SubAlgebra, Suite,
};

use common::*;

fn ctx(family: Family, n: usize) -> Arc<Context> {
    Context::symbolic(build_root_system(family, n).unwrap()).unwrap()
}

/// Outcome of one criterion.
struct Verdict {
    pass: bool,
    detail: String,
    /// Whether a failure here is the documented outcome.
    expected_failure: bool,
}

/// Collects sub-checks of one criterion.
#[derive(Default)]
struct Tally {
    notes: Vec<String>,
    bad: Vec<String>,
}

impl Tally {
    fn check(&mut self, label: &str, ok: bool, note: impl Into<String>) {
        let note = note.into();
        if ok {
            self.notes.push(if note.is_empty() { label.to_string() } else { format!("{label} {note}") });
        } else {
            self.bad.push(format!("{label}: {note}"));
        }
    }

    fn report(&mut self, label: &str, r: &Report) {
        let instances: u64 = r.counts.values().map(|c| c.instances).sum();
        let note = match r.failures.first() {
            None => format!("({instances} instances)"),
            Some(f) => format!("{} [{}] {}", f.relation, f.instance, f.witness),
        };
        self.check(label, r.passed() && instances > 0, note);
    }

    fn verdict(self) -> Verdict {
        let pass = self.bad.is_empty();
        let detail = if pass { self.notes.join("; ") } else { self.bad.join("; ") };
        Verdict { pass, detail, expected_failure: false }
    }
}

fn suite(t: &mut Tally, family: Family, n: usize, s: Suite) {
    match verify_relation_suite(&ctx(family, n), s, None) {
        Ok(r) => t.report(&format!("{}/{family}{n}", s.name()), &r),
        Err(e) => t.check(&format!("{}/{family}{n}", s.name()), false, e.to_string()),
    }
}

fn criterion_1() -> Verdict {
    let mut t = Tally::default();
    for n in [3, 4, 5] {
        suite(&mut t, Family::A, n, Suite::So);
    }
    for n in [3, 4] {
        suite(&mut t, Family::A, n, Suite::Gl);
    }
    suite(&mut t, Family::A, 3, Suite::So3);
    t.verdict()
}

fn criterion_2() -> Verdict {
    let mut t = Tally::default();
    for (f, n) in [(Family::B, 2), (Family::B, 3), (Family::D, 4)] {
        suite(&mut t, f, n, Suite::Coxeter);
    }
    for (f, n) in [(Family::A, 2), (Family::A, 3), (Family::A, 4), (Family::B, 2), (Family::B, 3)] {
        suite(&mut t, f, n, Suite::Decomposition);
    }
    t.verdict()
}

fn criterion_3() -> Verdict {
    let mut t = Tally::default();
    for (f, n) in [(Family::A, 3), (Family::A, 4), (Family::B, 2), (Family::B, 3)] {
        suite(&mut t, f, n, Suite::Centre);
    }
    t.verdict()
}

fn criterion_4() -> Verdict {
    let mut t = Tally::default();
    suite(&mut t, Family::A, 4, Suite::Pfaffian);
    t.verdict()
}

/// Sorted letter sequences of length `d` over the arcs `i < j` without two
/// arcs `a < b < c < d`, counted by brute force over all sequences.
fn brute_so(n: usize, d: usize) -> usize {
    let arcs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    brute(arcs.len(), d, &|seq| {
        let w: Vec<_> = seq.iter().map(|&k| arcs[k]).collect();
        w.windows(2).all(|p| p[0] <= p[1])
            && w.iter().enumerate().all(|(p, &(a, c))| {
                w[p + 1..].iter().all(|&(b, e)| !(a < b && b < c && c < e) && !(b < a && a < e && e < c))
            })
    })
}

/// Sequences of `E_ij` sorted in both indices.
fn brute_gl(n: usize, d: usize) -> usize {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    brute(pairs.len(), d, &|seq| {
        let w: Vec<_> = seq.iter().map(|&k| pairs[k]).collect();
        w.windows(2).all(|p| p[0].0 <= p[1].0 && p[0].1 <= p[1].1)
    })
}

fn brute(m: usize, d: usize, keep: &dyn Fn(&[usize]) -> bool) -> usize {
    let total = m.pow(d as u32);
    (0..total)
        .filter(|&code| {
            let mut c = code;
            let seq: Vec<usize> = (0..d)
                .map(|_| {
                    let k = c % m;
                    c /= m;
                    k
                })
                .collect();
            keep(&seq)
        })
        .count()
}

fn criterion_5() -> Verdict {
    let mut t = Tally::default();
    let cases: [(Kind, usize, u32, &[usize]); 3] =
        [(Kind::So, 3, 4, &[1, 3, 6, 10, 15]), (Kind::So, 4, 2, &[1, 6, 20]), (Kind::Gl, 2, 2, &[1, 4, 9])];
    for (kind, n, d, expected) in cases {
        let label = format!("{kind}/N={n}/d<={d}");
        let independent: Vec<usize> = (0..=d as usize)
            .map(|k| if kind == Kind::So { brute_so(n, k) } else { brute_gl(n, k) })
            .collect();
        t.check(&format!("{label} enumerator"), independent == expected, format!("{independent:?}"));
        let report = match pbw_rank_check(&SubAlgebra::new(&ctx(Family::A, n), kind), d) {
            Ok(r) => r,
            Err(e) => {
                t.check(&label, false, e.to_string());
                continue;
            }
        };
        let per = &report.result.as_ref().unwrap()["per_degree"];
        let counts: Vec<u64> = (0..=d as usize).map(|k| per[k]["count"].as_u64().unwrap()).collect();
        let ranks: Vec<u64> = (0..=d as usize).map(|k| per[k]["rank"].as_u64().unwrap()).collect();
        let want: Vec<u64> = expected.iter().map(|&c| c as u64).collect();
        t.check(&label, report.passed() && counts == want && ranks == want, format!("ranks {ranks:?}"));
    }
    t.verdict()
}

fn criterion_6() -> Verdict {
    let mut t = Tally::default();
    for (n, seed) in [(3, 0x5eed_3), (4, 0x5eed_4)] {
        let r = soundness_check(&SubAlgebra::new(&ctx(Family::A, n), Kind::So), 100, 3, seed);
        let samples = r.counts.get("embedding-preserved").map_or(0, |c| c.instances);
        t.report(&format!("so/N={n}"), &r);
        t.check(&format!("so/N={n} samples"), samples >= 100, samples.to_string());
    }
    t.verdict()
}

fn criterion_7() -> Verdict {
    let mut t = Tally::default();
    let r = oracle_check(&ctx(Family::A, 3), 120, 4, 3, 0x0dd1);
    t.report("oracle/N=3", &r);
    t.verdict()
}

fn criterion_8() -> Verdict {
    let mut t = Tally::default();
    for (n, d) in [(2, 4), (3, 3)] {
        let r = DunklContext::new(&ctx(Family::A, n)).verify_hamiltonian_identity(d, 1, true);
        t.report(&format!("hamiltonian/N={n}/d<={d}"), &r);
    }
    for n in [2usize, 3] {
        let c = ctx(Family::A, n);
        let r = DunklContext::new(&c).restrict_check(4);
        t.report(&format!("restriction/N={n}"), &r);
        let sigma = CoeffPoly::symbol(0).scale(&Rat::new((n * (n - 1)) as i64, 2));
        let names = c.symbol_names();
        let res = r.result.clone().unwrap_or_default();
        let got = (res["invariant_s"].as_str().unwrap_or(""), res["anti_invariant_s"].as_str().unwrap_or(""));
        let want = ((-&sigma).to_string_with(names), sigma.to_string_with(names));
        t.check(&format!("S scalars/N={n}"), got.0 == want.0 && got.1 == want.1, format!("{got:?}"));
    }
    t.report("gamma/N=2..5", &verify_gamma(&[2, 3, 4, 5]));
    t.verdict()
}

fn criterion_9() -> Verdict {
    let mut t = Tally::default();
    let mut dims = BTreeMap::new();
    let cases = [("so/A3/d<=4", Family::A, 3, Kind::So, 4), ("gl/A2/d<=2", Family::A, 2, Kind::Gl, 2), ("so/B2/d<=4", Family::B, 2, Kind::So, 4)];
    for (label, f, n, kind, d) in cases {
        match centralizer(&SubAlgebra::new(&ctx(f, n), kind), d) {
            Ok(c) => {
                let res = c.report.result.clone().unwrap();
                let dim = res["dimension"].as_u64().unwrap();
                let expected = res["expected_dimension"].as_u64().unwrap();
                dims.insert(label, (dim, res["known_in_centre"] == true));
                let note = format!("dimension {dim}, expected {expected} spanned by {}", res["known"]);
                t.check(label, c.report.passed() && res["spanned_by_known"] == true, note);
            }
            Err(e) => t.check(label, false, e.to_string()),
        }
    }
    let mut v = t.verdict();
    // -1 and the rotation class are central over B2, so the centre is larger
    // than the span of 1, H_Omega, H_Omega^2 and the criterion cannot hold
    v.expected_failure = !v.pass
        && dims.get("so/A3/d<=4") == Some(&(3, true))
        && dims.get("gl/A2/d<=2") == Some(&(3, true))
        && dims.get("so/B2/d<=4") == Some(&(11, true));
    v
}

fn criterion_10() -> Verdict {
    let mut t = Tally::default();
    let corpus = corpus();
    let bad: Vec<String> = corpus.iter().filter_map(|e| round_trips(&e.expr).err()).collect();
    t.check("round-trip", corpus.len() >= 50 && bad.is_empty(), format!("{} expressions {}", corpus.len(), bad.join(", ")));
    let nf = check_golden("normal_forms.txt", &normal_form_listing());
    t.check("normal-form goldens", nf.is_ok(), nf.err().unwrap_or_default());
    let mut failures = Vec::new();
    for (name, args, code) in GOLDEN_COMMANDS {
        let out = dunkl(args);
        if out.code != *code {
            failures.push(format!("{name} exited {}", out.code));
        } else if let Err(e) = check_golden(name, &out.stdout) {
            failures.push(e);
        }
    }
    t.check("command goldens", failures.is_empty(), format!("{} files {}", GOLDEN_COMMANDS.len(), failures.join(", ")));
    let bin = env!("CARGO_BIN_EXE_dunkl");
    let code = |args: &[&str]| Command::new(bin).args(args).output().map(|o| o.status.code()).ok().flatten();
    let exits = [
        code(&["verify", "pfaffian", "--rank", "4"]),
        code(&["verify", "centre", "--group", "B", "--rank", "2", "--degree", "0"]),
        code(&["normal-form", "[x[1], "]),
        code(&["verify", "bogus"]),
    ];
    t.check("exit codes", exits == [Some(0), Some(1), Some(2), Some(2)], format!("{exits:?}"));
    t.verdict()
}

fn main() {
    // libtest-style filter arguments are ignored; the run is always complete
    let criteria: [(u32, &str, Duration, fn() -> Verdict); 10] = [
        (1, "relation suites, type A", Duration::from_secs(300), criterion_1),
        (2, "general reflection groups", Duration::from_secs(600), criterion_2),
        (3, "centrality", Duration::from_secs(600), criterion_3),
        (4, "Pfaffian", Duration::from_secs(60), criterion_4),
        (5, "PBW flatness", Duration::from_secs(900), criterion_5),
        (6, "straightening soundness", Duration::from_secs(600), criterion_6),
        (7, "oracle consistency", Duration::from_secs(300), criterion_7),
        (8, "analytic identities", Duration::from_secs(300), criterion_8),
        (9, "centre computation", Duration::from_secs(3600), criterion_9),
        (10, "command line", Duration::from_secs(60), criterion_10),
    ];
    let mut unexpected = 0;
    let stdout = std::io::stdout();
    for (k, title, budget, f) in criteria {
        let start = Instant::now();
        let mut v = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Verdict { pass: false, detail: format!("panicked: {}", msg.unwrap_or_default()), expected_failure: false }
        });
        let elapsed = start.elapsed();
        if elapsed > budget {
            v.pass = false;
            v.expected_failure = false;
            v.detail = format!("over the {}s budget; {}", budget.as_secs(), v.detail);
        }
        let status = if v.pass { "PASS" } else { "FAIL" };
        let note = if !v.pass && v.expected_failure { " (documented)" } else { "" };
        let line = format!("criterion {k:>2} {status}{note} [{:.1}s] {title}: {}\n", elapsed.as_secs_f64(), v.detail);
        let _ = stdout.lock().write_all(line.as_bytes());
        if !v.pass && !v.expected_failure {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criterion(s) failed unexpectedly");
        std::process::exit(1);
    }
}
