//! Exhaustive verification of the defining and derived relations of the
//! angular momenta algebras inside the Cherednik algebra.

use std::sync::Arc;

use crate::cherednik::{
    angular_hamiltonian, angular_momentum, e_generator, euler, hamiltonian_h, m_squared, pfaffian_sum, rho,
    s_pair_element, s_sum, x_squared, Context, PbwElement,
};
use crate::coxeter::Family;
use crate::error::{Error, Result};
use crate::exactmath::{CoeffPoly, Rat};
use crate::par;
use crate::report::{Outcome, Report};

/// Named groups of relations, each run over all of its index instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// Angular momenta, ladder operators and `S_ij` for the symmetric group;
    /// for other groups the basis-vector form of the commutator and crossing relations.
    So,
    /// The `E_kl` relations (symmetric group only).
    Gl,
    /// The three-dimensional example (symmetric group, `N = 3`).
    So3,
    /// Commutator, crossing and equivariance of `M_{xi eta}` for any group.
    Coxeter,
    /// `M^2` in terms of `x^2`, `sum D^2` and the Euler operator, and the radial split.
    Decomposition,
    /// Central elements commute with the generators.
    Centre,
    /// Alternating sum of products of `M_ij` vanishes (even `N`).
    Pfaffian,
}

impl Suite {
    pub const ALL: [Suite; 7] =
        [Suite::So, Suite::Gl, Suite::So3, Suite::Coxeter, Suite::Decomposition, Suite::Centre, Suite::Pfaffian];

    pub fn name(self) -> &'static str {
        match self {
            Suite::So => "relations-so",
            Suite::Gl => "relations-gl",
            Suite::So3 => "relations-so3",
            Suite::Coxeter => "relations-coxeter",
            Suite::Decomposition => "decomposition",
            Suite::Centre => "centrality",
            Suite::Pfaffian => "pfaffian",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }
}

/// Generators of one context, built once and shared by all instances.
pub struct Generators {
    ctx: Arc<Context>,
    m: Vec<Vec<PbwElement>>,
    e: Vec<Vec<PbwElement>>,
    s: Vec<Vec<PbwElement>>,
    ap: Vec<PbwElement>,
    am: Vec<PbwElement>,
}

fn unit(n: usize, i: usize) -> Vec<Rat> {
    (0..n).map(|j| if i == j { Rat::ONE } else { Rat::ZERO }).collect()
}

impl Generators {
    pub fn new(ctx: &Arc<Context>) -> Generators {
        let n = ctx.rank();
        let grid = |f: &dyn Fn(usize, usize) -> PbwElement| -> Vec<Vec<PbwElement>> {
            (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect()
        };
        Generators {
            ctx: ctx.clone(),
            m: grid(&|i, j| angular_momentum(ctx, &unit(n, i), &unit(n, j))),
            e: grid(&|i, j| e_generator(ctx, i, j).unwrap()),
            s: grid(&|i, j| s_pair_element(ctx, &unit(n, i), &unit(n, j))),
            ap: (0..n).map(|i| crate::cherednik::a_plus(ctx, i).unwrap()).collect(),
            am: (0..n).map(|i| crate::cherednik::a_minus(ctx, i).unwrap()).collect(),
        }
    }

    pub fn m(&self, i: usize, j: usize) -> &PbwElement {
        &self.m[i][j]
    }

    pub fn e(&self, i: usize, j: usize) -> &PbwElement {
        &self.e[i][j]
    }

    pub fn s(&self, i: usize, j: usize) -> &PbwElement {
        &self.s[i][j]
    }
}

fn br(a: &PbwElement, b: &PbwElement) -> PbwElement {
    &(a * b) - &(b * a)
}

fn anti(a: &PbwElement, b: &PbwElement) -> PbwElement {
    &(a * b) + &(b * a)
}

/// Instance tuples over `0..n` of the given length, optionally pairwise distinct.
pub fn tuples(n: usize, len: usize, distinct: bool) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for t in &out {
            for i in 0..n {
                if distinct && t.contains(&i) {
                    continue;
                }
                let mut u = t.clone();
                u.push(i);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

fn label(t: &[usize]) -> String {
    let parts: Vec<String> = t.iter().map(|i| (i + 1).to_string()).collect();
    format!("({})", parts.join(","))
}

/// Runs relation instances and collects outcomes; `corrupt` names a relation
/// whose right-hand sides are sign flipped, or replaced by 1 when zero
/// (negative control).
struct Runner<'a> {
    report: Report,
    corrupt: Option<&'a str>,
}

impl Runner<'_> {
    fn run<F>(&mut self, relation: &str, instances: &[Vec<usize>], f: F)
    where
        F: Fn(&[usize]) -> Vec<(PbwElement, PbwElement)> + Sync + Send,
    {
        let flip = self.corrupt == Some(relation);
        let outcomes: Vec<Vec<Outcome>> = par::map(instances, |t| {
            let pairs = f(t);
            let many = pairs.len() > 1;
            pairs
                .into_iter()
                .enumerate()
                .map(|(k, (lhs, rhs))| {
                    let diff = match (flip, rhs.is_zero()) {
                        (false, _) => &lhs - &rhs,
                        (true, false) => &lhs + &rhs,
                        (true, true) => &lhs - &PbwElement::one(lhs.context()),
                    };
                    let inst = if many { format!("{}#{}", label(t), k + 1) } else { label(t) };
                    if diff.is_zero() {
                        Outcome::pass(inst)
                    } else {
                        Outcome::fail(inst, diff.to_canonical_string())
                    }
                })
                .collect()
        });
        for o in outcomes.into_iter().flatten() {
            self.report.record_outcome(relation, o);
        }
    }
}

fn require_type_a(ctx: &Context) -> Result<()> {
    if ctx.root_system().family() != Family::A {
        return Err(Error::WrongRootSystem);
    }
    Ok(())
}

/// Verifies every instance of a suite; `corrupt` perturbs the right-hand
/// side of the named relation.
pub fn verify_relation_suite(ctx: &Arc<Context>, suite: Suite, corrupt: Option<&str>) -> Result<Report> {
    let rs = ctx.root_system();
    let report = Report::new(suite.name(), &rs.family().to_string(), rs.family_rank());
    let mut r = Runner { report, corrupt };
    if let Some(c) = corrupt {
        r.report = r.report.param("corrupted", c);
    }
    let g = Generators::new(ctx);
    let n = ctx.rank();
    match suite {
        Suite::So if rs.family() == Family::A => so_suite(&mut r, &g, n),
        Suite::So => coxeter_suite(&mut r, &g, n, false),
        Suite::Gl => {
            require_type_a(ctx)?;
            gl_suite(&mut r, &g, n)
        }
        Suite::So3 => {
            require_type_a(ctx)?;
            if n != 3 {
                return Err(Error::UnsupportedRank { family: "A".into(), rank: n });
            }
            so3_suite(&mut r, &g)
        }
        Suite::Coxeter => coxeter_suite(&mut r, &g, n, true),
        Suite::Decomposition => decomposition_suite(&mut r, ctx),
        Suite::Centre => centre_suite(&mut r, &g, n),
        Suite::Pfaffian => {
            let p = pfaffian_sum(ctx)?;
            let zero = PbwElement::zero(ctx);
            r.run("pfaffian", &[vec![]], |_| vec![(p.clone(), zero.clone())]);
        }
    }
    Ok(r.report)
}

fn cyclic(i: usize, j: usize, k: usize, f: impl Fn(usize, usize, usize) -> PbwElement) -> PbwElement {
    &(&f(i, j, k) + &f(j, k, i)) + &f(k, i, j)
}

fn so_suite(r: &mut Runner, g: &Generators, n: usize) {
    let ctx = &g.ctx;
    let zero = PbwElement::zero(ctx);
    let (s, m, ap, am) = (&g.s, &g.m, &g.ap, &g.am);
    let g0 = ctx.multiplicities().orbit_value(0);
    let gsq = PbwElement::scalar(ctx, g0 * g0);
    let two = CoeffPoly::int(2);

    r.run("s-products", &tuples(n, 4, true), |t| {
        let (i, j, k, l) = (t[0], t[1], t[2], t[3]);
        vec![
            (&s[i][j] * &s[i][k], &s[j][k] * &s[i][j]),
            (br(&s[i][j], &s[k][l]), zero.clone()),
            (&s[i][j] * &s[i][j], gsq.clone()),
            (s[i][j].clone(), s[j][i].clone()),
        ]
    });
    // the four-index part above needs N >= 4; the three-index identities are
    // checked separately so that N = 3 is covered too
    r.run("s-products-3", &tuples(n, 3, true), |t| {
        let (i, j, k) = (t[0], t[1], t[2]);
        vec![(&s[i][j] * &s[i][k], &s[j][k] * &s[i][j]), (&s[i][j] * &s[i][j], gsq.clone())]
    });
    r.run("s-diagonal", &tuples(n, 3, true), |t| {
        let (i, j, k) = (t[0], t[1], t[2]);
        vec![(&s[i][j] * &s[j][j], &s[i][i] * &s[i][j]), (br(&s[i][j], &s[k][k]), zero.clone())]
    });
    r.run("s-ladder", &tuples(n, 3, true), |t| {
        let (i, j, k) = (t[0], t[1], t[2]);
        let mut v = Vec::new();
        for a in [ap, am] {
            v.push((&s[i][j] * &a[i], &a[j] * &s[i][j]));
            v.push((br(&s[i][j], &a[k]), zero.clone()));
        }
        v
    });
    // [a_i, a_j^+] = S_ij with a^+- = (x -+ D)/sqrt 2; here unnormalized, hence the factor 2
    r.run("ladder-commutators", &tuples(n, 2, false), |t| {
        let (i, j) = (t[0], t[1]);
        vec![
            (br(&am[i], &ap[j]), s[i][j].scale(&two)),
            (br(&am[i], &am[j]), zero.clone()),
            (br(&ap[i], &ap[j]), zero.clone()),
        ]
    });
    r.run("s-diagonal-ladder", &tuples(n, 2, true), |t| {
        let (i, j) = (t[0], t[1]);
        let mut v = Vec::new();
        for a in [ap, am] {
            let rhs = &(&a[i] - &a[j]) * &s[i][j];
            v.push((br(&s[j][j], &a[i]), rhs.clone()));
            v.push((br(&s[i][j], &a[j]), rhs));
        }
        v
    });
    r.run("s-diagonal-ladder-same", &tuples(n, 1, false), |t| {
        let j = t[0];
        let mut v = Vec::new();
        for a in [ap, am] {
            let mut rhs = zero.clone();
            for k in (0..n).filter(|&k| k != j) {
                rhs = &rhs + &(&(&a[j] - &a[k]) * &s[k][j]);
            }
            v.push((br(&s[j][j], &a[j]), rhs));
        }
        v
    });
    r.run("s-angular", &tuples(n, 4, true), |t| {
        let (i, j, k, l) = (t[0], t[1], t[2], t[3]);
        vec![(br(&s[i][j], &m[k][l]), zero.clone())]
    });
    r.run("s-angular-3", &tuples(n, 3, true), |t| {
        let (i, j, k) = (t[0], t[1], t[2]);
        vec![(anti(&s[i][j], &m[i][j]), zero.clone()), (&s[i][j] * &m[i][k], &m[j][k] * &s[i][j])]
    });
    let all4 = tuples(n, 4, false);
    r.run("angular-commutator", &all4, |t| {
        let (i, j, k, l) = (t[0], t[1], t[2], t[3]);
        let rhs = &(&(&m[i][l] * &s[j][k]) + &(&m[j][k] * &s[i][l])) - &(&(&m[i][k] * &s[l][j]) + &(&m[j][l] * &s[i][k]));
        vec![(br(&m[i][j], &m[k][l]), rhs)]
    });
    r.run("angular-commutator-left", &all4, |t| {
        let (i, j, k, l) = (t[0], t[1], t[2], t[3]);
        let rhs = &(&(&s[j][k] * &m[i][l]) + &(&s[i][l] * &m[j][k])) - &(&(&s[l][j] * &m[i][k]) + &(&s[i][k] * &m[j][l]));
        vec![(br(&m[i][j], &m[k][l]), rhs)]
    });
    let mm = |i, j, k, l: usize| cyclic(i, j, k, |a, b, c| &m[a][b] * &m[c][l]);
    r.run("crossing", &all4, |t| {
        let (i, j, k, l) = (t[0], t[1], t[2], t[3]);
        let rhs = cyclic(i, j, k, |a, b, c| &m[a][b] * &s[c][l]);
        vec![(mm(i, j, k, l), rhs)]
    });
    r.run("crossing-left", &all4, |t| {
        let (i, j, k, l) = (t[0], t[1], t[2], t[3]);
        let rhs = cyclic(i, j, k, |a, b, c| &s[c][l] * &m[a][b]);
        vec![(mm(i, j, k, l), rhs)]
    });
    r.run("crossing-conjugate", &all4, |t| {
        let (i, j, k, l) = (t[0], t[1], t[2], t[3]);
        let a = cyclic(i, j, k, |a, b, c| &m[l][a] * &m[b][c]);
        let b = cyclic(i, j, k, |a, b, c| &s[l][a] * &m[b][c]);
        let c = cyclic(i, j, k, |a, b, c| &m[a][b] * &s[c][l]);
        let d = mm(i, j, k, l);
        vec![(a.clone(), b), (a.clone(), c), (a, d)]
    });
    r.run("crossing-anticommutator", &all4, |t| {
        let (i, j, k, l) = (t[0], t[1], t[2], t[3]);
        vec![(cyclic(i, j, k, |a, b, c| anti(&m[a][b], &m[c][l])), zero.clone())]
    });
    let perms = tuples(4, 4, true);
    r.run("crossing-antisymmetric", &all4, |t| {
        let mut acc = zero.clone();
        for p in &perms {
            let idx: Vec<usize> = p.iter().map(|&q| t[q]).collect();
            let term = &m[idx[0]][idx[1]] * &m[idx[2]][idx[3]];
            acc = if perm_sign(p) > 0 { &acc + &term } else { &acc - &term };
        }
        vec![(acc, zero.clone())]
    });
}

fn perm_sign(p: &[usize]) -> i32 {
    let mut inv = 0;
    for a in 0..p.len() {
        for b in a + 1..p.len() {
            if p[a] > p[b] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

fn gl_suite(r: &mut Runner, g: &Generators, n: usize) {
    let ctx = &g.ctx;
    let zero = PbwElement::zero(ctx);
    let (s, e) = (&g.s, &g.e);
    r.run("s-gl", &tuples(n, 4, true), |t| {
        let (i, j, k, l) = (t[0], t[1], t[2], t[3]);
        vec![(br(&s[i][j], &e[k][l]), zero.clone())]
    });
    r.run("s-gl-3", &tuples(n, 3, true), |t| {
        let (i, j, k) = (t[0], t[1], t[2]);
        vec![
            (&s[i][j] * &e[i][j], &e[j][i] * &s[i][j]),
            (&s[i][j] * &e[i][k], &e[j][k] * &s[i][j]),
            (&s[i][j] * &e[k][i], &e[k][j] * &s[i][j]),
            (br(&s[i][j], &e[k][k]), zero.clone()),
        ]
    });
    let all4 = tuples(n, 4, false);
    r.run("gl-crossing", &all4, |t| {
        let (i, j, k, l) = (t[0], t[1], t[2], t[3]);
        let lhs = &(&e[i][j] * &e[k][l]) - &(&e[i][l] * &e[k][j]);
        let rhs = &(&e[i][l] * &s[k][j]) - &(&e[i][j] * &s[k][l]);
        vec![(lhs, rhs)]
    });
    r.run("gl-crossing-asym", &all4, |t| {
        let (i, j, k, l) = (t[0], t[1], t[2], t[3]);
        let es = |a: usize, b: usize| &e[a][b] + &s[a][b];
        let first = &(&e[i][j] * &es(k, l)) - &(&e[i][l] * &es(k, j));
        let second = &(&es(i, j) * &e[k][l]) - &(&es(k, j) * &e[i][l]);
        vec![(first, zero.clone()), (second, zero.clone())]
    });
    r.run("gl-commutator", &all4, |t| {
        let (i, j, k, l) = (t[0], t[1], t[2], t[3]);
        let rhs = &(&(&e[i][l] * &s[j][k]) - &(&s[i][l] * &e[k][j])) + &br(&s[k][l], &e[i][j]);
        vec![(br(&e[i][j], &e[k][l]), rhs)]
    });
    r.run("gl-commutator-cases", &tuples(n, 4, true), |t| {
        let (i, j, k, l) = (t[0], t[1], t[2], t[3]);
        vec![(br(&e[i][j], &e[k][l]), &(&e[i][l] * &s[j][k]) - &(&e[k][j] * &s[i][l]))]
    });
    r.run("gl-commutator-cases-3", &tuples(n, 3, true), |t| {
        let (i, j, k) = (t[0], t[1], t[2]);
        vec![
            (br(&e[i][i], &e[j][k]), &(&e[i][k] * &s[i][j]) - &(&e[j][k] * &s[i][k])),
            (
                br(&e[i][j], &e[j][k]),
                &(&(&e[i][k] * &s[j][j]) + &(&(&e[i][k] - &e[i][j]) * &s[j][k])) - &(&e[j][j] * &s[i][k]),
            ),
            (br(&e[i][j], &e[k][j]), &(&e[i][k] * &s[j][k]) - &(&e[k][i] * &s[i][j])),
            // conjugate of the previous line
            (br(&e[j][k], &e[j][i]), &(&s[j][k] * &e[k][i]) - &(&s[i][j] * &e[i][k])),
        ]
    });
    r.run("gl-commutator-cases-2", &tuples(n, 2, true), |t| {
        let (i, j) = (t[0], t[1]);
        let ii_jj = &e[i][i] - &e[j][j];
        let last = &(&(&e[i][i] * &s[j][j]) - &(&e[j][j] * &s[i][i])) + &(&(&(&ii_jj - &e[i][j]) + &e[j][i]) * &s[i][j]);
        vec![
            (br(&e[i][i], &e[j][j]), &ii_jj * &s[i][j]),
            (br(&e[i][i], &e[i][j]), &(&e[i][j] * &s[i][i]) - &(&e[i][i] * &s[i][j])),
            // conjugate of the previous line
            (br(&e[j][i], &e[i][i]), &(&s[i][i] * &e[j][i]) - &(&s[i][j] * &e[i][i])),
            (br(&e[i][j], &e[j][i]), last),
        ]
    });
}

fn so3_suite(r: &mut Runner, g: &Generators) {
    let ctx = &g.ctx;
    // M_1 = M_23, M_2 = M_31, M_3 = M_12 and likewise for S
    let mv = [g.m(1, 2).clone(), g.m(2, 0).clone(), g.m(0, 1).clone()];
    let sv = [g.s(1, 2).clone(), g.s(2, 0).clone(), g.s(0, 1).clone()];
    let g0 = ctx.multiplicities().orbit_value(0);
    let gsq = PbwElement::scalar(ctx, g0 * g0);
    let zero = PbwElement::zero(ctx);
    let cyc = tuples(1, 1, false).into_iter().chain([vec![1], vec![2]]).collect::<Vec<_>>();
    r.run("so3-s", &cyc, |t| {
        let a = t[0];
        let (b, c) = ((a + 1) % 3, (a + 2) % 3);
        vec![
            (&sv[a] * &sv[b], &sv[c] * &sv[a]),
            (&sv[a] * &sv[a], gsq.clone()),
            (anti(&sv[a], &mv[a]), zero.clone()),
            (&sv[a] * &mv[b], -&(&mv[c] * &sv[a])),
            (&sv[a] * &mv[c], -&(&mv[b] * &sv[a])),
        ]
    });
    r.run("so3-commutator", &cyc, |t| {
        let a = t[0];
        let (b, c) = ((a + 1) % 3, (a + 2) % 3);
        let lhs = br(&mv[a], &mv[b]);
        let first = &(&-&mv[c] + &(&(&mv[c] - &mv[b]) * &sv[a])) + &(&(&mv[c] - &mv[a]) * &sv[b]);
        let second = &-&mv[c] + &anti(&mv[c], &(&sv[a] + &sv[b]));
        vec![(lhs.clone(), first), (lhs, second)]
    });
    let s = &(&sv[0] + &sv[1]) + &sv[2];
    let casimir = &(&(&(&mv[0] * &mv[0]) + &(&mv[1] * &mv[1])) + &(&mv[2] * &mv[2]))
        - &(&s * &(&s - &PbwElement::one(ctx)));
    r.run("so3-casimir", &cyc, |t| vec![(br(&casimir, &mv[t[0]]), zero.clone()), (br(&casimir, &sv[t[0]]), zero.clone())]);
}

fn coxeter_suite(r: &mut Runner, g: &Generators, n: usize, with_equivariance: bool) {
    let ctx = &g.ctx;
    let (m, s) = (&g.m, &g.s);
    let all4 = tuples(n, 4, false);
    // xi, eta, phi, psi = e_i, e_j, e_k, e_l
    r.run("coxeter-commutator", &all4, |t| {
        let (i, j, k, l) = (t[0], t[1], t[2], t[3]);
        let rhs = &(&(&m[i][l] * &s[j][k]) + &(&m[j][k] * &s[i][l])) - &(&(&m[i][k] * &s[j][l]) + &(&m[j][l] * &s[i][k]));
        vec![(br(&m[i][j], &m[k][l]), rhs)]
    });
    r.run("coxeter-crossing", &all4, |t| {
        let (i, j, k, l) = (t[0], t[1], t[2], t[3]);
        let lhs = &(&(&m[i][j] * &m[k][l]) + &(&m[j][k] * &m[i][l])) + &(&m[k][i] * &m[j][l]);
        let rhs = &(&(&m[k][i] * &s[j][l]) + &(&m[i][j] * &s[k][l])) + &(&m[j][k] * &s[i][l]);
        vec![(lhs, rhs)]
    });
    if !with_equivariance {
        return;
    }
    let group = ctx.group();
    let nroots = ctx.root_system().positive_roots().len();
    let mut inst = Vec::new();
    for a in 0..nroots {
        for i in 0..n {
            for j in i + 1..n {
                inst.push(vec![a, i, j]);
            }
        }
    }
    r.run("coxeter-equivariance", &inst, |t| {
        let (a, i, j) = (t[0], t[1], t[2]);
        let w = group.reflection(a);
        let we = PbwElement::group_element(ctx, w);
        let wxi = group.apply(w, &unit(n, i));
        let weta = group.apply(w, &unit(n, j));
        let rhs = &angular_momentum(ctx, &wxi, &weta) * &we;
        vec![(&we * &m[i][j], rhs)]
    });
    // bilinearity and antisymmetry, on a fixed pair of generic directions
    let xi: Vec<Rat> = (0..n).map(|i| Rat::new(i as i64 + 1, 1)).collect();
    let eta: Vec<Rat> = (0..n).map(|i| Rat::new(2 - i as i64 * i as i64, 3)).collect();
    r.run("coxeter-bilinear", &[vec![]], |_| {
        let direct = angular_momentum(ctx, &xi, &eta);
        let mut sum = PbwElement::zero(ctx);
        for i in 0..n {
            for j in 0..n {
                sum = &sum + &m[i][j].scale(&CoeffPoly::constant(&xi[i] * &eta[j]));
            }
        }
        vec![(direct.clone(), sum), (direct, -&angular_momentum(ctx, &eta, &xi))]
    });
}

fn decomposition_suite(r: &mut Runner, ctx: &Arc<Context>) {
    let n = ctx.rank() as i64;
    let x2 = x_squared(ctx);
    let h = hamiltonian_h(ctx);
    let d2 = h.scale(&CoeffPoly::int(-2));
    let eu = euler(ctx);
    let s = s_sum(ctx);
    let shift = |k: i64| PbwElement::scalar(ctx, CoeffPoly::int(k));
    let msq = m_squared(ctx);
    r.run("angular-square", &[vec![]], |_| {
        let rhs = &(&(&x2 * &d2) - &(&eu * &eu)) + &(&(&s.scale(&CoeffPoly::int(2)) + &shift(2 - n)) * &eu);
        vec![(msq.clone(), rhs)]
    });
    // x^2 H = H_Omega - 1/2 R (R + N - 2) with the radial Euler operator R = sum x_i D_i - S
    r.run("radial-decomposition", &[vec![]], |_| {
        let radial = &eu - &s;
        let rhs = &angular_hamiltonian(ctx) - &(&radial * &(&radial + &shift(n - 2))).scale_rat(&Rat::new(1, 2));
        vec![(&x2 * &h, rhs), (br(&eu, &s), PbwElement::zero(ctx))]
    });
}

fn centre_suite(r: &mut Runner, g: &Generators, n: usize) {
    let ctx = &g.ctx;
    let zero = PbwElement::zero(ctx);
    let pairs: Vec<Vec<usize>> = tuples(n, 2, false).into_iter().filter(|t| t[0] < t[1]).collect();
    let ho = angular_hamiltonian(ctx);
    r.run("angular-hamiltonian-m", &pairs, |t| vec![(br(&ho, &g.m[t[0]][t[1]]), zero.clone())]);
    let refl: Vec<Vec<usize>> = (0..ctx.root_system().positive_roots().len()).map(|a| vec![a]).collect();
    r.run("angular-hamiltonian-w", &refl, |t| {
        let w = PbwElement::group_element(ctx, ctx.group().reflection(t[0]));
        vec![(br(&ho, &w), zero.clone())]
    });
    let h = hamiltonian_h(ctx);
    let x2 = x_squared(ctx);
    r.run("hamiltonian-m", &pairs, |t| vec![(br(&h, &g.m[t[0]][t[1]]), zero.clone())]);
    r.run("x-squared-m", &pairs, |t| vec![(br(&x2, &g.m[t[0]][t[1]]), zero.clone())]);
    if ctx.root_system().family() == Family::A {
        let rh = rho(ctx);
        r.run("rho-e", &tuples(n, 2, false), |t| vec![(br(&rh, &g.e[t[0]][t[1]]), zero.clone())]);
        r.run("rho-w", &refl, |t| {
            let w = PbwElement::group_element(ctx, ctx.group().reflection(t[0]));
            vec![(br(&rh, &w), zero.clone())]
        });
        r.run("rho-hamiltonian", &[vec![]], |_| {
            let rhs = &(&h + &x2.scale_rat(&Rat::new(1, 2))) - &PbwElement::scalar(ctx, CoeffPoly::constant(Rat::new(n as i64, 2)));
            vec![(rh.clone(), rhs)]
        });
    }
}
