use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use qcurv::arithmetic::chi::{chi_bounds, chi_truncated, ChiContext};
use qcurv::arithmetic::curvature::{curvature_scan, CurvatureStatus, ScanOptions};
use qcurv::arithmetic::size::{compare_kappa_profiles, kappa_sum_partial, size_partial, SizeTarget};
use qcurv::classify::{
    antidiagonal_instance, curvature_membership, galois_antidiagonal2, galois_rank1, galois_triangular2,
    rank1_instance, schwarz_algebraic, triangular_instance, HypergeomParams,
};
use qcurv::exact::{RatFun, Rational};
use qcurv::qcalc::{dq, q_binomial, q_factorial, q_int, q_pochhammer};
use qcurv::qmodule::{casorati_rank, cyclic_vector, formal_solution, QDiffSystem};
use qcurv::solver::{grothendieck_test, rational_solutions, SolverError, Verdict};

use crate::parse::{parse_matrix, parse_qparam, parse_ratfun, parse_rational, parse_scaled};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "qcurv", version, about = "Exact computations with q-difference systems Y(qx) = Y(x) A(x)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct SystemArgs {
    /// q as a rational literal; overrides the input document.
    #[arg(long)]
    pub q: Option<String>,
    /// Matrix A as a JSON array of arrays of expression strings.
    #[arg(long)]
    pub system: Option<String>,
    /// Input document {"q": ..., "system": [[...]]}; "-" reads stdin. Stdin is also used when
    /// neither --system nor --input is given.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModulusArg {
    P,
    PEll,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Rank1,
    Triangular,
    Antidiagonal,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SizeKind {
    Series,
    System,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Curvature of Phi^kappa modulo p and p^ell at every good strong prime.
    CurvatureScan {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, default_value_t = 200)]
        pmax: u64,
        /// Show a single reduction.
        #[arg(long, value_enum)]
        modulus: Option<ModulusArg>,
        #[arg(long)]
        jobs: Option<usize>,
        /// Include good primes that are not strong.
        #[arg(long)]
        include_weak: bool,
    },
    /// Rational solution basis by series reconstruction and exact verification.
    RationalSolve {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, default_value_t = 30)]
        degree_cap: usize,
        #[arg(long, default_value_t = 200)]
        terms: usize,
    },
    /// Curvature scan against rational solving.
    Grothendieck {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, default_value_t = 200)]
        pmax: u64,
        #[arg(long, default_value_t = 30)]
        degree_cap: usize,
        #[arg(long, default_value_t = 200)]
        terms: usize,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Rational and algebraic bases of the basic hypergeometric equation.
    Schwarz {
        #[arg(long)]
        q: String,
        /// a as a rational or q^(e/d).
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
    },
    /// Generic Galois group of a rank one, triangular or antidiagonal system.
    Galois {
        #[arg(long)]
        q: String,
        #[arg(long, value_enum)]
        family: Family,
        /// Lower left entry of the triangular family.
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        /// Rank one coefficient, or lower right entry of the triangular family.
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        /// Lower left entry of the antidiagonal family.
        #[arg(long, allow_hyphen_values = true)]
        r: Option<String>,
        #[arg(long, default_value_t = 24)]
        dcap: u64,
        /// Check curvature membership at good strong primes up to this bound.
        #[arg(long)]
        check_pmax: Option<u64>,
    },
    /// Truncated radius estimate and closed-form bounds at a prime.
    Chi {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 200)]
        terms: usize,
    },
    /// Rank of the Casorati matrix of functions.
    Casorati {
        #[arg(long)]
        q: String,
        /// Functions of x; put them after `--` when one starts with '-'.
        functions: Vec<String>,
    },
    /// Cyclic vector and companion form.
    CyclicVector {
        #[command(flatten)]
        sys: SystemArgs,
    },
    /// qint(n), qfact(n), qbinom(n,k), qpoch(a,n) or dq(expr).
    QcalcEval {
        #[arg(long)]
        q: String,
        expr: String,
    },
    /// Partial size sum (1/N) sum_v h(N, v).
    Size {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, value_enum, default_value_t = SizeKind::Series)]
        target: SizeKind,
        #[arg(long, default_value_t = 50)]
        terms: usize,
        #[arg(long, default_value_t = 200)]
        pmax: u64,
    },
    /// Partial sums of log p / (kappa_p (p - 1)).
    KappaSum {
        #[arg(long)]
        q: String,
        #[arg(long, default_value_t = 200)]
        pmax: u64,
        /// Compare the orders of q and this value prime by prime.
        #[arg(long)]
        compare: Option<String>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::CurvatureScan { .. } => "curvature-scan",
            Command::RationalSolve { .. } => "rational-solve",
            Command::Grothendieck { .. } => "grothendieck",
            Command::Schwarz { .. } => "schwarz",
            Command::Galois { .. } => "galois",
            Command::Chi { .. } => "chi",
            Command::Casorati { .. } => "casorati",
            Command::CyclicVector { .. } => "cyclic-vector",
            Command::QcalcEval { .. } => "qcalc-eval",
            Command::Size { .. } => "size",
            Command::KappaSum { .. } => "kappa-sum",
        }
    }
}

/// Text for the terminal and the JSON report.
pub struct Output {
    pub text: String,
    pub report: Value,
}

#[derive(Deserialize)]
struct InputDoc {
    q: Option<serde_json::Value>,
    system: Vec<Vec<crate::parse::Entry>>,
}

fn load_system(a: &SystemArgs) -> Result<(QDiffSystem, BTreeMap<String, String>)> {
    let (q_doc, rows): (Option<String>, String) = match (&a.system, &a.input) {
        (Some(s), _) => (None, s.clone()),
        (None, input) => {
            let mut buf = String::new();
            match input {
                Some(p) if p.as_os_str() != "-" => {
                    buf = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?
                }
                _ => {
                    std::io::stdin().read_to_string(&mut buf)?;
                }
            }
            let doc: InputDoc = serde_json::from_str(&buf).context("input document")?;
            let q = doc.q.map(|v| match v {
                Value::String(s) => s,
                other => other.to_string(),
            });
            (q, serde_json::to_string(&doc.system)?)
        }
    };
    let q_txt = a.q.clone().or(q_doc).ok_or_else(|| anyhow!("q is required (--q or the input document)"))?;
    let q = parse_rational(&q_txt)?;
    let m = parse_matrix(&rows)?;
    let s = QDiffSystem::new(q, m)?;
    let mut inputs = BTreeMap::new();
    inputs.insert("system".to_string(), s.canonical_text());
    Ok((s, inputs))
}

fn inputs_hash(command: &str, inputs: &BTreeMap<String, String>) -> String {
    let mut h = Sha256::new();
    h.update(command.as_bytes());
    for (k, v) in inputs {
        h.update(b"\n");
        h.update(k.as_bytes());
        h.update(b"=");
        h.update(v.as_bytes());
    }
    hex::encode(h.finalize())
}

fn envelope(command: &str, q: &str, inputs: &BTreeMap<String, String>, result: Value) -> Value {
    json!({
        "tool_version": TOOL_VERSION,
        "command": command,
        "q": q,
        "inputs_hash": inputs_hash(command, inputs),
        "result": result,
    })
}

fn status_text(s: &CurvatureStatus) -> String {
    match s {
        CurvatureStatus::Identity => "identity".into(),
        CurvatureStatus::Unipotent(n) => format!("unipotent({n})"),
        CurvatureStatus::Other => "other".into(),
        CurvatureStatus::BadPrime => "bad-prime".into(),
    }
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::ConsistentTrivial => "consistent_trivial".into(),
        Verdict::ConsistentNontrivial => "consistent_nontrivial".into(),
        Verdict::Inconsistent { details } => format!("inconsistent: {details}"),
        Verdict::Inconclusive { degree_cap, reason } => format!("inconclusive (degree cap {degree_cap}): {reason}"),
    }
}

fn ints(args: &str) -> Result<Vec<i64>> {
    args.split(',').map(|a| a.trim().parse::<i64>().map_err(|e| anyhow!("bad integer '{a}': {e}"))).collect()
}

fn nonneg(v: i64) -> Result<u64> {
    u64::try_from(v).map_err(|_| anyhow!("argument must be nonnegative"))
}

fn qcalc_eval(q: &Rational, expr: &str) -> Result<String> {
    let e = expr.trim();
    let open = e.find('(').ok_or_else(|| anyhow!("expected name(args)"))?;
    if !e.ends_with(')') {
        bail!("expected ')' at position {}", e.len());
    }
    let name = e[..open].trim();
    let args = &e[open + 1..e.len() - 1];
    Ok(match name {
        "qint" => {
            let v = ints(args)?;
            q_int(v[0], q).to_string()
        }
        "qfact" => {
            let v = ints(args)?;
            q_factorial(nonneg(v[0])?, q).to_string()
        }
        "qbinom" => {
            let v = ints(args)?;
            if v.len() != 2 {
                bail!("qbinom takes two arguments");
            }
            q_binomial(nonneg(v[0])?, nonneg(v[1])?, q).to_string()
        }
        "qpoch" => {
            let (a, n) = args.rsplit_once(',').ok_or_else(|| anyhow!("qpoch takes two arguments"))?;
            let n: u64 = n.trim().parse()?;
            q_pochhammer(&parse_rational(a)?, n, q).to_string()
        }
        "dq" => dq(&parse_ratfun(args)?, q).to_string(),
        other => bail!("unknown function '{other}'"),
    })
}

pub fn run(cli: &Cli) -> Result<Output> {
    let cmd = cli.command.name();
    let mut text = String::new();
    let (q_str, inputs, result): (String, BTreeMap<String, String>, Value) = match &cli.command {
        Command::CurvatureScan { sys, pmax, modulus, jobs, include_weak } => {
            let (s, mut inputs) = load_system(sys)?;
            inputs.insert("pmax".into(), pmax.to_string());
            inputs.insert("include_weak".into(), include_weak.to_string());
            let rep = curvature_scan(&s, *pmax, ScanOptions { include_weak: *include_weak, jobs: *jobs });
            writeln!(text, "system {} q={} pmax={}", &rep.system_hash[..12], rep.q, rep.pmax)?;
            let (show_p, show_pl) = match modulus {
                None => (true, true),
                Some(ModulusArg::P) => (true, false),
                Some(ModulusArg::PEll) => (false, true),
            };
            write!(text, "{:>6} {:>6} {:>4} {:>6}", "p", "kappa", "ell", "strong")?;
            if show_p {
                write!(text, " {:>14}", "mod p")?;
            }
            if show_pl {
                write!(text, " {:>14}", "mod p^ell")?;
            }
            writeln!(text)?;
            for e in &rep.entries {
                write!(text, "{:>6} {:>6} {:>4} {:>6}", e.p, e.kappa, e.ell, if e.strong { "yes" } else { "no" })?;
                if show_p {
                    write!(text, " {:>14}", status_text(&e.mod_p))?;
                }
                if show_pl {
                    write!(text, " {:>14}", status_text(&e.mod_p_ell))?;
                }
                writeln!(text)?;
            }
            let s = &rep.summary;
            writeln!(
                text,
                "summary (mod p^ell): identity {} unipotent {} other {} bad {}; skipped {}",
                s.identity,
                s.unipotent,
                s.other,
                s.bad,
                rep.skipped.len()
            )?;
            let bad = rep.bad_primes();
            if !bad.is_empty() {
                writeln!(text, "bad primes: {bad:?}")?;
            }
            (s_q(&rep.q), inputs, serde_json::to_value(&rep)?)
        }
        Command::RationalSolve { sys, degree_cap, terms } => {
            let (s, mut inputs) = load_system(sys)?;
            inputs.insert("degree_cap".into(), degree_cap.to_string());
            inputs.insert("terms".into(), terms.to_string());
            let result = match rational_solutions(&s, *degree_cap, *terms) {
                Ok(Some(b)) => {
                    writeln!(text, "verified rational basis ({} solutions):", b.solutions.len())?;
                    for y in &b.solutions {
                        let strs: Vec<String> = y.iter().map(|f| f.to_string()).collect();
                        writeln!(text, "  [{}]", strs.join(", "))?;
                    }
                    writeln!(text, "certificate det = {}", b.certificate)?;
                    json!({"outcome": "basis", "basis": b})
                }
                Ok(None) => {
                    writeln!(text, "no full rational basis exists")?;
                    json!({"outcome": "none"})
                }
                Err(SolverError::Inconclusive(c)) => {
                    writeln!(text, "inconclusive: no basis reconstructed at degree cap {c}")?;
                    json!({"outcome": "inconclusive", "degree_cap": c})
                }
                Err(e) => return Err(e.into()),
            };
            (s.q().to_string(), inputs, result)
        }
        Command::Grothendieck { sys, pmax, degree_cap, terms, jobs } => {
            let (s, mut inputs) = load_system(sys)?;
            inputs.insert("pmax".into(), pmax.to_string());
            inputs.insert("degree_cap".into(), degree_cap.to_string());
            inputs.insert("terms".into(), terms.to_string());
            let rep = grothendieck_test(&s, *pmax, *degree_cap, *terms, ScanOptions { include_weak: false, jobs: *jobs });
            writeln!(text, "verdict: {}", verdict_text(&rep.verdict))?;
            let sm = &rep.scan.summary;
            writeln!(
                text,
                "scan up to {}: identity {} unipotent {} other {} bad {}",
                pmax, sm.identity, sm.unipotent, sm.other, sm.bad
            )?;
            for y in &rep.solutions {
                writeln!(text, "  solution [{}]", y.join(", "))?;
            }
            (s.q().to_string(), inputs, serde_json::to_value(&rep)?)
        }
        Command::Schwarz { q, a, b, c } => {
            let qv = parse_rational(q)?;
            let p = HypergeomParams::new(parse_qparam(a)?, parse_qparam(b)?, parse_qparam(c)?, qv.clone())?;
            let inputs: BTreeMap<String, String> =
                [("a", &p.a), ("b", &p.b), ("c", &p.c)].iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
            let v = schwarz_algebraic(&p);
            writeln!(text, "a={} b={} c={} q={}", p.a, p.b, p.c, qv)?;
            writeln!(text, "rational basis: {}", v.rational_basis)?;
            writeln!(text, "algebraic basis: {}", v.algebraic_basis)?;
            writeln!(text, "logarithmic at 0: {}  at infinity: {}", v.log_zero, v.log_infinity)?;
            if let Some(e) = &v.witness.exponents {
                writeln!(text, "exponents: ({}, {}, {})", e[0], e[1], e[2])?;
            }
            if let Some(f) = &v.witness.failing {
                writeln!(text, "failing condition: {f}")?;
            }
            for n in &v.notes {
                writeln!(text, "note: {n}")?;
            }
            (qv.to_string(), inputs, serde_json::to_value(&v)?)
        }
        Command::Galois { q, family, a, b, r, dcap, check_pmax } => {
            let qv = parse_rational(q)?;
            let need = |o: &Option<String>, n: &str| o.clone().ok_or_else(|| anyhow!("--{n} is required for this family"));
            let mut inputs = BTreeMap::new();
            inputs.insert("family".to_string(), format!("{family:?}"));
            inputs.insert("dcap".to_string(), dcap.to_string());
            let (group, instance) = match family {
                Family::Rank1 => {
                    let bs = parse_scaled(&need(b, "b")?)?;
                    inputs.insert("b".into(), format!("q^({})*({})", bs.qexp, bs.f));
                    let g = galois_rank1(&bs, &qv, *dcap);
                    let inst = bs.to_ratfun(&qv).map(|f| rank1_instance(&f, &qv, *dcap)).transpose()?;
                    (g, inst)
                }
                Family::Triangular => {
                    let av = parse_ratfun(a.as_deref().unwrap_or("1"))?;
                    let bs = parse_scaled(&need(b, "b")?)?;
                    inputs.insert("a".into(), av.to_string());
                    inputs.insert("b".into(), format!("q^({})*({})", bs.qexp, bs.f));
                    let g = galois_triangular2(&av, &bs, &qv, *dcap)?;
                    let inst = bs.to_ratfun(&qv).map(|f| triangular_instance(&av, &f, &qv, *dcap)).transpose()?;
                    (g, inst)
                }
                Family::Antidiagonal => {
                    let rs = parse_scaled(&need(r, "r")?)?;
                    inputs.insert("r".into(), format!("q^({})*({})", rs.qexp, rs.f));
                    let g = galois_antidiagonal2(&rs, &qv, *dcap);
                    let inst = rs.to_ratfun(&qv).map(|f| antidiagonal_instance(&f, &qv, *dcap)).transpose()?;
                    (g, inst)
                }
            };
            writeln!(text, "group: {}", serde_json::to_string(&group)?)?;
            let mut result = json!({ "group": group, "dcap": dcap });
            if let Some(pm) = check_pmax {
                inputs.insert("check_pmax".into(), pm.to_string());
                match instance {
                    Some(inst) => {
                        let rep = curvature_membership(&inst, *pm);
                        writeln!(
                            text,
                            "curvature membership up to {pm}: {} ({} primes checked, failures {:?})",
                            if rep.holds() { "holds" } else { "fails" },
                            rep.checked.len(),
                            rep.failures
                        )?;
                        result["membership"] = serde_json::to_value(&rep)?;
                    }
                    None => writeln!(text, "curvature membership skipped: coefficient not in Q(x)")?,
                }
            }
            (qv.to_string(), inputs, result)
        }
        Command::Chi { sys, p, terms } => {
            let (s, mut inputs) = load_system(sys)?;
            inputs.insert("p".into(), p.to_string());
            inputs.insert("terms".into(), terms.to_string());
            let est = chi_truncated(&s, *p, *terms)?;
            let bounds = chi_bounds(&s, *p, &ChiContext::default())?;
            writeln!(
                text,
                "p={} kappa={} ell={} strong={}",
                p, bounds.profile.kappa, bounds.profile.ell, bounds.profile.strong
            )?;
            writeln!(
                text,
                "log_p chi at N={}: {} (~{:.6})",
                terms,
                est.log_chi,
                qcurv::exact::rational::to_f64(&est.log_chi)
            )?;
            for b in &bounds.bounds {
                let up = b.upper.as_ref().map(|u| format!(", upper {u}")).unwrap_or_default();
                writeln!(text, "bound {:?} {:?}: {}{}", b.kind, b.relation, b.lower, up)?;
            }
            for sk in &bounds.skipped {
                writeln!(text, "skipped {}: {}", sk.kind, sk.reason)?;
            }
            (s.q().to_string(), inputs, json!({ "estimate": est, "bounds": bounds }))
        }
        Command::Casorati { q, functions } => {
            let qv = parse_rational(q)?;
            let fs: Vec<RatFun> = functions.iter().map(|f| parse_ratfun(f)).collect::<Result<_, _>>()?;
            let rank = casorati_rank(&fs, &qv);
            writeln!(text, "casorati rank: {rank}")?;
            let inputs: BTreeMap<String, String> =
                fs.iter().enumerate().map(|(i, f)| (format!("f{i:03}"), f.to_string())).collect();
            (qv.to_string(), inputs, json!({ "rank": rank, "functions": fs.iter().map(|f| f.to_string()).collect::<Vec<_>>() }))
        }
        Command::CyclicVector { sys } => {
            let (s, inputs) = load_system(sys)?;
            let cv = cyclic_vector(&s)?;
            let v: Vec<String> = cv.vector.iter().map(|f| f.to_string()).collect();
            writeln!(text, "cyclic vector: [{}]", v.join(", "))?;
            writeln!(text, "certificate det: {}", cv.certificate)?;
            writeln!(text, "companion: {}", cv.companion)?;
            (
                s.q().to_string(),
                inputs,
                json!({
                    "vector": v,
                    "certificate": cv.certificate.to_string(),
                    "companion": cv.companion.to_strings(),
                    "basis": cv.basis.to_strings(),
                }),
            )
        }
        Command::QcalcEval { q, expr } => {
            let qv = parse_rational(q)?;
            let v = qcalc_eval(&qv, expr)?;
            writeln!(text, "{v}")?;
            let mut inputs = BTreeMap::new();
            inputs.insert("expr".to_string(), expr.trim().to_string());
            (qv.to_string(), inputs, json!({ "value": v }))
        }
        Command::Size { sys, target, terms, pmax } => {
            let (s, mut inputs) = load_system(sys)?;
            inputs.insert("target".into(), format!("{target:?}"));
            inputs.insert("terms".into(), terms.to_string());
            inputs.insert("pmax".into(), pmax.to_string());
            let rep = match target {
                SizeKind::Series => {
                    let y = formal_solution(&s, *terms)?;
                    size_partial(SizeTarget::Series(&y), *terms, *pmax)
                }
                SizeKind::System => size_partial(SizeTarget::System(&s), *terms, *pmax),
            };
            writeln!(text, "partial size at N={} pmax={}: {:.6}", rep.n, rep.pmax, rep.partial_sum)?;
            for c in rep.contributions.iter().filter(|c| c.value != 0.0) {
                writeln!(text, "  {:>6}: {:.6}", c.place, c.value)?;
            }
            (s.q().to_string(), inputs, serde_json::to_value(&rep)?)
        }
        Command::KappaSum { q, pmax, compare } => {
            let qv = parse_rational(q)?;
            let mut inputs = BTreeMap::new();
            inputs.insert("pmax".to_string(), pmax.to_string());
            let ks = kappa_sum_partial(&qv, *pmax);
            writeln!(text, "sum over good p <= {}: {:.9} ({} primes)", pmax, ks.total, ks.rows.len())?;
            let mut result = json!({ "total": ks.total, "rows": ks.rows });
            if let Some(c) = compare {
                let q2 = parse_rational(c)?;
                inputs.insert("compare".into(), q2.to_string());
                let cmp = compare_kappa_profiles(&qv, &q2, *pmax);
                writeln!(
                    text,
                    "orders of {} and {}: {} over {} primes",
                    qv,
                    q2,
                    if cmp.equal { "equal" } else { "differ" },
                    cmp.compared
                )?;
                result["comparison"] = serde_json::to_value(&cmp)?;
            }
            (qv.to_string(), inputs, result)
        }
    };
    let report = envelope(cmd, &q_str, &inputs, result);
    Ok(Output { text, report })
}

fn s_q(q: &str) -> String {
    q.to_string()
}
