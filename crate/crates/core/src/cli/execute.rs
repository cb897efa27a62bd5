//! Command dispatch. Every command produces a JSON report plus a short
//! human-readable rendering.

use std::collections::BTreeSet;
use std::str::FromStr;

use serde_json::{json, Value};

use super::parser::parse_order_text;
use super::problem::{ProblemFile, Target};
use super::{CliError, EXIT_OK, EXIT_VERIFICATION, SCHEMA_VERSION};
use crate::backend::{associated_primes, oracle_ass, BackendError, ModuleBackend};
use crate::decomposition::{direct_sum_decompose, DecompositionError};
use crate::equivalence::{all_extensions_equivalent, swap_adjacent, EquivalenceError};
use crate::filtration::{
    build_coprimary_filtration, permutation_stability, verify_filtration, Check, Filtration, FiltrationError,
    OrderChoice, VerificationReport,
};
use crate::omega::{alternative_chain_prefix, canonical_omega_prefix, omega_verify, symbolic_ass, CofiniteZModule};
use crate::poset::{build_specialization_poset, linear_extensions, rank_function, PosetError};
use crate::ring::{PrimeIdealRef, RingSpec};
use crate::with_backend;

pub const DEFAULT_PREFIX: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Ass,
    Filt,
    Verify,
    Equiv,
    Swap,
    Extensions,
    Decompose,
    Oracle,
    Omega,
}

impl Command {
    pub const ALL: [Command; 9] = [
        Command::Ass,
        Command::Filt,
        Command::Verify,
        Command::Equiv,
        Command::Swap,
        Command::Extensions,
        Command::Decompose,
        Command::Oracle,
        Command::Omega,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Command::Ass => "ass",
            Command::Filt => "filt",
            Command::Verify => "verify",
            Command::Equiv => "equiv",
            Command::Swap => "swap",
            Command::Extensions => "extensions",
            Command::Decompose => "decompose",
            Command::Oracle => "oracle",
            Command::Omega => "omega",
        }
    }
}

impl FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Command::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| CliError::usage(format!("unknown command `{s}`")))
    }
}

/// Flags from the command line; unset ones fall back to `param` lines.
#[derive(Clone, Debug, Default)]
pub struct CommandOptions {
    pub order: Option<String>,
    pub seed: Option<u64>,
    pub max_extensions: Option<usize>,
    pub prefix: Option<usize>,
    pub module: Option<String>,
    pub index: Option<usize>,
    pub alternative: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub exit_code: i32,
    pub report: Value,
    pub text: String,
}

struct Run {
    result: Value,
    verification: Option<Value>,
    ok: bool,
    text: Vec<String>,
}

fn param<T: FromStr>(problem: &ProblemFile, flag: Option<T>, key: &str) -> Result<Option<T>, CliError> {
    if flag.is_some() {
        return Ok(flag);
    }
    match problem.params.get(key) {
        None => Ok(None),
        Some(v) => v
            .parse()
            .map(Some)
            .map_err(|_| CliError::usage(format!("parameter `{key}` has invalid value `{v}`"))),
    }
}

fn primes_json(ring: &RingSpec, ps: &BTreeSet<PrimeIdealRef>) -> Value {
    json!(ps.iter().map(|p| ring.prime_generators(p)).collect::<Vec<_>>())
}

fn primes_text(ring: &RingSpec, ps: impl IntoIterator<Item = PrimeIdealRef>) -> String {
    let parts: Vec<String> = ps.into_iter().map(|p| ring.format_prime(&p)).collect();
    format!("{{{}}}", parts.join(","))
}

fn backend_error(e: BackendError) -> CliError {
    match e {
        BackendError::Postcondition(_) => CliError::verification(e.to_string(), None),
        other => CliError::unsupported(other.to_string()),
    }
}

fn poset_error(e: PosetError) -> CliError {
    CliError::unsupported(e.to_string())
}

fn filtration_error(e: FiltrationError) -> CliError {
    match e {
        FiltrationError::Backend(b) => backend_error(b),
        other => CliError::unsupported(other.to_string()),
    }
}

fn equivalence_error(e: EquivalenceError) -> CliError {
    match e {
        EquivalenceError::Filtration(f) => filtration_error(f),
        EquivalenceError::Backend(b) => backend_error(b),
        other => CliError::unsupported(other.to_string()),
    }
}

fn decomposition_error(e: DecompositionError) -> CliError {
    match &e {
        DecompositionError::NotComaximal { witness, .. } => {
            CliError::verification(e.to_string(), Some(json!({ "witness": witness.to_json() })))
        }
        DecompositionError::Certificate(_) => CliError::verification(e.to_string(), None),
        DecompositionError::Backend(b) => backend_error(b.clone()),
        _ => CliError::unsupported(e.to_string()),
    }
}

fn report_lines(report: &VerificationReport) -> Vec<String> {
    report
        .checks
        .iter()
        .map(|c| {
            let mark = if c.passed { "pass" } else { "FAIL" };
            match &c.witness {
                Some(w) => format!("  {mark} {}: {w}", c.name),
                None => format!("  {mark} {}", c.name),
            }
        })
        .collect()
}

fn filtration_lines<B: ModuleBackend>(m: &B, f: &Filtration<B>) -> Vec<String> {
    let ring = m.ring();
    let mut out = vec![format!(
        "order: {}",
        f.order().iter().map(|p| ring.format_prime(p)).collect::<Vec<_>>().join(" < ")
    )];
    for (i, t) in f.terms().iter().enumerate() {
        out.push(format!("M{i} = {}", m.describe_sub(t)));
        if let Some(s) = f.steps().get(i) {
            out.push(format!(
                "  M{i}/M{} ≅ {}, Ass {}",
                i + 1,
                s.invariants.describe(&ring),
                primes_text(&ring, s.quotient_ass.iter().cloned())
            ));
        }
    }
    out
}

fn run_ass<B: ModuleBackend>(m: &B) -> Result<Run, CliError> {
    let ring = m.ring();
    let ass = associated_primes(m, &m.whole(), &m.zero()).map_err(backend_error)?;
    Ok(Run {
        result: json!({
            "ass": primes_json(&ring, &ass),
            "coprimary": ass.len() == 1,
            "invariants": m.invariants(&m.whole(), &m.zero()).describe(&ring),
        }),
        verification: None,
        ok: true,
        text: vec![format!("Ass(M) = {}", primes_text(&ring, ass))],
    })
}

fn run_filt<B: ModuleBackend>(m: &B, order: &OrderChoice) -> Result<Run, CliError> {
    let f = build_coprimary_filtration(m, order).map_err(filtration_error)?;
    let report = verify_filtration(m, f.terms(), f.order()).map_err(filtration_error)?;
    let ring = m.ring();
    let chain: Vec<Vec<String>> = (1..=f.len()).map(|i| ring.prime_generators(f.chain_prime(i))).collect();
    let mut result = f.to_json(m);
    result["chain_primes"] = json!(chain);
    let mut text = filtration_lines(m, &f);
    text.push("verification:".into());
    text.extend(report_lines(&report));
    Ok(Run {
        result,
        ok: report.all_passed(),
        verification: Some(report.to_json()),
        text,
    })
}

fn run_verify<B: ModuleBackend>(m: &B, order: &OrderChoice, seed: u64) -> Result<Run, CliError> {
    let f = build_coprimary_filtration(m, order).map_err(filtration_error)?;
    let mut report = verify_filtration(m, f.terms(), f.order()).map_err(filtration_error)?;
    let stable = permutation_stability(m, &OrderChoice::Explicit(f.order().to_vec()), seed).map_err(filtration_error)?;
    report.checks.push(if stable {
        Check::pass("permutation_stability", Some(format!("seed {seed}")))
    } else {
        Check::fail("permutation_stability", format!("seed {seed} gives a different chain"))
    });
    let ring = m.ring();
    let mut text = vec![format!(
        "order: {}",
        f.order().iter().map(|p| ring.format_prime(p)).collect::<Vec<_>>().join(" < ")
    )];
    text.extend(report_lines(&report));
    Ok(Run {
        result: json!({
            "order": f.order().iter().map(|p| ring.prime_generators(p)).collect::<Vec<_>>(),
            "seed": seed,
            "stable": stable,
        }),
        ok: report.all_passed(),
        verification: Some(report.to_json()),
        text,
    })
}

fn run_equiv<B: ModuleBackend>(m: &B, cap: Option<usize>) -> Result<Run, CliError> {
    let r = all_extensions_equivalent(m, cap).map_err(equivalence_error)?;
    let ring = m.ring();
    let mut text: Vec<String> = r
        .extensions
        .iter()
        .enumerate()
        .map(|(i, e)| {
            format!(
                "extension {i}: {}",
                e.iter().map(|p| ring.format_prime(p)).collect::<Vec<_>>().join(" < ")
            )
        })
        .collect();
    text.extend(r.pairs.iter().map(|(a, b, v)| format!("  {a} vs {b}: {}", v.as_str())));
    text.push(format!(
        "hypothesis: {}; observed: {}",
        if r.hypothesis { "satisfied" } else { "not satisfied" },
        if r.all_equivalent { "equivalent" } else { "not equivalent" }
    ));
    Ok(Run {
        result: r.to_json(m),
        verification: None,
        ok: r.consistent,
        text,
    })
}

fn run_swap<B: ModuleBackend>(m: &B, order: &OrderChoice, index: Option<usize>) -> Result<Run, CliError> {
    let f = build_coprimary_filtration(m, order).map_err(filtration_error)?;
    let i = index.unwrap_or(f.len());
    let s = swap_adjacent(m, &f, i).map_err(equivalence_error)?;
    let mut report = verify_filtration(m, s.filtration.terms(), &s.order).map_err(filtration_error)?;
    let back = swap_adjacent(m, &s.filtration, i).map_err(equivalence_error)?;
    report.checks.push(if back.filtration.terms() == f.terms() {
        Check::pass("inverse_swap_restores", None)
    } else {
        Check::fail("inverse_swap_restores", "swapping back gives a different chain".into())
    });
    let mut text = vec![format!("swap at chain index {i}")];
    text.extend(filtration_lines(m, &s.filtration));
    text.push("verification:".into());
    text.extend(report_lines(&report));
    Ok(Run {
        result: json!({
            "index": i,
            "before": f.to_json(m),
            "after": s.filtration.to_json(m),
            "replacement": m.render_sub(&s.replacement),
        }),
        ok: report.all_passed(),
        verification: Some(report.to_json()),
        text,
    })
}

fn run_extensions<B: ModuleBackend>(m: &B, cap: Option<usize>) -> Result<Run, CliError> {
    let ring = m.ring();
    let ass: Vec<PrimeIdealRef> = m.ass(&m.whole(), &m.zero()).into_iter().collect();
    let poset = build_specialization_poset(&ring, &ass).map_err(poset_error)?;
    let ranks = rank_function(&poset);
    let ext = linear_extensions(&poset, cap).map_err(poset_error)?;
    let text = ext
        .iter()
        .map(|e| e.iter().map(|p| ring.format_prime(p)).collect::<Vec<_>>().join(" < "))
        .collect();
    Ok(Run {
        result: json!({
            "count": ext.len(),
            "extensions": ext.iter().map(|e| e.iter().map(|p| ring.prime_generators(p)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "ranks": ass.iter().map(|p| json!({"prime": ring.prime_generators(p), "rank": ranks[p]})).collect::<Vec<_>>(),
        }),
        verification: None,
        ok: true,
        text,
    })
}

fn run_decompose<B: ModuleBackend>(m: &B) -> Result<Run, CliError> {
    let d = direct_sum_decompose(m).map_err(decomposition_error)?;
    let ring = m.ring();
    let mut text: Vec<String> = d
        .components
        .iter()
        .map(|(p, c)| {
            format!(
                "{}-component: {} ≅ {}",
                ring.format_prime(p),
                m.describe_sub(c),
                m.invariants(c, &m.zero()).describe(&ring)
            )
        })
        .collect();
    text.extend(report_lines(&d.certificates));
    Ok(Run {
        result: d.to_json(m),
        ok: d.certificates.all_passed(),
        verification: Some(d.certificates.to_json()),
        text,
    })
}

fn run_oracle<B: ModuleBackend>(m: &B) -> Result<Run, CliError> {
    let ring = m.ring();
    let engine = m.ass(&m.whole(), &m.zero());
    let oracle = oracle_ass(m, &m.whole(), &m.zero()).map_err(backend_error)?;
    let agree = engine == oracle;
    Ok(Run {
        result: json!({
            "engine": primes_json(&ring, &engine),
            "oracle": primes_json(&ring, &oracle),
            "agree": agree,
        }),
        verification: None,
        ok: agree,
        text: vec![
            format!("engine: {}", primes_text(&ring, engine.clone())),
            format!("oracle: {}", primes_text(&ring, oracle.clone())),
            format!("agree: {agree}"),
        ],
    })
}

fn run_symbolic_ass(m: &CofiniteZModule) -> Run {
    match symbolic_ass(m) {
        Ok(a) => Run {
            result: json!({
                "ass": a.to_string(),
                "zero_prime": a.zero,
                "primes": a.primes.to_json(),
            }),
            verification: None,
            ok: true,
            text: vec![format!("Ass(M) = {a}")],
        },
        Err(_) => Run {
            result: json!({ "ass": "{}", "zero_prime": false, "primes": null }),
            verification: None,
            ok: true,
            text: vec!["Ass(M) = {}".into()],
        },
    }
}

fn run_omega(m: &CofiniteZModule, prefix: usize, alternative: bool) -> Result<Run, CliError> {
    if prefix == 0 {
        return Err(CliError::usage("--prefix must be at least 1"));
    }
    let chain = if alternative {
        if !m.same_submodule(&CofiniteZModule::omega_example()) {
            return Err(CliError::unsupported(
                "the alternative chain is defined for Z ⊕ Z ⊕ (⊕_p Z/p) only",
            ));
        }
        let mut c = vec![m.clone()];
        c.extend(alternative_chain_prefix(prefix - 1));
        c
    } else {
        canonical_omega_prefix(m, prefix)
    };
    let r = omega_verify(m, &chain).map_err(|e| CliError::unsupported(e.to_string()))?;
    let mut text: Vec<String> = chain.iter().enumerate().map(|(i, t)| format!("M^{i} = {}", t.describe())).collect();
    text.push("verification:".into());
    text.extend(report_lines(&r.report));
    text.push(format!(
        "intersection certificate: {}",
        if r.certificate.issued { "issued" } else { "not issued" }
    ));
    Ok(Run {
        result: json!({
            "chain": chain.iter().map(CofiniteZModule::to_json).collect::<Vec<_>>(),
            "kind": if alternative { "alternative" } else { "canonical" },
            "e_first_failure": r.tail_failure,
            "intersection_certificate": r.certificate.to_json(),
        }),
        ok: r.report.all_passed(),
        verification: Some(r.report.to_json()),
        text,
    })
}

fn order_choice(problem: &ProblemFile, flag: &Option<String>) -> Result<OrderChoice, CliError> {
    match flag.as_deref() {
        Some("canonical") => Ok(OrderChoice::Canonical),
        Some(text) => Ok(OrderChoice::Explicit(parse_order_text(text, &problem.ring)?)),
        None => Ok(problem
            .order
            .clone()
            .map_or(OrderChoice::Canonical, OrderChoice::Explicit)),
    }
}

pub fn execute_command(problem: &ProblemFile, command: Command, opts: &CommandOptions) -> Result<Outcome, CliError> {
    let seed = param(problem, opts.seed, "seed")?.unwrap_or(0);
    let cap = param(problem, opts.max_extensions, "max_extensions")?;
    let prefix = param(problem, opts.prefix, "prefix")?.unwrap_or(DEFAULT_PREFIX);
    let index = param(problem, opts.index, "index")?;
    let module = opts.module.clone().or_else(|| problem.params.get("module").cloned());
    let (name, target) = problem
        .resolve(module.as_deref())
        .ok_or_else(|| CliError::usage(format!("unknown module `{}`", module.unwrap_or_default())))?;
    let order = order_choice(problem, &opts.order)?;

    let run = match (&target, command) {
        (Target::Cofinite(m), Command::Ass) => run_symbolic_ass(m),
        (Target::Cofinite(m), Command::Omega) => run_omega(m, prefix, opts.alternative)?,
        (Target::Cofinite(_), c) => {
            return Err(CliError::unsupported(format!(
                "`{}` needs a finitely generated module",
                c.as_str()
            )))
        }
        (Target::Finite(_), Command::Omega) => {
            return Err(CliError::unsupported("`omega` needs a `cofinite` module"))
        }
        (Target::Finite(p), c) => with_backend!(p, m => match c {
            Command::Ass => run_ass(m)?,
            Command::Filt => run_filt(m, &order)?,
            Command::Verify => run_verify(m, &order, seed)?,
            Command::Equiv => run_equiv(m, cap)?,
            Command::Swap => run_swap(m, &order, index)?,
            Command::Extensions => run_extensions(m, cap)?,
            Command::Decompose => run_decompose(m)?,
            Command::Oracle => run_oracle(m)?,
            Command::Omega => unreachable!(),
        }),
    };

    let exit_code = if run.ok { EXIT_OK } else { EXIT_VERIFICATION };
    let decl = problem.module(&name).expect("resolved");
    let report = json!({
        "schema_version": SCHEMA_VERSION,
        "tool_version": env!("CARGO_PKG_VERSION"),
        "command": command.as_str(),
        "ring": problem.ring.to_string(),
        "module": { "name": name, "declaration": problem.render_decl(decl) },
        "problem": problem.to_text(),
        "result": run.result,
        "verification": run.verification,
        "exit_code": exit_code,
    });
    let mut text = vec![format!("module {name} = {}", problem.render_decl(decl))];
    text.extend(run.text);
    Ok(Outcome {
        exit_code,
        report,
        text: text.join("\n") + "\n",
    })
}
