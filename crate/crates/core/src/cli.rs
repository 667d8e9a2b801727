//! Command-line front end. Every command returns a [`CommandResult`]: a
//! human-readable report, then a `---` line, then stable `key: value` lines.
//!
//! Exit codes: 0 success, 1 a checked property failed, 2 usage or input
//! error, 3 budget exceeded.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebra::{classify, FiniteAlgebra};
use crate::axioms::{check_suite, SuiteId, Verdict};
use crate::constructions::{
    build_from_boolean_pair, check_theorem_conditions, generalized_glued_sum, glued_sum, powerset_boolean,
    BooleanAlgebraView, RetractionPair, TheoremVersion,
};
use crate::fca::{enumerate_pairs, oo_protoconcept_algebra, protoconcept_algebra, semiconcept_subalgebra, PairKind};
use crate::fixtures;
use crate::format::{parse_algebra, parse_context, render_algebra};
use crate::logic::{
    check_proof, find_countermodel, fixture_proof_text, models_from, parse_hypersequent, parse_script, search_proof,
    Lemma, ModelSource, ProofSearchConfig, ProofSearchOutcome, System,
};
use crate::representation::{
    derivation_identity_failures, representation, topology, verify_clopen_characterization, RepresentationError,
    MAX_FILTER_UNIVERSE,
};
use crate::search::{default_names, enumerate_algebras, for_each_candidate, SearchSpec};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub code: u8,
    pub report: String,
    pub fields: Vec<(String, String)>,
}

impl CommandResult {
    fn new(code: u8) -> CommandResult {
        CommandResult { code, report: String::new(), fields: Vec::new() }
    }

    fn usage(message: impl Into<String>) -> CommandResult {
        let mut r = CommandResult::new(EXIT_USAGE);
        r.report = format!("error: {}\n", message.into());
        r
    }

    fn line(&mut self, text: impl AsRef<str>) {
        self.report.push_str(text.as_ref());
        self.report.push('\n');
    }

    fn field(&mut self, key: impl Into<String>, value: impl ToString) {
        self.fields.push((key.into(), value.to_string()));
    }

    /// Report, separator and fields as printed on stdout.
    pub fn render(&self) -> String {
        let mut out = self.report.clone();
        if !self.fields.is_empty() {
            out.push_str("---\n");
            for (k, v) in &self.fields {
                let _ = writeln!(out, "{k}: {v}");
            }
        }
        out
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

#[derive(Debug, Parser)]
#[command(name = "dbakit", version, about = "Finite-model toolkit for double Boolean algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SuiteArg {
    Dba,
    Dcore,
    Gdcore,
    Boolean,
}

impl From<SuiteArg> for SuiteId {
    fn from(s: SuiteArg) -> SuiteId {
        match s {
            SuiteArg::Dba => SuiteId::Dba23,
            SuiteArg::Dcore => SuiteId::Dcore13,
            SuiteArg::Gdcore => SuiteId::Gdcore11,
            SuiteArg::Boolean => SuiteId::Boolean,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum KindArg {
    Proto,
    Semi,
    Concept,
    OoProto,
    OoSemi,
}

impl From<KindArg> for PairKind {
    fn from(k: KindArg) -> PairKind {
        match k {
            KindArg::Proto => PairKind::Protoconcept,
            KindArg::Semi => PairKind::Semiconcept,
            KindArg::Concept => PairKind::Concept,
            KindArg::OoProto => PairKind::OoProtoconcept,
            KindArg::OoSemi => PairKind::OoSemiconcept,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyArg {
    All,
    Lemma,
    Embedding,
    Clopen,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SystemArg {
    L,
    Hl,
}

impl From<SystemArg> for System {
    fn from(s: SystemArg) -> System {
        match s {
            SystemArg::L => System::L,
            SystemArg::Hl => System::HL,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check an algebra against an axiom suite.
    Check {
        /// A .dba file, or `fixture:<name>` for a built-in algebra.
        algebra: String,
        #[arg(long, value_enum, default_value = "dba")]
        suite: SuiteArg,
    },
    /// Report the algebra classes an algebra belongs to.
    Classify { algebra: String },
    /// List the pairs of a formal context.
    Protoconcepts {
        context: PathBuf,
        #[arg(long, value_enum, default_value = "proto")]
        kind: KindArg,
        /// Write the algebra the listed pairs form (proto, semi or oo-proto) as a .dba file.
        #[arg(long)]
        emit_algebra: Option<PathBuf>,
    },
    /// Build an algebra from Boolean algebras.
    Construct {
        #[command(subcommand)]
        how: ConstructCommand,
    },
    /// Primary filters and ideals, the map x ↦ (F_x, I_x) and its checks.
    Represent {
        algebra: String,
        #[arg(long, value_enum, default_value = "all")]
        verify: VerifyArg,
        #[arg(long, default_value_t = MAX_FILTER_UNIVERSE)]
        max_size: usize,
    },
    /// Search for a derivation of a hypersequent.
    Prove {
        goal: String,
        #[arg(long, value_enum, default_value = "l")]
        system: SystemArg,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        #[arg(long, default_value_t = 200_000)]
        max_nodes: usize,
        /// Named built-in script usable as a cut lemma (repeatable).
        #[arg(long = "lemma")]
        lemmas: Vec<String>,
    },
    /// Check a proof script.
    Checkproof {
        /// A script file, or `fixture:<name>` for a built-in script.
        script: String,
    },
    /// Look for a model falsifying a hypersequent.
    Refute {
        goal: String,
        #[arg(long, value_enum, default_value = "l")]
        system: SystemArg,
        /// `fixtures`, `contexts:<max side>` or `enumerated:<size>`.
        #[arg(long, default_value = "fixtures")]
        models: String,
    },
    /// Enumerate algebras of a given size.
    Search(SearchArgs),
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub size: usize,
    #[arg(long, value_enum)]
    pub require: Option<SuiteArg>,
    /// Axiom ids of the required suite that must fail, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub fail: Vec<String>,
    /// Stop after this many models.
    #[arg(long)]
    pub limit: Option<usize>,
    /// Sweep every table and compare DBA23 with DCORE13 instead of searching.
    #[arg(long)]
    pub equivalence: bool,
    #[arg(long, default_value_t = 3)]
    pub max_size: usize,
    #[arg(long)]
    pub max_nodes: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum ConstructCommand {
    /// P ⊕ Q with ⊤p glued to ⊥q.
    GluedSum {
        /// A Boolean .dba file or `pow:<atoms>`.
        p: String,
        q: String,
    },
    /// P and Q sharing the listed elements.
    GenGluedSum {
        p: String,
        q: String,
        /// Shared elements as `pname=qname`, comma separated.
        #[arg(long, value_delimiter = ',')]
        overlap: Vec<String>,
    },
    /// The algebra assembled from two embedding-retraction pairs on a carrier.
    FromBooleans {
        #[arg(long)]
        carrier: usize,
        #[arg(long)]
        p: String,
        /// r: carrier → P, comma-separated element indices.
        #[arg(long, value_delimiter = ',')]
        r: Vec<usize>,
        /// e: P → carrier.
        #[arg(long, value_delimiter = ',')]
        e: Vec<usize>,
        #[arg(long)]
        q: String,
        #[arg(long = "r2", value_delimiter = ',')]
        r2: Vec<usize>,
        #[arg(long = "e2", value_delimiter = ',')]
        e2: Vec<usize>,
    },
}

/// Parse arguments (including the program name) and run.
pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli.command),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let mut r = CommandResult::new(code);
            r.report = e.render().to_string();
            r
        }
    }
}

pub fn execute(command: Command) -> CommandResult {
    let outcome = match command {
        Command::Check { algebra, suite } => load_algebra(&algebra).map(|a| cmd_check(&algebra, &a, suite.into())),
        Command::Classify { algebra } => load_algebra(&algebra).map(|a| cmd_classify(&algebra, &a)),
        Command::Protoconcepts { context, kind, emit_algebra } => cmd_protoconcepts(&context, kind.into(), emit_algebra),
        Command::Construct { how } => cmd_construct(how),
        Command::Represent { algebra, verify, max_size } => {
            load_algebra(&algebra).map(|a| cmd_represent(&a, verify, max_size))
        }
        Command::Prove { goal, system, depth, max_nodes, lemmas } => {
            cmd_prove(&goal, system.into(), ProofSearchConfig { depth, max_nodes }, &lemmas)
        }
        Command::Checkproof { script } => cmd_checkproof(&script),
        Command::Refute { goal, system, models } => cmd_refute(&goal, system.into(), &models),
        Command::Search(args) => Ok(cmd_search(&args)),
    };
    outcome.unwrap_or_else(CommandResult::usage)
}

fn load_algebra(spec: &str) -> Result<FiniteAlgebra, String> {
    if let Some(name) = spec.strip_prefix("fixture:") {
        let names: Vec<&str> = fixtures::builtin_fixtures().iter().map(|(n, _)| *n).collect();
        return fixtures::fixture(name).ok_or_else(|| format!("unknown fixture `{name}` (known: {})", names.join(", ")));
    }
    let text = std::fs::read_to_string(spec).map_err(|e| format!("cannot read {spec}: {e}"))?;
    parse_algebra(&text).map_err(|e| format!("{spec}: {e}"))
}

fn load_boolean(spec: &str) -> Result<BooleanAlgebraView, String> {
    if let Some(k) = spec.strip_prefix("pow:") {
        let k: usize = k.parse().map_err(|_| format!("bad atom count in `{spec}`"))?;
        return powerset_boolean(k).map_err(|e| format!("{spec}: {e}"));
    }
    BooleanAlgebraView::new(load_algebra(spec)?).map_err(|e| format!("{spec}: {e}"))
}

fn yes(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

pub fn cmd_check(label: &str, alg: &FiniteAlgebra, suite: SuiteId) -> CommandResult {
    let report = check_suite(alg, suite);
    let failed = report.failed_ids().len();
    let mut r = CommandResult::new(if failed == 0 { EXIT_OK } else { EXIT_FAILED });
    if failed == 0 {
        r.line(format!("{label} satisfies all {} axioms of {suite}", report.verdicts.len()));
    } else {
        r.line(format!("{label} fails {failed} of {} axioms of {suite}", report.verdicts.len()));
    }
    r.field("suite", suite);
    r.field("size", alg.size());
    r.field("passed", report.verdicts.len() - failed);
    r.field("failed", failed);
    for (id, v) in &report.verdicts {
        match v {
            Verdict::Holds => r.field(id.clone(), "PASS"),
            Verdict::Fails(w) => r.field(id.clone(), format!("FAIL {}", w.display(alg)).trim_end()),
        }
    }
    r
}

pub fn cmd_classify(label: &str, alg: &FiniteAlgebra) -> CommandResult {
    let c = classify(alg);
    let mut r = CommandResult::new(EXIT_OK);
    let mut classes = Vec::new();
    for (flag, name) in [
        (c.is_dba, "double Boolean algebra"),
        (c.is_contextual, "contextual"),
        (c.is_fully_contextual, "fully contextual"),
        (c.is_pure, "pure"),
        (c.is_trivial, "trivial"),
    ] {
        if flag {
            classes.push(name);
        }
    }
    if classes.is_empty() {
        r.line(format!("{label}: {} elements, none of the tracked classes", alg.size()));
    } else {
        r.line(format!("{label}: {} elements; {}", alg.size(), classes.join(", ")));
    }
    for f in &c.failures {
        r.line(format!("  {} {} fails at {}", f.suite, f.axiom, f.witness.display(alg)));
    }
    let names = |v: &[usize]| v.iter().map(|&x| alg.name(x)).collect::<Vec<_>>().join(" ");
    r.field("size", alg.size());
    r.field("dba", yes(c.is_dba));
    r.field("dcore", yes(c.is_dcore));
    r.field("generalized_dcore", yes(c.is_generalized_dcore));
    r.field("contextual", yes(c.is_contextual));
    r.field("fully_contextual", yes(c.is_fully_contextual));
    r.field("pure", yes(c.is_pure));
    r.field("trivial", yes(c.is_trivial));
    r.field("meet_idempotents", names(&c.meet_idempotents));
    r.field("join_idempotents", names(&c.join_idempotents));
    r
}

fn cmd_protoconcepts(path: &PathBuf, kind: PairKind, emit: Option<PathBuf>) -> Result<CommandResult, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let ctx = parse_context(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let pairs = enumerate_pairs(&ctx, kind);
    let mut r = CommandResult::new(EXIT_OK);
    r.line(format!(
        "{} {kind} pairs of a context with {} objects and {} attributes",
        pairs.len(),
        ctx.n_objects(),
        ctx.n_attributes()
    ));
    for p in &pairs {
        r.line(format!("  {}", ctx.pair_name(p.extent, p.intent)));
    }
    r.field("kind", kind);
    r.field("objects", ctx.n_objects());
    r.field("attributes", ctx.n_attributes());
    r.field("count", pairs.len());
    if let Some(out) = emit {
        let alg = match kind {
            PairKind::Protoconcept => protoconcept_algebra(&ctx).algebra,
            PairKind::Semiconcept => semiconcept_subalgebra(&protoconcept_algebra(&ctx)).algebra,
            PairKind::OoProtoconcept => oo_protoconcept_algebra(&ctx).algebra,
            other => return Err(format!("no algebra is defined on {other} pairs")),
        };
        std::fs::write(&out, render_algebra(&alg)).map_err(|e| format!("cannot write {}: {e}", out.display()))?;
        r.line(format!("algebra written to {}", out.display()));
        r.field("emitted", out.display());
    }
    Ok(r)
}

fn emit_built(r: &mut CommandResult, alg: &FiniteAlgebra) {
    r.line("");
    r.report.push_str(&render_algebra(alg));
    let c = classify(alg);
    r.field("size", alg.size());
    r.field("dba", yes(c.is_dba));
    r.field("contextual", yes(c.is_contextual));
    r.field("pure", yes(c.is_pure));
    r.field("trivial", yes(c.is_trivial));
}

fn cmd_construct(how: ConstructCommand) -> Result<CommandResult, String> {
    match how {
        ConstructCommand::GluedSum { p, q } => {
            let (bp, bq) = (load_boolean(&p)?, load_boolean(&q)?);
            let alg = glued_sum(&bp, &bq).map_err(|e| e.to_string())?;
            let c = classify(&alg);
            let promised = c.is_dba && c.is_pure && c.is_trivial;
            let mut r = CommandResult::new(if promised { EXIT_OK } else { EXIT_FAILED });
            r.line(format!("glued sum of {p} ({} elements) and {q} ({} elements)", bp.size(), bq.size()));
            if !promised {
                r.line("the glued sum is not a pure trivial double Boolean algebra");
            }
            emit_built(&mut r, &alg);
            Ok(r)
        }
        ConstructCommand::GenGluedSum { p, q, overlap } => {
            let (bp, bq) = (load_boolean(&p)?, load_boolean(&q)?);
            let mut shared = Vec::new();
            for item in &overlap {
                let (a, b) = item.split_once('=').ok_or_else(|| format!("overlap `{item}` is not `pname=qname`"))?;
                let x = bp.algebra().index_of(a).ok_or_else(|| format!("`{a}` is not an element of {p}"))?;
                let y = bq.algebra().index_of(b).ok_or_else(|| format!("`{b}` is not an element of {q}"))?;
                shared.push((x, y));
            }
            let g = generalized_glued_sum(&bp, &bq, &shared).map_err(|e| e.to_string())?;
            let shares_bounds = g.in_q(g.p_index[bp.top()]) && g.in_p(g.q_index[bq.bot()]);
            let gd = check_suite(&g.algebra, SuiteId::Gdcore11).passes();
            let mismatches = g.order_mismatches();
            let promised = !shares_bounds || gd;
            let mut r = CommandResult::new(if promised { EXIT_OK } else { EXIT_FAILED });
            r.line(format!("generalized glued sum of {p} and {q} sharing {} element(s)", shared.len()));
            for (x, y) in &mismatches {
                r.line(format!(
                    "  {} <= {} in the sum order but not in the quasi-order",
                    g.algebra.name(*x),
                    g.algebra.name(*y)
                ));
            }
            emit_built(&mut r, &g.algebra);
            r.field("shares_bounds", yes(shares_bounds));
            r.field("generalized_dcore", yes(gd));
            r.field("orders_agree", yes(mismatches.is_empty()));
            Ok(r)
        }
        ConstructCommand::FromBooleans { carrier, p, r, e, q, r2, e2 } => {
            let (bp, bq) = (load_boolean(&p)?, load_boolean(&q)?);
            let pp = RetractionPair::new(carrier, bp, r, e).map_err(|e| e.to_string())?;
            let qq = RetractionPair::new(carrier, bq, r2, e2).map_err(|e| e.to_string())?;
            let alg = build_from_boolean_pair(&pp, &qq).map_err(|e| e.to_string())?;
            let report = check_theorem_conditions(&pp, &qq, TheoremVersion::New).map_err(|e| e.to_string())?;
            let is_dba = check_suite(&alg, SuiteId::Dba23).passes();
            let agree = report.passes() == is_dba;
            let mut res = CommandResult::new(if agree { EXIT_OK } else { EXIT_FAILED });
            if report.passes() {
                res.line("conditions 1, 2a and 2b hold");
            } else {
                res.line(format!("conditions failing: {}", report.failed().join(", ")));
            }
            if !agree {
                res.line("the conditions and the axioms disagree");
            }
            emit_built(&mut res, &alg);
            res.field("conditions", if report.passes() { "hold" } else { "fail" });
            for v in &report.verdicts {
                let val = match &v.witness {
                    None => "PASS".to_string(),
                    Some(w) => format!("FAIL {}", w.iter().map(|&x| alg.name(x)).collect::<Vec<_>>().join(" ")),
                };
                res.field(format!("condition_{}", v.id), val.trim_end());
            }
            Ok(res)
        }
    }
}

pub fn cmd_represent(alg: &FiniteAlgebra, verify: VerifyArg, max_size: usize) -> CommandResult {
    if alg.size() > max_size {
        let mut r = CommandResult::new(EXIT_BUDGET);
        r.line(format!("{} elements exceeds the representation budget of {max_size}", alg.size()));
        r.field("size", alg.size());
        r.field("budget", max_size);
        return r;
    }
    let rep = match representation(alg) {
        Ok(rep) => rep,
        Err(e @ RepresentationError::TooLarge { .. }) => {
            let mut r = CommandResult::new(EXIT_BUDGET);
            r.line(e.to_string());
            return r;
        }
        Err(e) => return CommandResult::usage(e.to_string()),
    };
    let mut r = CommandResult::new(EXIT_OK);
    let mut ok = true;
    r.line(format!(
        "{} primary filters, {} primary ideals, {} distinct pairs (F_x, I_x)",
        rep.delta.filters.len(),
        rep.delta.ideals.len(),
        rep.pairs.len()
    ));
    for (k, f) in rep.delta.filters.iter().enumerate() {
        r.line(format!("  F{k} = {{{}}}", alg.elements().filter(|&x| f.members >> x & 1 == 1).map(|x| alg.name(x)).collect::<Vec<_>>().join(", ")));
    }
    for (k, i) in rep.delta.ideals.iter().enumerate() {
        r.line(format!("  I{k} = {{{}}}", alg.elements().filter(|&x| i.members >> x & 1 == 1).map(|x| alg.name(x)).collect::<Vec<_>>().join(", ")));
    }
    r.line("standard context (F Δ I iff F ∩ I is nonempty):");
    r.report.push_str(&crate::format::render_context(&rep.delta.context));
    r.field("size", alg.size());
    r.field("primary_filters", rep.delta.filters.len());
    r.field("primary_ideals", rep.delta.ideals.len());
    r.field("pairs", rep.pairs.len());
    if matches!(verify, VerifyArg::All | VerifyArg::Lemma) {
        let failures = derivation_identity_failures(alg, &rep);
        for f in &failures {
            r.line(format!("  {f}"));
        }
        ok &= failures.is_empty();
        r.field("lemma", if failures.is_empty() { "PASS" } else { "FAIL" });
    }
    if matches!(verify, VerifyArg::All | VerifyArg::Embedding) {
        let quasi = rep.homomorphism && rep.order_preserved_and_reflected;
        let embedding = quasi && rep.conditions.passes() && rep.image_is_dba && (!rep.contextual || rep.is_isomorphism());
        ok &= embedding;
        r.field("homomorphism", yes(rep.homomorphism));
        r.field("order_preserved_and_reflected", yes(rep.order_preserved_and_reflected));
        r.field("injective", yes(rep.injective));
        r.field("contextual", yes(rep.contextual));
        r.field("image_conditions", if rep.conditions.passes() { "hold" } else { "fail" });
        r.field("embedding", if embedding { "PASS" } else { "FAIL" });
    }
    if matches!(verify, VerifyArg::All | VerifyArg::Clopen) {
        match topology(&rep) {
            Ok(top) => {
                let principal = top.clopens_are_the_principal_sets(&rep);
                ok &= principal;
                r.field("clopen_families", if principal { "PASS" } else { "FAIL" });
            }
            Err(e) => {
                r.line(e.to_string());
                r.code = EXIT_BUDGET;
                return r;
            }
        }
        match verify_clopen_characterization(alg) {
            Ok(v) => {
                let part = |p: &Option<crate::representation::ClopenPart>| match p {
                    None => "not applicable".to_string(),
                    Some(p) if p.passes() => format!("PASS ({} pairs)", p.found),
                    Some(p) => format!("FAIL ({} pairs)", p.found),
                };
                ok &= v.passes();
                r.field("clopen_protoconcepts", part(&v.protoconcepts));
                r.field("clopen_semiconcepts", part(&v.semiconcepts));
                r.field("translated_ctscr", yes(v.translated_ctscr));
            }
            Err(RepresentationError::NotApplicable(why)) => {
                r.line(format!("clopen characterization skipped: {why}"));
                r.field("clopen_protoconcepts", "not applicable");
                r.field("clopen_semiconcepts", "not applicable");
            }
            Err(e) => {
                r.line(e.to_string());
                r.code = EXIT_BUDGET;
                return r;
            }
        }
    }
    if !ok {
        r.code = EXIT_FAILED;
    }
    r.field("verdict", if ok { "PASS" } else { "FAIL" });
    r
}

fn cmd_prove(goal: &str, system: System, config: ProofSearchConfig, lemmas: &[String]) -> Result<CommandResult, String> {
    let h = parse_hypersequent(goal, system).map_err(|e| format!("goal: {e}"))?;
    let pool = lemmas
        .iter()
        .map(|n| Lemma::fixture(n).ok_or_else(|| format!("unknown lemma `{n}`")))
        .collect::<Result<Vec<_>, _>>()?;
    let mut r = CommandResult::new(EXIT_OK);
    r.field("system", system);
    r.field("goal", &h);
    match search_proof(&h, system, config, &pool) {
        ProofSearchOutcome::Found { script, depth, nodes } => {
            r.report.push_str(&script.to_string());
            r.field("verdict", "proved");
            r.field("depth", depth);
            r.field("lines", script.lines.len());
            r.field("nodes", nodes);
        }
        ProofSearchOutcome::NotFound { nodes, budget_exhausted } => {
            if budget_exhausted {
                r.code = EXIT_BUDGET;
                r.line(format!("search stopped after {nodes} goals without a derivation"));
                r.field("verdict", "budget exceeded");
            } else {
                r.line(format!("no derivation of height at most {}", config.depth));
                r.field("verdict", "not found");
            }
            r.field("nodes", nodes);
        }
    }
    Ok(r)
}

fn cmd_checkproof(spec: &str) -> Result<CommandResult, String> {
    let text = match spec.strip_prefix("fixture:") {
        Some(name) => fixture_proof_text(name).ok_or_else(|| format!("unknown fixture script `{name}`"))?.to_string(),
        None => std::fs::read_to_string(spec).map_err(|e| format!("cannot read {spec}: {e}"))?,
    };
    let script = parse_script(&text).map_err(|e| format!("{spec}: {e}"))?;
    let mut r = CommandResult::new(EXIT_OK);
    r.field("system", script.system);
    r.field("lines", script.lines.len());
    match check_proof(&script) {
        Ok(()) => {
            let concl = script.conclusion().expect("nonempty script");
            r.line(format!("valid {} derivation of {concl}", script.system));
            r.field("verdict", "valid");
            r.field("conclusion", concl);
        }
        Err(f) => {
            r.code = EXIT_FAILED;
            r.line(format!("invalid: {f}"));
            r.field("verdict", "invalid");
            r.field("failing_line", f.line);
            r.field("rule", f.rule);
        }
    }
    Ok(r)
}

fn parse_source(text: &str) -> Result<ModelSource, String> {
    let bad = || format!("bad model source `{text}` (use fixtures, contexts:<n> or enumerated:<n>)");
    match text.split_once(':') {
        None if text == "fixtures" => Ok(ModelSource::Fixtures),
        Some(("contexts", n)) => Ok(ModelSource::Contexts { max_side: n.parse().map_err(|_| bad())? }),
        Some(("enumerated", n)) => Ok(ModelSource::Enumerated { size: n.parse().map_err(|_| bad())? }),
        _ => Err(bad()),
    }
}

fn cmd_refute(goal: &str, system: System, models: &str) -> Result<CommandResult, String> {
    let h = parse_hypersequent(goal, system).map_err(|e| format!("goal: {e}"))?;
    let source = parse_source(models)?;
    match source {
        ModelSource::Contexts { max_side } if max_side > 3 => {
            return Err("contexts larger than 3x3 are outside the budget".into())
        }
        ModelSource::Enumerated { size } if size > 3 => return Err("enumeration is limited to 3 elements".into()),
        _ => {}
    }
    let candidates = models_from(source).map_err(|e| e.to_string())?;
    let mut r = CommandResult::new(EXIT_OK);
    r.line("hypersequents are read disjunctively: true when every assignment satisfies some component");
    r.field("system", system);
    r.field("goal", &h);
    r.field("models_examined", candidates.len());
    match find_countermodel(&h, system, &candidates) {
        Some(cm) => {
            r.line(format!("countermodel: {} with {}", cm.model, cm.describe_env()));
            r.report.push_str(&render_algebra(&cm.algebra));
            r.field("verdict", "refuted");
            r.field("model", &cm.model);
            r.field("assignment", cm.describe_env());
        }
        None => {
            r.line("no countermodel among the examined models");
            r.field("verdict", "no countermodel");
        }
    }
    Ok(r)
}

fn cmd_search(args: &SearchArgs) -> CommandResult {
    if args.size > args.max_size {
        let mut r = CommandResult::new(EXIT_BUDGET);
        r.line(format!("size {} exceeds the enumeration budget of {} (raise --max-size)", args.size, args.max_size));
        return r;
    }
    if args.equivalence {
        return equivalence_sweep(args.size);
    }
    let mut spec = SearchSpec::new(args.size, args.require.map(Into::into));
    spec.must_fail = args.fail.clone();
    spec.max_models = args.limit;
    spec.max_nodes = args.max_nodes;
    let mut r = CommandResult::new(EXIT_OK);
    let mut found = Vec::new();
    let summary = match enumerate_algebras(&spec, |alg| found.push(alg.clone())) {
        Ok(s) => s,
        Err(e) => return CommandResult::usage(e.to_string()),
    };
    r.line(format!("{} model(s) of size {}", found.len(), args.size));
    for (k, alg) in found.iter().enumerate() {
        r.line(format!("# model {}", k + 1));
        r.report.push_str(&render_algebra(alg));
    }
    r.field("size", args.size);
    r.field("require", args.require.map(|s| SuiteId::from(s).to_string()).unwrap_or_else(|| "none".into()));
    r.field("must_fail", if args.fail.is_empty() { "none".to_string() } else { args.fail.join(",") });
    r.field("models", found.len());
    r.field("candidates", summary.candidates);
    r.field("nodes", summary.nodes);
    let limited = args.limit.is_some_and(|k| found.len() >= k);
    if !summary.complete && !limited {
        r.code = EXIT_BUDGET;
        r.field("complete", "false");
    } else {
        r.field("complete", yes(summary.complete));
    }
    r
}

/// Every table of the given size, checked against DBA23 and DCORE13.
fn equivalence_sweep(size: usize) -> CommandResult {
    let names = default_names(size);
    let (mut total, mut dba, mut dcore, mut disagree) = (0u64, 0u64, 0u64, 0u64);
    let mut first: Option<FiniteAlgebra> = None;
    for_each_candidate(size, |alg| {
        total += 1;
        let a = check_suite(alg, SuiteId::Dba23).passes();
        let b = check_suite(alg, SuiteId::Dcore13).passes();
        dba += a as u64;
        dcore += b as u64;
        if a != b {
            disagree += 1;
            first.get_or_insert_with(|| alg.clone());
        }
    });
    let mut r = CommandResult::new(if disagree == 0 { EXIT_OK } else { EXIT_FAILED });
    r.line(format!("{total} algebras on {{{}}}: {dba} pass DBA23, {dcore} pass DCORE13", names.join(", ")));
    if let Some(alg) = first {
        r.line("first disagreement:");
        r.report.push_str(&render_algebra(&alg));
    }
    r.field("size", size);
    r.field("candidates", total);
    r.field("dba", dba);
    r.field("dcore", dcore);
    r.field("disagreements", disagree);
    r
}
