use std::fs;
use std::io::{Read, Write};
use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use graphsym::counting::{total_circuits, total_circuits_symmetric, CountTable};
use graphsym::enumeration::{enumerate_circuit_classes, signature_bounds, CircuitClass, EnumerationOptions};
use graphsym::limits::{
    elementary_circuit, growth_profile_graph, growth_profile_one_sided, realizing_circuits, two_sided_profile,
    GrowthProfile, LimitError, LimitOptions, TwoSidedProfile,
};
use graphsym::matroid::{EdgeSet, OracleConfig, OracleError, RankOracle};
use graphsym::models::{Family, ModelError, ModelSpec};
use graphsym::moves::{find_move, st_move_counterexample, t1_move, verify, MoveError};
use graphsym::polykit::{cycle_binomial, minor_polynomial, support_minimality_check, verify_vanishing, SparsePoly};
use graphsym::primefield::DEFAULT_PRIMES;
use graphsym::symmetry::{canonical_form, Mask, MaskKind, SymmetryError};

#[derive(Parser)]
#[command(name = "graphsym", version, about = "Generic rank oracles and circuit tools for matroids with graph symmetry")]
struct Cli {
    #[command(flatten)]
    run: RunArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct RunArgs {
    /// Primes for the rank oracle, comma separated.
    #[arg(long, global = true, env = "GRAPHSYM_PRIMES", value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    /// Sampled points per prime.
    #[arg(long, global = true, default_value_t = 3)]
    trials: usize,
    #[arg(long, global = true, default_value_t = 0x5eed_0001)]
    seed: u64,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Rank, independence and circuit verdict of a mask.
    Rank {
        model: String,
        /// Mask file in `#`/`.` format, `-` for stdin, or `full`.
        mask: String,
    },
    /// Entries determined (up to finitely many values) by the observed mask.
    Completable { model: String, mask: String },
    /// Circuit classes up to a signature.
    Circuits {
        model: String,
        /// Largest signature, as `k,l`.
        #[arg(long, value_parser = parse_pair)]
        max_sig: Option<(usize, usize)>,
        /// Stop after this many seconds and report a partial list.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Average rank, realization size and realization rank of a limit.
    Limits {
        /// `family:m<rows>:r<rank>` for one-sided, `family:r<rank>` for two-sided or graph limits.
        model: String,
        #[arg(long, default_value_t = 8)]
        horizon: usize,
        #[arg(long, default_value_t = 40)]
        cap: usize,
        /// Also verify the elementary circuit (one-sided) or realizing circuits (two-sided).
        #[arg(long)]
        circuits: bool,
    },
    /// Class counts, orbit weights and the total number of circuits.
    Count {
        model: String,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// A (t,1)-move on a determinantal circuit.
    Move {
        /// Base circuit mask file; omit with `--counterexample`.
        mask: Option<String>,
        /// Edge to replace, 1-based `i,j`.
        #[arg(long, value_parser = parse_pair)]
        edge: Option<(usize, usize)>,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long, default_value_t = 2)]
        r: usize,
        /// Build the (2,2)-move basis example instead.
        #[arg(long)]
        counterexample: bool,
    },
    /// Build or check a polynomial against a model.
    Poly {
        model: String,
        /// Minor rows, 1-based (Cayley–Menger index 0 is the border).
        #[arg(long, value_delimiter = ',')]
        rows: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',')]
        cols: Option<Vec<usize>>,
        /// Cycle mask file for a binomial.
        #[arg(long)]
        cycle: Option<String>,
        /// Polynomial text such as `x_1_1 * x_2_2 - x_1_2 * x_2_1`.
        #[arg(long)]
        expr: Option<String>,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Verification(String),
    Cap(String),
    MaskParse(String),
    Dimension(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Verification(_) => 2,
            CliError::Cap(_) => 3,
            CliError::MaskParse(_) => 4,
            CliError::Dimension(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m)
            | CliError::Verification(m)
            | CliError::Cap(m)
            | CliError::MaskParse(m)
            | CliError::Dimension(m) => m,
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::GroundMismatch { .. } | OracleError::PairOutOfRange(..) => CliError::Dimension(e.to_string()),
            OracleError::EmptyConfig | OracleError::Field(_) | OracleError::Model(_) => CliError::Usage(e.to_string()),
            OracleError::GenericityFailure { .. } => CliError::Verification(e.to_string()),
        }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<SymmetryError> for CliError {
    fn from(e: SymmetryError) -> Self {
        match e {
            SymmetryError::DoesNotFit { .. } | SymmetryError::SignatureExceeds { .. } | SymmetryError::TooLarge => {
                CliError::Dimension(e.to_string())
            }
            _ => CliError::MaskParse(e.to_string()),
        }
    }
}

impl From<LimitError> for CliError {
    fn from(e: LimitError) -> Self {
        match e {
            LimitError::HorizonCap { .. } => CliError::Cap(e.to_string()),
            LimitError::Oracle(o) => o.into(),
            LimitError::Verification(_) => CliError::Verification(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<MoveError> for CliError {
    fn from(e: MoveError) -> Self {
        match e {
            MoveError::Oracle(o) => o.into(),
            MoveError::Symmetry(s) => s.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected `a,b`")?;
    let a = a.trim().parse().map_err(|_| format!("bad number `{a}`"))?;
    let b = b.trim().parse().map_err(|_| format!("bad number `{b}`"))?;
    Ok((a, b))
}

struct Ctx {
    run: RunArgs,
    cancel: Arc<AtomicBool>,
}

impl Ctx {
    fn oracle_config(&self) -> OracleConfig {
        OracleConfig {
            primes: self.run.primes.clone().unwrap_or_else(|| DEFAULT_PRIMES.to_vec()),
            trials: self.run.trials,
            seed: self.run.seed,
        }
    }

    /// Same primes and trials, different seed.
    fn fresh_config(&self) -> OracleConfig {
        OracleConfig {
            seed: self.run.seed ^ 0xa5a5_5a5a_0f0f_f0f0,
            ..self.oracle_config()
        }
    }

    fn oracle(&self, spec: ModelSpec) -> Result<RankOracle, CliError> {
        Ok(RankOracle::new(spec, self.oracle_config())?)
    }

    fn emit(&self, value: Value, text: impl FnOnce() -> String) {
        let body = if self.run.json {
            format!("{}\n", serde_json::to_string_pretty(&value).expect("serializable"))
        } else {
            text()
        };
        let mut out = std::io::stdout().lock();
        let _ = out.write_all(body.as_bytes()).and_then(|_| out.flush());
    }
}

fn parse_model(s: &str) -> Result<ModelSpec, CliError> {
    s.parse().map_err(|e: ModelError| e.into())
}

fn read_mask_text(source: &str) -> Result<String, CliError> {
    if source == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::MaskParse(e.to_string()))?;
        return Ok(buf);
    }
    fs::read_to_string(source).map_err(|e| CliError::MaskParse(format!("{source}: {e}")))
}

fn load_mask(spec: &ModelSpec, source: &str) -> Result<(Mask, EdgeSet), CliError> {
    if source == "full" {
        let s = EdgeSet::full(spec.ground_len());
        return Ok((Mask::from_edge_set(spec, &s), s));
    }
    let mask = Mask::parse(&read_mask_text(source)?, MaskKind::for_family(spec.family()))?;
    let set = mask.to_edge_set(spec)?;
    Ok((mask, set))
}

fn mask_json(m: &Mask) -> Value {
    json!(m.ascii_rows())
}

fn indent(m: &Mask) -> String {
    m.ascii_rows().iter().map(|r| format!("  {r}\n")).collect()
}

/// Confirms a circuit with an oracle seeded differently from the one that found it.
fn reverify(spec: &ModelSpec, set: &EdgeSet, ctx: &Ctx) -> Result<(), CliError> {
    let o = RankOracle::new(*spec, ctx.fresh_config())?;
    if o.is_circuit(set) {
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "circuit failed re-verification under a fresh seed:\n{}",
            indent(&Mask::from_edge_set(spec, set).compact())
        )))
    }
}

fn reverify_mask(spec: &ModelSpec, mask: &Mask, ctx: &Ctx) -> Result<(), CliError> {
    reverify(spec, &mask.to_edge_set(spec)?, ctx)
}

fn cmd_rank(ctx: &Ctx, model: &str, source: &str) -> Result<(), CliError> {
    let spec = parse_model(model)?;
    let (_, set) = load_mask(&spec, source)?;
    let o = ctx.oracle(spec)?;
    let rank = o.try_rank(&set)?;
    let size = set.count();
    let circuit = size == rank + 1 && o.is_circuit(&set);
    if circuit {
        reverify(&spec, &set, ctx)?;
    }
    let value = json!({
        "model": spec.to_string(),
        "size": size,
        "rank": rank,
        "full_rank": o.full_rank(),
        "independent": rank == size,
        "circuit": circuit,
        "defect": size - rank,
    });
    ctx.emit(value, || {
        format!(
            "model {spec}\nsize {size}\nrank {rank}\nindependent {}\ncircuit {circuit}\ndefect {}\n",
            rank == size,
            size - rank
        )
    });
    Ok(())
}

fn cmd_completable(ctx: &Ctx, model: &str, source: &str) -> Result<(), CliError> {
    let spec = parse_model(model)?;
    if !matches!(spec.family(), Family::Det | Family::SymDet) {
        return Err(CliError::Usage("completable needs a det or symdet model".into()));
    }
    let (_, observed) = load_mask(&spec, source)?;
    let o = ctx.oracle(spec)?;
    let basis = o.basis_of(&observed);
    let recovered = o.closure(&observed).difference(&observed);
    let mut entries = Vec::new();
    for e in recovered.iter() {
        let circuit = o
            .fundamental_circuit(&basis, e)
            .ok_or_else(|| CliError::Verification(format!("no circuit witnesses element {e}")))?;
        reverify(&spec, &circuit, ctx)?;
        let elem = spec.elem(e).expect("index from the ground set");
        entries.push((elem.i + 1, elem.j + 1, Mask::from_edge_set(&spec, &circuit)));
    }
    let value = json!({
        "model": spec.to_string(),
        "observed": observed.count(),
        "observed_rank": basis.count(),
        "completable": entries.iter().map(|(i, j, w)| json!({"entry": [i, j], "witness": mask_json(w)})).collect::<Vec<_>>(),
    });
    ctx.emit(value, || {
        let mut out = format!(
            "model {spec}\nobserved {} (rank {})\ncompletable {}\n",
            observed.count(),
            basis.count(),
            entries.len()
        );
        for (i, j, w) in &entries {
            out += &format!("entry ({i},{j}) witness\n{}", indent(w));
        }
        out
    });
    Ok(())
}

#[derive(Serialize)]
struct ClassOut<'a> {
    #[serde(flatten)]
    class: &'a CircuitClass,
}

fn run_enumeration(
    ctx: &Ctx,
    spec: ModelSpec,
    max_sig: Option<(usize, usize)>,
    budget: Option<u64>,
) -> Result<graphsym::enumeration::Enumeration, CliError> {
    let o = ctx.oracle(spec)?;
    let mut bounds = signature_bounds(&spec);
    if let Some((k, l)) = max_sig {
        bounds = bounds.capped(k, l);
    }
    let opts = EnumerationOptions {
        time_budget: budget.map(std::time::Duration::from_secs),
        cancel: Some(ctx.cancel.clone()),
    };
    let e = enumerate_circuit_classes(&o, &bounds, &opts);
    for c in &e.classes {
        reverify_mask(&spec, &c.mask, ctx)?;
    }
    Ok(e)
}

fn cmd_circuits(ctx: &Ctx, model: &str, max_sig: Option<(usize, usize)>, budget: Option<u64>) -> Result<(), CliError> {
    let spec = parse_model(model)?;
    let e = run_enumeration(ctx, spec, max_sig, budget)?;
    let value = json!({
        "model": spec.to_string(),
        "partial": e.partial,
        "completed": e.completed,
        "classes": e.classes.iter().map(|c| ClassOut { class: c }).collect::<Vec<_>>(),
    });
    ctx.emit(value, || {
        let mut out = format!("model {spec}\nclasses {}\n", e.classes.len());
        if e.partial {
            out += "PARTIAL: enumeration stopped early\n";
        }
        for c in &e.classes {
            out += &format!(
                "signature ({},{}) edges {} aut {}{}\n{}",
                c.signature.0,
                c.signature.1,
                c.edge_count,
                c.aut_order,
                if c.transpose_distinct { " (+transpose)" } else { "" },
                indent(&c.mask)
            );
        }
        out
    });
    Ok(())
}

fn cmd_count(ctx: &Ctx, model: &str, budget: Option<u64>) -> Result<(), CliError> {
    let spec = parse_model(model)?;
    let e = run_enumeration(ctx, spec, None, budget)?;
    let table = CountTable::from_enumeration(&e, &spec);
    let total = if spec.family().is_bipartite() {
        total_circuits(&table, spec.m(), spec.n())
    } else {
        total_circuits_symmetric(&table, spec.n())
    };
    let rows = table.rows();
    let total_text = match &total {
        Ok(t) => t.to_string(),
        Err(err) => format!("unavailable ({err})"),
    };
    let value = json!({
        "model": spec.to_string(),
        "partial": table.partial,
        "rows": rows,
        "total": total.as_ref().ok().map(|t| t.to_string()),
    });
    ctx.emit(value, || {
        let mut out = format!("model {spec}\n");
        if table.partial {
            out += "PARTIAL: enumeration stopped early\n";
        }
        out += "signature  classes  beta\n";
        for r in &rows {
            out += &format!(
                "({},{})  {}  {}/{}\n",
                r.signature.0, r.signature.1, r.c, r.beta_num, r.beta_den
            );
        }
        out + &format!("total {total_text}\n")
    });
    Ok(())
}

struct LimitModel {
    family: Family,
    rows: Option<usize>,
    r: usize,
}

fn parse_limit_model(s: &str) -> Result<LimitModel, CliError> {
    let bad = || CliError::Usage(format!("expected family:m<rows>:r<rank> or family:r<rank>, got `{s}`"));
    let mut parts = s.split(':');
    let family: Family = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    let (mut rows, mut r) = (None, None);
    for p in parts {
        let (key, val) = p.split_at(1.min(p.len()));
        let v: usize = val.parse().map_err(|_| bad())?;
        match key {
            "m" => rows = Some(v),
            "r" => r = Some(v),
            _ => return Err(bad()),
        }
    }
    if rows.is_some() && !family.is_bipartite() {
        return Err(bad());
    }
    Ok(LimitModel {
        family,
        rows,
        r: r.ok_or_else(bad)?,
    })
}

fn profile_text(p: &GrowthProfile) -> String {
    let mut out = format!(
        "growth {:?}\nrho {} kappa {} alpha {}\n",
        p.growth, p.average_rank, p.realization_size, p.realization_rank
    );
    if p.free {
        out += "free\n";
    }
    if let Some(cf) = p.closed_form {
        out += &format!("closed form {cf:?} agrees {}\n", p.closed_form_agrees() == Some(true));
    }
    if p.rows.is_some() {
        if let Ok(d) = p.staircase_diagram(p.realization_size.max(1)) {
            out += "staircase\n";
            out += &d.lines().map(|l| format!("  {l}\n")).collect::<String>();
        }
    }
    out
}

fn two_sided_text(p: &TwoSidedProfile) -> String {
    format!(
        "rho {:?} kappa {:?} alpha {}\nminimal realizing {:?}\n{}",
        p.average_rank,
        p.realization_size,
        p.realization_rank,
        p.minimal_realizing,
        p.realizing_diagram()
    )
}

fn cmd_limits(ctx: &Ctx, model: &str, horizon: usize, cap: usize, circuits: bool) -> Result<(), CliError> {
    let lm = parse_limit_model(model)?;
    let opts = LimitOptions {
        horizon,
        horizon_cap: cap.max(horizon),
        oracle: ctx.oracle_config(),
        ..LimitOptions::default()
    };
    match (lm.family.is_bipartite(), lm.rows) {
        (true, None) => {
            let p = two_sided_profile(lm.family, lm.r, &opts)?;
            let found = if circuits {
                let list = realizing_circuits(&p, &ctx.oracle_config())?;
                for c in &list {
                    let spec = ModelSpec::new(lm.family, c.circuit.rows(), c.circuit.cols(), lm.r)?;
                    reverify_mask(&spec, &c.circuit, ctx)?;
                }
                Some(list)
            } else {
                None
            };
            let value = json!({"profile": p, "realizing_circuits": found});
            ctx.emit(value, || {
                let mut out = two_sided_text(&p);
                for c in found.iter().flatten() {
                    out += &format!(
                        "realizing corner {:?} circuit {}\n{}",
                        c.corner,
                        c.set_is_circuit,
                        indent(&c.circuit)
                    );
                }
                out
            });
        }
        (bip, rows) => {
            let p = match rows {
                Some(m) => growth_profile_one_sided(lm.family, lm.r, m, &opts)?,
                None if !bip => growth_profile_graph(lm.family, lm.r, &opts)?,
                None => unreachable!(),
            };
            let elem = if circuits && !p.free && rows.is_some() {
                let ec = elementary_circuit(&p, &ctx.oracle_config())?;
                if !ec.verified {
                    return Err(CliError::Verification("elementary circuit failed the oracle".into()));
                }
                let spec = ModelSpec::new(lm.family, ec.mask.rows(), ec.mask.cols(), lm.r)?;
                reverify_mask(&spec, &ec.mask, ctx)?;
                Some(ec)
            } else {
                None
            };
            let value = json!({"profile": p, "elementary_circuit": elem});
            ctx.emit(value, || {
                let mut out = profile_text(&p);
                if let Some(ec) = &elem {
                    out += &format!("elementary circuit {:?}\n{}", ec.signature, indent(&ec.mask));
                }
                out
            });
        }
    }
    Ok(())
}

fn cmd_move(ctx: &Ctx, source: Option<&str>, edge: Option<(usize, usize)>, t: usize, r: usize, counter: bool) -> Result<(), CliError> {
    if counter {
        let rep = st_move_counterexample(&ctx.oracle_config())?;
        let basis = rep.is_basis;
        ctx.emit(json!(rep), || {
            format!(
                "edges {} rank {} basis {basis}\n{}",
                rep.edges,
                rep.full_rank,
                indent(&rep.mask)
            )
        });
        return if basis {
            Ok(())
        } else {
            Err(CliError::Verification("the (2,2)-move example is not a basis".into()))
        };
    }
    let source = source.ok_or_else(|| CliError::Usage("a base mask is required".into()))?;
    let (i, j) = edge.ok_or_else(|| CliError::Usage("--edge i,j is required".into()))?;
    if i == 0 || j == 0 {
        return Err(CliError::Usage("edge indices are 1-based".into()));
    }
    let base = Mask::parse(&read_mask_text(source)?, MaskKind::Bipartite)?;
    let spec = find_move(&base, (i - 1, j - 1), t, r)?;
    let result = t1_move(&spec, r)?;
    let verdict = verify(&result, r, &ctx.oracle_config())?;
    if !verdict.is_circuit {
        return Err(CliError::Verification(format!(
            "move result is not a circuit:\n{}",
            indent(&result)
        )));
    }
    let canon = canonical_form(&result.compact())?;
    let rspec = ModelSpec::det(canon.mask.rows(), canon.mask.cols(), r)?;
    reverify_mask(&rspec, &canon.mask, ctx)?;
    let value = json!({
        "result": mask_json(&result),
        "canonical": mask_json(&canon.mask),
        "verdict": verdict,
    });
    ctx.emit(value, || {
        format!(
            "signature ({},{}) edges {} aut {}\n{}",
            verdict.signature.0,
            verdict.signature.1,
            verdict.edges,
            verdict.aut_order.unwrap_or(0),
            indent(&result)
        )
    });
    Ok(())
}

fn one_based(list: &[usize], border: bool) -> Result<Vec<usize>, CliError> {
    list.iter()
        .map(|&k| match (k, border) {
            (0, true) => Ok(0),
            (0, false) => Err(CliError::Usage("indices are 1-based".into())),
            (k, true) => Ok(k),
            (k, false) => Ok(k - 1),
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn cmd_poly(
    ctx: &Ctx,
    model: &str,
    rows: Option<Vec<usize>>,
    cols: Option<Vec<usize>>,
    cycle: Option<String>,
    expr: Option<String>,
    samples: usize,
) -> Result<(), CliError> {
    let spec = parse_model(model)?;
    let poly_err = |e: graphsym::polykit::PolyError| CliError::Usage(e.to_string());
    let f: SparsePoly = match (rows, cols, cycle, expr) {
        (Some(rs), Some(cs), None, None) => {
            let border = spec.family() == Family::Rig;
            minor_polynomial(spec.family(), spec.r(), &one_based(&rs, border)?, &one_based(&cs, border)?)
                .map_err(poly_err)?
        }
        (None, None, Some(path), None) => {
            let m = Mask::parse(&read_mask_text(&path)?, MaskKind::for_family(spec.family()))?;
            cycle_binomial(&m).map_err(poly_err)?
        }
        (None, None, None, Some(text)) => text.parse().map_err(poly_err)?,
        _ => return Err(CliError::Usage("give --rows and --cols, --cycle, or --expr".into())),
    };
    let support = f.support(&spec).map_err(|e| CliError::Dimension(e.to_string()))?;
    let vanishes = verify_vanishing(&f, &spec, &ctx.oracle_config(), samples).map_err(poly_err)?;
    let verdict = support_minimality_check(&f, &ctx.oracle(spec)?).map_err(poly_err)?;
    if verdict.support_is_circuit {
        reverify(&spec, &support, ctx)?;
    }
    let topdeg: Vec<(String, u32)> = f.topdeg().0.iter().map(|(v, d)| (v.to_string(), *d)).collect();
    let value = json!({
        "model": spec.to_string(),
        "polynomial": f.to_string(),
        "terms": f.num_terms(),
        "topdeg": topdeg,
        "support": mask_json(&Mask::from_edge_set(&spec, &support)),
        "vanishes": vanishes,
        "support_is_circuit": verdict.support_is_circuit,
        "support_is_dependent": verdict.support_is_dependent,
    });
    ctx.emit(value, || {
        format!(
            "{f}\nterms {}\ntopdeg {}\nvanishes {vanishes}\nsupport circuit {}\n{}",
            f.num_terms(),
            topdeg.iter().map(|(v, d)| format!("{v}:{d}")).collect::<Vec<_>>().join(" "),
            verdict.support_is_circuit,
            indent(&Mask::from_edge_set(&spec, &support))
        )
    });
    if vanishes {
        Ok(())
    } else {
        Err(CliError::Verification("polynomial does not vanish on the model".into()))
    }
}

fn run(cli: Cli, cancel: Arc<AtomicBool>) -> Result<(), CliError> {
    if cli.run.trials == 0 || cli.run.primes.as_ref().is_some_and(|p| p.is_empty()) {
        return Err(CliError::Usage("need at least one prime and one trial".into()));
    }
    let ctx = Ctx { run: cli.run, cancel };
    match cli.command {
        Command::Rank { model, mask } => cmd_rank(&ctx, &model, &mask),
        Command::Completable { model, mask } => cmd_completable(&ctx, &model, &mask),
        Command::Circuits { model, max_sig, budget } => cmd_circuits(&ctx, &model, max_sig, budget),
        Command::Limits {
            model,
            horizon,
            cap,
            circuits,
        } => cmd_limits(&ctx, &model, horizon, cap, circuits),
        Command::Count { model, budget } => cmd_count(&ctx, &model, budget),
        Command::Move {
            mask,
            edge,
            t,
            r,
            counterexample,
        } => cmd_move(&ctx, mask.as_deref(), edge, t, r, counterexample),
        Command::Poly {
            model,
            rows,
            cols,
            cycle,
            expr,
            samples,
        } => cmd_poly(&ctx, &model, rows, cols, cycle, expr, samples),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let cancel = Arc::new(AtomicBool::new(false));
    let flag = cancel.clone();
    let _ = ctrlc::set_handler(move || flag.store(true, Ordering::Relaxed));
    match run(cli, cancel) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
