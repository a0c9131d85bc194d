use std::sync::Arc;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use tensq::abelian::FinGenAbelian;
use tensq::fp::{
    catalog, coset_enumerate, realize, CompatiblePair, EnumError, EnumOptions, FiniteGroupRealization, FpPresentation,
    GroupError, Strategy,
};
use tensq::linearity::{
    button_family, is_prime, malcev_char0, malcev_charp_trace, torsion_rank, ButtonVariant, TorsionDescriptor,
};
use tensq::reps::{self, Coefficients, PolyMatrix, RepError, RepPackage};
use tensq::tensor::{exterior_square, peiffer_product, tensor_square, TensorError, TensorGroup, TensorOptions};
use thiserror::Error;

use crate::report::CommandReport;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Budget(String),
    #[error("invariant violation: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Budget(_) => 2,
            CliError::Invariant(_) => 3,
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::Enumeration(_) | GroupError::TooLarge { .. } => CliError::Budget(e.to_string()),
            GroupError::InvalidTable(m) => CliError::Invariant(m),
        }
    }
}

impl From<EnumError> for CliError {
    fn from(e: EnumError) -> Self {
        CliError::Budget(e.to_string())
    }
}

impl From<TensorError> for CliError {
    fn from(e: TensorError) -> Self {
        match e {
            TensorError::Group(g) => g.into(),
            other => CliError::Invariant(other.to_string()),
        }
    }
}

impl From<RepError> for CliError {
    fn from(e: RepError) -> Self {
        match e {
            RepError::Parameter(m) => CliError::Input(m),
            other => CliError::Invariant(other.to_string()),
        }
    }
}

/// Catalog name or presentation text in `< gens | relators >` form.
pub fn resolve_group(text: &str) -> Result<FpPresentation, CliError> {
    if let Some(p) = catalog::lookup(text) {
        return Ok(p);
    }
    if text.trim_start().starts_with('<') {
        return text.parse().map_err(|e| CliError::Input(format!("presentation: {e}")));
    }
    let names: Vec<String> = catalog::catalog().into_iter().map(|e| e.name).collect();
    Err(CliError::Input(format!(
        "unknown group {text:?}; expected a presentation or one of {}",
        names.join(", ")
    )))
}

fn abelian_json(a: &FinGenAbelian) -> Value {
    json!({
        "group": a.to_string(),
        "free_rank": a.free_rank(),
        "invariant_factors": a.invariant_factors().iter().map(|d| d.to_string()).collect::<Vec<_>>(),
    })
}

pub fn gamma(report: &mut CommandReport, group: &str) -> Result<(), CliError> {
    let a: FinGenAbelian = group.parse().map_err(|e| CliError::Input(format!("group: {e}")))?;
    let g = a.gamma();
    report.push("input", abelian_json(&a));
    report.push("gamma", abelian_json(&g));
    Ok(())
}

fn strategies(spec: &str) -> Result<Vec<Strategy>, CliError> {
    match spec {
        "both" => Ok(vec![Strategy::Hlt, Strategy::Felsch]),
        s => s.parse().map(|s| vec![s]).map_err(CliError::Input),
    }
}

pub struct EngineArgs<'a> {
    pub budget: usize,
    pub strategy: &'a str,
    pub tietze: bool,
}

fn realize_group(p: &FpPresentation, budget: usize) -> Result<Arc<FiniteGroupRealization>, CliError> {
    Ok(Arc::new(realize(p, &EnumOptions::default().budget(budget))?))
}

fn tensor_summary(t: &TensorGroup, g: &FiniteGroupRealization) -> Result<Value, CliError> {
    let kernel = t.kappa_kernel();
    let image = t.kappa_image();
    let derived = g.derived_subgroup();
    let mut hasher = Sha256::new();
    for &k in t.kappa_table() {
        hasher.update((k as u32).to_le_bytes());
    }
    let abel = t.realization().abelianization();
    let mut v = json!({
        "kind": t.kind().name(),
        "order": t.order(),
        "abelianization": abel.to_string(),
        "kappa_image_order": image.len(),
        "kappa_kernel_order": kernel.len(),
        "kappa_kernel_central": t.realization().is_central(&kernel),
        "kappa_image_is_derived_subgroup": image == derived,
        "order_equals_kernel_times_derived": t.order() == kernel.len() * derived.len(),
        "kappa_table_sha256": hex::encode(hasher.finalize()),
        "presentation_generators": t.num_generators(),
        "presentation_relators": t.num_relators(),
        "max_live_cosets": t.stats().max_live,
        "cosets_defined": t.stats().total_defined,
    });
    if let Ok(psi) = t.psi_image() {
        v["psi_image_order"] = psi.len().into();
    }
    let ok = v["kappa_kernel_central"] == true
        && v["kappa_image_is_derived_subgroup"] == true
        && v["order_equals_kernel_times_derived"] == true;
    if !ok {
        return Err(CliError::Invariant(format!("diagram bookkeeping fails for {}", t.kind().name())));
    }
    Ok(v)
}

pub fn tensor(report: &mut CommandReport, group: &str, exterior: bool, engine: &EngineArgs) -> Result<(), CliError> {
    let p = resolve_group(group)?;
    let g = realize_group(&p, engine.budget)?;
    let strats = strategies(engine.strategy)?;
    report.set_strategy(engine.strategy);
    report.push("group", group);
    report.push("group_order", g.order());
    report.push("derived_subgroup_order", g.derived_subgroup().len());
    report.push("tietze", engine.tietze);
    let mut runs = Vec::new();
    for s in &strats {
        let opts = TensorOptions::new(EnumOptions::with_strategy(*s).budget(engine.budget)).tietze(engine.tietze);
        let t = if exterior {
            exterior_square(Arc::clone(&g), &opts)?
        } else {
            tensor_square(Arc::clone(&g), &opts)?
        };
        runs.push((s.name(), tensor_summary(&t, &g)?));
    }
    if runs.len() == 1 {
        let (_, v) = runs.pop().expect("one run");
        report.push("result", v);
    } else {
        let agree = runs
            .windows(2)
            .all(|w| w[0].1["order"] == w[1].1["order"] && w[0].1["abelianization"] == w[1].1["abelianization"]);
        for (name, v) in runs {
            report.push(name, v);
        }
        report.push("strategies_agree", agree);
        if !agree {
            return Err(CliError::Invariant("enumeration strategies disagree".into()));
        }
    }
    Ok(())
}

pub fn peiffer(
    report: &mut CommandReport,
    group: &str,
    other: Option<&str>,
    engine: &EngineArgs,
) -> Result<(), CliError> {
    let strats = strategies(engine.strategy)?;
    if strats.len() != 1 {
        return Err(CliError::Input("peiffer takes a single strategy".into()));
    }
    let g = realize_group(&resolve_group(group)?, engine.budget)?;
    let (pair, expected) = match other {
        None => {
            let ab = g.abelianization();
            (CompatiblePair::conjugation(Arc::clone(&g)), ab.direct_product(&ab))
        }
        Some(h) => {
            let h = realize_group(&resolve_group(h)?, engine.budget)?;
            let expected = g.abelianization().direct_product(&h.abelianization());
            (CompatiblePair::trivial(Arc::clone(&g), h), expected)
        }
    };
    report.set_strategy(strats[0].name());
    report.push("group", group);
    report.push("actions", if other.is_some() { "trivial" } else { "conjugation" });
    if let Some(h) = other {
        report.push("other_group", h);
    }
    report.push("g_order", pair.g().order());
    report.push("h_order", pair.h().order());
    let direct_order = pair.g().order() * pair.h().order();
    let opts = TensorOptions::new(EnumOptions::with_strategy(strats[0]).budget(engine.budget)).tietze(engine.tietze);
    let pp = peiffer_product(pair, &opts)?;
    let ab = pp.abelianization();
    report.push("order", pp.order());
    report.push("abelian", pp.is_abelian());
    report.push("abelianization", abelian_json(&ab));
    report.push("expected_abelianization", expected.to_string());
    report.push("abelianization_matches", ab.iso_eq(&expected));
    if other.is_some() {
        report.push("direct_product_order", direct_order);
    }
    report.push("max_live_cosets", pp.stats().max_live);
    Ok(())
}

pub fn cosets(
    report: &mut CommandReport,
    group: &str,
    subgroup: &[String],
    engine: &EngineArgs,
) -> Result<(), CliError> {
    let p = resolve_group(group)?;
    let strats = strategies(engine.strategy)?;
    let words = subgroup
        .iter()
        .flat_map(|s| s.split(','))
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|w| p.parse_word(w).map_err(|e| CliError::Input(format!("subgroup word {w:?}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    report.set_strategy(engine.strategy);
    report.push("group", group);
    report.push(
        "subgroup",
        words.iter().map(|w| w.display_with(p.generator_names()).to_string()).collect::<Vec<_>>(),
    );
    let mut indices = Vec::new();
    for s in &strats {
        let t = coset_enumerate(&p, &words, &EnumOptions::with_strategy(*s).budget(engine.budget))?;
        report.push(
            s.name(),
            json!({ "index": t.index(), "max_live_cosets": t.stats().max_live, "cosets_defined": t.stats().total_defined }),
        );
        indices.push(t.index());
    }
    report.push("index", indices[0]);
    if indices.iter().any(|&i| i != indices[0]) {
        return Err(CliError::Invariant("enumeration strategies disagree on the index".into()));
    }
    Ok(())
}

pub fn malcev(
    report: &mut CommandReport,
    descriptor_name: &str,
    text: &str,
    characteristic: u64,
    degree: u64,
) -> Result<(), CliError> {
    let d: TorsionDescriptor = text.parse().map_err(|e| CliError::Input(format!("descriptor: {e}")))?;
    if degree == 0 {
        return Err(CliError::Input("degree must be at least 1".into()));
    }
    if characteristic != 0 && !is_prime(characteristic) {
        return Err(CliError::Input(format!("characteristic {characteristic} is neither 0 nor a prime")));
    }
    report.push("descriptor", descriptor_name);
    report.push("torsion_free_rank", d.torsion_free_rank().to_string());
    report.push(
        "primes",
        d.primes()
            .iter()
            .map(|c| json!({ "prime": c.prime, "rank": c.rank.to_string(), "exponent": c.exponent.to_string() }))
            .collect::<Vec<_>>(),
    );
    report.push("characteristic", characteristic);
    report.push("degree", degree);
    let show = |x: Option<String>, inf: &str| x.unwrap_or_else(|| inf.to_string());
    if characteristic == 0 {
        let r = torsion_rank(&d);
        report.push("criterion", "torsion rank <= n");
        report.push("torsion_rank", show(r.map(|r| r.to_string()), "inf"));
        report.push("linear", malcev_char0(&d, degree));
    } else {
        let t = malcev_charp_trace(&d, characteristic, degree);
        report.push("criterion", "p^(e-1) + max(1, r) < n + 1");
        report.push("r", show(t.r.map(|r| r.to_string()), "inf"));
        report.push("e", show(t.e.map(|e| e.to_string()), "unbounded"));
        report.push("lhs", show(t.lhs.map(|l| l.to_string()), "inf"));
        report.push("rhs", t.rhs);
        report.push("linear", t.linear);
    }
    Ok(())
}

pub struct RepArgs {
    pub n: usize,
    pub c: usize,
    pub m: usize,
    pub k: usize,
    pub variant: u32,
    pub count: usize,
    pub samples: usize,
    pub max_len: usize,
    pub seed: u64,
}

/// Largest number of left-normed commutators evaluated per weight.
const MAX_COMMUTATORS: usize = 200_000;

pub fn rep(report: &mut CommandReport, kind: &str, a: &RepArgs) -> Result<(), CliError> {
    let pkg = match kind {
        "sanov" => reps::sanov_f2(),
        "free" => reps::free_embedding(a.n)?,
        "zmfk" => reps::rep_z_m_times_f_k(a.m, a.k),
        "tensor-free" => {
            if a.n == 0 {
                return Err(CliError::Input("tensor-free needs n >= 1".into()));
            }
            reps::free_tensor_square_rep(a.n, a.k)
        }
        "braid" => reps::braid_tensor_square_rep(),
        "figure-eight" => reps::figure_eight_tensor_square_rep(),
        "nilpotent" => reps::unitriangular_nilpotent_rep(a.n, a.c)?,
        "tensor-nilpotent" => reps::tensor_square_rep_nilpotent(a.n, a.c)?,
        "button" => return button(report, a),
        other => return Err(CliError::Input(format!("unknown representation kind {other:?}"))),
    };
    report.push("construction", pkg.construction);
    report.push("target", pkg.target.clone());
    report.push("dimension", pkg.dim);
    report.push(
        "variables",
        pkg.ring
            .names()
            .iter()
            .enumerate()
            .map(|(i, n)| format!("{n}{}", if pkg.ring.is_laurent(i) { " (laurent)" } else { "" }))
            .collect::<Vec<_>>(),
    );
    report.push("generators", pkg.generators.len());
    let inverses = pkg.inverses()?;
    report.push("inverses_checked", inverses.len());

    let (scalars, others): (Vec<_>, Vec<_>) = pkg.generators.iter().partition(|(_, m)| m.is_scalar());
    if !scalars.is_empty() {
        let central = scalars
            .iter()
            .all(|(_, s)| pkg.generators.iter().all(|(_, g)| s.mul(g) == g.mul(s)));
        report.push("scalar_block_central", central);
        if !central {
            return Err(CliError::Invariant("scalar generators are not central".into()));
        }
    }

    let mut failures = Vec::new();
    match kind {
        "nilpotent" | "tensor-nilpotent" => {
            let gens: Vec<&PolyMatrix> = others.iter().map(|(_, m)| m).collect();
            let checks = gens.len().checked_pow(a.c as u32 + 2).unwrap_or(usize::MAX);
            if checks > MAX_COMMUTATORS {
                return Err(CliError::Input(format!(
                    "{checks} commutators of weight {} exceed the limit of {MAX_COMMUTATORS}",
                    a.c + 2
                )));
            }
            let top = reps::left_normed_commutators(&gens, a.c + 2)?;
            let below = reps::left_normed_commutators(&gens, a.c + 1)?;
            report.push(
                "commutators",
                json!({
                    "vanishing_weight": top.weight,
                    "vanishing_checked": top.checked,
                    "vanishing_all": top.all_vanish(),
                    "nonvanishing_weight": below.weight,
                    "nonvanishing_checked": below.checked,
                    "nonvanishing_found": below.nonvanishing.len(),
                }),
            );
            if !top.all_vanish() {
                failures.push(format!("a weight-{} commutator is nontrivial", top.weight));
            }
            if gens.len() >= 2 && below.all_vanish() {
                failures.push(format!("every weight-{} commutator vanishes", below.weight));
            }
        }
        _ if !others.is_empty() => {
            let free = RepPackage {
                generators: others.iter().map(|(n, m)| (n.clone(), m.clone())).collect(),
                ..pkg.clone()
            };
            let s = reps::sample_nontriviality(&free, a.samples, a.max_len, a.seed)?;
            report.push(
                "sampling",
                json!({
                    "generators": free.generators.iter().map(|(n, _)| n.clone()).collect::<Vec<_>>(),
                    "words": s.words,
                    "max_len": s.max_len,
                    "seed": s.seed,
                    "identity_hits": s.identity_hits.len(),
                }),
            );
            if !s.identity_hits.is_empty() {
                failures.push(format!("{} sampled words map to the identity", s.identity_hits.len()));
            }
        }
        _ => {}
    }
    if !pkg.notes.is_empty() {
        report.push("notes", pkg.notes.clone());
    }
    report.push("export", pkg.export());
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Invariant(failures.join("; ")))
    }
}

fn button(report: &mut CommandReport, a: &RepArgs) -> Result<(), CliError> {
    let variant = match a.variant {
        2 => ButtonVariant::Two,
        3 => ButtonVariant::Three,
        v => return Err(CliError::Input(format!("button variant must be 2 or 3, got {v}"))),
    };
    if a.count == 0 {
        return Err(CliError::Input("button family needs count >= 1".into()));
    }
    let f = button_family(variant, a.count);
    let target = match variant {
        ButtonVariant::Two => "G_2 = < A_i, B | [A_i, A_j], B A_i B^-1 = A_i^3 >",
        ButtonVariant::Three => "G_3 = < C_i, D | [C_i, C_j], D C_i D^-1 = C_i^4 >",
    };
    let pkg = RepPackage {
        construction: "button",
        parameters: vec![("variant", a.variant as usize), ("count", a.count)],
        target: target.into(),
        ring: Arc::clone(&f.ring),
        dim: 2,
        generators: f.named_generators(),
        notes: vec![format!("coefficients are rational: the diagonal generator has inverse diag(1/{}, 1)", variant.power())],
    };
    debug_assert_eq!(pkg.ring.coefficients(), Coefficients::Rational);
    report.push("construction", pkg.construction);
    report.push("target", target);
    report.push("identities_checked", f.identities.len());
    report.push("all_identities_hold", f.all_hold());
    report.push("identities", f.identities.iter().map(|v| v.statement.clone()).collect::<Vec<_>>());
    report.push("export", pkg.export());
    Ok(())
}
