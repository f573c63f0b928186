//! Staged verification of `Θ_n^op ≃ D_n` and of the crossed duality
//! `(ΔG_1 ≀ ⋯ ≀ ΔG_n)^op ≅ ΔG_1^op ⊗^{M^op} ⋯ ⊗^{M^op} ΔG_n^op`.
//!
//! Every stage records the relation it asserts. `=` is structural equality,
//! `≅` a bijective functor, `≃` a fully faithful functor that is essentially
//! surjective onto the bounded target objects.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use crate::disks::{
    disk_category, enumerate_disks, glue_functor, nabla_to_d1, phi_functor, shapes_in_bounds,
    Disk, DiskCategory,
};
use crate::error::{invalid, Error, Result};
use crate::fincat::{FiniteCategory, Functor, ObjId};
use crate::obj::Obj;
use crate::sieves::{
    family_to_sieve, induce_crossed_sieve, largest_proper_sieve, segal_from_sieve, SieveWindow,
};
use crate::sites::{materialize, materialize_ranks, Ambient, Site};
use crate::wreath::{
    constant_omega_on, cosegal_omega_on, cowreath, duality_iso, generalized_wreath,
    interval_duality_functor, labeled_functor, map_labels, p_functor, segal_gamma, theta,
    wreath, DualityIso, Transformer,
};

/// Faults that can be injected into the Berger–Joyal pipeline.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Fault {
    /// Replace `ω` by the map sending every interior point to the basepoint.
    Cosegal,
}

impl FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cosegal" => Ok(Fault::Cosegal),
            _ => Err(invalid(format!("unknown fault `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Equal,
    #[serde(rename = "≅")]
    Iso,
    #[serde(rename = "≃")]
    Equiv,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Equal => "=",
            Relation::Iso => "≅",
            Relation::Equiv => "≃",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    fn new(name: &str, ok: bool, witness: Option<String>) -> Check {
        Check {
            name: name.into(),
            ok,
            witness: if ok { None } else { witness },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StageReport {
    pub level: usize,
    pub stage: String,
    pub relation: Relation,
    pub source: String,
    pub target: String,
    pub source_size: (usize, usize),
    pub target_size: (usize, usize),
    pub checks: Vec<Check>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DualityReport {
    pub pipeline: String,
    pub notes: Vec<String>,
    pub bounds: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub disk_size_bound: Option<usize>,
    pub stages: Vec<StageReport>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_stage: Option<String>,
    /// Wall-clock time per stage, in stage order. Not serialized, so that
    /// report documents stay reproducible.
    #[serde(skip)]
    pub timings_ms: Vec<u128>,
}

impl DualityReport {
    fn new(pipeline: impl Into<String>, bounds: &[usize], disk_size_bound: Option<usize>) -> Self {
        DualityReport {
            pipeline: pipeline.into(),
            notes: Vec::new(),
            bounds: bounds.to_vec(),
            disk_size_bound,
            stages: Vec::new(),
            passed: true,
            failed_stage: None,
            timings_ms: Vec::new(),
        }
    }

    /// Record a stage; returns whether it passed.
    fn push(&mut self, stage: StageReport, started: Instant) -> bool {
        self.timings_ms.push(started.elapsed().as_millis());
        let ok = stage.passed;
        if !ok && self.passed {
            self.passed = false;
            self.failed_stage = Some(stage.stage.clone());
        }
        self.stages.push(stage);
        ok
    }

    /// The first failing check, as `stage: check: witness`.
    pub fn failure(&self) -> Option<String> {
        let s = self.stages.iter().find(|s| !s.passed)?;
        let c = s.checks.iter().find(|c| !c.ok)?;
        Some(format!(
            "{}: {}{}",
            s.stage,
            c.name,
            c.witness.as_ref().map_or(String::new(), |w| format!(": {w}"))
        ))
    }
}

fn stage(
    level: usize,
    name: String,
    relation: Relation,
    source: &FiniteCategory,
    target: &FiniteCategory,
    checks: Vec<Check>,
) -> StageReport {
    StageReport {
        level,
        stage: name,
        relation,
        source: source.name().to_string(),
        target: target.name().to_string(),
        source_size: (source.num_objects(), source.num_morphisms()),
        target_size: (target.num_objects(), target.num_morphisms()),
        passed: checks.iter().all(|c| c.ok),
        checks,
    }
}

fn functor_check(f: &Functor) -> Check {
    let v = f.check();
    Check::new("functor laws", v.is_empty(), v.first().map(ToString::to_string))
}

fn iso_checks(f: &Functor) -> Vec<Check> {
    vec![
        functor_check(f),
        Check::new(
            "bijective on objects and morphisms",
            f.check_isomorphism(),
            Some(format!(
                "{} objects / {} morphisms onto {} / {}",
                f.source.num_objects(),
                f.source.num_morphisms(),
                f.target.num_objects(),
                f.target.num_morphisms()
            )),
        ),
    ]
}

fn equiv_checks(f: &Functor, targets: &[ObjId]) -> Vec<Check> {
    let ff = f.check_fully_faithful();
    let es = f.check_essentially_surjective(targets);
    vec![
        functor_check(f),
        Check::new(
            "fully faithful",
            ff.ok,
            ff.witness.map(|(x, y)| format!("hom({x}, {y}) is not a bijection")),
        ),
        Check::new(
            &format!("essentially surjective onto {} bounded objects", es.checked),
            es.ok,
            Some(format!("missed {}", es.unhit.join(", "))),
        ),
    ]
}

fn all_objects(c: &FiniteCategory) -> Vec<ObjId> {
    (0..c.num_objects()).collect()
}

/// Data carried from level `k` to level `k + 1`.
struct Level {
    /// `Θ_k` on the suffix bounds.
    theta: Arc<FiniteCategory>,
    disks: DiskCategory,
    /// `E_k : Θ_k^op → D_k`.
    equivalence: Functor,
}

/// Rank bounds of the `Θ_k` truncation read on disks: width at most
/// `b_1 + 1`, every `τ^i X` within the remaining bounds.
fn within_bounds(x: &Disk, bounds: &[usize]) -> Result<bool> {
    if x.width() > bounds[0] + 1 {
        return Ok(false);
    }
    if x.dim == 1 {
        return Ok(true);
    }
    for &i in x.interior() {
        if !within_bounds(&x.tau(i)?.0, &bounds[1..])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Bounded targets in `D_k`: the disks of total size at most `size_bound`
/// from an independent enumeration that lie within the rank bounds, each
/// located among the objects of `D_k` by its canonical shape.
fn disk_targets(d: &DiskCategory, bounds: &[usize], size_bound: usize) -> Result<(Vec<ObjId>, Check)> {
    let k = bounds.len();
    let enumerated = enumerate_disks(k, size_bound);
    let mut targets = Vec::new();
    let mut missing = Vec::new();
    for x in &enumerated {
        if !within_bounds(x, bounds)? {
            continue;
        }
        let s = x.shape()?;
        match d.category.find_object(&Obj::Disk(s.clone())) {
            Some(o) => targets.push(o),
            None => missing.push(s.to_string()),
        }
    }
    let check = Check::new(
        &format!(
            "{} of {} enumerated {k}-disks of size ≤ {size_bound} lie within the bounds and are objects",
            targets.len() + missing.len(),
            enumerated.len()
        ),
        missing.is_empty(),
        Some(missing.join(", ")),
    );
    Ok((targets, check))
}

fn level_one(b: usize, size_bound: usize, report: &mut DualityReport) -> Result<Option<Level>> {
    let t = Instant::now();
    let theta1 = theta(1, &[b])?;
    let delta = materialize(Site::Delta, b);
    let thop = Arc::new(theta1.opposite().with_name("Θ_1^op"));
    let st = stage(
        1,
        "Θ_1^op = Δ^op".into(),
        Relation::Equal,
        &thop,
        &delta,
        vec![Check::new("equal categories", *theta1 == delta, None)],
    );
    if !report.push(st, t) {
        return Ok(None);
    }

    let t = Instant::now();
    let nabla = Arc::new(materialize(Site::Nabla, b + 1));
    let d = interval_duality_functor(thop.clone(), nabla.clone())?;
    let st = stage(1, "Δ^op ≅ ∇".into(), Relation::Iso, &thop, &nabla, iso_checks(&d));
    if !report.push(st, t) {
        return Ok(None);
    }

    let t = Instant::now();
    let d1 = disk_category(&shapes_in_bounds(&[b]), "D_1")?;
    let e = nabla_to_d1(nabla.clone(), &d1)?;
    let (targets, enum_check) = disk_targets(&d1, &[b], size_bound)?;
    let mut checks = equiv_checks(&e, &targets);
    checks.push(enum_check);
    let st = stage(1, "∇ ≃ D_1".into(), Relation::Equiv, &nabla, &d1.category, checks);
    if !report.push(st, t) {
        return Ok(None);
    }

    let t = Instant::now();
    let composite = e.after(&d)?;
    let st = stage(
        1,
        "Θ_1^op ≃ D_1 (composite)".into(),
        Relation::Equiv,
        &thop,
        &d1.category,
        equiv_checks(&composite, &targets),
    );
    if !report.push(st, t) {
        return Ok(None);
    }
    Ok(Some(Level {
        theta: theta1,
        disks: d1,
        equivalence: composite,
    }))
}

fn next_level(
    k: usize,
    bounds: &[usize],
    size_bound: usize,
    prev: Level,
    fault: Option<Fault>,
    report: &mut DualityReport,
) -> Result<Option<Level>> {
    let b = bounds[0];
    let p = k - 1;
    let gamma = segal_gamma(b)?;

    // Θ_k^op = (Δ ≀ Θ_{k−1})^op
    let t = Instant::now();
    let theta_k = theta(k, bounds)?;
    let by_pullback = generalized_wreath(Transformer::M, &gamma, &prev.theta)?;
    let direct = wreath(&gamma, prev.theta.clone())?;
    let st = stage(
        k,
        format!("Θ_{k}^op = (Δ≀Θ_{p})^op"),
        Relation::Equal,
        &theta_k,
        &direct.category,
        vec![
            Check::new("Θ_k equals the direct wreath", *theta_k == *direct.category, None),
            Check::new("direct wreath equals the pullback", by_pullback == *direct.category, None),
        ],
    );
    if !report.push(st, t) {
        return Ok(None);
    }

    // ≅ Δ^op_{Pγ^op} ⊗^{M^op} Θ_{k−1}^op
    let t = Instant::now();
    let dual = duality_iso(&gamma, prev.theta.clone())?;
    let mut checks = iso_checks(&dual.functor);
    checks.push(Check::new("commutes with the base projection", dual.commutes_with_base()?, None));
    checks.push(Check::new("commutes with the projection to M^op", dual.commutes_with_m()?, None));
    let st = stage(
        k,
        format!("(Δ≀Θ_{p})^op ≅ Δ^op ⊗^M^op Θ_{p}^op"),
        Relation::Iso,
        &dual.source,
        &dual.target.category,
        checks,
    );
    if !report.push(st, t) {
        return Ok(None);
    }

    // ≃ Δ^op ⊗^{M^op} D_{k−1}
    let t = Instant::now();
    let pgop = p_omega(&dual)?;
    let over_disks = cowreath(&pgop, prev.disks.category.clone())?;
    let labels = map_labels(format!("1⊗E_{p}"), &dual.target, &over_disks, &prev.equivalence)?;
    let st = stage(
        k,
        format!("Δ^op ⊗^M^op Θ_{p}^op ≃ Δ^op ⊗^M^op D_{p}"),
        Relation::Equiv,
        &dual.target.category,
        &over_disks.category,
        equiv_checks(&labels, &all_objects(&over_disks.category)),
    );
    if !report.push(st, t) {
        return Ok(None);
    }

    // ≃ ∇_ω ⊗^{M^op} D_{k−1}, replacing Pγ^op by ω along interval duality
    let t = Instant::now();
    let nabla = Arc::new(materialize(Site::Nabla, b + 1));
    let pointed = Arc::new(materialize(Site::Pointed, b));
    let omega = match fault {
        Some(Fault::Cosegal) => constant_omega_on(nabla.clone(), pointed)?,
        None => cosegal_omega_on(nabla.clone(), pointed)?,
    };
    let dop = over_disks.base.clone();
    let d = interval_duality_functor(dop, nabla.clone())?;
    let omega_laws = omega.check();
    let mut checks = vec![Check::new(
        "ω is a functor",
        omega_laws.is_empty(),
        omega_laws.first().map(|v| format!("{v} in ω")),
    )];
    let mut replaced = None;
    if omega_laws.is_empty() {
        checks.push(Check::new(
            "ω ∘ D = P ∘ γ^op",
            omega.after(&d)?.same_as(&pgop),
            None,
        ));
        let target = cowreath(&omega, prev.disks.category.clone())?;
        let base_change = labeled_functor(
            "D⊗1",
            &over_disks,
            &target,
            &d,
            &Functor::identity(prev.disks.category.clone()),
        )?;
        checks.extend(equiv_checks(&base_change, &all_objects(&target.category)));
        replaced = Some((target, base_change));
    }
    let st = stage(
        k,
        format!("Δ^op ⊗^M^op D_{p} ≃ ∇_ω ⊗^M^op D_{p}"),
        Relation::Equiv,
        &over_disks.category,
        replaced.as_ref().map_or(&over_disks.category, |(t, _)| &t.category),
        checks,
    );
    if !report.push(st, t) {
        return Ok(None);
    }
    let (nabla_side, base_change) = replaced.expect("stage passed");

    // ≃ D_k via gluing
    let t = Instant::now();
    let dk = disk_category(&shapes_in_bounds(bounds), format!("D_{k}"))?;
    let glue = glue_functor(&nabla_side, &dk)?;
    let phi = phi_functor(&dk, &nabla_side)?;
    let (targets, enum_check) = disk_targets(&dk, bounds, size_bound)?;
    let mut checks = equiv_checks(&glue, &targets);
    checks.push(enum_check);
    checks.push(Check::new(
        "Φ ∘ glue = id",
        phi.after(&glue)?.same_as(&Functor::identity(nabla_side.category.clone())),
        None,
    ));
    checks.push(Check::new(
        "glue ∘ Φ = id",
        glue.after(&phi)?.same_as(&Functor::identity(dk.category.clone())),
        None,
    ));
    let st = stage(
        k,
        format!("∇_ω ⊗^M^op D_{p} ≃ D_{k}"),
        Relation::Equiv,
        &nabla_side.category,
        &dk.category,
        checks,
    );
    if !report.push(st, t) {
        return Ok(None);
    }

    let t = Instant::now();
    let composite = glue
        .after(&base_change)?
        .after(&labels)?
        .after(&dual.functor)?;
    let st = stage(
        k,
        format!("Θ_{k}^op ≃ D_{k} (composite)"),
        Relation::Equiv,
        &dual.source,
        &dk.category,
        equiv_checks(&composite, &targets),
    );
    if !report.push(st, t) {
        return Ok(None);
    }
    Ok(Some(Level {
        theta: theta_k,
        disks: dk,
        equivalence: composite,
    }))
}

/// `P ∘ γ^op`, the coSegal functor on `Δ^op` used by the cowreath side of a
/// duality isomorphism.
fn p_omega(dual: &DualityIso) -> Result<Functor> {
    let gop_t = Arc::new(dual.gamma.target.opposite());
    let gop = dual.gamma.opposite(dual.target.base.clone(), gop_t.clone());
    let pointed = Arc::new(materialize(Site::Pointed, gop_t.num_objects() - 1));
    p_functor(gop_t, pointed)?.after(&gop)
}

/// Build the explicit composite `Θ_n^op → D_n` stage by stage. `bounds[k]`
/// bounds the ranks at level `k + 1`; disks of total size at most
/// `disk_size_bound` are the essential-surjectivity targets.
pub fn verify_bj_duality(
    n: usize,
    bounds: &[usize],
    disk_size_bound: usize,
    fault: Option<Fault>,
) -> Result<DualityReport> {
    if n == 0 || bounds.len() != n {
        return Err(invalid(format!("Θ_{n} needs {n} bounds, got {}", bounds.len())));
    }
    if bounds.iter().any(|&b| b == 0) {
        return Err(invalid("bounds must be positive"));
    }
    let mut report = DualityReport::new(format!("Θ_{n}^op ≃ D_{n}"), bounds, Some(disk_size_bound));
    report.notes.push(
        "= structural equality, ≅ bijective functor, ≃ fully faithful and essentially surjective onto bounded objects"
            .into(),
    );
    if let Some(f) = fault {
        report.notes.push(format!("fault injected: {f:?}"));
    }
    let Some(mut level) = level_one(bounds[n - 1], disk_size_bound, &mut report)? else {
        return Ok(report);
    };
    for k in 2..=n {
        match next_level(k, &bounds[n - k..], disk_size_bound, level, fault, &mut report)? {
            Some(l) => level = l,
            None => return Ok(report),
        }
    }
    Ok(report)
}

/// The sieve whose quotient gives the Segal functor of an ambient: the
/// constants sieve on `[1]` for `Δ`, its induced sieve for `ΔZ/2`, and the
/// empty sieve on `⟨0⟩` for `Λ`.
pub fn default_segal_sieve(ambient: Ambient, window: usize) -> Result<SieveWindow> {
    match ambient {
        Ambient::Lambda => Ok(SieveWindow::empty(Ambient::Lambda, 0, window)),
        _ => {
            if window == 0 {
                return Err(invalid(format!("the Segal sieve of {ambient} lives on [1]")));
            }
            let b = family_to_sieve(&largest_proper_sieve(1)?, window)?;
            if ambient == Ambient::Delta {
                Ok(b)
            } else {
                induce_crossed_sieve(&b, ambient)
            }
        }
    }
}

/// The Segal functor `ΔG≤b → Γ≤k` from [`default_segal_sieve`].
pub fn crossed_segal_functor(ambient: Ambient, bound: usize) -> Result<Functor> {
    let q = segal_from_sieve(&default_segal_sieve(ambient, bound)?)?;
    let k = *q.quotient.sizes.iter().max().unwrap_or(&0);
    q.to_gamma(Arc::new(materialize(Site::Gamma, k)))
}

/// Stage-wise duality isomorphisms for `G_1 ≀ (G_2 ≀ ⋯ ≀ G_n)`, innermost
/// layer first, composed with the labels of the previous layer.
pub fn verify_crossed_duality(ambients: &[Ambient], bounds: &[usize]) -> Result<DualityReport> {
    if ambients.is_empty() || ambients.len() != bounds.len() {
        return Err(invalid("one bound per ambient is required"));
    }
    let names: Vec<String> = ambients.iter().map(ToString::to_string).collect();
    let mut report = DualityReport::new(
        format!("({})^op ≅ {}", names.join("≀"), names.iter().map(|n| format!("{n}^op")).collect::<Vec<_>>().join(" ⊗^M^op ")),
        bounds,
        None,
    );
    report.notes.push(
        "reading: the opposite of the iterated wreath product is compared with the iterated cowreath product of opposites"
            .into(),
    );
    let n = ambients.len();
    let last = ambients[n - 1];
    let t = Instant::now();
    let inner = Arc::new(materialize_ranks(crate::sieves::ambient_site(last), 0, bounds[n - 1]));
    let inner_op = Arc::new(inner.opposite());
    let id = Functor::identity(inner_op.clone());
    let st = stage(
        n,
        format!("({last})^op ≅ {last}^op"),
        Relation::Iso,
        &inner_op,
        &inner_op,
        iso_checks(&id),
    );
    if !report.push(st, t) {
        return Ok(report);
    }
    // (wreath so far, opposite of it → iterated cowreath)
    let mut wreath_cat = inner;
    let mut to_cowreath = id;
    for i in (0..n - 1).rev() {
        let g = ambients[i];
        let t = Instant::now();
        let segal = crossed_segal_functor(g, bounds[i])?;
        let dual = duality_iso(&segal, wreath_cat.clone())?;
        let mut checks = vec![functor_check(&segal)];
        checks.extend(iso_checks(&dual.functor));
        checks.push(Check::new("commutes with the base projection", dual.commutes_with_base()?, None));
        let st = stage(
            i + 1,
            format!("({g}≀W)^op ≅ {g}^op ⊗^M^op W^op"),
            Relation::Iso,
            &dual.source,
            &dual.target.category,
            checks,
        );
        if !report.push(st, t) {
            return Ok(report);
        }

        let t = Instant::now();
        let pgop = p_omega(&dual)?;
        let outer = cowreath(&pgop, to_cowreath.target.clone())?;
        let relabel = map_labels("1⊗τ", &dual.target, &outer, &to_cowreath)?;
        let composite = relabel.after(&dual.functor)?;
        let mut checks = iso_checks(&relabel);
        checks.extend(iso_checks(&composite).into_iter().map(|mut c| {
            c.name = format!("composite: {}", c.name);
            c
        }));
        let st = stage(
            i + 1,
            format!("{g}^op ⊗^M^op W^op ≅ {}", opposite_chain(&names[i..])),
            Relation::Iso,
            &dual.target.category,
            &outer.category,
            checks,
        );
        if !report.push(st, t) {
            return Ok(report);
        }
        wreath_cat = dual.wreath.category.clone();
        to_cowreath = composite;
    }
    Ok(report)
}

fn opposite_chain(names: &[String]) -> String {
    names
        .iter()
        .map(|n| format!("{n}^op"))
        .collect::<Vec<_>>()
        .join(" ⊗^M^op ")
}
