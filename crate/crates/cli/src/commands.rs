use anyhow::{anyhow, Context};
use dihom_core::homology::{
    chain_complex, homology as homology_group, homology_summary, relative_complex,
    verify_boundary_equivariance, GroupSummary,
};
use dihom_core::nualg::{
    algebra_from_json, algebra_to_json, check_adjunction_triangles, find_local_unit, is_idempotent,
    is_local_unit, path_algebra, unitalize, Algebra, Side, ALGEBRA_SCHEMA,
};
use dihom_core::{EnrichedCategory, Error};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::load;
use crate::output::{describe_category, envelope, group_text, to_value, verdict};
use crate::{JobArgs, Outcome};

fn require_valid(c: &EnrichedCategory) -> anyhow::Result<()> {
    let report = c.validate();
    if !report.is_valid() {
        return Err(anyhow!("input is not a valid enriched category:\n{report}"));
    }
    Ok(())
}

pub fn validate(job: &JobArgs) -> anyhow::Result<Outcome> {
    let c = load::load_category(&job.input, job.dim)?;
    let report = c.validate();
    let mut m = envelope("validate", None, Some(c.truncation()));
    m.insert("objects".into(), json!(c.objects()));
    m.insert("valid".into(), json!(report.is_valid()));
    m.insert("violations".into(), to_value(&report.violations()));
    let mut text = vec![format!(
        "{}: {}",
        job.input.display(),
        if report.is_valid() {
            "valid"
        } else {
            "INVALID"
        }
    )];
    text.extend(
        report
            .violations()
            .iter()
            .map(|v| format!("  {}: {}", v.location, v.message)),
    );
    Ok(Outcome {
        report: m,
        text,
        success: report.is_valid(),
    })
}

pub fn homology(job: &JobArgs) -> anyhow::Result<Outcome> {
    let ring = load::ring(&job.ring)?;
    let c = load::load_category(&job.input, job.dim)?;
    let degrees = load::degrees(job.degrees.as_deref(), c.truncation())?;
    require_valid(&c)?;
    let cx = chain_complex(&c, ring)?;
    let equivariance = verify_boundary_equivariance(&cx);
    let mut groups = Vec::new();
    let mut text = vec![format!("ring {ring}, truncation {}", c.truncation())];
    for n in degrees {
        let h = homology_group(&cx, n)?;
        let s = homology_summary(&h, cx.chains(n).basis().names());
        text.push(format!(
            "H_{n} = {}",
            group_text(s.free_rank, &s.invariant_factors)
        ));
        groups.push(s);
    }
    text.push(format!(
        "boundary equivariance: {}",
        verdict(equivariance.passed())
    ));
    let mut m = envelope("homology", Some(&ring.code()), Some(c.truncation()));
    describe_category(&mut m, &c);
    m.insert(
        "chain_ranks".into(),
        json!((0..=cx.top()).map(|n| cx.dim(n)).collect::<Vec<_>>()),
    );
    m.insert("boundary_equivariance".into(), to_value(&equivariance));
    m.insert("homology".into(), to_value(&groups));
    Ok(Outcome {
        report: m,
        text,
        success: equivariance.passed(),
    })
}

pub fn relative(job: &JobArgs) -> anyhow::Result<Outcome> {
    let ring = load::ring(&job.ring)?;
    let c = load::load_category(&job.input, job.dim)?;
    let degrees = load::degrees(job.degrees.as_deref(), c.truncation())?;
    let sub = load::sub_objects(job.sub.as_deref())?;
    require_valid(&c)?;
    let refs: Vec<&str> = sub.iter().map(String::as_str).collect();
    let rel = relative_complex(&c, &refs, ring)?;
    let les = rel.les(*degrees.end())?;
    let transfer = degrees
        .clone()
        .map(|n| rel.transfer_kernel(n))
        .collect::<Result<Vec<_>, Error>>()?;
    let top = rel.top();
    let relative_chains = (0..=top)
        .map(|n| rel.relative_chains(n).map(|m| GroupSummary::of(&m)))
        .collect::<Result<Vec<_>, Error>>()?;

    let mut text = vec![format!(
        "ring {ring}, truncation {top}, T = {{{}}}",
        sub.join(", ")
    )];
    for row in &les.degrees {
        text.push(format!(
            "n = {}: H(T^S) = {}, H(S) = {}, H(S, T) = {}, exact {}",
            row.degree,
            group_text(row.extended.free_rank, &row.extended.invariant_factors),
            group_text(row.absolute.free_rank, &row.absolute.invariant_factors),
            group_text(row.relative.free_rank, &row.relative.invariant_factors),
            verdict(row.exact_at_extended && row.exact_at_absolute && row.exact_at_relative),
        ));
    }
    text.push(format!("long exact sequence: {}", verdict(les.exact)));
    for t in &transfer {
        text.push(format!(
            "transfer n = {}: kernel {}, image = extended {}",
            t.degree,
            group_text(t.kernel.free_rank, &t.kernel.invariant_factors),
            verdict(t.image_equals_extended)
        ));
    }

    let mut m = envelope("relative", Some(&ring.code()), Some(top));
    describe_category(&mut m, &c);
    m.insert("sub".into(), json!(sub));
    m.insert(
        "extended_ranks".into(),
        json!((0..=top)
            .map(|n| rel.extended(n).rank())
            .collect::<Vec<_>>()),
    );
    m.insert("relative_chains".into(), to_value(&relative_chains));
    m.insert("les".into(), to_value(&les));
    m.insert("transfer".into(), to_value(&transfer));
    m.insert(
        "verdicts".into(),
        json!({
            "les_exact": les.exact,
            "transfer_injective": transfer.iter().all(|t| t.injective),
            "transfer_image_is_extended": transfer.iter().all(|t| t.image_equals_extended),
        }),
    );
    Ok(Outcome {
        report: m,
        text,
        success: les.exact,
    })
}

fn algebra_input(job: &JobArgs) -> anyhow::Result<(Algebra, Option<EnrichedCategory>)> {
    let value = load::read_json(&job.input)?;
    if value.get("schema").and_then(Value::as_str) == Some(ALGEBRA_SCHEMA) {
        load::check_dim(job.dim)?;
        let a = algebra_from_json(&value)
            .with_context(|| format!("cannot load {}", job.input.display()))?;
        return Ok((a, None));
    }
    let ring = load::ring(&job.ring)?;
    let c = load::category(&value, job.dim, &job.input)?;
    require_valid(&c)?;
    Ok((path_algebra(&c.underlying_category(), ring), Some(c)))
}

pub fn algebra(job: &JobArgs) -> anyhow::Result<Outcome> {
    let (a, c) = algebra_input(job)?;
    let basis: Vec<_> = (0..a.dim()).map(|i| a.basis_element(i)).collect();
    let witness = |side| match find_local_unit(&a, &basis, side) {
        Ok(e) => Ok(Some(a.format_element(&e))),
        Err(Error::NotSUnital(_)) => Ok(None),
        Err(e) => Err(e),
    };
    let associativity_failure = a
        .associativity_failure()
        .map(|(i, j, k)| [i, j, k].map(|x| a.basis()[x].name.clone()));
    let idempotent = is_idempotent(&a)?;
    let (left, right, both) = (
        witness(Side::Left)?,
        witness(Side::Right)?,
        witness(Side::Both)?,
    );

    let hat = unitalize(&a);
    let unit = hat
        .unit()
        .ok_or_else(|| anyhow!("unitalization has no unit"))?;
    let expected = hat.pair(&a.zero(), &a.ring().one())?;
    let hat_basis: Vec<_> = (0..hat.dim()).map(|i| hat.basis_element(i)).collect();
    let unit_verified = is_local_unit(&hat, &unit, &hat_basis, Side::Both);
    let mut samples = hat_basis.clone();
    samples.push(hat.zero());
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    samples.extend((0..8).map(|_| hat.random_element(&mut rng, 3)));
    let adjunction = check_adjunction_triangles(&a, "input", &samples)?;

    let mut text = vec![
        format!("ring {}, dimension {}", a.ring(), a.dim()),
        format!("associative: {}", associativity_failure.is_none()),
        format!("idempotent: {idempotent}"),
    ];
    for (name, w) in [("left", &left), ("right", &right), ("two-sided", &both)] {
        text.push(format!(
            "{name} local unit for the basis: {}",
            w.as_deref().unwrap_or("none")
        ));
    }
    text.push(format!(
        "unitalization: dimension {}, unit {} = (0,1): {}",
        hat.dim(),
        hat.format_element(&unit),
        verdict(unit == expected && unit_verified)
    ));
    text.push(format!(
        "adjunction triangles: {}",
        verdict(adjunction.holds())
    ));

    let mut m = envelope(
        "algebra",
        Some(&a.ring().code()),
        c.as_ref().map(EnrichedCategory::truncation),
    );
    if let Some(c) = &c {
        describe_category(&mut m, c);
    }
    m.insert("algebra".into(), algebra_to_json(&a));
    m.insert("dimension".into(), json!(a.dim()));
    m.insert("associative".into(), json!(associativity_failure.is_none()));
    m.insert("associativity_failure".into(), json!(associativity_failure));
    m.insert("idempotent".into(), json!(idempotent));
    m.insert(
        "local_units".into(),
        json!({ "left": left, "right": right, "both": both }),
    );
    m.insert(
        "unitalization".into(),
        json!({
            "dimension": hat.dim(),
            "unit": hat.format_element(&unit),
            "unit_is_pair_0_1": unit == expected,
            "unit_verified": unit_verified,
        }),
    );
    m.insert("adjunction".into(), to_value(&adjunction));
    let success =
        associativity_failure.is_none() && unit == expected && unit_verified && adjunction.holds();
    Ok(Outcome {
        report: m,
        text,
        success,
    })
}
