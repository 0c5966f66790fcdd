use dihom_core::bimod::{chain_bimodule, check_firm, module_deunitalize, module_unitalize};
use dihom_core::corpus::{self, has_discrete_homs, CorpusEntry, RelativePair};
use dihom_core::homology::{
    chain_complex, homology, relative_complex, verify_boundary_equivariance,
};
use dihom_core::nualg::{
    check_adjunction_triangles, find_local_unit, is_idempotent, is_local_unit, path_algebra,
    unitalize, Side,
};
use dihom_core::{CoefficientRing, EnrichedCategory};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::load;
use crate::output::{envelope, to_value};
use crate::{InputError, Outcome, SelftestArgs};

/// One named property with its verdict.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

type Verdict = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Verdict {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

const Z: CoefficientRing = CoefficientRing::Integers;

fn validity(c: &EnrichedCategory) -> Verdict {
    let report = c.validate();
    ensure(report.is_valid(), || report.to_string())
}

fn path_algebra_laws(c: &EnrichedCategory, rng: &mut ChaCha8Rng) -> Verdict {
    let a = path_algebra(&c.underlying_category(), Z);
    if let Some((i, j, k)) = a.associativity_failure() {
        return Err(format!("not associative on basis triple ({i}, {j}, {k})"));
    }
    ensure(is_idempotent(&a).map_err(err)?, || "not idempotent".into())?;
    for _ in 0..10 {
        let x = a.random_element(rng, 5);
        let e = find_local_unit(&a, std::slice::from_ref(&x), Side::Both).map_err(err)?;
        ensure(
            is_local_unit(&a, &e, std::slice::from_ref(&x), Side::Both),
            || format!("no two-sided local unit for {}", a.format_element(&x)),
        )?;
    }
    Ok(())
}

fn unitalization(c: &EnrichedCategory) -> Verdict {
    let a = path_algebra(&c.underlying_category(), Z);
    let hat = unitalize(&a);
    let unit = hat.unit().ok_or("unitalization has no unit")?;
    ensure(unit == hat.pair(&a.zero(), &Z.one()).map_err(err)?, || {
        "unit is not (0,1)".into()
    })?;
    let mut samples: Vec<_> = (0..hat.dim()).map(|i| hat.basis_element(i)).collect();
    ensure(is_local_unit(&hat, &unit, &samples, Side::Both), || {
        "(0,1) does not act as identity".into()
    })?;
    samples.push(hat.zero());
    let report = check_adjunction_triangles(&a, "corpus", &samples).map_err(err)?;
    ensure(report.holds(), || {
        format!("adjunction triangles fail: {report:?}")
    })?;
    for n in 0..=1.min(c.truncation()) {
        let m = chain_bimodule(c, n, Z)
            .and_then(|b| b.to_bimodule())
            .map_err(err)?;
        let back = module_deunitalize(&module_unitalize(&m)).map_err(err)?;
        ensure(
            back.left_actions() == m.left_actions() && back.right_actions() == m.right_actions(),
            || format!("unitalize/deunitalize is not the identity on C_{n}"),
        )?;
    }
    Ok(())
}

fn chain_complex_laws(c: &EnrichedCategory) -> Verdict {
    let cx = chain_complex(c, Z).map_err(err)?;
    if let Some(n) = cx.square_failure() {
        return Err(format!("d_{} d_{n} ≠ 0", n - 1));
    }
    let report = verify_boundary_equivariance(&cx);
    ensure(report.passed(), || report.failures.join("; "))
}

fn homology_laws(c: &EnrichedCategory) -> Verdict {
    let cx = chain_complex(c, Z).map_err(err)?;
    let mut groups = Vec::new();
    for n in 0..c.truncation() {
        groups.push(homology(&cx, n).map_err(err)?);
    }
    if has_discrete_homs(c) {
        let k = c.underlying_category().morphism_count();
        ensure(
            groups[0].free_rank() == k && groups[0].invariant_factors().is_empty(),
            || format!("H_0 has free rank {} instead of {k}", groups[0].free_rank()),
        )?;
        for h in &groups[1..] {
            ensure(h.is_zero(), || {
                format!("H_{} is nonzero for discrete homs", h.degree())
            })?;
        }
    }
    Ok(())
}

fn firmness() -> Verdict {
    let c = corpus::interval(1);
    let m = chain_bimodule(&c, 0, Z)
        .and_then(|b| b.to_bimodule())
        .map_err(err)?
        .left_module();
    let report = check_firm(&m).map_err(err)?;
    ensure(report.is_firm(), || {
        "C_0 of the interval is not firm".into()
    })
}

fn relative_laws(p: &RelativePair) -> Verdict {
    let rel = relative_complex(&p.category, &p.sub_refs(), Z).map_err(err)?;
    let top = rel.top() - 1;
    let les = rel.les(top).map_err(err)?;
    ensure(les.exact, || "long exact sequence is not exact".into())?;
    for n in 0..=top {
        let t = rel.transfer_kernel(n).map_err(err)?;
        ensure(t.injective, || {
            format!("transfer map has a kernel in degree {n}")
        })?;
        ensure(t.image_equals_extended && t.domain_iso_extended, || {
            format!("transfer image differs from the extended chains in degree {n}")
        })?;
    }
    Ok(())
}

fn selected(name: &str, subset: &[String]) -> bool {
    subset.is_empty() || subset.iter().any(|s| name.starts_with(s.as_str()))
}

/// Runs every property on the selected corpus entries, relative pairs and
/// extra inputs; fails on the first violated property per entry.
pub fn selftest(args: &SelftestArgs) -> anyhow::Result<Outcome> {
    let subset: Vec<String> = args
        .subset
        .iter()
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect();
    let mut entries: Vec<CorpusEntry> = corpus::standard()
        .into_iter()
        .filter(|e| selected(&e.name, &subset))
        .collect();
    for path in &args.input {
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "input".into());
        entries.push(CorpusEntry {
            name,
            category: load::load_category(path, None)?,
        });
    }
    let pairs: Vec<RelativePair> = [2, 3]
        .into_iter()
        .flat_map(|d| {
            corpus::relative_pairs(d)
                .into_iter()
                .map(move |p| RelativePair {
                    name: format!("{}/D{d}", p.name),
                    ..p
                })
        })
        .filter(|p| selected(&p.name, &subset))
        .collect();
    if entries.is_empty() && pairs.is_empty() {
        return Err(InputError(format!(
            "--subset {} matches nothing in the corpus",
            subset.join(",")
        ))
        .into());
    }

    let mut checks = Vec::new();
    let mut record = |name: String, v: Verdict| {
        let passed = v.is_ok();
        checks.push(Check {
            name,
            passed,
            detail: v.err().unwrap_or_default(),
        });
        passed
    };
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for e in &entries {
        if !record(format!("validity:{}", e.name), validity(&e.category)) {
            continue;
        }
        record(
            format!("path-algebra:{}", e.name),
            path_algebra_laws(&e.category, &mut rng),
        );
        record(
            format!("unitalization:{}", e.name),
            unitalization(&e.category),
        );
        if record(
            format!("chain-complex:{}", e.name),
            chain_complex_laws(&e.category),
        ) {
            record(format!("homology:{}", e.name), homology_laws(&e.category));
        }
    }
    if subset.is_empty() || selected("interval", &subset) {
        record("firmness:interval".into(), firmness());
    }
    for p in &pairs {
        record(format!("relative:{}", p.name), relative_laws(p));
    }

    let failed: Vec<&Check> = checks.iter().filter(|c| !c.passed).collect();
    let mut text: Vec<String> = checks
        .iter()
        .map(|c| {
            if c.passed {
                format!("PASS {}", c.name)
            } else {
                format!("FAIL {}: {}", c.name, c.detail)
            }
        })
        .collect();
    text.push(format!(
        "{} passed, {} failed",
        checks.len() - failed.len(),
        failed.len()
    ));
    let mut m = envelope("selftest", Some("z"), None);
    m.insert(
        "first_failure".into(),
        json!(failed.first().map(|c| &c.name)),
    );
    m.insert("passed".into(), json!(checks.len() - failed.len()));
    m.insert("failed".into(), json!(failed.len()));
    let success = failed.is_empty();
    m.insert("checks".into(), to_value(&checks));
    Ok(Outcome {
        report: m,
        text,
        success,
    })
}
