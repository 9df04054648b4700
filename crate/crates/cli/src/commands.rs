use serde_json::{json, Value};

use incidence_core::algebra::{
    check_algebra, check_coalgebra, check_mweak, check_strong, solve_antipode, AxiomReport,
};
use incidence_core::incidence::{audit_mobius, hat};
use incidence_core::interval_bialgebra::class_name;
use incidence_core::relation::{check_compatibility, check_delta_compatible, CheckResult};
use incidence_core::series::{bernoulli as bernoulli_numbers, classical_mobius as mu};
use incidence_core::{
    build_interval_bialgebra, format_rational, mobius as mobius_fn, Error, IntervalRelation, Result,
};

use crate::input::{load, load_poset};
use crate::output::Payload;

pub fn poset_check(arg: &str) -> Result<Payload> {
    let p = load_poset(arg)?;
    p.check_axioms()?;
    let ext: Vec<&str> = p
        .linear_extension()
        .into_iter()
        .map(|i| p.label(i))
        .collect();
    Ok(Payload::items(vec![
        ("elements".into(), json!(p.len())),
        ("covers".into(), json!(p.cover_pairs().len())),
        ("intervals".into(), json!(p.all_intervals().len())),
        ("minimum".into(), json!(p.minimum().map(|m| p.label(m)))),
        ("linear_extension".into(), json!(ext.join(" "))),
    ]))
}

fn check_row(name: &str, c: &CheckResult) -> Vec<String> {
    vec![
        name.into(),
        c.ok.to_string(),
        c.witness
            .as_ref()
            .map(|w| w.to_string())
            .unwrap_or_default(),
    ]
}

pub fn relation_check(poset: &str, relation: &str) -> Result<Payload> {
    let r = load(poset, relation)?;
    let v = check_compatibility(&r);
    let rows = vec![
        check_row("nabla", &v.nabla),
        check_row("delta", &v.delta),
        check_row("unitary", &v.unitary),
        vec![
            "compatible".into(),
            v.is_compatible().to_string(),
            String::new(),
        ],
    ];
    let json = json!({
        "relation": r.name(),
        "classes": r.num_classes(),
        "compatible": v.is_compatible(),
        "verdict": v,
    });
    Ok(Payload::new(&["check", "ok", "witness"], rows, json))
}

fn require_delta(r: &IntervalRelation) -> Result<()> {
    let d = check_delta_compatible(r);
    match d.witness {
        None => Ok(()),
        Some(w) => Err(Error::Precondition(format!(
            "relation `{}` is not Δ-compatible: {w}",
            r.name()
        ))),
    }
}

pub fn mobius(poset: &str, relation: &str) -> Result<Payload> {
    let r = load(poset, relation)?;
    require_delta(&r)?;
    audit_mobius(&r)?;
    let m = mobius_fn(&r);
    let rows = m
        .values()
        .iter()
        .enumerate()
        .map(|(c, v)| vec![r.key(c).to_string(), format_rational(v)])
        .collect();
    Ok(Payload::new(&["class_key", "value"], rows, m.to_json()))
}

pub fn antipode(poset: &str, relation: &str) -> Result<Payload> {
    let r = load(poset, relation)?;
    let ib = build_interval_bialgebra(r.clone())?;
    let s = solve_antipode(ib.bialgebra())
        .ok_or_else(|| Error::Precondition("the interval bialgebra has no antipode".into()))?;
    let matches = s == hat(&mobius_fn(ib.relation_arc()));
    let names: Vec<String> = (0..ib.dim()).map(|c| class_name(&r, c)).collect();
    let cells: Vec<Vec<String>> = (0..ib.dim())
        .map(|i| {
            (0..ib.dim())
                .map(|j| format_rational(s.matrix().get(i, j)))
                .collect()
        })
        .collect();
    let mut header: Vec<&str> = vec!["class"];
    header.extend(names.iter().map(String::as_str));
    let mut rows: Vec<Vec<String>> = names
        .iter()
        .zip(&cells)
        .map(|(n, row)| {
            std::iter::once(n.clone())
                .chain(row.iter().cloned())
                .collect()
        })
        .collect();
    let mut last = vec!["matches_hat_mobius".to_string(), matches.to_string()];
    last.resize(header.len(), String::new());
    rows.push(last);
    let json = json!({
        "classes": names,
        "matrix": cells,
        "matches_hat_mobius": matches,
    });
    Ok(Payload::new(&header, rows, json))
}

pub fn axiom_rows(report: &AxiomReport) -> Vec<Vec<String>> {
    report
        .checks
        .iter()
        .map(|c| {
            let w = c
                .witness
                .as_ref()
                .map(|w| format!("{}: {} ≠ {}", w.names.join("⊗"), w.left, w.right))
                .unwrap_or_default();
            vec![c.axiom.clone(), c.ok.to_string(), w]
        })
        .collect()
}

pub fn full_report(b: &incidence_core::FiniteBialgebra) -> AxiomReport {
    let mut report = check_algebra(&b.algebra);
    report.extend(check_coalgebra(&b.coalgebra));
    report.extend(check_mweak(b));
    report.extend(check_strong(b));
    report
}

pub fn bialgebra_verify(poset: &str, relation: &str) -> Result<Payload> {
    let r = load(poset, relation)?;
    let ib = build_interval_bialgebra(r)?;
    let report = full_report(ib.bialgebra());
    let json = serde_json::to_value(&report)?;
    Ok(Payload::new(
        &["axiom", "ok", "witness"],
        axiom_rows(&report),
        json,
    ))
}

fn coefficient_table(first: usize, coeffs: &[incidence_core::Rational]) -> Payload {
    let rows = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| vec![(first + i).to_string(), format_rational(c)])
        .collect();
    let json = Value::Array(
        coeffs
            .iter()
            .map(|c| Value::String(format_rational(c)))
            .collect(),
    );
    Payload::new(&["n", "coefficient"], rows, json)
}

pub fn bernoulli(n: usize) -> Result<Payload> {
    Ok(coefficient_table(0, &bernoulli_numbers(n)?))
}

pub fn classical_mobius(max: usize) -> Result<Payload> {
    Ok(coefficient_table(1, &mu(max)?))
}
