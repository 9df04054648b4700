use std::sync::Arc;

use serde_json::{json, Value};

use incidence_core::algebra::{
    check_mweak, check_strong, convolution_unit, matrix_bialgebra, quaternion_fixture,
    solve_antipode, AxiomReport,
};
use incidence_core::incidence::{check_atom_additivity, check_hat_homomorphism, hat, Outcome};
use incidence_core::interval_bialgebra::{class_name, hopf_square};
use incidence_core::morphisms::{
    check_pullback_morphism, refinement_projection, squarefree_restriction,
};
use incidence_core::relation::check_compatibility;
use incidence_core::sampling::{random_incidence_function, random_unital_function, rng};
use incidence_core::series::{incidence_to_series, Series, SeriesFamily};
use incidence_core::{
    build_interval_bialgebra, format_rational, mobius, relation_from_key, zeta, Error,
    FiniteBialgebra, IntervalBialgebra, Poset, Result,
};

use crate::output::Payload;

type Items = Vec<(String, Value)>;

fn verdict(ok: bool, witness: Option<String>) -> Value {
    match (ok, witness) {
        (true, _) => json!("pass"),
        (false, Some(w)) => json!(format!("fail: {w}")),
        (false, None) => json!("fail"),
    }
}

fn outcome(o: Outcome) -> Value {
    verdict(o.ok, o.witness)
}

fn push_report(items: &mut Items, report: &AxiomReport) {
    for c in &report.checks {
        let w = c
            .witness
            .as_ref()
            .map(|w| format!("{}: {} ≠ {}", w.names.join("⊗"), w.left, w.right));
        items.push((c.axiom.clone(), verdict(c.ok, w)));
    }
}

fn antipode_summary(b: &FiniteBialgebra) -> Value {
    match solve_antipode(b) {
        None => json!("none"),
        Some(s) => {
            let images: Vec<String> = (0..b.dim())
                .map(|j| format!("{} ↦ {}", b.names()[j], s.image(j).render(b.names())))
                .collect();
            json!(images.join(", "))
        }
    }
}

fn param(spec: &str) -> Result<u64> {
    spec.parse()
        .map_err(|_| Error::InvalidInput(format!("demo parameter `{spec}` is not a number")))
}

pub fn run(name: &str, seed: u64) -> Result<Payload> {
    let (kind, arg) = name.split_once(':').unwrap_or((name, ""));
    let items = match kind {
        "hamilton" => hamilton()?,
        "matrix" => matrix(param(arg)? as usize)?,
        "boolean" => boolean(name, seed)?,
        "chain" => chain(name, seed)?,
        "divisors" => divisors(name)?,
        "fan" => fan(name, seed)?,
        "squarefree" => squarefree(param(arg)?)?,
        _ => return Err(Error::InvalidInput(format!("unknown demo `{name}`"))),
    };
    Ok(Payload::items(items))
}

fn hamilton() -> Result<Items> {
    let b = quaternion_fixture();
    let mut items = Items::new();
    push_report(&mut items, &check_mweak(&b));
    push_report(&mut items, &check_strong(&b));
    let u = convolution_unit(&b.coalgebra, &b.algebra)?;
    let images: Vec<String> = (0..b.dim())
        .map(|j| format!("{} ↦ {}", b.names()[j], u.image(j).render(b.names())))
        .collect();
    items.push(("convolution_unit".into(), json!(images.join(", "))));
    items.push(("antipode".into(), antipode_summary(&b)));
    Ok(items)
}

fn matrix(n: usize) -> Result<Items> {
    let b = matrix_bialgebra(n)?;
    let mut items = Items::new();
    push_report(&mut items, &crate::commands::full_report(&b));
    items.push(("antipode".into(), antipode_summary(&b)));
    Ok(items)
}

fn interval_bialgebra(poset: &Arc<Poset>, key: &str) -> Result<IntervalBialgebra> {
    build_interval_bialgebra(relation_from_key(poset.clone(), key)?)
}

fn class_values(
    items: &mut Items,
    label: &str,
    ib: &IntervalBialgebra,
    f: impl Fn(usize) -> Result<String>,
) -> Result<()> {
    for c in 0..ib.dim() {
        items.push((
            format!("{label}({})", class_name(ib.relation(), c)),
            json!(f(c)?),
        ));
    }
    Ok(())
}

fn antipode_vs_mobius(ib: &IntervalBialgebra) -> Value {
    match solve_antipode(ib.bialgebra()) {
        None => json!("no antipode"),
        Some(s) => json!(s == hat(&mobius(ib.relation_arc()))),
    }
}

fn boolean(spec: &str, seed: u64) -> Result<Items> {
    let p = Arc::new(Poset::from_generator(spec)?);
    let mut items = Items::new();
    for key in ["setdiff", "cardinality"] {
        let v = check_compatibility(&relation_from_key(p.clone(), key)?);
        items.push((
            format!("compatible[{key}]"),
            verdict(v.is_compatible(), Some(v.summary())),
        ));
    }
    let ib = interval_bialgebra(&p, "cardinality")?;
    let m = mobius(ib.relation_arc());
    class_values(&mut items, "mobius", &ib, |c| {
        Ok(format_rational(m.value(c)))
    })?;
    class_values(&mut items, "hopf_square", &ib, |c| {
        let (k, target) = hopf_square(&ib, c)?;
        Ok(format!(
            "{} {}",
            format_rational(&k),
            class_name(ib.relation(), target)
        ))
    })?;
    push_report(&mut items, &check_strong(ib.bialgebra()));
    items.push(("antipode_is_hat_mobius".into(), antipode_vs_mobius(&ib)));
    let fine = Arc::new(relation_from_key(p.clone(), "setdiff")?);
    let g = refinement_projection(&fine, ib.relation_arc())?;
    items.push((
        "pullback_setdiff_to_cardinality".into(),
        outcome(check_pullback_morphism(&g, 20, seed)?),
    ));
    Ok(items)
}

fn chain(spec: &str, seed: u64) -> Result<Items> {
    let p = Arc::new(Poset::from_generator(spec)?);
    let ib = interval_bialgebra(&p, "diff")?;
    let r = ib.relation_arc().clone();
    let mut items = Items::new();
    push_report(&mut items, &check_mweak(ib.bialgebra()));
    push_report(&mut items, &check_strong(ib.bialgebra()));
    let m = mobius(&r);
    class_values(&mut items, "mobius", &ib, |c| {
        Ok(format_rational(m.value(c)))
    })?;
    for (label, f) in [("zeta_series", zeta(&r)), ("mobius_series", m.clone())] {
        if let Series::Power(s) = incidence_to_series(&f, SeriesFamily::Chain)? {
            let cs: Vec<String> = s.coeffs().iter().map(format_rational).collect();
            items.push((label.into(), json!(cs.join(" "))));
        }
    }
    items.push(("antipode_is_hat_mobius".into(), antipode_vs_mobius(&ib)));
    let mut rng = rng(seed);
    let (phi, psi) = (
        random_incidence_function(&mut rng, &r),
        random_incidence_function(&mut rng, &r),
    );
    items.push((
        "hat_homomorphism".into(),
        outcome(check_hat_homomorphism(&ib, &phi, &psi)?),
    ));
    Ok(items)
}

fn divisors(spec: &str) -> Result<Items> {
    let p = Arc::new(Poset::from_generator(spec)?);
    let ib = interval_bialgebra(&p, "ratio")?;
    let m = mobius(ib.relation_arc());
    let mut items = Items::new();
    class_values(&mut items, "mobius", &ib, |c| {
        Ok(format_rational(m.value(c)))
    })?;
    class_values(&mut items, "hopf_square", &ib, |c| {
        Ok(format_rational(&hopf_square(&ib, c)?.0))
    })?;
    items.push(("antipode_is_hat_mobius".into(), antipode_vs_mobius(&ib)));
    Ok(items)
}

fn fan(spec: &str, seed: u64) -> Result<Items> {
    let p = Arc::new(Poset::from_generator(spec)?);
    let ib = interval_bialgebra(&p, "points")?;
    let r = ib.relation_arc().clone();
    let names = ib.bialgebra().names();
    let mut items = Items::new();
    class_values(&mut items, "coproduct", &ib, |c| {
        Ok(ib.bialgebra().coalgebra.coproduct(c).render(names))
    })?;
    let mut rng = rng(seed);
    let (phi, psi) = (
        random_unital_function(&mut rng, &r),
        random_unital_function(&mut rng, &r),
    );
    items.push((
        "atom_additivity".into(),
        outcome(check_atom_additivity(&ib, &phi, &psi)?),
    ));
    Ok(items)
}

fn squarefree(n: u64) -> Result<Items> {
    let rep = squarefree_restriction(n)?;
    let primes: Vec<String> = rep.primes.iter().map(u64::to_string).collect();
    Ok(vec![
        ("primes".into(), json!(primes.join(" "))),
        ("map".into(), rep.map.to_json()["map"].clone()),
        ("morphism".into(), verdict(rep.morphism_ok, None)),
        ("section".into(), verdict(rep.section_ok, None)),
        ("mobius_restricts".into(), verdict(rep.mobius_ok, None)),
    ])
}
