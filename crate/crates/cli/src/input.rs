use std::path::Path;
use std::sync::Arc;

use incidence_core::poset::PosetJson;
use incidence_core::relation::{relation_from_json, RelationJson};
use incidence_core::{relation_from_key, Error, IntervalRelation, Poset, Result};

/// A JSON file if the path exists, otherwise a generator spec like `chain:4`.
pub fn load_poset(arg: &str) -> Result<Arc<Poset>> {
    let p = if Path::new(arg).is_file() {
        let text = std::fs::read_to_string(arg)?;
        let json: PosetJson = serde_json::from_str(&text)?;
        Poset::from_json(&json)?
    } else if arg.contains(':') {
        Poset::from_generator(arg)?
    } else {
        return Err(Error::InvalidInput(format!(
            "`{arg}` is neither a file nor a generator spec"
        )));
    };
    Ok(Arc::new(p))
}

/// A JSON file if the path exists, otherwise a builtin relation name.
pub fn load_relation(poset: &Arc<Poset>, arg: &str) -> Result<Arc<IntervalRelation>> {
    let r = if Path::new(arg).is_file() {
        let text = std::fs::read_to_string(arg)?;
        let spec: RelationJson = serde_json::from_str(&text)?;
        relation_from_json(poset.clone(), &spec)?
    } else {
        relation_from_key(poset.clone(), arg)?
    };
    Ok(Arc::new(r))
}

pub fn load(poset: &str, relation: &str) -> Result<Arc<IntervalRelation>> {
    load_relation(&load_poset(poset)?, relation)
}
