use serde_json::Value;

/// A rendered result: a CSV table and its JSON counterpart.
pub struct Payload {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub json: Value,
}

impl Payload {
    pub fn new(header: &[&str], rows: Vec<Vec<String>>, json: Value) -> Self {
        Payload {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows,
            json,
        }
    }

    /// Two-column `item,value` table whose JSON form is the same pairs as an
    /// object.
    pub fn items(items: Vec<(String, Value)>) -> Self {
        let rows = items
            .iter()
            .map(|(k, v)| vec![k.clone(), plain(v)])
            .collect();
        let json = Value::Object(items.into_iter().collect());
        Payload::new(&["item", "value"], rows, json)
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(&self.json).expect("values serialize");
            s.push('\n');
            return s;
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
    }
}

/// Strings without quotes, everything else in compact JSON.
pub fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}
