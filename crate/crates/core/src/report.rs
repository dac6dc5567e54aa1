//! Uniform report envelope for the CLI: deterministic JSON plus a plain-text
//! renderer, including the chain layout for classifications.

use serde::Serialize;
use serde_json::Value;

use crate::classify::{Classification, SpaceTag, Strictness};

pub const SCHEMA: &str = "dml-report/1";

/// Envelope around one command's results. JSON output is byte-identical for
/// identical inputs: keys are sorted (serde_json's default map) and the wall
/// time is only populated on request.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: String,
    pub version: String,
    pub command: String,
    pub params: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub results: Value,
    pub wall_time_ms: Option<f64>,
}

impl Report {
    pub fn new(command: &str, params: Value) -> Report {
        Report {
            schema: SCHEMA.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            params,
            seed: None,
            results: Value::Null,
            wall_time_ms: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Report {
        self.seed = Some(seed);
        self
    }

    pub fn with_results(mut self, results: Value) -> Report {
        self.results = results;
        self
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        if let Some(seed) = self.seed {
            out.push_str(&format!("seed: {seed}\n"));
        }
        out.push_str("params:\n");
        render_value(&self.params, 2, &mut out);
        out.push_str("results:\n");
        render_value(&self.results, 2, &mut out);
        out
    }
}

/// Full-precision decimal rendering (17 significant digits round-trips f64).
pub fn fmt17(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        format!("{v}")
    } else {
        format!("{v:.17e}")
    }
}

fn render_value(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_value(val, indent + 2, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(val))),
                }
            }
        }
        Value::Array(items) => {
            for val in items {
                match val {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}-\n"));
                        render_value(val, indent + 2, out);
                    }
                    _ => out.push_str(&format!("{pad}- {}\n", scalar(val))),
                }
            }
        }
        Value::Null => {}
        _ => out.push_str(&format!("{pad}{}\n", scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Number(n) => match n.as_f64() {
            Some(f) if !n.is_i64() && !n.is_u64() => fmt17(f),
            _ => n.to_string(),
        },
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Renders a classification as an inclusion chain, e.g.
/// `N = I = ℓ1 ⊊ E = ℓ_{3/2} ⊊ L = ℓ∞`, with an unresolved extendible space
/// shown between its two bounds (`ℓ_{3/2} ⊆ E ⊆ ℓ_{3+ε}`).
pub fn render_chain(c: &Classification) -> String {
    let ideals = [
        ("N", c.nuclear),
        ("I", c.integral),
        ("E", c.extendible),
        ("L", c.bounded),
    ];
    let rels = [c.nuclear_vs_integral, c.integral_vs_extendible, c.extendible_vs_bounded];
    // merge runs of equal adjacent spaces into one group
    let mut groups: Vec<(Vec<&str>, SpaceTag)> = vec![(vec![ideals[0].0], ideals[0].1)];
    let mut seps: Vec<Strictness> = Vec::new();
    for i in 1..4 {
        if rels[i - 1] == Strictness::Equal && ideals[i].1 == groups.last().unwrap().1 {
            groups.last_mut().unwrap().0.push(ideals[i].0);
        } else {
            seps.push(rels[i - 1]);
            groups.push((vec![ideals[i].0], ideals[i].1));
        }
    }
    let mut parts: Vec<String> = Vec::new();
    for (names, tag) in &groups {
        match tag {
            SpaceTag::Bracket { lower, upper_base } => parts.push(format!(
                "{} ⊆ {} ⊆ ℓ_{{{upper_base}+ε}}",
                SpaceTag::lu(*lower),
                names.join(" = "),
            )),
            tag => parts.push(format!("{} = {tag}", names.join(" = "))),
        }
    }
    let mut out = parts[0].clone();
    for (i, part) in parts.iter().enumerate().skip(1) {
        let sep = match seps[i - 1] {
            Strictness::Equal => " = ",
            Strictness::Strict => " ⊊ ",
            Strictness::Unresolved => " ⊆ ",
        };
        out.push_str(sep);
        out.push_str(part);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify_operators;
    use crate::exponents::Exponent;

    fn exp(s: &str) -> Exponent {
        s.parse().unwrap()
    }

    #[test]
    fn chain_rendering() {
        let c = classify_operators(exp("3/2"), exp("1"), 4).unwrap();
        assert_eq!(c.nuclear, c.integral);
        assert_eq!(render_chain(&c), "N = I = ℓ1 ⊊ E = ℓ_{3/2} ⊊ L = ℓ∞");

        let c = classify_operators(exp("3/2"), exp("3/2"), 2).unwrap();
        let chain = render_chain(&c);
        assert!(chain.contains("ℓ_{3/2} ⊆ E ⊆ ℓ_{3+ε}"), "{chain}");

        let c = classify_operators(exp("1"), exp("inf"), 3).unwrap();
        assert_eq!(render_chain(&c), "N = c0 ⊊ I = E = L = ℓ∞");
    }

    #[test]
    fn json_round_trip_and_determinism() {
        let mk = || {
            Report::new("norm", serde_json::json!({"p": "2", "q": "1", "n": 1}))
                .with_seed(1729)
                .with_results(serde_json::json!({"value": 5.0, "kind": "exact"}))
        };
        let a = mk().to_json_string();
        let b = mk().to_json_string();
        assert_eq!(a, b);
        let parsed: Value = serde_json::from_str(&a).unwrap();
        assert_eq!(parsed["schema"], SCHEMA);
        assert_eq!(parsed["seed"], 1729);
        let reparsed: Value = serde_json::from_str(&b).unwrap();
        assert_eq!(parsed, reparsed);
    }

    #[test]
    fn empty_report_is_valid_json() {
        let r = Report::new("noop", serde_json::json!({}))
            .with_results(serde_json::json!([]));
        let parsed: Value = serde_json::from_str(&r.to_json_string()).unwrap();
        assert_eq!(parsed["results"], serde_json::json!([]));
    }

    #[test]
    fn full_precision_formatting() {
        assert_eq!(fmt17(5.0), "5");
        assert_eq!(fmt17(0.1), "1.00000000000000006e-1");
        let v = std::f64::consts::PI;
        let back: f64 = fmt17(v).parse().unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn text_rendering_shape() {
        let r = Report::new("norm", serde_json::json!({"p": "2"}))
            .with_results(serde_json::json!({"value": 0.5, "list": [1, 2]}));
        let text = r.render_text();
        assert!(text.starts_with("command: norm\n"));
        assert!(text.contains("  p: 2\n"));
        assert!(text.contains("value: 5.00000000000000000e-1"));
    }
}
