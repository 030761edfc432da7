//! Browser bindings for the demo page in `www/`. Each export takes and
//! returns plain text; the `*_text` functions hold the logic so native tests
//! can call them.

use num_complex::Complex64;
use pauli_nd::grouping::diagonalize;
use pauli_nd::paulis::phase_value;
use pauli_nd::{Operator, PauliArray, DEFAULT_SIMPLIFY_THRESHOLD};
use wasm_bindgen::prelude::*;

fn format_weight(w: Complex64) -> String {
    match (w.re.abs() > 1e-12, w.im.abs() > 1e-12) {
        (_, false) => format!("{}", w.re),
        (false, true) => format!("{}i", w.im),
        (true, true) => format!("({}{:+}i)", w.re, w.im),
    }
}

fn parse_weight(s: &str) -> Result<Complex64, String> {
    let bad = || format!("bad weight {s:?}");
    match s.strip_suffix('i') {
        Some("" | "+") => Ok(Complex64::new(0.0, 1.0)),
        Some("-") => Ok(Complex64::new(0.0, -1.0)),
        Some(im) => Ok(Complex64::new(0.0, im.parse().map_err(|_| bad())?)),
        None => Ok(Complex64::new(s.parse().map_err(|_| bad())?, 0.0)),
    }
}

/// One term per line, `weight LABEL` or just `LABEL`; weights may be
/// imaginary like `0.5i`.
pub fn parse_operator(text: &str) -> Result<Operator, String> {
    let (mut labels, mut weights) = (Vec::new(), Vec::new());
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let (w, label) = match parts.as_slice() {
            [label] => (Complex64::new(1.0, 0.0), *label),
            [w, label] => (parse_weight(w)?, *label),
            _ => return Err(format!("cannot read term {line:?}")),
        };
        labels.push(label.to_ascii_uppercase());
        weights.push(w);
    }
    let n = labels.first().map(String::len).ok_or("no terms given")?;
    Operator::from_labels_weights(n, &labels, &weights).map_err(|e| e.to_string())
}

fn format_operator(o: &Operator) -> String {
    if o.num_terms() == 0 {
        return "0".into();
    }
    let (labels, weights) = o.to_labels_weights();
    labels
        .iter()
        .zip(weights)
        .map(|(l, w)| format!("{} {l}", format_weight(w)))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Product of two labels as `phase LABEL`.
pub fn compose_text(a: &str, b: &str) -> Result<String, String> {
    let pa = PauliArray::from_label(a.trim()).map_err(|e| e.to_string())?;
    let pb = PauliArray::from_label(b.trim()).map_err(|e| e.to_string())?;
    let (p, f) = pa.compose(&pb).map_err(|e| e.to_string())?;
    Ok(format!("{} {}", format_weight(phase_value(f[[]])), p.label(0)))
}

/// Simplified `[H, A]` through the sparse path.
pub fn commutator_text(h: &str, a: &str) -> Result<String, String> {
    let (h, a) = (parse_operator(h)?, parse_operator(a)?);
    let c = h.commutator(&a).map_err(|e| e.to_string())?;
    Ok(format_operator(&c.simplify(DEFAULT_SIMPLIFY_THRESHOLD).sorted()))
}

/// Gate list and the diagonal image of each label, one label per line.
pub fn diagonalize_text(labels: &str) -> Result<String, String> {
    let labels: Vec<String> = labels.split_whitespace().map(str::to_ascii_uppercase).collect();
    if labels.is_empty() {
        return Err("no Pauli strings given".into());
    }
    let p = PauliArray::from_labels(&labels).map_err(|e| e.to_string())?;
    let (circuit, diag, signs) = diagonalize(&p).map_err(|e| e.to_string())?;
    let gates: Vec<String> = circuit
        .gates()
        .iter()
        .map(|g| format!("{} {}", g.name(), g.qubits().iter().map(|q| q.to_string()).collect::<Vec<_>>().join(" ")))
        .collect();
    let mut out = format!("{} gates: {}\n", gates.len(), gates.join(", "));
    for (r, l) in labels.iter().enumerate() {
        let sign = if signs[[r]] < 0 { "-" } else { "+" };
        out.push_str(&format!("{l} -> {sign}{}\n", diag.label(r)));
    }
    Ok(out)
}

#[wasm_bindgen]
pub fn compose(a: &str, b: &str) -> Result<String, JsError> {
    compose_text(a, b).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn commutator(h: &str, a: &str) -> Result<String, JsError> {
    commutator_text(h, a).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = diagonalize)]
pub fn diagonalize_js(labels: &str) -> Result<String, JsError> {
    diagonalize_text(labels).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_labels() {
        assert_eq!(compose_text("X", "Y").unwrap(), "1i Z");
        assert_eq!(compose_text("ZZ", "ZZ").unwrap(), "1 II");
        assert!(compose_text("X", "XX").is_err());
    }

    #[test]
    fn commutator_lines() {
        assert_eq!(commutator_text("Z", "X").unwrap(), "2i Y");
        assert_eq!(commutator_text("0.5 ZZ\n1 XX", "ZZ").unwrap(), "0");
        assert_eq!(commutator_text("-0.5i X", "Z").unwrap(), "-1 Y");
        assert!(commutator_text("", "X").is_err());
        assert!(commutator_text("abc X", "X").is_err());
    }

    #[test]
    fn diagonalize_lines() {
        let out = diagonalize_text("XX YY").unwrap();
        assert!(out.contains("XX -> ") && out.contains("YY -> "));
        assert!(diagonalize_text("ZZ").unwrap().starts_with("0 gates"));
        assert!(diagonalize_text("X Z").is_err());
    }
}
