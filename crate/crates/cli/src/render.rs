//! Command reports as `key: value` lines or a single JSON document.

use gn_core::poly::{MultiPoly, PolyMatrix, QMatrix, Rational, RationalFunction};
use serde_json::{json, Map, Value};

/// Variable names used when printing a polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Names {
    /// `x1, x2, ...`
    X,
    /// `y1, y2, ...` for relations among forms.
    Y,
    /// `u, v, w` for polynomials in `(x1, x2, Delta)`.
    Uvw,
}

#[derive(Debug, Clone)]
pub enum Item {
    Bool(bool),
    Count(usize),
    Text(String),
    Poly(MultiPoly, Names),
    Polys(Vec<MultiPoly>),
    RatFn(RationalFunction),
    RatFns(Vec<RationalFunction>),
    Matrix(QMatrix),
    PolyMatrix(PolyMatrix),
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    entries: Vec<(String, Item)>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, key: &str, item: Item) -> &mut Self {
        self.entries.push((key.to_string(), item));
        self
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        for (key, item) in &self.entries {
            out.push_str(key);
            out.push_str(": ");
            out.push_str(&item_text(item));
            out.push('\n');
        }
        out
    }

    pub fn json(&self) -> String {
        let map: Map<String, Value> = self
            .entries
            .iter()
            .map(|(k, v)| (k.replace('-', "_"), item_json(v)))
            .collect();
        let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("serializable");
        s.push('\n');
        s
    }
}

/// Replaces every `x<k>` in canonical output by the requested name.
pub fn rename(text: &str, names: Names) -> String {
    if names == Names::X {
        return text.to_string();
    }
    let mut out = String::with_capacity(text.len());
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        if c != 'x' {
            out.push(c);
            continue;
        }
        let mut digits = String::new();
        while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
            digits.push(*d);
            chars.next();
        }
        match (names, digits.as_str()) {
            (Names::Uvw, "1") => out.push('u'),
            (Names::Uvw, "2") => out.push('v'),
            (Names::Uvw, "3") => out.push('w'),
            _ => {
                out.push('y');
                out.push_str(&digits);
            }
        }
    }
    out
}

fn tuple<T: ToString>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn rows_text(rows: Vec<Vec<String>>) -> String {
    let rows: Vec<String> = rows.into_iter().map(|r| r.join(", ")).collect();
    format!("[{}]", rows.join("; "))
}

fn item_text(item: &Item) -> String {
    match item {
        Item::Bool(b) => b.to_string(),
        Item::Count(n) => n.to_string(),
        Item::Text(s) => s.clone(),
        Item::Poly(p, names) => rename(&p.to_string(), *names),
        Item::Polys(ps) => tuple(ps),
        Item::RatFn(r) => r.to_string(),
        Item::RatFns(rs) => tuple(rs),
        Item::Matrix(m) => rows_text(
            (0..m.rows())
                .map(|i| m.row(i).iter().map(ToString::to_string).collect())
                .collect(),
        ),
        Item::PolyMatrix(m) => rows_text(
            (0..m.rows())
                .map(|i| m.row(i).iter().map(ToString::to_string).collect())
                .collect(),
        ),
    }
}

fn rational_json(c: &Rational) -> Value {
    json!([c.numer().to_string(), c.denom().to_string()])
}

pub fn poly_json(p: &MultiPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(m, c)| json!({ "exponents": m.exps(), "coefficient": rational_json(c) }))
        .collect();
    json!({ "nvars": p.nvars(), "terms": terms })
}

fn ratfn_json(r: &RationalFunction) -> Value {
    json!({ "numerator": poly_json(r.num()), "denominator": poly_json(r.den()) })
}

fn item_json(item: &Item) -> Value {
    match item {
        Item::Bool(b) => json!(b),
        Item::Count(n) => json!(n),
        Item::Text(s) => json!(s),
        Item::Poly(p, _) => poly_json(p),
        Item::Polys(ps) => Value::Array(ps.iter().map(poly_json).collect()),
        Item::RatFn(r) => ratfn_json(r),
        Item::RatFns(rs) => Value::Array(rs.iter().map(ratfn_json).collect()),
        Item::Matrix(m) => Value::Array(
            (0..m.rows())
                .map(|i| Value::Array(m.row(i).iter().map(rational_json).collect()))
                .collect(),
        ),
        Item::PolyMatrix(m) => Value::Array(
            (0..m.rows())
                .map(|i| Value::Array(m.row(i).iter().map(poly_json).collect()))
                .collect(),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use gn_core::parse_polynomial;

    #[test]
    fn renames_variables() {
        assert_eq!(rename("x3*x5-x4^2", Names::Y), "y3*y5-y4^2");
        assert_eq!(rename("u^2 + x1*x3", Names::Uvw), "u^2 + u*w");
        assert_eq!(rename("x12", Names::X), "x12");
    }

    #[test]
    fn json_uses_string_integers_and_exponent_vectors() {
        let p = parse_polynomial("3/2*x1^2 - 100000000000000000000*x2", Some(2)).unwrap();
        let v = poly_json(&p);
        assert_eq!(v["nvars"], 2);
        assert_eq!(v["terms"][0]["exponents"], json!([2, 0]));
        assert_eq!(v["terms"][0]["coefficient"], json!(["3", "2"]));
        assert_eq!(
            v["terms"][1]["coefficient"],
            json!(["-100000000000000000000", "1"])
        );
    }
}
