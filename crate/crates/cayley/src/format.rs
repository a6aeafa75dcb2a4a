//! Text and JSON renderings of elements, solution sets, kernels and law reports.
//!
//! JSON objects are built as `serde_json::Value`, whose maps keep keys sorted,
//! so identical results always serialize to identical bytes.

use cayley_core::lab::{LawReport, SpanReport, Verdict};
use cayley_core::oracle::Nullspace;
use cayley_core::solvers::{Flag, ParameterDomain, SolutionSet, Solutions};
use cayley_core::{Element, Rational, Scalar};
use serde_json::{json, Value};

use crate::expr::decimal_text;

/// Scalars that know how to print themselves.
pub trait Emit: Scalar {
    const BACKEND: &'static str;
    /// Text of a nonnegative value.
    fn text(&self) -> String;
    fn json(&self) -> Value;
    /// Whether the coefficient 1 may be left out in front of a unit.
    fn omit_one(&self) -> bool;
}

impl Emit for Rational {
    const BACKEND: &'static str = "exact";

    fn text(&self) -> String {
        self.to_string()
    }

    fn json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn omit_one(&self) -> bool {
        *self == Rational::ONE
    }
}

impl Emit for f64 {
    const BACKEND: &'static str = "float";

    fn text(&self) -> String {
        decimal_text(*self)
    }

    fn json(&self) -> Value {
        serde_json::Number::from_f64(*self).map_or(Value::Null, Value::Number)
    }

    // Keeping "1.0" makes the text read back on the float backend.
    fn omit_one(&self) -> bool {
        false
    }
}

/// `a0 + a1 e1 + ...` with zero terms dropped; `0` (or `0.0`) for zero.
pub fn element_text<S: Emit>(e: &Element<S>) -> String {
    let mut out = String::new();
    for (i, c) in e.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let negative = *c < S::zero();
        let mag = if negative { -c.clone() } else { c.clone() };
        match (out.is_empty(), negative) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        if i == 0 {
            out.push_str(&mag.text());
        } else if mag.omit_one() {
            out.push_str(&format!("e{i}"));
        } else {
            out.push_str(&format!("{} e{i}", mag.text()));
        }
    }
    if out.is_empty() {
        out = S::zero().text();
    }
    out
}

pub fn element_json<S: Emit>(e: &Element<S>) -> Value {
    json!({
        "backend": S::BACKEND,
        "level": e.level(),
        "coeffs": e.coeffs().iter().map(Emit::json).collect::<Vec<_>>(),
        "text": element_text(e),
    })
}

fn elements_json<S: Emit>(es: &[Element<S>]) -> Value {
    Value::Array(es.iter().map(element_json).collect())
}

fn variant_name<S>(s: &Solutions<S>) -> &'static str {
    match s {
        Solutions::Empty => "Empty",
        Solutions::FinitePoints(_) => "FinitePoints",
        Solutions::ScalingFamily(_) => "ScalingFamily",
        Solutions::AffineSubspace { .. } => "AffineSubspace",
        Solutions::ParametricModule { .. } => "ParametricModule",
    }
}

fn flag_name(flag: Option<Flag>) -> Value {
    match flag {
        None => Value::Null,
        Some(f) => Value::String(format!("{f:?}")),
    }
}

pub fn solution_set_json<S: Emit>(set: &SolutionSet<S>) -> Value {
    let reps = set.representatives();
    let mut v = json!({
        "variant": variant_name(&set.solutions),
        "completeness": format!("{:?}", set.completeness),
        "level_semantics": format!("{:?}", set.semantics),
        "flag": flag_name(set.flag),
        "representatives": elements_json(&reps),
        "representatives_text": reps.iter().map(element_text).collect::<Vec<_>>(),
    });
    let obj = v.as_object_mut().expect("object literal");
    match &set.solutions {
        Solutions::Empty => {}
        Solutions::FinitePoints(points) => {
            obj.insert("points".into(), elements_json(points));
        }
        Solutions::ScalingFamily(d) => {
            obj.insert("direction".into(), element_json(d));
        }
        Solutions::AffineSubspace { origin, basis } => {
            obj.insert("origin".into(), element_json(origin));
            obj.insert("basis".into(), elements_json(basis));
        }
        Solutions::ParametricModule { left, right, domain, particular } => {
            obj.insert("left".into(), element_json(left));
            obj.insert("right".into(), element_json(right));
            obj.insert(
                "domain".into(),
                match domain {
                    ParameterDomain::Full => Value::String("full".into()),
                    ParameterDomain::Subalgebra(b) => json!({ "subalgebra": elements_json(b) }),
                },
            );
            obj.insert("particular".into(), elements_json(particular));
        }
    }
    v
}

pub fn solution_set_text<S: Emit>(set: &SolutionSet<S>) -> String {
    let mut lines = vec![
        format!("variant: {}", variant_name(&set.solutions)),
        format!("completeness: {:?}", set.completeness),
        format!("semantics: {:?}", set.semantics),
    ];
    if let Some(f) = set.flag {
        lines.push(format!("flag: {f:?}"));
    }
    let list = |es: &[Element<S>]| es.iter().map(element_text).collect::<Vec<_>>().join("; ");
    match &set.solutions {
        Solutions::Empty => lines.push("no solutions".into()),
        Solutions::FinitePoints(_) => {}
        Solutions::ScalingFamily(d) => lines.push(format!("x = t ({})", element_text(d))),
        Solutions::AffineSubspace { origin, basis } => {
            let kind = if set.flag == Some(Flag::RootSphere) { "unit sphere of" } else { "span of" };
            let shift = if origin.is_zero() { String::new() } else { format!("{} + ", element_text(origin)) };
            lines.push(format!("x = {shift}{kind} [{}]", list(basis)));
        }
        Solutions::ParametricModule { left, right, domain, .. } => {
            let over = match domain {
                ParameterDomain::Full => "the whole algebra".to_string(),
                ParameterDomain::Subalgebra(b) => format!("span [{}]", list(b)),
            };
            lines.push(format!("x = ({}) p + p ({}), p in {over}", element_text(left), element_text(right)));
        }
    }
    let reps = set.representatives();
    if !reps.is_empty() {
        lines.push("representatives:".into());
        lines.extend(reps.iter().map(|r| format!("  {}", element_text(r))));
    }
    lines.join("\n")
}

pub fn nullspace_json(n: &Nullspace) -> Value {
    json!({ "level": n.level, "dimension": n.dimension(), "basis": elements_json(&n.basis) })
}

pub fn law_report_json(r: &LawReport) -> Value {
    let mut v = json!({
        "law": r.law,
        "level": r.level,
        "trials": r.trials,
        "verdict": if r.holds() { "HoldsOnSamples" } else { "Counterexample" },
    });
    if let Verdict::Counterexample { witnesses, left, right } = &r.verdict {
        let obj = v.as_object_mut().expect("object literal");
        obj.insert("witnesses".into(), elements_json(witnesses));
        obj.insert("left".into(), element_json(left));
        obj.insert("right".into(), element_json(right));
    }
    v
}

pub fn span_report_json(r: &SpanReport) -> Value {
    let (equal, total) = r.tally();
    let rows: Vec<Value> = r
        .rows
        .iter()
        .map(|row| {
            json!({
                "trial": row.trial,
                "d_oracle": row.d_oracle,
                "d_pair": row.d_pair,
                "d_module": row.d_module,
                "equal": row.equal(),
            })
        })
        .collect();
    let witnesses: Vec<Value> = r
        .discrepancies()
        .map(|row| json!({ "trial": row.trial, "a": element_json(&row.a), "b": element_json(&row.b) }))
        .collect();
    json!({ "level": r.level, "rows": rows, "equal": equal, "total": total, "discrepancies": witnesses })
}

/// Canonical compact JSON text.
pub fn to_json_string(v: &Value) -> String {
    serde_json::to_string(v).expect("values always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_element, Value as V};

    #[test]
    fn element_texts() {
        let q = |c: &[i64]| Element::<Rational>::from_i64s(2, c).unwrap();
        assert_eq!(element_text(&q(&[0, 1, 1, 0])), "e1 + e2");
        assert_eq!(element_text(&q(&[1, 0, 0, -1])), "1 - e3");
        assert_eq!(element_text(&q(&[0, -2, 0, 0])), "-2 e1");
        assert_eq!(element_text(&q(&[0, 0, 0, 0])), "0");
        let half = Element::<Rational>::basis(2, 3).scale(&Rational::new(-1, 2).unwrap());
        assert_eq!(element_text(&half), "-1/2 e3");
        let f = Element::<f64>::new(1, vec![2.0, 1.0]).unwrap();
        assert_eq!(element_text(&f), "2.0 + 1.0 e1");
        assert_eq!(element_text(&Element::<f64>::zero(1)), "0.0");
    }

    #[test]
    fn texts_read_back() {
        let q = Element::<Rational>::from_i64s(3, &[0, -1, 0, 4, 0, 0, 0, 1]).unwrap();
        assert_eq!(parse_element(&element_text(&q), Some(3)).unwrap(), V::Exact(q));
        let f = Element::<f64>::new(2, vec![0.1, -1.0, 0.0, 1e-7]).unwrap();
        assert_eq!(parse_element(&element_text(&f), Some(2)).unwrap(), V::Float(f));
    }

    #[test]
    fn element_json_shape() {
        let q = Element::<Rational>::from_i64s(1, &[1, -3]).unwrap().scale(&Rational::new(1, 2).unwrap());
        assert_eq!(
            to_json_string(&element_json(&q)),
            r#"{"backend":"exact","coeffs":["1/2","-3/2"],"level":1,"text":"1/2 - 3/2 e1"}"#
        );
    }
}
