//! JSON file formats. Rationals are strings `"p/q"` (plain JSON integers are
//! accepted on input); variable indices, positions and permutations are 1-based.

use std::collections::BTreeMap;

use mlimage_core::backends::SparseVec;
use mlimage_core::rational::{self, q};
use mlimage_core::solver::SplitMap;
use mlimage_core::{
    AdmissiblePoly, AnyAlgebra, AnyElement, GenIndex, Kind, MultiIndex, Perm, ProductAlgebra,
    ReductionTrace, ShiftAlgebra, ShiftOp, TraceStep, VPoly, WeylAlgebra, WeylElement, Witness, Q,
};
use serde_json::{json, Map, Value};

use crate::parse::{parse_element, ParseError};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Core(#[from] mlimage_core::Error),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError::Invalid(msg.into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Backend {
    /// The Weyl algebra A1 with [v, w] = 1.
    Weyl,
    /// Operators on a space with basis e1, e2, ..., v the shift.
    Shift,
    /// The direct product Weyl x Shift.
    Product,
}

impl Backend {
    pub fn algebra(self, probe: usize) -> AnyAlgebra {
        match self {
            Backend::Weyl => AnyAlgebra::Weyl(WeylAlgebra),
            Backend::Shift => AnyAlgebra::Shift(ShiftAlgebra::with_probe(probe)),
            Backend::Product => AnyAlgebra::Product(
                ProductAlgebra::new(vec![
                    AnyAlgebra::Weyl(WeylAlgebra),
                    AnyAlgebra::Shift(ShiftAlgebra::with_probe(probe)),
                ])
                .expect("two factors"),
            ),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Backend::Weyl => "weyl",
            Backend::Shift => "shift",
            Backend::Product => "product",
        }
    }

    pub fn from_name(name: &str) -> Option<Backend> {
        match name {
            "weyl" => Some(Backend::Weyl),
            "shift" => Some(Backend::Shift),
            "product" => Some(Backend::Product),
            _ => None,
        }
    }
}

pub fn q_to_json(x: &Q) -> Value {
    Value::String(rational::render(x))
}

pub fn q_from_json(v: &Value) -> Result<Q, FormatError> {
    match v {
        Value::String(s) => rational::parse(s.trim()).ok_or_else(|| FormatError::Invalid(format!("bad rational `{s}`"))),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(q(i)),
            None => invalid(format!("rationals must be integers or \"p/q\" strings, got {n}")),
        },
        _ => invalid(format!("expected a rational, got {v}")),
    }
}

fn usize_from_json(v: &Value, what: &str) -> Result<usize, FormatError> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| FormatError::Invalid(format!("{what} must be a natural number")))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value, FormatError> {
    obj.get(key).ok_or_else(|| FormatError::Invalid(format!("missing field `{key}`")))
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>, FormatError> {
    v.as_object().ok_or_else(|| FormatError::Invalid(format!("{what} must be an object")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, FormatError> {
    v.as_array().ok_or_else(|| FormatError::Invalid(format!("{what} must be an array")))
}

pub fn perm_to_json(p: &Perm) -> Value {
    json!(p.images().iter().map(|i| i + 1).collect::<Vec<_>>())
}

pub fn perm_from_json(v: &Value) -> Result<Perm, FormatError> {
    let images = array(v, "permutation")?
        .iter()
        .map(|x| match x.as_u64() {
            Some(i) if i >= 1 => Ok(i as usize - 1),
            _ => invalid("permutation entries are 1-based indices"),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Perm::new(images)?)
}

/// Permutation written as in the multilinear format, e.g. `"[2,1]"`.
pub fn perm_from_str(s: &str) -> Result<Perm, FormatError> {
    let v: Value = serde_json::from_str(s).map_err(|_| FormatError::Invalid(format!("bad permutation `{s}`")))?;
    perm_from_json(&v)
}

pub fn multi_index_to_json(b: &MultiIndex) -> Value {
    json!(b.entries())
}

pub fn multi_index_from_json(v: &Value) -> Result<MultiIndex, FormatError> {
    let entries = array(v, "multi-index")?
        .iter()
        .map(|x| x.as_i64().ok_or_else(|| FormatError::Invalid("multi-index entries are integers".into())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MultiIndex::new(entries))
}

pub fn weyl_to_json(e: &WeylElement) -> Value {
    Value::Array(e.terms().map(|(&(k, l), c)| json!([k, l, rational::render(c)])).collect())
}

pub fn weyl_from_json(v: &Value) -> Result<WeylElement, FormatError> {
    let mut e = WeylElement::zero();
    for t in array(v, "Weyl element")? {
        match t.as_array().map(Vec::as_slice) {
            Some([k, l, c]) => {
                let k = usize_from_json(k, "v exponent")? as u32;
                let l = usize_from_json(l, "w exponent")? as u32;
                e.add_term(k, l, q_from_json(c)?);
            }
            _ => return invalid("Weyl terms are [k, l, \"c\"] for c v^k w^l"),
        }
    }
    Ok(e)
}

pub fn shift_to_json(x: &ShiftOp, probe: usize) -> Value {
    let mut cols = Map::new();
    for (n, col) in x.columns(probe) {
        if !col.is_empty() {
            let entries: Map<String, Value> = col.iter().map(|(m, c)| (m.to_string(), q_to_json(c))).collect();
            cols.insert(n.to_string(), Value::Object(entries));
        }
    }
    json!({ "columns": cols, "probe": probe })
}

pub fn shift_from_json(v: &Value) -> Result<ShiftOp, FormatError> {
    let obj = object(v, "shift operator")?;
    let mut cols = BTreeMap::new();
    for (n, col) in object(field(obj, "columns")?, "columns")? {
        let n: usize = n.parse().map_err(|_| FormatError::Invalid(format!("bad column index `{n}`")))?;
        let mut entries = SparseVec::new();
        for (m, c) in object(col, "column")? {
            let m: usize = m.parse().map_err(|_| FormatError::Invalid(format!("bad row index `{m}`")))?;
            if m == 0 {
                return invalid("basis indices start at 1");
            }
            entries.insert(m, q_from_json(c)?);
        }
        if n == 0 {
            return invalid("basis indices start at 1");
        }
        cols.insert(n, entries);
    }
    Ok(ShiftOp::explicit(cols))
}

pub fn element_to_json(e: &AnyElement, probe: usize) -> Value {
    match e {
        AnyElement::Weyl(w) => weyl_to_json(w),
        AnyElement::Shift(s) => shift_to_json(s, probe),
        AnyElement::Product(parts) => json!({ "components": parts.iter().map(|p| element_to_json(p, probe)).collect::<Vec<_>>() }),
    }
}

/// Reads an element of `alg`: a native encoding or a string in `v` and `w`.
pub fn element_from_json(v: &Value, alg: &AnyAlgebra) -> Result<AnyElement, FormatError> {
    if let Value::String(s) = v {
        return Ok(parse_element(s, alg)?);
    }
    match alg {
        AnyAlgebra::Weyl(_) => Ok(AnyElement::Weyl(weyl_from_json(v)?)),
        AnyAlgebra::Shift(_) => Ok(AnyElement::Shift(shift_from_json(v)?)),
        AnyAlgebra::Product(p) => {
            let parts = array(field(object(v, "product element")?, "components")?, "components")?;
            if parts.len() != p.components().len() {
                return invalid("wrong number of product components");
            }
            Ok(AnyElement::Product(
                parts.iter().zip(p.components()).map(|(x, a)| element_from_json(x, a)).collect::<Result<_, _>>()?,
            ))
        }
    }
}

/// Human-readable rendering; shift operators list their nonzero probed columns.
pub fn render_element(e: &AnyElement, probe: usize) -> String {
    match e {
        AnyElement::Weyl(w) => w.to_string(),
        AnyElement::Shift(s) => {
            let cols: Vec<String> = s
                .columns(probe)
                .into_iter()
                .filter(|(_, c)| !c.is_empty())
                .map(|(n, c)| {
                    let image: Vec<String> = c.iter().map(|(m, x)| format!("{}*e{m}", rational::render(x))).collect();
                    format!("e{n} -> {}", image.join(" + "))
                })
                .collect();
            if cols.is_empty() {
                "0".into()
            } else {
                cols.join("; ")
            }
        }
        AnyElement::Product(parts) => {
            format!("({})", parts.iter().map(|p| render_element(p, probe)).collect::<Vec<_>>().join(", "))
        }
    }
}

pub fn vpoly_to_json(u: &VPoly) -> Value {
    json!({ "coeffs": u.to_coeffs().iter().map(q_to_json).collect::<Vec<_>>() })
}

pub fn vpoly_from_json(v: &Value) -> Result<VPoly, FormatError> {
    let coeffs = array(field(object(v, "u")?, "coeffs")?, "coeffs")?;
    Ok(VPoly::from_coeffs(coeffs.iter().map(q_from_json).collect::<Result<Vec<_>, _>>()?))
}

pub fn witness_to_json(w: &Witness<AnyElement>, backend: Backend, probe: usize) -> Value {
    json!({
        "backend": backend.name(),
        "x": w.xs.iter().map(|x| element_to_json(x, probe)).collect::<Vec<_>>(),
        "u": vpoly_to_json(&w.u),
    })
}

/// Reads a witness; `u` defaults to `1`.
pub fn witness_from_json(v: &Value, alg: &AnyAlgebra) -> Result<Witness<AnyElement>, FormatError> {
    let obj = object(v, "witness")?;
    let xs = array(field(obj, "x")?, "x")?
        .iter()
        .map(|x| element_from_json(x, alg))
        .collect::<Result<Vec<_>, _>>()?;
    let u = match obj.get("u") {
        Some(u) => vpoly_from_json(u)?,
        None => VPoly::one(),
    };
    Ok(Witness::new(xs, u))
}

fn kind_name(k: Kind) -> &'static str {
    match k {
        Kind::One => "one",
        Kind::Two => "two",
    }
}

fn kind_from_json(v: &Value) -> Result<Kind, FormatError> {
    match v.as_str() {
        Some("one") => Ok(Kind::One),
        Some("two") => Ok(Kind::Two),
        _ => invalid("kind must be \"one\" or \"two\""),
    }
}

fn gen_to_json(g: &GenIndex, c: &Q) -> Value {
    let mut m = Map::new();
    m.insert("sigma".into(), perm_to_json(&g.sigma));
    m.insert("b".into(), multi_index_to_json(&g.b));
    if let Some(i) = g.marked {
        m.insert("i".into(), json!(i + 1));
    }
    m.insert("c".into(), q_to_json(c));
    Value::Object(m)
}

pub fn admissible_to_json(f: &AdmissiblePoly) -> Value {
    json!({
        "n": f.n(),
        "r": f.order(),
        "kind": kind_name(f.kind()),
        "coeffs": f.coeffs().map(|(g, c)| gen_to_json(g, c)).collect::<Vec<_>>(),
    })
}

/// Reads either the multilinear map `{"[1,2]": "1", ...}` or the general form
/// `{"n", "r", "kind", "coeffs": [{"sigma", "b", "i", "c"}]}`.
pub fn admissible_from_json(v: &Value) -> Result<AdmissiblePoly, FormatError> {
    let obj = object(v, "polynomial")?;
    if !obj.contains_key("coeffs") {
        let mut terms = Vec::new();
        let mut n = None;
        for (k, c) in obj {
            let sigma = perm_from_str(k)?;
            if *n.get_or_insert(sigma.len()) != sigma.len() {
                return invalid("permutations of different lengths");
            }
            terms.push((sigma, q_from_json(c)?));
        }
        let n = n.ok_or_else(|| FormatError::Invalid("empty polynomial".into()))?;
        if n == 0 {
            return invalid("polynomials need at least one variable");
        }
        return Ok(AdmissiblePoly::multilinear(n, terms)?);
    }
    let n = usize_from_json(field(obj, "n")?, "n")?;
    let r = usize_from_json(obj.get("r").unwrap_or(&json!(0)), "r")?;
    let kind = kind_from_json(field(obj, "kind")?)?;
    if n == 0 {
        return invalid("polynomials need at least one variable");
    }
    let mut f = AdmissiblePoly::new(n, r, kind);
    for t in array(field(obj, "coeffs")?, "coeffs")? {
        let t = object(t, "coefficient")?;
        let sigma = perm_from_json(field(t, "sigma")?)?;
        let b = match t.get("b") {
            Some(b) => multi_index_from_json(b)?,
            None => MultiIndex::zero(n),
        };
        let g = match (kind, t.get("i")) {
            (Kind::One, None) => GenIndex::one(sigma, b),
            (Kind::Two, Some(i)) => match usize_from_json(i, "i")? {
                0 => return invalid("positions are 1-based"),
                i => GenIndex::two(sigma, b, i - 1),
            },
            (Kind::One, Some(_)) => return invalid("type-one coefficients have no position `i`"),
            (Kind::Two, None) => return invalid("type-two coefficients need a position `i`"),
        };
        f.add(g, q_from_json(field(t, "c")?)?)?;
    }
    Ok(f)
}

fn split_to_json(split: &SplitMap) -> Value {
    Value::Array(
        split
            .iter()
            .map(|((tau, b, j), c)| {
                json!({ "tau": perm_to_json(tau), "b": multi_index_to_json(b), "j": j + 1, "c": q_to_json(c) })
            })
            .collect(),
    )
}

fn split_from_json(v: &Value) -> Result<SplitMap, FormatError> {
    let mut out = SplitMap::new();
    for t in array(v, "lambda_prime")? {
        let t = object(t, "lambda_prime entry")?;
        let j = usize_from_json(field(t, "j")?, "j")?;
        if j == 0 {
            return invalid("positions are 1-based");
        }
        out.insert(
            (perm_from_json(field(t, "tau")?)?, multi_index_from_json(field(t, "b")?)?, j - 1),
            q_from_json(field(t, "c")?)?,
        );
    }
    Ok(out)
}

pub fn trace_to_json(trace: &ReductionTrace) -> Value {
    let steps: Vec<Value> = trace
        .steps
        .iter()
        .map(|s| match s {
            TraceStep::BaseCase { kind, r, lambda } => {
                json!({ "step": "base_case", "kind": kind_name(*kind), "r": r, "lambda": q_to_json(lambda) })
            }
            TraceStep::SplitLastVar { n, r, k, lambda_prime } => json!({
                "step": "split_last_var", "n": n, "r": r, "k": k, "lambda_prime": split_to_json(lambda_prime)
            }),
            TraceStep::TypeOneBranch => json!({ "step": "type_one_branch" }),
            TraceStep::TypeTwoBranch { mu } => json!({ "step": "type_two_branch", "mu": admissible_to_json(mu) }),
            TraceStep::PiKSearch { k } => json!({ "step": "pi_k_search", "k": k }),
        })
        .collect();
    json!({ "steps": steps })
}

pub fn trace_from_json(v: &Value) -> Result<ReductionTrace, FormatError> {
    let mut steps = Vec::new();
    for s in array(field(object(v, "trace")?, "steps")?, "steps")? {
        let s = object(s, "step")?;
        let step = match field(s, "step")?.as_str() {
            Some("base_case") => TraceStep::BaseCase {
                kind: kind_from_json(field(s, "kind")?)?,
                r: usize_from_json(field(s, "r")?, "r")?,
                lambda: q_from_json(field(s, "lambda")?)?,
            },
            Some("split_last_var") => TraceStep::SplitLastVar {
                n: usize_from_json(field(s, "n")?, "n")?,
                r: usize_from_json(field(s, "r")?, "r")?,
                k: usize_from_json(field(s, "k")?, "k")?,
                lambda_prime: split_from_json(field(s, "lambda_prime")?)?,
            },
            Some("type_one_branch") => TraceStep::TypeOneBranch,
            Some("type_two_branch") => TraceStep::TypeTwoBranch { mu: admissible_from_json(field(s, "mu")?)? },
            Some("pi_k_search") => TraceStep::PiKSearch { k: usize_from_json(field(s, "k")?, "k")? },
            _ => return invalid("unknown trace step"),
        };
        steps.push(step);
    }
    Ok(ReductionTrace { steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use mlimage_core::rational::q_frac;
    use mlimage_core::{EvaluationAlgebra, Solver};

    #[test]
    fn rationals() {
        assert_eq!(q_to_json(&q_frac(-3, 6)), json!("-1/2"));
        assert_eq!(q_from_json(&json!("4/6")).unwrap(), q_frac(2, 3));
        assert_eq!(q_from_json(&json!(5)).unwrap(), q(5));
        assert!(q_from_json(&json!("1/0")).is_err());
        assert!(q_from_json(&json!(0.5)).is_err());
    }

    #[test]
    fn multilinear_input() {
        let f = admissible_from_json(&json!({"[1,2]": "1", "[2,1]": "-1"})).unwrap();
        let expected =
            AdmissiblePoly::multilinear(2, [(Perm::identity(2), q(1)), (Perm::new(vec![1, 0]).unwrap(), q(-1))]).unwrap();
        assert_eq!(f, expected);
        assert!(admissible_from_json(&json!({"[1,2]": "1", "[1]": "1"})).is_err());
        assert!(admissible_from_json(&json!({"[1,1]": "1"})).is_err());
        assert!(admissible_from_json(&json!({})).is_err());
    }

    #[test]
    fn admissible_round_trip() {
        let mut rng = random::rng(5);
        for kind in [Kind::One, Kind::Two] {
            for _ in 0..30 {
                let f = random::admissible(&mut rng, 3, 2, kind, 5);
                assert_eq!(admissible_from_json(&admissible_to_json(&f)).unwrap(), f);
            }
        }
    }

    #[test]
    fn weyl_and_shift_round_trip() {
        let mut rng = random::rng(6);
        let e = random::weyl_element(&mut rng, 3);
        assert_eq!(weyl_from_json(&weyl_to_json(&e)).unwrap(), e);
        let s = random::shift_op(&mut rng, 5, 5);
        let back = shift_from_json(&shift_to_json(&s, 20)).unwrap();
        assert!(ShiftAlgebra::with_probe(20).equal(&s, &back));
    }

    #[test]
    fn string_elements_use_the_algebra() {
        let alg = Backend::Product.algebra(10);
        let e = element_from_json(&json!("v*w - w*v"), &alg).unwrap();
        assert!(alg.equal(&e, &alg.one()));
    }

    #[test]
    fn witness_and_trace_round_trip() {
        let mut rng = random::rng(7);
        let alg = Backend::Weyl.algebra(20);
        for _ in 0..10 {
            let f = random::admissible(&mut rng, 2, 1, Kind::Two, 4);
            let target = AnyElement::Weyl(random::weyl_element(&mut rng, 2));
            let sol = Solver::new().solve(&alg, &f, &target).unwrap();
            let trace = trace_from_json(&trace_to_json(&sol.trace)).unwrap();
            assert_eq!(trace, sol.trace);
            let w = witness_from_json(&witness_to_json(&sol.witness, Backend::Weyl, 20), &alg).unwrap();
            assert_eq!(w.u, sol.witness.u);
            for (a, b) in w.xs.iter().zip(&sol.witness.xs) {
                assert!(alg.equal(a, b));
            }
        }
    }
}
