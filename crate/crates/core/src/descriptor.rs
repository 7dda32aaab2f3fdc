//! JSON descriptors for groups, systems, windows and step profiles.
//!
//! Rationals are written as strings (`"3/4"`, `"0.25"`) or integers; complex
//! values as a number or a `[re, im]` pair.

use num::{One, Zero};
use serde_json::{Map, Value};

use crate::error::{GtiError, Result};
use crate::families;
use crate::group::{inverse_dft, FiniteAbelianGroup, GroupElement, GroupFunction, Subgroup};
use crate::rational::{self, Rational};
use crate::system::{GaborSystem, Generator, GtiSystem, Layer};
use crate::torus::{
    self, Amp, Domain, Piece, RationalStepProfile, TorusGenerator, TorusLayer, TorusSet,
    TorusSystem,
};
use crate::Complex64;

/// Exact breakpoints/values with denominators up to this power of two are read from JSON numbers exactly.
const DYADIC_BITS: i32 = 20;

fn bad(msg: impl Into<String>) -> GtiError {
    GtiError::InvalidInput(msg.into())
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| bad(format!("{what} must be a JSON object")))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, what: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| bad(format!("{what}: missing field {key:?}")))
}

fn check_keys(obj: &Map<String, Value>, allowed: &[&str], what: &str) -> Result<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(bad(format!("{what}: unknown field {k:?}"))),
        None => Ok(()),
    }
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| bad(format!("{what} must be an array")))
}

fn uint(v: &Value, what: &str) -> Result<u64> {
    v.as_u64()
        .ok_or_else(|| bad(format!("{what} must be a nonnegative integer")))
}

pub fn parse_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => rational::parse(s),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(rational::int(i))
            } else {
                let x = n.as_f64().ok_or_else(|| bad("number out of range"))?;
                Rational::from_float(x).ok_or_else(|| bad("rational must be finite"))
            }
        }
        _ => Err(bad(format!("expected a rational, got {v}"))),
    }
}

pub fn parse_complex(v: &Value) -> Result<Complex64> {
    let c = match v {
        Value::Number(n) => Complex64::new(n.as_f64().unwrap_or(f64::NAN), 0.0),
        Value::Array(a) if a.len() == 2 => match (a[0].as_f64(), a[1].as_f64()) {
            (Some(re), Some(im)) => Complex64::new(re, im),
            _ => return Err(bad("complex pair must hold two numbers")),
        },
        _ => return Err(bad(format!("expected a number or [re, im], got {v}"))),
    };
    if !c.re.is_finite() || !c.im.is_finite() {
        return Err(bad("complex values must be finite"));
    }
    Ok(c)
}

/// `{"factors": [..], "weight": "1"}` or `{"relations": [[..]], "rank": n, "weight": ..}`.
pub fn parse_group(v: &Value) -> Result<FiniteAbelianGroup> {
    let obj = object(v, "group")?;
    check_keys(obj, &["factors", "relations", "rank", "weight"], "group")?;
    let weight = match obj.get("weight") {
        Some(w) => parse_rational(w)?,
        None => Rational::one(),
    };
    match (obj.get("factors"), obj.get("relations")) {
        (Some(f), None) => {
            let factors = array(f, "factors")?
                .iter()
                .map(|x| uint(x, "factor"))
                .collect::<Result<Vec<_>>>()?;
            FiniteAbelianGroup::new(&factors, weight)
        }
        (None, Some(r)) => {
            let rank = uint(field(obj, "rank", "group")?, "rank")? as usize;
            let rels = array(r, "relations")?
                .iter()
                .map(|row| {
                    array(row, "relation")?
                        .iter()
                        .map(|x| {
                            x.as_i64()
                                .ok_or_else(|| bad("relation entries must be integers"))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            FiniteAbelianGroup::from_relations(&rels, rank, weight)
        }
        _ => Err(bad(
            "group needs exactly one of \"factors\" or \"relations\"",
        )),
    }
}

/// An element given by integer coordinates, reduced modulo the factors.
pub fn parse_element(group: &FiniteAbelianGroup, v: &Value) -> Result<GroupElement> {
    let coords = match v {
        Value::Number(_) => vec![v
            .as_i64()
            .ok_or_else(|| bad("coordinates must be integers"))?],
        _ => array(v, "element")?
            .iter()
            .map(|x| {
                x.as_i64()
                    .ok_or_else(|| bad("coordinates must be integers"))
            })
            .collect::<Result<Vec<_>>>()?,
    };
    group.reduce(&coords)
}

pub fn parse_elements(group: &FiniteAbelianGroup, v: &Value) -> Result<Vec<GroupElement>> {
    array(v, "element list")?
        .iter()
        .map(|x| parse_element(group, x))
        .collect()
}

/// `"whole"`, `"trivial"`, a list of generators, or `{"generators": [..]}`.
pub fn parse_subgroup(group: &FiniteAbelianGroup, v: &Value) -> Result<Subgroup> {
    match v {
        Value::String(s) if s == "whole" => Ok(group.whole()),
        Value::String(s) if s == "trivial" => Ok(group.trivial_subgroup()),
        Value::Object(obj) => {
            check_keys(obj, &["generators"], "subgroup")?;
            group.subgroup(&parse_elements(
                group,
                field(obj, "generators", "subgroup")?,
            )?)
        }
        _ => group.subgroup(&parse_elements(group, v)?),
    }
}

fn values(group: &FiniteAbelianGroup, v: &Value) -> Result<GroupFunction> {
    let vals = array(v, "values")?
        .iter()
        .map(parse_complex)
        .collect::<Result<Vec<_>>>()?;
    GroupFunction::new(group.clone(), vals)
}

/// A bare value array, or `{"values": [..]}`, `{"fourier": [..]}` (values on the dual), `{"delta": x}`,
/// each with an optional `"scale"`.
pub fn parse_function(group: &FiniteAbelianGroup, v: &Value) -> Result<GroupFunction> {
    if v.is_array() {
        return values(group, v);
    }
    let obj = object(v, "function")?;
    check_keys(obj, &["values", "fourier", "delta", "scale"], "function")?;
    let f = match (obj.get("values"), obj.get("fourier"), obj.get("delta")) {
        (Some(x), None, None) => values(group, x)?,
        (None, Some(x), None) => inverse_dft(&values(&group.dual(), x)?),
        (None, None, Some(x)) => {
            GroupFunction::delta(group, group.index_of(&parse_element(group, x)?)?)
        }
        _ => {
            return Err(bad(
                "function needs exactly one of \"values\", \"fourier\", \"delta\"",
            ))
        }
    };
    Ok(match obj.get("scale") {
        Some(s) => f.scaled(parse_complex(s)?),
        None => f,
    })
}

fn parse_generator(group: &FiniteAbelianGroup, v: &Value) -> Result<Generator> {
    let weight = match v.as_object().and_then(|o| o.get("weight")) {
        Some(w) => parse_rational(w)?,
        None => Rational::one(),
    };
    let body = match v {
        Value::Object(o) if o.contains_key("weight") => {
            let mut o = o.clone();
            o.remove("weight");
            Value::Object(o)
        }
        _ => v.clone(),
    };
    Generator::new(parse_function(group, &body)?, weight)
}

/// A system on a finite group or on `l^2(Z)`.
#[derive(Clone, Debug)]
pub enum SystemDescriptor {
    Finite(GtiSystem),
    Torus(TorusSystem),
}

impl SystemDescriptor {
    pub fn finite(&self) -> Result<&GtiSystem> {
        match self {
            SystemDescriptor::Finite(s) => Ok(s),
            SystemDescriptor::Torus(_) => Err(bad("this operation needs a finite-group system")),
        }
    }
}

fn scale_of(obj: &Map<String, Value>) -> Result<Option<Complex64>> {
    obj.get("scale").map(parse_complex).transpose()
}

/// Systems:
///
/// * `{"group": .., "layers": [{"gamma": .., "generators": [..]}]}`
/// * `{"family": "standard-onb" | "fourier-parseval", "group": ..}`
/// * `{"family": "layered-tiling", "N": n, "jmax": j}` on `l^2(Z)`, or `"layered-tiling-finite"` on `Z_{N^j}`
/// * `{"domain": "torus", "layers": [{"step": m, "generators": [..]}], "tail_bound": ..}`
///
/// Finite systems accept a top-level `"scale"` multiplying every generator.
pub fn parse_system(v: &Value) -> Result<SystemDescriptor> {
    let obj = object(v, "system")?;
    if obj.get("domain").and_then(Value::as_str) == Some("torus") {
        check_keys(obj, &["domain", "layers", "tail_bound"], "torus system")?;
        return parse_torus_system(obj).map(SystemDescriptor::Torus);
    }
    let sys = if let Some(family) = obj.get("family") {
        let family = family
            .as_str()
            .ok_or_else(|| bad("family must be a string"))?;
        check_keys(
            obj,
            &["family", "group", "N", "jmax", "scale"],
            "family system",
        )?;
        let n_j = || -> Result<(u64, u32)> {
            let n = uint(field(obj, "N", family)?, "N")?;
            let j = uint(field(obj, "jmax", family)?, "jmax")?;
            Ok((n, u32::try_from(j).map_err(|_| bad("jmax too large"))?))
        };
        match family {
            "standard-onb" => families::standard_onb(&parse_group(field(obj, "group", family)?)?),
            "fourier-parseval" => {
                families::fourier_parseval(&parse_group(field(obj, "group", family)?)?)
            }
            "layered-tiling-finite" => {
                let (n, j) = n_j()?;
                families::layered_tiling_finite(n, j)?
            }
            "layered-tiling" => {
                let (n, j) = n_j()?;
                return Ok(SystemDescriptor::Torus(torus::layered_tiling_torus(n, j)?));
            }
            other => return Err(bad(format!("unknown family {other:?}"))),
        }
    } else {
        check_keys(obj, &["group", "layers", "scale"], "system")?;
        let group = parse_group(field(obj, "group", "system")?)?;
        let layers = array(field(obj, "layers", "system")?, "layers")?
            .iter()
            .map(|l| {
                let lo = object(l, "layer")?;
                check_keys(lo, &["gamma", "generators"], "layer")?;
                let gamma = parse_subgroup(&group, field(lo, "gamma", "layer")?)?;
                let gens = array(field(lo, "generators", "layer")?, "generators")?
                    .iter()
                    .map(|g| parse_generator(&group, g))
                    .collect::<Result<Vec<_>>>()?;
                Layer::new(gamma, gens)
            })
            .collect::<Result<Vec<_>>>()?;
        GtiSystem::new(group, layers)?
    };
    Ok(SystemDescriptor::Finite(match scale_of(obj)? {
        Some(c) => sys.scaled(c),
        None => sys,
    }))
}

/// An exact amplitude: `{"sqrt": q}`, `{"exact": q}`, or a complex value
/// (numbers with small dyadic denominators are kept exact).
fn parse_amp(v: &Value) -> Result<Amp> {
    if let Some(obj) = v.as_object() {
        check_keys(obj, &["sqrt", "exact"], "amplitude")?;
        return match (obj.get("sqrt"), obj.get("exact")) {
            (Some(q), None) => {
                let q = parse_rational(q)?;
                if q < Rational::zero() {
                    return Err(bad("sqrt amplitude must be nonnegative"));
                }
                Ok(Amp::Sqrt(q))
            }
            (None, Some(q)) => Ok(Amp::rational(&parse_rational(q)?)),
            _ => Err(bad("amplitude needs exactly one of \"sqrt\", \"exact\"")),
        };
    }
    if let Value::String(_) = v {
        return Ok(Amp::rational(&parse_rational(v)?));
    }
    Ok(amp_from_complex(parse_complex(v)?))
}

fn amp_from_complex(c: Complex64) -> Amp {
    let scaled = c.re * f64::powi(2.0, DYADIC_BITS);
    if c.im == 0.0 && scaled.fract() == 0.0 && scaled.abs() < 1e15 {
        if let Some(q) = Rational::from_float(c.re) {
            return Amp::rational(&q);
        }
    }
    Amp::Complex(c)
}

fn parse_torus_system(obj: &Map<String, Value>) -> Result<TorusSystem> {
    let layers = array(field(obj, "layers", "torus system")?, "layers")?
        .iter()
        .map(|l| {
            let lo = object(l, "torus layer")?;
            check_keys(lo, &["step", "generators"], "torus layer")?;
            let step = uint(field(lo, "step", "torus layer")?, "step")? as u128;
            let generators = array(field(lo, "generators", "torus layer")?, "generators")?
                .iter()
                .map(parse_torus_generator)
                .collect::<Result<Vec<_>>>()?;
            Ok(TorusLayer { step, generators })
        })
        .collect::<Result<Vec<_>>>()?;
    let sys = TorusSystem::new(layers)?;
    Ok(match obj.get("tail_bound") {
        Some(t) => sys.with_tail_bound(parse_rational(t)?),
        None => sys,
    })
}

/// `{"tiling": r, "g": amp, "h": amp?, "weight": ..}` or `{"g": profile, "h": profile?, "weight": ..}`.
fn parse_torus_generator(v: &Value) -> Result<TorusGenerator> {
    let obj = object(v, "torus generator")?;
    check_keys(obj, &["tiling", "g", "h", "weight"], "torus generator")?;
    let weight = match obj.get("weight") {
        Some(w) => parse_rational(w)?,
        None => Rational::one(),
    };
    let g = field(obj, "g", "torus generator")?;
    let h = obj.get("h").unwrap_or(g);
    match obj.get("tiling") {
        Some(r) => Ok(TorusGenerator::Tiling {
            resolution: uint(r, "tiling")? as u128,
            g: parse_amp(g)?,
            h: parse_amp(h)?,
            weight,
        }),
        None => {
            let g = parse_profile(g)?;
            let h = parse_profile(h)?;
            if g.domain() != Domain::Torus || h.domain() != Domain::Torus {
                return Err(bad("torus generators need torus profiles"));
            }
            Ok(TorusGenerator::Explicit { g, h, weight })
        }
    }
}

/// `{"domain": "torus" | "real", "pieces": [{"lo": .., "hi": .., "re": .., "im": ..}]}`;
/// a piece may give `"value"` (an amplitude) instead of `re`/`im`.
pub fn parse_profile(v: &Value) -> Result<RationalStepProfile> {
    let obj = object(v, "profile")?;
    check_keys(obj, &["domain", "pieces"], "profile")?;
    let domain = match field(obj, "domain", "profile")?.as_str() {
        Some("torus") => Domain::Torus,
        Some("real") => Domain::Real,
        _ => return Err(bad("profile domain must be \"torus\" or \"real\"")),
    };
    let pieces = array(field(obj, "pieces", "profile")?, "pieces")?
        .iter()
        .map(|p| {
            let po = object(p, "piece")?;
            check_keys(po, &["lo", "hi", "re", "im", "value"], "piece")?;
            let lo = parse_rational(field(po, "lo", "piece")?)?;
            let hi = parse_rational(field(po, "hi", "piece")?)?;
            let value = match po.get("value") {
                Some(a) => parse_amp(a)?,
                None => {
                    let re = po
                        .get("re")
                        .map(|x| x.as_f64().ok_or_else(|| bad("re must be a number")));
                    let im = po
                        .get("im")
                        .map(|x| x.as_f64().ok_or_else(|| bad("im must be a number")));
                    let c = Complex64::new(
                        re.transpose()?.unwrap_or(0.0),
                        im.transpose()?.unwrap_or(0.0),
                    );
                    if !c.re.is_finite() || !c.im.is_finite() {
                        return Err(bad("piece values must be finite"));
                    }
                    amp_from_complex(c)
                }
            };
            Ok(Piece { lo, hi, value })
        })
        .collect::<Result<Vec<_>>>()?;
    RationalStepProfile::new(domain, pieces)
}

/// `{"group": .., "lambda": .., "gamma_hat": .. (on the dual), "g": fn, "h": fn?}`.
pub fn parse_gabor(v: &Value) -> Result<GaborSystem> {
    let obj = object(v, "gabor system")?;
    check_keys(
        obj,
        &["group", "lambda", "gamma_hat", "g", "h"],
        "gabor system",
    )?;
    let group = parse_group(field(obj, "group", "gabor system")?)?;
    let lambda = parse_subgroup(&group, field(obj, "lambda", "gabor system")?)?;
    let gamma = parse_subgroup(&group.dual(), field(obj, "gamma_hat", "gabor system")?)?;
    let g = parse_function(&group, field(obj, "g", "gabor system")?)?;
    let h = obj
        .get("h")
        .map(|h| parse_function(&group, h))
        .transpose()?;
    GaborSystem::new(group, lambda, gamma, g, h)
}

/// Gabor pair on `C^d` with lattice `aZ_d x bZ_d`.
#[derive(Clone, Debug)]
pub struct FiniteGaborDescriptor {
    pub a: usize,
    pub b: usize,
    pub g: Vec<Complex64>,
    pub h: Vec<Complex64>,
}

/// `{"d": d, "a": a, "b": b, "g": [..], "h": [..]?}`.
pub fn parse_finite_gabor(v: &Value) -> Result<FiniteGaborDescriptor> {
    let obj = object(v, "finite gabor")?;
    check_keys(obj, &["d", "a", "b", "g", "h"], "finite gabor")?;
    let d = uint(field(obj, "d", "finite gabor")?, "d")? as usize;
    let a = uint(field(obj, "a", "finite gabor")?, "a")? as usize;
    let b = uint(field(obj, "b", "finite gabor")?, "b")? as usize;
    let vec_of = |v: &Value| -> Result<Vec<Complex64>> {
        let out = array(v, "window")?
            .iter()
            .map(parse_complex)
            .collect::<Result<Vec<_>>>()?;
        if out.len() != d {
            return Err(GtiError::ShapeMismatch(format!(
                "window has {} entries, expected d = {d}",
                out.len()
            )));
        }
        Ok(out)
    };
    let g = vec_of(field(obj, "g", "finite gabor")?)?;
    let h = match obj.get("h") {
        Some(h) => vec_of(h)?,
        None => g.clone(),
    };
    Ok(FiniteGaborDescriptor { a, b, g, h })
}

/// Gabor windows on the real line with lattice `aZ x bZ`.
#[derive(Clone, Debug)]
pub struct JanssenDescriptor {
    pub g: RationalStepProfile,
    pub h: RationalStepProfile,
    pub a: Rational,
    pub b: Rational,
}

/// `{"g": profile, "h": profile?, "a": .., "b": ..}`.
pub fn parse_janssen(v: &Value) -> Result<JanssenDescriptor> {
    let obj = object(v, "janssen")?;
    check_keys(obj, &["g", "h", "a", "b"], "janssen")?;
    let g = parse_profile(field(obj, "g", "janssen")?)?;
    let h = match obj.get("h") {
        Some(h) => parse_profile(h)?,
        None => g.clone(),
    };
    let a = parse_rational(field(obj, "a", "janssen")?)?;
    let b = parse_rational(field(obj, "b", "janssen")?)?;
    Ok(JanssenDescriptor { g, h, a, b })
}

/// A compact set `K` for LIC-type conditions.
#[derive(Clone, Debug)]
pub enum KDescriptor {
    /// Points of the dual group.
    Finite(Vec<GroupElement>),
    Torus(TorusSet),
}

/// `{"elements": [..]}` (dual coordinates) or `{"intervals": [[lo, hi], ..]}` on the torus.
pub fn parse_k(v: &Value, sys: &SystemDescriptor) -> Result<KDescriptor> {
    let obj = object(v, "K")?;
    check_keys(obj, &["elements", "intervals"], "K")?;
    match (sys, obj.get("elements"), obj.get("intervals")) {
        (SystemDescriptor::Finite(s), Some(e), None) => {
            Ok(KDescriptor::Finite(parse_elements(&s.group().dual(), e)?))
        }
        (SystemDescriptor::Torus(_), None, Some(iv)) => {
            let intervals = array(iv, "intervals")?
                .iter()
                .map(|pair| match pair.as_array().map(Vec::as_slice) {
                    Some([lo, hi]) => Ok((parse_rational(lo)?, parse_rational(hi)?)),
                    _ => Err(bad("intervals must be [lo, hi] pairs")),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(KDescriptor::Torus(TorusSet::new(intervals)?))
        }
        (SystemDescriptor::Finite(_), _, _) => Err(bad("K for a finite system needs \"elements\"")),
        (SystemDescriptor::Torus(_), _, _) => Err(bad("K for a torus system needs \"intervals\"")),
    }
}

/// Parses JSON text, mapping syntax errors to invalid input.
pub fn from_str(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| bad(format!("malformed JSON: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn explicit_system_round_trip() {
        let v = json!({
            "group": {"factors": [4], "weight": "1/2"},
            "layers": [{"gamma": {"generators": [[2]]}, "generators": [{"values": [1, [0, 1], 0, 0], "weight": "3/2"}]}]
        });
        let SystemDescriptor::Finite(sys) = parse_system(&v).unwrap() else {
            panic!()
        };
        assert_eq!(sys.group().weight(), &rational::ratio(1, 2));
        assert_eq!(sys.layers()[0].gamma().order(), 2);
        assert_eq!(
            sys.layers()[0].generators()[0].weight,
            rational::ratio(3, 2)
        );
        assert_eq!(
            sys.layers()[0].generators()[0].function.value(1),
            Complex64::new(0.0, 1.0)
        );
    }

    #[test]
    fn families_and_errors() {
        let onb = parse_system(
            &json!({"family": "standard-onb", "group": {"factors": [3, 3]}, "scale": 2}),
        )
        .unwrap();
        assert_eq!(onb.finite().unwrap().group().order(), 9);
        assert!(matches!(
            parse_system(&json!({"family": "layered-tiling", "N": 2, "jmax": 5})).unwrap(),
            SystemDescriptor::Torus(_)
        ));
        assert!(parse_system(&json!({"family": "nope"})).is_err());
        assert!(
            parse_system(&json!({"group": {"factors": [4]}, "layers": [], "extra": 1})).is_err()
        );
        let short = json!({"group": {"factors": [4]}, "layers": [{"gamma": "whole", "generators": [[1, 2]]}]});
        assert!(parse_system(&short).is_err());
    }

    #[test]
    fn profiles_keep_dyadic_values_exact() {
        let p = parse_profile(&json!({"domain": "real", "pieces": [
            {"lo": "-1", "hi": "-1/2", "re": 1.0},
            {"lo": "1/2", "hi": 1, "value": {"sqrt": "1/3"}}
        ]}))
        .unwrap();
        assert_eq!(p.pieces()[0].value, Amp::rational(&Rational::one()));
        assert_eq!(p.pieces()[1].value, Amp::Sqrt(rational::ratio(1, 3)));
        let q =
            parse_profile(&json!({"domain": "real", "pieces": [{"lo": 0, "hi": 1, "re": 0.1}]}))
                .unwrap();
        assert!(matches!(q.pieces()[0].value, Amp::Complex(_)));
    }

    #[test]
    fn fourier_side_generators() {
        let g = parse_group(&json!({"factors": [4]})).unwrap();
        let f = parse_function(&g, &json!({"fourier": [1, 1, 1, 1]})).unwrap();
        assert!((f.value(0) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(f.value(1).norm() < 1e-12);
    }
}
