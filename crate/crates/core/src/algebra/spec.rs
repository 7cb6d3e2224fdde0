//! JSON algebra specs and preset shorthands.
//!
//! ```json
//! {"field": {"type": "rational"}, "rank": 2, "unit": ["1", "0"],
//!  "mul_table": [[["1","0"],["0","1"]], [["0","1"],["2","0"]]],
//!  "degree": {"kind": "regular"}}
//! {"preset": "quaternion", "d": -1, "gamma": -1}
//! ```

use serde_json::{json, Map, Value};

use super::degree::DegreeStructure;
use super::families::{self, Graded};
use super::structure::StructureAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegreeSpec {
    Regular,
    MatrixIdentity(usize),
    TrivialDiag(usize),
    Power(Box<DegreeSpec>, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraSpec {
    Split(Field, usize),
    Trivial(Field, usize),
    Matrix(Field, usize),
    Quadratic(Field, i64),
    Dual(Field),
    Quaternion(Field, i64, i64),
    Cyclic3(Field),
    Product(Field, Vec<AlgebraSpec>),
    GroupRing(Field, Vec<usize>),
    Cyclic { ext: Box<AlgebraSpec>, sigma: Vec<Vec<Scalar>>, gamma: Scalar },
    Explicit { field: Field, table: Vec<Vec<Vec<Scalar>>>, unit: Vec<Scalar>, degree: DegreeSpec },
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedSpec(msg.into())
}

fn get_usize(obj: &Map<String, Value>, key: &str) -> Result<usize> {
    obj.get(key)
        .and_then(Value::as_u64)
        .filter(|&n| n > 0)
        .map(|n| n as usize)
        .ok_or_else(|| malformed(format!("field \"{key}\" must be a positive integer")))
}

fn get_i64(obj: &Map<String, Value>, key: &str) -> Result<i64> {
    obj.get(key).and_then(Value::as_i64).ok_or_else(|| malformed(format!("field \"{key}\" must be an integer")))
}

fn parse_scalar(field: Field, v: &Value, path: &str) -> Result<Scalar> {
    let s = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return Err(malformed(format!("{path} must be a scalar string"))),
    };
    field.parse(&s).map_err(|_| malformed(format!("{path}: cannot parse {s:?} in {field}")))
}

fn parse_vec(field: Field, v: &Value, path: &str) -> Result<Vec<Scalar>> {
    v.as_array()
        .ok_or_else(|| malformed(format!("{path} must be an array")))?
        .iter()
        .enumerate()
        .map(|(i, x)| parse_scalar(field, x, &format!("{path}[{i}]")))
        .collect()
}

fn parse_field(obj: &Map<String, Value>, default: Field) -> Result<Field> {
    match obj.get("field") {
        None => Ok(default),
        Some(Value::String(s)) => Field::from_name(s),
        Some(v) => {
            let f: Field = serde_json::from_value(v.clone()).map_err(|e| malformed(format!("field \"field\": {e}")))?;
            f.validate()?;
            Ok(f)
        }
    }
}

impl DegreeSpec {
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| malformed("field \"degree\" must be an object"))?;
        let kind = obj.get("kind").and_then(Value::as_str).ok_or_else(|| malformed("degree needs a \"kind\""))?;
        Ok(match kind {
            "regular" => DegreeSpec::Regular,
            "matrix_identity" => DegreeSpec::MatrixIdentity(get_usize(obj, "size")?),
            "trivial_diag" => DegreeSpec::TrivialDiag(get_usize(obj, "n")?),
            "power" => DegreeSpec::Power(
                Box::new(DegreeSpec::from_json(obj.get("inner").ok_or_else(|| malformed("power degree needs \"inner\""))?)?),
                get_usize(obj, "multiplicity")?,
            ),
            other => return Err(malformed(format!("unknown degree kind {other:?}"))),
        })
    }

    pub fn to_json(&self) -> Value {
        match self {
            DegreeSpec::Regular => json!({"kind": "regular"}),
            DegreeSpec::MatrixIdentity(k) => json!({"kind": "matrix_identity", "size": k}),
            DegreeSpec::TrivialDiag(n) => json!({"kind": "trivial_diag", "n": n}),
            DegreeSpec::Power(inner, m) => json!({"kind": "power", "inner": inner.to_json(), "multiplicity": m}),
        }
    }

    pub fn build(&self, alg: &StructureAlgebra) -> DegreeStructure {
        match self {
            DegreeSpec::Regular => DegreeStructure::regular(alg),
            DegreeSpec::MatrixIdentity(k) => DegreeStructure::matrix_identity(*k),
            DegreeSpec::TrivialDiag(n) => DegreeStructure::trivial_diag(*n),
            DegreeSpec::Power(inner, m) => DegreeStructure::power(inner.build(alg), *m),
        }
    }
}

impl AlgebraSpec {
    pub fn from_json(v: &Value) -> Result<Self> {
        Self::from_json_in(v, Field::Rational)
    }

    fn from_json_in(v: &Value, default_field: Field) -> Result<Self> {
        if let Value::String(s) = v {
            return parse_preset(s, default_field);
        }
        let obj = v.as_object().ok_or_else(|| malformed("algebra spec must be a JSON object"))?;
        let field = parse_field(obj, default_field)?;
        let Some(preset) = obj.get("preset") else {
            return Self::explicit_from_json(obj, field);
        };
        let preset = preset.as_str().ok_or_else(|| malformed("field \"preset\" must be a string"))?;
        Ok(match preset {
            "split" => AlgebraSpec::Split(field, get_usize(obj, "n")?),
            "trivial" => AlgebraSpec::Trivial(field, get_usize(obj, "n")?),
            "matrix" => AlgebraSpec::Matrix(field, get_usize(obj, "n")?),
            "quadratic" => AlgebraSpec::Quadratic(field, get_i64(obj, "d")?),
            "dual" => AlgebraSpec::Dual(field),
            "quaternion" => AlgebraSpec::Quaternion(field, get_i64(obj, "d")?, get_i64(obj, "gamma")?),
            "cyclic3" => AlgebraSpec::Cyclic3(field),
            "product" => {
                let fs = obj
                    .get("factors")
                    .and_then(Value::as_array)
                    .filter(|a| !a.is_empty())
                    .ok_or_else(|| malformed("field \"factors\" must be a nonempty array"))?;
                AlgebraSpec::Product(field, fs.iter().map(|f| Self::from_json_in(f, field)).collect::<Result<_>>()?)
            }
            "groupring" => {
                let dims = obj
                    .get("dims")
                    .and_then(Value::as_array)
                    .and_then(|a| a.iter().map(|x| x.as_u64().filter(|&d| d > 0).map(|d| d as usize)).collect::<Option<Vec<_>>>())
                    .filter(|d| !d.is_empty())
                    .ok_or_else(|| malformed("field \"dims\" must be a nonempty array of positive integers"))?;
                AlgebraSpec::GroupRing(field, dims)
            }
            "cyclic" => {
                let ext = Self::from_json_in(obj.get("ext").ok_or_else(|| malformed("cyclic preset needs \"ext\""))?, field)?;
                let sigma = obj
                    .get("sigma")
                    .and_then(Value::as_array)
                    .ok_or_else(|| malformed("field \"sigma\" must be a matrix"))?
                    .iter()
                    .enumerate()
                    .map(|(i, r)| parse_vec(field, r, &format!("sigma[{i}]")))
                    .collect::<Result<_>>()?;
                let gamma = parse_scalar(field, obj.get("gamma").ok_or_else(|| malformed("cyclic preset needs \"gamma\""))?, "gamma")?;
                AlgebraSpec::Cyclic { ext: Box::new(ext), sigma, gamma }
            }
            other => return Err(malformed(format!("unknown preset {other:?}"))),
        })
    }

    fn explicit_from_json(obj: &Map<String, Value>, field: Field) -> Result<Self> {
        let rank = get_usize(obj, "rank")?;
        let unit = parse_vec(field, obj.get("unit").ok_or_else(|| malformed("missing field \"unit\""))?, "unit")?;
        if unit.len() != rank {
            return Err(malformed(format!("field \"unit\" has length {}, expected {rank}", unit.len())));
        }
        let rows = obj
            .get("mul_table")
            .and_then(Value::as_array)
            .filter(|r| r.len() == rank)
            .ok_or_else(|| malformed(format!("field \"mul_table\" must be a {rank}x{rank}x{rank} array")))?;
        let mut table = Vec::with_capacity(rank);
        for (i, row) in rows.iter().enumerate() {
            let row = row
                .as_array()
                .filter(|r| r.len() == rank)
                .ok_or_else(|| malformed(format!("mul_table[{i}] must have {rank} entries")))?;
            let parsed = row
                .iter()
                .enumerate()
                .map(|(j, c)| {
                    let c = parse_vec(field, c, &format!("mul_table[{i}][{j}]"))?;
                    if c.len() != rank {
                        return Err(malformed(format!("mul_table[{i}][{j}] must have {rank} entries")));
                    }
                    Ok(c)
                })
                .collect::<Result<Vec<_>>>()?;
            table.push(parsed);
        }
        let degree = match obj.get("degree") {
            Some(d) => DegreeSpec::from_json(d)?,
            None => DegreeSpec::Regular,
        };
        Ok(AlgebraSpec::Explicit { field, table, unit, degree })
    }

    pub fn field(&self) -> Field {
        match self {
            AlgebraSpec::Split(f, _)
            | AlgebraSpec::Trivial(f, _)
            | AlgebraSpec::Matrix(f, _)
            | AlgebraSpec::Quadratic(f, _)
            | AlgebraSpec::Dual(f)
            | AlgebraSpec::Quaternion(f, ..)
            | AlgebraSpec::Cyclic3(f)
            | AlgebraSpec::Product(f, _)
            | AlgebraSpec::GroupRing(f, _) => *f,
            AlgebraSpec::Cyclic { ext, .. } => ext.field(),
            AlgebraSpec::Explicit { field, .. } => *field,
        }
    }

    /// Canonical JSON form; parsing it back yields the same spec.
    pub fn to_json(&self) -> Value {
        let field = serde_json::to_value(self.field()).expect("field serializes");
        let mut v = match self {
            AlgebraSpec::Split(_, n) => json!({"preset": "split", "n": n}),
            AlgebraSpec::Trivial(_, n) => json!({"preset": "trivial", "n": n}),
            AlgebraSpec::Matrix(_, n) => json!({"preset": "matrix", "n": n}),
            AlgebraSpec::Quadratic(_, d) => json!({"preset": "quadratic", "d": d}),
            AlgebraSpec::Dual(_) => json!({"preset": "dual"}),
            AlgebraSpec::Quaternion(_, d, g) => json!({"preset": "quaternion", "d": d, "gamma": g}),
            AlgebraSpec::Cyclic3(_) => json!({"preset": "cyclic3"}),
            AlgebraSpec::Product(_, fs) => {
                json!({"preset": "product", "factors": fs.iter().map(|f| f.to_json()).collect::<Vec<_>>()})
            }
            AlgebraSpec::GroupRing(_, dims) => json!({"preset": "groupring", "dims": dims}),
            AlgebraSpec::Cyclic { ext, sigma, gamma } => json!({
                "preset": "cyclic",
                "ext": ext.to_json(),
                "sigma": sigma.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "gamma": gamma.to_string(),
            }),
            AlgebraSpec::Explicit { table, unit, degree, .. } => json!({
                "rank": unit.len(),
                "unit": unit.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "mul_table": table
                    .iter()
                    .map(|r| r.iter().map(|c| c.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
                "degree": degree.to_json(),
            }),
        };
        v.as_object_mut().unwrap().insert("field".into(), field);
        v
    }

    /// Constructs and validates the algebra with its degree structure.
    pub fn build(&self) -> Result<Graded> {
        let out = match self {
            AlgebraSpec::Split(f, n) => families::split(*f, *n),
            AlgebraSpec::Trivial(f, n) => families::trivial(*f, *n),
            AlgebraSpec::Matrix(f, n) => families::matrix(*f, *n),
            AlgebraSpec::Quadratic(f, d) => families::quadratic(*f, *d),
            AlgebraSpec::Dual(f) => families::dual(*f),
            AlgebraSpec::Quaternion(f, d, g) => families::quaternion(*f, *d, *g)?,
            AlgebraSpec::Cyclic3(f) => families::cyclic3(*f)?,
            AlgebraSpec::Product(_, fs) => families::product_algebra(fs.iter().map(|f| f.build()).collect::<Result<_>>()?)?,
            AlgebraSpec::GroupRing(f, dims) => families::semisimple_from_dims(*f, dims)?,
            AlgebraSpec::Cyclic { ext, sigma, gamma } => {
                let (k, _) = ext.build()?;
                families::cyclic_algebra(k, Matrix::from_dense(sigma), gamma.clone())?
            }
            AlgebraSpec::Explicit { field, table, unit, degree } => {
                let alg = StructureAlgebra::new("custom", *field, table.clone(), unit.clone())?;
                let deg = degree.build(&alg);
                (alg, deg)
            }
        };
        out.1.validate(&out.0)?;
        Ok(out)
    }

    /// Same algebra over another field; only presets and explicit tables
    /// with coefficients that promote are supported.
    pub fn with_field(&self, target: Field) -> Result<Self> {
        let promote = |v: &Vec<Scalar>| v.iter().map(|x| x.promote(target)).collect::<Result<Vec<_>>>();
        Ok(match self {
            AlgebraSpec::Split(_, n) => AlgebraSpec::Split(target, *n),
            AlgebraSpec::Trivial(_, n) => AlgebraSpec::Trivial(target, *n),
            AlgebraSpec::Matrix(_, n) => AlgebraSpec::Matrix(target, *n),
            AlgebraSpec::Quadratic(_, d) => AlgebraSpec::Quadratic(target, *d),
            AlgebraSpec::Dual(_) => AlgebraSpec::Dual(target),
            AlgebraSpec::Quaternion(_, d, g) => AlgebraSpec::Quaternion(target, *d, *g),
            AlgebraSpec::Cyclic3(_) => AlgebraSpec::Cyclic3(target),
            AlgebraSpec::Product(_, fs) => {
                AlgebraSpec::Product(target, fs.iter().map(|f| f.with_field(target)).collect::<Result<_>>()?)
            }
            AlgebraSpec::GroupRing(_, d) => AlgebraSpec::GroupRing(target, d.clone()),
            AlgebraSpec::Cyclic { ext, sigma, gamma } => AlgebraSpec::Cyclic {
                ext: Box::new(ext.with_field(target)?),
                sigma: sigma.iter().map(promote).collect::<Result<_>>()?,
                gamma: gamma.promote(target)?,
            },
            AlgebraSpec::Explicit { table, unit, degree, .. } => AlgebraSpec::Explicit {
                field: target,
                table: table.iter().map(|r| r.iter().map(promote).collect::<Result<_>>()).collect::<Result<_>>()?,
                unit: promote(unit)?,
                degree: degree.clone(),
            },
        })
    }

    /// Factor specs of a product, else `None`.
    pub fn factors(&self) -> Option<&[AlgebraSpec]> {
        match self {
            AlgebraSpec::Product(_, fs) => Some(fs),
            _ => None,
        }
    }
}

/// Parses `split:3`, `matrix:2`, `quaternion:-1,-1`, `groupring:1,1,2`,
/// `product:trivial:1+matrix:2`, `dual`, `cyclic3`, ...
pub fn parse_preset(s: &str, field: Field) -> Result<AlgebraSpec> {
    let (name, arg) = match s.split_once(':') {
        Some((n, a)) => (n.trim(), Some(a.trim())),
        None => (s.trim(), None),
    };
    let need = |what: &str| arg.ok_or_else(|| malformed(format!("preset {name:?} needs {what}, e.g. {name}:3")));
    let pos = |a: &str| -> Result<usize> {
        a.parse::<usize>().ok().filter(|&n| n > 0).ok_or_else(|| malformed(format!("preset {name:?}: {a:?} is not a positive integer")))
    };
    let int = |a: &str| -> Result<i64> { a.parse::<i64>().map_err(|_| malformed(format!("preset {name:?}: {a:?} is not an integer"))) };
    Ok(match name {
        "split" => AlgebraSpec::Split(field, pos(need("n")?)?),
        "trivial" => AlgebraSpec::Trivial(field, pos(need("n")?)?),
        "matrix" => AlgebraSpec::Matrix(field, pos(need("n")?)?),
        "quadratic" => AlgebraSpec::Quadratic(field, int(need("d")?)?),
        "dual" => AlgebraSpec::Dual(field),
        "cyclic3" => AlgebraSpec::Cyclic3(field),
        "quaternion" => {
            let a = need("d,gamma")?;
            let (d, g) = a.split_once(',').ok_or_else(|| malformed("preset \"quaternion\" needs d,gamma"))?;
            AlgebraSpec::Quaternion(field, int(d.trim())?, int(g.trim())?)
        }
        "groupring" => AlgebraSpec::GroupRing(field, need("dims")?.split(',').map(|d| pos(d.trim())).collect::<Result<_>>()?),
        "product" => AlgebraSpec::Product(
            field,
            need("factors")?.split('+').map(|f| parse_preset(f, field)).collect::<Result<_>>()?,
        ),
        other => return Err(malformed(format!("unknown preset {other:?}"))),
    })
}
