//! JSON documents with a fixed field order.
//!
//! Reals are written with 17 significant digits so that
//! serialize → parse → serialize is byte-identical.

use std::fmt::Write;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::lattice::{Generator, GeneratorBasis, Lin};
use crate::market::{Chain, RateEnsemble};
use crate::semigroup::Semigroup;

/// 17 significant digits in exponent form (valid JSON).
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn reals(xs: &[f64]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| fmt_real(*x)).collect();
    format!("[{}]", parts.join(","))
}

fn ints<T: ToString>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn string(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

pub fn ensemble_to_json(r: &RateEnsemble) -> String {
    let logs = reals(&r.log_rates());
    match r {
        RateEnsemble::Numeric { .. } => {
            format!(r#"{{"mode":"numeric","log_rates":{logs},"base":[],"generators":[],"coeffs":[]}}"#)
        }
        RateEnsemble::Lattice { basis, coeffs } => {
            let gens: Vec<String> = basis
                .generators
                .iter()
                .map(|g| format!(r#"{{"name":{},"value":{}}}"#, string(&g.name), fmt_real(g.value)))
                .collect();
            let rank = basis.rank();
            let rows: Vec<String> = coeffs.iter().map(|c| ints(&c.0[..rank])).collect();
            format!(
                r#"{{"mode":"lattice","log_rates":{logs},"base":{},"generators":[{}],"coeffs":[{}]}}"#,
                reals(&basis.base),
                gens.join(","),
                rows.join(",")
            )
        }
    }
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value> {
    v.get(name).ok_or_else(|| Error::Parse(format!("missing field \"{name}\"")))
}

fn real_array(v: &Value, name: &str, len: Option<usize>) -> Result<Vec<f64>> {
    let arr = field(v, name)?.as_array().ok_or_else(|| Error::Parse(format!("field \"{name}\" must be an array")))?;
    if let Some(n) = len {
        if arr.len() != n {
            return Err(Error::Parse(format!("field \"{name}\" must have {n} entries, got {}", arr.len())));
        }
    }
    arr.iter()
        .enumerate()
        .map(|(i, x)| x.as_f64().ok_or_else(|| Error::Parse(format!("field \"{name}\"[{i}] must be a number"))))
        .collect()
}

fn parse_value(text: &str) -> Result<Value> {
    serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))
}

pub fn ensemble_from_json(text: &str) -> Result<RateEnsemble> {
    ensemble_from_value(&parse_value(text)?)
}

pub fn ensemble_from_value(v: &Value) -> Result<RateEnsemble> {
    let mode = field(v, "mode")?.as_str().ok_or_else(|| Error::Parse("field \"mode\" must be a string".into()))?;
    match mode {
        "numeric" => {
            let l = real_array(v, "log_rates", Some(6))?;
            RateEnsemble::numeric(std::array::from_fn(|i| l[i]))
        }
        "lattice" => {
            let base = real_array(v, "base", Some(3))?;
            let gens = field(v, "generators")?
                .as_array()
                .ok_or_else(|| Error::Parse("field \"generators\" must be an array".into()))?;
            let generators: Vec<Generator> = gens
                .iter()
                .enumerate()
                .map(|(i, g)| {
                    let name = g.get("name").and_then(Value::as_str);
                    let value = g.get("value").and_then(Value::as_f64);
                    match (name, value) {
                        (Some(n), Some(x)) => Ok(Generator { name: n.to_string(), value: x }),
                        _ => Err(Error::Parse(format!("field \"generators\"[{i}] needs name and value"))),
                    }
                })
                .collect::<Result<_>>()?;
            let basis = GeneratorBasis::new(generators, [base[0], base[1], base[2]])?;
            let rows = field(v, "coeffs")?
                .as_array()
                .ok_or_else(|| Error::Parse("field \"coeffs\" must be an array".into()))?;
            if rows.len() != 6 {
                return Err(Error::Parse(format!("field \"coeffs\" must have 6 rows, got {}", rows.len())));
            }
            let mut coeffs = [Lin::ZERO; 6];
            for (j, row) in rows.iter().enumerate() {
                let row = row.as_array().ok_or_else(|| Error::Parse(format!("field \"coeffs\"[{j}] must be an array")))?;
                if row.len() != basis.rank() {
                    return Err(Error::Parse(format!(
                        "field \"coeffs\"[{j}] must have {} entries (one per generator)",
                        basis.rank()
                    )));
                }
                for (k, x) in row.iter().enumerate() {
                    coeffs[j].0[k] = x
                        .as_i64()
                        .ok_or_else(|| Error::Parse(format!("field \"coeffs\"[{j}][{k}] must be an integer")))?;
                }
            }
            let r = RateEnsemble::lattice(basis, coeffs);
            if v.get("log_rates").is_some() {
                let given = real_array(v, "log_rates", Some(6))?;
                let have = r.log_rates();
                if let Some(j) = (0..6).find(|&j| (given[j] - have[j]).abs() > 1e-9 * (1.0 + have[j].abs())) {
                    return Err(Error::Parse(format!(
                        "field \"log_rates\"[{j}] = {} disagrees with lattice value {}",
                        given[j], have[j]
                    )));
                }
            }
            Ok(r)
        }
        other => Err(Error::Parse(format!("field \"mode\" must be numeric or lattice, got {other:?}"))),
    }
}

pub fn chain_to_json(c: &Chain) -> String {
    let period = c.period.map_or("null".to_string(), |p| p.to_string());
    format!(r#"{{"chain":{},"period":{period}}}"#, ints(&c.chain))
}

pub fn chain_from_json(text: &str) -> Result<Chain> {
    chain_from_value(&parse_value(text)?)
}

pub fn chain_from_value(v: &Value) -> Result<Chain> {
    let arr = field(v, "chain")?.as_array().ok_or_else(|| Error::Parse("field \"chain\" must be an array".into()))?;
    let chain: Vec<usize> = arr
        .iter()
        .enumerate()
        .map(|(i, x)| {
            x.as_u64()
                .map(|k| k as usize)
                .ok_or_else(|| Error::Parse(format!("field \"chain\"[{i}] must be a positive integer")))
        })
        .collect::<Result<_>>()?;
    let period = match v.get("period") {
        None | Some(Value::Null) => None,
        Some(p) => Some(p.as_u64().ok_or_else(|| Error::Parse("field \"period\" must be an integer or null".into()))? as usize),
    };
    let c = Chain { chain, period };
    c.validate()?;
    Ok(c)
}

pub fn trajectory_to_json(states: &[RateEnsemble], flags: &[[bool; 24]]) -> String {
    let mut s = String::from(r#"{"trajectory":["#);
    for (i, r) in states.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push_str(&ensemble_to_json(r));
    }
    s.push_str(r#"],"active_flags":["#);
    for (i, f) in flags.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push_str(&ints(f));
    }
    s.push_str("]}");
    s
}

pub fn semigroup_to_json(sg: &Semigroup) -> String {
    let mut s = format!(r#"{{"count":{},"elements":["#, sg.len());
    for (i, e) in sg.elements.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        let flat: Vec<i64> = e.m.iter().flatten().copied().collect();
        write!(s, r#"{{"m":{},"rank":{},"component":{}}}"#, ints(&flat), e.rank, e.component).expect("string write");
    }
    s.push_str(r#"],"transitions":["#);
    let t: Vec<String> = sg.transitions.iter().map(|(i, j)| format!("[{i},{j}]")).collect();
    s.push_str(&t.join(","));
    s.push_str("]}");
    s
}

pub fn matrices_to_json() -> String {
    let m = crate::linalg::matrices();
    let mat = |x: &[[i64; 6]; 6]| -> String { format!("[{}]", x.iter().map(|r| ints(r)).collect::<Vec<_>>().join(",")) };
    let mat3 = |x: &[[i64; 3]; 3]| -> String { format!("[{}]", x.iter().map(|r| ints(r)).collect::<Vec<_>>().join(",")) };
    let list6 = |xs: &[[[i64; 6]; 6]]| format!("[{}]", xs.iter().map(mat).collect::<Vec<_>>().join(","));
    let list3 = |xs: &[[[i64; 3]; 3]]| format!("[{}]", xs.iter().map(mat3).collect::<Vec<_>>().join(","));
    format!(
        r#"{{"B":{},"Q":{},"Qinv":{},"D":{},"G":{},"H":{}}}"#,
        list6(&m.b),
        mat(&m.q),
        mat(&m.qinv),
        list6(&m.d),
        list3(&m.g),
        list3(&m.h)
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ensemble_round_trip_is_byte_identical() {
        let basis = GeneratorBasis::pair(0.3, 2f64.sqrt(), [0.1, -0.2, 1.0 / 3.0]).unwrap();
        let mut c = [Lin::ZERO; 6];
        c[0] = Lin::new(2, -1);
        c[4] = Lin::B;
        for r in [RateEnsemble::lattice(basis, c), RateEnsemble::numeric([0.1, 0.2, 0.3, 0.4, 0.5, -1e-300]).unwrap()] {
            let s = ensemble_to_json(&r);
            let back = ensemble_from_json(&s).unwrap();
            assert_eq!(back, r);
            assert_eq!(ensemble_to_json(&back), s);
        }
    }

    #[test]
    fn chain_round_trip() {
        for c in [Chain::finite(vec![15, 21]), Chain::periodic(vec![1, 2, 3])] {
            let s = chain_to_json(&c);
            assert_eq!(chain_to_json(&chain_from_json(&s).unwrap()), s);
        }
        assert_eq!(chain_to_json(&Chain::finite(vec![])), r#"{"chain":[],"period":null}"#);
    }

    #[test]
    fn diagnostics_name_the_field() {
        let e = ensemble_from_json(r#"{"mode":"numeric","log_rates":[1,2]}"#).unwrap_err();
        assert!(e.to_string().contains("log_rates"));
        let e = chain_from_json("{\n\"chain\": [1,\n").unwrap_err();
        assert!(e.to_string().contains("line"));
        assert!(chain_from_json(r#"{"chain":[25],"period":null}"#).is_err());
    }
}
