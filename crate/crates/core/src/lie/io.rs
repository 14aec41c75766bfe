use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{LieAlgebra, LieError, StructureConstants};
use crate::exact::Rational;

/// On-disk form: `{"dim", "basis_names", "brackets": [[i, j, [[k, num, den], ...]], ...]}`
/// with `i < j`; integers too large for `i64` are written as strings.
#[derive(Serialize, Deserialize)]
struct AlgebraFile {
    dim: usize,
    basis_names: Vec<String>,
    brackets: Vec<(usize, usize, Vec<(usize, Value, Value)>)>,
}

fn int_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

fn parse_int(v: &Value) -> Result<BigInt, LieError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| LieError::Format(format!("non-integer coefficient {n}"))),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| LieError::Format(format!("bad integer {s:?}"))),
        other => Err(LieError::Format(format!("expected integer, got {other}"))),
    }
}

pub fn to_json(alg: &LieAlgebra) -> String {
    let c = alg.constants();
    let file = AlgebraFile {
        dim: c.dim,
        basis_names: c.basis_names.clone(),
        brackets: c
            .brackets
            .iter()
            .map(|(&(i, j), v)| {
                let terms = v
                    .iter()
                    .map(|(k, x)| (*k, int_value(x.numer()), int_value(x.denom())))
                    .collect();
                (i, j, terms)
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}

/// Parses the structure-constant format; the result passes the Jacobi check.
pub fn from_json(label: &str, text: &str) -> Result<LieAlgebra, LieError> {
    let file: AlgebraFile =
        serde_json::from_str(text).map_err(|e| LieError::Format(e.to_string()))?;
    let mut c = StructureConstants::new(file.basis_names);
    if c.dim != file.dim {
        return Err(LieError::Format(format!(
            "dim {} but {} basis names",
            file.dim, c.dim
        )));
    }
    for (i, j, terms) in file.brackets {
        if i >= j || j >= c.dim {
            return Err(LieError::Format(format!("bad index pair ({i}, {j})")));
        }
        let mut v = vec![Rational::zero(); c.dim];
        for (k, num, den) in terms {
            if k >= c.dim {
                return Err(LieError::Format(format!("result index {k} out of range")));
            }
            let d = parse_int(&den)?;
            if d.is_zero() {
                return Err(LieError::Format("zero denominator".into()));
            }
            v[k] += Rational::new(parse_int(&num)?, d);
        }
        c.set(i, j, &v);
    }
    LieAlgebra::custom(label, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{sl, so_even};

    #[test]
    fn round_trip_is_exact() {
        for g in [sl(3).unwrap(), so_even(2).unwrap()] {
            let text = to_json(&g);
            let back = from_json("copy", &text).unwrap();
            assert_eq!(back.constants(), g.constants());
        }
    }

    #[test]
    fn big_integers_as_strings() {
        let text = r#"{"dim": 2, "basis_names": ["a", "b"],
            "brackets": [[0, 1, [[1, "123456789012345678901234567890", "7"]]]]}"#;
        let g = from_json("big", text).unwrap();
        let back = from_json("again", &to_json(&g)).unwrap();
        assert_eq!(back.constants(), g.constants());
    }

    #[test]
    fn rejects_non_lie_input() {
        let text = r#"{"dim": 3, "basis_names": ["x", "y", "z"],
            "brackets": [[0, 1, [[2, 1, 1]]], [1, 2, [[0, 1, 1]]], [0, 2, [[0, 1, 1]]]]}"#;
        assert!(matches!(from_json("bad", text), Err(LieError::Jacobi(..))));
        assert!(matches!(
            from_json("bad", r#"{"dim": 1}"#),
            Err(LieError::Format(_))
        ));
    }
}
