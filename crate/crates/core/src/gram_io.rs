//! JSON input for Gram matrices: arrays of arrays of integers, with
//! arbitrary-precision entries written as decimal strings when they exceed
//! 64 bits.

use num_bigint::BigInt;
use serde_json::Value;

use crate::lattice::GramLattice;
use crate::{Error, Result};

fn entry_to_bigint(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(Error::Invalid(format!("non-integer matrix entry {n}")))
            }
        }
        Value::String(s) => s
            .trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Invalid(format!("bad integer string {s:?}"))),
        other => Err(Error::Invalid(format!("matrix entry must be integer or string, got {other}"))),
    }
}

pub fn gram_from_json_value(v: &Value) -> Result<GramLattice> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Invalid("expected a JSON array of rows".into()))?;
    let mut parsed = Vec::with_capacity(rows.len());
    for row in rows {
        let entries = row
            .as_array()
            .ok_or_else(|| Error::Invalid("expected each row to be a JSON array".into()))?;
        parsed.push(entries.iter().map(entry_to_bigint).collect::<Result<Vec<_>>>()?);
    }
    GramLattice::new(parsed, None)
}

pub fn gram_from_json_str(s: &str) -> Result<GramLattice> {
    let v: Value = serde_json::from_str(s)?;
    gram_from_json_value(&v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn parses_plain_integers() {
        let l = gram_from_json_str("[[3,1],[1,3]]").unwrap();
        assert_eq!(l.discriminant(), BigInt::from(8));
    }

    #[test]
    fn parses_decimal_strings_beyond_u64() {
        let big = "123456789012345678901234567890";
        let s = format!("[[\"{big}\", 0], [0, 2]]");
        let l = gram_from_json_str(&s).unwrap();
        assert_eq!(l.gram()[(0, 0)], big.parse::<BigInt>().unwrap());
    }

    #[test]
    fn rejects_asymmetric() {
        assert!(gram_from_json_str("[[1,2],[3,1]]").is_err());
        assert!(gram_from_json_str("[[1,2]]").is_err());
        assert!(gram_from_json_str("[1,2]").is_err());
    }
}
