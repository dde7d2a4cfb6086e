//! Serde adapters shared by the report and table schemas.

/// Big integers serialize as decimal strings so JSON consumers never face
/// precision loss on values beyond f64 range.
pub(crate) mod bigint_decimal {
    use num_bigint::BigInt;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &BigInt, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<BigInt, D::Error> {
        let text = String::deserialize(de)?;
        text.parse()
            .map_err(|_| de::Error::custom(format!("invalid decimal integer {text:?}")))
    }
}
