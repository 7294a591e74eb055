//! Complex numbers as `{"re": …, "im": …}` objects.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Serialize, Deserialize)]
struct Repr {
    re: f64,
    im: f64,
}

pub fn serialize<S: Serializer>(z: &Complex64, ser: S) -> Result<S::Ok, S::Error> {
    Repr { re: z.re, im: z.im }.serialize(ser)
}

pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Complex64, D::Error> {
    let r = Repr::deserialize(de)?;
    Ok(Complex64::new(r.re, r.im))
}
