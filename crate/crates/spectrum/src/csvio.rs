use crate::{EigenRecord, Result, SpectrumError};

/// Column order of the spectrum CSV.
pub const CSV_HEADER: [&str; 5] = ["k", "j", "r", "lambda", "residual"];

/// 17 significant digits, so every value round-trips.
fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

/// Header plus one row per record, `\n`-terminated.
pub fn write_spectrum_csv(records: &[EigenRecord]) -> Result<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let err = |e: csv::Error| SpectrumError::Csv(e.to_string());
    w.write_record(CSV_HEADER).map_err(err)?;
    for r in records {
        w.write_record([r.k.to_string(), r.j.to_string(), fmt(r.r), fmt(r.lambda), fmt(r.residual)]).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| SpectrumError::Csv(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| SpectrumError::Csv(e.to_string()))
}

/// Inverse of [`write_spectrum_csv`]; the header must match exactly.
pub fn parse_spectrum_csv(text: &str) -> Result<Vec<EigenRecord>> {
    let mut rd = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
    let err = |e: csv::Error| SpectrumError::Csv(e.to_string());
    let header = rd.headers().map_err(err)?.clone();
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        return Err(SpectrumError::Csv(format!("unexpected header {:?}", header)));
    }
    rd.deserialize().map(|r| r.map_err(err)).collect()
}
