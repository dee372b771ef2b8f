use ssfrenet_core::grid::SampleGrid;

use crate::CliError;

/// Parse `start:end:step`.
pub fn parse_range(text: &str) -> Result<SampleGrid, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    let [a, b, h] = parts.as_slice() else {
        return Err(CliError::Usage(format!(
            "range must be start:end:step, got {text:?}"
        )));
    };
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| CliError::Usage(format!("bad number {t:?} in range {text:?}")))
    };
    Ok(SampleGrid::new(num(a)?, num(b)?, num(h)?)?)
}
