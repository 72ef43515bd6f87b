//! Flag parsers: `AxB` dimension pairs and numeric grids written as
//! `start..end:step` (endpoints inclusive to within half a step), a
//! single value, or a comma list.

pub fn parse_dims(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected AxB, got '{s}'"))?;
    let da = a.trim().parse().map_err(|_| format!("bad dimension '{a}'"))?;
    let db = b.trim().parse().map_err(|_| format!("bad dimension '{b}'"))?;
    if da < 2 || db < 2 {
        return Err("subsystem dimensions must be at least 2".into());
    }
    Ok((da, db))
}

/// Newtype so clap treats a whole grid as one flag value.
#[derive(Clone, Debug)]
pub struct Grid(pub Vec<f64>);

pub fn parse_grid_arg(s: &str) -> Result<Grid, String> {
    parse_grid(s).map(Grid)
}

pub fn parse_grid(s: &str) -> Result<Vec<f64>, String> {
    if let Some((range, step)) = s.split_once(':') {
        let (start, end) = range
            .split_once("..")
            .ok_or_else(|| format!("expected start..end:step, got '{s}'"))?;
        let start: f64 = start.trim().parse().map_err(|_| format!("bad number '{start}'"))?;
        let end: f64 = end.trim().parse().map_err(|_| format!("bad number '{end}'"))?;
        let step: f64 = step.trim().parse().map_err(|_| format!("bad number '{step}'"))?;
        if step <= 0.0 || end < start {
            return Err(format!("empty grid '{s}'"));
        }
        let mut values = Vec::new();
        let mut k = 0usize;
        loop {
            let v = start + step * k as f64;
            if v > end + step / 2.0 {
                break;
            }
            // snap accumulated rounding so grid labels stay clean
            values.push((v * 1e12).round() / 1e12);
            k += 1;
            if k > 1_000_000 {
                return Err("grid too large".into());
            }
        }
        return Ok(values);
    }
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|_| format!("bad number '{part}'"))
        })
        .collect()
}

pub fn format_grid(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims_parse() {
        assert_eq!(parse_dims("2x3").unwrap(), (2, 3));
        assert!(parse_dims("1x3").is_err());
        assert!(parse_dims("23").is_err());
    }

    #[test]
    fn grid_forms() {
        let g = parse_grid("0.1..1.0:0.1").unwrap();
        assert_eq!(g.len(), 10);
        assert!((g[0] - 0.1).abs() < 1e-12);
        assert!((g[9] - 1.0).abs() < 1e-9);

        assert_eq!(parse_grid("0..1:0.01").unwrap().len(), 101);
        assert_eq!(parse_grid("0.5").unwrap(), vec![0.5]);
        assert_eq!(parse_grid("0.5,1.0").unwrap(), vec![0.5, 1.0]);
        assert!(parse_grid("1..0:0.1").is_err());
    }
}
