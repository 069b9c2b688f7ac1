use std::fs::File;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use num_complex::Complex64;
use twosided::basis::BasisFamily;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Time,
    Freq,
}

impl Domain {
    fn parse(s: &str) -> Option<Domain> {
        match s.trim() {
            "T" | "t" => Some(Domain::Time),
            "F" | "f" => Some(Domain::Freq),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Measurement {
    pub domain: Domain,
    pub node: f64,
    pub value: Complex64,
}

pub fn parse_family(spec: &str) -> Result<BasisFamily> {
    let (kind, order) = spec
        .split_once(':')
        .ok_or_else(|| anyhow!("family `{spec}` should look like hermite:N or sinc:N"))?;
    let order: usize = order
        .trim()
        .parse()
        .with_context(|| format!("bad order in family `{spec}`"))?;
    let family = match kind.trim() {
        "hermite" => BasisFamily::hermite(order)?,
        "sinc" => BasisFamily::shifted_sinc(order)?,
        other => bail!("unknown family `{other}`; expected hermite or sinc"),
    };
    Ok(family)
}

/// Rows of a headerless-or-headed CSV with their 1-based line numbers. A first
/// row whose leading field is `domain` is treated as a header.
fn records(path: &Path, width: usize) -> Result<Vec<(u64, Vec<String>)>> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .flexible(true)
        .from_reader(file);
    let mut out = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec.with_context(|| format!("{}: malformed CSV", path.display()))?;
        let line = rec.position().map_or(0, |p| p.line());
        if i == 0 && rec.get(0).is_some_and(|f| f.eq_ignore_ascii_case("domain")) {
            continue;
        }
        if rec.len() != width {
            bail!(
                "{} line {line}: expected {width} fields, found {}",
                path.display(),
                rec.len()
            );
        }
        out.push((line, rec.iter().map(str::to_string).collect()));
    }
    Ok(out)
}

fn field_f64(path: &Path, line: u64, name: &str, text: &str) -> Result<f64> {
    let v: f64 = text.parse().map_err(|_| {
        anyhow!(
            "{} line {line}: {name} `{text}` is not a number",
            path.display()
        )
    })?;
    if !v.is_finite() {
        bail!("{} line {line}: {name} must be finite", path.display());
    }
    Ok(v)
}

fn field_domain(path: &Path, line: u64, text: &str) -> Result<Domain> {
    Domain::parse(text).ok_or_else(|| {
        anyhow!(
            "{} line {line}: domain must be T or F, got `{text}`",
            path.display()
        )
    })
}

pub fn read_nodes(path: &Path) -> Result<Vec<(Domain, f64)>> {
    records(path, 2)?
        .into_iter()
        .map(|(line, f)| {
            Ok((
                field_domain(path, line, &f[0])?,
                field_f64(path, line, "value", &f[1])?,
            ))
        })
        .collect()
}

pub fn read_measurements(path: &Path) -> Result<Vec<Measurement>> {
    records(path, 4)?
        .into_iter()
        .map(|(line, f)| {
            Ok(Measurement {
                domain: field_domain(path, line, &f[0])?,
                node: field_f64(path, line, "node", &f[1])?,
                value: Complex64::new(
                    field_f64(path, line, "re", &f[2])?,
                    field_f64(path, line, "im", &f[3])?,
                ),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn temp(contents: &str) -> (tempfile::TempDir, std::path::PathBuf) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.csv");
        File::create(&path)
            .unwrap()
            .write_all(contents.as_bytes())
            .unwrap();
        (dir, path)
    }

    #[test]
    fn families() {
        assert_eq!(parse_family("hermite:3").unwrap().order(), 3);
        assert_eq!(parse_family("sinc: 5").unwrap().order(), 5);
        assert!(parse_family("hermite").is_err());
        assert!(parse_family("legendre:3").is_err());
        assert!(parse_family("hermite:x").is_err());
    }

    #[test]
    fn nodes_with_and_without_header() {
        let (_d, p) = temp("domain,value\nT,0\nF,1.5\nF,-1\n");
        let n = read_nodes(&p).unwrap();
        assert_eq!(
            n,
            vec![
                (Domain::Time, 0.0),
                (Domain::Freq, 1.5),
                (Domain::Freq, -1.0)
            ]
        );
        let (_d, p) = temp("T,0\n");
        assert_eq!(read_nodes(&p).unwrap().len(), 1);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let (_d, p) = temp("domain,value\nT,0\nX,1\n");
        let e = format!("{:#}", read_nodes(&p).unwrap_err());
        assert!(e.contains("line 3"), "{e}");
        let (_d, p) = temp("T,0,1,0\nT,abc,1,0\n");
        let e = format!("{:#}", read_measurements(&p).unwrap_err());
        assert!(e.contains("line 2") && e.contains("abc"), "{e}");
        let (_d, p) = temp("T,0,1\n");
        assert!(format!("{:#}", read_measurements(&p).unwrap_err()).contains("line 1"));
    }
}
