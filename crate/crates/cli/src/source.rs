use std::path::Path;
use std::sync::Arc;

use coverlink::{qm_presentation, FiniteGroup, GroupPresentation, QmInstance};
use serde_json::Value;

use crate::report::Failure;

/// A group given by name (`trivial`, `Z<n>`, `qm<p>`) or by a presentation
/// file.
pub fn presentation(name: &str) -> Result<GroupPresentation, Failure> {
    if let Some(p) = named(name)? {
        return Ok(p);
    }
    let text = read(Path::new(name))?;
    Ok(GroupPresentation::parse(&text)?)
}

fn named(name: &str) -> Result<Option<GroupPresentation>, Failure> {
    if name == "trivial" {
        return Ok(Some(GroupPresentation::parse_parts::<&str>(&[], &[])?));
    }
    if let Some(n) = name.strip_prefix('Z').filter(|s| !s.is_empty() && !Path::new(name).exists()) {
        let n: u32 = n.parse().map_err(|_| Failure::input(format!("bad cyclic group name `{name}`")))?;
        if n == 0 {
            return Err(Failure::input("Z0 is not finite"));
        }
        return Ok(Some(GroupPresentation::parse_parts(&["t"], &[&format!("t^{n}")])?));
    }
    if let Some(p) = name.strip_prefix("qm").filter(|s| !s.is_empty() && !Path::new(name).exists()) {
        let p: i64 = p.parse().map_err(|_| Failure::input(format!("bad family member `{name}`")))?;
        return Ok(Some(qm_presentation(instance(p)?)));
    }
    Ok(None)
}

pub fn instance(p: i64) -> Result<QmInstance, Failure> {
    if 4 * p + 3 == 0 {
        return Err(Failure::input(format!("p = {p} gives m = 0")));
    }
    Ok(QmInstance::new(p))
}

/// The finite group behind a name or presentation file, as a regular table.
pub fn finite_group(name: &str, max_cosets: usize) -> Result<Arc<FiniteGroup>, Failure> {
    let group = match name {
        "trivial" => FiniteGroup::trivial(),
        _ => FiniteGroup::from_presentation(&presentation(name)?, max_cosets)?,
    };
    Ok(Arc::new(group))
}

pub fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

pub fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = read(path)?;
    serde_json::from_str(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

/// Parses `a`, `a..b` (inclusive) or comma-separated lists of these.
pub fn p_values(name: &str) -> Result<Vec<i64>, Failure> {
    let bad = || Failure::input(format!("bad p range `{name}`"));
    let mut out = Vec::new();
    for part in name.split(',').map(str::trim) {
        match part.split_once("..") {
            Some((a, b)) => {
                let a: i64 = a.trim().parse().map_err(|_| bad())?;
                let b: i64 = b.trim().parse().map_err(|_| bad())?;
                if a > b {
                    return Err(bad());
                }
                out.extend(a..=b);
            }
            None => out.push(part.parse().map_err(|_| bad())?),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(p_values("0..5").unwrap(), vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(p_values("-1").unwrap(), vec![-1]);
        assert_eq!(p_values("-2..-1, 3").unwrap(), vec![-2, -1, 3]);
        assert!(p_values("3..1").is_err());
        assert!(p_values("x").is_err());
    }

    #[test]
    fn named_groups() {
        assert_eq!(presentation("Z5").unwrap().relators().len(), 1);
        assert_eq!(finite_group("qm1", 1000).unwrap().order(), 28);
        assert_eq!(finite_group("trivial", 10).unwrap().order(), 1);
        assert!(presentation("Zx").is_err());
    }
}
