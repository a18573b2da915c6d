//! ASPARTIX-style framework files: `arg(a).` and `att(a,b).` facts.

use std::fmt::Write;

use super::{ArgsemError, Framework};
use crate::ids::ArgumentId;

pub fn parse_apx(text: &str) -> Result<Framework, ArgsemError> {
    let mut fw = Framework::default();
    let mut attacks = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('%').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| ArgsemError::Parse { line: line_no, message };
        let body = line
            .strip_suffix('.')
            .ok_or_else(|| err(format!("expected a fact terminated by `.`, found `{line}`")))?
            .trim_end();
        if let Some(inner) = fact_body(body, "arg") {
            fw.add_argument(ArgumentId::new(inner.trim()).map_err(|e| err(e.to_string()))?);
        } else if let Some(inner) = fact_body(body, "att") {
            let (x, y) = inner
                .split_once(',')
                .ok_or_else(|| err(format!("attack `{body}` needs two arguments")))?;
            let x = ArgumentId::new(x.trim()).map_err(|e| err(e.to_string()))?;
            let y = ArgumentId::new(y.trim()).map_err(|e| err(e.to_string()))?;
            attacks.push((line_no, x, y));
        } else {
            return Err(err(format!("unrecognised fact `{body}`")));
        }
    }
    for (line, x, y) in attacks {
        fw.add_attack(x, y).map_err(|e| ArgsemError::Parse {
            line,
            message: format!("{e}; declare it with arg(...)"),
        })?;
    }
    Ok(fw)
}

fn fact_body<'a>(body: &'a str, name: &str) -> Option<&'a str> {
    body.strip_prefix(name)?
        .trim_start()
        .strip_prefix('(')?
        .strip_suffix(')')
}

pub fn write_apx(fw: &Framework) -> String {
    let mut out = String::new();
    for p in fw.nodes() {
        writeln!(out, "arg({p}).").unwrap();
    }
    for (x, y) in fw.edges() {
        writeln!(out, "att({x},{y}).").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ids::arg;

    #[test]
    fn parses_facts_and_comments() {
        let fw = parse_apx("% mutual attack\narg(p).\n\narg( q ).\natt(p, q).\natt(q,p). % trailing\n").unwrap();
        assert_eq!(fw.nodes().len(), 2);
        assert!(fw.edges().contains(&(arg("q"), arg("p"))));
        assert_eq!(parse_apx(&write_apx(&fw)).unwrap(), fw);
    }

    #[test]
    fn empty_file_is_empty_framework() {
        assert!(parse_apx("").unwrap().is_empty());
        assert!(parse_apx("  % nothing\n\n").unwrap().is_empty());
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_apx("arg(p).\natt(p,q).\n").unwrap_err();
        assert!(matches!(err, ArgsemError::Parse { line: 2, .. }), "{err}");
        let err = parse_apx("arg(p)\n").unwrap_err();
        assert!(matches!(err, ArgsemError::Parse { line: 1, .. }));
        assert!(parse_apx("foo(p).").is_err());
        assert!(parse_apx("arg(_fresh1).").is_err());
    }
}
