//! Declarative group definitions.
//!
//! A group file is a list of `keyword values...` lines; `#` starts a comment.
//!
//! ```text
//! kind free            | kind fpc          | kind cayley        | kind rws
//! rank 2               | orders 2 3        | row 0 1 2 3        | generators 2
//!                      |                   | row 1 2 3 0        | rule ba -> ab
//!                      |                   | ...                | rule b'a -> ab'
//!                      |                   | inverse 0 3 2 1    |
//!                      |                   | generators 1       |
//! ```
//!
//! For Cayley groups `generators` lists the element indices bound to the
//! letters `a, b, ...`; `inverse` is optional and checked when present. For
//! rewriting systems `generators` is the number of letters; free cancellation
//! rules are implicit and `1` denotes the empty word.
//!
//! On the command line a group is named by `free:R`, `fpc:m1,m2,...`
//! (`0` for an infinite cyclic factor), `cayley:FILE` or `rws:FILE`.

use std::fs;
use std::path::Path;

use thiserror::Error;

use super::{parse_letters, CayleyTable, GroupBackend, GroupError, RewritingSystem, Rule};

#[derive(Debug, Error)]
pub enum GroupFileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid group: {0}")]
    Group(#[from] GroupError),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("unknown group spec '{0}' (expected free:R, fpc:m1,m2,..., cayley:FILE or rws:FILE)")]
    UnknownSpec(String),
}

fn syntax(line: usize, message: impl Into<String>) -> GroupFileError {
    GroupFileError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_numbers<T: std::str::FromStr>(
    line: usize,
    field: &str,
    values: &[&str],
) -> Result<Vec<T>, GroupFileError> {
    values
        .iter()
        .map(|v| {
            v.parse::<T>()
                .map_err(|_| syntax(line, format!("field '{field}': '{v}' is not a number")))
        })
        .collect()
}

/// Parses the text of a group file.
pub fn parse_group_file(text: &str) -> Result<GroupBackend, GroupFileError> {
    let mut kind: Option<(usize, String)> = None;
    let mut rank: Option<u32> = None;
    let mut orders: Option<Vec<u32>> = None;
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let mut inverse: Option<Vec<u32>> = None;
    let mut generators: Option<(usize, Vec<u32>)> = None;
    let mut rules: Vec<Rule> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut parts = content.split_whitespace();
        let key = parts.next().unwrap_or_default();
        let values: Vec<&str> = parts.collect();
        match key {
            "kind" => {
                let [k] = values[..] else {
                    return Err(syntax(line, "field 'kind' takes exactly one value"));
                };
                kind = Some((line, k.to_string()));
            }
            "rank" => {
                let v = parse_numbers::<u32>(line, "rank", &values)?;
                let [r] = v[..] else {
                    return Err(syntax(line, "field 'rank' takes exactly one value"));
                };
                rank = Some(r);
            }
            "orders" => orders = Some(parse_numbers(line, "orders", &values)?),
            "row" => rows.push(parse_numbers(line, "row", &values)?),
            "inverse" => inverse = Some(parse_numbers(line, "inverse", &values)?),
            "generators" => generators = Some((line, parse_numbers(line, "generators", &values)?)),
            "rule" => {
                let joined = values.join(" ");
                let (lhs, rhs) = joined
                    .split_once("->")
                    .ok_or_else(|| syntax(line, "field 'rule' must look like 'lhs -> rhs'"))?;
                let lhs = parse_letters(lhs).map_err(|e| syntax(line, e.to_string()))?;
                let rhs = parse_letters(rhs).map_err(|e| syntax(line, e.to_string()))?;
                rules.push(Rule { lhs, rhs });
            }
            other => return Err(syntax(line, format!("unknown field '{other}'"))),
        }
    }

    let (kind_line, kind) = kind.ok_or_else(|| syntax(0, "missing field 'kind'"))?;
    match kind.as_str() {
        "free" => {
            let rank = rank.ok_or_else(|| syntax(kind_line, "free group needs 'rank'"))?;
            Ok(GroupBackend::free(rank))
        }
        "fpc" => {
            let orders = orders.ok_or_else(|| syntax(kind_line, "free product needs 'orders'"))?;
            Ok(GroupBackend::free_product_cyclic(orders))
        }
        "cayley" => {
            if rows.is_empty() {
                return Err(syntax(kind_line, "Cayley group needs at least one 'row'"));
            }
            let gens = generators.map(|(_, g)| g).unwrap_or_default();
            Ok(GroupBackend::finite_cayley(CayleyTable::new(rows, inverse, gens)?))
        }
        "rws" => {
            let (gline, g) = generators
                .ok_or_else(|| syntax(kind_line, "rewriting system needs 'generators'"))?;
            let [count] = g[..] else {
                return Err(syntax(gline, "field 'generators' takes the number of letters"));
            };
            Ok(GroupBackend::rewriting(RewritingSystem::new(count as usize, rules)?))
        }
        other => Err(syntax(kind_line, format!("unknown kind '{other}'"))),
    }
}

pub fn load_group_file(path: &Path) -> Result<GroupBackend, GroupFileError> {
    let text = fs::read_to_string(path).map_err(|e| GroupFileError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_group_file(&text)
}

/// Resolves a command-line group spec such as `free:2` or `cayley:z4.txt`.
pub fn parse_group_spec(spec: &str) -> Result<GroupBackend, GroupFileError> {
    let (tag, rest) = spec
        .split_once(':')
        .ok_or_else(|| GroupFileError::UnknownSpec(spec.into()))?;
    match tag {
        "free" => {
            let rank = rest
                .trim()
                .parse()
                .map_err(|_| GroupFileError::UnknownSpec(spec.into()))?;
            Ok(GroupBackend::free(rank))
        }
        "fpc" => {
            let orders = rest
                .split(',')
                .map(|m| m.trim().parse::<u32>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| GroupFileError::UnknownSpec(spec.into()))?;
            Ok(GroupBackend::free_product_cyclic(orders))
        }
        "cayley" | "rws" => {
            let group = load_group_file(Path::new(rest))?;
            let matches_tag = matches!(
                (tag, group.kind()),
                ("cayley", super::BackendKind::FiniteCayley(_))
                    | ("rws", super::BackendKind::RewritingSystem(_))
            );
            if !matches_tag {
                return Err(GroupFileError::UnknownSpec(format!(
                    "{spec}: file does not define a {tag} group"
                )));
            }
            Ok(group)
        }
        _ => Err(GroupFileError::UnknownSpec(spec.into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::BackendKind;

    #[test]
    fn parses_each_kind() {
        let f = parse_group_file("kind free\nrank 3\n").unwrap();
        assert_eq!(f.kind(), &BackendKind::FreeGroup { rank: 3 });

        let m = parse_group_file("# modular group\nkind fpc\norders 2 3 # a, b\n").unwrap();
        assert_eq!(m.label(), "fpc:2,3");

        let z4 = parse_group_file(
            "kind cayley\nrow 0 1 2 3\nrow 1 2 3 0\nrow 2 3 0 1\nrow 3 0 1 2\ninverse 0 3 2 1\ngenerators 1\n",
        )
        .unwrap();
        assert_eq!(z4.num_generators(), 1);

        let z2 = parse_group_file(
            "kind rws\ngenerators 2\nrule ba -> ab\nrule b'a -> ab'\nrule ba' -> a'b\nrule b'a' -> a'b'\n",
        )
        .unwrap();
        assert_eq!(z2.format(&z2.parse_word("bab'").unwrap()), "a");
    }

    #[test]
    fn errors_name_the_line_and_field() {
        let err = parse_group_file("kind cayley\nrow 0 x\n").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 2") && msg.contains("row"), "{msg}");

        let err = parse_group_file("kind free\n").unwrap_err();
        assert!(err.to_string().contains("rank"));

        let err = parse_group_file("kind rws\ngenerators 1\nrule a b\n").unwrap_err();
        assert!(err.to_string().contains("line 3"));
    }

    #[test]
    fn command_line_specs() {
        assert_eq!(parse_group_spec("free:2").unwrap().label(), "free:2");
        assert_eq!(parse_group_spec("fpc:2,3").unwrap().label(), "fpc:2,3");
        assert!(parse_group_spec("matrix:3").is_err());
        assert!(parse_group_spec("cayley:/nonexistent/file").is_err());
    }
}
