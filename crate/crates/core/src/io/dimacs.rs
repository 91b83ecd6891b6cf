use std::fmt::Write as _;

use super::{Format, ParseError, ProblemFile};
use crate::logic::{Clause, ClauseSet, Literal};

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, column, message: message.into() }
}

/// Variable `n` becomes the atom `v{n}`. Header counts that disagree with the body are
/// reported as warnings.
pub fn parse_dimacs(text: &str) -> Result<ProblemFile, ParseError> {
    let mut declared = None;
    let mut clauses = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut open_since = None;
    let mut max_var = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        // SATLIB files end with a `%` line followed by padding.
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if declared.is_some() {
                return Err(syntax(line_no, 1, "duplicate header"));
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let counts = match fields.as_slice() {
                ["p", "cnf", v, c] => v.parse::<usize>().ok().zip(c.parse::<usize>().ok()),
                _ => None,
            };
            declared = Some(
                counts.ok_or_else(|| syntax(line_no, 1, "malformed header, expected `p cnf <variables> <clauses>`"))?,
            );
            continue;
        }
        if declared.is_none() {
            return Err(syntax(line_no, 1, "clause before the `p cnf` header"));
        }
        let mut column = 1;
        for token in raw.split_whitespace() {
            column = raw[column - 1..].find(token).map_or(column, |at| column + at);
            let n: i64 = token.parse().map_err(|_| syntax(line_no, column, format!("`{token}` is not an integer")))?;
            if n == 0 {
                clauses.push(Clause::new(std::mem::take(&mut current)));
                open_since = None;
            } else {
                let var = n.unsigned_abs() as usize;
                max_var = max_var.max(var);
                current.push(Literal::prop(&format!("v{var}"), n > 0));
                open_since.get_or_insert(line_no);
            }
            column += token.len();
        }
    }
    if let Some(line) = open_since {
        return Err(syntax(line, 1, "clause is missing its terminating 0"));
    }
    let Some((vars, count)) = declared else {
        return Err(syntax(1, 1, "missing `p cnf` header"));
    };
    let mut warnings = Vec::new();
    if count != clauses.len() {
        warnings.push(format!("header declares {count} clauses, found {}", clauses.len()));
    }
    if max_var > vars {
        warnings.push(format!("header declares {vars} variables, found variable {max_var}"));
    }
    Ok(ProblemFile {
        format: Format::Dimacs,
        name: String::new(),
        clauses: ClauseSet::from_clauses(clauses)?,
        annotations: Vec::new(),
        declared,
        warnings,
    })
}

/// DIMACS text for a set over atoms `v{n}`. None when some atom has another shape.
pub fn write_dimacs(s: &ClauseSet) -> Option<String> {
    let index = |l: &Literal| -> Option<usize> {
        l.args.is_empty().then_some(())?;
        l.predicate.strip_prefix('v')?.parse::<usize>().ok().filter(|&n| n > 0)
    };
    let mut max_var = 0;
    let mut body = String::new();
    for c in s {
        for l in c.iter() {
            let n = index(l)?;
            max_var = max_var.max(n);
            let _ = write!(body, "{}{n} ", if l.positive { "" } else { "-" });
        }
        body.push_str("0\n");
    }
    Some(format!("p cnf {max_var} {}\n{body}", s.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_clauses() {
        let p = parse_dimacs("p cnf 2 2\n1 -2 0\n2 0").unwrap();
        assert_eq!(p.clauses.clauses().iter().map(ToString::to_string).collect::<Vec<_>>(), vec!["v1 | ~v2", "v2"]);
        assert!(p.warnings.is_empty());
        let p = parse_dimacs("c comment\np cnf 1 1\n1 0\n").unwrap();
        assert_eq!(p.clauses.len(), 1);
    }

    #[test]
    fn clauses_may_span_lines() {
        let p = parse_dimacs("p cnf 3 2\n1 2\n3 0 -1\n0\n").unwrap();
        assert_eq!(p.clauses.clauses()[0].len(), 3);
        assert_eq!(p.clauses.clauses()[1].len(), 1);
    }

    #[test]
    fn count_mismatch_warns() {
        let p = parse_dimacs("p cnf 2 3\n1 0\n2 0\n").unwrap();
        assert_eq!(p.clauses.len(), 2);
        assert_eq!(p.warnings, vec!["header declares 3 clauses, found 2"]);
    }

    #[test]
    fn errors_carry_lines() {
        assert!(matches!(parse_dimacs("p cnf x 1\n"), Err(ParseError::Syntax { line: 1, .. })));
        assert!(matches!(parse_dimacs("p cnf 1 1\n1 a 0\n"), Err(ParseError::Syntax { line: 2, column: 3, .. })));
        assert!(matches!(parse_dimacs("p cnf 1 1\n\n1\n"), Err(ParseError::Syntax { line: 3, .. })));
    }

    #[test]
    fn writing_round_trips() {
        let p = parse_dimacs("p cnf 3 3\n1 -2 0\n-3 0\n0\n").unwrap();
        let text = write_dimacs(&p.clauses).unwrap();
        let q = parse_dimacs(&text).unwrap();
        assert_eq!(p.clauses.clauses(), q.clauses.clauses());
    }
}
