//! Line-oriented parser for the straightedge DSL.

use super::{Call, Error, Kind, Program, Result, Step};

/// Parse a program. Identifiers must be defined before use; the grammar has
/// no compass primitive, so anything circle-like other than the given circle
/// is a syntax error.
pub fn parse(text: &str) -> Result<Program> {
    let mut program = Program {
        givens: Vec::new(),
        steps: Vec::new(),
        outputs: Vec::new(),
    };
    let mut defined: Vec<String> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }

        if let Some(rest) = line.strip_prefix("given ") {
            let (name, kind) = split_decl(rest, line_no)?;
            let kind = match kind {
                "point" => Kind::Point,
                "circle_with_center" => Kind::CircleWithCenter,
                other => {
                    return Err(err_at(line_no, raw, other, "unknown given kind"));
                }
            };
            check_ident(name, line_no, raw)?;
            if defined.iter().any(|d| d == name) {
                return Err(Error::DuplicateIdentifier { line: line_no, name: name.into() });
            }
            defined.push(name.to_string());
            program.givens.push((name.to_string(), kind));
            continue;
        }

        if let Some(rest) = line.strip_prefix("output ") {
            let (name, predicate) = split_decl(rest, line_no)?;
            if !defined.iter().any(|d| d == name) {
                return Err(Error::UnknownIdentifier { line: line_no, name: name.into() });
            }
            program.outputs.push((name.to_string(), predicate.to_string()));
            continue;
        }

        // Assignment: ident = call(args)
        let eq = line.find('=').ok_or_else(|| err_at(line_no, raw, line, "expected '='"))?;
        let name = line[..eq].trim();
        check_ident(name, line_no, raw)?;
        if defined.iter().any(|d| d == name) {
            return Err(Error::DuplicateIdentifier { line: line_no, name: name.into() });
        }
        let call_src = line[eq + 1..].trim();
        let call = parse_call(call_src, line_no, raw, &defined)?;
        defined.push(name.to_string());
        program.steps.push(Step { name: name.to_string(), call, line_no });
    }
    Ok(program)
}

fn split_decl(rest: &str, line_no: usize) -> Result<(&str, &str)> {
    let mut parts = rest.splitn(2, ':');
    let name = parts.next().unwrap_or("").trim();
    let kind = parts
        .next()
        .ok_or(Error::SyntaxError {
            line: line_no,
            col: rest.len(),
            msg: "expected ':'".into(),
        })?
        .trim();
    Ok((name, kind))
}

fn check_ident(name: &str, line_no: usize, raw: &str) -> Result<()> {
    let ok = !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !name.chars().next().unwrap().is_ascii_digit();
    if ok {
        Ok(())
    } else {
        Err(err_at(line_no, raw, name, "invalid identifier"))
    }
}

fn err_at(line_no: usize, raw: &str, token: &str, msg: &str) -> Error {
    let col = raw.find(token).map(|c| c + 1).unwrap_or(1);
    Error::SyntaxError { line: line_no, col, msg: format!("{msg} ('{token}')") }
}

fn parse_call(src: &str, line_no: usize, raw: &str, defined: &[String]) -> Result<Call> {
    let open = src
        .find('(')
        .ok_or_else(|| err_at(line_no, raw, src, "expected a call"))?;
    if !src.ends_with(')') {
        return Err(err_at(line_no, raw, src, "expected ')'"));
    }
    let head = src[..open].trim();
    let args_src = &src[open + 1..src.len() - 1];
    let args: Vec<&str> = if args_src.trim().is_empty() {
        Vec::new()
    } else {
        args_src.split(',').map(str::trim).collect()
    };

    let need = |n: usize| -> Result<()> {
        if args.len() == n {
            Ok(())
        } else {
            Err(Error::ArityError { line: line_no })
        }
    };
    let ident = |s: &str| -> Result<String> {
        if defined.iter().any(|d| d == s) {
            Ok(s.to_string())
        } else {
            Err(Error::UnknownIdentifier { line: line_no, name: s.to_string() })
        }
    };
    let hint = |s: &str| -> Result<String> {
        let t = s.trim();
        if t.len() >= 2 && t.starts_with('"') && t.ends_with('"') {
            Ok(t[1..t.len() - 1].to_string())
        } else {
            Err(err_at(line_no, raw, s, "expected a quoted hint"))
        }
    };

    match head {
        "join" => {
            need(2)?;
            Ok(Call::Join(ident(args[0])?, ident(args[1])?))
        }
        "meet" => {
            need(2)?;
            Ok(Call::Meet(ident(args[0])?, ident(args[1])?))
        }
        "on_line" => {
            need(2)?;
            Ok(Call::OnLine(ident(args[0])?, hint(args[1])?))
        }
        "on_circle" => {
            need(1)?;
            Ok(Call::OnCircle(hint(args[0])?))
        }
        "second_meet" => {
            need(2)?;
            Ok(Call::SecondMeet(ident(args[0])?, ident(args[1])?))
        }
        other => Err(err_at(line_no, raw, other, "unknown primitive")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_program_parses() {
        let p = parse(
            "given A : point\ngiven B : point\ngiven m : point\nl = join(A, B)\nP = meet(l, l2)  # bad\n",
        );
        // l2 is undefined.
        assert!(matches!(p, Err(Error::UnknownIdentifier { line: 5, .. })));

        let p = parse("given A : point\ngiven B : point\nl = join(A,B)\noutput l : parallel_to_AB\n")
            .unwrap();
        assert_eq!(p.steps.len(), 1);
        assert_eq!(p.outputs.len(), 1);
    }

    #[test]
    fn two_step_program_with_given_line_operand() {
        let p = parse(
            "given A : point\ngiven B : point\ngiven m : point\nl = join(A, B)\nP = meet(l, m)\n",
        )
        .unwrap();
        assert_eq!(p.steps.len(), 2);
        assert_eq!(p.givens.len(), 3);
    }

    #[test]
    fn compass_call_is_a_syntax_error() {
        let r = parse("given A : point\nC2 = circle(A, 3)\n");
        assert!(matches!(r, Err(Error::SyntaxError { line: 2, .. })));
    }

    #[test]
    fn arity_is_checked() {
        let r = parse("given l : point\nP = meet(l)\n");
        assert!(matches!(r, Err(Error::ArityError { line: 2 })));
    }

    #[test]
    fn forward_reference_rejected() {
        let r = parse("P = meet(l, m)\ngiven l : point\n");
        assert!(matches!(r, Err(Error::UnknownIdentifier { line: 1, .. })));
    }

    #[test]
    fn comments_and_blanks_ignored() {
        let p = parse("# a comment\n\ngiven A : point # trailing\n").unwrap();
        assert_eq!(p.givens.len(), 1);
    }

    #[test]
    fn duplicate_identifier_rejected() {
        let r = parse("given A : point\ngiven A : point\n");
        assert!(matches!(r, Err(Error::DuplicateIdentifier { .. })));
    }
}
