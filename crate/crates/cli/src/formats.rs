//! Plain-text instance formats. Points are 1-based; `#` starts a comment.
//!
//! Generators:
//! ```text
//! 3
//! c1: 1 1 1
//! 2 3 1
//! ```
//! DFA: the state count, an `initial q` line, a `final f1 f2 …` line (possibly
//! empty), then one letter per line in the generator syntax.
//! Several DFAs in one file are separated by `---` lines.
//! Digraph: the vertex count, then one `u v` edge per line.

use std::fmt::Write as _;

use thiserror::Error;
use transemi_core::reductions::{Dfa, InputDigraph};
use transemi_core::{GeneratorSet, Transformation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    /// 1-based; 0 when the problem is the input as a whole.
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError { line, message: message.into() })
}

/// Non-empty lines with comments stripped, paired with their line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_count(line: usize, s: &str, what: &str) -> Result<usize, FormatError> {
    match s.parse::<usize>() {
        Ok(0) => err(line, format!("{what} must be positive")),
        Ok(n) => Ok(n),
        Err(_) => err(line, format!("expected {what}, found `{s}`")),
    }
}

fn parse_point(line: usize, s: &str, n: usize, what: &str) -> Result<u32, FormatError> {
    match s.parse::<u64>() {
        Ok(p) if p >= 1 && p <= n as u64 => Ok((p - 1) as u32),
        Ok(p) => err(line, format!("{what} {p} out of range 1..={n}")),
        Err(_) => err(line, format!("expected a point, found `{s}`")),
    }
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '-' || c == '.')
}

/// One `[name:] i1 … in` line.
fn parse_map(line: usize, s: &str, n: usize) -> Result<(Option<String>, Transformation), FormatError> {
    let (name, rest) = match s.split_once(':') {
        Some((name, rest)) => {
            let name = name.trim();
            if !valid_name(name) {
                return err(line, format!("invalid name `{name}`"));
            }
            (Some(name.to_string()), rest)
        }
        None => (None, s),
    };
    let images =
        rest.split_whitespace().map(|tok| parse_point(line, tok, n, "image")).collect::<Result<Vec<_>, _>>()?;
    if images.len() != n {
        return err(line, format!("expected {n} images, found {}", images.len()));
    }
    let t = Transformation::new(images).map_err(|e| FormatError { line, message: e.to_string() })?;
    Ok((name, t))
}

pub fn parse_generators(text: &str) -> Result<GeneratorSet, FormatError> {
    let mut lines = content_lines(text);
    let Some((first, head)) = lines.next() else {
        return err(0, "empty input");
    };
    let n = parse_count(first, head, "degree")?;
    let mut gens = Vec::new();
    let mut names = Vec::new();
    for (line, s) in lines {
        let (name, t) = parse_map(line, s, n)?;
        gens.push(t);
        names.push(name);
    }
    if gens.is_empty() {
        return err(first, "no generators");
    }
    GeneratorSet::with_names(gens, names).map_err(|e| FormatError { line: 0, message: e.to_string() })
}

fn write_map(out: &mut String, name: Option<&str>, t: &Transformation) {
    if let Some(name) = name {
        let _ = write!(out, "{name}: ");
    }
    let images: Vec<String> = t.to_one_based().iter().map(u32::to_string).collect();
    out.push_str(&images.join(" "));
    out.push('\n');
}

pub fn render_generators(g: &GeneratorSet) -> String {
    let mut out = format!("{}\n", g.degree());
    for (i, t) in g.generators().iter().enumerate() {
        write_map(&mut out, g.name(i), t);
    }
    out
}

pub fn parse_dfa(text: &str) -> Result<Dfa, FormatError> {
    let mut lines = content_lines(text);
    let Some((first, head)) = lines.next() else {
        return err(0, "empty input");
    };
    let n = parse_count(first, head, "state count")?;
    let mut initial = None;
    let mut finals = None;
    let mut letters = Vec::new();
    let mut names = Vec::new();
    for (line, s) in lines {
        let mut words = s.split_whitespace();
        match words.next() {
            Some("initial") => {
                if initial.is_some() {
                    return err(line, "duplicate `initial` line");
                }
                let args: Vec<&str> = words.collect();
                let [q] = args[..] else {
                    return err(line, "`initial` takes exactly one state");
                };
                initial = Some(parse_point(line, q, n, "initial state")?);
            }
            Some("final") => {
                if finals.is_some() {
                    return err(line, "duplicate `final` line");
                }
                finals = Some(words.map(|q| parse_point(line, q, n, "final state")).collect::<Result<Vec<_>, _>>()?);
            }
            _ => {
                let (name, t) = parse_map(line, s, n)?;
                letters.push(t);
                names.push(name);
            }
        }
    }
    let Some(initial) = initial else {
        return err(0, "missing `initial` line");
    };
    let Some(finals) = finals else {
        return err(0, "missing `final` line");
    };
    Dfa::with_names(n, initial, finals, letters, names).map_err(|e| FormatError { line: 0, message: e.to_string() })
}

pub fn render_dfa(d: &Dfa) -> String {
    let mut out = format!("{}\ninitial {}\nfinal", d.states(), d.initial() + 1);
    for f in d.finals() {
        let _ = write!(out, " {}", f + 1);
    }
    out.push('\n');
    for (t, name) in d.letters().iter().zip(d.names()) {
        write_map(&mut out, name.as_deref(), t);
    }
    out
}

/// DFAs separated by `---` lines; error lines refer to the whole file.
pub fn parse_dfa_list(text: &str) -> Result<Vec<Dfa>, FormatError> {
    let mut out = Vec::new();
    let mut chunk = String::new();
    let mut offset = 0;
    let mut flush = |chunk: &mut String, offset: usize| -> Result<(), FormatError> {
        let d =
            parse_dfa(chunk).map_err(|e| FormatError { line: if e.line == 0 { 0 } else { e.line + offset }, ..e })?;
        out.push(d);
        chunk.clear();
        Ok(())
    };
    for (i, line) in text.lines().enumerate() {
        if line.trim() == "---" {
            flush(&mut chunk, offset)?;
            offset = i + 1;
        } else {
            chunk.push_str(line);
            chunk.push('\n');
        }
    }
    flush(&mut chunk, offset)?;
    Ok(out)
}

pub fn render_dfa_list(ds: &[Dfa]) -> String {
    ds.iter().map(render_dfa).collect::<Vec<_>>().join("---\n")
}

pub fn parse_digraph(text: &str) -> Result<InputDigraph, FormatError> {
    let mut lines = content_lines(text);
    let Some((first, head)) = lines.next() else {
        return err(0, "empty input");
    };
    let n = parse_count(first, head, "vertex count")?;
    let mut edges = Vec::new();
    for (line, s) in lines {
        let ends: Vec<&str> = s.split_whitespace().collect();
        let [u, v] = ends[..] else {
            return err(line, "expected an edge `u v`");
        };
        edges.push((parse_point(line, u, n, "vertex")?, parse_point(line, v, n, "vertex")?));
    }
    InputDigraph::new(n, edges).map_err(|e| FormatError { line: 0, message: e.to_string() })
}

pub fn render_digraph(g: &InputDigraph) -> String {
    let mut out = format!("{}\n", g.vertices());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{} {}", u + 1, v + 1);
    }
    out
}

/// Prefixes every line of `comment` with `# `.
pub fn comment_header(comment: &str) -> String {
    comment.lines().map(|l| if l.is_empty() { "#\n".to_string() } else { format!("# {l}\n") }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_examples() {
        let g = parse_generators("3\n2 3 1").unwrap();
        assert_eq!(g.degree(), 3);
        assert_eq!(g.generators(), [Transformation::from_one_based(&[2, 3, 1]).unwrap()]);

        let g = parse_generators("3\nc1: 1 1 1\nc2: 2 2 2").unwrap();
        assert_eq!(g.name(0), Some("c1"));
        assert_eq!(g.name(1), Some("c2"));

        let e = parse_generators("3\n2 3 4").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("image 4 out of range"), "{e}");
    }

    #[test]
    fn generator_errors_carry_lines() {
        assert_eq!(parse_generators("# header\n3\n").unwrap_err().message, "no generators");
        assert_eq!(parse_generators("3\n1 2 3\n\n1 2").unwrap_err().line, 4);
        assert_eq!(parse_generators("x\n1").unwrap_err().line, 1);
        assert_eq!(parse_generators("2\nbad name: 1 2").unwrap_err().line, 2);
        assert_eq!(parse_generators("").unwrap_err().line, 0);
    }

    #[test]
    fn comments_are_ignored() {
        let g = parse_generators("# S\n2 # degree\n\n2 1 # swap\n").unwrap();
        assert_eq!(g.len(), 1);
    }

    #[test]
    fn dfa_examples() {
        let d = parse_dfa("2\ninitial 1\nfinal 2\na: 2 2").unwrap();
        assert_eq!((d.states(), d.initial(), d.finals()), (2, 0, &[1][..]));
        assert_eq!(d.names(), [Some("a".to_string())]);
        let e = parse_dfa("2\ninitial 3\nfinal 2\n2 2").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("initial state 3 out of range"), "{e}");
        assert_eq!(parse_dfa("2\nfinal\n").unwrap_err().message, "missing `initial` line");
        assert!(parse_dfa("2\ninitial 1\nfinal\n").unwrap().finals().is_empty());
    }

    #[test]
    fn dfa_lists_report_file_lines() {
        let ds = parse_dfa_list("2\ninitial 1\nfinal 2\n2 2\n---\n1\ninitial 1\nfinal 1\n1").unwrap();
        assert_eq!(ds.len(), 2);
        assert_eq!(parse_dfa_list(&render_dfa_list(&ds)).unwrap(), ds);
        let e = parse_dfa_list("2\ninitial 1\nfinal 2\n2 2\n---\n1\ninitial 2\nfinal 1").unwrap_err();
        assert_eq!(e.line, 7);
    }

    #[test]
    fn digraph_examples() {
        let g = parse_digraph("2\n1 2").unwrap();
        assert_eq!(g.edges(), [(0, 1)]);
        assert_eq!(parse_digraph("2\n1 2 3").unwrap_err().line, 2);
        assert_eq!(parse_digraph("2\n1 5").unwrap_err().line, 2);
    }

    #[test]
    fn header_comments_parse_away() {
        let g = parse_generators("3\n2 3 1").unwrap();
        let text = comment_header("reduction of x\n\nguarantee: y") + &render_generators(&g);
        assert_eq!(parse_generators(&text).unwrap(), g);
    }
}
