//! Text formats for classes, graphs, hypergraphs and word specs.
//!
//! Class files: a header `r=<int> n=<int>`, then one member per line,
//! comma-separated symbols with `*` for an undefined entry. Writers emit the
//! canonical member order, so write -> parse -> write is bit-exact.
//!
//! Graph files: `v=<int> e=<int>`, one `u w` line per edge, then optional
//! witness lines `part: L={..} R={..}`. Hypergraph files carry the
//! uniformity first (`r=<int> v=<int> e=<int>`), edges as `u1 .. ur` lines,
//! and witness lines `part: {..} {..} ..` with one braced set per side.
//!
//! Word files: `key=value` lines with `kind` one of `periodic`, `evper`,
//! `subst`, `prefix`; words are digit strings, so alphabets are limited to
//! r <= 9 in this format.

use crate::class::{PartialClass, PartialFunction, Symbol, TotalClass};
use crate::error::{Error, Result};
use crate::graph::{BicliquePart, Graph, HyperPart, Hypergraph};
use crate::natarajan::{BranchSymbol, StageClass, StageEntry};
use crate::word::WordSpec;

fn nonempty_lines(input: &str) -> impl Iterator<Item = (usize, &str)> {
    input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_key_eq<T: std::str::FromStr>(token: &str, key: &str, line: usize) -> Result<T> {
    let rest = token
        .strip_prefix(key)
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| Error::parse(line, format!("expected `{key}=<int>`, got `{token}`")))?;
    rest.parse::<T>()
        .map_err(|_| Error::parse(line, format!("cannot parse `{rest}` as a number")))
}

// ---------------------------------------------------------------------------
// Class files
// ---------------------------------------------------------------------------

pub fn parse_partial_class(input: &str) -> Result<PartialClass> {
    let mut lines = nonempty_lines(input);
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty input, expected `r=<int> n=<int>`".to_string()))?;
    let mut tokens = header.split_whitespace();
    let r: u8 = parse_key_eq(
        tokens.next().ok_or_else(|| Error::parse(lineno, "missing `r=`".to_string()))?,
        "r",
        lineno,
    )?;
    let n: usize = parse_key_eq(
        tokens.next().ok_or_else(|| Error::parse(lineno, "missing `n=`".to_string()))?,
        "n",
        lineno,
    )?;
    if tokens.next().is_some() {
        return Err(Error::parse(lineno, "unexpected tokens after header".to_string()));
    }

    let mut members = Vec::new();
    for (lineno, line) in lines {
        let mut entries = Vec::with_capacity(n);
        for field in line.split(',') {
            let field = field.trim();
            if field == "*" {
                entries.push(Symbol::STAR);
            } else {
                let v: u8 = field.parse().map_err(|_| {
                    Error::parse(lineno, format!("cannot parse symbol `{field}`"))
                })?;
                if v < 1 || v > r {
                    return Err(Error::parse(
                        lineno,
                        format!("symbol {v} outside alphabet 1..={r}"),
                    ));
                }
                entries.push(Symbol::value(v));
            }
        }
        if entries.len() != n {
            return Err(Error::parse(
                lineno,
                format!("member has {} symbols, expected {n}", entries.len()),
            ));
        }
        members.push(PartialFunction::new(entries));
    }
    PartialClass::new(r, n, members)
}

pub fn write_partial_class(class: &PartialClass) -> String {
    let mut out = format!("r={} n={}\n", class.r(), class.arity());
    for m in class.members() {
        let line: Vec<String> = m.entries().iter().map(|s| s.to_string()).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn parse_total_class(input: &str) -> Result<TotalClass> {
    let partial = parse_partial_class(input)?;
    partial.as_total().ok_or_else(|| {
        Error::validation("total class file contains an undefined entry".to_string())
    })
}

pub fn write_total_class(class: &TotalClass) -> String {
    write_partial_class(&class.to_partial())
}

// ---------------------------------------------------------------------------
// Graph and hypergraph files
// ---------------------------------------------------------------------------

/// Parsed content of a graph-format file (partition lines are returned
/// unvalidated; partition validation happens on construction).
pub enum GraphInput {
    Graph { graph: Graph, parts: Vec<BicliquePart> },
    Hypergraph { hypergraph: Hypergraph, parts: Vec<HyperPart> },
}

fn parse_braced_set(token: &str, line: usize) -> Result<Vec<usize>> {
    let inner = token
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| Error::parse(line, format!("expected `{{..}}`, got `{token}`")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|f| {
            f.trim()
                .parse::<usize>()
                .map_err(|_| Error::parse(line, format!("cannot parse vertex `{f}`")))
        })
        .collect()
}

pub fn parse_graph_input(input: &str) -> Result<GraphInput> {
    let mut lines = nonempty_lines(input).peekable();
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty input".to_string()))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.first().is_some_and(|t| t.starts_with("v=")) {
        // Simple graph: v=<int> e=<int>
        if tokens.len() != 2 {
            return Err(Error::parse(lineno, "expected `v=<int> e=<int>`".to_string()));
        }
        let v: usize = parse_key_eq(tokens[0], "v", lineno)?;
        let e: usize = parse_key_eq(tokens[1], "e", lineno)?;
        let mut edges = Vec::with_capacity(e);
        for _ in 0..e {
            let (lineno, line) = lines
                .next()
                .ok_or_else(|| Error::parse(lineno, format!("expected {e} edge lines")))?;
            let ends: Vec<&str> = line.split_whitespace().collect();
            if ends.len() != 2 {
                return Err(Error::parse(lineno, format!("expected `u w`, got `{line}`")));
            }
            let u: usize = ends[0]
                .parse()
                .map_err(|_| Error::parse(lineno, format!("cannot parse vertex `{}`", ends[0])))?;
            let w: usize = ends[1]
                .parse()
                .map_err(|_| Error::parse(lineno, format!("cannot parse vertex `{}`", ends[1])))?;
            edges.push((u, w));
        }
        let mut parts = Vec::new();
        for (lineno, line) in lines {
            let rest = line.strip_prefix("part:").ok_or_else(|| {
                Error::parse(lineno, format!("expected `part: L={{..}} R={{..}}`, got `{line}`"))
            })?;
            let tokens: Vec<&str> = rest.split_whitespace().collect();
            if tokens.len() != 2 {
                return Err(Error::parse(lineno, "expected exactly `L={..} R={..}`".to_string()));
            }
            let l = tokens[0]
                .strip_prefix("L=")
                .ok_or_else(|| Error::parse(lineno, format!("expected `L={{..}}`, got `{}`", tokens[0])))?;
            let r = tokens[1]
                .strip_prefix("R=")
                .ok_or_else(|| Error::parse(lineno, format!("expected `R={{..}}`, got `{}`", tokens[1])))?;
            parts.push(BicliquePart::new(
                parse_braced_set(l, lineno)?,
                parse_braced_set(r, lineno)?,
            ));
        }
        Ok(GraphInput::Graph { graph: Graph::new(v, edges)?, parts })
    } else if tokens.first().is_some_and(|t| t.starts_with("r=")) {
        // Hypergraph: r=<int> v=<int> e=<int>
        if tokens.len() != 3 {
            return Err(Error::parse(lineno, "expected `r=<int> v=<int> e=<int>`".to_string()));
        }
        let r: u8 = parse_key_eq(tokens[0], "r", lineno)?;
        let v: usize = parse_key_eq(tokens[1], "v", lineno)?;
        let e: usize = parse_key_eq(tokens[2], "e", lineno)?;
        let mut edges = Vec::with_capacity(e);
        for _ in 0..e {
            let (lineno, line) = lines
                .next()
                .ok_or_else(|| Error::parse(lineno, format!("expected {e} edge lines")))?;
            let ends = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::parse(lineno, format!("cannot parse vertex `{t}`")))
                })
                .collect::<Result<Vec<usize>>>()?;
            edges.push(ends);
        }
        let mut parts = Vec::new();
        for (lineno, line) in lines {
            let rest = line.strip_prefix("part:").ok_or_else(|| {
                Error::parse(lineno, format!("expected `part: {{..}} {{..}} ..`, got `{line}`"))
            })?;
            let sides = rest
                .split_whitespace()
                .map(|t| parse_braced_set(t, lineno))
                .collect::<Result<Vec<_>>>()?;
            parts.push(HyperPart::new(sides));
        }
        Ok(GraphInput::Hypergraph { hypergraph: Hypergraph::new(r, v, edges)?, parts })
    } else {
        Err(Error::parse(
            lineno,
            "expected a graph header `v=..` or a hypergraph header `r=..`".to_string(),
        ))
    }
}

fn format_set(set: &[usize]) -> String {
    let inner: Vec<String> = set.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

pub fn write_graph(graph: &Graph, parts: &[BicliquePart]) -> String {
    let mut out = format!("v={} e={}\n", graph.vertex_count(), graph.edges().len());
    for &(u, w) in graph.edges() {
        out.push_str(&format!("{u} {w}\n"));
    }
    for p in parts {
        out.push_str(&format!("part: L={} R={}\n", format_set(&p.left), format_set(&p.right)));
    }
    out
}

pub fn write_hypergraph(h: &Hypergraph, parts: &[HyperPart]) -> String {
    let mut out = format!("r={} v={} e={}\n", h.uniformity(), h.vertex_count(), h.edges().len());
    for e in h.edges() {
        let line: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    for p in parts {
        let sides: Vec<String> = p.sides.iter().map(|s| format_set(s)).collect();
        out.push_str(&format!("part: {}\n", sides.join(" ")));
    }
    out
}

// ---------------------------------------------------------------------------
// Word spec files
// ---------------------------------------------------------------------------

fn parse_digit_word(s: &str, r: u8, line: usize) -> Result<Vec<u8>> {
    s.chars()
        .map(|c| {
            let d = c
                .to_digit(10)
                .ok_or_else(|| Error::parse(line, format!("expected a digit word, got `{s}`")))?;
            if d < 1 || d > r as u32 {
                return Err(Error::parse(line, format!("symbol {d} outside alphabet 1..={r}")));
            }
            Ok(d as u8)
        })
        .collect()
}

pub fn parse_word_spec(input: &str) -> Result<WordSpec> {
    let mut kind: Option<(usize, String)> = None;
    let mut fields: std::collections::HashMap<String, (usize, String)> = Default::default();
    for (lineno, line) in nonempty_lines(input) {
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::parse(lineno, format!("expected `key=value`, got `{line}`")))?;
        let key = key.trim();
        let value = value.trim().to_string();
        if key == "kind" {
            kind = Some((lineno, value));
        } else {
            fields.insert(key.to_string(), (lineno, value));
        }
    }
    let (kind_line, kind) =
        kind.ok_or_else(|| Error::parse(1, "missing `kind=` line".to_string()))?;
    let take = |fields: &mut std::collections::HashMap<String, (usize, String)>,
                key: &str|
     -> Result<(usize, String)> {
        fields
            .remove(key)
            .ok_or_else(|| Error::parse(kind_line, format!("missing `{key}=` line")))
    };
    let mut fields = fields;
    let (r_line, r_text) = take(&mut fields, "r")?;
    let r: u8 = r_text
        .parse()
        .map_err(|_| Error::parse(r_line, format!("cannot parse `{r_text}` as alphabet size")))?;
    if r > 9 {
        return Err(Error::parse(r_line, "word files support alphabets up to r=9".to_string()));
    }

    let spec = match kind.as_str() {
        "periodic" => {
            let (line, cycle) = take(&mut fields, "cycle")?;
            WordSpec::periodic(r, parse_digit_word(&cycle, r, line)?)?
        }
        "evper" => {
            let (pline, pre) = take(&mut fields, "pre")?;
            let (cline, cycle) = take(&mut fields, "cycle")?;
            WordSpec::eventually_periodic(
                r,
                parse_digit_word(&pre, r, pline)?,
                parse_digit_word(&cycle, r, cline)?,
            )?
        }
        "subst" => {
            let (rline, rules_text) = take(&mut fields, "rules")?;
            let (sline, seed) = take(&mut fields, "seed")?;
            let (dline, depth_text) = take(&mut fields, "depth")?;
            let depth: usize = depth_text
                .parse()
                .map_err(|_| Error::parse(dline, format!("cannot parse depth `{depth_text}`")))?;
            let mut rules = vec![None; r as usize];
            for rule in rules_text.split(',') {
                let (from, to) = rule.split_once("->").ok_or_else(|| {
                    Error::parse(rline, format!("expected `s->word`, got `{rule}`"))
                })?;
                let from = parse_digit_word(from.trim(), r, rline)?;
                if from.len() != 1 {
                    return Err(Error::parse(rline, "rule source must be a single symbol".to_string()));
                }
                rules[from[0] as usize - 1] = Some(parse_digit_word(to.trim(), r, rline)?);
            }
            let rules = rules
                .into_iter()
                .enumerate()
                .map(|(i, rule)| {
                    rule.ok_or_else(|| {
                        Error::parse(rline, format!("missing rule for symbol {}", i + 1))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            WordSpec::substitution(r, rules, parse_digit_word(&seed, r, sline)?, depth)?
        }
        "prefix" => {
            let (line, word) = take(&mut fields, "prefix")?;
            WordSpec::prefix(r, parse_digit_word(&word, r, line)?)?
        }
        other => {
            return Err(Error::parse(
                kind_line,
                format!("unknown kind `{other}`; expected periodic, evper, subst or prefix"),
            ));
        }
    };
    if let Some((line, _)) = fields.values().next() {
        return Err(Error::parse(*line, "unexpected extra field".to_string()));
    }
    Ok(spec)
}

fn digit_word(word: &[u8]) -> String {
    word.iter().map(|&s| char::from(b'0' + s)).collect()
}

pub fn write_word_spec(spec: &WordSpec) -> String {
    match spec {
        WordSpec::Periodic { r, cycle } => {
            format!("kind=periodic\nr={r}\ncycle={}\n", digit_word(cycle))
        }
        WordSpec::EventuallyPeriodic { r, preperiod, cycle } => format!(
            "kind=evper\nr={r}\npre={}\ncycle={}\n",
            digit_word(preperiod),
            digit_word(cycle)
        ),
        WordSpec::Substitution { r, rules, seed, depth } => {
            let rules_text: Vec<String> = rules
                .iter()
                .enumerate()
                .map(|(i, rule)| format!("{}->{}", i + 1, digit_word(rule)))
                .collect();
            format!(
                "kind=subst\nr={r}\nrules={}\nseed={}\ndepth={depth}\n",
                rules_text.join(","),
                digit_word(seed)
            )
        }
        WordSpec::Prefix { r, word } => {
            format!("kind=prefix\nr={r}\nprefix={}\n", digit_word(word))
        }
    }
}

// ---------------------------------------------------------------------------
// Branch-stage dumps
// ---------------------------------------------------------------------------

fn stage_entry_token(e: &StageEntry) -> String {
    match e {
        StageEntry::Value(v) => v.to_string(),
        StageEntry::Branch(BranchSymbol::B(j)) => format!("b{j}"),
        StageEntry::Branch(BranchSymbol::C(set)) => {
            let inner: Vec<String> = set.iter().map(|v| v.to_string()).collect();
            format!("c{{{}}}", inner.join(","))
        }
    }
}

/// A stage class in the class file format with branch tokens.
pub fn write_stage_class(stage: &StageClass, r: u8, arity: usize) -> String {
    let mut out = format!("r={r} n={arity}\n");
    for m in stage.members() {
        let line: Vec<String> = m.entries().iter().map(stage_entry_token).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_round_trip_is_canonical() {
        let text = "r=3 n=2\n2,*\n1,3\n1,3\n*,*\n";
        let class = parse_partial_class(text).unwrap();
        assert_eq!(class.len(), 3); // duplicate collapsed
        let written = write_partial_class(&class);
        let reparsed = parse_partial_class(&written).unwrap();
        assert_eq!(class, reparsed);
        assert_eq!(written, write_partial_class(&reparsed));
    }

    #[test]
    fn class_parse_errors_carry_line_numbers() {
        match parse_partial_class("r=2 n=2\n1,2\n1\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_partial_class("r=2 n=1\n5\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_partial_class("n=2 r=2\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn total_class_rejects_stars() {
        assert!(parse_total_class("r=2 n=1\n*\n").is_err());
        let t = parse_total_class("r=2 n=2\n1,2\n2,1\n").unwrap();
        assert_eq!(t.len(), 2);
    }

    #[test]
    fn graph_round_trip_with_witness() {
        let text = "v=3 e=3\n0 1\n0 2\n1 2\npart: L={0} R={1,2}\npart: L={1} R={2}\n";
        match parse_graph_input(text).unwrap() {
            GraphInput::Graph { graph, parts } => {
                assert_eq!(graph.vertex_count(), 3);
                assert_eq!(parts.len(), 2);
                let written = write_graph(&graph, &parts);
                match parse_graph_input(&written).unwrap() {
                    GraphInput::Graph { graph: g2, parts: p2 } => {
                        assert_eq!(graph, g2);
                        assert_eq!(parts, p2);
                    }
                    _ => panic!(),
                }
            }
            _ => panic!("expected a graph"),
        }
    }

    #[test]
    fn graph_parse_errors() {
        assert!(matches!(parse_graph_input("v=2 e=1\n0\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph_input("x=2\n"), Err(Error::Parse { line: 1, .. })));
        // Structural validity surfaces as validation, not parse.
        assert!(matches!(parse_graph_input("v=2 e=1\n0 5\n"), Err(Error::Validation(_))));
    }

    #[test]
    fn hypergraph_round_trip() {
        let text = "r=3 v=5 e=3\n0 1 2\n0 1 3\n2 3 4\npart: {0} {1} {2,3}\npart: {2} {3} {4}\n";
        match parse_graph_input(text).unwrap() {
            GraphInput::Hypergraph { hypergraph, parts } => {
                assert_eq!(hypergraph.uniformity(), 3);
                assert_eq!(parts.len(), 2);
                let written = write_hypergraph(&hypergraph, &parts);
                match parse_graph_input(&written).unwrap() {
                    GraphInput::Hypergraph { hypergraph: h2, parts: p2 } => {
                        assert_eq!(hypergraph, h2);
                        assert_eq!(parts, p2);
                    }
                    _ => panic!(),
                }
            }
            _ => panic!("expected a hypergraph"),
        }
    }

    #[test]
    fn word_specs_round_trip() {
        let specs = vec![
            WordSpec::periodic(2, vec![1, 1, 2]).unwrap(),
            WordSpec::eventually_periodic(3, vec![3], vec![1, 2]).unwrap(),
            WordSpec::substitution(2, vec![vec![1, 2], vec![1]], vec![1], 7).unwrap(),
            WordSpec::prefix(2, vec![1, 2, 2, 1]).unwrap(),
        ];
        for spec in specs {
            let text = write_word_spec(&spec);
            let parsed = parse_word_spec(&text).unwrap();
            assert_eq!(spec, parsed);
        }
    }

    #[test]
    fn word_parse_errors() {
        assert!(matches!(parse_word_spec("r=2\ncycle=12\n"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_word_spec("kind=periodic\nr=2\ncycle=13\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_word_spec("kind=subst\nr=2\nrules=1->12\nseed=1\ndepth=3\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_word_spec("kind=periodic\nr=2\ncycle=12\nbogus=1\n"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn stage_dump_uses_branch_tokens() {
        let class = crate::class::TotalClass::new(
            3,
            1,
            vec![
                crate::class::TotalFunction::new(vec![1]),
                crate::class::TotalFunction::new(vec![2]),
                crate::class::TotalFunction::new(vec![3]),
            ],
        )
        .unwrap();
        let trace = crate::natarajan::branch_construct(&class, 2).unwrap();
        let dump = write_stage_class(trace.final_stage(), 3, 1);
        assert!(dump.contains("b1"));
        assert!(dump.contains("c{1,2}"));
        assert!(dump.contains("c{1,3}"));
    }
}
