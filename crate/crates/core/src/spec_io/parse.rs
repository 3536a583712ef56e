use std::collections::HashMap;

use super::{DeclKind, Declaration, Diagnostic, Position, SpecDocument, KEYWORDS};
use crate::catalog::builtin;
use crate::group::{order_cap, Elem};

#[derive(Clone, Debug)]
struct Token {
    text: String,
    pos: Position,
}

#[derive(Debug)]
struct Line {
    number: usize,
    tokens: Vec<Token>,
}

impl Line {
    fn starts_declaration(&self) -> bool {
        KEYWORDS.contains(&self.tokens[0].text.as_str())
    }

    fn start(&self) -> Position {
        self.tokens[0].pos
    }
}

fn is_punct(c: char) -> bool {
    matches!(c, '(' | ')' | ',' | '=' | ':')
}

fn tokenize(number: usize, text: &str) -> Line {
    let mut tokens = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut word: Option<Token> = None;
    let flush = |word: &mut Option<Token>, tokens: &mut Vec<Token>| {
        if let Some(w) = word.take() {
            tokens.push(w);
        }
    };
    while i < chars.len() {
        let c = chars[i];
        let pos = Position { line: number, column: i + 1 };
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            flush(&mut word, &mut tokens);
        } else if is_punct(c) {
            flush(&mut word, &mut tokens);
            tokens.push(Token { text: c.to_string(), pos });
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            flush(&mut word, &mut tokens);
            tokens.push(Token { text: "->".into(), pos });
            i += 1;
        } else {
            match &mut word {
                Some(w) => w.text.push(c),
                None => word = Some(Token { text: c.to_string(), pos }),
            }
        }
        i += 1;
    }
    flush(&mut word, &mut tokens);
    Line { number, tokens }
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !KEYWORDS.contains(&s)
        && s != "comp"
}

type Parsed<T> = Result<T, Diagnostic>;

/// What an earlier declaration offers to later ones. `None` marks a name
/// whose declaration had errors: it is reserved but cannot be used.
#[derive(Clone, Debug)]
enum Symbol {
    Group { order: usize },
    Hom { source: String, target: String, map: Vec<Elem> },
    Action { group: String, carrier: String },
    Xmod,
    InternalCat,
}

impl Symbol {
    fn kind(&self) -> &'static str {
        match self {
            Symbol::Group { .. } => "group",
            Symbol::Hom { .. } => "hom",
            Symbol::Action { .. } => "action",
            Symbol::Xmod => "xmod",
            Symbol::InternalCat => "internalcat",
        }
    }
}

struct Parser {
    lines: Vec<Line>,
    next: usize,
    symbols: HashMap<String, (Position, Option<Symbol>)>,
}

/// Parses a document. Every declaration with an error contributes exactly
/// one diagnostic; parsing resumes at the next declaration keyword.
pub fn parse_spec(text: &str) -> Result<SpecDocument, Vec<Diagnostic>> {
    let lines: Vec<Line> = text
        .lines()
        .enumerate()
        .map(|(i, l)| tokenize(i + 1, l))
        .filter(|l| !l.tokens.is_empty())
        .collect();
    let mut p = Parser {
        lines,
        next: 0,
        symbols: HashMap::new(),
    };
    let mut doc = SpecDocument::default();
    let mut diags = Vec::new();
    while p.next < p.lines.len() {
        let line = &p.lines[p.next];
        if !line.starts_declaration() {
            let tok = &line.tokens[0];
            let msg = if tok.text.parse::<Elem>().is_ok() {
                "unexpected row outside a declaration".to_string()
            } else {
                format!("expected a declaration keyword ({}), found `{}`", KEYWORDS.join(", "), tok.text)
            };
            diags.push(Diagnostic::error(tok.pos, msg));
            p.next += 1;
            p.skip_to_declaration();
            continue;
        }
        match p.declaration() {
            Ok(decl) => {
                p.define(&decl.name, decl.position, Some(symbol_for(&decl.kind)));
                doc.decls.push(decl);
            }
            Err(d) => {
                diags.push(d);
                p.skip_to_declaration();
            }
        }
    }
    if diags.is_empty() {
        Ok(doc)
    } else {
        Err(diags)
    }
}

fn symbol_for(kind: &DeclKind) -> Symbol {
    match kind {
        DeclKind::Group { rows } => Symbol::Group { order: rows.len() },
        DeclKind::Hom { source, target, map } => Symbol::Hom {
            source: source.clone(),
            target: target.clone(),
            map: map.clone(),
        },
        DeclKind::Action { group, carrier, .. } => Symbol::Action {
            group: group.clone(),
            carrier: carrier.clone(),
        },
        DeclKind::Xmod { .. } => Symbol::Xmod,
        DeclKind::InternalCat { .. } => Symbol::InternalCat,
    }
}

/// Cursor over the tokens of one header line.
struct Header<'a> {
    tokens: &'a [Token],
    i: usize,
    eol: Position,
}

impl<'a> Header<'a> {
    fn new(line: &'a Line) -> Self {
        let last = line.tokens.last().expect("nonempty line");
        let eol = Position {
            line: line.number,
            column: last.pos.column + last.text.chars().count(),
        };
        Header { tokens: &line.tokens, i: 0, eol }
    }

    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.i)
    }

    fn any(&mut self, what: &str) -> Parsed<&'a Token> {
        match self.tokens.get(self.i) {
            Some(t) => {
                self.i += 1;
                Ok(t)
            }
            None => Err(Diagnostic::error(self.eol, format!("expected {what}, found end of line"))),
        }
    }

    fn expect(&mut self, text: &str) -> Parsed<Position> {
        let t = self.any(&format!("`{text}`"))?;
        if t.text != text {
            return Err(Diagnostic::error(t.pos, format!("expected `{text}`, found `{}`", t.text)));
        }
        Ok(t.pos)
    }

    fn name(&mut self, what: &str) -> Parsed<&'a Token> {
        let t = self.any(what)?;
        if !is_name(&t.text) {
            return Err(Diagnostic::error(t.pos, format!("expected {what}, found `{}`", t.text)));
        }
        Ok(t)
    }

    fn number(&mut self, what: &str) -> Parsed<(usize, Position)> {
        let t = self.any(what)?;
        let n = t
            .text
            .parse()
            .map_err(|_| Diagnostic::error(t.pos, format!("expected {what}, found `{}`", t.text)))?;
        Ok((n, t.pos))
    }

    fn finish(&self) -> Parsed<()> {
        match self.peek() {
            Some(t) => Err(Diagnostic::error(t.pos, format!("unexpected `{}` at end of line", t.text))),
            None => Ok(()),
        }
    }
}

impl Parser {
    fn skip_to_declaration(&mut self) {
        while self.next < self.lines.len() && !self.lines[self.next].starts_declaration() {
            self.next += 1;
        }
    }

    fn define(&mut self, name: &str, pos: Position, sym: Option<Symbol>) {
        self.symbols.insert(name.to_string(), (pos, sym));
    }

    fn lookup(&self, tok: &Token, want: &str) -> Parsed<&Symbol> {
        match self.symbols.get(&tok.text) {
            None => Err(Diagnostic::error(tok.pos, format!("unknown {want} `{}`", tok.text))),
            Some((_, None)) => Err(Diagnostic::error(
                tok.pos,
                format!("`{}` refers to a declaration with errors", tok.text),
            )),
            Some((_, Some(sym))) if sym.kind() != want => Err(Diagnostic::error(
                tok.pos,
                format!("`{}` is a {}, expected a {want}", tok.text, sym.kind()),
            )),
            Some((_, Some(sym))) => Ok(sym),
        }
    }

    fn group_order(&self, tok: &Token) -> Parsed<usize> {
        match self.lookup(tok, "group")? {
            Symbol::Group { order } => Ok(*order),
            _ => unreachable!("lookup checked the kind"),
        }
    }

    fn declaration(&mut self) -> Parsed<Declaration> {
        let header_index = self.next;
        self.next += 1;
        let line = &self.lines[header_index];
        let mut h = Header::new(line);
        let keyword = h.any("a keyword")?.clone();
        let name = h.name("a declaration name")?.clone();
        if let Some((first, _)) = self.symbols.get(&name.text) {
            return Err(Diagnostic::error(
                name.pos,
                format!("duplicate name `{}` (first declared at line {})", name.text, first.line),
            ));
        }
        // Reserve the name so later references report the real problem.
        self.define(&name.text, name.pos, None);
        let kind = match keyword.text.as_str() {
            "group" => self.group(header_index, keyword.pos)?,
            "hom" => self.hom(header_index, keyword.pos)?,
            "action" => self.action(header_index, keyword.pos)?,
            "xmod" => self.xmod(header_index)?,
            "internalcat" => self.internalcat(header_index, keyword.pos)?,
            _ => unreachable!("declaration starts with a keyword"),
        };
        Ok(Declaration {
            name: name.text,
            position: keyword.pos,
            kind,
        })
    }

    fn header(&self, index: usize) -> Header<'_> {
        let mut h = Header::new(&self.lines[index]);
        h.i = 2;
        h
    }

    /// Takes the next `count` row lines, each of exactly `width` indices
    /// below `bound`.
    fn rows(&mut self, count: usize, width: usize, bound: usize, what: &str, header: Position) -> Parsed<Vec<(Vec<Elem>, &Line)>> {
        let mut out = Vec::with_capacity(count);
        for k in 0..count {
            let Some(line) = self.lines.get(self.next).filter(|l| !l.starts_declaration()) else {
                let found = match self.lines.get(self.next) {
                    Some(l) => format!("found `{}` at line {}", l.tokens[0].text, l.number),
                    None => "found end of input".to_string(),
                };
                return Err(Diagnostic::error(
                    header,
                    format!("expected {count} {what} but only {k} present; {found}"),
                ));
            };
            self.next += 1;
            if line.tokens.len() != width {
                return Err(Diagnostic::error(
                    line.start(),
                    format!("row length {}, expected {width}", line.tokens.len()),
                ));
            }
            let mut row = Vec::with_capacity(width);
            for t in &line.tokens {
                let x: Elem = t
                    .text
                    .parse()
                    .map_err(|_| Diagnostic::error(t.pos, format!("expected an element index, found `{}`", t.text)))?;
                if x >= bound {
                    return Err(Diagnostic::error(t.pos, format!("index {x} is out of range 0..{bound}")));
                }
                row.push(x);
            }
            out.push((row, line));
        }
        Ok(out)
    }

    fn group(&mut self, index: usize, at: Position) -> Parsed<DeclKind> {
        let mut h = self.header(index);
        let how = h.any("`order` or `builtin`")?;
        match how.text.as_str() {
            "order" => {
                let (n, npos) = h.number("a group order")?;
                h.finish()?;
                if n == 0 {
                    return Err(Diagnostic::error(npos, "a group needs at least one element"));
                }
                let cap = order_cap();
                if n > cap {
                    return Err(Diagnostic::error(npos, format!("order {n} exceeds the order cap {cap}")));
                }
                let rows = self.rows(n, n, n, "table rows", at)?;
                for (g, (row, line)) in rows.iter().enumerate() {
                    if g == 0 {
                        if let Some(h) = (0..n).find(|&h| row[h] != h) {
                            return Err(Diagnostic::error(
                                line.tokens[h].pos,
                                format!("row 0 has {} at position {h}; element 0 must be the identity", row[h]),
                            ));
                        }
                    } else if row[0] != g {
                        return Err(Diagnostic::error(
                            line.start(),
                            format!("row {g} starts with {}; element 0 must be the identity", row[0]),
                        ));
                    }
                }
                Ok(DeclKind::Group { rows: rows.into_iter().map(|(r, _)| r).collect() })
            }
            "builtin" => {
                let kind = h.any("a builtin kind")?.clone();
                let param = match h.peek() {
                    Some(_) => Some(h.number("a builtin parameter")?.0),
                    None => None,
                };
                h.finish()?;
                let g = builtin(&kind.text, param).map_err(|e| Diagnostic::error(kind.pos, e.to_string()))?;
                Ok(DeclKind::Group { rows: g.rows() })
            }
            other => Err(Diagnostic::error(how.pos, format!("expected `order` or `builtin`, found `{other}`"))),
        }
    }

    fn hom(&mut self, index: usize, at: Position) -> Parsed<DeclKind> {
        let mut h = self.header(index);
        h.expect(":")?;
        let source = h.name("a source group")?;
        h.expect("->")?;
        let target = h.name("a target group")?;
        h.finish()?;
        let n = self.group_order(source)?;
        let m = self.group_order(target)?;
        let (source, target) = (source.text.clone(), target.text.clone());
        let mut rows = self.rows(1, n, m, "map row", at)?;
        Ok(DeclKind::Hom {
            source,
            target,
            map: rows.remove(0).0,
        })
    }

    fn action(&mut self, index: usize, at: Position) -> Parsed<DeclKind> {
        let mut h = self.header(index);
        h.expect(":")?;
        let group = h.name("an acting group")?;
        h.expect("on")?;
        let carrier = h.name("a carrier group")?;
        h.finish()?;
        let n = self.group_order(group)?;
        let m = self.group_order(carrier)?;
        let (group, carrier) = (group.text.clone(), carrier.text.clone());
        let rows = self.rows(n, m, m, "action rows", at)?;
        Ok(DeclKind::Action {
            group,
            carrier,
            rows: rows.into_iter().map(|(r, _)| r).collect(),
        })
    }

    fn xmod(&mut self, index: usize) -> Parsed<DeclKind> {
        let mut h = self.header(index);
        h.expect("=")?;
        h.expect("(")?;
        let c = h.name("a group")?;
        h.expect(",")?;
        let g = h.name("a group")?;
        h.expect(",")?;
        let d = h.name("a boundary hom")?;
        h.expect(",")?;
        let act = h.name("an action")?;
        h.expect(")")?;
        h.finish()?;
        self.group_order(c)?;
        self.group_order(g)?;
        self.hom_between(d, &c.text, &g.text)?;
        match self.lookup(act, "action")? {
            Symbol::Action { group, carrier } if *group == g.text && *carrier == c.text => {}
            Symbol::Action { group, carrier } => {
                return Err(Diagnostic::error(
                    act.pos,
                    format!("action `{}` is by {group} on {carrier}, expected by {} on {}", act.text, g.text, c.text),
                ))
            }
            _ => unreachable!("lookup checked the kind"),
        }
        Ok(DeclKind::Xmod {
            source: c.text.clone(),
            target: g.text.clone(),
            boundary: d.text.clone(),
            action: act.text.clone(),
        })
    }

    fn hom_between(&self, tok: &Token, from: &str, to: &str) -> Parsed<Vec<Elem>> {
        match self.lookup(tok, "hom")? {
            Symbol::Hom { source, target, map } if source == from && target == to => Ok(map.clone()),
            Symbol::Hom { source, target, .. } => Err(Diagnostic::error(
                tok.pos,
                format!("hom `{}` maps {source} -> {target}, expected {from} -> {to}", tok.text),
            )),
            _ => unreachable!("lookup checked the kind"),
        }
    }

    fn internalcat(&mut self, index: usize, at: Position) -> Parsed<DeclKind> {
        let mut h = self.header(index);
        h.expect("=")?;
        h.expect("(")?;
        let a = h.name("an arrow group")?.clone();
        h.expect(",")?;
        let o = h.name("an object group")?.clone();
        let named = |h: &mut Header<'_>, key: &str| -> Parsed<Token> {
            h.expect(",")?;
            h.expect(key)?;
            h.expect("=")?;
            Ok(h.name("a hom")?.clone())
        };
        let s = named(&mut h, "s")?;
        let t = named(&mut h, "t")?;
        let e = named(&mut h, "e")?;
        h.expect(")")?;
        h.finish()?;
        let arrows = self.group_order(&a)?;
        self.group_order(&o)?;
        let smap = self.hom_between(&s, &a.text, &o.text)?;
        let tmap = self.hom_between(&t, &a.text, &o.text)?;
        self.hom_between(&e, &o.text, &a.text)?;

        match self.lines.get(self.next) {
            Some(l) if l.tokens.len() == 1 && l.tokens[0].text == "comp" => self.next += 1,
            Some(l) if !l.starts_declaration() => {
                return Err(Diagnostic::error(l.start(), format!("expected `comp`, found `{}`", l.tokens[0].text)))
            }
            _ => return Err(Diagnostic::error(at, "expected a `comp` block after the internalcat header")),
        }
        let pairs = tmap
            .iter()
            .map(|&y| smap.iter().filter(|&&x| x == y).count())
            .sum();
        let rows = self.rows(pairs, 1, arrows, "composition rows (one per composable pair)", at)?;
        Ok(DeclKind::InternalCat {
            arrows: a.text,
            objects: o.text,
            s: s.text,
            t: t.text,
            e: e.text,
            comp: rows.into_iter().map(|(r, _)| r[0]).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err(text: &str) -> Vec<Diagnostic> {
        parse_spec(text).unwrap_err()
    }

    #[test]
    fn builtin_cyclic() {
        let doc = parse_spec("group C4 builtin cyclic 4\n").unwrap();
        let DeclKind::Group { rows } = &doc.decls[0].kind else { panic!() };
        assert_eq!(rows.len(), 4);
        assert_eq!(doc.decls[0].position, Position { line: 1, column: 1 });
    }

    #[test]
    fn short_row_reported_at_its_line() {
        let d = err("group G order 4\n0 1 2 3\n1 2 3\n2 3 0 1\n3 0 1 2\n");
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].message, "row length 3, expected 4");
        assert_eq!((d[0].line, d[0].column), (3, 1));
        let d = err("group Z1 order 1\n0\n0\n");
        assert_eq!(d[0].line, 3);
        assert!(d[0].message.contains("unexpected row"));
    }

    #[test]
    fn comments_and_separators() {
        let text = "# header\n group Z2 order 2 # trailing\n0 1\n\n1 0\nhom f:Z2->Z2\n0 1\n";
        let doc = parse_spec(text).unwrap();
        assert_eq!(doc.decls.len(), 2);
        assert_eq!(doc.decls[0].position, Position { line: 2, column: 2 });
        let DeclKind::Hom { source, map, .. } = &doc.decls[1].kind else { panic!() };
        assert_eq!(source, "Z2");
        assert_eq!(map, &vec![0, 1]);
    }

    #[test]
    fn identity_violations() {
        let d = err("group G order 2\n1 0\n0 1\n");
        assert_eq!((d[0].line, d[0].column), (2, 1));
        let d = err("group G order 2\n0 1\n0 1\n");
        assert_eq!((d[0].line, d[0].column), (3, 1));
        assert!(d[0].message.contains("identity"));
    }

    #[test]
    fn non_associative_table_parses() {
        // Identity row and column are fine; associativity is a check, not syntax.
        let rows = "0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0\n";
        assert!(parse_spec(&format!("group L order 5\n{rows}")).is_ok());
    }

    #[test]
    fn references() {
        let d = err("hom f : A -> B\n0\n");
        assert_eq!(d[0].message, "unknown group `A`");
        assert_eq!((d[0].line, d[0].column), (1, 9));
        let d = err("group A builtin cyclic 2\ngroup A builtin cyclic 3\n");
        assert!(d[0].message.starts_with("duplicate name"));
        let d = err("group A builtin cyclic 2\nhom f : A -> A\n0 1\nhom g : f -> A\n0 0\n");
        assert_eq!(d[0].message, "`f` is a hom, expected a group");
    }

    #[test]
    fn errors_do_not_cascade_into_unknown_names() {
        let d = err("group A order 2\n0 1\nhom f : A -> A\n0 1\n");
        assert_eq!(d.len(), 2);
        assert!(d[0].message.contains("only 1 present"));
        assert_eq!((d[0].line, d[0].column), (1, 1));
        assert!(d[1].message.contains("declaration with errors"));
    }

    #[test]
    fn order_cap_enforced() {
        let d = err("group G order 100000\n");
        assert!(d[0].message.contains("order cap"));
        assert_eq!(d[0].column, 15);
        assert!(err("group S builtin symmetric 9\n")[0].message.contains("unsupported"));
    }

    #[test]
    fn internalcat_block() {
        let text = "group Z2 builtin cyclic 2\nhom id : Z2 -> Z2\n0 1\n\
                    internalcat D = ( Z2, Z2, s=id, t=id, e=id )\ncomp\n0\n1\n";
        let doc = parse_spec(text).unwrap();
        let DeclKind::InternalCat { comp, .. } = &doc.decls[2].kind else { panic!() };
        assert_eq!(comp, &vec![0, 1]);
        let d = err("group Z2 builtin cyclic 2\nhom id : Z2 -> Z2\n0 1\n\
                     internalcat D = ( Z2, Z2, s=id, t=id, e=id )\n0\n1\n");
        assert_eq!(d[0].message, "expected `comp`, found `0`");
    }

    #[test]
    fn positions_point_into_the_input() {
        let text = "group G order 2\n0 1\n1 x\nxmod\ngroup\nhom h : G -> H\n";
        let lines: Vec<&str> = text.lines().collect();
        for d in err(text) {
            let line = lines[d.line - 1];
            assert!(d.column >= 1 && d.column <= line.chars().count() + 1, "{d}");
        }
    }
}
