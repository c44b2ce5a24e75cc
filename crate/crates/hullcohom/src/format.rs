//! The `.arr` arrangement file format.
//!
//! One directive per line; `#` starts a comment.
//!
//! ```text
//! name ammann_beenker
//! ambient 4
//! field sqrt 2
//! torus t1 basis [1 0 0 0; 0 1 0 -1] offset (0, 0, 0, 0)
//! face f1 n (0, 1/2*sqrt(2), 1, 1/2*sqrt(2)) k (...) anchor (0, 0, 0, 0)
//! merge f1 f2 along (...)
//! group generator [0 0 0 -1; 1 0 0 0; 0 1 0 0; 0 0 1 0] shift (0, 0, 0, 0)
//! class C8 word g1
//! irrep E1 (2, 1*sqrt(2), ...)
//! ```
//!
//! Rationals are `p/q`, never decimals. Field elements are `a+b*sqrt(D)`.
//! `face` adds the codimension-two torus of a face; `merge a b along n`
//! knits `b` into `a` and fails if the pair does not knit. Generators are
//! named `g1, g2, ...` in order of appearance; `word e` is the identity.

use std::fmt::{self, Write as _};

use hullcohom_core::algebra::{BigInt, IntMatrix, QuadScalar, Rational};
use hullcohom_core::equivariant::{AffineMap, CharacterTable, ClassSpec, FiniteMatrixGroup, Irrep};
use hullcohom_core::torus::{knit, subtorus_from_face, AffineSubtorus, Arrangement, FaceSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Symmetry data attached to an arrangement.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupSpec {
    pub generators: Vec<AffineMap>,
    pub table: CharacterTable,
}

impl GroupSpec {
    pub fn generate(&self) -> hullcohom_core::Result<FiniteMatrixGroup> {
        FiniteMatrixGroup::generate(self.generators.clone())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ArrangementFile {
    pub name: String,
    pub ambient_dim: usize,
    pub field: Option<u64>,
    pub tori: Vec<(String, AffineSubtorus)>,
    pub group: Option<GroupSpec>,
}

impl ArrangementFile {
    pub fn arrangement(&self) -> hullcohom_core::Result<Arrangement> {
        Arrangement::new(self.name.clone(), self.ambient_dim, self.tori.iter().map(|(_, t)| t.clone()).collect())
    }

    pub fn torus(&self, name: &str) -> Option<&AffineSubtorus> {
        self.tori.iter().find(|(n, _)| n == name).map(|(_, t)| t)
    }
}

struct Parser {
    line: usize,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn err<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(ParseError { line: self.line, message: message.into() })
    }

    fn rational(&self, s: &str) -> PResult<Rational> {
        if s.contains('.') || s.contains('e') {
            return self.err(format!("'{s}': rationals are written p/q"));
        }
        match s.parse::<Rational>() {
            Ok(r) => Ok(r),
            Err(_) => self.err(format!("'{s}' is not a rational number")),
        }
    }

    fn integer(&self, s: &str) -> PResult<BigInt> {
        s.parse().or_else(|_| self.err(format!("'{s}' is not an integer")))
    }

    fn quad(&self, s: &str, field: Option<u64>) -> PResult<QuadScalar> {
        let Some(at) = s.find("sqrt(") else {
            return Ok(QuadScalar::rational(self.rational(s)?));
        };
        let Some(close) = s[at..].find(')') else { return self.err(format!("'{s}': unclosed sqrt(")) };
        if at + close + 1 != s.len() {
            return self.err(format!("'{s}': sqrt(D) must end the scalar"));
        }
        let d: u64 = s[at + 5..at + close].parse().or_else(|_| self.err(format!("'{s}': bad discriminant")))?;
        match field {
            Some(f) if f == d => {}
            Some(f) => return self.err(format!("sqrt({d}) used in a file declaring field sqrt {f}")),
            None => return self.err(format!("sqrt({d}) used without a 'field sqrt {d}' line")),
        }
        let head = &s[..at];
        let head = head.strip_suffix('*').unwrap_or(head);
        let split = head.char_indices().skip(1).filter(|&(_, c)| c == '+' || c == '-').map(|(i, _)| i).last();
        let (a, b) = match split {
            Some(i) => (self.rational(&head[..i])?, &head[i..]),
            None => (Rational::from_integer(0.into()), head),
        };
        let b = match b {
            "" | "+" => Rational::from_integer(1.into()),
            "-" => Rational::from_integer((-1).into()),
            b => self.rational(b.strip_prefix('+').unwrap_or(b))?,
        };
        Ok(QuadScalar::new(a, b, d))
    }

    /// Contents of a bracketed group starting at the front of `s`, and the rest.
    fn bracket<'a>(&self, s: &'a str, open: char, close: char) -> PResult<(&'a str, &'a str)> {
        let s = s.trim_start();
        let Some(body) = s.strip_prefix(open) else { return self.err(format!("expected '{open}'")) };
        let mut depth = 0usize;
        for (i, c) in body.char_indices() {
            if c == open {
                depth += 1;
            } else if c == close {
                if depth == 0 {
                    return Ok((&body[..i], &body[i + 1..]));
                }
                depth -= 1;
            }
        }
        self.err(format!("missing '{close}'"))
    }

    fn items<'a>(&self, s: &'a str) -> Vec<&'a str> {
        s.split(|c: char| c == ',' || c.is_whitespace()).filter(|x| !x.is_empty()).collect()
    }

    fn int_rows(&self, body: &str, n: usize) -> PResult<Vec<Vec<BigInt>>> {
        let mut rows = Vec::new();
        for r in body.split(';') {
            let items = self.items(r);
            if items.is_empty() {
                continue;
            }
            if items.len() != n {
                return self.err(format!("row has {} entries, ambient dimension is {n}", items.len()));
            }
            rows.push(items.iter().map(|x| self.integer(x)).collect::<PResult<_>>()?);
        }
        Ok(rows)
    }

    fn rationals(&self, body: &str, n: usize) -> PResult<Vec<Rational>> {
        let items = self.items(body);
        if items.len() != n {
            return self.err(format!("vector has {} entries, ambient dimension is {n}", items.len()));
        }
        items.iter().map(|x| self.rational(x)).collect()
    }

    fn quads(&self, body: &str, n: Option<usize>, field: Option<u64>) -> PResult<Vec<QuadScalar>> {
        let items = self.items(body);
        if let Some(n) = n {
            if items.len() != n {
                return self.err(format!("vector has {} entries, expected {n}", items.len()));
            }
        }
        items.iter().map(|x| self.quad(x, field)).collect()
    }

    fn keyword<'a>(&self, s: &'a str, kw: &str) -> PResult<&'a str> {
        let s = s.trim_start();
        match s.strip_prefix(kw) {
            Some(rest) if rest.is_empty() || rest.starts_with(char::is_whitespace) || rest.starts_with(['(', '[']) => {
                Ok(rest)
            }
            _ => self.err(format!("expected '{kw}'")),
        }
    }
}

fn split_word(s: &str) -> (&str, &str) {
    let s = s.trim_start();
    match s.find(char::is_whitespace) {
        Some(i) => (&s[..i], &s[i..]),
        None => (s, ""),
    }
}

pub fn parse(text: &str) -> Result<ArrangementFile, ParseError> {
    let mut p = Parser { line: 0 };
    let mut name = None;
    let mut ambient: Option<usize> = None;
    let mut field = None;
    let mut tori: Vec<(String, AffineSubtorus)> = Vec::new();
    let mut generators = Vec::new();
    let mut classes = Vec::new();
    let mut irreps = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        p.line = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (head, rest) = split_word(line);
        let need_n = |p: &Parser| -> PResult<usize> {
            match ambient {
                Some(n) => Ok(n),
                None => p.err("'ambient N' must come first"),
            }
        };
        match head {
            "name" => {
                let v = rest.trim();
                if v.is_empty() {
                    return p.err("empty name");
                }
                name = Some(v.to_string());
            }
            "ambient" => {
                if ambient.is_some() {
                    return p.err("ambient dimension given twice");
                }
                let n: usize = rest.trim().parse().or_else(|_| p.err("ambient expects a positive integer"))?;
                if n == 0 {
                    return p.err("ambient dimension must be positive");
                }
                ambient = Some(n);
            }
            "field" => {
                let r = p.keyword(rest, "sqrt")?;
                let d: u64 = r.trim().parse().or_else(|_| p.err("field expects 'sqrt D'"))?;
                if d < 2 {
                    return p.err("field sqrt D needs D >= 2");
                }
                field = Some(d);
            }
            "torus" => {
                let n = need_n(&p)?;
                let (tname, r) = split_word(rest);
                let r = p.keyword(r, "basis")?;
                let (body, r) = p.bracket(r, '[', ']')?;
                let rows = p.int_rows(body, n)?;
                let r = p.keyword(r, "offset")?;
                let (off, r) = p.bracket(r, '(', ')')?;
                if !r.trim().is_empty() {
                    return p.err(format!("unexpected '{}'", r.trim()));
                }
                let off = p.rationals(off, n)?;
                let t = AffineSubtorus::new(&IntMatrix::from_rows(n, &rows), &off)
                    .or_else(|e| p.err(e.to_string()))?;
                push_torus(&p, &mut tori, tname, t)?;
            }
            "face" => {
                let n = need_n(&p)?;
                let (tname, r) = split_word(rest);
                let r = p.keyword(r, "n")?;
                let (nv, r) = p.bracket(r, '(', ')')?;
                let r = p.keyword(r, "k")?;
                let (kv, r) = p.bracket(r, '(', ')')?;
                let r = p.keyword(r, "anchor")?;
                let (av, r) = p.bracket(r, '(', ')')?;
                if !r.trim().is_empty() {
                    return p.err(format!("unexpected '{}'", r.trim()));
                }
                let face = FaceSpec {
                    n: p.quads(nv, Some(n), field)?,
                    k: p.quads(kv, Some(n), field)?,
                    anchor: p.rationals(av, n)?,
                };
                let t = subtorus_from_face(&face, n).or_else(|e| p.err(e.to_string()))?;
                push_torus(&p, &mut tori, tname, t)?;
            }
            "merge" => {
                let n = need_n(&p)?;
                let (a, r) = split_word(rest);
                let (b, r) = split_word(r);
                let r = p.keyword(r, "along")?;
                let (nv, _) = p.bracket(r, '(', ')')?;
                let dir = p.quads(nv, Some(n), field)?;
                let ia = tori.iter().position(|(x, _)| x == a);
                let ib = tori.iter().position(|(x, _)| x == b);
                let (Some(ia), Some(ib)) = (ia, ib) else { return p.err(format!("merge of unknown tori {a}, {b}")) };
                match knit(&tori[ia].1, &tori[ib].1, &dir).or_else(|e| p.err(e.to_string()))? {
                    Some(t) => {
                        tori[ia].1 = t;
                        tori.remove(ib);
                    }
                    None => return p.err(format!("{a} and {b} do not knit along the given direction")),
                }
            }
            "group" => {
                let n = need_n(&p)?;
                let r = p.keyword(rest, "generator")?;
                let (body, r) = p.bracket(r, '[', ']')?;
                let rows = p.int_rows(body, n)?;
                if rows.len() != n {
                    return p.err(format!("generator needs {n} rows"));
                }
                let shift = if r.trim().is_empty() {
                    vec![Rational::from_integer(0.into()); n]
                } else {
                    let r = p.keyword(r, "shift")?;
                    let (sv, _) = p.bracket(r, '(', ')')?;
                    p.rationals(sv, n)?
                };
                let g = AffineMap::new(IntMatrix::from_rows(n, &rows), &shift).or_else(|e| p.err(e.to_string()))?;
                generators.push(g);
            }
            "class" => {
                let (cname, r) = split_word(rest);
                let r = p.keyword(r, "word")?;
                let mut word = Vec::new();
                for w in p.items(r) {
                    if w == "e" {
                        continue;
                    }
                    let k: usize = w
                        .strip_prefix('g')
                        .and_then(|x| x.parse().ok())
                        .filter(|&k| k >= 1)
                        .map_or_else(|| p.err(format!("'{w}' is not a generator name g1, g2, ...")), Ok)?;
                    word.push(k - 1);
                }
                classes.push(ClassSpec { name: cname.to_string(), word });
            }
            "irrep" => {
                let (iname, r) = split_word(rest);
                let (body, _) = p.bracket(r, '(', ')')?;
                irreps.push(Irrep { name: iname.to_string(), values: p.quads(body, None, field)? });
            }
            other => return p.err(format!("unknown directive '{other}'")),
        }
    }
    p.line = text.lines().count().max(1);
    let Some(ambient_dim) = ambient else { return p.err("missing 'ambient N'") };
    let group = if generators.is_empty() {
        if !classes.is_empty() || !irreps.is_empty() {
            return p.err("character table without group generators");
        }
        None
    } else {
        if let Some(ir) = irreps.iter().find(|ir| ir.values.len() != classes.len()) {
            return p.err(format!("irrep {} has {} values for {} classes", ir.name, ir.values.len(), classes.len()));
        }
        Some(GroupSpec { generators, table: CharacterTable { classes, irreps } })
    };
    Ok(ArrangementFile { name: name.unwrap_or_else(|| "unnamed".to_string()), ambient_dim, field, tori, group })
}

fn push_torus(p: &Parser, tori: &mut Vec<(String, AffineSubtorus)>, name: &str, t: AffineSubtorus) -> PResult<()> {
    if name.is_empty() {
        return p.err("torus needs a name");
    }
    if tori.iter().any(|(n, _)| n == name) {
        return p.err(format!("torus name {name} used twice"));
    }
    tori.push((name.to_string(), t));
    Ok(())
}

fn join<T: fmt::Display>(v: &[T], sep: &str) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

/// Serializes in canonical form; faces and merges are already resolved.
pub fn write(file: &ArrangementFile) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "name {}", file.name);
    let _ = writeln!(out, "ambient {}", file.ambient_dim);
    if let Some(d) = file.field {
        let _ = writeln!(out, "field sqrt {d}");
    }
    for (name, t) in &file.tori {
        let rows: Vec<String> = t.direction().basis().row_iter().map(|r| join(r, " ")).collect();
        let _ = writeln!(out, "torus {name} basis [{}] offset ({})", rows.join("; "), join(t.offset(), ", "));
    }
    if let Some(g) = &file.group {
        for m in &g.generators {
            let rows: Vec<String> = m.m.row_iter().map(|r| join(r, " ")).collect();
            let _ = writeln!(out, "group generator [{}] shift ({})", rows.join("; "), join(&m.t, ", "));
        }
        for c in &g.table.classes {
            let word: Vec<String> = c.word.iter().map(|k| format!("g{}", k + 1)).collect();
            let word = if word.is_empty() { "e".to_string() } else { word.join(" ") };
            let _ = writeln!(out, "class {} word {word}", c.name);
        }
        for ir in &g.table.irreps {
            let _ = writeln!(out, "irrep {} ({})", ir.name, join(&ir.values, ", "));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use hullcohom_core::algebra::ratio;

    const SMALL: &str = "
        # two circles in the plane torus
        name pair
        ambient 2
        torus a basis [1 0] offset (0, 1/2)
        torus b basis [0, 1] offset (1/3 0)
    ";

    #[test]
    fn parses_small_file() {
        let f = parse(SMALL).unwrap();
        assert_eq!(f.name, "pair");
        assert_eq!(f.tori.len(), 2);
        assert_eq!(f.torus("b").unwrap().offset(), &[ratio(1, 3), ratio(0, 1)]);
        assert_eq!(parse(&write(&f)).unwrap(), f);
    }

    #[test]
    fn errors_carry_lines() {
        let e = parse("ambient 2\ntorus a basis [1 0 0] offset (0, 0)").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse("ambient 2\n\ntorus a basis [1 0] offset (0.5, 0)").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("p/q"));
        assert_eq!(parse("torus a basis [1] offset (0)").unwrap_err().line, 1);
        assert_eq!(parse("ambient 1\nfoo").unwrap_err().line, 2);
        assert!(parse("").is_err());
    }

    #[test]
    fn quadratic_scalars() {
        let p = Parser { line: 1 };
        let f = Some(5);
        let half = ratio(1, 2);
        assert_eq!(p.quad("1/2+1/2*sqrt(5)", f).unwrap(), QuadScalar::new(half.clone(), half.clone(), 5));
        assert_eq!(p.quad("1/2-1/2*sqrt(5)", f).unwrap(), QuadScalar::new(half.clone(), -half.clone(), 5));
        assert_eq!(p.quad("-sqrt(5)", f).unwrap(), QuadScalar::new(ratio(0, 1), ratio(-1, 1), 5));
        assert_eq!(p.quad("sqrt(5)", f).unwrap(), QuadScalar::sqrt(5));
        assert_eq!(p.quad("-3/4", f).unwrap(), QuadScalar::rational(ratio(-3, 4)));
        assert_eq!(p.quad("-1-2*sqrt(5)", f).unwrap(), QuadScalar::new(ratio(-1, 1), ratio(-2, 1), 5));
        assert!(p.quad("sqrt(2)", f).is_err());
        assert!(p.quad("sqrt(5)", None).is_err());
        for s in ["1/2+1/2*sqrt(5)", "-7-1/3*sqrt(5)", "2/3"] {
            let x = p.quad(s, f).unwrap();
            assert_eq!(p.quad(&x.to_string(), f).unwrap(), x);
        }
    }

    #[test]
    fn faces_and_merges() {
        let head = "
            ambient 4
            field sqrt 2
            face f0 n (0, 1/2*sqrt(2), 1, 1/2*sqrt(2)) k (0, 1/2*sqrt(2), -1, 1/2*sqrt(2)) anchor (0, 0, 0, 0)
            face f4 n (0, -1/2*sqrt(2), -1, -1/2*sqrt(2)) k (0, -1/2*sqrt(2), 1, -1/2*sqrt(2)) anchor (1, 1/2, 0, -1/2)
        ";
        let both = parse(head).unwrap();
        assert_eq!(both.torus("f0"), both.torus("f4"));
        assert!(both.arrangement().is_err());
        let merged = parse(&format!("{head}\nmerge f0 f4 along (0, 1/2*sqrt(2), 1, 1/2*sqrt(2))")).unwrap();
        assert_eq!(merged.tori.len(), 1);
        assert_eq!(merged.torus("f0").unwrap().offset(), &[ratio(0, 1), ratio(0, 1), ratio(0, 1), ratio(0, 1)]);
        let shifted = format!(
            "{head}\ntorus s basis [1 0 0 0; 0 1 0 -1] offset (0, 0, 1/2, 0)\nmerge f0 s along (0, 1/2*sqrt(2), 1, 1/2*sqrt(2))"
        );
        let e = parse(&shifted).unwrap_err();
        assert_eq!(e.line, 8);
        assert!(e.message.contains("do not knit"));
    }
}
