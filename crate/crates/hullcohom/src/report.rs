//! Reports as sections of labelled values and grids, rendered either as
//! aligned text or as line-oriented `key = value` blocks.

use std::fmt::Write as _;

use hullcohom_core::equivariant::IrrepDecomposition;

use crate::analysis::{betti_vector, Analysis, Counted, Geometric, Mismatch};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Value { key: String, label: String, values: Vec<String> },
    Grid { key: String, label: String, columns: Vec<String>, rows: Vec<(String, Vec<String>)> },
    Line(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub name: String,
    pub title: String,
    pub items: Vec<Item>,
}

impl Section {
    pub fn new(name: &str, title: impl Into<String>) -> Self {
        Section { name: name.into(), title: title.into(), items: Vec::new() }
    }

    pub fn value(&mut self, key: &str, label: impl Into<String>, values: Vec<String>) -> &mut Self {
        self.items.push(Item::Value { key: key.into(), label: label.into(), values });
        self
    }

    pub fn one(&mut self, key: &str, label: impl Into<String>, value: impl ToString) -> &mut Self {
        self.value(key, label, vec![value.to_string()])
    }

    pub fn grid(
        &mut self,
        key: &str,
        label: impl Into<String>,
        columns: Vec<String>,
        rows: Vec<(String, Vec<String>)>,
    ) -> &mut Self {
        self.items.push(Item::Grid { key: key.into(), label: label.into(), columns, rows });
        self
    }

    pub fn line(&mut self, s: impl Into<String>) -> &mut Self {
        self.items.push(Item::Line(s.into()));
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub sections: Vec<Section>,
}

fn table(columns: &[String], rows: &[(String, Vec<String>)], out: &mut String) {
    let mut width = vec![rows.iter().map(|r| r.0.len()).max().unwrap_or(0)];
    for (j, c) in columns.iter().enumerate() {
        width.push(rows.iter().map(|r| r.1.get(j).map_or(0, String::len)).max().unwrap_or(0).max(c.len()));
    }
    let mut line = format!("  {:w$}", "", w = width[0]);
    for (j, c) in columns.iter().enumerate() {
        let _ = write!(line, "  {:>w$}", c, w = width[j + 1]);
    }
    let _ = writeln!(out, "{}", line.trim_end());
    for (label, cells) in rows {
        let mut line = format!("  {:w$}", label, w = width[0]);
        for (j, c) in cells.iter().enumerate() {
            let _ = write!(line, "  {:>w$}", c, w = width[j + 1]);
        }
        let _ = writeln!(out, "{}", line.trim_end());
    }
}

impl Report {
    pub fn text(&self) -> String {
        let mut out = String::new();
        for (i, s) in self.sections.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            let _ = writeln!(out, "{}", s.title);
            let _ = writeln!(out, "{}", "-".repeat(s.title.chars().count()));
            for item in &s.items {
                match item {
                    Item::Value { label, values, .. } => {
                        let _ = writeln!(out, "{label} = {}", values.join(", "));
                    }
                    Item::Grid { label, columns, rows, .. } => {
                        let _ = writeln!(out, "{label}:");
                        table(columns, rows, &mut out);
                    }
                    Item::Line(s) => {
                        let _ = writeln!(out, "{s}");
                    }
                }
            }
        }
        out
    }

    pub fn structured(&self) -> String {
        let mut out = String::new();
        for s in &self.sections {
            let _ = writeln!(out, "[{}]", s.name);
            let mut notes = 0;
            for item in &s.items {
                match item {
                    Item::Value { key, values, .. } => {
                        let _ = writeln!(out, "{key} = {}", values.join(" "));
                    }
                    Item::Grid { key, columns, rows, .. } => {
                        let _ = writeln!(out, "{key}.columns = {}", columns.join(" "));
                        for (label, cells) in rows {
                            let _ = writeln!(out, "{key}.{label} = {}", cells.join(" "));
                        }
                    }
                    Item::Line(l) => {
                        let _ = writeln!(out, "note.{notes} = {l}");
                        notes += 1;
                    }
                }
            }
        }
        out
    }
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn n_k_string(n_k: &[(usize, usize)]) -> Vec<String> {
    n_k.iter().map(|(k, n)| format!("n{k}={n}")).collect()
}

fn torus_label(n: usize) -> String {
    format!("b(T^{n}\\A)")
}

pub fn betti_section(name: &str, analysis: &Analysis) -> Section {
    let mut s = Section::new("betti", format!("Betti numbers: {name}"));
    s.one("entry", "entry", name);
    match analysis {
        Analysis::Counted(c) => counted_betti(&mut s, c),
        Analysis::Geometric(g) => {
            let n = g.arrangement.ambient_dim();
            s.one("ambient", "N", n);
            s.one("tori", "m", g.arrangement.len());
            s.one("components", "p", g.poset.components());
            let nk: Vec<_> = g.poset.point_multiplicities().into_iter().collect();
            s.value("n_k", "n_k", n_k_string(&nk));
            s.value("betti_a", "b(A)", strings(&betti_vector(&g.betti)));
            s.one("collapse", "collapse", g.betti.certificate.as_str());
            s.value("alpha", "rank alpha^n", strings(&g.complement.alpha));
            s.value("c", "c", strings(&g.complement.c));
            if let Some(c2) = g.complement.c.get(2) {
                s.one("c2", "c2", c2);
            }
            s.value("betti_complement", torus_label(n), strings(&g.complement.betti_complement));
            for note in &g.complement.notes {
                s.line(note.clone());
            }
        }
    }
    s
}

fn counted_betti(s: &mut Section, c: &Counted) {
    let n = c.params.ambient_dim;
    s.one("ambient", "N", n);
    s.one("tori", "m", c.params.m);
    s.one("components", "p", c.params.p);
    let nk: Vec<_> = c.params.n_k.iter().map(|(a, b)| (*a, *b)).collect();
    s.value("n_k", "n_k", n_k_string(&nk));
    s.value("betti_a", "b(A)", strings(&c.betti_a));
    s.value("c", "c", strings(&c.params.c));
    s.one("c2", "c2", c.params.c[2]);
    s.value("betti_complement", torus_label(n), strings(&c.betti_complement));
    s.line("computed from the counts m, p, n_k and c; no torus data");
}

pub fn poset_section(name: &str, analysis: &Analysis) -> Section {
    let mut s = Section::new("poset", format!("Intersection poset: {name}"));
    match analysis {
        Analysis::Counted(c) => {
            s.one("tori", "m", c.params.m);
            s.one("components", "p", c.params.p);
            let nk: Vec<_> = c.params.n_k.iter().map(|(a, b)| (*a, *b)).collect();
            s.value("n_k", "n_k", n_k_string(&nk));
        }
        Analysis::Geometric(g) => {
            let census: Vec<String> = g.poset.census().iter().map(|(d, n)| format!("dim{d}:{n}")).collect();
            s.value("census", "census", census);
            s.one("components", "components", g.poset.components());
            s.one("height", "height", g.poset.height());
            let nk: Vec<_> = g.poset.point_multiplicities().into_iter().collect();
            s.value("n_k", "n_k", n_k_string(&nk));
            let mut rows = Vec::new();
            for e in g.poset.elements() {
                let basis: Vec<String> = e.torus.direction().basis().row_iter().map(|r| strings(r).join(" ")).collect();
                rows.push((
                    format!("x{}", e.id),
                    vec![
                        e.torus.dim().to_string(),
                        format!("[{}]", basis.join(";")),
                        format!("({})", strings(e.torus.offset()).join(",")),
                        format!("{{{}}}", strings(&e.parents).join(",")),
                    ],
                ));
            }
            s.grid("element", "elements", strings(&["dim", "basis", "offset", "parents"]), rows);
        }
    }
    s
}

fn grid_rows(cells: &std::collections::BTreeMap<(usize, usize), usize>, cols: usize, max_q: usize) -> Vec<(String, Vec<String>)> {
    (0..=max_q)
        .rev()
        .map(|q| (format!("q{q}"), (0..cols).map(|p| cells.get(&(p, q)).copied().unwrap_or(0).to_string()).collect()))
        .collect()
}

pub fn spectral_section(name: &str, analysis: &Analysis) -> Section {
    let mut s = Section::new("spectral", format!("Spectral sequence: {name}"));
    match analysis {
        Analysis::Counted(c) => {
            let e1 = c.e1();
            s.grid("e1", "E1", vec!["p0".into(), "p1".into()], grid_rows(&e1, 2, 2));
            s.value("betti_a", "b(A)", strings(&c.betti_a));
        }
        Analysis::Geometric(g) => {
            let cols = g.page.columns();
            let max_q = g.page.max_q();
            let mut e1 = std::collections::BTreeMap::new();
            let mut ranks = std::collections::BTreeMap::new();
            for p in 0..cols {
                for q in 0..=max_q {
                    e1.insert((p, q), g.page.dim(p, q));
                    if p > 0 {
                        ranks.insert((p, q), g.d1.rank(p, q));
                    }
                }
            }
            let pcols: Vec<String> = (0..cols).map(|p| format!("p{p}")).collect();
            s.grid("e1", "E1", pcols.clone(), grid_rows(&e1, cols, max_q));
            s.grid("d1_rank", "rank d1 out of E1[p,q]", pcols.clone(), grid_rows(&ranks, cols, max_q));
            s.grid("e2", "E2", pcols, grid_rows(&g.betti.e2, cols, max_q));
            let torsion: Vec<String> = g
                .d1
                .torsion()
                .iter()
                .filter(|(_, t)| !t.is_empty())
                .map(|((p, q), t)| format!("({p},{q}):{}", strings(t).join("x")))
                .collect();
            if !torsion.is_empty() {
                s.value("torsion", "torsion of d1 cokernels", torsion);
            }
            s.one("collapse", "collapse", g.betti.certificate.as_str());
            s.value("betti_a", "b(A)", strings(&betti_vector(&g.betti)));
            s.one("euler", "chi(A)", g.page.euler_characteristic());
        }
    }
    s
}

fn decomposition_rows(
    names: &[&str],
    entries: &[(String, Option<&IrrepDecomposition>, usize)],
) -> (Vec<String>, Vec<(String, Vec<String>)>) {
    let mut columns = vec!["dim".to_string()];
    columns.extend(names.iter().map(|s| s.to_string()));
    let rows = entries
        .iter()
        .map(|(label, d, dim)| {
            let mut cells = vec![match d {
                Some(_) => dim.to_string(),
                None => "?".into(),
            }];
            cells.extend((0..names.len()).map(|i| d.map_or("?".into(), |d| d.mult[i].to_string())));
            (label.clone(), cells)
        })
        .collect();
    (columns, rows)
}

/// Irrep tables for `E^2`, the five-term sequence and the complement.
pub fn equivariant_sections(name: &str, g: &Geometric) -> Vec<Section> {
    let Some(eq) = &g.equivariant else { return Vec::new() };
    let r = &eq.report;
    let t = &r.table;
    let names = t.names();
    let mut head = Section::new("group", format!("Symmetry group: {name}"));
    head.one("order", "order", eq.group.order());
    head.one("classes", "classes", t.class_count());
    head.value("irreps", "irreps", names.iter().map(|s| s.to_string()).collect());
    let mut by_dim: std::collections::BTreeMap<usize, Vec<usize>> = std::collections::BTreeMap::new();
    for o in &r.orbits {
        by_dim.entry(g.poset.element(o[0]).torus.dim()).or_default().push(o.len());
    }
    for (d, mut v) in by_dim.into_iter().rev() {
        v.sort_unstable_by(|a, b| b.cmp(a));
        head.value(&format!("orbits.dim{d}"), format!("orbits of {d}-tori"), strings(&v));
    }
    head.one("d2_vanishes", "d2 = 0 (support test)", r.d2_vanishes);

    let mut e2 = Section::new("e2_irreps", format!("E2 irrep multiplicities: {name}"));
    let entries: Vec<_> = r.e2.iter().rev().map(|((p, q), d)| (format!("E2[{p},{q}]"), Some(d), d.dim(t))).collect();
    let (cols, rows) = decomposition_rows(&names, &entries);
    e2.grid("e2", "E2", cols, rows);

    let mut seq = Section::new("sequence_irreps", format!("Five-term sequence irreps: {name}"));
    let mut entries = Vec::new();
    for (n, b) in r.im_beta.iter().enumerate() {
        if b.as_ref().is_some_and(|b| b.is_empty()) {
            continue;
        }
        entries.push((format!("Im(beta^{n})"), b.as_ref(), b.as_ref().map_or(0, |b| b.dim(t))));
    }
    for (n, h) in r.torus_cohomology.iter().enumerate() {
        entries.push((format!("H^{n}(T)"), Some(h), h.dim(t)));
    }
    let (cols, rows) = decomposition_rows(&names, &entries);
    seq.grid("sequence", "modules", cols, rows);
    let alpha: Vec<String> =
        r.alpha.iter().map(|a| if a.is_exact() { a.lower.render(t) } else { format!("{} .. {}", a.lower.render(t), a.upper.render(t)) }).collect();
    seq.value("alpha", "Im(alpha^n)", alpha);

    let mut comp = Section::new("complement_irreps", format!("Cohomology of the complement: {name}"));
    let entries: Vec<_> = r
        .complement
        .iter()
        .enumerate()
        .filter(|(_, h)| h.as_ref().is_none_or(|h| !h.is_empty()))
        .map(|(k, h)| (format!("H^{k}(T\\A)"), h.as_ref(), h.as_ref().map_or(0, |h| h.dim(t))))
        .collect();
    let (cols, rows) = decomposition_rows(&names, &entries);
    comp.grid("complement", "H^k(T\\A)", cols, rows);
    vec![head, e2, seq, comp]
}

pub fn verify_section(name: &str, mismatches: &[Mismatch]) -> Section {
    let mut s = Section::new("verify", format!("Verify: {name}"));
    s.one("entry", "entry", name);
    s.one("status", "status", if mismatches.is_empty() { "ok" } else { "mismatch" });
    for m in mismatches {
        s.line(format!("- {}: expected {}", m.key, m.expected));
        s.line(format!("+ {}: found    {}", m.key, m.found));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_both_formats() {
        let mut s = Section::new("demo", "Demo");
        s.one("x", "x value", 3).value("v", "v", vec!["1".into(), "2".into()]);
        s.grid("g", "grid", vec!["p0".into(), "p1".into()], vec![("q0".into(), vec!["10".into(), "2".into()])]);
        s.line("free text");
        let r = Report { sections: vec![s] };
        assert_eq!(r.structured(), "[demo]\nx = 3\nv = 1 2\ng.columns = p0 p1\ng.q0 = 10 2\nnote.0 = free text\n");
        let text = r.text();
        assert!(text.contains("x value = 3"));
        assert!(text.contains("v = 1, 2"));
        assert!(text.contains("  q0  10   2"));
    }
}
