//! Chart documents for spectral sequence pages, their SVG and ASCII renderings,
//! and semantic comparison against golden JSON.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hfpss::{self, BigradedPage, CellKind, Group, PageCell, PicardParams, Rule, Setup, Window};

/// ASCII grids wider or taller than this fall back to a cell listing.
pub const ASCII_MAX_COLUMNS: i64 = 160;
pub const ASCII_MAX_ROWS: i64 = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Indexing {
    /// `x = t − s`, `y = s`; `d_r` has slope `(−1, r)`.
    Adams,
    /// `x = s`, `y = t`; `d_r` has slope `(r, r − 1)`.
    Cohomological,
    /// `x = j`, `y = s` for a filtration spectral sequence; `d_r` has slope `(r, 1)`.
    Filtration,
}

impl Indexing {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "adams" => Ok(Indexing::Adams),
            "cohomological" | "st" => Ok(Indexing::Cohomological),
            "filtration" => Ok(Indexing::Filtration),
            other => Err(Error::InvalidInput(format!("indexing {other:?}"))),
        }
    }
    /// Chart coordinates of a page position `(s, t)`.
    pub fn place(self, s: i64, t: i64) -> (i64, i64) {
        match self {
            Indexing::Adams => (t - s, s),
            Indexing::Cohomological => (s, t),
            Indexing::Filtration => (t, s),
        }
    }
    pub fn slope(self, r: usize) -> (i64, i64) {
        let r = r as i64;
        match self {
            Indexing::Adams => (-1, r),
            Indexing::Cohomological => (r, r - 1),
            Indexing::Filtration => (r, 1),
        }
    }
    fn labels(self) -> (&'static str, &'static str) {
        match self {
            Indexing::Adams => ("t-s", "s"),
            Indexing::Cohomological => ("s", "t"),
            Indexing::Filtration => ("j", "s"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Glyph {
    /// `Z/p`.
    Dot,
    /// A line over `F_{p^n}`, `n > 1`.
    CircledDot,
    /// `Z/4`, or a Witt-vector lattice on the zero line.
    Square,
    /// `Z/2`.
    Cross,
}

impl Glyph {
    pub fn ascii(self) -> char {
        match self {
            Glyph::Dot => '.',
            Glyph::CircledDot => 'o',
            Glyph::Square => '#',
            Glyph::Cross => 'x',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartCell {
    pub x: i64,
    pub y: i64,
    pub glyphs: Vec<Glyph>,
    pub multiplicity: usize,
    pub group: String,
    pub label: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArrowStyle {
    Solid,
    Highlight,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartArrow {
    pub from: (i64, i64),
    pub to: (i64, i64),
    pub page: usize,
    pub style: ArrowStyle,
    pub note: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartWindow {
    pub xmin: i64,
    pub xmax: i64,
    pub ymin: i64,
    pub ymax: i64,
}

impl ChartWindow {
    pub fn contains(&self, x: i64, y: i64) -> bool {
        (self.xmin..=self.xmax).contains(&x) && (self.ymin..=self.ymax).contains(&y)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegendEntry {
    pub glyph: Glyph,
    pub meaning: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartDocument {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub indexing: Indexing,
    pub window: ChartWindow,
    pub cells: Vec<ChartCell>,
    pub arrows: Vec<ChartArrow>,
    pub legend: Vec<LegendEntry>,
}

/// Glyphs for one cell: one per summand, largest first.
pub fn glyphs_for(cell: &PageCell, p: u64) -> Vec<Glyph> {
    match cell.kind {
        CellKind::Integral => vec![Glyph::Square],
        CellKind::FieldLine if cell.group.rank() > 1 => vec![Glyph::CircledDot],
        CellKind::FieldLine => vec![Glyph::Dot],
        CellKind::Group => {
            let mut g: Vec<Glyph> = cell
                .group
                .elementary_divisors()
                .into_iter()
                .map(|d| match d {
                    2 => Glyph::Cross,
                    d if d == p => Glyph::Dot,
                    _ => Glyph::Square,
                })
                .collect();
            g.sort_by_key(|x| std::cmp::Reverse(*x as u8));
            g
        }
    }
}

fn legend_text(g: Glyph, field: &str, p: u64) -> String {
    match g {
        Glyph::Dot => format!("Z/{p}"),
        Glyph::CircledDot => format!("copy of {field}"),
        Glyph::Square => "Z/4, or a copy of the Witt vectors on the zero line".into(),
        Glyph::Cross => "Z/2".into(),
    }
}

fn arrow_style(rule: Rule) -> ArrowStyle {
    match rule {
        Rule::FirstUnstable => ArrowStyle::Highlight,
        Rule::Unknown => ArrowStyle::Unknown,
        _ => ArrowStyle::Solid,
    }
}

impl ChartDocument {
    /// Places a page on a chart; cells and arrows outside `window` are dropped.
    pub fn from_page(page: &BigradedPage, indexing: Indexing, title: &str, p: u64, window: ChartWindow) -> Self {
        let (x_label, y_label) = indexing.labels();
        let mut cells: Vec<ChartCell> = page
            .cells
            .iter()
            .filter_map(|c| {
                let (x, y) = indexing.place(c.s, c.t);
                let glyphs = glyphs_for(c, p);
                window.contains(x, y).then(|| ChartCell {
                    x,
                    y,
                    multiplicity: glyphs.len(),
                    glyphs,
                    group: c.group_name.clone(),
                    label: c.label.clone(),
                })
            })
            .collect();
        cells.sort_by_key(|c| (c.x, c.y));
        let mut arrows: Vec<ChartArrow> = page
            .differentials
            .iter()
            .filter_map(|d| {
                let from = indexing.place(d.from.0, d.from.1);
                let to = indexing.place(d.to.0, d.to.1);
                (window.contains(from.0, from.1) && window.contains(to.0, to.1)).then(|| ChartArrow {
                    from,
                    to,
                    page: d.r,
                    style: arrow_style(d.rule),
                    note: match &d.kernel {
                        Some(k) => format!("kernel {k}"),
                        None => d.note.clone(),
                    },
                })
            })
            .collect();
        arrows.sort_by_key(|a| (a.page, a.from, a.to));
        let field = page
            .cells
            .iter()
            .find(|c| c.kind == CellKind::FieldLine)
            .map(|c| c.group_name.clone())
            .unwrap_or_default();
        let used: BTreeSet<Glyph> = cells.iter().flat_map(|c| c.glyphs.iter().copied()).collect();
        let legend = used.into_iter().map(|glyph| LegendEntry { glyph, meaning: legend_text(glyph, &field, p) }).collect();
        ChartDocument {
            title: title.to_string(),
            x_label: x_label.into(),
            y_label: y_label.into(),
            indexing,
            window,
            cells,
            arrows,
            legend,
        }
    }

    /// Adds undetermined differentials as dashed arrows.
    pub fn with_unknown_arrows(mut self, arrows: impl IntoIterator<Item = (usize, (i64, i64), (i64, i64), String)>) -> Self {
        for (r, from, to, note) in arrows {
            let (from, to) = (self.indexing.place(from.0, from.1), self.indexing.place(to.0, to.1));
            if self.window.contains(from.0, from.1) && self.window.contains(to.0, to.1) {
                self.arrows.push(ChartArrow { from, to, page: r, style: ArrowStyle::Unknown, note });
            }
        }
        self.arrows.sort_by_key(|a| (a.page, a.from, a.to));
        self
    }

    /// Endpoints exist and every slope matches its page.
    pub fn validate(&self) -> Result<()> {
        let at: BTreeSet<(i64, i64)> = self.cells.iter().map(|c| (c.x, c.y)).collect();
        if at.len() != self.cells.len() {
            return Err(Error::Internal("two chart cells share a position".into()));
        }
        for a in &self.arrows {
            for e in [a.from, a.to] {
                if !at.contains(&e) {
                    return Err(Error::Internal(format!("arrow d_{} {:?} -> {:?} has no cell at {e:?}", a.page, a.from, a.to)));
                }
            }
            if (a.to.0 - a.from.0, a.to.1 - a.from.1) != self.indexing.slope(a.page) {
                return Err(Error::Internal(format!("arrow d_{} {:?} -> {:?} has the wrong slope", a.page, a.from, a.to)));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("chart serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("chart JSON: {e}")))
    }

    /// Fixed-width rendering; `y` grows upward. Oversized windows fall back to a listing.
    pub fn to_ascii(&self) -> String {
        let w = &self.window;
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.title);
        let cols = w.xmax - w.xmin + 1;
        let rows = w.ymax - w.ymin + 1;
        if cols > ASCII_MAX_COLUMNS || rows > ASCII_MAX_ROWS {
            let _ = writeln!(out, "warning: {cols}x{rows} grid exceeds {ASCII_MAX_COLUMNS}x{ASCII_MAX_ROWS}; listing cells");
            for c in &self.cells {
                let glyphs: String = c.glyphs.iter().map(|g| g.ascii()).collect();
                let _ = writeln!(out, "  ({}, {}) {} {} {}", c.x, c.y, glyphs, c.group, c.label);
            }
        } else {
            let mut grid: BTreeMap<(i64, i64), char> = BTreeMap::new();
            for c in &self.cells {
                let ch = match c.glyphs.as_slice() {
                    [g] => g.ascii(),
                    [] => ' ',
                    _ => '*',
                };
                grid.insert((c.x, c.y), ch);
            }
            for y in (w.ymin..=w.ymax).rev() {
                let _ = write!(out, "{y:>4} |");
                for x in w.xmin..=w.xmax {
                    out.push(*grid.get(&(x, y)).unwrap_or(&' '));
                }
                out.push('\n');
            }
            let _ = writeln!(out, "     +{}", "-".repeat(cols as usize));
            let _ = writeln!(out, "      {} from {} to {}; {} upward", self.x_label, w.xmin, w.xmax, self.y_label);
            for c in self.cells.iter().filter(|c| c.glyphs.len() > 1) {
                let glyphs: String = c.glyphs.iter().map(|g| g.ascii()).collect();
                let _ = writeln!(out, "  * at ({}, {}) = {glyphs} ({})", c.x, c.y, c.group);
            }
        }
        let _ = writeln!(out, "legend:");
        for l in &self.legend {
            let _ = writeln!(out, "  {} {}", l.glyph.ascii(), l.meaning);
        }
        if !self.arrows.is_empty() {
            let _ = writeln!(out, "differentials:");
            for a in &self.arrows {
                let style = match a.style {
                    ArrowStyle::Solid => "",
                    ArrowStyle::Highlight => " [highlight]",
                    ArrowStyle::Unknown => " [unknown]",
                };
                let _ = writeln!(out, "  d_{} ({}, {}) -> ({}, {}){style} {}", a.page, a.from.0, a.from.1, a.to.0, a.to.1, a.note);
            }
        }
        out
    }

    /// Self-contained SVG 1.1.
    pub fn to_svg(&self) -> String {
        const U: i64 = 24;
        const M: i64 = 40;
        let w = &self.window;
        let width = (w.xmax - w.xmin) * U + 2 * M;
        let height = (w.ymax - w.ymin) * U + 2 * M;
        let px = |x: i64| M + (x - w.xmin) * U;
        let py = |y: i64| height - M - (y - w.ymin) * U;
        let mut s = String::new();
        let _ = writeln!(s, r##"<?xml version="1.0" encoding="UTF-8"?>"##);
        let _ = writeln!(
            s,
            r##"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"##
        );
        let _ = writeln!(s, "<title>{}</title>", xml_escape(&self.title));
        let _ = writeln!(s, r##"<g stroke="#ddd" stroke-width="0.5">"##);
        for x in w.xmin..=w.xmax {
            let _ = writeln!(s, r##"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}"/>"##, px(x), py(w.ymin), py(w.ymax));
        }
        for y in w.ymin..=w.ymax {
            let _ = writeln!(s, r##"<line x1="{1}" y1="{0}" x2="{2}" y2="{0}"/>"##, py(y), px(w.xmin), px(w.xmax));
        }
        let _ = writeln!(s, "</g>");
        let _ = writeln!(s, r##"<g font-family="monospace" font-size="9" fill="#333">"##);
        for x in (w.xmin..=w.xmax).filter(|x| x.rem_euclid(2) == 0) {
            let _ = writeln!(s, r##"<text x="{}" y="{}" text-anchor="middle">{x}</text>"##, px(x), height - M + 14);
        }
        for y in (w.ymin..=w.ymax).filter(|y| y.rem_euclid(2) == 0) {
            let _ = writeln!(s, r##"<text x="{}" y="{}" text-anchor="end">{y}</text>"##, M - 8, py(y) + 3);
        }
        let _ = writeln!(s, r##"<text x="{}" y="{}">{}</text>"##, width - M, height - 8, xml_escape(&self.x_label));
        let _ = writeln!(s, r##"<text x="8" y="{}">{}</text>"##, M - 16, xml_escape(&self.y_label));
        let _ = writeln!(s, "</g>");
        for a in &self.arrows {
            let (stroke, dash) = match a.style {
                ArrowStyle::Solid => ("#000", ""),
                ArrowStyle::Highlight => ("#c00", ""),
                ArrowStyle::Unknown => ("#888", r##" stroke-dasharray="3,3""##),
            };
            let _ = writeln!(
                s,
                r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{stroke}" stroke-width="1"{dash}><title>d_{} {}</title></line>"##,
                px(a.from.0),
                py(a.from.1),
                px(a.to.0),
                py(a.to.1),
                a.page,
                xml_escape(&a.note)
            );
        }
        for c in &self.cells {
            let n = c.glyphs.len() as i64;
            for (i, g) in c.glyphs.iter().enumerate() {
                let cx = px(c.x) + (2 * i as i64 - (n - 1)) * 4;
                let cy = py(c.y);
                let shape = match g {
                    Glyph::Dot => format!(r##"<circle cx="{cx}" cy="{cy}" r="2.5" fill="#000"/>"##),
                    Glyph::CircledDot => format!(
                        r##"<circle cx="{cx}" cy="{cy}" r="5" fill="none" stroke="#000"/><circle cx="{cx}" cy="{cy}" r="2" fill="#000"/>"##
                    ),
                    Glyph::Square => format!(r##"<rect x="{}" y="{}" width="8" height="8" fill="none" stroke="#000"/>"##, cx - 4, cy - 4),
                    Glyph::Cross => format!(
                        r##"<path d="M{} {} L{} {} M{} {} L{} {}" stroke="#000"/>"##,
                        cx - 4,
                        cy - 4,
                        cx + 4,
                        cy + 4,
                        cx - 4,
                        cy + 4,
                        cx + 4,
                        cy - 4
                    ),
                };
                let _ = writeln!(s, "<g><title>{} {}</title>{shape}</g>", xml_escape(&c.group), xml_escape(&c.label));
            }
        }
        let _ = writeln!(s, r##"<g font-family="monospace" font-size="10">"##);
        for (i, l) in self.legend.iter().enumerate() {
            let _ = writeln!(s, r##"<text x="{}" y="{}">{} {}</text>"##, M, 14 + 12 * i as i64, l.glyph.ascii(), xml_escape(&l.meaning));
        }
        let _ = writeln!(s, "</g>\n</svg>");
        s
    }
}

/// Chart window covering a spectral sequence window in the given indexing.
pub fn chart_window(w: &Window, indexing: Indexing) -> ChartWindow {
    match indexing {
        Indexing::Adams => ChartWindow { xmin: w.stem_min, xmax: w.stem_max, ymin: 0, ymax: w.smax },
        Indexing::Cohomological => ChartWindow { xmin: 0, xmax: w.smax, ymin: w.stem_min, ymax: w.stem_max + w.smax },
        Indexing::Filtration => ChartWindow { xmin: w.stem_min, xmax: w.stem_max, ymin: 0, ymax: w.smax },
    }
}

/// Additive `E_∞` for `C_p` over one period of stems.
pub fn additive_einf_chart(p: u32, indexing: Indexing) -> Result<ChartDocument> {
    let setup = Setup::new(p, Group::Cp)?;
    let w = Window::new(setup.second_page() as i64 + 1, 0, setup.period())?;
    let ss = hfpss::run_additive(&setup, w)?;
    let title = format!("additive E_inf, C_{p}, p = {p}");
    let doc = ChartDocument::from_page(&ss.infinity_page(), indexing, &title, p as u64, chart_window(&w, indexing));
    doc.validate()?;
    Ok(doc)
}

/// Additive `E₂` with every differential.
pub fn additive_chart(p: u32, group: Group, window: Option<Window>, indexing: Indexing) -> Result<ChartDocument> {
    let setup = Setup::new(p, group)?;
    let w = window.unwrap_or_else(|| setup.default_window());
    let ss = hfpss::run_additive(&setup, w)?;
    let title = format!("additive spectral sequence, {}, p = {p}", group.tag());
    let doc = ChartDocument::from_page(&ss.chart_page(), indexing, &title, p as u64, chart_window(&w, indexing));
    doc.validate()?;
    Ok(doc)
}

/// Picard `E₂` with every determined differential and the undetermined ones dashed.
pub fn picard_chart(
    p: u32,
    group: Group,
    window: Option<Window>,
    params: Option<PicardParams>,
    indexing: Indexing,
) -> Result<ChartDocument> {
    let setup = Setup::new(p, group)?;
    let w = window.unwrap_or_else(|| setup.default_window());
    let ctx = hfpss::PicardContext::with_window(setup.clone(), w)?;
    let params = params.unwrap_or_else(|| PicardParams::default_for(&setup));
    let pic = ctx.picard_ss(params, w)?;
    let title = format!("Picard spectral sequence, {}, p = {p}", group.tag());
    let unknowns = pic
        .unknowns()
        .into_iter()
        .filter(|u| w.contains(u.from.0, u.from.1) && w.contains(u.to.0, u.to.1))
        .map(|u| (u.r, u.from, u.to, u.reason.clone()))
        .collect::<Vec<_>>();
    let doc = ChartDocument::from_page(&pic.chart_page(), indexing, &title, p as u64, chart_window(&w, indexing))
        .with_unknown_arrows(unknowns);
    doc.validate()?;
    Ok(doc)
}

/// Algebraic spectral sequence `E₁` for `H^*(C_p; E₀)` with its differentials,
/// filtration `0 ≤ j ≤ 2p` horizontal and `0 ≤ s ≤ 4` vertical.
pub fn algebraic_chart(p: u32) -> Result<ChartDocument> {
    let jmax = 2 * p as usize;
    let e1 = hfpss::algebraic_e1(p, jmax, 4)?;
    let window = ChartWindow { xmin: 0, xmax: jmax as i64, ymin: 0, ymax: 4 };
    let title = format!("algebraic spectral sequence E_1, p = {p}");
    let doc = ChartDocument::from_page(&e1.chart_page()?, Indexing::Filtration, &title, p as u64, window);
    doc.validate()?;
    Ok(doc)
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Semantic differences between two charts over cells and arrows; empty when equal.
pub fn diff_documents(actual: &ChartDocument, golden: &ChartDocument) -> Vec<String> {
    let mut out = Vec::new();
    if actual.indexing != golden.indexing {
        out.push(format!("indexing: {:?} vs golden {:?}", actual.indexing, golden.indexing));
    }
    let key = |c: &ChartCell| (c.x, c.y);
    let a: BTreeMap<_, _> = actual.cells.iter().map(|c| (key(c), c)).collect();
    let g: BTreeMap<_, _> = golden.cells.iter().map(|c| (key(c), c)).collect();
    for (pos, ca) in &a {
        match g.get(pos) {
            None => out.push(format!("extra cell at {pos:?}: {}", ca.group)),
            Some(cg) if cg.group != ca.group || cg.glyphs != ca.glyphs || cg.multiplicity != ca.multiplicity => {
                out.push(format!("cell at {pos:?}: {} vs golden {}", ca.group, cg.group))
            }
            Some(_) => {}
        }
    }
    for (pos, cg) in &g {
        if !a.contains_key(pos) {
            out.push(format!("missing cell at {pos:?}: golden {}", cg.group));
        }
    }
    let akey = |x: &ChartArrow| (x.from, x.to, x.page);
    let aa: BTreeMap<_, _> = actual.arrows.iter().map(|x| (akey(x), x)).collect();
    let ga: BTreeMap<_, _> = golden.arrows.iter().map(|x| (akey(x), x)).collect();
    for ((from, to, page), x) in &aa {
        match ga.get(&(*from, *to, *page)) {
            None => out.push(format!("extra differential {from:?} -> {to:?} on page {page}")),
            Some(y) if y.style != x.style => out.push(format!("differential {from:?} -> {to:?} on page {page}: style {:?} vs golden {:?}", x.style, y.style)),
            Some(_) => {}
        }
    }
    for (from, to, page) in ga.keys() {
        if !aa.contains_key(&(*from, *to, *page)) {
            out.push(format!("missing differential {from:?} -> {to:?} on page {page}"));
        }
    }
    out
}

/// Compares a chart with the golden JSON at `path`.
pub fn diff_golden(actual: &ChartDocument, path: &Path) -> Result<Vec<String>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Precondition(format!("golden {} unavailable: {e}", path.display())))?;
    Ok(diff_documents(actual, &ChartDocument::from_json(&text)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn empty() -> ChartDocument {
        let page = BigradedPage { page: "2".into(), cells: vec![], differentials: vec![] };
        ChartDocument::from_page(&page, Indexing::Adams, "empty", 3, ChartWindow { xmin: 0, xmax: 4, ymin: 0, ymax: 2 })
    }

    #[test]
    fn empty_page_gives_legend_only_chart() {
        let c = empty();
        assert!(c.cells.is_empty() && c.arrows.is_empty());
        c.validate().unwrap();
        assert!(c.to_ascii().contains("legend:"));
        assert!(c.to_svg().contains("<svg"));
    }

    #[test]
    fn identical_documents_have_no_diff() {
        let c = empty();
        assert!(diff_documents(&c, &c).is_empty());
    }
}
