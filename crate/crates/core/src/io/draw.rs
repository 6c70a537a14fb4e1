//! SVG and DOT emitters for dominance drawings and queue arc diagrams.
//!
//! Output depends only on the input, so drawings can be diffed.

use std::fmt::Write;

use crate::error::Result;
use crate::layout::{Layout, QueueAssignment};
use crate::order::{Poset, RealizerPair};

const STEP: usize = 40;
const MARGIN: usize = 20;

const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

/// Stroke colour of queue `q` (1-based).
pub fn queue_color(q: usize) -> String {
    match PALETTE.get(q.wrapping_sub(1)) {
        Some(c) => c.to_string(),
        None => format!("hsl({}, 65%, 45%)", (q * 137) % 360),
    }
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            _ => out.push(ch),
        }
    }
    out
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// 1-based (x, y) = (position in `l1`, position in `l2`) per element of `p`.
pub fn dominance_coordinates(p: &Poset, rp: &RealizerPair) -> Result<Vec<(usize, usize)>> {
    let mut xy = vec![(0, 0); p.len()];
    for (i, name) in rp.l1().iter().enumerate() {
        xy[p.index_of(name)?].0 = i + 1;
    }
    for (i, name) in rp.l2().iter().enumerate() {
        xy[p.index_of(name)?].1 = i + 1;
    }
    Ok(xy)
}

pub fn dominance_svg(p: &Poset, rp: &RealizerPair) -> Result<String> {
    let xy = dominance_coordinates(p, rp)?;
    let n = p.len();
    let size = 2 * MARGIN + n.saturating_sub(1) * STEP;
    let px = |(x, y): (usize, usize)| (MARGIN + (x - 1) * STEP, MARGIN + (n - y) * STEP);

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    )
    .unwrap();
    writeln!(s, r#"<g stroke="black" stroke-width="1">"#).unwrap();
    for (u, v) in p.cover_graph().edges {
        let (x1, y1) = px(xy[u]);
        let (x2, y2) = px(xy[v]);
        writeln!(s, r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#).unwrap();
    }
    writeln!(s, "</g>").unwrap();
    writeln!(s, r#"<g fill="black">"#).unwrap();
    for (u, &c) in xy.iter().enumerate() {
        let (x, y) = px(c);
        writeln!(
            s,
            r#"<circle cx="{x}" cy="{y}" r="4"><title>{}</title></circle>"#,
            xml_escape(p.name(u))
        )
        .unwrap();
    }
    writeln!(s, "</g>").unwrap();
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn dominance_dot(p: &Poset, rp: &RealizerPair) -> Result<String> {
    let xy = dominance_coordinates(p, rp)?;
    let mut s = String::from("digraph dominance {\n  node [shape=point];\n");
    for (u, &(x, y)) in xy.iter().enumerate() {
        writeln!(s, "  {} [pos=\"{x},{y}!\"];", dot_quote(p.name(u))).unwrap();
    }
    for (u, v) in p.cover_graph().edges {
        writeln!(s, "  {} -> {};", dot_quote(p.name(u)), dot_quote(p.name(v))).unwrap();
    }
    s.push_str("}\n");
    Ok(s)
}

/// Vertices on a horizontal line in layout order, each cover edge a
/// semicircle above it stroked in its queue's colour.
pub fn arcs_svg(p: &Poset, l: &Layout, qa: &QueueAssignment) -> String {
    let n = l.order().len();
    let longest = l
        .edges()
        .iter()
        .map(|e| e.right - e.left)
        .max()
        .unwrap_or(0);
    let width = 2 * MARGIN + n.saturating_sub(1) * STEP;
    let base = MARGIN + longest * STEP / 2;
    let height = base + MARGIN;

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    writeln!(s, r#"<g fill="none" stroke-width="1.5">"#).unwrap();
    for (e, edge) in l.edges().iter().enumerate() {
        let x1 = MARGIN + edge.left * STEP;
        let x2 = MARGIN + edge.right * STEP;
        let r = (x2 - x1) / 2;
        writeln!(
            s,
            r#"<path d="M {x1} {base} A {r} {r} 0 0 1 {x2} {base}" stroke="{}"><title>{} - {} (queue {})</title></path>"#,
            queue_color(qa.queue_of[e]),
            xml_escape(p.name(edge.lower)),
            xml_escape(p.name(edge.upper)),
            qa.queue_of[e]
        )
        .unwrap();
    }
    writeln!(s, "</g>").unwrap();
    writeln!(s, r#"<g fill="black">"#).unwrap();
    for (i, &v) in l.order().iter().enumerate() {
        writeln!(
            s,
            r#"<circle cx="{}" cy="{base}" r="4"><title>{}</title></circle>"#,
            MARGIN + i * STEP,
            xml_escape(p.name(v))
        )
        .unwrap();
    }
    writeln!(s, "</g>").unwrap();
    s.push_str("</svg>\n");
    s
}

pub fn arcs_dot(p: &Poset, l: &Layout, qa: &QueueAssignment) -> String {
    let mut s = String::from("digraph arcs {\n  rankdir=LR;\n  node [shape=circle];\n");
    s.push_str("  { rank=same;");
    for &v in l.order() {
        write!(s, " {}", dot_quote(p.name(v))).unwrap();
    }
    s.push_str(" }\n");
    for w in l.order().windows(2) {
        writeln!(
            s,
            "  {} -> {} [style=invis];",
            dot_quote(p.name(w[0])),
            dot_quote(p.name(w[1]))
        )
        .unwrap();
    }
    for (e, edge) in l.edges().iter().enumerate() {
        let q = qa.queue_of[e];
        writeln!(
            s,
            "  {} -> {} [color=\"{}\", label=\"{q}\", constraint=false];",
            dot_quote(p.name(edge.lower)),
            dot_quote(p.name(edge.upper)),
            queue_color(q)
        )
        .unwrap();
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{gen_p, gen_r};
    use crate::layout::queue_assignment;
    use std::collections::HashSet;

    #[test]
    fn p2_dominance() {
        let g = gen_p(2).unwrap();
        let p = g.poset();
        let xy = dominance_coordinates(&p, &g.realizers).unwrap();
        let mut sorted = xy.clone();
        sorted.sort();
        assert_eq!(sorted, vec![(1, 2), (2, 1), (3, 4), (4, 3)]);
        let svg = dominance_svg(&p, &g.realizers).unwrap();
        assert_eq!(svg.matches("<circle").count(), 4);
        assert_eq!(svg.matches("<line").count(), 4);
    }

    #[test]
    fn r2_arcs_three_colours() {
        let g = gen_r(2).unwrap();
        let p = g.poset();
        let l = Layout::from_names(&p, g.realizers.l1()).unwrap();
        let qa = queue_assignment(&l);
        let svg = arcs_svg(&p, &l, &qa);
        assert_eq!(svg.matches("<path").count(), 6);
        let colours: HashSet<&str> = svg
            .match_indices("stroke=\"#")
            .map(|(i, _)| &svg[i + 8..i + 15])
            .collect();
        assert_eq!(colours.len(), 3);
        assert_eq!(arcs_svg(&p, &l, &qa), svg);
    }

    #[test]
    fn singleton() {
        let rp = RealizerPair::new(["x"], ["x"]).unwrap();
        let p = Poset::from_realizers(&rp).unwrap();
        let svg = dominance_svg(&p, &rp).unwrap();
        assert_eq!(svg.matches("<circle").count(), 1);
        assert_eq!(svg.matches("<line").count(), 0);
        let dot = dominance_dot(&p, &rp).unwrap();
        assert!(!dot.contains("->"));
    }

    #[test]
    fn escapes_names() {
        let rp = RealizerPair::new(["<a>", "b\"c"], ["<a>", "b\"c"]).unwrap();
        let p = Poset::from_realizers(&rp).unwrap();
        assert!(dominance_svg(&p, &rp).unwrap().contains("&lt;a&gt;"));
        assert!(dominance_dot(&p, &rp).unwrap().contains("\"b\\\"c\""));
    }

    #[test]
    fn queue_colours_distinct() {
        let colours: HashSet<String> = (1..=40).map(queue_color).collect();
        assert_eq!(colours.len(), 40);
    }
}
