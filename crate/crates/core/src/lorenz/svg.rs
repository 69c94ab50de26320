use std::fmt::Write;

use super::braid::{BraidPermutation, LorenzBraid};

const SPACING: u64 = 40;
const MARGIN: u64 = 40;
const HEIGHT: u64 = 240;
const OVER_COLOR: &str = "#b03a2e";
const UNDER_COLOR: &str = "#1f618d";

/// Static SVG 1.1 drawing of a Lorenz braid. Strands are straight segments
/// from top position `i` to bottom position `end_of(i)`; overcrossing strands
/// are drawn last on top of a white gap stroke. Output depends only on the
/// input, so repeated calls are byte-identical.
pub fn render_braid(braid: &LorenzBraid, perm: &BraidPermutation) -> String {
    let n = perm.total_strands() as u64;
    let p = braid.p();
    let width = 2 * MARGIN + SPACING * n.saturating_sub(1);
    let height = HEIGHT + 2 * MARGIN;
    let top = MARGIN;
    let bottom = MARGIN + HEIGHT;
    let x = |pos: usize| MARGIN + SPACING * (pos as u64 - 1);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    let _ = writeln!(out, "  <title>Lorenz braid {braid}</title>");
    let _ = writeln!(
        out,
        "  <desc>{n} strands, {p} overcrossing, trip number {}</desc>",
        braid.trip_number()
    );
    let _ = writeln!(
        out,
        "  <rect x=\"0\" y=\"0\" width=\"{width}\" height=\"{height}\" fill=\"#ffffff\"/>"
    );

    // Separator between the X and Y halves of the branch line.
    let split = x(p) + SPACING / 2;
    let _ = writeln!(
        out,
        "  <line x1=\"{split}\" y1=\"{}\" x2=\"{split}\" y2=\"{}\" stroke=\"#999999\" stroke-width=\"1\" stroke-dasharray=\"4 4\"/>",
        top - 25,
        top - 10
    );

    out.push_str("  <g id=\"under\" fill=\"none\" stroke-linecap=\"round\">\n");
    for pos in 1..=perm.total_strands() {
        if !perm.is_overcrossing(pos) {
            strand(
                &mut out,
                x(pos),
                top,
                x(perm.end_of(pos)),
                bottom,
                UNDER_COLOR,
                false,
            );
        }
    }
    out.push_str("  </g>\n");
    out.push_str("  <g id=\"over\" fill=\"none\" stroke-linecap=\"round\">\n");
    for pos in 1..=perm.total_strands() {
        if perm.is_overcrossing(pos) {
            strand(
                &mut out,
                x(pos),
                top,
                x(perm.end_of(pos)),
                bottom,
                OVER_COLOR,
                true,
            );
        }
    }
    out.push_str("  </g>\n");

    out.push_str("  <g id=\"anchors\" fill=\"#000000\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">\n");
    for pos in 1..=perm.total_strands() {
        let cx = x(pos);
        let _ = writeln!(out, "    <circle cx=\"{cx}\" cy=\"{top}\" r=\"3\"/>");
        let _ = writeln!(out, "    <circle cx=\"{cx}\" cy=\"{bottom}\" r=\"3\"/>");
        let _ = writeln!(out, "    <text x=\"{cx}\" y=\"{}\">{pos}</text>", top - 12);
        let _ = writeln!(
            out,
            "    <text x=\"{cx}\" y=\"{}\">{pos}</text>",
            bottom + 22
        );
    }
    out.push_str("  </g>\n");
    out.push_str("</svg>\n");
    out
}

fn strand(out: &mut String, x1: u64, y1: u64, x2: u64, y2: u64, color: &str, gap: bool) {
    if gap {
        let _ = writeln!(
            out,
            "    <line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"#ffffff\" stroke-width=\"8\"/>"
        );
    }
    let _ = writeln!(
        out,
        "    <line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"{color}\" stroke-width=\"2\"/>"
    );
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coding::parse_word;
    use crate::lorenz::williams_braid;

    #[test]
    fn xy_diagram() {
        let (perm, braid) = williams_braid(&parse_word("XY").unwrap()).unwrap();
        let svg = render_braid(&braid, &perm);
        assert!(svg.contains("version=\"1.1\""));
        assert_eq!(svg.matches("<circle").count(), 4);
        assert_eq!(svg, render_braid(&braid, &perm));
    }
}
