//! Self-contained SVG renderings of the reconciliation artifacts: a heatmap
//! (grid of rectangles, monotone color scale) and a dot plot (circles sized
//! by percentage). Presentation-only; output is deterministic.

use std::fmt::Write;

const CELL_W: usize = 26;
const CELL_H: usize = 16;
const FONT: &str = "font-family=\"monospace\" font-size=\"10\"";
const TITLE_H: usize = 24;

fn left_margin(row_labels: &[String]) -> usize {
    let chars = row_labels.iter().map(|s| s.chars().count()).max().unwrap_or(0);
    12 + 6 * chars
}

fn monotone_fill(v: f64) -> String {
    // white -> dark blue
    let v = v.clamp(0.0, 1.0);
    let r = (255.0 + (8.0 - 255.0) * v).round() as u8;
    let g = (255.0 + (81.0 - 255.0) * v).round() as u8;
    let b = (255.0 + (156.0 - 255.0) * v).round() as u8;
    format!("rgb({r},{g},{b})")
}

fn header(out: &mut String, width: usize, height: usize, title: &str) {
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    let _ = writeln!(out, "<rect width=\"{width}\" height=\"{height}\" fill=\"white\"/>");
    let _ = writeln!(
        out,
        "<text x=\"8\" y=\"16\" {FONT} font-size=\"12\">{}</text>",
        escape(title)
    );
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn axis_labels(
    out: &mut String,
    row_labels: &[String],
    col_labels: &[String],
    x0: usize,
    y0: usize,
) {
    for (i, label) in row_labels.iter().enumerate() {
        let y = y0 + i * CELL_H + CELL_H / 2 + 4;
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{y}\" text-anchor=\"end\" {FONT}>{}</text>",
            x0 - 6,
            escape(label)
        );
    }
    for (j, label) in col_labels.iter().enumerate() {
        let x = x0 + j * CELL_W + CELL_W / 2;
        let y = y0 + row_labels.len() * CELL_H + 14;
        let _ = writeln!(
            out,
            "<text x=\"{x}\" y=\"{y}\" text-anchor=\"middle\" {FONT}>{}</text>",
            escape(label)
        );
    }
}

/// Heatmap over `cells[row][col]` values in `[0, max_value]`.
pub fn heatmap_svg(
    title: &str,
    row_labels: &[String],
    col_labels: &[String],
    cells: &[Vec<f64>],
    max_value: f64,
) -> String {
    let x0 = left_margin(row_labels);
    let y0 = TITLE_H + 8;
    let width = x0 + col_labels.len() * CELL_W + 12;
    let height = y0 + row_labels.len() * CELL_H + 24;
    let scale = if max_value > 0.0 { max_value } else { 1.0 };

    let mut out = String::new();
    header(&mut out, width, height, title);
    for (i, row) in cells.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            let x = x0 + j * CELL_W;
            let y = y0 + i * CELL_H;
            let _ = writeln!(
                out,
                "<rect x=\"{x}\" y=\"{y}\" width=\"{CELL_W}\" height=\"{CELL_H}\" fill=\"{}\" stroke=\"#ccc\" stroke-width=\"0.5\"/>",
                monotone_fill(v / scale)
            );
        }
    }
    axis_labels(&mut out, row_labels, col_labels, x0, y0);
    out.push_str("</svg>\n");
    out
}

/// Dot plot over optional percentages in `[0, 100]`; `None` cells are blank.
/// Circle area scales with the percentage.
pub fn dotplot_svg(
    title: &str,
    row_labels: &[String],
    col_labels: &[String],
    cells: &[Vec<Option<f64>>],
) -> String {
    let x0 = left_margin(row_labels);
    let y0 = TITLE_H + 8;
    let width = x0 + col_labels.len() * CELL_W + 12;
    let height = y0 + row_labels.len() * CELL_H + 24;
    let max_r = (CELL_W.min(CELL_H) / 2) as f64 - 1.0;

    let mut out = String::new();
    header(&mut out, width, height, title);
    for (i, row) in cells.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            if let Some(pct) = cell {
                let cx = x0 + j * CELL_W + CELL_W / 2;
                let cy = y0 + i * CELL_H + CELL_H / 2;
                let r = max_r * (pct.clamp(0.0, 100.0) / 100.0).sqrt();
                let _ = writeln!(
                    out,
                    "<circle cx=\"{cx}\" cy=\"{cy}\" r=\"{r:.2}\" fill=\"{}\"/>",
                    monotone_fill(0.75)
                );
            }
        }
    }
    axis_labels(&mut out, row_labels, col_labels, x0, y0);
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heatmap_is_well_formed_and_deterministic() {
        let rows = vec!["Software".to_string(), "AI & Vision".to_string()];
        let cols = vec!["0".to_string(), "1".to_string(), "2".to_string()];
        let cells = vec![vec![0.8, 0.0, 0.3], vec![0.1, 1.0, 0.0]];
        let a = heatmap_svg("t", &rows, &cols, &cells, 1.0);
        let b = heatmap_svg("t", &rows, &cols, &cells, 1.0);
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
        assert!(a.ends_with("</svg>\n"));
        assert_eq!(a.matches("<rect").count(), 1 + 6); // background + cells
        assert!(a.contains("&amp;"));
    }

    #[test]
    fn dotplot_skips_suppressed_cells() {
        let rows = vec!["a".to_string()];
        let cols = vec!["0".to_string(), "1".to_string()];
        let cells = vec![vec![Some(90.0), None]];
        let svg = dotplot_svg("t", &rows, &cols, &cells);
        assert_eq!(svg.matches("<circle").count(), 1);
    }
}
