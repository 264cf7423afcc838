//! Region map of a scan as a static SVG.

use crate::scan::ScanRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    OutsideDisk,
    NoCreation,
    Canonical,
    SearchedFrame,
}

impl Region {
    pub fn of(r: &ScanRecord) -> Self {
        if !r.cp_valid {
            Self::OutsideDisk
        } else if r.creates_canonical {
            Self::Canonical
        } else if r.creates_any_frame {
            Self::SearchedFrame
        } else {
            Self::NoCreation
        }
    }

    pub fn color(self) -> &'static str {
        match self {
            Self::OutsideDisk => "#d9d9d9",
            Self::NoCreation => "#4a90c2",
            Self::Canonical => "#c0392b",
            Self::SearchedFrame => "#f39c12",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::OutsideDisk => "outside disk (D not positive)",
            Self::NoCreation => "no creation",
            Self::Canonical => "creation, canonical frame (a+b>1)",
            Self::SearchedFrame => "creation, searched frame only",
        }
    }
}

/// Heatmap of `records` laid out as `resolution` rows of `resolution` points,
/// `b` decreasing down the rows and `a` increasing across.
pub fn render_svg(records: &[ScanRecord], resolution: usize, size: u32) -> String {
    let cell = size as f64 / resolution as f64;
    let mut out = format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">\n"
    );
    out += &format!("<rect x=\"0\" y=\"0\" width=\"{size}\" height=\"{size}\" fill=\"#ffffff\"/>\n");
    for (row, chunk) in records.chunks(resolution).enumerate() {
        let mut start = 0;
        while start < chunk.len() {
            let region = Region::of(&chunk[start]);
            let mut end = start + 1;
            while end < chunk.len() && Region::of(&chunk[end]) == region {
                end += 1;
            }
            out += &format!(
                "<rect x=\"{:.3}\" y=\"{:.3}\" width=\"{:.3}\" height=\"{:.3}\" fill=\"{}\"/>\n",
                start as f64 * cell,
                row as f64 * cell,
                (end - start) as f64 * cell,
                cell,
                region.color()
            );
            start = end;
        }
    }
    let s = size as f64;
    out += &format!(
        "<line x1=\"{h:.1}\" y1=\"0\" x2=\"{h:.1}\" y2=\"{s}\" stroke=\"#000\" stroke-width=\"0.5\"/>\n<line x1=\"0\" y1=\"{h:.1}\" x2=\"{s}\" y2=\"{h:.1}\" stroke=\"#000\" stroke-width=\"0.5\"/>\n",
        h = s / 2.0
    );
    let (lx, ly) = (s * 0.62, s * 0.80);
    out += &format!(
        "<g font-family=\"sans-serif\" font-size=\"{fs:.0}\">\n<rect x=\"{lx:.1}\" y=\"{ly:.1}\" width=\"{w:.1}\" height=\"{hgt:.1}\" fill=\"#ffffff\" stroke=\"#000\" stroke-width=\"0.5\"/>\n",
        fs = s * 0.0175,
        w = s * 0.37,
        hgt = s * 0.19
    );
    for (k, region) in [Region::OutsideDisk, Region::NoCreation, Region::Canonical, Region::SearchedFrame]
        .into_iter()
        .enumerate()
    {
        let y = ly + s * 0.015 + k as f64 * s * 0.04;
        out += &format!(
            "<rect x=\"{:.1}\" y=\"{y:.1}\" width=\"{b:.1}\" height=\"{b:.1}\" fill=\"{}\" stroke=\"#000\" stroke-width=\"0.5\"/>\n<text x=\"{:.1}\" y=\"{:.1}\">{}</text>\n",
            lx + s * 0.01,
            region.color(),
            lx + s * 0.045,
            y + s * 0.022,
            region.label(),
            b = s * 0.025
        );
    }
    out += &format!(
        "<text x=\"{:.1}\" y=\"{:.1}\">a</text>\n<text x=\"{:.1}\" y=\"{:.1}\">b</text>\n</g>\n</svg>\n",
        s - s * 0.03,
        s / 2.0 - s * 0.01,
        s / 2.0 + s * 0.01,
        s * 0.03
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scan::scan;

    #[test]
    fn small_scan_renders_all_regions() {
        let records = scan(21, 200, 1e-10).unwrap();
        let svg = render_svg(&records, 21, 800);
        assert!(svg.starts_with("<?xml") && svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains("width=\"800\" height=\"800\""));
        for region in [Region::OutsideDisk, Region::NoCreation, Region::Canonical, Region::SearchedFrame] {
            assert!(svg.contains(region.color()));
            assert!(records.iter().any(|r| Region::of(r) == region), "{region:?}");
        }
    }
}
