//! Sectioned text format for generator configurations and single blocks.
//!
//! ```text
//! # comment
//! [hamiltonian]
//! h1 = 0.1 0 0.3
//! h2 = 0 0 0
//! [hamiltonian.h12]
//! 0 0 0
//! 0 0 0
//! 0 0 0
//! [kossakowski.A.re]
//! 1 0 0
//! 0 1 0
//! 0 0 0
//! [kossakowski.A.im]
//! ...
//! ```
//!
//! Blocks `A`, `B`, `C` each take optional `.re` and `.im` sections; missing
//! parts are zero. An `[example]` section with `a = ..` and `b = ..` replaces
//! the `kossakowski` sections with the two-parameter example bath.

use bathent::eigen::min_eigenvalue;
use bathent::generator::Real3;
use bathent::{ComplexMatrix, ExampleBath, HamiltonianSpec, KossakowskiMatrix, C64};

use crate::error::{CliError, ParseError};

#[derive(Debug, Clone, Copy)]
pub struct Token<'a> {
    pub column: usize,
    pub text: &'a str,
}

#[derive(Debug, Clone)]
pub struct Line<'a> {
    pub number: usize,
    pub tokens: Vec<Token<'a>>,
    /// Column just past the last token, for "missing value" errors.
    pub end_column: usize,
}

#[derive(Debug, Clone)]
pub struct Section<'a> {
    pub name: &'a str,
    pub line: usize,
    pub lines: Vec<Line<'a>>,
}

fn tokenize(text: &str) -> (Vec<Token<'_>>, usize) {
    let mut tokens = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    let mut column = 0;
    for (byte, ch) in text.char_indices() {
        column += 1;
        if ch.is_whitespace() || ch == '=' {
            if let Some((b, c)) = start.take() {
                tokens.push(Token {
                    column: c,
                    text: &text[b..byte],
                });
            }
            if ch == '=' {
                tokens.push(Token {
                    column,
                    text: &text[byte..byte + 1],
                });
            }
        } else if start.is_none() {
            start = Some((byte, column));
        }
    }
    if let Some((b, c)) = start {
        tokens.push(Token { column: c, text: &text[b..] });
    }
    (tokens, column + 1)
}

/// Splits text into `[name]` sections; `#` starts a comment.
pub fn split_sections(src: &str) -> Result<Vec<Section<'_>>, ParseError> {
    let mut sections: Vec<Section<'_>> = Vec::new();
    for (idx, raw) in src.lines().enumerate() {
        let number = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        if trimmed.trim_end().is_empty() {
            continue;
        }
        let indent = content[..content.len() - trimmed.len()].chars().count();
        if let Some(rest) = trimmed.strip_prefix('[') {
            let Some(close) = rest.find(']') else {
                return Err(ParseError::new(number, indent + 1, "unterminated section header"));
            };
            let name = rest[..close].trim();
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '.' || c == '_') {
                return Err(ParseError::new(number, indent + 2, format!("invalid section name '{name}'")));
            }
            let trailing = rest[close + 1..].trim();
            if !trailing.is_empty() {
                let col = indent + 2 + rest[..close + 1].chars().count();
                return Err(ParseError::new(number, col, "unexpected text after section header"));
            }
            if let Some(prev) = sections.iter().find(|s| s.name == name) {
                return Err(ParseError::new(
                    number,
                    indent + 1,
                    format!("section [{name}] already defined on line {}", prev.line),
                ));
            }
            sections.push(Section {
                name,
                line: number,
                lines: Vec::new(),
            });
        } else {
            let Some(section) = sections.last_mut() else {
                return Err(ParseError::new(number, indent + 1, "content before the first section header"));
            };
            let (tokens, end_column) = tokenize(content);
            section.lines.push(Line {
                number,
                tokens,
                end_column,
            });
        }
    }
    Ok(sections)
}

pub fn parse_number(token: &Token<'_>, line: usize) -> Result<f64, ParseError> {
    match token.text.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        Ok(_) => Err(ParseError::new(line, token.column, format!("non-finite number '{}'", token.text))),
        Err(_) => Err(ParseError::new(line, token.column, format!("expected a number, found '{}'", token.text))),
    }
}

/// Three rows of three numbers.
pub fn parse_matrix3(section: &Section<'_>) -> Result<Real3, ParseError> {
    if section.lines.len() != 3 {
        let (line, column) = section
            .lines
            .get(3)
            .map(|l| (l.number, l.tokens[0].column))
            .unwrap_or((section.line, 1));
        return Err(ParseError::new(
            line,
            column,
            format!("section [{}] needs 3 rows, found {}", section.name, section.lines.len()),
        ));
    }
    let mut m = [[0.0; 3]; 3];
    for (row, line) in section.lines.iter().enumerate() {
        if line.tokens.len() != 3 {
            let column = line.tokens.get(3).map_or(line.end_column, |t| t.column);
            return Err(ParseError::new(
                line.number,
                column,
                format!("expected 3 numbers per row, found {}", line.tokens.len()),
            ));
        }
        for (col, token) in line.tokens.iter().enumerate() {
            m[row][col] = parse_number(token, line.number)?;
        }
    }
    Ok(m)
}

/// `key = v1 v2 ...` with exactly `n` values.
fn parse_key_values<'a>(line: &Line<'a>, n: usize) -> Result<(&'a str, Vec<f64>), ParseError> {
    let key = line.tokens[0];
    match line.tokens.get(1) {
        Some(eq) if eq.text == "=" => {}
        Some(other) => return Err(ParseError::new(line.number, other.column, "expected '='")),
        None => return Err(ParseError::new(line.number, line.end_column, "expected '='")),
    }
    let values = &line.tokens[2..];
    if values.len() != n {
        let column = values.get(n).map_or(line.end_column, |t| t.column);
        return Err(ParseError::new(
            line.number,
            column,
            format!("'{}' takes {n} value(s), found {}", key.text, values.len()),
        ));
    }
    let parsed = values
        .iter()
        .map(|t| parse_number(t, line.number))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((key.text, parsed))
}

fn to_complex(re: &Real3, im: &Real3) -> ComplexMatrix {
    ComplexMatrix::from_fn(3, |i, j| C64::new(re[i][j], im[i][j]))
}

/// A parsed but not yet validated generator.
#[derive(Debug, Clone)]
pub struct GeneratorConfig {
    pub hamiltonian: HamiltonianSpec,
    pub a: ComplexMatrix,
    pub b: ComplexMatrix,
    pub c: ComplexMatrix,
    pub example: Option<ExampleBath>,
}

impl GeneratorConfig {
    /// Assembles `D`, rejecting non-Hermitian blocks and, unless allowed,
    /// matrices with an eigenvalue below `−tol`.
    pub fn kossakowski(&self, allow_non_cp: bool, tol: f64) -> Result<KossakowskiMatrix, CliError> {
        let d = KossakowskiMatrix::unchecked(self.a.clone(), self.b.clone(), self.c.clone())
            .map_err(|e| CliError::Invalid(e.to_string()))?;
        let min = min_eigenvalue(d.matrix())?;
        if min < -tol && !allow_non_cp {
            return Err(CliError::NotCompletelyPositive(min));
        }
        Ok(d)
    }
}

const BLOCK_SECTIONS: [&str; 6] = [
    "kossakowski.A.re",
    "kossakowski.A.im",
    "kossakowski.B.re",
    "kossakowski.B.im",
    "kossakowski.C.re",
    "kossakowski.C.im",
];

pub fn parse_config(src: &str) -> Result<GeneratorConfig, ParseError> {
    let sections = split_sections(src)?;
    let mut hamiltonian = HamiltonianSpec::zero();
    let mut parts = [[[0.0; 3]; 3]; 6];
    let mut example: Option<(usize, ExampleBath)> = None;
    let mut first_block_line = None;

    for section in &sections {
        match section.name {
            "hamiltonian" => {
                for line in &section.lines {
                    let (key, values) = parse_key_values(line, 3)?;
                    let target = match key {
                        "h1" => &mut hamiltonian.h1,
                        "h2" => &mut hamiltonian.h2,
                        other => {
                            return Err(ParseError::new(
                                line.number,
                                line.tokens[0].column,
                                format!("unknown key '{other}' (expected h1 or h2)"),
                            ))
                        }
                    };
                    target.copy_from_slice(&values);
                }
            }
            "hamiltonian.h12" => hamiltonian.h12 = parse_matrix3(section)?,
            "example" => {
                let (mut a, mut b) = (None, None);
                for line in &section.lines {
                    let (key, values) = parse_key_values(line, 1)?;
                    match key {
                        "a" => a = Some(values[0]),
                        "b" => b = Some(values[0]),
                        other => {
                            return Err(ParseError::new(
                                line.number,
                                line.tokens[0].column,
                                format!("unknown key '{other}' (expected a or b)"),
                            ))
                        }
                    }
                }
                match (a, b) {
                    (Some(a), Some(b)) => example = Some((section.line, ExampleBath::new(a, b))),
                    _ => return Err(ParseError::new(section.line, 1, "[example] needs both 'a' and 'b'")),
                }
            }
            name => match BLOCK_SECTIONS.iter().position(|s| *s == name) {
                Some(k) => {
                    parts[k] = parse_matrix3(section)?;
                    first_block_line.get_or_insert(section.line);
                }
                None => {
                    return Err(ParseError::new(section.line, 2, format!("unknown section [{name}]")));
                }
            },
        }
    }

    if let (Some((line, _)), Some(block_line)) = (example, first_block_line) {
        return Err(ParseError::new(
            line.max(block_line),
            1,
            "[example] cannot be combined with kossakowski sections",
        ));
    }
    let (a, b, c) = match example {
        Some((_, bath)) => (bath.a_block(), bath.b_block(), bath.a_block()),
        None => (
            to_complex(&parts[0], &parts[1]),
            to_complex(&parts[2], &parts[3]),
            to_complex(&parts[4], &parts[5]),
        ),
    };
    Ok(GeneratorConfig {
        hamiltonian,
        a,
        b,
        c,
        example: example.map(|(_, e)| e),
    })
}

/// A single 3×3 complex block in `[re]` / `[im]` sections.
pub fn parse_block(src: &str) -> Result<ComplexMatrix, ParseError> {
    let sections = split_sections(src)?;
    let mut re = None;
    let mut im = [[0.0; 3]; 3];
    for section in &sections {
        match section.name {
            "re" => re = Some(parse_matrix3(section)?),
            "im" => im = parse_matrix3(section)?,
            name => return Err(ParseError::new(section.line, 2, format!("unknown section [{name}]"))),
        }
    }
    let re = re.ok_or_else(|| ParseError::new(1, 1, "missing [re] section"))?;
    Ok(to_complex(&re, &im))
}

/// Renders a configuration that [`parse_config`] reads back exactly.
pub fn render_config(spec: &HamiltonianSpec, d: &KossakowskiMatrix) -> String {
    let mut out = String::from("[hamiltonian]\n");
    let row = |v: &[f64]| v.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(" ");
    out += &format!("h1 = {}\nh2 = {}\n[hamiltonian.h12]\n", row(&spec.h1), row(&spec.h2));
    for r in &spec.h12 {
        out += &row(r);
        out.push('\n');
    }
    for (name, block) in [("A", d.a()), ("B", d.b()), ("C", d.c())] {
        for (part, m) in [("re", block.re()), ("im", block.im())] {
            out += &format!("[kossakowski.{name}.{part}]\n");
            for i in 0..3 {
                let r: Vec<f64> = (0..3).map(|j| m[(i, j)].re).collect();
                out += &row(&r);
                out.push('\n');
            }
        }
    }
    out
}
