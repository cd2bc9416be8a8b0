use std::fmt::Write as _;

use serde::Serialize;

use super::FumError;
use crate::plane_graph::VertexId;

pub type Color = u32;

/// Largest supported palette; colors are tracked in 64-bit masks.
pub const MAX_PALETTE: Color = 63;

/// Total map from vertices to colors in `1..=palette`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Coloring {
    colors: Vec<Color>,
    palette: Color,
}

impl Coloring {
    pub fn new(colors: Vec<Color>, palette: Color) -> Result<Self, FumError> {
        if palette == 0 || palette > MAX_PALETTE {
            return Err(FumError::InvalidPalette(palette));
        }
        if let Some((vertex, &color)) = colors
            .iter()
            .enumerate()
            .find(|(_, &c)| c == 0 || c > palette)
        {
            return Err(FumError::PaletteMismatch {
                vertex,
                color,
                palette,
            });
        }
        Ok(Coloring { colors, palette })
    }

    pub fn color(&self, v: VertexId) -> Color {
        self.colors[v]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn palette(&self) -> Color {
        self.palette
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Same colors, declared over a different palette.
    pub fn with_palette(&self, palette: Color) -> Result<Self, FumError> {
        Coloring::new(self.colors.clone(), palette)
    }

    /// Applies `map` to every color.
    pub fn recolor(&self, map: impl Fn(Color) -> Color, palette: Color) -> Result<Self, FumError> {
        Coloring::new(self.colors.iter().map(|&c| map(c)).collect(), palette)
    }
}

/// Reads `palette <k>` followed by one `v<i> <color>` line per vertex.
pub fn parse_coloring(text: &str) -> Result<Coloring, FumError> {
    let syntax = |line: usize, message: String| FumError::Syntax { line, message };
    let mut palette = None;
    let mut entries: Vec<Option<Color>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<_> = content.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(syntax(line, format!("expected two tokens, found `{content}`")));
        }
        if toks[0] == "palette" {
            if palette.is_some() {
                return Err(syntax(line, "palette declared twice".into()));
            }
            palette = Some(
                toks[1]
                    .parse::<Color>()
                    .map_err(|_| syntax(line, format!("bad palette size `{}`", toks[1])))?,
            );
            continue;
        }
        let v: usize = toks[0]
            .strip_prefix('v')
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| syntax(line, format!("expected `v<i>`, found `{}`", toks[0])))?;
        let c: Color = toks[1]
            .parse()
            .map_err(|_| syntax(line, format!("bad color `{}`", toks[1])))?;
        if entries.len() <= v {
            entries.resize(v + 1, None);
        }
        if entries[v].replace(c).is_some() {
            return Err(syntax(line, format!("v{v} colored twice")));
        }
    }
    let palette = palette.ok_or_else(|| syntax(0, "missing `palette <k>` line".into()))?;
    let colors = entries
        .into_iter()
        .enumerate()
        .map(|(v, c)| c.ok_or_else(|| syntax(0, format!("no color for v{v}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Coloring::new(colors, palette)
}

pub fn serialize_coloring(c: &Coloring) -> String {
    let mut out = format!("palette {}\n", c.palette());
    for (v, col) in c.colors().iter().enumerate() {
        writeln!(out, "v{v} {col}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn palette_is_enforced() {
        assert_eq!(
            Coloring::new(vec![1, 5, 2], 4),
            Err(FumError::PaletteMismatch {
                vertex: 1,
                color: 5,
                palette: 4
            })
        );
        assert!(Coloring::new(vec![0], 4).is_err());
        assert_eq!(Coloring::new(vec![], 0), Err(FumError::InvalidPalette(0)));
    }

    #[test]
    fn text_round_trip() {
        let c = Coloring::new(vec![1, 2, 3], 3).unwrap();
        let text = serialize_coloring(&c);
        assert_eq!(text, "palette 3\nv0 1\nv1 2\nv2 3\n");
        assert_eq!(parse_coloring(&text).unwrap(), c);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_coloring("v0 1\n"),
            Err(FumError::Syntax { .. })
        ));
        assert!(matches!(
            parse_coloring("palette 2\nv0 3\n"),
            Err(FumError::PaletteMismatch { .. })
        ));
        assert!(matches!(
            parse_coloring("palette 2\nv1 1\n"),
            Err(FumError::Syntax { .. })
        ));
        assert!(matches!(
            parse_coloring("palette 2\nv0 one\n"),
            Err(FumError::Syntax { line: 2, .. })
        ));
    }
}
