//! Germ files: one map germ with its unfolding, flags and config overrides.
//!
//! ```text
//! # golden
//! source: x, y
//! target: u, v, w
//! parameter: s
//! branch:
//!   x^2 + s*y
//!   y^2 - s*x
//!   x*y + y^3 + x^3 + s*(x - y)
//! end
//! flags: stabilisation
//! config:
//!   k_max = 12
//!   s0 = 1/2
//! end
//! ```
//!
//! Optional lines: `image: <G>`, `weights: w_1, ..., w_{n+1}, w_s`,
//! `flags:` with any of `stabilisation`, `stable-unfolding`. Config keys:
//! `k_max`, `seed`, `retries`, `s0`, `max_pairs`, `max_degree`,
//! `max_reductions`, `max_colon_degree`. `#` starts a comment.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::parse::parse_polynomial_at;
use crate::germ::{GermFlags, MapGermSpec, ReportConfig};
use crate::poly::{Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct GermFileError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// Config values set in a file; unset ones keep the caller's defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConfigOverrides {
    pub k_max: Option<u32>,
    pub seed: Option<u64>,
    pub retries: Option<u32>,
    pub s0: Option<Rational>,
    pub max_pairs: Option<usize>,
    pub max_degree: Option<u64>,
    pub max_reductions: Option<usize>,
    pub max_colon_degree: Option<u64>,
}

impl ConfigOverrides {
    pub fn apply(&self, config: &mut ReportConfig) {
        if let Some(v) = self.k_max {
            config.k_max = v;
        }
        if let Some(v) = self.seed {
            config.seed = v;
        }
        if let Some(v) = self.retries {
            config.retries = v;
        }
        if let Some(v) = &self.s0 {
            config.s0 = Some(v.clone());
        }
        if let Some(v) = self.max_pairs {
            config.limits.max_pairs = v;
        }
        if let Some(v) = self.max_degree {
            config.limits.max_degree = v;
        }
        if let Some(v) = self.max_reductions {
            config.limits.max_reductions = v;
        }
        if let Some(v) = self.max_colon_degree {
            config.limits.max_colon_degree = v;
        }
    }

    fn entries(&self) -> Vec<(&'static str, String)> {
        let mut out = Vec::new();
        let mut push = |k, v: Option<String>| {
            if let Some(v) = v {
                out.push((k, v));
            }
        };
        push("k_max", self.k_max.map(|v| v.to_string()));
        push("seed", self.seed.map(|v| v.to_string()));
        push("retries", self.retries.map(|v| v.to_string()));
        push("s0", self.s0.as_ref().map(|v| v.to_string()));
        push("max_pairs", self.max_pairs.map(|v| v.to_string()));
        push("max_degree", self.max_degree.map(|v| v.to_string()));
        push("max_reductions", self.max_reductions.map(|v| v.to_string()));
        push("max_colon_degree", self.max_colon_degree.map(|v| v.to_string()));
        out
    }
}

/// A parsed germ file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GermFile {
    pub spec: MapGermSpec,
    pub config: ConfigOverrides,
}

/// Expression text with its line and column.
type Located = (String, usize, usize);

struct Line<'a> {
    number: usize,
    indent: usize,
    text: &'a str,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> GermFileError {
    GermFileError { line, column, message: message.into() }
}

fn significant_lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("");
            let trimmed = body.trim();
            if trimmed.is_empty() {
                return None;
            }
            let indent = body.len() - body.trim_start().len();
            Some(Line { number: i + 1, indent, text: trimmed })
        })
        .collect()
}

/// Splits `key: value`, returning the value and its column.
fn header<'a>(line: &Line<'a>) -> Option<(&'a str, &'a str, usize)> {
    let colon = line.text.find(':')?;
    let key = line.text[..colon].trim();
    let rest = &line.text[colon + 1..];
    let value = rest.trim();
    let column = line.indent + colon + 2 + (rest.len() - rest.trim_start().len());
    Some((key, value, column))
}

fn name_list(value: &str) -> Vec<&str> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn parse_number<T: FromStr>(value: &str, line: usize, column: usize, key: &str) -> Result<T, GermFileError> {
    value.parse().map_err(|_| err(line, column, format!("`{key}` expects a non-negative integer, found `{value}`")))
}

impl GermFile {
    pub fn parse(text: &str) -> Result<GermFile, GermFileError> {
        let lines = significant_lines(text);
        let mut source: Option<(Vec<String>, usize)> = None;
        let mut target: Option<(Vec<String>, usize)> = None;
        let mut parameter: Option<(String, usize)> = None;
        // expressions are parsed once the contexts are known
        let mut branches: Vec<(usize, Vec<Located>)> = Vec::new();
        let mut image: Option<Located> = None;
        let mut flags = GermFlags::default();
        let mut config = ConfigOverrides::default();
        let mut i = 0;
        let block_end = |mut j: usize| -> Result<usize, GermFileError> {
            let start = lines[j - 1].number;
            while j < lines.len() && lines[j].text != "end" {
                j += 1;
            }
            if j == lines.len() {
                return Err(err(start, 1, "block is missing its `end`"));
            }
            Ok(j)
        };
        while i < lines.len() {
            let line = &lines[i];
            let Some((key, value, column)) = header(line) else {
                return Err(err(line.number, line.indent + 1, format!("expected `key: value`, found `{}`", line.text)));
            };
            let seen = |taken: bool| if taken { Err(err(line.number, line.indent + 1, format!("`{key}` given twice"))) } else { Ok(()) };
            match key {
                "source" => {
                    seen(source.is_some())?;
                    source = Some((name_list(value).into_iter().map(String::from).collect(), line.number));
                }
                "target" => {
                    seen(target.is_some())?;
                    target = Some((name_list(value).into_iter().map(String::from).collect(), line.number));
                }
                "parameter" => {
                    seen(parameter.is_some())?;
                    parameter = Some((value.to_string(), line.number));
                }
                "branch" => {
                    if !value.is_empty() {
                        return Err(err(line.number, column, "branch components go on the following lines"));
                    }
                    let end = block_end(i + 1)?;
                    let comps = lines[i + 1..end].iter().map(|l| (l.text.to_string(), l.number, l.indent + 1)).collect();
                    branches.push((line.number, comps));
                    i = end;
                }
                "image" => {
                    seen(image.is_some())?;
                    image = Some((value.to_string(), line.number, column));
                }
                "flags" => {
                    for f in name_list(value) {
                        match f {
                            "stabilisation" => flags.stabilisation = true,
                            "stable-unfolding" => flags.stable_unfolding = true,
                            other => return Err(err(line.number, column, format!("unknown flag `{other}`"))),
                        }
                    }
                }
                "weights" => {
                    seen(flags.weights.is_some())?;
                    let w = name_list(value)
                        .into_iter()
                        .map(|w| parse_number::<u32>(w, line.number, column, "weights"))
                        .collect::<Result<Vec<_>, _>>()?;
                    flags.weights = Some(w);
                }
                "config" => {
                    if !value.is_empty() {
                        return Err(err(line.number, column, "config entries go on the following lines"));
                    }
                    let end = block_end(i + 1)?;
                    for l in &lines[i + 1..end] {
                        let Some((k, v)) = l.text.split_once('=') else {
                            return Err(err(l.number, l.indent + 1, "expected `key = value`"));
                        };
                        let (k, v) = (k.trim(), v.trim());
                        let col = l.indent + l.text.find('=').unwrap_or(0) + 2;
                        match k {
                            "k_max" => config.k_max = Some(parse_number(v, l.number, col, k)?),
                            "seed" => config.seed = Some(parse_number(v, l.number, col, k)?),
                            "retries" => config.retries = Some(parse_number(v, l.number, col, k)?),
                            "max_pairs" => config.max_pairs = Some(parse_number(v, l.number, col, k)?),
                            "max_degree" => config.max_degree = Some(parse_number(v, l.number, col, k)?),
                            "max_reductions" => config.max_reductions = Some(parse_number(v, l.number, col, k)?),
                            "max_colon_degree" => config.max_colon_degree = Some(parse_number(v, l.number, col, k)?),
                            "s0" => config.s0 = Some(parse_rational(v).ok_or_else(|| err(l.number, col, format!("`s0` expects a rational, found `{v}`")))?),
                            other => return Err(err(l.number, l.indent + 1, format!("unknown config key `{other}`"))),
                        }
                    }
                    i = end;
                }
                other => return Err(err(line.number, line.indent + 1, format!("unknown key `{other}`"))),
            }
            i += 1;
        }
        let (source, sline) = source.ok_or_else(|| err(1, 1, "missing `source:` line"))?;
        let (target, _) = target.ok_or_else(|| err(1, 1, "missing `target:` line"))?;
        let (parameter, _) = parameter.ok_or_else(|| err(1, 1, "missing `parameter:` line"))?;
        if branches.is_empty() {
            return Err(err(1, 1, "no `branch:` block"));
        }
        let s: Vec<&str> = source.iter().map(String::as_str).collect();
        let t: Vec<&str> = target.iter().map(String::as_str).collect();
        let (bctx, tctx) = MapGermSpec::contexts(&s, &t, &parameter).map_err(|e| err(sline, 1, e.to_string()))?;
        let mut parsed = Vec::with_capacity(branches.len());
        for (bline, comps) in &branches {
            if comps.len() != t.len() {
                return Err(err(*bline, 1, format!("branch has {} components, expected {}", comps.len(), t.len())));
            }
            let b = comps
                .iter()
                .map(|(text, l, c)| parse_polynomial_at(text, &bctx, *l, *c).map_err(|e| err(e.line, e.column, e.message)))
                .collect::<Result<Vec<_>, _>>()?;
            parsed.push(b);
        }
        let image = match image {
            Some((text, l, c)) => Some(parse_polynomial_at(&text, &tctx, l, c).map_err(|e| err(e.line, e.column, e.message))?),
            None => None,
        };
        let spec = MapGermSpec::from_parts(bctx, tctx, parsed, image, flags).map_err(|e| err(branches[0].0, 1, e.to_string()))?;
        Ok(GermFile { spec, config })
    }
}

/// `a` or `a/b` with integers `a`, `b` (`b != 0`).
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let d: num_bigint::BigInt = d.trim().parse().ok()?;
            if num_traits::Zero::is_zero(&d) {
                return None;
            }
            Some(Rational::new(n.trim().parse().ok()?, d))
        }
        None => Some(Rational::from_integer(text.parse().ok()?)),
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, p: &Polynomial) -> fmt::Result {
    write!(f, "{p}")
}

impl fmt::Display for GermFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let spec = &self.spec;
        writeln!(f, "source: {}", spec.source_names().join(", "))?;
        writeln!(f, "target: {}", spec.target_names().join(", "))?;
        writeln!(f, "parameter: {}", spec.parameter_name())?;
        for b in spec.branches() {
            writeln!(f, "branch:")?;
            for c in b {
                write!(f, "  ")?;
                write_poly(f, c)?;
                writeln!(f)?;
            }
            writeln!(f, "end")?;
        }
        if let Some(g) = spec.image() {
            write!(f, "image: ")?;
            write_poly(f, g)?;
            writeln!(f)?;
        }
        let flags = spec.flags();
        let mut names = Vec::new();
        if flags.stabilisation {
            names.push("stabilisation");
        }
        if flags.stable_unfolding {
            names.push("stable-unfolding");
        }
        if !names.is_empty() {
            writeln!(f, "flags: {}", names.join(", "))?;
        }
        if let Some(w) = &flags.weights {
            let w: Vec<String> = w.iter().map(u32::to_string).collect();
            writeln!(f, "weights: {}", w.join(", "))?;
        }
        let entries = self.config.entries();
        if !entries.is_empty() {
            writeln!(f, "config:")?;
            for (k, v) in entries {
                writeln!(f, "  {k} = {v}")?;
            }
            writeln!(f, "end")?;
        }
        Ok(())
    }
}

/// A hypersurface `h = 0` for the Milnor number.
///
/// ```text
/// variables: x, y
/// function: x^3 + y^2
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypersurfaceFile {
    pub function: Polynomial,
}

impl HypersurfaceFile {
    pub fn parse(text: &str) -> Result<HypersurfaceFile, GermFileError> {
        let lines = significant_lines(text);
        let mut vars: Option<(Vec<String>, usize)> = None;
        let mut function: Option<(String, usize, usize)> = None;
        for line in &lines {
            let Some((key, value, column)) = header(line) else {
                return Err(err(line.number, line.indent + 1, format!("expected `key: value`, found `{}`", line.text)));
            };
            match key {
                "variables" => vars = Some((name_list(value).into_iter().map(String::from).collect(), line.number)),
                "function" => function = Some((value.to_string(), line.number, column)),
                other => return Err(err(line.number, line.indent + 1, format!("unknown key `{other}`"))),
            }
        }
        let (vars, vline) = vars.ok_or_else(|| err(1, 1, "missing `variables:` line"))?;
        let (text, l, c) = function.ok_or_else(|| err(1, 1, "missing `function:` line"))?;
        let ctx = crate::poly::VariableContext::uniform(vars, crate::poly::Role::Target).map_err(|e| err(vline, 1, e.to_string()))?;
        let function = parse_polynomial_at(&text, &ctx, l, c).map_err(|e| err(e.line, e.column, e.message))?;
        Ok(HypersurfaceFile { function })
    }

    /// Recognises a hypersurface file by its `variables:` line.
    pub fn looks_like(text: &str) -> bool {
        significant_lines(text).iter().any(|l| header(l).is_some_and(|(k, _, _)| k == "variables"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOLDEN: &str = "\
# the golden germ
source: x, y
target: u, v, w
parameter: s
branch:
  x^2 + s*y
  y^2 - s*x
  x*y + y^3 + x^3 + s*(x - y)
end
flags: stabilisation
config:
  k_max = 10
  s0 = 1/2
end
";

    #[test]
    fn parses_golden() {
        let f = GermFile::parse(GOLDEN).unwrap();
        assert_eq!(f.spec.n(), 2);
        assert_eq!(f.spec.branches().len(), 1);
        assert!(f.spec.flags().stabilisation);
        assert_eq!(f.config.k_max, Some(10));
        assert_eq!(f.config.s0, Some(Rational::new(1.into(), 2.into())));
    }

    #[test]
    fn round_trip() {
        let f = GermFile::parse(GOLDEN).unwrap();
        let printed = f.to_string();
        assert_eq!(GermFile::parse(&printed).unwrap(), f);
    }

    #[test]
    fn expression_errors_carry_file_positions() {
        let text = GOLDEN.replace("y^2 - s*x", "y^^2 - s*x");
        let e = GermFile::parse(&text).unwrap_err();
        assert_eq!((e.line, e.column), (7, 5));
    }

    #[test]
    fn missing_end() {
        let e = GermFile::parse("source: x\ntarget: u, v\nparameter: s\nbranch:\n  x\n  x^2\n").unwrap_err();
        assert!(e.message.contains("end"));
    }

    #[test]
    fn wrong_component_count() {
        let e = GermFile::parse("source: x\ntarget: u, v\nparameter: s\nbranch:\n  x\nend\n").unwrap_err();
        assert_eq!(e.line, 4);
    }

    #[test]
    fn unknown_flag() {
        let e = GermFile::parse("source: x\ntarget: u, v\nparameter: s\nflags: shiny\n").unwrap_err();
        assert!(e.message.contains("shiny"));
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-3/6"), Some(Rational::new((-1).into(), 2.into())));
        assert_eq!(parse_rational("4"), Some(Rational::from_integer(4.into())));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn hypersurface() {
        let h = HypersurfaceFile::parse("variables: x, y\nfunction: x^3 + y^2\n").unwrap();
        assert_eq!(h.function.num_terms(), 2);
        assert!(HypersurfaceFile::looks_like("variables: x\nfunction: x^2"));
        assert!(!HypersurfaceFile::looks_like(GOLDEN));
    }
}
