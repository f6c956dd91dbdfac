//! Line-oriented pulse-program text format.
//!
//! ```text
//! # comments run to end of line
//! frame b offset -0.5piJ        # omega_b' = omega_b - pi J
//! pulse b -x 22.5deg
//! delay 1/(2J)
//! pulse a phase:0.3 1.2rad
//! delay 2.5ms
//! grad z
//! ```
//!
//! `frame` lines must precede the first event. Degree angles and `k/J`
//! delays are stored as exact rationals.

use super::event::{Delay, PhaseAxis, PulseEvent, SequenceProgram};
use super::params::{FrameOffset, SpinSystemParams};
use crate::angle::{parse_rational, Angle, Rational};
use crate::error::{Error, Result};
use crate::quantum::Subsystem;

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
    end_column: usize,
}

impl<'a> Line<'a> {
    fn err(&self, column: usize, message: impl Into<String>) -> Error {
        Error::Parse { line: self.number, column, message: message.into() }
    }

    fn token(&self, idx: usize, expected: &str) -> Result<Token<'a>> {
        self.tokens.get(idx).copied().ok_or_else(|| self.err(self.end_column, format!("expected {expected}")))
    }

    fn finish(&self, count: usize) -> Result<()> {
        match self.tokens.get(count) {
            Some(t) => Err(self.err(t.column, format!("unexpected token '{}'", t.text))),
            None => Ok(()),
        }
    }
}

fn tokenize(number: usize, raw: &str) -> Line<'_> {
    let content = raw.split('#').next().unwrap_or("");
    let mut tokens = Vec::new();
    let mut start = None;
    for (i, ch) in content.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                tokens.push(Token { text: &content[s..i], column: column_of(content, s) });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        tokens.push(Token { text: &content[s..], column: column_of(content, s) });
    }
    Line { number, tokens, end_column: column_of(content, content.trim_end().len()) }
}

fn column_of(s: &str, byte: usize) -> usize {
    s[..byte].chars().count() + 1
}

/// Parses a program, resolving `k/J` delays and `piJ` offsets against `base.j_hz`.
pub fn parse_sequence(text: &str, base: &SpinSystemParams) -> Result<SequenceProgram> {
    let mut params = *base;
    let mut events = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = tokenize(idx + 1, raw);
        let Some(head) = line.tokens.first().copied() else { continue };
        match head.text {
            "pulse" => events.push(parse_pulse(&line)?),
            "delay" => events.push(parse_delay(&line)?),
            "grad" => {
                let axis = line.token(1, "gradient axis 'z'")?;
                if axis.text != "z" {
                    return Err(line.err(axis.column, format!("unsupported gradient axis '{}' (only z)", axis.text)));
                }
                line.finish(2)?;
                events.push(PulseEvent::Gradient);
            }
            "frame" => {
                if !events.is_empty() {
                    return Err(line.err(head.column, "frame directives must precede all events"));
                }
                let (spin, offset) = parse_frame(&line)?;
                params.set_offset(spin, offset);
                params.validate().map_err(|e| line.err(head.column, e.to_string()))?;
            }
            other => {
                return Err(line.err(
                    head.column,
                    format!("unknown directive '{other}', expected one of pulse, delay, grad, frame"),
                ))
            }
        }
    }
    SequenceProgram::new(events, params)
}

fn parse_spin(line: &Line<'_>, tok: Token<'_>) -> Result<Subsystem> {
    tok.text
        .parse::<Subsystem>()
        .map_err(|_| line.err(tok.column, format!("unknown spin label '{}' (expected a or b)", tok.text)))
}

fn parse_pulse(line: &Line<'_>) -> Result<PulseEvent> {
    let spin = parse_spin(line, line.token(1, "spin label (a or b)")?)?;
    let axis_tok = line.token(2, "pulse axis (x, -x, y, -y or phase:<radians>)")?;
    let axis = match axis_tok.text {
        "x" => PhaseAxis::X,
        "-x" => PhaseAxis::MinusX,
        "y" => PhaseAxis::Y,
        "-y" => PhaseAxis::MinusY,
        t => match t.strip_prefix("phase:").map(str::parse::<f64>) {
            Some(Ok(phi)) if phi.is_finite() => PhaseAxis::Phase(phi),
            _ => {
                return Err(line.err(
                    axis_tok.column,
                    format!("invalid pulse axis '{t}', expected x, -x, y, -y or phase:<radians>"),
                ))
            }
        },
    };
    let angle_tok = line.token(3, "flip angle with unit (deg or rad)")?;
    let angle = parse_flip_angle(line, angle_tok)?;
    line.finish(4)?;
    PulseEvent::rotation(spin, axis, angle).map_err(|e| line.err(angle_tok.column, e.to_string()))
}

fn parse_flip_angle(line: &Line<'_>, tok: Token<'_>) -> Result<Angle> {
    let t = tok.text;
    if let Some(deg) = t.strip_suffix("deg") {
        return parse_rational(deg)
            .map(Angle::degrees)
            .ok_or_else(|| line.err(tok.column, format!("invalid angle value '{deg}'")));
    }
    if let Some(rad) = t.strip_suffix("rad") {
        return match rad.parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(Angle::Radians(x)),
            _ => Err(line.err(tok.column, format!("invalid angle value '{rad}'"))),
        };
    }
    if t.parse::<f64>().is_ok() || parse_rational(t).is_some() {
        return Err(line.err(tok.column + t.len(), "angle unit missing (use deg or rad)"));
    }
    Err(line.err(tok.column, format!("invalid flip angle '{t}', expected e.g. 90deg or 1.57rad")))
}

fn parse_delay(line: &Line<'_>) -> Result<PulseEvent> {
    let tok = line.token(1, "delay duration (e.g. 1/(2J), 2.5ms)")?;
    let t = tok.text;
    let invalid =
        || line.err(tok.column, format!("invalid delay '{t}', expected <k>/J, 1/(<q>J) or <number><s|ms|us>"));
    let delay = if let Some(q) = t.strip_prefix("1/(").and_then(|r| r.strip_suffix("J)")) {
        let q = parse_rational(q).filter(|q| *q.numer() != 0).ok_or_else(invalid)?;
        Delay::PerJ(Rational::from_integer(1) / q)
    } else if let Some(k) = t.strip_suffix("/J") {
        Delay::PerJ(parse_rational(k).ok_or_else(invalid)?)
    } else {
        let (num, scale) = if let Some(v) = t.strip_suffix("ms") {
            (v, 1e-3)
        } else if let Some(v) = t.strip_suffix("us") {
            (v, 1e-6)
        } else if let Some(v) = t.strip_suffix('s') {
            (v, 1.0)
        } else if t.parse::<f64>().is_ok() {
            return Err(line.err(tok.column + t.len(), "time unit missing (use s, ms, us or /J)"));
        } else {
            return Err(invalid());
        };
        let v: f64 = num.parse().ok().filter(|v: &f64| v.is_finite()).ok_or_else(invalid)?;
        // seconds are kept verbatim so that rendering round-trips
        Delay::Seconds(if scale == 1.0 { v } else { v * scale })
    };
    line.finish(2)?;
    PulseEvent::delay(delay).map_err(|e| line.err(tok.column, e.to_string()))
}

fn parse_frame(line: &Line<'_>) -> Result<(Subsystem, FrameOffset)> {
    let spin = parse_spin(line, line.token(1, "spin label (a or b)")?)?;
    let kw = line.token(2, "'offset'")?;
    if kw.text != "offset" {
        return Err(line.err(kw.column, format!("expected 'offset', found '{}'", kw.text)));
    }
    let tok = line.token(3, "frame offset with unit (Hz or piJ)")?;
    let t = tok.text;
    let offset = if let Some(k) = t.strip_suffix("piJ") {
        FrameOffset::InJ(parse_rational(k).ok_or_else(|| line.err(tok.column, format!("invalid offset value '{k}'")))?)
    } else if let Some(v) = t.strip_suffix("Hz") {
        match v.parse::<f64>() {
            Ok(v) if v.is_finite() => FrameOffset::Hz(v),
            _ => return Err(line.err(tok.column, format!("invalid offset value '{v}'"))),
        }
    } else {
        return Err(line.err(tok.column, format!("frame offset '{t}' needs a unit (Hz or piJ)")));
    };
    line.finish(4)?;
    Ok((spin, offset))
}

/// Renders a program in the canonical text form accepted by [`parse_sequence`].
pub fn render_sequence(prog: &SequenceProgram) -> String {
    let mut out = String::new();
    let p = prog.params();
    for (spin, off) in [(Subsystem::A, p.offset_a), (Subsystem::B, p.offset_b)] {
        if !off.is_zero() {
            out.push_str(&format!("frame {spin} offset {off}\n"));
        }
    }
    for ev in prog.events() {
        out.push_str(&ev.to_string());
        out.push('\n');
    }
    out
}
