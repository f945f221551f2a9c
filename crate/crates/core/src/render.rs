//! Plain-text and LaTeX rendering.
//!
//! Text uses `r<i>` for `rho_i`, `s` for `sigma`, `e` for `eta` and `{−1}`
//! for the base class; LaTeX uses `\rho_i`, `\sigma`, `\eta` and `\{-1\}`.

use crate::class::{Class, Presentation};
use crate::coeff::MCoefficient;
use crate::stiefel::Monomial;
use crate::target::PGmMonomial;

pub const MINUS_ONE_TEXT: &str = "{−1}";

/// Rendering of a basis key.
pub trait RenderKey {
    /// `None` for the unit.
    fn text(&self) -> Option<String>;
    fn latex(&self) -> Option<String>;
}

impl RenderKey for Monomial {
    fn text(&self) -> Option<String> {
        (!self.is_unit()).then(|| self.to_string())
    }

    fn latex(&self) -> Option<String> {
        (!self.is_unit()).then(|| self.indices().iter().map(|i| format!("\\rho_{{{i}}}")).collect())
    }
}

impl RenderKey for PGmMonomial {
    fn text(&self) -> Option<String> {
        (self.sigma || self.eta > 0).then(|| self.to_string())
    }

    fn latex(&self) -> Option<String> {
        let mut out = String::new();
        if self.sigma {
            out.push_str("\\sigma");
        }
        match self.eta {
            0 => {}
            1 => out.push_str("\\eta"),
            e => out.push_str(&format!("\\eta^{{{e}}}")),
        }
        (!out.is_empty()).then_some(out)
    }
}

fn coefficient_terms(c: &MCoefficient, latex: bool) -> Vec<String> {
    c.terms()
        .map(|(k, v)| {
            let l = if latex { "\\{-1\\}" } else { MINUS_ONE_TEXT };
            match (k, v) {
                (0, v) => v.to_string(),
                (1, _) => l.to_string(),
                (k, _) if latex => format!("{l}^{{{k}}}"),
                (k, _) => format!("{l}^{k}"),
            }
        })
        .collect()
}

fn join_signed(parts: Vec<String>) -> String {
    let mut out = String::new();
    for (t, part) in parts.into_iter().enumerate() {
        match (t, part.strip_prefix('-')) {
            (0, _) => out.push_str(&part),
            (_, Some(rest)) => {
                out.push_str(" - ");
                out.push_str(rest);
            }
            (_, None) => {
                out.push_str(" + ");
                out.push_str(&part);
            }
        }
    }
    out
}

pub fn mcoefficient_text(c: &MCoefficient) -> String {
    if c.is_zero() {
        return "0".into();
    }
    join_signed(coefficient_terms(c, false))
}

fn render_class<P>(x: &Class<P>, latex: bool) -> String
where
    P: Presentation,
    P::Key: RenderKey,
{
    if x.is_zero() {
        return "0".into();
    }
    let parts = x
        .terms()
        .map(|(key, c)| {
            let key_str = if latex { key.latex() } else { key.text() };
            let coeff = coefficient_terms(c, latex);
            match (key_str, coeff.as_slice()) {
                (None, _) => join_signed(coeff),
                (Some(k), [one]) if one == "1" => k,
                (Some(k), [neg]) if neg == "-1" => format!("-{k}"),
                (Some(k), [single]) => format!("{single} {k}"),
                (Some(k), _) => format!("({}) {k}", join_signed(coeff)),
            }
        })
        .collect();
    join_signed(parts)
}

pub fn class_text<P>(x: &Class<P>) -> String
where
    P: Presentation,
    P::Key: RenderKey,
{
    render_class(x, false)
}

pub fn class_latex<P>(x: &Class<P>) -> String
where
    P: Presentation,
    P::Key: RenderKey,
{
    render_class(x, true)
}

/// Wraps a display-math body in a document that compiles on its own.
pub fn latex_document(body: &str) -> String {
    format!("\\documentclass{{article}}\n\\usepackage{{amsmath}}\n\\begin{{document}}\n{body}\n\\end{{document}}\n")
}
