//! Rendering of command results in the three output formats.

use serde_json::{json, Value};
use stiefel_core::checks::SuiteReport;
use stiefel_core::json::{element_to_json_value, pgm_to_json_value};
use stiefel_core::render::{class_latex, class_text, latex_document};
use stiefel_core::{
    BasisLine, Bidegree, Class, CoefficientGroup, Element, MCoefficient, Monomial, PGmElement, PoincarePolynomial,
    Presentation, Result, StiefelPresentation,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

/// A class in either family of rings.
pub enum AnyClass {
    Stiefel(Element),
    Target(PGmElement),
}

fn display_math(lines: &[String]) -> String {
    if lines.len() == 1 {
        return format!("\\[ {} \\]", lines[0]);
    }
    format!("\\begin{{align*}}\n{}\n\\end{{align*}}", lines.join(" \\\\\n"))
}

fn ring_name(pres: &StiefelPresentation) -> String {
    format!("W({},{})", pres.n(), pres.m())
}

fn ring_latex(pres: &StiefelPresentation) -> String {
    if pres.n() == pres.m() {
        format!("\\mathrm{{GL}}_{{{}}}", pres.n())
    } else {
        format!("W_{{{},{}}}", pres.n(), pres.m())
    }
}

fn coeff_latex(pres: &StiefelPresentation) -> String {
    match pres.coeff().modulus() {
        None => "\\mathbb{Z}".into(),
        Some(m) => format!("\\mathbb{{Z}}/{m}"),
    }
}

pub fn class(x: &AnyClass, format: Format) -> String {
    match (x, format) {
        (AnyClass::Stiefel(x), Format::Text) => class_text(x),
        (AnyClass::Target(x), Format::Text) => class_text(x),
        (AnyClass::Stiefel(x), Format::Json) => to_json(&element_to_json_value(x)),
        (AnyClass::Target(x), Format::Json) => to_json(&pgm_to_json_value(x)),
        (AnyClass::Stiefel(x), Format::Latex) => latex_document(&display_math(&[class_latex(x)])),
        (AnyClass::Target(x), Format::Latex) => latex_document(&display_math(&[class_latex(x)])),
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

fn generator_name(i: u32, format: Format) -> String {
    match format {
        Format::Latex => format!("\\rho_{{{i}}}"),
        _ => format!("r{i}"),
    }
}

pub fn presentation(pres: &StiefelPresentation, format: Format) -> Result<String> {
    let mut relations = Vec::new();
    for i in pres.generators().filter(|_| pres.m() > 0) {
        let r = pres.generator(i)?;
        relations.push((i, r.mul(&r)?));
    }
    Ok(match format {
        Format::Text => {
            let mut out = String::new();
            if pres.m() == 0 {
                out.push_str(&format!(
                    "{} is a point: its cohomology ring over {} is M itself, with no generators and no relations.\n",
                    ring_name(pres),
                    pres.coeff()
                ));
                return Ok(out);
            }
            let gens: Vec<String> = pres.generators().map(|i| generator_name(i, format)).collect();
            out.push_str(&format!("H({}; {}) = M[{}] / I\n", ring_name(pres), pres.coeff(), gens.join(", ")));
            out.push_str("generators:\n");
            for i in pres.generators() {
                out.push_str(&format!("  r{i}  {}\n", StiefelPresentation::generator_bidegree(i)));
            }
            out.push_str("relations:\n");
            for (i, sq) in &relations {
                out.push_str(&format!("  r{i}^2 = {}\n", class_text(sq)));
            }
            out.push_str(&format!("rank over M: {}\n", pres.rank()));
            out
        }
        Format::Json => to_json(&json!({
            "n": pres.n(),
            "m": pres.m(),
            "coeff": pres.coeff().to_string(),
            "minus_one_is_square": pres.profile().minus_one_is_square,
            "generators": pres.generators().filter(|_| pres.m() > 0).map(|i| {
                let bd = StiefelPresentation::generator_bidegree(i);
                json!({"name": generator_name(i, format), "index": i, "bidegree": [bd.p, bd.q]})
            }).collect::<Vec<_>>(),
            "relations": relations.iter().map(|(i, sq)| json!({
                "generator": i,
                "square": element_to_json_value(sq),
            })).collect::<Vec<_>>(),
            "rank": pres.rank(),
        })),
        Format::Latex => {
            let ring = format!("H^{{*,*}}({}; {})", ring_latex(pres), coeff_latex(pres));
            let mut lines = Vec::new();
            if pres.m() == 0 {
                lines.push(format!("{ring} &= \\mathbb{{M}}"));
            } else {
                let gens: Vec<String> = pres.generators().map(|i| generator_name(i, format)).collect();
                lines.push(format!("{ring} &= \\mathbb{{M}}[{}] / I", gens.join(", ")));
                for (i, sq) in &relations {
                    lines.push(format!("\\rho_{{{i}}}^2 &= {}", class_latex(sq)));
                }
            }
            latex_document(&display_math(&lines))
        }
    })
}

fn line_class<P: Presentation>(pres: P, line: &BasisLine<P::Key>) -> Result<Class<P>> {
    Class::from_terms(pres, [(line.key.clone(), MCoefficient::minus_one_power(pres.base(), line.minus_one_power))])
}

fn group_counts<K>(lines: &[BasisLine<K>]) -> (usize, usize) {
    let free = lines.iter().filter(|l| matches!(l.group, CoefficientGroup::Ring(_))).count();
    (free, lines.len() - free)
}

fn summand_text(free: usize, torsion: usize, latex: bool) -> String {
    let mut parts = Vec::new();
    if free > 0 {
        parts.push(if latex { format!("R^{{{free}}}") } else { format!("R^{free}") });
    }
    if torsion > 0 {
        parts.push(if latex { format!("(R/2R)^{{{torsion}}}") } else { format!("(R/2R)^{torsion}") });
    }
    match (parts.is_empty(), latex) {
        (true, _) => "0".into(),
        (false, true) => parts.join(" \\oplus "),
        (false, false) => parts.join(" ⊕ "),
    }
}

pub fn basis(
    pres: &StiefelPresentation,
    bd: Bidegree,
    lines: &[BasisLine<Monomial>],
    format: Format,
) -> Result<String> {
    let (free, torsion) = group_counts(lines);
    let classes = lines.iter().map(|l| line_class(*pres, l)).collect::<Result<Vec<_>>>()?;
    Ok(match format {
        Format::Text => {
            let mut out =
                format!("H^{bd}({}; {}) = {}\n", ring_name(pres), pres.coeff(), summand_text(free, torsion, false));
            for (line, x) in lines.iter().zip(&classes) {
                out.push_str(&format!("  {}  {}\n", class_text(x), line.group));
            }
            out
        }
        Format::Json => to_json(&json!({
            "bidegree": [bd.p, bd.q],
            "free_rank": free,
            "two_torsion_rank": torsion,
            "lines": lines.iter().map(|l| json!({
                "gens": l.key.indices(),
                "k": l.minus_one_power,
                "group": l.group.to_string(),
            })).collect::<Vec<_>>(),
        })),
        Format::Latex => {
            let mut rows = vec![format!(
                "H^{{{},{}}}({}; {}) &\\cong {}",
                bd.p,
                bd.q,
                ring_latex(pres),
                coeff_latex(pres),
                summand_text(free, torsion, true)
            )];
            for x in &classes {
                rows.push(format!("& {}", class_latex(x)));
            }
            latex_document(&display_math(&rows))
        }
    })
}

pub fn series(pres: &StiefelPresentation, poly: &PoincarePolynomial, format: Format) -> String {
    match format {
        Format::Text => format!("P_{}(T) = {}\n", ring_name(pres), poly),
        Format::Json => to_json(&json!({
            "n": pres.n(),
            "m": pres.m(),
            "terms": poly.0.iter().map(|(bd, c)| json!({"p": bd.p, "q": bd.q, "count": c})).collect::<Vec<_>>(),
            "total": poly.total(),
        })),
        Format::Latex => {
            let terms: Vec<String> = poly
                .0
                .iter()
                .map(|(bd, c)| match (*bd == Bidegree::ZERO, *c) {
                    (true, c) => c.to_string(),
                    (false, 1) => format!("T^{{({},{})}}", bd.p, bd.q),
                    (false, c) => format!("{c}\\,T^{{({},{})}}", bd.p, bd.q),
                })
                .collect();
            latex_document(&display_math(&[format!("P_{{{}}}(T) = {}", ring_latex(pres), terms.join(" + "))]))
        }
    }
}

pub fn kernel(bd: Bidegree, generators: &[Element], format: Format) -> String {
    match format {
        Format::Text if generators.is_empty() => format!("kernel in {bd}: 0\n"),
        Format::Text => {
            let mut out = format!("kernel in {bd}: generated by\n");
            for x in generators {
                out.push_str(&format!("  {}\n", class_text(x)));
            }
            out
        }
        Format::Json => to_json(&json!({
            "bidegree": [bd.p, bd.q],
            "generators": generators.iter().map(element_to_json_value).collect::<Vec<_>>(),
        })),
        Format::Latex => {
            let body: Vec<String> = generators.iter().map(class_latex).collect();
            let span =
                if body.is_empty() { "0".to_string() } else { format!("\\langle {} \\rangle", body.join(",\\ ")) };
            latex_document(&display_math(&[format!("\\ker^{{{},{}}} = {span}", bd.p, bd.q)]))
        }
    }
}

pub fn reports(seed: u64, reports: &[SuiteReport], format: Format) -> String {
    let passed = reports.iter().all(SuiteReport::passed);
    match format {
        Format::Text => {
            let mut out = format!("seed {seed}\n");
            for r in reports {
                out.push_str(&format!("{r}\n"));
            }
            out.push_str(if passed { "all properties hold\n" } else { "some properties FAILED\n" });
            out
        }
        Format::Json => to_json(&json!({
            "seed": seed,
            "passed": passed,
            "suites": reports.iter().map(|r| json!({
                "name": r.name,
                "cases": r.cases,
                "failures": r.failures,
            })).collect::<Vec<Value>>(),
        })),
        Format::Latex => {
            let mut body = String::from("\\begin{tabular}{lrl}\nsuite & cases & result \\\\\n\\hline\n");
            for r in reports {
                let status = if r.passed() { "pass".to_string() } else { format!("{} failures", r.failures.len()) };
                body.push_str(&format!("\\texttt{{{}}} & {} & {} \\\\\n", r.name, r.cases, status));
            }
            body.push_str("\\end{tabular}");
            latex_document(&body)
        }
    }
}
