//! Output rendering: canonical text (the library's `Display` impls), LaTeX
//! in the conventions of the tables this project reproduces, and a stable
//! JSON term-list schema that parses back to the class it came from.

#[cfg(test)]
use anyhow::{bail, Context, Result};
use bielliptic::getzler::Partition;
use bielliptic::motives::MotiveClass;
use clap::ValueEnum;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

/// One monomial of a motivic class: parallel lists of generator names
/// (`"L"`, `"S[2,8]"`, `"Alt2[1,24]"`) and their exponents, plus the
/// integer coefficient.  The empty generator list is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MotiveTerm {
    pub gen: Vec<String>,
    pub exponents: Vec<u32>,
    pub coeff: i64,
}

/// A motivic class as an ordered term list (canonical display order).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MotiveTerms {
    pub terms: Vec<MotiveTerm>,
}

pub fn motive_terms(x: &MotiveClass) -> MotiveTerms {
    let mut terms = Vec::new();
    for (mono, coeff) in x.display_terms() {
        let mut gen = Vec::new();
        let mut exponents = Vec::new();
        for ((level, k), p) in mono.cusp_factors() {
            gen.push(format!("S[{level},{k}]"));
            exponents.push(p);
        }
        for ((level, k), p) in mono.alt2_factors() {
            gen.push(format!("Alt2[{level},{k}]"));
            exponents.push(p);
        }
        if mono.tate() > 0 {
            gen.push("L".to_string());
            exponents.push(mono.tate());
        }
        terms.push(MotiveTerm {
            gen,
            exponents,
            coeff,
        });
    }
    MotiveTerms { terms }
}

#[cfg(test)]
fn parse_generator(name: &str) -> Result<MotiveClass> {
    if name == "L" {
        return Ok(MotiveClass::tate(1));
    }
    let parse_key = |body: &str| -> Result<(u32, u32)> {
        let (level, weight) = body
            .split_once(',')
            .with_context(|| format!("malformed generator {name:?}"))?;
        Ok((level.trim().parse()?, weight.trim().parse()?))
    };
    if let Some(body) = name.strip_prefix("S[").and_then(|s| s.strip_suffix(']')) {
        let (level, weight) = parse_key(body)?;
        return Ok(MotiveClass::cusp_symbol(level, weight)?);
    }
    if let Some(body) = name.strip_prefix("Alt2[").and_then(|s| s.strip_suffix(']')) {
        let (level, weight) = parse_key(body)?;
        return Ok(MotiveClass::alt2_symbol(level, weight));
    }
    bail!("unknown generator {name:?}")
}

/// Inverse of [`motive_terms`]; the JSON schema round-trips through this.
#[cfg(test)]
pub fn motive_from_terms(t: &MotiveTerms) -> Result<MotiveClass> {
    let mut out = MotiveClass::zero();
    for term in &t.terms {
        if term.gen.len() != term.exponents.len() {
            bail!("generator and exponent lists differ in length");
        }
        let mut mono = MotiveClass::one();
        for (name, &power) in term.gen.iter().zip(&term.exponents) {
            let factor = parse_generator(name)?;
            for _ in 0..power {
                mono = &mono * &factor;
            }
        }
        out += mono.scale(term.coeff);
    }
    Ok(out)
}

pub(crate) fn brace(v: u32) -> String {
    if v < 10 {
        v.to_string()
    } else {
        format!("{{{v}}}")
    }
}

fn latex_cusp(level: u32, k: u32) -> String {
    if level == 1 {
        format!("\\mathbf{{S}}_{}", brace(k))
    } else {
        format!("\\mathbf{{S}}_{}(\\Gamma_0({level}))", brace(k))
    }
}

/// LaTeX rendering of a motivic class, e.g. `\mathbf{L}^2-\mathbf{L}` or
/// `\mathbf{S}_8(\Gamma_0(2))-\mathbf{L}^4+3\mathbf{L}+5`.
pub fn latex_motive(x: &MotiveClass) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (mono, c)) in x.display_terms().into_iter().enumerate() {
        let mut symbol = String::new();
        for ((level, k), p) in mono.cusp_factors() {
            let s = latex_cusp(level, k);
            if p > 1 {
                symbol.push_str(&format!("({s})^{}", brace(p)));
            } else {
                symbol.push_str(&s);
            }
        }
        for ((level, k), p) in mono.alt2_factors() {
            let s = format!("\\Lambda^2{}", latex_cusp(level, k));
            if p > 1 {
                symbol.push_str(&format!("({s})^{}", brace(p)));
            } else {
                symbol.push_str(&s);
            }
        }
        match mono.tate() {
            0 => {}
            1 => symbol.push_str("\\mathbf{L}"),
            t => symbol.push_str(&format!("\\mathbf{{L}}^{}", brace(t))),
        }
        if i == 0 {
            if c < 0 {
                out.push('-');
            }
        } else if c < 0 {
            out.push('-');
        } else {
            out.push('+');
        }
        let mag = c.unsigned_abs();
        if symbol.is_empty() {
            out.push_str(&mag.to_string());
        } else {
            if mag != 1 {
                out.push_str(&mag.to_string());
            }
            out.push_str(&symbol);
        }
    }
    out
}

/// Schur-polynomial label in the subscripted-partition convention:
/// `s_1`, `s_{21}`, `s_{111111}`; the empty partition renders as nothing
/// (its coefficient stands alone).
pub fn latex_schur(p: &Partition) -> String {
    if p.parts().is_empty() {
        return String::new();
    }
    let digits: String = p.parts().iter().map(u32::to_string).collect();
    if digits.len() == 1 {
        format!("s_{digits}")
    } else {
        format!("s_{{{digits}}}")
    }
}

/// One table row in each format, from the Schur expansion of a pointed
/// Euler characteristic.
pub fn euler_row_text(rows: &[(Partition, MotiveClass)]) -> String {
    rows.iter()
        .map(|(p, c)| {
            if p.parts().is_empty() {
                c.to_string()
            } else {
                format!("({c}) s{p}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn euler_row_latex(rows: &[(Partition, MotiveClass)]) -> String {
    let body = rows
        .iter()
        .map(|(p, c)| {
            let label = latex_schur(p);
            if label.is_empty() {
                latex_motive(c)
            } else {
                format!("({}){}", latex_motive(c), label)
            }
        })
        .collect::<Vec<_>>()
        .join("+");
    format!("${body}$")
}

#[cfg(test)]
mod tests {
    use super::*;
    use bielliptic::cohomology::ec_m_label;
    use bielliptic::weylchars::Sp4Label;

    #[test]
    fn json_terms_round_trip() {
        let samples = [
            MotiveClass::zero(),
            MotiveClass::integer(-7),
            MotiveClass::tate_polynomial(&[(4, -1), (1, 3), (0, 5)])
                + MotiveClass::cusp_symbol(2, 8).unwrap(),
            &MotiveClass::cusp_symbol(1, 12).unwrap() * &MotiveClass::cusp_symbol(1, 12).unwrap(),
            MotiveClass::alt2_symbol(1, 24).scale(-2) + MotiveClass::tate(9),
            ec_m_label(Sp4Label::new(6, 0).unwrap()).unwrap(),
        ];
        for x in samples {
            let terms = motive_terms(&x);
            let json = serde_json::to_string(&terms).unwrap();
            let back: MotiveTerms = serde_json::from_str(&json).unwrap();
            assert_eq!(back, terms);
            assert_eq!(motive_from_terms(&back).unwrap(), x, "round trip of {x}");
        }
    }

    #[test]
    fn latex_follows_the_table_conventions() {
        let n0 = MotiveClass::tate_polynomial(&[(2, 1), (1, -1)]);
        assert_eq!(latex_motive(&n0), "\\mathbf{L}^2-\\mathbf{L}");
        let n6 = MotiveClass::cusp_symbol(2, 8).unwrap()
            + MotiveClass::tate_polynomial(&[(4, -1), (1, 3), (0, 5)]);
        assert_eq!(
            latex_motive(&n6),
            "\\mathbf{S}_8(\\Gamma_0(2))-\\mathbf{L}^4+3\\mathbf{L}+5"
        );
        assert_eq!(latex_motive(&MotiveClass::tate(10)), "\\mathbf{L}^{10}");
        assert_eq!(latex_schur(&"2,1".parse().unwrap()), "s_{21}");
        assert_eq!(latex_schur(&"3".parse().unwrap()), "s_3");
        assert_eq!(latex_schur(&"1^6".parse().unwrap()), "s_{111111}");
    }
}
