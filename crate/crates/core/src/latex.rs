//! LaTeX rendering of scalars, polynomials and operators, and a standalone
//! document wrapper.

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::exact::{MPoly, Monomial, ParamScalar, UniPoly, Var};
use crate::operator::FormOperator;

fn var_tex(v: Var) -> &'static str {
    match v {
        Var::Beta => r"\beta",
        Var::Lambda => r"\lambda",
        Var::U => "u",
    }
}

fn rational_tex(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!(r"\tfrac{{{}}}{{{}}}", q.numer(), q.denom())
    }
}

fn monomial_tex(m: &Monomial) -> String {
    Var::ALL
        .into_iter()
        .filter_map(|v| match m.exp(v) {
            0 => None,
            1 => Some(var_tex(v).to_string()),
            e => Some(format!("{}^{{{e}}}", var_tex(v))),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn mpoly_latex(p: &MPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().iter().enumerate() {
        if c.is_negative() {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        let abs = c.abs();
        let mono = monomial_tex(m);
        match (abs.is_one(), mono.is_empty()) {
            (_, true) => out.push_str(&rational_tex(&abs)),
            (true, false) => out.push_str(&mono),
            (false, false) => {
                out.push_str(&rational_tex(&abs));
                out.push(' ');
                out.push_str(&mono);
            }
        }
    }
    out
}

pub fn scalar_latex(c: &ParamScalar) -> String {
    if c.denom().is_one() {
        mpoly_latex(c.numer())
    } else {
        format!(r"\frac{{{}}}{{{}}}", mpoly_latex(c.numer()), mpoly_latex(c.denom()))
    }
}

fn coefficient_tex(c: &ParamScalar) -> String {
    if c.denom().is_one() && c.numer().len() == 1 {
        scalar_latex(c)
    } else {
        format!(r"\left({}\right)", scalar_latex(c))
    }
}

fn power_tex(base: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}^{{{k}}}"),
    }
}

fn term_rows(poly: &UniPoly, base: &str, suffix: &str, rows: &mut Vec<String>) {
    for (k, c) in poly.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let body = [power_tex(base, k), suffix.to_string()]
            .into_iter()
            .filter(|s| !s.is_empty())
            .collect::<Vec<_>>()
            .join(r"\,");
        rows.push(if body.is_empty() {
            coefficient_tex(c)
        } else if c.is_one() {
            body
        } else {
            format!(r"{}\,{}", coefficient_tex(c), body)
        });
    }
}

/// Polynomial in `var`, highest power first.
pub fn unipoly_latex(p: &UniPoly, var: &str) -> String {
    let mut rows = Vec::new();
    term_rows(p, var, "", &mut rows);
    if rows.is_empty() {
        return "0".into();
    }
    rows.reverse();
    rows.join(" + ")
}

const X_TEX: &str = r"(\delta d)";
const Z_TEX: &str = r"(d\delta)";

/// One summand per row, in normal-form order: scalar, `x` powers, `z`
/// powers, the `delta` part and the `d` part.
pub fn operator_rows(op: &FormOperator) -> Vec<String> {
    let mut rows = Vec::new();
    if !op.scalar_part().is_zero() {
        rows.push(coefficient_tex(op.scalar_part()));
    }
    term_rows(op.x_part(), X_TEX, "", &mut rows);
    term_rows(op.z_part(), Z_TEX, "", &mut rows);
    term_rows(op.delta_part(), X_TEX, r"\delta", &mut rows);
    term_rows(op.d_part(), Z_TEX, "d", &mut rows);
    rows
}

pub fn operator_latex(op: &FormOperator) -> String {
    let rows = operator_rows(op);
    if rows.is_empty() {
        "0".into()
    } else {
        rows.join(" + ")
    }
}

/// `lhs = ...` as an `align*` block, one summand per line.
pub fn operator_display(lhs: &str, op: &FormOperator) -> String {
    let rows = operator_rows(op);
    let mut out = String::from("\\begin{align*}\n");
    if rows.is_empty() {
        out.push_str(&format!("{lhs} &= 0\n"));
    } else {
        for (i, r) in rows.iter().enumerate() {
            let lead = if i == 0 { format!("{lhs} &= ") } else { "&\\quad + ".to_string() };
            let end = if i + 1 == rows.len() { "\n" } else { " \\\\\n" };
            out.push_str(&format!("{lead}{r}{end}"));
        }
    }
    out.push_str("\\end{align*}\n");
    out
}

/// A complete document that compiles with a plain LaTeX installation.
pub fn standalone_document(title: &str, body: &str) -> String {
    format!(
        "\\documentclass{{article}}\n\
         \\usepackage{{amsmath}}\n\
         \\usepackage[margin=2cm]{{geometry}}\n\
         \\allowdisplaybreaks\n\
         \\begin{{document}}\n\
         \\section*{{{title}}}\n\
         {body}\
         \\end{{document}}\n"
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::p;

    fn balanced(s: &str) -> bool {
        let mut depth = 0i64;
        for ch in s.chars() {
            match ch {
                '{' => depth += 1,
                '}' => depth -= 1,
                _ => {}
            }
            if depth < 0 {
                return false;
            }
        }
        depth == 0 && s.matches("\\begin{").count() == s.matches("\\end{").count()
    }

    #[test]
    fn scalars() {
        let c = ParamScalar::new(
            (&ParamScalar::beta().pow(2) - &p(4)).numer().clone(),
            (&ParamScalar::lambda() * &p(2)).numer().clone(),
        )
        .unwrap();
        assert_eq!(scalar_latex(&c), r"\frac{\tfrac{1}{2} \beta^{2}-2}{\lambda}");
        assert_eq!(scalar_latex(&p(-3)), "-3");
    }

    #[test]
    fn operator_rendering() {
        let op = &(&FormOperator::x().pow(2) + &FormOperator::delta()).scale(&ParamScalar::beta())
            + &FormOperator::scalar(p(1));
        assert_eq!(
            operator_latex(&op),
            r"1 + \beta\,(\delta d)^{2} + \beta\,\delta"
        );
        let doc = standalone_document("Test", &operator_display("T", &op));
        assert!(balanced(&doc));
        assert!(doc.starts_with("\\documentclass"));
    }
}
