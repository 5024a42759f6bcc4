//! CPLEX LP text output.
//!
//! Rows are scaled by the least common multiple of their denominators so
//! every row is written with exact integer coefficients. Objective
//! coefficients and bounds are written as exact decimals when they
//! terminate; otherwise bounds are rounded outward to nine decimals.

use std::fmt::Write as _;
use std::path::Path;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::system::{ConstraintSystem, LinExpr, ObjSense, VarKind};
use crate::error::{Error, Result};
use crate::rational::{format_decimal, int, lcm_of_denominators, terminating_decimal, Rational};

const TERMS_PER_LINE: usize = 8;

fn number(r: &Rational) -> String {
    terminating_decimal(r).unwrap_or_else(|| format_decimal(r, 15))
}

fn bound(r: &Rational, round_up: bool) -> String {
    if let Some(s) = terminating_decimal(r) {
        return s;
    }
    let scale = int(1_000_000_000);
    let scaled = *r * scale;
    let whole = if round_up {
        Integer::div_ceil(scaled.numer(), scaled.denom())
    } else {
        Integer::div_floor(scaled.numer(), scaled.denom())
    };
    format_decimal(&(Rational::from_integer(whole) / scale), 9)
}

fn write_terms(
    out: &mut String,
    cs: &ConstraintSystem,
    expr: &LinExpr,
    scale: &Rational,
    integral: bool,
) {
    if expr.is_empty() {
        out.push_str(" 0");
        return;
    }
    for (k, (v, c)) in expr.terms().iter().enumerate() {
        if k > 0 && k % TERMS_PER_LINE == 0 {
            out.push_str("\n  ");
        }
        let c = *c * scale;
        let sign = if c.is_negative() { "-" } else { "+" };
        if k > 0 || c.is_negative() {
            let _ = write!(out, " {sign}");
        }
        let mag = c.abs();
        let name = &cs.variables()[*v].name;
        if mag.is_one() {
            let _ = write!(out, " {name}");
        } else if integral {
            let _ = write!(out, " {} {name}", mag.to_integer());
        } else {
            let _ = write!(out, " {} {name}", number(&mag));
        }
    }
}

pub fn write_lp(cs: &ConstraintSystem) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "\\ netopt model over {} nodes", cs.nodes);
    out.push_str(match cs.objective.sense {
        ObjSense::Maximize => "Maximize\n",
        ObjSense::Minimize => "Minimize\n",
    });
    out.push_str(" obj:");
    write_terms(&mut out, cs, &cs.objective.expr, &int(1), false);
    out.push_str("\nSubject To\n");
    for c in cs.constraints() {
        let scale = int(lcm_of_denominators(
            c.expr.terms().iter().map(|t| &t.1).chain([&c.rhs]),
        ));
        let _ = write!(out, " {}:", c.name);
        write_terms(&mut out, cs, &c.expr, &scale, true);
        let _ = writeln!(
            out,
            " {} {}",
            c.relation.symbol(),
            (c.rhs * scale).to_integer()
        );
    }
    let mut bounds = String::new();
    for v in cs
        .variables()
        .iter()
        .filter(|v| v.kind == VarKind::Continuous)
    {
        let name = &v.name;
        let _ = match (&v.lower, &v.upper) {
            (Some(l), None) if l.is_zero() => Ok(()),
            (None, None) => writeln!(bounds, " {name} free"),
            (Some(l), None) => writeln!(bounds, " {name} >= {}", bound(l, false)),
            (None, Some(u)) => writeln!(bounds, " -inf <= {name} <= {}", bound(u, true)),
            (Some(l), Some(u)) => writeln!(
                bounds,
                " {} <= {name} <= {}",
                bound(l, false),
                bound(u, true)
            ),
        };
    }
    // binaries whose bounds are fixed tighter than [0, 1]
    for v in cs.variables().iter().filter(|v| v.kind == VarKind::Binary) {
        if let (Some(l), Some(u)) = (&v.lower, &v.upper) {
            if l == u {
                let _ = writeln!(bounds, " {} = {}", v.name, number(l));
            }
        }
    }
    if !bounds.is_empty() {
        out.push_str("Bounds\n");
        out.push_str(&bounds);
    }
    let binaries: Vec<&str> = cs
        .variables()
        .iter()
        .filter(|v| v.kind == VarKind::Binary)
        .map(|v| v.name.as_str())
        .collect();
    if !binaries.is_empty() {
        out.push_str("Binaries\n");
        for chunk in binaries.chunks(TERMS_PER_LINE) {
            let _ = writeln!(out, " {}", chunk.join(" "));
        }
    }
    out.push_str("End\n");
    out
}

pub fn export_lp(cs: &ConstraintSystem, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, write_lp(cs)).map_err(|e| Error::file(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::system::Relation;

    #[test]
    fn empty_system() {
        let text = write_lp(&ConstraintSystem::new(0));
        assert_eq!(
            text,
            "\\ netopt model over 0 nodes\nMinimize\n obj: 0\nSubject To\nEnd\n"
        );
    }

    #[test]
    fn rows_are_scaled_to_integers() {
        let mut cs = ConstraintSystem::new(0);
        let a = cs.nonnegative("a");
        let b = cs.nonnegative("b");
        let e = LinExpr::from_terms([(a, int(1)), (b, Rational::new(7, 10))]);
        cs.constrain("r", e, Relation::Le, Rational::new(21, 5));
        assert!(write_lp(&cs).contains(" r: 10 a + 7 b <= 42\n"));
    }

    #[test]
    fn outward_rounding() {
        assert_eq!(bound(&Rational::new(1, 3), true), "0.333333334");
        assert_eq!(bound(&Rational::new(1, 3), false), "0.333333333");
        assert_eq!(bound(&Rational::new(-1, 3), false), "-0.333333334");
        assert_eq!(bound(&Rational::new(7, 2), true), "3.5");
    }
}
