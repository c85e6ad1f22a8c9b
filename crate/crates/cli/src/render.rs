use std::fmt::Write as _;

use qvdomain::domain::analyze;
use qvdomain::io::{Object, Validation};
use qvdomain::order::validate_lorder;
use qvdomain::quantale::check_residuation_laws;
use qvdomain::{CheckResult, ClosureSpace, Error, LOrderedSet, Result};

fn yes_no(c: &CheckResult) -> &'static str {
    if c.passed {
        "yes"
    } else {
        "no"
    }
}

pub fn validation(source: &str, v: &Validation) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "validate {} {source}", v.kind);
    for c in &v.required.checks {
        let _ = writeln!(out, "  {c}");
    }
    if !v.info.checks.is_empty() {
        let _ = writeln!(out, "  informational:");
    }
    for c in &v.info.checks {
        let _ = writeln!(out, "    {c}");
    }
    let _ = writeln!(out, "result: {}", if v.passed() { "PASS" } else { "FAIL" });
    out
}

/// Prints the degree table of an L-ordered set, one row per point.
fn degree_table(out: &mut String, p: &LOrderedSet, heading: &str) {
    let q = p.quantale();
    let width = p.labels().iter().map(|l| l.chars().count()).max().unwrap_or(1);
    let _ = writeln!(out, "  {heading}:");
    for x in 0..p.size() {
        let row: Vec<&str> = (0..p.size()).map(|y| q.label(p.degree(x, y))).collect();
        let _ = writeln!(out, "    {:<width$}  {}", p.label(x), row.join(" "));
    }
}

fn is_cap(e: &Error) -> bool {
    matches!(e, Error::CapExceeded { .. } | Error::TooLarge { .. })
}

/// Domain-theoretic part of an analysis; enumeration caps become warnings.
fn domain_section(out: &mut String, p: &LOrderedSet) -> Result<()> {
    let a = match analyze(p) {
        Ok(a) => a,
        Err(e) if is_cap(&e) => {
            let _ = writeln!(out, "  warning: domain analysis omitted: {e}");
            return Ok(());
        }
        Err(e) => return Err(e),
    };
    let _ = writeln!(out, "  ldcpo: {}", yes_no(&a.ldcpo));
    if !a.ldcpo.passed {
        let _ = writeln!(out, "    {}", a.ldcpo);
        return Ok(());
    }
    if let Some(c) = &a.continuous {
        let _ = writeln!(out, "  continuous: {}", yes_no(c));
    }
    if let Some(c) = &a.algebraic {
        let _ = writeln!(out, "  algebraic: {}", yes_no(c));
    }
    if a.compact.len() == p.size() {
        let _ = writeln!(out, "  K(P): all");
    } else {
        let _ = writeln!(out, "  K(P): {{{}}}", a.compact.join(", "));
    }
    match &a.way_below {
        Some(rows) => {
            let _ = writeln!(out, "  way-below (row x lists ⇓x(y) over y):");
            let width = p.labels().iter().map(|l| l.chars().count()).max().unwrap_or(1);
            for (x, row) in rows.iter().enumerate() {
                let _ = writeln!(out, "    {:<width$}  {}", p.label(x), row.join(" "));
            }
        }
        None => {
            let _ = writeln!(out, "  warning: way-below table omitted for {} points", p.size());
        }
    }
    Ok(())
}

fn space_section(out: &mut String, s: &ClosureSpace) -> Result<()> {
    let g = s.validate_generalized()?;
    let _ = writeln!(out, "  operator: {}", s.operator().kind());
    let _ = writeln!(out, "  {g}");
    if !g.passed {
        return Ok(());
    }
    let it = s.is_interpolative()?;
    let _ = writeln!(out, "  {it}");
    let _ = writeln!(out, "  {}", s.is_l_closure_space()?);
    let (family, index) = s.point_closures();
    let _ = writeln!(out, "  point closures:");
    for (x, &i) in index.iter().enumerate() {
        let _ = writeln!(out, "    {}  {}", s.labels()[x], render_values(s, &family[i]));
    }
    if !it.passed {
        return Ok(());
    }
    match s.dir_closed_sets() {
        Ok(c) => {
            let _ = writeln!(out, "  directed closed sets: {}", c.size());
            degree_table(out, &c, "sub table");
            domain_section(out, &c)?;
        }
        Err(e) if is_cap(&e) => {
            let _ = writeln!(out, "  warning: directed closed sets omitted: {e}");
        }
        Err(e) => return Err(e),
    }
    Ok(())
}

fn render_values(s: &ClosureSpace, v: &[qvdomain::Elem]) -> String {
    let q = s.quantale();
    format!("[{}]", v.iter().map(|&a| q.label(a)).collect::<Vec<_>>().join(","))
}

/// Report text and exit code for `analyze`.
pub fn analysis(name: &str, obj: &Object) -> Result<(String, u8)> {
    let mut out = String::new();
    match obj {
        Object::Quantale(q) => {
            let _ = writeln!(out, "quantale `{name}`: {} elements", q.size());
            let _ = writeln!(out, "  unit: {}", q.label(q.unit()));
            let _ = writeln!(out, "  integral: {}", if q.is_integral() { "yes" } else { "no" });
            let laws = check_residuation_laws(q);
            for c in &laws.checks {
                let _ = writeln!(out, "  {c}");
            }
            let _ = writeln!(out, "  tensor:");
            for a in q.elements() {
                let row: Vec<&str> = q.elements().map(|b| q.label(q.tensor(a, b))).collect();
                let _ = writeln!(out, "    {:<4} {}", q.label(a), row.join(" "));
            }
        }
        Object::LOrderedSet(p) => {
            let _ = writeln!(out, "lordered-set `{name}`: {} points", p.size());
            domain_section(&mut out, p)?;
        }
        Object::ClosureSpace(s) => {
            let _ = writeln!(out, "closure-space `{name}`: {} points", s.size());
            space_section(&mut out, s)?;
        }
        Object::Relation(r) => {
            let _ = writeln!(
                out,
                "relation `{name}`: {} x {} points",
                r.source().size(),
                r.target().size()
            );
            let _ = writeln!(out, "  {}", r.validate()?);
            let q = r.quantale();
            for x in 0..r.source().size() {
                let row: Vec<&str> = r.row(x).iter().map(|&d| q.label(d)).collect();
                let _ = writeln!(out, "    {}  {}", r.source().labels()[x], row.join(" "));
            }
            match qvdomain::approx::psi_of(r) {
                Ok(m) => map_images(&mut out, &m)?,
                Err(e) if is_cap(&e) => {
                    let _ = writeln!(out, "  warning: ψ omitted: {e}");
                }
                Err(e) => return Err(e),
            }
        }
        Object::ScottMap(m) => {
            let _ = writeln!(out, "scott-map `{name}`: {} directed closed sets", m.images().len());
            map_images(&mut out, m)?;
        }
    }
    Ok((out, 0))
}

fn map_images(out: &mut String, m: &qvdomain::ScottMap) -> Result<()> {
    let _ = writeln!(out, "  images:");
    for img in m.image_table()? {
        let _ = writeln!(out, "    {} -> {}", img.from, img.to);
    }
    Ok(())
}

/// Checks run on a freshly constructed object before it is registered.
pub fn construction_checks(obj: &Object) -> Result<(String, bool)> {
    let mut out = String::new();
    let ok = match obj {
        Object::ClosureSpace(s) => {
            let g = s.validate_generalized()?;
            let _ = writeln!(out, "  {g}");
            if g.passed {
                let _ = writeln!(out, "  {}", s.is_interpolative()?);
                let _ = writeln!(out, "  {}", s.is_l_closure_space()?);
            }
            g.passed
        }
        Object::Relation(r) => {
            let v = r.validate()?;
            let _ = writeln!(out, "  {v}");
            v.passed
        }
        Object::ScottMap(_) => {
            let _ = writeln!(out, "  {}", CheckResult::pass("scott-continuous"));
            true
        }
        Object::LOrderedSet(p) => {
            let v = validate_lorder(p.quantale(), p.labels(), p.table())?.summary("lorder");
            let _ = writeln!(out, "  {v}");
            let _ = writeln!(out, "  {}", p.is_ldcpo()?);
            v.passed
        }
        Object::Quantale(_) => true,
    };
    Ok((out, ok))
}
