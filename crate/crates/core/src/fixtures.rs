//! Catalog of fixture quantales.
//!
//! Ids:
//! - `boolean`: {0, 1} with ⊗ = ∧.
//! - `lukasiewicz-N`: the N-chain 0 < 1/(N−1) < … < 1 with a⊗b = max(0, a+b−1).
//! - `goedel-N`: the N-chain with ⊗ = min.
//! - `nonintegral-3`: the chain 0 < u < 1 with unit u and 1⊗1 = 1.
//! - `prod(A,B)`: componentwise product of two fixtures.

use crate::error::{Error, Result};
use crate::quantale::{FiniteQuantale, QuantaleDef};

pub const FIXTURE_IDS: &[&str] = &["boolean", "lukasiewicz-3", "goedel-3", "nonintegral-3"];

pub fn fixture(id: &str) -> Result<FiniteQuantale> {
    FiniteQuantale::from_def(&fixture_def(id)?)
}

pub fn fixture_def(id: &str) -> Result<QuantaleDef> {
    let id = id.trim();
    if id == "boolean" {
        return Ok(chain(2, |a, b| a.min(b), 1));
    }
    if id == "nonintegral-3" {
        let mut def = chain(3, nonintegral_tensor, 1);
        def.elements = vec!["0".into(), "u".into(), "1".into()];
        relabel(&mut def, &["0", "1/2", "1"], &["0", "u", "1"]);
        def.unit = "u".into();
        return Ok(def);
    }
    if let Some(n) = id.strip_prefix("lukasiewicz-") {
        let n = parse_size(id, n)?;
        return Ok(chain(n, move |a, b| (a + b).saturating_sub(n - 1), n - 1));
    }
    if let Some(n) = id.strip_prefix("goedel-") {
        let n = parse_size(id, n)?;
        return Ok(chain(n, |a, b| a.min(b), n - 1));
    }
    if let Some(inner) = id.strip_prefix("prod(").and_then(|s| s.strip_suffix(')')) {
        let (a, b) = split_top_level(inner).ok_or_else(|| Error::UnknownFixture(id.to_string()))?;
        return Ok(product(&fixture_def(a)?, &fixture_def(b)?));
    }
    Err(Error::UnknownFixture(id.to_string()))
}

fn parse_size(id: &str, n: &str) -> Result<usize> {
    match n.parse::<usize>() {
        Ok(n) if (2..=16).contains(&n) => Ok(n),
        _ => Err(Error::UnknownFixture(id.to_string())),
    }
}

fn nonintegral_tensor(a: usize, b: usize) -> usize {
    // 0 annihilates, 1 (index 1 = u) is the unit, top ⊗ top = top.
    match (a, b) {
        (0, _) | (_, 0) => 0,
        (1, x) | (x, 1) => x,
        _ => 2,
    }
}

fn chain_label(i: usize, n: usize) -> String {
    let d = n - 1;
    if i == 0 {
        return "0".into();
    }
    if i == d {
        return "1".into();
    }
    let g = gcd(i, d);
    format!("{}/{}", i / g, d / g)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn chain(n: usize, t: impl Fn(usize, usize) -> usize, unit: usize) -> QuantaleDef {
    let labels: Vec<String> = (0..n).map(|i| chain_label(i, n)).collect();
    let order = (0..n - 1)
        .map(|i| (labels[i].clone(), labels[i + 1].clone()))
        .collect();
    let mut tensor = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            tensor.push((labels[a].clone(), labels[b].clone(), labels[t(a, b)].clone()));
        }
    }
    QuantaleDef {
        unit: labels[unit].clone(),
        elements: labels,
        order,
        tensor,
    }
}

fn relabel(def: &mut QuantaleDef, from: &[&str], to: &[&str]) {
    let map = |s: &mut String| {
        if let Some(i) = from.iter().position(|f| f == s) {
            *s = to[i].to_string();
        }
    };
    for (a, b) in def.order.iter_mut() {
        map(a);
        map(b);
    }
    for (a, b, c) in def.tensor.iter_mut() {
        map(a);
        map(b);
        map(c);
    }
}

fn split_top_level(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

fn product(a: &QuantaleDef, b: &QuantaleDef) -> QuantaleDef {
    let pair = |x: &str, y: &str| format!("({x},{y})");
    let mut elements = Vec::new();
    for x in &a.elements {
        for y in &b.elements {
            elements.push(pair(x, y));
        }
    }
    let mut order = Vec::new();
    for (x1, x2) in &a.order {
        for y in &b.elements {
            order.push((pair(x1, y), pair(x2, y)));
        }
    }
    for (y1, y2) in &b.order {
        for x in &a.elements {
            order.push((pair(x, y1), pair(x, y2)));
        }
    }
    let lookup = |def: &QuantaleDef, p: &str, q: &str| -> String {
        def.tensor
            .iter()
            .find(|t| t.0 == p && t.1 == q)
            .map(|t| t.2.clone())
            .expect("fixture tensor tables are total")
    };
    let mut tensor = Vec::new();
    for x1 in &a.elements {
        for y1 in &b.elements {
            for x2 in &a.elements {
                for y2 in &b.elements {
                    tensor.push((
                        pair(x1, y1),
                        pair(x2, y2),
                        pair(&lookup(a, x1, x2), &lookup(b, y1, y2)),
                    ));
                }
            }
        }
    }
    QuantaleDef {
        elements,
        order,
        tensor,
        unit: pair(&a.unit, &b.unit),
    }
}
