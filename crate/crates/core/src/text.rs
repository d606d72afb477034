//! Plain-text ring and module definitions.
//!
//! A ring file has one item per line:
//!
//! ```text
//! field 13
//! var x 1
//! var y 1
//! rel x^2
//! component 1 nonreduced : x
//! ```
//!
//! `component <dim> reduced|nonreduced : <generators>` lists a minimal prime
//! `P` of the ring with the Krull dimension of `R/P` and whether `R_P` is a
//! field. Components are optional and only needed for ranks of modules of
//! infinite projective dimension.
//!
//! A module file lists generator degrees and the nonzero entries of the
//! presentation matrix, rows and columns counted from 1:
//!
//! ```text
//! gens 0 0
//! row 1 col 1 : y
//! row 2 col 1 : -x
//! ```
//!
//! Blank lines and text after `#` are ignored.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::module::GradedModule;
use crate::poly::Poly;
use crate::rank::Component;
use crate::ring::GradedRing;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            None
        } else {
            Some((i + 1, body.split_whitespace().collect(), body))
        }
    })
}

/// A ring definition before it is bound to a field type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSpec {
    pub field: u32,
    pub vars: Vec<(String, u32)>,
    /// Relation text with its line number.
    pub relations: Vec<(usize, String)>,
    pub components: Vec<ComponentSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentSpec {
    pub line: usize,
    pub dim: usize,
    pub reduced: bool,
    pub generators: Vec<String>,
}

impl RingSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let mut field = None;
        let mut vars: Vec<(String, u32)> = Vec::new();
        let mut relations = Vec::new();
        let mut components = Vec::new();
        for (n, words, body) in lines(text) {
            match words[0] {
                "field" => {
                    if field.is_some() {
                        return Err(parse_err(n, "field declared twice"));
                    }
                    let [_, p] = words[..] else {
                        return Err(parse_err(n, "expected 'field <prime>'"));
                    };
                    let p: u32 = p.parse().map_err(|_| parse_err(n, format!("'{p}' is not a prime")))?;
                    field = Some(p);
                }
                "var" => {
                    let (name, weight) = match words[..] {
                        [_, name] => (name, 1),
                        [_, name, w] => {
                            let w: u32 = w
                                .parse()
                                .map_err(|_| parse_err(n, format!("'{w}' is not a positive weight")))?;
                            (name, w)
                        }
                        _ => return Err(parse_err(n, "expected 'var <name> [weight]'")),
                    };
                    if weight == 0 {
                        return Err(parse_err(n, "weights must be positive"));
                    }
                    if !name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                        || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                    {
                        return Err(parse_err(n, format!("'{name}' is not a variable name")));
                    }
                    if vars.iter().any(|(v, _)| v == name) {
                        return Err(parse_err(n, format!("variable '{name}' declared twice")));
                    }
                    vars.push((name.to_string(), weight));
                }
                "rel" => {
                    let rest = body["rel".len()..].trim();
                    if rest.is_empty() {
                        return Err(parse_err(n, "expected 'rel <polynomial>'"));
                    }
                    relations.push((n, rest.to_string()));
                }
                "component" => {
                    let usage = "expected 'component <dim> reduced|nonreduced : <generators>'";
                    let (head, gens) = body.split_once(':').ok_or_else(|| parse_err(n, usage))?;
                    let h: Vec<&str> = head.split_whitespace().collect();
                    let [_, dim, kind] = h[..] else {
                        return Err(parse_err(n, usage));
                    };
                    let dim: usize = dim.parse().map_err(|_| parse_err(n, format!("'{dim}' is not a dimension")))?;
                    let reduced = match kind {
                        "reduced" => true,
                        "nonreduced" => false,
                        _ => return Err(parse_err(n, usage)),
                    };
                    let generators: Vec<String> = gens
                        .split(',')
                        .map(|g| g.trim().to_string())
                        .filter(|g| !g.is_empty())
                        .collect();
                    components.push(ComponentSpec {
                        line: n,
                        dim,
                        reduced,
                        generators,
                    });
                }
                other => return Err(parse_err(n, format!("unknown keyword '{other}'"))),
            }
        }
        if vars.is_empty() {
            return Err(parse_err(0, "no variables declared"));
        }
        Ok(RingSpec {
            field: field.unwrap_or(13),
            vars,
            relations,
            components,
        })
    }

    pub fn names(&self) -> Vec<String> {
        self.vars.iter().map(|(n, _)| n.clone()).collect()
    }

    pub fn build<F: PrimeField>(&self) -> Result<Arc<GradedRing<F>>> {
        if self.field != F::CHARACTERISTIC {
            return Err(Error::Input(format!(
                "ring is over GF({}), requested GF({})",
                self.field,
                F::CHARACTERISTIC
            )));
        }
        let names = self.names();
        let weights: Vec<u32> = self.vars.iter().map(|(_, w)| *w).collect();
        let mut rels = Vec::new();
        for (n, text) in &self.relations {
            let p = Poly::parse(text, &names).map_err(|m| parse_err(*n, m))?;
            if !p.is_homogeneous(&weights) {
                return Err(parse_err(*n, format!("relation '{text}' is not homogeneous")));
            }
            rels.push(p);
        }
        GradedRing::new(names, weights, rels)
    }

    /// The declared minimal primes over `ring`, or `None` if none are listed.
    pub fn build_components<F: PrimeField>(&self, ring: &GradedRing<F>) -> Result<Option<Vec<Component<F>>>> {
        if self.components.is_empty() {
            return Ok(None);
        }
        let mut out = Vec::new();
        for c in &self.components {
            let prime = c
                .generators
                .iter()
                .map(|g| {
                    let p = Poly::parse(g, ring.names()).map_err(|m| parse_err(c.line, m))?;
                    ring.degree_of(&p)
                        .map_err(|_| parse_err(c.line, format!("'{g}' is not homogeneous")))?;
                    Ok(p)
                })
                .collect::<Result<Vec<_>>>()?;
            out.push(Component {
                prime,
                dim: c.dim,
                reduced: c.reduced,
            });
        }
        Ok(Some(out))
    }
}

pub fn parse_ring<F: PrimeField>(text: &str) -> Result<Arc<GradedRing<F>>> {
    RingSpec::parse(text)?.build()
}

pub fn components_to_text<F: PrimeField>(ring: &GradedRing<F>, components: &[Component<F>]) -> String {
    let mut out = String::new();
    for c in components {
        let gens: Vec<String> = c.prime.iter().map(|p| p.to_string_with(ring.names())).collect();
        let kind = if c.reduced { "reduced" } else { "nonreduced" };
        let _ = writeln!(out, "component {} {kind} : {}", c.dim, gens.join(", "));
    }
    out
}

pub fn ring_to_text<F: PrimeField>(ring: &GradedRing<F>) -> String {
    let mut out = format!("field {}\n", F::CHARACTERISTIC);
    for (n, w) in ring.names().iter().zip(ring.weights()) {
        let _ = writeln!(out, "var {n} {w}");
    }
    for f in ring.relations() {
        let _ = writeln!(out, "rel {}", f.to_string_with(ring.names()));
    }
    out
}

pub fn parse_module<F: PrimeField>(ring: &Arc<GradedRing<F>>, text: &str) -> Result<GradedModule<F>> {
    let mut gens: Option<Vec<i32>> = None;
    let mut entries: Vec<(usize, usize, usize, Poly<F>)> = Vec::new();
    let mut ncols = 0;
    for (n, words, body) in lines(text) {
        match words[0] {
            "gens" => {
                if gens.is_some() {
                    return Err(parse_err(n, "gens declared twice"));
                }
                let degs = words[1..]
                    .iter()
                    .map(|w| w.parse::<i32>().map_err(|_| parse_err(n, format!("'{w}' is not a degree"))))
                    .collect::<Result<Vec<_>>>()?;
                gens = Some(degs);
            }
            "row" => {
                let Some(g) = &gens else {
                    return Err(parse_err(n, "entries must follow the gens line"));
                };
                let (head, poly) = body
                    .split_once(':')
                    .ok_or_else(|| parse_err(n, "expected 'row <i> col <j> : <polynomial>'"))?;
                let h: Vec<&str> = head.split_whitespace().collect();
                let ["row", i, "col", j] = h[..] else {
                    return Err(parse_err(n, "expected 'row <i> col <j> : <polynomial>'"));
                };
                let index = |s: &str| -> Result<usize> {
                    match s.parse::<usize>() {
                        Ok(v) if v >= 1 => Ok(v),
                        _ => Err(parse_err(n, format!("'{s}' is not an index (indices start at 1)"))),
                    }
                };
                let (i, j) = (index(i)?, index(j)?);
                if i > g.len() {
                    return Err(parse_err(n, format!("row {i} exceeds the {} generators", g.len())));
                }
                if entries.iter().any(|e| e.1 == i && e.2 == j) {
                    return Err(parse_err(n, format!("entry ({i}, {j}) given twice")));
                }
                let p = Poly::parse(poly.trim(), ring.names()).map_err(|m| parse_err(n, m))?;
                if ring.degree_of(&p).is_err() {
                    return Err(parse_err(n, format!("'{}' is not homogeneous", poly.trim())));
                }
                ncols = ncols.max(j);
                entries.push((n, i, j, p));
            }
            other => return Err(parse_err(n, format!("unknown keyword '{other}'"))),
        }
    }
    let gens = gens.ok_or_else(|| parse_err(0, "missing gens line"))?;
    let nv = ring.nvars();
    let mut matrix = vec![vec![Poly::zero(nv); ncols]; gens.len()];
    for (_, i, j, p) in &entries {
        matrix[i - 1][j - 1] = p.clone();
    }
    // Pin each column's degree to its first entry so a mismatch names the line.
    for j in 1..=ncols {
        let mut col_degree = None;
        for (n, i, jj, p) in &entries {
            if *jj != j {
                continue;
            }
            let Some(d) = ring.degree_of(p)? else { continue };
            let d = d + gens[i - 1];
            match col_degree {
                None => col_degree = Some(d),
                Some(c) if c == d => {}
                Some(c) => {
                    return Err(parse_err(
                        *n,
                        format!("entry ({i}, {j}) makes column {j} of degree {d}, earlier entries give {c}"),
                    ))
                }
            }
        }
    }
    GradedModule::from_matrix(ring.clone(), gens, matrix)
}

pub fn module_to_text<F: PrimeField>(m: &GradedModule<F>) -> String {
    let names = m.ring().names();
    let degs: Vec<String> = m.gens().iter().map(i32::to_string).collect();
    let mut out = std::iter::once("gens").chain(degs.iter().map(String::as_str)).collect::<Vec<_>>().join(" ");
    out.push('\n');
    for (j, col) in m.relations().iter().enumerate() {
        for (i, e) in col.entries.iter().enumerate() {
            if !e.is_zero() {
                let _ = writeln!(out, "row {} col {} : {}", i + 1, j + 1, e.to_string_with(names));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;

    type F = Fp<13>;

    const X2: &str = "# double line\nfield 13\nvar x 1\nvar y 1\nrel x^2\n";

    #[test]
    fn ring_round_trip() {
        let r = parse_ring::<F>(X2).unwrap();
        assert_eq!(r.hilbert_function(3), vec![1, 2, 2, 2]);
        let again = parse_ring::<F>(&ring_to_text(&r)).unwrap();
        assert_eq!(again.describe(), r.describe());
    }

    #[test]
    fn weighted_ring() {
        let r = parse_ring::<F>("var x 3\nvar y 2\nrel x^2+y^3").unwrap();
        assert_eq!(r.weights(), &[3, 2]);
        assert_eq!(r.krull_dim(), 1);
    }

    #[test]
    fn ring_errors_carry_line_numbers() {
        let e = parse_ring::<F>("field 13\nvar x 1\nrel x^2+\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
        let e = parse_ring::<F>("field 13\nvar x 1\nvar y 1\nrel x^2+y\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, .. }), "{e}");
        let e = parse_ring::<F>("var x 1\nvar x 2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse_ring::<F>("var x 1\nrel 2xy\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        assert!(parse_ring::<F>("field 7\nvar x 1\n").is_err());
        assert!(matches!(parse_ring::<F>("bogus 1\n").unwrap_err(), Error::Parse { line: 1, .. }));
    }

    #[test]
    fn components() {
        let spec = RingSpec::parse("var x\nvar y\nrel x*y\ncomponent 1 reduced : x\ncomponent 1 reduced : y\n").unwrap();
        let r = spec.build::<F>().unwrap();
        let comps = spec.build_components(&r).unwrap().unwrap();
        assert_eq!(comps.len(), 2);
        let again = RingSpec::parse(&(ring_to_text(&r) + &components_to_text(&r, &comps))).unwrap();
        assert_eq!(again.components, spec.components.iter().map(|c| ComponentSpec { line: c.line + 1, ..c.clone() }).collect::<Vec<_>>());
        assert!(RingSpec::parse("var x\nrel x^2\n").unwrap().build_components(&r).unwrap().is_none());
        let e = RingSpec::parse("var x\ncomponent one reduced : x\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn module_round_trip() {
        let r = parse_ring::<F>(X2).unwrap();
        let m = parse_module(&r, "gens 0 0\nrow 1 col 1 : y\nrow 2 col 1 : -x\nrow 1 col 2 : x\n").unwrap();
        assert_eq!(m.num_gens(), 2);
        assert_eq!(m.relations().len(), 2);
        let again = parse_module(&r, &module_to_text(&m)).unwrap();
        for d in 0..6 {
            assert_eq!(again.dim(d), m.dim(d));
        }
        let k = parse_module(&r, "gens 0\nrow 1 col 1 : x\nrow 1 col 2 : y\n").unwrap();
        assert_eq!(k.hilbert_function(0, 3), vec![1, 0, 0, 0]);
        let free = parse_module(&r, "gens 0 1").unwrap();
        assert_eq!(free.dim(1), 3);
    }

    #[test]
    fn module_errors_carry_line_numbers() {
        let r = parse_ring::<F>(X2).unwrap();
        let e = parse_module(&r, "gens 0 0\nrow 1 col 1 : y\nrow 2 col 1 : x^2*y\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
        let e = parse_module(&r, "gens 0\nrow 2 col 1 : y\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse_module(&r, "gens 0\nrow 0 col 1 : y\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse_module(&r, "row 1 col 1 : y\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        let e = parse_module(&r, "gens 0\nrow 1 col 1 : x+y^2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse_module(&r, "gens 0\nrow 1 col 1 : z\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
    }
}
