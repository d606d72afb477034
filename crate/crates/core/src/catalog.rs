//! Named rings with their minimal primes, matrix factorizations and a
//! standard family of modules.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::gdim::{epsilon_tau, is_totally_reflexive, Candidate, EpsilonTau, MatrixFactorization};
use crate::module::{Column, GradedModule};
use crate::poly::Poly;
use crate::rank::Component;
use crate::resolution::Resolution;
use crate::ring::GradedRing;

/// Name, accepted parameters with defaults, and a one-line description.
pub const ENTRIES: &[(&str, &str, &str)] = &[
    ("hypersurface-dim1", "f=x^2", "k[x,y]/(f), a one-dimensional hypersurface; alias x2"),
    ("xy", "", "k[x,y]/(xy), two crossing lines"),
    ("x0x1", "d=2", "k[x0..xd]/(x0*x1), two hyperplanes meeting in codimension one"),
    ("node", "", "k[x,y]/(x^2+y^2), the A_1 curve singularity"),
    ("an-odd", "n=1", "k[x,y]/(x^2+y^(n+1)) for odd n, weights (n+1,2); n=1 is the node"),
    ("cusp", "", "k[x,y]/(x^2+y^3), weights (3,2), a one-dimensional domain"),
    ("sphere", "", "k[x,y,z]/(x^2+y^2+z^2)"),
    ("quadric", "", "k[x,y,z,w]/(xy-zw); alias quadric-4var"),
    ("ci", "e=3 c=2", "k[x_1..x_e]/(x_1^2..x_c^2), a complete intersection of codimension c"),
    ("regular", "e=2", "the polynomial ring k[x_1..x_e]; regular2 is e=2"),
    ("artinian", "t=3", "k[x]/(x^t)"),
];

/// How a catalog module is built from its ring.
#[derive(Clone, Debug)]
pub enum Recipe<F: PrimeField> {
    Residue,
    Free(Vec<i32>),
    /// `m^t`.
    MaxPower(u32),
    /// `R/m^t`.
    Truncated(u32),
    /// `K_d`, the `d`th syzygy of `k`.
    Syzygy(usize),
    /// `Hom(K_d, R)`.
    DualSyzygy(usize),
    Cyclic(Vec<Poly<F>>),
    /// `m / x_v^2 R`.
    MaxModSquare(usize),
    /// `Coker φ` (or `Coker ψ`) of a stored factorization.
    Cokernel { factorization: usize, psi: bool },
    Presented(Vec<i32>, Vec<Column<F>>),
    Sum(Vec<Recipe<F>>),
}

/// A matrix factorization with generator degrees for both cokernels.
#[derive(Clone, Debug)]
pub struct Factorization<F: PrimeField> {
    pub name: String,
    pub mf: MatrixFactorization<F>,
    pub phi_gens: Vec<i32>,
    pub psi_gens: Vec<i32>,
}

#[derive(Clone, Debug)]
pub struct NamedModule<F: PrimeField> {
    pub name: String,
    pub module: GradedModule<F>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry<F: PrimeField> {
    pub name: String,
    pub summary: String,
    pub ring: Arc<GradedRing<F>>,
    /// Advertised Krull dimension.
    pub dim: usize,
    pub regular: bool,
    /// Minimal primes, when known.
    pub components: Option<Vec<Component<F>>>,
    pub factorizations: Vec<Factorization<F>>,
    pub recipes: Vec<(String, Recipe<F>)>,
    /// Set when the catalog holds every indecomposable totally reflexive module.
    pub classification: Option<String>,
}

fn param(params: &BTreeMap<String, String>, key: &str, default: usize) -> Result<usize> {
    match params.get(key) {
        None => Ok(default),
        Some(v) => v
            .parse()
            .map_err(|_| Error::Input(format!("parameter {key}={v} is not a nonnegative integer"))),
    }
}

fn var_names(e: usize) -> Vec<String> {
    if e <= 4 {
        ["x", "y", "z", "w"][..e].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=e).map(|i| format!("x{i}")).collect()
    }
}

fn ring<F: PrimeField>(names: &[String], weights: &[u32], rels: &[String]) -> Result<Arc<GradedRing<F>>> {
    let polys = rels
        .iter()
        .map(|r| Poly::parse(r, names).map_err(Error::Input))
        .collect::<Result<Vec<_>>>()?;
    GradedRing::new(names.to_vec(), weights.to_vec(), polys)
}

fn component<F: PrimeField>(r: &GradedRing<F>, gens: &[&str], dim: usize, reduced: bool) -> Result<Component<F>> {
    Ok(Component {
        prime: gens.iter().map(|g| r.poly(g)).collect::<Result<_>>()?,
        dim,
        reduced,
    })
}

fn domain<F: PrimeField>(r: &GradedRing<F>) -> Vec<Component<F>> {
    vec![Component {
        prime: Vec::new(),
        dim: r.krull_dim(),
        reduced: true,
    }]
}

fn sqrt_minus_one<F: PrimeField>(what: &str) -> Result<u32> {
    F::sqrt_minus_one().map(|i| i.residue()).ok_or_else(|| {
        Error::Input(format!(
            "{what} needs a square root of -1, which GF({}) lacks (use p = 1 mod 4)",
            F::CHARACTERISTIC
        ))
    })
}

fn matrix<F: PrimeField>(s: &GradedRing<F>, rows: &[&[String]]) -> Result<Vec<Vec<Poly<F>>>> {
    rows.iter()
        .map(|row| row.iter().map(|e| s.poly(e)).collect())
        .collect()
}

fn factorization<F: PrimeField>(
    r: &GradedRing<F>,
    name: &str,
    phi: &[&[String]],
    psi: &[&[String]],
    phi_gens: Vec<i32>,
    psi_gens: Vec<i32>,
) -> Result<Factorization<F>> {
    let f = r.relations()[0].clone();
    let mf = MatrixFactorization::new(f, matrix(r, phi)?, matrix(r, psi)?)?;
    Ok(Factorization {
        name: name.to_string(),
        mf,
        phi_gens,
        psi_gens,
    })
}

fn s(parts: &[&str]) -> Vec<String> {
    parts.iter().map(|p| p.to_string()).collect()
}

/// Modules built for every ring: `k`, free modules, powers of `m` and
/// quotients by them, syzygies of `k` and their duals, cyclic modules and sums.
fn standard_recipes<F: PrimeField>(r: &GradedRing<F>) -> Vec<(String, Recipe<F>)> {
    use Recipe::*;
    let n = r.nvars();
    let names = r.names();
    let mut out = vec![
        ("k".to_string(), Residue),
        ("R".to_string(), Free(vec![0])),
        ("R+R(-1)".to_string(), Free(vec![0, 1])),
        ("m".to_string(), MaxPower(1)),
        ("m^2".to_string(), MaxPower(2)),
        ("m^3".to_string(), MaxPower(3)),
        ("R/m^2".to_string(), Truncated(2)),
        ("R/m^3".to_string(), Truncated(3)),
        ("R/m^4".to_string(), Truncated(4)),
        ("K_2".to_string(), Syzygy(2)),
        ("K_3".to_string(), Syzygy(3)),
        ("Hom(m,R)".to_string(), DualSyzygy(1)),
        ("Hom(K_2,R)".to_string(), DualSyzygy(2)),
        ("m+R".to_string(), Sum(vec![MaxPower(1), Free(vec![0])])),
        ("k+R".to_string(), Sum(vec![Residue, Free(vec![0])])),
        ("k+m".to_string(), Sum(vec![Residue, MaxPower(1)])),
        ("k+R/m^2".to_string(), Sum(vec![Residue, Truncated(2)])),
    ];
    for v in 0..n {
        out.push((format!("R/({})", names[v]), Cyclic(vec![r.var(v)])));
    }
    out.push((format!("R/({}^2)", names[0]), Cyclic(vec![r.var(0).pow(2)])));
    if n >= 2 && r.weights()[0] == r.weights()[1] {
        out.push((
            format!("R/({}+{})", names[0], names[1]),
            Cyclic(vec![r.var(0) + r.var(1)]),
        ));
    }
    out.push((format!("m/{}^2R", names[n - 1]), MaxModSquare(n - 1)));
    out
}

fn cokernel_recipes<F: PrimeField>(fs: &[Factorization<F>]) -> Vec<(String, Recipe<F>)> {
    let mut out = Vec::new();
    for (i, f) in fs.iter().enumerate() {
        out.push((
            format!("coker({}.phi)", f.name),
            Recipe::Cokernel { factorization: i, psi: false },
        ));
        out.push((
            format!("coker({}.psi)", f.name),
            Recipe::Cokernel { factorization: i, psi: true },
        ));
    }
    out
}

/// The entry `name` built with `key=value` parameters.
pub fn build<F: PrimeField>(name: &str, params: &[&str]) -> Result<CatalogEntry<F>> {
    let mut map = BTreeMap::new();
    for p in params {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| Error::Input(format!("parameter '{p}' is not of the form key=value")))?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    let canonical = match name.to_ascii_lowercase().as_str() {
        "x2" => "hypersurface-dim1".to_string(),
        "quadric-4var" => "quadric".to_string(),
        "regular2" => "regular".to_string(),
        other => other.to_string(),
    };
    let allowed = ENTRIES
        .iter()
        .find(|e| e.0 == canonical)
        .ok_or_else(|| Error::Input(format!("no catalog entry named '{name}'")))?
        .1;
    for k in map.keys() {
        if !allowed.split_whitespace().any(|a| a.split('=').next() == Some(k.as_str())) {
            return Err(Error::Input(format!("entry '{canonical}' takes no parameter '{k}'")));
        }
    }
    let mut entry = match canonical.as_str() {
        "hypersurface-dim1" => hypersurface_dim1(map.get("f").map_or("x^2", String::as_str))?,
        "xy" => {
            let r = ring(&s(&["x", "y"]), &[1, 1], &s(&["x*y"]))?;
            let comps = vec![component(&r, &["x"], 1, true)?, component(&r, &["y"], 1, true)?];
            let fs = vec![factorization(&r, "lines", &[&s(&["x"])], &[&s(&["y"])], vec![0], vec![0])?];
            base(r, "xy", 1, Some(comps), fs)
        }
        "x0x1" => {
            let d = param(&map, "d", 2)?;
            if d == 0 {
                return Err(Error::Input("x0x1 needs d >= 1".into()));
            }
            let names: Vec<String> = (0..=d).map(|i| format!("x{i}")).collect();
            let r = ring(&names, &vec![1; d + 1], &s(&["x0*x1"]))?;
            let comps = vec![component(&r, &["x0"], d, true)?, component(&r, &["x1"], d, true)?];
            let fs = vec![factorization(&r, "planes", &[&s(&["x0"])], &[&s(&["x1"])], vec![0], vec![0])?];
            base(r, "x0x1", d, Some(comps), fs)
        }
        "node" => an_odd(1)?,
        "an-odd" => an_odd(param(&map, "n", 1)?)?,
        "cusp" => {
            let r = ring(&s(&["x", "y"]), &[3, 2], &s(&["x^2+y^3"]))?;
            let fs = vec![factorization(
                &r,
                "m",
                &[&s(&["x", "y"]), &s(&["-y^2", "x"])],
                &[&s(&["x", "-y"]), &s(&["y^2", "x"])],
                vec![0, -1],
                vec![0, -1],
            )?];
            let comps = domain(&r);
            let mut e = base(r, "cusp", 1, Some(comps), fs);
            e.classification = Some(
                "R and the maximal ideal are the only indecomposable totally reflexive modules; both are defined over the prime field"
                    .into(),
            );
            e
        }
        "sphere" => {
            let r = ring(&s(&["x", "y", "z"]), &[1, 1, 1], &s(&["x^2+y^2+z^2"]))?;
            let fs = match F::sqrt_minus_one() {
                Some(i) => {
                    let i = i.residue();
                    let (a, b) = (format!("x+{i}*y"), format!("x-{i}*y"));
                    vec![factorization(
                        &r,
                        "spinor",
                        &[&[a.clone(), "z".into()], &["-z".into(), b.clone()]],
                        &[&[b, "-z".into()], &["z".into(), a]],
                        vec![0, 0],
                        vec![0, 0],
                    )?]
                }
                None => Vec::new(),
            };
            let comps = domain(&r);
            base(r, "sphere", 2, Some(comps), fs)
        }
        "quadric" => {
            let r = ring(&s(&["x", "y", "z", "w"]), &[1, 1, 1, 1], &s(&["x*y-z*w"]))?;
            let fs = vec![factorization(
                &r,
                "ruling",
                &[&s(&["x", "z"]), &s(&["w", "y"])],
                &[&s(&["y", "-z"]), &s(&["-w", "x"])],
                vec![0, 0],
                vec![0, 0],
            )?];
            let comps = domain(&r);
            let mut e = base(r.clone(), "quadric", 3, Some(comps), fs);
            e.recipes.push(("R/p".into(), Recipe::Cyclic(vec![r.var(0), r.var(2)])));
            e.recipes.push(("R/q".into(), Recipe::Cyclic(vec![r.var(1), r.var(3)])));
            e
        }
        "ci" => {
            let e = param(&map, "e", 3)?;
            let c = param(&map, "c", 2)?;
            if e == 0 || c > e {
                return Err(Error::Input(format!("ci needs 1 <= e and c <= e, got e={e} c={c}")));
            }
            let names = var_names(e);
            let rels: Vec<String> = names[..c].iter().map(|v| format!("{v}^2")).collect();
            let r = ring(&names, &vec![1; e], &rels)?;
            let comps = if c == 0 {
                domain(&r)
            } else if c == e {
                Vec::new()
            } else {
                let prime: Vec<&str> = names[..c].iter().map(String::as_str).collect();
                vec![component(&r, &prime, e - c, false)?]
            };
            base(r, "ci", e - c, Some(comps), Vec::new())
        }
        "regular" => {
            let e = param(&map, "e", 2)?;
            if e == 0 {
                return Err(Error::Input("regular needs e >= 1".into()));
            }
            let r = ring(&var_names(e), &vec![1; e], &[])?;
            let comps = domain(&r);
            base(r, "regular", e, Some(comps), Vec::new())
        }
        "artinian" => {
            let t = param(&map, "t", 3)?;
            if t < 2 {
                return Err(Error::Input("artinian needs t >= 2".into()));
            }
            let r = ring(&s(&["x"]), &[1], &[format!("x^{t}")])?;
            base(r, "artinian", 0, Some(Vec::new()), Vec::new())
        }
        _ => unreachable!("entry list and builders agree"),
    };
    entry.summary = ENTRIES.iter().find(|e| e.0 == canonical).map_or("", |e| e.2).to_string();
    entry.regular = entry.ring.is_regular();
    entry.certify_ring()?;
    Ok(entry)
}

fn base<F: PrimeField>(
    ring: Arc<GradedRing<F>>,
    name: &str,
    dim: usize,
    components: Option<Vec<Component<F>>>,
    factorizations: Vec<Factorization<F>>,
) -> CatalogEntry<F> {
    let mut recipes = standard_recipes(&ring);
    recipes.extend(cokernel_recipes(&factorizations));
    CatalogEntry {
        name: name.to_string(),
        summary: String::new(),
        regular: ring.is_regular(),
        ring,
        dim,
        components,
        factorizations,
        recipes,
        classification: None,
    }
}

fn hypersurface_dim1<F: PrimeField>(f: &str) -> Result<CatalogEntry<F>> {
    let names = s(&["x", "y"]);
    let r = ring(&names, &[1, 1], &[f.to_string()])?;
    if r.krull_dim() != 1 || r.is_regular() {
        return Err(Error::Input(format!("{f} does not define a singular curve")));
    }
    let x2 = Poly::parse("x^2", &names).map_err(Error::Input)?;
    let mut comps = None;
    let mut fs = Vec::new();
    if r.relations()[0] == x2 {
        comps = Some(vec![component(&r, &["x"], 1, false)?]);
        fs.push(factorization(&r, "double", &[&s(&["x"])], &[&s(&["x"])], vec![0], vec![0])?);
    }
    Ok(base(r, "hypersurface-dim1", 1, comps, fs))
}

fn an_odd<F: PrimeField>(n: usize) -> Result<CatalogEntry<F>> {
    if n.is_multiple_of(2) {
        return Err(Error::Input(format!("an-odd needs odd n, got {n}")));
    }
    let i = sqrt_minus_one::<F>("the A_n factorization x^2+y^(n+1) = (x+iy^m)(x-iy^m)")?;
    let m = n.div_ceil(2);
    let names = s(&["x", "y"]);
    let (weights, label) = if n == 1 { ([1, 1], "node") } else { ([n as u32 + 1, 2], "an-odd") };
    let r = ring(&names, &weights, &[format!("x^2+y^{}", n + 1)])?;
    let ym = if m == 1 { "y".to_string() } else { format!("y^{m}") };
    let plus = format!("x+{i}*{ym}");
    let minus = format!("x-{i}*{ym}");
    let comps = vec![
        component(&r, &[plus.as_str()], 1, true)?,
        component(&r, &[minus.as_str()], 1, true)?,
    ];
    let mut fs = vec![factorization(&r, "pm", &[std::slice::from_ref(&minus)], &[std::slice::from_ref(&plus)], vec![0], vec![0])?];
    for j in 1..m {
        let yj = if j == 1 { "y".to_string() } else { format!("y^{j}") };
        let yk = format!("y^{}", n + 1 - j);
        let a = (2 * j) as i32 - n as i32 - 1;
        fs.push(factorization(
            &r,
            &format!("ideal{j}"),
            &[&["x".into(), yj.clone()], &[format!("-{yk}"), "x".into()]],
            &[&["x".into(), format!("-{yj}")], &[yk, "x".into()]],
            vec![0, a],
            vec![0, a],
        )?);
    }
    let mut e = base(r.clone(), label, 1, Some(comps), fs);
    e.recipes.push(("R+".into(), Recipe::Cyclic(vec![r.poly(&plus)?])));
    e.recipes.push(("R-".into(), Recipe::Cyclic(vec![r.poly(&minus)?])));
    e.recipes.push((
        "R+ + R-".into(),
        Recipe::Sum(vec![Recipe::Cyclic(vec![r.poly(&plus)?]), Recipe::Cyclic(vec![r.poly(&minus)?])]),
    ));
    e.classification = Some(format!(
        "over an algebraically closed field the indecomposable totally reflexive modules are R, R+, R- and the ideals (x, y^j); all are defined over GF({}) because it contains a square root of -1",
        F::CHARACTERISTIC
    ));
    Ok(e)
}

fn products<F: PrimeField>(polys: &[Poly<F>], t: u32) -> Vec<Poly<F>> {
    if t == 0 {
        return vec![Poly::one(polys.first().map_or(0, Poly::nvars))];
    }
    let mut out = Vec::new();
    fn rec<F: PrimeField>(polys: &[Poly<F>], start: usize, left: u32, acc: Poly<F>, out: &mut Vec<Poly<F>>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for k in start..polys.len() {
            rec(polys, k, left - 1, &acc * &polys[k], out);
        }
    }
    rec(polys, 0, t, Poly::one(polys[0].nvars()), &mut out);
    out
}

impl<F: PrimeField> CatalogEntry<F> {
    /// Checks the advertised dimension and regularity. Relations are a
    /// certified regular sequence by construction, so the ring is a
    /// complete intersection and hence Gorenstein.
    fn certify_ring(&self) -> Result<()> {
        if self.ring.krull_dim() != self.dim {
            return Err(Error::Consistency(format!(
                "{} has dimension {}, advertised {}",
                self.name,
                self.ring.krull_dim(),
                self.dim
            )));
        }
        Ok(())
    }

    /// Ring certificates plus total reflexivity of every factorization cokernel.
    pub fn certify(&self, dmax: i32) -> Result<()> {
        self.certify_ring()?;
        for (name, recipe) in &self.recipes {
            if let Recipe::Cokernel { .. } = recipe {
                let m = self.build_recipe(recipe, dmax)?;
                if !is_totally_reflexive(&m, dmax)? {
                    return Err(Error::NotTotallyReflexive(format!("{name} over {}", self.name)));
                }
            }
        }
        Ok(())
    }

    pub fn components(&self) -> Option<&[Component<F>]> {
        self.components.as_deref()
    }

    fn max_ideal_gens(&self) -> Vec<Poly<F>> {
        (0..self.ring.nvars()).map(|v| self.ring.var(v)).collect()
    }

    pub fn build_recipe(&self, recipe: &Recipe<F>, dmax: i32) -> Result<GradedModule<F>> {
        let r = &self.ring;
        Ok(match recipe {
            Recipe::Residue => GradedModule::residue_field(r.clone()),
            Recipe::Free(g) => GradedModule::free(r.clone(), g.clone()),
            Recipe::MaxPower(t) => GradedModule::ideal(r.clone(), &products(&self.max_ideal_gens(), *t), dmax)?,
            Recipe::Truncated(t) => GradedModule::cyclic(r.clone(), &products(&self.max_ideal_gens(), *t))?,
            Recipe::Syzygy(d) => {
                let k = GradedModule::residue_field(r.clone());
                let mut res = Resolution::compute(&k, d + 1, dmax)?;
                res.syzygy(*d)?.minimal_presentation(dmax)?
            }
            Recipe::DualSyzygy(d) => {
                let k = self.build_recipe(&Recipe::Syzygy(*d), dmax)?;
                k.dual(dmax)?.module.minimal_presentation(dmax)?
            }
            Recipe::Cyclic(ps) => GradedModule::cyclic(r.clone(), ps)?,
            Recipe::MaxModSquare(v) => {
                let m = GradedModule::ideal(r.clone(), &self.max_ideal_gens(), dmax)?;
                let nv = r.nvars();
                let mut col = Column::zero(nv, m.num_gens(), m.gens()[*v] + r.weights()[*v] as i32);
                col.entries[*v] = r.var(*v);
                m.quotient(&[col])
            }
            Recipe::Cokernel { factorization, psi } => {
                let f = &self.factorizations[*factorization];
                if *psi {
                    f.mf.cokernel_psi(r, f.psi_gens.clone())?
                } else {
                    f.mf.cokernel_phi(r, f.phi_gens.clone())?
                }
            }
            Recipe::Presented(g, rels) => GradedModule::new(r.clone(), g.clone(), rels.clone())?,
            Recipe::Sum(parts) => {
                let built = parts
                    .iter()
                    .map(|p| self.build_recipe(p, dmax))
                    .collect::<Result<Vec<_>>>()?;
                GradedModule::direct_sum(&built.iter().collect::<Vec<_>>())?
            }
        })
    }

    pub fn module_names(&self) -> Vec<&str> {
        self.recipes.iter().map(|(n, _)| n.as_str()).collect()
    }

    pub fn module(&self, name: &str, dmax: i32) -> Result<GradedModule<F>> {
        let (_, recipe) = self
            .recipes
            .iter()
            .find(|(n, _)| n == name)
            .ok_or_else(|| Error::Input(format!("{} has no module named '{name}'", self.name)))?;
        self.build_recipe(recipe, dmax)
    }

    /// Every nonzero catalog module.
    pub fn modules(&self, dmax: i32) -> Result<Vec<NamedModule<F>>> {
        let mut out = Vec::new();
        for (name, recipe) in &self.recipes {
            let module = self.build_recipe(recipe, dmax)?;
            if !module.is_zero_module() {
                out.push(NamedModule {
                    name: name.clone(),
                    module,
                });
            }
        }
        Ok(out)
    }

    /// A random homogeneous element of degree `d`.
    fn random_element(&self, rng: &mut ChaCha8Rng, d: i32) -> Poly<F> {
        let n = self.ring.dim(d);
        let v: Vec<F> = (0..n)
            .map(|_| F::from_u64(rng.gen_range(0..F::CHARACTERISTIC as u64)))
            .collect();
        self.ring.to_poly(&v, d)
    }

    /// `count` random modules: cyclic quotients by one or two random forms
    /// and two-generator cokernels of random linear relations.
    pub fn random_modules(&self, count: usize, seed: u64, dmax: i32) -> Result<Vec<NamedModule<F>>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let low = *self.ring.weights().iter().min().expect("at least one variable") as i32;
        let mut out = Vec::new();
        for j in 0..count {
            let recipe = match j % 4 {
                0 => Recipe::Cyclic(vec![self.random_element(&mut rng, low)]),
                1 => Recipe::Cyclic(vec![
                    self.random_element(&mut rng, low),
                    self.random_element(&mut rng, low + 1),
                ]),
                k => {
                    let rels = (0..k - 1)
                        .map(|_| Column {
                            degree: low,
                            entries: vec![self.random_element(&mut rng, low), self.random_element(&mut rng, low)],
                        })
                        .filter(|c| c.entries.iter().any(|e| !e.is_zero()))
                        .collect();
                    Recipe::Presented(vec![0, 0], rels)
                }
            };
            let module = self.build_recipe(&recipe, dmax)?;
            if !module.is_zero_module() {
                out.push(NamedModule {
                    name: format!("random[seed {seed}, #{}]", j + 1),
                    module,
                });
            }
        }
        Ok(out)
    }

    /// Catalog modules followed by at least four random ones, `min` in total.
    pub fn sample(&self, min: usize, seed: u64, dmax: i32) -> Result<Vec<NamedModule<F>>> {
        let mut out = self.modules(dmax)?;
        let mut round = 0;
        while round == 0 || (out.len() < min && round < 8) {
            let want = min.saturating_sub(out.len()).max(4);
            out.extend(self.random_modules(want, seed + round, dmax)?);
            round += 1;
        }
        Ok(out)
    }

    /// `ε_i` and `τ_i` for `i = 0..=imax`, restricted to the catalog modules.
    pub fn epsilon_tau(&self, imax: usize, dmax: i32) -> Result<Vec<EpsilonTau>> {
        let candidates: Vec<Candidate<F>> = self
            .modules(dmax)?
            .into_iter()
            .map(|m| Candidate {
                name: m.name,
                module: m.module,
            })
            .collect();
        epsilon_tau(&candidates, self.components(), imax, dmax)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::gdim::{chi_g, gdim};
    use crate::rank::rank;

    type F = Fp<13>;
    const DMAX: i32 = 40;

    #[test]
    fn every_entry_builds() {
        for (name, _, _) in ENTRIES {
            let e = build::<F>(name, &[]).unwrap();
            e.certify(DMAX).unwrap();
            assert!(!e.regular || *name == "regular", "{name}");
        }
    }

    #[test]
    fn parameters_are_checked() {
        assert!(build::<F>("an-odd", &["n=2"]).is_err());
        assert!(build::<F>("an-odd", &["m=3"]).is_err());
        assert!(build::<F>("node", &["n=3"]).is_err());
        assert!(build::<F>("nonesuch", &[]).is_err());
        assert!(build::<F>("ci", &["e=2", "c=3"]).is_err());
        assert!(build::<Fp<7>>("node", &[]).is_err());
        let e = build::<F>("an-odd", &["n=3"]).unwrap();
        assert_eq!(e.ring.weights(), &[4, 2]);
        e.certify(DMAX).unwrap();
        assert_eq!(build::<F>("x2", &[]).unwrap().name, "hypersurface-dim1");
        let e = build::<F>("ci", &["e=4", "c=1"]).unwrap();
        assert_eq!(e.dim, 3);
    }

    #[test]
    fn double_line_modules() {
        let e = build::<F>("x2", &[]).unwrap();
        let names = e.module_names();
        for want in ["k", "m", "m^2", "m/y^2R", "R/m^2"] {
            assert!(names.contains(&want), "{want}");
        }
        assert_eq!(e.module("m^2", DMAX).unwrap().beta0(), 2);
        assert_eq!(e.module("R/m^2", DMAX).unwrap().hilbert_function(0, 2), vec![1, 2, 0]);
        assert_eq!(e.module("m/y^2R", DMAX).unwrap().hilbert_function(0, 3), vec![0, 2, 1, 0]);
        assert_eq!(e.module("Hom(m,R)", DMAX).unwrap().beta0(), 2);
        let coker = e.module("coker(double.phi)", DMAX).unwrap();
        assert!(is_totally_reflexive(&coker, DMAX).unwrap());
    }

    #[test]
    fn node_halves() {
        let e = build::<F>("an-odd", &["n=1"]).unwrap();
        assert_eq!(e.name, "node");
        let plus = e.module("R+", DMAX).unwrap();
        assert_eq!(chi_g(&plus, 0, DMAX).unwrap(), 1);
        let both = e.module("R+ + R-", DMAX).unwrap();
        assert_eq!(rank(&both, e.components(), DMAX).unwrap().value(), Some(1));
        assert_eq!(chi_g(&both, 0, DMAX).unwrap(), 2);
        assert!(e.classification.is_some());
    }

    #[test]
    fn quadric_primes_meet_in_the_residue_field() {
        let e = build::<F>("quadric", &[]).unwrap();
        let p = e.module("R/p", DMAX).unwrap();
        let q = e.module("R/q", DMAX).unwrap();
        let t = p.tensor(&q);
        assert_eq!(t.hilbert_function(0, 3), vec![1, 0, 0, 0]);
        assert_eq!(gdim(&p, DMAX).unwrap(), 1);
    }

    #[test]
    fn random_modules_are_deterministic() {
        let e = build::<F>("xy", &[]).unwrap();
        let a = e.random_modules(4, 7, DMAX).unwrap();
        let b = e.random_modules(4, 7, DMAX).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.module.relations(), y.module.relations());
        }
        assert!(e.sample(20, 0, DMAX).unwrap().len() >= 20);
    }

    #[test]
    fn cusp_invariants() {
        let e = build::<F>("cusp", &[]).unwrap();
        let t = e.epsilon_tau(2, DMAX).unwrap();
        assert_eq!(t[0].epsilon.as_ref().unwrap().0, 2);
        assert_eq!(t[1].epsilon.as_ref().unwrap().0, 1);
        assert_eq!(t[0].tau.as_ref().unwrap().0, 1);
    }
}
