//! Total reflexivity, G-dimension, G-approximations and relative Betti numbers.

use std::fmt;
use std::sync::Arc;

use crate::complex::{ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::Echelon;
use crate::module::{combine, image_matrix, in_span, kernel, lift, Column, GradedModule, Length};
use crate::poly::Poly;
use crate::rank::{rank, Component};
use crate::resolution::{alternating_tail, depth, f_rank, Pdim, Resolution};
use crate::ring::GradedRing;

/// The individual conditions of total reflexivity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Reflexivity {
    pub biduality: bool,
    /// `Ext^i(M, R) = 0` for `1 ≤ i ≤ dim R`.
    pub ext: bool,
    /// `Ext^i(M*, R) = 0` for `1 ≤ i ≤ dim R`.
    pub dual_ext: bool,
}

impl Reflexivity {
    pub fn holds(&self) -> bool {
        self.biduality && self.ext && self.dual_ext
    }
}

fn ext_vanish_range<F: PrimeField>(m: &GradedModule<F>, top: usize, dmax: i32) -> Result<bool> {
    if m.is_zero_module() {
        return Ok(true);
    }
    let mut res = Resolution::compute(m, top + 1, dmax)?;
    for i in 1..=top {
        if !res.ext_vanishes(i)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `e_i ↦ (h_j(e_i))_j`: the map from `M` into the free module dual to the functionals.
fn evaluation_columns<F: PrimeField>(gens: &[i32], functionals: &[Column<F>]) -> Vec<Column<F>> {
    (0..gens.len())
        .map(|i| Column {
            degree: gens[i],
            entries: functionals.iter().map(|h| h.entries[i].clone()).collect(),
        })
        .collect()
}

fn dual_cover_degrees<F: PrimeField>(functionals: &[Column<F>]) -> Vec<i32> {
    functionals.iter().map(|h| -h.degree).collect()
}

/// Checks the biduality map and Ext vanishing for `M` and `M*` up to `dim R`.
pub fn reflexivity<F: PrimeField>(m: &GradedModule<F>, dmax: i32) -> Result<Reflexivity> {
    let p = m.pruned();
    if p.num_gens() == 0 {
        return Ok(Reflexivity {
            biduality: true,
            ext: true,
            dual_ext: true,
        });
    }
    let ring = p.ring().clone();
    let top = ring.krull_dim();
    let dual = p.dual(dmax)?;
    let ambient = GradedModule::free(ring.clone(), dual_cover_degrees(&dual.functionals));
    let ev = evaluation_columns(p.gens(), &dual.functionals);
    let injective = if dual.functionals.is_empty() {
        false
    } else {
        kernel(&ambient, &ev, dmax, "biduality kernel")?
            .iter()
            .all(|z| p.is_zero_element(z))
    };
    let biduality = injective && {
        let bidual = dual.module.dual(dmax)?;
        bidual.functionals.iter().all(|h| in_span(&ambient, &ev, h))
    };
    Ok(Reflexivity {
        biduality,
        ext: ext_vanish_range(&p, top, dmax)?,
        dual_ext: ext_vanish_range(&dual.module, top, dmax)?,
    })
}

pub fn is_totally_reflexive<F: PrimeField>(m: &GradedModule<F>, dmax: i32) -> Result<bool> {
    Ok(reflexivity(m, dmax)?.holds())
}

/// `sup { i : Ext^i(M, R) ≠ 0 }`, checked against `depth R - depth M`.
pub fn gdim<F: PrimeField>(m: &GradedModule<F>, dmax: i32) -> Result<usize> {
    if m.is_zero_module() {
        return Err(Error::Undefined("the zero module has G-dimension -infinity".into()));
    }
    let ring = m.ring();
    let top = ring.krull_dim();
    let mut res = Resolution::compute(m, top + 1, dmax)?;
    let mut t = 0;
    for i in 1..=top {
        if !res.ext_vanishes(i)? {
            t = i;
        }
    }
    let ab = ring.depth() as i64 - depth(m, dmax)? as i64;
    if ab != t as i64 {
        return Err(Error::Consistency(format!(
            "G-dimension {t} from Ext disagrees with depth R - depth M = {ab}"
        )));
    }
    Ok(t)
}

/// `0 → G → R^b → G' → 0` with `b = β_0(G*)`.
#[derive(Clone, Debug)]
pub struct Cosyzygy<F: PrimeField> {
    pub free_degrees: Vec<i32>,
    /// Images of the generators of `G`.
    pub embedding: Vec<Column<F>>,
    pub cokernel: GradedModule<F>,
}

fn cosyzygy_unchecked<F: PrimeField>(g: &GradedModule<F>, dmax: i32) -> Result<Cosyzygy<F>> {
    let functionals = g.dual_functionals(dmax)?;
    let free_degrees = dual_cover_degrees(&functionals);
    let embedding = evaluation_columns(g.gens(), &functionals);
    let cokernel = GradedModule::new(g.ring().clone(), free_degrees.clone(), embedding.clone())?;
    Ok(Cosyzygy {
        free_degrees,
        embedding,
        cokernel,
    })
}

/// Requires `G` totally reflexive and certifies the same for `G'`.
pub fn cosyzygy<F: PrimeField>(g: &GradedModule<F>, dmax: i32) -> Result<Cosyzygy<F>> {
    if !is_totally_reflexive(g, dmax)? {
        return Err(Error::NotTotallyReflexive("cosyzygy needs a totally reflexive module".into()));
    }
    let c = cosyzygy_unchecked(g, dmax)?;
    if !is_totally_reflexive(&c.cokernel, dmax)? {
        return Err(Error::Consistency("cokernel of the dual cover is not totally reflexive".into()));
    }
    Ok(c)
}

/// `0 → K → G → M → 0` with `G` totally reflexive and `pdim K < ∞`.
#[derive(Clone, Debug)]
pub struct GApproximation<F: PrimeField> {
    pub module: GradedModule<F>,
    /// `G`, possibly presented on more than its minimal number of generators.
    pub g: GradedModule<F>,
    /// Images of the generators of `G` in `M`.
    pub projection: Vec<Column<F>>,
    /// Minimal generators of `K` as elements of `G`.
    pub k_gens: Vec<Column<F>>,
    /// `K`, presented on `k_gens`.
    pub k: GradedModule<F>,
    pub gdim: usize,
}

/// Removes generators eliminated by unit relations, rewriting elements given
/// in the generators and dropping the matching images of maps out of the module.
fn prune_tracking<F: PrimeField>(
    m: &GradedModule<F>,
    elements: &mut [Column<F>],
    images: &mut Vec<Column<F>>,
) -> Result<GradedModule<F>> {
    let ring = m.ring().clone();
    let mut gens = m.gens().to_vec();
    let mut rels = m.relations().to_vec();
    loop {
        let found = rels.iter().enumerate().find_map(|(j, c)| {
            c.entries
                .iter()
                .enumerate()
                .find_map(|(i, e)| (c.degree == gens[i] && !e.is_zero()).then(|| (j, i, e.constant_term())))
        });
        let Some((j, i, u)) = found else {
            break;
        };
        let pivot = rels.remove(j);
        let inv = u.inverse().expect("unit");
        let eliminate = |mut c: Column<F>| -> Column<F> {
            if !c.entries[i].is_zero() {
                let f = c.entries[i].scale(&inv);
                let sub = pivot.scaled(&f, c.degree - pivot.degree);
                c = c.plus(&sub.negated());
                for e in &mut c.entries {
                    *e = ring.reduce(e);
                }
            }
            c.entries.remove(i);
            c
        };
        rels = rels.into_iter().map(eliminate).filter(|r| !r.is_zero()).collect();
        for e in elements.iter_mut() {
            *e = eliminate(e.clone());
        }
        images.remove(i);
        gens.remove(i);
    }
    GradedModule::new(ring, gens, rels)
}

/// `h(v)` for a functional and an element given over the same generators.
fn pair<F: PrimeField>(ring: &GradedRing<F>, h: &Column<F>, v: &Column<F>) -> Poly<F> {
    let mut acc = Poly::zero(ring.nvars());
    for (a, b) in h.entries.iter().zip(&v.entries) {
        if !a.is_zero() && !b.is_zero() {
            acc = acc + a * b;
        }
    }
    ring.reduce(&acc)
}

/// Greedy minimal generating subset of the submodule spanned by `cols`.
pub fn minimal_generators<F: PrimeField>(target: &GradedModule<F>, cols: &[Column<F>]) -> Vec<Column<F>> {
    let mut sorted: Vec<&Column<F>> = cols.iter().collect();
    sorted.sort_by_key(|c| c.degree);
    let mut kept: Vec<Column<F>> = Vec::new();
    for c in sorted {
        if !in_span(target, &kept, c) {
            kept.push(c.clone());
        }
    }
    kept
}

/// Splits off free summands of `G` contained in `K`.
fn minimize<F: PrimeField>(
    g: GradedModule<F>,
    mut projection: Vec<Column<F>>,
    mut k_gens: Vec<Column<F>>,
    dmax: i32,
) -> Result<(GradedModule<F>, Vec<Column<F>>, Vec<Column<F>>)> {
    let ring = g.ring().clone();
    let mut g = prune_tracking(&g, &mut k_gens, &mut projection)?;
    loop {
        k_gens.retain(|c| !g.is_zero_element(c));
        let functionals = g.dual_functionals(dmax)?;
        // Elements of K whose unit pairings with G* are independent span a
        // free summand of G, split off together.
        let mut span = Echelon::new(functionals.len());
        let mut split = Vec::new();
        for (j, k) in k_gens.iter().enumerate() {
            let row: Vec<F> = functionals
                .iter()
                .map(|h| {
                    if h.degree + k.degree == 0 {
                        pair(&ring, h, k).constant_term()
                    } else {
                        F::zero()
                    }
                })
                .collect();
            if span.insert(row) {
                split.push(j);
            }
        }
        if split.is_empty() {
            break;
        }
        let kappas: Vec<Column<F>> = split.iter().map(|&j| k_gens[j].clone()).collect();
        for &j in split.iter().rev() {
            k_gens.remove(j);
        }
        g = prune_tracking(&g.quotient(&kappas), &mut k_gens, &mut projection)?;
    }
    let k_gens = minimal_generators(&g, &k_gens);
    Ok((g, projection, k_gens))
}

fn approximate<F: PrimeField>(
    m: &GradedModule<F>,
    t: usize,
    dmax: i32,
) -> Result<(GradedModule<F>, Vec<Column<F>>, Vec<Column<F>>)> {
    let ring = m.ring().clone();
    let nv = ring.nvars();
    if t == 0 {
        return Ok((m.clone(), m.identity_columns(), Vec::new()));
    }
    let mut res = Resolution::compute(m, 2, dmax)?;
    let omega = res.syzygy(1)?;
    let f0 = res.degrees(0).to_vec();
    let d1 = res.differential(1).to_vec();
    let (x, pi_x, _) = approximate(&omega, t - 1, dmax)?;
    let cos = cosyzygy_unchecked(&x, dmax)?;
    let b = cos.free_degrees.len();
    let mut gens = f0.clone();
    gens.extend(&cos.free_degrees);
    let rels: Vec<Column<F>> = pi_x
        .iter()
        .zip(&cos.embedding)
        .map(|(p, iota)| {
            let alpha = combine(&ring, &d1, p, f0.len());
            alpha.stacked(&iota.negated())
        })
        .collect();
    let g = GradedModule::new(ring.clone(), gens.clone(), rels)?;
    let mm = res.module().num_gens();
    let projection: Vec<Column<F>> = (0..f0.len())
        .map(|i| Column::unit(nv, mm, i, f0[i]))
        .chain(cos.free_degrees.iter().map(|&d| Column::zero(nv, mm, d)))
        .collect();
    let k_gens: Vec<Column<F>> = (0..b)
        .map(|j| Column::unit(nv, gens.len(), f0.len() + j, cos.free_degrees[j]))
        .collect();
    minimize(g, projection, k_gens, dmax)
}

/// A minimal G-approximation, certified after construction.
pub fn g_approximation<F: PrimeField>(m: &GradedModule<F>, dmax: i32) -> Result<GApproximation<F>> {
    let t = gdim(m, dmax)?;
    let module = m.minimal_presentation(dmax)?;
    let (g, projection, k_gens) = approximate(&module, t, dmax)?;
    let k = g.image(&k_gens, dmax)?;
    let approx = GApproximation {
        module,
        g,
        projection,
        k_gens,
        k,
        gdim: t,
    };
    approx.certify(dmax)?;
    Ok(approx)
}

impl<F: PrimeField> GApproximation<F> {
    /// Exactness, total reflexivity of `G`, finite projective dimension of `K`, minimality.
    pub fn certify(&self, dmax: i32) -> Result<()> {
        let ring = self.module.ring();
        let mm = self.module.num_gens();
        if !self.module.identity_columns().iter().all(|e| in_span(&self.module, &self.projection, e)) {
            return Err(Error::Consistency("G → M is not surjective".into()));
        }
        for k in &self.k_gens {
            if !self.module.is_zero_element(&combine(ring, &self.projection, k, mm)) {
                return Err(Error::Consistency("K does not map to zero in M".into()));
            }
        }
        for z in kernel(&self.module, &self.projection, dmax, "G-approximation kernel")? {
            if !in_span(&self.g, &self.k_gens, &z) {
                return Err(Error::Consistency("Ker(G → M) is larger than K".into()));
            }
        }
        if !is_totally_reflexive(&self.g, dmax)? {
            return Err(Error::Consistency("G is not totally reflexive".into()));
        }
        let res = Resolution::compute(&self.k, ring.depth() + 1, dmax)?;
        if res.pdim().is_none() {
            return Err(Error::Consistency("K has infinite projective dimension".into()));
        }
        let functionals = self.g.dual_functionals(dmax)?;
        for k in &self.k_gens {
            for h in &functionals {
                if h.degree + k.degree == 0 && !pair(ring, h, k).constant_term().is_zero() {
                    return Err(Error::Consistency("K contains a free summand of G".into()));
                }
            }
        }
        Ok(())
    }

    pub fn beta0_g(&self) -> usize {
        self.g.beta0()
    }

    /// Rank of `K → G` after tensoring with `k`.
    pub fn residual_rank(&self) -> Result<usize> {
        let ring = self.g.ring();
        let vars: Vec<Poly<F>> = (0..ring.nvars()).map(|i| ring.var(i)).collect();
        let gbar = self.g.quotient_by_elements(&vars)?;
        let mut degs: Vec<i32> = self.k_gens.iter().map(|c| c.degree).collect();
        degs.sort_unstable();
        degs.dedup();
        Ok(degs
            .into_iter()
            .map(|d| {
                let cols: Vec<Column<F>> = self.k_gens.iter().filter(|c| c.degree == d).cloned().collect();
                image_matrix(&gbar, &cols, d).rank()
            })
            .sum())
    }
}

/// Relative Betti numbers `β^G_0..β^G_t` with the approximation they came from.
#[derive(Clone, Debug)]
pub struct GBetti<F: PrimeField> {
    pub values: Vec<usize>,
    pub approximation: GApproximation<F>,
    pub k_betti: Vec<usize>,
}

impl<F: PrimeField> GBetti<F> {
    pub fn get(&self, n: usize) -> usize {
        self.values.get(n).copied().unwrap_or(0)
    }

    /// `χ^G_i = Σ_{n ≥ i} (-1)^{n-i} β^G_n`.
    pub fn chi(&self, i: usize) -> i64 {
        let v: Vec<i64> = self.values.iter().map(|&b| b as i64).collect();
        alternating_tail(&v, i)
    }

    /// `χ(K)`, the classical Euler characteristic of the kernel.
    pub fn chi_k(&self, i: usize) -> i64 {
        let v: Vec<i64> = self.k_betti.iter().map(|&b| b as i64).collect();
        alternating_tail(&v, i)
    }
}

/// `β^G_0 = β_0(M)`, `β^G_1 = β_0(M) - β_0(G) + β_0(K)`, `β^G_n = β_{n-1}(K)`,
/// cross-checked against `Hom(G, k)` of the assembled strict resolution.
pub fn g_betti<F: PrimeField>(m: &GradedModule<F>, dmax: i32) -> Result<GBetti<F>> {
    let approx = g_approximation(m, dmax)?;
    g_betti_from(approx, dmax)
}

pub fn g_betti_from<F: PrimeField>(approx: GApproximation<F>, dmax: i32) -> Result<GBetti<F>> {
    let t = approx.gdim;
    let b0m = approx.module.num_gens();
    let b0g = approx.beta0_g();
    let res_k = Resolution::compute(&approx.k, t + 1, dmax)?;
    let k_betti: Vec<usize> = match res_k.pdim() {
        _ if approx.k.is_zero_module() => Vec::new(),
        Some(p) => (0..=p).map(|n| res_k.betti(n).unwrap_or(0)).collect(),
        None => return Err(Error::Consistency("K has infinite projective dimension".into())),
    };
    let kb = |n: usize| k_betti.get(n).copied().unwrap_or(0);
    let mut values = vec![b0m];
    if t >= 1 {
        let b1 = b0m as i64 - b0g as i64 + kb(0) as i64;
        if b1 < 0 {
            return Err(Error::Consistency(format!("negative β^G_1 = {b1}")));
        }
        values.push(b1 as usize);
        for n in 2..=t {
            values.push(kb(n - 1));
        }
    } else if !approx.k_gens.is_empty() {
        return Err(Error::Consistency("totally reflexive module with nonzero K".into()));
    }
    if k_betti.len() > t {
        return Err(Error::Consistency(format!(
            "K has projective dimension {} beyond G-dim - 1 = {}",
            k_betti.len() - 1,
            t as i64 - 1
        )));
    }
    let rho = approx.residual_rank()?;
    let via_hom = [b0g as i64 - rho as i64, kb(0) as i64 - rho as i64];
    if via_hom[0] != values[0] as i64 || (t >= 1 && via_hom[1] != values[1] as i64) {
        return Err(Error::Consistency(format!(
            "relative Betti numbers disagree: formula {:?}, Hom(G, k) {:?}",
            &values[..values.len().min(2)],
            via_hom
        )));
    }
    Ok(GBetti {
        values,
        approximation: approx,
        k_betti,
    })
}

pub fn chi_g<F: PrimeField>(m: &GradedModule<F>, i: usize, dmax: i32) -> Result<i64> {
    Ok(g_betti(m, dmax)?.chi(i))
}

/// A strict G-resolution `0 → F_{t-1}(K) → … → F_0(K) → G → M → 0`.
#[derive(Clone, Debug)]
pub struct StrictResolution<F: PrimeField> {
    /// Slots `0..=t`.
    pub complex: ChainComplex<F>,
    /// Images of the generators of slot 0 in `M`.
    pub augmentation: Vec<Column<F>>,
    pub module: GradedModule<F>,
}

impl<F: PrimeField> StrictResolution<F> {
    /// The complex with `M` in slot `-1`.
    pub fn augmented(&self) -> Result<ChainComplex<F>> {
        augment(&self.complex, &self.module, &self.augmentation)
    }

    pub fn alternating_beta0(&self) -> i64 {
        self.complex.alternating_beta0()
    }
}

fn augment<F: PrimeField>(
    c: &ChainComplex<F>,
    m: &GradedModule<F>,
    augmentation: &[Column<F>],
) -> Result<ChainComplex<F>> {
    if c.low() != 0 {
        return Err(Error::Input("a resolution starts in slot 0".into()));
    }
    let mut modules = vec![m.clone()];
    let mut diffs = vec![augmentation.to_vec()];
    for n in 0..=c.high() {
        modules.push(c.module(n));
        if n > 0 {
            diffs.push(c.differential(n));
        }
    }
    ChainComplex::new(c.ring().clone(), -1, modules, diffs)
}

pub fn strict_resolution<F: PrimeField>(approx: &GApproximation<F>, dmax: i32) -> Result<StrictResolution<F>> {
    let ring = approx.g.ring().clone();
    let res_k = Resolution::compute(&approx.k, approx.gdim + 1, dmax)?;
    let top = res_k.pdim().ok_or_else(|| Error::Consistency("K has infinite projective dimension".into()))?;
    let mut modules = vec![approx.g.clone()];
    let mut diffs = Vec::new();
    if !approx.k_gens.is_empty() {
        let kd: Vec<i32> = approx.k_gens.iter().map(|c| c.degree).collect();
        if res_k.degrees(0) != kd.as_slice() {
            return Err(Error::Consistency("kernel generators were reordered".into()));
        }
        for n in 0..=top {
            modules.push(res_k.free_module(n));
            diffs.push(if n == 0 {
                approx.k_gens.clone()
            } else {
                res_k.differential(n).to_vec()
            });
        }
    }
    let complex = ChainComplex::new(ring, 0, modules, diffs)?;
    let s = StrictResolution {
        complex,
        augmentation: approx.projection.clone(),
        module: approx.module.clone(),
    };
    if !s.augmented()?.is_exact(dmax)? {
        return Err(Error::Consistency("strict resolution is not exact".into()));
    }
    Ok(s)
}

/// `Hom(H, -)` applied to a complex.
pub fn hom_complex<F: PrimeField>(h: &GradedModule<F>, c: &ChainComplex<F>, dmax: i32) -> Result<ChainComplex<F>> {
    let ring = c.ring().clone();
    let nv = ring.nvars();
    let homs = (c.low()..=c.high())
        .map(|n| h.hom(&c.module(n), dmax))
        .collect::<Result<Vec<_>>>()?;
    let mut diffs = Vec::new();
    for n in c.low() + 1..=c.high() {
        let (src, tgt) = (&homs[(n - c.low()) as usize], &homs[(n - c.low() - 1) as usize]);
        let d = c.differential(n);
        let (q, qt) = (src.target_gens, tgt.target_gens);
        let mut cols = Vec::new();
        for phi in &src.maps {
            let mut out = Column::zero(nv, h.num_gens() * qt, phi.degree);
            for (i, hg) in h.gens().iter().enumerate() {
                let sub = Column {
                    degree: phi.degree + hg,
                    entries: phi.entries[i * q..(i + 1) * q].to_vec(),
                };
                let img = combine(&ring, &d, &sub, qt);
                for (k, e) in img.entries.into_iter().enumerate() {
                    out.entries[i * qt + k] = e;
                }
            }
            cols.push(
                lift(&tgt.ambient, &tgt.maps, &out)
                    .ok_or_else(|| Error::Consistency("composite map outside Hom".into()))?,
            );
        }
        diffs.push(cols);
    }
    ChainComplex::new(ring, c.low(), homs.into_iter().map(|h| h.module).collect(), diffs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Properness {
    /// `Σ(-1)^n β_0(G_n) ≠ χ^G(M)`, which no proper resolution allows.
    NotProper { alternating: i64, chi_g: i64 },
    /// `Hom(H, G⁺)` fails to be exact for the witness at this index.
    NotExactForWitness { witness: usize },
    /// `Hom(H, G⁺)` is exact for every supplied witness; not a proof of properness.
    ProperForWitnesses { witnesses: usize },
}

impl fmt::Display for Properness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Properness::NotProper { alternating, chi_g } => {
                write!(f, "certified not proper: alternating sum {alternating} != chi_g {chi_g}")
            }
            Properness::NotExactForWitness { witness } => {
                write!(f, "certified not proper: Hom(H, G+) not exact for witness {}", witness + 1)
            }
            Properness::ProperForWitnesses { witnesses } => {
                write!(f, "proper relative to {witnesses} witnesses")
            }
        }
    }
}

/// Tests a G-resolution `G → M` (slots from 0, each totally reflexive).
pub fn properness_test<F: PrimeField>(
    g: &ChainComplex<F>,
    m: &GradedModule<F>,
    augmentation: &[Column<F>],
    witnesses: &[GradedModule<F>],
    dmax: i32,
) -> Result<Properness> {
    let aug = augment(g, m, augmentation)?;
    if !aug.is_exact(dmax)? {
        return Err(Error::Input("the augmented complex is not exact".into()));
    }
    for n in 0..=g.high() {
        if !is_totally_reflexive(&g.module(n), dmax)? {
            return Err(Error::Input(format!("slot {n} is not totally reflexive")));
        }
    }
    let alternating = g.alternating_beta0();
    let chi = chi_g(m, 0, dmax)?;
    if alternating != chi {
        return Ok(Properness::NotProper {
            alternating,
            chi_g: chi,
        });
    }
    for (i, h) in witnesses.iter().enumerate() {
        if !is_totally_reflexive(h, dmax)? {
            return Err(Error::Input(format!("witness {} is not totally reflexive", i + 1)));
        }
        if !hom_complex(h, &aug, dmax)?.is_exact(dmax)? {
            return Ok(Properness::NotExactForWitness { witness: i });
        }
    }
    Ok(Properness::ProperForWitnesses {
        witnesses: witnesses.len(),
    })
}

/// `Tor^G_n(M, N) = H_n(G ⊗ N)` for `n = 0..=t`.
pub fn tor_g<F: PrimeField>(m: &GradedModule<F>, n: &GradedModule<F>, dmax: i32) -> Result<Vec<GradedModule<F>>> {
    let approx = g_approximation(m, dmax)?;
    let s = strict_resolution(&approx, dmax)?;
    let t = s.complex.tensor(&ChainComplex::concentrated(n.clone(), 0))?;
    (0..=t.high()).map(|i| t.homology(i, dmax)).collect()
}

/// `χ^G(M, N) = Σ (-1)^n ℓ(Tor^G_n(M, N))`.
pub fn chi_g_pair<F: PrimeField>(m: &GradedModule<F>, n: &GradedModule<F>, dmax: i32) -> Result<i64> {
    let mut total = 0i64;
    for (i, h) in tor_g(m, n, dmax)?.iter().enumerate() {
        let l = match h.length(dmax) {
            Length::Finite(l) => l as i64,
            Length::Infinite => {
                return Err(Error::Undefined(format!("Tor^G_{i} does not have finite length")))
            }
        };
        total += if i % 2 == 0 { l } else { -l };
    }
    Ok(total)
}

/// Both sides of `χ^G(M/sM) = χ^G(M) - f-rank(M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularQuotient {
    pub chi_before: i64,
    pub f_rank: usize,
    /// From the cone on multiplication by `s` on a complete resolution.
    pub chi_after_cone: i64,
    /// From a G-approximation of `M/sM` computed directly.
    pub chi_after: i64,
}

impl RegularQuotient {
    pub fn holds(&self) -> bool {
        self.chi_after == self.chi_before - self.f_rank as i64 && self.chi_after_cone == self.chi_after
    }
}

/// The cone construction on `T_{≥0} = F(M)`, `T_{-1} = ` the dual cover of `M`.
pub fn quotient_by_regular<F: PrimeField>(m: &GradedModule<F>, s: &Poly<F>, dmax: i32) -> Result<RegularQuotient> {
    let ring = m.ring().clone();
    ring.quotient(s)?;
    if !is_totally_reflexive(m, dmax)? {
        return Err(Error::NotTotallyReflexive("the regular-quotient construction needs a totally reflexive module".into()));
    }
    let chi_before = chi_g(m, 0, dmax)?;
    let (t, complement) = f_rank(m, dmax)?;
    let chi_after = chi_g(&m.quotient_by_elements(std::slice::from_ref(s))?, 0, dmax)?;
    let chi_after_cone = if complement.is_zero_module() {
        0
    } else {
        cone_chi(&complement, s, dmax)?
    };
    Ok(RegularQuotient {
        chi_before,
        f_rank: t,
        chi_after_cone,
        chi_after,
    })
}

/// `χ^G(M/sM)` for `M` without free summands, read off
/// `0 → T_{-1} → Coker(∂_1^{T'}) → M/sM → 0`.
fn cone_chi<F: PrimeField>(m: &GradedModule<F>, s: &Poly<F>, dmax: i32) -> Result<i64> {
    let ring = m.ring().clone();
    let res = Resolution::compute(m, 1, dmax)?;
    let mm = res.module().clone();
    let functionals = mm.dual_functionals(dmax)?;
    let t_minus = dual_cover_degrees(&functionals);
    let b = t_minus.len();
    let t0 = res.degrees(0).to_vec();
    let t1 = res.degrees(1).to_vec();
    // T: T_1 → T_0 → T_{-1}, as a complex in slots -1..=1.
    let mut modules = vec![GradedModule::free(ring.clone(), t_minus)];
    modules.push(GradedModule::free(ring.clone(), t0.clone()));
    let mut diffs = vec![evaluation_columns(&t0, &functionals)];
    if !t1.is_empty() {
        modules.push(GradedModule::free(ring.clone(), t1));
        diffs.push(res.differential(1).to_vec());
    }
    let t = ChainComplex::new(ring.clone(), -1, modules, diffs)?;
    let cone = ChainMap::multiplication(&t, s)?.cone()?;
    let c = cone.module(0).quotient(&cone.differential(1));
    let k_in_c: Vec<Column<F>> = (0..b)
        .map(|j| Column::unit(ring.nvars(), c.num_gens(), j, cone.module(0).gens()[j]))
        .collect();
    if !is_totally_reflexive(&c, dmax)? {
        return Err(Error::Consistency("Coker(∂_1) of the cone is not totally reflexive".into()));
    }
    let inj = GradedModule::free(ring.clone(), k_in_c.iter().map(|c| c.degree).collect());
    if !kernel(&c, &k_in_c, dmax, "cone kernel")?.iter().all(|z| inj.is_zero_element(z)) {
        return Err(Error::Consistency("T_{-1} → Coker(∂_1) is not injective".into()));
    }
    let beta0 = c.beta0();
    if beta0 != mm.num_gens() + b {
        return Err(Error::Consistency(format!(
            "cone cokernel needs {beta0} generators, expected {}",
            mm.num_gens() + b
        )));
    }
    Ok(beta0 as i64 - b as i64)
}

/// `β^G(M)` over `R` against `β^G(M/sM)` over `R/(s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseChange {
    pub over_r: Vec<usize>,
    pub over_quotient: Vec<usize>,
}

impl BaseChange {
    pub fn equal(&self) -> bool {
        self.over_r == self.over_quotient
    }
}

pub fn base_change_betti<F: PrimeField>(m: &GradedModule<F>, s: &Poly<F>, dmax: i32) -> Result<BaseChange> {
    let ring = m.ring();
    let (quotient, images) = ring.quotient_with_map(s)?;
    let sd = ring.degree_of(s)?.expect("nonzero after regularity check");
    let mp = m.pruned();
    let mult: Vec<Column<F>> = mp.identity_columns().iter().map(|g| g.scaled(s, sd)).collect();
    let annihilated = kernel(&mp, &mult, dmax, "regularity on M")?;
    if !annihilated.iter().all(|z| {
        mp.is_zero_element(&Column {
            degree: z.degree - sd,
            entries: z.entries.clone(),
        })
    }) {
        return Err(Error::NotRegular("the element is a zerodivisor on M".into()));
    }
    let trim = |mut v: Vec<usize>| {
        while v.len() > 1 && v.last() == Some(&0) {
            v.pop();
        }
        v
    };
    let over_r = trim(g_betti(m, dmax)?.values);
    let down = m.base_change(quotient, &images)?;
    let over_quotient = trim(g_betti(&down, dmax)?.values);
    Ok(BaseChange { over_r, over_quotient })
}

/// `(φ, ψ)` over the ambient polynomial ring with `φψ = ψφ = f·I`.
#[derive(Clone, Debug)]
pub struct MatrixFactorization<F: PrimeField> {
    pub f: Poly<F>,
    pub phi: Vec<Vec<Poly<F>>>,
    pub psi: Vec<Vec<Poly<F>>>,
}

fn mat_mul<F: PrimeField>(a: &[Vec<Poly<F>>], b: &[Vec<Poly<F>>], nv: usize) -> Vec<Vec<Poly<F>>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = Poly::zero(nv);
                    for (k, row) in b.iter().enumerate() {
                        acc = acc + &a[i][k] * &row[j];
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

impl<F: PrimeField> MatrixFactorization<F> {
    pub fn new(f: Poly<F>, phi: Vec<Vec<Poly<F>>>, psi: Vec<Vec<Poly<F>>>) -> Result<Self> {
        let n = phi.len();
        let square = |m: &[Vec<Poly<F>>]| m.len() == n && m.iter().all(|r| r.len() == n);
        if !square(&phi) || !square(&psi) {
            return Err(Error::Input("matrix factorization needs square matrices of equal size".into()));
        }
        let nv = f.nvars();
        for prod in [mat_mul(&phi, &psi, nv), mat_mul(&psi, &phi, nv)] {
            for (i, row) in prod.iter().enumerate() {
                for (j, e) in row.iter().enumerate() {
                    let want = if i == j { f.clone() } else { Poly::zero(nv) };
                    if *e != want {
                        return Err(Error::Input("the matrices do not multiply to f times the identity".into()));
                    }
                }
            }
        }
        Ok(MatrixFactorization { f, phi, psi })
    }

    /// No unit entries in either matrix.
    pub fn is_reduced(&self) -> bool {
        self.phi
            .iter()
            .chain(&self.psi)
            .flatten()
            .all(|e| e.constant_term().is_zero())
    }

    /// `Coker(φ)` over `R = S/(f)` with generators in the given degrees.
    pub fn cokernel_phi(&self, ring: &Arc<GradedRing<F>>, gens: Vec<i32>) -> Result<GradedModule<F>> {
        GradedModule::from_matrix(ring.clone(), gens, self.phi.clone())
    }

    pub fn cokernel_psi(&self, ring: &Arc<GradedRing<F>>, gens: Vec<i32>) -> Result<GradedModule<F>> {
        GradedModule::from_matrix(ring.clone(), gens, self.psi.clone())
    }

    pub fn swapped(&self) -> Self {
        MatrixFactorization {
            f: self.f.clone(),
            phi: self.psi.clone(),
            psi: self.phi.clone(),
        }
    }
}

/// A candidate module for the `ε_i`/`τ_i` searches.
#[derive(Clone, Debug)]
pub struct Candidate<F: PrimeField> {
    pub name: String,
    pub module: GradedModule<F>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonTau {
    pub i: usize,
    pub epsilon: Option<(i64, String)>,
    pub tau: Option<(i64, String)>,
}

/// Infima of `χ^G(M)` and `χ^G(M) - rank(M)` over candidates with
/// `G-dim M ≤ i` and infinite projective dimension, for `i = 0..=imax`.
pub fn epsilon_tau<F: PrimeField>(
    candidates: &[Candidate<F>],
    components: Option<&[Component<F>]>,
    imax: usize,
    dmax: i32,
) -> Result<Vec<EpsilonTau>> {
    if candidates.is_empty() {
        return Err(Error::Input("no candidate modules".into()));
    }
    // (name, G-dim, χ^G, rank) of every candidate of infinite projective dimension.
    let mut stats = Vec::new();
    for c in candidates {
        if c.module.is_zero_module() {
            continue;
        }
        let (p, _) = crate::resolution::pdim(&c.module, dmax)?;
        if p != Pdim::Infinite {
            continue;
        }
        let t = gdim(&c.module, dmax)?;
        let chi = chi_g(&c.module, 0, dmax)?;
        let r = rank(&c.module, components, dmax)?.value();
        stats.push((c.name.clone(), t, chi, r));
    }
    let better = |cur: &Option<(i64, String)>, v: i64| cur.as_ref().is_none_or(|(w, _)| v < *w);
    let mut out = Vec::new();
    for i in 0..=imax {
        let mut eps: Option<(i64, String)> = None;
        let mut tau: Option<(i64, String)> = None;
        for (name, t, chi, r) in &stats {
            if *t > i {
                continue;
            }
            if better(&eps, *chi) {
                eps = Some((*chi, name.clone()));
            }
            if let Some(r) = r {
                let v = chi - *r as i64;
                if better(&tau, v) {
                    tau = Some((v, name.clone()));
                }
            }
        }
        out.push(EpsilonTau { i, epsilon: eps, tau });
    }
    Ok(out)
}

/// Dimensions of `H^n(Hom(C, k))` for a complex of modules starting in slot 0.
///
/// For a proper G-resolution these are the relative Betti numbers; the maps
/// are the differentials reduced modulo the maximal ideal.
pub fn hom_to_residue_dims<F: PrimeField>(c: &ChainComplex<F>) -> Result<Vec<usize>> {
    let ring = c.ring();
    let vars: Vec<Poly<F>> = (0..ring.nvars()).map(|i| ring.var(i)).collect();
    let bars = (c.low()..=c.high())
        .map(|n| c.module(n).quotient_by_elements(&vars))
        .collect::<Result<Vec<_>>>()?;
    let dims: Vec<usize> = bars.iter().map(|b| b.beta0()).collect();
    // ranks[i] is the rank of ∂_{low+i+1} modulo m.
    let ranks: Vec<usize> = (c.low() + 1..=c.high())
        .map(|n| {
            let target = &bars[(n - 1 - c.low()) as usize];
            let d = c.differential(n);
            let mut degs: Vec<i32> = d.iter().map(|col| col.degree).collect();
            degs.sort_unstable();
            degs.dedup();
            degs.into_iter()
                .map(|deg| {
                    let cols: Vec<Column<F>> = d.iter().filter(|col| col.degree == deg).cloned().collect();
                    image_matrix(target, &cols, deg).rank()
                })
                .sum()
        })
        .collect();
    Ok((0..dims.len())
        .map(|i| {
            let into = if i > 0 { ranks[i - 1] } else { 0 };
            let out = ranks.get(i).copied().unwrap_or(0);
            dims[i] - into - out
        })
        .collect())
}
