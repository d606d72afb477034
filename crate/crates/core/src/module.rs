//! Finitely presented graded modules, realized degree by degree.
//!
//! A module is `Coker(⊕R(-e_j) → ⊕R(-g_i))`, stored as generator degrees
//! `g_i` and relation [`Column`]s. Everything else (kernels, images, Hom,
//! homology) is reduced to one primitive, [`kernel`], which finds minimal
//! generators of the kernel of a map from a free module into a presented
//! module by sweeping internal degrees.

use rustc_hash::FxHashMap as HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::{DenseMatrix, Echelon};
use crate::poly::Poly;
use crate::ring::GradedRing;

/// A homogeneous element of a graded free module: one polynomial per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Column<F> {
    pub degree: i32,
    pub entries: Vec<Poly<F>>,
}

impl<F: PrimeField> Column<F> {
    pub fn zero(nvars: usize, len: usize, degree: i32) -> Self {
        Column {
            degree,
            entries: vec![Poly::zero(nvars); len],
        }
    }

    pub fn unit(nvars: usize, len: usize, i: usize, degree: i32) -> Self {
        let mut c = Self::zero(nvars, len, degree);
        c.entries[i] = Poly::one(nvars);
        c
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    /// `p * self`, where `p` is homogeneous of degree `p_deg`.
    pub fn scaled(&self, p: &Poly<F>, p_deg: i32) -> Self {
        Column {
            degree: self.degree + p_deg,
            entries: self.entries.iter().map(|e| e * p).collect(),
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Column {
            degree: self.degree,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn negated(&self) -> Self {
        Column {
            degree: self.degree,
            entries: self.entries.iter().map(|e| -e.clone()).collect(),
        }
    }

    /// Concatenation of two vectors of the same degree.
    pub fn stacked(&self, below: &Self) -> Self {
        debug_assert_eq!(self.degree, below.degree);
        let mut entries = self.entries.clone();
        entries.extend(below.entries.iter().cloned());
        Column {
            degree: self.degree,
            entries,
        }
    }
}

/// `sum_j coeffs[j] * columns[j]`, with `coeffs` a column over the `columns` index.
pub fn combine<F: PrimeField>(
    ring: &GradedRing<F>,
    columns: &[Column<F>],
    coeffs: &Column<F>,
    target_len: usize,
) -> Column<F> {
    let mut out = Column::zero(ring.nvars(), target_len, coeffs.degree);
    for (c, col) in coeffs.entries.iter().zip(columns) {
        if c.is_zero() {
            continue;
        }
        for (o, e) in out.entries.iter_mut().zip(&col.entries) {
            if !e.is_zero() {
                *o = o.clone() + c * e;
            }
        }
    }
    for o in &mut out.entries {
        *o = ring.reduce(o);
    }
    out
}

/// Start offsets of the generator blocks of a free module in degree `d`.
pub fn block_offsets<F: PrimeField>(ring: &GradedRing<F>, degs: &[i32], d: i32) -> Vec<usize> {
    let mut out = Vec::with_capacity(degs.len() + 1);
    let mut acc = 0;
    out.push(0);
    for &g in degs {
        acc += ring.dim(d - g);
        out.push(acc);
    }
    out
}

/// Coordinates of a homogeneous free-module element in degree `col.degree`.
pub fn free_vector<F: PrimeField>(ring: &GradedRing<F>, degs: &[i32], col: &Column<F>) -> Vec<F> {
    let d = col.degree;
    let off = block_offsets(ring, degs, d);
    let mut v = vec![F::zero(); off[degs.len()]];
    for (i, e) in col.entries.iter().enumerate() {
        if !e.is_zero() {
            let nf = ring.normal_form(e, d - degs[i]);
            v[off[i]..off[i + 1]].copy_from_slice(&nf);
        }
    }
    v
}

/// Inverse of [`free_vector`].
pub fn free_column<F: PrimeField>(ring: &GradedRing<F>, degs: &[i32], v: &[F], d: i32) -> Column<F> {
    let off = block_offsets(ring, degs, d);
    Column {
        degree: d,
        entries: (0..degs.len())
            .map(|i| ring.to_poly(&v[off[i]..off[i + 1]], d - degs[i]))
            .collect(),
    }
}

/// `p * v` for a free-module vector `v` in degree `d`.
fn free_mul<F: PrimeField>(
    ring: &GradedRing<F>,
    degs: &[i32],
    v: &[F],
    d: i32,
    p: &Poly<F>,
    p_deg: i32,
) -> Vec<F> {
    let src = block_offsets(ring, degs, d);
    let dst = block_offsets(ring, degs, d + p_deg);
    let mut out = vec![F::zero(); dst[degs.len()]];
    for i in 0..degs.len() {
        for (u, c) in v[src[i]..src[i + 1]].iter().enumerate() {
            if !c.is_zero() {
                ring.mul_monomial_into(&mut out[dst[i]..dst[i + 1]], d - degs[i], u, p, p_deg, *c);
            }
        }
    }
    out
}

/// The degree-`d` piece of a presented module.
#[derive(Debug)]
pub struct ModuleComponent<F> {
    degree: i32,
    offsets: Vec<usize>,
    relations: Echelon<F>,
    basis: Vec<usize>,
}

impl<F: PrimeField> ModuleComponent<F> {
    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn free_dim(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// Whether no relation reaches this degree, so coordinates are free-cover coordinates.
    pub fn is_free(&self) -> bool {
        self.relations.rank() == 0
    }

    /// Quotient coordinates of a free-cover vector.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut w = v.to_vec();
        self.relations.reduce(&mut w);
        self.basis.iter().map(|&c| w[c]).collect()
    }

    /// A free-cover representative of quotient basis vector `i`.
    pub fn representative(&self, i: usize) -> Vec<F> {
        let mut v = vec![F::zero(); self.free_dim()];
        v[self.basis[i]] = F::one();
        v
    }
}

/// A finitely presented graded module over a [`GradedRing`].
pub struct GradedModule<F: PrimeField> {
    ring: Arc<GradedRing<F>>,
    gens: Vec<i32>,
    relations: Vec<Column<F>>,
    cache: RwLock<HashMap<i32, Arc<ModuleComponent<F>>>>,
}

impl<F: PrimeField> Clone for GradedModule<F> {
    fn clone(&self) -> Self {
        GradedModule {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            relations: self.relations.clone(),
            cache: RwLock::new(self.cache.read().expect("lock").clone()),
        }
    }
}

impl<F: PrimeField> fmt::Debug for GradedModule<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GradedModule(gens {:?}, {} relations over {})",
            self.gens,
            self.relations.len(),
            self.ring.describe()
        )
    }
}

/// Whether a module has finite length, with the length when it does.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Length {
    Finite(usize),
    Infinite,
}

impl<F: PrimeField> GradedModule<F> {
    /// `Coker(relations)`; each relation must be homogeneous of its stated degree.
    pub fn new(ring: Arc<GradedRing<F>>, gens: Vec<i32>, relations: Vec<Column<F>>) -> Result<Self> {
        for (j, col) in relations.iter().enumerate() {
            if col.len() != gens.len() {
                return Err(Error::Input(format!(
                    "relation {} has {} entries for {} generators",
                    j + 1,
                    col.len(),
                    gens.len()
                )));
            }
            for (i, e) in col.entries.iter().enumerate() {
                match ring.degree_of(e)? {
                    None => {}
                    Some(d) if d == col.degree - gens[i] => {}
                    Some(d) => {
                        return Err(Error::Input(format!(
                            "entry ({}, {}) has degree {d}, expected {}",
                            i + 1,
                            j + 1,
                            col.degree - gens[i]
                        )))
                    }
                }
            }
        }
        let relations = relations
            .into_iter()
            .map(|mut c| {
                for e in &mut c.entries {
                    *e = ring.reduce(e);
                }
                c
            })
            .filter(|c| !c.is_zero())
            .collect();
        Ok(Self::from_parts(ring, gens, relations))
    }

    fn from_parts(ring: Arc<GradedRing<F>>, gens: Vec<i32>, relations: Vec<Column<F>>) -> Self {
        GradedModule {
            ring,
            gens,
            relations,
            cache: RwLock::new(HashMap::default()),
        }
    }

    /// Builds a module from a matrix of polynomials, inferring relation degrees.
    pub fn from_matrix(ring: Arc<GradedRing<F>>, gens: Vec<i32>, matrix: Vec<Vec<Poly<F>>>) -> Result<Self> {
        let rows = gens.len();
        let cols = matrix.first().map_or(0, Vec::len);
        if matrix.len() != rows || matrix.iter().any(|r| r.len() != cols) {
            return Err(Error::Input("matrix shape does not match the generators".into()));
        }
        let mut relations = Vec::new();
        for j in 0..cols {
            let entries: Vec<Poly<F>> = (0..rows).map(|i| matrix[i][j].clone()).collect();
            let mut degree = None;
            for (i, e) in entries.iter().enumerate() {
                if let Some(d) = ring.degree_of(e)? {
                    degree = Some(d + gens[i]);
                    break;
                }
            }
            if let Some(degree) = degree {
                relations.push(Column { degree, entries });
            }
        }
        Self::new(ring, gens, relations)
    }

    pub fn free(ring: Arc<GradedRing<F>>, gens: Vec<i32>) -> Self {
        Self::from_parts(ring, gens, Vec::new())
    }

    pub fn zero(ring: Arc<GradedRing<F>>) -> Self {
        Self::free(ring, Vec::new())
    }

    /// `R/(polys)`.
    pub fn cyclic(ring: Arc<GradedRing<F>>, polys: &[Poly<F>]) -> Result<Self> {
        let mut rels = Vec::new();
        for p in polys {
            if let Some(d) = ring.degree_of(p)? {
                rels.push(Column {
                    degree: d,
                    entries: vec![p.clone()],
                });
            }
        }
        Self::new(ring, vec![0], rels)
    }

    /// The residue field `k = R/m`.
    pub fn residue_field(ring: Arc<GradedRing<F>>) -> Self {
        let vars: Vec<Poly<F>> = (0..ring.nvars()).map(|k| ring.var(k)).collect();
        Self::cyclic(ring, &vars).expect("variables are homogeneous")
    }

    /// The ideal generated by `polys`, as a submodule of `R`.
    pub fn ideal(ring: Arc<GradedRing<F>>, polys: &[Poly<F>], dmax: i32) -> Result<Self> {
        let r = Self::free(ring.clone(), vec![0]);
        let mut cols = Vec::new();
        for p in polys {
            if let Some(d) = ring.degree_of(p)? {
                cols.push(Column {
                    degree: d,
                    entries: vec![p.clone()],
                });
            }
        }
        r.image(&cols, dmax)
    }

    pub fn ring(&self) -> &Arc<GradedRing<F>> {
        &self.ring
    }

    pub fn gens(&self) -> &[i32] {
        &self.gens
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn relations(&self) -> &[Column<F>] {
        &self.relations
    }

    pub fn is_free_presentation(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn component(&self, d: i32) -> Arc<ModuleComponent<F>> {
        if let Some(c) = self.cache.read().expect("lock").get(&d) {
            return c.clone();
        }
        let comp = Arc::new(self.build_component(d));
        self.cache
            .write()
            .expect("lock")
            .entry(d)
            .or_insert(comp)
            .clone()
    }

    fn build_component(&self, d: i32) -> ModuleComponent<F> {
        let ring = &*self.ring;
        let offsets = block_offsets(ring, &self.gens, d);
        let n = offsets[self.gens.len()];
        let mut relations = Echelon::new(n);
        if n > 0 {
            for col in &self.relations {
                let e = d - col.degree;
                for u in 0..ring.dim(e) {
                    let mut v = vec![F::zero(); n];
                    for (i, p) in col.entries.iter().enumerate() {
                        if !p.is_zero() {
                            ring.mul_monomial_into(
                                &mut v[offsets[i]..offsets[i + 1]],
                                e,
                                u,
                                p,
                                col.degree - self.gens[i],
                                F::one(),
                            );
                        }
                    }
                    relations.insert(v);
                    if relations.rank() == n {
                        break;
                    }
                }
            }
        }
        let basis = relations.free_columns();
        ModuleComponent {
            degree: d,
            offsets,
            relations,
            basis,
        }
    }

    pub fn dim(&self, d: i32) -> usize {
        self.component(d).dim()
    }

    pub fn min_gen_degree(&self) -> Option<i32> {
        self.gens.iter().copied().min()
    }

    pub fn max_gen_degree(&self) -> Option<i32> {
        self.gens.iter().copied().max()
    }

    /// Quotient coordinates of a free-cover element.
    pub fn coordinates(&self, col: &Column<F>) -> Vec<F> {
        let v = free_vector(&self.ring, &self.gens, col);
        self.component(col.degree).reduce(&v)
    }

    pub fn is_zero_element(&self, col: &Column<F>) -> bool {
        self.coordinates(col).iter().all(|c| c.is_zero())
    }

    /// The free-cover column of generator `i`.
    pub fn generator(&self, i: usize) -> Column<F> {
        Column::unit(self.ring.nvars(), self.num_gens(), i, self.gens[i])
    }

    pub fn identity_columns(&self) -> Vec<Column<F>> {
        (0..self.num_gens()).map(|i| self.generator(i)).collect()
    }

    /// `M(a)`: the same module with degrees lowered by `a`.
    pub fn twist(&self, a: i32) -> Self {
        Self::from_parts(
            self.ring.clone(),
            self.gens.iter().map(|g| g - a).collect(),
            self.relations
                .iter()
                .map(|c| Column {
                    degree: c.degree - a,
                    entries: c.entries.clone(),
                })
                .collect(),
        )
    }

    /// `M ⊗_R S` along a ring map given by the images of the variables.
    pub fn base_change(&self, target: Arc<GradedRing<F>>, images: &[Poly<F>]) -> Result<Self> {
        let rels = self
            .relations
            .iter()
            .map(|c| Column {
                degree: c.degree,
                entries: c
                    .entries
                    .iter()
                    .map(|e| target.reduce(&e.substitute(images)))
                    .collect(),
            })
            .collect();
        Self::new(target, self.gens.clone(), rels)
    }

    /// The module with extra relations `cols` (a quotient).
    pub fn quotient(&self, cols: &[Column<F>]) -> Self {
        let mut rels = self.relations.clone();
        rels.extend(cols.iter().filter(|c| !c.is_zero()).cloned());
        Self::from_parts(self.ring.clone(), self.gens.clone(), rels)
    }

    /// `M / (p_1, ..., p_r) M`.
    pub fn quotient_by_elements(&self, polys: &[Poly<F>]) -> Result<Self> {
        let mut cols = Vec::new();
        for p in polys {
            if let Some(d) = self.ring.degree_of(p)? {
                for g in self.identity_columns() {
                    cols.push(g.scaled(p, d));
                }
            }
        }
        Ok(self.quotient(&cols))
    }

    pub fn direct_sum(parts: &[&Self]) -> Result<Self> {
        let ring = parts
            .first()
            .ok_or_else(|| Error::Input("empty direct sum".into()))?
            .ring
            .clone();
        let total: usize = parts.iter().map(|m| m.num_gens()).sum();
        let mut gens = Vec::new();
        let mut rels = Vec::new();
        let mut offset = 0;
        for m in parts {
            if !Arc::ptr_eq(&m.ring, &ring) {
                return Err(Error::Input("direct sum of modules over different rings".into()));
            }
            gens.extend_from_slice(&m.gens);
            for c in &m.relations {
                rels.push(embed_column(c, offset, total, ring.nvars()));
            }
            offset += m.num_gens();
        }
        Ok(Self::from_parts(ring, gens, rels))
    }

    pub fn sum_with(&self, other: &Self) -> Result<Self> {
        Self::direct_sum(&[self, other])
    }

    /// `M ⊗_R N`.
    pub fn tensor(&self, other: &Self) -> Self {
        let nv = self.ring.nvars();
        let q = other.num_gens();
        let total = self.num_gens() * q;
        let mut gens = Vec::with_capacity(total);
        for a in &self.gens {
            for c in &other.gens {
                gens.push(a + c);
            }
        }
        let mut rels = Vec::new();
        for phi in &self.relations {
            for (k, c) in other.gens.iter().enumerate() {
                let mut col = Column::zero(nv, total, phi.degree + c);
                for (i, e) in phi.entries.iter().enumerate() {
                    col.entries[i * q + k] = e.clone();
                }
                rels.push(col);
            }
        }
        for (i, a) in self.gens.iter().enumerate() {
            for psi in &other.relations {
                let mut col = Column::zero(nv, total, psi.degree + a);
                for (k, e) in psi.entries.iter().enumerate() {
                    col.entries[i * q + k] = e.clone();
                }
                rels.push(col);
            }
        }
        Self::from_parts(self.ring.clone(), gens, rels)
    }

    /// Submodule generated by `cols` (elements of this module's free cover),
    /// presented on those generators.
    pub fn image(&self, cols: &[Column<F>], dmax: i32) -> Result<Self> {
        let rels = kernel(self, cols, dmax, "image presentation")?;
        Ok(Self::from_parts(
            self.ring.clone(),
            cols.iter().map(|c| c.degree).collect(),
            rels,
        ))
    }

    /// `(Z + B) / B` inside this module, presented on the generators `z`.
    pub fn subquotient(&self, z: &[Column<F>], b: &[Column<F>], dmax: i32) -> Result<Self> {
        self.quotient(b).image(z, dmax)
    }

    /// Removes generators eliminated by relations with a unit entry.
    pub fn pruned(&self) -> Self {
        let mut gens = self.gens.clone();
        let mut rels: Vec<Column<F>> = self.relations.clone();
        loop {
            let found = rels.iter().enumerate().find_map(|(j, c)| {
                c.entries.iter().enumerate().find_map(|(i, e)| {
                    (c.degree == gens[i] && !e.is_zero()).then(|| (j, i, e.constant_term()))
                })
            });
            let Some((j, i, u)) = found else {
                break;
            };
            let pivot = rels.remove(j);
            let inv = u.inverse().expect("unit");
            rels = rels
                .into_iter()
                .map(|mut r| {
                    if !r.entries[i].is_zero() {
                        let f = r.entries[i].scale(&inv);
                        let fd = r.degree - pivot.degree;
                        let sub = pivot.scaled(&f, fd);
                        r = r.plus(&sub.negated());
                        for e in &mut r.entries {
                            *e = self.ring.reduce(e);
                        }
                    }
                    r.entries.remove(i);
                    r
                })
                .filter(|r| !r.is_zero())
                .collect();
            gens.remove(i);
        }
        Self::from_parts(self.ring.clone(), gens, rels)
    }

    /// Minimal number of generators.
    pub fn beta0(&self) -> usize {
        self.pruned().num_gens()
    }

    /// A minimal presentation: minimal generators and minimal relations.
    pub fn minimal_presentation(&self, dmax: i32) -> Result<Self> {
        let p = self.pruned();
        let rels = kernel(&p, &p.identity_columns(), dmax, "minimal presentation")?;
        Ok(Self::from_parts(self.ring.clone(), p.gens, rels))
    }

    pub fn is_zero_module(&self) -> bool {
        self.pruned().num_gens() == 0
    }

    /// Length via the finite-length certificate: past the top generator
    /// degree, a run of zero components as wide as the largest variable
    /// weight forces every later component to vanish.
    pub fn length(&self, dmax: i32) -> Length {
        let Some(lo) = self.min_gen_degree() else {
            return Length::Finite(0);
        };
        let top = self.max_gen_degree().unwrap_or(lo);
        let width = self.ring.max_weight() as i32;
        let mut total = 0;
        let mut zeros = 0;
        let mut d = lo;
        while d <= dmax.max(top + width) {
            let k = self.dim(d);
            total += k;
            zeros = if k == 0 { zeros + 1 } else { 0 };
            if d > top && zeros >= width {
                return Length::Finite(total);
            }
            d += 1;
        }
        Length::Infinite
    }

    /// Hilbert function on `lo..=hi`.
    pub fn hilbert_function(&self, lo: i32, hi: i32) -> Vec<usize> {
        (lo..=hi).map(|d| self.dim(d)).collect()
    }

    /// Dual `Hom(M, R)` with its minimal generators as functionals.
    pub fn dual(&self, dmax: i32) -> Result<Dual<F>> {
        let functionals = self.dual_functionals(dmax)?;
        let dual_degs: Vec<i32> = self.gens.iter().map(|g| -g).collect();
        let ambient = Self::free(self.ring.clone(), dual_degs);
        let module = ambient.image(&functionals, dmax)?;
        Ok(Dual {
            module,
            functionals,
        })
    }

    /// Generators of `M* = Hom(M, R)` as rows of values on the generators of `M`.
    pub fn dual_functionals(&self, dmax: i32) -> Result<Vec<Column<F>>> {
        let target = Self::free(
            self.ring.clone(),
            self.relations.iter().map(|c| -c.degree).collect(),
        );
        // Row i of the transposed presentation.
        let cols: Vec<Column<F>> = (0..self.num_gens())
            .map(|i| Column {
                degree: -self.gens[i],
                entries: self.relations.iter().map(|c| c.entries[i].clone()).collect(),
            })
            .collect();
        kernel(&target, &cols, dmax, "dual")
    }

    /// `Hom(M, N)` as a submodule of `⊕_i N(g_i)`.
    pub fn hom(&self, other: &Self, dmax: i32) -> Result<Hom<F>> {
        let nv = self.ring.nvars();
        let q = other.num_gens();
        let p = self.num_gens();
        let r = self.relations.len();
        let block = |blocks: &[i32]| -> Self {
            let mut gens = Vec::new();
            let mut rels = Vec::new();
            for (b, a) in blocks.iter().enumerate() {
                for c in &other.gens {
                    gens.push(c - a);
                }
                for psi in &other.relations {
                    rels.push(embed_column(
                        &Column {
                            degree: psi.degree - a,
                            entries: psi.entries.clone(),
                        },
                        b * q,
                        blocks.len() * q,
                        nv,
                    ));
                }
            }
            Self::from_parts(self.ring.clone(), gens, rels)
        };
        let ambient = block(&self.gens);
        let rel_degs: Vec<i32> = self.relations.iter().map(|c| c.degree).collect();
        let target = block(&rel_degs);
        let mut cols = Vec::with_capacity(p * q);
        for i in 0..p {
            for k in 0..q {
                let mut col = Column::zero(nv, r * q, other.gens[k] - self.gens[i]);
                for (j, phi) in self.relations.iter().enumerate() {
                    col.entries[j * q + k] = phi.entries[i].clone();
                }
                cols.push(col);
            }
        }
        let maps = kernel(&target, &cols, dmax, "Hom")?;
        let module = ambient.image(&maps, dmax)?;
        Ok(Hom {
            module,
            ambient,
            maps,
            source_gens: p,
            target_gens: q,
        })
    }
}

/// Places `c` at offset `offset` in a free module of rank `total`.
pub fn embed_column<F: PrimeField>(c: &Column<F>, offset: usize, total: usize, nvars: usize) -> Column<F> {
    let mut out = Column::zero(nvars, total, c.degree);
    for (i, e) in c.entries.iter().enumerate() {
        out.entries[offset + i] = e.clone();
    }
    out
}

/// `Hom(M, R)` together with the functionals generating it.
#[derive(Clone, Debug)]
pub struct Dual<F: PrimeField> {
    /// Presented on `functionals`.
    pub module: GradedModule<F>,
    /// Minimal generators; entry `i` of a functional is its value on generator `i`.
    pub functionals: Vec<Column<F>>,
}

/// `Hom(M, N)`, presented on generating maps.
#[derive(Clone, Debug)]
pub struct Hom<F: PrimeField> {
    pub module: GradedModule<F>,
    /// `⊕_i N(g_i)`, the module of all maps out of the free cover of `M`.
    pub ambient: GradedModule<F>,
    /// Generators; entry `i * target_gens + k` is the `k`th coordinate of the image of generator `i`.
    pub maps: Vec<Column<F>>,
    pub source_gens: usize,
    pub target_gens: usize,
}

impl<F: PrimeField> Hom<F> {
    /// Generator `j` as a list of images of the source generators.
    pub fn map_columns(&self, j: usize, source_gens: &[i32]) -> Vec<Column<F>> {
        let m = &self.maps[j];
        (0..self.source_gens)
            .map(|i| Column {
                degree: source_gens[i] + m.degree,
                entries: (0..self.target_gens)
                    .map(|k| m.entries[i * self.target_gens + k].clone())
                    .collect(),
            })
            .collect()
    }
}

/// Matrix of `F_d → N_d` for the map sending free generator `j` to `cols[j]`.
pub fn image_matrix<F: PrimeField>(target: &GradedModule<F>, cols: &[Column<F>], d: i32) -> DenseMatrix<F> {
    let ring = &*target.ring;
    let degs: Vec<i32> = cols.iter().map(|c| c.degree).collect();
    let src = block_offsets(ring, &degs, d);
    let tcomp = target.component(d);
    let toff = tcomp.offsets().to_vec();
    let mut m = DenseMatrix::zeros(tcomp.dim(), src[cols.len()]);
    if tcomp.is_free() {
        for (j, col) in cols.iter().enumerate() {
            let e = d - col.degree;
            for u in 0..ring.dim(e) {
                for (i, p) in col.entries.iter().enumerate() {
                    if !p.is_zero() {
                        ring.for_each_product_term(e, u, p, col.degree - target.gens[i], |r, x| {
                            let cell = &mut m[(toff[i] + r, src[j] + u)];
                            *cell += x;
                        });
                    }
                }
            }
        }
        return m;
    }
    let mut v = vec![F::zero(); tcomp.free_dim()];
    for (j, col) in cols.iter().enumerate() {
        let e = d - col.degree;
        for u in 0..ring.dim(e) {
            v.iter_mut().for_each(|x| *x = F::zero());
            for (i, p) in col.entries.iter().enumerate() {
                if !p.is_zero() {
                    ring.mul_monomial_into(
                        &mut v[toff[i]..toff[i + 1]],
                        e,
                        u,
                        p,
                        col.degree - target.gens[i],
                        F::one(),
                    );
                }
            }
            let q = tcomp.reduce(&v);
            for (i, x) in q.into_iter().enumerate() {
                m[(i, src[j] + u)] = x;
            }
        }
    }
    m
}

/// Minimal homogeneous generators of the kernel of `⊕R(-deg c_j) → target`,
/// `e_j ↦ cols[j]`, as columns over the `cols` index.
///
/// Degrees are swept upward from the lowest source degree. The sweep ends
/// once it has passed every generator found so far by the largest relation
/// degree plus the largest variable weight, and never before the top source
/// degree plus the degree spread of the map and of the target's relations.
/// Needing a degree above `dmax` is a truncation error.
pub fn kernel<F: PrimeField>(
    target: &GradedModule<F>,
    cols: &[Column<F>],
    dmax: i32,
    stage: &str,
) -> Result<Vec<Column<F>>> {
    if cols.is_empty() {
        return Ok(Vec::new());
    }
    let ring = target.ring.clone();
    check_columns(target, cols)?;
    let degs: Vec<i32> = cols.iter().map(|c| c.degree).collect();
    let lo = *degs.iter().min().expect("nonempty");
    let top = *degs.iter().max().expect("nonempty");
    let entry_spread = cols
        .iter()
        .flat_map(|c| {
            c.entries
                .iter()
                .zip(&target.gens)
                .filter(|(e, _)| !e.is_zero())
                .map(move |(_, g)| c.degree - g)
        })
        .max()
        .unwrap_or(0)
        .max(0);
    let tmin = target.min_gen_degree().unwrap_or(0);
    let rel_spread = target
        .relations
        .iter()
        .map(|c| c.degree - tmin)
        .max()
        .unwrap_or(0)
        .max(0);
    let margin = ring.max_relation_degree() as i32 + ring.max_weight() as i32;
    let mut hi = top + entry_spread + rel_spread + margin;
    let vars: Vec<(Poly<F>, i32)> = (0..ring.nvars())
        .map(|k| (ring.var(k), ring.weights()[k] as i32))
        .collect();
    let mut stored: HashMap<i32, Vec<Vec<F>>> = HashMap::default();
    let mut gens = Vec::new();
    let mut d = lo;
    while d <= hi {
        if d > dmax {
            return Err(Error::truncation(stage, d));
        }
        let a = image_matrix(target, cols, d);
        let k = a.kernel_basis();
        let kd: Vec<Vec<F>> = k.columns();
        if !kd.is_empty() {
            let mut span = Echelon::new(a.cols());
            for (x, w) in &vars {
                if let Some(prev) = stored.get(&(d - w)) {
                    for v in prev {
                        span.insert(free_mul(&ring, &degs, v, d - w, x, *w));
                    }
                }
            }
            for v in &kd {
                if span.insert(v.clone()) {
                    gens.push(free_column(&ring, &degs, v, d));
                    hi = hi.max(d + margin);
                }
            }
        }
        stored.insert(d, kd);
        d += 1;
    }
    Ok(gens)
}

fn check_columns<F: PrimeField>(target: &GradedModule<F>, cols: &[Column<F>]) -> Result<()> {
    for c in cols {
        if c.len() != target.num_gens() {
            return Err(Error::Input("column length differs from the generator count".into()));
        }
        for (e, g) in c.entries.iter().zip(&target.gens) {
            if let Some(d) = target.ring.degree_of(e)? {
                if d != c.degree - g {
                    return Err(Error::Input(format!(
                        "entry of degree {d} in a column of degree {} over a generator of degree {g}",
                        c.degree
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Coefficients expressing `v` through `cols` in `target`, if `v` lies in their span.
pub fn lift<F: PrimeField>(target: &GradedModule<F>, cols: &[Column<F>], v: &Column<F>) -> Option<Column<F>> {
    let ring = &*target.ring;
    let rhs = target.coordinates(v);
    let degs: Vec<i32> = cols.iter().map(|c| c.degree).collect();
    if cols.is_empty() {
        return rhs
            .iter()
            .all(|c| c.is_zero())
            .then(|| Column::zero(ring.nvars(), 0, v.degree));
    }
    let a = image_matrix(target, cols, v.degree);
    let x = a.solve(&rhs).expect("dimensions agree")?;
    Some(free_column(ring, &degs, &x, v.degree))
}

/// Whether `v` lies in the submodule generated by `cols`.
pub fn in_span<F: PrimeField>(target: &GradedModule<F>, cols: &[Column<F>], v: &Column<F>) -> bool {
    lift(target, cols, v).is_some()
}

/// A degree-preserving homomorphism of presented modules, given by the
/// images of the source generators in the target's free cover.
#[derive(Clone, Debug)]
pub struct GradedMap<F: PrimeField> {
    pub source: GradedModule<F>,
    pub target: GradedModule<F>,
    pub columns: Vec<Column<F>>,
}

impl<F: PrimeField> GradedMap<F> {
    /// Checks degrees and that every relation of the source maps to zero.
    pub fn new(source: GradedModule<F>, target: GradedModule<F>, columns: Vec<Column<F>>) -> Result<Self> {
        if columns.len() != source.num_gens() {
            return Err(Error::Input("one image per source generator is required".into()));
        }
        for (i, c) in columns.iter().enumerate() {
            if c.degree != source.gens[i] || c.len() != target.num_gens() {
                return Err(Error::Input(format!("image of generator {} has the wrong shape", i + 1)));
            }
        }
        let map = GradedMap {
            source,
            target,
            columns,
        };
        for rel in map.source.relations() {
            if !map.target.is_zero_element(&map.apply(rel)) {
                return Err(Error::Input("map does not respect the source relations".into()));
            }
        }
        Ok(map)
    }

    pub fn identity(m: &GradedModule<F>) -> Self {
        GradedMap {
            source: m.clone(),
            target: m.clone(),
            columns: m.identity_columns(),
        }
    }

    pub fn zero(source: &GradedModule<F>, target: &GradedModule<F>) -> Self {
        let nv = source.ring.nvars();
        GradedMap {
            source: source.clone(),
            target: target.clone(),
            columns: source
                .gens
                .iter()
                .map(|g| Column::zero(nv, target.num_gens(), *g))
                .collect(),
        }
    }

    /// Image of a source free-cover element.
    pub fn apply(&self, v: &Column<F>) -> Column<F> {
        combine(&self.source.ring, &self.columns, v, self.target.num_gens())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Self) -> Self {
        GradedMap {
            source: self.source.clone(),
            target: other.target.clone(),
            columns: self.columns.iter().map(|c| other.apply(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| self.target.is_zero_element(c))
    }

    /// Generators (in the source's free cover) of the kernel.
    pub fn kernel_generators(&self, dmax: i32) -> Result<Vec<Column<F>>> {
        kernel(&self.target, &self.columns, dmax, "map kernel")
    }

    pub fn is_injective(&self, dmax: i32) -> Result<bool> {
        Ok(self
            .kernel_generators(dmax)?
            .iter()
            .all(|z| self.source.is_zero_element(z)))
    }

    pub fn is_surjective(&self) -> bool {
        self.target
            .identity_columns()
            .iter()
            .all(|g| in_span(&self.target, &self.columns, g))
    }

    pub fn cokernel(&self) -> GradedModule<F> {
        self.target.quotient(&self.columns)
    }

    /// The degree-`d` linear map between quotient coordinates.
    pub fn component_matrix(&self, d: i32) -> DenseMatrix<F> {
        let sc = self.source.component(d);
        let ring = &*self.source.ring;
        let mut m = DenseMatrix::zeros(self.target.dim(d), sc.dim());
        for j in 0..sc.dim() {
            let v = sc.representative(j);
            let col = free_column(ring, &self.source.gens, &v, d);
            let img = self.target.coordinates(&self.apply(&col));
            for (i, x) in img.into_iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;

    type F = Fp<13>;
    type R = GradedRing<F>;

    const DMAX: i32 = 40;

    fn x2() -> Arc<R> {
        R::with_relations(&["x", "y"], &[1, 1], &["x^2"]).unwrap()
    }

    fn max_ideal(r: &Arc<R>) -> GradedModule<F> {
        let vars: Vec<Poly<F>> = (0..r.nvars()).map(|k| r.var(k)).collect();
        GradedModule::ideal(r.clone(), &vars, DMAX).unwrap()
    }

    #[test]
    fn residue_field_has_length_one() {
        let k = GradedModule::residue_field(x2());
        assert_eq!(k.length(DMAX), Length::Finite(1));
        assert_eq!(k.dim(0), 1);
        assert_eq!(k.dim(1), 0);
    }

    #[test]
    fn free_module_has_infinite_length() {
        let r = GradedModule::free(x2(), vec![0]);
        assert_eq!(r.length(DMAX), Length::Infinite);
        assert_eq!(r.beta0(), 1);
    }

    #[test]
    fn maximal_ideal_generators() {
        let r = x2();
        let m = max_ideal(&r);
        assert_eq!(m.beta0(), 2);
        assert_eq!(m.gens(), &[1, 1]);
        // m_d = R_d for d >= 1.
        for d in 0..6 {
            assert_eq!(m.dim(d), if d == 0 { 0 } else { r.dim(d) });
        }
    }

    #[test]
    fn square_of_maximal_ideal() {
        let r = x2();
        let gens: Vec<Poly<F>> = ["x^2", "x*y", "y^2"].iter().map(|s| r.poly(s).unwrap()).collect();
        let m2 = GradedModule::ideal(r.clone(), &gens, DMAX).unwrap();
        assert_eq!(m2.beta0(), 2);
    }

    #[test]
    fn quotient_by_square_has_length_three() {
        let r = x2();
        let gens: Vec<Poly<F>> = ["x^2", "x*y", "y^2"].iter().map(|s| r.poly(s).unwrap()).collect();
        let q = GradedModule::cyclic(r, &gens).unwrap();
        assert_eq!(q.length(DMAX), Length::Finite(3));
    }

    #[test]
    fn dual_of_maximal_ideal_needs_two_generators() {
        let r = x2();
        let m = max_ideal(&r);
        let d = m.dual(DMAX).unwrap();
        assert_eq!(d.functionals.len(), 2);
        assert_eq!(d.module.beta0(), 2);
    }

    #[test]
    fn dual_of_residue_field_vanishes() {
        let k = GradedModule::residue_field(x2());
        let d = k.dual(DMAX).unwrap();
        assert!(d.module.is_zero_module());
        let h = k.hom(&GradedModule::free(x2(), vec![0]), DMAX).unwrap();
        assert!(h.module.is_zero_module());
    }

    #[test]
    fn hom_from_free_is_the_target() {
        let r = x2();
        let rr = GradedModule::free(r.clone(), vec![0]);
        let h = rr.hom(&rr, DMAX).unwrap();
        let p = h.module.minimal_presentation(DMAX).unwrap();
        assert_eq!(p.num_gens(), 1);
        assert!(p.relations().is_empty());
    }

    #[test]
    fn hom_into_a_nonfree_module_counts_degreewise() {
        // Hom(k, k) = k.
        let r = x2();
        let k = GradedModule::residue_field(r.clone());
        let h = k.hom(&k, DMAX).unwrap();
        assert_eq!(h.module.length(DMAX), Length::Finite(1));
    }

    #[test]
    fn kernel_of_multiplication_by_x() {
        // (0 :_R x) = xR over k[x,y]/(x^2).
        let r = x2();
        let rr = GradedModule::free(r.clone(), vec![0]);
        let cols = vec![Column {
            degree: 1,
            entries: vec![r.poly("x").unwrap()],
        }];
        let k = kernel(&rr, &cols, DMAX, "test").unwrap();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].degree, 2);
        assert_eq!(k[0].entries[0], r.poly("x").unwrap());
    }

    #[test]
    fn truncation_is_reported() {
        let r = x2();
        let rr = GradedModule::free(r.clone(), vec![0]);
        let cols = vec![Column {
            degree: 1,
            entries: vec![r.poly("x").unwrap()],
        }];
        let err = kernel(&rr, &cols, 1, "test").unwrap_err();
        assert!(matches!(err, Error::Truncation { degree: 2, .. }));
        let bad = vec![Column {
            degree: 0,
            entries: vec![r.poly("x").unwrap()],
        }];
        assert!(matches!(kernel(&rr, &bad, DMAX, "test"), Err(Error::Input(_))));
    }

    #[test]
    fn pruning_removes_unit_relations() {
        let r = x2();
        let y = r.poly("y").unwrap();
        let one = r.one_poly();
        // Coker [[1],[ -y]] on gens (1, 0) is R with one generator.
        let m = GradedModule::new(
            r.clone(),
            vec![1, 0],
            vec![Column {
                degree: 1,
                entries: vec![one, -y],
            }],
        )
        .unwrap();
        let p = m.pruned();
        assert_eq!(p.gens(), &[0]);
        assert!(p.relations().is_empty());
    }

    #[test]
    fn tensor_with_residue_field_counts_generators() {
        let r = x2();
        let m = max_ideal(&r);
        let k = GradedModule::residue_field(r);
        let t = m.tensor(&k);
        assert_eq!(t.length(DMAX), Length::Finite(2));
    }

    #[test]
    fn maps_compose_and_check_relations() {
        let r = x2();
        let rr = GradedModule::free(r.clone(), vec![0]);
        let k = GradedModule::residue_field(r.clone());
        let proj = GradedMap::new(rr.clone(), k.clone(), rr.identity_columns()).unwrap();
        assert!(proj.is_surjective());
        assert!(!proj.is_injective(DMAX).unwrap());
        // k → R sending 1 to 1 is not well defined.
        assert!(GradedMap::new(k.clone(), rr.clone(), k.identity_columns()).is_err());
        let id = GradedMap::identity(&k);
        let c = proj.then(&id);
        assert_eq!(c.component_matrix(0), proj.component_matrix(0));
    }
}
