//! Minimal graded free resolutions and the invariants read off them.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::DenseMatrix;
use crate::module::{in_span, kernel, Column, GradedModule};
use crate::Bounds;

/// Graded Betti numbers `β_{n,d}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, i32), usize>,
    computed: usize,
    complete: bool,
}

impl BettiTable {
    /// Total Betti number `β_n`; `None` beyond the computed range.
    pub fn total(&self, n: usize) -> Option<usize> {
        if n <= self.computed {
            Some(
                self.entries
                    .range((n, i32::MIN)..=(n, i32::MAX))
                    .map(|(_, v)| *v)
                    .sum(),
            )
        } else if self.complete {
            Some(0)
        } else {
            None
        }
    }

    pub fn graded(&self, n: usize, d: i32) -> usize {
        self.entries.get(&(n, d)).copied().unwrap_or(0)
    }

    /// Totals for `0..=computed`.
    pub fn totals(&self) -> Vec<usize> {
        (0..=self.computed).map(|n| self.total(n).unwrap_or(0)).collect()
    }

    pub fn computed(&self) -> usize {
        self.computed
    }

    /// Whether the resolution was seen to stop.
    pub fn is_complete(&self) -> bool {
        self.complete
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let totals: Vec<String> = self.totals().iter().map(usize::to_string).collect();
        write!(f, "{}", totals.join(","))?;
        if !self.complete {
            write!(f, ",...")?;
        }
        Ok(())
    }
}

/// A minimal graded free resolution `… → F_1 → F_0 → M → 0`, computed up to a stage.
#[derive(Clone, Debug)]
pub struct Resolution<F: PrimeField> {
    module: GradedModule<F>,
    degrees: Vec<Vec<i32>>,
    differentials: Vec<Vec<Column<F>>>,
    complete: bool,
    dmax: i32,
}

impl<F: PrimeField> Resolution<F> {
    /// Resolves `m` through `F_hmax`, stopping early once a syzygy vanishes.
    pub fn compute(m: &GradedModule<F>, hmax: usize, dmax: i32) -> Result<Self> {
        let module = m.minimal_presentation(dmax)?;
        let mut res = Resolution {
            degrees: vec![module.gens().to_vec()],
            differentials: Vec::new(),
            complete: false,
            dmax,
            module,
        };
        if res.degrees[0].is_empty() {
            res.complete = true;
            return Ok(res);
        }
        let d1 = res.module.relations().to_vec();
        res.push(d1);
        res.extend_to(hmax)?;
        Ok(res)
    }

    fn push(&mut self, cols: Vec<Column<F>>) {
        if cols.is_empty() {
            self.complete = true;
        } else {
            self.degrees.push(cols.iter().map(|c| c.degree).collect());
            self.differentials.push(cols);
        }
    }

    /// Computes further stages so that `F_hmax` is known.
    pub fn extend_to(&mut self, hmax: usize) -> Result<()> {
        while !self.complete && self.top() < hmax {
            let n = self.top();
            let target = GradedModule::free(self.module.ring().clone(), self.degrees[n - 1].clone());
            let stage = format!("resolution stage {}", n + 1);
            let cols = kernel(&target, &self.differentials[n - 1], self.dmax, &stage)?;
            self.push(cols);
        }
        Ok(())
    }

    /// The minimally presented module being resolved.
    pub fn module(&self) -> &GradedModule<F> {
        &self.module
    }

    /// Index of the last computed free module.
    pub fn top(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Generator degrees of `F_n`; empty past the end of a finite resolution.
    pub fn degrees(&self, n: usize) -> &[i32] {
        self.degrees.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn betti(&self, n: usize) -> Option<usize> {
        if n <= self.top() {
            Some(self.degrees[n].len())
        } else if self.complete {
            Some(0)
        } else {
            None
        }
    }

    /// `∂_n : F_n → F_{n-1}`, one column per generator of `F_n`.
    pub fn differential(&self, n: usize) -> &[Column<F>] {
        assert!(n >= 1, "no differential out of F_0 in a resolution");
        self.differentials.get(n - 1).map_or(&[], Vec::as_slice)
    }

    pub fn free_module(&self, n: usize) -> GradedModule<F> {
        GradedModule::free(self.module.ring().clone(), self.degrees(n).to_vec())
    }

    /// The `n`th syzygy module `Coker(∂_{n+1})`, presented on `F_n`.
    pub fn syzygy(&mut self, n: usize) -> Result<GradedModule<F>> {
        if n == 0 {
            return Ok(self.module.clone());
        }
        self.extend_to(n + 1)?;
        GradedModule::new(
            self.module.ring().clone(),
            self.degrees(n).to_vec(),
            self.differential(n + 1).to_vec(),
        )
    }

    pub fn betti_table(&self) -> BettiTable {
        let mut entries = BTreeMap::new();
        for (n, degs) in self.degrees.iter().enumerate() {
            for &d in degs {
                *entries.entry((n, d)).or_insert(0) += 1;
            }
        }
        BettiTable {
            entries,
            computed: self.top(),
            complete: self.complete,
        }
    }

    /// Projective dimension when the resolution has been seen to stop.
    pub fn pdim(&self) -> Option<usize> {
        self.complete.then(|| {
            (0..=self.top())
                .rev()
                .find(|&n| !self.degrees[n].is_empty())
                .unwrap_or(0)
        })
    }

    /// Checks `∂_{n-1} ∂_n = 0` and `∂_n(F_n) ⊆ m F_{n-1}` for every computed stage.
    pub fn verify(&self) -> Result<()> {
        let ring = self.module.ring();
        for n in 1..=self.top() {
            for c in self.differential(n) {
                for (e, g) in c.entries.iter().zip(self.degrees(n - 1)) {
                    if c.degree == *g && !e.is_zero() {
                        return Err(Error::Consistency(format!("stage {n} is not minimal")));
                    }
                }
            }
            let target = if n == 1 {
                self.module.clone()
            } else {
                self.free_module(n - 2)
            };
            let maps = if n == 1 {
                self.module.identity_columns()
            } else {
                self.differential(n - 1).to_vec()
            };
            for c in self.differential(n) {
                let img = crate::module::combine(ring, &maps, c, target.num_gens());
                if !target.is_zero_element(&img) {
                    return Err(Error::Consistency(format!("d^2 != 0 at stage {n}")));
                }
            }
        }
        Ok(())
    }

    /// `∂_n^T : F_{n-1}^* → F_n^*`, one column per generator of `F_{n-1}`.
    pub fn dual_differential(&self, n: usize) -> Vec<Column<F>> {
        let src = self.degrees(n - 1);
        let d = self.differential(n);
        (0..src.len())
            .map(|i| Column {
                degree: -src[i],
                entries: d.iter().map(|c| c.entries[i].clone()).collect(),
            })
            .collect()
    }

    pub fn dual_free_module(&self, n: usize) -> GradedModule<F> {
        GradedModule::free(
            self.module.ring().clone(),
            self.degrees(n).iter().map(|g| -g).collect(),
        )
    }

    /// Cycles of `Hom(F, R)` in slot `i`, as elements of `F_i^*`.
    fn dual_cycles(&mut self, i: usize) -> Result<Vec<Column<F>>> {
        self.extend_to(i + 1)?;
        let nv = self.module.ring().nvars();
        let fi = self.degrees(i).to_vec();
        if fi.is_empty() {
            return Ok(Vec::new());
        }
        if self.differential(i + 1).is_empty() {
            return Ok((0..fi.len())
                .map(|k| Column::unit(nv, fi.len(), k, -fi[k]))
                .collect());
        }
        let target = self.dual_free_module(i + 1);
        let cols = self.dual_differential(i + 1);
        kernel(&target, &cols, self.dmax, &format!("Ext^{i} cycles"))
    }

    /// Whether `Ext^i_R(M, R)` vanishes.
    pub fn ext_vanishes(&mut self, i: usize) -> Result<bool> {
        let z = self.dual_cycles(i)?;
        let fi = self.dual_free_module(i);
        let b = if i == 0 {
            Vec::new()
        } else {
            self.dual_differential(i)
        };
        Ok(z.iter().all(|c| in_span(&fi, &b, c)))
    }

    /// `Ext^i_R(M, R)` as a presented module.
    pub fn ext_module(&mut self, i: usize) -> Result<GradedModule<F>> {
        let z = self.dual_cycles(i)?;
        let fi = self.dual_free_module(i);
        let b = if i == 0 {
            Vec::new()
        } else {
            self.dual_differential(i)
        };
        fi.subquotient(&z, &b, self.dmax)
    }
}

/// Projective dimension verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pdim {
    Finite(usize),
    Infinite,
}

impl Pdim {
    pub fn is_finite(self) -> bool {
        matches!(self, Pdim::Finite(_))
    }
}

impl fmt::Display for Pdim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pdim::Finite(n) => write!(f, "{n}"),
            Pdim::Infinite => write!(f, "infinite"),
        }
    }
}

/// Finite projective dimension is at most `depth R`, so a nonzero
/// `β_{depth R + 1}` certifies that it is infinite.
pub fn pdim<F: PrimeField>(m: &GradedModule<F>, dmax: i32) -> Result<(Pdim, Resolution<F>)> {
    let stop = m.ring().depth() + 1;
    let res = Resolution::compute(m, stop, dmax)?;
    let verdict = match res.pdim() {
        Some(p) => Pdim::Finite(p),
        None => Pdim::Infinite,
    };
    Ok((verdict, res))
}

/// `Hom(⊕R(-a_j), M) = ⊕ M(a_j)`, generators ordered `(j, l)`.
pub fn hom_from_free<F: PrimeField>(degs: &[i32], m: &GradedModule<F>) -> GradedModule<F> {
    let nv = m.ring().nvars();
    let q = m.num_gens();
    let total = degs.len() * q;
    let mut gens = Vec::with_capacity(total);
    let mut rels = Vec::new();
    for (j, a) in degs.iter().enumerate() {
        for g in m.gens() {
            gens.push(g - a);
        }
        for r in m.relations() {
            let mut col = Column::zero(nv, total, r.degree - a);
            for (l, e) in r.entries.iter().enumerate() {
                col.entries[j * q + l] = e.clone();
            }
            rels.push(col);
        }
    }
    GradedModule::new(m.ring().clone(), gens, rels).expect("twisted blocks are homogeneous")
}

/// `Hom(∂, M) : Hom(F_{n-1}, M) → Hom(F_n, M)` as columns over `Hom(F_n, M)`.
pub fn hom_from_free_map<F: PrimeField>(
    src_degs: &[i32],
    differential: &[Column<F>],
    m: &GradedModule<F>,
) -> Vec<Column<F>> {
    let nv = m.ring().nvars();
    let q = m.num_gens();
    let mut cols = Vec::with_capacity(src_degs.len() * q);
    for (j, a) in src_degs.iter().enumerate() {
        for (l, g) in m.gens().iter().enumerate() {
            let mut col = Column::zero(nv, differential.len() * q, g - a);
            for (jp, d) in differential.iter().enumerate() {
                col.entries[jp * q + l] = d.entries[j].clone();
            }
            cols.push(col);
        }
    }
    cols
}

/// Whether `Ext^i_R(k, M)` vanishes, from a resolution of `k` through stage `i + 1`.
pub fn ext_from_residue_vanishes<F: PrimeField>(
    res_k: &mut Resolution<F>,
    m: &GradedModule<F>,
    i: usize,
    dmax: i32,
) -> Result<bool> {
    res_k.extend_to(i + 1)?;
    let hi = hom_from_free(res_k.degrees(i), m);
    if hi.num_gens() == 0 {
        return Ok(true);
    }
    let z = if res_k.betti(i + 1) == Some(0) {
        hi.identity_columns()
    } else {
        let next = hom_from_free(res_k.degrees(i + 1), m);
        let cols = hom_from_free_map(res_k.degrees(i), res_k.differential(i + 1), m);
        kernel(&next, &cols, dmax, &format!("Ext^{i}(k, M) cycles"))?
    };
    let b = if i == 0 {
        Vec::new()
    } else {
        hom_from_free_map(res_k.degrees(i - 1), res_k.differential(i), m)
    };
    Ok(z.iter().all(|c| in_span(&hi, &b, c)))
}

/// `depth M = min { i : Ext^i(k, M) ≠ 0 }`.
pub fn depth<F: PrimeField>(m: &GradedModule<F>, dmax: i32) -> Result<usize> {
    if m.is_zero_module() {
        return Err(Error::Undefined("the zero module has infinite depth".into()));
    }
    let ring = m.ring();
    let k = GradedModule::residue_field(ring.clone());
    let dim = ring.krull_dim();
    let mut res_k = Resolution::compute(&k, dim + 1, dmax)?;
    for i in 0..=dim {
        if !ext_from_residue_vanishes(&mut res_k, m, i, dmax)? {
            return Ok(i);
        }
    }
    Err(Error::Consistency(format!(
        "no nonvanishing Ext^i(k, M) for i <= dim R = {dim}"
    )))
}

/// `χ_i(M) = Σ_{n ≥ i} (-1)^{n-i} β_n(M)`, defined for finite projective dimension.
pub fn chi_classical<F: PrimeField>(m: &GradedModule<F>, i: usize, dmax: i32) -> Result<i64> {
    let (p, res) = pdim(m, dmax)?;
    match p {
        Pdim::Infinite => Err(Error::Undefined(
            "χ undefined: projective dimension is infinite".into(),
        )),
        Pdim::Finite(top) => Ok(alternating_tail(
            &(0..=top).map(|n| res.betti(n).unwrap_or(0) as i64).collect::<Vec<_>>(),
            i,
        )),
    }
}

/// `Σ_{n ≥ i} (-1)^{n-i} b_n`.
pub fn alternating_tail(b: &[i64], i: usize) -> i64 {
    b.iter()
        .enumerate()
        .skip(i)
        .map(|(n, v)| if (n - i).is_multiple_of(2) { *v } else { -*v })
        .sum()
}

/// Constant part of the pairing between functionals and generators:
/// entry `(j, i)` is `h_j(e_i)` when that value has degree zero.
pub fn unit_pairing<F: PrimeField>(functionals: &[Column<F>], gens: &[i32]) -> DenseMatrix<F> {
    let mut c = DenseMatrix::zeros(functionals.len(), gens.len());
    for (j, h) in functionals.iter().enumerate() {
        for (i, g) in gens.iter().enumerate() {
            if h.degree + g == 0 {
                c[(j, i)] = h.entries[i].constant_term();
            }
        }
    }
    c
}

/// Maximal rank of a free direct summand, with a complement `M'` (`M ≅ M' ⊕ R^t`).
pub fn f_rank<F: PrimeField>(m: &GradedModule<F>, dmax: i32) -> Result<(usize, GradedModule<F>)> {
    let mut cur = m.pruned();
    let mut t = 0;
    loop {
        let functionals = cur.dual_functionals(dmax)?;
        let c = unit_pairing(&functionals, cur.gens());
        let hit = (0..c.rows()).find_map(|j| (0..c.cols()).find(|&i| !c[(j, i)].is_zero()));
        match hit {
            None => return Ok((t, cur)),
            Some(i) => {
                cur = cur.quotient(&[cur.generator(i)]).pruned();
                t += 1;
            }
        }
    }
}

/// Invariants that need only a resolution, bundled for reporting.
#[derive(Clone, Debug)]
pub struct ResolutionSummary {
    pub betti: BettiTable,
    pub pdim: Option<Pdim>,
}

pub fn summarize<F: PrimeField>(m: &GradedModule<F>, bounds: &Bounds) -> Result<ResolutionSummary> {
    let stop = bounds.hmax.max(m.ring().depth() + 1);
    let res = Resolution::compute(m, stop, bounds.dmax)?;
    let depth_r = m.ring().depth();
    let pdim = match res.pdim() {
        Some(p) => Some(Pdim::Finite(p)),
        None if res.top() > depth_r => Some(Pdim::Infinite),
        None => None,
    };
    let mut betti = res.betti_table();
    if betti.computed > bounds.hmax {
        betti.entries.retain(|(n, _), _| *n <= bounds.hmax);
        betti.computed = bounds.hmax;
        betti.complete = false;
    }
    Ok(ResolutionSummary { betti, pdim })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::poly::Poly;
    use crate::ring::GradedRing;
    use std::sync::Arc;

    type F = Fp<13>;
    type R = GradedRing<F>;
    const DMAX: i32 = 40;

    fn x2() -> Arc<R> {
        R::with_relations(&["x", "y"], &[1, 1], &["x^2"]).unwrap()
    }

    fn k(r: &Arc<R>) -> GradedModule<F> {
        GradedModule::residue_field(r.clone())
    }

    fn max_ideal(r: &Arc<R>) -> GradedModule<F> {
        let vars: Vec<Poly<F>> = (0..r.nvars()).map(|i| r.var(i)).collect();
        GradedModule::ideal(r.clone(), &vars, DMAX).unwrap()
    }

    #[test]
    fn residue_field_over_x2() {
        let r = x2();
        let res = Resolution::compute(&k(&r), 6, DMAX).unwrap();
        res.verify().unwrap();
        assert_eq!(res.betti_table().totals(), vec![1, 2, 2, 2, 2, 2, 2]);
        assert_eq!(pdim(&k(&r), DMAX).unwrap().0, Pdim::Infinite);
    }

    #[test]
    fn koszul_over_polynomial_ring() {
        let s = R::polynomial_ring(&["x", "y"], &[1, 1]).unwrap();
        let res = Resolution::compute(&k(&s), 8, DMAX).unwrap();
        assert!(res.is_complete());
        assert_eq!(res.betti_table().totals(), vec![1, 2, 1]);
        assert_eq!(res.pdim(), Some(2));
        assert_eq!(chi_classical(&k(&s), 0, DMAX).unwrap(), 0);
        assert_eq!(chi_classical(&k(&s), 1, DMAX).unwrap(), 1);
        assert_eq!(chi_classical(&k(&s), 2, DMAX).unwrap(), 1);
    }

    #[test]
    fn quotients_by_powers_of_m_have_infinite_pdim() {
        let r = x2();
        for t in 1..=3u32 {
            let gens: Vec<Poly<F>> = crate::ring::monomials_of_degree(r.weights(), t)
                .into_iter()
                .map(|m| Poly::monomial(m, F::new(1)))
                .collect();
            let q = GradedModule::cyclic(r.clone(), &gens).unwrap();
            assert_eq!(pdim(&q, DMAX).unwrap().0, Pdim::Infinite, "t = {t}");
        }
    }

    #[test]
    fn ext_against_the_ring() {
        let r = x2();
        let mut res_m = Resolution::compute(&max_ideal(&r), 3, DMAX).unwrap();
        assert!(res_m.ext_vanishes(1).unwrap());
        let mut res_k = Resolution::compute(&k(&r), 3, DMAX).unwrap();
        assert!(!res_k.ext_vanishes(1).unwrap());
        let e1 = res_k.ext_module(1).unwrap();
        assert!(!e1.is_zero_module());
        let mut res_r = Resolution::compute(&GradedModule::free(r, vec![0]), 3, DMAX).unwrap();
        assert!(res_r.ext_vanishes(1).unwrap());
        assert!(res_r.ext_vanishes(2).unwrap());
    }

    #[test]
    fn depths() {
        let r = x2();
        assert_eq!(depth(&GradedModule::free(r.clone(), vec![0]), DMAX).unwrap(), 1);
        assert_eq!(depth(&k(&r), DMAX).unwrap(), 0);
        let m = max_ideal(&r);
        let q = m.quotient(&[Column {
            degree: 2,
            entries: vec![Poly::zero(2), r.poly("y").unwrap()],
        }]);
        assert_eq!(depth(&q, DMAX).unwrap(), 0);
        let s = R::polynomial_ring(&["x", "y", "z"], &[1, 1, 1]).unwrap();
        assert_eq!(depth(&GradedModule::free(s, vec![0]), DMAX).unwrap(), 3);
    }

    #[test]
    fn chi_of_quotient_by_regular_element_is_zero() {
        let r = x2();
        let rr = GradedModule::free(r.clone(), vec![0, 0]);
        let q = rr.quotient_by_elements(&[r.poly("y").unwrap()]).unwrap();
        assert_eq!(chi_classical(&q, 0, DMAX).unwrap(), 0);
        assert_eq!(chi_classical(&rr, 0, DMAX).unwrap(), 2);
        assert_eq!(chi_classical(&rr, 1, DMAX).unwrap(), 0);
        assert!(matches!(chi_classical(&k(&r), 0, DMAX), Err(Error::Undefined(_))));
    }

    #[test]
    fn free_rank() {
        let r = x2();
        let rr = GradedModule::free(r.clone(), vec![0, 0, 0]);
        let (t, c) = f_rank(&rr, DMAX).unwrap();
        assert_eq!(t, 3);
        assert!(c.is_zero_module());
        let m = max_ideal(&r);
        assert_eq!(f_rank(&m, DMAX).unwrap().0, 0);
        let sum = m.sum_with(&GradedModule::free(r, vec![0])).unwrap();
        let (t, c) = f_rank(&sum, DMAX).unwrap();
        assert_eq!(t, 1);
        assert_eq!(c.beta0(), 2);
    }
}
