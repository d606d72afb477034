//! Bounded chain complexes of presented graded modules.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::module::{combine, kernel, lift, Column, GradedModule, Length};
use crate::poly::Poly;
use crate::resolution::Resolution;
use crate::ring::GradedRing;

/// `… → C_n → C_{n-1} → …`, supported on `low..=high`.
#[derive(Clone, Debug)]
pub struct ChainComplex<F: PrimeField> {
    ring: Arc<GradedRing<F>>,
    low: i32,
    modules: Vec<GradedModule<F>>,
    /// `diffs[i]` is `∂_{low+i+1}`: images of the generators of slot `low+i+1`.
    diffs: Vec<Vec<Column<F>>>,
}

fn negate_all<F: PrimeField>(cols: &[Column<F>]) -> Vec<Column<F>> {
    cols.iter().map(Column::negated).collect()
}

impl<F: PrimeField> ChainComplex<F> {
    /// Validates shapes, that each differential is well defined and `∂² = 0`.
    pub fn new(
        ring: Arc<GradedRing<F>>,
        low: i32,
        modules: Vec<GradedModule<F>>,
        diffs: Vec<Vec<Column<F>>>,
    ) -> Result<Self> {
        if modules.is_empty() {
            return Err(Error::Input("a complex needs at least one slot".into()));
        }
        if diffs.len() + 1 != modules.len() {
            return Err(Error::Input(format!(
                "{} slots need {} differentials, got {}",
                modules.len(),
                modules.len() - 1,
                diffs.len()
            )));
        }
        let c = ChainComplex {
            ring,
            low,
            modules,
            diffs,
        };
        for i in 0..c.diffs.len() {
            let n = c.low + i as i32 + 1;
            let (src, tgt) = (&c.modules[i + 1], &c.modules[i]);
            let d = &c.diffs[i];
            if d.len() != src.num_gens() {
                return Err(Error::Input(format!("∂_{n} needs one column per generator")));
            }
            for (j, col) in d.iter().enumerate() {
                if col.degree != src.gens()[j] || col.len() != tgt.num_gens() {
                    return Err(Error::Input(format!("∂_{n}: column {} has the wrong shape", j + 1)));
                }
            }
            for rel in src.relations() {
                if !tgt.is_zero_element(&combine(&c.ring, d, rel, tgt.num_gens())) {
                    return Err(Error::Input(format!("∂_{n} does not respect relations")));
                }
            }
            if i > 0 {
                let below = &c.modules[i - 1];
                for col in d {
                    let img = combine(&c.ring, &c.diffs[i - 1], col, below.num_gens());
                    if !below.is_zero_element(&img) {
                        return Err(Error::Consistency(format!("∂_{}∂_{n} != 0", n - 1)));
                    }
                }
            }
        }
        Ok(c)
    }

    /// `M` placed in slot `n`.
    pub fn concentrated(m: GradedModule<F>, n: i32) -> Self {
        ChainComplex {
            ring: m.ring().clone(),
            low: n,
            modules: vec![m],
            diffs: Vec::new(),
        }
    }

    /// `0 → F_top → … → F_0 → 0` from a computed resolution.
    pub fn from_resolution(res: &Resolution<F>, top: usize) -> Self {
        let top = top.min(res.top());
        ChainComplex {
            ring: res.module().ring().clone(),
            low: 0,
            modules: (0..=top).map(|n| res.free_module(n)).collect(),
            diffs: (1..=top).map(|n| res.differential(n).to_vec()).collect(),
        }
    }

    /// Resolution followed by `M` in slot `-1`.
    pub fn augmented_resolution(res: &Resolution<F>, top: usize) -> Self {
        let top = top.min(res.top());
        let mut modules = vec![res.module().clone()];
        modules.extend((0..=top).map(|n| res.free_module(n)));
        let mut diffs = vec![res.module().identity_columns()];
        diffs.extend((1..=top).map(|n| res.differential(n).to_vec()));
        ChainComplex {
            ring: res.module().ring().clone(),
            low: -1,
            modules,
            diffs,
        }
    }

    /// Koszul complex on homogeneous elements; slot `j` has the `j`-subsets as basis.
    pub fn koszul(ring: Arc<GradedRing<F>>, elems: &[Poly<F>]) -> Result<Self> {
        let r = elems.len();
        let mut degs = Vec::with_capacity(r);
        for e in elems {
            degs.push(
                ring.degree_of(e)?
                    .ok_or_else(|| Error::Input("Koszul complex on a zero element".into()))?,
            );
        }
        let subsets = |j: usize| -> Vec<u32> {
            (0u32..1 << r).filter(|s| s.count_ones() as usize == j).collect()
        };
        let deg_of = |s: u32| -> i32 { (0..r).filter(|i| s >> i & 1 == 1).map(|i| degs[i]).sum() };
        let nv = ring.nvars();
        let mut modules = Vec::new();
        let mut diffs = Vec::new();
        for j in 0..=r {
            let basis = subsets(j);
            modules.push(GradedModule::free(ring.clone(), basis.iter().map(|&s| deg_of(s)).collect()));
            if j > 0 {
                let lower = subsets(j - 1);
                let mut cols = Vec::new();
                for &s in &basis {
                    let mut col = Column::zero(nv, lower.len(), deg_of(s));
                    let mut sign = 0;
                    for i in 0..r {
                        if s >> i & 1 == 0 {
                            continue;
                        }
                        let t = s & !(1 << i);
                        let row = lower.iter().position(|&u| u == t).expect("subset present");
                        col.entries[row] = if sign % 2 == 0 {
                            elems[i].clone()
                        } else {
                            -elems[i].clone()
                        };
                        sign += 1;
                    }
                    cols.push(col);
                }
                diffs.push(cols);
            }
        }
        Self::new(ring, 0, modules, diffs)
    }

    pub fn ring(&self) -> &Arc<GradedRing<F>> {
        &self.ring
    }

    pub fn low(&self) -> i32 {
        self.low
    }

    pub fn high(&self) -> i32 {
        self.low + self.modules.len() as i32 - 1
    }

    /// Slot `n`; the zero module outside the support.
    pub fn module(&self, n: i32) -> GradedModule<F> {
        self.slot(n)
            .cloned()
            .unwrap_or_else(|| GradedModule::zero(self.ring.clone()))
    }

    fn slot(&self, n: i32) -> Option<&GradedModule<F>> {
        if n < self.low {
            return None;
        }
        self.modules.get((n - self.low) as usize)
    }

    /// `∂_n`, one column per generator of slot `n`.
    pub fn differential(&self, n: i32) -> Vec<Column<F>> {
        if n > self.low && n <= self.high() {
            self.diffs[(n - self.low - 1) as usize].clone()
        } else {
            let nv = self.ring.nvars();
            self.module(n).gens().iter().map(|g| Column::zero(nv, 0, *g)).collect()
        }
    }

    /// `ΣC`: slot `n` holds `C_{n-1}`, differentials negated.
    pub fn shift(&self) -> Self {
        ChainComplex {
            ring: self.ring.clone(),
            low: self.low + 1,
            modules: self.modules.clone(),
            diffs: self.diffs.iter().map(|d| negate_all(d)).collect(),
        }
    }

    /// Internal twist `C(a)` of every slot.
    pub fn twist(&self, a: i32) -> Self {
        ChainComplex {
            ring: self.ring.clone(),
            low: self.low,
            modules: self.modules.iter().map(|m| m.twist(a)).collect(),
            diffs: self
                .diffs
                .iter()
                .map(|d| {
                    d.iter()
                        .map(|c| Column {
                            degree: c.degree - a,
                            entries: c.entries.clone(),
                        })
                        .collect()
                })
                .collect(),
        }
    }

    /// Cycles of slot `n`, as elements of its free cover.
    pub fn cycles(&self, n: i32, dmax: i32) -> Result<Vec<Column<F>>> {
        let m = self.module(n);
        let below = self.module(n - 1);
        if below.num_gens() == 0 {
            return Ok(m.identity_columns());
        }
        kernel(&below, &self.differential(n), dmax, &format!("cycles in slot {n}"))
    }

    /// `H_n = Ker ∂_n / Im ∂_{n+1}`, presented on the cycle generators.
    pub fn homology(&self, n: i32, dmax: i32) -> Result<GradedModule<F>> {
        let z = self.cycles(n, dmax)?;
        let b = if n < self.high() {
            self.differential(n + 1)
        } else {
            Vec::new()
        };
        self.module(n).subquotient(&z, &b, dmax)
    }

    pub fn is_exact_at(&self, n: i32, dmax: i32) -> Result<bool> {
        let m = self.module(n);
        let b = if n < self.high() {
            self.differential(n + 1)
        } else {
            Vec::new()
        };
        let q = m.quotient(&b);
        Ok(self.cycles(n, dmax)?.iter().all(|z| q.is_zero_element(z)))
    }

    pub fn is_exact(&self, dmax: i32) -> Result<bool> {
        for n in self.low..=self.high() {
            if !self.is_exact_at(n, dmax)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Slots `≥ n`.
    pub fn hard_truncation(&self, n: i32) -> Self {
        let start = (n - self.low).max(0) as usize;
        if start >= self.modules.len() {
            return Self::concentrated(GradedModule::zero(self.ring.clone()), n);
        }
        ChainComplex {
            ring: self.ring.clone(),
            low: self.low + start as i32,
            modules: self.modules[start..].to_vec(),
            diffs: self.diffs[start..].to_vec(),
        }
    }

    /// `0 → Im ∂_d → C_{d-1} → … `: slots above `d` dropped, slot `d` replaced by its image.
    pub fn soft_truncation(&self, d: i32, dmax: i32) -> Result<Self> {
        if d <= self.low || d > self.high() {
            return Err(Error::Input(format!(
                "soft truncation at {d} outside {}..={}",
                self.low + 1,
                self.high()
            )));
        }
        let keep = (d - self.low) as usize;
        let cols = self.differential(d);
        let image = self.module(d - 1).image(&cols, dmax)?;
        let mut modules = self.modules[..keep].to_vec();
        modules.push(image);
        let mut diffs = self.diffs[..keep - 1].to_vec();
        diffs.push(cols);
        Self::new(self.ring.clone(), self.low, modules, diffs)
    }

    /// `Hom(C, R)` reindexed so that slot `m` holds `Hom(C_{high-m}, R)`.
    pub fn dualize(&self, dmax: i32) -> Result<Self> {
        let top = self.high();
        let duals = self
            .modules
            .iter()
            .map(|m| m.dual(dmax))
            .collect::<Result<Vec<_>>>()?;
        let nv = self.ring.nvars();
        let mut modules = Vec::new();
        let mut diffs = Vec::new();
        // Result slot m = top - n for n from high down to low.
        for n in (self.low..=top).rev() {
            let i = (n - self.low) as usize;
            modules.push(duals[i].module.clone());
            if n < top {
                // Hom(C_n, R) → Hom(C_{n+1}, R), h ↦ h ∘ ∂_{n+1}.
                let d = &self.diffs[i];
                let src = &self.modules[i + 1];
                let ambient = GradedModule::free(self.ring.clone(), src.gens().iter().map(|g| -g).collect());
                let mut cols = Vec::new();
                for h in &duals[i].functionals {
                    let mut comp = Column::zero(nv, src.num_gens(), h.degree);
                    for (k, c) in d.iter().enumerate() {
                        let mut acc = Poly::zero(nv);
                        for (e, hj) in c.entries.iter().zip(&h.entries) {
                            if !e.is_zero() && !hj.is_zero() {
                                acc = acc + hj * e;
                            }
                        }
                        comp.entries[k] = self.ring.reduce(&acc);
                    }
                    let coeffs = lift(&ambient, &duals[i + 1].functionals, &comp).ok_or_else(|| {
                        Error::Consistency("composite functional outside the dual".into())
                    })?;
                    cols.push(coeffs);
                }
                diffs.push(cols);
            }
        }
        Self::new(self.ring.clone(), 0, modules, diffs)
    }

    /// Total complex of `C ⊗ D` with `∂(a⊗b) = ∂a⊗b + (-1)^|a| a⊗∂b`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let nv = self.ring.nvars();
        let low = self.low + other.low;
        let high = self.high() + other.high();
        // Slot n is ordered by p ascending; offsets[n][p] is where C_p ⊗ D_{n-p} starts.
        let mut modules = Vec::new();
        let mut offsets: Vec<Vec<(i32, usize)>> = Vec::new();
        for n in low..=high {
            let mut parts = Vec::new();
            let mut offs = Vec::new();
            let mut acc = 0;
            for p in self.low..=self.high() {
                let q = n - p;
                if q < other.low || q > other.high() {
                    continue;
                }
                let t = self.module(p).tensor(&other.module(q));
                offs.push((p, acc));
                acc += t.num_gens();
                parts.push(t);
            }
            let refs: Vec<&GradedModule<F>> = parts.iter().collect();
            modules.push(if refs.is_empty() {
                GradedModule::zero(self.ring.clone())
            } else {
                GradedModule::direct_sum(&refs)?
            });
            offsets.push(offs);
        }
        let mut diffs = Vec::new();
        for n in low + 1..=high {
            let idx = (n - low) as usize;
            let total_below = modules[idx - 1].num_gens();
            let mut cols = Vec::new();
            for &(p, _) in &offsets[idx] {
                let q = n - p;
                let (a, b) = (self.module(p), other.module(q));
                let da = self.differential(p);
                let db = other.differential(q);
                let below_off = |pp: i32| offsets[idx - 1].iter().find(|(x, _)| *x == pp).map(|(_, o)| *o);
                let sign_neg = p.rem_euclid(2) == 1;
                for i in 0..a.num_gens() {
                    for j in 0..b.num_gens() {
                        let deg = a.gens()[i] + b.gens()[j];
                        let mut col = Column::zero(nv, total_below, deg);
                        if let Some(off) = below_off(p - 1) {
                            let bq = b.num_gens();
                            for (k, e) in da[i].entries.iter().enumerate() {
                                col.entries[off + k * bq + j] = e.clone();
                            }
                        }
                        if let Some(off) = below_off(p) {
                            let bq = other.module(q - 1).num_gens();
                            for (k, e) in db[j].entries.iter().enumerate() {
                                col.entries[off + i * bq + k] = if sign_neg { -e.clone() } else { e.clone() };
                            }
                        }
                        cols.push(col);
                    }
                }
            }
            diffs.push(cols);
        }
        Self::new(self.ring.clone(), low, modules, diffs)
    }

    /// `(Σ (-1)^n ℓ(C_n), Σ (-1)^n ℓ(H_n))`.
    pub fn euler_sums(&self, dmax: i32) -> Result<(i64, i64)> {
        let sign = |n: i32| if n.rem_euclid(2) == 0 { 1 } else { -1 };
        let mut slots = 0i64;
        let mut homology = 0i64;
        for n in self.low..=self.high() {
            match self.module(n).length(dmax) {
                Length::Finite(l) => slots += sign(n) * l as i64,
                Length::Infinite => {
                    return Err(Error::Undefined(format!("slot {n} does not have finite length")))
                }
            }
            match self.homology(n, dmax)?.length(dmax) {
                Length::Finite(l) => homology += sign(n) * l as i64,
                Length::Infinite => {
                    return Err(Error::Consistency(format!("H_{n} of a finite-length complex is infinite")))
                }
            }
        }
        Ok((slots, homology))
    }

    /// `Σ (-1)^n ℓ(C_n)`, checked against `Σ (-1)^n ℓ(H_n)`.
    pub fn alternating_sum(&self, dmax: i32) -> Result<i64> {
        let (slots, homology) = self.euler_sums(dmax)?;
        if slots != homology {
            return Err(Error::Consistency(format!(
                "alternating sums differ: slots {slots}, homology {homology}"
            )));
        }
        Ok(slots)
    }

    /// Recomputes `∂_{n-1} ∂_n` on every generator.
    pub fn squares_to_zero(&self) -> bool {
        (1..self.diffs.len()).all(|i| {
            let below = &self.modules[i - 1];
            self.diffs[i]
                .iter()
                .all(|col| below.is_zero_element(&combine(&self.ring, &self.diffs[i - 1], col, below.num_gens())))
        })
    }

    /// Alternating sum of minimal generator counts of the slots.
    pub fn alternating_beta0(&self) -> i64 {
        (self.low..=self.high())
            .map(|n| {
                let b = self.module(n).beta0() as i64;
                if n.rem_euclid(2) == 0 {
                    b
                } else {
                    -b
                }
            })
            .sum()
    }
}

/// A degree-zero morphism of complexes, `maps[n]` for slots of the source.
#[derive(Clone, Debug)]
pub struct ChainMap<F: PrimeField> {
    pub source: ChainComplex<F>,
    pub target: ChainComplex<F>,
    /// Indexed by source slot, starting at `source.low()`.
    pub maps: Vec<Vec<Column<F>>>,
}

impl<F: PrimeField> ChainMap<F> {
    /// Validates well-definedness and `f ∂ = ∂ f`.
    pub fn new(source: ChainComplex<F>, target: ChainComplex<F>, maps: Vec<Vec<Column<F>>>) -> Result<Self> {
        if maps.len() != source.modules.len() {
            return Err(Error::Input("one map per source slot is required".into()));
        }
        let ring = source.ring.clone();
        let f = ChainMap { source, target, maps };
        for n in f.source.low..=f.source.high() {
            let (s, t) = (f.source.module(n), f.target.module(n));
            let fm = f.at(n);
            if fm.len() != s.num_gens() {
                return Err(Error::Input(format!("f_{n} needs one column per generator")));
            }
            for (j, c) in fm.iter().enumerate() {
                if c.degree != s.gens()[j] || c.len() != t.num_gens() {
                    return Err(Error::Input(format!("f_{n}: column {} has the wrong shape", j + 1)));
                }
            }
            for rel in s.relations() {
                if !t.is_zero_element(&combine(&ring, &fm, rel, t.num_gens())) {
                    return Err(Error::Input(format!("f_{n} does not respect relations")));
                }
            }
            let below = f.target.module(n - 1);
            let f_below = f.at(n - 1);
            let ds = f.source.differential(n);
            let dt = f.target.differential(n);
            for j in 0..s.num_gens() {
                let lhs = combine(&ring, &f_below, &ds[j], below.num_gens());
                let rhs = combine(&ring, &dt, &fm[j], below.num_gens());
                if !below.is_zero_element(&lhs.plus(&rhs.negated())) {
                    return Err(Error::Input(format!("not a chain map at slot {n}")));
                }
            }
        }
        Ok(f)
    }

    /// `f_n`; zero columns outside the source support.
    pub fn at(&self, n: i32) -> Vec<Column<F>> {
        if n < self.source.low || n > self.source.high() {
            let nv = self.source.ring.nvars();
            let t = self.target.module(n).num_gens();
            return self
                .source
                .module(n)
                .gens()
                .iter()
                .map(|g| Column::zero(nv, t, *g))
                .collect();
        }
        self.maps[(n - self.source.low) as usize].clone()
    }

    pub fn identity(c: &ChainComplex<F>) -> Self {
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            maps: c.modules.iter().map(GradedModule::identity_columns).collect(),
        }
    }

    /// Multiplication by a homogeneous `s`, as `C(-deg s) → C`.
    pub fn multiplication(c: &ChainComplex<F>, s: &Poly<F>) -> Result<Self> {
        let e = c
            .ring
            .degree_of(s)?
            .ok_or_else(|| Error::Input("multiplication by zero has no degree".into()))?;
        let source = c.twist(-e);
        let maps = c
            .modules
            .iter()
            .map(|m| m.identity_columns().iter().map(|g| g.scaled(s, e)).collect())
            .collect();
        Self::new(source, c.clone(), maps)
    }

    /// `Cone(f)_n = X_{n-1} ⊕ Y_n` with `∂ = [[-∂X, 0], [f, ∂Y]]`.
    pub fn cone(&self) -> Result<ChainComplex<F>> {
        let (x, y) = (&self.source, &self.target);
        let ring = x.ring.clone();
        let nv = ring.nvars();
        let low = (x.low + 1).min(y.low);
        let high = (x.high() + 1).max(y.high());
        let mut modules = Vec::new();
        for n in low..=high {
            modules.push(GradedModule::direct_sum(&[&x.module(n - 1), &y.module(n)])?);
        }
        let mut diffs = Vec::new();
        for n in low + 1..=high {
            let (xs, ys) = (x.module(n - 1), y.module(n));
            let (xb, yb) = (x.module(n - 2).num_gens(), y.module(n - 1).num_gens());
            let dx = x.differential(n - 1);
            let dy = y.differential(n);
            let f = self.at(n - 1);
            let mut cols = Vec::new();
            for j in 0..xs.num_gens() {
                let mut col = Column::zero(nv, xb + yb, xs.gens()[j]);
                for (k, e) in dx[j].entries.iter().enumerate() {
                    col.entries[k] = -e.clone();
                }
                for (k, e) in f[j].entries.iter().enumerate() {
                    col.entries[xb + k] = e.clone();
                }
                cols.push(col);
            }
            for j in 0..ys.num_gens() {
                let mut col = Column::zero(nv, xb + yb, ys.gens()[j]);
                for (k, e) in dy[j].entries.iter().enumerate() {
                    col.entries[xb + k] = e.clone();
                }
                cols.push(col);
            }
            diffs.push(cols);
        }
        ChainComplex::new(ring, low, modules, diffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;

    type F = Fp<13>;
    type R = GradedRing<F>;
    const DMAX: i32 = 40;

    fn length(m: &GradedModule<F>) -> usize {
        match m.length(DMAX) {
            Length::Finite(l) => l,
            Length::Infinite => panic!("infinite length"),
        }
    }

    #[test]
    fn koszul_on_a_regular_sequence() {
        let s = R::polynomial_ring(&["x", "y"], &[1, 1]).unwrap();
        let k = ChainComplex::koszul(s.clone(), &[s.var(0), s.var(1)]).unwrap();
        let ranks: Vec<usize> = (0..=2).map(|n| k.module(n).num_gens()).collect();
        assert_eq!(ranks, vec![1, 2, 1]);
        assert_eq!(length(&k.homology(0, DMAX).unwrap()), 1);
        assert!(k.is_exact_at(1, DMAX).unwrap());
        assert!(k.is_exact_at(2, DMAX).unwrap());
    }

    #[test]
    fn koszul_detects_a_zero_divisor() {
        let r = R::with_relations(&["x", "y"], &[1, 1], &["x^2"]).unwrap();
        let k = ChainComplex::koszul(r.clone(), &[r.var(0)]).unwrap();
        assert!(!k.is_exact_at(1, DMAX).unwrap());
        let h1 = k.homology(1, DMAX).unwrap();
        assert_eq!(h1.gens(), &[2]);
    }

    #[test]
    fn cone_of_identity_is_exact() {
        let r = R::with_relations(&["x", "y"], &[1, 1], &["x^2"]).unwrap();
        let k = GradedModule::residue_field(r.clone());
        let res = Resolution::compute(&k, 3, DMAX).unwrap();
        let c = ChainComplex::from_resolution(&res, 3);
        let cone = ChainMap::identity(&c).cone().unwrap();
        assert!(cone.is_exact(DMAX).unwrap());
        assert!(!c.is_exact(DMAX).unwrap());
        assert!(ChainComplex::augmented_resolution(&res, 3).is_exact_at(0, DMAX).unwrap());
    }

    #[test]
    fn shifts_and_twists() {
        let s = R::polynomial_ring(&["x"], &[1]).unwrap();
        let k = ChainComplex::koszul(s.clone(), &[s.var(0)]).unwrap();
        let ss = k.shift().shift();
        assert_eq!(ss.low(), 2);
        assert_eq!(ss.differential(3)[0], k.differential(1)[0]);
        assert_eq!(k.shift().differential(2)[0], k.differential(1)[0].negated());
        let h = k.shift().homology(1, DMAX).unwrap();
        assert_eq!(length(&h), 1);
    }

    #[test]
    fn tensor_of_koszul_complexes() {
        let s = R::polynomial_ring(&["x", "y"], &[1, 1]).unwrap();
        let kx = ChainComplex::koszul(s.clone(), &[s.var(0)]).unwrap();
        let ky = ChainComplex::koszul(s.clone(), &[s.var(1)]).unwrap();
        let t = kx.tensor(&ky).unwrap();
        let ranks: Vec<usize> = (0..=2).map(|n| t.module(n).num_gens()).collect();
        assert_eq!(ranks, vec![1, 2, 1]);
        assert!(t.is_exact_at(1, DMAX).unwrap());
        assert!(t.is_exact_at(2, DMAX).unwrap());
        let unit = ChainComplex::concentrated(GradedModule::free(s.clone(), vec![0]), 0);
        let u = kx.tensor(&unit).unwrap();
        assert_eq!(u.differential(1)[0], kx.differential(1)[0]);
    }

    #[test]
    fn soft_truncation_and_dual() {
        let r = R::with_relations(&["x", "y"], &[1, 1], &["x^2"]).unwrap();
        let k = GradedModule::residue_field(r.clone());
        let res = Resolution::compute(&k, 3, DMAX).unwrap();
        let c = ChainComplex::from_resolution(&res, 3);
        let t = c.soft_truncation(1, DMAX).unwrap();
        assert_eq!(t.high(), 1);
        assert_eq!(t.module(1).beta0(), 2);
        let d = t.dualize(DMAX).unwrap();
        assert_eq!(d.module(1).beta0(), 1);
        assert_eq!(d.module(0).beta0(), 2);
        assert!(d.is_exact_at(1, DMAX).unwrap());
        assert_eq!(length(&d.homology(0, DMAX).unwrap()), 1);
        assert!(c.hard_truncation(0).is_exact_at(1, DMAX).unwrap());
    }

    #[test]
    fn euler_sums_of_finite_length_complexes() {
        let r = R::with_relations(&["x"], &[1], &["x^3"]).unwrap();
        let k = GradedModule::residue_field(r.clone());
        let id = ChainComplex::new(r.clone(), 0, vec![k.clone(), k.clone()], vec![k.identity_columns()]).unwrap();
        assert_eq!(id.alternating_sum(DMAX).unwrap(), 0);
        assert_eq!(ChainComplex::concentrated(k, 0).alternating_sum(DMAX).unwrap(), 1);
        let x = ChainComplex::koszul(r.clone(), &[r.var(0)]).unwrap();
        assert_eq!(x.alternating_sum(DMAX).unwrap(), 0);
    }

    #[test]
    fn invalid_differentials_are_rejected() {
        let r = R::with_relations(&["x"], &[1], &["x^3"]).unwrap();
        let f = |d: i32| GradedModule::free(r.clone(), vec![d]);
        let x = r.var(0);
        let col = |d: i32| Column {
            degree: d,
            entries: vec![x.clone()],
        };
        let bad = ChainComplex::new(r.clone(), 0, vec![f(0), f(1), f(2)], vec![vec![col(1)], vec![col(2)]]);
        assert!(matches!(bad, Err(Error::Consistency(_))));
        let x2 = ChainComplex::new(
            r.clone(),
            0,
            vec![f(0), f(1), f(3)],
            vec![
                vec![col(1)],
                vec![Column {
                    degree: 3,
                    entries: vec![r.poly("x^2").unwrap()],
                }],
            ],
        );
        assert!(x2.is_ok());
    }
}
