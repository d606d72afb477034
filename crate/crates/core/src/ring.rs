//! Weighted-graded complete-intersection rings `k[x]/(f)` realized degree by degree.

use rustc_hash::FxHashMap as HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::{DenseMatrix, Echelon};
use crate::poly::{weighted_degree, Monomial, Poly};

/// One graded piece `R_d` of a quotient ring.
///
/// `monomials` enumerates every monomial of weighted degree `d` in the
/// ambient polynomial ring; the standard monomials (non-pivot columns of the
/// reduced ideal component `I_d`) form a basis of `R_d`, and `nf` expresses
/// every ambient monomial in that basis.
#[derive(Debug)]
pub struct RingComponent<F> {
    degree: i32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    standard: Vec<usize>,
    nf: Vec<Vec<(usize, F)>>,
}

impl<F: PrimeField> RingComponent<F> {
    fn empty(degree: i32) -> Self {
        RingComponent {
            degree,
            monomials: Vec::new(),
            index: HashMap::default(),
            standard: Vec::new(),
            nf: Vec::new(),
        }
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.standard.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.monomials.len()
    }

    /// The `i`th standard monomial.
    pub fn basis_monomial(&self, i: usize) -> &Monomial {
        &self.monomials[self.standard[i]]
    }

    pub fn ambient_index(&self, m: &[u32]) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of an ambient monomial in the standard basis.
    pub fn normal_form_of(&self, ambient: usize) -> &[(usize, F)] {
        &self.nf[ambient]
    }
}

pub struct GradedRing<F: PrimeField> {
    names: Vec<String>,
    weights: Vec<u32>,
    relations: Vec<Poly<F>>,
    relation_degrees: Vec<u32>,
    components: RwLock<HashMap<i32, Arc<RingComponent<F>>>>,
}

impl<F: PrimeField> fmt::Debug for GradedRing<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedRing({})", self.describe())
    }
}

pub fn monomials_of_degree(weights: &[u32], d: u32) -> Vec<Monomial> {
    fn rec(weights: &[u32], k: usize, left: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if k == weights.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if k + 1 == weights.len() {
            if left.is_multiple_of(weights[k]) {
                cur[k] = left / weights[k];
                out.push(cur.clone());
                cur[k] = 0;
            }
            return;
        }
        let mut e = 0;
        while e * weights[k] <= left {
            cur[k] = e;
            rec(weights, k + 1, left - e * weights[k], cur, out);
            e += 1;
        }
        cur[k] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0; weights.len()];
    rec(weights, 0, d, &mut cur, &mut out);
    out
}

/// Coefficients of `prod (1 - t^{d_j}) / prod (1 - t^{w_i})` up to `t^upto`.
pub fn complete_intersection_hilbert(weights: &[u32], degrees: &[u32], upto: usize) -> Vec<i64> {
    let mut c = vec![0i64; upto + 1];
    c[0] = 1;
    for &w in weights {
        for i in (w as usize)..=upto {
            c[i] += c[i - w as usize];
        }
    }
    for &d in degrees {
        for i in (d as usize..=upto).rev() {
            c[i] -= c[i - d as usize];
        }
    }
    c
}

impl<F: PrimeField> GradedRing<F> {
    /// Builds `k[names]/(relations)` and certifies that the relations form a
    /// homogeneous regular sequence.
    pub fn new(names: Vec<String>, weights: Vec<u32>, relations: Vec<Poly<F>>) -> Result<Arc<Self>> {
        if names.len() != weights.len() {
            return Err(Error::Input("one weight per variable is required".into()));
        }
        if weights.contains(&0) {
            return Err(Error::Input("variable weights must be positive".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::Input(format!("variable '{n}' declared twice")));
            }
        }
        let mut relation_degrees = Vec::new();
        for f in &relations {
            if f.nvars() != names.len() {
                return Err(Error::Input("relation has the wrong number of variables".into()));
            }
            if !f.is_homogeneous(&weights) {
                return Err(Error::Input(format!(
                    "relation {} is not homogeneous",
                    f.to_string_with(&names)
                )));
            }
            match f.degree(&weights) {
                Some(d) if d > 0 => relation_degrees.push(d),
                _ => {
                    return Err(Error::NotRegular(format!(
                        "relation {} is zero or a unit",
                        f.to_string_with(&names)
                    )))
                }
            }
        }
        let ring = Arc::new(GradedRing {
            names,
            weights,
            relations,
            relation_degrees,
            components: RwLock::new(HashMap::default()),
        });
        ring.certify_regular_sequence()?;
        Ok(ring)
    }

    pub fn polynomial_ring(names: &[&str], weights: &[u32]) -> Result<Arc<Self>> {
        Self::new(
            names.iter().map(|s| s.to_string()).collect(),
            weights.to_vec(),
            Vec::new(),
        )
    }

    /// Parses relations written in the ring's variables.
    pub fn with_relations(names: &[&str], weights: &[u32], relations: &[&str]) -> Result<Arc<Self>> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let rels = relations
            .iter()
            .map(|r| Poly::parse(r, &names).map_err(Error::Input))
            .collect::<Result<Vec<_>>>()?;
        Self::new(names, weights.to_vec(), rels)
    }

    fn certify_regular_sequence(&self) -> Result<()> {
        let window = self.certificate_window();
        let expected = complete_intersection_hilbert(&self.weights, &self.relation_degrees, window);
        for (d, &e) in expected.iter().enumerate() {
            let got = self.dim(d as i32) as i64;
            if got != e {
                return Err(Error::NotRegular(format!(
                    "Hilbert function of {} is {got} in degree {d}, a complete intersection needs {e}",
                    self.describe()
                )));
            }
        }
        Ok(())
    }

    fn certificate_window(&self) -> usize {
        let rel: u32 = self.relation_degrees.iter().sum();
        let w: u32 = self.weights.iter().sum();
        (rel + w + self.max_weight()) as usize
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn relations(&self) -> &[Poly<F>] {
        &self.relations
    }

    pub fn relation_degrees(&self) -> &[u32] {
        &self.relation_degrees
    }

    pub fn characteristic(&self) -> u32 {
        F::CHARACTERISTIC
    }

    pub fn max_weight(&self) -> u32 {
        self.weights.iter().copied().max().unwrap_or(1)
    }

    pub fn max_relation_degree(&self) -> u32 {
        self.relation_degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn is_standard_graded(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    /// Krull dimension, `n - c` for a complete intersection.
    pub fn krull_dim(&self) -> usize {
        self.nvars() - self.relations.len()
    }

    /// Depth equals dimension: complete intersections are Cohen-Macaulay.
    pub fn depth(&self) -> usize {
        self.krull_dim()
    }

    /// Regular iff no relation has a linear part, i.e. `m/m^2` has full rank.
    pub fn is_regular(&self) -> bool {
        self.embedding_dim() == self.krull_dim()
    }

    /// `dim_k m/m^2`.
    pub fn embedding_dim(&self) -> usize {
        let linear: Vec<Vec<F>> = self
            .relations
            .iter()
            .map(|f| {
                (0..self.nvars())
                    .map(|k| {
                        let mut e = vec![0; self.nvars()];
                        e[k] = 1;
                        f.coeff(&e)
                    })
                    .collect()
            })
            .collect();
        let r = if linear.is_empty() {
            0
        } else {
            DenseMatrix::from_rows(linear).rank()
        };
        self.nvars() - r
    }

    pub fn codim(&self) -> usize {
        self.embedding_dim() - self.krull_dim()
    }

    pub fn describe(&self) -> String {
        let vars: Vec<String> = self
            .names
            .iter()
            .zip(&self.weights)
            .map(|(n, w)| if *w == 1 { n.clone() } else { format!("{n}:{w}") })
            .collect();
        let rels: Vec<String> = self
            .relations
            .iter()
            .map(|f| f.to_string_with(&self.names))
            .collect();
        if rels.is_empty() {
            format!("GF({})[{}]", F::CHARACTERISTIC, vars.join(","))
        } else {
            format!("GF({})[{}]/({})", F::CHARACTERISTIC, vars.join(","), rels.join(","))
        }
    }

    pub fn poly(&self, text: &str) -> Result<Poly<F>> {
        Poly::parse(text, &self.names).map_err(Error::Input)
    }

    pub fn var(&self, k: usize) -> Poly<F> {
        Poly::var(self.nvars(), k)
    }

    pub fn zero_poly(&self) -> Poly<F> {
        Poly::zero(self.nvars())
    }

    pub fn one_poly(&self) -> Poly<F> {
        Poly::one(self.nvars())
    }

    /// Weighted degree of a homogeneous polynomial; `None` for zero.
    pub fn degree_of(&self, p: &Poly<F>) -> Result<Option<i32>> {
        if !p.is_homogeneous(&self.weights) {
            return Err(Error::Input(format!(
                "{} is not homogeneous",
                p.to_string_with(&self.names)
            )));
        }
        Ok(p.degree(&self.weights).map(|d| d as i32))
    }

    pub fn component(&self, d: i32) -> Arc<RingComponent<F>> {
        if let Some(c) = self.components.read().expect("lock").get(&d) {
            return c.clone();
        }
        let comp = Arc::new(self.build_component(d));
        self.components
            .write()
            .expect("lock")
            .entry(d)
            .or_insert(comp)
            .clone()
    }

    pub fn dim(&self, d: i32) -> usize {
        self.component(d).dim()
    }

    pub fn hilbert_function(&self, upto: i32) -> Vec<usize> {
        (0..=upto).map(|d| self.dim(d)).collect()
    }

    fn build_component(&self, d: i32) -> RingComponent<F> {
        if d < 0 {
            return RingComponent::empty(d);
        }
        let monomials = monomials_of_degree(&self.weights, d as u32);
        let index: HashMap<Monomial, usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let n = monomials.len();
        let mut ideal = Echelon::new(n);
        for (f, &fd) in self.relations.iter().zip(&self.relation_degrees) {
            if fd as i32 > d {
                continue;
            }
            for nu in monomials_of_degree(&self.weights, d as u32 - fd) {
                let mut v = vec![F::zero(); n];
                for (m, c) in f.terms() {
                    let prod: Monomial = m.iter().zip(&nu).map(|(a, b)| a + b).collect();
                    v[index[&prod]] = *c;
                }
                ideal.insert(v);
            }
        }
        let (reduced, pivots) = if ideal.rank() == 0 {
            (DenseMatrix::zeros(0, n), Vec::new())
        } else {
            DenseMatrix::from_rows(ideal.basis().to_vec()).rref()
        };
        let standard = ideal.free_columns();
        let mut position = vec![usize::MAX; n];
        for (i, &c) in standard.iter().enumerate() {
            position[c] = i;
        }
        let mut nf: Vec<Vec<(usize, F)>> = (0..n)
            .map(|c| {
                if position[c] != usize::MAX {
                    vec![(position[c], F::one())]
                } else {
                    Vec::new()
                }
            })
            .collect();
        for (row, &p) in pivots.iter().enumerate() {
            nf[p] = standard
                .iter()
                .enumerate()
                .filter(|(_, &c)| !reduced[(row, c)].is_zero())
                .map(|(i, &c)| (i, -reduced[(row, c)]))
                .collect();
        }
        RingComponent {
            degree: d,
            monomials,
            index,
            standard,
            nf,
        }
    }

    /// Coordinates of a homogeneous polynomial of degree `d` in the basis of `R_d`.
    pub fn normal_form(&self, p: &Poly<F>, d: i32) -> Vec<F> {
        let comp = self.component(d);
        let mut out = vec![F::zero(); comp.dim()];
        for (m, c) in p.terms() {
            debug_assert_eq!(weighted_degree(m, &self.weights) as i32, d, "degree mismatch");
            if let Some(a) = comp.ambient_index(m) {
                for (i, v) in comp.normal_form_of(a) {
                    out[*i] += *v * *c;
                }
            }
        }
        out
    }

    /// Whether `p` lies in the defining ideal.
    pub fn is_zero_poly(&self, p: &Poly<F>) -> bool {
        match p.degree(&self.weights) {
            None => true,
            Some(d) => {
                if !p.is_homogeneous(&self.weights) {
                    return false;
                }
                self.normal_form(p, d as i32).iter().all(|c| c.is_zero())
            }
        }
    }

    /// The polynomial with standard-basis coordinates `v` in degree `d`.
    pub fn to_poly(&self, v: &[F], d: i32) -> Poly<F> {
        let comp = self.component(d);
        Poly::from_terms(
            self.nvars(),
            v.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (comp.basis_monomial(i).clone(), *c)),
        )
    }

    /// Reduced representative of `p` (each homogeneous part put in normal form).
    pub fn reduce(&self, p: &Poly<F>) -> Poly<F> {
        let mut parts: HashMap<u32, Poly<F>> = HashMap::default();
        for (m, c) in p.terms() {
            let d = weighted_degree(m, &self.weights);
            parts
                .entry(d)
                .or_insert_with(|| Poly::zero(self.nvars()))
                .add_term(m.clone(), *c);
        }
        let mut out = Poly::zero(self.nvars());
        for (d, q) in parts {
            let v = self.normal_form(&q, d as i32);
            out = out + self.to_poly(&v, d as i32);
        }
        out
    }

    /// Adds `scale * u * p` into `out`, where `u` is standard monomial `u_index`
    /// of `R_{u_deg}` and `out` holds coordinates of `R_{u_deg + deg p}`.
    pub fn mul_monomial_into(
        &self,
        out: &mut [F],
        u_deg: i32,
        u_index: usize,
        p: &Poly<F>,
        p_deg: i32,
        scale: F,
    ) {
        if scale.is_zero() || p.is_zero() {
            return;
        }
        let src = self.component(u_deg);
        let dst = self.component(u_deg + p_deg);
        debug_assert_eq!(out.len(), dst.dim());
        let u = src.basis_monomial(u_index);
        let mut prod = vec![0; self.nvars()];
        for (m, c) in p.terms() {
            for k in 0..prod.len() {
                prod[k] = u[k] + m[k];
            }
            let a = dst.ambient_index(&prod).expect("product degree");
            let coeff = *c * scale;
            for (i, v) in dst.normal_form_of(a) {
                out[*i] += *v * coeff;
            }
        }
    }

    /// Calls `f(i, c)` for the terms `c` at standard basis index `i` of
    /// `u * p`, where `u` is standard monomial `u_index` of `R_{u_deg}`.
    /// Indices may repeat.
    pub fn for_each_product_term(
        &self,
        u_deg: i32,
        u_index: usize,
        p: &Poly<F>,
        p_deg: i32,
        mut f: impl FnMut(usize, F),
    ) {
        let src = self.component(u_deg);
        let dst = self.component(u_deg + p_deg);
        let u = src.basis_monomial(u_index);
        let mut prod = vec![0; self.nvars()];
        for (m, c) in p.terms() {
            for k in 0..prod.len() {
                prod[k] = u[k] + m[k];
            }
            let a = dst.ambient_index(&prod).expect("product degree");
            for (i, v) in dst.normal_form_of(a) {
                f(*i, *v * *c);
            }
        }
    }

    /// Matrix of multiplication by `p` from `R_d` to `R_{d + deg p}`.
    pub fn multiplication_matrix(&self, p: &Poly<F>, p_deg: i32, d: i32) -> DenseMatrix<F> {
        let src = self.dim(d);
        let dst = self.dim(d + p_deg);
        let mut m = DenseMatrix::zeros(dst, src);
        let mut col = vec![F::zero(); dst];
        for j in 0..src {
            col.iter_mut().for_each(|c| *c = F::zero());
            self.mul_monomial_into(&mut col, d, j, p, p_deg, F::one());
            for (i, c) in col.iter().enumerate() {
                m[(i, j)] = *c;
            }
        }
        m
    }

    /// Whether multiplication by `s` is injective on `R_d` for `d` up to `window`.
    pub fn is_nonzerodivisor_on_window(&self, s: &Poly<F>, window: i32) -> Result<bool> {
        let Some(sd) = self.degree_of(s)? else {
            return Ok(false);
        };
        for d in 0..=window {
            let m = self.multiplication_matrix(s, sd, d);
            if m.rank() < m.cols() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `R/(s)` for a homogeneous `R`-regular element `s`.
    pub fn quotient(&self, s: &Poly<F>) -> Result<Arc<Self>> {
        Ok(self.quotient_with_map(s)?.0)
    }

    /// `R/(s)` together with the images of the variables of `R` in it.
    pub fn quotient_with_map(&self, s: &Poly<F>) -> Result<(Arc<Self>, Vec<Poly<F>>)> {
        let sd = self
            .degree_of(s)?
            .ok_or_else(|| Error::NotRegular("zero is a zerodivisor".into()))?;
        if sd == 0 {
            return Err(Error::NotRegular("a unit does not define a proper quotient".into()));
        }
        let window = self.certificate_window() as i32 + sd;
        if !self.is_nonzerodivisor_on_window(s, window)? {
            return Err(Error::NotRegular(format!(
                "{} is a zerodivisor on {}",
                s.to_string_with(&self.names),
                self.describe()
            )));
        }
        let mut rels = self.relations.clone();
        rels.push(s.clone());
        let (names, weights, rels, images) = eliminate_linear_relations(&self.names, &self.weights, rels);
        Ok((GradedRing::new(names, weights, rels)?, images))
    }
}

/// Drops variables that a relation expresses linearly in the others, so that
/// e.g. `k[x,y]/(x)` becomes `k[y]`.
fn eliminate_linear_relations<F: PrimeField>(
    names: &[String],
    weights: &[u32],
    mut rels: Vec<Poly<F>>,
) -> (Vec<String>, Vec<u32>, Vec<Poly<F>>, Vec<Poly<F>>) {
    let mut names = names.to_vec();
    let mut weights = weights.to_vec();
    let mut map: Vec<Poly<F>> = (0..names.len()).map(|k| Poly::var(names.len(), k)).collect();
    loop {
        let n = names.len();
        let found = rels.iter().enumerate().find_map(|(ri, f)| {
            (0..n).find_map(|k| {
                let mut e = vec![0; n];
                e[k] = 1;
                let c = f.coeff(&e);
                // The variable must appear only in this linear term.
                let alone = f
                    .terms()
                    .all(|(m, _)| m == &e || m[k] == 0);
                (!c.is_zero() && alone).then_some((ri, k, c))
            })
        });
        let Some((ri, k, c)) = found else {
            return (names, weights, rels, map);
        };
        let f = rels.remove(ri);
        let mut e = vec![0; n];
        e[k] = 1;
        let inv = c.inverse().expect("nonzero");
        // x_k = -(f - c x_k)/c
        let rest = f.clone() - Poly::monomial(e, c);
        let image_k = rest.scale(&(-inv));
        let images: Vec<Poly<F>> = (0..n)
            .map(|j| {
                if j == k {
                    drop_var(&image_k, k)
                } else {
                    let mut v = vec![0; n - 1];
                    v[if j < k { j } else { j - 1 }] = 1;
                    Poly::monomial(v, F::one())
                }
            })
            .collect();
        rels = rels.iter().map(|g| g.substitute(&images)).filter(|g| !g.is_zero()).collect();
        map = map.iter().map(|g| g.substitute(&images)).collect();
        names.remove(k);
        weights.remove(k);
    }
}

fn drop_var<F: PrimeField>(p: &Poly<F>, k: usize) -> Poly<F> {
    Poly::from_terms(
        p.nvars() - 1,
        p.terms().map(|(m, c)| {
            let mut m = m.clone();
            m.remove(k);
            (m, *c)
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use num_traits::One;

    type F = Fp<13>;
    type R = GradedRing<F>;

    fn basis_strings(r: &R, d: i32) -> Vec<String> {
        let comp = r.component(d);
        (0..comp.dim())
            .map(|i| Poly::<F>::monomial(comp.basis_monomial(i).clone(), F::one()).to_string_with(r.names()))
            .collect()
    }

    #[test]
    fn hypersurface_x2_components() {
        let r = R::with_relations(&["x", "y"], &[1, 1], &["x^2"]).unwrap();
        assert_eq!(r.dim(0), 1);
        let mut b = basis_strings(&r, 2);
        b.sort();
        assert_eq!(b, vec!["x*y", "y^2"]);
        assert_eq!(r.dim(-1), 0);
        assert_eq!(r.krull_dim(), 1);
        assert_eq!(r.codim(), 1);
    }

    #[test]
    fn xy_degree_three() {
        let r = R::with_relations(&["x", "y"], &[1, 1], &["x*y"]).unwrap();
        let mut b = basis_strings(&r, 3);
        b.sort();
        assert_eq!(b, vec!["x^3", "y^3"]);
    }

    #[test]
    fn hilbert_series_matches_product_formula() {
        let cases: Vec<(Vec<&str>, Vec<u32>, Vec<&str>)> = vec![
            (vec!["x", "y"], vec![3, 2], vec!["x^2+y^3"]),
            (vec!["x", "y", "z"], vec![1, 1, 1], vec!["x^2", "y^2"]),
            (vec!["x", "y", "z", "w"], vec![1, 1, 1, 1], vec!["x*y-z*w"]),
            (vec!["x", "y"], vec![4, 2], vec!["x^2+y^4"]),
        ];
        for (n, w, rels) in cases {
            let r = R::with_relations(&n, &w, &rels).unwrap();
            let exp = complete_intersection_hilbert(&w, r.relation_degrees(), 15);
            let got: Vec<i64> = r.hilbert_function(15).into_iter().map(|x| x as i64).collect();
            assert_eq!(got, exp);
        }
    }

    #[test]
    fn non_regular_sequence_is_rejected() {
        let err = R::with_relations(&["x", "y"], &[1, 1], &["x*y", "x^2"]).unwrap_err();
        assert!(matches!(err, Error::NotRegular(_)));
        assert!(R::with_relations(&["x", "y"], &[1, 1], &["x+y^2"]).is_err());
    }

    #[test]
    fn normal_forms_respect_relations() {
        let r = R::with_relations(&["x", "y"], &[1, 1], &["x^2+y^2"]).unwrap();
        let p = r.poly("x^2").unwrap();
        let q = r.poly("-y^2").unwrap();
        assert_eq!(r.normal_form(&p, 2), r.normal_form(&q, 2));
        assert!(r.is_zero_poly(&r.poly("x^3+x*y^2").unwrap()));
        assert_eq!(r.reduce(&p), r.reduce(&q));
    }

    #[test]
    fn quotients() {
        let r = R::with_relations(&["x", "y"], &[1, 1], &["x^2"]).unwrap();
        let q = r.quotient(&r.poly("y").unwrap()).unwrap();
        assert_eq!(q.nvars(), 1);
        assert_eq!(q.krull_dim(), 0);
        assert_eq!(q.hilbert_function(3), vec![1, 1, 0, 0]);

        let xy = R::with_relations(&["x", "y"], &[1, 1], &["x*y"]).unwrap();
        let q = xy.quotient(&xy.poly("x+y").unwrap()).unwrap();
        assert_eq!(q.hilbert_function(4), vec![1, 1, 0, 0, 0]);

        let s = R::polynomial_ring(&["x", "y"], &[1, 1]).unwrap();
        let q = s.quotient(&s.poly("x").unwrap()).unwrap();
        assert_eq!(q.names(), &["y".to_string()]);
        assert!(q.relations().is_empty());

        assert!(matches!(
            xy.quotient(&xy.poly("x").unwrap()),
            Err(Error::NotRegular(_))
        ));
    }

    #[test]
    fn embedding_dimension_and_regularity() {
        let s = R::polynomial_ring(&["x", "y"], &[1, 1]).unwrap();
        assert!(s.is_regular());
        let r = R::with_relations(&["x", "y"], &[1, 1], &["x^2"]).unwrap();
        assert!(!r.is_regular());
        assert_eq!(r.embedding_dim(), 2);
    }
}
