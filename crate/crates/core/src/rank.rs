//! Rank of a module over a ring that may have several minimal primes.
//!
//! With finite projective dimension the rank is the Euler characteristic.
//! Otherwise the ring must come with its minimal primes. The number of
//! generators of `M_P` is read off the multiplicity of `M/PM` over `R/P`,
//! a graded domain; over a nonreduced `R_P` freeness is then decided by
//! comparing the multiplicities of `M` and `R`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::module::GradedModule;
use crate::poly::Poly;
use crate::resolution::{chi_classical, pdim, Pdim};

/// A minimal prime `P` of the ring, given by generators.
#[derive(Clone, Debug)]
pub struct Component<F: PrimeField> {
    pub prime: Vec<Poly<F>>,
    /// Krull dimension of `R/P`.
    pub dim: usize,
    /// Whether `R_P` is a field.
    pub reduced: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankMethod {
    EulerCharacteristic,
    Multiplicity,
}

impl fmt::Display for RankMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankMethod::EulerCharacteristic => write!(f, "euler characteristic"),
            RankMethod::Multiplicity => write!(f, "multiplicity"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RankResult {
    Rank(usize, RankMethod),
    Undefined(String),
}

impl RankResult {
    pub fn value(&self) -> Option<usize> {
        match self {
            RankResult::Rank(r, _) => Some(*r),
            RankResult::Undefined(_) => None,
        }
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `Q(1)` where `Q = H_M(t) (1 - t^L)^dim` and `L` is the lcm of the weights.
///
/// The product is a polynomial once `dim ≥ dim M`; it is accepted as finished
/// after a run of zero coefficients longer than any numerator could hide.
pub fn normalized_multiplicity<F: PrimeField>(m: &GradedModule<F>, dim: usize, dmax: i32) -> Result<i64> {
    let m = m.pruned();
    let (Some(lo), Some(top)) = (m.min_gen_degree(), m.max_gen_degree()) else {
        return Ok(0);
    };
    let ring = m.ring();
    let l = ring.weights().iter().fold(1, |acc, &w| acc / gcd(acc, w) * w) as i32;
    let gap = ring.weights().iter().sum::<u32>() as i32
        + ring.relation_degrees().iter().sum::<u32>() as i32
        + l * dim as i32;
    let mut h: Vec<i64> = Vec::new();
    let mut total = 0i64;
    let mut zeros = 0;
    let mut d = lo;
    loop {
        if d > dmax {
            return Err(Error::truncation("multiplicity", d));
        }
        h.push(m.dim(d) as i64);
        let i = h.len() - 1;
        // Coefficient of t^i in h * (1 - t^L)^dim via the binomial expansion.
        let mut q = 0i64;
        let mut binom = 1i64;
        for k in 0..=dim {
            let back = k as i64 * l as i64;
            if back as usize <= i {
                let term = binom * h[i - back as usize];
                q += if k % 2 == 0 { term } else { -term };
            }
            binom = binom * (dim - k) as i64 / (k as i64 + 1);
        }
        total += q;
        zeros = if q == 0 { zeros + 1 } else { 0 };
        if d > top && zeros > gap {
            return Ok(total);
        }
        d += 1;
    }
}

/// Rank of `M`, or the reason it does not exist.
pub fn rank<F: PrimeField>(
    m: &GradedModule<F>,
    components: Option<&[Component<F>]>,
    dmax: i32,
) -> Result<RankResult> {
    let ring = m.ring();
    if let (Pdim::Finite(_), _) = pdim(m, dmax)? {
        let chi = chi_classical(m, 0, dmax)?;
        return Ok(RankResult::Rank(chi as usize, RankMethod::EulerCharacteristic));
    }
    if ring.krull_dim() == 0 {
        return Ok(RankResult::Undefined(
            "over an Artinian ring only free modules have a rank".into(),
        ));
    }
    let comps = components.ok_or_else(|| {
        Error::Unsupported("rank of a module of infinite projective dimension needs the minimal primes of the ring".into())
    })?;
    if comps.is_empty() {
        return Err(Error::Input("a ring of positive dimension has a minimal prime".into()));
    }
    if comps.iter().any(|c| !c.reduced) && comps.len() > 1 {
        return Err(Error::Unsupported(
            "rank over a ring with several minimal primes, one of them embedded in a nonreduced component".into(),
        ));
    }
    let mut local = Vec::with_capacity(comps.len());
    for c in comps {
        let mp = m.quotient_by_elements(&c.prime)?;
        let rp = GradedModule::cyclic(ring.clone(), &c.prime)?;
        let num = normalized_multiplicity(&mp, c.dim, dmax)?;
        let den = normalized_multiplicity(&rp, c.dim, dmax)?;
        if den <= 0 || num % den != 0 {
            return Err(Error::Consistency(format!(
                "multiplicity ratio {num}/{den} is not an integer"
            )));
        }
        local.push((num / den) as usize);
    }
    if local.windows(2).any(|w| w[0] != w[1]) {
        let parts: Vec<String> = local.iter().map(usize::to_string).collect();
        return Ok(RankResult::Undefined(format!(
            "local ranks differ across components: {}",
            parts.join(", ")
        )));
    }
    let mu = local.first().copied().unwrap_or(0);
    if let [c] = comps {
        if !c.reduced {
            let full = ring.krull_dim();
            let em = normalized_multiplicity(m, full, dmax)?;
            let er = normalized_multiplicity(&GradedModule::free(ring.clone(), vec![0]), full, dmax)?;
            if em != mu as i64 * er {
                return Ok(RankResult::Undefined(format!(
                    "M_P needs {mu} generators but is not free over the nonreduced localization"
                )));
            }
        }
    }
    Ok(RankResult::Rank(mu, RankMethod::Multiplicity))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::ring::GradedRing;

    type F = Fp<13>;
    type R = GradedRing<F>;
    const DMAX: i32 = 40;

    fn comp(r: &R, gens: &[&str], dim: usize, reduced: bool) -> Component<F> {
        Component {
            prime: gens.iter().map(|g| r.poly(g).unwrap()).collect(),
            dim,
            reduced,
        }
    }

    #[test]
    fn multiplicity_of_standard_rings() {
        let r = R::with_relations(&["x", "y"], &[1, 1], &["x^2"]).unwrap();
        let free = GradedModule::free(r.clone(), vec![0]);
        assert_eq!(normalized_multiplicity(&free, 1, DMAX).unwrap(), 2);
        let k = GradedModule::residue_field(r);
        assert_eq!(normalized_multiplicity(&k, 1, DMAX).unwrap(), 0);
        assert_eq!(normalized_multiplicity(&k, 0, DMAX).unwrap(), 1);
        let cusp = R::with_relations(&["x", "y"], &[3, 2], &["x^2+y^3"]).unwrap();
        let free = GradedModule::free(cusp, vec![0]);
        assert_eq!(normalized_multiplicity(&free, 1, DMAX).unwrap(), 6);
    }

    #[test]
    fn maximal_ideal_of_double_line_has_rank_one() {
        let r = R::with_relations(&["x", "y"], &[1, 1], &["x^2"]).unwrap();
        let m = GradedModule::ideal(r.clone(), &[r.var(0), r.var(1)], DMAX).unwrap();
        let c = [comp(&r, &["x"], 1, false)];
        assert_eq!(
            rank(&m, Some(&c), DMAX).unwrap(),
            RankResult::Rank(1, RankMethod::Multiplicity)
        );
        let k = GradedModule::residue_field(r.clone());
        assert_eq!(rank(&k, Some(&c), DMAX).unwrap().value(), Some(0));
        let q = GradedModule::cyclic(r.clone(), &[r.var(0)]).unwrap();
        assert!(matches!(rank(&q, Some(&c), DMAX).unwrap(), RankResult::Undefined(_)));
    }

    #[test]
    fn ranks_over_two_lines() {
        let r = R::with_relations(&["x", "y"], &[1, 1], &["x*y"]).unwrap();
        let c = [comp(&r, &["x"], 1, true), comp(&r, &["y"], 1, true)];
        let rx = GradedModule::cyclic(r.clone(), &[r.var(0)]).unwrap();
        assert!(matches!(rank(&rx, Some(&c), DMAX).unwrap(), RankResult::Undefined(_)));
        let m = GradedModule::ideal(r.clone(), &[r.var(0), r.var(1)], DMAX).unwrap();
        assert_eq!(rank(&m, Some(&c), DMAX).unwrap().value(), Some(1));
        let free = GradedModule::free(r.clone(), vec![0, 1]);
        assert_eq!(
            rank(&free, Some(&c), DMAX).unwrap(),
            RankResult::Rank(2, RankMethod::EulerCharacteristic)
        );
    }

    #[test]
    fn domains_and_artinian_rings() {
        let cusp = R::with_relations(&["x", "y"], &[3, 2], &["x^2+y^3"]).unwrap();
        let m = GradedModule::ideal(cusp.clone(), &[cusp.var(0), cusp.var(1)], DMAX).unwrap();
        let whole = [comp(&cusp, &[], 1, true)];
        assert_eq!(rank(&m, Some(&whole), DMAX).unwrap().value(), Some(1));
        let a = R::with_relations(&["x"], &[1], &["x^3"]).unwrap();
        let k = GradedModule::residue_field(a);
        assert!(matches!(rank(&k, None, DMAX).unwrap(), RankResult::Undefined(_)));
    }
}
