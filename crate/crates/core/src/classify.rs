//! Wattles and r-sets, representation type, critical lists and utmost posets.

use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cones::{c_cone, ConeWitness};
use crate::poset::{
    chain, contains_induced, is_isomorphic, kleiner_k, primitive, wattle, wattle_chains, Poset, PosetError,
};
use crate::quadform::QuadraticForm;
use crate::rational::{self, Rational, RationalVector};
use crate::simplex_min::{faithful_witness, minimize_on_simplex, p_value, FaithfulWitness, SimplexError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Simplex(#[from] SimplexError),
    #[error("r must be a rational >= 1, got {0}")]
    BadRational(String),
    #[error("internal consistency alarm: {0}")]
    ConsistencyAlarm(String),
}

/// Chain orders `⟨n_1, …, n_t⟩` of ζ(r) for `r = l/t ≥ 1` in lowest terms;
/// a single entry `l` when `r` is an integer.
pub fn zeta_orders(r: &Rational) -> Result<Vec<usize>, PosetError> {
    if *r < Rational::one() {
        return Err(PosetError::BadParams(format!("zeta needs r >= 1, got {}", rational::to_string(r))));
    }
    let too_big = || PosetError::BadParams(format!("zeta parameter {} is too large", rational::to_string(r)));
    let t = r.denom().to_usize().ok_or_else(too_big)?;
    let floor_at = |i: usize| -> Result<usize, PosetError> {
        (r * Rational::from_integer(i.into())).floor().to_integer().to_usize().ok_or_else(too_big)
    };
    if t == 1 {
        return Ok(vec![floor_at(1)?]);
    }
    let base = floor_at(1)? + 1;
    let mut orders = Vec::with_capacity(t);
    orders.push(base);
    for i in 2..t {
        orders.push(floor_at(i)? - floor_at(i - 1)? + 1);
    }
    orders.push(base);
    Ok(orders)
}

/// The r-wattle ζ(r) with its stationary vector normalised to 1 on common points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaWattle {
    pub r: Rational,
    pub orders: Vec<usize>,
    pub poset: Poset,
    pub x: RationalVector,
}

impl ZetaWattle {
    pub fn t(&self) -> usize {
        self.orders.len()
    }

    pub fn chains(&self) -> Vec<Vec<usize>> {
        wattle_chains(&self.orders)
    }

    /// Chain sums equal r, every partial derivative equals 1 + r, the total
    /// equals tr, and the orders satisfy `n = t([r]+1) + q − 1` with exactly
    /// `q − 1` chains of order `[r]+2`.
    pub fn check(&self) -> Result<(), String> {
        let r = &self.r;
        let t = self.t();
        if let Some(bad) = self.chains().iter().position(|c| c.iter().map(|&i| &self.x[i]).sum::<Rational>() != *r) {
            return Err(format!("chain {} does not sum to r", bad + 1));
        }
        let g = QuadraticForm::of_poset(&self.poset).gradient(&self.x).expect("dimension");
        let expected = r + Rational::one();
        if let Some(bad) = g.iter().position(|d| *d != expected) {
            return Err(format!("partial derivative at element {} is not 1 + r", bad + 1));
        }
        if rational::sum(&self.x) != r * Rational::from_integer(t.into()) {
            return Err("coordinate total is not tr".into());
        }
        if self.x.iter().any(|v| !v.is_positive()) {
            return Err("stationary vector is not strictly positive".into());
        }
        let floor = r.floor().to_integer().to_usize().expect("r fits");
        let q = (r.numer() % r.denom()).to_usize().expect("q fits");
        if t > 1 {
            let n: usize = self.orders.iter().sum();
            if n != t * (floor + 1) + q - 1 {
                return Err("order count differs from t([r]+1)+q-1".into());
            }
            if self.orders.iter().filter(|&&k| k == floor + 2).count() != q - 1 {
                return Err("number of long chains differs from q-1".into());
            }
        }
        Ok(())
    }
}

/// Build ζ(r) and its stationary vector: 1 on common points, `{ir}` at the
/// minimum of chain `i < t`, and `1 − {(i−1)r}` at the maximum of chain `i > 1`.
pub fn zeta_generate(r: &Rational) -> Result<ZetaWattle, ClassifyError> {
    if *r < Rational::one() {
        return Err(ClassifyError::BadRational(rational::to_string(r)));
    }
    let orders = zeta_orders(r)?;
    let poset = wattle(&orders)?;
    let n = poset.len();
    let mut x = vec![Rational::one(); n];
    let chains = wattle_chains(&orders);
    let t = orders.len();
    for (i, c) in chains.iter().enumerate() {
        let k = i + 1;
        if k < t {
            x[c[0]] = rational::fract(&(r * Rational::from_integer(k.into())));
        }
        if k > 1 {
            x[*c.last().expect("chain")] =
                Rational::one() - rational::fract(&(r * Rational::from_integer((k - 1).into())));
        }
    }
    let z = ZetaWattle { r: r.clone(), orders, poset, x };
    z.check().map_err(|e| ClassifyError::ConsistencyAlarm(format!("zeta({}): {e}", rational::to_string(r))))?;
    Ok(z)
}

/// Shape of a connected poset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Shape {
    Chain {
        n: usize,
    },
    Wattle {
        orders: Vec<usize>,
    },
    RSet {
        #[serde(with = "rational::serde_str")]
        r: Rational,
        orders: Vec<usize>,
    },
    Other,
}

impl Shape {
    /// Chains and uniform wattles.
    pub fn is_r_set(&self) -> bool {
        matches!(self, Shape::Chain { .. } | Shape::RSet { .. })
    }

    pub fn is_chain_or_wattle(&self) -> bool {
        !matches!(self, Shape::Other)
    }

    pub fn r(&self) -> Option<Rational> {
        match self {
            Shape::Chain { n } => Some(Rational::from_integer((*n).into())),
            Shape::RSet { r, .. } => Some(r.clone()),
            _ => None,
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |o: &[usize]| o.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        match self {
            Shape::Chain { n } => write!(f, "chain({n})"),
            Shape::Wattle { orders } => write!(f, "wattle<{}>", list(orders)),
            Shape::RSet { r, orders } => write!(f, "zeta({}) = <{}>", rational::to_string(r), list(orders)),
            Shape::Other => f.write_str("other"),
        }
    }
}

/// `r(S) = (n+1)/t − 1` for `n` elements of width `t`.
pub fn r_of(n: usize, t: usize) -> Rational {
    Rational::new((n + 1).into(), t.into()) - Rational::one()
}

/// Every connected component of Γ restricted to the junction points has even order.
pub fn junction_parity_even(p: &Poset) -> bool {
    p.structure().junction_components.iter().all(|c| c.len() % 2 == 0)
}

/// Chain orders of a wattle read off its Hasse path, or `None`.
pub fn wattle_orders(p: &Poset) -> Option<Vec<usize>> {
    let g = p.graph();
    if p.len() < 4 || !g.is_path() {
        return None;
    }
    let adj = g.neighbors();
    let ends: Vec<usize> = (0..p.len()).filter(|&v| adj[v].len() == 1).collect();
    ends.iter().find_map(|&start| {
        let mut walk = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(&next) = adj[cur].iter().find(|&&u| u != prev) {
            walk.push(next);
            prev = cur;
            cur = next;
        }
        orders_from_walk(p, &walk)
    })
}

/// A wattle read from the top of its first chain: runs of downward steps
/// separated by single upward steps, starting and ending downward.
fn orders_from_walk(p: &Poset, walk: &[usize]) -> Option<Vec<usize>> {
    let down: Vec<bool> = walk.windows(2).map(|w| p.lt(w[1], w[0])).collect();
    if !*down.first()? || !*down.last()? || down.windows(2).any(|w| !w[0] && !w[1]) {
        return None;
    }
    let orders: Vec<usize> = down.split(|d| !d).map(|run| run.len() + 1).collect();
    (orders.len() > 1).then_some(orders)
}

/// Chain, wattle, r-set or other, for a connected poset.
pub fn recognize(p: &Poset) -> Result<Shape, ClassifyError> {
    if !p.is_connected() {
        return Err(PosetError::NotConnected.into());
    }
    if p.is_chain() {
        return Ok(Shape::Chain { n: p.len() });
    }
    if !p.graph().is_path() {
        return Ok(Shape::Other);
    }
    let parity = junction_parity_even(p);
    let orders = wattle_orders(p);
    if parity != orders.is_some() {
        return Err(ClassifyError::ConsistencyAlarm(format!(
            "junction parity says {parity} but wattle extraction gives {orders:?}"
        )));
    }
    let Some(orders) = orders else {
        return Ok(Shape::Other);
    };
    let r = r_of(p.len(), orders.len());
    let expected = zeta_orders(&r)?;
    let mut reversed = orders.clone();
    reversed.reverse();
    if expected == orders || expected == reversed {
        Ok(Shape::RSet { r, orders })
    } else {
        Ok(Shape::Wattle { orders })
    }
}

/// Conditions characterising stationary vectors of a wattle: a constant
/// `α > 0` on common points, `x(z_i⁻) + x(z_{i+1}⁺) = α`, and equal chain
/// sums `β > 0`.
pub fn wattle_conditions(orders: &[usize], x: &[Rational]) -> bool {
    let chains = wattle_chains(orders);
    let t = chains.len();
    if t < 2 || x.len() != orders.iter().sum::<usize>() {
        return false;
    }
    let alpha = &x[*chains[0].last().expect("chain")];
    let minus = |i: usize| chains[i][0];
    let plus = |i: usize| *chains[i].last().expect("chain");
    let junction = |v: usize| (0..t - 1).any(|i| minus(i) == v) || (1..t).any(|i| plus(i) == v);
    let common_ok = (0..x.len()).filter(|&v| !junction(v)).all(|v| x[v] == *alpha);
    let pairs_ok = (0..t - 1).all(|i| &x[minus(i)] + &x[plus(i + 1)] == *alpha);
    let sums: Vec<Rational> = chains.iter().map(|c| c.iter().map(|&v| &x[v]).sum()).collect();
    alpha.is_positive() && common_ok && pairs_ok && sums[0].is_positive() && sums.iter().all(|s| *s == sums[0])
}

/// All partial derivatives of `f` at `x` coincide.
pub fn is_stationary(f: &QuadraticForm, x: &[Rational]) -> bool {
    let g = f.gradient(x).expect("dimension");
    g.iter().all(|d| *d == g[0])
}

/// Continue a wattle from its first chain: given the order of `Z_1` and the
/// values on it (minimum first, `α` on the rest), the wattle conditions fix
/// every later chain and value. Stops when a chain closes with a common
/// minimum or after `max_chains` chains.
pub fn wattle_from_first_chain(first: &[Rational], max_chains: usize) -> Option<(Vec<usize>, RationalVector)> {
    let (x_minus, rest) = first.split_first()?;
    let alpha = rest.last()?.clone();
    if rest.iter().any(|v| *v != alpha) || !alpha.is_positive() || !x_minus.is_positive() || *x_minus >= alpha {
        return None;
    }
    let beta: Rational = first.iter().sum();
    let mut orders = vec![first.len()];
    let mut x: RationalVector = first.to_vec();
    let mut prev_minus = x_minus.clone();
    while orders.len() < max_chains {
        let x_plus = &alpha - &prev_minus;
        let remaining = &beta - &x_plus;
        let units = &remaining / &alpha;
        if units.is_integer() {
            let k = units.to_integer().to_usize()?;
            if k == 0 {
                return None;
            }
            x.extend(std::iter::repeat_n(alpha.clone(), k));
            x.push(x_plus);
            orders.push(k + 1);
            return Some((orders, x));
        }
        let commons = units.floor().to_integer().to_usize()?;
        let next_minus = &remaining - &alpha * Rational::from_integer(commons.into());
        x.push(next_minus.clone());
        x.extend(std::iter::repeat_n(alpha.clone(), commons));
        x.push(x_plus);
        orders.push(commons + 2);
        prev_minus = next_minus;
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepType {
    Finite,
    Tame,
    Wild,
}

impl RepType {
    /// Exact thresholds: `P < 4` finite, `P = 4` tame, `P > 4` wild.
    pub fn from_p(p: &Rational) -> Self {
        let four = rational::int(4);
        match p.cmp(&four) {
            std::cmp::Ordering::Less => RepType::Finite,
            std::cmp::Ordering::Equal => RepType::Tame,
            std::cmp::Ordering::Greater => RepType::Wild,
        }
    }
}

impl fmt::Display for RepType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RepType::Finite => "finite",
            RepType::Tame => "tame",
            RepType::Wild => "wild",
        })
    }
}

/// A named member of a critical list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPoset {
    pub name: &'static str,
    pub poset: Poset,
}

fn chain_plus_k(m: usize) -> Poset {
    chain(m).disjoint_union(&kleiner_k())
}

/// The first critical list: every member has `P = 4`.
pub fn list_i() -> Vec<CriticalPoset> {
    vec![
        CriticalPoset { name: "(1,1,1,1)", poset: primitive(&[1, 1, 1, 1]) },
        CriticalPoset { name: "(2,2,2)", poset: primitive(&[2, 2, 2]) },
        CriticalPoset { name: "(1,3,3)", poset: primitive(&[1, 3, 3]) },
        CriticalPoset { name: "(1,2,5)", poset: primitive(&[1, 2, 5]) },
        CriticalPoset { name: "(4)+K", poset: chain_plus_k(4) },
    ]
}

/// The second critical list, with its non-primitive member `(6)⊔K`.
pub fn list_ii() -> Vec<CriticalPoset> {
    vec![
        CriticalPoset { name: "(1,1,1,1,1)", poset: primitive(&[1, 1, 1, 1, 1]) },
        CriticalPoset { name: "(1,1,1,2)", poset: primitive(&[1, 1, 1, 2]) },
        CriticalPoset { name: "(2,2,3)", poset: primitive(&[2, 2, 3]) },
        CriticalPoset { name: "(1,3,4)", poset: primitive(&[1, 3, 4]) },
        CriticalPoset { name: "(1,2,6)", poset: primitive(&[1, 2, 6]) },
        CriticalPoset { name: "(6)+K", poset: chain_plus_k(6) },
    ]
}

pub fn critical_lists() -> (Vec<CriticalPoset>, Vec<CriticalPoset>) {
    (list_i(), list_ii())
}

/// Minimal posets with `P > 4`: the second list with `(5)⊔K` in place of
/// `(6)⊔K`, which properly contains it.
pub fn wild_obstructions() -> Vec<CriticalPoset> {
    let mut list = list_ii();
    list.pop();
    list.push(CriticalPoset { name: "(5)+K", poset: chain_plus_k(5) });
    list
}

fn first_contained(p: &Poset, list: &[CriticalPoset]) -> Option<String> {
    list.iter()
        .filter(|c| c.poset.len() <= p.len())
        .find(|c| contains_induced(p, &c.poset).is_some())
        .map(|c| c.name.to_string())
}

fn isomorphic_member(p: &Poset, list: &[CriticalPoset]) -> Option<String> {
    list.iter().find(|c| is_isomorphic(p, &c.poset)).map(|c| c.name.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepTypeVerdict {
    pub rep_type: RepType,
    #[serde(with = "rational::serde_str")]
    pub p_value: Rational,
    /// A member of the first list occurring as an induced subposet.
    pub contains_list_i: Option<String>,
    /// A minimal wild poset occurring as an induced subposet.
    pub contains_wild_obstruction: Option<String>,
}

/// Representation type from the exact value of `P`, checked against
/// induced-subposet containment of the critical lists.
pub fn rep_type(p: &Poset, cap: usize) -> Result<RepTypeVerdict, ClassifyError> {
    let pv = p_value(p, cap)?;
    let rt = RepType::from_p(&pv);
    let contains_list_i = first_contained(p, &list_i());
    let contains_wild_obstruction = first_contained(p, &wild_obstructions());
    let by_lists = match (&contains_list_i, &contains_wild_obstruction) {
        (_, Some(_)) => RepType::Wild,
        (Some(_), None) => RepType::Tame,
        (None, None) => RepType::Finite,
    };
    if by_lists != rt {
        return Err(ClassifyError::ConsistencyAlarm(format!(
            "P = {} gives {rt} but list containment gives {by_lists} ({contains_list_i:?}, {contains_wild_obstruction:?})",
            rational::to_string(&pv)
        )));
    }
    Ok(RepTypeVerdict { rep_type: rt, p_value: pv, contains_list_i, contains_wild_obstruction })
}

/// `P(S) ≥ 4` and `P(S∖{s}) ≤ 4` for every element `s`.
pub fn is_utmost(p: &Poset, cap: usize) -> Result<bool, ClassifyError> {
    let four = rational::int(4);
    if p_value(p, cap)? < four {
        return Ok(false);
    }
    for v in 0..p.len() {
        let q = p.delete(v);
        if !q.is_empty() && p_value(&q, cap)? > four {
            return Ok(false);
        }
    }
    Ok(true)
}

/// [`is_utmost`] over every proper nonempty subset, for `n ≤ 10`.
pub fn is_utmost_exhaustive(p: &Poset, cap: usize) -> Result<bool, ClassifyError> {
    const LIMIT: usize = 10;
    let n = p.len();
    if n > LIMIT {
        return Err(PosetError::CapExceeded { n, cap: LIMIT }.into());
    }
    let four = rational::int(4);
    if p_value(p, cap)? < four {
        return Ok(false);
    }
    for mask in 1u32..(1 << n) - 1 {
        let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if p_value(&p.induced(&idx), cap)? > four {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Antimonotonicity {
    pub antimonotonous: bool,
    /// A vector of C(f) when the poset is not antimonotonous.
    pub c_witness: Option<ConeWitness>,
    /// The r-set structure certifying antimonotonicity, when there is one.
    pub shape: Option<Shape>,
    /// For connected posets with a positive semidefinite form: whether the
    /// verdict agrees with r-set recognition.
    pub agrees_with_shape: Option<bool>,
}

pub fn antimonotonous(p: &Poset) -> Antimonotonicity {
    let f = QuadraticForm::of_poset(p);
    let c_witness = c_cone(&f);
    let shape = if p.is_connected() { recognize(p).ok() } else { None };
    let agrees_with_shape = match &shape {
        Some(s) if f.definiteness().is_psd() => Some(c_witness.is_none() == s.is_r_set()),
        _ => None,
    };
    Antimonotonicity { antimonotonous: c_witness.is_none(), c_witness, shape, agrees_with_shape }
}

/// Everything `classify` knows about a poset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub shape: Shape,
    pub connected: bool,
    #[serde(with = "rational::serde_str::opt")]
    pub r: Option<Rational>,
    pub rep_type: RepType,
    #[serde(with = "rational::serde_str")]
    pub p_value: Rational,
    /// Decimal rendering of `p_value`; not authoritative.
    pub p_value_approx: f64,
    pub in_list_i: Option<String>,
    pub in_list_ii: Option<String>,
    pub contains_list_i: Option<String>,
    pub contains_wild_obstruction: Option<String>,
    pub utmost: bool,
    pub antimonotonous: bool,
    pub p_faithful: bool,
    pub c_witness: Option<ConeWitness>,
    pub faithful_witness: Option<FaithfulWitness>,
}

pub fn classify(p: &Poset, cap: usize) -> Result<Classification, ClassifyError> {
    let connected = p.is_connected();
    let shape = if connected { recognize(p)? } else { Shape::Other };
    let verdict = rep_type(p, cap)?;
    let anti = antimonotonous(p);
    if anti.agrees_with_shape == Some(false) {
        return Err(ClassifyError::ConsistencyAlarm(format!(
            "antimonotonous = {} but shape is {shape}",
            anti.antimonotonous
        )));
    }
    let f = QuadraticForm::of_poset(p);
    let faithful = faithful_witness(&f);
    if let Some(w) = &faithful {
        let m = minimize_on_simplex(&f, cap)?;
        if !m.interior || m.value != w.value {
            return Err(ClassifyError::ConsistencyAlarm("faithful vector is not the simplex minimizer".into()));
        }
    }
    let utmost = is_utmost(p, cap)?;
    Ok(Classification {
        r: shape.r(),
        shape,
        connected,
        rep_type: verdict.rep_type,
        p_value_approx: rational::to_f64(&verdict.p_value),
        p_value: verdict.p_value,
        in_list_i: isomorphic_member(p, &list_i()),
        in_list_ii: isomorphic_member(p, &list_ii()),
        contains_list_i: verdict.contains_list_i,
        contains_wild_obstruction: verdict.contains_wild_obstruction,
        utmost,
        antimonotonous: anti.antimonotonous,
        p_faithful: faithful.is_some(),
        c_witness: anti.c_witness,
        faithful_witness: faithful,
    })
}

/// `Σ ρ(n_i)` over the chain orders of a primitive poset.
pub fn rho_sum(orders: &[usize]) -> Rational {
    orders
        .iter()
        .map(|&k| {
            let r = Rational::from_integer(k.into());
            &r * rational::int(2) / (&r + Rational::one())
        })
        .sum()
}

/// True when `x` is nonzero on the given index set only.
pub fn supported_on(x: &[Rational], idx: &[usize]) -> bool {
    x.iter().enumerate().all(|(i, v)| v.is_zero() || idx.contains(&i))
}
