//! Finite groups and their group algebra.
//!
//! Groups are explicit multiplication tables validated on construction
//! (Latin square, identity, associativity); functions on a group form the
//! group algebra under convolution with respect to the normalized counting
//! measure. Haar mass 1 keeps the compact-group formulas (‖χ‖₂ = 1,
//! Plancherel) verbatim; the price is that the convolution identity is the
//! scaled delta n·δ_e.

use std::sync::Arc;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::jsonio;
use crate::scalar::Real;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("InvalidTable: {0}")]
    InvalidTable(String),
    #[error("NotLatinSquare: row or column {0} is not a permutation")]
    NotLatinSquare(usize),
    #[error("NoIdentity: no two-sided identity element")]
    NoIdentity,
    #[error("NotAssociative: (g{0}·g{1})·g{2} != g{0}·(g{1}·g{2})")]
    NotAssociative(usize, usize, usize),
    #[error("NoInverse: element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("Mismatch: operands live on different groups")]
    Mismatch,
    #[error("BadElement: index {index} out of range for group of order {order}")]
    BadElement { index: usize, order: usize },
    #[error("LengthMismatch: {got} values for a group of order {order}")]
    LengthMismatch { got: usize, order: usize },
    #[error("NameMismatch: function is tagged for group `{tagged}`, not `{expected}`")]
    NameMismatch { tagged: String, expected: String },
    #[error("Json: {0}")]
    Json(String),
}

// Associativity is checked exhaustively up to this order, sampled above it.
const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 64;
const SAMPLED_ASSOCIATIVITY_TRIPLES: usize = 100_000;

/// A finite group as a validated multiplication table.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

/// Partition of the elements into conjugacy classes; the identity's class is
/// first, the rest are ordered by smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClasses {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn size(&self, class: usize) -> usize {
        self.classes[class].len()
    }
}

impl FiniteGroup {
    pub fn from_parts(
        name: impl Into<String>,
        names: Vec<String>,
        table: Vec<Vec<usize>>,
    ) -> Result<Arc<Self>, GroupError> {
        let order = table.len();
        if order == 0 {
            return Err(GroupError::InvalidTable("empty table".into()));
        }
        if names.len() != order {
            return Err(GroupError::InvalidTable(format!(
                "{} labels for order {order}",
                names.len()
            )));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(GroupError::InvalidTable(format!(
                    "row {i} has length {}, expected {order}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&e| e >= order) {
                return Err(GroupError::InvalidTable(format!(
                    "row {i} contains out-of-range index {bad}"
                )));
            }
        }
        for i in 0..order {
            let mut row_seen = vec![false; order];
            let mut col_seen = vec![false; order];
            for j in 0..order {
                if row_seen[table[i][j]] || col_seen[table[j][i]] {
                    return Err(GroupError::NotLatinSquare(i));
                }
                row_seen[table[i][j]] = true;
                col_seen[table[j][i]] = true;
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|j| table[e][j] == j && table[j][e] == j))
            .ok_or(GroupError::NoIdentity)?;
        if order <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for a in 0..order {
                for b in 0..order {
                    for c in 0..order {
                        if table[table[a][b]][c] != table[a][table[b][c]] {
                            return Err(GroupError::NotAssociative(a, b, c));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x617373_6f63);
            for _ in 0..SAMPLED_ASSOCIATIVITY_TRIPLES {
                let a = rng.gen_range(0..order);
                let b = rng.gen_range(0..order);
                let c = rng.gen_range(0..order);
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(GroupError::NotAssociative(a, b, c));
                }
            }
        }
        let mut inverses = Vec::with_capacity(order);
        for i in 0..order {
            let inv = (0..order)
                .find(|&j| table[i][j] == identity && table[j][i] == identity)
                .ok_or(GroupError::NoInverse(i))?;
            inverses.push(inv);
        }
        Ok(Arc::new(Self {
            name: name.into(),
            order,
            names,
            table,
            identity,
            inverses,
        }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn element_names(&self) -> &[String] {
        &self.names
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.table[a][b] == self.table[b][a]))
    }

    /// Exhaustive orbit computation under conjugation.
    pub fn conjugacy_classes(&self) -> ConjugacyClasses {
        let n = self.order;
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        // Identity's class first (it is always the singleton {e}).
        let mut order_of_visit: Vec<usize> = Vec::with_capacity(n);
        order_of_visit.push(self.identity);
        order_of_visit.extend((0..n).filter(|&x| x != self.identity));
        for x in order_of_visit {
            if class_of[x] != usize::MAX {
                continue;
            }
            let idx = classes.len();
            let mut members: Vec<usize> = (0..n)
                .map(|z| self.mul(self.mul(z, x), self.inv(z)))
                .collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                class_of[m] = idx;
            }
            classes.push(members);
        }
        ConjugacyClasses { classes, class_of }
    }

    /// Cyclic group ℤ_n.
    pub fn cyclic(n: usize) -> Arc<Self> {
        assert!(n >= 1);
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let names = (0..n).map(|i| i.to_string()).collect();
        Self::from_parts(format!("Z{n}"), names, table).expect("cyclic table is a group")
    }

    /// Dihedral group D_n of order 2n (symmetries of the n-gon).
    pub fn dihedral(n: usize) -> Arc<Self> {
        assert!(n >= 1);
        let order = 2 * n;
        let mut table = vec![vec![0usize; order]; order];
        for a in 0..n {
            for b in 0..n {
                table[a][b] = (a + b) % n; // r^a r^b
                table[a][n + b] = n + (b + n - a) % n; // r^a (s r^b) = s r^{b-a}
                table[n + a][b] = n + (a + b) % n; // (s r^a) r^b
                table[n + a][n + b] = (b + n - a) % n; // (s r^a)(s r^b) = r^{b-a}
            }
        }
        let names = (0..n)
            .map(|a| format!("r{a}"))
            .chain((0..n).map(|a| format!("s{a}")))
            .collect();
        Self::from_parts(format!("D{n}"), names, table).expect("dihedral table is a group")
    }

    /// Symmetric group S_k on k letters; table order is lexicographic on the
    /// one-line notation.
    pub fn symmetric(k: usize) -> Arc<Self> {
        assert!((1..=5).contains(&k), "symmetric groups are built up to S5");
        let perms = permutations(k);
        let n = perms.len();
        let index_of = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("closed");
        let mut table = vec![vec![0usize; n]; n];
        for (i, p) in perms.iter().enumerate() {
            for (j, q) in perms.iter().enumerate() {
                let composed: Vec<usize> = (0..k).map(|x| p[q[x]]).collect();
                table[i][j] = index_of(&composed);
            }
        }
        let names = perms
            .iter()
            .map(|p| p.iter().map(usize::to_string).collect::<String>())
            .collect();
        Self::from_parts(format!("S{k}"), names, table).expect("symmetric table is a group")
    }

    /// Quaternion group Q_8 = {±1, ±i, ±j, ±k}.
    pub fn quaternion() -> Arc<Self> {
        // units 0=1, 1=i, 2=j, 3=k; unit_mul[a][b] = (sign, unit)
        const UNIT_MUL: [[(i8, usize); 4]; 4] = [
            [(1, 0), (1, 1), (1, 2), (1, 3)],
            [(1, 1), (-1, 0), (1, 3), (-1, 2)],
            [(1, 2), (-1, 3), (-1, 0), (1, 1)],
            [(1, 3), (1, 2), (-1, 1), (-1, 0)],
        ];
        let index = |sign: i8, unit: usize| unit * 2 + usize::from(sign < 0);
        let mut table = vec![vec![0usize; 8]; 8];
        for a in 0..8 {
            for b in 0..8 {
                let (ua, sa) = (a / 2, if a % 2 == 0 { 1i8 } else { -1 });
                let (ub, sb) = (b / 2, if b % 2 == 0 { 1i8 } else { -1 });
                let (sm, um) = UNIT_MUL[ua][ub];
                table[a][b] = index(sa * sb * sm, um);
            }
        }
        let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        Self::from_parts("Q8", names, table).expect("quaternion table is a group")
    }

    /// Direct product with componentwise multiplication.
    pub fn direct_product(a: &Arc<Self>, b: &Arc<Self>) -> Arc<Self> {
        let (n, m) = (a.order, b.order);
        let mut table = vec![vec![0usize; n * m]; n * m];
        for i1 in 0..n {
            for j1 in 0..m {
                for i2 in 0..n {
                    for j2 in 0..m {
                        table[i1 * m + j1][i2 * m + j2] = a.table[i1][i2] * m + b.table[j1][j2];
                    }
                }
            }
        }
        let mut names = Vec::with_capacity(n * m);
        for i in 0..n {
            for j in 0..m {
                names.push(format!("({},{})", a.names[i], b.names[j]));
            }
        }
        Self::from_parts(format!("{}x{}", a.name, b.name), names, table)
            .expect("direct product of groups is a group")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "order": self.order,
            "names": self.names,
            "table": self.table,
        })
    }

    /// Parses and fully re-validates a group; `identity`/`inverses` are
    /// always derived, never trusted from the input.
    pub fn from_json(value: &Value) -> Result<Arc<Self>, GroupError> {
        let err = GroupError::Json;
        jsonio::get_object(value, "group").map_err(err)?;
        let name = jsonio::get_str(value, "name").map_err(err)?;
        let names: Vec<String> = jsonio::get_array(value, "names")
            .map_err(err)?
            .iter()
            .map(|v| {
                v.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| GroupError::Json("element names must be strings".into()))
            })
            .collect::<Result<_, _>>()?;
        let table: Vec<Vec<usize>> = jsonio::get_array(value, "table")
            .map_err(err)?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| GroupError::Json("table rows must be arrays".into()))?
                    .iter()
                    .map(|e| {
                        e.as_u64()
                            .map(|x| x as usize)
                            .ok_or_else(|| GroupError::Json("table entries must be indices".into()))
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        if let Some(order) = value.get("order").and_then(Value::as_u64) {
            if order as usize != table.len() {
                return Err(GroupError::Json(format!(
                    "declared order {order} does not match table size {}",
                    table.len()
                )));
            }
        }
        Self::from_parts(name, names, table)
    }
}

pub(crate) fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

// All permutations of {0..k-1} in lexicographic order.
fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn extend(k: usize, used: &mut [bool], current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in 0..k {
            if !used[i] {
                used[i] = true;
                current.push(i);
                extend(k, used, current, out);
                current.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(k, &mut vec![false; k], &mut Vec::with_capacity(k), &mut out);
    out
}

/// A complex-valued function on a finite group; an element of the group
/// algebra under convolution.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupFunction<T> {
    group: Arc<FiniteGroup>,
    values: Vec<Complex<T>>,
}

impl<T: Real> GroupFunction<T> {
    pub fn new(group: &Arc<FiniteGroup>, values: Vec<Complex<T>>) -> Result<Self, GroupError> {
        if values.len() != group.order() {
            return Err(GroupError::LengthMismatch {
                got: values.len(),
                order: group.order(),
            });
        }
        Ok(Self {
            group: Arc::clone(group),
            values,
        })
    }

    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        Self {
            group: Arc::clone(group),
            values: vec![Complex::new(T::zero(), T::zero()); group.order()],
        }
    }

    pub fn constant(group: &Arc<FiniteGroup>, value: Complex<T>) -> Self {
        Self {
            group: Arc::clone(group),
            values: vec![value; group.order()],
        }
    }

    /// Indicator of a single element (unscaled; the convolution identity is
    /// `n·delta(e)` under the normalized Haar measure).
    pub fn delta(group: &Arc<FiniteGroup>, element: usize) -> Self {
        let mut f = Self::zero(group);
        f.values[element] = Complex::new(T::one(), T::zero());
        f
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn value(&self, x: usize) -> Complex<T> {
        self.values[x]
    }

    fn n(&self) -> T {
        T::of(self.group.order() as f64)
    }

    /// (1/n)·Σ_x f(x): the normalized counting (Haar) integral.
    pub fn haar_integral(&self) -> Complex<T> {
        self.values
            .iter()
            .fold(Complex::new(T::zero(), T::zero()), |acc, v| acc + v)
            / self.n()
    }

    /// (f∗g)(x) = (1/n)·Σ_y f(y)·g(y⁻¹x).
    pub fn convolve(&self, other: &Self) -> Result<Self, GroupError> {
        if !same_group(&self.group, &other.group) {
            return Err(GroupError::Mismatch);
        }
        let g = &self.group;
        let n = g.order();
        let mut values = vec![Complex::new(T::zero(), T::zero()); n];
        for (x, out) in values.iter_mut().enumerate() {
            let mut acc = Complex::new(T::zero(), T::zero());
            for y in 0..n {
                acc = acc + self.values[y] * other.values[g.mul(g.inv(y), x)];
            }
            *out = acc / self.n();
        }
        Ok(Self {
            group: Arc::clone(g),
            values,
        })
    }

    /// f̃(x) = conj(f(x⁻¹)). The conjugation makes f̃∗f(e) = ‖f‖₂² hold for
    /// complex scalars.
    pub fn involute(&self) -> Self {
        let g = &self.group;
        let values = (0..g.order())
            .map(|x| self.values[g.inv(x)].conj())
            .collect();
        Self {
            group: Arc::clone(g),
            values,
        }
    }

    /// (T_s f)(x) = f(s·x).
    pub fn left_translate(&self, s: usize) -> Self {
        let g = &self.group;
        let values = (0..g.order()).map(|x| self.values[g.mul(s, x)]).collect();
        Self {
            group: Arc::clone(g),
            values,
        }
    }

    /// (T^s f)(x) = f(x·s).
    pub fn right_translate(&self, s: usize) -> Self {
        let g = &self.group;
        let values = (0..g.order()).map(|x| self.values[g.mul(x, s)]).collect();
        Self {
            group: Arc::clone(g),
            values,
        }
    }

    /// Projection on the center: (P_Z f)(x) = (1/n)·Σ_z f(z·x·z⁻¹).
    /// The output is constant on conjugacy classes.
    pub fn center_project(&self) -> Self {
        let g = &self.group;
        let n = g.order();
        let values = (0..n)
            .map(|x| {
                let mut acc = Complex::new(T::zero(), T::zero());
                for z in 0..n {
                    acc = acc + self.values[g.mul(g.mul(z, x), g.inv(z))];
                }
                acc / self.n()
            })
            .collect();
        Self {
            group: Arc::clone(g),
            values,
        }
    }

    /// Commutation test against the whole delta basis:
    /// max_j ‖f∗δ_j − δ_j∗f‖_∞ ≤ tol.
    pub fn is_central(&self, tol: T) -> bool {
        let n = self.group.order();
        for j in 0..n {
            let d = Self::delta(&self.group, j);
            let fg = self.convolve(&d).expect("same group");
            let gf = d.convolve(self).expect("same group");
            let dev = fg
                .values
                .iter()
                .zip(&gf.values)
                .fold(T::zero(), |acc, (a, b)| acc.max((*a - *b).norm()));
            if dev > tol {
                return false;
            }
        }
        true
    }

    pub fn sup_norm(&self) -> T {
        self.values
            .iter()
            .fold(T::zero(), |acc, v| acc.max(v.norm()))
    }

    /// (1/n)·Σ|f|.
    pub fn l1_norm(&self) -> T {
        self.values.iter().fold(T::zero(), |acc, v| acc + v.norm()) / self.n()
    }

    /// ((1/n)·Σ|f|²)^{1/2}.
    pub fn l2_norm(&self) -> T {
        (self
            .values
            .iter()
            .fold(T::zero(), |acc, v| acc + v.norm_sqr())
            / self.n())
        .sqrt()
    }

    /// L2 inner product (f, g) = (1/n)·Σ f(x)·conj(g(x)).
    pub fn inner(&self, other: &Self) -> Result<Complex<T>, GroupError> {
        if !same_group(&self.group, &other.group) {
            return Err(GroupError::Mismatch);
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| {
                acc + *a * b.conj()
            })
            / self.n())
    }

    pub fn add(&self, other: &Self) -> Result<Self, GroupError> {
        if !same_group(&self.group, &other.group) {
            return Err(GroupError::Mismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| *a + *b)
            .collect();
        Ok(Self {
            group: Arc::clone(&self.group),
            values,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, GroupError> {
        self.add(&other.scaled(Complex::new(-T::one(), T::zero())))
    }

    pub fn scaled(&self, factor: Complex<T>) -> Self {
        Self {
            group: Arc::clone(&self.group),
            values: self.values.iter().map(|v| *v * factor).collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "group": self.group.name(),
            "values": self.values.iter().map(|&v| jsonio::complex_to_json(v)).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &Value, group: &Arc<FiniteGroup>) -> Result<Self, GroupError> {
        let err = GroupError::Json;
        let tagged = jsonio::get_str(value, "group").map_err(err)?;
        if tagged != group.name() {
            return Err(GroupError::NameMismatch {
                tagged: tagged.to_string(),
                expected: group.name().to_string(),
            });
        }
        let values = jsonio::get_array(value, "values")
            .map_err(err)?
            .iter()
            .map(|v| jsonio::complex_from_json::<T>(v).map_err(GroupError::Json))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(group, values)
    }
}

/// Deterministic random complex function, for tests and probabilistic checks.
pub fn random_function<T: Real>(
    group: &Arc<FiniteGroup>,
    rng: &mut impl Rng,
) -> GroupFunction<T> {
    let values = (0..group.order())
        .map(|_| {
            Complex::new(
                T::of(rng.gen_range(-1.0..1.0)),
                T::of(rng.gen_range(-1.0..1.0)),
            )
        })
        .collect();
    GroupFunction::new(group, values).expect("value count matches order")
}

/// Deterministic random class function (central element of the algebra).
pub fn random_class_function<T: Real>(
    group: &Arc<FiniteGroup>,
    classes: &ConjugacyClasses,
    rng: &mut impl Rng,
) -> GroupFunction<T> {
    let per_class: Vec<Complex<T>> = (0..classes.len())
        .map(|_| {
            Complex::new(
                T::of(rng.gen_range(-1.0..1.0)),
                T::of(rng.gen_range(-1.0..1.0)),
            )
        })
        .collect();
    let values = (0..group.order())
        .map(|x| per_class[classes.class_of[x]])
        .collect();
    GroupFunction::new(group, values).expect("value count matches order")
}
