//! Finite groups, symmetric generating sets and the quadripartite left-right
//! Cayley complex `Cay₂(A, G, B)`.
//!
//! Vertices are `(g, ij)` for `g ∈ G` and a class `ij ∈ {00, 01, 10, 11}`. Faces
//! are indexed by triples `(g, a, b)` in lexicographic order; the face `(g, a, b)`
//! is `{(g,00), (ag,01), (gb,10), (agb,11)}`.

use std::collections::VecDeque;
use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest group order for which associativity is checked on every triple.
const EXHAUSTIVE_ASSOCIATIVITY_ORDER: usize = 64;
const SAMPLED_ASSOCIATIVITY_TRIPLES: usize = 200_000;
/// Largest group order for the dense eigensolve in [`LeftRightCayleyComplex::second_eigenvalue`].
pub const SPECTRUM_MAX_ORDER: usize = 4096;

/// How to build a group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupSpec {
    /// `Z_m` with element `k` standing for `k mod m`.
    Cyclic { m: usize },
    /// Dihedral group of order `2m`; element `k + m·f` stands for `r^k s^f`.
    Dihedral { m: usize },
    /// Explicit multiplication table, `table[x][y] = x·y`.
    Table { table: Vec<Vec<usize>> },
}

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    id: usize,
}

impl FiniteGroup {
    pub fn build(spec: &GroupSpec) -> Result<Self> {
        match spec {
            GroupSpec::Cyclic { m } => Self::cyclic(*m),
            GroupSpec::Dihedral { m } => Self::dihedral(*m),
            GroupSpec::Table { table } => Self::from_table(table),
        }
    }

    pub fn cyclic(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::GroupAxiom("cyclic group of order 0".into()));
        }
        let mul = (0..m * m).map(|i| (i / m + i % m) % m).collect();
        let inv = (0..m).map(|g| (m - g) % m).collect();
        Ok(Self { order: m, mul, inv, id: 0 })
    }

    pub fn dihedral(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::GroupAxiom("dihedral group with m = 0".into()));
        }
        let order = 2 * m;
        let split = |x: usize| (x % m, x / m);
        let mut mul = vec![0; order * order];
        for x in 0..order {
            for y in 0..order {
                let (k1, f1) = split(x);
                let (k2, f2) = split(y);
                // r^k1 s^f1 · r^k2 s^f2 = r^(k1 ± k2) s^(f1 + f2)
                let k = if f1 == 0 { (k1 + k2) % m } else { (k1 + m - k2) % m };
                mul[x * order + y] = k + m * ((f1 + f2) % 2);
            }
        }
        Self::from_flat(order, mul)
    }

    /// Validates closure, identity, inverses and associativity of an explicit table.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self> {
        let order = table.len();
        if order == 0 {
            return Err(Error::GroupAxiom("empty multiplication table".into()));
        }
        let mut mul = Vec::with_capacity(order * order);
        for (x, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(Error::GroupAxiom(format!(
                    "row {x} has {} entries, expected {order}",
                    row.len()
                )));
            }
            for (y, &z) in row.iter().enumerate() {
                if z >= order {
                    return Err(Error::GroupAxiom(format!("{x}·{y} = {z} is not an element")));
                }
                mul.push(z);
            }
        }
        Self::from_flat(order, mul)
    }

    fn from_flat(order: usize, mul: Vec<usize>) -> Result<Self> {
        let at = |x: usize, y: usize| mul[x * order + y];
        let id = (0..order)
            .find(|&e| (0..order).all(|g| at(e, g) == g && at(g, e) == g))
            .ok_or_else(|| Error::GroupAxiom("no identity element".into()))?;
        let mut inv = vec![0; order];
        for g in 0..order {
            inv[g] = (0..order)
                .find(|&h| at(g, h) == id && at(h, g) == id)
                .ok_or_else(|| Error::GroupAxiom(format!("element {g} has no inverse")))?;
        }
        let check = |x: usize, y: usize, z: usize| -> Result<()> {
            if at(at(x, y), z) != at(x, at(y, z)) {
                return Err(Error::GroupAxiom(format!(
                    "associativity fails for ({x}, {y}, {z})"
                )));
            }
            Ok(())
        };
        if order <= EXHAUSTIVE_ASSOCIATIVITY_ORDER {
            for x in 0..order {
                for y in 0..order {
                    for z in 0..order {
                        check(x, y, z)?;
                    }
                }
            }
        } else {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(order as u64);
            for _ in 0..SAMPLED_ASSOCIATIVITY_TRIPLES {
                check(
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                )?;
            }
        }
        Ok(Self { order, mul, inv, id })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.id
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.order + y]
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    /// A pair of elements that do not commute, if the group is non-abelian.
    pub fn noncommuting_pair(&self) -> Option<(usize, usize)> {
        (0..self.order)
            .flat_map(|x| (0..self.order).map(move |y| (x, y)))
            .find(|&(x, y)| self.mul(x, y) != self.mul(y, x))
    }

    /// Size of the subgroup generated by `elements` (BFS from the identity).
    pub fn generated_subgroup_size(&self, elements: &[usize]) -> usize {
        let mut seen = vec![false; self.order];
        let mut queue = VecDeque::from([self.id]);
        seen[self.id] = true;
        let mut count = 1;
        while let Some(g) = queue.pop_front() {
            for &s in elements {
                let h = self.mul(s, g);
                if !seen[h] {
                    seen[h] = true;
                    count += 1;
                    queue.push_back(h);
                }
            }
        }
        count
    }
}

/// A symmetric generating set, kept in the caller's order. Position `i` in this
/// order is the row (for `A`) or column (for `B`) index in local views.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingSet {
    elements: Vec<usize>,
}

impl GeneratingSet {
    pub fn validate(group: &FiniteGroup, elements: &[usize]) -> Result<Self> {
        for (i, &s) in elements.iter().enumerate() {
            if s >= group.order() {
                return Err(Error::InvalidParameter(format!(
                    "generator {s} is not an element of a group of order {}",
                    group.order()
                )));
            }
            if elements[..i].contains(&s) {
                return Err(Error::InvalidParameter(format!("generator {s} listed twice")));
            }
        }
        if let Some(&s) = elements.iter().find(|&&s| !elements.contains(&group.inv(s))) {
            return Err(Error::NotSymmetric { element: s });
        }
        let reached = group.generated_subgroup_size(elements);
        if reached != group.order() {
            return Err(Error::NotGenerating {
                subgroup_size: reached,
                order: group.order(),
            });
        }
        Ok(Self {
            elements: elements.to_vec(),
        })
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, element: usize) -> Option<usize> {
        self.elements.iter().position(|&s| s == element)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VertexClass {
    V00,
    V01,
    V10,
    V11,
}

impl VertexClass {
    pub const ALL: [VertexClass; 4] = [Self::V00, Self::V01, Self::V10, Self::V11];

    pub fn from_bits(i: u8, j: u8) -> Self {
        match (i & 1, j & 1) {
            (0, 0) => Self::V00,
            (0, 1) => Self::V01,
            (1, 0) => Self::V10,
            _ => Self::V11,
        }
    }

    /// `(i, j)` for class `V_ij`.
    pub fn bits(self) -> (u8, u8) {
        match self {
            Self::V00 => (0, 0),
            Self::V01 => (0, 1),
            Self::V10 => (1, 0),
            Self::V11 => (1, 1),
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// Member of `V₀ = V₀₀ ∪ V₁₁`.
    pub fn is_even(self) -> bool {
        matches!(self, Self::V00 | Self::V11)
    }

    /// `(i, j) ↦ (i, 1 − j)`: exchanges `V₀` and `V₁` while keeping `A`-edges
    /// between classes with equal `i` and `B`-edges between classes with equal `j`.
    pub fn flip_j(self) -> Self {
        let (i, j) = self.bits();
        Self::from_bits(i, 1 - j)
    }
}

impl fmt::Display for VertexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j) = self.bits();
        write!(f, "{i}{j}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub g: usize,
    pub class: VertexClass,
}

/// A face as its defining triple; `a` and `b` are positions in the generating sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    pub g: usize,
    pub a: usize,
    pub b: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CayleySide {
    /// `Cay(A, G)`, edges `{g, ag}`.
    Left,
    /// `Cay(G, B)`, edges `{g, gb}`.
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub degree: usize,
    /// Second largest adjacency eigenvalue; absent for the one-vertex graph.
    pub lambda2: Option<f64>,
    pub ramanujan_bound: f64,
    pub is_ramanujan: bool,
}

#[derive(Clone, Debug)]
pub struct LeftRightCayleyComplex {
    group: FiniteGroup,
    a: GeneratingSet,
    b: GeneratingSet,
    /// `views[vertex_index * |A||B| + ia * |B| + ib]` is a face index.
    views: Vec<usize>,
}

impl LeftRightCayleyComplex {
    pub fn new(group: FiniteGroup, a: GeneratingSet, b: GeneratingSet) -> Self {
        let (na, nb) = (a.len(), b.len());
        let order = group.order();
        let mut views = Vec::with_capacity(4 * order * na * nb);
        for class in VertexClass::ALL {
            for h in 0..order {
                for (ia, &ga) in a.elements().iter().enumerate() {
                    for (ib, &gb) in b.elements().iter().enumerate() {
                        let ainv = group.inv(ga);
                        let binv = group.inv(gb);
                        let g = match class {
                            VertexClass::V00 => h,
                            VertexClass::V01 => group.mul(ainv, h),
                            VertexClass::V10 => group.mul(h, binv),
                            VertexClass::V11 => group.mul(group.mul(ainv, h), binv),
                        };
                        views.push((g * na + ia) * nb + ib);
                    }
                }
            }
        }
        Self { group, a, b, views }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn set_a(&self) -> &GeneratingSet {
        &self.a
    }

    pub fn set_b(&self) -> &GeneratingSet {
        &self.b
    }

    /// Number of entries in a local view, `|A|·|B|`.
    pub fn view_size(&self) -> usize {
        self.a.len() * self.b.len()
    }

    pub fn num_vertices(&self) -> usize {
        4 * self.group.order()
    }

    pub fn num_faces(&self) -> usize {
        self.group.order() * self.view_size()
    }

    pub fn num_a_edges(&self) -> usize {
        2 * self.group.order() * self.a.len()
    }

    pub fn num_b_edges(&self) -> usize {
        2 * self.group.order() * self.b.len()
    }

    pub fn vertex_index(&self, v: Vertex) -> usize {
        v.class.index() * self.group.order() + v.g
    }

    pub fn vertex(&self, index: usize) -> Vertex {
        let order = self.group.order();
        Vertex {
            g: index % order,
            class: VertexClass::ALL[index / order],
        }
    }

    pub fn face_index(&self, f: Face) -> usize {
        (f.g * self.a.len() + f.a) * self.b.len() + f.b
    }

    pub fn face(&self, index: usize) -> Face {
        let (na, nb) = (self.a.len(), self.b.len());
        Face {
            g: index / (na * nb),
            a: (index / nb) % na,
            b: index % nb,
        }
    }

    /// `{(g,00), (ag,01), (gb,10), (agb,11)}` in class order.
    pub fn face_vertices(&self, f: Face) -> [Vertex; 4] {
        let grp = &self.group;
        let ga = self.a.elements()[f.a];
        let gb = self.b.elements()[f.b];
        let ag = grp.mul(ga, f.g);
        [
            Vertex { g: f.g, class: VertexClass::V00 },
            Vertex { g: ag, class: VertexClass::V01 },
            Vertex { g: grp.mul(f.g, gb), class: VertexClass::V10 },
            Vertex { g: grp.mul(ag, gb), class: VertexClass::V11 },
        ]
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v.g >= self.group.order() {
            return Err(Error::InvalidVertex(format!(
                "group element {} out of range for order {}",
                v.g,
                self.group.order()
            )));
        }
        Ok(())
    }

    /// Face indices of `Q(v)` laid out row-major over `A × B`.
    pub fn local_view(&self, v: Vertex) -> Result<&[usize]> {
        self.check_vertex(v)?;
        Ok(self.local_view_by_index(self.vertex_index(v)))
    }

    #[inline]
    pub fn local_view_by_index(&self, vertex_index: usize) -> &[usize] {
        let size = self.view_size();
        &self.views[vertex_index * size..(vertex_index + 1) * size]
    }

    /// Faces on the `A`-edge `{(g, i0), (ag, i1)}`, ordered by `b`.
    pub fn faces_of_a_edge(&self, i: u8, g: usize, a: usize) -> Vec<usize> {
        (0..self.b.len())
            .map(|b| {
                let base = if i == 0 {
                    g
                } else {
                    self.group.mul(g, self.group.inv(self.b.elements()[b]))
                };
                self.face_index(Face { g: base, a, b })
            })
            .collect()
    }

    /// Faces on the `B`-edge `{(g, 0j), (gb, 1j)}`, ordered by `a`.
    pub fn faces_of_b_edge(&self, j: u8, g: usize, b: usize) -> Vec<usize> {
        (0..self.a.len())
            .map(|a| {
                let base = if j == 0 {
                    g
                } else {
                    self.group.mul(self.group.inv(self.a.elements()[a]), g)
                };
                self.face_index(Face { g: base, a, b })
            })
            .collect()
    }

    pub fn adjacency(&self, side: CayleySide) -> DMatrix<f64> {
        let n = self.group.order();
        let mut m = DMatrix::<f64>::zeros(n, n);
        for g in 0..n {
            match side {
                CayleySide::Left => {
                    for &s in self.a.elements() {
                        m[(g, self.group.mul(s, g))] += 1.0;
                    }
                }
                CayleySide::Right => {
                    for &s in self.b.elements() {
                        m[(g, self.group.mul(g, s))] += 1.0;
                    }
                }
            }
        }
        m
    }

    /// Second largest adjacency eigenvalue of `Cay(A, G)` or `Cay(G, B)` with the
    /// Ramanujan test `λ₂ ≤ 2√(Δ − 1)`.
    pub fn second_eigenvalue(&self, side: CayleySide) -> Result<SpectrumReport> {
        let n = self.group.order();
        if n > SPECTRUM_MAX_ORDER {
            return Err(Error::Budget(format!(
                "dense eigensolve on {n} vertices (limit {SPECTRUM_MAX_ORDER})"
            )));
        }
        let degree = match side {
            CayleySide::Left => self.a.len(),
            CayleySide::Right => self.b.len(),
        };
        let mut eig: Vec<f64> = SymmetricEigen::new(self.adjacency(side)).eigenvalues.iter().copied().collect();
        eig.sort_by(|x, y| y.total_cmp(x));
        let lambda2 = eig.get(1).copied();
        let bound = 2.0 * (degree.saturating_sub(1) as f64).sqrt();
        Ok(SpectrumReport {
            degree,
            lambda2,
            ramanujan_bound: bound,
            is_ramanujan: lambda2.is_none_or(|l| l <= bound + 1e-9),
        })
    }
}
