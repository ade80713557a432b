//! Structured quadrilateral (2D) and hexahedral (3D) meshes of axis-aligned boxes.
//!
//! Nodes and elements are numbered lexicographically with the x index running
//! fastest. The vertices of an element follow the same rule: local vertex `v`
//! has offset bit `d` equal to `(v >> d) & 1` along axis `d`, so in 2D the order
//! is `(−,−), (+,−), (−,+), (+,+)`.

use std::io::Write;

use crate::error::{Result, WsmError};
use crate::scalar::Real;

/// Boundary condition class of an outer facet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundaryTag {
    Dirichlet,
    FreeSurface,
}

/// One side of the box: the face normal to `axis` at the lower or upper end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BoxSide {
    pub axis: usize,
    pub upper: bool,
}

impl BoxSide {
    /// The `z = hi` side in 3D (`y = hi` in 2D).
    pub fn top<const D: usize>() -> Self {
        Self { axis: D - 1, upper: true }
    }

    pub fn index(&self) -> usize {
        2 * self.axis + self.upper as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundaryFacet {
    pub element: usize,
    pub face: BoxSide,
    pub tag: BoundaryTag,
}

/// Identifies a mesh by its box and resolution; attached to derived data such
/// as fault segments so that mismatched pairs can be rejected.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeshKey<const D: usize> {
    pub lo: [f64; D],
    pub hi: [f64; D],
    pub counts: [usize; D],
}

#[derive(Clone, Debug)]
pub struct StructuredMesh<T, const D: usize> {
    lo: [T; D],
    hi: [T; D],
    counts: [usize; D],
    free_surface: Option<BoxSide>,
    nodes: Vec<[T; D]>,
    elements: Vec<usize>,
    boundary_facets: Vec<BoundaryFacet>,
}

#[inline]
pub(crate) fn grid_coord<T: Real>(lo: T, hi: T, i: usize, n: usize) -> T {
    lo + T::lit(i as f64) * (hi - lo) / T::lit(n as f64)
}

impl<T: Real, const D: usize> StructuredMesh<T, D> {
    pub const VERTICES_PER_ELEMENT: usize = 1 << D;

    /// Tensor-product mesh of the box `[lo, hi]` with `counts[d]` elements per axis.
    ///
    /// Every outer facet is tagged [`BoundaryTag::Dirichlet`] except those on
    /// `free_surface`, which are tagged [`BoundaryTag::FreeSurface`].
    pub fn build_box_mesh(
        lo: [T; D],
        hi: [T; D],
        counts: [usize; D],
        free_surface: Option<BoxSide>,
    ) -> Result<Self> {
        if !(1..=3).contains(&D) {
            return Err(WsmError::InvalidMesh(format!("dimension {D} not supported")));
        }
        for d in 0..D {
            if counts[d] == 0 {
                return Err(WsmError::InvalidMesh(format!("zero element count on axis {d}")));
            }
            if !(lo[d] < hi[d]) {
                return Err(WsmError::InvalidMesh(format!("degenerate extent on axis {d}")));
            }
        }
        if let Some(s) = free_surface {
            if s.axis >= D {
                return Err(WsmError::InvalidMesh(format!("free-surface axis {} >= {D}", s.axis)));
            }
        }

        let node_counts: [usize; D] = std::array::from_fn(|d| counts[d] + 1);
        let n_nodes: usize = node_counts.iter().product();
        let nodes = (0..n_nodes)
            .map(|k| {
                let idx = unravel(k, &node_counts);
                std::array::from_fn(|d| grid_coord(lo[d], hi[d], idx[d], counts[d]))
            })
            .collect();

        let n_elem: usize = counts.iter().product();
        let nv = Self::VERTICES_PER_ELEMENT;
        let mut elements = Vec::with_capacity(n_elem * nv);
        for e in 0..n_elem {
            let idx = unravel(e, &counts);
            for v in 0..nv {
                let nidx: [usize; D] = std::array::from_fn(|d| idx[d] + ((v >> d) & 1));
                elements.push(ravel(&nidx, &node_counts));
            }
        }

        let mut boundary_facets = Vec::new();
        for e in 0..n_elem {
            let idx = unravel(e, &counts);
            for axis in 0..D {
                for upper in [false, true] {
                    let on_boundary = if upper { idx[axis] + 1 == counts[axis] } else { idx[axis] == 0 };
                    if on_boundary {
                        let face = BoxSide { axis, upper };
                        let tag = if Some(face) == free_surface {
                            BoundaryTag::FreeSurface
                        } else {
                            BoundaryTag::Dirichlet
                        };
                        boundary_facets.push(BoundaryFacet { element: e, face, tag });
                    }
                }
            }
        }

        Ok(Self { lo, hi, counts, free_surface, nodes, elements, boundary_facets })
    }

    pub fn lo(&self) -> &[T; D] {
        &self.lo
    }

    pub fn hi(&self) -> &[T; D] {
        &self.hi
    }

    pub fn counts(&self) -> &[usize; D] {
        &self.counts
    }

    pub fn free_surface(&self) -> Option<BoxSide> {
        self.free_surface
    }

    pub fn nodes(&self) -> &[[T; D]] {
        &self.nodes
    }

    pub fn n_elements(&self) -> usize {
        self.counts.iter().product()
    }

    pub fn element_vertices(&self, e: usize) -> &[usize] {
        let nv = Self::VERTICES_PER_ELEMENT;
        &self.elements[e * nv..(e + 1) * nv]
    }

    pub fn boundary_facets(&self) -> &[BoundaryFacet] {
        &self.boundary_facets
    }

    pub fn key(&self) -> MeshKey<D> {
        MeshKey {
            lo: self.lo.map(|v| v.re()),
            hi: self.hi.map(|v| v.re()),
            counts: self.counts,
        }
    }

    /// Edge lengths of every element.
    pub fn element_size(&self) -> [T; D] {
        std::array::from_fn(|d| (self.hi[d] - self.lo[d]) / T::lit(self.counts[d] as f64))
    }

    /// Element diameter (box diagonal); identical for every element.
    pub fn element_diameter(&self) -> T {
        self.element_size().iter().map(|&h| h * h).sum::<T>().sqrt()
    }

    /// Largest element diameter.
    pub fn mesh_size(&self) -> T {
        self.element_diameter()
    }

    pub fn element_index(&self, e: usize) -> [usize; D] {
        unravel(e, &self.counts)
    }

    pub fn element_at(&self, idx: &[usize; D]) -> usize {
        ravel(idx, &self.counts)
    }

    /// Lower and upper corners of element `e`.
    pub fn element_bounds(&self, e: usize) -> ([T; D], [T; D]) {
        let idx = self.element_index(e);
        let lo = std::array::from_fn(|d| grid_coord(self.lo[d], self.hi[d], idx[d], self.counts[d]));
        let hi =
            std::array::from_fn(|d| grid_coord(self.lo[d], self.hi[d], idx[d] + 1, self.counts[d]));
        (lo, hi)
    }

    /// Neighbor of `e` across its face `side`, if it exists.
    pub fn neighbor(&self, e: usize, side: BoxSide) -> Option<usize> {
        let mut idx = self.element_index(e);
        if side.upper {
            if idx[side.axis] + 1 >= self.counts[side.axis] {
                return None;
            }
            idx[side.axis] += 1;
        } else {
            if idx[side.axis] == 0 {
                return None;
            }
            idx[side.axis] -= 1;
        }
        Some(self.element_at(&idx))
    }

    /// Maps reference coordinates in `[−1, 1]^D` of element `e` to physical space.
    pub fn to_physical(&self, e: usize, local: &[T; D]) -> [T; D] {
        let (lo, hi) = self.element_bounds(e);
        let half = T::lit(0.5);
        std::array::from_fn(|d| lo[d] + (local[d] + T::one()) * half * (hi[d] - lo[d]))
    }

    /// Element containing `x` and the reference coordinates of `x` within it.
    ///
    /// Points within `1e-12·h` of the box are snapped onto it. On shared faces
    /// the element with the lower index wins.
    pub fn element_containing(&self, x: &[T; D]) -> Result<(usize, [T; D])> {
        let h = self.element_size();
        let mut idx = [0usize; D];
        let mut local = [T::zero(); D];
        for d in 0..D {
            let tol = T::lit(1e-12) * h[d];
            if x[d] < self.lo[d] - tol || x[d] > self.hi[d] + tol {
                return Err(WsmError::OutsideDomain(x.iter().map(|v| v.re()).collect()));
            }
            let n = self.counts[d];
            let t = (x[d] - self.lo[d]) / h[d];
            let nearest = t.round();
            let mut i = if (t - nearest).abs() <= T::lit(1e-12) {
                // on a grid plane: prefer the element below it
                let k = nearest.re().max(0.0) as usize;
                k.saturating_sub(1)
            } else {
                t.floor().re().max(0.0) as usize
            };
            i = i.min(n - 1);
            idx[d] = i;
            let (elo, ehi) = (
                grid_coord(self.lo[d], self.hi[d], i, n),
                grid_coord(self.lo[d], self.hi[d], i + 1, n),
            );
            let s = T::lit(2.0) * (x[d] - elo) / (ehi - elo) - T::one();
            local[d] = s.max(-T::one()).min(T::one());
        }
        Ok((self.element_at(&idx), local))
    }

    /// Plain-text dump: node count, coordinates, element count, connectivity.
    pub fn write_text<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{} {}", D, self.nodes.len())?;
        for x in &self.nodes {
            let row: Vec<String> = x.iter().map(|v| format!("{}", v.re())).collect();
            writeln!(w, "{}", row.join(" "))?;
        }
        writeln!(w, "{}", self.n_elements())?;
        for e in 0..self.n_elements() {
            let row: Vec<String> = self.element_vertices(e).iter().map(|v| v.to_string()).collect();
            writeln!(w, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Meshes of one box with element counts doubling per level.
#[derive(Clone, Debug)]
pub struct MeshSequence<T, const D: usize> {
    pub meshes: Vec<StructuredMesh<T, D>>,
}

impl<T: Real, const D: usize> MeshSequence<T, D> {
    pub fn new(
        lo: [T; D],
        hi: [T; D],
        base_counts: [usize; D],
        levels: usize,
        free_surface: Option<BoxSide>,
    ) -> Result<Self> {
        let meshes = (0..levels)
            .map(|k| {
                let counts = base_counts.map(|c| c << k);
                StructuredMesh::build_box_mesh(lo, hi, counts, free_surface)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { meshes })
    }
}

#[inline]
pub(crate) fn unravel<const D: usize>(mut k: usize, dims: &[usize; D]) -> [usize; D] {
    let mut idx = [0; D];
    for d in 0..D {
        idx[d] = k % dims[d];
        k /= dims[d];
    }
    idx
}

#[inline]
pub(crate) fn ravel<const D: usize>(idx: &[usize; D], dims: &[usize; D]) -> usize {
    let mut k = 0;
    for d in (0..D).rev() {
        k = k * dims[d] + idx[d];
    }
    k
}
