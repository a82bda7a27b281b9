use super::Link;
use crate::error::{invalid, Result};
use crate::geom::{point_segment_distance_sq, Aabb, Point};

/// Upper bound on the number of cells; the cell size grows to respect it.
const MAX_CELLS: usize = 1 << 22;

/// Uniform grid over the centerline segments of a [`Link`].
///
/// Every segment is registered in each cell touched by its bounding box
/// inflated by `inflate` (the tube radius by default). Cells are stored
/// densely in compressed-row form over the inflated bounding box of the link.
#[derive(Clone, Debug)]
pub struct SegmentGrid {
    origin: Point,
    cell_size: f64,
    dims: [usize; 3],
    inflate: f64,
    offsets: Vec<u32>,
    indices: Vec<u32>,
    segments: Vec<(Point, Point)>,
}

impl SegmentGrid {
    /// Grid with cell size `2a` and inflation `a`, where `a` is the tube radius.
    pub fn new(link: &Link) -> Self {
        let a = link.tube_radius();
        Self::with_cell_size(link, 2.0 * a, a).expect("tube radius is positive")
    }

    pub fn with_cell_size(link: &Link, cell_size: f64, inflate: f64) -> Result<Self> {
        if !(cell_size > 0.0 && cell_size.is_finite()) {
            return Err(invalid(format!("cell size must be positive, got {cell_size}")));
        }
        if !(inflate >= 0.0 && inflate.is_finite()) {
            return Err(invalid(format!("inflation must be non-negative, got {inflate}")));
        }
        let segments: Vec<_> = link.segments().collect();
        let bounds = link.bounding_box().inflated(inflate);
        let extent = bounds.extent();

        let mut cell_size = cell_size;
        let dims = loop {
            let dims = [extent.x, extent.y, extent.z].map(|e| ((e / cell_size).floor() as usize + 1).max(1));
            if dims.iter().product::<usize>() <= MAX_CELLS {
                break dims;
            }
            cell_size *= 2.0;
        };

        let mut grid = SegmentGrid {
            origin: bounds.min,
            cell_size,
            dims,
            inflate,
            offsets: Vec::new(),
            indices: Vec::new(),
            segments,
        };

        let ncells = dims.iter().product::<usize>();
        let mut counts = vec![0u32; ncells + 1];
        for (p, q) in &grid.segments {
            grid.for_each_touched_cell(p, q, |cell| counts[cell + 1] += 1);
        }
        for i in 0..ncells {
            counts[i + 1] += counts[i];
        }
        let mut fill = counts.clone();
        let mut indices = vec![0u32; counts[ncells] as usize];
        for (s, (p, q)) in grid.segments.iter().enumerate() {
            grid.for_each_touched_cell(p, q, |cell| {
                indices[fill[cell] as usize] = s as u32;
                fill[cell] += 1;
            });
        }
        grid.offsets = counts;
        grid.indices = indices;
        Ok(grid)
    }

    pub fn cell_size(&self) -> f64 {
        self.cell_size
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn segment_count(&self) -> usize {
        self.segments.len()
    }

    fn for_each_touched_cell(&self, p: &Point, q: &Point, mut f: impl FnMut(usize)) {
        let bb = Aabb::from_points([p, q]).unwrap().inflated(self.inflate);
        let lo = self.clamped_coords(&bb.min);
        let hi = self.clamped_coords(&bb.max);
        for k in lo[2]..=hi[2] {
            for j in lo[1]..=hi[1] {
                for i in lo[0]..=hi[0] {
                    f(self.flat(i, j, k));
                }
            }
        }
    }

    #[inline]
    fn raw_coords(&self, p: &Point) -> [i64; 3] {
        let r = (p - self.origin) / self.cell_size;
        [r.x.floor() as i64, r.y.floor() as i64, r.z.floor() as i64]
    }

    fn clamped_coords(&self, p: &Point) -> [usize; 3] {
        let c = self.raw_coords(p);
        [0, 1, 2].map(|d| c[d].clamp(0, self.dims[d] as i64 - 1) as usize)
    }

    #[inline]
    fn flat(&self, i: usize, j: usize, k: usize) -> usize {
        (k * self.dims[1] + j) * self.dims[0] + i
    }

    #[inline]
    fn cell(&self, flat: usize) -> &[u32] {
        &self.indices[self.offsets[flat] as usize..self.offsets[flat + 1] as usize]
    }

    #[inline]
    fn cell_of(&self, p: &Point) -> Option<usize> {
        let c = self.raw_coords(p);
        if c.iter().zip(&self.dims).any(|(&ci, &n)| ci < 0 || ci >= n as i64) {
            return None;
        }
        Some(self.flat(c[0] as usize, c[1] as usize, c[2] as usize))
    }

    /// Whether some segment lies within `radius` of `p` (squared-distance test).
    ///
    /// For `radius <= inflate` only the cell containing `p` is inspected.
    #[inline]
    pub fn within(&self, p: &Point, radius: f64) -> bool {
        if radius > self.inflate {
            return self.distance(p) <= radius;
        }
        let r2 = radius * radius;
        match self.cell_of(p) {
            None => false,
            Some(cell) => self.cell(cell).iter().any(|&s| {
                let (a, b) = &self.segments[s as usize];
                point_segment_distance_sq(p, a, b) <= r2
            }),
        }
    }

    /// Exact minimum distance from `p` to the union of all segments.
    ///
    /// Cells are visited in shells of growing Chebyshev radius around the cell
    /// of `p`. After shell `s`, no unvisited segment can be closer than
    /// `s * cell_size + inflate`, which bounds the search.
    pub fn distance(&self, p: &Point) -> f64 {
        let center = self.raw_coords(p);
        let mut best_sq = f64::INFINITY;
        let mut shell: i64 = 0;
        loop {
            self.visit_shell(center, shell, |cell| {
                for &s in self.cell(cell) {
                    let (a, b) = &self.segments[s as usize];
                    let d = point_segment_distance_sq(p, a, b);
                    if d < best_sq {
                        best_sq = d;
                    }
                }
            });
            let covered = (0..3).all(|d| center[d] - shell <= 0 && center[d] + shell >= self.dims[d] as i64 - 1);
            let bound = shell as f64 * self.cell_size + self.inflate;
            if covered || best_sq.sqrt() <= bound {
                return best_sq.sqrt();
            }
            shell += 1;
        }
    }

    fn visit_shell(&self, center: [i64; 3], shell: i64, mut f: impl FnMut(usize)) {
        let lo = [0, 1, 2].map(|d| (center[d] - shell).max(0));
        let hi = [0, 1, 2].map(|d| (center[d] + shell).min(self.dims[d] as i64 - 1));
        if (0..3).any(|d| lo[d] > hi[d]) {
            return;
        }
        for k in lo[2]..=hi[2] {
            for j in lo[1]..=hi[1] {
                for i in lo[0]..=hi[0] {
                    let on_shell = (i - center[0]).abs() == shell
                        || (j - center[1]).abs() == shell
                        || (k - center[2]).abs() == shell;
                    if on_shell {
                        f(self.flat(i as usize, j as usize, k as usize));
                    }
                }
            }
        }
    }

    /// Linear scan over every segment.
    pub fn brute_force_distance(&self, p: &Point) -> f64 {
        self.segments
            .iter()
            .map(|(a, b)| point_segment_distance_sq(p, a, b))
            .fold(f64::INFINITY, f64::min)
            .sqrt()
    }
}

/// Minimum distance from `p` to the centerlines of `link`, answered through `grid`.
pub fn distance_to_link(p: &Point, link: &Link, grid: &SegmentGrid) -> f64 {
    debug_assert_eq!(link.segment_count(), grid.segment_count(), "grid was built from another link");
    grid.distance(p)
}
