//! Planar convex geometry helpers: hulls, membership with margins,
//! Hausdorff distances. Points live in ℂ.

use crate::matrix::C64;

/// Convex hull (monotone chain), counterclockwise, no repeated last vertex.
/// Collinear points on the hull are dropped.
pub fn convex_hull(points: &[C64]) -> Vec<C64> {
    let mut pts: Vec<C64> = points.to_vec();
    pts.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).expect("finite points"));
    pts.dedup_by(|a, b| a.re == b.re && a.im == b.im);
    let n = pts.len();
    if n <= 2 {
        return pts;
    }
    let mut hull: Vec<C64> = Vec::with_capacity(2 * n);
    for &p in pts.iter() {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev() {
        while hull.len() >= lower_len && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

/// Cross product (b − a) × (c − a).
pub fn cross(a: C64, b: C64, c: C64) -> f64 {
    (b.re - a.re) * (c.im - a.im) - (b.im - a.im) * (c.re - a.re)
}

fn dist_point_segment(p: C64, a: C64, b: C64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p.re - a.re) * ab.re + (p.im - a.im) * ab.im) / len2;
    let t = t.clamp(0.0, 1.0);
    let proj = C64::new(a.re + t * ab.re, a.im + t * ab.im);
    (p - proj).norm()
}

/// Signed distance of `p` to a convex CCW polygon: positive depth when
/// inside, negative distance when outside. Degenerate polygons (point,
/// segment) give 0 on the set and negative off it.
pub fn signed_distance_convex(poly: &[C64], p: C64) -> f64 {
    match poly.len() {
        0 => return f64::NEG_INFINITY,
        1 => return -(p - poly[0]).norm(),
        2 => return -dist_point_segment(p, poly[0], poly[1]),
        _ => {}
    }
    let n = poly.len();
    let mut inside = true;
    let mut min_seg = f64::INFINITY;
    let mut min_line = f64::INFINITY;
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        let c = cross(a, b, p);
        if c < 0.0 {
            inside = false;
        }
        let seg = dist_point_segment(p, a, b);
        min_seg = min_seg.min(seg);
        let len = (b - a).norm();
        if len > 0.0 {
            min_line = min_line.min(c.abs() / len);
        }
    }
    if inside {
        min_line
    } else {
        -min_seg
    }
}

/// Directed Hausdorff distance: sup over `from` of the distance to `to`.
pub fn directed_hausdorff(from: &[C64], to: &[C64]) -> f64 {
    from.iter()
        .map(|&p| to.iter().map(|&q| (p - q).norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
}

/// Symmetric Hausdorff distance between point sets.
pub fn hausdorff(a: &[C64], b: &[C64]) -> f64 {
    directed_hausdorff(a, b).max(directed_hausdorff(b, a))
}

/// Hausdorff distance between two convex regions given by their hull
/// vertices. For convex polygons the set distance is attained at a vertex of
/// one polygon against the other polygon as a region.
pub fn hausdorff_convex_regions(a: &[C64], b: &[C64]) -> f64 {
    let gap = |from: &[C64], to: &[C64]| {
        from.iter()
            .map(|&v| (-signed_distance_convex(to, v)).max(0.0))
            .fold(0.0, f64::max)
    };
    gap(a, b).max(gap(b, a))
}

pub fn diameter(points: &[C64]) -> f64 {
    // hull first: diameter is attained on hull vertices
    let hull = convex_hull(points);
    let pts = if hull.len() >= 2 { &hull[..] } else { points };
    let mut best = 0.0f64;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            best = best.max((pts[i] - pts[j]).norm());
        }
    }
    best
}

/// Max perpendicular deviation of the points from their best-fit line
/// through the centroid. Near zero means the set is (numerically) collinear.
pub fn collinearity_defect(points: &[C64]) -> f64 {
    if points.len() < 3 {
        return 0.0;
    }
    let n = points.len() as f64;
    let cx = points.iter().map(|p| p.re).sum::<f64>() / n;
    let cy = points.iter().map(|p| p.im).sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for p in points {
        let dx = p.re - cx;
        let dy = p.im - cy;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    // principal axis of the 2x2 covariance
    let tr = sxx + syy;
    let det = sxx * syy - sxy * sxy;
    let disc = (tr * tr / 4.0 - det).max(0.0).sqrt();
    let lambda_max = tr / 2.0 + disc;
    let (dirx, diry) = if sxy.abs() > 1e-300 {
        (lambda_max - syy, sxy)
    } else if sxx >= syy {
        (1.0, 0.0)
    } else {
        (0.0, 1.0)
    };
    let len = (dirx * dirx + diry * diry).sqrt();
    if len == 0.0 {
        return 0.0;
    }
    let (ux, uy) = (dirx / len, diry / len);
    points
        .iter()
        .map(|p| ((p.re - cx) * (-uy) + (p.im - cy) * ux).abs())
        .fold(0.0, f64::max)
}

/// Uniform-grid nearest-neighbor index over a fixed point cloud.
pub struct NearestGrid {
    points: Vec<C64>,
    cells: Vec<Vec<u32>>,
    nx: usize,
    ny: usize,
    x0: f64,
    y0: f64,
    cell: f64,
}

impl NearestGrid {
    pub fn build(points: &[C64]) -> Self {
        assert!(!points.is_empty());
        let (mut xmin, mut xmax) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut ymin, mut ymax) = (f64::INFINITY, f64::NEG_INFINITY);
        for p in points {
            xmin = xmin.min(p.re);
            xmax = xmax.max(p.re);
            ymin = ymin.min(p.im);
            ymax = ymax.max(p.im);
        }
        let span = (xmax - xmin).max(ymax - ymin).max(1e-300);
        let target = (points.len() as f64).sqrt().ceil() as usize;
        let n = target.clamp(1, 256);
        let cell = span / n as f64;
        let nx = (((xmax - xmin) / cell).ceil() as usize + 1).max(1);
        let ny = (((ymax - ymin) / cell).ceil() as usize + 1).max(1);
        let mut cells = vec![Vec::new(); nx * ny];
        for (k, p) in points.iter().enumerate() {
            let ix = (((p.re - xmin) / cell) as usize).min(nx - 1);
            let iy = (((p.im - ymin) / cell) as usize).min(ny - 1);
            cells[iy * nx + ix].push(k as u32);
        }
        Self { points: points.to_vec(), cells, nx, ny, x0: xmin, y0: ymin, cell }
    }

    /// Distance from `p` to the nearest indexed point.
    pub fn nearest_distance(&self, p: C64) -> f64 {
        let ix = (((p.re - self.x0) / self.cell).floor() as isize).clamp(0, self.nx as isize - 1);
        let iy = (((p.im - self.y0) / self.cell).floor() as isize).clamp(0, self.ny as isize - 1);
        let mut best = f64::INFINITY;
        let max_ring = self.nx.max(self.ny) as isize;
        for ring in 0..=max_ring {
            // once a hit exists, one extra ring guarantees correctness
            if best < (ring as f64 - 1.0) * self.cell {
                break;
            }
            for dy in -ring..=ring {
                for dx in -ring..=ring {
                    if dx.abs() != ring && dy.abs() != ring {
                        continue;
                    }
                    let cx = ix + dx;
                    let cy = iy + dy;
                    if cx < 0 || cy < 0 || cx >= self.nx as isize || cy >= self.ny as isize {
                        continue;
                    }
                    for &k in &self.cells[cy as usize * self.nx + cx as usize] {
                        best = best.min((self.points[k as usize] - p).norm());
                    }
                }
            }
        }
        best
    }
}
