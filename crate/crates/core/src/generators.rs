//! Constructors for walls, long claws, thetas, pyramids, caterpillars and
//! creatures. Each returns the graph together with its structural witness.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::graph::{Graph, Path, Vertex, VertexSet};

/// The `n x m` wall. Vertices `(i, j)` are numbered row-major.
pub fn wall(n: usize, m: usize) -> Result<Graph> {
    Ok(wall_with_coords(n, m)?.0)
}

/// Wall plus the `(i, j)` coordinate of every vertex id.
pub fn wall_with_coords(n: usize, m: usize) -> Result<(Graph, Vec<(usize, usize)>)> {
    if n < 2 || m < 2 {
        return invalid(format!("wall needs at least 2 rows and 2 columns, got {n}x{m}"));
    }
    let present = |i: usize, j: usize| -> bool {
        if j == 0 || j > 2 * m || i == 0 || i > n {
            return false;
        }
        if i == 1 {
            j % 2 == 1
        } else if i < n {
            true
        } else if n % 2 == 0 {
            j % 2 == 1
        } else {
            j % 2 == 0
        }
    };
    let mut coords = Vec::new();
    let mut id = vec![vec![usize::MAX; 2 * m + 2]; n + 2];
    for i in 1..=n {
        for j in 1..=2 * m {
            if present(i, j) {
                id[i][j] = coords.len();
                coords.push((i, j));
            }
        }
    }
    let mut edges = Vec::new();
    for &(i, j) in &coords {
        // Horizontal: next present vertex in the same row. In the first and
        // last rows vertices sit two apart.
        let step = if i == 1 || i == n { 2 } else { 1 };
        if present(i, j + step) {
            edges.push((id[i][j], id[i][j + step]));
        }
        if i < n && i % 2 == j % 2 && present(i + 1, j) {
            edges.push((id[i][j], id[i + 1][j]));
        }
    }
    Ok((Graph::new(coords.len(), edges)?, coords))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClawWitness {
    pub root: Vertex,
    /// Each leg starts at the root.
    pub legs: Vec<Path>,
}

/// `S_{t1,t2,t3}` with root 0 and legs numbered consecutively.
pub fn subdivided_claw(t1: usize, t2: usize, t3: usize) -> Result<(Graph, ClawWitness)> {
    if t2 == 0 || t3 == 0 {
        return invalid("the second and third legs of a long claw need length at least 1");
    }
    Ok(spider(&[t1, t2, t3]))
}

/// A root with one path of each given length hanging off it.
pub(crate) fn spider(lengths: &[usize]) -> (Graph, ClawWitness) {
    let mut edges = Vec::new();
    let mut legs = Vec::new();
    let mut next = 1;
    for &len in lengths {
        let mut leg = vec![0];
        for _ in 0..len {
            edges.push((*leg.last().unwrap(), next));
            leg.push(next);
            next += 1;
        }
        legs.push(Path::new(leg));
    }
    (Graph::from_edges_unchecked(next, edges), ClawWitness { root: 0, legs })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaWitness {
    pub a: Vertex,
    pub b: Vertex,
    /// Paths from `a` to `b`.
    pub paths: Vec<Path>,
}

/// Ends 0 and 1, then the interiors of the three paths in order.
pub fn theta(l1: usize, l2: usize, l3: usize) -> Result<(Graph, ThetaWitness)> {
    if [l1, l2, l3].iter().any(|&l| l < 2) {
        return invalid("theta paths need length at least 2");
    }
    let mut edges = Vec::new();
    let mut paths = Vec::new();
    let mut next = 2;
    for len in [l1, l2, l3] {
        let mut p = vec![0];
        for _ in 1..len {
            edges.push((*p.last().unwrap(), next));
            p.push(next);
            next += 1;
        }
        edges.push((*p.last().unwrap(), 1));
        p.push(1);
        paths.push(Path::new(p));
    }
    Ok((Graph::new(next, edges)?, ThetaWitness { a: 0, b: 1, paths }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PyramidWitness {
    pub apex: Vertex,
    pub triangle: [Vertex; 3],
    /// Path `i` runs from the apex to `triangle[i]`.
    pub paths: Vec<Path>,
}

/// Apex 0, triangle 1, 2, 3, then path interiors in order.
pub fn pyramid(l1: usize, l2: usize, l3: usize) -> Result<(Graph, PyramidWitness)> {
    let ls = [l1, l2, l3];
    if ls.contains(&0) {
        return invalid("pyramid paths need length at least 1");
    }
    if ls.iter().filter(|&&l| l >= 2).count() < 2 {
        return invalid("at least two pyramid paths need length at least 2");
    }
    let mut edges = vec![(1, 2), (1, 3), (2, 3)];
    let mut paths = Vec::new();
    let mut next = 4;
    for (i, &len) in ls.iter().enumerate() {
        let mut p = vec![0];
        for _ in 1..len {
            edges.push((*p.last().unwrap(), next));
            p.push(next);
            next += 1;
        }
        edges.push((*p.last().unwrap(), i + 1));
        p.push(i + 1);
        paths.push(Path::new(p));
    }
    Ok((
        Graph::new(next, edges)?,
        PyramidWitness { apex: 0, triangle: [1, 2, 3], paths },
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaterpillarSpec {
    /// Number of spine edges.
    pub spine_length: usize,
    /// Leg lengths hanging from each spine vertex (`spine_length + 1` entries).
    pub legs: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaterpillarWitness {
    pub spine: Path,
    /// Each leg starts at its spine vertex.
    pub legs: Vec<Path>,
}

/// Spine vertices are `0..=spine_length`; legs follow in spec order.
pub fn caterpillar(spec: &CaterpillarSpec) -> Result<(Graph, CaterpillarWitness)> {
    let k = spec.spine_length;
    if spec.legs.len() != k + 1 {
        return invalid(format!(
            "caterpillar with spine length {k} needs {} leg lists, got {}",
            k + 1,
            spec.legs.len()
        ));
    }
    let mut edges: Vec<(usize, usize)> = (1..=k).map(|v| (v - 1, v)).collect();
    let mut legs = Vec::new();
    let mut next = k + 1;
    for (s, lens) in spec.legs.iter().enumerate() {
        let spine_deg = usize::from(s > 0) + usize::from(s < k);
        if spine_deg + lens.len() > 3 {
            return invalid(format!("spine vertex {s} would have degree above 3"));
        }
        for &len in lens {
            if len == 0 {
                return invalid("legs need length at least 1");
            }
            let mut leg = vec![s];
            for _ in 0..len {
                edges.push((*leg.last().unwrap(), next));
                leg.push(next);
                next += 1;
            }
            legs.push(Path::new(leg));
        }
    }
    Ok((
        Graph::new(next, edges)?,
        CaterpillarWitness { spine: Path::new((0..=k).collect()), legs },
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CreatureWitness {
    pub body: VertexSet,
    /// Each path starts at its joint.
    pub paths: Vec<Path>,
}

impl CreatureWitness {
    pub fn joints(&self) -> Vec<Vertex> {
        self.paths.iter().map(|p| p.vertices()[0]).collect()
    }
}

/// A `(k, t)`-creature whose body is a path, with consecutive attachment
/// points `joint_spacing` apart along it. Spacing 0 gives a one-vertex body.
pub fn creature(k: usize, t: usize, joint_spacing: usize) -> Result<(Graph, CreatureWitness)> {
    if k == 0 {
        return invalid("a creature needs at least one path");
    }
    let body = Graph::path((k - 1) * joint_spacing + 1);
    let attach: Vec<usize> = (0..k).map(|i| i * joint_spacing).collect();
    creature_on(&body, &attach, t)
}

/// A creature on an arbitrary connected body; path `i` hangs from body
/// vertex `attach[i]`. Body vertices keep their ids.
pub fn creature_on(body: &Graph, attach: &[Vertex], t: usize) -> Result<(Graph, CreatureWitness)> {
    if attach.is_empty() {
        return invalid("a creature needs at least one path");
    }
    if !body.is_connected() || body.n() == 0 {
        return invalid("creature body must be connected and non-empty");
    }
    for &a in attach {
        body.check_vertex(a)?;
    }
    let mut edges = body.edges();
    let mut next = body.n();
    let mut paths = Vec::new();
    for &a in attach {
        let mut p = vec![next];
        edges.push((a, next));
        next += 1;
        for _ in 0..t {
            edges.push((*p.last().unwrap(), next));
            p.push(next);
            next += 1;
        }
        paths.push(Path::new(p));
    }
    Ok((
        Graph::new(next, edges)?,
        CreatureWitness { body: body.vertices(), paths },
    ))
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::graph::{neighborhood, subdivide_all};

    #[test]
    fn wall_counts() {
        let w22 = wall(2, 2).unwrap();
        assert_eq!(w22.n(), 4);
        assert_eq!(w22.m(), 4);
        assert!((0..4).all(|v| w22.degree(v) == 2));
        let w33 = wall(3, 3).unwrap();
        assert_eq!(w33.n(), 12);
        assert_eq!(w33.max_degree(), 3);
        assert!(w33.is_connected());
        let w55 = wall(5, 5).unwrap();
        assert_eq!(w55.n(), 40);
        assert_eq!(w55.max_degree(), 3);
        assert!(wall(1, 3).is_err());
        for v in 0..w33.n() {
            if w33.degree(v) == 3 {
                let ball = neighborhood(&w33, &VertexSet::singleton(v), 1).unwrap();
                assert_eq!(ball.len(), 4);
            }
        }
    }

    #[test]
    fn walls_are_triangle_free_and_bipartite_sized() {
        for (n, m) in [(2, 3), (3, 3), (4, 2), (4, 4)] {
            let w = wall(n, m).unwrap();
            assert_eq!(w.triangle_count(), 0);
            assert!(w.is_connected());
            // Cycle space dimension of a wall is (n-1)(m-1).
            assert_eq!(w.m() + 1 - w.n(), (n - 1) * (m - 1));
        }
    }

    #[test]
    fn claws() {
        let (g, wit) = subdivided_claw(1, 1, 1).unwrap();
        assert_eq!(g, Graph::complete_bipartite(1, 3));
        assert_eq!(wit.root, 0);
        let (g, _) = subdivided_claw(0, 2, 2).unwrap();
        assert_eq!(g.n(), 5);
        assert!(g.is_connected() && g.max_degree() == 2 && g.m() == 4);
        let (g, _) = subdivided_claw(2, 2, 2).unwrap();
        assert_eq!(g.n(), 7);
        assert_eq!(g.degree(0), 3);
        assert!(subdivided_claw(1, 0, 1).is_err());
    }

    #[test]
    fn thetas_and_pyramids() {
        let (g, _) = theta(2, 2, 2).unwrap();
        assert_eq!(g, Graph::complete_bipartite(2, 3));
        let (g, _) = theta(3, 3, 3).unwrap();
        assert_eq!(g.n(), 8);
        assert_eq!(g.m(), 9);
        assert!(theta(1, 2, 2).is_err());
        let (g, w) = pyramid(1, 2, 2).unwrap();
        assert_eq!(g.n(), 6);
        assert_eq!(g.triangle_count(), 1);
        assert!(w.paths.iter().all(|p| p.is_induced_in(&g)));
        assert!(pyramid(1, 1, 2).is_err());
        assert!(pyramid(0, 2, 2).is_err());
    }

    #[test]
    fn caterpillars() {
        let spec = CaterpillarSpec { spine_length: 0, legs: vec![vec![1, 1, 1]] };
        assert_eq!(caterpillar(&spec).unwrap().0, Graph::complete_bipartite(1, 3));
        let spec = CaterpillarSpec { spine_length: 2, legs: vec![vec![], vec![2], vec![]] };
        let (g, wit) = caterpillar(&spec).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(wit.spine.vertices(), &[0, 1, 2]);
        let spec = CaterpillarSpec { spine_length: 3, legs: vec![vec![], vec![2], vec![], vec![]] };
        assert_eq!(caterpillar(&spec).unwrap().0.n(), 6);
        let bad = CaterpillarSpec { spine_length: 2, legs: vec![vec![], vec![1, 1], vec![]] };
        assert!(caterpillar(&bad).is_err());
        let spec = CaterpillarSpec { spine_length: 3, legs: vec![vec![1, 2], vec![1], vec![3], vec![1, 1]] };
        let (g, _) = caterpillar(&spec).unwrap();
        assert!(g.is_connected() && g.m() + 1 == g.n() && g.max_degree() <= 3);
    }

    #[test]
    fn creatures() {
        let (g, wit) = creature(3, 0, 0).unwrap();
        assert_eq!(g, Graph::complete_bipartite(1, 3));
        assert_eq!(wit.joints(), vec![1, 2, 3]);
        for t in 0..3 {
            let (g, _) = creature(3, t, 0).unwrap();
            let (claw, _) = subdivided_claw(t + 1, t + 1, t + 1).unwrap();
            assert_eq!(g, claw);
        }
        let (g, wit) = creature(4, 2, 2).unwrap();
        assert_eq!(g.n(), 7 + 12);
        assert_eq!(wit.body.len(), 7);
    }

    #[test]
    fn subdivided_wall_is_larger() {
        let w = wall(3, 3).unwrap();
        let s = subdivide_all(&w, 2).unwrap();
        assert_eq!(s.n(), w.n() + w.m());
        let lengths: BTreeMap<_, _> = w.edges().into_iter().map(|e| (e, 1)).collect();
        assert_eq!(crate::graph::subdivide(&w, &lengths).unwrap(), w);
    }
}
