use hatguess::decomposition::{is_outerplanar, is_petunia, layered_five_coloring, outerplanar_split, petunia_forest_partition};
use hatguess::generate::{random_layered, random_maximal_outerplanar, random_outerplanar, random_petunia, rng};
use hatguess::graph::{cross_neighbor_count, quotient};
use hatguess::{Budget, Graph};

use super::{lib, Check};

/// Acyclicity by union-find, independent of the library's forest test.
pub fn acyclic(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

/// Random petunias on 1 to 25 vertices: classes induce forests, the
/// quotient is a forest and any class sees at most 3 vertices of another.
pub fn petunia_partitions(seed: u64, count: usize) -> Check {
    let mut r = rng(seed);
    for i in 0..count {
        let n = 1 + i % 25;
        let g = lib(random_petunia(n, 0.85, &mut r), "petunia")?;
        let cert = is_petunia(&g).ok_or_else(|| format!("instance {i}: generated petunia not recognized"))?;
        let p = lib(petunia_forest_partition(&g, &cert), format!("instance {i}"))?;
        for c in p.classes() {
            let inside: Vec<(usize, usize)> = g.edges().filter(|&(a, b)| c.contains(&a) && c.contains(&b)).collect();
            ensure!(acyclic(n, inside.into_iter()), "instance {i}: class {c:?} has a cycle");
        }
        let q = lib(quotient(&g, &p), "quotient")?;
        ensure!(acyclic(q.vertex_count(), q.edges()), "instance {i}: quotient has a cycle");
        for (x, cx) in p.classes().iter().enumerate() {
            for (y, cy) in p.classes().iter().enumerate() {
                if x != y {
                    let d = lib(cross_neighbor_count(&g, cx, cy), "cross count")?;
                    ensure!(d <= 3, "instance {i}: class {x} sees {d} vertices of class {y}");
                }
            }
        }
    }
    Ok(())
}

fn b_degree(g: &Graph, b: &[usize], v: usize) -> usize {
    g.neighbors(v).iter().filter(|x| b.contains(x)).count()
}

/// Random outerplanar graphs on 3 to 25 vertices, mostly maximal, split over
/// every oriented root edge.
pub fn outerplanar_splits(seed: u64, count: usize) -> Check {
    let mut r = rng(seed);
    let mut max_b = 0;
    for i in 0..count {
        let n = 3 + i % 23;
        let og = if i % 4 == 3 {
            lib(random_outerplanar(n, 0.3, &mut r), "outerplanar")?
        } else {
            lib(random_maximal_outerplanar(n, &mut r), "outerplanar")?
        };
        let g = &og.graph;
        for (x, y) in g.edges().collect::<Vec<_>>() {
            for (u, v) in [(x, y), (y, x)] {
                let s = lib(outerplanar_split(&og, (u, v)), format!("instance {i}, root ({u}, {v})"))?;
                let at = format!("instance {i}, root ({u}, {v})");
                ensure!(s.a.len() + s.b.len() == n, "{at}: parts do not cover");
                ensure!(s.a.contains(&u) && s.a.contains(&v), "{at}: root edge not in A");
                ensure!(is_petunia(&g.induced(&s.a).0).is_some(), "{at}: G[A] is not a petunia");
                ensure!(s.b.iter().all(|&p| b_degree(g, &s.b, p) == 0), "{at}: B is not independent");
                ensure!(b_degree(g, &s.b, u) == 0, "{at}: root tail has a B-neighbor");
                ensure!(b_degree(g, &s.b, v) <= 2, "{at}: root head has more than 2 B-neighbors");
                ensure!(s.a.iter().all(|&z| b_degree(g, &s.b, z) <= 3), "{at}: a vertex of A has more than 3 B-neighbors");
                max_b = max_b.max(s.b.len());
            }
        }
    }
    ensure!(count < 20 || max_b >= 3, "splits never used B in earnest");
    Ok(())
}

/// Random layered instances with level counts in `levels`: every class
/// bound is recounted directly and small classes are tested for
/// outerplanarity by brute force.
pub fn layered_colorings(seed: u64, count: usize, levels: std::ops::RangeInclusive<usize>) -> Check {
    let mut r = rng(seed);
    let spread = levels.end() - levels.start() + 1;
    let mut seen_pink = false;
    for t in 0..count {
        let depth = levels.start() + t % spread;
        let sizes: Vec<usize> = (0..depth).map(|i| 3 + (t * 7 + i * 5) % 9).collect();
        let lp = lib(random_layered(&sizes, 0.4, 0.85, &mut r), "layered")?;
        let (c, report) = lib(layered_five_coloring(&lp), format!("instance {t}"))?;
        let g = lp.graph();
        let classes = c.classes();
        ensure!(
            classes.iter().map(Vec::len).sum::<usize>() == g.vertex_count(),
            "instance {t}: classes do not partition"
        );
        for (i, class) in classes.iter().enumerate() {
            for &v in class {
                let later = g.neighbors(v).iter().filter(|&&u| classes[i + 1..].iter().any(|k| k.contains(&u))).count();
                let bound = if i == 0 { 5 } else { 6 };
                ensure!(later <= bound, "instance {t}: vertex {v} in class {i} has {later} later neighbors");
            }
        }
        for class in &classes[..3] {
            let (h, _) = g.induced(class);
            if h.vertex_count() <= 14 {
                ensure!(lib(is_outerplanar(&h, Budget::default()), "outerplanarity")?, "instance {t}: class {class:?} is not outerplanar");
            }
        }
        ensure!(report.pink_degree <= 6, "instance {t}: pink degree {}", report.pink_degree);
        seen_pink |= !classes[4].is_empty();
    }
    ensure!(count < 50 || seen_pink, "no instance produced a pink vertex");
    Ok(())
}
