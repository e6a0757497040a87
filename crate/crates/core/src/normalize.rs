//! Turning a tree-child network that displays two trees into a normal one.
//!
//! Each step takes a shortest shortcut `(u, v)` and either removes it or
//! rewires the network so that the number of shortcuts drops, or stays the
//! same while the shortest shortcut gets shorter. The two embeddings are
//! carried along as sets of reticulation edges and rewritten with the graph.

use crate::classify::{is_tree_child, require_binary_tree_child, shortcuts, tree_path_min, Reachability};
use crate::display::{displays, embedding_to_tree, find_embedding, Embedding};
use crate::error::{Error, Result};
use crate::network::{NetworkEditor, PhyloNetwork};
use crate::sequence::{min_sequence, sequence_to_network, SearchMode, SearchOutcome};
use crate::tree::PhyloTree;
use crate::VertexId;
use std::collections::{BTreeMap, BTreeSet};

/// Number of shortcuts and the length of a shortest one, compared in that
/// order. `min_shortcut_length` is `usize::MAX` when there are no shortcuts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShortcutMeasure {
    pub shortcut_count: usize,
    pub min_shortcut_length: usize,
}

impl ShortcutMeasure {
    pub fn of(net: &PhyloNetwork) -> Self {
        let s = shortcuts(net);
        ShortcutMeasure {
            shortcut_count: s.len(),
            min_shortcut_length: s.iter().map(|s| s.length).min().unwrap_or(usize::MAX),
        }
    }
}

type EdgeSet = BTreeSet<(VertexId, VertexId)>;

/// Editor that keeps two sets of reticulation edges in step with the edits.
struct Rewriter {
    ed: NetworkEditor,
    sets: [EdgeSet; 2],
}

impl Rewriter {
    fn new(net: &PhyloNetwork, e: [&Embedding; 2]) -> Self {
        let sets = e.map(|e| e.choices().iter().map(|(&r, &p)| (p, r)).collect());
        Rewriter { ed: NetworkEditor::from_network(net), sets }
    }

    fn remove_edge(&mut self, a: VertexId, b: VertexId) -> Result<()> {
        if !self.ed.remove_edge(a, b) {
            return Err(Error::Internal(format!("edge ({a}, {b}) is missing")));
        }
        for s in &mut self.sets {
            s.remove(&(a, b));
        }
        Ok(())
    }

    fn subdivide(&mut self, a: VertexId, b: VertexId) -> Result<VertexId> {
        let w = self.ed.subdivide(a, b)?;
        for s in &mut self.sets {
            if s.remove(&(a, b)) {
                s.insert((w, b));
            }
        }
        Ok(w)
    }

    fn suppress(&mut self, x: VertexId) -> Result<()> {
        let parent = self.ed.parents(x).first().copied();
        let child = self.ed.children(x).first().copied();
        self.ed.suppress(x)?;
        for s in &mut self.sets {
            if let Some(p) = parent {
                s.remove(&(p, x));
            }
            if let Some(c) = child {
                if s.remove(&(x, c)) {
                    if let Some(p) = parent {
                        s.insert((p, c));
                    }
                }
            }
        }
        Ok(())
    }

    fn remove_vertex(&mut self, x: VertexId) {
        for s in &mut self.sets {
            s.retain(|&(a, b)| a != x && b != x);
        }
        self.ed.remove_vertex(x);
    }

    fn add_edge(&mut self, a: VertexId, b: VertexId) {
        self.ed.add_edge(a, b);
    }

    /// Deletes reticulation edges that neither embedding uses, suppressing
    /// the vertices left with degree two.
    fn prune(&mut self) -> Result<()> {
        loop {
            let unused = self.ed.vertices().find_map(|r| {
                let ps = self.ed.parents(r);
                if ps.len() < 2 {
                    return None;
                }
                ps.iter().copied().find(|&p| self.sets.iter().all(|s| !s.contains(&(p, r)))).map(|p| (p, r))
            });
            let Some((p, r)) = unused else { return Ok(()) };
            self.remove_edge(p, r)?;
            self.suppress(p)?;
            if self.ed.parents(r).len() == 1 {
                self.suppress(r)?;
            }
        }
    }

    fn finish(&self) -> Result<(PhyloNetwork, [Embedding; 2])> {
        let (net, map) = self.ed.finish_with_map()?;
        let mut out = [BTreeMap::new(), BTreeMap::new()];
        for (k, s) in self.sets.iter().enumerate() {
            for &(a, b) in s {
                let (Some(na), Some(nb)) = (map[a], map[b]) else {
                    return Err(Error::Internal(format!("tracked edge ({a}, {b}) touches a removed vertex")));
                };
                if !net.is_reticulation(nb) {
                    return Err(Error::Internal(format!("tracked edge ({a}, {b}) is not a reticulation edge")));
                }
                if out[k].insert(nb, na).is_some() {
                    return Err(Error::Internal(format!("embedding {} uses two edges into vertex {b}", k + 1)));
                }
            }
        }
        let [a, b] = out;
        Ok((net, [Embedding::new(a), Embedding::new(b)]))
    }
}

fn check_exclusive(net: &PhyloNetwork, e1: &Embedding, e2: &Embedding) -> Result<()> {
    for r in net.reticulations() {
        if e1.parent_of(r) == e2.parent_of(r) {
            return Err(Error::Precondition(format!("both embeddings use the same edge into reticulation {r}")));
        }
    }
    Ok(())
}

/// Applies one shortcut-removing or shortcut-shortening transformation.
///
/// `net` must be binary and tree-child with at least one shortcut, and every
/// reticulation edge must be used by exactly one of `e1`, `e2`. The returned
/// embeddings display the same two trees in the new network.
///
/// The standard rewrite around a shortest shortcut is tried first. It can
/// create a shortcut elsewhere when it moves a reticulation edge below `u'`,
/// so every result is verified and, if it fails, further candidates (other
/// shortcuts, other paths, other edges to move) are tried in a fixed order.
pub fn eliminate_shortcut_step(
    net: &PhyloNetwork,
    e1: &Embedding,
    e2: &Embedding,
) -> Result<(PhyloNetwork, Embedding, Embedding)> {
    require_binary_tree_child(net)?;
    e1.validate(net)?;
    e2.validate(net)?;
    check_exclusive(net, e1, e2)?;
    let before = ShortcutMeasure::of(net);
    if before.shortcut_count == 0 {
        return Err(Error::Precondition("network has no shortcut".into()));
    }
    let trees = [embedding_to_tree(net, e1)?, embedding_to_tree(net, e2)?];
    let tp = tree_path_min(net);
    let reach = Reachability::new(net);

    let mut candidates = shortcuts(net);
    candidates.sort_by(|a, b| {
        let key = |s: &crate::classify::Shortcut| (s.length, tp[s.edge.1].clone(), tp[s.edge.0].clone(), s.edge);
        key(a).cmp(&key(b))
    });
    let mut last_error = None;
    for sc in &candidates {
        let (u, v) = sc.edge;
        let u_prime = *net.parents(v).iter().find(|&&p| p != u).expect("binary reticulation");
        for path in paths_between(net, &reach, &tp, u, u_prime, MAX_PATHS) {
            for variant in 0..MAX_VARIANTS {
                let Some(attempt) = rewrite(net, [e1, e2], u, v, &path, variant) else { break };
                match attempt.and_then(|r| verify(r, &trees, before)) {
                    Ok(done) => return Ok(done),
                    Err(e) => last_error = Some(e),
                }
            }
        }
    }
    Err(Error::Internal(format!(
        "no rewrite lowers the shortcut measure {before:?}: {}",
        last_error.map_or_else(|| "no candidates".to_string(), |e| e.to_string())
    )))
}

const MAX_PATHS: usize = 16;
const MAX_VARIANTS: usize = 8;

fn verify(
    (out, [f1, f2]): (PhyloNetwork, [Embedding; 2]),
    trees: &[PhyloTree; 2],
    before: ShortcutMeasure,
) -> Result<(PhyloNetwork, Embedding, Embedding)> {
    if !out.is_binary() || !is_tree_child(&out) {
        return Err(Error::Internal("rewrite broke the tree-child property".into()));
    }
    f1.validate(&out)?;
    f2.validate(&out)?;
    check_exclusive(&out, &f1, &f2).map_err(|e| Error::Internal(e.to_string()))?;
    for (k, (f, t)) in [(&f1, &trees[0]), (&f2, &trees[1])].into_iter().enumerate() {
        if !embedding_to_tree(&out, f)?.isomorphic(t) {
            return Err(Error::Internal(format!("embedding {} no longer traces its tree", k + 1)));
        }
    }
    let after = ShortcutMeasure::of(&out);
    if after >= before {
        return Err(Error::Internal(format!("shortcut measure did not decrease: {before:?} -> {after:?}")));
    }
    Ok((out, f1, f2))
}

/// Rewrites `net` around the shortcut `(u, v)` using `path` from `u` to the
/// other parent of `v`. Variant 0 is the standard rewrite. When the
/// embedding through `(u, v)` also uses reticulation edges leaving the path
/// below `u_i`, the next variants move an earlier such edge, and the last one
/// applies the `u_i` rewrite regardless. Returns `None` when the variant does
/// not exist.
fn rewrite(
    net: &PhyloNetwork,
    e: [&Embedding; 2],
    u: VertexId,
    v: VertexId,
    path: &[VertexId],
    variant: usize,
) -> Option<Result<(PhyloNetwork, [Embedding; 2])>> {
    let u_prime = path[path.len() - 1];
    // `side` is the embedding using (u, v).
    let side = if e[0].parent_of(v) == Some(u) { 0 } else { 1 };
    let other = 1 - side;
    let t = net.children(v)[0];
    let mut rw = Rewriter::new(net, e);

    let run = |rw: &mut Rewriter| -> Result<Option<()>> {
        if net.children(u).contains(&u_prime) {
            if variant > 0 {
                return Ok(None);
            }
            rw.remove_edge(u, v)?;
            rw.suppress(u)?;
            rw.suppress(v)?;
            return Ok(Some(()));
        }
        let m = path.len();
        let off_path = |k: usize| -> Option<VertexId> {
            net.children(path[k]).iter().copied().find(|&c| c != path[k + 1] && !(k == 0 && c == v))
        };
        // 0-based index of the last vertex on the path that is a
        // reticulation or has a non-reticulation child off the path.
        let i = (1..m - 1)
            .rev()
            .find(|&k| net.is_reticulation(path[k]) || off_path(k).is_some_and(|c| !net.is_reticulation(c)))
            .unwrap_or(0);
        let used: Vec<(VertexId, VertexId)> = (i + 1..m - 1)
            .rev()
            .filter_map(|k| {
                let w = off_path(k)?;
                rw.sets[side].contains(&(path[k], w)).then_some((path[k], w))
            })
            .collect();
        if let Some(&(uj, wj)) = used.get(variant) {
            let q = *net.children(u_prime).iter().find(|&&c| c != v).expect("binary tree vertex");
            rw.remove_edge(uj, wj)?;
            rw.suppress(uj)?;
            let uj2 = rw.subdivide(u_prime, q)?;
            rw.add_edge(uj2, wj);
            rw.sets[side].insert((uj2, wj));
            return Ok(Some(()));
        }
        if variant > used.len() {
            return Ok(None);
        }
        if i == 0 {
            let (u2, w2) = (path[1], off_path(1).expect("off-path child"));
            rw.remove_edge(u2, w2)?;
            rw.suppress(u2)?;
            let u2p = match net.parents(u).first() {
                Some(&s) => rw.subdivide(s, u)?,
                None => {
                    let r = rw.ed.add_vertex(None);
                    rw.add_edge(r, u);
                    r
                }
            };
            rw.add_edge(u2p, w2);
            rw.sets[other].insert((u2p, w2));
        } else if !net.is_reticulation(path[i]) {
            let (ui, next, um) = (path[i], path[i + 1], path[m - 1]);
            let ci = off_path(i).expect("off-path child");
            rw.remove_edge(um, v)?;
            rw.remove_edge(ui, next)?;
            rw.remove_edge(v, t)?;
            let p = rw.subdivide(ui, ci)?;
            let early_p2 = if i < m - 2 { Some(rw.subdivide(path[m - 2], um)?) } else { None };
            rw.add_edge(ui, v);
            rw.add_edge(p, um);
            rw.add_edge(v, next);
            let p2 = match early_p2 {
                Some(p2) => p2,
                None => rw.subdivide(v, um)?,
            };
            rw.add_edge(p2, t);
            rw.sets[side].insert((p, um));
            rw.sets[other].insert((ui, v));
            rw.sets[other].insert((p2, um));
        } else {
            let (ui, next, um) = (path[i], path[i + 1], path[m - 1]);
            let ps = net.parents(ui);
            let (g, g2) = if rw.sets[side].contains(&(ps[0], ui)) { (ps[0], ps[1]) } else { (ps[1], ps[0]) };
            rw.remove_edge(um, v)?;
            rw.remove_edge(v, t)?;
            rw.remove_vertex(ui);
            rw.add_edge(g2, v);
            rw.add_edge(g, um);
            rw.add_edge(v, next);
            let from = *rw.ed.parents(um).iter().find(|&&x| x != g).expect("second parent");
            let p2 = rw.subdivide(from, um)?;
            rw.add_edge(p2, t);
            rw.sets[side].insert((g, um));
            rw.sets[other].insert((g2, v));
            rw.sets[other].insert((p2, um));
        }
        Ok(Some(()))
    };
    match run(&mut rw) {
        Ok(None) => None,
        Err(e) => Some(Err(e)),
        Ok(Some(())) => Some(rw.prune().and_then(|_| rw.finish())),
    }
}

/// Up to `limit` directed paths from `from` to `to`. The first one takes at
/// each vertex the first child (by smallest tree-path leaf, then id) that
/// still reaches `to`; the rest follow in depth-first order.
fn paths_between(
    net: &PhyloNetwork,
    reach: &Reachability,
    tp: &[Option<crate::TaxonLabel>],
    from: VertexId,
    to: VertexId,
    limit: usize,
) -> Vec<Vec<VertexId>> {
    fn go(
        net: &PhyloNetwork,
        reach: &Reachability,
        tp: &[Option<crate::TaxonLabel>],
        to: VertexId,
        path: &mut Vec<VertexId>,
        out: &mut Vec<Vec<VertexId>>,
        limit: usize,
    ) {
        let at = *path.last().expect("non-empty");
        if at == to {
            out.push(path.clone());
            return;
        }
        let mut kids = net.children(at).to_vec();
        kids.sort_by(|&a, &b| tp[a].cmp(&tp[b]).then(a.cmp(&b)));
        for c in kids {
            if out.len() >= limit {
                return;
            }
            if reach.reaches(c, to) {
                path.push(c);
                go(net, reach, tp, to, path, out, limit);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(net, reach, tp, to, &mut vec![from], &mut out, limit);
    out
}

/// A deterministic binary refinement.
fn binary(t: &PhyloTree) -> PhyloTree {
    if t.is_binary() {
        t.clone()
    } else {
        t.binary_refinements().next().expect("every tree has a binary refinement")
    }
}

fn initial_with_embeddings(t1: &PhyloTree, t2: &PhyloTree) -> Result<(PhyloNetwork, Embedding, Embedding)> {
    if t1.leaf_set() != t2.leaf_set() {
        return Err(Error::LeafSetMismatch);
    }
    let (b1, b2) = (binary(t1), binary(t2));
    let SearchOutcome::Found { sequence, .. } = min_sequence(&[b1.clone(), b2.clone()], SearchMode::TreeChild, None)?
    else {
        return Err(Error::Internal("two trees always have a tree-child sequence".into()));
    };
    let net = sequence_to_network(&[b1.clone(), b2.clone()], &sequence)?;
    require_binary_tree_child(&net).map_err(|e| Error::Internal(e.to_string()))?;
    let find = |t: &PhyloTree| {
        find_embedding(&net, t)?.ok_or_else(|| Error::Internal("initial network does not display an input tree".into()))
    };
    let (e1, e2) = (find(&b1)?, find(&b2)?);
    let mut rw = Rewriter::new(&net, [&e1, &e2]);
    rw.prune()?;
    let (net, [e1, e2]) = rw.finish()?;
    Ok((net, e1, e2))
}

/// A binary tree-child network displaying both trees in which every
/// reticulation edge is used by exactly one of the two embeddings.
/// Non-binary trees are first replaced by a fixed binary refinement.
pub fn initial_tree_child_pair(t1: &PhyloTree, t2: &PhyloTree) -> Result<PhyloNetwork> {
    initial_with_embeddings(t1, t2).map(|(n, _, _)| n)
}

/// A binary normal network built from a shortest normal cherry-picking
/// sequence of the two (binary) trees, with reticulation edges used by
/// neither tree removed. Two embeddings use at most two edges into each
/// reticulation, so the result is binary; deleting edges creates no
/// shortcut and keeps every vertex's tree child.
fn normal_from_sequence(t1: &PhyloTree, t2: &PhyloTree) -> Result<PhyloNetwork> {
    let (b1, b2) = (binary(t1), binary(t2));
    let pair = [b1.clone(), b2.clone()];
    let SearchOutcome::Found { sequence, .. } = min_sequence(&pair, SearchMode::Normal, None)? else {
        return Err(Error::Internal("two trees have no normal cherry-picking sequence".into()));
    };
    let net = sequence_to_network(&pair, &sequence)?;
    let find = |t: &PhyloTree| {
        find_embedding(&net, t)?.ok_or_else(|| Error::Internal("sequence network does not display an input tree".into()))
    };
    let (e1, e2) = (find(&b1)?, find(&b2)?);
    let mut rw = Rewriter::new(&net, [&e1, &e2]);
    rw.prune()?;
    let (net, _) = rw.finish()?;
    if !net.is_binary() {
        return Err(Error::Internal("pruned sequence network is not binary".into()));
    }
    Ok(net)
}

/// A binary normal network displaying both trees. The number of
/// reticulations is not minimised.
///
/// Shortcuts of a tree-child network are removed one rewrite at a time. If
/// at some point no rewrite verifiably lowers the shortcut measure, the
/// network is instead built from a shortest normal cherry-picking sequence.
pub fn normalize_pair(t1: &PhyloTree, t2: &PhyloTree) -> Result<PhyloNetwork> {
    let (mut net, mut e1, mut e2) = initial_with_embeddings(t1, t2)?;
    let first = ShortcutMeasure::of(&net);
    // Each step lowers (count, length); count and length are bounded by the
    // initial count and the vertex count, which gives a safe step limit.
    let limit = (first.shortcut_count + 1) * (net.vertex_count() + 1) * 4;
    let mut steps = 0;
    while ShortcutMeasure::of(&net).shortcut_count > 0 {
        steps += 1;
        if steps > limit {
            return Err(Error::Internal("shortcut elimination did not terminate".into()));
        }
        match eliminate_shortcut_step(&net, &e1, &e2) {
            Ok(next) => (net, e1, e2) = next,
            Err(Error::Internal(_)) => {
                net = normal_from_sequence(t1, t2)?;
                break;
            }
            Err(e) => return Err(e),
        }
    }
    if !crate::classify::is_normal(&net) || !displays(&net, t1)? || !displays(&net, t2)? {
        return Err(Error::Internal("normalised network fails its final check".into()));
    }
    Ok(net)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify;
    use crate::label::taxon;
    use crate::newick::{parse_network, parse_tree};
    use crate::tree::caterpillar;

    fn cat(order: &[&str]) -> PhyloTree {
        caterpillar(&order.iter().map(|s| taxon(s)).collect::<Vec<_>>()).unwrap()
    }

    fn caterpillar_net() -> PhyloNetwork {
        parse_network("((((l2,#H1),l3),l4),(l1)#H1);").unwrap()
    }

    fn embeddings_for(net: &PhyloNetwork, a: &PhyloTree, b: &PhyloTree) -> (Embedding, Embedding) {
        (find_embedding(net, a).unwrap().unwrap(), find_embedding(net, b).unwrap().unwrap())
    }

    #[test]
    fn one_step_on_caterpillar_network() {
        let net = caterpillar_net();
        let (a, b) = (cat(&["l1", "l2", "l3", "l4"]), cat(&["l2", "l3", "l4", "l1"]));
        let (e1, e2) = embeddings_for(&net, &a, &b);
        let before = ShortcutMeasure::of(&net);
        assert_eq!(before, ShortcutMeasure { shortcut_count: 1, min_shortcut_length: 4 });
        let (out, f1, f2) = eliminate_shortcut_step(&net, &e1, &e2).unwrap();
        assert!(ShortcutMeasure::of(&out) < before);
        assert!(embedding_to_tree(&out, &f1).unwrap().isomorphic(&a));
        assert!(embedding_to_tree(&out, &f2).unwrap().isomorphic(&b));
    }

    #[test]
    fn length_two_shortcut_is_removed() {
        let net = parse_network("((a,(b)#H1),#H1);").unwrap();
        let t = parse_tree("(a,b);").unwrap();
        let r = net.reticulations().next().unwrap();
        let ps = net.parents(r);
        let e1 = Embedding::new([(r, ps[0])].into());
        let e2 = Embedding::new([(r, ps[1])].into());
        let (out, _, _) = eliminate_shortcut_step(&net, &e1, &e2).unwrap();
        assert_eq!(out.reticulation_count(), 0);
        assert!(out.to_tree().unwrap().isomorphic(&t));
    }

    #[test]
    fn no_shortcut_is_a_precondition_error() {
        let net = parse_network("((a,(b)#H1),(#H1,c));").unwrap();
        let r = net.reticulations().next().unwrap();
        let ps = net.parents(r);
        let e1 = Embedding::new([(r, ps[0])].into());
        let e2 = Embedding::new([(r, ps[1])].into());
        assert!(matches!(eliminate_shortcut_step(&net, &e1, &e2), Err(Error::Precondition(_))));
    }

    #[test]
    fn repeated_steps_terminate() {
        let net = caterpillar_net();
        let (a, b) = (cat(&["l1", "l2", "l3", "l4"]), cat(&["l2", "l3", "l4", "l1"]));
        let (mut e1, mut e2) = embeddings_for(&net, &a, &b);
        let mut net = net;
        let mut measures = vec![ShortcutMeasure::of(&net)];
        while measures.last().unwrap().shortcut_count > 0 {
            (net, e1, e2) = eliminate_shortcut_step(&net, &e1, &e2).unwrap();
            measures.push(ShortcutMeasure::of(&net));
            assert!(measures.len() < 20);
        }
        assert!(measures.windows(2).all(|w| w[1] < w[0]));
        assert!(classify(&net).is_normal);
    }

    #[test]
    fn identical_trees_give_the_tree() {
        let t = parse_tree("(((a,b),c),(d,e));").unwrap();
        let n = normalize_pair(&t, &t).unwrap();
        assert_eq!(n.reticulation_count(), 0);
        assert!(n.to_tree().unwrap().isomorphic(&t));
        assert_eq!(initial_tree_child_pair(&t, &t).unwrap().reticulation_count(), 0);
    }

    #[test]
    fn caterpillar_pair() {
        let (a, b) = (cat(&["l1", "l2", "l3", "l4"]), cat(&["l2", "l3", "l4", "l1"]));
        let init = initial_tree_child_pair(&a, &b).unwrap();
        assert_eq!(init.reticulation_count(), 1);
        assert!(classify(&init).is_tree_child);
        let n = normalize_pair(&a, &b).unwrap();
        let c = classify(&n);
        assert!(c.is_normal && c.is_binary);
        assert!(c.reticulation_count >= 2);
        assert!(displays(&n, &a).unwrap() && displays(&n, &b).unwrap());
    }

    #[test]
    fn non_binary_input() {
        let a = parse_tree("((a,b,c),(d,e));").unwrap();
        let b = parse_tree("((a,d),(b,(c,e)));").unwrap();
        let n = normalize_pair(&a, &b).unwrap();
        assert!(classify(&n).is_normal);
        assert!(displays(&n, &a).unwrap() && displays(&n, &b).unwrap());
    }

    #[test]
    fn pair_where_moving_an_edge_creates_a_shortcut() {
        let a = parse_tree("((t1,((t2,(t3,t6)),t5)),t4);").unwrap();
        let b = parse_tree("(((t1,t6),t2),(t3,(t4,t5)));").unwrap();
        let n = normalize_pair(&a, &b).unwrap();
        let c = classify(&n);
        assert!(c.is_normal && c.is_binary);
        assert!(displays(&n, &a).unwrap() && displays(&n, &b).unwrap());
    }

    #[test]
    fn sequence_route_is_binary_normal() {
        let (a, b) = (cat(&["l1", "l2", "l3", "l4", "l5"]), cat(&["l3", "l5", "l1", "l4", "l2"]));
        let n = normal_from_sequence(&a, &b).unwrap();
        let c = classify(&n);
        assert!(c.is_normal && c.is_binary);
        assert!(displays(&n, &a).unwrap() && displays(&n, &b).unwrap());
    }

    #[test]
    fn leaf_set_mismatch() {
        let a = parse_tree("((a,b),c);").unwrap();
        let b = parse_tree("((a,b),d);").unwrap();
        assert_eq!(normalize_pair(&a, &b).unwrap_err(), Error::LeafSetMismatch);
    }
}
