//! Structural properties checked exhaustively on one instance. Each check
//! returns a description of every violation found.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use orthoguard::solver::{semi_guard_covers, StepAction};
use orthoguard::tpig::RootedTree;
use orthoguard::{Axis, ChildOrder, Edge, PathHandle, RTree, SemiGuard, Vertex};

use super::Instance;

pub type Check = fn(&Instance) -> Vec<String>;

pub const CHECKS: [(&str, Check); 18] = [
    ("pathG", path_g),
    ("minle", min_le),
    ("minGG", min_gg),
    ("minGGcloser", min_gg_closer),
    ("leNCA", le_nca),
    ("minGammaNCA", min_gamma_nca),
    ("intersectNCA", intersect_nca),
    ("linear_order_intersecting_neighborhoods", linear_order_intersecting),
    ("inheriting_neighbor", inheriting_neighbor),
    ("ell_gamma_convex", ell_gamma_convex),
    ("indep", indep),
    ("alg_order", alg_order),
    ("cover_preserved", cover_preserved),
    ("guards_distinct", guards_distinct),
    ("ti_distinct", ti_distinct),
    ("Ii_indep", ii_indep),
    ("Ii_elements", ii_elements),
    ("I1Wk", i1_wk),
];

/// Checks that only need a few instances because they are exponential in
/// the quantifier depth.
pub fn is_heavy(name: &str) -> bool {
    matches!(name, "inheriting_neighbor" | "ell_gamma_convex" | "cover_preserved")
}

const AXES: [Axis; 2] = [Axis::Horizontal, Axis::Vertical];

fn vertices(inst: &Instance, axis: Axis) -> impl Iterator<Item = Vertex> {
    let n = inst.num(axis);
    (0..n).map(move |i| Vertex { axis, index: i })
}

pub fn path_g(inst: &Instance) -> Vec<String> {
    let o = &inst.run.order;
    let mut bad = Vec::new();
    for axis in AXES {
        let tree = o.tree(axis.opposite()).tree();
        for s in vertices(inst, axis) {
            let walk = o.enumerate_gamma(s);
            let got: BTreeSet<usize> = walk.iter().copied().collect();
            let want: BTreeSet<usize> = inst.gamma(s).into_iter().collect();
            let connected = walk
                .windows(2)
                .all(|w| tree.parent(w[0]) == Some(w[1]) || tree.parent(w[1]) == Some(w[0]));
            if got != want || !connected || got.len() != walk.len() {
                bad.push(format!("{}: Γ({s}) = {want:?}, path gives {walk:?}", inst.label));
            }
        }
    }
    bad
}

pub fn min_le(inst: &Instance) -> Vec<String> {
    let o = &inst.run.order;
    let mut bad = Vec::new();
    for axis in AXES {
        for a in vertices(inst, axis) {
            for b in vertices(inst, axis) {
                if inst.ancestor(axis, a.index, b.index)
                    && !inst.ancestor(axis.opposite(), o.min_gamma(a), o.min_gamma(b))
                {
                    bad.push(format!("{}: {a} ≤ {b} but minΓ not ordered", inst.label));
                }
            }
        }
    }
    bad
}

fn gamma_gamma(inst: &Instance, s: Vertex) -> Vec<usize> {
    let mut set = BTreeSet::new();
    for t in inst.gamma(s) {
        set.extend(inst.gamma(Vertex { axis: s.axis.opposite(), index: t }));
    }
    set.into_iter().collect()
}

pub fn min_gg(inst: &Instance) -> Vec<String> {
    let o = &inst.run.order;
    let mut bad = Vec::new();
    for axis in AXES {
        for s in vertices(inst, axis) {
            let brute = inst.brute_min(axis, &gamma_gamma(inst, s));
            let m = o.min_gamma(s);
            let fast = o.min_gamma(Vertex { axis: axis.opposite(), index: m });
            if brute != Some(fast) {
                bad.push(format!("{}: min ΓΓ({s}) = {brute:?}, minΓ(minΓ) = {fast}", inst.label));
            }
        }
    }
    bad
}

pub fn min_gg_closer(inst: &Instance) -> Vec<String> {
    let mut bad = Vec::new();
    for axis in AXES {
        for s in vertices(inst, axis) {
            if inst.is_root(s) {
                continue;
            }
            let closer = inst
                .brute_min(axis, &gamma_gamma(inst, s))
                .is_some_and(|m| m != s.index && inst.ancestor(axis, m, s.index));
            if !closer {
                bad.push(format!("{}: min ΓΓ({s}) is not a strict ancestor", inst.label));
            }
        }
    }
    bad
}

pub fn le_nca(inst: &Instance) -> Vec<String> {
    let o = &inst.run.order;
    let mut bad = Vec::new();
    for axis in AXES {
        let n = inst.num(axis);
        for a in 0..n {
            for b in 0..n {
                let brute = inst.ancestor(axis, a, b);
                if o.le(axis, a, b) != brute || (o.nca(axis, a, b) == a) != brute {
                    bad.push(format!("{}: le({a}, {b}) disagrees with ancestor walk", inst.label));
                }
            }
        }
    }
    bad
}

pub fn min_gamma_nca(inst: &Instance) -> Vec<String> {
    let o = &inst.run.order;
    let mut bad = Vec::new();
    for axis in AXES {
        for s in vertices(inst, axis) {
            let brute = inst.brute_min(axis.opposite(), &inst.gamma(s));
            if brute != Some(o.min_gamma(s)) {
                bad.push(format!("{}: minΓ({s}) = {brute:?}, NCA gives {}", inst.label, o.min_gamma(s)));
            }
        }
    }
    bad
}

fn path_set(tree: &RTree, p: PathHandle) -> BTreeSet<usize> {
    p.endpoints().map_or_else(BTreeSet::new, |(a, b)| tree.path(a, b).into_iter().collect())
}

/// All pairs of neighborhood paths in both trees.
pub fn intersect_nca(inst: &Instance) -> Vec<String> {
    let o = &inst.run.order;
    let mut bad = Vec::new();
    for axis in AXES {
        let tree = o.tree(axis.opposite()).tree();
        for s1 in vertices(inst, axis) {
            for s2 in vertices(inst, axis) {
                let (p, q) = (o.gamma_handle(s1), o.gamma_handle(s2));
                let got = path_set(tree, o.path_intersection(axis.opposite(), p, q));
                let want: BTreeSet<usize> = &path_set(tree, p) & &path_set(tree, q);
                if got != want {
                    bad.push(format!("{}: Γ({s1}) ∩ Γ({s2}) = {want:?}, got {got:?}", inst.label));
                }
            }
        }
    }
    bad
}

/// Path intersections on random trees against explicit path enumeration.
pub fn intersect_random(samples: usize, seed: u64) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    let mut done = 0;
    while done < samples {
        let n = rng.gen_range(1..=40);
        let parent = (0..n).map(|i| if i == 0 { None } else { Some(rng.gen_range(0..i)) }).collect();
        let tree = RTree::from_parents(parent).unwrap();
        let root = rng.gen_range(0..n);
        let order = if rng.gen_bool(0.5) { ChildOrder::Ascending } else { ChildOrder::Descending };
        let rooted = RootedTree::new(&tree, root, order);
        for _ in 0..50 {
            let mut pick = || PathHandle::new(rng.gen_range(0..n), rng.gen_range(0..n));
            let (p, q) = (pick(), pick());
            let got = path_set(&tree, rooted.path_intersection(p, q));
            let want: BTreeSet<usize> = &path_set(&tree, p) & &path_set(&tree, q);
            if got != want {
                bad.push(format!("tree {:?} root {root}: {p:?} ∩ {q:?}", tree.parents()));
            }
            done += 1;
        }
    }
    bad
}

pub fn linear_order_intersecting(inst: &Instance) -> Vec<String> {
    let o = &inst.run.order;
    let mut bad = Vec::new();
    for axis in AXES {
        for s in vertices(inst, axis) {
            for s2 in vertices(inst, axis) {
                let meet = inst.gamma(s).iter().any(|&t| inst.has(s2, t));
                if !o.lt_ell(s, s2) || !meet {
                    continue;
                }
                let (m, m2) = (o.min_gamma(s), o.min_gamma(s2));
                if !inst.has(s, m2) || !inst.ancestor(axis.opposite(), m, m2) {
                    bad.push(format!("{}: {s} <ℓ {s2}", inst.label));
                }
            }
        }
    }
    bad
}

/// `Γ` of `s`'s class, with `a` drawn from `axis` and `b` from the other:
/// the lemma statements are symmetric in the two classes.
fn nb(inst: &Instance, axis: Axis, a: usize, b: usize) -> bool {
    inst.has(Vertex { axis: axis.opposite(), index: b }, a)
}

pub fn inheriting_neighbor(inst: &Instance) -> Vec<String> {
    let o = &inst.run.order;
    let mut bad = Vec::new();
    for axis in AXES {
        let xs = o.ell_sorted(axis);
        let ys = o.ell_sorted(axis.opposite());
        for (i2, &x2) in xs.iter().enumerate() {
            for &x1 in &xs[..=i2] {
                for (j2, &y2) in ys.iter().enumerate() {
                    if !(nb(inst, axis, x1, y2) && nb(inst, axis, x2, y2)) {
                        continue;
                    }
                    for &y1 in &ys[..=j2] {
                        if nb(inst, axis, x2, y1) && !nb(inst, axis, x1, y1) {
                            bad.push(format!("{}: {axis:?} ({x1}, {x2}), ({y1}, {y2})", inst.label));
                        }
                    }
                }
            }
        }
    }
    bad
}

pub fn ell_gamma_convex(inst: &Instance) -> Vec<String> {
    let o = &inst.run.order;
    let mut bad = Vec::new();
    for axis in AXES {
        let xs = o.ell_sorted(axis);
        let ys = o.ell_sorted(axis.opposite());
        let n = |a: usize, b: usize| nb(inst, axis, a, b);
        for (i2, &x2) in xs.iter().enumerate() {
            for (j2, &y2) in ys.iter().enumerate() {
                if n(x2, y2) {
                    continue;
                }
                for &x1 in &xs[..=i2] {
                    for &x3 in &xs[i2..] {
                        for &y1 in &ys[..=j2] {
                            if !(n(x2, y1) && n(x3, y1)) {
                                continue;
                            }
                            for &y3 in &ys[j2..] {
                                if n(x1, y2) && n(x3, y2) && n(x1, y3) && n(x2, y3) {
                                    bad.push(format!(
                                        "{}: {axis:?} ({x1}, {x2}, {x3}), ({y1}, {y2}, {y3})",
                                        inst.label
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    bad
}

pub fn indep(inst: &Instance) -> Vec<String> {
    let o = &inst.run.order;
    let edges = o.edges();
    let mut bad = Vec::new();
    for &a in &edges {
        for &b in &edges {
            let seen = edges.iter().any(|&g| {
                let sees = |e: Edge| inst.edge(g.h, e.v) && inst.edge(e.h, g.v);
                sees(a) && sees(b)
            });
            if o.r_dependent(a, b) != seen || inst.brute_dependent((a.h, a.v), (b.h, b.v)) != seen {
                bad.push(format!("{}: {a}, {b} dependent={} jointly seen={seen}", inst.label, o.r_dependent(a, b)));
            }
        }
    }
    bad
}

pub fn alg_order(inst: &Instance) -> Vec<String> {
    let o = &inst.run.order;
    let mut bad = Vec::new();
    for step in &inst.run.trace.steps {
        let StepAction::Replace { removed, added } = step.action else { continue };
        let t = step.t_i.unwrap();
        let ok = added == SemiGuard::new(t, removed.v)
            && o.lt_ell(Vertex::h(removed.h), Vertex::h(t))
            && inst.has(Vertex::h(removed.h), step.s_i)
            && inst.has(Vertex::h(removed.h), o.min_gamma(Vertex::h(t)))
            && inst.has(Vertex::v(step.s_i), o.min_gamma(Vertex::v(removed.v)));
        if !ok {
            bad.push(format!("{}: step {} replaces {removed} with {added}", inst.label, step.i));
        }
    }
    bad
}

pub fn cover_preserved(inst: &Instance) -> Vec<String> {
    let o = &inst.run.order;
    let states = inst.run.trace.states();
    let mut bad = Vec::new();
    for (i, w) in states.iter().enumerate().skip(1) {
        for &s in &inst.run.trace.order[..i] {
            for t in inst.gamma(Vertex::v(s)) {
                if !w.iter().any(|&g| semi_guard_covers(o, g, Edge::new(t, s))) {
                    bad.push(format!("{}: h{t}v{s} uncovered by W_{i}", inst.label));
                }
            }
        }
        if w.iter().any(|g| !g.is_valid(o)) {
            bad.push(format!("{}: W_{i} holds an invalid semi-guard", inst.label));
        }
    }
    bad
}

pub fn guards_distinct(inst: &Instance) -> Vec<String> {
    let mut bad = Vec::new();
    for (i, w) in inst.run.trace.states().iter().enumerate() {
        let hs: BTreeSet<usize> = w.iter().map(|g| g.h).collect();
        let vs: BTreeSet<usize> = w.iter().map(|g| g.v).collect();
        if hs.len() != w.len() || vs.len() != w.len() {
            bad.push(format!("{}: W_{i} = {w:?}", inst.label));
        }
    }
    bad
}

pub fn ti_distinct(inst: &Instance) -> Vec<String> {
    let ts: Vec<usize> = inst.run.trace.steps.iter().filter_map(|s| s.t_i).collect();
    let set: BTreeSet<usize> = ts.iter().copied().collect();
    if set.len() == ts.len() {
        Vec::new()
    } else {
        vec![format!("{}: repeated t_i in {ts:?}", inst.label)]
    }
}

pub fn ii_indep(inst: &Instance) -> Vec<String> {
    let cert = &inst.run.certificate;
    let mut bad = Vec::new();
    for i in 1..=inst.run.trace.steps.len() + 1 {
        let set = cert.state(i);
        for (k, a) in set.iter().enumerate() {
            for b in &set[k + 1..] {
                if inst.brute_dependent((a.h, a.v), (b.h, b.v)) {
                    bad.push(format!("{}: I_{i} holds dependent {a}, {b}", inst.label));
                }
            }
        }
    }
    bad
}

pub fn ii_elements(inst: &Instance) -> Vec<String> {
    let trace = &inst.run.trace;
    let cert = &inst.run.certificate;
    let k = trace.steps.len();
    let mut bad = Vec::new();
    if !cert.state(k + 1).is_empty() {
        bad.push(format!("{}: I_(k+1) not empty", inst.label));
    }
    for i in 1..=k {
        let allowed: BTreeSet<Edge> = trace.steps[i - 1..]
            .iter()
            .filter_map(|s| s.t_i.map(|t| Edge::new(t, s.s_i)))
            .collect();
        let now: BTreeSet<Edge> = cert.state(i).into_iter().collect();
        let later: BTreeSet<Edge> = cert.state(i + 1).into_iter().collect();
        if !now.is_subset(&allowed) || !later.is_subset(&now) {
            bad.push(format!("{}: I_{i} = {now:?}", inst.label));
        }
    }
    bad
}

/// `|I_1| = |W_k|`, and each final semi-guard `(h, v)` is matched to its own
/// certificate edge `t_q s_q` with `(t_q, v) ∈ W_q`.
pub fn i1_wk(inst: &Instance) -> Vec<String> {
    let trace = &inst.run.trace;
    let cert = &inst.run.certificate;
    let mut bad = Vec::new();
    if cert.len() != trace.w_final.len() {
        bad.push(format!("{}: |I_1| = {}, |W_k| = {}", inst.label, cert.len(), trace.w_final.len()));
    }
    let states = trace.states();
    let options: Vec<Vec<usize>> = trace
        .w_final
        .iter()
        .map(|g| {
            cert.witnesses
                .iter()
                .enumerate()
                .filter(|(_, w)| states[w.step].contains(&SemiGuard::new(w.edge.h, g.v)))
                .map(|(k, _)| k)
                .collect()
        })
        .collect();
    if !perfect_matching(&options, cert.len()) {
        bad.push(format!("{}: no matching between W_k and I_1", inst.label));
    }
    bad
}

fn perfect_matching(options: &[Vec<usize>], right: usize) -> bool {
    fn augment(u: usize, options: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &r in &options[u] {
            if !seen[r] {
                seen[r] = true;
                if owner[r].is_none_or(|o| augment(o, options, seen, owner)) {
                    owner[r] = Some(u);
                    return true;
                }
            }
        }
        false
    }
    let mut owner = vec![None; right];
    (0..options.len()).all(|u| augment(u, options, &mut vec![false; right], &mut owner))
}
