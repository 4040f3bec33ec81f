//! Paths and trajectories of a simply laced quiver.
//!
//! A trajectory over a path `a_m ... a_1` lists waiting times at the vertices
//! visited, in written order: slot 0 is at the target `t(a_m)`, slot `i` is
//! at `s(a_i)` counted from the left, slot `m` at the source.

use std::collections::HashSet;

pub use crate::algebra::Word as QPath;
use crate::algebra::Quiver;
use crate::qset::{Origin, QSet};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Trajectory {
    pub path: QPath,
    pub waits: Vec<usize>,
}

impl Trajectory {
    pub fn new(path: QPath, waits: Vec<usize>) -> Self {
        assert_eq!(waits.len(), path.len() + 1, "one waiting time per visited vertex");
        Trajectory { path, waits }
    }

    pub fn duration(&self) -> usize {
        self.path.len() + self.waits.iter().sum::<usize>()
    }

    pub fn total_waiting_time(&self) -> usize {
        self.waits.iter().sum()
    }

    /// Vertex of waiting slot `i`.
    pub fn slot_vertex(&self, q: &Quiver, i: usize) -> usize {
        if i == 0 {
            self.path.target
        } else {
            q.arrows()[self.path.arrows[i - 1]].source
        }
    }

    /// Tensor factors from left to right.
    pub fn factors(&self, q: &Quiver) -> Vec<Origin> {
        let mut out = Vec::with_capacity(self.duration());
        for (i, p) in self.waits.iter().enumerate() {
            let v = self.slot_vertex(q, i);
            out.extend(std::iter::repeat(Origin::Vertex(v)).take(*p));
            if i < self.path.len() {
                out.push(Origin::Arrow(self.path.arrows[i]));
            }
        }
        out
    }

    /// Reads a trajectory off a sequence of tensor factors; `None` when the
    /// factors do not concatenate (the tensor product over the vertices is
    /// then zero). An empty sequence needs the vertex it sits at.
    pub fn from_factors(q: &Quiver, factors: &[Origin], empty_at: Option<usize>) -> Option<Trajectory> {
        let mut arrows = Vec::new();
        let mut waits = vec![0usize];
        let mut at: Option<usize> = None;
        for o in factors {
            match *o {
                Origin::Vertex(x) => {
                    if at.is_some_and(|v| v != x) {
                        return None;
                    }
                    at = Some(x);
                    *waits.last_mut().unwrap() += 1;
                }
                Origin::Arrow(a) => {
                    let arrow = &q.arrows()[a];
                    if at.is_some_and(|v| v != arrow.target) {
                        return None;
                    }
                    arrows.push(a);
                    waits.push(0);
                    at = Some(arrow.source);
                }
            }
        }
        let path = if arrows.is_empty() {
            QPath::trivial(at.or(empty_at)?)
        } else {
            QPath::from_arrows(q, arrows).ok()?
        };
        Some(Trajectory { path, waits })
    }

    pub fn render(&self, q: &Quiver) -> String {
        let mut parts = Vec::new();
        for (i, p) in self.waits.iter().enumerate() {
            parts.push(format!("{}^{}", q.vertices()[self.slot_vertex(q, i)], p));
            if i < self.path.len() {
                parts.push(q.arrows()[self.path.arrows[i]].label.clone());
            }
        }
        parts.join(",")
    }
}

/// Sort key of paths: length, then arrow labels in written order.
pub fn path_key<'a>(q: &'a Quiver, w: &QPath) -> (usize, Vec<&'a str>, usize) {
    (w.len(), w.arrows.iter().map(|a| q.arrows()[*a].label.as_str()).collect(), w.source)
}

/// All paths of length at most `n_max`, split into cycles (vertices
/// included) and non cycles, each sorted by length and labels.
pub fn enumerate_paths(q: &Quiver, n_max: usize) -> (Vec<QPath>, Vec<QPath>) {
    let mut all: Vec<QPath> = (0..q.num_vertices()).map(QPath::trivial).collect();
    let mut layer: Vec<QPath> = Vec::new();
    if n_max >= 1 {
        for a in 0..q.num_arrows() {
            layer.push(QPath::from_arrows(q, vec![a]).expect("single arrow"));
        }
    }
    let mut len = 1;
    while !layer.is_empty() && len <= n_max {
        all.extend(layer.iter().cloned());
        if len == n_max {
            break;
        }
        let mut next = Vec::new();
        for w in &layer {
            for c in q.arrows_from(w.target) {
                let mut arrows = vec![c];
                arrows.extend_from_slice(&w.arrows);
                next.push(QPath { source: w.source, target: q.arrows()[c].target, arrows });
            }
        }
        layer = next;
        len += 1;
    }
    all.sort_by(|a, b| path_key(q, a).cmp(&path_key(q, b)));
    all.into_iter().partition(|w| w.is_cycle())
}

/// Compositions of `total` into `parts` parts, in lexicographic order.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0; parts];
    fn rec(i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for p in 0..=left {
            cur[i] = p;
            rec(i + 1, left - p, cur, out);
        }
    }
    if parts > 0 {
        rec(0, total, &mut cur, &mut out);
    }
    out
}

/// Trajectories of duration `n` over `w`, lexicographic in the waiting times.
pub fn trajectories(w: &QPath, n: usize) -> Vec<Trajectory> {
    if n < w.len() {
        return Vec::new();
    }
    compositions(n - w.len(), w.len() + 1)
        .into_iter()
        .map(|waits| Trajectory { path: w.clone(), waits })
        .collect()
}

/// How a member of the third successor set arises.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Insertion {
    /// The arrow at this position is replaced by the two arrows.
    Arrow { position: usize, outer: usize, inner: usize },
    /// One unit of waiting at this slot is replaced by a 2-cycle.
    Wait { slot: usize, outer: usize, inner: usize },
}

#[derive(Clone, Debug, Default)]
pub struct Successors {
    pub waiting: Vec<Trajectory>,
    pub extended: Vec<Trajectory>,
    pub inserted: Vec<(Trajectory, Insertion)>,
}

impl Successors {
    pub fn all(&self) -> impl Iterator<Item = &Trajectory> {
        self.waiting.iter().chain(&self.extended).chain(self.inserted.iter().map(|(t, _)| t))
    }

    pub fn contains(&self, t: &Trajectory) -> bool {
        self.all().any(|s| s == t)
    }
}

/// The three successor sets of a trajectory.
pub fn successors(q: &Quiver, tau: &Trajectory) -> Successors {
    let m = tau.path.len();
    let mut out = Successors::default();
    let mut seen = HashSet::new();
    for i in 0..=m {
        let mut w = tau.waits.clone();
        w[i] += 1;
        let t = Trajectory { path: tau.path.clone(), waits: w };
        if seen.insert(t.clone()) {
            out.waiting.push(t);
        }
    }
    // an arrow after the path
    for c in q.arrows_from(tau.path.target) {
        let mut arrows = vec![c];
        arrows.extend_from_slice(&tau.path.arrows);
        let mut waits = vec![0];
        waits.extend_from_slice(&tau.waits);
        let t = Trajectory { path: QPath { source: tau.path.source, target: q.arrows()[c].target, arrows }, waits };
        if seen.insert(t.clone()) {
            out.extended.push(t);
        }
    }
    // an arrow before the path
    for c in q.arrows_into(tau.path.source) {
        let mut arrows = tau.path.arrows.clone();
        arrows.push(c);
        let mut waits = tau.waits.clone();
        waits.push(0);
        let t = Trajectory { path: QPath { source: q.arrows()[c].source, target: tau.path.target, arrows }, waits };
        if seen.insert(t.clone()) {
            out.extended.push(t);
        }
    }
    // an arrow replaced by a parallel path of length two
    for (j, &a) in tau.path.arrows.iter().enumerate() {
        let (s, t) = (q.arrows()[a].source, q.arrows()[a].target);
        for inner in q.arrows_from(s) {
            let z = q.arrows()[inner].target;
            if let Some(outer) = q.arrow_between(z, t) {
                let mut arrows = tau.path.arrows.clone();
                arrows.splice(j..=j, [outer, inner]);
                let mut waits = tau.waits.clone();
                waits.insert(j + 1, 0);
                let tr = Trajectory { path: QPath { arrows, ..tau.path.clone() }, waits };
                if seen.insert(tr.clone()) {
                    out.inserted.push((tr, Insertion::Arrow { position: j, outer, inner }));
                }
            }
        }
    }
    // one unit of waiting replaced by a 2-cycle
    for i in 0..=m {
        let p = tau.waits[i];
        if p == 0 {
            continue;
        }
        let x = tau.slot_vertex(q, i);
        for inner in q.arrows_from(x) {
            let z = q.arrows()[inner].target;
            let Some(outer) = q.arrow_between(z, x) else { continue };
            for k in 0..p {
                let mut arrows = tau.path.arrows.clone();
                arrows.splice(i..i, [outer, inner]);
                let mut waits = tau.waits.clone();
                waits.splice(i..=i, [k, 0, p - 1 - k]);
                let tr = Trajectory { path: QPath { arrows, ..tau.path.clone() }, waits };
                if seen.insert(tr.clone()) {
                    out.inserted.push((tr, Insertion::Wait { slot: i, outer, inner }));
                }
            }
        }
    }
    out
}

/// The bimodule in which cochains over `w` take values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficient {
    /// A cycle at this vertex: the vertex algebra.
    Vertex(usize),
    /// A non cycle with this parallel arrow.
    Arrow(usize),
    Zero,
}

pub fn coefficient(q: &Quiver, w: &QPath) -> Coefficient {
    if w.is_cycle() {
        Coefficient::Vertex(w.source)
    } else if let Some(c) = q.arrow_between(w.source, w.target) {
        Coefficient::Arrow(c)
    } else {
        Coefficient::Zero
    }
}

impl Coefficient {
    pub fn dim<F: crate::exactla::Field>(&self, delta: &QSet<F>) -> usize {
        match *self {
            Coefficient::Vertex(x) => delta.algebra(x).dim(),
            Coefficient::Arrow(a) => delta.bimodule(a).dim(),
            Coefficient::Zero => 0,
        }
    }

    pub fn origin(&self) -> Option<Origin> {
        match *self {
            Coefficient::Vertex(x) => Some(Origin::Vertex(x)),
            Coefficient::Arrow(a) => Some(Origin::Arrow(a)),
            Coefficient::Zero => None,
        }
    }
}

/// Dimension of a block of tensor factors.
pub fn factor_dim<F: crate::exactla::Field>(delta: &QSet<F>, o: Origin) -> usize {
    match o {
        Origin::Vertex(x) => delta.algebra(x).dim(),
        Origin::Arrow(a) => delta.bimodule(a).dim(),
    }
}

/// Dimension of the evaluation of `tau` at the Q-set, and the dimension of
/// each tensor factor from left to right.
pub fn evaluate<F: crate::exactla::Field>(tau: &Trajectory, delta: &QSet<F>) -> (usize, Vec<usize>) {
    let dims: Vec<usize> = tau.factors(delta.quiver()).into_iter().map(|o| factor_dim(delta, o)).collect();
    (dims.iter().product(), dims)
}

/// Binomial coefficient, for counting trajectories.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as usize
}
