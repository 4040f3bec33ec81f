//! Two-floor Peirce quivers of null-square projective algebras, efficient
//! cycles, and nilpotence of the corner bimodule under tensor powers.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::algebra::{free_corner_bimodule, monomial_algebra, peirce_quiver, tensor_over, AlgRef, Bimodule, Quiver};
use crate::error::{Error, Result};
use crate::exactla::{Field, SparseVec};
use crate::qset::SquareData;

/// Upper floor `Q_E`, lower floor `Q_F`, and the vertical arrows with their
/// multiplicities: `down` holds `(e, f, m)` for `m` copies of `Bf ⊗ eA` in
/// `M`, `up` holds `(f, e, n)` for `n` copies of `Ae ⊗ fB` in `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeirceSquareQuiver {
    pub upper: Quiver,
    pub lower: Quiver,
    pub down: Vec<(usize, usize, usize)>,
    pub up: Vec<(usize, usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PeirceArrow {
    Down { e: usize, f: usize },
    Up { f: usize, e: usize },
    Upper(usize),
    Lower(usize),
}

impl PeirceArrow {
    fn is_vertical(&self) -> bool {
        matches!(self, PeirceArrow::Down { .. } | PeirceArrow::Up { .. })
    }
}

impl PeirceSquareQuiver {
    pub fn new(upper: Quiver, lower: Quiver, down: Vec<(usize, usize, usize)>, up: Vec<(usize, usize, usize)>) -> Result<Self> {
        let (ne, nf) = (upper.num_vertices(), lower.num_vertices());
        if down.iter().any(|(e, f, _)| *e >= ne || *f >= nf) || up.iter().any(|(f, e, _)| *e >= ne || *f >= nf) {
            return Err(Error::Input("vertical arrow between unknown vertices".into()));
        }
        let down = down.into_iter().filter(|(_, _, m)| *m > 0).collect();
        let up = up.into_iter().filter(|(_, _, m)| *m > 0).collect();
        Ok(PeirceSquareQuiver { upper, lower, down, up })
    }

    /// Vertices of both floors: upper first.
    pub fn num_vertices(&self) -> usize {
        self.upper.num_vertices() + self.lower.num_vertices()
    }

    pub fn num_vertical(&self) -> usize {
        self.down.len() + self.up.len()
    }

    fn vertex_of_lower(&self, f: usize) -> usize {
        self.upper.num_vertices() + f
    }

    /// Arrows leaving a vertex, in a fixed order.
    fn out_arrows(&self, v: usize) -> Vec<(PeirceArrow, usize)> {
        let ne = self.upper.num_vertices();
        let mut out = Vec::new();
        if v < ne {
            for (e, f, _) in &self.down {
                if *e == v {
                    out.push((PeirceArrow::Down { e: *e, f: *f }, self.vertex_of_lower(*f)));
                }
            }
            for a in self.upper.arrows_from(v) {
                out.push((PeirceArrow::Upper(a), self.upper.arrows()[a].target));
            }
        } else {
            let f = v - ne;
            for (g, e, _) in &self.up {
                if *g == f {
                    out.push((PeirceArrow::Up { f, e: *e }, *e));
                }
            }
            for a in self.lower.arrows_from(f) {
                out.push((PeirceArrow::Lower(a), self.vertex_of_lower(self.lower.arrows()[a].target)));
            }
        }
        out.sort();
        out
    }

    fn source(&self, a: PeirceArrow) -> usize {
        match a {
            PeirceArrow::Down { e, .. } => e,
            PeirceArrow::Up { f, .. } => self.vertex_of_lower(f),
            PeirceArrow::Upper(x) => self.upper.arrows()[x].source,
            PeirceArrow::Lower(x) => self.vertex_of_lower(self.lower.arrows()[x].source),
        }
    }

    pub fn render(&self, a: PeirceArrow) -> String {
        let (ue, lf) = (self.upper.vertices(), self.lower.vertices());
        match a {
            PeirceArrow::Down { e, f } => format!("{}↓{}", ue[e], lf[f]),
            PeirceArrow::Up { f, e } => format!("{}↑{}", lf[f], ue[e]),
            PeirceArrow::Upper(x) => self.upper.arrows()[x].label.clone(),
            PeirceArrow::Lower(x) => self.lower.arrows()[x].label.clone(),
        }
    }
}

/// A shortest efficient cycle, lexicographically least among the shortest
/// when written from a vertical arrow, or `None`.
///
/// States are (vertex, whether the last arrow was horizontal); a horizontal
/// arrow may not follow a horizontal one. Writing the cycle from a vertical
/// arrow makes the wrap-around condition automatic.
pub fn efficient_cycles(pq: &PeirceSquareQuiver) -> Option<Vec<PeirceArrow>> {
    let nv = pq.num_vertices();
    let state = |v: usize, horizontal: bool| 2 * v + horizontal as usize;
    let moves: Vec<Vec<(PeirceArrow, usize)>> = (0..2 * nv)
        .map(|s| {
            let (v, horizontal) = (s / 2, s % 2 == 1);
            pq.out_arrows(v)
                .into_iter()
                .filter(|(a, _)| a.is_vertical() || !horizontal)
                .map(|(a, w)| (a, state(w, !a.is_vertical())))
                .collect()
        })
        .collect();
    // distance from every state to reaching `goal` (any last kind), by backward search
    let distances = |goal: usize| -> Vec<Option<usize>> {
        let mut dist = vec![None; 2 * nv];
        let mut queue = VecDeque::new();
        for s in [state(goal, false), state(goal, true)] {
            dist[s] = Some(0);
            queue.push_back(s);
        }
        while let Some(t) = queue.pop_front() {
            let dt = dist[t].unwrap();
            for (s, ms) in moves.iter().enumerate() {
                if dist[s].is_none() && ms.iter().any(|(_, u)| *u == t) {
                    dist[s] = Some(dt + 1);
                    queue.push_back(s);
                }
            }
        }
        dist
    };
    let mut starts: Vec<PeirceArrow> = pq
        .down
        .iter()
        .map(|(e, f, _)| PeirceArrow::Down { e: *e, f: *f })
        .chain(pq.up.iter().map(|(f, e, _)| PeirceArrow::Up { f: *f, e: *e }))
        .collect();
    starts.sort();
    let mut best: Option<(usize, PeirceArrow, Vec<Option<usize>>, usize)> = None;
    for a in starts {
        let goal = pq.source(a);
        let dist = distances(goal);
        let after = pq.out_arrows(goal).into_iter().find(|(b, _)| *b == a).map(|(_, w)| state(w, false)).unwrap();
        if let Some(d) = dist[after] {
            if best.as_ref().is_none_or(|b| 1 + d < b.0) {
                best = Some((1 + d, a, dist, after));
            }
        }
    }
    let (len, first, dist, mut at) = best?;
    let mut cycle = vec![first];
    for remaining in (0..len - 1).rev() {
        let (a, next) = moves[at].iter().find(|(_, u)| dist[*u] == Some(remaining)).copied().unwrap();
        cycle.push(a);
        at = next;
    }
    Some(cycle)
}

/// Radical square zero algebra of a quiver without loops, system labelled by the vertices.
pub fn radical_square_zero<F: Field>(f: &F, q: &Quiver) -> Result<AlgRef<F>> {
    let mut zero = Vec::new();
    for a in q.arrows() {
        for b in q.arrows().iter().filter(|b| b.source == a.target) {
            zero.push(format!("{} {}", b.label, a.label));
        }
    }
    let refs: Vec<&str> = zero.iter().map(|s| s.as_str()).collect();
    Ok(Arc::new(monomial_algebra(f, q.clone(), &refs, 2)?))
}

fn corner_sum<F: Field>(
    left: &AlgRef<F>,
    right: &AlgRef<F>,
    parts: &[(usize, usize, usize)],
    left_label: impl Fn(usize, usize) -> usize,
    right_label: impl Fn(usize, usize) -> usize,
) -> Result<Bimodule<F>> {
    let mut total = Bimodule::zero(left.clone(), right.clone());
    for &(x, y, mult) in parts {
        let l = left.system_labels()[left_label(x, y)].clone();
        let r = right.system_labels()[right_label(x, y)].clone();
        let one = free_corner_bimodule(left, &l, &r, right)?;
        for _ in 0..mult {
            total = total.direct_sum(&one)?;
        }
    }
    Ok(total)
}

/// The null-square algebra with the given diagonal algebras, whose systems
/// are the floors, and corner bimodules sums of free corners.
pub fn square_from_peirce<F: Field>(
    a: &AlgRef<F>,
    b: &AlgRef<F>,
    down: Vec<(usize, usize, usize)>,
    up: Vec<(usize, usize, usize)>,
) -> Result<(PeirceSquareQuiver, SquareData<F>)> {
    let m = corner_sum(b, a, &down, |_, f| f, |e, _| e)?;
    let n = corner_sum(a, b, &up, |_, e| e, |f, _| f)?;
    let pq = PeirceSquareQuiver::new(peirce_quiver(a), peirce_quiver(b), down, up)?;
    let sq = SquareData::null(a.clone(), b.clone(), m, n)?;
    Ok((pq, sq))
}

/// Realizes the quiver with radical square zero algebras on both floors.
pub fn realize<F: Field>(f: &F, pq: &PeirceSquareQuiver) -> Result<SquareData<F>> {
    let a = radical_square_zero(f, &pq.upper)?;
    let b = radical_square_zero(f, &pq.lower)?;
    let (_, sq) = square_from_peirce(&a, &b, pq.down.clone(), pq.up.clone())?;
    Ok(sq)
}

/// `A × B` and `M ⊕ N` as a bimodule over it.
pub fn square_bimodule<F: Field>(sq: &SquareData<F>) -> Result<(AlgRef<F>, Bimodule<F>)> {
    let fld = sq.field();
    let (a, b) = (&sq.a, &sq.b);
    let ab = Arc::new(a.product(b)?);
    let (da, dm) = (a.dim(), sq.m.dim());
    let shift = |v: SparseVec<F::Elem>, by: usize| -> SparseVec<F::Elem> { v.into_iter().map(|(i, c)| (i + by as u32, c)).collect() };
    let unit = |k: usize| [(k as u32, fld.one())];
    // basis: M first, then N
    let left = |i: usize, k: usize| -> SparseVec<F::Elem> {
        match (i < da, k < dm) {
            (false, true) => sq.m.act_left(i - da, &unit(k)),
            (true, false) => shift(sq.n.act_left(i, &unit(k - dm)), dm),
            _ => Vec::new(),
        }
    };
    let right = |k: usize, j: usize| -> SparseVec<F::Elem> {
        match (j < da, k < dm) {
            (true, true) => sq.m.act_right(&unit(k), j),
            (false, false) => shift(sq.n.act_right(&unit(k - dm), j - da), dm),
            _ => Vec::new(),
        }
    };
    let module = Bimodule::from_fn(ab.clone(), ab.clone(), dm + sq.n.dim(), left, right)?;
    Ok((ab, module))
}

/// Smallest `h <= h_max` with `M^{⊗h} = 0` over the algebra of `M`, or `None`.
pub fn tensor_nilpotence<F: Field>(m: &Bimodule<F>, h_max: usize) -> Result<Option<usize>> {
    if !crate::algebra::same_algebra(m.left_algebra(), m.right_algebra()) {
        return Err(Error::AlgebraMismatch("tensor powers need a bimodule over one algebra".into()));
    }
    let mut power = m.clone();
    for h in 1..=h_max {
        if power.dim() == 0 {
            return Ok(Some(h));
        }
        if h < h_max {
            power = tensor_over(&power, m)?.module;
        }
    }
    Ok(None)
}

/// Dimensions of `M^{⊗h}` for `h = 1..=h_max`, stopping at the first zero.
pub fn tensor_power_dims<F: Field>(m: &Bimodule<F>, h_max: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    let mut power = m.clone();
    for h in 1..=h_max {
        out.push(power.dim());
        if power.dim() == 0 || h == h_max {
            break;
        }
        power = tensor_over(&power, m)?.module;
    }
    Ok(out)
}

/// The bound `|vertices| + 1` on the nilpotence index without efficient
/// cycles: an efficient path revisiting a state closes an efficient cycle,
/// so it has at most one vertical arrow per vertex.
pub fn nilpotence_bound(pq: &PeirceSquareQuiver) -> usize {
    pq.num_vertices() + 1
}

/// The two-floor Peirce quiver of a square: the Peirce quivers of the
/// diagonal algebras and a vertical arrow wherever a corner of `M` or `N`
/// between system idempotents is nonzero.
pub fn peirce_square_of<F: Field>(sq: &SquareData<F>) -> Result<PeirceSquareQuiver> {
    let (ea, eb) = (sq.a.system(), sq.b.system());
    let mut down = Vec::new();
    for (e, x) in ea.iter().enumerate() {
        for (f, y) in eb.iter().enumerate() {
            if sq.m.corner(y, x).dim() > 0 {
                down.push((e, f, 1));
            }
        }
    }
    let mut up = Vec::new();
    for (f, y) in eb.iter().enumerate() {
        for (e, x) in ea.iter().enumerate() {
            if sq.n.corner(x, y).dim() > 0 {
                up.push((f, e, 1));
            }
        }
    }
    PeirceSquareQuiver::new(peirce_quiver(&sq.a), peirce_quiver(&sq.b), down, up)
}
