use std::collections::{BTreeMap, HashMap};

use super::algebra::FinDimAlgebra;
use super::quiver::Quiver;
use crate::error::{Error, Result};
use crate::exactla::Field;

/// A path of a quiver. Arrows are stored in written order: `ba` means `a`
/// first, then `b`, and is stored as `[b, a]`. A trivial path has no arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Word {
    pub fn trivial(v: usize) -> Self {
        Word { source: v, target: v, arrows: Vec::new() }
    }

    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Result<Self> {
        if arrows.is_empty() {
            return Err(Error::Input("empty arrow list; use a vertex for a trivial path".into()));
        }
        for w in arrows.windows(2) {
            let (later, earlier) = (&q.arrows()[w[0]], &q.arrows()[w[1]]);
            if earlier.target != later.source {
                return Err(Error::Input(format!(
                    "arrows '{}' and '{}' do not compose",
                    later.label, earlier.label
                )));
            }
        }
        let source = q.arrows()[*arrows.last().unwrap()].source;
        let target = q.arrows()[arrows[0]].target;
        Ok(Word { source, target, arrows })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_cycle(&self) -> bool {
        self.source == self.target
    }

    /// `self * other` (other first), or None when not composable.
    pub fn compose(&self, other: &Word) -> Option<Word> {
        if self.source != other.target {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Word { source: other.source, target: self.target, arrows })
    }

    pub fn render(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            return format!("e_{}", q.vertices()[self.source]);
        }
        let labels: Vec<&str> = self.arrows.iter().map(|a| q.arrows()[*a].label.as_str()).collect();
        if labels.iter().all(|l| l.chars().count() == 1) {
            labels.concat()
        } else {
            labels.join("*")
        }
    }

    /// Degree-lexicographic key: length first, then arrow indices.
    fn key(&self) -> (usize, &[usize]) {
        (self.arrows.len(), &self.arrows)
    }
}

/// Parses a path. Accepted forms: `e_x` or a vertex label for a trivial
/// path, arrow labels separated by spaces or `*`, a single arrow label, or a
/// run of one-character arrow labels.
pub fn parse_word(q: &Quiver, s: &str) -> Result<Word> {
    let s = s.trim();
    if let Some(v) = s.strip_prefix("e_").and_then(|v| q.vertex_index(v)) {
        return Ok(Word::trivial(v));
    }
    if let Some(v) = q.vertex_index(s) {
        if q.arrow_index(s).is_none() {
            return Ok(Word::trivial(v));
        }
    }
    let find = |l: &str| q.arrow_index(l).ok_or_else(|| Error::Input(format!("unknown arrow '{}' in path '{}'", l, s)));
    let tokens: Vec<&str> = s.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()).collect();
    let arrows = if tokens.len() > 1 {
        tokens.iter().map(|t| find(t)).collect::<Result<Vec<_>>>()?
    } else if let Some(a) = q.arrow_index(s) {
        vec![a]
    } else {
        s.chars().map(|c| find(&c.to_string())).collect::<Result<Vec<_>>>()?
    };
    Word::from_arrows(q, arrows)
}

/// A rewriting rule `lead -> sum c * word`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rule<E> {
    pub lead: Word,
    pub replacement: Vec<(E, Word)>,
}

/// A bound quiver presented by a terminating rewriting system on paths.
#[derive(Clone, Debug)]
pub struct RewritePresentation<F: Field> {
    field: F,
    quiver: Quiver,
    rules: Vec<Rule<F::Elem>>,
    cap: usize,
}

type Combo<E> = BTreeMap<Word, E>;

impl<F: Field> RewritePresentation<F> {
    /// Checks that every rule is well formed and strictly decreasing in the
    /// degree-lexicographic order, which makes rewriting terminate.
    pub fn new(field: &F, quiver: Quiver, rules: Vec<Rule<F::Elem>>, cap: usize) -> Result<Self> {
        for r in &rules {
            let lead = r.lead.render(&quiver);
            if r.lead.len() < 2 {
                return Err(Error::Input(format!("rule lead '{}' must have length at least 2", lead)));
            }
            for (c, w) in &r.replacement {
                if w.source != r.lead.source || w.target != r.lead.target {
                    return Err(Error::Input(format!(
                        "term '{}' of rule '{}' is not parallel to the lead",
                        w.render(&quiver),
                        lead
                    )));
                }
                if w.key() >= r.lead.key() {
                    return Err(Error::Input(format!(
                        "term '{}' of rule '{}' is not smaller than the lead",
                        w.render(&quiver),
                        lead
                    )));
                }
                if field.is_zero(c) {
                    return Err(Error::Input(format!("zero coefficient in rule '{}'", lead)));
                }
            }
        }
        Ok(RewritePresentation { field: field.clone(), quiver, rules, cap })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn rules(&self) -> &[Rule<F::Elem>] {
        &self.rules
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn find_lead(&self, w: &Word) -> Option<(usize, usize)> {
        for (k, r) in self.rules.iter().enumerate() {
            let l = r.lead.len();
            if l > w.len() {
                continue;
            }
            if let Some(pos) = w.arrows.windows(l).position(|win| win == r.lead.arrows.as_slice()) {
                return Some((k, pos));
            }
        }
        None
    }

    fn is_normal(&self, w: &Word) -> bool {
        self.find_lead(w).is_none()
    }

    /// Replaces the occurrence of rule `k` at `pos` in `w`.
    fn rewrite_at(&self, w: &Word, k: usize, pos: usize) -> Vec<(F::Elem, Word)> {
        let r = &self.rules[k];
        let l = r.lead.len();
        let mut out = Vec::new();
        for (c, t) in &r.replacement {
            let mut arrows = w.arrows[..pos].to_vec();
            arrows.extend_from_slice(&t.arrows);
            arrows.extend_from_slice(&w.arrows[pos + l..]);
            let word = if arrows.is_empty() {
                Word::trivial(w.source)
            } else {
                Word { source: w.source, target: w.target, arrows }
            };
            out.push((c.clone(), word));
        }
        out
    }

    fn add_term(&self, combo: &mut Combo<F::Elem>, w: Word, c: F::Elem) {
        let f = &self.field;
        let entry = combo.entry(w);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(o.get(), &c);
                if f.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                if !f.is_zero(&c) {
                    v.insert(c);
                }
            }
        }
    }

    /// Normal form of a linear combination of paths.
    pub fn reduce(&self, terms: Vec<(F::Elem, Word)>) -> Vec<(F::Elem, Word)> {
        let f = &self.field;
        let mut pending: Combo<F::Elem> = BTreeMap::new();
        for (c, w) in terms {
            self.add_term(&mut pending, w, c);
        }
        let mut done: Combo<F::Elem> = BTreeMap::new();
        // Largest word first: rewriting only produces smaller words.
        while let Some((w, c)) = pending.pop_last() {
            match self.find_lead(&w) {
                None => self.add_term(&mut done, w, c),
                Some((k, pos)) => {
                    for (d, t) in self.rewrite_at(&w, k, pos) {
                        self.add_term(&mut pending, t, f.mul(&c, &d));
                    }
                }
            }
        }
        done.into_iter().map(|(w, c)| (c, w)).collect()
    }

    /// Resolves every overlap and inclusion ambiguity between rule leads.
    pub fn check_confluence(&self) -> Result<()> {
        let f = &self.field;
        let q = &self.quiver;
        for (i, ri) in self.rules.iter().enumerate() {
            for (j, rj) in self.rules.iter().enumerate() {
                let u = &ri.lead.arrows;
                let v = &rj.lead.arrows;
                let mut ambiguities: Vec<(Word, usize)> = Vec::new();
                // overlap: a proper suffix of u equals a proper prefix of v
                for k in 1..u.len().min(v.len()) {
                    if u[u.len() - k..] == v[..k] {
                        let mut arrows = u.clone();
                        arrows.extend_from_slice(&v[k..]);
                        if let Ok(w) = Word::from_arrows(q, arrows) {
                            ambiguities.push((w, u.len() - k));
                        }
                    }
                }
                // inclusion: v occurs inside u
                if i != j && v.len() <= u.len() {
                    for pos in 0..=u.len() - v.len() {
                        if u[pos..pos + v.len()] == v[..] {
                            ambiguities.push((ri.lead.clone(), pos));
                        }
                    }
                }
                for (w, pos) in ambiguities {
                    let a = self.reduce(self.rewrite_at(&w, i, 0));
                    let b = self.reduce(self.rewrite_at(&w, j, pos));
                    if a != b {
                        let show = |t: &[(F::Elem, Word)]| -> String {
                            if t.is_empty() {
                                return "0".into();
                            }
                            t.iter().map(|(c, w)| format!("{}*{}", f.render(c), w.render(q))).collect::<Vec<_>>().join(" + ")
                        };
                        return Err(Error::NotConfluent(format!(
                            "'{}' reduces to {} and to {}",
                            w.render(q),
                            show(&a),
                            show(&b)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Normal-form paths in basis order: trivial paths, then arrows, then
    /// longer paths by length and arrow indices.
    pub fn normal_forms(&self) -> Result<Vec<Word>> {
        let q = &self.quiver;
        let mut all: Vec<Word> = (0..q.num_vertices()).map(Word::trivial).collect();
        let mut layer: Vec<Word> = Vec::new();
        for a in 0..q.num_arrows() {
            let w = Word::from_arrows(q, vec![a])?;
            layer.push(w);
        }
        let mut len = 1;
        while !layer.is_empty() {
            if len > self.cap {
                return Err(Error::InfiniteDimensional(self.cap));
            }
            layer.sort_by(|a, b| a.key().cmp(&b.key()));
            all.extend(layer.iter().cloned());
            let mut next = Vec::new();
            for w in &layer {
                for a in 0..q.num_arrows() {
                    // prepend arrow a after w
                    if q.arrows()[a].source != w.target {
                        continue;
                    }
                    let mut arrows = vec![a];
                    arrows.extend_from_slice(&w.arrows);
                    let nw = Word { source: w.source, target: q.arrows()[a].target, arrows };
                    if self.is_normal(&nw) {
                        next.push(nw);
                    }
                }
            }
            layer = next;
            len += 1;
        }
        Ok(all)
    }

    /// The algebra with basis the normal-form paths and system the trivial paths.
    pub fn to_algebra(&self) -> Result<FinDimAlgebra<F>> {
        self.check_confluence()?;
        let f = &self.field;
        let q = &self.quiver;
        let basis = self.normal_forms()?;
        let index: HashMap<&Word, u32> = basis.iter().enumerate().map(|(i, w)| (w, i as u32)).collect();
        let dim = basis.len();
        let mut table = vec![Vec::new(); dim * dim];
        for (i, x) in basis.iter().enumerate() {
            for (j, y) in basis.iter().enumerate() {
                let Some(w) = x.compose(y) else { continue };
                let red = self.reduce(vec![(f.one(), w)]);
                let mut v: Vec<(u32, F::Elem)> = red.into_iter().map(|(c, w)| (index[&w], c)).collect();
                v.sort_by_key(|e| e.0);
                table[i * dim + j] = v;
            }
        }
        let nv = q.num_vertices();
        let unit = (0..nv as u32).map(|v| (v, f.one())).collect();
        let system = (0..nv as u32).map(|v| vec![(v, f.one())]).collect();
        let labels = basis.iter().map(|w| w.render(q)).collect();
        FinDimAlgebra::from_structure_constants(f, labels, table, unit, system, q.vertices().to_vec())
    }
}

/// Path algebra of a quiver modulo the listed paths (a monomial ideal).
pub fn monomial_algebra<F: Field>(f: &F, quiver: Quiver, zero_paths: &[&str], cap: usize) -> Result<FinDimAlgebra<F>> {
    let rules = zero_paths
        .iter()
        .map(|p| Ok(Rule { lead: parse_word(&quiver, p)?, replacement: Vec::new() }))
        .collect::<Result<Vec<_>>>()?;
    RewritePresentation::new(f, quiver, rules, cap)?.to_algebra()
}
