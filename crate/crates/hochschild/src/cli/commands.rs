//! The computations behind each subcommand, generic over the field.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::problem::{Instance, Model};
use super::report::table;
use crate::algebra::parse_word;
use crate::complex::{along_path_complex, bar_hochschild, relative_complex, relative_cost, RelativeComplex};
use crate::error::{Error, Result};
use crate::exactla::sparse::normalize;
use crate::exactla::{rank, Field, SparseVec};
use crate::homalg::along_path_via_ext;
use crate::qset::{assemble_lambda, solve_associativity, QSet};
use crate::structure::*;
use crate::trajectory::{binomial, enumerate_paths, trajectories, QPath};

/// Highest Ext degree probed to certify projective corners.
pub const PROBE_DEGREE: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Hh,
    HhRelative,
    AlongPath,
    Les,
    Square,
    Peirce,
    SolveAssoc,
    Verify,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Hh => "hh",
            Command::HhRelative => "hh-relative",
            Command::AlongPath => "along-path",
            Command::Les => "les",
            Command::Square => "square",
            Command::Peirce => "peirce",
            Command::SolveAssoc => "solve-assoc",
            Command::Verify => "verify",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        use clap::ValueEnum;
        Command::value_variants().iter().copied().find(|c| c.name() == s)
    }
}

/// Settings shared by all commands.
#[derive(Clone, Debug)]
pub struct Settings {
    pub max_degree: usize,
    pub budget: u64,
    pub paths: Vec<String>,
    pub seed: u64,
}

/// Text for the terminal, the report body, and whether every check passed.
pub struct Outcome {
    pub text: String,
    pub result: Value,
    pub passed: bool,
}

impl Outcome {
    fn ok(text: String, result: Value) -> Self {
        Outcome { text, result, passed: true }
    }
}

pub fn run<F: Field>(cmd: Command, model: &Model<F>, s: &Settings) -> Result<Outcome> {
    match cmd {
        Command::Hh => hh(model, s),
        Command::HhRelative => hh_relative(model, s),
        Command::AlongPath => along_path(model, s),
        Command::Les => les(model, s),
        Command::Square => square(model, s),
        Command::Peirce => peirce(model, s),
        Command::SolveAssoc => solve_assoc(model),
        Command::Verify => verify(model, s),
    }
}

fn degree_table(columns: &[&str], values: &[&[usize]]) -> String {
    let n = values.iter().map(|v| v.len()).max().unwrap_or(0);
    let rows: Vec<Vec<String>> = (0..n)
        .map(|i| {
            let mut r = vec![i.to_string()];
            r.extend(values.iter().map(|v| v.get(i).map_or("-".into(), |x| x.to_string())));
            r
        })
        .collect();
    let mut header = vec!["degree"];
    header.extend_from_slice(columns);
    table(&header, &rows)
}

fn bar_dims<F: Field>(delta: &QSet<F>, n: usize, budget: u64) -> Result<Option<Vec<usize>>> {
    let lambda = assemble_lambda(delta)?;
    match bar_hochschild(&lambda.algebra, n, budget) {
        Ok(d) => Ok(Some(d)),
        Err(Error::BudgetExceeded { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn relative<F: Field>(delta: &QSet<F>, n: usize, budget: u64) -> Result<RelativeComplex<F>> {
    let cost = relative_cost(delta, n)?;
    if cost > budget {
        return Err(Error::BudgetExceeded { required: cost, budget });
    }
    relative_complex(delta, n)
}

fn hh<F: Field>(model: &Model<F>, s: &Settings) -> Result<Outcome> {
    let delta = model.qset()?;
    let lambda = assemble_lambda(&delta)?;
    let dims = bar_hochschild(&lambda.algebra, s.max_degree, s.budget)?;
    let text = format!("algebra of dimension {}\n{}", lambda.algebra.dim(), degree_table(&["HH"], &[&dims]));
    Ok(Outcome::ok(text, json!({ "algebra_dim": lambda.algebra.dim(), "hh": dims })))
}

fn hh_relative<F: Field>(model: &Model<F>, s: &Settings) -> Result<Outcome> {
    let delta = model.qset()?;
    let j = relative(&delta, s.max_degree, s.budget)?;
    let dims = j.complex.cohomology_dims();
    let bar = bar_dims(&delta, s.max_degree, s.budget)?;
    if let Some(b) = &bar {
        if *b != dims {
            return Err(Error::Internal(format!("relative complex gives {:?}, bar complex gives {:?}", dims, b)));
        }
    }
    let cochains: Vec<usize> = (0..=s.max_degree).map(|n| j.complex.dim(n)).collect();
    let mut text = degree_table(&["HH", "cochains"], &[&dims, &cochains]);
    text.push_str(match &bar {
        Some(_) => "\nbar complex agrees",
        None => "\nbar complex skipped: over budget",
    });
    Ok(Outcome::ok(text, json!({ "hh": dims, "cochains": cochains, "bar": bar, "agree": bar.as_ref().map(|_| true) })))
}

fn requested_paths<F: Field>(delta: &QSet<F>, s: &Settings) -> Result<Vec<QPath>> {
    let q = delta.quiver();
    if s.paths.is_empty() {
        return (0..q.num_arrows()).map(|a| QPath::from_arrows(q, vec![a])).collect();
    }
    s.paths.iter().map(|p| parse_word(q, p)).collect()
}

fn along_path<F: Field>(model: &Model<F>, s: &Settings) -> Result<Outcome> {
    let delta = model.qset()?;
    let q = delta.quiver();
    let n = s.max_degree;
    let mut rows = Vec::new();
    let mut out = Vec::new();
    for w in requested_paths(&delta, s)? {
        let m = w.len();
        if m == 0 {
            return Err(Error::Input("along-path needs paths with at least one arrow".into()));
        }
        let direct = along_path_complex(&delta, &w, n)?.cohomology_dims();
        let (ext, note) = if m > n {
            (None, "path longer than the degree cap".to_string())
        } else {
            match along_path_via_ext(&delta, &w, n - m) {
                Ok(e) => {
                    if e[..] != direct[m..] {
                        return Err(Error::Internal(format!("along {}: complex {:?}, Ext {:?}", w.render(q), &direct[m..], e)));
                    }
                    (Some(e), "Ext agrees".to_string())
                }
                Err(Error::TorHypothesisFails { factor, degree }) => {
                    (None, format!("Tor_{} at factor {} does not vanish", degree, factor))
                }
                Err(e) => return Err(e),
            }
        };
        let shown: Vec<String> = direct.iter().map(|d| d.to_string()).collect();
        rows.push(vec![w.render(q), shown.join(" "), note.clone()]);
        out.push(json!({ "path": w.render(q), "length": m, "dims": direct, "ext": ext, "note": note }));
    }
    let text = table(&["path", "H^0..H^n", "cross-check"], &rows);
    Ok(Outcome::ok(text, json!({ "paths": out })))
}

fn les<F: Field>(model: &Model<F>, s: &Settings) -> Result<Outcome> {
    let delta = model.qset()?;
    relative(&delta, s.max_degree, s.budget)?;
    let seq = CohomologySequence::new(&delta, s.max_degree)?;
    let report = les_report(&seq, true)?;
    let f = seq.field();
    let mut rows = Vec::new();
    let mut degrees = Vec::new();
    let flag = |e: Option<bool>| match e {
        Some(true) => "yes",
        Some(false) => "NO",
        None => "-",
    };
    for d in &report.degrees {
        let conn_rank = d.connecting.as_ref().map(|c| rank(f, c));
        rows.push(vec![
            d.degree.to_string(),
            d.dims[0].to_string(),
            d.dims[1].to_string(),
            d.dims[2].to_string(),
            conn_rank.map_or("-".into(), |r| r.to_string()),
            format!("{} {} {}", flag(d.exact[0]), flag(d.exact[1]), flag(d.exact[2])),
        ]);
        let paths = |v: &[(String, usize)]| -> Value {
            Value::Object(v.iter().map(|(k, d)| (k.clone(), json!(d))).collect())
        };
        degrees.push(json!({
            "degree": d.degree,
            "subcomplex": d.dims[0],
            "hh": d.dims[1],
            "quotient": d.dims[2],
            "inclusion_rank": rank(f, &d.inclusion),
            "projection_rank": rank(f, &d.projection),
            "connecting_rank": conn_rank,
            "exact": d.exact,
            "subcomplex_paths": paths(&d.noncycle_paths),
            "quotient_paths": paths(&d.cycle_paths),
        }));
    }
    let mut text = table(&["degree", "H(D)", "HH", "H(C)", "rank conn", "exact D HH C"], &rows);
    for d in &report.degrees {
        let list = |v: &[(String, usize)]| v.iter().map(|(p, k)| format!("{}:{}", p, k)).collect::<Vec<_>>().join(" ");
        if !d.noncycle_paths.is_empty() || !d.cycle_paths.is_empty() {
            text.push_str(&format!(
                "\ndegree {}: D along [{}], C along [{}]",
                d.degree,
                list(&d.noncycle_paths),
                list(&d.cycle_paths)
            ));
        }
    }
    text.push_str("\nsequence is exact");
    Ok(Outcome::ok(text, json!({ "degrees": degrees, "exact": report.is_exact() })))
}

fn the_square<F: Field>(model: &Model<F>) -> Result<&crate::qset::SquareData<F>> {
    model.square().ok_or_else(|| Error::Input("this command needs a square or peirce instance".into()))
}

fn square<F: Field>(model: &Model<F>, s: &Settings) -> Result<Outcome> {
    let sq = the_square(model)?;
    let m_max = s.max_degree.saturating_sub(1) / 2;
    let mut text = String::new();
    let mut terms = Vec::new();
    for m in 0..=m_max {
        let t = five_term(sq, m, PROBE_DEGREE)?;
        let chain: Vec<String> = t.labels.iter().zip(&t.dims).map(|(l, d)| format!("{}={}", l, d)).collect();
        text.push_str(&format!("five-term m={}: 0 -> {} -> 0 (exact)\n", m, chain.join(" -> ")));
        terms.push(json!({ "level": m, "labels": t.labels, "dims": t.dims, "exact": t.exact }));
    }
    let hh = null_square_hh(sq, m_max, s.budget)?;
    let free = matches!(model.instance, Instance::Square { free_rank_one: true, .. });
    let closed = if free && !(sq.a.dim() == 1 && sq.b.dim() == 1) {
        let c = free_rank_one_dims(sq.a.dim(), sq.b.dim(), &hh.diagonal_a, &hh.diagonal_b, 2 * m_max + 1);
        if c != hh.dims {
            return Err(Error::Internal(format!("closed forms {:?} differ from {:?}", c, hh.dims)));
        }
        Some(c)
    } else {
        None
    };
    let bar = bar_dims(&sq.qset()?, s.max_degree.min(2 * m_max + 1), s.budget)?;
    if let Some(b) = &bar {
        if b[..] != hh.dims[..b.len()] {
            return Err(Error::Internal(format!("bar complex gives {:?}, the square gives {:?}", b, hh.dims)));
        }
    }
    let kernels: Vec<usize> = hh.levels.iter().map(|l| l.kernel()).collect();
    let cokernels: Vec<usize> = hh.levels.iter().map(|l| l.cokernel()).collect();
    text.push_str(&degree_table(&["HH", "HH(A)", "HH(B)"], &[&hh.dims, &hh.diagonal_a, &hh.diagonal_b]));
    text.push_str(&format!("\nrestricted connecting map: kernels {:?}, cokernels {:?}", kernels, cokernels));
    if closed.is_some() {
        text.push_str("\nfree rank one closed forms agree");
    }
    if bar.is_some() {
        text.push_str("\nbar complex agrees");
    }
    let levels: Vec<Value> = hh
        .levels
        .iter()
        .map(|l| json!({ "level": l.level, "domain": l.domain, "codomain": l.codomain, "rank": l.rank }))
        .collect();
    Ok(Outcome::ok(
        text,
        json!({
            "five_term": terms,
            "hh": hh.dims,
            "hh_a": hh.diagonal_a,
            "hh_b": hh.diagonal_b,
            "restricted_connecting": levels,
            "closed_form": closed,
            "bar": bar,
        }),
    ))
}

fn peirce<F: Field>(model: &Model<F>, _s: &Settings) -> Result<Outcome> {
    let (pq, sq) = match &model.instance {
        Instance::Peirce { quiver, square } => (quiver.clone(), square),
        Instance::Square { square, .. } => (peirce_square_of(square)?, square),
        _ => return Err(Error::Input("peirce needs a square or peirce instance".into())),
    };
    let cycle = efficient_cycles(&pq);
    let bound = nilpotence_bound(&pq);
    let (_, m) = square_bimodule(sq)?;
    let h = tensor_nilpotence(&m, bound)?;
    let powers = tensor_power_dims(&m, bound)?;
    if cycle.is_none() != h.is_some() {
        return Err(Error::Internal("efficient cycles and tensor nilpotence disagree".into()));
    }
    let rendered: Option<Vec<String>> = cycle.as_ref().map(|c| c.iter().map(|a| pq.render(*a)).collect());
    let verdict = match (&rendered, h) {
        (None, Some(h)) => format!("no efficient cycles; h = {}", h),
        (Some(c), _) => format!("efficient cycle {}; not nilpotent up to h = {}", c.join(" "), bound),
        (None, None) => unreachable!("checked above"),
    };
    let vertical: Vec<String> = pq
        .down
        .iter()
        .map(|(e, f, k)| (PeirceArrow::Down { e: *e, f: *f }, k))
        .chain(pq.up.iter().map(|(f, e, k)| (PeirceArrow::Up { f: *f, e: *e }, k)))
        .map(|(a, k)| if *k > 1 { format!("{} x{}", pq.render(a), k) } else { pq.render(a) })
        .collect();
    let text = format!(
        "upper floor: vertices {}, arrows {}\nlower floor: vertices {}, arrows {}\nvertical: {}\ntensor powers: {:?}\n{}",
        pq.upper.num_vertices(),
        pq.upper.num_arrows(),
        pq.lower.num_vertices(),
        pq.lower.num_arrows(),
        vertical.join(" "),
        powers,
        verdict
    );
    Ok(Outcome::ok(
        text,
        json!({
            "upper": pq.upper.vertices(),
            "lower": pq.lower.vertices(),
            "vertical": vertical,
            "efficient_cycle": rendered,
            "bound": bound,
            "tensor_power_dims": powers,
            "nilpotence": h,
        }),
    ))
}

fn solve_assoc<F: Field>(model: &Model<F>) -> Result<Outcome> {
    let sq = the_square(model)?;
    let dim = solve_associativity(&sq.a, &sq.b, &sq.m, &sq.n)?.dim();
    Ok(Outcome::ok(format!("associative corner products: dimension {}", dim), json!({ "dim": dim })))
}

fn random_cochain<F: Field>(f: &F, rng: &mut ChaCha8Rng, dim: usize) -> SparseVec<F::Elem> {
    if dim == 0 {
        return Vec::new();
    }
    let terms = rng.gen_range(1..=6);
    let entries = (0..terms).map(|_| (rng.gen_range(0..dim) as u32, f.from_i64(rng.gen_range(-3..=3)))).collect();
    normalize(f, entries)
}

struct Check {
    name: String,
    passed: bool,
    detail: String,
}

fn check(name: &str, r: Result<(bool, String)>) -> Check {
    match r {
        Ok((passed, detail)) => Check { name: name.into(), passed, detail },
        Err(e) => Check { name: name.into(), passed: false, detail: e.to_string() },
    }
}

fn verify<F: Field>(model: &Model<F>, s: &Settings) -> Result<Outcome> {
    let delta = model.qset()?;
    let n = s.max_degree;
    let j = relative(&delta, n, s.budget)?;
    let f = j.complex.field().clone();
    let mut checks = Vec::new();

    checks.push(check("differential squares to zero", {
        let bad: Vec<usize> = (0..j.complex.top() - 1)
            .filter(|k| !j.complex.differential(k + 1).mul(&f, j.complex.differential(*k)).is_zero())
            .collect();
        Ok((bad.is_empty(), format!("degrees 0..={}", j.complex.top())))
    }));
    let dims = j.complex.cohomology_dims();
    checks.push(check("bar complex agrees", {
        bar_dims(&delta, n, s.budget).map(|b| match b {
            Some(b) => (b == dims, format!("relative {:?}, bar {:?}", dims, b)),
            None => (true, "skipped: over budget".into()),
        })
    }));
    let q = delta.quiver();
    checks.push(check("trajectory counts are binomial", {
        let (cycles, noncycles) = enumerate_paths(q, n);
        let ok = cycles.iter().chain(&noncycles).all(|w| (0..=n).all(|k| trajectories(w, k).len() == binomial(k, w.len())));
        Ok((ok, format!("{} paths up to length {}", cycles.len() + noncycles.len(), n)))
    }));
    checks.push(check("graded Leibniz rule", {
        let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
        let top = j.complex.top();
        let mut bad = 0;
        for _ in 0..100 {
            let p = rng.gen_range(0..top);
            let r = rng.gen_range(0..top - p);
            let a = random_cochain(&f, &mut rng, j.complex.dim(p));
            let b = random_cochain(&f, &mut rng, j.complex.dim(r));
            if !leibniz_defect(&j, p, &a, r, &b)?.is_empty() {
                bad += 1;
            }
        }
        Ok((bad == 0, format!("{} failures in 100 random pairs", bad)))
    }));
    let seq = CohomologySequence::new(&delta, n);
    match &seq {
        Ok(seq) => {
            checks.push(check("long exact sequence is exact", les_report(seq, false).map(|r| (r.is_exact(), "maps on representatives".into()))));
            checks.push(check("connecting maps agree", {
                let mut ok = true;
                for k in 0..n {
                    ok &= seq.connecting_snake(k)? == seq.connecting_nabla(k)?;
                }
                Ok((ok, format!("degrees 0..{}", n)))
            }));
            checks.push(check("cup products", cup_checks(seq).map(|v| (v.holds(), format!("{:?}", v)))));
        }
        Err(e) => checks.push(Check { name: "long exact sequence".into(), passed: false, detail: e.to_string() }),
    }
    for a in 0..q.num_arrows() {
        let w = QPath::from_arrows(q, vec![a])?;
        checks.push(check(&format!("cohomology along {} is Ext", q.arrows()[a].label), {
            let direct = along_path_complex(&delta, &w, n)?.cohomology_dims();
            let ext = along_path_via_ext(&delta, &w, n.saturating_sub(1))?;
            Ok((direct[0] == 0 && direct[1..] == ext[..], format!("{:?}", ext)))
        }));
    }
    if let Some(sq) = model.square() {
        if sq.is_null() {
            checks.push(check("corners are projective", certify_projective(sq, PROBE_DEGREE).map(|_| (true, format!("Ext probes to degree {}", PROBE_DEGREE)))));
            checks.push(check("five-term sequence at level 0", five_term(sq, 0, PROBE_DEGREE).map(|t| (t.exact, format!("{:?}", t.dims)))));
            let m_max = n.saturating_sub(1) / 2;
            checks.push(check("null-square formula matches", {
                null_square_hh(sq, m_max, s.budget).map(|h| (h.dims[..] == dims[..h.dims.len()], format!("{:?}", h.dims)))
            }));
        }
        let pq = match &model.instance {
            Instance::Peirce { quiver, .. } => quiver.clone(),
            _ => peirce_square_of(sq)?,
        };
        checks.push(check("efficient cycles decide nilpotence", {
            let (_, m) = square_bimodule(sq)?;
            let h = tensor_nilpotence(&m, nilpotence_bound(&pq))?;
            let c = efficient_cycles(&pq);
            Ok((c.is_none() == h.is_some(), format!("cycle {}, h {:?}", c.is_some(), h)))
        }));
    }
    let passed = checks.iter().all(|c| c.passed);
    let rows: Vec<Vec<String>> =
        checks.iter().map(|c| vec![if c.passed { "PASS" } else { "FAIL" }.into(), c.name.clone(), c.detail.clone()]).collect();
    let result = json!({
        "passed": passed,
        "checks": checks.iter().map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail })).collect::<Vec<_>>(),
    });
    Ok(Outcome { text: table(&["", "check", "detail"], &rows), result, passed })
}
