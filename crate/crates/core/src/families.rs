//! Named graph families, including the collinearity graph of the elliptic
//! quadric generalized quadrangle over a small prime field.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{parse_graph6, Graph};

/// `K_n`.
pub fn complete(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v);
        }
    }
    g
}

/// `K_{1,n-1}` with centre 0.
pub fn star(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for v in 1..n {
        g.add_edge(0, v);
    }
    g
}

/// Path on `n` vertices, `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for v in 1..n {
        g.add_edge(v - 1, v);
    }
    g
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("cycle needs n >= 3, got {n}")));
    }
    let mut g = path(n);
    g.add_edge(n - 1, 0);
    Ok(g)
}

/// The star `K_{1,n-1}` plus the edge between leaves 1 and 2.
pub fn u_n3(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("u_n3 needs n >= 3, got {n}")));
    }
    let mut g = star(n);
    g.add_edge(1, 2);
    Ok(g)
}

/// `C_k` with a private triangle glued on every cycle vertex. Cycle vertices
/// are `0..k`; the triangle on `i` uses `k + 2i` and `k + 2i + 1`.
pub fn c_k3(k: usize) -> Result<Graph> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!("c_k3 needs k >= 3, got {k}")));
    }
    let mut g = Graph::empty(3 * k);
    for i in 0..k {
        g.add_edge(i, (i + 1) % k);
        let (a, b) = (k + 2 * i, k + 2 * i + 1);
        g.add_edge(i, a);
        g.add_edge(i, b);
        g.add_edge(a, b);
    }
    Ok(g)
}

/// Identifies vertex `attach` of `tree` with vertex 0 of a `cycle_len`-cycle.
/// The remaining tree vertices follow the cycle in ascending order.
pub fn unicyclic_glue(tree: &Graph, cycle_len: usize, attach: usize) -> Result<Graph> {
    if !tree.is_tree() {
        return Err(Error::InvalidParameter("glued graph must be a tree".into()));
    }
    if attach >= tree.n() {
        return Err(Error::VertexOutOfRange {
            vertex: attach,
            n: tree.n(),
        });
    }
    let ring = cycle(cycle_len)?;
    let mut glued = Graph::empty(cycle_len + tree.n() - 1);
    for (u, v) in ring.edges() {
        glued.add_edge(u, v);
    }
    let label = |t: usize| -> usize {
        match t.cmp(&attach) {
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Less => cycle_len + t,
            std::cmp::Ordering::Greater => cycle_len + t - 1,
        }
    };
    for (u, v) in tree.edges() {
        glued.add_edge(label(u), label(v));
    }
    Ok(glued)
}

/// `complement(h)` joined with a second copy of `complement(h)`; `h` must be
/// regular.
pub fn join_complement(h: &Graph) -> Result<Graph> {
    if h.regular_degree().is_none() {
        return Err(Error::InvalidParameter(
            "join_complement needs a regular graph".into(),
        ));
    }
    let hc = h.complement();
    Ok(hc.join(&hc))
}

/// `K_1` joined with `k` disjoint edges.
pub fn friendship(k: usize) -> Graph {
    let mut g = Graph::empty(2 * k + 1);
    for i in 0..k {
        g.add_edge(0, 2 * i + 1);
        g.add_edge(0, 2 * i + 2);
        g.add_edge(2 * i + 1, 2 * i + 2);
    }
    g
}

pub fn petersen() -> Graph {
    let mut g = Graph::empty(10);
    for i in 0..5 {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(i, i + 5);
        g.add_edge(5 + i, 5 + (i + 2) % 5);
    }
    g
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Spectrum parameters `k^1 r^f a^g` of the collinearity graph of a
/// generalized quadrangle of order `(q, q^2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GqSpectrumParams {
    pub q: u64,
    pub k: i64,
    pub r: i64,
    pub a: i64,
    pub f: u64,
    pub g: u64,
    pub n_pred: u64,
    pub m_pred: u64,
}

impl GqSpectrumParams {
    pub fn s_plus(&self) -> i64 {
        self.k * self.k + self.f as i64 * self.r * self.r
    }

    pub fn s_minus(&self) -> i64 {
        self.g as i64 * self.a * self.a
    }

    /// The predicted eigenvalues, descending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut out = vec![self.k as f64];
        out.extend(std::iter::repeat_n(self.r as f64, self.f as usize));
        out.extend(std::iter::repeat_n(self.a as f64, self.g as usize));
        out
    }

    fn check(&self) -> Result<()> {
        let (k, r, a) = (self.k, self.r, self.a);
        let (f, g) = (self.f as i64, self.g as i64);
        let ok = self.n_pred as i64 == 1 + f + g
            && k + f * r + g * a == 0
            && k * k + f * r * r + g * a * a == 2 * self.m_pred as i64
            && 2 * self.m_pred == self.n_pred * k as u64;
        if ok {
            Ok(())
        } else {
            Err(Error::Internal(format!("inconsistent GQ parameters {self:?}")))
        }
    }
}

pub fn gq_predicted_spectrum(q: u64) -> Result<GqSpectrumParams> {
    if !is_prime(q) {
        return Err(Error::InvalidParameter(format!("q = {q} is not prime")));
    }
    if q > 100 {
        return Err(Error::InvalidParameter(format!("q = {q} overflows the parameter arithmetic")));
    }
    let qi = q as i64;
    let k = qi * (qi * qi + 1);
    let n_pred = (q + 1) * (q * q * q + 1);
    let params = GqSpectrumParams {
        q,
        k,
        r: qi - 1,
        a: -qi * qi - 1,
        f: q * q * (q * q + 1),
        g: q * (q * q - q + 1),
        n_pred,
        m_pred: n_pred * k as u64 / 2,
    };
    params.check()?;
    Ok(params)
}

pub const MAX_GQ_Q: u64 = 3;

/// Coefficients `(b, c)` of an irreducible `x² + bxy + cy²` over `F_q`.
fn irreducible_binary_form(q: u64) -> (u64, u64) {
    for b in 0..q {
        for c in 1..q {
            let anisotropic = (0..q)
                .flat_map(|x| (0..q).map(move |y| (x, y)))
                .filter(|&(x, y)| (x, y) != (0, 0))
                .all(|(x, y)| (x * x + b * x * y + c * y * y) % q != 0);
            if anisotropic {
                return (b, c);
            }
        }
    }
    unreachable!("every finite field has an irreducible quadratic")
}

/// Collinearity graph of the elliptic quadric `Q⁻(5, q)`: the projective
/// points of `x0x1 + x2x3 + p(x4, x5) = 0`, with `p` irreducible, adjacent
/// iff distinct and orthogonal under the polar bilinear form.
pub fn gq_collinearity_graph(q: u64) -> Result<Graph> {
    if !is_prime(q) {
        return Err(Error::InvalidParameter(format!("q = {q} is not prime")));
    }
    if q > MAX_GQ_Q {
        return Err(Error::InvalidParameter(format!(
            "q = {q} exceeds the supported maximum {MAX_GQ_Q}"
        )));
    }
    let (b, c) = irreducible_binary_form(q);
    let quad = |x: &[u64; 6]| (x[0] * x[1] + x[2] * x[3] + x[4] * x[4] + b * x[4] * x[5] + c * x[5] * x[5]) % q;
    let polar = |x: &[u64; 6], y: &[u64; 6]| {
        (x[0] * y[1] + x[1] * y[0] + x[2] * y[3] + x[3] * y[2]
            + 2 * x[4] * y[4]
            + b * (x[4] * y[5] + x[5] * y[4])
            + 2 * c * x[5] * y[5])
            % q
    };

    let mut points: Vec<[u64; 6]> = Vec::new();
    let total = q.pow(6);
    for code in 1..total {
        let mut x = [0u64; 6];
        let mut rest = code;
        for slot in x.iter_mut().rev() {
            *slot = rest % q;
            rest /= q;
        }
        // projective representative: first non-zero coordinate is 1
        if x.iter().find(|&&v| v != 0) != Some(&1) {
            continue;
        }
        if quad(&x) == 0 {
            points.push(x);
        }
    }

    let mut g = Graph::empty(points.len());
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if polar(&points[i], &points[j]) == 0 {
                g.add_edge(i, j);
            }
        }
    }
    let expected = (q + 1) * (q * q * q + 1);
    if g.n() as u64 != expected {
        return Err(Error::Internal(format!(
            "quadric has {} points, expected {expected}",
            g.n()
        )));
    }
    Ok(g)
}

/// Builds a family member from its CLI name and parameters, e.g.
/// `("cycle", ["5"])` or `("unicyclic_glue", ["Bg", "5", "0"])`.
pub fn build_family(name: &str, params: &[&str]) -> Result<Graph> {
    let int = |i: usize| -> Result<usize> {
        let raw = params
            .get(i)
            .ok_or_else(|| Error::InvalidParameter(format!("{name}: missing parameter {}", i + 1)))?;
        raw.trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("{name}: `{raw}` is not an integer")))
    };
    let arity = |k: usize| -> Result<()> {
        if params.len() == k {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "{name} takes {k} parameter(s), got {}",
                params.len()
            )))
        }
    };
    match name {
        "complete" => arity(1).and_then(|_| Ok(complete(int(0)?))),
        "star" => arity(1).and_then(|_| Ok(star(int(0)?))),
        "path" => arity(1).and_then(|_| Ok(path(int(0)?))),
        "cycle" => arity(1).and_then(|_| cycle(int(0)?)),
        "u_n3" => arity(1).and_then(|_| u_n3(int(0)?)),
        "c_k3" => arity(1).and_then(|_| c_k3(int(0)?)),
        "friendship" => arity(1).and_then(|_| Ok(friendship(int(0)?))),
        "empty" => arity(1).and_then(|_| Ok(Graph::empty(int(0)?))),
        "petersen" => arity(0).map(|_| petersen()),
        "gq" => arity(1).and_then(|_| gq_collinearity_graph(int(0)? as u64)),
        "join_complement" => {
            arity(1)?;
            join_complement(&resolve_inner(params[0])?)
        }
        "unicyclic_glue" => {
            arity(3)?;
            unicyclic_glue(&resolve_inner(params[0])?, int(1)?, int(2)?)
        }
        other => Err(Error::InvalidParameter(format!("unknown family `{other}`"))),
    }
}

/// Nested graph argument: `petersen`, `cycle/5` style family, or graph6.
fn resolve_inner(raw: &str) -> Result<Graph> {
    if raw == "petersen" {
        return Ok(petersen());
    }
    if let Some((name, arg)) = raw.split_once('/') {
        return build_family(name, &[arg]);
    }
    parse_graph6(raw)
}

pub const FAMILY_NAMES: &[&str] = &[
    "complete",
    "star",
    "path",
    "cycle",
    "u_n3",
    "c_k3",
    "friendship",
    "empty",
    "petersen",
    "gq",
    "join_complement",
    "unicyclic_glue",
];
