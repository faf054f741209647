//! The check suite: every structural claim becomes an exact pass/fail
//! computation with a counterexample report on failure.
//!
//! Checks never tolerate approximate residuals (any nonzero entry fails),
//! and failed reports carry the exact offending scalars so the residual can
//! be recomputed independently (see [`nijenhuis_residual_matrices`]).

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::cps::{Family, Member, Strip, Structure};
use crate::error::{Error, Result};
use crate::forms::{killing_form, trace_form, Signature, SymForm};
use crate::geometry::{curvature_biinvariant, proportionality_constant, ricci_biinvariant};
use crate::lie::{LieAlgebra, Subspace};
use crate::mat::Mat;
use crate::scalar::{format_rational, frac, rat, Rational};
use crate::{Coord, EndoOp, MatN};

/// Stable identifiers for the checks, in the order reports are emitted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CheckId {
    DimensionLaw,
    Involutions,
    NijenhuisP,
    NijenhuisJ,
    NijenhuisQ,
    EigenSubalgebras,
    ModuleDecomposition,
    ZCentralizer,
    KillingSignature,
    CompatCertificate,
    KillingCompatibility,
    Embeddings,
    Hypercomplex,
    Einstein,
}

impl CheckId {
    pub const ALL: [CheckId; 14] = [
        CheckId::DimensionLaw,
        CheckId::Involutions,
        CheckId::NijenhuisP,
        CheckId::NijenhuisJ,
        CheckId::NijenhuisQ,
        CheckId::EigenSubalgebras,
        CheckId::ModuleDecomposition,
        CheckId::ZCentralizer,
        CheckId::KillingSignature,
        CheckId::CompatCertificate,
        CheckId::KillingCompatibility,
        CheckId::Embeddings,
        CheckId::Hypercomplex,
        CheckId::Einstein,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::DimensionLaw => "dimension_law",
            CheckId::Involutions => "involutions",
            CheckId::NijenhuisP => "nijenhuis_p",
            CheckId::NijenhuisJ => "nijenhuis_j",
            CheckId::NijenhuisQ => "nijenhuis_q",
            CheckId::EigenSubalgebras => "eigen_subalgebras",
            CheckId::ModuleDecomposition => "module_decomposition",
            CheckId::ZCentralizer => "z_centralizer",
            CheckId::KillingSignature => "killing_signature",
            CheckId::CompatCertificate => "compat_certificate",
            CheckId::KillingCompatibility => "killing_compatibility",
            CheckId::Embeddings => "embeddings",
            CheckId::Hypercomplex => "hypercomplex",
            CheckId::Einstein => "einstein",
        }
    }

    pub fn from_name(name: &str) -> Option<CheckId> {
        CheckId::ALL.into_iter().find(|id| id.name() == name)
    }

    /// Whether the check is meaningful for the given structure.
    ///
    /// The metric-compatibility certificate concerns the su(m,m−1) trace form
    /// (also after realification); the hypercomplex triple needs the complex
    /// rotation; the embedding chain is stated for the real forms.
    pub fn applicable(self, s: &Structure) -> bool {
        match self {
            CheckId::CompatCertificate => s.family() == Family::SuPQ,
            CheckId::Hypercomplex => s.is_realified(),
            CheckId::Embeddings => !s.is_realified(),
            _ => true,
        }
    }
}

/// The default suite: every applicable check except the strict
/// `killing_compatibility`, whose exact-zero residual is unattainable over
/// the rationals for most m (see that check's facts) and which therefore
/// must be requested explicitly.
pub fn default_checks(s: &Structure) -> Vec<CheckId> {
    CheckId::ALL
        .into_iter()
        .filter(|id| id.applicable(s) && *id != CheckId::KillingCompatibility)
        .collect()
}

/// Counterexample data: basis indices involved, the exact residual scalars
/// (canonical strings), and a human-readable location note.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub indices: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub residual: Vec<String>,
    pub note: String,
}

impl Witness {
    pub fn note(note: impl Into<String>) -> Witness {
        Witness {
            indices: Vec::new(),
            residual: Vec::new(),
            note: note.into(),
        }
    }

    pub fn residual_at(indices: Vec<usize>, residual: &[Rational], note: impl Into<String>) -> Witness {
        Witness {
            indices,
            residual: residual.iter().map(format_rational).collect(),
            note: note.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub algebra: String,
    pub m: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub facts: BTreeMap<String, String>,
}

impl CheckReport {
    fn new(s: &Structure, id: CheckId) -> CheckReport {
        CheckReport {
            check: id.name().to_string(),
            algebra: s.algebra().name().to_string(),
            m: s.m(),
            passed: true,
            witness: None,
            facts: BTreeMap::new(),
        }
    }

    fn fact(&mut self, key: &str, value: impl Into<String>) {
        self.facts.insert(key.to_string(), value.into());
    }

    /// Record a failure, keeping the first witness.
    fn fail(&mut self, witness: Witness) {
        self.passed = false;
        if self.witness.is_none() {
            self.witness = Some(witness);
        }
    }
}

/// Run one check; `Err` means the check does not apply to this structure
/// (a configuration error, distinct from a failed report).
pub fn run_check(s: &Structure, id: CheckId) -> Result<CheckReport> {
    if !id.applicable(s) {
        return Err(Error::Domain(format!(
            "check {} does not apply to {}",
            id.name(),
            s.algebra().name()
        )));
    }
    Ok(match id {
        CheckId::DimensionLaw => check_dimension_law(s),
        CheckId::Involutions => check_involutions(s),
        CheckId::NijenhuisP => check_nijenhuis(s, NijOp::P),
        CheckId::NijenhuisJ => check_nijenhuis(s, NijOp::J),
        CheckId::NijenhuisQ => check_nijenhuis(s, NijOp::Q),
        CheckId::EigenSubalgebras => check_eigen_subalgebras(s),
        CheckId::ModuleDecomposition => check_module_decomposition(s),
        CheckId::ZCentralizer => check_z_centralizer(s),
        CheckId::KillingSignature => check_killing_signature(s),
        CheckId::CompatCertificate => check_compat_certificate(s),
        CheckId::KillingCompatibility => check_killing_compatibility(s),
        CheckId::Embeddings => check_embeddings(s),
        CheckId::Hypercomplex => check_hypercomplex(s),
        CheckId::Einstein => check_einstein(s),
    })
}

fn unit(dim: usize, i: usize) -> Coord {
    let mut v = vec![Rational::zero(); dim];
    v[i] = rat(1);
    v
}

fn op_column(op: &EndoOp, i: usize) -> Coord {
    (0..op.n()).map(|r| op[(r, i)].clone()).collect()
}

/// `op · v` skipping zero coordinates of `v`. The residual computations feed
/// mostly-zero bracket results through the operators, so this beats the dense
/// matrix-vector product by a factor of the dimension.
fn apply_sparse(op: &EndoOp, v: &[Rational]) -> Coord {
    let d = op.n();
    let mut out = vec![Rational::zero(); d];
    for (ci, val) in v.iter().enumerate() {
        if val.is_zero() {
            continue;
        }
        for r in 0..d {
            let e = &op[(r, ci)];
            if !e.is_zero() {
                out[r] += e.clone() * val.clone();
            }
        }
    }
    out
}

fn subspace_from_kernel(mat: &EndoOp) -> Subspace {
    let ker = mat.kernel();
    let rows: Vec<Coord> = (0..ker.rows()).map(|i| ker.row(i).to_vec()).collect();
    Subspace::from_generators(mat.cols(), &rows)
}

/// Exact λ-eigenspace of an operator, as a subspace.
pub fn eigenspace(op: &EndoOp, lambda: i64) -> Subspace {
    let shifted = op.clone() - EndoOp::identity(op.n()).scale(&rat(lambda));
    subspace_from_kernel(&shifted)
}

/// Expected trace form for the structure: ⟨X,Y⟩ = ½tr(XY) on the real forms,
/// its real part on realifications.
pub fn structure_trace_form(s: &Structure) -> SymForm {
    trace_form(s.algebra(), s.is_realified())
        .expect("trace form of these bases is real by construction")
}

fn check_dimension_law(s: &Structure) -> CheckReport {
    let mut rep = CheckReport::new(s, CheckId::DimensionLaw);
    let m = s.m();
    let base = 4 * m * m - 4 * m;
    let expected = if s.is_realified() { 2 * base } else { base };
    let dim = s.algebra().dim();
    if dim != expected {
        rep.fail(Witness::note(format!("dimension {dim}, expected {expected}")));
    }
    if s.labels().len() != dim {
        rep.fail(Witness::note("label count differs from dimension"));
    }
    for (i, l) in s.labels().iter().enumerate() {
        let ok = l.j >= 1
            && l.j <= m - 1
            && match l.k {
                None => true,
                Some(k) => l.j < k && k < 2 * m - l.j,
            };
        if !ok {
            rep.fail(Witness::note(format!("label {l} (index {i}) out of range")));
        }
    }
    for (i, mat) in s.algebra().basis().iter().enumerate() {
        if !mat.trace().is_zero() {
            rep.fail(Witness::note(format!("basis element {i} has nonzero trace")));
        }
    }
    rep.fact("dim", dim.to_string());
    rep.fact(
        "independence_and_closure",
        "established at build time: full coordinate rank, every bracket solved exactly",
    );
    rep
}

fn check_involutions(s: &Structure) -> CheckReport {
    let mut rep = CheckReport::new(s, CheckId::Involutions);
    let (p, j, q) = (&s.ops().p, &s.ops().j, &s.ops().q);
    let id = EndoOp::identity(p.n());
    let relations: [(&str, EndoOp, EndoOp); 9] = [
        ("P^2 = 1", p * p, id.clone()),
        ("Q^2 = 1", q * q, id.clone()),
        ("J^2 = -1", j * j, -id.clone()),
        ("JP = Q", j * p, q.clone()),
        ("PJ = -Q", p * j, -q.clone()),
        ("QP = J", q * p, j.clone()),
        ("PQ = -J", p * q, -j.clone()),
        ("QJ = P", q * j, p.clone()),
        ("JQ = -P", j * q, -p.clone()),
    ];
    for (name, got, want) in relations {
        if got != want {
            let diff = got - want;
            let bad = diff
                .entries()
                .find(|(_, _, v)| !v.is_zero())
                .map(|(r, c, v)| (r, c, v.clone()))
                .expect("unequal matrices differ somewhere");
            rep.fail(Witness::residual_at(
                vec![bad.0, bad.1],
                &[bad.2],
                format!("{name} fails"),
            ));
        }
    }
    for (name, op) in [("P", p), ("Q", q)] {
        let t = op.trace();
        if !t.is_zero() {
            rep.fail(Witness::residual_at(
                vec![],
                &[t],
                format!("trace {name} must vanish"),
            ));
        }
    }
    if !(p * j + j * p).is_zero() {
        rep.fail(Witness::note("PJ + JP != 0"));
    }
    rep
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum NijOp {
    P,
    J,
    Q,
}

impl NijOp {
    fn id(self) -> CheckId {
        match self {
            NijOp::P => CheckId::NijenhuisP,
            NijOp::J => CheckId::NijenhuisJ,
            NijOp::Q => CheckId::NijenhuisQ,
        }
    }

    fn of(self, s: &Structure) -> &EndoOp {
        match self {
            NijOp::P => &s.ops().p,
            NijOp::J => &s.ops().j,
            NijOp::Q => &s.ops().q,
        }
    }

    /// Sign of the bare [X,Y] term: +1 for product structures (A² = 1),
    /// −1 for complex structures (A² = −1).
    fn sign(self) -> i64 {
        match self {
            NijOp::J => -1,
            NijOp::P | NijOp::Q => 1,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            NijOp::P => "N_P",
            NijOp::J => "N_J",
            NijOp::Q => "N_Q",
        }
    }
}

/// N_A(e_a, e_b) in coordinates: [Ae_a, Ae_b] ± [e_a, e_b] − A[Ae_a, e_b] − A[e_a, Ae_b].
fn nijenhuis_residual(
    alg: &LieAlgebra,
    op: &EndoOp,
    sign: i64,
    a: usize,
    b: usize,
) -> Coord {
    let d = alg.dim();
    let (ea, eb) = (unit(d, a), unit(d, b));
    let (pa, pb) = (op_column(op, a), op_column(op, b));
    let mut r = alg.bracket_coords(&pa, &pb);
    let sgn = rat(sign);
    for (i, v) in alg.bracket_coords(&ea, &eb).into_iter().enumerate() {
        r[i] += sgn.clone() * v;
    }
    for (i, v) in apply_sparse(op, &alg.bracket_coords(&pa, &eb)).into_iter().enumerate() {
        r[i] -= v;
    }
    for (i, v) in apply_sparse(op, &alg.bracket_coords(&ea, &pb)).into_iter().enumerate() {
        r[i] -= v;
    }
    r
}

/// Independent matrix-level recomputation of the same residual, used to
/// validate failure witnesses against the carrier matrices.
pub fn nijenhuis_residual_matrices(
    alg: &LieAlgebra,
    op: &EndoOp,
    complex_type: bool,
    a: usize,
    b: usize,
) -> Result<MatN> {
    let apply = |x: &MatN| -> Result<MatN> {
        let coords = alg.coords_of(x)?;
        Ok(alg.matrix_of(&op.apply(&coords)))
    };
    let xa = &alg.basis()[a];
    let xb = &alg.basis()[b];
    let (pa, pb) = (apply(xa)?, apply(xb)?);
    let plain = xa.commutator(xb)?;
    let signed = if complex_type { -plain } else { plain };
    Ok(pa.commutator(&pb)? + signed - apply(&pa.commutator(xb)?)? - apply(&xa.commutator(&pb)?)?)
}

fn check_nijenhuis(s: &Structure, op: NijOp) -> CheckReport {
    let mut rep = CheckReport::new(s, op.id());
    let alg = s.algebra();
    let mat = op.of(s);
    let d = alg.dim();
    let mut pairs = 0usize;
    'outer: for a in 0..d {
        for b in a + 1..d {
            pairs += 1;
            let r = nijenhuis_residual(alg, mat, op.sign(), a, b);
            if r.iter().any(|v| !v.is_zero()) {
                rep.fail(Witness::residual_at(
                    vec![a, b],
                    &r,
                    format!("{}(e_{a}, e_{b}) != 0", op.symbol()),
                ));
                break 'outer;
            }
        }
    }
    rep.fact("pairs_checked", pairs.to_string());
    rep
}

fn check_eigen_subalgebras(s: &Structure) -> CheckReport {
    let mut rep = CheckReport::new(s, CheckId::EigenSubalgebras);
    let alg = s.algebra();
    let d = alg.dim();
    let half = d / 2;

    let closed = |rep: &mut CheckReport, name: &str, sub: &Subspace| {
        if sub.dim() != half {
            rep.fail(Witness::note(format!(
                "dim {name} = {}, expected {half}",
                sub.dim()
            )));
        }
        if let Some((a, b, r)) = alg.closure_witness(sub) {
            rep.fail(Witness::residual_at(
                vec![a, b],
                &r,
                format!("[{name}, {name}] escapes {name} at generators ({a}, {b})"),
            ));
        }
    };

    let p_plus = eigenspace(&s.ops().p, 1);
    let p_minus = eigenspace(&s.ops().p, -1);
    let q_plus = eigenspace(&s.ops().q, 1);
    let q_minus = eigenspace(&s.ops().q, -1);
    closed(&mut rep, "P+", &p_plus);
    closed(&mut rep, "P-", &p_minus);
    closed(&mut rep, "Q+", &q_plus);
    closed(&mut rep, "Q-", &q_minus);

    if p_plus.image_under(&s.ops().j) != p_minus {
        rep.fail(Witness::note("J(P+) != P-"));
    }
    for lambda in [1, -1] {
        if eigenspace(&s.ops().j, lambda).dim() != 0 {
            rep.fail(Witness::note(format!(
                "J has a real eigenvector for λ = {lambda}"
            )));
        }
    }

    if let Some(rot) = alg.complex_rotation() {
        // ±i eigenspaces of the (complex-linear) J inside 𝔤^ℂ, realized as
        // the real kernels of J ∓ I where I is the rotation X ↦ iX.
        for (name, sign) in [("J^{1,0}", 1i64), ("J^{0,1}", -1i64)] {
            let shifted = s.ops().j.clone() - rot.scale(&rat(sign));
            let space = subspace_from_kernel(&shifted);
            closed(&mut rep, name, &space);
            if !space.is_invariant_under(rot) {
                rep.fail(Witness::note(format!("{name} is not i-invariant")));
            }
        }
    }

    rep.fact("eigenspace_dim", half.to_string());
    rep
}

fn quad_generators(s: &Structure) -> Vec<Vec<Coord>> {
    let d = s.algebra().dim();
    let singles = s.m() - 1;
    let total = s.quads().len();
    let per_block = if s.is_realified() { total / 2 } else { total };
    s.quads()
        .iter()
        .enumerate()
        .map(|(qi, quad)| {
            let (block, local) = (qi / per_block, qi % per_block);
            if local < singles {
                // Single-index quadruple: the z-vector replaces the U-side.
                let src = &s.z_rows()[local];
                let mut z = vec![Rational::zero(); d];
                for (pos, v) in src.iter().enumerate() {
                    if !v.is_zero() {
                        z[pos + block * d / 2] = v.clone();
                    }
                }
                vec![z, unit(d, quad[1]), unit(d, quad[2]), unit(d, quad[3])]
            } else {
                quad.iter().map(|&i| unit(d, i)).collect()
            }
        })
        .collect()
}

/// Matrix of `op` restricted to the span of `gens`, provided the span is
/// invariant (columns are solved exactly in the generator basis).
fn restricted_matrix(op: &EndoOp, gens: &[Coord]) -> Result<Mat<Rational>> {
    let g = Mat::from_rows(gens.to_vec())?.transpose();
    let l = g.left_inverse()?;
    let k = gens.len();
    let mut r = Mat::zeros(k, k);
    for (i, gen) in gens.iter().enumerate() {
        let img = op.apply(gen);
        let coords = l.apply(&img);
        if g.apply(&coords) != img {
            return Err(Error::Domain("span is not invariant".into()));
        }
        for (row, v) in coords.into_iter().enumerate() {
            r.set(row, i, v);
        }
    }
    Ok(r)
}

fn check_module_decomposition(s: &Structure) -> CheckReport {
    let mut rep = CheckReport::new(s, CheckId::ModuleDecomposition);
    let alg = s.algebra();
    let d = alg.dim();
    let gens = quad_generators(s);
    let ops = [("P", &s.ops().p), ("J", &s.ops().j), ("Q", &s.ops().q)];

    let mut stacked: Vec<Coord> = Vec::with_capacity(d);
    let mut plane_confirmed = 0usize;
    for (qi, g) in gens.iter().enumerate() {
        let span = Subspace::from_generators(d, g);
        if span.dim() != 4 {
            rep.fail(Witness::note(format!("quadruple {qi} does not span 4 dims")));
            continue;
        }
        for (name, op) in ops {
            if !span.is_invariant_under(op) {
                rep.fail(Witness::note(format!("quadruple {qi} not {name}-invariant")));
            }
        }
        // Operator algebra span{1, P, J, Q} restricted to the quadruple has
        // rank exactly 4.
        let mut flat: Vec<Coord> = vec![Mat::<Rational>::identity(4)
            .entries()
            .map(|(_, _, v)| v.clone())
            .collect()];
        let mut js_squared_ok = true;
        for (name, op) in ops {
            match restricted_matrix(op, g) {
                Ok(r) => {
                    if name == "J" {
                        js_squared_ok = (&r * &r) == -Mat::identity(4);
                    }
                    flat.push(r.entries().map(|(_, _, v)| v.clone()).collect());
                }
                Err(_) => rep.fail(Witness::note(format!(
                    "quadruple {qi}: operator {name} does not restrict"
                ))),
            }
        }
        if flat.len() == 4 {
            let rank = Mat::from_rows(flat).expect("4x16 rows").rank();
            if rank != 4 {
                rep.fail(Witness::note(format!(
                    "operator algebra on quadruple {qi} has rank {rank}, expected 4"
                )));
            }
        }
        // J restricted has square −1, so no line is {P,J,Q}-invariant.
        if !js_squared_ok {
            rep.fail(Witness::note(format!("J² != −1 on quadruple {qi}")));
        }
        // The invariant plane span{Z+T, V−S}: a genuine proper invariant
        // subspace of every quadruple (the quadruple splits as two copies of
        // the standard 2-dimensional module of span{1,P,J,Q} ≅ M₂(ℝ)).
        let add = |x: &Coord, y: &Coord, sign: i64| -> Coord {
            x.iter()
                .zip(y)
                .map(|(a, b)| a.clone() + rat(sign) * b.clone())
                .collect()
        };
        let plane = Subspace::from_generators(
            d,
            &[add(&g[0], &g[3], 1), add(&g[1], &g[2], -1)],
        );
        if plane.dim() == 2
            && ops.iter().all(|(_, op)| plane.is_invariant_under(op))
        {
            plane_confirmed += 1;
        }
        stacked.extend(g.iter().cloned());
    }

    // The quadruples partition the algebra.
    let full = Subspace::from_generators(d, &stacked);
    if full.dim() != d {
        rep.fail(Witness::note("quadruple spans do not sum to the algebra"));
    }
    rep.fact("quadruples", gens.len().to_string());
    rep.fact(
        "invariant_line",
        "none: J restricts with J² = −1, which has no real eigenvector",
    );
    rep.fact(
        "invariant_plane",
        format!(
            "span{{Z+T, V−S}} is P,J,Q-invariant in {plane_confirmed}/{} quadruples \
             (the 4-dim quadruples are not irreducible: they split 2⊕2)",
            gens.len()
        ),
    );
    rep
}

fn check_z_centralizer(s: &Structure) -> CheckReport {
    let mut rep = CheckReport::new(s, CheckId::ZCentralizer);
    let alg = s.algebra();
    let d = alg.dim();
    let z = s.z_rows();
    for (i, zi) in z.iter().enumerate() {
        for (jj, zj) in z.iter().enumerate().skip(i + 1) {
            let r = alg.bracket_coords(zi, zj);
            if r.iter().any(|v| !v.is_zero()) {
                rep.fail(Witness::residual_at(
                    vec![i, jj],
                    &r,
                    format!("[Z^{}, Z^{}] != 0: 𝔷 not abelian", i + 1, jj + 1),
                ));
            }
        }
    }
    // [Z, A(X)] = A([Z, X]) for A ∈ {J, P}, the engine behind the
    // parametric family's integrability.
    for (name, op) in [("J", &s.ops().j), ("P", &s.ops().p)] {
        for (i, zi) in z.iter().enumerate() {
            for b in 0..d {
                let eb = unit(d, b);
                let lhs = alg.bracket_coords(zi, &op_column(op, b));
                let rhs = apply_sparse(op, &alg.bracket_coords(zi, &eb));
                let r: Coord = lhs
                    .into_iter()
                    .zip(rhs)
                    .map(|(l, rr)| l - rr)
                    .collect();
                if r.iter().any(|v| !v.is_zero()) {
                    rep.fail(Witness::residual_at(
                        vec![i, b],
                        &r,
                        format!("[Z^{}, {name}(e_{b})] != {name}([Z^{}, e_{b}])", i + 1, i + 1),
                    ));
                }
            }
        }
    }
    rep.fact("z_dim", z.len().to_string());
    rep
}

fn expected_signature(s: &Structure) -> Signature {
    let m = s.m();
    if s.is_realified() {
        let h = 4 * m * m - 4 * m;
        Signature { pos: h, neg: h, null: 0 }
    } else {
        match s.family() {
            // Killing of sl(n,ℝ): diag + symmetric part positive, antisymmetric
            // part negative: (n(n+1)/2 − 1, n(n−1)/2).
            Family::SlReal => {
                let n = 2 * m - 1;
                Signature {
                    pos: n * (n + 1) / 2 - 1,
                    neg: n * (n - 1) / 2,
                    null: 0,
                }
            }
            Family::SuPQ => {
                let h = 2 * m * m - 2 * m;
                Signature { pos: h, neg: h, null: 0 }
            }
        }
    }
}

fn check_killing_signature(s: &Structure) -> CheckReport {
    let mut rep = CheckReport::new(s, CheckId::KillingSignature);
    let alg = s.algebra();
    let n = 2 * s.m() - 1;
    let f = structure_trace_form(s);
    let b = killing_form(alg);
    // B = 2n·tr(XY) on both real forms; realification doubles it:
    // B_ℝ = 2·Re B_ℂ, while K = Re ⟨·,·⟩ halves, so B_ℝ = 8n·K.
    let c = if s.is_realified() { 8 * n } else { 4 * n };
    if *b.gram() != f.gram().scale(&rat(c as i64)) {
        rep.fail(Witness::note(format!(
            "Killing form is not {c}·(trace form)"
        )));
    }
    let sig = f.signature();
    let expected = expected_signature(s);
    if sig != expected {
        rep.fail(Witness::note(format!(
            "trace form signature {sig}, expected {expected}"
        )));
    }
    if b.is_degenerate() {
        rep.fail(Witness::note("Killing form is degenerate"));
    }
    rep.fact("signature", sig.to_string());
    rep.fact("killing_multiple", format!("B = {c}·⟨·,·⟩"));
    rep.fact(
        "neutral",
        if sig.pos == sig.neg && sig.null == 0 {
            "yes".to_string()
        } else {
            "no: such a form cannot be compatible with a complex product structure".to_string()
        },
    );
    rep
}

/// Positions grouped for the compatibility analysis: the structure's
/// single-index members, split by real/imaginary block.
fn member_positions(s: &Structure, member: Member) -> (Vec<usize>, Vec<usize>) {
    (
        s.single_indices(member, false),
        s.single_indices(member, true),
    )
}

fn compat_residuals(s: &Structure, f: &SymForm) -> (Mat<Rational>, Mat<Rational>) {
    let g = f.gram();
    let (p, j) = (&s.ops().p, &s.ops().j);
    let rj = &(&j.transpose() * g) * j - g.clone();
    let rp = &(&p.transpose() * g) * p + g.clone();
    (rj, rp)
}

fn is_perfect_square(n: usize) -> bool {
    let r = (n as f64).sqrt().round() as usize;
    r * r == n
}

fn check_compat_certificate(s: &Structure) -> CheckReport {
    let mut rep = CheckReport::new(s, CheckId::CompatCertificate);
    let f = structure_trace_form(s);
    let g = f.gram();
    let d = f.dim();
    let (rj, rp) = compat_residuals(s, &f);

    let (u_re, u_im) = member_positions(s, Member::U);
    let (v_re, v_im) = member_positions(s, Member::V);
    let (t_re, t_im) = member_positions(s, Member::T);
    let u_all: Vec<usize> = u_re.iter().chain(&u_im).copied().collect();
    let v_all: Vec<usize> = v_re.iter().chain(&v_im).copied().collect();
    let t_all: Vec<usize> = t_re.iter().chain(&t_im).copied().collect();

    let within = |rows: &[usize], a: usize, b: usize| rows.contains(&a) && rows.contains(&b);
    for (name, res, block) in [("J", &rj, &v_all), ("P", &rp, &t_all)] {
        for (a, b, v) in res.entries() {
            if v.is_zero() {
                continue;
            }
            if !(within(&u_all, a, b) || within(block, a, b)) {
                rep.fail(Witness::residual_at(
                    vec![a, b],
                    &[v.clone()],
                    format!("{name}-compatibility residual escapes the single-index U/{}-blocks",
                        if name == "J" { "V" } else { "T" }),
                ));
            }
        }
    }

    // The obstruction block: ⟨·,·⟩ on 𝔷 = span{U^j} is negative definite
    // (positive on the i-copies), so an exactly compatible rational choice of
    // z-basis needs Gram(Z) = −I, i.e. 2m−1 must be a rational square.
    let u_gram = |pos: &[usize]| {
        Mat::from_fn(pos.len(), pos.len(), |a, b| g[(pos[a], pos[b])].clone())
    };
    let sig_re = SymForm::new(u_gram(&u_re)).expect("symmetric").signature();
    if (sig_re.pos, sig_re.null) != (0, 0) {
        rep.fail(Witness::note(format!(
            "⟨·,·⟩ on span{{U^j}} is not negative definite: {sig_re}"
        )));
    }
    if s.is_realified() {
        let sig_im = SymForm::new(u_gram(&u_im)).expect("symmetric").signature();
        if (sig_im.neg, sig_im.null) != (0, 0) {
            rep.fail(Witness::note(format!(
                "⟨·,·⟩ on span{{iU^j}} is not positive definite: {sig_im}"
            )));
        }
    }

    // Away from the U-blocks the basis is orthogonal with norms ±1 exactly.
    let expected_norm = |i: usize| -> Rational {
        let l = &s.labels()[i];
        let base = match (l.member, l.k) {
            (Member::U, _) | (Member::V, _) => rat(-1),
            (Member::S, _) | (Member::T, _) => rat(1),
        };
        if l.im {
            -base
        } else {
            base
        }
    };
    for a in 0..d {
        for b in a..d {
            if within(&u_all, a, b) {
                continue;
            }
            let got = &g[(a, b)];
            let want = if a == b { expected_norm(a) } else { rat(0) };
            if *got != want {
                rep.fail(Witness::residual_at(
                    vec![a, b],
                    &[got.clone()],
                    format!("⟨e_{a}, e_{b}⟩ != {}", format_rational(&want)),
                ));
            }
        }
    }

    let sig = f.signature();
    if !(sig.pos == sig.neg && sig.null == 0) {
        rep.fail(Witness::note(format!("trace form not neutral: {sig}")));
    }

    let n = 2 * s.m() - 1;
    rep.fact("signature", sig.to_string());
    rep.fact(
        "rational_unit_z_exists",
        if is_perfect_square(n) {
            format!("yes: 2m−1 = {n} is a perfect square")
        } else {
            format!(
                "no: exact compatibility needs Gram(Z) = −1 on 𝔷, impossible over ℚ \
                 since det(−Gram(U)) = {n} is not a rational square"
            )
        },
    );
    rep.fact(
        "obstruction",
        "compatibility residuals are confined to the single-index U/V/T blocks; \
         over ℝ they vanish for an orthonormal z-basis"
            .to_string(),
    );
    rep
}

fn check_killing_compatibility(s: &Structure) -> CheckReport {
    let mut rep = CheckReport::new(s, CheckId::KillingCompatibility);
    let f = structure_trace_form(s);
    let (rj, rp) = compat_residuals(s, &f);
    for (name, res) in [("g(J·,J·) = g", &rj), ("g(P·,P·) = −g", &rp)] {
        if let Some((a, b, v)) = res.entries().find(|(_, _, v)| !v.is_zero()) {
            rep.fail(Witness::residual_at(
                vec![a, b],
                &[v.clone()],
                format!("{name} fails at basis pair ({a}, {b})"),
            ));
        }
    }
    if f.is_degenerate() {
        rep.fail(Witness::note("trace form is degenerate"));
    }
    let sig = f.signature();
    rep.fact("signature", sig.to_string());
    if s.family() == Family::SuPQ {
        let n = 2 * s.m() - 1;
        rep.fact(
            "exactly_attainable_over_Q",
            if is_perfect_square(n) {
                format!("yes (2m−1 = {n} is a square); pick a z-basis with Gram −1")
            } else {
                format!("no: needs √{n}; the certificate check isolates the obstruction")
            },
        );
    }
    if rep.passed {
        // Compatible pairs force isotropic P-eigenspaces; record it.
        for (name, lam) in [("P+", 1i64), ("P-", -1i64)] {
            let space = eigenspace(&s.ops().p, lam);
            let restricted = f.restrict(&space);
            if !restricted.gram().is_zero() {
                rep.fail(Witness::note(format!(
                    "{name} is not isotropic despite compatibility"
                )));
            }
        }
        rep.fact("isotropy", "P+ and P- are totally isotropic");
    }
    rep
}

fn check_embeddings(s: &Structure) -> CheckReport {
    let mut rep = CheckReport::new(s, CheckId::Embeddings);
    // The embedding claims concern the default structures; verify the whole
    // outer chain down to m = 2 plus the middle strip at the top level.
    let family = s.family();
    let mut chain = Vec::new();
    let mut current = match Structure::build(family, s.m()) {
        Ok(c) => c,
        Err(e) => {
            rep.fail(Witness::note(format!("rebuild failed: {e}")));
            return rep;
        }
    };

    loop {
        let alg = current.algebra().clone();
        for strip in [Strip::Outer, Strip::Middle] {
            let sub = current.strip_subspace(strip);
            if let Some((a, b, r)) = alg.closure_witness(&sub) {
                rep.fail(Witness::residual_at(
                    vec![a, b],
                    &r,
                    format!("{strip:?} strip at m = {} is not closed", current.m()),
                ));
            }
            for (name, op) in [
                ("P", &current.ops().p),
                ("J", &current.ops().j),
                ("Q", &current.ops().q),
            ] {
                if !sub.is_invariant_under(op) {
                    rep.fail(Witness::note(format!(
                        "{strip:?} strip at m = {} is not {name}-invariant",
                        current.m()
                    )));
                }
            }
        }

        // Middle strip: carrier of gl(2m−2,ℝ) resp. u(m−1,m−1); the removed
        // middle slot is trace-compensated, so matrices keep a diagonal
        // (m,m) entry but an otherwise empty middle row and column.
        let mm = current.m();
        let middle = current.strip_subspace(Strip::Middle);
        let expected_mid = (2 * mm - 2) * (2 * mm - 2);
        if middle.dim() != expected_mid {
            rep.fail(Witness::note(format!(
                "middle strip at m = {mm} has dim {}, expected {expected_mid}",
                middle.dim()
            )));
        }
        let carrier = match family {
            Family::SlReal => crate::cps::NAME_GL_REAL,
            Family::SuPQ => crate::cps::NAME_U_PQ,
        };
        if alg.subalgebra(carrier, &middle).is_err() {
            rep.fail(Witness::note(format!(
                "middle strip at m = {mm} does not materialize as a subalgebra"
            )));
        }
        for gi in 0..middle.dim() {
            let mat = alg.matrix_of(middle.gen(gi));
            let mid = mm - 1; // 0-based middle row/column
            let extra = mat
                .entries()
                .any(|(r, c, v)| (r == mid) != (c == mid) && !v.is_zero());
            if extra {
                rep.fail(Witness::note(format!(
                    "middle strip generator {gi} touches the middle row/column"
                )));
            }
        }

        chain.push(current.m());
        if current.m() == 2 {
            break;
        }

        // Identify the outer strip with the (m−1)-structure: same structure
        // constants and the same operator action under the index bijection.
        let idx = current.strip_indices(Strip::Outer);
        let smaller = match Structure::build(family, current.m() - 1) {
            Ok(sm) => sm,
            Err(e) => {
                rep.fail(Witness::note(format!("rebuild at m−1 failed: {e}")));
                return rep;
            }
        };
        if idx.len() != smaller.algebra().dim() {
            rep.fail(Witness::note(format!(
                "outer strip size {} != dim of the (m−1)-structure {}",
                idx.len(),
                smaller.algebra().dim()
            )));
            return rep;
        }
        let d = alg.dim();
        let small = smaller.algebra();
        for (ai, &a) in idx.iter().enumerate() {
            for (bi, &b) in idx.iter().enumerate() {
                let big_coords = alg.bracket_coords(&unit(d, a), &unit(d, b));
                let small_coords =
                    small.bracket_coords(&unit(small.dim(), ai), &unit(small.dim(), bi));
                let mut restricted = vec![Rational::zero(); small.dim()];
                for (pos, v) in big_coords.into_iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    match idx.iter().position(|&i| i == pos) {
                        Some(ci) => restricted[ci] = v,
                        None => rep.fail(Witness::note(format!(
                            "[e_{a}, e_{b}] leaves the outer strip at m = {}",
                            current.m()
                        ))),
                    }
                }
                if restricted != small_coords {
                    rep.fail(Witness::residual_at(
                        vec![a, b],
                        &restricted,
                        format!(
                            "outer-strip structure constants at m = {} differ from the \
                             (m−1)-structure at pair ({ai}, {bi})",
                            current.m()
                        ),
                    ));
                }
            }
        }
        for (name, big_op, small_op) in [
            ("P", &current.ops().p, &smaller.ops().p),
            ("J", &current.ops().j, &smaller.ops().j),
        ] {
            for (ci, &c) in idx.iter().enumerate() {
                for (ri, &r) in idx.iter().enumerate() {
                    if big_op[(r, c)] != small_op[(ri, ci)] {
                        rep.fail(Witness::note(format!(
                            "{name} restricted to the outer strip differs at ({ri}, {ci})"
                        )));
                    }
                }
            }
        }
        current = smaller;
    }

    rep.fact(
        "outer_chain",
        chain
            .iter()
            .map(|m| format!("m={m}"))
            .collect::<Vec<_>>()
            .join(" ⊃ "),
    );
    rep.fact("middle_carrier", match family {
        Family::SlReal => "gl(2m−2, ℝ), trace-compensated block embedding",
        Family::SuPQ => "u(m−1, m−1), trace-compensated block embedding",
    });
    rep
}

fn check_hypercomplex(s: &Structure) -> CheckReport {
    let mut rep = CheckReport::new(s, CheckId::Hypercomplex);
    let triple = match s.induce_hypercomplex() {
        Ok(t) => t,
        Err(e) => {
            rep.fail(Witness::note(format!("induction failed: {e}")));
            return rep;
        }
    };
    let alg = s.algebra();
    let d = alg.dim();
    for (name, op) in [("J1", &triple.j1), ("J2", &triple.j2), ("J3", &triple.j3)] {
        'pairs: for a in 0..d {
            for b in a + 1..d {
                let r = nijenhuis_residual(alg, op, -1, a, b);
                if r.iter().any(|v| !v.is_zero()) {
                    rep.fail(Witness::residual_at(
                        vec![a, b],
                        &r,
                        format!("N_{name}(e_{a}, e_{b}) != 0"),
                    ));
                    break 'pairs;
                }
            }
        }
    }
    rep.fact("quaternion_relations", "J1² = J2² = J3² = −1, J3 = J1J2 = −J2J1");
    rep
}

fn check_einstein(s: &Structure) -> CheckReport {
    let mut rep = CheckReport::new(s, CheckId::Einstein);
    let alg = s.algebra();
    let b = killing_form(alg);
    if b.is_degenerate() {
        rep.fail(Witness::note("Killing form is degenerate (not semisimple?)"));
        return rep;
    }
    let ric = ricci_biinvariant(alg);
    if *ric.gram() != b.gram().scale(&frac(-1, 4)) {
        rep.fail(Witness::note("Ric != −¼·B"));
    }
    match proportionality_constant(&ric, &b) {
        Ok(l) if l == frac(-1, 4) => rep.fact("einstein_constant_killing", "-1/4"),
        Ok(l) => rep.fail(Witness::residual_at(
            vec![],
            &[l],
            "einstein constant for the Killing metric is not −1/4",
        )),
        Err(e) => rep.fail(Witness::note(format!("{e}"))),
    }
    let f = structure_trace_form(s);
    let n = (2 * s.m() - 1) as i64;
    let expected = if s.is_realified() { rat(-2 * n) } else { rat(-n) };
    match proportionality_constant(&ric, &f) {
        Ok(l) if l == expected => {
            rep.fact("einstein_constant_trace_form", format_rational(&l));
        }
        Ok(l) => {
            let msg = format!(
                "einstein constant {}, expected {}",
                format_rational(&l),
                format_rational(&expected)
            );
            rep.fail(Witness::residual_at(vec![], &[l], msg));
        }
        Err(e) => rep.fail(Witness::note(format!("{e}"))),
    }
    let r = curvature_biinvariant(alg);
    match r.nonzero_witness() {
        Some((a, bb, c)) => {
            let comp = r.component(a, bb, c);
            let first = comp.iter().position(|v| !v.is_zero()).unwrap();
            rep.fact(
                "nonflat_witness",
                format!(
                    "R(e_{a}, e_{bb})e_{c} has coordinate {} = {}",
                    first,
                    format_rational(&comp[first])
                ),
            );
        }
        None => rep.fail(Witness::note("curvature tensor is identically zero")),
    }
    rep
}
