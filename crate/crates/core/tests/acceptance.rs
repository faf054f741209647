//! Acceptance suite: one test per exit criterion. Each test prints a single
//! PASS line or panics with every failing part and its exact witness.

use cps_core::cps::{seeded_z_basis, unit_gram_z_basis, Family, Structure};
use cps_core::fixture::{dump, Fixture};
use cps_core::forms::{killing_form, Signature};
use cps_core::geometry::einstein_constant;
use cps_core::lie::Subspace;
use cps_core::scalar::rat;
use cps_core::verify::{eigenspace, run_check, structure_trace_form, CheckId, CheckReport};
use cps_core::{Coord, Rational};
use num_traits::Zero;

const REAL_FAMILIES: [Family; 2] = [Family::SlReal, Family::SuPQ];

struct Criterion {
    label: &'static str,
    parts: usize,
    failures: Vec<String>,
}

impl Criterion {
    fn new(label: &'static str) -> Criterion {
        Criterion {
            label,
            parts: 0,
            failures: Vec::new(),
        }
    }

    fn part(&mut self, desc: impl Into<String>, ok: bool) {
        self.parts += 1;
        if !ok {
            self.failures.push(desc.into());
        }
    }

    fn report(&mut self, rep: &CheckReport) {
        let mut desc = format!("check {} on {} (m = {})", rep.check, rep.algebra, rep.m);
        if let Some(w) = &rep.witness {
            desc.push_str(": ");
            desc.push_str(&w.note);
            if !w.residual.is_empty() {
                desc.push_str(&format!(" [residual {}]", w.residual.join(", ")));
            }
        }
        self.part(desc, rep.passed);
    }

    fn finish(self) {
        if self.failures.is_empty() {
            println!("criterion {}: PASS ({} parts)", self.label, self.parts);
        } else {
            println!(
                "criterion {}: FAIL ({} of {} parts)",
                self.label,
                self.failures.len(),
                self.parts
            );
            panic!(
                "criterion {}: FAIL ({} of {} parts)\n  - {}",
                self.label,
                self.failures.len(),
                self.parts,
                self.failures.join("\n  - ")
            );
        }
    }
}

fn build(family: Family, m: usize) -> Structure {
    Structure::build(family, m).unwrap()
}

fn run(c: &mut Criterion, s: &Structure, id: CheckId) {
    c.report(&run_check(s, id).unwrap());
}

/// Criteria 2 and 3 as reusable parts: the quadruple relations, the three
/// Nijenhuis tensors, and the eigenspace subalgebra criterion.
fn integrability_parts(c: &mut Criterion, s: &Structure) {
    for id in [
        CheckId::Involutions,
        CheckId::NijenhuisP,
        CheckId::NijenhuisJ,
        CheckId::NijenhuisQ,
        CheckId::EigenSubalgebras,
    ] {
        run(c, s, id);
    }
}

#[test]
fn criterion_01_dimension_law() {
    let mut c = Criterion::new("01 dimension law");
    for m in 2..=5 {
        for family in REAL_FAMILIES {
            let s = build(family, m);
            c.part(
                format!("{} m={m}: dim == 4m^2-4m", family.name()),
                s.algebra().dim() == 4 * m * m - 4 * m,
            );
            run(&mut c, &s, CheckId::DimensionLaw);
        }
    }
    c.finish();
}

#[test]
fn criterion_02_integrability() {
    let mut c = Criterion::new("02 integrability of (P, J, Q)");
    for m in 2..=5 {
        for family in REAL_FAMILIES {
            let s = build(family, m);
            for id in [
                CheckId::Involutions,
                CheckId::NijenhuisP,
                CheckId::NijenhuisJ,
                CheckId::NijenhuisQ,
            ] {
                run(&mut c, &s, id);
            }
        }
    }
    c.finish();
}

#[test]
fn criterion_03_eigenspace_subalgebras() {
    let mut c = Criterion::new("03 eigenspace subalgebras");
    for m in 2..=5 {
        for family in REAL_FAMILIES {
            let s = build(family, m);
            run(&mut c, &s, CheckId::EigenSubalgebras);
            let half = 2 * m * m - 2 * m;
            for (name, op, lam) in [
                ("P+", &s.ops().p, 1i64),
                ("P-", &s.ops().p, -1),
                ("Q+", &s.ops().q, 1),
                ("Q-", &s.ops().q, -1),
            ] {
                c.part(
                    format!("{} m={m}: dim {name} == {half}", family.name()),
                    eigenspace(op, lam).dim() == half,
                );
            }
        }
    }
    c.finish();
}

#[test]
fn criterion_04_parametric_family() {
    let mut c = Criterion::new("04 parametric z-basis family");
    for m in 2..=5 {
        for family in REAL_FAMILIES {
            for seed in 1..=5u64 {
                let rows = seeded_z_basis(m, seed);
                let s = Structure::build_parametric(family, m, &rows).unwrap();
                integrability_parts(&mut c, &s);
                // [Z, J(X)] = J([Z, X]) and [Z, P(X)] = P([Z, X]) exactly.
                run(&mut c, &s, CheckId::ZCentralizer);
            }
        }
    }
    c.finish();
}

#[test]
fn criterion_05_realified_structures() {
    let mut c = Criterion::new("05 realified structures");
    for m in 2..=4 {
        for family in REAL_FAMILIES {
            let s = build(family, m).complexified().unwrap();
            c.part(
                format!("{} m={m} realified: dim == 2(4m^2-4m)", family.name()),
                s.algebra().dim() == 2 * (4 * m * m - 4 * m),
            );
            integrability_parts(&mut c, &s);
        }
    }
    c.finish();
}

/// The su(m,m−1) member probed for exact metric compatibility: the
/// orthonormalized z-basis member when one exists over ℚ (2m−1 a perfect
/// square), the default member otherwise.
fn best_su_member(m: usize) -> Structure {
    match unit_gram_z_basis(m) {
        Some(rows) => Structure::build_parametric(Family::SuPQ, m, &rows).unwrap(),
        None => build(Family::SuPQ, m),
    }
}

#[test]
fn criterion_06_metric_compatibility() {
    let mut c = Criterion::new("06 compatible neutral metrics");
    for m in 2..=5 {
        // Signature of the trace form and its Killing multiple.
        run(&mut c, &build(Family::SuPQ, m), CheckId::KillingSignature);
        // Strict compatibility g(J.,J.) = g, g(P.,P.) = -g on su(m,m-1).
        let rep = run_check(&best_su_member(m), CheckId::KillingCompatibility).unwrap();
        c.report(&rep);
    }
    for m in 2..=4 {
        let r = build(Family::SuPQ, m).complexified().unwrap();
        run(&mut c, &r, CheckId::KillingSignature);
        let rep = run_check(&r, CheckId::KillingCompatibility).unwrap();
        c.report(&rep);
    }
    {
        // Where 2m-1 is a perfect square the realified compatibility is
        // exactly attainable too.
        let r = best_su_member(5).complexified().unwrap();
        let rep = run_check(&r, CheckId::KillingCompatibility).unwrap();
        c.report(&rep);
    }
    for m in 2..=5 {
        let s = build(Family::SlReal, m);
        run(&mut c, &s, CheckId::KillingSignature);
        let n = 2 * m - 1;
        let expected = Signature {
            pos: n * (n + 1) / 2 - 1,
            neg: n * (n - 1) / 2,
            null: 0,
        };
        c.part(
            format!("sl_real m={m}: Killing signature == {expected}"),
            killing_form(s.algebra()).signature() == expected,
        );
        let rep = run_check(&s, CheckId::KillingCompatibility).unwrap();
        c.part(
            format!("sl_real m={m}: non-neutral form admits no compatible pairing"),
            !rep.passed,
        );
    }
    c.finish();
}

fn isotropy_parts(c: &mut Criterion, s: &Structure, desc: &str) {
    let f = structure_trace_form(s);
    for (name, lam) in [("P+", 1i64), ("P-", -1)] {
        let sub = eigenspace(&s.ops().p, lam);
        let restricted = f.restrict(&sub);
        c.part(
            format!("{desc}: {name} totally isotropic"),
            restricted.gram().is_zero(),
        );
    }
}

#[test]
fn criterion_07_isotropic_eigenspaces() {
    let mut c = Criterion::new("07 isotropic P-eigenspaces");
    for m in 2..=5 {
        let s = best_su_member(m);
        isotropy_parts(&mut c, &s, &format!("su_pq m={m}"));
    }
    for m in 2..=4 {
        let r = build(Family::SuPQ, m).complexified().unwrap();
        isotropy_parts(&mut c, &r, &format!("sl_complex_realified m={m}"));
    }
    isotropy_parts(
        &mut c,
        &best_su_member(5).complexified().unwrap(),
        "sl_complex_realified m=5 (orthonormal z)",
    );
    c.finish();
}

#[test]
fn criterion_08_hypercomplex_triple() {
    let mut c = Criterion::new("08 induced hypercomplex triple");
    for m in 2..=3 {
        for family in REAL_FAMILIES {
            let r = build(family, m).complexified().unwrap();
            run(&mut c, &r, CheckId::Hypercomplex);
        }
    }
    c.finish();
}

#[test]
fn criterion_09_embedding_chains() {
    let mut c = Criterion::new("09 embedding chains");
    for m in 2..=4 {
        for family in REAL_FAMILIES {
            run(&mut c, &build(family, m), CheckId::Embeddings);
        }
    }
    c.finish();
}

#[test]
fn criterion_10_einstein_property() {
    let mut c = Criterion::new("10 Einstein property");
    for m in 2..=3 {
        let s = build(Family::SuPQ, m);
        run(&mut c, &s, CheckId::Einstein);
        let lambda = einstein_constant(s.algebra(), &structure_trace_form(&s)).unwrap();
        c.part(
            format!("su_pq m={m}: einstein constant == -(2m-1)"),
            lambda == rat(-((2 * m - 1) as i64)),
        );
        let r = s.complexified().unwrap();
        run(&mut c, &r, CheckId::Einstein);
    }
    c.finish();
}

#[test]
fn criterion_11_quadruple_modules() {
    let mut c = Criterion::new("11 quadruple modules");
    let mut structures: Vec<Structure> = Vec::new();
    for m in 2..=5 {
        for family in REAL_FAMILIES {
            structures.push(build(family, m));
        }
    }
    for m in 2..=4 {
        structures.push(build(Family::SuPQ, m).complexified().unwrap());
    }
    for s in &structures {
        run(&mut c, s, CheckId::ModuleDecomposition);
        // Literal irreducibility: no proper nonzero {P,J,Q}-invariant
        // subspace of any quadruple. Probe the candidate plane
        // span{Z+T, V-S} of the first quadruple.
        let d = s.algebra().dim();
        let quad = s.quads()[0];
        let mut z = s.z_rows()[0].clone();
        z.resize(d, Rational::zero());
        let t: Coord = (0..d).map(|i| if i == quad[3] { rat(1) } else { rat(0) }).collect();
        let vs: Coord = (0..d)
            .map(|i| {
                if i == quad[1] {
                    rat(1)
                } else if i == quad[2] {
                    rat(-1)
                } else {
                    rat(0)
                }
            })
            .collect();
        let zt: Coord = z.iter().zip(&t).map(|(a, b)| a.clone() + b.clone()).collect();
        let plane = Subspace::from_generators(d, &[zt, vs]);
        let invariant = plane.dim() == 2
            && [&s.ops().p, &s.ops().j, &s.ops().q]
                .into_iter()
                .all(|op| plane.is_invariant_under(op));
        c.part(
            format!(
                "{} (m = {}): quadruple [{}] has no proper invariant subspace \
                 (counterexample: the plane span{{Z^1+T^1, V^1-S^1}} is {}invariant)",
                s.algebra().name(),
                s.m(),
                quad.map(|i| s.labels()[i].to_string()).join(", "),
                if invariant { "" } else { "not " },
            ),
            !invariant,
        );
    }
    c.finish();
}

#[test]
fn criterion_12_deterministic_fixtures() {
    let mut c = Criterion::new("12 deterministic fixtures");
    let configs: Vec<(&str, Structure)> = vec![
        ("sl_real m=2", build(Family::SlReal, 2)),
        ("su_pq m=3", build(Family::SuPQ, 3)),
        (
            "su_pq m=3 seed=7",
            Structure::build_parametric(Family::SuPQ, 3, &seeded_z_basis(3, 7)).unwrap(),
        ),
        (
            "sl_complex_realified m=2",
            build(Family::SuPQ, 2).complexified().unwrap(),
        ),
    ];
    for (name, s) in &configs {
        let first = Fixture::from_structure(s).to_json().unwrap();
        let second = Fixture::from_structure(s).to_json().unwrap();
        c.part(format!("{name}: repeated serialization byte-identical"), first == second);
    }
    // Through the filesystem as well.
    let dir = std::env::temp_dir().join("cps-acceptance-fixtures");
    let (a, b) = (dir.join("a.json"), dir.join("b.json"));
    dump(&configs[1].1, &a).unwrap();
    dump(&build(Family::SuPQ, 3), &b).unwrap();
    c.part(
        "two dumps of the same config are byte-identical on disk",
        std::fs::read(&a).unwrap() == std::fs::read(&b).unwrap(),
    );
    std::fs::remove_dir_all(&dir).ok();
    c.finish();
}
