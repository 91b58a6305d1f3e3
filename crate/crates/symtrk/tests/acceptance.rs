//! End-to-end acceptance gate. Each test covers one shipped guarantee and
//! prints a single PASS line once every check in it holds; a failure names
//! the first offending case via its assert message.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use std::collections::BTreeSet;
use symtrk::basis::OrderedBasis;
use symtrk::decomp::construct::{m2_construct, m3_construct, m4_construct_from_table};
use symtrk::decomp::fpoly::m3_f;
use symtrk::decomp::search::{search, SearchOutcome, SearchParams, SearchStrategy};
use symtrk::decomp::{build_sigma_star, frobenius_unique_criterion, solve_fq_constrained};
use symtrk::field::{Elt, Field};
use symtrk::linpoly::{rank_one_symmetric_all, LinearizedPoly};
use symtrk::matrix::MatrixGf;
use symtrk::multtensor::DecompositionCertificate;
use symtrk::refdata;
use symtrk::reproduce::{self, ReproTarget};
use symtrk::symcodes::{build_sqmd, singleton_bound, strk_exact, CoverOutcome, SymCode};

fn pass(n: u32, what: &str) {
    println!("PASS [criterion {n}] {what}");
}

#[test]
fn criterion_1_cubic_leading_term_table() {
    let report = reproduce::run(ReproTarget::Table2);
    assert!(
        report.all_pass(),
        "first mismatch: {:?}",
        report.first_failure()
    );
    assert_eq!(report.cells.len(), 11);
    pass(1, "reduced cubic leading terms match for all 11 recorded q");
}

#[test]
fn criterion_2_cubic_degree_formula() {
    for q in [19u64, 23] {
        let f = m3_f(q).expect("prime order");
        let want_deg = (17 * q * q + 9 * q + 4) as usize;
        assert_eq!(
            f.leading(),
            Some((q - 1, want_deg)),
            "degree or leading coefficient off at q={q}"
        );
    }
    pass(2, "deg f = 17q^2+9q+4 with leading coefficient -1 at q=19, 23");
}

#[test]
fn criterion_3_quartic_table_rows() {
    let report = reproduce::run(ReproTarget::Table4);
    assert!(
        report.all_pass(),
        "first mismatch: {:?}",
        report.first_failure()
    );
    for (q, want_rank) in [(2u64, 9usize), (3, 9), (4, 8), (5, 8)] {
        let cert = m4_construct_from_table(q).expect("recorded row solves");
        cert.verify().expect("certificate checks");
        assert_eq!(cert.rank(), want_rank, "rank at q={q}");
        assert_in_known_interval(q, 4, cert.rank() as u64);
    }
    pass(
        3,
        "quartic rows verify with R=9,9,8,8 and the printed q=4 row is flagged",
    );
}

#[test]
fn criterion_4_worked_examples_bit_exact() {
    for target in [
        ReproTarget::ExampleF16,
        ReproTarget::ExampleF9,
        ReproTarget::ExampleStrkF16,
    ] {
        let report = reproduce::run(target);
        assert!(
            report.all_pass(),
            "{}: first mismatch: {:?}",
            report.target,
            report.first_failure()
        );
    }
    pass(4, "all three worked examples reproduce matrix for matrix");
}

#[test]
fn criterion_5_small_case_optimality() {
    // order 4: three rank-one symmetric lines; three needed, two provably not
    let f4 = Field::standard(2, 2).unwrap();
    let gab4 = build_sqmd(&f4, 2).unwrap();
    match strk_exact(&gab4, 3, 1 << 20) {
        CoverOutcome::Exact { value: 3, .. } => {}
        other => panic!("expected exact 3, got {other:?}"),
    }
    match strk_exact(&gab4, 2, 1 << 20) {
        CoverOutcome::NoneWithin { rmax: 2, .. } => {}
        other => panic!("expected definitive no at 2, got {other:?}"),
    }

    // order 8: the full 5-tuple space fails, the cubic construction gives 6
    let f8 = Field::standard(2, 3).unwrap();
    let params = SearchParams {
        rank: 5,
        strategy: SearchStrategy::Exhaustive,
        ..SearchParams::default()
    };
    match search(&f8, &params).unwrap() {
        SearchOutcome::Exhausted { tested } => assert_eq!(tested, 21),
        other => panic!("expected a full sweep, got {other:?}"),
    }
    let gab8 = build_sqmd(&f8, 3).unwrap();
    match strk_exact(&gab8, 5, 1 << 20) {
        CoverOutcome::NoneWithin { rmax: 5, .. } => {}
        other => panic!("expected definitive no at 5, got {other:?}"),
    }
    let cert = m3_construct(&f8).unwrap();
    cert.verify().unwrap();
    assert_eq!(cert.rank(), 6);
    assert_eq!(refdata::recorded_interval(2, 3), Some((6, 6)));
    pass(
        5,
        "rank 3 is optimal at (2,2) and rank 6 at (2,3), both by full sweeps",
    );
}

/// A certificate rank is an upper bound for the minimal rank, so it can
/// never undercut the known lower bound; it matches the known upper bound
/// only where the closed-form construction is recorded as optimal.
fn assert_in_known_interval(q: u64, m: u32, rank: u64) {
    let b = refdata::known_interval(q, m).expect("prime power");
    assert!(
        rank >= b.lower,
        "rank {rank} below known lower bound {} at ({q},{m})",
        b.lower
    );
    if refdata::construction_optimal(q, m) {
        let u = b.upper.expect("optimal cases have a recorded value");
        assert!(
            rank <= u,
            "rank {rank} above known upper bound {u} at ({q},{m})"
        );
    }
}

#[test]
fn criterion_6_construction_totality() {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13] {
        let field = Field::standard(q, 2).unwrap();
        let cert = m2_construct(&field).unwrap();
        cert.verify().unwrap();
        assert_eq!(cert.rank(), 3, "quadratic rank at q={q}");
        assert_in_known_interval(q, 2, 3);
    }
    for q in [2u64, 3, 4, 5] {
        let field = Field::standard(q, 3).unwrap();
        let cert = m3_construct(&field).unwrap();
        cert.verify().unwrap();
        assert_eq!(cert.rank(), 6, "cubic rank at q={q}");
        assert_in_known_interval(q, 3, 6);
    }
    pass(
        6,
        "quadratic construction lands for nine q, cubic for four, all verified",
    );
}

#[test]
fn criterion_7_mrd_suite() {
    const CAP: u128 = 1 << 24;
    for (q, m, d) in [
        (2u64, 2usize, 2usize),
        (2, 3, 3),
        (2, 4, 2),
        (2, 4, 4),
        (3, 3, 3),
        (3, 4, 2),
    ] {
        let field = Field::standard(q, m).unwrap();
        let code = build_sqmd(&field, d).unwrap();
        assert_eq!(
            code.dim() as u64,
            singleton_bound(m, d).unwrap(),
            "dimension at ({q},{m},{d})"
        );
        assert_eq!(
            code.min_distance(CAP).unwrap(),
            d,
            "distance at ({q},{m},{d})"
        );
        assert!(code.is_mrd(CAP).unwrap(), "bound not met at ({q},{m},{d})");
    }
    pass(7, "all six codes meet the symmetric Singleton-type bound");
}

// criterion 8 helpers

fn all_polys(field: &Field) -> Vec<LinearizedPoly> {
    let m = field.ext_degree();
    let n = field.order();
    let total = n.pow(m as u32);
    (0..total)
        .map(|idx| {
            let mut rem = idx;
            let coeffs: Vec<Elt> = (0..m)
                .map(|_| {
                    let e = field.element(rem % n);
                    rem /= n;
                    e
                })
                .collect();
            LinearizedPoly::new(field, coeffs).expect("m coefficients")
        })
        .collect()
}

fn random_poly(field: &Field, rng: &mut ChaCha12Rng) -> LinearizedPoly {
    let m = field.ext_degree();
    let n = field.order() as u64;
    let coeffs: Vec<Elt> = (0..m)
        .map(|_| field.element(rng.gen_range(0..n) as u128))
        .collect();
    LinearizedPoly::new(field, coeffs).expect("m coefficients")
}

/// Tr(y f(z)) = Tr(z f^T(y)) on the given pairs. Both sides are bilinear
/// in (y, z), so holding on basis pairs already forces the identity.
fn trace_adjoint_holds(field: &Field, f: &LinearizedPoly, pairs: &[(Elt, Elt)]) -> bool {
    let adj = f.adjoint();
    pairs.iter().all(|(y, z)| {
        field.trace_to_base(&field.mul(y, &f.eval(z)))
            == field.trace_to_base(&field.mul(z, &adj.eval(y)))
    })
}

fn basis_pairs(field: &Field) -> Vec<(Elt, Elt)> {
    let b = OrderedBasis::power(field);
    let mut out = Vec::new();
    for y in b.elements() {
        for z in b.elements() {
            out.push((y.clone(), z.clone()));
        }
    }
    out
}

fn poly_key(f: &LinearizedPoly) -> Vec<u128> {
    let field = f.field();
    f.coeffs().iter().map(|c| field.index_of(c)).collect()
}

fn frobenius_stable(cert: &DecompositionCertificate) -> bool {
    let f = &cert.field;
    let m = f.ext_degree();
    let r = cert.rank();
    for i in 0..m {
        let sys = build_sigma_star(f, &cert.alphas, &cert.xi, i).expect("valid alphas");
        let x = MatrixGf::from_fn(f, r, 1, |j, _| f.embed(cert.coefficients.get(i, j)));
        for jpow in 0..m {
            let twisted = MatrixGf::from_fn(f, sys.matrix.rows(), r, |t, j| {
                f.frobenius_pow(sys.matrix.get(t, j), jpow)
            });
            let prod = twisted.mul(&x);
            for t in 0..sys.rhs.len() {
                if prod.get(t, 0) != &f.frobenius_pow(&sys.rhs[t], jpow) {
                    return false;
                }
            }
        }
    }
    true
}

fn solvers_agree(cert: &DecompositionCertificate) -> bool {
    let f = &cert.field;
    for i in 0..f.ext_degree() {
        let sys = build_sigma_star(f, &cert.alphas, &cert.xi, i).expect("valid alphas");
        let fast = frobenius_unique_criterion(&sys);
        let full = solve_fq_constrained(&sys);
        match (fast, full) {
            (Ok(a), Some(b)) if a == b => {}
            other => {
                eprintln!("solver disagreement on slice {i}: {other:?}");
                return false;
            }
        }
    }
    true
}

fn spans(code: &SymCode, mats: &[MatrixGf]) -> bool {
    let m = code.field().ext_degree();
    let base = code.field().base();
    let n = m * m;
    let stack = MatrixGf::from_fn(&base, n, mats.len(), |i, j| {
        mats[j].get(i / m, i % m).clone()
    });
    code.grams().iter().all(|g| {
        let flat: Vec<Elt> = (0..n).map(|i| g.get(i / m, i % m).clone()).collect();
        stack.solve(&flat).is_some()
    })
}

fn random_invertible(base: &Field, m: usize, rng: &mut ChaCha12Rng) -> MatrixGf {
    let q = base.order() as u64;
    loop {
        let p = MatrixGf::from_fn(base, m, m, |_, _| {
            base.element(rng.gen_range(0..q) as u128)
        });
        if p.inverse().is_some() {
            return p;
        }
    }
}

#[test]
fn criterion_8_property_suites() {
    // adjoint involution, trace-adjoint pairing, and rank isometry:
    // exhaustive on the three smallest fields
    for (q, m) in [(2u64, 2usize), (2, 3), (3, 2)] {
        let field = Field::standard(q, m).unwrap();
        let basis = OrderedBasis::power(&field);
        let pairs = basis_pairs(&field);
        for f in all_polys(&field) {
            assert_eq!(f.adjoint().adjoint(), f, "involution broke at ({q},{m})");
            assert!(
                trace_adjoint_holds(&field, &f, &pairs),
                "pairing broke at ({q},{m})"
            );
            assert_eq!(
                f.rank(),
                f.to_gram(&basis).rank(),
                "rank isometry broke at ({q},{m})"
            );
        }
    }
    // and randomized past 10^4 cases on the two next sizes
    let mut rng = ChaCha12Rng::seed_from_u64(2024);
    for (q, m) in [(2u64, 4usize), (3, 4)] {
        let field = Field::standard(q, m).unwrap();
        let basis = OrderedBasis::power(&field);
        let pairs = basis_pairs(&field);
        for _ in 0..10_000 {
            let f = random_poly(&field, &mut rng);
            assert_eq!(f.adjoint().adjoint(), f, "involution broke at ({q},{m})");
            assert!(
                trace_adjoint_holds(&field, &f, &pairs),
                "pairing broke at ({q},{m})"
            );
            assert_eq!(
                f.rank(),
                f.to_gram(&basis).rank(),
                "rank isometry broke at ({q},{m})"
            );
        }
    }

    // classification: the symmetric rank-one polynomials are exactly the
    // c a Tr(a x), by double enumeration
    for (q, m) in [(2u64, 2usize), (2, 3), (3, 2), (2, 4)] {
        let field = Field::standard(q, m).unwrap();
        let by_sweep: BTreeSet<Vec<u128>> = all_polys(&field)
            .into_iter()
            .filter(|f| !f.is_zero() && f.is_symmetric() && f.rank() == 1)
            .map(|f| poly_key(&f))
            .collect();
        let by_form: BTreeSet<Vec<u128>> = rank_one_symmetric_all(&field, 1 << 24)
            .unwrap()
            .map(|f| poly_key(&f))
            .collect();
        assert_eq!(by_sweep, by_form, "classification broke at ({q},{m})");
        assert_eq!(by_form.len(), (field.order() - 1) as usize);
    }

    // constructed systems stay solvable under every Frobenius twist, and
    // the square-system fast path agrees with coordinate expansion
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13] {
        let cert = m2_construct(&Field::standard(q, 2).unwrap()).unwrap();
        assert!(frobenius_stable(&cert), "stability broke at ({q},2)");
        assert!(solvers_agree(&cert), "solver equivalence broke at ({q},2)");
    }
    for q in [2u64, 3, 4, 5] {
        let cert = m3_construct(&Field::standard(q, 3).unwrap()).unwrap();
        assert!(frobenius_stable(&cert), "stability broke at ({q},3)");
        assert!(solvers_agree(&cert), "solver equivalence broke at ({q},3)");
    }
    for q in [2u64, 3, 4, 5] {
        let cert = m4_construct_from_table(q).unwrap();
        assert!(frobenius_stable(&cert), "stability broke at ({q},4)");
    }

    // congruence invariance: rank distance and strk witnesses carry across
    // P^T A P and back, 20 random P per code
    const CAP: u128 = 1 << 24;
    for (q, m, d, rmax) in [(2u64, 2usize, 2usize, 3usize), (2, 3, 3, 6)] {
        let field = Field::standard(q, m).unwrap();
        let code = build_sqmd(&field, d).unwrap();
        let dist = code.min_distance(CAP).unwrap();
        let witness = match strk_exact(&code, rmax, 1 << 22) {
            CoverOutcome::Exact { witness, .. } => witness,
            other => panic!("expected an exact cover, got {other:?}"),
        };
        let base = field.base();
        for _ in 0..20 {
            let p = random_invertible(&base, m, &mut rng);
            let moved = code.congruence_transform(&p).unwrap();
            assert_eq!(moved.min_distance(CAP).unwrap(), dist);
            let pt = p.transpose();
            let moved_witness: Vec<MatrixGf> =
                witness.iter().map(|a| pt.mul(&a.mul(&p))).collect();
            for w in &moved_witness {
                assert_eq!(w.rank(), 1);
                assert!(w.is_symmetric());
            }
            assert!(spans(&moved, &moved_witness), "witness lost at ({q},{m})");
            // and back again through the inverse
            let pinv = p.inverse().expect("invertible by construction");
            let back = moved.congruence_transform(&pinv).unwrap();
            let back_witness: Vec<MatrixGf> = moved_witness
                .iter()
                .map(|a| pinv.transpose().mul(&a.mul(&pinv)))
                .collect();
            assert!(spans(&back, &back_witness), "inverse lost at ({q},{m})");
            assert_eq!(back.grams(), code.grams());
        }
    }

    pass(
        8,
        "adjoint, isometry, classification, stability, solver, and congruence suites hold",
    );
}
