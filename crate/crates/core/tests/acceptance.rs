//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the process exits nonzero when any criterion fails.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use toricdeg::degeneration::{
    embed_value_semigroup, family_ideal, fiber, hilbert_witness, projection_limit, valuation_pipeline,
    value_semigroup, DegenOptions,
};
use toricdeg::fixtures::{self, value_polytope, Fixture};
use toricdeg::groebner::{buchberger, graded_dimensions, ring_map_kernel};
use toricdeg::intlat::homogenize_matrix;
use toricdeg::momentmap::{image_vs_polytope, sample_moment_image};
use toricdeg::polycore::{initial_form, integer, Convention};
use toricdeg::toric::{delta_polytope, toric_ideal, torus_point};
use toricdeg::{Coeff, Exponent, Ideal, IntMatrix, Polynomial, TermOrder, VarList};

type Outcome = Result<(), String>;

fn ensure(ok: bool, what: impl Into<String>) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn fixture(name: &str) -> Result<Fixture, String> {
    fixtures::load(name).map_err(e)
}

fn ideal_in(vars: &VarList, gens: &[&str]) -> Result<Ideal, String> {
    let names: Vec<&str> = vars.names().iter().map(String::as_str).collect();
    Ideal::parse(&names, gens).map_err(e)
}

fn same(a: &Ideal, b: &Ideal, what: &str) -> Outcome {
    ensure(a.same_ideal(b).map_err(e)?, format!("{what}: got {a}, expected {b}"))
}

fn opts(f: &Fixture) -> DegenOptions {
    DegenOptions {
        convention: f.convention,
        degree_bound: f.degree_bound,
        cancel: None,
    }
}

fn a1() -> Outcome {
    let f = fixture("gr24_gvector")?;
    let m = f.matrix.as_ref().ok_or("no matrix")?;
    let r = valuation_pipeline(&f.ideal, m, &opts(&f)).map_err(e)?;
    same(&r.init, &ideal_in(f.ideal.vars(), &["p13*p24 - p14*p23"])?, "init")?;
    ensure(r.binomial_prime, "init is not binomial prime")
}

fn a2() -> Outcome {
    let f = fixture("gr24_plabic")?;
    let m = f.matrix.as_ref().ok_or("no matrix")?;
    let r = valuation_pipeline(&f.ideal, m, &opts(&f)).map_err(e)?;
    same(&r.init, &ideal_in(f.ideal.vars(), &["p13*p24 - p14*p23"])?, "init")?;

    // x_ij ↦ p12^deg · (p13,p14,p23,p34)^ν(p_ij)
    let source = VarList::new(["x12", "x13", "x14", "x23", "x24", "x34"]);
    let target = Ideal::zero(&VarList::new(["p12", "p13", "p14", "p23", "p34"]));
    let rows = m.to_i64_rows().map_err(e)?;
    let images: Vec<Polynomial> = (0..source.len())
        .map(|j| {
            let mut ex = vec![1u32];
            ex.extend(rows.iter().map(|r| r[j] as u32));
            Polynomial::monomial(target.vars(), integer(1), Exponent::new(ex))
        })
        .collect();
    let kernel = ring_map_kernel(&source, &images, &target).map_err(e)?;
    let mut lifted = vec![vec![1i64; source.len()]];
    lifted.extend(rows);
    let toric = toric_ideal(&IntMatrix::from_rows(&lifted).map_err(e)?, &source).map_err(e)?;
    ensure(
        toric.gens() == kernel.gens(),
        format!("toric {toric} differs from kernel {kernel}"),
    )?;
    same(&kernel, &ideal_in(&source, &["x13*x24 - x14*x23"])?, "kernel")
}

fn a3() -> Outcome {
    let f = fixture("elliptic")?;
    let fam = family_ideal(&f.ideal, &[1, 0, 3], Convention::Min).map_err(e)?;
    let expected = ideal_in(&fam.vars, &["y^2*z - x^3 + t^4*x*z^2"])?;
    same(&fam.as_ideal(), &expected, "family")?;
    let f0 = fiber(&fam, &integer(0)).map_err(e)?;
    same(&f0, &ideal_in(f.ideal.vars(), &["y^2*z - x^3"])?, "fiber(0)")?;

    let m = f.matrix.as_ref().ok_or("no matrix")?;
    let mut o = opts(&f);
    o.degree_bound = 5;
    let r = embed_value_semigroup(&f.ideal, m, &o).map_err(e)?;
    let mut images: Vec<String> = r.images.iter().map(|i| i.monomial.clone()).collect();
    images.sort();
    ensure(images == ["y^2*z", "y^3", "z^3"], format!("images {images:?}"))?;
    let mut sg: Vec<Vec<i64>> = r
        .image_semigroup
        .gens()
        .iter()
        .map(|g| r.used_coords.iter().map(|&c| g[c]).collect())
        .collect();
    sg.sort();
    ensure(
        sg == vec![vec![0, 3], vec![2, 1], vec![3, 0]],
        format!("image semigroup {sg:?}"),
    )?;
    ensure(
        r.dims_checked.len() == 5 && r.dims_checked.iter().all(|d| d.dim_r == d.dim_semigroup),
        format!("dims {:?}", r.dims_checked),
    )
}

fn a4() -> Outcome {
    let f = fixture("hyperbola")?;
    let vars = f.ideal.vars();
    let r = projection_limit(&f.ideal, &[0, 2]).map_err(e)?;
    same(&r.limit, &ideal_in(vars, &["x*y"])?, "limit")?;
    same(&r.cone_part, &ideal_in(vars, &["x"])?, "cone part")?;
    ensure(r.closure.is_zero(), format!("closure {}", r.closure))
}

fn a5() -> Outcome {
    let f = fixture("twisted_cubic")?;
    let vars = f.ideal.vars();
    let keep: Vec<usize> = ["u3", "u2", "u0"].iter().map(|n| vars.index_of(n).unwrap()).collect();
    let r = projection_limit(&f.ideal, &keep).map_err(e)?;
    same(
        &r.limit,
        &ideal_in(vars, &["u3*u1", "u1^2", "u2*u1", "u2^3 - u3^2*u0"])?,
        "limit",
    )?;
    ensure(r.cone_part.is_unit().map_err(e)?, format!("cone part {}", r.cone_part))?;
    same(
        &r.closure,
        &Ideal::parse(&["u3", "u2", "u0"], &["u2^3 - u3^2*u0"]).map_err(e)?,
        "closure",
    )?;
    ensure(r.scheme_check, "scheme check failed")
}

fn a6() -> Outcome {
    let a = IntMatrix::from_rows(&[vec![1, 0, 3]]).map_err(e)?;
    let samples = sample_moment_image(&a, 2000, 42).map_err(e)?;
    let delta = value_polytope(&a);
    ensure(
        delta.vertices() == [vec![integer(0)], vec![integer(3)]],
        "polytope is not [0, 3]",
    )?;
    let c = image_vs_polytope(&samples, &delta, 1e-9).map_err(e)?;
    ensure(c.inside_fraction == 1.0, format!("inside fraction {}", c.inside_fraction))?;
    ensure(c.coverage_gap < 0.2, format!("coverage gap {}", c.coverage_gap))
}

fn a7() -> Outcome {
    let f = fixture("gr25_family")?;
    let m = f.matrix.as_ref().ok_or("no matrix")?;
    let r = valuation_pipeline(&f.ideal, m, &opts(&f)).map_err(e)?;
    let fam = family_ideal(&f.ideal, &r.w, f.convention).map_err(e)?;
    ensure(fam.gens.len() == 5, format!("{} family generators", fam.gens.len()))?;
    ensure(fam.gens.iter().all(|g| g.len() == 3), "family is not trinomial")?;
    let f1 = fiber(&fam, &integer(1)).map_err(e)?;
    same(&f1, &f.ideal, "fiber(1)")?;
    let f0 = fiber(&fam, &integer(0)).map_err(e)?;
    ensure(r.binomial_prime, "fiber(0) is not binomial prime")?;
    let toric = toric_ideal(&homogenize_matrix(m).map_err(e)?, f.ideal.vars()).map_err(e)?;
    same(&f0, &toric, "fiber(0) vs toric ideal")?;

    let s = value_semigroup(&f.ideal, m).map_err(e)?;
    let delta = delta_polytope(&s);
    let all = (0..s.len()).all(|i| {
        let v: Vec<Coeff> = s
            .value_part(i)
            .into_iter()
            .map(|x| Coeff::new(x.into(), s.degree(i).into()))
            .collect();
        delta.is_vertex(&v)
    });
    ensure(all && delta.vertices().len() == 10, "not every value vector is a vertex")
}

fn a8() -> Outcome {
    let f = fixture("elliptic_projection")?;
    let vars = f.ideal.vars();
    let mut kept: Vec<usize> = ["u_y2z", "u_y3", "u_z3"].iter().map(|n| vars.index_of(n).unwrap()).collect();
    kept.sort_unstable();
    let r = projection_limit(&f.ideal, &kept).map_err(e)?;
    // projected cubic inside the full space
    let mut gens: Vec<Polynomial> = r.closure.gens().iter().map(|g| g.remap(vars, &kept)).collect();
    gens.extend((0..vars.len()).filter(|v| !kept.contains(v)).map(|v| Polynomial::var(vars, v)));
    let projected = Ideal::new(vars, gens).map_err(e)?;
    let w = hilbert_witness(&r.limit, &projected, &[1, 2, 3, 4]).map_err(e)?;
    ensure(
        w.iter().any(|(_, a, b)| a != b),
        format!("graded dimensions agree up to 4: {w:?}"),
    )
}

fn shuffled_gb_unique(f: &Fixture, rng: &mut ChaCha8Rng) -> Outcome {
    let order = TermOrder::degrevlex(f.ideal.nvars());
    let reference = buchberger(&f.ideal, &order).map_err(e)?.elements();
    for _ in 0..20 {
        let mut gens = f.ideal.gens().to_vec();
        gens.shuffle(rng);
        let g = buchberger(&Ideal::new(f.ideal.vars(), gens).map_err(e)?, &order)
            .map_err(e)?
            .elements();
        ensure(g == reference, format!("{}: basis depends on generator order", f.name))?;
    }
    Ok(())
}

fn random_poly(vars: &VarList, rng: &mut ChaCha8Rng) -> Polynomial {
    let n = vars.len();
    let terms = (0..rng.gen_range(1..5)).map(|_| {
        let exp: Vec<u32> = (0..n).map(|_| rng.gen_range(0..3)).collect();
        (integer(rng.gen_range(-5..=5)), Exponent::new(exp))
    });
    Polynomial::from_terms(vars, terms)
}

fn p1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let all = fixtures::load_all().map_err(e)?;
    for f in &all {
        shuffled_gb_unique(f, &mut rng)?;
    }

    // flatness proxy on every family
    for f in all.iter().filter(|f| f.matrix.is_some()) {
        let r = valuation_pipeline(&f.ideal, f.matrix.as_ref().unwrap(), &opts(f)).map_err(e)?;
        let fam = family_ideal(&f.ideal, &r.w, f.convention).map_err(e)?;
        let d0 = graded_dimensions(&fiber(&fam, &integer(0)).map_err(e)?, 6).map_err(e)?;
        let d1 = graded_dimensions(&fiber(&fam, &integer(1)).map_err(e)?, 6).map_err(e)?;
        ensure(d0 == d1, format!("{}: fibers have different Hilbert functions", f.name))?;
    }

    // toric ideals vanish on torus points
    let mut matrices: Vec<IntMatrix> = all.iter().filter_map(|f| f.matrix.clone()).collect();
    matrices.extend(all.iter().filter_map(|f| f.moment.as_ref().map(|m| m.matrix.clone())));
    for a in &matrices {
        let names = VarList::new((0..a.cols()).map(|j| format!("x{j}")));
        let h = homogenize_matrix(a).map_err(e)?;
        let t = toric_ideal(&h, &names).map_err(e)?;
        for _ in 0..50 {
            let params: Vec<Coeff> = (0..h.rows())
                .map(|_| {
                    let mut n = rng.gen_range(-6i64..=6);
                    if n == 0 {
                        n = 7;
                    }
                    Coeff::new(n.into(), rng.gen_range(1i64..=4).into())
                })
                .collect();
            let pt = torus_point(&h, &params).map_err(e)?;
            ensure(
                t.gens().iter().all(|g| g.eval(&pt) == integer(0)),
                "toric generator does not vanish at a torus point",
            )?;
        }
    }

    // initial forms are multiplicative
    let vars = VarList::new(["a", "b", "c"]);
    for _ in 0..200 {
        let p = random_poly(&vars, &mut rng);
        let q = random_poly(&vars, &mut rng);
        if p.is_zero() || q.is_zero() {
            continue;
        }
        let w: Vec<i64> = (0..3).map(|_| rng.gen_range(-4..=4)).collect();
        for conv in [Convention::Min, Convention::Max] {
            let lhs = initial_form(&p.checked_mul(&q).map_err(e)?, &w, conv).map_err(e)?;
            let rhs = initial_form(&p, &w, conv)
                .map_err(e)?
                .checked_mul(&initial_form(&q, &w, conv).map_err(e)?)
                .map_err(e)?;
            ensure(lhs == rhs, format!("in_w(pq) != in_w(p) in_w(q) for {p} and {q}"))?;
        }
    }

    // seeded sampling is reproducible
    let a = IntMatrix::from_rows(&[vec![1, 0, 3]]).map_err(e)?;
    let s1 = sample_moment_image(&a, 100, 9).map_err(e)?;
    let s2 = sample_moment_image(&a, 100, 9).map_err(e)?;
    ensure(s1 == s2, "sampling is not deterministic")
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("A1", a1),
        ("A2", a2),
        ("A3", a3),
        ("A4", a4),
        ("A5", a5),
        ("A6", a6),
        ("A7", a7),
        ("A8", a8),
        ("P1", p1),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let r = check();
        let secs = start.elapsed().as_secs_f64();
        match r {
            Ok(()) => println!("PASS {name} ({secs:.2}s)"),
            Err(msg) => {
                failed += 1;
                println!("FAIL {name} ({secs:.2}s): {msg}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
