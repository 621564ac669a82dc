//! Acceptance suite. Prints one PASS/FAIL line per criterion to stderr,
//! bypassing the test harness's output capture.
//!
//! Every comparison is exact: dimensions and ranks are integers computed over
//! the rationals, so the tolerance is zero throughout.

use std::collections::BTreeMap;
use std::io::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use lefrank::cohomology::{
    hard_lefschetz, lef_fil_equiv_report, lefschetz_bmodule, omega_on_h1, pairing_factors, poincare_graded_pairing,
    weak_lefschetz,
};
use lefrank::constructions::{blowup_bmodule, catalog, catalog_symplectic, product, projective_space, torus};
use lefrank::filtration::{
    canonical_filtration, check_axioms, filtration_dims, is_rank_saturated, saturation_level,
};
use lefrank::laws;
use lefrank::linalg::q;
use lefrank::module::{equivariant_hom_basis, random_bmodule, random_gmodule, tensor_subspace};
use lefrank::spectral::{certify_csplitting, gap_certificate, FibrationSpec, Route, PAGES_AXIOM};
use lefrank::{BModule, GModule, GradedHom, SymplecticData};

type Outcome = Result<String, String>;
type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ring_fixtures() -> Vec<(String, SymplecticData)> {
    let mut out = Vec::new();
    for n in 1..=4 {
        out.push((format!("cp{n}"), SymplecticData::from_named_class(projective_space(n), "omega").unwrap()));
    }
    for k in [2, 4, 6] {
        out.push((format!("torus{k}"), SymplecticData::from_named_class(torus(k), "omega").unwrap()));
    }
    for name in [
        "kodaira-thurston",
        "salamon-0-0-0-0-12-13",
        "salamon-0-0-0-12-13-23",
        "salamon-0-0-12-13-14-15",
    ] {
        out.push((name.into(), catalog_symplectic(name).unwrap()));
    }
    let kt = catalog("kodaira-thurston").unwrap().ring().unwrap();
    out.push((
        "kodaira-thurston x torus2".into(),
        SymplecticData::from_named_class(product(&kt, &torus(2)), "omega").unwrap(),
    ));
    out.push((
        "cp1 x cp1".into(),
        SymplecticData::from_named_class(product(&projective_space(1), &projective_space(1)), "omega").unwrap(),
    ));
    out
}

fn module_fixtures(rings: &[(String, SymplecticData)]) -> Vec<(String, BModule)> {
    let mut out: Vec<(String, BModule)> = rings.iter().map(|(n, s)| (n.clone(), s.bmodule())).collect();
    let kt = catalog_symplectic("kodaira-thurston").unwrap();
    out.push(("blowup of CP^5 along KT".into(), blowup_bmodule(&kt, 5, 3).unwrap()));
    out.push(("zero".into(), BModule::zero()));
    out.push(("L(3)".into(), GModule::irreducible(3).into_base()));
    out.push(("L(2) shifted by 5".into(), GModule::irreducible(2).into_base().shift(5)));
    out
}

fn random_modules(count: u64) -> impl Iterator<Item = (u64, BModule)> {
    (0..count).map(|seed| (seed, random_bmodule(seed, 8, 10)))
}

fn criterion_1(fixtures: &[(String, BModule)]) -> Outcome {
    let mut checked = 0;
    let named = fixtures.iter().map(|(n, v)| (n.clone(), v.clone()));
    let random = random_modules(240).map(|(s, v)| (format!("seed {s}"), v));
    for (name, v) in named.chain(random) {
        let f = canonical_filtration(&v);
        check_axioms(&v, &f).map_err(|e| format!("{name}: {e:?}"))?;
        let table = filtration_dims(&v).map_err(|e| format!("{name}: {e}"))?;
        for m in f.lo() - 2..=f.hi() + 2 {
            ensure(table.level_dims(m) == f.level_dims(m), || format!("{name}: level {m} dims differ"))?;
        }
        ensure(table.total_dim() == v.total_dim(), || format!("{name}: multiplicities miss dimensions"))?;
        checked += 1;
    }
    Ok(format!("{checked} modules ({} fixtures, 240 random)", fixtures.len()))
}

fn criterion_2() -> Outcome {
    let mut pairs = 0;
    for seed in 0..120u64 {
        let v = random_bmodule(2 * seed, 4, 5);
        let w = random_bmodule(2 * seed + 1, 4, 5);
        let k = (seed % 9) as i64 - 4;
        let at = |law: &str, r: laws::LawResult| r.map_err(|e| format!("pair {seed}, {law}: {e}"));
        at("dual", laws::dual_law(&v))?;
        at("direct sum", laws::direct_sum_law(&v, &w))?;
        at("tensor", laws::tensor_law(&v, &w))?;
        at("shift", laws::shift_law(&v, k))?;
        pairs += 1;
    }
    Ok(format!("{pairs} pairs: dual, direct sum, tensor, shift"))
}

fn combination(basis: &[GradedHom], seed: u64) -> Option<GradedHom> {
    let first = basis.first()?;
    let mut maps = BTreeMap::new();
    for k in first.source.weights() {
        let mut acc = first.map_at(k).scale(&q(0));
        for (i, h) in basis.iter().enumerate() {
            let c = ((seed as i64 + 3 * i as i64) % 5) - 2;
            acc = acc.add(&h.map_at(k).scale(&q(c))).unwrap();
        }
        maps.insert(k, acc);
    }
    Some(GradedHom::new(first.source.clone(), first.target.clone(), first.shift, maps).unwrap())
}

fn criterion_3() -> Outcome {
    let (mut bhoms, mut shifted, mut nonzero) = (0, 0, 0);
    let mut seed = 0u64;
    while bhoms < 100 || shifted < 100 {
        let v = random_bmodule(seed, 4, 5);
        let w = random_bmodule(seed + 10_000, 4, 5);
        // V embeds in V ⊕ W, so the hom space is never zero.
        let target = v.direct_sum(&w);
        if let Some(phi) = combination(&equivariant_hom_basis(&v, &target, 0), seed) {
            ensure(phi.is_bhom().unwrap(), || format!("seed {seed}: not a b-hom"))?;
            laws::hom_law(&phi).map_err(|e| format!("seed {seed}: {e}"))?;
            nonzero += usize::from(phi.source.weights().any(|k| phi.map_at(k).rank() > 0));
            bhoms += 1;
        }
        let shift = 2 * ((seed % 5) as i64 - 2);
        if let Some(phi) = combination(&equivariant_hom_basis(&v, &target.shift(shift), shift), seed) {
            ensure(phi.is_shifted_equivariant(shift).unwrap(), || format!("seed {seed}: not equivariant"))?;
            laws::hom_law(&phi).map_err(|e| format!("seed {seed}, shift {shift}: {e}"))?;
            shifted += 1;
        }
        seed += 1;
    }
    ensure(nonzero > 50, || format!("only {nonzero} nonzero b-homs"))?;
    Ok(format!("{bhoms} b-homs ({nonzero} nonzero), {shifted} shifted maps"))
}

fn criterion_4(rings: &[(String, SymplecticData)], fixtures: &[(String, BModule)]) -> Outcome {
    let mut levels = 0;
    let named = fixtures.iter().map(|(n, v)| (n.clone(), v.clone()));
    let random = random_modules(100).map(|(s, v)| (format!("seed {s}"), v));
    for (name, v) in named.chain(random) {
        let f = canonical_filtration(&v);
        let lo = v.space().min_weight().unwrap_or(0) - 2;
        let hi = v.space().max_weight().unwrap_or(0) + 2;
        for m in lo..=hi {
            let by_filtration = f.total_dim(m) == v.total_dim();
            ensure(by_filtration == is_rank_saturated(&v, m), || format!("{name}: level {m}"))?;
            levels += 1;
        }
    }
    for (name, s) in rings {
        for m in -1..=s.ring().dim() as i64 + 1 {
            let r = lef_fil_equiv_report(s.ring(), s.omega(), m);
            ensure(r.consistent(), || format!("{name}: {r:?}"))?;
        }
    }
    Ok(format!("{levels} (module, level) checks, {} rings", rings.len()))
}

fn criterion_5() -> Outcome {
    let s = catalog_symplectic("kodaira-thurston").map_err(|e| e.to_string())?;
    ensure(s.ring().betti() == vec![1, 3, 4, 3, 1], || format!("betti {:?}", s.ring().betti()))?;
    ensure(omega_on_h1(&s) == (2, false), || format!("omega on H^1: {:?}", omega_on_h1(&s)))?;
    ensure(!hard_lefschetz(&s) && weak_lefschetz(&s), || "verdicts".into())?;
    let v = s.bmodule();
    let sat = saturation_level(&v).map_err(|e| e.to_string())?;
    ensure((sat.lo, sat.hi) == (1, 3), || format!("lo/hi {sat:?}"))?;
    let f = canonical_filtration(&v);
    let totals: Vec<usize> = (0..=3).map(|m| f.total_dim(m)).collect();
    ensure(totals == vec![0, 1, 11, 12], || format!("totals {totals:?}"))?;
    let t = filtration_dims(&v).map_err(|e| e.to_string())?;
    let c = [(1, 0, 1), (2, 0, 3), (2, 1, 2), (2, 2, 1), (3, 0, 1)];
    for (m, d, n) in c {
        ensure(t.get(m, d) == n, || format!("c[{m}][{d}] = {}", t.get(m, d)))?;
    }
    let nonzero: usize = t.entries().values().map(|r| r.values().filter(|&&x| x > 0).count()).sum();
    ensure(nonzero == c.len(), || format!("{nonzero} nonzero multiplicities"))?;
    Ok("betti, ranks, verdicts, jumps, totals and multiplicities".into())
}

fn criterion_6() -> Outcome {
    for n in 0..=6usize {
        let alpha = if n == 0 { vec![] } else { vec![q(1)] };
        let ring = projective_space(n);
        let s = SymplecticData::new(ring.clone(), alpha.clone()).map_err(|e| e.to_string())?;
        ensure(hard_lefschetz(&s) && weak_lefschetz(&s), || format!("cp{n}: verdicts"))?;
        let sat = saturation_level(&s.bmodule()).map_err(|e| e.to_string())?;
        ensure((sat.lo, sat.hi) == (n as i64, n as i64), || format!("cp{n}: {sat:?}"))?;
        for m in -1..=2 * n as i64 + 1 {
            let p = poincare_graded_pairing(&ring, &alpha, m);
            let full = p.matrix.rows() == p.matrix.cols() && p.matrix.rank() == p.matrix.rows();
            ensure(p.nondegenerate && full, || format!("cp{n}: pairing at level {m}"))?;
        }
    }
    Ok("N = 0..6".into())
}

fn criterion_7(rings: &[(String, SymplecticData)]) -> Outcome {
    for (name, s) in rings {
        let ring = s.ring();
        let f = canonical_filtration(&s.bmodule());
        let n = ring.dim() as i64;
        ensure(f.lo() + f.hi() == n, || format!("{name}: lo + hi = {}", f.lo() + f.hi()))?;
        for m in -1..=n + 1 {
            ensure(pairing_factors(ring, &f, m), || format!("{name}: V_m pairs with V_(n-m-1) at {m}"))?;
            let p = poincare_graded_pairing(ring, s.omega(), m);
            let square = p.matrix.rows() == p.matrix.cols();
            ensure(square && p.nondegenerate, || format!("{name}: factored pairing at {m}"))?;
        }
    }
    Ok(format!("{} rings", rings.len()))
}

fn criterion_8() -> Outcome {
    let s = catalog_symplectic("kodaira-thurston").map_err(|e| e.to_string())?;
    let (big, k) = (5usize, 3usize);
    let x = blowup_bmodule(&s, big, k).map_err(|e| e.to_string())?;
    ensure(x.total_dim() == 30, || format!("dim {}", x.total_dim()))?;
    let f = canonical_filtration(&x);
    check_axioms(&x, &f).map_err(|e| format!("{e:?}"))?;
    // CP^N contributes all of itself from level N on; the summand M ⊗ W with
    // W = H*(CP^{k-2})[2] has level m equal to Σ M_i ⊗ W_j over i + j = m.
    let cp = lefschetz_bmodule(&projective_space(big), &[q(1)]);
    let w = lefschetz_bmodule(&projective_space(k - 2), &[q(1)]).shift(2);
    let m_mod = s.bmodule();
    let mw = m_mod.tensor(&w);
    let (fm, fw) = (canonical_filtration(&m_mod), canonical_filtration(&w));
    let (wlo, whi) = (fw.lo(), fw.hi());
    for m in 0..=2 * big as i64 + 1 {
        let mut expected = if m >= big as i64 { cp.total_dim() } else { 0 };
        for weight in mw.weights() {
            let mut piece = lefrank::Subspace::zero(mw.dim(weight));
            for j in wlo - 1..=whi {
                let t = tensor_subspace(&m_mod, &w, weight, &fm.level(m - j), &fw.level(j));
                piece = piece.sum(&t).unwrap();
            }
            expected += piece.dim();
        }
        ensure(f.total_dim(m) == expected, || format!("level {m}: {} vs {expected}", f.total_dim(m)))?;
    }
    let n = big as i64;
    let x_hard = f.lo() == n && f.hi() == n;
    let x_weak = f.hi() <= n + 1;
    ensure(x_hard == hard_lefschetz(&s) && !x_hard, || "hard transfer".into())?;
    ensure(x_weak == weak_lefschetz(&s) && x_weak, || "weak transfer".into())?;
    Ok(format!("dim 30, lo={} hi={}, hard false/false, weak true/true", f.lo(), f.hi()))
}

fn convolution(fiber: &[usize], base: &[usize]) -> Vec<usize> {
    let mut out = vec![0; fiber.len() + base.len() - 1];
    for (q, a) in fiber.iter().enumerate() {
        for (p, b) in base.iter().enumerate() {
            out[p + q] += a * b;
        }
    }
    out
}

fn criterion_9(bin: &Path, dir: &Path) -> Outcome {
    let cp2 = SymplecticData::from_named_class(projective_space(2), "omega").unwrap();
    let kt = catalog_symplectic("kodaira-thurston").unwrap();
    let run = |s: &SymplecticData, base: Vec<usize>| {
        certify_csplitting(&FibrationSpec::new(s.clone(), base).unwrap()).unwrap()
    };
    let c = run(&cp2, vec![1, 0, 1]);
    ensure(c.certified && c.route == Route::HardLefschetz && c.r0 == 2, || format!("cp2: {c:?}"))?;
    ensure(c.axioms.is_empty(), || "cp2 uses no axiom".into())?;
    let c = run(&kt, vec![1, 0, 1]);
    ensure(c.certified && c.route == Route::WeakLefschetz && c.r0 == 4, || format!("kt: {c:?}"))?;
    ensure(c.axioms == vec![PAGES_AXIOM.to_string()], || "kt axiom".into())?;
    let blow = gap_certificate(&blowup_bmodule(&kt, 5, 3).unwrap(), 4).map_err(|e| e.to_string())?;
    ensure(blow.certified && blow.hi - blow.lo == 2, || format!("blowup: {blow:?}"))?;
    ensure(!gap_certificate(&blowup_bmodule(&kt, 5, 3).unwrap(), 3).unwrap().certified, || "blowup r0=3".into())?;

    let fil = catalog_symplectic("salamon-0-0-12-13-14-15").unwrap();
    ensure(!omega_on_h1(&fil).1, || "negative control is injective on H^1".into())?;
    ensure(!run(&fil, vec![1, 0, 1]).certified, || "negative control certified".into())?;

    let bases = [vec![1], vec![1, 2, 1]];
    let mut certified = 0;
    for (_, s) in ring_fixtures() {
        for base in &bases {
            let c = run(&s, base.clone());
            if let Some(t) = &c.total_betti {
                ensure(*t == convolution(&s.ring().betti(), base), || "total betti".into())?;
                certified += 1;
            }
        }
    }

    let lie = dir.join("filiform.lie.json");
    let out = Command::new(bin).args(["catalog", "get", "salamon-0-0-12-13-14-15"]).output().unwrap();
    std::fs::write(&lie, &out.stdout).unwrap();
    let out = Command::new(bin).arg("ce").arg(&lie).output().unwrap();
    let ring = dir.join("filiform.ring.json");
    std::fs::write(&ring, &out.stdout).unwrap();
    let out = Command::new(bin)
        .arg("certify")
        .arg(&ring)
        .args(["--class", "omega", "--base-betti", "1,0,1"])
        .output()
        .unwrap();
    ensure(out.status.code() == Some(1), || format!("filiform CLI exit {:?}", out.status.code()))?;
    Ok(format!("routes, axiom, blowup, negative control exits 1, {certified} convolutions"))
}

/// Writes the corpus inputs into `dir` and returns the argument lists to run.
fn cli_corpus(bin: &Path, dir: &Path) -> Vec<Vec<String>> {
    let mut files = BTreeMap::new();
    for name in ["kodaira-thurston", "salamon-0-0-0-12-13-23", "salamon-0-0-12-13-14-15", "heisenberg3", "cp2", "cp3"] {
        let out = Command::new(bin).args(["catalog", "get", name]).output().unwrap();
        let entry = dir.join(format!("{name}.json"));
        std::fs::write(&entry, &out.stdout).unwrap();
        let ring = if name.starts_with("cp") {
            entry.clone()
        } else {
            let out = Command::new(bin).arg("ce").arg(&entry).output().unwrap();
            let p = dir.join(format!("{name}.ring.json"));
            std::fs::write(&p, &out.stdout).unwrap();
            p
        };
        files.insert(name, (entry, ring));
    }
    let gm = dir.join("sum.gmodule.json");
    let g = GModule::irreducible(2).direct_sum(&random_gmodule(7, 3, 2));
    std::fs::write(&gm, lefrank::io::to_pretty(&lefrank::io::gmodule_to_json(&g))).unwrap();
    let bm = dir.join("random.bmodule.json");
    std::fs::write(&bm, lefrank::io::to_pretty(&lefrank::io::bmodule_to_json(&random_bmodule(3, 6, 10)))).unwrap();

    let p = |x: &PathBuf| x.to_string_lossy().into_owned();
    let s = |x: &str| x.to_string();
    let mut runs = vec![vec![s("catalog"), s("list")]];
    for (name, (entry, ring)) in &files {
        runs.push(vec![s("catalog"), s("get"), s(name)]);
        runs.push(vec![s("validate"), p(entry)]);
        runs.push(vec![s("validate"), p(ring)]);
        runs.push(vec![s("filtration"), p(ring)]);
        if *name == "heisenberg3" {
            runs.push(vec![s("lefschetz"), p(ring), s("--class"), s("x1x3")]);
            continue;
        }
        runs.push(vec![s("lefschetz"), p(ring), s("--class"), s("omega")]);
        runs.push(vec![s("certify"), p(ring), s("--class"), s("omega"), s("--base-betti"), s("1,0,1")]);
        runs.push(vec![s("certify"), p(ring), s("--class"), s("omega"), s("--base-betti"), s("1,2,1,...")]);
    }
    let kt = p(&files["kodaira-thurston"].1);
    for (n, k) in [("5", "3"), ("6", "2")] {
        runs.push(vec![
            s("blowup"),
            kt.clone(),
            s("--class"),
            s("omega"),
            s("--ambient"),
            s(n),
            s("--codim"),
            s(k),
        ]);
    }
    for f in [&gm, &bm] {
        runs.push(vec![s("validate"), p(f)]);
        runs.push(vec![s("filtration"), p(f)]);
        runs.push(vec![s("decompose"), p(f)]);
    }
    runs.push(vec![s("catalog"), s("get"), s("nope")]);
    let mut both = Vec::new();
    for r in runs {
        let mut j = vec![s("--json")];
        j.extend(r.iter().cloned());
        both.push(r);
        both.push(j);
    }
    both
}

fn criterion_10(bin: &Path, dir: &Path) -> Outcome {
    let corpus = cli_corpus(bin, dir);
    let capture = || -> Vec<(Option<i32>, Vec<u8>, Vec<u8>)> {
        corpus
            .iter()
            .map(|args| {
                let o = Command::new(bin).args(args).env_remove("LEFRANK_CATALOG_DIR").output().unwrap();
                (o.status.code(), o.stdout, o.stderr)
            })
            .collect()
    };
    let first = capture();
    let second = capture();
    for ((args, a), b) in corpus.iter().zip(&first).zip(&second) {
        ensure(a == b, || format!("{args:?} differs between runs"))?;
        ensure(a.0.is_some_and(|c| c <= 2), || format!("{args:?} exit {:?}", a.0))?;
    }
    let bytes: usize = first.iter().map(|r| r.1.len()).sum();
    Ok(format!("{} invocations, {bytes} bytes of stdout, identical twice", corpus.len()))
}

#[test]
fn acceptance() {
    let bin = PathBuf::from(env!("CARGO_BIN_EXE_lefrank"));
    let dir = tempfile::tempdir().unwrap();
    let rings = ring_fixtures();
    let fixtures = module_fixtures(&rings);
    let criteria: Vec<(&str, Check<'_>)> = vec![
        ("filtration axioms", Box::new(|| criterion_1(&fixtures))),
        ("dual, sum, tensor and shift identities", Box::new(criterion_2)),
        ("hom preservation", Box::new(criterion_3)),
        ("saturation tests agree", Box::new(|| criterion_4(&rings, &fixtures))),
        ("Kodaira-Thurston fixture", Box::new(criterion_5)),
        ("CP^N fixture", Box::new(criterion_6)),
        ("Poincare factorization", Box::new(|| criterion_7(&rings))),
        ("blowup", Box::new(criterion_8)),
        ("certification", Box::new(|| criterion_9(&bin, dir.path()))),
        ("determinism", Box::new(|| criterion_10(&bin, dir.path()))),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => {
                let _ = writeln!(std::io::stderr(), "criterion {:>2} PASS {name}: {detail} ({secs:.1}s)", i + 1);
            }
            Err(why) => {
                let _ = writeln!(std::io::stderr(), "criterion {:>2} FAIL {name}: {why} ({secs:.1}s)", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
