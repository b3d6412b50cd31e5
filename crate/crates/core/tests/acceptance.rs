//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! fails if any criterion fails.

use std::path::Path;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use regloc::certcheck::{check_certificate, Certificate};
use regloc::genesis::{build_generator, certify_module, GeneratorResult, PrimeHints};
use regloc::homalg::text::{parse_definitions, parse_module, Definition};
use regloc::homalg::{is_pd_le, PresentedModule, QuotientRing};
use regloc::loci::{ext_support_locus, nonperf_locus, regular_locus, singular_locus, ClosedLocus};
use regloc::oracle::{
    artinian_thick_probe, ext_by_dimension_shift, ext_dimensions, pd_by_resolution, tamper_suite, PdBound, ProbeConfig,
};
use regloc::polyring::parse::parse_poly;
use regloc::polyring::Limits;

type Outcome = Result<String, String>;

fn ring(s: &str) -> Arc<QuotientRing> {
    QuotientRing::parse(s).unwrap()
}

fn cyclic(r: &Arc<QuotientRing>, gens: &[&str]) -> PresentedModule {
    let g: Vec<_> = gens.iter().map(|t| parse_poly(r.ambient(), t).unwrap()).collect();
    PresentedModule::cyclic(r, &g).unwrap()
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).to_str().unwrap().to_owned()
}

fn corpus_module(file: &str, name: &str) -> PresentedModule {
    let src = std::fs::read_to_string(data(file)).unwrap();
    for d in parse_definitions(&src, Limits::default()).unwrap() {
        if let Definition::Module(n, m) = d {
            if n == name {
                return m;
            }
        }
    }
    panic!("{name} not in {file}")
}

fn ok(b: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if b {
        Ok(())
    } else {
        Err(what())
    }
}

fn e(x: regloc::Error) -> String {
    x.to_string()
}

fn var_names(nv: usize) -> &'static [&'static str] {
    &["x", "y", "z"][..nv]
}

fn monomials(nv: usize, deg: u32) -> Vec<Vec<u32>> {
    if nv == 0 {
        return if deg == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for a in (0..=deg).rev() {
        for mut rest in monomials(nv - 1, deg - a) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

fn term(names: &[&str], exps: &[u32]) -> String {
    let parts: Vec<String> = names
        .iter()
        .zip(exps)
        .filter(|(_, &a)| a > 0)
        .map(|(n, &a)| if a == 1 { n.to_string() } else { format!("{n}^{a}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Random polynomial supported in the given degrees. Never the zero string.
fn random_poly(rng: &mut ChaCha8Rng, nv: usize, degrees: &[u32], density: f64) -> String {
    let names = var_names(nv);
    let mut terms = Vec::new();
    for &d in degrees {
        for m in monomials(nv, d) {
            if rng.gen_bool(density) {
                let sign = if rng.gen_bool(0.5) { "-" } else { "+" };
                terms.push(format!("{sign} {}*{}", rng.gen_range(1..=9), term(names, &m)));
            }
        }
    }
    if terms.is_empty() {
        let d = degrees[rng.gen_range(0..degrees.len())];
        let all = monomials(nv, d);
        terms.push(format!("+ {}", term(names, &all[rng.gen_range(0..all.len())])));
    }
    let joined = terms.join(" ");
    joined.strip_prefix("+ ").unwrap_or(&joined).to_owned()
}

fn module_text(ring: &str, ngens: usize, cols: &[Vec<String>]) -> String {
    let rels: Vec<String> = cols.iter().map(|c| format!("[{}]", c.join(", "))).collect();
    format!("module M over {ring} gens {ngens} relations [{}]", rels.join(", "))
}

/// Random module entry: zero with some probability, otherwise of degree at most 2.
fn random_entry(rng: &mut ChaCha8Rng, nv: usize, homogeneous_degree: Option<u32>) -> String {
    if rng.gen_bool(0.3) {
        return "0".into();
    }
    match homogeneous_degree {
        Some(d) => random_poly(rng, nv, &[d], 0.5),
        None => random_poly(rng, nv, &[0, 1, 2], 0.3),
    }
}

/// Hypersurface over F101 singular at the origin, with a random module.
fn stabilization_instance(rng: &mut ChaCha8Rng) -> (String, PresentedModule) {
    let nv = rng.gen_range(1..=3);
    let f = if nv == 1 {
        format!("x^{}", rng.gen_range(2..=3))
    } else {
        random_poly(rng, nv, &[2, 3], 0.4)
    };
    let ring = format!("F101[{}]/({f})", var_names(nv).join(","));
    let ngens = rng.gen_range(1..=3);
    let nrels = rng.gen_range(0..=3);
    let cols: Vec<Vec<String>> = (0..nrels)
        .map(|_| (0..ngens).map(|_| random_entry(rng, nv, None)).collect())
        .collect();
    let src = module_text(&ring, ngens, &cols);
    let m = parse_module(&src).unwrap_or_else(|x| panic!("{src}: {x}")).1;
    (src, m)
}

/// Graded module over a polynomial ring: each generator has a degree and
/// each relation is homogeneous.
fn graded_instance(rng: &mut ChaCha8Rng, field: &str, nv: usize, max_gens: usize) -> PresentedModule {
    let ring = format!("{field}[{}]", var_names(nv).join(","));
    let ngens = rng.gen_range(1..=max_gens);
    let gdeg: Vec<u32> = (0..ngens).map(|_| rng.gen_range(0..=1)).collect();
    let nrels = rng.gen_range(1..=3);
    let cols: Vec<Vec<String>> = (0..nrels)
        .map(|_| {
            let top = gdeg.iter().max().unwrap() + rng.gen_range(1..=2);
            (0..ngens).map(|i| random_entry(rng, nv, Some(top - gdeg[i]))).collect()
        })
        .collect();
    parse_module(&module_text(&ring, ngens, &cols)).unwrap().1
}

fn criterion_1() -> Outcome {
    let mut notes = Vec::new();
    for (name, r) in [("cusp", "Q[x,y]/(y^2-x^3)"), ("node", "Q[x,y]/(x*y)")] {
        let t = Instant::now();
        let r = ring(r);
        let got = singular_locus(&r).map_err(e)?;
        let want = ClosedLocus::new(&r, vec![parse_poly(r.ambient(), "x").unwrap(), parse_poly(r.ambient(), "y").unwrap()])
            .map_err(e)?;
        ok(got.same_as(&want).map_err(e)?, || format!("{name}: got V({:?})", got.defining_strings()))?;
        let dt = t.elapsed();
        ok(dt < Duration::from_secs(1), || format!("{name}: {dt:?}"))?;
        notes.push(format!("{name} {:.3}s", dt.as_secs_f64()));
    }
    Ok(notes.join(", "))
}

/// Criteria 2 and 4 share the instance suite.
fn criteria_2_and_4() -> (Outcome, Outcome) {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let t = Instant::now();
    let mut containment: Result<usize, String> = Ok(0);
    let mut run = || -> Result<usize, String> {
        let mut count = 0;
        for _ in 0..24 {
            let (src, m) = stabilization_instance(&mut rng);
            let d = m.ring().dim().max(0) as usize;
            let loci: Vec<ClosedLocus> = (1..=d + 3).map(|n| ext_support_locus(&m, n)).collect::<Result<_, _>>().map_err(e)?;
            for n in 1..d + 3 {
                ok(loci[n - 1].contains(&loci[n]).map_err(e)?, || format!("{src}: V_{n} does not contain V_{}", n + 1))?;
            }
            ok(loci[d].same_as(&loci[d + 1]).map_err(e)?, || format!("{src}: V_{} != V_{}", d + 1, d + 2))?;
            if containment.is_ok() {
                let sing = singular_locus(m.ring()).map_err(e)?;
                let np = nonperf_locus(&m).map_err(e)?;
                if !sing.contains(&np).map_err(e)? {
                    containment = Err(format!("{src}: nonperf {:?} not in sing {:?}", np.defining_strings(), sing.defining_strings()));
                } else {
                    containment = containment.clone().map(|c| c + 1);
                }
            }
            count += 1;
        }
        Ok(count)
    };
    let res = run();
    let dt = t.elapsed();
    let c2 = res.and_then(|n| {
        ok(dt < Duration::from_secs(120), || format!("{dt:?}"))?;
        Ok(format!("{n} instances, {:.2}s", dt.as_secs_f64()))
    });
    let c4 = match (&c2, containment) {
        (_, Err(m)) => Err(m),
        (Err(_), Ok(_)) => Err("instance suite did not complete".into()),
        (Ok(_), Ok(n)) => Ok(format!("{n} instances")),
    };
    (c2, c4)
}

fn criterion_3() -> Outcome {
    let plane = ring("Q[x,y]");
    let dual = ring("Q[x]/(x^2)");
    let node = ring("Q[x,y]/(x*y)");
    let cases: Vec<(&str, PresentedModule, Arc<QuotientRing>, Vec<&str>)> = vec![
        ("free", PresentedModule::free(&node, 2), node.clone(), vec!["1"]),
        ("free over the plane", PresentedModule::free(&plane, 1), plane.clone(), vec!["1"]),
        ("k over dual numbers", PresentedModule::residue_field(&dual).map_err(e)?, dual.clone(), vec!["x"]),
        ("R/(x) over node", cyclic(&node, &["x"]), node.clone(), vec!["x", "y"]),
    ];
    let mut notes = Vec::new();
    for (name, m, r, want) in cases {
        let t = Instant::now();
        let got = nonperf_locus(&m).map_err(e)?;
        let want = ClosedLocus::new(&r, want.iter().map(|s| parse_poly(r.ambient(), s).unwrap()).collect()).map_err(e)?;
        ok(got.same_as(&want).map_err(e)?, || format!("{name}: got V({:?})", got.defining_strings()))?;
        let dt = t.elapsed();
        ok(dt < Duration::from_secs(5), || format!("{name}: {dt:?}"))?;
        notes.push(format!("{name} {:.3}s", dt.as_secs_f64()));
    }
    Ok(notes.join(", "))
}

struct CorpusCert {
    label: String,
    ring: Arc<QuotientRing>,
    generator: PresentedModule,
    module: PresentedModule,
    cert: Certificate,
}

fn criterion_5(certs: &mut Vec<CorpusCert>) -> Outcome {
    let t = Instant::now();
    let rings = [
        ("Q[x]", "Q[x]"),
        ("dual numbers", "Q[x]/(x^2)"),
        ("node", "Q[x,y]/(x*y)"),
        ("cusp", "Q[x,y]/(y^2-x^3)"),
    ];
    let mut notes = Vec::new();
    for (name, src) in rings {
        let r = ring(src);
        let g: GeneratorResult = build_generator(&r, &PrimeHints::new()).map_err(e)?;
        let dim = r.dim().max(0) as usize;
        ok(g.depth <= dim + 1, || format!("{name}: depth {} > dim + 1 = {}", g.depth, dim + 1))?;
        let mut modules = vec![
            ("R", PresentedModule::free(&r, 1)),
            ("k", PresentedModule::residue_field(&r).map_err(e)?),
            ("R/(x)", cyclic(&r, &["x"])),
        ];
        if name == "cusp" {
            modules.push(("m", corpus_module("cusp.txt", "m")));
        }
        for (mname, m) in modules {
            let c = certify_module(&m, &g).map_err(|x| format!("{name} {mname}: {x}"))?;
            let v = check_certificate(&c).map_err(e)?;
            ok(v.ok, || format!("{name} {mname}: {v:?}"))?;
            certs.push(CorpusCert {
                label: format!("{name} {mname}"),
                ring: r.clone(),
                generator: g.generator.clone(),
                module: m,
                cert: c,
            });
        }
        notes.push(format!("{name} depth {}", g.depth));
    }
    let dt = t.elapsed();
    ok(dt < Duration::from_secs(60), || format!("{dt:?}"))?;
    Ok(format!("{} certificates, {}, {:.2}s", certs.len(), notes.join(", "), dt.as_secs_f64()))
}

fn criterion_6() -> Outcome {
    let t = Instant::now();
    for (name, src) in [("node", "Q[x,y]/(x*y)"), ("cusp", "Q[x,y]/(y^2-x^3)")] {
        let r = ring(src);
        let g = build_generator(&r, &PrimeHints::new()).map_err(e)?;
        let mut bad = nonperf_locus(&PresentedModule::free(&r, 1)).map_err(e)?;
        for s in g.summands() {
            bad = bad.union(&nonperf_locus(&s).map_err(e)?).map_err(e)?;
        }
        let reg = regular_locus(&r).map_err(e)?;
        ok(bad.complement().same_as(&reg).map_err(e)?, || {
            format!("{name}: nonperf union V({:?})", bad.defining_strings())
        })?;
    }
    let dt = t.elapsed();
    ok(dt < Duration::from_secs(30), || format!("{dt:?}"))?;
    Ok(format!("node, cusp, {:.2}s", dt.as_secs_f64()))
}

fn criterion_7(certs: &[CorpusCert]) -> Outcome {
    let t = Instant::now();
    let (mut mutations, mut breaking, mut rejected) = (0, 0, 0);
    for c in certs {
        let rep = tamper_suite(&c.cert, usize::MAX).map_err(e)?;
        ok(rep.mismatches.is_empty(), || format!("{}: {}", c.label, rep.mismatches.join("; ")))?;
        mutations += rep.mutations;
        breaking += rep.breaking;
        rejected += rep.rejected;
    }
    let dt = t.elapsed();
    ok(rejected == breaking, || format!("{rejected} of {breaking} rejected"))?;
    ok(breaking >= 50, || format!("only {breaking} breaking mutations"))?;
    ok(dt < Duration::from_secs(60), || format!("{dt:?}"))?;
    Ok(format!(
        "{} certificates, {mutations} mutations, {breaking} breaking, all rejected, {:.2}s",
        certs.len(),
        dt.as_secs_f64()
    ))
}

fn criterion_8(certs: &[CorpusCert]) -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut pds = [0usize; 4];
    for i in 0..30 {
        let (field, nv) = [("Q", 1), ("Q", 2), ("F101", 2), ("Q", 3), ("F101", 3)][i % 5];
        let m = graded_instance(&mut rng, field, nv, 2);
        let pd = pd_by_resolution(&m, nv + 1).map_err(e)?;
        let PdBound::Exactly(p) = pd else {
            return Err(format!("instance {i}: pd {pd:?} over a regular ring"));
        };
        ok(p <= nv, || format!("instance {i}: pd {p} exceeds {nv}"))?;
        for n in 0..=nv {
            ok(is_pd_le(&m, n).map_err(e)? == (p <= n), || format!("instance {i}: pd {p}, is_pd_le at {n} disagrees"))?;
        }
        pds[p] += 1;
    }
    let mut ext = 0;
    for i in 0..10 {
        let (field, nv) = [("Q", 1), ("F101", 2), ("Q", 2)][i % 3];
        let m = graded_instance(&mut rng, field, nv, 2);
        let target = if i % 2 == 0 { PresentedModule::residue_field(m.ring()).map_err(e)? } else { graded_instance(&mut rng, field, nv, 1) };
        for n in 1..=5 {
            let a = ext_by_dimension_shift(n, &m, &target, 3).map_err(e)?;
            let b = ext_dimensions(n, &m, &target, 3).map_err(e)?;
            ok(a == b, || format!("ext instance {i}, n = {n}: {a:?} vs {b:?}"))?;
            ext += 1;
        }
    }
    let mut probes = 0;
    for c in certs.iter().filter(|c| c.ring.dim() == 0) {
        let yes = artinian_thick_probe(&c.generator, &c.module, ProbeConfig::default()).map_err(e)?;
        ok(yes, || format!("probe disagrees with the certificate for {}", c.label))?;
        probes += 1;
    }
    ok(probes > 0, || "no Artinian certificates".into())?;
    let dt = t.elapsed();
    ok(dt < Duration::from_secs(120), || format!("{dt:?}"))?;
    Ok(format!(
        "30 pd instances (pd histogram {pds:?}), {ext} graded Ext comparisons, {probes} probes, {:.2}s",
        dt.as_secs_f64()
    ))
}

fn criterion_9() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_regloc");
    let (cusp, node, dual, koszul, bad) =
        (data("cusp.txt"), data("node.txt"), data("dual.txt"), data("koszul.txt"), data("bad_cert.json"));
    let cases: Vec<Vec<&str>> = vec![
        vec!["gb", "--ring", "Q[x,y,z]", "--polys", "x^2-y*z, y^2-x*z, z^2-x*y"],
        vec!["--order", "lex", "gb", "--ring", "F101[x,y]", "--polys", "x^3-y, x*y-1"],
        vec!["nf", "--ring", "Q[x,y]/(y^2-x^3)", "--poly", "y^3 + x*y"],
        vec!["resolve", "--input", &cusp, "--module", "m"],
        vec!["resolve", "--input", &node, "--module", "Rx", "--length", "3"],
        vec!["ext", "--input", &dual, "--module", "k", "--target", "k", "-n", "2"],
        vec!["sing-locus", "--ring", "Q[x,y]/(y^2-x^3)"],
        vec!["sing-locus", "--ring", "Q[x,y]/(x*y)"],
        vec!["perf-locus", "--input", &node, "--name", "Rx"],
        vec!["perf-locus", "--input", &koszul, "--name", "K"],
        vec!["j0", "--ring", "Q[x,y]/(y^2-x^3)", "--domain"],
        vec!["nagata", "--ring", "Q[x,y]/(x*y)", "--primes", "(x);(y)"],
        vec!["gen", "--ring", "Q[x,y]/(x*y)"],
        vec!["gen", "--ring", "Q[x]/(x^2)"],
        vec!["certify", "--input", &cusp, "--module", "m"],
        vec!["certify", "--input", &node, "--module", "k"],
        vec!["check", &bad],
        vec!["--format", "text", "sing-locus", "--ring", "Q[x,y]/(x*y)"],
    ];
    for args in &cases {
        let a = Command::new(bin).args(args).output().map_err(|x| x.to_string())?;
        let b = Command::new(bin).args(args).output().map_err(|x| x.to_string())?;
        ok(a.stdout == b.stdout && a.status.code() == b.status.code(), || format!("{args:?} differs between runs"))?;
        ok(!a.stdout.is_empty(), || format!("{args:?}: no output: {}", String::from_utf8_lossy(&a.stderr)))?;
    }
    Ok(format!("{} commands run twice, identical output", cases.len()))
}

fn main() {
    let mut results: Vec<(u32, Outcome)> = Vec::new();
    results.push((1, criterion_1()));
    let (c2, c4) = criteria_2_and_4();
    results.push((2, c2));
    results.push((3, criterion_3()));
    results.push((4, c4));
    let mut certs = Vec::new();
    results.push((5, criterion_5(&mut certs)));
    results.push((6, criterion_6()));
    results.push((7, criterion_7(&certs)));
    results.push((8, criterion_8(&certs)));
    results.push((9, criterion_9()));
    let mut failed = 0;
    for (n, r) in &results {
        match r {
            Ok(msg) => println!("criterion {n}: PASS  {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {n}: FAIL  {msg}");
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
