use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use foliage::deform::{
    enumerate_s2, family_decompose, s2_sum, shuffle_equivalence_check, FormFamily,
};
use foliage::divide::integrating_factor_search;
use foliage::expr::parse_poly;
use foliage::fixtures::{self, integrable_corpus, kn_theta, log_example_fixture};
use foliage::foliate::{
    frobenius_integrable_q, invariant_hyperplane, is_decomposable2, is_integrable2_c4,
    is_integrable2_cleared, mero_decompose, rotational4,
};
use foliage::forms::{df, radial, Blade, PForm, VField};
use foliage::homog::{
    case_b_normal_data, classify, dicritical_primitive, lemma22_analyze, linearize_nonresonant,
    radial_contraction, Witness,
};
use foliage::linalg;
use foliage::ratpoly::{monomials_up_to, rat, ratio, Poly, Rational};
use foliage::singloc::{
    projective_point_scan, quadric_map, sing_line_search, sing_lines, singular_ideal,
    CertificateKind, SearchBudget,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(checks: &[(&str, bool)], extra: String) -> Outcome {
    let failed: Vec<&str> = checks
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(k, _)| *k)
        .collect();
    Outcome {
        pass: failed.is_empty(),
        detail: if failed.is_empty() {
            extra
        } else {
            format!("{extra}; failed: {}", failed.join(", "))
        },
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn rand_poly(r: &mut ChaCha8Rng, n: usize, dmax: u32, terms: usize) -> Poly {
    let monos = monomials_up_to(n, dmax);
    Poly::from_terms(
        n,
        (0..terms).map(|_| (monos[r.gen_range(0..monos.len())], rat(r.gen_range(-3..=3)))),
    )
}

fn rand_homogeneous(r: &mut ChaCha8Rng, n: usize, d: u32, terms: usize) -> Poly {
    let monos = foliage::ratpoly::monomials_of_degree(n, d);
    Poly::from_terms(
        n,
        (0..terms).map(|_| (monos[r.gen_range(0..monos.len())], rat(r.gen_range(-3..=3)))),
    )
}

fn rand_form(r: &mut ChaCha8Rng, n: usize, p: usize, d: u32, homogeneous: bool) -> PForm {
    let mut f = PForm::zero(n, p);
    for b in Blade::all(n, p) {
        let c = if homogeneous {
            rand_homogeneous(r, n, d, 3)
        } else {
            rand_poly(r, n, d, 3)
        };
        f.add_term(b, c);
    }
    f
}

fn rand_field(r: &mut ChaCha8Rng, n: usize, d: u32) -> VField {
    VField::new((0..n).map(|_| rand_poly(r, n, d, 3)).collect())
}

fn lie_by_coordinates(a: &PForm, x: &VField) -> PForm {
    let n = a.nvars();
    let mut out = PForm::zero(n, a.degree());
    for (b, f) in a.terms() {
        let idx = b.indices();
        for k in 0..=idx.len() {
            let mut t = PForm::function(if k == idx.len() {
                x.apply(f)
            } else {
                f.clone()
            });
            for (j, &i) in idx.iter().enumerate() {
                t = t.wedge(&if j == k {
                    df(&x.components()[i])
                } else {
                    PForm::dx(n, i)
                });
            }
            out = out.add(&t);
        }
    }
    out
}

fn criterion1() -> Outcome {
    let theta = kn_theta();
    let rot = rotational4(&theta).unwrap();
    let q = quadric_map(&theta).unwrap();
    let scan = projective_point_scan(&singular_ideal(&theta), 4, 10).unwrap();
    let cert = sing_line_search(&theta, &SearchBudget { height: 10 }).unwrap();
    outcome(
        &[
            ("theta^theta = 0", theta.wedge(&theta).is_zero()),
            ("AE + BF + CG = 0", q.residual.is_zero()),
            ("rot != 0", !rot.is_zero()),
            ("i_rot theta != 0", !theta.interior(&rot).is_zero()),
            ("not integrable", !is_integrable2_c4(&theta).unwrap()),
            ("scan empty", scan.is_empty()),
            ("none-found", cert.kind == CertificateKind::NoneFound),
        ],
        format!(
            "height 10, {} grid points",
            cert.scan_parameters.grid_points
        ),
    )
}

fn criterion2() -> Outcome {
    let eta = log_example_fixture();
    let n = 4;
    let hyperplanes = (0..n).all(|i| invariant_hyperplane(&eta, &Poly::var(n, i)).unwrap());
    let found: BTreeSet<Vec<Rational>> = sing_lines(&eta, &SearchBudget { height: 3 })
        .unwrap()
        .into_iter()
        .collect();
    let primes = [2, 3, 5, 7];
    let coeffs = singular_ideal(&eta);
    let mut strata = Vec::new();
    for mask in 1u32..(1 << n) {
        let point: Vec<Rational> = (0..n)
            .map(|i| {
                if mask & (1 << i) != 0 {
                    rat(primes[i])
                } else {
                    rat(0)
                }
            })
            .collect();
        if coeffs.iter().all(|c| c.eval(&point) == rat(0)) {
            strata.push(mask);
        }
    }
    let oracle_ok = strata.iter().all(|m| m.count_ones() == 1);
    let oracle: BTreeSet<Vec<Rational>> = strata
        .iter()
        .map(|m| {
            (0..n)
                .map(|i| if m & (1 << i) != 0 { rat(1) } else { rat(0) })
                .collect()
        })
        .collect();
    outcome(
        &[
            ("integrable", is_integrable2_c4(&eta).unwrap()),
            ("hyperplanes invariant", hyperplanes),
            ("singular set is a union of lines", oracle_ok),
            ("lines match oracle", found == oracle && found.len() == 4),
        ],
        format!("{} line certificates", found.len()),
    )
}

fn criterion3() -> Outcome {
    let mut r = rng(3);
    let n = 4;
    let cases = 100;
    let mut dd = true;
    let mut anti = true;
    let mut cartan = true;
    let mut euler = true;
    let mut prop1 = true;
    for _ in 0..cases {
        let p = r.gen_range(0..=n);
        let da = r.gen_range(0..=3);
        let a = rand_form(&mut r, n, p, da, false);
        dd &= a.d().d().is_zero();
        let q = r.gen_range(0..=n - p);
        let db = r.gen_range(0..=2);
        let b = rand_form(&mut r, n, q, db, false);
        let sign = if p * q % 2 == 0 { rat(1) } else { rat(-1) };
        anti &= a.wedge(&b) == b.wedge(&a).scale(&sign);
        let x = rand_field(&mut r, n, 2);
        cartan &= a.lie(&x) == lie_by_coordinates(&a, &x) && a.d().lie(&x) == a.lie(&x).d();
        let m = r.gen_range(0..=3);
        let h = rand_form(&mut r, n, p, m, true);
        euler &= h.lie(&radial(n).unwrap()) == h.scale(&rat((m as usize + p) as i64));
        let eta = if r.gen_bool(0.5) {
            rand_form(&mut r, n, 1, 1, false).wedge(&rand_form(&mut r, n, 1, 1, false))
        } else {
            rand_form(&mut r, n, 2, 2, false)
        };
        if !eta.is_zero() {
            let sq = eta.wedge(&eta).is_zero();
            let dec = mero_decompose(&eta)
                .map(|w| w.verify(&eta))
                .unwrap_or(false);
            prop1 &= sq == dec && sq == is_decomposable2(&eta);
        }
    }
    let (mut integrable, mut non_integrable, mut agree) = (0, 0, true);
    while integrable < 50 || non_integrable < 50 {
        if integrable < 50 {
            let f = rand_poly(&mut r, n, 2, 3);
            let g = rand_poly(&mut r, n, 2, 3);
            let h = rand_poly(&mut r, n, 1, 2);
            let eta = df(&f).wedge(&df(&g)).mul_poly(&h);
            if !eta.is_zero() {
                integrable += 1;
                agree &= is_integrable2_c4(&eta).unwrap() && is_integrable2_cleared(&eta).unwrap();
            }
        }
        if non_integrable < 50 {
            let a = rand_form(&mut r, n, 1, 1, false);
            let b = rand_form(&mut r, n, 1, 1, false);
            let eta = a.wedge(&b);
            if !eta.is_zero() && !frobenius_integrable_q(&eta, &[a, b]).unwrap() {
                non_integrable += 1;
                agree &=
                    !is_integrable2_c4(&eta).unwrap() && !is_integrable2_cleared(&eta).unwrap();
            }
        }
    }
    outcome(
        &[
            ("d^2 = 0", dd),
            ("graded anticommutativity", anti),
            ("Cartan formula", cartan),
            ("Euler identity", euler),
            ("square zero iff decomposition", prop1),
            ("integrability criteria agree", agree),
        ],
        format!("{cases} instances each, {integrable} + {non_integrable} integrability instances"),
    )
}

fn truncated_family(r: &mut ChaCha8Rng, n: usize, k: usize) -> (FormFamily, PForm, PForm) {
    let one_form = |r: &mut ChaCha8Rng| rand_form(r, n, 1, 2, false);
    loop {
        let alphas: Vec<PForm> = (0..=k).map(|_| one_form(r)).collect();
        let betas: Vec<PForm> = (0..=k).map(|_| one_form(r)).collect();
        if alphas[0].wedge(&betas[0]).is_zero() {
            continue;
        }
        let fam = FormFamily::truncated_product(&alphas, &betas).unwrap();
        return (fam, alphas[0].clone(), betas[0].clone());
    }
}

fn criterion4() -> Outcome {
    let mut r = rng(4);
    let k = 5;
    let families = 20;
    let mut solved = 0;
    let mut residual_zero = true;
    let mut failures = Vec::new();
    for idx in 0..families {
        let n = if idx % 2 == 0 { 4 } else { 5 };
        let (fam, a0, b0) = truncated_family(&mut r, n, k);
        match family_decompose(&fam, &a0, &b0, 2) {
            Ok(dec) => {
                solved += 1;
                residual_zero &= dec.residual(&fam).iter().all(|x| x.is_zero());
            }
            Err(e) => failures.push(format!("n={n}: {e}")),
        }
    }
    let mut involution = true;
    for l in 0..=6 {
        for t in enumerate_s2(l) {
            let u = shuffle_equivalence_check(l, t.0, t.1, t.2, t.3).unwrap();
            let back = shuffle_equivalence_check(l, u.0, u.1, u.2, u.3).unwrap();
            involution &= u != t && back == t;
        }
    }
    let mut sums = true;
    for l in 2..=6 {
        let alphas: Vec<PForm> = (0..=l).map(|_| rand_form(&mut r, 4, 1, 1, false)).collect();
        let betas: Vec<PForm> = (0..=l).map(|_| rand_form(&mut r, 4, 1, 1, false)).collect();
        sums &= s2_sum(&alphas, &betas, l as i64).is_zero();
    }
    let mut detail = format!("{solved}/{families} families decomposed through order {k}");
    if let Some(f) = failures.first() {
        detail.push_str(&format!(" (first failure {f})"));
    }
    outcome(
        &[
            ("all families decomposed", solved == families),
            ("residuals vanish", residual_zero),
            ("involution fixed-point-free of order 2", involution),
            ("S2 sums vanish", sums),
        ],
        detail,
    )
}

fn criterion5() -> Outcome {
    let (rho, lambda) = (ratio(3, 2), rat(1));
    let data = case_b_normal_data(&rho, &lambda).unwrap();
    let rep = lemma22_analyze(&data.eta).unwrap();
    let mut spectrum = linalg::rational_roots(&linalg::charpoly(rep.y.matrix()));
    spectrum.sort();
    let expected = vec![ratio(-3, 2), ratio(-1, 2), ratio(1, 2), ratio(3, 2)];
    let bracket = rep.y.bracket(&rep.x).matrix() == &linalg::scale(rep.x.matrix(), &rep.lambda);
    let rho_found = rep.rho.clone().unwrap_or_default();
    let relation = rat(4) * &rho_found - rat(5) * &rep.lambda == rat(1);
    let z1 = Poly::var(4, 0);
    let [a, b, c] = data.log_constants.clone();
    let (g, h) = (&data.g, &data.h);
    let rhs = df(h)
        .wedge(&df(g))
        .mul_poly(&z1)
        .scale(&a)
        .add(&df(g).wedge(&df(&z1)).mul_poly(h).scale(&b))
        .add(&df(&z1).wedge(&df(h)).mul_poly(g).scale(&c));
    let identity = data.eta.mul_poly(&z1.pow(2)) == rhs;
    let g_text = parse_poly("z2**3 - 3*z1*z2*z3 + 3*z1**2*z4", 4).unwrap();
    let h_text = parse_poly("z2**2 - 2*z1*z3", 4).unwrap();
    let gh = g * h;
    let log_closed = [&data.alpha, &data.beta, &data.eta].iter().all(|w| {
        w.mul_poly(&z1)
            .d()
            .mul_poly(&gh)
            .sub(&df(&gh).wedge(&w.mul_poly(&z1)))
            .is_zero()
    });
    let split = data.eta == data.beta.scale(&rho).sub(&data.alpha.scale(&lambda));
    outcome(
        &[
            ("spectrum", spectrum == expected),
            ("[Y, X] = lambda X", bracket && rep.lambda == lambda),
            ("4 rho - 5 lambda = 1", relation && rho_found == rho),
            ("invariants g, h", *g == g_text && *h == h_text),
            ("eta = rho beta - lambda alpha", split),
            ("z1 eta / (g h) closed", log_closed),
            ("logarithmic identity", identity),
            ("A = 1/4", a == ratio(1, 4)),
            ("B = 1/6", b == ratio(1, 6)),
            ("C = 1/4", c == ratio(1, 4)),
        ],
        format!("A = {a}, B = {b}, C = {c}"),
    )
}

fn criterion6() -> Outcome {
    let n = 4;
    let l = Poly::var(n, 0);
    let q = &Poly::var(n, 1) * &Poly::var(n, 2);
    let omega = df(&q)
        .mul_poly(&l)
        .sub(&df(&l).mul_poly(&q).scale(&rat(2)))
        .scale(&ratio(1, 3));
    let p = integrating_factor_search(&omega, 3).unwrap();
    let target = &(&Poly::var(n, 0) * &Poly::var(n, 1)) * &Poly::var(n, 2);
    let eta = df(&l).wedge(&df(&q));
    let rep = classify(&eta).unwrap();
    let primitive = dicritical_primitive(&eta, 1).unwrap();
    outcome(
        &[
            ("integrating factor x1x2x3", p.monic() == target),
            ("branch L.Q", rep.branch == "L·Q"),
            ("classification verified", rep.verified),
            ("d omega = dL ^ dQ", omega.d() == eta && primitive == omega),
        ],
        format!("P = {p}, branch {}", rep.branch),
    )
}

fn criterion7() -> Outcome {
    let mut checks: Vec<(&str, bool)> = Vec::new();
    let rep = classify(&fixtures::template_21()).unwrap();
    let round_trip = match (rep.witnesses.get("Z"), rep.witnesses.get("projection")) {
        (Some(Witness::Field(z)), Some(Witness::Map(pr))) => {
            PForm::volume(3).interior(z).pullback(pr) == fixtures::template_21()
        }
        _ => false,
    };
    checks.push(("2.1 branch", rep.branch == "2.1" && rep.verified));
    checks.push(("2.1 pull-back", round_trip));
    let cases: [(&str, &str, PForm); 3] = [
        ("2.2.1", "2.2.1 pull-back", fixtures::template_221()),
        ("2.2.2", "2.2.2 pull-back", fixtures::template_222()),
        ("2.2.3", "2.2.3 pull-back", fixtures::template_223()),
    ];
    for (branch, label, eta) in cases {
        let rep = classify(&eta).unwrap();
        let ok = match (rep.witnesses.get("Phi"), rep.witnesses.get("reduced")) {
            (Some(Witness::Map(phi)), Some(Witness::Form(red))) => red.pullback(phi) == eta,
            _ => false,
        };
        checks.push((label, rep.branch == branch && rep.verified && ok));
    }
    let (l1, l2, a) = (rat(1), rat(2), rat(5));
    let q = &Poly::var(2, 0) * &Poly::var(2, 1) + Poly::var(2, 1).pow(2).scale(&rat(3));
    let h = linearize_nonresonant(&l1, &l2, &a, &q).unwrap();
    let z = VField::new(vec![Poly::var(2, 0).scale(&l1), Poly::var(2, 1).scale(&l2)]);
    checks.push((
        "Z(h) = a h - q",
        z.apply(&h) == &h.scale(&a) - &q && !h.is_zero(),
    ));
    outcome(&checks, format!("h = {h}"))
}

fn criterion8() -> Outcome {
    let corpus = integrable_corpus();
    let mut all = true;
    let mut branches = BTreeSet::new();
    let mut missing = Vec::new();
    let mut unclassified = Vec::new();
    for (name, eta) in &corpus {
        match classify(eta) {
            Ok(rep) if rep.verified => {
                branches.insert(rep.branch);
            }
            _ => unclassified.push(*name),
        }
        let cert = sing_line_search(eta, &SearchBudget::default()).unwrap();
        let ok = cert.kind == CertificateKind::Line && cert.verify(eta);
        if !ok {
            missing.push(*name);
        }
        all &= ok;
    }
    let integrable = corpus
        .iter()
        .all(|(_, eta)| is_integrable2_c4(eta).unwrap());
    outcome(
        &[
            ("at least 10 members", corpus.len() >= 10),
            ("all integrable", integrable),
            ("every member classified", unclassified.is_empty()),
            ("every member has a line", all),
        ],
        format!(
            "{} forms, {} branches{}",
            corpus.len(),
            branches.len(),
            if missing.is_empty() {
                String::new()
            } else {
                format!(", missing {missing:?}")
            }
        ),
    )
}

fn criterion9() -> Outcome {
    let mut r = rng(9);
    let n = 4;
    let (mut p4, mut p5) = (0, 0);
    let (mut ok4, mut ok5) = (true, true);
    while p4 < 50 {
        let df_deg = r.gen_range(1..=2);
        let f = rand_homogeneous(&mut r, n, df_deg, 3);
        let dg = r.gen_range(1..=2);
        let g = rand_homogeneous(&mut r, n, dg, 3);
        let eta = df(&f).wedge(&df(&g));
        if eta.is_zero() {
            continue;
        }
        let m = eta.max_coeff_degree().unwrap();
        let omega = dicritical_primitive(&eta, m).unwrap();
        ok4 &= omega.d() == eta && omega.wedge(&omega.d()).is_zero();
        p4 += 1;
    }
    while p5 < 50 {
        let f = rand_homogeneous(&mut r, n, 2, 3);
        let g = rand_homogeneous(&mut r, n, 1, 3);
        let dh = r.gen_range(0..=1);
        let h = rand_homogeneous(&mut r, n, dh, 2);
        let eta = df(&f).wedge(&df(&g)).mul_poly(&h);
        if eta.is_zero() || eta.interior(&radial(n).unwrap()).is_zero() {
            continue;
        }
        let omega = radial_contraction(&eta).unwrap();
        ok5 &= omega.wedge(&omega.d()).is_zero() && omega.wedge(&eta).is_zero();
        p5 += 1;
    }
    outcome(
        &[
            ("d omega = eta, omega integrable", ok4),
            ("i_R eta integrable and tangent", ok5),
        ],
        format!("{p4} + {p5} instances"),
    )
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

fn run_cli(args: &[String]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_foliage"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf-8"),
    )
}

fn criterion10() -> Outcome {
    let mut checks: Vec<(String, bool)> = Vec::new();
    for name in ["kn-theta", "log-example", "case-a", "case-b", "pencil"] {
        let args: Vec<String> = ["fixtures", name, "--json"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let (code, first) = run_cli(&args);
        let (_, second) = run_cli(&args);
        let path = golden_dir().join(format!("{name}.json"));
        if std::env::var_os("FOLIAGE_BLESS").is_some() {
            std::fs::write(&path, &first).expect("golden written");
        }
        let golden = std::fs::read_to_string(&path).unwrap_or_default();
        checks.push((
            format!("{name} golden"),
            code == 0 && first == second && first == golden,
        ));
        let report: Value = serde_json::from_str(&first).expect("json report");
        let mut recheck: Vec<String> = report["recheck"]
            .as_array()
            .map(|a| {
                a.iter()
                    .filter_map(|v| v.as_str().map(str::to_string))
                    .collect()
            })
            .unwrap_or_default();
        recheck.push("--json".into());
        let (code, out) = run_cli(&recheck);
        let re: Value = serde_json::from_str(&out).unwrap_or(Value::Null);
        let verdicts = re["verdicts"].as_object().cloned().unwrap_or_default();
        let witnessed = verdicts
            .iter()
            .filter(|(k, _)| k.starts_with("witness."))
            .count();
        let all_true = verdicts
            .iter()
            .filter(|(k, _)| k.starts_with("witness."))
            .all(|(_, v)| v == &Value::Bool(true));
        let same = ["decomposable", "integrable", "dicritical", "closed"]
            .iter()
            .all(|k| verdicts.get(*k) == report["verdicts"].get(*k));
        let expect_witnesses = name != "kn-theta";
        checks.push((
            format!("{name} recheck"),
            code == 0 && all_true && same && (witnessed > 0 || !expect_witnesses),
        ));
    }
    let refs: Vec<(&str, bool)> = checks.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    outcome(&refs, "5 fixture reports".to_string())
}

type Criterion = (u32, fn() -> Outcome, Option<Duration>);

fn main() {
    let criteria: [Criterion; 10] = [
        (1, criterion1, Some(Duration::from_secs(10))),
        (2, criterion2, Some(Duration::from_secs(5))),
        (3, criterion3, None),
        (4, criterion4, None),
        (5, criterion5, None),
        (6, criterion6, None),
        (7, criterion7, None),
        (8, criterion8, Some(Duration::from_secs(60))),
        (9, criterion9, None),
        (10, criterion10, None),
    ];
    let filter: Option<u32> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for (id, f, limit) in criteria {
        if filter.is_some_and(|k| k != id) {
            continue;
        }
        let start = Instant::now();
        let mut o = f();
        let elapsed = start.elapsed();
        if let Some(limit) = limit {
            if elapsed > limit {
                o.pass = false;
                o.detail
                    .push_str(&format!("; exceeded {} s", limit.as_secs()));
            }
        }
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {id:>2}: {} ({:.2} s) {}",
            if o.pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            o.detail
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
