//! End-to-end acceptance checks. Each criterion prints one PASS or FAIL line;
//! the test fails if any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;
#[path = "../../core/tests/oracle/mod.rs"]
mod oracle;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ribbon_gate::abelian::{embeds_into, smith_normal_form, IntMatrix};
use ribbon_gate::cobordism::{
    exponent_matrix, extend_representation, is_rational_homology_cobordism, RibbonHandleData,
};
use ribbon_gate::geometry::{hierarchy_reachable, render_reachability_matrix, GeometryClass::*};
use ribbon_gate::group::{GroupPresentation, Word};
use ribbon_gate::groupcoh::{fox_matrix, fox_row, omega};
use ribbon_gate::repvar::{enumerate_rotation_data, synthesize_witness, tangent_dimension};
use ribbon_gate::seifert::SeifertPresentation;
use ribbon_gate::su2::{adjoint, random_unit_quaternion};
use ribbon_gate::{Quaternion, Representation};
use serde_json::Value;

const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures");

fn fixture(name: &str) -> String {
    format!("{FIXTURES}/{name}")
}

struct Run {
    code: i32,
    stdout: String,
    elapsed: Duration,
}

fn cli(args: &[&str]) -> Run {
    let t = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_ribbon-gate"))
        .args(args)
        .output()
        .expect("spawn ribbon-gate");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 output"),
        elapsed: t.elapsed(),
    }
}

fn json(r: &Run) -> Value {
    serde_json::from_str(&r.stdout).expect("json output")
}

/// Count, |λ|, witness residuals and cohomology for a Brieskorn triple.
fn casson_case(orders: [i64; 3]) -> String {
    let args: Vec<String> = orders.iter().map(|a| a.to_string()).collect();
    let mut argv = vec!["--json", "--witnesses", "casson"];
    argv.extend(args.iter().map(String::as_str));
    let r = cli(&argv);
    assert_eq!(r.code, 0);
    assert!(r.elapsed < Duration::from_secs(1), "took {:?}", r.elapsed);
    let v = json(&r);
    assert_eq!(v["count"], 2);
    assert_eq!(v["abs_lambda"], "1");
    let witnesses = v["witnesses"].as_array().unwrap();
    assert_eq!(witnesses.len(), 2);
    for w in witnesses {
        assert!(w["residual"].as_f64().unwrap() < 1e-9);
        let ells = w["rotation"]["ells"].as_array().unwrap();
        let t = ells
            .iter()
            .zip(orders)
            .filter(|(l, a)| (1..*a).contains(&l.as_i64().unwrap()))
            .count() as i64;
        assert_eq!(w["h0"], 0);
        assert_eq!(w["h1"].as_i64().unwrap(), 2 * t - 6);
        assert_eq!(w["h1"], 0);
    }
    assert_eq!(oracle::count_classes(orders, 4000, 0), 2);
    format!("count=2 |lambda|=1 in {:?}", r.elapsed)
}

fn criterion_1() -> String {
    casson_case([2, 3, 5])
}

fn criterion_2() -> String {
    casson_case([2, 3, 7])
}

fn criterion_3() -> String {
    let t = Instant::now();
    let triples = oracle::coprime_triples(1000);
    let mut bad = Vec::new();
    for a in &triples {
        let s = SeifertPresentation::brieskorn(a).unwrap();
        let want = enumerate_rotation_data(&s).unwrap().len();
        let got = oracle::count_classes(*a, 4000, 0);
        if got != want {
            bad.push(format!("{a:?}: {want} vs {got}"));
        }
    }
    assert!(bad.is_empty(), "{} mismatches: {bad:?}", bad.len());
    assert!(t.elapsed() < Duration::from_secs(600));
    format!("{} triples agree in {:.1?}", triples.len(), t.elapsed())
}

fn criterion_4() -> String {
    let mut summary = Vec::new();
    for orders in [&[2, 3, 5, 7][..], &[2, 3, 5, 11]] {
        let s = SeifertPresentation::brieskorn(orders).unwrap();
        let p = s.fundamental_group();
        let data = enumerate_rotation_data(&s).unwrap();
        let mut max_t = 0;
        for r in &data {
            let w = synthesize_witness(&s, r).unwrap();
            let c = fox_matrix(&p, &w.representation).unwrap();
            assert_eq!(c.h1 as i64, 2 * r.t as i64 - 6, "{orders:?} {:?}", r.ells);
            assert_eq!(c.h1, tangent_dimension(r).unwrap());
            max_t = max_t.max(r.t);
        }
        assert_eq!(max_t, orders.len());
        summary.push(format!("{orders:?}: {} tuples", data.len()));
    }
    summary.join(", ")
}

fn criterion_5() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut bases = Vec::new();
    for orders in [&[2, 3, 5][..], &[2, 3, 7], &[2, 5, 7], &[3, 4, 5], &[2, 3, 5, 7], &[2, 3, 11]] {
        let s = SeifertPresentation::brieskorn(orders).unwrap();
        let p = s.fundamental_group();
        for r in enumerate_rotation_data(&s).unwrap() {
            bases.push((p.clone(), synthesize_witness(&s, &r).unwrap().representation));
        }
    }
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let (p, rho) = &bases[rng.random_range(0..bases.len())];
        let (p, rho) = if rng.random_bool(0.3) {
            let (q, eta) = &bases[rng.random_range(0..bases.len())];
            (p.free_product(q), rho.free_product(eta))
        } else {
            (p.clone(), rho.clone())
        };
        let p = common::scramble(&mut rng, &p);
        let rho = rho.conjugate(random_unit_quaternion(&mut rng));
        let rho = Representation::new(&p, rho.images().to_vec()).unwrap();
        worst = worst.max(fox_matrix(&p, &rho).unwrap().complex_defect());
    }
    assert!(worst < 1e-7, "defect {worst}");

    let mut product_rule: f64 = 0.0;
    for _ in 0..1000 {
        let g = rng.random_range(1..5);
        let images: Vec<Quaternion> = (0..g).map(|_| random_unit_quaternion(&mut rng)).collect();
        let (lu, lv) = (rng.random_range(0..8), rng.random_range(0..8));
        let u = common::random_word(&mut rng, g, lu);
        let v = common::random_word(&mut rng, g, lv);
        let free = GroupPresentation::free((0..g).map(|i| format!("a{i}"))).unwrap();
        let ru = Representation::new(&free, images.clone()).unwrap().evaluate(&u);
        let m = adjoint(ru).0;
        let ad = nalgebra::DMatrix::from_fn(3, 3, |i, j| m[i][j]);
        let uv = Word([u.0.clone(), v.0.clone()].concat());
        let lhs = fox_row(&uv, &images);
        let rhs = fox_row(&u, &images) + ad * fox_row(&v, &images);
        product_rule = product_rule.max((lhs - rhs).amax());
    }
    assert!(product_rule < 1e-10, "product rule error {product_rule}");
    format!("max |phi psi| = {worst:.1e}, product rule error {product_rule:.1e}")
}

fn criterion_6() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..500 {
        let (r, c) = (rng.random_range(0..=6), rng.random_range(0..=6));
        let rows: Vec<Vec<i64>> = (0..r)
            .map(|_| (0..c).map(|_| rng.random_range(-30..=30)).collect())
            .collect();
        let a = IntMatrix::from_rows(&rows, c);
        let d = smith_normal_form(&a);
        assert_eq!(d.u.mul(&a).mul(&d.v), d.s);
        assert!(d.u.determinant().abs().is_one() && d.v.determinant().abs().is_one());
        let diag = d.diagonal();
        for w in diag.windows(2) {
            assert!(w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero()));
        }
    }
    let groups = common::abelian_groups_up_to(64);
    let finite: Vec<common::FiniteGroup> = groups.iter().map(common::FiniteGroup::new).collect();
    let subgroups: Vec<_> = finite.iter().map(|g| g.subgroup_signatures()).collect();
    let signatures: Vec<_> = finite.iter().map(|g| g.full_signature()).collect();
    for (i, h) in groups.iter().enumerate() {
        for (j, g) in groups.iter().enumerate() {
            assert_eq!(embeds_into(h, g), subgroups[j].contains(&signatures[i]), "{h} into {g}");
        }
    }
    format!("500 SNFs, {} group pairs", groups.len() * groups.len())
}

fn criterion_7() -> String {
    let fixture = include_str!("../../core/tests/fixtures/reachability.txt");
    assert_eq!(render_reachability_matrix(), fixture);
    assert_eq!(hierarchy_reachable(Lens, RP3RP3), Ok(false));
    assert_eq!(hierarchy_reachable(SphericalSolvable, RP3RP3), Ok(false));
    assert_eq!(hierarchy_reachable(SphericalTypeI, Euclidean), Ok(false));
    "matrix identical, negatives false".into()
}

fn criterion_8() -> String {
    let cases = [
        ("sigma_2_3_5_7", "sigma_2_3_11", 3, Some("fiber_count")),
        ("sol", "nil", 3, Some("geometry_hierarchy")),
        ("h1_z2", "h1_z4", 3, Some("square_order")),
        ("sigma_2_3_5", "sigma_2_3_5", 0, None),
        ("montesinos_4", "montesinos_3", 3, Some("fiber_count")),
    ];
    for (ym, yp, code, id) in cases {
        let (ym, yp) = (fixture(&format!("{ym}.json")), fixture(&format!("{yp}.json")));
        let r = cli(&["--json", "obstruct", &ym, &yp]);
        assert_eq!(r.code, code, "{ym} vs {yp}");
        let fired: Vec<String> = json(&r)["fired"]
            .as_array()
            .unwrap()
            .iter()
            .map(|f| f["id"].as_str().unwrap().to_string())
            .collect();
        match id {
            Some(id) => assert!(fired.iter().any(|f| f == id), "{fired:?}"),
            None => assert!(fired.is_empty(), "{fired:?}"),
        }
    }
    "5 fixtures".into()
}

fn criterion_9() -> String {
    let s = SeifertPresentation::brieskorn(&[2, 3, 5]).unwrap();
    let p = s.fundamental_group();
    let rho = synthesize_witness(&s, &enumerate_rotation_data(&s).unwrap()[0])
        .unwrap()
        .representation;
    let b = p.num_generators();
    let trivial = RibbonHandleData::new(p.clone(), vec!["y".into()], vec![Word::power(b, 1)]).unwrap();
    assert!(exponent_matrix(&trivial).det.is_one());
    let ext = extend_representation(&trivial, &rho, 16, 0).unwrap();
    assert_eq!(&ext.images()[..b], rho.images());
    assert_eq!(ext.images()[b], Quaternion::identity());

    let commutator = Word::from_powers(&[(b, 1), (0, 1), (b, -1), (0, -1)]);
    let h = RibbonHandleData::new(p.clone(), vec!["y".into()], vec![commutator]).unwrap();
    assert!(exponent_matrix(&h).det.is_zero());
    assert_eq!(is_rational_homology_cobordism(&h), None);

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let z3 = GroupPresentation::new(vec!["c".into()], vec![Word::power(0, 3)]).unwrap();
    let eta = Representation::new(&z3, vec![Quaternion::exp_i(2.0 * std::f64::consts::PI / 3.0)]).unwrap();
    let free = GroupPresentation::free(["f", "g"]).unwrap();
    let zeta = Representation::new(
        &free,
        vec![random_unit_quaternion(&mut rng), random_unit_quaternion(&mut rng)],
    )
    .unwrap();
    for (a, ra, c, rc) in [(&p, &rho, &z3, &eta), (&p, &rho, &free, &zeta), (&z3, &eta, &free, &zeta)] {
        let joint = omega(&a.free_product(c), &ra.free_product(rc)).unwrap();
        assert_eq!(joint, omega(a, ra).unwrap() + omega(c, rc).unwrap());
    }
    "det 1 exact extension, commutator det 0, omega additive".into()
}

fn criterion_10() -> String {
    let f = fixture;
    let (ym, yp) = (f("sigma_2_3_5_7.json"), f("sigma_2_3_11.json"));
    let (sol, nil) = (f("sol.json"), f("nil.json"));
    let zar = f("zariski_sigma_2_3_5.json");
    let (handles, rep) = (f("handles_sqrt_h.json"), f("rep_sigma_2_3_5.json"));
    let knot = f("montesinos_4.json");
    let commands: Vec<Vec<&str>> = vec![
        vec!["casson", "--witnesses", "2", "3", "5"],
        vec!["casson", "--witnesses", "2", "3", "7"],
        vec!["repvar", "2", "3", "5", "7"],
        vec!["snf", "[[1,2],[3,4]]"],
        vec!["geometry"],
        vec!["geometry", "Sol", "Nil"],
        vec!["obstruct", &ym, &yp],
        vec!["obstruct", &sol, &nil],
        vec!["montesinos", &knot],
        vec!["zariski", &zar, &zar, &zar],
        vec!["extend", &handles, &rep],
    ];
    for c in &commands {
        let mut outputs = Vec::new();
        for threads in ["1", "8", "1", "8"] {
            let mut argv = vec!["--json", "--seed", "0", "--threads", threads];
            argv.extend(c.iter().copied());
            let r = cli(&argv);
            assert!(r.code == 0 || r.code == 3, "{c:?} exited {}", r.code);
            outputs.push(r.stdout);
        }
        assert!(outputs.windows(2).all(|w| w[0] == w[1]), "{c:?} differs");
    }
    format!("{} commands identical across runs and thread counts", commands.len())
}

fn main() {
    let criteria: [fn() -> String; 10] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    let mut failed = Vec::new();
    for (i, c) in criteria.iter().enumerate() {
        match catch_unwind(AssertUnwindSafe(c)) {
            Ok(detail) => println!("criterion {}: PASS {detail}", i + 1),
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {}: FAIL {msg}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
