use std::collections::BTreeSet;
use std::process::Command;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use srk_core::codegen::{
    emit_math, emit_stepper_source, expand, expand_with_limit, generate_bundle, render_bundle, Dialect, Field,
    RandomFactor, StageFamily, StateRef, MANIFEST_FILE,
};
use srk_core::ito_integrals::{sample_step_integrals, SeriesConfig};
use srk_core::schemes::{sample_weak_randoms, FnSystem, StepNoise, Stepper, TableStepper};
use srk_core::tables::{bundled, bundled_table, parse_table, CoefficientTable, Rational, TableKind};

fn r(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn trivial_weak() -> CoefficientTable {
    let mut t = CoefficientTable::zeros("TrivialWeak", TableKind::VectorWeak, 1);
    t.alpha = vec![r(1)];
    t.beta1 = vec![r(1)];
    t
}

fn rust() -> Dialect {
    Dialect::builtin("rust").unwrap()
}

fn constants(source: &str) -> Vec<(String, f64)> {
    source
        .lines()
        .filter_map(|l| l.strip_prefix("const "))
        .map(|l| {
            let (name, rest) = l.split_once(": f64 = ").unwrap();
            let value = rest.split(';').next().unwrap();
            (name.to_string(), value.parse().unwrap())
        })
        .collect()
}

#[test]
fn srk2wm_two_noise_expansion_structure() {
    let exp = expand(&bundled_table("SRK2Wm").unwrap(), 2).unwrap();
    assert_eq!(exp.function_name(), "strong_srk2_w2");

    let aliases: Vec<_> = exp.stage_defs.iter().filter(|s| s.is_alias()).map(|s| s.symbol).collect();
    let stage1 = |family| aliases.iter().any(|s| s.family == family && s.stage == 0);
    assert!(stage1(StageFamily::Zero) && stage1(StageFamily::Noise(0)) && stage1(StageFamily::Noise(1)));

    // X^{02}, X^{12}, X^{22}, X^{13}, X^{23}; X^{03} collapses to x_n.
    let defined: Vec<_> = exp.stage_defs.iter().filter(|s| !s.is_alias()).map(|s| s.symbol).collect();
    assert_eq!(defined.len(), 5, "{defined:?}");
    assert_eq!(exp.update_terms.len(), 8);
    assert_eq!(exp.count_evals(Field::Drift), 2);
    // G at X^{11} and X^{21} is one evaluation at x_n.
    assert_eq!(exp.count_evals(Field::Diffusion), 5);

    let x12 = exp
        .stage_defs
        .iter()
        .find(|s| s.symbol.family == StageFamily::Noise(0) && s.symbol.stage == 1)
        .unwrap();
    let factors: Vec<_> = x12.terms.iter().map(|t| t.factor).collect();
    assert_eq!(
        factors,
        vec![RandomFactor::H, RandomFactor::CrossSqrtH(0, 0), RandomFactor::CrossSqrtH(1, 0)]
    );

    let math = emit_math(&exp);
    for piece in [
        r"X^{01\alpha} &= x_n^\alpha, X^{11\alpha} = x_n^\alpha, X^{21\alpha} = x_n^\alpha",
        r"G_{2}^\alpha(t_n, X^{21\beta}) \frac{I^{21}(h_n)}{\sqrt{h_n}}",
        r"G_{1}^\alpha(t_n, X^{11\beta}) \frac{I^{12}(h_n)}{\sqrt{h_n}}",
        r"a_{2} f^\alpha(t_n + c_{0}^{2} h_n, X^{02\beta})",
        r"b_{1}^{1} I^{2}(h_n) G_{2}^\alpha(t_n, X^{21\beta})",
    ] {
        assert!(math.contains(piece), "missing {piece}\n{math}");
    }
    assert_eq!(math, emit_math(&exp));
}

#[test]
fn emitted_sources_have_no_zero_constants() {
    let (_, files) = render_bundle(&bundled(), 1..=6, 6, &rust()).unwrap();
    let mut checked = 0;
    for (path, text) in &files {
        if path.extension().is_some_and(|e| e == "rs") && path.file_name().unwrap() != "mod.rs" {
            let consts = constants(text);
            assert!(!consts.is_empty(), "{}", path.display());
            for (name, v) in consts {
                assert!(v != 0.0, "{}: {name} is zero", path.display());
            }
            assert!(!text.contains("0.0 *") && !text.contains("* 0.0"), "{}", path.display());
            checked += 1;
        }
    }
    assert_eq!(checked, 3 + 3 * 6);
}

// Independent count of the evaluation points a step really needs: walk back
// from the update through nonzero coefficients, resolving stages whose
// right-hand side is empty to x_n.
fn needed_points(t: &CoefficientTable, m: usize) -> (usize, usize) {
    #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
    enum Fam {
        Zero,
        Noise(usize),
        Hat(usize),
    }
    let s = t.stages;
    let nz = |v: &Rational| !v.is_zero();
    let weak = t.kind == TableKind::VectorWeak;
    let scalar = t.kind == TableKind::ScalarStrong;
    // Inputs of stage (fam, i): list of (field, source fam, stage j).
    let inputs = |fam: Fam, i: usize| -> Vec<(Field, Fam, usize)> {
        let mut v = Vec::new();
        let (a, b) = match fam {
            Fam::Zero => (&t.a0, &t.b0),
            Fam::Noise(_) => (&t.a1, &t.b1),
            Fam::Hat(_) => (t.a2.as_ref().unwrap(), t.b2.as_ref().unwrap()),
        };
        for j in 0..s {
            if nz(&a[i][j]) {
                v.push((Field::Drift, Fam::Zero, j));
            }
            if nz(&b[i][j]) {
                let ls: Vec<usize> = match (fam, scalar, weak) {
                    (_, true, _) => vec![0],
                    (Fam::Noise(k), _, true) => vec![k],
                    (Fam::Hat(k), _, true) => (0..m).filter(|&l| l != k).collect(),
                    _ => (0..m).collect(),
                };
                v.extend(ls.into_iter().map(|l| (Field::Diffusion, Fam::Noise(l), j)));
            }
        }
        v
    };
    let mut roots = Vec::new();
    for i in 0..s {
        if nz(&t.alpha[i]) {
            roots.push((Field::Drift, Fam::Zero, i));
        }
        let noise = nz(&t.beta1[i]) || nz(&t.beta2[i]) || (scalar && (nz(&t.beta3()[i]) || nz(&t.beta4()[i])));
        let hat = weak && (nz(&t.beta3()[i]) || nz(&t.beta4()[i]));
        for k in 0..m {
            if noise {
                roots.push((Field::Diffusion, Fam::Noise(k), i));
            }
            if hat {
                roots.push((Field::Diffusion, Fam::Hat(k), i));
            }
        }
    }
    let mut live = BTreeSet::new();
    while let Some(p) = roots.pop() {
        if live.insert(p) {
            roots.extend(inputs(p.1, p.2));
        }
    }
    let mut points = BTreeSet::new();
    for (field, fam, j) in live {
        let c = match (field, fam) {
            (Field::Drift, _) => t.c0[j],
            (Field::Diffusion, Fam::Hat(_)) => t.c2()[j],
            _ => t.c1[j],
        };
        let state = if inputs(fam, j).is_empty() { None } else { Some((fam, j)) };
        points.insert((field, state, c));
    }
    let count = |f| points.iter().filter(|p| p.0 == f).count();
    (count(Field::Drift), count(Field::Diffusion))
}

#[test]
fn evaluation_counts_are_minimal() {
    let mut tables = bundled();
    tables.push(trivial_weak());
    for t in &tables {
        let max = if t.kind == TableKind::ScalarStrong { 1 } else { 4 };
        for m in 1..=max {
            let exp = expand(t, m).unwrap();
            let (drift, diffusion) = needed_points(t, m);
            assert_eq!(exp.count_evals(Field::Drift), drift, "{} m={m}", t.name);
            assert_eq!(exp.count_evals(Field::Diffusion), diffusion, "{} m={m}", t.name);
            let referenced: BTreeSet<usize> = exp
                .all_terms()
                .map(|term| term.eval)
                .chain(exp.stage_defs.iter().filter(|s| !s.is_alias()).map(|s| s.eval))
                .collect();
            assert!(referenced.len() <= exp.evals.len());
        }
    }
}

#[test]
fn stages_are_defined_before_use_and_terms_are_nonzero() {
    for t in bundled() {
        let max = if t.kind == TableKind::ScalarStrong { 1 } else { 6 };
        for m in 1..=max {
            let exp = expand(&t, m).unwrap();
            let mut seen = BTreeSet::new();
            for def in &exp.stage_defs {
                for term in &def.terms {
                    assert!(!term.coeff.value.is_zero());
                    if let StateRef::Stage(sym) = exp.evals[term.eval].state {
                        assert!(seen.contains(&sym), "{} uses {:?} early", t.name, sym);
                    }
                }
                seen.insert(def.symbol);
            }
            assert!(exp.update_terms.iter().all(|term| !term.coeff.value.is_zero()));
        }
    }
}

fn pad_with_zero_stage(t: &CoefficientTable) -> CoefficientTable {
    let mut p = CoefficientTable::zeros(&t.name, t.kind, t.stages + 1);
    p.description = t.description.clone();
    p.det_order = t.det_order;
    p.stoch_order = t.stoch_order;
    p.transpose_cross = t.transpose_cross;
    let copy_m = |dst: &mut Vec<Vec<Rational>>, src: &Vec<Vec<Rational>>| {
        for (i, row) in src.iter().enumerate() {
            dst[i][..row.len()].copy_from_slice(row);
        }
    };
    copy_m(&mut p.a0, &t.a0);
    copy_m(&mut p.a1, &t.a1);
    copy_m(&mut p.b0, &t.b0);
    copy_m(&mut p.b1, &t.b1);
    if let (Some(d), Some(s)) = (p.a2.as_mut(), t.a2.as_ref()) {
        copy_m(d, s);
    }
    if let (Some(d), Some(s)) = (p.b2.as_mut(), t.b2.as_ref()) {
        copy_m(d, s);
    }
    let copy_v = |dst: &mut Vec<Rational>, src: &[Rational]| dst[..src.len()].copy_from_slice(src);
    copy_v(&mut p.c0, &t.c0);
    copy_v(&mut p.c1, &t.c1);
    copy_v(&mut p.alpha, &t.alpha);
    copy_v(&mut p.beta1, &t.beta1);
    copy_v(&mut p.beta2, &t.beta2);
    if let Some(d) = p.c2.as_mut() {
        copy_v(d, t.c2());
    }
    if let Some(d) = p.beta3.as_mut() {
        copy_v(d, t.beta3());
    }
    if let Some(d) = p.beta4.as_mut() {
        copy_v(d, t.beta4());
    }
    p
}

#[test]
fn expansion_ignores_explicit_zero_padding() {
    for t in bundled() {
        let padded = pad_with_zero_stage(&t);
        assert_eq!(padded.stages, t.stages + 1);
        let max = if t.kind == TableKind::ScalarStrong { 1 } else { 3 };
        for m in 1..=max {
            let a = expand(&t, m).unwrap();
            let b = expand(&padded, m).unwrap();
            assert_eq!(emit_stepper_source(&a, &rust()).unwrap(), emit_stepper_source(&b, &rust()).unwrap());
            assert_eq!(emit_math(&a), emit_math(&b));
        }
    }
}

#[test]
fn trivial_weak_table_expands_to_euler_terms() {
    let exp = expand(&trivial_weak(), 3).unwrap();
    assert!(exp.stage_defs.iter().all(|s| s.is_alias()));
    let got: Vec<_> = exp
        .update_terms
        .iter()
        .map(|t| (t.coeff.value, t.factor, exp.evals[t.eval].field, exp.evals[t.eval].state, t.column))
        .collect();
    let mut want = vec![(r(1), RandomFactor::H, Field::Drift, StateRef::Base, None)];
    want.extend((0..3).map(|k| (r(1), RandomFactor::IHat(k), Field::Diffusion, StateRef::Base, Some(k))));
    assert_eq!(got, want);
    assert_eq!(exp.count_evals(Field::Drift), 1);
    assert_eq!(exp.count_evals(Field::Diffusion), 1);

    let src = emit_stepper_source(&expand(&trivial_weak(), 1).unwrap(), &rust()).unwrap();
    assert!(src.contains("sys.drift(t, x, &mut f_1)"), "{src}");
    assert!(src.contains("sys.diffusion(t, x, &mut g_1)"), "{src}");
    assert_eq!(src.matches("sys.").count(), 2, "{src}");
}

#[test]
fn deterministic_only_table_has_no_random_symbols() {
    let mut t = CoefficientTable::zeros("Heun", TableKind::VectorStrong, 2);
    t.a0[1][0] = r(1);
    t.c0[1] = r(1);
    t.alpha = vec![Rational::new(1, 2).unwrap(); 2];
    t.beta1 = vec![r(1), r(0)];
    let mut det = t.clone();
    det.beta1 = vec![r(0), r(0)];
    let exp = expand(&det, 2).unwrap();
    assert_eq!(exp.count_evals(Field::Diffusion), 0);
    assert!(exp.all_terms().all(|t| t.factor == RandomFactor::H));
    let math = emit_math(&exp);
    assert!(!math.contains("I^") && !math.contains("G_"), "{math}");
    assert!(emit_math(&expand(&t, 2).unwrap()).contains("I^{1}"));
}

#[test]
fn emission_is_deterministic() {
    for name in ["SRK1Wm", "SRK1W1", "RI1"] {
        let t = bundled_table(name).unwrap();
        let m = if t.kind == TableKind::ScalarStrong { 1 } else { 2 };
        for d in Dialect::builtin_names() {
            let dialect = Dialect::builtin(d).unwrap();
            let a = emit_stepper_source(&expand(&t, m).unwrap(), &dialect).unwrap();
            let b = emit_stepper_source(&expand(&t, m).unwrap(), &dialect).unwrap();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn expansion_rejects_bad_noise_dimensions() {
    let scalar = bundled_table("SRK1W1").unwrap();
    assert!(expand(&scalar, 2).is_err());
    let vector = bundled_table("SRK1Wm").unwrap();
    assert!(expand(&vector, 0).is_err());
    assert!(expand(&vector, 7).is_err());
    assert!(expand_with_limit(&vector, 9, 9).is_ok());
}

#[test]
fn bundle_for_one_table_over_six_dimensions() {
    let dir = tempfile::tempdir().unwrap();
    let t = bundled_table("SRK1Wm").unwrap();
    let manifest = generate_bundle(&[t], 1..=6, &rust(), dir.path()).unwrap();
    let names: Vec<_> = manifest.functions.iter().map(|f| f.function.as_str()).collect();
    assert_eq!(names, (1..=6).map(|m| format!("strong_srk1_w{m}")).collect::<Vec<_>>());
    for f in &manifest.functions {
        let text = std::fs::read_to_string(dir.path().join(&f.path)).unwrap();
        assert_eq!(f.sha256.len(), 64);
        assert!(text.contains(&format!("pub fn {}(", f.function)));
    }
    let on_disk: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join(MANIFEST_FILE)).unwrap()).unwrap();
    assert_eq!(on_disk["functions"].as_array().unwrap().len(), 6);
    assert_eq!(on_disk["functions"][1]["m"], 2);

    let again = tempfile::tempdir().unwrap();
    let manifest2 = generate_bundle(&[bundled_table("SRK1Wm").unwrap()], 1..=6, &rust(), again.path()).unwrap();
    let hashes = |m: &srk_core::codegen::Manifest| m.functions.iter().map(|f| f.sha256.clone()).collect::<Vec<_>>();
    assert_eq!(hashes(&manifest), hashes(&manifest2));
}

#[test]
fn bundle_edge_cases() {
    let (manifest, _) = render_bundle(&[], 1..=6, 6, &rust()).unwrap();
    assert!(manifest.functions.is_empty());

    let t = bundled_table("SRK1Wm").unwrap();
    assert!(render_bundle(&[t.clone(), t.clone()], 1..=2, 6, &rust()).is_err());

    let (manifest, _) = render_bundle(&[bundled_table("K1P1").unwrap()], 1..=6, 6, &rust()).unwrap();
    assert_eq!(manifest.functions.len(), 1);
    assert_eq!(manifest.functions[0].function, "scalar_k1p1_w1");
}

#[test]
fn custom_dialect_directory_is_loaded() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("dialect.json"),
        r#"{"name": "listing", "extension": "txt", "index_file": "INDEX.txt"}"#,
    )
    .unwrap();
    std::fs::write(
        dir.path().join("step.jinja"),
        "{{ function }}: {{ drift_evals }} drift, {{ diffusion_evals }} diffusion\n",
    )
    .unwrap();
    std::fs::write(dir.path().join("index.jinja"), "{% for f in functions %}{{ f.function }}\n{% endfor %}").unwrap();
    let dialect = Dialect::resolve(dir.path().to_str().unwrap()).unwrap();
    assert_eq!(dialect.name, "listing");
    let out = tempfile::tempdir().unwrap();
    generate_bundle(&[bundled_table("SRK2Wm").unwrap()], 2..=2, &dialect, out.path()).unwrap();
    let text = std::fs::read_to_string(out.path().join("strong_srk2_w2.txt")).unwrap();
    assert_eq!(text, "strong_srk2_w2: 2 drift, 5 diffusion\n");
    assert_eq!(std::fs::read_to_string(out.path().join("INDEX.txt")).unwrap(), "strong_srk2_w2\n");
    assert!(Dialect::resolve("no-such-dialect").is_err());
}

#[test]
fn parsed_custom_table_expands() {
    let doc = r#"{"name": "Mid", "stage": 2, "det_order": "2", "stoch_order": "1",
        "A0": [["0","0"],["1/2","0"]], "B0": [["0","0"],["0","0"]],
        "A1": [["0","0"],["0","0"]], "B1": [["0","0"],["0","0"]],
        "c0": ["0","1/2"], "c1": ["0","0"], "a": ["0","1"], "b1": ["1","0"], "b2": ["0","0"]}"#;
    let t = parse_table(doc).unwrap();
    let exp = expand(&t, 1).unwrap();
    assert_eq!(exp.function_name(), "strong_mid_w1");
    assert_eq!(exp.count_evals(Field::Drift), 2);
    assert_eq!(exp.count_evals(Field::Diffusion), 1);
}

// Runs emitted Python against the interpreter when python3 with numpy is
// available; otherwise the test only checks that emission succeeds.
#[test]
fn python_dialect_agrees_with_the_interpreter() {
    let python = Dialect::builtin("python").unwrap();
    let have_numpy = Command::new("python3")
        .args(["-c", "import numpy"])
        .output()
        .is_ok_and(|o| o.status.success());
    let dir = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for name in ["SRK1W1", "K1P1", "SRK1Wm", "SRK2Wm", "RI1"] {
        let t = bundled_table(name).unwrap();
        let m = if t.kind == TableKind::ScalarStrong { 1 } else { 2 };
        let exp = expand(&t, m).unwrap();
        let source = emit_stepper_source(&exp, &python).unwrap();
        if !have_numpy {
            continue;
        }
        let function = exp.function_name();
        std::fs::write(dir.path().join(format!("{function}.py")), &source).unwrap();

        let sys = FnSystem::new(
            2,
            m,
            |t: f64, x: &[f64], o: &mut [f64]| {
                o[0] = x[1].sin() - 0.5 * x[0];
                o[1] = t * x[0];
            },
            move |_t: f64, x: &[f64], o: &mut [f64]| {
                for i in 0..2 {
                    for k in 0..m {
                        o[i * m + k] = 0.3 * (k + 1) as f64 * x[(i + k) % 2].cos();
                    }
                }
            },
        );
        let stepper = TableStepper::new(&t);
        let h = 0.05;
        let x = [0.4, -0.7];
        let mut expected = [0.0; 2];
        let noise_py = match t.kind {
            TableKind::VectorWeak => {
                let w = sample_weak_randoms(&mut rng, m, h);
                stepper.step(&sys, 0.3, &x, h, StepNoise::Weak(&w), &mut expected).unwrap();
                format!(
                    "ns(ihat=np.array({:?}), itil=np.array({:?}), ihat2=np.array({:?}))",
                    w.ihat.to_vec(),
                    w.itil.to_vec(),
                    w.ihat2.outer_iter().map(|r| r.to_vec()).collect::<Vec<_>>()
                )
            }
            _ => {
                let dw: Vec<f64> = (0..m).map(|_| rng.random_range(-0.3..0.3)).collect();
                let ints = sample_step_integrals(&dw, h, SeriesConfig::new(10).unwrap(), &mut rng).unwrap();
                stepper.step(&sys, 0.3, &x, h, StepNoise::Strong(&ints), &mut expected).unwrap();
                format!(
                    "ns(single=np.array({:?}), time_right=np.array({:?}), triple_diag=np.array({:?}), double=np.array({:?}))",
                    ints.single.to_vec(),
                    ints.time_right.to_vec(),
                    ints.triple_diag.to_vec(),
                    ints.double.outer_iter().map(|r| r.to_vec()).collect::<Vec<_>>()
                )
            }
        };
        let script = format!(
            "import math, numpy as np\nfrom types import SimpleNamespace as ns\nfrom {function} import {function}\n\
             m = {m}\n\
             def drift(t, x):\n    return np.array([math.sin(x[1]) - 0.5 * x[0], t * x[0]])\n\
             def diffusion(t, x):\n    return np.array([[0.3 * (k + 1) * math.cos(x[(i + k) % 2]) for k in range(m)] for i in range(2)])\n\
             sys = ns(drift=drift, diffusion=diffusion)\n\
             out = {function}(sys, 0.3, np.array([0.4, -0.7]), {h:?}, {noise_py})\n\
             print(repr(float(out[0])), repr(float(out[1])))\n"
        );
        let out = Command::new("python3").arg("-c").arg(&script).current_dir(dir.path()).output().unwrap();
        assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        let got: Vec<f64> = String::from_utf8(out.stdout)
            .unwrap()
            .split_whitespace()
            .map(|v| v.parse().unwrap())
            .collect();
        for (a, b) in got.iter().zip(&expected) {
            assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0), "{name}: {a} vs {b}");
        }
    }
}
