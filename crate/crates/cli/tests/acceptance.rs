//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use stabq::decoder::{in_stabilizer_group, printed_table, single_qubit_errors};
use stabq::montecarlo::{simulate, SimulationConfig};
use stabq::{
    layout, predicted_syndrome, qubit_fidelity, render_ascii, render_svg, syndrome,
    verify_against_printed, CodeId, Complex64, Decoder, Pauli, PauliString, StabilizerCode,
    Syndrome, SyndromeTable,
};

const STABILIZER_TOLERANCE: f64 = 1e-12;
const AMPLITUDE_TOLERANCE: f64 = 1e-12;
const FIDELITY_FLOOR: f64 = 1.0 - 1e-9;
const NEGATIVE_CEILING: f64 = 1e-9;
const MC_P: f64 = 0.05;
const MC_TRIALS: u64 = 20_000;
const MC_SEED: u64 = 20_240_517;
const MC_WINDOW: f64 = 0.01;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        match $cond {
            true => {}
            false => return Err(format!($($msg)+)),
        }
    };
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn cli(args: &[&str]) -> stabq_cli::Output {
    stabq_cli::run(std::iter::once("stabq").chain(args.iter().copied()))
}

fn within(limit: Duration, start: Instant) -> Check {
    let elapsed = start.elapsed();
    if elapsed < limit {
        Ok(format!("{:.3}s", elapsed.as_secs_f64()))
    } else {
        Err(format!(
            "took {:.3}s, limit {:?}",
            elapsed.as_secs_f64(),
            limit
        ))
    }
}

/// Deterministic low-discrepancy normalized pairs with random-looking
/// global phases.
fn sample_inputs(count: usize) -> Vec<(Complex64, Complex64)> {
    let golden = (5f64.sqrt() - 1.0) / 2.0;
    (1..=count)
        .map(|j| {
            let u = (j as f64 * golden).fract();
            let v = (j as f64 * 2f64.sqrt()).fract();
            let w = (j as f64 * 3f64.sqrt()).fract();
            let theta = (1.0 - 2.0 * u).acos();
            let g = Complex64::from_polar(1.0, 2.0 * PI * w);
            (
                g * (theta / 2.0).cos(),
                g * Complex64::from_polar((theta / 2.0).sin(), 2.0 * PI * v),
            )
        })
        .collect()
}

fn bloch_grid() -> Vec<(Complex64, Complex64)> {
    let point = |theta: f64, phi: f64| {
        (
            c((theta / 2.0).cos(), 0.0),
            Complex64::from_polar((theta / 2.0).sin(), phi),
        )
    };
    let mut g = vec![point(0.0, 0.0), point(PI, 0.0)];
    for k in 0..4 {
        g.push(point(PI / 3.0, k as f64 * PI / 2.0));
        g.push(point(PI / 2.0, PI / 4.0 + k as f64 * PI / 2.0));
    }
    g.push(point(2.0 * PI / 3.0, 0.0));
    g.push(point(2.0 * PI / 3.0, PI));
    g
}

fn table_regeneration() -> Check {
    let start = Instant::now();

    let rep3 = StabilizerCode::rep3();
    let table = SyndromeTable::build(&rep3).map_err(|e| e.to_string())?;
    ensure!(table.len() == 4, "rep3 has {} classes", table.len());
    for row in printed_table(CodeId::Rep3) {
        let printed: Syndrome = row
            .printed
            .parse()
            .map_err(|e: stabq::Error| e.to_string())?;
        let class = table
            .get(&printed)
            .ok_or(format!("rep3 missing {printed}"))?;
        ensure!(
            class.representative.label() == row.errors[0],
            "rep3 row {}: correction {}",
            row.errors[0],
            class.representative
        );
    }
    let report = verify_against_printed(&rep3).map_err(|e| e.to_string())?;
    ensure!(report.discrepancies.is_empty(), "rep3 discrepancies");

    let shor = StabilizerCode::shor9();
    let report = verify_against_printed(&shor).map_err(|e| e.to_string())?;
    ensure!(
        report.rows_checked == 13,
        "shor9 rows {}",
        report.rows_checked
    );
    ensure!(
        report.discrepancies.is_empty(),
        "shor9 discrepancies {:?}",
        report.discrepancies
    );
    let table = SyndromeTable::build(&shor).map_err(|e| e.to_string())?;
    for row in printed_table(CodeId::Shor9) {
        let printed: Syndrome = row
            .printed
            .parse()
            .map_err(|e: stabq::Error| e.to_string())?;
        let class = table
            .get(&printed)
            .ok_or(format!("shor9 missing {printed}"))?;
        let mut want: Vec<&str> = row.errors.to_vec();
        let mut got: Vec<String> = class.sound_labels();
        want.sort_unstable();
        got.sort_unstable();
        ensure!(got == want, "shor9 row {:?}: derived {:?}", row.errors, got);
    }

    let five = StabilizerCode::five_qubit();
    let report = verify_against_printed(&five).map_err(|e| e.to_string())?;
    let error_rows = printed_table(CodeId::Five).len();
    ensure!(error_rows == 15, "five rows {error_rows}");
    ensure!(
        report.discrepancies.len() == 1,
        "five discrepancies {:?}",
        report.discrepancies
    );
    let d = &report.discrepancies[0];
    ensure!(
        d.error == "Y2" && d.known_erratum,
        "unexpected mismatch {}",
        d.error
    );
    ensure!(
        d.derived.signs() == [-1, -1, 1, -1],
        "Y2 derived {}",
        d.derived
    );
    ensure!(
        d.printed.signs() == [-1, -1, 1, 1],
        "Y2 printed {}",
        d.printed
    );

    let out = cli(&["verify"]);
    ensure!(out.code == 0, "verify exit {}", out.code);
    ensure!(
        out.stdout == "five: 1 known erratum (Y2); rep3: OK; shor9: OK\n",
        "verify printed {:?}",
        out.stdout
    );
    let t = within(Duration::from_secs(1), start)?;
    Ok(format!(
        "rep3 4/4, shor9 13/13, five 14/15 with Y2 erratum, {t}"
    ))
}

fn perfectness() -> Check {
    let five = StabilizerCode::five_qubit();
    let table = SyndromeTable::build(&five).map_err(|e| e.to_string())?;
    let masks: BTreeSet<u32> = table.classes().map(|c| c.syndrome.mask()).collect();
    ensure!(masks == (0..16).collect(), "syndromes {masks:?}");
    let mut members = BTreeSet::new();
    for class in table.classes() {
        ensure!(
            class.members.len() == 1,
            "class {} has {} members",
            class.syndrome,
            class.members.len()
        );
        members.insert(class.members[0].label.clone());
    }
    let expected: BTreeSet<String> = single_qubit_errors(5).iter().map(|e| e.label()).collect();
    ensure!(
        members == expected && members.len() == 16,
        "members {members:?}"
    );
    let out = cli(&["bound", "5", "1", "1"]);
    ensure!(
        out.stdout == "32 ≤ 32 PERFECT\n",
        "bound printed {:?}",
        out.stdout
    );
    Ok("16 syndromes <-> 16 errors, 32 ≤ 32 PERFECT".into())
}

fn stabilizer_invariance() -> Check {
    let mut worst: f64 = 0.0;
    for id in CodeId::ALL {
        let code = id.build();
        for (a0, a1) in sample_inputs(20) {
            let psi = code.encode(a0, a1).map_err(|e| e.to_string())?;
            for h in code.stabilizers() {
                let image = psi.apply_pauli(h).map_err(|e| e.to_string())?;
                let d = image
                    .amplitudes()
                    .iter()
                    .zip(psi.amplitudes())
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0, f64::max);
                worst = worst.max(d);
                ensure!(d < STABILIZER_TOLERANCE, "{id} {h}: {d:e}");
            }
        }
    }
    Ok(format!(
        "max deviation {worst:.1e} over 3 codes x 20 inputs"
    ))
}

fn shor_logical_states() -> Check {
    let code = StabilizerCode::shor9();
    let amp = 1.0 / (2.0 * 2f64.sqrt());
    let zero = code
        .encode(c(1.0, 0.0), c(0.0, 0.0))
        .map_err(|e| e.to_string())?;
    let one = code
        .encode(c(0.0, 0.0), c(1.0, 0.0))
        .map_err(|e| e.to_string())?;
    for (state, name) in [(&zero, "zero"), (&one, "one")] {
        let mut nonzero = 0;
        for (i, a) in state.amplitudes().iter().enumerate() {
            let blocks = [(i >> 6) & 7, (i >> 3) & 7, i & 7];
            let on_grid = blocks.iter().all(|&b| b == 0 || b == 7);
            if !on_grid {
                ensure!(a.norm() < AMPLITUDE_TOLERANCE, "{name}: {i:09b} = {a}");
                continue;
            }
            nonzero += 1;
            let ones = blocks.iter().filter(|&&b| b == 7).count() as i32;
            let sign = if name == "zero" {
                1.0
            } else {
                (-1f64).powi(ones)
            };
            ensure!(
                (a - c(sign * amp, 0.0)).norm() < AMPLITUDE_TOLERANCE,
                "{name}: {i:09b} = {a}"
            );
        }
        ensure!(nonzero == 8, "{name} has {nonzero} grid amplitudes");
    }
    Ok("8 amplitudes of ±1/(2√2) each".into())
}

fn round_trip() -> Check {
    let start = Instant::now();
    let mut counts = Vec::new();
    let mut worst: f64 = 1.0;
    for (id, expected) in [(CodeId::Five, 15), (CodeId::Rep3, 3), (CodeId::Shor9, 27)] {
        let dec = Decoder::for_code(id).map_err(|e| e.to_string())?;
        let errors: Vec<PauliString> = dec
            .table()
            .sound_errors()
            .into_iter()
            .filter(|e| !e.is_identity())
            .collect();
        ensure!(
            errors.len() == expected,
            "{id}: {} sound errors",
            errors.len()
        );
        for (a0, a1) in bloch_grid() {
            let psi = dec.code().encode(a0, a1).map_err(|e| e.to_string())?;
            for e in &errors {
                let received = psi.apply_pauli(e).map_err(|e| e.to_string())?;
                let out = dec.decode(&received).map_err(|e| e.to_string())?;
                let f = qubit_fidelity((a0, a1), (out.alpha0, out.alpha1));
                worst = worst.min(f);
                ensure!(f >= FIDELITY_FLOOR, "{id} {e}: fidelity {f}");
            }
        }
        counts.push(format!("{id} {expected}"));
    }
    let t = within(Duration::from_secs(10), start)?;
    Ok(format!(
        "{} errors x 12 inputs, min fidelity {worst:.12}, {t}",
        counts.join(", ")
    ))
}

fn degeneracy() -> Check {
    let code = StabilizerCode::shor9();
    let dec = Decoder::for_code(CodeId::Shor9).map_err(|e| e.to_string())?;
    let z = |s: &str| PauliString::parse(s, 9).map_err(|e| e.to_string());
    let input = (c(0.6, 0.0), c(0.0, 0.8));
    let psi = code.encode(input.0, input.1).map_err(|e| e.to_string())?;
    for e in ["Z1", "Z3"] {
        let received = psi.apply_pauli(&z(e)?).map_err(|e| e.to_string())?;
        let out = dec.decode(&received).map_err(|e| e.to_string())?;
        ensure!(
            out.applied == z("Z2")?,
            "{e} corrected with {}",
            out.applied
        );
        let f = qubit_fidelity(input, (out.alpha0, out.alpha1));
        ensure!(f >= FIDELITY_FLOOR, "{e}: fidelity {f}");
    }
    let h = code.stabilizers();
    let z2z1 = z("Z2")?.multiply(&z("Z1")?).map_err(|e| e.to_string())?;
    let z2z3 = z("Z2")?.multiply(&z("Z3")?).map_err(|e| e.to_string())?;
    ensure!(z2z1 == h[0], "Z2Z1 = {z2z1}, H1 = {}", h[0]);
    ensure!(z2z3 == h[1], "Z2Z3 = {z2z3}, H2 = {}", h[1]);
    ensure!(
        in_stabilizer_group(&code, &z2z1).unwrap_or(false),
        "Z2Z1 outside the stabilizer group"
    );
    Ok("Z1, Z3 corrected by Z2; Z2Z1 = H1, Z2Z3 = H2".into())
}

fn negative_control() -> Check {
    let dec = Decoder::for_code(CodeId::Rep3).map_err(|e| e.to_string())?;
    let input = (c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0));
    let psi = dec
        .code()
        .encode(input.0, input.1)
        .map_err(|e| e.to_string())?;
    let e = PauliString::single(3, Pauli::Z, 1).map_err(|e| e.to_string())?;
    let received = psi.apply_pauli(&e).map_err(|e| e.to_string())?;
    let out = dec.decode(&received).map_err(|e| e.to_string())?;
    ensure!(out.applied.is_identity(), "applied {}", out.applied);
    let f = qubit_fidelity(input, (out.alpha0, out.alpha1));
    ensure!(f <= NEGATIVE_CEILING, "fidelity {f}");
    let bound = cli(&["bound", "3", "1", "1"]);
    ensure!(
        bound.stdout == "20 > 8 VIOLATED\n",
        "bound printed {:?}",
        bound.stdout
    );
    Ok(format!(
        "identity applied, fidelity {f:.1e}, 20 > 8 VIOLATED"
    ))
}

fn oracle_equivalence() -> Check {
    let mut checked = 0;
    for id in CodeId::ALL {
        let code = id.build();
        let errors = single_qubit_errors(code.n());
        ensure!(
            errors.len() == 3 * code.n() + 1,
            "{id}: {} patterns",
            errors.len()
        );
        for (a0, a1) in sample_inputs(5) {
            let psi = code.encode(a0, a1).map_err(|e| e.to_string())?;
            for e in &errors {
                let received = psi.apply_pauli(e).map_err(|e| e.to_string())?;
                let measured = syndrome(&code, &received).map_err(|e| e.to_string())?;
                let predicted = predicted_syndrome(&code, e).map_err(|e| e.to_string())?;
                ensure!(measured == predicted, "{id} {e}: {measured} vs {predicted}");
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} measured syndromes equal predicted"))
}

/// Probability of at most one non-identity Pauli on five qubits, summed
/// over all 4^5 configurations.
fn at_most_one_error_probability(p: f64) -> f64 {
    let mut total = 0.0;
    for cfg in 0..4usize.pow(5) {
        let mut errors = 0;
        let mut prob = 1.0;
        for site in 0..5 {
            if (cfg >> (2 * site)) & 3 == 0 {
                prob *= 1.0 - p;
            } else {
                prob *= p / 3.0;
                errors += 1;
            }
        }
        if errors <= 1 {
            total += prob;
        }
    }
    total
}

fn monte_carlo() -> Check {
    let start = Instant::now();
    let (summary, _) = simulate(&SimulationConfig::new(
        CodeId::Five,
        MC_P,
        MC_TRIALS,
        MC_SEED,
    ))
    .map_err(|e| e.to_string())?;
    let t = within(Duration::from_secs(30), start)?;
    ensure!(
        summary.conditional_success_rate == Some(1.0),
        "conditional success {:?}",
        summary.conditional_success_rate
    );
    let reference = at_most_one_error_probability(MC_P);
    let gap = (summary.success_rate - reference).abs();
    ensure!(
        gap <= MC_WINDOW,
        "success rate {} vs {reference}",
        summary.success_rate
    );
    Ok(format!(
        "conditional 1.0, rate {} vs {reference:.7} (gap {gap:.4}), {t}",
        summary.success_rate
    ))
}

fn venn_integrity() -> Check {
    let code = StabilizerCode::five_qubit();
    let table = SyndromeTable::build(&code).map_err(|e| e.to_string())?;
    let l = layout(&code, &table).map_err(|e| e.to_string())?;
    let svg = render_svg(&l, None).map_err(|e| e.to_string())?;
    let doc = roxmltree::Document::parse(&svg).map_err(|e| e.to_string())?;
    let ellipses = doc
        .descendants()
        .filter(|n| n.has_tag_name("ellipse"))
        .count();
    ensure!(ellipses == 4, "{ellipses} ellipses");
    let interior: BTreeSet<(String, String)> = doc
        .descendants()
        .filter(|n| n.has_tag_name("text") && n.attribute("class") == Some("region-label interior"))
        .map(|n| {
            (
                n.attribute("data-sets").unwrap_or("").to_string(),
                n.text().unwrap_or("").trim().to_string(),
            )
        })
        .collect();
    let expected: BTreeSet<(String, String)> = table
        .classes()
        .filter(|c| !c.syndrome.is_trivial())
        .map(|c| {
            let sets: Vec<String> = c.syndrome.flipped().iter().map(|s| s.to_string()).collect();
            (sets.join(","), c.representative.label())
        })
        .collect();
    ensure!(interior.len() == 15, "{} interior labels", interior.len());
    ensure!(interior == expected, "labels {interior:?}");

    let rep3 = StabilizerCode::rep3();
    let rep_layout = layout(
        &rep3,
        &SyndromeTable::build(&rep3).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    let placed = |sets: &[usize]| {
        rep_layout
            .region(sets)
            .map(|r| r.labels.clone())
            .unwrap_or_default()
    };
    ensure!(placed(&[1]) == ["X1"], "S1 only: {:?}", placed(&[1]));
    ensure!(
        placed(&[1, 2]) == ["X2"],
        "S1 and S2: {:?}",
        placed(&[1, 2])
    );
    ensure!(placed(&[2]) == ["X3"], "S2 only: {:?}", placed(&[2]));
    let art = render_ascii(&rep_layout);
    let column = |label: &str| art.lines().find_map(|line| line.find(label));
    let (x1, x2, x3) = (column("X1"), column("X2"), column("X3"));
    ensure!(
        matches!((x1, x2, x3), (Some(a), Some(b), Some(d)) if a < b && b < d),
        "ASCII columns {x1:?} {x2:?} {x3:?}"
    );

    for args in [
        ["venn", "--code", "five", "--format", "svg"],
        ["venn", "--code", "rep3", "--format", "ascii"],
    ] {
        let a = cli(&args);
        let b = cli(&args);
        ensure!(
            a.code == 0 && a == b,
            "{} differs across runs",
            args.join(" ")
        );
    }
    Ok("15 interior labels match the table; X1 | X2 | X3 left to right; outputs stable".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("table regeneration", table_regeneration),
        ("perfectness", perfectness),
        ("stabilizer invariance", stabilizer_invariance),
        ("shor logical states", shor_logical_states),
        ("round-trip correction", round_trip),
        ("degeneracy soundness", degeneracy),
        ("negative control", negative_control),
        ("oracle equivalence", oracle_equivalence),
        ("monte-carlo consistency", monte_carlo),
        ("venn integrity", venn_integrity),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
