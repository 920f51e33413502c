//! End-to-end acceptance run: one PASS/FAIL line per requirement.

use std::fs;
use std::path::PathBuf;
use std::process::Command as Process;
use std::sync::Arc;

use loctwist::app::{
    cobar_of, emit_module, emit_set, fixture_set, parse_module, parse_set, run, Command, ModuleFixture, Report,
    RunConfig, SET_FIXTURES,
};
use loctwist::dgalg::Bar;
use loctwist::dgmod::{colimit_complex, FreeModule, Window};
use loctwist::lambda::Lambda;
use loctwist::simplicial::delta;
use loctwist::Field;

type Outcome = Result<(), String>;

fn fields() -> Vec<Field> {
    vec![Field::Rational, Field::prime(5).unwrap()]
}

fn groups_pass(report: &Report, groups: &[&str]) -> Outcome {
    let relevant: Vec<_> = report.checks.iter().filter(|c| groups.contains(&c.group.as_str())).collect();
    if relevant.is_empty() {
        return Err(format!("no checks recorded for {groups:?}"));
    }
    for f in fields() {
        let f = f.to_string();
        if !relevant.iter().any(|c| c.field.as_deref() == Some(f.as_str())) {
            return Err(format!("no checks over {f}"));
        }
    }
    match relevant.iter().find(|c| !c.passed) {
        Some(c) => Err(format!("{}: {}", c.name, c.witness.clone().unwrap_or_default())),
        None => Ok(()),
    }
}

fn ranks_of(h: &[loctwist::linalg::HomologyDegree], n: usize) -> Vec<usize> {
    h.iter().filter(|d| d.degree >= 0).take(n).map(|d| d.rank).collect()
}

fn expect(name: &str, got: Vec<usize>, want: &[usize]) -> Outcome {
    if got == want {
        Ok(())
    } else {
        Err(format!("{name}: got {got:?}, expected {want:?}"))
    }
}

fn loop_space() -> Outcome {
    for f in fields() {
        let om = cobar_of(&fixture_set("sphere_min2").unwrap(), f).map_err(|e| e.to_string())?;
        let h = om.complex(6, 8).and_then(|c| c.homology_ranks(0, 6)).map_err(|e| e.to_string())?;
        expect(&format!("H(ΩC) over {f}"), ranks_of(&h, 7), &[1; 7])?;
    }
    Ok(())
}

fn bar_of_cobar() -> Outcome {
    for f in fields() {
        let om = cobar_of(&fixture_set("sphere_min2").unwrap(), f).map_err(|e| e.to_string())?;
        let h = Bar::new(om).complex(4, 12).and_then(|c| c.homology_ranks(0, 4)).map_err(|e| e.to_string())?;
        expect(&format!("H(BΩC) over {f}"), ranks_of(&h, 5), &[1, 0, 1, 0, 0])?;
    }
    Ok(())
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
}

fn cube_ranks() -> Outcome {
    for f in fields() {
        for n in 1..=4usize {
            let lam = Lambda::new(Arc::new(delta(n).unwrap()), f);
            let h = lam.hom(0, n, n, 8).map_err(|e| e.to_string())?;
            let want: Vec<usize> = (0..n).map(|d| binomial(n - 1, d) * (1 << (n - 1 - d))).collect();
            expect(&format!("ranks of Λ(Δ^{n})(0,{n})"), h.ranks()[..n].to_vec(), &want)?;
            let homology = h.complex.homology_ranks(0, n as i64 - 1).map_err(|e| e.to_string())?;
            let mut point = vec![0; n];
            point[0] = 1;
            expect(&format!("homology of Λ(Δ^{n})(0,{n})"), ranks_of(&homology, n), &point)?;
        }
    }
    Ok(())
}

fn colimits() -> Outcome {
    let w = Window {
        max_degree: 6,
        max_weight: 8,
    };
    let case = |set: &str, m: ModuleFixture, f: Field| -> Result<Vec<usize>, String> {
        let k = fixture_set(set).map_err(|e| e.to_string())?;
        let om = cobar_of(&k, f).map_err(|e| e.to_string())?;
        let module = m.build(&k, &om).map_err(|e| e.to_string())?;
        let (_, h) = colimit_complex(&k, &module, w).map_err(|e| e.to_string())?;
        Ok(h.iter().map(|d| d.rank).collect())
    };
    let q = Field::Rational;
    expect("circle, u = 1", case("circle", ModuleFixture::Monodromy(1), q)?[..2].to_vec(), &[1, 1])?;
    expect("circle, u = 2", case("circle", ModuleFixture::Monodromy(2), q)?[..2].to_vec(), &[0, 0])?;
    expect("sphere, Hopf", case("sphere_min2", ModuleFixture::Hopf, q)?[..4].to_vec(), &[1, 0, 0, 1])?;
    expect("sphere, trivial", case("sphere_min2", ModuleFixture::Trivial, q)?[..3].to_vec(), &[1, 0, 1])?;
    // Group homology of ℤ with coefficients twisted by u: both groups are
    // 𝐤 when u = 1 in the field and vanish otherwise.
    for f in fields() {
        for u in [1i64, 2, 3, -1] {
            let trivial = f.int(u) == f.one();
            let want = if trivial { [1, 1] } else { [0, 0] };
            let got = case("circle", ModuleFixture::Monodromy(u), f)?[..2].to_vec();
            expect(&format!("circle, u = {u} over {f}"), got, &want)?;
        }
    }
    Ok(())
}

fn free_module() -> Outcome {
    for f in fields() {
        let k = fixture_set("sphere_min2").unwrap();
        let om = cobar_of(&k, f).map_err(|e| e.to_string())?;
        let w = Window {
            max_degree: 4,
            max_weight: 12,
        };
        let (_, h) = colimit_complex(&k, &FreeModule::new(&om), w).map_err(|e| e.to_string())?;
        expect(&format!("free module over {f}"), ranks_of(&h, 5), &[1, 0, 0, 0, 0])?;
    }
    Ok(())
}

fn binary() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_loctwist"))
}

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn cli() -> Outcome {
    let status = Process::new(binary()).arg("verify").output().map_err(|e| e.to_string())?;
    if !status.status.success() {
        return Err(format!("verify exited with {:?}", status.status.code()));
    }
    for name in SET_FIXTURES {
        let text = fs::read_to_string(fixtures_dir().join(format!("{name}.json"))).map_err(|e| e.to_string())?;
        let k = parse_set(&text).map_err(|e| e.to_string())?;
        if emit_set(&k) != text {
            return Err(format!("{name}.json does not round-trip byte for byte"));
        }
    }
    let k = fixture_set("sphere_min2").unwrap();
    let om = cobar_of(&k, Field::Rational).unwrap();
    let text = fs::read_to_string(fixtures_dir().join("modules/sphere_min2.hopf.json")).map_err(|e| e.to_string())?;
    let (m, over) = parse_module(&text, &k, &om).map_err(|e| e.to_string())?;
    if emit_module(&m, &over) != text {
        return Err("sphere_min2.hopf.json does not round-trip byte for byte".into());
    }
    let out = Process::new(binary())
        .args(["colimit", "--fixture", "circle", "--monodromy", "2", "--format", "json"])
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("colimit exited with {:?}", out.status.code()));
    }
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let oracle = report["checks"]
        .as_array()
        .and_then(|cs| cs.iter().find(|c| c["group"] == "oracle"))
        .ok_or("colimit report has no oracle check")?;
    if oracle["passed"] != true {
        return Err(format!("oracle check failed: {oracle}"));
    }
    Ok(())
}

fn main() {
    let config = RunConfig {
        fields: fields(),
        ..RunConfig::default()
    };
    let report = run(&Command::Verify, &config).expect("verify runs");
    let criteria: Vec<(&str, Outcome)> = vec![
        ("structural laws on every fixture", groups_pass(&report, &["structure"])),
        ("loop space homology of the 2-sphere", loop_space()),
        ("bar of cobar of the 2-sphere", bar_of_cobar()),
        ("comparison map and contraction", groups_pass(&report, &["comparison"])),
        ("hom complex equivalence", groups_pass(&report, &["hom_equivalence"])),
        ("cobar algebra as necklaces", groups_pass(&report, &["cobar_iso"])),
        ("necklace ranks of simplices", cube_ranks()),
        ("shuffle map twisting identity", groups_pass(&report, &["ez_identity"])),
        ("colimits of local systems", colimits().and(groups_pass(&report, &["colimits"]))),
        ("free module is acyclic", free_module().and(groups_pass(&report, &["free_acyclic"]))),
        ("command line", cli()),
    ];
    let mut failed = 0;
    for (name, outcome) in &criteria {
        match outcome {
            Ok(()) => println!("PASS  {name}"),
            Err(e) => {
                failed += 1;
                println!("FAIL  {name}: {e}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
