use std::sync::Arc;

use crate::app::config::{ModuleSource, RunConfig, SetSource};
use crate::app::fixtures::{cobar_of, fixture_set, ModuleFixture};
use crate::app::json::{parse_module, parse_set};
use crate::app::oracle::group_homology_oracle_z;
use crate::app::report::{HomologyTable, Report};
use crate::app::verify::verify;
use crate::dgalg::{Bar, Cobar};
use crate::dgmod::{colimit_complex, FiniteModule, RightModule, TwistedComplex, Window};
use crate::error::{Error, Result};
use crate::lambda::Lambda;
use crate::scalar::Field;
use crate::simplicial::{normalized_chains, SimplicialSet};

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Describe { set: SetSource },
    Homology { set: SetSource },
    CobarHomology { set: SetSource },
    BarHomology { set: SetSource },
    TwistedHomology { set: SetSource, module: ModuleSource },
    Colimit { set: SetSource, module: ModuleSource },
    LambdaHom { set: SetSource, source: String, target: String },
    Verify,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Describe { .. } => "describe",
            Command::Homology { .. } => "homology",
            Command::CobarHomology { .. } => "cobar-homology",
            Command::BarHomology { .. } => "bar-homology",
            Command::TwistedHomology { .. } => "twisted-homology",
            Command::Colimit { .. } => "colimit",
            Command::LambdaHom { .. } => "lambda-hom",
            Command::Verify => "verify",
        }
    }
}

pub fn load_set(source: &SetSource) -> Result<(SimplicialSet, String)> {
    match source {
        SetSource::Fixture(name) => Ok((fixture_set(name)?, name.clone())),
        SetSource::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
            let name = path.file_stem().map_or("input".into(), |s| s.to_string_lossy().into_owned());
            Ok((parse_set(&text)?, name))
        }
    }
}

pub fn load_module(source: &ModuleSource, k: &SimplicialSet, cobar: &Cobar) -> Result<(FiniteModule, String)> {
    match source {
        ModuleSource::Fixture(m) => Ok((m.build(k, cobar)?, m.name())),
        ModuleSource::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
            let (m, _) = parse_module(&text, k, cobar)?;
            let name = path.file_stem().map_or("module".into(), |s| s.to_string_lossy().into_owned());
            Ok((m, name))
        }
    }
}

/// A window holding every basis element of degree up to `max_degree + 1`
/// when weights grow linearly with degree, and `word_cap` letters otherwise.
pub fn window_for<M: RightModule>(m: &M, config: &RunConfig) -> Window {
    let d = config.max_degree;
    let max_weight = match m.weight_ratio() {
        Some(r) if !m.cobar().has_degree_zero_letters() => r.max(2) * (d + 2),
        _ => config.word_cap,
    };
    Window {
        max_degree: d as i64,
        max_weight,
    }
}

/// The rank-one monodromy of a module on the circle, if it is one.
fn circle_monodromy(k: &SimplicialSet, m: &FiniteModule) -> Option<crate::scalar::Scalar> {
    let edges = k.of_dim(1);
    let is_circle = k.vertices().len() == 1 && edges.len() == 1 && k.max_dim() == 1;
    if !is_circle || m.len() != 1 || m.degrees()[0] != 0 {
        return None;
    }
    let f = m.field();
    let acted = m.action().get(&edges[0]).and_then(|imgs| imgs[0].get(&0).cloned());
    Some(&acted.unwrap_or_else(|| f.zero()) + &f.one())
}

pub fn run(command: &Command, config: &RunConfig) -> Result<Report> {
    config.validate()?;
    let mut report = Report::new(command.name(), config);
    let field = config.field();
    let d = config.max_degree;
    match command {
        Command::Describe { set } => {
            let (k, name) = load_set(set)?;
            report.info("name", &name);
            report.info("generators by dimension", format!("{:?}", k.counts()));
            report.info("vertices", k.vertices().len());
            report.info("dimension", k.max_dim());
            let euler: i64 = k.counts().iter().enumerate().map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) }).sum();
            report.info("euler characteristic", euler);
            let c = normalized_chains(&k, field)?;
            let cx = c.complex(k.max_dim())?;
            report.table(HomologyTable::new("H(C(K))", &cx.homology_ranks(0, k.max_dim() as i64)?));
        }
        Command::Homology { set } => {
            let (k, _) = load_set(set)?;
            let c = normalized_chains(&k, field)?;
            let top = d.min(k.max_dim());
            report.table(HomologyTable::new("H(C(K))", &c.complex(top)?.homology_ranks(0, top as i64)?));
        }
        Command::CobarHomology { set } => {
            let (k, _) = load_set(set)?;
            let om = cobar_of(&k, field)?;
            let cx = om.complex(d, config.word_cap)?;
            report.table(HomologyTable::new("H(ΩC)", &cx.homology_ranks(0, d as i64)?));
        }
        Command::BarHomology { set } => {
            let (k, _) = load_set(set)?;
            let om = cobar_of(&k, field)?;
            let ratio = crate::dgalg::AugmentedAlgebra::weight_ratio(&om);
            let weight = ratio.map_or(config.word_cap, |r| r.max(2) * (d + 2));
            let cx = Bar::new(om).complex(d, weight)?;
            report.table(HomologyTable::new("H(BΩC)", &cx.homology_ranks(0, d as i64)?));
        }
        Command::TwistedHomology { set, module } | Command::Colimit { set, module } => {
            let (k, _) = load_set(set)?;
            let om = cobar_of(&k, field)?;
            let (m, mname) = load_module(module, &k, &om)?;
            let w = window_for(&m, config);
            let homology = if matches!(command, Command::Colimit { .. }) {
                colimit_complex(&k, &m, w)?.1
            } else {
                let cx = TwistedComplex::new(m.clone(), w).complex()?;
                cx.homology_ranks(cx.lo(), d as i64)?
            };
            let table = HomologyTable::new(format!("H(M⊗C) for {mname}"), &homology);
            if matches!(command, Command::Colimit { .. }) {
                if let Some(u) = circle_monodromy(&k, &m) {
                    let oracle = group_homology_oracle_z(field, &[vec![u.clone()]]);
                    let got: Vec<usize> = table.rows.iter().filter(|r| (0..=1).contains(&r.degree)).map(|r| r.rank).collect();
                    let outcome = oracle.and_then(|o| {
                        if got == o.to_vec() {
                            Ok(())
                        } else {
                            Err(Error::Malformed(format!("colimit gives {got:?}, group homology gives {o:?}")))
                        }
                    });
                    report.record("oracle", format!("group homology of Z with monodromy {u}"), outcome);
                }
            }
            report.table(table);
        }
        Command::LambdaHom { set, source, target } => {
            let (k, _) = load_set(set)?;
            let lam = Lambda::new(Arc::new(k), field);
            let (x, y) = (lam.vertex(source)?, lam.vertex(target)?);
            let h = lam.hom(x, y, d, config.word_cap)?;
            report.info("ranks", format!("{:?}", h.ranks()));
            report.table(HomologyTable::new(
                format!("H(Λ(K)({source},{target}))"),
                &h.complex.homology_ranks(0, d as i64)?,
            ));
        }
        Command::Verify => {
            let fields: Vec<Field> = config.fields.clone();
            for f in fields {
                verify(&mut report, f, config);
            }
        }
    }
    if config.strict {
        for w in report.warnings.clone() {
            report.record("strict", "truncation", Err(Error::Window(w)));
        }
    }
    Ok(report)
}

pub fn monodromy_source(u: i64) -> ModuleSource {
    ModuleSource::Fixture(ModuleFixture::Monodromy(u))
}
