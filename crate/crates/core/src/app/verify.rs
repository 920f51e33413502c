use std::sync::Arc;

use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::app::config::RunConfig;
use crate::app::fixtures::{cobar_of, fixture_set, ModuleFixture, SET_FIXTURES};
use crate::app::oracle::group_homology_oracle_z;
use crate::app::report::Report;
use crate::app::run::window_for;
use crate::dgalg::{AugmentedAlgebra, Bar, Cobar, Conilpotency};
use crate::dgmod::{
    colimit_complex, BarModule, FiniteModule, FreeModule, HomComplex, HomStrict, RightModule, TwistedComplex, Window,
};
use crate::equiv::{comparison_maps, f_map, g_map, letter_count, nilpotency_order, sample_kernel};
use crate::error::{Error, Result};
use crate::lambda::{CobarIso, EzMap, Lambda};
use crate::linalg::{HomologyDegree, SparseMatrix};
use crate::scalar::Field;
use crate::simplicial::{circle, delta, normalized_chains, pinched, sphere_min, SimplexRef, SimplicialSet};

const NILPOTENCY_SAMPLES: usize = 100;
const RANDOM_MAPS: usize = 50;

fn expect_ranks(got: &[HomologyDegree], lo: i64, expected: &[usize]) -> Result<()> {
    let ranks: Vec<usize> = (0..expected.len())
        .map(|i| {
            got.iter()
                .find(|h| h.degree == lo + i as i64)
                .map(|h| h.rank)
                .ok_or_else(|| Error::Window(format!("degree {} not computed", lo + i as i64)))
        })
        .collect::<Result<_>>()?;
    if ranks != expected {
        return Err(Error::Malformed(format!("ranks {ranks:?}, expected {expected:?}")));
    }
    if let Some(h) = got.iter().find(|h| h.degree < lo + expected.len() as i64 && h.degree >= lo && !h.reliable) {
        return Err(Error::Window(format!("degree {} is not reliable", h.degree)));
    }
    Ok(())
}

fn ensure(cond: bool, message: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Malformed(message()))
    }
}

struct Suite<'a> {
    report: &'a mut Report,
    field: Field,
    config: &'a RunConfig,
}

impl Suite<'_> {
    fn check(&mut self, group: &str, name: impl std::fmt::Display, f: impl FnOnce() -> Result<()>) {
        let outcome = f();
        self.report.record_over(self.field, group, name.to_string(), outcome);
    }

    fn d(&self) -> usize {
        self.config.max_degree
    }

    fn cap(&self) -> usize {
        self.config.word_cap
    }

    fn window<M: RightModule>(&self, m: &M) -> Window {
        window_for(m, self.config)
    }

    fn structure(&mut self) {
        let f = self.field;
        for &name in SET_FIXTURES {
            let k = match fixture_set(name) {
                Ok(k) => k,
                Err(e) => {
                    self.check("structure", format!("{name}: build"), || Err(e));
                    continue;
                }
            };
            self.check("structure", format!("{name}: simplicial identities"), || k.validate());
            self.chain_laws(name, &k, f);
            self.lambda_laws(name, &k, f);
            if k.vertices().len() == 1 {
                self.one_vertex_laws(name, &k, f);
            }
        }
    }

    fn chain_laws(&mut self, name: &str, k: &SimplicialSet, f: Field) {
        let c = match normalized_chains(k, f) {
            Ok(c) => c,
            Err(e) => return self.check("structure", format!("{name}: chains"), || Err(e)),
        };
        self.check("structure", format!("{name}: chain differential squares to zero"), || {
            c.check_d_squared()?;
            c.complex(k.max_dim()).map(|_| ())
        });
        self.check("structure", format!("{name}: coproduct is coassociative"), || c.check_coassociative());
        self.check("structure", format!("{name}: counit laws"), || c.check_counit());
        self.check("structure", format!("{name}: differential is a coderivation"), || c.check_coderivation());
        if k.vertices().len() == 1 {
            self.check("structure", format!("{name}: reduced coproduct is conilpotent"), || {
                let bad = c
                    .check_conilpotent(k.max_dim() + 1)
                    .into_iter()
                    .find(|(_, o)| *o == Conilpotency::Undetermined);
                ensure(bad.is_none(), || format!("{} is not conilpotent", c.label(bad.unwrap().0)))
            });
        }
    }

    fn lambda_laws(&mut self, name: &str, k: &SimplicialSet, f: Field) {
        let lam = Lambda::new(Arc::new(k.clone()), f);
        let (d, cap) = (self.d(), self.cap());
        self.check("structure", format!("{name}: necklace differential squares to zero"), || {
            for (x, y) in k.vertices().into_iter().tuple_combinations().chain(k.vertices().into_iter().map(|v| (v, v))) {
                for (x, y) in [(x, y), (y, x)] {
                    let h = lam.hom(x, y, d, cap)?;
                    for m in h.bases.iter().flatten() {
                        let dd = lam.diff_of(&lam.diff(m));
                        ensure(dd.is_zero(), || format!("d² ≠ 0 on {}", lam.label(m)))?;
                    }
                }
            }
            Ok(())
        });
        self.check("structure", format!("{name}: necklace coproduct laws"), || {
            for x in k.vertices() {
                for y in k.vertices() {
                    let h = lam.hom(x, y, 3, cap.min(4))?;
                    for m in h.bases.iter().take(4).flatten() {
                        lam.check_aw_chain_map(m)?;
                        lam.check_aw_coassociative(m)?;
                    }
                }
            }
            Ok(())
        });
    }

    fn one_vertex_laws(&mut self, name: &str, k: &SimplicialSet, f: Field) {
        let om = match cobar_of(k, f) {
            Ok(om) => om,
            Err(e) => return self.check("structure", format!("{name}: cobar algebra"), || Err(e)),
        };
        let (d, cap) = (self.d(), self.cap());
        self.check("structure", format!("{name}: cobar differential squares to zero"), || {
            om.complex(d, cap).map(|_| ())
        });
        self.check("structure", format!("{name}: cobar differential is a derivation"), || {
            let short: Vec<_> = (0..=3).flat_map(|deg| om.words(deg, 3)).filter(|w| !w.is_empty()).collect();
            for (u, v) in short.iter().cartesian_product(&short) {
                om.check_derivation(u, v)?;
            }
            Ok(())
        });
        let weight = bar_weight(&om, d, cap);
        let bar = Bar::new(om.clone());
        self.check("structure", format!("{name}: bar differential squares to zero"), || {
            bar.complex(d, weight).map(|_| ())
        });
        self.check("structure", format!("{name}: bar differential is a coderivation"), || {
            for deg in 0..=d.min(4) as i64 {
                for w in bar.words(deg, weight) {
                    bar.check_coderivation(&w)?;
                }
            }
            Ok(())
        });
        let mut modules = vec![ModuleFixture::Trivial, ModuleFixture::Monodromy(2), ModuleFixture::Monodromy(-1)];
        if k.of_dim(2).len() == 1 {
            modules.push(ModuleFixture::Hopf);
        }
        for fixture in modules {
            // Local systems that are inconsistent on 2-simplices are rejected
            // at construction and have nothing to check.
            let Ok(m) = fixture.build(k, &om) else { continue };
            self.module_laws(&format!("{name}/{}", fixture.name()), m);
        }
        let free = FreeModule::new(&om);
        let w = window_for(&free, self.config);
        self.check("structure", format!("{name}/free: twisted differential squares to zero"), || {
            TwistedComplex::new(free, w).complex().map(|_| ())
        });
    }

    fn module_laws(&mut self, name: &str, m: FiniteModule) {
        let w = window_for(&m, self.config);
        let t = TwistedComplex::new(m.clone(), w);
        self.check("structure", format!("{name}: twisted differential squares to zero"), || {
            t.complex().map(|_| ())
        });
        self.check("structure", format!("{name}: coaction is a chain map"), || {
            for deg in m.min_degree()..=w.max_degree {
                for key in t.basis(deg) {
                    t.check_coaction(&key)?;
                }
            }
            Ok(())
        });
        self.check("structure", format!("{name}: hom complexes square to zero"), || {
            HomComplex::new(TwistedComplex::new(m.clone(), w), m.clone())?.complex()?;
            HomComplex::new(BarModule::new(m.clone(), w), m.clone())?.complex()?;
            HomStrict::new(m.clone(), m.clone())?.complex()?;
            Ok(())
        });
    }

    fn sphere(&self) -> Result<(SimplicialSet, Cobar)> {
        let k = sphere_min(2)?;
        let om = cobar_of(&k, self.field)?;
        Ok((k, om))
    }

    fn loop_space(&mut self) {
        let (d, cap) = (self.d(), self.cap());
        let sphere = self.sphere();
        self.check("loop_space", "cobar homology of the 2-sphere is one-dimensional in each degree", || {
            let (_, om) = sphere?;
            let h = om.complex(d, cap)?.homology_ranks(0, d as i64)?;
            expect_ranks(&h, 0, &vec![1; d + 1])
        });
    }

    fn bar_of_cobar(&mut self) {
        let (d, cap) = (self.d().max(4), self.cap());
        let sphere = self.sphere();
        self.check("bar_of_cobar", "bar of cobar of the 2-sphere recovers its homology", || {
            let (_, om) = sphere?;
            let weight = bar_weight(&om, d, cap);
            let h = Bar::new(om).complex(d, weight)?.homology_ranks(0, 4)?;
            expect_ranks(&h, 0, &[1, 0, 1, 0, 0])
        });
    }

    fn comparison(&mut self) {
        let sphere = self.sphere();
        let (_, om) = match sphere {
            Ok(s) => s,
            Err(e) => return self.check("comparison", "2-sphere", || Err(e)),
        };
        let cap = self.cap();
        let modules: Vec<(String, Result<FiniteModule>)> = vec![
            ("trivial".into(), FiniteModule::trivial(&om)),
            ("hopf".into(), FiniteModule::hopf(&om, 1)),
        ];
        for (name, m) in modules {
            match m {
                Ok(m) => self.comparison_for(&name, &m, cap),
                Err(e) => self.check("comparison", name, || Err(e)),
            }
        }
        self.comparison_for("free", &FreeModule::new(&om), cap);
    }

    fn comparison_for<M: RightModule + Clone>(&mut self, name: &str, m: &M, cap: usize) {
        let w = self.window(m);
        let f = self.field;
        self.check("comparison", format!("{name}: φ is a chain map split by id⊗ρ, inducing an isomorphism"), || {
            let (phi, section) = comparison_maps(m, w, cap)?;
            phi.verify()?;
            section.verify()?;
            for (i, (p, s)) in phi.map.maps.iter().zip(&section.map.maps).enumerate() {
                let id = SparseMatrix::identity(f, p.rows());
                ensure(p.mul(s)? == id, || format!("φ∘(id⊗ρ) ≠ id in degree {}", phi.map.lo + i as i64))?;
            }
            for d in phi.induced()? {
                ensure(d.is_isomorphism, || format!("not an isomorphism on homology in degree {}", d.degree))?;
            }
            Ok(())
        });
        let seed = self.config.seed;
        let samples = NILPOTENCY_SAMPLES / 3 + usize::from(name == "free");
        self.check("comparison", format!("{name}: contraction is nilpotent on {samples} kernel samples"), || {
            let b = BarModule::new(m.clone(), w);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for i in 0..samples {
                let deg = (i as i64 % w.max_degree.max(1)) + 1;
                let x = sample_kernel(&b, &mut rng, deg, cap)?;
                let bound = letter_count(&x);
                ensure(nilpotency_order(&b, &x, bound).is_some(), || {
                    format!("sample {i} in degree {deg} not killed within {bound} steps")
                })?;
            }
            Ok(())
        });
    }

    fn hom_equivalence(&mut self) {
        let f = self.field;
        let pairs = (|| -> Result<Vec<(String, FiniteModule, FiniteModule)>> {
            let (_, om) = self.sphere()?;
            let triv = FiniteModule::trivial(&om)?;
            let hopf = FiniteModule::hopf(&om, 1)?;
            let p = cobar_of(&pinched()?, f)?;
            let ptriv = FiniteModule::trivial(&p)?;
            Ok(vec![
                ("sphere_min2 trivial→trivial".into(), triv.clone(), triv.clone()),
                ("sphere_min2 trivial→hopf".into(), triv.clone(), hopf.clone()),
                ("sphere_min2 hopf→trivial".into(), hopf.clone(), triv),
                ("sphere_min2 hopf→hopf".into(), hopf.clone(), hopf),
                ("pinched trivial→trivial".into(), ptriv.clone(), ptriv),
            ])
        })();
        let pairs = match pairs {
            Ok(p) => p,
            Err(e) => return self.check("hom_equivalence", "fixtures", || Err(e)),
        };
        let (seed, cap) = (self.config.seed, self.cap());
        for (i, (name, m, n)) in pairs.into_iter().enumerate() {
            let w = self.window(&m);
            self.check(
                "hom_equivalence",
                format!("{name}: F∘G = id and both commute with δ̂ on {RANDOM_MAPS} random maps"),
                || {
                    let infty = HomComplex::new(BarModule::new(m.clone(), w), n.clone())?;
                    let tau = HomComplex::new(TwistedComplex::new(m.clone(), w), n.clone())?;
                    let (lo, hi) = tau.degree_range();
                    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
                    for s in 0..RANDOM_MAPS {
                        let p = lo + (s as i64 % (hi - lo + 1));
                        let g = tau.random_map(&mut rng, p);
                        let gg = g_map(&infty, &tau, &g)?;
                        ensure(f_map(&infty, &tau, &gg, cap)? == g, || format!("F∘G ≠ id on map {s} of degree {p}"))?;
                        ensure(g_map(&infty, &tau, &tau.delta(&g, p))? == infty.delta(&gg, p), || {
                            format!("G does not commute with δ̂ on map {s} of degree {p}")
                        })?;
                        let h = infty.random_map(&mut rng, p);
                        let lhs = f_map(&infty, &tau, &infty.delta(&h, p), cap)?;
                        let rhs = tau.delta(&f_map(&infty, &tau, &h, cap)?, p);
                        ensure(lhs == rhs, || format!("F does not commute with δ̂ on map {s} of degree {p}"))?;
                    }
                    Ok(())
                },
            );
        }
    }

    fn cobar_iso(&mut self) {
        let (f, cap) = (self.field, self.cap());
        let degree = self.d().min(4);
        for (name, k) in [("circle", circle()), ("sphere_min2", sphere_min(2)), ("pinched", pinched())] {
            self.check("cobar_iso", format!("{name}: cobar algebra matches necklaces through degree {degree}"), || {
                let iso = CobarIso::new(Arc::new(k?), f)?;
                iso.check_basis_bijection(degree, cap)?;
                iso.check_chain_map(degree, cap)?;
                let words: Vec<_> = (0..=degree as i64).flat_map(|d| iso.cobar().words(d, cap.min(3))).collect();
                for (u, v) in words.iter().cartesian_product(&words) {
                    if iso.cobar().degree(u) + iso.cobar().degree(v) <= degree as i64 {
                        iso.check_multiplicative(u, v)?;
                    }
                }
                Ok(())
            });
        }
    }

    fn cube_rank_law(&mut self) {
        let f = self.field;
        let cap = self.cap();
        for n in 1..=4usize {
            self.check("cube_rank_law", format!("Δ^{n}: necklace ranks from first to last vertex"), || {
                let lam = Lambda::new(Arc::new(delta(n)?), f);
                let (x, y) = (lam.vertex("0")?, lam.vertex(&n.to_string())?);
                let h = lam.hom(x, y, n, cap.max(n))?;
                let ranks = h.ranks();
                for d in 0..n {
                    let expected = binomial(n - 1, d) << (n - 1 - d);
                    ensure(ranks.get(d) == Some(&expected), || format!("rank {:?} in degree {d}, expected {expected}", ranks.get(d)))?;
                }
                let mut unit = vec![0; n];
                unit[0] = 1;
                expect_ranks(&h.complex.homology_ranks(0, n as i64 - 1)?, 0, &unit)
            });
        }
    }

    fn ez_identity(&mut self) {
        let f = self.field;
        let mut pairs: Vec<(String, Result<SimplicialSet>, Result<SimplicialSet>)> = Vec::new();
        for n in 1..=3 {
            for l in 0..=2 {
                pairs.push((format!("Δ^{n} × Δ^{l}"), delta(n), delta(l)));
            }
        }
        for (name, right) in [("sphere_min2", sphere_min(2)), ("circle", circle()), ("pinched", pinched())] {
            pairs.push((format!("Δ^2 × {name}"), delta(2), right));
        }
        for (name, s, l) in pairs {
            self.check("ez_identity", format!("{name}: shuffle map satisfies the twisting identity"), || {
                let ez = EzMap::new(Lambda::new(Arc::new(s?), f), l?, 4)?;
                let src = ez.source().clone();
                let vertices = src.set().vertices();
                for (&x, &y) in vertices.iter().cartesian_product(&vertices) {
                    for d in 0..=2 {
                        for t in src.basis(x, y, d, 4).0 {
                            if t.beads().iter().any(|b| src.set().dim(b) > 2) {
                                continue;
                            }
                            for g in 0..ez.right().len() {
                                if ez.right().generator(g).dim <= 2 {
                                    ez.check_mc(&t, &SimplexRef::nondegenerate(g))?;
                                }
                            }
                        }
                    }
                }
                Ok(())
            });
        }
    }

    fn colimits(&mut self) {
        let f = self.field;
        let config = self.config;
        let w = |m: &FiniteModule| window_for(m, config);
        let circle_case = |u: i64| -> Result<(Vec<HomologyDegree>, [usize; 2])> {
            let k = circle()?;
            let om = cobar_of(&k, f)?;
            let m = ModuleFixture::Monodromy(u).build(&k, &om)?;
            let (_, h) = colimit_complex(&k, &m, w(&m))?;
            let oracle = group_homology_oracle_z(f, &[vec![f.int(u)]])?;
            Ok((h, oracle))
        };
        let mut literal = vec![(1, vec![1, 1])];
        if f == Field::Rational {
            literal.push((2, vec![0, 0]));
        }
        for (u, expected) in literal {
            let case = circle_case(u);
            self.check("colimits", format!("circle with monodromy {u}"), || {
                let (h, oracle) = case?;
                expect_ranks(&h, 0, &expected)?;
                ensure(oracle.to_vec() == expected, || format!("oracle gives {oracle:?}"))
            });
        }
        for u in [1, 2, 3, -1] {
            let case = circle_case(u);
            self.check("colimits", format!("circle with monodromy {u} agrees with group homology"), || {
                let (h, oracle) = case?;
                expect_ranks(&h, 0, &oracle)
            });
        }
        for (fixture, expected) in [(ModuleFixture::Hopf, vec![1, 0, 0, 1]), (ModuleFixture::Trivial, vec![1, 0, 1])] {
            let name = fixture.name();
            let result = (|| {
                let (k, om) = self.sphere()?;
                let m = fixture.build(&k, &om)?;
                Ok(colimit_complex(&k, &m, w(&m))?.1)
            })();
            self.check("colimits", format!("sphere_min2 with the {name} module"), || {
                expect_ranks(&result?, 0, &expected)
            });
        }
    }

    fn free_acyclic(&mut self) {
        let sphere = self.sphere();
        let d = self.d().max(4);
        let cfg = RunConfig {
            max_degree: d,
            ..self.config.clone()
        };
        self.check("free_acyclic", "free module on the 2-sphere has the homology of a point", || {
            let (k, om) = sphere?;
            let free = FreeModule::new(&om);
            let w = window_for(&free, &cfg);
            let (_, h) = colimit_complex(&k, &free, w)?;
            expect_ranks(&h, 0, &[1, 0, 0, 0, 0])
        });
    }
}

fn bar_weight(om: &Cobar, d: usize, cap: usize) -> usize {
    AugmentedAlgebra::weight_ratio(om).map_or(cap, |r| r.max(2) * (d + 2))
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Runs every check group over `field`, appending records to `report`.
pub fn verify(report: &mut Report, field: Field, config: &RunConfig) {
    let mut suite = Suite { report, field, config };
    suite.structure();
    suite.loop_space();
    suite.bar_of_cobar();
    suite.comparison();
    suite.hom_equivalence();
    suite.cobar_iso();
    suite.cube_rank_law();
    suite.ez_identity();
    suite.colimits();
    suite.free_acyclic();
}

/// Names of the check groups, in the order they run.
pub const CHECK_GROUPS: &[&str] = &[
    "structure",
    "loop_space",
    "bar_of_cobar",
    "comparison",
    "hom_equivalence",
    "cobar_iso",
    "cube_rank_law",
    "ez_identity",
    "colimits",
    "free_acyclic",
];
