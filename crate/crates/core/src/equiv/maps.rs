use crate::dgalg::rho;
use crate::dgmod::{eval, eval_lin, FiniteModule, HomInfty, HomSource, HomTau, LinearMap, RightModule, TwistedKey};
use crate::dgmod::BarModKey;
use crate::equiv::comparison::contraction;
use crate::error::{Error, Result};
use crate::linalg::{Lin, Vector};

fn compatible<M: RightModule>(infty: &HomInfty<M>, tau: &HomTau<M>) -> Result<()> {
    if infty.source().window() != tau.source().window() {
        return Err(Error::Window("hom complexes use different windows".into()));
    }
    crate::dgmod::same_algebra(infty.target().cobar(), tau.target().cobar())
}

/// `F(f) = f∘(id⊗ρ_C)` on every source element of the `tau` window.
pub fn f_map<M: RightModule>(
    infty: &HomInfty<M>,
    tau: &HomTau<M>,
    f: &LinearMap<BarModKey<M::Key>>,
    max_length: usize,
) -> Result<LinearMap<TwistedKey<M::Key>>> {
    compatible(infty, tau)?;
    let cobar = tau.source().cobar();
    let (lo, hi) = tau.source().source_range();
    let mut out = Lin::zero();
    for d in lo..=hi {
        for x in tau.source_basis(d) {
            let r = rho(cobar, x.1, max_length)?;
            let lifted = r.map_keys(|w| (x.0.clone(), w.clone()));
            for (&n, v) in eval_lin(f, &lifted).iter() {
                out.add_term((x.clone(), n), v.clone());
            }
        }
    }
    Ok(out)
}

/// `G(g)(m⊗{}) = g(m⊗ν(1))`,
/// `G(g)(m⊗{[c₁|…|c_k]}) = Σ_{i<k} (−1)^{|[c₁|…|c_i]|} g(m·[c₁|…|c_i]⊗c_{i+1})·[c_{i+2}|…|c_k]`,
/// and zero on longer bar words.
pub fn g_map<M: RightModule>(
    infty: &HomInfty<M>,
    tau: &HomTau<M>,
    g: &LinearMap<TwistedKey<M::Key>>,
) -> Result<LinearMap<BarModKey<M::Key>>> {
    compatible(infty, tau)?;
    let module = infty.source().module();
    let n: &FiniteModule = infty.target();
    let cobar = module.cobar();
    let f = module.field();
    let (lo, hi) = infty.source().source_range();
    let mut out = Lin::zero();
    for d in lo..=hi {
        for x in infty.source_basis(d) {
            let (m, w) = x;
            let value = match w.as_slice() {
                [] => eval(g, &(m.clone(), cobar.unit())),
                [a] => {
                    let mut value = Vector::zero();
                    for i in 0..a.len() {
                        let (head, rest) = a.split_at(i);
                        let src = module.act_word(m, head).map_keys(|mh| (mh.clone(), rest[0]));
                        let tail = Lin::single(rest[1..].to_vec(), f.one());
                        let term = n.act(&eval_lin(g, &src), &tail);
                        value.add_scaled(&term, &f.sign(cobar.degree(head)));
                    }
                    value
                }
                _ => Vector::zero(),
            };
            for (&k, v) in value.iter() {
                out.add_term((x.clone(), k), v.clone());
            }
        }
    }
    Ok(out)
}

/// `h̃(f) = f∘h` on the window elements whose image under `h` stays inside
/// the window.
pub fn h_tilde<M: RightModule>(infty: &HomInfty<M>, f: &LinearMap<BarModKey<M::Key>>) -> LinearMap<BarModKey<M::Key>> {
    let b = infty.source();
    let (lo, hi) = b.source_range();
    let mut out = Lin::zero();
    for d in lo..hi {
        for x in infty.source_basis(d) {
            for (&n, v) in eval_lin(f, &contraction(b, x)).iter() {
                out.add_term((x.clone(), n), v.clone());
            }
        }
    }
    out
}
