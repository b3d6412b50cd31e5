use crate::error::{Error, Result};
use crate::groebner::{kernel, Ideal, Vector};
use super::primes::minimal_primes;
use crate::homalg::PresentedModule;

/// `A_k = q_k A_{k-1}` inside `M`, with `A_0 = M`.
#[derive(Clone, Debug)]
pub struct FiltrationLevel {
    /// Index into the prime list of the prime killing `A_{k-1} / A_k`.
    pub prime: usize,
    /// Generators of `A_k` in the generator coordinates of `M`.
    pub gens: Vec<Vector>,
    /// Generator `i` of `A_k` is `q_k.gens[g] · (generator j of A_{k-1})`
    /// for `origins[i] = (j, g)`.
    pub origins: Vec<(usize, usize)>,
    /// `A_k`, presented on `gens`.
    pub submodule: PresentedModule,
    /// `A_{k-1} / A_k`, presented on the generators of `A_{k-1}`.
    pub quotient: PresentedModule,
}

/// `M = A_0 ⊇ A_1 ⊇ … ⊇ A_t = 0` with every `A_{k-1}/A_k` killed by a prime.
#[derive(Clone, Debug)]
pub struct PrimeFiltration {
    pub module: PresentedModule,
    pub primes: Vec<Ideal>,
    pub levels: Vec<FiltrationLevel>,
}

impl PrimeFiltration {
    /// `A_k`, with `A_0 = M`.
    pub fn submodule(&self, k: usize) -> &PresentedModule {
        if k == 0 {
            &self.module
        } else {
            &self.levels[k - 1].submodule
        }
    }

    /// Checks that every quotient is killed by its prime and the last
    /// level is zero.
    pub fn verify(&self) -> Result<bool> {
        for lvl in &self.levels {
            let s = lvl.quotient.ambient();
            for g in self.primes[lvl.prime].gens() {
                for i in 0..lvl.quotient.ngens() {
                    if !lvl.quotient.element_is_zero(&Vector::unit(s, i).mul_poly(s, g))? {
                        return Ok(false);
                    }
                }
            }
        }
        match self.levels.last() {
            Some(l) => l.submodule.is_zero(),
            None => self.module.is_zero(),
        }
    }
}

/// Multiplies by the primes in turn (`p_1, …, p_m, p_1, …`) until the
/// submodule vanishes, which happens once `∏ p_i ⊆ √ann M`.
///
/// Without hints the minimal primes of the ring are used (monomial and
/// principal cases only).
pub fn prime_filtration(m: &PresentedModule, hints: Option<&[Ideal]>) -> Result<PrimeFiltration> {
    let owned;
    let primes = match hints {
        Some(p) => p,
        None => {
            owned = minimal_primes(m.ring().ideal(), None)
                .map_err(|e| match e {
                    Error::Unsupported(_) => Error::Unsupported("filtration step unverified: supply primes".into()),
                    e => e,
                })?
                .into_iter()
                .map(|a| a.prime)
                .collect::<Vec<_>>();
            &owned
        }
    };
    if primes.is_empty() {
        return Err(Error::Invalid("need at least one prime".into()));
    }
    let mut product = Ideal::unit(m.ambient());
    for p in primes {
        product = product.product(p)?;
    }
    if !m.annihilator()?.radical_contains_ideal(&product)? {
        return Err(Error::Verification("the primes do not cover the support of the module".into()));
    }
    let s = m.ambient().clone();
    let rank = m.ngens();
    let lm = m.relation_gb()?.to_vec();
    let max_levels = 64 * primes.len();
    let mut levels = Vec::new();
    if m.is_zero()? {
        return Ok(PrimeFiltration {
            module: m.clone(),
            primes: primes.to_vec(),
            levels,
        });
    }
    let mut prev: Vec<Vector> = (0..rank).map(|i| Vector::unit(&s, i)).collect();
    let mut k = 0;
    loop {
        if levels.len() >= max_levels {
            return Err(Error::Cutoff("prime filtration does not terminate; check the primes".into()));
        }
        let pi = k % primes.len();
        k += 1;
        let q = &primes[pi];
        let mut gens: Vec<Vector> = Vec::new();
        let mut origins = Vec::new();
        for (j, v) in prev.iter().enumerate() {
            for (g, p) in q.gens().iter().enumerate() {
                let w = crate::groebner::module_normal_form(&s, &v.mul_poly(&s, p), &lm);
                if !w.is_zero() && !gens.contains(&w) {
                    gens.push(w);
                    origins.push((j, g));
                }
            }
        }
        let rels = kernel(&s, &gens, rank, &lm)?;
        let submodule = PresentedModule::new(m.ring(), gens.len(), rels)?;
        let mut modulo = lm.clone();
        modulo.extend(gens.iter().cloned());
        let qrels = kernel(&s, &prev, rank, &modulo)?;
        let quotient = PresentedModule::new(m.ring(), prev.len(), qrels)?;
        let done = gens.is_empty();
        levels.push(FiltrationLevel {
            prime: pi,
            gens: gens.clone(),
            origins,
            submodule,
            quotient,
        });
        if done {
            break;
        }
        prev = gens;
    }
    Ok(PrimeFiltration {
        module: m.clone(),
        primes: primes.to_vec(),
        levels,
    })
}
