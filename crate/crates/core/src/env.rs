//! Ground-truth finite MDP simulators: the clique-corridor benchmark, random
//! MDP fixtures, a seeded transition sampler, and the irreducibility check.

use rand_xoshiro::rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::error::{Error, Result};

/// A deterministic, seedable draw stream. One stream per trajectory.
#[derive(Debug, Clone)]
pub struct RngStream {
    inner: Xoshiro256PlusPlus,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: Xoshiro256PlusPlus::seed_from_u64(seed),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform draw in [0, 1) with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Unbiased uniform index in 0..n by rejection.
    pub fn next_below(&mut self, n: usize) -> usize {
        assert!(n > 0);
        let n = n as u64;
        let zone = u64::MAX - (u64::MAX % n);
        loop {
            let raw = self.next_u64();
            if raw < zone {
                return (raw % n) as usize;
            }
        }
    }

    /// Standard exponential draw, −ln(1 − U).
    fn next_exponential(&mut self) -> f64 {
        -(1.0 - self.next_f64()).ln()
    }

    /// Uniform Dirichlet(1,…,1) draw of the given length.
    fn next_flat_dirichlet(&mut self, len: usize) -> Vec<f64> {
        let mut draws: Vec<f64> = (0..len).map(|_| self.next_exponential()).collect();
        let total: f64 = draws.iter().sum();
        for d in &mut draws {
            *d /= total;
        }
        draws
    }
}

/// A fully specified finite MDP: transition kernel plus initial state.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvSpec {
    s_count: usize,
    a_count: usize,
    /// kernel[(s·A + a)·S + s'] = p(s'|s,a)
    kernel: Vec<f64>,
    initial_state: usize,
}

impl EnvSpec {
    pub fn new(
        s_count: usize,
        a_count: usize,
        kernel: Vec<f64>,
        initial_state: usize,
    ) -> Result<Self> {
        if s_count == 0 || a_count == 0 {
            return Err(Error::Domain(
                "state and action counts must be positive".into(),
            ));
        }
        if kernel.len() != s_count * a_count * s_count {
            return Err(Error::ShapeMismatch(format!(
                "kernel needs {} entries, got {}",
                s_count * a_count * s_count,
                kernel.len()
            )));
        }
        if initial_state >= s_count {
            return Err(Error::IndexOutOfRange {
                name: "initial_state",
                index: initial_state,
                bound: s_count,
            });
        }
        for pair in 0..s_count * a_count {
            let row = &kernel[pair * s_count..(pair + 1) * s_count];
            if row.iter().any(|&p| !(0.0..=1.0).contains(&p)) {
                return Err(Error::Domain("kernel entries must lie in [0, 1]".into()));
            }
            let total: f64 = row.iter().sum();
            if (total - 1.0).abs() > 1e-12 {
                return Err(Error::Domain(format!(
                    "kernel row {pair} sums to {total}, expected 1"
                )));
            }
        }
        Ok(Self {
            s_count,
            a_count,
            kernel,
            initial_state,
        })
    }

    pub fn s_count(&self) -> usize {
        self.s_count
    }

    pub fn a_count(&self) -> usize {
        self.a_count
    }

    pub fn initial_state(&self) -> usize {
        self.initial_state
    }

    pub fn row(&self, s: usize, a: usize) -> Result<&[f64]> {
        if s >= self.s_count {
            return Err(Error::IndexOutOfRange {
                name: "state",
                index: s,
                bound: self.s_count,
            });
        }
        if a >= self.a_count {
            return Err(Error::IndexOutOfRange {
                name: "action",
                index: a,
                bound: self.a_count,
            });
        }
        let off = (s * self.a_count + a) * self.s_count;
        Ok(&self.kernel[off..off + self.s_count])
    }

    /// Serializes to text: a `S A init` header, then one probability row per
    /// (state, action) pair, states outermost.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.s_count, self.a_count, self.initial_state);
        for pair in 0..self.s_count * self.a_count {
            let row = &self.kernel[pair * self.s_count..(pair + 1) * self.s_count];
            let line: Vec<String> = row.iter().map(|p| p.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the [`EnvSpec::to_text`] format.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("missing header line".into()))?;
        let head: Vec<usize> = header
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad header token {tok:?}: {e}")))
            })
            .collect::<Result<_>>()?;
        if head.len() != 3 {
            return Err(Error::Parse("header must be \"S A init\"".into()));
        }
        let (s_count, a_count, initial) = (head[0], head[1], head[2]);
        let mut kernel = Vec::with_capacity(s_count * a_count * s_count);
        for _ in 0..s_count * a_count {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse("missing kernel row".into()))?;
            let row: Vec<f64> = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<f64>()
                        .map_err(|e| Error::Parse(format!("bad probability {tok:?}: {e}")))
                })
                .collect::<Result<_>>()?;
            if row.len() != s_count {
                return Err(Error::Parse(format!(
                    "kernel row has {} entries, expected {s_count}",
                    row.len()
                )));
            }
            kernel.extend(row);
        }
        if lines.next().is_some() {
            return Err(Error::Parse("trailing content after kernel rows".into()));
        }
        Self::new(s_count, a_count, kernel, initial)
    }
}

/// Two densely connected cliques of `clique_size` states joined by a
/// deterministic corridor of `corridor_len` states.
///
/// Action 0 walks the corridor toward clique A (states 0..c), action 1 toward
/// clique B (the last c states). Rows inside a clique are uniform-Dirichlet
/// random over that clique; the boundary state's non-outward row also covers
/// the adjacent corridor entrance, and its outward action enters the corridor
/// deterministically. The agent starts at state 0, inside clique A.
pub fn make_clique_corridor(clique_size: usize, corridor_len: usize, seed: u64) -> Result<EnvSpec> {
    if clique_size == 0 || corridor_len == 0 {
        return Err(Error::Domain(
            "clique size and corridor length must be positive".into(),
        ));
    }
    let c = clique_size;
    let s_count = 2 * c + corridor_len;
    let a_count = 2;
    let corridor_start = c; // first corridor state, adjacent to clique A
    let corridor_end = c + corridor_len - 1; // last corridor state, adjacent to clique B
    let b_start = c + corridor_len; // boundary state of clique B

    let mut rng = RngStream::new(seed);
    let mut kernel = vec![0.0f64; s_count * a_count * s_count];
    let set_random_row =
        |kernel: &mut Vec<f64>, s: usize, a: usize, support: &[usize], rng: &mut RngStream| {
            let weights = rng.next_flat_dirichlet(support.len());
            let off = (s * a_count + a) * s_count;
            for (&target, w) in support.iter().zip(weights) {
                kernel[off + target] = w;
            }
        };

    for s in 0..s_count {
        if s < c {
            // Clique A.
            let boundary = s == c - 1;
            let clique: Vec<usize> = (0..c).collect();
            let mut with_entrance = clique.clone();
            with_entrance.push(corridor_start);
            if boundary {
                // Outward action leaves for the corridor deterministically.
                set_random_row(&mut kernel, s, 0, &with_entrance, &mut rng);
                kernel[(s * a_count + 1) * s_count + corridor_start] = 1.0;
            } else {
                set_random_row(&mut kernel, s, 0, &clique, &mut rng);
                set_random_row(&mut kernel, s, 1, &clique, &mut rng);
            }
        } else if s < b_start {
            // Corridor: deterministic moves in both directions.
            let down = if s == corridor_start { c - 1 } else { s - 1 };
            let up = if s == corridor_end { b_start } else { s + 1 };
            kernel[(s * a_count) * s_count + down] = 1.0;
            kernel[(s * a_count + 1) * s_count + up] = 1.0;
        } else {
            // Clique B.
            let boundary = s == b_start;
            let clique: Vec<usize> = (b_start..s_count).collect();
            let mut with_entrance = clique.clone();
            with_entrance.push(corridor_end);
            if boundary {
                kernel[(s * a_count) * s_count + corridor_end] = 1.0;
                set_random_row(&mut kernel, s, 1, &with_entrance, &mut rng);
            } else {
                set_random_row(&mut kernel, s, 0, &clique, &mut rng);
                set_random_row(&mut kernel, s, 1, &clique, &mut rng);
            }
        }
    }
    EnvSpec::new(s_count, a_count, kernel, 0)
}

/// A random MDP with every row drawn from a flat Dirichlet, resampled until
/// irreducible (at most 100 attempts).
pub fn make_random_mdp(s_count: usize, a_count: usize, seed: u64) -> Result<EnvSpec> {
    if s_count == 0 || a_count == 0 {
        return Err(Error::Domain(
            "state and action counts must be positive".into(),
        ));
    }
    let mut rng = RngStream::new(seed);
    for _ in 0..100 {
        let mut kernel = Vec::with_capacity(s_count * a_count * s_count);
        for _ in 0..s_count * a_count {
            kernel.extend(rng.next_flat_dirichlet(s_count));
        }
        let env = EnvSpec::new(s_count, a_count, kernel, 0)?;
        if is_irreducible(&env) {
            return Ok(env);
        }
    }
    Err(Error::ResourceBudget {
        required: 101.0,
        budget: 100.0,
    })
}

/// Samples the successor state by inverse CDF over the kernel row.
pub fn step(env: &EnvSpec, s: usize, a: usize, rng: &mut RngStream) -> Result<usize> {
    let row = env.row(s, a)?;
    let u = rng.next_f64();
    let mut cum = 0.0;
    let mut last_positive = 0;
    for (s2, &p) in row.iter().enumerate() {
        if p > 0.0 {
            last_positive = s2;
        }
        cum += p;
        if u < cum {
            return Ok(s2);
        }
    }
    Ok(last_positive)
}

/// Whether the chain induced by uniformly random actions is irreducible:
/// the graph with an edge s → s' whenever some action reaches s' must be
/// strongly connected.
pub fn is_irreducible(env: &EnvSpec) -> bool {
    let n = env.s_count();
    let reaches = |forward: bool| -> bool {
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(s) = stack.pop() {
            let reachable: Vec<usize> = (0..n)
                .filter(|&t| {
                    let (from, to) = if forward { (s, t) } else { (t, s) };
                    !seen[t]
                        && (0..env.a_count()).any(|a| env.row(from, a).expect("in range")[to] > 0.0)
                })
                .collect();
            for t in reachable {
                seen[t] = true;
                stack.push(t);
            }
        }
        seen.iter().all(|&v| v)
    };
    reaches(true) && reaches(false)
}
