//! A deliberately plain Q-value iteration, independent of the library solver.

/// Solves q(s,a) = gains[s,a] + γ Σ_{s'} kernel[s,a,s'] max_{a'} q(s',a') by
/// synchronous fixed-point iteration until the sup-norm update falls below
/// `tol`. `gains` is indexed s*a_count + a, `kernel` (s*a_count + a)*s_count + s'.
pub fn bellman_q_oracle(
    gains: &[f64],
    kernel: &[f64],
    s_count: usize,
    a_count: usize,
    gamma: f64,
    tol: f64,
) -> Vec<f64> {
    assert_eq!(gains.len(), s_count * a_count);
    assert_eq!(kernel.len(), s_count * a_count * s_count);
    let mut q = vec![0.0f64; s_count * a_count];
    loop {
        let state_values: Vec<f64> = (0..s_count)
            .map(|s| {
                (0..a_count)
                    .map(|a| q[s * a_count + a])
                    .fold(f64::NEG_INFINITY, f64::max)
            })
            .collect();
        let mut next = vec![0.0f64; s_count * a_count];
        let mut delta = 0.0f64;
        for s in 0..s_count {
            for a in 0..a_count {
                let pair = s * a_count + a;
                let mut value = gains[pair];
                for (s2, v) in state_values.iter().enumerate() {
                    value += gamma * kernel[pair * s_count + s2] * v;
                }
                delta = delta.max((value - q[pair]).abs());
                next[pair] = value;
            }
        }
        q = next;
        if delta < tol {
            return q;
        }
    }
}
