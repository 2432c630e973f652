use rand::Rng;

use crate::error::{Error, Result};

use super::circuit::GateKind;
use super::state::StateVector;

/// Undirected simple graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for &(a, b) in &edges {
            if a >= n || b >= n || a == b || !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::PreconditionViolated(format!("({a}, {b}) is not a simple edge on {n} vertices")));
            }
        }
        Ok(Graph { n, edges })
    }

    /// G(n, p): each unordered pair independently with probability `p`.
    pub fn erdos_renyi<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Self {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if uniform(rng) < p {
                    edges.push((a, b));
                }
            }
        }
        Graph { n, edges }
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = self.n;
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
                components -= 1;
            }
        }
        components == 1
    }
}

/// Uniform draw from `[0, 1)` built from the top 53 bits of a `u64`.
pub fn uniform<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// `prod CZ_{ab} |+>^n` over the edges.
pub fn graph_state(edges: &[(usize, usize)], n: usize) -> Result<StateVector> {
    let g = Graph::new(n, edges.to_vec())?;
    let mut s = StateVector::plus(n);
    for &(a, b) in g.edges() {
        super::circuit::apply_kind(&mut s, GateKind::CZ, &[a, b], &[]);
    }
    Ok(s)
}

#[derive(Clone, Debug)]
pub struct LabeledState {
    pub state: StateVector,
    pub label: f64,
}

#[derive(Clone, Debug, Default)]
pub struct Dataset {
    pub items: Vec<LabeledState>,
}

impl Dataset {
    pub fn new(items: Vec<LabeledState>) -> Self {
        Dataset { items }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

pub const DEFAULT_RETRY_CAP: usize = 10_000;

/// Graph states labelled +1 (connected) or -1 (disconnected), half of each.
///
/// Graphs are drawn from G(n, p) and kept only while their class still has
/// room; `size` odd gives the extra item to the connected class. Fails after
/// `retry_cap` draws.
pub fn balanced_graph_dataset<R: Rng + ?Sized>(
    n: usize,
    size: usize,
    p: f64,
    retry_cap: usize,
    rng: &mut R,
) -> Result<Dataset> {
    if size == 0 || !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidConfig(format!("dataset size {size} with edge probability {p}")));
    }
    let (mut want_pos, mut want_neg) = (size.div_ceil(2), size / 2);
    let mut items = Vec::with_capacity(size);
    let mut attempts = 0;
    while want_pos + want_neg > 0 {
        if attempts == retry_cap {
            return Err(Error::DatasetGenerationFailed { attempts });
        }
        attempts += 1;
        let g = Graph::erdos_renyi(n, p, rng);
        let slot = if g.is_connected() { &mut want_pos } else { &mut want_neg };
        if *slot > 0 {
            *slot -= 1;
            let label = if g.is_connected() { 1.0 } else { -1.0 };
            items.push(LabeledState { state: graph_state(g.edges(), n)?, label });
        }
    }
    Ok(Dataset { items })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn signs(s: &StateVector) -> Vec<i32> {
        s.amplitudes().iter().map(|a| if a.re > 0.0 { 1 } else { -1 }).collect()
    }

    #[test]
    fn graph_state_examples() {
        let e = graph_state(&[], 2).unwrap();
        assert!(e.amplitudes().iter().all(|a| (a.re - 0.5).abs() < 1e-15 && a.im == 0.0));
        let one = graph_state(&[(0, 1)], 2).unwrap();
        assert_eq!(signs(&one), vec![1, 1, 1, -1]);
        let tri = graph_state(&[(0, 1), (1, 2), (0, 2)], 3).unwrap();
        assert_eq!(signs(&tri), vec![1, 1, 1, -1, 1, -1, -1, -1]);
        let m = 8f64.sqrt().recip();
        assert!(tri.amplitudes().iter().all(|a| (a.norm() - m).abs() < 1e-15));
    }

    #[test]
    fn non_simple_graphs_are_rejected() {
        assert!(graph_state(&[(0, 0)], 2).is_err());
        assert!(graph_state(&[(0, 1), (1, 0)], 2).is_err());
        assert!(graph_state(&[(0, 2)], 2).is_err());
    }

    #[test]
    fn connectivity() {
        assert!(Graph::new(3, vec![(0, 1), (1, 2)]).unwrap().is_connected());
        assert!(!Graph::new(3, vec![(0, 1)]).unwrap().is_connected());
        assert!(Graph::new(1, vec![]).unwrap().is_connected());
        assert!(!Graph::new(4, vec![(0, 1), (2, 3)]).unwrap().is_connected());
    }

    #[test]
    fn uniform_is_in_unit_interval() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let xs: Vec<f64> = (0..10_000).map(|_| uniform(&mut rng)).collect();
        assert!(xs.iter().all(|&x| (0.0..1.0).contains(&x)));
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        assert!((mean - 0.5).abs() < 0.02);
    }

    #[test]
    fn dataset_is_balanced_and_labelled() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let d = balanced_graph_dataset(6, 50, 0.4, DEFAULT_RETRY_CAP, &mut rng).unwrap();
        assert_eq!(d.len(), 50);
        assert_eq!(d.items.iter().filter(|x| x.label > 0.0).count(), 25);
        for item in &d.items {
            let amps = item.state.amplitudes();
            // For a graph state, amplitude signs determine the graph.
            let n = 6;
            let mut edges = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    let idx = (1 << (n - 1 - a)) | (1 << (n - 1 - b));
                    if amps[idx].re < 0.0 {
                        edges.push((a, b));
                    }
                }
            }
            let connected = Graph::new(n, edges).unwrap().is_connected();
            assert_eq!(connected, item.label > 0.0);
        }
    }

    #[test]
    fn impossible_balance_fails() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        // A single vertex is always connected.
        let err = balanced_graph_dataset(1, 4, 0.4, 100, &mut rng).unwrap_err();
        assert!(matches!(err, Error::DatasetGenerationFailed { attempts: 100 }));
    }
}
