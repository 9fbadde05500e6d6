//! Seeded random construction of polygonal 2-trees.
//!
//! Instances are grown exactly the way the class is defined: start from a
//! cycle, then repeatedly pick an existing edge and glue a path of fresh
//! vertices across its endpoints. Every output therefore belongs to the
//! class by construction and carries its own building plan, which doubles
//! as the expected answer when testing the recognizer.

use crate::decomp::{verify_nice, Ear, NiceEarDecomposition};
use crate::graph::{EdgeId, Graph, VertexId};

/// The splitmix64 generator: a 64-bit counter scrambled by two
/// multiply-xorshift rounds. Chosen over an external dependency because
/// corpora must be byte-identical across platforms and toolchain
/// upgrades, and the whole algorithm is five lines.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// A value in `0..bound` by reduction. The modulo bias is far below
    /// anything test corpora could notice.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        self.next_u64() % bound
    }
}

/// How many edges each glued path gets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EarLengthLaw {
    /// Every ear has exactly this many edges (at least 2).
    Fixed(u32),
    /// Uniform over `min..=max` edges (`min` at least 2).
    Uniform { min: u32, max: u32 },
}

impl EarLengthLaw {
    fn sample(&self, rng: &mut SplitMix64) -> u32 {
        match *self {
            EarLengthLaw::Fixed(k) => {
                assert!(k >= 2, "an ear needs at least two edges");
                k
            }
            EarLengthLaw::Uniform { min, max } => {
                assert!(min >= 2 && min <= max, "bad ear length range");
                min + rng.below((max - min + 1) as u64) as u32
            }
        }
    }
}

/// Which existing edge the next ear attaches to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AttachBias {
    /// Any edge, uniformly: tends towards shallow, bushy instances.
    Uniform,
    /// Quadratically tilted towards recently created edges: grows deep
    /// chains of nested polygons.
    PreferRecent,
    /// Only edges not yet covered by two polygons: grows tree-like
    /// arrangements where no edge is reused.
    PreferExternal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenSpec {
    /// Growth stops once at least this many vertices exist (at least 3).
    /// The last ear may overshoot by up to one ear's worth of internals.
    pub target_vertices: usize,
    pub ear_law: EarLengthLaw,
    pub attach_bias: AttachBias,
    pub seed: u64,
}

struct Builder {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    ears: Vec<Ear>,
    /// Edges covered by exactly one polygon so far.
    external: Vec<EdgeId>,
}

impl Builder {
    fn base_cycle(ear_edges: u32) -> Builder {
        let len = ear_edges as usize + 1;
        let mut b = Builder {
            n: len,
            edges: Vec::new(),
            ears: Vec::new(),
            external: Vec::new(),
        };
        b.edges.push((0, 1));
        b.external.push(0);
        b.ears.push(Ear {
            path: vec![0, 1],
            closing_edge: None,
        });
        let mut path: Vec<VertexId> = (1..len as VertexId).collect();
        path.push(0);
        for w in path.windows(2) {
            b.external.push(b.edges.len() as EdgeId);
            b.edges.push((w[0], w[1]));
        }
        b.ears.push(Ear {
            path,
            closing_edge: Some(0),
        });
        b
    }

    fn add_ear(&mut self, over: EdgeId, ear_edges: u32) {
        let (x, y) = self.edges[over as usize];
        let internals = ear_edges as usize - 1;
        let mut path = Vec::with_capacity(internals + 2);
        path.push(x);
        path.extend((self.n..self.n + internals).map(|v| v as VertexId));
        path.push(y);
        self.n += internals;
        for w in path.windows(2) {
            self.external.push(self.edges.len() as EdgeId);
            self.edges.push((w[0], w[1]));
        }
        self.ears.push(Ear {
            path,
            closing_edge: Some(over),
        });
    }

    fn finish(self) -> (Graph, NiceEarDecomposition) {
        let g = Graph::from_edges(self.n, self.edges).expect("grown graphs are simple");
        let d = NiceEarDecomposition { ears: self.ears };
        debug_assert!(verify_nice(&g, &d));
        (g, d)
    }
}

/// Grows one pseudorandom instance together with its building plan.
pub fn generate(spec: &GenSpec) -> (Graph, NiceEarDecomposition) {
    assert!(
        spec.target_vertices >= 3,
        "no polygonal 2-tree below three vertices"
    );
    let mut rng = SplitMix64::new(spec.seed);
    let mut b = Builder::base_cycle(spec.ear_law.sample(&mut rng));
    while b.n < spec.target_vertices {
        let over = match spec.attach_bias {
            AttachBias::Uniform => rng.below(b.edges.len() as u64) as EdgeId,
            AttachBias::PreferRecent => {
                let m = b.edges.len();
                let r = (rng.next_u64() >> 40) as f64 / (1u64 << 24) as f64;
                let back = ((m as f64) * r * r) as usize;
                (m - 1 - back.min(m - 1)) as EdgeId
            }
            AttachBias::PreferExternal => {
                let pos = rng.below(b.external.len() as u64) as usize;
                b.external.swap_remove(pos)
            }
        };
        b.add_ear(over, spec.ear_law.sample(&mut rng));
    }
    b.finish()
}

/// The regular member of the class: a `k`-gon, with `rings - 1` further
/// `k`-gons glued over seed-chosen edges. Has exactly
/// `k + (rings - 1) * (k - 2)` vertices and `k + (rings - 1) * (k - 1)`
/// edges.
pub fn generate_kgonal(k: u32, rings: u32, seed: u64) -> (Graph, NiceEarDecomposition) {
    assert!(k >= 3, "polygons have at least three sides");
    assert!(rings >= 1);
    let mut rng = SplitMix64::new(seed);
    let mut b = Builder::base_cycle(k - 1);
    for _ in 1..rings {
        let over = rng.below(b.edges.len() as u64) as EdgeId;
        b.add_ear(over, k - 1);
    }
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::{recognize, RecognitionOutcome};
    use crate::edgelist::write_edge_list;

    #[test]
    fn splitmix_is_deterministic_and_seed_sensitive() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        let mut c = SplitMix64::new(43);
        let xs: Vec<u64> = (0..8).map(|_| a.next_u64()).collect();
        let ys: Vec<u64> = (0..8).map(|_| b.next_u64()).collect();
        let zs: Vec<u64> = (0..8).map(|_| c.next_u64()).collect();
        assert_eq!(xs, ys);
        assert_ne!(xs, zs);
        let mut r = SplitMix64::new(7);
        for _ in 0..1000 {
            assert!(r.below(10) < 10);
        }
    }

    #[test]
    fn kgonal_sizes_follow_the_closed_form() {
        for k in 3..=6u32 {
            for rings in 1..=4u32 {
                let (g, d) = generate_kgonal(k, rings, 5);
                let n = k as usize + (rings as usize - 1) * (k as usize - 2);
                let m = k as usize + (rings as usize - 1) * (k as usize - 1);
                assert_eq!(g.vertex_count(), n, "k={k} rings={rings}");
                assert_eq!(g.edge_count(), m, "k={k} rings={rings}");
                assert!(m <= 2 * n - 3);
                assert_eq!(d.ear_count(), rings as usize + 1);
                assert!(verify_nice(&g, &d));
                assert!(matches!(recognize(&g), RecognitionOutcome::Accepted(_)));
            }
        }
    }

    #[test]
    fn smallest_kgonal_instances() {
        let (g, _) = generate_kgonal(3, 2, 0);
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 5));
        let (g, _) = generate_kgonal(4, 1, 0);
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 4));
        let (g, _) = generate_kgonal(5, 3, 9);
        assert_eq!((g.vertex_count(), g.edge_count()), (11, 13));
    }

    #[test]
    fn same_seed_reproduces_the_same_bytes() {
        let spec = GenSpec {
            target_vertices: 60,
            ear_law: EarLengthLaw::Uniform { min: 2, max: 6 },
            attach_bias: AttachBias::Uniform,
            seed: 0xDEADBEEF,
        };
        let (a, _) = generate(&spec);
        let (b, _) = generate(&spec);
        assert_eq!(write_edge_list(&a), write_edge_list(&b));
        let (c, _) = generate(&GenSpec { seed: 1, ..spec });
        assert_ne!(write_edge_list(&a), write_edge_list(&c));
    }

    #[test]
    fn grown_corpus_is_recognized_with_valid_plans() {
        let laws = [
            EarLengthLaw::Fixed(2),
            EarLengthLaw::Fixed(4),
            EarLengthLaw::Uniform { min: 2, max: 7 },
        ];
        let biases = [
            AttachBias::Uniform,
            AttachBias::PreferRecent,
            AttachBias::PreferExternal,
        ];
        for (li, &ear_law) in laws.iter().enumerate() {
            for (bi, &attach_bias) in biases.iter().enumerate() {
                for seed in 0..6u64 {
                    let spec = GenSpec {
                        target_vertices: 40,
                        ear_law,
                        attach_bias,
                        seed: seed * 31 + li as u64 * 7 + bi as u64,
                    };
                    let (g, d) = generate(&spec);
                    let n = g.vertex_count();
                    let m = g.edge_count();
                    assert!(n >= 40);
                    assert!(m <= 2 * n - 3);
                    assert!(verify_nice(&g, &d));
                    assert!(
                        matches!(recognize(&g), RecognitionOutcome::Accepted(_)),
                        "spec {spec:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn ear_lengths_respect_the_law() {
        let spec = GenSpec {
            target_vertices: 80,
            ear_law: EarLengthLaw::Uniform { min: 3, max: 5 },
            attach_bias: AttachBias::PreferRecent,
            seed: 11,
        };
        let (_, d) = generate(&spec);
        for ear in &d.ears[1..] {
            let edges = ear.path.len() - 1;
            assert!((3..=5).contains(&edges), "ear of {edges} edges");
        }
        let (_, d) = generate(&GenSpec {
            ear_law: EarLengthLaw::Fixed(3),
            ..spec
        });
        for ear in &d.ears[1..] {
            assert_eq!(ear.path.len(), 4);
        }
    }
}
