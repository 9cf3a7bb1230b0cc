use proptest::prelude::*;

use centralbag_core::centralbag::{bag_invariants, central_bag, covering_sequence, dimension_partition, validate_audit};
use centralbag_core::config::RunConfig;
use centralbag_core::corpus::random_chordal;
use centralbag_core::decompose::chordal::chordal_td;
use centralbag_core::decompose::td::validate_td;
use centralbag_core::detect::find_induced;
use centralbag_core::graph::{clique_number, subdivide_all};
use centralbag_core::separators::min_balanced_separator;
use centralbag_core::treewidth::exact_treewidth;
use centralbag_core::weights::{format_q, parse_q, q, Q};
use centralbag_core::{Balance, Graph, Limits, WeightFunction};
use rand::SeedableRng;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::new(n, edges).unwrap()
        })
    })
}

fn weights(n: usize) -> impl Strategy<Value = WeightFunction> {
    prop::collection::vec(0u64..6, n).prop_map(|mut w| {
        if w.iter().all(|&x| x == 0) {
            w[0] = 1;
        }
        WeightFunction::from_integers(&w).unwrap()
    })
}

fn graph_and_weights(max_n: usize) -> impl Strategy<Value = (Graph, WeightFunction)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), weights(n))
    })
}

fn degeneracy(g: &Graph) -> usize {
    let n = g.n();
    let mut gone = vec![false; n];
    let mut best = 0;
    for _ in 0..n {
        let deg = |v: usize| g.neighbors(v).iter().filter(|&&u| !gone[u]).count();
        let v = (0..n).filter(|&v| !gone[v]).min_by_key(|&v| deg(v)).unwrap();
        best = best.max(deg(v));
        gone[v] = true;
    }
    best
}

fn heaviest_component(g: &Graph, w: &WeightFunction, removed: &[bool]) -> Q {
    let mut seen = removed.to_vec();
    let mut best = q(0, 1);
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![s];
        let mut total = q(0, 1);
        while let Some(v) = stack.pop() {
            total += w.get(v).clone();
            for &u in g.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        best = best.max(total);
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn treewidth_witness_is_tight(g in graph(9)) {
        let r = exact_treewidth(&g, &Limits::default()).unwrap();
        prop_assert!(r.exact);
        prop_assert_eq!(validate_td(&g, &r.decomposition), Ok(r.width));
        let omega = clique_number(&g, &Limits::default()).unwrap();
        prop_assert!(r.width + 1 >= omega);
        prop_assert!(r.width >= degeneracy(&g));
        prop_assert!(r.width < g.n().max(1));
    }

    #[test]
    fn treewidth_ignores_labels_and_subdivision(g in graph(7), seed in any::<u64>()) {
        let limits = Limits::default();
        let tw = exact_treewidth(&g, &limits).unwrap().width;
        let mut perm: Vec<usize> = (0..g.n()).collect();
        use rand::seq::SliceRandom;
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(exact_treewidth(&g.relabel(&perm).unwrap(), &limits).unwrap().width, tw);
        if g.m() > 0 {
            let s = subdivide_all(&g, 2).unwrap();
            prop_assert_eq!(exact_treewidth(&s, &limits).unwrap().width, tw.max(1));
        }
    }

    #[test]
    fn smallest_balanced_separator(gw in graph_and_weights(8), num in 0i64..4) {
        let (g, w) = gw;
        let c = Balance::new(q(4 + num, 8)).unwrap();
        let cert = min_balanced_separator(&g, &w, &c, &Limits::default()).unwrap();
        let mut removed = vec![false; g.n()];
        for v in cert.separator.iter() {
            removed[v] = true;
        }
        prop_assert!(heaviest_component(&g, &w, &removed) <= *c.value());
        // nothing smaller works
        let k = cert.separator.len();
        if k > 0 {
            for mask in 0u32..(1 << g.n()) {
                if (mask.count_ones() as usize) < k {
                    let r: Vec<bool> = (0..g.n()).map(|v| mask >> v & 1 == 1).collect();
                    prop_assert!(heaviest_component(&g, &w, &r) > *c.value());
                }
            }
        }
    }

    #[test]
    fn induced_matches_are_induced(g in graph(8), p in graph(4)) {
        if let Some(map) = find_induced(&g, &p, &Limits::default()).unwrap() {
            prop_assert_eq!(map.len(), p.n());
            for a in 0..p.n() {
                for b in 0..p.n() {
                    if a != b {
                        prop_assert_ne!(map[a], map[b]);
                        prop_assert_eq!(p.has_edge(a, b), g.has_edge(map[a], map[b]));
                    }
                }
            }
        }
    }

    #[test]
    fn central_bag_audit_and_algebra(gw in graph_and_weights(8), pick in 0usize..3) {
        let (g, w) = gw;
        prop_assume!(g.is_connected());
        let pattern = [Graph::complete(1), Graph::complete(2), Graph::path(3)][pick].clone();
        let limits = Limits::default();
        let mut seq = covering_sequence(&g, &w, &pattern, &limits).unwrap();
        let part = dimension_partition(&seq);
        seq.partition = Some(part.clone());
        let res = central_bag(&g, &w, &seq, &part).unwrap();
        prop_assert!(validate_audit(&seq.separations, &res));
        let inv = bag_invariants(&g, &seq, &res);
        prop_assert!(inv.audit_valid);
        // the weights on the bag always sum to the total
        prop_assert_eq!(res.weights.of(&res.bag), q(1, 1));
    }

    #[test]
    fn chordal_width_is_omega_minus_one(seed in any::<u64>(), n in 1usize..25) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let g = random_chordal(&mut rng, n);
        let td = chordal_td(&g).unwrap();
        let omega = clique_number(&g, &Limits::default()).unwrap();
        prop_assert_eq!(validate_td(&g, &td), Ok(omega - 1));
        prop_assert!(td.bags.iter().all(|b| g.is_clique(b)));
    }

    #[test]
    fn rationals_round_trip(a in -1000i64..1000, b in 1i64..1000) {
        let x = q(a, b);
        prop_assert_eq!(parse_q(&format_q(&x)).unwrap(), x);
    }

    #[test]
    fn config_echo_round_trips(seed in any::<u64>(), steps in 1u64..1_000_000, num in 1i64..10) {
        let text = format!("seed = {seed}\nmax_steps = {steps}\nc = {num}/{}\n", num + 1 + num % 3);
        let cfg = match RunConfig::parse(&text) {
            Ok(c) => c,
            Err(_) => return Ok(()),
        };
        let echoed: String = cfg.echo().iter().map(|(k, v)| format!("{k} = {v}\n")).collect();
        prop_assert_eq!(RunConfig::parse(&echoed).unwrap(), cfg);
    }
}
