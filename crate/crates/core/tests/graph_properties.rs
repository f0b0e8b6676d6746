use proptest::prelude::*;
use teamform_core::generate::{random_graph, random_task, rng_from_seed, GraphConfig};
use teamform_core::weight::{integer, rational};
use teamform_core::{
    load_graph, load_task, serialize_graph, serialize_task, Distance, DistanceIndex, NodeId,
    SkillGraph,
};

fn graph(seed: u64, max_nodes: usize, p: f64) -> SkillGraph {
    let config = GraphConfig {
        min_nodes: 2,
        max_nodes,
        edge_probability: p,
        skills: vec!["a".into(), "b".into()],
        ..GraphConfig::default()
    };
    random_graph(&mut rng_from_seed(seed), &config)
}

/// Copy of `g` without the edge `u v`.
fn without_edge(g: &SkillGraph, u: NodeId, v: NodeId) -> SkillGraph {
    let mut h = SkillGraph::new();
    for x in g.node_ids() {
        h.add_node(g.label(x), g.skills(x).iter().cloned()).unwrap();
        for w in g.loops(x) {
            h.add_loop(x, w.clone()).unwrap();
        }
    }
    for (a, b, w) in g.edges() {
        if (a, b) != (u, v) && (a, b) != (v, u) {
            h.add_edge(a, b, w.affinity.clone(), w.distance.clone()).unwrap();
        }
    }
    h
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn adding_an_edge_shifts_density_by_its_weight(seed in any::<u64>(), numer in 1i64..40, denom in 1i64..6) {
        let g = graph(seed, 10, 0.3);
        let ids: Vec<NodeId> = g.node_ids().collect();
        let missing = ids.iter().enumerate().flat_map(|(i, u)| ids[i + 1..].iter().map(move |v| (*u, *v)))
            .find(|(u, v)| g.edge(*u, *v).is_none());
        prop_assume!(missing.is_some());
        let (u, v) = missing.unwrap();
        let w = rational(numer, denom);
        let mut h = g.clone();
        h.add_edge(u, v, w.clone(), integer(1)).unwrap();
        let delta = h.density().unwrap() - g.density().unwrap();
        prop_assert_eq!(&delta, &(&w / integer(ids.len() as i64)));
        prop_assert!(delta > integer(0));
    }

    #[test]
    fn removing_an_edge_lowers_density_by_its_weight(seed in any::<u64>()) {
        let g = graph(seed, 10, 0.5);
        let first = g.edges().next().map(|(u, v, w)| (u, v, w.affinity.clone()));
        prop_assume!(first.is_some());
        let (u, v, w) = first.unwrap();
        let h = without_edge(&g, u, v);
        let delta = h.density().unwrap() - g.density().unwrap();
        prop_assert_eq!(&delta, &(-(&w) / integer(g.len() as i64)));
        prop_assert!(delta < integer(0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph_text_round_trips(seed in any::<u64>()) {
        let mut g = graph(seed, 12, 0.4);
        g.add_loop(NodeId(0), rational(7, 3)).unwrap();
        let text = serialize_graph(&g);
        let back = load_graph(&text).unwrap();
        prop_assert_eq!(serialize_graph(&back), text);
        prop_assert_eq!(back.total_weight(), g.total_weight());
    }

    #[test]
    fn task_text_round_trips(seed in any::<u64>(), reqs in 1usize..3) {
        let skills = vec!["a".to_string(), "b".to_string(), "c".to_string()];
        let task = random_task(&mut rng_from_seed(seed), &skills, reqs, 5);
        prop_assert_eq!(load_task(&serialize_task(&task)).unwrap(), task);
    }

    #[test]
    fn distances_form_a_metric(seed in any::<u64>()) {
        let g = graph(seed, 9, 0.35);
        let idx = DistanceIndex::new(&g);
        let ids: Vec<NodeId> = g.node_ids().collect();
        for &u in &ids {
            prop_assert_eq!(idx.distance(u, u).unwrap(), Distance::zero());
            for &v in &ids {
                let uv = idx.distance(u, v).unwrap();
                prop_assert_eq!(&uv, &idx.distance(v, u).unwrap());
                for &x in &ids {
                    if let (Distance::Finite(a), Distance::Finite(b)) =
                        (idx.distance(u, x).unwrap(), idx.distance(x, v).unwrap())
                    {
                        prop_assert!(uv <= Distance::Finite(a + b));
                    }
                }
            }
        }
    }

    #[test]
    fn canonical_paths_realise_distances(seed in any::<u64>()) {
        let g = graph(seed, 9, 0.35);
        let idx = DistanceIndex::new(&g);
        let ids: Vec<NodeId> = g.node_ids().collect();
        for &u in &ids {
            for &v in &ids {
                match idx.path(u, v).unwrap() {
                    None => prop_assert_eq!(idx.distance(u, v).unwrap(), Distance::Infinite),
                    Some(path) => {
                        prop_assert_eq!(path[0], u);
                        prop_assert_eq!(*path.last().unwrap(), v);
                        let length = path.windows(2).map(|p| g.edge(p[0], p[1]).unwrap().distance.clone()).sum();
                        prop_assert_eq!(idx.distance(u, v).unwrap(), Distance::Finite(length));
                    }
                }
            }
        }
    }

    #[test]
    fn components_partition_the_nodes(seed in any::<u64>()) {
        let g = graph(seed, 14, 0.15);
        let parts = g.connected_components();
        let total: usize = parts.iter().map(|c| c.len()).sum();
        prop_assert_eq!(total, g.len());
        let firsts: Vec<NodeId> = parts.iter().map(|c| *c.first().unwrap()).collect();
        prop_assert!(firsts.windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(g.is_connected(), parts.len() == 1);
    }
}

#[test]
fn chord_can_leave_the_diameter_unchanged() {
    let path = load_graph("node p\nnode q\nnode r\nedge p q 1 1\nedge q r 1 1\n").unwrap();
    let mut chorded = path.clone();
    let (p, r) = (path.id_of("p").unwrap(), path.id_of("r").unwrap());
    chorded.add_edge(p, r, integer(3), integer(2)).unwrap();
    assert_eq!(path.diameter().unwrap(), chorded.diameter().unwrap());
    assert!(chorded.density().unwrap() > path.density().unwrap());
}

#[test]
fn joining_components_makes_the_diameter_finite() {
    let split = load_graph("node p\nnode q\n").unwrap();
    assert_eq!(split.diameter().unwrap(), Distance::Infinite);
    let mut joined = split.clone();
    joined.add_edge(NodeId(0), NodeId(1), integer(1), integer(4)).unwrap();
    assert_eq!(joined.diameter().unwrap(), Distance::Finite(integer(4)));
}
