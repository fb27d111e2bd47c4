import numpy as np
import pytest

from conftest import grid_instance, random_instance
from denmune import (
    NOISE1,
    NOISE2,
    UNASSIGNED,
    ClusterModel,
    DenMune,
    InvalidParameterError,
    assign_weak_points,
    build_neighbor_graph,
    classify_points,
    create_clusters_skeleton,
    denmune,
    generate_blobs,
)
from denmune.neighbor_graph import graph_from_lists
from oracles import naive_denmune, same_partition, seed_components


def test_two_pairs():
    pts = [[0, 0], [0, 1], [100, 100], [100, 101]]
    res = denmune(pts, 1)
    assert res.m == 2
    assert res.labels.tolist() == [0, 0, 1, 1]
    assert res.counts == (4, 0, 0, 0)


def test_six_point_line_skeleton(line6):
    g = build_neighbor_graph(line6, 2)
    cls = classify_points(g)
    model = create_clusters_skeleton(cls.seed_order, g)
    comps = seed_components(cls.seed_order.tolist(), g.mnn)
    assert comps == {frozenset({0, 1, 2}), frozenset({3, 4, 5})}
    assert set(model.clusters) == comps
    assert model.labels.tolist() == [0, 0, 0, 1, 1, 1]


def test_single_seed_singleton_cluster():
    g = graph_from_lists([[1], [0], [1]])
    model = create_clusters_skeleton([2], g)
    assert model.clusters == (frozenset({2}),)
    assert model.labels[2] == 0


def test_empty_seed_list():
    g = graph_from_lists([[1], [0]])
    model = create_clusters_skeleton([], g)
    assert model.m == 0
    assert (model.labels == UNASSIGNED).all()


def test_weak_point_without_clustered_mutual_neighbor_is_noise2():
    # 0 <-> 1 mutual; 1 is noise-1 in the model, so 0 finds no cluster
    g = graph_from_lists([[1], [0], [0]])
    model = ClusterModel(clusters=(frozenset({2}),), labels=np.array([UNASSIGNED, NOISE1, 0]))
    out = assign_weak_points(model, [0], g)
    assert out.labels[0] == NOISE2


def test_phase2_ties_go_to_lowest_cluster():
    # weak point 4 has one mutual neighbor in each cluster
    g = graph_from_lists([[1, 4], [0, 4], [3, 4], [2, 4], [0, 2]])
    model = ClusterModel(
        clusters=(frozenset({2, 3}), frozenset({0, 1})),
        labels=np.array([1, 1, 0, 0, UNASSIGNED]),
    )
    assert g.mnn[4] == {0, 2}
    assert assign_weak_points(model, [4], g).labels[4] == 0


def test_members_mode_propagates_through_weak_points():
    # chain: seed cluster {0,1}; weak 2 touches 1, weak 3 touches only 2
    g = graph_from_lists([[1, 2], [0, 2], [1, 3], [2, 1]])
    model = ClusterModel(clusters=(frozenset({0, 1}),),
                         labels=np.array([0, 0, UNASSIGNED, UNASSIGNED]))
    assert g.mnn[3] == {2}
    members = assign_weak_points(model, [2, 3], g, mode="members")
    seeds_only = assign_weak_points(model, [2, 3], g, mode="seeds_only")
    assert members.labels.tolist() == [0, 0, 0, 0]
    assert seeds_only.labels.tolist() == [0, 0, 0, NOISE2]
    assert seeds_only.clusters[0] == {0, 1, 2}


def test_bad_mode():
    with pytest.raises(InvalidParameterError):
        denmune([[0, 0], [1, 1], [2, 2]], 1, mode="eager")


def test_estimator_wrapper():
    blobs = generate_blobs(40, [[0, 0], [30, 30]], 1.0, rng_seed=1)
    est = DenMune(k=8).fit(blobs.coords)
    assert est.n_clusters_ == 2
    assert np.array_equal(est.labels_, denmune(blobs, 8).labels)


def _check_model(res, graph):
    cls = res.classification
    labels = res.labels
    n = graph.n
    seen = set()
    for j, cluster in enumerate(res.model.clusters):
        assert cluster, "empty cluster"
        assert not (cluster & seen)
        seen |= cluster
        assert all(labels[p] == j for p in cluster)
        assert any(p in set(cls.seed_order.tolist()) for p in cluster)
    assert all((labels[i] >= 0) == (i in seen) for i in range(n))
    assert not (labels == UNASSIGNED).any()
    assert (labels[cls.noise1] == NOISE1).all()
    assert (labels[cls.seed_order] >= 0).all()
    weak = set(cls.weak_order.tolist())
    assert all(i in weak for i in np.flatnonzero(labels == NOISE2))
    assert sum(res.counts) == n
    assert res.counts.n_noise1 == np.count_nonzero(labels == NOISE1)
    assert res.m <= cls.n_strong
    # seeds sharing an MNN link share a cluster
    is_seed = np.zeros(n, bool)
    is_seed[cls.seed_order] = True
    for s in cls.seed_order.tolist():
        for t in graph.mnn[s]:
            if is_seed[t]:
                assert labels[s] == labels[t]


@pytest.mark.parametrize("mode", ["members", "seeds_only"])
@pytest.mark.parametrize("seed", range(20))
def test_matches_naive_reference(seed, mode):
    x = random_instance(seed) if seed % 4 else grid_instance(seed)
    k = 1 + (seed * 7) % 15
    res = denmune(x, k, mode=mode)
    labels, n_strong, n_noise1 = naive_denmune(x, k, mode=mode)
    # same numbering convention, so labels agree exactly, not just up to renaming
    assert res.labels.tolist() == labels
    assert res.counts.n_strong == n_strong
    assert res.counts.n_noise1 == n_noise1
    _check_model(res, build_neighbor_graph(x, k))


def test_phase1_label_cohesion_and_bounds():
    for seed in range(10):
        x = random_instance(100 + seed)
        for k in (3, 9):
            res = denmune(x, k)
            _check_model(res, build_neighbor_graph(x, k))


def test_deterministic_across_runs():
    x = random_instance(42)
    first = denmune(x, 9)
    for strategy in ("brute_force", "kd_tree", "auto"):
        again = denmune(x, 9, strategy=strategy)
        assert np.array_equal(first.labels, again.labels)
        assert first.counts == again.counts


@pytest.mark.parametrize("seed", range(10))
def test_skeleton_is_permutation_invariant(seed):
    x = random_instance(200 + seed)
    k = 3 + seed
    perm = np.random.default_rng(seed).permutation(len(x))
    g1 = build_neighbor_graph(x, k)
    g2 = build_neighbor_graph(x[perm], k)
    c1 = classify_points(g1)
    c2 = classify_points(g2)
    m1 = create_clusters_skeleton(c1.seed_order, g1)
    m2 = create_clusters_skeleton(c2.seed_order, g2)
    mapped = {frozenset(perm[list(c)].tolist()) for c in m2.clusters}
    assert mapped == set(m1.clusters)


def test_well_separated_blobs_recovered():
    blobs = generate_blobs(100, [[0, 0], [50, 0], [0, 50]], 2.0, rng_seed=3)
    res = denmune(blobs, 10)
    assert res.m == 3
    clustered = res.labels >= 0
    assert same_partition(res.labels[clustered], blobs.truth_labels[clustered])


@pytest.mark.parametrize("seed", range(10))
def test_point_type_counts_are_permutation_invariant(seed):
    # Phase II visits equal in-degree weak points by index, so labels of weak
    # points may depend on input order; the type counts of seeds and noise-1 may not
    x = random_instance(300 + seed)
    k = 2 + seed
    perm = np.random.default_rng(seed).permutation(len(x))
    a, b = denmune(x, k), denmune(x[perm], k)
    assert a.counts.n_strong == b.counts.n_strong
    assert a.counts.n_noise1 == b.counts.n_noise1
    assert a.m == b.m
