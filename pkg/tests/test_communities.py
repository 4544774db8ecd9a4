'''
Function:
    Tests for modularity, Louvain, CNM, k-means, exact-K enforcement and the community file format
Author:
    adage developers
'''
import pytest
import numpy as np
import networkx as nx
from numpy.testing import assert_array_equal
from adage.modules.graphs import Graph
from adage.modules.utils import ArtifactFormatError
from adage.modules.communities.kmeans import squareddistances
from adage.modules.communities import (
    CommunityModel, KMeans, LouvainDetector, BuildCommunityDetector, cnmgreedy, computecentroids, enforcek, kmeans, louvain, modularity, relabel,
)


'''nxgraph'''
def nxgraph(g: Graph):
    graph = nx.Graph()
    graph.add_nodes_from(range(g.n))
    graph.add_edges_from(g.edges.tolist())
    return graph


'''test_modularity_hand_computed'''
def test_modularity_hand_computed(twotriangles):
    assert modularity(twotriangles, [0, 0, 0, 1, 1, 1]) == pytest.approx(0.357142857, abs=1e-9)
    assert modularity(twotriangles, np.zeros(6, dtype=int)) == pytest.approx(0.0, abs=1e-15)


'''test_modularity_matches_networkx'''
def test_modularity_matches_networkx(sbm):
    assignment = np.random.default_rng(0).integers(0, 5, size=sbm.n)
    communities = [set(np.flatnonzero(assignment == c).tolist()) for c in range(5)]
    assert modularity(sbm, assignment) == pytest.approx(nx.community.modularity(nxgraph(sbm), communities), abs=1e-12)


'''test_modularity_needs_edges'''
def test_modularity_needs_edges():
    with pytest.raises(ValueError):
        modularity(Graph(n=3, edges=[], features=np.zeros((3, 1))), [0, 1, 2])


'''test_relabel_is_dense_by_first_appearance'''
def test_relabel_is_dense_by_first_appearance():
    assert_array_equal(relabel([7, 7, 3, 9, 3]), [0, 0, 1, 2, 1])


'''test_louvain_splits_two_triangles'''
def test_louvain_splits_two_triangles(twotriangles):
    detector = LouvainDetector(seed=0)
    assignment = detector.detect(twotriangles)
    assert assignment[0] == assignment[1] == assignment[2]
    assert assignment[3] == assignment[4] == assignment[5]
    assert assignment[0] != assignment[3]
    assert all(gain > 0 for gain in detector.move_gains)


'''test_louvain_on_sbm'''
def test_louvain_on_sbm(sbm):
    first, second = louvain(sbm, seed=4), louvain(sbm, seed=4)
    assert_array_equal(first, second)
    assert_array_equal(np.unique(first), np.arange(first.max() + 1))
    assert modularity(sbm, first) > 0.3


'''test_louvain_does_not_lose_to_networkx_by_much'''
def test_louvain_does_not_lose_to_networkx_by_much(sbm):
    reference = nx.community.louvain_communities(nxgraph(sbm), seed=0)
    reference_q = nx.community.modularity(nxgraph(sbm), reference)
    assert modularity(sbm, louvain(sbm, seed=0)) >= reference_q - 0.05


'''test_edgeless_graph_gives_singletons'''
def test_edgeless_graph_gives_singletons():
    g = Graph(n=4, edges=[], features=np.zeros((4, 1)))
    assert_array_equal(louvain(g), np.arange(4))
    assert_array_equal(cnmgreedy(g), np.arange(4))


'''test_cnm_splits_two_triangles'''
def test_cnm_splits_two_triangles(twotriangles):
    assignment = cnmgreedy(twotriangles)
    assert modularity(twotriangles, assignment) == pytest.approx(0.357142857, abs=1e-9)


'''test_builder'''
def test_builder(twotriangles):
    detector = BuildCommunityDetector({'type': 'louvain', 'seed': 3})
    assert isinstance(detector, LouvainDetector) and detector.seed == 3
    with pytest.raises(KeyError):
        BuildCommunityDetector({'type': 'leiden'})
    features = BuildCommunityDetector({'type': 'kmeans', 'k': 2}).detect(Graph(n=4, edges=[], features=[[0.0], [0.1], [9.0], [9.1]]))
    assert_array_equal(features, [0, 0, 1, 1])


'''test_kmeans_recovers_blobs'''
def test_kmeans_recovers_blobs():
    rng = np.random.default_rng(0)
    centers = np.array([[0.0, 0.0], [10.0, 0.0], [0.0, 10.0]])
    points = np.vstack([center + 0.5 * rng.standard_normal((30, 2)) for center in centers])
    model = KMeans(k=3, seed=1).fit(points)
    truth = np.repeat(np.arange(3), 30)
    for cluster in range(3):
        assert len(np.unique(model.assignment[truth == cluster])) == 1
    assert all(later <= earlier + 1e-9 for earlier, later in zip(model.inertias, model.inertias[1:]))
    with pytest.raises(ValueError):
        kmeans(points[:2], 3)


'''test_kmeans_assignment_matches_final_centroids'''
def test_kmeans_assignment_matches_final_centroids():
    points = np.random.default_rng(4).standard_normal((60, 2))
    # a single Lloyd step cannot confirm convergence, the assignment must still follow the returned centroids
    model = KMeans(k=3, seed=0, max_iters=1).fit(points)
    assert_array_equal(model.assignment, squareddistances(points, model.centroids).argmin(axis=1))
    assert model.num_iters == 1 and len(model.inertias) == 2
    with pytest.raises(ValueError):
        KMeans(k=3, max_iters=0)


'''test_detectors_recover_disjoint_cliques'''
@pytest.mark.parametrize('detect', [lambda g: louvain(g, seed=0), cnmgreedy])
def test_detectors_recover_disjoint_cliques(detect):
    sizes, edges, offset = range(3, 9), [], 0
    for size in sizes:
        edges.extend((offset + u, offset + v) for u in range(size) for v in range(u + 1, size))
        offset += size
    assignment = detect(Graph(n=offset, edges=edges, features=np.zeros((offset, 1))))
    truth = np.repeat(np.arange(len(sizes)), list(sizes))
    for clique in range(len(sizes)):
        assert len(np.unique(assignment[truth == clique])) == 1
    assert len(np.unique(assignment)) == len(sizes)


'''test_computecentroids'''
def test_computecentroids():
    centroids = computecentroids([0, 1, 0], [[1.0, 1.0], [5.0, 5.0], [3.0, 1.0]])
    assert_array_equal(centroids, [[2.0, 1.0], [5.0, 5.0]])
    with pytest.raises(ValueError):
        computecentroids([0, 2], [[1.0], [2.0]])


'''test_enforcek_hits_the_target'''
@pytest.mark.parametrize('k_target', [1, 4, 10, 40])
def test_enforcek_hits_the_target(bundle, k_target):
    assignment = enforcek(bundle.train, louvain(bundle.train, seed=0), bundle.embeddings, k_target, seed=0)
    assert_array_equal(np.unique(assignment), np.arange(k_target))


'''test_enforcek_keeps_a_matching_partition'''
def test_enforcek_keeps_a_matching_partition(twotriangles):
    assert_array_equal(enforcek(twotriangles, [0, 0, 0, 1, 1, 1], np.eye(6), 2), [0, 0, 0, 1, 1, 1])
    with pytest.raises(ValueError):
        enforcek(twotriangles, [0, 0, 0, 1, 1, 1], np.eye(6), 7)


'''test_enforcek_merges_closest_centroids'''
def test_enforcek_merges_closest_centroids():
    g = Graph(n=3, edges=[], features=np.zeros((3, 1)))
    assignment = enforcek(g, [0, 1, 2], [[0.0], [10.0], [10.5]], 2)
    assert_array_equal(assignment, [0, 1, 1])


'''test_communitymodel_roundtrip'''
def test_communitymodel_roundtrip(tmp_path, bundle):
    path = str(tmp_path / 'model.communities')
    bundle.communities.save(path)
    loaded = CommunityModel.load(path)
    assert loaded.k == bundle.communities.k == 10
    assert_array_equal(loaded.assignment, bundle.communities.assignment)
    assert_array_equal(loaded.centroids, bundle.communities.centroids)
    assert loaded.sizes().sum() == bundle.train.n


'''test_communitymodel_rejects_bad_files'''
def test_communitymodel_rejects_bad_files(tmp_path):
    path = tmp_path / 'bad.communities'
    path.write_text('#adage-communities v1\n0\n1\n')
    with pytest.raises(ArtifactFormatError):
        CommunityModel.load(str(path))
    path.write_text('#adage-communities v1\nK=2\n0\n0\n1.0\n2.0\n')
    with pytest.raises(ArtifactFormatError):
        CommunityModel.load(str(path))
