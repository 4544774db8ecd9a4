'''
Function:
    Tests for attack plans, query selection, surrogate stealing, evaluation, transcripts and the Sybil remapper
Author:
    adage developers
'''
import pytest
import numpy as np
from numpy.testing import assert_array_equal, assert_allclose
from adage.modules.utils import ArtifactFormatError
from adage.modules.models import encode
from adage.modules.graphs import SplitSpec, generatesbm, splitgraph
from adage.modules.communities import CommunityModel, enforcek, louvain
from adage.modules.models import NodeClassifier, fitprojection, traintarget
from adage.modules.defenses import AccountTransform, BuildDefense, DefenseConfig
from adage.modules.attacks import (
    AttackPlan, ConcentratedSelector, KnowledgeProfile, BuildQuerySelector, averagingattack, cosinedistances, downstreameval, evaluate, loadtranscript,
    querybudget, savetranscript, selectconcentrated, selectrandom, servedaccuracy, stealsetupa, stealsetupb, stealsetupc, sybilremap, sybilsplit, communitymembership,
)


'''makedefense'''
def makedefense(bundle, mode, graph):
    return BuildDefense({
        'type': mode, 'encoder': bundle.encoder, 'head': bundle.head, 'communities': bundle.communities, 'graph': graph,
        'projection': bundle.projection, 'config': DefenseConfig(mode=mode),
    })


'''test_querybudget'''
def test_querybudget():
    assert querybudget(100, 0.1) == 10
    assert querybudget(10, 0.3) == 3
    assert querybudget(96, 1.0) == 96
    with pytest.raises(ValueError):
        querybudget(10, 0.05)
    with pytest.raises(ValueError):
        querybudget(10, 0.0)


'''test_attackplan_and_profiles'''
def test_attackplan_and_profiles():
    plan = AttackPlan(setup='B', delta=0.5, strategy='concentrated', rep=3, knowledge='KA_ab')
    assert plan.budget(96) == 48
    assert plan.profile == KnowledgeProfile(knows_train_graph=False, knows_k=True, knows_algorithm=False)
    for name in KnowledgeProfile.PROFILES:
        assert KnowledgeProfile.fromname(name).name == name
    for kwargs in ({'setup': 'D'}, {'delta': 1.5}, {'rep': 0}, {'knowledge': 'omniscient'}):
        with pytest.raises(ValueError):
            AttackPlan(**kwargs)


'''test_selectrandom'''
def test_selectrandom(bundle):
    nodes = selectrandom(bundle.query, 0.25, seed=2)
    assert len(nodes) == len(np.unique(nodes)) == querybudget(bundle.query.n, 0.25)
    assert_array_equal(nodes, selectrandom(bundle.query, 0.25, seed=2))
    assert nodes.min() >= 0 and nodes.max() < bundle.query.n
    assert isinstance(BuildQuerySelector({'type': 'random', 'seed': 2}).select(bundle.query, 0.25), np.ndarray)


'''test_concentrated_selection_has_low_diversity'''
def test_concentrated_selection_has_low_diversity(bundle):
    membership = communitymembership(bundle.encoder, bundle.query, bundle.communities)
    concentrated = selectconcentrated(
        bundle.query, 0.1, KnowledgeProfile.fromname('PA'), true_k=bundle.communities.k, seed=0, communities=bundle.communities, encoder=bundle.encoder,
    )
    diverse = selectrandom(bundle.query, 0.5, seed=0)
    assert len(concentrated) == querybudget(bundle.query.n, 0.1)
    assert len(np.unique(membership[concentrated])) < len(np.unique(membership[diverse]))


'''test_concentrated_selection_profiles'''
@pytest.mark.parametrize('knowledge', ['KA_aa', 'KA_ab', 'KA_ba', 'KA_bb'])
def test_concentrated_selection_profiles(bundle, knowledge):
    selector = ConcentratedSelector(profile=KnowledgeProfile.fromname(knowledge), true_k=bundle.communities.k, seed=1)
    nodes = selector.select(bundle.query, 0.2)
    assert len(nodes) == len(np.unique(nodes)) == querybudget(bundle.query.n, 0.2)
    with pytest.raises(ValueError):
        ConcentratedSelector(profile=KnowledgeProfile.fromname('PA')).select(bundle.query, 0.2)


'''test_blind_attacker_picks_root_n_communities'''
def test_blind_attacker_picks_root_n_communities(monkeypatch):
    import adage.modules.attacks.selectors as selectors
    requested, build = [], selectors.BuildCommunityDetector
    def _recording(cfg):
        requested.append(dict(cfg))
        return build(cfg)
    monkeypatch.setattr(selectors, 'BuildCommunityDetector', _recording)
    query_graph = generatesbm(n=904, blocks=3, p_in=0.02, p_out=0.001, m=4, feature_shift=3.0, seed=0)
    view = ConcentratedSelector(profile=KnowledgeProfile.fromname('KA_bb'), seed=0).communityview(query_graph)
    assert requested == [{'type': 'kmeans', 'k': 30, 'seed': 0}]
    assert view.shape == (904,) and view.max() < 30


'''test_averagingattack'''
def test_averagingattack(bundle):
    defense = makedefense(bundle, 'none', bundle.query)
    nodes = np.array([4, 0, 9])
    averaged = averagingattack(defense, 'eve', nodes, 'B', rep=5)
    assert_allclose(averaged, encode(bundle.encoder, bundle.query, nodes), rtol=1e-12, atol=1e-12)
    assert defense.registry.get('eve').query_count == 15
    with pytest.raises(ValueError):
        averagingattack(defense, 'eve', nodes, 'B', rep=0)


'''test_transcript_roundtrip'''
def test_transcript_roundtrip(tmp_path, bundle):
    path = str(tmp_path / 'cells' / 'transcript.csv')
    nodes, responses = np.array([3, 1, 2]), np.random.default_rng(0).standard_normal((3, 4))
    savetranscript(path, nodes, 'B', responses)
    loaded_nodes, setup, loaded = loadtranscript(path)
    assert setup == 'B'
    assert_array_equal(loaded_nodes, nodes)
    assert_array_equal(loaded, responses)


'''test_transcript_rejects_bad_files'''
@pytest.mark.parametrize('body', ['a,b,v0\n1,A,0.5\n', 'node,setup,v0\n1,A\n', 'node,setup,v0\nx,A,1.0\n', 'node,setup,v0\n1,A,1.0\n2,B,1.0\n'])
def test_transcript_rejects_bad_files(tmp_path, body):
    path = tmp_path / 'transcript.csv'
    path.write_text(body)
    with pytest.raises(ArtifactFormatError):
        loadtranscript(str(path))


'''test_evaluate'''
def test_evaluate(bundle):
    accuracy, fidelity = evaluate(bundle.target, bundle.target, bundle.test)
    assert fidelity == 1.0
    assert accuracy == pytest.approx(np.mean(bundle.target.predict(bundle.test) == bundle.test.labels))
    with pytest.raises(ValueError):
        evaluate(bundle.target, bundle.target, bundle.test.subgraph([]))


'''test_downstreameval'''
def test_downstreameval(bundle):
    membership = communitymembership(bundle.encoder, bundle.test, bundle.communities)
    present = np.unique(membership)[:3].tolist()
    accuracies = downstreameval(bundle.target, bundle.test, bundle.communities, present, bundle.encoder)
    assert sorted(accuracies) == present
    correct = bundle.target.predict(bundle.test) == bundle.test.labels
    for community, accuracy in accuracies.items():
        assert accuracy == pytest.approx(np.mean(correct[membership == community]))
    missing = [c for c in range(bundle.communities.k) if c not in set(membership.tolist())]
    if missing:
        with pytest.raises(ValueError):
            downstreameval(bundle.target, bundle.test, bundle.communities, missing[:1], bundle.encoder)


'''test_servedaccuracy_without_defense'''
def test_servedaccuracy_without_defense(bundle):
    defense = makedefense(bundle, 'none', bundle.test)
    nodes = np.arange(bundle.test.n)
    expected = np.mean(bundle.target.predict(bundle.test) == bundle.test.labels)
    assert servedaccuracy(defense, 'user', bundle.test, nodes, 'A') == pytest.approx(expected)
    assert servedaccuracy(defense, 'user', bundle.test, nodes, 'B') == pytest.approx(expected)
    with pytest.raises(ValueError):
        servedaccuracy(defense, 'user', bundle.test, [], 'A')


'''test_steal_from_clean_responses'''
@pytest.mark.parametrize('setup', ['A', 'B', 'C'])
def test_steal_from_clean_responses(bundle, setup):
    defense = makedefense(bundle, 'none', bundle.query)
    nodes = np.arange(bundle.query.n)
    responses = averagingattack(defense, 'thief', nodes, setup)
    kwargs = dict(d=8, k=2, lr=0.05, epochs=150, seed=0)
    if setup == 'A':
        surrogate = stealsetupa(bundle.query, nodes, responses, **kwargs)
    else:
        labels = bundle.target.predict(bundle.query)
        steal = stealsetupb if setup == 'B' else stealsetupc
        surrogate = steal(bundle.query, nodes, responses, labels, **kwargs)
    assert isinstance(surrogate, NodeClassifier)
    accuracy, fidelity = evaluate(surrogate, bundle.target, bundle.test)
    assert fidelity >= 0.8


'''test_steal_validates_inputs'''
def test_steal_validates_inputs(bundle):
    labels = bundle.target.predict(bundle.query)
    embeddings = encode(bundle.encoder, bundle.query)
    with pytest.raises(ValueError):
        stealsetupc(bundle.query, np.arange(bundle.query.n), embeddings, labels)
    with pytest.raises(ValueError):
        stealsetupa(bundle.query, [0, 1], np.full((2, 3), 1.0 / 3))
    with pytest.raises(ValueError):
        stealsetupb(bundle.query, [0, 1, 2], embeddings[:2], labels[:3])


'''test_sybilsplit'''
def test_sybilsplit():
    small, test = sybilsplit(100, 0.2, seed=0)
    large, same_test = sybilsplit(100, 0.8, seed=0)
    assert_array_equal(test, same_test)
    assert len(test) == 20 and len(small) == 16 and len(large) == 64
    assert_array_equal(large[:16], small)
    assert not set(large.tolist()) & set(test.tolist())
    with pytest.raises(ValueError):
        sybilsplit(5, 0.1)
    with pytest.raises(ValueError):
        sybilsplit(100, 0.0)


'''test_sybilremap_recovers_affine_transforms'''
def test_sybilremap_recovers_affine_transforms():
    rng = np.random.default_rng(0)
    clean = rng.standard_normal((200, 6))
    first, second = AccountTransform(d=6, kind='affine_shuffle', seed=1), AccountTransform(d=6, kind='affine_shuffle', seed=2)
    responses1, responses2 = first.apply(clean), second.apply(clean)
    mapper, distances = sybilremap(responses1, responses2, 0.5, seed=0, epochs=50)
    assert distances.shape == (40,)
    assert np.mean(distances) < 1e-6
    A, c = mapper.aslinear()
    assert_allclose(responses2 @ A + c, mapper(responses2), atol=1e-10)
    # unmapped responses live in unrelated frames
    assert np.mean(cosinedistances(responses1, responses2)) > 0.3
    with pytest.raises(ValueError):
        sybilremap(responses1, responses2[:, :3], 0.5)


'''test_sybil_distance_shrinks_with_overlap'''
def test_sybil_distance_shrinks_with_overlap():
    rng = np.random.default_rng(0)
    clean = rng.standard_normal((400, 6))
    first, second = AccountTransform(d=6, kind='affine_shuffle', seed=1), AccountTransform(d=6, kind='affine_shuffle', seed=2)
    # each account answers with its own noise
    responses1 = first.apply(clean + 0.3 * rng.standard_normal(clean.shape))
    responses2 = second.apply(clean + 0.3 * rng.standard_normal(clean.shape))
    distances = [np.mean(sybilremap(responses1, responses2, overlap, seed=0, epochs=20)[1]) for overlap in (0.2, 0.4, 0.6, 0.8, 1.0)]
    assert all(later <= earlier * 1.05 for earlier, later in zip(distances, distances[1:]))
    assert distances[-1] < distances[0]


'''test_sybil_distance_grows_with_noise'''
def test_sybil_distance_grows_with_noise():
    rng = np.random.default_rng(1)
    clean, noise = rng.standard_normal((300, 6)), rng.standard_normal((2, 300, 6))
    first, second = AccountTransform(d=6, kind='affine', seed=3), AccountTransform(d=6, kind='affine', seed=4)
    distances = [
        np.mean(sybilremap(first.apply(clean + sigma * noise[0]), second.apply(clean + sigma * noise[1]), 0.5, seed=0, epochs=20)[1])
        for sigma in (0.0, 0.05, 0.3)
    ]
    assert distances[0] < 1e-6
    assert distances[0] < distances[1] < distances[2]


'''test_cosinedistances'''
def test_cosinedistances():
    assert_allclose(cosinedistances([[1.0, 0.0], [0.0, 0.0], [1.0, 1.0]], [[0.0, 2.0], [0.0, 0.0], [-1.0, -1.0]]), [1.0, 0.0, 2.0])


'''test_adage_collapses_setup_a_extraction'''
def test_adage_collapses_setup_a_extraction():
    graph = generatesbm(n=300, blocks=3, p_in=0.08, p_out=0.004, m=8, feature_shift=5.0, seed=2)
    train, query, test = splitgraph(graph, SplitSpec(train_frac=0.3, query_frac=0.4, seed=2))
    encoder, head = traintarget(train, d=8, k=2, lr=0.05, epochs=150, seed=0)
    embeddings = encode(encoder, train)
    communities = CommunityModel.fromassignment(enforcek(train, louvain(train, seed=0), embeddings, 10, seed=0), embeddings)
    target = NodeClassifier(encoder, head)
    nodes = selectrandom(query, 1.0, seed=0)
    fidelities = {}
    for mode in ('none', 'adage'):
        defense = BuildDefense({
            'type': mode, 'encoder': encoder, 'head': head, 'communities': communities, 'graph': query,
            'projection': fitprojection(embeddings), 'config': DefenseConfig(mode=mode),
        })
        responses = averagingattack(defense, 'thief', nodes, 'A')
        surrogate = stealsetupa(query, nodes, responses, d=8, k=2, lr=0.05, epochs=150, seed=0)
        fidelities[mode] = evaluate(surrogate, target, test)[1]
    assert fidelities['adage'] <= fidelities['none'] - 0.3
