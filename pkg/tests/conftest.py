'''
Function:
    Shared fixtures: a small seeded SBM, its split, a trained target model and the defender's communities
Author:
    adage developers
'''
import pytest
import numpy as np
from types import SimpleNamespace
from adage.modules.graphs import Graph, SplitSpec, generatesbm, splitgraph
from adage.modules.communities import CommunityModel, enforcek, louvain
from adage.modules.models import NodeClassifier, encode, fitprojection, traintarget


'''twotriangles'''
@pytest.fixture
def twotriangles():
    # two triangles joined by the bridge 2-3
    edges = [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)]
    return Graph(n=6, edges=edges, features=np.eye(6), labels=[0, 0, 0, 1, 1, 1])


'''sbm'''
@pytest.fixture(scope='session')
def sbm():
    return generatesbm(n=240, blocks=3, p_in=0.1, p_out=0.005, m=8, feature_shift=5.0, seed=1)


'''bundle'''
@pytest.fixture(scope='session')
def bundle(sbm):
    train, query, test = splitgraph(sbm, SplitSpec(train_frac=0.3, query_frac=0.4, seed=3))
    encoder, head = traintarget(train, d=8, k=2, lr=0.05, epochs=150, seed=0)
    embeddings = encode(encoder, train)
    communities = CommunityModel.fromassignment(enforcek(train, louvain(train, seed=0), embeddings, 10, seed=0), embeddings)
    return SimpleNamespace(
        graph=sbm, train=train, query=query, test=test, encoder=encoder, head=head, target=NodeClassifier(encoder, head),
        embeddings=embeddings, communities=communities, projection=fitprojection(embeddings),
    )
