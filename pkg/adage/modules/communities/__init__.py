'''initialize'''
from .cnm import CNMDetector, cnmgreedy
from .louvain import LouvainDetector, louvain
from .kmeans import KMeans, KMeansDetector, kmeans
from .base import BaseCommunityDetector, relabel
from ..utils import BaseModuleBuilder
from .communitymodel import CommunityModel, COMMUNITIES_HEADER, modularity, computecentroids, enforcek


'''CommunityDetectorBuilder'''
class CommunityDetectorBuilder(BaseModuleBuilder):
    REGISTERED_MODULES = {
        'louvain': LouvainDetector, 'cnm': CNMDetector, 'kmeans': KMeansDetector,
    }


'''BuildCommunityDetector'''
BuildCommunityDetector = CommunityDetectorBuilder().build
