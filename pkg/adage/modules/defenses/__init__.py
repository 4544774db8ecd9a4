'''initialize'''
from .nodefense import NoDefense
from .adagedefense import AdageDefense
from ..utils import BaseModuleBuilder
from .staticnoise import StaticNoiseDefense
from .config import DefenseConfig, DEFENSE_MODES, DEFENSE_SCHEMA
from .transforms import AccountTransform, TRANSFORM_KINDS, ROTATION, accounttransform, servedkind
from .calibration import flipprobability, flipprobabilityab, noisesigma
from .accounts import AccountState, AccountRegistry, ACCOUNT_HEADER
from .base import BaseDefense, Response, SETUP_KINDS, nearestcommunity
from .perturbation import perturbprobabilities, perturbembedding, queryfingerprint, deterministicnoiserng


'''DefenseBuilder'''
class DefenseBuilder(BaseModuleBuilder):
    REGISTERED_MODULES = {
        'none': NoDefense, 'static_noise': StaticNoiseDefense, 'adage': AdageDefense,
    }


'''BuildDefense'''
BuildDefense = DefenseBuilder().build
