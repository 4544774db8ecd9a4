'''initialize'''
from .plan import AttackPlan, KnowledgeProfile, SETUPS, querybudget
from .querying import averagingattack, savetranscript, loadtranscript
from .sybil import SybilMapper, sybilremap, sybilsplit, cosinedistances
from .surrogate import stealsetupa, stealsetupb, stealsetupc, stealfromrepresentations
from .evaluation import evaluate, downstreameval, communitymembership, servedpredictions, servedaccuracy
from .selectors import (
    BaseQuerySelector, RandomSelector, ConcentratedSelector, QuerySelectorBuilder, BuildQuerySelector, selectrandom, selectconcentrated,
)
