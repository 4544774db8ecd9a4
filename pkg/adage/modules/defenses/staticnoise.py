'''
Function:
    Implementation of StaticNoiseDefense, fixed-sigma Gaussian noise regardless of query diversity
Author:
    adage developers
'''
from .base import BaseDefense
from ..models import project
from .perturbation import perturbembedding


'''StaticNoiseDefense'''
class StaticNoiseDefense(BaseDefense):
    source = 'StaticNoiseDefense'
    '''perturb'''
    def perturb(self, setup, embedding, tau, account, rng):
        # labels are left untouched: noise on posteriors barely moves the argmax
        if setup == 'A': return self.rawoutput(setup, embedding)
        noisy = perturbembedding(embedding, self.config.sigma, rng)
        if setup == 'B': return noisy
        return project(self.projection, noisy[None, :])[0]
