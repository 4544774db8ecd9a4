'''
Function:
    Implementation of AdageDefense: penalties scaled by the fraction of communities an account has occupied
Author:
    adage developers
'''
from .base import BaseDefense
from ..models import classify, project
from .calibration import flipprobability, noisesigma
from .transforms import accounttransform
from .perturbation import perturbprobabilities, perturbembedding


'''AdageDefense'''
class AdageDefense(BaseDefense):
    source = 'AdageDefense'
    '''flipprobability'''
    def flipprobability(self, tau):
        return flipprobability(tau, self.config.eta)
    '''noisesigma'''
    def noisesigma(self, tau):
        return noisesigma(tau, self.config.alpha, self.config.beta, self.config.lam)
    '''perturb'''
    def perturb(self, setup, embedding, tau, account, rng):
        if setup == 'A':
            probabilities = classify(self.head, embedding[None, :])[0]
            return perturbprobabilities(probabilities, self.flipprobability(tau), rng)
        noisy = perturbembedding(embedding, self.noisesigma(tau), rng)
        if setup == 'C':
            # noise goes in before the projection; the per-account map then acts in 2-D
            noisy = project(self.projection, noisy[None, :])[0]
        if self.config.transform == 'none': return noisy
        return accounttransform(account, noisy, self.config.transform, setup)
