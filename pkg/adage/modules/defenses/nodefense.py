'''
Function:
    Implementation of NoDefense, the undefended passthrough (diversity is still tracked)
Author:
    adage developers
'''
from .base import BaseDefense


'''NoDefense'''
class NoDefense(BaseDefense):
    source = 'NoDefense'
    '''perturb'''
    def perturb(self, setup, embedding, tau, account, rng):
        return self.rawoutput(setup, embedding)
