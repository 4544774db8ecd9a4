'''
Function:
    Implementation of the diversity-to-penalty calibrators (label-flip probability and embedding noise scale)
Author:
    adage developers
'''
import numpy as np
from scipy.special import expit


'''checktau'''
def checktau(tau):
    tau = float(tau)
    if not (0.0 <= tau <= 1.0):
        raise ValueError(f'tau must lie in [0, 1], got {tau}')
    return tau


'''flipprobability'''
def flipprobability(tau, eta):
    # 1 / (1 + exp(eta * (1 - 2 tau)))
    tau = checktau(tau)
    if eta <= 0: raise ValueError(f'eta must be > 0, got {eta}')
    return float(expit(float(eta) * (2.0 * tau - 1.0)))


'''flipprobabilityab'''
def flipprobabilityab(tau, a, b):
    # 1 / (1 + exp(a tau + b)); a = -2 eta, b = eta gives flipprobability
    tau = checktau(tau)
    return float(expit(-(float(a) * tau + float(b))))


'''noisesigma'''
def noisesigma(tau, alpha, beta, lam):
    # lam * (exp(ln(alpha / lam) * tau / beta) - 1), reaches alpha at tau = beta
    tau = checktau(tau)
    if not (alpha > 0 and 0 < beta <= 1 and 0 < lam < 1 and alpha > lam):
        raise ValueError(f'need alpha > lam, 0 < beta <= 1 and 0 < lam < 1, got alpha={alpha}, beta={beta}, lam={lam}')
    return float(lam * np.expm1(np.log(alpha / lam) * tau / beta))
