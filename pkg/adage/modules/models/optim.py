'''
Function:
    Implementation of full-batch gradient descent with step halving, and the loss/gradient objectives it minimizes
Author:
    adage developers
'''
import numpy as np
from ..utils import LoggerHandle, TrainingDivergedError
from .functional import relu, softmax, crossentropy, rmse


'''GradientDescent'''
class GradientDescent():
    def __init__(self, lr: float, epochs: int, min_lr: float = 1e-12, tag: str = 'model', logger_handle: LoggerHandle = None, disable_print: bool = True):
        if lr <= 0 or epochs < 0:
            raise ValueError(f'need lr > 0 and epochs >= 0, got lr={lr}, epochs={epochs}')
        self.lr = float(lr)
        self.epochs = int(epochs)
        self.min_lr = min_lr
        self.tag = tag
        self.logger_handle = logger_handle if logger_handle else LoggerHandle()
        self.disable_print = disable_print
        self.history = []
    '''checkfinite'''
    def checkfinite(self, loss, params, epoch):
        if np.isfinite(loss): return
        norms = ', '.join(f'|{name}|={float(np.linalg.norm(value)):.4g}' for name, value in params.items())
        raise TrainingDivergedError(f'{self.tag}: non-finite loss {loss} at epoch {epoch} (lr={self.lr}, {norms})')
    '''minimize'''
    def minimize(self, objective, params: dict):
        params = {name: np.array(value, dtype=np.float64) for name, value in params.items()}
        loss, grads = objective(params)
        self.checkfinite(loss, params, 0)
        self.history, lr = [loss], self.lr
        for epoch in range(1, self.epochs + 1):
            candidate = {name: value - lr * grads[name] for name, value in params.items()}
            new_loss, new_grads = objective(candidate)
            self.checkfinite(new_loss, candidate, epoch)
            # a step that raises the loss is rejected and the step size halved
            if new_loss > loss:
                lr *= 0.5
                self.history.append(loss)
                if lr < self.min_lr:
                    self.logger_handle.debug(f'GradientDescent.minimize >>> {self.tag}: step size fell below {self.min_lr:.3g} at epoch {epoch}, stopping', disable_print=self.disable_print)
                    break
                continue
            params, loss, grads = candidate, new_loss, new_grads
            self.history.append(loss)
        self.logger_handle.info(f'GradientDescent.minimize >>> {self.tag}: loss {self.history[0]:.6f} -> {loss:.6f} in {len(self.history) - 1} epochs (final lr {lr:.3g})', disable_print=self.disable_print)
        return params


'''crossentropyobjective'''
def crossentropyobjective(propagated, targets):
    # trains encoder and head jointly: loss = crossentropy(targets, softmax(relu(S W1) W2 + b2))
    num_rows = propagated.shape[0]
    def _objective(params):
        Z = propagated @ params['W1']
        E = relu(Z)
        P = softmax(E @ params['W2'] + params['b2'])
        loss = crossentropy(targets, P)
        G = (P * targets.sum(axis=1, keepdims=True) - targets) / num_rows
        dZ = (G @ params['W2'].T) * (Z > 0)
        return loss, {'W1': propagated.T @ dZ, 'W2': E.T @ G, 'b2': G.sum(axis=0)}
    return _objective


'''headobjective'''
def headobjective(embeddings, targets):
    num_rows = embeddings.shape[0]
    def _objective(params):
        P = softmax(embeddings @ params['W2'] + params['b2'])
        G = (P * targets.sum(axis=1, keepdims=True) - targets) / num_rows
        return crossentropy(targets, P), {'W2': embeddings.T @ G, 'b2': G.sum(axis=0)}
    return _objective


'''regressionobjective'''
def regressionobjective(propagated, responses, with_map: bool):
    # reports rmse, steps along the mean-squared-error gradient (same minimizer, smooth at zero)
    num_entries = responses.size
    def _objective(params):
        Z = propagated @ params['W1']
        E = relu(Z)
        outputs = E @ params['Wo'] + params['bo'] if with_map else E
        residual = outputs - responses
        dO = 2.0 * residual / num_entries
        grads = {}
        if with_map:
            grads['Wo'], grads['bo'] = E.T @ dO, dO.sum(axis=0)
            dO = dO @ params['Wo'].T
        grads['W1'] = propagated.T @ (dO * (Z > 0))
        return rmse(outputs, responses), grads
    return _objective
