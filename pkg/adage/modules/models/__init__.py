'''initialize'''
from .modelio import MODEL_HEADER, savemodel, loadmodel
from .params import EncoderParams, HeadParams, ProjectionHead
from .optim import GradientDescent, crossentropyobjective, headobjective, regressionobjective
from .functional import relu, encode, encoderow, softmax, classify, crossentropy, rmse, onehot, fitprojection, project
from .training import NodeClassifier, represent, initweights, fitclassifier, traintarget, fithead, fitregression, reviveunits, activesetinit
