from .backend import BACKEND
from .classic import CLASSIC_KINDS, ClassicClassifier
from .encoder import EncoderConfig, SequenceEncoder, encoder_forward
from .forest import Forest
from .gradcheck import grad_check
from .layers import Dense, ELU, Dropout, LSTMLayer, LuongAttention, Param, Sigmoid, weighted_bce
from .net import BinaryNet, train_binary
from .optim import Adam, SGD
from .tree import DecisionTree

__all__ = [
    "BACKEND",
    "CLASSIC_KINDS",
    "ClassicClassifier",
    "EncoderConfig",
    "SequenceEncoder",
    "encoder_forward",
    "Forest",
    "grad_check",
    "Dense",
    "ELU",
    "Dropout",
    "LSTMLayer",
    "LuongAttention",
    "Param",
    "Sigmoid",
    "weighted_bce",
    "BinaryNet",
    "train_binary",
    "Adam",
    "SGD",
    "DecisionTree",
]
