from rustcast.nn.activations import relu, sigmoid
from rustcast.nn.adam import AdamState, adam_step
from rustcast.nn.dense import DenseLayer, dense_forward
from rustcast.nn.fcnn import FcnnParams, fcnn_backward, fcnn_forward
from rustcast.nn.gradcheck import GradCheckReport, SignFlipped, grad_check
from rustcast.nn.loss import bce_loss
from rustcast.nn.lstm import (
    LstmLayer,
    LstmParams,
    lstm_backward,
    lstm_cell_forward,
    lstm_forward,
)

MODELS = {"fcnn": FcnnParams, "lstm": LstmParams}

__all__ = [
    "AdamState", "DenseLayer", "FcnnParams", "GradCheckReport", "LstmLayer",
    "LstmParams", "MODELS", "SignFlipped", "adam_step", "bce_loss",
    "dense_forward", "fcnn_backward", "fcnn_forward", "grad_check",
    "lstm_backward", "lstm_cell_forward", "lstm_forward", "relu", "sigmoid",
]
