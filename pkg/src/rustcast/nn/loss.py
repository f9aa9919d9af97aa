import numpy as np

from rustcast.errors import EmptyBatch, LengthMismatch, ValidationError
from rustcast.nn.activations import sigmoid, softplus


def bce_loss(logits, labels, pos_weight: float = 1.0):
    """Mean binary cross-entropy on logits.

    Returns ``(loss, dlogits)`` where ``dlogits`` is the gradient of the mean
    loss, i.e. ``w * (sigmoid(z) - y) / batch`` with ``w = pos_weight`` on
    positive examples and 1 elsewhere.
    """
    z = np.asarray(logits, dtype=np.float64).reshape(-1)
    y = np.asarray(labels).reshape(-1)
    if z.shape[0] != y.shape[0]:
        raise LengthMismatch(f"{z.shape[0]} logits vs {y.shape[0]} labels")
    if z.shape[0] == 0:
        raise EmptyBatch("bce_loss on an empty batch")
    if not np.all((y == 0) | (y == 1)):
        raise ValidationError("labels must be 0 or 1")
    y = y.astype(np.float64)
    # softplus(z) - y*z, rewritten so neither branch overflows
    per = y * softplus(-z) + (1.0 - y) * softplus(z)
    w = np.where(y == 1.0, pos_weight, 1.0)
    n = z.shape[0]
    loss = float(np.sum(w * per) / n)
    dlogits = w * (sigmoid(z) - y) / n
    return loss, dlogits
