"""scikit-learn adapter for the efficiency engine.

The estimator follows the sklearn contract (``get_params``/``set_params``/
``clone``); ``fit`` takes the input matrix as ``X`` and the output matrix
as ``y`` (one row per unit, ``y`` may be 1- or 2-dimensional).
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_array, check_is_fitted

from pdei.dea import Dmu, ccr_efficiency, ccr_efficiency_all
from pdei.errors import InputError


def _as_output_matrix(y) -> np.ndarray:
    Y = check_array(y, dtype=float, ensure_2d=False)
    if Y.ndim == 1:
        Y = Y.reshape(-1, 1)
    return Y


class CcrEfficiency(BaseEstimator):
    """Relative-efficiency scores for units with positive inputs and
    nonnegative outputs, under constant returns to scale.

    Parameters
    ----------
    efficient_tol : float, default=1e-7
        Units with efficiency >= 1 - efficient_tol are flagged efficient.

    Attributes
    ----------
    efficiency_ : ndarray of shape (n_units,)
        Efficiency of each fitted unit relative to the fitted set, in (0, 1].
    input_weights_ : ndarray of shape (n_units, n_inputs)
    output_weights_ : ndarray of shape (n_units, n_outputs)
        Optimal multiplier weights from the solver's final basis.  When
        alternate optima exist the weights are deterministic but not unique;
        the efficiencies are unique.
    is_efficient_ : ndarray of bool, shape (n_units,)
    """

    def __init__(self, efficient_tol: float = 1e-7):
        self.efficient_tol = efficient_tol

    def fit(self, X, y):
        """Score every row of (X, y) relative to the full set.

        X holds the inputs (all strictly positive), y the outputs
        (nonnegative, at least one positive per row).
        """
        X = check_array(X, dtype=float)
        Y = _as_output_matrix(y)
        if X.shape[0] != Y.shape[0]:
            raise InputError(f"X has {X.shape[0]} rows but y has {Y.shape[0]}")
        dmus = [Dmu(id=str(i), inputs=X[i], outputs=Y[i]) for i in range(X.shape[0])]
        result = ccr_efficiency_all(dmus)
        self.inputs_ = X.copy()
        self.outputs_ = Y.copy()
        self.efficiency_ = result.efficiencies
        self.input_weights_ = np.vstack([s.input_weights for s in result.scores])
        self.output_weights_ = np.vstack([s.output_weights for s in result.scores])
        self.is_efficient_ = self.efficiency_ >= 1 - self.efficient_tol
        self.n_features_in_ = X.shape[1]
        return self

    def fit_predict(self, X, y) -> np.ndarray:
        return self.fit(X, y).efficiency_

    def predict(self, X, y) -> np.ndarray:
        """Score new units against the fitted set.

        Each new unit is evaluated within the fitted set plus itself, so
        predicting on the training rows reproduces ``efficiency_``.
        """
        check_is_fitted(self, "efficiency_")
        X = check_array(X, dtype=float)
        Y = _as_output_matrix(y)
        if X.shape[0] != Y.shape[0]:
            raise InputError(f"X has {X.shape[0]} rows but y has {Y.shape[0]}")
        if X.shape[1] != self.inputs_.shape[1] or Y.shape[1] != self.outputs_.shape[1]:
            raise InputError("new units do not match the fitted dimensions")
        reference = [
            Dmu(id=f"ref{i}", inputs=self.inputs_[i], outputs=self.outputs_[i])
            for i in range(self.inputs_.shape[0])
        ]
        out = np.empty(X.shape[0])
        for i in range(X.shape[0]):
            pool = reference + [Dmu(id=f"new{i}", inputs=X[i], outputs=Y[i])]
            out[i] = ccr_efficiency(pool, len(pool) - 1).theta
        return out
