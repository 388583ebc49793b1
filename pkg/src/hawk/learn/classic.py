"""The committee's classifier kinds behind one fit/decide interface.

Every kind exposes fit(X, y) and decide(x) -> (class, score in [0, 1]).
Score exactly 0.5 decides class 0, matching the forest's argmax tie rule.
"""

from __future__ import annotations

import numpy as np

from ..errors import DegenerateClass, SingularCovariance, UntrainedModel
from .forest import Forest
from .net import BinaryNet, train_binary
from .tree import DecisionTree

CLASSIC_KINDS = (
    "mlp",
    "logreg",
    "random-forest",
    "linear-svm",
    "gaussian-nb",
    "qda",
    "decision-tree",
)

VAR_FLOOR = 1e-9
QDA_RIDGE = 1e-6


def _sigmoid(z):
    return 1.0 / (1.0 + np.exp(-np.clip(z, -500, 500)))


class _LogReg:
    def __init__(self, lr=0.5, iters=300, l2=1e-4):
        self.lr, self.iters, self.l2 = lr, iters, l2
        self.w = None

    def fit(self, X, y):
        n, d = X.shape
        w = np.zeros(d + 1)
        Xb = np.hstack([X, np.ones((n, 1))])
        vel = np.zeros_like(w)
        for _ in range(self.iters):
            p = _sigmoid(Xb @ w)
            grad = Xb.T @ (p - y) / n + self.l2 * np.r_[w[:-1], 0.0]
            vel = 0.9 * vel + grad
            w -= self.lr * vel
        self.w = w

    def score(self, x):
        return float(_sigmoid(np.r_[x, 1.0] @ self.w))


class _LinearSVM:
    """Subgradient descent on the L2-regularized hinge loss (no kernel)."""

    def __init__(self, lam=1e-3, iters=500, lr0=0.5):
        self.lam, self.iters, self.lr0 = lam, iters, lr0
        self.w = None

    def fit(self, X, y):
        n, d = X.shape
        ys = np.where(y > 0.5, 1.0, -1.0)
        w = np.zeros(d)
        b = 0.0
        for t in range(1, self.iters + 1):
            lr = self.lr0 / (1.0 + self.lam * self.lr0 * t)
            margins = ys * (X @ w + b)
            viol = margins < 1.0
            gw = self.lam * w - (ys[viol, None] * X[viol]).sum(axis=0) / n
            gb = -(ys[viol]).sum() / n
            w -= lr * gw
            b -= lr * gb
        self.w, self.b = w, b

    def score(self, x):
        return float(_sigmoid(x @ self.w + self.b))


class _GaussianNB:
    def __init__(self, var_floor=VAR_FLOOR):
        self.var_floor = var_floor
        self.stats = None

    def fit(self, X, y):
        self.stats = []
        n = len(y)
        for cls in (0, 1):
            Xc = X[y == cls]
            if len(Xc) < 2:
                raise DegenerateClass(f"gaussian-nb requires >= 2 samples in class {cls}")
            mean = Xc.mean(axis=0)
            var = Xc.var(axis=0) + self.var_floor
            prior = len(Xc) / n
            self.stats.append((mean, var, prior))

    def score(self, x):
        logp = []
        for mean, var, prior in self.stats:
            ll = -0.5 * (np.log(2 * np.pi * var) + (x - mean) ** 2 / var).sum() + np.log(prior)
            logp.append(ll)
        m = max(logp)
        e = np.exp(np.asarray(logp) - m)
        return float(e[1] / e.sum())


class _QDA:
    def __init__(self, ridge=QDA_RIDGE, regularize=True):
        self.ridge = ridge
        self.regularize = regularize
        self.stats = None

    def fit(self, X, y):
        self.stats = []
        n, d = X.shape
        for cls in (0, 1):
            Xc = X[y == cls]
            if len(Xc) < 2:
                raise DegenerateClass(f"qda requires >= 2 samples in class {cls}")
            mean = Xc.mean(axis=0)
            cov = np.cov(Xc, rowvar=False, bias=True)
            cov = np.atleast_2d(cov)
            if self.regularize:
                cov = cov + self.ridge * np.eye(d)
            sign, logdet = np.linalg.slogdet(cov)
            if sign <= 0:
                raise SingularCovariance(f"class {cls} covariance is singular")
            self.stats.append((mean, np.linalg.inv(cov), logdet, np.log(len(Xc) / n)))

    def score(self, x):
        logp = []
        for mean, prec, logdet, logprior in self.stats:
            diff = x - mean
            logp.append(-0.5 * (logdet + diff @ prec @ diff) + logprior)
        m = max(logp)
        e = np.exp(np.asarray(logp) - m)
        return float(e[1] / e.sum())


class _MLP:
    def __init__(self, hidden=(8, 8), epochs=200, lr=1e-2, seed=0):
        self.hidden, self.epochs, self.lr, self.seed = hidden, epochs, lr, seed
        self.net = None

    def fit(self, X, y):
        self.net = BinaryNet(X.shape[1], hidden=self.hidden, seed=self.seed)
        train_binary(
            self.net,
            lambda x, rng: self.net.forward(x),
            self.net.backward,
            list(X),
            y,
            epochs=self.epochs,
            lr=self.lr,
            pos_weight=1.0,
            seed=self.seed,
        )

    def score(self, x):
        return self.net.forward(x)


class ClassicClassifier:
    """One of the seven committee kinds."""

    def __init__(self, kind: str, seed: int = 0, **hyper):
        if kind not in CLASSIC_KINDS:
            raise ValueError(f"unknown classifier kind {kind!r}")
        self.kind = kind
        self.seed = seed
        self.hyper = hyper
        self._model = None

    def fit(self, X: np.ndarray, y: np.ndarray) -> "ClassicClassifier":
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.int64)
        if len(np.unique(y)) < 2:
            raise DegenerateClass("both classes are required to fit")
        kind = self.kind
        if kind == "logreg":
            model = _LogReg(**self.hyper)
            model.fit(X, y)
        elif kind == "linear-svm":
            model = _LinearSVM(**self.hyper)
            model.fit(X, y)
        elif kind == "gaussian-nb":
            model = _GaussianNB(**self.hyper)
            model.fit(X, y)
        elif kind == "qda":
            model = _QDA(**self.hyper)
            model.fit(X, y)
        elif kind == "mlp":
            model = _MLP(seed=self.seed, **self.hyper)
            model.fit(X, y)
        elif kind == "random-forest":
            model = Forest(seed=self.seed, **{"n_estimators": 60, "max_depth": 12, **self.hyper})
            model.fit(X, y)
        else:  # decision-tree
            rng = np.random.Generator(np.random.PCG64(self.seed))
            model = DecisionTree(**{"max_depth": 12, **self.hyper})
            model.fit(X, y, rng)
        self._model = model
        return self

    def decide(self, x: np.ndarray) -> tuple[int, float]:
        if self._model is None:
            raise UntrainedModel(f"{self.kind} is not fitted")
        x = np.asarray(x, dtype=np.float64)
        if self.kind == "random-forest":
            cls, probs = self._model.decide(x)
            return cls, float(probs[1])
        if self.kind == "decision-tree":
            probs = self._model.predict_proba(x)
            return int(np.argmax(probs)), float(probs[1])
        score = self._model.score(x)
        return (1 if score > 0.5 else 0), score
