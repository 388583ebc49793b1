"""Central finite-difference verification of the analytic gradients."""

from __future__ import annotations


def grad_check(loss_fn, params, eps: float = 1e-5, denom_floor: float = 1e-6) -> float:
    """Max relative error between analytic and numeric gradients.

    ``loss_fn()`` computes the loss AND fills ``p.grad`` for every Param in
    ``params``. Probes every element; returns 0.0 for an empty parameter
    list. ``denom_floor`` guards the relative error of near-zero gradients
    against finite-difference cancellation noise (deep composites need a
    larger floor than single layers).
    """
    params = list(params)
    if not params:
        return 0.0
    for _, p in params:
        p.zero_grad()
    loss_fn()
    analytic = [p.grad.copy() for _, p in params]

    worst = 0.0
    for (_, p), ga in zip(params, analytic):
        flat = p.value.reshape(-1)
        gflat = ga.reshape(-1)
        for i in range(flat.size):
            orig = flat[i]
            flat[i] = orig + eps
            for _, q in params:
                q.zero_grad()
            lp = loss_fn()
            flat[i] = orig - eps
            for _, q in params:
                q.zero_grad()
            lm = loss_fn()
            flat[i] = orig
            gn = (lp - lm) / (2.0 * eps)
            denom = max(denom_floor, abs(gflat[i]) + abs(gn))
            worst = max(worst, abs(gflat[i] - gn) / denom)
    return worst
