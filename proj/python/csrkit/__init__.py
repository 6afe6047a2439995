"""csrkit: constraint-satisfiability reconfiguration toolkit."""

import json as _json

try:
    from ._csrkit import (CsrError, analyze, enumerate_solutions, generate,
                          kernelize, solve, transform)
except ImportError:  # running against an in-build extension
    from _csrkit import (CsrError, analyze, enumerate_solutions, generate,
                         kernelize, solve, transform)

__all__ = [
    "CsrError",
    "analyze",
    "enumerate_solutions",
    "generate",
    "kernelize",
    "solve",
    "transform",
    "instance",
]


def instance(domain, vertices, hyperedges, source, target, weights=None):
    """Build instance JSON from plain python data.

    ``hyperedges`` is a list of (scope, allowed) pairs using value labels.
    """
    doc = {
        "domain": list(domain),
        "vertices": list(vertices),
        "hyperedges": [
            {"scope": list(scope), "allowed": [list(t) for t in allowed]}
            for scope, allowed in hyperedges
        ],
        "source": dict(source),
        "target": dict(target),
    }
    if weights:
        doc["weights"] = dict(weights)
    return _json.dumps(doc)
