"""SMOTE and ADASYN oversampling for two-class data, with evaluation helpers."""

import json

from ._rebalance import *  # noqa: F401,F403
from ._rebalance import evaluate_json as _evaluate_json


def evaluate(ds, method="none", **kwargs):
    """Run split -> standardize -> resample -> train -> score; return the report as a dict."""
    return json.loads(_evaluate_json(ds, method, **kwargs))
