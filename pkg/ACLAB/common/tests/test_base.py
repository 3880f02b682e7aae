import json

import numpy as np

from common.base import round_sig, to_primitive
from utils.enums import Tuning


def test_round_sig_keeps_twelve_digits():
    assert round_sig(1.0 / 3.0) == 0.333333333333
    assert round_sig(0.0) == 0.0
    assert round_sig(None) is None


def test_to_primitive_is_json_ready():
    payload = to_primitive({
        "tuning": Tuning.DYNAMICAL,
        "values": np.array([0.5, 1.0 / 3.0]),
        "coupling": 0.25j,
        "count": np.int64(3),
        Tuning.BARE: True,
    })
    assert payload == {
        "tuning": "dynamical",
        "values": [0.5, 0.333333333333],
        "coupling": [0.0, 0.25],
        "count": 3,
        "bare": True,
    }
    json.dumps(payload)
