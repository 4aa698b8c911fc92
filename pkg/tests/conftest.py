import math

import pytest

from intrinsic_metrics import kernel_backend
from intrinsic_metrics.domains import HalfSpace, Sector, UnitBall, pentagram

COMPILED = kernel_backend == "compiled"

# The four domains every broad property sweep runs on.
STOCK_DOMAINS = (
    ("halfplane", HalfSpace()),
    ("unitball", UnitBall()),
    ("sector", Sector(math.pi / 3.0)),
    ("pentagram", pentagram()),
)


@pytest.fixture(params=STOCK_DOMAINS, ids=lambda p: p[0])
def stock_domain(request):
    return request.param[1]
