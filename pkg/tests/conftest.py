"""Shared test fixtures."""

import pytest
import pytest_asyncio
from httpx import ASGITransport, AsyncClient

from app.main import app
from app.modules.noise import SamplingOracle, parse_noise, parse_target


@pytest_asyncio.fixture
async def client():
    transport = ASGITransport(app=app)
    async with AsyncClient(transport=transport, base_url="http://test") as c:
        yield c


def make_oracle(
    target: str = "runge",
    noise: str = "right_half",
    seed: int = 1234,
    distribution: str = "normal",
    dependence: str = "independent",
) -> SamplingOracle:
    return SamplingOracle(
        parse_target(target), parse_noise(noise, distribution, dependence), seed
    )


@pytest.fixture
def oracle() -> SamplingOracle:
    return make_oracle()
