import pytest

from planarlabel import kernels


@pytest.fixture(params=sorted(kernels.BACKENDS))
def backend(request):
    """Run the test once per available kernel backend."""
    prev = kernels.use_backend(request.param)
    yield request.param
    kernels.use_backend(prev)


def pytest_report_header(config):
    return f"planarlabel kernels: {', '.join(sorted(kernels.BACKENDS))} (active: {kernels.backend()})"
