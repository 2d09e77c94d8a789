import numpy as np
import pytest

from bpxor.imgio import write_gray, write_rgb


@pytest.fixture
def rng():
    return np.random.default_rng(20121)


def _natural_covers():
    data = pytest.importorskip("skimage.data")
    transform = pytest.importorskip("skimage.transform")

    def to512(img):
        out = transform.resize(img, (512, 512, 3), anti_aliasing=True, preserve_range=True)
        return np.clip(np.rint(out), 0, 255).astype(np.uint8)

    return {
        "astronaut": data.astronaut(),
        "coffee": to512(data.coffee()),
        "hubble": data.hubble_deep_field()[:512, :512].copy(),
        "immunohistochemistry": data.immunohistochemistry(),
        "retina": data.retina()[450:962, 450:962].copy(),
    }


def _cameraman(size):
    data = pytest.importorskip("skimage.data")
    transform = pytest.importorskip("skimage.transform")
    out = transform.resize(data.camera(), (size, size), anti_aliasing=True, preserve_range=True)
    return np.clip(np.rint(out), 0, 255).astype(np.uint8)


@pytest.fixture(scope="session")
def natural_covers():
    """Five 512x512 RGB covers built from images bundled with scikit-image."""
    return _natural_covers()


@pytest.fixture(scope="session")
def cameraman240():
    return _cameraman(240)


@pytest.fixture(scope="session")
def bench_files(tmp_path_factory, natural_covers, cameraman240):
    root = tmp_path_factory.mktemp("bench")
    covers = root / "covers"
    covers.mkdir()
    for name, img in natural_covers.items():
        write_rgb(covers / f"{name}.png", img)
    payload = root / "cameraman240.pgm"
    write_gray(payload, cameraman240)
    return covers, payload


ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key}  {detail}")
