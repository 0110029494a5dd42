import hashlib

import numpy as np
import pytest
from PIL import Image

from hypermono.exactmath import ExactMatrix, IntPoly
from hypermono.hypergeo import companion
from hypermono.limitset import (
    AllPointsDiscarded,
    Canvas,
    DominantNotRealSimple,
    NoConvergence,
    OrbitConfig,
    StreamingPCA,
    TooFewPoints,
    aberth_roots,
    auto_chart,
    collect,
    dominant_eigenvector,
    enumerate_orbit,
    eta_matrix,
    iter_points,
    jacobi_eigh,
    orbit_size,
    pca_top3,
    project_chart,
    render_scatter,
    spectral_gap,
)
from hypermono.limitset.orbit import TAG_NAMES, apply_normalized
from hypermono.limitset.render import COLORS, Rasterizer
from hypermono.limitset.spectral import to_float
from hypermono.words import evaluate

# ratios from the Aberth root finder, cross-checked against numpy.linalg.eigvals below
GAP_47 = 12.225036936172
GAP_55 = 10.141723601610


# -- power iteration -------------------------------------------------------

def test_power_iteration_diagonal():
    res = dominant_eigenvector(np.diag([2.0, 1, 1, 1, 1, 1]))
    assert np.allclose(np.abs(res.vector), np.eye(6)[0], atol=1e-12)
    assert res.eigenvalue == pytest.approx(2.0, abs=1e-12)


@pytest.mark.parametrize("case", ["c47", "c55"])
def test_power_iteration_eta(case, request):
    c = request.getfixturevalue(case)
    eta = eta_matrix(c)
    res = dominant_eigenvector(eta, tol=1e-12, max_iter=30)
    assert res.iterations <= 30
    E = to_float(eta)
    assert np.linalg.norm(E @ res.vector - res.eigenvalue * res.vector) <= 1e-9
    assert np.linalg.norm(res.vector) == pytest.approx(1.0, abs=1e-15)


def test_power_iteration_rotation_fails():
    M = np.diag([0.0, 0.0, 0.5, 0.5, 0.5, 0.5])
    M[0, 1], M[1, 0] = -1.0, 1.0
    with pytest.raises(NoConvergence):
        dominant_eigenvector(M, max_iter=200)


def test_power_iteration_seeded():
    eta = np.diag([3.0, 1, 0.5, 0.2, 0.1, 0.05])
    a = dominant_eigenvector(eta, seed=3)
    b = dominant_eigenvector(eta, seed=3)
    assert np.array_equal(a.vector, b.vector) and a.iterations == b.iterations


# -- root finding and spectral gap ---------------------------------------

def _poly_from_roots(roots):
    c = np.array([1.0 + 0j])
    for r in roots:
        c = np.convolve(c, [1.0, -r])
    return c.real[::-1]  # low degree first


@pytest.mark.parametrize("seed", range(20))
def test_aberth_against_known_roots(seed):
    rng = np.random.default_rng(seed)
    nreal = int(rng.integers(0, 4))
    npair = int(rng.integers(1, 3))
    roots = list(rng.uniform(-5, 5, nreal))
    for _ in range(npair):
        z = complex(rng.uniform(-3, 3), rng.uniform(0.3, 3))
        roots += [z, z.conjugate()]
    got = aberth_roots(_poly_from_roots(roots))
    assert len(got) == len(roots)
    for r in roots:
        assert np.min(np.abs(got - r)) < 1e-8 * max(1, abs(r))


def test_aberth_zero_roots():
    got = aberth_roots((0, 0, 0, 0, 0, -3, 1))
    assert np.sort(np.abs(got))[-1] == pytest.approx(3.0, abs=1e-12)
    assert np.sum(np.abs(got) < 1e-12) == 5


@pytest.mark.parametrize("case, ratio", [("c47", GAP_47), ("c55", GAP_55)])
def test_spectral_gap(case, ratio, request):
    c = request.getfixturevalue(case)
    gap = spectral_gap(eta_matrix(c))
    assert gap.ratio >= 10
    assert gap.ratio == pytest.approx(ratio, rel=1e-9)
    ev = np.linalg.eigvals(to_float(eta_matrix(c)))
    ev = ev[np.argsort(-np.abs(ev))]
    assert abs(ev[0].imag) < 1e-9
    assert gap.lambda1 == pytest.approx(ev[0].real, rel=1e-9)
    assert gap.ratio == pytest.approx(abs(ev[0]) / abs(ev[1]), rel=1e-8)
    # the power-iteration eigenvalue agrees with the polynomial root
    assert dominant_eigenvector(eta_matrix(c)).eigenvalue == pytest.approx(gap.lambda1, rel=1e-10)


def test_spectral_gap_companion():
    gap = spectral_gap(companion(IntPoly((0, 0, 0, 0, 0, -3, 1))))
    assert gap.lambda1 == pytest.approx(3.0, abs=1e-12)
    assert gap.ratio == float("inf")


def test_spectral_gap_rejects_complex_dominant():
    # roots 2i, -2i, 1: (x^2 + 4)(x - 1)
    with pytest.raises(DominantNotRealSimple):
        spectral_gap(companion(IntPoly((-4, 4, -1, 1))))


# -- enumeration ------------------------------------------------------------

def test_orbit_size_formula():
    assert [orbit_size(n) for n in range(4)] == [1, 5, 17, 53]
    assert orbit_size(21) == 20920706405


@pytest.mark.parametrize("depth", range(0, 11))
def test_orbit_counts(c47, depth):
    total = sum(len(c) for c in enumerate_orbit(OrbitConfig(c47, depth)))
    assert total == 2 * 3 ** depth - 1 if depth else total == 1


def test_orbit_threads_identical(c55):
    seed = None
    ref = None
    for threads in (1, 2, 8):
        cfg = OrbitConfig(c55, 10, threads=threads, seed_vector=seed)
        out = collect(enumerate_orbit(cfg))
        if ref is None:
            ref = out
        else:
            assert np.array_equal(out.points, ref.points)
            assert np.array_equal(out.tags, ref.tags)
            assert np.array_equal(out.lengths, ref.lengths)


def test_orbit_batch_split_invariance(c47):
    # the same points come out whatever the batching depth
    a = collect(enumerate_orbit(OrbitConfig(c47, 7, batch_levels=8, with_words=True)))
    b = collect(enumerate_orbit(OrbitConfig(c47, 7, batch_levels=2, with_words=True)))
    ia = {w: i for i, w in enumerate(a.words)}
    for j, w in enumerate(b.words):
        assert np.array_equal(a.points[ia[w]], b.points[j])


def test_orbit_words_reduced_and_unit(c47):
    out = collect(enumerate_orbit(OrbitConfig(c47, 6, with_words=True)))
    assert len(set(out.words)) == len(out.words) == orbit_size(6)
    for w, t, n in zip(out.words, out.tags, out.lengths):
        assert all(not (x != y and x.lower() == y.lower()) for x, y in zip(w, w[1:]))
        assert len(w) == n
        assert TAG_NAMES[t] == (w[-1] if w else "seed")
    norms = np.linalg.norm(out.points, axis=1)
    assert np.max(np.abs(norms - 1)) <= 1e-12


def test_orbit_points_match_exact_words(c55):
    out = collect(enumerate_orbit(OrbitConfig(c55, 4, with_words=True)))
    seed = out.points[0]
    for w, p in zip(out.words, out.points):
        v = to_float(evaluate(w, c55)) @ seed
        v /= np.linalg.norm(v)
        assert np.allclose(p, v, atol=1e-10)


def test_iter_points(c47):
    pts = list(iter_points(enumerate_orbit(OrbitConfig(c47, 1))))
    assert [p.tag for p in pts] == ["seed", "a", "A", "b", "B"]
    assert [p.length for p in pts] == [0, 1, 1, 1, 1]


def test_apply_normalized_batch_independent(c47):
    rng = np.random.default_rng(0)
    V = rng.standard_normal((50, 6))
    M = to_float(c47.A)
    full = apply_normalized(M, V)
    for i in range(0, 50, 7):
        assert np.array_equal(apply_normalized(M, V[i:i + 1])[0], full[i])


def test_config_validation(c47):
    with pytest.raises(ValueError):
        OrbitConfig(c47, -1)
    with pytest.raises(ValueError):
        OrbitConfig(c47, 2, cutoff=0)


# -- chart ----------------------------------------------------------------

def test_project_chart_basic():
    ell = np.eye(6)[0]
    v = np.array([[2.0, 1, 0, 0, 0, 4]])
    P, keep = project_chart(v, ell)
    assert keep.tolist() == [True]
    assert np.allclose(P[0], v[0] / 2)
    w = np.array([[1e-4, 1, 0, 0, 0, 0]])
    P, keep = project_chart(np.vstack([v, w]), ell, 1e-3)
    assert keep.tolist() == [True, False]
    with pytest.raises(AllPointsDiscarded):
        project_chart(w, ell, 1e-3)


def test_auto_chart_keeps_seed(c47, c55):
    for c in (c47, c55):
        seed = dominant_eigenvector(eta_matrix(c)).vector
        ell = auto_chart(seed)
        assert abs(seed @ ell) >= 1 / np.sqrt(6)
        _, keep = project_chart(seed, ell)
        assert keep.all()


# -- PCA -----------------------------------------------------------------

def test_jacobi_matches_eigh():
    rng = np.random.default_rng(5)
    for _ in range(10):
        X = rng.standard_normal((6, 6))
        S = X @ X.T
        w, V = jacobi_eigh(S)
        ref = np.sort(np.linalg.eigvalsh(S))[::-1]
        assert np.allclose(w, ref, rtol=1e-10, atol=1e-12)
        assert np.allclose(V.T @ V, np.eye(6), atol=1e-10)
        assert np.allclose(S @ V, V * w, atol=1e-9)


def test_pca_axis_cloud():
    rng = np.random.default_rng(1)
    X = np.zeros((500, 6))
    X[:, 0] = rng.uniform(-1, 1, 500)
    X += 1e-9 * rng.standard_normal(X.shape)
    res = pca_top3(X)
    assert np.allclose(np.abs(res.components[0]), np.eye(6)[0], atol=1e-6)
    assert res.variances[0] > 1e10 * res.variances[1]


def test_pca_isotropic():
    # standard normal in R^6: every population variance is 1; with 10^5
    # samples the sample eigenvalues lie within (1 +- sqrt(6/n))^2 ~ 1 +- 0.016
    rng = np.random.default_rng(2)
    res = pca_top3(rng.standard_normal((100_000, 6)))
    assert np.all(np.abs(res.all_variances - 1) < 0.03)


def test_pca_rotation_invariance():
    rng = np.random.default_rng(3)
    X = rng.standard_normal((2000, 6)) * np.array([5, 3, 2, 1, 0.5, 0.1])
    Q, _ = np.linalg.qr(rng.standard_normal((6, 6)))
    a, b = pca_top3(X), pca_top3(X @ Q.T)
    assert np.allclose(a.variances, b.variances, rtol=0, atol=1e-9)
    for k in range(3):
        rotated = Q @ a.components[k]
        assert min(np.linalg.norm(rotated - b.components[k]), np.linalg.norm(rotated + b.components[k])) < 1e-8


def test_pca_contract_and_streaming():
    rng = np.random.default_rng(4)
    X = rng.standard_normal((3000, 6)) @ rng.standard_normal((6, 6))
    res = pca_top3(X)
    C = res.components
    assert np.allclose(C @ C.T, np.eye(3), atol=1e-10)
    assert np.all(np.diff(res.variances) <= 0)
    acc = StreamingPCA(6)
    for part in np.array_split(X, 17):
        acc.update(part)
    s = acc.result()
    assert np.allclose(s.mean, X.mean(axis=0), atol=1e-12)
    assert np.allclose(acc.covariance(), np.cov(X.T, bias=True), atol=1e-10)
    assert np.allclose(s.variances, res.variances, rtol=1e-10)


def test_pca_too_few():
    with pytest.raises(TooFewPoints):
        pca_top3(np.zeros((3, 6)))


# -- rendering -------------------------------------------------------------

def test_render_single_seed(tmp_path):
    out = tmp_path / "one.png"
    render_scatter(np.array([[0.3, -0.7]]), np.array([0]), out, Canvas(64, 64, alpha=1.0))
    img = np.asarray(Image.open(out))
    lit = np.argwhere(img.sum(axis=2) > 0)
    assert len(lit) == 1
    r, c = lit[0]
    assert abs(r - 32) <= 1 and abs(c - 32) <= 1
    assert tuple(img[r, c]) == (128, 128, 128)


def test_render_empty(tmp_path):
    with pytest.raises(ValueError):
        render_scatter(np.zeros((0, 2)), np.zeros(0, dtype=np.uint8), tmp_path / "x.png")


def test_render_c47_all_colors(c47, tmp_path):
    from hypermono.limitset import run_pipeline

    cfg = OrbitConfig(c47, 10)
    pts = collect(enumerate_orbit(cfg))
    # oracle: the emitted cloud has every generator color
    assert set(np.unique(pts.tags)) == {0, 1, 2, 3, 4}
    out = tmp_path / "c47.png"
    res = run_pipeline(OrbitConfig(c47, 10), image_out=out, canvas=Canvas(256, 256))
    assert all(res.tag_counts[t] > 0 for t in "aAbB")
    img = np.asarray(Image.open(out)).astype(float)
    # some pixel has each generator's hue
    for t in range(1, 5):
        col = COLORS[t] / np.linalg.norm(COLORS[t])
        flat = img.reshape(-1, 3)
        norms = np.linalg.norm(flat, axis=1)
        ok = norms > 0
        cos = (flat[ok] @ col) / norms[ok]
        assert np.max(cos) > 0.999


def test_rasterizer_deterministic():
    rng = np.random.default_rng(0)
    xy = rng.standard_normal((5000, 2))
    tags = rng.integers(0, 5, 5000).astype(np.uint8)
    imgs = []
    for _ in range(2):
        r = Rasterizer(Canvas(128, 128), (-3, 3, -3, 3))
        r.add(xy, tags)
        imgs.append(hashlib.sha256(r.image().tobytes()).hexdigest())
    assert imgs[0] == imgs[1]


def test_canvas_validation():
    with pytest.raises(ValueError):
        Canvas(window=(1, 0, 0, 1))
    with pytest.raises(ValueError):
        Canvas(alpha=0)


def test_exact_eta_is_integral(c47):
    eta = eta_matrix(c47)
    assert isinstance(eta, ExactMatrix) and eta.is_integral()
