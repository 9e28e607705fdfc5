"""RMSE and SSIM between a reference and a reconstructed cube."""

from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import ShapeError

__all__ = [
    "QualityReport",
    "rmse",
    "gaussian_window",
    "ssim_channels",
    "ssim",
    "quality_report",
]


def _data(cube):
    return np.asarray(getattr(cube, "data", cube), dtype=np.float64)


def _pair(ref, rec):
    ref, rec = _data(ref), _data(rec)
    if ref.shape != rec.shape:
        raise ShapeError(f"reference {ref.shape} and reconstruction {rec.shape} differ")
    return ref, rec


def rmse(ref, rec):
    ref, rec = _pair(ref, rec)
    d = (ref - rec).ravel()
    return float(np.sqrt(np.dot(d, d) / d.size))


def gaussian_window(size=11, sigma=1.5):
    """Normalized 1D Gaussian taps; the 2D window is their outer product."""
    x = np.arange(size) - (size - 1) / 2.0
    g = np.exp(-0.5 * (x / sigma) ** 2)
    return g / g.sum()


def _filter_valid(img, g):
    # separable correlation over axes 0 and 1, keeping fully-covered positions only
    n = g.size
    rows = img.shape[0] - n + 1
    cols = img.shape[1] - n + 1
    tmp = g[0] * img[:rows]
    for w in range(1, n):
        tmp += g[w] * img[w:w + rows]
    out = g[0] * tmp[:, :cols]
    for w in range(1, n):
        out += g[w] * tmp[:, w:w + cols]
    return out


def _default_range(ref, k1):
    data_range = float(ref.max() - ref.min())
    # a (near-)constant reference would zero both stabilizing constants
    if not (k1 * data_range) ** 2 > 0.0:
        data_range = 1.0
    return data_range


def ssim_channels(ref, rec, window=11, sigma=1.5, k1=0.01, k2=0.03, data_range=None):
    """Per-channel SSIM of two (I, J, K) cubes.

    The dynamic range defaults to ``max(ref) - min(ref)`` over the whole
    reference; a constant reference falls back to a range of 1.
    """
    ref, rec = _pair(ref, rec)
    if ref.ndim == 2:
        ref, rec = ref[..., None], rec[..., None]
    if ref.shape[0] < window or ref.shape[1] < window:
        raise ShapeError(f"image of size {ref.shape[:2]} is smaller than the {window}x{window} window")
    if data_range is None:
        data_range = _default_range(ref, k1)
    # SSIM is invariant to a common rescaling of images and range; work at unit range
    ref = ref / data_range
    rec = rec / data_range
    c1 = k1 * k1
    c2 = k2 * k2
    g = gaussian_window(window, sigma)

    mu_x = _filter_valid(ref, g)
    mu_y = _filter_valid(rec, g)
    sxx = _filter_valid(ref * ref, g) - mu_x * mu_x
    syy = _filter_valid(rec * rec, g) - mu_y * mu_y
    sxy = _filter_valid(ref * rec, g) - mu_x * mu_y
    num = (2.0 * mu_x * mu_y + c1) * (2.0 * sxy + c2)
    den = (mu_x * mu_x + mu_y * mu_y + c1) * (sxx + syy + c2)
    smap = num / den
    return smap.reshape(-1, smap.shape[-1]).mean(axis=0)


def ssim(ref, rec, **kwargs):
    """Mean over channels of :func:`ssim_channels`."""
    return float(np.mean(ssim_channels(ref, rec, **kwargs)))


@dataclass
class QualityReport:
    rmse: float
    ssim: float
    per_channel_ssim: list = field(default_factory=list)
    config: dict = field(default_factory=dict)

    def to_dict(self):
        return asdict(self)


def quality_report(ref, rec, window=11, sigma=1.5, k1=0.01, k2=0.03):
    per_channel = ssim_channels(ref, rec, window=window, sigma=sigma, k1=k1, k2=k2)
    data_range = _default_range(_data(ref), k1)
    return QualityReport(
        rmse=rmse(ref, rec),
        ssim=float(np.mean(per_channel)),
        per_channel_ssim=[float(s) for s in per_channel],
        config={
            "window": window,
            "sigma": sigma,
            "k1": k1,
            "k2": k2,
            "data_range": data_range,
            "aggregation": "mean over channels of valid-window SSIM maps",
        },
    )
