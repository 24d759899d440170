"""CIE L* lightness of 8-bit sRGB colors.

Conversion chain: sRGB decoding (piecewise gamma, threshold 0.04045) -> linear RGB ->
relative luminance Y under the D65 white point -> ``L* = 116 f(Y / Yn) - 16``.
"""

import numpy as np

# Y row of the sRGB -> XYZ (D65) matrix; sums to 1 so white maps to L* = 100.
_Y_WEIGHTS = (0.2126, 0.7152, 0.0722)
_DELTA = 6.0 / 29.0


def srgb_to_linear(channel):
    """Decode 8-bit sRGB channel values (scalar or array) to linear [0, 1]."""
    c = np.asarray(channel, dtype=float) / 255.0
    return np.where(c <= 0.04045, c / 12.92, ((c + 0.055) / 1.055) ** 2.4)


def lightness_array(rgb) -> np.ndarray:
    """L* in [0, 100] for an ``(..., 3)`` array of 8-bit RGB values."""
    rgb = np.asarray(rgb)
    lin = srgb_to_linear(rgb)
    y = _Y_WEIGHTS[0] * lin[..., 0] + _Y_WEIGHTS[1] * lin[..., 1] + _Y_WEIGHTS[2] * lin[..., 2]
    f = np.where(y > _DELTA**3, np.cbrt(y), y / (3.0 * _DELTA**2) + 4.0 / 29.0)
    return np.clip(116.0 * f - 16.0, 0.0, 100.0)


def rgb_to_lightness(r: int, g: int, b: int) -> float:
    """L* in [0, 100] of a single 8-bit RGB color."""
    return float(lightness_array(np.array([[r, g, b]]))[0])
