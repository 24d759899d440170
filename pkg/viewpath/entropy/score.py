"""Viewpoint quality scores built from depth and lightness entropy."""

from enum import Enum

from viewpath.entropy.histogram import depth_histogram, lightness_histogram, shannon

MAX_BITS = 8.0


class EntropySource(str, Enum):
    """What a viewpoint is scored on."""

    DEPTH = "depth"
    LIGHTNESS = "lightness"
    DEPTH_AND_LIGHTNESS = "both"


def viewpoint_score(fb, source: EntropySource) -> float:
    """Score a framebuffer.

    Depth and Lightness return entropy in bits (0..8). DepthAndLightness returns the
    mean of both entropies normalized by the 8-bit maximum, in [0, 1].
    """
    source = EntropySource(source)
    if source is EntropySource.DEPTH:
        return shannon(depth_histogram(fb))
    if source is EntropySource.LIGHTNESS:
        return shannon(lightness_histogram(fb))
    h_d = shannon(depth_histogram(fb))
    h_l = shannon(lightness_histogram(fb))
    return (h_d / MAX_BITS + h_l / MAX_BITS) / 2.0
