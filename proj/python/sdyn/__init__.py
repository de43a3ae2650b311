"""Siegel disks, bubbles, multi-angles, and the cubic parameter map.

The package re-exports the native extension: rotation numbers and multi-angle
combinatorics, the polynomial families, Siegel-disk models, bubble trees and
rays, the correspondence and parameter map, and the deterministic renderers.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__, version_string  # noqa: F401
