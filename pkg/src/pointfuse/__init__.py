"""pointfuse: lift 2D image features onto 3D point clouds, fuse them into a
hierarchical point-segmentation network, and distill them into an image-free
backbone. Everything runs on synthetic scenes with brute-force oracles in the
test suite.
"""

__version__ = "0.1.0"

from .backend import BACKEND  # noqa: F401
