"""Successive and amendment parliamentary voting procedures."""

try:
    from ._seqvote import *  # noqa: F401,F403  (installed package layout)
except ImportError:
    from _seqvote import *  # noqa: F401,F403  (in-tree build: module on PYTHONPATH)
