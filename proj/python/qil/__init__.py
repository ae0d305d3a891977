try:
    from ._qil import *  # noqa: F401,F403  (installed layout)
except ImportError:
    from _qil import *  # noqa: F401,F403  (build-tree layout: module on sys.path)
