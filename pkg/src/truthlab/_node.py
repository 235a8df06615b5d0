"""Hash-consed immutable nodes.

Every node class interns its instances: constructing a node whose class and
arguments match a live node returns that very object. Structural equality is
therefore identity, hashing is O(1), and shared subterms are stored once.
"""

from __future__ import annotations

import threading
import weakref

_table: weakref.WeakValueDictionary = weakref.WeakValueDictionary()
_lock = threading.Lock()


class Node:
    """Base class for interned syntax nodes.

    Subclasses set ``_fields`` and implement ``_normalize`` to validate the
    constructor arguments; ``_init_cache`` fills derived slots once, right
    after the node is first created.
    """

    __slots__ = ("_args", "__weakref__")
    _fields: tuple[str, ...] = ()

    def __new__(cls, *args):
        args = cls._normalize(*args)
        key = (cls, args)
        with _lock:
            node = _table.get(key)
            if node is None:
                node = object.__new__(cls)
                node._args = args
                node._init_cache()
                _table[key] = node
        return node

    @classmethod
    def _normalize(cls, *args):
        if len(args) != len(cls._fields):
            raise TypeError(f"{cls.__name__} takes {len(cls._fields)} argument(s), got {len(args)}")
        return args

    def _init_cache(self) -> None:
        pass

    @property
    def args(self) -> tuple:
        return self._args

    def children(self) -> tuple[Node, ...]:
        return tuple(a for a in self._args if isinstance(a, Node))

    def __reduce__(self):
        return (type(self), self._args)

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self

    def __setattr__(self, name, value):
        if name == "_args" or name.startswith("_c_"):
            object.__setattr__(self, name, value)
        else:
            raise AttributeError(f"{type(self).__name__} is immutable")

    def __repr__(self) -> str:
        return f"{type(self).__name__}({', '.join(map(repr, self._args))})"


def iter_dag(root: Node):
    """Yield every distinct node reachable from ``root`` in post-order."""
    seen: set[int] = set()
    stack: list[tuple[Node, bool]] = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            yield node
            continue
        if id(node) in seen:
            continue
        seen.add(id(node))
        stack.append((node, True))
        for child in reversed(node.children()):
            if id(child) not in seen:
                stack.append((child, False))


def dag_size(root: Node) -> int:
    """Number of distinct nodes reachable from ``root``."""
    return sum(1 for _ in iter_dag(root))


def tree_size(root: Node) -> int:
    """Number of nodes in the fully expanded tree (may be exponential in the DAG size)."""
    sizes: dict[int, int] = {}
    for node in iter_dag(root):
        sizes[id(node)] = 1 + sum(sizes[id(c)] for c in node.children())
    return sizes[id(root)]
