"""Trail-based backtracking kernel: reversible state, sparse-set domains, DFS.

State restoration uses an undo log (the trail).  Reversible objects record
their previous value on first write per search level, and restoring a level
rewinds exactly the locations written since the matching push.  Domains are
sparse sets whose live region is delimited by a reversible size: removal is
an O(1) swap behind the live region, and restoring the size recovers the
previous domain as a set with no per-value bookkeeping.

Propagators signal failure through their return value, never by raising;
an empty domain is reported as a failed removal, not silently produced.
Everything here is single-threaded.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

__all__ = [
    "Trail",
    "TrailUnderflow",
    "ReversibleInt",
    "FDVariable",
    "Propagator",
    "SearchEngine",
]


class TrailUnderflow(Exception):
    """restore_level() was called with no open level."""


class Trail:
    """Undo log with level marks.

    Writes below an open level append (location, previous value) entries;
    ``restore_level`` pops the entries above the matching mark in reverse
    order.  A location is saved at most once per level: each slot carries a
    stamp compared against a counter that changes on every push and restore.
    Writes made while no level is open are permanent.
    """

    def __init__(self) -> None:
        self._entries: list = []
        self._marks: list[int] = []
        self._magic = 1
        #: bumped by every domain mutation; lets the search detect fix-points
        self.revision = 0

    @property
    def depth(self) -> int:
        """Number of currently open levels."""
        return len(self._marks)

    @property
    def entry_count(self) -> int:
        return len(self._entries)

    def level_mark(self, level: int) -> int:
        """Entry count recorded when `level` was pushed."""
        return self._marks[level]

    def push_level(self) -> int:
        """Open a new level and return its id (0 for the first push)."""
        self._marks.append(len(self._entries))
        self._magic += 1
        return len(self._marks) - 1

    def restore_level(self) -> None:
        """Undo every write made since the most recent push, newest first."""
        if not self._marks:
            raise TrailUnderflow("no open level to restore")
        mark = self._marks.pop()
        entries = self._entries
        for i in range(len(entries) - 1, mark - 1, -1):
            slot, value = entries[i]
            slot._value = value
        del entries[mark:]
        self._magic += 1

    def save(self, slot) -> None:
        """Record `slot`'s current value unless already saved at this level."""
        if self._marks and slot._stamp != self._magic:
            slot._stamp = self._magic
            self._entries.append((slot, slot._value))


class ReversibleInt:
    """Integer restored to its previous value on backtrack."""

    __slots__ = ("_trail", "_value", "_stamp")

    def __init__(self, trail: Trail, value: int = 0) -> None:
        self._trail = trail
        self._value = value
        self._stamp = 0

    @property
    def value(self) -> int:
        return self._value

    def set(self, value: int) -> None:
        if value != self._value:
            self._trail.save(self)
            self._value = value

    def __repr__(self) -> str:
        return f"ReversibleInt({self._value})"


class FDVariable:
    """Finite-domain variable over small non-negative integers.

    The domain is ``_values[:size]``; ``_index`` maps a value to its slot.
    Removal swaps the value to the back of the live region and shrinks the
    reversible size, so a later restore resurrects removed values (the live
    region is a permutation, only its extent is trailed).  The domain never
    becomes empty: a removal or assignment that would wipe it out leaves the
    domain untouched and returns False.
    """

    __slots__ = ("_trail", "_values", "_index", "_size")

    def __init__(self, trail: Trail, values: Iterable[int]) -> None:
        vals = sorted(set(values))
        if not vals or vals[0] < 0:
            raise ValueError("domain must be a non-empty set of ints >= 0")
        self._trail = trail
        self._values = vals
        self._index = [-1] * (vals[-1] + 1)
        for slot, a in enumerate(vals):
            self._index[a] = slot
        self._size = ReversibleInt(trail, len(vals))

    @property
    def size(self) -> int:
        return self._size.value

    def is_bound(self) -> bool:
        return self._size.value == 1

    def value(self) -> int:
        """The assigned value; only meaningful once bound."""
        if self._size.value != 1:
            raise ValueError("variable is not bound")
        return self._values[0]

    def contains(self, a: int) -> bool:
        if a < 0 or a >= len(self._index):
            return False
        slot = self._index[a]
        return 0 <= slot < self._size.value

    def _swap(self, i: int, j: int) -> None:
        vals, index = self._values, self._index
        vi, vj = vals[i], vals[j]
        vals[i], vals[j] = vj, vi
        index[vi], index[vj] = j, i

    def remove(self, a: int) -> bool:
        """Drop `a` from the domain; False when that would empty it."""
        if not self.contains(a):
            return True
        n = self._size.value
        if n == 1:
            return False
        self._swap(self._index[a], n - 1)
        self._size.set(n - 1)
        self._trail.revision += 1
        return True

    def assign(self, a: int) -> bool:
        """Reduce the domain to {a}; False when `a` is not available."""
        if not self.contains(a):
            return False
        if self._size.value == 1:
            return True
        self._swap(self._index[a], 0)
        self._size.set(1)
        self._trail.revision += 1
        return True

    def sorted_values(self) -> list[int]:
        """Current domain in ascending order (a fresh list)."""
        return sorted(self._values[: self._size.value])

    def branch_values(self) -> list[int]:
        """Values in branching order: ascending, with 0 tried last."""
        vals = self.sorted_values()
        if vals and vals[0] == 0:
            vals.append(vals.pop(0))
        return vals

    def __repr__(self) -> str:
        return f"FDVariable({self.sorted_values()!r})"


class Propagator:
    """Base class for constraint propagators.

    ``propagate(depth)`` is called with the index of the variable just bound
    by the search (-1 for the initial fix-point at the root).  All variables
    at or below `depth` are bound.  Implementations must be idempotent under
    repeated calls at the same depth and report failure by returning False.
    """

    def propagate(self, depth: int) -> bool:
        raise NotImplementedError


class _Abort(Exception):
    """Internal: unwinds the search when the node hook requests a stop."""


class SearchEngine:
    """Depth-first enumeration of all solutions with fix-point propagation.

    Variables are branched strictly left to right; values are tried in
    ascending order with 0 (the pattern terminator) last.  After each
    assignment the propagators run until no domain changes.  Solutions are
    complete assignments, delivered to the sink as a list of values.  The
    whole search runs inside one trail level, so all state (domains and any
    reversible propagator state) is exactly restored afterwards, whether the
    search finishes or is aborted by the node hook.
    """

    def __init__(
        self,
        trail: Trail,
        variables: Sequence[FDVariable],
        propagators: Sequence[Propagator],
        solution_sink: Callable[[list[int]], None] | None = None,
    ) -> None:
        self._trail = trail
        self._vars = list(variables)
        self._propagators = list(propagators)
        self._sink = solution_sink
        #: optional per-node callback; returning False aborts the search
        self.node_hook: Callable[[], bool] | None = None
        self.nodes = 0
        self.failures = 0
        self.solutions = 0
        self.aborted = False

    def solve_all(self) -> int:
        """Enumerate every solution; returns the solution count.

        Running twice on the same engine yields the same solutions in the
        same order: the search leaves no residue.
        """
        self.nodes = self.failures = self.solutions = 0
        self.aborted = False
        trail = self._trail
        base_depth = trail.depth
        trail.push_level()
        try:
            if self._fixpoint(-1):
                self._search(0)
        except _Abort:
            self.aborted = True
        finally:
            # an abort can unwind past open node levels: pop them all
            while trail.depth > base_depth:
                trail.restore_level()
        return self.solutions

    def _fixpoint(self, depth: int) -> bool:
        trail = self._trail
        propagators = self._propagators
        while True:
            before = trail.revision
            for prop in propagators:
                if not prop.propagate(depth):
                    return False
            if trail.revision == before:
                return True

    def _search(self, depth: int) -> None:
        variables = self._vars
        last = len(variables) - 1
        if depth > last or (
            variables[depth].is_bound()
            and variables[depth].value() == 0
            and variables[last].is_bound()
        ):
            # bound to 0 with the tail filled in: the pattern is complete
            self._emit()
            return
        var = variables[depth]
        trail = self._trail
        hook = self.node_hook
        for a in var.branch_values():
            self.nodes += 1
            if hook is not None and not hook():
                raise _Abort
            trail.push_level()
            if var.assign(a) and self._fixpoint(depth):
                self._search(depth + 1)
            else:
                self.failures += 1
            trail.restore_level()

    def _emit(self) -> None:
        self.solutions += 1
        if self._sink is not None:
            self._sink([v.value() for v in self._vars])
