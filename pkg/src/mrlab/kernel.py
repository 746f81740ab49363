"""Subgroups of R^t in echelon form, used to solve alpha * beta = 0 for beta.

For fixed alpha the map beta -> alpha*beta is additive, so its kernel is a
subgroup of the coefficient space.  An :class:`Echelon` stores a subgroup H of
A^t (A = the additive group of the ring) as a chain of levels: level ``t``
holds, for every value ``p`` in the projection of
``{h in H : h_0 = ... = h_{t-1} = 0}`` onto coordinate ``t``, one
representative with that value.  Every element of H is then a unique sum of
one representative per level, which gives exact sizes, membership tests and
lexicographic enumeration without touching the whole space.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Optional, Sequence

from .rings import FiniteRing, additive_closure

Vector = tuple[int, ...]


class Echelon:
    def __init__(self, ring: FiniteRing, length: int):
        self.ring = ring
        self.length = length
        z = ring.zero
        self.zero_vec: Vector = (z,) * length
        self.levels: list[dict[int, Vector]] = [{z: self.zero_vec} for _ in range(length)]

    def vadd(self, x: Vector, y: Vector) -> Vector:
        add = self.ring.add
        return tuple(add[a][b] for a, b in zip(x, y))

    def vsub(self, x: Vector, y: Vector) -> Vector:
        add, neg = self.ring.add, self.ring.neg
        return tuple(add[a][neg[b]] for a, b in zip(x, y))

    def insert(self, vec: Vector) -> None:
        z = self.ring.zero
        add = self.ring.add
        pending = [vec]
        while pending:
            v = pending.pop()
            for t in range(self.length):
                c = v[t]
                if c == z:
                    continue
                level = self.levels[t]
                rep = level.get(c)
                if rep is not None:
                    v = self.vsub(v, rep)
                    continue
                # Extend level t by <v>: new values p + j*c for 0 < j < m,
                # where m is the least multiple with m*c already present.
                old = dict(level)
                multiple = v
                while True:
                    for p, r in old.items():
                        level[add[p][multiple[t]]] = self.vadd(r, multiple)
                    multiple = self.vadd(multiple, v)
                    if multiple[t] in old:
                        break
                residual = self.vsub(multiple, old[multiple[t]])
                pending.append(residual)
                break

    def order(self) -> int:
        out = 1
        for level in self.levels:
            out *= len(level)
        return out

    def contains(self, vec: Vector) -> bool:
        z = self.ring.zero
        v = vec
        for t in range(self.length):
            if v[t] == z:
                continue
            rep = self.levels[t].get(v[t])
            if rep is None:
                return False
            v = self.vsub(v, rep)
        return all(c == z for c in v)

    def tail(self, start: int) -> "Echelon":
        """The subgroup of elements vanishing on coordinates < start, restricted to the rest."""
        out = Echelon(self.ring, self.length - start)
        out.levels = [{p: r[start:] for p, r in level.items()} for level in self.levels[start:]]
        return out

    # lexicographic traversal ----------------------------------------------

    def _options(self, cur: Vector, t: int) -> list[tuple[int, Vector]]:
        add = self.ring.add
        return sorted(self.levels[t].items(), key=lambda kv: add[cur[t]][kv[0]])

    def iter_lex(self) -> Iterator[Vector]:
        """All elements in lexicographic order of their index tuples."""

        def rec(t: int, cur: Vector) -> Iterator[Vector]:
            if t == self.length:
                yield cur
                return
            for _, rep in self._options(cur, t):
                yield from rec(t + 1, self.vadd(cur, rep))

        return rec(0, self.zero_vec)

    def projections(self) -> list[list[frozenset[int]]]:
        """proj[t][s] = projection onto coordinate s of the elements vanishing before t."""
        n = self.length
        proj: list[list[frozenset[int]]] = [[frozenset()] * n for _ in range(n + 1)]
        for s in range(n):
            gens: list[int] = []
            for t in range(s, -1, -1):
                gens.extend(r[s] for r in self.levels[t].values())
                proj[t][s] = additive_closure(self.ring, gens)
        return proj

    def first_hitting(self, bad: Iterable[int]) -> Optional[Vector]:
        """Lex-first element with at least one coordinate in ``bad``, or None."""
        bad = frozenset(bad)
        if not bad or self.length == 0:
            return None
        add = self.ring.add
        proj = self.projections()

        def feasible(cur: Vector, t: int) -> bool:
            for s in range(t, self.length):
                base = cur[s]
                if any(add[base][q] in bad for q in proj[t][s]):
                    return True
            return False

        cur = self.zero_vec
        if not feasible(cur, 0):
            return None
        hit = False
        for t in range(self.length):
            for _, rep in self._options(cur, t):
                cand = self.vadd(cur, rep)
                cand_hit = hit or cand[t] in bad
                if cand_hit or feasible(cand, t + 1):
                    cur, hit = cand, cand_hit
                    break
            else:  # pragma: no cover - feasibility is exact
                raise AssertionError("echelon traversal lost a feasible branch")
        return cur


def subgroup_from_generators(ring: FiniteRing, length: int, gens: Sequence[Vector]) -> Echelon:
    ech = Echelon(ring, length)
    for g in gens:
        ech.insert(tuple(g))
    return ech
