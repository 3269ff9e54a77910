# satgate/cdcl.py

"""
A small conflict-driven clause-learning solver.

Two watched literals per clause, first-UIP learning, activity-based
branching with phase saving and Luby restarts. No clause deletion: the
instances built here stay in the low thousands of variables.
"""

import time
from collections import defaultdict
from typing import List, Optional, Sequence

RESTART_UNIT = 100
ACTIVITY_DECAY = 0.95


def luby(i: int) -> int:
    """i-th term (1-based) of the Luby sequence 1 1 2 1 1 2 4 ..."""
    k = 1
    while True:
        if i == (1 << k) - 1:
            return 1 << (k - 1)
        if (1 << (k - 1)) <= i < (1 << k) - 1:
            i = i - (1 << (k - 1)) + 1
            k = 1
            continue
        k += 1


class CdclSolver:
    def __init__(self, num_vars: int, clauses: Sequence[Sequence[int]],
                 conflict_budget: Optional[int] = None, time_budget: Optional[float] = None):
        self.num_vars = num_vars
        self.conflict_budget = conflict_budget
        self.time_budget = time_budget
        self.conflicts = 0

        self.value = [0] * (num_vars + 1)  # +1 true, -1 false, 0 free
        self.level = [0] * (num_vars + 1)
        self.reason: List[Optional[int]] = [None] * (num_vars + 1)
        self.activity = [0.0] * (num_vars + 1)
        self.phase = [False] * (num_vars + 1)
        self.seen = [False] * (num_vars + 1)
        self.var_inc = 1.0

        self.clauses: List[List[int]] = []
        self.watches = defaultdict(list)  # literal -> clauses watching it
        self.trail: List[int] = []
        self.trail_lim: List[int] = []
        self.qhead = 0
        self.ok = True

        for c in clauses:
            self._add_input(c)

    def _lit_value(self, lit: int) -> int:
        v = self.value[abs(lit)]
        return v if lit > 0 else -v

    def _enqueue(self, lit: int, reason: Optional[int]):
        v = abs(lit)
        self.value[v] = 1 if lit > 0 else -1
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(lit)

    def _add_input(self, lits):
        if not self.ok:
            return
        lits = set(lits)
        if any(-l in lits for l in lits):
            return
        c = sorted(lits, key=abs)
        if not c:
            self.ok = False
            return
        if len(c) == 1:
            val = self._lit_value(c[0])
            if val == -1:
                self.ok = False
            elif val == 0:
                self._enqueue(c[0], None)
            return
        self._attach(c)

    def _attach(self, c: List[int]) -> int:
        idx = len(self.clauses)
        self.clauses.append(c)
        self.watches[c[0]].append(idx)
        self.watches[c[1]].append(idx)
        return idx

    def _propagate(self) -> Optional[int]:
        """Unit propagation; returns a conflicting clause index or None."""
        while self.qhead < len(self.trail):
            false_lit = -self.trail[self.qhead]
            self.qhead += 1
            watching = self.watches[false_lit]
            kept = []
            conflict = None
            for pos, ci in enumerate(watching):
                c = self.clauses[ci]
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                if self._lit_value(c[0]) == 1:
                    kept.append(ci)
                    continue
                for j in range(2, len(c)):
                    if self._lit_value(c[j]) != -1:
                        c[1], c[j] = c[j], c[1]
                        self.watches[c[1]].append(ci)
                        break
                else:
                    kept.append(ci)
                    if self._lit_value(c[0]) == -1:
                        conflict = ci
                        kept.extend(watching[pos + 1:])
                        break
                    self._enqueue(c[0], ci)
            self.watches[false_lit] = kept
            if conflict is not None:
                return conflict
        return None

    def _bump(self, v: int):
        self.activity[v] += self.var_inc
        if self.activity[v] > 1e100:
            self.activity = [a * 1e-100 for a in self.activity]
            self.var_inc *= 1e-100

    def _analyze(self, conflict: int):
        """First-UIP learnt clause (asserting literal first) and its backjump level."""
        current = len(self.trail_lim)
        learnt = [0]
        counter = 0
        p = None
        index = len(self.trail) - 1
        ci = conflict
        while True:
            c = self.clauses[ci]
            for q in (c if p is None else c[1:]):
                v = abs(q)
                if not self.seen[v] and self.level[v] > 0:
                    self.seen[v] = True
                    self._bump(v)
                    if self.level[v] >= current:
                        counter += 1
                    else:
                        learnt.append(q)
            while not self.seen[abs(self.trail[index])]:
                index -= 1
            p = self.trail[index]
            index -= 1
            self.seen[abs(p)] = False
            counter -= 1
            if counter == 0:
                break
            ci = self.reason[abs(p)]
        learnt[0] = -p
        for q in learnt[1:]:
            self.seen[abs(q)] = False

        if len(learnt) == 1:
            return learnt, 0
        top = max(range(1, len(learnt)), key=lambda i: self.level[abs(learnt[i])])
        learnt[1], learnt[top] = learnt[top], learnt[1]
        return learnt, self.level[abs(learnt[1])]

    def _cancel_until(self, level: int):
        if len(self.trail_lim) <= level:
            return
        start = self.trail_lim[level]
        for lit in self.trail[start:]:
            v = abs(lit)
            self.phase[v] = lit > 0
            self.value[v] = 0
            self.reason[v] = None
        del self.trail[start:]
        del self.trail_lim[level:]
        self.qhead = len(self.trail)

    def _pick_branch(self) -> int:
        best, best_act = 0, -1.0
        for v in range(1, self.num_vars + 1):
            if self.value[v] == 0 and self.activity[v] > best_act:
                best, best_act = v, self.activity[v]
        return best

    def _out_of_budget(self, started: float) -> bool:
        if self.conflict_budget is not None and self.conflicts >= self.conflict_budget:
            return True
        return self.time_budget is not None and time.monotonic() - started > self.time_budget

    def solve(self) -> Optional[bool]:
        """True (SAT), False (UNSAT) or None when a budget ran out."""
        if not self.ok or self._propagate() is not None:
            return False
        started = time.monotonic()
        restarts = 1
        next_restart = luby(restarts) * RESTART_UNIT

        while True:
            conflict = self._propagate()
            if conflict is not None:
                self.conflicts += 1
                if not self.trail_lim:
                    return False
                learnt, back_level = self._analyze(conflict)
                self._cancel_until(back_level)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], None)
                else:
                    self._enqueue(learnt[0], self._attach(learnt))
                self.var_inc /= ACTIVITY_DECAY
                if self._out_of_budget(started):
                    return None
                if self.conflicts >= next_restart:
                    self._cancel_until(0)
                    restarts += 1
                    next_restart = self.conflicts + luby(restarts) * RESTART_UNIT
            else:
                v = self._pick_branch()
                if v == 0:
                    return True
                self.trail_lim.append(len(self.trail))
                self._enqueue(v if self.phase[v] else -v, None)

    def model(self) -> List[int]:
        return [v if self.value[v] == 1 else -v for v in range(1, self.num_vars + 1)]
