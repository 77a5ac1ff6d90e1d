"""Elimination calculus for the 56 candidate adjacencies.

Three numerical rules eliminate most ordered pairs (i, j), i != j, and
force returns on the survivors; the remaining adjacencies are refined
into an exact list of surviving return profiles, each a multiset of
divisor classes hit by the returns of a hypothetical wedge.
"""

from itertools import combinations_with_replacement

from .curves import (
    DIVISOR_CLASSES, RESOLUTION_GRAPH_EDGES,
    intersection_matrix, table_multiplicities, per_branch_tangent_order,
)

ALL_CLASSES = tuple(range(1, 9))

#: Classes a return can land in.  Class 1 is excluded: its curve has
#: multiplicity 60, which alone exceeds every available budget.
RETURN_CLASSES = tuple(range(2, 9))

#: Test curves: 0 is a generic line, 2..8 the tangent lines L_k.
TEST_LINES = (0, 2, 3, 4, 5, 6, 7, 8)


def all_pairs():
    return [(i, j) for i in ALL_CLASSES for j in ALL_CLASSES if i != j]


def _mult(k):
    return table_multiplicities()[k]["multiplicity"]


def rule1():
    """Multiplicity comparison: (i, j) is impossible if mult_i < mult_j."""
    out = {}
    for (i, j) in all_pairs():
        out[(i, j)] = {
            "mult_i": _mult(i),
            "mult_j": _mult(j),
            "eliminated": _mult(i) < _mult(j),
        }
    return out


def rule2():
    """Return-forcing on the rule-1 survivors.

    If the branch counts differ, a wedge without returns is impossible
    (the normalized family has a constant number of boundary circles).
    If they agree, a wedge without returns gives a per-component
    inequality between the contacts with the shared tangent line, which
    fails.  Either way, returns are forced on every survivor.
    """
    tm = table_multiplicities()
    out = {}
    for (i, j), r1 in rule1().items():
        if r1["eliminated"]:
            continue
        bi, bj = tm[i]["branches"], tm[j]["branches"]
        if bi != bj:
            out[(i, j)] = {"reason": "branch-count", "b_i": bi, "b_j": bj,
                           "returns_forced": True}
        else:
            ci, cj = per_branch_tangent_order(i), per_branch_tangent_order(j)
            if ci >= cj:
                raise ArithmeticError(
                    "per-branch contact comparison fails to force returns for (%d, %d)" % (i, j))
            out[(i, j)] = {"reason": "per-branch-contact", "contact_i": ci,
                           "contact_j": cj, "returns_forced": True}
    return out


def rule3():
    """Minimal-return bound: any return contributes at least 12 to every
    intersection with the tangent line L_j, so (i, j) needs
    I_O(W_i, L_j) >= I_O(W_j, L_j) + 12."""
    imat = intersection_matrix()
    out = {}
    for (i, j) in rule2():
        lhs = imat[(i, j)] if j != 1 else imat[(i, 0)]
        rhs = imat[(j, j)] if j != 1 else imat[(j, 0)]
        out[(i, j)] = {"lhs": lhs, "bound": rhs + 12, "eliminated": lhs < rhs + 12}
    return out


def remaining_pairs():
    """The adjacencies surviving rules 1-3."""
    return sorted(p for p, r in rule3().items() if not r["eliminated"])


def profile_admissible(i, classes):
    """Do all test lines allow W_i to degenerate onto the union of orbit
    curves of the given classes (target plus returns)?

    classes is a multiset (iterable) of divisor classes.
    """
    imat = intersection_matrix()
    for c in TEST_LINES:
        lhs = imat[(i, c)]
        rhs = sum(imat[(k, c)] for k in classes)
        if lhs < rhs:
            return False
    return True


def _max_returns(i, j):
    budget = _mult(i) - _mult(j)
    return budget // min(_mult(k) for k in RETURN_CLASSES)


def transverse_profiles(i, j):
    """All surviving multisets of transverse returns for the pair (i, j)."""
    out = []
    for r in range(1, _max_returns(i, j) + 1):
        for ret in combinations_with_replacement(RETURN_CLASSES, r):
            if profile_admissible(i, (j,) + ret):
                out.append(ret)
    return out


def surviving_cases():
    """Unordered surviving cases (i; j + returns), deduplicated.

    A case is a pair (special class i, multiset of classes hit by the
    generic member), since the tests cannot tell the target class apart
    from a transverse return in the same class.
    """
    cases = set()
    for (i, j) in remaining_pairs():
        for ret in transverse_profiles(i, j):
            cases.add((i, tuple(sorted((j,) + ret))))
    return sorted(cases)


def nt_markers():
    """Non-transverse return possibilities that the tests cannot rule out.

    A non-transverse return at a smooth point of E_k is bounded below by
    two transverse copies of class k; one at a crossing of E_k1 and E_k2
    by a transverse copy of each.  A marker survives if its surrogate
    profile passes every test line.
    """
    out = []
    for (i, j) in remaining_pairs():
        budget = _mult(i) - _mult(j)
        for k in RETURN_CLASSES:
            for extra in _extra_returns(budget - 2 * _mult(k)):
                if profile_admissible(i, (j, k, k) + extra):
                    out.append({"pair": (i, j), "kind": "smooth", "at": (k,),
                                "extra_returns": extra,
                                "surrogate": tuple(sorted((j, k, k) + extra))})
        for edge in RESOLUTION_GRAPH_EDGES:
            k1, k2 = sorted(edge)
            if k1 == 1 or k2 == 1:
                continue
            for extra in _extra_returns(budget - _mult(k1) - _mult(k2)):
                if profile_admissible(i, (j, k1, k2) + extra):
                    out.append({"pair": (i, j), "kind": "crossing", "at": (k1, k2),
                                "extra_returns": extra,
                                "surrogate": tuple(sorted((j, k1, k2) + extra))})
    return out


def _extra_returns(budget):
    """Multisets of additional transverse returns within the budget."""
    out = [()]
    if budget >= min(_mult(k) for k in RETURN_CLASSES):
        for r in range(1, budget // min(_mult(k) for k in RETURN_CLASSES) + 1):
            for ret in combinations_with_replacement(RETURN_CLASSES, r):
                if sum(_mult(k) for k in ret) <= budget:
                    out.append(ret)
    return out


def elimination_report():
    """The complete elimination bookkeeping as a plain dict."""
    r1 = rule1()
    r2 = rule2()
    r3 = rule3()
    return {
        "pairs": len(all_pairs()),
        "rule1_eliminated": sorted(p for p, r in r1.items() if r["eliminated"]),
        "rule2_returns_forced": sorted(r2),
        "rule3_eliminated": sorted(p for p, r in r3.items() if r["eliminated"]),
        "remaining": remaining_pairs(),
        "cases": surviving_cases(),
        "nt_markers": nt_markers(),
    }
