"""
tools.maxfuncs.covering

Greedy Vitali-type selection over a finite list of balls.

    greedy_5B() --> disjoint subfamily, largest radii first
    verify_covering() --> brute-force check of disjointness, the radius condition and the 5B cover
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..misc import make_record


@dataclass(frozen=True)
class CoveringSelection:
    """
    :param selected: indices into the input ball list, in selection order.
    :type selected: tuple of int

    :param expansion_factor: dilation under which the selection covers the input.
    :type expansion_factor: int
    """

    selected: tuple
    expansion_factor: int = 5

    def to_dict(self) -> dict:
        return {"selected": list(self.selected), "expansion_factor": self.expansion_factor}


def _members(space, balls, factor=1.0) -> np.ndarray:
    centers = np.array([space.index_of(c) for c, _ in balls], dtype=int)
    radii = np.array([float(r) for _, r in balls])
    return space.dist[centers] <= factor * radii[:, None]


def greedy_5B(space, balls) -> CoveringSelection:
    """
    Visit balls by decreasing radius (ties by input index) and keep each one disjoint from
    everything kept so far. Balls are (center_id, radius) pairs; disjointness is over the points.
    """
    if not balls:
        return CoveringSelection(())
    members = _members(space, balls)
    order = sorted(range(len(balls)), key=lambda i: (-float(balls[i][1]), i))
    taken = np.zeros(space.n_points, dtype=bool)
    selected = []
    for i in order:
        if not np.any(members[i] & taken):
            selected.append(i)
            taken |= members[i]
    return CoveringSelection(tuple(selected))


def verify_covering(space, balls, selection) -> dict:
    members = _members(space, balls) if balls else np.zeros((0, space.n_points), dtype=bool)
    radii = np.array([float(r) for _, r in balls])
    chosen = list(selection.selected)

    disjoint = all(
        not np.any(members[a] & members[b]) for k, a in enumerate(chosen) for b in chosen[k + 1 :]
    )

    radius_ok = True
    for i in range(len(balls)):
        if not any(np.any(members[i] & members[j]) and radii[j] >= radii[i] / 2.0 for j in chosen):
            radius_ok = False
            break

    union = members.any(axis=0)
    if chosen:
        expanded = _members(space, [balls[j] for j in chosen], factor=float(selection.expansion_factor)).any(axis=0)
    else:
        expanded = np.zeros(space.n_points, dtype=bool)
    covered = bool(np.all(expanded[union]))

    return make_record(
        "covering",
        inputs={"balls": len(balls)},
        values={"selected": chosen},
        flags={"disjoint": disjoint, "radius_condition": radius_ok, "covered": covered},
    )
