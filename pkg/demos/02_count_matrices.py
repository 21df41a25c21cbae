"""From raw selection events to the similarity weight matrix.

Each event contributes to two symmetric count matrices: C (how often two
designs appeared in the same panel) and S (how often they were grouped as
similar). Their elementwise ratio W = S/C is the similarity weight — the
fraction of co-showings that became co-selections — defined only where the
support mask says a pair was actually co-shown.

Run: python3 demos/02_count_matrices.py
"""

from __future__ import annotations

from datetime import datetime, timezone

import numpy as np

from similnet import SelectionEvent, accumulate, normalize, pair_hierarchy

NOW = datetime(2024, 1, 1, tzinfo=timezone.utc)


def event(iteration: int, shown: list[int], selected: list[int]) -> SelectionEvent:
    return SelectionEvent(
        session_id="demo",
        iteration_index=iteration,
        shown=tuple(shown),
        selected=tuple(selected),
        recorded_at=NOW,
    )


def main() -> None:
    # Five designs, four hand-authored iterations. Designs 0 and 1 are
    # grouped every time they appear together; 3 and 4 are never grouped.
    events = [
        event(1, [0, 1, 2], [0, 1]),
        event(2, [0, 1, 3], [0, 1]),
        event(3, [1, 2, 4], [1, 2]),
        event(4, [0, 3, 4], []),
    ]
    c, s = accumulate(events, n=5)
    norm = normalize(c, s)

    with np.printoptions(precision=3, suppress=True):
        print("co-occurrence C (panels showing i and j together):")
        print(c.values)
        print("\nco-selection S (selections grouping i and j):")
        print(s.values)
        print("\nweights W = S/C where supported:")
        print(norm.weights)
        print("\nsupport mask (False = never co-shown, ratio undefined):")
        print(norm.support_mask.astype(int))

    print("\nnotes:")
    print(f"  W[0,1] = {norm[0, 1]:.3f}  (grouped both times they met)")
    print(f"  W[3,4] = {norm[3, 4]:.3f}  (met once, never grouped: measured dissimilar)")
    print(f"  support[0,4] = {bool(norm.support_mask[0, 4])}  (co-shown once, in iteration 4)")

    print("\npair hierarchy (strongest affinities first):")
    for rank in pair_hierarchy(norm, c):
        i, j = rank.pair
        print(f"  {i}-{j}: weight {rank.weight:.3f} over {rank.support} co-showings")


if __name__ == "__main__":
    main()
