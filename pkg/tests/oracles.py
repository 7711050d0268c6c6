"""Slow reference implementations used to cross-check the fast ones."""

from collections import deque


def absolute_lengths_bfs(system):
    """Distance from the identity in the Cayley graph generated by all reflections."""
    refls = [system.reflection(t) for t in range(system.num_reflections)]
    dist = {system.identity: 0}
    queue = deque([system.identity])
    while queue:
        x = queue.popleft()
        for t in refls:
            y = x * t
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def first_subword(w, c):
    """Lexicographically first position sequence in ``c^infinity`` spelling ``w`` reducedly.

    Depth-first search over increasing positions; a prefix survives only when
    it is a reduced prefix of ``w`` (``l(u) + l(u^{-1} w) = l(w)``).
    """
    word = c.word
    n = len(word)
    target = w.length
    horizon = n * (target + 1)

    def search(u, start, letters, positions):
        if len(letters) == target:
            return positions if u == w else None
        for p in range(start, horizon):
            v = u.right_multiply(word[p % n])
            if v.length != len(letters) + 1:
                continue
            if v.length + (v.inverse * w).length != target:
                continue
            found = search(v, p + 1, letters + [word[p % n]], positions + [p])
            if found is not None:
                return found
        return None

    return search(w.system.identity, 0, [], [])
