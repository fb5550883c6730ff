"""Brute-force reference implementations, deliberately naive."""


def collatz(n):
    return n // 2 if n % 2 == 0 else 3 * n + 1


def branching(n):
    return n % 18 in (4, 16)


def upward_by_doubling(n):
    m = 2 * n
    while not branching(m):
        m *= 2
    return m


def rightward_by_doubling(n):
    assert (n - 1) % 3 == 0
    m = 2 * ((n - 1) // 3)
    while not branching(m):
        m *= 2
    return m


def root_path_by_trajectory(n, limit=10**6):
    """Collect the branching numbers on the forward trajectory down to 4."""
    hops = [n]
    steps = 0
    while n != 4:
        n = collatz(n)
        steps += 1
        assert steps < limit
        if branching(n):
            hops.append(n)
    letters = []
    for child, parent in zip(hops, hops[1:]):
        letters.append("U" if upward_by_doubling(parent) == child else "R")
        assert letters[-1] == "U" or rightward_by_doubling(parent) == child
    return "".join(reversed(letters))


def residues_hit(f, members, modulus):
    return sorted({f(n) % modulus for n in members})


def branching_upto(limit):
    return [n for n in range(1, limit + 1) if branching(n)]
