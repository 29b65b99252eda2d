"""Synthetic abstract-field place data shared by the criteria and acceptance tests."""

import random

from hypothesis import strategies as st

from oddbrauer.arith import primes_up_to


def splittings(n, ramified):
    """Every way a prime can decompose in a degree-n field, as sorted lists of (e, f)."""
    out = []

    def rec(rest, acc):
        if rest == 0:
            out.append(list(acc))
            return
        for e in range(1, rest + 1):
            if e > 1 and not ramified:
                continue
            for f in range(1, rest // e + 1):
                if acc and (e, f) < acc[-1]:
                    continue
                rec(rest - e * f, acc + [(e, f)])

    rec(n, [])
    return out


def build_doc(choose, n, range_max=200, unit_vals=True, N=40):
    """Places above every odd p <= range_max; ramification only at p >= 4n + 2.

    `choose(seq)` picks one element; with unit_vals=False the unramified places
    get arbitrary valuations.
    """
    places = []
    for p in primes_up_to(range_max):
        if p == 2:
            continue
        for e, f in choose(splittings(n, ramified=p >= 4 * n + 2)):
            vals = [0, 0, 0, 0] if unit_vals or e > 1 else [choose(range(-3, 4)) for _ in range(4)]
            places.append({"p": p, "e": e, "f": f, "vals": vals})
    return {"field": {"abstract": {"degree": n}}, "N": N, "places": places}


@st.composite
def abstract_spec_docs(draw, max_degree=4, range_max=200, unit_vals=True):
    n = draw(st.integers(1, max_degree))
    return build_doc(lambda seq: draw(st.sampled_from(list(seq))), n, range_max, unit_vals)


def random_docs(count, seed=0, max_degree=4, range_max=200):
    rng = random.Random(seed)
    for _ in range(count):
        yield build_doc(lambda seq: rng.choice(list(seq)), rng.randint(1, max_degree), range_max)
