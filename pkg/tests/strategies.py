from fractions import Fraction

from hypothesis import strategies as st

from l2dim.linalg import INTEGERS, LAURENT_UNI, RATIONALS, LaurentPoly, RingMatrix, laurent_multi

small_ints = st.integers(-10, 10)


@st.composite
def laurent_polys(draw, nvars=1, max_terms=3, exp_range=2, coef_bound=10):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        e = tuple(draw(st.integers(-exp_range, exp_range)) for _ in range(nvars))
        terms[e] = terms.get(e, 0) + draw(st.integers(-coef_bound, coef_bound))
    return LaurentPoly(nvars, terms)


def entries_for(ring, **kw):
    if ring == INTEGERS:
        return small_ints
    if ring == RATIONALS:
        return st.builds(Fraction, small_ints, st.integers(1, 5))
    return laurent_polys(nvars=ring.nvars, **kw)


@st.composite
def matrices(draw, ring=INTEGERS, max_rows=6, max_cols=6, min_rows=0, min_cols=1, **kw):
    m = draw(st.integers(min_rows, max_rows))
    n = draw(st.integers(min_cols, max_cols))
    ent = entries_for(ring, **kw)
    rows = [[draw(ent) for _ in range(n)] for _ in range(m)]
    return RingMatrix.from_rows(ring, rows, cols=n)


pid_rings = st.sampled_from([INTEGERS, RATIONALS, LAURENT_UNI])
all_rings = st.sampled_from([INTEGERS, RATIONALS, LAURENT_UNI, laurent_multi(2)])
