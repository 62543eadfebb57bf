import math

from hypothesis import strategies as st

from exptower.words import FiniteWord, InfiniteWord
from exptower.xreal import MINUS, PLUS

signs = st.sampled_from([PLUS, MINUS])
sign_tuples = st.lists(signs, max_size=8).map(tuple)
finite_words = sign_tuples.map(FiniteWord)
infinite_words = st.builds(
    InfiniteWord, sign_tuples, st.lists(signs, min_size=1, max_size=4).map(tuple))
# Bases across the three regimes: (0, 1/e], (1/e, e], (e, 6].
bases = st.one_of(
    st.floats(0.05, 1 / math.e),
    st.floats(1 / math.e, math.e, exclude_min=True),
    st.floats(math.e, 6.0, exclude_min=True),
)
finite_reals = st.floats(-50, 50, allow_nan=False)
