import random
import tempfile
from contextlib import contextmanager
from fractions import Fraction

from skcf.state import make_state

GHZ = '|011> + |100> + |111>'
W = '|001> + |100> + |111>'


@contextmanager
def temporary_file(content, suffix='.txt'):
    # type: (str, str) -> str
    """Context manager that creates a temporary file with specified content
    and yields its name. Once the context is exited the file is deleted.
    """
    with tempfile.NamedTemporaryFile(mode='w', suffix=suffix) as file:
        file.write(content)
        file.flush()
        yield file.name


def random_fraction(rng, bound=5):
    # type: (random.Random, int) -> Fraction
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_exact_state(rng, m, n, density=0.7):
    """A random 2 x m x n state with small rational amplitudes
    """
    amps = [((i, j, k), random_fraction(rng))
            for i in range(2) for j in range(m) for k in range(n) if rng.random() < density]
    return make_state((2, m, n), amps)
