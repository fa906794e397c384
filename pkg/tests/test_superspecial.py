import random

from kummer.field import Field
from kummer import fast_kummer as fk
from kummer import isogeny as iso
from kummer.superspecial import (
    find_superspecial_prime,
    random_superspecial_surface,
    sample_kernel_pair,
)


def test_prime_finder():
    for n in (5, 7, 11):
        p = find_superspecial_prime(28, n)
        assert (p + 1) % (16 * n) == 0
        assert p % 4 == 3
        assert p.bit_length() >= 28


def test_certified_surface_and_exponent():
    p = find_superspecial_prime(28, 5)
    K = Field(p, 2)
    rng = random.Random(0)
    params = random_superspecial_surface(K, rng)
    P = fk.sample_point(params, rng)
    assert fk.projective_eq(fk.scalar_mul(params, p + 1, P), params.identity_point())


def test_kernel_pair_yields_isogeny():
    p = find_superspecial_prime(28, 5)
    K = Field(p, 2)
    rng = random.Random(1)
    params = random_superspecial_surface(K, rng)
    kernel = sample_kernel_pair(params, 5, rng)
    result = iso.get_isogeny(params, kernel)
    ident = result.image.identity_point()
    for m in kernel.multiples_R + kernel.multiples_S:
        assert fk.projective_eq(result.evaluate(m), ident)
