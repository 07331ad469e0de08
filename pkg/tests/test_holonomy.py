import cmath
import math

import numpy as np
import pytest

from structbundle.connections import Connection
from structbundle.forms import MatrixForm
from structbundle.functions import BaseSpace, ChartFunction
from structbundle.holonomy import (Loop, holonomy_defect, is_trivial_holonomy,
                                   parallel_transport)
from structbundle.scalars import TauScalar


def circle_connection(k):
    b = BaseSpace(0, 1)
    w = MatrixForm.scalar(b, ChartFunction.one(b).scale(
        TauScalar.rational(0, k)), (0,))
    return Connection(b, 1, w)


def test_integer_winding_is_trivial():
    for k in (-2, 0, 1, 3):
        assert is_trivial_holonomy(circle_connection(k))


def test_fractional_winding_is_detected():
    from fractions import Fraction
    assert not is_trivial_holonomy(circle_connection(Fraction(1, 2)))


def test_transport_matches_exponential():
    from fractions import Fraction
    conn = circle_connection(Fraction(1, 3))
    S = parallel_transport(conn, Loop(conn.base, 0), 2048)
    assert abs(S[0, 0] - cmath.exp(-2j * math.pi / 3)) < 1e-10


def test_loop_validation():
    b = BaseSpace(1, 1)
    with pytest.raises(ValueError):
        Loop(b, 1)
    with pytest.raises(ValueError):
        Loop(b, 0, (0.0,))


def test_chart_only_connection_has_no_loops():
    b = BaseSpace(2, 0)
    conn = Connection.flat(b, 2)
    assert holonomy_defect(conn) == 0.0


def test_defect_scale():
    from fractions import Fraction
    conn = circle_connection(Fraction(1, 2))
    # holonomy exp(-pi i) = -1, distance 2 from the identity
    assert abs(holonomy_defect(conn) - 2.0) < 1e-6


def test_transport_is_unitary_for_skew_connection():
    b = BaseSpace(0, 1)
    from structbundle.randgen import RandomGen
    gen = RandomGen(83)
    conn = gen.skew_hermitian_connection(b, 2)
    S = parallel_transport(conn, Loop(b, 0), 8192)
    assert np.max(np.abs(S @ S.conj().T - np.eye(2))) < 1e-7
