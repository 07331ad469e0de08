import pytest

from structbundle.forms import MatrixForm
from structbundle.functions import BaseSpace, ChartFunction
from structbundle.randgen import RandomGen
from structbundle.struct_khat import (KHatElement, StructuredBundle, ch_khat,
                                      cs_hat, delta, i_map, khat_add,
                                      khat_sub, khat_tensor, realize_even_form,
                                      realize_odd_form, struct_sum)


def test_cs_hat_of_flat_is_zero():
    v = StructuredBundle.trivial_flat(BaseSpace(2, 1), 3)
    assert cs_hat(v).rep.is_zero()


def test_realize_simple_one_form():
    b = BaseSpace(2, 0)
    rho = MatrixForm.scalar(b, ChartFunction.coord(b, 1), (0,))
    v = realize_odd_form(rho)
    assert v.rank >= 1
    assert cs_hat(v).rep == rho.normal_form()


def test_realize_degree_three():
    b = BaseSpace(4, 0)
    # non-closed degree-3 target: x4 dx1^dx2^dx3
    rho = MatrixForm.scalar(b, ChartFunction.coord(b, 3), (0, 1, 2))
    v = realize_odd_form(rho)
    assert cs_hat(v).rep == rho.normal_form()


def test_realize_rejects_even_and_torus():
    b = BaseSpace(2, 0)
    even = MatrixForm.scalar(b, ChartFunction.one(b), (0, 1))
    with pytest.raises(ValueError):
        realize_odd_form(even)
    bt = BaseSpace(1, 1)
    w = MatrixForm.scalar(bt, ChartFunction.one(bt), (0,))
    with pytest.raises(ValueError):
        realize_odd_form(w)


def test_khat_group_operations():
    b = BaseSpace(1, 0)
    gen = RandomGen(61)
    v = StructuredBundle(gen.connection(b, 2))
    w = StructuredBundle(gen.connection(b, 1))
    mu = KHatElement.of(v)
    nu = khat_sub(KHatElement.of(w), KHatElement.of(v))
    assert ch_khat(khat_add(mu, nu)) == ch_khat(mu) + ch_khat(nu)
    assert ch_khat(khat_sub(mu, nu)) == ch_khat(mu) - ch_khat(nu)
    # adding v - v leaves the character unchanged
    cancel = khat_sub(KHatElement.of(v), KHatElement.of(v))
    assert ch_khat(khat_add(mu, cancel)) == ch_khat(mu)


def test_khat_tensor_pairs_formula():
    b = BaseSpace(1, 1)
    gen = RandomGen(67)
    v = StructuredBundle(gen.connection(b, 1))
    w = StructuredBundle(gen.connection(b, 1))
    f1 = StructuredBundle.trivial_flat(b, 1)
    mu = KHatElement((v,), (f1,))
    nu = KHatElement((w,), (f1,))
    prod = khat_tensor(mu, nu)
    assert ch_khat(prod) == ch_khat(mu).wedge(ch_khat(nu))


def test_delta_forgets_connections():
    b = BaseSpace(1, 0)
    gen = RandomGen(71)
    v = StructuredBundle(gen.connection(b, 2))
    flat = StructuredBundle.trivial_flat(b, 2)
    assert delta(KHatElement((v,), (flat,))).is_zero()


def test_i_map_lands_in_delta_kernel():
    b = BaseSpace(3, 0)
    gen = RandomGen(73)
    theta = gen.odd_target(b, top_degree=3)
    mu = i_map(theta)
    assert delta(mu).is_zero()
    assert ch_khat(mu) == theta.d()


def test_realize_even_form_checks_decomposition():
    b = BaseSpace(2, 0)
    gen = RandomGen(79)
    v = StructuredBundle(gen.connection(b, 1))
    theta = MatrixForm.scalar(b, ChartFunction.coord(b, 0), (1,))
    mu = v.connection.chern_character() + theta.d()
    el = realize_even_form(mu, v, theta)
    assert ch_khat(el) == mu
    with pytest.raises(ValueError):
        realize_even_form(mu + mu, v, theta)


def test_struct_sum_keeps_frame():
    b = BaseSpace(1, 0)
    v = StructuredBundle.trivial_flat(b, 1)
    w = StructuredBundle.trivial_flat(b, 2)
    s = struct_sum(v, w)
    assert s.rank == 3 and s.descriptor == ("trivial-frame",)
