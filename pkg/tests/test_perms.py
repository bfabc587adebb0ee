import random
from math import factorial

import pytest

import noetherlab.catalog as catalog
from noetherlab.perms import (CycleParseError, PermGroup, Permutation,
                              alternating_group, cyclic_group, direct_product,
                              parse_cycles, parse_group_file, symmetric_group,
                              wreath_product)


def test_parse_examples():
    sigma1 = parse_cycles("(1,3,5,7,9,11,13)", 14)
    assert sigma1.images[:4] == (3, 2, 5, 4)
    assert parse_cycles("", 14).is_identity()
    with pytest.raises(CycleParseError, match="point 2 repeated"):
        parse_cycles("(1,2)(2,3)", 14)
    with pytest.raises(CycleParseError, match="outside"):
        parse_cycles("(1,15)", 14)
    with pytest.raises(CycleParseError, match="position"):
        parse_cycles("(1,2", 14)
    with pytest.raises(CycleParseError):
        parse_cycles("(1)", 14)
    with pytest.raises(CycleParseError):
        parse_cycles("1,2)", 14)


def test_parse_print_roundtrip_bulk():
    rng = random.Random(2024)
    for _ in range(10 ** 4):
        degree = rng.randint(1, 20)
        images = list(range(1, degree + 1))
        rng.shuffle(images)
        p = Permutation(images)
        assert parse_cycles(p.cycle_string(), degree) == p


def test_compose_convention():
    # compose(a,b) applies b first; the table identity
    # lambda1 sigma1 lambda1^-1 = sigma2^-1 pins the convention
    s1 = catalog.element("sigma1")
    s2 = catalog.element("sigma2")
    l1 = catalog.element("lambda1")
    assert l1 * s1 * l1.inverse() == s2.inverse()
    a = parse_cycles("(1,2)", 3)
    b = parse_cycles("(2,3)", 3)
    assert (a * b)(2) == a(b(2)) == a(3) == 3


def test_perm_ops():
    tau1 = catalog.element("tau1")
    cube = tau1 ** 3
    assert not cube.is_identity()
    assert (cube * cube).is_identity()
    s1 = catalog.element("sigma1")
    assert (s1 * s1.inverse()).is_identity()
    prod = s1 * catalog.element("sigma2")
    assert (prod ** 7).is_identity()
    assert prod.order() == 7
    with pytest.raises(ValueError, match="degree mismatch"):
        s1 * parse_cycles("(1,2)", 3)


def test_group_orders():
    s1 = catalog.element("sigma1")
    s2 = catalog.element("sigma2")
    nu3 = catalog.element("nu3")
    assert PermGroup([s1 * s2]).order() == 7
    assert PermGroup([s1 * s2, nu3]).order() == 168
    assert catalog.normal_subgroup("N64").order() == 64
    assert symmetric_group(14).order() == factorial(14)


def test_equal_generated_subgroups():
    s1 = catalog.element("sigma1")
    assert PermGroup([s1]) == PermGroup([s1 ** 3])


def test_chain_order_vs_enumeration_small_catalog():
    groups = [catalog.normal_subgroup(n) for n in ("N7", "N49", "N8", "N16", "N64")]
    for p, d, a in [(3, 2, 2), (5, 4, 2), (7, 6, 3), (11, 10, 2), (13, 12, 2)]:
        groups.append(catalog.gpd(p, d, a).group)
    for gid in range(1, 10):
        groups.append(catalog.group(gid).group)
    for group in groups:
        order = group.order()
        assert order <= 2000
        assert order == len(group.elements(limit=2100))


def test_membership_sifting():
    rng = random.Random(7)
    for gid in (1, 10):
        group = catalog.group(gid).group
        gens = list(group.generators)
        for _ in range(40):
            word = Permutation.identity(14)
            for _ in range(rng.randint(1, 5)):
                word = word * rng.choice(gens)
            assert word in group
        outside = parse_cycles("(1,2)", 14)
        assert outside not in group


def test_solvability_vs_bruteforce():
    def brute_force_solvable(group):
        elements = group.elements(limit=2100)
        current = elements
        while True:
            comms = {a * b * a.inverse() * b.inverse() for a in current for b in current}
            # close under multiplication
            derived = {Permutation.identity(group.degree)}
            frontier = [Permutation.identity(group.degree)]
            comms = list(comms)
            while frontier:
                g = frontier.pop()
                for c in comms:
                    h = g * c
                    if h not in derived:
                        derived.add(h)
                        frontier.append(h)
            derived = list(derived)
            if len(derived) == 1:
                return True
            if len(derived) == len(current):
                return False
            current = derived

    for gid in (1, 2, 4, 6, 8):
        group = catalog.group(gid).group
        assert group.is_solvable() == brute_force_solvable(group)
    g10 = catalog.group(10).group
    assert g10.is_solvable() is False
    # brute force on the order-168 group as the non-solvable witness
    assert brute_force_solvable(g10) is False


def test_group_predicates():
    assert catalog.group(1).group.is_transitive()
    assert not symmetric_group(14).is_solvable()  # contains A14
    n64 = catalog.normal_subgroup("N64")
    assert not n64.is_transitive()
    assert n64.orbits() == [[2 * i + 1, 2 * i + 2] for i in range(7)]


def test_normality():
    n49 = catalog.normal_subgroup("N49")
    assert n49.is_normal_in(catalog.group(12).group)
    n8 = catalog.normal_subgroup("N8")
    assert not n8.is_normal_in(catalog.group(63).group)


def test_wreath_and_direct_products():
    c2 = symmetric_group(2)
    c7 = cyclic_group(7)
    w = wreath_product(c2, c7)
    assert w.order() == 2 ** 7 * 7 == 896
    assert w.is_transitive()
    d7 = catalog.base_group("D7")
    w2 = wreath_product(d7, c2)
    assert w2.order() == 14 ** 2 * 2 == 392
    assert w2.is_transitive()
    d = direct_product(c7, c2)
    assert d.order() == 14 and d.is_transitive()
    trivial = PermGroup([], degree=1)
    degenerate = wreath_product(d7, trivial)
    assert degenerate.order() == d7.order()
    assert degenerate.degree == 7
    relabeled = direct_product(trivial, d7)
    assert relabeled.order() == d7.order()


def test_wreath_order_law_all_catalog_products():
    for gid, (kind, inner, outer) in sorted(catalog._PRODUCT_GROUPS.items()):
        if kind != "wreath":
            continue
        h = catalog.base_group(inner)
        g = catalog.base_group(outer)
        built = catalog.group(gid).group
        assert built.order() == h.order() ** g.degree * g.order(), gid


def test_alternating_group():
    assert alternating_group(7).order() == 2520
    assert alternating_group(4).order() == 12


def test_group_file_parsing():
    text = """
    # generators for the order-168 image
    rot = (1,2,3,4,5,6,7)
    flip = (1,3)(2,6)   # second generator
    group psl = rot flip
    group cyc = rot
    """
    perms, groups = parse_group_file(text)
    assert perms["rot"].order() == 7
    assert groups["psl"].order() == 168
    assert groups["cyc"].order() == 7
    with pytest.raises(ValueError, match="unknown permutation"):
        parse_group_file("group g = nope")
    with pytest.raises(ValueError, match="line 1"):
        parse_group_file("bad line without equals")


def test_group_file_explicit_degree():
    perms, groups = parse_group_file("t = (1,2)\ngroup g = t", degree=5)
    assert perms["t"].degree == 5
    assert groups["g"].order() == 2
