"""Named elements and groups of the degree-14 classification, plus the
index-action families (the p-point shift/multiply groups and the six
two-block automorphisms) used by the constructions.

Everything is cached; clear_cache() drops the caches so tests can inject a
corrupted element table and watch dependent checks fail honestly.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .perms import (PermGroup, Permutation, alternating_group, cyclic_group,
                    direct_product, parse_cycles, symmetric_group,
                    wreath_product)
from .scalars import is_prime
from .symfield import Polynomial, SubstitutionMap, VariableSpace

DEGREE = 14

# The fourteen named elements of the degree-14 tables.  Tests corrupt this
# table through monkeypatching, so element() must read it at call time.
ELEMENT_CYCLES = {
    "sigma1": "(1,3,5,7,9,11,13)",
    "sigma2": "(2,4,6,8,10,12,14)",
    "tau1": "(1,2)(3,8,5,14,9,12)(4,7,6,13,10,11)",
    "tau2": "(3,7,5,13,9,11)(4,8,6,14,10,12)",
    "lambda1": "(1,2)(3,14,13,4)(5,12,11,6)(7,10,9,8)",
    "lambda2": "(1,2)(3,4)(5,6)(7,8)(9,10)(11,12)(13,14)",
    "lambda3": "(3,13)(5,11)(7,9)",
    "lambda4": "(4,14)(6,12)(8,10)",
    "lambda5": "(3,5,9)(7,13,11)",
    "lambda6": "(4,6,10)(8,14,12)",
    "mu0": "(1,2)",
    "mu1": "(3,4)",
    "mu2": "(5,6)",
    "mu3": "(7,8)",
    "mu4": "(9,10)",
    "mu5": "(11,12)",
    "mu6": "(13,14)",
    "nu1": "(1,4)(2,3)(5,6)(7,8)(9,10)(11,12)(13,14)",
    "nu2": "(1,3)(2,4)",
    "nu3": "(1,6)(2,5)(3,11)(4,12)(7,8)(9,10)",
}

NORMAL_SUBGROUP_WORDS = {
    "N7": ["sigma1*sigma2"],
    "N49": ["sigma1", "sigma2"],
    "N8": ["mu0*mu1*mu2*mu5", "mu0*mu2*mu3*mu4", "mu0*mu1*mu4*mu6"],
    "N16": ["mu0*mu1*mu2*mu5", "mu0*mu2*mu3*mu4", "mu0*mu1*mu4*mu6",
            "mu1*mu2*mu4"],
    "N64": ["mu0*mu1", "mu0*mu2", "mu0*mu3", "mu0*mu4", "mu0*mu5", "mu0*mu6"],
}

_CLASS_MEMBERS = {
    1: [1, 3, 5, 7, 8, 20, 26, 45, 29, 38, 44, 48],
    2: [2, 4],
    3: [12, 13, 14, 15, 22, 23, 24, 25, 31, 32, 36, 37],
    4: [6, 11],
    5: [9, 18],
    6: [21, 35, 27, 28, 40, 41],
    7: [63],
    8: [49, 61, 57],
    9: [54, 55],
    10: [10],
    11: [19, 52, 51, 47, 58, 56],
    12: [17, 33, 34, 42, 43, 50, 53],
    13: [16, 30, 39, 46, 59, 60, 62],
}

CLASS_OF = {gid: klass for klass, ids in _CLASS_MEMBERS.items() for gid in ids}

_NORMAL_NAME_BY_CLASS = {2: "N7", 3: "N49", 4: "N8", 5: "N16", 6: "N64", 9: "N64"}

# Generator words for groups given by explicit generators.
_WORD_GROUPS = {
    2: ["sigma1*sigma2", "tau1^3"],
    4: ["sigma1*sigma2", "tau1"],
    12: ["sigma1", "sigma2", "lambda1"],
    13: ["sigma1", "sigma2", "lambda2", "lambda3*lambda4"],
    14: ["sigma1", "sigma2", "lambda2", "lambda5*lambda6"],
    15: ["sigma1", "sigma2", "lambda2", "lambda5^-1*lambda6"],
    22: ["sigma1", "sigma2", "lambda1", "lambda5^-1*lambda6"],
    23: ["sigma1", "sigma2", "lambda1", "lambda5*lambda6"],
    24: ["sigma1", "sigma2", "lambda2", "lambda3*lambda4", "lambda5*lambda6"],
    25: ["sigma1", "sigma2", "lambda2", "lambda3*lambda4", "lambda5^-1*lambda6"],
    31: ["sigma1", "sigma2", "lambda2", "lambda3", "lambda4", "lambda5^-1*lambda6"],
    32: ["sigma1", "sigma2", "lambda2", "lambda3", "lambda4", "lambda5*lambda6"],
    36: ["sigma1", "sigma2", "lambda1", "lambda5", "lambda6"],
    37: ["sigma1", "sigma2", "lambda2", "lambda3*lambda4", "lambda5", "lambda6"],
    6: NORMAL_SUBGROUP_WORDS["N8"] + ["sigma1*sigma2"],
    11: NORMAL_SUBGROUP_WORDS["N8"] + ["sigma1*sigma2", "tau2^2"],
    9: NORMAL_SUBGROUP_WORDS["N16"] + ["sigma1*sigma2"],
    18: NORMAL_SUBGROUP_WORDS["N16"] + ["sigma1*sigma2", "tau2^2"],
    21: NORMAL_SUBGROUP_WORDS["N64"] + ["sigma1*sigma2"],
    35: NORMAL_SUBGROUP_WORDS["N64"] + ["sigma1*sigma2", "tau2^2"],
    27: NORMAL_SUBGROUP_WORDS["N64"] + ["sigma1*sigma2", "tau1^3"],
    28: NORMAL_SUBGROUP_WORDS["N64"] + ["sigma1*sigma2", "tau2^3"],
    40: NORMAL_SUBGROUP_WORDS["N64"] + ["sigma1*sigma2", "tau1"],
    41: NORMAL_SUBGROUP_WORDS["N64"] + ["sigma1*sigma2", "tau2"],
    54: NORMAL_SUBGROUP_WORDS["N64"] + ["sigma1*sigma2", "nu1"],
    55: NORMAL_SUBGROUP_WORDS["N64"] + ["sigma1*sigma2", "nu2"],
    10: ["sigma1*sigma2", "nu3"],
}

_WORD_LABELS = {
    2: "N7 extended by <tau1^3>",
    4: "N7 extended by <tau1>",
    6: "N8 extended by <sigma1*sigma2>",
    9: "N16 extended by <sigma1*sigma2>",
    10: "<sigma1*sigma2, nu3>",
    11: "N8 extended by <sigma1*sigma2, tau2^2>",
    18: "N16 extended by <sigma1*sigma2, tau2^2>",
    21: "N64 extended by <sigma1*sigma2>",
    27: "N64 extended by <sigma1*sigma2, tau1^3>",
    28: "N64 extended by <sigma1*sigma2, tau2^3>",
    35: "N64 extended by <sigma1*sigma2, tau2^2>",
    40: "N64 extended by <sigma1*sigma2, tau1>",
    41: "N64 extended by <sigma1*sigma2, tau2>",
    54: "N64 extended by <sigma1*sigma2, nu1>",
    55: "N64 extended by <sigma1*sigma2, nu2>",
}

# (kind, factor acting inside blocks, factor acting on blocks)
_PRODUCT_GROUPS = {
    1: ("direct", "C7", "C2"),
    3: ("direct", "D7", "C2"),
    5: ("direct", "G21", "C2"),
    7: ("direct", "G42", "C2"),
    8: ("wreath", "C7", "C2"),
    20: ("wreath", "D7", "C2"),
    26: ("wreath", "G21", "C2"),
    45: ("wreath", "G42", "C2"),
    29: ("wreath", "C2", "C7"),
    38: ("wreath", "C2", "D7"),
    44: ("wreath", "C2", "G21"),
    48: ("wreath", "C2", "G42"),
    49: ("direct", "S7", "C2"),
    61: ("wreath", "S7", "C2"),
    57: ("wreath", "C2", "S7"),
    19: ("direct", "PSL27", "C2"),
    52: ("wreath", "PSL27", "C2"),
    51: ("wreath", "C2", "PSL27"),
    47: ("direct", "A7", "C2"),
    58: ("wreath", "A7", "C2"),
    56: ("wreath", "C2", "A7"),
}

_ABSENT_LABELS = {
    17: "isomorphic to C2 x PSL2(F7)",
    33: "an extension of PSL2(F7) by C2^3",
    34: "isomorphic to C2^3 : PSL2(F7)",
    42: "an extension of PSL2(F7) by C2^4",
    43: "isomorphic to C2^4 : PSL2(F7)",
    50: "isomorphic to C2^6 : PSL2(F7)",
    53: "isomorphic to C2^6 : A7",
    16: "isomorphic to PGL2(F7)",
    30: "isomorphic to PSL2(F13)",
    39: "isomorphic to PGL2(F13)",
    46: "isomorphic to S7",
    59: "isomorphic to A7^2 : C4",
    60: "isomorphic to A7^2 : C2^2",
    62: "the alternating group A14",
}

# Independent generator-word constructions for product groups, used to
# cross-check the product encodings.
ALT_WORDS = {
    1: ["sigma1*sigma2", "lambda2"],
    29: ["mu0", "sigma1*sigma2"],
}


def element(name):
    """One of the named degree-14 elements, parsed from its cycle form."""
    if name not in ELEMENT_CYCLES:
        raise ValueError(f"unknown element name {name!r}")
    return parse_cycles(ELEMENT_CYCLES[name], DEGREE)


def word_permutation(word, degree=DEGREE, elements=None):
    """Evaluate a word like "sigma1*sigma2" or "tau1^3" over named elements."""
    lookup = elements if elements is not None else None
    result = Permutation.identity(degree)
    for token in word.split("*"):
        token = token.strip()
        if not token:
            continue
        name, _, exp = token.partition("^")
        e = int(exp) if exp else 1
        base = lookup[name] if lookup is not None else element(name)
        result = result * base ** e
    return result


@lru_cache(maxsize=None)
def normal_subgroup(name):
    if name not in NORMAL_SUBGROUP_WORDS:
        raise ValueError(f"unknown normal subgroup {name!r}")
    return PermGroup([word_permutation(w) for w in NORMAL_SUBGROUP_WORDS[name]],
                     degree=DEGREE)


@lru_cache(maxsize=None)
def base_group(name):
    """The degree-7 and degree-2 building blocks for the product groups."""
    if name == "C2":
        return symmetric_group(2)
    if name == "C7":
        return gpd(7, 1, 3).group
    if name == "D7":
        return gpd(7, 2, 3).group
    if name == "G21":
        return gpd(7, 3, 3).group
    if name == "G42":
        return gpd(7, 6, 3).group
    if name == "S7":
        return symmetric_group(7)
    if name == "A7":
        return alternating_group(7)
    if name == "PSL27":
        # the image of the degree-14 group <sigma1*sigma2, nu3> acting on the
        # seven blocks {2i+1, 2i+2}
        return PermGroup([parse_cycles("(1,2,3,4,5,6,7)", 7),
                          parse_cycles("(1,3)(2,6)", 7)])
    raise ValueError(f"unknown base group {name!r}")


@dataclass(frozen=True)
class CatalogGroup:
    id: int
    klass: int
    label: str
    group: object  # PermGroup or None
    generator_words: tuple
    solvable_expected: bool
    normal_subgroup_name: object  # str or None
    absent_reason: object  # str or None


@lru_cache(maxsize=None)
def group(gid):
    """Catalog entry for one of the 63 transitive groups of degree 14."""
    if gid not in CLASS_OF:
        raise ValueError(f"group id {gid} outside 1..63")
    klass = CLASS_OF[gid]
    solvable = klass <= 6
    normal_name = _NORMAL_NAME_BY_CLASS.get(klass)
    if gid in _WORD_GROUPS:
        words = tuple(_WORD_GROUPS[gid])
        perms = [word_permutation(w) for w in words]
        return CatalogGroup(gid, klass, _WORD_LABELS.get(gid, "<" + ", ".join(words) + ">"),
                            PermGroup(perms, degree=DEGREE), words, solvable,
                            normal_name, None)
    if gid in _PRODUCT_GROUPS:
        kind, inner, outer = _PRODUCT_GROUPS[gid]
        if kind == "direct":
            built = direct_product(base_group(inner), base_group(outer))
            label = f"direct product {inner} x {outer}"
        else:
            built = wreath_product(base_group(inner), base_group(outer))
            label = f"wreath product {inner} wr {outer}"
        return CatalogGroup(gid, klass, label, built, (), solvable, normal_name, None)
    if gid == 63:
        return CatalogGroup(63, 7, "the full symmetric group S14",
                            symmetric_group(DEGREE), (), False, None, None)
    label = _ABSENT_LABELS[gid]
    return CatalogGroup(gid, klass, label, None, (), solvable, normal_name,
                        "no explicit generators; Classes 12-13 are metadata only")


def constructed_ids():
    return [gid for gid in range(1, 64) if group(gid).group is not None]


def product_recipe(gid):
    return _PRODUCT_GROUPS.get(gid)


def dump():
    """Full catalog table as JSON-ready records with a stable key order."""
    records = []
    for gid in range(1, 64):
        entry = group(gid)
        record = {
            "id": entry.id,
            "class": entry.klass,
            "label": entry.label,
            "order": entry.group.order() if entry.group is not None else "unknown",
            "solvable": entry.solvable_expected,
            "transitive": entry.group.is_transitive() if entry.group is not None else True,
            "generators": [p.cycle_string() for p in entry.group.generators]
            if entry.group is not None else [],
        }
        if entry.normal_subgroup_name:
            record["normal_subgroup"] = entry.normal_subgroup_name
        if entry.absent_reason:
            record["reason"] = entry.absent_reason
        records.append(record)
    return records


# -- the p-point index-action family -------------------------------------------


@dataclass(frozen=True)
class GpdGroup:
    """The subgroup of S_p generated by i -> i+1 and the e-th power of i -> a*i."""

    p: int
    d: int
    a: int
    e: int
    group: object
    sigma: Permutation
    tau: Permutation

    def space(self):
        return VariableSpace([f"x{i}" for i in range(self.p)])

    def maps(self, field):
        """sigma and tau as substitution maps on x0..x_{p-1}."""
        space_ = self.space()
        return {
            "sigma": index_substitution(space_, field, lambda i: (i + 1) % self.p),
            "tau": index_substitution(space_, field, lambda i: (self.a * i) % self.p),
        }


def _index_permutation(p, index_map):
    """Permutation of {1..p} induced by a map on the 0-based indices."""
    return Permutation([index_map(i) + 1 for i in range(p)])


def index_substitution(space_, field, index_map):
    """Substitution map sending variable number i to variable number index_map(i)."""
    names = space_.names
    images = [Polynomial.variable(space_, field, names[index_map(i)])
              for i in range(space_.n)]
    return SubstitutionMap(space_, field, images)


@lru_cache(maxsize=None)
def gpd(p, d, a):
    """The order p*d subgroup of S_p from the shift and the power map."""
    if not is_prime(p) or p == 2:
        raise ValueError(f"p must be an odd prime, got {p}")
    if gcd(a, p) != 1:
        raise ValueError(f"a={a} is not invertible mod {p}")
    order = 1
    acc = a % p
    while acc != 1:
        acc = acc * a % p
        order += 1
    if order != p - 1:
        raise ValueError(f"a={a} does not generate the units mod {p}")
    if d < 1 or (p - 1) % d:
        raise ValueError(f"d={d} does not divide p-1={p - 1}")
    e = (p - 1) // d
    sigma = _index_permutation(p, lambda i: (i + 1) % p)
    tau = _index_permutation(p, lambda i: (a * i) % p)
    return GpdGroup(p, d, a, e, PermGroup([sigma, tau ** e], degree=p), sigma, tau)


# -- the six two-block automorphisms -------------------------------------------


def def16_space(p):
    """2p variables in the interleaved order x0,y0,x1,y1,..., so that the
    degree-2p point j corresponds to variable number j-1."""
    names = []
    for i in range(p):
        names.append(f"x{i}")
        names.append(f"y{i}")
    return VariableSpace(names)


def _def16_index_maps(p, a):
    """Position maps on the interleaved space; x_i sits at 2i, y_i at 2i+1."""

    def xpos(i):
        return 2 * (i % p)

    def ypos(i):
        return 2 * (i % p) + 1

    return {
        "sigma1": lambda pos: xpos(pos // 2 + 1) if pos % 2 == 0 else pos,
        "sigma2": lambda pos: pos if pos % 2 == 0 else ypos(pos // 2 + 1),
        "lambda1": lambda pos: ypos(-(pos // 2)) if pos % 2 == 0 else xpos(pos // 2),
        "lambda2": lambda pos: pos + 1 if pos % 2 == 0 else pos - 1,
        "rho1": lambda pos: xpos(a * (pos // 2)) if pos % 2 == 0 else pos,
        "rho2": lambda pos: pos if pos % 2 == 0 else ypos(a * (pos // 2)),
    }


@dataclass(frozen=True)
class Def16Family:
    p: int
    a: int
    field: object
    space: VariableSpace
    maps: object  # dict name -> SubstitutionMap

    def __getitem__(self, name):
        return self.maps[name]


def def16(p, a, field):
    """The six maps acting on x0..x_{p-1}, y0..y_{p-1} (indices mod p)."""
    if not is_prime(p) or p == 2:
        raise ValueError(f"p must be an odd prime, got {p}")
    if gcd(a, p) != 1:
        raise ValueError(f"a={a} is not invertible mod {p}")
    space_ = def16_space(p)
    maps = {name: index_substitution(space_, field, index_map)
            for name, index_map in _def16_index_maps(p, a).items()}
    return Def16Family(p, a, field, space_, maps)


def def16_permutation(name, p, a):
    """The same map as a permutation of degree 2p under the fixed renaming."""
    index_map = _def16_index_maps(p, a)[name]
    return Permutation([index_map(pos) + 1 for pos in range(2 * p)])


def x14_space():
    return VariableSpace([f"x{i}" for i in range(1, 15)])


def element_substitution(field, name_or_perm):
    """A degree-14 element acting on x1..x14 by sigma . x_i = x_{sigma(i)}."""
    perm = element(name_or_perm) if isinstance(name_or_perm, str) else name_or_perm
    space_ = x14_space()
    return index_substitution(space_, field, lambda i: perm(i + 1) - 1)


def renamed_substitution(field, name_or_perm):
    """A degree-14 element acting on the interleaved x0,y0,..,x6,y6 space."""
    perm = element(name_or_perm) if isinstance(name_or_perm, str) else name_or_perm
    space_ = def16_space(7)
    return index_substitution(space_, field, lambda i: perm(i + 1) - 1)


def clear_cache():
    group.cache_clear()
    normal_subgroup.cache_clear()
    base_group.cache_clear()
    gpd.cache_clear()
