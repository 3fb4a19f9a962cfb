"""Solver tests: interval equality against an independent four-element
De Morgan algebra oracle, face canonicalization against truth tables, and
the adjunction law for the name-quantifier."""
import itertools
import random

from hypothesis import given, settings
from hypothesis import strategies as st

from gcube.cofib import (face_dnf, face_entails, face_equal, face_of_interval,
                         forall_name, iv_equal, iv_equal_under)
from gcube.syntax import (F0, F1, FAnd, FBot, FEq, FOr, FTop, I0, I1, IJoin,
                          IMeet, IName, INeg, IOne, IZero, face_names,
                          iv_names)

# ---------------------------------------------------------------------------
# independent oracle: the four-element De Morgan algebra by explicit tables

_ORDER = {"0": 0, "a": 1, "b": 1, "1": 2}
_NEG = {"0": "1", "1": "0", "a": "a", "b": "b"}


def _meet(x, y):
    if x == y:
        return x
    if _ORDER[x] > _ORDER[y]:
        x, y = y, x
    if {x, y} == {"a", "b"}:
        return "0"
    return x  # comparable: the lower one


def _join(x, y):
    if x == y:
        return x
    if _ORDER[x] > _ORDER[y]:
        x, y = y, x
    if {x, y} == {"a", "b"}:
        return "1"
    return y


def dm4_eval(r, env):
    match r:
        case IZero():
            return "0"
        case IOne():
            return "1"
        case IName(n):
            return env[n]
        case INeg(s):
            return _NEG[dm4_eval(s, env)]
        case IMeet(s, t):
            return _meet(dm4_eval(s, env), dm4_eval(t, env))
        case IJoin(s, t):
            return _join(dm4_eval(s, env), dm4_eval(t, env))
    raise AssertionError(r)


def iv_equal_oracle(r, s):
    names = sorted(iv_names(r) | iv_names(s))
    for values in itertools.product("0ab1", repeat=len(names)):
        env = dict(zip(names, values))
        if dm4_eval(r, env) != dm4_eval(s, env):
            return False
    return True


def random_iv(rng, names, depth):
    if depth == 0 or rng.random() < 0.3:
        return rng.choice([I0, I1] + [IName(n) for n in names])
    k = rng.randrange(3)
    if k == 0:
        return INeg(random_iv(rng, names, depth - 1))
    cls = IMeet if k == 1 else IJoin
    return cls(random_iv(rng, names, depth - 1), random_iv(rng, names, depth - 1))


def depth1_family(names):
    atoms = [I0, I1] + [IName(n) for n in names]
    out = list(atoms)
    out += [INeg(a) for a in atoms]
    for a in atoms:
        for b in atoms:
            out.append(IMeet(a, b))
            out.append(IJoin(a, b))
    return out


def test_iv_equal_matches_oracle_exhaustive_small():
    family = depth1_family(["i", "j"])
    mismatches = 0
    for r in family:
        for s in family:
            if iv_equal(r, s) != iv_equal_oracle(r, s):
                mismatches += 1
    assert mismatches == 0


def test_iv_equal_matches_oracle_random():
    rng = random.Random(20160621)
    for _ in range(1000):
        r = random_iv(rng, ["i", "j", "k"], 4)
        s = random_iv(rng, ["i", "j", "k"], 4)
        assert iv_equal(r, s) == iv_equal_oracle(r, s), (r, s)
    for _ in range(1000):
        r = random_iv(rng, ["i", "j", "k", "l", "m"], 6)
        s = random_iv(rng, ["i", "j", "k", "l", "m"], 6)
        assert iv_equal(r, s) == iv_equal_oracle(r, s), (r, s)


def test_iv_equal_examples():
    i, j = IName("i"), IName("j")
    assert iv_equal(INeg(IMeet(i, j)), IJoin(INeg(i), INeg(j)))
    assert iv_equal(i, i)
    assert not iv_equal(IJoin(i, INeg(i)), I1)


# ---------------------------------------------------------------------------
# face truth tables: each name is 0, 1, or undetermined

_STATES = ((1, 0), (0, 1), (0, 0))  # (atom i=0, atom i=1)


def face_eval(phi, env):
    match phi:
        case FBot():
            return 0
        case FTop():
            return 1
        case FEq(n, v):
            return env[n][1] if v == 1 else env[n][0]
        case FAnd(a, b):
            return face_eval(a, env) & face_eval(b, env)
        case FOr(a, b):
            return face_eval(a, env) | face_eval(b, env)
    raise AssertionError(phi)


def face_table(phi, names):
    names = sorted(names)
    return tuple(
        face_eval(phi, dict(zip(names, states)))
        for states in itertools.product(_STATES, repeat=len(names)))


def faces_equal_oracle(p, q):
    names = face_names(p) | face_names(q)
    return face_table(p, names) == face_table(q, names)


def face_leq_oracle(p, q):
    names = face_names(p) | face_names(q)
    return face_table(FAnd(p, q), names) == face_table(p, names)


def random_face(rng, names, depth):
    if depth == 0 or rng.random() < 0.3:
        return rng.choice([F0, F1] + [FEq(n, v) for n in names for v in (0, 1)])
    cls = FAnd if rng.random() < 0.5 else FOr
    return cls(random_face(rng, names, depth - 1), random_face(rng, names, depth - 1))


def face_family(names):
    atoms = [F0, F1] + [FEq(n, v) for n in names for v in (0, 1)]
    out = list(atoms)
    for a in atoms:
        for b in atoms:
            out.append(FAnd(a, b))
            out.append(FOr(a, b))
    return out


def test_face_dnf_canonical_exhaustive():
    fam = face_family(["i", "j"])
    for p in fam:
        for q in fam:
            assert (face_dnf(p) == face_dnf(q)) == faces_equal_oracle(p, q), (p, q)


def test_face_equal_and_entails_match_oracle_random():
    rng = random.Random(8128)
    for _ in range(1000):
        rho = random_face(rng, ["i", "j", "k"], 3)
        p = random_face(rng, ["i", "j", "k"], 3)
        q = random_face(rng, ["i", "j", "k"], 3)
        want = faces_equal_oracle(FAnd(rho, p), FAnd(rho, q))
        assert face_equal(rho, p, q) == want, (rho, p, q)
        assert face_entails(rho, p) == faces_equal_oracle(FAnd(rho, p), rho)


def test_face_examples():
    assert face_dnf(FAnd(FEq("i", 0), FEq("i", 1))).is_bottom()
    assert face_dnf(FOr(FEq("i", 1), FAnd(FEq("i", 1), FEq("j", 0)))) == face_dnf(FEq("i", 1))
    assert face_dnf(FOr(F1, FEq("i", 0))).is_top()
    assert face_equal(FEq("i", 1), FAnd(FEq("i", 1), FEq("j", 0)), FEq("j", 0))
    assert not face_equal(F1, FEq("i", 0), FEq("i", 1))
    assert face_equal(F0, FEq("i", 0), FEq("i", 1))
    assert face_entails(FEq("i", 1), FEq("i", 1))
    assert face_entails(FAnd(FEq("i", 1), FEq("j", 0)), FEq("j", 0))
    assert not face_entails(FEq("i", 1), FEq("j", 0))


def test_face_of_interval_examples():
    i, j = IName("i"), IName("j")
    assert face_of_interval(i) == FEq("i", 1)
    assert face_of_interval(INeg(i)) == FEq("i", 0)
    assert face_of_interval(IMeet(i, j)) == FAnd(FEq("i", 1), FEq("j", 1))


def test_face_of_interval_homomorphism_random():
    rng = random.Random(97)
    for _ in range(500):
        r = random_iv(rng, ["i", "j", "k"], 3)
        s = random_iv(rng, ["i", "j", "k"], 3)
        meet = face_of_interval(IMeet(r, s))
        join = face_of_interval(IJoin(r, s))
        assert face_dnf(meet) == face_dnf(FAnd(face_of_interval(r), face_of_interval(s)))
        assert face_dnf(join) == face_dnf(FOr(face_of_interval(r), face_of_interval(s)))


def test_forall_examples():
    assert forall_name("i", FOr(FEq("i", 0), FEq("j", 1))) == FEq("j", 1)
    assert forall_name("i", FEq("j", 1)) == FEq("j", 1)
    assert forall_name("i", FEq("i", 0)) == F0


def test_forall_adjunction_bruteforce():
    """psi <= forall i. phi iff psi <= phi, for all i-free psi on a grid."""
    phis = face_family(["i", "j"])
    psis = [p for p in face_family(["j", "k"]) if "i" not in face_names(p)]
    violations = 0
    for phi in phis:
        fa = forall_name("i", phi)
        assert "i" not in face_names(fa)
        for psi in psis:
            if face_leq_oracle(psi, fa) != face_leq_oracle(psi, phi):
                violations += 1
    assert violations == 0


def test_face_dnf_idempotent_random():
    rng = random.Random(11)
    for _ in range(500):
        phi = random_face(rng, ["i", "j", "k"], 4)
        dnf = face_dnf(phi)
        assert face_dnf(dnf.to_formula()) == dnf


def test_iv_equal_under_branches():
    i = IName("i")
    assert iv_equal_under(FEq("i", 1), i, I1)
    assert not iv_equal_under(F1, i, I1)
    assert iv_equal_under(F0, i, I1)
    assert iv_equal_under(FEq("i", 0), IJoin(i, INeg(i)), I1)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_iv_equal_is_congruence_for_neg(seed):
    rng = random.Random(seed)
    r = random_iv(rng, ["i", "j"], 3)
    s = random_iv(rng, ["i", "j"], 3)
    if iv_equal(r, s):
        assert iv_equal(INeg(r), INeg(s))
        assert iv_equal(IMeet(r, I1), IMeet(s, I1))
