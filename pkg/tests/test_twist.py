from fractions import Fraction

import pytest

from fsys.cyclotomic import CycField, CycNumber, galois_apply
from fsys.fusion import FusionSystem, verify_fusion
from fsys.gauge import decide_gauge_equiv
from fsys.modular import quantum_dimensions, verify_modular
from fsys.twist import GaloisAuto, Grading, galois_orbit, tau_twist, twist_system
from conftest import semion_system


class TestGaloisTwist:
    def test_sigma_one_is_identity(self, fib, fib_mod):
        assert twist_system(fib, 1) == fib
        tw = twist_system(fib_mod, 1)
        assert tw.base == fib_mod.base and tw.R == fib_mod.R

    def test_wrapper_and_int_agree(self, fib):
        assert twist_system(fib, GaloisAuto(2)) == twist_system(fib, 2)

    def test_composition(self, fib, fib_mod):
        assert twist_system(twist_system(fib, 2), 3) == twist_system(fib, 6 % 5)
        left = twist_system(twist_system(fib_mod, 3), 7)
        right = twist_system(fib_mod, 21 % 20)
        assert left.base == right.base and left.R == right.R

    def test_non_coprime_rejected(self, fib, fib_mod):
        with pytest.raises(ValueError, match="k=5 is not coprime"):
            twist_system(fib, 5)
        with pytest.raises(ValueError, match="not coprime"):
            twist_system(fib_mod, 4)

    def test_fibonacci_twists_to_yang_lee(self, fib, yl):
        assert twist_system(fib, 2) == yl

    def test_twisted_systems_verify(self, fib_mod):
        for k in (3, 7, 9):
            assert verify_modular(twist_system(fib_mod, k)).outcome == "pass"

    def test_epsilon_kept_and_roots_conjugated(self):
        m = semion_system()
        tw = twist_system(m, 3)
        assert tw.epsilon == m.epsilon
        assert tw.sqrt_u[1] == galois_apply(3, m.sqrt_u[1])
        assert tw.sqrt_u[1] != m.sqrt_u[1]
        # the conjugated roots still square to the twisted scalars
        assert quantum_dimensions(tw).status == "ok"

    def test_zero_pattern_is_preserved(self, su2):
        tw = twist_system(su2, 3)
        for key in su2.quadruples():
            a, b = su2.fmat(*key), tw.fmat(*key)
            for i in range(a.rows):
                for j in range(a.cols):
                    assert a.at(i, j).is_zero() == b.at(i, j).is_zero()


class TestOrbit:
    def test_fibonacci_fusion(self, fib):
        rep = galois_orbit(fib)
        assert rep.order == 5 and rep.twists == (1, 2, 3, 4)
        assert rep.classes == ((1, 4), (2, 3))
        assert rep.representatives == (1, 2)
        assert rep.method == "gauge-invariants"
        assert rep.caveat is None

    def test_su2_level2(self, su2):
        rep = galois_orbit(su2)
        assert rep.classes == ((1, 7), (3, 5))

    def test_toric_code_is_rational(self, toric):
        rep = galois_orbit(toric)
        assert rep.order == 1 and rep.classes == ((1,),)

    def test_fibonacci_modular(self, fib_mod):
        rep = galois_orbit(fib_mod)
        assert rep.order == 20
        assert rep.twists == (1, 3, 7, 9, 11, 13, 17, 19)
        assert rep.classes == ((1, 11), (3, 13), (7, 17), (9, 19))
        assert rep.method == "gauge-invariants+braiding"
        # every multi-member class joins by entry equality, so the
        # incompleteness caveat must not fire
        assert rep.caveat is None

    def test_semion_classes_split_on_r(self):
        rep = galois_orbit(semion_system())
        assert rep.order == 4
        assert rep.classes == ((1,), (3,))
        assert rep.caveat is None

    def test_exact_equality_fallback(self):
        from conftest import mult2_system

        rep = galois_orbit(mult2_system())
        assert rep.method == "exact-equality"
        assert rep.classes == ((1,),)


class TestGrading:
    def test_validate_errors(self, su2):
        ring = su2.ring
        with pytest.raises(ValueError, match="positive"):
            Grading(0, (0, 1, 0)).validate(ring)
        with pytest.raises(ValueError, match="every label"):
            Grading(2, (0, 1)).validate(ring)
        with pytest.raises(ValueError, match="canonical"):
            Grading(2, (0, 3, 0)).validate(ring)
        with pytest.raises(ValueError, match="unit label"):
            Grading(2, (1, 1, 0)).validate(ring)
        with pytest.raises(ValueError, match="not additive on channel"):
            Grading(2, (0, 0, 1)).validate(ring)
        Grading(2, (0, 1, 0)).validate(ring)


class TestTauTwist:
    def test_tau_one_is_identity(self, su2):
        one = su2.one()
        assert tau_twist(su2, Grading(2, (0, 1, 0)), one) == su2

    def test_single_sign_switch(self, su2):
        minus = -su2.one()
        tw = tau_twist(su2, Grading(2, (0, 1, 0)), minus)
        changed = [key for key in su2.quadruples() if tw.fmat(*key) != su2.fmat(*key)]
        assert changed == [(1, 1, 1, 1)]
        old, new = su2.fmat(1, 1, 1, 1), tw.fmat(1, 1, 1, 1)
        for i in range(2):
            for j in range(2):
                assert new.at(i, j) == -old.at(i, j)
        assert verify_fusion(tw).ok()

    def test_matches_ising_catalog(self, su2, ising):
        tw = tau_twist(su2, Grading(2, (0, 1, 0)), -su2.one())
        assert tw == ising
        assert decide_gauge_equiv(tw, ising).outcome == "equivalent"

    def test_involution_and_multiplicativity(self, su2):
        g = Grading(2, (0, 1, 0))
        minus = -su2.one()
        assert tau_twist(tau_twist(su2, g, minus), g, minus) == su2

    def test_fourth_root_composition(self, toric):
        # Z/4 grading is impossible on the toric ring (all labels square to
        # the unit), so exercise composition on a pointed Z4 system instead
        from fsys.fusion import FusionRing
        from conftest import identity_blocks

        field = CycField.of(4)
        n = 4
        mult = tuple(
            tuple(
                tuple(1 if c == (a + b) % n else 0 for c in range(n))
                for b in range(n)
            )
            for a in range(n)
        )
        ring = FusionRing(("1", "g", "g2", "g3"), 0, (0, 3, 2, 1), mult)
        s = FusionSystem(ring, field, identity_blocks(ring, field))
        g = Grading(4, (0, 1, 2, 3))
        i_unit = CycNumber.zeta_power(field, 1)
        once = tau_twist(s, g, i_unit)
        twice = tau_twist(once, g, i_unit)
        assert twice == tau_twist(s, g, i_unit * i_unit)
        assert verify_fusion(once).ok()
        back = tau_twist(once, g, CycNumber.zeta_power(field, 3))
        assert back == s

    def test_z2_semion_relation(self, catalog):
        z2 = catalog["z2-trivial"].system
        sem = catalog["z2-semion"].system
        tw = tau_twist(z2, Grading(2, (0, 1)), -z2.one())
        assert tw == sem
        assert tw != z2

    def test_errors(self, su2, fib, fib_mod):
        g = Grading(2, (0, 1, 0))
        with pytest.raises(ValueError, match="fusion-only"):
            tau_twist(fib_mod, Grading(2, (0, 1)), fib_mod.base.one())
        with pytest.raises(ValueError, match="wrong field"):
            tau_twist(su2, g, CycNumber.one(CycField.of(4)))
        two = su2.one() + su2.one()
        with pytest.raises(ValueError, match="root of unity"):
            tau_twist(su2, g, two)
        with pytest.raises(ValueError, match="every label"):
            tau_twist(fib, Grading(2, (0, 1, 0)), -fib.one())
