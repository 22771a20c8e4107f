"""Edge rewirings: validation, application, certificates, identity residuals."""

import itertools
from fractions import Fraction

import numpy as np
import pytest

from quasistar.graphs import (
    from_creation_sequence,
    from_degree_sequence,
    is_threshold,
    l_graph,
    quasi_star,
    to_labeled,
)
from quasistar.spectra import threshold_spectrum
from quasistar.transforms import (
    InvalidTransformError,
    TransformSpec,
    apply_transform,
    candidate_specs,
    certify,
    eq1_residual,
    eq12_residuals,
    validate,
)

HALF = Fraction(1, 2)


def connected_threshold_graphs(max_n):
    from quasistar.graphs import ISOLATED, DOMINATING
    for n in range(2, max_n + 1):
        for tail in itertools.product((ISOLATED, DOMINATING), repeat=n - 2):
            yield from_creation_sequence((ISOLATED,) + tail + (DOMINATING,))


def valid_instances(max_n, dk=1, kinds=("BASIC", "ROW", "COL")):
    for g in connected_threshold_graphs(max_n):
        for kind in kinds:
            for spec in candidate_specs(g.n, kind, dk=dk):
                if validate(g, spec):
                    yield g, spec


# ---------------------------------------------------------------------------
# Spec shape and parsing
# ---------------------------------------------------------------------------

def test_spec_shape_constraints():
    TransformSpec("BASIC", 5, 2, 4, 3)
    TransformSpec("ROW", 7, 2, 5, 3, 1)
    TransformSpec("COL", 9, 3, 8, 4, 1)
    with pytest.raises(ValueError):
        TransformSpec("BASIC", 5, 1, 4, 3)  # q >= 2
    with pytest.raises(ValueError):
        TransformSpec("BASIC", 5, 2, 4, 3, 1)  # width must be 0
    with pytest.raises(ValueError):
        TransformSpec("ROW", 7, 2, 5, 3, 2)  # h < p - l violated
    with pytest.raises(ValueError):
        TransformSpec("COL", 9, 3, 8, 4, 2)  # 2 <= q - l violated
    with pytest.raises(ValueError):
        TransformSpec("DIAG", 5, 2, 4, 3)


def test_spec_text_round_trip():
    for spec in (TransformSpec("BASIC", 6, 2, 4, 3),
                  TransformSpec("ROW", 7, 2, 5, 3, 1),
                  TransformSpec("COL", 9, 3, 8, 4, 1)):
        assert TransformSpec.parse(spec.text) == spec
    assert TransformSpec.parse("basic 6 2 4 3").kind == "BASIC"
    with pytest.raises(ValueError):
        TransformSpec.parse("ROW 7 2 5 3")  # missing width


# ---------------------------------------------------------------------------
# The two worked instances
# ---------------------------------------------------------------------------

def test_row_rewiring_l_7_12_to_s_7_12():
    host = l_graph(7, 12)
    spec = TransformSpec("ROW", 7, 2, 5, 3, 1)
    assert validate(host, spec)
    assert apply_transform(host, spec) == quasi_star(7, 12)


def test_col_rewiring_to_s_9_23():
    host = from_degree_sequence((8, 7, 7, 7, 4, 4, 4, 4, 1))
    expected_rows = {
        1: {2, 3, 4, 5, 6, 7, 8, 9},
        2: {1, 3, 4, 5, 6, 7, 8},
        3: {1, 2, 4, 5, 6, 7, 8},
        4: {1, 2, 3, 5, 6, 7, 8},
        5: {1, 2, 3, 4}, 6: {1, 2, 3, 4}, 7: {1, 2, 3, 4}, 8: {1, 2, 3, 4},
        9: {1},
    }
    nbrs = to_labeled(host).neighbor_sets()
    assert {v: nbrs[v] for v in range(1, 10)} == expected_rows
    spec = TransformSpec("COL", 9, 3, 8, 4, 1)
    assert validate(host, spec)
    assert apply_transform(host, spec) == quasi_star(9, 23)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def test_complete_graph_admits_no_rewiring():
    k7 = from_creation_sequence("IDDDDDD")
    for kind in ("BASIC", "ROW", "COL"):
        for spec in candidate_specs(7, kind):
            result = validate(k7, spec)
            assert not result
            assert "vacant" in result.reason


def test_validate_reports_first_violated_clause():
    host = l_graph(7, 12)
    bad = TransformSpec("ROW", 7, 2, 5, 3, 0)  # needs width 1: row 6 misses column 2 too
    result = validate(host, bad)
    assert not result and "column 2 is not full on rows 3..6" in result.reason


def test_validate_index_out_of_range():
    with pytest.raises(ValueError):
        validate(quasi_star(5, 7), TransformSpec("BASIC", 6, 2, 4, 3))


def test_validate_rejects_disconnected_host():
    host = from_creation_sequence("IDDDDI")  # K_5 u K_1
    result = validate(host, TransformSpec("BASIC", 5, 2, 4, 3))
    assert not result and "connected" in result.reason


def test_apply_refuses_invalid_spec():
    with pytest.raises(InvalidTransformError):
        apply_transform(from_creation_sequence("IDDDDDD"), TransformSpec("BASIC", 7, 2, 4, 3))


# ---------------------------------------------------------------------------
# The three kinds agree at width 0
# ---------------------------------------------------------------------------

def test_width_zero_row_and_col_equal_basic():
    seen = 0
    for g, spec in valid_instances(8, kinds=("BASIC",)):
        row = TransformSpec("ROW", spec.p, spec.q, spec.h, spec.k, 0)
        col = TransformSpec("COL", spec.p, spec.q, spec.h, spec.k, 0)
        assert validate(g, row) and validate(g, col)
        out = apply_transform(g, spec)
        assert apply_transform(g, row) == out
        assert apply_transform(g, col) == out
        seen += 1
    assert seen >= 20


# ---------------------------------------------------------------------------
# Conservation and closure
# ---------------------------------------------------------------------------

def test_apply_preserves_counts_and_thresholdness():
    seen = 0
    for g, spec in valid_instances(8):
        out = apply_transform(g, spec)
        assert out.n == g.n and out.m == g.m
        assert out.is_connected
        assert is_threshold(to_labeled(out))
        seen += 1
    assert seen >= 100


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------

def test_equality_window_certificates():
    # k = q+1, p = h+1 = q+3 at alpha = 1/2: exact tie predicted and observed.
    seen = 0
    for g, spec in valid_instances(8, kinds=("BASIC",)):
        if not (spec.p == spec.h + 1 == spec.q + 3):
            continue
        cert = certify(g, spec, HALF)
        assert cert.covered and cert.predicted_equality
        assert abs(cert.rho_after - cert.rho_before) <= 1e-9
        assert cert.observed_equality
        strict = certify(g, spec, Fraction(3, 4))
        assert strict.covered and not strict.predicted_equality
        assert strict.rho_after - strict.rho_before > 1e-9
        seen += 1
    assert seen >= 5


def test_row_width_one_breaks_equality():
    cert = certify(l_graph(7, 12), TransformSpec("ROW", 7, 2, 5, 3, 1), HALF)
    assert cert.covered and cert.predicted_equality is False
    assert cert.rho_after - cert.rho_before > 1e-9
    assert not cert.observed_equality


def test_double_offset_rule_strict():
    seen = 0
    for g, spec in valid_instances(8, dk=2, kinds=("BASIC",)):
        if spec.p <= spec.h + 1:
            continue
        for alpha in (HALF, Fraction(3, 4)):
            cert = certify(g, spec, alpha)
            assert cert.covered and cert.rule == "BASIC,k=q+2,p>h+1"
            assert cert.predicted_equality is False
            assert cert.rho_after - cert.rho_before > 1e-9
        seen += 1
    assert seen >= 5


def test_uncovered_cases_are_flagged_not_guessed():
    host = l_graph(7, 12)
    spec = TransformSpec("ROW", 7, 2, 5, 3, 1)
    low = certify(host, spec, Fraction(1, 4))
    assert not low.covered and low.predicted_equality is None
    for g, wide in valid_instances(8, dk=3, kinds=("BASIC",)):
        cert = certify(g, wide, HALF)
        assert not cert.covered and cert.predicted_equality is None
        break


def test_certify_rejects_invalid_spec():
    with pytest.raises(InvalidTransformError):
        certify(from_creation_sequence("IDDDDDD"), TransformSpec("BASIC", 7, 2, 4, 3), HALF)


# ---------------------------------------------------------------------------
# Eigenvector identity residuals
# ---------------------------------------------------------------------------

def test_identity_residuals_small_for_every_alpha():
    # The identities hold for all alpha in [0, 1), including alpha = 0.
    count = 0
    for g, spec in itertools.islice(valid_instances(8, kinds=("BASIC",)), 60):
        out = apply_transform(g, spec)
        for alpha in (Fraction(0), Fraction(1, 3), HALF, Fraction(9, 10)):
            r1, r2 = eq12_residuals(g, out, spec, alpha)
            assert r1 <= 1e-8 and r2 <= 1e-8
        count += 1
    assert count >= 20


def test_perturbed_vector_breaks_identity():
    # Exact only at the eigenpair: bumping an entry that enters the identity
    # (here x_h) moves the residual linearly in the bump size.
    host = l_graph(7, 12)
    spec = TransformSpec("ROW", 7, 2, 5, 3, 1)
    s = threshold_spectrum(host, HALF)
    base = eq1_residual(s.rho, s.perron, spec, 0.5)
    assert base <= 1e-10
    slope = abs(s.rho - (spec.k + spec.l) * 0.5)  # d(residual)/d(x_h)
    for eps in (1e-6, 1e-3):
        bumped = np.array(s.perron)
        bumped[spec.h - 1] += eps
        moved = eq1_residual(s.rho, bumped, spec, 0.5)
        assert moved == pytest.approx(eps * slope, rel=1e-4, abs=1e-9)
        assert moved > 100 * base


def test_eq12_residuals_validates_inputs():
    host = l_graph(7, 12)
    spec = TransformSpec("ROW", 7, 2, 5, 3, 1)
    wrong = quasi_star(7, 11)
    with pytest.raises(ValueError):
        eq12_residuals(host, wrong, spec, HALF)
    with pytest.raises(InvalidTransformError):
        eq12_residuals(quasi_star(7, 12), quasi_star(7, 12), spec, HALF)
