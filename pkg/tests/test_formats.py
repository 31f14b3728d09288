import numpy as np
import pytest
from hypothesis import given

from forge.catalog import DL01, TRANSLATIONS, algebras, right_adjoint, translation
from forge.classes import parse_presentation
from forge.formats import (
    FormatError, format_algebra, format_language, format_presentation, format_signature,
    format_theta_spec, format_translation, parse_algebra, parse_language, parse_signature,
    parse_theta_spec, parse_translation,
)
from forge.matpow import full_language

from test_finalg import small_algebras


def same_algebra(A, B):
    return (A.sig == B.sig and A.size == B.size
            and all(np.array_equal(A.tables[s], B.tables[s]) for s in A.sig.symbols))


def test_signature_round_trip():
    assert parse_signature(format_signature(DL01)) == DL01
    with pytest.raises(FormatError):
        parse_signature("op meet")


@pytest.mark.parametrize("name", list(algebras()))
def test_catalog_algebra_round_trip(name):
    A = algebras()[name]
    B = parse_algebra(format_algebra(A))
    assert same_algebra(A, B)
    assert [B.label(i) for i in range(B.size)] == [A.label(i) for i in range(A.size)]
    assert same_algebra(A, parse_algebra(format_algebra(A, inline_signature=True)))


@given(small_algebras())
def test_random_algebra_round_trip(A):
    assert same_algebra(A, parse_algebra(format_algebra(A)))


def test_algebra_errors_carry_line_numbers():
    with pytest.raises(FormatError, match="line 3"):
        parse_algebra("signature DL01\nsize 2\nbogus 1\n")
    with pytest.raises(FormatError, match="needs 4 entries"):
        parse_algebra("signature DL01\nsize 2\ntable meet 0 0 0\n")
    with pytest.raises(FormatError, match="missing 'size'"):
        parse_algebra("signature DL01\n")
    with pytest.raises(FormatError, match="unknown signature"):
        parse_algebra("signature NOPE\nsize 1\n")
    with pytest.raises(FormatError, match="missing table"):
        parse_algebra("signature DL01\nsize 1\ntable meet 0\n")


def test_algebra_comments_and_blank_lines():
    text = "# a two-chain\nsignature DL01\n\nsize 2\ntable meet 0 0 0 1\ntable join 0 1 1 1  # max\n" \
           "table bot 0\ntable top 1\n"
    assert same_algebra(parse_algebra(text), algebras()["DL01:chain2"])


@pytest.mark.parametrize("name", TRANSLATIONS)
def test_translation_round_trip(name):
    ct = translation(name)[0]
    text = format_translation(ct)
    assert parse_translation(text) == ct
    assert format_translation(parse_translation(text)) == text


def test_translation_block_variables():
    text = format_translation(translation("kleene")[0])
    assert "map meet := meet(x0_0, x1_0), join(x0_1, x1_1)" in text
    assert "map neg := x0_1, x0_0" in text
    assert "context meet(x0, x1) = bot" in text


def test_translation_errors():
    with pytest.raises(FormatError, match="source"):
        parse_translation("kappa 1\n")
    with pytest.raises(FormatError, match="line 4"):
        parse_translation("source KA\ntarget DL01\nkappa 2\nmap neg x0_1\n")
    with pytest.raises(FormatError):
        parse_translation("source KA\ntarget DL01\nkappa 2\nmap neg := x0_1\n")


def test_language_round_trip():
    L = full_language(DL01, 2)
    assert parse_language(format_language(L)).ops == L.ops
    with pytest.raises(FormatError):
        parse_language(format_language(L) + "theta x0_0, x0_1 = bot, bot\n")


@pytest.mark.parametrize("name", TRANSLATIONS)
def test_theta_spec_round_trip(name):
    spec = right_adjoint(name).theta
    back = parse_theta_spec(format_theta_spec(spec))
    assert back.theta == spec.theta and back.lang.ops == spec.lang.ops


def test_theta_spec_errors():
    with pytest.raises(FormatError, match="base"):
        parse_theta_spec("kappa 1\n")
    with pytest.raises(FormatError):
        parse_theta_spec("base DL01\nkappa 1\ntheta x0\n")


def test_presentation_text():
    P = parse_presentation("2; meet(x0, x1) = bot", DL01)
    assert format_presentation(P) == "2; meet(x0, x1) = bot"
    assert parse_presentation(format_presentation(P), DL01) == P
