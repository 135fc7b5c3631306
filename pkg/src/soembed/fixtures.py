"""Reference generator matrices with their published parameters, and a
verification runner over them."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Callable

from .codes import LinearCode, parse_hex
from .gf2 import BinaryMatrix

ORTHOGONAL_GROUP_7 = 1451520
COSETS_7 = 288

# source [9,5,3] code (hull rows first) and an SO [11,5,4] embedding of it
G_9_5 = ["010011001", "001011010", "000111100", "100010111", "000001111"]
G_11_5 = ["01001100100", "00101101000", "00011110000", "10001011110", "00000111111"]

# source [11,7,3] code and an SO [16,7,4] embedding of it
G_11_7 = [
    "00011110000", "00000001111", "10000000011", "11000000110",
    "01100000011", "00110010000", "00011000011",
]
G_16_7 = [
    "0001111000000000", "0000000111100000", "1000000001110000", "1011001001111000",
    "0110000001101111", "1100000011000110", "0111100000000101",
]

C_22_4 = [
    "1010101010101010000000", "0110011001100110000000", "0001111000011110000000",
    "0000000111111110000000", "1000000000000111000000", "1100000000001100000110",
    "0110000000000110110000", "0011000000101110011000", "0001100000000110001100",
    "0000110000001101100000", "0000011000000110000011",
]
C_22_6 = [
    "1010101010101010000000", "0110011001100110000000", "0001111000011110000000",
    "0000000111111110000000", "1000000000000111110000", "1100000000001101101100",
    "0110000000000111011010", "0011000000101111100000", "0001100000000110111100",
    "0000110000001101110010", "0000011000000111101001",
]

# systematic [I_11 | A] generator of the [15,11,3] Hamming code
A_H4 = ["1100", "0110", "0011", "1101", "1010", "0101", "1110", "0111", "1111", "1011", "1001"]
# a basis of the dual of <A^T>, its orthonormalised form, and an orthogonal R
C_A_PERP = [
    "10000001010", "01000000101", "00100001110", "00010000111",
    "00001001111", "00000101011", "00000011001",
]
B_T = [
    "10000001010", "01000000101", "01100001011", "10010001101",
    "11111001001", "11000010110", "11100110011",
]
R_H4 = ["0110010", "0100110", "1110101", "0001000", "0100011", "1010111", "1100010"]

A_26 = [
    "10100001010000111000100010", "01010111100010000100001110", "00101000111001001100100000",
    "10110101101000001001001100", "01011010010000110011011110", "10001101110000110101010110",
    "11100110110100100111011001", "01110101111010011011100001", "00111100011111010101011010",
    "10111101000100110001000010", "11111110011110101011110101", "11011100000100000100011011",
    "11001011001111011110100010", "11000110101001100101010101", "01100000110101100111100101",
    "00110100111110000101100011", "00011011000111000011010111", "10101011010000101100110011",
    "11110001010010111101011111", "01111011101010100010000110", "10011111111011111011001101",
    "11101100100110100000110000", "11010000011100001110011110", "01101001001111111111000111",
    "10010100000111000010110101", "01001110111000110110100100",
]

HEX_91 = [
    "9178c93aad6db724a17528e", "524e3aa98bd1d2a3d2e97c8", "302ae870277bdc487aa05b4",
    "0b12221ce1c887cef9dbcee", "070e41fc1ff701c1f1073f0", "00fe7803ff87ffc03e1f02c",
    "0001f800007fffffc01ffcc", "000007ffffffffffffe0006",
]
HEX_98 = [
    "80c090d0a8f8e4ecdcbcdafb8", "40604868547c72766e5e6d7d0", "203024342a3e393b372fb6bf8",
    "1018121a151f9c9d9b975b5f0", "080c090d8a8f4ececdcbadae4", "0406848645c72767e6e5d6d70",
    "02034243a2e393b373f26bea4", "018121a151f1c9d9b979b5f50",
]
HEX_114 = [
    "80e090b0a898f8a4d4f4ecdcbcff8", "40704858544c7c526a7a766e5e7f0",
    "2038242c2a263e29353d3b372fbe4", "101c121615131f949a9e9d9b97df0",
    "080e090b8a898f4a4d4fcecdcbee4", "0407848545c4c725a6a767e6e5f70",
    "028342c2a262e39253d3b373f2fa4", "01c121615131f149a9e9d9b979fd0",
]
HEX_191 = [
    "80b651765a7a08cb754997e9700e853acce5f301d7b8d1f0",
    "412edb24a676e85bece929278b70dcfcce124854b11e71bc",
    "210b43ef6f85d10d00d633f55764b8bb8959f8a1faee0188",
    "1036f4a81c1885b45aafcb87cfc8f1e8db0d3f83e1f048c6",
    "099cc9b65fffbfb4aadb2a19329df8981180900c47bb2ae4",
    "05215e997ff8240c8ef265c31041575498e35bba0776d7ec",
    "028caea7f532f75d2d15c371119b4272a337bf84ed22c538",
    "006106140007bffe9bd3bdef901800896a5abedbffdfd4e0",
]

WD_22_4 = {0: 1, 4: 4, 6: 73, 8: 318, 10: 628, 12: 628, 14: 318, 16: 73, 18: 4, 22: 1}
WD_16_7 = {0: 1, 4: 6, 6: 32, 8: 50, 10: 32, 12: 6, 16: 1}


def _systematic(block: list[str]) -> BinaryMatrix:
    k = len(block)
    rows = ["0" * i + "1" + "0" * (k - i - 1) + a for i, a in enumerate(block)]
    return BinaryMatrix.from_strings(rows)


def hamming4_systematic() -> LinearCode:
    return LinearCode(_systematic(A_H4))


def code_52_26() -> LinearCode:
    return LinearCode(_systematic(A_26))


def hamming5_systematic() -> LinearCode:
    """The [31,26,3] code formed by the first five columns of ``A_26``."""
    return LinearCode(_systematic([row[:5] for row in A_26]))


def block_b_h5() -> BinaryMatrix:
    """The remaining 26x21 part of ``A_26``: an orthonormal block for the code above."""
    return BinaryMatrix.from_strings([row[5:] for row in A_26])


def basis_b_h4() -> BinaryMatrix:
    """The orthonormal 11x7 block ``B`` whose transpose is ``B_T``."""
    return BinaryMatrix.from_strings(B_T).T


@dataclass(frozen=True)
class Fixture:
    name: str
    build: Callable[[], LinearCode]
    n: int
    k: int
    d: int | None
    hull: int
    weight_distribution: dict[int, int] | None = None
    self_dual: bool | None = None
    data: tuple[str, ...] = field(default=(), repr=False)


@dataclass(frozen=True)
class FixtureCheck:
    name: str
    ok: bool
    detail: str


def _from(rows: list[str]) -> Callable[[], LinearCode]:
    return lambda: LinearCode.from_strings(rows)


def _hex(rows: list[str], n: int) -> Callable[[], LinearCode]:
    return lambda: parse_hex(rows, n)


FIXTURES: tuple[Fixture, ...] = (
    Fixture("code_9_5_3", _from(G_9_5), 9, 5, 3, 3, data=tuple(G_9_5)),
    Fixture("embedding_11_5_4", _from(G_11_5), 11, 5, 4, 5, data=tuple(G_11_5)),
    Fixture("code_11_7_3", _from(G_11_7), 11, 7, 3, 2, data=tuple(G_11_7)),
    Fixture("embedding_16_7_4", _from(G_16_7), 16, 7, 4, 7, WD_16_7, data=tuple(G_16_7)),
    Fixture("hamming_15_11_3", hamming4_systematic, 15, 11, 3, 4, data=tuple(A_H4)),
    Fixture("selfdual_22_11_4", _from(C_22_4), 22, 11, 4, 11, WD_22_4, True, tuple(C_22_4)),
    Fixture("shortened_golay_22_11_6", _from(C_22_6), 22, 11, 6, 11, None, True, tuple(C_22_6)),
    Fixture("selfdual_52_26_8", code_52_26, 52, 26, 8, 26, None, True, tuple(A_26)),
    Fixture("so_91_8_42", _hex(HEX_91, 91), 91, 8, 42, 8, data=tuple(HEX_91)),
    Fixture("so_98_8_46", _hex(HEX_98, 98), 98, 8, 46, 8, data=tuple(HEX_98)),
    Fixture("so_114_8_54", _hex(HEX_114, 114), 114, 8, 54, 8, data=tuple(HEX_114)),
    Fixture("so_191_8_94", _hex(HEX_191, 191), 191, 8, 94, 8, data=tuple(HEX_191)),
)


def fixture(name: str) -> Fixture:
    for f in FIXTURES:
        if f.name == name:
            return f
    raise KeyError(name)


def checksum() -> str:
    """SHA-256 over every transcribed matrix and expected value."""
    payload = {
        "fixtures": [
            [f.name, f.n, f.k, f.d, f.hull, sorted((f.weight_distribution or {}).items()), f.self_dual, list(f.data)]
            for f in FIXTURES
        ],
        "extra": [C_A_PERP, B_T, R_H4, ORTHOGONAL_GROUP_7, COSETS_7],
    }
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def check_fixture(f: Fixture) -> FixtureCheck:
    try:
        C = f.build()
    except Exception as exc:  # parse failures are reported, not raised
        return FixtureCheck(f.name, False, f"build failed: {exc}")
    problems = []
    if (C.n, C.k) != (f.n, f.k):
        problems.append(f"[n,k]=[{C.n},{C.k}] expected [{f.n},{f.k}]")
    if C.hull_dim() != f.hull:
        problems.append(f"hull={C.hull_dim()} expected {f.hull}")
    if f.hull == f.k and not C.is_self_orthogonal():
        problems.append("not self-orthogonal")
    if f.self_dual is not None and C.is_self_dual() != f.self_dual:
        problems.append(f"self_dual={C.is_self_dual()}")
    d = None
    if f.d is not None:
        d = C.min_distance()
        if d != f.d:
            problems.append(f"d={d} expected {f.d}")
    if f.weight_distribution is not None:
        wd = C.weight_distribution().nonzero()
        if wd != f.weight_distribution:
            problems.append(f"weight distribution {wd}")
    ok = not problems
    detail = "; ".join(problems) if problems else f"[{C.n},{C.k},{d}] hull={C.hull_dim()}"
    return FixtureCheck(f.name, ok, detail)


def verify_all() -> list[FixtureCheck]:
    return [check_fixture(f) for f in FIXTURES]
