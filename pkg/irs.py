"""Interleaved RS words, row-error patterns and the row-burst channel.

An IRS word is an n x l matrix whose l columns are codewords of one RS
code. A channel burst corrupts whole rows, so an error pattern is a set of
row indices plus one nonzero error row per index.

Matrix text format (shared with the CLI):

    n l q
    <l lowercase-hex symbols>     (n lines)

The raw format has the same header line followed by n*l bytes, row-major,
one byte per symbol (q <= 256 only).
"""

import dataclasses
import logging
from typing import Annotated, Literal, Tuple, Union

import numpy as np
import pydantic

from errors import DimensionError, MatrixFormatError
from gf import Field
from gf_linalg import rank
from rs_code import RsSpec, encode_info_matrix

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True, eq=False)
class IrsWord:
    data: np.ndarray

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def l(self) -> int:
        return self.data.shape[1]


@dataclasses.dataclass(frozen=True, eq=False)
class ReceivedWord:
    data: np.ndarray

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def l(self) -> int:
        return self.data.shape[1]


@dataclasses.dataclass(frozen=True, eq=False)
class ErrorPattern:
    """Sorted row support F and the matching nonzero error rows E_F"""

    support: Tuple[int, ...]
    rows: np.ndarray

    def __post_init__(self):
        rows = np.asarray(self.rows, dtype=np.int64)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "support", tuple(int(i) for i in self.support))
        if rows.ndim != 2 or rows.shape[0] != len(self.support):
            raise DimensionError(f"{len(self.support)} support rows but error matrix of shape {rows.shape}")
        if list(self.support) != sorted(set(self.support)):
            raise DimensionError(f"support must be sorted and duplicate-free: {self.support}")
        if self.support and self.support[0] < 0:
            raise DimensionError(f"negative row index in support {self.support}")
        if rows.size and not np.all(rows.any(axis=1)):
            raise DimensionError("every error row in the pattern must be nonzero")

    @property
    def f(self) -> int:
        return len(self.support)

    @property
    def l(self) -> int:
        return self.rows.shape[1]

    @classmethod
    def empty(cls, l: int) -> "ErrorPattern":
        return cls(support=(), rows=np.zeros((0, l), dtype=np.int64))

    def to_matrix(self, n: int) -> np.ndarray:
        """Dense n x l error matrix E"""
        out = np.zeros((n, self.l), dtype=np.int64)
        out[list(self.support)] = self.rows
        return out


# ----- channel modes ---------------------------------------------------------

class FixedF(pydantic.BaseModel):
    """Exactly f erroneous rows on a uniform f-subset; with independent=True
    the rows are re-drawn until they are linearly independent."""

    model_config = pydantic.ConfigDict(frozen=True)

    kind: Literal["fixed"] = "fixed"
    f: int = pydantic.Field(ge=0)
    independent: bool = False


class BernoulliRows(pydantic.BaseModel):
    """Every row is hit independently with probability p (inner-code FER)."""

    model_config = pydantic.ConfigDict(frozen=True)

    kind: Literal["bernoulli"] = "bernoulli"
    p: float = pydantic.Field(ge=0.0, le=1.0)


class DependentRows(pydantic.BaseModel):
    """f erroneous rows where the last one duplicates an earlier one."""

    model_config = pydantic.ConfigDict(frozen=True)

    kind: Literal["dependent"] = "dependent"
    f: int = pydantic.Field(ge=2)


ChannelMode = Annotated[Union[FixedF, BernoulliRows, DependentRows], pydantic.Field(discriminator="kind")]


# ----- operations ------------------------------------------------------------

def encode_irs(info, spec: RsSpec) -> IrsWord:
    info = np.asarray(info, dtype=np.int64)
    if info.ndim != 2 or info.shape[0] != spec.k or info.shape[1] < 1:
        raise DimensionError(f"information matrix must be {spec.k} x l with l >= 1, got shape {info.shape}")
    return IrsWord(data=encode_info_matrix(info, spec))


def apply_errors(word, pattern: ErrorPattern) -> ReceivedWord:
    """Y = A + E; rows outside the support are left untouched."""
    data = np.array(word.data, dtype=np.int64, copy=True)
    if pattern.f and pattern.l != data.shape[1]:
        raise DimensionError(f"error rows have width {pattern.l}, word has {data.shape[1]} columns")
    if pattern.support and pattern.support[-1] >= data.shape[0]:
        raise DimensionError(f"error row {pattern.support[-1]} outside a word of {data.shape[0]} rows")
    if pattern.f:
        data[list(pattern.support)] ^= pattern.rows
    return ReceivedWord(data=data)


def _nonzero_rows(count: int, l: int, q: int, rng: np.random.Generator) -> np.ndarray:
    """Rows uniform over GF(q)^l without the zero vector (rejection sampling)."""
    rows = rng.integers(0, q, size=(count, l), dtype=np.int64)
    zero = ~rows.any(axis=1)
    while zero.any():
        rows[zero] = rng.integers(0, q, size=(int(zero.sum()), l), dtype=np.int64)
        zero = ~rows.any(axis=1)
    return rows


def independent_rows(field: Field, count: int, l: int, rng: np.random.Generator) -> np.ndarray:
    """count uniform nonzero rows, re-drawn until linearly independent."""
    if count > l:
        raise DimensionError(f"{count} rows of width {l} cannot be linearly independent")
    while True:
        rows = _nonzero_rows(count, l, field.q, rng)
        if rank(field, rows) == count:
            return rows


def sample_error_pattern(n: int, l: int, mode, rng: np.random.Generator, field: Field) -> ErrorPattern:
    q = field.q

    if isinstance(mode, BernoulliRows):
        support = np.flatnonzero(rng.random(n) < mode.p)
        rows = _nonzero_rows(support.size, l, q, rng)
        return ErrorPattern(support=tuple(support), rows=rows)

    if mode.f > n:
        raise DimensionError(f"cannot place f={mode.f} erroneous rows in a word of {n} rows")
    support = np.sort(rng.choice(n, size=mode.f, replace=False))

    if isinstance(mode, FixedF):
        if not mode.independent:
            return ErrorPattern(support=tuple(support), rows=_nonzero_rows(mode.f, l, q, rng))
        return ErrorPattern(support=tuple(support), rows=independent_rows(field, mode.f, l, rng))

    if isinstance(mode, DependentRows):
        rows = _nonzero_rows(mode.f, l, q, rng)
        rows[-1] = rows[rng.integers(0, mode.f - 1)]
        return ErrorPattern(support=tuple(support), rows=rows)

    raise TypeError(f"unknown channel mode {mode!r}")


# ----- matrix file codec -----------------------------------------------------

def _check_q(q: int, line: int) -> None:
    if q < 4 or q > 1 << 16 or q & (q - 1):
        raise MatrixFormatError(f"field size q={q} is not a power of two in 4..65536", line=line)


def _parse_header(line_text: str) -> Tuple[int, int, int]:
    tokens = line_text.split()
    if len(tokens) != 3:
        raise MatrixFormatError(f"header must be 'n l q', got {line_text!r}", line=1)
    values = []
    for col, token in enumerate(tokens, 1):
        try:
            values.append(int(token))
        except ValueError:
            raise MatrixFormatError(f"header value {token!r} is not an integer", line=1, column=col) from None
    n, l, q = values
    if n < 0 or l < 1:
        raise MatrixFormatError(f"invalid dimensions n={n}, l={l}", line=1)
    _check_q(q, line=1)
    return n, l, q


def loads_matrix(text: str) -> Tuple[np.ndarray, int]:
    """Parse the text format; returns (matrix, q)."""
    lines = text.splitlines()
    if not lines:
        raise MatrixFormatError("empty matrix file", line=1)
    n, l, q = _parse_header(lines[0])

    body = [(i, s) for i, s in enumerate(lines[1:], 2) if s.strip()]
    if len(body) != n:
        raise MatrixFormatError(f"expected {n} matrix rows, found {len(body)}", line=len(lines) + 1)

    out = np.zeros((n, l), dtype=np.int64)
    for r, (line_no, text_row) in enumerate(body):
        tokens = text_row.split()
        if len(tokens) != l:
            raise MatrixFormatError(f"expected {l} symbols, found {len(tokens)}", line=line_no)
        for c, token in enumerate(tokens):
            try:
                value = int(token, 16)
            except ValueError:
                raise MatrixFormatError(f"malformed hex symbol {token!r}", line=line_no, column=c + 1) from None
            if not 0 <= value < q:
                raise MatrixFormatError(f"symbol {token!r} outside GF({q})", line=line_no, column=c + 1)
            out[r, c] = value
    return out, q


def dumps_matrix(matrix, q: int) -> str:
    matrix = np.asarray(matrix, dtype=np.int64)
    n, l = matrix.shape
    lines = [f"{n} {l} {q}"]
    lines.extend(" ".join(format(int(x), "x") for x in row) for row in matrix)
    return "\n".join(lines) + "\n"


def decode_matrix_bytes(data: bytes, fmt: str = "text") -> Tuple[np.ndarray, int]:
    if fmt == "text":
        try:
            return loads_matrix(data.decode("ascii"))
        except UnicodeDecodeError as e:
            raise MatrixFormatError(f"non-ASCII input at byte {e.start}", line=1) from None
    if fmt != "raw":
        raise MatrixFormatError(f"unknown matrix format {fmt!r}")

    header, sep, payload = data.partition(b"\n")
    if not sep:
        raise MatrixFormatError("raw input has no header line", line=1)
    n, l, q = _parse_header(header.decode("ascii", errors="replace"))
    if q > 256:
        raise MatrixFormatError(f"raw format holds one byte per symbol; q={q} is too large", line=1)
    if len(payload) != n * l:
        raise MatrixFormatError(f"raw payload has {len(payload)} bytes, expected {n * l}", line=2)
    matrix = np.frombuffer(payload, dtype=np.uint8).astype(np.int64).reshape(n, l)
    if matrix.size and matrix.max() >= q:
        bad = int(np.flatnonzero(matrix.ravel() >= q)[0])
        raise MatrixFormatError(f"symbol {matrix.ravel()[bad]:#x} outside GF({q})", line=2, column=bad + 1)
    return matrix, q


def encode_matrix_bytes(matrix, q: int, fmt: str = "text") -> bytes:
    matrix = np.asarray(matrix, dtype=np.int64)
    if fmt == "text":
        return dumps_matrix(matrix, q).encode("ascii")
    if fmt != "raw":
        raise MatrixFormatError(f"unknown matrix format {fmt!r}")
    if q > 256:
        raise MatrixFormatError(f"raw format holds one byte per symbol; q={q} is too large")
    n, l = matrix.shape
    return f"{n} {l} {q}\n".encode("ascii") + matrix.astype(np.uint8).tobytes()


def read_matrix(path, fmt: str = "text") -> Tuple[np.ndarray, int]:
    with open(path, "rb") as fh:
        return decode_matrix_bytes(fh.read(), fmt)


def write_matrix(path, matrix, q: int, fmt: str = "text") -> None:
    with open(path, "wb") as fh:
        fh.write(encode_matrix_bytes(matrix, q, fmt))
