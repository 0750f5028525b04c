"""Line-oriented text files for codes and received words.

A code file reads::

    version 1
    field 2 2 1 1 1
    k 2
    n 3
    meta construction "pyramid"
    columns
    1 0
    0 1
    1 1

``field`` gives p, m and the monic modulus coefficients (highest degree
first). Each ``meta`` line holds one key and a JSON value. Columns follow,
one per line. Lines starting with ``#`` are comments.

A word file is a single line of n tokens, ``?`` marking an erasure.
"""

import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from pydantic import ValidationError

from .code_model import LinearCode, locality_profile, min_distance
from .config import DEFAULT_BUDGETS, Budgets
from .exceptions import CodeFileError, IntegrityError, ParameterError
from .field_algebra import FieldSpec
from .models import CodeFileMeta
from .utils import format_locality

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1
ERASURE_TOKEN = "?"

PathLike = Union[str, Path]


def _json(value: Any) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


def serialize_code(code: LinearCode) -> str:
    """Render a code in the text format."""
    field = code.field
    metadata = dict(code.metadata)
    if code.systematic_info is not None:
        metadata["systematic_info"] = list(code.systematic_info)
    if "localities" in metadata:
        metadata["localities"] = [
            format_locality(v) if math.isinf(v) else int(v)
            for v in metadata["localities"]
        ]

    lines = [
        f"version {FORMAT_VERSION}",
        "field " + " ".join(str(v) for v in (field.p, field.m) + field.modulus),
        f"k {code.k}",
        f"n {code.n}",
    ]
    lines.extend(f"meta {key} {_json(metadata[key])}" for key in sorted(metadata))
    lines.append("columns")
    lines.extend(" ".join(str(v) for v in column) for column in code.points)
    return "\n".join(lines) + "\n"


def _ints(tokens: Sequence[str], path: str, line: int) -> List[int]:
    try:
        return [int(tok) for tok in tokens]
    except ValueError as e:
        raise CodeFileError(path, f"expected integers: {e}", line)


def _header(
    lines: List[Tuple[int, str]], keyword: str, path: str
) -> Tuple[int, List[str]]:
    if not lines:
        raise CodeFileError(path, f"missing '{keyword}' line")
    number, text = lines.pop(0)
    tokens = text.split()
    if tokens[0] != keyword:
        raise CodeFileError(path, f"expected '{keyword}', found '{tokens[0]}'", number)
    return number, tokens[1:]


def _single(lines: List[Tuple[int, str]], keyword: str, path: str) -> int:
    number, tokens = _header(lines, keyword, path)
    values = _ints(tokens, path, number)
    if len(values) != 1 or values[0] < 1:
        raise CodeFileError(path, f"'{keyword}' needs one positive integer", number)
    return values[0]


def parse_code(text: str, path: str = "<string>") -> LinearCode:
    """Parse the text format.

    Raises:
        CodeFileError: On any syntax error, an invalid field or columns that
            do not form a code
    """
    lines = [
        (number, line.strip())
        for number, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.strip().startswith("#")
    ]

    number, tokens = _header(lines, "version", path)
    if _ints(tokens, path, number) != [FORMAT_VERSION]:
        version = " ".join(tokens)
        raise CodeFileError(path, f"unsupported format version {version}", number)

    number, tokens = _header(lines, "field", path)
    values = _ints(tokens, path, number)
    if len(values) < 3:
        raise CodeFileError(path, "field needs p, m and the modulus", number)
    try:
        field = FieldSpec(p=values[0], m=values[1], modulus=tuple(values[2:]))
    except (ParameterError, ValidationError) as e:
        raise CodeFileError(path, str(e), number)

    k = _single(lines, "k", path)
    n = _single(lines, "n", path)

    raw_meta: Dict[str, Any] = {}
    while lines and lines[0][1].split()[0] == "meta":
        number, text_line = lines.pop(0)
        parts = text_line.split(None, 2)
        if len(parts) != 3:
            raise CodeFileError(path, "meta needs a key and a JSON value", number)
        try:
            raw_meta[parts[1]] = json.loads(parts[2])
        except json.JSONDecodeError as e:
            raise CodeFileError(path, f"bad JSON for '{parts[1]}': {e}", number)
    try:
        meta = CodeFileMeta.model_validate(raw_meta)
    except ValidationError as e:
        raise CodeFileError(path, f"invalid metadata: {e}")

    number, tokens = _header(lines, "columns", path)
    columns = []
    for number, text_line in lines:
        column = _ints(text_line.split(), path, number)
        if len(column) != k:
            reason = f"column has {len(column)} entries, expected {k}"
            raise CodeFileError(path, reason, number)
        columns.append(column)
    if len(columns) != n:
        raise CodeFileError(path, f"found {len(columns)} columns, expected n = {n}")

    metadata = meta.model_dump(exclude_none=True)
    metadata.pop("systematic_info", None)
    if not metadata.get("params"):
        metadata.pop("params", None)
    try:
        return LinearCode(field, columns, meta.systematic_info, metadata)
    except ParameterError as e:
        raise CodeFileError(path, str(e))


def verify_metadata(code: LinearCode, budgets: Budgets = DEFAULT_BUDGETS) -> None:
    """Recompute every re-derivable metadata field.

    Raises:
        IntegrityError: If a stored distance or locality disagrees
        BudgetExceededError: If a recomputation exceeds its budget
    """
    stored = code.metadata.get("distance")
    if stored is not None:
        measured = min_distance(code, budgets=budgets)
        if measured != stored:
            raise IntegrityError(
                f"Stored distance {stored} but the code has distance {measured}"
            )
    stored_localities = code.metadata.get("localities")
    if stored_localities is not None:
        profile = locality_profile(code, budgets)
        pairs = zip(stored_localities, profile.localities)
        wrong = [i for i, (a, b) in enumerate(pairs) if a != b]
        if wrong or len(stored_localities) != code.n:
            raise IntegrityError("Stored localities disagree with the code", wrong)
    logger.debug(f"Metadata of {code} verified")


def save_code(code: LinearCode, path: PathLike) -> None:
    """Write a code file.

    Raises:
        CodeFileError: If the file cannot be written
    """
    target = Path(path)
    try:
        target.write_text(serialize_code(code))
    except OSError as e:
        logger.warning(f"Failed to write {target}: {e}")
        raise CodeFileError(str(target), str(e))
    logger.info(f"Wrote {code} to {target}")


def load_code(
    path: PathLike, verify: bool = False, budgets: Budgets = DEFAULT_BUDGETS
) -> LinearCode:
    """Read a code file, optionally re-verifying its metadata.

    Raises:
        CodeFileError: If the file is unreadable or malformed
        IntegrityError: If ``verify`` finds stale metadata
    """
    source = Path(path)
    try:
        text = source.read_text()
    except OSError as e:
        logger.warning(f"Failed to read {source}: {e}")
        raise CodeFileError(str(source), str(e))
    code = parse_code(text, str(source))
    if verify:
        verify_metadata(code, budgets)
    logger.info(f"Loaded {code} from {source}")
    return code


def format_word(word: Sequence[Optional[int]]) -> str:
    return " ".join(ERASURE_TOKEN if v is None else str(v) for v in word)


def parse_word(text: str, path: str = "<string>") -> List[Optional[int]]:
    """Parse whitespace-separated symbols with ``?`` for erasures.

    Raises:
        CodeFileError: On tokens that are neither integers nor ``?``
    """
    word: List[Optional[int]] = []
    for token in text.split():
        if token == ERASURE_TOKEN:
            word.append(None)
            continue
        try:
            word.append(int(token))
        except ValueError:
            raise CodeFileError(path, f"bad symbol '{token}'")
    if not word:
        raise CodeFileError(path, "word is empty")
    return word


def load_word(path: PathLike) -> List[Optional[int]]:
    source = Path(path)
    try:
        text = source.read_text()
    except OSError as e:
        raise CodeFileError(str(source), str(e))
    return parse_word(text, str(source))
