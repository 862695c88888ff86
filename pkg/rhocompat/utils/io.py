import csv
import io
import json
import sys
import numpy as np


def _open_text(path):
    """
    Helper function reading text from path or stdin
    """
    if path is None or str(path) == "-":
        return sys.stdin.read()
    with open(path, "r", newline="") as f:
        return f.read()


def _parse_row(row):
    """
    Helper function for float conversion of csv fields
    """
    return [float(x.strip()) for x in row]


def parse_csv_rows(text, allow_header=False):
    """
    Parses comma separated numbers.

    Parameters
    ----------
    text: str
        The csv text
    allow_header: bool
        Flag for skipping a non-numeric first row

    Returns
    -------
    values: numpy.ndarray
        The values, shape: (n_rows, n_cols)
    header: list of str or None
        The header, if found

    :group: utils

    """
    rows = [r for r in csv.reader(io.StringIO(text)) if len(r) and any(x.strip() for x in r)]
    if not len(rows):
        raise ValueError("CSV: No data found")

    header = None
    if allow_header:
        try:
            _parse_row(rows[0])
        except ValueError:
            header = [x.strip() for x in rows[0]]
            rows = rows[1:]

    values = []
    for i, r in enumerate(rows):
        try:
            values.append(_parse_row(r))
        except ValueError:
            raise ValueError(f"CSV: Non-numeric entry in data row {i}: {r}")
    ncols = {len(r) for r in values}
    if len(ncols) != 1:
        raise ValueError(f"CSV: Rows of unequal length found, lengths {sorted(ncols)}")

    return np.array(values, dtype=np.float64), header


def read_matrix_csv(path):
    """
    Reads a matrix csv file: d lines of d comma
    separated numbers, no header.

    Parameters
    ----------
    path: str
        The file path, or '-' for stdin

    Returns
    -------
    m: numpy.ndarray
        The matrix, shape: (d, d)

    :group: utils

    """
    m, __ = parse_csv_rows(_open_text(path), allow_header=False)
    return m


def read_sample_csv(path):
    """
    Reads a sample csv file: n rows of d columns,
    with optional header row.

    Parameters
    ----------
    path: str
        The file path, or '-' for stdin

    Returns
    -------
    values: numpy.ndarray
        The sample values, shape: (n, d)
    header: list of str or None
        The header, if found

    :group: utils

    """
    return parse_csv_rows(_open_text(path), allow_header=True)


def format_csv(values, header=None):
    """
    Formats a 2D array as csv text with
    round-trip float precision.

    Parameters
    ----------
    values: array-like
        The data, shape: (n_rows, n_cols)
    header: list of str, optional
        The column names

    Returns
    -------
    str :
        The csv text

    :group: utils

    """
    values = np.atleast_2d(np.asarray(values, dtype=np.float64))
    lines = []
    if header is not None:
        lines.append(",".join(header))
    for row in values:
        lines.append(",".join(repr(float(x)) for x in row))
    return "\n".join(lines) + "\n"


def to_jsonable(obj):
    """
    Converts numpy containers into json types.

    Parameters
    ----------
    obj: Any
        The object

    Returns
    -------
    Any :
        The json compatible object

    :group: utils

    """
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def format_json(obj):
    """
    Formats an object as indented json text.

    Parameters
    ----------
    obj: Any
        The object, numpy types allowed

    Returns
    -------
    str :
        The json text

    :group: utils

    """
    return json.dumps(to_jsonable(obj), indent=2) + "\n"


def read_json(path):
    """
    Reads a json file.

    Parameters
    ----------
    path: str
        The file path, or '-' for stdin

    Returns
    -------
    Any :
        The parsed content

    :group: utils

    """
    return json.loads(_open_text(path))


def write_text(text, path=None):
    """
    Writes text to a file or to stdout.

    Parameters
    ----------
    text: str
        The text
    path: str, optional
        The file path, None or '-' for stdout

    :group: utils

    """
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(path, "w", newline="") as f:
            f.write(text)
