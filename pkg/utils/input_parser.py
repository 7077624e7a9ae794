import json
import os
import re
from fractions import Fraction

from loguru import logger
from tqdm import tqdm

from utils.algebra import QCosPi8, QSqrt2
from utils.reciprocal import XiVector

_DECIMAL = re.compile(r"[+-]?(?:\d+\.\d*|\.\d+|\d+(?=[eE]))(?:[eE][+-]?\d+)?")
_ROOT = r"(?:sqrt\(?2\)?|√2)"
_TERM = re.compile(
    r"\s*(?P<sign>[+-])?\s*(?:(?P<coef>\d+(?:/\d+)?)\s*(?:\*\s*)?(?P<root>" + _ROOT + r")?|(?P<bare>" + _ROOT + r"))\s*"
)


def parse_exact_token(token):
    """
    Parse one exact token: an integer, "p/q", or a sum of terms like "3-2*sqrt2".

    Args:
        token (str): Token text.

    Returns:
        Fraction | QSqrt2: Rational when no √2 part survives.
    """
    text = token.strip()
    if not text:
        raise ValueError("Empty xi token")
    a, b = Fraction(0), Fraction(0)
    pos = 0
    while pos < len(text):
        match = _TERM.match(text, pos)
        if match is None or match.end() == pos or (pos > 0 and match.group("sign") is None):
            raise ValueError(f"Malformed xi token: {token!r}")
        sign = -1 if match.group("sign") == "-" else 1
        if match.group("bare"):
            b += sign
        else:
            coef = Fraction(match.group("coef"))
            if match.group("root"):
                b += sign * coef
            else:
                a += sign * coef
        pos = match.end()
    return a if b == 0 else QSqrt2(a, b)


def parse_token(token, exact=False):
    """Decimal tokens become floats; exact mode rejects them."""
    text = str(token).strip()
    if _DECIMAL.fullmatch(text):
        if exact:
            raise ValueError(f"Decimal xi token {text!r} is not allowed in exact mode")
        return float(text)
    try:
        return parse_exact_token(text)
    except ZeroDivisionError:
        raise ValueError(f"Zero denominator in xi token: {token!r}")


def parse_xi_tokens(text, n=None, exact=False):
    """
    Parse a comma-separated xi list.

    Args:
        text (str | list): "1,4,1,1,2,3" style text, or a list of tokens / numbers.
        n (int, optional): Matrix size; defaults to len(tokens) + 1.
        exact (bool): Reject decimals instead of switching to numeric mode.

    Returns:
        XiVector: All values float as soon as one token is a decimal.
    """
    if isinstance(text, str):
        tokens = [t for t in text.split(",")]
        if len(tokens) == 1 and not tokens[0].strip():
            tokens = []
    else:
        tokens = list(text)
    values = []
    for token in tokens:
        if isinstance(token, bool):
            raise ValueError("Boolean is not a valid xi value")
        if isinstance(token, (Fraction, QSqrt2, QCosPi8)):
            values.append(token)
        elif isinstance(token, int):
            values.append(Fraction(token))
        elif isinstance(token, float):
            if exact:
                raise ValueError(f"Decimal xi value {token!r} is not allowed in exact mode")
            values.append(token)
        else:
            values.append(parse_token(token, exact=exact))
    if any(isinstance(v, float) for v in values):
        values = [float(v) for v in values]
    if n is not None and len(values) != n - 1:
        raise ValueError(f"Expected {n - 1} xi values for n = {n}, got {len(values)}")
    if not values:
        raise ValueError("No xi values given")
    return XiVector.from_values(values, n=n)


class InputParser:
    def __init__(self, exact=False):
        self.supported_formats = ['json', 'txt']
        self.exact = exact

    def parse_input(self, input_data, n=None):
        """
        Parse and standardize xi input.

        Args:
            input_data (str | list | XiVector): File path, token list, or xi vector.
            n (int, optional): Expected matrix size.

        Returns:
            list: XiVector objects (a file may hold several).
        """
        if isinstance(input_data, XiVector):
            return [input_data]
        elif isinstance(input_data, str):  # File path
            return self._parse_file(input_data, n=n)
        elif isinstance(input_data, (list, tuple)):
            return [parse_xi_tokens(input_data, n=n, exact=self.exact)]
        else:
            raise TypeError("Input must be a file path, a list of xi values, or an XiVector.")

    def _parse_file(self, file_path, n=None):
        """
        Internal function to parse a xi file.

        JSON files hold one {"n": 7, "xi": [...]} object, a list of them, or a
        bare list of tokens. Text files hold one comma-separated vector per
        line; '#' starts a comment.

        Args:
            file_path (str): Path to the input file.
            n (int, optional): Expected matrix size, used when the file gives none.

        Returns:
            list: XiVector objects.
        """
        if not os.path.exists(file_path):
            raise FileNotFoundError(f"File {file_path} does not exist.")

        file_extension = file_path.split('.')[-1].lower()
        if file_extension not in self.supported_formats:
            raise ValueError(f"Unsupported file format: {file_extension}")

        if file_extension == 'txt':
            vectors = []
            with open(file_path) as f:
                for line in f:
                    line = line.split('#', 1)[0].strip()
                    if line:
                        vectors.append(parse_xi_tokens(line, n=n, exact=self.exact))
            return vectors

        with open(file_path) as f:
            payload = json.load(f)
        if isinstance(payload, dict):
            payload = [payload]
        elif isinstance(payload, list) and not any(isinstance(item, (dict, list)) for item in payload):
            payload = [{"xi": payload}]
        vectors = []
        for item in payload:
            if isinstance(item, list):
                item = {"xi": item}
            if not isinstance(item, dict) or "xi" not in item:
                raise ValueError(f"Expected objects with an 'xi' field in {file_path}")
            tokens = item["xi"]
            if isinstance(tokens, str):
                tokens = tokens.split(',')
            vectors.append(parse_xi_tokens(tokens, n=item.get("n", n), exact=self.exact))
        return vectors

    def batch_parse(self, directory_path, file_extensions=None, n=None):
        """
        Batch parse all xi files in the specified directory, including subdirectories.

        Args:
            directory_path (str): Path to the directory containing xi files.
            file_extensions (list, optional): Extensions to keep. Defaults to self.supported_formats.
            n (int, optional): Expected matrix size.

        Returns:
            list: {"file": path, "entry": position in file, "xi": XiVector} dictionaries,
                  in sorted path order.
        """
        if not os.path.exists(directory_path):
            raise FileNotFoundError(f"Directory {directory_path} does not exist.")

        if file_extensions is None:
            file_extensions = self.supported_formats

        parsed_vectors = []
        all_files = []

        for root, _, files in os.walk(directory_path):
            for file_name in files:
                file_extension = file_name.split('.')[-1].lower()
                if file_extension in file_extensions:
                    all_files.append(os.path.join(root, file_name))

        for file_path in tqdm(sorted(all_files), desc="Parsing files"):
            try:
                for entry, xi in enumerate(self.parse_input(file_path, n=n)):
                    parsed_vectors.append({"file": file_path, "entry": entry, "xi": xi})
            except Exception as e:
                logger.warning("Failed to parse {}: {}", file_path, e)

        return parsed_vectors
