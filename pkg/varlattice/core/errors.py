"""Error hierarchy. The exit code of each class is the command line contract."""
from typing import Any, Dict, Optional


class VarLatticeError(Exception):
    """Base class for every error raised by varlattice."""

    exit_code = 2

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_payload(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {'error': type(self).__name__, 'message': self.message}
        if self.details:
            payload['details'] = {key: _plain(value) for key, value in self.details.items()}
        return payload


def _plain(value: Any) -> Any:
    if isinstance(value, (list, tuple, set, frozenset)):
        return [_plain(v) for v in value]
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return str(value)


class InputError(VarLatticeError):
    """Malformed or unsupported input. Exit code 2."""

    exit_code = 2


class MathematicalError(VarLatticeError):
    """The input is well formed but the structure it describes is not the expected one. Exit code 1."""

    exit_code = 1


class WordSyntaxError(InputError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}", text=text, position=position)
        self.position = position


class InvalidWord(InputError):
    pass


class UndefinedLetter(InputError):
    def __init__(self, letter: str):
        super().__init__(f"Substitution is not defined on letter {letter}", letter=letter)
        self.letter = letter


class UnsupportedUnary(InputError):
    def __init__(self, word: Any):
        super().__init__(f"Pattern order is defined on semigroup words only, got {word}", word=word)


class DegreeMismatch(InputError):
    def __init__(self, left: int, right: int):
        super().__init__(f"Degree mismatch: {left} != {right}", left=left, right=right)


class DegreeTooLarge(InputError):
    def __init__(self, n: int, limit: int):
        super().__init__(f"Degree {n} exceeds the supported maximum {limit}", n=n, limit=limit)


class InvalidPermutation(InputError):
    pass


class NotASubgroup(InputError):
    pass


class UnsupportedKind(InputError):
    pass


class InvalidHandle(InputError):
    pass


class TooLarge(InputError):
    def __init__(self, what: str, limit: int):
        super().__init__(f"{what} exceeds the limit of {limit}", limit=limit)


class NotUnary(InputError):
    pass


class MultiLetter(InputError):
    pass


class PreconditionFailed(InputError):
    pass


class SchemaError(InputError):
    def __init__(self, message: str, messages: Optional[Dict[str, Any]] = None):
        super().__init__(message, messages=str(messages or {}))


class NotALattice(MathematicalError):
    def __init__(self, pair, reason: str):
        super().__init__(f"Not a lattice: {pair[0]} and {pair[1]} have no {reason}", pair=pair, reason=reason)
        self.pair = tuple(pair)


class CycleDetected(MathematicalError):
    def __init__(self, cycle):
        super().__init__(f"Cover relation contains a cycle: {cycle}", cycle=cycle)
        self.cycle = cycle


class Undecided(MathematicalError):
    pass
