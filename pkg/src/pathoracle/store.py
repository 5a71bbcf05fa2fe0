"""Oracle files: a versioned magic line followed by a pickle payload.

Only load files you wrote yourself; unpickling runs arbitrary code.
"""

from __future__ import annotations

import pickle

from .errors import GraphFormatError

MAGIC = b"PATHORACLE 1\n"


def save_oracle(oracle, path) -> None:
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        pickle.dump(oracle, fh, protocol=pickle.HIGHEST_PROTOCOL)


def load_oracle(path):
    with open(path, "rb") as fh:
        head = fh.read(len(MAGIC))
        if head != MAGIC:
            raise GraphFormatError(f"{path}: not an oracle file (bad header {head[:16]!r})")
        return pickle.load(fh)
