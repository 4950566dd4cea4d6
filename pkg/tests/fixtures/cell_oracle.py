"""Brute-force guideword cell counter that reads ``.stpa`` text with regexes.

Deliberately shares no code with the parser or the rubric module: it only
understands the canonical layout the corpus files are stored in.
"""

import re

GUIDEWORDS = ("not_providing", "providing", "wrong_timing", "too_low", "too_high")

_LOOP = re.compile(r"^loop (\S+) \"[^\n]*\" \{\n(.*?)^\}", re.M | re.S)
_ACTIONS = re.compile(r"^  actions: \[([^\]]*)\];", re.M)
_UCA = re.compile(r"^uca \S+ on (\S+) guideword (\w+)", re.M)
_NA = re.compile(r"^na on (\S+) guideword (\w+)", re.M)


def count_cells(text: str) -> dict[str, dict[str, int]]:
    """Per loop id: counts of assessed, N/A and unassessed cells."""
    assessed = set(_UCA.findall(text))
    na = set(_NA.findall(text))
    out = {}
    for loop_id, body in _LOOP.findall(text):
        m = _ACTIONS.search(body)
        actions = [a.strip() for a in m.group(1).split(",")] if m else []
        counts = {"assessed": 0, "na": 0, "unassessed": 0, "actions": len(actions)}
        for action in actions:
            for gw in GUIDEWORDS:
                if (action, gw) in assessed:
                    counts["assessed"] += 1
                elif (action, gw) in na:
                    counts["na"] += 1
                else:
                    counts["unassessed"] += 1
        out[loop_id] = counts
    return out
