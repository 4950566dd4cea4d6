"""Line-scanning counters for DOT text and for declarations in ``.stpa`` text."""

import re

_QUOTED = r'"(?:[^"\\]|\\.)*"'
_EDGE = re.compile(rf"^\s*{_QUOTED}\s*->\s*{_QUOTED}\s*\[")
_NODE = re.compile(rf"^\s*{_QUOTED}\s*\[")


def count_dot(text: str) -> tuple[int, int]:
    """(node lines, edge lines)."""
    nodes = edges = 0
    for line in text.splitlines():
        if _EDGE.match(line):
            edges += 1
        elif _NODE.match(line):
            nodes += 1
    return nodes, edges


def count_declarations(stpa_text: str, keyword: str) -> int:
    return len(re.findall(rf"^{keyword} ", stpa_text, re.M))
