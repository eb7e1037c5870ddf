# text_formats.py
"""
Текстовые форматы групп, элементов и подмножеств.

  группа:        "4,2"  (пустая строка — тривиальная группа)
  элемент:       "3,1" или "(3,1)" — координаты, "5" — индекс
  подмножество:  "{1,3}", "{(1,0),(0,1)}", "{}", "complement:{...}"
"""

import re
from typing import List, Tuple

from abelian_group import GroupSpec, GSubset, make_group
from errors import InvalidInputError, ParseError

_INT_RE = re.compile(r"\d+")
COMPLEMENT_PREFIX = "complement:"


def parse_group_spec(text: str) -> GroupSpec:
    if not text.strip():
        return make_group(())
    factors = []
    position = 0
    for token in text.split(","):
        stripped = token.strip()
        if not _INT_RE.fullmatch(stripped):
            raise ParseError("Ожидался модуль циклического множителя", text, position + len(token) - len(token.lstrip()))
        factors.append(int(stripped))
        position += len(token) + 1
    return make_group(factors)


def format_group_spec(G: GroupSpec) -> str:
    return ",".join(str(n) for n in G.factors)


def _coords_to_index(G: GroupSpec, coords: List[int], text: str, position: int) -> int:
    try:
        return G.encode(coords)
    except InvalidInputError as e:
        raise ParseError(f"Некорректные координаты: {e}", text, position)


def _index_checked(G: GroupSpec, value: int, text: str, position: int) -> int:
    if not 0 <= value < G.order:
        raise ParseError(f"Индекс {value} вне диапазона [0, {G.order})", text, position)
    return value


def parse_element(G: GroupSpec, text: str) -> int:
    """Возвращает индекс элемента."""
    stripped = text.strip()
    offset = len(text) - len(text.lstrip())
    if stripped.startswith("(") and stripped.endswith(")"):
        stripped = stripped[1:-1]
        offset += 1
    if "," in stripped or (not stripped and not G.factors):
        parts = stripped.split(",") if stripped else []
        coords = []
        position = offset
        for part in parts:
            if not _INT_RE.fullmatch(part.strip()):
                raise ParseError("Ожидалась целая координата", text, position)
            coords.append(int(part))
            position += len(part) + 1
        return _coords_to_index(G, coords, text, offset)
    if not _INT_RE.fullmatch(stripped):
        raise ParseError("Ожидался индекс или координаты элемента", text, offset)
    return _index_checked(G, int(stripped), text, offset)


def _scan_elements(G: GroupSpec, text: str, start: int, stop: int) -> List[int]:
    """Разбирает содержимое фигурных скобок text[start:stop]."""
    result = []
    pos = start
    expect_item = True
    while pos < stop:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if not expect_item:
            if ch != ",":
                raise ParseError("Ожидалась запятая между элементами", text, pos)
            expect_item = True
            pos += 1
            continue
        if ch == "(":
            close = text.find(")", pos, stop)
            if close < 0:
                raise ParseError("Незакрытая скобка элемента", text, pos)
            result.append(parse_element(G, text[pos:close + 1]) if G.factors else _parse_trivial(text, pos, close))
            pos = close + 1
        else:
            match = _INT_RE.match(text, pos, stop)
            if not match:
                raise ParseError("Ожидался элемент", text, pos)
            result.append(_index_checked(G, int(match.group()), text, pos))
            pos = match.end()
        expect_item = False
    if expect_item and result:
        raise ParseError("Лишняя запятая в конце списка", text, stop)
    return result


def _parse_trivial(text: str, start: int, close: int) -> int:
    if text[start + 1:close].strip():
        raise ParseError("В тривиальной группе единственный элемент ()", text, start)
    return 0


def parse_subset(G: GroupSpec, text: str) -> GSubset:
    stripped = text.strip()
    offset = len(text) - len(text.lstrip())
    complement = stripped.startswith(COMPLEMENT_PREFIX)
    if complement:
        offset += len(COMPLEMENT_PREFIX)
        rest = stripped[len(COMPLEMENT_PREFIX):]
        offset += len(rest) - len(rest.lstrip())
    body = text[offset:].rstrip()
    if not body.startswith("{"):
        raise ParseError("Подмножество должно начинаться с '{'", text, offset)
    if not body.endswith("}"):
        raise ParseError("Подмножество должно заканчиваться '}'", text, offset + len(body))
    subset = GSubset.from_indices(G, _scan_elements(G, text, offset + 1, offset + len(body) - 1))
    return subset.complement() if complement else subset


def format_element(G: GroupSpec, index: int) -> str:
    if len(G.factors) <= 1:
        return str(index)
    return "(" + ",".join(str(x) for x in G.decode(index)) + ")"


def format_subset(subset: GSubset) -> str:
    G = subset.group
    return "{" + ",".join(format_element(G, i) for i in subset.members) + "}"


def parse_group_and_subset(group_text: str, subset_text: str) -> Tuple[GroupSpec, GSubset]:
    G = parse_group_spec(group_text)
    return G, parse_subset(G, subset_text)
