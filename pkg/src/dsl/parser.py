"""
Parser for .tdc documents: one complex, named points and named divisors.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from lark import Lark, Token, Tree
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken

from src.core.exceptions import ComplexValidationError, DocumentParseError, WorkbenchError
from src.core.logging import get_logger
from src.dsl.grammar import GRAMMAR
from src.model.complex import ComplexSpec, EdgeSpec, MetrizedComplex, build_complex
from src.model.divisor import Divisor
from src.model.points import ComponentPoint, EdgePoint, Point, VertexPoint

logger = get_logger(__name__)

_parser = Lark(GRAMMAR, parser='lalr', start=['start', 'location'], propagate_positions=True)


@dataclass(frozen=True)
class ComplexDocument:
    complex: MetrizedComplex
    divisors: Dict[str, Divisor] = field(default_factory=dict)
    points: Dict[str, Point] = field(default_factory=dict)

    def divisor(self, name: str) -> Divisor:
        try:
            return self.divisors[name]
        except KeyError:
            raise DocumentParseError(f"no divisor named {name}; declared: {', '.join(sorted(self.divisors)) or 'none'}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ComplexDocument):
            return NotImplemented
        return (self.complex, self.divisors, self.points) == (other.complex, other.divisors, other.points)

    __hash__ = None


def _fail(message: str, token: Optional[Union[Token, Tree]]) -> DocumentParseError:
    if isinstance(token, Tree):
        return DocumentParseError(message, token.meta.line, token.meta.column)
    if token is not None:
        return DocumentParseError(message, token.line, token.column)
    return DocumentParseError(message)


def _number(token: Token) -> Fraction:
    return Fraction(str(token))


def _integer(token: Token, what: str) -> int:
    value = _number(token)
    if value.denominator != 1:
        raise _fail(f"{what} must be an integer, got {token}", token)
    return int(value)


class _Reader:
    """Walks the parse tree, resolving names against declarations made so far."""

    def __init__(self):
        self.complex: Optional[MetrizedComplex] = None
        self.points: Dict[str, Point] = {}
        self.divisors: Dict[str, Divisor] = {}

    def read(self, tree: Tree) -> ComplexDocument:
        for block in tree.children:
            if block.data == 'complex_block':
                self._complex(block)
            elif block.data == 'point_alias':
                self._alias(block)
            elif block.data == 'divisor_block':
                self._divisor(block)
        if self.complex is None:
            raise DocumentParseError("document declares no complex")
        return ComplexDocument(self.complex, self.divisors, self.points)

    def _complex(self, block: Tree) -> None:
        keyword, name = block.children[0], block.children[1]
        if self.complex is not None:
            raise _fail("a document holds exactly one complex", keyword)
        vertices: List[Tuple[str, int]] = []
        edges: List[EdgeSpec] = []
        declared: Dict[str, int] = {}
        for item in block.children[2:]:
            if item.data == 'vertex_decl':
                vertex_id, genus_token = item.children
                vertex_genus = _integer(genus_token, "genus")
                if vertex_genus not in (0, 1):
                    raise _fail(f"vertex {vertex_id} has genus {vertex_genus}; only genus 0 and 1 are supported", genus_token)
                if str(vertex_id) in declared:
                    raise _fail(f"vertex {vertex_id} declared twice", vertex_id)
                declared[str(vertex_id)] = vertex_genus
                vertices.append((str(vertex_id), vertex_genus))
            else:
                edges.append(self._edge(item, declared))
        try:
            self.complex = build_complex(ComplexSpec(str(name), tuple(vertices), tuple(edges)))
        except ComplexValidationError as e:
            raise _fail(str(e), keyword)

    def _edge(self, item: Tree, declared: Dict[str, int]) -> EdgeSpec:
        edge_id, tail, head, length = item.children[:4]
        for endpoint in (tail, head):
            if str(endpoint) not in declared:
                raise _fail(f"edge {edge_id} references undeclared vertex {endpoint}", endpoint)
        nodes = []
        for clause in item.children[4:]:
            vertex_id, coordinate = clause.children
            if str(vertex_id) not in (str(tail), str(head)):
                raise _fail(f"node {vertex_id} is not an endpoint of edge {edge_id}", vertex_id)
            nodes.append((str(vertex_id), _number(coordinate)))
        return EdgeSpec(str(edge_id), str(tail), str(head), _number(length), tuple(nodes))

    def _require_complex(self, token: Token) -> MetrizedComplex:
        if self.complex is None:
            raise _fail("points and divisors must follow the complex", token)
        return self.complex

    def _location(self, node: Tree) -> Point:
        complex_ = self._require_complex(node.children[0])
        name = node.children[0]
        if node.data == 'named_location':
            if str(name) in self.points:
                return self.points[str(name)]
            if complex_.has_vertex(str(name)):
                return VertexPoint(str(name))
            raise _fail(f"undeclared vertex or point {name}", name)
        if node.data == 'edge_location':
            if not complex_.has_edge(str(name)):
                raise _fail(f"undeclared edge {name}", name)
            offset = _number(node.children[1])
            length = complex_.edge(str(name)).length
            if offset == 0:
                return VertexPoint(complex_.edge(str(name)).tail)
            if offset == length:
                return VertexPoint(complex_.edge(str(name)).head)
            return EdgePoint(str(name), offset)
        if not complex_.has_vertex(str(name)):
            raise _fail(f"undeclared vertex {name}", name)
        return ComponentPoint(str(name), _number(node.children[1]))

    def _checked(self, point: Point, anchor: Tree) -> Point:
        try:
            return self.complex.normalize_point(point)
        except WorkbenchError as e:
            raise _fail(str(e), anchor)

    def _alias(self, block: Tree) -> None:
        name, location = block.children
        self._require_complex(name)
        if str(name) in self.points or self.complex.has_vertex(str(name)) or self.complex.has_edge(str(name)):
            raise _fail(f"name {name} is already taken", name)
        self.points[str(name)] = self._checked(self._location(location), location)

    def _divisor(self, block: Tree) -> None:
        name = block.children[1]
        self._require_complex(name)
        if str(name) in self.divisors:
            raise _fail(f"divisor {name} declared twice", name)
        coefficients: Counter = Counter()
        for term in block.children[2:]:
            coefficient_token, location = term.children
            point = self._checked(self._location(location), location)
            coefficients[point] += _integer(coefficient_token, "coefficient")
        self.divisors[str(name)] = Divisor(coefficients)


def parse(text: str) -> ComplexDocument:
    """
    Parse a .tdc document.

    Raises:
        DocumentParseError: syntax errors and semantic errors, with line and column
    """
    tree = _syntax(text, 'start')
    document = _Reader().read(tree)
    logger.debug(
        f"parsed {document.complex.name}: {len(document.divisors)} divisors, {len(document.points)} points"
    )
    return document


def parse_location(document: ComplexDocument, text: str) -> Point:
    """Resolve a location such as 'v1', 'e1(1/2)', 'v1[1/8]' or a point name."""
    reader = _Reader()
    reader.complex = document.complex
    reader.points = dict(document.points)
    tree = _syntax(text, 'location')
    if document.complex.has_vertex(text.strip()):
        return document.complex.normalize_point(VertexPoint(text.strip()), allow_genus_one_vertex=True)
    return reader._checked(reader._location(tree), tree)


def _syntax(text: str, start: str) -> Tree:
    try:
        return _parser.parse(text, start=start)
    except UnexpectedCharacters as e:
        raise DocumentParseError(f"unexpected character {text[e.pos_in_stream]!r}", e.line, e.column)
    except UnexpectedToken as e:
        expected = ", ".join(sorted(e.expected)[:6])
        raise DocumentParseError(f"unexpected {str(e.token)!r}, expected one of: {expected}", e.line, e.column)
    except UnexpectedEOF as e:
        raise DocumentParseError("unexpected end of document", getattr(e, 'line', 0) or 0, getattr(e, 'column', 0) or 0)
    except UnexpectedInput as e:
        raise DocumentParseError(str(e), getattr(e, 'line', 0) or 0, getattr(e, 'column', 0) or 0)


def load_document(path: Union[str, Path]) -> ComplexDocument:
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as e:
        raise DocumentParseError(f"cannot read {path}: {e.strerror}")
    return parse(text)
